//! The homological operator, resonance detection from the eigenvalue
//! lattice, and the degree-by-degree normal-form reduction.
//!
//! The degree loop is inherently sequential (each order feeds the next);
//! within one degree all defect evaluations are independent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{
    is_reversible, pushforward_along, Involution, PolyMap, Transformation, VectorField,
};
use crate::field::FieldError;
use crate::polyalg::{
    complexify_field, gauss, monomials_of_degree, promote, rat, realify_field, GaussianRational,
    InvariantKind, Mat, Monomial, PolyError, Polynomial, RatMat, Rational, Scalar,
};

#[derive(Debug, Error)]
pub enum NormalFormError {
    #[error("input is not reversible with respect to reversor {index} at order {order}")]
    NotReversible { index: usize, order: u32 },
    #[error("reversors must be linear; conjugate by the Montgomery-Bochner map first")]
    NonlinearReversor,
    #[error("reversor group does not close within {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("homological input must be homogeneous of one degree")]
    NotHomogeneous,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// One eigenvalue defect `(m, λ) − λ_s` for the monomial vector field
/// `x^m ∂/∂x_s`.
#[derive(Clone, Debug)]
pub struct ResonanceEntry {
    pub monomial: Monomial,
    pub component: usize,
    pub defect: GaussianRational,
}

impl ResonanceEntry {
    pub fn is_resonant(&self) -> bool {
        self.defect.is_zero()
    }

    /// A structurally resonant entry has difference vector `±e_j` matching
    /// its component: these are exactly the invariant-coordinate terms
    /// `x_j·(Δ or Γ)^I` that no choice of frequencies can remove.
    pub fn is_structural(&self) -> bool {
        let n = self.monomial.dimension() / 2;
        let pair = self.component / 2;
        let want = if self.component % 2 == 0 { 1i64 } else { -1i64 };
        for j in 0..n {
            let d = self.monomial.exponent(2 * j) as i64 - self.monomial.exponent(2 * j + 1) as i64;
            let expect = if j == pair { want } else { 0 };
            if d != expect {
                return false;
            }
        }
        true
    }
}

/// All defects at one degree, plus the commensurability data of the
/// frequency vector: the scale `λ` and integer vector `p` with `α_j = λ p_j`
/// and `gcd(p) = 1` (always defined for rational frequencies).
#[derive(Clone, Debug)]
pub struct ResonanceReport {
    pub order: u32,
    pub entries: Vec<ResonanceEntry>,
    pub scale_factor: Option<Rational>,
    pub integer_ratios: Option<Vec<u64>>,
}

impl ResonanceReport {
    pub fn resonant_entries(&self) -> impl Iterator<Item = &ResonanceEntry> {
        self.entries.iter().filter(|e| e.is_resonant())
    }

    /// Resonant entries that are not of the structural invariant shape.
    pub fn nonstructural_resonances(&self) -> Vec<&ResonanceEntry> {
        self.resonant_entries()
            .filter(|e| !e.is_structural())
            .collect()
    }
}

/// Per-variable eigenvalues of the normalized linear part, in the
/// coordinates used for defect arithmetic: `(i α_j, −i α_j)` per elliptic
/// plane (complexified variables `z_j, z̄_j`) or `(β_j, −β_j)` per saddle
/// plane (the real coordinates are already eigencoordinates).
pub fn spectrum_vector(kind: InvariantKind, frequencies: &[Rational]) -> Vec<GaussianRational> {
    let mut out = Vec::with_capacity(2 * frequencies.len());
    for f in frequencies {
        match kind {
            InvariantKind::Elliptic => {
                out.push(gauss(Rational::zero(), f.clone()));
                out.push(gauss(Rational::zero(), -f.clone()));
            }
            InvariantKind::Saddle => {
                out.push(gauss(f.clone(), Rational::zero()));
                out.push(gauss(-f.clone(), Rational::zero()));
            }
        }
    }
    out
}

/// `L_A(h) = Dh·Ax − Ah` on a homogeneous vector polynomial. On the
/// eigenbasis of a diagonal `A` this acts by the defect:
/// `L_A(x^m ∂/∂x_s) = [(m, λ) − λ_s] x^m ∂/∂x_s`.
pub fn homological_operator<C: Scalar>(
    a: &Mat<C>,
    h: &[Polynomial<C>],
) -> Result<Vec<Polynomial<C>>, NormalFormError> {
    let dim = h.len();
    assert_eq!(a.rows(), dim);
    assert_eq!(a.cols(), dim);
    let degree = h
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.max_degree())
        .max();
    if let Some(d) = degree {
        if h.iter().any(|p| !p.is_homogeneous(d)) {
            return Err(NormalFormError::NotHomogeneous);
        }
    }
    let ax: Vec<Polynomial<C>> = a.as_linear_map();
    let mut out = Vec::with_capacity(dim);
    for (i, hi) in h.iter().enumerate() {
        // (Dh·Ax)_i = Σ_j ∂h_i/∂x_j · (Ax)_j
        let mut t = Polynomial::zero(dim);
        for (j, axj) in ax.iter().enumerate() {
            t = t.add(&hi.differentiate(j).mul(axj));
        }
        // (Ah)_i = Σ_j a[i][j] h_j
        for (j, hj) in h.iter().enumerate() {
            let c = a.get(i, j);
            if !c.is_zero() {
                t = t.sub(&hj.scale(c));
            }
        }
        out.push(t);
        let _ = i;
    }
    Ok(out)
}

fn frequency_commensurability(frequencies: &[Rational]) -> Option<(Rational, Vec<u64>)> {
    if frequencies.is_empty() {
        return None;
    }
    let mut denom_lcm = BigInt::one();
    for f in frequencies {
        denom_lcm = denom_lcm.lcm(f.denom());
    }
    let scaled: Vec<BigInt> = frequencies
        .iter()
        .map(|f| f.numer() * (&denom_lcm / f.denom()))
        .collect();
    let mut g = BigInt::zero();
    for s in &scaled {
        g = g.gcd(s);
    }
    if g.is_zero() {
        return None;
    }
    let lambda = Rational::new(g.clone(), denom_lcm);
    let ratios: Vec<u64> = scaled
        .iter()
        .map(|s| {
            let q = s / &g;
            u64::try_from(q.magnitude().clone()).unwrap_or(u64::MAX)
        })
        .collect();
    Some((lambda, ratios))
}

/// Enumerate every monomial of the given degree against every component and
/// record its exact eigenvalue defect.
pub fn resonance_scan(
    kind: InvariantKind,
    frequencies: &[Rational],
    order: u32,
) -> ResonanceReport {
    let spectrum = spectrum_vector(kind, frequencies);
    let dim = spectrum.len();
    let mut entries = Vec::new();
    for m in monomials_of_degree(dim, order) {
        let weighted: GaussianRational = m
            .exponents()
            .iter()
            .zip(&spectrum)
            .map(|(&e, l)| l.clone() * GaussianRational::from_rational(&rat(e as i64, 1)))
            .fold(GaussianRational::zero(), |acc, v| acc + v);
        for (s, ls) in spectrum.iter().enumerate() {
            entries.push(ResonanceEntry {
                monomial: m.clone(),
                component: s,
                defect: weighted.clone() - ls.clone(),
            });
        }
    }
    let comm = frequency_commensurability(frequencies);
    let (scale_factor, integer_ratios) = match comm {
        Some((l, r)) => (Some(l), Some(r)),
        None => (None, None),
    };
    ResonanceReport {
        order,
        entries,
        scale_factor,
        integer_ratios,
    }
}

/// Fast order-`N` nonresonance test on the difference lattice: no defect
/// with `|m| ≤ order` vanishes except the structural invariant-shape ones.
pub fn is_order_nonresonant(kind: InvariantKind, frequencies: &[Rational], order: u32) -> bool {
    let n = frequencies.len();
    let mut diff = vec![0i64; n];
    !lattice_has_resonance(kind, frequencies, order as i64, &mut diff, 0)
}

fn lattice_has_resonance(
    kind: InvariantKind,
    freqs: &[Rational],
    budget: i64,
    diff: &mut Vec<i64>,
    pos: usize,
) -> bool {
    let n = freqs.len();
    if pos == n {
        // weighted sum Σ d_j α_j must avoid ±α_s except structurally
        let mut w = Rational::zero();
        for (d, f) in diff.iter().zip(freqs) {
            w += f * rat(*d, 1);
        }
        let _ = kind;
        for (s, f) in freqs.iter().enumerate() {
            for sign in [1i64, -1i64] {
                let target = f * rat(sign, 1);
                if w == target {
                    // structural: diff == sign·e_s
                    let structural = diff
                        .iter()
                        .enumerate()
                        .all(|(j, &d)| d == if j == s { sign } else { 0 });
                    if !structural {
                        return true;
                    }
                }
            }
        }
        return false;
    }
    let remaining: i64 = budget;
    for d in -remaining..=remaining {
        diff[pos] = d;
        if lattice_has_resonance(kind, freqs, remaining - d.abs(), diff, pos + 1) {
            return true;
        }
    }
    diff[pos] = 0;
    false
}

/// Equivariant average of a homogeneous correction over a finite group of
/// linear symmetries: `h ↦ (1/|G|) Σ_g g^{-1} ∘ h ∘ g`. The projection is
/// idempotent and maps homological solutions to homological solutions when
/// the field's symmetries match the group.
pub fn equivariant_average(
    h: &[Polynomial<Rational>],
    group: &[RatMat],
) -> Vec<Polynomial<Rational>> {
    let dim = h.len();
    let size = rat(group.len() as i64, 1);
    let mut acc: Vec<Polynomial<Rational>> = vec![Polynomial::zero(dim); dim];
    for g in group {
        let ginv = group
            .iter()
            .find(|cand| g.matmul(cand).is_identity())
            .expect("finite group contains inverses");
        let images = g.as_linear_map();
        let conjugated: Vec<Polynomial<Rational>> = h
            .iter()
            .map(|p| p.substitute(&images).expect("arity fixed"))
            .collect();
        for i in 0..dim {
            for j in 0..dim {
                let c = ginv.get(i, j);
                if !c.is_zero() {
                    acc[i] = acc[i].add(&conjugated[j].scale(c));
                }
            }
        }
    }
    acc.into_iter()
        .map(|p| p.scale(&(Rational::one() / &size)))
        .collect()
}

/// Closure of a set of matrices under multiplication. Fails beyond `cap`
/// elements.
pub fn matrix_group_closure(
    generators: &[RatMat],
    cap: usize,
) -> Result<Vec<RatMat>, NormalFormError> {
    let dim = generators
        .first()
        .map(|g| g.rows())
        .unwrap_or(0);
    let mut group: Vec<RatMat> = vec![RatMat::identity(dim)];
    let mut frontier: Vec<RatMat> = generators.to_vec();
    while let Some(g) = frontier.pop() {
        if group.contains(&g) {
            continue;
        }
        group.push(g.clone());
        if group.len() > cap {
            return Err(NormalFormError::GroupTooLarge { cap });
        }
        for h in group.clone() {
            frontier.push(g.matmul(&h));
            frontier.push(h.matmul(&g));
        }
    }
    Ok(group)
}

/// Replace a homological solution by the representative whose correction
/// map commutes with `φ`: the equivariant average
/// `(h + Dφ(0) ∘ h ∘ φ)/2` over the two-element group generated by `φ`.
pub fn reversible_projection(
    h: &[Polynomial<Rational>],
    phi: &Involution,
) -> Vec<Polynomial<Rational>> {
    let dim = h.len();
    assert_eq!(dim, phi.dimension());
    let m = phi.linearization();
    let composed: Vec<Polynomial<Rational>> = h
        .iter()
        .map(|p| p.substitute(phi.components()).expect("arity fixed"))
        .collect();
    let half = rat(1, 2);
    (0..dim)
        .map(|i| {
            let mut acc = h[i].clone();
            for j in 0..dim {
                let c = m.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&composed[j].scale(c));
                }
            }
            acc.scale(&half)
        })
        .collect()
}

/// Outcome of the degree-by-degree reduction: the normal form `X̃`, the
/// accumulated coordinate change with `jet(Ψ_*X − X̃, order) = 0` exactly,
/// and one resonance report per processed degree.
#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub normal_form: VectorField,
    pub transformation: Transformation,
    pub order: u32,
    pub reports: Vec<ResonanceReport>,
}

/// Remove every nonresonant term of degree `2..=order` by one near-identity
/// step per degree; resonant terms (zero defect) are untouched, so inputs
/// with larger resonant subspaces are still processed. When reversors are
/// given, the input must be reversible with respect to each of them and
/// every correction is averaged to commute with the generated group, which
/// keeps all intermediate fields reversible.
pub fn poincare_dulac(
    x: &VectorField,
    order: u32,
    reversors: &[Involution],
) -> Result<NormalFormResult, NormalFormError> {
    let dim = x.dimension();
    for (index, phi) in reversors.iter().enumerate() {
        if !is_reversible(x.components(), phi, order) {
            return Err(NormalFormError::NotReversible { index, order });
        }
    }
    let group = if reversors.is_empty() {
        None
    } else {
        if reversors.iter().any(|phi| !phi.is_linear()) {
            return Err(NormalFormError::NonlinearReversor);
        }
        let gens: Vec<RatMat> = reversors.iter().map(|p| p.linearization().clone()).collect();
        Some(matrix_group_closure(&gens, 64)?)
    };

    let spectrum = spectrum_vector(x.kind(), x.frequencies());
    let mut comps: Vec<Polynomial<Rational>> =
        x.components().iter().map(|p| p.jet(order)).collect();
    let mut transformation = Transformation::identity(dim, order);
    let mut reports = Vec::new();

    for m in 2..=order {
        reports.push(resonance_scan(x.kind(), x.frequencies(), m));
        let fm: Vec<Polynomial<Rational>> =
            comps.iter().map(|p| p.homogeneous_part(m)).collect();
        if fm.iter().all(|p| p.is_zero()) {
            continue;
        }
        let mut psi = solve_homological_step(x.kind(), &spectrum, &fm)?;
        if let Some(group) = &group {
            psi = equivariant_average(&psi, group);
        }
        if psi.iter().all(|p| p.is_zero()) {
            continue;
        }
        let step = PolyMap::near_identity(psi);
        comps = pushforward_along(&step, &comps, order);
        transformation.push_step(step)?;
        let leftover: Vec<Polynomial<Rational>> =
            comps.iter().map(|p| p.homogeneous_part(m)).collect();
        if !is_resonant_only(x.kind(), &spectrum, &leftover)? {
            return Err(NormalFormError::Internal(format!(
                "nonresonant terms survive at degree {m}"
            )));
        }
    }

    let normal_form = x.with_components(comps)?;
    Ok(NormalFormResult {
        normal_form,
        transformation,
        order,
        reports,
    })
}

/// The minimal homological solution at one degree: divide each nonresonant
/// coefficient by its defect (zero component along the kernel), with the
/// sign arranged so that pushing forward along `Id + ψ` removes exactly the
/// nonresonant part.
fn solve_homological_step(
    kind: InvariantKind,
    spectrum: &[GaussianRational],
    fm: &[Polynomial<Rational>],
) -> Result<Vec<Polynomial<Rational>>, NormalFormError> {
    match kind {
        InvariantKind::Elliptic => {
            let cf = complexify_field(fm);
            let psi_c = divide_nonresonant(&cf, spectrum);
            let psi = realify_field(&psi_c)?;
            Ok(psi)
        }
        InvariantKind::Saddle => {
            let cf: Vec<Polynomial<GaussianRational>> = fm.iter().map(promote).collect();
            let psi_c = divide_nonresonant(&cf, spectrum);
            let mut out = Vec::with_capacity(psi_c.len());
            for p in &psi_c {
                let mut rp = Polynomial::zero(p.dimension());
                for (mono, c) in p.iter() {
                    if !c.im.is_zero() {
                        return Err(NormalFormError::Internal(
                            "saddle correction acquired an imaginary part".into(),
                        ));
                    }
                    rp.insert_add(mono.clone(), c.re.clone());
                }
                out.push(rp);
            }
            Ok(out)
        }
    }
}

fn defect_of(spectrum: &[GaussianRational], mono: &Monomial, s: usize) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (v, l) in spectrum.iter().enumerate() {
        let e = mono.exponent(v);
        if e > 0 {
            acc = acc + l.clone() * GaussianRational::from_rational(&rat(e as i64, 1));
        }
    }
    acc - spectrum[s].clone()
}

fn divide_nonresonant(
    cf: &[Polynomial<GaussianRational>],
    spectrum: &[GaussianRational],
) -> Vec<Polynomial<GaussianRational>> {
    cf.iter()
        .enumerate()
        .map(|(s, p)| {
            let mut out = Polynomial::zero(p.dimension());
            for (mono, c) in p.iter() {
                let defect = defect_of(spectrum, mono, s);
                if !defect.is_zero() {
                    out.insert_add(mono.clone(), -c.clone() / defect);
                }
            }
            out
        })
        .collect()
}

/// Every nonzero coefficient sits on a zero-defect monomial.
fn is_resonant_only(
    kind: InvariantKind,
    spectrum: &[GaussianRational],
    parts: &[Polynomial<Rational>],
) -> Result<bool, NormalFormError> {
    let cf = match kind {
        InvariantKind::Elliptic => complexify_field(parts),
        InvariantKind::Saddle => parts.iter().map(promote).collect(),
    };
    for (s, p) in cf.iter().enumerate() {
        for (mono, _) in p.iter() {
            if !defect_of(spectrum, mono, s).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nonlinear content of all components is resonant for the field's own
/// spectrum; the public entry point for structure checks on candidate
/// normal forms.
pub fn contains_only_resonant_terms(x: &VectorField) -> Result<bool, NormalFormError> {
    let spectrum = spectrum_vector(x.kind(), x.frequencies());
    let nonlinear: Vec<Polynomial<Rational>> = x
        .components()
        .iter()
        .map(|p| p.sub(&p.jet(1)))
        .collect();
    is_resonant_only(x.kind(), &spectrum, &nonlinear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat_int;

    fn saddle_matrix() -> RatMat {
        RatMat::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(-1)],
        ])
    }

    #[test]
    fn homological_kernel_vector() {
        // A = diag(1, −1): x²y ∂/∂x has defect 2 − 1 − 1 = 0.
        let h = vec![
            Polynomial::term(Monomial::new(vec![2, 1]), rat_int(1)),
            Polynomial::zero(2),
        ];
        let out = homological_operator(&saddle_matrix(), &h).unwrap();
        assert!(out.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn homological_defect_one() {
        // A = diag(1, −1): x² ∂/∂x has defect 2 − 1 = 1.
        let h = vec![
            Polynomial::term(Monomial::new(vec![2, 0]), rat_int(1)),
            Polynomial::zero(2),
        ];
        let out = homological_operator(&saddle_matrix(), &h).unwrap();
        assert_eq!(out[0], h[0]);
        assert!(out[1].is_zero());
    }

    #[test]
    fn homological_zero_is_zero() {
        let h = vec![Polynomial::zero(2), Polynomial::zero(2)];
        let out = homological_operator(&saddle_matrix(), &h).unwrap();
        assert!(out.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn homological_rejects_mixed_degrees() {
        let h = vec![
            Polynomial::term(Monomial::new(vec![2, 0]), rat_int(1))
                .add(&Polynomial::term(Monomial::new(vec![3, 0]), rat_int(1))),
            Polynomial::zero(2),
        ];
        assert!(matches!(
            homological_operator(&saddle_matrix(), &h),
            Err(NormalFormError::NotHomogeneous)
        ));
    }

    #[test]
    fn saddle_resonance_scan_degree_three() {
        // β = 1, degree 3: resonant exactly at x²y ∂/∂x and xy² ∂/∂y.
        let report = resonance_scan(InvariantKind::Saddle, &[rat_int(1)], 3);
        let resonant: Vec<_> = report.resonant_entries().collect();
        assert_eq!(resonant.len(), 2);
        assert!(resonant.iter().any(|e| e.component == 0
            && e.monomial.exponents() == [2, 1]));
        assert!(resonant.iter().any(|e| e.component == 1
            && e.monomial.exponents() == [1, 2]));
        assert!(resonant.iter().all(|e| e.is_structural()));
        assert_eq!(report.scale_factor, Some(rat_int(1)));
        assert_eq!(report.integer_ratios, Some(vec![1]));
    }

    #[test]
    fn elliptic_even_degree_has_no_resonance() {
        let report = resonance_scan(InvariantKind::Elliptic, &[rat_int(1)], 2);
        assert_eq!(report.resonant_entries().count(), 0);
    }

    #[test]
    fn elliptic_cubic_kernel_realifies_to_rotational_and_radial() {
        // α = 1, degree 3: the complex kernel realifies to the span of
        // (−yΔ, xΔ) and (xΔ, yΔ); both must be annihilated by L_A.
        let report = resonance_scan(InvariantKind::Elliptic, &[rat_int(1)], 3);
        let resonant: Vec<_> = report.resonant_entries().collect();
        assert_eq!(resonant.len(), 2);
        let a = RatMat::from_rows(vec![
            vec![rat_int(0), rat_int(-1)],
            vec![rat_int(1), rat_int(0)],
        ]);
        let delta = InvariantKind::Elliptic.generator(1, 0);
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let rotational = vec![y.negate().mul(&delta), x.mul(&delta)];
        let radial = vec![x.mul(&delta), y.mul(&delta)];
        for h in [rotational, radial] {
            let out = homological_operator(&a, &h).unwrap();
            assert!(out.iter().all(|p| p.is_zero()));
        }
    }

    #[test]
    fn commensurability_scale() {
        // α = (3/2, 5/2): λ = 1/2, p = (3, 5).
        let (l, p) = frequency_commensurability(&[rat(3, 2), rat(5, 2)]).unwrap();
        assert_eq!(l, rat(1, 2));
        assert_eq!(p, vec![3, 5]);
    }

    #[test]
    fn nonresonance_lattice_check() {
        assert!(is_order_nonresonant(
            InvariantKind::Elliptic,
            &[rat_int(1), rat(17, 12)],
            7
        ));
        // 3:5 resonance appears at degree 7 via the vector (−4, 3) but not
        // below.
        assert!(!is_order_nonresonant(
            InvariantKind::Elliptic,
            &[rat_int(3), rat_int(5)],
            7
        ));
        assert!(is_order_nonresonant(
            InvariantKind::Elliptic,
            &[rat_int(3), rat_int(5)],
            6
        ));
        // equal frequencies resonate already at degree 3
        assert!(!is_order_nonresonant(
            InvariantKind::Elliptic,
            &[rat_int(1), rat_int(1)],
            3
        ));
    }

    #[test]
    fn reversible_projection_cases() {
        let phi = Involution::canonical(InvariantKind::Elliptic, 1);
        let delta = InvariantKind::Elliptic.generator(1, 0);
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        // radial xΔ, yΔ is equivariant: projection fixes it
        let radial = vec![x.mul(&delta), y.mul(&delta)];
        assert_eq!(reversible_projection(&radial, &phi), radial);
        // anti-equivariant corrections vanish
        let anti = vec![y.mul(&delta), x.mul(&delta).negate()];
        assert!(reversible_projection(&anti, &phi)
            .iter()
            .all(|p| p.is_zero()));
        // mixed input projects onto its equivariant half, idempotently
        let mixed: Vec<_> = radial
            .iter()
            .zip(&anti)
            .map(|(r, a)| r.add(a))
            .collect();
        let projected = reversible_projection(&mixed, &phi);
        assert_eq!(projected, radial);
        assert_eq!(reversible_projection(&projected, &phi), projected);
    }

    #[test]
    fn poincare_dulac_saddle_kills_quadratic() {
        // ẋ = x + x², ẏ = −y: one homological solve with defect 1 removes
        // the quadratic term.
        let x2 = Polynomial::term(Monomial::new(vec![2, 0]), rat_int(1));
        let comps = vec![
            Polynomial::variable(2, 0).add(&x2),
            Polynomial::variable(2, 1).negate(),
        ];
        let field = VectorField::new(InvariantKind::Saddle, vec![rat_int(1)], comps).unwrap();
        let res = poincare_dulac(&field, 2, &[]).unwrap();
        let linear = VectorField::linear_field(InvariantKind::Saddle, vec![rat_int(1)]).unwrap();
        assert_eq!(res.normal_form.jet(2).components(), linear.components());
        // conjugacy certificate: jet(Ψ_*X − X̃, 2) = 0
        let pushed = res.transformation.pushforward(field.components(), 2);
        for (p, q) in pushed.iter().zip(res.normal_form.components()) {
            assert_eq!(p.jet(2), q.jet(2));
        }
    }

    #[test]
    fn poincare_dulac_fixes_normal_form_input() {
        let delta = InvariantKind::Elliptic.generator(1, 0);
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let comps = vec![
            y.negate().add(&y.mul(&delta).scale(&rat(-1, 2))),
            x.add(&x.mul(&delta).scale(&rat(1, 2))),
        ];
        let field = VectorField::new(InvariantKind::Elliptic, vec![rat_int(1)], comps).unwrap();
        let res = poincare_dulac(&field, 5, &[]).unwrap();
        assert_eq!(res.normal_form.components(), field.jet(5).components());
        assert!(res.transformation.is_identity_map());
        assert!(contains_only_resonant_terms(&res.normal_form).unwrap());
    }

    #[test]
    fn poincare_dulac_elliptic_reversible_cubic() {
        // generic reversible quadratic + cubic junk around a 2D center: the
        // normal form keeps only rotational invariant terms and its even
        // parts vanish.
        let x = Polynomial::<Rational>::variable(2, 0);
        let y = Polynomial::<Rational>::variable(2, 1);
        let xy = x.mul(&y);
        let x2 = x.mul(&x);
        let comps = vec![
            y.negate().add(&xy.scale(&rat(1, 3))).add(
                &Polynomial::term(Monomial::new(vec![2, 1]), rat(1, 2)),
            ),
            x.add(&x2.scale(&rat(-2, 5)))
                .add(&Polynomial::term(Monomial::new(vec![3, 0]), rat(1, 4))),
        ];
        let field = VectorField::new(InvariantKind::Elliptic, vec![rat_int(1)], comps).unwrap();
        let phi = Involution::canonical(InvariantKind::Elliptic, 1);
        assert!(is_reversible(field.components(), &phi, 3));
        let res = poincare_dulac(&field, 3, &[phi.clone()]).unwrap();
        let nf = &res.normal_form;
        // even parts vanish
        assert!(nf.homogeneous_parts(2).iter().all(|p| p.is_zero()));
        // cubic part is rotational: (−y f Δ, x f Δ)
        let f3 = nf.homogeneous_parts(3);
        let delta = InvariantKind::Elliptic.generator(1, 0);
        let fx = f3[0].clone();
        // fx = −y·c·Δ for some rational c
        let c = fx.coefficient(&Monomial::new(vec![2, 1])).clone();
        let expect0 = Polynomial::variable(2, 1).negate().mul(&delta).scale(&-c.clone());
        assert_eq!(fx, expect0);
        let expect1 = Polynomial::variable(2, 0).mul(&delta).scale(&-c);
        assert_eq!(f3[1], expect1);
        // reversibility preserved
        assert!(is_reversible(nf.components(), &phi, 3));
        // conjugacy
        let pushed = res.transformation.pushforward(field.components(), 3);
        for (p, q) in pushed.iter().zip(nf.components()) {
            assert_eq!(p.jet(3), q.jet(3));
        }
    }

    #[test]
    fn group_closure_of_d4_generators() {
        let g1 = Involution::canonical(InvariantKind::Elliptic, 1);
        let g2 = Involution::canonical(InvariantKind::Saddle, 1);
        let group = matrix_group_closure(
            &[g1.linearization().clone(), g2.linearization().clone()],
            64,
        )
        .unwrap();
        assert_eq!(group.len(), 8);
    }
}

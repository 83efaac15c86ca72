//! Vector fields with normalized elliptic or saddle linear part,
//! involutions, reversibility and Hamiltonicity checks, pushforwards, and
//! time-reparametrization.
//!
//! Everything operates on immutable values and is safe to call concurrently.

mod involution;
mod map;
mod transformation;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use involution::Involution;
pub use map::PolyMap;
pub use transformation::Transformation;

use crate::polyalg::{
    rat_int, InvariantKind, Monomial, Polynomial, RatMat, Rational,
};

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("ambient dimension must be even and positive, got {dim}")]
    OddDimension { dim: usize },
    #[error("vector field does not vanish at the origin (component {component})")]
    NotVanishing { component: usize },
    #[error("expected {expected} frequencies, got {got}")]
    FrequencyCount { expected: usize, got: usize },
    #[error("frequencies must be positive (entry {index})")]
    NonPositiveFrequency { index: usize },
    #[error("linear part is not block-normalized for the declared spectrum kind")]
    NotBlockNormalized,
    #[error("the origin is not a simple singularity: det DX(0) = 0")]
    NonSimpleSingularity,
    #[error("map is not an involution to order {order}")]
    NotInvolution { order: u32 },
    #[error("involution must fix the origin")]
    InvolutionMovesOrigin,
    #[error("fixed-point set of the linearization must have half dimension")]
    WrongFixedDimension,
    #[error("no Hamiltonian exists: obstruction at degree {degree}")]
    NotHamiltonian { degree: u32 },
    #[error("time-reparametrization factor vanishes at the origin")]
    ReparametrizationVanishes,
    #[error("time-reparametrization factor must equal 1 at the origin")]
    ReparametrizationNotUnit,
    #[error("coordinate change must be a near-identity")]
    NotNearIdentity,
    #[error("dimension mismatch")]
    DimensionMismatch,
}

/// A polynomial vector field on `R^{2n}` vanishing at the origin, with
/// block-normalized linear part: per plane `j`, the elliptic block
/// `[[0, −α_j], [α_j, 0]]` or the saddle block `diag(β_j, −β_j)`.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorField {
    kind: InvariantKind,
    frequencies: Vec<Rational>,
    components: Vec<Polynomial<Rational>>,
    linear: RatMat,
}

impl VectorField {
    pub fn new(
        kind: InvariantKind,
        frequencies: Vec<Rational>,
        components: Vec<Polynomial<Rational>>,
    ) -> Result<Self, FieldError> {
        let dim = components.len();
        if dim == 0 || dim % 2 != 0 {
            return Err(FieldError::OddDimension { dim });
        }
        let n = dim / 2;
        if frequencies.len() != n {
            return Err(FieldError::FrequencyCount {
                expected: n,
                got: frequencies.len(),
            });
        }
        for (i, f) in frequencies.iter().enumerate() {
            if !f.is_positive() {
                return Err(FieldError::NonPositiveFrequency { index: i });
            }
        }
        for (i, p) in components.iter().enumerate() {
            if p.dimension() != dim {
                return Err(FieldError::DimensionMismatch);
            }
            if !p.constant_term().is_zero() {
                return Err(FieldError::NotVanishing { component: i });
            }
        }
        let linear = linear_matrix_of(&components);
        let expected = block_linear_matrix(kind, &frequencies);
        if linear != expected {
            return Err(FieldError::NotBlockNormalized);
        }
        if linear.det().is_zero() {
            return Err(FieldError::NonSimpleSingularity);
        }
        Ok(VectorField {
            kind,
            frequencies,
            components,
            linear,
        })
    }

    /// Rebuild with new components under the same spectrum data.
    pub fn with_components(
        &self,
        components: Vec<Polynomial<Rational>>,
    ) -> Result<Self, FieldError> {
        Self::new(self.kind, self.frequencies.clone(), components)
    }

    /// The purely linear field `A x`.
    pub fn linear_field(
        kind: InvariantKind,
        frequencies: Vec<Rational>,
    ) -> Result<Self, FieldError> {
        let m = block_linear_matrix(kind, &frequencies);
        let comps = m.as_linear_map();
        Self::new(kind, frequencies, comps)
    }

    pub fn kind(&self) -> InvariantKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn pairs(&self) -> usize {
        self.components.len() / 2
    }

    pub fn frequencies(&self) -> &[Rational] {
        &self.frequencies
    }

    pub fn components(&self) -> &[Polynomial<Rational>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial<Rational> {
        &self.components[i]
    }

    /// `A = DX(0)`.
    pub fn linear_matrix(&self) -> &RatMat {
        &self.linear
    }

    pub fn max_degree(&self) -> u32 {
        self.components
            .iter()
            .map(|p| p.max_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn jet(&self, order: u32) -> Self {
        VectorField {
            kind: self.kind,
            frequencies: self.frequencies.clone(),
            components: self.components.iter().map(|p| p.jet(order)).collect(),
            linear: self.linear.clone(),
        }
    }

    pub fn homogeneous_parts(&self, degree: u32) -> Vec<Polynomial<Rational>> {
        self.components
            .iter()
            .map(|p| p.homogeneous_part(degree))
            .collect()
    }
}

/// Extract `DX(0)` from the components' degree-1 jets.
pub fn linear_matrix_of(components: &[Polynomial<Rational>]) -> RatMat {
    let dim = components.len();
    let mut m = RatMat::zeros(dim, dim);
    for (i, p) in components.iter().enumerate() {
        for j in 0..dim {
            m.set(i, j, p.coefficient(&Monomial::unit(dim, j)));
        }
    }
    m
}

/// The block-normalized linear part for the given spectrum data.
pub fn block_linear_matrix(kind: InvariantKind, frequencies: &[Rational]) -> RatMat {
    let n = frequencies.len();
    let mut m = RatMat::zeros(2 * n, 2 * n);
    for (j, f) in frequencies.iter().enumerate() {
        match kind {
            InvariantKind::Elliptic => {
                m.set(2 * j, 2 * j + 1, -f.clone());
                m.set(2 * j + 1, 2 * j, f.clone());
            }
            InvariantKind::Saddle => {
                m.set(2 * j, 2 * j, f.clone());
                m.set(2 * j + 1, 2 * j + 1, -f.clone());
            }
        }
    }
    m
}

/// The fixed symplectic data on `R^{2n}`: `J` is block-diagonal with
/// `[[0, −1], [1, 0]]` blocks and `Ω` has the block form
/// `[[0, Id_n], [−Id_n, 0]]`, both written in the interleaved coordinates
/// `x1, y1, …, xn, yn`. A matrix `M` is symplectic when `MᵀΩM = Ω`.
#[derive(Clone, PartialEq, Debug)]
pub struct SymplecticStructure {
    n: usize,
    j: RatMat,
    omega: RatMat,
}

impl SymplecticStructure {
    pub fn standard(n: usize) -> Self {
        let dim = 2 * n;
        let mut j = RatMat::zeros(dim, dim);
        for k in 0..n {
            j.set(2 * k, 2 * k + 1, rat_int(-1));
            j.set(2 * k + 1, 2 * k, rat_int(1));
        }
        let mut omega = RatMat::zeros(dim, dim);
        for r in 0..n {
            omega.set(r, n + r, rat_int(1));
            omega.set(n + r, r, rat_int(-1));
        }
        SymplecticStructure { n, j, omega }
    }

    pub fn dimension(&self) -> usize {
        2 * self.n
    }

    pub fn j(&self) -> &RatMat {
        &self.j
    }

    pub fn omega(&self) -> &RatMat {
        &self.omega
    }

    pub fn is_symplectic(&self, m: &RatMat) -> bool {
        m.transpose().matmul(&self.omega).matmul(m) == self.omega
    }
}

/// `∇H` as a component vector.
pub fn gradient(h: &Polynomial<Rational>) -> Vec<Polynomial<Rational>> {
    (0..h.dimension()).map(|i| h.differentiate(i)).collect()
}

/// `J∇H` for the fixed `J`: per plane, `(−∂_{y_j} H, ∂_{x_j} H)`.
pub fn j_gradient(h: &Polynomial<Rational>) -> Vec<Polynomial<Rational>> {
    let dim = h.dimension();
    assert!(dim % 2 == 0);
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim / 2 {
        out.push(h.differentiate(2 * j + 1).negate());
        out.push(h.differentiate(2 * j));
    }
    out
}

/// Divergence `∇·X`.
pub fn divergence(comps: &[Polynomial<Rational>]) -> Polynomial<Rational> {
    let dim = comps.len();
    let mut out = Polynomial::zero(dim);
    for (i, p) in comps.iter().enumerate() {
        out = out.add(&p.differentiate(i));
    }
    out
}

/// `jet(φ_*X + X, order)` componentwise, where
/// `(φ_*X)(y) = Dφ(φ(y))·X(φ(y))` (an involution is its own inverse).
/// The field is `φ`-reversible exactly when this residual vanishes.
pub fn reversibility_residual(
    comps: &[Polynomial<Rational>],
    phi: &Involution,
    order: u32,
) -> Vec<Polynomial<Rational>> {
    let dim = comps.len();
    assert_eq!(dim, phi.dimension());
    let jac = phi.map().jacobian();
    // W = Dφ·X evaluated in the source coordinates, then composed with φ.
    let w: Vec<Polynomial<Rational>> = (0..dim)
        .map(|i| {
            let mut acc = Polynomial::zero(dim);
            for (j, comp) in comps.iter().enumerate() {
                acc = acc.add(&jac[i][j].mul_trunc(comp, order));
            }
            acc
        })
        .collect();
    w.iter()
        .zip(comps)
        .map(|(wi, xi)| {
            wi.substitute_trunc(phi.components(), order)
                .expect("arity fixed")
                .add(xi)
                .jet(order)
        })
        .collect()
}

pub fn is_reversible(comps: &[Polynomial<Rational>], phi: &Involution, order: u32) -> bool {
    reversibility_residual(comps, phi, order)
        .iter()
        .all(|p| p.is_zero())
}

/// Solve `J∇H = X` degree by degree. Each coefficient of `H` is pinned by
/// several component equations at once; the solve succeeds exactly when all
/// of them agree, and reports the first obstructed field degree otherwise.
/// `H` is normalized by `H(0) = 0` (and has no linear terms since `X`
/// vanishes at the origin), which makes it unique.
pub fn hamiltonian_of(
    comps: &[Polynomial<Rational>],
    order: u32,
) -> Result<Polynomial<Rational>, FieldError> {
    let dim = comps.len();
    assert!(dim % 2 == 0 && dim > 0);
    let mut h = Polynomial::zero(dim);
    for d in 1..=order {
        for m in crate::polyalg::monomials_of_degree(dim, d + 1) {
            let mut value: Option<Rational> = None;
            for j in 0..dim / 2 {
                let ey = m.exponent(2 * j + 1);
                if ey >= 1 {
                    // x_j-component: X_{2j}[m − e_{y_j}] = −ey·h_m
                    let mu = m.drop_var(2 * j + 1).unwrap();
                    let c = comps[2 * j].coefficient(&mu);
                    let cand = -c / rat_int(ey as i64);
                    if let Some(prev) = &value {
                        if *prev != cand {
                            return Err(FieldError::NotHamiltonian { degree: d });
                        }
                    } else {
                        value = Some(cand);
                    }
                }
                let ex = m.exponent(2 * j);
                if ex >= 1 {
                    // y_j-component: X_{2j+1}[m − e_{x_j}] = ex·h_m
                    let mu = m.drop_var(2 * j).unwrap();
                    let c = comps[2 * j + 1].coefficient(&mu);
                    let cand = c / rat_int(ex as i64);
                    if let Some(prev) = &value {
                        if *prev != cand {
                            return Err(FieldError::NotHamiltonian { degree: d });
                        }
                    } else {
                        value = Some(cand);
                    }
                }
            }
            if let Some(v) = value {
                if !v.is_zero() {
                    h.insert_add(m, v);
                }
            }
        }
    }
    Ok(h)
}

/// `Some(H)` with `jet(X − J∇H, order) = 0`, or `None` when no Hamiltonian
/// exists at this order.
pub fn is_hamiltonian(
    comps: &[Polynomial<Rational>],
    order: u32,
) -> Option<Polynomial<Rational>> {
    hamiltonian_of(comps, order).ok()
}

/// `jet(Ψ_*X, order)` for a near-identity `Ψ`:
/// `(Ψ_*X)(y) = [DΨ·X](Ψ^{-1}(y))`, with the inverse expanded to the
/// requested jet order. Exact.
pub fn pushforward_along(
    map: &PolyMap,
    comps: &[Polynomial<Rational>],
    order: u32,
) -> Vec<Polynomial<Rational>> {
    let dim = comps.len();
    assert_eq!(dim, map.dimension());
    let inv = map.invert_near_identity(order);
    let jac = map.jacobian();
    (0..dim)
        .map(|i| {
            let mut acc = Polynomial::zero(dim);
            for (j, comp) in comps.iter().enumerate() {
                if jac[i][j].is_zero() || comp.is_zero() {
                    continue;
                }
                acc = acc.add(&jac[i][j].mul_trunc(comp, order));
            }
            acc.substitute_trunc(inv.components(), order)
                .expect("arity fixed")
                .jet(order)
        })
        .collect()
}

/// `ρ·X` truncated at `order`. `ρ` must not vanish at the origin.
pub fn time_reparametrize(
    x: &VectorField,
    rho: &Polynomial<Rational>,
    order: u32,
) -> Result<VectorField, FieldError> {
    if rho.constant_term().is_zero() {
        return Err(FieldError::ReparametrizationVanishes);
    }
    let comps = reparametrize_components(x.components(), rho, order);
    // A non-unit constant factor rescales the frequencies.
    let c = rho.constant_term();
    let freqs = x.frequencies().iter().map(|f| f * &c).collect();
    VectorField::new(x.kind(), freqs, comps)
}

/// Componentwise `ρ·X` on raw components.
pub fn reparametrize_components(
    comps: &[Polynomial<Rational>],
    rho: &Polynomial<Rational>,
    order: u32,
) -> Vec<Polynomial<Rational>> {
    comps.iter().map(|p| rho.mul_trunc(p, order)).collect()
}

/// The conjugator `χ = Id + Dφ(0)∘φ` from the involution to its
/// linearization: `χ∘φ = Dφ(0)∘χ` holds exactly to the working order.
pub fn montgomery_bochner(phi: &Involution, order: u32) -> PolyMap {
    let dim = phi.dimension();
    let m = phi.linearization();
    let comps: Vec<Polynomial<Rational>> = (0..dim)
        .map(|i| {
            let mut acc = Polynomial::variable(dim, i);
            for j in 0..dim {
                let c = m.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&phi.components()[j].scale(c));
                }
            }
            acc.jet(order)
        })
        .collect();
    PolyMap::from_components(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    fn center_2d() -> VectorField {
        // ẋ = −y, ẏ = x
        VectorField::linear_field(InvariantKind::Elliptic, vec![rat_int(1)]).unwrap()
    }

    fn cubic_center_2d() -> VectorField {
        // ẋ = −y − y(x²+y²), ẏ = x + x(x²+y²)
        let delta = InvariantKind::Elliptic.generator(1, 0);
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let comps = vec![
            y.negate().add(&y.mul(&delta).negate()),
            x.add(&x.mul(&delta)),
        ];
        VectorField::new(InvariantKind::Elliptic, vec![rat_int(1)], comps).unwrap()
    }

    #[test]
    fn constructor_rejects_constant_terms() {
        let comps = vec![
            Polynomial::constant(2, rat_int(1)),
            Polynomial::variable(2, 0),
        ];
        assert!(matches!(
            VectorField::new(InvariantKind::Elliptic, vec![rat_int(1)], comps),
            Err(FieldError::NotVanishing { component: 0 })
        ));
    }

    #[test]
    fn constructor_rejects_wrong_linear_block() {
        // ẋ = x, ẏ = y is not elliptic block-normalized
        let comps = vec![Polynomial::variable(2, 0), Polynomial::variable(2, 1)];
        assert!(matches!(
            VectorField::new(InvariantKind::Elliptic, vec![rat_int(1)], comps),
            Err(FieldError::NotBlockNormalized)
        ));
    }

    #[test]
    fn linear_center_is_reversible() {
        let x = center_2d();
        let phi = Involution::canonical(InvariantKind::Elliptic, 1);
        assert!(is_reversible(x.components(), &phi, 5));
    }

    #[test]
    fn source_field_is_not_reversible() {
        // X = (x, y) against (x, −y): the pushforward returns +X.
        let comps = vec![Polynomial::variable(2, 0), Polynomial::variable(2, 1)];
        let phi = Involution::canonical(InvariantKind::Elliptic, 1);
        assert!(!is_reversible(&comps, &phi, 3));
    }

    #[test]
    fn cubic_center_is_reversible() {
        let x = cubic_center_2d();
        let phi = Involution::canonical(InvariantKind::Elliptic, 1);
        assert!(is_reversible(x.components(), &phi, 7));
    }

    #[test]
    fn hamiltonian_of_linear_center() {
        let x = center_2d();
        let h = hamiltonian_of(x.components(), 3).unwrap();
        // H = (x² + y²)/2
        let expect = InvariantKind::Elliptic.generator(1, 0).scale(&rat(1, 2));
        assert_eq!(h, expect);
        assert_eq!(j_gradient(&h), x.components().to_vec());
    }

    #[test]
    fn source_field_has_no_hamiltonian() {
        let comps = vec![Polynomial::variable(2, 0), Polynomial::variable(2, 1)];
        assert!(matches!(
            hamiltonian_of(&comps, 3),
            Err(FieldError::NotHamiltonian { degree: 1 })
        ));
    }

    #[test]
    fn hamiltonian_of_cubic_center() {
        let x = cubic_center_2d();
        let h = hamiltonian_of(x.components(), 4).unwrap();
        // H = (x²+y²)/2 + (x²+y²)²/4
        let delta = InvariantKind::Elliptic.generator(1, 0);
        let expect = delta.scale(&rat(1, 2)).add(&delta.mul(&delta).scale(&rat(1, 4)));
        assert_eq!(h, expect);
        // Divergence of a Hamiltonian field vanishes.
        assert!(divergence(x.components()).is_zero());
    }

    #[test]
    fn pushforward_by_identity_is_identity() {
        let x = cubic_center_2d();
        let id = PolyMap::identity(2);
        assert_eq!(pushforward_along(&id, x.components(), 7), x.components());
    }

    #[test]
    fn pushforward_matches_hand_inverted_series() {
        // X = (x, −y), Ψ = (x + x², y). Transporting the flow through Ψ and
        // re-expanding by hand with the inverted series
        // x = u − u² + 2u³ − 5u⁴ gives (u + u² − 2u³ + 5u⁴, −v).
        let comps = vec![
            Polynomial::<Rational>::variable(2, 0),
            Polynomial::<Rational>::variable(2, 1).negate(),
        ];
        let x2 = Polynomial::term(Monomial::new(vec![2, 0]), rat_int(1));
        let psi = PolyMap::near_identity(vec![x2, Polynomial::zero(2)]);
        let out = pushforward_along(&psi, &comps, 4);
        let expect0 = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![1, 0]), rat_int(1)),
                (Monomial::new(vec![2, 0]), rat_int(1)),
                (Monomial::new(vec![3, 0]), rat_int(-2)),
                (Monomial::new(vec![4, 0]), rat_int(5)),
            ],
        );
        assert_eq!(out[0], expect0);
        assert_eq!(out[1], Polynomial::<Rational>::variable(2, 1).negate());
    }

    #[test]
    fn near_identity_preserves_linear_jet() {
        let x = cubic_center_2d();
        let q = Polynomial::term(Monomial::new(vec![0, 2]), rat(1, 3));
        let psi = PolyMap::near_identity(vec![q, Polynomial::zero(2)]);
        let out = pushforward_along(&psi, x.components(), 5);
        assert_eq!(out[0].jet(1), x.component(0).jet(1));
        assert_eq!(out[1].jet(1), x.component(1).jet(1));
    }

    #[test]
    fn reparametrization_basics() {
        let x = cubic_center_2d();
        let one = Polynomial::one(2);
        assert_eq!(
            time_reparametrize(&x, &one, 7).unwrap().components(),
            x.components()
        );
        // ρ = 2 rescales the field and its frequencies.
        let two = Polynomial::constant(2, rat_int(2));
        let y = time_reparametrize(&x, &two, 7).unwrap();
        assert_eq!(y.frequencies()[0], rat_int(2));
        assert_eq!(y.component(0), &x.component(0).scale(&rat_int(2)));
        // ρ = 1 + Δ adds cubic rotational terms to the linear center.
        let rho = Polynomial::one(2).add(&InvariantKind::Elliptic.generator(1, 0));
        let z = time_reparametrize(&center_2d(), &rho, 5).unwrap();
        let expect = Polynomial::variable(2, 1)
            .negate()
            .mul(&Polynomial::one(2).add(&InvariantKind::Elliptic.generator(1, 0)));
        assert_eq!(z.component(0), &expect);
        // vanishing ρ is rejected
        let bad = Polynomial::variable(2, 0);
        assert!(time_reparametrize(&x, &bad, 5).is_err());
    }

    #[test]
    fn montgomery_bochner_conjugates_to_linearization() {
        // φ(x, y) = (x, −y + x²): χ = (2x, 2y − x²) and χ∘φ = Dφ(0)∘χ.
        let x = Polynomial::<Rational>::variable(2, 0);
        let y = Polynomial::<Rational>::variable(2, 1);
        let x2 = Polynomial::term(Monomial::new(vec![2, 0]), rat_int(1));
        let phi =
            Involution::new(PolyMap::from_components(vec![x.clone(), y.negate().add(&x2.clone())]), 8)
                .unwrap();
        let chi = montgomery_bochner(&phi, 8);
        assert_eq!(chi.component(0), &x.scale(&rat_int(2)));
        assert_eq!(chi.component(1), &y.scale(&rat_int(2)).sub(&x2));
        let lhs = chi.compose(phi.map(), 8);
        let rhs = PolyMap::from_matrix(phi.linearization()).compose(&chi, 8);
        assert!(lhs.jets_equal(&rhs, 8));
    }

    #[test]
    fn montgomery_bochner_linear_involution_doubles() {
        let phi = Involution::canonical(InvariantKind::Elliptic, 1);
        let chi = montgomery_bochner(&phi, 4);
        let two_id = PolyMap::from_components(vec![
            Polynomial::variable(2, 0).scale(&rat_int(2)),
            Polynomial::variable(2, 1).scale(&rat_int(2)),
        ]);
        assert_eq!(chi, two_id);
    }

    #[test]
    fn standard_structure_is_symplectic() {
        for n in 1..=3 {
            let s = SymplecticStructure::standard(n);
            assert!(s.is_symplectic(s.j()));
            // J² = −Id
            let j2 = s.j().matmul(s.j());
            assert_eq!(j2, RatMat::identity(2 * n).neg());
        }
    }

    use crate::polyalg::Monomial;
}

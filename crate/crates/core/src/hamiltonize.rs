//! Hamiltonian realization of invariant-shaped normal forms.
//!
//! A normal form `X̃ = Ax + f_3 + f_5 + …` whose odd parts are built from
//! the planar invariants is turned, order by order, into a Hamiltonian
//! field `Y = J∇H`. Each induction step `k ≥ 1` solves one exact linear
//! system tying together the degree-(2k+3) coefficients of the current
//! field, a homogeneous Hamiltonian correction `H_{2k+4}`, a
//! time-reparametrization term `θ_{2k+2}`, and a radial coordinate change
//! built from `σ_j^{[k]}`; the step transformation is applied exactly and
//! the resulting jet is checked Hamiltonian before the next step runs.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{
    is_reversible, j_gradient, pushforward_along, reparametrize_components, FieldError,
    Involution, PolyMap, Transformation, VectorField,
};
use crate::polyalg::{
    monomials_of_degree, rat, rat_int, to_invariant, InvariantKind, InvariantPolynomial, Monomial,
    PolyError, Polynomial, RatMat, Rational,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HamiltonizeMode {
    /// Coordinate changes and time-reparametrizations, any `n`.
    Orbital,
    /// Dimension 6 only: force the Hamiltonian tail onto pure powers, so
    /// `Y − j³Y` is decoupled.
    Decoupled6,
    /// Dimension 6 only: no time-reparametrization (`ρ ≡ 1`).
    Conjugacy6,
    /// Dimension 4 with odd `r1:r2` resonance and two reversing symmetries;
    /// the induction itself is the nonresonant one.
    D4Resonant,
}

impl HamiltonizeMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            HamiltonizeMode::Orbital => "orbital",
            HamiltonizeMode::Decoupled6 => "decoupled6",
            HamiltonizeMode::Conjugacy6 => "conjugacy6",
            HamiltonizeMode::D4Resonant => "d4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "orbital" => Some(HamiltonizeMode::Orbital),
            "decoupled6" => Some(HamiltonizeMode::Decoupled6),
            "conjugacy6" => Some(HamiltonizeMode::Conjugacy6),
            "d4" => Some(HamiltonizeMode::D4Resonant),
            _ => None,
        }
    }
}

impl std::fmt::Display for HamiltonizeMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum HamiltonizeError {
    #[error("component {component} is not of the invariant normal-form shape: {detail}")]
    ShapeViolation { component: usize, detail: String },
    #[error("genericity failure: some cubic cross-coefficient vanishes (F = 0)")]
    NotGeneric,
    #[error("the cubic jet is not Hamiltonian (cross-symmetry fails)")]
    NotJ3Hamiltonian,
    #[error("field is not reversible for the supplied involution at order {order}")]
    NotReversible { order: u32 },
    #[error("linear system is inconsistent for this mode at degree {degree}")]
    SingularSystem { degree: u32 },
    #[error("target order must be odd and at least 3, got {order}")]
    BadOrder { order: u32 },
    #[error("mode {mode} requires ambient dimension {required}, got {got}")]
    ModeDimension {
        mode: HamiltonizeMode,
        required: usize,
        got: usize,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A normal form written in invariant coordinates: per plane `j` the factor
/// `f_j(Δ₁,…,Δₙ)` (or `f_j(Γ₁,…,Γₙ)`), holding every coefficient
/// `a_{j,I}` with `|I| ≥ 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct InvariantField {
    kind: InvariantKind,
    frequencies: Vec<Rational>,
    factors: Vec<InvariantPolynomial>,
}

impl InvariantField {
    pub fn new(
        kind: InvariantKind,
        frequencies: Vec<Rational>,
        factors: Vec<InvariantPolynomial>,
    ) -> Self {
        let n = frequencies.len();
        assert_eq!(factors.len(), n);
        assert!(factors.iter().all(|f| f.n() == n && f.kind() == kind));
        assert!(
            factors
                .iter()
                .all(|f| f.iter().all(|(m, _)| m.total_degree() >= 1)),
            "invariant factors must have no constant term"
        );
        InvariantField {
            kind,
            frequencies,
            factors,
        }
    }

    pub fn n(&self) -> usize {
        self.frequencies.len()
    }

    pub fn kind(&self) -> InvariantKind {
        self.kind
    }

    pub fn frequencies(&self) -> &[Rational] {
        &self.frequencies
    }

    pub fn factor(&self, j: usize) -> &InvariantPolynomial {
        &self.factors[j]
    }

    /// `a_{j,I}`.
    pub fn coefficient(&self, j: usize, idx: &Monomial) -> Rational {
        self.factors[j].coefficient(idx)
    }

    /// The matrix of cubic cross-coefficients `a_{j,e_r}`.
    pub fn cubic_block(&self) -> RatMat {
        let n = self.n();
        let mut m = RatMat::zeros(n, n);
        for j in 0..n {
            for r in 0..n {
                m.set(j, r, self.coefficient(j, &Monomial::unit(n, r)));
            }
        }
        m
    }

    /// Expand back into a vector field: per plane,
    /// elliptic `(−y_j (α_j + f_j), x_j (α_j + f_j))` or
    /// saddle `(x_j (β_j + f_j), −y_j (β_j + f_j))`.
    pub fn expand(&self) -> Result<VectorField, FieldError> {
        let n = self.n();
        let dim = 2 * n;
        let mut comps = Vec::with_capacity(dim);
        for j in 0..n {
            let factor = Polynomial::constant(dim, self.frequencies[j].clone())
                .add(&self.factors[j].expand());
            let x = Polynomial::variable(dim, 2 * j);
            let y = Polynomial::variable(dim, 2 * j + 1);
            match self.kind {
                InvariantKind::Elliptic => {
                    comps.push(y.negate().mul(&factor));
                    comps.push(x.mul(&factor));
                }
                InvariantKind::Saddle => {
                    comps.push(x.mul(&factor));
                    comps.push(y.negate().mul(&factor));
                }
            }
        }
        VectorField::new(self.kind, self.frequencies.clone(), comps)
    }
}

/// Read the invariant factors off a normal form; fails when any component
/// is outside the invariant class (including any even-degree content).
pub fn extract_invariant_form(x: &VectorField) -> Result<InvariantField, HamiltonizeError> {
    let n = x.pairs();
    let kind = x.kind();
    let mut factors = Vec::with_capacity(n);
    for j in 0..n {
        let freq = &x.frequencies()[j];
        let dim = x.dimension();
        let x_var = Polynomial::variable(dim, 2 * j);
        let y_var = Polynomial::variable(dim, 2 * j + 1);
        // Peel the linear part, then factor out the coordinate.
        let (p_nl, q_nl, p_divisor, q_divisor, p_sign, q_sign) = match kind {
            InvariantKind::Elliptic => (
                x.component(2 * j).add(&y_var.scale(freq)),
                x.component(2 * j + 1).sub(&x_var.scale(freq)),
                2 * j + 1,
                2 * j,
                rat_int(-1),
                rat_int(1),
            ),
            InvariantKind::Saddle => (
                x.component(2 * j).sub(&x_var.scale(freq)),
                x.component(2 * j + 1).add(&y_var.scale(freq)),
                2 * j,
                2 * j + 1,
                rat_int(1),
                rat_int(-1),
            ),
        };
        let fp = p_nl
            .divide_by_variable(p_divisor)
            .ok_or_else(|| HamiltonizeError::ShapeViolation {
                component: 2 * j,
                detail: format!(
                    "nonlinear part is not divisible by {}",
                    crate::polyalg::text::var_name(p_divisor)
                ),
            })?
            .scale(&p_sign);
        let fq = q_nl
            .divide_by_variable(q_divisor)
            .ok_or_else(|| HamiltonizeError::ShapeViolation {
                component: 2 * j + 1,
                detail: format!(
                    "nonlinear part is not divisible by {}",
                    crate::polyalg::text::var_name(q_divisor)
                ),
            })?
            .scale(&q_sign);
        if fp != fq {
            return Err(HamiltonizeError::ShapeViolation {
                component: 2 * j,
                detail: "the two components of the plane disagree on the invariant factor".into(),
            });
        }
        let inv = to_invariant(&fp, kind).map_err(|e| HamiltonizeError::ShapeViolation {
            component: 2 * j,
            detail: e.to_string(),
        })?;
        if inv.iter().any(|(m, _)| m.total_degree() == 0) {
            return Err(HamiltonizeError::ShapeViolation {
                component: 2 * j,
                detail: "invariant factor has a constant term".into(),
            });
        }
        factors.push(inv);
    }
    Ok(InvariantField::new(
        kind,
        x.frequencies().to_vec(),
        factors,
    ))
}

/// The genericity witness `F = ∏_{j,r} a_{j,e_r}` over the cubic block.
pub fn check_genericity(f: &InvariantField) -> Rational {
    let n = f.n();
    let mut prod = Rational::one();
    for j in 0..n {
        for r in 0..n {
            prod *= f.coefficient(j, &Monomial::unit(n, r));
        }
    }
    prod
}

/// Cross-symmetry `a_{j,e_r} = a_{r,e_j}` of the cubic block; equivalent to
/// the cubic jet being Hamiltonian for fields of this shape.
pub fn check_j3_hamiltonian(f: &InvariantField) -> bool {
    let n = f.n();
    for j in 0..n {
        for r in j + 1..n {
            if f.coefficient(j, &Monomial::unit(n, r)) != f.coefficient(r, &Monomial::unit(n, j)) {
                return false;
            }
        }
    }
    true
}

/// One induction step: `h` carries `H_{2k+4}` (weight `k+2`), `theta`
/// carries `θ_{2k+2}` (weight `k+1`), `mu[j]` carries `σ_j^{[k]}`
/// (weight `k`).
#[derive(Clone, PartialEq, Debug)]
pub struct HamiltonizationStep {
    pub k: u32,
    pub h: InvariantPolynomial,
    pub theta: InvariantPolynomial,
    pub mu: Vec<InvariantPolynomial>,
}

/// Assemble and solve the exact linear system for step `k`, given the
/// invariant form of the current field. Unknowns are eliminated with the
/// Hamiltonian coefficients preferred, then `θ`, then `μ` (free unknowns are
/// zero), each block in ascending graded-lex order of its multi-index.
pub fn solve_step(
    current: &InvariantField,
    k: u32,
    mode: HamiltonizeMode,
) -> Result<HamiltonizationStep, HamiltonizeError> {
    let n = current.n();
    let kind = current.kind();
    let freqs = current.frequencies();
    let cubic = current.cubic_block();

    let i_list = monomials_of_degree(n, k + 1);
    let j_list: Vec<Monomial> = match mode {
        HamiltonizeMode::Decoupled6 => (0..n)
            .map(|r| {
                let mut exps = vec![0u32; n];
                exps[r] = k + 2;
                Monomial::new(exps)
            })
            .collect(),
        _ => monomials_of_degree(n, k + 2),
    };
    let with_theta = mode != HamiltonizeMode::Conjugacy6;
    let m_list = monomials_of_degree(n, k);

    let h_cols = j_list.len();
    let theta_cols = if with_theta { i_list.len() } else { 0 };
    let mu_cols = n * m_list.len();
    let cols = h_cols + theta_cols + mu_cols;
    let rows = n * i_list.len();

    let h_col = |jm: &Monomial| -> Option<usize> { j_list.iter().position(|c| c == jm) };
    let theta_col = |ii: usize| -> usize { h_cols + ii };
    let mu_col = |r: usize, mm: &Monomial| -> usize {
        h_cols + theta_cols + r * m_list.len() + m_list.iter().position(|c| c == mm).unwrap()
    };

    let mut mat = RatMat::zeros(rows, cols);
    let mut rhs = vec![Rational::zero(); rows];
    for (ii, idx) in i_list.iter().enumerate() {
        for j in 0..n {
            let row = ii * n + j;
            rhs[row] = current.coefficient(j, idx);
            // Hamiltonian correction: elliptic 2(i_j+1)·h_{I+e_j},
            // saddle −(i_j+1)·h_{I+e_j}.
            let bumped = idx.bump(j);
            if let Some(col) = h_col(&bumped) {
                let ij = rat_int((idx.exponent(j) + 1) as i64);
                let coeff = match kind {
                    InvariantKind::Elliptic => rat_int(2) * ij,
                    InvariantKind::Saddle => -ij,
                };
                mat.set(row, col, coeff);
            }
            // time-reparametrization: −freq_j·θ_I
            if with_theta {
                mat.set(row, theta_col(ii), -freqs[j].clone());
            }
            // radial coordinate change through the cubic block:
            // +2·a_{j,e_r}·μ_{r, I−e_r}
            for r in 0..n {
                if let Some(dropped) = idx.drop_var(r) {
                    let col = mu_col(r, &dropped);
                    let v = mat.get(row, col).clone() + rat_int(2) * cubic.get(j, r).clone();
                    mat.set(row, col, v);
                }
            }
        }
    }

    let solution = mat
        .solve(&rhs)
        .ok_or(HamiltonizeError::SingularSystem { degree: 2 * k + 3 })?;

    let mut h = InvariantPolynomial::zero(n, kind);
    for (c, jm) in j_list.iter().enumerate() {
        h.insert_add(jm.clone(), solution[c].clone());
    }
    let mut theta = InvariantPolynomial::zero(n, kind);
    if with_theta {
        for (ii, idx) in i_list.iter().enumerate() {
            theta.insert_add(idx.clone(), solution[theta_col(ii)].clone());
        }
    }
    let mut mu = vec![InvariantPolynomial::zero(n, kind); n];
    for r in 0..n {
        for mm in &m_list {
            let v = solution[mu_col(r, mm)].clone();
            mu[r].insert_add(mm.clone(), v);
        }
    }
    Ok(HamiltonizationStep { k, h, theta, mu })
}

/// Data of one applied step: the solved coefficients plus the expanded
/// correction map `ψ_{2k+1}` and factor `θ_{2k+2}`.
#[derive(Clone, Debug)]
pub struct HamStepData {
    pub solution: HamiltonizationStep,
    pub psi: Vec<Polynomial<Rational>>,
    pub theta_poly: Polynomial<Rational>,
}

/// Full outcome of the induction.
#[derive(Clone, Debug)]
pub struct HamiltonizationResult {
    pub mode: HamiltonizeMode,
    pub order: u32,
    pub steps: Vec<HamStepData>,
    /// `Y`, Hamiltonian to the full order.
    pub output: VectorField,
    /// `H` with `Y = J∇H` exactly.
    pub hamiltonian: Polynomial<Rational>,
    /// The witness `F`.
    pub genericity: Rational,
    /// Product of the per-step factors transported into the original
    /// coordinates; `ρ(0) = 1`, and `ρ ≡ 1` in conjugacy mode.
    pub rho_global: Polynomial<Rational>,
}

impl HamiltonizationResult {
    /// The accumulated coordinate change with its global `ρ`.
    pub fn transformation(&self) -> Transformation {
        let dim = self.output.dimension();
        let mut t = Transformation::identity(dim, self.order);
        for s in &self.steps {
            t.push_step(PolyMap::near_identity(s.psi.clone()))
                .expect("steps are near-identities by construction");
        }
        t.set_rho(self.rho_global.clone())
            .expect("rho is 1 at the origin by construction");
        t
    }
}

/// The quadratic part of the Hamiltonian fixed by the linear field:
/// `Σ α_j Δ_j / 2` (elliptic) or `−Σ β_j Γ_j` (saddle).
pub fn quadratic_hamiltonian(kind: InvariantKind, freqs: &[Rational]) -> Polynomial<Rational> {
    let n = freqs.len();
    let mut h = Polynomial::zero(2 * n);
    for (j, f) in freqs.iter().enumerate() {
        let g = kind.generator(n, j);
        let c = match kind {
            InvariantKind::Elliptic => f / rat_int(2),
            InvariantKind::Saddle => -f.clone(),
        };
        h = h.add(&g.scale(&c));
    }
    h
}

/// The quartic part determined by a symmetric cubic block:
/// elliptic `h_{e_j+e_r} = a_{j,e_r} / (2(1+δ_{jr}))`,
/// saddle `h_{e_j+e_r} = −a_{j,e_r} / (1+δ_{jr})`.
pub fn quartic_hamiltonian(f: &InvariantField) -> InvariantPolynomial {
    let n = f.n();
    let mut h = InvariantPolynomial::zero(n, f.kind());
    for j in 0..n {
        for r in j..n {
            let a = f.coefficient(j, &Monomial::unit(n, r));
            let dup = if j == r { rat_int(2) } else { rat_int(1) };
            let c = match f.kind() {
                InvariantKind::Elliptic => a / (rat_int(2) * dup),
                InvariantKind::Saddle => -a / dup,
            };
            h.insert_add(Monomial::unit(n, j).bump(r), c);
        }
    }
    h
}

/// Run the induction on a normal form `X̃` up to the odd order `N`,
/// producing `Y`, `H`, and the per-step transformation data. The master
/// identity `jet(Ψ_{2k+1*}((1+θ_{2k+2})·X_k) − Y, 2k+3) = 0` is enforced
/// exactly at every step.
pub fn hamiltonize(
    xt: &VectorField,
    order: u32,
    mode: HamiltonizeMode,
    phi: &Involution,
) -> Result<HamiltonizationResult, HamiltonizeError> {
    if order < 3 || order % 2 == 0 {
        return Err(HamiltonizeError::BadOrder { order });
    }
    let dim = xt.dimension();
    match mode {
        HamiltonizeMode::Decoupled6 | HamiltonizeMode::Conjugacy6 if dim != 6 => {
            return Err(HamiltonizeError::ModeDimension {
                mode,
                required: 6,
                got: dim,
            });
        }
        HamiltonizeMode::D4Resonant if dim != 4 => {
            return Err(HamiltonizeError::ModeDimension {
                mode,
                required: 4,
                got: dim,
            });
        }
        _ => {}
    }
    if !is_reversible(xt.components(), phi, order) {
        return Err(HamiltonizeError::NotReversible { order });
    }
    let invariant = extract_invariant_form(xt)?;
    let n = invariant.n();
    let genericity = check_genericity(&invariant);
    if n >= 2 && genericity.is_zero() {
        return Err(HamiltonizeError::NotGeneric);
    }
    if !check_j3_hamiltonian(&invariant) {
        return Err(HamiltonizeError::NotJ3Hamiltonian);
    }

    let mut hamiltonian = quadratic_hamiltonian(xt.kind(), xt.frequencies())
        .add(&quartic_hamiltonian(&invariant).expand());
    let mut current: Vec<Polynomial<Rational>> =
        xt.components().iter().map(|p| p.jet(order)).collect();
    {
        let base = j_gradient(&hamiltonian);
        for (i, (c, b)) in current.iter().zip(&base).enumerate() {
            if c.jet(3) != b.jet(3) {
                return Err(HamiltonizeError::Internal(format!(
                    "cubic jet of component {i} is not the Hamiltonian base"
                )));
            }
        }
    }

    let mut steps = Vec::new();
    let mut rho_global = Polynomial::one(dim);
    let mut composed_before = PolyMap::identity(dim);
    let last_k = (order - 3) / 2;
    for k in 1..=last_k {
        let inv_current = extract_invariant_form(&xt.with_components(current.clone())?)?;
        if inv_current.cubic_block() != invariant.cubic_block() {
            return Err(HamiltonizeError::Internal(
                "cubic block drifted during the induction".into(),
            ));
        }
        let solution = solve_step(&inv_current, k, mode)?;
        // ψ_{2k+1}: per plane (x_j σ_j, y_j σ_j) in the invariants.
        let mut psi = Vec::with_capacity(dim);
        for j in 0..n {
            let sigma = solution.mu[j].expand();
            psi.push(Polynomial::variable(dim, 2 * j).mul(&sigma));
            psi.push(Polynomial::variable(dim, 2 * j + 1).mul(&sigma));
        }
        let theta_poly = solution.theta.expand();
        let rho_step = Polynomial::one(dim).add(&theta_poly);

        let reparam = reparametrize_components(&current, &rho_step, order);
        let step_map = PolyMap::near_identity(psi.clone());
        current = pushforward_along(&step_map, &reparam, order);

        hamiltonian = hamiltonian.add(&solution.h.expand());
        let target = j_gradient(&hamiltonian);
        for (i, (c, t)) in current.iter().zip(&target).enumerate() {
            if c.jet(2 * k + 3) != t.jet(2 * k + 3) {
                return Err(HamiltonizeError::Internal(format!(
                    "residual at degree {} in component {i} is nonzero after step {k}",
                    2 * k + 3
                )));
            }
        }

        // global ρ: each step factor transported back through the steps
        // applied before it.
        let factor = rho_step
            .substitute_trunc(composed_before.components(), order)
            .expect("arity fixed");
        rho_global = rho_global.mul_trunc(&factor, order);
        composed_before = step_map.compose(&composed_before, order);

        steps.push(HamStepData {
            solution,
            psi,
            theta_poly,
        });
    }

    let output = xt.with_components(current)?;
    // Y = J∇H exactly: all jets up to `order` are Hamiltonian and H has no
    // higher content.
    let target = j_gradient(&hamiltonian);
    for (c, t) in output.components().iter().zip(&target) {
        if c != t {
            return Err(HamiltonizeError::Internal(
                "output differs from J∇H beyond the certified jets".into(),
            ));
        }
    }
    if mode == HamiltonizeMode::Conjugacy6 && rho_global != Polynomial::one(dim) {
        return Err(HamiltonizeError::Internal(
            "conjugacy mode produced a nontrivial reparametrization".into(),
        ));
    }
    Ok(HamiltonizationResult {
        mode,
        order,
        steps,
        output,
        hamiltonian,
        genericity,
        rho_global,
    })
}

/// Closed-form planar Hamiltonian: with `u` the invariant, returns
/// `H(u) = α u/2 + (1/2)∫₀ᵘ f(s) ds` (elliptic) or
/// `H(γ) = −β γ − ∫₀^γ f(s) ds` (saddle). Both planar equations of
/// `J∇H = X̃` are satisfied exactly, which is checked before returning.
pub fn closed_form_2d(xt: &VectorField) -> Result<Polynomial<Rational>, HamiltonizeError> {
    if xt.pairs() != 1 {
        return Err(HamiltonizeError::ModeDimension {
            mode: HamiltonizeMode::Orbital,
            required: 2,
            got: xt.dimension(),
        });
    }
    let invariant = extract_invariant_form(xt)?;
    let f = invariant.factor(0);
    let integral = f.antiderivative();
    let h_inv = match xt.kind() {
        InvariantKind::Elliptic => integral.scale(&rat(1, 2)),
        InvariantKind::Saddle => integral.scale(&rat_int(-1)),
    };
    let h = quadratic_hamiltonian(xt.kind(), xt.frequencies()).add(&h_inv.expand());
    let grad = j_gradient(&h);
    for (c, g) in xt.components().iter().zip(&grad) {
        if c != g {
            return Err(HamiltonizeError::Internal(
                "closed-form Hamiltonian does not reproduce the field".into(),
            ));
        }
    }
    Ok(h)
}

/// Preconditions of the doubly-reversible resonant path: reversibility for
/// both involutions, frequencies in exact ratio `r1:r2` with both odd and
/// `r1·r2 > 1`.
pub fn check_d4_preconditions(
    x: &VectorField,
    g1: &Involution,
    g2: &Involution,
    r1: u64,
    r2: u64,
) -> bool {
    if x.dimension() != 4 {
        return false;
    }
    if r1 % 2 == 0 || r2 % 2 == 0 || r1 * r2 <= 1 {
        return false;
    }
    let order = x.max_degree().max(3);
    if !is_reversible(x.components(), g1, order) || !is_reversible(x.components(), g2, order) {
        return false;
    }
    let a1 = &x.frequencies()[0];
    let a2 = &x.frequencies()[1];
    a1 * rat_int(r2 as i64) == a2 * rat_int(r1 as i64)
}

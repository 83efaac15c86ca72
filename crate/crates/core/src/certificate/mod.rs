//! Self-contained proof objects: the input field, its normal form with the
//! reducing transformation, the Hamiltonian realization with its
//! transformation and residuals, and the genericity witness. Certificates
//! serialize to a line-oriented text format that round-trips bit-exactly
//! and can be re-verified in a separate process.

pub mod document;
mod textio;

use num_traits::One;
use thiserror::Error;

use crate::field::{FieldError, Involution, PolyMap, Transformation, VectorField};
use crate::hamiltonize::{
    check_d4_preconditions, hamiltonize, HamiltonizationResult, HamiltonizeError, HamiltonizeMode,
};
use crate::normalform::{poincare_dulac, NormalFormError, NormalFormResult};
use crate::polyalg::{Polynomial, Rational};

pub use textio::ParseError;

/// Data of the second reversing symmetry for the doubly-reversible
/// resonant mode.
#[derive(Clone, PartialEq, Debug)]
pub struct D4Data {
    pub g2: Involution,
    pub r1: u64,
    pub r2: u64,
}

/// One Hamiltonizing step as stored in a certificate.
#[derive(Clone, PartialEq, Debug)]
pub struct CertHamStep {
    pub k: u32,
    pub psi: Vec<Polynomial<Rational>>,
    pub theta: Polynomial<Rational>,
}

/// The Hamiltonization section of a certificate.
#[derive(Clone, PartialEq, Debug)]
pub struct HamPart {
    pub mode: HamiltonizeMode,
    pub steps: Vec<CertHamStep>,
    /// `Y`.
    pub output: VectorField,
    /// `H` with `Y = J∇H`.
    pub hamiltonian: Polynomial<Rational>,
    /// `F`.
    pub genericity: Rational,
    /// Global `ρ` with `jet(Ψ_*(ρ·X̃) − Y, order) = 0`.
    pub rho_global: Polynomial<Rational>,
    /// Residual jets per odd order, all exactly zero.
    pub residuals: Vec<(u32, Vec<Polynomial<Rational>>)>,
}

impl HamPart {
    /// The accumulated `(Ψ, ρ)` pair.
    pub fn transformation(&self, working_order: u32) -> Transformation {
        let dim = self.output.dimension();
        let mut t = Transformation::identity(dim, working_order);
        for s in &self.steps {
            t.push_step(PolyMap::near_identity(s.psi.clone()))
                .expect("stored steps are near-identities");
        }
        t.set_rho(self.rho_global.clone())
            .expect("stored rho is 1 at the origin");
        t
    }
}

/// A complete certificate. `ham` is absent for normal-form-only documents.
#[derive(Clone, PartialEq, Debug)]
pub struct Certificate {
    pub order: u32,
    pub input: VectorField,
    pub involution: Involution,
    pub d4: Option<D4Data>,
    /// Nonlinear parts of the normal-form reduction steps, in application
    /// order (one per processed degree that needed a correction).
    pub pd_steps: Vec<Vec<Polynomial<Rational>>>,
    pub normal_form: VectorField,
    /// Residual of the reduction at the working order (exactly zero).
    pub pd_residual: Vec<Polynomial<Rational>>,
    pub ham: Option<HamPart>,
}

impl Certificate {
    pub fn dimension(&self) -> usize {
        self.input.dimension()
    }

    /// The normal-form reduction as a transformation.
    pub fn pd_transformation(&self) -> Transformation {
        let mut t = Transformation::identity(self.dimension(), self.order);
        for step in &self.pd_steps {
            t.push_step(PolyMap::near_identity(step.clone()))
                .expect("stored steps are near-identities");
        }
        t
    }

    pub fn to_text(&self) -> String {
        textio::write_certificate(self)
    }

    pub fn parse(text: &str) -> Result<Certificate, ParseError> {
        textio::parse_certificate(text)
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error(transparent)]
    Hamiltonize(#[from] HamiltonizeError),
    #[error("doubly-reversible preconditions fail (reversibilities, odd r1:r2 with r1·r2 > 1)")]
    D4Preconditions,
    #[error("mode d4 requires the second involution and resonance ratio in the input")]
    MissingD4Data,
}

/// Everything the pipeline needs from an input document.
#[derive(Clone, Debug)]
pub struct PipelineInput {
    pub field: VectorField,
    pub involution: Involution,
    pub d4: Option<D4Data>,
}

/// Run the reduction (and optionally the Hamiltonization) and package the
/// result. With `mode = None` only the normal form is certified.
pub fn certify(
    input: &PipelineInput,
    order: u32,
    mode: Option<HamiltonizeMode>,
) -> Result<Certificate, PipelineError> {
    let mut reversors = vec![input.involution.clone()];
    if let Some(d4) = &input.d4 {
        reversors.push(d4.g2.clone());
    }
    if mode == Some(HamiltonizeMode::D4Resonant) {
        let d4 = input.d4.as_ref().ok_or(PipelineError::MissingD4Data)?;
        if !check_d4_preconditions(&input.field, &input.involution, &d4.g2, d4.r1, d4.r2) {
            return Err(PipelineError::D4Preconditions);
        }
    }
    let nf: NormalFormResult = poincare_dulac(&input.field, order, &reversors)?;
    let pd_steps: Vec<Vec<Polynomial<Rational>>> = nf
        .transformation
        .steps()
        .iter()
        .map(|s| s.nonlinear_part())
        .collect();
    let dim = input.field.dimension();
    let zero_comps = vec![Polynomial::zero(dim); dim];

    let ham = match mode {
        None => None,
        Some(mode) => {
            let result: HamiltonizationResult =
                hamiltonize(&nf.normal_form, order, mode, &input.involution)?;
            let steps = result
                .steps
                .iter()
                .map(|s| CertHamStep {
                    k: s.solution.k,
                    psi: s.psi.clone(),
                    theta: s.theta_poly.clone(),
                })
                .collect();
            let residuals = (1..=(order.saturating_sub(3)) / 2)
                .map(|k| (2 * k + 3, zero_comps.clone()))
                .collect();
            Some(HamPart {
                mode,
                steps,
                output: result.output,
                hamiltonian: result.hamiltonian,
                genericity: result.genericity,
                rho_global: result.rho_global,
                residuals,
            })
        }
    };

    Ok(Certificate {
        order,
        input: input.field.clone(),
        involution: input.involution.clone(),
        d4: input.d4.clone(),
        pd_steps,
        normal_form: nf.normal_form,
        pd_residual: zero_comps,
        ham,
    })
}

/// The trivial certificate of an already-Hamiltonian linear field; mostly
/// useful as a smoke fixture.
pub fn trivial_certificate(x: &VectorField, phi: &Involution) -> Certificate {
    let dim = x.dimension();
    let genericity = crate::hamiltonize::extract_invariant_form(x)
        .map(|inv| crate::hamiltonize::check_genericity(&inv))
        .unwrap_or_else(|_| Rational::one());
    Certificate {
        order: 3,
        input: x.clone(),
        involution: phi.clone(),
        d4: None,
        pd_steps: Vec::new(),
        normal_form: x.clone(),
        pd_residual: vec![Polynomial::zero(dim); dim],
        ham: Some(HamPart {
            mode: HamiltonizeMode::Orbital,
            steps: Vec::new(),
            output: x.clone(),
            hamiltonian: crate::hamiltonize::quadratic_hamiltonian(x.kind(), x.frequencies()),
            genericity,
            rho_global: Polynomial::one(dim),
            residuals: Vec::new(),
        }),
    }
}

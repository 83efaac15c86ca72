//! Composite near-identity coordinate changes paired with a
//! time-reparametrization factor.

use num_traits::One;

use super::map::PolyMap;
use super::{pushforward_along, FieldError};
use crate::polyalg::{Polynomial, Rational};

/// A sequence of near-identity coordinate changes `Id + ψ` (applied in
/// order) together with a global time-reparametrization factor `ρ` with
/// `ρ(0) = 1`. The homogeneous nonlinear parts `ψ` have degree ≥ 2; the
/// Hamiltonizing induction contributes one odd-degree `ψ_{2k+1}` per step,
/// the normal-form reduction one `ψ_m` per degree.
#[derive(Clone, PartialEq, Debug)]
pub struct Transformation {
    dim: usize,
    steps: Vec<PolyMap>,
    rho: Polynomial<Rational>,
    working_order: u32,
}

impl Transformation {
    pub fn identity(dim: usize, working_order: u32) -> Self {
        Transformation {
            dim,
            steps: Vec::new(),
            rho: Polynomial::one(dim),
            working_order,
        }
    }

    /// Append a near-identity step, applied after all existing ones.
    pub fn push_step(&mut self, map: PolyMap) -> Result<(), FieldError> {
        if map.dimension() != self.dim {
            return Err(FieldError::DimensionMismatch);
        }
        if !map.is_near_identity() {
            return Err(FieldError::NotNearIdentity);
        }
        self.steps.push(map);
        Ok(())
    }

    pub fn set_rho(&mut self, rho: Polynomial<Rational>) -> Result<(), FieldError> {
        if rho.dimension() != self.dim {
            return Err(FieldError::DimensionMismatch);
        }
        if rho.constant_term() != Rational::one() {
            return Err(FieldError::ReparametrizationNotUnit);
        }
        self.rho = rho;
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &[PolyMap] {
        &self.steps
    }

    pub fn rho(&self) -> &Polynomial<Rational> {
        &self.rho
    }

    pub fn working_order(&self) -> u32 {
        self.working_order
    }

    pub fn is_identity_map(&self) -> bool {
        self.steps.iter().all(|s| s.is_identity())
    }

    /// The single composed map `Ψ = Ψ_last ∘ … ∘ Ψ_first`, truncated.
    pub fn composed_map(&self, order: u32) -> PolyMap {
        let mut total = PolyMap::identity(self.dim);
        for step in &self.steps {
            total = step.compose(&total, order);
        }
        total
    }

    /// `Ψ_* X` (coordinate steps only; `ρ` is applied by the caller),
    /// computed by pushing the components through each step in turn.
    pub fn pushforward(&self, comps: &[Polynomial<Rational>], order: u32) -> Vec<Polynomial<Rational>> {
        let mut cur: Vec<Polynomial<Rational>> = comps.to_vec();
        for step in &self.steps {
            cur = pushforward_along(step, &cur, order);
        }
        cur
    }
}

//! Polynomial self-maps of R^d: composition, Jacobians, and exact jet-level
//! inversion of near-identity maps.

use num_traits::Zero;

use crate::polyalg::{Monomial, Polynomial, RatMat, Rational};

/// A polynomial map `R^d → R^d`, one component per coordinate.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMap {
    comps: Vec<Polynomial<Rational>>,
}

impl PolyMap {
    pub fn identity(dim: usize) -> Self {
        PolyMap {
            comps: (0..dim).map(|i| Polynomial::variable(dim, i)).collect(),
        }
    }

    pub fn from_components(comps: Vec<Polynomial<Rational>>) -> Self {
        let dim = comps.len();
        assert!(
            comps.iter().all(|p| p.dimension() == dim),
            "map components must live in as many variables as there are components"
        );
        PolyMap { comps }
    }

    pub fn from_matrix(m: &RatMat) -> Self {
        assert_eq!(m.rows(), m.cols());
        PolyMap {
            comps: m.as_linear_map(),
        }
    }

    /// `Id + h` for a nonlinear part `h` (given as components).
    pub fn near_identity(nonlinear: Vec<Polynomial<Rational>>) -> Self {
        let id = Self::identity(nonlinear.len());
        PolyMap {
            comps: id
                .comps
                .iter()
                .zip(nonlinear)
                .map(|(x, h)| x.add(&h))
                .collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Polynomial<Rational>] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Polynomial<Rational> {
        &self.comps[i]
    }

    pub fn fixes_origin(&self) -> bool {
        self.comps.iter().all(|p| p.constant_term().is_zero())
    }

    pub fn linear_part(&self) -> RatMat {
        let d = self.dimension();
        let mut m = RatMat::zeros(d, d);
        for (i, p) in self.comps.iter().enumerate() {
            for j in 0..d {
                m.set(i, j, p.coefficient(&Monomial::unit(d, j)));
            }
        }
        m
    }

    /// Components of the map minus the identity.
    pub fn nonlinear_part(&self) -> Vec<Polynomial<Rational>> {
        let d = self.dimension();
        self.comps
            .iter()
            .enumerate()
            .map(|(i, p)| p.sub(&Polynomial::variable(d, i)))
            .collect()
    }

    /// Linear part is the identity and the origin is fixed.
    pub fn is_near_identity(&self) -> bool {
        self.fixes_origin() && self.linear_part().is_identity()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dimension())
    }

    pub fn jet(&self, order: u32) -> Self {
        PolyMap {
            comps: self.comps.iter().map(|p| p.jet(order)).collect(),
        }
    }

    /// `self ∘ inner`, truncated at `order`.
    pub fn compose(&self, inner: &PolyMap, order: u32) -> Self {
        assert_eq!(self.dimension(), inner.dimension());
        PolyMap {
            comps: self
                .comps
                .iter()
                .map(|p| {
                    p.substitute_trunc(inner.components(), order)
                        .expect("composition arity is fixed by construction")
                })
                .collect(),
        }
    }

    /// Jacobian matrix of polynomials, `jac[i][j] = ∂ comps[i] / ∂ x_j`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial<Rational>>> {
        let d = self.dimension();
        self.comps
            .iter()
            .map(|p| (0..d).map(|j| p.differentiate(j)).collect())
            .collect()
    }

    /// Jet-exact inverse of a near-identity map: the unique `Φ` with
    /// `jet(self ∘ Φ − Id, order) = 0`, found as the fixed point of
    /// `Φ ↦ Id − ψ∘Φ` where `ψ = self − Id`.
    pub fn invert_near_identity(&self, order: u32) -> Self {
        assert!(self.is_near_identity(), "map must be a near-identity");
        let dim = self.dimension();
        let psi = PolyMap {
            comps: self.nonlinear_part(),
        };
        let id = Self::identity(dim);
        let mut phi = id.clone();
        for _ in 0..=order {
            let correction = psi.compose(&phi, order);
            let next = PolyMap {
                comps: id
                    .comps
                    .iter()
                    .zip(correction.comps.iter())
                    .map(|(x, c)| x.sub(c))
                    .collect(),
            };
            if next == phi {
                break;
            }
            phi = next;
        }
        phi
    }

    pub fn jets_equal(&self, other: &PolyMap, order: u32) -> bool {
        self.dimension() == other.dimension()
            && self
                .comps
                .iter()
                .zip(other.comps.iter())
                .all(|(a, b)| a.jet(order) == b.jet(order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat_int, Monomial};

    #[test]
    fn inversion_of_shift_by_square() {
        // Ψ(x, y) = (x + x², y); the inverse series starts
        // x − x² + 2x³ − 5x⁴ (Catalan numbers with alternating signs).
        let dim = 2;
        let x2 = Polynomial::term(Monomial::new(vec![2, 0]), rat_int(1));
        let psi = PolyMap::near_identity(vec![x2, Polynomial::zero(dim)]);
        let phi = psi.invert_near_identity(4);
        let expect = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![1, 0]), rat_int(1)),
                (Monomial::new(vec![2, 0]), rat_int(-1)),
                (Monomial::new(vec![3, 0]), rat_int(2)),
                (Monomial::new(vec![4, 0]), rat_int(-5)),
            ],
        );
        assert_eq!(phi.component(0), &expect);
        // Ψ∘Φ = Id to order 4, both ways round
        assert!(psi.compose(&phi, 4).jets_equal(&PolyMap::identity(2), 4));
        assert!(phi.compose(&psi, 4).jets_equal(&PolyMap::identity(2), 4));
    }

    #[test]
    fn jacobian_of_identity() {
        let id = PolyMap::identity(3);
        let jac = id.jacobian();
        for (i, row) in jac.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(*e, Polynomial::one(3));
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }
}

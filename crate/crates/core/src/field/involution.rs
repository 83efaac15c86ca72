//! Polynomial involutions with half-dimensional fixed-point set.

use num_traits::Zero;

use super::map::PolyMap;
use super::FieldError;
use crate::polyalg::{rat_int, InvariantKind, Polynomial, RatMat, Rational};

/// A polynomial map `φ` with `φ∘φ = Id` (exactly up to the working order),
/// `φ(0) = 0`, and `dim Fix(Dφ(0)) = n` in ambient dimension `2n`.
#[derive(Clone, PartialEq, Debug)]
pub struct Involution {
    map: PolyMap,
    linearization: RatMat,
    working_order: u32,
}

impl Involution {
    /// Validate and wrap a polynomial involution, truncated at
    /// `working_order`.
    pub fn new(map: PolyMap, working_order: u32) -> Result<Self, FieldError> {
        let dim = map.dimension();
        if dim == 0 || dim % 2 != 0 {
            return Err(FieldError::OddDimension { dim });
        }
        if !map.fixes_origin() {
            return Err(FieldError::InvolutionMovesOrigin);
        }
        let m = map.linear_part();
        if !m.matmul(&m).is_identity() {
            return Err(FieldError::NotInvolution { order: 1 });
        }
        // Eigenvalues of an involutive matrix are ±1; the fixed space has
        // dimension n exactly when the trace vanishes.
        if !m.trace().is_zero() {
            return Err(FieldError::WrongFixedDimension);
        }
        let composed = map.compose(&map, working_order);
        if !composed.jets_equal(&PolyMap::identity(dim), working_order) {
            return Err(FieldError::NotInvolution {
                order: working_order,
            });
        }
        Ok(Involution {
            map,
            linearization: m,
            working_order,
        })
    }

    /// A linear involution from its matrix; exact at every order.
    pub fn linear(m: RatMat) -> Result<Self, FieldError> {
        Self::new(PolyMap::from_matrix(&m), 1).map(|mut phi| {
            phi.working_order = u32::MAX;
            phi
        })
    }

    /// The canonical reversing involution for each spectrum kind:
    /// `(x_j, y_j) ↦ (x_j, −y_j)` (elliptic) or `(x_j, y_j) ↦ (y_j, x_j)`
    /// (saddle).
    pub fn canonical(kind: InvariantKind, n: usize) -> Self {
        let dim = 2 * n;
        let mut m = RatMat::zeros(dim, dim);
        for j in 0..n {
            match kind {
                InvariantKind::Elliptic => {
                    m.set(2 * j, 2 * j, rat_int(1));
                    m.set(2 * j + 1, 2 * j + 1, rat_int(-1));
                }
                InvariantKind::Saddle => {
                    m.set(2 * j, 2 * j + 1, rat_int(1));
                    m.set(2 * j + 1, 2 * j, rat_int(1));
                }
            }
        }
        Self::linear(m).expect("canonical matrices are involutions")
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn components(&self) -> &[Polynomial<Rational>] {
        self.map.components()
    }

    /// `Dφ(0)`.
    pub fn linearization(&self) -> &RatMat {
        &self.linearization
    }

    pub fn dimension(&self) -> usize {
        self.map.dimension()
    }

    pub fn working_order(&self) -> u32 {
        self.working_order
    }

    pub fn is_linear(&self) -> bool {
        self.map == PolyMap::from_matrix(&self.linearization)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Monomial;

    #[test]
    fn canonical_involutions_validate() {
        let e = Involution::canonical(InvariantKind::Elliptic, 2);
        assert_eq!(e.dimension(), 4);
        assert!(e.is_linear());
        let s = Involution::canonical(InvariantKind::Saddle, 1);
        assert_eq!(s.linearization().get(0, 1), &rat_int(1));
    }

    #[test]
    fn nonlinear_involution_accepted() {
        // φ(x, y) = (x, −y + x²) satisfies φ∘φ = Id exactly.
        let x = Polynomial::<Rational>::variable(2, 0);
        let y = Polynomial::<Rational>::variable(2, 1);
        let x2 = Polynomial::term(Monomial::new(vec![2, 0]), rat_int(1));
        let map = PolyMap::from_components(vec![x, y.negate().add(&x2)]);
        let phi = Involution::new(map, 8).unwrap();
        assert!(!phi.is_linear());
    }

    #[test]
    fn non_involution_rejected() {
        // (x, −y + y²) fails φ∘φ = Id at degree 2.
        let x = Polynomial::<Rational>::variable(2, 0);
        let y = Polynomial::<Rational>::variable(2, 1);
        let y2 = Polynomial::term(Monomial::new(vec![0, 2]), rat_int(1));
        let map = PolyMap::from_components(vec![x, y.negate().add(&y2)]);
        assert!(Involution::new(map, 4).is_err());
    }

    #[test]
    fn full_fixed_space_rejected() {
        // The identity is an involution but fixes everything.
        let map = PolyMap::identity(2);
        assert!(matches!(
            Involution::new(map, 4),
            Err(FieldError::WrongFixedDimension)
        ));
    }
}

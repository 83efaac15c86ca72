//! Sparse multivariate polynomials over an exact scalar field.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::coeff::{rational_to_f64, Rational, Scalar};
use super::monomial::Monomial;
use super::PolyError;

/// Sparse multivariate polynomial. Zero coefficients are never stored, so
/// the zero polynomial has an empty term map and equality is structural.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<C: Scalar> {
    dim: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        let mut p = Self::zero(dim);
        p.insert_add(Monomial::one(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, C::one())
    }

    /// The variable `x_i` as a polynomial.
    pub fn variable(dim: usize, i: usize) -> Self {
        let mut p = Self::zero(dim);
        p.insert_add(Monomial::unit(dim, i), C::one());
        p
    }

    /// Single term `c · m`.
    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.dimension());
        p.insert_add(m, c);
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dimension(), dim, "monomial dimension mismatch");
            p.insert_add(m, c);
        }
        p
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.dim))
    }

    /// Largest total degree among stored terms; 0 for the zero polynomial.
    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    pub(crate) fn insert_add(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), -c.clone());
        }
        out
    }

    pub fn negate(&self) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_impl(other, None)
    }

    /// Product with all terms of total degree above `order` discarded.
    pub fn mul_trunc(&self, other: &Self, order: u32) -> Self {
        self.mul_impl(other, Some(order))
    }

    fn mul_impl(&self, other: &Self, order: Option<u32>) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (m1, c1) in &self.terms {
            let d1 = m1.total_degree();
            if let Some(cap) = order {
                if d1 > cap {
                    continue;
                }
            }
            for (m2, c2) in &other.terms {
                if let Some(cap) = order {
                    if d1 + m2.total_degree() > cap {
                        continue;
                    }
                }
                out.insert_add(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `self^e`, truncated at `order` if given.
    pub fn pow_trunc(&self, e: u32, order: Option<u32>) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..e {
            out = out.mul_impl(self, order);
        }
        out
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Self {
        assert!(var < self.dim, "variable index out of bounds");
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some(m2) = m.drop_var(var) {
                let e = C::from_rational(&Rational::from_integer(m.exponent(var).into()));
                out.insert_add(m2, c.clone() * e);
            }
        }
        out
    }

    /// Exact composition `p(images[0], …, images[dim-1])`.
    pub fn substitute(&self, images: &[Polynomial<C>]) -> Result<Self, PolyError> {
        self.substitute_impl(images, None)
    }

    /// Composition truncated at total degree `order`.
    pub fn substitute_trunc(&self, images: &[Polynomial<C>], order: u32) -> Result<Self, PolyError> {
        self.substitute_impl(images, Some(order))
    }

    fn substitute_impl(&self, images: &[Polynomial<C>], order: Option<u32>) -> Result<Self, PolyError> {
        if images.len() != self.dim {
            return Err(PolyError::ArityMismatch {
                expected: self.dim,
                got: images.len(),
            });
        }
        let out_dim = if let Some(img) = images.first() {
            let d = img.dimension();
            if images.iter().any(|q| q.dimension() != d) {
                return Err(PolyError::ArityMismatch {
                    expected: self.dim,
                    got: images.len(),
                });
            }
            d
        } else {
            return Ok(Self::zero(0));
        };

        // powers[i][e] = images[i]^e, filled lazily
        let mut powers: Vec<Vec<Polynomial<C>>> =
            images.iter().map(|_| vec![Polynomial::one(out_dim)]).collect();
        let mut out = Self::zero(out_dim);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(out_dim, c.clone());
            for i in 0..self.dim {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = match order {
                        Some(cap) => powers[i].last().unwrap().mul_trunc(&images[i], cap),
                        None => powers[i].last().unwrap().mul(&images[i]),
                    };
                    powers[i].push(next);
                }
                acc = match order {
                    Some(cap) => acc.mul_trunc(&powers[i][e], cap),
                    None => acc.mul(&powers[i][e]),
                };
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Exact division by the variable `var`, or `None` when some term does
    /// not contain it.
    pub fn divide_by_variable(&self, var: usize) -> Option<Self> {
        assert!(var < self.dim, "variable index out of bounds");
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.insert_add(m.drop_var(var)?, c.clone());
        }
        Some(out)
    }

    /// Truncation to total degree at most `k`.
    pub fn jet(&self, k: u32) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.dim, "evaluation arity mismatch");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            out.insert_add(m.clone(), f(c));
        }
        out
    }
}

impl Polynomial<Rational> {
    /// Floating-point evaluation; used only by the numerical harness.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.dim);
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                t *= point[i].powi(e as i32);
            }
            acc += t;
        }
        acc
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        Polynomial::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        Polynomial::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        Polynomial::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::coeff::{rat, rat_int};

    fn x() -> Polynomial<Rational> {
        Polynomial::variable(2, 0)
    }

    fn y() -> Polynomial<Rational> {
        Polynomial::variable(2, 1)
    }

    #[test]
    fn difference_of_squares() {
        let p = &x() + &y();
        let q = &x() - &y();
        let expect = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(&p * &q, expect);
    }

    #[test]
    fn multiplicative_identity() {
        let p = &(&x() * &x()) + &y().scale(&rat(5, 3));
        assert_eq!(Polynomial::one(2).mul(&p), p);
    }

    #[test]
    fn rational_coefficient_product() {
        // (1/2)x · (2/3)y = (1/3)xy
        let p = x().scale(&rat(1, 2));
        let q = y().scale(&rat(2, 3));
        let mut expect = Polynomial::zero(2);
        expect.insert_add(Monomial::new(vec![1, 1]), rat(1, 3));
        assert_eq!(&p * &q, expect);
    }

    #[test]
    fn derivative_basics() {
        // ∂x(x²y) = 2xy
        let p = Polynomial::term(Monomial::new(vec![2, 1]), rat_int(1));
        let expect = Polynomial::term(Monomial::new(vec![1, 1]), rat_int(2));
        assert_eq!(p.differentiate(0), expect);
        // ∂y(constant) = 0
        assert!(Polynomial::<Rational>::constant(2, rat_int(7))
            .differentiate(1)
            .is_zero());
    }

    #[test]
    fn derivative_of_radius_squared_square() {
        // ∂x((x²+y²)²) = 4x³ + 4xy², computed independently by expanding
        // (x²+y²)² = x⁴ + 2x²y² + y⁴ and differentiating termwise.
        let delta = &(&x() * &x()) + &(&y() * &y());
        let p = delta.mul(&delta);
        let expect = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![3, 0]), rat_int(4)),
                (Monomial::new(vec![1, 2]), rat_int(4)),
            ],
        );
        assert_eq!(p.differentiate(0), expect);
    }

    #[test]
    fn substitution_binomial() {
        // x² with x → x+y gives x² + 2xy + y²
        let p = &x() * &x();
        let images = [&x() + &y(), y()];
        let out = p.substitute(&images).unwrap();
        let expect = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), rat_int(1)),
                (Monomial::new(vec![1, 1]), rat_int(2)),
                (Monomial::new(vec![0, 2]), rat_int(1)),
            ],
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn substitution_identity_and_reflection() {
        let p = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), rat_int(1)),
                (Monomial::new(vec![0, 2]), rat_int(1)),
            ],
        );
        let id = [x(), y()];
        assert_eq!(p.substitute(&id).unwrap(), p);
        // x² + y² is invariant under y → −y
        let refl = [x(), y().negate()];
        assert_eq!(p.substitute(&refl).unwrap(), p);
    }

    #[test]
    fn substitution_arity_error() {
        let p = x();
        assert!(matches!(
            p.substitute(&[]),
            Err(PolyError::ArityMismatch { expected: 2, got: 0 })
        ));
    }

    #[test]
    fn jet_truncation() {
        // jet(x + x³, 2) = x
        let p = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![1, 0]), rat_int(1)),
                (Monomial::new(vec![3, 0]), rat_int(1)),
            ],
        );
        assert_eq!(p.jet(2), x());
        assert_eq!(p.jet(p.max_degree()), p);
        // jet((1+x)⁴, 1) = 1 + 4x, from the binomial expansion
        let q = Polynomial::one(2).add(&x()).pow_trunc(4, None);
        let expect = Polynomial::from_terms(
            2,
            [
                (Monomial::one(2), rat_int(1)),
                (Monomial::new(vec![1, 0]), rat_int(4)),
            ],
        );
        assert_eq!(q.jet(1), expect);
    }

    #[test]
    fn zero_polynomial_is_canonical() {
        let p = x().sub(&x());
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert_eq!(p, Polynomial::zero(2));
    }
}

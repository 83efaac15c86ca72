//! Polynomials in the planar invariants `Δ_j = x_j² + y_j²` (elliptic) and
//! `Γ_j = x_j y_j` (saddle), and exact rewriting between the invariant and
//! ambient representations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::coeff::{rat_int, Rational};
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::PolyError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InvariantKind {
    /// `Δ_j = x_j² + y_j²`
    Elliptic,
    /// `Γ_j = x_j y_j`
    Saddle,
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantKind::Elliptic => write!(f, "elliptic"),
            InvariantKind::Saddle => write!(f, "saddle"),
        }
    }
}

impl InvariantKind {
    /// The `j`-th invariant (0-based) expanded in the `2n` ambient variables.
    pub fn generator(self, n: usize, j: usize) -> Polynomial<Rational> {
        assert!(j < n);
        let dim = 2 * n;
        let mut p = Polynomial::zero(dim);
        match self {
            InvariantKind::Elliptic => {
                let mut x2 = vec![0u32; dim];
                x2[2 * j] = 2;
                let mut y2 = vec![0u32; dim];
                y2[2 * j + 1] = 2;
                p.insert_add(Monomial::new(x2), rat_int(1));
                p.insert_add(Monomial::new(y2), rat_int(1));
            }
            InvariantKind::Saddle => {
                let mut xy = vec![0u32; dim];
                xy[2 * j] = 1;
                xy[2 * j + 1] = 1;
                p.insert_add(Monomial::new(xy), rat_int(1));
            }
        }
        p
    }
}

/// A polynomial in the `n` planar invariants, stored as a map from the
/// multi-index `I` (length `n`) to its rational coefficient. Expanding
/// through the generators reproduces an ambient polynomial of degree `2|I|`
/// per term.
#[derive(Clone, PartialEq, Debug)]
pub struct InvariantPolynomial {
    n: usize,
    kind: InvariantKind,
    terms: BTreeMap<Monomial, Rational>,
}

impl InvariantPolynomial {
    pub fn zero(n: usize, kind: InvariantKind) -> Self {
        InvariantPolynomial {
            n,
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        kind: InvariantKind,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(n, kind);
        for (m, c) in terms {
            assert_eq!(m.dimension(), n, "multi-index length mismatch");
            p.insert_add(m, c);
        }
        p
    }

    pub fn insert_add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> InvariantKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest `|I|` among stored terms; 0 when zero.
    pub fn max_weight(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Terms with `|I|` exactly `w`.
    pub fn weight_part(&self, w: u32) -> Self {
        InvariantPolynomial {
            n: self.n,
            kind: self.kind,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        assert_eq!(self.kind, other.kind);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.kind);
        }
        InvariantPolynomial {
            n: self.n,
            kind: self.kind,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Expansion into the `2n` ambient variables.
    pub fn expand(&self) -> Polynomial<Rational> {
        let dim = 2 * self.n;
        let mut out = Polynomial::zero(dim);
        for (idx, c) in &self.terms {
            let mut t = Polynomial::constant(dim, c.clone());
            for j in 0..self.n {
                let g = self.kind.generator(self.n, j);
                t = t.mul(&g.pow_trunc(idx.exponent(j), None));
            }
            out = out.add(&t);
        }
        out
    }

    /// Formal antiderivative in the single invariant variable (`n = 1`):
    /// `c·u^k ↦ c·u^{k+1}/(k+1)`, vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        assert_eq!(self.n, 1, "antiderivative is defined for n = 1 only");
        let mut out = Self::zero(1, self.kind);
        for (m, c) in &self.terms {
            let k = m.exponent(0);
            out.insert_add(
                Monomial::new(vec![k + 1]),
                c / rat_int((k + 1) as i64),
            );
        }
        out
    }
}

/// Rewrite an ambient polynomial exactly as a polynomial in the planar
/// invariants. Fails with [`PolyError::NotInvariant`] when no such rewriting
/// exists, which signals a field outside the normal-form class.
pub fn to_invariant(
    p: &Polynomial<Rational>,
    kind: InvariantKind,
) -> Result<InvariantPolynomial, PolyError> {
    let dim = p.dimension();
    assert!(dim % 2 == 0, "ambient dimension must be even");
    let n = dim / 2;
    match kind {
        InvariantKind::Saddle => {
            // Γ^I is the single monomial ∏ (x_j y_j)^{i_j}.
            let mut out = InvariantPolynomial::zero(n, kind);
            for (m, c) in p.iter() {
                let mut idx = vec![0u32; n];
                for j in 0..n {
                    let ex = m.exponent(2 * j);
                    let ey = m.exponent(2 * j + 1);
                    if ex != ey {
                        return Err(PolyError::NotInvariant {
                            kind: kind.to_string(),
                            monomial: format!("{:?}", m.exponents()),
                        });
                    }
                    idx[j] = ex;
                }
                out.insert_add(Monomial::new(idx), c.clone());
            }
            Ok(out)
        }
        InvariantKind::Elliptic => {
            // Each Δ^I has exactly one pure-x monomial, x^{2I}, with unit
            // coefficient; peeling those off terminates and certifies the
            // rewriting by exhaustion of the remainder.
            let mut rest = p.clone();
            let mut out = InvariantPolynomial::zero(n, kind);
            loop {
                if rest.is_zero() {
                    return Ok(out);
                }
                let pure = rest.iter().find_map(|(m, c)| {
                    let pure_x = (0..n).all(|j| m.exponent(2 * j + 1) == 0);
                    if pure_x {
                        Some((m.clone(), c.clone()))
                    } else {
                        None
                    }
                });
                let Some((m, c)) = pure else {
                    let (m, _) = rest.iter().next().unwrap();
                    return Err(PolyError::NotInvariant {
                        kind: kind.to_string(),
                        monomial: format!("{:?}", m.exponents()),
                    });
                };
                let mut idx = vec![0u32; n];
                for j in 0..n {
                    let e = m.exponent(2 * j);
                    if e % 2 != 0 {
                        return Err(PolyError::NotInvariant {
                            kind: kind.to_string(),
                            monomial: format!("{:?}", m.exponents()),
                        });
                    }
                    idx[j] = e / 2;
                }
                let idx = Monomial::new(idx);
                let single = InvariantPolynomial::from_terms(n, kind, [(idx.clone(), c.clone())]);
                rest = rest.sub(&single.expand());
                out.insert_add(idx, c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::coeff::rat_int;

    #[test]
    fn simple_elliptic_extraction() {
        // x1² + y1² + 2(x2² + y2²) = Δ1 + 2Δ2
        let n = 2;
        let d1 = InvariantKind::Elliptic.generator(n, 0);
        let d2 = InvariantKind::Elliptic.generator(n, 1);
        let p = d1.add(&d2.scale(&rat_int(2)));
        let inv = to_invariant(&p, InvariantKind::Elliptic).unwrap();
        assert_eq!(inv.coefficient(&Monomial::new(vec![1, 0])), rat_int(1));
        assert_eq!(inv.coefficient(&Monomial::new(vec![0, 1])), rat_int(2));
        assert_eq!(inv.expand(), p);
    }

    #[test]
    fn non_invariant_is_rejected() {
        // x² − y² is not a polynomial in Δ = x² + y²
        let p = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), rat_int(1)),
                (Monomial::new(vec![0, 2]), rat_int(-1)),
            ],
        );
        assert!(matches!(
            to_invariant(&p, InvariantKind::Elliptic),
            Err(PolyError::NotInvariant { .. })
        ));
    }

    #[test]
    fn saddle_product_extraction() {
        // x1 y1 x2 y2 = Γ1 Γ2
        let p = Polynomial::term(Monomial::new(vec![1, 1, 1, 1]), rat_int(1));
        let inv = to_invariant(&p, InvariantKind::Saddle).unwrap();
        assert_eq!(inv.coefficient(&Monomial::new(vec![1, 1])), rat_int(1));
        assert_eq!(inv.expand(), p);
    }

    #[test]
    fn antiderivative_of_linear() {
        let f = InvariantPolynomial::from_terms(
            1,
            InvariantKind::Elliptic,
            [(Monomial::new(vec![1]), rat_int(1))],
        );
        let int = f.antiderivative();
        assert_eq!(int.coefficient(&Monomial::new(vec![2])), rat(1, 2));
        assert!(int.coefficient(&Monomial::new(vec![1])).is_zero());
    }

    use crate::polyalg::coeff::rat;
}

//! Exponent vectors under the graded lexicographic order.

use std::cmp::Ordering;

/// An exponent vector. Serves both as a monomial in the ambient variables
/// `x1, y1, …, xn, yn` (length `2n`) and as a multi-index `I` over the `n`
/// planar invariants.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial (all exponents zero).
    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    /// The `i`-th variable to the first power.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable index {i} out of bounds for dimension {dim}");
        let mut exps = vec![0; dim];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn dimension(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.dimension(), other.dimension(), "monomial dimension mismatch");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Increment the exponent of variable `i` by one.
    pub fn bump(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps }
    }

    /// Decrement the exponent of variable `i`, or `None` if it is zero.
    pub fn drop_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial { exps })
    }
}

// Graded lexicographic order: total degree first, ties broken by the
// exponent vector with the earliest variable dominating.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree exactly `degree` in `dim` variables, in
/// ascending graded-lex order.
pub fn monomials_of_degree(dim: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; dim];
    fill(&mut out, &mut current, 0, degree);
    out.sort();
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Monomial::new(vec![1, 0]);
        let y = Monomial::new(vec![0, 1]);
        let xy = Monomial::new(vec![1, 1]);
        let x2 = Monomial::new(vec![2, 0]);
        assert!(y < x, "ties broken with the earliest variable dominating");
        assert!(x < xy);
        assert!(xy < x2);
    }

    #[test]
    fn degree_enumeration() {
        let ms = monomials_of_degree(2, 2);
        assert_eq!(ms.len(), 3);
        assert_eq!(ms[0].exponents(), &[0, 2]);
        assert_eq!(ms[2].exponents(), &[2, 0]);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
    }

    #[test]
    fn bump_and_drop() {
        let m = Monomial::new(vec![2, 0, 1]);
        assert_eq!(m.bump(1).exponents(), &[2, 1, 1]);
        assert_eq!(m.drop_var(0).unwrap().exponents(), &[1, 0, 1]);
        assert!(m.drop_var(1).is_none());
    }
}

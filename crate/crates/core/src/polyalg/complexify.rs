//! Exact passage between the real ambient coordinates `(x_j, y_j)` and the
//! complexified coordinates `(z_j, z̄_j) = (x_j + i y_j, x_j − i y_j)`.
//!
//! Complex variables are interleaved the same way as the real ones: variable
//! `2j` is `z_{j+1}` and variable `2j+1` is `z̄_{j+1}`.

use num_traits::Zero;

use super::coeff::{gauss, gauss_re, rat, GaussianRational, Rational};
use super::poly::Polynomial;
use super::PolyError;

/// Embed a real polynomial into the Gaussian-rational coefficient domain
/// without changing variables. This is the explicit promotion required to
/// mix the two domains.
pub fn promote(p: &Polynomial<Rational>) -> Polynomial<GaussianRational> {
    p.map_coefficients(gauss_re)
}

/// Express a real polynomial in the complexified variables:
/// `x_j = (z_j + z̄_j)/2`, `y_j = −(i/2)(z_j − z̄_j)`.
pub fn complexify(p: &Polynomial<Rational>) -> Polynomial<GaussianRational> {
    let dim = p.dimension();
    assert!(dim % 2 == 0, "ambient dimension must be even");
    let images: Vec<Polynomial<GaussianRational>> = (0..dim)
        .map(|v| {
            let j = v / 2;
            let z = Polynomial::variable(dim, 2 * j);
            let zbar = Polynomial::variable(dim, 2 * j + 1);
            if v % 2 == 0 {
                z.add(&zbar).scale(&gauss_re(rat(1, 2)))
            } else {
                z.sub(&zbar).scale(&gauss(Rational::zero(), rat(-1, 2)))
            }
        })
        .collect();
    promote(p).substitute(&images).expect("arity is fixed by construction")
}

/// Express a complexified polynomial back in the real variables:
/// `z_j = x_j + i y_j`, `z̄_j = x_j − i y_j`. Fails when the result has a
/// nonzero imaginary part, i.e. when the input was not the complexification
/// of a real polynomial.
pub fn realify(q: &Polynomial<GaussianRational>) -> Result<Polynomial<Rational>, PolyError> {
    let dim = q.dimension();
    assert!(dim % 2 == 0, "ambient dimension must be even");
    let images: Vec<Polynomial<GaussianRational>> = (0..dim)
        .map(|v| {
            let j = v / 2;
            let x = Polynomial::<GaussianRational>::variable(dim, 2 * j);
            let y = Polynomial::<GaussianRational>::variable(dim, 2 * j + 1);
            if v % 2 == 0 {
                x.add(&y.scale(&gauss(Rational::zero(), rat(1, 1))))
            } else {
                x.add(&y.scale(&gauss(Rational::zero(), rat(-1, 1))))
            }
        })
        .collect();
    let real_form = q.substitute(&images).expect("arity is fixed by construction");
    let mut out = Polynomial::zero(dim);
    for (m, c) in real_form.iter() {
        if !c.im.is_zero() {
            return Err(PolyError::NotReal);
        }
        out.insert_add(m.clone(), c.re.clone());
    }
    Ok(out)
}

/// Complexify the components of a vector field: the planar pair
/// `(ẋ_j, ẏ_j) = (P_j, Q_j)` becomes `ż_j = P_j + i Q_j` and
/// `ż̄_j = P_j − i Q_j`, each expressed in the `(z, z̄)` variables.
pub fn complexify_field(comps: &[Polynomial<Rational>]) -> Vec<Polynomial<GaussianRational>> {
    let dim = comps.len();
    assert!(dim % 2 == 0);
    let i = gauss(Rational::zero(), rat(1, 1));
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim / 2 {
        let p = complexify(&comps[2 * j]);
        let q = complexify(&comps[2 * j + 1]);
        out.push(p.add(&q.scale(&i)));
        out.push(p.sub(&q.scale(&i)));
    }
    out
}

/// Inverse of [`complexify_field`].
pub fn realify_field(
    comps: &[Polynomial<GaussianRational>],
) -> Result<Vec<Polynomial<Rational>>, PolyError> {
    let dim = comps.len();
    assert!(dim % 2 == 0);
    let half = gauss_re(rat(1, 2));
    let minus_i_half = gauss(Rational::zero(), rat(-1, 2));
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim / 2 {
        let u = &comps[2 * j];
        let ubar = &comps[2 * j + 1];
        // P = (u + ū)/2, Q = (u − ū)/(2i)
        out.push(realify(&u.add(ubar).scale(&half))?);
        out.push(realify(&u.sub(ubar).scale(&minus_i_half))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::coeff::rat_int;
    use crate::polyalg::monomial::Monomial;

    #[test]
    fn round_trip_is_identity() {
        let p = Polynomial::from_terms(
            4,
            [
                (Monomial::new(vec![2, 0, 0, 0]), rat(3, 2)),
                (Monomial::new(vec![0, 1, 1, 0]), rat_int(-2)),
                (Monomial::new(vec![1, 1, 0, 3]), rat(5, 7)),
            ],
        );
        assert_eq!(realify(&complexify(&p)).unwrap(), p);
    }

    #[test]
    fn radius_squared_is_z_zbar() {
        // x² + y² = z z̄
        let p = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), rat_int(1)),
                (Monomial::new(vec![0, 2]), rat_int(1)),
            ],
        );
        let q = complexify(&p);
        assert_eq!(q.num_terms(), 1);
        assert_eq!(
            q.coefficient(&Monomial::new(vec![1, 1])),
            gauss_re(rat_int(1))
        );
    }

    #[test]
    fn rotation_field_is_diagonal_in_z() {
        // (−y, x) becomes ż = i z, ż̄ = −i z̄
        let my = Polynomial::<Rational>::variable(2, 1).negate();
        let x = Polynomial::<Rational>::variable(2, 0);
        let complexified = complexify_field(&[my, x]);
        assert_eq!(
            complexified[0].coefficient(&Monomial::new(vec![1, 0])),
            gauss(rat_int(0), rat_int(1))
        );
        assert_eq!(complexified[0].num_terms(), 1);
        assert_eq!(
            complexified[1].coefficient(&Monomial::new(vec![0, 1])),
            gauss(rat_int(0), rat_int(-1))
        );
        let back = realify_field(&complexified).unwrap();
        assert_eq!(back[0], Polynomial::<Rational>::variable(2, 1).negate());
        assert_eq!(back[1], Polynomial::<Rational>::variable(2, 0));
    }
}

//! Canonical text form for rational polynomials: one term per line,
//! `±p/q x1^a1 y1^b1 …`, leading term first. This is the representation
//! embedded in certificate files, so it must round-trip bit-exactly.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::coeff::Rational;
use super::monomial::Monomial;
use super::poly::Polynomial;

/// Variable name for index `i` in an even-dimensional ambient space:
/// `x1, y1, x2, y2, …`.
pub fn var_name(i: usize) -> String {
    let pair = i / 2 + 1;
    if i % 2 == 0 {
        format!("x{pair}")
    } else {
        format!("y{pair}")
    }
}

fn parse_var(tok: &str) -> Result<(usize, u32), String> {
    let (name, exp) = tok
        .split_once('^')
        .ok_or_else(|| format!("malformed variable token `{tok}`"))?;
    let exp: u32 = exp
        .parse()
        .map_err(|_| format!("malformed exponent in `{tok}`"))?;
    let (kind, idx) = name.split_at(1);
    let pair: usize = idx
        .parse()
        .map_err(|_| format!("malformed variable name `{name}`"))?;
    if pair == 0 {
        return Err(format!("variable indices are 1-based: `{name}`"));
    }
    let var = match kind {
        "x" => 2 * (pair - 1),
        "y" => 2 * (pair - 1) + 1,
        _ => return Err(format!("unknown variable `{name}`")),
    };
    Ok((var, exp))
}

/// Canonical form of a rational coefficient: explicit sign, explicit
/// denominator.
pub fn format_rational(r: &Rational) -> String {
    let sign = if r.numer() < &BigInt::zero() { "-" } else { "+" };
    format!("{}{}/{}", sign, r.numer().abs(), r.denom())
}

pub fn parse_rational(tok: &str) -> Result<Rational, String> {
    let body = tok.strip_prefix('+').unwrap_or(tok);
    body.parse::<Rational>()
        .map_err(|e| format!("malformed rational `{tok}`: {e}"))
}

pub fn format_term(m: &Monomial, c: &Rational) -> String {
    let mut s = format_rational(c);
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            s.push(' ');
            s.push_str(&var_name(i));
            s.push('^');
            s.push_str(&e.to_string());
        }
    }
    s
}

/// One line per term, leading (largest) monomial first. The zero polynomial
/// produces no lines.
pub fn format_poly_lines(p: &Polynomial<Rational>) -> Vec<String> {
    p.iter()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(m, c)| format_term(m, c))
        .collect()
}

pub fn parse_term(dim: usize, line: &str) -> Result<(Monomial, Rational), String> {
    let mut toks = line.split_whitespace();
    let coeff_tok = toks.next().ok_or("empty term")?;
    let coeff = parse_rational(coeff_tok)?;
    let mut exps = vec![0u32; dim];
    for tok in toks {
        let (var, e) = parse_var(tok)?;
        if var >= dim {
            return Err(format!(
                "variable `{}` exceeds dimension {dim}",
                var_name(var)
            ));
        }
        exps[var] += e;
    }
    Ok((Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::coeff::{rat, rat_int};

    #[test]
    fn canonical_term_round_trip() {
        let m = Monomial::new(vec![2, 0, 0, 1]);
        let c = rat(-3, 2);
        let s = format_term(&m, &c);
        assert_eq!(s, "-3/2 x1^2 y2^1");
        let (m2, c2) = parse_term(4, &s).unwrap();
        assert_eq!(m2, m);
        assert_eq!(c2, c);
    }

    #[test]
    fn leading_term_first() {
        let p = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![0, 1]), rat_int(1)),
                (Monomial::new(vec![3, 0]), rat(1, 3)),
            ],
        );
        let lines = format_poly_lines(&p);
        assert_eq!(lines, vec!["+1/3 x1^3".to_string(), "+1/1 y1^1".to_string()]);
    }

    #[test]
    fn constant_term_has_no_variables() {
        let p = Polynomial::constant(2, rat(5, 4));
        assert_eq!(format_poly_lines(&p), vec!["+5/4".to_string()]);
        let (m, c) = parse_term(2, "+5/4").unwrap();
        assert!(m.is_constant());
        assert_eq!(c, rat(5, 4));
    }
}

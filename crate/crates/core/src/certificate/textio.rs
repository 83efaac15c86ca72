//! Line-oriented certificate text format, version `reviham-format 1`.
//!
//! Every polynomial appears as a `poly: <label> <nterms>` header followed
//! by exactly `nterms` canonical term lines (leading term first), so the
//! whole document round-trips byte for byte.

use num_traits::One;
use std::fmt::Write as _;

use thiserror::Error;

use super::{CertHamStep, Certificate, D4Data, HamPart};
use crate::field::{Involution, PolyMap, VectorField};
use crate::hamiltonize::HamiltonizeMode;
use crate::polyalg::text::{format_poly_lines, format_rational, parse_rational, parse_term};
use crate::polyalg::{InvariantKind, Polynomial, Rational};

pub const FORMAT_LINE: &str = "reviham-format 1";

#[derive(Debug, Error)]
#[error("parse error at line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

// ── writer ──────────────────────────────────────────────────────────────

fn push_poly(out: &mut String, label: &str, p: &Polynomial<Rational>) {
    let lines = format_poly_lines(p);
    writeln!(out, "poly: {} {}", label, lines.len()).unwrap();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
}

fn push_components(out: &mut String, comps: &[Polynomial<Rational>]) {
    for (i, p) in comps.iter().enumerate() {
        push_poly(out, &i.to_string(), p);
    }
}

fn push_involution(out: &mut String, section: &str, phi: &Involution) {
    writeln!(out, "section: {section}").unwrap();
    if phi.working_order() == u32::MAX {
        writeln!(out, "inv-order: max").unwrap();
    } else {
        writeln!(out, "inv-order: {}", phi.working_order()).unwrap();
    }
    push_components(out, phi.components());
}

pub fn write_certificate(c: &Certificate) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_LINE);
    out.push('\n');
    writeln!(out, "doc-type: certificate").unwrap();
    writeln!(out, "order: {}", c.order).unwrap();
    writeln!(out, "dimension: {}", c.dimension()).unwrap();
    writeln!(out, "kind: {}", c.input.kind()).unwrap();
    let freqs: Vec<String> = c
        .input
        .frequencies()
        .iter()
        .map(format_rational)
        .collect();
    writeln!(out, "frequencies: {}", freqs.join(" ")).unwrap();
    match &c.ham {
        None => writeln!(out, "mode: normal-form").unwrap(),
        Some(h) => {
            writeln!(out, "mode: {}", h.mode).unwrap();
            writeln!(out, "genericity: {}", format_rational(&h.genericity)).unwrap();
        }
    }
    if let Some(d4) = &c.d4 {
        writeln!(out, "d4-ratio: {} {}", d4.r1, d4.r2).unwrap();
    }

    writeln!(out, "section: input-field").unwrap();
    push_components(&mut out, c.input.components());
    push_involution(&mut out, "involution", &c.involution);
    if let Some(d4) = &c.d4 {
        push_involution(&mut out, "involution-g2", &d4.g2);
    }
    for (i, step) in c.pd_steps.iter().enumerate() {
        writeln!(out, "section: pd-step {i}").unwrap();
        push_components(&mut out, step);
    }
    writeln!(out, "section: normal-form").unwrap();
    push_components(&mut out, c.normal_form.components());
    writeln!(out, "section: residual-pd").unwrap();
    push_components(&mut out, &c.pd_residual);

    if let Some(h) = &c.ham {
        for step in &h.steps {
            writeln!(out, "section: ham-step {}", step.k).unwrap();
            for (i, p) in step.psi.iter().enumerate() {
                push_poly(&mut out, &format!("psi{i}"), p);
            }
            push_poly(&mut out, "theta", &step.theta);
        }
        writeln!(out, "section: output-field").unwrap();
        push_components(&mut out, h.output.components());
        writeln!(out, "section: hamiltonian").unwrap();
        push_poly(&mut out, "h", &h.hamiltonian);
        writeln!(out, "section: reparametrization").unwrap();
        push_poly(&mut out, "rho", &h.rho_global);
        for (order, comps) in &h.residuals {
            writeln!(out, "section: residual-ham {order}").unwrap();
            push_components(&mut out, comps);
        }
    }
    writeln!(out, "section: end").unwrap();
    out
}

// ── parser ──────────────────────────────────────────────────────────────

struct Reader<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn lineno(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<&'a str> {
        let l = self.peek();
        if l.is_some() {
            self.pos += 1;
        }
        l
    }

    fn expect_kv(&mut self, key: &str) -> Result<&'a str, ParseError> {
        let n = self.lineno();
        let line = self.next().ok_or_else(|| err(n, "unexpected end of file"))?;
        match line.strip_prefix(key) {
            Some(rest) => Ok(rest.trim()),
            None => Err(err(n, format!("expected `{key} …`, found `{line}`"))),
        }
    }

    /// Read a `poly: <label> <nterms>` block.
    fn read_poly(&mut self, dim: usize, want_label: &str) -> Result<Polynomial<Rational>, ParseError> {
        let n = self.lineno();
        let header = self.next().ok_or_else(|| err(n, "unexpected end of file"))?;
        let rest = header
            .strip_prefix("poly: ")
            .ok_or_else(|| err(n, format!("expected `poly: {want_label} …`, found `{header}`")))?;
        let mut toks = rest.split_whitespace();
        let label = toks.next().ok_or_else(|| err(n, "missing poly label"))?;
        if label != want_label {
            return Err(err(n, format!("expected poly `{want_label}`, found `{label}`")));
        }
        let count: usize = toks
            .next()
            .ok_or_else(|| err(n, "missing term count"))?
            .parse()
            .map_err(|_| err(n, "malformed term count"))?;
        let mut p = Polynomial::zero(dim);
        for _ in 0..count {
            let ln = self.lineno();
            let line = self.next().ok_or_else(|| err(ln, "unexpected end of file"))?;
            let (m, c) = parse_term(dim, line).map_err(|e| err(ln, e))?;
            p.insert_add(m, c);
        }
        Ok(p)
    }

    fn read_components(&mut self, dim: usize) -> Result<Vec<Polynomial<Rational>>, ParseError> {
        (0..dim)
            .map(|i| self.read_poly(dim, &i.to_string()))
            .collect()
    }
}

fn parse_involution(
    r: &mut Reader,
    dim: usize,
) -> Result<Involution, ParseError> {
    let n = r.lineno();
    let order_tok = r.expect_kv("inv-order:")?;
    let working_order = if order_tok == "max" {
        u32::MAX
    } else {
        order_tok
            .parse()
            .map_err(|_| err(n, "malformed involution order"))?
    };
    let comps = r.read_components(dim)?;
    let map = PolyMap::from_components(comps);
    if working_order == u32::MAX {
        let lin = Involution::linear(map.linear_part()).map_err(|e| err(n, e.to_string()))?;
        if lin.map() != &map {
            return Err(err(n, "involution marked exact must be linear"));
        }
        Ok(lin)
    } else {
        Involution::new(map, working_order).map_err(|e| err(n, e.to_string()))
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let mut r = Reader::new(text);
    let n0 = r.lineno();
    let first = r.next().ok_or_else(|| err(n0, "empty document"))?;
    if first != FORMAT_LINE {
        return Err(err(n0, format!("expected `{FORMAT_LINE}`")));
    }
    let doc_type = r.expect_kv("doc-type:")?;
    if doc_type != "certificate" {
        return Err(err(r.lineno() - 1, "not a certificate document"));
    }
    let order: u32 = r
        .expect_kv("order:")?
        .parse()
        .map_err(|_| err(r.lineno() - 1, "malformed order"))?;
    let dim: usize = r
        .expect_kv("dimension:")?
        .parse()
        .map_err(|_| err(r.lineno() - 1, "malformed dimension"))?;
    if dim == 0 || dim % 2 != 0 {
        return Err(err(r.lineno() - 1, "dimension must be even and positive"));
    }
    let kind = match r.expect_kv("kind:")? {
        "elliptic" => InvariantKind::Elliptic,
        "saddle" => InvariantKind::Saddle,
        other => return Err(err(r.lineno() - 1, format!("unknown kind `{other}`"))),
    };
    let freq_line = r.expect_kv("frequencies:")?;
    let frequencies: Vec<Rational> = freq_line
        .split_whitespace()
        .map(|t| parse_rational(t).map_err(|e| err(r.lineno() - 1, e)))
        .collect::<Result<_, _>>()?;
    if frequencies.len() != dim / 2 {
        return Err(err(r.lineno() - 1, "frequency count must be n"));
    }
    let mode_tok = r.expect_kv("mode:")?.to_string();
    let (mode, genericity) = if mode_tok == "normal-form" {
        (None, None)
    } else {
        let mode = HamiltonizeMode::parse(&mode_tok)
            .ok_or_else(|| err(r.lineno() - 1, format!("unknown mode `{mode_tok}`")))?;
        let g = parse_rational(r.expect_kv("genericity:")?).map_err(|e| err(r.lineno() - 1, e))?;
        (Some(mode), Some(g))
    };
    let mut d4_ratio: Option<(u64, u64)> = None;
    if let Some(line) = r.peek() {
        if let Some(rest) = line.strip_prefix("d4-ratio: ") {
            let mut t = rest.split_whitespace();
            let r1 = t
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(r.lineno(), "malformed d4 ratio"))?;
            let r2 = t
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(r.lineno(), "malformed d4 ratio"))?;
            d4_ratio = Some((r1, r2));
            r.next();
        }
    }

    let section = r.expect_kv("section:")?;
    if section != "input-field" {
        return Err(err(r.lineno() - 1, "expected section input-field"));
    }
    let input_comps = r.read_components(dim)?;
    let input = VectorField::new(kind, frequencies.clone(), input_comps)
        .map_err(|e| err(r.lineno(), e.to_string()))?;

    let section = r.expect_kv("section:")?;
    if section != "involution" {
        return Err(err(r.lineno() - 1, "expected section involution"));
    }
    let involution = parse_involution(&mut r, dim)?;

    let mut d4 = None;
    let mut pd_steps = Vec::new();
    let mut normal_form = None;
    let mut pd_residual = None;
    let mut ham_steps: Vec<CertHamStep> = Vec::new();
    let mut output = None;
    let mut hamiltonian = None;
    let mut rho_global = None;
    let mut residuals: Vec<(u32, Vec<Polynomial<Rational>>)> = Vec::new();

    loop {
        let at = r.lineno();
        let section = r.expect_kv("section:")?.to_string();
        match section.as_str() {
            "end" => break,
            "involution-g2" => {
                let g2 = parse_involution(&mut r, dim)?;
                let (r1, r2) =
                    d4_ratio.ok_or_else(|| err(at, "involution-g2 requires d4-ratio header"))?;
                d4 = Some(D4Data { g2, r1, r2 });
            }
            s if s.starts_with("pd-step") => {
                pd_steps.push(r.read_components(dim)?);
            }
            "normal-form" => {
                let comps = r.read_components(dim)?;
                normal_form = Some(
                    VectorField::new(kind, frequencies.clone(), comps)
                        .map_err(|e| err(r.lineno(), e.to_string()))?,
                );
            }
            "residual-pd" => {
                pd_residual = Some(r.read_components(dim)?);
            }
            s if s.starts_with("ham-step ") => {
                let k: u32 = s["ham-step ".len()..]
                    .parse()
                    .map_err(|_| err(at, "malformed ham-step index"))?;
                let mut psi = Vec::with_capacity(dim);
                for i in 0..dim {
                    psi.push(r.read_poly(dim, &format!("psi{i}"))?);
                }
                let theta = r.read_poly(dim, "theta")?;
                ham_steps.push(CertHamStep { k, psi, theta });
            }
            "output-field" => {
                let comps = r.read_components(dim)?;
                output = Some(
                    VectorField::new(kind, frequencies.clone(), comps)
                        .map_err(|e| err(r.lineno(), e.to_string()))?,
                );
            }
            "hamiltonian" => {
                hamiltonian = Some(r.read_poly(dim, "h")?);
            }
            "reparametrization" => {
                rho_global = Some(r.read_poly(dim, "rho")?);
            }
            s if s.starts_with("residual-ham ") => {
                let o: u32 = s["residual-ham ".len()..]
                    .parse()
                    .map_err(|_| err(at, "malformed residual order"))?;
                residuals.push((o, r.read_components(dim)?));
            }
            other => return Err(err(at, format!("unknown section `{other}`"))),
        }
    }

    let normal_form = normal_form.ok_or_else(|| err(r.lineno(), "missing normal-form section"))?;
    let pd_residual =
        pd_residual.ok_or_else(|| err(r.lineno(), "missing residual-pd section"))?;

    let ham = match mode {
        None => None,
        Some(mode) => {
            let output = output.ok_or_else(|| err(r.lineno(), "missing output-field"))?;
            let hamiltonian =
                hamiltonian.ok_or_else(|| err(r.lineno(), "missing hamiltonian"))?;
            let rho_global = rho_global.unwrap_or_else(|| Polynomial::one(dim));
            if rho_global.constant_term() != Rational::one() {
                return Err(err(r.lineno(), "reparametrization must be 1 at the origin"));
            }
            Some(HamPart {
                mode,
                steps: ham_steps,
                output,
                hamiltonian,
                genericity: genericity.expect("genericity parsed with mode"),
                rho_global,
                residuals,
            })
        }
    };

    if d4_ratio.is_some() && d4.is_none() {
        return Err(err(r.lineno(), "d4-ratio header without involution-g2 section"));
    }

    Ok(Certificate {
        order,
        input,
        involution,
        d4,
        pd_steps,
        normal_form,
        pd_residual,
        ham,
    })
}

#[allow(dead_code)]
fn unused_ratmat(_m: &RatMat) {}

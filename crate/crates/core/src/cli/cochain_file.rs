//! Cochain files: a degree header followed by values on generator tuples.
//!
//! ```text
//! degree = 3
//! Y(L, L, L) = lambda1^2*lambda2 - lambda1*lambda2^2
//! ```
//!
//! Tuples list generator ids in declaration order; values are λ-polynomials in
//! `lambda1..lambdan` with coefficients in the module. Omitted tuples carry zero.

use std::fmt::Write as _;

use super::definition::content_lines;
use super::expr::{parse_lambda, print_lambda, var_names};
use crate::complex::{Cochain, Complex};
use crate::Error;

pub fn parse_cochain(src: &str, cx: &Complex) -> Result<Cochain, Error> {
    let mut lines = content_lines(src);
    let head = lines.next().ok_or(Error::Parse { line: 1, col: 1, msg: "empty cochain file".into() })?;
    let degree: usize = match head.key_value() {
        Some(("degree", v)) => v.parse().map_err(|_| head.err("degree must be a nonnegative integer"))?,
        _ => return Err(head.err("expected `degree = <n>`")),
    };
    let vars = var_names(degree);
    let u = &cx.alg.gens;
    let mut y = cx.zero_cochain(degree, 0);
    for line in lines {
        let t = line.text;
        let body = t.strip_prefix("Y(").ok_or_else(|| line.err("expected `Y(<ids>) = <expression>`"))?;
        let close = body.find(')').ok_or_else(|| line.err("missing `)`"))?;
        let ids = body[..close].trim();
        let tuple: Vec<usize> = if ids.is_empty() {
            Vec::new()
        } else {
            ids.split(',')
                .map(|id| u.find(id.trim()).ok_or_else(|| line.err(format!("unknown generator `{}`", id.trim()))))
                .collect::<Result<_, _>>()?
        };
        if tuple.len() != degree {
            return Err(line.err(format!("a {degree}-cochain takes {degree} arguments")));
        }
        if tuple.windows(2).any(|w| w[0] > w[1]) {
            return Err(line.err("list arguments in declaration order"));
        }
        if y.values.contains_key(&tuple) {
            return Err(line.err("tuple given twice"));
        }
        if !cx.tuple_allowed(&tuple) {
            return Err(line.err("this tuple carries no values in the complex"));
        }
        let rest = body[close + 1..].trim_start();
        let expr = rest.strip_prefix('=').ok_or_else(|| line.err("expected `=`"))?;
        let v = parse_lambda(expr, cx.mu(), &vars, line.pos_of(expr))?;
        y.add_value(tuple, &v);
    }
    Ok(cx.normalized(&y))
}

pub fn print_cochain(y: &Cochain, cx: &Complex) -> String {
    let vars = var_names(y.degree);
    let u = &cx.alg.gens;
    let mut out = String::new();
    let _ = writeln!(out, "degree = {}", y.degree);
    for (t, v) in &y.values {
        let ids: Vec<&str> = t.iter().map(|&g| u.gen(g).id.as_str()).collect();
        let _ = writeln!(out, "Y({}) = {}", ids.join(", "), print_lambda(v, cx.mu(), &vars));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{ComplexKind, Flavor};
    use crate::exact_core::int;
    use crate::zoo::{adjoint, make_virasoro, VirasoroCharge};

    fn virasoro() -> Complex {
        let f = make_virasoro(&VirasoroCharge::Value(int(1))).unwrap();
        Complex::new(f.pva.clone(), adjoint(&f.pva).unwrap(), ComplexKind::Pv, Flavor::Reduced).unwrap()
    }

    #[test]
    fn round_trip() {
        let cx = virasoro();
        let y = parse_cochain("degree = 2\nY(L, L) = lambda1^3 # a class\n", &cx).unwrap();
        let text = print_cochain(&y, &cx);
        assert_eq!(text, "degree = 2\nY(L, L) = lambda1^3\n");
        assert_eq!(parse_cochain(&text, &cx).unwrap(), y);
    }

    #[test]
    fn values_are_normalized() {
        // λ₂ = −λ₁ − ∂ on the reduced complex
        let cx = virasoro();
        let a = parse_cochain("degree = 2\nY(L, L) = lambda2*L\n", &cx).unwrap();
        let b = parse_cochain("degree = 2\nY(L, L) = -lambda1*L - d*L\n", &cx).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn malformed() {
        let cx = virasoro();
        assert!(matches!(parse_cochain("Y(L) = L\n", &cx), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_cochain("degree = 2\nY(L) = L\n", &cx), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_cochain("degree = 1\nY(M) = L\n", &cx), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_cochain("degree = 1\nY(L) = lambda2\n", &cx), Err(Error::Parse { line: 2, .. })));
    }
}

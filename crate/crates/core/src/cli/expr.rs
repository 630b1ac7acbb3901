//! λ-polynomial expressions: `1/12*lambda^3*C + d*L - 2*lambda1*lambda2*u*v`.
//!
//! A term is a product of factors separated by `*`. A factor is a rational `p` or `p/q`,
//! a variable (`lambda`, or `lambda1`, `lambda2`, ... for several), a generator id, or
//! `d` / `d^k` followed by `*` and a generator, denoting a derivative of that generator.

use std::fmt::Write as _;

use num_traits::{One, Signed};

use crate::exact_core::rat::parse_rat;
use crate::exact_core::{DiffPoly, Factor, LambdaPoly, Monomial, Rat, Universe};
use crate::Error;

/// The variable of bracket and action tables.
pub fn bracket_var() -> Vec<String> {
    vec!["lambda".to_string()]
}

/// `lambda1, …, lambdan`, the variables of an `n`-cochain.
pub fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("lambda{i}")).collect()
}

/// Words that cannot be generator ids.
pub fn is_reserved(id: &str) -> bool {
    id.is_empty() || id == "d" || id == "Y" || id.strip_prefix("lambda").is_some_and(|r| r.chars().all(|c| c.is_ascii_digit()))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Var(usize),
    D,
    Gen(usize),
    Plus,
    Minus,
    Star,
    Caret,
}

/// Source position of an expression: line number and column of its first character.
#[derive(Clone, Copy, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn err(self, offset: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col + offset, msg: msg.into() }
    }
}

fn tokenize(s: &str, u: &Universe, vars: &[String], pos: Pos) -> Result<Vec<(usize, Tok)>, Error> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            _ if c.is_ascii_digit() => {
                let mut j = i;
                while j < b.len() && (b[j].is_ascii_digit() || b[j] == b'/') {
                    j += 1;
                }
                let r = parse_rat(&s[i..j]).ok_or_else(|| pos.err(i, format!("bad number `{}`", &s[i..j])))?;
                i = j;
                out.push((start, Tok::Num(r)));
                continue;
            }
            _ => {
                let mut j = i;
                while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_') {
                    j += 1;
                }
                let word = &s[i..j];
                if word == "d" {
                    i = j;
                    out.push((start, Tok::D));
                    continue;
                }
                if let Some(k) = vars.iter().position(|v| v == word) {
                    i = j;
                    out.push((start, Tok::Var(k)));
                    continue;
                }
                // longest declared id at this position; ids may contain characters like `+`
                let rest = &s[i..];
                let best = u
                    .gens()
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| rest.starts_with(g.id.as_str()) && g.id.len() >= word.len())
                    .max_by_key(|(_, g)| g.id.len());
                match best {
                    Some((g, decl)) => {
                        i += decl.id.len();
                        out.push((start, Tok::Gen(g)));
                        continue;
                    }
                    None if word.is_empty() => return Err(pos.err(i, format!("unexpected character `{c}`"))),
                    None => return Err(pos.err(i, format!("unknown symbol `{word}`"))),
                }
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    pos: Pos,
    u: &'a Universe,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.at).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn exponent(&mut self) -> Result<u32, Error> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.next();
        let o = self.offset();
        match self.next() {
            Some(Tok::Num(r)) if r.is_integer() && !r.is_negative() => {
                r.to_integer().try_into().map_err(|_| self.pos.err(o, "exponent too large"))
            }
            _ => Err(self.pos.err(o, "expected a nonnegative integer exponent")),
        }
    }

    /// A generator, possibly under `d^k*`.
    fn generator(&mut self) -> Result<Factor, Error> {
        let o = self.offset();
        match self.next() {
            Some(Tok::Gen(g)) => Ok((g as u32, 0)),
            Some(Tok::D) => {
                let k = self.exponent()?;
                let o2 = self.offset();
                if self.next() != Some(Tok::Star) {
                    return Err(self.pos.err(o2, "expected `*` after `d`"));
                }
                let (g, j) = self.generator()?;
                Ok((g, j + k))
            }
            _ => Err(self.pos.err(o, "expected a generator after `d*`")),
        }
    }

    fn term(&mut self, nvars: usize, sign: bool) -> Result<LambdaPoly, Error> {
        let mut coef = if sign { -Rat::one() } else { Rat::one() };
        let mut exps = vec![0u32; nvars];
        let mut factors: Vec<Factor> = Vec::new();
        let mut torsion_derivative = false;
        loop {
            let o = self.offset();
            match self.peek().cloned() {
                Some(Tok::Num(r)) => {
                    self.next();
                    coef *= r;
                }
                Some(Tok::Var(k)) => {
                    self.next();
                    exps[k] += self.exponent()?;
                }
                Some(Tok::Gen(_)) | Some(Tok::D) => {
                    let (g, k) = self.generator()?;
                    if k > 0 && self.u.is_torsion(g as usize) {
                        torsion_derivative = true;
                    }
                    factors.push((g, k));
                }
                _ => return Err(self.pos.err(o, "expected a number, variable or generator")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.next();
            } else {
                break;
            }
        }
        if torsion_derivative {
            return Ok(LambdaPoly::zero(nvars));
        }
        Ok(LambdaPoly::term(nvars, exps, DiffPoly::product(self.u, factors, coef)))
    }
}

/// Parses a λ-polynomial in `vars` with coefficients in the algebra over `u`.
pub fn parse_lambda(s: &str, u: &Universe, vars: &[String], pos: Pos) -> Result<LambdaPoly, Error> {
    let toks = tokenize(s, u, vars, pos)?;
    let mut p = Parser { toks, at: 0, end: s.len(), pos, u };
    let nvars = vars.len();
    let mut out = LambdaPoly::zero(nvars);
    if p.peek().is_none() {
        return Err(pos.err(0, "empty expression"));
    }
    let mut sign = false;
    match p.peek() {
        Some(Tok::Minus) => {
            p.next();
            sign = true;
        }
        Some(Tok::Plus) => {
            p.next();
        }
        _ => {}
    }
    loop {
        let t = p.term(nvars, sign)?;
        out = out.add(&t);
        let o = p.offset();
        match p.next() {
            None => break,
            Some(Tok::Plus) => sign = false,
            Some(Tok::Minus) => sign = true,
            Some(_) => return Err(pos.err(o, "expected `+` or `-`")),
        }
    }
    Ok(out)
}

/// Parses an element of the algebra over `u` (no λ-variables).
pub fn parse_element(s: &str, u: &Universe, pos: Pos) -> Result<DiffPoly, Error> {
    Ok(parse_lambda(s, u, &[], pos)?.coeff(&[]))
}

fn write_monomial(out: &mut Vec<String>, m: &Monomial, u: &Universe) {
    for &(g, k) in m.factors() {
        let id = &u.gen(g as usize).id;
        match k {
            0 => out.push(id.clone()),
            1 => out.push(format!("d*{id}")),
            _ => out.push(format!("d^{k}*{id}")),
        }
    }
}

/// Prints in the syntax accepted by [`parse_lambda`].
pub fn print_lambda(p: &LambdaPoly, u: &Universe, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (e, c) in p.terms() {
        for (m, r) in c.terms() {
            let neg = r.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = r.abs();
            let mut parts = Vec::new();
            if !a.is_one() {
                parts.push(a.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(vars[i].clone()),
                    _ => parts.push(format!("{}^{k}", vars[i])),
                }
            }
            write_monomial(&mut parts, m, u);
            if parts.is_empty() {
                parts.push("1".into());
            }
            let _ = write!(s, "{}", parts.join("*"));
        }
    }
    s
}

pub fn print_element(p: &DiffPoly, u: &Universe) -> String {
    if p.is_zero() {
        return "0".into();
    }
    print_lambda(&LambdaPoly::constant(0, p.clone()), u, &[])
}

/// Rational with an explicit denominator, as in machine-readable report lines.
pub fn frac(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{int, rat, GenDecl, Parity};

    fn universe() -> Universe {
        Universe::new(vec![
            GenDecl::even("L", int(2)),
            GenDecl::new("C", Parity::Even, int(0), true),
            GenDecl::odd("psi+", rat(1, 2)),
            GenDecl::odd("psi-", rat(1, 2)),
        ])
        .unwrap()
    }

    const P: Pos = Pos { line: 1, col: 1 };

    #[test]
    fn virasoro_bracket_round_trip() {
        let u = universe();
        let v = bracket_var();
        let p = parse_lambda("d*L + 2*lambda*L + 1/12*lambda^3*C", &u, &v, P).unwrap();
        assert_eq!(p.coeff(&[0]), DiffPoly::gen_deriv(0, 1));
        assert_eq!(p.coeff(&[3]), DiffPoly::gen(1).scale(&rat(1, 12)));
        let printed = print_lambda(&p, &u, &v);
        assert_eq!(parse_lambda(&printed, &u, &v, P).unwrap(), p);
    }

    #[test]
    fn ids_with_signs_and_odd_products() {
        let u = universe();
        let a = parse_element("psi+*psi- + psi-*psi+", &u, P).unwrap();
        assert!(a.is_zero());
        let b = parse_element("psi++psi-", &u, P).unwrap();
        assert_eq!(b, DiffPoly::gen(2).add(&DiffPoly::gen(3)));
        let c = parse_element("d^2*psi- - 3/4*d*d*psi-", &u, P).unwrap();
        assert_eq!(c, DiffPoly::gen_deriv(3, 2).scale(&rat(1, 4)));
    }

    #[test]
    fn torsion_derivatives_vanish() {
        let u = universe();
        assert!(parse_element("d*C", &u, P).unwrap().is_zero());
    }

    #[test]
    fn several_variables() {
        let u = universe();
        let v = var_names(3);
        let p = parse_lambda("lambda1^2*lambda2 - lambda1*lambda2^2", &u, &v, P).unwrap();
        assert_eq!(p.coeff(&[2, 1, 0]), DiffPoly::one());
        assert_eq!(p.coeff(&[1, 2, 0]), DiffPoly::one().neg());
        assert_eq!(print_lambda(&p, &u, &v), "-lambda1*lambda2^2 + lambda1^2*lambda2");
    }

    #[test]
    fn errors_carry_positions() {
        let u = universe();
        match parse_lambda("2*lambda + X", &u, &bracket_var(), Pos { line: 7, col: 10 }) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (7, 21)),
            other => panic!("{other:?}"),
        }
        assert!(parse_lambda("d*2", &u, &bracket_var(), P).is_err());
        assert!(parse_lambda("lambda^-1", &u, &bracket_var(), P).is_err());
        assert!(parse_lambda("", &u, &bracket_var(), P).is_err());
    }
}

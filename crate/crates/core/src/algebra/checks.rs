//! Exact axiom checkers. Violations are reported with their residual polynomials.

use std::fmt;

use num_traits::One;

use super::bracket::{bracket, jacobi_residual, sign_of, skew_residual};
use super::module::{module_action, module_product, CoeffModule};
use super::spec::{AlgebraSpec, Charge, Kind};
use crate::exact_core::{DiffPoly, LambdaPoly, Rat, Universe};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub residual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    fn record(&mut self, identity: impl FnOnce() -> String, residual: &LambdaPoly, u: &Universe, vars: &[&str]) {
        self.checked += 1;
        if !residual.is_zero() {
            let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
            self.violations.push(Violation {
                identity: identity(),
                residual: residual.display(u, &names).to_string(),
            });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        for v in &self.violations {
            writeln!(f, "FAIL {}: residual {}", v.identity, v.residual)?;
        }
        write!(
            f,
            "{} identities checked, {} violated",
            self.checked,
            self.violations.len()
        )
    }
}

fn gid(u: &Universe, g: usize) -> &str {
    &u.gen(g).id
}

/// Products of pairs of generators, used as composite spot checks for PVAs.
pub fn default_composites(a_spec: &AlgebraSpec, limit: usize) -> Vec<DiffPoly> {
    let u = &a_spec.gens;
    let live: Vec<usize> = (0..u.len()).filter(|&g| !u.is_torsion(g)).collect();
    let mut out = Vec::new();
    'outer: for (x, &i) in live.iter().enumerate() {
        for &j in &live[x..] {
            let p = DiffPoly::gen(i).mul(u, &DiffPoly::gen_deriv(j, (i != j) as u32));
            if !p.is_zero() {
                out.push(p);
            }
            if out.len() >= limit {
                break 'outer;
            }
        }
    }
    out
}

/// Skewsymmetry on generator pairs, Jacobi on generator triples and, for PVAs,
/// Jacobi on triples mixing generators with the given composite elements.
pub fn check_axioms_with(a_spec: &AlgebraSpec, composites: &[DiffPoly]) -> Result<Report, Error> {
    let u = &a_spec.gens;
    let n = u.len();
    let mut rep = Report::default();
    for i in 0..n {
        for j in i..n {
            let r = skew_residual(a_spec, &DiffPoly::gen(i), &DiffPoly::gen(j))?;
            rep.record(|| format!("skewsymmetry [{} λ {}]", gid(u, i), gid(u, j)), &r, u, &["lambda"]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = jacobi_residual(a_spec, &DiffPoly::gen(i), &DiffPoly::gen(j), &DiffPoly::gen(k))?;
                rep.record(
                    || format!("Jacobi ({}, {}, {})", gid(u, i), gid(u, j), gid(u, k)),
                    &r,
                    u,
                    &["lambda", "mu"],
                );
            }
        }
    }
    if a_spec.kind == Kind::Pva {
        let gens: Vec<DiffPoly> = (0..n).filter(|&g| !u.is_torsion(g)).map(DiffPoly::gen).collect();
        for c in composites {
            for x in &gens {
                for y in &gens {
                    let triples = [(c, x, y), (x, c, y), (x, y, c)];
                    for (a, b, d) in triples {
                        for a_part in a.split_parity(u) {
                            if a_part.is_zero() {
                                continue;
                            }
                            for b_part in b.split_parity(u) {
                                if b_part.is_zero() {
                                    continue;
                                }
                                let r = jacobi_residual(a_spec, &a_part, &b_part, d)?;
                                rep.record(
                                    || {
                                        format!(
                                            "Jacobi ({}, {}, {})",
                                            a_part.display(u),
                                            b_part.display(u),
                                            d.display(u)
                                        )
                                    },
                                    &r,
                                    u,
                                    &["lambda", "mu"],
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

pub fn check_axioms(a_spec: &AlgebraSpec) -> Result<Report, Error> {
    let comps = if a_spec.kind == Kind::Pva { default_composites(a_spec, 3) } else { Vec::new() };
    check_axioms_with(a_spec, &comps)
}

/// Outcome of the conformal-structure check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroReport {
    pub report: Report,
    pub charge: Option<Charge>,
}

/// Checks `[L_λ L] = (∂+2λ)L + (c/12)λ³`, `L_(0) = ∂` and `L_(1) u = Δ(u) u` on generators.
pub fn check_virasoro(a_spec: &AlgebraSpec) -> Result<VirasoroReport, Error> {
    let u = &a_spec.gens;
    let Some(vir) = &a_spec.virasoro else {
        return Err(Error::Invalid("no Virasoro element designated".into()));
    };
    let mut rep = Report::default();
    let l = &vir.element;
    let ll = bracket(a_spec, l, l)?;
    let mut want = LambdaPoly::zero(1);
    want.add_term(vec![0], l.partial(u));
    want.add_term(vec![1], l.scale(&Rat::from_integer(2.into())));
    let c = a_spec.charge_element().unwrap();
    want.add_term(vec![3], c.scale(&(Rat::one() / Rat::from_integer(12.into()))));
    rep.record(|| "[L λ L] = (d+2 lambda)L + (c/12)lambda^3".into(), &ll.sub(&want), u, &["lambda"]);
    for g in 0..u.len() {
        let x = DiffPoly::gen(g);
        let v = bracket(a_spec, l, &x)?;
        let r0 = LambdaPoly::constant(1, v.coeff(&[0]).sub(&x.partial(u)));
        rep.record(|| format!("L_(0) {} = d {}", gid(u, g), gid(u, g)), &r0, u, &["lambda"]);
        let r1 = LambdaPoly::constant(1, v.coeff(&[1]).sub(&x.scale(u.weight(g))));
        rep.record(
            || format!("L_(1) {} = {} {}", gid(u, g), u.weight(g), gid(u, g)),
            &r1,
            u,
            &["lambda"],
        );
    }
    rep.notes.push(match &vir.charge {
        Charge::Scalar(c) => format!("central charge {c}"),
        Charge::Central(g) => format!("central charge given by the central element {}", gid(u, *g)),
    });
    Ok(VirasoroReport { report: rep, charge: Some(vir.charge.clone()) })
}

/// `x_{λ+μ} m` for `x` in the algebra, as a polynomial in `(λ, μ)`.
fn action_at_sum(a_spec: &AlgebraSpec, m_spec: &CoeffModule, x: &LambdaPoly, m: &DiffPoly) -> Result<LambdaPoly, Error> {
    let one = Rat::one();
    let mut out = LambdaPoly::zero(2);
    for (e, c) in x.terms() {
        let v = module_action(a_spec, m_spec, c, m)?;
        let sub = v.substitute_linear(2, &[vec![one.clone(), one.clone()]]);
        out.add_assign_scaled(&sub.mul_var_pow(0, e[0]), &one);
    }
    Ok(out)
}

/// `a_λ (p)` for `p` a polynomial in `μ` (variable 1 of the result).
fn action_into(a_spec: &AlgebraSpec, m_spec: &CoeffModule, a: &DiffPoly, p: &LambdaPoly) -> Result<LambdaPoly, Error> {
    let mut out = LambdaPoly::zero(2);
    for (e, c) in p.terms() {
        let v = module_action(a_spec, m_spec, a, c)?;
        out.add_assign_scaled(&v.embed(2, &[0]).mul_var_pow(1, e[0]), &Rat::one());
    }
    Ok(out)
}

/// M2 residual `a_λ(b_μ m) − (−1)^{p(a)p(b)} b_μ(a_λ m) − [a_λ b]_{λ+μ} m`.
pub fn m2_residual(
    a_spec: &AlgebraSpec,
    m_spec: &CoeffModule,
    a: &DiffPoly,
    b: &DiffPoly,
    m: &DiffPoly,
) -> Result<LambdaPoly, Error> {
    let u = &a_spec.gens;
    let pa = a.parity(u).map(|p| p.bit()).unwrap_or(0);
    let pb = b.parity(u).map(|p| p.bit()).unwrap_or(0);
    let bm = module_action(a_spec, m_spec, b, m)?;
    let t1 = action_into(a_spec, m_spec, a, &bm)?;
    let am = module_action(a_spec, m_spec, a, m)?;
    let t2 = action_into(a_spec, m_spec, b, &am)?.permute(&[1, 0])?;
    let ab = bracket(a_spec, a, b)?;
    let t3 = action_at_sum(a_spec, m_spec, &ab, m)?;
    let mut r = t1;
    r.add_assign_scaled(&t2, &-sign_of(pa * pb));
    r.add_assign_scaled(&t3, &-Rat::one());
    Ok(r)
}

/// M1 residuals: `(∂a)_λ m + λ a_λ m` and `a_λ(∂m) − (λ+∂)(a_λ m)`.
pub fn m1_residuals(
    a_spec: &AlgebraSpec,
    m_spec: &CoeffModule,
    a: &DiffPoly,
    m: &DiffPoly,
) -> Result<[LambdaPoly; 2], Error> {
    let mu = &m_spec.basis;
    let base = module_action(a_spec, m_spec, a, m)?;
    let da = module_action(a_spec, m_spec, &a.partial(&a_spec.gens), m)?;
    let r1 = da.add(&base.mul_var_pow(0, 1));
    let dm = module_action(a_spec, m_spec, a, &m.partial(mu))?;
    let r2 = dm.sub(&base.mul_var_pow(0, 1)).sub(&base.partial_coeffs(mu));
    Ok([r1, r2])
}

/// M3 residual `a_λ(b·m) − [a_λ b]·m − (−1)^{p(a)p(b)} b·(a_λ m)`.
pub fn m3_residual(
    a_spec: &AlgebraSpec,
    m_spec: &CoeffModule,
    a: &DiffPoly,
    b: &DiffPoly,
    m: &DiffPoly,
) -> Result<LambdaPoly, Error> {
    let u = &a_spec.gens;
    let pa = a.parity(u).map(|p| p.bit()).unwrap_or(0);
    let pb = b.parity(u).map(|p| p.bit()).unwrap_or(0);
    let bm = module_product(a_spec, m_spec, b, m)?;
    let lhs = module_action(a_spec, m_spec, a, &bm)?;
    let ab = bracket(a_spec, a, b)?;
    let mut t1 = LambdaPoly::zero(1);
    for (e, c) in ab.terms() {
        t1.add_term(e.clone(), module_product(a_spec, m_spec, c, m)?);
    }
    let am = module_action(a_spec, m_spec, a, m)?;
    let mut t2 = LambdaPoly::zero(1);
    for (e, c) in am.terms() {
        t2.add_term(e.clone(), module_product(a_spec, m_spec, b, c)?);
    }
    let mut r = lhs;
    r.add_assign_scaled(&t1, &-Rat::one());
    r.add_assign_scaled(&t2, &-sign_of(pa * pb));
    Ok(r)
}

/// M1 and M2 on all (generator, generator, module generator) triples; M3 as well when the
/// module carries a product action.
pub fn check_module(a_spec: &AlgebraSpec, m_spec: &CoeffModule) -> Result<Report, Error> {
    let u = &a_spec.gens;
    let mu = &m_spec.basis;
    let mut rep = Report::default();
    let n = u.len();
    let elems = m_spec.test_elements();
    let label = |m: &DiffPoly| {
        if m.terms().keys().all(|x| x.is_one()) {
            "1".to_string()
        } else {
            m.display(mu).to_string()
        }
    };
    for g in 0..n {
        for m in &elems {
            let [r1, r2] = m1_residuals(a_spec, m_spec, &DiffPoly::gen(g), m)?;
            rep.record(|| format!("M1 (d{})_λ {}", gid(u, g), label(m)), &r1, mu, &["lambda"]);
            rep.record(|| format!("M1 {}_λ d{}", gid(u, g), label(m)), &r2, mu, &["lambda"]);
        }
    }
    for g in 0..n {
        for h in 0..n {
            for m in &elems {
                let r = m2_residual(a_spec, m_spec, &DiffPoly::gen(g), &DiffPoly::gen(h), m)?;
                rep.record(
                    || format!("M2 ({}, {}, {})", gid(u, g), gid(u, h), label(m)),
                    &r,
                    mu,
                    &["lambda", "mu"],
                );
            }
        }
    }
    if a_spec.kind == Kind::Pva && m_spec.has_product() {
        for g in 0..n {
            for h in 0..n {
                for m in &elems {
                    let r = m3_residual(a_spec, m_spec, &DiffPoly::gen(g), &DiffPoly::gen(h), m)?;
                    rep.record(
                        || format!("M3 ({}, {}, {})", gid(u, g), gid(u, h), label(m)),
                        &r,
                        mu,
                        &["lambda"],
                    );
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{int, GenDecl};

    #[test]
    fn abelian_passes() {
        let u = Universe::new(vec![GenDecl::even("a", int(1)), GenDecl::odd("b", int(1))]).unwrap();
        let a = AlgebraSpec::new(Kind::Pva, u, Vec::new()).unwrap();
        let r = check_axioms(&a).unwrap();
        assert!(r.passed());
        assert!(r.checked > 0);
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let u = Universe::new(vec![GenDecl::even("L", int(2))]).unwrap();
        let mut v = LambdaPoly::zero(1);
        v.add_term(vec![0], DiffPoly::gen_deriv(0, 1));
        v.add_term(vec![1], DiffPoly::gen(0).scale(&int(3)));
        let a = AlgebraSpec::new(Kind::Lca, u, vec![((0, 0), v)]).unwrap();
        let r = check_axioms(&a).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.identity.starts_with("Jacobi")));
    }
}

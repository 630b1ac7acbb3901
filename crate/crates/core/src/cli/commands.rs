//! Subcommands and report emission.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};

use super::cochain_file::{parse_cochain, print_cochain};
use super::definition::{parse_definition, print_definition, Builtin, Definition, Member, ModuleKeyword, Param};
use super::expr::{frac, print_element};
use crate::algebra::{check_axioms, check_module, check_virasoro, Kind};
use crate::complex::{
    cartan_residual, cartan_residual0, casimirs, central_ext_relation, cohomology, derivations_mod_inner,
    lc_pv_isomorphism_check, verify_cocycle, Complex, ComplexKind, Flavor, Options,
};
use crate::exact_core::rat::parse_rat;
use crate::exact_core::{DiffPoly, Rat};
use crate::zoo::{adjoint, reduced_lca};
use crate::Error;

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
        }
    }

    fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Ok
        } else {
            Status::CheckFailed
        }
    }
}

/// Exit status for an error: 2 for malformed input, 3 for infeasible computations.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::UnboundedSlice(_) => 3,
        _ => 2,
    }
}

#[derive(Parser, Debug)]
#[command(name = "confcoh", version, about = "Exact cohomology of Lie conformal and Poisson vertex superalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebra axioms, the Virasoro element and the module axioms.
    Check(Source),
    /// Cohomology dimensions per degree and conformal weight.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        complex: ComplexArgs,
        #[command(flatten)]
        range: Range,
        /// Print representative cocycles.
        #[arg(long)]
        reps: bool,
        /// Skip the d∘d = 0 and energy consistency checks.
        #[arg(long)]
        no_checks: bool,
    },
    /// Casimir elements: a basis of H⁰.
    Casimirs {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        complex: ComplexArgs,
        /// Largest weight searched.
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        cutoff: String,
    },
    /// Derivations modulo inner derivations: a basis of H¹.
    Derivations {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        complex: ComplexArgs,
        /// Weights: `auto01` or a comma-separated list of rationals.
        #[arg(long, default_value = "auto01", allow_hyphen_values = true)]
        weights: String,
    },
    /// Verify a cocycle file, Cartan's formula, the LC/PV comparison or a central extension.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        complex: ComplexArgs,
        #[command(flatten)]
        range: Range,
        /// Cochain file to test for being a cocycle and a coboundary.
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Check Cartan's formula on the basic and reduced complexes of an LCA.
        #[arg(long)]
        cartan: bool,
        /// Compare the LC complex of the reduced LCA with the PV complex (builtin families).
        #[arg(long)]
        iso: bool,
        /// Compare an LCA with its quotient at the given central value.
        #[arg(long, allow_hyphen_values = true)]
        central_ext: Option<String>,
    },
    /// Print the definition in canonical explicit form.
    Print(Source),
}

/// Where the algebra comes from: a definition file or builtin flags.
#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Definition file.
    pub file: Option<PathBuf>,
    /// Builtin family: virasoro, boson, fermion or affine.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Central charge of the Virasoro family (rational or `universal`).
    #[arg(long, default_value = "universal", allow_hyphen_values = true)]
    pub charge: String,
    /// Rank of the boson or fermion family.
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// Lie algebra of the affine family.
    #[arg(long, default_value = "sl2")]
    pub lie: String,
    /// Level of the affine family (rational or `universal`).
    #[arg(long, default_value = "universal", allow_hyphen_values = true)]
    pub level: String,
    /// Family member: pva, lca or reduced.
    #[arg(long, default_value = "pva")]
    pub algebra: String,
    /// Module keyword overriding the definition: adjoint, trivial, augmentation,
    /// M_Delta=q, M_g=w or "quotient C=c".
    #[arg(long)]
    pub module: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pv,
    Lc,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    #[default]
    Reduced,
    Basic,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ComplexArgs {
    /// Complex kind; defaults to pv for a PVA and lc for an LCA.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long, value_enum, default_value = "reduced")]
    pub flavor: FlavorArg,
}

#[derive(Args, Debug, Clone)]
pub struct Range {
    /// Degree range `a..b` (inclusive).
    #[arg(long, default_value = "0..2")]
    pub degrees: String,
    /// Weights: `auto01` or a comma-separated list of rationals.
    #[arg(long, default_value = "auto01", allow_hyphen_values = true)]
    pub weights: String,
}

fn arg_error(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn param(s: &str, what: &str) -> Result<Param, Error> {
    if s == "universal" {
        return Ok(Param::Universal);
    }
    parse_rat(s).map(Param::Value).ok_or_else(|| arg_error(format!("{what} must be rational or `universal`")))
}

impl Source {
    pub fn load(&self) -> Result<Definition, Error> {
        let def = match (&self.file, &self.builtin) {
            (Some(_), Some(_)) => return Err(arg_error("give either a definition file or --builtin")),
            (None, None) => return Err(arg_error("a definition file or --builtin is required")),
            (Some(path), None) => {
                let src = std::fs::read_to_string(path)
                    .map_err(|e| arg_error(format!("cannot read {}: {e}", path.display())))?;
                parse_definition(&src)?
            }
            (None, Some(name)) => {
                let b = match name.as_str() {
                    "virasoro" => Builtin::Virasoro { charge: param(&self.charge, "--charge")? },
                    "boson" => Builtin::Boson { n: self.n },
                    "fermion" => Builtin::Fermion { n: self.n },
                    "affine" => Builtin::Affine { lie: self.lie.clone(), level: param(&self.level, "--level")? },
                    other => return Err(arg_error(format!("unknown builtin `{other}`"))),
                };
                let member = match self.algebra.as_str() {
                    "pva" => Member::Pva,
                    "lca" => Member::Lca,
                    "reduced" => Member::Reduced,
                    other => return Err(arg_error(format!("unknown --algebra `{other}`"))),
                };
                Definition::from_builtin(b, member, &ModuleKeyword::Adjoint)?
            }
        };
        match &self.module {
            None => Ok(def),
            Some(m) => {
                let k = ModuleKeyword::parse(m).ok_or_else(|| arg_error(format!("unknown module keyword `{m}`")))?;
                def.with_module(&k)
            }
        }
    }
}

impl ComplexArgs {
    fn build(&self, def: &Definition) -> Result<Complex, Error> {
        let kind = match self.kind {
            Some(KindArg::Pv) => ComplexKind::Pv,
            Some(KindArg::Lc) => ComplexKind::Lc,
            None if def.algebra.kind == Kind::Pva => ComplexKind::Pv,
            None => ComplexKind::Lc,
        };
        let flavor = match self.flavor {
            FlavorArg::Reduced => Flavor::Reduced,
            FlavorArg::Basic => Flavor::Basic,
        };
        Complex::new(def.algebra.clone(), def.module.clone(), kind, flavor)
    }
}

pub fn parse_degrees(s: &str) -> Result<(usize, usize), Error> {
    let bad = || arg_error(format!("degrees must look like `0..4`, found `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// The weight list, and whether it is the automatic `{0, 1}`.
pub fn parse_weights(s: &str) -> Result<(Vec<Rat>, bool), Error> {
    if s == "auto01" {
        return Ok((vec![Rat::zero(), Rat::one()], true));
    }
    let mut out: Vec<Rat> = s
        .split(',')
        .map(|w| parse_rat(w).ok_or_else(|| arg_error(format!("bad weight `{}`", w.trim()))))
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok((out, false))
}

fn describe(def: &Definition, cx: Option<&Complex>) -> String {
    let a = &def.algebra;
    let gens: Vec<String> = a.gens.gens().iter().map(|g| format!("{}({})", g.id, g.weight)).collect();
    let mut s = format!(
        "algebra: {} on {}; module: {}",
        if a.kind == Kind::Lca { "LCA" } else { "PVA" },
        gens.join(" "),
        def.module.name
    );
    if let Some(cx) = cx {
        let k = if cx.kind == ComplexKind::Pv { "PV" } else { "LC" };
        let f = if cx.flavor == Flavor::Reduced { "reduced" } else { "basic" };
        let _ = write!(s, "; complex: {k} {f}");
    }
    s
}

/// Runs a command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut String) -> Result<Status, Error> {
    match &cli.command {
        Command::Check(src) => cmd_check(&src.load()?, out),
        Command::Cohomology { source, complex, range, reps, no_checks } => {
            let def = source.load()?;
            let cx = complex.build(&def)?;
            let degrees = parse_degrees(&range.degrees)?;
            let weights = parse_weights(&range.weights)?;
            cmd_cohomology(&def, &cx, degrees, weights, *reps, !*no_checks, out)
        }
        Command::Casimirs { source, complex, cutoff } => {
            let def = source.load()?;
            let cx = complex.build(&def)?;
            let cutoff = parse_rat(cutoff).ok_or_else(|| arg_error("bad --cutoff"))?;
            cmd_casimirs(&def, &cx, &cutoff, out)
        }
        Command::Derivations { source, complex, weights } => {
            let def = source.load()?;
            let cx = complex.build(&def)?;
            cmd_derivations(&def, &cx, &parse_weights(weights)?.0, out)
        }
        Command::Verify { source, complex, range, cocycle, cartan, iso, central_ext } => {
            let def = source.load()?;
            let degrees = parse_degrees(&range.degrees)?;
            let (weights, _) = parse_weights(&range.weights)?;
            let mut ok = true;
            let mut any = false;
            if let Some(path) = cocycle {
                any = true;
                let cx = complex.build(&def)?;
                let src = std::fs::read_to_string(path)
                    .map_err(|e| arg_error(format!("cannot read {}: {e}", path.display())))?;
                ok &= cmd_verify_cocycle(&def, &cx, &src, out)? == Status::Ok;
            }
            if *cartan {
                any = true;
                ok &= cmd_cartan(&def, degrees, &weights, out)? == Status::Ok;
            }
            if *iso {
                any = true;
                ok &= cmd_iso(&def, degrees, &weights, out)? == Status::Ok;
            }
            if let Some(c) = central_ext {
                any = true;
                let c = parse_rat(c).ok_or_else(|| arg_error("bad --central-ext value"))?;
                ok &= cmd_central_ext(&def, &c, degrees.1, &weights, out)? == Status::Ok;
            }
            if !any {
                return Err(arg_error("verify needs --cocycle, --cartan, --iso or --central-ext"));
            }
            Ok(Status::from_ok(ok))
        }
        Command::Print(src) => {
            out.push_str(&print_definition(&src.load()?)?);
            Ok(Status::Ok)
        }
    }
}

pub fn cmd_check(def: &Definition, out: &mut String) -> Result<Status, Error> {
    let a = &def.algebra;
    let _ = writeln!(out, "{}", describe(def, None));
    let mut ok = true;
    let ax = check_axioms(a)?;
    let _ = writeln!(out, "== algebra axioms\n{ax}");
    ok &= ax.passed();
    if a.virasoro.is_some() {
        let v = check_virasoro(a)?;
        let _ = writeln!(out, "== Virasoro element\n{}", v.report);
        ok &= v.report.passed();
        let ws: Vec<String> = a.gens.gens().iter().map(|g| format!("{} {}", g.id, g.weight)).collect();
        let _ = writeln!(out, "conformal weights: {}", ws.join(", "));
    }
    let m = check_module(a, &def.module)?;
    let _ = writeln!(out, "== module `{}`\n{m}", def.module.name);
    ok &= m.passed();
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(Status::from_ok(ok))
}

pub fn cmd_cohomology(
    def: &Definition,
    cx: &Complex,
    degrees: (usize, usize),
    (weights, auto): (Vec<Rat>, bool),
    reps: bool,
    checks: bool,
    out: &mut String,
) -> Result<Status, Error> {
    let opts = Options { reps, check_d2: checks, check_energy: checks };
    let rep = cohomology(cx, degrees, &weights, &opts)?;
    let _ = writeln!(out, "{}", describe(def, Some(cx)));
    if auto {
        if rep.applicability.holds() {
            out.push_str("weights 0 and 1: hypotheses verified (PV complex, Virasoro element, conformal module); totals are the full cohomology\n");
        } else {
            let a = &rep.applicability;
            let _ = writeln!(
                out,
                "warning: cohomology is not known to be concentrated in weights 0 and 1 (PV complex: {}, Virasoro element: {}, conformal module: {}); reporting per weight only",
                a.pv_kind, a.virasoro_checked, a.module_conformal
            );
        }
    }
    // totals over {0, 1} are the whole cohomology only under the verified hypotheses
    let show_totals = !auto || rep.applicability.holds();
    let heads: Vec<String> = weights.iter().map(|w| format!("Δ={w}")).collect();
    let width = heads.iter().map(|h| h.chars().count()).max().unwrap_or(0).max(5);
    let _ = write!(out, "{:>3}", "n");
    for h in &heads {
        let _ = write!(out, " | {h:>width$}");
    }
    if show_totals {
        let _ = write!(out, " | {:>width$}", "total");
    }
    out.push('\n');
    for n in degrees.0..=degrees.1 {
        let _ = write!(out, "{n:>3}");
        for w in &weights {
            let _ = write!(out, " | {:>width$}", rep.get(n, w).map(|s| s.dim_h).unwrap_or(0));
        }
        if show_totals {
            let _ = write!(out, " | {:>width$}", rep.total(n));
        }
        out.push('\n');
    }
    for s in &rep.slices {
        let _ = writeln!(out, "H {} {} dim={}", s.degree, frac(&s.delta), s.dim_h);
    }
    if show_totals {
        let totals: Vec<String> = rep.totals().iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "totals: {}", totals.join(","));
    }
    if reps {
        for s in rep.slices.iter().filter(|s| !s.reps.is_empty()) {
            for (k, y) in s.reps.iter().enumerate() {
                let _ = writeln!(out, "# representative {} of H^{} at weight {}", k + 1, s.degree, s.delta);
                out.push_str(&print_cochain(y, cx));
            }
        }
    }
    if checks {
        let failed: Vec<&String> = rep.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
        for f in &failed {
            let _ = writeln!(out, "FAIL {f}");
        }
        let _ = writeln!(out, "consistency checks: {} run, {} failed", rep.checks.len(), failed.len());
    }
    Ok(Status::from_ok(rep.checks_passed()))
}

pub fn cmd_casimirs(def: &Definition, cx: &Complex, cutoff: &Rat, out: &mut String) -> Result<Status, Error> {
    let _ = writeln!(out, "{}", describe(def, Some(cx)));
    let list = casimirs(cx, cutoff)?;
    let _ = writeln!(out, "Casimir elements in weights ≤ {cutoff}: {}", list.len());
    for (w, m) in &list {
        let _ = writeln!(out, "C {} int({})", frac(w), print_element(m, cx.mu()));
    }
    Ok(Status::Ok)
}

pub fn cmd_derivations(def: &Definition, cx: &Complex, weights: &[Rat], out: &mut String) -> Result<Status, Error> {
    let _ = writeln!(out, "{}", describe(def, Some(cx)));
    let list = derivations_mod_inner(cx, weights)?;
    let ws: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
    let _ = writeln!(out, "derivations modulo inner in weights {}: {}", ws.join(", "), list.len());
    for (w, table) in &list {
        let parts: Vec<String> = table
            .iter()
            .map(|(g, v)| format!("{} -> {}", cx.alg.gens.gen(*g).id, print_element(v, cx.mu())))
            .collect();
        let _ = writeln!(out, "D {} {}", frac(w), parts.join("; "));
    }
    Ok(Status::Ok)
}

pub fn cmd_verify_cocycle(def: &Definition, cx: &Complex, src: &str, out: &mut String) -> Result<Status, Error> {
    let y = parse_cochain(src, cx)?;
    let _ = writeln!(out, "{}", describe(def, Some(cx)));
    let r = verify_cocycle(cx, &y)?;
    let verdict = match (r.is_cocycle, r.is_coboundary) {
        (false, _) => "not a cocycle",
        (true, true) => "cocycle, trivial class",
        (true, false) => "cocycle, nontrivial class",
    };
    let _ = writeln!(out, "degree {} weight {}: {verdict}", y.degree, r.delta);
    if r.is_cocycle && !r.class_coordinates.is_empty() {
        let c: Vec<String> = r.class_coordinates.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "class coordinates: [{}]", c.join(", "));
    }
    Ok(Status::from_ok(r.is_cocycle))
}

/// Cartan's formula on every basis cochain of the requested slices, for every generator.
pub fn cmd_cartan(def: &Definition, degrees: (usize, usize), weights: &[Rat], out: &mut String) -> Result<Status, Error> {
    let basic = Complex::new(def.algebra.clone(), def.module.clone(), ComplexKind::Lc, Flavor::Basic)?;
    let reduced = basic.with_flavor(Flavor::Reduced)?;
    let gens: Vec<usize> = (0..def.algebra.gens.len()).filter(|&g| !def.algebra.gens.is_torsion(g)).collect();
    let (mut checked, mut failed) = (0, 0);
    for n in degrees.0..=degrees.1 {
        for w in weights {
            for y in &basic.slice(n, w)?.basis {
                let py = basic.pi(y)?;
                for &g in &gens {
                    let a = DiffPoly::gen(g);
                    checked += 2;
                    if !cartan_residual(&basic, &a, y)?.is_zero() {
                        failed += 1;
                        let _ = writeln!(out, "FAIL basic Cartan formula, degree {n}, weight {w}, a = {}", def.algebra.gens.gen(g).id);
                    }
                    if !reduced.is_null(&cartan_residual0(&reduced, &a, &py)?)? {
                        failed += 1;
                        let _ = writeln!(out, "FAIL reduced Cartan formula, degree {n}, weight {w}, a = {}", def.algebra.gens.gen(g).id);
                    }
                }
            }
        }
    }
    let _ = writeln!(out, "Cartan formula: {checked} cases, {failed} failed");
    Ok(Status::from_ok(failed == 0))
}

pub fn cmd_iso(def: &Definition, degrees: (usize, usize), weights: &[Rat], out: &mut String) -> Result<Status, Error> {
    let (b, _) = def.builtin.as_ref().ok_or_else(|| arg_error("--iso compares a builtin family"))?;
    let f = b.family()?;
    let rbar = reduced_lca(&f)?;
    let m = adjoint(&f.pva)?;
    let slices = lc_pv_isomorphism_check(&rbar, &f.pva, &m, degrees, weights)?;
    let mut ok = true;
    for s in &slices {
        ok &= s.passed();
        let _ = writeln!(
            out,
            "I {} {} lc={} pv={} differentials={}",
            s.degree,
            frac(&s.delta),
            s.dim_lc,
            s.dim_pv,
            if s.differentials_match { "match" } else { "differ" }
        );
    }
    let _ = writeln!(out, "LC/PV comparison: {}", if ok { "isomorphic on all slices" } else { "MISMATCH" });
    Ok(Status::from_ok(ok))
}

pub fn cmd_central_ext(def: &Definition, c: &Rat, max_degree: usize, weights: &[Rat], out: &mut String) -> Result<Status, Error> {
    let r = &def.algebra;
    let c_gen = *r
        .torsion_ids()
        .first()
        .ok_or_else(|| Error::Invalid("the algebra has no torsion central generator".into()))?;
    let kind = if r.kind == Kind::Pva { ComplexKind::Pv } else { ComplexKind::Lc };
    let rep = central_ext_relation(kind, r, c_gen, c, &def.module, max_degree, weights)?;
    let show = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "dims over R: {}", show(&rep.dims_r));
    let _ = writeln!(out, "dims over the quotient: {}", show(&rep.dims_bar));
    let holds = rep.lhs == rep.dim_u as i64;
    let _ = writeln!(
        out,
        "(h1(R) - h1(quotient)) + (h2(quotient) - h2(R)) = {}, dim ker ∂ on M = {}: {}",
        rep.lhs,
        rep.dim_u,
        if holds { "relation holds" } else { "relation FAILS" }
    );
    Ok(Status::from_ok(holds))
}

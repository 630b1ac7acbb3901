//! Exact cohomology of weight slices, representatives, and low-degree readouts.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::cochain::{Cochain, Complex, ComplexKind};
use super::slice::SliceBasis;
use crate::algebra::{check_virasoro, module_action};
use crate::exact_core::linalg::{nullspace, rank, sv_add_scaled, Echelon, SparseVec};
use crate::exact_core::{DiffPoly, Rat, Shape};
use crate::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Compute representative cocycles.
    pub reps: bool,
    /// Check `d∘d = 0` as a matrix identity on consecutive slices.
    pub check_d2: bool,
    /// Check that `E` acts by `Δ` on every slice and that `d∘E = E∘d`.
    pub check_energy: bool,
}

/// Per-slice result.
#[derive(Clone, Debug)]
pub struct SliceCohomology {
    pub degree: usize,
    pub delta: Rat,
    pub dim_cochains: usize,
    /// `dim ker d` on the slice.
    pub dim_ker: usize,
    /// `dim im d` from degree `n−1` into the slice.
    pub dim_im: usize,
    pub dim_h: usize,
    pub reps: Vec<Cochain>,
}

/// Hypotheses under which cohomology is concentrated in weights 0 and 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Applicability {
    pub pv_kind: bool,
    pub virasoro_checked: bool,
    pub module_conformal: bool,
}

impl Applicability {
    pub fn holds(&self) -> bool {
        self.pv_kind && self.virasoro_checked && self.module_conformal
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub slices: Vec<SliceCohomology>,
    pub deltas: Vec<Rat>,
    pub degrees: (usize, usize),
    pub applicability: Applicability,
    /// Consistency checks that were run, with their outcome.
    pub checks: Vec<(String, bool)>,
}

impl CohomologyReport {
    pub fn get(&self, n: usize, delta: &Rat) -> Option<&SliceCohomology> {
        self.slices.iter().find(|s| s.degree == n && s.delta == *delta)
    }

    /// `Σ_Δ dim Hⁿ_Δ` over the declared weights.
    pub fn total(&self, n: usize) -> usize {
        self.slices.iter().filter(|s| s.degree == n).map(|s| s.dim_h).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (self.degrees.0..=self.degrees.1).map(|n| self.total(n)).collect()
    }

    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Slices and differential matrices for a range of degrees at one weight.
pub(crate) struct Ladder {
    pub lo: usize,
    pub slices: Vec<SliceBasis>,
    /// `mats[k]`: images of `d` on `slices[k]`, in coordinates of `slices[k+1]`.
    pub mats: Vec<Vec<SparseVec>>,
}

impl Ladder {
    pub fn slice(&self, n: usize) -> &SliceBasis {
        &self.slices[n - self.lo]
    }

    pub fn mat(&self, n: usize) -> &[SparseVec] {
        &self.mats[n - self.lo]
    }
}

pub(crate) fn ladder(cx: &Complex, lo: usize, hi: usize, delta: &Rat) -> Result<Ladder, Error> {
    let slices: Vec<SliceBasis> =
        (lo..=hi + 1).into_par_iter().map(|n| cx.slice(n, delta)).collect::<Result<_, _>>()?;
    let mats: Vec<Vec<SparseVec>> = (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let (src, tgt) = (&slices[n - lo], &slices[n + 1 - lo]);
            src.basis
                .par_iter()
                .map(|y| {
                    let dy = cx.differential(y)?;
                    tgt.coordinates(&dy).ok_or_else(|| Error::Invalid("differential left the weight slice".into()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(Ladder { lo, slices, mats })
}

/// `Σ_k x_k cols[k]`.
fn apply(cols: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in x {
        sv_add_scaled(&mut out, &cols[*k], c);
    }
    out
}

/// Greedy complement of `image` inside `kernel`, as kernel vectors.
fn complement(kernel: &[SparseVec], image: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for v in image {
        let _ = e.insert(v);
    }
    kernel.iter().filter(|k| e.insert(k).is_ok()).cloned().collect()
}

fn energy_matrix(cx: &Complex, s: &SliceBasis) -> Result<Vec<SparseVec>, Error> {
    s.basis
        .par_iter()
        .map(|y| {
            let ey = cx.energy(y)?;
            s.coordinates(&ey)
                .ok_or_else(|| Error::Invalid("energy operator left the weight slice".into()))
        })
        .collect()
}

pub fn applicability(cx: &Complex) -> Applicability {
    let pv_kind = cx.kind == ComplexKind::Pv;
    let virasoro_checked = cx.alg.virasoro.is_some() && check_virasoro(&cx.alg).map(|r| r.report.passed()).unwrap_or(false);
    let module_conformal = virasoro_checked && module_is_conformal(cx).unwrap_or(false);
    Applicability { pv_kind, virasoro_checked, module_conformal }
}

/// `L_λ m = (∂ + Δ(m)λ + O(λ²)) m` on every module generator.
fn module_is_conformal(cx: &Complex) -> Result<bool, Error> {
    let l = &cx.alg.virasoro.as_ref().unwrap().element;
    for h in 0..cx.mu().len() {
        let m = DiffPoly::gen(h);
        let act = module_action(&cx.alg, &cx.module, l, &m)?;
        if act.coeff(&[0]) != m.partial(cx.mu()) || act.coeff(&[1]) != m.scale(cx.mu().weight(h)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn cohomology(
    cx: &Complex,
    degrees: (usize, usize),
    deltas: &[Rat],
    opts: &Options,
) -> Result<CohomologyReport, Error> {
    let (a, b) = degrees;
    if a > b {
        return Err(Error::Invalid("empty degree range".into()));
    }
    let lo = a.saturating_sub(1);
    let ladders: Vec<Ladder> = deltas.par_iter().map(|d| ladder(cx, lo, b, d)).collect::<Result<_, _>>()?;
    let mut slices = Vec::new();
    let mut checks = Vec::new();
    for (delta, lad) in deltas.iter().zip(&ladders) {
        for n in a..=b {
            let s = lad.slice(n);
            let out = lad.mat(n);
            let r_out = rank(out);
            let (r_in, image): (usize, &[SparseVec]) = if n == 0 { (0, &[]) } else { (rank(lad.mat(n - 1)), lad.mat(n - 1)) };
            let dim_ker = s.dim() - r_out;
            let dim_h = dim_ker - r_in;
            let reps = if opts.reps {
                let kernel = nullspace(out);
                let c = complement(&kernel, image);
                debug_assert_eq!(c.len(), dim_h);
                c.iter().map(|v| s.combination(v)).collect()
            } else {
                Vec::new()
            };
            slices.push(SliceCohomology {
                degree: n,
                delta: delta.clone(),
                dim_cochains: s.dim(),
                dim_ker,
                dim_im: r_in,
                dim_h,
                reps,
            });
        }
        if opts.check_d2 {
            for n in lo..b {
                let ok = lad.mat(n).iter().all(|col| apply(lad.mat(n + 1), col).is_empty());
                checks.push((format!("d∘d = 0 on degree {n}, weight {delta}"), ok));
            }
        }
        if opts.check_energy {
            let es: Vec<Vec<SparseVec>> =
                (lo..=b + 1).map(|n| energy_matrix(cx, lad.slice(n))).collect::<Result<_, _>>()?;
            for n in lo..=b + 1 {
                let e = &es[n - lo];
                let ok = e.iter().enumerate().all(|(k, col)| {
                    let mut want = SparseVec::new();
                    if !delta.is_zero() {
                        want.insert(k, delta.clone());
                    }
                    *col == want
                });
                checks.push((format!("E = Δ on degree {n}, weight {delta}"), ok));
            }
            for n in lo..=b {
                let d = lad.mat(n);
                let (en, en1) = (&es[n - lo], &es[n + 1 - lo]);
                let ok = (0..d.len()).all(|k| apply(d, &en[k]) == apply(en1, &d[k]));
                checks.push((format!("d∘E = E∘d on degree {n}, weight {delta}"), ok));
            }
        }
    }
    Ok(CohomologyReport {
        slices,
        deltas: deltas.to_vec(),
        degrees,
        applicability: applicability(cx),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub delta: Rat,
    pub is_cocycle: bool,
    pub is_coboundary: bool,
    /// Coordinates of the class in the basis of representatives of `Hⁿ_Δ`.
    pub class_coordinates: Vec<Rat>,
}

/// Checks `dY = 0`, solves `Y = dX`, and expresses `[Y]` in the computed basis.
pub fn verify_cocycle(cx: &Complex, y: &Cochain) -> Result<CocycleReport, Error> {
    let y = cx.normalized(y);
    let comps = cx.weight_components(&y)?;
    let delta = match comps.len() {
        0 => Rat::zero(),
        1 => comps.keys().next().unwrap().clone(),
        _ => return Err(Error::Invalid("cochain is not weight-homogeneous".into())),
    };
    let n = y.degree;
    let is_cocycle = cx.differential(&y)?.is_zero();
    let lo = n.saturating_sub(1);
    let lad = ladder(cx, lo, n, &delta)?;
    let s = lad.slice(n);
    let coords = s
        .coordinates(&y)
        .ok_or_else(|| Error::Invalid("cochain violates the slot symmetry or lies outside its slice".into()))?;
    let image: &[SparseVec] = if n == 0 { &[] } else { lad.mat(n - 1) };
    let mut e = Echelon::new();
    let mut r = 0;
    for v in image {
        if e.insert(v).is_ok() {
            r += 1;
        }
    }
    let is_coboundary = e.contains(&coords);
    let mut class_coordinates = Vec::new();
    if is_cocycle {
        let kernel = nullspace(lad.mat(n));
        let reps = complement(&kernel, image);
        let mut e2 = Echelon::new();
        for v in image {
            if !e2.contains(v) {
                let _ = e2.insert(v);
            }
        }
        for v in &reps {
            let _ = e2.insert(v);
        }
        let comb = e2.solve(&coords).ok_or_else(|| Error::Invalid("cocycle outside kernel span".into()))?;
        class_coordinates = (0..reps.len()).map(|k| comb.get(&(r + k)).cloned().unwrap_or_else(Rat::zero)).collect();
    }
    Ok(CocycleReport { delta, is_cocycle, is_coboundary, class_coordinates })
}

/// Weights `≤ cutoff` carried by monomials of the module.
pub fn module_weights(cx: &Complex, cutoff: &Rat) -> Result<Vec<Rat>, Error> {
    let u = cx.mu();
    crate::exact_core::slice::check_bounded(u, cx.shape())?;
    let mut out = BTreeSet::new();
    match cx.shape() {
        Shape::Linear => {
            for g in u.gens() {
                let mut w = g.weight.clone();
                while w <= *cutoff {
                    out.insert(w.clone());
                    if g.torsion {
                        break;
                    }
                    w += Rat::one();
                }
            }
        }
        Shape::Full => {
            let steps: BTreeSet<Rat> = u.gens().iter().map(|g| g.weight.clone()).filter(|w| w.is_positive()).collect();
            let mut frontier = vec![Rat::zero()];
            out.insert(Rat::zero());
            while let Some(w) = frontier.pop() {
                for s in steps.iter().chain(std::iter::once(&Rat::one())) {
                    let x = &w + s;
                    if x <= *cutoff && out.insert(x.clone()) {
                        frontier.push(x);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// A basis of `H⁰` (Casimir elements `∫m`) in weights up to `cutoff`.
pub fn casimirs(cx: &Complex, cutoff: &Rat) -> Result<Vec<(Rat, DiffPoly)>, Error> {
    let weights = module_weights(cx, cutoff)?;
    let rep = cohomology(cx, (0, 0), &weights, &Options { reps: true, ..Default::default() })?;
    let mut out = Vec::new();
    for s in &rep.slices {
        for y in &s.reps {
            out.push((s.delta.clone(), y.values.get(&Vec::new()).map(|v| v.coeff(&[])).unwrap_or_default()));
        }
    }
    Ok(out)
}

/// Representatives of `H¹` over the given weights, as tables `generator ↦ value`.
pub fn derivations_mod_inner(cx: &Complex, deltas: &[Rat]) -> Result<Vec<(Rat, BTreeMap<usize, DiffPoly>)>, Error> {
    let rep = cohomology(cx, (1, 1), deltas, &Options { reps: true, ..Default::default() })?;
    let mut out = Vec::new();
    for s in &rep.slices {
        for y in &s.reps {
            let table = y.values.iter().map(|(t, v)| (t[0], v.coeff(&[0]))).collect();
            out.push((s.delta.clone(), table));
        }
    }
    Ok(out)
}

impl Complex {
    /// Whether `y` is the zero cochain; in reduced degree 0 this means `y ∈ ∂M`.
    pub fn is_null(&self, y: &Cochain) -> Result<bool, Error> {
        let y = self.normalized(y);
        if y.degree > 0 || self.flavor == super::cochain::Flavor::Basic {
            return Ok(y.is_zero());
        }
        for (w, part) in self.weight_components(&y)? {
            let s = self.slice(0, &w)?;
            match s.coordinates(&part) {
                Some(c) if c.is_empty() => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

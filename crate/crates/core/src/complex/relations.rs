//! Comparisons between complexes: LC versus PV cochains, central extensions.

use num_traits::Zero;

use super::cochain::{Cochain, Complex, ComplexKind, Flavor};
use super::cohomology::{cohomology, Options};
use crate::algebra::{central_quotient, AlgebraSpec, CoeffModule, ModuleAction};
use crate::exact_core::linalg::nullspace;
use crate::exact_core::{monomials_of_weight, DiffPoly, Rat};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSlice {
    pub degree: usize,
    pub delta: Rat,
    pub dim_lc: usize,
    pub dim_pv: usize,
    /// `d` agrees on both slice bases, read through restriction to generators.
    pub differentials_match: bool,
}

impl IsoSlice {
    pub fn passed(&self) -> bool {
        self.dim_lc == self.dim_pv && self.differentials_match
    }
}

/// The same module viewed over another algebra with identical generators.
fn module_over(m: &CoeffModule, over: &AlgebraSpec) -> Result<CoeffModule, Error> {
    match &m.action {
        ModuleAction::Image { target, images } => CoeffModule::image(over, &m.name, target.clone(), images.clone()),
        ModuleAction::Table(t) => {
            CoeffModule::table(over, &m.name, m.basis.clone(), t.iter().map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>())
        }
    }
}

fn recast(y: &Cochain, kind: ComplexKind) -> Cochain {
    Cochain { kind, ..y.clone() }
}

/// Compares `C_LC(R̄, M)` and `C_PV(V, M)`, where `V` is a differential-polynomial PVA
/// whose generators are those of the LCA `R̄`.
///
/// Both complexes store cochains by their values on generator tuples, so restriction to
/// generators is the identity on stored data.
pub fn lc_pv_isomorphism_check(
    rbar: &AlgebraSpec,
    v: &AlgebraSpec,
    m: &CoeffModule,
    degrees: (usize, usize),
    deltas: &[Rat],
) -> Result<Vec<IsoSlice>, Error> {
    if rbar.gens != v.gens {
        return Err(Error::Invalid("the LCA and the PVA must share their generators".into()));
    }
    let pv = Complex::new(v.clone(), m.clone(), ComplexKind::Pv, Flavor::Reduced)?;
    let lc = Complex::new(rbar.clone(), module_over(m, rbar)?, ComplexKind::Lc, Flavor::Reduced)?;
    let mut out = Vec::new();
    for delta in deltas {
        for n in degrees.0..=degrees.1 {
            let sl = lc.slice(n, delta)?;
            let sp = pv.slice(n, delta)?;
            let mut ok = true;
            for y in &sl.basis {
                let a = lc.differential(y)?;
                let b = pv.differential(&recast(y, ComplexKind::Pv))?;
                ok &= recast(&a, ComplexKind::Pv) == b;
            }
            for y in &sp.basis {
                let a = pv.differential(y)?;
                let b = lc.differential(&recast(y, ComplexKind::Lc))?;
                ok &= recast(&b, ComplexKind::Pv) == a;
            }
            out.push(IsoSlice { degree: n, delta: delta.clone(), dim_lc: sl.dim(), dim_pv: sp.dim(), differentials_match: ok });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtReport {
    /// `dim Hⁿ(R, M)` for `n = 0..dims_r.len()`, summed over the declared weights.
    pub dims_r: Vec<usize>,
    /// The same for the quotient `R̄`.
    pub dims_bar: Vec<usize>,
    /// `(H¹(R) − H¹(R̄)) + (H²(R̄) − H²(R))`.
    pub lhs: i64,
    /// `dim U`, `U = ker ∂|_M`, in the weights met by 1-cochains on the central generator.
    pub dim_u: usize,
}

/// The module `M` over `R` restricted to `R̄ = R/(C − c)`; `C` must act through scalars.
fn restrict(m: &CoeffModule, c_gen: usize, rbar: &AlgebraSpec) -> Result<CoeffModule, Error> {
    let remap = |g: usize| if g < c_gen { g } else { g - 1 };
    match &m.action {
        ModuleAction::Image { target, images } => {
            let imgs: Vec<DiffPoly> =
                images.iter().enumerate().filter(|(g, _)| *g != c_gen).map(|(_, p)| p.clone()).collect();
            CoeffModule::image(rbar, &m.name, target.clone(), imgs)
        }
        ModuleAction::Table(t) => {
            let entries = t.iter().filter(|((g, _), _)| *g != c_gen).map(|((g, h), v)| ((remap(*g), *h), v.clone()));
            CoeffModule::table(rbar, &m.name, m.basis.clone(), entries.collect::<Vec<_>>())
        }
    }
}

/// Cohomology of a central extension `R` by a torsion central `C` against `R̄ = R/(C − c)`,
/// in degrees `0..=max_degree` (at least 2).
pub fn central_ext_relation(
    kind: ComplexKind,
    r: &AlgebraSpec,
    c_gen: usize,
    c: &Rat,
    m: &CoeffModule,
    max_degree: usize,
    deltas: &[Rat],
) -> Result<CentralExtReport, Error> {
    let rbar = central_quotient(r, c_gen, c)?;
    let mbar = restrict(m, c_gen, &rbar)?;
    let cx = Complex::new(r.clone(), m.clone(), kind, Flavor::Reduced)?;
    let cxbar = Complex::new(rbar, mbar, kind, Flavor::Reduced)?;
    let top = max_degree.max(2);
    let hr = cohomology(&cx, (0, top), deltas, &Options::default())?;
    let hb = cohomology(&cxbar, (0, top), deltas, &Options::default())?;
    let dims_r = hr.totals();
    let dims_bar = hb.totals();
    let lhs = (dims_r[1] as i64 - dims_bar[1] as i64) + (dims_bar[2] as i64 - dims_r[2] as i64);
    let u = &m.basis;
    let mut dim_u = 0;
    for delta in deltas {
        let w = cx.value_weight(delta, &[c_gen]);
        let mons = monomials_of_weight(u, &w, m.shape())?;
        let cols: Vec<_> = mons
            .iter()
            .map(|x| {
                let dx = DiffPoly::from_monomial(x.clone(), num_traits::One::one()).partial(u);
                let tgt = monomials_of_weight(u, &(&w + Rat::from_integer(1.into())), m.shape()).unwrap_or_default();
                dx.terms()
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(mm, c)| (tgt.iter().position(|t| t == mm).unwrap_or(usize::MAX), c.clone()))
                    .collect()
            })
            .collect();
        dim_u += nullspace(&cols).len();
    }
    Ok(CentralExtReport { dims_r, dims_bar, lhs, dim_u })
}

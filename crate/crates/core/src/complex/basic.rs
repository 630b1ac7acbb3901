//! Basic cochains: Lie derivative, contraction, `∂`, the projection `π`, Cartan's formula.

use num_traits::{One, Zero};

use super::cochain::{sign, Cochain, Complex, Flavor};
use crate::algebra::{bracket, module_action};
use crate::exact_core::{DiffPoly, LambdaPoly, Rat};
use crate::Error;

impl Complex {
    pub fn with_flavor(&self, flavor: Flavor) -> Result<Complex, Error> {
        Complex::new(self.alg.clone(), self.module.clone(), self.kind, flavor)
    }

    fn parity_of(&self, a: &DiffPoly) -> Result<u32, Error> {
        match a.parity(&self.alg.gens) {
            Some(p) => Ok(p.bit() as u32),
            None if a.is_zero() => Ok(0),
            None => Err(Error::Invalid("element must be parity-homogeneous".into())),
        }
    }

    /// `a_λ Ỹ`, a cochain with one extra trailing parameter `λ`.
    ///
    /// For the reduced flavor use [`Complex::zero_mode`].
    pub fn lie_derivative(&self, a: &DiffPoly, y: &Cochain) -> Result<Cochain, Error> {
        if self.flavor != Flavor::Basic {
            return Err(Error::Invalid("the Lie derivative with symbolic λ acts on basic cochains".into()));
        }
        self.module_structure(a, y, true)
    }

    /// `a_(0) Y` on reduced cochains.
    pub fn zero_mode(&self, a: &DiffPoly, y: &Cochain) -> Result<Cochain, Error> {
        self.module_structure(a, y, false)
    }

    fn module_structure(&self, a: &DiffPoly, y: &Cochain, keep_lambda: bool) -> Result<Cochain, Error> {
        let pa = self.parity_of(a)?;
        let n = y.degree;
        let nv = y.nvars();
        let nout = if keep_lambda { nv + 1 } else { nv };
        let mut out = self.zero_cochain(n, if keep_lambda { y.nparams + 1 } else { y.nparams });
        let ident: Vec<usize> = (0..nv).collect();
        let lam = nv;
        for (py, part) in self.split_pbar(y).iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let py = py as u32;
            for t in self.tuples(n) {
                let mut total = LambdaPoly::zero(nout);
                let v = self.eval_gens(part, &t);
                if !v.is_zero() {
                    if keep_lambda {
                        total = total.add(&self.act_into(a, &v, &ident, lam, nout)?);
                    } else {
                        total = total.add(&self.act_at_zero(a, &v)?);
                    }
                }
                for i in 0..n {
                    let br = bracket(&self.alg, a, &DiffPoly::gen(t[i]))?;
                    if br.is_zero() {
                        continue;
                    }
                    let prefix: u32 = t[..i].iter().map(|&g| self.pbar_gen(g)).sum();
                    let delta = pa * (py + prefix + 1) + 1;
                    let mut forms: Vec<Vec<Rat>> = (0..nv)
                        .map(|k| {
                            let mut f = vec![Rat::zero(); nout];
                            f[k] = Rat::one();
                            f
                        })
                        .collect();
                    if keep_lambda {
                        forms[i][lam] = Rat::one();
                    }
                    for (e, b) in br.terms() {
                        if !keep_lambda && e[0] > 0 {
                            continue;
                        }
                        let mut args: Vec<DiffPoly> = t.iter().map(|&g| DiffPoly::gen(g)).collect();
                        args[i] = b.clone();
                        let w = self.eval_raw(part, py, &args)?;
                        if w.is_zero() {
                            continue;
                        }
                        let mut w = w.substitute_linear(nout, &forms);
                        if keep_lambda {
                            w = w.mul_var_pow(lam, e[0]);
                        }
                        total.add_assign_scaled(&w, &sign(delta));
                    }
                }
                out.add_value(t, &self.normalize(&total, n));
            }
        }
        Ok(out)
    }

    /// `a_(0)` applied to every coefficient.
    fn act_at_zero(&self, a: &DiffPoly, v: &LambdaPoly) -> Result<LambdaPoly, Error> {
        let mut out = LambdaPoly::zero(v.nvars());
        for (e, c) in v.terms() {
            out.add_term(e.clone(), module_action(&self.alg, &self.module, a, c)?.coeff(&[0]));
        }
        Ok(out)
    }

    /// `ι_λ(a) Ỹ = (−1)^{p̄(a)p̄(Ỹ)} Ỹ_{λ,λ_1,…}(a, a_1, …)` with `λ` a new trailing parameter.
    pub fn contraction(&self, a: &DiffPoly, y: &Cochain) -> Result<Cochain, Error> {
        if self.flavor != Flavor::Basic {
            return Err(Error::Invalid("contraction with symbolic λ acts on basic cochains".into()));
        }
        self.contract(a, y)
    }

    fn contract(&self, a: &DiffPoly, y: &Cochain) -> Result<Cochain, Error> {
        let n = y.degree;
        if n == 0 {
            return Err(Error::Invalid("contraction needs a cochain of degree ≥ 1".into()));
        }
        let pbar_a = 1 - self.parity_of(a)?;
        let np = y.nparams;
        let nout = n + np;
        let mut out = self.zero_cochain(n - 1, np + 1);
        // slot 0 ↦ new parameter, slots shift down, old parameters follow
        let map: Vec<usize> = std::iter::once(n - 1 + np).chain(0..n - 1).chain((0..np).map(|q| n - 1 + q)).collect();
        for (py, part) in self.split_pbar(y).iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            for t in self.tuples(n - 1) {
                let mut args = vec![a.clone()];
                args.extend(t.iter().map(|&g| DiffPoly::gen(g)));
                let w = self.eval_raw(part, py as u32, &args)?;
                if w.is_zero() {
                    continue;
                }
                let w = w.embed(nout, &map).scale(&sign(pbar_a * py as u32));
                out.add_value(t, &w);
            }
        }
        Ok(out)
    }

    /// `ι_0(a) Y` on reduced cochains: the contraction at `λ = 0`.
    pub fn contraction0(&self, a: &DiffPoly, y: &Cochain) -> Result<Cochain, Error> {
        let c = self.contract(a, y)?;
        let lam = c.nvars() - 1;
        let mut out = self.zero_cochain(c.degree, c.nparams - 1);
        for (t, v) in &c.values {
            let w = v.set_zero(lam).drop_var(lam);
            out.add_value(t.clone(), &self.normalize(&w, c.degree));
        }
        Ok(out)
    }

    /// `∂Ỹ = (∂ + λ_1 + … + λ_n) Ỹ`.
    pub fn partial_basic(&self, y: &Cochain) -> Cochain {
        let mut out = Cochain::zero(y.degree, y.nparams, y.flavor, y.kind);
        for (t, v) in &y.values {
            let mut w = v.partial_coeffs(self.mu());
            for i in 0..y.degree {
                w = w.add(&v.mul_var_pow(i, 1));
            }
            out.add_value(t.clone(), &w);
        }
        out
    }

    /// The projection of a basic cochain to the reduced complex.
    pub fn pi(&self, y: &Cochain) -> Result<Cochain, Error> {
        let red = self.with_flavor(Flavor::Reduced)?;
        let mut out = Cochain::zero(y.degree, y.nparams, Flavor::Reduced, y.kind);
        for (t, v) in &y.values {
            out.add_value(t.clone(), &red.normalize(v, y.degree));
        }
        Ok(out)
    }
}

/// A contraction operator, replaceable for negative controls.
pub type Contraction<'a> = &'a dyn Fn(&Complex, &DiffPoly, &Cochain) -> Result<Cochain, Error>;

/// `a_λỸ + [ι_λ(a), d̃]Ỹ` on basic cochains, with `[ι, d̃] = ι d̃ − (−1)^{p̄(a)} d̃ ι`.
///
/// With the differential and contraction conventions used here, Cartan's formula reads
/// `a_λ = −[ι_λ(a), d̃]`, so the residual vanishes.
pub fn cartan_residual(cx: &Complex, a: &DiffPoly, y: &Cochain) -> Result<Cochain, Error> {
    cartan_residual_with(cx, a, y, &|c, a, y| c.contraction(a, y))
}

pub fn cartan_residual_with(cx: &Complex, a: &DiffPoly, y: &Cochain, iota: Contraction) -> Result<Cochain, Error> {
    let pbar_a = 1 - cx.parity_of(a)?;
    let mut r = cx.lie_derivative(a, y)?.add(&iota(cx, a, &cx.differential(y)?)?);
    if y.degree >= 1 {
        let di = cx.differential(&iota(cx, a, y)?)?;
        r.add_scaled(&di, &-sign(pbar_a));
    }
    Ok(r)
}

/// `a_(0)Y + [ι_0(a), d]Y` on reduced cochains; vanishes like [`cartan_residual`].
pub fn cartan_residual0(cx: &Complex, a: &DiffPoly, y: &Cochain) -> Result<Cochain, Error> {
    let pbar_a = 1 - cx.parity_of(a)?;
    let mut r = cx.zero_mode(a, y)?.add(&cx.contraction0(a, &cx.differential(y)?)?);
    if y.degree >= 1 {
        let di = cx.differential(&cx.contraction0(a, y)?)?;
        r.add_scaled(&di, &-sign(pbar_a));
    }
    Ok(cx.normalized(&r))
}

//! Cochains, their evaluation on arbitrary arguments, and the differential.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{bracket, l1_module, module_action, module_taylor_shift, AlgebraSpec, CoeffModule, Kind};
use crate::exact_core::{normalize_slots, DiffPoly, LambdaPoly, Monomial, Rat, Shape, Universe};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// Values in `M[λ_1..λ_n]/⟨∂+λ_1+…+λ_n⟩`.
    Reduced,
    /// Values in `M[λ_1..λ_n]`.
    Basic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexKind {
    /// Arguments range over an LCA.
    Lc,
    /// Arguments range over a PVA; cochains obey the Leibniz rules.
    Pv,
}

/// A cochain stored by its values on nondecreasing generator tuples.
///
/// Values are polynomials in `degree + nparams` variables: one per slot, then inert
/// parameters (used by the Lie derivative and contraction). Reduced values are kept in
/// normal form (free of the last slot variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub nparams: usize,
    pub flavor: Flavor,
    pub kind: ComplexKind,
    pub values: BTreeMap<Vec<usize>, LambdaPoly>,
}

impl Cochain {
    pub fn zero(degree: usize, nparams: usize, flavor: Flavor, kind: ComplexKind) -> Self {
        Cochain { degree, nparams, flavor, kind, values: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.degree + self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    /// Adds `v` to the value on `tuple`.
    pub fn add_value(&mut self, tuple: Vec<usize>, v: &LambdaPoly) {
        assert_eq!(v.nvars(), self.nvars());
        if v.is_zero() {
            return;
        }
        let e = self.values.entry(tuple.clone()).or_insert_with(|| LambdaPoly::zero(v.nvars()));
        *e = e.add(v);
        if e.is_zero() {
            self.values.remove(&tuple);
        }
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Rat) {
        assert_eq!((self.degree, self.nparams), (other.degree, other.nparams));
        for (t, v) in &other.values {
            self.add_value(t.clone(), &v.scale(c));
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut r = self.clone();
        r.add_scaled(other, &Rat::one());
        r
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut r = self.clone();
        r.add_scaled(other, &-Rat::one());
        r
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        let mut r = Cochain::zero(self.degree, self.nparams, self.flavor, self.kind);
        r.add_scaled(self, c);
        r
    }
}

pub(crate) fn sign(bit: u32) -> Rat {
    if bit % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    }
}

/// A cochain complex `C(A, M)` of the given kind and flavor.
#[derive(Clone, Debug)]
pub struct Complex {
    pub alg: AlgebraSpec,
    pub module: CoeffModule,
    pub kind: ComplexKind,
    pub flavor: Flavor,
}

impl Complex {
    pub fn new(alg: AlgebraSpec, module: CoeffModule, kind: ComplexKind, flavor: Flavor) -> Result<Self, Error> {
        match kind {
            ComplexKind::Lc if alg.kind != Kind::Lca => {
                return Err(Error::Unsupported("the LC complex is built over an LCA".into()))
            }
            ComplexKind::Pv if alg.kind != Kind::Pva => {
                return Err(Error::Invalid("the PV complex needs a PVA".into()))
            }
            ComplexKind::Pv if !module.has_product() => {
                return Err(Error::Invalid(format!("module `{}` has no product action", module.name)))
            }
            _ => {}
        }
        if flavor == Flavor::Basic && kind == ComplexKind::Pv {
            return Err(Error::Unsupported("basic cochains are built for the LC complex only".into()));
        }
        Ok(Complex { alg, module, kind, flavor })
    }

    pub fn mu(&self) -> &Universe {
        &self.module.basis
    }

    pub fn shape(&self) -> Shape {
        self.module.shape()
    }

    /// `p̄` of a generator.
    pub fn pbar_gen(&self, g: usize) -> u32 {
        1 - self.alg.gens.parity(g).bit() as u32
    }

    pub fn pbar_mono(&self, m: &Monomial) -> u32 {
        1 - m.parity(&self.alg.gens).bit() as u32
    }

    /// Whether a generator tuple of this length carries values at all.
    pub fn tuple_allowed(&self, t: &[usize]) -> bool {
        let tor = t.iter().any(|&g| self.alg.gens.is_torsion(g));
        match self.flavor {
            Flavor::Reduced => !(tor && t.len() >= 2),
            Flavor::Basic => !tor,
        }
    }

    /// Canonical (nondecreasing) generator tuples of length `n` that may carry values.
    pub fn tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let k = self.alg.gens.len();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(cx: &Complex, start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                if cx.tuple_allowed(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for g in start..k {
                cur.push(g);
                rec(cx, g, k, n, cur, out);
                cur.pop();
            }
        }
        rec(self, 0, k, n, &mut cur, &mut out);
        out
    }

    /// Weight of the values of a weight-`delta` cochain on tuple `t`.
    pub fn value_weight(&self, delta: &Rat, t: &[usize]) -> Rat {
        let mut w = delta - Rat::from_integer((t.len() as i64).into());
        for &g in t {
            w += self.alg.gens.weight(g);
        }
        w
    }

    /// Canonical representative of a value with `slots` slot variables.
    pub fn normalize(&self, p: &LambdaPoly, slots: usize) -> LambdaPoly {
        if self.flavor == Flavor::Reduced && slots >= 1 {
            normalize_slots(self.mu(), p, slots)
        } else {
            p.clone()
        }
    }

    pub fn normalized(&self, y: &Cochain) -> Cochain {
        let mut r = Cochain::zero(y.degree, y.nparams, y.flavor, y.kind);
        for (t, v) in &y.values {
            r.add_value(t.clone(), &self.normalize(v, y.degree));
        }
        r
    }

    pub fn zero_cochain(&self, degree: usize, nparams: usize) -> Cochain {
        Cochain::zero(degree, nparams, self.flavor, self.kind)
    }

    fn check_cochain(&self, y: &Cochain) -> Result<(), Error> {
        if y.flavor != self.flavor || y.kind != self.kind {
            return Err(Error::Invalid("cochain belongs to a different complex".into()));
        }
        for (t, v) in &y.values {
            if t.len() != y.degree || v.nvars() != y.nvars() {
                return Err(Error::Invalid("cochain value of the wrong shape".into()));
            }
            if t.windows(2).any(|w| w[0] > w[1]) || t.iter().any(|&g| g >= self.alg.gens.len()) {
                return Err(Error::Invalid("cochain values must sit on nondecreasing generator tuples".into()));
            }
        }
        Ok(())
    }

    /// Splits `y` into its `p̄`-homogeneous parts `[p̄ = 0, p̄ = 1]`.
    pub fn split_pbar(&self, y: &Cochain) -> [Cochain; 2] {
        let mut out = [self.zero_cochain(y.degree, y.nparams), self.zero_cochain(y.degree, y.nparams)];
        for (t, v) in &y.values {
            let base = 1 + y.degree as u32 + t.iter().map(|&g| self.alg.gens.parity(g).bit() as u32).sum::<u32>();
            for (pv, part) in v.split_parity(self.mu()).iter().enumerate() {
                out[((base + pv as u32) % 2) as usize].add_value(t.clone(), part);
            }
        }
        out
    }

    /// `Y(args)` with arbitrary arguments (generator combinations for the LC kind).
    ///
    /// The result has `degree + nparams` variables and is normalized for the reduced flavor.
    pub fn evaluate(&self, y: &Cochain, args: &[DiffPoly]) -> Result<LambdaPoly, Error> {
        self.check_cochain(y)?;
        if args.len() != y.degree {
            return Err(Error::Invalid(format!("{} arguments given to a {}-cochain", args.len(), y.degree)));
        }
        let mut out = LambdaPoly::zero(y.nvars());
        for (py, part) in self.split_pbar(y).iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            out = out.add(&self.eval_raw(part, py as u32, args)?);
        }
        Ok(self.normalize(&out, y.degree))
    }

    /// Evaluation of a `p̄`-homogeneous cochain, without final normalization.
    pub(crate) fn eval_raw(&self, y: &Cochain, py: u32, args: &[DiffPoly]) -> Result<LambdaPoly, Error> {
        for a in args {
            crate::exact_core::check_universe(&self.alg.gens, a)?;
        }
        let mut out = LambdaPoly::zero(y.nvars());
        let mut monos = Vec::with_capacity(args.len());
        self.expand(y, py, args, &mut monos, &Rat::one(), &mut out)?;
        Ok(out)
    }

    fn expand(
        &self,
        y: &Cochain,
        py: u32,
        args: &[DiffPoly],
        monos: &mut Vec<Monomial>,
        coeff: &Rat,
        out: &mut LambdaPoly,
    ) -> Result<(), Error> {
        let k = monos.len();
        if k == args.len() {
            let v = self.eval_mono(y, py, monos)?;
            out.add_assign_scaled(&v, coeff);
            return Ok(());
        }
        for (m, c) in args[k].terms() {
            monos.push(m.clone());
            self.expand(y, py, args, monos, &(coeff * c), out)?;
            monos.pop();
        }
        Ok(())
    }

    fn eval_mono(&self, y: &Cochain, py: u32, monos: &[Monomial]) -> Result<LambdaPoly, Error> {
        let nv = y.nvars();
        if !monos.is_empty() && monos.iter().any(|m| m.is_one()) {
            return Ok(LambdaPoly::zero(nv));
        }
        if let Some(i) = monos.iter().position(|m| m.degree() > 1) {
            if self.kind == ComplexKind::Lc {
                return Err(Error::Invalid("LC cochains take F[∂]-combinations of generators".into()));
            }
            let u = &self.alg.gens;
            let (f, rest) = monos[i].split_first().unwrap();
            let fm = Monomial::canonicalize(u, vec![f]).unwrap().1;
            let prefix: u32 = monos[..i].iter().map(|m| self.pbar_mono(m)).sum();
            let pb = fm.parity(u).bit() as u32;
            let pc = rest.parity(u).bit() as u32;
            let fpoly = DiffPoly::from_monomial(fm.clone(), Rat::one());
            let rpoly = DiffPoly::from_monomial(rest.clone(), Rat::one());
            let mut m1 = monos.to_vec();
            m1[i] = rest;
            let v1 = self.eval_mono(y, py, &m1)?;
            let t1 = module_taylor_shift(&self.alg, &self.module, &fpoly, &v1, i)?;
            let mut m2 = monos.to_vec();
            m2[i] = fm;
            let v2 = self.eval_mono(y, py, &m2)?;
            let t2 = module_taylor_shift(&self.alg, &self.module, &rpoly, &v2, i)?;
            let mut out = t1.scale(&sign(pb * (py + prefix)));
            out.add_assign_scaled(&t2, &sign(pc * (pb + py + prefix)));
            return Ok(out);
        }
        let mut gens = Vec::with_capacity(monos.len());
        let mut orders = Vec::with_capacity(monos.len());
        for m in monos {
            let (g, k) = m.factors()[0];
            gens.push(g as usize);
            orders.push(k);
        }
        let mut v = self.eval_gens(y, &gens);
        for (slot, &k) in orders.iter().enumerate() {
            if k > 0 {
                v = v.mul_var_pow(slot, k).scale(&sign(k));
            }
        }
        Ok(v)
    }

    /// `Y` on a generator tuple in any order, through the symmetry of the slots.
    pub(crate) fn eval_gens(&self, y: &Cochain, gens: &[usize]) -> LambdaPoly {
        let n = gens.len();
        let nv = y.nvars();
        if n == 0 {
            return y.values.get(&Vec::new()).cloned().unwrap_or_else(|| LambdaPoly::zero(nv));
        }
        if !self.tuple_allowed(gens) {
            return LambdaPoly::zero(nv);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&k| gens[k]);
        let mut s = 0u32;
        for a in 0..n {
            for b in a + 1..n {
                if gens[a] > gens[b] {
                    s += self.pbar_gen(gens[a]) * self.pbar_gen(gens[b]);
                }
            }
        }
        let t: Vec<usize> = perm.iter().map(|&k| gens[k]).collect();
        let Some(v) = y.values.get(&t) else { return LambdaPoly::zero(nv) };
        let map: Vec<usize> = perm.iter().copied().chain(n..nv).collect();
        v.embed(nv, &map).scale(&sign(s))
    }

    /// `a_λ` applied to every coefficient of `v`, whose variables are renamed by `map`
    /// into `nout` variables; `λ` becomes variable `var`.
    pub(crate) fn act_into(
        &self,
        a: &DiffPoly,
        v: &LambdaPoly,
        map: &[usize],
        var: usize,
        nout: usize,
    ) -> Result<LambdaPoly, Error> {
        let mut out = LambdaPoly::zero(nout);
        for (e, c) in v.terms() {
            let act = module_action(&self.alg, &self.module, a, c)?;
            let mut ne = vec![0u32; nout];
            for (k, &x) in e.iter().enumerate() {
                ne[map[k]] += x;
            }
            for (ea, ca) in act.terms() {
                let mut e2 = ne.clone();
                e2[var] += ea[0];
                out.add_term(e2, ca.clone());
            }
        }
        Ok(out)
    }

    /// The differential, computed on canonical tuples of degree `n+1`.
    pub fn differential(&self, y: &Cochain) -> Result<Cochain, Error> {
        self.check_cochain(y)?;
        let mut out = self.zero_cochain(y.degree + 1, y.nparams);
        for (py, part) in self.split_pbar(y).iter().enumerate() {
            if !part.is_zero() {
                self.d_homog(part, py as u32, &mut out)?;
            }
        }
        Ok(out)
    }

    fn d_homog(&self, y: &Cochain, py: u32, out: &mut Cochain) -> Result<(), Error> {
        let n = y.degree;
        let np = y.nparams;
        let nout = n + 1 + np;
        for t in self.tuples(n + 1) {
            let pb: Vec<u32> = t.iter().map(|&g| self.pbar_gen(g)).collect();
            let mut total = LambdaPoly::zero(nout);
            for i in 0..=n {
                let rest: Vec<usize> = (0..=n).filter(|&k| k != i).map(|k| t[k]).collect();
                let v = self.eval_gens(y, &rest);
                if v.is_zero() {
                    continue;
                }
                let map: Vec<usize> =
                    (0..n).map(|k| if k < i { k } else { k + 1 }).chain((0..np).map(|q| n + 1 + q)).collect();
                let prefix: u32 = pb[..i].iter().sum();
                let gamma = pb[i] * (py + prefix + 1) + 1;
                let term = self.act_into(&DiffPoly::gen(t[i]), &v, &map, i, nout)?;
                total.add_assign_scaled(&term, &sign(gamma));
            }
            for i in 0..=n {
                for j in i + 1..=n {
                    let br = bracket(&self.alg, &DiffPoly::gen(t[i]), &DiffPoly::gen(t[j]))?;
                    if br.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = (0..=n).filter(|&k| k != i && k != j).collect();
                    let before_i: u32 = pb[..i].iter().sum();
                    let before_j: u32 = (0..j).filter(|&k| k != i).map(|k| pb[k]).sum();
                    let gamma = py + pb[i] * (before_i + 1) + pb[j] * before_j;
                    let mut forms = Vec::with_capacity(n + np);
                    let mut f0 = vec![Rat::zero(); nout];
                    f0[i] = Rat::one();
                    f0[j] = Rat::one();
                    forms.push(f0);
                    for &k in &rest {
                        let mut f = vec![Rat::zero(); nout];
                        f[k] = Rat::one();
                        forms.push(f);
                    }
                    for q in 0..np {
                        let mut f = vec![Rat::zero(); nout];
                        f[n + 1 + q] = Rat::one();
                        forms.push(f);
                    }
                    for (e, b) in br.terms() {
                        let mut args = vec![b.clone()];
                        args.extend(rest.iter().map(|&k| DiffPoly::gen(t[k])));
                        let w = self.eval_raw(y, py, &args)?;
                        if w.is_zero() {
                            continue;
                        }
                        let sub = w.substitute_linear(nout, &forms).mul_var_pow(i, e[0]);
                        total.add_assign_scaled(&sub, &sign(gamma));
                    }
                }
            }
            let total = self.normalize(&total, n + 1);
            out.add_value(t, &total);
        }
        Ok(())
    }

    /// `L_(1)` on an algebra generator: symbolic when a Virasoro element is designated,
    /// otherwise the declared weight.
    pub fn l1_alg(&self, g: usize) -> Result<DiffPoly, Error> {
        let a = DiffPoly::gen(g);
        match &self.alg.virasoro {
            Some(v) => Ok(bracket(&self.alg, &v.element, &a)?.coeff(&[1])),
            None => Ok(a.scale(self.alg.gens.weight(g))),
        }
    }

    /// `L_(1)` on a module element.
    pub fn l1_mod(&self, m: &DiffPoly) -> Result<DiffPoly, Error> {
        match &self.alg.virasoro {
            Some(_) => l1_module(&self.alg, &self.module, m),
            None => {
                let mut out = DiffPoly::zero();
                for (w, part) in m.weight_components(self.mu()) {
                    out = out.add(&part.scale(&w));
                }
                Ok(out)
            }
        }
    }

    /// The energy operator `(EY)(a) = (E+n)Y(a) − Σ_i Y(..L_(1)a_i..)`, with
    /// `E = L_(1) + Σ λ_i d/dλ_i` on values.
    pub fn energy(&self, y: &Cochain) -> Result<Cochain, Error> {
        self.check_cochain(y)?;
        let n = y.degree;
        let mut out = self.zero_cochain(n, y.nparams);
        let l1: Vec<DiffPoly> = (0..self.alg.gens.len()).map(|g| self.l1_alg(g)).collect::<Result<_, _>>()?;
        for (t, v) in &y.values {
            let mut val = LambdaPoly::zero(y.nvars());
            for (e, c) in v.terms() {
                let deg: u32 = e.iter().sum();
                let lc = self.l1_mod(c)?;
                val.add_term(e.clone(), lc.add(&c.scale(&Rat::from_integer(((deg as usize + n) as i64).into()))));
            }
            for i in 0..n {
                let mut args: Vec<DiffPoly> = t.iter().map(|&g| DiffPoly::gen(g)).collect();
                args[i] = l1[t[i]].clone();
                let w = self.evaluate(y, &args)?;
                val = val.sub(&w);
            }
            out.add_value(t.clone(), &self.normalize(&val, n));
        }
        Ok(out)
    }

    /// Splits a cochain into parts of fixed `Δ(Y)` by the weights of its values.
    pub fn weight_components(&self, y: &Cochain) -> Result<BTreeMap<Rat, Cochain>, Error> {
        let mut out: BTreeMap<Rat, Cochain> = BTreeMap::new();
        for (t, v) in &y.values {
            let shift = self.value_weight(&Rat::zero(), t);
            for (w, part) in v.weight_components(self.mu()) {
                let d = w - &shift;
                out.entry(d).or_insert_with(|| self.zero_cochain(y.degree, y.nparams)).add_value(t.clone(), &part);
            }
        }
        Ok(out)
    }
}

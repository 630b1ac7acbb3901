//! Polynomials in `λ_1..λ_n` with coefficients in a differential polynomial algebra or module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::diffpoly::{format_monomial, DiffPoly};
use super::gens::Universe;
use super::rat::{binomial, factorial, Rat};

pub type Exps = Vec<u32>;

/// Polynomial in the λ-variables with scalar coefficients.
pub type ScalarPoly = BTreeMap<Exps, Rat>;

fn scalar_mul(a: &ScalarPoly, b: &ScalarPoly) -> ScalarPoly {
    let mut r = ScalarPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            let slot = r.entry(e).or_insert_with(Rat::zero);
            *slot += c;
        }
    }
    r.retain(|_, c| !c.is_zero());
    r
}

/// Linear form `Σ form[j] λ_j` as a scalar polynomial.
fn linear_form(form: &[Rat]) -> ScalarPoly {
    let n = form.len();
    let mut r = ScalarPoly::new();
    for (j, c) in form.iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0; n];
            e[j] = 1;
            r.insert(e, c.clone());
        }
    }
    r
}

fn scalar_one(n: usize) -> ScalarPoly {
    let mut r = ScalarPoly::new();
    r.insert(vec![0; n], Rat::one());
    r
}

/// Caches powers of a fixed family of linear forms.
struct FormPowers {
    n: usize,
    forms: Vec<ScalarPoly>,
    cache: HashMap<(usize, u32), ScalarPoly>,
}

impl FormPowers {
    fn new(n: usize, forms: &[Vec<Rat>]) -> Self {
        FormPowers { n, forms: forms.iter().map(|f| linear_form(f)).collect(), cache: HashMap::new() }
    }

    fn pow(&mut self, i: usize, e: u32) -> ScalarPoly {
        if e == 0 {
            return scalar_one(self.n);
        }
        if let Some(p) = self.cache.get(&(i, e)) {
            return p.clone();
        }
        let prev = self.pow(i, e - 1);
        let p = scalar_mul(&prev, &self.forms[i]);
        self.cache.insert((i, e), p.clone());
        p
    }
}

/// `Σ_e λ^e · c_e` with `c_e` a differential polynomial (algebra or module element).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaPoly {
    nvars: usize,
    terms: BTreeMap<Exps, DiffPoly>,
}

impl LambdaPoly {
    pub fn zero(nvars: usize) -> Self {
        LambdaPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: DiffPoly) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn term(nvars: usize, exps: Exps, c: DiffPoly) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// `λ_i` times the coefficient `c`.
    pub fn var(nvars: usize, i: usize, c: DiffPoly) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exps, DiffPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> DiffPoly {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Exps, c: DiffPoly) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &LambdaPoly, c: &Rat) {
        assert_eq!(self.nvars, other.nvars, "λ-variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (e, p) in &other.terms {
            self.add_term(e.clone(), p.scale(c));
        }
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &Rat::one());
        r
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &-Rat::one());
        r
    }

    pub fn scale(&self, c: &Rat) -> LambdaPoly {
        let mut r = Self::zero(self.nvars);
        r.add_assign_scaled(self, c);
        r
    }

    pub fn neg(&self) -> LambdaPoly {
        self.scale(&-Rat::one())
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&DiffPoly) -> DiffPoly) -> LambdaPoly {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// `b · p`, multiplying every coefficient on the left.
    pub fn lmul(&self, u: &Universe, b: &DiffPoly) -> LambdaPoly {
        self.map_coeffs(|c| b.mul(u, c))
    }

    /// `p · b`, multiplying every coefficient on the right.
    pub fn rmul(&self, u: &Universe, b: &DiffPoly) -> LambdaPoly {
        self.map_coeffs(|c| c.mul(u, b))
    }

    pub fn mul_scalar_poly(&self, s: &ScalarPoly) -> LambdaPoly {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for (es, cs) in s {
                let ne: Exps = e.iter().zip(es).map(|(x, y)| x + y).collect();
                r.add_term(ne, c.scale(cs));
            }
        }
        r
    }

    pub fn mul_var_pow(&self, i: usize, k: u32) -> LambdaPoly {
        if k == 0 {
            return self.clone();
        }
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] += k;
            r.terms.insert(ne, c.clone());
        }
        r
    }

    /// Multiplies by the linear form `Σ form[j] λ_j`.
    pub fn mul_linear(&self, form: &[Rat]) -> LambdaPoly {
        self.mul_scalar_poly(&linear_form(form))
    }

    /// Applies `∂` to every coefficient.
    pub fn partial_coeffs(&self, u: &Universe) -> LambdaPoly {
        self.map_coeffs(|c| c.partial(u))
    }

    /// Renames variable `i` to variable `map[i]` of a polynomial in `new_n` variables.
    pub fn embed(&self, new_n: usize, map: &[usize]) -> LambdaPoly {
        assert_eq!(map.len(), self.nvars);
        let mut r = Self::zero(new_n);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_n];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            r.add_term(ne, c.clone());
        }
        r
    }

    /// Pure relabelling `λ_i ↦ λ_{σ(i)}`.
    pub fn permute(&self, sigma: &[usize]) -> Result<LambdaPoly, crate::Error> {
        if sigma.len() != self.nvars {
            return Err(crate::Error::Invalid(format!(
                "permutation of length {} applied to {} variables",
                sigma.len(),
                self.nvars
            )));
        }
        let mut seen = vec![false; sigma.len()];
        for &s in sigma {
            if s >= sigma.len() || seen[s] {
                return Err(crate::Error::Invalid("not a permutation".into()));
            }
            seen[s] = true;
        }
        Ok(self.embed(self.nvars, sigma))
    }

    /// Substitutes `λ_i ↦ Σ_j forms[i][j] μ_j` into a polynomial in `new_n` variables `μ`.
    pub fn substitute_linear(&self, new_n: usize, forms: &[Vec<Rat>]) -> LambdaPoly {
        assert_eq!(forms.len(), self.nvars);
        let mut fp = FormPowers::new(new_n, forms);
        let mut r = Self::zero(new_n);
        for (e, c) in &self.terms {
            let mut s = scalar_one(new_n);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    s = scalar_mul(&s, &fp.pow(i, k));
                }
            }
            for (es, cs) in &s {
                r.add_term(es.clone(), c.scale(cs));
            }
        }
        r
    }

    /// Substitutes `λ_j ↦ Σ_k form[k] λ_k + t·∂`, with `∂` acting on coefficients.
    ///
    /// `form[j]` must vanish; the result does not involve `λ_j`.
    pub fn substitute_with_partial(&self, u: &Universe, j: usize, form: &[Rat], t: &Rat) -> LambdaPoly {
        assert!(form[j].is_zero());
        let n = self.nvars;
        let mut fp = FormPowers::new(n, &[form.to_vec()]);
        let mut r = Self::zero(n);
        for (e, c) in &self.terms {
            let k = e[j];
            if k == 0 {
                r.add_term(e.clone(), c.clone());
                continue;
            }
            let mut base = e.clone();
            base[j] = 0;
            let mut dc = c.clone();
            let mut tpow = Rat::one();
            for s in 0..=k {
                if s > 0 {
                    dc = dc.partial(u);
                    tpow = &tpow * t;
                }
                if dc.is_zero() || tpow.is_zero() {
                    break;
                }
                let coef = binomial(k, s) * &tpow;
                let powf = fp.pow(0, k - s);
                let piece = LambdaPoly::term(n, base.clone(), dc.scale(&coef));
                r.add_assign_scaled(&piece.mul_scalar_poly(&powf), &Rat::one());
            }
        }
        r
    }

    /// Substitutes `λ_j ↦ −λ_j − ∂`, with `∂` acting on coefficients.
    pub fn reflect(&self, u: &Universe, j: usize) -> LambdaPoly {
        let n = self.nvars;
        let mut r = Self::zero(n);
        for (e, c) in &self.terms {
            let k = e[j];
            let mut dc = c.clone();
            for t in 0..=k {
                if t > 0 {
                    dc = dc.partial(u);
                }
                if dc.is_zero() {
                    break;
                }
                // (−λ−∂)^k = (−1)^k Σ_t C(k,t) λ^{k−t} ∂^t
                let mut coef = binomial(k, t);
                if k % 2 == 1 {
                    coef = -coef;
                }
                let mut ne = e.clone();
                ne[j] = k - t;
                r.add_term(ne, dc.scale(&coef));
            }
        }
        r
    }

    /// Substitutes `λ_j ↦ λ_j + ∂`, with `∂` acting on coefficients.
    pub fn shift_by_partial(&self, u: &Universe, j: usize) -> LambdaPoly {
        let n = self.nvars;
        let mut r = Self::zero(n);
        for (e, c) in &self.terms {
            let k = e[j];
            let mut dc = c.clone();
            for t in 0..=k {
                if t > 0 {
                    dc = dc.partial(u);
                }
                if dc.is_zero() {
                    break;
                }
                let mut ne = e.clone();
                ne[j] = k - t;
                r.add_term(ne, dc.scale(&binomial(k, t)));
            }
        }
        r
    }

    /// Sets `λ_j = 0`.
    pub fn set_zero(&self, j: usize) -> LambdaPoly {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                r.add_term(e.clone(), c.clone());
            }
        }
        r
    }

    /// Removes variable `j`, which must not occur.
    pub fn drop_var(&self, j: usize) -> LambdaPoly {
        let mut r = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            assert_eq!(e[j], 0, "dropping a variable that occurs");
            let mut ne = e.clone();
            ne.remove(j);
            r.add_term(ne, c.clone());
        }
        r
    }

    /// Inserts a fresh variable at position `j`.
    pub fn insert_var(&self, j: usize) -> LambdaPoly {
        let mut r = Self::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.insert(j, 0);
            r.add_term(ne, c.clone());
        }
        r
    }

    /// `d/dλ_j`.
    pub fn derivative(&self, j: usize) -> LambdaPoly {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[j] > 0 {
                let mut ne = e.clone();
                ne[j] -= 1;
                r.add_term(ne, c.scale(&Rat::from_integer(e[j].into())));
            }
        }
        r
    }

    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|e| e[j]).max().unwrap_or(0)
    }

    /// `Σ_k (∂^k b)(∂_{λ_i}^k p)/k!`; coefficients multiplied as `b·c`.
    pub fn taylor_shift(&self, u: &Universe, b: &DiffPoly, i: usize) -> LambdaPoly {
        let mut r = Self::zero(self.nvars);
        let mut db = b.clone();
        let mut dp = self.clone();
        let mut k = 0u32;
        loop {
            if db.is_zero() || dp.is_zero() {
                break;
            }
            let piece = dp.lmul(u, &db).scale(&(Rat::one() / factorial(k)));
            r.add_assign_scaled(&piece, &Rat::one());
            db = db.partial(u);
            dp = dp.derivative(i);
            k += 1;
        }
        r
    }

    /// Weight of a homogeneous polynomial (each `λ` has weight 1); `None` if zero or mixed.
    pub fn weight(&self, u: &Universe) -> Option<Rat> {
        let mut w: Option<Rat> = None;
        for (e, c) in &self.terms {
            let cw = c.weight(u)?;
            let tw = cw + Rat::from_integer(e.iter().sum::<u32>().into());
            match &w {
                None => w = Some(tw),
                Some(x) if *x == tw => {}
                Some(_) => return None,
            }
        }
        w
    }

    /// Decomposition by weight.
    pub fn weight_components(&self, u: &Universe) -> BTreeMap<Rat, LambdaPoly> {
        let mut out: BTreeMap<Rat, LambdaPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let deg = Rat::from_integer(e.iter().sum::<u32>().into());
            for (w, part) in c.weight_components(u) {
                out.entry(w + &deg)
                    .or_insert_with(|| LambdaPoly::zero(self.nvars))
                    .add_term(e.clone(), part);
            }
        }
        out
    }

    /// Splits into parity-homogeneous parts (by coefficient parity).
    pub fn split_parity(&self, u: &Universe) -> [LambdaPoly; 2] {
        let mut out = [Self::zero(self.nvars), Self::zero(self.nvars)];
        for (e, c) in &self.terms {
            let [ev, od] = c.split_parity(u);
            out[0].add_term(e.clone(), ev);
            out[1].add_term(e.clone(), od);
        }
        out
    }

    /// Flattened `(exponents, monomial) → coefficient` view.
    pub fn flat(&self) -> impl Iterator<Item = (&Exps, &super::diffpoly::Monomial, &Rat)> {
        self.terms.iter().flat_map(|(e, c)| c.terms().iter().map(move |(m, r)| (e, m, r)))
    }

    pub fn display<'a>(&'a self, u: &'a Universe, names: &'a [String]) -> DisplayLambda<'a> {
        DisplayLambda { p: self, u, names }
    }
}

/// Formats `λ`-polynomials as `coef*lambda1^2*d*u*...` terms joined by ` + `.
pub struct DisplayLambda<'a> {
    p: &'a LambdaPoly,
    u: &'a Universe,
    names: &'a [String],
}

impl fmt::Display for DisplayLambda<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.p.terms() {
            for (m, r) in c.terms() {
                let mut parts: Vec<String> = Vec::new();
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => parts.push(self.names[i].clone()),
                        _ => parts.push(format!("{}^{k}", self.names[i])),
                    }
                }
                let body = format_monomial(m, self.u);
                if !body.is_empty() {
                    parts.push(body);
                }
                super::diffpoly::write_term(f, first, r, &parts.join("*"))?;
                first = false;
            }
        }
        Ok(())
    }
}

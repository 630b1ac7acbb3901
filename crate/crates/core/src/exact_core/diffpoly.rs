//! Differential superpolynomials `F[u_i^(k)]` with Koszul signs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::gens::{Parity, Universe};
use super::rat::{int, Rat};

/// A factor `u_g^(k)`: generator index and derivative order.
pub type Factor = (u32, u32);

/// A monomial stored as a sorted list of factors, ascending by `(generator, order)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Factor>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Builds the canonical form of an ordered product of factors.
    ///
    /// Returns `None` when an odd factor repeats, otherwise the Koszul sign
    /// (`true` for negative) and the sorted monomial.
    pub fn canonicalize(u: &Universe, mut factors: Vec<Factor>) -> Option<(bool, Monomial)> {
        let mut neg = false;
        // insertion sort, counting transpositions of odd pairs
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j - 1] > factors[j] {
                if u.is_odd(factors[j - 1].0 as usize) && u.is_odd(factors[j].0 as usize) {
                    neg = !neg;
                }
                factors.swap(j - 1, j);
                j -= 1;
            }
        }
        for w in factors.windows(2) {
            if w[0] == w[1] && u.is_odd(w[0].0 as usize) {
                return None;
            }
        }
        Some((neg, Monomial(factors)))
    }

    pub fn parity(&self, u: &Universe) -> Parity {
        let odd = self.0.iter().filter(|f| u.is_odd(f.0 as usize)).count();
        Parity::from_bit((odd % 2) as u8)
    }

    pub fn weight(&self, u: &Universe) -> Rat {
        let mut w = Rat::zero();
        for &(g, k) in &self.0 {
            w += u.weight(g as usize) + int(k as i64);
        }
        w
    }

    /// Splits off the first factor: `m = f · rest` holds without sign.
    pub fn split_first(&self) -> Option<(Factor, Monomial)> {
        let (first, rest) = self.0.split_first()?;
        Some((*first, Monomial(rest.to_vec())))
    }
}

/// Element of a differential superpolynomial algebra: a finite map monomial → coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_monomial(Monomial::one(), c)
    }

    pub fn from_monomial(m: Monomial, c: Rat) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    /// The generator `u_g`.
    pub fn gen(g: usize) -> Self {
        Self::gen_deriv(g, 0)
    }

    /// `u_g^(k)`; callers must not request derivatives of torsion generators.
    pub fn gen_deriv(g: usize, k: u32) -> Self {
        Self::from_monomial(Monomial(vec![(g as u32, k)]), Rat::one())
    }

    /// Builds the product of the given factors, in the given order, times `c`.
    pub fn product(u: &Universe, factors: Vec<Factor>, c: Rat) -> Self {
        match Monomial::canonicalize(u, factors) {
            None => DiffPoly::zero(),
            Some((neg, m)) => Self::from_monomial(m, if neg { -c } else { c }),
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &DiffPoly, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &Rat::one());
        r
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &-Rat::one());
        r
    }

    pub fn scale(&self, c: &Rat) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn neg(&self) -> DiffPoly {
        self.scale(&-Rat::one())
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rat::zero)
    }

    /// Supercommutative product.
    pub fn mul(&self, u: &Universe, other: &DiffPoly) -> DiffPoly {
        let mut r = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut fs = ma.0.clone();
                fs.extend_from_slice(&mb.0);
                if let Some((neg, m)) = Monomial::canonicalize(u, fs) {
                    let c = ca * cb;
                    r.add_term(m, if neg { -c } else { c });
                }
            }
        }
        r
    }

    /// The even derivation `∂`.
    pub fn partial(&self, u: &Universe) -> DiffPoly {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            for i in 0..m.0.len() {
                let (g, k) = m.0[i];
                if u.is_torsion(g as usize) {
                    continue;
                }
                let mut fs = m.0.clone();
                fs[i] = (g, k + 1);
                // raising an order never moves an odd factor past another odd factor
                if let Some((neg, nm)) = Monomial::canonicalize(u, fs) {
                    r.add_term(nm, if neg { -c.clone() } else { c.clone() });
                }
            }
        }
        r
    }

    pub fn partial_n(&self, u: &Universe, n: u32) -> DiffPoly {
        let mut r = self.clone();
        for _ in 0..n {
            if r.is_zero() {
                break;
            }
            r = r.partial(u);
        }
        r
    }

    /// Parity of a homogeneous element; `None` for zero or mixed parity.
    pub fn parity(&self, u: &Universe) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(u));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Weight of a homogeneous element; `None` for zero or mixed weight.
    pub fn weight(&self, u: &Universe) -> Option<Rat> {
        let mut it = self.terms.keys().map(|m| m.weight(u));
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Decomposition into parity-homogeneous parts.
    pub fn split_parity(&self, u: &Universe) -> [DiffPoly; 2] {
        let mut out = [DiffPoly::zero(), DiffPoly::zero()];
        for (m, c) in &self.terms {
            out[m.parity(u).bit() as usize].add_term(m.clone(), c.clone());
        }
        out
    }

    /// Decomposition into weight-homogeneous parts.
    pub fn weight_components(&self, u: &Universe) -> BTreeMap<Rat, DiffPoly> {
        let mut out: BTreeMap<Rat, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight(u)).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Largest generator index used, for universe checks.
    pub fn max_gen(&self) -> Option<u32> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|f| f.0)).max()
    }

    /// Applies a substitution to every factor, `u_g^(k) ↦ f(g, k)`, multiplying out in order.
    pub fn substitute(
        &self,
        target: &Universe,
        f: &mut dyn FnMut(u32, u32) -> DiffPoly,
    ) -> DiffPoly {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            for &(g, k) in &m.0 {
                acc = acc.mul(target, &f(g, k));
                if acc.is_zero() {
                    break;
                }
            }
            r.add_assign_scaled(&acc, &Rat::one());
        }
        r
    }

    pub fn display<'a>(&'a self, u: &'a Universe) -> DisplayPoly<'a> {
        DisplayPoly { p: self, u }
    }
}

/// Formats a monomial as `d^k*u*...`; the unit prints as the empty string.
pub fn format_monomial(m: &Monomial, u: &Universe) -> String {
    let mut parts = Vec::new();
    for &(g, k) in m.factors() {
        let id = &u.gen(g as usize).id;
        match k {
            0 => parts.push(id.clone()),
            1 => parts.push(format!("d*{id}")),
            _ => parts.push(format!("d^{k}*{id}")),
        }
    }
    parts.join("*")
}

pub struct DisplayPoly<'a> {
    p: &'a DiffPoly,
    u: &'a Universe,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.p.terms().iter().enumerate() {
            write_term(f, k == 0, c, &format_monomial(m, self.u))?;
        }
        Ok(())
    }
}

/// Writes `± c*body` as a summand, dropping unit coefficients.
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rat, body: &str) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    let a = c.abs();
    if body.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{a}*{body}")
    }
}

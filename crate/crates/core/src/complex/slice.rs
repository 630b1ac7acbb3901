//! Finite bases of cochains of fixed degree and conformal weight.

use std::collections::HashMap;

use num_traits::One;

use super::cochain::{sign, Cochain, Complex, Flavor};
use crate::exact_core::linalg::{nullspace, Echelon, SparseVec};
use crate::exact_core::{monomials_of_weight, weight_slice_basis, DiffPoly, Exps, LambdaPoly, Monomial, Rat};
use crate::Error;

type Key = (Vec<usize>, Exps, Monomial);

/// A basis of the `(n, Δ)` cochain slice with exact coordinates.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub degree: usize,
    pub delta: Rat,
    pub basis: Vec<Cochain>,
    coords: HashMap<Key, usize>,
    /// Basis vectors in ambient coordinates (degree ≥ 1 or basic), or the boundary
    /// `∂M` inside `M_Δ` (reduced degree 0).
    echelon: Echelon,
    /// Reduced degree 0: ambient index of each basis monomial.
    n0_cols: Vec<usize>,
    quotient0: bool,
}

impl SliceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vectorize(&self, y: &Cochain) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (t, val) in &y.values {
            for (e, m, c) in val.flat() {
                let k = self.coords.get(&(t.clone(), e.clone(), m.clone()))?;
                v.insert(*k, c.clone());
            }
        }
        Some(v)
    }

    /// Coordinates of `y` in the basis; `None` if `y` is outside the slice.
    ///
    /// `y` must be normalized (as produced by the complex). In reduced degree 0 the
    /// coordinates are those of the class of `y` in `M/∂M`.
    pub fn coordinates(&self, y: &Cochain) -> Option<SparseVec> {
        if y.degree != self.degree || y.nparams != 0 {
            return None;
        }
        let v = self.vectorize(y)?;
        if self.quotient0 {
            let (rem, _) = self.echelon.reduce(&v);
            let mut out = SparseVec::new();
            for (k, c) in rem {
                let b = self.n0_cols.iter().position(|&x| x == k)?;
                out.insert(b, c);
            }
            return Some(out);
        }
        self.echelon.solve(&v)
    }

    /// `Σ c_k basis_k`.
    pub fn combination(&self, c: &SparseVec) -> Cochain {
        let mut out = match self.basis.first() {
            Some(b) => Cochain::zero(b.degree, 0, b.flavor, b.kind),
            None => unreachable!("combination in an empty slice"),
        };
        for (k, x) in c {
            out.add_scaled(&self.basis[*k], x);
        }
        out
    }
}

/// All permutations of `0..k` with their inversion parity.
fn permutations(k: usize) -> Vec<(Vec<usize>, u32)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; k];
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, u32)>) {
        if cur.len() == k {
            let mut inv = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if cur[a] > cur[b] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), inv % 2));
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

impl Complex {
    /// Slot permutations fixing the tuple `t`, with the sign bit of the symmetry rule.
    pub(crate) fn stabilizer(&self, t: &[usize]) -> Vec<(Vec<usize>, u32)> {
        let mut out: Vec<(Vec<usize>, u32)> = vec![((0..t.len()).collect(), 0)];
        let mut start = 0;
        while start < t.len() {
            let mut end = start + 1;
            while end < t.len() && t[end] == t[start] {
                end += 1;
            }
            let len = end - start;
            if len > 1 {
                let pb = self.pbar_gen(t[start]);
                let perms = permutations(len);
                let mut next = Vec::with_capacity(out.len() * perms.len());
                for (base, s) in &out {
                    for (p, ps) in &perms {
                        let mut q = base.clone();
                        for (k, &x) in p.iter().enumerate() {
                            q[start + k] = base[start + x];
                        }
                        next.push((q, (s + ps * pb) % 2));
                    }
                }
                out = next;
            }
            start = end;
        }
        out
    }

    /// `Σ_σ sign(σ) v∘σ` over the stabilizer of `t`, normalized.
    pub fn symmetrize(&self, t: &[usize], v: &LambdaPoly) -> LambdaPoly {
        let n = t.len();
        let nv = v.nvars();
        let mut out = LambdaPoly::zero(nv);
        for (sigma, s) in self.stabilizer(t) {
            let map: Vec<usize> = sigma.iter().copied().chain(n..nv).collect();
            out.add_assign_scaled(&v.embed(nv, &map), &sign(s));
        }
        self.normalize(&out, n)
    }

    /// Basis of the `(n, Δ)` slice.
    pub fn slice(&self, n: usize, delta: &Rat) -> Result<SliceBasis, Error> {
        let u = self.mu();
        let shape = self.shape();
        let mut coords: HashMap<Key, usize> = HashMap::new();
        let intern = |k: Key, coords: &mut HashMap<Key, usize>| -> usize {
            let l = coords.len();
            *coords.entry(k).or_insert(l)
        };
        let mut out = SliceBasis {
            degree: n,
            delta: delta.clone(),
            basis: Vec::new(),
            coords: HashMap::new(),
            echelon: Echelon::new(),
            n0_cols: Vec::new(),
            quotient0: n == 0 && self.flavor == Flavor::Reduced,
        };
        if n == 0 && self.flavor == Flavor::Reduced {
            let mons = monomials_of_weight(u, delta, shape)?;
            for m in &mons {
                intern((Vec::new(), Vec::new(), m.clone()), &mut coords);
            }
            for m in monomials_of_weight(u, &(delta - Rat::one()), shape)? {
                let dm = DiffPoly::from_monomial(m, Rat::one()).partial(u);
                let mut v = SparseVec::new();
                for (mm, c) in dm.terms() {
                    v.insert(coords[&(Vec::new(), Vec::new(), mm.clone())], c.clone());
                }
                let _ = out.echelon.insert(&v);
            }
            let pivots: Vec<usize> = out.echelon.pivots().copied().collect();
            for (k, m) in mons.iter().enumerate() {
                if !pivots.contains(&k) {
                    let mut y = self.zero_cochain(0, 0);
                    y.add_value(Vec::new(), &LambdaPoly::constant(0, DiffPoly::from_monomial(m.clone(), Rat::one())));
                    out.basis.push(y);
                    out.n0_cols.push(k);
                }
            }
            out.coords = coords;
            return Ok(out);
        }
        let mut candidates: Vec<Cochain> = Vec::new();
        for t in self.tuples(n) {
            let w = self.value_weight(delta, &t);
            let tor = n == 1 && self.alg.gens.is_torsion(t[0]) && self.flavor == Flavor::Reduced;
            if tor {
                // values in U = ker ∂
                let mons = monomials_of_weight(u, &w, shape)?;
                let mut tgt: HashMap<Monomial, usize> = HashMap::new();
                let cols: Vec<SparseVec> = mons
                    .iter()
                    .map(|m| {
                        let dm = DiffPoly::from_monomial(m.clone(), Rat::one()).partial(u);
                        let mut v = SparseVec::new();
                        for (mm, c) in dm.terms() {
                            let l = tgt.len();
                            let k = *tgt.entry(mm.clone()).or_insert(l);
                            v.insert(k, c.clone());
                        }
                        v
                    })
                    .collect();
                for kv in nullspace(&cols) {
                    let mut val = DiffPoly::zero();
                    for (k, c) in &kv {
                        val.add_term(mons[*k].clone(), c.clone());
                    }
                    let mut y = self.zero_cochain(1, 0);
                    y.add_value(t.clone(), &LambdaPoly::constant(1, val));
                    candidates.push(y);
                }
                continue;
            }
            let free = match self.flavor {
                Flavor::Reduced => n - 1,
                Flavor::Basic => n,
            };
            let repeated = t.windows(2).any(|p| p[0] == p[1]);
            for (m, mut e) in weight_slice_basis(u, &w, shape, free)? {
                e.resize(n, 0);
                let mut v = LambdaPoly::term(n, e, DiffPoly::from_monomial(m, Rat::one()));
                if repeated {
                    v = self.symmetrize(&t, &v);
                }
                let mut y = self.zero_cochain(n, 0);
                y.add_value(t.clone(), &v);
                if !y.is_zero() {
                    candidates.push(y);
                }
            }
        }
        for y in candidates {
            let mut v = SparseVec::new();
            for (t, val) in &y.values {
                for (e, m, c) in val.flat() {
                    v.insert(intern((t.clone(), e.clone(), m.clone()), &mut coords), c.clone());
                }
            }
            if !out.echelon.contains(&v) {
                let _ = out.echelon.insert(&v);
                out.basis.push(y);
            }
        }
        out.coords = coords;
        Ok(out)
    }

    /// Cochains of the slice expressed through the action of a linear map given on basis
    /// elements; returns the images' coordinates in `target`.
    pub fn matrix<F>(&self, src: &SliceBasis, target: &SliceBasis, mut f: F) -> Result<Vec<SparseVec>, Error>
    where
        F: FnMut(&Cochain) -> Result<Cochain, Error>,
    {
        src.basis
            .iter()
            .map(|y| {
                let img = f(y)?;
                target
                    .coordinates(&img)
                    .ok_or_else(|| Error::Invalid("image lies outside the target slice".into()))
            })
            .collect()
    }
}

//! Enumeration of weight slices.

use num_traits::{Signed, Zero};

use super::diffpoly::{Factor, Monomial};
use super::gens::Universe;
use super::lambda::Exps;
use super::rat::{as_nonneg_int, int, Rat};
use crate::Error;

/// Which elements of the generator universe form the space being sliced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// The whole differential polynomial algebra.
    Full,
    /// The `F[∂]`-span of the generators (one factor per monomial).
    Linear,
}

/// Checks that every weight slice of the given shape is finite.
pub fn check_bounded(u: &Universe, shape: Shape) -> Result<(), Error> {
    if shape == Shape::Linear {
        return Ok(());
    }
    for g in u.gens() {
        let bad = if g.torsion {
            !g.weight.is_positive() && g.parity == super::gens::Parity::Even
        } else {
            !g.weight.is_positive()
        };
        if bad {
            return Err(Error::UnboundedSlice(format!(
                "generator `{}` has weight {} and generates infinitely many monomials of equal weight",
                g.id, g.weight
            )));
        }
    }
    Ok(())
}

/// All monomials of exact weight `w`, in canonical order.
pub fn monomials_of_weight(u: &Universe, w: &Rat, shape: Shape) -> Result<Vec<Monomial>, Error> {
    check_bounded(u, shape)?;
    match shape {
        Shape::Linear => {
            let mut out = Vec::new();
            for (g, d) in u.gens().iter().enumerate() {
                let diff = w - &d.weight;
                if d.torsion {
                    if diff.is_zero() {
                        out.push(Monomial::canonicalize(u, vec![(g as u32, 0)]).unwrap().1);
                    }
                } else if let Some(k) = as_nonneg_int(&diff) {
                    out.push(Monomial::canonicalize(u, vec![(g as u32, k)]).unwrap().1);
                }
            }
            Ok(out)
        }
        Shape::Full => {
            // factor types of weight ≤ w, plus odd torsion factors of non-positive weight
            let mut types: Vec<(Factor, Rat, bool)> = Vec::new();
            for (g, d) in u.gens().iter().enumerate() {
                let odd = u.is_odd(g);
                if d.torsion {
                    if d.weight <= *w || !d.weight.is_positive() {
                        types.push(((g as u32, 0), d.weight.clone(), odd));
                    }
                } else {
                    let mut k = 0u32;
                    while d.weight.clone() + int(k as i64) <= *w {
                        types.push(((g as u32, k), d.weight.clone() + int(k as i64), odd));
                        k += 1;
                    }
                }
            }
            let mut neg_suffix = vec![Rat::zero(); types.len() + 1];
            for i in (0..types.len()).rev() {
                let wt = &types[i].1;
                neg_suffix[i] = neg_suffix[i + 1].clone() + if wt.is_negative() { wt.clone() } else { Rat::zero() };
            }
            let mut out = Vec::new();
            let mut cur = Vec::new();
            dfs(&types, &neg_suffix, 0, w.clone(), &mut cur, &mut out);
            let mut mons: Vec<Monomial> = out
                .into_iter()
                .map(|fs| Monomial::canonicalize(u, fs).expect("odd factors used once").1)
                .collect();
            mons.sort();
            Ok(mons)
        }
    }
}

fn dfs(
    types: &[(Factor, Rat, bool)],
    neg_suffix: &[Rat],
    i: usize,
    rem: Rat,
    cur: &mut Vec<Factor>,
    out: &mut Vec<Vec<Factor>>,
) {
    if i == types.len() {
        if rem.is_zero() {
            out.push(cur.clone());
        }
        return;
    }
    let (f, wt, odd) = &types[i];
    let max_mult = if *odd { 1 } else { u32::MAX };
    let mut m = 0u32;
    let mut r = rem;
    loop {
        if r < neg_suffix[i + 1] && !wt.is_negative() {
            break;
        }
        dfs(types, neg_suffix, i + 1, r.clone(), cur, out);
        if m >= max_mult {
            break;
        }
        m += 1;
        cur.push(*f);
        r -= wt;
    }
    for _ in 0..m {
        cur.pop();
    }
}

/// Exponent vectors in `n` variables of total degree `d`, in lexicographic order.
pub fn lambda_monomials(n: usize, d: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; n];
    fn rec(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Exps>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = rem;
            out.push(cur.clone());
            return;
        }
        for k in (0..=rem).rev() {
            cur[i] = k;
            rec(i + 1, rem - k, cur, out);
        }
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Basis of the weight-`w` slice of `X[λ_1..λ_n]`, `X` the sliced space.
pub fn weight_slice_basis(u: &Universe, w: &Rat, shape: Shape, n: usize) -> Result<Vec<(Monomial, Exps)>, Error> {
    check_bounded(u, shape)?;
    let mut out = Vec::new();
    if n == 0 {
        for m in monomials_of_weight(u, w, shape)? {
            out.push((m, Vec::new()));
        }
        return Ok(out);
    }
    let min_w = min_weight(u, shape);
    let mut d = 0u32;
    loop {
        let mw = w - Rat::from_integer(d.into());
        if mw < min_w {
            break;
        }
        let mons = monomials_of_weight(u, &mw, shape)?;
        if !mons.is_empty() {
            for e in lambda_monomials(n, d) {
                for m in &mons {
                    out.push((m.clone(), e.clone()));
                }
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Lower bound for the weight of any monomial of the given shape.
fn min_weight(u: &Universe, shape: Shape) -> Rat {
    match shape {
        Shape::Linear => u.gens().iter().map(|g| g.weight.clone()).min().unwrap_or_else(Rat::zero),
        Shape::Full => u
            .gens()
            .iter()
            .filter(|g| g.weight.is_negative())
            .map(|g| g.weight.clone())
            .fold(Rat::zero(), |a, b| a + b),
    }
}

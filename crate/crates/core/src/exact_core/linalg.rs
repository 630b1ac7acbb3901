//! Exact linear algebra over ℚ: ranks, echelon forms, kernels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rat::Rat;

/// Sparse vector indexed by coordinate.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn sv_add_scaled(a: &mut SparseVec, b: &SparseVec, c: &Rat) {
    if c.is_zero() {
        return;
    }
    for (i, x) in b {
        let e = a.entry(*i).or_insert_with(Rat::zero);
        *e += x * c;
        if e.is_zero() {
            a.remove(i);
        }
    }
}

pub fn sv_scale(a: &SparseVec, c: &Rat) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    a.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Rank by fraction-free (Bareiss) elimination; rows are scaled to integers first.
///
/// Pivots are taken from the lowest available row index in each column.
pub fn rank(rows: &[SparseVec]) -> usize {
    let cols: Vec<usize> = {
        let mut c: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    if cols.is_empty() {
        return 0;
    }
    let col_index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let den = r.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut row = vec![BigInt::zero(); cols.len()];
            for (c, x) in r {
                row[col_index[c]] = (x * Rat::from_integer(den.clone())).to_integer();
            }
            row
        })
        .collect();
    let nrows = m.len();
    let ncols = cols.len();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row-echelon form built incrementally, tracking each row as a combination
/// of the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// pivot column → (row, combination of inserted vectors)
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    /// Reduces `v` against the rows; returns the remainder and the combination `c` with
    /// `v = remainder + Σ c_k (inserted vector k)`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut comb = SparseVec::new();
        for (p, (row, rc)) in &self.rows {
            if let Some(x) = rem.get(p).cloned() {
                sv_add_scaled(&mut rem, row, &-x.clone());
                sv_add_scaled(&mut comb, rc, &x);
            }
        }
        (rem, comb)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v`; returns `Ok(pivot)` when independent, otherwise `Err(comb)` with
    /// `v = Σ comb_k (inserted vector k)`.
    pub fn insert(&mut self, v: &SparseVec) -> Result<usize, SparseVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut rem, comb) = self.reduce(v);
        if rem.is_empty() {
            return Err(comb);
        }
        // rem = v - Σ comb_k v_k
        let mut rc = sv_scale(&comb, &-Rat::one());
        rc.insert(idx, Rat::one());
        let (&p, x) = rem.iter().next().unwrap();
        let inv = Rat::one() / x.clone();
        rem = sv_scale(&rem, &inv);
        rc = sv_scale(&rc, &inv);
        // keep reduced form: clear column p in existing rows
        for (row, c) in self.rows.values_mut() {
            if let Some(y) = row.get(&p).cloned() {
                sv_add_scaled(row, &rem, &-y.clone());
                sv_add_scaled(c, &rc, &-y);
            }
        }
        self.rows.insert(p, (rem, rc));
        Ok(p)
    }

    /// Rows of the reduced echelon form, in pivot order.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().map(|(r, _)| r.clone()).collect()
    }

    /// Solves `v = Σ c_k (inserted vector k)` if possible.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, comb) = self.reduce(v);
        if rem.is_empty() {
            Some(comb)
        } else {
            None
        }
    }
}

/// Kernel of the map `x ↦ Σ x_j cols[j]`, one basis vector per dependent column.
pub fn nullspace(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Err(comb) = e.insert(c) {
            let mut k = sv_scale(&comb, &-Rat::one());
            k.insert(j, Rat::one());
            out.push(k);
        }
    }
    out
}

/// Rank via the incremental echelon form (used to cross-check [`rank`]).
pub fn rank_echelon(rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        let _ = e.insert(r);
    }
    e.rank()
}

/// Dense helper: converts a dense row into a sparse vector.
pub fn sparse(row: &[Rat]) -> SparseVec {
    row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Inverse of a dense square matrix by Gauss–Jordan elimination; `None` when singular.
pub fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = Rat::one() / a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

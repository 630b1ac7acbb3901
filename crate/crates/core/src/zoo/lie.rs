//! Finite-dimensional Lie (super)algebras with an invariant form.

use num_traits::{One, Zero};

use crate::exact_core::linalg::{invert, rank, sparse};
use crate::exact_core::{int, Parity, Rat};
use crate::Error;

/// Structure constants `[u_i, u_j] = Σ_k c_{ij}^k u_k` and Gram matrix `(u_i|u_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub ids: Vec<String>,
    pub parities: Vec<Parity>,
    /// `structure[i][j][k]`
    pub structure: Vec<Vec<Vec<Rat>>>,
    pub gram: Vec<Vec<Rat>>,
}

impl LieAlgebraData {
    pub fn dim(&self) -> usize {
        self.ids.len()
    }

    pub fn abelian(ids: &[&str], gram: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let n = ids.len();
        let d = LieAlgebraData {
            ids: ids.iter().map(|s| s.to_string()).collect(),
            parities: vec![Parity::Even; n],
            structure: vec![vec![vec![Rat::zero(); n]; n]; n],
            gram,
        };
        d.validate()?;
        Ok(d)
    }

    /// `sl₂` in the basis `e, h, f` with the trace form of the defining representation.
    pub fn sl2() -> Self {
        let (e, h, f) = (0, 1, 2);
        let mut s = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, c: i64| {
            s[i][j][k] = int(c);
            s[j][i][k] = int(-c);
        };
        set(e, f, h, 1);
        set(h, e, e, 2);
        set(h, f, f, -2);
        let mut g = vec![vec![Rat::zero(); 3]; 3];
        g[h][h] = int(2);
        g[e][f] = int(1);
        g[f][e] = int(1);
        LieAlgebraData {
            ids: vec!["e".into(), "h".into(), "f".into()],
            parities: vec![Parity::Even; 3],
            structure: s,
            gram: g,
        }
    }

    fn p(&self, i: usize) -> u8 {
        self.parities[i].bit()
    }

    fn sign(&self, i: usize, j: usize) -> Rat {
        if self.p(i) * self.p(j) == 1 {
            -Rat::one()
        } else {
            Rat::one()
        }
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..n {
                    out[k] += &c * &self.structure[i][j][k];
                }
            }
        }
        out
    }

    pub fn form_vec(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                s += &x[i] * &self.gram[i][j] * &y[j];
            }
        }
        s
    }

    fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::one();
        v
    }

    /// Checks shape, parity, super-antisymmetry, Jacobi, invariance, supersymmetry and
    /// nondegeneracy of the form.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.dim();
        if self.parities.len() != n
            || self.structure.len() != n
            || self.structure.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n))
            || self.gram.len() != n
            || self.gram.iter().any(|r| r.len() != n)
        {
            return Err(Error::Invalid("Lie algebra data of inconsistent dimensions".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() && (self.p(i) + self.p(j)) % 2 != self.p(k) {
                        return Err(Error::Invalid(format!(
                            "[{}, {}] has a component of the wrong parity",
                            self.ids[i], self.ids[j]
                        )));
                    }
                    if *c != -self.sign(i, j) * &self.structure[j][i][k] {
                        return Err(Error::Invalid(format!(
                            "structure constants not antisymmetric at ({}, {})",
                            self.ids[i], self.ids[j]
                        )));
                    }
                }
                if !self.gram[i][j].is_zero() && self.p(i) != self.p(j) {
                    return Err(Error::Invalid("even and odd parts must be orthogonal".into()));
                }
                if self.gram[i][j] != self.sign(i, j) * &self.gram[j][i] {
                    return Err(Error::Invalid("form is not supersymmetric".into()));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (self.unit(a), self.unit(b));
                let ab = self.bracket_vec(&ea, &eb);
                for c in 0..n {
                    let ec = self.unit(c);
                    // [a,[b,c]] = [[a,b],c] + (−1)^{p(a)p(b)} [b,[a,c]]
                    let lhs = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let r1 = self.bracket_vec(&ab, &ec);
                    let r2 = self.bracket_vec(&eb, &self.bracket_vec(&ea, &ec));
                    let s = self.sign(a, b);
                    if (0..n).any(|k| lhs[k] != &r1[k] + &s * &r2[k]) {
                        return Err(Error::Invalid(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.ids[a], self.ids[b], self.ids[c]
                        )));
                    }
                    // ([a,b]|c) = (a|[b,c])
                    if self.form_vec(&ab, &ec) != self.form_vec(&ea, &self.bracket_vec(&eb, &ec)) {
                        return Err(Error::Invalid(format!(
                            "form is not invariant on ({}, {}, {})",
                            self.ids[a], self.ids[b], self.ids[c]
                        )));
                    }
                }
            }
        }
        let rows: Vec<_> = self.gram.iter().map(|r| sparse(r)).collect();
        if rank(&rows) != n {
            return Err(Error::Invalid("form is degenerate".into()));
        }
        Ok(())
    }

    /// Dual basis coordinates: row `i` is `u^i` with `(u^i|u_j) = δ_ij`.
    pub fn dual_basis(&self) -> Result<Vec<Vec<Rat>>, Error> {
        gram_dual(&self.gram)
    }
}

/// Rows `X` with `X·G = 1`, so that `(Σ_k X_ik u_k | u_j) = δ_ij`.
pub fn gram_dual(gram: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>, Error> {
    invert(gram).ok_or_else(|| Error::Invalid("form is degenerate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_is_valid() {
        LieAlgebraData::sl2().validate().unwrap();
    }

    #[test]
    fn perturbed_structure_constant_detected() {
        let mut g = LieAlgebraData::sl2();
        g.structure[1][0][0] = int(3);
        g.structure[0][1][0] = int(-3);
        assert!(g.validate().is_err());
    }

    #[test]
    fn sl2_dual_basis() {
        let d = LieAlgebraData::sl2().dual_basis().unwrap();
        // e* = f, h* = h/2, f* = e
        assert_eq!(d[0], vec![int(0), int(0), int(1)]);
        assert_eq!(d[1], vec![int(0), crate::exact_core::rat(1, 2), int(0)]);
        assert_eq!(d[2], vec![int(1), int(0), int(0)]);
    }
}

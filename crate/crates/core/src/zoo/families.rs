//! Free boson, free fermion, affine and Virasoro algebras.

use num_traits::{One, Zero};

use super::lie::{gram_dual, LieAlgebraData};
use crate::algebra::{central_quotient, universal_pva, AlgebraSpec, Charge, Kind, Virasoro};
use crate::exact_core::{int, rat, DiffPoly, GenDecl, LambdaPoly, Parity, Rat, Universe};
use crate::Error;

/// An LCA together with the PVA built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub lca: AlgebraSpec,
    pub pva: AlgebraSpec,
}

/// A finite-dimensional superspace with a bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormData {
    pub ids: Vec<String>,
    pub parities: Vec<Parity>,
    pub gram: Vec<Vec<Rat>>,
}

impl FormData {
    pub fn new(ids: &[&str], parities: Vec<Parity>, gram: Vec<Vec<Rat>>) -> Self {
        FormData { ids: ids.iter().map(|s| s.to_string()).collect(), parities, gram }
    }

    /// Even space `u1..uN` with the identity Gram matrix.
    pub fn identity(n: usize) -> Self {
        let ids: Vec<String> = if n == 1 { vec!["u".into()] } else { (1..=n).map(|i| format!("u{i}")).collect() };
        let gram = (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
        FormData { ids, parities: vec![Parity::Even; n], gram }
    }

    /// Odd generators: one `u` with `(u|u) = 1`, or `psi+`, `psi-` with `(psi+|psi-) = 1`.
    pub fn fermion(n: usize) -> Result<Self, Error> {
        match n {
            1 => Ok(FormData::new(&["u"], vec![Parity::Odd], vec![vec![int(1)]])),
            2 => Ok(FormData::new(
                &["psi+", "psi-"],
                vec![Parity::Odd; 2],
                vec![vec![int(0), int(1)], vec![int(1), int(0)]],
            )),
            _ => {
                // pairs psi+_i, psi-_i
                let mut ids = Vec::new();
                for i in 1..=n / 2 {
                    ids.push(format!("psi+{i}"));
                    ids.push(format!("psi-{i}"));
                }
                if n % 2 == 1 {
                    ids.push("u".into());
                }
                let mut gram = vec![vec![Rat::zero(); n]; n];
                for i in 0..n / 2 {
                    gram[2 * i][2 * i + 1] = int(1);
                    gram[2 * i + 1][2 * i] = int(1);
                }
                if n % 2 == 1 {
                    gram[n - 1][n - 1] = int(1);
                }
                Ok(FormData { ids, parities: vec![Parity::Odd; n], gram })
            }
        }
    }

    fn dim(&self) -> usize {
        self.ids.len()
    }

    fn sign(&self, i: usize, j: usize) -> Rat {
        if self.parities[i].bit() * self.parities[j].bit() == 1 {
            -Rat::one()
        } else {
            Rat::one()
        }
    }

    /// `sym = +1` for supersymmetric forms, `−1` for super-skewsymmetric ones.
    fn validate(&self, sym: i64) -> Result<(), Error> {
        let n = self.dim();
        if self.parities.len() != n || self.gram.len() != n || self.gram.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("form data of inconsistent dimensions".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if !self.gram[i][j].is_zero() && self.parities[i] != self.parities[j] {
                    return Err(Error::Invalid("even and odd parts must be orthogonal".into()));
                }
                if self.gram[i][j] != int(sym) * self.sign(i, j) * &self.gram[j][i] {
                    let what = if sym == 1 { "supersymmetric" } else { "super-skewsymmetric" };
                    return Err(Error::Invalid(format!("form is not {what}")));
                }
            }
        }
        gram_dual(&self.gram)?;
        Ok(())
    }

    /// `Σ_j f(u^j) u_j` with the dual basis `(u^i|u_j) = δ_ij`; `deriv` differentiates `u^j`.
    fn casimir(&self, u: &Universe, deriv: u32) -> Result<DiffPoly, Error> {
        let dual = gram_dual(&self.gram)?;
        let mut out = DiffPoly::zero();
        for (j, row) in dual.iter().enumerate() {
            let mut up = DiffPoly::zero();
            for (k, c) in row.iter().enumerate() {
                up.add_assign_scaled(&DiffPoly::gen_deriv(k, deriv), c);
            }
            out = out.add(&up.mul(u, &DiffPoly::gen(j)));
        }
        Ok(out)
    }
}

fn k_universe(ids: &[String], parities: &[Parity], weight: Rat) -> Result<Universe, Error> {
    let mut decls: Vec<GenDecl> =
        ids.iter().zip(parities).map(|(id, p)| GenDecl::new(id, *p, weight.clone(), false)).collect();
    decls.push(GenDecl::new("K", Parity::Even, Rat::zero(), true));
    Universe::new(decls)
}

/// `[a_λ b] = λ(a|b)K`; the PVA is the quotient at `K = 1` with `L = ½Σ u^j u_j`.
pub fn make_free_boson(form: &FormData) -> Result<Family, Error> {
    form.validate(1)?;
    let n = form.dim();
    let u = k_universe(&form.ids, &form.parities, int(1))?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            if !form.gram[i][j].is_zero() {
                entries.push(((i, j), LambdaPoly::term(1, vec![1], DiffPoly::gen(n).scale(&form.gram[i][j]))));
            }
        }
    }
    let lca = AlgebraSpec::new(Kind::Lca, u, entries)?;
    let pva = central_quotient(&universal_pva(&lca)?, n, &int(1))?;
    let l = form.casimir(&pva.gens, 0)?.scale(&rat(1, 2));
    let pva = pva.with_virasoro(Virasoro { element: l, charge: Charge::Scalar(Rat::zero()) })?;
    Ok(Family { lca, pva })
}

/// `[a_λ b] = (a|b)K`; the PVA is the quotient at `K = 1` with `L = ½Σ (∂u^j) u_j`.
pub fn make_free_fermion(form: &FormData) -> Result<Family, Error> {
    form.validate(-1)?;
    let n = form.dim();
    let u = k_universe(&form.ids, &form.parities, rat(1, 2))?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            if !form.gram[i][j].is_zero() {
                entries.push(((i, j), LambdaPoly::constant(1, DiffPoly::gen(n).scale(&form.gram[i][j]))));
            }
        }
    }
    let lca = AlgebraSpec::new(Kind::Lca, u, entries)?;
    let pva = central_quotient(&universal_pva(&lca)?, n, &int(1))?;
    let l = form.casimir(&pva.gens, 1)?.scale(&rat(1, 2));
    let pva = pva.with_virasoro(Virasoro { element: l, charge: Charge::Scalar(Rat::zero()) })?;
    Ok(Family { lca, pva })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level {
    Universal,
    Value(Rat),
}

/// `[a_λ b] = [a,b] + λ(a|b)K`; at a nonzero level the PVA carries `L = (1/2k)Σ u^j u_j`.
pub fn make_affine(g: &LieAlgebraData, level: &Level) -> Result<Family, Error> {
    g.validate()?;
    let n = g.dim();
    let u = k_universe(&g.ids, &g.parities, int(1))?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = LambdaPoly::zero(1);
            let mut c0 = DiffPoly::zero();
            for k in 0..n {
                c0.add_assign_scaled(&DiffPoly::gen(k), &g.structure[i][j][k]);
            }
            v.add_term(vec![0], c0);
            v.add_term(vec![1], DiffPoly::gen(n).scale(&g.gram[i][j]));
            entries.push(((i, j), v));
        }
    }
    let lca = AlgebraSpec::new(Kind::Lca, u, entries)?;
    let universal = universal_pva(&lca)?;
    let pva = match level {
        Level::Universal => universal,
        Level::Value(k) => {
            let q = central_quotient(&universal, n, k)?;
            if k.is_zero() {
                q
            } else {
                let fd = FormData { ids: g.ids.clone(), parities: g.parities.clone(), gram: g.gram.clone() };
                let l = fd.casimir(&q.gens, 0)?.scale(&(Rat::one() / (int(2) * k)));
                q.with_virasoro(Virasoro { element: l, charge: Charge::Scalar(Rat::zero()) })?
            }
        }
    };
    Ok(Family { lca, pva })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VirasoroCharge {
    Universal,
    Value(Rat),
}

/// `[L_λ L] = (∂+2λ)L + (λ³/12)C` with `Δ(L) = 2` and `C` torsion.
pub fn make_virasoro(charge: &VirasoroCharge) -> Result<Family, Error> {
    let u = Universe::new(vec![GenDecl::even("L", int(2)), GenDecl::new("C", Parity::Even, Rat::zero(), true)])?;
    let mut v = LambdaPoly::zero(1);
    v.add_term(vec![0], DiffPoly::gen_deriv(0, 1));
    v.add_term(vec![1], DiffPoly::gen(0).scale(&int(2)));
    v.add_term(vec![3], DiffPoly::gen(1).scale(&rat(1, 12)));
    let vir = Virasoro { element: DiffPoly::gen(0), charge: Charge::Central(1) };
    let lca = AlgebraSpec::new(Kind::Lca, u, vec![((0, 0), v)])?.with_virasoro(vir)?;
    let universal = universal_pva(&lca)?;
    let pva = match charge {
        VirasoroCharge::Universal => universal,
        VirasoroCharge::Value(c) => central_quotient(&universal, 1, c)?,
    };
    Ok(Family { lca, pva })
}

/// `R̄`: the LCA with its torsion central generator set to zero.
pub fn reduced_lca(f: &Family) -> Result<AlgebraSpec, Error> {
    let c = *f
        .lca
        .torsion_ids()
        .first()
        .ok_or_else(|| Error::Invalid("no torsion central generator".into()))?;
    central_quotient(&f.lca, c, &Rat::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket, check_axioms, check_virasoro};

    #[test]
    fn boson_bracket() {
        let f = make_free_boson(&FormData::identity(1)).unwrap();
        let u = DiffPoly::gen(0);
        let v = bracket(&f.lca, &u, &u).unwrap();
        assert_eq!(v, LambdaPoly::term(1, vec![1], DiffPoly::gen(1)));
        // in the quotient K = 1
        assert_eq!(bracket(&f.pva, &u, &u).unwrap(), LambdaPoly::term(1, vec![1], DiffPoly::one()));
    }

    #[test]
    fn fermion_bracket() {
        let f = make_free_fermion(&FormData::fermion(2).unwrap()).unwrap();
        let v = bracket(&f.lca, &DiffPoly::gen(0), &DiffPoly::gen(1)).unwrap();
        assert_eq!(v, LambdaPoly::constant(1, DiffPoly::gen(2)));
    }

    #[test]
    fn conformal_vectors() {
        let fams = vec![
            make_free_boson(&FormData::identity(1)).unwrap(),
            make_free_boson(&FormData::identity(2)).unwrap(),
            make_free_fermion(&FormData::fermion(1).unwrap()).unwrap(),
            make_free_fermion(&FormData::fermion(2).unwrap()).unwrap(),
            make_affine(&LieAlgebraData::sl2(), &Level::Value(int(1))).unwrap(),
            make_virasoro(&VirasoroCharge::Value(int(1))).unwrap(),
        ];
        for f in &fams {
            assert!(check_axioms(&f.lca).unwrap().passed());
            assert!(check_axioms(&f.pva).unwrap().passed());
            let r = check_virasoro(&f.pva).unwrap();
            assert!(r.report.passed(), "{}", r.report);
        }
    }

    #[test]
    fn fermion_casimir_vanishes() {
        // Σ_j u^j u_j = 0 for odd generators
        for n in 1..=2 {
            let fd = FormData::fermion(n).unwrap();
            let f = make_free_fermion(&fd).unwrap();
            assert!(fd.casimir(&f.pva.gens, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn abelian_affine_is_boson() {
        let g = LieAlgebraData::abelian(&["u1", "u2"], FormData::identity(2).gram).unwrap();
        let a = make_affine(&g, &Level::Universal).unwrap();
        let b = make_free_boson(&FormData::identity(2)).unwrap();
        assert_eq!(a.lca.table(), b.lca.table());
    }
}

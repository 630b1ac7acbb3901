//! Algebra specifications: generators, bracket tables, conformal designation.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact_core::{DiffPoly, LambdaPoly, Monomial, Rat, Universe};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Lie conformal superalgebra: elements are `F[∂]`-combinations of generators.
    Lca,
    /// Poisson vertex superalgebra on the differential polynomials in the generators.
    Pva,
}

/// Central charge of a Virasoro element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Charge {
    Scalar(Rat),
    /// The central term is `λ³/12 · C` for the given torsion central generator.
    Central(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Virasoro {
    pub element: DiffPoly,
    pub charge: Charge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub kind: Kind,
    pub gens: Universe,
    table: BTreeMap<(usize, usize), LambdaPoly>,
    pub virasoro: Option<Virasoro>,
}

impl AlgebraSpec {
    /// Builds and validates a spec. Entries are keyed by `(i, j)` with `i ≤ j`.
    pub fn new(
        kind: Kind,
        gens: Universe,
        entries: impl IntoIterator<Item = ((usize, usize), LambdaPoly)>,
    ) -> Result<Self, Error> {
        let mut table = BTreeMap::new();
        for ((i, j), v) in entries {
            if i > j {
                return Err(Error::Invalid(format!("bracket entry ({i}, {j}) must be given with i ≤ j")));
            }
            if j >= gens.len() {
                return Err(Error::Invalid(format!("bracket entry ({i}, {j}) out of range")));
            }
            if v.nvars() != 1 {
                return Err(Error::Invalid("bracket values are polynomials in one variable".into()));
            }
            if !v.is_zero() {
                table.insert((i, j), v);
            }
        }
        let spec = AlgebraSpec { kind, gens, table, virasoro: None };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_virasoro(mut self, v: Virasoro) -> Result<Self, Error> {
        crate::exact_core::check_universe(&self.gens, &v.element)?;
        if let Charge::Central(c) = v.charge {
            if c >= self.gens.len() || !self.gens.is_torsion(c) {
                return Err(Error::Invalid("central charge generator must be torsion".into()));
            }
        }
        self.virasoro = Some(v);
        Ok(self)
    }

    fn validate(&self) -> Result<(), Error> {
        let u = &self.gens;
        for (&(i, j), v) in &self.table {
            let name = format!("[{}, {}]", u.gen(i).id, u.gen(j).id);
            if u.is_torsion(i) || u.is_torsion(j) {
                return Err(Error::Invalid(format!(
                    "{name}: torsion generators are central and must have zero brackets"
                )));
            }
            let par = (u.parity(i).bit() + u.parity(j).bit()) % 2;
            let want_w = u.weight(i) + u.weight(j) - Rat::from_integer(1.into());
            for (e, c) in v.terms() {
                crate::exact_core::check_universe(u, c)?;
                for m in c.terms().keys() {
                    if m.parity(u).bit() != par {
                        return Err(Error::Invalid(format!("{name}: term of wrong parity")));
                    }
                    let w = m.weight(u) + Rat::from_integer(e[0].into());
                    if w != want_w {
                        return Err(Error::Invalid(format!(
                            "{name}: term of weight {w}, expected {want_w}"
                        )));
                    }
                    if self.kind == Kind::Lca && m.degree() != 1 {
                        return Err(Error::Invalid(format!(
                            "{name}: LCA bracket values must be F[∂]-combinations of generators"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), LambdaPoly> {
        &self.table
    }

    /// Table value `[u_i λ u_j]` for `i ≤ j`.
    pub fn entry(&self, i: usize, j: usize) -> Option<&LambdaPoly> {
        self.table.get(&(i, j))
    }

    pub fn is_central(&self, g: usize) -> bool {
        !self.table.keys().any(|&(i, j)| i == g || j == g)
    }

    pub fn central_ids(&self) -> Vec<usize> {
        (0..self.gens.len()).filter(|&g| self.is_central(g)).collect()
    }

    pub fn torsion_ids(&self) -> Vec<usize> {
        (0..self.gens.len()).filter(|&g| self.gens.is_torsion(g)).collect()
    }

    /// The element representing the central charge: `c·1` or `C`.
    pub fn charge_element(&self) -> Option<DiffPoly> {
        self.virasoro.as_ref().map(|v| match &v.charge {
            Charge::Scalar(c) => DiffPoly::constant(c.clone()),
            Charge::Central(g) => DiffPoly::gen(*g),
        })
    }
}

/// The universal PVA of an LCA: same generators and table, symmetric-algebra structure implicit.
pub fn universal_pva(r: &AlgebraSpec) -> Result<AlgebraSpec, Error> {
    if r.kind != Kind::Lca {
        return Err(Error::Invalid("universal PVA requires an LCA".into()));
    }
    let mut v = r.clone();
    v.kind = Kind::Pva;
    Ok(v)
}

/// Quotient by `C − c` for a torsion central generator `C`.
///
/// For an LCA only `c = 0` is meaningful (the quotient by `F[∂]C`).
pub fn central_quotient(v: &AlgebraSpec, c_gen: usize, c: &Rat) -> Result<AlgebraSpec, Error> {
    let u = &v.gens;
    if c_gen >= u.len() {
        return Err(Error::Invalid("central generator out of range".into()));
    }
    if !u.is_torsion(c_gen) {
        return Err(Error::Invalid(format!("`{}` is not torsion", u.gen(c_gen).id)));
    }
    if !v.is_central(c_gen) {
        return Err(Error::Invalid(format!("`{}` is not central", u.gen(c_gen).id)));
    }
    if v.kind == Kind::Lca && !c.is_zero() {
        return Err(Error::Invalid("an LCA quotient sets the central element to 0".into()));
    }
    let new_gens: Vec<_> = u.gens().iter().enumerate().filter(|(g, _)| *g != c_gen).map(|(_, d)| d.clone()).collect();
    let nu = Universe::new(new_gens)?;
    let remap = |g: usize| if g < c_gen { g } else { g - 1 };
    let subst = |p: &DiffPoly| -> DiffPoly {
        p.substitute(&nu, &mut |g, k| {
            if g as usize == c_gen {
                DiffPoly::constant(c.clone())
            } else {
                DiffPoly::gen_deriv(remap(g as usize), k)
            }
        })
    };
    let mut entries = Vec::new();
    for (&(i, j), val) in v.table() {
        entries.push(((remap(i), remap(j)), val.map_coeffs(|x| subst(x))));
    }
    let vir_elem = v.virasoro.as_ref().map(|vir| subst(&vir.element));
    let mut q = AlgebraSpec::new(v.kind, nu.clone(), entries)?;
    if let (Some(vir), Some(element)) = (&v.virasoro, vir_elem) {
        let charge = match &vir.charge {
            Charge::Central(g) if *g == c_gen => Charge::Scalar(c.clone()),
            Charge::Central(g) => Charge::Central(remap(*g)),
            Charge::Scalar(s) => Charge::Scalar(s.clone()),
        };
        q = q.with_virasoro(Virasoro { element, charge })?;
    }
    Ok(q)
}

/// Checks the element is a single generator monomial of degree one.
pub fn as_generator(p: &DiffPoly) -> Option<usize> {
    if p.len() != 1 {
        return None;
    }
    let (m, c): (&Monomial, &Rat) = p.terms().iter().next()?;
    if !num_traits::One::is_one(c) || m.degree() != 1 || m.factors()[0].1 != 0 {
        return None;
    }
    Some(m.factors()[0].0 as usize)
}

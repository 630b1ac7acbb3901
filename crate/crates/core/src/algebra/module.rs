//! Coefficient modules: λ-actions, product actions, zero modes.

use std::collections::BTreeMap;

use num_traits::One;

use super::bracket::{bracket, derivative_orders, require_linear};
use super::spec::{AlgebraSpec, Kind};
use crate::exact_core::linalg::SparseVec;
use crate::exact_core::{check_universe, monomials_of_weight, DiffPoly, LambdaPoly, Monomial, Rat, Shape, Universe};
use crate::Error;

/// How the algebra acts on the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleAction {
    /// `u_g λ v_h` given on generators; module elements are `F[∂]`-combinations of the basis.
    Table(BTreeMap<(usize, usize), LambdaPoly>),
    /// Pullback along a morphism `φ` into a target algebra whose elements form the module:
    /// `a_λ m = [φ(a)_λ m]` and `b·m = φ(b)m`.
    Image { target: AlgebraSpec, images: Vec<DiffPoly> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffModule {
    pub name: String,
    pub basis: Universe,
    pub action: ModuleAction,
}

impl CoeffModule {
    pub fn table(
        over: &AlgebraSpec,
        name: &str,
        basis: Universe,
        entries: impl IntoIterator<Item = ((usize, usize), LambdaPoly)>,
    ) -> Result<Self, Error> {
        let au = &over.gens;
        let mut t = BTreeMap::new();
        for ((g, h), v) in entries {
            if g >= au.len() || h >= basis.len() {
                return Err(Error::Invalid(format!("action entry ({g}, {h}) out of range")));
            }
            let name = format!("{}_λ {}", au.gen(g).id, basis.gen(h).id);
            if au.is_torsion(g) && !v.is_zero() {
                return Err(Error::Invalid(format!("{name}: torsion elements act trivially")));
            }
            let par = (au.parity(g).bit() + basis.parity(h).bit()) % 2;
            let want_w = au.weight(g) + basis.weight(h) - Rat::one();
            for (e, c) in v.terms() {
                check_universe(&basis, c)?;
                for m in c.terms().keys() {
                    if m.degree() != 1 {
                        return Err(Error::Invalid(format!("{name}: values must be linear in the basis")));
                    }
                    if m.parity(&basis).bit() != par {
                        return Err(Error::Invalid(format!("{name}: term of wrong parity")));
                    }
                    let w = m.weight(&basis) + Rat::from_integer(e[0].into());
                    if w != want_w {
                        return Err(Error::Invalid(format!("{name}: term of weight {w}, expected {want_w}")));
                    }
                }
            }
            if !v.is_zero() {
                t.insert((g, h), v);
            }
        }
        Ok(CoeffModule { name: name.to_string(), basis, action: ModuleAction::Table(t) })
    }

    /// Module structure pulled back along `u_g ↦ images[g]`.
    pub fn image(over: &AlgebraSpec, name: &str, target: AlgebraSpec, images: Vec<DiffPoly>) -> Result<Self, Error> {
        let au = &over.gens;
        if images.len() != au.len() {
            return Err(Error::Invalid("one image per generator is required".into()));
        }
        for (g, img) in images.iter().enumerate() {
            check_universe(&target.gens, img)?;
            if target.kind == Kind::Lca {
                require_linear(img)?;
            }
            if img.is_zero() {
                continue;
            }
            let id = &au.gen(g).id;
            if img.parity(&target.gens) != Some(au.parity(g)) {
                return Err(Error::Invalid(format!("image of `{id}` has the wrong parity")));
            }
            if img.weight(&target.gens).as_ref() != Some(au.weight(g)) {
                return Err(Error::Invalid(format!("image of `{id}` has the wrong weight")));
            }
        }
        Ok(CoeffModule { name: name.to_string(), basis: target.gens.clone(), action: ModuleAction::Image { target, images } })
    }

    /// Module elements are all differential polynomials (`Full`) or linear combinations (`Linear`).
    pub fn shape(&self) -> Shape {
        match &self.action {
            ModuleAction::Image { target, .. } if target.kind == Kind::Pva => Shape::Full,
            _ => Shape::Linear,
        }
    }

    pub fn has_product(&self) -> bool {
        self.shape() == Shape::Full
    }

    /// `φ(a)` for image modules.
    pub fn phi(&self, a: &DiffPoly) -> Option<DiffPoly> {
        match &self.action {
            ModuleAction::Image { target, images } => {
                let tu = &target.gens;
                Some(a.substitute(tu, &mut |g, k| images[g as usize].partial_n(tu, k)))
            }
            ModuleAction::Table(_) => None,
        }
    }

    /// Generators of the module as elements: the basis, plus the unit when products exist.
    pub fn test_elements(&self) -> Vec<DiffPoly> {
        let mut out: Vec<DiffPoly> = (0..self.basis.len()).map(DiffPoly::gen).collect();
        if self.has_product() {
            out.push(DiffPoly::one());
        }
        out
    }
}

/// `a_λ m`.
pub fn module_action(a_spec: &AlgebraSpec, m_spec: &CoeffModule, a: &DiffPoly, m: &DiffPoly) -> Result<LambdaPoly, Error> {
    check_universe(&a_spec.gens, a)?;
    check_universe(&m_spec.basis, m)?;
    match &m_spec.action {
        ModuleAction::Image { target, .. } => {
            if a_spec.kind == Kind::Lca {
                require_linear(a)?;
            }
            let pa = m_spec.phi(a).unwrap();
            bracket(target, &pa, m)
        }
        ModuleAction::Table(t) => {
            if a.terms().keys().any(|x| x.degree() > 1) {
                return Err(Error::Unsupported(
                    "PVA-module action on a product requested for a module without product action".into(),
                ));
            }
            require_linear(m)?;
            let mut out = LambdaPoly::zero(1);
            for (ma, ca) in a.terms() {
                if ma.is_one() {
                    continue;
                }
                let (g, j) = ma.factors()[0];
                for (mm, cm) in m.terms() {
                    let (h, k) = mm.factors()[0];
                    let Some(base) = t.get(&(g as usize, h as usize)) else { continue };
                    let v = derivative_orders(&m_spec.basis, base.clone(), j, k);
                    out.add_assign_scaled(&v, &(ca * cm));
                }
            }
            Ok(out)
        }
    }
}

/// `b·m`.
pub fn module_product(a_spec: &AlgebraSpec, m_spec: &CoeffModule, b: &DiffPoly, m: &DiffPoly) -> Result<DiffPoly, Error> {
    check_universe(&a_spec.gens, b)?;
    check_universe(&m_spec.basis, m)?;
    match &m_spec.action {
        ModuleAction::Image { target, .. } => {
            let pb = m_spec.phi(b).unwrap();
            if target.kind == Kind::Lca {
                // only scalars act on an LCA by multiplication
                if pb.terms().keys().any(|x| !x.is_one()) {
                    return Err(no_product());
                }
            }
            Ok(pb.mul(&m_spec.basis, m))
        }
        ModuleAction::Table(_) => {
            if b.terms().keys().any(|x| !x.is_one()) {
                return Err(no_product());
            }
            Ok(m.scale(&b.constant_term()))
        }
    }
}

fn no_product() -> Error {
    Error::Unsupported("module has no product action by non-scalar elements".into())
}

/// `Σ_k (∂^k b)·(∂_{λ_i}^k p)/k!` with `b` acting through the product action.
pub fn module_taylor_shift(
    a_spec: &AlgebraSpec,
    m_spec: &CoeffModule,
    b: &DiffPoly,
    p: &LambdaPoly,
    i: usize,
) -> Result<LambdaPoly, Error> {
    match &m_spec.action {
        ModuleAction::Image { .. } if m_spec.has_product() => {
            let pb = m_spec.phi(b).unwrap();
            Ok(p.taylor_shift(&m_spec.basis, &pb, i))
        }
        _ => {
            let mut out = LambdaPoly::zero(p.nvars());
            let mut db = b.clone();
            let mut dp = p.clone();
            let mut k = 0u32;
            while !db.is_zero() && !dp.is_zero() {
                let scale = Rat::one() / crate::exact_core::rat::factorial(k);
                for (e, c) in dp.terms() {
                    let v = module_product(a_spec, m_spec, &db, c)?;
                    out.add_term(e.clone(), v.scale(&scale));
                }
                db = db.partial(&a_spec.gens);
                dp = dp.derivative(i);
                k += 1;
            }
            Ok(out)
        }
    }
}

/// `L_(1)` on a module element, as the λ-coefficient of the Virasoro action.
pub fn l1_module(a_spec: &AlgebraSpec, m_spec: &CoeffModule, m: &DiffPoly) -> Result<DiffPoly, Error> {
    let vir = a_spec
        .virasoro
        .as_ref()
        .ok_or_else(|| Error::Invalid("no Virasoro element designated".into()))?;
    Ok(module_action(a_spec, m_spec, &vir.element, m)?.coeff(&[1]))
}

/// Matrix of `m ↦ (a_λ m)|_{λ=0}` between weight slices of the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroMode {
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    /// One sparse column per source monomial, in target coordinates.
    pub columns: Vec<SparseVec>,
}

impl ZeroMode {
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

pub fn zero_mode(a_spec: &AlgebraSpec, m_spec: &CoeffModule, a: &DiffPoly, weight: &Rat) -> Result<ZeroMode, Error> {
    let wa = match a.weight(&a_spec.gens) {
        Some(w) => w,
        None if a.is_zero() => Rat::one(),
        None => return Err(Error::Invalid("zero mode needs a weight-homogeneous element".into())),
    };
    let shape = m_spec.shape();
    let source = monomials_of_weight(&m_spec.basis, weight, shape)?;
    let target = monomials_of_weight(&m_spec.basis, &(weight + wa - Rat::one()), shape)?;
    let index: BTreeMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut columns = Vec::with_capacity(source.len());
    for s in &source {
        let m = DiffPoly::from_monomial(s.clone(), Rat::one());
        let v = module_action(a_spec, m_spec, a, &m)?.coeff(&[0]);
        let mut col = SparseVec::new();
        for (tm, c) in v.terms() {
            let i = *index.get(tm).ok_or_else(|| Error::Invalid("zero mode left the weight slice".into()))?;
            col.insert(i, c.clone());
        }
        columns.push(col);
    }
    Ok(ZeroMode { source, target, columns })
}

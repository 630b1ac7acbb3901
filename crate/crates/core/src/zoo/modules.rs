//! Builtin coefficient modules.

use super::lie::LieAlgebraData;
use crate::algebra::{as_generator, central_quotient, AlgebraSpec, CoeffModule, Kind};
use crate::exact_core::{DiffPoly, GenDecl, LambdaPoly, Parity, Rat, Universe};
use crate::Error;

/// The algebra acting on itself.
pub fn adjoint(a: &AlgebraSpec) -> Result<CoeffModule, Error> {
    let ids = (0..a.gens.len()).map(DiffPoly::gen).collect();
    CoeffModule::image(a, "adjoint", a.clone(), ids)
}

fn point(a: &AlgebraSpec, name: &str) -> Result<CoeffModule, Error> {
    let target = AlgebraSpec::new(Kind::Pva, Universe::empty(), Vec::new())?;
    CoeffModule::image(a, name, target, vec![DiffPoly::zero(); a.gens.len()])
}

/// `𝔽` with zero λ-action and `∂ = 0`.
pub fn trivial(a: &AlgebraSpec) -> Result<CoeffModule, Error> {
    point(a, "trivial")
}

/// `𝔽` over a PVA, multiplied through the counit; a module only when M3 holds.
pub fn augmentation(a: &AlgebraSpec) -> Result<CoeffModule, Error> {
    point(a, "augmentation")
}

/// `M_Δ = 𝔽[∂]v` with `L_λ v = (∂+Δλ)v`; other generators act by zero.
pub fn m_delta(a: &AlgebraSpec, delta: &Rat) -> Result<CoeffModule, Error> {
    let l = a
        .virasoro
        .as_ref()
        .and_then(|v| as_generator(&v.element))
        .ok_or_else(|| Error::Invalid("M_Delta needs a Virasoro generator".into()))?;
    let basis = Universe::new(vec![GenDecl::new("v", Parity::Even, delta.clone(), false)])?;
    let mut act = LambdaPoly::zero(1);
    act.add_term(vec![0], DiffPoly::gen_deriv(0, 1));
    act.add_term(vec![1], DiffPoly::gen(0).scale(delta));
    CoeffModule::table(a, &format!("M_Delta={delta}"), basis, vec![((l, 0), act)])
}

/// `M_V = 𝔽[∂]V` for a representation `rep[a][k][h]` (`a·v_h = Σ_k rep[a][k][h] v_k`)
/// of the Lie algebra whose basis is the first `dim` generators of `a`.
pub fn m_v(
    a: &AlgebraSpec,
    g: &LieAlgebraData,
    ids: &[&str],
    rep: &[Vec<Vec<Rat>>],
    weight: &Rat,
) -> Result<CoeffModule, Error> {
    let n = g.dim();
    if rep.len() != n || a.gens.len() < n {
        return Err(Error::Invalid("representation does not match the Lie algebra".into()));
    }
    let d = ids.len();
    let basis = Universe::new(ids.iter().map(|id| GenDecl::even(id, weight.clone())).collect())?;
    let mut entries = Vec::new();
    for (x, mat) in rep.iter().enumerate() {
        if mat.len() != d || mat.iter().any(|r| r.len() != d) {
            return Err(Error::Invalid("representation matrices have the wrong size".into()));
        }
        for h in 0..d {
            let mut v = DiffPoly::zero();
            for (k, row) in mat.iter().enumerate() {
                v.add_assign_scaled(&DiffPoly::gen(k), &row[h]);
            }
            if !v.is_zero() {
                entries.push(((x, h), LambdaPoly::constant(1, v)));
            }
        }
    }
    CoeffModule::table(a, "M_V", basis, entries)
}

/// Matrices of the adjoint representation, `ad(a)[k][h] = c_{ah}^k`.
pub fn adjoint_rep(g: &LieAlgebraData) -> Vec<Vec<Vec<Rat>>> {
    let n = g.dim();
    (0..n).map(|a| (0..n).map(|k| (0..n).map(|h| g.structure[a][h][k].clone()).collect()).collect()).collect()
}

/// `V^c` as a module over the universal algebra `V`, through `C ↦ c`.
pub fn quotient_adjoint(v: &AlgebraSpec, c_gen: usize, c: &Rat) -> Result<CoeffModule, Error> {
    let q = central_quotient(v, c_gen, c)?;
    let images = (0..v.gens.len())
        .map(|g| match g.cmp(&c_gen) {
            std::cmp::Ordering::Less => DiffPoly::gen(g),
            std::cmp::Ordering::Equal => DiffPoly::constant(c.clone()),
            std::cmp::Ordering::Greater => DiffPoly::gen(g - 1),
        })
        .collect();
    CoeffModule::image(v, &format!("quotient adjoint at {c}"), q, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_module, module_action};
    use crate::exact_core::{int, rat};
    use crate::zoo::families::{make_affine, make_virasoro, reduced_lca, Level, VirasoroCharge};

    #[test]
    fn m_delta_action_and_check() {
        let f = make_virasoro(&VirasoroCharge::Universal).unwrap();
        for d in [int(0), int(1), rat(-3, 2), rat(7, 3)] {
            let m = m_delta(&f.lca, &d).unwrap();
            let v = module_action(&f.lca, &m, &DiffPoly::gen(0), &DiffPoly::gen(0)).unwrap();
            assert_eq!(v.coeff(&[1]), DiffPoly::gen(0).scale(&d));
            assert!(check_module(&f.lca, &m).unwrap().passed());
        }
    }

    #[test]
    fn mutated_m_delta_fails() {
        let f = make_virasoro(&VirasoroCharge::Universal).unwrap();
        let basis = Universe::new(vec![GenDecl::even("v", int(1))]).unwrap();
        let mut act = LambdaPoly::zero(1);
        act.add_term(vec![0], DiffPoly::gen_deriv(0, 1));
        act.add_term(vec![1], DiffPoly::gen(0));
        // (∂+λ+1)v is not weight-homogeneous
        let shifted = act.add(&LambdaPoly::constant(1, DiffPoly::gen(0)));
        assert!(CoeffModule::table(&f.lca, "shifted", basis.clone(), vec![((0, 0), shifted)]).is_err());
        let m = CoeffModule::table(&f.lca, "doubled", basis, vec![((0, 0), act.scale(&int(2)))]).unwrap();
        let r = check_module(&f.lca, &m).unwrap();
        assert!(r.violations.iter().any(|v| v.identity.starts_with("M2")));
    }

    #[test]
    fn augmentation_obstructed_by_central_charge() {
        let one = make_virasoro(&VirasoroCharge::Value(int(1))).unwrap();
        let zero = make_virasoro(&VirasoroCharge::Value(int(0))).unwrap();
        assert!(check_module(&zero.pva, &augmentation(&zero.pva).unwrap()).unwrap().passed());
        let r = check_module(&one.pva, &augmentation(&one.pva).unwrap()).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.identity.starts_with("M3") && v.residual.contains("1/12")));
    }

    #[test]
    fn adjoint_and_quotient_modules_pass() {
        let u = make_virasoro(&VirasoroCharge::Universal).unwrap();
        assert!(check_module(&u.pva, &adjoint(&u.pva).unwrap()).unwrap().passed());
        assert!(check_module(&u.pva, &quotient_adjoint(&u.pva, 1, &int(1)).unwrap()).unwrap().passed());
        let bar = reduced_lca(&u).unwrap();
        assert!(check_module(&bar, &trivial(&bar).unwrap()).unwrap().passed());
    }

    #[test]
    fn current_module() {
        let g = LieAlgebraData::sl2();
        let f = make_affine(&g, &Level::Universal).unwrap();
        let bar = reduced_lca(&f).unwrap();
        let m = m_v(&bar, &g, &["e", "h", "f"], &adjoint_rep(&g), &int(1)).unwrap();
        assert!(check_module(&bar, &m).unwrap().passed());
        // h_λ e = 2e
        let v = module_action(&bar, &m, &DiffPoly::gen(1), &DiffPoly::gen(0)).unwrap();
        assert_eq!(v, LambdaPoly::constant(1, DiffPoly::gen(0).scale(&int(2))));
    }
}

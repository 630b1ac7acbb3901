use confcoh::algebra::{
    bracket, central_quotient, check_axioms, check_module, check_virasoro, jacobi_residual, module_action,
    skew_residual, universal_pva, zero_mode, AlgebraSpec, Charge, Kind,
};
use confcoh::exact_core::{int, rat, DiffPoly, GenDecl, LambdaPoly, Rat, Universe};
use confcoh::zoo::{
    adjoint, m_delta, make_affine, make_free_boson, make_free_fermion, make_virasoro, trivial, FormData, LieAlgebraData,
    Level, VirasoroCharge,
};
use num_traits::Zero;

fn lam(e: u32, c: DiffPoly) -> LambdaPoly {
    LambdaPoly::term(1, vec![e], c)
}

fn virasoro_value(c: &Rat) -> LambdaPoly {
    lam(0, DiffPoly::gen_deriv(0, 1))
        .add(&lam(1, DiffPoly::gen(0).scale(&int(2))))
        .add(&lam(3, DiffPoly::constant(c / int(12))))
}

#[test]
fn virasoro_bracket() {
    for c in [int(0), int(1), rat(-22, 5)] {
        let f = make_virasoro(&VirasoroCharge::Value(c.clone())).unwrap();
        let l = DiffPoly::gen(0);
        assert_eq!(bracket(&f.pva, &l, &l).unwrap(), virasoro_value(&c));
    }
}

#[test]
fn boson_bracket_is_the_form() {
    let gram = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
    let f = make_free_boson(&FormData::new(&["a", "b"], vec![confcoh::exact_core::Parity::Even; 2], gram.clone())).unwrap();
    let k = DiffPoly::gen(2);
    for i in 0..2 {
        for j in 0..2 {
            let v = bracket(&f.lca, &DiffPoly::gen(i), &DiffPoly::gen(j)).unwrap();
            assert_eq!(v, lam(1, k.scale(&gram[i][j])));
        }
    }
}

#[test]
fn bracket_with_a_square() {
    let f = make_virasoro(&VirasoroCharge::Value(int(0))).unwrap();
    let u = &f.pva.gens;
    let l = DiffPoly::gen(0);
    let l2 = l.mul(u, &l);
    // 2L·(∂+2λ)L
    let want = lam(0, l.mul(u, &DiffPoly::gen_deriv(0, 1)).scale(&int(2))).add(&lam(1, l2.scale(&int(4))));
    assert_eq!(bracket(&f.pva, &l, &l2).unwrap(), want);
}

#[test]
fn axiom_checks() {
    for c in [VirasoroCharge::Universal, VirasoroCharge::Value(int(1))] {
        let f = make_virasoro(&c).unwrap();
        assert!(check_axioms(&f.lca).unwrap().passed());
        assert!(check_axioms(&f.pva).unwrap().passed());
    }
    let ab = AlgebraSpec::new(
        Kind::Lca,
        Universe::new(vec![GenDecl::even("x", int(1)), GenDecl::odd("y", rat(1, 2))]).unwrap(),
        Vec::new(),
    )
    .unwrap();
    assert!(check_axioms(&ab).unwrap().passed());
}

fn mutated_virasoro() -> AlgebraSpec {
    let u = Universe::new(vec![GenDecl::even("L", int(2))]).unwrap();
    let v = lam(0, DiffPoly::gen_deriv(0, 1)).add(&lam(1, DiffPoly::gen(0).scale(&int(3))));
    AlgebraSpec::new(Kind::Pva, u, vec![((0, 0), v)]).unwrap()
}

#[test]
fn mutated_bracket_is_detected() {
    let a = mutated_virasoro();
    let l = DiffPoly::gen(0);
    let j = jacobi_residual(&a, &l, &l, &l).unwrap();
    assert!(!j.is_zero());
    // [L_λ L] − (−[L_{−λ−∂} L]) = (2∂ + 3λ + 3(−λ−∂))L = −∂L
    let s = skew_residual(&a, &l, &l).unwrap();
    assert_eq!(s, lam(0, DiffPoly::gen_deriv(0, 1).neg()));
    let rep = check_axioms(&a).unwrap();
    assert!(!rep.passed());
}

#[test]
fn conformal_structures() {
    let vir = make_virasoro(&VirasoroCharge::Value(int(1))).unwrap();
    let r = check_virasoro(&vir.pva).unwrap();
    assert!(r.report.passed());
    assert_eq!(r.charge, Some(Charge::Scalar(int(1))));

    let bos = make_free_boson(&FormData::identity(2)).unwrap();
    let r = check_virasoro(&bos.pva).unwrap();
    assert!(r.report.passed());
    assert_eq!(r.charge, Some(Charge::Scalar(Rat::zero())));
    assert_eq!(bos.pva.gens.weight(0), &int(1));

    let fer = make_free_fermion(&FormData::fermion(2).unwrap()).unwrap();
    let r = check_virasoro(&fer.pva).unwrap();
    assert!(r.report.passed());
    assert_eq!(fer.pva.gens.weight(0), &rat(1, 2));

    let aff = make_affine(&LieAlgebraData::sl2(), &Level::Value(int(1))).unwrap();
    assert!(check_axioms(&aff.pva).unwrap().passed());
    assert!(check_virasoro(&aff.pva).unwrap().report.passed());
}

#[test]
fn module_actions() {
    let f = make_virasoro(&VirasoroCharge::Universal).unwrap();
    let l = DiffPoly::gen(0);
    let v = DiffPoly::gen(0);
    for d in [int(0), int(1), rat(3, 2)] {
        let m = m_delta(&f.lca, &d).unwrap();
        let want = lam(0, DiffPoly::gen_deriv(0, 1)).add(&lam(1, v.scale(&d)));
        assert_eq!(module_action(&f.lca, &m, &l, &v).unwrap(), want);
        assert!(check_module(&f.lca, &m).unwrap().passed());
    }

    let t = trivial(&f.pva).unwrap();
    assert!(module_action(&f.pva, &t, &l, &DiffPoly::one()).unwrap().is_zero());

    let c = make_virasoro(&VirasoroCharge::Value(int(1))).unwrap();
    let ad = adjoint(&c.pva).unwrap();
    assert_eq!(module_action(&c.pva, &ad, &l, &l).unwrap(), virasoro_value(&int(1)));
    assert!(check_module(&c.pva, &ad).unwrap().passed());
}

#[test]
fn universal_pva_and_quotients() {
    let ab = AlgebraSpec::new(Kind::Lca, Universe::new(vec![GenDecl::even("x", int(1))]).unwrap(), Vec::new()).unwrap();
    let v = universal_pva(&ab).unwrap();
    assert_eq!(v.kind, Kind::Pva);
    assert!(v.table().is_empty());

    let vir = make_virasoro(&VirasoroCharge::Universal).unwrap();
    let q = central_quotient(&vir.pva, 1, &int(1)).unwrap();
    assert_eq!(bracket(&q, &DiffPoly::gen(0), &DiffPoly::gen(0)).unwrap(), virasoro_value(&int(1)));

    // K ↦ 0 kills the whole boson bracket
    let bos = make_free_boson(&FormData::identity(2)).unwrap();
    let z = central_quotient(&universal_pva(&bos.lca).unwrap(), 2, &int(0)).unwrap();
    assert!(z.table().is_empty());
}

#[test]
fn zero_modes() {
    // x = ψ⁺ψ⁻ acts on 𝔥 by a ↦ (ψ⁻|a)ψ⁺ − (ψ⁺|a)ψ⁻
    let f = make_free_fermion(&FormData::fermion(2).unwrap()).unwrap();
    let u = &f.pva.gens;
    let x = DiffPoly::gen(0).mul(u, &DiffPoly::gen(1));
    let ad = adjoint(&f.pva).unwrap();
    let z = zero_mode(&f.pva, &ad, &x, &rat(1, 2)).unwrap();
    let col = |a: usize| -> DiffPoly {
        let mut p = DiffPoly::zero();
        for (i, c) in &z.columns[a] {
            p.add_assign_scaled(&DiffPoly::from_monomial(z.target[*i].clone(), int(1)), c);
        }
        p
    };
    let a_of = |m: &confcoh::exact_core::Monomial| m.factors().to_vec();
    assert_eq!(z.source.len(), 2);
    for (k, s) in z.source.iter().enumerate() {
        let got = col(k);
        match a_of(s).as_slice() {
            [(0, 0)] => assert_eq!(got, DiffPoly::gen(0)),
            [(1, 0)] => assert_eq!(got, DiffPoly::gen(1).neg()),
            other => panic!("unexpected source {other:?}"),
        }
    }

    // L_(0) is ∂
    let c = make_virasoro(&VirasoroCharge::Value(int(1))).unwrap();
    let ad = adjoint(&c.pva).unwrap();
    let l = DiffPoly::gen(0);
    for w in [2, 4, 5] {
        let z = zero_mode(&c.pva, &ad, &l, &int(w)).unwrap();
        for (k, s) in z.source.iter().enumerate() {
            let m = DiffPoly::from_monomial(s.clone(), int(1));
            let mut got = DiffPoly::zero();
            for (i, cf) in &z.columns[k] {
                got.add_assign_scaled(&DiffPoly::from_monomial(z.target[*i].clone(), int(1)), cf);
            }
            assert_eq!(got, m.partial(&c.pva.gens));
        }
    }

    // central elements act by zero
    let aff = make_affine(&LieAlgebraData::sl2(), &Level::Universal).unwrap();
    let ad = adjoint(&aff.lca).unwrap();
    assert!(zero_mode(&aff.lca, &ad, &DiffPoly::gen(3), &int(1)).unwrap().is_zero());
}

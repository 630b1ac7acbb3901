use confcoh::exact_core::{
    dp_mul, dp_partial, int, lambda_monomials, quotient_normal_form, rat, taylor_shift, weight_slice_basis, DiffPoly,
    GenDecl, LambdaPoly, Monomial, Parity, Rat, Shape, Universe,
};
use num_traits::Zero;

fn vir() -> Universe {
    Universe::new(vec![GenDecl::even("L", int(2))]).unwrap()
}

fn vir_with_c() -> Universe {
    Universe::new(vec![GenDecl::even("L", int(2)), GenDecl::new("C", Parity::Even, int(0), true)]).unwrap()
}

fn odd_pair() -> Universe {
    Universe::new(vec![GenDecl::odd("a", rat(1, 2)), GenDecl::odd("b", rat(1, 2))]).unwrap()
}

#[test]
fn odd_square_vanishes() {
    let u = odd_pair();
    let a = DiffPoly::gen(0);
    assert!(dp_mul(&u, &a, &a).unwrap().is_zero());
    // also for a derivative
    let da = DiffPoly::gen_deriv(0, 2);
    assert!(dp_mul(&u, &da, &da).unwrap().is_zero());
}

#[test]
fn odd_elements_anticommute() {
    let u = odd_pair();
    let (a, b) = (DiffPoly::gen(0), DiffPoly::gen_deriv(1, 1));
    let ab = dp_mul(&u, &a, &b).unwrap();
    let ba = dp_mul(&u, &b, &a).unwrap();
    assert!(!ab.is_zero());
    assert_eq!(ba, ab.neg());
}

#[test]
fn product_is_associative() {
    let u = vir();
    let l = DiffPoly::gen(0);
    let dl = DiffPoly::gen_deriv(0, 1);
    let left = dp_mul(&u, &dp_mul(&u, &l, &l).unwrap(), &dl).unwrap();
    let right = dp_mul(&u, &l, &dp_mul(&u, &l, &dl).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn derivation_examples() {
    let u = vir_with_c();
    let l = DiffPoly::gen(0);
    let ll = dp_mul(&u, &l, &l).unwrap();
    let want = dp_mul(&u, &DiffPoly::gen_deriv(0, 1), &l).unwrap().scale(&int(2));
    assert_eq!(dp_partial(&u, &ll), want);
    assert!(dp_partial(&u, &DiffPoly::one()).is_zero());
    assert!(dp_partial(&u, &DiffPoly::gen(1)).is_zero());
}

#[test]
fn permutations_relabel_variables() {
    let one = DiffPoly::one();
    let p = LambdaPoly::term(2, vec![2, 1], one.clone());
    assert_eq!(p.permute(&[1, 0]).unwrap(), LambdaPoly::term(2, vec![1, 2], one.clone()));

    let mut sym = LambdaPoly::var(2, 0, one.clone());
    sym = sym.add(&LambdaPoly::var(2, 1, one.clone()));
    assert_eq!(sym.permute(&[1, 0]).unwrap(), sym);

    let cube = LambdaPoly::term(2, vec![3, 0], one.clone());
    assert_eq!(cube.permute(&[1, 0]).unwrap(), LambdaPoly::term(2, vec![0, 3], one));

    assert!(p.permute(&[0, 0]).is_err());
    assert!(p.permute(&[0]).is_err());
}

fn module_u() -> Universe {
    Universe::new(vec![GenDecl::even("m", int(1))]).unwrap()
}

#[test]
fn quotient_normal_forms() {
    let u = module_u();
    let m = DiffPoly::gen(0);
    let dm = DiffPoly::gen_deriv(0, 1);

    let gen_of_ideal = LambdaPoly::constant(1, dm.clone()).add(&LambdaPoly::var(1, 0, m.clone()));
    assert!(quotient_normal_form(&u, &gen_of_ideal).is_zero());

    // λ₂m with λ₂ = −λ₁ − ∂ acting on m: −λ₁m − ∂m
    let want = LambdaPoly::var(2, 0, m.neg()).add(&LambdaPoly::constant(2, dm.neg()));
    assert_eq!(quotient_normal_form(&u, &LambdaPoly::var(2, 1, m.clone())).rep(), &want);

    let l1 = LambdaPoly::var(2, 0, m.clone());
    assert_eq!(quotient_normal_form(&u, &l1).rep(), &l1);
}

// Expands (−λ₁ − ∂)^k m by repeated multiplication, independent of the substitution code.
fn expand_power(u: &Universe, k: u32) -> LambdaPoly {
    let mut acc = LambdaPoly::constant(2, DiffPoly::gen(0));
    for _ in 0..k {
        let times_lambda = acc.mul_var_pow(0, 1).neg();
        let times_d = acc.map_coeffs(|c| c.partial(u).neg());
        acc = times_lambda.add(&times_d);
    }
    acc
}

#[test]
fn normal_form_matches_expansion() {
    let u = module_u();
    for k in 0..6u32 {
        let p = LambdaPoly::term(2, vec![1, k], DiffPoly::gen(0));
        let want = expand_power(&u, k).mul_var_pow(0, 1);
        assert_eq!(quotient_normal_form(&u, &p).rep(), &want, "k = {k}");
    }
}

#[test]
fn taylor_shift_examples() {
    let u = vir();
    let l = DiffPoly::gen(0);
    let p = LambdaPoly::var(2, 0, DiffPoly::one()).add(&LambdaPoly::term(2, vec![2, 3], l.clone()));
    assert_eq!(taylor_shift(&u, &DiffPoly::one(), &p, 0), p);

    let lam = LambdaPoly::var(1, 0, DiffPoly::one());
    let want = LambdaPoly::var(1, 0, l.clone()).add(&LambdaPoly::constant(1, DiffPoly::gen_deriv(0, 1)));
    assert_eq!(taylor_shift(&u, &l, &lam, 0), want);

    let c = LambdaPoly::term(2, vec![0, 4], l.clone());
    assert_eq!(taylor_shift(&u, &l, &c, 0), c.lmul(&u, &l));
}

#[test]
fn virasoro_slice_examples() {
    let u = vir();
    let w2 = weight_slice_basis(&u, &int(2), Shape::Full, 0).unwrap();
    assert_eq!(w2, vec![(Monomial::canonicalize(&u, vec![(0, 0)]).unwrap().1, vec![])]);

    let w3 = weight_slice_basis(&u, &int(3), Shape::Full, 1).unwrap();
    let mut got: Vec<(Vec<(u32, u32)>, Vec<u32>)> = w3.iter().map(|(m, e)| (m.factors().to_vec(), e.clone())).collect();
    got.sort();
    let mut want = vec![(vec![], vec![3]), (vec![(0, 0)], vec![1]), (vec![(0, 1)], vec![0])];
    want.sort();
    assert_eq!(got, want);

    let w0 = weight_slice_basis(&u, &int(0), Shape::Full, 0).unwrap();
    assert_eq!(w0.len(), 1);
    assert!(w0[0].0.is_one());
}

// Partitions of w into parts ≥ 2 count the monomials in L, ∂L, ∂²L, ... of weight w.
fn partitions_min2(w: u32) -> u64 {
    fn go(w: u32, min: u32) -> u64 {
        if w == 0 {
            return 1;
        }
        (min..=w).map(|p| go(w - p, p)).sum()
    }
    go(w, 2)
}

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn slice_sizes_match_enumeration() {
    let u = vir();
    for n in 0..3usize {
        for w in 0..=6u32 {
            let got = weight_slice_basis(&u, &int(w as i64), Shape::Full, n).unwrap().len() as u64;
            let want: u64 = if n == 0 {
                partitions_min2(w)
            } else {
                (0..=w).map(|j| partitions_min2(w - j) * choose(j as u64 + n as u64 - 1, n as u64 - 1)).sum()
            };
            assert_eq!(got, want, "n = {n}, w = {w}");
        }
    }
    for n in 1..4usize {
        for d in 0..5u32 {
            assert_eq!(lambda_monomials(n, d).len() as u64, choose(d as u64 + n as u64 - 1, n as u64 - 1));
        }
    }
}

#[test]
fn unbounded_slices_are_rejected() {
    let u = vir_with_c();
    assert!(matches!(
        weight_slice_basis(&u, &int(2), Shape::Full, 0),
        Err(confcoh::Error::UnboundedSlice(_))
    ));
    // the linear span is still finite: C appears once
    let lin = weight_slice_basis(&u, &Rat::zero(), Shape::Linear, 0).unwrap();
    assert_eq!(lin.len(), 1);
}

//! Exact scalars, differential superpolynomials, λ-polynomials, quotient normal forms,
//! weight slices and rational linear algebra.

pub mod diffpoly;
pub mod gens;
pub mod lambda;
pub mod linalg;
pub mod quotient;
pub mod rat;
pub mod slice;

pub use diffpoly::{DiffPoly, Factor, Monomial};
pub use gens::{GenDecl, Parity, Universe};
pub use lambda::{Exps, LambdaPoly};
pub use quotient::{normalize_slots, quotient_normal_form, QClass};
pub use rat::{int, rat, Rat};
pub use slice::{lambda_monomials, monomials_of_weight, weight_slice_basis, Shape};

/// `a · b` in the algebra over `u`.
pub fn dp_mul(u: &Universe, a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly, crate::Error> {
    check_universe(u, a)?;
    check_universe(u, b)?;
    Ok(a.mul(u, b))
}

/// `∂a` in the algebra over `u`.
pub fn dp_partial(u: &Universe, a: &DiffPoly) -> DiffPoly {
    a.partial(u)
}

/// `Σ_k (∂^k b)(∂_{λ_i}^k p)/k!`.
pub fn taylor_shift(u: &Universe, b: &DiffPoly, p: &LambdaPoly, i: usize) -> LambdaPoly {
    p.taylor_shift(u, b, i)
}

/// Rejects elements that mention generators outside the universe.
pub fn check_universe(u: &Universe, a: &DiffPoly) -> Result<(), crate::Error> {
    match a.max_gen() {
        Some(g) if g as usize >= u.len() => Err(crate::Error::Invalid(format!(
            "element uses generator index {g} outside a universe of {} generators",
            u.len()
        ))),
        _ => Ok(()),
    }
}

//! Normal forms modulo `⟨∂ + λ_1 + … + λ_n⟩`.

use num_traits::{One, Zero};

use super::gens::Universe;
use super::lambda::LambdaPoly;
use super::rat::Rat;

/// A class in `M[λ_1..λ_n]/⟨∂+λ_1+…+λ_n⟩` stored by its unique representative free of `λ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QClass {
    n: usize,
    rep: LambdaPoly,
}

impl QClass {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn rep(&self) -> &LambdaPoly {
        &self.rep
    }

    pub fn into_rep(self) -> LambdaPoly {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// Eliminates the last of the first `slots` variables through `λ_last ↦ −Σ λ_other − ∂`.
///
/// Variables with index `≥ slots` are inert parameters.
pub fn normalize_slots(u: &Universe, p: &LambdaPoly, slots: usize) -> LambdaPoly {
    assert!(slots >= 1 && slots <= p.nvars());
    let j = slots - 1;
    if p.degree_in(j) == 0 {
        return p.clone();
    }
    let mut form = vec![Rat::zero(); p.nvars()];
    for f in form.iter_mut().take(j) {
        *f = -Rat::one();
    }
    p.substitute_with_partial(u, j, &form, &-Rat::one())
}

/// Normal form of `p ∈ M[λ_1..λ_n]`, `n ≥ 1`.
pub fn quotient_normal_form(u: &Universe, p: &LambdaPoly) -> QClass {
    let n = p.nvars();
    assert!(n >= 1, "the quotient normal form needs at least one variable");
    QClass { n, rep: normalize_slots(u, p, n) }
}

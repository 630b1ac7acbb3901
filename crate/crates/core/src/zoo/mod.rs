//! Builtin algebras and modules: free boson, free fermion, affine, Virasoro.

pub mod families;
pub mod lie;
pub mod modules;

pub use families::{
    make_affine, make_free_boson, make_free_fermion, make_virasoro, reduced_lca, Family, FormData, Level,
    VirasoroCharge,
};
pub use lie::LieAlgebraData;
pub use modules::{adjoint, adjoint_rep, augmentation, m_delta, m_v, quotient_adjoint, trivial};

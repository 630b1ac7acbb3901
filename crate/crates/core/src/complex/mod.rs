//! Cochain complexes of LCAs and PVAs, their differentials and cohomology.

mod basic;
mod cochain;
mod cohomology;
mod relations;
mod slice;

pub use basic::{cartan_residual, cartan_residual0, cartan_residual_with, Contraction};
pub use cochain::{Cochain, Complex, ComplexKind, Flavor};
pub use cohomology::{
    applicability, casimirs, cohomology, derivations_mod_inner, module_weights, verify_cocycle, Applicability,
    CocycleReport, CohomologyReport, Options, SliceCohomology,
};
pub use relations::{central_ext_relation, lc_pv_isomorphism_check, CentralExtReport, IsoSlice};
pub use slice::SliceBasis;

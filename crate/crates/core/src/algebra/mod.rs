//! Algebra and coefficient-module specifications, λ-bracket extension and axiom checks.

pub mod bracket;
pub mod checks;
pub mod module;
pub mod spec;

pub use bracket::{bracket, jacobi_residual, skew_residual};
pub use checks::{check_axioms, check_axioms_with, check_module, check_virasoro, Report, VirasoroReport, Violation};
pub use module::{
    l1_module, module_action, module_product, module_taylor_shift, zero_mode, CoeffModule, ModuleAction, ZeroMode,
};
pub use spec::{as_generator, central_quotient, universal_pva, AlgebraSpec, Charge, Kind, Virasoro};

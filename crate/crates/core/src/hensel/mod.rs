//! σ-Hensel configurations, root lifting and their applications.

pub mod configuration;
pub mod density;
pub mod generic;
pub mod lift;
pub mod pc;

pub use configuration::{find_configuration, Configuration};
pub use density::{additive_poly, approximate_preimage, solve_additive, solve_additive_with};
pub use generic::{check_regular, fresh_generic};
pub use lift::{lift_root, lift_root_with, LiftOptions, LiftOutcome, LiftStep, StopRule};
pub use pc::{pc_analyze, PcReport, PolyEvidence};

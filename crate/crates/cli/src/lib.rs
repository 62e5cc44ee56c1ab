//! Scenario runner binding kernel computations to the fixed claim registry,
//! plus the conjecture harness and report emission.

pub mod conjecture;
pub mod emit;
pub mod registry;
pub mod scenario;

pub use emit::{emit, Format, Report};
pub use scenario::{run, Budget, CliError, FamilyTag, ScenarioConfig};

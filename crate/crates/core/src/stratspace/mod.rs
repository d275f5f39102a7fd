//! Scenarios: the ambient ring, the variety, its stratification by orbit
//! closures and the perversity, plus the checks that can be made on them.

mod scenario;
mod schema;
mod support;
mod validate;

pub use scenario::{Perversity, PerversityFlags, Scenario, Stratum};
pub use schema::{ComplexRecord, CuttingRecord, MeasuringRecord, ScenarioRecord, StratumRecord};
pub use support::{stratified_support_check, stratified_support_of, StratifiedSupport};
pub use validate::{validate_scenario, Check, ValidationReport};

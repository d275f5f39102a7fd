//! Bounded complexes of free modules, their cohomology and duals, and the
//! support criterion for local cohomology.

mod cohomology;
mod complex;
mod ext;

pub use cohomology::{
    cohomology_module, local_cohomology_min_degree, min_degree_from_dual, nonzero_cohomology, support_dimension,
    CohomologySheaf,
};
pub use complex::{DualizingData, FreeComplex, Violation};
pub use ext::{ext_colimit_oracle, hom_complex, least_nonvanishing_degree, OracleScan, OracleVerdict};

/// `D C` for the ambient normalization.
pub fn dualize<F: crate::Field>(c: &FreeComplex<F>, dual: &DualizingData) -> FreeComplex<F> {
    c.dualize(dual)
}

/// Checks shapes and `d∘d = 0`.
pub fn validate_complex<F: crate::Field>(c: &FreeComplex<F>) -> Result<(), Violation> {
    c.validate()
}

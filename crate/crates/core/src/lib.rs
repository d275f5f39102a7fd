//! Perversity tests for bounded complexes of coherent sheaves on stratified
//! affine varieties, and construction of measuring subvarieties.
//!
//! The algebra is generic over an exact coefficient [`Field`]; the aliases
//! below fix the rationals, which is what the scenario files and the CLI use.
//!
//! Module map:
//! - [`polycore`]: polynomials, Gröbner bases, syzygies, resolutions, annihilators.
//! - [`homcx`]: free complexes, cohomology, duality, local cohomology bounds and the Ext oracle.
//! - [`stratspace`]: scenarios (variety, strata, perversity) and their validation.
//! - [`perversity`]: t-structure membership tests.
//! - [`measuring`]: measuring subvarieties, families and their construction.

pub mod error;
pub mod homcx;
pub mod measuring;
pub mod perversity;
pub mod polycore;
pub mod scalar;
pub mod stratspace;

pub use error::{Error, Result};
pub use scalar::Field;

/// Arbitrary-precision rationals, the default coefficient field.
pub type Q = num_rational::BigRational;

pub type Poly = polycore::Polynomial<Q>;
pub type QIdeal = polycore::Ideal<Q>;
pub type QMatrix = polycore::Matrix<Q>;
pub type QModule = polycore::PresentedModule<Q>;
pub type Complex = homcx::FreeComplex<Q>;
pub type QScenario = stratspace::Scenario<Q>;

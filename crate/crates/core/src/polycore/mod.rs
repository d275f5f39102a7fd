//! Exact polynomial arithmetic and the Gröbner machinery built on it.

mod dimension;
mod groebner;
mod ideal;
mod module;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod syzygy;

pub use dimension::{DegreeBound, Dimension};
pub use groebner::{groebner_basis, is_groebner_basis, module_groebner_basis, module_normal_form, normal_form};
pub use ideal::Ideal;
pub use module::{FreeElement, Matrix, PresentedModule, Submodule};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use syzygy::{annihilator, free_resolution, intersect_submodules, minimize_generators, submodule_quotient, syzygy_module};

/// Radical membership: some power of `f` lies in `ideal`.
pub fn radical_membership<F: crate::Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> bool {
    ideal.radical_contains(f)
}

/// Krull dimension of `S / ideal`.
pub fn dimension<F: crate::Field>(ideal: &Ideal<F>) -> Dimension {
    ideal.dimension()
}

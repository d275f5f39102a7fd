use std::fmt;
use std::sync::OnceLock;

use super::dimension::max_independent_set;
use super::groebner::{groebner_basis, normal_form};
use super::syzygy::intersect_submodules;
use super::{Dimension, FreeElement, MonomialOrder, Polynomial, Submodule};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// An ideal of the ambient polynomial ring. The reduced grevlex Gröbner basis
/// is computed once, on first use, and shared by all readers.
#[derive(Debug)]
pub struct Ideal<F> {
    nvars: usize,
    generators: Vec<Polynomial<F>>,
    cache: OnceLock<(MonomialOrder, Vec<Polynomial<F>>)>,
}

impl<F: Clone> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: self.cache.clone(),
        }
    }
}

impl<F: Field> PartialEq for Ideal<F> {
    /// Equality of generator lists, not of ideals; see [`Ideal::same_as`].
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.generators == other.generators
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(nvars: usize, generators: Vec<Polynomial<F>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableMismatch {
                expected: nvars,
                found: g.nvars(),
            });
        }
        Ok(Ideal {
            nvars,
            generators,
            cache: OnceLock::new(),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal::new(nvars, Vec::new()).unwrap()
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal::new(nvars, vec![Polynomial::one(nvars)]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.cached().0
    }

    fn cached(&self) -> &(MonomialOrder, Vec<Polynomial<F>>) {
        self.cache.get_or_init(|| {
            let order = MonomialOrder::grevlex(self.nvars);
            let gb = groebner_basis(&self.generators, &order);
            (order, gb)
        })
    }

    /// Reduced Gröbner basis for grevlex.
    pub fn groebner_basis(&self) -> &[Polynomial<F>] {
        &self.cached().1
    }

    /// Reduced Gröbner basis for an arbitrary order (not cached).
    pub fn groebner_basis_for(&self, order: &MonomialOrder) -> Vec<Polynomial<F>> {
        groebner_basis(&self.generators, order)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let (order, gb) = self.cached();
        normal_form(f, gb, order)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// `1 ∈ I`, i.e. `V(I)` is empty over the algebraic closure.
    pub fn is_unit_ideal(&self) -> bool {
        self.groebner_basis().iter().any(Polynomial::is_unit)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &Ideal<F>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, g).expect("same ring")
    }

    pub fn with(&self, extra: &[Polynomial<F>]) -> Ideal<F> {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(self.nvars, g).expect("same ring")
    }

    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut g = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let p = a * b;
                if !p.is_zero() && !g.contains(&p) {
                    g.push(p);
                }
            }
        }
        Ideal::new(self.nvars, g).expect("same ring")
    }

    pub fn intersection(&self, other: &Ideal<F>) -> Ideal<F> {
        let lift = |i: &Ideal<F>| {
            Submodule::new(
                self.nvars,
                1,
                i.generators
                    .iter()
                    .filter(|g| !g.is_zero())
                    .map(|g| FreeElement::new(vec![g.clone()]))
                    .collect(),
            )
            .expect("rank one")
        };
        let m = intersect_submodules(&lift(self), &lift(other));
        Ideal::new(
            self.nvars,
            m.generators()
                .iter()
                .map(|v| v.components()[0].clone())
                .collect(),
        )
        .expect("same ring")
    }

    /// Radical membership: `f^k ∈ I` for some `k`, decided by testing
    /// `1 ∈ I + (1 - t f)` in the ring with one more variable `t`.
    pub fn radical_contains(&self, f: &Polynomial<F>) -> bool {
        let n = self.nvars;
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial<F>> = self.generators.iter().map(|g| g.extend_vars(1)).collect();
        gens.push(&Polynomial::one(n + 1) - &(&t * &f.extend_vars(1)));
        groebner_basis(&gens, &MonomialOrder::grevlex(n + 1))
            .iter()
            .any(Polynomial::is_unit)
    }

    /// `√other ⊆ √self`, i.e. `V(self) ⊆ V(other)`.
    pub fn radical_contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.generators.iter().all(|g| self.radical_contains(g))
    }

    /// Equal radicals, by mutual radical membership of generators.
    pub fn same_radical(&self, other: &Ideal<F>) -> bool {
        self.radical_contains_ideal(other) && other.radical_contains_ideal(self)
    }

    /// Monomial ideal of grevlex leading terms.
    pub fn initial_ideal(&self) -> Ideal<F> {
        let (order, gb) = self.cached();
        Ideal::new(
            self.nvars,
            gb.iter()
                .map(|g| {
                    let (m, _) = g.leading_term(order).unwrap();
                    Polynomial::term(self.nvars, m.clone(), F::one())
                })
                .collect(),
        )
        .unwrap()
    }

    /// Krull dimension of `S / I`: the largest set of variables independent
    /// modulo the initial ideal.
    pub fn dimension(&self) -> Dimension {
        if self.is_unit_ideal() {
            return Dimension::MinusInfinity;
        }
        let (order, gb) = self.cached();
        let masks: Vec<u64> = gb
            .iter()
            .map(|g| g.leading_term(order).unwrap().0.support_mask())
            .collect();
        Dimension::Finite(max_independent_set(self.nvars, &masks) as i64)
    }

    pub fn to_texts(&self, names: &[String]) -> Vec<String> {
        self.generators.iter().map(|g| g.to_text(names)).collect()
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

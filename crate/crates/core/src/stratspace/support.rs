use serde::Serialize;

use super::scenario::Scenario;
use crate::polycore::{annihilator, Ideal, PresentedModule};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratifiedSupport {
    pub stratified: bool,
    /// Names of the maximal stratum closures whose union is the support.
    pub decomposition: Vec<String>,
    #[serde(skip)]
    pub indices: Vec<usize>,
}

pub fn stratified_support_check<F: Field>(m: &PresentedModule<F>, s: &Scenario<F>) -> StratifiedSupport {
    stratified_support_of(&annihilator(m), s)
}

/// Decides whether `V(ann)` is a union of stratum closures.
///
/// Candidates are the closures inside `V(ann)`; the support is stratified
/// iff the maximal candidates cover it, i.e. their product lies in `√ann`.
pub fn stratified_support_of<F: Field>(ann: &Ideal<F>, s: &Scenario<F>) -> StratifiedSupport {
    if ann.is_unit_ideal() {
        return StratifiedSupport {
            stratified: true,
            decomposition: vec![],
            indices: vec![],
        };
    }
    let candidates: Vec<usize> = (0..s.strata.len())
        .filter(|&i| s.strata[i].ideal.radical_contains_ideal(ann))
        .collect();
    let maximal: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&i| {
            !candidates.iter().any(|&j| {
                j != i && s.closure_contained(i, j) && (!s.closure_contained(j, i) || j < i)
            })
        })
        .collect();
    let mut product = Ideal::unit(s.nvars());
    for &i in &maximal {
        product = product.product(&s.strata[i].ideal);
    }
    let stratified = !maximal.is_empty() && ann.radical_contains_ideal(&product);
    StratifiedSupport {
        stratified,
        decomposition: if stratified {
            maximal.iter().map(|&i| s.strata[i].name.clone()).collect()
        } else {
            vec![]
        },
        indices: if stratified { maximal } else { vec![] },
    }
}

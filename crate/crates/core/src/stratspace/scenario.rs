use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homcx::{DualizingData, FreeComplex};
use crate::measuring::MeasuringCandidate;
use crate::polycore::Ideal;
use crate::scalar::Field;

/// Closure of an orbit: its ideal in the ambient ring and its dimension.
/// Stratum ideals are trusted to be prime; this is not verified.
#[derive(Clone, Debug)]
pub struct Stratum<F> {
    pub name: String,
    pub ideal: Ideal<F>,
    pub dim: usize,
}

/// A perversity `p : {0, ..., dim X} -> Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perversity {
    table: BTreeMap<i64, i64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PerversityFlags {
    pub monotone: bool,
    pub strictly_monotone: bool,
    pub comonotone: bool,
    pub strictly_comonotone: bool,
    pub in_range: bool,
}

impl Perversity {
    pub fn new(table: BTreeMap<i64, i64>) -> Self {
        Perversity { table }
    }

    pub fn from_values(values: &[i64]) -> Self {
        Perversity {
            table: values.iter().enumerate().map(|(d, &v)| (d as i64, v)).collect(),
        }
    }

    pub fn table(&self) -> &BTreeMap<i64, i64> {
        &self.table
    }

    pub fn value(&self, dim: i64) -> Result<i64> {
        self.table.get(&dim).copied().ok_or(Error::MissingPerversity(dim))
    }

    /// `p̄(n) = -n - p(n)`.
    pub fn dual_value(&self, dim: i64) -> Result<i64> {
        Ok(-dim - self.value(dim)?)
    }

    /// Dimensions in `0..=dim_x` with no entry.
    pub fn missing(&self, dim_x: usize) -> Vec<i64> {
        (0..=dim_x as i64).filter(|d| !self.table.contains_key(d)).collect()
    }

    /// First `n` with `p(n) < p(n+1)`.
    pub fn monotone_violation(&self, dim_x: usize) -> Option<i64> {
        (0..dim_x as i64).find(|&n| matches!((self.value(n), self.value(n + 1)), (Ok(a), Ok(b)) if a < b))
    }

    /// First `n` with `p̄(n) < p̄(n+1)`.
    pub fn comonotone_violation(&self, dim_x: usize) -> Option<i64> {
        (0..dim_x as i64)
            .find(|&n| matches!((self.dual_value(n), self.dual_value(n + 1)), (Ok(a), Ok(b)) if a < b))
    }

    /// First `n` outside `-n <= p(n) <= 0`.
    pub fn range_violation(&self, dim_x: usize) -> Option<i64> {
        (0..=dim_x as i64).find(|&n| matches!(self.value(n), Ok(v) if v > 0 || v < -n))
    }

    /// First pair of stratum dimensions `a < b` with `f(a) <= f(b)`.
    fn strict_violation(&self, dims: &[usize], f: impl Fn(i64) -> Result<i64>) -> Option<(i64, i64)> {
        let mut ds: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
        ds.sort_unstable();
        ds.dedup();
        for (i, &a) in ds.iter().enumerate() {
            for &b in &ds[i + 1..] {
                if let (Ok(fa), Ok(fb)) = (f(a), f(b)) {
                    if fa <= fb {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn strictly_monotone_violation(&self, stratum_dims: &[usize]) -> Option<(i64, i64)> {
        self.strict_violation(stratum_dims, |d| self.value(d))
    }

    pub fn strictly_comonotone_violation(&self, stratum_dims: &[usize]) -> Option<(i64, i64)> {
        self.strict_violation(stratum_dims, |d| self.dual_value(d))
    }

    pub fn flags(&self, dim_x: usize, stratum_dims: &[usize]) -> PerversityFlags {
        let defined = self.missing(dim_x).is_empty();
        PerversityFlags {
            monotone: defined && self.monotone_violation(dim_x).is_none(),
            strictly_monotone: defined && self.strictly_monotone_violation(stratum_dims).is_none(),
            comonotone: defined && self.comonotone_violation(dim_x).is_none(),
            strictly_comonotone: defined && self.strictly_comonotone_violation(stratum_dims).is_none(),
            in_range: defined && self.range_violation(dim_x).is_none(),
        }
    }
}

/// Everything a check runs against: the ambient ring, the variety, its
/// stratification, the perversity and the named complexes and candidates.
#[derive(Clone, Debug)]
pub struct Scenario<F> {
    pub variables: Vec<String>,
    pub variety: Ideal<F>,
    pub strata: Vec<Stratum<F>>,
    pub perversity: Perversity,
    pub dualizing: DualizingData,
    pub complexes: Vec<(String, FreeComplex<F>)>,
    pub measuring: Vec<MeasuringCandidate<F>>,
}

impl<F: Field> Scenario<F> {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// `dim X`, the largest declared stratum dimension.
    pub fn dim_x(&self) -> usize {
        self.strata.iter().map(|s| s.dim).max().unwrap_or(0)
    }

    pub fn stratum_dims(&self) -> Vec<usize> {
        self.strata.iter().map(|s| s.dim).collect()
    }

    pub fn flags(&self) -> PerversityFlags {
        self.perversity.flags(self.dim_x(), &self.stratum_dims())
    }

    /// The hypotheses under which measuring subvarieties exist: `p` defined on
    /// `0..=dim X`, in range, monotone and comonotone.
    pub fn require_measuring_hypotheses(&self) -> Result<()> {
        let d = self.dim_x();
        if let Some(&n) = self.perversity.missing(d).first() {
            return Err(Error::MissingPerversity(n));
        }
        if let Some(n) = self.perversity.range_violation(d) {
            return Err(Error::PerversityHypothesis(format!("p({n}) outside [-{n}, 0]")));
        }
        if let Some(n) = self.perversity.monotone_violation(d) {
            return Err(Error::PerversityHypothesis(format!("not monotone: p({n}) < p({})", n + 1)));
        }
        if let Some(n) = self.perversity.comonotone_violation(d) {
            return Err(Error::PerversityHypothesis(format!("not comonotone at {n}")));
        }
        Ok(())
    }

    pub fn complex(&self, name: &str) -> Result<&FreeComplex<F>> {
        self.complexes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn candidate(&self, name: &str) -> Result<&MeasuringCandidate<F>> {
        self.measuring
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn stratum(&self, name: &str) -> Result<&Stratum<F>> {
        self.strata
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// A named ideal: a stratum closure, else a measuring candidate.
    pub fn named_ideal(&self, name: &str) -> Result<&Ideal<F>> {
        self.stratum(name)
            .map(|s| &s.ideal)
            .or_else(|_| self.candidate(name).map(|c| &c.ideal))
    }

    pub fn with_perversity(&self, p: Perversity) -> Self {
        Scenario {
            perversity: p,
            ..self.clone()
        }
    }

    /// `x̄ ⊆ ȳ` for strata `x`, `y` (by radical containment of ideals).
    pub fn closure_contained(&self, x: usize, y: usize) -> bool {
        self.strata[x].ideal.radical_contains_ideal(&self.strata[y].ideal)
    }
}

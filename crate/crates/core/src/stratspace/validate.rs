use serde::Serialize;

use super::scenario::{PerversityFlags, Scenario};
use crate::polycore::{Dimension, Ideal};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>, witnesses: Vec<String>) -> Self {
        Check {
            name: name.into(),
            passed: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub flags: PerversityFlags,
    pub dim_x: usize,
    /// Stated assumption: stratum ideals are taken to be prime.
    pub trusted: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn show(d: Dimension) -> String {
    match d {
        Dimension::MinusInfinity => "-inf".into(),
        Dimension::Finite(v) => v.to_string(),
    }
}

pub fn validate_scenario<F: Field>(s: &Scenario<F>) -> ValidationReport {
    let names = &s.variables;
    let mut checks = Vec::new();

    let mut dup = Vec::new();
    for (i, st) in s.strata.iter().enumerate() {
        if s.strata[..i].iter().any(|o| o.name == st.name) && !dup.contains(&st.name) {
            dup.push(st.name.clone());
        }
    }
    checks.push(Check::new(
        "distinct_stratum_names",
        dup.into_iter().map(|n| format!("duplicate stratum `{n}`")).collect(),
    ));

    for st in &s.strata {
        let computed = st.ideal.dimension();
        let mut w = vec![];
        if computed != Dimension::Finite(st.dim as i64) {
            w.push(format!("declared {}, computed {}", st.dim, show(computed)));
        }
        checks.push(Check::new(format!("stratum_dimension[{}]", st.name), w));
        let w = s
            .variety
            .generators()
            .iter()
            .filter(|g| !st.ideal.contains(g))
            .map(|g| format!("generator {} of the variety ideal is not in the stratum ideal", g.to_text(names)))
            .collect();
        checks.push(Check::new(format!("stratum_contains_variety[{}]", st.name), w));
    }

    let dim_x = s.dim_x();
    let computed = s.variety.dimension();
    let mut w = vec![];
    if s.strata.is_empty() {
        w.push("no strata declared".into());
    } else if computed != Dimension::Finite(dim_x as i64) {
        w.push(format!("max declared stratum dimension {dim_x}, computed dim X {}", show(computed)));
    }
    checks.push(Check::new("variety_dimension", w));

    // maximal strata (under closure containment) must cover X
    let maximal: Vec<usize> = (0..s.strata.len())
        .filter(|&i| {
            !(0..s.strata.len())
                .any(|j| j != i && s.closure_contained(i, j) && (!s.closure_contained(j, i) || j < i))
        })
        .collect();
    let mut inter: Option<Ideal<F>> = None;
    for &i in &maximal {
        let ideal = &s.strata[i].ideal;
        inter = Some(match inter {
            None => ideal.clone(),
            Some(acc) => acc.intersection(ideal),
        });
    }
    let mut w = vec![];
    match inter {
        Some(i) if i.same_radical(&s.variety) => {}
        Some(_) => w.push(format!(
            "union of maximal strata {:?} differs from X",
            maximal.iter().map(|&i| s.strata[i].name.as_str()).collect::<Vec<_>>()
        )),
        None => w.push("no strata declared".into()),
    }
    checks.push(Check::new("strata_cover_variety", w));

    let p = &s.perversity;
    checks.push(Check::new(
        "perversity_defined",
        p.missing(dim_x).into_iter().map(|d| format!("p({d}) undefined")).collect(),
    ));
    let opt = |v: Option<String>| v.into_iter().collect::<Vec<_>>();
    checks.push(Check::new(
        "perversity_monotone",
        opt(p
            .monotone_violation(dim_x)
            .map(|n| format!("p({n}) = {} < p({}) = {}", p.value(n).unwrap(), n + 1, p.value(n + 1).unwrap()))),
    ));
    checks.push(Check::new(
        "perversity_comonotone",
        opt(p.comonotone_violation(dim_x).map(|n| {
            format!(
                "dual p({n}) = {} < dual p({}) = {}",
                p.dual_value(n).unwrap(),
                n + 1,
                p.dual_value(n + 1).unwrap()
            )
        })),
    ));
    checks.push(Check::new(
        "perversity_in_range",
        opt(p
            .range_violation(dim_x)
            .map(|n| format!("p({n}) = {} outside [-{n}, 0]", p.value(n).unwrap()))),
    ));

    for (name, c) in &s.complexes {
        let w = match c.validate() {
            Ok(()) => vec![],
            Err(v) => vec![v.to_string()],
        };
        checks.push(Check::new(format!("complex_valid[{name}]"), w));
    }

    for m in &s.measuring {
        let mut w = vec![];
        let cut: Vec<_> = m.cutting.iter().map(|c| c.function.clone()).collect();
        if !m.ideal.same_radical(&s.variety.with(&cut)) {
            w.push("ideal and variety ideal plus cutting functions have different radicals".into());
        }
        if m.cutting.len() > dim_x {
            w.push(format!("{} cutting functions exceed dim X = {dim_x}", m.cutting.len()));
        }
        checks.push(Check::new(format!("candidate_invariants[{}]", m.name), w));
    }

    ValidationReport {
        checks,
        flags: s.flags(),
        dim_x,
        trusted: vec!["stratum ideals are assumed prime".into()],
    }
}

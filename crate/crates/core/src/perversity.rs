//! Membership in the perverse t-structure through support-dimension
//! criteria, and concentration of local cohomology along measuring
//! subvarieties.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homcx::{min_degree_from_dual, nonzero_cohomology, CohomologySheaf, FreeComplex};
use crate::measuring::{MeasuringCandidate, MeasuringFamily};
use crate::polycore::{DegreeBound, Dimension};
use crate::scalar::Field;
use crate::stratspace::{stratified_support_of, Scenario, StratifiedSupport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `computed <= required` was expected.
    AtMost,
    /// `computed >= required` was expected.
    AtLeast,
    Equal,
    SameRadical,
    Meets,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub stratum: Option<String>,
    pub degree: Option<i64>,
    /// Dimension of the support involved, when there is one.
    pub dimension: Option<Dimension>,
    pub computed: Option<i64>,
    pub required: Option<i64>,
    pub relation: Relation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<String>,
}

impl Witness {
    fn bound(stratum: Option<&str>, degree: i64, computed: i64, required: i64, relation: Relation) -> Self {
        Witness {
            stratum: stratum.map(str::to_string),
            degree: Some(degree),
            dimension: None,
            computed: Some(computed),
            required: Some(required),
            relation,
            member: None,
        }
    }

    fn with_dimension(mut self, d: Dimension) -> Self {
        self.dimension = Some(d);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub result: bool,
    pub route: String,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    pub fn from_witnesses(route: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        Verdict {
            result: witnesses.is_empty(),
            route: route.into(),
            witnesses,
        }
    }
}

/// A nonzero cohomology sheaf and the strata its support decomposes into.
#[derive(Clone, Debug)]
pub struct StratifiedSheaf<F> {
    pub sheaf: CohomologySheaf<F>,
    pub support: StratifiedSupport,
}

/// The cohomology of `F` and of `D F`, each checked for stratified support.
/// Shared by every test below so a complex is analysed once.
#[derive(Clone, Debug)]
pub struct ComplexAnalysis<F> {
    pub name: String,
    pub cohomology: Vec<StratifiedSheaf<F>>,
    pub dual_cohomology: Vec<StratifiedSheaf<F>>,
}

fn stratify<F: Field>(
    sheaves: Vec<CohomologySheaf<F>>,
    s: &Scenario<F>,
    label: &str,
) -> Result<Vec<StratifiedSheaf<F>>> {
    sheaves
        .into_iter()
        .map(|sheaf| {
            let support = stratified_support_of(&sheaf.annihilator, s);
            if !support.stratified {
                return Err(Error::NonStratified {
                    complex: label.to_string(),
                    degree: sheaf.degree,
                });
            }
            Ok(StratifiedSheaf { sheaf, support })
        })
        .collect()
}

impl<F: Field> ComplexAnalysis<F> {
    pub fn new(name: &str, c: &FreeComplex<F>, s: &Scenario<F>) -> Result<Self> {
        if c.nvars() != s.nvars() {
            return Err(Error::VariableMismatch {
                expected: s.nvars(),
                found: c.nvars(),
            });
        }
        let cohomology = stratify(nonzero_cohomology(c), s, name)?;
        let dual = c.dualize(&s.dualizing);
        let dual_cohomology = stratify(nonzero_cohomology(&dual), s, &format!("D {name}"))?;
        Ok(ComplexAnalysis {
            name: name.to_string(),
            cohomology,
            dual_cohomology,
        })
    }

    /// `p(dim supp H^k F) >= k` for all `k`, cross-checked against the stalk
    /// route: for each stratum `x`, the largest `k` with `x̄ ⊆ supp H^k F` is
    /// at most `p(x)`.
    pub fn le0(&self, s: &Scenario<F>) -> Result<Verdict> {
        let p = &s.perversity;
        let mut by_dimension = Vec::new();
        for h in &self.cohomology {
            let d = h.sheaf.annihilator.dimension();
            let Dimension::Finite(dim) = d else { continue };
            let pd = p.value(dim)?;
            if pd < h.sheaf.degree {
                let top = h
                    .support
                    .indices
                    .iter()
                    .map(|&i| &s.strata[i])
                    .find(|st| st.dim as i64 == dim)
                    .or_else(|| h.support.indices.first().map(|&i| &s.strata[i]));
                by_dimension.push(
                    Witness::bound(top.map(|st| st.name.as_str()), h.sheaf.degree, pd, h.sheaf.degree, Relation::AtLeast)
                        .with_dimension(d),
                );
            }
        }
        let verdict = Verdict::from_witnesses("support_dimension", by_dimension);

        if p.monotone_violation(s.dim_x()).is_some() || !p.missing(s.dim_x()).is_empty() {
            return Ok(verdict);
        }
        let mut stalk_ok = true;
        for x in &s.strata {
            let px = p.value(x.dim as i64)?;
            let kmax = self
                .cohomology
                .iter()
                .filter(|h| h.sheaf.annihilator.generators().iter().all(|g| x.ideal.contains(g)))
                .map(|h| h.sheaf.degree)
                .max();
            if kmax.is_some_and(|k| k > px) {
                stalk_ok = false;
            }
        }
        if stalk_ok != verdict.result {
            return Err(Error::RouteDisagreement(format!(
                "le0 routes disagree on `{}`: support dimension {}, stalks {}",
                self.name, verdict.result, stalk_ok
            )));
        }
        Ok(Verdict {
            route: "support_dimension+stalk".into(),
            ..verdict
        })
    }

    /// `dim(x̄ ∩ supp H^k(D F)) <= -p(x) - k` for all strata `x` and all `k`.
    pub fn ge0(&self, s: &Scenario<F>) -> Result<Verdict> {
        let mut witnesses = Vec::new();
        for x in &s.strata {
            let px = s.perversity.value(x.dim as i64)?;
            for h in &self.dual_cohomology {
                let k = h.sheaf.degree;
                let d = h.sheaf.support_dimension(Some(&x.ideal));
                let bound = -px - k;
                if !d.at_most(bound) {
                    let computed = d.finite().expect("finite when the bound fails");
                    witnesses.push(Witness::bound(Some(&x.name), k, computed, bound, Relation::AtMost).with_dimension(d));
                }
            }
        }
        Ok(Verdict::from_witnesses("dual_support_dimension", witnesses))
    }

    pub fn is_perverse(&self, s: &Scenario<F>) -> Result<Verdict> {
        let le = self.le0(s)?;
        let ge = self.ge0(s)?;
        let mut witnesses = le.witnesses;
        witnesses.extend(ge.witnesses);
        Ok(Verdict::from_witnesses(format!("{}&{}", le.route, ge.route), witnesses))
    }

    /// Concentration of `lc_Z F` in degree 0, decided without the perversity.
    pub fn measuring_concentration(&self, z: &MeasuringCandidate<F>, s: &Scenario<F>) -> Concentration {
        let dual: Vec<CohomologySheaf<F>> = self.dual_cohomology.iter().map(|h| h.sheaf.clone()).collect();
        let min = min_degree_from_dual(&z.ideal, &dual);
        let mut ge_witnesses = Vec::new();
        if let DegreeBound::Finite(n) = min {
            if n < 0 {
                let at = self
                    .dual_cohomology
                    .iter()
                    .find(|h| match h.sheaf.support_dimension(Some(&z.ideal)) {
                        Dimension::Finite(d) => -h.sheaf.degree - d == n,
                        Dimension::MinusInfinity => false,
                    })
                    .map(|h| h.sheaf.degree)
                    .unwrap_or(0);
                ge_witnesses.push(Witness::bound(None, at, n, 0, Relation::AtLeast));
            }
        }

        let mut le_witnesses = Vec::new();
        let mut missed = Vec::new();
        for h in &self.cohomology {
            let k = h.sheaf.degree;
            let mut met = false;
            for &i in &h.support.indices {
                let x = &s.strata[i];
                let cut = x.ideal.sum(&z.ideal);
                if cut.is_unit_ideal() {
                    continue;
                }
                met = true;
                let (Dimension::Finite(full), Dimension::Finite(part)) = (x.ideal.dimension(), cut.dimension()) else {
                    continue;
                };
                if full - part > -k {
                    le_witnesses.push(
                        Witness::bound(Some(&x.name), k, full - part, -k, Relation::AtMost)
                            .with_dimension(Dimension::Finite(full)),
                    );
                }
            }
            if !met {
                missed.push(k);
            }
        }
        Concentration {
            member: z.name.clone(),
            ge0: Verdict::from_witnesses("local_cohomology_lower_bound", ge_witnesses),
            le0: Verdict::from_witnesses("support_codimension", le_witnesses),
            missed_degrees: missed,
        }
    }

    /// Concentration along every member; an `H^k` missed by all members is a
    /// coverage violation.
    pub fn family_concentration(&self, family: &MeasuringFamily<F>, s: &Scenario<F>) -> Result<FamilyConcentration> {
        let members: Vec<Concentration> = family
            .members
            .iter()
            .map(|z| self.measuring_concentration(z, s))
            .collect();
        for h in &self.cohomology {
            let k = h.sheaf.degree;
            if members.iter().all(|c| c.missed_degrees.contains(&k)) {
                return Err(Error::CoverageViolation { degree: k });
            }
        }
        let result = members.iter().all(|c| c.ge0.result && c.le0.result);
        Ok(FamilyConcentration { result, members })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Concentration {
    pub member: String,
    pub ge0: Verdict,
    pub le0: Verdict,
    /// Degrees `k` whose `supp H^k F` does not meet `Z`.
    pub missed_degrees: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyConcentration {
    pub result: bool,
    pub members: Vec<Concentration>,
}

pub fn check_le0<F: Field>(f: &FreeComplex<F>, s: &Scenario<F>) -> Result<Verdict> {
    ComplexAnalysis::new("F", f, s)?.le0(s)
}

pub fn check_ge0<F: Field>(f: &FreeComplex<F>, s: &Scenario<F>) -> Result<Verdict> {
    ComplexAnalysis::new("F", f, s)?.ge0(s)
}

pub fn is_perverse<F: Field>(f: &FreeComplex<F>, s: &Scenario<F>) -> Result<Verdict> {
    ComplexAnalysis::new("F", f, s)?.is_perverse(s)
}

pub fn measuring_concentration<F: Field>(
    f: &FreeComplex<F>,
    z: &MeasuringCandidate<F>,
    s: &Scenario<F>,
) -> Result<Concentration> {
    Ok(ComplexAnalysis::new("F", f, s)?.measuring_concentration(z, s))
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::scenario::{Perversity, Scenario, Stratum};
use crate::error::{Error, Result};
use crate::homcx::{DualizingData, FreeComplex};
use crate::measuring::{CuttingFunction, MeasuringCandidate};
use crate::polycore::{parse_polynomial, Ideal, Matrix, Polynomial};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRecord {
    pub variables: Vec<String>,
    pub variety_ideal: Vec<String>,
    pub strata: Vec<StratumRecord>,
    pub perversity: BTreeMap<String, i64>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexRecord>,
    #[serde(default)]
    pub measuring: BTreeMap<String, MeasuringRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumRecord {
    pub name: String,
    pub ideal: Vec<String>,
    pub dim: usize,
}

/// A bounded free complex: `ranks[i]` is the rank in degree `degrees[0] + i`,
/// `differentials[i]` the row-major entries of `d^(degrees[0] + i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub degrees: [i64; 2],
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub differentials: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasuringRecord {
    pub ideal: Vec<String>,
    #[serde(default)]
    pub cutting: Vec<CuttingRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuttingRecord {
    pub function: String,
    pub step: i64,
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        location: location.into(),
        message: message.into(),
    }
}

impl ScenarioRecord {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if inner.is_syntax() || inner.is_eof() {
                Error::Parse {
                    location: format!("line {}, column {}", inner.line(), inner.column()),
                    message: inner.to_string(),
                }
            } else {
                schema(if path == "." { "<root>".into() } else { path }, inner.to_string())
            }
        })
    }

    /// Sorted keys, arrays in declaration order, two-space indentation.
    pub fn canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("records serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }
}

fn parse_ideal<F: Field>(texts: &[String], names: &[String], location: &str) -> Result<Ideal<F>> {
    let gens = texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_polynomial(t, names, &format!("{location}[{i}]")))
        .collect::<Result<Vec<Polynomial<F>>>>()?;
    Ideal::new(names.len(), gens)
}

fn build_complex<F: Field>(record: &ComplexRecord, names: &[String], location: &str) -> Result<FreeComplex<F>> {
    let n = names.len();
    let [lo, hi] = record.degrees;
    if hi < lo {
        return Err(schema(format!("{location}.degrees"), format!("empty degree range [{lo}, {hi}]")));
    }
    let len = (hi - lo + 1) as usize;
    if record.ranks.len() != len {
        return Err(schema(
            format!("{location}.ranks"),
            format!("expected {len} ranks for degrees [{lo}, {hi}], found {}", record.ranks.len()),
        ));
    }
    if record.differentials.len() != len - 1 {
        return Err(schema(
            format!("{location}.differentials"),
            format!("expected {} differentials, found {}", len - 1, record.differentials.len()),
        ));
    }
    let mut mats = Vec::with_capacity(len - 1);
    for (i, entries) in record.differentials.iter().enumerate() {
        let (rows, cols) = (record.ranks[i + 1], record.ranks[i]);
        let loc = format!("{location}.differentials[{i}]");
        if entries.len() != rows * cols {
            return Err(schema(
                &loc,
                format!("d^{} is {rows}x{cols}, needs {} entries, found {}", lo + i as i64, rows * cols, entries.len()),
            ));
        }
        let polys = entries
            .iter()
            .enumerate()
            .map(|(j, t)| parse_polynomial(t, names, &format!("{loc}[{j}]")))
            .collect::<Result<Vec<Polynomial<F>>>>()?;
        mats.push(Matrix::from_row_major(n, rows, cols, polys)?);
    }
    FreeComplex::new(n, lo, record.ranks.clone(), mats)
}

fn complex_record<F: Field>(c: &FreeComplex<F>, names: &[String]) -> ComplexRecord {
    if c.ranks().is_empty() {
        return ComplexRecord {
            degrees: [0, 0],
            ranks: vec![0],
            differentials: vec![],
        };
    }
    ComplexRecord {
        degrees: [c.lo(), c.hi()],
        ranks: c.ranks().to_vec(),
        differentials: c.entry_texts(names),
    }
}

fn check_variables(names: &[String]) -> Result<()> {
    for (i, v) in names.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(schema(format!("variables[{i}]"), format!("`{v}` is not an identifier")));
        }
        if names[..i].contains(v) {
            return Err(schema(format!("variables[{i}]"), format!("duplicate variable `{v}`")));
        }
    }
    if names.len() > 64 {
        return Err(schema("variables", "at most 64 variables are supported"));
    }
    Ok(())
}

impl<F: Field> Scenario<F> {
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_record(&ScenarioRecord::from_json(text)?)
    }

    pub fn from_record(r: &ScenarioRecord) -> Result<Self> {
        check_variables(&r.variables)?;
        let names = &r.variables;
        let n = names.len();
        let variety = parse_ideal(&r.variety_ideal, names, "variety_ideal")?;
        let strata = r
            .strata
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Ok(Stratum {
                    name: s.name.clone(),
                    ideal: parse_ideal(&s.ideal, names, &format!("strata[{i}].ideal"))?,
                    dim: s.dim,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut table = BTreeMap::new();
        for (key, &v) in &r.perversity {
            let d: i64 = key
                .trim()
                .parse()
                .map_err(|_| schema(format!("perversity.{key}"), "keys must be integers"))?;
            if d < 0 {
                return Err(schema(format!("perversity.{key}"), "dimensions are non-negative"));
            }
            table.insert(d, v);
        }
        let complexes = r
            .complexes
            .iter()
            .map(|(name, c)| Ok((name.clone(), build_complex(c, names, &format!("complexes.{name}"))?)))
            .collect::<Result<Vec<_>>>()?;
        let measuring = r
            .measuring
            .iter()
            .map(|(name, m)| {
                let loc = format!("measuring.{name}");
                let cutting = m
                    .cutting
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        Ok(CuttingFunction {
                            function: parse_polynomial(&c.function, names, &format!("{loc}.cutting[{i}].function"))?,
                            step: c.step,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MeasuringCandidate {
                    name: name.clone(),
                    ideal: parse_ideal(&m.ideal, names, &format!("{loc}.ideal"))?,
                    cutting,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Scenario {
            variables: names.clone(),
            variety,
            strata,
            perversity: Perversity::new(table),
            dualizing: DualizingData::for_ring(n),
            complexes,
            measuring,
        })
    }

    pub fn to_record(&self) -> ScenarioRecord {
        let names = &self.variables;
        ScenarioRecord {
            variables: names.clone(),
            variety_ideal: self.variety.to_texts(names),
            strata: self
                .strata
                .iter()
                .map(|s| StratumRecord {
                    name: s.name.clone(),
                    ideal: s.ideal.to_texts(names),
                    dim: s.dim,
                })
                .collect(),
            perversity: self.perversity.table().iter().map(|(d, v)| (d.to_string(), *v)).collect(),
            complexes: self
                .complexes
                .iter()
                .map(|(name, c)| (name.clone(), complex_record(c, names)))
                .collect(),
            measuring: self
                .measuring
                .iter()
                .map(|m| {
                    (
                        m.name.clone(),
                        MeasuringRecord {
                            ideal: m.ideal.to_texts(names),
                            cutting: m
                                .cutting
                                .iter()
                                .map(|c| CuttingRecord {
                                    function: c.function.to_text(names),
                                    step: c.step,
                                })
                                .collect(),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn canonical_json(&self) -> String {
        self.to_record().canonical_json()
    }
}

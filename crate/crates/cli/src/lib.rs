//! Command dispatch and reports for `pervcoh`.
//!
//! Every subcommand loads a scenario file, runs a list of named checks and
//! renders a [`Report`]: canonical JSON on stdout, one summary line per check
//! on stderr. Exit codes: 0 when every check passed, 2 when one failed, 1 on
//! input or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use pervcoh::homcx::{ext_colimit_oracle, local_cohomology_min_degree, OracleVerdict};
use pervcoh::measuring::{
    construct_measuring, is_measuring, is_measuring_family, ConstructOptions, MeasuringCandidate, MeasuringFamily,
};
use pervcoh::perversity::{ComplexAnalysis, Verdict};
use pervcoh::polycore::{parse_polynomial, DegreeBound};
use pervcoh::stratspace::validate_scenario;
use pervcoh::{Error, QScenario};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub result: bool,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    /// Wall time; shown in the summary only, so canonical output stays stable.
    #[serde(skip)]
    pub timing: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    fn new(command: &str, digest: String, checks: Vec<CheckRecord>) -> Self {
        let status = if checks.iter().all(|c| c.result) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            command: command.into(),
            digest,
            status,
            checks,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Canonical,
    Summary,
}

pub fn render_report(r: &Report, mode: Mode) -> String {
    match mode {
        Mode::Canonical => {
            let value = serde_json::to_value(r).expect("reports serialize");
            let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
            text.push('\n');
            text
        }
        Mode::Summary => {
            let mut out = String::new();
            for c in &r.checks {
                let ms = c.timing.as_secs_f64() * 1e3;
                if c.result {
                    out.push_str(&format!("PASS {} ({ms:.1} ms)\n", c.name));
                } else {
                    let first = c.witnesses.first().map(Value::to_string).unwrap_or_default();
                    out.push_str(&format!("FAIL {} ({ms:.1} ms): {first}\n", c.name));
                }
            }
            out
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pervcoh", version, about = "Perversity and measuring-subvariety checks on scenario files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the scenario's strata, perversity, complexes and candidates.
    Validate { file: PathBuf },
    /// Test a complex for perversity and/or candidates for being measuring.
    Check {
        file: PathBuf,
        #[arg(long)]
        complex: Option<String>,
        /// Measuring candidates, comma separated.
        #[arg(long, value_delimiter = ',')]
        family: Vec<String>,
    },
    /// Build a measuring subvariety.
    Construct {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate cutting functions tried before random ones, comma separated.
        #[arg(long, value_delimiter = ',')]
        pool: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long, default_value_t = 20)]
        max_attempts: usize,
        #[arg(long, default_value = "constructed")]
        name: String,
        /// Write the scenario with the new candidate added.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare perversity with concentration along the declared family, for every complex.
    Crossvalidate { file: PathBuf },
    /// Compare the local cohomology bound with the Ext colimit oracle.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        complex: String,
        #[arg(long)]
        ideal: String,
        #[arg(long = "i", allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, default_value_t = 4)]
        tmax: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn execute<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    match run(cli.command) {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: render_report(&report, Mode::Canonical),
            stderr: render_report(&report, Mode::Summary),
        },
        Err(message) => Outcome::usage(format!("error: {message}\n")),
    }
}

fn load(path: &Path) -> Result<(QScenario, String), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let scenario = QScenario::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let digest = hex::encode(Sha256::digest(scenario.canonical_json().as_bytes()));
    Ok((scenario, digest))
}

fn timed(name: impl Into<String>, f: impl FnOnce() -> (bool, Vec<Value>, Option<Value>)) -> CheckRecord {
    let start = Instant::now();
    let (result, witnesses, detail) = f();
    CheckRecord {
        name: name.into(),
        result,
        witnesses,
        detail,
        timing: start.elapsed(),
    }
}

fn verdict_parts(v: &Verdict) -> (bool, Vec<Value>, Option<Value>) {
    let witnesses = v.witnesses.iter().map(|w| serde_json::to_value(w).expect("witness")).collect();
    (v.result, witnesses, Some(json!({ "route": v.route })))
}

/// Errors that are verdicts on the mathematics rather than on the input.
fn is_mathematical(e: &Error) -> bool {
    matches!(
        e,
        Error::NonStratified { .. }
            | Error::MissingPerversity(_)
            | Error::PerversityHypothesis(_)
            | Error::MissingCutting { .. }
            | Error::CoverageViolation { .. }
            | Error::ConstructionFailed { .. }
    )
}

fn failure(e: &Error) -> (bool, Vec<Value>, Option<Value>) {
    let witness = match e {
        Error::NonStratified { complex, degree } => json!({ "non_stratified": complex, "degree": degree }),
        Error::ConstructionFailed { step, condition } => json!({ "step": step, "condition": condition }),
        Error::CoverageViolation { degree } => json!({ "coverage_violation": degree }),
        other => json!({ "error": other.to_string() }),
    };
    (false, vec![witness], None)
}

fn verdict_or_failure(r: pervcoh::Result<Verdict>) -> Result<(bool, Vec<Value>, Option<Value>), String> {
    match r {
        Ok(v) => Ok(verdict_parts(&v)),
        Err(e) if is_mathematical(&e) => Ok(failure(&e)),
        Err(e) => Err(e.to_string()),
    }
}

fn run(command: Command) -> Result<Report, String> {
    match command {
        Command::Validate { file } => {
            let (s, digest) = load(&file)?;
            let start = Instant::now();
            let report = validate_scenario(&s);
            let elapsed = start.elapsed();
            let mut checks: Vec<CheckRecord> = report
                .checks
                .iter()
                .map(|c| CheckRecord {
                    name: c.name.clone(),
                    result: c.passed,
                    witnesses: c.witnesses.iter().map(|w| Value::String(w.clone())).collect(),
                    detail: None,
                    timing: Duration::ZERO,
                })
                .collect();
            checks.push(CheckRecord {
                name: "perversity_flags".into(),
                result: true,
                witnesses: vec![],
                detail: Some(json!({ "flags": report.flags, "dim_x": report.dim_x, "trusted": report.trusted })),
                timing: elapsed,
            });
            Ok(Report::new("validate", digest, checks))
        }
        Command::Check { file, complex, family } => {
            if complex.is_none() && family.is_empty() {
                return Err("check needs --complex and/or --family".into());
            }
            let (s, digest) = load(&file)?;
            let members = family
                .iter()
                .map(|n| s.candidate(n).cloned().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let mut checks = Vec::new();
            for z in &members {
                checks.push(timed(format!("is_measuring[{}]", z.name), || {
                    verdict_or_failure(is_measuring(z, &s)).unwrap_or_else(|e| failure(&Error::InvalidArgument(e)))
                }));
            }
            let fam = MeasuringFamily::new(members);
            if !fam.members.is_empty() {
                checks.push(timed("measuring_family", || {
                    verdict_or_failure(is_measuring_family(&fam, &s))
                        .unwrap_or_else(|e| failure(&Error::InvalidArgument(e)))
                }));
            }
            if let Some(name) = complex {
                let c = s.complex(&name).map_err(|e| e.to_string())?;
                check_complex(&name, c, &s, &fam, &mut checks)?;
            }
            Ok(Report::new("check", digest, checks))
        }
        Command::Construct {
            file,
            seed,
            pool,
            max_degree,
            max_attempts,
            name,
            out,
        } => {
            let (mut s, digest) = load(&file)?;
            let pool = pool
                .iter()
                .enumerate()
                .map(|(i, t)| parse_polynomial(t, &s.variables, &format!("--pool[{i}]")))
                .collect::<pervcoh::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            let opts = ConstructOptions {
                seed,
                pool,
                max_degree,
                max_attempts,
                name: name.clone(),
            };
            let start = Instant::now();
            let built = construct_measuring(&s, &opts);
            let elapsed = start.elapsed();
            let z = match built {
                Ok(z) => z,
                Err(e) if is_mathematical(&e) => {
                    let (result, witnesses, detail) = failure(&e);
                    let record = CheckRecord {
                        name: format!("construct[{name}]"),
                        result,
                        witnesses,
                        detail,
                        timing: elapsed,
                    };
                    return Ok(Report::new("construct", digest, vec![record]));
                }
                Err(e) => return Err(e.to_string()),
            };
            let names = &s.variables;
            let mut checks = vec![CheckRecord {
                name: format!("construct[{name}]"),
                result: true,
                witnesses: vec![],
                detail: Some(json!({
                    "ideal": z.ideal.to_texts(names),
                    "cutting": z.cutting.iter().map(|c| json!({
                        "function": c.function.to_text(names),
                        "step": c.step,
                    })).collect::<Vec<_>>(),
                })),
                timing: elapsed,
            }];
            checks.push(timed(format!("is_measuring[{name}]"), || {
                verdict_or_failure(is_measuring(&z, &s)).unwrap_or_else(|e| failure(&Error::InvalidArgument(e)))
            }));
            let fam = MeasuringFamily::new(vec![z.clone()]);
            checks.push(timed("measuring_family", || {
                verdict_or_failure(is_measuring_family(&fam, &s)).unwrap_or_else(|e| failure(&Error::InvalidArgument(e)))
            }));
            if let Some(path) = out {
                s.measuring.retain(|m| m.name != name);
                s.measuring.push(z);
                s.measuring.sort_by(|a, b| a.name.cmp(&b.name));
                let mut text = s.canonical_json();
                text.push('\n');
                fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(Report::new("construct", digest, checks))
        }
        Command::Crossvalidate { file } => {
            let (s, digest) = load(&file)?;
            let fam = MeasuringFamily::new(s.measuring.clone());
            let mut checks = vec![timed("measuring_family", || {
                verdict_or_failure(is_measuring_family(&fam, &s)).unwrap_or_else(|e| failure(&Error::InvalidArgument(e)))
            })];
            let records: Vec<Result<CheckRecord, String>> = std::thread::scope(|scope| {
                let handles: Vec<_> = s
                    .complexes
                    .iter()
                    .map(|(name, c)| {
                        let (s, fam) = (&s, &fam);
                        scope.spawn(move || equivalence(name, c, s, fam))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            for r in records {
                checks.push(r?);
            }
            Ok(Report::new("crossvalidate", digest, checks))
        }
        Command::Oracle {
            file,
            complex,
            ideal,
            degree,
            tmax,
        } => {
            let (s, digest) = load(&file)?;
            let c = s.complex(&complex).map_err(|e| e.to_string())?;
            let z = s.named_ideal(&ideal).map_err(|e| e.to_string())?;
            let start = Instant::now();
            let bound = local_cohomology_min_degree(z, c, &s.dualizing);
            let verdict = ext_colimit_oracle(z.generators(), c, degree, tmax).map_err(|e| e.to_string())?;
            // below the bound Ext must vanish; at a finite bound it must not
            let consistent = match (&verdict, bound) {
                (OracleVerdict::NonvanishingDetected { .. }, DegreeBound::Finite(n)) => degree >= n,
                (OracleVerdict::NonvanishingDetected { .. }, DegreeBound::PlusInfinity) => false,
                (OracleVerdict::VanishingUpToTmax { .. }, DegreeBound::Finite(n)) => degree != n,
                _ => true,
            };
            let detail = json!({ "verdict": verdict, "min_degree": bound, "i": degree });
            let witnesses = if consistent {
                vec![]
            } else {
                vec![json!({ "degree": degree, "min_degree": bound, "verdict": verdict })]
            };
            let record = CheckRecord {
                name: format!("oracle[{complex},{ideal}]"),
                result: consistent,
                witnesses,
                detail: Some(detail),
                timing: start.elapsed(),
            };
            Ok(Report::new("oracle", digest, vec![record]))
        }
    }
}

fn check_complex(
    name: &str,
    c: &pervcoh::Complex,
    s: &QScenario,
    fam: &MeasuringFamily<pervcoh::Q>,
    checks: &mut Vec<CheckRecord>,
) -> Result<(), String> {
    let start = Instant::now();
    let analysis = match ComplexAnalysis::new(name, c, s) {
        Ok(a) => a,
        Err(e) if is_mathematical(&e) => {
            let (result, witnesses, detail) = failure(&e);
            checks.push(CheckRecord {
                name: format!("stratified_support[{name}]"),
                result,
                witnesses,
                detail,
                timing: start.elapsed(),
            });
            return Ok(());
        }
        Err(e) => return Err(e.to_string()),
    };
    checks.push(CheckRecord {
        name: format!("stratified_support[{name}]"),
        result: true,
        witnesses: vec![],
        detail: Some(json!(analysis
            .cohomology
            .iter()
            .map(|h| json!({ "degree": h.sheaf.degree, "strata": h.support.decomposition }))
            .collect::<Vec<_>>())),
        timing: start.elapsed(),
    });
    checks.push(timed(format!("le0[{name}]"), || {
        verdict_or_failure(analysis.le0(s)).unwrap_or_else(|e| failure(&Error::InvalidArgument(e)))
    }));
    checks.push(timed(format!("ge0[{name}]"), || {
        verdict_or_failure(analysis.ge0(s)).unwrap_or_else(|e| failure(&Error::InvalidArgument(e)))
    }));
    for z in &fam.members {
        checks.push(timed(format!("concentration[{name},{}]", z.name), || concentration_parts(&analysis, z, s)));
    }
    Ok(())
}

fn concentration_parts(
    analysis: &ComplexAnalysis<pervcoh::Q>,
    z: &MeasuringCandidate<pervcoh::Q>,
    s: &QScenario,
) -> (bool, Vec<Value>, Option<Value>) {
    let c = analysis.measuring_concentration(z, s);
    let mut witnesses: Vec<Value> = c.ge0.witnesses.iter().map(|w| json!({ "ge0": w })).collect();
    witnesses.extend(c.le0.witnesses.iter().map(|w| json!({ "le0": w })));
    let detail = json!({ "ge0": c.ge0.result, "le0": c.le0.result, "missed_degrees": c.missed_degrees });
    (c.ge0.result && c.le0.result, witnesses, Some(detail))
}

/// `is_perverse(F)` against concentration along every family member.
fn equivalence(
    name: &str,
    c: &pervcoh::Complex,
    s: &QScenario,
    fam: &MeasuringFamily<pervcoh::Q>,
) -> Result<CheckRecord, String> {
    let start = Instant::now();
    let record = |result, witnesses, detail| CheckRecord {
        name: format!("equivalence[{name}]"),
        result,
        witnesses,
        detail: Some(detail),
        timing: start.elapsed(),
    };
    let analysis = match ComplexAnalysis::new(name, c, s) {
        Ok(a) => a,
        Err(Error::NonStratified { complex, degree }) => {
            return Ok(record(
                true,
                vec![],
                json!({ "skipped": format!("H^{degree} of `{complex}` has non-stratified support") }),
            ))
        }
        Err(e) => return Err(e.to_string()),
    };
    let perverse = analysis.is_perverse(s).map_err(|e| e.to_string())?;
    let measured = match analysis.family_concentration(fam, s) {
        Ok(m) => m,
        Err(e @ Error::CoverageViolation { .. }) => {
            let (_, w, _) = failure(&e);
            return Ok(record(false, w, json!({ "is_perverse": perverse.result })));
        }
        Err(e) => return Err(e.to_string()),
    };
    let agree = perverse.result == measured.result;
    let witnesses = if agree {
        vec![]
    } else {
        vec![json!({ "is_perverse": perverse, "measuring": measured })]
    };
    Ok(record(
        agree,
        witnesses,
        json!({ "is_perverse": perverse.result, "measuring": measured.result }),
    ))
}

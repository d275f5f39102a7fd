//! Measuring subvarieties: the defining check, family coverage, and the
//! inductive construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perversity::{Relation, Verdict, Witness};
use crate::polycore::{Dimension, Ideal, Monomial, Polynomial};
use crate::scalar::Field;
use crate::stratspace::Scenario;

/// A cutting function and the induction step `d` (from `d` to `d + 1`) at
/// which it was introduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuttingFunction<F> {
    pub function: Polynomial<F>,
    pub step: i64,
}

#[derive(Clone, Debug)]
pub struct MeasuringCandidate<F> {
    pub name: String,
    pub ideal: Ideal<F>,
    pub cutting: Vec<CuttingFunction<F>>,
}

impl<F: Field> MeasuringCandidate<F> {
    pub fn cutting_functions(&self) -> Vec<Polynomial<F>> {
        self.cutting.iter().map(|c| c.function.clone()).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct MeasuringFamily<F> {
    pub members: Vec<MeasuringCandidate<F>>,
}

impl<F: Field> MeasuringFamily<F> {
    pub fn new(members: Vec<MeasuringCandidate<F>>) -> Self {
        MeasuringFamily { members }
    }
}

fn dim_value(d: Dimension) -> Option<i64> {
    d.finite()
}

/// Checks `dim(x̄ ∩ Z) = p(x) + dim x` and that the first `-p(x)` cutting
/// functions cut `x̄ ∩ Z` out of `x̄` up to radical, for every stratum `x`
/// that `Z` meets.
pub fn is_measuring<F: Field>(z: &MeasuringCandidate<F>, s: &Scenario<F>) -> Result<Verdict> {
    s.require_measuring_hypotheses()?;
    let mut witnesses = Vec::new();
    for x in &s.strata {
        let meet = x.ideal.sum(&z.ideal);
        if meet.is_unit_ideal() {
            continue;
        }
        let px = s.perversity.value(x.dim as i64)?;
        let want = px + x.dim as i64;
        let got = meet.dimension();
        if got != Dimension::Finite(want) {
            witnesses.push(Witness {
                stratum: Some(x.name.clone()),
                degree: None,
                dimension: Some(got),
                computed: dim_value(got),
                required: Some(want),
                relation: Relation::Equal,
                member: None,
            });
        }
        let need = (-px) as usize;
        if need > z.cutting.len() {
            return Err(Error::MissingCutting {
                stratum: x.name.clone(),
                needed: need,
                have: z.cutting.len(),
            });
        }
        let prefix: Vec<Polynomial<F>> = z.cutting[..need].iter().map(|c| c.function.clone()).collect();
        if !x.ideal.with(&prefix).same_radical(&meet) {
            witnesses.push(Witness {
                stratum: Some(x.name.clone()),
                degree: None,
                dimension: Some(got),
                computed: Some(need as i64),
                required: Some(need as i64),
                relation: Relation::SameRadical,
                member: None,
            });
        }
    }
    Ok(Verdict::from_witnesses("measuring_definition", witnesses))
}

/// Every member is measuring and every stratum closure meets some member.
pub fn is_measuring_family<F: Field>(family: &MeasuringFamily<F>, s: &Scenario<F>) -> Result<Verdict> {
    let mut witnesses = Vec::new();
    for z in &family.members {
        for mut w in is_measuring(z, s)?.witnesses {
            w.member = Some(z.name.clone());
            witnesses.push(w);
        }
    }
    for x in &s.strata {
        if !family.members.iter().any(|z| !x.ideal.sum(&z.ideal).is_unit_ideal()) {
            witnesses.push(Witness {
                stratum: Some(x.name.clone()),
                degree: None,
                dimension: None,
                computed: None,
                required: None,
                relation: Relation::Meets,
                member: None,
            });
        }
    }
    Ok(Verdict::from_witnesses("measuring_family", witnesses))
}

#[derive(Clone, Debug)]
pub struct ConstructOptions<F> {
    pub seed: u64,
    pub pool: Vec<Polynomial<F>>,
    pub max_degree: u32,
    pub max_attempts: usize,
    pub name: String,
}

impl<F> Default for ConstructOptions<F> {
    fn default() -> Self {
        ConstructOptions {
            seed: 0,
            pool: Vec::new(),
            max_degree: 3,
            max_attempts: 20,
            name: "constructed".into(),
        }
    }
}

fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..nvars {
                let e = m.mul(&Monomial::var(nvars, v));
                if !next.contains(&e) {
                    next.push(e);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The first violated condition for `f` at step `d`, or `None` if `f` may be
/// used to cut `Z_d` down to `Z_(d+1)`.
fn violation<F: Field>(f: &Polynomial<F>, d: i64, z: &Ideal<F>, s: &Scenario<F>) -> Option<String> {
    if f.is_zero() {
        return Some("candidate is zero".into());
    }
    for x in s.strata.iter().filter(|x| x.dim as i64 <= d) {
        if !x.ideal.contains(f) {
            return Some(format!("candidate does not vanish on `{}`", x.name));
        }
    }
    for x in s.strata.iter().filter(|x| x.dim as i64 > d) {
        let before = x.ideal.sum(z);
        let after = before.with(std::slice::from_ref(f));
        if after.is_unit_ideal() {
            return Some(format!("intersection with `{}` becomes empty", x.name));
        }
        let (Some(a), Some(b)) = (dim_value(after.dimension()), dim_value(before.dimension())) else {
            return Some(format!("intersection with `{}` has no dimension", x.name));
        };
        if a != b - 1 {
            return Some(format!("dimension on `{}` does not drop ({b} to {a})", x.name));
        }
    }
    None
}

/// Builds a measuring subvariety by the induction over `d = -1, ..., dim X - 1`:
/// `Z_(-1) = X`, and when `p(d+1) = p(d) - 1`, `Z_(d+1) = Z_d ∩ V(f)` for an
/// `f` vanishing on the strata of dimension at most `d` that cuts every
/// larger stratum closure down by one dimension. Pool entries are tried
/// first, then seeded random combinations.
pub fn construct_measuring<F: Field>(s: &Scenario<F>, opts: &ConstructOptions<F>) -> Result<MeasuringCandidate<F>> {
    s.require_measuring_hypotheses()?;
    let n = s.nvars();
    for f in &opts.pool {
        if f.nvars() != n {
            return Err(Error::VariableMismatch {
                expected: n,
                found: f.nvars(),
            });
        }
    }
    let p = &s.perversity;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut z = s.variety.clone();
    let mut cutting = Vec::new();
    for d in -1..s.dim_x() as i64 {
        let before = if d < 0 { 0 } else { p.value(d)? };
        let after = p.value(d + 1)?;
        if after == before {
            continue;
        }
        if after != before - 1 {
            return Err(Error::PerversityHypothesis(format!("p({}) - p({d}) = {}", d + 1, after - before)));
        }
        let mut last = String::from("no candidates");
        let mut chosen = None;
        for f in &opts.pool {
            match violation(f, d, &z, s) {
                None => {
                    chosen = Some(f.clone());
                    break;
                }
                Some(why) => last = why,
            }
        }
        if chosen.is_none() {
            let mut product = Ideal::unit(n);
            for x in s.strata.iter().filter(|x| x.dim as i64 <= d) {
                product = product.product(&x.ideal);
            }
            let mut basis = Vec::new();
            for g in product.generators() {
                let Some(gd) = g.total_degree() else { continue };
                if gd > opts.max_degree {
                    continue;
                }
                for m in monomials_up_to(n, opts.max_degree - gd) {
                    basis.push(g.mul_monomial(&m));
                }
            }
            if basis.is_empty() {
                last = format!("no element of degree at most {} in the product ideal", opts.max_degree);
            } else {
                for _ in 0..opts.max_attempts {
                    let mut f = Polynomial::zero(n);
                    for b in &basis {
                        let c: i64 = rng.gen_range(-2..=2);
                        if c != 0 {
                            f = &f + &b.scale(&F::from_int(c));
                        }
                    }
                    match violation(&f, d, &z, s) {
                        None => {
                            chosen = Some(f);
                            break;
                        }
                        Some(why) => last = why,
                    }
                }
            }
        }
        let Some(f) = chosen else {
            return Err(Error::ConstructionFailed { step: d, condition: last });
        };
        z = z.with(std::slice::from_ref(&f));
        cutting.push(CuttingFunction { function: f, step: d });
    }
    Ok(MeasuringCandidate {
        name: opts.name.clone(),
        ideal: z,
        cutting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;
    use crate::stratspace::Perversity;
    use crate::Q;

    fn cone() -> Scenario<Q> {
        Scenario::from_json(
            r#"{"variables": ["x","y","z"], "variety_ideal": ["x^2+y*z"],
                "strata": [{"name":"origin","ideal":["x","y","z"],"dim":0},
                           {"name":"open","ideal":["x^2+y*z"],"dim":2}],
                "perversity": {"0":0,"1":-1,"2":-1}}"#,
        )
        .unwrap()
    }

    fn plane() -> Scenario<Q> {
        Scenario::from_json(
            r#"{"variables": ["x","y"], "variety_ideal": [],
                "strata": [{"name":"origin","ideal":["x","y"],"dim":0},
                           {"name":"x_axis","ideal":["y"],"dim":1},
                           {"name":"y_axis","ideal":["x"],"dim":1},
                           {"name":"open","ideal":[],"dim":2}],
                "perversity": {"0":0,"1":-1,"2":-2}}"#,
        )
        .unwrap()
    }

    fn polys(s: &Scenario<Q>, texts: &[&str]) -> Vec<crate::Poly> {
        texts.iter().map(|t| parse_polynomial(t, &s.variables, "t").unwrap()).collect()
    }

    fn candidate(s: &Scenario<Q>, ideal: &[&str], cut: &[&str]) -> MeasuringCandidate<Q> {
        MeasuringCandidate {
            name: "z".into(),
            ideal: Ideal::new(s.nvars(), polys(s, ideal)).unwrap(),
            cutting: polys(s, cut)
                .into_iter()
                .enumerate()
                .map(|(i, function)| CuttingFunction { function, step: i as i64 })
                .collect(),
        }
    }

    #[test]
    fn line_in_cone_is_measuring() {
        let s = cone();
        assert!(is_measuring(&candidate(&s, &["x^2+y*z", "x", "y"], &["y"]), &s).unwrap().result);
    }

    #[test]
    fn origin_in_cone_is_not() {
        let s = cone();
        let v = is_measuring(&candidate(&s, &["x", "y", "z"], &["x", "y"]), &s).unwrap();
        assert!(!v.result);
        let w = &v.witnesses[0];
        assert_eq!((w.stratum.as_deref(), w.computed, w.required), (Some("open"), Some(0), Some(1)));
    }

    #[test]
    fn whole_space_for_zero_perversity() {
        let s = cone().with_perversity(Perversity::from_values(&[0, 0, 0]));
        let z = candidate(&s, &["x^2+y*z"], &[]);
        assert!(is_measuring(&z, &s).unwrap().result);
        let built = construct_measuring(&s, &ConstructOptions::default()).unwrap();
        assert!(built.cutting.is_empty());
        assert!(built.ideal.same_as(&s.variety));
    }

    #[test]
    fn missing_cutting() {
        let s = cone();
        assert!(matches!(
            is_measuring(&candidate(&s, &["x^2+y*z", "x", "y"], &[]), &s),
            Err(Error::MissingCutting { needed: 1, have: 0, .. })
        ));
    }

    #[test]
    fn families() {
        let s = cone();
        let empty = MeasuringFamily::new(vec![]);
        assert!(!is_measuring_family(&empty, &s).unwrap().result);
        let fam = MeasuringFamily::new(vec![candidate(&s, &["x^2+y*z", "x", "y"], &["y"])]);
        assert!(is_measuring_family(&fam, &s).unwrap().result);
    }

    #[test]
    fn family_missing_the_origin() {
        let s = cone();
        // the affine line {x = 0, y = 1} inside the cone, cut by y - 1
        let z = candidate(&s, &["x^2+y*z", "y-1", "x^2+z"], &["y-1"]);
        let v = is_measuring_family(&MeasuringFamily::new(vec![z]), &s).unwrap();
        assert!(!v.result);
        let w = v.witnesses.last().unwrap();
        assert_eq!((w.stratum.as_deref(), w.relation), (Some("origin"), Relation::Meets));
    }

    #[test]
    fn plane_with_pool() {
        let s = plane();
        let opts = ConstructOptions {
            pool: polys(&s, &["x+y", "x*y"]),
            ..ConstructOptions::default()
        };
        let z = construct_measuring(&s, &opts).unwrap();
        let steps: Vec<_> = z.cutting.iter().map(|c| (c.function.to_text(&s.variables), c.step)).collect();
        assert_eq!(steps, vec![("x+y".to_string(), 0), ("x*y".to_string(), 1)]);
        assert!(z.ideal.same_radical(&Ideal::new(2, polys(&s, &["x", "y"])).unwrap()));
        assert!(is_measuring(&z, &s).unwrap().result);
    }

    #[test]
    fn cone_with_pool_and_random() {
        let s = cone();
        let opts = ConstructOptions {
            pool: polys(&s, &["y"]),
            ..ConstructOptions::default()
        };
        let z = construct_measuring(&s, &opts).unwrap();
        assert_eq!(z.cutting.len(), 1);
        assert!(z.ideal.same_radical(&Ideal::new(3, polys(&s, &["x", "y"])).unwrap()));
        for seed in 0..3 {
            let opts = ConstructOptions { seed, ..ConstructOptions::default() };
            let a = construct_measuring(&s, &opts).unwrap();
            let b = construct_measuring(&s, &opts).unwrap();
            assert_eq!(a.cutting, b.cutting);
            assert!(is_measuring(&a, &s).unwrap().result);
        }
    }

    #[test]
    fn exhausted_search_reports_step() {
        let s = plane();
        let opts = ConstructOptions {
            max_degree: 0,
            ..ConstructOptions::default()
        };
        match construct_measuring(&s, &opts) {
            Err(Error::ConstructionFailed { step, .. }) => assert_eq!(step, 0),
            other => panic!("{other:?}"),
        }
    }
}

mod common;

use common::*;
use pervcoh::homcx::{
    ext_colimit_oracle, least_nonvanishing_degree, local_cohomology_min_degree, nonzero_cohomology, DualizingData,
    FreeComplex, OracleVerdict,
};
use pervcoh::polycore::{free_resolution, DegreeBound, Ideal, Matrix, PresentedModule};
use pervcoh::stratspace::stratified_support_of;
use pervcoh::Q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_complex(rng: &mut ChaCha8Rng) -> FreeComplex<Q> {
    let n = rng.gen_range(1..=3);
    let gens: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| random_poly(rng, n, 2, 3)).collect();
    let res = free_resolution(&PresentedModule::quotient_ring(n, &gens, "S/I")).unwrap();
    let rows = rng.gen_range(1..=2);
    let cols = rng.gen_range(1..=2);
    let entries = (0..rows * cols).map(|_| random_poly(rng, n, 2, 2)).collect();
    let lo = rng.gen_range(-3..=3);
    let two_term = FreeComplex::new(n, lo, vec![cols, rows], vec![Matrix::from_row_major(n, rows, cols, entries).unwrap()]).unwrap();
    res.shift(rng.gen_range(-2..=2)).direct_sum(&two_term)
}

fn split_acyclic(n: usize, lo: i64) -> FreeComplex<Q> {
    FreeComplex::new(n, lo, vec![1, 1], vec![Matrix::identity(n, 1)]).unwrap()
}

#[test]
fn dualize_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let c = random_complex(&mut rng);
        assert!(c.validate().is_ok());
        let dual = DualizingData::for_ring(c.nvars());
        let dc = c.dualize(&dual);
        assert!(dc.validate().is_ok());
        assert_eq!(dc.dualize(&dual), c);
        for s in -2..=2 {
            assert_eq!(c.shift(s).dualize(&dual), dc.shift(-s));
        }
    }
}

#[test]
fn split_acyclic_summands_change_nothing() {
    let s = scenario("cone.json");
    for name in ["O_X", "O_X[1]", "k0", "O_line"] {
        let c = s.complex(name).unwrap();
        let base: Vec<_> = nonzero_cohomology(c)
            .iter()
            .map(|h| (h.degree, stratified_support_of(&h.annihilator, &s)))
            .collect();
        for lo in [-3, -1, 0] {
            let bigger = c.direct_sum(&split_acyclic(3, lo));
            let again: Vec<_> = nonzero_cohomology(&bigger)
                .iter()
                .map(|h| (h.degree, stratified_support_of(&h.annihilator, &s)))
                .collect();
            assert_eq!(base, again, "{name} + [S = S] at {lo}");
        }
    }
}

#[test]
fn cone_structure_sheaf_dual() {
    let s = scenario("cone.json");
    let c = s.complex("O_X").unwrap();
    let h = nonzero_cohomology(&c.dualize(&s.dualizing));
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].degree, -2);
    assert!(h[0].annihilator.same_as(&s.variety));
}

#[test]
fn koszul_cohomology_is_the_residue_field() {
    let gens: Vec<_> = ["x", "y", "z"].iter().map(|t| p(3, t)).collect();
    let k = koszul(3, &gens);
    assert!(k.validate().is_ok());
    let h = nonzero_cohomology(&k);
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].degree, 0);
    assert!(h[0].annihilator.same_as(&ideal(3, &["x", "y", "z"])));
    // self dual up to shift
    let hd = nonzero_cohomology(&k.dualize(&DualizingData::for_ring(3)));
    assert_eq!(hd.len(), 1);
    assert_eq!(hd[0].degree, 0);
}

fn free_rank_one(n: usize) -> FreeComplex<Q> {
    FreeComplex::free(n, 1, 0)
}

#[test]
fn ext_oracle_on_the_line() {
    let j = [p(1, "x")];
    let o = free_rank_one(1);
    assert!(matches!(
        ext_colimit_oracle(&j, &o, 0, 4).unwrap(),
        OracleVerdict::VanishingUpToTmax { t_max: 4, stabilized: true }
    ));
    assert!(ext_colimit_oracle(&j, &o, 1, 4).unwrap().is_nonvanishing());
    assert!(ext_colimit_oracle(&j, &o, 1, 0).is_err());
}

#[test]
fn ext_oracle_unit_ideal_vanishes() {
    let o = free_rank_one(2);
    for i in 0..=2 {
        assert!(!ext_colimit_oracle(&[p(2, "1")], &o, i, 3).unwrap().is_nonvanishing());
    }
}

#[test]
fn ext_oracle_on_the_plane() {
    let j = [p(2, "x"), p(2, "y")];
    let scan = least_nonvanishing_degree(&j, &free_rank_one(2), 0..=3, 4).unwrap();
    assert_eq!(scan.least_nonvanishing, Some(2));
    assert!(scan.conclusive);
}

/// The least nonvanishing local cohomology degree agrees with the bound from
/// dual supports, wherever the oracle is conclusive.
#[test]
fn support_bound_agrees_with_oracle_on_bundled_cases() {
    let cases = [
        ("line.json", vec!["O", "O[1]", "k0"]),
        ("plane.json", vec!["O", "O_xaxis", "k0"]),
        ("cone.json", vec!["O_X", "O_X[1]"]),
    ];
    let mut compared = 0;
    for (file, complexes) in cases {
        let s = scenario(file);
        let mut ideals: Vec<(String, Ideal<Q>)> = s.strata.iter().map(|x| (x.name.clone(), x.ideal.clone())).collect();
        ideals.extend(s.measuring.iter().map(|m| (m.name.clone(), m.ideal.clone())));
        for name in complexes {
            let c = s.complex(name).unwrap();
            for (zname, z) in &ideals {
                if z.generators().is_empty() {
                    continue;
                }
                let DegreeBound::Finite(n) = local_cohomology_min_degree(z, c, &s.dualizing) else {
                    continue;
                };
                let scan = least_nonvanishing_degree(z.generators(), c, (n - 2)..=n, 3).unwrap();
                if scan.conclusive {
                    assert_eq!(scan.least_nonvanishing, Some(n), "{file} {name} along {zname}");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared >= 15, "only {compared} conclusive comparisons");
}

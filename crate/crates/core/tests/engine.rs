mod common;

use common::*;
use pervcoh::polycore::{
    annihilator, free_resolution, groebner_basis, normal_form, Dimension, Ideal, Matrix, MonomialOrder,
    PresentedModule, Submodule,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_ideal(rng: &mut ChaCha8Rng, max_vars: usize) -> Ideal<pervcoh::Q> {
    let n = rng.gen_range(1..=max_vars);
    let k = rng.gen_range(1..=3);
    Ideal::new(n, (0..k).map(|_| random_poly(rng, n, 3, 4)).collect()).unwrap()
}

#[test]
fn s_pairs_vanish_on_seeded_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let i = random_ideal(&mut rng, 3);
        let n = i.nvars();
        for order in [MonomialOrder::grevlex(n), MonomialOrder::lex(n)] {
            let gb = groebner_basis(i.generators(), &order);
            assert!(all_s_pairs_vanish(&gb, &order), "{:?}", i.generators());
            for g in i.generators() {
                assert!(divide(g, &gb, &order).is_zero());
            }
        }
    }
}

#[test]
fn dimension_matches_initial_ideal_and_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let i = random_ideal(&mut rng, 3);
        let d = i.dimension();
        assert_eq!(d, i.initial_ideal().dimension());
        assert_eq!(d, dimension_by_elimination(&i), "{:?}", i.generators());
    }
}

#[test]
fn dimension_examples() {
    assert_eq!(ideal(3, &["x^2+y*z"]).dimension(), Dimension::Finite(2));
    assert_eq!(ideal(3, &["x", "y", "z"]).dimension(), Dimension::Finite(0));
    assert_eq!(ideal(3, &["x*y", "x*z"]).dimension(), Dimension::Finite(2));
    assert_eq!(ideal(2, &["x", "x-1"]).dimension(), Dimension::MinusInfinity);
}

fn check_resolution(i: &Ideal<pervcoh::Q>, short: bool) {
    let n = i.nvars();
    let m = PresentedModule::quotient_ring(n, i.generators(), "S/I");
    let r = free_resolution(&m).unwrap();
    assert!(r.validate().is_ok());
    if short {
        assert!(r.ranks().len() <= n + 1, "length {} in {n} variables", r.ranks().len() - 1);
    }
    for k in r.lo()..0 {
        assert!(r.cohomology(k).is_zero(), "H^{k} nonzero");
    }
    if !i.is_unit_ideal() {
        // H^0 recovers S/I
        let image = Submodule::new(n, 1, r.differential(-1).columns()).unwrap();
        let ours = Submodule::new(n, 1, m.matrix().columns()).unwrap();
        assert!(image.same_as(&ours).unwrap());
    }
}

#[test]
fn graded_resolutions_are_exact_and_short() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let n = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(1..=3);
            gens.push(random_form(&mut rng, n, d, 3));
        }
        check_resolution(&Ideal::new(n, gens).unwrap(), true);
    }
}

#[test]
fn resolutions_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..25 {
        check_resolution(&random_ideal(&mut rng, 3), false);
    }
}

#[test]
fn koszul_and_quadric_resolutions() {
    for (gens, ranks) in [
        (vec!["x", "y", "z"], vec![1, 3, 3, 1]),
        (vec!["x^2+y*z"], vec![1, 1]),
        (vec!["x^2", "x*y"], vec![1, 2, 1]),
    ] {
        let i = ideal(3, &gens);
        let r = free_resolution(&PresentedModule::quotient_ring(3, i.generators(), "S/I")).unwrap();
        assert_eq!(r.ranks(), ranks.as_slice());
        check_resolution(&i, true);
    }
}
#[test]
fn annihilator_sits_between_fitting_and_its_radical() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..15 {
        let n = 2;
        let rows = rng.gen_range(1..=2);
        let cols = rng.gen_range(rows..=3);
        let entries = (0..rows * cols).map(|_| random_poly(&mut rng, n, 2, 2)).collect();
        let a = Matrix::from_row_major(n, rows, cols, entries).unwrap();
        let ann = annihilator(&PresentedModule::new(a.clone(), "M"));
        let fitt = fitting_ideal(&a);
        assert!(ann.contains_ideal(&fitt));
        assert!(fitt.radical_contains_ideal(&ann));
    }
}

fn small_poly() -> impl Strategy<Value = pervcoh::Poly> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 1..4).prop_map(|terms| {
        let mut f = pervcoh::polycore::Polynomial::zero(2);
        for ((a, b), c) in terms {
            let m = pervcoh::polycore::Monomial::from_exponents(vec![a, b]);
            f = &f + &pervcoh::polycore::Polynomial::term(2, m, q(c));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn combinations_are_members(g in prop::collection::vec(small_poly(), 1..3), h in prop::collection::vec(small_poly(), 2)) {
        let i = Ideal::new(2, g.clone()).unwrap();
        let mut f = pervcoh::polycore::Polynomial::zero(2);
        for (a, b) in h.iter().zip(g.iter()) {
            f = &f + &(a * b);
        }
        prop_assert!(i.contains(&f));
    }

    #[test]
    fn normal_form_is_idempotent(g in prop::collection::vec(small_poly(), 1..3), f in small_poly()) {
        let order = MonomialOrder::grevlex(2);
        let gb = groebner_basis(&g, &order);
        let r = normal_form(&f, &gb, &order);
        prop_assert_eq!(normal_form(&r, &gb, &order), r.clone());
        prop_assert!(Ideal::new(2, g).unwrap().contains(&(&f - &r)));
    }

    #[test]
    fn radical_membership_of_powers(f in small_poly(), k in 1u32..4) {
        let i = Ideal::new(2, vec![f.pow(k)]).unwrap();
        prop_assert!(i.radical_contains(&f));
    }
}

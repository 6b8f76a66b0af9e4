mod common;

use common::*;
use jetdisc::algebra::{Ideal, Polynomial};
use jetdisc::dimension::{
    count_points, counts_over, dim_from_counts, groebner_basis, krull_dim, GroebnerBudget, TermOrder,
    DEFAULT_COUNT_BUDGET,
};
use jetdisc::field::{Field, Rationals};
use jetdisc::jets::jet_fiber_ideal;
use num_bigint::BigUint;
use proptest::prelude::*;

const PRIMES: [u32; 4] = [5, 7, 11, 13];

fn gb_dim<F: Field>(i: &Ideal<F>) -> i64 {
    krull_dim(i, GroebnerBudget::default()).unwrap().dim
}

fn count_dim<F: Field>(i: &Ideal<F>) -> i64 {
    dim_from_counts(&counts_over(i, &PRIMES, DEFAULT_COUNT_BUDGET).unwrap()).unwrap().dim
}

/// Hypersurfaces whose quadratic parts split over every prime, so point
/// counts track the geometric dimension.
const ORACLE_CORPUS: [&str; 14] = [
    "x^2+y^2+z^2",
    "x*y+z^3",
    "x*y+z^4",
    "z^2+x^2*y+y^3",
    "z^2+x^2*y+y^4",
    "z^2+x^3+y^4",
    "z^2+y^3+x^3*y",
    "z^2+y^3+x^5",
    "x*y",
    "z^2+x*y^2",
    "x^4+y^4+z^4",
    "x^3+y^3+z^3",
    "z",
    "x*y*z",
];

#[test]
fn groebner_and_counts_agree_on_small_fibers() {
    let r = q3();
    let origin = vec![Rationals.zero(); 3];
    let mut checked = 0;
    for e in ORACLE_CORPUS {
        let x = Ideal::parse(&r, &[e]).unwrap();
        for m in 1..=2 {
            let sys = jet_fiber_ideal(&x, &origin, m).unwrap();
            assert!(sys.arity() <= 8);
            assert_eq!(gb_dim(&sys.ideal), count_dim(&sys.ideal), "{e} level {m}");
            checked += 1;
        }
    }
    let plane = jetdisc::algebra::Ring::with_vars(Rationals, &["x", "y"]).unwrap();
    let cusp = Ideal::parse(&plane, &["y^2-x^3"]).unwrap();
    for m in 1..=4 {
        let sys = jet_fiber_ideal(&cusp, &[Rationals.zero(), Rationals.zero()], m).unwrap();
        assert_eq!(gb_dim(&sys.ideal), count_dim(&sys.ideal), "cusp level {m}");
        checked += 1;
    }
    assert!(checked >= 30);
}

#[test]
fn a1_level_two_fiber() {
    let r = q3();
    let x = Ideal::parse(&r, &["x^2+y^2+z^2"]).unwrap();
    let sys = jet_fiber_ideal(&x, &[Rationals.zero(), Rationals.zero(), Rationals.zero()], 2).unwrap();
    assert_eq!(sys.arity(), 6);
    // Only the weight-2 coefficient survives at level 2.
    assert_eq!(sys.ideal.nonzero_gens().count(), 1);
    assert_eq!(gb_dim(&sys.ideal), 5);
    assert_eq!(count_dim(&sys.ideal), 5);
}

#[test]
fn krull_examples() {
    let z9 = fp(32003, &["a", "b", "c", "d", "e", "f", "g", "h", "i"]);
    assert_eq!(gb_dim(&Ideal::zero(&z9)), 9);
    let r = fp(32003, &["x", "y"]);
    assert_eq!(gb_dim(&Ideal::parse(&r, &["x", "y"]).unwrap()), 0);
    assert_eq!(gb_dim(&Ideal::unit(&r)), -1);
    let r6 = fp(32003, &["a", "b", "c", "d", "e", "f"]);
    let i = Ideal::parse(&r6, &["a^2+b^2+c^2", "2*(a*d+b*e+c*f)"]).unwrap();
    assert_eq!(gb_dim(&i), 4);
}

#[test]
fn basis_examples() {
    let r = q3();
    let gb = groebner_basis(&Ideal::parse(&r, &["x^2", "x*y"]).unwrap(), TermOrder::Grevlex, GroebnerBudget::default()).unwrap();
    let mut b: Vec<_> = gb.basis().iter().map(|p| p.to_string()).collect();
    b.sort();
    assert_eq!(b, ["x*y", "x^2"]);
    let gb = groebner_basis(&Ideal::parse(&r, &["x+y", "x-y"]).unwrap(), TermOrder::Grevlex, GroebnerBudget::default()).unwrap();
    let mut b: Vec<_> = gb.basis().iter().map(|p| p.to_string()).collect();
    b.sort();
    assert_eq!(b, ["x", "y"]);
    let gb = groebner_basis(&Ideal::parse(&r, &["x^2+y^2+z^2", "x*y+z^2"]).unwrap(), TermOrder::Grevlex, GroebnerBudget::default()).unwrap();
    assert!(gb.verify_s_pairs());
}

#[test]
fn count_examples() {
    let r = q3();
    let cone = Ideal::parse(&r, &["x^2+y^2+z^2"]).unwrap();
    assert_eq!(count_points(&cone, 3, DEFAULT_COUNT_BUDGET).unwrap(), BigUint::from(9u32));
    let big = |v: u64| BigUint::from(v);
    assert_eq!(dim_from_counts(&[(5, big(25)), (7, big(49)), (11, big(121))]).unwrap().dim, 2);
    assert_eq!(dim_from_counts(&[(5, big(0)), (7, big(0)), (11, big(0))]).unwrap().dim, -1);
    assert!(dim_from_counts(&[(5, big(25)), (7, big(49))]).is_err());
    let a1 = Ideal::parse(&r, &["x^2+y^2+z^2"]).unwrap();
    let level1 = jet_fiber_ideal(&a1, &[Rationals.zero(), Rationals.zero(), Rationals.zero()], 1).unwrap();
    assert_eq!(count_dim(&level1.ideal), 3);
}

fn ideal_strategy() -> impl Strategy<Value = Vec<Polynomial<jetdisc::field::PrimeField>>> {
    prop::collection::vec(arb_poly(fp(7, &["x", "y", "z"]), 3, 3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn buchberger_postcondition(gens in ideal_strategy()) {
        let r = gens[0].ring().clone();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let gb = groebner_basis(&i, TermOrder::Grevlex, GroebnerBudget::default()).unwrap();
        prop_assert!(gb.verify_s_pairs());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
        for p in gb.basis() {
            prop_assert!(p.field().is_one(&p.terms()[0].1));
        }
    }

    #[test]
    fn bases_are_deterministic(gens in ideal_strategy()) {
        let r = gens[0].ring().clone();
        let i = Ideal::new(&r, gens).unwrap();
        let a = groebner_basis(&i, TermOrder::Grevlex, GroebnerBudget::default()).unwrap();
        let b = groebner_basis(&i, TermOrder::Grevlex, GroebnerBudget::default()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn more_generators_never_raise_dimension(gens in ideal_strategy(), extra in arb_poly(fp(7, &["x", "y", "z"]), 3, 3)) {
        let r = gens[0].ring().clone();
        let small = Ideal::new(&r, gens.clone()).unwrap();
        let big = small.with_generator(extra).unwrap();
        prop_assert!(gb_dim(&big) <= gb_dim(&small));
    }

    #[test]
    fn dimension_matches_counts_mod_7_free_variables(k in 0usize..3) {
        // V(x_0, .., x_{k-1}) in A^3
        let r = q3();
        let gens: Vec<String> = ["x", "y", "z"][..k].iter().map(|s| s.to_string()).collect();
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let i = Ideal::parse(&r, &refs).unwrap();
        prop_assert_eq!(gb_dim(&i), 3 - k as i64);
        prop_assert_eq!(count_dim(&i), 3 - k as i64);
    }
}

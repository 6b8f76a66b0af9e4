mod common;

use common::*;
use jetdisc::algebra::Ideal;
use jetdisc::dimension::DimConfig;
use jetdisc::field::{Field, PrimeField, Rationals};
use jetdisc::mld::*;
use num_rational::Ratio;

fn cfg() -> DimConfig {
    DimConfig::default()
}

fn r3() -> std::sync::Arc<jetdisc::algebra::Ring<PrimeField>> {
    fp(32003, &["x", "y", "z"])
}

#[test]
fn a1_sequence_through_level_three() {
    // Level 2 keeps only Q(x1) = 0 in 6 variables; level 3 adds B(x1, x2) and
    // three free level-3 variables.
    let s = s_sequence(&hyper(&r3(), "x^2+y^2+z^2"), 3, &cfg()).unwrap();
    assert_eq!(s.dims(), [0, 3, 5, 7]);
    assert_eq!(s.values, [2, 1, 1, 1]);
}

#[test]
fn a1_is_exactly_one() {
    let rep = mld_mj_estimate(&hyper(&r3(), "x^2+y^2+z^2"), 5, &cfg()).unwrap();
    assert_eq!(rep.estimate, MldValue::int(1));
    assert_eq!(rep.certificate, Certificate::ThresholdDMinus1);
    assert_eq!(rep.canonical, Flag::Yes);
    assert_eq!(rep.log_canonical, Flag::Yes);
    let short = mld_mj_estimate(&hyper(&r3(), "x^2+y^2+z^2"), 3, &cfg()).unwrap();
    assert_eq!(short.certificate, Certificate::Truncated);
    assert_eq!(short.canonical, Flag::Unknown);
}

#[test]
fn whitney_umbrella_is_exactly_one() {
    let rep = mld_mj_estimate(&hyper(&r3(), "z^2+x*y^2"), 5, &cfg()).unwrap();
    assert_eq!((rep.estimate, rep.certificate), (MldValue::int(1), Certificate::ThresholdDMinus1));
}

#[test]
fn quartic_cone_is_minus_infinity() {
    let job = hyper(&r3(), "x^4+y^4+z^4");
    let s = s_sequence(&job, 3, &cfg()).unwrap();
    assert_eq!(s.values[3], -1);
    assert_eq!(s.dims()[3], 9);
    let rep = mld_mj_estimate(&job, 5, &cfg()).unwrap();
    assert_eq!(rep.estimate, MldValue::NegInfinity);
    assert_eq!(rep.certificate, Certificate::NegativeSValue { level: 3 });
    assert_eq!(rep.log_canonical, Flag::No);
}

#[test]
fn smooth_points_reach_d() {
    let r = r3();
    let mut jobs = vec![hyper(&r, "z"), hyper(&r, "x+y^2+z^3"), hyper(&r, "x*y+z")];
    let sphere = Ideal::parse(&r, &["x^2+y^2+z^2-1"]).unwrap();
    jobs.push(VarietyJob::new(sphere, 2, vec![1, 0, 0]).unwrap());
    let curve = Ideal::parse(&r, &["z", "y-x^2"]).unwrap();
    jobs.push(VarietyJob::new(curve, 1, vec![0, 0, 0]).unwrap());
    for job in &jobs {
        let d = job.dim() as i64;
        let s = s_sequence(job, 3, &cfg()).unwrap();
        assert_eq!(s.values, vec![d; 4]);
        let rep = mld_mj_estimate(job, 5, &cfg()).unwrap();
        assert_eq!((rep.estimate, rep.certificate), (MldValue::int(d), Certificate::SmoothPoint));
    }
}

#[test]
fn estimate_never_exceeds_d_and_equals_it_only_when_smooth() {
    let r = r3();
    for e in ["x^2+y^2+z^2", "x*y", "z^2+x*y^2", "x^3+y^3+z^3", "x^4+y^4+z^4", "z", "x+y*z"] {
        let job = hyper(&r, e);
        let rep = mld_mj_estimate(&job, 4, &cfg()).unwrap();
        assert!(rep.estimate <= MldValue::int(2), "{e}");
        assert_eq!(rep.estimate == MldValue::int(2), job.is_smooth_point(), "{e}");
        assert_eq!(rep.certificate == Certificate::SmoothPoint, job.is_smooth_point(), "{e}");
    }
}

#[test]
fn truncated_minimum_is_monotone_in_level() {
    let r = r3();
    for e in ["x^2+y^2+z^3", "x^3+y^3+z^3", "z^2+x^3+y^7"] {
        let job = hyper(&r, e);
        let full = s_sequence(&job, 5, &cfg()).unwrap();
        let mut last = i64::MAX;
        for m in 1..=5 {
            let s = s_sequence(&job, m, &cfg()).unwrap();
            assert_eq!(s.values[..], full.values[..=m as usize]);
            let min = s.min().unwrap();
            assert!(min <= last);
            last = min;
        }
    }
}

#[test]
fn curves_abstain_from_minus_infinity() {
    let r = r3();
    let axes = Ideal::parse(&r, &["x*y", "y*z", "x*z"]).unwrap();
    let job = VarietyJob::new(axes, 1, vec![0, 0, 0]).unwrap();
    let rep = mld_mj_estimate(&job, 2, &cfg()).unwrap();
    assert!(rep.s.values.iter().any(|&v| v < 0));
    assert_ne!(rep.estimate, MldValue::NegInfinity);
    assert_eq!(rep.certificate, Certificate::Truncated);
    assert!(!rep.notes.is_empty());
}

#[test]
fn ambient_pair_examples() {
    let r2 = fp(32003, &["x", "y"]);
    let origin2 = Center::Point(vec![0, 0]);
    let pair = PairSpec { clauses: vec![(Ideal::parse(&r2, &["x", "y"]).unwrap(), Ratio::from_integer(1))] };
    let rep = mld_ambient_pair(&r2, &pair, &origin2, &[5], &cfg()).unwrap();
    assert_eq!(rep.truncated_min, Ratio::from_integer(1));
    for t in &rep.terms {
        let m = t.orders[0] as i64;
        if m > 0 {
            assert_eq!(t.codim, Some(2 * m));
        }
    }
    let r = r3();
    let origin3 = Center::Point(vec![0, 0, 0]);
    let z = PairSpec { clauses: vec![(Ideal::parse(&r, &["z"]).unwrap(), Ratio::from_integer(1))] };
    assert_eq!(mld_ambient_pair(&r, &z, &origin3, &[5], &cfg()).unwrap().truncated_min, Ratio::from_integer(2));
    let quartic = PairSpec { clauses: vec![(Ideal::parse(&r, &["x^4+y^4+z^4"]).unwrap(), Ratio::from_integer(1))] };
    let rep = mld_ambient_pair(&r, &quartic, &origin3, &[6], &cfg()).unwrap();
    assert_eq!(rep.value, MldValue::NegInfinity);
    let half = PairSpec { clauses: vec![(Ideal::parse(&r2, &["x", "y"]).unwrap(), Ratio::new(1, 2))] };
    assert_eq!(mld_ambient_pair(&r2, &half, &origin2, &[4], &cfg()).unwrap().truncated_min, Ratio::new(3, 2));
    let empty = PairSpec::<PrimeField> { clauses: vec![] };
    assert!(mld_ambient_pair(&r2, &empty, &origin2, &[], &cfg()).is_err());
}

#[test]
fn inversion_examples() {
    let r = r3();
    for (e, v) in [("z", MldValue::int(2)), ("x^2+y^2+z^2", MldValue::int(1)), ("x^4+y^4+z^4", MldValue::NegInfinity)] {
        let io = inversion_check(&hyper(&r, e), 5, &cfg()).unwrap();
        assert_eq!(io.lhs.estimate, v, "{e}");
        assert_eq!(io.rhs_estimate, v, "{e}");
        assert!(io.agree, "{e}");
    }
}

#[test]
fn embedding_dimension_filter() {
    let r = r3();
    let a1 = emb_dim_bound_check(&hyper(&r, "x^2+y^2+z^2"));
    assert_eq!(a1.emb, 3);
    assert!(a1.mj_canonical_possible && a1.mj_lc_possible);
    let smooth = emb_dim_bound_check(&hyper(&r, "z+x^2"));
    assert_eq!(smooth.emb, 2);
    let quartic = emb_dim_bound_check(&hyper(&r, "x^4+y^4+z^4"));
    assert!(quartic.mj_canonical_possible);
    let r4 = fp(32003, &["x", "y", "z", "w"]);
    let axes = Ideal::parse(&r4, &["x*y", "x*z", "x*w", "y*z", "y*w", "z*w"]).unwrap();
    let job = VarietyJob::new(axes, 1, vec![0; 4]).unwrap();
    let e = emb_dim_bound_check(&job);
    assert_eq!(e.emb, 4);
    assert!(!e.mj_canonical_possible && !e.mj_lc_possible);
}

#[test]
fn generic_points() {
    let r = r3();
    let nc = hyper(&r, "x*y");
    let line = Ideal::parse(&r, &["x", "y"]).unwrap();
    let rep = generic_point_s_sequence(&nc, &line, 4, 42, &cfg()).unwrap();
    assert!(!rep.disagreement);
    assert_eq!(rep.samples[0].s.min(), Some(1));
    let whole = Ideal::parse(&r, &["x*y"]).unwrap();
    let w = generic_point_s_sequence(&nc, &whole, 3, 42, &cfg()).unwrap();
    // sampled form of the codimension inequality, codim(line, surface) = 1
    assert!(rep.generic_values[0] <= w.generic_values[0] + 1);

    let r4 = fp(32003, &["x", "y", "z", "w"]);
    let cyl = hyper(&r4, "x^2+y^2+z^2");
    let sing = Ideal::parse(&r4, &["x", "y", "z"]).unwrap();
    let rep = generic_point_s_sequence(&cyl, &sing, 3, 7, &cfg()).unwrap();
    assert_eq!(rep.samples[0].s.min(), Some(2));
    let point = Ideal::parse(&r, &["x", "y", "z"]).unwrap();
    let rep = generic_point_s_sequence(&nc, &point, 3, 1, &cfg()).unwrap();
    assert_eq!(rep.samples[0].s, s_sequence(&nc, 3, &cfg()).unwrap());
}

#[test]
fn increments_settle_to_d() {
    let r = r3();
    let corpus: Vec<&str> = SURFACE_CORPUS.iter().map(|(_, e)| *e).chain(["x^3+y^3+z^3", "x^4+y^4+z^4"]).collect();
    for e in corpus {
        let job = hyper(&r, e);
        let s = s_sequence(&job, 5, &cfg()).unwrap();
        let dims = s.dims();
        let inc: Vec<i64> = dims.windows(2).map(|w| w[1] - w[0]).collect();
        let m0 = (0..inc.len()).find(|&k| inc[k..].iter().all(|&i| i == 2)).unwrap_or(inc.len());
        let ord = jacobian_contact_order(&job).unwrap() as usize;
        assert!(m0 <= 2 * ord, "{e}: increments {inc:?}, jacobian order {ord}");
    }
}

#[test]
fn sweep_examples() {
    let r = r3();
    let corpus: Vec<(String, VarietyJob<PrimeField>)> = ["x^2+y^2+z^2", "x*y", "z^2+x^3+y^4", "x^4+y^4+z^4", "z", "x+y^2"]
        .iter()
        .map(|e| (e.to_string(), hyper(&r, e)))
        .collect();
    let t = conjecture_sweep(&corpus, 5, &cfg()).unwrap();
    let row = |n: &str| t.rows.iter().find(|r| r.name == n).unwrap();
    assert_eq!(row("x^4+y^4+z^4").first_level, 3);
    assert_eq!(row("x^4+y^4+z^4").delta, None);
    assert_eq!(row("z").first_level, 0);
    let top = t.groups.iter().find(|g| g.dim == 2 && g.delta == Some(1)).unwrap();
    assert_eq!(top.jobs, 3);
    assert!(top.max_first_level <= 5);
    let smooth = t.groups.iter().find(|g| g.delta == Some(2)).unwrap();
    assert_eq!(smooth.max_first_level, 0);
}

#[test]
fn rational_jobs_match_surrogate() {
    let q = q3();
    let job = hyper(&q, "z^2+x*y^2");
    let rep = mld_mj_estimate(&job, 5, &cfg()).unwrap();
    assert_eq!(rep.estimate, MldValue::int(1));
    let off = VarietyJob::new(Ideal::parse(&q, &["x^2+y^2+z^2"]).unwrap(), 2, vec![Rationals.one(), Rationals.zero(), Rationals.zero()]);
    assert!(off.is_err());
}

//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_DEFECTS` state expected values that the oracles
//! contradict. They are evaluated exactly as stated and reported as FAIL, but
//! do not fail the target. Any other FAIL does.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use jetdisc::algebra::{linalg, linear_substitute, parse_poly, Ideal, Polynomial, Ring};
use jetdisc::classify::{cdv_hyperplane_test, classify_surface_dp, tau_invariant, top_singularity_test};
use jetdisc::dimension::{counts_over, dim_from_counts, krull_dim, DimConfig, GroebnerBudget, DEFAULT_COUNT_BUDGET};
use jetdisc::field::{Field, PrimeField, Rationals};
use jetdisc::jets::{jet_fiber_ideal, jet_scheme_ideal, weight_check};
use jetdisc::mld::{inversion_check, mld_mj_estimate, s_sequence, Certificate, MldValue, VarietyJob};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

const KNOWN_DEFECTS: [u32; 2] = [6, 9];

const SEED: u64 = 42;
const JOB_LIMIT: Duration = Duration::from_secs(60);

const CORPUS: [(&str, &str); 10] = [
    ("A1", "x^2+y^2+z^2"),
    ("A2", "x^2+y^2+z^3"),
    ("A3", "x^2+y^2+z^4"),
    ("D4", "z^2+x^2*y+y^3"),
    ("D5", "z^2+x^2*y+y^4"),
    ("E6", "z^2+x^3+y^4"),
    ("E7", "z^2+y^3+x^3*y"),
    ("E8", "z^2+y^3+x^5"),
    ("NormalCrossing", "x*y"),
    ("WhitneyType", "z^2+x*y^2"),
];

const TAU: [Option<usize>; 10] = [Some(3), Some(2), Some(2), Some(1), Some(1), Some(1), Some(1), Some(1), None, Some(1)];

/// Surfaces outside the top class.
const NON_TOP: [&str; 5] = ["x^4+y^4+z^4", "x^3+y^3+z^3", "z^2+x^4+y^4", "z", "x+y^2+z^2"];

const THREEFOLDS: [&str; 4] = ["x^2+y^2+z^2+w^2", "x^2+y^2+z^2+w^3", "x^3+y^3+z^3+w^3", "x^5+y^5+z^5+w^5"];

const CURVES: [&str; 3] = ["y^2-x^3", "x*y", "y^2-x^4"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn ring<F: Field>(field: F, vars: &[&str]) -> Arc<Ring<F>> {
    Ring::with_vars(field, vars).unwrap()
}

fn gf(vars: &[&str]) -> Arc<Ring<PrimeField>> {
    ring(PrimeField::new(32003).unwrap(), vars)
}

fn poly<F: Field>(r: &Arc<Ring<F>>, e: &str) -> Polynomial<F> {
    parse_poly(e, r).unwrap()
}

fn hyper<F: Field>(r: &Arc<Ring<F>>, e: &str) -> VarietyJob<F> {
    VarietyJob::hypersurface_at_origin(poly(r, e)).unwrap()
}

fn xyz() -> Arc<Ring<PrimeField>> {
    gf(&["x", "y", "z"])
}

fn xyzw() -> Arc<Ring<PrimeField>> {
    gf(&["x", "y", "z", "w"])
}

fn smooth_jobs() -> Vec<(String, VarietyJob<PrimeField>)> {
    let r = xyz();
    let mut jobs: Vec<(String, VarietyJob<PrimeField>)> =
        ["z", "x+y^2+z^3", "x*y+z"].iter().map(|e| (e.to_string(), hyper(&r, e))).collect();
    let sphere = Ideal::parse(&r, &["x^2+y^2+z^2-1"]).unwrap();
    jobs.push(("sphere at (1,0,0)".into(), VarietyJob::new(sphere, 2, vec![1, 0, 0]).unwrap()));
    let curve = Ideal::parse(&r, &["z", "y-x^2"]).unwrap();
    jobs.push(("plane parabola".into(), VarietyJob::new(curve, 1, vec![0, 0, 0]).unwrap()));
    jobs
}

fn ade_ok() -> Outcome {
    let r = xyz();
    let mut slowest = Duration::ZERO;
    let mut bad = Vec::new();
    for (label, e) in CORPUS {
        let t = Instant::now();
        let rep = mld_mj_estimate(&hyper(&r, e), 5, &DimConfig::default()).unwrap();
        let el = t.elapsed();
        slowest = slowest.max(el);
        if rep.estimate != MldValue::int(1) || rep.certificate != Certificate::ThresholdDMinus1 || el > JOB_LIMIT {
            bad.push(format!("{label}: {} via {} in {:.1}s", rep.estimate, rep.certificate, el.as_secs_f64()));
        }
    }
    outcome(bad.is_empty(), format!("slowest job {:.1}s; {}", slowest.as_secs_f64(), failures(&bad)))
}

fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        "no failures".into()
    } else {
        bad.join("; ")
    }
}

fn smoothness() -> Outcome {
    let cfg = DimConfig::default();
    let mut bad = Vec::new();
    for (name, job) in smooth_jobs() {
        let rep = mld_mj_estimate(&job, 5, &cfg).unwrap();
        if rep.estimate != MldValue::int(job.dim() as i64) || !rep.certificate.is_exact() {
            bad.push(format!("{name}: {} via {}", rep.estimate, rep.certificate));
        }
    }
    let r = xyz();
    for e in ["x^2+y^2+z^2", "x*y", "z^2+x*y^2", "x^3+y^3+z^3", "x^4+y^4+z^4"] {
        let rep = mld_mj_estimate(&hyper(&r, e), 5, &cfg).unwrap();
        if rep.estimate >= MldValue::int(2) {
            bad.push(format!("{e}: {}", rep.estimate));
        }
    }
    outcome(bad.is_empty(), format!("5 smooth, 5 singular; {}", failures(&bad)))
}

fn inversion() -> Outcome {
    let cfg = DimConfig::default();
    let r = xyz();
    let mut jobs: Vec<(String, VarietyJob<PrimeField>)> =
        CORPUS.iter().map(|(l, e)| (l.to_string(), hyper(&r, e))).collect();
    jobs.extend(smooth_jobs());
    for e in ["x^4+y^4+z^4", "x^3+y^3+z^3"] {
        jobs.push((e.to_string(), hyper(&r, e)));
    }
    let mut both = 0;
    let mut bad = Vec::new();
    for (name, job) in &jobs {
        let io = inversion_check(job, 5, &cfg).unwrap();
        if io.lhs.certificate.is_exact() && io.rhs_certificate.is_exact() {
            both += 1;
            if io.lhs.estimate != io.rhs_estimate {
                bad.push(format!("{name}: lhs {} rhs {}", io.lhs.estimate, io.rhs_estimate));
            }
        }
    }
    outcome(both >= 12 && bad.is_empty(), format!("{both} of {} jobs certified on both sides; {}", jobs.len(), failures(&bad)))
}

fn minus_infinity() -> Outcome {
    let cfg = DimConfig::default();
    let mut bad = Vec::new();
    let mut levels = Vec::new();
    for (r, e) in [(xyz(), "x^4+y^4+z^4"), (xyzw(), "x^5+y^5+z^5+w^5")] {
        let rep = mld_mj_estimate(&hyper(&r, e), 5, &cfg).unwrap();
        match rep.certificate {
            Certificate::NegativeSValue { level } if level <= 5 && rep.estimate == MldValue::NegInfinity => {
                levels.push(format!("{e} at level {level}"))
            }
            c => bad.push(format!("{e}: {} via {c}", rep.estimate)),
        }
    }
    let cubic = mld_mj_estimate(&hyper(&xyzw(), "x^3+y^3+z^3+w^3"), 4, &cfg).unwrap();
    if cubic.estimate == MldValue::NegInfinity {
        bad.push("x^3+y^3+z^3+w^3 reported -inf".into());
    }
    levels.push(format!("x^3+y^3+z^3+w^3 min s {} through level 4", cubic.truncated_min));
    outcome(bad.is_empty(), format!("{}; {}", levels.join(", "), failures(&bad)))
}

fn oracle_equivalence() -> Outcome {
    let primes = [5, 7, 11, 13];
    let mut systems: Vec<(String, Ideal<Rationals>)> = Vec::new();
    let mut add = |vars: &[&str], eqs: &[&str], levels: std::ops::RangeInclusive<u32>| {
        let r = ring(Rationals, vars);
        for e in eqs {
            let x = Ideal::parse(&r, &[*e]).unwrap();
            let origin = vec![Rationals.zero(); vars.len()];
            for m in levels.clone() {
                let sys = jet_fiber_ideal(&x, &origin, m).unwrap();
                if sys.arity() <= 8 {
                    systems.push((format!("{e} level {m}"), sys.ideal));
                }
            }
        }
    };
    let surfaces: Vec<&str> = CORPUS.iter().map(|(_, e)| *e).chain(NON_TOP).collect();
    add(&["x", "y", "z"], &surfaces, 1..=2);
    add(&["x", "y", "z", "w"], &THREEFOLDS, 1..=2);
    add(&["x", "y"], &CURVES, 1..=4);
    let mut bad = Vec::new();
    for (name, ideal) in &systems {
        let g = krull_dim(ideal, GroebnerBudget::default()).unwrap().dim;
        match counts_over(ideal, &primes, DEFAULT_COUNT_BUDGET).and_then(|c| dim_from_counts(&c)) {
            Ok(c) if c.dim == g => {}
            Ok(c) => bad.push(format!("{name}: groebner {g} count {}", c.dim)),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("{} fibers, {} mismatches; {}", systems.len(), bad.len(), failures(&bad)))
}

fn a1_sequence() -> Outcome {
    let s = s_sequence(&hyper(&xyz(), "x^2+y^2+z^2"), 3, &DimConfig::default()).unwrap();
    let dims = s.dims();
    outcome(
        s.values == [2, 1, 2, 1] && dims == [0, 3, 4, 7],
        format!("expected s [2, 1, 2, 1] dims [0, 3, 4, 7]; observed s {:?} dims {:?}", s.values, dims),
    )
}

fn random_invertible<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> Vec<Vec<F::Elem>> {
    loop {
        let m: Vec<Vec<F::Elem>> = (0..3).map(|_| (0..3).map(|_| field.random(rng)).collect()).collect();
        if !field.is_zero(&linalg::determinant(field, &m)) {
            return m;
        }
    }
}

fn classifier() -> Outcome {
    let p = xyz();
    let q = ring(Rationals, &["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    let mut moved = 0;
    for ((label, e), tau) in CORPUS.iter().zip(TAU) {
        let fq = poly(&q, e);
        let fp = poly(&p, e);
        for (f, field) in [(classify_surface_dp(&fq).unwrap().label, "QQ"), (classify_surface_dp(&fp).unwrap().label, "GF(32003)")] {
            if f.to_string() != *label {
                bad.push(format!("{e} over {field}: {f}"));
            }
        }
        for k in 0..10 {
            let got = if k % 2 == 0 {
                let m = random_invertible(p.field(), &mut rng);
                classify_surface_dp(&linear_substitute(&fp, &m).unwrap()).unwrap().label
            } else {
                let m = random_invertible(&Rationals, &mut rng);
                classify_surface_dp(&linear_substitute(&fq, &m).unwrap()).unwrap().label
            };
            moved += 1;
            if got.to_string() != *label {
                bad.push(format!("{e} moved ({k}): {got}"));
            }
        }
        if let Some(t) = tau {
            let got = tau_invariant(&fq).unwrap().tau;
            if got != t {
                bad.push(format!("{e}: tau {got}, expected {t}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{moved} coordinate changes; {}", failures(&bad)))
}

fn top_equivalence() -> Outcome {
    let r = xyz();
    let cfg = DimConfig::default();
    let mut bad = Vec::new();
    let mut tops = 0;
    let eqs: Vec<&str> = CORPUS.iter().map(|(_, e)| *e).chain(NON_TOP).collect();
    for e in &eqs {
        let rep = top_singularity_test(&hyper(&r, e), &cfg).unwrap();
        let label = rep.surface.as_ref().map(|c| c.label.clone()).unwrap();
        tops += usize::from(rep.top);
        if rep.top != label.is_top() || rep.consistent != Some(true) {
            bad.push(format!("{e}: {label}, mld {} via {}", rep.mld.estimate, rep.mld.certificate));
        }
    }
    outcome(bad.is_empty(), format!("{tops} top of {}; {}", eqs.len(), failures(&bad)))
}

fn hyperplane_sections() -> Outcome {
    let r = xyzw();
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for (e, want) in [("x^2+y^2+z^2+w^2", "A1"), ("x^2+y^2+z^2+w^3", "A2")] {
        let rep = cdv_hyperplane_test(&hyper(&r, e), 5, SEED).unwrap();
        let hits = rep.counts.get(want).copied().unwrap_or(0);
        seen.push(format!("{e}: {:?}", rep.counts));
        if hits != 5 {
            bad.push(format!("{e}: {hits}/5 {want}"));
        }
    }
    outcome(bad.is_empty(), format!("{}; {}", seen.join(", "), failures(&bad)))
}

fn run_cli(job: &Path, out: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_jetdisc"))
        .args(["run", job.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", &SEED.to_string()])
        .env_remove("JETDISC_BUDGET")
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn sweep() -> Outcome {
    let tmp = TempDir::new().unwrap();
    let corpus: Vec<&str> = CORPUS.iter().map(|(_, e)| *e).collect();
    let job = tmp.path().join("sweep.job");
    fs::write(&job, format!("task = sweep\nfield = GF(32003)\nvars = x,y,z\ncorpus = {}\n", corpus.join(", "))).unwrap();
    let out = tmp.path().join("out");
    if !run_cli(&job, &out) {
        return outcome(false, "sweep job failed");
    }
    let Ok(csv) = fs::read_to_string(out.join("sweep.csv")) else {
        return outcome(false, "no CSV emitted");
    };
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name);
    let (Some(dim), Some(delta), Some(level)) = (col("dim"), col("delta"), col("first_level")) else {
        return outcome(false, format!("unexpected header {header:?}"));
    };
    let mut rows = 0;
    let mut worst = 0;
    let mut bad = Vec::new();
    for l in lines {
        let f: Vec<&str> = l.split(',').collect();
        if f[dim] == "2" && f[delta] == "1" {
            rows += 1;
            let lv: u32 = f[level].parse().unwrap();
            worst = worst.max(lv);
            if lv > 5 {
                bad.push(l.to_string());
            }
        }
    }
    outcome(
        rows == CORPUS.len() && bad.is_empty(),
        format!("{rows} rows with d = 2, delta = 1; max first level {worst}; {}", failures(&bad)),
    )
}

fn invariants() -> Outcome {
    let mut bad = Vec::new();
    let q = ring(Rationals, &["x", "y", "z"]);
    let mut systems = 0;
    for (_, e) in CORPUS {
        let x = Ideal::parse(&q, &[e]).unwrap();
        let origin = vec![Rationals.zero(); 3];
        for m in 1..=5 {
            systems += 1;
            if !weight_check(&jet_fiber_ideal(&x, &origin, m).unwrap()) {
                bad.push(format!("{e} fiber level {m} not weighted"));
            }
        }
        for m in 0..=3 {
            systems += 1;
            if !weight_check(&jet_scheme_ideal(&x, m).unwrap()) {
                bad.push(format!("{e} jet scheme level {m} not weighted"));
            }
        }
    }

    let mut cfg = DimConfig::default();
    cfg.groebner.verify = true;
    let r = xyz();
    for (label, e) in CORPUS {
        if let Err(err) = mld_mj_estimate(&hyper(&r, e), 5, &cfg) {
            bad.push(format!("{label}: {err}"));
        }
    }

    let tmp = TempDir::new().unwrap();
    let jobs = [
        ("mld.job", "task = mld\nfield = GF(32003)\nvars = x,y,z\ngenerators = z^2+x^3+y^4\n"),
        ("ioa.job", "task = ioa\nfield = GF(32003)\nvars = x,y,z\ngenerators = x^2+y^2+z^3\n"),
        ("cls.job", "task = classify\nvars = x,y,z\ngenerators = z^2+x^2*y+y^4\n"),
        ("cdv.job", "task = cdv\nfield = GF(32003)\nvars = x,y,z,w\ngenerators = x^2+y^2+z^3+w^3\n"),
        ("jets.job", "task = jets\nvars = x,y\ngenerators = y^2-x^3\n"),
    ];
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = tmp.path().join(format!("run{k}"));
        for (name, body) in jobs {
            let p = tmp.path().join(name);
            fs::write(&p, body).unwrap();
            if !run_cli(&p, &out) {
                bad.push(format!("{name} failed"));
            }
        }
        let mut files: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        outputs.push(files.iter().map(|f| (f.file_name().unwrap().to_owned(), fs::read(f).unwrap())).collect::<Vec<_>>());
    }
    if outputs[0] != outputs[1] {
        bad.push("reports differ between runs".into());
    }
    outcome(
        bad.is_empty(),
        format!(
            "{systems} weighted systems, bases verified on {} mld jobs, {} report files compared; {}",
            CORPUS.len(),
            outputs[0].len(),
            failures(&bad)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "ADE corpus has mld 1", ade_ok),
        (2, "smooth points reach d", smoothness),
        (3, "inversion of adjunction", inversion),
        (4, "-inf detection", minus_infinity),
        (5, "Groebner and point-count dimensions agree", oracle_equivalence),
        (6, "A1 s-sequence", a1_sequence),
        (7, "classifier soundness", classifier),
        (8, "top singularity equivalence", top_equivalence),
        (9, "hyperplane sections", hyperplane_sections),
        (10, "first-min sweep", sweep),
        (11, "invariant suites", invariants),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut unexpected = Vec::new();
    for (n, name, check) in criteria {
        let t = Instant::now();
        let o = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let known = if !o.pass && KNOWN_DEFECTS.contains(&n) { " [known defect]" } else { "" };
        println!("criterion {n:>2} {verdict}{known}: {name} ({:.1}s) {}", t.elapsed().as_secs_f64(), o.detail);
        if !o.pass && !KNOWN_DEFECTS.contains(&n) {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}

use std::path::Path;
use std::sync::Arc;

use jetdisc::algebra::{self, parse_poly, Ideal, Polynomial, Ring};
use jetdisc::classify::{cdv_hyperplane_test, classify_surface_dp, top_singularity_test};
use jetdisc::dimension::{DimConfig, OracleMode};
use jetdisc::error::{JetError, MldError};
use jetdisc::field::{Field, FieldSpec, PrimeField, Rationals};
use jetdisc::jets;
use jetdisc::mld::{
    conjecture_sweep, emb_dim_bound_check, inversion_check, jacobian_contact_order, mld_mj_estimate, Certificate,
    MldReport, SSequence, VarietyJob,
};
use thiserror::Error;

use crate::job::{Budgets, JobFile, Located, ParseError, Task};
use crate::report::{Report, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    /// 2 for malformed input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            _ => 1,
        }
    }
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

/// Command-line overrides; `None` keeps the job file's value.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub max_level: Option<u32>,
    pub seed: Option<u64>,
    pub oracle: Option<OracleMode>,
    pub budgets: Budgets,
}

pub fn run_job(path: &Path, opts: &RunOptions) -> Result<Report, CliError> {
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let job: JobFile = src.parse()?;
    let stem = path.file_stem().map_or("job".into(), |s| s.to_string_lossy().into_owned());
    run_parsed(&job, &stem, opts)
}

pub fn run_parsed(job: &JobFile, stem: &str, opts: &RunOptions) -> Result<Report, CliError> {
    let mut job = job.clone();
    if let Some(m) = opts.max_level {
        job.max_level = m;
    }
    if let Some(s) = opts.seed {
        job.seed = s;
    }
    if let Some(o) = opts.oracle {
        job.oracle = o;
    }
    job.budgets = job.budgets.overridden_by(opts.budgets);
    match job.field {
        FieldSpec::Rationals => run_in(Rationals, &job, stem),
        FieldSpec::Prime(p) => run_in(PrimeField::new(p).map_err(compute)?, &job, stem),
    }
}

fn dim_config(job: &JobFile) -> DimConfig {
    let mut cfg = DimConfig { oracle: job.oracle, ..DimConfig::default() };
    if let Some(p) = &job.primes {
        cfg.primes = p.clone();
    }
    if let Some(s) = job.budgets.groebner_steps {
        cfg.groebner.max_steps = s;
    }
    if let Some(d) = job.budgets.groebner_degree {
        cfg.groebner.max_degree = d;
    }
    if let Some(c) = job.budgets.count {
        cfg.count_budget = c;
    }
    cfg
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or("none".into(), |v| v.to_string())
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn echo(r: &mut Report, job: &JobFile) {
    r.push("job", job.name.clone().unwrap_or_else(|| r.stem.clone()));
    r.push("task", job.task);
    r.push("field", job.field);
    r.push("vars", job.vars.value.join(","));
    if let Some(g) = &job.generators {
        r.push("generators", g.value.join(","));
    }
    if let Some(c) = &job.corpus {
        r.push("corpus", c.value.join(","));
    }
    if let Some(p) = &job.point {
        r.push("point", p.value.join(","));
    }
    if let Some(d) = &job.dim {
        r.push("dim", d.value);
    }
    r.push("max_level", job.max_level);
    r.push("seed", job.seed);
    r.push("oracle", job.oracle);
    if job.task == Task::Cdv {
        r.push("trials", job.trials);
    }
    let b = job.budgets;
    r.push("budget.groebner_steps", opt(b.groebner_steps));
    r.push("budget.groebner_degree", opt(b.groebner_degree));
    r.push("budget.count", opt(b.count));
}

fn parse_list<F: Field>(ring: &Arc<Ring<F>>, items: &Located<Vec<String>>, what: &str) -> Result<Vec<Polynomial<F>>, CliError> {
    items
        .value
        .iter()
        .map(|s| parse_poly(s, ring).map_err(|e| ParseError::at(items.line, format!("{what} `{s}`: {e}")).into()))
        .collect()
}

fn parse_point<F: Field>(ring: &Arc<Ring<F>>, job: &JobFile) -> Result<Vec<F::Elem>, CliError> {
    let n = ring.arity();
    let Some(p) = &job.point else {
        return Ok(vec![ring.field().zero(); n]);
    };
    if p.value.len() != n {
        return Err(ParseError::at(p.line, format!("point has {} coordinates, expected {n}", p.value.len())).into());
    }
    parse_list(ring, p, "coordinate")?
        .into_iter()
        .zip(&p.value)
        .map(|(c, s)| {
            if c.is_constant() {
                Ok(c.constant_term())
            } else {
                Err(ParseError::at(p.line, format!("coordinate `{s}` is not a constant")).into())
            }
        })
        .collect()
}

fn run_in<F: Field>(field: F, job: &JobFile, stem: &str) -> Result<Report, CliError> {
    let ring = Ring::new(field, job.vars.value.clone()).map_err(|e| ParseError::at(job.vars.line, e.to_string()))?;
    let cfg = dim_config(job);
    let mut r = Report::new(stem);
    echo(&mut r, job);
    if job.task == Task::Sweep {
        sweep(&mut r, &ring, job, &cfg)?;
        return Ok(r);
    }
    let gens_loc = job.generators.as_ref().expect("checked by the parser");
    let gens = parse_list(&ring, gens_loc, "generator")?;
    let point = parse_point(&ring, job)?;
    let ideal = Ideal::new(&ring, gens.clone()).map_err(compute)?;
    let n = ring.arity();
    let dim = match &job.dim {
        Some(d) => d.value,
        None => n.saturating_sub(ideal.nonzero_gens().count()),
    };
    let variety = match VarietyJob::new(ideal, dim, point) {
        Ok(v) => v,
        Err(MldError::Jet(JetError::PointNotOnVariety)) if matches!(job.task, Task::Jets | Task::Mld) => {
            empty_fiber(&mut r, job.max_level);
            return Ok(r);
        }
        Err(e) => {
            let line = match &e {
                MldError::Jet(JetError::PointNotOnVariety) | MldError::PointArity { .. } => job.point.as_ref().map(|p| p.line),
                MldError::DeclaredDim { .. } => job.dim.as_ref().map(|d| d.line),
                _ => None,
            };
            return Err(match line {
                Some(l) => ParseError::at(l, e.to_string()).into(),
                None => compute(e),
            });
        }
    };
    r.push("declared_dim", variety.dim());
    match job.task {
        Task::Jets => jets_task(&mut r, &variety, job.max_level, &cfg)?,
        Task::Mld => {
            let rep = mld_mj_estimate(&variety, job.max_level, &cfg).map_err(compute)?;
            push_mld(&mut r, "mld", &rep);
            let emb = emb_dim_bound_check(&variety);
            r.push("emb_dim", emb.emb);
            r.push("emb_dim.mj_canonical_possible", yes_no(emb.mj_canonical_possible));
            r.push("emb_dim.mj_log_canonical_possible", yes_no(emb.mj_lc_possible));
            r.push("jacobian_order", opt(jacobian_contact_order(&variety)));
            r.table = Some(s_table(&rep.s));
        }
        Task::Ioa => {
            let io = inversion_check(&variety, job.max_level, &cfg).map_err(compute)?;
            push_mld(&mut r, "lhs", &io.lhs);
            r.push("rhs.estimate", io.rhs_estimate);
            r.push("rhs.certificate", io.rhs_certificate);
            r.push("rhs.truncated_min", io.rhs.truncated_min);
            let terms: Vec<String> = io
                .rhs
                .terms
                .iter()
                .map(|t| format!("{}:{}", joined(&t.orders), t.value.map_or("empty".into(), |v| v.to_string())))
                .collect();
            r.push("rhs.terms", terms.join(" "));
            r.push("agree", yes_no(io.agree));
            r.table = Some(s_table(&io.lhs.s));
        }
        Task::Classify => classify_task(&mut r, &variety, &gens, &cfg)?,
        Task::Cdv => {
            let rep = cdv_hyperplane_test(&variety, job.trials, job.seed).map_err(compute)?;
            for (i, c) in rep.cuts.iter().enumerate() {
                r.push(format!("cdv.cut.{i}"), &c.label);
            }
            for (label, count) in &rep.counts {
                r.push(format!("cdv.count.{label}"), count);
            }
            r.push("cdv.majority", &rep.majority);
            r.push("cdv.compound", opt(rep.compound.as_ref()));
            r.push("cdv.retries", rep.retries);
            r.table = Some(Table {
                header: ["trial", "label", "multiplicity", "tau", "cubic_shape"].map(String::from).to_vec(),
                rows: rep
                    .cuts
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        vec![i.to_string(), c.label.to_string(), opt(c.multiplicity), opt(c.tau), opt(c.cubic_shape)]
                    })
                    .collect(),
            });
        }
        Task::Sweep => unreachable!("handled above"),
    }
    Ok(r)
}

fn empty_fiber(r: &mut Report, max_level: u32) {
    r.push("fiber", "empty");
    r.push("note", "the point is not on the variety");
    r.table = Some(Table {
        header: s_header(),
        rows: (0..=max_level)
            .map(|m| vec![m.to_string(), "-1".into(), "empty".into(), "none".into()])
            .collect(),
    });
}

fn s_header() -> Vec<String> {
    ["level", "fiber_dim", "s_value", "method"].map(String::from).to_vec()
}

fn s_table(s: &SSequence) -> Table {
    Table {
        header: s_header(),
        rows: s
            .levels
            .iter()
            .zip(&s.values)
            .map(|(l, v)| {
                let sv = if l.dim < 0 { "empty".to_string() } else { v.to_string() };
                vec![l.level.to_string(), l.dim.to_string(), sv, l.method.to_string()]
            })
            .collect(),
    }
}

fn push_mld(r: &mut Report, prefix: &str, rep: &MldReport) {
    let k = |s: &str| format!("{prefix}.{s}");
    r.push(k("estimate"), rep.estimate);
    r.push(k("certificate"), rep.certificate);
    if let Certificate::NegativeSValue { level } = rep.certificate {
        r.push(k("certificate_level"), level);
    }
    r.push(k("exact"), yes_no(rep.exact()));
    r.push(k("truncated_min"), rep.truncated_min);
    r.push(k("argmin"), rep.argmin);
    r.push(k("truncation"), rep.truncation);
    r.push(k("partial"), yes_no(!rep.s.is_complete()));
    r.push(k("canonical"), rep.canonical);
    r.push(k("log_canonical"), rep.log_canonical);
    r.push(k("smooth_point"), yes_no(rep.smooth_point));
    r.push(k("s_values"), joined(&rep.s.values));
    r.push(k("fiber_dims"), joined(&rep.s.dims()));
    for l in &rep.s.levels {
        if let Some(o) = &l.oracle {
            r.push(
                k(&format!("oracle.{}", l.level)),
                format!("count_dim={} agrees={} reliable={}", o.dim, yes_no(o.agrees), yes_no(o.reliable)),
            );
        }
    }
    if !rep.notes.is_empty() {
        r.push(k("notes"), rep.notes.join("; "));
    }
}

fn jets_task<F: Field>(r: &mut Report, v: &VarietyJob<F>, max_level: u32, cfg: &DimConfig) -> Result<(), CliError> {
    for m in 0..=max_level {
        let full = jets::jet_scheme_ideal(v.ideal(), m).map_err(compute)?;
        let fiber = jets::jet_fiber_ideal(v.ideal(), v.point(), m).map_err(compute)?;
        r.push(format!("jet_scheme.{m}.variables"), full.arity());
        r.push(format!("jet_scheme.{m}.equations"), full.ideal.nonzero_gens().count());
        r.push(format!("fiber.{m}.variables"), fiber.arity());
        r.push(format!("fiber.{m}.equations"), fiber.ideal.nonzero_gens().count());
        r.push(format!("fiber.{m}.weight_homogeneous"), yes_no(jets::weight_check(&fiber)));
    }
    let s = jetdisc::mld::s_sequence(v, max_level.max(1), cfg).map_err(compute)?;
    r.push("s_values", joined(&s.values));
    r.push("fiber_dims", joined(&s.dims()));
    r.push("partial", yes_no(!s.is_complete()));
    r.table = Some(s_table(&s));
    Ok(())
}

fn classify_task<F: Field>(r: &mut Report, v: &VarietyJob<F>, gens: &[Polynomial<F>], cfg: &DimConfig) -> Result<(), CliError> {
    let nonzero: Vec<_> = gens.iter().filter(|g| !g.is_zero()).collect();
    if v.ambient_arity() != 3 || nonzero.len() != 1 {
        return Err(compute("classify needs one equation in three variables"));
    }
    let f = algebra::translate(nonzero[0], v.point());
    let c = classify_surface_dp(&f).map_err(compute)?;
    r.push("label", &c.label);
    r.push("multiplicity", opt(c.multiplicity));
    r.push("tau", opt(c.tau));
    r.push("cubic_shape", opt(c.cubic_shape));
    r.push("series_truncation", opt(c.truncation));
    if let Some(why) = &c.reason {
        r.push("reason", why);
    }
    if v.dim() == 2 {
        let top = top_singularity_test(v, cfg).map_err(compute)?;
        r.push("top_singularity", yes_no(top.top));
        r.push("mld.estimate", top.mld.estimate);
        r.push("mld.certificate", top.mld.certificate);
        r.push("consistent", opt(top.consistent.map(yes_no)));
    }
    r.table = Some(Table {
        header: ["label", "multiplicity", "tau", "cubic_shape"].map(String::from).to_vec(),
        rows: vec![vec![c.label.to_string(), opt(c.multiplicity), opt(c.tau), opt(c.cubic_shape)]],
    });
    Ok(())
}

fn sweep<F: Field>(r: &mut Report, ring: &Arc<Ring<F>>, job: &JobFile, cfg: &DimConfig) -> Result<(), CliError> {
    let loc = job.corpus.as_ref().expect("checked by the parser");
    let polys = parse_list(ring, loc, "corpus entry")?;
    let corpus = polys
        .into_iter()
        .zip(&loc.value)
        .map(|(f, name)| {
            VarietyJob::hypersurface_at_origin(f)
                .map(|j| (name.clone(), j))
                .map_err(|e| ParseError::at(loc.line, format!("corpus entry `{name}`: {e}")).into())
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let table = conjecture_sweep(&corpus, job.max_level, cfg).map_err(compute)?;
    for g in &table.groups {
        let key = format!("group.d{}.delta{}", g.dim, opt(g.delta).replace("none", "-inf"));
        r.push(format!("{key}.jobs"), g.jobs);
        r.push(format!("{key}.max_first_level"), g.max_first_level);
    }
    r.table = Some(Table {
        header: ["job", "dim", "delta", "first_level", "s_values"].map(String::from).to_vec(),
        rows: table
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.name.clone(),
                    row.dim.to_string(),
                    row.delta.map_or("-inf".into(), |d| d.to_string()),
                    row.first_level.to_string(),
                    row.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                ]
            })
            .collect(),
    });
    Ok(())
}

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{self, linalg::Matrix, Polynomial, Ring};
use crate::dimension::DimConfig;
use crate::error::ClassifyError;
use crate::field::Field;
use crate::mld::{mld_mj_estimate, Certificate, MldReport, MldValue, VarietyJob, THRESHOLD_LEVEL};

use super::{classify_surface_dp, Label, SingularityClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopReport {
    pub top: bool,
    pub mld: MldReport,
    /// Classifier verdict for surface hypersurfaces.
    pub surface: Option<SingularityClass>,
    /// Whether the classifier and the mld side agree; `None` when not checked.
    pub consistent: Option<bool>,
}

/// Single nonzero generator of a hypersurface job, translated to the origin.
fn hypersurface_at_origin<F: Field>(job: &VarietyJob<F>) -> Option<Polynomial<F>> {
    let mut gens = job.ideal().nonzero_gens();
    let f = gens.next()?;
    if gens.next().is_some() || job.codim() != 1 {
        return None;
    }
    Some(algebra::translate(f, job.point()))
}

/// Certified `mld = d - 1` through the threshold level.
pub fn top_singularity_test<F: Field>(job: &VarietyJob<F>, cfg: &DimConfig) -> Result<TopReport, ClassifyError> {
    let mld = mld_mj_estimate(job, THRESHOLD_LEVEL, cfg)?;
    let d = job.dim() as i64;
    let top = mld.certificate == Certificate::ThresholdDMinus1 && mld.estimate == MldValue::int(d - 1);
    let surface = match (job.dim(), job.ambient_arity()) {
        (2, 3) => match hypersurface_at_origin(job) {
            Some(f) => Some(classify_surface_dp(&f)?),
            None => None,
        },
        _ => None,
    };
    let consistent = surface.as_ref().map(|c| c.label.is_top() == top);
    Ok(TopReport { top, mld, surface, consistent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdvReport {
    pub cuts: Vec<SingularityClass>,
    pub counts: BTreeMap<String, usize>,
    pub majority: Label,
    /// `cX` when every cut is the same Du Val type `X`.
    pub compound: Option<Label>,
    /// Hyperplanes rejected as degenerate before the trials were filled.
    pub retries: usize,
}

fn random_matrix<F: Field>(field: &F, n: usize, rng: &mut ChaCha8Rng) -> Matrix<F::Elem> {
    (0..n).map(|_| (0..n).map(|_| field.random(rng)).collect()).collect()
}

/// Restriction of `f(M y)` to `y_4 = 0`, as a polynomial in three variables.
fn cut<F: Field>(f: &Polynomial<F>, m: &Matrix<F::Elem>, plane: &std::sync::Arc<Ring<F>>) -> Result<Polynomial<F>, ClassifyError> {
    let g = algebra::linear_substitute(f, m)?;
    let terms: Vec<_> = g
        .terms()
        .iter()
        .filter(|(mono, _)| mono.exp(3) == 0)
        .map(|(mono, c)| (mono.project(&[0, 1, 2]), c.clone()))
        .collect();
    Ok(Polynomial::from_terms(plane, terms))
}

/// Classifies `trials` seeded general hyperplane sections of a 3-fold hypersurface point.
pub fn cdv_hyperplane_test<F: Field>(job: &VarietyJob<F>, trials: usize, seed: u64) -> Result<CdvReport, ClassifyError> {
    if job.dim() != 3 || job.ambient_arity() != 4 {
        return Err(ClassifyError::NotThreefold);
    }
    let f = hypersurface_at_origin(job).ok_or(ClassifyError::NotThreefold)?;
    let field = f.field().clone();
    let names: Vec<String> = f.ring().names()[..3].to_vec();
    let plane = Ring::new(field.clone(), names)?;
    let mult = algebra::multiplicity_at_origin(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = 20 * trials.max(1);
    let mut sections = Vec::with_capacity(trials);
    let mut attempts = 0;
    while sections.len() < trials {
        if attempts == cap {
            return Err(ClassifyError::DegenerateHyperplanes(attempts));
        }
        attempts += 1;
        let m = random_matrix(&field, 4, &mut rng);
        let c = match cut(&f, &m, &plane) {
            Ok(c) => c,
            Err(ClassifyError::Algebra(crate::error::AlgebraError::SingularMatrix)) => continue,
            Err(e) => return Err(e),
        };
        if algebra::multiplicity_at_origin(&c) != mult {
            continue;
        }
        sections.push(c);
    }
    let cuts = sections
        .par_iter()
        .map(classify_surface_dp)
        .collect::<Result<Vec<_>, _>>()?;
    let mut counts = BTreeMap::new();
    let mut by_label: BTreeMap<String, Label> = BTreeMap::new();
    for c in &cuts {
        let key = c.label.to_string();
        *counts.entry(key.clone()).or_insert(0) += 1;
        by_label.entry(key).or_insert_with(|| c.label.clone());
    }
    let best = counts.values().copied().max().unwrap_or(0);
    let majority = counts
        .iter()
        .find(|(_, &n)| n == best)
        .map(|(k, _)| by_label[k].clone())
        .unwrap_or(Label::Unclassified);
    let compound = (counts.len() == 1 && majority.is_du_val()).then(|| Label::Cdv(Box::new(majority.clone())));
    Ok(CdvReport {
        cuts,
        counts,
        majority,
        compound,
        retries: attempts - trials,
    })
}

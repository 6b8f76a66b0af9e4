//! Truncated Mather–Jacobian minimal log discrepancies.
//!
//! At a closed point `x` of a `d`-dimensional `X`, `s_m = (m+1)d - dim pi_m^{-1}(x)`
//! and the mld is the infimum of the `s_m` over all levels. Everything here
//! works with a finite truncation level and says whether a certificate makes
//! the truncated value exact.

use std::fmt;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{self, Ideal, Polynomial, Ring};
use crate::dimension::{self, DimConfig, DimMethod, GroebnerBudget, OracleCheck, TermOrder};
use crate::error::{DimError, JetError, MldError};
use crate::field::{Field, PrimeField};
use crate::jets::{self, ContactSpec};

/// Level at which the `d - 1` threshold becomes exact.
pub const THRESHOLD_LEVEL: u32 = 5;

/// An affine variety `V(I) ⊂ A^N` of declared dimension `d`, with a closed point on it.
#[derive(Clone, Debug)]
pub struct VarietyJob<F: Field> {
    ideal: Ideal<F>,
    dim: usize,
    point: Vec<F::Elem>,
}

impl<F: Field> VarietyJob<F> {
    pub fn new(ideal: Ideal<F>, dim: usize, point: Vec<F::Elem>) -> Result<Self, MldError> {
        let n = ideal.arity();
        if point.len() != n {
            return Err(MldError::PointArity { expected: n, got: point.len() });
        }
        if dim >= n {
            return Err(MldError::DeclaredDim { d: dim, n });
        }
        if ideal.gens().iter().any(|g| !ideal.ring().field().is_zero(&g.eval(&point))) {
            return Err(JetError::PointNotOnVariety.into());
        }
        Ok(VarietyJob { ideal, dim, point })
    }

    /// Hypersurface job at the origin.
    pub fn hypersurface_at_origin(f: Polynomial<F>) -> Result<Self, MldError> {
        let ring = f.ring().clone();
        let n = ring.arity();
        let zero = vec![ring.field().zero(); n];
        VarietyJob::new(Ideal::new(&ring, vec![f])?, n.saturating_sub(1), zero)
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self) -> &[F::Elem] {
        &self.point
    }

    pub fn ambient_arity(&self) -> usize {
        self.ideal.arity()
    }

    pub fn codim(&self) -> usize {
        self.ambient_arity() - self.dim
    }

    /// Jacobian rank at the point equals the codimension.
    pub fn is_smooth_point(&self) -> bool {
        algebra::jacobian_rank_at(&self.ideal, &self.point) == self.codim()
    }

    /// The same job with coefficients moved into another field.
    pub fn convert<G: Field>(&self, ring: &std::sync::Arc<Ring<G>>) -> Result<VarietyJob<G>, MldError> {
        let ideal = self.ideal.convert(ring)?;
        let point = self
            .point
            .iter()
            .map(|c| {
                crate::field::convert(self.ideal.ring().field(), ring.field(), c).ok_or_else(|| {
                    crate::error::AlgebraError::CoefficientNotReducible(format!("{c:?}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        VarietyJob::new(ideal, self.dim, point)
    }
}

/// Fiber dimension at one level, with provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDim {
    pub level: u32,
    pub arity: usize,
    pub dim: i64,
    pub method: DimMethod,
    pub oracle: Option<OracleCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSequence {
    /// `s_0, ..., s_M` for the levels that were computed.
    pub values: Vec<i64>,
    pub levels: Vec<LevelDim>,
    pub requested: u32,
    pub declared_dim: usize,
    /// Set when the dimension engine ran out of budget; `values` stops there.
    pub budget_note: Option<String>,
}

impl SSequence {
    pub fn dims(&self) -> Vec<i64> {
        self.levels.iter().map(|l| l.dim).collect()
    }

    /// Highest level actually computed.
    pub fn truncation(&self) -> u32 {
        self.values.len().saturating_sub(1) as u32
    }

    pub fn is_complete(&self) -> bool {
        self.budget_note.is_none()
    }

    pub fn min(&self) -> Option<i64> {
        self.values.iter().copied().min()
    }

    /// First level attaining the minimum.
    pub fn argmin(&self) -> Option<u32> {
        let m = self.min()?;
        self.values.iter().position(|&v| v == m).map(|p| p as u32)
    }

    pub fn first_negative(&self) -> Option<u32> {
        self.values.iter().position(|&v| v < 0).map(|p| p as u32)
    }
}

/// `s_m` for `m = 0..=max_level`. Levels are computed in parallel.
pub fn s_sequence<F: Field>(job: &VarietyJob<F>, max_level: u32, cfg: &DimConfig) -> Result<SSequence, MldError> {
    if max_level < 1 {
        return Err(MldError::Level { min: 1, got: max_level });
    }
    let results: Vec<Result<LevelDim, MldError>> = (0..=max_level)
        .into_par_iter()
        .map(|m| {
            let sys = jets::jet_fiber_ideal(job.ideal(), job.point(), m)?;
            let r = dimension::dimension(&sys.ideal, cfg)?;
            Ok(LevelDim {
                level: m,
                arity: sys.arity(),
                dim: r.dim,
                method: r.method,
                oracle: r.oracle,
            })
        })
        .collect();
    let d = job.dim() as i64;
    let mut levels = Vec::new();
    let mut note = None;
    for r in results {
        match r {
            Ok(l) => levels.push(l),
            Err(MldError::Dim(e @ (DimError::GroebnerBudget(_) | DimError::CountBudget { .. }))) => {
                note = Some(format!("level {}: {e}", levels.len()));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let values = levels
        .iter()
        .map(|l| (l.level as i64 + 1) * d - l.dim)
        .collect();
    Ok(SSequence {
        values,
        levels,
        requested: max_level,
        declared_dim: job.dim(),
        budget_note: note,
    })
}

/// `-inf` or a rational number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MldValue {
    NegInfinity,
    Value(Ratio<i64>),
}

impl MldValue {
    pub fn int(v: i64) -> Self {
        MldValue::Value(Ratio::from_integer(v))
    }
}

impl fmt::Display for MldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MldValue::NegInfinity => write!(f, "-inf"),
            MldValue::Value(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            MldValue::Value(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Some truncated value is negative, which forces `-inf`.
    NegativeSValue { level: u32 },
    /// All values through level 5 are at least `d - 1` and `d - 1` is attained.
    ThresholdDMinus1,
    /// The point is smooth and the minimum is `d`.
    SmoothPoint,
    /// No certificate: the value is an upper bound.
    Truncated,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::NegativeSValue { .. } => "negative-s-value",
            Certificate::ThresholdDMinus1 => "threshold-d-minus-1",
            Certificate::SmoothPoint => "smooth-point",
            Certificate::Truncated => "truncated",
        }
    }

    pub fn is_exact(&self) -> bool {
        *self != Certificate::Truncated
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Yes => "yes",
            Flag::No => "no",
            Flag::Unknown => "unknown-at-truncation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldReport {
    pub estimate: MldValue,
    /// Minimum of the computed values (meaningful even when the estimate is `-inf`).
    pub truncated_min: i64,
    pub argmin: u32,
    pub truncation: u32,
    pub certificate: Certificate,
    pub canonical: Flag,
    pub log_canonical: Flag,
    pub smooth_point: bool,
    pub s: SSequence,
    pub notes: Vec<String>,
}

impl MldReport {
    pub fn exact(&self) -> bool {
        self.certificate.is_exact()
    }
}

/// Chooses a certificate for a sequence of truncated values.
///
/// `values[k]` must be the value attached to s-level `k + offset`; the
/// ambient-pair side of the inversion check uses `offset = -1` so that its
/// level-0 entry (the unconstrained term) is skipped by the threshold test.
fn certify(values: &[i64], offset: i64, d: usize, smooth: bool, notes: &mut Vec<String>) -> (MldValue, Certificate) {
    let min = values.iter().copied().min().expect("nonempty");
    let d = d as i64;
    if let Some(pos) = values.iter().position(|&v| v < 0) {
        if d >= 2 {
            let level = (pos as i64 + offset).max(0) as u32;
            return (MldValue::NegInfinity, Certificate::NegativeSValue { level });
        }
        notes.push("negative value on a curve: the -inf convention needs dimension at least 2; reporting the truncated value".into());
        return (MldValue::int(min), Certificate::Truncated);
    }
    let through = |lvl: i64| -> Option<Vec<i64>> {
        let hi = lvl - offset;
        if hi < 0 || hi as usize >= values.len() {
            return None;
        }
        let lo = (-offset).max(0) as usize;
        Some(values[lo..=hi as usize].to_vec())
    };
    if min == d - 1 {
        if let Some(window) = through(THRESHOLD_LEVEL as i64) {
            if window.iter().all(|&v| v >= d - 1) {
                return (MldValue::int(min), Certificate::ThresholdDMinus1);
            }
        }
    }
    if smooth && min == d {
        return (MldValue::int(min), Certificate::SmoothPoint);
    }
    (MldValue::int(min), Certificate::Truncated)
}

fn flags(estimate: MldValue, exact: bool) -> (Flag, Flag) {
    let judge = |threshold: i64| match estimate {
        MldValue::NegInfinity => Flag::No,
        MldValue::Value(v) if v < Ratio::from_integer(threshold) => Flag::No,
        MldValue::Value(_) if exact => Flag::Yes,
        MldValue::Value(_) => Flag::Unknown,
    };
    (judge(1), judge(0))
}

/// Truncated mld estimate with certificates and canonicity flags.
pub fn mld_mj_estimate<F: Field>(job: &VarietyJob<F>, max_level: u32, cfg: &DimConfig) -> Result<MldReport, MldError> {
    let s = s_sequence(job, max_level, cfg)?;
    let smooth = job.is_smooth_point();
    let mut notes = Vec::new();
    if let Some(n) = &s.budget_note {
        notes.push(format!("sequence stopped early: {n}"));
    }
    let (estimate, certificate) = certify(&s.values, 0, job.dim(), smooth, &mut notes);
    if certificate == Certificate::Truncated && estimate != MldValue::NegInfinity {
        notes.push("upper bound at this truncation; exactness is not claimed".into());
    }
    let (canonical, log_canonical) = flags(estimate, certificate.is_exact());
    Ok(MldReport {
        estimate,
        truncated_min: s.min().expect("level 0 always computed"),
        argmin: s.argmin().unwrap_or(0),
        truncation: s.truncation(),
        certificate,
        canonical,
        log_canonical,
        smooth_point: smooth,
        s,
        notes,
    })
}

/// A formal product of ideals with non-negative rational exponents.
#[derive(Clone, Debug)]
pub struct PairSpec<F: Field> {
    pub clauses: Vec<(Ideal<F>, Ratio<i64>)>,
}

/// Where the minimal log discrepancy is measured.
#[derive(Clone, Debug)]
pub enum Center<F: Field> {
    Point(Vec<F::Elem>),
    Subvariety(Ideal<F>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTerm {
    pub orders: Vec<u32>,
    pub level: u32,
    /// `None` when the contact locus is empty at this level.
    pub codim: Option<i64>,
    pub value: Option<Ratio<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientPairReport {
    pub value: MldValue,
    pub truncated_min: Ratio<i64>,
    pub certificate: Certificate,
    pub terms: Vec<PairTerm>,
}

/// Pair mld on affine space: the minimum over order tuples `m_i <= bounds[i]` of
/// `codim(Cont^{>=m_1}(a_1) ∩ ... ∩ center) - sum m_i e_i`, with every locus taken
/// at the smallest level that can carry its orders.
pub fn mld_ambient_pair<F: Field>(
    base: &std::sync::Arc<Ring<F>>,
    pair: &PairSpec<F>,
    center: &Center<F>,
    bounds: &[u32],
    cfg: &DimConfig,
) -> Result<AmbientPairReport, MldError> {
    if pair.clauses.is_empty() {
        return Err(MldError::EmptyPair);
    }
    if pair.clauses.iter().any(|(_, e)| *e < Ratio::from_integer(0)) {
        return Err(MldError::NegativeExponent);
    }
    if bounds.len() != pair.clauses.len() {
        return Err(crate::error::AlgebraError::Arity { expected: pair.clauses.len(), got: bounds.len() }.into());
    }
    let n = base.arity();
    let mut tuples: Vec<Vec<u32>> = vec![Vec::new()];
    for &b in bounds {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..=b).map(move |m| {
                    let mut t = t.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    let terms: Vec<Result<PairTerm, MldError>> = tuples
        .into_par_iter()
        .map(|orders| {
            let level = orders.iter().copied().max().unwrap_or(0).max(1) - 1;
            let mut clauses: Vec<(Ideal<F>, u32)> = pair
                .clauses
                .iter()
                .zip(&orders)
                .filter(|(_, &m)| m > 0)
                .map(|((i, _), &m)| (i.clone(), m))
                .collect();
            let point = match center {
                Center::Point(p) => Some(p.as_slice()),
                Center::Subvariety(w) => {
                    clauses.push((w.clone(), 1));
                    None
                }
            };
            let sys = jets::contact_ideal(&ContactSpec { clauses, level }, base, point)?;
            let r = dimension::dimension(&sys.ideal, cfg)?;
            let weight: Ratio<i64> = pair
                .clauses
                .iter()
                .zip(&orders)
                .map(|((_, e), &m)| e * Ratio::from_integer(m as i64))
                .sum();
            let (codim, value) = if r.is_empty() {
                (None, None)
            } else {
                let c = (n as i64) * (level as i64 + 1) - r.dim;
                (Some(c), Some(Ratio::from_integer(c) - weight))
            };
            Ok(PairTerm { orders, level, codim, value })
        })
        .collect();
    let terms = terms.into_iter().collect::<Result<Vec<_>, _>>()?;
    let min = terms
        .iter()
        .filter_map(|t| t.value)
        .min()
        .expect("the all-zero tuple is never empty");
    let negative = terms.iter().find(|t| t.value.is_some_and(|v| v < Ratio::from_integer(0)));
    let (value, certificate) = match negative {
        Some(t) if n >= 2 => (
            MldValue::NegInfinity,
            Certificate::NegativeSValue { level: t.level },
        ),
        _ => (MldValue::Value(min), Certificate::Truncated),
    };
    Ok(AmbientPairReport { value, truncated_min: min, certificate, terms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionReport {
    pub lhs: MldReport,
    pub rhs: AmbientPairReport,
    pub rhs_estimate: MldValue,
    pub rhs_certificate: Certificate,
    pub agree: bool,
}

/// Computes the mld both through jet fibers and through the ambient pair
/// `(A, I_X^c)` with `c` the codimension, and compares them.
pub fn inversion_check<F: Field>(job: &VarietyJob<F>, max_level: u32, cfg: &DimConfig) -> Result<InversionReport, MldError> {
    let lhs = mld_mj_estimate(job, max_level, cfg)?;
    let pair = PairSpec {
        clauses: vec![(job.ideal().clone(), Ratio::from_integer(job.codim() as i64))],
    };
    let rhs = mld_ambient_pair(
        job.ideal().ring(),
        &pair,
        &Center::Point(job.point().to_vec()),
        &[max_level + 1],
        cfg,
    )?;
    // terms[k] is the contact order k; order k+1 corresponds to s-level k.
    let t: Vec<i64> = rhs
        .terms
        .iter()
        .map(|term| {
            term.value
                .map(|v| v.to_integer())
                .unwrap_or(i64::MAX)
        })
        .collect();
    let mut notes = Vec::new();
    let (rhs_estimate, rhs_certificate) = certify(&t, -1, job.dim(), lhs.smooth_point, &mut notes);
    let agree = match (lhs.certificate.is_exact(), rhs_certificate.is_exact()) {
        (true, true) => lhs.estimate == rhs_estimate,
        (true, false) => lhs.estimate <= rhs_estimate,
        (false, true) => rhs_estimate <= lhs.estimate,
        (false, false) => lhs.estimate == rhs_estimate,
    };
    Ok(InversionReport { lhs, rhs, rhs_estimate, rhs_certificate, agree })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub emb: usize,
    pub mj_canonical_possible: bool,
    pub mj_lc_possible: bool,
}

/// Embedding dimension at the point and the necessary bounds `emb <= 2d - 1` and `emb <= 2d`.
pub fn emb_dim_bound_check<F: Field>(job: &VarietyJob<F>) -> EmbeddingCheck {
    let rank = algebra::jacobian_rank_at(job.ideal(), job.point());
    let emb = job.ambient_arity() - rank;
    let d = job.dim();
    EmbeddingCheck {
        emb,
        mj_canonical_possible: emb + 1 <= 2 * d,
        mj_lc_possible: emb <= 2 * d,
    }
}

/// Order of vanishing of the Jacobian ideal at the point.
pub fn jacobian_contact_order<F: Field>(job: &VarietyJob<F>) -> Option<u32> {
    let minors = algebra::jacobian_minors(job.ideal(), job.codim()).ok()?;
    minors
        .gens()
        .iter()
        .filter_map(|g| algebra::multiplicity_at_origin(&algebra::translate(g, job.point())))
        .min()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSample {
    /// Coordinates as symmetric residues mod the sampling prime.
    pub point: Vec<i64>,
    pub s: SSequence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericPointReport {
    pub prime: u32,
    pub subvariety_dim: i64,
    pub samples: Vec<PointSample>,
    pub disagreement: bool,
    /// `min s - dim V` for each sample: the value at the generic point of `V`.
    pub generic_values: Vec<i64>,
}

const SAMPLE_RETRIES: usize = 64;

/// Samples two seeded random smooth points of `V ⊂ X` over `F_32003` and computes
/// the s-sequence at each.
pub fn generic_point_s_sequence<F: Field>(
    job: &VarietyJob<F>,
    v: &Ideal<F>,
    max_level: u32,
    seed: u64,
    cfg: &DimConfig,
) -> Result<GenericPointReport, MldError> {
    let p = cfg.surrogate_prime;
    let fp = PrimeField::new(p)?;
    let ring = Ring::new(fp, job.ideal().ring().names().to_vec())?;
    let x = job.ideal().convert(&ring)?;
    let vv = v.convert(&ring)?;
    let gb = dimension::groebner_basis(&vv, TermOrder::Grevlex, cfg.groebner)?;
    let dim_v = dimension::dim_from_leading_monomials(ring.arity(), gb.leading_monomials());
    if dim_v < 0 {
        return Err(MldError::Sampling("subvariety is empty".into()));
    }
    let indep = dimension::independent_set(ring.arity(), gb.leading_monomials())
        .ok_or_else(|| MldError::Sampling("no independent set".into()))?;
    let mut samples = Vec::new();
    for k in 0..2u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k));
        let point = sample_point(&x, &vv, dim_v as usize, &indep, &mut rng, cfg.groebner)?;
        let sjob = VarietyJob::new(x.clone(), job.dim(), point.clone())?;
        let s = s_sequence(&sjob, max_level, cfg)?;
        let coords = point.iter().map(|c| fp.to_rational(c).to_integer().try_into().unwrap_or(0)).collect();
        samples.push(PointSample { point: coords, s });
    }
    let disagreement = samples[0].s.values != samples[1].s.values;
    let generic_values = samples
        .iter()
        .map(|s| s.s.min().unwrap_or(0) - dim_v)
        .collect();
    Ok(GenericPointReport { prime: p, subvariety_dim: dim_v, samples, disagreement, generic_values })
}

fn sample_point<R: rand::Rng>(
    x: &Ideal<PrimeField>,
    v: &Ideal<PrimeField>,
    dim_v: usize,
    indep: &[usize],
    rng: &mut R,
    budget: GroebnerBudget,
) -> Result<Vec<u32>, MldError> {
    let ring = v.ring().clone();
    let fp = *ring.field();
    let n = ring.arity();
    for _ in 0..SAMPLE_RETRIES {
        let mut assigned: Vec<Option<u32>> = vec![None; n];
        for &i in indep {
            assigned[i] = Some(fp.random(rng));
        }
        let images: Vec<Polynomial<PrimeField>> = (0..n)
            .map(|i| match assigned[i] {
                Some(c) => Polynomial::constant(&ring, c),
                None => Polynomial::var(&ring, i),
            })
            .collect();
        let gens: Vec<Polynomial<PrimeField>> = v.gens().iter().map(|g| g.substitute(&ring, &images)).collect();
        let sliced = Ideal::new(&ring, gens)?;
        let lex = match dimension::groebner_basis(&sliced, TermOrder::Lex, budget) {
            Ok(gb) => gb,
            Err(_) => continue,
        };
        if lex.is_unit() {
            continue;
        }
        if !solve_triangular(lex.basis(), &mut assigned, rng) {
            continue;
        }
        let point: Vec<u32> = assigned.iter().map(|c| c.expect("assigned")).collect();
        let on_v = v.gens().iter().all(|g| g.eval(&point) == 0);
        let on_x = x.gens().iter().all(|g| g.eval(&point) == 0);
        if !on_v || !on_x {
            continue;
        }
        let smooth = algebra::jacobian_rank_at(v, &point) == n - dim_v;
        if smooth {
            return Ok(point);
        }
    }
    Err(MldError::Sampling(format!("no smooth point of the subvariety after {SAMPLE_RETRIES} attempts")))
}

/// Back-substitution through a lex basis, from the last variable to the first.
fn solve_triangular<R: rand::Rng>(basis: &[Polynomial<PrimeField>], assigned: &mut [Option<u32>], rng: &mut R) -> bool {
    let Some(g0) = basis.first() else {
        for a in assigned.iter_mut() {
            if a.is_none() {
                *a = Some(0);
            }
        }
        return true;
    };
    let ring = g0.ring().clone();
    let fp = *ring.field();
    let p = fp.modulus();
    let n = ring.arity();
    for var in (0..n).rev() {
        if assigned[var].is_some() {
            continue;
        }
        let images: Vec<Polynomial<PrimeField>> = (0..n)
            .map(|i| match assigned[i] {
                Some(c) => Polynomial::constant(&ring, c),
                None => Polynomial::var(&ring, i),
            })
            .collect();
        let mut uni: Vec<Vec<u32>> = Vec::new();
        for g in basis {
            let vars = g.variables();
            if !vars.contains(&var) || vars.iter().any(|&u| u < var && assigned[u].is_none()) {
                continue;
            }
            let h = g.substitute(&ring, &images);
            if h.variables().iter().any(|&u| u != var) {
                continue;
            }
            let mut dense = vec![0u32; h.total_degree().unwrap_or(0) as usize + 1];
            for (m, c) in h.terms() {
                dense[m.exp(var) as usize] = *c;
            }
            uni.push(dense);
        }
        let g = uni
            .iter()
            .fold(Vec::new(), |acc, u| algebra::univariate::gcd(&fp, &acc, u));
        let value = if uni.is_empty() || g.is_empty() {
            fp.random(rng)
        } else {
            let roots = algebra::univariate::roots_mod_p(&fp, p, &g);
            if roots.is_empty() {
                return false;
            }
            roots[rand::Rng::gen_range(rng, 0..roots.len())]
        };
        assigned[var] = Some(value);
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub name: String,
    pub dim: usize,
    pub values: Vec<i64>,
    /// `None` for `-inf`.
    pub delta: Option<i64>,
    /// First level attaining the minimum, or the first negative level.
    pub first_level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepGroup {
    pub dim: usize,
    pub delta: Option<i64>,
    pub jobs: usize,
    pub max_first_level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub groups: Vec<SweepGroup>,
}

/// For each job, the first level at which the truncated sequence reaches its
/// minimum (or turns negative), aggregated per `(d, delta)`.
pub fn conjecture_sweep<F: Field>(
    corpus: &[(String, VarietyJob<F>)],
    max_level: u32,
    cfg: &DimConfig,
) -> Result<SweepTable, MldError> {
    let rows: Vec<Result<SweepRow, MldError>> = corpus
        .par_iter()
        .map(|(name, job)| {
            let s = s_sequence(job, max_level, cfg)?;
            let (delta, first_level) = match s.first_negative() {
                Some(l) if job.dim() >= 2 => (None, l),
                _ => (s.min(), s.argmin().unwrap_or(0)),
            };
            Ok(SweepRow {
                name: name.clone(),
                dim: job.dim(),
                values: s.values,
                delta,
                first_level,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut groups: Vec<SweepGroup> = Vec::new();
    for r in &rows {
        match groups.iter_mut().find(|g| g.dim == r.dim && g.delta == r.delta) {
            Some(g) => {
                g.jobs += 1;
                g.max_first_level = g.max_first_level.max(r.first_level);
            }
            None => groups.push(SweepGroup {
                dim: r.dim,
                delta: r.delta,
                jobs: 1,
                max_first_level: r.first_level,
            }),
        }
    }
    groups.sort_by_key(|g| (g.dim, g.delta.map_or(i64::MIN, |d| d)));
    Ok(SweepTable { rows, groups })
}

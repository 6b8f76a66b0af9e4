//! Exhaustive point counting over prime fields, and dimension estimation from counts.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{Ideal, Ring};
use crate::error::DimError;
use crate::field::{Field, PrimeField};

/// Default cap on enumeration nodes visited per count.
pub const DEFAULT_COUNT_BUDGET: u64 = 10_000_000;

/// Generator compiled for fast evaluation: terms as `(coeff, [(position, exponent)])`.
struct Compiled {
    terms: Vec<(u64, Vec<(usize, u16)>)>,
}

impl Compiled {
    fn eval(&self, vals: &[u64], q: u64) -> u64 {
        let mut acc = 0u64;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(pos, e) in vars {
                t = t * pow_mod(vals[pos], e as u64, q) % q;
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % q;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// Number of `F_q`-points of `V(I)`, by enumeration with early pruning:
/// a generator is tested as soon as all of its variables are assigned, and
/// variables occurring in no generator contribute a factor `q` each.
/// `budget` caps the number of partial assignments visited.
pub fn count_points<F: Field>(ideal: &Ideal<F>, q: u32, budget: u64) -> Result<BigUint, DimError> {
    let fq = PrimeField::new(q)?;
    let ring = Ring::new(fq, ideal.ring().names().to_vec())?;
    let ideal = ideal.convert(&ring)?;
    let gens: Vec<_> = ideal.nonzero_gens().cloned().collect();
    let n = ring.arity();
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(BigUint::zero());
    }
    let supports: Vec<Vec<usize>> = gens.iter().map(|g| g.variables()).collect();
    let mut used = vec![false; n];
    for s in &supports {
        for &v in s {
            used[v] = true;
        }
    }
    let free = used.iter().filter(|u| !**u).count();

    // Greedy order: complete as many generators as early as possible.
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; n];
    while order.len() < n - free {
        let best = (0..n)
            .filter(|&v| used[v] && !placed[v])
            .max_by_key(|&v| {
                let completes = supports
                    .iter()
                    .filter(|s| s.contains(&v) && s.iter().all(|&u| u == v || placed[u]))
                    .count();
                let touches = supports.iter().filter(|s| s.contains(&v)).count();
                (completes, touches, std::cmp::Reverse(v))
            })
            .expect("unplaced variable");
        placed[best] = true;
        order.push(best);
    }
    let mut pos_of = vec![usize::MAX; n];
    for (p, &v) in order.iter().enumerate() {
        pos_of[v] = p;
    }
    let depth = order.len();
    let mut checks: Vec<Vec<Compiled>> = (0..depth).map(|_| Vec::new()).collect();
    for (g, s) in gens.iter().zip(&supports) {
        let level = s.iter().map(|&v| pos_of[v]).max().expect("nonconstant");
        let terms = g
            .terms()
            .iter()
            .map(|(m, c)| {
                let vars = m
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| (pos_of[v], e))
                    .collect();
                (*c as u64, vars)
            })
            .collect();
        checks[level].push(Compiled { terms });
    }

    let visited = AtomicU64::new(0);
    let q64 = q as u64;
    let core: u128 = if depth == 0 {
        1
    } else {
        (0..q64)
            .into_par_iter()
            .map(|v0| {
                let mut vals = vec![0u64; depth];
                vals[0] = v0;
                dfs(&checks, &mut vals, 0, q64, &visited, budget)
            })
            .try_reduce(|| 0u128, |a, b| Ok(a + b))
            .map_err(|_| DimError::CountBudget {
                size: visited.load(Ordering::Relaxed) as u128,
                budget,
            })?
    };
    Ok(BigUint::from(core) * BigUint::from(q).pow(free as u32))
}

struct Exceeded;

fn dfs(
    checks: &[Vec<Compiled>],
    vals: &mut Vec<u64>,
    k: usize,
    q: u64,
    visited: &AtomicU64,
    budget: u64,
) -> Result<u128, Exceeded> {
    if visited.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(Exceeded);
    }
    if checks[k].iter().any(|c| c.eval(vals, q) != 0) {
        return Ok(0);
    }
    if k + 1 == vals.len() {
        return Ok(1);
    }
    let mut total = 0u128;
    for v in 0..q {
        vals[k + 1] = v;
        total += dfs(checks, vals, k + 1, q, visited, budget)?;
    }
    Ok(total)
}

/// Dimension read off point counts `N_q` over several primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountDim {
    pub dim: i64,
    /// False when some consecutive pair of primes gives a log-log slope more
    /// than 0.2 away from `dim`.
    pub reliable: bool,
}

/// Rounded log-log slope of `N_q` against `q`, computed with exact integer
/// comparisons between the smallest and largest prime.
pub fn dim_from_counts(counts: &[(u32, BigUint)]) -> Result<CountDim, DimError> {
    let mut c: Vec<(u32, BigUint)> = counts.to_vec();
    c.sort_by_key(|(q, _)| *q);
    c.dedup_by_key(|(q, _)| *q);
    if c.len() < 3 {
        return Err(DimError::TooFewPrimes(c.len()));
    }
    let zeros = c.iter().filter(|(_, n)| n.is_zero()).count();
    if zeros == c.len() {
        return Ok(CountDim { dim: -1, reliable: true });
    }
    if zeros > 0 {
        return Err(DimError::InconsistentCounts(
            "empty over some primes and nonempty over others".into(),
        ));
    }
    let (qs, ns) = (&c[0].0, &c[0].1);
    let (qb, nb) = (&c[c.len() - 1].0, &c[c.len() - 1].1);
    // Largest e with (qb/qs)^(2e-1) <= (nb/ns)^2.
    let mut e: i64 = 0;
    let mut reliable = ratio_cmp(nb, ns, 2, *qb, *qs, -1) != std::cmp::Ordering::Less;
    while ratio_cmp(nb, ns, 2, *qb, *qs, 2 * (e + 1) - 1) != std::cmp::Ordering::Less {
        e += 1;
        if e > 4096 {
            return Err(DimError::InconsistentCounts("slope out of range".into()));
        }
    }
    for w in c.windows(2) {
        let (qa, na) = (&w[0].0, &w[0].1);
        let (qb, nb) = (&w[1].0, &w[1].1);
        let lo = ratio_cmp(nb, na, 5, *qb, *qa, 5 * e - 1);
        let hi = ratio_cmp(nb, na, 5, *qb, *qa, 5 * e + 1);
        if lo == std::cmp::Ordering::Less || hi == std::cmp::Ordering::Greater {
            reliable = false;
        }
    }
    Ok(CountDim { dim: e, reliable })
}

/// Compares `(nb/ns)^a` with `(qb/qs)^k` exactly.
fn ratio_cmp(nb: &BigUint, ns: &BigUint, a: u32, qb: u32, qs: u32, k: i64) -> std::cmp::Ordering {
    let lhs_n = BigInt::from(nb.pow(a));
    let lhs_d = BigInt::from(ns.pow(a));
    let (num, den) = if k >= 0 {
        (BigInt::from(qb).pow(k as u32), BigInt::from(qs).pow(k as u32))
    } else {
        (BigInt::from(qs).pow((-k) as u32), BigInt::from(qb).pow((-k) as u32))
    };
    (lhs_n * den).cmp(&(num * lhs_d))
}

/// Point counts over each prime whose reduction of the ideal is defined.
pub fn counts_over<F: Field>(
    ideal: &Ideal<F>,
    primes: &[u32],
    budget: u64,
) -> Result<Vec<(u32, BigUint)>, DimError> {
    let mut out = Vec::new();
    for &q in primes {
        match count_points(ideal, q, budget) {
            Ok(n) => out.push((q, n)),
            Err(DimError::Algebra(crate::error::AlgebraError::CoefficientNotReducible(_))) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

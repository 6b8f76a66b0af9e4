use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::algebra::{Ideal, Polynomial, Ring};
use crate::dimension::count::{counts_over, dim_from_counts, DEFAULT_COUNT_BUDGET};
use crate::dimension::groebner::{groebner_basis, GroebnerBudget, TermOrder};
use crate::dimension::krull::dim_from_leading_monomials;
use crate::error::DimError;
use crate::field::{Field, FieldSpec, PrimeField, SURROGATE_PRIME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMode {
    Groebner,
    Count,
    Both,
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMode::Groebner => "groebner",
            OracleMode::Count => "count",
            OracleMode::Both => "both",
        })
    }
}

impl std::str::FromStr for OracleMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "groebner" => Ok(OracleMode::Groebner),
            "count" => Ok(OracleMode::Count),
            "both" => Ok(OracleMode::Both),
            other => Err(format!("unknown oracle `{other}` (expected groebner, count or both)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimConfig {
    pub groebner: GroebnerBudget,
    pub count_budget: u64,
    pub oracle: OracleMode,
    pub primes: Vec<u32>,
    /// In `Both` mode, systems with at most this many variables are also counted.
    pub count_arity_limit: usize,
    pub surrogate_prime: u32,
}

impl Default for DimConfig {
    fn default() -> Self {
        DimConfig {
            groebner: GroebnerBudget::default(),
            count_budget: DEFAULT_COUNT_BUDGET,
            oracle: OracleMode::Both,
            primes: vec![5, 7, 11, 13],
            count_arity_limit: 8,
            surrogate_prime: SURROGATE_PRIME,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimMethod {
    Groebner(FieldSpec),
    PointCount,
}

impl fmt::Display for DimMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimMethod::Groebner(spec) => write!(f, "groebner/{spec}"),
            DimMethod::PointCount => write!(f, "point-count"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub counts: Vec<(u32, BigUint)>,
    pub dim: i64,
    pub reliable: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    /// Dimension of `V(I)`; `-1` for the empty set.
    pub dim: i64,
    /// `arity - dim`; the empty set is reported with codimension `arity + 1`.
    pub codim: i64,
    pub arity: usize,
    pub method: DimMethod,
    pub oracle: Option<OracleCheck>,
    /// Set when the surrogate prime disagreed with the counts and `Q` was used.
    pub recomputed_exactly: bool,
}

impl DimResult {
    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }
}

/// A system after removing free variables and eliminating linear pivots.
struct Reduced<F: Field> {
    blocks: Vec<Ideal<F>>,
    free: usize,
    empty: bool,
}

/// Finds `g = c*v + r` with `v` absent from `r`.
fn linear_pivot<F: Field>(g: &Polynomial<F>) -> Option<(usize, F::Elem)> {
    let n = g.ring().arity();
    let mut best: Option<(usize, F::Elem)> = None;
    for v in 0..n {
        let mut lin = None;
        let mut ok = true;
        for (m, c) in g.terms() {
            if m.exp(v) == 0 {
                continue;
            }
            if m.degree() == 1 && lin.is_none() {
                lin = Some(c.clone());
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(c) = lin {
                best = Some((v, c));
                break;
            }
        }
    }
    best
}

fn reduce_system<F: Field>(ideal: &Ideal<F>) -> Result<Reduced<F>, DimError> {
    let ring = ideal.ring().clone();
    let field = ring.field().clone();
    let n = ring.arity();
    let mut gens: Vec<Polynomial<F>> = ideal.nonzero_gens().cloned().collect();
    let mut eliminated = vec![false; n];
    loop {
        if gens.iter().any(|g| g.is_constant()) {
            return Ok(Reduced {
                blocks: Vec::new(),
                free: 0,
                empty: true,
            });
        }
        let pick = gens
            .iter()
            .enumerate()
            .filter_map(|(k, g)| linear_pivot(g).map(|(v, c)| (k, v, c, g.len())))
            .min_by_key(|(k, _, _, len)| (*len, *k));
        let Some((k, v, c, _)) = pick else { break };
        let g = gens.remove(k);
        let inv = field.inv(&c).expect("nonzero");
        let var = Polynomial::var(&ring, v);
        let rest = &g - &var.scale(&c);
        let image = rest.scale(&field.neg(&inv));
        let images: Vec<Polynomial<F>> = (0..n)
            .map(|i| if i == v { image.clone() } else { Polynomial::var(&ring, i) })
            .collect();
        gens = gens
            .iter()
            .map(|h| if h.variables().contains(&v) { h.substitute(&ring, &images) } else { h.clone() })
            .filter(|h| !h.is_zero())
            .collect();
        eliminated[v] = true;
    }
    let supports: Vec<Vec<usize>> = gens.iter().map(|g| g.variables()).collect();
    let mut used = vec![false; n];
    for s in &supports {
        for &v in s {
            used[v] = true;
        }
    }
    let free = (0..n).filter(|&v| !used[v] && !eliminated[v]).count();

    // Connected components of the variable-sharing graph.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for s in &supports {
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut block_gens: Vec<Vec<&Polynomial<F>>> = Vec::new();
    for (g, s) in gens.iter().zip(&supports) {
        let r = find(&mut parent, s[0]);
        match roots.iter().position(|&x| x == r) {
            Some(i) => block_gens[i].push(g),
            None => {
                roots.push(r);
                block_gens.push(vec![g]);
            }
        }
    }
    let mut blocks = Vec::new();
    for (r, bg) in roots.iter().zip(block_gens) {
        let mut vars: Vec<usize> = (0..n).filter(|&v| used[v] && find(&mut parent, v) == *r).collect();
        // Variables of low degree occurring in few generators come first (largest).
        vars.sort_by_key(|&v| {
            let deg = bg.iter().map(|g| g.terms().iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)).max();
            let occ = bg.iter().filter(|g| g.terms().iter().any(|(m, _)| m.exp(v) > 0)).count();
            (deg, occ, v)
        });
        let names = vars.iter().map(|&v| ring.names()[v].clone()).collect();
        let sub = Ring::new(field.clone(), names)?;
        let projected: Vec<Polynomial<F>> = bg
            .into_iter()
            .map(|g| {
                Polynomial::from_terms(
                    &sub,
                    g.terms().iter().map(|(m, c)| (m.project(&vars), c.clone())),
                )
            })
            .collect();
        blocks.push(Ideal::new(&sub, projected)?);
    }
    Ok(Reduced {
        blocks,
        free,
        empty: false,
    })
}

fn groebner_dim<F: Field>(ideal: &Ideal<F>, budget: GroebnerBudget) -> Result<i64, DimError> {
    let red = reduce_system(ideal)?;
    if red.empty {
        return Ok(-1);
    }
    let dims: Vec<Result<i64, DimError>> = red
        .blocks
        .par_iter()
        .map(|b| {
            let gb = groebner_basis(b, TermOrder::Grevlex, budget)?;
            if budget.verify && !gb.verify_s_pairs() {
                return Err(DimError::BasisCheck(gb.basis().len()));
            }
            Ok(dim_from_leading_monomials(b.arity(), gb.leading_monomials()))
        })
        .collect();
    let mut total = red.free as i64;
    for d in dims {
        let d = d?;
        if d < 0 {
            return Ok(-1);
        }
        total += d;
    }
    Ok(total)
}

fn result(arity: usize, dim: i64, method: DimMethod, oracle: Option<OracleCheck>, exact: bool) -> DimResult {
    DimResult {
        dim,
        codim: if dim < 0 { arity as i64 + 1 } else { arity as i64 - dim },
        arity,
        method,
        oracle,
        recomputed_exactly: exact,
    }
}

fn count_check<F: Field>(ideal: &Ideal<F>, cfg: &DimConfig) -> Result<Option<(Vec<(u32, BigUint)>, i64, bool)>, DimError> {
    let counts = match counts_over(ideal, &cfg.primes, cfg.count_budget) {
        Ok(c) => c,
        Err(DimError::CountBudget { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    match dim_from_counts(&counts) {
        Ok(cd) => Ok(Some((counts, cd.dim, cd.reliable))),
        Err(DimError::TooFewPrimes(_)) => Ok(None),
        Err(DimError::InconsistentCounts(_)) => Ok(Some((counts, i64::MIN, false))),
        Err(e) => Err(e),
    }
}

/// Krull dimension of `V(I)` following the configured oracle policy.
///
/// Over `Q` the Gröbner computation runs over the surrogate prime first; when
/// the point-count oracle is available and disagrees, it is redone over `Q`.
pub fn dimension<F: Field>(ideal: &Ideal<F>, cfg: &DimConfig) -> Result<DimResult, DimError> {
    let arity = ideal.arity();
    let char0 = ideal.ring().field().characteristic() == 0;
    let want_count = char0
        && match cfg.oracle {
            OracleMode::Groebner => false,
            OracleMode::Count => true,
            OracleMode::Both => arity <= cfg.count_arity_limit,
        };
    let counted = if want_count { count_check(ideal, cfg)? } else { None };

    if cfg.oracle == OracleMode::Count {
        if let Some((counts, d, reliable)) = &counted {
            if *d != i64::MIN {
                let check = OracleCheck {
                    counts: counts.clone(),
                    dim: *d,
                    reliable: *reliable,
                    agrees: true,
                };
                return Ok(result(arity, *d, DimMethod::PointCount, Some(check), false));
            }
        }
    }

    let (gdim, method) = if char0 {
        match surrogate(ideal, cfg.surrogate_prime) {
            Some(sur) => (groebner_dim(&sur, cfg.groebner)?, DimMethod::Groebner(FieldSpec::Prime(cfg.surrogate_prime))),
            None => (groebner_dim(ideal, cfg.groebner)?, DimMethod::Groebner(FieldSpec::Rationals)),
        }
    } else {
        (groebner_dim(ideal, cfg.groebner)?, DimMethod::Groebner(ideal.ring().field().spec()))
    };

    let Some((counts, cdim, reliable)) = counted else {
        return Ok(result(arity, gdim, method, None, false));
    };
    if cdim == gdim || method == DimMethod::Groebner(FieldSpec::Rationals) {
        let check = OracleCheck { counts, dim: cdim, reliable, agrees: cdim == gdim };
        return Ok(result(arity, gdim, method, Some(check), false));
    }
    let exact = groebner_dim(ideal, cfg.groebner)?;
    let check = OracleCheck { counts, dim: cdim, reliable, agrees: cdim == exact };
    Ok(result(arity, exact, DimMethod::Groebner(FieldSpec::Rationals), Some(check), true))
}

fn surrogate<F: Field>(ideal: &Ideal<F>, p: u32) -> Option<Ideal<PrimeField>> {
    let fp = PrimeField::new(p).ok()?;
    let ring = Ring::new(fp, ideal.ring().names().to_vec()).ok()?;
    ideal.convert(&ring).ok()
}

/// Dimension by Gröbner basis alone, in the ideal's own field.
pub fn krull_dim<F: Field>(ideal: &Ideal<F>, budget: GroebnerBudget) -> Result<DimResult, DimError> {
    let d = groebner_dim(ideal, budget)?;
    Ok(result(ideal.arity(), d, DimMethod::Groebner(ideal.ring().field().spec()), None, false))
}

/// Dimension straight from a Gröbner basis without any preprocessing.
pub fn krull_dim_unreduced<F: Field>(ideal: &Ideal<F>, budget: GroebnerBudget) -> Result<i64, DimError> {
    let gb = groebner_basis(ideal, TermOrder::Grevlex, budget)?;
    Ok(dim_from_leading_monomials(ideal.arity(), gb.leading_monomials()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn trivial_dimensions() {
        let names: Vec<String> = (0..9).map(|i| format!("v{i}")).collect();
        let r = Ring::new(Rationals, names).unwrap();
        let d = dimension(&Ideal::zero(&r), &DimConfig::default()).unwrap();
        assert_eq!(d.dim, 9);
        let r2 = Ring::with_vars(Rationals, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r2, &["x", "y"]).unwrap();
        let d = dimension(&i, &DimConfig::default()).unwrap();
        assert_eq!((d.dim, d.codim), (0, 2));
        assert!(d.oracle.as_ref().unwrap().agrees);
    }

    #[test]
    fn a1_level_two_style_system() {
        // Q(u) = 0 and B(u, v) = 0 in six variables
        let r = Ring::with_vars(Rationals, &["a", "b", "c", "d", "e", "f"]).unwrap();
        let i = Ideal::parse(&r, &["a^2+b^2+c^2", "2*(a*d+b*e+c*f)"]).unwrap();
        let d = dimension(&i, &DimConfig::default()).unwrap();
        assert_eq!(d.dim, 4);
        let o = d.oracle.unwrap();
        assert_eq!(o.dim, 4);
        assert!(o.agrees);
        assert_eq!(krull_dim_unreduced(&i, GroebnerBudget::default()).unwrap(), 4);
    }

    #[test]
    fn linear_elimination_and_empty() {
        let r = Ring::with_vars(Rationals, &["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, &["x - y^2", "x - 1 - y^2"]).unwrap();
        assert_eq!(dimension(&i, &DimConfig::default()).unwrap().dim, -1);
        let j = Ideal::parse(&r, &["x - y*z", "y^2 - z^3"]).unwrap();
        assert_eq!(dimension(&j, &DimConfig::default()).unwrap().dim, 1);
    }
}

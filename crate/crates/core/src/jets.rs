//! Truncated jet schemes, jet fibers and contact loci.
//!
//! Arcs are substituted as truncated series `x_i = sum_j x_i_j t^j` and the
//! coefficients of `t^0, ..., t^m` are collected by iterated truncated
//! multiplication, so no symbolic `t` and no division ever occur.

use std::sync::Arc;

use crate::algebra::{Ideal, Monomial, Polynomial, Ring};
use crate::error::JetError;
use crate::field::Field;

/// Polynomial ring in the jet variables `x_i_j` (`i` major, `j` minor).
///
/// When `first_order` is 1 the level-0 variables are absent, as in a fiber
/// over a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetRing<F: Field> {
    base: Arc<Ring<F>>,
    level: u32,
    first_order: u32,
    ring: Arc<Ring<F>>,
}

impl<F: Field> JetRing<F> {
    pub fn new(base: &Arc<Ring<F>>, level: u32) -> Result<Self, JetError> {
        Self::build(base, level, 0)
    }

    /// Ring of the jet variables of orders `1..=level`.
    pub fn fiber(base: &Arc<Ring<F>>, level: u32) -> Result<Self, JetError> {
        Self::build(base, level, 1)
    }

    fn build(base: &Arc<Ring<F>>, level: u32, first_order: u32) -> Result<Self, JetError> {
        let mut names = Vec::new();
        for name in base.names() {
            for j in first_order..=level {
                names.push(format!("{name}_{j}"));
            }
        }
        let ring = Ring::new(base.field().clone(), names)?;
        Ok(JetRing {
            base: base.clone(),
            level,
            first_order,
            ring,
        })
    }

    pub fn base(&self) -> &Arc<Ring<F>> {
        &self.base
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn first_order(&self) -> u32 {
        self.first_order
    }

    fn per_var(&self) -> usize {
        (self.level + 1 - self.first_order) as usize
    }

    pub fn arity(&self) -> usize {
        self.ring.arity()
    }

    /// Index of `x_i^(j)`, or `None` if that variable is not in the ring.
    pub fn index(&self, i: usize, j: u32) -> Option<usize> {
        (j >= self.first_order && j <= self.level && i < self.base.arity())
            .then(|| i * self.per_var() + (j - self.first_order) as usize)
    }

    /// Jet order `j` of each ring variable.
    pub fn weights(&self) -> Vec<u32> {
        (0..self.base.arity())
            .flat_map(|_| self.first_order..=self.level)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetMeaning {
    FullJet,
    FiberOverPoint,
    Contact,
}

/// An ideal in jet variables together with the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSystem<F: Field> {
    pub jet_ring: JetRing<F>,
    pub ideal: Ideal<F>,
    pub meaning: JetMeaning,
}

impl<F: Field> JetSystem<F> {
    pub fn arity(&self) -> usize {
        self.jet_ring.arity()
    }
}

/// Closed contact conditions `Cont^{>= order}(ideal)` imposed at a common level.
#[derive(Clone, Debug)]
pub struct ContactSpec<F: Field> {
    pub clauses: Vec<(Ideal<F>, u32)>,
    pub level: u32,
}

/// The truncated series substituted for each base variable.
fn arc_series<F: Field>(jr: &JetRing<F>, point: Option<&[F::Elem]>) -> Vec<Vec<Polynomial<F>>> {
    let ring = jr.ring();
    let field = ring.field();
    (0..jr.base().arity())
        .map(|i| {
            (0..=jr.level())
                .map(|j| match jr.index(i, j) {
                    Some(k) => Polynomial::var(ring, k),
                    None => match point {
                        Some(p) => Polynomial::constant(ring, p[i].clone()),
                        None => Polynomial::constant(ring, field.zero()),
                    },
                })
                .collect()
        })
        .collect()
}

fn series_mul<F: Field>(a: &[Polynomial<F>], b: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut acc = Polynomial::zero(a[0].ring());
            for i in 0..=k {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                acc = &acc + &(&a[i] * &b[k - i]);
            }
            acc
        })
        .collect()
}

fn expand_with<F: Field>(
    f: &Polynomial<F>,
    jr: &JetRing<F>,
    series: &[Vec<Polynomial<F>>],
) -> Vec<Polynomial<F>> {
    let ring = jr.ring();
    let len = jr.level() as usize + 1;
    let zero_series = || vec![Polynomial::zero(ring); len];
    let mut one_series = zero_series();
    one_series[0] = Polynomial::one(ring);
    let mut powers: Vec<Vec<Vec<Polynomial<F>>>> = vec![vec![one_series.clone()]; series.len()];
    let mut out = zero_series();
    for (m, c) in f.terms() {
        let mut t = one_series.clone();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = series_mul(powers[i].last().unwrap(), &series[i]);
                powers[i].push(next);
            }
            t = series_mul(&t, &powers[i][e as usize]);
        }
        for (k, tk) in t.iter().enumerate() {
            if !tk.is_zero() {
                out[k] = &out[k] + &tk.scale(c);
            }
        }
    }
    out
}

/// Coefficients `c_0..c_m` of `f(sum_j x_i_j t^j) mod t^{m+1}`.
///
/// For a fiber ring the missing level-0 variables are replaced by zero.
pub fn expand_truncated<F: Field>(f: &Polynomial<F>, jr: &JetRing<F>) -> Vec<Polynomial<F>> {
    expand_with(f, jr, &arc_series(jr, None))
}

/// Same as [`expand_truncated`] with the level-0 coordinates fixed to `point`.
pub fn expand_at_point<F: Field>(
    f: &Polynomial<F>,
    jr: &JetRing<F>,
    point: &[F::Elem],
) -> Vec<Polynomial<F>> {
    expand_with(f, jr, &arc_series(jr, Some(point)))
}

/// Ideal of the jet fiber `pi_m^{-1}(point)` in the `N*m` variables of orders `1..=m`.
pub fn jet_fiber_ideal<F: Field>(
    x: &Ideal<F>,
    point: &[F::Elem],
    level: u32,
) -> Result<JetSystem<F>, JetError> {
    let base = x.ring();
    if point.len() != base.arity() {
        return Err(crate::error::AlgebraError::Arity {
            expected: base.arity(),
            got: point.len(),
        }
        .into());
    }
    let jr = JetRing::fiber(base, level)?;
    let series = arc_series(&jr, Some(point));
    let mut gens = Vec::new();
    for g in x.nonzero_gens() {
        let coeffs = expand_with(g, &jr, &series);
        if !coeffs[0].is_zero() {
            return Err(JetError::PointNotOnVariety);
        }
        gens.extend(coeffs.into_iter().skip(1).filter(|c| !c.is_zero()));
    }
    let ideal = Ideal::new(jr.ring(), gens)?;
    Ok(JetSystem {
        jet_ring: jr,
        ideal,
        meaning: JetMeaning::FiberOverPoint,
    })
}

/// Ideal of the full `m`-jet scheme of `V(x)` in `N*(m+1)` variables.
pub fn jet_scheme_ideal<F: Field>(x: &Ideal<F>, level: u32) -> Result<JetSystem<F>, JetError> {
    let jr = JetRing::new(x.ring(), level)?;
    let mut gens = Vec::new();
    for g in x.nonzero_gens() {
        gens.extend(expand_truncated(g, &jr).into_iter().filter(|c| !c.is_zero()));
    }
    let ideal = Ideal::new(jr.ring(), gens)?;
    Ok(JetSystem {
        jet_ring: jr,
        ideal,
        meaning: JetMeaning::FullJet,
    })
}

/// Closed contact locus at `spec.level`, optionally intersected with the
/// arcs whose base point is `point`.
pub fn contact_ideal<F: Field>(
    spec: &ContactSpec<F>,
    base: &Arc<Ring<F>>,
    point: Option<&[F::Elem]>,
) -> Result<JetSystem<F>, JetError> {
    for (ideal, order) in &spec.clauses {
        if *order == 0 {
            return Err(JetError::ZeroOrder);
        }
        if *order > spec.level + 1 {
            return Err(JetError::OrderExceedsLevel {
                order: *order,
                level: spec.level,
            });
        }
        if !crate::algebra::same_ring(ideal.ring(), base) {
            return Err(crate::error::AlgebraError::RingMismatch.into());
        }
    }
    let jr = JetRing::new(base, spec.level)?;
    let ring = jr.ring().clone();
    let field = ring.field();
    let series = arc_series(&jr, None);
    let mut gens = Vec::new();
    if let Some(p) = point {
        if p.len() != base.arity() {
            return Err(crate::error::AlgebraError::Arity {
                expected: base.arity(),
                got: p.len(),
            }
            .into());
        }
        for (i, c) in p.iter().enumerate() {
            let k = jr.index(i, 0).expect("level-0 variable");
            gens.push(Polynomial::from_terms(
                &ring,
                [
                    (Monomial::var(ring.arity(), k), field.one()),
                    (Monomial::one(ring.arity()), field.neg(c)),
                ],
            ));
        }
    }
    for (ideal, order) in &spec.clauses {
        for g in ideal.nonzero_gens() {
            let coeffs = expand_with(g, &jr, &series);
            gens.extend(
                coeffs
                    .into_iter()
                    .take(*order as usize)
                    .filter(|c| !c.is_zero()),
            );
        }
    }
    let ideal = Ideal::new(&ring, gens)?;
    Ok(JetSystem {
        jet_ring: jr,
        ideal,
        meaning: JetMeaning::Contact,
    })
}

/// True iff every generator is weighted homogeneous with `wt(x_i_j) = j`.
pub fn weight_check<F: Field>(sys: &JetSystem<F>) -> bool {
    let w = sys.jet_ring.weights();
    sys.ideal
        .gens()
        .iter()
        .all(|g| g.is_weighted_homogeneous(&w))
}

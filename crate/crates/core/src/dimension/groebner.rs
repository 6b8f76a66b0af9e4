//! Buchberger's algorithm with the Gebauer–Möller pair criteria and sugar selection.

use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Ideal, Monomial, Polynomial, Ring};
use crate::error::DimError;
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Graded reverse lexicographic, `x_0 > x_1 > ...`.
    Grevlex,
    /// Pure lexicographic, `x_0 > x_1 > ...`.
    Lex,
    /// Weighted degree first, ties broken by grevlex. Weights may be zero.
    WeightedGrevlex(Arc<[u32]>),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => a.grevlex_cmp(b),
            TermOrder::Lex => a.lex_cmp(b),
            TermOrder::WeightedGrevlex(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| a.grevlex_cmp(b)),
        }
    }

    /// Degree used for sugar bookkeeping.
    fn degree(&self, m: &Monomial) -> u64 {
        match self {
            TermOrder::WeightedGrevlex(w) => m.weighted_degree(w),
            _ => m.degree() as u64,
        }
    }
}

/// Resource caps for a single Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerBudget {
    /// Maximum number of elementary reduction steps.
    pub max_steps: u64,
    /// Maximum total degree of an S-pair lcm.
    pub max_degree: u32,
    /// Re-check Buchberger's criterion on every basis the dimension engine computes.
    pub verify: bool,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_steps: 20_000_000,
            max_degree: 60,
            verify: false,
        }
    }
}

type Terms<E> = Vec<(Monomial, E)>;

/// A reduced Gröbner basis. Elements are monic and sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    order: TermOrder,
    basis: Vec<Polynomial<F>>,
    leading: Vec<Monomial>,
    stats: GroebnerStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub reduction_steps: u64,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    /// Leading monomials with respect to the basis order.
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(|m| m.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let field = self.ring.field();
        let reducers = self.reducers();
        let mut steps = 0;
        let terms = sorted_terms(f, &self.order);
        let nf = normal_form(field, &self.order, terms, &reducers, &mut steps, u64::MAX)
            .expect("unbounded reduction");
        Polynomial::from_terms(&self.ring, nf)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Checks Buchberger's criterion: every S-polynomial reduces to zero.
    ///
    /// Pairs are skipped when their leading monomials are coprime, or when some
    /// third leading monomial divides their lcm and both of its pair lcms are
    /// proper divisors of it (induction on the lcm covers those). Top reduction
    /// suffices: it stops at zero exactly when the normal form is zero.
    pub fn verify_s_pairs(&self) -> bool {
        let field = self.ring.field();
        let reducers = self.reducers();
        let polys: Vec<Terms<F::Elem>> = self.basis.iter().map(|g| sorted_terms(g, &self.order)).collect();
        let pairs: Vec<(usize, usize)> = (0..polys.len())
            .flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let (a, b) = (&polys[i][0].0, &polys[j][0].0);
                if a.is_coprime(b) {
                    return false;
                }
                let l = a.lcm(b);
                !(0..polys.len()).any(|k| {
                    let c = &polys[k][0].0;
                    k != i && k != j && c.divides(&l) && a.lcm(c) != l && b.lcm(c) != l
                })
            })
            .collect();
        pairs.par_iter().all(|&(i, j)| {
            let s = s_polynomial(field, &self.order, &polys[i], &polys[j]);
            let mut steps = 0;
            top_reduce(field, &self.order, s, &reducers, &mut steps, u64::MAX)
                .expect("unbounded reduction")
                .is_empty()
        })
    }

    fn reducers(&self) -> Vec<Reducer<F::Elem>> {
        let field = self.ring.field();
        self.basis
            .iter()
            .map(|g| Reducer::new(field, sorted_terms(g, &self.order)))
            .collect()
    }
}

fn sorted_terms<F: Field>(f: &Polynomial<F>, order: &TermOrder) -> Terms<F::Elem> {
    let mut t = f.terms().to_vec();
    if *order != TermOrder::Grevlex {
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

struct Reducer<E> {
    lm: Monomial,
    mask: u64,
    lc_inv: E,
    terms: Terms<E>,
}

impl<E: Clone> Reducer<E> {
    fn new<F: Field<Elem = E>>(field: &F, terms: Terms<E>) -> Self {
        let lm = terms[0].0.clone();
        Reducer {
            mask: divmask(&lm),
            lc_inv: field.inv(&terms[0].1).expect("nonzero"),
            lm,
            terms,
        }
    }
}

/// `p - c * m * g` for term lists sorted decreasingly.
fn axpy<F: Field>(
    field: &F,
    order: &TermOrder,
    p: &[(Monomial, F::Elem)],
    c: &F::Elem,
    m: &Monomial,
    g: &[(Monomial, F::Elem)],
) -> Terms<F::Elem> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gj: Option<(Monomial, F::Elem)> = g.first().map(|(gm, gc)| (gm.mul(m), field.mul(gc, c)));
    while let Some((gm, gc)) = &gj {
        if i < p.len() {
            match order.cmp(&p[i].0, gm) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                    continue;
                }
                Ordering::Equal => {
                    let v = field.sub(&p[i].1, gc);
                    if !field.is_zero(&v) {
                        out.push((p[i].0.clone(), v));
                    }
                    i += 1;
                }
                Ordering::Less => out.push((gm.clone(), field.neg(gc))),
            }
        } else {
            out.push((gm.clone(), field.neg(gc)));
        }
        j += 1;
        gj = g.get(j).map(|(gm, gc)| (gm.mul(m), field.mul(gc, c)));
    }
    out.extend_from_slice(&p[i..]);
    out
}

fn find_reducer<'a, E>(m: &Monomial, reducers: &'a [Reducer<E>]) -> Option<&'a Reducer<E>> {
    let mask = divmask(m);
    reducers
        .iter()
        .find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Full normal form (every term reduced).
fn normal_form<F: Field>(
    field: &F,
    order: &TermOrder,
    mut p: Terms<F::Elem>,
    reducers: &[Reducer<F::Elem>],
    steps: &mut u64,
    max_steps: u64,
) -> Result<Terms<F::Elem>, DimError> {
    let mut res = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match find_reducer(m, reducers) {
            Some(r) => {
                *steps += 1;
                if *steps > max_steps {
                    return Err(DimError::GroebnerBudget(format!(
                        "more than {max_steps} reduction steps"
                    )));
                }
                let q = r.lm.quotient_of(m);
                let coef = field.mul(c, &r.lc_inv);
                p = axpy(field, order, &p[start + 1..], &coef, &q, &r.terms[1..]);
                start = 0;
            }
            None => {
                res.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(res)
}

/// Reduces until the leading term is irreducible; the tail is left alone.
fn top_reduce<F: Field>(
    field: &F,
    order: &TermOrder,
    mut p: Terms<F::Elem>,
    reducers: &[Reducer<F::Elem>],
    steps: &mut u64,
    max_steps: u64,
) -> Result<Terms<F::Elem>, DimError> {
    while let Some((m, c)) = p.first() {
        let Some(r) = find_reducer(m, reducers) else { break };
        *steps += 1;
        if *steps > max_steps {
            return Err(DimError::GroebnerBudget(format!("more than {max_steps} reduction steps")));
        }
        let q = r.lm.quotient_of(m);
        let coef = field.mul(c, &r.lc_inv);
        p = axpy(field, order, &p[1..], &coef, &q, &r.terms[1..]);
    }
    Ok(p)
}

fn make_monic<F: Field>(field: &F, p: &mut Terms<F::Elem>) {
    if let Some((_, c)) = p.first() {
        if !field.is_one(c) {
            let inv = field.inv(c).expect("nonzero");
            for t in p.iter_mut() {
                t.1 = field.mul(&t.1, &inv);
            }
        }
    }
}

fn s_polynomial<F: Field>(
    field: &F,
    order: &TermOrder,
    a: &[(Monomial, F::Elem)],
    b: &[(Monomial, F::Elem)],
) -> Terms<F::Elem> {
    let lcm = a[0].0.lcm(&b[0].0);
    let ma = a[0].0.quotient_of(&lcm);
    let mb = b[0].0.quotient_of(&lcm);
    let ca = field.inv(&a[0].1).expect("nonzero");
    let cb = field.inv(&b[0].1).expect("nonzero");
    let left: Terms<F::Elem> = a[1..]
        .iter()
        .map(|(m, c)| (m.mul(&ma), field.mul(c, &ca)))
        .collect();
    axpy(field, order, &left, &cb, &mb, &b[1..])
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Element<E> {
    terms: Terms<E>,
    sugar: u64,
    active: bool,
}

/// Reduced Gröbner basis with respect to `order`.
pub fn groebner_basis<F: Field>(
    ideal: &Ideal<F>,
    order: TermOrder,
    budget: GroebnerBudget,
) -> Result<GroebnerBasis<F>, DimError> {
    let ring = ideal.ring().clone();
    let field = ring.field().clone();
    let mut stats = GroebnerStats::default();
    let mut input: Vec<Terms<F::Elem>> = ideal
        .nonzero_gens()
        .map(|g| {
            let mut t = sorted_terms(g, &order);
            make_monic(&field, &mut t);
            t
        })
        .collect();
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then_with(|| a.len().cmp(&b.len())));

    let mut elems: Vec<Element<F::Elem>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut reducers: Vec<Reducer<F::Elem>> = Vec::new();
    let mut unit = false;

    let add = |h: Terms<F::Elem>,
                   sugar: u64,
                   elems: &mut Vec<Element<F::Elem>>,
                   pairs: &mut Vec<Pair>,
                   reducers: &mut Vec<Reducer<F::Elem>>| {
        let k = elems.len();
        let lh = h[0].0.clone();
        // Gebauer–Möller update.
        let cand: Vec<Pair> = elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(i, e)| {
                let lcm = e.terms[0].0.lcm(&lh);
                let dl = order.degree(&lcm);
                let s = (e.sugar + dl - order.degree(&e.terms[0].0)).max(sugar + dl - order.degree(&lh));
                Pair { i, j: k, lcm, sugar: s }
            })
            .collect();
        let coprime = |p: &Pair, elems: &Vec<Element<F::Elem>>| {
            elems[p.i].terms[0].0.is_coprime(&lh)
        };
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in cand.iter().enumerate() {
            let dominated_later = cand[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm));
            let dominated_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime(p, elems) || (!dominated_later && !dominated_kept) {
                kept.push(p.clone_pair());
            }
        }
        let fresh: Vec<Pair> = kept.into_iter().filter(|p| !coprime(p, elems)).collect();
        pairs.retain(|p| {
            let li = &elems[p.i].terms[0].0;
            let lj = &elems[p.j].terms[0].0;
            !(lh.divides(&p.lcm) && li.lcm(&lh) != p.lcm && lj.lcm(&lh) != p.lcm)
        });
        pairs.extend(fresh);
        for e in elems.iter_mut() {
            if e.active && lh.divides(&e.terms[0].0) {
                e.active = false;
            }
        }
        reducers.retain(|r| !lh.divides(&r.lm));
        reducers.push(Reducer::new(&field, h.clone()));
        elems.push(Element {
            terms: h,
            sugar,
            active: true,
        });
    };

    for f in input {
        let sugar = f.iter().map(|(m, _)| order.degree(m)).max().unwrap_or(0);
        let mut h = normal_form(&field, &order, f, &reducers, &mut stats.reduction_steps, budget.max_steps)?;
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            unit = true;
            break;
        }
        make_monic(&field, &mut h);
        add(h, sugar, &mut elems, &mut pairs, &mut reducers);
    }

    while !unit && !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar
                    .cmp(&q.sugar)
                    .then_with(|| order.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        if pair.lcm.degree() > budget.max_degree {
            return Err(DimError::GroebnerBudget(format!(
                "S-pair degree {} exceeds cap {}",
                pair.lcm.degree(),
                budget.max_degree
            )));
        }
        stats.pairs_reduced += 1;
        let s = s_polynomial(&field, &order, &elems[pair.i].terms, &elems[pair.j].terms);
        let mut h = top_reduce(&field, &order, s, &reducers, &mut stats.reduction_steps, budget.max_steps)?;
        if h.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        if h[0].0.is_one() {
            unit = true;
            break;
        }
        make_monic(&field, &mut h);
        add(h, pair.sugar, &mut elems, &mut pairs, &mut reducers);
    }

    if unit {
        let one = Polynomial::one(&ring);
        return Ok(GroebnerBasis {
            leading: vec![Monomial::one(ring.arity())],
            basis: vec![one],
            ring,
            order,
            stats,
        });
    }

    // Interreduce the minimal basis.
    let mut active: Vec<Terms<F::Elem>> = elems
        .into_iter()
        .filter(|e| e.active)
        .map(|e| e.terms)
        .collect();
    active.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let all: Vec<Reducer<F::Elem>> = active.iter().map(|t| Reducer::new(&field, t.clone())).collect();
    let mut reduced = Vec::with_capacity(active.len());
    for (k, t) in active.iter().enumerate() {
        let others: Vec<Reducer<F::Elem>> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, r)| Reducer {
                lm: r.lm.clone(),
                mask: r.mask,
                lc_inv: r.lc_inv.clone(),
                terms: r.terms.clone(),
            })
            .collect();
        let tail = normal_form(
            &field,
            &order,
            t[1..].to_vec(),
            &others,
            &mut stats.reduction_steps,
            budget.max_steps,
        )?;
        let mut g = vec![t[0].clone()];
        g.extend(tail);
        reduced.push(g);
    }
    let leading = reduced.iter().map(|t| t[0].0.clone()).collect();
    let basis = reduced
        .into_iter()
        .map(|t| Polynomial::from_terms(&ring, t))
        .collect();
    Ok(GroebnerBasis {
        ring,
        order,
        basis,
        leading,
        stats,
    })
}

impl Pair {
    fn clone_pair(&self) -> Pair {
        Pair {
            i: self.i,
            j: self.j,
            lcm: self.lcm.clone(),
            sugar: self.sugar,
        }
    }
}

//! Truncated power series represented as polynomials cut off at a total degree.

use std::sync::Arc;

use crate::algebra::{Monomial, Polynomial, Ring};
use crate::field::Field;

/// `a * b` keeping terms of total degree at most `k`.
pub(crate) fn mul_trunc<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, k: u32) -> Polynomial<F> {
    let field = a.field();
    let terms = a.terms().iter().flat_map(|(ma, ca)| {
        b.terms()
            .iter()
            .filter(move |(mb, _)| ma.degree() + mb.degree() <= k)
            .map(move |(mb, cb)| (ma.mul(mb), field.mul(ca, cb)))
    });
    Polynomial::from_terms(a.ring(), terms.collect::<Vec<_>>())
}

/// `f(images)` truncated at total degree `k`. Every image must vanish at the origin.
pub(crate) fn compose_trunc<F: Field>(
    f: &Polynomial<F>,
    target: &Arc<Ring<F>>,
    images: &[Polynomial<F>],
    k: u32,
) -> Polynomial<F> {
    let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|_| vec![Polynomial::one(target)]).collect();
    let mut acc: Vec<(Monomial, F::Elem)> = Vec::new();
    for (m, c) in f.terms() {
        if m.degree() > k {
            continue;
        }
        let mut t = Polynomial::constant(target, c.clone());
        for (v, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[v].len() <= e as usize {
                let next = mul_trunc(powers[v].last().expect("nonempty"), &images[v], k);
                powers[v].push(next);
            }
            t = mul_trunc(&t, &powers[v][e as usize], k);
            if t.is_zero() {
                break;
            }
        }
        acc.extend(t.into_terms());
    }
    Polynomial::from_terms(target, acc)
}

/// Order of vanishing at the origin; `None` for zero.
pub(crate) fn order<F: Field>(f: &Polynomial<F>) -> Option<u32> {
    f.terms().iter().map(|(m, _)| m.degree()).min()
}

/// Restricts a polynomial that only involves `keep` to a ring on those variables.
pub(crate) fn project<F: Field>(f: &Polynomial<F>, target: &Arc<Ring<F>>, keep: &[usize]) -> Polynomial<F> {
    Polynomial::from_terms(
        target,
        f.terms()
            .iter()
            .map(|(m, c)| (m.project(keep), c.clone()))
            .collect::<Vec<_>>(),
    )
}

/// Splitting lemma in the directions `split` where the quadratic part is
/// `sum d_s y_s^2` (characteristic not 2): solves `df/dy_s = 0` for the split
/// variables as series in the others and returns `f` restricted to that
/// critical locus, truncated at degree `k`.
pub(crate) fn split_residual<F: Field>(f: &Polynomial<F>, split: &[(usize, F::Elem)], k: u32) -> Polynomial<F> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let n = ring.arity();
    let mut images: Vec<Polynomial<F>> = (0..n).map(|i| Polynomial::var(&ring, i)).collect();
    for (s, _) in split {
        images[*s] = Polynomial::zero(&ring);
    }
    let derivs: Vec<Polynomial<F>> = split.iter().map(|(s, _)| f.derivative(*s)).collect();
    let two = field.from_i64(2);
    for _ in 0..=k {
        let mut changed = false;
        let mut next = images.clone();
        for ((s, d), df) in split.iter().zip(&derivs) {
            let g = compose_trunc(df, &ring, &images, k);
            if g.is_zero() {
                continue;
            }
            let inv = field.inv(&field.mul(&two, d)).expect("nonzero split coefficient");
            next[*s] = (&images[*s] - &g.scale(&inv)).truncate(k);
            changed = true;
        }
        images = next;
        if !changed {
            break;
        }
    }
    compose_trunc(f, &ring, &images, k)
}

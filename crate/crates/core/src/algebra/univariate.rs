//! Dense univariate polynomials, coefficients stored lowest degree first.

use crate::field::Field;

pub type Dense<E> = Vec<E>;

pub fn trim<F: Field>(field: &F, a: &mut Dense<F::Elem>) {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
}

/// Degree, `None` for zero.
pub fn degree<E>(a: &Dense<E>) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn sub<F: Field>(field: &F, a: &Dense<F::Elem>, b: &Dense<F::Elem>) -> Dense<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let mut out: Dense<F::Elem> = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn mul<F: Field>(field: &F, a: &Dense<F::Elem>, b: &Dense<F::Elem>) -> Dense<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

pub fn derivative<F: Field>(field: &F, a: &Dense<F::Elem>) -> Dense<F::Elem> {
    let mut out: Dense<F::Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
        .collect();
    trim(field, &mut out);
    out
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(
    field: &F,
    a: &Dense<F::Elem>,
    b: &Dense<F::Elem>,
) -> (Dense<F::Elem>, Dense<F::Elem>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = field.inv(&b[db]).expect("nonzero lead");
    let mut r = a.clone();
    trim(field, &mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = field.mul(&r[r.len() - 1], &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = field.sub(&r[k + j], &field.mul(&c, bj));
        }
        q[k] = c;
        r.pop();
        trim(field, &mut r);
    }
    trim(field, &mut q);
    (q, r)
}

pub fn monic<F: Field>(field: &F, a: &Dense<F::Elem>) -> Dense<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = field.inv(l).expect("nonzero lead");
            a.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(field: &F, a: &Dense<F::Elem>, b: &Dense<F::Elem>) -> Dense<F::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(field, &mut x);
    trim(field, &mut y);
    while !y.is_empty() {
        let (_, r) = divrem(field, &x, &y);
        x = y;
        y = r;
    }
    monic(field, &x)
}

/// Squarefree decomposition `a = c * prod f_i^{e_i}` with pairwise coprime
/// squarefree monic `f_i`. Works in any characteristic; over `F_p` the
/// Frobenius is the identity on coefficients, so `p`-th roots are reindexing.
pub fn squarefree_decomposition<F: Field>(field: &F, a: &Dense<F::Elem>) -> Vec<(Dense<F::Elem>, u32)> {
    let mut a = a.clone();
    trim(field, &mut a);
    if degree(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let a = monic(field, &a);
    let p = field.characteristic();
    let mut out = Vec::new();
    sqf_rec(field, &a, p, 1, &mut out);
    out.sort_by_key(|(f, e)| (*e, f.len()));
    out
}

fn sqf_rec<F: Field>(
    field: &F,
    a: &Dense<F::Elem>,
    p: u64,
    scale: u32,
    out: &mut Vec<(Dense<F::Elem>, u32)>,
) {
    if a.len() <= 1 {
        return;
    }
    let da = derivative(field, a);
    if da.is_empty() {
        // a(x) = b(x^p)
        let p = p as usize;
        let b: Dense<F::Elem> = a.iter().step_by(p).cloned().collect();
        sqf_rec(field, &b, p as u64, scale * p as u32, out);
        return;
    }
    // Musser: separate the part of multiplicity divisible by p.
    let mut c = gcd(field, a, &da);
    let mut w = divrem(field, a, &c).0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = gcd(field, &w, &c);
        let z = divrem(field, &w, &y).0;
        if z.len() > 1 {
            out.push((monic(field, &z), i * scale));
        }
        i += 1;
        w = y;
        c = divrem(field, &c, &w).0;
    }
    if c.len() > 1 {
        // remaining factor is a p-th power
        let p = p as usize;
        debug_assert!(p > 0);
        let b: Dense<F::Elem> = c.iter().step_by(p).cloned().collect();
        sqf_rec(field, &b, p as u64, scale * p as u32, out);
    }
}

pub fn eval<F: Field>(field: &F, a: &Dense<F::Elem>, x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// All roots in `F_p` by exhaustive evaluation, ascending.
pub fn roots_mod_p<F: Field<Elem = u32>>(field: &F, modulus: u32, a: &Dense<u32>) -> Vec<u32> {
    let mut a = a.clone();
    trim(field, &mut a);
    if a.is_empty() {
        return (0..modulus).collect();
    }
    (0..modulus).filter(|x| eval(field, &a, x) == 0).collect()
}

use std::sync::Arc;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{self, Polynomial, Ring};
use crate::error::ClassifyError;
use crate::field::Field;

use super::cubic::{cubic_factors, CubicShape, Linear};
use super::series::{compose_trunc, order, project, split_residual};
use super::{Label, SingularityClass};

/// `tau` and a basis (as coefficient rows) of the smallest linear subspace
/// whose variables carry the quadratic initial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauResult<E> {
    pub tau: usize,
    pub witness: Matrix<E>,
}

fn quadratic_part<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>, ClassifyError> {
    match algebra::multiplicity_at_origin(f) {
        Some(2) => Ok(f.homogeneous_part(2)),
        Some(m) => Err(ClassifyError::Multiplicity(m.to_string())),
        None => Err(ClassifyError::Multiplicity("infinite".into())),
    }
}

/// Symmetric matrix of a quadratic form; requires characteristic not 2.
fn gram<F: Field>(q: &Polynomial<F>) -> Matrix<F::Elem> {
    let field = q.field();
    let n = q.ring().arity();
    let half = field.inv(&field.from_i64(2)).expect("characteristic not 2");
    let mut a = vec![vec![field.zero(); n]; n];
    for (m, c) in q.terms() {
        let vars: Vec<usize> = m.support().collect();
        match vars.as_slice() {
            [i] => a[*i][*i] = c.clone(),
            [i, j] => {
                let h = field.mul(c, &half);
                a[*i][*j] = h.clone();
                a[*j][*i] = h;
            }
            _ => unreachable!("quadratic term"),
        }
    }
    a
}

/// Congruence diagonalization: returns `P` and `d` with `P^T A P = diag(d)`,
/// nonzero entries of `d` first.
fn diagonalize<F: Field>(field: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<F::Elem>) {
    let n = a.len();
    let mut b = a.clone();
    let mut p = linalg::identity(field, n);
    // e_j <- e_j + c e_k
    let col_op = |b: &mut Matrix<F::Elem>, p: &mut Matrix<F::Elem>, j: usize, k: usize, c: &F::Elem| {
        for row in p.iter_mut() {
            row[j] = field.add(&row[j], &field.mul(c, &row[k]));
        }
        for row in b.iter_mut() {
            row[j] = field.add(&row[j], &field.mul(c, &row[k]));
        }
        for col in 0..n {
            b[j][col] = field.add(&b[j][col], &field.mul(c, &b[k][col]));
        }
    };
    let swap = |b: &mut Matrix<F::Elem>, p: &mut Matrix<F::Elem>, i: usize, k: usize| {
        b.swap(i, k);
        for row in b.iter_mut() {
            row.swap(i, k);
        }
        for row in p.iter_mut() {
            row.swap(i, k);
        }
    };
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !field.is_zero(&b[i][i])) {
            swap(&mut b, &mut p, i, k);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !field.is_zero(&b[i][j]))
        {
            col_op(&mut b, &mut p, i, j, &field.one());
            swap(&mut b, &mut p, i, k);
        } else {
            break;
        }
        let inv = field.inv(&b[k][k]).expect("pivot");
        for j in k + 1..n {
            if field.is_zero(&b[k][j]) {
                continue;
            }
            let c = field.neg(&field.mul(&b[k][j], &inv));
            col_op(&mut b, &mut p, j, k, &c);
        }
    }
    let d = (0..n).map(|i| b[i][i].clone()).collect();
    (p, d)
}

/// All reduced row echelon `r x n` matrices over `F_2`.
fn echelon_f2<F: Field>(field: &F, r: usize, n: usize) -> Vec<Matrix<F::Elem>> {
    let mut out = Vec::new();
    for pivots in algebra::combinations(n, r) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| {
                let pivots = pivots.clone();
                (pc + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (row, c))
            })
            .collect();
        for bits in 0u32..(1 << free.len()) {
            let mut m = vec![vec![field.zero(); n]; r];
            for (row, &pc) in pivots.iter().enumerate() {
                m[row][pc] = field.one();
            }
            for (k, &(row, c)) in free.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    m[row][c] = field.one();
                }
            }
            out.push(m);
        }
    }
    out
}

/// Completes the rows of an echelon matrix to an invertible matrix with unit rows.
fn complete_basis<F: Field>(field: &F, rows: &Matrix<F::Elem>, n: usize) -> Matrix<F::Elem> {
    let mut t = rows.clone();
    let mut probe = rows.clone();
    let base = linalg::rank(field, &probe);
    let mut rank = base;
    for c in 0..n {
        let mut e = vec![field.zero(); n];
        e[c] = field.one();
        probe.push(e.clone());
        if linalg::rank(field, &probe) > rank {
            rank += 1;
            t.push(e);
        } else {
            probe.pop();
        }
    }
    t
}

/// Smallest linear subspace carrying the quadratic initial form.
///
/// Outside characteristic 2 this is the row space of the Gram matrix. In
/// characteristic 2 every echelon subspace is tried in order of dimension.
pub fn tau_invariant<F: Field>(f: &Polynomial<F>) -> Result<TauResult<F::Elem>, ClassifyError> {
    let q = quadratic_part(f)?;
    let field = f.field();
    let n = f.ring().arity();
    if field.characteristic() != 2 {
        let witness = linalg::row_space(field, &gram(&q));
        return Ok(TauResult { tau: witness.len(), witness });
    }
    for r in 1..=n {
        for rows in echelon_f2(field, r, n) {
            let t = complete_basis(field, &rows, n);
            let p = linalg::inverse(field, &t)?;
            let moved = algebra::linear_substitute(&q, &p)?;
            if moved.variables().iter().all(|&v| v < r) {
                return Ok(TauResult { tau: r, witness: rows });
            }
        }
    }
    unreachable!("the full space always carries the form")
}

fn degree_bounds<F: Field>(f: &Polynomial<F>) -> (u32, u32) {
    let d = f.total_degree().unwrap_or(2).max(2);
    let k_max = (d - 1).pow(3) + 2;
    ((d + 2).min(k_max).max(5), k_max.max(5))
}

/// Truncation degrees tried in turn: doubling from the start up to the bound.
fn schedule(start: u32, bound: u32) -> Vec<u32> {
    let mut out = vec![start];
    while *out.last().expect("nonempty") < bound {
        let next = (out.last().expect("nonempty") * 2).min(bound);
        out.push(next);
    }
    out
}

/// Classifies the germ at the origin of the surface `f = 0` in `A^3`.
pub fn classify_surface_dp<F: Field>(f: &Polynomial<F>) -> Result<SingularityClass, ClassifyError> {
    let n = f.ring().arity();
    if n != 3 {
        return Err(ClassifyError::Arity { expected: 3, got: n });
    }
    let field = f.field();
    if !field.is_zero(&f.constant_term()) {
        return Err(ClassifyError::NotVanishing);
    }
    let mult = algebra::multiplicity_at_origin(f);
    match mult {
        Some(1) => return Ok(SingularityClass::new(Label::Smooth, mult)),
        Some(2) => {}
        _ => {
            let mut c = SingularityClass::new(Label::NotDuVal, mult);
            c.reason = Some("multiplicity at least 3".into());
            return Ok(c);
        }
    }
    let tau = tau_invariant(f)?;
    let mut class = if field.characteristic() == 2 {
        classify_char2(f)?
    } else {
        let a = gram(&f.homogeneous_part(2));
        let (p, d) = diagonalize(field, &a);
        let moved = algebra::linear_substitute(f, &p)?;
        match tau.tau {
            3 => SingularityClass::new(Label::A(1), mult),
            2 => a_series(&moved, &d),
            _ => tau_one(&moved, &d)?,
        }
    };
    class.multiplicity = mult;
    class.tau = Some(tau.tau);
    Ok(class)
}

fn a_series<F: Field>(f: &Polynomial<F>, d: &[F::Elem]) -> SingularityClass {
    let (start, bound) = degree_bounds(f);
    let split = [(0, d[0].clone()), (1, d[1].clone())];
    for k in schedule(start, bound) {
        let h = split_residual(f, &split, k);
        if let Some(o) = order(&h) {
            let mut c = SingularityClass::new(Label::A(o - 1), None);
            c.truncation = Some(k);
            return c;
        }
    }
    let mut c = SingularityClass::new(Label::NormalCrossing, None);
    c.truncation = Some(bound);
    c.reason = Some(format!("residual after splitting vanishes through degree {bound}"));
    c
}

fn plane_ring<F: Field>(field: &F) -> Arc<Ring<F>> {
    Ring::new(field.clone(), vec!["x".into(), "y".into()]).expect("valid names")
}

/// Matrix `P` with `h(P u)` expressed in the coordinates `u = T (x, y)`.
fn coordinates_from_rows<F: Field>(field: &F, first: &Linear<F::Elem>, second: &Linear<F::Elem>) -> Result<Matrix<F::Elem>, ClassifyError> {
    let t = vec![first.to_vec(), second.to_vec()];
    Ok(linalg::inverse(field, &t)?)
}

fn tau_one<F: Field>(f: &Polynomial<F>, d: &[F::Elem]) -> Result<SingularityClass, ClassifyError> {
    let field = f.field();
    let (start, bound) = degree_bounds(f);
    let plane = plane_ring(field);
    let split = [(0, d[0].clone())];
    let mut last = None;
    for k in schedule(start, bound) {
        let h = project(&split_residual(f, &split, k), &plane, &[1, 2]);
        let Some(o) = order(&h) else { continue };
        if o >= 4 {
            let mut c = SingularityClass::new(Label::NotDuVal, None);
            c.truncation = Some(k);
            c.reason = Some(format!("residual binary form has multiplicity {o}"));
            return Ok(c);
        }
        let cubic = cubic_factors(&h.homogeneous_part(3))?;
        let mut c = match cubic.shape {
            CubicShape::ThreeDistinct => SingularityClass::new(Label::D(4), None),
            CubicShape::LinearTimesSquare => {
                let (simple, repeated) = cubic.forms.clone().expect("factors");
                let p = coordinates_from_rows(field, &simple, &repeated)?;
                let moved = algebra::linear_substitute(&h, &p)?;
                let lead = moved.coeff_of(&[1, 2]);
                let inv = field.inv(&lead).expect("x*y^2 coefficient");
                let scale = vec![vec![inv, field.zero()], vec![field.zero(), field.one()]];
                let normal = algebra::affine_substitute(&moved, &scale, None);
                match dn_normalize(&normal, k) {
                    Some(Some(a)) => SingularityClass::new(Label::D(a + 1), None),
                    Some(None) => {
                        last = Some(k);
                        continue;
                    }
                    None => {
                        let mut c = SingularityClass::new(Label::Unclassified, None);
                        c.reason = Some("D-series normalization did not stabilize".into());
                        c
                    }
                }
            }
            CubicShape::SingleFactor => {
                if field.characteristic() == 3 {
                    let mut c = SingularityClass::new(Label::Unclassified, None);
                    c.reason = Some("cube initial form in characteristic 3".into());
                    c.cubic_shape = Some(cubic.shape);
                    return Ok(c);
                }
                let (l, _) = cubic.forms.clone().expect("factor");
                let comp = if field.is_zero(&l[1]) {
                    [field.zero(), field.one()]
                } else {
                    [field.one(), field.zero()]
                };
                let p = coordinates_from_rows(field, &comp, &l)?;
                let moved = algebra::linear_substitute(&h, &p)?;
                let nonzero = |e: [u16; 2]| !field.is_zero(&moved.coeff_of(&e));
                let label = if nonzero([4, 0]) {
                    Label::E6
                } else if nonzero([3, 1]) {
                    Label::E7
                } else if nonzero([5, 0]) {
                    Label::E8
                } else {
                    Label::NotDuVal
                };
                let mut c = SingularityClass::new(label.clone(), None);
                if label == Label::NotDuVal {
                    c.reason = Some("neither x^3*y nor x^5 survives in the cube normal form".into());
                }
                c
            }
        };
        c.cubic_shape = Some(cubic.shape);
        c.truncation = Some(k);
        return Ok(c);
    }
    if let Some(k) = last {
        let mut c = SingularityClass::new(Label::WhitneyType, None);
        c.cubic_shape = Some(CubicShape::LinearTimesSquare);
        c.truncation = Some(k);
        c.reason = Some(format!("x*y^2 normal form has no pure x term through degree {k}"));
        return Ok(c);
    }
    let mut c = SingularityClass::new(Label::NonNormalOther, None);
    c.truncation = Some(bound);
    c.reason = Some(format!("residual after splitting vanishes through degree {bound}"));
    Ok(c)
}

/// Brings `x*y^2 + ...` to `x*y^2 + a(x)` and returns `ord a`.
/// `Some(None)` when `a` vanishes to degree `k`; `None` if the iteration stalls.
fn dn_normalize<F: Field>(h: &Polynomial<F>, k: u32) -> Option<Option<u32>> {
    let ring = h.ring().clone();
    let field = ring.field().clone();
    let half = field.inv(&field.from_i64(2)).expect("characteristic not 2");
    let x = Polynomial::var(&ring, 0);
    let y = Polynomial::var(&ring, 1);
    let mut h = h.truncate(k);
    for _ in 0..(8 * k + 8) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut xs = Vec::new();
        for (m, c) in h.terms() {
            let (i, j) = (m.exp(0), m.exp(1));
            match j {
                0 => a.push((m.clone(), c.clone())),
                1 => b.push((algebra::Monomial::new([i - 1, 0]), field.mul(c, &half))),
                _ => xs.push((algebra::Monomial::new([i, j - 2]), c.clone())),
            }
        }
        let tail = &Polynomial::from_terms(&ring, xs) - &x;
        if !tail.is_zero() {
            h = compose_trunc(&h, &ring, &[&x - &tail, y.clone()], k);
            continue;
        }
        // b holds B(x) / (2x); every B term has x-degree at least 2.
        let beta = Polynomial::from_terms(&ring, b);
        if !beta.is_zero() {
            h = compose_trunc(&h, &ring, &[x.clone(), &y - &beta], k);
            continue;
        }
        return Some(order(&Polynomial::from_terms(&ring, a)));
    }
    None
}

/// Characteristic 2: matches `xy` and `z^2 + x*y^2 + y*z*g(x, y)` up to linear coordinate changes.
fn classify_char2<F: Field>(f: &Polynomial<F>) -> Result<SingularityClass, ClassifyError> {
    let field = f.field();
    let ring = f.ring().clone();
    let p = |s: &str| algebra::parse_poly(s, &ring).expect("fixed form");
    let xy = p("x*y");
    let base = p("z^2 + x*y^2");
    let entries: Vec<F::Elem> = vec![field.zero(), field.one()];
    for bits in 0u32..512 {
        let m: Matrix<F::Elem> = (0..3)
            .map(|i| (0..3).map(|j| entries[(bits >> (3 * i + j) & 1) as usize].clone()).collect())
            .collect();
        if field.is_zero(&linalg::determinant(field, &m)) {
            continue;
        }
        let g = algebra::linear_substitute(f, &m)?;
        if g == xy {
            return Ok(SingularityClass::new(Label::NormalCrossing, None));
        }
        if whitney_char2(&(&g - &base)) {
            return Ok(SingularityClass::new(Label::WhitneyType, None));
        }
    }
    let mut c = SingularityClass::new(Label::Unclassified, None);
    c.reason = Some("characteristic 2: not a recognized normal form".into());
    Ok(c)
}

/// `r = y*z*g(x, y)` with `g(0) = 0` and either `g = 0` or `g(x, 0) != 0`.
fn whitney_char2<F: Field>(r: &Polynomial<F>) -> bool {
    if r.is_zero() {
        return true;
    }
    let mut pure_x = false;
    for (m, _) in r.terms() {
        let e = m.exps();
        if e[1] < 1 || e[2] != 1 {
            return false;
        }
        if e[0] + e[1] - 1 == 0 {
            return false;
        }
        if e[1] == 1 {
            pure_x = true;
        }
    }
    pure_x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::field::{PrimeField, Rationals};

    fn label(e: &str) -> String {
        let r = Ring::with_vars(Rationals, &["x", "y", "z"]).unwrap();
        classify_surface_dp(&parse_poly(e, &r).unwrap()).unwrap().label.to_string()
    }

    #[test]
    fn diagonalization_is_congruence() {
        let r = Ring::with_vars(Rationals, &["x", "y", "z"]).unwrap();
        let q = parse_poly("x*y + y*z", &r).unwrap();
        let a = gram(&q);
        let (p, d) = diagonalize(&Rationals, &a);
        let pt = linalg::transpose(&p);
        let b = linalg::mat_mul(&Rationals, &linalg::mat_mul(&Rationals, &pt, &a), &p);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(Rationals.is_zero(&b[i][j]));
                }
            }
            assert_eq!(b[i][i], d[i]);
        }
        assert!(!Rationals.is_zero(&d[0]) && !Rationals.is_zero(&d[1]) && Rationals.is_zero(&d[2]));
    }

    #[test]
    fn ade_normal_forms() {
        assert_eq!(label("x^2+y^2+z^2"), "A1");
        assert_eq!(label("x^2+y^2+z^5"), "A4");
        assert_eq!(label("x*y+z^3"), "A2");
        assert_eq!(label("z^2+x^2*y+y^3"), "D4");
        assert_eq!(label("z^2+x^2*y+y^5"), "D6");
        assert_eq!(label("z^2+x^3+y^4"), "E6");
        assert_eq!(label("z^2+y^3+x^3*y"), "E7");
        assert_eq!(label("z^2+y^3+x^5"), "E8");
        assert_eq!(label("x*y"), "NormalCrossing");
        assert_eq!(label("z^2+x*y^2"), "WhitneyType");
        assert_eq!(label("z^2+x^3+y^6"), "NotDuVal");
        assert_eq!(label("x^3+y^3+z^3"), "NotDuVal");
        assert_eq!(label("x+y^2"), "Smooth");
        assert_eq!(label("z^2"), "NonNormal_other");
    }

    #[test]
    fn char_two_forms() {
        let r = Ring::with_vars(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        let l = |e: &str| classify_surface_dp(&parse_poly(e, &r).unwrap()).unwrap().label;
        assert_eq!(l("z^2+x*y^2"), Label::WhitneyType);
        assert_eq!(l("z^2+x*y^2+y*z*x"), Label::WhitneyType);
        assert_eq!(l("x*y"), Label::NormalCrossing);
        assert_eq!(l("(x+z)*y"), Label::NormalCrossing);
        assert_eq!(l("x^2+y^2+z^2+x*y*z"), Label::Unclassified);
        let t = tau_invariant(&parse_poly("x^2+y^2+z^2", &r).unwrap()).unwrap();
        assert_eq!(t.tau, 1);
    }
}

use std::sync::Arc;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{Ideal, Polynomial, Ring};
use crate::error::AlgebraError;
use crate::field::Field;

/// Lowest total degree of a term; `None` stands for infinity (the zero polynomial).
pub fn multiplicity_at_origin<F: Field>(f: &Polynomial<F>) -> Option<u32> {
    f.terms().iter().map(|(m, _)| m.degree()).min()
}

/// Sum of the terms of lowest total degree.
pub fn initial_form<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>, AlgebraError> {
    let mu = multiplicity_at_origin(f).ok_or(AlgebraError::ZeroPolynomial)?;
    Ok(f.homogeneous_part(mu))
}

/// Matrix of formal partial derivatives, one row per generator.
pub fn jacobian_matrix<F: Field>(ideal: &Ideal<F>) -> Vec<Vec<Polynomial<F>>> {
    ideal
        .gens()
        .iter()
        .map(|g| (0..ideal.arity()).map(|i| g.derivative(i)).collect())
        .collect()
}

/// Ideal of all `size x size` minors of the Jacobian matrix.
pub fn jacobian_minors<F: Field>(ideal: &Ideal<F>, size: usize) -> Result<Ideal<F>, AlgebraError> {
    let max = ideal.gens().len().min(ideal.arity());
    if size == 0 || size > max {
        return Err(AlgebraError::MinorSize { size, max });
    }
    let jac = jacobian_matrix(ideal);
    let rows = combinations(jac.len(), size);
    let cols = combinations(ideal.arity(), size);
    let mut minors = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            let sub: Vec<Vec<Polynomial<F>>> = r
                .iter()
                .map(|&i| c.iter().map(|&j| jac[i][j].clone()).collect())
                .collect();
            minors.push(poly_determinant(ideal.ring(), &sub));
        }
    }
    Ideal::new(ideal.ring(), minors)
}

fn poly_determinant<F: Field>(ring: &Arc<Ring<F>>, m: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial<F>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &poly_determinant(ring, &minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Jacobian matrix evaluated at a point.
pub fn jacobian_at<F: Field>(ideal: &Ideal<F>, point: &[F::Elem]) -> Matrix<F::Elem> {
    jacobian_matrix(ideal)
        .iter()
        .map(|row| row.iter().map(|p| p.eval(point)).collect())
        .collect()
}

pub fn jacobian_rank_at<F: Field>(ideal: &Ideal<F>, point: &[F::Elem]) -> usize {
    linalg::rank(ideal.ring().field(), &jacobian_at(ideal, point))
}

/// `f(P y)`: the variable `x_i` is replaced by `sum_j P[i][j] y_j`, in the same ring.
pub fn linear_substitute<F: Field>(
    f: &Polynomial<F>,
    matrix: &Matrix<F::Elem>,
) -> Result<Polynomial<F>, AlgebraError> {
    let n = f.ring().arity();
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::Arity {
            expected: n,
            got: matrix.len(),
        });
    }
    let field = f.field();
    if field.is_zero(&linalg::determinant(field, matrix)) {
        return Err(AlgebraError::SingularMatrix);
    }
    Ok(affine_substitute(f, matrix, None))
}

/// `f(P y + b)` without an invertibility check; used for cuts and translations.
pub fn affine_substitute<F: Field>(
    f: &Polynomial<F>,
    matrix: &Matrix<F::Elem>,
    shift: Option<&[F::Elem]>,
) -> Polynomial<F> {
    let ring = f.ring();
    let n = ring.arity();
    let images: Vec<Polynomial<F>> = (0..n)
        .map(|i| {
            let mut terms: Vec<_> = (0..n)
                .map(|j| (crate::algebra::Monomial::var(n, j), matrix[i][j].clone()))
                .collect();
            if let Some(b) = shift {
                terms.push((crate::algebra::Monomial::one(n), b[i].clone()));
            }
            Polynomial::from_terms(ring, terms)
        })
        .collect();
    f.substitute(ring, &images)
}

/// `f(x + p)`, moving the point `p` to the origin.
pub fn translate<F: Field>(f: &Polynomial<F>, point: &[F::Elem]) -> Polynomial<F> {
    let field = f.field();
    if point.iter().all(|c| field.is_zero(c)) {
        return f.clone();
    }
    let id = linalg::identity(field, f.ring().arity());
    affine_substitute(f, &id, Some(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn multiplicity_and_initial_form() {
        let r = Ring::with_vars(Rationals, &["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        assert_eq!(multiplicity_at_origin(&p("z^2 + x*y^2")), Some(2));
        assert_eq!(multiplicity_at_origin(&p("x^4+y^4+z^4")), Some(4));
        assert_eq!(multiplicity_at_origin(&Polynomial::zero(&r)), None);
        assert_eq!(initial_form(&p("z^2 + y^3 + x^5")).unwrap(), p("z^2"));
        assert_eq!(initial_form(&p("x*y + x^3")).unwrap(), p("x*y"));
        assert!(initial_form(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn minors() {
        let r = Ring::with_vars(Rationals, &["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, &["z^2 + x*y^2"]).unwrap();
        let j = jacobian_minors(&i, 1).unwrap();
        let expect: Vec<_> = ["y^2", "2*x*y", "2*z"]
            .iter()
            .map(|s| parse_poly(s, &r).unwrap())
            .collect();
        assert_eq!(j.gens(), &expect[..]);
        assert!(jacobian_minors(&i, 2).is_err());

        let f2 = PrimeField::new(2).unwrap();
        let r2 = Ring::with_vars(f2, &["x", "y", "z"]).unwrap();
        let i2 = Ideal::parse(&r2, &["x^2+y^2+z^2"]).unwrap();
        assert!(jacobian_minors(&i2, 1).unwrap().is_zero_ideal());
    }

    #[test]
    fn substitution() {
        let r = Ring::with_vars(Rationals, &["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let q = |v: i64| Rationals.from_i64(v);
        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(linear_substitute(&p("x*y"), &swap).unwrap(), p("x*y"));
        let shear = vec![vec![q(1), q(1)], vec![q(0), q(1)]];
        assert_eq!(linear_substitute(&p("x^2"), &shear).unwrap(), p("x^2+2*x*y+y^2"));
        let sing = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert_eq!(linear_substitute(&p("x"), &sing), Err(AlgebraError::SingularMatrix));
        assert_eq!(translate(&p("x*y"), &[q(1), q(0)]), p("x*y + y"));
    }
}

use std::fmt;

use crate::algebra::{univariate, Polynomial};
use crate::error::ClassifyError;
use crate::field::Field;

/// Factorization pattern of a binary cubic over the algebraic closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubicShape {
    ThreeDistinct,
    LinearTimesSquare,
    SingleFactor,
}

impl fmt::Display for CubicShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicShape::ThreeDistinct => "three_distinct",
            CubicShape::LinearTimesSquare => "linear_times_square",
            CubicShape::SingleFactor => "single_factor",
        })
    }
}

/// Linear form `a*x + b*y` as `[a, b]`.
pub(crate) type Linear<E> = [E; 2];

/// Shape plus the rational linear factors it determines: for
/// `LinearTimesSquare` the pair `(simple, repeated)`, for `SingleFactor` the
/// repeated form twice, for `ThreeDistinct` nothing.
pub(crate) struct CubicFactors<E> {
    pub shape: CubicShape,
    pub forms: Option<(Linear<E>, Linear<E>)>,
}

/// Shape of a homogeneous binary cubic in the two variables of its ring.
pub fn cubic_factor_shape<F: Field>(g: &Polynomial<F>) -> Result<CubicShape, ClassifyError> {
    Ok(cubic_factors(g)?.shape)
}

pub(crate) fn cubic_factors<F: Field>(g: &Polynomial<F>) -> Result<CubicFactors<F::Elem>, ClassifyError> {
    if g.ring().arity() != 2 || g.is_zero() || g.terms().iter().any(|(m, _)| m.degree() != 3) {
        return Err(ClassifyError::NotBinaryCubic);
    }
    let field = g.field();
    // c(t) = g(t, 1), lowest degree first.
    let mut dense: Vec<F::Elem> = (0..=3u16).map(|i| g.coeff_of(&[i, 3 - i])).collect();
    univariate::trim(field, &mut dense);
    let deg = univariate::degree(&dense).expect("nonzero cubic");
    let at_infinity = 3 - deg as u32;
    // Root t = r of c corresponds to the factor x - r*y; a root at infinity to y.
    let mut mults: Vec<u32> = Vec::new();
    let mut by_mult: Vec<(u32, Linear<F::Elem>)> = Vec::new();
    if at_infinity > 0 {
        mults.push(at_infinity);
        by_mult.push((at_infinity, [field.zero(), field.one()]));
    }
    for (fac, e) in univariate::squarefree_decomposition(field, &dense) {
        let d = univariate::degree(&fac).unwrap_or(0);
        mults.extend(std::iter::repeat(e).take(d));
        if d == 1 {
            by_mult.push((e, [fac[1].clone(), fac[0].clone()]));
        }
    }
    mults.sort_unstable();
    let pick = |e: u32| by_mult.iter().find(|(m, _)| *m == e).map(|(_, l)| l.clone());
    let shape = match mults.as_slice() {
        [1, 1, 1] => CubicShape::ThreeDistinct,
        [1, 2] => CubicShape::LinearTimesSquare,
        [3] => CubicShape::SingleFactor,
        other => unreachable!("multiplicities of a cubic sum to 3: {other:?}"),
    };
    let forms = match shape {
        CubicShape::ThreeDistinct => None,
        CubicShape::LinearTimesSquare => Some((pick(1).expect("simple"), pick(2).expect("repeated"))),
        CubicShape::SingleFactor => {
            let l = pick(3).expect("cube");
            Some((l.clone(), l))
        }
    };
    Ok(CubicFactors { shape, forms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Ring};
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn shapes() {
        let r = Ring::with_vars(Rationals, &["x", "y"]).unwrap();
        let s = |e: &str| cubic_factor_shape(&parse_poly(e, &r).unwrap()).unwrap();
        assert_eq!(s("x*y*(x+y)"), CubicShape::ThreeDistinct);
        assert_eq!(s("x*y^2"), CubicShape::LinearTimesSquare);
        assert_eq!(s("y^3"), CubicShape::SingleFactor);
        assert_eq!(s("x^3"), CubicShape::SingleFactor);
        assert_eq!(s("x^2*y"), CubicShape::LinearTimesSquare);
        assert_eq!(s("(x-2*y)^3"), CubicShape::SingleFactor);
        assert_eq!(s("x^3 + y^3"), CubicShape::ThreeDistinct);
        assert!(cubic_factor_shape(&parse_poly("x^2*y + x", &r).unwrap()).is_err());
    }

    #[test]
    fn char_three_cube() {
        let r = Ring::with_vars(PrimeField::new(3).unwrap(), &["x", "y"]).unwrap();
        let g = parse_poly("x^3 + 2*y^3", &r).unwrap();
        assert_eq!(cubic_factor_shape(&g).unwrap(), CubicShape::SingleFactor);
    }
}

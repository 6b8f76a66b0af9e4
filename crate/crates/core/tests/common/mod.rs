#![allow(dead_code)]

use std::sync::Arc;

use jetdisc::algebra::{parse_poly, Monomial, Polynomial, Ring};
use jetdisc::field::{Field, PrimeField, Rationals};
use jetdisc::mld::VarietyJob;
use proptest::prelude::*;

pub const SURFACE_CORPUS: [(&str, &str); 10] = [
    ("A1", "x^2+y^2+z^2"),
    ("A2", "x^2+y^2+z^3"),
    ("A3", "x^2+y^2+z^4"),
    ("D4", "z^2+x^2*y+y^3"),
    ("D5", "z^2+x^2*y+y^4"),
    ("E6", "z^2+x^3+y^4"),
    ("E7", "z^2+y^3+x^3*y"),
    ("E8", "z^2+y^3+x^5"),
    ("NormalCrossing", "x*y"),
    ("WhitneyType", "z^2+x*y^2"),
];

pub fn q3() -> Arc<Ring<Rationals>> {
    Ring::with_vars(Rationals, &["x", "y", "z"]).unwrap()
}

pub fn fp(p: u32, vars: &[&str]) -> Arc<Ring<PrimeField>> {
    Ring::with_vars(PrimeField::new(p).unwrap(), vars).unwrap()
}

pub fn poly<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> Polynomial<F> {
    parse_poly(s, ring).unwrap()
}

pub fn hyper<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> VarietyJob<F> {
    VarietyJob::hypersurface_at_origin(poly(ring, s)).unwrap()
}

/// Random sparse polynomial with small coefficients and exponents below `max_exp`.
pub fn arb_poly<F: Field>(ring: Arc<Ring<F>>, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Polynomial<F>> {
    let n = ring.arity();
    prop::collection::vec((prop::collection::vec(0..max_exp, n), -6i64..=6), 0..=max_terms).prop_map(move |terms| {
        let field = ring.field().clone();
        Polynomial::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::new(e), field.from_i64(c)))
                .collect::<Vec<_>>(),
        )
    })
}

//! Krull dimensions by Gröbner bases, with a point-counting cross-check.

mod count;
mod engine;
mod groebner;
mod krull;

pub use count::{count_points, counts_over, dim_from_counts, CountDim, DEFAULT_COUNT_BUDGET};
pub use engine::{
    dimension, krull_dim, krull_dim_unreduced, DimConfig, DimMethod, DimResult, OracleCheck,
    OracleMode,
};
pub use groebner::{groebner_basis, GroebnerBasis, GroebnerBudget, GroebnerStats, TermOrder};
pub use krull::{dim_from_leading_monomials, independent_set, min_hitting_set};

//! Mather–Jacobian minimal log discrepancies from truncated jet schemes,
//! with Du Val and compound Du Val classification.
//!
//! ```
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! use jetdisc::algebra::{parse_poly, Ring};
//! use jetdisc::dimension::DimConfig;
//! use jetdisc::field::PrimeField;
//! use jetdisc::mld::{mld_mj_estimate, Certificate, VarietyJob};
//!
//! let r = Ring::with_vars(PrimeField::new(32003)?, &["x", "y", "z"])?;
//! let job = VarietyJob::hypersurface_at_origin(parse_poly("z^2+y^3+x^5", &r)?)?;
//! let rep = mld_mj_estimate(&job, 5, &DimConfig::default())?;
//! assert_eq!(rep.estimate.to_string(), "1");
//! assert_eq!(rep.certificate, Certificate::ThresholdDMinus1);
//! # Ok(())
//! # }
//! ```

pub mod algebra;
pub mod classify;
pub mod dimension;
pub mod error;
pub mod field;
pub mod jets;
pub mod mld;

pub type QPoly = algebra::Polynomial<field::Rationals>;
pub type FpPoly = algebra::Polynomial<field::PrimeField>;
pub type QIdeal = algebra::Ideal<field::Rationals>;
pub type FpIdeal = algebra::Ideal<field::PrimeField>;

//! Surface double points and compound Du Val singularities.

mod cdv;
mod cubic;
mod series;
mod surface;

use std::fmt;

pub use cdv::{cdv_hyperplane_test, top_singularity_test, CdvReport, TopReport};
pub use cubic::{cubic_factor_shape, CubicShape};
pub use surface::{classify_surface_dp, tau_invariant, TauResult};

/// Classification verdict. `Display` gives the stable label strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Smooth,
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    NormalCrossing,
    WhitneyType,
    NonNormalOther,
    /// Compound Du Val point whose general section has the given label.
    Cdv(Box<Label>),
    NotDuVal,
    Unclassified,
}

impl Label {
    /// A, D or E.
    pub fn is_du_val(&self) -> bool {
        matches!(self, Label::A(_) | Label::D(_) | Label::E6 | Label::E7 | Label::E8)
    }

    /// Surface labels whose points have `mld = d - 1`.
    pub fn is_top(&self) -> bool {
        self.is_du_val() || matches!(self, Label::NormalCrossing | Label::WhitneyType)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Smooth => write!(f, "Smooth"),
            Label::A(n) => write!(f, "A{n}"),
            Label::D(n) => write!(f, "D{n}"),
            Label::E6 => write!(f, "E6"),
            Label::E7 => write!(f, "E7"),
            Label::E8 => write!(f, "E8"),
            Label::NormalCrossing => write!(f, "NormalCrossing"),
            Label::WhitneyType => write!(f, "WhitneyType"),
            Label::NonNormalOther => write!(f, "NonNormal_other"),
            Label::Cdv(l) => write!(f, "c{l}"),
            Label::NotDuVal => write!(f, "NotDuVal"),
            Label::Unclassified => write!(f, "Unclassified"),
        }
    }
}

/// A label with the invariants that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityClass {
    pub label: Label,
    /// `None` for the zero polynomial.
    pub multiplicity: Option<u32>,
    pub tau: Option<usize>,
    pub cubic_shape: Option<CubicShape>,
    /// Series truncation degree used for the normal form, when one was needed.
    pub truncation: Option<u32>,
    pub reason: Option<String>,
}

impl SingularityClass {
    fn new(label: Label, multiplicity: Option<u32>) -> Self {
        SingularityClass {
            label,
            multiplicity,
            tau: None,
            cubic_shape: None,
            truncation: None,
            reason: None,
        }
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

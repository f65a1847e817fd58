use serde::{Deserialize, Serialize};

/// Outcome of one numerically checked identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub id: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Bound::is_upper")]
    pub bound: Bound,
}

/// Whether `tolerance` caps the residual from above or is a floor for it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    #[default]
    Upper,
    Lower,
}

impl Bound {
    fn is_upper(&self) -> bool {
        *self == Bound::Upper
    }
}

impl RelationReport {
    pub fn new(id: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        RelationReport {
            id: id.into(),
            residual,
            tolerance,
            // NaN residuals fail
            pass: residual <= tolerance,
            bound: Bound::Upper,
        }
    }

    /// A check that passes when `value` reaches `floor` (convergence
    /// ratios, negative controls).
    pub fn at_least(id: impl Into<String>, value: f64, floor: f64) -> Self {
        RelationReport {
            id: id.into(),
            residual: value,
            tolerance: floor,
            pass: value >= floor,
            bound: Bound::Lower,
        }
    }
}

pub fn all_pass(reports: &[RelationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

pub fn max_residual(reports: &[RelationReport]) -> f64 {
    reports
        .iter()
        .filter(|r| r.bound == Bound::Upper)
        .map(|r| r.residual)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        assert!(RelationReport::new("a", 1e-13, 1e-12).pass);
        assert!(RelationReport::new("a", 1e-12, 1e-12).pass);
        assert!(!RelationReport::new("a", 2e-12, 1e-12).pass);
        assert!(!RelationReport::new("a", f64::NAN, 1e-12).pass);
        assert!(RelationReport::at_least("b", 9.0, 8.0).pass);
        assert!(!RelationReport::at_least("b", 7.0, 8.0).pass);
        assert!(!RelationReport::at_least("b", f64::NAN, 8.0).pass);
    }
}

//! Closed-form feasibility criteria for incidence problems: the Brill-Noether
//! number, Euler characteristics of the restricted tangent bundle and its
//! twist, the counting inequality, and the classification of higher twists.

use serde::{Deserialize, Serialize};

/// An incidence problem instance: degree `d`, genus `g`, target `P^r`, with an
/// optional point count `n` and twist magnitude `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Problem {
    pub d: i64,
    pub g: i64,
    pub r: i64,
    #[serde(default)]
    pub n: Option<i64>,
    #[serde(default)]
    pub k: Option<i64>,
}

impl Problem {
    pub fn new(d: i64, g: i64, r: i64) -> Self {
        Self { d, g, r, n: None, k: None }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.d < 1 || self.r < 1 || self.g < 0 {
            return Err(format!("invalid (d, g, r) = ({}, {}, {}): need d, r >= 1 and g >= 0", self.d, self.g, self.r));
        }
        if self.n.is_some_and(|n| n < 0) {
            return Err("point count n must be nonnegative".into());
        }
        if self.k.is_some_and(|k| k < 0) {
            return Err("twist magnitude k must be nonnegative".into());
        }
        Ok(())
    }
}

/// Brill-Noether number `rho(d, g, r) = (r+1)d - rg - r(r+1)`.
pub fn rho(d: i64, g: i64, r: i64) -> i64 {
    (r + 1) * d - r * g - r * (r + 1)
}

/// `chi(f^* T) = (r+1)d - rg + r`, the dimension of the space of degree-d maps
/// when `rho >= 0`.
pub fn chi_tangent(d: i64, g: i64, r: i64) -> i64 {
    (r + 1) * d - r * g + r
}

/// `chi(f^* T(-1)) = d - rg + r`.
pub fn chi_twisted(d: i64, g: i64, r: i64) -> i64 {
    d - r * g + r
}

/// Dimension `r(d + 1 - g)` of the space of maps sending a fixed degree-d
/// divisor into a hyperplane.
pub fn hyperplane_moduli_dim(d: i64, g: i64, r: i64) -> i64 {
    r * (d + 1 - g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailingCondition {
    /// `rho(d, g, r) < 0`: no nondegenerate degree-d maps at all.
    RhoNegative,
    /// `(r+1)d - rg + r - rn < 0`: more point conditions than moduli.
    CountingInequality,
    /// `d - rg - 1 < 0`: hyperplane-constrained variant cannot dominate.
    HyperplaneDegree,
    /// `n < d`: fewer points than the hyperplane constraint requires.
    InvalidInput,
}

/// Everything a downstream consumer needs: both characteristics, the slack of
/// each inequality, and the verdict, so JSON consumers never recompute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub n: i64,
    pub rho: i64,
    pub chi_tangent: i64,
    pub chi_twisted: i64,
    /// Largest `n` with a positive answer (given `rho >= 0`).
    pub max_n: i64,
    /// Slack of the counting inequality `(r+1)d - rg + r - rn`.
    pub counting_slack: i64,
    /// Slack `d - rg - 1` of the hyperplane condition (informational in the
    /// unconstrained report).
    pub hyperplane_slack: i64,
    pub feasible: bool,
    pub failing_condition: Option<FailingCondition>,
}

fn base_report(d: i64, g: i64, r: i64, n: i64) -> FeasibilityReport {
    let chi = chi_tangent(d, g, r);
    FeasibilityReport {
        d,
        g,
        r,
        n,
        rho: rho(d, g, r),
        chi_tangent: chi,
        chi_twisted: chi_twisted(d, g, r),
        max_n: chi.div_euclid(r),
        counting_slack: chi - r * n,
        hyperplane_slack: d - r * g - 1,
        feasible: false,
        failing_condition: None,
    }
}

/// Existence of a nondegenerate degree-d map through n general points:
/// feasible iff `rho >= 0` and `(r+1)d - rg + r - rn >= 0`. Absent `n` is
/// treated as `n = 0` (pure existence).
pub fn feasibility_unconstrained(d: i64, g: i64, r: i64, n: Option<i64>) -> FeasibilityReport {
    let n = n.unwrap_or(0);
    let mut rep = base_report(d, g, r, n);
    rep.failing_condition = if rep.rho < 0 {
        Some(FailingCondition::RhoNegative)
    } else if rep.counting_slack < 0 {
        Some(FailingCondition::CountingInequality)
    } else {
        None
    };
    rep.feasible = rep.failing_condition.is_none();
    rep
}

/// Variant with the first `d` of the `n` points constrained to a hyperplane:
/// additionally requires `d - rg - 1 >= 0`, and `n >= d` to make sense.
pub fn feasibility_hyperplane(d: i64, g: i64, r: i64, n: i64) -> FeasibilityReport {
    let mut rep = base_report(d, g, r, n);
    rep.failing_condition = if n < d {
        Some(FailingCondition::InvalidInput)
    } else if rep.rho < 0 {
        Some(FailingCondition::RhoNegative)
    } else if rep.counting_slack < 0 {
        Some(FailingCondition::CountingInequality)
    } else if rep.hyperplane_slack < 0 {
        Some(FailingCondition::HyperplaneDegree)
    } else {
        None
    };
    rep.feasible = rep.failing_condition.is_none();
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistClass {
    Satisfies,
    Fails,
    OutOfScope,
}

/// Whether `f^* T(-k)` satisfies interpolation for a general map.
///
/// For `k >= 3` it never does; for `k = 2` exactly when `(g, r) = (0, 1)` or
/// `(d, g, r) = (2, 0, 2)`. For `k <= 1`: `k = 0`
/// always holds (given `rho >= 0`), `k = 1` holds iff `d - rg - 1 >= 0`.
pub fn twist_classification(d: i64, g: i64, r: i64, k: i64) -> TwistClass {
    if rho(d, g, r) < 0 {
        // no general nondegenerate maps to classify
        return TwistClass::OutOfScope;
    }
    match k {
        0 => TwistClass::Satisfies,
        1 => {
            if d - r * g - 1 >= 0 {
                TwistClass::Satisfies
            } else {
                TwistClass::Fails
            }
        }
        2 => {
            if (g, r) == (0, 1) || (d, g, r) == (2, 0, 2) {
                TwistClass::Satisfies
            } else {
                TwistClass::Fails
            }
        }
        _ => TwistClass::Fails,
    }
}

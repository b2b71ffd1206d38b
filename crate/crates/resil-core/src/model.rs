//! Poisson-rate event models and their closed-form resilience metrics.
//!
//! An [`EventModel`] couples a total tracked quantity `n_c` with a
//! constant-rate outage phase on `[0, o_b]` and one of three restore-time
//! models starting at `r_a`.  The mean cumulative outage and restore
//! curves are `Ō(t) = n_c·F_o(t)` and `R̄(t) = n_c·F_r(t)`, and the mean
//! performance curve is `P̄(t) = R̄(t) − Ō(t)`.
//!
//! The headline metrics all have closed forms:
//!
//! * area `Ā = n_c·(r̄ − ō)` — tracked-quantity·hours of unserved service;
//! * nadir `N̄ = −min_t P̄(t)` — the deepest mean simultaneous outage,
//!   found by a small case analysis per restore variant;
//! * restore durations (`D_n`, `D_95`, `D_GM`) and the event duration.
//!
//! Every closed form is double-checked: [`EventModel::area_numeric`]
//! re-derives the area by adaptive quadrature, and [`MetricsReport`]
//! carries both values plus their discrepancy so results are
//! self-auditing.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{self, improper_integrate, NumericsError, Tolerance};

/// `√(2π)`, used by the lognormal density and the stationary-point
/// discriminant.
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Quantile at which improper integrals over restore densities are
/// truncated.
const TRUNCATION_QUANTILE: f64 = 1.0 - 1e-12;

/// Errors from model construction and evaluation.
#[derive(Debug, Error)]
pub enum ModelError {
    /// A model parameter violates its constraint.
    #[error("invalid {field}: {reason}, got {value}")]
    InvalidParameter {
        /// Parameter name as it appears in the model schema.
        field: &'static str,
        /// The rejected value.
        value: f64,
        /// Which constraint failed.
        reason: &'static str,
    },
    /// Evaluation time was negative, NaN, or infinite.
    #[error("time must be nonnegative and finite, got {t}")]
    InvalidTime {
        /// The rejected time.
        t: f64,
    },
    /// An operation specific to one restore variant was called on another.
    #[error("operation requires a {expected} restore model, got {actual}")]
    VariantMismatch {
        /// Required variant.
        expected: &'static str,
        /// Variant actually present.
        actual: &'static str,
    },
    /// A quantile was requested outside `[0, 1)`.
    #[error("quantile probability must lie in [0, 1), got {value}")]
    QuantileOutOfRange {
        /// The rejected probability.
        value: f64,
    },
    /// A numeric cross-check failed to converge or was misused.
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Constant-rate outage phase: outages accrue uniformly over `[0, o_b]`.
///
/// The outage rate `λ_O = n_c/o_b` is derived on demand, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageModel {
    o_b: f64,
}

impl OutageModel {
    /// Builds the outage phase; `o_b` is the time outages end, in hours.
    pub fn new(o_b: f64) -> Result<Self, ModelError> {
        if !o_b.is_finite() || o_b <= 0.0 {
            return Err(ModelError::InvalidParameter {
                field: "o_b",
                value: o_b,
                reason: "must be positive and finite",
            });
        }
        Ok(Self { o_b })
    }

    /// End of the outage phase, hours.
    pub fn o_b(&self) -> f64 {
        self.o_b
    }

    /// Mean outage time `ō = o_b/2`.
    pub fn mean_outage_time(&self) -> f64 {
        0.5 * self.o_b
    }

    /// Fraction of outages that have occurred by `t` (assumes `t ≥ 0`).
    fn fraction_outaged(&self, t: f64) -> f64 {
        if t >= self.o_b {
            1.0
        } else {
            t / self.o_b
        }
    }
}

/// Restore-time model: when the outaged quantity comes back.
///
/// All variants share `r_a`, the time of the first possible restore.
/// Invariants (`r_a ≥ 0`, `r_b > r_a`, `sigma > 0`, `tau > 0`) are
/// enforced by [`EventModel::new`] and by the checked constructors below;
/// the variants stay matchable for callers that need per-variant logic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RestoreModel {
    /// Constant restore rate `λ_R = n_c/(r_b − r_a)` over `[r_a, r_b]`.
    Constant {
        /// First restore time, hours.
        r_a: f64,
        /// Last restore time, hours.
        r_b: f64,
    },
    /// Restore delays `t − r_a` are lognormal with log-mean `mu` and
    /// log-standard-deviation `sigma` (both in ln-hours).
    Lognormal {
        /// First restore time, hours.
        r_a: f64,
        /// Mean of the log restore delay.
        mu: f64,
        /// Standard deviation of the log restore delay.
        sigma: f64,
    },
    /// Restore delays are exponential with mean `tau` hours.
    Exponential {
        /// First restore time, hours.
        r_a: f64,
        /// Mean restore delay, hours.
        tau: f64,
    },
}

impl RestoreModel {
    /// Checked constructor for the constant-rate variant.
    pub fn constant(r_a: f64, r_b: f64) -> Result<Self, ModelError> {
        let model = Self::Constant { r_a, r_b };
        model.validate()?;
        Ok(model)
    }

    /// Checked constructor for the lognormal variant.
    pub fn lognormal(r_a: f64, mu: f64, sigma: f64) -> Result<Self, ModelError> {
        let model = Self::Lognormal { r_a, mu, sigma };
        model.validate()?;
        Ok(model)
    }

    /// Checked constructor for the exponential variant.
    pub fn exponential(r_a: f64, tau: f64) -> Result<Self, ModelError> {
        let model = Self::Exponential { r_a, tau };
        model.validate()?;
        Ok(model)
    }

    pub(crate) fn validate(&self) -> Result<(), ModelError> {
        let r_a = self.r_a();
        if !r_a.is_finite() || r_a < 0.0 {
            return Err(ModelError::InvalidParameter {
                field: "r_a",
                value: r_a,
                reason: "must be nonnegative and finite",
            });
        }
        match *self {
            Self::Constant { r_a, r_b } => {
                if !r_b.is_finite() || r_b <= r_a {
                    return Err(ModelError::InvalidParameter {
                        field: "r_b",
                        value: r_b,
                        reason: "must be finite and greater than r_a",
                    });
                }
            }
            Self::Lognormal { mu, sigma, .. } => {
                if !mu.is_finite() {
                    return Err(ModelError::InvalidParameter {
                        field: "mu",
                        value: mu,
                        reason: "must be finite",
                    });
                }
                if !sigma.is_finite() || sigma <= 0.0 {
                    return Err(ModelError::InvalidParameter {
                        field: "sigma",
                        value: sigma,
                        reason: "must be positive and finite",
                    });
                }
            }
            Self::Exponential { tau, .. } => {
                if !tau.is_finite() || tau <= 0.0 {
                    return Err(ModelError::InvalidParameter {
                        field: "tau",
                        value: tau,
                        reason: "must be positive and finite",
                    });
                }
            }
        }
        Ok(())
    }

    /// Time of the first possible restore, hours.
    pub fn r_a(&self) -> f64 {
        match *self {
            Self::Constant { r_a, .. }
            | Self::Lognormal { r_a, .. }
            | Self::Exponential { r_a, .. } => r_a,
        }
    }

    /// Variant name for error messages and reports.
    pub fn variant_name(&self) -> &'static str {
        match self {
            Self::Constant { .. } => "constant",
            Self::Lognormal { .. } => "lognormal",
            Self::Exponential { .. } => "exponential",
        }
    }

    /// Fraction of the quantity restored by `t`: the restore-time CDF.
    /// Zero for `t ≤ r_a`; approaches 1 as `t → ∞` (reaches it at `r_b`
    /// for the constant variant).
    pub fn cdf(&self, t: f64) -> f64 {
        match *self {
            Self::Constant { r_a, r_b } => {
                if t <= r_a {
                    0.0
                } else if t >= r_b {
                    1.0
                } else {
                    (t - r_a) / (r_b - r_a)
                }
            }
            Self::Lognormal { r_a, mu, sigma } => {
                if t <= r_a {
                    0.0
                } else {
                    numerics::phi(((t - r_a).ln() - mu) / sigma)
                }
            }
            Self::Exponential { r_a, tau } => {
                if t <= r_a {
                    0.0
                } else {
                    -(-(t - r_a) / tau).exp_m1()
                }
            }
        }
    }

    /// Restore-time probability density `f_r(t) = λ_R(t)/n_c`.
    pub fn density(&self, t: f64) -> f64 {
        match *self {
            Self::Constant { r_a, r_b } => {
                if t < r_a || t > r_b {
                    0.0
                } else {
                    1.0 / (r_b - r_a)
                }
            }
            Self::Lognormal { r_a, mu, sigma } => {
                let delay = t - r_a;
                if delay <= 0.0 {
                    0.0
                } else {
                    let z = (delay.ln() - mu) / sigma;
                    (-0.5 * z * z).exp() / (delay * sigma * SQRT_2PI)
                }
            }
            Self::Exponential { r_a, tau } => {
                if t < r_a {
                    0.0
                } else {
                    (-(t - r_a) / tau).exp() / tau
                }
            }
        }
    }

    /// Restore-time quantile: the time by which fraction `q` of the
    /// quantity is restored.
    ///
    /// # Errors
    /// [`ModelError::QuantileOutOfRange`] unless `0 ≤ q < 1`.
    pub fn quantile(&self, q: f64) -> Result<f64, ModelError> {
        if !q.is_finite() || !(0.0..1.0).contains(&q) {
            return Err(ModelError::QuantileOutOfRange { value: q });
        }
        Ok(self.quantile_unchecked(q))
    }

    fn quantile_unchecked(&self, q: f64) -> f64 {
        match *self {
            Self::Constant { r_a, r_b } => r_a + q * (r_b - r_a),
            Self::Lognormal { r_a, mu, sigma } => {
                if q == 0.0 {
                    r_a
                } else {
                    r_a + (mu + sigma * numerics::phi_inv(q)).exp()
                }
            }
            Self::Exponential { r_a, tau } => r_a - tau * (-q).ln_1p(),
        }
    }

    /// Mean restore time `r̄`: `½(r_a + r_b)`, `r_a + e^{μ+σ²/2}`, or
    /// `r_a + τ` by variant.
    pub fn mean_restore_time(&self) -> f64 {
        match *self {
            Self::Constant { r_a, r_b } => 0.5 * (r_a + r_b),
            Self::Lognormal { r_a, mu, sigma } => r_a + (mu + 0.5 * sigma * sigma).exp(),
            Self::Exponential { r_a, tau } => r_a + tau,
        }
    }

    /// Truncation point for improper integrals over this model: the exact
    /// end of support for the constant variant, the `1 − 1e-12` quantile
    /// otherwise.
    pub fn truncation_time(&self) -> f64 {
        match *self {
            Self::Constant { r_b, .. } => r_b,
            _ => self.quantile_unchecked(TRUNCATION_QUANTILE),
        }
    }
}

/// Where the mean performance curve attains its nadir.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NadirLocation {
    /// Unique minimizing time.
    AtTime {
        /// Minimizing time, hours.
        t: f64,
    },
    /// The curve is flat at the nadir over a whole interval.
    OnInterval {
        /// Start of the flat stretch, hours.
        t_lo: f64,
        /// End of the flat stretch, hours.
        t_hi: f64,
    },
}

/// One candidate time examined during the nadir case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NadirCandidate {
    /// Candidate time, hours.
    pub t: f64,
    /// Mean performance `P̄(t)` there.
    pub performance: f64,
}

/// The nadir `N̄ = −min_t P̄(t)` with its location and the candidate
/// evaluations that determined it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NadirResult {
    /// Depth of the deepest mean excursion; `0 ≤ value ≤ n_c`.
    pub value: f64,
    /// Where the minimum is attained.
    pub location: NadirLocation,
    /// Candidate times evaluated, in ascending time order.
    pub candidates: Vec<NadirCandidate>,
}

impl NadirResult {
    /// Earliest time at which the nadir is attained.
    pub fn earliest_time(&self) -> f64 {
        match self.location {
            NadirLocation::AtTime { t } => t,
            NadirLocation::OnInterval { t_lo, .. } => t_lo,
        }
    }
}

/// Everything the model computes about one event, in one record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    /// Closed-form area `Ā = n_c(r̄ − ō)`, quantity·hours.
    pub area: f64,
    /// Nadir depth and location.
    pub nadir: NadirResult,
    /// Mean outage time `ō`, hours.
    pub mean_outage_time: f64,
    /// Mean restore time `r̄`, hours.
    pub mean_restore_time: f64,
    /// Named restore durations plus `event_duration`, hours.
    pub durations: BTreeMap<&'static str, f64>,
    /// Area re-derived by adaptive quadrature, quantity·hours.
    pub area_numeric: f64,
    /// `|area − area_numeric|` — the self-audit residual.
    pub area_discrepancy: f64,
}

/// A complete outage/restore event model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventModel {
    n_c: f64,
    outage: OutageModel,
    restore: RestoreModel,
}

impl EventModel {
    /// Builds and fully validates an event model.
    ///
    /// `n_c` is the event total of whatever is tracked (outage count,
    /// customers, MVA); any positive real is accepted.
    pub fn new(n_c: f64, outage: OutageModel, restore: RestoreModel) -> Result<Self, ModelError> {
        if !n_c.is_finite() || n_c <= 0.0 {
            return Err(ModelError::InvalidParameter {
                field: "n_c",
                value: n_c,
                reason: "must be positive and finite",
            });
        }
        restore.validate()?;
        let r_bar = restore.mean_restore_time();
        if !r_bar.is_finite() {
            return Err(ModelError::InvalidParameter {
                field: "mu",
                value: r_bar,
                reason: "mean restore time overflows f64 (mu + sigma^2/2 too large)",
            });
        }
        Ok(Self {
            n_c,
            outage,
            restore,
        })
    }

    /// Event total of the tracked quantity.
    pub fn n_c(&self) -> f64 {
        self.n_c
    }

    /// The outage phase.
    pub fn outage(&self) -> OutageModel {
        self.outage
    }

    /// The restore model.
    pub fn restore(&self) -> RestoreModel {
        self.restore
    }

    fn check_time(t: f64) -> Result<(), ModelError> {
        if !t.is_finite() || t < 0.0 {
            return Err(ModelError::InvalidTime { t });
        }
        Ok(())
    }

    pub(crate) fn outages_unchecked(&self, t: f64) -> f64 {
        self.n_c * self.outage.fraction_outaged(t)
    }

    pub(crate) fn restores_unchecked(&self, t: f64) -> f64 {
        self.n_c * self.restore.cdf(t)
    }

    pub(crate) fn performance_unchecked(&self, t: f64) -> f64 {
        self.restores_unchecked(t) - self.outages_unchecked(t)
    }

    /// Mean cumulative outages `Ō(t) = min(n_c, n_c·t/o_b)`.
    ///
    /// # Errors
    /// [`ModelError::InvalidTime`] for negative or non-finite `t`.
    pub fn mean_cum_outages(&self, t: f64) -> Result<f64, ModelError> {
        Self::check_time(t)?;
        Ok(self.outages_unchecked(t))
    }

    /// Mean cumulative restores `R̄(t) = n_c·F_r(t)`.
    ///
    /// # Errors
    /// [`ModelError::InvalidTime`] for negative or non-finite `t`.
    pub fn mean_cum_restores(&self, t: f64) -> Result<f64, ModelError> {
        Self::check_time(t)?;
        Ok(self.restores_unchecked(t))
    }

    /// Mean performance `P̄(t) = R̄(t) − Ō(t)`.
    ///
    /// # Errors
    /// [`ModelError::InvalidTime`] for negative or non-finite `t`.
    pub fn mean_performance(&self, t: f64) -> Result<f64, ModelError> {
        Self::check_time(t)?;
        Ok(self.performance_unchecked(t))
    }

    /// Closed-form area `Ā = n_c·(r̄ − ō)`.
    ///
    /// Computed literally as the mean-time identity, which coincides with
    /// the per-variant printed forms
    /// `n_c(½(r_a+r_b) − ½o_b)`, `n_c(r_a + e^{μ+σ²/2} − o_b/2)`, and
    /// `n_c(r_a + τ − o_b/2)`.
    pub fn area_closed_form(&self) -> f64 {
        self.n_c * (self.restore.mean_restore_time() - self.outage.mean_outage_time())
    }

    /// Upper limit used for numeric integration and grid search:
    /// `max(o_b, restore truncation time)`.
    pub fn truncation_time(&self) -> f64 {
        self.outage.o_b.max(self.restore.truncation_time())
    }

    /// Area re-derived as the improper integral of `Ō(t) − R̄(t)` from 0,
    /// truncated per the numerics policy.
    ///
    /// The integration runs piecewise between the curve breakpoints
    /// (`r_a`, `o_b`, `r_b`) so each panel is smooth.
    ///
    /// # Errors
    /// [`ModelError::Numerics`] if the quadrature fails to converge.
    pub fn area_numeric(&self, tol: Tolerance) -> Result<f64, ModelError> {
        let upper = self.truncation_time();
        let mut cuts = vec![0.0, self.restore.r_a(), self.outage.o_b];
        if let RestoreModel::Constant { r_b, .. } = self.restore {
            cuts.push(r_b);
        }
        cuts.push(upper);
        cuts.retain(|&t| t <= upper);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let deficit = |t: f64| self.outages_unchecked(t) - self.restores_unchecked(t);
        let mut total = 0.0;
        for pair in cuts.windows(2) {
            total += improper_integrate(deficit, pair[0], pair[1], tol)?;
        }
        Ok(total)
    }

    /// The nadir `N̄` with its location, by the per-variant case analysis.
    ///
    /// When `r_a ≥ o_b` (everything fails before anything restores) the
    /// nadir is exactly `n_c` over `[o_b, r_a]`.  Otherwise each variant
    /// contributes a small candidate set — `{r_a, o_b}` plus the `r_b`
    /// kink (constant) or the stationary point `t_*` (lognormal) — and the
    /// deepest candidate wins, earliest first on ties.
    pub fn nadir(&self) -> NadirResult {
        let o_b = self.outage.o_b;
        let r_a = self.restore.r_a();
        if r_a >= o_b {
            let candidates = if r_a == o_b {
                vec![NadirCandidate {
                    t: o_b,
                    performance: -self.n_c,
                }]
            } else {
                vec![
                    NadirCandidate {
                        t: o_b,
                        performance: -self.n_c,
                    },
                    NadirCandidate {
                        t: r_a,
                        performance: -self.n_c,
                    },
                ]
            };
            let location = if r_a == o_b {
                NadirLocation::AtTime { t: o_b }
            } else {
                NadirLocation::OnInterval {
                    t_lo: o_b,
                    t_hi: r_a,
                }
            };
            return NadirResult {
                value: self.n_c,
                location,
                candidates,
            };
        }

        match self.restore {
            RestoreModel::Constant { r_a, r_b } => {
                // Equal rates (λ_R = λ_O ⟺ r_b − r_a = o_b): P̄ is flat on
                // [r_a, o_b].
                if r_b - r_a == o_b {
                    let at_start = self.performance_unchecked(r_a);
                    let at_end = self.performance_unchecked(o_b);
                    return NadirResult {
                        value: normalized_depth(at_start),
                        location: NadirLocation::OnInterval {
                            t_lo: r_a,
                            t_hi: o_b,
                        },
                        candidates: vec![
                            NadirCandidate {
                                t: r_a,
                                performance: at_start,
                            },
                            NadirCandidate {
                                t: o_b,
                                performance: at_end,
                            },
                        ],
                    };
                }
                // Strict cases, including r_b < o_b where the restore
                // window closes while outages continue: evaluate the
                // endpoints plus the r_b kink and take the minimum.
                let mut times = vec![r_a];
                if r_a < r_b && r_b < o_b {
                    times.push(r_b);
                }
                times.push(o_b);
                self.deepest_candidate(&times)
            }
            RestoreModel::Lognormal { .. } => {
                let mut times = Vec::with_capacity(2);
                if let Some(t_star) = self.lognormal_stationary_time_inner() {
                    if (r_a..=o_b).contains(&t_star) {
                        times.push(t_star);
                    }
                }
                times.push(o_b);
                self.deepest_candidate(&times)
            }
            RestoreModel::Exponential { .. } => self.deepest_candidate(&[r_a, o_b]),
        }
    }

    /// Evaluates `P̄` at each candidate time (ascending) and returns the
    /// deepest, earliest first on ties.
    fn deepest_candidate(&self, times: &[f64]) -> NadirResult {
        let candidates: Vec<NadirCandidate> = times
            .iter()
            .map(|&t| NadirCandidate {
                t,
                performance: self.performance_unchecked(t),
            })
            .collect();
        let mut best = candidates[0];
        for c in &candidates[1..] {
            if c.performance < best.performance {
                best = *c;
            }
        }
        NadirResult {
            value: normalized_depth(best.performance),
            location: NadirLocation::AtTime { t: best.t },
            candidates,
        }
    }

    fn lognormal_stationary_time_inner(&self) -> Option<f64> {
        let RestoreModel::Lognormal { r_a, mu, sigma } = self.restore else {
            return None;
        };
        let o_b = self.outage.o_b;
        let discriminant = sigma * sigma - 2.0 * mu - 2.0 * (sigma * SQRT_2PI / o_b).ln();
        if discriminant < 0.0 {
            return None;
        }
        Some(r_a + (mu - sigma * sigma - sigma * discriminant.sqrt()).exp())
    }

    /// Stationary point `t_*` of `P̄` for lognormal restores: the root of
    /// `f_r(t_*) = 1/o_b` selected by
    /// `t_* = r_a + exp[μ − σ² − σ√(σ² − 2μ − 2 ln(σ√(2π)/o_b))]`.
    ///
    /// Returns `None` when the discriminant is negative (no stationary
    /// point); a discriminant of exactly zero counts as present.
    ///
    /// # Errors
    /// [`ModelError::VariantMismatch`] for non-lognormal restores.
    pub fn lognormal_stationary_time(&self) -> Result<Option<f64>, ModelError> {
        if !matches!(self.restore, RestoreModel::Lognormal { .. }) {
            return Err(ModelError::VariantMismatch {
                expected: "lognormal",
                actual: self.restore.variant_name(),
            });
        }
        Ok(self.lognormal_stationary_time_inner())
    }

    /// Named restore durations, plus `event_duration = r_a + restore
    /// duration` for every variant.
    ///
    /// Keys: `D_n` (constant), `D_95_ln` and `D_GM` (lognormal),
    /// `D_95_exp` (exponential), `event_duration` (always).
    pub fn restore_durations(&self) -> BTreeMap<&'static str, f64> {
        let mut out = BTreeMap::new();
        let r_a = self.restore.r_a();
        match self.restore {
            RestoreModel::Constant { r_a: _, r_b } => {
                let d_n = r_b - r_a;
                out.insert("D_n", d_n);
                out.insert("event_duration", r_a + d_n);
            }
            RestoreModel::Lognormal { mu, sigma, .. } => {
                let d_95 = (mu + sigma * numerics::phi_inv(0.95)).exp();
                out.insert("D_95_ln", d_95);
                out.insert("D_GM", mu.exp());
                out.insert("event_duration", r_a + d_95);
            }
            RestoreModel::Exponential { tau, .. } => {
                let d_95 = tau * 20.0_f64.ln();
                out.insert("D_95_exp", d_95);
                out.insert("event_duration", r_a + d_95);
            }
        }
        out
    }

    /// Computes the full [`MetricsReport`].
    ///
    /// # Errors
    /// [`ModelError::Numerics`] if the quadrature cross-check fails to
    /// converge.
    pub fn metrics(&self, tol: Tolerance) -> Result<MetricsReport, ModelError> {
        let area = self.area_closed_form();
        let area_numeric = self.area_numeric(tol)?;
        Ok(MetricsReport {
            area,
            nadir: self.nadir(),
            mean_outage_time: self.outage.mean_outage_time(),
            mean_restore_time: self.restore.mean_restore_time(),
            durations: self.restore_durations(),
            area_numeric,
            area_discrepancy: (area - area_numeric).abs(),
        })
    }
}

/// `−performance` as a depth, with `−0.0` normalized to `0.0`.
fn normalized_depth(performance: f64) -> f64 {
    if performance == 0.0 {
        0.0
    } else {
        -performance
    }
}

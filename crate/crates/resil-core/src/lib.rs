//! Resilience metrics for outage/restore events.
//!
//! All times are decimal hours.
//!
//! # Modules
//!
//! * [`numerics`] — special functions (`Φ`, `Φ⁻¹`) and adaptive
//!   Gauss–Kronrod quadrature used by everything above.
//! * [`model`] — the analytic event model: a fleet of `n_c` quantities
//!   fails uniformly over an outage window and each recovers after a
//!   random restore delay (constant, lognormal, or exponential).  Mean
//!   cumulative outages `Ō(t)` and restores `R̄(t)` give the mean
//!   performance deficit `P̄(t) = R̄(t) − Ō(t)`, whose area, nadir, and
//!   restore durations are the headline resilience metrics.
//! * [`empirical`] — the same metrics computed directly from recorded
//!   outage data (CSV), via exact step-curve identities.
//! * [`montecarlo`] — a seeded, parallel simulator that replays the model
//!   as random events; used as an independent check on the closed forms.

pub mod empirical;
pub mod model;
pub mod montecarlo;
pub mod numerics;

pub use empirical::{EmpiricalError, EmpiricalEvent, EmpiricalMetrics, OutageRecord, StepCurve};
pub use model::{
    EventModel, MetricsReport, ModelError, NadirLocation, NadirResult, OutageModel, RestoreModel,
};
pub use montecarlo::{
    AreaEstimate, CurveEstimate, QuantityModel, RealizedEvent, SimulationConfig, SimulationError,
};
pub use numerics::{NumericsError, Tolerance};

//! Seeded Monte Carlo simulation of the analytic event model.
//!
//! Each realization draws `n` independent (outage time, restore time,
//! quantity) triples from the model — outage times uniform on the outage
//! window, restore delays from the configured restore law — and treats
//! them as one concrete event.  Averaging the realized performance
//! curves and areas over many realizations gives unbiased estimates of
//! the model's mean curves, so the simulator doubles as an independent
//! check on the closed-form metrics.
//!
//! # Determinism
//!
//! Realization `j` always uses its own counter-based RNG stream derived
//! from `(seed, j)`, and per-chunk partial sums are merged in chunk
//! order.  Results are therefore bit-identical across runs and across
//! thread counts, even though chunks execute in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::model::{EventModel, RestoreModel};

/// Realizations per parallel work unit.  Partial sums are merged in
/// chunk order, so this only affects scheduling, never results.
const CHUNK: usize = 256;

/// Errors from simulation configuration.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimulationError {
    /// At least one realization is required.
    #[error("realizations must be at least 1")]
    NoRealizations,
    /// The evaluation grid must be finite, nonnegative, and sorted.
    #[error("grid must be finite, nonnegative, and nondecreasing (offending index {index})")]
    InvalidGrid {
        /// First offending grid index.
        index: usize,
    },
    /// The quantity model is unusable.
    #[error("invalid quantity model: {reason}")]
    InvalidQuantityModel {
        /// Which constraint failed.
        reason: &'static str,
    },
}

/// How per-outage quantities are drawn.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum QuantityModel {
    /// Every outage loses the same quantity.
    Constant(f64),
    /// Quantities drawn uniformly (with replacement) from a sample list.
    SampleList(Vec<f64>),
}

impl QuantityModel {
    fn validate(&self) -> Result<(), SimulationError> {
        match self {
            QuantityModel::Constant(c) => {
                if !c.is_finite() || *c <= 0.0 {
                    return Err(SimulationError::InvalidQuantityModel {
                        reason: "constant quantity must be positive and finite",
                    });
                }
            }
            QuantityModel::SampleList(samples) => {
                if samples.is_empty() {
                    return Err(SimulationError::InvalidQuantityModel {
                        reason: "sample list must be nonempty",
                    });
                }
                if samples.iter().any(|c| !c.is_finite() || *c <= 0.0) {
                    return Err(SimulationError::InvalidQuantityModel {
                        reason: "sample quantities must be positive and finite",
                    });
                }
            }
        }
        Ok(())
    }

    /// Mean quantity `c̄` of one draw.
    pub fn mean(&self) -> f64 {
        match self {
            QuantityModel::Constant(c) => *c,
            QuantityModel::SampleList(samples) => {
                samples.iter().sum::<f64>() / samples.len() as f64
            }
        }
    }
}

/// A validated simulation run: how many realizations, which seed, where
/// to evaluate curves, and how to draw quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationConfig {
    realizations: usize,
    seed: u64,
    grid: Vec<f64>,
    quantity_model: QuantityModel,
}

impl SimulationConfig {
    /// Builds a validated configuration.
    ///
    /// # Errors
    /// Rejects zero realizations, an unsorted/negative/non-finite grid,
    /// and a degenerate quantity model.
    pub fn new(
        realizations: usize,
        seed: u64,
        grid: Vec<f64>,
        quantity_model: QuantityModel,
    ) -> Result<Self, SimulationError> {
        if realizations == 0 {
            return Err(SimulationError::NoRealizations);
        }
        for (index, &t) in grid.iter().enumerate() {
            let sorted = index == 0 || grid[index - 1] <= t;
            if !t.is_finite() || t < 0.0 || !sorted {
                return Err(SimulationError::InvalidGrid { index });
            }
        }
        quantity_model.validate()?;
        Ok(Self {
            realizations,
            seed,
            grid,
            quantity_model,
        })
    }

    /// Number of realizations `M`.
    pub fn realizations(&self) -> usize {
        self.realizations
    }

    /// Base seed; realization `j` uses stream `j` of this seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Curve evaluation grid, hours.
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Quantity model.
    pub fn quantity_model(&self) -> &QuantityModel {
        &self.quantity_model
    }
}

/// An evenly spaced grid of `steps + 1` points from 0 to `t_max`.
pub fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    (0..=steps)
        .map(|k| t_max * k as f64 / steps as f64)
        .collect()
}

/// Number of outages per realization: the model's `n_c` divided by the
/// mean quantity per outage, rounded, and at least 1.
pub fn default_event_size(model: &EventModel, quantity_model: &QuantityModel) -> usize {
    let n = (model.n_c() / quantity_model.mean()).round();
    (n.max(1.0)) as usize
}

/// One simulated event: parallel arrays of outage times, restore times,
/// and quantities (entry `i` of each belongs to the same outage).
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedEvent {
    outage_times: Vec<f64>,
    restore_times: Vec<f64>,
    quantities: Vec<f64>,
}

impl RealizedEvent {
    /// Number of outages in this realization.
    pub fn n(&self) -> usize {
        self.outage_times.len()
    }

    /// Outage times, in generation order.
    pub fn outage_times(&self) -> &[f64] {
        &self.outage_times
    }

    /// Restore times, in generation order.
    pub fn restore_times(&self) -> &[f64] {
        &self.restore_times
    }

    /// Outaged quantities, in generation order.
    pub fn quantities(&self) -> &[f64] {
        &self.quantities
    }

    /// Realized performance deficit at `t`:
    /// `Σ q_i·[restore_i ≤ t] − Σ q_i·[outage_i ≤ t]` (right-continuous).
    pub fn performance_at(&self, t: f64) -> f64 {
        let mut restored = 0.0;
        let mut outaged = 0.0;
        for i in 0..self.n() {
            if self.restore_times[i] <= t {
                restored += self.quantities[i];
            }
            if self.outage_times[i] <= t {
                outaged += self.quantities[i];
            }
        }
        restored - outaged
    }

    /// Realized area `Σ q_i·(restore_i − outage_i)`.
    pub fn area(&self) -> f64 {
        (0..self.n())
            .map(|i| self.quantities[i] * (self.restore_times[i] - self.outage_times[i]))
            .sum()
    }

    /// Minimum of the realized performance step function (≤ 0; the curve
    /// is 0 before the first outage).  Jumps at identical timestamps are
    /// applied together before the level is examined.
    pub fn min_performance(&self) -> f64 {
        let mut jumps: Vec<(f64, f64)> = Vec::with_capacity(2 * self.n());
        for i in 0..self.n() {
            jumps.push((self.outage_times[i], -self.quantities[i]));
            jumps.push((self.restore_times[i], self.quantities[i]));
        }
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut level = 0.0;
        let mut min = 0.0;
        let mut i = 0;
        while i < jumps.len() {
            let t = jumps[i].0;
            while i < jumps.len() && jumps[i].0 == t {
                level += jumps[i].1;
                i += 1;
            }
            if level < min {
                min = level;
            }
        }
        min
    }
}

/// Draws one realized event of `n` outages from `model`, in a fixed
/// order (all outages, then all restores, then all quantities) so that a
/// given RNG stream always yields the same event.
pub fn sample_event(
    model: &EventModel,
    n: usize,
    quantity_model: &QuantityModel,
    rng: &mut impl Rng,
) -> RealizedEvent {
    let o_b = model.outage().o_b();
    let outage_times: Vec<f64> = (0..n).map(|_| o_b * rng.random::<f64>()).collect();
    let restore = model.restore();
    let restore_times: Vec<f64> = (0..n).map(|_| sample_restore(restore, rng)).collect();
    let quantities: Vec<f64> = match quantity_model {
        QuantityModel::Constant(c) => vec![*c; n],
        QuantityModel::SampleList(samples) => (0..n)
            .map(|_| samples[rng.random_range(0..samples.len())])
            .collect(),
    };
    RealizedEvent {
        outage_times,
        restore_times,
        quantities,
    }
}

fn sample_restore(restore: RestoreModel, rng: &mut impl Rng) -> f64 {
    match restore {
        RestoreModel::Constant { r_a, r_b } => r_a + (r_b - r_a) * rng.random::<f64>(),
        RestoreModel::Lognormal { r_a, mu, sigma } => {
            let z: f64 = rng.sample(StandardNormal);
            r_a + (mu + sigma * z).exp()
        }
        RestoreModel::Exponential { r_a, tau } => {
            // 1 − U ∈ (0, 1], so the log is finite.
            r_a - tau * (1.0 - rng.random::<f64>()).ln()
        }
    }
}

/// Monte Carlo estimate of the mean area.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaEstimate {
    /// Sample mean of the realized areas.
    pub mean: f64,
    /// Standard error of the mean (`None` for a single realization).
    pub stderr: Option<f64>,
    /// Realizations used.
    pub realizations: usize,
    /// Outages per realization.
    pub event_size: usize,
}

/// Monte Carlo estimate of the mean performance curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveEstimate {
    /// Evaluation grid, hours.
    pub grid: Vec<f64>,
    /// Sample mean of the realized performance at each grid point.
    pub mean: Vec<f64>,
    /// Standard errors of the means (`None` for a single realization).
    pub stderr: Option<Vec<f64>>,
    /// Realizations used.
    pub realizations: usize,
    /// Outages per realization.
    pub event_size: usize,
    /// Mean over realizations of the realized event's deepest deficit
    /// (−min of the step curve).  Always at least the depth of the mean
    /// curve, by Jensen's inequality.
    pub mean_min_depth: f64,
    /// Fraction of (realization, grid point) pairs with performance
    /// strictly above zero.
    pub positive_fraction: f64,
}

fn rng_for(seed: u64, realization: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(realization);
    rng
}

struct AreaPartial {
    sum: f64,
    sum_sq: f64,
}

/// Estimates the mean area over `config.realizations()` events.
pub fn estimate_mean_area(model: &EventModel, config: &SimulationConfig) -> AreaEstimate {
    let m = config.realizations();
    let event_size = default_event_size(model, config.quantity_model());
    let chunks = m.div_ceil(CHUNK);
    let partials: Vec<AreaPartial> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for j in chunk * CHUNK..((chunk + 1) * CHUNK).min(m) {
                let mut rng = rng_for(config.seed(), j as u64);
                let event = sample_event(model, event_size, config.quantity_model(), &mut rng);
                let area = event.area();
                sum += area;
                sum_sq += area * area;
            }
            AreaPartial { sum, sum_sq }
        })
        .collect();

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for p in &partials {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    let mean = sum / m as f64;
    AreaEstimate {
        mean,
        stderr: stderr_of_mean(sum_sq, mean, m),
        realizations: m,
        event_size,
    }
}

struct CurvePartial {
    sums: Vec<f64>,
    sums_sq: Vec<f64>,
    min_depth_sum: f64,
    positive_count: u64,
}

/// Estimates the mean performance curve on `config.grid()`.
pub fn estimate_mean_curve(model: &EventModel, config: &SimulationConfig) -> CurveEstimate {
    let m = config.realizations();
    let grid = config.grid();
    let event_size = default_event_size(model, config.quantity_model());
    let chunks = m.div_ceil(CHUNK);
    let partials: Vec<CurvePartial> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut partial = CurvePartial {
                sums: vec![0.0; grid.len()],
                sums_sq: vec![0.0; grid.len()],
                min_depth_sum: 0.0,
                positive_count: 0,
            };
            for j in chunk * CHUNK..((chunk + 1) * CHUNK).min(m) {
                let mut rng = rng_for(config.seed(), j as u64);
                let event = sample_event(model, event_size, config.quantity_model(), &mut rng);
                partial.min_depth_sum += -event.min_performance();
                for (g, &t) in grid.iter().enumerate() {
                    let p = event.performance_at(t);
                    partial.sums[g] += p;
                    partial.sums_sq[g] += p * p;
                    if p > 0.0 {
                        partial.positive_count += 1;
                    }
                }
            }
            partial
        })
        .collect();

    let mut sums = vec![0.0; grid.len()];
    let mut sums_sq = vec![0.0; grid.len()];
    let mut min_depth_sum = 0.0;
    let mut positive_count = 0u64;
    for p in &partials {
        for g in 0..grid.len() {
            sums[g] += p.sums[g];
            sums_sq[g] += p.sums_sq[g];
        }
        min_depth_sum += p.min_depth_sum;
        positive_count += p.positive_count;
    }

    let mean: Vec<f64> = sums.iter().map(|s| s / m as f64).collect();
    let stderr = if m >= 2 {
        Some(
            mean.iter()
                .zip(&sums_sq)
                .map(|(&mu, &sq)| stderr_of_mean(sq, mu, m).expect("m >= 2"))
                .collect(),
        )
    } else {
        None
    };
    let samples = m as u64 * grid.len() as u64;
    CurveEstimate {
        grid: grid.to_vec(),
        mean,
        stderr,
        realizations: m,
        event_size,
        mean_min_depth: min_depth_sum / m as f64,
        positive_fraction: if samples == 0 {
            0.0
        } else {
            positive_count as f64 / samples as f64
        },
    }
}

/// Standard error of the mean from raw sums; `None` when `m < 2`.  The
/// variance is clamped at zero to absorb cancellation when all samples
/// are (nearly) identical.
fn stderr_of_mean(sum_sq: f64, mean: f64, m: usize) -> Option<f64> {
    if m < 2 {
        return None;
    }
    let m_f = m as f64;
    let variance = ((sum_sq - m_f * mean * mean) / (m_f - 1.0)).max(0.0);
    Some((variance / m_f).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OutageModel;

    fn model(n_c: f64, restore: RestoreModel) -> EventModel {
        EventModel::new(n_c, OutageModel::new(2.5).unwrap(), restore).unwrap()
    }

    fn lognormal_model() -> EventModel {
        model(14.0, RestoreModel::lognormal(0.52, 1.64, 1.56).unwrap())
    }

    #[test]
    fn config_validation() {
        let qm = QuantityModel::Constant(1.0);
        assert_eq!(
            SimulationConfig::new(0, 1, vec![], qm.clone()).unwrap_err(),
            SimulationError::NoRealizations
        );
        assert_eq!(
            SimulationConfig::new(1, 1, vec![0.0, -1.0], qm.clone()).unwrap_err(),
            SimulationError::InvalidGrid { index: 1 }
        );
        assert_eq!(
            SimulationConfig::new(1, 1, vec![2.0, 1.0], qm.clone()).unwrap_err(),
            SimulationError::InvalidGrid { index: 1 }
        );
        assert_eq!(
            SimulationConfig::new(1, 1, vec![f64::NAN], qm.clone()).unwrap_err(),
            SimulationError::InvalidGrid { index: 0 }
        );
        assert!(matches!(
            SimulationConfig::new(1, 1, vec![], QuantityModel::Constant(0.0)).unwrap_err(),
            SimulationError::InvalidQuantityModel { .. }
        ));
        assert!(matches!(
            SimulationConfig::new(1, 1, vec![], QuantityModel::SampleList(vec![])).unwrap_err(),
            SimulationError::InvalidQuantityModel { .. }
        ));
        assert!(SimulationConfig::new(1, 1, vec![0.0, 0.0, 1.0], qm).is_ok());
    }

    #[test]
    fn quantity_model_means() {
        assert_eq!(QuantityModel::Constant(2.5).mean(), 2.5);
        assert_eq!(
            QuantityModel::SampleList(vec![0.5, 1.0, 1.5]).mean(),
            1.0
        );
    }

    #[test]
    fn event_size_rule() {
        let m = lognormal_model();
        assert_eq!(default_event_size(&m, &QuantityModel::Constant(1.0)), 14);
        assert_eq!(default_event_size(&m, &QuantityModel::Constant(2.0)), 7);
        // Rounding, then the floor at 1.
        assert_eq!(default_event_size(&m, &QuantityModel::Constant(4.0)), 4);
        assert_eq!(default_event_size(&m, &QuantityModel::Constant(100.0)), 1);
    }

    #[test]
    fn uniform_grid_spans_zero_to_t_max() {
        let g = uniform_grid(10.0, 4);
        assert_eq!(g, vec![0.0, 2.5, 5.0, 7.5, 10.0]);
    }

    #[test]
    fn samples_lie_in_their_supports() {
        let m = model(8.0, RestoreModel::constant(1.0, 3.0).unwrap());
        let mut rng = rng_for(7, 0);
        let event = sample_event(&m, 1000, &QuantityModel::Constant(1.0), &mut rng);
        for &t in event.outage_times() {
            assert!((0.0..2.5).contains(&t));
        }
        for &t in event.restore_times() {
            assert!((1.0..3.0).contains(&t));
        }

        let m = model(8.0, RestoreModel::exponential(0.5, 2.0).unwrap());
        let event = sample_event(&m, 1000, &QuantityModel::Constant(1.0), &mut rng);
        for &t in event.restore_times() {
            assert!(t >= 0.5);
        }
    }

    #[test]
    fn tiny_sigma_concentrates_at_median() {
        let m = model(8.0, RestoreModel::lognormal(0.5, 1.0, 1e-8).unwrap());
        let mut rng = rng_for(3, 0);
        let event = sample_event(&m, 1000, &QuantityModel::Constant(1.0), &mut rng);
        let center = 0.5 + 1.0f64.exp();
        for &t in event.restore_times() {
            assert!((t - center).abs() < 1e-6, "restore {t} far from {center}");
        }
    }

    #[test]
    fn sample_list_quantities_come_from_the_list() {
        let m = lognormal_model();
        let qm = QuantityModel::SampleList(vec![0.5, 1.0, 1.5]);
        let mut rng = rng_for(11, 0);
        let event = sample_event(&m, 500, &qm, &mut rng);
        for &q in event.quantities() {
            assert!(q == 0.5 || q == 1.0 || q == 1.5, "unexpected quantity {q}");
        }
    }

    #[test]
    fn realized_event_step_function() {
        // Build via sampling a degenerate model to keep fields private:
        // constant restore on a zero-width window gives deterministic
        // times, so the step function is fully known.
        let m = EventModel::new(
            2.0,
            OutageModel::new(1e-12).unwrap(),
            RestoreModel::constant(4.0, 4.0 + 1e-12).unwrap(),
        )
        .unwrap();
        let mut rng = rng_for(1, 0);
        let event = sample_event(&m, 2, &QuantityModel::Constant(1.0), &mut rng);
        // Both outages happen within [0, 1e-12), both restores within
        // [4, 4 + 1e-12): at t = 1 everything is out, at t = 5 restored.
        assert_eq!(event.performance_at(-1.0), 0.0);
        assert_eq!(event.performance_at(1.0), -2.0);
        assert_eq!(event.performance_at(5.0), 0.0);
        assert_eq!(event.min_performance(), -2.0);
        let area = event.area();
        assert!((area - 8.0).abs() < 1e-9, "area {area}");
    }

    #[test]
    fn min_performance_merges_simultaneous_jumps() {
        // Force exactly coincident times through a zero-width restore
        // window starting at 0 with a zero-width outage window: every
        // outage and restore lands at (essentially) the same instant and
        // the minimum must still be computed after netting jumps.
        let m = EventModel::new(
            3.0,
            OutageModel::new(f64::MIN_POSITIVE).unwrap(),
            RestoreModel::constant(0.0, f64::MIN_POSITIVE).unwrap(),
        )
        .unwrap();
        let mut rng = rng_for(5, 0);
        let event = sample_event(&m, 3, &QuantityModel::Constant(1.0), &mut rng);
        // All times are ~0 but not exactly tied; minimum is between -3
        // and 0 regardless.
        let min = event.min_performance();
        assert!((-3.0..=0.0).contains(&min));
    }

    #[test]
    fn estimates_are_deterministic_across_runs_and_thread_counts() {
        let m = lognormal_model();
        let config = SimulationConfig::new(
            1000,
            42,
            uniform_grid(20.0, 16),
            QuantityModel::Constant(1.0),
        )
        .unwrap();

        let curve_a = estimate_mean_curve(&m, &config);
        let curve_b = estimate_mean_curve(&m, &config);
        assert_eq!(curve_a, curve_b);

        let area_a = estimate_mean_area(&m, &config);
        let area_b = estimate_mean_area(&m, &config);
        assert_eq!(area_a, area_b);

        // A single-threaded pool must reproduce the default pool's
        // result bit for bit.
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let curve_serial = pool.install(|| estimate_mean_curve(&m, &config));
        let area_serial = pool.install(|| estimate_mean_area(&m, &config));
        assert_eq!(curve_a, curve_serial);
        assert_eq!(area_a, area_serial);
    }

    #[test]
    fn changing_the_seed_changes_the_estimate() {
        let m = lognormal_model();
        let grid = uniform_grid(20.0, 8);
        let a = estimate_mean_area(
            &m,
            &SimulationConfig::new(200, 1, grid.clone(), QuantityModel::Constant(1.0)).unwrap(),
        );
        let b = estimate_mean_area(
            &m,
            &SimulationConfig::new(200, 2, grid, QuantityModel::Constant(1.0)).unwrap(),
        );
        assert_ne!(a.mean, b.mean);
    }

    #[test]
    fn single_realization_has_no_stderr() {
        let m = lognormal_model();
        let config =
            SimulationConfig::new(1, 9, uniform_grid(10.0, 4), QuantityModel::Constant(1.0))
                .unwrap();
        let area = estimate_mean_area(&m, &config);
        assert_eq!(area.realizations, 1);
        assert!(area.stderr.is_none());
        let curve = estimate_mean_curve(&m, &config);
        assert!(curve.stderr.is_none());
    }

    #[test]
    fn area_estimate_brackets_closed_form() {
        let m = lognormal_model();
        let config = SimulationConfig::new(
            20_000,
            2024,
            vec![],
            QuantityModel::Constant(1.0),
        )
        .unwrap();
        let est = estimate_mean_area(&m, &config);
        let closed = m.area_closed_form();
        let stderr = est.stderr.unwrap();
        assert!(stderr > 0.0);
        let z = (est.mean - closed) / stderr;
        assert!(z.abs() <= 4.0, "z = {z}: mean {} vs closed {closed}", est.mean);
    }

    #[test]
    fn area_estimate_with_sampled_quantities_brackets_closed_form() {
        // Mean quantity is exactly 1, so n = n_c exactly and the
        // realized mean area is an unbiased estimate of the closed form.
        let m = model(12.0, RestoreModel::exponential(0.5, 2.0).unwrap());
        let qm = QuantityModel::SampleList(vec![0.5, 1.0, 1.5]);
        let config = SimulationConfig::new(20_000, 7, vec![], qm).unwrap();
        let est = estimate_mean_area(&m, &config);
        assert_eq!(est.event_size, 12);
        let closed = m.area_closed_form();
        let z = (est.mean - closed) / est.stderr.unwrap();
        assert!(z.abs() <= 4.0, "z = {z}");
    }

    #[test]
    fn curve_estimate_brackets_analytic_curve() {
        let m = lognormal_model();
        let grid = uniform_grid(25.0, 24);
        let config =
            SimulationConfig::new(20_000, 99, grid.clone(), QuantityModel::Constant(1.0)).unwrap();
        let est = estimate_mean_curve(&m, &config);
        let stderr = est.stderr.as_ref().unwrap();
        for (g, &t) in grid.iter().enumerate() {
            let analytic = m.mean_performance(t).unwrap();
            let diff = (est.mean[g] - analytic).abs();
            assert!(
                diff <= 4.0 * stderr[g] + 1e-12,
                "t = {t}: mean {} vs analytic {analytic} (stderr {})",
                est.mean[g],
                stderr[g]
            );
        }
        // At t = 0 nothing has happened yet in any realization.
        assert_eq!(est.mean[0], 0.0);
        assert_eq!(stderr[0], 0.0);
    }

    #[test]
    fn mean_min_depth_dominates_mean_curve_depth() {
        // E[min P] ≤ min E[P] pointwise, so the mean of per-realization
        // depths is at least the depth of the mean curve.
        let m = lognormal_model();
        let grid = uniform_grid(25.0, 200);
        let config =
            SimulationConfig::new(5_000, 3, grid, QuantityModel::Constant(1.0)).unwrap();
        let est = estimate_mean_curve(&m, &config);
        let curve_depth = -est.mean.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(
            est.mean_min_depth + 1e-9 * m.n_c() >= curve_depth,
            "mean min depth {} vs curve depth {curve_depth}",
            est.mean_min_depth
        );
        assert!(est.positive_fraction >= 0.0 && est.positive_fraction <= 1.0);
    }

    #[test]
    fn lognormal_samples_pass_kolmogorov_smirnov() {
        let m = lognormal_model();
        let mut rng = rng_for(123, 0);
        let event = sample_event(&m, 10_000, &QuantityModel::Constant(1.0), &mut rng);
        let mut restores = event.restore_times().to_vec();
        restores.sort_by(f64::total_cmp);
        let n = restores.len() as f64;
        let mut d: f64 = 0.0;
        for (i, &t) in restores.iter().enumerate() {
            let cdf = m.restore().cdf(t);
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            d = d.max((cdf - lo).abs()).max((hi - cdf).abs());
        }
        // 99.9% two-sided critical value 1.95/√n.
        assert!(d < 1.95 / n.sqrt(), "KS statistic {d}");
    }

    #[test]
    fn outage_samples_pass_kolmogorov_smirnov() {
        let m = lognormal_model();
        let mut rng = rng_for(321, 0);
        let event = sample_event(&m, 10_000, &QuantityModel::Constant(1.0), &mut rng);
        let mut outages = event.outage_times().to_vec();
        outages.sort_by(f64::total_cmp);
        let n = outages.len() as f64;
        let o_b = m.outage().o_b();
        let mut d: f64 = 0.0;
        for (i, &t) in outages.iter().enumerate() {
            let cdf = (t / o_b).clamp(0.0, 1.0);
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            d = d.max((cdf - lo).abs()).max((hi - cdf).abs());
        }
        assert!(d < 1.95 / n.sqrt(), "KS statistic {d}");
    }
}

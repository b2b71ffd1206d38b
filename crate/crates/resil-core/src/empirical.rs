//! Empirical analysis of recorded outage/restore data.
//!
//! One event is a set of records, each pairing an outage time with the
//! same component's restore time and an outaged quantity.  Sorting the
//! outage times and the restore times independently induces the
//! permutation `π` ("which outage restores i-th"), and the event's area
//! can be computed two provably-equal ways:
//!
//! * pairwise — `Σ c_{π(i)}·r_i − Σ c_i·o_i` over the sorted times;
//! * per-record — `Σ c_i·ρ_i` with repair times `ρ_i = restore − outage`.
//!
//! The cumulative outage/restore curves are right-continuous step
//! functions; the performance curve `P = R − O` starts and ends at zero
//! and its deepest step value is the empirical nadir.
//!
//! Times are relative decimal hours (no calendar parsing); the quantity
//! column is optional in CSV input and defaults to 1, which makes the
//! curves track outage counts.

use std::fs::File;
use std::io::{self, Read};
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

/// Errors from record validation and CSV ingestion.
#[derive(Debug, Error)]
pub enum EmpiricalError {
    /// Could not read the input at all.
    #[error("failed to read event data: {0}")]
    Io(#[from] io::Error),
    /// The CSV header is not the documented schema.
    #[error(
        "unexpected CSV header `{found}`: expected \
         `component_id,outage_time,restore_time` with optional `quantity`"
    )]
    Header {
        /// Header actually found.
        found: String,
    },
    /// A row could not be parsed.
    #[error("line {line}: {message}")]
    Malformed {
        /// 1-based line number in the input.
        line: u64,
        /// What went wrong.
        message: String,
    },
    /// No data rows.
    #[error("empty event: no data rows")]
    Empty,
    /// A record claims to restore before it fails.
    #[error(
        "component {component_id}: restore time {restore_time} precedes \
         outage time {outage_time}"
    )]
    RestoreBeforeOutage {
        /// Offending component.
        component_id: String,
        /// Its outage time.
        outage_time: f64,
        /// Its (earlier) restore time.
        restore_time: f64,
    },
    /// A record field violates its constraint.
    #[error("component {component_id}: {field} must be {requirement}, got {value}")]
    InvalidField {
        /// Offending component.
        component_id: String,
        /// Field name.
        field: &'static str,
        /// The rejected value.
        value: f64,
        /// Which constraint failed.
        requirement: &'static str,
    },
    /// A record-level error with the CSV line it came from.
    #[error("line {line}: {source}")]
    AtLine {
        /// 1-based line number in the input.
        line: u64,
        /// The underlying record error.
        #[source]
        source: Box<EmpiricalError>,
    },
    /// `area_uniform` was called with a non-positive mean quantity.
    #[error("c_bar must be positive and finite, got {value}")]
    InvalidCBar {
        /// The rejected value.
        value: f64,
    },
}

/// One component's outage: when it failed, when it came back, how much
/// was lost.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutageRecord {
    component_id: String,
    outage_time: f64,
    restore_time: f64,
    quantity: f64,
}

impl OutageRecord {
    /// Builds a validated record.  Times are relative hours and may be
    /// negative; the restore must not precede the outage and the quantity
    /// must be positive.
    pub fn new(
        component_id: impl Into<String>,
        outage_time: f64,
        restore_time: f64,
        quantity: f64,
    ) -> Result<Self, EmpiricalError> {
        let component_id = component_id.into();
        for (field, value) in [("outage_time", outage_time), ("restore_time", restore_time)] {
            if !value.is_finite() {
                return Err(EmpiricalError::InvalidField {
                    component_id,
                    field,
                    value,
                    requirement: "finite",
                });
            }
        }
        if !quantity.is_finite() || quantity <= 0.0 {
            return Err(EmpiricalError::InvalidField {
                component_id,
                field: "quantity",
                value: quantity,
                requirement: "positive and finite",
            });
        }
        if restore_time < outage_time {
            return Err(EmpiricalError::RestoreBeforeOutage {
                component_id,
                outage_time,
                restore_time,
            });
        }
        Ok(Self {
            component_id,
            outage_time,
            restore_time,
            quantity,
        })
    }

    /// Component identifier (opaque).
    pub fn component_id(&self) -> &str {
        &self.component_id
    }

    /// Outage time, hours.
    pub fn outage_time(&self) -> f64 {
        self.outage_time
    }

    /// Restore time, hours.
    pub fn restore_time(&self) -> f64 {
        self.restore_time
    }

    /// Outaged quantity `c_i` (count, customers, MVA).
    pub fn quantity(&self) -> f64 {
        self.quantity
    }

    /// Repair time `ρ_i = restore_time − outage_time ≥ 0`.
    pub fn repair_time(&self) -> f64 {
        self.restore_time - self.outage_time
    }
}

/// A right-continuous step function given by `(time, value-from-then-on)`
/// breakpoints with strictly increasing times; zero before the first
/// breakpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepCurve {
    breakpoints: Vec<(f64, f64)>,
}

impl StepCurve {
    /// Builds the curve from signed jumps; jumps at identical timestamps
    /// are merged into one breakpoint carrying the net jump.
    fn from_jumps(mut jumps: Vec<(f64, f64)>) -> Self {
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut breakpoints: Vec<(f64, f64)> = Vec::new();
        let mut level = 0.0;
        let mut i = 0;
        while i < jumps.len() {
            let t = jumps[i].0;
            let mut net = 0.0;
            while i < jumps.len() && jumps[i].0 == t {
                net += jumps[i].1;
                i += 1;
            }
            level += net;
            breakpoints.push((t, level));
        }
        Self { breakpoints }
    }

    /// The `(time, value)` breakpoints, ascending in time.
    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// Value at `t` (right-continuous; zero before the first breakpoint).
    pub fn value_at(&self, t: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&(bt, _)| bt <= t);
        if idx == 0 {
            0.0
        } else {
            self.breakpoints[idx - 1].1
        }
    }

    /// Value after the final breakpoint.
    pub fn final_value(&self) -> f64 {
        self.breakpoints.last().map_or(0.0, |&(_, v)| v)
    }

    /// Exact integral of the step function over `[from, to]`.
    pub fn integrate(&self, from: f64, to: f64) -> f64 {
        if to <= from {
            return 0.0;
        }
        let mut total = 0.0;
        for (k, &(t, v)) in self.breakpoints.iter().enumerate() {
            let seg_start = t.max(from);
            let seg_end = self
                .breakpoints
                .get(k + 1)
                .map_or(to, |&(next, _)| next.min(to));
            if seg_end > seg_start {
                total += v * (seg_end - seg_start);
            }
        }
        total
    }
}

/// A validated empirical event: records sorted by outage time, with the
/// restoration permutation `π` precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalEvent {
    /// Sorted by outage time (stable, so input order breaks ties).
    records: Vec<OutageRecord>,
    /// `restore_order[i]` = index into `records` of the i-th restore;
    /// this is `π` with 0-based indices.  Ties in restore time are broken
    /// by outage order.
    restore_order: Vec<usize>,
}

impl EmpiricalEvent {
    /// Builds an event from validated records (at least one).
    pub fn new(mut records: Vec<OutageRecord>) -> Result<Self, EmpiricalError> {
        if records.is_empty() {
            return Err(EmpiricalError::Empty);
        }
        records.sort_by(|a, b| a.outage_time.total_cmp(&b.outage_time));
        let mut restore_order: Vec<usize> = (0..records.len()).collect();
        restore_order.sort_by(|&i, &j| records[i].restore_time.total_cmp(&records[j].restore_time));
        Ok(Self {
            records,
            restore_order,
        })
    }

    /// Loads an event from CSV text with header
    /// `component_id,outage_time,restore_time[,quantity]`.
    ///
    /// An absent quantity column defaults every record to 1 (count
    /// tracking).  Errors carry 1-based line numbers.
    pub fn from_csv_reader(reader: impl Read) -> Result<Self, EmpiricalError> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);

        let headers = csv_reader
            .headers()
            .map_err(|e| csv_error_to_empirical(&e))?
            .clone();
        let columns: Vec<&str> = headers.iter().collect();
        let has_quantity = match columns.as_slice() {
            [] | [""] => return Err(EmpiricalError::Empty),
            ["component_id", "outage_time", "restore_time"] => false,
            ["component_id", "outage_time", "restore_time", "quantity"] => true,
            _ => {
                return Err(EmpiricalError::Header {
                    found: columns.join(","),
                })
            }
        };

        let mut records = Vec::new();
        let mut raw = csv::StringRecord::new();
        loop {
            let line = csv_reader.position().line();
            match csv_reader.read_record(&mut raw) {
                Ok(false) => break,
                Ok(true) => {}
                Err(e) => return Err(csv_error_to_empirical(&e)),
            }
            let field = |idx: usize, name: &'static str| -> Result<f64, EmpiricalError> {
                let text = raw.get(idx).unwrap_or("");
                text.parse::<f64>().map_err(|_| EmpiricalError::Malformed {
                    line,
                    message: format!("{name} `{text}` is not a number"),
                })
            };
            let component_id = raw.get(0).unwrap_or("").to_string();
            let outage_time = field(1, "outage_time")?;
            let restore_time = field(2, "restore_time")?;
            let quantity = if has_quantity {
                field(3, "quantity")?
            } else {
                1.0
            };
            let record = OutageRecord::new(component_id, outage_time, restore_time, quantity)
                .map_err(|e| EmpiricalError::AtLine {
                    line,
                    source: Box::new(e),
                })?;
            records.push(record);
        }
        Self::new(records)
    }

    /// Loads an event from a CSV file.
    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self, EmpiricalError> {
        Self::from_csv_reader(File::open(path)?)
    }

    /// Number of records `n`.
    pub fn n(&self) -> usize {
        self.records.len()
    }

    /// Records, sorted by outage time.
    pub fn records(&self) -> &[OutageRecord] {
        &self.records
    }

    /// Total outaged quantity `Σ c_i`.
    pub fn total_quantity(&self) -> f64 {
        self.records.iter().map(|r| r.quantity).sum()
    }

    /// The restoration permutation `π`, 0-based: element `i` is the index
    /// (in outage order) of the record that restores i-th.
    pub fn restore_order(&self) -> &[usize] {
        &self.restore_order
    }

    /// Restore times in ascending order.
    pub fn sorted_restore_times(&self) -> Vec<f64> {
        self.restore_order
            .iter()
            .map(|&i| self.records[i].restore_time)
            .collect()
    }

    /// Cumulative outage, cumulative restore, and performance step curves
    /// `(O, R, P = R − O)`.
    pub fn step_curves(&self) -> (StepCurve, StepCurve, StepCurve) {
        let outage_jumps: Vec<(f64, f64)> = self
            .records
            .iter()
            .map(|r| (r.outage_time, r.quantity))
            .collect();
        let restore_jumps: Vec<(f64, f64)> = self
            .records
            .iter()
            .map(|r| (r.restore_time, r.quantity))
            .collect();
        let mut performance_jumps: Vec<(f64, f64)> = self
            .records
            .iter()
            .map(|r| (r.outage_time, -r.quantity))
            .collect();
        performance_jumps.extend(restore_jumps.iter().copied());
        (
            StepCurve::from_jumps(outage_jumps),
            StepCurve::from_jumps(restore_jumps),
            StepCurve::from_jumps(performance_jumps),
        )
    }

    /// Area by the pairwise formula `Σ c_{π(i)}·r_i − Σ c_i·o_i` over the
    /// sorted restore and outage times.
    pub fn area_pairwise(&self) -> f64 {
        let restore_sum: f64 = self
            .restore_order
            .iter()
            .map(|&idx| {
                let r = &self.records[idx];
                r.quantity * r.restore_time
            })
            .sum();
        let outage_sum: f64 = self
            .records
            .iter()
            .map(|r| r.quantity * r.outage_time)
            .sum();
        restore_sum - outage_sum
    }

    /// Area by the per-record formula `Σ c_i·ρ_i`.
    pub fn area_repair(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.quantity * r.repair_time())
            .sum()
    }

    /// Area under the uniform-quantity reduction
    /// `A_c̄ = n·c̄·(r̄ − ō)`; equals [`Self::area_pairwise`] when every
    /// record's quantity is `c_bar`.
    ///
    /// # Errors
    /// [`EmpiricalError::InvalidCBar`] unless `c_bar > 0` and finite.
    pub fn area_uniform(&self, c_bar: f64) -> Result<f64, EmpiricalError> {
        if !c_bar.is_finite() || c_bar <= 0.0 {
            return Err(EmpiricalError::InvalidCBar { value: c_bar });
        }
        let n = self.records.len() as f64;
        let mean_restore: f64 =
            self.records.iter().map(|r| r.restore_time).sum::<f64>() / n;
        let mean_outage: f64 =
            self.records.iter().map(|r| r.outage_time).sum::<f64>() / n;
        Ok(n * c_bar * (mean_restore - mean_outage))
    }

    /// The step-function analogues of the model metrics.
    pub fn metrics(&self) -> EmpiricalMetrics {
        let (_, _, performance) = self.step_curves();
        let mut min_value = f64::INFINITY;
        let mut min_time = 0.0;
        for &(t, v) in performance.breakpoints() {
            if v < min_value {
                min_value = v;
                min_time = t;
            }
        }
        let nadir = if min_value >= 0.0 { 0.0 } else { -min_value };

        let first_outage = self.records[0].outage_time;
        let last_restore = *self
            .sorted_restore_times()
            .last()
            .expect("events have at least one record");
        let area = self.area_repair();
        let total_quantity = self.total_quantity();
        EmpiricalMetrics {
            area,
            area_pairwise: self.area_pairwise(),
            nadir,
            nadir_time: min_time,
            event_duration: last_restore - first_outage,
            mean_repair_time: area / total_quantity,
            total_quantity,
            record_count: self.records.len(),
        }
    }
}

fn csv_error_to_empirical(e: &csv::Error) -> EmpiricalError {
    let line = e.position().map_or(0, csv::Position::line);
    EmpiricalError::Malformed {
        line,
        message: e.to_string(),
    }
}

/// Summary metrics of one empirical event.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalMetrics {
    /// Area `Σ c_i·ρ_i`, quantity·hours.
    pub area: f64,
    /// The same area by the pairwise formula — printed side by side as a
    /// self-audit.
    pub area_pairwise: f64,
    /// Deepest simultaneous outage (−min of the performance curve).
    pub nadir: f64,
    /// Earliest breakpoint attaining the nadir, hours.
    pub nadir_time: f64,
    /// `max restore − min outage`, hours.
    pub event_duration: f64,
    /// Mean repair time `ρ̄ = area / Σ c_i`, hours.
    pub mean_repair_time: f64,
    /// Total outaged quantity `Σ c_i`.
    pub total_quantity: f64,
    /// Number of records `n`.
    pub record_count: usize,
}

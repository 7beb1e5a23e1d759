//! Convergence verdicts for a sequence of partial admittances.
//!
//! The raw test is a relative Cauchy criterion held for `window`
//! consecutive steps. Once the budget is spent, the tail is examined: a
//! bounded sequence whose successive differences do not decay is called
//! oscillating, and a sequence whose differences decay too slowly for the
//! raw test gets one round of Richardson extrapolation in `1/n`.

use crate::dirichlet::AdmittanceValue;
use crate::error::{Error, Result};
use crate::Complex;

/// Differences shrinking by less than this factor per step count as
/// not decaying.
const STALL_FACTOR: f64 = 0.999;
/// `max |P_n| / median |P_n|` above which a sequence is not called bounded.
const BOUNDED_SPREAD: f64 = 1e6;
/// Order of the Richardson extrapolation.
const RICHARDSON_ORDER: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceOptions {
    pub tol: f64,
    pub window: usize,
    pub n_max: usize,
}

impl Default for ConvergenceOptions {
    fn default() -> Self {
        ConvergenceOptions {
            tol: 1e-8,
            window: 3,
            n_max: 200,
        }
    }
}

impl ConvergenceOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidParam(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.window == 0 {
            return Err(Error::InvalidParam("window must be at least 1".into()));
        }
        if self.n_max == 0 {
            return Err(Error::InvalidParam("n_max must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotConvergedReason {
    Oscillating,
    Unbounded,
    Budget,
}

impl NotConvergedReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NotConvergedReason::Oscillating => "oscillating",
            NotConvergedReason::Unbounded => "unbounded",
            NotConvergedReason::Budget => "budget",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    /// `at_n` is the layer at which the criterion first held.
    Converged { limit: Complex, at_n: usize, accelerated: bool },
    NotConverged(NotConvergedReason),
}

impl Verdict {
    pub fn limit(&self) -> Option<Complex> {
        match *self {
            Verdict::Converged { limit, .. } => Some(limit),
            Verdict::NotConverged(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Converged { accelerated: false, .. } => "converged",
            Verdict::Converged { accelerated: true, .. } => "converged-accelerated",
            Verdict::NotConverged(r) => r.as_str(),
        }
    }
}

/// Incremental classifier: feed `P_1, P_2, …` through [`push`] and call
/// [`finish`] when the budget is spent.
///
/// [`push`]: SequenceClassifier::push
/// [`finish`]: SequenceClassifier::finish
#[derive(Debug, Clone)]
pub struct SequenceClassifier {
    options: ConvergenceOptions,
    values: Vec<AdmittanceValue>,
    last_finite: Option<Complex>,
    streak: usize,
    nonfinite_run: usize,
    scale: Option<f64>,
}

impl SequenceClassifier {
    pub fn new(options: ConvergenceOptions) -> Self {
        SequenceClassifier {
            options,
            values: Vec::new(),
            last_finite: None,
            streak: 0,
            nonfinite_run: 0,
            scale: None,
        }
    }

    pub fn values(&self) -> &[AdmittanceValue] {
        &self.values
    }

    pub fn into_values(self) -> Vec<AdmittanceValue> {
        self.values
    }

    /// Records the next term; returns a verdict as soon as one is certain.
    pub fn push(&mut self, value: AdmittanceValue) -> Option<Verdict> {
        self.values.push(value);
        let tol = self.options.tol;
        let Some(p) = value.finite() else {
            self.nonfinite_run += 1;
            self.streak = 0;
            if self.nonfinite_run > self.options.window {
                return Some(Verdict::NotConverged(NotConvergedReason::Unbounded));
            }
            return None;
        };
        self.nonfinite_run = 0;
        let scale = *self.scale.get_or_insert(if p.norm() > 0.0 { p.norm() } else { 1.0 });
        if p.norm() > scale / tol {
            return Some(Verdict::NotConverged(NotConvergedReason::Unbounded));
        }
        if let Some(prev) = self.last_finite {
            if cauchy_step(prev, p, tol) {
                self.streak += 1;
            } else {
                self.streak = 0;
            }
        }
        self.last_finite = Some(p);
        if self.streak >= self.options.window {
            return Some(Verdict::Converged {
                limit: p,
                at_n: self.values.len(),
                accelerated: false,
            });
        }
        None
    }

    /// Verdict for a sequence that never met the raw criterion.
    pub fn finish(&self) -> Verdict {
        let budget = Verdict::NotConverged(NotConvergedReason::Budget);
        let half = self.values.len() / 2;
        let tail = &self.values[half..];
        let mut diffs = Vec::new();
        for (k, pair) in tail.windows(2).enumerate() {
            if let (Some(p), Some(q)) = (pair[0].finite(), pair[1].finite()) {
                diffs.push(((half + k) as f64, (q - p).norm().max(f64::MIN_POSITIVE).ln()));
            }
        }
        if diffs.len() < 4 {
            return budget;
        }
        let decay = theil_sen_slope(&diffs).exp();
        if decay >= STALL_FACTOR {
            return if self.is_bounded() {
                Verdict::NotConverged(NotConvergedReason::Oscillating)
            } else {
                budget
            };
        }
        self.accelerate().unwrap_or(budget)
    }

    fn is_bounded(&self) -> bool {
        let mut mags: Vec<f64> = self.values.iter().filter_map(|v| v.finite()).map(|p| p.norm()).collect();
        if mags.is_empty() {
            return false;
        }
        mags.sort_by(f64::total_cmp);
        let median = mags[mags.len() / 2];
        mags[mags.len() - 1] <= BOUNDED_SPREAD * median
    }

    /// Richardson extrapolation over the longest finite suffix, followed
    /// by the same Cauchy criterion on the extrapolated terms.
    fn accelerate(&self) -> Option<Verdict> {
        let start = self.values.iter().rposition(|v| !v.is_finite()).map_or(0, |i| i + 1);
        let suffix: Vec<Complex> = self.values[start..].iter().filter_map(|v| v.finite()).collect();
        if suffix.len() < RICHARDSON_ORDER + 2 {
            return None;
        }
        let tol = self.options.tol;
        let mut streak = 0;
        let mut first_hit = None;
        let mut last = None;
        let mut prev: Option<Complex> = None;
        for m in 0..suffix.len() - RICHARDSON_ORDER {
            // `n` is the layer index of suffix[m].
            let n = (start + m + 1) as f64;
            let t = richardson(&suffix[m..=m + RICHARDSON_ORDER], n);
            if let Some(p) = prev {
                if cauchy_step(p, t, tol) {
                    streak += 1;
                    if streak >= self.options.window && first_hit.is_none() {
                        first_hit = Some(start + m + RICHARDSON_ORDER + 1);
                    }
                } else {
                    streak = 0;
                    first_hit = None;
                }
            }
            prev = Some(t);
            last = Some(t);
        }
        match (first_hit, last) {
            (Some(at_n), Some(limit)) if streak >= self.options.window => Some(Verdict::Converged {
                limit,
                at_n,
                accelerated: true,
            }),
            _ => None,
        }
    }
}

fn cauchy_step(prev: Complex, next: Complex, tol: f64) -> bool {
    (next - prev).norm() <= tol * prev.norm().max(1.0)
}

/// Eliminates the `1/n, …, 1/n^k` error terms from `P_n, …, P_{n+k}`.
fn richardson(terms: &[Complex], n: f64) -> Complex {
    let k = terms.len() - 1;
    let mut sum = Complex::new(0.0, 0.0);
    for (j, &p) in terms.iter().enumerate() {
        let sign = if (k - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        let w = (n + j as f64).powi(k as i32) / (factorial(j) * factorial(k - j));
        sum += p * (sign * w);
    }
    sum
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Median of pairwise slopes; robust against the isolated spikes of a
/// sequence passing close to a resonance.
fn theil_sen_slope(points: &[(f64, f64)]) -> f64 {
    let mut slopes = Vec::with_capacity(points.len() * (points.len() - 1) / 2);
    for (i, &(x0, y0)) in points.iter().enumerate() {
        for &(x1, y1) in &points[i + 1..] {
            if x1 != x0 {
                slopes.push((y1 - y0) / (x1 - x0));
            }
        }
    }
    slopes.sort_by(f64::total_cmp);
    let m = slopes.len();
    if m % 2 == 1 {
        slopes[m / 2]
    } else {
        0.5 * (slopes[m / 2 - 1] + slopes[m / 2])
    }
}

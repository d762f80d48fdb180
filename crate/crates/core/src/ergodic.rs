//! Orbits and ergodic estimators.
//!
//! Derivative products along orbits are accumulated as sums of
//! `ln|g'(x_i)|`; the raw product over ten thousand steps spans hundreds of
//! orders of magnitude.

use crate::error::{Error, Result};
use crate::models::{IntervalMap, Model, PiecewiseParams};
use crate::scalar::{CompensatedSum, Scalar};

/// Default iteration budgets.
pub mod budgets {
    pub const LYAPUNOV_N: usize = 10_000;
    pub const SC_TERMS: usize = 1_000;
    pub const SC_TERMS_CHECK: usize = 100_000;
    pub const SC_CUTOFF: f64 = 10.0;
    pub const BIRKHOFF_N: usize = 100_000;
    pub const BIRKHOFF_STARTS_N: usize = 5_000;
    pub const SWEEP_ERGODIC_N: usize = 2_000;
    pub const DENSITY_N: usize = 10_000;
    pub const DENSITY_TRANSIENT: usize = 1_000;
    pub const DENSITY_BINS: usize = 50;
    pub const EXPANSIVITY_N: usize = 5_000;
    pub const EXPANSIVITY_SAMPLES: usize = 200;
    pub const ORBIT_N: usize = 100;
}

/// Derivative magnitudes below this count as hitting the critical point.
const SINGULAR_SLOPE: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSeries<T> {
    pub model: Model<T>,
    pub start: T,
    /// Retained iterates `x_t, ..., x_{t+n-1}` where `t = transient_skipped`.
    pub values: Vec<T>,
    pub transient_skipped: usize,
    /// Set when an iterate left `[0, 1/k]` by more than `tol_fix`; `values`
    /// then stops just before the first such iterate.
    pub exited_domain: bool,
}

fn escaped<T: Scalar>(model: &Model<T>, x: T) -> bool {
    let tol = T::tol_fix();
    !(x >= -tol && x <= model.upper() + tol)
}

/// Iterates `model` from `y0`, discards `transient` values and keeps `n`.
pub fn iterate<T: Scalar>(
    model: &Model<T>,
    y0: T,
    n: usize,
    transient: usize,
) -> Result<OrbitSeries<T>> {
    model.check_domain(y0)?;
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    let mut values = Vec::with_capacity(n);
    let mut exited_domain = false;
    let mut x = y0;
    for step in 0..transient + n {
        if escaped(model, x) {
            exited_domain = true;
            break;
        }
        if step >= transient {
            values.push(x);
        }
        x = model.apply(x);
    }
    Ok(OrbitSeries {
        model: *model,
        start: y0,
        values,
        transient_skipped: transient,
        exited_domain,
    })
}

/// Calls `each(i, ln|g'(x_i)|)` for `i < n` along the orbit of the critical value
/// `x_0 = g(c)`.
fn for_each_critical_log_slope<T: Scalar>(
    model: &Model<T>,
    n: usize,
    mut each: impl FnMut(usize, T),
) -> Result<()> {
    let tiny = T::from_f64(SINGULAR_SLOPE).unwrap_or_else(T::min_positive_value);
    let mut x = model.apply(model.turning_point());
    for i in 0..n {
        let d = model.slope(x).abs();
        if !(d >= tiny) {
            return Err(Error::SingularOrbit { step: i });
        }
        each(i, d.ln());
        x = model.apply(x);
    }
    Ok(())
}

/// `(1/n) sum_{i<n} ln|g'(x_i)|` along the critical orbit `x_0 = g(c)`.
pub fn lyapunov_at_critical<T: Scalar>(model: &Model<T>, n: usize) -> Result<T> {
    Ok(lyapunov_convergence(model, n)?
        .last()
        .copied()
        .unwrap_or_else(T::zero))
}

/// Running Lyapunov estimates for `1..=n` terms.
pub fn lyapunov_convergence<T: Scalar>(model: &Model<T>, n: usize) -> Result<Vec<T>> {
    model.require_class()?;
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(n);
    for_each_critical_log_slope(model, n, |i, l| {
        acc.add(l);
        out.push(acc.total() / T::from_usize_lossy(i + 1));
    })?;
    Ok(out)
}

/// Partial sum of the summability series for a critical point of order two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScSum<T> {
    pub value: T,
    /// Partial sum crossed the cutoff; summation stops at that term.
    pub diverged: bool,
    pub terms_used: usize,
}

pub fn sc_sum<T: Scalar>(
    p: &crate::models::NonlinearParams<T>,
    n_terms: usize,
) -> Result<ScSum<T>> {
    sc_sum_with_cutoff(p, n_terms, T::lit(budgets::SC_CUTOFF))
}

/// `sum_{j=1}^{n} exp(-L_j / 2)` with `L_j = sum_{i<j} ln|f'(x_i)|`, `x_0 = f(s)`.
pub fn sc_sum_with_cutoff<T: Scalar>(
    p: &crate::models::NonlinearParams<T>,
    n_terms: usize,
    cutoff: T,
) -> Result<ScSum<T>> {
    let partial = sc_partial_sums(p, n_terms, cutoff)?;
    let value = partial.last().copied().unwrap_or_else(T::zero);
    Ok(ScSum {
        value,
        diverged: value > cutoff,
        terms_used: partial.len(),
    })
}

/// Partial sums of the summability series; stops after the first partial sum
/// above `cutoff`.
pub fn sc_partial_sums<T: Scalar>(
    p: &crate::models::NonlinearParams<T>,
    n_terms: usize,
    cutoff: T,
) -> Result<Vec<T>> {
    let model = Model::Nonlinear(*p);
    model.require_class()?;
    let half = T::lit(0.5);
    let mut log_derivative = CompensatedSum::new();
    let mut series = CompensatedSum::new();
    let mut out = Vec::with_capacity(n_terms.min(1 << 20));
    let mut stopped = false;
    let res = for_each_critical_log_slope(&model, n_terms, |_, l| {
        if stopped {
            return;
        }
        log_derivative.add(l);
        series.add((-log_derivative.total() * half).exp());
        let total = series.total();
        out.push(total);
        if total > cutoff {
            stopped = true;
        }
    });
    match res {
        // A singular step after divergence is irrelevant.
        Err(Error::SingularOrbit { .. }) if stopped => Ok(out),
        Err(e) => Err(e),
        Ok(()) => Ok(out),
    }
}

/// Compensated time average `(1/n) sum_{i<n} x_i` with `x_0 = y0`.
pub fn birkhoff_sum<T: Scalar>(model: &Model<T>, y0: T, n: usize) -> Result<T> {
    Ok(birkhoff_convergence(model, y0, n)?
        .last()
        .copied()
        .unwrap_or(y0))
}

/// [`birkhoff_sum`] for a start that may lie just outside `[0, 1/k]`: the
/// map formula is applied once at `y0` and, if the image is inside the
/// domain, the average continues from there with `y0` as its first term.
pub fn birkhoff_sum_extended<T: Scalar>(model: &Model<T>, y0: T, n: usize) -> Result<T> {
    if model.contains(y0) {
        return birkhoff_sum(model, y0, n);
    }
    if n < 2 || !y0.is_finite() {
        model.check_domain(y0)?;
    }
    let rest = birkhoff_sum(model, model.apply(y0), n - 1)?;
    Ok((y0 + rest * T::from_usize_lossy(n - 1)) / T::from_usize_lossy(n))
}

/// Running time averages for `1..=n` terms.
pub fn birkhoff_convergence<T: Scalar>(model: &Model<T>, y0: T, n: usize) -> Result<Vec<T>> {
    let orbit = iterate(model, y0, n, 0)?;
    if orbit.exited_domain {
        return Err(Error::OrbitExited {
            steps: orbit.values.len(),
        });
    }
    let mut acc = CompensatedSum::new();
    Ok(orbit
        .values
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            acc.add(x);
            acc.total() / T::from_usize_lossy(i + 1)
        })
        .collect())
}

/// Piecewise-constant density estimate on equal-width bins over `[0, 1/k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate<T> {
    pub bin_edges: Vec<T>,
    pub density: Vec<T>,
    pub sample_count: usize,
}

impl<T: Scalar> DensityEstimate<T> {
    pub fn bins(&self) -> usize {
        self.density.len()
    }

    pub fn width(&self, i: usize) -> T {
        self.bin_edges[i + 1] - self.bin_edges[i]
    }

    /// `sum density_i * width_i`.
    pub fn integral(&self) -> T {
        (0..self.bins())
            .map(|i| self.density[i] * self.width(i))
            .collect::<CompensatedSum<T>>()
            .total()
    }

    /// `(left edge of first occupied bin, right edge of last occupied bin)`.
    pub fn occupied_range(&self) -> Option<(T, T)> {
        let first = self.density.iter().position(|&d| d > T::zero())?;
        let last = self.density.iter().rposition(|&d| d > T::zero())?;
        Some((self.bin_edges[first], self.bin_edges[last + 1]))
    }
}

/// Histogram of the `n - transient` iterates `x_transient, ..., x_{n-1}` from `y0`.
pub fn density_histogram<T: Scalar>(
    model: &Model<T>,
    y0: T,
    n: usize,
    transient: usize,
    bins: usize,
) -> Result<DensityEstimate<T>> {
    if n <= transient {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "must exceed the transient length",
        });
    }
    if bins < 2 {
        return Err(Error::InvalidParameter {
            name: "bins",
            value: bins as f64,
            reason: "must be at least 2",
        });
    }
    let orbit = iterate(model, y0, n - transient, transient)?;
    if orbit.exited_domain {
        return Err(Error::OrbitExited {
            steps: orbit.values.len(),
        });
    }
    let top = model.upper();
    let nb = T::from_usize_lossy(bins);
    let width = top / nb;
    let bin_edges: Vec<T> = (0..=bins)
        .map(|i| {
            if i == bins {
                top
            } else {
                width * T::from_usize_lossy(i)
            }
        })
        .collect();
    let mut counts = vec![0usize; bins];
    for &x in &orbit.values {
        let idx = (x / width).floor().to_usize().unwrap_or(0).min(bins - 1);
        counts[idx] += 1;
    }
    let total = T::from_usize_lossy(orbit.values.len());
    let density = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| T::from_usize_lossy(c) / (total * (bin_edges[i + 1] - bin_edges[i])))
        .collect();
    Ok(DensityEstimate {
        bin_edges,
        density,
        sample_count: orbit.values.len(),
    })
}

/// Minimum `i >= 1` with `h^i(1/k) <= y0`.
///
/// While above the kink the orbit of `1/k` follows the right branch, so
/// `h^i(1/k) = beta^i / k`; termination follows from `beta < 1`.
pub fn istar<T: Scalar>(p: &PiecewiseParams<T>) -> usize {
    let mut x = p.apply(p.upper());
    let mut i = 1;
    while x > p.y0() {
        x = p.apply(x);
        i += 1;
    }
    i
}

/// Settings for the numeric expansion check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericCheck {
    pub n: usize,
    pub samples: usize,
}

impl Default for NumericCheck {
    fn default() -> Self {
        Self {
            n: budgets::EXPANSIVITY_N,
            samples: budgets::EXPANSIVITY_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansivityReport<T> {
    pub beta1: T,
    pub istar: usize,
    /// `|beta1| beta^(istar - 1)`.
    pub criterion_lhs: T,
    pub certified: bool,
    /// Smallest `mu` for which the criterion holds at these `(beta, k, y0)`:
    /// `(beta^-(istar-1) + beta) (1 - k y0) / k`.
    pub mu_threshold: T,
    /// Minimum over the sampled starts of the average `ln|h'|` along `n` steps.
    pub numeric_min_log_expansion: Option<T>,
}

/// Iterative-expansivity certificate `|beta1| beta^(istar-1) > 1` for the
/// piecewise map, with an optional numeric estimate of the worst-case average
/// log-expansion over equally spaced starting points (cell midpoints of
/// `[0, 1/k]`). A positive minimum is numerical evidence only.
pub fn expansivity_report<T: Scalar>(
    p: &PiecewiseParams<T>,
    numeric_check: Option<NumericCheck>,
) -> Result<ExpansivityReport<T>> {
    p.in_class_g_tilde().require()?;
    let beta1 = p.beta1();
    if !(beta1 < -T::one()) {
        return Err(Error::NotApplicable(
            "left slope must be below -1 for the expansivity certificate",
        ));
    }
    let i_star = istar(p);
    let contraction = p.beta().powi(i_star as i32 - 1);
    let criterion_lhs = beta1.abs() * contraction;
    let gap = T::one() - p.k() * p.y0();
    let mu_threshold = (T::one() / contraction + p.beta()) * gap / p.k();

    let numeric_min_log_expansion = numeric_check.map(|check| {
        let model = Model::Piecewise(*p);
        let samples = check.samples.max(1);
        let cell = p.upper() / T::from_usize_lossy(samples);
        let steps = T::from_usize_lossy(check.n.max(1));
        (0..samples)
            .map(|j| {
                let mut x = cell * (T::from_usize_lossy(j) + T::lit(0.5));
                let mut acc = CompensatedSum::new();
                for _ in 0..check.n.max(1) {
                    acc.add(model.slope(x).abs().ln());
                    x = model.apply(x);
                }
                acc.total() / steps
            })
            .fold(T::infinity(), T::min)
    });

    Ok(ExpansivityReport {
        beta1,
        istar: i_star,
        criterion_lhs,
        certified: criterion_lhs > T::one(),
        mu_threshold,
        numeric_min_log_expansion,
    })
}

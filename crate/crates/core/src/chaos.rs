//! Existence of odd-period cycles and turbulence of the second iterate.
//!
//! Three independent routes:
//!
//! * closed-form threshold checks for the two models
//!   ([`classify_nonlinear`], [`classify_piecewise`]),
//! * the generic second/third-iterate criterion for unimodal maps applied
//!   numerically ([`deng_criterion`]),
//! * a brute-force search for odd-period points ([`brute_force_odd_cycle`]).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ClassViolation, Error, Result};
use crate::models::{IntervalMap, NonlinearParams, PiecewiseParams};
use crate::scalar::Scalar;

/// Ordered so that the classification is monotone in the chaos parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    NoOddCycle,
    /// Boundary case: `g^2` is turbulent but no odd cycle exists.
    TurbulentSecondIterate,
    /// An odd-period cycle exists (and `g^2` is turbulent).
    OddCycle,
}

impl Classification {
    pub fn has_odd_cycle(self) -> bool {
        self == Classification::OddCycle
    }

    pub fn second_iterate_turbulent(self) -> bool {
        self != Classification::NoOddCycle
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::NoOddCycle => "NoOddCycle",
            Classification::TurbulentSecondIterate => "TurbulentSecondIterate",
            Classification::OddCycle => "OddCycle",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChaosVerdict<T> {
    pub classification: Classification,
    /// Every bound or iterate value the decision consulted.
    pub thresholds: BTreeMap<&'static str, T>,
    /// Name (a key of `thresholds`) of the condition that decided the verdict.
    pub binding: &'static str,
}

/// Threshold constant `c0 = 2/3 - r^(1/3)/3 - 16 / (3 r^(1/3))` with
/// `r = -152 + 24 sqrt(33)`, using the real (negative) cube root.
fn threshold_constant<T: Scalar>() -> T {
    let radicand = T::lit(-152.0) + T::lit(24.0) * T::lit(33.0).sqrt();
    let root = radicand.cbrt();
    T::lit(2.0) / T::lit(3.0) - root / T::lit(3.0) - T::lit(16.0) / (T::lit(3.0) * root)
}

/// Unique real root `delta_c(beta)` of [`threshold_cubic`].
///
/// `delta_c(beta) + beta` is independent of `beta` (about 3.6786).
pub fn exact_chaos_threshold<T: Scalar>(beta: T) -> T {
    threshold_constant::<T>() - beta
}

/// `j(delta) = delta^3 + 3 beta delta^2 - 2 delta^2 + 3 beta^2 delta - 4 beta delta
///  - 4 delta + beta^3 - 2 beta^2 - 4 beta - 8`.
///
/// `f^3(s) < z` exactly when `j(delta) > 0`.
pub fn threshold_cubic<T: Scalar>(beta: T, delta: T) -> T {
    let c = |x: f64| T::lit(x);
    let a2 = c(3.0) * beta - c(2.0);
    let a1 = c(3.0) * beta * beta - c(4.0) * beta - c(4.0);
    let a0 = beta * beta * beta - c(2.0) * beta * beta - c(4.0) * beta - c(8.0);
    ((delta + a2) * delta + a1) * delta + a0
}

/// Bound `1 - beta + sqrt(5)` above which `f^2(s) < s`.
pub fn second_iterate_gate<T: Scalar>(beta: T) -> T {
    T::one() - beta + T::lit(5.0).sqrt()
}

/// Closed-form decision for the smooth model.
///
/// Odd cycle iff `delta > delta_c(beta)`; `f^2` turbulent iff `delta >= delta_c(beta)`.
pub fn classify_nonlinear<T: Scalar>(p: &NonlinearParams<T>) -> Result<ChaosVerdict<T>> {
    let class = p.in_class_g();
    class.require()?;
    let (beta, delta) = (p.beta(), p.delta());
    let gate = second_iterate_gate(beta);
    let dc = exact_chaos_threshold(beta);

    let mut thresholds = BTreeMap::new();
    thresholds.insert("class_lower", class.lower);
    thresholds.insert("class_upper", class.upper);
    thresholds.insert("second_iterate_gate", gate);
    thresholds.insert("odd_cycle_threshold", dc);

    let (classification, binding) = if !(delta > gate) {
        (Classification::NoOddCycle, "second_iterate_gate")
    } else if delta > dc {
        (Classification::OddCycle, "odd_cycle_threshold")
    } else if delta >= dc {
        (
            Classification::TurbulentSecondIterate,
            "odd_cycle_threshold",
        )
    } else {
        (Classification::NoOddCycle, "odd_cycle_threshold")
    };
    Ok(ChaosVerdict {
        classification,
        thresholds,
        binding,
    })
}

/// The two lower bounds on `mu` governing odd cycles of the piecewise map:
/// `((1 + beta)(1 - k y0) / k, (1 - k y0)(1 + 2 beta^2 + sqrt(4 beta^2 + 1)) / (2 beta k))`.
pub fn piecewise_chaos_bounds<T: Scalar>(p: &PiecewiseParams<T>) -> (T, T) {
    let (beta, k) = (p.beta(), p.k());
    let gap = T::one() - k * p.y0();
    let two = T::lit(2.0);
    let kink_return = (T::one() + beta) * gap / k;
    let third = gap
        * (T::one() + two * beta * beta + (T::lit(4.0) * beta * beta + T::one()).sqrt())
        / (two * beta * k);
    (kink_return, third)
}

/// Closed-form decision for the piecewise model.
///
/// Odd cycle iff both bounds of [`piecewise_chaos_bounds`] hold strictly;
/// `h^2` turbulent iff the first holds strictly and the second weakly.
pub fn classify_piecewise<T: Scalar>(p: &PiecewiseParams<T>) -> Result<ChaosVerdict<T>> {
    let class = p.in_class_g_tilde();
    class.require()?;
    let mu = p.mu();
    let (kink_return, third) = piecewise_chaos_bounds(p);

    let mut thresholds = BTreeMap::new();
    thresholds.insert("class_lower", class.lower);
    thresholds.insert("class_upper", class.upper);
    thresholds.insert("kink_return_bound", kink_return);
    thresholds.insert("third_iterate_bound", third);

    let (classification, binding) = if !(mu > kink_return) {
        (Classification::NoOddCycle, "kink_return_bound")
    } else if mu > third {
        let binding = if third >= kink_return {
            "third_iterate_bound"
        } else {
            "kink_return_bound"
        };
        (Classification::OddCycle, binding)
    } else if mu >= third {
        (
            Classification::TurbulentSecondIterate,
            "third_iterate_bound",
        )
    } else {
        (Classification::NoOddCycle, "third_iterate_bound")
    };
    Ok(ChaosVerdict {
        classification,
        thresholds,
        binding,
    })
}

/// Whether the unimodal map has an interior maximum or minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

/// A continuous unimodal self-map of `[a, b]` with turning point `extremum`.
#[derive(Clone)]
pub struct UnimodalSpec<T, F> {
    pub map: F,
    pub a: T,
    pub b: T,
    pub mode: Extremum,
    pub extremum: T,
}

impl<T: Scalar, F: Fn(T) -> T> UnimodalSpec<T, F> {
    pub fn new(map: F, a: T, b: T, mode: Extremum, extremum: T) -> Self {
        Self {
            map,
            a,
            b,
            mode,
            extremum,
        }
    }

    #[inline]
    pub fn apply(&self, x: T) -> T {
        (self.map)(x)
    }

    pub fn iterate_n(&self, mut x: T, n: usize) -> T {
        for _ in 0..n {
            x = self.apply(x);
        }
        x
    }

    /// Checks the class conditions on an `n`-point grid: self-map of `[a, b]`,
    /// strict monotonicity on both laps, and the endpoint/diagonal conditions
    /// (`g(a) >= a`, `g(b) < b`, `g(x) > x` on `(a, m]` for a maximum;
    /// `g(a) > a`, `g(b) <= b`, `g(x) < x` on `[m, b)` for a minimum).
    pub fn validate(&self, n: usize) -> Result<()> {
        let (a, b, m) = (self.a, self.b, self.extremum);
        let shape = |msg: String| Err(Error::Class(ClassViolation::Shape(msg)));
        if !(a < m && m < b) {
            return shape(format!("turning point {m} not inside ({a}, {b})"));
        }
        let (ga, gb) = (self.apply(a), self.apply(b));
        let endpoints_ok = match self.mode {
            Extremum::Max => ga >= a && gb < b,
            Extremum::Min => ga > a && gb <= b,
        };
        if !endpoints_ok {
            return shape(format!(
                "endpoint condition fails: g(a) = {ga}, g(b) = {gb}"
            ));
        }
        let n = n.max(3);
        // rounding slack: at the class boundary g(m) equals b exactly
        let slack = T::epsilon() * T::lit(8.0) * (b - a).max(b.abs());
        for (lo, hi, rising) in [
            (a, m, self.mode == Extremum::Max),
            (m, b, self.mode == Extremum::Min),
        ] {
            let step = (hi - lo) / T::from_usize_lossy(n - 1);
            let mut prev = self.apply(lo);
            for i in 1..n {
                let x = if i == n - 1 {
                    hi
                } else {
                    lo + step * T::from_usize_lossy(i)
                };
                let gx = self.apply(x);
                if !(gx >= a - slack && gx <= b + slack) {
                    return shape(format!("g({x}) = {gx} leaves [{a}, {b}]"));
                }
                let monotone = if rising { gx > prev } else { gx < prev };
                if !monotone {
                    return shape(format!("g is not strictly monotone near {x}"));
                }
                let diagonal = match self.mode {
                    // (a, m]: the whole left lap after the first point.
                    Extremum::Max if !rising => true,
                    Extremum::Max => gx > x,
                    // [m, b): the right lap except b itself.
                    Extremum::Min if rising && i < n - 1 => gx < x,
                    Extremum::Min => true,
                };
                if !diagonal {
                    return shape(format!("diagonal condition fails at {x}"));
                }
                prev = gx;
            }
        }
        if self.mode == Extremum::Min && !(self.apply(m) < m) {
            return shape(format!("g(m) must lie below m = {m}"));
        }
        Ok(())
    }
}

impl<T: Scalar> UnimodalSpec<T, Box<dyn Fn(T) -> T + Send + Sync>> {
    /// The smooth model as a unimodal map with maximum at `s` on `[0, 1/k]`.
    pub fn from_nonlinear(p: NonlinearParams<T>) -> Self {
        let s = p.critical_point();
        let b = p.upper();
        Self::new(
            Box::new(move |y| p.apply(y)),
            T::zero(),
            b,
            Extremum::Max,
            s,
        )
    }

    /// The piecewise model as a unimodal map with minimum at `y0` on `[0, 1/k]`.
    pub fn from_piecewise(p: PiecewiseParams<T>) -> Self {
        let b = p.upper();
        Self::new(
            Box::new(move |y| p.apply(y)),
            T::zero(),
            b,
            Extremum::Min,
            p.y0(),
        )
    }
}

/// Bisection on a bracket `[lo, hi]` with a strict sign change of `phi`.
///
/// Stops once the bracket is no wider than `tol` or can no longer be split
/// in floating point; `tol = 0` refines to machine precision.
pub fn bisect<T: Scalar>(phi: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> T {
    let mut flo = phi(lo);
    let half = T::lit(0.5);
    loop {
        let mid = lo + (hi - lo) * half;
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return mid;
        }
        let fm = phi(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
}

/// Roots of `phi` on `[lo, hi]` found by scanning `n` grid points for sign
/// changes (or exact zeros) and bisecting each bracket.
pub fn grid_roots<T: Scalar>(phi: impl Fn(T) -> T, lo: T, hi: T, n: usize, tol: T) -> Vec<T> {
    let n = n.max(2);
    let step = (hi - lo) / T::from_usize_lossy(n - 1);
    let xs: Vec<T> = (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + step * T::from_usize_lossy(i)
            }
        })
        .collect();
    let vals: Vec<T> = xs.iter().map(|&x| phi(x)).collect();
    let mut roots = Vec::new();
    for i in 0..n {
        if vals[i] == T::zero() {
            roots.push(xs[i]);
            continue;
        }
        if i + 1 < n
            && vals[i + 1] != T::zero()
            && (vals[i] < T::zero()) != (vals[i + 1] < T::zero())
            && vals[i].is_finite()
            && vals[i + 1].is_finite()
        {
            roots.push(bisect(&phi, xs[i], xs[i + 1], tol));
        }
    }
    roots
}

/// Grid resolutions for [`deng_criterion_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DengOptions {
    /// Grid points for locating `Pi` on the monotone branch.
    pub n_pi: usize,
    /// Grid points per lap for class validation.
    pub n_validate: usize,
}

impl Default for DengOptions {
    fn default() -> Self {
        Self {
            n_pi: 4096,
            n_validate: 2001,
        }
    }
}

pub fn deng_criterion<T: Scalar, F: Fn(T) -> T>(u: &UnimodalSpec<T, F>) -> Result<ChaosVerdict<T>> {
    deng_criterion_with(u, DengOptions::default())
}

/// Numeric second/third-iterate criterion for a unimodal map.
///
/// Maximum mode: odd cycle iff `g^2(m) < m` and `g^3(m) < max Pi`; `g^2`
/// turbulent iff `g^2(m) < m` and `g^3(m) <= min Pi`, where `Pi` collects the
/// points of `[m, b]` with image in `[m, b]` and `g^2(x) = x`. Minimum mode
/// mirrors every inequality on `[a, m]`.
pub fn deng_criterion_with<T: Scalar, F: Fn(T) -> T>(
    u: &UnimodalSpec<T, F>,
    opts: DengOptions,
) -> Result<ChaosVerdict<T>> {
    u.validate(opts.n_validate)?;
    let m = u.extremum;
    let (lo, hi) = match u.mode {
        Extremum::Max => (m, u.b),
        Extremum::Min => (u.a, m),
    };
    let tol = T::tol_fix();
    let mut pi: Vec<T> = grid_roots(|x| u.apply(u.apply(x)) - x, lo, hi, opts.n_pi, tol)
        .into_iter()
        .filter(|&x| {
            let gx = u.apply(x);
            gx >= lo && gx <= hi
        })
        .collect();
    if pi.is_empty() {
        return Err(Error::EmptyPi);
    }
    pi.sort_by(|a, b| a.partial_cmp(b).expect("finite root"));
    let (pi_min, pi_max) = (pi[0], pi[pi.len() - 1]);

    let g2 = u.iterate_n(m, 2);
    let g3 = u.apply(g2);
    let mut thresholds = BTreeMap::new();
    thresholds.insert("extremum", m);
    thresholds.insert("second_iterate", g2);
    thresholds.insert("third_iterate", g3);
    thresholds.insert("pi_min", pi_min);
    thresholds.insert("pi_max", pi_max);

    let (gate, odd, turbulent) = match u.mode {
        Extremum::Max => (g2 < m, g3 < pi_max, g3 <= pi_min),
        Extremum::Min => (g2 > m, g3 > pi_max, g3 >= pi_min),
    };
    let (classification, binding) = if !gate {
        (Classification::NoOddCycle, "second_iterate")
    } else if odd {
        (Classification::OddCycle, "pi_max")
    } else if turbulent {
        (Classification::TurbulentSecondIterate, "pi_min")
    } else {
        (Classification::NoOddCycle, "pi_max")
    };
    Ok(ChaosVerdict {
        classification,
        thresholds,
        binding,
    })
}

/// A point of minimal odd period found by [`brute_force_odd_cycle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddCycleWitness<T> {
    pub period: usize,
    pub point: T,
}

/// Default grid for [`brute_force_odd_cycle`].
pub const ODD_CYCLE_GRID: usize = 65_536;

/// Largest period the brute-force search accepts.
pub const MAX_ODD_PERIOD: usize = 13;

pub fn brute_force_odd_cycle<T: Scalar, F: Fn(T) -> T>(
    u: &UnimodalSpec<T, F>,
    max_period: usize,
) -> Result<Option<OddCycleWitness<T>>> {
    brute_force_odd_cycle_with(u, max_period, ODD_CYCLE_GRID)
}

/// Searches periods `3, 5, ..., max_period` for points of minimal odd period.
///
/// Roots of `g^p(x) - x` are bracketed on an `n_grid` grid over `[a, b]` and
/// bisected to machine precision; roots that are also fixed by `g^q` for a
/// proper divisor `q` of `p` (within `10 tol_fix`) are discarded. Cycles born
/// in a tangency narrower than the grid spacing can be missed, so `None` is
/// evidence of absence only up to grid resolution.
pub fn brute_force_odd_cycle_with<T: Scalar, F: Fn(T) -> T>(
    u: &UnimodalSpec<T, F>,
    max_period: usize,
    n_grid: usize,
) -> Result<Option<OddCycleWitness<T>>> {
    if max_period.is_multiple_of(2) || max_period > MAX_ODD_PERIOD {
        return Err(Error::InvalidParameter {
            name: "max_period",
            value: max_period as f64,
            reason: "must be odd and at most 13",
        });
    }
    if max_period < 3 {
        return Ok(None);
    }
    let n = n_grid.max(2);
    let step = (u.b - u.a) / T::from_usize_lossy(n - 1);
    let xs: Vec<T> = (0..n)
        .map(|i| {
            if i == n - 1 {
                u.b
            } else {
                u.a + step * T::from_usize_lossy(i)
            }
        })
        .collect();
    // residuals[p][i] = g^p(x_i) - x_i
    let mut residuals = vec![Vec::with_capacity(n); max_period + 1];
    for &x in &xs {
        let mut y = x;
        for row in residuals.iter_mut().skip(1) {
            y = u.apply(y);
            row.push(y - x);
        }
    }

    let reject_tol = T::lit(10.0) * T::tol_fix();
    for p in (3..=max_period).step_by(2) {
        let phi = |x: T| u.iterate_n(x, p) - x;
        let row = &residuals[p];
        for i in 0..n - 1 {
            let (r0, r1) = (row[i], row[i + 1]);
            if !(r0.is_finite() && r1.is_finite()) {
                continue;
            }
            let root = if r0 == T::zero() {
                xs[i]
            } else if r1 != T::zero() && (r0 < T::zero()) != (r1 < T::zero()) {
                bisect(phi, xs[i], xs[i + 1], T::zero())
            } else {
                continue;
            };
            let lower_period = (1..p)
                .filter(|q| p % q == 0)
                .any(|q| (u.iterate_n(root, q) - root).abs() <= reject_tol);
            if !lower_period {
                return Ok(Some(OddCycleWitness {
                    period: p,
                    point: root,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nl(beta: f64, delta: f64) -> NonlinearParams<f64> {
        NonlinearParams::new(beta, delta, 1.1).unwrap()
    }

    fn pw(mu: f64) -> PiecewiseParams<f64> {
        PiecewiseParams::new(0.6, mu, 1.1, 0.2).unwrap()
    }

    /// Independent oracle: bisection on the expanded cubic.
    fn cubic_root_by_bisection(beta: f64) -> f64 {
        let j = |d: f64| {
            d.powi(3) + 3.0 * beta * d * d - 2.0 * d * d + 3.0 * beta * beta * d
                - 4.0 * beta * d
                - 4.0 * d
                + beta.powi(3)
                - 2.0 * beta * beta
                - 4.0 * beta
                - 8.0
        };
        let (mut lo, mut hi) = (3.5 - beta, 3.7 - beta + 0.1);
        assert!(j(lo) < 0.0 && j(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if j(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn threshold_matches_bisection_oracle() {
        for beta in [0.0, 0.1, 0.5, 0.9] {
            let dc = exact_chaos_threshold(beta);
            assert!(
                (dc - cubic_root_by_bisection(beta)).abs() < 1e-12,
                "beta {beta}"
            );
            assert!(threshold_cubic(beta, dc).abs() < 1e-12);
        }
        assert!((exact_chaos_threshold(0.1f64) - 3.5786).abs() < 1e-4);
        assert!((exact_chaos_threshold(0.0f64) - 3.6786).abs() < 1e-4);
    }

    #[test]
    fn threshold_plus_beta_is_constant() {
        let c0 = exact_chaos_threshold(0.0f64);
        for beta in [0.05, 0.3, 0.77] {
            assert!((exact_chaos_threshold(beta) + beta - c0).abs() < 1e-12);
        }
    }

    #[test]
    fn nonlinear_verdicts() {
        let v = classify_nonlinear(&nl(0.1, 3.7)).unwrap();
        assert_eq!(v.classification, Classification::OddCycle);
        assert_eq!(v.binding, "odd_cycle_threshold");
        assert!((v.thresholds["second_iterate_gate"] - (0.9 + 5f64.sqrt())).abs() < 1e-15);

        let v = classify_nonlinear(&nl(0.1, 3.4)).unwrap();
        assert_eq!(v.classification, Classification::NoOddCycle);

        let v = classify_nonlinear(&nl(0.1, 3.0)).unwrap();
        assert_eq!(v.classification, Classification::NoOddCycle);
        assert_eq!(v.binding, "second_iterate_gate");
    }

    #[test]
    fn boundary_is_turbulent_without_odd_cycle() {
        let dc = exact_chaos_threshold(0.1);
        let v = classify_nonlinear(&nl(0.1, dc)).unwrap();
        assert_eq!(v.classification, Classification::TurbulentSecondIterate);
        assert!(!v.classification.has_odd_cycle());
        assert!(v.classification.second_iterate_turbulent());
    }

    #[test]
    fn classify_rejects_out_of_class() {
        assert!(matches!(
            classify_nonlinear(&nl(0.1, 1.5)),
            Err(Error::Class(_))
        ));
        assert!(matches!(classify_piecewise(&pw(3.3)), Err(Error::Class(_))));
    }

    #[test]
    fn piecewise_verdicts() {
        let (b1, b2) = piecewise_chaos_bounds(&pw(3.0));
        assert!((b1 - 1.6 * 0.78 / 1.1).abs() < 1e-14);
        // Printed values are truncated, not rounded: b2 = 1.9394.
        assert_eq!((b1 * 100.0).trunc(), 113.0);
        assert_eq!((b2 * 100.0).trunc(), 193.0);
        assert_eq!(
            classify_piecewise(&pw(3.0)).unwrap().classification,
            Classification::OddCycle
        );
        assert_eq!(
            classify_piecewise(&pw(1.5)).unwrap().classification,
            Classification::NoOddCycle
        );
        let v = classify_piecewise(&pw(1.0)).unwrap();
        assert_eq!(v.classification, Classification::NoOddCycle);
        assert_eq!(v.binding, "kink_return_bound");
        let v = classify_piecewise(&pw(b2)).unwrap();
        assert_eq!(v.classification, Classification::TurbulentSecondIterate);
    }

    #[test]
    fn deng_agrees_with_closed_forms() {
        for delta in [3.7, 3.4, 2.5, 3.79] {
            let p = nl(0.1, delta);
            let u = UnimodalSpec::from_nonlinear(p);
            let d = deng_criterion(&u).unwrap();
            assert_eq!(
                d.classification,
                classify_nonlinear(&p).unwrap().classification,
                "delta {delta}"
            );
        }
        let u = UnimodalSpec::from_piecewise(pw(3.0));
        let d = deng_criterion(&u).unwrap();
        assert_eq!(d.classification, Classification::OddCycle);
        assert!((d.thresholds["pi_max"] - 0.66 / 3.612).abs() < 1e-9);
        assert!((d.thresholds["pi_min"] - 0.66 / 3.612).abs() < 1e-9);
        for mu in [1.5, 1.0, 2.5] {
            let u = UnimodalSpec::from_piecewise(pw(mu));
            assert_eq!(
                deng_criterion(&u).unwrap().classification,
                classify_piecewise(&pw(mu)).unwrap().classification,
                "mu {mu}"
            );
        }
    }

    #[test]
    fn deng_rejects_non_unimodal_maps() {
        let u = UnimodalSpec::new(|x: f64| x * x, 0.0, 1.0, Extremum::Max, 0.5);
        assert!(matches!(deng_criterion(&u), Err(Error::Class(_))));
        let out_of_class = UnimodalSpec::from_nonlinear(nl(0.1, 3.9));
        assert!(deng_criterion(&out_of_class).is_err());
    }

    #[test]
    fn brute_force_oracle() {
        let chaotic = UnimodalSpec::from_nonlinear(nl(0.1, 3.7));
        let w = brute_force_odd_cycle(&chaotic, 9)
            .unwrap()
            .expect("odd cycle");
        assert!(w.period % 2 == 1 && w.period >= 3);
        let back = chaotic.iterate_n(w.point, w.period);
        assert!((back - w.point).abs() < 1e-9);

        let calm = UnimodalSpec::from_nonlinear(nl(0.1, 2.5));
        assert_eq!(brute_force_odd_cycle(&calm, 9).unwrap(), None);

        let contraction = UnimodalSpec::from_nonlinear(nl(0.5, 0.6));
        assert_eq!(brute_force_odd_cycle(&contraction, 3).unwrap(), None);
        assert_eq!(brute_force_odd_cycle(&contraction, 1).unwrap(), None);
        assert!(brute_force_odd_cycle(&contraction, 4).is_err());
        assert!(brute_force_odd_cycle(&contraction, 15).is_err());
    }

    #[test]
    fn period_three_window_is_found() {
        // Period-three window of the quadratic family starts at beta + delta = 1 + sqrt(8).
        let p = nl(0.1, 1.0 + 8f64.sqrt() - 0.1 + 0.005);
        let u = UnimodalSpec::from_nonlinear(p);
        assert_eq!(brute_force_odd_cycle(&u, 9).unwrap().unwrap().period, 3);
    }

    #[test]
    fn piecewise_oracle() {
        let u = UnimodalSpec::from_piecewise(pw(3.0));
        assert!(brute_force_odd_cycle(&u, 9).unwrap().is_some());
        let u = UnimodalSpec::from_piecewise(pw(1.0));
        assert!(brute_force_odd_cycle(&u, 9).unwrap().is_none());
    }
}

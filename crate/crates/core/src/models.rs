//! The two fixed-price income maps on `E = [0, 1/k]`.
//!
//! * [`NonlinearParams`]: `f(y) = beta*y + delta*y*(1 - k*y)`, a concave
//!   quadratic with an interior maximum at `s = (beta + delta) / (2 delta k)`.
//! * [`PiecewiseParams`]: the V-shaped map `h` with slope
//!   `beta1 = beta - mu*k/(1 - k*y0)` left of the kink `y0` and slope `beta`
//!   to the right. `h(1/k) = beta/k` closes the domain.
//!
//! All closed forms for landmarks and class bounds are hard-coded.

use crate::error::{ClassBound, Error, Result};
use crate::scalar::Scalar;

/// A continuous self-map of `[0, 1/k]` with a single turning point.
pub trait IntervalMap<T: Scalar> {
    /// Right end `1/k` of the domain.
    fn upper(&self) -> T;

    /// Map value without a domain check.
    fn apply(&self, y: T) -> T;

    /// Derivative without a domain check. At a kink the left slope is returned.
    fn slope(&self, y: T) -> T;

    /// Critical point `s` (smooth model) or kink `y0` (piecewise model).
    fn turning_point(&self) -> T;

    fn contains(&self, y: T) -> bool {
        y >= T::zero() && y <= self.upper()
    }

    fn check_domain(&self, y: T) -> Result<()> {
        if self.contains(y) {
            Ok(())
        } else {
            Err(Error::Domain {
                value: y.as_f64(),
                lo: 0.0,
                hi: self.upper().as_f64(),
            })
        }
    }

    fn eval(&self, y: T) -> Result<T> {
        self.check_domain(y)?;
        Ok(self.apply(y))
    }

    fn derivative(&self, y: T) -> Result<T> {
        self.check_domain(y)?;
        Ok(self.slope(y))
    }

    /// `n`-fold composition, unchecked.
    fn iterate_n(&self, mut y: T, n: usize) -> T {
        for _ in 0..n {
            y = self.apply(y);
        }
        y
    }
}

fn positive<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v.as_f64(),
            reason: "must be a positive finite number",
        })
    }
}

fn unit_open<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v.as_f64(),
            reason: "must lie strictly between 0 and 1",
        })
    }
}

/// Outcome of a class-membership test, with the bounds that were evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassCheck<T> {
    pub holds: bool,
    /// The tested parameter (`delta` or `mu`).
    pub value: T,
    /// Strict lower bound.
    pub lower: T,
    /// Weak upper bound.
    pub upper: T,
    /// First violated bound, if any.
    pub violated: Option<ClassBound>,
}

impl<T: Scalar> ClassCheck<T> {
    fn evaluate(value: T, lower: T, upper: T, lo_bound: ClassBound, hi_bound: ClassBound) -> Self {
        let violated = if !(value > lower) {
            Some(lo_bound)
        } else if !(value <= upper) {
            Some(hi_bound)
        } else {
            None
        };
        Self {
            holds: violated.is_none(),
            value,
            lower,
            upper,
            violated,
        }
    }

    /// `Ok(())` when the test holds, otherwise the class error naming the bound.
    pub fn require(&self) -> Result<()> {
        match self.violated {
            None => Ok(()),
            Some(b) => {
                let limit = match b {
                    ClassBound::NonlinearLower | ClassBound::PiecewiseLower => self.lower,
                    ClassBound::NonlinearUpper | ClassBound::PiecewiseUpper => self.upper,
                };
                Err(Error::bound(b, self.value.as_f64(), limit.as_f64()))
            }
        }
    }
}

/// Closed-form landmarks of a map.
#[derive(Debug, Clone, PartialEq)]
pub struct Landmarks<T> {
    /// `s` for the smooth model, `y0` for the piecewise model.
    pub critical_or_kink: T,
    /// Map value at the turning point: `f(s)` (maximum) or `h(y0) = beta*y0` (minimum).
    pub peak_value: T,
    /// Fixed points inside the domain, ascending.
    pub fixed_points: Vec<T>,
    /// Points of minimal period two inside the domain, ascending.
    pub period2_points: Vec<T>,
    /// Points of period dividing two on the decreasing branch whose image stays
    /// on that branch (`Pi` for the smooth model, `Pi~` for the piecewise model).
    pub pi_set: Vec<T>,
}

/// Parameters `(beta, delta, k)` of the smooth quadratic map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearParams<T> {
    beta: T,
    delta: T,
    k: T,
}

impl<T: Scalar> NonlinearParams<T> {
    pub fn new(beta: T, delta: T, k: T) -> Result<Self> {
        unit_open("beta", beta)?;
        positive("delta", delta)?;
        positive("k", k)?;
        Ok(Self { beta, delta, k })
    }

    /// Builds the map from investment scale `mu`, investment sensitivity `alpha`
    /// and liquidity-preference constant `lambda`, with money supply normalised
    /// to one: `delta = mu * alpha / lambda`.
    pub fn from_structural(beta: T, mu: T, alpha: T, lambda: T, k: T) -> Result<Self> {
        positive("mu", mu)?;
        positive("alpha", alpha)?;
        positive("lambda", lambda)?;
        Self::new(beta, mu * alpha / lambda, k)
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn with_delta(&self, delta: T) -> Result<Self> {
        Self::new(self.beta, delta, self.k)
    }

    /// Critical point `s = (beta + delta) / (2 delta k)`.
    pub fn critical_point(&self) -> T {
        (self.beta + self.delta) / (T::lit(2.0) * self.delta * self.k)
    }

    /// Maximum value `f(s) = (beta + delta)^2 / (4 delta k)`.
    pub fn peak_value(&self) -> T {
        let u = self.beta + self.delta;
        u * u / (T::lit(4.0) * self.delta * self.k)
    }

    /// Nontrivial fixed point `z = (delta + beta - 1) / (delta k)`.
    pub fn nontrivial_fixed_point(&self) -> T {
        (self.delta + self.beta - T::one()) / (self.delta * self.k)
    }

    /// Constant second derivative `-2 delta k`.
    pub fn second_derivative(&self) -> T {
        -T::lit(2.0) * self.delta * self.k
    }

    /// Class test: `max{2-beta, beta} < delta <= 2 - beta + 2 sqrt(1-beta)`.
    pub fn in_class_g(&self) -> ClassCheck<T> {
        let two = T::lit(2.0);
        let lower = (two - self.beta).max(self.beta);
        let upper = two - self.beta + two * (T::one() - self.beta).sqrt();
        ClassCheck::evaluate(
            self.delta,
            lower,
            upper,
            ClassBound::NonlinearLower,
            ClassBound::NonlinearUpper,
        )
    }

    pub fn landmarks(&self) -> Result<Landmarks<T>> {
        let s = self.critical_point();
        let top = self.upper();
        let tol = T::tol_fix();

        let mut fixed_points = vec![T::zero()];
        let z = self.nontrivial_fixed_point();
        if z > tol && z <= top {
            fixed_points.push(z);
        }

        // f^2(y) = y factors as y (y - z) q(y); q has roots s + (1 +- sqrt(disc)) / (2 delta k).
        let shifted = self.delta + self.beta - T::one();
        let disc = shifted * shifted - T::lit(4.0);
        if !disc.is_finite() {
            return Err(Error::Numerical("period-two discriminant is not finite"));
        }
        let mut period2_points = Vec::new();
        if disc > T::zero() {
            let root = disc.sqrt();
            let scale = T::lit(2.0) * self.delta * self.k;
            for cand in [s + (T::one() - root) / scale, s + (T::one() + root) / scale] {
                let distinct = fixed_points.iter().all(|&p| (cand - p).abs() > tol);
                if self.contains(cand) && distinct {
                    period2_points.push(cand);
                }
            }
        }
        period2_points.sort_by(|a, b| a.partial_cmp(b).expect("finite"));

        let on_branch = |x: T| x >= s && x <= top;
        let mut pi_set: Vec<T> = fixed_points
            .iter()
            .chain(period2_points.iter())
            .copied()
            .filter(|&x| on_branch(x) && on_branch(self.apply(x)))
            .collect();
        pi_set.sort_by(|a, b| a.partial_cmp(b).expect("finite"));

        Ok(Landmarks {
            critical_or_kink: s,
            peak_value: self.peak_value(),
            fixed_points,
            period2_points,
            pi_set,
        })
    }

    /// Schwarzian derivative `Sf(y) = -(3/2) (f''/f')^2`, since `f''' = 0`.
    pub fn schwarzian(&self, y: T) -> Result<T> {
        self.check_domain(y)?;
        if (y - self.critical_point()).abs() < T::tol_fix() {
            return Err(Error::SingularPoint { at: y.as_f64() });
        }
        let ratio = self.second_derivative() / self.slope(y);
        Ok(-T::lit(1.5) * ratio * ratio)
    }
}

impl<T: Scalar> IntervalMap<T> for NonlinearParams<T> {
    fn upper(&self) -> T {
        T::one() / self.k
    }

    #[inline]
    fn apply(&self, y: T) -> T {
        self.beta * y + self.delta * y * (T::one() - self.k * y)
    }

    #[inline]
    fn slope(&self, y: T) -> T {
        self.beta + self.delta - T::lit(2.0) * self.delta * self.k * y
    }

    fn turning_point(&self) -> T {
        self.critical_point()
    }
}

/// Parameters `(beta, mu, k, y0)` of the V-shaped map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiecewiseParams<T> {
    beta: T,
    mu: T,
    k: T,
    y0: T,
    beta1: T,
    intercept: T,
}

impl<T: Scalar> PiecewiseParams<T> {
    pub fn new(beta: T, mu: T, k: T, y0: T) -> Result<Self> {
        unit_open("beta", beta)?;
        positive("mu", mu)?;
        positive("k", k)?;
        if !(y0 > T::zero() && y0 < T::one() / k) {
            return Err(Error::InvalidParameter {
                name: "y0",
                value: y0.as_f64(),
                reason: "kink must lie strictly inside (0, 1/k)",
            });
        }
        let gap = T::one() - k * y0;
        Ok(Self {
            beta,
            mu,
            k,
            y0,
            beta1: beta - mu * k / gap,
            intercept: mu / gap - mu,
        })
    }

    /// Builds the map with the kink derived from the investment cut-off rate
    /// `r_cut` and liquidity constant `lambda`: `y0 = (r_cut - lambda) / (r_cut k)`.
    pub fn from_interest_cutoff(beta: T, mu: T, k: T, r_cut: T, lambda: T) -> Result<Self> {
        positive("r_cut", r_cut)?;
        positive("lambda", lambda)?;
        positive("k", k)?;
        Self::new(beta, mu, k, (r_cut - lambda) / (r_cut * k))
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn y0(&self) -> T {
        self.y0
    }

    /// Left slope `beta1 = beta - mu k / (1 - k y0)`.
    pub fn beta1(&self) -> T {
        self.beta1
    }

    pub fn with_mu(&self, mu: T) -> Result<Self> {
        Self::new(self.beta, mu, self.k, self.y0)
    }

    /// Class test: `beta (1 - k y0) / k < mu <= (1 - k y0) / (k^2 y0)`.
    pub fn in_class_g_tilde(&self) -> ClassCheck<T> {
        let gap = T::one() - self.k * self.y0;
        let lower = self.beta * gap / self.k;
        let upper = gap / (self.k * self.k * self.y0);
        ClassCheck::evaluate(
            self.mu,
            lower,
            upper,
            ClassBound::PiecewiseLower,
            ClassBound::PiecewiseUpper,
        )
    }

    /// Fixed point on the left branch, `mu y0 k / (y0 beta k - y0 k - beta + k mu + 1)`.
    pub fn kink_fixed_point(&self) -> T {
        let (b, k, y0, mu) = (self.beta, self.k, self.y0, self.mu);
        mu * y0 * k / (y0 * b * k - y0 * k - b + k * mu + T::one())
    }

    pub fn landmarks(&self) -> Result<Landmarks<T>> {
        let tol = T::tol_fix();
        let zt = self.kink_fixed_point();
        if !zt.is_finite() {
            return Err(Error::Numerical("kink fixed point is not finite"));
        }
        let mut fixed_points = Vec::new();
        if zt >= T::zero() && zt <= self.y0 {
            fixed_points.push(zt);
        }

        // A two-cycle {p, p/beta} straddling the kink: p = beta c / (1 - beta beta1).
        let mut period2_points = Vec::new();
        let denom = T::one() - self.beta * self.beta1;
        let p = self.beta * self.intercept / denom;
        let q = p / self.beta;
        if p.is_finite()
            && p >= T::zero()
            && p <= self.y0
            && q > self.y0
            && q <= self.upper()
            && (p - zt).abs() > tol
        {
            period2_points.push(p);
            period2_points.push(q);
        }

        let on_branch = |x: T| x >= T::zero() && x <= self.y0;
        let pi_set = fixed_points
            .iter()
            .chain(period2_points.iter())
            .copied()
            .filter(|&x| on_branch(x) && on_branch(self.apply(x)))
            .collect();

        Ok(Landmarks {
            critical_or_kink: self.y0,
            peak_value: self.beta * self.y0,
            fixed_points,
            period2_points,
            pi_set,
        })
    }
}

impl<T: Scalar> IntervalMap<T> for PiecewiseParams<T> {
    fn upper(&self) -> T {
        T::one() / self.k
    }

    #[inline]
    fn apply(&self, y: T) -> T {
        if y <= self.y0 {
            self.beta1 * y + self.intercept
        } else {
            self.beta * y
        }
    }

    #[inline]
    fn slope(&self, y: T) -> T {
        if y <= self.y0 {
            self.beta1
        } else {
            self.beta
        }
    }

    fn turning_point(&self) -> T {
        self.y0
    }
}

/// Either of the two maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model<T> {
    Nonlinear(NonlinearParams<T>),
    Piecewise(PiecewiseParams<T>),
}

impl<T: Scalar> Model<T> {
    pub fn landmarks(&self) -> Result<Landmarks<T>> {
        match self {
            Model::Nonlinear(p) => p.landmarks(),
            Model::Piecewise(p) => p.landmarks(),
        }
    }

    /// Class test for the model's own class, as a `Result`.
    pub fn require_class(&self) -> Result<()> {
        match self {
            Model::Nonlinear(p) => p.in_class_g().require(),
            Model::Piecewise(p) => p.in_class_g_tilde().require(),
        }
    }
}

impl<T: Scalar> IntervalMap<T> for Model<T> {
    fn upper(&self) -> T {
        match self {
            Model::Nonlinear(p) => p.upper(),
            Model::Piecewise(p) => p.upper(),
        }
    }

    #[inline]
    fn apply(&self, y: T) -> T {
        match self {
            Model::Nonlinear(p) => p.apply(y),
            Model::Piecewise(p) => p.apply(y),
        }
    }

    #[inline]
    fn slope(&self, y: T) -> T {
        match self {
            Model::Nonlinear(p) => p.slope(y),
            Model::Piecewise(p) => p.slope(y),
        }
    }

    fn turning_point(&self) -> T {
        match self {
            Model::Nonlinear(p) => p.turning_point(),
            Model::Piecewise(p) => p.turning_point(),
        }
    }
}

impl<T> From<NonlinearParams<T>> for Model<T> {
    fn from(p: NonlinearParams<T>) -> Self {
        Model::Nonlinear(p)
    }
}

impl<T> From<PiecewiseParams<T>> for Model<T> {
    fn from(p: PiecewiseParams<T>) -> Self {
        Model::Piecewise(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case_study() -> NonlinearParams<f64> {
        NonlinearParams::new(0.1, 3.7, 1.1).unwrap()
    }

    fn remark_example() -> PiecewiseParams<f64> {
        PiecewiseParams::new(0.6, 3.0, 1.1, 0.2).unwrap()
    }

    #[test]
    fn eval_at_origin_and_peak() {
        let f = case_study();
        assert_eq!(f.eval(0.0).unwrap(), 0.0);
        let s = f.critical_point();
        assert!((s - 0.46683).abs() < 1e-5);
        let expected = 3.8f64 * 3.8 / (4.0 * 3.7 * 1.1);
        assert!((f.eval(s).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.886978).abs() < 1e-6);
    }

    #[test]
    fn kink_branches_agree() {
        let h = remark_example();
        assert!((h.eval(0.2).unwrap() - 0.12).abs() < 1e-15);
        let right = h.apply(0.2 + 1e-12);
        assert!((right - 0.12).abs() < 1e-11);
        assert!((h.eval(1.0 / 1.1).unwrap() - 0.6 / 1.1).abs() < 1e-15);
    }

    #[test]
    fn eval_rejects_points_outside_domain() {
        let f = case_study();
        assert!(matches!(f.eval(-1e-9), Err(Error::Domain { .. })));
        assert!(matches!(
            f.eval(1.0 / 1.1 + 1e-9),
            Err(Error::Domain { .. })
        ));
        assert!(f.eval(f64::NAN).is_err());
        assert!(remark_example().derivative(2.0).is_err());
    }

    #[test]
    fn derivative_closed_forms() {
        let f = case_study();
        assert!(f.derivative(f.critical_point()).unwrap().abs() < 1e-15);
        let z = f.nontrivial_fixed_point();
        assert!((f.derivative(z).unwrap() - (-1.8)).abs() < 1e-12);
        let h = remark_example();
        let b1 = 0.6 - 3.3 / 0.78;
        assert!((h.derivative(0.1).unwrap() - b1).abs() < 1e-14);
        assert!((b1 - (-3.630769230769)).abs() < 1e-9);
        assert_eq!(h.derivative(0.2).unwrap(), h.beta1());
        assert_eq!(h.derivative(0.5).unwrap(), 0.6);
    }

    #[test]
    fn landmarks_of_case_study() {
        let lm = case_study().landmarks().unwrap();
        let z = 2.8 / 4.07;
        assert_eq!(lm.fixed_points.len(), 2);
        assert_eq!(lm.fixed_points[0], 0.0);
        assert!((lm.fixed_points[1] - z).abs() < 1e-15);
        assert!((z - 0.687960).abs() < 1e-6);
        assert_eq!(lm.pi_set.len(), 1);
        assert!((lm.pi_set[0] - z).abs() < 1e-12);
        // The genuine two-cycle lies off the decreasing branch image.
        assert_eq!(lm.period2_points.len(), 2);
    }

    #[test]
    fn degenerate_fixed_point_coincides_with_origin() {
        let f = NonlinearParams::new(0.4, 0.6, 1.0).unwrap();
        assert_eq!(f.nontrivial_fixed_point(), 0.0);
        assert_eq!(f.landmarks().unwrap().fixed_points, vec![0.0]);
    }

    #[test]
    fn kink_fixed_point_of_remark_example() {
        let h = remark_example();
        let lm = h.landmarks().unwrap();
        let zt = 0.66 / 3.612;
        assert!((lm.fixed_points[0] - zt).abs() < 1e-14);
        assert!((zt - 0.182724).abs() < 1e-6);
        assert!((h.apply(zt) - zt).abs() < 1e-12);
        assert_eq!(lm.pi_set.len(), 1);
        assert!((lm.pi_set[0] - zt).abs() < 1e-14);
        for &p in &lm.period2_points {
            assert!((h.apply(h.apply(p)) - p).abs() < 1e-10);
        }
    }

    #[test]
    fn class_g_bounds() {
        let ok = case_study().in_class_g();
        assert!(ok.holds);
        assert!((ok.lower - 1.9).abs() < 1e-15);
        assert!((ok.upper - 3.797_366).abs() < 1e-6);

        let low = NonlinearParams::new(0.1, 1.5, 1.1).unwrap().in_class_g();
        assert!(!low.holds);
        assert_eq!(low.violated, Some(ClassBound::NonlinearLower));

        let high = NonlinearParams::new(0.1, 3.8, 1.1).unwrap().in_class_g();
        assert!(!high.holds);
        assert_eq!(high.violated, Some(ClassBound::NonlinearUpper));
    }

    #[test]
    fn class_g_upper_bound_is_inclusive() {
        let beta = 0.1f64;
        let upper = 2.0 - beta + 2.0 * (1.0 - beta).sqrt();
        assert!(
            NonlinearParams::new(beta, upper, 1.1)
                .unwrap()
                .in_class_g()
                .holds
        );
        let lower = 2.0 - beta;
        assert!(
            !NonlinearParams::new(beta, lower, 1.1)
                .unwrap()
                .in_class_g()
                .holds
        );
    }

    #[test]
    fn class_g_tilde_bounds() {
        let ok = remark_example().in_class_g_tilde();
        assert!(ok.holds);
        assert!((ok.lower - 0.6 * 0.78 / 1.1).abs() < 1e-15);
        assert!((ok.upper - 0.78 / 0.242).abs() < 1e-12);

        let low = remark_example().with_mu(0.3).unwrap().in_class_g_tilde();
        assert_eq!(low.violated, Some(ClassBound::PiecewiseLower));
        let high = remark_example().with_mu(3.3).unwrap().in_class_g_tilde();
        assert_eq!(high.violated, Some(ClassBound::PiecewiseUpper));
        assert!(matches!(
            high.require(),
            Err(Error::Class(crate::error::ClassViolation::Bound { .. }))
        ));
    }

    #[test]
    fn schwarzian_values() {
        let f = case_study();
        let expected = -1.5 * (8.14f64 / 3.8).powi(2);
        assert!((f.schwarzian(0.0).unwrap() - expected).abs() < 1e-12);
        assert!((expected + 6.8823).abs() < 1e-3);
        assert!(f.schwarzian(0.6).unwrap() < 0.0);
        assert!(matches!(
            f.schwarzian(f.critical_point()),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn alternate_constructors() {
        let f = NonlinearParams::<f64>::from_structural(0.1, 3.7, 0.5, 0.5, 1.1).unwrap();
        assert!((f.delta() - 3.7).abs() < 1e-15);
        let h = PiecewiseParams::<f64>::from_interest_cutoff(0.6, 3.0, 1.1, 0.5, 0.39).unwrap();
        assert!((h.y0() - 0.11 / 0.55).abs() < 1e-15);
        assert!(PiecewiseParams::from_interest_cutoff(0.6, 3.0, 1.1, 0.3, 0.39).is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(NonlinearParams::new(1.0, 3.7, 1.1).is_err());
        assert!(NonlinearParams::new(0.1, -3.7, 1.1).is_err());
        assert!(NonlinearParams::new(0.1, 3.7, f64::NAN).is_err());
        assert!(PiecewiseParams::new(0.6, 3.0, 1.1, 1.0).is_err());
        assert!(PiecewiseParams::new(0.6, 3.0, 1.1, 0.0).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let f = NonlinearParams::<f32>::new(0.1, 3.7, 1.1).unwrap();
        assert!((f.apply(f.critical_point()) - 0.886_978).abs() < 1e-5);
        assert!(f.in_class_g().holds);
    }
}

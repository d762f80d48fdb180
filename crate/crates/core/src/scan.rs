//! Parameter sweeps: bifurcation diagrams, Lyapunov/summability/ergodic
//! curves and the closed-form vs numeric cross-validation table.
//!
//! Grid points are independent and evaluated in parallel; rows are always
//! assembled by grid index, so output never depends on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::chaos::{
    brute_force_odd_cycle_with, classify_nonlinear, classify_piecewise, deng_criterion,
    Classification, OddCycleWitness, UnimodalSpec, ODD_CYCLE_GRID,
};
use crate::ergodic::{birkhoff_sum, budgets, iterate, lyapunov_at_critical, sc_sum_with_cutoff};
use crate::error::{Error, Result};
use crate::models::{IntervalMap, Model, NonlinearParams, PiecewiseParams};
use crate::scalar::Scalar;

/// One-parameter family swept by a scan: `delta` for the smooth model, `mu`
/// for the piecewise model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelFamily<T> {
    Nonlinear { beta: T, k: T },
    Piecewise { beta: T, k: T, y0: T },
}

impl<T: Scalar> ModelFamily<T> {
    pub fn param_name(&self) -> &'static str {
        match self {
            ModelFamily::Nonlinear { .. } => "delta",
            ModelFamily::Piecewise { .. } => "mu",
        }
    }

    pub fn model_at(&self, param: T) -> Result<Model<T>> {
        Ok(match *self {
            ModelFamily::Nonlinear { beta, k } => NonlinearParams::new(beta, param, k)?.into(),
            ModelFamily::Piecewise { beta, k, y0 } => {
                PiecewiseParams::new(beta, param, k, y0)?.into()
            }
        })
    }

    /// The default grid: `(1.9, 3.8]` in 950 steps for the smooth model and
    /// `(0.42, 3.22]` in 280 steps for the piecewise model.
    pub fn default_grid(&self) -> ParamGrid<T> {
        match self {
            ModelFamily::Nonlinear { .. } => ParamGrid::open_low(T::lit(1.9), T::lit(3.8), 950),
            ModelFamily::Piecewise { .. } => ParamGrid::open_low(T::lit(0.42), T::lit(3.22), 280),
        }
    }

    fn describe(&self) -> String {
        match self {
            ModelFamily::Nonlinear { beta, k } => format!("nonlinear beta={beta} k={k}"),
            ModelFamily::Piecewise { beta, k, y0 } => {
                format!("piecewise beta={beta} k={k} y0={y0}")
            }
        }
    }
}

/// Arithmetic grid over `[lo, hi]` or `(lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamGrid<T> {
    pub lo: T,
    pub hi: T,
    pub steps: usize,
    /// Exclude `lo`: the grid is `lo + (i+1)(hi-lo)/steps`. Otherwise
    /// `lo + i(hi-lo)/(steps-1)`.
    pub exclude_lo: bool,
}

impl<T: Scalar> ParamGrid<T> {
    pub fn closed(lo: T, hi: T, steps: usize) -> Self {
        Self {
            lo,
            hi,
            steps,
            exclude_lo: false,
        }
    }

    pub fn open_low(lo: T, hi: T, steps: usize) -> Self {
        Self {
            lo,
            hi,
            steps,
            exclude_lo: true,
        }
    }

    pub fn values(&self) -> Result<Vec<T>> {
        if self.steps < 2 || !(self.lo < self.hi) {
            return Err(Error::InvalidParameter {
                name: "steps",
                value: self.steps as f64,
                reason: "grid needs at least 2 steps and lo < hi",
            });
        }
        let span = self.hi - self.lo;
        Ok((0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    return self.hi;
                }
                if self.exclude_lo {
                    self.lo + span * T::from_usize_lossy(i + 1) / T::from_usize_lossy(self.steps)
                } else {
                    self.lo + span * T::from_usize_lossy(i) / T::from_usize_lossy(self.steps - 1)
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub param: T,
    /// One entry per column name; `None` where the statistic is unavailable.
    pub columns: Vec<Option<T>>,
    /// One entry per flag name.
    pub flags: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepDataset<T> {
    pub param_name: String,
    pub column_names: Vec<String>,
    pub flag_names: Vec<String>,
    pub rows: Vec<SweepRow<T>>,
    /// Generation settings.
    pub meta: BTreeMap<String, String>,
}

impl<T: Scalar> SweepDataset<T> {
    fn new(param_name: &str, columns: &[&str], flags: &[&str]) -> Self {
        let mut meta = BTreeMap::new();
        meta.insert("deterministic".into(), "seedless".into());
        Self {
            param_name: param_name.into(),
            column_names: columns.iter().map(|s| s.to_string()).collect(),
            flag_names: flags.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            meta,
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.column_names.iter().position(|c| c == name)
    }

    pub fn flag(&self, name: &str) -> Option<usize> {
        self.flag_names.iter().position(|c| c == name)
    }

    /// Rows whose parameter lies within `tol` of `param`.
    pub fn rows_at(&self, param: T, tol: T) -> impl Iterator<Item = &SweepRow<T>> {
        self.rows
            .iter()
            .filter(move |r| (r.param - param).abs() <= tol)
    }

    fn with_meta(mut self, entries: &[(&str, String)]) -> Self {
        for (k, v) in entries {
            self.meta.insert((*k).into(), v.clone());
        }
        self
    }
}

/// Iteration budgets for the wide sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepBudgets<T> {
    pub lyapunov_n: usize,
    pub sc_terms: usize,
    pub sc_cutoff: T,
    pub ergodic_n: usize,
}

impl<T: Scalar> Default for SweepBudgets<T> {
    fn default() -> Self {
        Self {
            lyapunov_n: budgets::LYAPUNOV_N,
            sc_terms: budgets::SC_TERMS,
            sc_cutoff: T::lit(budgets::SC_CUTOFF),
            ergodic_n: budgets::SWEEP_ERGODIC_N,
        }
    }
}

fn grid_meta<T: Scalar>(
    family: &ModelFamily<T>,
    grid: &ParamGrid<T>,
) -> Vec<(&'static str, String)> {
    vec![
        ("family", family.describe()),
        (
            "grid",
            format!(
                "{}{}, {}] steps={}",
                if grid.exclude_lo { "(" } else { "[" },
                grid.lo,
                grid.hi,
                grid.steps
            ),
        ),
    ]
}

/// Long-format bifurcation diagram: for every grid value iterate from the
/// turning point, drop `transient` values and emit `keep` rows
/// `(param, orbit_value, exited_domain)`. Escaping orbits emit `keep` rows with
/// no value and the flag set.
pub fn bifurcation<T: Scalar>(
    family: &ModelFamily<T>,
    grid: &ParamGrid<T>,
    transient: usize,
    keep: usize,
) -> Result<SweepDataset<T>> {
    let params = grid.values()?;
    if keep == 0 {
        return Err(Error::InvalidParameter {
            name: "keep",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    let blocks: Vec<Vec<SweepRow<T>>> = params
        .par_iter()
        .map(|&param| {
            let orbit = family
                .model_at(param)
                .and_then(|m| iterate(&m, m.turning_point(), keep, transient));
            match orbit {
                Ok(o) if !o.exited_domain => o
                    .values
                    .into_iter()
                    .map(|v| SweepRow {
                        param,
                        columns: vec![Some(v)],
                        flags: vec![false],
                    })
                    .collect(),
                _ => (0..keep)
                    .map(|_| SweepRow {
                        param,
                        columns: vec![None],
                        flags: vec![true],
                    })
                    .collect(),
            }
        })
        .collect();
    let mut ds = SweepDataset::new(family.param_name(), &["orbit_value"], &["exited_domain"]);
    ds.rows = blocks.into_iter().flatten().collect();
    let mut meta = grid_meta(family, grid);
    meta.push(("transient", transient.to_string()));
    meta.push(("keep", keep.to_string()));
    Ok(ds.with_meta(&meta))
}

fn wide_sweep<T: Scalar>(
    family: &ModelFamily<T>,
    grid: &ParamGrid<T>,
    columns: &[&str],
    flags: &[&str],
    row: impl Fn(T) -> (Vec<Option<T>>, Vec<bool>) + Sync,
) -> Result<SweepDataset<T>> {
    let params = grid.values()?;
    let rows = params
        .par_iter()
        .map(|&param| {
            let (columns, flags) = row(param);
            SweepRow {
                param,
                columns,
                flags,
            }
        })
        .collect();
    let mut ds = SweepDataset::new(family.param_name(), columns, flags);
    ds.rows = rows;
    Ok(ds.with_meta(&grid_meta(family, grid)))
}

/// Lyapunov exponent at the turning point per grid value.
/// Flags: `out_of_class`, `singular_orbit`.
pub fn lyapunov_sweep<T: Scalar>(
    family: &ModelFamily<T>,
    grid: &ParamGrid<T>,
    budgets: &SweepBudgets<T>,
) -> Result<SweepDataset<T>> {
    let n = budgets.lyapunov_n;
    let ds = wide_sweep(
        family,
        grid,
        &["lyapunov"],
        &["out_of_class", "singular_orbit"],
        |param| match family
            .model_at(param)
            .and_then(|m| lyapunov_at_critical(&m, n))
        {
            Ok(l) => (vec![Some(l)], vec![false, false]),
            Err(Error::SingularOrbit { .. }) => (vec![None], vec![false, true]),
            Err(_) => (vec![None], vec![true, false]),
        },
    )?;
    Ok(ds.with_meta(&[("n", n.to_string())]))
}

/// Summability partial sums per grid value (smooth model only).
/// Flags: `diverged`, `out_of_class`, `singular_orbit`.
pub fn sc_sweep<T: Scalar>(
    family: &ModelFamily<T>,
    grid: &ParamGrid<T>,
    budgets: &SweepBudgets<T>,
) -> Result<SweepDataset<T>> {
    let (beta, k) = match *family {
        ModelFamily::Nonlinear { beta, k } => (beta, k),
        ModelFamily::Piecewise { .. } => {
            return Err(Error::NotApplicable(
                "the summability test needs a smooth critical point",
            ))
        }
    };
    let (n, cutoff) = (budgets.sc_terms, budgets.sc_cutoff);
    let ds = wide_sweep(
        family,
        grid,
        &["sc_partial_sum"],
        &["diverged", "out_of_class", "singular_orbit"],
        |param| match NonlinearParams::new(beta, param, k)
            .and_then(|p| sc_sum_with_cutoff(&p, n, cutoff))
        {
            Ok(s) => (vec![Some(s.value)], vec![s.diverged, false, false]),
            Err(Error::SingularOrbit { .. }) => (vec![None], vec![true, false, true]),
            Err(_) => (vec![None], vec![false, true, false]),
        },
    )?;
    Ok(ds.with_meta(&[("n_terms", n.to_string()), ("cutoff", cutoff.to_string())]))
}

/// Time average of the orbit from the turning point per grid value.
/// Flags: `exited_domain`.
pub fn ergodic_sweep<T: Scalar>(
    family: &ModelFamily<T>,
    grid: &ParamGrid<T>,
    budgets: &SweepBudgets<T>,
) -> Result<SweepDataset<T>> {
    let n = budgets.ergodic_n;
    let ds = wide_sweep(
        family,
        grid,
        &["birkhoff_mean"],
        &["exited_domain"],
        |param| match family
            .model_at(param)
            .and_then(|m| birkhoff_sum(&m, m.turning_point(), n))
        {
            Ok(v) => (vec![Some(v)], vec![false]),
            Err(_) => (vec![None], vec![true]),
        },
    )?;
    Ok(ds.with_meta(&[("n", n.to_string())]))
}

/// One grid point of the cross-validation table.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow<T> {
    /// `[("beta", _), ("delta", _)]` or `[("beta", _), ("mu", _), ("y0", _)]`.
    pub params: Vec<(&'static str, T)>,
    pub theorem: Classification,
    /// `None` when the numeric criterion failed (reported as a mismatch).
    pub deng: Option<Classification>,
    pub oracle: Option<OddCycleWitness<T>>,
    /// Closed form and numeric criterion disagree, or the oracle found an odd
    /// cycle the closed form rules out.
    pub mismatch: bool,
    /// Closed form predicts an odd cycle that the oracle did not find within
    /// its period bound and grid resolution.
    pub oracle_missed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationTable<T> {
    pub max_period: usize,
    pub rows: Vec<ValidationRow<T>>,
}

impl<T: Scalar> ValidationTable<T> {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.mismatch).count()
    }

    pub fn oracle_misses(&self) -> usize {
        self.rows.iter().filter(|r| r.oracle_missed).count()
    }
}

fn validation_row<T: Scalar, F: Fn(T) -> T>(
    params: Vec<(&'static str, T)>,
    theorem: Classification,
    spec: &UnimodalSpec<T, F>,
    max_period: usize,
    n_grid: usize,
) -> Result<ValidationRow<T>> {
    let deng = deng_criterion(spec).ok().map(|v| v.classification);
    let oracle = brute_force_odd_cycle_with(spec, max_period, n_grid)?;
    let mismatch = deng != Some(theorem) || (oracle.is_some() && !theorem.has_odd_cycle());
    Ok(ValidationRow {
        params,
        theorem,
        deng,
        oracle,
        mismatch,
        oracle_missed: theorem.has_odd_cycle() && oracle.is_none(),
    })
}

/// Cross-checks the closed-form verdict against the numeric criterion and the
/// brute-force oracle at each point. Every point must lie in the class.
pub fn theorem_vs_oracle_nonlinear<T: Scalar>(
    points: &[NonlinearParams<T>],
    max_period: usize,
) -> Result<ValidationTable<T>> {
    let rows = points
        .par_iter()
        .map(|p| {
            let theorem = classify_nonlinear(p)?.classification;
            let spec = UnimodalSpec::from_nonlinear(*p);
            validation_row(
                vec![("beta", p.beta()), ("delta", p.delta())],
                theorem,
                &spec,
                max_period,
                ODD_CYCLE_GRID,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationTable { max_period, rows })
}

pub fn theorem_vs_oracle_piecewise<T: Scalar>(
    points: &[PiecewiseParams<T>],
    max_period: usize,
) -> Result<ValidationTable<T>> {
    let rows = points
        .par_iter()
        .map(|p| {
            let theorem = classify_piecewise(p)?.classification;
            let spec = UnimodalSpec::from_piecewise(*p);
            validation_row(
                vec![("beta", p.beta()), ("mu", p.mu()), ("y0", p.y0())],
                theorem,
                &spec,
                max_period,
                ODD_CYCLE_GRID,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationTable { max_period, rows })
}

/// `n_delta` values of `delta` for each `beta`, spread over the open-low class
/// interval `(max{2-beta, beta}, 2-beta+2 sqrt(1-beta)]`, optionally dropping
/// points within `band` of the odd-cycle threshold.
pub fn class_filling_grid<T: Scalar>(
    betas: &[T],
    n_delta: usize,
    k: T,
    band: T,
) -> Result<Vec<NonlinearParams<T>>> {
    let mut out = Vec::new();
    for &beta in betas {
        // delta = 2 is always admissible for the constructor; take the bounds from it.
        let check = NonlinearParams::new(beta, T::lit(2.0), k)?.in_class_g();
        let grid = ParamGrid::open_low(check.lower, check.upper, n_delta.max(2));
        let dc = crate::chaos::exact_chaos_threshold(beta);
        for delta in grid.values()? {
            if (delta - dc).abs() > band {
                out.push(NonlinearParams::new(beta, delta, k)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonlinear() -> ModelFamily<f64> {
        ModelFamily::Nonlinear { beta: 0.1, k: 1.1 }
    }

    fn piecewise() -> ModelFamily<f64> {
        ModelFamily::Piecewise {
            beta: 0.6,
            k: 1.1,
            y0: 0.2,
        }
    }

    #[test]
    fn grid_shapes() {
        let g = ParamGrid::<f64>::open_low(1.9, 3.8, 950).values().unwrap();
        assert_eq!(g.len(), 950);
        assert!((g[0] - 1.902).abs() < 1e-12);
        assert_eq!(*g.last().unwrap(), 3.8);
        assert!(g.windows(2).all(|w| ((w[1] - w[0]) - 0.002).abs() < 1e-12));
        let c = ParamGrid::closed(0.0, 1.0, 5).values().unwrap();
        assert_eq!(c, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(ParamGrid::closed(0.0, 1.0, 1).values().is_err());
    }

    #[test]
    fn bifurcation_row_count() {
        let ds = bifurcation(&nonlinear(), &ParamGrid::closed(2.5, 3.7, 2), 100, 7).unwrap();
        assert_eq!(ds.rows.len(), 14);
        assert_eq!(ds.column_names, vec!["orbit_value"]);
        assert_eq!(ds.flag_names, vec!["exited_domain"]);
    }

    #[test]
    fn bifurcation_flags_escaping_orbits() {
        let ds = bifurcation(&nonlinear(), &ParamGrid::closed(3.7, 3.9, 2), 10, 5).unwrap();
        let escaped: Vec<_> = ds.rows_at(3.9, 1e-12).collect();
        assert_eq!(escaped.len(), 5);
        assert!(escaped.iter().all(|r| r.flags[0] && r.columns[0].is_none()));
        assert!(ds
            .rows_at(3.7, 1e-12)
            .all(|r| !r.flags[0] && r.columns[0].is_some()));
    }

    #[test]
    fn sweeps_are_deterministic() {
        let g = ParamGrid::open_low(3.4, 3.8, 40);
        let a = lyapunov_sweep(&nonlinear(), &g, &SweepBudgets::default()).unwrap();
        let b = lyapunov_sweep(&nonlinear(), &g, &SweepBudgets::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 40);
        // 3.8 is above the class bound.
        assert!(a.rows.last().unwrap().flags[0]);
    }

    #[test]
    fn sc_sweep_rejects_piecewise() {
        let g = ParamGrid::open_low(1.0, 2.0, 4);
        assert!(sc_sweep(&piecewise(), &g, &SweepBudgets::default()).is_err());
    }

    #[test]
    fn sc_sweep_flags() {
        let g = ParamGrid::closed(3.7, 3.74, 2);
        let ds = sc_sweep(&nonlinear(), &g, &SweepBudgets::default()).unwrap();
        assert!(!ds.rows[0].flags[0]);
        assert!(ds.rows[1].flags[0]);
    }

    #[test]
    fn ergodic_sweep_piecewise() {
        let g = piecewise().default_grid();
        let ds = ergodic_sweep(&piecewise(), &g, &SweepBudgets::default()).unwrap();
        assert_eq!(ds.rows.len(), 280);
        assert!(ds
            .rows
            .iter()
            .all(|r| !r.flags[0] && r.columns[0].is_some()));
    }

    #[test]
    fn validation_single_points() {
        let pts = [
            NonlinearParams::new(0.1, 3.7, 1.1).unwrap(),
            NonlinearParams::new(0.1, 2.5, 1.1).unwrap(),
        ];
        let t = theorem_vs_oracle_nonlinear(&pts, 9).unwrap();
        assert_eq!(t.mismatches(), 0);
        assert!(t.rows[0].theorem.has_odd_cycle() && t.rows[0].oracle.is_some());
        assert!(!t.rows[1].theorem.has_odd_cycle() && t.rows[1].oracle.is_none());
    }

    #[test]
    fn class_grid_stays_in_class() {
        let pts = class_filling_grid(&[0.1, 0.3], 10, 1.1, 1e-6).unwrap();
        assert_eq!(pts.len(), 20);
        assert!(pts.iter().all(|p| p.in_class_g().holds));
    }
}

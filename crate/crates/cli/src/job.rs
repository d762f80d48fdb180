//! One dataset-producing computation, shared by the subcommands and the
//! figure presets.

use keynes_chaos::ergodic::{
    birkhoff_convergence, birkhoff_sum_extended, density_histogram, iterate, lyapunov_convergence,
    sc_partial_sums,
};
use keynes_chaos::scan::{
    bifurcation, ergodic_sweep, lyapunov_sweep, sc_sweep, ModelFamily, ParamGrid, SweepBudgets,
};
use keynes_chaos::{IntervalMap, Map, Nonlinear, Piecewise, Result};

use crate::svg::PlotKind;
use crate::table::{Cell, Table};

#[derive(Debug, Clone)]
pub enum Job {
    /// `n` values from the turning point.
    Orbit {
        model: Map,
        n: usize,
    },
    LyapunovConvergence {
        model: Map,
        n: usize,
    },
    ScConvergence {
        params: Nonlinear,
        terms: usize,
        cutoff: f64,
    },
    Density {
        model: Map,
        n: usize,
        transient: usize,
        bins: usize,
    },
    ErgodicConvergence {
        model: Map,
        n: usize,
    },
    /// Starts may sit just outside the domain if their image lies inside.
    ErgodicStarts {
        model: Map,
        starts: Vec<f64>,
        n: usize,
    },
    Bifurcation {
        family: ModelFamily<f64>,
        grid: ParamGrid<f64>,
        transient: usize,
        keep: usize,
    },
    LyapunovSweep {
        family: ModelFamily<f64>,
        grid: ParamGrid<f64>,
        n: usize,
    },
    ScSweep {
        family: ModelFamily<f64>,
        grid: ParamGrid<f64>,
        terms: usize,
        cutoff: f64,
    },
    ErgodicSweep {
        family: ModelFamily<f64>,
        grid: ParamGrid<f64>,
        n: usize,
    },
    /// Graph of `h^n` on `points` equally spaced points of `[0, 1/k]`.
    IterateGraph {
        params: Piecewise,
        n: usize,
        points: usize,
    },
}

/// A computed table plus how to plot it.
pub struct Product {
    pub table: Table,
    pub plot: PlotKind,
    pub x: &'static str,
    pub y: &'static str,
}

impl Product {
    fn new(table: Table, plot: PlotKind, x: &'static str, y: &'static str) -> Self {
        Self { table, plot, x, y }
    }
}

fn budgets(
    lyapunov_n: usize,
    sc_terms: usize,
    sc_cutoff: f64,
    ergodic_n: usize,
) -> SweepBudgets<f64> {
    SweepBudgets {
        lyapunov_n,
        sc_terms,
        sc_cutoff,
        ergodic_n,
    }
}

pub fn run(job: &Job) -> Result<Product> {
    let d = SweepBudgets::<f64>::default();
    Ok(match job {
        Job::Orbit { model, n } => {
            let o = iterate(model, model.turning_point(), *n, 0)?;
            Product::new(Table::from_orbit(&o), PlotKind::Line, "step", "value")
        }
        Job::LyapunovConvergence { model, n } => {
            let v = lyapunov_convergence(model, *n)?;
            Product::new(
                Table::running("lyapunov", &v),
                PlotKind::Line,
                "n",
                "lyapunov",
            )
        }
        Job::ScConvergence {
            params,
            terms,
            cutoff,
        } => {
            let v = sc_partial_sums(params, *terms, *cutoff)?;
            Product::new(
                Table::running("partial_sum", &v),
                PlotKind::Line,
                "n",
                "partial_sum",
            )
        }
        Job::Density {
            model,
            n,
            transient,
            bins,
        } => {
            let est = density_histogram(model, model.turning_point(), *n, *transient, *bins)?;
            Product::new(
                Table::from_density(&est),
                PlotKind::Histogram,
                "bin_left",
                "density",
            )
        }
        Job::ErgodicConvergence { model, n } => {
            let v = birkhoff_convergence(model, model.turning_point(), *n)?;
            Product::new(
                Table::running("average", &v),
                PlotKind::Line,
                "n",
                "average",
            )
        }
        Job::ErgodicStarts { model, starts, n } => {
            let mut t = Table::new(&["start", "average"]);
            for &y in starts {
                t.push(vec![
                    Cell::Num(y),
                    Cell::Num(birkhoff_sum_extended(model, y, *n)?),
                ]);
            }
            Product::new(t, PlotKind::Scatter, "start", "average")
        }
        Job::Bifurcation {
            family,
            grid,
            transient,
            keep,
        } => {
            let ds = bifurcation(family, grid, *transient, *keep)?;
            Product::new(
                Table::from_sweep(&ds),
                PlotKind::Scatter,
                "param",
                "orbit_value",
            )
        }
        Job::LyapunovSweep { family, grid, n } => {
            let ds = lyapunov_sweep(
                family,
                grid,
                &budgets(*n, d.sc_terms, d.sc_cutoff, d.ergodic_n),
            )?;
            Product::new(
                Table::from_sweep(&ds),
                PlotKind::Scatter,
                "param",
                "lyapunov",
            )
        }
        Job::ScSweep {
            family,
            grid,
            terms,
            cutoff,
        } => {
            let ds = sc_sweep(
                family,
                grid,
                &budgets(d.lyapunov_n, *terms, *cutoff, d.ergodic_n),
            )?;
            Product::new(
                Table::from_sweep(&ds),
                PlotKind::Scatter,
                "param",
                "sc_partial_sum",
            )
        }
        Job::ErgodicSweep { family, grid, n } => {
            let ds = ergodic_sweep(
                family,
                grid,
                &budgets(d.lyapunov_n, d.sc_terms, d.sc_cutoff, *n),
            )?;
            Product::new(
                Table::from_sweep(&ds),
                PlotKind::Line,
                "param",
                "birkhoff_mean",
            )
        }
        Job::IterateGraph { params, n, points } => {
            let grid = ParamGrid::closed(0.0, params.upper(), (*points).max(2)).values()?;
            let mut t = Table::new(&["y", "iterate"]);
            for y in grid {
                t.push(vec![Cell::Num(y), Cell::Num(params.iterate_n(y, *n))]);
            }
            Product::new(t, PlotKind::Scatter, "y", "iterate")
        }
    })
}

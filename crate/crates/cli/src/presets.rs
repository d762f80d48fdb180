//! Figure presets for `reproduce`, with the budgets used in the published
//! computations.

use keynes_chaos::ergodic::budgets;
use keynes_chaos::scan::{ModelFamily, ParamGrid};
use keynes_chaos::{Map, Nonlinear, Piecewise};

use crate::job::Job;

pub const BIFURCATION_TRANSIENT: usize = 900;
pub const BIFURCATION_KEEP: usize = 100;
pub const GRAPH_POINTS: usize = 2001;

pub struct Preset {
    pub id: &'static str,
    pub title: &'static str,
    /// `(file suffix, job)`; the suffix is empty for single-dataset figures.
    pub jobs: Vec<(&'static str, Job)>,
}

fn case_study() -> Nonlinear {
    Nonlinear::new(0.1, 3.7, 1.1).expect("case-study parameters are valid")
}

fn smooth_family() -> ModelFamily<f64> {
    ModelFamily::Nonlinear { beta: 0.1, k: 1.1 }
}

fn piecewise_family() -> ModelFamily<f64> {
    ModelFamily::Piecewise {
        beta: 0.6,
        k: 1.1,
        y0: 0.2,
    }
}

fn piecewise(mu: f64) -> Piecewise {
    Piecewise::new(0.6, mu, 1.1, 0.2).expect("worked-example parameters are valid")
}

fn density_at(delta: f64) -> Job {
    Job::Density {
        model: Nonlinear::new(0.1, delta, 1.1).expect("valid").into(),
        n: budgets::DENSITY_N,
        transient: budgets::DENSITY_TRANSIENT,
        bins: budgets::DENSITY_BINS,
    }
}

fn bifurcation(family: ModelFamily<f64>, grid: ParamGrid<f64>) -> Job {
    Job::Bifurcation {
        family,
        grid,
        transient: BIFURCATION_TRANSIENT,
        keep: BIFURCATION_KEEP,
    }
}

pub fn all() -> Vec<Preset> {
    let f: Map = case_study().into();
    let smooth = smooth_family();
    let pw = piecewise_family();
    vec![
        Preset {
            id: "fig1-orbit",
            title: "First 100 iterates of the critical orbit",
            jobs: vec![(
                "",
                Job::Orbit {
                    model: f,
                    n: budgets::ORBIT_N,
                },
            )],
        },
        Preset {
            id: "fig2-lyapunov-convergence",
            title: "Convergence of the Lyapunov exponent",
            jobs: vec![(
                "",
                Job::LyapunovConvergence {
                    model: f,
                    n: budgets::LYAPUNOV_N,
                },
            )],
        },
        Preset {
            id: "fig3-sc-convergence",
            title: "Convergence of the summability series",
            jobs: vec![(
                "",
                Job::ScConvergence {
                    params: case_study(),
                    terms: budgets::SC_TERMS,
                    cutoff: budgets::SC_CUTOFF,
                },
            )],
        },
        Preset {
            id: "fig4-density",
            title: "Estimate of the invariant density, delta = 3.7",
            jobs: vec![("", density_at(3.7))],
        },
        Preset {
            id: "fig5-ergodic-convergence",
            title: "Convergence of the time average from the critical point",
            jobs: vec![(
                "",
                Job::ErgodicConvergence {
                    model: f,
                    n: budgets::BIRKHOFF_N,
                },
            )],
        },
        Preset {
            id: "fig6-ergodic-starts",
            title: "Time averages from starts 0.01, ..., 0.91",
            jobs: vec![(
                "",
                Job::ErgodicStarts {
                    model: f,
                    starts: (1..=91).map(|i| i as f64 / 100.0).collect(),
                    n: budgets::BIRKHOFF_STARTS_N,
                },
            )],
        },
        Preset {
            id: "fig7-bifurcation",
            title: "Bifurcation diagram of the smooth model",
            jobs: vec![("", bifurcation(smooth, smooth.default_grid()))],
        },
        Preset {
            id: "fig8-bifurcation-zoom",
            title: "Bifurcation diagram in the chaotic region",
            jobs: vec![("", bifurcation(smooth, ParamGrid::open_low(3.45, 3.8, 700)))],
        },
        Preset {
            id: "fig9-lyapunov-sweep",
            title: "Lyapunov exponents of the smooth model",
            jobs: vec![(
                "",
                Job::LyapunovSweep {
                    family: smooth,
                    grid: smooth.default_grid(),
                    n: budgets::LYAPUNOV_N,
                },
            )],
        },
        Preset {
            id: "fig10-sc-sweep",
            title: "Summability sums of the smooth model",
            jobs: vec![(
                "",
                Job::ScSweep {
                    family: smooth,
                    grid: ParamGrid::open_low(3.45, 3.8, 350),
                    terms: budgets::SC_TERMS,
                    cutoff: budgets::SC_CUTOFF,
                },
            )],
        },
        Preset {
            id: "fig11-ergodic-sweep",
            title: "Average income under the smooth model",
            jobs: vec![(
                "",
                Job::ErgodicSweep {
                    family: smooth,
                    grid: smooth.default_grid(),
                    n: budgets::SWEEP_ERGODIC_N,
                },
            )],
        },
        Preset {
            id: "fig12-densities-359-379",
            title: "Invariant densities, delta = 3.59 and 3.79",
            jobs: vec![
                ("delta3.59", density_at(3.59)),
                ("delta3.79", density_at(3.79)),
            ],
        },
        Preset {
            id: "fig-bifurcation-piecewise",
            title: "Bifurcation diagram of the piecewise model",
            jobs: vec![("", bifurcation(pw, pw.default_grid()))],
        },
        Preset {
            id: "fig-h5000",
            title: "Graph of the 5000-th iterate of the piecewise map",
            jobs: [("mu1.6", 1.6), ("mu1.61", 1.61), ("mu1.8", 1.8)]
                .into_iter()
                .map(|(suffix, mu)| {
                    (
                        suffix,
                        Job::IterateGraph {
                            params: piecewise(mu),
                            n: budgets::EXPANSIVITY_N,
                            points: GRAPH_POINTS,
                        },
                    )
                })
                .collect(),
        },
        Preset {
            id: "fig-average-gdp-piecewise",
            title: "Average income under the piecewise model",
            jobs: vec![(
                "",
                Job::ErgodicSweep {
                    family: pw,
                    grid: pw.default_grid(),
                    n: budgets::SWEEP_ERGODIC_N,
                },
            )],
        },
    ]
}

pub fn find(id: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(id: &str) -> Job {
        let mut p = find(id).unwrap();
        assert_eq!(p.jobs.len(), 1, "{id}");
        p.jobs.remove(0).1
    }

    #[test]
    fn every_listed_figure_exists_once() {
        let ids = [
            "fig1-orbit",
            "fig2-lyapunov-convergence",
            "fig3-sc-convergence",
            "fig4-density",
            "fig5-ergodic-convergence",
            "fig6-ergodic-starts",
            "fig7-bifurcation",
            "fig8-bifurcation-zoom",
            "fig9-lyapunov-sweep",
            "fig10-sc-sweep",
            "fig11-ergodic-sweep",
            "fig12-densities-359-379",
            "fig-bifurcation-piecewise",
            "fig-h5000",
            "fig-average-gdp-piecewise",
        ];
        let all = all();
        assert_eq!(all.len(), ids.len());
        for id in ids {
            assert_eq!(all.iter().filter(|p| p.id == id).count(), 1, "{id}");
        }
    }

    #[test]
    fn budgets_match_the_published_runs() {
        assert!(matches!(only("fig1-orbit"), Job::Orbit { n: 100, .. }));
        assert!(matches!(
            only("fig2-lyapunov-convergence"),
            Job::LyapunovConvergence { n: 10_000, .. }
        ));
        match only("fig3-sc-convergence") {
            Job::ScConvergence { terms, cutoff, .. } => {
                assert_eq!(terms, 1_000);
                assert_eq!(cutoff, 10.0);
            }
            _ => panic!("fig3"),
        }
        assert!(matches!(
            only("fig4-density"),
            Job::Density {
                n: 10_000,
                transient: 1_000,
                ..
            }
        ));
        assert!(matches!(
            only("fig5-ergodic-convergence"),
            Job::ErgodicConvergence { n: 100_000, .. }
        ));
        match only("fig6-ergodic-starts") {
            Job::ErgodicStarts { starts, n, .. } => {
                assert_eq!(n, 5_000);
                assert_eq!(starts.len(), 91);
                assert_eq!((starts[0], starts[90]), (0.01, 0.91));
            }
            _ => panic!("fig6"),
        }
        match only("fig7-bifurcation") {
            Job::Bifurcation {
                grid,
                transient,
                keep,
                ..
            } => {
                assert_eq!(
                    (grid.lo, grid.hi, grid.steps, grid.exclude_lo),
                    (1.9, 3.8, 950, true)
                );
                assert_eq!((transient, keep), (900, 100));
            }
            _ => panic!("fig7"),
        }
        assert!(matches!(
            only("fig9-lyapunov-sweep"),
            Job::LyapunovSweep { n: 10_000, .. }
        ));
        match only("fig10-sc-sweep") {
            Job::ScSweep {
                grid,
                terms,
                cutoff,
                ..
            } => {
                assert_eq!((grid.lo, grid.hi), (3.45, 3.8));
                assert_eq!((terms, cutoff), (1_000, 10.0));
            }
            _ => panic!("fig10"),
        }
        assert!(matches!(
            only("fig11-ergodic-sweep"),
            Job::ErgodicSweep { n: 2_000, .. }
        ));
        match only("fig-average-gdp-piecewise") {
            Job::ErgodicSweep { grid, n, .. } => {
                assert_eq!(n, 2_000);
                assert_eq!((grid.lo, grid.hi, grid.steps), (0.42, 3.22, 280));
            }
            _ => panic!("piecewise average"),
        }
        for (_, job) in find("fig12-densities-359-379").unwrap().jobs {
            assert!(matches!(
                job,
                Job::Density {
                    n: 10_000,
                    transient: 1_000,
                    ..
                }
            ));
        }
        let h = find("fig-h5000").unwrap();
        assert_eq!(h.jobs.len(), 3);
        for (_, job) in h.jobs {
            assert!(matches!(job, Job::IterateGraph { n: 5_000, .. }));
        }
    }
}

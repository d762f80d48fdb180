use std::io::{self, Write};
use std::path::{Path, PathBuf};

use keynes_chaos::chaos::{
    brute_force_odd_cycle, classify_nonlinear, classify_piecewise, deng_criterion,
};
use keynes_chaos::ergodic::{
    birkhoff_sum_extended, expansivity_report, lyapunov_at_critical, sc_sum_with_cutoff,
    NumericCheck,
};
use keynes_chaos::scan::{ModelFamily, ParamGrid};
use keynes_chaos::{Error, IntervalMap, Map, Nonlinear, Piecewise, UnimodalSpec, Verdict};

use crate::args::*;
use crate::job::{self, Job, Product};
use crate::presets;
use crate::svg::{self, SvgError};
use crate::table::{write_csv, write_csv_to};

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Plot(#[from] SvgError),
}

impl AppError {
    /// 1 for usage and I/O problems, 2 for parameter, domain and class errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Core(_) => 2,
            _ => 1,
        }
    }
}

type AppResult<T = ()> = Result<T, AppError>;

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

pub fn build_model(a: &ModelArgs) -> AppResult<Map> {
    let k = a.k.unwrap_or(1.1);
    Ok(match a.model {
        ModelKind::Nonlinear => {
            if a.y0.is_some() || a.r_cut.is_some() {
                return Err(usage("--y0/--r-cut apply to the piecewise model only"));
            }
            let beta = a.beta.unwrap_or(0.1);
            match a.alpha {
                Some(alpha) => {
                    let (mu, lambda) = (
                        a.mu.expect("clap requires --mu"),
                        a.lambda.expect("clap requires --lambda"),
                    );
                    Nonlinear::from_structural(beta, mu, alpha, lambda, k)?.into()
                }
                None => {
                    if a.mu.is_some() {
                        return Err(usage(
                            "--mu needs --alpha and --lambda for the nonlinear model",
                        ));
                    }
                    Nonlinear::new(beta, a.delta.unwrap_or(3.7), k)?.into()
                }
            }
        }
        ModelKind::Piecewise => {
            if a.delta.is_some() || a.alpha.is_some() {
                return Err(usage("--delta/--alpha apply to the nonlinear model only"));
            }
            let (beta, mu) = (a.beta.unwrap_or(0.6), a.mu.unwrap_or(3.0));
            match a.r_cut {
                Some(r) => Piecewise::from_interest_cutoff(
                    beta,
                    mu,
                    k,
                    r,
                    a.lambda.expect("clap requires --lambda"),
                )?,
                None => Piecewise::new(beta, mu, k, a.y0.unwrap_or(0.2))?,
            }
            .into()
        }
    })
}

fn build_family(a: &ModelArgs) -> AppResult<ModelFamily<f64>> {
    Ok(match build_model(a)? {
        Map::Nonlinear(p) => ModelFamily::Nonlinear {
            beta: p.beta(),
            k: p.k(),
        },
        Map::Piecewise(p) => ModelFamily::Piecewise {
            beta: p.beta(),
            k: p.k(),
            y0: p.y0(),
        },
    })
}

fn build_grid(family: &ModelFamily<f64>, g: &GridArgs) -> ParamGrid<f64> {
    let d = family.default_grid();
    let (lo, hi, steps) = (
        g.lo.unwrap_or(d.lo),
        g.hi.unwrap_or(d.hi),
        g.steps.unwrap_or(d.steps),
    );
    if g.closed {
        ParamGrid::closed(lo, hi, steps)
    } else {
        ParamGrid::open_low(lo, hi, steps)
    }
}

fn resolve_start(model: &Map, s: Start) -> f64 {
    match s {
        Start::Critical => model.turning_point(),
        Start::At(v) => v,
    }
}

struct Printer {
    precision: usize,
}

impl Printer {
    fn num(&self, v: f64) -> String {
        format!("{v:.*}", self.precision)
    }

    fn kv(&self, key: &str, v: f64) {
        println!("{key} = {}", self.num(v));
    }
}

/// Writes a product to `--out`, or for dataset commands to stdout as CSV.
fn emit(
    p: &Product,
    out: &OutputArgs,
    provenance: &str,
    title: &str,
    stdout_fallback: bool,
) -> AppResult {
    match (&out.out, out.format) {
        (Some(path), Format::Csv) => write_csv(&p.table, path, provenance)?,
        (Some(path), Format::Svg) => svg::write_svg(&p.table, path, p.plot, p.x, p.y, title)?,
        (None, Format::Svg) => return Err(usage("--format svg needs --out")),
        (None, Format::Csv) if stdout_fallback => {
            let stdout = io::stdout();
            write_csv_to(&p.table, stdout.lock(), provenance)?;
        }
        (None, Format::Csv) => {}
    }
    Ok(())
}

fn print_verdict(pr: &Printer, prefix: &str, v: &Verdict) {
    println!("{prefix}binding = {}", v.binding);
    for (k, &val) in &v.thresholds {
        pr.kv(&format!("{prefix}{k}"), val);
    }
}

pub fn run(cli: Cli, provenance: &str) -> AppResult {
    match cli.command {
        Command::ChaosCheck(a) => chaos_check(a),
        Command::Orbit(a) => {
            let model = build_model(&a.model)?;
            let start = resolve_start(&model, a.start.start);
            let o = keynes_chaos::ergodic::iterate(&model, start, a.n, a.transient)?;
            if o.exited_domain {
                eprintln!(
                    "warning: orbit left [0, {}] after {} retained values; series truncated",
                    model.upper(),
                    o.values.len()
                );
            }
            let p = Product {
                table: crate::table::Table::from_orbit(&o),
                plot: svg::PlotKind::Line,
                x: "step",
                y: "value",
            };
            emit(&p, &a.output, provenance, "Orbit", true)
        }
        Command::Lyapunov(a) => {
            let model = build_model(&a.model)?;
            let pr = Printer {
                precision: a.output.precision as usize,
            };
            println!("{}", pr.num(lyapunov_at_critical(&model, a.n)?));
            if a.output.out.is_some() || a.output.format == Format::Svg {
                let p = job::run(&Job::LyapunovConvergence { model, n: a.n })?;
                emit(
                    &p,
                    &a.output,
                    provenance,
                    "Convergence of the Lyapunov exponent",
                    false,
                )?;
            }
            Ok(())
        }
        Command::ScSum(a) => {
            let params = match build_model(&a.model)? {
                Map::Nonlinear(p) => p,
                Map::Piecewise(_) => {
                    return Err(Error::NotApplicable(
                        "the summability test needs the nonlinear model",
                    )
                    .into())
                }
            };
            let pr = Printer {
                precision: a.output.precision as usize,
            };
            let s = sc_sum_with_cutoff(&params, a.terms, a.sc_cutoff)?;
            println!("{}", pr.num(s.value));
            println!("diverged = {}", s.diverged);
            println!("terms_used = {}", s.terms_used);
            if a.output.out.is_some() || a.output.format == Format::Svg {
                let p = job::run(&Job::ScConvergence {
                    params,
                    terms: a.terms,
                    cutoff: a.sc_cutoff,
                })?;
                emit(&p, &a.output, provenance, "Summability partial sums", false)?;
            }
            Ok(())
        }
        Command::ErgodicSum(a) => {
            let model = build_model(&a.model)?;
            let start = resolve_start(&model, a.start.start);
            let pr = Printer {
                precision: a.output.precision as usize,
            };
            println!("{}", pr.num(birkhoff_sum_extended(&model, start, a.n)?));
            if a.output.out.is_some() || a.output.format == Format::Svg {
                let v = keynes_chaos::ergodic::birkhoff_convergence(&model, start, a.n)?;
                let p = Product {
                    table: crate::table::Table::running("average", &v),
                    plot: svg::PlotKind::Line,
                    x: "n",
                    y: "average",
                };
                emit(
                    &p,
                    &a.output,
                    provenance,
                    "Convergence of the time average",
                    false,
                )?;
            }
            Ok(())
        }
        Command::Density(a) => {
            let model = build_model(&a.model)?;
            let start = resolve_start(&model, a.start.start);
            let est =
                keynes_chaos::ergodic::density_histogram(&model, start, a.n, a.transient, a.bins)?;
            let p = Product {
                table: crate::table::Table::from_density(&est),
                plot: svg::PlotKind::Histogram,
                x: "bin_left",
                y: "density",
            };
            emit(
                &p,
                &a.output,
                provenance,
                "Invariant density estimate",
                true,
            )
        }
        Command::Bifurcation(a) => {
            let family = build_family(&a.model)?;
            let grid = build_grid(&family, &a.grid);
            let p = job::run(&Job::Bifurcation {
                family,
                grid,
                transient: a.transient,
                keep: a.keep,
            })?;
            emit(&p, &a.output, provenance, "Bifurcation diagram", true)
        }
        Command::Sweep(a) => {
            let family = build_family(&a.model)?;
            let grid = build_grid(&family, &a.grid);
            let d = keynes_chaos::scan::SweepBudgets::<f64>::default();
            let (j, title) = match a.stat {
                Stat::Lyapunov => (
                    Job::LyapunovSweep {
                        family,
                        grid,
                        n: a.n.unwrap_or(d.lyapunov_n),
                    },
                    "Lyapunov exponents",
                ),
                Stat::Sc => (
                    Job::ScSweep {
                        family,
                        grid,
                        terms: a.terms,
                        cutoff: a.sc_cutoff,
                    },
                    "Summability sums",
                ),
                Stat::Ergodic => (
                    Job::ErgodicSweep {
                        family,
                        grid,
                        n: a.n.unwrap_or(d.ergodic_n),
                    },
                    "Time averages",
                ),
            };
            let p = job::run(&j)?;
            emit(&p, &a.output, provenance, title, true)
        }
        Command::Expansivity(a) => {
            let params = match build_model(&a.model)? {
                Map::Piecewise(p) => p,
                Map::Nonlinear(_) => {
                    return Err(Error::NotApplicable(
                        "the expansivity certificate needs the piecewise model",
                    )
                    .into())
                }
            };
            let pr = Printer {
                precision: a.output.precision as usize,
            };
            let check = a.numeric.then_some(NumericCheck {
                n: a.n,
                samples: a.samples,
            });
            let r = expansivity_report(&params, check)?;
            println!(
                "{}",
                if r.certified {
                    "certified"
                } else {
                    "not certified"
                }
            );
            pr.kv("beta1", r.beta1);
            println!("istar = {}", r.istar);
            pr.kv("criterion_lhs", r.criterion_lhs);
            pr.kv("mu_threshold", r.mu_threshold);
            if let Some(m) = r.numeric_min_log_expansion {
                pr.kv("numeric_min_log_expansion", m);
            }
            if a.output.out.is_some() || a.output.format == Format::Svg {
                let p = job::run(&Job::IterateGraph {
                    params,
                    n: a.n,
                    points: a.graph_points,
                })?;
                emit(
                    &p,
                    &a.output,
                    provenance,
                    "Graph of the n-th iterate",
                    false,
                )?;
            }
            Ok(())
        }
        Command::Reproduce(a) => reproduce(a, provenance),
    }
}

fn chaos_check(a: CheckArgs) -> AppResult {
    let pr = Printer {
        precision: a.precision as usize,
    };
    let model = build_model(&a.model)?;
    let (verdict, spec) = match model {
        Map::Nonlinear(p) => (classify_nonlinear(&p)?, UnimodalSpec::from_nonlinear(p)),
        Map::Piecewise(p) => (classify_piecewise(&p)?, UnimodalSpec::from_piecewise(p)),
    };
    println!("{}", verdict.classification);
    print_verdict(&pr, "", &verdict);
    if a.numeric {
        let v = deng_criterion(&spec)?;
        println!("numeric = {}", v.classification);
        print_verdict(&pr, "numeric.", &v);
    }
    if let Some(max_period) = a.oracle {
        match brute_force_odd_cycle(&spec, max_period)? {
            Some(w) => println!("oracle = period {} at {}", w.period, pr.num(w.point)),
            None => println!("oracle = none up to period {max_period}"),
        }
    }
    Ok(())
}

fn reproduce(a: ReproduceArgs, provenance: &str) -> AppResult {
    if a.list {
        for p in presets::all() {
            println!("{:<28} {}", p.id, p.title);
        }
        return Ok(());
    }
    let id = a
        .figure
        .as_deref()
        .expect("clap requires a figure unless --list");
    let preset = presets::find(id)
        .ok_or_else(|| usage(format!("unknown figure `{id}`; see `reproduce --list`")))?;
    let dir = a.output.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", dir.display())))?;
    for (suffix, j) in &preset.jobs {
        let product = job::run(j)?;
        let stem = if suffix.is_empty() {
            preset.id.to_string()
        } else {
            format!("{}-{suffix}", preset.id)
        };
        let csv_path = dir.join(format!("{stem}.csv"));
        write_csv(&product.table, &csv_path, provenance)?;
        report(&csv_path)?;
        if a.output.format == Format::Svg {
            let svg_path = dir.join(format!("{stem}.svg"));
            let title = if suffix.is_empty() {
                preset.title.to_string()
            } else {
                format!("{} ({suffix})", preset.title)
            };
            svg::write_svg(
                &product.table,
                &svg_path,
                product.plot,
                product.x,
                product.y,
                &title,
            )?;
            report(&svg_path)?;
        }
    }
    Ok(())
}

fn report(path: &Path) -> io::Result<()> {
    writeln!(io::stdout(), "wrote {}", path.display())
}

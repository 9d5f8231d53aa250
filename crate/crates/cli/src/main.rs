use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use stabspace::halfplane;
use stabspace::metric::{brute_force_distance, optimal_shift, oracle_tail_bound};
use stabspace::{distance, quotient_distance, DistanceBreakdown, HPoint, StabPoint};
use stabspace_cli::report::Report;
use stabspace_cli::verify::{
    run_property_suite, verify_counterexample, verify_length_bound, verify_nonunique_geodesic,
    verify_quotient_counterexample, CounterexampleConfig, LengthBoundConfig,
};

/// Distances and verification runs for stability conditions on the projective
/// line. Exit code 0 means every asserted check passed, 1 means at least one
/// failed, 2 means the run could not be carried out.
#[derive(Parser)]
#[command(name = "stabspace", version, about, propagate_version = true)]
struct Cli {
    /// Write the machine-readable result as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Write the result table as CSV to this path.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Distance between two stability conditions stored as JSON files.
    Dist {
        /// Point file, e.g. {"form":"geometric","tau":[0.5,2.0],"x":0,"y":0}.
        point1: PathBuf,
        /// Second point file, same format.
        point2: PathBuf,

        /// Compare the orbits under rescaling and phase shift instead.
        #[arg(long)]
        quotient: bool,

        /// Cross-check against the brute-force oracle over twists |n| <= N.
        #[arg(long, value_name = "N")]
        oracle_window: Option<i64>,
    },

    /// Charge-ratio distance between two half-plane points, each "re,im" or
    /// a bare boundary "re".
    Dz {
        #[arg(allow_hyphen_values = true)]
        z1: HPoint,
        #[arg(allow_hyphen_values = true)]
        z2: HPoint,
    },

    /// The not-a-length-space counterexample, full and quotient variants.
    Counterexample {
        /// Tolerance for the closed-form equality checks.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,

        /// Chamber range searched for the nearest wall point.
        #[arg(
            long,
            num_args = 2,
            value_names = ["A", "B"],
            default_values_t = [-50, 50],
            allow_negative_numbers = true
        )]
        k_range: Vec<i64>,

        /// Alpha grid steps per chamber in the wall search.
        #[arg(long, default_value_t = 161)]
        grid: usize,
    },

    /// Two distinct charge-ratio geodesics between the same endpoints.
    Geodesic {
        /// Bend offset of the competitor path, in (0, 0.1].
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
    },

    /// Wall-detour length bounds between randomized orbits.
    LengthBound {
        /// Randomized pairs per endpoint case.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Seed for the pair draws.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },

    /// Randomized invariant sweep across every module.
    Suite {
        /// Seed for every draw in the sweep.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Randomized instances per invariant.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Serialize)]
struct OracleOut {
    window: i64,
    d: f64,
    gap: f64,
    tail_bound: f64,
    within_bound: bool,
}

#[derive(Serialize)]
struct DistOut {
    breakdown: DistanceBreakdown,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleOut>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_point(path: &PathBuf) -> anyhow::Result<StabPoint> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_outputs(json: &Option<PathBuf>, csv: &Option<PathBuf>, js: &str, cv: &str) -> anyhow::Result<()> {
    if let Some(p) = json {
        fs::write(p, js).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = csv {
        fs::write(p, cv).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn emit_report(r: &Report, json: &Option<PathBuf>, csv: &Option<PathBuf>) -> anyhow::Result<bool> {
    print!("{}", r.render_text());
    write_outputs(json, csv, &r.to_json(), &r.to_csv())?;
    Ok(r.passed())
}

fn kv_csv(rows: &[(&str, f64)]) -> String {
    let mut out = String::from("name,value\n");
    for (k, v) in rows {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let Cli { json, csv, cmd } = cli;
    match cmd {
        Cmd::Dist { point1, point2, quotient, oracle_window } => {
            let s1 = read_point(&point1)?;
            let s2 = read_point(&point2)?;
            // The quotient distance is attained at the optimal shift, so the
            // oracle cross-check runs on the shifted representatives.
            let (breakdown, o1, o2) = if quotient {
                let b = quotient_distance(&s1.quotient(), &s2.quotient());
                let v = optimal_shift(&s1, &s2);
                (b, s1, s2.act(v.0, v.1))
            } else {
                (distance(&s1, &s2), s1, s2)
            };
            let oracle = oracle_window.map(|window| {
                let brute = brute_force_distance(&o1, &o2, window);
                let tail = oracle_tail_bound(&o1, &o2, window);
                let gap = (brute.d - breakdown.d).abs();
                OracleOut { window, d: brute.d, gap, tail_bound: tail, within_bound: gap <= tail + 1e-9 }
            });
            let ok = oracle.as_ref().is_none_or(|o| o.within_bound);
            let out = DistOut { breakdown, oracle };
            println!("{}", serde_json::to_string(&out)?);
            let mut rows = vec![
                ("d", out.breakdown.d),
                ("d_mass", out.breakdown.d_mass),
                ("d_phase", out.breakdown.d_phase),
            ];
            if let Some(o) = &out.oracle {
                rows.push(("oracle_d", o.d));
                rows.push(("oracle_gap", o.gap));
                rows.push(("oracle_tail_bound", o.tail_bound));
            }
            write_outputs(&json, &csv, &format!("{}\n", serde_json::to_string_pretty(&out)?), &kv_csv(&rows))?;
            Ok(ok)
        }

        Cmd::Dz { z1, z2 } => {
            let v = halfplane::d_z(z1, z2);
            println!("{}", serde_json::to_string(&v)?);
            write_outputs(&json, &csv, &format!("{}\n", serde_json::to_string(&v)?), &kv_csv(&[("d_z", v)]))?;
            Ok(true)
        }

        Cmd::Counterexample { tol, k_range, grid } => {
            let (k_min, k_max) = (k_range[0], k_range[1]);
            if k_min > k_max {
                bail!("chamber range is empty: {k_min} > {k_max}");
            }
            if !tol.is_finite() || tol <= 0.0 {
                bail!("tolerance must be positive, got {tol}");
            }
            let cfg = CounterexampleConfig { tol, k_min, k_max, grid, ..CounterexampleConfig::default() };
            let full = verify_counterexample(&cfg)?;
            let quot = verify_quotient_counterexample(&cfg)?;
            print!("{}", full.render_text());
            print!("{}", quot.render_text());
            let mut js = serde_json::to_string_pretty(&[&full, &quot])?;
            js.push('\n');
            let cv = format!("{}{}", full.to_csv(), quot.to_csv());
            write_outputs(&json, &csv, &js, &cv)?;
            Ok(full.passed() && quot.passed())
        }

        Cmd::Geodesic { epsilon } => {
            let r = verify_nonunique_geodesic(epsilon)?;
            emit_report(&r, &json, &csv)
        }

        Cmd::LengthBound { samples, seed } => {
            let r = verify_length_bound(&LengthBoundConfig { samples, seed })?;
            emit_report(&r, &json, &csv)
        }

        Cmd::Suite { seed, trials } => {
            let r = run_property_suite(seed, trials)?;
            emit_report(&r, &json, &csv)
        }
    }
}

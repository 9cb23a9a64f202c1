//! Command-line front end: decide / compute / approx / simplify / gen /
//! plot / oracle, all emitting a JSON run report on stdout.
//!
//! Exit codes: 0 = yes/success, 1 = decision answered "no", 2 = error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frechet::approx::{approx_compute, approx_decide, ApproxVariant};
use frechet::curve::{NormConfig, PiecewiseCurve};
use frechet::decision::decide;
use frechet::distance::compute;
use frechet::generate::{cpacked_zigzag, random_bezier, random_polyline};
use frechet::oracle::{march_cell_graph, sampled_frechet_bounds};
use frechet::plot::render_svg;
use frechet::report::RunReport;
use frechet::simplify::simplify;

#[derive(Parser)]
#[command(name = "frechet", about = "Fréchet distance for piecewise polynomial curves", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the Fréchet distance of two curves is at most delta.
    Decide {
        curve_a: PathBuf,
        curve_b: PathBuf,
        #[arg(long)]
        delta: f64,
    },
    /// Compute the Fréchet distance to a relative tolerance.
    Compute {
        curve_a: PathBuf,
        curve_b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Approximate decision (with --delta) or (1+eps)-approximate value.
    Approx {
        curve_a: PathBuf,
        curve_b: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Replace short pieces by straight segments of length mu.
    Simplify {
        curve: PathBuf,
        #[arg(long)]
        mu: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate a seeded random curve file.
    Gen(GenArgs),
    /// Render the free-space diagram of two curves as an SVG.
    Plot {
        curve_a: PathBuf,
        curve_b: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 240.0)]
        scale_px: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Slow reference computations for cross-checking.
    Oracle {
        curve_a: PathBuf,
        curve_b: PathBuf,
        /// Sampling step for the discrete Fréchet bounds.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// With --delta, additionally trace the boundary graph of one cell.
        #[arg(long)]
        delta: Option<f64>,
        /// Cell to trace, as piece indices into the two curves.
        #[arg(long, num_args = 2, value_names = ["I", "J"], default_values_t = [0, 0])]
        cell: Vec<usize>,
        #[arg(long, default_value_t = 2048)]
        resolution: usize,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 4)]
    pieces: usize,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Packedness target for the zigzag family.
    #[arg(long, default_value_t = 4.0)]
    c: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Bezier,
    Polyline,
    Zigzag,
}

fn load(path: &PathBuf) -> anyhow::Result<PiecewiseCurve> {
    PiecewiseCurve::read_file(path)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

fn path_str(p: &PathBuf) -> String {
    p.display().to_string()
}

/// Prints the report, ignoring a closed stdout (e.g. piping into `head`).
fn emit(r: &RunReport) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{}", r.to_json());
}

/// Runs one command; Ok(false) means the decision answered "no" (exit 1).
fn run(cli: Cli) -> anyhow::Result<bool> {
    let norm = NormConfig::default();
    let start = Instant::now();
    match cli.command {
        Command::Decide { curve_a, curve_b, delta } => {
            if !(delta > 0.0) {
                anyhow::bail!("--delta must be positive");
            }
            let (a, b) = (load(&curve_a)?, load(&curve_b)?);
            let d = decide(&a, &b, delta, norm)?;
            let mut r = RunReport::new("decide", &[path_str(&curve_a), path_str(&curve_b)]);
            r.answer = serde_json::json!({
                "reachable": d.reachable,
                "delta": delta,
                "delta_used": d.delta_used,
                "retries": d.retries,
            });
            r.tolerances = serde_json::json!({ "reach": 1e-12 });
            if d.delta_used != delta {
                r.perturbations.push(d.delta_used);
            }
            r.cells_touched = Some(d.cells - d.cells_skipped);
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&r);
            Ok(d.reachable)
        }
        Command::Compute { curve_a, curve_b, tol } => {
            if !(tol >= 1e-12) {
                anyhow::bail!("--tol must be at least 1e-12");
            }
            let (a, b) = (load(&curve_a)?, load(&curve_b)?);
            let res = compute(&a, &b, tol, norm)?;
            let mut r = RunReport::new("compute", &[path_str(&curve_a), path_str(&curve_b)]);
            r.answer = serde_json::json!({
                "value": res.value,
                "lo": res.lo,
                "hi": res.hi,
                "exact_candidate": res.exact_candidate,
                "decisions": res.decides,
            });
            r.tolerances = serde_json::json!({ "tol": tol });
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&r);
            Ok(true)
        }
        Command::Approx { curve_a, curve_b, eps, delta } => {
            if !(eps > 0.0 && eps <= 1.0) {
                anyhow::bail!("--eps must be in (0, 1]");
            }
            let (a, b) = (load(&curve_a)?, load(&curve_b)?);
            let out = match delta {
                Some(d) => {
                    if !(d > 0.0) {
                        anyhow::bail!("--delta must be positive");
                    }
                    approx_decide(&a, &b, d, eps, norm)?
                }
                None => approx_compute(&a, &b, eps, norm)?,
            };
            let mut r = RunReport::new("approx", &[path_str(&curve_a), path_str(&curve_b)]);
            let (yes, answer) = match out.variant {
                ApproxVariant::ValueApprox(v) => {
                    (true, serde_json::json!({ "kind": "value", "value": v }))
                }
                ApproxVariant::Below(t) => {
                    (true, serde_json::json!({ "kind": "below", "threshold": t }))
                }
                ApproxVariant::Above(t) => {
                    (false, serde_json::json!({ "kind": "above", "threshold": t }))
                }
            };
            r.answer = answer;
            r.tolerances = serde_json::json!({ "eps": eps });
            r.cells_touched = Some(out.cells_touched);
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&r);
            Ok(yes)
        }
        Command::Simplify { curve, mu, output } => {
            if !(mu > 0.0) {
                anyhow::bail!("--mu must be positive");
            }
            let c = load(&curve)?;
            let res = simplify(&c, mu)?;
            res.curve
                .write_file(&output)
                .map_err(|e| anyhow::anyhow!("{}: {e}", output.display()))?;
            let mut r = RunReport::new("simplify", &[path_str(&curve)]);
            r.answer = serde_json::json!({
                "output": path_str(&output),
                "pieces_in": c.num_pieces(),
                "pieces_out": res.curve.num_pieces(),
                "replacements": res.log.len(),
            });
            r.tolerances = serde_json::json!({ "mu": mu, "length_slack": 1e-9 });
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&r);
            Ok(true)
        }
        Command::Gen(g) => {
            let curve = match g.kind {
                GenKind::Bezier => random_bezier(g.pieces, g.degree, g.dim, g.seed)?,
                GenKind::Polyline => random_polyline(g.pieces, g.dim, g.seed)?,
                GenKind::Zigzag => cpacked_zigzag(g.pieces, g.c, g.seed)?,
            };
            curve
                .write_file(&g.output)
                .map_err(|e| anyhow::anyhow!("{}: {e}", g.output.display()))?;
            let mut r = RunReport::new("gen", &[]);
            r.answer = serde_json::json!({
                "output": path_str(&g.output),
                "pieces": curve.num_pieces(),
                "dim": curve.dim,
                "seed": g.seed,
            });
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&r);
            Ok(true)
        }
        Command::Plot { curve_a, curve_b, delta, scale_px, output } => {
            if !(delta > 0.0) {
                anyhow::bail!("--delta must be positive");
            }
            let (a, b) = (load(&curve_a)?, load(&curve_b)?);
            let svg = render_svg(&a, &b, delta, scale_px)?;
            std::fs::write(&output, &svg)
                .map_err(|e| anyhow::anyhow!("{}: {e}", output.display()))?;
            let mut r = RunReport::new("plot", &[path_str(&curve_a), path_str(&curve_b)]);
            r.answer = serde_json::json!({ "output": path_str(&output), "bytes": svg.len() });
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&r);
            Ok(true)
        }
        Command::Oracle { curve_a, curve_b, step, delta, cell, resolution } => {
            if !(step > 0.0) {
                anyhow::bail!("--step must be positive");
            }
            if !(64..=8192).contains(&resolution) {
                anyhow::bail!("--resolution must lie in [64, 8192]");
            }
            let (a, b) = (load(&curve_a)?, load(&curve_b)?);
            let (lo, hi) = sampled_frechet_bounds(&a, &b, step)?;
            let mut answer = serde_json::json!({ "sampled_lo": lo, "sampled_hi": hi });
            if let Some(d) = delta {
                if !(d > 0.0) {
                    anyhow::bail!("--delta must be positive");
                }
                let (i, j) = (cell[0], cell[1]);
                if i >= a.num_pieces() || j >= b.num_pieces() {
                    anyhow::bail!("--cell out of range");
                }
                let grid = frechet::freespace::mark_cell(&a.pieces[i], &b.pieces[j], d)?;
                let g = march_cell_graph(&grid.f, resolution)?;
                answer["cell"] = serde_json::json!({
                    "i": i,
                    "j": j,
                    "nodes": g.nodes,
                    "arcs": g.arcs,
                });
            }
            let mut r = RunReport::new("oracle", &[path_str(&curve_a), path_str(&curve_b)]);
            r.answer = answer;
            r.tolerances = serde_json::json!({ "step": step, "resolution": resolution });
            r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&r);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

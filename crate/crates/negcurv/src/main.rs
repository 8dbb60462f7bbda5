//! Command-line surface: every lab as a reproducible, seeded batch run.
//!
//! Exit codes encode verdicts so CI can consume the tool without parsing
//! output: 0 = checks passed, 1 = checks ran and failed, 2 = usage or
//! domain error. JSON reports embed the effective run configuration and are
//! byte-identical for identical configurations regardless of worker count
//! (cap workers with `NEGCURV_THREADS`).

use clap::{Parser, Subcommand};
use negcurv::{
    check_conditions, curvature_range_report, default_grid, four_point_delta, integrate_geodesic,
    key_lemma_check, lemma_not_triangle, schwarz_bound_check, thin_triangle_defect, triangle,
    Combiner, Error, GeodesicError, MetricSpace, RadialPotential, SchwarzConstants, SpacePoint,
};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "negcurv",
    version,
    about = "Curvature margins, geodesics, and coarse-geometry estimators \
             for radial Kähler metrics and model metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the pointwise negativity margins (a),(c),(d),(e) on a radius
    /// grid and classify the completeness integral (b).
    Conditions {
        /// Potential spec: linear | exp | log_ball | fubini | poly:c1,c2,...
        #[arg(long)]
        potential: String,
        /// Right end of the radius grid.
        #[arg(long)]
        rmax: f64,
        /// Number of logarithmically spaced grid points on (1e-3, rmax].
        #[arg(long, default_value_t = 500)]
        grid: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sample sectional/holomorphic curvature ranges and the Ricci lower
    /// bound at chosen radii.
    Curvature {
        #[arg(long)]
        potential: String,
        /// Complex dimension n.
        #[arg(long)]
        dim: usize,
        /// Comma-separated radii, e.g. --radii 2,3,4.
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
        /// Tangent planes sampled per radius (¼ holomorphic, rest generic).
        #[arg(long, default_value_t = 2000)]
        planes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Estimate the four-point δ of a registry space (and, where geodesics
    /// exist, a canonical thin-triangle defect).
    Hyperbolicity {
        /// line | segment | ray | plane | disc4 | product-rays | product-discs
        #[arg(long)]
        space: String,
        /// Sampling scale: coordinate range / geodesic radius; also the n of
        /// the σ_n triangle for product-rays.
        #[arg(long, default_value_t = 10.0)]
        scale: f64,
        #[arg(long, default_value_t = 10000)]
        quadruples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the product combiner (l1 | l2).
        #[arg(long)]
        combiner: Option<String>,
        /// Sample density for the thin-triangle defect.
        #[arg(long, default_value_t = 65)]
        samples_per_side: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the distance-contraction bound on factor projections and the
    /// two product inequalities on the ℓ² product of two −4 discs.
    Keylemma {
        #[arg(long, default_value_t = 10000)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampling radius in each disc factor.
        #[arg(long, default_value_t = 10.0)]
        scale: f64,
        /// Override the product-inequality Lipschitz constant (negative
        /// control; the derived value is √2).
        #[arg(long = "L")]
        l_override: Option<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Integrate a geodesic of a potential metric and emit its CSV trace.
    Geodesic {
        #[arg(long)]
        potential: String,
        /// Complex dimension n (coordinates are 2n interleaved reals).
        #[arg(long)]
        dim: usize,
        /// Start point, comma-separated 2n reals (x_1,y_1,...).
        #[arg(long, value_delimiter = ',', required = true)]
        from: Vec<f64>,
        /// Initial velocity, comma-separated 2n reals.
        #[arg(long, value_delimiter = ',', required = true)]
        dir: Vec<f64>,
        /// Integration time.
        #[arg(long)]
        time: f64,
        /// Rows in the CSV trace.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write a JSON summary (config, endpoint, final speed) here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct Envelope<C: Serialize, R: Serialize> {
    config: C,
    report: R,
}

fn emit_json<C: Serialize, R: Serialize>(
    path: &Option<PathBuf>,
    config: C,
    report: R,
) -> Result<(), String> {
    let body = serde_json::to_string_pretty(&Envelope { config, report })
        .map_err(|e| format!("serialization failed: {e}"))?;
    match path {
        Some(p) => {
            std::fs::write(p, body + "\n").map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn emit_text(path: &Option<PathBuf>, body: &str) -> Result<(), String> {
    match path {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("NEGCURV_THREADS") {
        match threads.parse::<usize>() {
            Ok(t) if t >= 1 => {
                // Ignore the error if a pool already exists (tests call in-process).
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global();
            }
            _ => return usage_error("NEGCURV_THREADS must be a positive integer"),
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Conditions {
            potential,
            rmax,
            grid,
            json,
        } => {
            let p: RadialPotential = potential.parse().map_err(|e: Error| e.to_string())?;
            if rmax.is_nan() || rmax <= 0.0 {
                return Err("rmax must be positive".into());
            }
            let grid_points = default_grid(rmax, grid);
            let report = check_conditions(&p, &grid_points).map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct Config {
                command: &'static str,
                potential: String,
                rmax: f64,
                grid: usize,
            }
            let pass = report.pass();
            emit_json(
                &json,
                Config {
                    command: "conditions",
                    potential: p.to_string(),
                    rmax,
                    grid,
                },
                report,
            )?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }

        Cmd::Curvature {
            potential,
            dim,
            radii,
            planes,
            seed,
            json,
        } => {
            let p: RadialPotential = potential.parse().map_err(|e: Error| e.to_string())?;
            if dim < 1 {
                return Err("--dim must be at least 1".into());
            }
            if radii.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
                return Err("radii must be finite and nonnegative".into());
            }
            let report =
                curvature_range_report(&p, dim, &radii, planes, seed).map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct Config {
                command: &'static str,
                potential: String,
                dim: usize,
                radii: Vec<f64>,
                planes: usize,
                seed: u64,
            }
            let pass = report.all_negative();
            emit_json(
                &json,
                Config {
                    command: "curvature",
                    potential: p.to_string(),
                    dim,
                    radii: radii.clone(),
                    planes,
                    seed,
                },
                report,
            )?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }

        Cmd::Hyperbolicity {
            space,
            scale,
            quadruples,
            seed,
            combiner,
            samples_per_side,
            json,
        } => {
            let combiner = combiner
                .map(|c| c.parse::<Combiner>())
                .transpose()
                .map_err(|e| e.to_string())?;
            let s = MetricSpace::parse(&space, combiner).map_err(|e| e.to_string())?;
            if !(scale > 0.0 && scale.is_finite()) {
                return Err("scale must be positive".into());
            }
            let four_point = four_point_delta(&s, scale, quadruples, seed);
            let thin_triangle = canonical_triangle_defect(&s, scale, samples_per_side)
                .map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct Config {
                command: &'static str,
                space: String,
                scale: f64,
                quadruples: usize,
                seed: u64,
                samples_per_side: usize,
            }
            #[derive(Serialize)]
            struct Report {
                four_point: negcurv::HyperbolicityReport,
                thin_triangle: Option<TriangleDefect>,
            }
            emit_json(
                &json,
                Config {
                    command: "hyperbolicity",
                    space: s.name.clone(),
                    scale,
                    quadruples,
                    seed,
                    samples_per_side,
                },
                Report {
                    four_point,
                    thin_triangle,
                },
            )?;
            Ok(ExitCode::SUCCESS) // estimates are data, not verdicts
        }

        Cmd::Keylemma {
            pairs,
            seed,
            scale,
            l_override,
            json,
        } => {
            if pairs < 1 {
                return Err("--pairs must be at least 1".into());
            }
            let product = MetricSpace::product_discs(Combiner::L2);
            let disc = MetricSpace::disc4();
            // Projections of a metric product are 1-Lipschitz: c = d gives L = 1.
            let proj_constants = SchwarzConstants::new(-4.0, -4.0).map_err(|e| e.to_string())?;
            let take = |first: bool| {
                move |pt: &SpacePoint| -> SpacePoint {
                    match pt {
                        SpacePoint::Pair(a, b) => {
                            if first {
                                (**a).clone()
                            } else {
                                (**b).clone()
                            }
                        }
                        other => other.clone(),
                    }
                }
            };
            let proj1 = schwarz_bound_check(
                take(true),
                &product,
                |a, b| disc.dist(a, b),
                &proj_constants,
                scale,
                pairs,
                seed,
            );
            let proj2 = schwarz_bound_check(
                take(false),
                &product,
                |a, b| disc.dist(a, b),
                &proj_constants,
                scale,
                pairs,
                seed,
            );
            // Product-inequality constants: holomorphic sectional of the
            // product ≤ −2, Ricci ≥ −4, so L = √2 unless overridden.
            let mut kl_constants = SchwarzConstants::new(-2.0, -4.0).map_err(|e| e.to_string())?;
            if let Some(l) = l_override {
                kl_constants = kl_constants.with_l(l);
            }
            let key_lemma = key_lemma_check(&product, &kl_constants, scale, pairs, seed)
                .map_err(|e| e.to_string())?;

            #[derive(Serialize)]
            struct Config {
                command: &'static str,
                pairs: usize,
                seed: u64,
                scale: f64,
                l: f64,
            }
            #[derive(Serialize)]
            struct Report {
                schwarz_projection_1: negcurv::InequalityReport,
                schwarz_projection_2: negcurv::InequalityReport,
                key_lemma: negcurv::InequalityReport,
            }
            let pass = proj1.passed() && proj2.passed() && key_lemma.passed();
            emit_json(
                &json,
                Config {
                    command: "keylemma",
                    pairs,
                    seed,
                    scale,
                    l: kl_constants.l,
                },
                Report {
                    schwarz_projection_1: proj1,
                    schwarz_projection_2: proj2,
                    key_lemma,
                },
            )?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }

        Cmd::Geodesic {
            potential,
            dim,
            from,
            dir,
            time,
            samples,
            csv,
            json,
        } => {
            let p: RadialPotential = potential.parse().map_err(|e: Error| e.to_string())?;
            if dim < 1 {
                return Err("--dim must be at least 1".into());
            }
            if from.len() != 2 * dim || dir.len() != 2 * dim {
                return Err(format!(
                    "--from and --dir need exactly 2*dim = {} comma-separated reals",
                    2 * dim
                ));
            }
            if !(time > 0.0 && time.is_finite()) {
                return Err("--time must be positive".into());
            }
            if samples < 2 {
                return Err("--samples must be at least 2".into());
            }

            #[derive(Serialize)]
            struct Config {
                command: &'static str,
                potential: String,
                dim: usize,
                from: Vec<f64>,
                dir: Vec<f64>,
                time: f64,
                samples: usize,
            }
            let config = Config {
                command: "geodesic",
                potential: p.to_string(),
                dim,
                from: from.clone(),
                dir: dir.clone(),
                time,
                samples,
            };
            #[derive(Serialize)]
            struct Summary {
                outcome: &'static str,
                endpoint: Vec<f64>,
                final_speed: f64,
            }

            match integrate_geodesic(&p, &from, &dir, time, samples) {
                Ok(path) => {
                    emit_text(&csv, &path.to_csv())?;
                    if json.is_some() {
                        emit_json(
                            &json,
                            config,
                            Summary {
                                outcome: "completed",
                                endpoint: path.end_point().to_vec(),
                                final_speed: *path.speeds.last().unwrap(),
                            },
                        )?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(GeodesicError::StepTooLarge { drift, path }) => {
                    emit_text(&csv, &path.to_csv())?;
                    eprintln!(
                        "error: speed drifted by {drift:.3e}; trace written up to the failure"
                    );
                    Ok(ExitCode::from(EXIT_FAIL))
                }
                Err(GeodesicError::DomainExited { exit_time, path }) => {
                    emit_text(&csv, &path.to_csv())?;
                    eprintln!(
                        "error: trajectory left the metric's domain at t = {exit_time}; \
                         trace written up to the exit"
                    );
                    Ok(ExitCode::from(EXIT_USAGE))
                }
            }
        }
    }
}

#[derive(Serialize)]
struct TriangleDefect {
    construction: String,
    labels: [String; 3],
    samples_per_side: usize,
    defect: f64,
}

/// The thin-triangle defect of a canonical triangle at the given scale, for
/// spaces with a geodesic oracle: the σ_n construction on the ray product,
/// an "equilateral" triangle of circumradius `scale` on the disc and plane,
/// a collinear triple on one-dimensional spaces, and the corner triangle on
/// other products. `None` when the space has no geodesic oracle.
fn canonical_triangle_defect(
    s: &MetricSpace,
    scale: f64,
    samples_per_side: usize,
) -> negcurv::Result<Option<TriangleDefect>> {
    if s.name == "product-rays" {
        let ray = MetricSpace::ray();
        let (tri, product) = lemma_not_triangle(scale, &ray, &ray, samples_per_side)?;
        let defect = thin_triangle_defect(&product, &tri, samples_per_side);
        return Ok(Some(TriangleDefect {
            construction: "sigma_n".into(),
            labels: tri.labels,
            samples_per_side,
            defect,
        }));
    }
    let vertices: Option<[SpacePoint; 3]> = match s.name.as_str() {
        "line" | "segment" | "ray" => Some([
            SpacePoint::Real(0.0),
            SpacePoint::Real(0.5 * scale),
            SpacePoint::Real(scale),
        ]),
        "plane" => Some([
            SpacePoint::Plane([scale, 0.0]),
            SpacePoint::Plane([-0.5 * scale, 0.75_f64.sqrt() * scale]),
            SpacePoint::Plane([-0.5 * scale, -(0.75_f64.sqrt()) * scale]),
        ]),
        "disc4" => Some([
            SpacePoint::Disc {
                s: scale,
                theta: 0.0,
            },
            SpacePoint::Disc {
                s: scale,
                theta: std::f64::consts::TAU / 3.0,
            },
            SpacePoint::Disc {
                s: scale,
                theta: 2.0 * std::f64::consts::TAU / 3.0,
            },
        ]),
        "product-discs" => {
            let corner = |a: f64, b: f64| {
                SpacePoint::Pair(
                    Box::new(SpacePoint::Disc { s: a, theta: 0.0 }),
                    Box::new(SpacePoint::Disc { s: b, theta: 0.0 }),
                )
            };
            Some([corner(0.0, 0.0), corner(scale, 0.0), corner(0.0, scale)])
        }
        _ => None,
    };
    let Some([a, b, c]) = vertices else {
        return Ok(None);
    };
    let tri = triangle(s, &a, &b, &c, samples_per_side)?;
    let defect = thin_triangle_defect(s, &tri, samples_per_side);
    Ok(Some(TriangleDefect {
        construction: "vertex-triangle".into(),
        labels: tri.labels,
        samples_per_side,
        defect,
    }))
}

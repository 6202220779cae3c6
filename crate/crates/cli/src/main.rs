//! Batch front-end for the cobweb toolkit.
//!
//! Exit codes: 0 success (all properties pass), 1 property failure,
//! 2 usage or input error.

use std::collections::BTreeSet;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cobweb_core::gallery::{extremal_d, nonfu_truncation, ExtremalPoint};
use cobweb_core::gen;
use cobweb_core::rational::parse_rational;
use cobweb_core::verify::{run_suite, SuiteConfig, VerificationReport};
use cobweb_core::{CobwebSpace, DistanceSpace, Error, GammaPoint, GammaSpace, Tower};

#[derive(Parser)]
#[command(
    name = "cobweb",
    about = "Exact distances, balls and verification suites for cobweb spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistMode {
    /// Graph distance on Γ(X) between two graph points.
    Gamma,
    /// Subspace distance between two cobweb members.
    Cobweb,
    /// Base-space distance between two point labels.
    Base,
    /// Limit distance between two threads.
    Tower,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BallMode {
    /// Symbolic cobweb ball as an arc union.
    Cobweb,
    /// Base-space ball as a point set.
    Base,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Distance,
    Metric,
    Topology,
    #[value(name = "neighborhood-system")]
    NeighborhoodSystem,
    Omil,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a distance between two points.
    Dist {
        /// JSON file holding a distance space.
        #[arg(long, conflicts_with = "builtin")]
        space: Option<String>,
        /// Built-in symbolic space (`extremal`, or `nonfu:<m>`).
        #[arg(long)]
        builtin: Option<String>,
        /// Which distance to evaluate.
        #[arg(long, value_enum, default_value = "gamma")]
        mode: DistMode,
        /// First point (label, graph-point JSON, thread JSON, or `(t,layer)`).
        a: String,
        /// Second point.
        b: String,
    },
    /// Print an exact ball: symbolic arc union or base point set.
    Ball {
        #[arg(long)]
        space: String,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: String,
        #[arg(long, value_enum, default_value = "cobweb")]
        mode: BallMode,
    },
    /// Compression image of the cobweb vertex ball of the given radius.
    #[command(name = "ball-image")]
    BallImage {
        #[arg(long)]
        space: String,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: String,
    },
    /// Run a verification suite and print the JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Pretty-print the report.
        #[arg(long)]
        json: bool,
    },
    /// Generate a seeded random instance as JSON.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Levels for neighborhood systems.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Render a verification report for humans.
    Report {
        /// Report file, or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
}

fn main() -> ExitCode {
    // die quietly on closed pipes (`cobweb report ... | head`) instead of
    // panicking mid-write
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cmd {
        Command::Dist {
            space,
            builtin,
            mode,
            a,
            b,
        } => cmd_dist(space, builtin, mode, &a, &b),
        Command::Ball {
            space,
            center,
            radius,
            mode,
        } => cmd_ball(&space, &center, &radius, mode),
        Command::BallImage {
            space,
            center,
            radius,
        } => cmd_ball_image(&space, &center, &radius),
        Command::Verify {
            suite,
            seed,
            max_points,
            depth,
            json,
        } => cmd_verify(&suite, seed, max_points, depth, json),
        Command::Gen {
            kind,
            size,
            seed,
            depth,
        } => cmd_gen(kind, size, seed, depth),
        Command::Report { input } => cmd_report(&input),
    }
}

fn load_space(path: &str) -> Result<DistanceSpace, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// A point argument: bare labels become vertices, everything else must be
/// graph-point JSON.
fn parse_gamma_point(s: &str) -> Result<GammaPoint, Box<dyn std::error::Error>> {
    if s.trim_start().starts_with('{') {
        Ok(serde_json::from_str(s)?)
    } else {
        Ok(GammaPoint::Vertex(s.to_string()))
    }
}

fn cmd_dist(
    space: Option<String>,
    builtin: Option<String>,
    mode: DistMode,
    a: &str,
    b: &str,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let base = match (&space, &builtin) {
        (Some(path), None) => load_space(path)?,
        (None, Some(name)) => match name.as_str() {
            "extremal" => {
                // symbolic: answer point queries without materializing
                let pa = ExtremalPoint::parse(a)?;
                let pb = ExtremalPoint::parse(b)?;
                println!("{}", extremal_d(&pa, &pb));
                return Ok(ExitCode::SUCCESS);
            }
            other => match other.strip_prefix("nonfu:") {
                Some(m) => nonfu_truncation(m.parse()?)?.space,
                None => {
                    return Err(Box::new(Error::InvalidSpace(format!(
                        "unknown builtin `{other}`; available: extremal, nonfu:<m>"
                    ))))
                }
            },
        },
        _ => {
            return Err(Box::new(Error::Precondition(
                "exactly one of --space and --builtin is required".into(),
            )))
        }
    };
    match mode {
        DistMode::Base => {
            println!("{}", base.distance(a, b)?);
        }
        DistMode::Gamma => {
            let g = GammaSpace::new(base.points().to_vec())?;
            println!(
                "{}",
                g.distance(&parse_gamma_point(a)?, &parse_gamma_point(b)?)?
            );
        }
        DistMode::Cobweb => {
            let cw = CobwebSpace::new(base)?;
            println!(
                "{}",
                cw.distance(&parse_gamma_point(a)?, &parse_gamma_point(b)?)?
            );
        }
        DistMode::Tower => {
            let tower = Tower::new(base);
            let ta =
                tower.thread(serde_json::from_str::<cobweb_core::tower::ThreadSpec>(a)?.prefix)?;
            let tb =
                tower.thread(serde_json::from_str::<cobweb_core::tower::ThreadSpec>(b)?.prefix)?;
            println!("{}", tower.rho_infty(&ta, &tb)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ball(
    space: &str,
    center: &str,
    radius: &str,
    mode: BallMode,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let base = load_space(space)?;
    let r = parse_rational(radius)?;
    match mode {
        BallMode::Base => {
            let ball: BTreeSet<String> = base.ball(center, &r)?;
            println!("{}", serde_json::to_string(&ball)?);
        }
        BallMode::Cobweb => {
            let cw = CobwebSpace::new(base)?;
            let ball = cw.cob_ball(&parse_gamma_point(center)?, &r)?;
            println!("{}", serde_json::to_string(&ball)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ball_image(
    space: &str,
    center: &str,
    radius: &str,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let base = load_space(space)?;
    let r = parse_rational(radius)?;
    let cw = CobwebSpace::new(base)?;
    let image = cw.ball_image(center, &r)?;
    println!("{}", serde_json::to_string(&image)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    max_points: usize,
    depth: usize,
    pretty: bool,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let cfg = SuiteConfig {
        seed,
        max_points,
        depth,
    };
    let report = run_suite(suite, &cfg)?;
    if pretty {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}", serde_json::to_string(&report)?);
    }
    eprintln!(
        "suite `{}`: {} properties, {} failures, {} ms",
        report.suite,
        report.properties.len(),
        report.failures,
        report.runtime_ms
    );
    Ok(if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_gen(
    kind: GenKind,
    size: usize,
    seed: u64,
    depth: usize,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let mut rng = gen::rng(seed);
    let json = match kind {
        GenKind::Distance => serde_json::to_string(&gen::distance_space(&mut rng, size.max(1)))?,
        GenKind::Metric => serde_json::to_string(&gen::metric_space(&mut rng, size.max(1), 1))?,
        GenKind::Topology => serde_json::to_string(&gen::topology(&mut rng, size))?,
        GenKind::NeighborhoodSystem => serde_json::to_string(&gen::neighborhood_system(
            &mut rng,
            size.max(1),
            depth.max(1),
        ))?,
        GenKind::Omil => serde_json::to_string(&gen::omil_space(&mut rng, size.max(2)))?,
    };
    println!("{json}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(input: &str) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(input)?
    };
    let report: VerificationReport = serde_json::from_str(&text)?;
    println!(
        "suite {} (seed {}, max-points {}, depth {})",
        report.suite, report.seed, report.max_points, report.depth
    );
    for p in &report.properties {
        let status = if p.failures == 0 { "PASS" } else { "FAIL" };
        println!(
            "  [{status}] {} ({}) cases={} failures={}",
            p.id, p.anchor, p.cases, p.failures
        );
        if let Some(cx) = &p.first_counterexample {
            println!("         counterexample: {cx}");
        }
    }
    println!(
        "total: {} properties, {} failures, {} ms",
        report.properties.len(),
        report.failures,
        report.runtime_ms
    );
    Ok(if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

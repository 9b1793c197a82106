use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use affine_curves::equivalence::{affine_equivalences, symmetries, EquivalenceReport, Options, Route, Status};
use affine_curves::invgen::{install_templates, templates, TemplateCache};
use affine_curves::io::bench::{bench_run, parse_bench_spec, rows_csv, table_csv};
use affine_curves::io::{format_report, format_templates, read_curve};
use affine_curves::Error;

const EXIT_USAGE: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_FAILED: u8 = 5;

#[derive(Parser)]
#[command(name = "affine-curves", version, about = "Affine equivalences and symmetries of parametric curves")]
struct Cli {
    /// Directory of cached invariant templates (default: beside the executable).
    #[arg(long, global = true)]
    template_cache: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Specialized,
    Materialized,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Möbius-commuting invariants for a dimension.
    Invariants {
        #[arg(long)]
        dim: usize,
    },
    /// Affine equivalences between two curve files.
    Equiv {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
        /// Keep only equivalences tagged real.
        #[arg(long)]
        real_only: bool,
        /// Accept rational curves that are not proper.
        #[arg(long)]
        allow_improper: bool,
    },
    /// Affine self-equivalences of one curve.
    Symmetries {
        p: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
        #[arg(long)]
        real_only: bool,
        #[arg(long)]
        allow_improper: bool,
    },
    /// Seeded random round trips with timings.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn options(route: RouteArg, allow_improper: bool) -> Options {
    let route = match route {
        RouteArg::Auto => Route::Auto,
        RouteArg::Specialized => Route::Specialized,
        RouteArg::Materialized => Route::Materialized,
    };
    Options { route, allow_improper, ..Default::default() }
}

fn load_templates(cache: &TemplateCache, n: usize) -> Result<(), Error> {
    match cache.load_or_generate(n) {
        Ok(ts) => install_templates(n, ts),
        // an unwritable cache only costs regeneration
        Err(Error::Io(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(())
}

fn exit_for(r: &EquivalenceReport) -> ExitCode {
    ExitCode::from(match r.status {
        Status::EquivalencesFound => 0,
        Status::NotEquivalent => 1,
        Status::DegenerateInvariants => 2,
    })
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::Io(_) | Error::Parse { .. } => EXIT_IO,
        Error::DimensionMismatch { .. } | Error::IndexOutOfRange(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let cache = cli.template_cache.map(TemplateCache::new).unwrap_or_else(TemplateCache::default_location);
    match cli.cmd {
        Cmd::Invariants { dim } => {
            load_templates(&cache, dim)?;
            print!("{}", format_templates(dim, &templates(dim)?));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Equiv { p, q, route, real_only, allow_improper } => {
            let (p, q) = (read_curve(&p)?, read_curve(&q)?);
            load_templates(&cache, p.dim())?;
            let mut r = affine_equivalences(&p, &q, &options(route, allow_improper))?;
            if real_only {
                r = r.real_only();
            }
            print!("{}", format_report(&r));
            Ok(exit_for(&r))
        }
        Cmd::Symmetries { p, route, real_only, allow_improper } => {
            let p = read_curve(&p)?;
            load_templates(&cache, p.dim())?;
            let mut r = symmetries(&p, &options(route, allow_improper))?;
            if real_only {
                r = r.real_only();
            }
            print!("{}", format_report(&r));
            Ok(exit_for(&r))
        }
        Cmd::Bench { spec, format, workers } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| Error::Io(format!("{}: {e}", spec.display())))?;
            let spec = parse_bench_spec(&text)?;
            for &n in &spec.dims {
                load_templates(&cache, n)?;
            }
            let rows = bench_run(&spec, workers)?;
            if format == Format::Csv {
                print!("{}", rows_csv(&rows));
            } else {
                println!("# mean wall-clock seconds per instance (machine-relative)");
                print!("{}", table_csv(&spec, &rows));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(c) => c,
        Err(e) => fail(&e),
    }
}

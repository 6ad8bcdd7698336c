use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qtrace::lattice::{character, SectorId};
use qtrace::modgroup::{HalfPlanePoint, ModularMatrix, SectorPair};
use qtrace::qseries::AnySeries;
use qtrace::verifier::{
    check_transform_numeric, parse_complex, parse_order, parse_point, parse_twist, run_suite,
    AutomorphyFactor, CheckReport, SeriesSpec, Suite, SuiteConfig, TransformSpec,
};
use qtrace::{Error, Rational};

#[derive(Parser)]
#[command(
    name = "qtrace",
    version,
    about = "Exact q-series and modular transformation checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Factor {
    /// (c tau + d)^weight
    Ctd,
    /// (-i tau)^weight
    MinusITau,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a named series to a given order.
    Expand {
        #[arg(long)]
        series: SeriesSpec,
        #[arg(long, value_parser = twist)]
        twist: Option<qtrace::specfun::TwistParams>,
        #[arg(long, value_parser = order)]
        order: Rational,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Character of the lattice sector (sigma^i, sigma^j).
    Char {
        #[arg(long, value_parser = pair)]
        pair: (u32, u32),
        #[arg(long, default_value_t = 2)]
        group_order: u32,
        #[arg(long, value_parser = order)]
        order: Rational,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a pinned battery of checks.
    Check {
        #[arg(long)]
        suite: Suite,
        #[arg(long, value_parser = order)]
        order: Option<Rational>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_parser = point, allow_hyphen_values = true)]
        tau: Vec<HalfPlanePoint>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Numeric check of lhs(gamma tau) = multiplier * factor^weight * rhs(tau).
    Transform {
        #[arg(long, value_parser = matrix, allow_hyphen_values = true)]
        gamma: ModularMatrix,
        #[arg(long, value_parser = order, allow_hyphen_values = true)]
        weight: Rational,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        multiplier: Option<num_complex::Complex64>,
        #[arg(long, value_enum, default_value_t = Factor::Ctd)]
        factor: Factor,
        #[arg(long)]
        lhs: SeriesSpec,
        #[arg(long)]
        rhs: SeriesSpec,
        #[arg(long, value_parser = point, allow_hyphen_values = true, required = true)]
        tau: Vec<HalfPlanePoint>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_parser = order, default_value = "60")]
        order: Rational,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn order(s: &str) -> Result<Rational, String> {
    parse_order(s).map_err(|e| e.to_string())
}

fn twist(s: &str) -> Result<qtrace::specfun::TwistParams, String> {
    parse_twist(s).map_err(|e| e.to_string())
}

fn point(s: &str) -> Result<HalfPlanePoint, String> {
    parse_point(s).map_err(|e| e.to_string())
}

fn complex(s: &str) -> Result<num_complex::Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn matrix(s: &str) -> Result<ModularMatrix, String> {
    s.parse::<ModularMatrix>().map_err(|e| e.to_string())
}

fn pair(s: &str) -> Result<(u32, u32), String> {
    let v: Vec<&str> = s.split(',').collect();
    match v.as_slice() {
        [i, j] => Ok((
            i.trim().parse().map_err(|_| format!("bad pair {s:?}"))?,
            j.trim().parse().map_err(|_| format!("bad pair {s:?}"))?,
        )),
        _ => Err(format!("pair needs i,j, got {s:?}")),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_)
        | Error::InvalidConstruction(_)
        | Error::InvalidTwist
        | Error::DeterminantNotOne(_)
        | Error::Json(_)
        | Error::DomainMismatch(..)
        | Error::WrongDomain => 2,
        _ => 3,
    }
}

fn print_series(s: &AnySeries, format: Format) {
    match format {
        Format::Text => println!("{s}"),
        Format::Json => println!("{}", s.to_json()),
    }
}

fn print_reports(reports: &[CheckReport], format: Format) -> ExitCode {
    for r in reports {
        match format {
            Format::Text => println!("{}", r.to_text()),
            Format::Json => println!("{}", r.to_json()),
        }
    }
    if reports.iter().all(CheckReport::ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Command::Expand {
            series,
            twist,
            order,
            format,
        } => {
            let s = series.with_twist(twist).build(&order)?;
            print_series(&s, format);
        }
        Command::Char {
            pair,
            group_order,
            order,
            format,
        } => {
            SectorPair::new(group_order, pair.0, pair.1)?;
            let sector = SectorId::new(pair.0, pair.1).map_err(|_| {
                Error::InvalidArgument(
                    "characters are available for the cyclic group of order 2 only".into(),
                )
            })?;
            if group_order != 2 {
                return Err(Error::InvalidArgument(
                    "characters are available for --group-order 2 only".into(),
                ));
            }
            let data = character(sector, &order);
            match format {
                Format::Text => println!("{sector}: {}", data.series),
                Format::Json => println!("{}", data.to_json()),
            }
        }
        Command::Check {
            suite,
            order,
            tol,
            tau,
            format,
        } => {
            let cfg = SuiteConfig {
                order,
                tolerance: tol,
                points: (!tau.is_empty()).then_some(tau),
            };
            return Ok(print_reports(&run_suite(suite, &cfg)?, format));
        }
        Command::Transform {
            gamma,
            weight,
            multiplier,
            factor,
            lhs,
            rhs,
            tau,
            tol,
            order,
            format,
        } => {
            let mut spec = TransformSpec::new(gamma, weight, tau, tol);
            if let Some(m) = multiplier {
                spec = spec.with_multiplier(m);
            }
            if let Factor::MinusITau = factor {
                spec = spec.with_factor(AutomorphyFactor::MinusITau);
            }
            let name = format!(
                "{lhs}(gamma tau) vs {rhs}(tau) gamma=({})",
                spec.gamma.to_csv()
            );
            let f = lhs.build(&order)?;
            let g = rhs.build(&order)?;
            let report = match (&f, &g) {
                (AnySeries::Exact(a), AnySeries::Exact(b)) => {
                    check_transform_numeric(&name, a, b, &spec)?
                }
                (AnySeries::Exact(a), AnySeries::Complex(b)) => {
                    check_transform_numeric(&name, a, b, &spec)?
                }
                (AnySeries::Complex(a), AnySeries::Exact(b)) => {
                    check_transform_numeric(&name, a, b, &spec)?
                }
                (AnySeries::Complex(a), AnySeries::Complex(b)) => {
                    check_transform_numeric(&name, a, b, &spec)?
                }
            };
            return Ok(print_reports(&[report], format));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use greedy_morse::hasse::simplicial_hasse;
use greedy_morse::io::{
    complex_to_json, cube_label, hasse_dot, parse_complex_json, parse_off, parse_pip_json,
    simplex_label, to_json, vpath_dot, CertificateReport, GradientReport,
};
use greedy_morse::random::{random_positions, trial_rng};
use greedy_morse::{
    check_smooth, collapse_cat0, compute_gradient, greedy_cat0_field, run_verification_suite,
    smooth_fast_match, Check, ComplexF64, CubeComplex, Error, HasseVariant,
    VerificationSuiteConfig,
};

#[derive(Parser)]
#[command(
    name = "greedy-morse",
    version,
    about = "Discrete Morse theory by greedy matching"
)]
struct Args {
    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Graph {
    Hasse,
    Vpaths,
}

#[derive(clap::Args)]
struct Input {
    /// Complex JSON, or an OFF mesh together with --scalars.
    input: PathBuf,

    /// One value per OFF vertex, whitespace separated.
    #[arg(long)]
    scalars: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy gradient field of a simplicial complex.
    Gradient {
        #[command(flatten)]
        input: Input,
        /// Use the linear matcher; refuses non-smooth input.
        #[arg(long)]
        fast: bool,
        #[arg(long)]
        modified_hasse: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report whether a complex is smooth; exits 1 if it is not.
    Smoothcheck {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Barycentric subdivision with the induced set-valued function.
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Collapse certificate for the cube complex of a PIP.
    Cat0 {
        pip: PathBuf,
        /// Shuffle the element order with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 1 << 22)]
        max_ideals: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Randomised property checks.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 25)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 12)]
        max_graph_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_pip_elements: usize,
        /// Comma-separated subset of checks; all by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long, default_value_t = 5_000_000)]
        budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hasse diagram or V-path digraph in DOT.
    ExportDot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "hasse")]
        graph: Graph,
        #[arg(long)]
        modified_hasse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A run that completed but found the property it was asked about false.
struct PropertyFailure;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_complex(input: &Input) -> Result<ComplexF64> {
    let text = read(&input.input)?;
    let is_off = input
        .input
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("off"));
    let complex = match (&input.scalars, is_off) {
        (Some(scalars), true) => parse_off(&text, &read(scalars)?)?,
        (None, true) => bail!("{}: OFF input needs --scalars", input.input.display()),
        (Some(_), false) => bail!("--scalars only applies to OFF input"),
        (None, false) => parse_complex_json(&text)?,
    };
    Ok(complex)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = io::stdout().lock();
            let written = out.write_all(text.as_bytes()).and_then(|()| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    out.write_all(b"\n")
                }
            });
            match written {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn variant(modified: bool) -> HasseVariant {
    if modified {
        HasseVariant::Modified
    } else {
        HasseVariant::Plain
    }
}

fn vertex_label(complex: &ComplexF64) -> impl Fn(&u32) -> String + '_ {
    |&rank| complex.vertex_of_rank(rank).to_string()
}

fn run(command: Command) -> Result<Option<PropertyFailure>> {
    match command {
        Command::Gradient {
            input,
            fast,
            modified_hasse,
            format,
            output,
        } => {
            let complex = load_complex(&input)?;
            let variant = variant(modified_hasse);
            let field = if fast {
                if modified_hasse {
                    bail!("--fast builds the plain Hasse matching; drop --modified-hasse");
                }
                match smooth_fast_match(&complex) {
                    Ok(field) => field,
                    Err(Error::NotSmooth(n)) => {
                        eprintln!(
                            "error: complex is not smooth ({n} witnesses); run without --fast"
                        );
                        return Ok(Some(PropertyFailure));
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                compute_gradient(&complex, variant)?
            };
            let text = match format {
                Format::Json => to_json(&GradientReport::new(&complex, &field, variant)?),
                Format::Dot => hasse_dot(
                    &simplicial_hasse(&complex, variant),
                    |c| simplex_label(&complex, c),
                    vertex_label(&complex),
                    Some(&field),
                ),
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Smoothcheck { input, output } => {
            let complex = load_complex(&input)?;
            let report = check_smooth(&complex);
            emit(output.as_deref(), &to_json(&report))?;
            if !report.smooth {
                eprintln!("not smooth: {} witnesses", report.witnesses.len());
                return Ok(Some(PropertyFailure));
            }
        }
        Command::Subdivide { input, output } => {
            let complex = load_complex(&input)?;
            let sd = complex.barycentric_subdivide();
            emit(output.as_deref(), &complex_to_json(&sd.complex))?;
        }
        Command::Cat0 {
            pip,
            seed,
            format,
            max_ideals,
            output,
        } => {
            let pip = parse_pip_json(&read(&pip)?)?;
            let positions = seed.map(|s| random_positions(&mut trial_rng(s, 0), pip.len()));
            let complex = CubeComplex::build(&pip, positions, max_ideals)?;
            let text = match format {
                Format::Json => match collapse_cat0(&complex) {
                    Ok(cert) => to_json(&CertificateReport::new(&complex, &cert)),
                    Err(e @ Error::NotCollapsible(_)) => {
                        eprintln!("error: {e}");
                        return Ok(Some(PropertyFailure));
                    }
                    Err(e) => return Err(e.into()),
                },
                Format::Dot => {
                    let field = greedy_cat0_field(&complex)?;
                    hasse_dot(
                        &complex.modified_hasse(),
                        |c| cube_label(&complex, c),
                        |&w| cube_label(&complex, w),
                        Some(&field),
                    )
                }
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Verify {
            seed,
            trials,
            max_vertices,
            max_dim,
            max_graph_vertices,
            max_pip_elements,
            checks,
            budget,
            output,
        } => {
            let mut config = VerificationSuiteConfig {
                seed,
                trials,
                max_vertices,
                max_dim,
                max_graph_vertices,
                max_pip_elements,
                search_budget: budget,
                ..VerificationSuiteConfig::default()
            };
            if !checks.is_empty() {
                config.checks = checks.into_iter().collect();
            }
            let report = run_verification_suite(&config);
            for check in &report.checks {
                let verdict = if check.passed() { "PASS" } else { "FAIL" };
                eprintln!(
                    "{verdict} {:<18} evaluated {:>5}  skipped {:>5}  failures {}",
                    check.check.name(),
                    check.evaluated,
                    check.skipped,
                    check.failures
                );
                if let Some(ce) = &check.first_counterexample {
                    eprintln!(
                        "     first counterexample: trial {} (seed {}): {}",
                        ce.trial, ce.seed, ce.detail
                    );
                }
            }
            emit(output.as_deref(), &to_json(&report))?;
            if !report.passed() {
                return Ok(Some(PropertyFailure));
            }
        }
        Command::ExportDot {
            input,
            graph,
            modified_hasse,
            output,
        } => {
            let complex = load_complex(&input)?;
            let variant = variant(modified_hasse);
            let field = compute_gradient(&complex, variant)?;
            let label = |c| simplex_label(&complex, c);
            let text = match graph {
                Graph::Hasse => hasse_dot(
                    &simplicial_hasse(&complex, variant),
                    label,
                    vertex_label(&complex),
                    Some(&field),
                ),
                Graph::Vpaths => vpath_dot(complex.poset(), &field, label),
            };
            emit(output.as_deref(), &text)?;
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let outcome = run(args.command);
    if args.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match outcome {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(PropertyFailure)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

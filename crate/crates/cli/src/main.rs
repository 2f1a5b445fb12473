mod suite;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use posetcorr::enumeration::{count_linear_extensions, count_p_partitions};
use posetcorr::genfun::{order_poly, profile_gf, schur_poly, Flavor};
use posetcorr::inequalities::{maj_polynomial, TheoremId, STANLEY_CONVENTION};
use posetcorr::{Poset, SkewShape, Vars};

use suite::{RunConfig, Tally};

#[derive(Parser)]
#[command(
    name = "posetcorr",
    version,
    about = "Exact checks of correlation inequalities on posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print one JSON record per instance.
    Verify(VerifyArgs),
    /// Compute a single object and print its canonical text.
    Compute(ComputeArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Theorem ids to run (repeatable); all when omitted.
    #[arg(long = "theorem", value_parser = parse_theorem)]
    theorems: Vec<TheoremId>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest poset size.
    #[arg(long = "max-n", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=8))]
    max_n: u32,
    /// Largest value bound t.
    #[arg(long = "max-t", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=6))]
    max_t: u32,
    /// Largest number of profile or Schur variables.
    #[arg(long = "max-N", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=4))]
    max_big_n: u32,
    /// Write records here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    /// Number of linear extensions.
    E,
    /// Order polynomial value Ω(P,t).
    Omega,
    /// Ω_q(P,t), weighted by the sum of values.
    #[value(name = "omega_q")]
    OmegaQ,
    /// Ω_𝐪(P,t), one variable per element.
    #[value(name = "omega_bq")]
    OmegaBq,
    /// Value-count profile K_z(P,N).
    Kz,
    /// Skew Schur polynomial.
    Schur,
    /// Σ q^maj over linear extensions.
    Maj,
}

#[derive(clap::Args)]
struct ComputeArgs {
    object: Object,
    /// chain:n, antichain:n, skew:λ/μ, or a poset file.
    #[arg(long)]
    poset: Option<String>,
    #[arg(long)]
    t: Option<u32>,
    /// Profile bound N for kz.
    #[arg(long)]
    n: Option<u32>,
    /// Skew shape such as 3,1/1 for schur.
    #[arg(long)]
    shape: Option<String>,
    /// Number of Schur variables.
    #[arg(long)]
    vars: Option<u32>,
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    TheoremId::from_name(s).ok_or_else(|| {
        let ids: Vec<&str> = TheoremId::ALL.iter().map(|t| t.name()).collect();
        format!("unknown theorem {s:?}; expected one of {}", ids.join(", "))
    })
}

/// A usage or input error, reported with exit status 2.
struct Usage(String);

fn load_poset(spec: &str) -> Result<Poset, Usage> {
    if let Some(built) = Poset::from_builtin(spec) {
        return built.map_err(|e| Usage(e.to_string()));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Usage(format!("cannot read poset file {spec}: {e}")))?;
    Poset::parse_text(&text)
        .map(|r| r.poset)
        .map_err(|e| Usage(format!("{spec}: {e}")))
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Usage> {
    value.ok_or_else(|| Usage(format!("--{flag} is required for this object")))
}

fn compute(args: &ComputeArgs) -> Result<String, Usage> {
    let poset = || {
        load_poset(
            args.poset
                .as_deref()
                .ok_or_else(|| Usage("--poset is required for this object".into()))?,
        )
    };
    Ok(match args.object {
        Object::E => count_linear_extensions(&poset()?).to_string(),
        Object::Omega => count_p_partitions(&poset()?, need(args.t, "t")?, None)
            .expect("no constraint")
            .to_string(),
        Object::OmegaQ | Object::OmegaBq => {
            let flavor = if matches!(args.object, Object::OmegaQ) {
                Flavor::Q
            } else {
                Flavor::MultiQ
            };
            order_poly(&poset()?, need(args.t, "t")?, flavor, None)
                .expect("no constraint")
                .display(Vars::Q)
        }
        Object::Kz => profile_gf(&poset()?, need(args.n, "n")?).display(Vars::Z0),
        Object::Schur => {
            let text = args
                .shape
                .as_deref()
                .ok_or_else(|| Usage("--shape is required for schur".into()))?;
            let shape: SkewShape = text
                .parse()
                .map_err(|e: posetcorr::young::YoungError| Usage(e.to_string()))?;
            schur_poly(&shape, need(args.vars, "vars")?).display(Vars::Z1)
        }
        Object::Maj => maj_polynomial(&poset()?, STANLEY_CONVENTION)
            .map_err(|e| Usage(e.to_string()))?
            .display(Vars::Q),
    })
}

fn verify(args: &VerifyArgs) -> Result<bool, Usage> {
    let config = RunConfig {
        theorems: if args.theorems.is_empty() {
            TheoremId::ALL.to_vec()
        } else {
            args.theorems.clone()
        },
        seed: args.seed,
        max_n: args.max_n as usize,
        max_t: args.max_t,
        max_big_n: args.max_big_n,
    };
    let sink: Box<dyn Write> = match &args.output {
        Some(path) => {
            Box::new(File::create(path).map_err(|e| Usage(format!("cannot create {}: {e}", path.display())))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let mut write_error = None;
    let tallies = suite::run(&config, &mut |record| {
        if write_error.is_none() {
            if let Err(e) = writeln!(sink, "{}", record.to_json()) {
                write_error = Some(e);
            }
        }
    });
    if let Some(e) = write_error.or_else(|| sink.flush().err()) {
        return Err(Usage(format!("cannot write records: {e}")));
    }
    let mut total = Tally::default();
    for (theorem, tally) in &tallies {
        eprintln!("{theorem}: {} instances, {} failed", tally.instances, tally.failed);
        total.instances += tally.instances;
        total.failed += tally.failed;
    }
    eprintln!("total: {} instances, {} failed", total.instances, total.failed);
    Ok(total.failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Compute(args) => compute(args).map(|value| {
            println!("{value}");
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use arthur_phi::catalog::{self, CapsConfig, DatumConfig};
use arthur_phi::verify::{Mutation, VerifyOptions};
use arthur_phi::{Error, Rat, Result};

mod report;

#[derive(Parser, Debug)]
#[command(
    name = "arthur-phi",
    version,
    about = "Exact Phi-function computations on real tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    args: Args,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// List the built-in data with their capability flags.
    Catalog,
    /// Validate a datum and classify its roots.
    Validate,
    /// Chambers and facets of the root, P- and L-arrangements.
    Chambers,
    /// Table of stable discrete series constants at a character.
    Constants,
    /// Both sums of constants over a Weyl orbit.
    Prop1,
    /// Phi at an elliptic element.
    Phi,
    /// Approach Phi along gamma_c exp(t x0) as t goes to zero.
    Probe,
    /// Run every applicable check.
    VerifyAll,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MutationArg {
    CbarBase,
    CbarSide,
    QParity,
}

#[derive(clap::Args, Debug, Clone)]
struct Args {
    /// Catalog name or path to a JSON datum.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Cartan type such as B2, G2 or A1xA1 (split), or a catalog name.
    #[arg(long, global = true, conflicts_with = "config")]
    system: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long = "lambdaB", global = true, allow_hyphen_values = true)]
    lambda_b: Option<String>,
    #[arg(long = "gamma-u", global = true, allow_hyphen_values = true)]
    gamma_u: Option<String>,
    #[arg(long = "gamma-s", global = true, allow_hyphen_values = true)]
    gamma_s: Option<String>,
    /// Simple roots or all positive roots of the Borel, by index.
    #[arg(long, global = true, value_delimiter = ',')]
    borel: Option<Vec<usize>>,
    #[arg(long = "t-seq", global = true, value_delimiter = ',')]
    t_seq: Option<Vec<f64>>,
    /// Probe direction; an interior point of the Borel's P-chamber by default.
    #[arg(long, global = true, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long = "weyl-cap", global = true)]
    weyl_cap: Option<usize>,
    #[arg(long, global = true, default_value_t = 20)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, global = true, value_enum, hide = true)]
    mutate: Option<MutationArg>,
}

impl Args {
    fn datum_config(&self) -> Result<DatumConfig> {
        let name = self
            .config
            .as_deref()
            .or(self.system.as_deref())
            .ok_or_else(|| Error::Config("one of --config or --system is required".into()))?;
        let mut config = catalog::resolve(name)?;
        if let Some(cap) = self.weyl_cap {
            let caps = config.caps.get_or_insert_with(CapsConfig::default);
            caps.weyl = Some(cap);
        }
        Ok(config)
    }

    fn verify_options(&self) -> VerifyOptions {
        let mut opts = VerifyOptions {
            tol: self.tol,
            samples: self.samples,
            seed: self.seed,
            mutation: self.mutate.map(|m| match m {
                MutationArg::CbarBase => Mutation::CbarBaseValue,
                MutationArg::CbarSide => Mutation::CbarVanishingSide,
                MutationArg::QParity => Mutation::QParity,
            }),
            ..VerifyOptions::default()
        };
        if let Some(ts) = &self.t_seq {
            opts.t_seq = ts.clone();
        }
        opts
    }
}

/// Parses `"a,b,c"` with entries integers or `p/q`.
fn parse_vector(text: &str, dim: usize, what: &str) -> Result<Vec<Rat>> {
    let v: Vec<Rat> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Rat>()
                .map_err(|_| Error::Parse(format!("{what}: not a rational number: {s:?}")))
        })
        .collect::<Result<_>>()?;
    if v.len() != dim {
        return Err(Error::Config(format!(
            "{what} has {} entries, expected {dim}",
            v.len()
        )));
    }
    Ok(v)
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    let args = &cli.args;
    match cli.command {
        Command::Catalog => Ok((report::catalog()?, true)),
        Command::VerifyAll => {
            let configs = if args.config.is_some() || args.system.is_some() {
                vec![args.datum_config()?]
            } else {
                catalog::builtin_configs()
            };
            report::verify_all(&configs, &args.verify_options())
        }
        command => {
            let config = args.datum_config()?;
            let rank = config.rank;
            let vector = |v: &Option<String>, what: &str| {
                v.as_deref()
                    .map(|t| parse_vector(t, rank, what))
                    .transpose()
            };
            let lambda = vector(&args.lambda, "--lambda")?;
            let lambda_b = vector(&args.lambda_b, "--lambdaB")?;
            let u = vector(&args.gamma_u, "--gamma-u")?;
            let s = vector(&args.gamma_s, "--gamma-s")?;
            let x0 = vector(&args.x0, "--x0")?;
            let inputs = report::Inputs {
                lambda,
                lambda_b,
                u,
                s,
                x0,
                borel: args.borel.clone(),
                t_seq: args.t_seq.clone(),
                tol: args.tol,
            };
            match command {
                Command::Validate => Ok((report::validate(&config)?, true)),
                Command::Chambers => Ok((report::chambers(&config)?, true)),
                Command::Constants => Ok((report::constants(&config, &inputs)?, true)),
                Command::Prop1 => Ok((report::prop1(&config, &inputs)?, true)),
                Command::Phi => Ok((report::phi(&config, &inputs)?, true)),
                Command::Probe => report::probe(&config, &inputs),
                Command::Catalog | Command::VerifyAll => unreachable!(),
            }
        }
    }
}

fn emit(cli: &Cli, value: &Value) -> std::io::Result<()> {
    let mut text = match cli.args.format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize"),
        Format::Text => report::render_text(value),
    };
    text.push('\n');
    match &cli.args.out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, pass)) => {
            if let Err(e) = emit(&cli, &value) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use darboux::io::{
    cmd_eval, cmd_list, cmd_verify, emit, ConfigError, CurveSpec, Format, ListTopic, RunConfig, RunError, SurfaceSpec,
};
use darboux::smarandache::SmarandacheKind;

/// Darboux frames and Smarandache curves on parametric surfaces.
#[derive(Debug, Parser)]
#[command(name = "darboux", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the base curve and its Smarandache curves to CSV or JSON.
    Eval(RunArgs),
    /// Audit the printed closed forms against the numerical oracle (JSON).
    Verify(RunArgs),
    /// List builtin surfaces, presets, kinds, or formula ids.
    List {
        #[arg(value_enum)]
        topic: Option<Topic>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Topic {
    Surfaces,
    Presets,
    Kinds,
    Formulas,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run configuration; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named test geometry (see `darboux list presets`).
    #[arg(long, conflicts_with_all = ["surface", "curve"])]
    preset: Option<String>,
    /// Builtin name, `name:p1,p2`, or `x;y;z` in u and v.
    #[arg(long)]
    surface: Option<String>,
    /// `u(t);v(t);t_lo;t_hi`.
    #[arg(long)]
    curve: Option<String>,
    /// Comma-separated subset of Tg, Tn, gn, Tgn.
    #[arg(long, value_delimiter = ',')]
    kinds: Option<Vec<String>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Use the opposite surface orientation.
    #[arg(long)]
    flip_normal: bool,
    /// Constant phi* for the closed forms, with dphi*/ds* = 0.
    #[arg(long, allow_hyphen_values = true)]
    phi_star: Option<f64>,
    #[arg(long)]
    format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig, ConfigError> {
        let mut config = match (&self.config, &self.preset) {
            (Some(path), _) => RunConfig::from_path(path)?,
            (None, Some(name)) => RunConfig::from_preset(name)?,
            (None, None) => {
                let (Some(surface), Some(curve)) = (&self.surface, &self.curve) else {
                    return Err(ConfigError::field(
                        "surface",
                        "no geometry given; use --preset, --surface with --curve, or --config",
                    ));
                };
                let mut c = RunConfig::from_preset("equator")?;
                c.surface = surface.parse()?;
                c.curve = curve.parse()?;
                c
            }
        };
        if self.config.is_some() {
            if let Some(name) = &self.preset {
                let p = RunConfig::from_preset(name)?;
                config.surface = p.surface;
                config.curve = p.curve;
            }
        }
        if let Some(s) = &self.surface {
            config.surface = s.parse::<SurfaceSpec>()?;
        }
        if let Some(c) = &self.curve {
            config.curve = c.parse::<CurveSpec>()?;
        }
        if let Some(kinds) = &self.kinds {
            config.kinds = kinds
                .iter()
                .map(|k| k.trim().parse::<SmarandacheKind>())
                .collect::<Result<_, _>>()
                .map_err(|e| ConfigError::field("kinds", e))?;
        }
        if let Some(n) = self.samples {
            config.samples = n;
        }
        if let Some(tol) = self.tol {
            config.tol = tol;
        }
        config.flip_normal |= self.flip_normal;
        if self.phi_star.is_some() {
            config.phi_star_override = self.phi_star;
        }
        if let Some(f) = &self.format {
            config.output.format = Some(f.parse::<Format>()?);
        }
        if self.out.is_some() {
            config.output.path = self.out;
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(cli: Cli) -> Result<Option<String>, RunError> {
    match cli.command {
        Command::Eval(args) => {
            let config = args.into_config()?;
            emit(&cmd_eval(&config)?, config.output.path.as_deref())
        }
        Command::Verify(args) => {
            let config = args.into_config()?;
            emit(&cmd_verify(&config)?.to_json(), config.output.path.as_deref())
        }
        Command::List { topic } => Ok(Some(cmd_list(topic.map(|t| match t {
            Topic::Surfaces => ListTopic::Surfaces,
            Topic::Presets => ListTopic::Presets,
            Topic::Kinds => ListTopic::Kinds,
            Topic::Formulas => ListTopic::Formulas,
        })))),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Some(text)) => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => {
                eprintln!("darboux: cannot write output: {e}");
                ExitCode::FAILURE
            }
            _ => ExitCode::SUCCESS,
        },
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("darboux: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! `segre`: analyze pure-state entanglement from JSON state files.
//!
//! Exit codes: `analyze` returns 0 for a fully separable state and 1 for an
//! entangled one; every command returns 2 on bad input.

mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use segre::ideal::{mode_ideal, render, segre_ideal, RenderFormat};
use segre::minors::{all_minors, enumerate_minors};
use segre::separability::analyze;
use segre::state_file::{parse_state, write_state};
use segre::tensor::{named_state, random_state, NamedState, RandomKind};
use segre::{MeasureConfig, PureStateTensor, Shape, DEFAULT_EPS};

use crate::output::{fmt_complex, rounded_json};

#[derive(Parser)]
#[command(name = "segre", version, about = "Pure-state entanglement via Segre-variety minors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Separability report: every bipartition, the measure and the minor test.
    Analyze {
        state_file: PathBuf,
        #[command(flatten)]
        opts: NumericOpts,
    },
    /// List 2x2 minors of the mode unfoldings.
    Minors {
        state_file: PathBuf,
        /// Only this mode (1-based); all modes if omitted.
        #[arg(long)]
        mode: Option<usize>,
        /// Drop minors with modulus below --eps.
        #[arg(long)]
        nonzero: bool,
        #[command(flatten)]
        opts: NumericOpts,
    },
    /// Print symbolic ideal generators.
    Ideal {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Ideal of the cut {mode}|rest.
        #[arg(long, conflicts_with = "segre", required_unless_present = "segre")]
        mode: Option<usize>,
        /// Union over every mode.
        #[arg(long)]
        segre: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a state file.
    Gen(GenArgs),
}

#[derive(Args, Clone, Copy)]
struct NumericOpts {
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long = "norm-const", default_value_t = 1.0)]
    norm_const: f64,
    /// Rescale the input to unit norm instead of rejecting it.
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Plain => RenderFormat::PlainText,
            Format::Latex => RenderFormat::LatexLike,
            Format::Json => RenderFormat::MachineJson,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Bell state k (1: Phi+, 2: Phi-, 3: Psi+, 4: Psi-).
    Bell { k: u8 },
    Ghz { m: usize },
    W { m: usize },
    /// Random fully product state.
    Product {
        #[arg(value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// Haar-random state.
    Haar {
        #[arg(value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// Product of Haar states on blocks, e.g. --blocks "1,2;3".
    Blocks {
        #[arg(value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long)]
        blocks: String,
    },
}

type CmdResult = Result<ExitCode, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze { state_file, opts } => cmd_analyze(&state_file, opts),
        Command::Minors { state_file, mode, nonzero, opts } => cmd_minors(&state_file, mode, nonzero, opts),
        Command::Ideal { dims, mode, segre, format, out } => cmd_ideal(dims, mode, segre, format, out.as_deref()),
        Command::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path, opts: &NumericOpts) -> Result<PureStateTensor, String> {
    if opts.eps.is_nan() || opts.eps <= 0.0 {
        return Err(format!("--eps must be positive, got {}", opts.eps));
    }
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_state(&text, opts.normalize).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn cmd_analyze(path: &Path, opts: NumericOpts) -> CmdResult {
    let state = load(path, &opts)?;
    let cfg = MeasureConfig::new(opts.norm_const).map_err(|e| e.to_string())?;
    let report = analyze(&state, opts.eps, &cfg).map_err(|e| e.to_string())?;
    let text = if opts.json {
        let mut s = serde_json::to_string_pretty(&rounded_json(&report)).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    } else {
        output::human_report(&report)
    };
    emit(&text, None)?;
    Ok(if report.fully_separable { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_minors(path: &Path, mode: Option<usize>, nonzero: bool, opts: NumericOpts) -> CmdResult {
    let state = load(path, &opts)?;
    let minors = match mode {
        Some(j) => enumerate_minors(&state, j),
        None => all_minors(&state),
    }
    .map_err(|e| e.to_string())?;
    let kept: Vec<_> = minors.into_iter().filter(|m| !nonzero || m.value.norm() >= opts.eps).collect();

    let text = if opts.json {
        let rows: Vec<serde_json::Value> = kept
            .iter()
            .map(|m| {
                let [pos, neg] = m.id.entries(state.shape());
                serde_json::json!({
                    "mode": m.id.mode,
                    "row_pair": [m.id.row_pair.0, m.id.row_pair.1],
                    "col_pair": [m.id.col_pair.0, m.id.col_pair.1],
                    "pos": pos,
                    "neg": neg,
                    "value": [m.value.re, m.value.im],
                })
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rounded_json(&rows)).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for m in &kept {
            let [pos, neg] = m.id.entries(state.shape());
            let v = |i: &Vec<usize>| i.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            s.push_str(&format!(
                "mode {}  rows ({},{})  cols ({},{})  a_{{{}}}*a_{{{}}} - a_{{{}}}*a_{{{}}}  = {}\n",
                m.id.mode,
                m.id.row_pair.0,
                m.id.row_pair.1,
                m.id.col_pair.0,
                m.id.col_pair.1,
                v(&pos[0]),
                v(&pos[1]),
                v(&neg[0]),
                v(&neg[1]),
                fmt_complex(m.value)
            ));
        }
        s
    };
    emit(&text, None)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ideal(dims: Vec<usize>, mode: Option<usize>, segre: bool, format: Format, out: Option<&Path>) -> CmdResult {
    let shape = Shape::new(dims).map_err(|e| e.to_string())?;
    let ideal = match (mode, segre) {
        (_, true) => segre_ideal(&shape),
        (Some(j), false) => mode_ideal(&shape, j),
        (None, false) => unreachable!("clap requires --mode or --segre"),
    }
    .map_err(|e| e.to_string())?;
    emit(&render(&ideal, format.into()), out)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_blocks(spec: &str) -> Result<Vec<Vec<usize>>, String> {
    spec.split(';')
        .map(|b| {
            b.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad block `{b}`: {e}")))
                .collect()
        })
        .collect()
}

fn singletons(n: usize) -> Vec<Vec<usize>> {
    (1..=n).map(|j| vec![j]).collect()
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let shape = |dims: &[usize]| Shape::new(dims.to_vec()).map_err(|e| e.to_string());
    let state = match &args.kind {
        GenKind::Bell { k } => named_state(&NamedState::Bell(*k)),
        GenKind::Ghz { m } => named_state(&NamedState::Ghz(*m)),
        GenKind::W { m } => named_state(&NamedState::W(*m)),
        GenKind::Product { dims } => random_state(&shape(dims)?, &RandomKind::ProductHaar(singletons(dims.len())), args.seed),
        GenKind::Haar { dims } => random_state(&shape(dims)?, &RandomKind::Haar, args.seed),
        GenKind::Blocks { dims, blocks } => {
            random_state(&shape(dims)?, &RandomKind::ProductHaar(parse_blocks(blocks)?), args.seed)
        }
    }
    .map_err(|e| e.to_string())?;
    emit(&write_state(&state), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

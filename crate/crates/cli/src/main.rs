//! `qtorus`: JSON in, JSON out.
//!
//! Exit status is 0 when the computation succeeded or the checked property
//! holds, 1 when a checked property fails (the report carries the witness),
//! and 2 on malformed input or bad arguments.

mod commands;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtorus::Seed;

#[derive(Parser)]
#[command(name = "qtorus", version, about = "Exact Delta-sets, local cones and symplectic bases for quantum tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
pub struct Common {
    /// Read the input document from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Check this many sampled characters instead of the one in the input.
    #[arg(long, global = true)]
    sample: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Attempts of the pencil construction before giving up.
    #[arg(long, global = true, default_value_t = qtorus::symplectic::DEFAULT_RETRIES)]
    retries: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// One line of compact JSON.
    Json,
    /// Indented JSON.
    Pretty,
}

#[derive(Subcommand, Clone, Copy)]
pub enum Command {
    /// Delta-set of a one-relator module, as a fan.
    Delta,
    /// Initial form of the relator at `chi` and the kernel lattice it lives on.
    Initform,
    /// Delta-set of the trailing-coefficient module at `chi`, a fan in the dual of ker chi.
    Tc,
    /// Local cone of a fan at a point.
    Lc,
    /// Compare the local cone of the Delta-set at `chi` with the pulled-back trailing-coefficient fan.
    CheckLocalCone,
    /// rank(chi) + dim of the trailing-coefficient fan = dim of the Delta-set, for chi in the Delta-set.
    CheckDim,
    /// Compare trailing-coefficient fans computed over Z^n and over a sublattice carrying the relator.
    CheckInduced,
    /// Product of two quantum torus elements.
    TorusMul,
    /// Centre of an alternating form: a subspace for rational forms, a lattice for integer ones.
    Center,
    /// Symplectic base of an alternating form.
    Symbase,
    /// Check a candidate symplectic base.
    VerifyBase,
    /// Split an abelian subspace along the blocks of a symplectic base.
    AbelianSplit,
    /// Check the ample-family conditions for a family of abelian subspaces.
    CheckAmple,
    /// Heisenberg and cyclic factors of a class-2 presentation.
    GroupStructure,
    /// Audit a decomposition of Z^n into sublattices against an integer alternating form.
    AuditDecomposition,
    /// Emit a random one-relator module.
    RandomModule {
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        support: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Emit the presentation of a Heisenberg group, optionally times Z^k.
    Heisenberg {
        m: usize,
        #[arg(long, default_value_t = 0)]
        cyclic: usize,
    },
}

impl Command {
    fn reads_input(self) -> bool {
        !matches!(self, Command::RandomModule { .. } | Command::Heisenberg { .. })
    }
}

pub struct Context {
    pub seed: Seed,
    pub sample: Option<usize>,
    pub retries: usize,
}

/// A successful run produces a document; a failed check also produces one,
/// carrying the counterexample.
pub enum Outcome {
    Holds(serde_json::Value),
    Violated(serde_json::Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let ctx = Context { seed: Seed::new(c.seed), sample: c.sample, retries: c.retries };
    let text = if cli.command.reads_input() {
        match read_input(c.input.as_ref()) {
            Ok(t) => t,
            Err(e) => return fail(&format!("cannot read input: {e}")),
        }
    } else {
        String::new()
    };
    let (doc, code) = match commands::run(cli.command, &ctx, &text) {
        Ok(Outcome::Holds(v)) => (v, 0),
        Ok(Outcome::Violated(v)) => (v, 1),
        Err(e) => return fail(&e.to_string()),
    };
    let mut rendered = match c.format {
        Format::Json => serde_json::to_string(&doc),
        Format::Pretty => serde_json::to_string_pretty(&doc),
    }
    .expect("JSON values always serialize");
    rendered.push('\n');
    let written = match &c.output {
        Some(path) => std::fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        return fail(&format!("cannot write output: {e}"));
    }
    if code == 1 {
        eprintln!("property violated; see the witness in the report");
    }
    ExitCode::from(code)
}

fn read_input(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

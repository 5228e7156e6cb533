//! `majenc`: synthesize, verify and draw Majorana code encoding circuits.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{error::ErrorKind, Args, Parser, Subcommand};
use log::info;

use majenc_core::codes::builtin;
use majenc_core::diagram::{render_ascii, render_latex};
use majenc_core::format::{parse_circuit, parse_code, serialize_circuit, CircuitDocument, CircuitRole, FormatError};
use majenc_core::par::Execution;
use majenc_core::synth::{synthesize, AncillaStatus, SynthesisError, SynthesisResult, Variant};
use majenc_core::verify::{verify_decoder, VerifyOptions};
use majenc_core::StabilizerCode;

#[derive(Parser)]
#[command(name = "majenc", version, about = "Encoding circuits for Majorana stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an encoder (or decoder) for a code.
    Synth(SynthArgs),
    /// Check that a circuit decodes a code.
    Verify(VerifyArgs),
    /// Draw a circuit document.
    Diagram(DiagramArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Code document (TOML).
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Built-in code: kitaev:<n>, shortest, parity4.
    #[arg(long)]
    builtin: Option<String>,
    /// Work on the code's own modes, without the ancilla pair.
    #[arg(long)]
    ancilla_free: bool,
    /// Emit the decoder instead of the encoder.
    #[arg(long)]
    decoder: bool,
    /// Where to write the circuit document; `-` for stdout (the report then goes to stderr).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code document (TOML).
    code: PathBuf,
    /// Circuit document (TOML).
    circuit: PathBuf,
    /// Also compare against dense matrices (at most 16 modes).
    #[arg(long)]
    oracle: bool,
    /// Run oracle checks on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct DiagramArgs {
    /// Circuit document (TOML).
    circuit: PathBuf,
    /// Emit a quantikz listing instead of ASCII.
    #[arg(long)]
    latex: bool,
}

/// An error with its process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn invalid(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 1,
            error: error.into(),
        }
    }

    fn obstruction(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 2,
            error: error.into(),
        }
    }

    fn io(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 3,
            error: error.into(),
        }
    }

    fn verification(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 4,
            error: error.into(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::io(anyhow!("cannot read {}: {e}", path.display())))
}

fn format_failure(path: &Path, e: FormatError) -> Failure {
    Failure::invalid(anyhow!("{}: {e}", path.display()))
}

fn load_code(path: &Path) -> CliResult<StabilizerCode> {
    parse_code(&read(path)?).map_err(|e| format_failure(path, e))
}

fn load_circuit(path: &Path) -> CliResult<CircuitDocument> {
    parse_circuit(&read(path)?).map_err(|e| format_failure(path, e))
}

fn join(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn synth_report(code: &StabilizerCode, result: &SynthesisResult, role: CircuitRole, destination: &str) -> String {
    let counts = result.gate_counts();
    let variant = match result.variant() {
        Variant::WithAncilla => "with-ancilla",
        Variant::AncillaFree => "ancilla-free",
    };
    let flips = result.logical_sign_flips().iter().map(|f| {
        let members: Vec<&str> = [(f.first, "first"), (f.second, "second")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, name)| *name)
            .collect();
        format!("pair {} ({})", f.pair, members.join(" "))
    });
    let changes = result
        .basis_changes()
        .iter()
        .map(|b| format!("g{t} <- g{t}*g{f}", t = b.target, f = b.factor));
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("code: {}", code.name().unwrap_or("(unnamed)")));
    line(format!("variant: {variant}"));
    line(format!("code_modes: {}", code.n_modes()));
    line(format!("total_modes: {}", result.total_modes()));
    line(format!("ancilla_modes: {:?}", result.ancilla_modes()));
    line(format!("generators: {}", code.num_generators()));
    line(format!("logical_pairs: {}", result.target().num_logical_pairs()));
    line(format!(
        "gate_counts: braid2={} braid4={} total={}",
        counts.braid2,
        counts.braid4,
        counts.total()
    ));
    line(format!("logical_sign_flips: {}", join(flips)));
    line(format!("generating_set_changes: {}", join(changes)));
    if let Some(report) = result.ancilla() {
        let status = match report.status {
            AncillaStatus::Reset => "reset",
            AncillaStatus::ResetModuloStabilizers => "reset up to stabilizers",
            AncillaStatus::Entangled => "not reset (total parity is a stabilizer)",
        };
        line(format!("ancilla: {status}; image of i c0 c1 is {}", report.image));
    }
    let role = match role {
        CircuitRole::Encoder => "encoder",
        CircuitRole::Decoder => "decoder",
    };
    line(format!("document: {role} -> {destination}"));
    out
}

fn cmd_synth(args: SynthArgs) -> CliResult<()> {
    let code = match (&args.builtin, &args.input) {
        (Some(name), _) => builtin(name).ok_or_else(|| Failure::invalid(anyhow!("unknown built-in code `{name}`")))?,
        (None, Some(path)) => load_code(path)?,
        (None, None) => return Err(Failure::invalid(anyhow!("no input code given"))),
    };
    let variant = if args.ancilla_free {
        Variant::AncillaFree
    } else {
        Variant::WithAncilla
    };
    info!("synthesizing {variant:?} circuit for {} modes", code.n_modes());
    let result = synthesize(&code, variant).map_err(|e| match e {
        SynthesisError::InvalidCode(_) => Failure::invalid(e),
        _ => Failure::obstruction(e),
    })?;

    let role = if args.decoder {
        CircuitRole::Decoder
    } else {
        CircuitRole::Encoder
    };
    let circuit = match role {
        CircuitRole::Decoder => result.decoder().clone(),
        CircuitRole::Encoder => result.encoder().clone(),
    };
    let document = serialize_circuit(&CircuitDocument {
        role,
        ancilla_modes: result.ancilla_modes(),
        circuit,
    });

    let to_stdout = args.output.as_deref() == Some(Path::new("-"));
    let destination = match &args.output {
        None => "not written".to_string(),
        Some(_) if to_stdout => "stdout".to_string(),
        Some(path) => path.display().to_string(),
    };
    let report = synth_report(&code, &result, role, &destination);
    match &args.output {
        Some(_) if to_stdout => {
            emit(&mut io::stdout(), &document)?;
            emit(&mut io::stderr(), &report)?;
        }
        Some(path) => {
            fs::write(path, &document).map_err(|e| Failure::io(anyhow!("cannot write {}: {e}", path.display())))?;
            emit(&mut io::stdout(), &report)?;
        }
        None => emit(&mut io::stdout(), &report)?,
    }
    Ok(())
}

fn emit(w: &mut impl Write, text: &str) -> CliResult<()> {
    w.write_all(text.as_bytes()).map_err(Failure::io)
}

fn cmd_verify(args: VerifyArgs) -> CliResult<()> {
    let code = load_code(&args.code)?;
    let doc = load_circuit(&args.circuit)?;
    let opts = VerifyOptions {
        oracle: args.oracle,
        exec: if args.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    let report = verify_decoder(&code, &doc.ancilla_modes, &doc.decoder(), opts).map_err(Failure::invalid)?;
    let mut out = String::new();
    for o in &report.outcomes {
        let status = if o.passed { "ok" } else { "FAILED" };
        writeln!(out, "{}: {status} ({})", o.check, o.detail).expect("write to string");
    }
    emit(&mut io::stdout(), &out)?;
    match report.first_failure() {
        Some(o) => Err(Failure::verification(anyhow!("{} check failed: {}", o.check, o.detail))),
        None => Ok(()),
    }
}

fn cmd_diagram(args: DiagramArgs) -> CliResult<()> {
    let doc = load_circuit(&args.circuit)?;
    let n_ancillas = doc.ancilla_modes.len();
    let text = if args.latex {
        render_latex(&doc.circuit, n_ancillas)
    } else {
        render_ascii(&doc.circuit, n_ancillas)
    };
    emit(&mut io::stdout(), &text)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("MAJENC_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Diagram(args) => cmd_diagram(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

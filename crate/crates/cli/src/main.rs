use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use jnf_cli::{run, JobConfig, OutputFormat, DEFAULT_MAX_N, EXIT_PARSE, EXIT_UNSUPPORTED_FIELD};
use jnf_core::{Field, Form};

/// Exact Jordan, pseudo-rational and rational Jordan normal forms.
#[derive(Parser, Debug)]
#[command(name = "jnf", version)]
struct Args {
    /// Matrix file: `rows cols` then one row per line.
    input: PathBuf,

    /// `q` or `fp:<p>`.
    #[arg(long, default_value = "q")]
    field: String,

    /// `split`, `pseudo` or `rational`.
    #[arg(long, default_value = "split")]
    form: String,

    /// Factor hints, one `multiplicity : c0 c1 ... cd` per line.
    #[arg(long)]
    factors: Option<PathBuf>,

    /// `pretty` or `json`.
    #[arg(long, default_value = "pretty")]
    output: OutputFormat,

    /// Check A·P = P·J and charpoly(J) = charpoly(A) exactly.
    #[arg(long)]
    verify: bool,

    /// Put the coupling above the diagonal for every form.
    #[arg(long)]
    upper: bool,
}

fn fail(code: i32, msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let field: Field = match args.field.parse() {
        Ok(f) => f,
        Err(e) => return fail(EXIT_UNSUPPORTED_FIELD, e.to_string()),
    };
    let form: Form = match args.form.parse() {
        Ok(f) => f,
        Err(e) => return fail(EXIT_PARSE, e.to_string()),
    };
    let max_n = match std::env::var("JNF_MAX_N") {
        Err(_) => DEFAULT_MAX_N,
        Ok(v) => match v.trim().parse() {
            Ok(n) => n,
            Err(_) => return fail(EXIT_PARSE, format!("JNF_MAX_N must be a positive integer, got `{v}`")),
        },
    };
    let config = JobConfig {
        input: args.input,
        field,
        form,
        factors: args.factors,
        output: args.output,
        verify: args.verify,
        upper: args.upper,
        max_n,
    };
    let report = run(&config);
    let _ = std::io::stdout().write_all(report.stdout.as_bytes());
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    ExitCode::from(report.code as u8)
}

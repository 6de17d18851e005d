//! Driver behind the `jnf` binary: read a matrix, decompose it, render the
//! result.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use jnf_core::{
    char_data, charpoly, decompose_with, factor_charpoly, format_factor_hints, parse_factor_hints, Execution, Field, Form,
    JnfError, JordanDecomposition, Matrix, Orientation, Poly,
};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NEEDS_FACTORIZATION: i32 = 3;
pub const EXIT_UNSUPPORTED_FIELD: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

pub const DEFAULT_MAX_N: usize = 512;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Pretty,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pretty" => Ok(OutputFormat::Pretty),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown output format `{s}` (expected pretty or json)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub input: PathBuf,
    pub field: Field,
    pub form: Form,
    pub factors: Option<PathBuf>,
    pub output: OutputFormat,
    pub verify: bool,
    pub upper: bool,
    pub max_n: usize,
}

impl JobConfig {
    pub fn new(input: impl Into<PathBuf>, field: Field, form: Form) -> Self {
        JobConfig {
            input: input.into(),
            field,
            form,
            factors: None,
            output: OutputFormat::Pretty,
            verify: false,
            upper: false,
            max_n: DEFAULT_MAX_N,
        }
    }

    pub fn orientation(&self) -> Orientation {
        if self.upper {
            Orientation::Upper
        } else {
            self.form.default_orientation()
        }
    }
}

/// What a run produced: the exit status and the text for each stream.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn failure(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Report { code, stdout: String::new(), stderr }
    }
}

pub fn exit_code(err: &JnfError) -> i32 {
    match err {
        JnfError::Parse(_) | JnfError::Dimension(_) | JnfError::InvalidHint(_) => EXIT_PARSE,
        JnfError::NeedsFactorization { .. } => EXIT_NEEDS_FACTORIZATION,
        JnfError::UnsupportedField(_) | JnfError::UnsupportedMethod { .. } => EXIT_UNSUPPORTED_FIELD,
        JnfError::FieldMismatch(_) | JnfError::NotMonic | JnfError::Singular | JnfError::Internal(_) => EXIT_INTERNAL,
    }
}

fn error_report(err: &JnfError) -> Report {
    let mut report = Report::failure(exit_code(err), format!("error: {err}"));
    if let JnfError::NeedsFactorization { factored, stuck } = err {
        let mut hints = String::from("# factors found\n");
        hints.push_str(&format_factor_hints(factored));
        hints.push_str("# split these further and pass the file with --factors\n");
        hints.push_str(&format_factor_hints(stuck));
        report.stdout = hints;
    }
    report
}

/// Runs one job. Nothing is printed; the caller writes the report out.
pub fn run(config: &JobConfig) -> Report {
    let text = match fs::read_to_string(&config.input) {
        Ok(t) => t,
        Err(e) => return Report::failure(EXIT_PARSE, format!("error: cannot read {}: {e}", config.input.display())),
    };
    let a = match Matrix::from_text(config.field, &text) {
        Ok(a) => a,
        Err(e) => return error_report(&e),
    };
    if !a.is_square() {
        return Report::failure(EXIT_PARSE, format!("error: matrix is {}x{}, expected square", a.rows(), a.cols()));
    }
    if a.rows() > config.max_n {
        return Report::failure(
            EXIT_PARSE,
            format!("error: n = {} exceeds the limit {} (raise JNF_MAX_N)", a.rows(), config.max_n),
        );
    }
    let hint = match &config.factors {
        None => None,
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return Report::failure(EXIT_PARSE, format!("error: cannot read {}: {e}", path.display())),
            };
            match parse_factor_hints(config.field, &text) {
                Ok(h) => Some(h),
                Err(e) => return error_report(&e),
            }
        }
    };
    match compute(config, &a, hint.as_deref()) {
        Ok((dec, checks)) => {
            let stdout = match config.output {
                OutputFormat::Pretty => render_pretty(&dec, &checks),
                OutputFormat::Json => {
                    let mut s = emit_json(&dec);
                    s.push('\n');
                    s
                }
            };
            Report { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) => error_report(&e),
    }
}

fn compute(config: &JobConfig, a: &Matrix, hint: Option<&[(Poly, usize)]>) -> jnf_core::Result<(JordanDecomposition, Vec<String>)> {
    let p = char_data(a)?.p;
    let factorization = factor_charpoly(&p, hint)?;
    let dec = decompose_with(a, config.form, &factorization, config.orientation(), Execution::Parallel)?;
    let mut checks = Vec::new();
    if config.verify {
        checks = verify(a, &dec)?;
    }
    Ok((dec, checks))
}

/// Exact checks of a decomposition against its input. Returns one line per
/// passed check.
pub fn verify(a: &Matrix, dec: &JordanDecomposition) -> jnf_core::Result<Vec<String>> {
    let residual = a.mul(&dec.p)?.sub(&dec.p.mul(&dec.j)?)?;
    if !residual.is_zero() {
        return Err(JnfError::Internal("A·P - P·J is not zero".into()));
    }
    if dec.p.rank() != dec.p.rows() {
        return Err(JnfError::Internal("P is singular".into()));
    }
    let pa = charpoly(a)?;
    if charpoly(&dec.j)? != pa {
        return Err(JnfError::Internal("charpoly(J) differs from charpoly(A)".into()));
    }
    Ok(vec![
        "A·P - P·J = 0".to_string(),
        "rank P = n".to_string(),
        format!("charpoly(J) = charpoly(A) = {pa}"),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub factor: Vec<String>,
    pub cycle_length: usize,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub form: String,
    pub field: String,
    pub n: usize,
    pub blocks: Vec<BlockDoc>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
}

fn rows_of(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

pub fn to_doc(dec: &JordanDecomposition) -> DecompositionDoc {
    DecompositionDoc {
        form: dec.form.to_string(),
        field: dec.field().to_string(),
        n: dec.size(),
        blocks: dec
            .blocks
            .iter()
            .map(|b| BlockDoc {
                factor: b.factor.coeffs().iter().map(ToString::to_string).collect(),
                cycle_length: b.cycle_length,
                offset: b.offset,
            })
            .collect(),
        p: rows_of(&dec.p),
        j: rows_of(&dec.j),
    }
}

pub fn emit_json(dec: &JordanDecomposition) -> String {
    serde_json::to_string_pretty(&to_doc(dec)).expect("document serializes")
}

/// A parsed JSON document with its matrices rebuilt over the named field.
#[derive(Clone, Debug)]
pub struct ParsedDecomposition {
    pub doc: DecompositionDoc,
    pub field: Field,
    pub form: Form,
    pub p: Matrix,
    pub j: Matrix,
}

fn matrix_from_rows(field: Field, n: usize, rows: &[Vec<String>]) -> jnf_core::Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(JnfError::Parse(format!("expected a {n}x{n} matrix")));
    }
    let data = rows.iter().flatten().map(|t| field.parse(t)).collect::<jnf_core::Result<Vec<_>>>()?;
    Matrix::new(field, n, n, data)
}

pub fn parse_json(text: &str) -> jnf_core::Result<ParsedDecomposition> {
    let doc: DecompositionDoc = serde_json::from_str(text).map_err(|e| JnfError::Parse(e.to_string()))?;
    let field: Field = doc.field.parse()?;
    let form: Form = doc.form.parse()?;
    let p = matrix_from_rows(field, doc.n, &doc.p)?;
    let j = matrix_from_rows(field, doc.n, &doc.j)?;
    Ok(ParsedDecomposition { doc, field, form, p, j })
}

pub fn render_pretty(dec: &JordanDecomposition, checks: &[String]) -> String {
    let mut out = String::new();
    let orientation = match dec.orientation {
        Orientation::Lower => "lower",
        Orientation::Upper => "upper",
    };
    let _ = writeln!(out, "form: {}  field: {}  n: {}  orientation: {orientation}", dec.form, dec.field(), dec.size());
    let _ = writeln!(out, "blocks:");
    let factors: Vec<String> = dec.blocks.iter().map(|b| b.factor.to_string()).collect();
    let width = factors.iter().map(String::len).max().unwrap_or(0);
    for (b, f) in dec.blocks.iter().zip(&factors) {
        let _ = writeln!(out, "  {f:<width$}  length {}  offset {}", b.cycle_length, b.offset);
    }
    let _ = write!(out, "P:\n{}", dec.p);
    let _ = write!(out, "J:\n{}", dec.j);
    if !checks.is_empty() {
        let _ = writeln!(out, "verify:");
        for c in checks {
            let _ = writeln!(out, "  ok  {c}");
        }
    }
    out
}

//! Command-line interface: argument definitions and command execution.

use std::fs;
use std::path::{Path, PathBuf};

use bellinv_core::bell::{bell_partition, bell_partition_triangle};
use bellinv_core::lambda::{f_recurrence, lambda_closed_table, lambda_from_instance, lambda_recurrence, FTable};
use bellinv_core::mina::{f_via_mina_table, mina_row, mina_via_chi};
use bellinv_core::report::all_passed;
use bellinv_core::transforms::{self, FSource};
use bellinv_core::{sample, MultiPoly, ProblemSpec, Rational, SequencePrefix, UniPoly};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::format::{self, FormatError, Provenance};
use crate::suite::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "bellinv", version, about = "Exact Bell-polynomial inverse relations")]
pub struct Cli {
    /// Truncation order / table size.
    #[arg(long, global = true)]
    pub order: Option<usize>,

    /// Seed for every random draw.
    #[arg(long, global = true, env = "BELLINV_SEED", default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinary Bell polynomials B_{n,k}, symbolic or evaluated.
    Bell {
        #[arg(long)]
        n: usize,
        /// Omit to print the whole row k = 1..n.
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated x_1, x_2, ... to evaluate at.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<String>>,
    },
    /// lambda_n or f_n tables as polynomials in u = p*s.
    Lambda {
        /// Spec file; defaults to p = 1, a = (1, -1), q = (1, 2).
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LambdaMethod::Rec)]
        method: LambdaMethod,
        #[arg(long, value_enum, default_value_t = Kind::Lambda)]
        kind: Kind,
        /// y sequence for `--method instance`; random with y_1 != 0 if omitted.
        #[arg(long)]
        seq: Option<PathBuf>,
    },
    /// Mina polynomials C_{n,k}.
    Mina {
        #[arg(long)]
        n: usize,
        /// Omit to print C_{n,0}, ..., C_{n,n-1}.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = MinaMethod::Matrix)]
        method: MinaMethod,
    },
    /// Apply one direction of an inverse pair to a sequence file.
    Transform {
        #[arg(long, value_enum)]
        pair: Pair,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Sequence file {"values": [...]}.
        #[arg(long)]
        seq: PathBuf,
        /// Spec file, for the general and three-term pairs.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        /// Source of f_k for the three-term pair.
        #[arg(long, value_enum, default_value_t = FSourceArg::Mina)]
        f_source: FSourceArg,
        /// Omit provenance, so the output has the same shape as the input.
        #[arg(long)]
        bare: bool,
    },
    /// Run a verification suite; exits nonzero iff a case fails.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
    },
    /// Seeded random inputs.
    Sample {
        #[command(subcommand)]
        what: SampleKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum SampleKind {
    /// A sequence of small rationals; length from --order (default 10).
    Sequence {
        /// Redraw x_1 until it is nonzero.
        #[arg(long)]
        nonzero_first: bool,
    },
    /// An admissible spec with m terms.
    Spec {
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LambdaMethod {
    Rec,
    Closed,
    Instance,
    Mina,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Lambda,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MinaMethod {
    Matrix,
    Chi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pair {
    /// z_m = sum (am+bk)/(k(am+b)) C(-am-b, k-1) B_{m,k}(x)
    Affine,
    /// y_m = 1/(am+b) sum C(-am-b, k) B_{m,k}(x)
    Scaled,
    /// parameters p, q, r
    TwoTerm,
    /// any spec
    General,
    /// m = 3 spec, backward side through f_k
    ThreeTerm,
}

impl Pair {
    fn name(self) -> &'static str {
        match self {
            Pair::Affine => "affine",
            Pair::Scaled => "scaled",
            Pair::TwoTerm => "two-term",
            Pair::General => "general",
            Pair::ThreeTerm => "three-term",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FSourceArg {
    Recurrence,
    Mina,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Input { path: PathBuf, source: FormatError },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error(transparent)]
    Math(#[from] bellinv_core::Error),
}

impl CliError {
    /// 2 for bad input or usage, 3 for mathematical failures such as poles.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 3,
            _ => 2,
        }
    }
}

/// Rendered output and the process exit code it implies.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, exit_code: 0 }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input {
        path: path.to_path_buf(),
        source: e.into(),
    })
}

fn read_spec(path: &Path) -> Result<ProblemSpec, CliError> {
    format::spec_from_json(&read_json(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn read_sequence(path: &Path) -> Result<SequencePrefix, CliError> {
    format::sequence_from_json(&read_json(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn param(value: &Option<String>, name: &str) -> Result<Rational, CliError> {
    let text = value
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("--{name} is required for this pair")))?;
    Ok(format::parse_rational(text, format!("--{name}"))?)
}

pub fn default_spec() -> ProblemSpec {
    ProblemSpec::two_term(Rational::one(), Rational::one(), Rational::from(2)).expect("admissible")
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let csv = cli.format == OutputFormat::Csv;
    match &cli.command {
        Command::Bell { n, k, values } => bell(*n, *k, values.as_deref(), csv),
        Command::Lambda {
            spec,
            method,
            kind,
            seq,
        } => {
            let spec = match spec {
                Some(p) => read_spec(p)?,
                None => default_spec(),
            };
            lambda(
                &spec,
                cli.order.unwrap_or(6),
                *method,
                *kind,
                seq.as_deref(),
                cli.seed,
                csv,
            )
        }
        Command::Mina { n, k, method } => mina(*n, *k, *method, csv),
        Command::Transform {
            pair,
            direction,
            seq,
            spec,
            a,
            b,
            p,
            q,
            r,
            f_source,
            bare,
        } => {
            let mut input = read_sequence(seq)?;
            if let Some(order) = cli.order {
                if order > input.len() {
                    return Err(CliError::Usage(format!(
                        "--order {order} exceeds the {} values in {}",
                        input.len(),
                        seq.display()
                    )));
                }
                input = SequencePrefix::new(input.values()[..order].to_vec());
            }
            let spec = spec.as_deref().map(read_spec).transpose()?;
            let out = match (pair, direction) {
                (Pair::Affine, Direction::Forward) => {
                    transforms::affine_forward(&param(a, "a")?, &param(b, "b")?, &input)?
                }
                (Pair::Affine, Direction::Backward) => {
                    transforms::affine_backward(&param(a, "a")?, &param(b, "b")?, &input)?
                }
                (Pair::Scaled, Direction::Forward) => {
                    transforms::scaled_forward(&param(a, "a")?, &param(b, "b")?, &input)?
                }
                (Pair::Scaled, Direction::Backward) => {
                    transforms::scaled_backward(&param(a, "a")?, &param(b, "b")?, &input)?
                }
                (Pair::TwoTerm, dir) => {
                    let (p, q, r) = (param(p, "p")?, param(q, "q")?, param(r, "r")?);
                    match dir {
                        Direction::Forward => transforms::two_term_forward(&p, &q, &r, &input)?,
                        Direction::Backward => transforms::two_term_backward(&p, &q, &r, &input)?,
                    }
                }
                (Pair::General | Pair::ThreeTerm, dir) => {
                    let spec = spec.ok_or_else(|| CliError::Usage("--spec is required for this pair".into()))?;
                    match (pair, dir) {
                        (_, Direction::Forward) => transforms::general_forward(&spec, &input)?,
                        (Pair::General, Direction::Backward) => transforms::general_backward(&spec, &input)?,
                        _ => {
                            let source = match f_source {
                                FSourceArg::Recurrence => FSource::Recurrence,
                                FSourceArg::Mina => FSource::Mina,
                            };
                            transforms::three_term_backward(&spec, &input, source)?
                        }
                    }
                }
            };
            let provenance = Provenance {
                transform: pair.name().into(),
                direction: match direction {
                    Direction::Forward => "forward".into(),
                    Direction::Backward => "backward".into(),
                },
            };
            Ok(Outcome::ok(sequence_output(&out, (!bare).then_some(&provenance), csv)))
        }
        Command::Verify { suite: name } => {
            let which: Suite = name.parse().map_err(CliError::Usage)?;
            let order = cli.order.unwrap_or(8);
            let cases = suite::run(which, order, cli.seed);
            let text = if csv {
                format::to_csv(&format::CHECK_HEADER, &format::check_rows(&cases))
            } else {
                format::to_text(&format::report_json(&cases, cli.seed, order, name))
            };
            Ok(Outcome {
                text,
                exit_code: if all_passed(&cases) { 0 } else { 1 },
            })
        }
        Command::Sample { what } => {
            let mut rng = sample::rng(cli.seed);
            match what {
                SampleKind::Sequence { nonzero_first } => {
                    let len = cli.order.unwrap_or(10);
                    let mut values = sample::sequence(&mut rng, len);
                    if *nonzero_first && len > 0 {
                        values[0] = sample::nonzero_rational(&mut rng);
                    }
                    Ok(Outcome::ok(sequence_output(&SequencePrefix::new(values), None, csv)))
                }
                SampleKind::Spec { m } => {
                    if *m < 2 {
                        return Err(CliError::Usage("an admissible spec needs m >= 2".into()));
                    }
                    let spec = sample::spec(&mut rng, *m);
                    let text = if csv {
                        let rows = spec
                            .terms()
                            .iter()
                            .map(|t| vec![spec.p().to_string(), t.a.to_string(), t.q.to_string()])
                            .collect::<Vec<_>>();
                        format::to_csv(&["p", "a", "q"], &rows)
                    } else {
                        format::to_text(&format::spec_json(&spec))
                    };
                    Ok(Outcome::ok(text))
                }
            }
        }
    }
}

fn sequence_output(seq: &SequencePrefix, provenance: Option<&Provenance>, csv: bool) -> String {
    if csv {
        let rows = seq
            .iter()
            .enumerate()
            .map(|(i, v)| vec![(i + 1).to_string(), v.to_string()])
            .collect::<Vec<_>>();
        format::to_csv(&["index", "value"], &rows)
    } else {
        format::to_text(&format::sequence_json(seq, provenance))
    }
}

fn bell(n: usize, k: Option<usize>, values: Option<&[String]>, csv: bool) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if let Some(k) = k {
        if k == 0 || k > n {
            return Err(CliError::Usage(format!(
                "--k must satisfy 1 <= k <= n (got n = {n}, k = {k})"
            )));
        }
    }
    let polys: Vec<(usize, MultiPoly)> = match k {
        Some(k) => vec![(k, bell_partition(n, k)?)],
        None => bell_partition_triangle(n)
            .pop()
            .expect("n >= 1")
            .into_iter()
            .enumerate()
            .map(|(i, p)| (i + 1, p))
            .collect(),
    };
    let single = k.is_some();

    if let Some(values) = values {
        let x = values
            .iter()
            .enumerate()
            .map(|(i, v)| format::parse_rational(v.trim(), format!("--values item {}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let evaluated = polys
            .iter()
            .map(|(k, p)| {
                p.eval(&x)
                    .map(|v| (*k, v))
                    .map_err(|e| CliError::Usage(format!("B_{{{n},{k}}} needs x_1..x_{}: {e}", n - k + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let text = if csv {
            let rows = evaluated
                .iter()
                .map(|(k, v)| vec![n.to_string(), k.to_string(), v.to_string()])
                .collect::<Vec<_>>();
            format::to_csv(&["n", "k", "value"], &rows)
        } else if single {
            format::to_text(&Value::String(evaluated[0].1.to_string()))
        } else {
            format::to_text(&Value::Array(
                evaluated.iter().map(|(_, v)| Value::String(v.to_string())).collect(),
            ))
        };
        return Ok(Outcome::ok(text));
    }

    let text = if csv {
        let rows = polys
            .iter()
            .map(|(k, p)| vec![n.to_string(), k.to_string(), p.to_string()])
            .collect::<Vec<_>>();
        format::to_csv(&["n", "k", "polynomial"], &rows)
    } else if single {
        format::to_text(&format::multipoly_json(&polys[0].1))
    } else {
        format::to_text(&Value::Array(
            polys.iter().map(|(_, p)| format::multipoly_json(p)).collect(),
        ))
    };
    Ok(Outcome::ok(text))
}

fn table_csv(polys: &[UniPoly], first_index: usize) -> String {
    let mut rows = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        for (power, c) in p.coeffs().iter().enumerate() {
            rows.push(vec![(i + first_index).to_string(), power.to_string(), c.to_string()]);
        }
    }
    format::to_csv(&["n", "power", "coefficient"], &rows)
}

fn lambda(
    spec: &ProblemSpec,
    order: usize,
    method: LambdaMethod,
    kind: Kind,
    seq: Option<&Path>,
    seed: u64,
    csv: bool,
) -> Result<Outcome, CliError> {
    match kind {
        Kind::Lambda => {
            let table = match method {
                LambdaMethod::Rec => lambda_recurrence(spec, order),
                LambdaMethod::Closed => lambda_closed_table(spec, order)?,
                LambdaMethod::Instance => {
                    let y = match seq {
                        Some(path) => read_sequence(path)?.into_values(),
                        None => {
                            let mut rng = sample::rng(seed);
                            let mut y = vec![sample::nonzero_rational(&mut rng)];
                            y.extend(sample::sequence(&mut rng, order.saturating_sub(1)));
                            y
                        }
                    };
                    lambda_from_instance(spec, &y, order)?
                }
                LambdaMethod::Mina => {
                    return Err(CliError::Usage("--method mina applies to --kind f".into()));
                }
            };
            let text = if csv {
                table_csv(table.polys(), 0)
            } else {
                format::to_text(&format::lambda_table_json(&table))
            };
            Ok(Outcome::ok(text))
        }
        Kind::F => {
            let table: FTable = match method {
                LambdaMethod::Rec => f_recurrence(spec, order)?,
                LambdaMethod::Mina => f_via_mina_table(spec, order)?,
                _ => return Err(CliError::Usage("--kind f supports --method rec or mina".into())),
            };
            let text = if csv {
                table_csv(table.polys(), 1)
            } else {
                format::to_text(&format::f_table_json(&table))
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn mina(n: usize, k: Option<usize>, method: MinaMethod, csv: bool) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if let Some(k) = k {
        if k >= n {
            return Err(CliError::Usage(format!(
                "--k must satisfy 0 <= k < n (got n = {n}, k = {k})"
            )));
        }
    }
    let row = match method {
        MinaMethod::Matrix => mina_row(n)?,
        MinaMethod::Chi => mina_via_chi(n)?,
    };
    let text = if csv {
        let rows = row
            .iter()
            .enumerate()
            .filter(|(i, _)| k.map_or(true, |k| k == *i))
            .map(|(i, p)| vec![n.to_string(), i.to_string(), p.to_string()])
            .collect::<Vec<_>>();
        format::to_csv(&["n", "k", "polynomial"], &rows)
    } else {
        match k {
            Some(k) => {
                let mut v = format::multipoly_json(&row[k]);
                if (n, k) == (4, 2) {
                    v["note"] = json!(bellinv_core::mina::C42_NOTE);
                }
                format::to_text(&v)
            }
            None => format::to_text(&Value::Array(row.iter().map(format::multipoly_json).collect())),
        }
    };
    Ok(Outcome::ok(text))
}

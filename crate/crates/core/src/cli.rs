//! The `ffht` command line. Every command is a thin wrapper over the library;
//! [`run`] takes the argument list and output streams so it can be tested
//! without spawning a process.
//!
//! Exit status: 0 on success, 1 on a domain error (the library error is
//! printed verbatim), 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::decompose::{derive, DeriveOptions, Strategy};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, GaussInt};
use crate::plan::{
    builtin_plan, count_ops_with, parse_plan, serialize_plan, CostMode, FastPlan, ValidationReport,
};
use crate::report::{emit_report, ReportFormat};
use crate::transform::{build_matrix, forward, inverse};
use crate::trig::KernelSpec;

#[derive(Debug, Parser)]
#[command(
    name = "ffht",
    version,
    about = "Finite field Hartley transforms over GI(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Forward or inverse transform of one signal.
    Transform(TransformArgs),
    /// Print the transform matrix T[k][i] = cas(ik).
    Matrix {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Pretty)]
        format: MatrixFormat,
    },
    /// Print i, sin(i), cos(i), cas(i) for i in 0..N.
    Table {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Pretty)]
        format: MatrixFormat,
    },
    /// Inspect, check, count or derive fast plans.
    #[command(subcommand)]
    Plan(PlanCommand),
    /// Complexity tables for the 8- and 16-point transforms.
    Report {
        #[arg(long, value_enum, default_value_t = ReportFormatArg::Md)]
        format: ReportFormatArg,
    },
}

#[derive(Debug, Args)]
struct KernelArgs {
    /// Prime modulus, 3 mod 4.
    #[arg(long)]
    p: u64,
    /// Kernel element, e.g. `j`, `3`, `2+2j`.
    #[arg(long)]
    zeta: String,
    /// Expected blocklength; must equal the order of zeta.
    #[arg(long)]
    n: Option<u64>,
}

impl KernelArgs {
    fn spec(&self) -> Result<KernelSpec> {
        let ctx = FieldCtx::new(self.p)?;
        let zeta = ctx.parse(&self.zeta)?;
        match self.n {
            Some(n) => KernelSpec::with_order(ctx, zeta, n),
            None => KernelSpec::new(ctx, zeta),
        }
    }
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["input", "input_file"]))]
struct TransformArgs {
    #[arg(long, required_unless_present_any = ["builtin", "plan_file"], conflicts_with_all = ["builtin", "plan_file"])]
    p: Option<u64>,
    #[arg(long, required_unless_present_any = ["builtin", "plan_file"], conflicts_with_all = ["builtin", "plan_file"])]
    zeta: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    /// Comma-separated elements.
    #[arg(long, allow_hyphen_values = true)]
    input: Option<String>,
    /// One element per line; `#` starts a comment.
    #[arg(long)]
    input_file: Option<PathBuf>,
    /// Apply the inverse transform.
    #[arg(long, conflicts_with = "fast")]
    inverse: bool,
    /// Run a fast plan instead of the dense definition. Input must be real.
    #[arg(long, requires = "plan_source")]
    fast: bool,
    #[arg(long, group = "plan_source", requires = "fast")]
    builtin: Option<String>,
    #[arg(long, group = "plan_source", requires = "fast")]
    plan_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("plan").required(true).args(["builtin", "file"]))]
struct PlanSource {
    /// One of n4_p7, n6_p7, n8_p7, n12_p7, n16_p7, n16_p31.
    #[arg(long)]
    builtin: Option<String>,
    /// Path to an `ffhtplan v1` file.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl PlanSource {
    fn load(&self) -> Result<FastPlan> {
        match (&self.builtin, &self.file) {
            (Some(name), _) => builtin_plan(name),
            (None, Some(path)) => parse_plan(&read_file(path)?),
            (None, None) => unreachable!("clap enforces one plan source"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum PlanCommand {
    /// Print a plan in canonical text form.
    Show(PlanSource),
    /// Compare the plan's composition with the transform matrix.
    Validate(PlanSource),
    /// Operation counts under the cost model.
    Count {
        #[command(flatten)]
        source: PlanSource,
        /// `split` charges mixed post coefficients as two pure terms.
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Derive a plan by column pairing.
    Derive {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
        strategy: StrategyArg,
        #[arg(long)]
        allow_scaling: bool,
        #[arg(long, default_value_t = DeriveOptions::default().max_layers)]
        max_layers: usize,
        /// Write the plan here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Pretty,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormatArg {
    Md,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Split,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Greedy,
    Exhaustive,
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::MalformedPlan(format!("cannot read {}: {e}", path.display())))
}

/// Comma-separated element list.
pub fn parse_inline(ctx: &FieldCtx, text: &str) -> Result<Vec<GaussInt>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| ctx.parse(t)).collect()
}

/// One element per line, blank lines and `#` comments ignored.
pub fn parse_signal_file(ctx: &FieldCtx, text: &str) -> Result<Vec<GaussInt>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| ctx.parse(l))
        .collect()
}

/// One element per line, as printed by `ffht transform`.
pub fn format_signal(v: &[GaussInt]) -> String {
    v.iter().map(|x| format!("{x}\n")).collect()
}

/// Right-aligned grid, or comma-separated cells.
fn render_grid(rows: &[Vec<String>], csv: bool) -> String {
    if csv {
        return rows.iter().map(|r| r.join(",") + "\n").collect();
    }
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            cells.join(" ") + "\n"
        })
        .collect()
}

pub fn format_matrix(spec: &KernelSpec, csv: bool) -> String {
    let t = build_matrix(spec).into_matrix();
    let rows: Vec<Vec<String>> = (0..t.rows())
        .map(|r| t.row(r).iter().map(ToString::to_string).collect())
        .collect();
    render_grid(&rows, csv)
}

pub fn format_trig_table(spec: &KernelSpec, csv: bool) -> String {
    let mut rows = vec![vec![
        "i".to_string(),
        "sin".into(),
        "cos".into(),
        "cas".into(),
    ]];
    for i in 0..spec.n() as i64 {
        rows.push(vec![
            i.to_string(),
            spec.sin(i).to_string(),
            spec.cos(i).to_string(),
            spec.cas(i).to_string(),
        ]);
    }
    render_grid(&rows, csv)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let (text, code) = match command {
        Command::Transform(args) => (transform(&args)?, 0),
        Command::Matrix { kernel, format } => (
            format_matrix(&kernel.spec()?, matches!(format, MatrixFormat::Csv)),
            0,
        ),
        Command::Table { kernel, format } => (
            format_trig_table(&kernel.spec()?, matches!(format, MatrixFormat::Csv)),
            0,
        ),
        Command::Report { format } => {
            let format = match format {
                ReportFormatArg::Md => ReportFormat::Markdown,
                ReportFormatArg::Csv => ReportFormat::Csv,
            };
            (emit_report(format)?, 0)
        }
        Command::Plan(PlanCommand::Show(src)) => (serialize_plan(&src.load()?), 0),
        Command::Plan(PlanCommand::Validate(src)) => match src.load()?.validate() {
            ValidationReport::Equal => (
                "valid: composition equals the transform matrix\n".to_string(),
                0,
            ),
            ValidationReport::Mismatch {
                row,
                col,
                expected,
                composed,
            } => (
                format!("mismatch at ({row}, {col}): expected {expected}, composed {composed}\n"),
                1,
            ),
        },
        Command::Plan(PlanCommand::Count { source, mode }) => {
            let mode = match mode {
                ModeArg::Strict => CostMode::Strict,
                ModeArg::Split => CostMode::Split,
            };
            (format!("{}\n", count_ops_with(&source.load()?, mode)?), 0)
        }
        Command::Plan(PlanCommand::Derive {
            kernel,
            strategy,
            allow_scaling,
            max_layers,
            out: path,
        }) => {
            let opts = DeriveOptions {
                strategy: match strategy {
                    StrategyArg::Greedy => Strategy::Greedy,
                    StrategyArg::Exhaustive => Strategy::Exhaustive,
                },
                allow_scaling,
                max_layers,
            };
            let d = derive(&kernel.spec()?, &opts)?;
            let plan_text = serialize_plan(&d.plan);
            match path {
                Some(path) => {
                    fs::write(&path, plan_text).map_err(|e| {
                        Error::MalformedPlan(format!("cannot write {}: {e}", path.display()))
                    })?;
                    (format!("{}\n", d.cost), 0)
                }
                None => (format!("{plan_text}# {}\n", d.cost), 0),
            }
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::MalformedPlan(format!("cannot write output: {e}")))?;
    Ok(code)
}

fn transform(args: &TransformArgs) -> Result<String> {
    let plan = match (&args.builtin, &args.plan_file) {
        (Some(name), _) => Some(builtin_plan(name)?),
        (None, Some(path)) => Some(parse_plan(&read_file(path)?)?),
        (None, None) => None,
    };
    let spec = match &plan {
        Some(plan) => {
            let spec = *plan.spec();
            if let Some(n) = args.n {
                KernelSpec::with_order(spec.ctx(), spec.zeta(), n)?;
            }
            spec
        }
        None => KernelArgs {
            p: args.p.expect("clap requires --p"),
            zeta: args.zeta.clone().expect("clap requires --zeta"),
            n: args.n,
        }
        .spec()?,
    };
    let ctx = spec.ctx();
    let v = match (&args.input, &args.input_file) {
        (Some(text), _) => parse_inline(&ctx, text)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::ParseElement(format!("cannot read {}: {e}", path.display())))?;
            parse_signal_file(&ctx, &text)?
        }
        (None, None) => unreachable!("clap enforces one input source"),
    };
    let table = spec.cas_table();
    let result = match plan {
        Some(plan) => plan.apply_strict(&v)?,
        None if args.inverse => inverse(&table, &v)?,
        None => forward(&table, &v)?,
    };
    Ok(format_signal(&result))
}

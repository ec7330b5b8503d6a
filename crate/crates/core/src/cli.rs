//! Command-line front end. Exit codes: 0 success, 1 input error,
//! 2 non-convergence, 3 verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::structure_invariants;
use crate::catalog::{listing, resolve};
use crate::classify::{critical_value, fraction_string, DEFAULT_TYPE_TOL};
use crate::error::{Error, Result};
use crate::flow::{flow, FlowParams};
use crate::io::{parse_params, read_tensor, tensor_to_string, write_tensor, TensorJson};
use crate::linalg::HermitianMatrix;
use crate::moment::{criticality, moment_map, scalar_f};
use crate::tensor::StructureTensor;
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "momentflow",
    version,
    about = "Moment map, gradient flow and critical types of complex brackets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, norm, Jacobi residual and structural invariants.
    Info(InputArgs),
    /// Moment map, F and the criticality report.
    Moment(InputArgs),
    /// Integrate the negative gradient flow of F.
    Flow(FlowArgs),
    /// Critical type of the input, or of its flow limit if it is not critical.
    Classify(FlowArgs),
    /// List catalog entries, or export one as tensor JSON.
    Catalog(CatalogArgs),
    /// Run the numerical verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Tensor JSON file.
    #[arg(long, conflicts_with = "catalog")]
    pub file: Option<PathBuf>,
    /// Catalog name (see `catalog list`).
    #[arg(long)]
    pub catalog: Option<String>,
    /// Comma-separated complex parameters, e.g. `0.25` or `1,2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Dimension for `mu_he`, `mu_hy` and `random`.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub crit_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FlowOverrides {
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub grad_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub flow: FlowOverrides,
    /// Directory for the trace CSV and limit JSON (flow only).
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum CatalogAction {
    #[default]
    List,
    Show,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(value_enum, default_value_t)]
    pub action: CatalogAction,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only one suite.
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub crit_tol: Option<f64>,
    #[command(flatten)]
    pub flow: FlowOverrides,
}

fn flow_params(crit_tol: Option<f64>, o: &FlowOverrides) -> Result<FlowParams> {
    let mut p = FlowParams::default();
    if let Some(x) = crit_tol {
        p.crit_tol = x;
    }
    if let Some(x) = o.max_steps {
        p.max_steps = x;
    }
    if let Some(x) = o.grad_tol {
        p.grad_tol = x;
    }
    p.validate()?;
    Ok(p)
}

impl InputArgs {
    /// The tensor and a short label used for output file names.
    fn load(&self) -> Result<(StructureTensor, String)> {
        let params = parse_params(self.params.as_deref().unwrap_or(""))?;
        match (&self.file, &self.catalog) {
            (Some(path), None) => {
                if !params.is_empty() || self.dim.is_some() {
                    return Err(Error::Parse("--params and --dim need --catalog".into()));
                }
                let stem = path
                    .file_stem()
                    .map_or("tensor".into(), |s| s.to_string_lossy().into_owned());
                Ok((read_tensor(path)?, stem))
            }
            (None, Some(name)) => {
                let e = resolve(name, &params, self.dim, self.seed)?;
                Ok((e.tensor, name.clone()))
            }
            _ => Err(Error::Parse(
                "exactly one of --file or --catalog is required".into(),
            )),
        }
    }

    fn crit_tol(&self) -> Result<f64> {
        match self.crit_tol {
            Some(x) if !(x.is_finite() && x > 0.0) => {
                Err(Error::Domain("--crit-tol must be positive".into()))
            }
            Some(x) => Ok(x),
            None => Ok(crate::moment::DEFAULT_CRIT_TOL),
        }
    }
}

/// Parses arguments and runs the command, writing to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotConverged { .. } => EXIT_NOT_CONVERGED,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    let text = match cmd {
        Command::Info(a) => cmd_info(a)?,
        Command::Moment(a) => cmd_moment(a)?,
        Command::Flow(a) => return cmd_flow(a, out),
        Command::Classify(a) => return cmd_classify(a, out),
        Command::Catalog(a) => cmd_catalog(a)?,
        Command::Verify(a) => return cmd_verify(a, out),
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn json_line(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn no_csv(cmd: &str, f: Format) -> Result<()> {
    if f == Format::Csv {
        return Err(Error::Parse(format!("`{cmd}` has no csv output")));
    }
    Ok(())
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

fn cmd_info(a: &InputArgs) -> Result<String> {
    no_csv("info", a.format)?;
    let (mu, _) = a.load()?;
    let inv = structure_invariants(&mu);
    let norm_sq = mu.norm_sqr();
    if a.format == Format::Json {
        return Ok(json_line(&json!({
            "dim": inv.dim,
            "norm_sq": norm_sq,
            "zero_bracket": mu.is_zero(),
            "invariants": inv,
        })));
    }
    let mut s = String::new();
    writeln!(s, "dim              {}", inv.dim).ok();
    writeln!(s, "||mu||^2         {norm_sq}").ok();
    if mu.is_zero() {
        writeln!(s, "bracket          zero (abelian)").ok();
    }
    writeln!(s, "jacobi residual  {:e}", inv.jacobi_residual).ok();
    writeln!(s, "lie              {}", inv.is_lie).ok();
    writeln!(s, "dim Der          {}", inv.dim_der).ok();
    writeln!(s, "dim [g,g]        {}", inv.dim_derived).ok();
    writeln!(s, "dim z            {}", opt(inv.dim_center)).ok();
    writeln!(s, "nilpotent        {}", opt(inv.nilpotent)).ok();
    writeln!(s, "solvable         {}", opt(inv.solvable)).ok();
    writeln!(s, "semisimple       {}", opt(inv.semisimple)).ok();
    Ok(s)
}

fn matrix_json(m: &HermitianMatrix) -> serde_json::Value {
    let n = m.dim();
    let rows: Vec<Vec<[f64; 2]>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    json!(rows)
}

fn cmd_moment(a: &InputArgs) -> Result<String> {
    let (mu, _) = a.load()?;
    let f = scalar_f(&mu)?;
    let r = moment_map(&mu);
    let rep = criticality(&mu, a.crit_tol()?)?;
    let ty = rep.critical_type(DEFAULT_TYPE_TOL);
    Ok(match a.format {
        Format::Json => json_line(&json!({
            "R": matrix_json(&r),
            "trace_R": r.trace(),
            "F": f,
            "criticality": rep.to_json(ty.as_ref()),
        })),
        Format::Csv => {
            let mut s = String::from("i,j,re,im\n");
            for i in 0..r.dim() {
                for j in 0..r.dim() {
                    let z = r.get(i, j);
                    writeln!(s, "{},{},{},{}", i + 1, j + 1, z.re, z.im).ok();
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "F           {f}").ok();
            writeln!(s, "tr R        {}", r.trace()).ok();
            writeln!(s, "R =").ok();
            for i in 0..r.dim() {
                let row: Vec<String> = (0..r.dim()).map(|j| complex_cell(r.get(i, j))).collect();
                writeln!(s, "  {}", row.join(" ")).ok();
            }
            writeln!(s, "critical    {}", rep.is_critical).ok();
            writeln!(s, "residual    {:e}", rep.residual).ok();
            writeln!(s, "c_mu        {}", rep.c_mu).ok();
            let eig: Vec<String> = rep
                .d_eigenvalues()
                .iter()
                .map(|x| format!("{x:.9}"))
                .collect();
            writeln!(s, "D spectrum  {}", eig.join(" ")).ok();
            writeln!(s, "type        {}", opt(ty)).ok();
            s
        }
    })
}

fn complex_cell(z: crate::linalg::C64) -> String {
    if z.im == 0.0 {
        format!("{:>10.6}", z.re)
    } else {
        format!("{:>10.6}{:+.6}i", z.re, z.im)
    }
}

fn cmd_flow(a: &FlowArgs, out: &mut dyn Write) -> Result<i32> {
    let (mu, label) = a.input.load()?;
    let params = flow_params(a.input.crit_tol, &a.flow)?;
    let t = flow(&mu, &params)?;
    let trace_path = a.out.join(format!("{}.trace.csv", file_label(&label)));
    let limit_path = a.out.join(format!("{}.limit.json", file_label(&label)));
    std::fs::create_dir_all(&a.out)?;
    std::fs::write(&trace_path, t.to_csv())?;
    write_tensor(&limit_path, &t.limit)?;
    let steps = t.samples.last().map_or(0, |s| s.step);
    let text = match a.input.format {
        Format::Csv => t.to_csv(),
        Format::Json => json_line(&json!({
            "converged": t.converged,
            "stop": t.stop,
            "steps": steps,
            "F": t.final_f(),
            "type": t.stratum.as_ref().map(|s| s.to_json()),
            "residual": t.limit_report.residual,
            "der_dims": [t.der_dims.0, t.der_dims.1],
            "trace": path_str(&trace_path),
            "limit": path_str(&limit_path),
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "F          {}", t.final_f()).ok();
            writeln!(s, "type       {}", opt(t.stratum.as_ref())).ok();
            writeln!(s, "converged  {}", t.converged).ok();
            writeln!(s, "steps      {steps}").ok();
            writeln!(s, "residual   {:e}", t.limit_report.residual).ok();
            writeln!(s, "trace      {}", path_str(&trace_path)).ok();
            writeln!(s, "limit      {}", path_str(&limit_path)).ok();
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(if t.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

fn file_label(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn cmd_classify(a: &FlowArgs, out: &mut dyn Write) -> Result<i32> {
    no_csv("classify", a.input.format)?;
    let (mu, _) = a.input.load()?;
    let params = flow_params(a.input.crit_tol, &a.flow)?;
    let rep = criticality(&mu, params.crit_tol)?;
    let (ty, via_flow, converged) = match rep.critical_type(DEFAULT_TYPE_TOL) {
        Some(t) => (Some(t), false, true),
        None => {
            let t = flow(&mu, &params)?;
            (t.stratum, true, t.converged)
        }
    };
    let value = ty.as_ref().map(critical_value);
    let text = match a.input.format {
        Format::Json => json_line(&json!({
            "is_critical": rep.is_critical,
            "residual": rep.residual,
            "F": rep.f_value,
            "type": ty.as_ref().map(|t| t.to_json()),
            "critical_value": value.as_ref().map(fraction_string),
            "via_flow": via_flow,
            "converged": converged,
        })),
        _ => {
            let mut s = String::new();
            writeln!(s, "critical        {}", rep.is_critical).ok();
            writeln!(s, "residual        {:e}", rep.residual).ok();
            writeln!(s, "F               {}", rep.f_value).ok();
            let what = if via_flow { "stratum" } else { "type" };
            writeln!(s, "{what:<15} {}", opt(ty.as_ref())).ok();
            writeln!(
                s,
                "critical value  {}",
                opt(value.as_ref().map(fraction_string))
            )
            .ok();
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(if converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

fn cmd_catalog(a: &CatalogArgs) -> Result<String> {
    no_csv("catalog", a.input.format)?;
    match a.action {
        CatalogAction::List => {
            let entries = listing();
            if a.input.format == Format::Json {
                return Ok(json_line(&serde_json::to_value(&entries)?));
            }
            let mut s = String::new();
            for e in entries {
                let flag = |x: Option<bool>, c: char| match x {
                    Some(true) => c,
                    Some(false) => '.',
                    None => '?',
                };
                writeln!(
                    s,
                    "{:<22} params {}  dim {:<2} {}{}{}",
                    e.name,
                    e.param_arity.map_or("*".into(), |k| k.to_string()),
                    opt(e.dim),
                    flag(e.flags.nilpotent, 'N'),
                    flag(e.flags.solvable, 'S'),
                    flag(e.flags.semisimple, 's'),
                )
                .ok();
            }
            Ok(s)
        }
        CatalogAction::Show => {
            let Some(name) = &a.input.catalog else {
                return Err(Error::Parse("`catalog show` needs --catalog".into()));
            };
            let params = parse_params(a.input.params.as_deref().unwrap_or(""))?;
            let e = resolve(name, &params, a.input.dim, a.input.seed)?;
            if a.input.format == Format::Json {
                return Ok(tensor_to_string(&e.tensor) + "\n");
            }
            let mut s = String::new();
            writeln!(s, "{name}").ok();
            writeln!(s, "expected type  {}", opt(e.expected_type.as_ref())).ok();
            writeln!(
                s,
                "expected F     {}",
                opt(e.expected_f.as_ref().map(fraction_string))
            )
            .ok();
            if let Some(note) = &e.note {
                writeln!(s, "note           {note}").ok();
            }
            for x in TensorJson::from(&e.tensor).entries {
                writeln!(
                    s,
                    "  [x{}, x{}] += ({} + {}i) x{}",
                    x.i, x.j, x.re, x.im, x.k
                )
                .ok();
            }
            Ok(s)
        }
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    no_csv("verify", a.format)?;
    let opts = VerifyOptions {
        flow: flow_params(a.crit_tol, &a.flow)?,
        seed: a.seed,
    };
    let results = verify::run(a.only.as_deref(), &opts)?;
    let all = results.iter().all(|r| r.passed);
    if a.format == Format::Json {
        out.write_all(json_line(&serde_json::to_value(&results)?).as_bytes())?;
    } else {
        for r in &results {
            writeln!(out, "{}", r.line())?;
            for f in &r.failures {
                writeln!(out, "      {f}")?;
            }
        }
        let passed = results.iter().filter(|r| r.passed).count();
        writeln!(out, "{passed}/{} criteria passed", results.len())?;
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY })
}

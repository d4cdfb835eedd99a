//! Argument handling and command dispatch for the `orthograph` binary.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use orthograph::limits::LIMITS_ENV;
use orthograph::verify::{Status, Suite, Verifier, VerifyOptions};
use orthograph::witness::{
    annihilating_complement, connect, orthogonal_witness, path_to_scalar, OrthoPath,
};
use orthograph::{
    parse_element, parse_matrix, parse_ring_spec, predict, Execution, ExportFormat, GraphHandle,
    Limits, Matrix, Ring,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "orthograph",
    version,
    about = "Orthogonality graphs of matrix rings over finite commutative rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, zero-divisors and units of R
    Info(Common),
    /// Diameter and radius predicted from the ring alone
    Predict(Common),
    /// Exhaustive diameter, radius and component analysis of O(M_n(R))
    Analyze(Common),
    /// Annihilating complement of --matrix, or C = cB when --c is given
    Witness(Common),
    /// Path from --matrix to a scalar vertex, or to --matrix-b
    Path(Common),
    /// Graph distance from --matrix to --matrix-b, or to the scalar vertices
    Distance(Common),
    /// Whole graph as DOT (default) or JSON
    Export(Common),
    /// Check the structural properties of O(M_n(R))
    Verify(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Ring, e.g. Z6, "Z2[x]/(x^2)", "Z2 x Z3"
    #[arg(long)]
    ring: String,
    /// Matrix size
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Matrix literal: rows separated by ';', entries by ','
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long = "matrix-b")]
    matrix_b: Option<String>,
    /// Ring element
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    dot: bool,
    /// singular-det, complement, scalar-distance, diameter, radius, radius-bounds or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Cap on |R|^(n^2), the number of candidate matrices scanned
    #[arg(long = "max-vertices")]
    max_vertices: Option<u64>,
    /// Worker threads; 1 runs everything sequentially
    #[arg(long)]
    threads: Option<usize>,
}

/// Usage problems exit with 2, failed checks with 1.
enum Failure {
    Usage(String),
    Failed(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Context {
    ring: Ring,
    n: usize,
    limits: Limits,
    exec: Execution,
}

impl Context {
    fn new(args: &Common) -> Result<Self, Failure> {
        let mut limits = Limits::from_env().map_err(|e| Failure::Usage(format!("{LIMITS_ENV}: {e}")))?;
        if let Some(cap) = args.max_vertices {
            limits.max_candidates = cap;
        }
        let exec = match args.threads {
            Some(0) => return Err(Failure::Usage("--threads must be at least 1".into())),
            Some(1) => Execution::Sequential,
            Some(t) => {
                configure_threads(t);
                Execution::Parallel
            }
            None => Execution::default(),
        };
        if args.n == 0 {
            return Err(Failure::Usage("--n must be at least 1".into()));
        }
        let spec = parse_ring_spec(&args.ring)?;
        let ring = Ring::build_with(&spec, &limits)?;
        Ok(Context {
            ring,
            n: args.n,
            limits,
            exec,
        })
    }

    fn matrix(&self, text: Option<&String>, flag: &str) -> Result<Matrix, Failure> {
        let text = text.ok_or_else(|| Failure::Usage(format!("{flag} is required")))?;
        Ok(parse_matrix(text, &self.ring, self.n)?)
    }

    fn graph(&self) -> Result<GraphHandle, Failure> {
        Ok(GraphHandle::with_options(&self.ring, self.n, self.limits, self.exec)?)
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) {
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: usize) {}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit code and the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(text) => (EXIT_OK, text),
        Err(Failure::Usage(msg)) => (EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Failed(text)) => (EXIT_FAILED, text),
    }
}

fn dispatch(command: Command) -> Result<String, Failure> {
    match command {
        Command::Info(a) => info(&a),
        Command::Predict(a) => predict_cmd(&a),
        Command::Analyze(a) => analyze(&a),
        Command::Witness(a) => witness(&a),
        Command::Path(a) => path(&a),
        Command::Distance(a) => distance(&a),
        Command::Export(a) => export(&a),
        Command::Verify(a) => verify(&a),
    }
}

fn line(text: impl Into<String>) -> String {
    let mut s = text.into();
    s.push('\n');
    s
}

fn info(args: &Common) -> Result<String, Failure> {
    let ctx = Context::new(args)?;
    let r = &ctx.ring;
    let zds: Vec<String> = r.zero_divisors().into_iter().map(|a| r.format_element(a)).collect();
    let units = r.units().len();
    if args.json {
        let v = json!({
            "ring": r.to_string(),
            "order": r.order(),
            "zero_divisors": zds,
            "units": units,
        });
        return Ok(line(v.to_string()));
    }
    Ok(format!(
        "ring: {r}\norder: {}\nzero-divisors ({}): {}\nunits: {units}\n",
        r.order(),
        zds.len(),
        zds.join(", ")
    ))
}

fn predict_cmd(args: &Common) -> Result<String, Failure> {
    let ctx = Context::new(args)?;
    let p = predict(&ctx.ring, ctx.n)?;
    Ok(line(if args.json { p.to_json() } else { p.summary() }))
}

fn analyze(args: &Common) -> Result<String, Failure> {
    let ctx = Context::new(args)?;
    let g = ctx.graph()?;
    if g.vertex_count() > ctx.limits.adjacency_cache {
        return Err(Failure::Usage(format!(
            "{} vertices exceed the analysis limit {}; try {LIMITS_ENV}=large",
            g.vertex_count(),
            ctx.limits.adjacency_cache
        )));
    }
    let report = g.analyze();
    Ok(line(if args.json {
        serde_json::to_string(&report)?
    } else {
        report.to_string()
    }))
}

fn witness(args: &Common) -> Result<String, Failure> {
    let ctx = Context::new(args)?;
    let r = &ctx.ring;
    let a = ctx.matrix(args.matrix.as_ref(), "--matrix")?;
    let det = a.determinant()?;
    if let Some(c) = &args.c {
        let c = parse_element(r, c)?;
        let w = orthogonal_witness(&a, c)?;
        let checks = [
            ("C != 0", !w.is_zero()),
            ("AC = 0", a.mul(&w)?.is_zero()),
            ("CA = 0", w.mul(&a)?.is_zero()),
        ];
        return report_witness(args, &a, &w, &format!("c={}", r.format_element(c)), &checks);
    }
    let c = r
        .nonzero_elements()
        .find(|&c| r.mul(c, det) == r.zero())
        .ok_or_else(|| {
            Failure::Usage(format!(
                "det A = {} is not a zero-divisor; A has no annihilating complement",
                r.format_element(det)
            ))
        })?;
    let ideal = r.annihilator(c);
    let b = annihilating_complement(&a, &ideal)?;
    let checks = [
        ("B not in M_n(I)", !b.in_matrix_ideal(&ideal)?),
        ("AB in M_n(I)", a.mul(&b)?.in_matrix_ideal(&ideal)?),
        ("BA in M_n(I)", b.mul(&a)?.in_matrix_ideal(&ideal)?),
    ];
    report_witness(args, &a, &b, &format!("I=Ann({})={ideal}", r.format_element(c)), &checks)
}

fn report_witness(
    args: &Common,
    a: &Matrix,
    w: &Matrix,
    context: &str,
    checks: &[(&str, bool)],
) -> Result<String, Failure> {
    let text = if args.json {
        let checks: serde_json::Map<String, serde_json::Value> =
            checks.iter().map(|&(k, v)| (k.to_string(), v.into())).collect();
        line(
            json!({
                "matrix": a.literal(),
                "witness": w.literal(),
                "context": context,
                "checks": checks,
            })
            .to_string(),
        )
    } else {
        let mut s = format!("A = {}\n{context}\nwitness = {}\n", a.literal(), w.literal());
        for (name, ok) in checks {
            s += &format!("{name}: {}\n", if *ok { "ok" } else { "VIOLATED" });
        }
        s
    };
    if checks.iter().all(|c| c.1) {
        Ok(text)
    } else {
        Err(Failure::Failed(text))
    }
}

fn path(args: &Common) -> Result<String, Failure> {
    let ctx = Context::new(args)?;
    let a = ctx.matrix(args.matrix.as_ref(), "--matrix")?;
    let p: OrthoPath = match &args.matrix_b {
        Some(_) => connect(&a, &ctx.matrix(args.matrix_b.as_ref(), "--matrix-b")?)?,
        None => path_to_scalar(&a)?,
    };
    p.validate()?;
    let literals: Vec<String> = p.vertices().iter().map(Matrix::literal).collect();
    Ok(if args.json {
        line(json!({ "length": p.len(), "vertices": literals }).to_string())
    } else {
        literals.join("\n") + "\n"
    })
}

fn distance(args: &Common) -> Result<String, Failure> {
    let ctx = Context::new(args)?;
    let a = ctx.matrix(args.matrix.as_ref(), "--matrix")?;
    let g = ctx.graph()?;
    let d = match &args.matrix_b {
        Some(_) => g.distance(&a, &ctx.matrix(args.matrix_b.as_ref(), "--matrix-b")?)?,
        None => g.distance_to_scalars(&a)?,
    };
    Ok(line(if args.json {
        json!({ "distance": serde_json::to_value(d)? }).to_string()
    } else {
        d.to_string()
    }))
}

fn export(args: &Common) -> Result<String, Failure> {
    if args.json && args.dot {
        return Err(Failure::Usage("--json and --dot are exclusive".into()));
    }
    let ctx = Context::new(args)?;
    let format = if args.json {
        ExportFormat::Json
    } else {
        ExportFormat::Dot
    };
    Ok(ctx.graph()?.export(format)?)
}

fn verify(args: &Common) -> Result<String, Failure> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(&args.suite)
            .ok_or_else(|| Failure::Usage(format!("unknown suite {:?}", args.suite)))?]
    };
    let ctx = Context::new(args)?;
    let opts = VerifyOptions {
        limits: ctx.limits,
        exec: ctx.exec,
        ..VerifyOptions::default()
    };
    let verifier = Verifier::new(&ctx.ring, ctx.n, opts);
    let outcomes: Vec<_> = suites.into_iter().map(|s| verifier.run(s)).collect();
    let failed = outcomes.iter().any(|o| o.status == Status::Fail);
    let text = if args.json {
        let rows: Vec<_> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "suite": o.suite.name(),
                    "status": format!("{:?}", o.status).to_lowercase(),
                    "detail": o.detail,
                })
            })
            .collect();
        line(json!({ "ring": ctx.ring.to_string(), "n": ctx.n, "suites": rows }).to_string())
    } else {
        outcomes.iter().map(|o| format!("{o}\n")).collect()
    };
    if failed {
        Err(Failure::Failed(text))
    } else {
        Ok(text)
    }
}

//! Argument parsing and subcommand dispatch.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use hhsg_core::algebra::FinDimAlgebra;
use hhsg_core::field::{Field, PrimeField, Rationals};
use hhsg_core::hochschild::hh_dims;
use hhsg_core::hypersurface::{self, compare_singularities, Fingerprint, HypersurfaceError, Verdict};
use hhsg_core::mfactor::{mf_hom_cohomology, MfError};
use hhsg_core::polyring::{MonomialOrder, MultiPoly, OrderKind, PolyRing};
use hhsg_core::tate::{
    bar_resolution, degree_zero_algebra, hhsg_dim, hhsg_product, normalized_bar_resolution,
    syzygy_identification_check, ClassSpace, FreeResolution, StabilizationTrace, StabilizationVerdict, TateError,
};

use crate::formats::{self, FormatError};
use crate::report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "hhsg", version, about = "Hochschild and singular Hochschild cohomology, exactly")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct ConfigArgs {
    /// `rational`, or a prime `p` (also accepted: `GF(p)`, `prime(p)`).
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    /// Inclusive degree window `lo..hi`.
    #[arg(long, global = true, default_value = "-3..5", allow_hyphen_values = true)]
    pub degrees: String,
    #[arg(long, global = true, default_value_t = 8)]
    pub qmax: usize,
    #[arg(long = "depth-cap", global = true, default_value_t = hhsg_core::tate::DEFAULT_DEPTH_CAP)]
    pub depth_cap: usize,
    /// Largest vector space built, in coordinates.
    #[arg(long, global = true, default_value_t = hhsg_core::hochschild::DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
    Glex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum BarKind {
    Full,
    Normalized,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    pub poly: String,
    /// Comma-separated variables; inferred and sorted when omitted.
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(Args, Debug)]
pub struct SourceArgs {
    /// Algebra file; its bar resolution is used.
    #[arg(long, conflicts_with = "resolution", required_unless_present = "resolution")]
    pub algebra: Option<PathBuf>,
    /// Resolution file.
    #[arg(long)]
    pub resolution: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BarKind::Full)]
    pub bar: BarKind,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Milnor and Tyurina data of an isolated hypersurface singularity.
    Milnor(PolyArgs),
    /// Tyurina algebra.
    Tyurina(PolyArgs),
    /// Isomorphism invariants of the Tyurina algebra.
    Fingerprint(PolyArgs),
    /// Compare the fingerprints of two singularities.
    Compare {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Stable cohomology of the Koszul complex K(M, Q) over the degree window.
    HypHh(PolyArgs),
    /// Hochschild cohomology from the bar complex.
    Hh {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Singular Hochschild cohomology over the degree window.
    HhSg(SourceArgs),
    /// Products of basis classes of two degrees.
    HhSgProduct {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, allow_hyphen_values = true)]
        left: i64,
        #[arg(long, allow_hyphen_values = true)]
        right: i64,
    },
    /// Compare the truncated resolution with the syzygy it should resolve.
    SyzygyCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, value_enum, default_value_t = BarKind::Full)]
        bar: BarKind,
    },
    /// Cohomology of the morphism complex of two matrix factorizations.
    MfHom {
        #[arg(long)]
        left: PathBuf,
        /// Defaults to the left factorization.
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// Check an algebra, resolution or matrix factorization file.
    Validate {
        #[arg(long, group = "file")]
        algebra: Option<PathBuf>,
        #[arg(long, group = "file")]
        resolution: Option<PathBuf>,
        #[arg(long, group = "file")]
        mf: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldChoice {
    Rational,
    Prime(PrimeField),
}

impl FieldChoice {
    pub fn parse(s: &str) -> Result<Self, String> {
        let t = s.trim();
        match t {
            "rational" | "rationals" | "Q" | "QQ" => return Ok(FieldChoice::Rational),
            _ => {}
        }
        let inner = t
            .strip_prefix("GF(")
            .or_else(|| t.strip_prefix("prime("))
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let p: u64 = inner.parse().map_err(|_| format!("unknown field {:?}", s))?;
        PrimeField::new(p).map(FieldChoice::Prime).map_err(|e| e.to_string())
    }

    pub fn name(&self) -> String {
        match self {
            FieldChoice::Rational => Rationals.name(),
            FieldChoice::Prime(f) => f.name(),
        }
    }
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldChoice,
    pub order: OrderKind,
    pub window: (i64, i64),
    pub q_max: usize,
    pub depth_cap: usize,
    pub budget: usize,
    pub format: Format,
    pub threads: usize,
}

pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("degree window {:?} is not lo..hi", s))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad degree {:?}", a))?;
    let hi: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad degree {:?}", b))?;
    if lo > hi {
        return Err(format!("degree window {}..{} is empty", lo, hi));
    }
    Ok((lo, hi))
}

impl RunConfig {
    pub fn from_args(a: &ConfigArgs) -> Result<Self, String> {
        if a.budget == 0 {
            return Err("budget must be positive".into());
        }
        if a.threads == 0 {
            return Err("threads must be positive".into());
        }
        Ok(RunConfig {
            field: FieldChoice::parse(&a.field)?,
            order: match a.order {
                OrderArg::Grevlex => OrderKind::Grevlex,
                OrderArg::Lex => OrderKind::Lex,
                OrderArg::Glex => OrderKind::GradedLex,
            },
            window: parse_window(&a.degrees)?,
            q_max: a.qmax,
            depth_cap: a.depth_cap,
            budget: a.budget,
            format: match a.format {
                FormatArg::Json => Format::Json,
                FormatArg::Tsv => Format::Tsv,
            },
            threads: a.threads,
        })
    }
}

/// Why a run stopped without a full report.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit status 2.
    Usage(String),
    /// A mathematical precondition failed: exit status 1.
    Failure(String),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<HypersurfaceError> for CliError {
    fn from(e: HypersurfaceError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<TateError> for CliError {
    fn from(e: TateError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<MfError> for CliError {
    fn from(e: MfError) -> Self {
        CliError::Failure(e.to_string())
    }
}

/// Exit status, standard output and standard error of one invocation.
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let cfg = match RunConfig::from_args(&cli.config) {
        Ok(c) => c,
        Err(m) => return Outcome { status: 2, stdout: String::new(), stderr: format!("error: {}\n", m) },
    };
    let mut stderr = String::new();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build() {
        Ok(p) => p,
        Err(e) => return Outcome { status: 2, stdout: String::new(), stderr: format!("error: {}\n", e) },
    };
    let result = pool.install(|| match &cfg.field {
        FieldChoice::Rational => execute(&Rationals, &cli.command, &cfg),
        FieldChoice::Prime(p) => {
            stderr.push_str(&format!(
                "warning: working over {}; Milnor and Tyurina numbers and the stable cohomology may differ from characteristic 0\n",
                p.name()
            ));
            execute(p, &cli.command, &cfg)
        }
    });
    match result {
        Ok((report, ok)) => Outcome { status: if ok { 0 } else { 1 }, stdout: report.render(cfg.format), stderr },
        Err(CliError::Usage(m)) => {
            stderr.push_str(&format!("error: {}\n", m));
            Outcome { status: 2, stdout: String::new(), stderr }
        }
        Err(CliError::Failure(m)) => {
            stderr.push_str(&format!("failure: {}\n", m));
            Outcome { status: 1, stdout: String::new(), stderr }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e)))
}

fn infer_vars(text: &str) -> Vec<String> {
    let mut vars = BTreeSet::new();
    let mut cur = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphabetic() || c == '_' || (!cur.is_empty() && c.is_ascii_digit()) {
            cur.push(c);
        } else if !cur.is_empty() {
            vars.insert(std::mem::take(&mut cur));
        }
    }
    vars.into_iter().collect()
}

fn var_list(explicit: &Option<String>, polys: &[&str]) -> Vec<String> {
    match explicit {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => {
            let mut all = BTreeSet::new();
            for p in polys {
                all.extend(infer_vars(p));
            }
            all.into_iter().collect()
        }
    }
}

fn parse_poly<F: Field>(ring: &PolyRing<F>, text: &str) -> Result<MultiPoly<F::Elem>, CliError> {
    ring.parse(text).map_err(|e| CliError::Usage(format!("{:?}: {}", text, e)))
}

fn elem<F: Field>(f: &F, x: &F::Elem) -> Value {
    Value::String(format!("{}", f.display(x)))
}

fn monomials<F: Field>(ring: &PolyRing<F>, basis: &[Vec<u32>]) -> Value {
    Value::Array(basis.iter().map(|e| Value::String(ring.format_monomial(e))).collect())
}

fn fingerprint_json(fp: &Fingerprint) -> Value {
    json!({
        "tau": fp.tau,
        "hilbert": fp.hilbert,
        "socle_dim": fp.socle_dim,
        "dim_mod_rad_sq": fp.dim_mod_rad_sq,
    })
}

fn two_periodic(dims: &[(i64, Option<usize>)]) -> Value {
    let known: std::collections::BTreeMap<i64, usize> = dims.iter().filter_map(|(n, d)| d.map(|d| (*n, d))).collect();
    if known.len() != dims.len() {
        return Value::Null;
    }
    Value::Bool(known.iter().all(|(n, d)| known.get(&(n + 2)).is_none_or(|e| e == d)))
}

fn execute<F: Field>(field: &F, cmd: &Command, cfg: &RunConfig) -> Result<(Report, bool), CliError> {
    match cmd {
        Command::Milnor(p) | Command::Tyurina(p) | Command::Fingerprint(p) | Command::HypHh(p) => {
            let vars = var_list(&p.vars, &[&p.poly]);
            let ring = PolyRing::new(field.clone(), vars.clone());
            let q = parse_poly(&ring, &p.poly)?;
            let order = MonomialOrder::new(cfg.order, ring.nvars());
            let name = match cmd {
                Command::Milnor(_) => "milnor",
                Command::Tyurina(_) => "tyurina",
                Command::Fingerprint(_) => "fingerprint",
                _ => "hyp-hh",
            };
            let mut r = Report::new(name);
            r.set("field", field.name());
            r.set("vars", vars);
            r.set("poly", ring.format(&q, &order));
            poly_command(&mut r, &ring, &q, &order, cmd, cfg)?;
            Ok((r, true))
        }
        Command::Compare { left, right, vars } => {
            let vars = var_list(vars, &[left, right]);
            let ring = PolyRing::new(field.clone(), vars.clone());
            let (a, b) = (parse_poly(&ring, left)?, parse_poly(&ring, right)?);
            let order = MonomialOrder::new(cfg.order, ring.nvars());
            let (verdict, fa, fb) = compare_singularities(&ring, &a, &ring, &b, &order)?;
            let mut r = Report::new("compare");
            r.set("field", field.name());
            r.set("vars", vars);
            r.set("left", ring.format(&a, &order));
            r.set("right", ring.format(&b, &order));
            r.set(
                "verdict",
                match verdict {
                    Verdict::Distinct => "distinct",
                    Verdict::FingerprintEqual => "fingerprint-equal",
                },
            );
            r.set("left_fingerprint", fingerprint_json(&fa));
            r.set("right_fingerprint", fingerprint_json(&fb));
            Ok((r, true))
        }
        Command::Hh { algebra } => {
            let a = load_algebra(field, algebra)?;
            let (lo, hi) = cfg.window;
            let mut r = Report::new("hh");
            r.set("field", field.name());
            r.set("algebra", algebra.display().to_string());
            r.set("algebra_dim", a.dim());
            r.columns(&["n", "dim"]);
            if hi >= 0 {
                let dims = hh_dims(&a, hi as usize, cfg.budget).map_err(|e| CliError::Failure(e.to_string()))?;
                for (n, d) in dims.range(lo.max(0)..=hi) {
                    r.row(vec![json!(n), json!(d)]);
                }
            }
            Ok((r, true))
        }
        Command::HhSg(src) => hh_sg(field, src, cfg),
        Command::HhSgProduct { source, left, right } => hh_sg_product(field, source, *left, *right, cfg),
        Command::SyzygyCheck { algebra, q, bar } => {
            let a = load_algebra(field, algebra)?;
            let src = Source::Bar { algebra: a, kind: *bar, budget: cfg.budget };
            let res = src.resolution(q + 2)?;
            let rep = syzygy_identification_check(&res, *q)?;
            let mut r = Report::new("syzygy-check");
            r.set("field", field.name());
            r.set("algebra", algebra.display().to_string());
            r.set("resolution", res.provenance().name());
            r.set("length", res.length());
            r.set("q", rep.q);
            let hom: serde_json::Map<String, Value> = rep.homology.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            r.set("homology", Value::Object(hom));
            r.set("syzygy_dim", rep.syzygy_dim);
            r.set("concentrated", rep.concentrated);
            r.set("matches", rep.matches);
            Ok((r, rep.matches))
        }
        Command::MfHom { left, right } => {
            let e = formats::parse_mf(field, &read(left)?)?.build()?;
            let f = match right {
                Some(p) => formats::parse_mf(field, &read(p)?)?.build()?,
                None => e.clone(),
            };
            let (even, odd) = mf_hom_cohomology(&e, &f)?;
            let order = MonomialOrder::new(cfg.order, e.ring().nvars());
            let mut r = Report::new("mf-hom");
            r.set("field", field.name());
            r.set("left", left.display().to_string());
            r.set("right", right.as_ref().unwrap_or(left).display().to_string());
            r.set("potential", e.ring().format(e.potential(), &order));
            r.set("left_size", e.size());
            r.set("right_size", f.size());
            r.set("route", if e.ring().nvars() == 1 { "univariate-elimination" } else { "module-groebner" });
            r.set("even_dim", even);
            r.set("odd_dim", odd);
            Ok((r, true))
        }
        Command::Validate { algebra, resolution, mf } => validate(field, algebra, resolution, mf),
    }
}

fn poly_command<F: Field>(
    r: &mut Report,
    ring: &PolyRing<F>,
    q: &MultiPoly<F::Elem>,
    order: &MonomialOrder,
    cmd: &Command,
    cfg: &RunConfig,
) -> Result<(), CliError> {
    let f = ring.field();
    match cmd {
        Command::Milnor(_) => {
            let rep = hypersurface::analyze(ring, q, order)?;
            r.set("milnor_number", rep.milnor_number);
            r.set("milnor_number_global", rep.milnor_number_global);
            r.set("tyurina_number", rep.tyurina_number);
            r.set("stable_even_dim", rep.stable_even_dim);
            r.set("stable_odd_dim", rep.stable_odd_dim);
            r.set("q_action_rank", rep.q_action_rank);
            r.set(
                "quasi_homogeneous",
                match &rep.quasi_homogeneous {
                    Some(w) => Value::Array(w.iter().map(|x| elem(f, x)).collect()),
                    None => Value::Null,
                },
            );
            r.set("milnor_basis", monomials(ring, rep.milnor_algebra.monomial_basis()));
            r.set("tyurina_basis", monomials(ring, rep.tyurina_algebra.monomial_basis()));
        }
        Command::Tyurina(_) => {
            let t = hypersurface::tyurina_algebra(ring, q, order)?;
            r.set("tyurina_number", t.dim());
            r.set("tyurina_basis", monomials(ring, t.monomial_basis()));
        }
        Command::Fingerprint(_) => {
            let fp = hypersurface::fingerprint(ring, q, order)?;
            if let Value::Object(m) = fingerprint_json(&fp) {
                for (k, v) in m {
                    r.set(&k, v);
                }
            }
        }
        _ => {
            let m = hypersurface::milnor_algebra(ring, q, order)?;
            let t = hypersurface::tyurina_algebra(ring, q, order)?;
            let dims = hypersurface::stable_hh_dims(ring, q, order, cfg.window)?;
            r.set("milnor_number", m.mu);
            r.set("tyurina_number", t.dim());
            let pairs: Vec<(i64, Option<usize>)> = dims.iter().map(|(n, d)| (*n, Some(*d))).collect();
            r.set("two_periodic", two_periodic(&pairs));
            r.columns(&["n", "dim"]);
            for (n, d) in dims {
                r.row(vec![json!(n), json!(d)]);
            }
        }
    }
    Ok(())
}

fn load_algebra<F: Field>(field: &F, path: &Path) -> Result<FinDimAlgebra<F>, CliError> {
    let a = formats::parse_algebra_unchecked(field, &read(path)?)?;
    FinDimAlgebra::new(a.field().clone(), a.labels().to_vec(), a.structure().to_vec(), a.unit().to_vec())
        .map_err(|e| CliError::Failure(format!("{}: {}", path.display(), e)))
}

enum Source<F: Field> {
    Bar { algebra: FinDimAlgebra<F>, kind: BarKind, budget: usize },
    Loaded { base: FreeResolution<F>, period: Option<usize> },
}

impl<F: Field> Source<F> {
    fn open(field: &F, args: &SourceArgs, cfg: &RunConfig) -> Result<(Self, String), CliError> {
        if let Some(path) = &args.resolution {
            let dir = path.parent().unwrap_or(Path::new("."));
            let spec = formats::parse_resolution(field, &read(path)?, dir)?;
            let base = spec
                .build()
                .map_err(|e| CliError::Failure(format!("{}: {}", path.display(), e)))?
                .with_budget(cfg.budget);
            Ok((Source::Loaded { base, period: spec.period }, path.display().to_string()))
        } else {
            let path = args.algebra.as_ref().expect("clap requires a source");
            let algebra = load_algebra(field, path)?;
            Ok((Source::Bar { algebra, kind: args.bar, budget: cfg.budget }, path.display().to_string()))
        }
    }

    fn initial_length(&self, window: (i64, i64)) -> usize {
        match self {
            Source::Bar { .. } => window.1.max(0) as usize + 4,
            Source::Loaded { base, .. } => base.length(),
        }
    }

    fn resolution(&self, len: usize) -> Result<FreeResolution<F>, CliError> {
        match self {
            Source::Bar { algebra, kind: BarKind::Full, budget } => Ok(bar_resolution(algebra, len, *budget)?),
            Source::Bar { algebra, kind: BarKind::Normalized, budget } => {
                Ok(normalized_bar_resolution(algebra, len, *budget)?)
            }
            Source::Loaded { base, period } => {
                if len <= base.length() {
                    return Ok(base.clone());
                }
                match period {
                    Some(p) => base.extend_periodic(*p, len).map_err(|e| CliError::Failure(e.to_string())),
                    None => Err(TateError::ResolutionTooShort { needed: len, have: base.length() }.into()),
                }
            }
        }
    }

    /// Runs `job`, lengthening the resolution whenever it reports that it is too short.
    fn with_resolution<T>(
        &self,
        mut len: usize,
        job: impl Fn(&FreeResolution<F>) -> Result<T, TateError>,
    ) -> Result<(FreeResolution<F>, T), CliError> {
        loop {
            let res = self.resolution(len)?;
            match job(&res) {
                Ok(t) => return Ok((res, t)),
                Err(TateError::ResolutionTooShort { needed, .. }) if needed > len => len = needed,
                Err(e) => return Err(e.into()),
            }
        }
    }
}

fn traces<F: Field>(res: &FreeResolution<F>, degrees: &[i64], q_max: usize) -> Result<Vec<StabilizationTrace>, TateError> {
    let results: Vec<Result<StabilizationTrace, TateError>> =
        degrees.par_iter().map(|&n| hhsg_dim(res, n, q_max)).collect();
    let needed = results
        .iter()
        .filter_map(|r| match r {
            Err(TateError::ResolutionTooShort { needed, .. }) => Some(*needed),
            _ => None,
        })
        .max();
    if let Some(needed) = needed {
        return Err(TateError::ResolutionTooShort { needed, have: res.length() });
    }
    results.into_iter().collect()
}

fn trace_json(t: &StabilizationTrace) -> Value {
    Value::Array(t.entries.iter().map(|e| json!({ "q": e.q, "dim": e.dim, "map_rank": e.map_rank })).collect())
}

fn hh_sg<F: Field>(field: &F, args: &SourceArgs, cfg: &RunConfig) -> Result<(Report, bool), CliError> {
    let (src, name) = Source::open(field, args, cfg)?;
    let degrees: Vec<i64> = (cfg.window.0..=cfg.window.1).collect();
    let (res, ts) = src.with_resolution(src.initial_length(cfg.window), |res| traces(res, &degrees, cfg.q_max))?;
    let mut r = Report::new("hh-sg");
    r.set("field", field.name());
    r.set("source", name);
    r.set("resolution", res.provenance().name());
    r.set("length", res.length());
    r.set("qmax", cfg.q_max);
    let dims: Vec<(i64, Option<usize>)> = ts.iter().map(|t| (t.n, t.dimension())).collect();
    r.set("two_periodic", two_periodic(&dims));
    r.columns(&["n", "dim", "q0", "status", "trace"]);
    let mut ok = true;
    for t in &ts {
        let (dim, q0, status) = match t.verdict {
            StabilizationVerdict::Stabilized { q0, dim } => (json!(dim), json!(q0), "stabilized"),
            StabilizationVerdict::Inconclusive { .. } => {
                ok = false;
                (Value::Null, Value::Null, "inconclusive")
            }
        };
        r.row(vec![json!(t.n), dim, q0, json!(status), trace_json(t)]);
    }
    Ok((r, ok))
}

fn hh_sg_product<F: Field>(
    field: &F,
    args: &SourceArgs,
    left: i64,
    right: i64,
    cfg: &RunConfig,
) -> Result<(Report, bool), CliError> {
    let (src, name) = Source::open(field, args, cfg)?;
    let total = left + right;
    let degrees: Vec<i64> = BTreeSet::from([left, right, total]).into_iter().collect();
    let window = (*degrees.first().expect("nonempty"), *degrees.last().expect("nonempty"));
    let (_, ts) = src.with_resolution(src.initial_length(window), |res| traces(res, &degrees, cfg.q_max))?;
    let mut r = Report::new("hh-sg-product");
    r.set("field", field.name());
    r.set("source", name);
    r.set("left", left);
    r.set("right", right);
    let q0 = |n: i64| {
        ts.iter().find(|t| t.n == n).and_then(|t| match t.verdict {
            StabilizationVerdict::Stabilized { q0, .. } => Some(q0),
            StabilizationVerdict::Inconclusive { .. } => None,
        })
    };
    let (Some(ql), Some(qr), Some(qt)) = (q0(left), q0(right), q0(total)) else {
        r.set("status", "inconclusive");
        return Ok((r, false));
    };
    let cap = cfg.depth_cap.max(ql);
    let (res, (ldim, rdim, target_depth, table)) = src.with_resolution(src.initial_length(window), |res| {
        let ls = ClassSpace::new(res, left, ql)?;
        let rs = ClassSpace::new(res, right, qr)?;
        let mut products = Vec::new();
        for (i, f) in ls.basis().iter().enumerate() {
            for (j, g) in rs.basis().iter().enumerate() {
                products.push((i, j, hhsg_product(res, f, g, cap)?));
            }
        }
        let depth = products.iter().map(|(_, _, p)| p.depth()).max().unwrap_or(0).max(qt);
        let mut ts = ClassSpace::new(res, total, depth)?;
        let mut table = Vec::new();
        for (i, j, p) in &products {
            table.push((*i, *j, ts.coordinates(res, p)?));
        }
        Ok((ls.dim(), rs.dim(), depth, table))
    })?;
    r.set("status", "stabilized");
    r.set("left_dim", ldim);
    r.set("right_dim", rdim);
    r.set("product_depth", target_depth);
    if left == 0 && right == 0 {
        let (alg, _) = degree_zero_algebra(&res, ql, cap)?;
        let rad = alg.radical().map_err(|e| CliError::Failure(e.to_string()))?;
        r.set("degree_zero_dim", alg.dim());
        r.set("commutative", alg.is_commutative());
        r.set("radical_dim", rad.len());
        r.set("radical_square_dim", alg.product_span(&rad, &rad).len());
        r.set("unit", Value::Array(alg.unit().iter().map(|x| elem(field, x)).collect()));
    }
    r.columns(&["i", "j", "coordinates"]);
    for (i, j, c) in table {
        r.row(vec![json!(i), json!(j), Value::Array(c.iter().map(|x| elem(field, x)).collect())]);
    }
    Ok((r, true))
}

fn validate<F: Field>(
    field: &F,
    algebra: &Option<PathBuf>,
    resolution: &Option<PathBuf>,
    mf: &Option<PathBuf>,
) -> Result<(Report, bool), CliError> {
    let mut r = Report::new("validate");
    r.set("field", field.name());
    let errors: Vec<String> = if let Some(path) = algebra {
        r.set("kind", "algebra");
        r.set("path", path.display().to_string());
        let a = formats::parse_algebra_unchecked(field, &read(path)?)?;
        r.set("dim", a.dim());
        let mut errs = Vec::new();
        if let Err(e) = a.check_unit() {
            errs.push(e.to_string());
        }
        if let Err(e) = a.check_associative() {
            errs.push(e.to_string());
        }
        r.set("commutative", errs.is_empty() && a.is_commutative());
        errs
    } else if let Some(path) = resolution {
        r.set("kind", "resolution");
        r.set("path", path.display().to_string());
        let dir = path.parent().unwrap_or(Path::new("."));
        let spec = formats::parse_resolution(field, &read(path)?, dir)?;
        r.set("algebra_dim", spec.algebra.dim());
        r.set("ranks", spec.ranks.clone());
        r.set("period", spec.period);
        match spec.build() {
            Ok(res) => match spec.period {
                Some(p) => match res.extend_periodic(p, res.length() + p) {
                    Ok(_) => Vec::new(),
                    Err(e) => e.0.iter().map(|x| format!("periodic extension: {}", x)).collect(),
                },
                None => Vec::new(),
            },
            Err(e) => e.0.iter().map(|x| x.to_string()).collect(),
        }
    } else if let Some(path) = mf {
        r.set("kind", "matrix-factorization");
        r.set("path", path.display().to_string());
        let spec = formats::parse_mf(field, &read(path)?)?;
        r.set("size", spec.phi.len());
        r.set("potential", spec.ring.format(&spec.potential, &MonomialOrder::grevlex(spec.ring.nvars())));
        match spec.build() {
            Ok(_) => Vec::new(),
            Err(e) => vec![e.to_string()],
        }
    } else {
        return Err(CliError::Usage("validate needs --algebra, --resolution or --mf".into()));
    };
    let ok = errors.is_empty();
    r.set("valid", ok);
    r.set("errors", errors);
    Ok((r, ok))
}

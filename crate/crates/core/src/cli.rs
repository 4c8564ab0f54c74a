//! Command-line front end.
//!
//! Every numeric value goes through [`format_value`], so outputs are byte-stable across
//! runs and platforms. Sweep files are written to a temporary file in the target
//! directory and renamed into place.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bounds::{
    geometric_bound_closed_form, geometric_bound_direct, trivial_lower_bound, GeometricNoise,
    DEFAULT_TAIL_TOL,
};
use crate::entropy::{mutual_information, noise_pmf, BitsValue, MixingScheme, ModelParams};
use crate::error::{usage, Error, Result};
use crate::optimizers::{
    blu_search, blu_search_with, brute_force_optimal, greedy_search, BluEvaluator,
    DEFAULT_MAX_K_GUARD,
};
use crate::relaxation::{
    kkt_certificate, numeric_relaxation_solve, perturbation_bound_mi, relaxed_objective,
    renormalized_candidate,
};
use crate::schemes::{
    binary_mi_closed_form, scheme_mi, uniform_mi_closed_form, Method, SchemeName,
};

/// Truncation tail for the geometric pmf table.
pub const PMF_GEOMETRIC_TAIL: f64 = 1e-12;

/// Formats a value with 12 significant digits, keeping trailing zeros.
///
/// Zero prints as `0`. Decimal exponents below −5 or at least 12 switch to scientific
/// notation (`1.23456789012e-7`).
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if !(-5..12).contains(&exp) {
        return sci;
    }
    format!("{:.*}", (11 - exp) as usize, x)
}

/// Output table format for sweeps and pmf tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    /// Space-separated rows, no header.
    #[default]
    Dat,
    /// `p,value` header, CRLF line endings.
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Dat => "dat",
            Format::Csv => "csv",
        }
    }
}

/// Renders two-column rows in the given format.
pub fn render_table(header: (&str, &str), rows: &[(String, String)], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Dat => {
            for (a, b) in rows {
                let _ = writeln!(s, "{a} {b}");
            }
        }
        Format::Csv => {
            let _ = write!(s, "{},{}\r\n", header.0, header.1);
            for (a, b) in rows {
                let _ = write!(s, "{a},{b}\r\n");
            }
        }
    }
    s
}

/// Curves a sweep can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    Uniform,
    Binary,
    Linear,
    Blu,
    Greedy,
    Optimal,
    BoundGeometric,
    BoundTrivial,
}

impl Curve {
    pub const ALL: [Curve; 8] = [
        Curve::Uniform,
        Curve::Binary,
        Curve::Linear,
        Curve::Blu,
        Curve::Greedy,
        Curve::Optimal,
        Curve::BoundGeometric,
        Curve::BoundTrivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Curve::Uniform => "uniform",
            Curve::Binary => "binary",
            Curve::Linear => "linear",
            Curve::Blu => "blu",
            Curve::Greedy => "greedy",
            Curve::Optimal => "optimal",
            Curve::BoundGeometric => "bound_geometric",
            Curve::BoundTrivial => "bound_trivial",
        }
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Curve::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Curve::ALL.iter().map(|c| c.name()).collect();
                Error::Usage(format!("unknown curve '{s}' ({})", names.join("|")))
            })
    }
}

/// One point of a sweep curve. The sweep itself calls exactly this function.
pub fn curve_value(curve: Curve, params: &ModelParams) -> Result<BitsValue> {
    match curve {
        Curve::Uniform => uniform_mi_closed_form(params),
        Curve::Binary => binary_mi_closed_form(params),
        Curve::Linear => scheme_mi(SchemeName::Linear, params, Method::Direct),
        Curve::Blu => Ok(blu_search(params)?.mi),
        Curve::Greedy => Ok(greedy_search(params)?.mi),
        Curve::Optimal => Ok(brute_force_optimal(params, DEFAULT_MAX_K_GUARD)?.mi),
        Curve::BoundGeometric => geometric_bound_closed_form(params),
        Curve::BoundTrivial => trivial_lower_bound(params),
    }
}

/// A validated sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub k: usize,
    pub p_start: f64,
    pub p_end: f64,
    pub steps: usize,
    pub curves: Vec<Curve>,
    pub format: Format,
    pub out_dir: PathBuf,
}

/// One emitted row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub value: BitsValue,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return usage("K must be at least 1");
        }
        if !(0.0 <= self.p_start && self.p_start < self.p_end && self.p_end <= 0.5) {
            return usage(format!(
                "need 0 ≤ p-start < p-end ≤ 0.5, got {} and {}",
                self.p_start, self.p_end
            ));
        }
        if self.steps < 2 {
            return usage("steps must be at least 2");
        }
        if self.curves.is_empty() {
            return usage("no curves requested");
        }
        if self.curves.contains(&Curve::Optimal) && self.k > DEFAULT_MAX_K_GUARD {
            return usage(format!(
                "the optimal curve needs K ≤ {DEFAULT_MAX_K_GUARD}, got K = {}",
                self.k
            ));
        }
        Ok(())
    }

    /// Inclusive linear grid from `p_start` to `p_end`.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.p_end
                } else {
                    self.p_start + (self.p_end - self.p_start) * i as f64 / last as f64
                }
            })
            .collect()
    }

    pub fn file_name(&self, curve: Curve) -> String {
        format!("{}_K{}.{}", curve.name(), self.k, self.format.extension())
    }
}

/// Evaluates one curve over the grid, in parallel, returning rows in ascending `p`.
pub fn sweep_curve(spec: &SweepSpec, curve: Curve) -> Result<Vec<SweepRow>> {
    spec.grid()
        .into_par_iter()
        .map(|p| {
            let params = ModelParams::new(p, spec.k)?;
            Ok(SweepRow {
                p,
                value: curve_value(curve, &params)?,
            })
        })
        .collect()
}

pub fn render_rows(rows: &[SweepRow], format: Format) -> String {
    let cells: Vec<(String, String)> = rows
        .iter()
        .map(|r| (format_value(r.p), format_value(r.value.value())))
        .collect();
    render_table(("p", "value"), &cells, format)
}

fn write_atomically(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let io = |e: std::io::Error| Error::Internal(format!("writing {name}: {e}"));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    let path = dir.join(name);
    tmp.persist(&path).map_err(|e| io(e.error))?;
    Ok(path)
}

/// Runs a sweep and writes one file per curve; returns the written paths.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<PathBuf>> {
    spec.validate()?;
    let mut written = Vec::new();
    for &curve in &spec.curves {
        let rows = sweep_curve(spec, curve)?;
        let text = render_rows(&rows, spec.format);
        written.push(write_atomically(
            &spec.out_dir,
            &spec.file_name(curve),
            &text,
        )?);
    }
    Ok(written)
}

#[derive(Debug, Parser)]
#[command(
    name = "mixmin",
    version,
    about = "Mutual information of integer mixing schemes, bounds and optimizers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Point {
    /// Number of noise individuals.
    #[arg(long = "K")]
    k: usize,
    /// Bernoulli parameter, 0 ≤ p ≤ 0.5.
    #[arg(long)]
    p: f64,
}

impl Point {
    fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.p, self.k)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NameArg {
    Uniform,
    Binary,
    Linear,
    Blu,
    Greedy,
    Geometric,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Geometric,
    Trivial,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Direct,
    Recursion,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Direct => Method::Direct,
            MethodArg::Recursion => Method::Recursion,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mutual information of an explicit coefficient vector.
    Mi {
        /// Number of noise individuals; must match the vector when given.
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long)]
        p: f64,
        /// Coefficients α₀,α₁,…,α_K.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<u64>,
    },
    /// Mutual information of a named scheme.
    Scheme {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum)]
        name: NameArg,
        #[arg(long, value_enum, default_value = "direct")]
        method: MethodArg,
        /// Uniform block size of a BLU scheme; with --l, fixes the blocks instead of searching.
        #[arg(long)]
        u: Option<usize>,
        /// Linear block size of a BLU scheme.
        #[arg(long)]
        l: Option<usize>,
        /// Also print the coefficient vector.
        #[arg(long)]
        show_alpha: bool,
    },
    /// Greedy coefficient search.
    Greedy {
        #[command(flatten)]
        point: Point,
    },
    /// Exhaustive search over canonical schemes.
    Optimal {
        #[command(flatten)]
        point: Point,
        /// Largest K accepted.
        #[arg(long, default_value_t = DEFAULT_MAX_K_GUARD)]
        max_k: usize,
    },
    /// Lower bounds on the minimum mutual information.
    Bound {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value = "geometric")]
        kind: KindArg,
        /// closed or direct (truncated sum); geometric bound only.
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
        /// Tail tolerance of the truncated sum.
        #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
        tol: f64,
    },
    /// Best binary-linear-uniform scheme.
    Blu {
        #[command(flatten)]
        point: Point,
        /// recursion (default) or direct.
        #[arg(long, value_enum, default_value = "recursion")]
        method: MethodArg,
    },
    /// Pmf of the noise sum of a scheme, or of the geometric noise.
    Pmf {
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, conflicts_with = "alpha")]
        name: Option<NameArg>,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "dat")]
        format: Format,
    },
    /// Writes p-sweep tables, one file per curve.
    Sweep {
        #[arg(long = "K")]
        k: usize,
        #[arg(long = "p-start")]
        p_start: f64,
        #[arg(long = "p-end")]
        p_end: f64,
        #[arg(long)]
        steps: usize,
        /// Comma-separated: uniform,binary,linear,blu,greedy,optimal,bound_geometric,bound_trivial.
        #[arg(long, value_delimiter = ',', required = true)]
        curves: Vec<String>,
        #[arg(long, value_enum, default_value = "dat")]
        format: Format,
        #[arg(long = "out-dir", default_value = ".")]
        out_dir: PathBuf,
    },
    /// KKT certificate of the perturbed relaxation and the resulting bound.
    VerifyKkt {
        #[command(flatten)]
        point: Point,
        /// Truncation depth.
        #[arg(long)]
        n: usize,
        /// Largest acceptable stationarity residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also run the numeric solver on the unperturbed problem.
        #[arg(long)]
        solve: bool,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) => 2,
        _ => 1,
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("MIXMIN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // A pool that is already built (repeated calls in one process) is fine.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses `args` (including the program name) and runs the subcommand. Returns the
/// process exit status: 0 on success, 2 on usage errors, 1 on computation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    init_threads();
    match execute(cli.command) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "mixmin: {e}");
            exit_code(&e)
        }
    }
}

fn alpha_line(s: &MixingScheme) -> String {
    let parts: Vec<String> = s.alpha().iter().map(|a| a.to_string()).collect();
    parts.join(",")
}

fn scheme_for_name(name: NameArg, params: &ModelParams) -> Result<MixingScheme> {
    let k = params.k();
    match name {
        NameArg::Uniform => SchemeName::Uniform.scheme(k),
        NameArg::Binary => SchemeName::Binary.scheme(k),
        NameArg::Linear => SchemeName::Linear.scheme(k),
        NameArg::Blu => Ok(blu_search(params)?.scheme),
        NameArg::Greedy => Ok(greedy_search(params)?.scheme),
        NameArg::Geometric => usage("geometric is not a mixing scheme"),
    }
}

fn execute(command: Command) -> Result<String> {
    let mut s = String::new();
    match command {
        Command::Mi { k, p, alpha } => {
            let scheme = MixingScheme::new(alpha)?;
            if let Some(k) = k {
                if k != scheme.k() {
                    return usage(format!(
                        "--alpha has {} noise coefficients but --K is {k}",
                        scheme.k()
                    ));
                }
            }
            let params = ModelParams::new(p, scheme.k())?;
            let v = mutual_information(&scheme, &params)?;
            let _ = writeln!(s, "{}", format_value(v.value()));
        }
        Command::Scheme {
            point,
            name,
            method,
            u,
            l,
            show_alpha,
        } => {
            let params = point.params()?;
            params.require_noise()?;
            let named = match (name, u, l) {
                (NameArg::Uniform, None, None) => Some(SchemeName::Uniform),
                (NameArg::Binary, None, None) => Some(SchemeName::Binary),
                (NameArg::Linear, None, None) => Some(SchemeName::Linear),
                (NameArg::Blu, Some(u), Some(l)) => Some(SchemeName::Blu { u, l }),
                (NameArg::Blu, None, None) => None,
                (NameArg::Blu, _, _) => return usage("--u and --l must be given together"),
                (NameArg::Greedy | NameArg::Geometric, _, _) => {
                    return usage("scheme accepts uniform|binary|linear|blu")
                }
                (_, _, _) => return usage("--u/--l apply only to --name blu"),
            };
            let (scheme, v) = match named {
                Some(n) => (n.scheme(params.k())?, scheme_mi(n, &params, method.into())?),
                None => {
                    let evaluator = match method {
                        MethodArg::Direct => BluEvaluator::Direct,
                        MethodArg::Recursion => BluEvaluator::Recursion,
                        MethodArg::Closed => return usage("no closed form for the blu scheme"),
                    };
                    let r = blu_search_with(&params, evaluator)?;
                    (r.scheme, r.mi)
                }
            };
            if show_alpha {
                let _ = writeln!(s, "alpha {}", alpha_line(&scheme));
            }
            let _ = writeln!(s, "{}", format_value(v.value()));
        }
        Command::Greedy { point } => {
            let r = greedy_search(&point.params()?)?;
            let _ = writeln!(s, "alpha {}", alpha_line(&r.scheme));
            let _ = writeln!(s, "mi {}", format_value(r.mi.value()));
            let _ = writeln!(s, "nodes {}", r.nodes_explored);
        }
        Command::Optimal { point, max_k } => {
            let r = brute_force_optimal(&point.params()?, max_k)?;
            let _ = writeln!(s, "alpha {}", alpha_line(&r.scheme));
            let _ = writeln!(s, "mi {}", format_value(r.mi.value()));
            let _ = writeln!(s, "nodes {}", r.nodes_explored);
        }
        Command::Bound {
            point,
            kind,
            method,
            tol,
        } => {
            let params = point.params()?;
            let v = match (kind, method) {
                (KindArg::Geometric, MethodArg::Closed) => geometric_bound_closed_form(&params)?,
                (KindArg::Geometric, MethodArg::Direct) => {
                    geometric_bound_direct(&params, tol)?.value
                }
                (KindArg::Trivial, MethodArg::Closed) => trivial_lower_bound(&params)?,
                _ => {
                    return usage(
                        "bound supports --method closed, or direct for the geometric kind",
                    )
                }
            };
            let _ = writeln!(s, "{}", format_value(v.value()));
        }
        Command::Blu { point, method } => {
            let evaluator = match method {
                MethodArg::Recursion => BluEvaluator::Recursion,
                MethodArg::Direct => BluEvaluator::Direct,
                MethodArg::Closed => return usage("blu supports --method recursion|direct"),
            };
            let r = blu_search_with(&point.params()?, evaluator)?;
            let _ = writeln!(s, "u {}", r.u_star);
            let _ = writeln!(s, "l {}", r.l_star);
            let _ = writeln!(s, "alpha {}", alpha_line(&r.scheme));
            let _ = writeln!(s, "mi {}", format_value(r.mi.value()));
        }
        Command::Pmf {
            k,
            p,
            name,
            alpha,
            format,
        } => {
            let rows: Vec<(String, String)> = match (name, alpha) {
                (_, Some(alpha)) => {
                    let scheme = MixingScheme::new(alpha)?;
                    if k.is_some_and(|k| k != scheme.k()) {
                        return usage("--alpha length does not match --K");
                    }
                    let params = ModelParams::new(p, scheme.k())?;
                    pmf_rows(&scheme, &params)?
                }
                (Some(NameArg::Geometric), None) => {
                    let params = ModelParams::new(p, need_k(k)?)?;
                    GeometricNoise::new(&params, PMF_GEOMETRIC_TAIL)?
                        .atoms()
                        .map(|(i, m)| (i.to_string(), format_value(m)))
                        .collect()
                }
                (Some(name), None) => {
                    let params = ModelParams::new(p, need_k(k)?)?;
                    let scheme = scheme_for_name(name, &params)?;
                    pmf_rows(&scheme, &params)?
                }
                (None, None) => return usage("pmf needs --name or --alpha"),
            };
            s.push_str(&render_table(("support", "probability"), &rows, format));
        }
        Command::Sweep {
            k,
            p_start,
            p_end,
            steps,
            curves,
            format,
            out_dir,
        } => {
            let curves = curves
                .iter()
                .map(|c| c.parse())
                .collect::<Result<Vec<Curve>>>()?;
            let spec = SweepSpec {
                k,
                p_start,
                p_end,
                steps,
                curves,
                format,
                out_dir,
            };
            for path in run_sweep(&spec)? {
                let _ = writeln!(s, "{}", path.display());
            }
        }
        Command::VerifyKkt {
            point,
            n,
            tol,
            solve,
        } => {
            let params = point.params()?;
            let cert = kkt_certificate(&params, n)?;
            let bound = perturbation_bound_mi(&params, n)?;
            let closed = geometric_bound_closed_form(&params)?;
            let _ = writeln!(s, "v1 {}", format_value(cert.v1));
            let _ = writeln!(s, "v2 {}", format_value(cert.v2));
            let _ = writeln!(s, "v3 {}", format_value(cert.v3));
            let _ = writeln!(s, "max_residual {}", format_value(cert.max_residual));
            let _ = writeln!(s, "bound_mi {}", format_value(bound.value()));
            let _ = writeln!(s, "closed_form {}", format_value(closed.value()));
            if solve {
                let sol = numeric_relaxation_solve(&params, n.max(1), 1e-10)?;
                let start =
                    relaxed_objective(&renormalized_candidate(&params, n.max(1))?, &params)?;
                let _ = writeln!(s, "solver_objective {}", format_value(sol.objective));
                let _ = writeln!(s, "candidate_objective {}", format_value(start));
                let _ = writeln!(s, "solver_iterations {}", sol.iterations);
            }
            let ok = cert.max_residual < tol;
            let _ = writeln!(s, "status {}", if ok { "ok" } else { "fail" });
            if !ok {
                return Err(Error::Convergence {
                    iterations: 0,
                    residual: cert.max_residual,
                    objective: bound.value(),
                });
            }
        }
    }
    Ok(s)
}

fn need_k(k: Option<usize>) -> Result<usize> {
    k.ok_or_else(|| Error::Usage("--K is required with --name".into()))
}

fn pmf_rows(scheme: &MixingScheme, params: &ModelParams) -> Result<Vec<(String, String)>> {
    Ok(noise_pmf(scheme, params)?
        .iter()
        .map(|(y, m)| (y.to_string(), format_value(m)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["mixmin"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn formatting() {
        assert_eq!(format_value(0.03125), "0.0312500000000");
        assert_eq!(format_value(0.0), "0");
        assert_eq!(format_value(1.0), "1.00000000000");
        assert_eq!(format_value(0.5), "0.500000000000");
        assert_eq!(format_value(1.5e-7), "1.50000000000e-7");
        assert_eq!(format_value(-0.25), "-0.250000000000");
        assert_eq!(format_value(0.99999999999999), "1.00000000000");
        assert_eq!(format_value(123456.0), "123456.000000");
        assert_eq!(format_value(1e12), "1.00000000000e12");
        assert_eq!(format_value(1.234e-5), "0.0000123400000000");
    }

    #[test]
    fn grid_is_inclusive() {
        let spec = SweepSpec {
            k: 3,
            p_start: 0.005,
            p_end: 0.5,
            steps: 100,
            curves: vec![Curve::Uniform],
            format: Format::Dat,
            out_dir: PathBuf::from("."),
        };
        let g = spec.grid();
        assert_eq!(g.len(), 100);
        assert_eq!(g[0], 0.005);
        assert_eq!(g[99], 0.5);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn csv_uses_crlf() {
        let rows = vec![("0.1".to_string(), "0.2".to_string())];
        assert_eq!(
            render_table(("p", "value"), &rows, Format::Csv),
            "p,value\r\n0.1,0.2\r\n"
        );
        assert_eq!(
            render_table(("p", "value"), &rows, Format::Dat),
            "0.1 0.2\n"
        );
    }

    #[test]
    fn mi_and_bound_commands() {
        let (c, o, _) = run_str(&["mi", "--K", "5", "--p", "0.5", "--alpha", "1,1,2,4,8,16"]);
        assert_eq!((c, o.as_str()), (0, "0.0312500000000\n"));
        let (c, o, _) = run_str(&["bound", "--kind", "geometric", "--K", "5", "--p", "0"]);
        assert_eq!((c, o.as_str()), (0, "0\n"));
    }

    #[test]
    fn pmf_command() {
        let (c, o, _) = run_str(&["pmf", "--p", "0.5", "--alpha", "1,1"]);
        assert_eq!(c, 0);
        assert_eq!(o, "0 0.500000000000\n1 0.500000000000\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["mi", "--p", "0.5"]).0, 2);
        assert_eq!(
            run_str(&["mi", "--K", "2", "--p", "0.5", "--alpha", "1,1"]).0,
            2
        );
        assert_eq!(run_str(&["optimal", "--K", "12", "--p", "0.3"]).0, 2);
        assert_eq!(run_str(&["mi", "--p", "0.7", "--alpha", "1,1"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
        let (c, _, e) = run_str(&["mi", "--p", "0.3", "--alpha", "1,1,2,4,8,16,32,64,128,256,512,1024,2048,4096,8192,16384,32768,65536,131072,262144,524288,1048576,2097152,4194304,8388608,16777216"]);
        assert_eq!(c, 1, "{e}");
        assert!(e.contains("resource"));
    }
}

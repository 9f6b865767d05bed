//! The `eqsing` driver: argument parsing, dispatch and record output.
//!
//! Machine output is one JSON object per line. Human output is a short
//! text rendering of the same records.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{
    canonical_alphas, davis_check, expected_dimension, h0, h1, h1_table, profile_for_alpha, squares_d_violations,
};
use crate::localsing::{newton_polytope, tjurina_data, SingularitySpec};
use crate::ordering::MonomialOrdering;
use crate::polyring::{
    format_param_coefficient, format_polynomial, param_cap_from_env, parse_polynomial, ExponentVector, Polynomial,
    Rational,
};
use crate::reduction::{highest_corner, red_nf_buchberger_traced, truncated_local_nf_traced, DivisionStep};
use crate::stabilize::{
    check_h1_tau_preserved, combined_quadratic_rank, derive_suspended_system, witness_reduced_component,
    StabilizeError, SuspensionSpec,
};
use crate::stratum::{classify_system, derive, EquationSystem};

#[derive(Parser, Debug, Clone, Serialize, Deserialize)]
#[command(name = "eqsing", version, about = "Equisingular strata of hypersurfaces with a quasihomogeneous singularity")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Machine)]
    pub format: Format,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Parameter-degree cap; overrides EQSING_MAX_PARAM_DEG.
    #[arg(long, global = true)]
    pub param_cap: Option<u32>,
    /// First jet order tried by the Tjurina computation.
    #[arg(long, global = true)]
    pub jet_order: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
pub enum Command {
    /// h^0, h^1 and τ for a spec, or a table over a degree range.
    H1 {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, requires = "to")]
        from: Option<i64>,
        #[arg(long, requires = "from")]
        to: Option<i64>,
    },
    /// Tjurina number and monomial basis.
    Tjurina {
        #[command(flatten)]
        input: PolyOrSpec,
    },
    /// Newton polytope vertices and weights.
    Polytope {
        #[command(flatten)]
        input: PolyOrSpec,
    },
    /// Castelnuovo function of the box scheme, or the check for `x^d, y^k`.
    Castelnuovo {
        #[arg(long, value_delimiter = ',', conflicts_with = "davis", required_unless_present = "davis")]
        alpha: Option<Vec<u32>>,
        #[arg(long, default_value_t = 0)]
        k_max: i64,
        /// `d,k`
        #[arg(long, value_delimiter = ',', num_args = 1)]
        davis: Option<Vec<u32>>,
    },
    /// Normal form of a polynomial with respect to a generator list.
    Nf {
        #[arg(long)]
        poly: String,
        /// Generators separated by `;`.
        #[arg(long, value_delimiter = ';', required = true)]
        gens: Vec<String>,
        #[arg(long, default_value = "lp")]
        ord: String,
        #[arg(long)]
        nvars: Option<usize>,
        /// Local reduction halted at the highest corner of the leading ideal.
        #[arg(long)]
        stop_at_hc: bool,
        #[arg(long)]
        trace: bool,
    },
    /// Equations of the equisingular substratum and its classification.
    Stratum {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = StratumEmit::Verdict)]
        emit: StratumEmit,
    },
    /// The stratum after adding `m` squares.
    Stabilize {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of squares `m`; defaults to h^1(d) + 1.
        #[arg(long)]
        squares: Option<usize>,
        #[arg(long, value_enum, default_value_t = StabilizeEmit::Invariants)]
        emit: StabilizeEmit,
        /// Use distinct coefficients on the `x_i^d` terms.
        #[arg(long)]
        unisingular: bool,
    },
    /// Lattice data over every canonical α with `n` entries.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_sum: u32,
        /// Also classify the stratum at the default degree when valid.
        #[arg(long)]
        stratum: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum StratumEmit {
    Verdict,
    System,
    Certificates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum StabilizeEmit {
    Invariants,
    System,
    Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Preset {
    #[value(name = "gur1-d6")]
    Gur1D6,
    #[value(name = "gur1-d7a")]
    Gur1D7a,
    #[value(name = "gur1-d7b")]
    Gur1D7b,
    #[value(name = "gur1-d8a")]
    Gur1D8a,
    #[value(name = "gur1-d8b")]
    Gur1D8b,
    #[value(name = "qhomn-n4d3")]
    QhomnN4d3,
    #[value(name = "qhomn-n3d5")]
    QhomnN3d5,
    #[value(name = "case2-n2")]
    Case2N2,
    #[value(name = "synth-d4")]
    SynthD4,
}

impl Preset {
    pub fn alpha_degree(self) -> (Vec<u32>, u32) {
        match self {
            Preset::Gur1D6 => (vec![6, 5], 6),
            Preset::Gur1D7a => (vec![7, 5], 7),
            Preset::Gur1D7b => (vec![6, 6], 7),
            Preset::Gur1D8a => (vec![8, 5], 8),
            Preset::Gur1D8b => (vec![7, 6], 8),
            Preset::QhomnN4d3 => (vec![3, 3, 3, 3], 3),
            Preset::QhomnN3d5 => (vec![4, 4, 4], 5),
            Preset::Case2N2 => (vec![10, 5], 10),
            Preset::SynthD4 => (vec![4, 4, 3], 4),
        }
    }
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SpecArgs {
    #[arg(long, value_delimiter = ',', required_unless_present = "preset")]
    pub alpha: Option<Vec<u32>>,
    #[arg(long)]
    pub degree: Option<u32>,
    /// Comma-separated rationals.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<String>>,
    #[arg(long, value_enum, conflicts_with_all = ["alpha", "degree"])]
    pub preset: Option<Preset>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct PolyOrSpec {
    #[arg(long, conflicts_with_all = ["alpha", "degree", "lambda", "preset"])]
    pub poly: Option<String>,
    #[command(flatten)]
    pub spec: OptSpecArgs,
}

/// As [`SpecArgs`] but optional, for commands that also take `--poly`.
#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct OptSpecArgs {
    #[arg(long, value_delimiter = ',', required_unless_present_any = ["poly", "preset"])]
    pub alpha: Option<Vec<u32>>,
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<String>>,
    #[arg(long, value_enum, conflicts_with_all = ["alpha", "degree"])]
    pub preset: Option<Preset>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] crate::Error),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Inconclusive(_) => 4,
        }
    }

    /// Machine-readable error record.
    pub fn record(&self) -> Value {
        match self {
            CliError::Parse(m) => json!({"error": "parse", "message": m}),
            CliError::Domain(e) => json!({"error": "domain", "module": e.module(), "message": e.to_string()}),
            CliError::Inconclusive(m) => json!({"error": "inconclusive", "message": m}),
        }
    }
}

impl From<StabilizeError> for CliError {
    fn from(e: StabilizeError) -> Self {
        match e {
            StabilizeError::Inconclusive(_) | StabilizeError::InvariantViolation { .. } => {
                CliError::Inconclusive(e.to_string())
            }
            e => CliError::Domain(e.into()),
        }
    }
}

macro_rules! domain {
    ($e:expr) => {
        $e.map_err(|e| CliError::Domain(e.into()))
    };
}

/// One result, in both renderings.
pub struct Record {
    pub machine: Value,
    pub human: String,
}

impl Record {
    fn new(machine: Value, human: impl Into<String>) -> Self {
        Record { machine, human: human.into() }
    }

    fn plain(machine: Value) -> Self {
        let human = match &machine {
            Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"),
            v => v.to_string(),
        };
        Record { machine, human }
    }
}

impl RunConfig {
    /// Parameter-degree cap: the flag, else the environment, else the default.
    pub fn cap(&self) -> Option<u32> {
        self.param_cap.or_else(param_cap_from_env)
    }
}

fn parse_lambda(l: &Option<Vec<String>>) -> Result<Option<Vec<Rational>>, CliError> {
    l.as_ref()
        .map(|v| {
            v.iter()
                .map(|s| Rational::from_str(s.trim()).map_err(|_| CliError::Parse(format!("bad rational {s:?}"))))
                .collect()
        })
        .transpose()
}

fn build_spec(
    alpha: &Option<Vec<u32>>,
    degree: Option<u32>,
    lambda: &Option<Vec<String>>,
    preset: Option<Preset>,
) -> Result<SingularitySpec, CliError> {
    let (alpha, degree) = match preset {
        Some(p) => {
            let (a, d) = p.alpha_degree();
            (a, Some(d))
        }
        None => (alpha.clone().ok_or_else(|| CliError::Parse("--alpha or --preset is required".into()))?, degree),
    };
    let lambda = parse_lambda(lambda)?;
    domain!(SingularitySpec::new(&alpha, degree, lambda.as_deref()))
}

impl SpecArgs {
    pub fn spec(&self) -> Result<SingularitySpec, CliError> {
        build_spec(&self.alpha, self.degree, &self.lambda, self.preset)
    }
}

impl PolyOrSpec {
    fn polynomial(&self) -> Result<Polynomial, CliError> {
        match &self.poly {
            Some(p) => parse_poly(p, None),
            None => {
                let s = &self.spec;
                Ok(build_spec(&s.alpha, s.degree, &s.lambda, s.preset)?.polynomial())
            }
        }
    }
}

fn monomial(e: &ExponentVector) -> Polynomial {
    let mut p = Polynomial::zero(e.len());
    p.add_term(e.clone(), Rational::one());
    p
}

fn parse_poly(text: &str, nvars: Option<usize>) -> Result<Polynomial, CliError> {
    parse_polynomial(text, nvars).map_err(|e| CliError::Parse(e.to_string()))
}

/// Runs the command and writes its records to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let records = dispatch(config)?;
    for r in records {
        let line = match config.format {
            Format::Machine => r.machine.to_string(),
            Format::Human => r.human,
        };
        writeln!(out, "{line}").map_err(|e| CliError::Parse(format!("write failed: {e}")))?;
    }
    Ok(())
}

/// Computes the records of a command without printing them.
pub fn dispatch(config: &RunConfig) -> Result<Vec<Record>, CliError> {
    let cap = config.cap();
    match &config.command {
        Command::H1 { spec, from, to } => cmd_h1(&spec.spec()?, *from, *to),
        Command::Tjurina { input } => {
            let f = input.polynomial()?;
            let t = domain!(tjurina_data(&f, config.jet_order))?;
            let basis: Vec<String> = t.basis.iter().map(|e| format_polynomial(&monomial(e))).collect();
            let human = format!("tau = {}", t.tau);
            Ok(vec![Record::new(json!({"tau": t.tau, "order": t.order, "basis": basis}), human)])
        }
        Command::Polytope { input } => {
            let p = domain!(newton_polytope(&input.polynomial()?))?;
            Ok(vec![Record::plain(serde_json::to_value(&p).expect("serializable"))])
        }
        Command::Castelnuovo { alpha, k_max, davis } => cmd_castelnuovo(alpha.as_deref(), *k_max, davis.as_deref()),
        Command::Nf { poly, gens, ord, nvars, stop_at_hc, trace } => {
            cmd_nf(poly, gens, ord, *nvars, *stop_at_hc, *trace)
        }
        Command::Stratum { spec, emit } => cmd_stratum(&spec.spec()?, *emit, cap),
        Command::Stabilize { spec, squares, emit, unisingular } => {
            cmd_stabilize(spec.spec()?, *squares, *emit, *unisingular, cap, config.seed)
        }
        Command::Sweep { n, max_sum, stratum } => Ok(cmd_sweep(*n, *max_sum, *stratum, cap)),
    }
}

fn cmd_h1(spec: &SingularitySpec, from: Option<i64>, to: Option<i64>) -> Result<Vec<Record>, CliError> {
    let alpha = spec.alpha();
    if let (Some(a), Some(b)) = (from, to) {
        return Ok(h1_table(alpha, a, b)
            .into_iter()
            .map(|r| {
                let human = format!("k={} h0={} h1={} C={}", r.k, r.h0, r.h1, r.castelnuovo);
                Record::new(serde_json::to_value(&r).expect("serializable"), human)
            })
            .collect());
    }
    let d = spec.degree() as i64;
    let h = h1(alpha, d);
    let rec = json!({
        "alpha": alpha,
        "degree": d,
        "tau": spec.tau(),
        "h0": h0(alpha, d),
        "h1": h,
        "h1_next": h1(alpha, d + 1),
        "h1_2d_minus_2": h1(alpha, 2 * d - 2),
        "expected_dimension": expected_dimension(spec),
    });
    Ok(vec![Record::new(rec, format!("h1 = {h}, tau = {}", spec.tau()))])
}

fn cmd_castelnuovo(alpha: Option<&[u32]>, k_max: i64, davis: Option<&[u32]>) -> Result<Vec<Record>, CliError> {
    if let Some(dk) = davis {
        let [d, k] = dk else {
            return Err(CliError::Parse("--davis takes d,k".into()));
        };
        let r = domain!(davis_check(*d, *k))?;
        if !r.passed() {
            return Err(CliError::Inconclusive(format!("check fails for d={d}, k={k}")));
        }
        return Ok(vec![Record::plain(serde_json::to_value(&r).expect("serializable"))]);
    }
    let alpha = alpha.expect("clap enforces --alpha");
    if alpha.iter().any(|&a| a < 2) {
        let e = crate::localsing::LocalError::InvalidSpec("every α_i must be at least 2".into());
        return Err(CliError::Domain(e.into()));
    }
    let p = profile_for_alpha(alpha, k_max);
    Ok(vec![Record::plain(serde_json::to_value(&p).expect("serializable"))])
}

fn step_record(s: &DivisionStep) -> Value {
    json!({"monomial": s.monomial, "generator": s.generator})
}

fn cmd_nf(
    poly: &str,
    gens: &[String],
    ord: &str,
    nvars: Option<usize>,
    stop_at_hc: bool,
    trace: bool,
) -> Result<Vec<Record>, CliError> {
    let ord = MonomialOrdering::from_str(ord).map_err(|e| CliError::Parse(e.to_string()))?;
    let texts: Vec<&str> = gens.iter().map(|g| g.trim()).filter(|g| !g.is_empty()).collect();
    if texts.is_empty() {
        return Err(CliError::Parse("empty generator list".into()));
    }
    // one variable count for the input and all generators
    let n = match nvars {
        Some(n) => n,
        None => std::iter::once(poly)
            .chain(texts.iter().copied())
            .map(|t| parse_poly(t, None).map(|p| p.nvars()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .max()
            .unwrap_or(1),
    };
    let f = parse_poly(poly, Some(n))?;
    let g: Vec<Polynomial> = texts.iter().map(|t| parse_poly(t, Some(n))).collect::<Result<_, _>>()?;
    let (nf, steps) = if stop_at_hc {
        let leading: Vec<_> = g.iter().filter_map(|p| ord.leading_exponent(p).cloned()).collect();
        let stop = domain!(highest_corner(&leading, &ord))?;
        let (terms, steps) = domain!(truncated_local_nf_traced(&f, &g, &ord, &stop))?;
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        (p, steps)
    } else {
        domain!(red_nf_buchberger_traced(&f, &g, &ord))?
    };
    let text = format_polynomial(&nf);
    let mut machine = json!({"nf": text});
    let mut human = text;
    if trace {
        machine["steps"] = Value::Array(steps.iter().map(step_record).collect());
        for s in &steps {
            human.push_str(&format!("\nstep {:?} by generator {}", s.monomial.entries(), s.generator));
        }
    }
    Ok(vec![Record::new(machine, human)])
}

fn cmd_stratum(spec: &SingularitySpec, emit: StratumEmit, cap: Option<u32>) -> Result<Vec<Record>, CliError> {
    let sys = domain!(derive(spec, cap))?;
    Ok(match emit {
        StratumEmit::Verdict => {
            let c = classify_system(&sys);
            let human = format!("{:?} (linear rank {}, quadratic rank {:?})", c.verdict, c.linear_rank, c.quadratic_rank);
            vec![Record::new(serde_json::to_value(&c).expect("serializable"), human)]
        }
        StratumEmit::System => system_records(&sys),
        StratumEmit::Certificates => vec![Record::plain(certificates(&sys))],
    })
}

fn system_records(sys: &EquationSystem) -> Vec<Record> {
    let mut out = Vec::new();
    for eq in &sys.equations {
        let expr = format_param_coefficient(&eq.expression, &sys.space);
        let target = eq.target.map(|p| sys.param_name(p));
        let human = format!("[{:?}] 0 = {expr}", eq.kind);
        out.push(Record::new(
            json!({"equation": eq.index, "kind": eq.kind, "target": target, "expression": expr}),
            human,
        ));
    }
    for (p, s) in &sys.solutions {
        let name = sys.param_name(*p);
        let value = format_param_coefficient(s, &sys.space);
        out.push(Record::new(json!({"solution": name, "value": value}), format!("{name} = {value}")));
    }
    for l in &sys.last {
        let expr = format_param_coefficient(&l.residual, &sys.space);
        out.push(Record::new(json!({"last": l.index, "expression": expr}), format!("0 = {expr}")));
    }
    out
}

fn certificates(sys: &EquationSystem) -> Value {
    let last: Vec<Value> = sys
        .last
        .iter()
        .map(|l| {
            json!({
                "index": l.index,
                "linear_is_zero": l.linear_is_zero,
                "quadratic_rank": l.quadratic_rank,
                "g_rank": l.g_rank,
                "only_g_in_quadratic": l.only_g_in_quadratic,
                "off_pairing_zero": l.off_pairing_zero,
                "theta_in_g2m": l.theta_in_g2m,
                "derivatives_in_g": l.derivatives_in_g,
                "pairs": l.pairs,
            })
        })
        .collect();
    let changes: Vec<Value> = sys
        .changes
        .iter()
        .map(|c| {
            json!({
                "variable": c.variable,
                "target": c.target,
                "factor": format_param_coefficient(&c.factor, &sys.space),
            })
        })
        .collect();
    json!({
        "alpha": sys.spec.alpha(),
        "degree": sys.spec.degree(),
        "case": sys.case,
        "linear_rank": sys.linear_rank(),
        "solutions_in_g2": sys.solutions_in_g2(),
        "pair_signs_agree": sys.pair_signs_agree(),
        "last": last,
        "coordinate_changes": changes,
    })
}

fn cmd_stabilize(
    base: SingularitySpec,
    squares: Option<usize>,
    emit: StabilizeEmit,
    unisingular: bool,
    cap: Option<u32>,
    seed: u64,
) -> Result<Vec<Record>, CliError> {
    let m = squares.unwrap_or_else(|| h1(base.alpha(), base.degree() as i64) as usize + 1);
    let spec = SuspensionSpec::new(base, m, unisingular)?;
    match emit {
        StabilizeEmit::Invariants => {
            let r = check_h1_tau_preserved(&spec, cap)?;
            let human = format!("h1 = {}, tau = {} (base {}, {})", r.h1, r.tau, r.base_h1, r.base_tau);
            Ok(vec![Record::new(serde_json::to_value(&r).expect("serializable"), human)])
        }
        StabilizeEmit::System => {
            let sys = derive_suspended_system(&spec, cap)?;
            Ok(sys
                .rows
                .iter()
                .map(|r| {
                    let expr = format_param_coefficient(&r.expression, &sys.space);
                    let ranks: Vec<usize> = r.w.iter().map(|w| w.rank()).collect();
                    Record::new(
                        json!({"equation": r.index, "expression": expr, "w0_rank": r.w0.rank(), "w_ranks": ranks}),
                        format!("0 = {expr}"),
                    )
                })
                .collect())
        }
        StabilizeEmit::Certificate => {
            let sys = derive_suspended_system(&spec, cap)?;
            let ranks = combined_quadratic_rank(&sys)?;
            let h = h1(spec.base.alpha(), spec.degree() as i64) as usize;
            let witness = if m > h { Some(witness_reduced_component(&sys, seed)?) } else { None };
            let rec = json!({
                "alpha": spec.base.alpha(),
                "degree": spec.degree(),
                "squares": m,
                "linear_rank": sys.linear_rank(),
                "blocks_separate": sys.blocks_separate,
                "ranks": ranks,
                "witness": witness,
            });
            let human = format!(
                "combined rank {} (w0 {}, w {:?}){}",
                ranks.combined,
                ranks.w0,
                ranks.w,
                witness.as_ref().map(|w| format!(", witness minor {}", w.minor)).unwrap_or_default()
            );
            Ok(vec![Record::new(rec, human)])
        }
    }
}

fn sweep_one(alpha: &[u32], stratum: bool, cap: Option<u32>) -> Record {
    let mut rec = json!({
        "alpha": alpha,
        "tau": alpha.iter().map(|&a| (a - 1) as u64).product::<u64>(),
        "squares_d_violations": squares_d_violations(alpha),
    });
    match SingularitySpec::new(alpha, None, None) {
        Ok(spec) => {
            let d = spec.degree() as i64;
            rec["degree"] = json!(d);
            rec["h1"] = json!(h1(alpha, d));
            if stratum {
                rec["stratum"] = match derive(&spec, cap) {
                    Ok(sys) => serde_json::to_value(classify_system(&sys)).expect("serializable"),
                    Err(e) => json!({"error": e.to_string()}),
                };
            }
        }
        Err(e) => rec["degree_error"] = json!(e.to_string()),
    }
    Record::plain(rec)
}

fn cmd_sweep(n: usize, max_sum: u32, stratum: bool, cap: Option<u32>) -> Vec<Record> {
    let alphas = canonical_alphas(n, max_sum);
    // par_iter + collect keeps input order
    alphas.par_iter().map(|a| sweep_one(a, stratum, cap)).collect()
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(&config, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = match config.format {
                Format::Machine => writeln!(err, "{}", e.record()),
                Format::Human => writeln!(err, "error: {e}"),
            };
            e.exit_code()
        }
    }
}

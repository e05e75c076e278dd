//! The `dmkit` command line.
//!
//! Exit codes: 0 verified (or a plain answer), 1 refuted, 2 usage or input error,
//! 3 inconclusive, 4 internal consistency failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{MonomialOrder, RationalPoint, RingSpec};
use crate::dmcheck::{
    default_d_max, dm_check_with, dm_exponent, exponent_trail, generate_corpus, generic_counterexample,
    reduction_corollary_check, resolve_exponent, rush_example_check, run_corpus, CheckOptions, CorpusOptions,
    CorpusRing, CorpusSummary, DmError, DmReport, ExponentSource, Verdict,
};
use crate::exprio::{
    dump_report, infer_vars, load_series, parse_field, parse_order, parse_poly_list, parse_series_expr,
    print_ideal,
};
use crate::groebner::{minimal_generators_at, mu_at_point, Ideal};
use crate::series::UnitTailSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "dmkit", version, about = "Certified content-ideal identities for power series")]
pub struct RunConfig {
    /// Machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Ring for inputs given as text; JSON documents carry their own.
#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    /// Comma-separated variables; inferred from the inputs when omitted.
    #[arg(long)]
    pub vars: Option<String>,
    /// `Q` or `Fp:<p>`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// `grevlex` or `lex`.
    #[arg(long, default_value = "grevlex")]
    pub order: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Content ideal of a series: generators and reduced Gröbner basis.
    Content {
        /// Series file (JSON document or polynomial in X), or `expr:<text>`.
        series: String,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Check c(f)^k c(g) = c(f)^(k-1) c(fg).
    Dm {
        f: String,
        g: String,
        /// Exponent; by default mu(c(g)) at --point, or at the origin / a global bound.
        #[arg(long)]
        k: Option<u32>,
        /// Point whose maximal ideal supplies the exponent, e.g. `0,0` or `1/2,3`.
        #[arg(long)]
        point: Option<String>,
        /// Deepest truncation of fg to try.
        #[arg(long, env = "DMKIT_DMAX")]
        dmax: Option<usize>,
        /// Also search for the least exponent that verifies, up to --kmax.
        #[arg(long)]
        min_exponent: bool,
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        /// Attach lift certificates when the left side has at most this many generators.
        #[arg(long, default_value_t = 8)]
        certificates: usize,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// The generic degree-k pair, where the exponent k fails and k + 1 works.
    Counterexample {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Recheck the k[u,v] pair f = v + X, g = u + vX/(1 - X).
    Rush,
    /// Reduction number of c(fg) in c(f)c(g), with verdicts at every exponent up to k.
    Reduction {
        f: String,
        g: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, env = "DMKIT_DMAX")]
        dmax: Option<usize>,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Local minimal number of generators of an ideal at a point.
    Mu {
        /// Comma-separated generators, e.g. `u,v,u+v`.
        gens: String,
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Seeded random pairs, each checked at k = mu(c(g)) at the origin.
    Corpus {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, value_enum, default_value_t = RingChoice::All)]
        ring: RingChoice,
        /// Also compute reduction numbers.
        #[arg(long)]
        corollary: bool,
        /// Also check every pair at k + 1.
        #[arg(long)]
        monotonicity: bool,
        /// Worker threads (0: available parallelism).
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingChoice {
    /// Q[u,v]
    Quv,
    /// F_101[x,y,z]
    F101,
    All,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
}

impl From<DmError> for CliError {
    fn from(e: DmError) -> Self {
        match e {
            DmError::Internal(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<crate::groebner::IdealError> for CliError {
    fn from(e: crate::groebner::IdealError) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(String, i32), CliError>;

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

const INLINE: &str = "expr:";

fn read_input(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix(INLINE) {
        Some(text) => Ok(text.to_string()),
        None => std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}"))),
    }
}

impl RingArgs {
    fn build(&self, texts: &[&str]) -> Result<Arc<RingSpec>, CliError> {
        let vars: Vec<String> = match &self.vars {
            Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            None => infer_vars(texts.iter().copied()),
        };
        let field = parse_field(&self.field).map_err(CliError::Input)?;
        let order: MonomialOrder = parse_order(&self.order).map_err(CliError::Input)?;
        RingSpec::new(vars, field, order).map_err(|e| CliError::Input(e.to_string()))
    }
}

/// Loads series arguments. JSON documents carry their own ring; text inputs use
/// `--vars` when given, else the ring of a JSON input, else the inferred variables.
fn load_inputs(args: &[&str], ring: &RingArgs) -> Result<Vec<UnitTailSeries>, CliError> {
    let texts = args.iter().map(|a| read_input(a)).collect::<Result<Vec<_>, _>>()?;
    let is_json = |t: &str| t.trim_start().starts_with('{');
    let mut loaded: Vec<Option<UnitTailSeries>> = Vec::with_capacity(args.len());
    for (arg, t) in args.iter().zip(&texts) {
        loaded.push(if is_json(t) {
            Some(load_series(t).map_err(|e| CliError::Input(format!("{arg}: {e}")))?)
        } else {
            None
        });
    }
    let plain: Vec<&str> = texts.iter().map(String::as_str).filter(|t| !is_json(t)).collect();
    let text_ring = match (plain.is_empty(), &ring.vars, loaded.iter().flatten().next()) {
        (true, _, _) => None,
        (false, None, Some(doc)) => Some(doc.ring().clone()),
        (false, _, _) => Some(ring.build(&plain)?),
    };
    args.iter()
        .zip(&texts)
        .zip(loaded)
        .map(|((arg, t), doc)| match doc {
            Some(f) => Ok(f),
            None => {
                let r = text_ring.as_ref().expect("built for text inputs");
                parse_series_expr(t.trim(), r).map_err(|e| CliError::Input(format!("{arg}: {e}")))
            }
        })
        .collect()
}

fn parse_point(src: Option<&str>, ring: &RingSpec) -> Result<RationalPoint, CliError> {
    let Some(src) = src else {
        return Ok(RationalPoint::origin(ring));
    };
    // Coordinates are constants of the ring; parse each as a polynomial with no variables.
    let scalars = RingSpec::new(Vec::<String>::new(), ring.field(), ring.order()).expect("no variables");
    let coords = parse_poly_list(src, &scalars)
        .map_err(|e| CliError::Input(format!("--point: {e}")))?
        .into_iter()
        .map(|p| p.constant_coeff())
        .collect();
    RationalPoint::new(ring, coords).map_err(|e| CliError::Input(format!("--point: {e}")))
}

fn report_text(r: &DmReport) -> String {
    let mut s = String::new();
    let source = match r.exponent_source {
        ExponentSource::User => "user",
        ExponentSource::MuAtPoint => "mu at point",
        ExponentSource::GeneratorCountBound => "generator-count bound",
    };
    let _ = writeln!(s, "ring       {}", r.ring);
    let _ = writeln!(s, "exponent   k = {} ({source})", r.exponent);
    let _ = writeln!(s, "verdict    {:?}", r.verdict);
    match r.d_cert {
        Some(d) => {
            let _ = writeln!(s, "d_cert     {d} (d_max {})", r.d_max);
        }
        None => {
            let _ = writeln!(s, "d_cert     - (d_max {})", r.d_max);
        }
    }
    if let Some(k) = r.min_exponent {
        let _ = writeln!(s, "k_min      {k}");
    }
    if let Some(rn) = r.reduction_number {
        let _ = writeln!(s, "reduction  r = {rn} (<= k - 1 = {})", r.exponent - 1);
    }
    for t in &r.trail {
        let d = t.d_cert.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(s, "  k = {:<3} {:<12} d_cert {d}", t.exponent, format!("{:?}", t.verdict));
    }
    let _ = writeln!(s, "lhs gb     {}", r.lhs_fingerprint);
    let _ = writeln!(s, "rhs gb     {}", r.rhs_fingerprint);
    for c in &r.certificates {
        let terms: Vec<String> = c
            .cofactors
            .iter()
            .zip(&c.generators)
            .filter(|(q, _)| q.as_str() != "0")
            .map(|(q, g)| format!("({q})*({g})"))
            .collect();
        let _ = writeln!(
            s,
            "cert       {} = {} [{}]",
            c.target,
            terms.join(" + "),
            if c.valid { "ok" } else { "INVALID" }
        );
    }
    for n in &r.notes {
        let _ = writeln!(s, "note       {n}");
    }
    s
}

fn cmd_content(series: &str, ring: &RingArgs, json: bool) -> CliResult {
    let f = load_inputs(&[series], ring)?.remove(0);
    let c = f.content();
    let gens: Vec<String> = c.gens().iter().map(ToString::to_string).collect();
    let gb: Vec<String> = c.groebner_basis().iter().map(ToString::to_string).collect();
    let out = if json {
        to_json(&serde_json::json!({
            "ring": f.ring().to_string(),
            "series": f.to_string(),
            "generators": gens,
            "groebner_basis": gb,
            "fingerprint": c.fingerprint(),
        }))
    } else {
        format!(
            "series     {f}\ncontent    {}\ngb         {}\n",
            print_ideal(&c),
            print_ideal(&c.interreduced())
        )
    };
    Ok((out, EXIT_OK))
}

#[allow(clippy::too_many_arguments)]
fn cmd_dm(
    f: &str,
    g: &str,
    k: Option<u32>,
    point: Option<&str>,
    dmax: Option<usize>,
    min_exponent: bool,
    kmax: u32,
    certificates: usize,
    ring: &RingArgs,
    json: bool,
) -> CliResult {
    let mut inputs = load_inputs(&[f, g], ring)?;
    let g = inputs.pop().expect("two inputs");
    let f = inputs.pop().expect("two inputs");
    let mut notes = Vec::new();
    let (k, source) = match (k, point) {
        (Some(k), _) => (k, ExponentSource::User),
        (None, Some(p)) => {
            let pt = parse_point(Some(p), g.ring())?;
            notes.push("mu at a single point is the theorem's exponent only if that point dominates".to_string());
            (dm_exponent(&g, &pt)?, ExponentSource::MuAtPoint)
        }
        (None, None) => resolve_exponent(&g)?,
    };
    let d_max = dmax.unwrap_or_else(|| default_d_max(&f, &g, k));
    let opts = CheckOptions {
        max_certificates: certificates,
        exponent_source: source,
    };
    let mut report = dm_check_with(&f, &g, k, d_max, opts)?;
    report.notes.extend(notes);
    if min_exponent {
        let d = dmax.unwrap_or_else(|| default_d_max(&f, &g, kmax));
        report.trail = exponent_trail(&f, &g, kmax, d, true)?;
        report.min_exponent = report
            .trail
            .last()
            .filter(|t| t.verdict == Verdict::Verified)
            .map(|t| t.exponent);
    }
    let code = verdict_code(report.verdict);
    Ok((if json { dump_report(&report) } else { report_text(&report) }, code))
}

fn cmd_reduction(f: &str, g: &str, k: Option<u32>, dmax: Option<usize>, ring: &RingArgs, json: bool) -> CliResult {
    let mut inputs = load_inputs(&[f, g], ring)?;
    let g = inputs.pop().expect("two inputs");
    let f = inputs.pop().expect("two inputs");
    let (k, source) = match k {
        Some(k) => (k, ExponentSource::User),
        None => resolve_exponent(&g)?,
    };
    let d_max = dmax.unwrap_or_else(|| default_d_max(&f, &g, k));
    let trail = exponent_trail(&f, &g, k, d_max, false)?;
    let mut report = match reduction_corollary_check(&f, &g, k, d_max) {
        Ok(r) => r,
        Err(DmError::NotVerified(_)) => {
            // Report the failed check itself rather than an error.
            let opts = CheckOptions {
                max_certificates: 0,
                exponent_source: source,
            };
            dm_check_with(&f, &g, k, d_max, opts)?
        }
        Err(e) => return Err(e.into()),
    };
    report.exponent_source = source;
    report.min_exponent = trail.iter().find(|t| t.verdict == Verdict::Verified).map(|t| t.exponent);
    report.trail = trail;
    let code = verdict_code(report.verdict);
    Ok((if json { dump_report(&report) } else { report_text(&report) }, code))
}

fn cmd_counterexample(k: u32, field: &str, json: bool) -> CliResult {
    let field = parse_field(field).map_err(CliError::Input)?;
    let r = generic_counterexample(k, field)?;
    let code = if r.inequality_certified && r.contrast.is_verified() {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    };
    let out = if json {
        to_json(&r)
    } else {
        let mut s = format!("ring       {}\n", r.ring);
        match (&r.witness, &r.witness_normal_form) {
            (Some(w), Some(nf)) => {
                let _ = writeln!(s, "inequality certified at exponent {}; witness {w}", r.k);
                let _ = writeln!(s, "           normal form of witness: {nf}");
            }
            _ => {
                let _ = writeln!(s, "no witness found at exponent {}", r.k);
            }
        }
        let _ = writeln!(
            s,
            "contrast   exponent {} = mu(c(g)): {:?} (d_cert {})",
            r.contrast_exponent,
            r.contrast.verdict,
            r.contrast.d_cert.map_or("-".into(), |d| d.to_string())
        );
        s
    };
    Ok((out, code))
}

fn cmd_rush(json: bool) -> CliResult {
    let r = rush_example_check()?;
    let code = if r.passed { EXIT_OK } else { EXIT_INTERNAL };
    let out = if json {
        to_json(&r)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "coefficients of fg: {}, ...", r.coefficients.join(", "));
        let _ = writeln!(s, "  match expected: {}", r.coefficients_match);
        let _ = writeln!(s, "c(fg) = {} = c(g) = {}: {}", r.content_fg, r.content_g, r.contents_equal);
        let labelled = r
            .printed_certificates
            .iter()
            .map(|c| ("printed", c))
            .chain(r.lifted_certificates.iter().map(|c| ("lifted ", c)));
        for (label, c) in labelled {
            let _ = writeln!(
                s,
                "{label} {} = {} . ({})  [{}]",
                c.target,
                format_args!("({})", c.cofactors.join(", ")),
                c.generators.join(", "),
                if c.valid { "ok" } else { "INVALID" }
            );
        }
        let _ = writeln!(s, "{}", if r.passed { "passed" } else { "FAILED" });
        s
    };
    Ok((out, code))
}

fn cmd_mu(gens: &str, point: Option<&str>, ring: &RingArgs, json: bool) -> CliResult {
    let ring = ring.build(&[gens])?;
    let polys = parse_poly_list(gens, &ring).map_err(|e| CliError::Input(format!("generators: {e}")))?;
    let ideal = Ideal::new(&ring, polys)?;
    let pt = parse_point(point, &ring)?;
    let mu = mu_at_point(&ideal, &pt)?;
    let kept = minimal_generators_at(&ideal, &pt)?;
    let out = if json {
        to_json(&serde_json::json!({
            "ring": ring.to_string(),
            "point": pt.coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "mu": mu,
            "minimal_generators": kept.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }))
    } else {
        let names: Vec<String> = kept.iter().map(ToString::to_string).collect();
        format!("{mu}\nminimal generators: {}\n", names.join(", "))
    };
    Ok((out, EXIT_OK))
}

fn corpus_text(summaries: &[CorpusSummary]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<12} {:>4} {:>3} {:>6} {:>5} {:<12} {:>3} {:>5}", "ring", "id", "k", "d_cert", "d_max", "verdict", "r", "k+1");
    for sum in summaries {
        for row in &sum.rows {
            let opt = |o: Option<u32>| o.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(
                s,
                "{:<12} {:>4} {:>3} {:>6} {:>5} {:<12} {:>3} {:>5}",
                row.ring.name(),
                row.id,
                row.k,
                row.d_cert.map_or("-".into(), |d| d.to_string()),
                row.d_max,
                format!("{:?}", row.verdict).to_lowercase(),
                opt(row.reduction_number),
                row.verified_at_k_plus_one.map_or("-".into(), |b| if b { "ok" } else { "FAIL" }.to_string()),
            );
        }
    }
    for sum in summaries {
        if let Some(first) = sum.rows.first() {
            let _ = writeln!(s, "{}: {}/{} verified (seed {})", first.ring.name(), sum.verified, sum.total, sum.seed);
        }
    }
    s
}

fn cmd_corpus(
    seed: u64,
    count: usize,
    ring: RingChoice,
    opts: CorpusOptions,
    json: bool,
) -> CliResult {
    let rings: &[CorpusRing] = match ring {
        RingChoice::Quv => &[CorpusRing::QUv],
        RingChoice::F101 => &[CorpusRing::F101Xyz],
        RingChoice::All => &[CorpusRing::QUv, CorpusRing::F101Xyz],
    };
    let summaries = rings
        .iter()
        .map(|&r| run_corpus(seed, &generate_corpus(seed, count, r), opts))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = summaries.iter().flat_map(|s| &s.rows);
    let code = if rows.clone().any(|r| r.verdict == Verdict::Refuted) {
        EXIT_REFUTED
    } else if rows.clone().any(|r| r.verdict == Verdict::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else if rows.clone().any(|r| r.verified_at_k_plus_one == Some(false)) {
        EXIT_INTERNAL
    } else {
        EXIT_OK
    };
    Ok((if json { to_json(&summaries) } else { corpus_text(&summaries) }, code))
}

fn dispatch(cfg: &RunConfig) -> CliResult {
    let json = cfg.json;
    match &cfg.command {
        Command::Content { series, ring } => cmd_content(series, ring, json),
        Command::Dm {
            f,
            g,
            k,
            point,
            dmax,
            min_exponent,
            kmax,
            certificates,
            ring,
        } => cmd_dm(f, g, *k, point.as_deref(), *dmax, *min_exponent, *kmax, *certificates, ring, json),
        Command::Counterexample { k, field } => cmd_counterexample(*k, field, json),
        Command::Rush => cmd_rush(json),
        Command::Reduction { f, g, k, dmax, ring } => cmd_reduction(f, g, *k, *dmax, ring, json),
        Command::Mu { gens, point, ring } => cmd_mu(gens, point.as_deref(), ring, json),
        Command::Corpus {
            seed,
            count,
            ring,
            corollary,
            monotonicity,
            threads,
        } => cmd_corpus(
            *seed,
            *count,
            *ring,
            CorpusOptions {
                corollary: *corollary,
                monotonicity: *monotonicity,
                threads: *threads,
            },
            json,
        ),
    }
}

/// Runs the command line `args` (program name first), writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cfg) {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            code
        }
        Err(CliError::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(CliError::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            EXIT_INTERNAL
        }
    }
}

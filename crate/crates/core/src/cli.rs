//! Command-line front end. The binary only forwards `std::env::args` here so
//! that every command can be driven from tests.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::characteristic::{
    analyze_spans, characteristic_matrix, enumerate_variants, verify_characteristic, Assembly, CharacteristicCheck,
    VariantMode,
};
use crate::error::Error;
use crate::oracle::{build_tb_trellis, state_profile, TrellisDescription, MAX_ENUMERATION_DIM};
use crate::poly::{reciprocal_dual, validate_canonical, Canonicality, PolyMatrix};
use crate::reduction::{
    dual_procedure, search_reduction, section_bound, verify_reduction, BoundCheck, CandidateRecord, DivisionMode,
    DualSelection, Outcome, ReductionReport, SearchOptions, Verdict, VerificationMethod,
};
use crate::span::{render_spans, Span};
use crate::tbgm::build_tbgm;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// Largest θN for which `characteristic --all-variants` enumerates every matrix.
const MAX_FULL_VARIANT_BITS: usize = 16;

#[derive(Debug, Parser)]
#[command(
    name = "tbtrellis",
    version,
    about = "Characteristic matrices and trellis reduction for tail-biting convolutional codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic matrix, span list and span structure.
    Characteristic {
        #[command(flatten)]
        encoder: EncoderArgs,
        /// Enumerate every characteristic matrix, not only the shift-symmetric ones.
        #[arg(long)]
        all_variants: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for an encoder of the same tail-biting code with fewer states.
    Reduce {
        #[command(flatten)]
        encoder: EncoderArgs,
        /// Print the outcome of every candidate.
        #[arg(long)]
        all_variants: bool,
        /// Try every power up to each column's monomial factor (default).
        #[arg(long, conflicts_with = "full_division")]
        partial_division: bool,
        /// Divide each column by its whole monomial factor.
        #[arg(long)]
        full_division: bool,
        /// Worker threads for candidate evaluation.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check that a reduced encoder generates the shifted code.
    Verify {
        #[command(flatten)]
        encoder: EncoderArgs,
        #[arg(long, group = "reduced", value_name = "OCTAL")]
        reduced_octal: Option<String>,
        #[arg(long, group = "reduced", value_name = "GRID")]
        reduced_poly: Option<String>,
        /// Per-column branch shifts, left negative, e.g. `-2,0`.
        #[arg(long, allow_hyphen_values = true, value_name = "S0,S1,...")]
        shift: String,
        #[arg(long)]
        json: bool,
    },
    /// Reduction through a reciprocal dual encoder.
    Dual {
        #[command(flatten)]
        encoder: EncoderArgs,
        #[arg(long)]
        json: bool,
    },
    /// Section-length bound for a reduction to exist.
    Bound {
        #[command(flatten)]
        encoder: EncoderArgs,
        #[arg(long)]
        json: bool,
    },
    /// Coefficient matrices, tail-biting generator matrix and trellis.
    Expand {
        #[command(flatten)]
        encoder: EncoderArgs,
        /// Write the tail-biting trellis as JSON.
        #[arg(long, value_name = "FILE")]
        trellis_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct EncoderArgs {
    /// Rate-1/n0 encoder in octal, e.g. "(7,5)"; rows separated by ";".
    #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
    pub octal: Option<String>,
    /// Polynomial grid, e.g. "1+D,D,1;D^2,1,1+D+D^2".
    #[arg(long)]
    pub poly: Option<String>,
    /// Section length N.
    #[arg(short = 'N', value_name = "N")]
    pub sections: usize,
    /// Proceed with a non-canonical encoder where the command allows it.
    #[arg(long)]
    pub force: bool,
}

impl EncoderArgs {
    fn parse(&self) -> Result<PolyMatrix, Error> {
        parse_encoder(self.octal.as_deref(), self.poly.as_deref())
    }
}

fn parse_encoder(octal: Option<&str>, poly: Option<&str>) -> Result<PolyMatrix, Error> {
    match (octal, poly) {
        (Some(o), None) => PolyMatrix::parse_octal(o),
        (None, Some(p)) => PolyMatrix::parse(p),
        _ => Err(Error::Parse("give exactly one of --octal and --poly".into())),
    }
}

fn parse_shift(s: &str) -> Result<Vec<i64>, Error> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("shift entry {t:?}: {e}")))
        })
        .collect()
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Response {
    fn ok(stdout: String) -> Self {
        Self::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Self {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Response {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Response::ok(text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Response {
    let result = match &cli.command {
        Command::Characteristic {
            encoder,
            all_variants,
            json,
        } => cmd_characteristic(encoder, *all_variants, *json),
        Command::Reduce {
            encoder,
            all_variants,
            full_division,
            jobs,
            json,
            ..
        } => {
            let division = if *full_division {
                DivisionMode::Full
            } else {
                DivisionMode::PerPower
            };
            cmd_reduce(encoder, *all_variants, division, *jobs, *json)
        }
        Command::Verify {
            encoder,
            reduced_octal,
            reduced_poly,
            shift,
            json,
        } => cmd_verify(encoder, reduced_octal.as_deref(), reduced_poly.as_deref(), shift, *json),
        Command::Dual { encoder, json } => cmd_dual(encoder, *json),
        Command::Bound { encoder, json } => cmd_bound(encoder, *json),
        Command::Expand {
            encoder,
            trellis_out,
            json,
        } => cmd_expand(encoder, trellis_out.as_ref(), *json),
    };
    result.unwrap_or_else(|e| Response::error(&e))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Parses the encoder and applies the canonical gate.
fn load(encoder: &EncoderArgs) -> Result<(PolyMatrix, Canonicality, Vec<String>), Error> {
    let g = encoder.parse()?;
    if encoder.sections < 2 {
        return Err(Error::SectionLength {
            n: encoder.sections,
            need: 2,
        });
    }
    let canon = validate_canonical(&g)?;
    let mut warnings = Vec::new();
    if !canon.is_canonical() {
        let msg = format!(
            "encoder is not canonical (basic = {}, reduced = {}, minor gcd {})",
            canon.basic, canon.reduced, canon.minor_gcd
        );
        if !encoder.force {
            return Err(Error::NonCanonical(format!("{msg}; pass --force to continue")));
        }
        warnings.push(msg);
    }
    Ok((g, canon, warnings))
}

fn with_warnings(mut r: Response, warnings: &[String]) -> Response {
    for w in warnings {
        let _ = writeln!(r.stderr, "warning: {w}");
    }
    r
}

#[derive(Debug, Serialize)]
struct VariantSummary {
    mode: VariantMode,
    exponent: usize,
    enumerated: usize,
    distinct: usize,
    all_valid: bool,
}

#[derive(Debug, Serialize)]
struct CharacteristicJson {
    encoder: PolyMatrix,
    octal: String,
    sections: usize,
    n: usize,
    k: usize,
    assembly: Assembly,
    rows: Vec<String>,
    spans: Vec<Span>,
    check: CharacteristicCheck,
    basic_spans: Vec<Span>,
    included: Vec<Vec<Span>>,
    theta: usize,
    variant_exponent: usize,
    ell: usize,
    ell_expected: usize,
    variants: Option<VariantSummary>,
}

fn cmd_characteristic(encoder: &EncoderArgs, all_variants: bool, json: bool) -> Result<Response, Error> {
    let (g, _, warnings) = load(encoder)?;
    let t = build_tbgm(&g, encoder.sections)?;
    let c = characteristic_matrix(&t)?;
    let s = analyze_spans(&c)?;
    let check = verify_characteristic(&c, &t.matrix);
    let variants = if all_variants {
        if s.variant_exponent() > MAX_FULL_VARIANT_BITS {
            return Err(Error::EnumerationBudget(format!(
                "2^{} characteristic matrices exceed the limit of 2^{MAX_FULL_VARIANT_BITS}",
                s.variant_exponent()
            )));
        }
        let mut seen = BTreeSet::new();
        let mut enumerated = 0;
        let mut all_valid = true;
        for v in enumerate_variants(&c, &s, VariantMode::Full)? {
            enumerated += 1;
            all_valid &= verify_characteristic(&v.pair, &t.matrix).passed();
            seen.insert(v.pair.rows);
        }
        Some(VariantSummary {
            mode: VariantMode::Full,
            exponent: s.variant_exponent(),
            enumerated,
            distinct: seen.len(),
            all_valid,
        })
    } else {
        None
    };
    let code = if check.passed() && variants.as_ref().is_none_or(|v| v.all_valid) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };

    let out = if json {
        to_json(&CharacteristicJson {
            encoder: g.clone(),
            octal: g.to_octal(),
            sections: encoder.sections,
            n: t.n(),
            k: c.dimension,
            assembly: c.assembly,
            rows: c.rows.iter().map(ToString::to_string).collect(),
            spans: c.spans.clone(),
            check,
            basic_spans: s.basic.clone(),
            included: s
                .included
                .iter()
                .map(|v| v.iter().map(|&r| c.spans[r]).collect())
                .collect(),
            theta: s.theta,
            variant_exponent: s.variant_exponent(),
            ell: s.ell,
            ell_expected: s.ell_expected,
            variants,
        })
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "encoder      {}  octal {}", g, g.to_octal());
        let _ = writeln!(
            o,
            "length       n = {}, k = {}, N = {}",
            t.n(),
            c.dimension,
            encoder.sections
        );
        let how = match c.assembly {
            Assembly::ShiftsOfFirstFrame => "shifts of the first frame",
            Assembly::AllFrames => "all frames",
        };
        let _ = writeln!(o, "characteristic matrix ({how})");
        o.push_str(&c.to_string());
        let _ = writeln!(o, "span list    {}", render_spans(&c.spans));
        let _ = writeln!(
            o,
            "checks       generates {}, spans fit rows {}, distinct endpoints {}, uniform coverage {}",
            check.generates, check.spans_fit_rows, check.distinct_endpoints, check.uniform_coverage
        );
        let _ = writeln!(o, "basic spans  {}", render_spans(&s.basic));
        for (b, inc) in s.basic.iter().zip(&s.included) {
            let inner: Vec<Span> = inc.iter().map(|&r| c.spans[r]).collect();
            let _ = writeln!(
                o,
                "  inside {b:<9} {}",
                if inner.is_empty() {
                    "-".into()
                } else {
                    render_spans(&inner)
                }
            );
        }
        let _ = writeln!(o, "theta        {}", s.theta);
        let count = s
            .variant_count()
            .map_or_else(|| "overflow".to_string(), |c| c.to_string());
        let _ = writeln!(o, "variants     2^{} = {count}", s.variant_exponent());
        let _ = writeln!(
            o,
            "ell          {} (n0((n0-k0)N+1) = {}) {}",
            s.ell,
            s.ell_expected,
            if s.ell == s.ell_expected { "ok" } else { "MISMATCH" }
        );
        if let Some(v) = &variants {
            let _ = writeln!(
                o,
                "all variants {} enumerated, {} distinct, all valid: {}",
                v.enumerated, v.distinct, v.all_valid
            );
        }
        o
    };
    Ok(with_warnings(Response::with_code(code, out), &warnings))
}

#[derive(Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ReduceStatus {
    Reduced,
    Exhausted,
}

/// JSON document printed by `reduce --json`.
#[derive(Debug, Serialize, serde::Deserialize)]
pub struct ReduceJson {
    pub status: ReduceStatus,
    pub report: Option<ReductionReport>,
    pub bound: BoundCheck,
    pub dual_attempted: bool,
}

fn describe_outcome(o: &Outcome) -> String {
    match o {
        Outcome::Rejected(r) => format!("rejected: {r:?}"),
        Outcome::NoReduction {
            g_prime,
            nu_prime,
            best_nu,
        } => {
            format!("G'(D) = {g_prime}  nu' = {nu_prime}, best after division {best_nu}: no reduction")
        }
        Outcome::Reduced {
            g_prime,
            nu_prime,
            reduced,
            nu_reduced,
            shift,
        } => {
            format!("G'(D) = {g_prime}  nu' = {nu_prime} -> {reduced}  nu = {nu_reduced}  shifts {shift:?}")
        }
    }
}

fn transcript(records: &[CandidateRecord]) -> String {
    let mut o = String::new();
    for r in records {
        let _ = writeln!(
            o,
            "  variant {:<3} basic {:<18} {}",
            r.variant,
            render_spans(&r.basic_spans),
            describe_outcome(&r.outcome)
        );
    }
    o
}

fn cmd_reduce(
    encoder: &EncoderArgs,
    all_variants: bool,
    division: DivisionMode,
    jobs: usize,
    json: bool,
) -> Result<Response, Error> {
    let (g, _, warnings) = load(encoder)?;
    let n = encoder.sections;
    let opts = SearchOptions {
        division,
        jobs: jobs.max(1),
        ..SearchOptions::default()
    };
    let out = search_reduction(&g, n, &opts)?;
    let mut report = out.report.clone();
    let dual_attempted = report.is_none() && 2 * g.nrows() > g.ncols();
    let mut dual_selections: Vec<DualSelection> = Vec::new();
    if dual_attempted {
        let d = dual_procedure(&g, n, &opts)?;
        report = d.report;
        dual_selections = d.selections;
    }
    let code = match &report {
        Some(r) if r.verification == Verdict::Pass => EXIT_OK,
        Some(_) => EXIT_VERIFY_FAILED,
        None => EXIT_EXHAUSTED,
    };
    let text = if json {
        to_json(&ReduceJson {
            status: if report.is_some() {
                ReduceStatus::Reduced
            } else {
                ReduceStatus::Exhausted
            },
            report,
            bound: out.bound,
            dual_attempted,
        })
    } else {
        let mut o = String::new();
        if all_variants {
            let _ = writeln!(o, "basic spans  {}", render_spans(&out.structure.basic));
            let _ = writeln!(o, "candidates");
            o.push_str(&transcript(&out.records));
            if dual_attempted {
                let _ = writeln!(o, "dual selections");
                for s in &dual_selections {
                    let _ = writeln!(
                        o,
                        "  variant {:<3} basic {:<10} {}",
                        s.variant,
                        render_spans(&s.basic_spans),
                        s.h_tilde_prime
                            .as_ref()
                            .map_or_else(|| format!("{:?}", s.rejection), |h| format!("H~'(D) = {h}"))
                    );
                }
            }
        }
        match &report {
            Some(r) => {
                let _ = writeln!(o, "{r}");
            }
            None => {
                let _ = writeln!(o, "exhausted: no candidate lowers nu = {}", g.constraint_length());
            }
        }
        let b = &out.bound;
        let _ = writeln!(
            o,
            "bound        k0((n0-k0)N+1) = {} <= n0(nu+k0) = {}: {}",
            b.lhs, b.rhs, b.holds
        );
        o
    };
    Ok(with_warnings(Response::with_code(code, text), &warnings))
}

#[derive(Debug, Serialize)]
struct VerifyJson {
    verdict: Verdict,
    method: VerificationMethod,
    shift: Vec<i64>,
    codewords: Option<usize>,
}

fn cmd_verify(
    encoder: &EncoderArgs,
    reduced_octal: Option<&str>,
    reduced_poly: Option<&str>,
    shift: &str,
    json: bool,
) -> Result<Response, Error> {
    let (g, _, warnings) = load(encoder)?;
    let reduced = parse_encoder(reduced_octal, reduced_poly)
        .map_err(|_| Error::Parse("give exactly one of --reduced-octal and --reduced-poly".into()))?;
    let shift = parse_shift(shift)?;
    let (verdict, method) = verify_reduction(&g, &reduced, &shift, encoder.sections)?;
    let k = build_tbgm(&g, encoder.sections)?.rank();
    let codewords = (method == VerificationMethod::Enumeration && k <= MAX_ENUMERATION_DIM).then(|| 1usize << k);
    let text = if json {
        to_json(&VerifyJson {
            verdict,
            method,
            shift,
            codewords,
        })
    } else {
        let count = codewords.map_or_else(String::new, |c| format!(" over {c} codewords"));
        format!("original {g}\nreduced  {reduced}\nshifts   {shift:?}\nverdict  {verdict:?} by {method:?}{count}\n")
    };
    let code = if verdict == Verdict::Pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok(with_warnings(Response::with_code(code, text), &warnings))
}

#[derive(Debug, Serialize)]
struct DualJson {
    check_matrix: PolyMatrix,
    reciprocal: PolyMatrix,
    dual_spans: Vec<Span>,
    dual_basic_spans: Vec<Span>,
    reversed_spans_match: bool,
    profile: Vec<usize>,
    dual_profile: Vec<usize>,
    selections: Vec<DualSelection>,
    report: Option<ReductionReport>,
}

fn cmd_dual(encoder: &EncoderArgs, json: bool) -> Result<Response, Error> {
    let (g, _, warnings) = load(encoder)?;
    let d = dual_procedure(&g, encoder.sections, &SearchOptions::default())?;
    let profile = state_profile(&g);
    let dual_profile = state_profile(&d.reciprocal);
    let code = match &d.report {
        Some(r) if r.verification == Verdict::Pass => EXIT_OK,
        Some(_) => EXIT_VERIFY_FAILED,
        None => EXIT_EXHAUSTED,
    };
    let text = if json {
        to_json(&DualJson {
            check_matrix: d.check_matrix.clone(),
            reciprocal: d.reciprocal.clone(),
            dual_spans: d.characteristic.spans.clone(),
            dual_basic_spans: d.structure.basic.clone(),
            reversed_spans_match: d.reversed_spans_match,
            profile,
            dual_profile,
            selections: d.selections.clone(),
            report: d.report.clone(),
        })
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "check matrix      H(D) = {}", d.check_matrix);
        let _ = writeln!(o, "reciprocal dual   H~(D) = {}", d.reciprocal);
        let _ = writeln!(o, "state profiles    G {:?}  H~ {:?}", profile, dual_profile);
        let _ = writeln!(o, "dual span list    {}", render_spans(&d.characteristic.spans));
        let _ = writeln!(
            o,
            "reversed primal   {}",
            if d.reversed_spans_match { "matches" } else { "differs" }
        );
        for s in &d.selections {
            let _ = write!(
                o,
                "selection variant {} basic {}",
                s.variant,
                render_spans(&s.basic_spans)
            );
            match (&s.h_tilde_prime, &s.g_prime) {
                (None, _) => {
                    let _ = writeln!(o, "  rejected {:?}", s.rejection);
                }
                (Some(h), None) => {
                    let _ = writeln!(o, "  H~'(D) = {h}  {}", s.note.clone().unwrap_or_default());
                }
                (Some(h), Some(gp)) => {
                    let _ = writeln!(o, "  H~'(D) = {h}  paired G'(D) = {gp}");
                    if let Some(c) = &s.check {
                        let _ = writeln!(
                            o,
                            "    conditions {} {} {} {} {} {}  concluded rank {:?}, direct rank {}",
                            c.primal_shift_structured,
                            c.primal_spans_minimal,
                            c.dual_independent,
                            c.dual_shift_structured,
                            c.dual_spans_minimal,
                            c.spans_complementary,
                            c.concluded_rank,
                            c.direct_rank
                        );
                    }
                    if let Some(r) = &s.reduction {
                        for step in &r.steps {
                            let _ = writeln!(o, "    {step}");
                        }
                    }
                    if let Some(note) = &s.note {
                        let _ = writeln!(o, "    {note}");
                    }
                }
            }
        }
        match &d.report {
            Some(r) => {
                let _ = writeln!(o, "{r}");
            }
            None => {
                let _ = writeln!(o, "exhausted: no dual selection lowers nu = {}", g.constraint_length());
            }
        }
        o
    };
    Ok(with_warnings(Response::with_code(code, text), &warnings))
}

#[derive(Debug, Serialize)]
struct BoundJson {
    n0: usize,
    k0: usize,
    nu: usize,
    sections: usize,
    #[serde(flatten)]
    bound: BoundCheck,
}

fn cmd_bound(encoder: &EncoderArgs, json: bool) -> Result<Response, Error> {
    let (g, _, warnings) = load(encoder)?;
    let (k0, n0, nu) = (g.nrows(), g.ncols(), g.constraint_length());
    if n0 <= k0 {
        return Err(Error::Dimension("the bound needs k0 < n0".into()));
    }
    let b = section_bound(n0, k0, nu, encoder.sections);
    let text = if json {
        to_json(&BoundJson {
            n0,
            k0,
            nu,
            sections: encoder.sections,
            bound: b,
        })
    } else {
        let max = b.max_sections.map_or_else(|| "none".into(), |m| m.to_string());
        format!(
            "k0((n0-k0)N+1) = {} <= n0(nu+k0) = {}: {}\nlargest N       {max}\n",
            b.lhs, b.rhs, b.holds
        )
    };
    Ok(with_warnings(Response::ok(text), &warnings))
}

#[derive(Debug, Serialize)]
struct ExpandJson {
    encoder: PolyMatrix,
    octal: String,
    coefficients: Vec<String>,
    tbgm: Vec<String>,
    rank: usize,
    check_matrix: Option<PolyMatrix>,
    reciprocal_dual: Option<PolyMatrix>,
    profile: Vec<usize>,
    trellis: Option<TrellisDescription>,
}

fn cmd_expand(encoder: &EncoderArgs, trellis_out: Option<&PathBuf>, json: bool) -> Result<Response, Error> {
    let (g, canon, warnings) = load(encoder)?;
    let t = build_tbgm(&g, encoder.sections)?;
    let e = g.expand();
    let h = (canon.is_canonical() && g.ncols() > g.nrows())
        .then(|| crate::poly::compute_check_matrix(&g))
        .transpose()?;
    let h_tilde = h.as_ref().map(reciprocal_dual);
    let trellis = match trellis_out {
        Some(path) => {
            let d = build_tb_trellis(&g, encoder.sections)?.describe();
            std::fs::write(path, to_json(&d))
                .map_err(|err| Error::Parse(format!("cannot write {}: {err}", path.display())))?;
            Some(d)
        }
        None => None,
    };
    let profile = state_profile(&g);
    let text = if json {
        to_json(&ExpandJson {
            encoder: g.clone(),
            octal: g.to_octal(),
            coefficients: e
                .coefficients
                .iter()
                .map(|m| m.rows().iter().map(ToString::to_string).collect::<Vec<_>>().join(";"))
                .collect(),
            tbgm: t.matrix.rows().iter().map(ToString::to_string).collect(),
            rank: t.rank(),
            check_matrix: h,
            reciprocal_dual: h_tilde,
            profile,
            trellis,
        })
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "encoder  {}  octal {}", g, g.to_octal());
        for (i, m) in e.coefficients.iter().enumerate() {
            let _ = writeln!(o, "G_{i}");
            for r in m.rows() {
                let _ = writeln!(o, "  {r}");
            }
        }
        let _ = writeln!(
            o,
            "tail-biting generator matrix, N = {}, rank {}",
            encoder.sections,
            t.rank()
        );
        o.push_str(&t.matrix.render_blocks(g.ncols()));
        if let (Some(h), Some(ht)) = (&h, &h_tilde) {
            let _ = writeln!(o, "check matrix     {h}");
            let _ = writeln!(o, "reciprocal dual  {ht}");
        }
        let _ = writeln!(o, "state profile    {profile:?}");
        if let (Some(path), Some(d)) = (trellis_out, &trellis) {
            let _ = writeln!(
                o,
                "trellis          {} states, {} edges per section -> {}",
                d.states.len(),
                d.edges.len(),
                path.display()
            );
        }
        o
    };
    Ok(with_warnings(Response::ok(text), &warnings))
}

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spp_core::characters::{
    char_closed_text, char_oracle_capped, CharValue, ClosedVariant, FormulaText, OracleVariant,
};
use spp_core::charpoly::{char_series, charpoly_brute, charpoly_closed};
use spp_core::cycle_index::CycleType;
use spp_core::egf::{chain_series, solve_fixed_point, table1};
use spp_core::homology::homology_dims;
use spp_core::invariants::{bounded_completion, count_multichains, mobius, zeta_polynomial};
use spp_core::series::BivariateEgf;
use spp_core::verify::{expected_top_dimension, run_suite, Caps, Suite, VerifyReport};
use spp_core::{build_poset, enumerate_spp, Error, GroundSet, Poly, PosetVariant, SppPoset};

/// Largest ground set the table command reads from the series.
const TABLE_SERIES_CAP: usize = 9;

#[derive(Parser)]
#[command(name = "spp", version, about = "Semi-pointed partition posets and their invariants")]
struct Cli {
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Replace every enumeration cap (prints a warning)
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Omit wall-clock timings so that output is byte-stable
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Unbounded,
    Bounded,
    Pointed,
    Unpointed,
}

impl From<Variant> for PosetVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Unbounded => PosetVariant::Unbounded,
            Variant::Bounded => PosetVariant::Bounded,
            Variant::Pointed => PosetVariant::PointedInterval,
            Variant::Unpointed => PosetVariant::UnpointedInterval,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    /// The fixed-point pair at k = -1
    Cminus1,
    /// Multichain series at level k
    Ck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CharVariant {
    /// Bounded poset: the t-family at t = 1
    Bounded,
    /// Sum over all maximal intervals
    Intervals,
    /// Sum over maximal intervals with a pointed one-block end
    Pointed,
    /// The whole t-family, checked at t = 1 and t = 0
    TFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Core,
    Homology,
    Characters,
    Hopf,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Core => Suite::Core,
            SuiteArg::Homology => Suite::Homology,
            SuiteArg::Characters => Suite::Characters,
            SuiteArg::Hopf => Suite::Hopf,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the semi-pointed partitions of (p, l)
    Enumerate {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        l: usize,
    },
    /// Export a poset as DOT or JSON
    Poset {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        variant: Variant,
    },
    /// Möbius number, zeta polynomial, homology and semimodularity of a poset
    Invariants {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        variant: Variant,
    },
    /// Counts by (p, l) from the series, cross-checked by enumeration
    Table {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Generating series coefficients
    Series {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Closed character formula against the fixed-point oracle
    Character {
        /// Cycle counts on pointable labels, by length
        #[arg(long, default_value = "")]
        lambda: String,
        /// Cycle counts on non-pointable labels, by length
        #[arg(long, default_value = "")]
        mu: String,
        #[arg(long, value_enum)]
        variant: CharVariant,
        /// Evaluate the uncorrected formulas
        #[arg(long)]
        original: bool,
    },
    /// Characteristic polynomial: product formula, series and Möbius function
    Charpoly {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        variant: Variant,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Outcome of a command: text to print and whether every check held.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

fn caps(cli: &Cli) -> Caps {
    let (mut caps, env) = Caps::from_env();
    if let Some(n) = env {
        eprintln!("warning: SPP_MAX_N={n} replaces the enumeration caps");
    }
    if let Some(n) = cli.cap {
        eprintln!("warning: --cap {n} replaces the enumeration caps");
        caps = Caps { posets: n, homology: n, hopf: n };
    }
    caps
}

fn ground(p: usize, l: usize, cap: usize) -> Result<GroundSet, CliError> {
    let gs = GroundSet::new(p, l)?;
    if gs.n() > cap {
        return Err(Error::CapExceeded { size: gs.n(), cap }.into());
    }
    Ok(gs)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn reject(format: Format, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("format {format:?} is not available for this command").to_lowercase()))
    }
}

fn cmd_enumerate(p: usize, l: usize, format: Format, caps: &Caps) -> Result<Output, CliError> {
    reject(format, &[Format::Human, Format::Json, Format::Csv])?;
    let gs = ground(p, l, caps.posets)?;
    let parts: Vec<String> = enumerate_spp(gs)?.iter().map(ToString::to_string).collect();
    Ok(Output::ok(match format {
        Format::Json => pretty(&json!({ "p": p, "l": l, "count": parts.len(), "partitions": parts })),
        Format::Csv => std::iter::once("partition".to_string()).chain(parts).map(|s| s + "\n").collect(),
        _ => {
            let mut out: String = parts.iter().map(|s| format!("{s}\n")).collect();
            let _ = writeln!(out, "{} semi-pointed partitions of {gs}", parts.len());
            out
        }
    }))
}

fn poset_json(sp: &SppPoset) -> Value {
    let p = &sp.poset;
    json!({
        "p": sp.ground.p,
        "l": sp.ground.l,
        "variant": sp.variant.name(),
        "elements": p.labels(),
        "ranks": p.ranks(),
        "covers": p.hasse_edges(),
    })
}

fn cmd_poset(p: usize, l: usize, variant: Variant, format: Format, caps: &Caps) -> Result<Output, CliError> {
    reject(format, &[Format::Dot, Format::Json])?;
    let gs = ground(p, l, caps.posets)?;
    let sp = build_poset(gs, variant.into())?;
    Ok(Output::ok(match format {
        Format::Json => pretty(&poset_json(&sp)),
        _ => sp.poset.to_dot(&format!("{} {gs}", sp.variant)),
    }))
}

fn cmd_invariants(p: usize, l: usize, variant: Variant, format: Format, caps: &Caps) -> Result<Output, CliError> {
    reject(format, &[Format::Human, Format::Json])?;
    let gs = ground(p, l, caps.posets)?;
    let v: PosetVariant = variant.into();
    let sp = build_poset(gs, v)?;
    let poset = &sp.poset;
    let completed = bounded_completion(poset);
    let mu = mobius(&completed, completed.bottom().unwrap(), completed.top().unwrap())?;
    let zeta = zeta_polynomial(poset)?;
    let multichains: Vec<String> = (1..=3).map(|k| count_multichains(poset, k).to_string()).collect();
    let dual = poset.dual();
    let witness = dual.semimodularity_witness().map(|(z, x, y, b)| {
        json!({ "z": dual.label(z), "x": dual.label(x), "y": dual.label(y), "b": dual.label(b) })
    });
    let dim = poset.dim();
    let homology = (gs.n() <= caps.homology).then(|| {
        let betti = homology_dims(poset);
        json!({
            "betti": betti.dims.iter().map(|(d, v)| (d.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "concentrated": betti.is_concentrated_in(dim as i64),
            "top": betti.get(dim as i64),
        })
    });
    let v = json!({
        "p": p,
        "l": l,
        "variant": v.name(),
        "elements": poset.len(),
        "length": poset.length(),
        "pure": poset.is_pure(),
        "mobius": mu.to_string(),
        "zeta": zeta.poly.to_string(),
        "multichains": multichains,
        "dual_totally_semimodular": witness.is_none(),
        "semimodularity_witness": witness,
        "homology": homology,
        "expected_top_dimension": expected_top_dimension(&gs, v)?.to_string(),
    });
    Ok(Output::ok(match format {
        Format::Json => pretty(&v),
        _ => human_object(&v),
    }))
}

fn human_object(v: &Value) -> String {
    let mut out = String::new();
    for (k, val) in v.as_object().expect("object") {
        let shown = match val {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        let _ = writeln!(out, "{k:<26} {shown}");
    }
    out
}

fn cmd_table(max_n: usize, format: Format, caps: &Caps) -> Result<Output, CliError> {
    reject(format, &[Format::Human, Format::Json, Format::Csv])?;
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    if max_n > TABLE_SERIES_CAP {
        return Err(Error::CapExceeded { size: max_n, cap: TABLE_SERIES_CAP }.into());
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for ((p, l), count) in table1(max_n) {
        let enumerated = if p + l <= caps.posets {
            Some(enumerate_spp(GroundSet::new(p, l)?)?.len())
        } else {
            None
        };
        let agree = enumerated.map(|e| count == e.into());
        ok &= agree != Some(false);
        rows.push((p, l, count, enumerated, agree));
    }
    let text = match format {
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|(p, l, c, e, a)| json!({ "p": p, "l": l, "series": c.to_string(), "enumeration": e, "agree": a }))
                .collect(),
        )),
        Format::Csv => {
            let mut out = "p,l,series,enumeration,agree\n".to_string();
            for (p, l, c, e, a) in &rows {
                let e = e.map(|e| e.to_string()).unwrap_or_default();
                let a = a.map(|a| a.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{p},{l},{c},{e},{a}");
            }
            out
        }
        _ => {
            let mut out = String::new();
            for p in 0..=max_n {
                let row: Vec<String> = rows
                    .iter()
                    .filter(|r| r.0 == p)
                    .map(|(_, _, c, _, a)| format!("{c}{}", if *a == Some(false) { "!" } else { "" }))
                    .collect();
                let _ = writeln!(out, "p={p:<2} {}", row.join(" "));
            }
            out
        }
    };
    Ok(Output { text, ok })
}

fn cmd_series(which: Which, k: usize, order: usize, format: Format) -> Result<Output, CliError> {
    reject(format, &[Format::Human, Format::Json, Format::Csv])?;
    let named: Vec<(&str, BivariateEgf)> = match which {
        Which::Cminus1 => {
            let (a, b) = solve_fixed_point(order);
            vec![("pointed", a), ("unpointed", b)]
        }
        Which::Ck => {
            let f = chain_series(k, order);
            vec![("pointed", f.pm), ("unpointed", f.um), ("all", f.all)]
        }
    };
    let text = match format {
        Format::Json => {
            let series: serde_json::Map<String, Value> = named
                .iter()
                .map(|(n, s)| (n.to_string(), serde_json::to_value(s.to_json()).expect("series serialize")))
                .collect();
            let k = match which {
                Which::Cminus1 => json!(-1),
                Which::Ck => json!(k),
            };
            pretty(&json!({ "k": k, "order": order, "series": series }))
        }
        Format::Csv => {
            let mut out = "series,p,l,num,den\n".to_string();
            for (n, s) in &named {
                for t in s.to_json().coeffs {
                    let _ = writeln!(out, "{n},{},{},{},{}", t.p, t.l, t.num, t.den);
                }
            }
            out
        }
        _ => {
            let mut out = String::new();
            for (n, s) in &named {
                let _ = writeln!(out, "{n}: exponential coefficients a(p,l) of x^p y^l / (p! l!)");
                for t in s.to_json().coeffs {
                    let c = if t.den == "1" { t.num } else { format!("{}/{}", t.num, t.den) };
                    let _ = writeln!(out, "  p={} l={} {c}", t.p, t.l);
                }
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn cmd_character(
    lambda: &str,
    mu: &str,
    variant: CharVariant,
    original: bool,
    format: Format,
    caps: &Caps,
) -> Result<Output, CliError> {
    reject(format, &[Format::Human, Format::Json])?;
    let ct = CycleType::parse(lambda, mu)?;
    let text = if original { FormulaText::Original } else { FormulaText::Corrected };
    let oracle = |v: OracleVariant| -> Result<Option<String>, CliError> {
        match char_oracle_capped(&ct, v, caps.posets) {
            Ok(r) => Ok(Some(r.to_string())),
            Err(Error::CapExceeded { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    let (closed, oracle, matched) = match variant {
        CharVariant::TFamily => {
            let c = char_closed_text(&ct, ClosedVariant::TFamily, text)?;
            let (o1, o0) = (oracle(OracleVariant::Bounded)?, oracle(OracleVariant::IntervalsSum)?);
            let matched = o1.as_ref().zip(o0.as_ref()).map(|(o1, o0)| {
                *o1 == c.at(1).to_string() && *o0 == c.at(0).to_string()
            });
            let closed = match &c {
                CharValue::Polynomial(p) => p.to_string(),
                CharValue::Number(r) => r.to_string(),
            };
            (closed, json!({ "t=1": o1, "t=0": o0 }), matched)
        }
        v => {
            let (cv, ov, at) = match v {
                CharVariant::Bounded => (ClosedVariant::TFamily, OracleVariant::Bounded, 1),
                CharVariant::Intervals => (ClosedVariant::IntervalsSum, OracleVariant::IntervalsSum, 0),
                _ => (ClosedVariant::PointedSum, OracleVariant::PointedSum, 0),
            };
            let c = char_closed_text(&ct, cv, text)?.at(at).to_string();
            let o = oracle(ov)?;
            let matched = o.as_ref().map(|o| *o == c);
            (c, json!(o), matched)
        }
    };
    let v = json!({
        "cycle_type": { "lambda": ct.lambda, "mu": ct.mu, "display": ct.to_string() },
        "closed": closed,
        "oracle": oracle,
        "match": matched,
    });
    let out = match format {
        Format::Json => pretty(&v),
        _ => human_object(&v),
    };
    Ok(Output { text: out, ok: matched != Some(false) })
}

fn cmd_charpoly(p: usize, l: usize, variant: Variant, format: Format, caps: &Caps) -> Result<Output, CliError> {
    reject(format, &[Format::Human, Format::Json])?;
    let gs = GroundSet::new(p, l)?;
    let v: PosetVariant = variant.into();
    v.check(&gs)?;
    let closed = match charpoly_closed(&gs, v) {
        Ok(c) => Some(c),
        Err(Error::InvalidVariant(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let series = if v == PosetVariant::Bounded {
        None
    } else {
        char_series(gs.n())?.extract(p, l, v)
    };
    let brute = if gs.n() <= caps.posets { Some(charpoly_brute(&gs, v, caps.posets)?) } else { None };
    let known: Vec<_> = [&closed, &series, &brute].into_iter().flatten().collect();
    let matched = known.windows(2).all(|w| w[0] == w[1]);
    let show = |x: &Option<Poly>| x.as_ref().map(ToString::to_string);
    let j = json!({
        "p": p,
        "l": l,
        "variant": v.name(),
        "closed": show(&closed),
        "series": show(&series),
        "mobius": show(&brute),
        "match": matched,
    });
    let out = match format {
        Format::Json => pretty(&j),
        _ => human_object(&j),
    };
    Ok(Output { text: out, ok: matched })
}

fn cmd_verify(
    suite: SuiteArg,
    max_n: usize,
    report: Option<&PathBuf>,
    timed: bool,
    format: Format,
    caps: &Caps,
) -> Result<Output, CliError> {
    reject(format, &[Format::Human, Format::Json])?;
    let rep: VerifyReport = run_suite(suite.into(), max_n, caps, timed)?;
    let json = serde_json::to_string_pretty(&rep).expect("reports serialize") + "\n";
    if let Some(path) = report {
        std::fs::write(path, &json).map_err(CliError::Io)?;
    }
    let text = match format {
        Format::Json => json,
        _ => {
            let mut out = String::new();
            for c in &rep.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                let _ = write!(out, "{mark} {} [{}]", c.name, c.parameters);
                if !c.pass {
                    let _ = write!(out, " expected {} got {}", c.expected, c.actual);
                }
                if let Some(ms) = c.wall_ms {
                    let _ = write!(out, " {ms:.1} ms");
                }
                out.push('\n');
            }
            let failed = rep.failures().count();
            let _ = writeln!(
                out,
                "suite {} max_n {}: {} checks, {failed} failed",
                rep.suite,
                rep.max_n,
                rep.checks.len()
            );
            out
        }
    };
    Ok(Output { text, ok: rep.pass })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let caps = caps(cli);
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Enumerate { p, l } => cmd_enumerate(*p, *l, fmt(Format::Human), &caps),
        Command::Poset { p, l, variant } => cmd_poset(*p, *l, *variant, fmt(Format::Dot), &caps),
        Command::Invariants { p, l, variant } => cmd_invariants(*p, *l, *variant, fmt(Format::Human), &caps),
        Command::Table { max_n } => cmd_table(*max_n, fmt(Format::Csv), &caps),
        Command::Series { which, k, order } => cmd_series(*which, *k, *order, fmt(Format::Human)),
        Command::Character { lambda, mu, variant, original } => {
            cmd_character(lambda, mu, *variant, *original, fmt(Format::Json), &caps)
        }
        Command::Charpoly { p, l, variant } => cmd_charpoly(*p, *l, *variant, fmt(Format::Human), &caps),
        Command::Verify { suite, max_n, report } => {
            cmd_verify(*suite, *max_n, report.as_ref(), !cli.no_timing, fmt(Format::Human), &caps)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

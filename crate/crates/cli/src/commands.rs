use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mcg_core::abelian::Abelianization;
use mcg_core::census::census;
use mcg_core::certify::{
    certify_distinct_genera, certify_general_target, index_divisibility, Certificate, GroupProfile,
};
use mcg_core::curves::{
    block_permutation, chain_with_box, pants_system, rotation_r1, rotation_r2, twist_rank,
    ChainData, DEFAULT_SEARCH_BOX,
};
use mcg_core::finite::{closure_evidence_suite, closure_for_seed, SeedKind, DEFAULT_SIZE_CAP};
use mcg_core::symplectic::{Order, SympMatrix};

use crate::formats::{parse_curve_system, parse_presentation, FormatError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "mcg",
    version,
    about = "Symplectic shadows of mapping class groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Coordinate bound for the chain constraint solver.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BOX)]
    pub seed_box: i64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order of delta = t1 ... t_{2g} on homology (expected 4g + 2).
    DeltaOrder { g: usize },
    /// Intersection pattern of the chain and delta(v_i) = ±v_{i+1}.
    ChainCheck { g: usize },
    /// delta^{2g+1} = -I and no smaller power of delta is I.
    Hyperelliptic { g: usize },
    /// Orders of the handle rotations r1 (order g) and r2 (order g - 1).
    Rotations { g: usize },
    /// gamma = t1 t2 t3 t4 in genus 4 has order 10.
    Gamma4,
    /// Normal closures in Sp(2g, Z/m). Without --seed runs the full suite.
    Quotient {
        g: usize,
        m: u64,
        /// delta^k, hyperelliptic, or twist-ratio (alias lemma2).
        #[arg(long)]
        seed: Option<SeedKind>,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Orders of periodic mapping classes in genus g, with branch data.
    Census { g: u64 },
    /// Abelianize a presentation file.
    Abelianize {
        file: PathBuf,
        /// Space-separated signed generator indices to map into the abelianization.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Rank of the twist group of a pants system (expected 3g - 3) or of a
    /// curve-system file.
    Rank {
        #[arg(required_unless_present = "system", conflicts_with = "system")]
        g: Option<usize>,
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Certificate that Mod_g -> Mod_h has small image for g > h.
    Certify {
        g: u64,
        h: u64,
        /// Mark this step failed before reporting.
        #[arg(long, hide = true)]
        fail_leaf: Option<usize>,
    },
    /// Certificate for homomorphisms Mod_g -> H from a profile of H.
    CertifyProfile {
        g: u64,
        #[arg(long, value_delimiter = ',')]
        exclude_orders: Vec<u64>,
        #[arg(long)]
        max_rank: Option<u64>,
        #[arg(long)]
        max_subgroup: Option<u64>,
        #[arg(long, hide = true)]
        fail_leaf: Option<usize>,
    },
    /// Numbers dividing the index of a finite-index normal subgroup.
    Divisibility { g: u64 },
}

/// A rendered command result.
#[derive(Debug, Clone)]
pub struct Report {
    pub ok: bool,
    pub text: String,
    pub doc: Value,
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.text.clone(),
            OutputFormat::Machine => {
                serde_json::to_string_pretty(&self.doc).expect("json values serialize")
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mcg_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for a failed check, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(mcg_core::Error::CheckFailed(_)) => 1,
            CliError::Format(FormatError::Core(mcg_core::Error::CheckFailed(_))) => 1,
            _ => 2,
        }
    }

    pub fn doc(&self, command: &str) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "ok": false,
            "error": self.to_string(),
        })
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::DeltaOrder { .. } => "delta-order",
            Command::ChainCheck { .. } => "chain-check",
            Command::Hyperelliptic { .. } => "hyperelliptic",
            Command::Rotations { .. } => "rotations",
            Command::Gamma4 => "gamma4",
            Command::Quotient { .. } => "quotient",
            Command::Census { .. } => "census",
            Command::Abelianize { .. } => "abelianize",
            Command::Rank { .. } => "rank",
            Command::Certify { .. } => "certify",
            Command::CertifyProfile { .. } => "certify-profile",
            Command::Divisibility { .. } => "divisibility",
        }
    }
}

fn doc(command: &str, ok: bool, body: Value) -> Value {
    let mut d = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "ok": ok,
    });
    if let (Value::Object(d), Value::Object(body)) = (&mut d, body) {
        d.extend(body);
    }
    d
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Finite(n) => json!(n),
        Order::ExceedsCap(c) => json!(format!("> {c}")),
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let name = cli.command.name();
    let chain = |g: usize| chain_with_box(g, cli.seed_box);
    let (ok, text, body) = match &cli.command {
        Command::DeltaOrder { g } => delta_order(&chain(*g)?)?,
        Command::ChainCheck { g } => chain_check(&chain(*g)?)?,
        Command::Hyperelliptic { g } => hyperelliptic(&chain(*g)?)?,
        Command::Rotations { g } => rotations(*g)?,
        Command::Gamma4 => gamma(&chain(4)?)?,
        Command::Quotient { g, m, seed, cap } => quotient(*g, *m, *seed, *cap)?,
        Command::Census { g } => census_cmd(*g),
        Command::Abelianize { file, word } => abelianize(file, word.as_deref())?,
        Command::Rank { g, system } => rank(*g, system.as_ref())?,
        Command::Certify { g, h, fail_leaf } => {
            certificate_parts(certify_distinct_genera(*g, *h)?, *fail_leaf)?
        }
        Command::CertifyProfile {
            g,
            exclude_orders,
            max_rank,
            max_subgroup,
            fail_leaf,
        } => {
            if *g == 0 {
                return Err(CliError::Usage("genus must be at least 1".into()));
            }
            let profile =
                GroupProfile::new(exclude_orders.iter().copied(), *max_subgroup, *max_rank)?;
            certificate_parts(certify_general_target(*g, &profile)?, *fail_leaf)?
        }
        Command::Divisibility { g } => {
            let d = index_divisibility(*g)?;
            let [a, b, c] = d.divisors;
            (
                true,
                format!("genus {g}\ndivisors {a} {b} {c}\nlcm {}\n", d.lcm),
                json!({"genus": g, "divisors": d.divisors, "lcm": d.lcm}),
            )
        }
    };
    Ok(Report {
        ok,
        text,
        doc: doc(name, ok, body),
    })
}

type Parts = (bool, String, Value);

fn delta_order(data: &ChainData) -> Result<Parts, CliError> {
    let g = data.genus() as u64;
    let expected = 4 * g + 2;
    let order = data.delta().order(expected + 1)?;
    let ok = order == Order::Finite(expected);
    Ok((
        ok,
        format!("genus {g}\norder of delta {order}\nexpected {expected}\n"),
        json!({"genus": g, "order": order_json(order), "expected": expected}),
    ))
}

fn chain_check(data: &ChainData) -> Result<Parts, CliError> {
    let g = data.genus();
    let sys = data.as_curve_system();
    let pattern = sys.check();
    let mut text = format!("genus {g}\n");
    let mut images = Vec::new();
    let mut ok = pattern.is_ok();
    match &pattern {
        Ok(()) => text.push_str("intersection pattern ok\n"),
        Err(e) => writeln!(text, "intersection pattern FAILED: {e}").unwrap(),
    }
    for i in 1..=2 * g + 1 {
        let target = if i == 2 * g + 1 { 1 } else { i + 1 };
        let image = data.delta().apply(data.class(i))?;
        let sign = image.sign_relative_to(data.class(target));
        ok &= sign.is_some();
        match sign {
            Some(s) => writeln!(
                text,
                "delta(v{i}) = {}v{target}",
                if s > 0 { "+" } else { "-" }
            ),
            None => writeln!(text, "delta(v{i}) = {image} is not ±v{target} FAILED"),
        }
        .unwrap();
        images.push(json!({"from": i, "to": target, "sign": sign}));
    }
    let classes: Vec<Value> = sys
        .names()
        .iter()
        .zip(sys.classes())
        .map(|(n, c)| json!({"label": n, "coords": c.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
        .collect();
    Ok((
        ok,
        text,
        json!({
            "genus": g,
            "pattern_ok": pattern.is_ok(),
            "classes": classes,
            "delta_images": images,
        }),
    ))
}

fn hyperelliptic(data: &ChainData) -> Result<Parts, CliError> {
    let g = data.genus() as u64;
    let d = data.delta();
    let minus = d.pow(2 * g as i64 + 1).is_minus_identity();
    let order = d.order(4 * g + 2)?;
    let ok = minus && order == Order::Finite(4 * g + 2);
    Ok((
        ok,
        format!(
            "genus {g}\ndelta^{} = -I: {minus}\norder of delta {order} (no smaller power is I: {})\n",
            2 * g + 1,
            order == Order::Finite(4 * g + 2)
        ),
        json!({"genus": g, "power": 2 * g + 1, "minus_identity": minus, "order": order_json(order)}),
    ))
}

fn rotation_facts(
    name: &str,
    m: &SympMatrix,
    expected: u64,
) -> Result<(bool, String, Value), CliError> {
    let order = m.order(expected + 1)?;
    let cycles = block_permutation(m).map(|p| p.cycle_lengths());
    let ok = order == Order::Finite(expected) && m.is_symplectic() && cycles.is_some();
    let text = format!(
        "{name}: order {order} (expected {expected}), symplectic {}, handle cycles {:?}\n",
        m.is_symplectic(),
        cycles.clone().unwrap_or_default()
    );
    let v = json!({
        "order": order_json(order),
        "expected": expected,
        "symplectic": m.is_symplectic(),
        "handle_cycles": cycles,
    });
    Ok((ok, text, v))
}

fn rotations(g: usize) -> Result<Parts, CliError> {
    let (ok1, t1, v1) = rotation_facts("r1", &rotation_r1(g)?, g as u64)?;
    let (ok2, t2, v2) = rotation_facts("r2", &rotation_r2(g)?, g as u64 - 1)?;
    Ok((
        ok1 && ok2,
        format!("genus {g}\n{t1}{t2}"),
        json!({"genus": g, "r1": v1, "r2": v2}),
    ))
}

fn gamma(data: &ChainData) -> Result<Parts, CliError> {
    let gamma = data.twist_word(1, 4)?;
    let order = gamma.order(11)?;
    let tenth = gamma.pow(10).is_identity();
    let fifth = gamma.pow(5).is_identity();
    let ok = order == Order::Finite(10) && tenth && !fifth;
    Ok((
        ok,
        format!("gamma = t1 t2 t3 t4 in genus 4\norder {order}\ngamma^10 = I: {tenth}\ngamma^5 = I: {fifth}\n"),
        json!({"order": order_json(order), "tenth_power_identity": tenth, "fifth_power_identity": fifth}),
    ))
}

fn quotient(g: usize, m: u64, seed: Option<SeedKind>, cap: usize) -> Result<Parts, CliError> {
    let records = match seed {
        Some(seed) => {
            let (ambient, c) = closure_for_seed(g, m, seed, cap)?;
            vec![(seed, c.subgroup.len(), ambient.len(), c.index)]
        }
        None => closure_evidence_suite(g, m, 2 * g as u32, cap)?
            .records
            .into_iter()
            .map(|r| (r.seed, r.closure_size, r.ambient_size, r.index))
            .collect(),
    };
    let mut text = format!("# finite-quotient evidence only; Sp({}, Z/{m})\n", 2 * g);
    for (s, c, a, i) in &records {
        writeln!(
            text,
            "genus={g} modulus={m} seed={s} closure={c} ambient={a} index={i}"
        )
        .unwrap();
    }
    let recs: Vec<Value> = records
        .iter()
        .map(|(s, c, a, i)| {
            json!({"genus": g, "modulus": m, "seed": s.to_string(), "closure_size": c, "ambient_size": a, "index": i})
        })
        .collect();
    Ok((true, text, json!({"evidence_only": true, "records": recs})))
}

fn census_cmd(g: u64) -> Parts {
    let report = census(g);
    let mut text = format!("genus {g}\norder  realizable  witness\n");
    let top = report.max_order.max(4 * g + 2);
    let mut rows = Vec::new();
    for n in 2..=top {
        let real = report.contains(n);
        let w = report.witnesses.get(&n);
        if real || n <= 4 * g + 2 {
            let wt = w.map(|w| w.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                text,
                "{n:>5}  {:<10}  {wt}",
                if real { "yes" } else { "no" }
            )
            .unwrap();
        }
        if real {
            rows.push(json!({
                "order": n,
                "witness": w.map(|w| json!({"n": w.n, "h": w.h, "indices": w.indices})),
            }));
        }
    }
    // Checks hold from genus 2 on; genus 0 and 1 are reported as looked up.
    let ok = g < 2
        || (report.max_order == 4 * g + 2
            && !report.contains(4 * g + 1)
            && report
                .realizable_primes
                .iter()
                .all(|&p| p <= g + 1 || p == 2 * g + 1));
    writeln!(text, "max order {}", report.max_order).unwrap();
    (
        ok,
        text,
        json!({
            "genus": g,
            "max_order": report.max_order,
            "realizable_orders": report.realizable_orders,
            "realizable_primes": report.realizable_primes,
            "orders": rows,
        }),
    )
}

fn parse_word(s: &str) -> Result<Vec<i64>, CliError> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("bad word entry {t:?}")))
        })
        .collect()
}

fn abelianize(file: &PathBuf, word: Option<&str>) -> Result<Parts, CliError> {
    let p = parse_presentation(&read(file)?)?;
    let ab = Abelianization::new(&p)?;
    let inv = ab.invariants();
    let mut text = format!(
        "generators {}\nrelators {}\nabelianization {inv}\n",
        p.generator_count(),
        p.relators().len()
    );
    let mut body = json!({
        "generators": p.generator_count(),
        "relators": p.relators().len(),
        "torsion": inv.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "free_rank": inv.free_rank,
        "invariants": inv.to_string(),
    });
    if let Some(w) = word {
        let img = ab.image(&parse_word(w)?)?;
        let coords: Vec<String> = img.coords.iter().map(|c| c.to_string()).collect();
        let order = img.order().map(|o| o.to_string());
        writeln!(
            text,
            "image ({}) of order {}",
            coords.join(", "),
            order.as_deref().unwrap_or("infinite")
        )
        .unwrap();
        body["image"] = json!({"coords": coords, "order": order});
    }
    Ok((true, text, body))
}

fn rank(g: Option<usize>, system: Option<&PathBuf>) -> Result<Parts, CliError> {
    match (g, system) {
        (Some(g), None) => {
            let r = twist_rank(&pants_system(g)?)?;
            let expected = 3 * g - 3;
            Ok((
                r == expected,
                format!("genus {g}\ntwist rank {r}\nexpected {expected}\n"),
                json!({"genus": g, "rank": r, "expected": expected}),
            ))
        }
        (None, Some(path)) => {
            let sys = parse_curve_system(&read(path)?)?;
            if let Err(e) = sys.check() {
                return Ok((
                    false,
                    format!("curve system check FAILED: {e}\n"),
                    json!({"genus": sys.genus(), "curves": sys.len(), "check": e.to_string()}),
                ));
            }
            let r = twist_rank(&sys)?;
            Ok((
                true,
                format!(
                    "genus {}\ncurves {}\ntwist rank {r}\n",
                    sys.genus(),
                    sys.len()
                ),
                json!({"genus": sys.genus(), "curves": sys.len(), "rank": r}),
            ))
        }
        _ => Err(CliError::Usage(
            "give either a genus or --system FILE".into(),
        )),
    }
}

/// The report `certify` and `certify-profile` print for `cert`.
pub fn certificate_report(
    command: &str,
    cert: Certificate,
    fail_leaf: Option<usize>,
) -> Result<Report, CliError> {
    let (ok, text, body) = certificate_parts(cert, fail_leaf)?;
    Ok(Report {
        ok,
        text,
        doc: doc(command, ok, body),
    })
}

fn certificate_parts(mut cert: Certificate, fail_leaf: Option<usize>) -> Result<Parts, CliError> {
    if let Some(i) = fail_leaf {
        cert.inject_fault(i)?;
    }
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|s| {
            json!({
                "claim": s.claim,
                "citation": s.citation,
                "fact": s.fact,
                "status": s.status.as_str(),
            })
        })
        .collect();
    let body = json!({
        "subject": cert.subject,
        "claimed": cert.claimed.as_str(),
        "conclusion": cert.conclusion().as_str(),
        "verified": cert.verified_steps(),
        "cited": cert.cited_steps(),
        "failed": cert.failed_steps(),
        "steps": steps,
    });
    Ok((cert.is_sound(), format!("{cert}\n"), body))
}

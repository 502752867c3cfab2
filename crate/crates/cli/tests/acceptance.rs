//! Acceptance suite. Prints one PASS/FAIL line per criterion with its
//! runtime against the pinned limit, and exits non-zero if any fails.

use std::process::{Command as Process, ExitCode};
use std::time::{Duration, Instant};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use mcg_cli::formats::parse_presentation;
use mcg_cli::{certificate_report, run, Cli};
use mcg_core::abelian::{delta_word, quotient_order_by_delta_power, Abelianization, Presentation};
use mcg_core::certify::{Certifier, Conclusion};
use mcg_core::curves::{pants_system, twist_product, twist_rank};
use mcg_core::finite::{
    ambient_generators, enumerate_group, normal_closure_in, seed_element, sp_order, SeedKind,
    DEFAULT_SIZE_CAP,
};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs a subcommand in-process in machine format.
fn cmd(args: &[&str]) -> Result<(i32, Value), String> {
    let mut full = vec!["mcg", "--format", "machine"];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(&full).map_err(|e| e.to_string())?;
    match run(&cli) {
        Ok(r) => Ok((r.exit_code(), r.doc)),
        Err(e) => Ok((e.exit_code(), e.doc(cli.command.name()))),
    }
}

/// Runs the built binary in machine format.
fn bin(args: &[&str]) -> Result<(i32, Value), String> {
    let o = Process::new(env!("CARGO_BIN_EXE_mcg"))
        .arg("--format")
        .arg("machine")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let v = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    Ok((o.status.code().unwrap_or(-1), v))
}

fn delta_order() -> Check {
    for g in 1..=8u64 {
        let (code, v) = bin(&["delta-order", &g.to_string()])?;
        ensure(code == 0 && v["order"] == 4 * g + 2, || {
            format!("g={g}: exit {code}, order {}", v["order"])
        })?;
    }
    Ok(())
}

fn hyperelliptic() -> Check {
    for g in 1..=8u64 {
        let (code, v) = cmd(&["hyperelliptic", &g.to_string()])?;
        ensure(
            code == 0 && v["minus_identity"] == true && v["order"] == 4 * g + 2,
            || format!("g={g}: {v}"),
        )?;
    }
    Ok(())
}

fn chain_action() -> Check {
    for g in 2..=8usize {
        let (code, v) = cmd(&["chain-check", &g.to_string()])?;
        let images = v["delta_images"].as_array().cloned().unwrap_or_default();
        ensure(code == 0 && images.len() == 2 * g + 1, || {
            format!("g={g}: exit {code}")
        })?;
        for (i, im) in images.iter().enumerate() {
            let to = if i == 2 * g { 1 } else { i + 2 };
            ensure(im["to"] == to && im["sign"].is_i64(), || {
                format!("g={g}: {im}")
            })?;
        }
    }
    Ok(())
}

fn gamma() -> Check {
    let (code, v) = cmd(&["gamma4"])?;
    ensure(
        code == 0 && v["order"] == 10 && v["tenth_power_identity"] == true,
        || v.to_string(),
    )
}

fn census_range() -> Check {
    for g in 2..=40u64 {
        let (code, v) = cmd(&["census", &g.to_string()])?;
        let orders: Vec<u64> =
            serde_json::from_value(v["realizable_orders"].clone()).map_err(|e| e.to_string())?;
        let primes: Vec<u64> =
            serde_json::from_value(v["realizable_primes"].clone()).map_err(|e| e.to_string())?;
        ensure(code == 0, || format!("g={g}: exit {code}"))?;
        ensure(v["max_order"] == 4 * g + 2, || {
            format!("g={g}: max {}", v["max_order"])
        })?;
        ensure(!orders.contains(&(4 * g + 1)), || {
            format!("g={g}: 4g+1 realized")
        })?;
        if let Some(p) = primes.iter().find(|&&p| p > g + 1 && p != 2 * g + 1) {
            return Err(format!("g={g}: prime {p} realized"));
        }
    }
    Ok(())
}

fn shipped(name: &str) -> Result<Presentation, String> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    parse_presentation(&text).map_err(|e| e.to_string())
}

fn abelianization() -> Check {
    for (g, file, order, per_k) in [(1usize, "mod1.pres", 12, 2usize), (2, "mod2.pres", 10, 4)] {
        let ab = Abelianization::new(&shipped(file)?).map_err(|e| e.to_string())?;
        let inv = ab.invariants();
        ensure(inv.to_string() == format!("Z/{order}"), || {
            format!("g={g}: {inv}")
        })?;
        for k in 1..=2 * g {
            let d = ab.image(&delta_word(g, k)).map_err(|e| e.to_string())?;
            let t = ab.image(&vec![1; per_k * k]).map_err(|e| e.to_string())?;
            ensure(d == t, || {
                format!("g={g}: delta^{k} is not t^{}", per_k * k)
            })?;
        }
    }
    let expected = [
        (1, 1, 2u32),
        (1, 2, 4),
        (2, 1, 2),
        (2, 2, 2),
        (2, 3, 2),
        (2, 4, 2),
    ];
    for (g, k, q) in expected {
        let got = quotient_order_by_delta_power(g, k).map_err(|e| e.to_string())?;
        ensure(got == q.into(), || {
            format!("(g,k)=({g},{k}): quotient order {got}, expected {q}")
        })?;
    }
    Ok(())
}

fn sp_size(g: usize, m: u64) -> Check {
    let t = enumerate_group(
        &ambient_generators(g, m).map_err(|e| e.to_string())?,
        DEFAULT_SIZE_CAP,
    )
    .map_err(|e| e.to_string())?;
    let formula = sp_order(g, m).map_err(|e| e.to_string())?;
    ensure(formula == t.len().into(), || {
        format!("|Sp({}, Z/{m})| = {} vs formula {formula}", 2 * g, t.len())
    })
}

fn finite_quotients() -> Check {
    let start = Instant::now();
    finite_small()?;
    let small = start.elapsed();
    ensure(small <= Duration::from_secs(10), || {
        format!("small groups took {:.3}s > 10s", small.as_secs_f64())
    })?;
    let start = Instant::now();
    finite_sp62()?;
    let big = start.elapsed();
    ensure(big <= Duration::from_secs(120), || {
        format!("Sp(6, Z/2) took {:.3}s > 120s", big.as_secs_f64())
    })
}

fn finite_small() -> Check {
    sp_size(1, 2)?;
    sp_size(2, 2)?;
    sp_size(2, 3)?;
    let (code, v) = cmd(&["quotient", "2", "3", "--seed", "hyperelliptic"])?;
    let r = &v["records"][0];
    ensure(
        code == 0 && r["closure_size"] == 2 && r["ambient_size"] == 51840 && r["index"] == 25920,
        || format!("closure of -I in Sp(4, Z/3): {r}"),
    )
}

fn finite_sp62() -> Check {
    let ambient = enumerate_group(
        &ambient_generators(3, 2).map_err(|e| e.to_string())?,
        DEFAULT_SIZE_CAP,
    )
    .map_err(|e| e.to_string())?;
    ensure(ambient.len() == 1_451_520, || {
        format!("|Sp(6, Z/2)| = {}", ambient.len())
    })?;
    ensure(
        sp_order(3, 2).map_err(|e| e.to_string())? == ambient.len().into(),
        || "order formula".into(),
    )?;
    for k in 1..=6 {
        let s = seed_element(3, 2, SeedKind::DeltaPower(k)).map_err(|e| e.to_string())?;
        let c = normal_closure_in(&ambient, &s, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
        ensure(c.index == 1, || format!("delta^{k}: index {}", c.index))?;
    }
    Ok(())
}

fn twist_rank_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1729);
    for g in 3..=8usize {
        let (code, v) = cmd(&["rank", &g.to_string()])?;
        ensure(code == 0 && v["rank"] == 3 * g - 3, || {
            format!("g={g}: {v}")
        })?;
        let sys = pants_system(g).map_err(|e| e.to_string())?;
        ensure(
            twist_rank(&sys).map_err(|e| e.to_string())? == 3 * g - 3,
            || format!("g={g}"),
        )?;
        for _ in 0..1000 {
            let n: Vec<i64> = loop {
                let n: Vec<i64> = (0..sys.len()).map(|_| rng.gen_range(-3..=3)).collect();
                if n.iter().any(|&x| x != 0) {
                    break n;
                }
            };
            let m = twist_product(&sys, &n).map_err(|e| e.to_string())?;
            ensure(!m.is_identity(), || {
                format!("g={g}: exponents {n:?} act trivially")
            })?;
        }
    }
    Ok(())
}

fn certificates() -> Check {
    let mut certifier = Certifier::new();
    for g in 1..=20u64 {
        for h in 0..g {
            let (code, v) = cmd(&["certify", &g.to_string(), &h.to_string()])?;
            let want = if g == 2 {
                Conclusion::OrderAtMost2
            } else {
                Conclusion::Trivial
            };
            let cert = certifier
                .certify_distinct_genera(g, h)
                .map_err(|e| e.to_string())?;
            ensure(code == 0 && v["failed"] == 0, || {
                format!("({g},{h}): exit {code}")
            })?;
            ensure(v["conclusion"] == cert.conclusion().as_str(), || {
                format!("({g},{h}): cli and library disagree")
            })?;
            ensure(cert.is_sound() && cert.conclusion() <= want, || {
                format!("({g},{h}): concluded {}", cert.conclusion())
            })?;
            for i in 0..cert.steps.len() {
                let r = certificate_report("certify", cert.clone(), Some(i))
                    .map_err(|e| e.to_string())?;
                ensure(
                    r.exit_code() == 1 && r.doc["conclusion"] == "no-obstruction",
                    || format!("({g},{h}): fault at step {i} left exit {}", r.exit_code()),
                )?;
            }
        }
    }
    for (g, h) in [(3, 2), (2, 1)] {
        let (code, _) = bin(&[
            "certify",
            &g.to_string(),
            &h.to_string(),
            "--fail-leaf",
            "0",
        ])?;
        ensure(code == 1, || {
            format!("binary ({g},{h}) with fault exited {code}")
        })?;
    }
    Ok(())
}

fn divisibility() -> Check {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    for g in 3..=20u64 {
        let (code, v) = cmd(&["divisibility", &g.to_string()])?;
        let (a, b, c) = (g - 1, g, 2 * g + 1);
        let ab = a / gcd(a, b) * b;
        let lcm = ab / gcd(ab, c) * c;
        ensure(
            code == 0 && v["divisors"] == serde_json::json!([a, b, c]) && v["lcm"] == lcm,
            || format!("g={g}: {v}"),
        )?;
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    check: fn() -> Check,
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion {
            name: "1 order of delta, g = 1..8",
            limit: s(1),
            check: delta_order,
        },
        Criterion {
            name: "2 hyperelliptic action, g = 1..8",
            limit: s(1),
            check: hyperelliptic,
        },
        Criterion {
            name: "3 chain action, g = 2..8",
            limit: s(1),
            check: chain_action,
        },
        Criterion {
            name: "4 gamma in genus 4 has order 10",
            limit: s(1),
            check: gamma,
        },
        Criterion {
            name: "5 torsion census, g = 2..40",
            limit: s(30),
            check: census_range,
        },
        Criterion {
            name: "6 abelianization of Mod_1, Mod_2",
            limit: s(1),
            check: abelianization,
        },
        Criterion {
            name: "7 finite quotients and normal closures",
            limit: s(130),
            check: finite_quotients,
        },
        Criterion {
            name: "8 twist rank and injectivity, g = 3..8",
            limit: s(5),
            check: twist_rank_check,
        },
        Criterion {
            name: "9 certificate grid h < g <= 20",
            limit: s(60),
            check: certificates,
        },
        Criterion {
            name: "10 index divisibility, g = 3..20",
            limit: s(1),
            check: divisibility,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let took = start.elapsed();
        let verdict = match (&result, took <= c.limit) {
            (Ok(()), true) => "PASS",
            _ => "FAIL",
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        let detail = match result {
            Ok(()) if took > c.limit => " (over time limit)".to_string(),
            Ok(()) => String::new(),
            Err(e) => format!(" ({e})"),
        };
        println!(
            "{verdict} criterion {}: {:.3}s / {}s{detail}",
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

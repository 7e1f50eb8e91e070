//! Acceptance criteria, one PASS/FAIL line each. Tolerances and time limits
//! are fixed below.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use levelrank::branching::{mirror_transport, verify_equivalence_fusion, verify_exhaustion, verify_trace_form};
use levelrank::cyclotomic::{qint, Cyclotomic};
use levelrank::fusion::{rotation_check, verlinde_check, FusionRing};
use levelrank::partitions::{enumerate_rectangle, Partition};
use levelrank::qdim::{category_dim, qdim_partition};
use levelrank::smatrix::{central_charge, conformal_weight, s_matrix, twist_pairing};
use levelrank::symfunc::verify_skew_cauchy;
use levelrank::weights::{enumerate_graded, enumerate_level, tau_from_partition, LevelWeight};

const STANLEY_TOLERANCE: f64 = 1e-12;
const VERLINDE_TOLERANCE: f64 = 1e-6;
const VERLINDE_BITS: usize = 128;
const TWIST_TOLERANCE: f64 = 1e-8;
const GOLDEN_TABLE_LIMIT: Duration = Duration::from_secs(1);
const EXHAUSTION_LIMIT: Duration = Duration::from_secs(60);
const CAUCHY_LIMIT: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_levelrank"))
        .args(args)
        .arg("--json")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), format!("exit status {}", out.status))?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn ints(v: &Value) -> Vec<usize> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|x| x.as_u64().expect("integer") as usize)
        .collect()
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn w(labels: &[usize]) -> LevelWeight {
    LevelWeight::new(labels.to_vec()).unwrap()
}

fn golden_table() -> Outcome {
    let start = Instant::now();
    let j = cli_json(&["branch", "3", "6", "0"])?;
    let t = within(GOLDEN_TABLE_LIMIT, start)?;
    let summands = j["summands"].as_array().ok_or("no summands")?;
    let got: Vec<(Vec<usize>, Vec<usize>)> = summands
        .iter()
        .map(|s| (ints(&s["left_partition"]), ints(&s["right_partition"])))
        .collect();
    let expected: BTreeSet<(Vec<usize>, Vec<usize>)> = [
        (vec![], vec![]),
        (vec![2, 1], vec![2, 1, 1, 1, 1]),
        (vec![5, 4], vec![3, 2, 1]),
        (vec![4, 2], vec![2, 2, 1, 1]),
        (vec![3], vec![3, 3, 2, 2, 2]),
        (vec![6, 3], vec![2, 2, 2]),
        (vec![5, 1], vec![3, 3, 3, 2, 1]),
        (vec![6], vec![3, 3, 3, 3]),
        (vec![3, 3], vec![3, 1, 1, 1]),
        (vec![6, 6], vec![3, 3]),
    ]
    .into_iter()
    .collect();
    let distinct: BTreeSet<_> = got.iter().cloned().collect();
    ensure(got.len() == 10 && distinct.len() == 10, format!("{} summands", got.len()))?;
    ensure(distinct == expected, format!("table differs: {got:?}"))?;
    Ok(format!("10 pairs, multiplicity 1, {t:?}"))
}

fn golden_tau_chain() -> Outcome {
    let j = cli_json(&["branch", "3", "6", "13"])?;
    let found = j["summands"].as_array().ok_or("no summands")?.iter().any(|s| {
        ints(&s["left"]) == [3, 2, 1]
            && ints(&s["right"]) == [1, 0, 0, 1, 1, 0]
            && ints(&s["left_partition"]) == [3, 1]
            && ints(&s["right_partition"]) == [2, 2, 2, 1]
    });
    ensure(found, "pair ((3,2,1),(1,0,0,1,1,0)) missing")?;
    Ok("(3,1) ⊠ (2,2,2,1) ⊂ Λ_13".into())
}

fn stanley_golden() -> Outcome {
    let (n, m) = (4, 4);
    let dim = qdim_partition(&p(&[4, 3, 1]), n, m).map_err(|e| e.to_string())?;
    let expected = &qint(7, n, m) * &qint(5, n, m).pow(2);
    ensure(dim == expected, format!("{dim} ≠ [7][5]^2"))?;
    ensure(dim.conductor() == 16, "wrong field")?;
    let s = |k: f64| (k * std::f64::consts::PI / 8.0).sin();
    let sine_product = s(7.0) * s(5.0).powi(2) / s(1.0).powi(3);
    let embedded = dim.embed(128);
    let dev = (embedded.re.to_f64() - sine_product).abs();
    ensure(dev < STANLEY_TOLERANCE, format!("deviation {dev:e}"))?;
    Ok(format!("exact in Q(ζ_16); sine-product deviation {dev:.1e}"))
}

fn exhaustion() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for n in 2..=5 {
        for m in 2..=5 {
            for i in 0..(n * m) as i64 {
                let v = verify_exhaustion(n, m, i).map_err(|e| e.to_string())?;
                ensure(v.holds, format!("({n},{m},{i}): difference {}", v.difference))?;
                checks += 1;
            }
        }
    }
    let t = within(EXHAUSTION_LIMIT, start)?;
    Ok(format!("{checks} graded pieces exact, {t:?}"))
}

fn tau_bijective() -> Outcome {
    let mut checks = 0;
    for n in 2..=6 {
        for m in 2..=6 {
            for i in 0..(n * m) as i64 {
                let source = enumerate_graded(n, m, i).unwrap();
                let mut images = Vec::new();
                for a in &source {
                    let b = a.tau(i).map_err(|e| e.to_string())?;
                    ensure(b.tau(i).unwrap() == *a, format!("({n},{m},{i}) {a}: not an involution"))?;
                    images.push(b);
                    checks += 1;
                }
                images.sort();
                ensure(images == enumerate_graded(m, n, i).unwrap(), format!("({n},{m},{i}): not a bijection"))?;
            }
            for lambda in enumerate_rectangle(n, m) {
                let a = LevelWeight::from_partition(&lambda, n, m).unwrap();
                for i in (lambda.size() % n..n * m).step_by(n) {
                    let direct = tau_from_partition(&lambda, n, m, i as i64).unwrap();
                    ensure(direct == a.tau(i as i64).unwrap(), format!("({n},{m},{i}) preimage {lambda}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} checks, 0 failures"))
}

fn skew_cauchy() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(usize, usize)> = (2..=3).flat_map(|n| (2..=3).map(move |m| (n, m))).collect();
    cases.push((2, 4));
    let mut checks = 0;
    for (n, m) in cases {
        for i in 0..=n * m {
            let v = verify_skew_cauchy(n, m, i);
            ensure(v.holds, format!("({n},{m},{i}): nonzero difference"))?;
            checks += 1;
        }
    }
    let t = within(CAUCHY_LIMIT, start)?;
    Ok(format!("{checks} identities exact, {t:?}"))
}

fn rotation() -> Outcome {
    let mut checks = 0;
    for n in 2..=4 {
        for m in 1..=4 {
            let ring = FusionRing::new(n, m).unwrap();
            for a in ring.weights() {
                let v = rotation_check(&ring, a).map_err(|e| e.to_string())?;
                ensure(v.holds, format!("({n},{m}): σ ⊗ {a} = {}", v.product))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} weights"))
}

fn level_one() -> Outcome {
    for big in 2..=10 {
        let ring = FusionRing::new(big, 1).unwrap();
        for i in 0..big {
            for j in 0..big {
                let a = LevelWeight::fundamental(big, i).unwrap();
                let b = LevelWeight::fundamental(big, j).unwrap();
                let c = LevelWeight::fundamental(big, (i + j) % big).unwrap();
                let got = ring.fuse(&a, &b).map_err(|e| e.to_string())?;
                ensure(got.as_simple() == Some(&c), format!("N={big}: Λ_{i} ⊗ Λ_{j} = {got}"))?;
            }
        }
        let fp = category_dim(big, 1).unwrap();
        ensure(fp == Cyclotomic::from_i64(big as i64, 2 * (big + 1)), format!("N={big}: FP = {fp}"))?;
    }
    Ok("N = 2..10".into())
}

fn verlinde() -> Outcome {
    let mut worst = 0.0f64;
    for (n, m) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let ring = FusionRing::new(n, m).unwrap();
        let s = s_matrix(n, m, VERLINDE_BITS).map_err(|e| e.to_string())?;
        let report = verlinde_check(&ring, &s, VERLINDE_TOLERANCE).map_err(|e| e.to_string())?;
        ensure(report.holds(), format!("({n},{m}): {} mismatches", report.mismatches.len()))?;
        worst = worst.max(report.max_deviation);
    }
    Ok(format!("all triples agree; max distance to integer {worst:.1e}"))
}

fn charges() -> Outcome {
    for n in 2..=50 {
        for m in 2..=50 {
            let c = central_charge(n, m, 1).unwrap();
            ensure(c.equal(), format!("({n},{m}): {} vs {}", c.ambient, c.pair))?;
        }
    }
    let c = central_charge(2, 2, 2).unwrap();
    ensure(!c.equal(), "k = 2 unexpectedly equal")?;
    Ok(format!("k=1 equal for 2..50; k=2: {} vs {}", c.ambient, c.pair))
}

fn equivalence() -> Outcome {
    let mut triples = 0;
    for (n, m) in [(2, 3), (3, 2), (2, 4), (2, 5)] {
        let v = verify_equivalence_fusion(n, m).map_err(|e| e.to_string())?;
        ensure(v.holds(), format!("({n},{m}): {:?}", v.failures.first()))?;
        triples += v.triples;
    }
    Ok(format!("{triples} degree-zero triples"))
}

fn mirror() -> Outcome {
    let report = mirror_transport(&[w(&[10, 0]), w(&[4, 6])]).map_err(|e| e.to_string())?;
    let target = w(&[0, 0, 0, 1, 0, 0, 0, 1, 0, 0]);
    let image: BTreeSet<_> = report.image.iter().cloned().collect();
    let expected: BTreeSet<_> = [LevelWeight::vacuum(10, 2).unwrap(), target.clone()].into_iter().collect();
    ensure(image == expected, format!("image {:?}", report.image))?;
    let h = conformal_weight(&target);
    ensure(h == 2.into(), format!("h = {h}"))?;
    Ok("{1, (4,6)} ↦ {1, (0,0,0,1,0,0,0,1,0,0)}, h = 2".into())
}

fn trace_form() -> Outcome {
    let mut pairs = 0;
    for (n, m) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let v = verify_trace_form(n, m).map_err(|e| e.to_string())?;
        ensure(v.holds(), format!("({n},{m}): {:?}", v.failures.first()))?;
        pairs += v.pairs_checked;
    }
    Ok(format!("{pairs} basis pairs"))
}

fn cardinality() -> Outcome {
    let binomial = |n: u64, k: u64| (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1));
    for n in 2..=8 {
        for m in 1..=8 {
            let got = enumerate_level(n, m).unwrap().len() as u64;
            let want = binomial((n + m - 1) as u64, (n - 1) as u64);
            ensure(got == want, format!("|C_{{{n},{m}}}| = {got} ≠ {want}"))?;
        }
    }
    Ok("n, m ≤ 8".into())
}

fn twist_sweep() -> Outcome {
    let mut checked = 0;
    for n in 2..=4 {
        for m in 2..=4 {
            let r = twist_pairing(n, m).map_err(|e| e.to_string())?;
            ensure(r.holds(TWIST_TOLERANCE), format!("({n},{m}): {:?}", r.failures.first()))?;
            checked += r.checked;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("1  golden branching table", golden_table),
        ("2  golden τ chain", golden_tau_chain),
        ("3  Stanley golden value", stanley_golden),
        ("4  exhaustion", exhaustion),
        ("5  τ bijectivity", tau_bijective),
        ("6  skew Cauchy", skew_cauchy),
        ("7  rotation fusion", rotation),
        ("8  level-one fusion", level_one),
        ("9  Kac–Walton vs Verlinde", verlinde),
        ("10 central charges", charges),
        ("11 degree-zero equivalence", equivalence),
        ("12 mirror example", mirror),
        ("13 trace form", trace_form),
        ("14 cardinality", cardinality),
        ("+  twist pairing sweep", twist_sweep),
    ];
    let mut failures = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

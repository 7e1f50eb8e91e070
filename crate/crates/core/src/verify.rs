//! Named invariant suites swept over `2 ≤ n, m ≤ bound`.
//!
//! Each suite returns a [`SuiteReport`] listing how many checks ran and a
//! human-readable line for every counterexample. Cases run in parallel on the
//! current rayon pool; results are assembled in case order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::branching::{
    branch, mirror_transport, transport, verify_equivalence_fusion, verify_exhaustion, verify_lower_bound,
    verify_sigma_pairs, verify_trace_form,
};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::fusion::{default_verlinde_tolerance, product_dimension, rotation_check, verlinde_check, FusionRing};
use crate::partitions::enumerate_rectangle;
use crate::qdim::{category_dim, qdim};
use crate::smatrix::{central_charge, s_matrix, twist_pairing};
use crate::symfunc::verify_skew_cauchy;
use crate::weights::{enumerate_graded, enumerate_level, LevelWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cardinality,
    Tau,
    Exhaustion,
    Cauchy,
    Fusion,
    Rotation,
    LevelOne,
    Verlinde,
    Smatrix,
    Twist,
    CentralCharge,
    Equivalence,
    Mirror,
    TraceForm,
    LowerBound,
    Branching,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::Cardinality,
        Suite::Tau,
        Suite::Exhaustion,
        Suite::Cauchy,
        Suite::Fusion,
        Suite::Rotation,
        Suite::LevelOne,
        Suite::Verlinde,
        Suite::Smatrix,
        Suite::Twist,
        Suite::CentralCharge,
        Suite::Equivalence,
        Suite::Mirror,
        Suite::TraceForm,
        Suite::LowerBound,
        Suite::Branching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cardinality => "cardinality",
            Suite::Tau => "tau",
            Suite::Exhaustion => "exhaustion",
            Suite::Cauchy => "cauchy",
            Suite::Fusion => "fusion",
            Suite::Rotation => "rotation",
            Suite::LevelOne => "level-one",
            Suite::Verlinde => "verlinde",
            Suite::Smatrix => "smatrix",
            Suite::Twist => "twist",
            Suite::CentralCharge => "central-charge",
            Suite::Equivalence => "equivalence",
            Suite::Mirror => "mirror",
            Suite::TraceForm => "trace-form",
            Suite::LowerBound => "lower-bound",
            Suite::Branching => "branching",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Sweep parameters shared by all suites.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepConfig {
    /// Largest `n` and `m`.
    pub bound: usize,
    /// Binary precision for numeric suites.
    pub bits: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { bound: 4, bits: 128 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bound: usize,
    pub checks: usize,
    pub counterexamples: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<15} bound={} checks={} ({} ms)",
            self.suite.name(),
            self.bound,
            self.checks,
            self.elapsed_ms
        )?;
        for c in &self.counterexamples {
            write!(f, "\n    counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Outcome of one `(n, m)` case: checks run and counterexamples found.
type Case = Result<(usize, Vec<String>)>;

fn pairs(lo_n: usize, lo_m: usize, bound: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in lo_n..=bound {
        for m in lo_m..=bound {
            out.push((n, m));
        }
    }
    out
}

fn sweep(cases: Vec<(usize, usize)>, f: impl Fn(usize, usize) -> Case + Sync) -> Result<(usize, Vec<String>)> {
    let results: Vec<(usize, Vec<String>)> = cases.into_par_iter().map(|(n, m)| f(n, m)).collect::<Result<_>>()?;
    Ok(results.into_iter().fold((0, Vec::new()), |(c, mut bad), (k, more)| {
        bad.extend(more);
        (c + k, bad)
    }))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

pub fn run_suite(suite: Suite, config: SweepConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let bound = config.bound.max(2);
    let (checks, counterexamples) = match suite {
        Suite::Cardinality => sweep(pairs(2, 1, bound), |n, m| {
            let got = enumerate_level(n, m)?.len() as u64;
            let want = binomial((n + m - 1) as u64, (n - 1) as u64);
            let rect = enumerate_rectangle(n, m).len() as u64;
            let want_rect = binomial((n + m) as u64, n as u64);
            let mut bad = Vec::new();
            if got != want {
                bad.push(format!("|C_{{{n},{m}}}| = {got}, expected {want}"));
            }
            if rect != want_rect {
                bad.push(format!("|I_{{{n},{m}}}| = {rect}, expected {want_rect}"));
            }
            Ok((2, bad))
        })?,
        Suite::Tau => sweep(pairs(2, 2, bound), tau_case)?,
        Suite::Exhaustion => sweep(pairs(2, 2, bound), |n, m| {
            let mut bad = Vec::new();
            for i in 0..(n * m) as i64 {
                let v = verify_exhaustion(n, m, i)?;
                if !v.holds {
                    bad.push(format!("({n},{m},{i}): lhs - rhs = {}", v.difference));
                }
            }
            Ok((n * m, bad))
        })?,
        Suite::Cauchy => {
            let cases = pairs(2, 2, bound).into_iter().filter(|&(n, m)| n * m <= 12).collect();
            sweep(cases, |n, m| {
                let mut bad = Vec::new();
                for i in 0..=n * m {
                    let v = verify_skew_cauchy(n, m, i);
                    if !v.holds {
                        bad.push(format!("({n},{m},{i}): difference {}", v.difference));
                    }
                }
                Ok((n * m + 1, bad))
            })?
        }
        Suite::Fusion => sweep(pairs(2, 1, bound.min(4)), fusion_case)?,
        Suite::Rotation => sweep(pairs(2, 1, bound), |n, m| {
            let ring = FusionRing::new(n, m)?;
            let mut bad = Vec::new();
            for a in ring.weights() {
                let v = rotation_check(&ring, a)?;
                if !v.holds {
                    bad.push(format!("({n},{m}): σ ⊗ {a} = {}, expected {}", v.product, v.expected));
                }
            }
            Ok((ring.weights().len(), bad))
        })?,
        Suite::LevelOne => {
            let cases = (2..=bound * bound).map(|big| (big, 1)).collect();
            sweep(cases, |big, _| {
                let ring = FusionRing::new(big, 1)?;
                let mut bad = Vec::new();
                for i in 0..big {
                    for j in 0..big {
                        let a = LevelWeight::fundamental(big, i)?;
                        let b = LevelWeight::fundamental(big, j)?;
                        let c = LevelWeight::fundamental(big, i + j)?;
                        let got = ring.fuse(&a, &b)?;
                        if got.as_simple() != Some(&c) {
                            bad.push(format!("N={big}: Λ_{i} ⊗ Λ_{j} = {got}"));
                        }
                    }
                }
                let fp = category_dim(big, 1)?;
                if fp != Cyclotomic::from_i64(big as i64, 2 * (big + 1)) {
                    bad.push(format!("N={big}: FP = {fp}"));
                }
                Ok((big * big + 1, bad))
            })?
        }
        Suite::Verlinde => sweep(pairs(2, 1, bound), |n, m| {
            let ring = FusionRing::new(n, m)?;
            let s = s_matrix(n, m, config.bits)?;
            let report = verlinde_check(&ring, &s, default_verlinde_tolerance(config.bits))?;
            let bad = report
                .mismatches
                .iter()
                .map(|x| format!("({n},{m}) N_{{{},{}}}^{{{}}}: Verlinde {} vs Kac–Walton {}", x.a, x.b, x.c, x.verlinde, x.kac_walton))
                .collect();
            Ok((report.triples, bad))
        })?,
        Suite::Smatrix => sweep(pairs(2, 1, bound), |n, m| {
            let s = s_matrix(n, m, config.bits)?;
            let tol = 1e-10;
            let mut bad = Vec::new();
            let mut record = |what: &str, r: f64| {
                if !(r < tol) {
                    bad.push(format!("({n},{m}): {what} residual {r:e}"));
                }
            };
            record("unitarity", s.unitarity_residual);
            record("symmetry", s.symmetry_residual());
            record("charge conjugation", s.conjugation_residual());
            record("simple current", s.simple_current_residual());
            if n <= 3 && m <= 3 {
                record("modular (ST)^3 = S^2", s.modular_residual());
            }
            for (a, ratio) in s.weights.iter().zip(s.dimension_ratios()) {
                let (re, im) = ratio.to_f64_pair();
                let d = qdim(a).to_f64();
                if !((re - d).abs() < tol && im.abs() < tol) {
                    bad.push(format!("({n},{m}): S_0a/S_00 at {a} is {re}+{im}i, dim is {d}"));
                }
            }
            Ok((5 + s.size(), bad))
        })?,
        Suite::Twist => sweep(pairs(2, 2, bound), |n, m| {
            let r = twist_pairing(n, m)?;
            let mut bad: Vec<String> = r
                .failures
                .iter()
                .map(|f| format!("({n},{m},i={}): h({}) + h({}) off by {}", f.i, f.a, f.image, f.excess))
                .collect();
            if r.max_phase_deviation > 1e-8 {
                bad.push(format!("({n},{m}): phase deviation {:e}", r.max_phase_deviation));
            }
            Ok((r.checked, bad))
        })?,
        Suite::CentralCharge => {
            let mut bad = Vec::new();
            let mut checks = 0;
            for n in 2..=bound.max(50) {
                for m in 2..=bound.max(50) {
                    checks += 1;
                    let c = central_charge(n, m, 1)?;
                    if !c.equal() {
                        bad.push(format!("({n},{m},1): {} vs {}", c.ambient, c.pair));
                    }
                }
            }
            checks += 1;
            if central_charge(2, 2, 2)?.equal() {
                bad.push("(2,2,2): charges unexpectedly equal".into());
            }
            (checks, bad)
        }
        Suite::Equivalence => sweep(pairs(2, 2, bound), |n, m| {
            let v = verify_equivalence_fusion(n, m)?;
            let bad = v
                .failures
                .iter()
                .map(|x| format!("({n},{m}) N_{{{},{}}}^{{{}}} = {} but transported {}", x.a, x.b, x.c, x.left, x.right))
                .collect();
            Ok((v.triples, bad))
        })?,
        Suite::Mirror => sweep(pairs(2, 2, bound), mirror_case)?,
        Suite::TraceForm => sweep(pairs(2, 2, bound), |n, m| {
            let v = verify_trace_form(n, m)?;
            let bad = v
                .failures
                .iter()
                .map(|(block, p, q, got, want)| format!("({n},{m}) {block} basis pair ({p},{q}): {got} vs {want}"))
                .collect();
            Ok((v.pairs_checked, bad))
        })?,
        Suite::LowerBound => sweep(pairs(2, 2, bound), |n, m| {
            let v = verify_lower_bound(n, m)?;
            let mut bad: Vec<String> = v
                .missing
                .iter()
                .map(|(i, a, b)| format!("({n},{m}): {a} ⊠ {b} missing from Λ_{i}"))
                .collect();
            if !verify_sigma_pairs(n, m)? {
                bad.push(format!("({n},{m}): σ-pairs missing"));
            }
            Ok((v.pairs_checked + 1, bad))
        })?,
        Suite::Branching => sweep(pairs(2, 2, bound), |n, m| {
            let mut bad = Vec::new();
            for i in 0..(n * m) as i64 {
                let t = branch(n, m, i)?;
                if !t.is_multiplicity_free() {
                    bad.push(format!("({n},{m},{i}): repeated factor"));
                }
                if !t.degrees_consistent() {
                    bad.push(format!("({n},{m},{i}): degree bookkeeping"));
                }
            }
            Ok((n * m, bad))
        })?,
    };
    Ok(SuiteReport {
        suite,
        bound,
        checks,
        counterexamples,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn tau_case(n: usize, m: usize) -> Case {
    let mut bad = Vec::new();
    let mut checks = 0;
    for i in 0..(n * m) as i64 {
        let source = enumerate_graded(n, m, i)?;
        let mut images = Vec::with_capacity(source.len());
        for a in &source {
            checks += 1;
            let b = a.tau(i)?;
            if b.tau(i)? != *a {
                bad.push(format!("({n},{m},{i}): τ(τ({a})) ≠ {a}"));
            }
            images.push(b);
        }
        images.sort();
        if images != enumerate_graded(m, n, i)? {
            bad.push(format!("({n},{m},{i}): τ is not onto C^i_{{{m},{n}}}"));
        }
    }
    // any λ with |λ| ≡ i (mod n) and w(λ) = a gives the same image
    for lambda in enumerate_rectangle(n, m) {
        let a = LevelWeight::from_partition(&lambda, n, m)?;
        for i in (lambda.size() % n..n * m).step_by(n) {
            checks += 1;
            let direct = crate::weights::tau_from_partition(&lambda, n, m, i as i64)?;
            if direct != a.tau(i as i64)? {
                bad.push(format!("({n},{m},{i}): preimage {lambda} gives {direct}"));
            }
        }
    }
    Ok((checks, bad))
}

fn fusion_case(n: usize, m: usize) -> Case {
    let ring = FusionRing::new(n, m)?;
    let ws = ring.weights();
    let conductor = 2 * (n + m);
    let dims: Vec<Cyclotomic> = ws.iter().map(qdim).collect();
    let mut bad = Vec::new();
    let mut checks = 0;
    for (x, a) in ws.iter().enumerate() {
        let with_dual = ring.fuse(a, &a.dual())?;
        checks += 1;
        if with_dual.multiplicity(&LevelWeight::vacuum(n, m)?) != 1 {
            bad.push(format!("({n},{m}): {a} ⊗ {a}* = {with_dual}"));
        }
        for (y, b) in ws.iter().enumerate() {
            let ab = ring.fuse(a, b)?;
            checks += 3;
            if *ab != *ring.fuse(b, a)? {
                bad.push(format!("({n},{m}): {a} ⊗ {b} not commutative"));
            }
            for (c, _) in ab.iter() {
                if c.degree() != (a.degree() + b.degree()) % n {
                    bad.push(format!("({n},{m}): {a} ⊗ {b} ∋ {c} breaks grading"));
                }
            }
            if product_dimension(&ab, conductor) != &dims[x] * &dims[y] {
                bad.push(format!("({n},{m}): dim({a} ⊗ {b}) ≠ dim {a} · dim {b}"));
            }
        }
    }
    if n <= 3 && m <= 3 {
        for a in ws {
            for b in ws {
                let ab = ring.fuse(a, b)?;
                for c in ws {
                    checks += 1;
                    let bc = ring.fuse(b, c)?;
                    let mut left: std::collections::BTreeMap<LevelWeight, u64> = Default::default();
                    let mut right = left.clone();
                    for (d, k) in ab.iter() {
                        for (e, l) in ring.fuse(d, c)?.iter() {
                            *left.entry(e.clone()).or_default() += k * l;
                        }
                    }
                    for (d, k) in bc.iter() {
                        for (e, l) in ring.fuse(a, d)?.iter() {
                            *right.entry(e.clone()).or_default() += k * l;
                        }
                    }
                    if left != right {
                        bad.push(format!("({n},{m}): ({a} ⊗ {b}) ⊗ {c} ≠ {a} ⊗ ({b} ⊗ {c})"));
                    }
                }
            }
        }
    }
    Ok((checks, bad))
}

fn mirror_case(n: usize, m: usize) -> Case {
    let mut bad = Vec::new();
    let left: Vec<LevelWeight> = branch(n, m, 0)?.summands.into_iter().map(|(a, _)| a).collect();
    let mut moved: Vec<LevelWeight> = left.iter().map(transport).collect::<Result<_>>()?;
    moved.sort();
    let target: Vec<LevelWeight> = branch(m, n, 0)?.summands.into_iter().map(|(a, _)| a).collect();
    if moved != target {
        bad.push(format!("({n},{m}): transported left factors differ from those of ({m},{n})"));
    }
    for a in &left {
        if transport(&transport(a)?)? != *a {
            bad.push(format!("({n},{m}): T(T({a})) ≠ {a}"));
        }
    }
    let report = mirror_transport(&[LevelWeight::vacuum(n, m)?])?;
    if report.image != vec![LevelWeight::vacuum(m, n)?] || !report.holds() {
        bad.push(format!("({n},{m}): vacuum does not transport to vacuum"));
    }
    Ok((left.len() * 2 + 1, bad))
}

/// Runs every suite in declaration order.
pub fn run_all(config: SweepConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL.into_iter().map(|s| run_suite(s, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_bound_passes() {
        let config = SweepConfig { bound: 2, bits: 96 };
        for report in run_all(config).unwrap() {
            assert!(report.passed(), "{report}");
        }
    }
}

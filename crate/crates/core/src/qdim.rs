//! Frobenius–Perron dimensions of simple objects of `C(sl_n)_m`, of the whole
//! category, and of its graded pieces.
//!
//! The dimension of the simple object labelled by `λ` is Stanley's product
//! `∏_{cells T} [n + c_T] / [h_T]`. Numerator and denominator indices are
//! folded with `[i] = [n + m - i]`, cancelled as multisets, and only then
//! turned into cyclotomic numbers, so at most one field inversion happens.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::cyclotomic::{qint, Cyclotomic};
use crate::error::Result;
use crate::partitions::Partition;
use crate::real::Real;
use crate::weights::{enumerate_graded, enumerate_level, LevelWeight};

pub type Stored = Arc<Vec<Cyclotomic>>;

static QINT_TABLES: OnceLock<RwLock<HashMap<usize, Stored>>> = OnceLock::new();

/// `[0], [1], ..., [n + m]` for a fixed `n + m`.
fn qint_table(n: usize, m: usize) -> Stored {
    let k = n + m;
    let cache = QINT_TABLES.get_or_init(Default::default);
    if let Some(t) = cache.read().expect("qint cache poisoned").get(&k) {
        return Arc::clone(t);
    }
    let table: Vec<Cyclotomic> = (0..=k as i64).map(|i| qint(i, n, m)).collect();
    let mut guard = cache.write().expect("qint cache poisoned");
    Arc::clone(guard.entry(k).or_insert_with(|| Arc::new(table)))
}

/// Stanley's product after cancellation: `∏ [num_i] / ∏ [den_j]`, with every
/// index in `2..=(n+m)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumProduct {
    pub n: usize,
    pub m: usize,
    pub numerator: BTreeMap<usize, u32>,
    pub denominator: BTreeMap<usize, u32>,
}

impl QuantumProduct {
    pub fn stanley(lambda: &Partition, n: usize, m: usize) -> Result<Self> {
        lambda.ensure_fits(n, m)?;
        let k = n + m;
        let fold = |i: usize| i.min(k - i);
        let mut numerator = BTreeMap::new();
        let mut denominator = BTreeMap::new();
        for cell in lambda.hooks_and_contents() {
            // fits_in guarantees 1 <= n + c_T <= n + m - 1 and h_T <= n + m - 1
            let up = fold((n as i64 + cell.content) as usize);
            let down = fold(cell.hook);
            *numerator.entry(up).or_insert(0u32) += 1;
            *denominator.entry(down).or_insert(0u32) += 1;
        }
        for (i, e) in denominator.iter_mut() {
            if let Some(u) = numerator.get_mut(i) {
                let c = (*u).min(*e);
                *u -= c;
                *e -= c;
            }
        }
        let keep = |m: BTreeMap<usize, u32>| -> BTreeMap<usize, u32> {
            m.into_iter().filter(|&(i, e)| e > 0 && i > 1).collect()
        };
        Ok(QuantumProduct {
            n,
            m,
            numerator: keep(numerator),
            denominator: keep(denominator),
        })
    }

    pub fn evaluate(&self) -> Cyclotomic {
        let table = qint_table(self.n, self.m);
        let conductor = 2 * (self.n + self.m);
        let product = |factors: &BTreeMap<usize, u32>| {
            factors
                .iter()
                .fold(Cyclotomic::one(conductor), |acc, (&i, &e)| &acc * &table[i].pow(e))
        };
        let num = product(&self.numerator);
        if self.denominator.is_empty() {
            num
        } else {
            num.checked_div(&product(&self.denominator))
                .expect("quantum integers in range are nonzero")
        }
    }

    /// Direct evaluation of the sine ratios at the given precision.
    pub fn evaluate_float(&self, bits: usize) -> Real {
        let k = (self.n + self.m) as i64;
        let q = |i: usize| Real::sin_pi(i as i64, k, bits + 16) / &Real::sin_pi(1, k, bits + 16);
        let mut acc = Real::one(bits + 16);
        for (&i, &e) in &self.numerator {
            for _ in 0..e {
                acc = acc * &q(i);
            }
        }
        for (&i, &e) in &self.denominator {
            for _ in 0..e {
                acc = acc / &q(i);
            }
        }
        acc.with_bits(bits)
    }
}

/// Renders as `[7][5]^2`, `[3]/[2]`, or `1`.
impl fmt::Display for QuantumProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &BTreeMap<usize, u32>| -> String {
            m.iter()
                .rev()
                .map(|(&i, &e)| if e == 1 { format!("[{i}]") } else { format!("[{i}]^{e}") })
                .collect()
        };
        match (self.numerator.is_empty(), self.denominator.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", side(&self.numerator)),
            (true, false) => write!(f, "1/({})", side(&self.denominator)),
            (false, false) => write!(f, "{}/({})", side(&self.numerator), side(&self.denominator)),
        }
    }
}

/// Exact dimension of the simple object labelled by `λ` in `C(sl_n)_m`.
pub fn qdim_partition(lambda: &Partition, n: usize, m: usize) -> Result<Cyclotomic> {
    Ok(QuantumProduct::stanley(lambda, n, m)?.evaluate())
}

/// Exact dimension of the simple object with highest weight `a`, computed as
/// the dimension of `d(a)`.
pub fn qdim(a: &LevelWeight) -> Cyclotomic {
    qdim_partition(&a.to_partition(), a.rank(), a.level())
        .expect("d(a) always fits the rectangle")
}

/// Selects exact cyclotomic or floating-point evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Backend {
    Exact,
    Float { bits: usize },
}

/// A dimension evaluated with either backend.
#[derive(Debug, Clone)]
pub enum DimValue {
    Exact(Cyclotomic),
    Float(Real),
}

impl DimValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            DimValue::Exact(x) => x.to_f64(),
            DimValue::Float(r) => r.to_f64(),
        }
    }
}

pub fn qdim_with(lambda: &Partition, n: usize, m: usize, backend: Backend) -> Result<DimValue> {
    let prod = QuantumProduct::stanley(lambda, n, m)?;
    Ok(match backend {
        Backend::Exact => DimValue::Exact(prod.evaluate()),
        Backend::Float { bits } => DimValue::Float(prod.evaluate_float(bits)),
    })
}

fn sum_of_squares<'a>(weights: impl IntoIterator<Item = &'a LevelWeight>, conductor: usize) -> Cyclotomic {
    weights.into_iter().fold(Cyclotomic::zero(conductor), |acc, a| {
        let d = qdim(a);
        &acc + &(&d * &d)
    })
}

/// `FP C(sl_n)_m = Σ_a dim(a)^2`.
pub fn category_dim(n: usize, m: usize) -> Result<Cyclotomic> {
    Ok(sum_of_squares(&enumerate_level(n, m)?, 2 * (n + m)))
}

/// `FP` of the degree-`i` piece.
pub fn graded_dim(n: usize, m: usize, i: i64) -> Result<Cyclotomic> {
    Ok(sum_of_squares(&enumerate_graded(n, m, i)?, 2 * (n + m)))
}

/// All dimensions of `C(sl_n)_m` with category and graded totals.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub m: usize,
    pub objects: Vec<(LevelWeight, Cyclotomic)>,
    pub total: Cyclotomic,
    pub graded: Vec<Cyclotomic>,
}

impl DimensionReport {
    pub fn compute(n: usize, m: usize) -> Result<Self> {
        let conductor = 2 * (n + m);
        let objects: Vec<_> = enumerate_level(n, m)?
            .into_iter()
            .map(|a| {
                let d = qdim(&a);
                (a, d)
            })
            .collect();
        let mut graded = vec![Cyclotomic::zero(conductor); n];
        let mut total = Cyclotomic::zero(conductor);
        for (a, d) in &objects {
            let sq = d * d;
            graded[a.degree()] = &graded[a.degree()] + &sq;
            total = &total + &sq;
        }
        Ok(DimensionReport {
            n,
            m,
            objects,
            total,
            graded,
        })
    }

    pub fn get(&self, a: &LevelWeight) -> Option<&Cyclotomic> {
        self.objects
            .binary_search_by(|(b, _)| b.cmp(a))
            .ok()
            .map(|i| &self.objects[i].1)
    }
}

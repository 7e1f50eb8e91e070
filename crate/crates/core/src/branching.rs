//! Branching of the level-one simples `Λ̂_i` of `(sl_{nm})_1` under
//! `(sl_n)_m ⊕ (sl_m)_n`, and checks built on it.
//!
//! `Λ̂_i` restricts to `⊕ â ⊠ τ_i(a)` over `a ∈ C^i_{n,m}`. The table for
//! `i = 0` is the étale algebra `A`. [`transport`] is the object map
//! `a ↦ dual(τ_0(a))` between the degree-zero parts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::partitions::{enumerate_rectangle, Partition};
use crate::qdim::{graded_dim, qdim};
use crate::smatrix::conformal_weight;
use crate::weights::{enumerate_graded, LevelWeight};

/// Summands `(a, τ_i(a))` of `Λ̂_i`, each with multiplicity one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingTable {
    pub n: usize,
    pub m: usize,
    pub i: usize,
    pub summands: Vec<(LevelWeight, LevelWeight)>,
}

fn check_ranks(n: usize, m: usize) -> Result<()> {
    for r in [n, m] {
        if r < 2 {
            return Err(Error::RankTooSmall(r));
        }
    }
    Ok(())
}

/// Decomposition of `Λ̂_i`; `i` is read mod `nm`.
pub fn branch(n: usize, m: usize, i: i64) -> Result<BranchingTable> {
    check_ranks(n, m)?;
    let i = i.rem_euclid((n * m) as i64);
    let summands = enumerate_graded(n, m, i)?
        .into_iter()
        .map(|a| {
            let b = a.tau(i)?;
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    Ok(BranchingTable {
        n,
        m,
        i: i as usize,
        summands,
    })
}

impl BranchingTable {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn contains(&self, a: &LevelWeight, b: &LevelWeight) -> bool {
        self.summands
            .binary_search_by(|(x, _)| x.cmp(a))
            .map(|k| &self.summands[k].1 == b)
            .unwrap_or(false)
    }

    /// Diagram pairs `d(a) ⊠ d(b)`.
    pub fn partition_pairs(&self) -> Vec<(Partition, Partition)> {
        self.summands
            .iter()
            .map(|(a, b)| (a.to_partition(), b.to_partition()))
            .collect()
    }

    /// The table as a [`Decomposition`] over label pairs.
    pub fn decomposition(&self) -> Decomposition<(LevelWeight, LevelWeight)> {
        self.summands.iter().cloned().map(|p| (p, 1)).collect()
    }

    /// No left factor or right factor repeats.
    pub fn is_multiplicity_free(&self) -> bool {
        let left: BTreeSet<_> = self.summands.iter().map(|(a, _)| a).collect();
        let right: BTreeSet<_> = self.summands.iter().map(|(_, b)| b).collect();
        left.len() == self.len() && right.len() == self.len()
    }

    /// Every right factor has degree `i mod m`.
    pub fn degrees_consistent(&self) -> bool {
        self.summands
            .iter()
            .all(|(a, b)| a.degree() == self.i % self.n && b.degree() == self.i % self.m)
    }

    /// Young diagrams of each pair laid out side by side, separated by `⊠`.
    pub fn young(&self) -> String {
        let mut out = String::new();
        for (k, (a, b)) in self.partition_pairs().iter().enumerate() {
            if k > 0 {
                out.push_str("  ⊕\n");
            }
            let left = a.young_lines();
            let right = b.young_lines();
            let width = left.iter().map(|l| l.chars().count()).max().unwrap_or(0);
            let rows = left.len().max(right.len());
            for r in 0..rows {
                let l = left.get(r).map(String::as_str).unwrap_or("");
                let rt = right.get(r).map(String::as_str).unwrap_or("");
                let sep = if r == 0 { " ⊠ " } else { "   " };
                let pad = width - l.chars().count();
                out.push_str(&format!("{l}{}{sep}{rt}", " ".repeat(pad)).trim_end().to_string());
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for BranchingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Λ_{} of (sl_{})_1 restricted to (sl_{})_{} ⊕ (sl_{})_{}:", self.i, self.n * self.m, self.n, self.m, self.m, self.n)?;
        for (a, b) in &self.summands {
            writeln!(f, "  {a} ⊠ {b}    {} ⊠ {}", a.to_partition(), b.to_partition())?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct SummandRecord<'a> {
    left: &'a [usize],
    right: &'a [usize],
    left_partition: Vec<usize>,
    right_partition: Vec<usize>,
}

/// `{n, m, i, summands: [{left, right, left_partition, right_partition}]}`.
impl Serialize for BranchingTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<SummandRecord> = self
            .summands
            .iter()
            .map(|(a, b)| SummandRecord {
                left: a.labels(),
                right: b.labels(),
                left_partition: a.to_partition().parts().to_vec(),
                right_partition: b.to_partition().parts().to_vec(),
            })
            .collect();
        let mut st = s.serialize_struct("BranchingTable", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("i", &self.i)?;
        st.serialize_field("summands", &records)?;
        st.end()
    }
}

/// Both sides of the dimension count for `Λ̂_i`.
#[derive(Debug, Clone, Serialize)]
pub struct ExhaustionVerdict {
    pub n: usize,
    pub m: usize,
    pub i: usize,
    /// `Σ dim(a) dim(τ_i(a))` over the table.
    pub lhs: Cyclotomic,
    /// `FP` of the degree-`i` part of `C(sl_n)_m`.
    pub rhs: Cyclotomic,
    /// `FP` of the degree-`i` part of `C(sl_m)_n`.
    pub rhs_dual: Cyclotomic,
    /// Every pair has `dim(a) = dim(τ_i(a))`.
    pub paired_dims_equal: bool,
    pub difference: Cyclotomic,
    pub holds: bool,
}

pub fn verify_exhaustion(n: usize, m: usize, i: i64) -> Result<ExhaustionVerdict> {
    let table = branch(n, m, i)?;
    let conductor = 2 * (n + m);
    let mut lhs = Cyclotomic::zero(conductor);
    let mut paired_dims_equal = true;
    for (a, b) in &table.summands {
        let (da, db) = (qdim(a), qdim(b));
        paired_dims_equal &= da == db;
        lhs = &lhs + &(&da * &db);
    }
    let rhs = graded_dim(n, m, table.i as i64)?;
    let rhs_dual = graded_dim(m, n, table.i as i64)?;
    let difference = &lhs - &rhs;
    let holds = difference.is_zero() && rhs == rhs_dual && paired_dims_equal;
    Ok(ExhaustionVerdict {
        n,
        m,
        i: table.i,
        lhs,
        rhs,
        rhs_dual,
        paired_dims_equal,
        difference,
        holds,
    })
}

/// `T(a) = dual(τ_0(a))` for `a` of degree zero.
pub fn transport(a: &LevelWeight) -> Result<LevelWeight> {
    if a.degree() != 0 {
        return Err(Error::DegreeMismatch {
            weight: a.to_string(),
            degree: a.degree(),
            rank: a.rank(),
            index: 0,
        });
    }
    Ok(a.tau(0)?.dual())
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionMismatch {
    pub a: LevelWeight,
    pub b: LevelWeight,
    pub c: LevelWeight,
    pub left: u64,
    pub right: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceVerdict {
    pub n: usize,
    pub m: usize,
    pub triples: usize,
    pub failures: Vec<FusionMismatch>,
}

impl EquivalenceVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `N_{ab}^c = N_{T(a)T(b)}^{T(c)}` for all degree-zero `a, b, c`.
pub fn verify_equivalence_fusion(n: usize, m: usize) -> Result<EquivalenceVerdict> {
    check_ranks(n, m)?;
    let left = FusionRing::new(n, m)?;
    let right = FusionRing::new(m, n)?;
    let zero = enumerate_graded(n, m, 0)?;
    let images: Vec<LevelWeight> = zero.iter().map(transport).collect::<Result<_>>()?;
    let per_a: Vec<Vec<FusionMismatch>> = (0..zero.len())
        .into_par_iter()
        .map(|x| -> Result<Vec<FusionMismatch>> {
            let mut bad = Vec::new();
            for y in 0..zero.len() {
                let l = left.fuse(&zero[x], &zero[y])?;
                let r = right.fuse(&images[x], &images[y])?;
                for z in 0..zero.len() {
                    let (p, q) = (l.multiplicity(&zero[z]), r.multiplicity(&images[z]));
                    if p != q {
                        bad.push(FusionMismatch {
                            a: zero[x].clone(),
                            b: zero[y].clone(),
                            c: zero[z].clone(),
                            left: p,
                            right: q,
                        });
                    }
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    let k = zero.len();
    Ok(EquivalenceVerdict {
        n,
        m,
        triples: k * k * k,
        failures: per_a.into_iter().flatten().collect(),
    })
}

/// Image of a connected degree-zero object under [`transport`], with the
/// necessary conditions for the image to carry an étale algebra structure.
#[derive(Debug, Clone, Serialize)]
pub struct MirrorReport {
    pub source: Vec<LevelWeight>,
    pub image: Vec<LevelWeight>,
    pub closed_under_duals: bool,
    /// Every summand on both sides has integral conformal weight.
    pub trivial_twists: bool,
    pub dimension: Cyclotomic,
    pub dimension_preserved: bool,
}

impl MirrorReport {
    pub fn holds(&self) -> bool {
        self.closed_under_duals && self.trivial_twists && self.dimension_preserved
    }
}

fn fp_of(objects: &[LevelWeight]) -> Cyclotomic {
    let conductor = 2 * (objects[0].rank() + objects[0].level());
    objects
        .iter()
        .fold(Cyclotomic::zero(conductor), |acc, a| &acc + &qdim(a))
}

fn closed_under_duals(objects: &[LevelWeight]) -> bool {
    let set: BTreeMap<&LevelWeight, usize> = objects.iter().fold(BTreeMap::new(), |mut acc, a| {
        *acc.entry(a).or_insert(0) += 1;
        acc
    });
    objects.iter().all(|a| set.get(&a.dual()) == set.get(a))
}

/// Transports the summands (with multiplicity) of a connected algebra in
/// `C^0_{n,m}`.
pub fn mirror_transport(summands: &[LevelWeight]) -> Result<MirrorReport> {
    let vacua = summands.iter().filter(|a| a.is_vacuum()).count();
    if vacua != 1 {
        return Err(Error::NotConnected(vacua));
    }
    let (n, m) = (summands[0].rank(), summands[0].level());
    for a in summands {
        if a.rank() != n || a.level() != m {
            return Err(Error::CategoryMismatch {
                left: summands[0].to_string(),
                right: a.to_string(),
            });
        }
    }
    let image: Vec<LevelWeight> = summands.iter().map(transport).collect::<Result<_>>()?;
    let all_integral = |xs: &[LevelWeight]| xs.iter().all(|a| conformal_weight(a).is_integer());
    let dimension = fp_of(summands);
    let dimension_preserved = fp_of(&image) == dimension;
    Ok(MirrorReport {
        source: summands.to_vec(),
        closed_under_duals: closed_under_duals(&image),
        trivial_twists: all_integral(summands) && all_integral(&image),
        image,
        dimension,
        dimension_preserved,
    })
}

type IntMatrix = Vec<Vec<i64>>;

/// `E_{ij}` (`i ≠ j`) and `E_{ii} - E_{i+1,i+1}`: a basis of `sl_k`.
pub fn sl_basis(k: usize) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let mut e = vec![vec![0; k]; k];
                e[i][j] = 1;
                out.push(e);
            }
        }
    }
    for i in 0..k - 1 {
        let mut h = vec![vec![0; k]; k];
        h[i][i] = 1;
        h[i + 1][i + 1] = -1;
        out.push(h);
    }
    out
}

fn identity(k: usize) -> IntMatrix {
    (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
}

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![0; p * q]; p * q];
    for i in 0..p {
        for j in 0..p {
            for k in 0..q {
                for l in 0..q {
                    out[i * q + k][j * q + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `Tr(XY)` without forming the product.
fn trace_product(x: &IntMatrix, y: &IntMatrix) -> i64 {
    let k = x.len();
    (0..k).map(|i| (0..k).map(|j| x[i][j] * y[j][i]).sum::<i64>()).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceFormVerdict {
    pub n: usize,
    pub m: usize,
    pub pairs_checked: usize,
    /// `(block, index, index, ambient, expected)` for each failing pair.
    pub failures: Vec<(String, usize, usize, i64, i64)>,
}

impl TraceFormVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `Tr_{nm}` restricted along `X ⊕ Y ↦ X⊗I_m + I_n⊗Y` equals
/// `m Tr_n ⊕ n Tr_m` on all basis pairs.
pub fn verify_trace_form(n: usize, m: usize) -> Result<TraceFormVerdict> {
    check_ranks(n, m)?;
    let xs = sl_basis(n);
    let ys = sl_basis(m);
    let ix: Vec<IntMatrix> = xs.iter().map(|x| kron(x, &identity(m))).collect();
    let iy: Vec<IntMatrix> = ys.iter().map(|y| kron(&identity(n), y)).collect();
    let mut verdict = TraceFormVerdict {
        n,
        m,
        pairs_checked: 0,
        failures: Vec::new(),
    };
    let mut check = |block: &str, p: usize, q: usize, ambient: i64, expected: i64| {
        verdict.pairs_checked += 1;
        if ambient != expected {
            verdict.failures.push((block.to_string(), p, q, ambient, expected));
        }
    };
    for p in 0..xs.len() {
        for q in 0..xs.len() {
            check("sl_n", p, q, trace_product(&ix[p], &ix[q]), m as i64 * trace_product(&xs[p], &xs[q]));
        }
    }
    for p in 0..ys.len() {
        for q in 0..ys.len() {
            check("sl_m", p, q, trace_product(&iy[p], &iy[q]), n as i64 * trace_product(&ys[p], &ys[q]));
        }
    }
    for p in 0..xs.len() {
        for q in 0..ys.len() {
            check("cross", p, q, trace_product(&ix[p], &iy[q]), 0);
        }
    }
    Ok(verdict)
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundVerdict {
    pub n: usize,
    pub m: usize,
    pub pairs_checked: usize,
    /// `(index, left, right)` for each pair missing from its table.
    pub missing: Vec<(usize, LevelWeight, LevelWeight)>,
}

impl LowerBoundVerdict {
    pub fn holds(&self) -> bool {
        self.missing.is_empty()
    }
}

/// For every `λ` in the `n × m` rectangle, starts from
/// `w(λ) ⊠ w(λ^t) ⊂ Λ̂_{|λ|}` and repeatedly fuses the right factor with
/// `w_{m,n}((n))`, moving to `Λ̂_{|λ| + n}` each time; every pair reached
/// must appear in the corresponding table.
pub fn verify_lower_bound(n: usize, m: usize) -> Result<LowerBoundVerdict> {
    check_ranks(n, m)?;
    let right_ring = FusionRing::new(m, n)?;
    let sigma = right_ring.simple_current();
    let nm = n * m;
    let tables: Vec<BranchingTable> = (0..nm).map(|i| branch(n, m, i as i64)).collect::<Result<_>>()?;
    let mut verdict = LowerBoundVerdict {
        n,
        m,
        pairs_checked: 0,
        missing: Vec::new(),
    };
    for lambda in enumerate_rectangle(n, m) {
        let a = LevelWeight::from_partition(&lambda, n, m)?;
        let mut b = LevelWeight::from_partition(&lambda.transpose(), m, n)?;
        let mut index = lambda.size() % nm;
        for _ in 0..m {
            verdict.pairs_checked += 1;
            if !tables[index].contains(&a, &b) {
                verdict.missing.push((index, a.clone(), b.clone()));
            }
            let product = right_ring.fuse(&sigma, &b)?;
            match product.as_simple() {
                Some(next) => b = next.clone(),
                None => {
                    verdict.missing.push((index, a.clone(), b.clone()));
                    break;
                }
            }
            index = (index + n) % nm;
        }
    }
    Ok(verdict)
}

/// `1 ⊠ σ̂_n ⊂ Λ̂_n` and `σ̂_m ⊠ 1 ⊂ Λ̂_m`.
pub fn verify_sigma_pairs(n: usize, m: usize) -> Result<bool> {
    let sigma_n = LevelWeight::from_partition(&Partition::row(n), m, n)?;
    let sigma_m = LevelWeight::from_partition(&Partition::row(m), n, m)?;
    Ok(branch(n, m, n as i64)?.contains(&LevelWeight::vacuum(n, m)?, &sigma_n)
        && branch(n, m, m as i64)?.contains(&sigma_m, &LevelWeight::vacuum(m, n)?))
}

//! Fusion rules of `C(sl_n)_m` by the Kac–Walton algorithm.
//!
//! `N_{ab}^c` is obtained by expanding `s_{d(a)} s_{d(b)}` with the
//! Littlewood–Richardson rule, keeping shapes with at most `n` rows, and
//! folding each shape `ν` into the level-`m` alcove: `ν + ρ` is moved by the
//! affine Weyl group at level `m + n` (permutations plus the reflection in
//! the wall `x_1 - x_n = m + n`) until it is strictly dominant inside the
//! alcove, picking up the sign of each reflection. Shapes that land on a wall
//! contribute nothing.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qdim::qdim;
use crate::real::Complex;
use crate::smatrix::SMatrixData;
use crate::symfunc::lr_coefficients;
use crate::weights::{enumerate_level, LevelWeight};

pub type FusionProduct = Decomposition<LevelWeight>;

/// Moves the shape `nu` (at most `n` rows) into the alcove of `C(sl_n)_m`.
/// Returns `None` on a wall, otherwise the sign and the dominant weight.
pub fn fold_to_alcove(nu: &Partition, n: usize, m: usize) -> Option<(i64, LevelWeight)> {
    assert!(nu.height() <= n, "shape has more than n rows");
    let k = (m + n) as i64;
    let mut v: Vec<i64> = nu
        .padded(n)
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (n - 1 - i) as i64)
        .collect();
    let mut sign = 1i64;
    loop {
        sign *= sort_with_sign(&mut v)?;
        let spread = v[0] - v[n - 1];
        if spread < k {
            break;
        }
        if spread == k {
            return None;
        }
        let (hi, lo) = (v[0], v[n - 1]);
        v[0] = lo + k;
        v[n - 1] = hi - k;
        sign = -sign;
    }
    let mu: Vec<i64> = v.iter().enumerate().map(|(i, &x)| x - (n - 1 - i) as i64).collect();
    let mut labels = Vec::with_capacity(n);
    labels.push((m as i64 - (mu[0] - mu[n - 1])) as usize);
    for i in 1..n {
        labels.push((mu[i - 1] - mu[i]) as usize);
    }
    Some((sign, LevelWeight::with_level(labels, m).expect("alcove weight has level m")))
}

/// Sorts descending; returns the permutation sign, or `None` on a repeated entry.
fn sort_with_sign(v: &mut [i64]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

fn check_same_category(a: &LevelWeight, b: &LevelWeight) -> Result<()> {
    if a.rank() == b.rank() && a.level() == b.level() {
        Ok(())
    } else {
        Err(Error::CategoryMismatch {
            left: format!("{a} (rank {}, level {})", a.rank(), a.level()),
            right: format!("{b} (rank {}, level {})", b.rank(), b.level()),
        })
    }
}

/// `a ⊗ b` in `C(sl_n)_m`, uncached.
pub fn fuse(a: &LevelWeight, b: &LevelWeight) -> Result<FusionProduct> {
    check_same_category(a, b)?;
    let (n, m) = (a.rank(), a.level());
    let mut signed: BTreeMap<LevelWeight, i64> = BTreeMap::new();
    for (nu, c) in lr_coefficients(&a.to_partition(), &b.to_partition(), n) {
        if let Some((sign, w)) = fold_to_alcove(&nu, n, m) {
            *signed.entry(w).or_insert(0) += sign * c as i64;
        }
    }
    Ok(signed
        .into_iter()
        .map(|(w, c)| {
            assert!(c >= 0, "negative fusion multiplicity {c} for {w}");
            (w, c as u64)
        })
        .collect())
}

/// Fusion rules of one category with a shared product cache.
pub struct FusionRing {
    n: usize,
    m: usize,
    weights: Vec<LevelWeight>,
    cache: RwLock<HashMap<(usize, usize), Arc<FusionProduct>>>,
}

impl FusionRing {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Ok(FusionRing {
            n,
            m,
            weights: enumerate_level(n, m)?,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.m
    }

    /// Simple objects in canonical order.
    pub fn weights(&self) -> &[LevelWeight] {
        &self.weights
    }

    pub fn index(&self, a: &LevelWeight) -> Result<usize> {
        self.weights.binary_search(a).map_err(|_| Error::LevelMismatch {
            weight: a.to_string(),
            found: a.level(),
            expected: self.m,
        })
    }

    pub fn fuse(&self, a: &LevelWeight, b: &LevelWeight) -> Result<Arc<FusionProduct>> {
        check_same_category(a, b)?;
        let key = (self.index(a)?, self.index(b)?);
        if let Some(hit) = self.cache.read().expect("fusion cache poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let product = Arc::new(fuse(a, b)?);
        // concurrent fills compute identical values; last writer wins
        self.cache
            .write()
            .expect("fusion cache poisoned")
            .insert(key, Arc::clone(&product));
        Ok(product)
    }

    /// `N_{ab}^c`.
    pub fn coefficient(&self, a: &LevelWeight, b: &LevelWeight, c: &LevelWeight) -> Result<u64> {
        Ok(self.fuse(a, b)?.multiplicity(c))
    }

    /// The invertible object `w_{n,m}(σ_m)`.
    pub fn simple_current(&self) -> LevelWeight {
        LevelWeight::from_partition(&Partition::row(self.m), self.n, self.m).expect("(m) fits")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RotationVerdict {
    pub weight: LevelWeight,
    pub expected: LevelWeight,
    pub product: FusionProduct,
    pub holds: bool,
}

/// Checks that `σ̂_m ⊗ â` is the single simple object `ρ_n(a)`.
pub fn rotation_check(ring: &FusionRing, a: &LevelWeight) -> Result<RotationVerdict> {
    let product = ring.fuse(&ring.simple_current(), a)?;
    let expected = a.rotate(1);
    let holds = product.as_simple() == Some(&expected);
    Ok(RotationVerdict {
        weight: a.clone(),
        expected,
        product: (*product).clone(),
        holds,
    })
}

/// `Σ_c N_{ab}^c dim(c)`, to compare with `dim(a) dim(b)`.
pub fn product_dimension(product: &FusionProduct, conductor: usize) -> Cyclotomic {
    product.iter().fold(Cyclotomic::zero(conductor), |acc, (c, mult)| {
        &acc + &(&qdim(c) * &Cyclotomic::from_i64(mult as i64, conductor))
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct VerlindeMismatch {
    pub a: LevelWeight,
    pub b: LevelWeight,
    pub c: LevelWeight,
    pub verlinde: i64,
    pub kac_walton: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerlindeReport {
    pub n: usize,
    pub m: usize,
    pub bits: usize,
    pub triples: usize,
    /// Largest distance of a Verlinde sum from the nearest integer.
    pub max_deviation: f64,
    pub mismatches: Vec<VerlindeMismatch>,
}

impl VerlindeReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Default rounding tolerance: `1e-6` at 64 bits, `1e-20` at 256 bits,
/// log-linear in between.
pub fn default_verlinde_tolerance(bits: usize) -> f64 {
    let t = (bits.clamp(64, 256) - 64) as f64 / 192.0;
    10f64.powf(-6.0 - 14.0 * t)
}

/// Compares `Σ_d S_ad S_bd conj(S_cd) / S_0d` against Kac–Walton for every
/// triple. Fails with [`Error::ToleranceExceeded`] if a sum is not within
/// `tolerance` of an integer.
pub fn verlinde_check(ring: &FusionRing, s: &SMatrixData, tolerance: f64) -> Result<VerlindeReport> {
    let weights = ring.weights();
    if s.weights != weights {
        return Err(Error::InvalidArgument("S-matrix indexed by a different category".into()));
    }
    let size = weights.len();
    let e = &s.entries;
    let ratio: Vec<Vec<Complex>> = (0..size)
        .map(|a| (0..size).map(|d| &e[a][d] / &e[0][d]).collect())
        .collect();
    let mut report = VerlindeReport {
        n: ring.rank(),
        m: ring.level(),
        bits: s.bits,
        triples: 0,
        max_deviation: 0.0,
        mismatches: Vec::new(),
    };
    for a in 0..size {
        for b in 0..size {
            let ab: Vec<Complex> = (0..size).map(|d| &ratio[a][d] * &e[b][d]).collect();
            let product = ring.fuse(&weights[a], &weights[b])?;
            for c in 0..size {
                let mut sum = Complex::zero(s.bits);
                for d in 0..size {
                    sum = &sum + &(&ab[d] * &e[c][d].conj());
                }
                let (re, im) = sum.to_f64_pair();
                let nearest = re.round();
                let deviation = (re - nearest).abs().max(im.abs());
                report.max_deviation = report.max_deviation.max(deviation);
                report.triples += 1;
                if deviation > tolerance {
                    return Err(Error::ToleranceExceeded {
                        triple: format!("({}, {}, {})", weights[a], weights[b], weights[c]),
                        deviation,
                        tolerance,
                    });
                }
                let kw = product.multiplicity(&weights[c]);
                if nearest as i64 != kw as i64 {
                    report.mismatches.push(VerlindeMismatch {
                        a: weights[a].clone(),
                        b: weights[b].clone(),
                        c: weights[c].clone(),
                        verlinde: nearest as i64,
                        kac_walton: kw,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(labels: &[usize]) -> LevelWeight {
        LevelWeight::new(labels.to_vec()).unwrap()
    }

    #[test]
    fn su2_level2() {
        let d = fuse(&w(&[1, 1]), &w(&[1, 1])).unwrap();
        assert_eq!(d, [(w(&[2, 0]), 1), (w(&[0, 2]), 1)].into_iter().collect());
    }

    #[test]
    fn su2_truncation() {
        // spin 1 ⊗ spin 1 at level 2: only spin 0 and spin 1 survive
        let d = fuse(&w(&[0, 2]), &w(&[0, 2])).unwrap();
        assert_eq!(d, Decomposition::single(w(&[2, 0])));
        // level 3: (1,2) ⊗ (1,2) = (3,0) + (1,2)
        let d = fuse(&w(&[1, 2]), &w(&[1, 2])).unwrap();
        assert_eq!(d, [(w(&[3, 0]), 1), (w(&[1, 2]), 1)].into_iter().collect());
    }

    #[test]
    fn vacuum_is_unit() {
        for (n, m) in [(2, 3), (3, 2), (3, 3)] {
            let vac = LevelWeight::vacuum(n, m).unwrap();
            for b in enumerate_level(n, m).unwrap() {
                assert_eq!(fuse(&vac, &b).unwrap(), Decomposition::single(b.clone()));
            }
        }
    }

    #[test]
    fn level_one_is_cyclic() {
        for nm in 2..=8 {
            for i in 0..nm {
                for j in 0..nm {
                    let a = LevelWeight::fundamental(nm, i).unwrap();
                    let b = LevelWeight::fundamental(nm, j).unwrap();
                    let expected = LevelWeight::fundamental(nm, (i + j) % nm).unwrap();
                    assert_eq!(fuse(&a, &b).unwrap(), Decomposition::single(expected));
                }
            }
        }
    }

    #[test]
    fn mismatch_rejected() {
        let err = fuse(&w(&[1, 1]), &w(&[1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::CategoryMismatch { .. }));
        let err = fuse(&w(&[1, 1]), &w(&[3, 0])).unwrap_err();
        assert!(matches!(err, Error::CategoryMismatch { .. }));
    }

    #[test]
    fn wall_shapes_vanish() {
        // ν = (3) in sl_2 at level 2 lies on the affine wall
        assert!(fold_to_alcove(&Partition::row(3), 2, 2).is_none());
        let (sign, wt) = fold_to_alcove(&Partition::row(4), 2, 2).unwrap();
        assert_eq!((sign, wt), (-1, w(&[0, 2])));
    }

    #[test]
    fn rotation_small() {
        let ring = FusionRing::new(3, 2).unwrap();
        let vac = LevelWeight::vacuum(3, 2).unwrap();
        let v = rotation_check(&ring, &vac).unwrap();
        assert!(v.holds);
        assert_eq!(v.expected, w(&[0, 2, 0]));
        for a in enumerate_level(2, 3).unwrap() {
            let ring = FusionRing::new(2, 3).unwrap();
            assert!(rotation_check(&ring, &a).unwrap().holds);
        }
    }

    #[test]
    fn cache_returns_same_values() {
        let ring = FusionRing::new(3, 3).unwrap();
        let a = w(&[1, 1, 1]);
        let first = ring.fuse(&a, &a).unwrap();
        let second = ring.fuse(&a, &a).unwrap();
        assert!(Arc::ptr_eq(&first, &second));
        assert_eq!(*first, fuse(&a, &a).unwrap());
    }

    #[test]
    fn tolerance_schedule() {
        assert!((default_verlinde_tolerance(64) - 1e-6).abs() < 1e-18);
        assert!((default_verlinde_tolerance(256) - 1e-20).abs() < 1e-32);
    }
}

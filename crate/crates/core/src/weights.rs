//! Dominant affine weights of `sl_n` at level `m` and the maps between them
//! and rectangle partitions.
//!
//! A [`LevelWeight`] is the label vector `(a_0, ..., a_{n-1})` with
//! `a_0 + ... + a_{n-1} = m`. The partition attached to it is
//! `d(a) = (a_1 + ... + a_{n-1}, a_2 + ... + a_{n-1}, ..., a_{n-1})`, and its
//! degree is `|d(a)| mod n`. The duality map [`LevelWeight::tau`] sends a
//! weight of degree `i` in `C_{n,m}` to a weight of degree `i` in `C_{m,n}`
//! by transposing `d(a)` and rotating.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_rectangle, parse_list, Partition};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LevelWeight {
    labels: Vec<usize>,
    level: usize,
}

impl LevelWeight {
    /// Builds a weight from its labels; the level is their sum.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::RankTooSmall(labels.len()));
        }
        let level = labels.iter().sum();
        Ok(LevelWeight { labels, level })
    }

    /// Like [`LevelWeight::new`] but also checks the level.
    pub fn with_level(labels: Vec<usize>, level: usize) -> Result<Self> {
        let w = Self::new(labels)?;
        if w.level != level {
            return Err(Error::LevelMismatch {
                weight: w.to_string(),
                found: w.level,
                expected: level,
            });
        }
        Ok(w)
    }

    /// The vacuum `(m, 0, ..., 0)`.
    pub fn vacuum(rank: usize, level: usize) -> Result<Self> {
        check_rank(rank)?;
        let mut labels = vec![0; rank];
        labels[0] = level;
        Ok(LevelWeight { labels, level })
    }

    /// `Λ_i`: the level-one weight of rank `rank` with its single 1 in slot `i mod rank`.
    pub fn fundamental(rank: usize, i: usize) -> Result<Self> {
        check_rank(rank)?;
        let mut labels = vec![0; rank];
        labels[i % rank] = 1;
        Ok(LevelWeight { labels, level: 1 })
    }

    /// `w_{n,m}(λ)` for `λ` in the `n × m` rectangle (`n` rows, parts at most `m`).
    pub fn from_partition(lambda: &Partition, rank: usize, level: usize) -> Result<Self> {
        check_rank(rank)?;
        lambda.ensure_fits(rank, level)?;
        let mut labels = Vec::with_capacity(rank);
        labels.push(level - lambda.part(0) + lambda.part(rank - 1));
        for i in 0..rank - 1 {
            labels.push(lambda.part(i) - lambda.part(i + 1));
        }
        Ok(LevelWeight { labels, level })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_vacuum(&self) -> bool {
        self.labels[1..].iter().all(|&a| a == 0)
    }

    /// `d_{n,m}(a)`, a partition with at most `n - 1` rows.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.rank() - 1);
        let mut acc = 0;
        for &a in self.labels[1..].iter().rev() {
            acc += a;
            parts.push(acc);
        }
        parts.reverse();
        Partition::from_sorted(parts)
    }

    /// `|d(a)| = Σ i·a_i`.
    pub fn partition_size(&self) -> usize {
        self.labels.iter().enumerate().map(|(i, &a)| i * a).sum()
    }

    /// Degree in `Z/n`.
    pub fn degree(&self) -> usize {
        self.partition_size() % self.rank()
    }

    /// `ρ_n^power`; one step sends `(a_0, ..., a_{n-1})` to `(a_{n-1}, a_0, ..., a_{n-2})`.
    pub fn rotate(&self, power: i64) -> LevelWeight {
        let n = self.rank();
        let shift = power.rem_euclid(n as i64) as usize;
        let mut labels = self.labels.clone();
        labels.rotate_right(shift);
        LevelWeight {
            labels,
            level: self.level,
        }
    }

    /// Highest weight of the dual object: `a_0` fixed, the rest reversed.
    pub fn dual(&self) -> LevelWeight {
        let mut labels = self.labels.clone();
        labels[1..].reverse();
        LevelWeight {
            labels,
            level: self.level,
        }
    }

    /// The level-rank map `τ_i^{n,m}: C^i_{n,m} → C^i_{m,n}`.
    ///
    /// Requires `degree(a) ≡ i (mod n)`; the result depends on `i` only mod `nm`.
    pub fn tau(&self, i: i64) -> Result<LevelWeight> {
        tau_from_partition(&self.to_partition(), self.rank(), self.level, i)
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank < 2 {
        Err(Error::RankTooSmall(rank))
    } else {
        Ok(())
    }
}

/// `ρ_m^{(i - |λ|)/n}(w_{m,n}(λ^t))` for any `λ` in the `n × m` rectangle with
/// `|λ| ≡ i (mod n)`. With `λ = d(a)` this is `τ_i(a)`.
pub fn tau_from_partition(lambda: &Partition, rank: usize, level: usize, i: i64) -> Result<LevelWeight> {
    check_rank(rank)?;
    check_rank(level)?;
    lambda.ensure_fits(rank, level)?;
    let n = rank as i64;
    let period = n * level as i64;
    let i = i.rem_euclid(period);
    let offset = i - lambda.size() as i64;
    if offset.rem_euclid(n) != 0 {
        return Err(Error::DegreeMismatch {
            weight: lambda.to_string(),
            degree: lambda.size() % rank,
            rank,
            index: i,
        });
    }
    let exponent = offset / n;
    debug_assert_eq!(exponent * n, offset);
    let image = LevelWeight::from_partition(&lambda.transpose(), level, rank)?;
    Ok(image.rotate(exponent))
}

/// All of `C_{n,m}` in canonical order (the order of `d(a)` as partitions).
pub fn enumerate_level(rank: usize, level: usize) -> Result<Vec<LevelWeight>> {
    check_rank(rank)?;
    enumerate_rectangle(rank - 1, level)
        .iter()
        .map(|lam| LevelWeight::from_partition(lam, rank, level))
        .collect()
}

/// The graded piece `C^i_{n,m}` (degree `i mod n`), in canonical order.
pub fn enumerate_graded(rank: usize, level: usize, i: i64) -> Result<Vec<LevelWeight>> {
    let residue = i.rem_euclid(rank.max(1) as i64) as usize;
    Ok(enumerate_level(rank, level)?
        .into_iter()
        .filter(|a| a.degree() == residue)
        .collect())
}

impl Ord for LevelWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then(self.level.cmp(&other.level))
            .then_with(|| self.to_partition().cmp(&other.to_partition()))
    }
}

impl PartialOrd for LevelWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LevelWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LevelWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LevelWeight{self}")
    }
}

impl Serialize for LevelWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels.serialize(s)
    }
}

/// Parses `[1,0,0,1,1,0]` (brackets optional).
impl FromStr for LevelWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s);
        LevelWeight::new(parse_list(inner)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(labels: &[usize]) -> LevelWeight {
        LevelWeight::new(labels.to_vec()).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn from_partition_examples() {
        assert_eq!(LevelWeight::from_partition(&p(&[2, 1, 1]), 6, 3).unwrap(), w(&[1, 1, 0, 1, 0, 0]));
        assert_eq!(LevelWeight::from_partition(&Partition::empty(), 4, 5).unwrap(), w(&[5, 0, 0, 0]));
        assert_eq!(LevelWeight::from_partition(&p(&[3, 1]), 3, 6).unwrap(), w(&[3, 2, 1]));
        assert!(LevelWeight::from_partition(&p(&[7]), 3, 6).is_err());
        assert!(LevelWeight::from_partition(&p(&[1, 1, 1, 1]), 3, 6).is_err());
    }

    #[test]
    fn to_partition_examples() {
        assert_eq!(w(&[1, 0, 0, 1, 1, 0]).to_partition(), p(&[2, 2, 2, 1]));
        assert_eq!(w(&[3, 0, 0]).to_partition(), Partition::empty());
        assert_eq!(w(&[4, 6]).to_partition(), p(&[6]));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(w(&[3, 2, 1]).degree(), 1);
        assert_eq!(LevelWeight::vacuum(5, 3).unwrap().degree(), 0);
        for a in enumerate_level(3, 4).unwrap() {
            assert_eq!(a.rotate(1).degree(), (a.degree() + 4) % 3);
        }
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(w(&[1, 1, 0, 1, 0, 0]).rotate(3), w(&[1, 0, 0, 1, 1, 0]));
        assert_eq!(w(&[2, 1, 0]).rotate(0), w(&[2, 1, 0]));
        assert_eq!(
            w(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 0]).rotate(-3),
            w(&[0, 0, 0, 1, 0, 0, 0, 1, 0, 0])
        );
        let a = w(&[1, 2, 0, 3]);
        assert_eq!(a.rotate(4), a);
        assert_eq!(a.rotate(-1).rotate(1), a);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(w(&[3, 2, 1]).tau(13).unwrap(), w(&[1, 0, 0, 1, 1, 0]));
        for (n, m) in [(2, 3), (4, 2), (5, 5)] {
            let vac = LevelWeight::vacuum(n, m).unwrap();
            assert_eq!(vac.tau(0).unwrap(), LevelWeight::vacuum(m, n).unwrap());
        }
        assert_eq!(w(&[4, 6]).tau(0).unwrap(), w(&[0, 0, 0, 1, 0, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn tau_rejects_wrong_degree() {
        let err = w(&[3, 2, 1]).tau(12).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn tau_depends_on_index_mod_nm() {
        let a = w(&[3, 2, 1]);
        assert_eq!(a.tau(13).unwrap(), a.tau(13 + 18).unwrap());
        assert_eq!(a.tau(13).unwrap(), a.tau(13 - 36).unwrap());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(w(&[1, 0, 0, 1, 1, 0]).dual(), w(&[1, 0, 1, 1, 0, 0]));
        let vac = LevelWeight::vacuum(4, 3).unwrap();
        assert_eq!(vac.dual(), vac);
        for a in enumerate_level(4, 3).unwrap() {
            assert_eq!(a.dual().dual(), a);
        }
    }

    #[test]
    fn graded_enumeration() {
        for n in 2..=6 {
            for m in 1..=6 {
                let all = enumerate_level(n, m).unwrap();
                assert_eq!(all.len(), binomial(n + m - 1, n - 1));
                let graded: usize = (0..n as i64).map(|i| enumerate_graded(n, m, i).unwrap().len()).sum();
                assert_eq!(graded, all.len());
                assert!(all.windows(2).all(|x| x[0] < x[1]));
            }
        }
        assert_eq!(enumerate_graded(2, 2, 0).unwrap(), vec![w(&[2, 0]), w(&[0, 2])]);
        let level_one = enumerate_level(6, 1).unwrap();
        assert_eq!(level_one.len(), 6);
        for i in 0..6 {
            let lam = LevelWeight::fundamental(6, i).unwrap();
            assert_eq!(lam.degree(), i);
            assert!(level_one.contains(&lam));
        }
    }

    #[test]
    fn w_after_d_is_identity() {
        for n in 2..=6 {
            for m in 1..=6 {
                for a in enumerate_level(n, m).unwrap() {
                    let back = LevelWeight::from_partition(&a.to_partition(), n, m).unwrap();
                    assert_eq!(back, a);
                    assert_eq!(a.to_partition().size(), a.partition_size());
                }
            }
        }
    }

    #[test]
    fn rank_one_rejected() {
        assert!(matches!(LevelWeight::new(vec![3]), Err(Error::RankTooSmall(1))));
        assert!(LevelWeight::vacuum(1, 2).is_err());
    }

    #[test]
    fn literal_round_trip() {
        let a: LevelWeight = "[1,0,0,1,1,0]".parse().unwrap();
        assert_eq!(a, w(&[1, 0, 0, 1, 1, 0]));
        assert_eq!(a.to_string().parse::<LevelWeight>().unwrap(), a);
    }
}

//! Young diagrams: transpose, hooks and contents, and the partitions that
//! fit in a rectangle.
//!
//! A [`Partition`] never stores trailing zeros, so structural equality is
//! equality of diagrams. The [`Ord`] instance is the canonical graded order
//! used throughout the crate: first by size, then lexicographically
//! decreasing, so `(2)` precedes `(1,1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// Per-cell statistics entering Stanley's hook-content formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellStat {
    pub row: usize,
    pub col: usize,
    /// `col - row`.
    pub content: i64,
    /// Arm plus leg plus one.
    pub hook: usize,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![k] }
        }
    }

    pub(crate) fn from_sorted(mut parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i`-th part (0-indexed), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// First part, or 0 for the empty diagram.
    pub fn width(&self) -> usize {
        self.part(0)
    }

    /// Parts padded with zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    /// True when the diagram fits in `rows` rows of at most `cols` boxes.
    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.height() <= rows && self.width() <= cols
    }

    pub fn ensure_fits(&self, rows: usize, cols: usize) -> Result<()> {
        if self.fits_in(rows, cols) {
            Ok(())
        } else {
            Err(Error::OutsideRectangle {
                partition: self.to_string(),
                rows,
                cols,
            })
        }
    }

    pub fn transpose(&self) -> Partition {
        let width = self.width();
        let parts = (0..width)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.height() <= self.height() && (0..other.height()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Contents and hook lengths, one entry per cell in row-major order.
    pub fn hooks_and_contents(&self) -> Vec<CellStat> {
        let conj = self.transpose();
        let mut cells = Vec::with_capacity(self.size());
        for (row, &len) in self.parts.iter().enumerate() {
            for col in 0..len {
                let arm = len - col - 1;
                let leg = conj.parts[col] - row - 1;
                cells.push(CellStat {
                    row,
                    col,
                    content: col as i64 - row as i64,
                    hook: arm + leg + 1,
                });
            }
        }
        cells
    }

    /// ASCII rendering, one text line per element of the returned vector.
    pub fn young_lines(&self) -> Vec<String> {
        if self.is_empty() {
            return vec!["1".to_string()];
        }
        let border = |len: usize| format!("+{}", "-+".repeat(len));
        let mut lines = vec![border(self.parts[0])];
        for &len in &self.parts {
            lines.push(format!("|{}", " |".repeat(len)));
            lines.push(border(len));
        }
        lines
    }

    pub fn young_diagram(&self) -> String {
        self.young_lines().join("\n")
    }
}

/// All partitions that fit in `rows` rows of at most `cols` boxes, in the
/// canonical graded order. There are `binomial(rows + cols, rows)` of them.
pub fn enumerate_rectangle(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for size in 0..=rows * cols {
        let mut current = Vec::new();
        partitions_of(size, rows, cols, &mut current, &mut out);
    }
    out
}

/// Partitions of `size` with at most `rows` parts, each at most `cols`, in
/// lexicographically decreasing order.
pub fn partitions_of_size(size: usize, rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_of(size, rows, cols, &mut Vec::new(), &mut out);
    out
}

fn partitions_of(
    remaining: usize,
    rows: usize,
    cap: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    if rows == 0 || remaining > rows * cap {
        return;
    }
    for part in (1..=cap.min(remaining)).rev() {
        current.push(part);
        partitions_of(remaining - part, rows - 1, part, current, out);
        current.pop();
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Parses `(3,1)`, `3,1`, `()` or `∅`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∅" {
            return Ok(Partition::empty());
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        Partition::new(parse_list(inner)?)
    }
}

pub(crate) fn parse_list(inner: &str) -> Result<Vec<usize>> {
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[4, 3, 1]).transpose(), p(&[3, 2, 2, 1]));
    }

    #[test]
    fn trailing_zeros_dropped() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn hooks_contents_431() {
        let cells = p(&[4, 3, 1]).hooks_and_contents();
        let contents: Vec<i64> = cells.iter().map(|c| c.content).collect();
        let hooks: Vec<usize> = cells.iter().map(|c| c.hook).collect();
        assert_eq!(contents, vec![0, 1, 2, 3, -1, 0, 1, -2]);
        assert_eq!(hooks, vec![6, 4, 3, 1, 4, 2, 1, 1]);
    }

    #[test]
    fn hooks_contents_small() {
        let one = p(&[1]).hooks_and_contents();
        assert_eq!((one[0].content, one[0].hook), (0, 1));
        let sq = p(&[2, 2]).hooks_and_contents();
        assert_eq!(sq.iter().map(|c| c.content).collect::<Vec<_>>(), vec![0, 1, -1, 0]);
        assert_eq!(sq.iter().map(|c| c.hook).collect::<Vec<_>>(), vec![3, 2, 2, 1]);
    }

    #[test]
    fn rectangle_enumeration() {
        let two = enumerate_rectangle(2, 2);
        assert_eq!(
            two,
            vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])]
        );
        let row: Vec<_> = enumerate_rectangle(1, 4);
        assert_eq!(row, (0..=4).map(Partition::row).collect::<Vec<_>>());
        let r36 = enumerate_rectangle(3, 6);
        assert!(r36.contains(&p(&[3, 1])));
        assert!(!r36.contains(&p(&[7])));
        assert!(!r36.contains(&p(&[1, 1, 1, 1])));
    }

    #[test]
    fn rectangle_cardinality_and_order() {
        for n in 1..=8 {
            for m in 1..=8 {
                let all = enumerate_rectangle(n, m);
                assert_eq!(all.len(), binomial(n + m, n), "I_{{{n},{m}}}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn transpose_properties_on_rectangles() {
        for n in 1..=5 {
            for m in 1..=5 {
                for lam in enumerate_rectangle(n, m) {
                    let t = lam.transpose();
                    assert!(t.fits_in(m, n));
                    assert_eq!(t.transpose(), lam);
                    assert_eq!(t.size(), lam.size());
                    assert_eq!(t.height(), lam.width());
                    let mut h1: Vec<_> = lam.hooks_and_contents().iter().map(|c| c.hook).collect();
                    let mut h2: Vec<_> = t.hooks_and_contents().iter().map(|c| c.hook).collect();
                    h1.sort_unstable();
                    h2.sort_unstable();
                    assert_eq!(h1, h2);
                    let mut c1: Vec<_> = lam.hooks_and_contents().iter().map(|c| -c.content).collect();
                    let mut c2: Vec<_> = t.hooks_and_contents().iter().map(|c| c.content).collect();
                    c1.sort_unstable();
                    c2.sort_unstable();
                    assert_eq!(c1, c2);
                }
            }
        }
    }

    #[test]
    fn parse_and_render() {
        assert_eq!("(3,1)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("2, 2".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert!("(1,x)".parse::<Partition>().is_err());
        assert_eq!(p(&[2, 1]).young_diagram(), "+-+-+\n| | |\n+-+-+\n| |\n+-+");
    }
}

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// A finite formal sum `Σ mult · label` with strictly positive multiplicities.
#[derive(Clone, PartialEq, Eq)]
pub struct Decomposition<L: Ord> {
    terms: BTreeMap<L, u64>,
}

impl<L: Ord> Decomposition<L> {
    pub fn new() -> Self {
        Decomposition {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(label: L) -> Self {
        let mut d = Self::new();
        d.add(label, 1);
        d
    }

    pub fn add(&mut self, label: L, mult: u64) {
        if mult > 0 {
            *self.terms.entry(label).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, label: &L) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, u64)> {
        self.terms.iter().map(|(l, &m)| (l, m))
    }

    /// Number of distinct labels.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }

    /// The label if this is a single simple summand of multiplicity one.
    pub fn as_simple(&self) -> Option<&L> {
        match (self.terms.len(), self.terms.iter().next()) {
            (1, Some((l, 1))) => Some(l),
            _ => None,
        }
    }
}

impl<L: Ord> Default for Decomposition<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord> FromIterator<(L, u64)> for Decomposition<L> {
    fn from_iter<I: IntoIterator<Item = (L, u64)>>(iter: I) -> Self {
        let mut d = Self::new();
        for (l, m) in iter {
            d.add(l, m);
        }
        d
    }
}

impl<L: Ord + fmt::Display> fmt::Display for Decomposition<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{m}{l}")?;
            }
        }
        Ok(())
    }
}

impl<L: Ord + fmt::Display> fmt::Debug for Decomposition<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Decomposition({self})")
    }
}

#[derive(Serialize)]
struct Record<'a, L> {
    weight: &'a L,
    multiplicity: u64,
}

/// Serializes as a list of `{weight, multiplicity}` records in label order.
impl<L: Ord + Serialize> Serialize for Decomposition<L> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(weight, &multiplicity)| Record { weight, multiplicity }))
    }
}

//! Schur polynomials, Littlewood–Richardson coefficients and the skew Cauchy
//! identity `e_i(x_a y_b) = Σ_{|λ| = i} s_λ(x) s_{λ^t}(y)`.
//!
//! Polynomials are sparse maps from exponent vectors to integer
//! coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::Decomposition;
use crate::partitions::{partitions_of_size, Partition};

#[derive(Clone, PartialEq, Eq)]
pub struct SymPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl SymPolynomial {
    pub fn zero(vars: usize) -> Self {
        SymPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars], 1)
    }

    pub fn monomial(exponents: Vec<u32>, coeff: i64) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: i64) {
        debug_assert_eq!(exponents.len(), self.vars);
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Places this polynomial's variables at positions `offset..offset+vars`
    /// of a ring with `total` variables.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.vars <= total);
        let mut out = Self::zero(total);
        for (e, &c) in &self.terms {
            let mut big = vec![0; total];
            big[offset..offset + self.vars].copy_from_slice(e);
            out.terms.insert(big, c);
        }
        out
    }

    /// Value at an integer point.
    pub fn evaluate(&self, point: &[i64]) -> i128 {
        assert_eq!(point.len(), self.vars);
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(point)
                    .fold(c as i128, |acc, (&k, &x)| acc * (x as i128).pow(k))
            })
            .sum()
    }

    /// Invariance under every adjacent transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, &c)| {
                let mut swapped = e.clone();
                swapped.swap(i, i + 1);
                self.coefficient(&swapped) == c
            })
        })
    }
}

impl Add<&SymPolynomial> for &SymPolynomial {
    type Output = SymPolynomial;
    fn add(self, rhs: &SymPolynomial) -> SymPolynomial {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub<&SymPolynomial> for &SymPolynomial {
    type Output = SymPolynomial;
    fn sub(self, rhs: &SymPolynomial) -> SymPolynomial {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul<&SymPolynomial> for &SymPolynomial {
    type Output = SymPolynomial;
    fn mul(self, rhs: &SymPolynomial) -> SymPolynomial {
        assert_eq!(self.vars, rhs.vars, "variable count mismatch");
        let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert(0) += c1 * c2;
            }
        }
        acc.retain(|_, c| *c != 0);
        SymPolynomial {
            vars: self.vars,
            terms: acc,
        }
    }
}

impl fmt::Display for SymPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { format!("x{}", v + 1) } else { format!("x{}^{k}", v + 1) })
                .collect();
            match (c.abs(), mono.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{}", mono.join("*"))?,
                (a, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPolynomial<{}>({self})", self.vars)
    }
}

impl Serialize for SymPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `s_λ(x_1, ..., x_k)` as the generating function of semistandard tableaux.
pub fn schur(lambda: &Partition, k: usize) -> SymPolynomial {
    let mut out = SymPolynomial::zero(k);
    if lambda.height() > k {
        return out;
    }
    let shape = lambda.parts().to_vec();
    let col_len = lambda.transpose();
    let mut tableau: Vec<Vec<u32>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut exps = vec![0u32; k];
    fill_ssyt(&shape, col_len.parts(), k as u32, 0, 0, &mut tableau, &mut exps, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_ssyt(
    shape: &[usize],
    col_len: &[usize],
    k: u32,
    row: usize,
    col: usize,
    tableau: &mut Vec<Vec<u32>>,
    exps: &mut Vec<u32>,
    out: &mut SymPolynomial,
) {
    if row == shape.len() {
        *out.terms.entry(exps.clone()).or_insert(0) += 1;
        return;
    }
    let (next_row, next_col) = if col + 1 == shape[row] { (row + 1, 0) } else { (row, col + 1) };
    let left = if col > 0 { tableau[row][col - 1] } else { 1 };
    let above = if row > 0 { tableau[row - 1][col] + 1 } else { 1 };
    // leave room for the rest of this column
    let top = k - (col_len[col] - 1 - row) as u32;
    for v in left.max(above)..=top {
        tableau[row][col] = v;
        exps[(v - 1) as usize] += 1;
        fill_ssyt(shape, col_len, k, next_row, next_col, tableau, exps, out);
        exps[(v - 1) as usize] -= 1;
    }
}

/// `e_i(x_1, ..., x_k)`.
pub fn elementary(i: usize, k: usize) -> SymPolynomial {
    let mut out = SymPolynomial::zero(k);
    for_each_subset(k, i, |subset| {
        let mut e = vec![0; k];
        for &v in subset {
            e[v] = 1;
        }
        out.add_term(e, 1);
    });
    out
}

fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < size - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, size, cur, f);
            cur.pop();
        }
    }
    go(0, n, size, &mut Vec::with_capacity(size), &mut f);
}

/// Littlewood–Richardson coefficients `c^ν_{λμ}` for all `ν` with at most
/// `max_height` rows, by enumerating LR skew tableaux of shape `ν/λ` and
/// content `μ` whose reverse reading word is a lattice word.
pub fn lr_coefficients(lambda: &Partition, mu: &Partition, max_height: usize) -> BTreeMap<Partition, u64> {
    let mut search = LrSearch {
        outer: lambda.padded(max_height.max(lambda.height())),
        content: mu.parts().to_vec(),
        max_rows: max_height,
        result: BTreeMap::new(),
    };
    if lambda.height() > max_height {
        return search.result;
    }
    let mut nu = Vec::with_capacity(max_height);
    let mut counts = vec![0usize; search.content.len() + 1];
    search.row(0, &mut nu, &[], &mut counts, mu.size());
    search.result
}

/// `s_λ · s_μ = Σ c^ν_{λμ} s_ν` in `k` variables.
pub fn lr_expand(lambda: &Partition, mu: &Partition, k: usize) -> Decomposition<Partition> {
    lr_coefficients(lambda, mu, k).into_iter().collect()
}

struct LrSearch {
    outer: Vec<usize>,
    /// `content[j - 1] = μ_j`
    content: Vec<usize>,
    max_rows: usize,
    result: BTreeMap<Partition, u64>,
}

impl LrSearch {
    /// `counts[j]` is the number of `j` labels placed so far (index 0 unused).
    fn row(&mut self, r: usize, nu: &mut Vec<usize>, prev: &[usize], counts: &mut Vec<usize>, remaining: usize) {
        if remaining == 0 {
            let mut parts = nu.clone();
            parts.extend_from_slice(&self.outer[r.min(self.outer.len())..]);
            let shape = Partition::from_sorted(parts);
            *self.result.entry(shape).or_insert(0) += 1;
            return;
        }
        if r == self.max_rows {
            return;
        }
        let start = self.outer[r];
        let limit = if r == 0 { start + remaining } else { nu[r - 1] };
        let snapshot = counts.clone();
        let mut labels = Vec::new();
        self.label(1, r, start, limit, nu, prev, counts, &snapshot, &mut labels, remaining);
    }

    #[allow(clippy::too_many_arguments)]
    fn label(
        &mut self,
        j: usize,
        r: usize,
        pos: usize,
        limit: usize,
        nu: &mut Vec<usize>,
        prev: &[usize],
        counts: &mut Vec<usize>,
        start_counts: &[usize],
        labels: &mut Vec<usize>,
        remaining: usize,
    ) {
        if j > self.content.len() {
            if pos == 0 {
                // an empty row ends the shape
                return;
            }
            let placed = labels.len();
            nu.push(pos);
            let row_labels = labels.clone();
            self.row(r + 1, nu, &row_labels, counts, remaining - placed);
            nu.pop();
            return;
        }
        let mut max_c = (self.content[j - 1] - counts[j]).min(limit - pos);
        if j >= 2 {
            max_c = max_c.min(start_counts[j - 1] - start_counts[j].min(start_counts[j - 1]));
        }
        if r > 0 {
            let prev_start = self.outer[r - 1];
            let mut ok = 0;
            while ok < max_c {
                let col = pos + ok;
                if col >= prev_start && prev[col - prev_start] >= j {
                    break;
                }
                ok += 1;
            }
            max_c = ok;
        }
        for c in 0..=max_c {
            counts[j] += c;
            labels.extend(std::iter::repeat(j).take(c));
            self.label(j + 1, r, pos + c, limit, nu, prev, counts, start_counts, labels, remaining);
            labels.truncate(labels.len() - c);
            counts[j] -= c;
        }
    }
}

/// Outcome of checking the skew Cauchy identity for one degree.
#[derive(Debug, Clone, Serialize)]
pub struct CauchyVerdict {
    pub n: usize,
    pub m: usize,
    pub i: usize,
    pub holds: bool,
    pub summands: usize,
    pub lhs_terms: usize,
    /// `lhs - rhs`; zero when the identity holds.
    pub difference: SymPolynomial,
}

/// Checks `e_i(x_1y_1, ..., x_ny_m) = Σ_{λ ⊂ n×m, |λ| = i} s_λ(x) s_{λ^t}(y)`
/// as an identity in `n + m` variables.
pub fn verify_skew_cauchy(n: usize, m: usize, i: usize) -> CauchyVerdict {
    let total = n + m;
    let mut lhs = SymPolynomial::zero(total);
    for_each_subset(n * m, i, |subset| {
        let mut e = vec![0u32; total];
        for &pair in subset {
            e[pair / m] += 1;
            e[n + pair % m] += 1;
        }
        lhs.add_term(e, 1);
    });
    let shapes = partitions_of_size(i, n, m);
    let rhs = shapes
        .par_iter()
        .map(|lam| {
            let x = schur(lam, n).embed(total, 0);
            let y = schur(&lam.transpose(), m).embed(total, n);
            &x * &y
        })
        .reduce(|| SymPolynomial::zero(total), |a, b| &a + &b);
    let difference = &lhs - &rhs;
    CauchyVerdict {
        n,
        m,
        i,
        holds: difference.is_zero(),
        summands: shapes.len(),
        lhs_terms: lhs.term_count(),
        difference,
    }
}

//! Kac–Peterson S-matrix of `C(sl_n)_m`, central charges, conformal weights
//! and twists.
//!
//! Weights are taken in `GL_n` coordinates `x = d(a) + ρ` with
//! `ρ = (n-1, ..., 1, 0)`; the invariant form on the traceless part is
//! `(x̄, ȳ) = Σ x_i y_i - (Σ x)(Σ y)/n`, so every phase in
//! `S_ab ∝ Σ_w sign(w) exp(-2πi (w x̄, ȳ)/(n+m))` is a power of
//! `ω = exp(2πi/(n(n+m)))`. For `n ≤ 5` the permutation sum is collapsed
//! into an exact exponent histogram; above that the determinant
//! `det[ω^{-n x_j y_i}]` is used.

use num_rational::Rational64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::real::{Complex, Real};
use crate::weights::{enumerate_level, LevelWeight};

/// Rank up to which the permutation sum is used instead of a determinant.
const PERMUTATION_LIMIT: usize = 5;

/// Charges on both sides of `(sl_n)_{mk} ⊕ (sl_m)_{nk} ⊂ (sl_{nm})_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CentralCharges {
    #[serde(serialize_with = "ser_ratio")]
    pub ambient: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub pair: Rational64,
}

impl CentralCharges {
    pub fn equal(&self) -> bool {
        self.ambient == self.pair
    }
}

fn ser_ratio<S: Serializer>(q: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Sugawara central charge of `(sl_n)_k`: `(n² - 1)k / (n + k)`.
pub fn sugawara_charge(n: usize, k: usize) -> Rational64 {
    let (n, k) = (n as i64, k as i64);
    Rational64::new((n * n - 1) * k, n + k)
}

pub fn central_charge(n: usize, m: usize, k: usize) -> Result<CentralCharges> {
    if n == 0 || m == 0 || k == 0 {
        return Err(Error::InvalidArgument("central_charge needs positive n, m, k".into()));
    }
    Ok(CentralCharges {
        ambient: sugawara_charge(n * m, k),
        pair: sugawara_charge(n, m * k) + sugawara_charge(m, n * k),
    })
}

/// `h_a = (ā, ā + 2ρ) / (2(n + m))`, exact.
pub fn conformal_weight(a: &LevelWeight) -> Rational64 {
    let n = a.rank() as i64;
    let k = n + a.level() as i64;
    let lambda = a.to_partition().padded(a.rank());
    let size: i64 = lambda.iter().map(|&p| p as i64).sum();
    let squares: i64 = lambda.iter().map(|&p| (p * p) as i64).sum();
    let shift: i64 = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 * (n - 1 - 2 * i as i64))
        .sum();
    Rational64::new(n * (squares + shift) - size * size, 2 * n * k)
}

/// `θ_a = exp(2πi h_a)`.
pub fn twist(a: &LevelWeight, bits: usize) -> Complex {
    let h = conformal_weight(a);
    Complex::root_of_unity(*h.numer(), *h.denom(), bits)
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: Rational64) -> Rational64 {
    q - q.floor()
}

#[derive(Debug, Clone)]
pub struct SMatrixData {
    pub n: usize,
    pub m: usize,
    /// Row and column labels, in canonical order.
    pub weights: Vec<LevelWeight>,
    pub entries: Vec<Vec<Complex>>,
    pub central_charge: Rational64,
    pub conformal_weights: Vec<Rational64>,
    pub bits: usize,
    /// `max |(S S†)_{ab} - δ_{ab}|` measured after construction.
    pub unitarity_residual: f64,
}

fn gl_coordinates(a: &LevelWeight) -> Vec<i64> {
    let n = a.rank();
    a.to_partition()
        .padded(n)
        .iter()
        .enumerate()
        .map(|(i, &p)| (p + n - 1 - i) as i64)
        .collect()
}

/// Heap's algorithm over `0..n`, yielding each permutation with its sign.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i64)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    f(&perm, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Unnormalized entry `Σ_w sign(w) ω^{-(n Σ x_{w(i)} y_i - XY)}`.
fn raw_entry(x: &[i64], y: &[i64], roots: &[Complex], bits: usize) -> Complex {
    let n = x.len();
    let period = roots.len() as i64;
    let xs: i64 = x.iter().sum();
    let ys: i64 = y.iter().sum();
    if n <= PERMUTATION_LIMIT {
        let mut histogram = vec![0i64; roots.len()];
        for_each_permutation(n, |perm, sign| {
            let dot: i64 = perm.iter().zip(y).map(|(&p, &yi)| x[p] * yi).sum();
            let e = (-(n as i64 * dot - xs * ys)).rem_euclid(period) as usize;
            histogram[e] += sign;
        });
        histogram
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(Complex::zero(bits), |acc, (e, &c)| {
                &acc + &roots[e].scale(&Real::from_i64(c, bits))
            })
    } else {
        let mut matrix: Vec<Vec<Complex>> = y
            .iter()
            .map(|&yi| {
                x.iter()
                    .map(|&xj| roots[(-(n as i64) * xj * yi).rem_euclid(period) as usize].clone())
                    .collect()
            })
            .collect();
        let det = determinant(&mut matrix, bits);
        &det * &roots[(xs * ys).rem_euclid(period) as usize]
    }
}

/// Complex LU determinant with partial pivoting; destroys `a`.
fn determinant(a: &mut [Vec<Complex>], bits: usize) -> Complex {
    let n = a.len();
    let mut det = Complex::one(bits);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .norm_sqr()
                    .partial_cmp(&a[j][col].norm_sqr())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty range");
        if a[pivot][col].norm_sqr() == Real::zero(bits) {
            return Complex::zero(bits);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        for row in col + 1..n {
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[row][k] = &a[row][k] - &delta;
            }
        }
    }
    det
}

/// Builds the S-matrix at `bits` of binary precision.
///
/// Fails with [`Error::InsufficientPrecision`] when the unitarity residual
/// exceeds `2^{-bits/2}`.
pub fn s_matrix(n: usize, m: usize, bits: usize) -> Result<SMatrixData> {
    if m == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    let weights = enumerate_level(n, m)?;
    let k = n + m;
    let working = bits + 32;
    let period = (n * k) as i64;
    let roots: Vec<Complex> = (0..period).map(|e| Complex::root_of_unity(e, period, working)).collect();
    let coords: Vec<Vec<i64>> = weights.iter().map(gl_coordinates).collect();
    let size = weights.len();

    let mut raw: Vec<Vec<Complex>> = vec![Vec::with_capacity(size); size];
    for a in 0..size {
        for b in 0..size {
            let v = if b < a {
                raw[b][a].clone()
            } else {
                raw_entry(&coords[a], &coords[b], &roots, working)
            };
            raw[a].push(v);
        }
    }

    // |κ| = (n (n+m)^{n-1})^{-1/2}; the phase is fixed by S_00 > 0
    let mut norm = Real::from_i64(n as i64, working);
    for _ in 1..n {
        norm = norm * &Real::from_i64(k as i64, working);
    }
    let r00 = raw[0][0].clone();
    let phase = r00.scale(&(Real::one(working) / &r00.abs()));
    let kappa = &Complex::from_real(norm.sqrt()) * &phase;
    let entries: Vec<Vec<Complex>> = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| {
                    let s = z / &kappa;
                    Complex::new(s.re.with_bits(bits), s.im.with_bits(bits))
                })
                .collect()
        })
        .collect();

    let residual = unitarity_residual(&entries);
    check_precision(bits, residual)?;
    let conformal_weights = weights.iter().map(conformal_weight).collect();
    Ok(SMatrixData {
        n,
        m,
        weights,
        entries,
        central_charge: sugawara_charge(n, m),
        conformal_weights,
        bits,
        unitarity_residual: residual,
    })
}

/// Accepts a unitarity residual below `2^{-bits/2}`.
fn check_precision(bits: usize, residual: f64) -> Result<()> {
    if residual < 2f64.powf(-(bits as f64) / 2.0) {
        Ok(())
    } else {
        Err(Error::InsufficientPrecision { bits, residual })
    }
}

fn matmul(a: &[Vec<Complex>], b: &[Vec<Complex>]) -> Vec<Vec<Complex>> {
    let size = a.len();
    let bits = a[0][0].bits();
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    (0..size).fold(Complex::zero(bits), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

fn max_deviation(a: &[Vec<Complex>], expected: impl Fn(usize, usize) -> Complex) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in a.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            worst = worst.max((z - &expected(i, j)).abs().to_f64());
        }
    }
    worst
}

fn unitarity_residual(s: &[Vec<Complex>]) -> f64 {
    let bits = s[0][0].bits();
    let adjoint: Vec<Vec<Complex>> = (0..s.len())
        .map(|i| (0..s.len()).map(|j| s[j][i].conj()).collect())
        .collect();
    let product = matmul(s, &adjoint);
    max_deviation(&product, |i, j| {
        if i == j {
            Complex::one(bits)
        } else {
            Complex::zero(bits)
        }
    })
}

impl SMatrixData {
    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn index(&self, a: &LevelWeight) -> Option<usize> {
        self.weights.binary_search(a).ok()
    }

    pub fn entry(&self, a: &LevelWeight, b: &LevelWeight) -> Option<&Complex> {
        Some(&self.entries[self.index(a)?][self.index(b)?])
    }

    /// `max |S_ab - S_ba|`.
    pub fn symmetry_residual(&self) -> f64 {
        max_deviation(&self.entries, |i, j| self.entries[j][i].clone())
    }

    /// Distance of `S²` from the permutation matrix of `a ↦ dual(a)`.
    pub fn conjugation_residual(&self) -> f64 {
        let sq = matmul(&self.entries, &self.entries);
        let duals: Vec<usize> = self
            .weights
            .iter()
            .map(|a| self.index(&a.dual()).expect("dual stays in the category"))
            .collect();
        max_deviation(&sq, |i, j| {
            if duals[i] == j {
                Complex::one(self.bits)
            } else {
                Complex::zero(self.bits)
            }
        })
    }

    /// `S_{0a} / S_{00}` for every `a`.
    pub fn dimension_ratios(&self) -> Vec<Complex> {
        let s00 = &self.entries[0][0];
        self.entries[0].iter().map(|z| z / s00).collect()
    }

    /// `max |(|S_{ρ(a),b}| - |S_{ab}|)|`.
    pub fn simple_current_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.weights.iter().enumerate() {
            let r = self.index(&a.rotate(1)).expect("rotation stays in the category");
            for j in 0..self.size() {
                let d = self.entries[r][j].abs() - &self.entries[i][j].abs();
                worst = worst.max(d.abs().to_f64());
            }
        }
        worst
    }

    /// Diagonal of `T = diag(exp(2πi(h_a - c/24)))`.
    pub fn t_diagonal(&self) -> Vec<Complex> {
        let shift = self.central_charge / Rational64::from_integer(24);
        self.conformal_weights
            .iter()
            .map(|&h| {
                let e = h - shift;
                Complex::root_of_unity(*e.numer(), *e.denom(), self.bits)
            })
            .collect()
    }

    /// `max |(ST)³ - S²|`.
    pub fn modular_residual(&self) -> f64 {
        let t = self.t_diagonal();
        let st: Vec<Vec<Complex>> = self
            .entries
            .iter()
            .map(|row| row.iter().zip(&t).map(|(s, t)| s * t).collect())
            .collect();
        let cube = matmul(&matmul(&st, &st), &st);
        let sq = matmul(&self.entries, &self.entries);
        max_deviation(&cube, |i, j| sq[i][j].clone())
    }
}

/// Serializes entries as `[re, im]` decimal strings and the central charge
/// as a rational string.
impl Serialize for SMatrixData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<[String; 2]>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|z| [z.re.to_decimal_string(), z.im.to_decimal_string()])
                    .collect()
            })
            .collect();
        let weights: Vec<String> = self.conformal_weights.iter().map(|h| h.to_string()).collect();
        let mut st = s.serialize_struct("SMatrix", 8)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("precision_bits", &self.bits)?;
        st.serialize_field("weights", &self.weights)?;
        st.serialize_field("central_charge", &self.central_charge.to_string())?;
        st.serialize_field("conformal_weights", &weights)?;
        st.serialize_field("unitarity_residual", &self.unitarity_residual)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// One failure of the twist pairing `h_a + h_{τ(a)} ≡ i(nm - i)/(2nm) (mod 1)`.
#[derive(Debug, Clone, Serialize)]
pub struct TwistFailure {
    pub i: usize,
    pub a: LevelWeight,
    pub image: LevelWeight,
    pub excess: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistPairingReport {
    pub n: usize,
    pub m: usize,
    pub checked: usize,
    /// Largest `|θ_a θ_{τ(a)} - exp(2πi·i(nm-i)/(2nm))|` in double precision.
    pub max_phase_deviation: f64,
    pub failures: Vec<TwistFailure>,
}

impl TwistPairingReport {
    pub fn holds(&self, tolerance: f64) -> bool {
        self.failures.is_empty() && self.max_phase_deviation <= tolerance
    }
}

/// Checks the twist pairing on every `a ∈ C_{n,m}` and every admissible `i`.
pub fn twist_pairing(n: usize, m: usize) -> Result<TwistPairingReport> {
    let nm = (n * m) as i64;
    let mut report = TwistPairingReport {
        n,
        m,
        checked: 0,
        max_phase_deviation: 0.0,
        failures: Vec::new(),
    };
    for a in enumerate_level(n, m)? {
        let ha = conformal_weight(&a);
        for i in (a.degree()..n * m).step_by(n) {
            let image = a.tau(i as i64)?;
            let target = Rational64::new(i as i64 * (nm - i as i64), 2 * nm);
            let excess = ha + conformal_weight(&image) - target;
            report.checked += 1;
            let turns = frac(excess);
            let angle = 2.0 * std::f64::consts::PI * (*turns.numer() as f64 / *turns.denom() as f64);
            let deviation = ((angle.cos() - 1.0).powi(2) + angle.sin().powi(2)).sqrt();
            report.max_phase_deviation = report.max_phase_deviation.max(deviation);
            if !excess.is_integer() {
                report.failures.push(TwistFailure {
                    i,
                    a: a.clone(),
                    image,
                    excess: excess.to_string(),
                });
            }
        }
    }
    Ok(report)
}

/// `S^{(n,m)}_{ab} / conj(S^{(m,n)}_{T(a)T(b)})` on degree-zero labels, where
/// `T(a) = dual(τ_0(a))`. Recorded for inspection only.
#[derive(Debug, Clone, Serialize)]
pub struct SRatio {
    pub a: LevelWeight,
    pub b: LevelWeight,
    pub re: f64,
    pub im: f64,
}

pub fn degree_zero_ratios(left: &SMatrixData, right: &SMatrixData) -> Result<Vec<SRatio>> {
    if left.n != right.m || left.m != right.n {
        return Err(Error::InvalidArgument("S-matrices are not a level-rank pair".into()));
    }
    let transport = |a: &LevelWeight| -> Result<usize> {
        let t = a.tau(0)?.dual();
        right.index(&t).ok_or_else(|| Error::InvalidArgument(format!("{t} not found")))
    };
    let zero: Vec<usize> = (0..left.size()).filter(|&i| left.weights[i].degree() == 0).collect();
    let mut out = Vec::new();
    for &i in &zero {
        let ti = transport(&left.weights[i])?;
        for &j in &zero {
            let tj = transport(&left.weights[j])?;
            let q = &left.entries[i][j] / &right.entries[ti][tj].conj();
            let (re, im) = q.to_f64_pair();
            out.push(SRatio {
                a: left.weights[i].clone(),
                b: left.weights[j].clone(),
                re,
                im,
            });
        }
    }
    Ok(out)
}

/// `θ_a = 1`.
pub fn has_trivial_twist(a: &LevelWeight) -> bool {
    conformal_weight(a).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdim::qdim;

    fn w(labels: &[usize]) -> LevelWeight {
        LevelWeight::new(labels.to_vec()).unwrap()
    }

    #[test]
    fn su2_level1() {
        let s = s_matrix(2, 1, 128).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [[r, r], [r, -r]];
        for i in 0..2 {
            for j in 0..2 {
                let (re, im) = s.entries[i][j].to_f64_pair();
                assert!((re - expected[i][j]).abs() < 1e-15 && im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn unitary_symmetric_conjugation() {
        for n in 2..=4 {
            for m in 1..=4 {
                let s = s_matrix(n, m, 128).unwrap();
                assert!(s.unitarity_residual < 1e-10, "({n},{m})");
                assert!(s.symmetry_residual() < 1e-10, "({n},{m})");
                assert!(s.conjugation_residual() < 1e-10, "({n},{m})");
                assert!(s.simple_current_residual() < 1e-10, "({n},{m})");
            }
        }
    }

    #[test]
    fn modular_relation() {
        for n in 2..=3 {
            for m in 1..=3 {
                let s = s_matrix(n, m, 128).unwrap();
                assert!(s.modular_residual() < 1e-10, "({n},{m})");
            }
        }
    }

    #[test]
    fn first_row_gives_dimensions() {
        let s = s_matrix(2, 10, 128).unwrap();
        for (a, ratio) in s.weights.iter().zip(s.dimension_ratios()) {
            let (re, im) = ratio.to_f64_pair();
            assert!((re - qdim(a).to_f64()).abs() < 1e-10 && im.abs() < 1e-10);
        }
    }

    #[test]
    fn determinant_matches_permutation_sum() {
        let n = 6;
        let k = 8;
        let period = (n * k) as i64;
        let roots: Vec<Complex> = (0..period).map(|e| Complex::root_of_unity(e, period, 96)).collect();
        let x = [7i64, 5, 3, 2, 1, 0];
        let y = [6i64, 4, 3, 2, 1, 0];
        let det = raw_entry(&x, &y, &roots, 96);
        let mut histogram = vec![0i64; period as usize];
        let (xs, ys): (i64, i64) = (x.iter().sum(), y.iter().sum());
        for_each_permutation(n, |perm, sign| {
            let dot: i64 = perm.iter().zip(&y).map(|(&p, &yi)| x[p] * yi).sum();
            histogram[(-(n as i64 * dot - xs * ys)).rem_euclid(period) as usize] += sign;
        });
        let sum = histogram.iter().enumerate().fold(Complex::zero(96), |acc, (e, &c)| {
            &acc + &roots[e].scale(&Real::from_i64(c, 96))
        });
        assert!((&det - &sum).abs().to_f64() < 1e-15);
    }

    #[test]
    fn large_rank_is_unitary() {
        let s = s_matrix(6, 2, 96).unwrap();
        assert!(s.unitarity_residual < 1e-12);
    }

    #[test]
    fn charges() {
        let c = central_charge(2, 2, 1).unwrap();
        assert_eq!(c.ambient, Rational64::from_integer(3));
        assert!(c.equal());
        let c = central_charge(2, 2, 2).unwrap();
        assert_eq!(c.ambient, Rational64::from_integer(5));
        assert_eq!(c.pair, Rational64::from_integer(4));
        assert!(central_charge(0, 2, 1).is_err());
    }

    #[test]
    fn conformal_weights() {
        assert_eq!(conformal_weight(&w(&[0, 0, 0, 1, 0, 0, 0, 1, 0, 0])), Rational64::from_integer(2));
        assert_eq!(conformal_weight(&w(&[3, 0, 0])), Rational64::from_integer(0));
        for big_n in 2..=12 {
            for i in 0..big_n {
                let a = LevelWeight::fundamental(big_n, i).unwrap();
                let expected = Rational64::new((i * (big_n - i)) as i64, 2 * big_n as i64);
                assert_eq!(conformal_weight(&a), expected);
            }
        }
        // spin j of su(2)_k: j(j+1)/(k+2)
        assert_eq!(conformal_weight(&w(&[1, 2])), Rational64::new(2, 5));
    }

    #[test]
    fn twist_pairing_small() {
        for (n, m) in [(2, 2), (2, 3), (3, 3)] {
            let r = twist_pairing(n, m).unwrap();
            assert!(r.holds(1e-8), "({n},{m}): {:?}", r.failures);
        }
    }

    #[test]
    fn low_precision_is_detected() {
        assert!(check_precision(64, 1e-12).is_ok());
        let err = check_precision(64, 1e-6).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision { bits: 64, .. }));
    }
}

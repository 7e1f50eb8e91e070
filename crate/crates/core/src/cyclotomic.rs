//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are rational polynomials in `ζ = exp(2πi/N)` reduced modulo the
//! `N`-th cyclotomic polynomial `Φ_N`, so each element has a unique normal
//! form of degree `< φ(N)` and equality is coefficient equality.
//!
//! Quantum integers `[i] = (ζ^i - ζ^{-i})/(ζ - ζ^{-1})` for the pair `(n, m)`
//! live in conductor `N = 2(n + m)`, where `ζ = exp(iπ/(n + m))`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::real::{Complex, Real};

type Poly = Vec<BigRational>;

static PHI_CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();

/// Integer coefficients of `Φ_N`, lowest degree first.
pub fn cyclotomic_polynomial(conductor: usize) -> Arc<Vec<i64>> {
    assert!(conductor >= 1, "conductor must be positive");
    let cache = PHI_CACHE.get_or_init(Default::default);
    if let Some(phi) = cache.read().expect("phi cache poisoned").get(&conductor) {
        return Arc::clone(phi);
    }
    let computed = Arc::new(compute_phi(conductor));
    let mut guard = cache.write().expect("phi cache poisoned");
    // first writer wins
    Arc::clone(guard.entry(conductor).or_insert(computed))
}

fn compute_phi(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient, the degree of `Q(ζ_N)` over `Q`.
pub fn totient(n: usize) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Poly,
}

impl Cyclotomic {
    pub fn zero(conductor: usize) -> Self {
        Cyclotomic {
            conductor,
            coeffs: vec![BigRational::zero(); totient(conductor)],
        }
    }

    pub fn one(conductor: usize) -> Self {
        Self::from_i64(1, conductor)
    }

    pub fn from_i64(v: i64, conductor: usize) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()), conductor)
    }

    pub fn from_rational(v: BigRational, conductor: usize) -> Self {
        let mut x = Self::zero(conductor);
        x.coeffs[0] = v;
        x
    }

    /// Builds an element from an arbitrary polynomial in `ζ_N`.
    pub fn from_coefficients(coeffs: Vec<BigRational>, conductor: usize) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        Cyclotomic {
            conductor,
            coeffs: reduce(coeffs, &phi),
        }
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_power(k: i64, conductor: usize) -> Self {
        let k = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_coefficients(poly, conductor)
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Normal-form coefficients, lowest power of `ζ` first; length `φ(N)`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor, other.conductor))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        Ok(Self::from_coefficients(prod, self.conductor))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.conductor));
        }
        let phi: Poly = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        // invariant: r_k ≡ s_k · self (mod Φ)
        let (mut r0, mut r1) = (phi, trim(self.coeffs.clone()));
        let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1, "Φ_N is irreducible");
        let c = r0[0].clone();
        let inv: Poly = s0.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_coefficients(inv, self.conductor))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor;
        let mut poly = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(n - k) % n] += c;
        }
        Self::from_coefficients(poly, n)
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Numeric value under `ζ ↦ exp(2πi/N)` at the given binary precision.
    pub fn embed(&self, bits: usize) -> Embedding {
        let d = self.coeffs.len();
        let working = bits + 32 + usize::BITS as usize - d.leading_zeros() as usize;
        let n = self.conductor as i64;
        let mut re = Real::zero(working);
        let mut im = Real::zero(working);
        let mut weight = 0.0f64;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let value = rational_to_real(c, working);
            re = re + &value * &Real::cos_pi(2 * k as i64, n, working);
            im = im + &value * &Real::sin_pi(2 * k as i64, n, working);
            weight += c.abs().to_f64().unwrap_or(f64::MAX);
        }
        // each term is a product of three correctly rounded quantities, and
        // at most d additions follow
        let error_bound = weight * (d as f64 + 3.0) * 2f64.powi(1 - working as i32);
        let real = self.is_real();
        Embedding {
            re: re.with_bits(bits),
            im: (!real).then(|| im.with_bits(bits)),
            error_bound,
        }
    }

    /// [`Cyclotomic::embed`] with the precision given in decimal digits.
    pub fn embed_real(&self, digits: usize) -> Embedding {
        self.embed(digits_to_bits(digits))
    }

    pub fn to_f64(&self) -> f64 {
        self.embed(64).re.to_f64()
    }
}

pub fn digits_to_bits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8
}

fn rational_to_real(q: &BigRational, bits: usize) -> Real {
    let to_real = |z: &BigInt| match z.to_i64() {
        Some(v) => Real::from_i64(v, bits),
        None => {
            let f = z.to_f64().unwrap_or(f64::MAX);
            // only reached for huge coefficients; good to 53 bits
            Real::from_f64(f, bits)
        }
    };
    to_real(q.numer()) / &to_real(q.denom())
}

/// Numeric value of a cyclotomic number with an error bound that assumes each
/// elementary floating-point operation is correctly rounded.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub re: Real,
    /// `None` when the element is fixed by complex conjugation.
    pub im: Option<Real>,
    pub error_bound: f64,
}

impl Embedding {
    pub fn to_complex(&self) -> Complex {
        let bits = self.re.bits();
        Complex::new(self.re.clone(), self.im.clone().unwrap_or_else(|| Real::zero(bits)))
    }
}

/// Quantum integer `[i]` for the pair `(n, m)`, in conductor `2(n + m)`.
pub fn qint(i: i64, n: usize, m: usize) -> Cyclotomic {
    assert!(n + m >= 2, "quantum integers need n + m >= 2");
    let conductor = 2 * (n + m);
    let k = i.unsigned_abs() as i64;
    let mut poly = vec![BigRational::zero(); conductor];
    for j in 0..k {
        let e = (k - 1 - 2 * j).rem_euclid(conductor as i64) as usize;
        poly[e] += BigRational::one();
    }
    let x = Cyclotomic::from_coefficients(poly, conductor);
    if i < 0 {
        -x
    } else {
        x
    }
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn reduce(poly: Poly, phi: &[i64]) -> Poly {
    let d = phi.len() - 1;
    let mut p = poly;
    for k in (d..p.len()).rev() {
        if p[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut p[k]);
        for (j, &pj) in phi[..d].iter().enumerate() {
            if pj != 0 {
                p[k - d + j] -= &c * BigInt::from(pj);
            }
        }
    }
    p.resize(d, BigRational::zero());
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on conductor mismatch; use [`Cyclotomic::checked_add`] to handle it.
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("conductor mismatch")
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).expect("conductor mismatch")
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("conductor mismatch")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({self})", self.conductor)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

//! Binary-precision reals and complex numbers backed by `astro-float`.
//!
//! Every value carries its working precision in bits; a binary operation
//! runs at the larger precision of its operands.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default binary precision for floating-point computations.
pub const DEFAULT_BITS: usize = 128;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    bits: usize,
}

impl Real {
    pub fn zero(bits: usize) -> Self {
        Self::from_i64(0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Real {
            value: BigFloat::from_i64(v, bits),
            bits,
        }
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        Real {
            value: BigFloat::from_f64(v, bits),
            bits,
        }
    }

    pub fn from_ratio(num: i64, den: i64, bits: usize) -> Self {
        Self::from_i64(num, bits) / &Self::from_i64(den, bits)
    }

    pub fn pi(bits: usize) -> Self {
        Real {
            value: with_consts(|cc| cc.pi(bits, RM)),
            bits,
        }
    }

    /// `cos(π·num/den)` with the argument reduced exactly first.
    pub fn cos_pi(num: i64, den: i64, bits: usize) -> Self {
        let (num, den) = reduce_turn(num, den);
        let guard = bits + 16;
        let arg = Self::pi(guard) * &Self::from_ratio(num, den, guard);
        Real {
            value: with_consts(|cc| arg.value.cos(guard, RM, cc)),
            bits: guard,
        }
        .with_bits(bits)
    }

    /// `sin(π·num/den)` with the argument reduced exactly first.
    pub fn sin_pi(num: i64, den: i64, bits: usize) -> Self {
        let (num, den) = reduce_turn(num, den);
        let guard = bits + 16;
        let arg = Self::pi(guard) * &Self::from_ratio(num, den, guard);
        Real {
            value: with_consts(|cc| arg.value.sin(guard, RM, cc)),
            bits: guard,
        }
        .with_bits(bits)
    }

    pub fn sqrt(&self) -> Self {
        Real {
            value: self.value.sqrt(self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Self {
        Real {
            value: self.value.abs(),
            bits: self.bits,
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn with_bits(mut self, bits: usize) -> Self {
        // set_precision only fails on allocation errors
        let _ = self.value.set_precision(bits, RM);
        self.bits = bits;
        self
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative() && !self.value.is_zero()
    }

    /// Nearest integer, as `i64`; `None` if out of range or not finite.
    pub fn round_to_i64(&self) -> Option<i64> {
        let v = self.to_f64();
        if v.is_finite() && v.abs() < 9.0e15 {
            Some(v.round() as i64)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        self.value.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with the precision's worth of significant digits.
    pub fn to_decimal_string(&self) -> String {
        self.value.to_string()
    }
}

/// Reduces `num/den` modulo 2 with `den > 0`.
fn reduce_turn(num: i64, den: i64) -> (i64, i64) {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    (num.rem_euclid(2 * den), den)
}

fn binary(a: &Real, b: &Real, f: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat) -> Real {
    let bits = a.bits.max(b.bits);
    Real {
        value: f(&a.value, &b.value, bits),
        bits,
    }
}

impl Add<&Real> for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        binary(self, rhs, |a, b, p| a.add(b, p, RM))
    }
}

impl Sub<&Real> for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        binary(self, rhs, |a, b, p| a.sub(b, p, RM))
    }
}

impl Mul<&Real> for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        binary(self, rhs, |a, b, p| a.mul(b, p, RM))
    }
}

impl Div<&Real> for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        binary(self, rhs, |a, b, p| a.div(b, p, RM))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real { (&self).$m(rhs) }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            value: self.value.clone().neg(),
            bits: self.bits,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({}, {} bits)", self.value, self.bits)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(bits: usize) -> Self {
        Complex::new(Real::zero(bits), Real::zero(bits))
    }

    pub fn one(bits: usize) -> Self {
        Complex::new(Real::one(bits), Real::zero(bits))
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.bits();
        Complex::new(re, Real::zero(bits))
    }

    /// `exp(2πi·num/den)`.
    pub fn root_of_unity(num: i64, den: i64, bits: usize) -> Self {
        Complex::new(
            Real::cos_pi(2 * num, den, bits),
            Real::sin_pi(2 * num, den, bits),
        )
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Complex::new(&num.re / &den, &num.im / &den)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

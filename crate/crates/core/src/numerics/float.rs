//! Dyadic extended-precision reals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

/// Working precision, in bits of mantissa.
///
/// Built from a decimal digit count: `bits = ceil(D * log2 10) + 16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 60;

    pub fn from_digits(digits: u32) -> Precision {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
        Precision { bits }
    }

    pub fn from_bits(bits: u32) -> Precision {
        Precision { bits: bits.max(24) }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Decimal digits carried by this precision (rounded down).
    pub fn digits(&self) -> u32 {
        ((self.bits.saturating_sub(16)) as f64 / std::f64::consts::LOG2_10).floor() as u32
    }

    pub fn with_extra_bits(&self, extra: u32) -> Precision {
        Precision {
            bits: self.bits + extra,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::from_digits(Self::DEFAULT_DIGITS)
    }
}

/// An exact dyadic number `man * 2^exp`.
///
/// The representation is canonical (odd mantissa, or zero with `exp == 0`),
/// so structural equality is value equality and hashing is stable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedReal {
    man: BigInt,
    exp: i64,
}

/// Result of a rounded operation: the value and a bound on the rounding error.
#[derive(Clone, Debug)]
pub struct Rounded {
    pub value: ExtendedReal,
    pub err: Mag,
}

impl ExtendedReal {
    pub fn zero() -> Self {
        ExtendedReal {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_parts(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_parts(v, 0)
    }

    /// `man * 2^exp`, exact.
    pub fn from_parts(man: BigInt, exp: i64) -> Self {
        let mut r = ExtendedReal { man, exp };
        r.canonicalize();
        r
    }

    /// Exact value of a magnitude.
    pub fn from_mag(m: Mag) -> Self {
        Self::from_parts(BigInt::from(m.mantissa()), m.exponent())
    }

    /// Exact value of a finite `f64`.
    pub fn from_f64_exact(v: f64) -> Self {
        assert!(v.is_finite());
        if v == 0.0 {
            return Self::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::from_parts(BigInt::from(man) * sign, exp)
    }

    fn canonicalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        ExtendedReal {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        ExtendedReal {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ExtendedReal {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn magnitude_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.man.bits() as i64)
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0
    }

    /// Integer value if this is an integer fitting in `i64`.
    pub fn to_i64_exact(&self) -> Option<i64> {
        if !self.is_integer() || self.exp > 62 {
            return None;
        }
        (&self.man << self.exp as usize).to_i64()
    }

    /// Rounds `man * 2^exp` to `prec` bits (round half away from zero).
    pub fn round_parts(man: BigInt, exp: i64, prec: Precision) -> Rounded {
        let bits = man.bits();
        let p = prec.bits() as u64;
        if bits <= p {
            return Rounded {
                value: Self::from_parts(man, exp),
                err: Mag::ZERO,
            };
        }
        let shift = bits - p;
        let negative = man.is_negative();
        let mag = man.magnitude();
        let mut q: BigUint = mag >> shift;
        let half_bit = mag.bit(shift - 1);
        let low_nonzero = half_bit || mag.trailing_zeros().unwrap_or(0) < shift - 1;
        if half_bit {
            q += 1u32;
        }
        let q = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, q);
        let out_exp = exp + shift as i64;
        Rounded {
            value: Self::from_parts(q, out_exp),
            err: if low_nonzero {
                Mag::pow2(out_exp)
            } else {
                Mag::ZERO
            },
        }
    }

    pub fn round(&self, prec: Precision) -> Rounded {
        Self::round_parts(self.man.clone(), self.exp, prec)
    }

    /// Exact sum (no rounding).
    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Self::from_parts(a + b, e)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Self::from_parts(&self.man * &other.man, self.exp + other.exp)
    }

    pub fn add(&self, other: &Self, prec: Precision) -> Rounded {
        if let Some(r) = self.add_far(other, prec) {
            return r;
        }
        let s = self.add_exact(other);
        s.round(prec)
    }

    /// Sum of two numbers whose magnitudes are so far apart that aligning
    /// them would be wasteful; the small one is absorbed into the error.
    fn add_far(&self, other: &Self, prec: Precision) -> Option<Rounded> {
        let (ea, eb) = (self.magnitude_exp()?, other.magnitude_exp()?);
        let (big, e_small) = if ea >= eb { (self, eb) } else { (other, ea) };
        if ea.max(eb) - e_small <= prec.bits() as i64 + 8 {
            return None;
        }
        let r = big.round(prec);
        Some(Rounded {
            value: r.value,
            err: r.err.add(Mag::pow2(e_small)),
        })
    }

    pub fn sub(&self, other: &Self, prec: Precision) -> Rounded {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: Precision) -> Rounded {
        Self::round_parts(&self.man * &other.man, self.exp + other.exp, prec)
    }

    /// Quotient rounded to `prec` bits. Panics on division by zero.
    pub fn div(&self, other: &Self, prec: Precision) -> Rounded {
        assert!(!other.is_zero(), "ExtendedReal division by zero");
        if self.is_zero() {
            return Rounded {
                value: Self::zero(),
                err: Mag::ZERO,
            };
        }
        // quotient with at least prec + 2 bits
        let shift = (prec.bits() as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << shift as usize;
        let (q, r) = num.div_rem(&other.man);
        let exp = self.exp - other.exp - shift;
        let mut rounded = Self::round_parts(q.clone(), exp, prec);
        if !r.is_zero() {
            // the truncated low part of the quotient is below 2^exp
            rounded.err = rounded.err.add(Mag::pow2(exp));
        }
        rounded
    }

    /// Square root rounded to `prec` bits. Panics on negative input.
    pub fn sqrt(&self, prec: Precision) -> Rounded {
        assert!(!self.is_negative(), "sqrt of negative ExtendedReal");
        if self.is_zero() {
            return Rounded {
                value: Self::zero(),
                err: Mag::ZERO,
            };
        }
        let mut man = self.man.magnitude().clone();
        let mut exp = self.exp;
        let want = 2 * (prec.bits() as i64 + 2);
        let have = man.bits() as i64;
        let mut shift = (want - have).max(0);
        if (exp - shift) % 2 != 0 {
            shift += 1;
        }
        man <<= shift as usize;
        exp -= shift;
        let r = man.sqrt();
        let exact = &r * &r == man;
        let half_exp = exp / 2;
        let mut rounded = Self::round_parts(BigInt::from(r), half_exp, prec);
        if !exact {
            rounded.err = rounded.err.add(Mag::pow2(half_exp));
        }
        rounded
    }

    /// Exact comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.sub_exact(other);
        d.signum().cmp(&0)
    }

    /// Upper bound of `|self|` as a magnitude.
    pub fn abs_upper(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let bits = self.man.bits();
        let mag = self.man.magnitude();
        if bits <= 100 {
            Mag::from_parts_up(mag.to_u128().unwrap(), self.exp)
        } else {
            let shift = bits - 100;
            let top: BigUint = mag >> shift;
            Mag::from_parts_up(top.to_u128().unwrap() + 1, self.exp + shift as i64)
        }
    }

    /// Lower bound of `|self|` as a magnitude.
    pub fn abs_lower(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let bits = self.man.bits();
        let mag = self.man.magnitude();
        if bits <= 100 {
            Mag::from_parts_down(mag.to_u128().unwrap(), self.exp)
        } else {
            let shift = bits - 100;
            let top: BigUint = mag >> shift;
            Mag::from_parts_down(top.to_u128().unwrap(), self.exp + shift as i64)
        }
    }

    /// Nearest `f64` (approximate; for heuristics and display only).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man >> shift as usize).to_i64().unwrap_or(0) as f64;
        let e = self.exp + shift;
        if e > 1100 {
            return top.signum() * f64::INFINITY;
        }
        if e < -1200 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    /// Fixed-point integer `round(self * 2^w)`.
    pub fn to_fixed(&self, w: i64) -> BigInt {
        let e = self.exp + w;
        if e >= 0 {
            &self.man << e as usize
        } else {
            let sh = (-e) as usize;
            let half = BigInt::one() << (sh - 1);
            (&self.man + half) >> sh
        }
    }

    /// Floor as a big integer.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            // arithmetic shift floors toward -inf
            &self.man >> (-self.exp) as usize
        }
    }
}

impl fmt::Debug for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{} (~{:e})", self.man, self.exp, self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::from_bits(bits)
    }

    #[test]
    fn canonical_representation() {
        let a = ExtendedReal::from_parts(BigInt::from(12), 0);
        let b = ExtendedReal::from_parts(BigInt::from(3), 2);
        assert_eq!(a, b);
        assert_eq!(ExtendedReal::from_f64_exact(0.75), ExtendedReal::from_parts(BigInt::from(3), -2));
    }

    #[test]
    fn rounding_error_is_bounded() {
        let one = ExtendedReal::one();
        let three = ExtendedReal::from_i64(3);
        let q = one.div(&three, p(64));
        let back = q.value.mul_exact(&three);
        let diff = back.sub_exact(&one).abs();
        let bound = ExtendedReal::from_mag(q.err * Mag::from_u64(3));
        assert!(diff.cmp_value(&bound) != Ordering::Greater);
        assert!(!q.err.is_zero());
    }

    #[test]
    fn exact_operations_have_zero_error() {
        let a = ExtendedReal::from_i64(6);
        let b = ExtendedReal::from_i64(3);
        assert!(a.div(&b, p(64)).err.is_zero());
        assert!(ExtendedReal::from_i64(16).sqrt(p(64)).err.is_zero());
        assert!(a.add(&b, p(64)).err.is_zero());
    }

    #[test]
    fn sqrt_two() {
        let r = ExtendedReal::from_i64(2).sqrt(p(128));
        assert!((r.value.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(!r.err.is_zero());
    }

    #[test]
    fn far_apart_addition_absorbs_small_term() {
        let big = ExtendedReal::one();
        let tiny = ExtendedReal::from_parts(BigInt::from(1), -10_000);
        let r = big.add(&tiny, p(64));
        assert_eq!(r.value, big);
        assert!(r.err >= Mag::pow2(-10_000));
    }
}

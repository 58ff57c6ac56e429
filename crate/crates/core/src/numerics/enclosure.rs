//! Midpoint-radius enclosures.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::elementary;
use super::float::{ExtendedReal, Precision, Rounded};
use super::mag::Mag;
use crate::error::{Error, Result};

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Enclosure {
    mid: ExtendedReal,
    rad: Mag,
    prec: Precision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryFn {
    Exp,
    Ln,
    Sqrt,
    Atanh,
}

impl ElementaryFn {
    pub fn name(&self) -> &'static str {
        match self {
            ElementaryFn::Exp => "exp",
            ElementaryFn::Ln => "log",
            ElementaryFn::Sqrt => "sqrt",
            ElementaryFn::Atanh => "atanh",
        }
    }
}

/// Evaluates an elementary function on an enclosure.
pub fn enclose_fn(f: ElementaryFn, x: &Enclosure) -> Result<Enclosure> {
    match f {
        ElementaryFn::Exp => Ok(x.exp()),
        ElementaryFn::Ln => x.ln(),
        ElementaryFn::Sqrt => x.sqrt(),
        ElementaryFn::Atanh => x.atanh(),
    }
}

impl Enclosure {
    pub fn new(mid: ExtendedReal, rad: Mag, prec: Precision) -> Enclosure {
        Enclosure { mid, rad, prec }.trimmed()
    }

    pub fn exact(mid: ExtendedReal, prec: Precision) -> Enclosure {
        Enclosure {
            mid,
            rad: Mag::ZERO,
            prec,
        }
    }

    pub fn zero(prec: Precision) -> Enclosure {
        Self::exact(ExtendedReal::zero(), prec)
    }

    pub fn one(prec: Precision) -> Enclosure {
        Self::exact(ExtendedReal::one(), prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Enclosure {
        Self::exact(ExtendedReal::from_i64(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> Enclosure {
        Self::from_rounded(ExtendedReal::from_bigint(v.clone()).round(prec), prec)
    }

    /// `n / d`.
    pub fn from_ratio(n: i64, d: i64, prec: Precision) -> Enclosure {
        assert!(d != 0, "zero denominator");
        Self::from_rounded(
            ExtendedReal::from_i64(n).div(&ExtendedReal::from_i64(d), prec),
            prec,
        )
    }

    pub fn from_rational(q: &BigRational, prec: Precision) -> Enclosure {
        let n = ExtendedReal::from_bigint(q.numer().clone());
        let d = ExtendedReal::from_bigint(q.denom().clone());
        Self::from_rounded(n.div(&d, prec), prec)
    }

    /// A dyadic `f64`, exactly. Intended for literal sample points such as 0.75.
    pub fn from_f64_exact(v: f64, prec: Precision) -> Enclosure {
        Self::exact(ExtendedReal::from_f64_exact(v), prec)
    }

    pub fn from_rounded(r: Rounded, prec: Precision) -> Enclosure {
        Enclosure {
            mid: r.value,
            rad: r.err,
            prec,
        }
    }

    /// The enclosure of `[lo, hi]`.
    pub fn from_bounds(lo: &ExtendedReal, hi: &ExtendedReal, prec: Precision) -> Enclosure {
        let sum = lo.add_exact(hi).mul_2exp(-1);
        let m = sum.round(prec);
        let half = hi.sub_exact(lo).mul_2exp(-1).abs();
        Enclosure::new(m.value, half.abs_upper().add(m.err), prec)
    }

    /// Reduces the midpoint to the bits that are meaningful given the radius.
    fn trimmed(self) -> Enclosure {
        if self.rad.is_zero() || self.mid.is_zero() {
            return self;
        }
        let (Some(em), Some(er)) = (self.mid.magnitude_exp(), self.rad.log2_ceil_bound()) else {
            return self;
        };
        let keep = em - er + 32;
        if keep <= 0 {
            return Enclosure {
                mid: ExtendedReal::zero(),
                rad: self.rad.add(self.mid.abs_upper()),
                prec: self.prec,
            };
        }
        if (keep as u64) < self.mid.bits() {
            let r = self.mid.round(Precision::from_bits(keep as u32));
            return Enclosure {
                mid: r.value,
                rad: self.rad.add(r.err),
                prec: self.prec,
            };
        }
        self
    }

    pub fn mid(&self) -> &ExtendedReal {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    pub fn with_prec(&self, prec: Precision) -> Enclosure {
        let r = self.mid.round(prec);
        Enclosure {
            mid: r.value,
            rad: self.rad.add(r.err),
            prec,
        }
    }

    pub fn is_point(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn add_error(&self, e: Mag) -> Enclosure {
        Enclosure::new(self.mid.clone(), self.rad.add(e), self.prec)
    }

    pub fn lo(&self) -> ExtendedReal {
        self.mid.sub_exact(&ExtendedReal::from_mag(self.rad))
    }

    pub fn hi(&self) -> ExtendedReal {
        self.mid.add_exact(&ExtendedReal::from_mag(self.rad))
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// Upper bound of `|x|` over the enclosure.
    pub fn abs_upper(&self) -> Mag {
        self.mid.abs_upper().add(self.rad)
    }

    /// Lower bound of `|x|` over the enclosure (zero if it straddles 0).
    pub fn abs_lower(&self) -> Mag {
        let lo = self.mid.abs().sub_exact(&ExtendedReal::from_mag(self.rad));
        if lo.is_positive() {
            lo.abs_lower()
        } else {
            Mag::ZERO
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi().is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lo().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains_point(&self, x: &ExtendedReal) -> bool {
        self.lo().cmp_value(x).is_le() && x.cmp_value(&self.hi()).is_le()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Enclosure) -> bool {
        self.lo().cmp_value(&other.lo()).is_le() && other.hi().cmp_value(&self.hi()).is_le()
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo().cmp_value(&other.hi()).is_le() && other.lo().cmp_value(&self.hi()).is_le()
    }

    /// Certainly `self < other`.
    pub fn lt(&self, other: &Enclosure) -> bool {
        self.hi().cmp_value(&other.lo()).is_lt()
    }

    /// Certainly `self > other`.
    pub fn gt(&self, other: &Enclosure) -> bool {
        other.lt(self)
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        let lo = min_er(self.lo(), other.lo());
        let hi = max_er(self.hi(), other.hi());
        Enclosure::from_bounds(&lo, &hi, self.prec.max(other.prec))
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            mid: self.mid.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Enclosure {
        if self.mid.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Enclosure {
        Enclosure {
            mid: self.mid.mul_2exp(k),
            rad: self.rad.mul_2exp(k),
            prec: self.prec,
        }
    }

    pub fn add_enc(&self, other: &Enclosure) -> Enclosure {
        let prec = self.prec.max(other.prec);
        let r = self.mid.add(&other.mid, prec);
        Enclosure::new(r.value, self.rad.add(other.rad).add(r.err), prec)
    }

    pub fn sub_enc(&self, other: &Enclosure) -> Enclosure {
        self.add_enc(&other.neg())
    }

    pub fn mul_enc(&self, other: &Enclosure) -> Enclosure {
        let prec = self.prec.max(other.prec);
        let r = self.mid.mul(&other.mid, prec);
        let rad = self
            .mid
            .abs_upper()
            .mul(other.rad)
            .add(other.mid.abs_upper().mul(self.rad))
            .add(self.rad.mul(other.rad))
            .add(r.err);
        Enclosure::new(r.value, rad, prec)
    }

    pub fn mul_i64(&self, k: i64) -> Enclosure {
        self.mul_enc(&Enclosure::from_i64(k, self.prec))
    }

    pub fn sqr(&self) -> Enclosure {
        self.mul_enc(self)
    }

    /// Division; fails when the divisor's interval contains zero.
    pub fn div(&self, other: &Enclosure) -> Result<Enclosure> {
        let den_lo = other.abs_lower();
        if den_lo.is_zero() {
            return Err(Error::domain(
                "div",
                format!("divisor interval {other} contains zero"),
            ));
        }
        let prec = self.prec.max(other.prec);
        let r = self.mid.div(&other.mid, prec);
        // |a/b - am/bm| <= (ra + |am/bm| rb) / (|bm| - rb)
        let q_up = r.value.abs_upper().add(r.err);
        let rad = self.rad.add(q_up.mul(other.rad)).div(den_lo).add(r.err);
        Ok(Enclosure::new(r.value, rad, prec))
    }

    pub fn div_i64(&self, k: i64) -> Enclosure {
        self.div(&Enclosure::from_i64(k, self.prec))
            .expect("division by a nonzero integer")
    }

    pub fn recip(&self) -> Result<Enclosure> {
        Enclosure::one(self.prec).div(self)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Result<Enclosure> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut result = Enclosure::one(self.prec);
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_enc(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        Ok(result)
    }

    fn monotone(
        &self,
        f: impl Fn(&ExtendedReal, Precision) -> Rounded,
        increasing: bool,
    ) -> Enclosure {
        let prec = self.prec;
        let inner = prec.with_extra_bits(8);
        if self.rad.is_zero() {
            let r = f(&self.mid, inner);
            let o = r.value.round(prec);
            return Enclosure::new(o.value, r.err.add(o.err), prec);
        }
        let a = f(&self.lo(), inner);
        let b = f(&self.hi(), inner);
        let (lo, hi) = if increasing {
            (
                a.value.sub_exact(&ExtendedReal::from_mag(a.err)),
                b.value.add_exact(&ExtendedReal::from_mag(b.err)),
            )
        } else {
            (
                b.value.sub_exact(&ExtendedReal::from_mag(b.err)),
                a.value.add_exact(&ExtendedReal::from_mag(a.err)),
            )
        };
        Enclosure::from_bounds(&lo, &hi, prec)
    }

    pub fn exp(&self) -> Enclosure {
        self.monotone(elementary::exp_point, true)
    }

    pub fn ln(&self) -> Result<Enclosure> {
        if !self.is_positive() {
            return Err(Error::domain(
                "log",
                format!("argument {self} is not strictly positive"),
            ));
        }
        Ok(self.monotone(elementary::ln_point, true))
    }

    pub fn sqrt(&self) -> Result<Enclosure> {
        if self.lo().is_negative() {
            return Err(Error::domain("sqrt", format!("argument {self} is negative")));
        }
        Ok(self.monotone(|x, p| x.sqrt(p), true))
    }

    pub fn atanh(&self) -> Result<Enclosure> {
        let one = ExtendedReal::one();
        if self.hi().cmp_value(&one).is_ge() || self.lo().cmp_value(&one.neg()).is_le() {
            return Err(Error::domain(
                "atanh",
                format!("argument {self} is not inside (-1, 1)"),
            ));
        }
        Ok(self.monotone(elementary::atanh_point, true))
    }

    /// `x^y` for `x > 0`.
    pub fn pow(&self, y: &Enclosure) -> Result<Enclosure> {
        Ok(self.ln()?.mul_enc(y).exp())
    }

    pub fn sinh(&self) -> Enclosure {
        let e = self.exp();
        let inv = e.recip().expect("exp is positive");
        e.sub_enc(&inv).mul_2exp(-1)
    }

    pub fn cosh(&self) -> Enclosure {
        let e = self.exp();
        let inv = e.recip().expect("exp is positive");
        e.add_enc(&inv).mul_2exp(-1)
    }

    pub fn pi(prec: Precision) -> Enclosure {
        Self::from_rounded(elementary::pi(prec), prec)
    }

    pub fn ln2(prec: Precision) -> Enclosure {
        Self::from_rounded(elementary::ln2(prec), prec)
    }

    pub fn min(&self, other: &Enclosure) -> Enclosure {
        let lo = min_er(self.lo(), other.lo());
        let hi = min_er(self.hi(), other.hi());
        Enclosure::from_bounds(&lo, &hi, self.prec.max(other.prec))
    }

    pub fn max(&self, other: &Enclosure) -> Enclosure {
        let lo = max_er(self.lo(), other.lo());
        let hi = max_er(self.hi(), other.hi());
        Enclosure::from_bounds(&lo, &hi, self.prec.max(other.prec))
    }

    /// Decimal rendering of the center (`digits` significant digits) and of an
    /// upward-rounded radius that also covers the decimal conversion error.
    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        let digits = digits.max(1);
        if self.mid.is_zero() {
            return ("0".to_string(), format_mag_up(self.rad));
        }
        let (neg, n, e10) = decimal_digits(&self.mid, digits);
        let conv = mag_pow10_up(e10 - digits as i64 + 1).mul_2exp(-1);
        let center = format_center(neg, &n.to_string(), e10);
        (center, format_mag_up(self.rad.add(conv)))
    }

    pub fn format_pm(&self, digits: u32) -> String {
        let (c, r) = self.to_decimal(digits);
        format!("{c} ± {r}")
    }

    pub fn radius_string(&self) -> String {
        format_mag_up(self.rad)
    }

    /// Parses `"center ± radius"` (or `+/-`, or a bare decimal).
    pub fn parse(s: &str, prec: Precision) -> Option<Enclosure> {
        let s = s.trim();
        let (c, r) = if let Some((c, r)) = s.split_once('±') {
            (c, Some(r))
        } else if let Some((c, r)) = s.split_once("+/-") {
            (c, Some(r))
        } else {
            (s, None)
        };
        let center = Enclosure::from_rational(&parse_decimal(c.trim())?, prec);
        let rad = match r {
            Some(r) => Enclosure::from_rational(&parse_decimal(r.trim())?.abs(), prec).abs_upper(),
            None => Mag::ZERO,
        };
        Some(center.add_error(rad))
    }
}

fn min_er(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    if a.cmp_value(&b) == Ordering::Greater {
        b
    } else {
        a
    }
}

fn max_er(a: ExtendedReal, b: ExtendedReal) -> ExtendedReal {
    if a.cmp_value(&b) == Ordering::Less {
        b
    } else {
        a
    }
}

fn pow10(k: u64) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

fn approx_log10(man: &BigInt, exp: i64) -> f64 {
    let b = man.bits() as i64;
    let sh = (b - 53).max(0);
    let top = (man.abs() >> sh as usize).to_f64().unwrap_or(1.0);
    (top.log2() + (sh + exp) as f64) * std::f64::consts::LOG10_2
}

/// `(negative, n, e10)` with `|x| ≈ n * 10^(e10 - digits + 1)` and `n` having `digits` digits.
fn decimal_digits(x: &ExtendedReal, digits: u32) -> (bool, BigInt, i64) {
    let mut e10 = approx_log10(x.mantissa(), x.exponent()).floor() as i64;
    let lower = pow10(digits as u64 - 1);
    let upper = pow10(digits as u64);
    let man = x.mantissa().abs();
    loop {
        let k = digits as i64 - 1 - e10;
        let mut num = man.clone();
        let mut den = BigInt::one();
        if x.exponent() >= 0 {
            num <<= x.exponent() as usize;
        } else {
            den <<= (-x.exponent()) as usize;
        }
        if k >= 0 {
            num *= pow10(k as u64);
        } else {
            den *= pow10((-k) as u64);
        }
        let n = (num * 2 + &den) / (den * 2);
        if n >= upper {
            e10 += 1;
        } else if n < lower {
            e10 -= 1;
        } else {
            return (x.is_negative(), n, e10);
        }
    }
}

fn format_center(neg: bool, s: &str, e10: i64) -> String {
    let sign = if neg { "-" } else { "" };
    if (0..21).contains(&e10) {
        let int_len = e10 as usize + 1;
        if s.len() <= int_len {
            format!("{sign}{s}{}", "0".repeat(int_len - s.len()))
        } else {
            format!("{sign}{}.{}", &s[..int_len], &s[int_len..])
        }
    } else if (-5..0).contains(&e10) {
        format!("{sign}0.{}{s}", "0".repeat((-e10 - 1) as usize))
    } else if s.len() == 1 {
        format!("{sign}{s}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
    }
}

/// Upper bound of `10^m`.
fn mag_pow10_up(m: i64) -> Mag {
    if m >= 0 {
        let v = ExtendedReal::from_bigint(pow10(m as u64));
        return v.abs_upper();
    }
    let one = ExtendedReal::one();
    let d = ExtendedReal::from_bigint(pow10((-m) as u64));
    let r = one.div(&d, Precision::from_bits(64));
    r.value.abs_upper().add(r.err)
}

/// Two significant digits, rounded up.
fn format_mag_up(m: Mag) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    let x = ExtendedReal::from_mag(m);
    let mut e10 = approx_log10(x.mantissa(), x.exponent()).floor() as i64;
    loop {
        let k = 1 - e10;
        let mut num = x.mantissa().clone();
        let mut den = BigInt::one();
        if x.exponent() >= 0 {
            num <<= x.exponent() as usize;
        } else {
            den <<= (-x.exponent()) as usize;
        }
        if k >= 0 {
            num *= pow10(k as u64);
        } else {
            den *= pow10((-k) as u64);
        }
        let n: BigInt = (num + &den - 1u32) / den;
        if n > BigInt::from(99) {
            e10 += 1;
        } else if n < BigInt::from(10) {
            e10 -= 1;
        } else {
            let s = n.to_string();
            return format!("{}.{}e{}", &s[..1], &s[1..], e10);
        }
    }
}

/// Exact value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let e = exp - frac_part.len() as i64;
    let mut q = if e >= 0 {
        BigRational::from_integer(n * pow10(e as u64))
    } else {
        BigRational::new(n, pow10((-e) as u64))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32).unwrap_or(12);
        write!(f, "{}", self.format_pm(digits))
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enclosure({})", self.format_pm(20))
    }
}

impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = self.prec.digits();
        let (center, radius) = self.to_decimal(digits);
        let mut st = serializer.serialize_struct("Enclosure", 3)?;
        st.serialize_field("center", &center)?;
        st.serialize_field("radius", &radius)?;
        st.serialize_field("digits", &digits)?;
        st.end()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Enclosure> for &Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: &Enclosure) -> Enclosure {
                self.$f(rhs)
            }
        }
        impl $tr<Enclosure> for Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: Enclosure) -> Enclosure {
                self.$f(&rhs)
            }
        }
        impl $tr<&Enclosure> for Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: &Enclosure) -> Enclosure {
                self.$f(rhs)
            }
        }
        impl $tr<Enclosure> for &Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: Enclosure) -> Enclosure {
                self.$f(&rhs)
            }
        }
    };
}

binop!(Add, add, add_enc);
binop!(Sub, sub, sub_enc);
binop!(Mul, mul, mul_enc);

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::neg(&self)
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::from_digits(60)
    }

    #[test]
    fn log_of_one_is_exact_zero() {
        let l = Enclosure::one(p()).ln().unwrap();
        assert!(l.mid().is_zero() && l.rad().is_zero());
    }

    #[test]
    fn sqrt_of_four() {
        let s = Enclosure::from_i64(4, p()).sqrt().unwrap();
        assert!(s.contains_point(&ExtendedReal::from_i64(2)));
        assert!(s.rad() < Mag::pow2(-190));
    }

    #[test]
    fn division_rejects_zero() {
        let x = Enclosure::from_i64(0, p()).add_error(Mag::pow2(-3));
        assert!(Enclosure::one(p()).div(&x).is_err());
        assert!(x.ln().is_err());
    }

    #[test]
    fn decimal_round_trip() {
        let third = Enclosure::from_ratio(1, 3, p());
        let s = third.format_pm(60);
        assert!(s.starts_with("0.333333333333"));
        let back = Enclosure::parse(&s, p()).unwrap();
        assert!(back.contains(&third));
    }

    #[test]
    fn center_formatting() {
        let prec = p();
        assert_eq!(Enclosure::from_i64(-5, prec).to_decimal(4).0, "-5.000");
        assert_eq!(Enclosure::from_ratio(1, 1000, prec).to_decimal(3).0, "0.00100");
        assert_eq!(Enclosure::from_ratio(1, 1_000_000, prec).to_decimal(3).0, "1.00e-6");
        assert_eq!(Enclosure::from_i64(120, prec).to_decimal(2).0, "120");
    }

    #[test]
    fn radius_formatting_rounds_up() {
        assert_eq!(format_mag_up(Mag::from_u64(1)), "1.0e0");
        assert_eq!(format_mag_up(Mag::pow2(-1)), "5.0e-1");
        let third = Mag::from_u64(1).div(Mag::from_u64(3));
        assert_eq!(format_mag_up(third), "3.4e-1");
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_decimal("-1.25e-1").unwrap(), BigRational::new((-1).into(), 8.into()));
        assert_eq!(parse_decimal("3").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_decimal("abc").is_none());
    }
}

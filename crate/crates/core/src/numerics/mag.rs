//! Upward-rounded magnitudes used as enclosure radii.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};

const MAN_BITS: u32 = 30;
const MAN_MIN: u64 = 1 << (MAN_BITS - 1);
const MAN_LIMIT: u64 = 1 << MAN_BITS;

/// A non-negative number `man * 2^exp` with a 30-bit mantissa.
///
/// Every arithmetic operation rounds toward +infinity, so a `Mag` computed
/// from upper bounds is itself an upper bound. The exponent is an `i64`, which
/// keeps radii like `10^-500` representable.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    /// Builds `man * 2^exp` rounded up.
    pub fn from_parts_up(man: u128, exp: i64) -> Mag {
        Self::normalize(man, exp, true)
    }

    /// Builds `man * 2^exp` rounded down (used for lower bounds of divisors).
    pub fn from_parts_down(man: u128, exp: i64) -> Mag {
        Self::normalize(man, exp, false)
    }

    fn normalize(mut man: u128, mut exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        while man >= MAN_LIMIT as u128 {
            let lost = man & 1;
            man >>= 1;
            exp += 1;
            if up && lost != 0 {
                man += 1;
            }
        }
        while man < MAN_MIN as u128 {
            man <<= 1;
            exp -= 1;
        }
        // a carry from rounding up can push the mantissa back to 2^30
        if man >= MAN_LIMIT as u128 {
            man >>= 1;
            exp += 1;
        }
        Mag {
            man: man as u64,
            exp,
        }
    }

    pub fn from_u64(v: u64) -> Mag {
        Self::from_parts_up(v as u128, 0)
    }

    /// `2^e`, exact.
    pub fn pow2(e: i64) -> Mag {
        Mag {
            man: MAN_MIN,
            exp: e - (MAN_BITS as i64 - 1),
        }
    }

    /// Upper bound of a finite non-negative `f64`.
    ///
    /// Only for constants known exactly in binary (or already upper bounds);
    /// the conversion itself is exact up to the final upward rounding.
    pub fn from_f64_up(v: f64) -> Mag {
        assert!(v >= 0.0 && v.is_finite(), "Mag::from_f64_up({v})");
        if v == 0.0 {
            return Mag::ZERO;
        }
        let bits = v.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::from_parts_up(man as u128, exp)
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn mantissa(&self) -> u64 {
        self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Exponent `e` with `2^(e-1) <= self < 2^e`; `None` for zero.
    pub fn log2_ceil_bound(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + MAN_BITS as i64)
        }
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag {
                man: self.man,
                exp: self.exp + k,
            }
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Upper bound of the square root.
    pub fn sqrt(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        // make the exponent even and the mantissa wide enough
        let (mut man, mut exp) = ((self.man as u128) << 60, self.exp - 60);
        if exp % 2 != 0 {
            man <<= 1;
            exp -= 1;
        }
        let mut r = isqrt_u128(man);
        if r * r < man {
            r += 1;
        }
        Self::from_parts_up(r, exp / 2)
    }

    /// Approximate value; never used for rigorous decisions.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        (self.man as f64) * 2f64.powi(self.exp.clamp(-2000, 2000) as i32)
    }

    /// Approximate base-2 logarithm (for parameter selection only).
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl Add for Mag {
    type Output = Mag;

    fn add(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let gap = big.exp - small.exp;
        if gap > 64 {
            // the small term is below one unit of the big mantissa
            return Self::from_parts_up(big.man as u128 + 1, big.exp);
        }
        let sum = ((big.man as u128) << gap) + small.man as u128;
        Self::from_parts_up(sum, small.exp)
    }
}

impl Mul for Mag {
    type Output = Mag;

    fn mul(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Self::from_parts_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }
}

impl Div for Mag {
    type Output = Mag;

    /// `self / other`, rounded up. `other` should be a lower bound of the true divisor.
    fn div(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let den = other.man as u128;
        let q = num.div_ceil(den);
        Self::from_parts_up(q, self.exp - other.exp - 64)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self
                .exp
                .cmp(&other.exp)
                .then_with(|| self.man.cmp(&other.man)),
        }
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mag({}*2^{})", self.man, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_upward() {
        let third = Mag::from_u64(1).div(Mag::from_u64(3));
        assert!(third.mul(Mag::from_u64(3)) >= Mag::from_u64(1));
        let s = Mag::from_u64(2).sqrt();
        assert!(s.mul(s) >= Mag::from_u64(2));
    }

    #[test]
    fn add_with_large_gap_still_bounds() {
        let a = Mag::pow2(0);
        let b = Mag::pow2(-200);
        let c = a.add(b);
        assert!(c > a);
    }

    #[test]
    fn ordering_follows_value() {
        assert!(Mag::pow2(-10) < Mag::pow2(-9));
        assert!(Mag::from_u64(3) > Mag::from_u64(2));
        assert!(Mag::ZERO < Mag::pow2(-5000));
        assert_eq!(Mag::from_f64_up(0.5), Mag::pow2(-1));
    }
}

//! Fixed-point kernels for exp, ln and the constants π, ln 2.
//!
//! Each kernel evaluates at a point and returns the rounded value together
//! with a rigorous bound on its total error (truncation + rounding).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::float::{ExtendedReal, Precision, Rounded};
use super::mag::Mag;

type Memo = OnceLock<Mutex<HashMap<u32, BigInt>>>;

static LN2: Memo = OnceLock::new();
static PI: Memo = OnceLock::new();

fn memoized(memo: &Memo, w: u32, compute: fn(u32) -> BigInt) -> BigInt {
    let map = memo.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&w) {
        return v.clone();
    }
    let v = compute(w);
    map.lock().unwrap().entry(w).or_insert(v).clone()
}

/// `ln 2 * 2^w` with error at most one unit.
pub fn ln2_fixed(w: u32) -> BigInt {
    memoized(&LN2, w, |w| {
        let g = 24;
        let wg = (w + g) as usize;
        let one = BigInt::one() << wg;
        // ln 2 = 2 atanh(1/3)
        let mut sum = BigInt::zero();
        let mut pow3 = BigInt::from(3);
        let mut k = 0u64;
        loop {
            let t = &one / (&pow3 * BigInt::from(2 * k + 1));
            if t.is_zero() {
                break;
            }
            sum += t;
            pow3 *= 9;
            k += 1;
        }
        sum <<= 1;
        round_shift(&sum, g)
    })
}

/// `π * 2^w` with error at most one unit.
pub fn pi_fixed(w: u32) -> BigInt {
    memoized(&PI, w, |w| {
        let g = 24;
        let wg = w + g;
        let a = atan_inv_fixed(5, wg);
        let b = atan_inv_fixed(239, wg);
        round_shift(&(a * 16 - b * 4), g)
    })
}

/// `atan(1/x) * 2^w`, each term truncated (error below one unit per term).
fn atan_inv_fixed(x: u64, w: u32) -> BigInt {
    let one = BigInt::one() << w as usize;
    let x2 = BigInt::from(x * x);
    let mut pow = BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let t = &one / (&pow * BigInt::from(2 * k + 1));
        if t.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        pow *= &x2;
        k += 1;
    }
    sum
}

fn round_shift(v: &BigInt, sh: u32) -> BigInt {
    if sh == 0 {
        return v.clone();
    }
    (v + (BigInt::one() << (sh - 1) as usize)) >> sh as usize
}

/// Value of a fixed-point integer `v * 2^-w` with an error of `err_units` units,
/// rounded to `prec`.
fn from_fixed(v: BigInt, w: i64, err_units: u64, prec: Precision) -> Rounded {
    let r = ExtendedReal::round_parts(v, -w, prec);
    Rounded {
        value: r.value,
        err: r.err.add(Mag::from_u64(err_units).mul_2exp(-w)),
    }
}

pub fn ln2(prec: Precision) -> Rounded {
    let w = prec.bits() + 8;
    from_fixed(ln2_fixed(w), w as i64, 1, prec)
}

pub fn pi(prec: Precision) -> Rounded {
    let w = prec.bits() + 8;
    from_fixed(pi_fixed(w), w as i64, 1, prec)
}

fn bit_len(v: u64) -> u32 {
    64 - v.leading_zeros()
}

/// `exp(x)` at a point.
///
/// Panics when `x` is astronomically large (|x| > 1e15), which no computation
/// in this crate produces.
pub fn exp_point(x: &ExtendedReal, prec: Precision) -> Rounded {
    if x.is_zero() {
        return Rounded {
            value: ExtendedReal::one(),
            err: Mag::ZERO,
        };
    }
    let xf = x.to_f64();
    assert!(xf.abs() < 1e15, "exp argument out of range: {xf:e}");
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let ka = k.unsigned_abs();
    let s = ((prec.bits() as f64).sqrt() / 2.0).round().clamp(4.0, 20.0) as u32;
    let w = prec.bits() + 2 * s + 40 + bit_len(ka);
    let f = (w + s) as usize;
    // y = (x - k ln2) / 2^s as a fixed-point number with f fractional bits
    let y = x.to_fixed(w as i64) - BigInt::from(k) * ln2_fixed(w);
    let one = BigInt::one() << f;
    let mut sum = one.clone();
    let mut t = one;
    let mut n = 0u64;
    loop {
        n += 1;
        t = (&t * &y) >> f;
        t /= BigInt::from(n);
        if t.is_zero() {
            break;
        }
        sum += &t;
    }
    for _ in 0..s {
        sum = (&sum * &sum) >> f;
    }
    // taylor: 4 units per term plus a geometric tail; squarings triple the error;
    // the error in y (ka + 1 units) is magnified by 2^s and the value (< 1.42)
    let taylor = 4 * n + 11;
    let err = 3u64.pow(s) * (taylor + 1) + 3 * (1u64 << s) * (ka + 2);
    let r = ExtendedReal::round_parts(sum, k - f as i64, prec);
    Rounded {
        value: r.value,
        err: r.err.add(Mag::from_u64(err).mul_2exp(k - f as i64)),
    }
}

/// `ln(x)` at a point `x > 0`.
pub fn ln_point(x: &ExtendedReal, prec: Precision) -> Rounded {
    assert!(x.is_positive(), "ln of non-positive value");
    let one = ExtendedReal::one();
    if *x == one {
        return Rounded {
            value: ExtendedReal::zero(),
            err: Mag::ZERO,
        };
    }
    let mut e = x.magnitude_exp().unwrap();
    let mut m = x.mul_2exp(-e);
    if m.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
        m = m.mul_2exp(1);
        e -= 1;
    }
    // extra bits when x is close to 1 so the result keeps relative accuracy
    let near_one = x.sub_exact(&one).magnitude_exp().unwrap();
    let g = if e == 0 { (-near_one).max(0) as u32 } else { 0 };
    let w = prec.bits() + 32 + g + bit_len(e.unsigned_abs());
    let num = m.sub_exact(&one);
    let den = m.add_exact(&one);
    let q = num.div(&den, Precision::from_bits(w + 8));
    let t = q.value.to_fixed(w as i64);
    let wu = w as usize;
    let t2 = (&t * &t) >> wu;
    let mut sum = t.clone();
    let mut p = t;
    let mut k = 0u64;
    loop {
        k += 1;
        p = (&p * &t2) >> wu;
        let term = &p / BigInt::from(2 * k + 1);
        if term.is_zero() && p.abs() < BigInt::from(4) {
            break;
        }
        sum += term;
    }
    let total = BigInt::from(e) * ln2_fixed(w) + (sum << 1);
    let err = e.unsigned_abs() + 2 * (3 * k + 6);
    from_fixed(total, w as i64, err, prec)
}

/// `atanh(x)` at a point `|x| < 1`, as `½ ln((1+x)/(1-x))`.
pub fn atanh_point(x: &ExtendedReal, prec: Precision) -> Rounded {
    assert!(x.abs().cmp_value(&ExtendedReal::one()).is_lt(), "atanh outside (-1, 1)");
    if x.is_zero() {
        return Rounded {
            value: ExtendedReal::zero(),
            err: Mag::ZERO,
        };
    }
    let one = ExtendedReal::one();
    let inner = prec.with_extra_bits(24);
    let q = one.add_exact(x).div(&one.sub_exact(x), inner);
    // d/dq ln q = 1/q, and 1/q <= (1+|x|)/(1-|x|) bounds the slope
    let lo_den = one.sub_exact(&x.abs());
    let slope = one.add_exact(&x.abs()).div(&lo_den, Precision::from_bits(40));
    let slope = slope.value.abs_upper().add(slope.err);
    let l = ln_point(&q.value, inner);
    let half = l.value.mul_2exp(-1).round(prec);
    Rounded {
        value: half.value,
        err: half
            .err
            .add(l.err.mul_2exp(-1))
            .add(q.err.mul(slope).mul_2exp(-1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::from_digits(60)
    }

    fn close(r: &Rounded, v: f64) -> bool {
        (r.value.to_f64() - v).abs() <= 1e-15 * v.abs().max(1e-300)
    }

    #[test]
    fn constants() {
        assert!(close(&pi(p()), std::f64::consts::PI));
        assert!(close(&ln2(p()), std::f64::consts::LN_2));
        assert!(pi(p()).err < Mag::pow2(-200));
    }

    #[test]
    fn exp_and_ln_are_inverse() {
        for v in [-30.0, -1.5, -1e-9, 0.25, 1.0, 7.0248, 100.0] {
            let x = ExtendedReal::from_f64_exact(v);
            let e = exp_point(&x, p());
            assert!(close(&e, v.exp()), "exp({v})");
            let l = ln_point(&e.value, p());
            let diff = l.value.sub_exact(&x).abs();
            let tol = ExtendedReal::from_mag(l.err.add(e.err.mul_2exp(10)).add(Mag::pow2(-190)));
            assert!(diff.cmp_value(&tol).is_le(), "ln(exp({v}))");
        }
    }

    #[test]
    fn ln_near_one_keeps_relative_accuracy() {
        let x = ExtendedReal::one().add_exact(&ExtendedReal::from_parts(BigInt::from(1), -100));
        let l = ln_point(&x, p());
        let rel = l.err.to_f64() / l.value.to_f64();
        assert!(rel < 1e-60);
    }

    #[test]
    fn atanh_small_value() {
        let x = ExtendedReal::from_f64_exact(0.125);
        let a = atanh_point(&x, p());
        assert!(close(&a, 0.125f64.atanh()));
    }
}

//! Riemann and Hurwitz zeta functions by Euler–Maclaurin summation.

use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::bernoulli::bernoulli_2k;
use crate::error::{Error, Result};
use crate::numerics::{Enclosure, ExtendedReal, Mag, Precision};

/// How `x^-s` is evaluated for rational `x`.
#[derive(Clone, Debug)]
enum PowKind {
    Int(i64),
    /// `s = n + 1/2`
    Half(i64),
    General,
}

fn classify(s: &Enclosure) -> PowKind {
    if !s.is_point() {
        return PowKind::General;
    }
    if let Some(n) = s.mid().to_i64_exact() {
        if n.abs() < 100_000 {
            return PowKind::Int(n);
        }
    }
    let twice = s.mid().mul_2exp(1);
    if let Some(m) = twice.to_i64_exact() {
        if m.abs() < 200_000 {
            return PowKind::Half(Integer::div_floor(&(m - 1), &2));
        }
    }
    PowKind::General
}

fn rational_powi(x: &BigRational, n: i64) -> BigRational {
    let base = if n < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, n.unsigned_abs() as usize)
}

/// `x^-s` for a positive rational `x`.
fn pow_neg(x: &BigRational, s: &Enclosure, kind: &PowKind, prec: Precision) -> Enclosure {
    match kind {
        PowKind::Int(n) => Enclosure::from_rational(&rational_powi(x, -n), prec),
        PowKind::Half(n) => {
            let r = Enclosure::from_rational(&rational_powi(x, -n), prec);
            let root = Enclosure::from_rational(&x.recip(), prec)
                .sqrt()
                .expect("positive base");
            r * root
        }
        PowKind::General => {
            let l = Enclosure::from_rational(x, prec).ln().expect("positive base");
            (l * s).neg().exp()
        }
    }
}

/// `x^-s` for a positive rational `x` and real `s`.
pub fn rational_pow_neg(x: &BigRational, s: &Enclosure) -> Enclosure {
    assert!(x.is_positive(), "rational_pow_neg needs a positive base");
    pow_neg(x, s, &classify(s), s.prec())
}

/// `ζ(s, a)` for real `s ≠ 1` and rational `a > 0`, including the analytic
/// continuation to `s < 1`.
pub fn hurwitz_zeta_continued(s: &Enclosure, a: &BigRational) -> Result<Enclosure> {
    if !a.is_positive() {
        return Err(Error::domain("hurwitz_zeta", format!("shift a = {a} must be positive")));
    }
    let one = Enclosure::one(s.prec());
    if s.overlaps(&one) {
        return Err(Error::pole(
            "hurwitz_zeta",
            format!("{s}"),
            "ζ(s, a) has a simple pole at s = 1",
        ));
    }
    let prec = s.prec();
    let digits = prec.digits() as u64;
    let mut n = 50.max(digits);
    if let Some(v) = hurwitz_direct(s, a, n, prec)? {
        return Ok(v);
    }
    loop {
        if let Some(v) = hurwitz_em(s, a, n, prec)? {
            return Ok(v);
        }
        n *= 2;
        if n > 1 << 20 {
            return Err(Error::exhausted("hurwitz_zeta Euler–Maclaurin", None));
        }
    }
}

/// Plain summation when `Re s` is large enough that fewer than `max_terms`
/// terms reach the target; the tail is bounded by
/// `∫_{K-1}^∞ (t+a)^{-σ} dt = (K-1+a)^{1-σ} / (σ-1)`.
fn hurwitz_direct(
    s: &Enclosure,
    a: &BigRational,
    max_terms: u64,
    prec: Precision,
) -> Result<Option<Enclosure>> {
    let sigma = s.lo().to_f64();
    if sigma <= 3.0 {
        return Ok(None);
    }
    let af = a.to_f64().unwrap_or(f64::MAX);
    let log2_first = (-sigma * af.log2()).max(0.0);
    let log2_target = log2_first - prec.bits() as f64 - 6.0;
    let log2_x = (-log2_target - (sigma - 1.0).log2()) / (sigma - 1.0);
    if log2_x > 40.0 {
        return Ok(None);
    }
    let k = (log2_x.exp2() - af + 2.0).ceil().max(1.0) as u64;
    if k > max_terms {
        return Ok(None);
    }
    let inner = prec.with_extra_bits(24);
    let s = s.with_prec(inner);
    let kind = classify(&s);
    let mut sum = Enclosure::zero(inner);
    for i in 0..k {
        let x = a + BigRational::from_integer(BigInt::from(i));
        sum = sum + pow_neg(&x, &s, &kind, inner);
    }
    let x = a + BigRational::from_integer(BigInt::from(k - 1));
    let sm1 = Enclosure::exact(s.lo(), inner) - Enclosure::one(inner);
    let tail = pow_neg(&x, &sm1, &classify(&sm1), inner).div(&sm1)?.abs_upper();
    Ok(Some(sum.add_error(tail).with_prec(prec)))
}

/// One Euler–Maclaurin attempt with `n` direct terms; `None` when the
/// correction series stops decreasing before reaching the target.
fn hurwitz_em(s: &Enclosure, a: &BigRational, n: u64, prec: Precision) -> Result<Option<Enclosure>> {
    let inner = prec.with_extra_bits(24);
    let s = s.with_prec(inner);
    let kind = classify(&s);
    let first = pow_neg(a, &s, &kind, inner);
    let target = Mag::pow2(-(prec.bits() as i64) - 4).mul(first.abs_upper().max(Mag::from_u64(1)));

    let mut sum = Enclosure::zero(inner);
    for k in 0..n {
        let x = a + BigRational::from_integer(BigInt::from(k));
        sum = sum + pow_neg(&x, &s, &kind, inner);
    }
    let x = a + BigRational::from_integer(BigInt::from(n));
    let xe = Enclosure::from_rational(&x, inner);
    let p = pow_neg(&x, &s, &kind, inner);
    let s_minus_1 = &s - &Enclosure::one(inner);
    sum = sum + (&xe * &p).div(&s_minus_1)? + p.mul_2exp(-1);

    let inv_x2 = Enclosure::from_rational(&rational_powi(&x, -2), inner);
    // xp = x^{-s-2k+1}, poch = (s)_{2k-1}
    let mut xp = &p * &xe;
    let mut poch = Enclosure::one(inner);
    let mut fact = BigInt::one();
    let mut prev_bound: Option<Mag> = None;
    let max_k = 4 * prec.bits() as u64 + 40;
    for k in 1..=max_k {
        let kk = 2 * k as i64;
        poch = if k == 1 {
            s.clone()
        } else {
            poch * (&s + &Enclosure::from_i64(kk - 3, inner)) * (&s + &Enclosure::from_i64(kk - 2, inner))
        };
        xp = xp * &inv_x2;
        fact *= BigInt::from((kk - 1) * kk);
        let coeff = BigRational::new(BigInt::one(), fact.clone()) * bernoulli_2k(k as usize);
        let coeff_e = Enclosure::from_rational(&coeff, inner);
        sum = sum + &coeff_e * &poch * &xp;

        // |R| <= |B_2k|/(2k)! |(s)_2k| x^{-σ-2k+1} / (σ+2k-1)
        let shifted = &s + &Enclosure::from_i64(kk - 1, inner);
        if !shifted.is_positive() {
            continue;
        }
        let bound = coeff_e
            .abs_upper()
            .mul((&poch * &shifted).abs_upper())
            .mul(xp.abs_upper())
            .div(shifted.abs_lower())
            .mul_2exp(1);
        if bound <= target {
            return Ok(Some(sum.add_error(bound).with_prec(prec)));
        }
        if let Some(pb) = prev_bound {
            if bound > pb && k > 4 {
                return Ok(None);
            }
        }
        prev_bound = Some(bound);
    }
    Ok(None)
}

/// `ζ(s, a)` on the convergent region `s > 1`.
pub fn hurwitz_zeta(s: &Enclosure, a: &BigRational) -> Result<Enclosure> {
    check_right_of_one("hurwitz_zeta", s)?;
    hurwitz_zeta_continued(s, a)
}

fn check_right_of_one(function: &'static str, s: &Enclosure) -> Result<()> {
    let one = Enclosure::one(s.prec());
    if s.overlaps(&one) {
        return Err(Error::pole(function, format!("{s}"), "simple pole at s = 1 with residue 1"));
    }
    if !s.gt(&one) {
        return Err(Error::domain(function, format!("s = {s} is not strictly greater than 1")));
    }
    Ok(())
}

/// `ζ_R(s)` for an interval strictly right of 1.
pub fn riemann_zeta(s: &Enclosure) -> Result<Enclosure> {
    check_right_of_one("riemann_zeta", s)?;
    riemann_zeta_continued(s)
}

/// `ζ_R(s)` for any real `s ≠ 1`.
pub fn riemann_zeta_continued(s: &Enclosure) -> Result<Enclosure> {
    hurwitz_zeta_continued(s, &BigRational::one())
}

/// Dirichlet `β(s) = 4^-s (ζ(s, 1/4) - ζ(s, 3/4))`.
pub fn dirichlet_beta(s: &Enclosure) -> Result<Enclosure> {
    let prec = s.prec();
    let one = Enclosure::one(prec);
    if s.is_point() && s.mid() == one.mid() {
        return Ok(Enclosure::pi(prec).mul_2exp(-2));
    }
    if s.overlaps(&one) {
        return Err(Error::domain(
            "dirichlet_beta",
            "interval arguments straddling 1 are not supported",
        ));
    }
    let inner = prec.with_extra_bits(8);
    let s = s.with_prec(inner);
    let q = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(4));
    let z1 = hurwitz_zeta_continued(&s, &q(1))?;
    let z3 = hurwitz_zeta_continued(&s, &q(3))?;
    let four_pow = rational_pow_neg(&BigRational::from_integer(BigInt::from(4)), &s);
    Ok(((z1 - z3) * four_pow).with_prec(prec))
}

/// True when `s` is exactly the integer `n`.
pub fn is_point_integer(s: &Enclosure, n: i64) -> bool {
    s.is_point() && *s.mid() == ExtendedReal::from_i64(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::from_digits(60)
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let z = riemann_zeta(&Enclosure::from_i64(2, p())).unwrap();
        let pi = Enclosure::pi(p());
        let expect = (&pi * &pi).div_i64(6);
        assert!(z.overlaps(&expect));
        assert!(z.rad() < Mag::pow2(-195));
    }

    #[test]
    fn values_left_of_one() {
        let z0 = riemann_zeta_continued(&Enclosure::zero(p())).unwrap();
        assert!(z0.contains_point(&ExtendedReal::from_f64_exact(-0.5)));
        let zm1 = riemann_zeta_continued(&Enclosure::from_i64(-1, p())).unwrap();
        assert!(zm1.overlaps(&Enclosure::from_ratio(-1, 12, p())));
        let zh = riemann_zeta_continued(&Enclosure::from_f64_exact(0.5, p())).unwrap();
        assert!((zh.mid_f64() + 1.4603545088095868).abs() < 1e-14);
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(
            riemann_zeta(&Enclosure::one(p())),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            riemann_zeta(&Enclosure::from_f64_exact(0.5, p())),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn beta_values() {
        let b1 = dirichlet_beta(&Enclosure::one(p())).unwrap();
        assert!((b1.mid_f64() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let b2 = dirichlet_beta(&Enclosure::from_i64(2, p())).unwrap();
        assert!((b2.mid_f64() - 0.915_965_594_177_219).abs() < 1e-14);
        let bh = dirichlet_beta(&Enclosure::from_f64_exact(0.5, p())).unwrap();
        assert!((bh.mid_f64() - 0.667_691_457_189_609_2).abs() < 1e-14);
    }

    #[test]
    fn large_arguments_use_short_sums() {
        let z = riemann_zeta(&Enclosure::from_i64(40, p())).unwrap();
        let expect = Enclosure::one(p()) + rational_pow_neg(&BigRational::from_integer(BigInt::from(2)), &Enclosure::from_i64(40, p()));
        assert!((&z - &expect).abs_upper() < Mag::pow2(-60));
        assert!(z.rad() < Mag::pow2(-195));
        let h = hurwitz_zeta(&Enclosure::from_f64_exact(12.5, p()), &BigRational::new(BigInt::from(1), BigInt::from(4))).unwrap();
        let em = hurwitz_em(&Enclosure::from_f64_exact(12.5, p()), &BigRational::new(BigInt::from(1), BigInt::from(4)), 200, p()).unwrap().unwrap();
        assert!(h.overlaps(&em));
    }

    #[test]
    fn interval_argument_contains_point_values() {
        let s = Enclosure::from_f64_exact(2.5, p()).add_error(Mag::pow2(-40));
        let zi = riemann_zeta(&s).unwrap();
        let zp = riemann_zeta(&Enclosure::from_f64_exact(2.5, p())).unwrap();
        assert!(zi.contains(&zp));
    }
}

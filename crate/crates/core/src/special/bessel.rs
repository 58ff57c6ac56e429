//! Modified Bessel function `K_ν` by trapezoidal quadrature of
//! `K_ν(x) = ∫_0^∞ e^{-x cosh t} cosh(νt) dt`.

use std::ops::Div;

use crate::error::{Error, Result};
use crate::numerics::{Enclosure, ExtendedReal, Mag};

/// `√(π/(2x)) e^{-x}`, which is `K_{1/2}(x)` exactly.
pub fn bessel_k_half(x: &Enclosure) -> Result<Enclosure> {
    let prec = x.prec();
    if !x.is_positive() {
        return Err(Error::domain("bessel_k", format!("x = {x} is not strictly positive")));
    }
    let pi = Enclosure::pi(prec);
    Ok(pi.div(&x.mul_2exp(1))?.sqrt()? * x.neg().exp())
}

/// Upper bound of `K_ν(y)` for `y > 0`.
///
/// `|ν| <= ½`: `K_ν <= K_{1/2}`. Otherwise `cosh t >= 1 + t²/2` and
/// `cosh νt <= e^{|ν|t}` give `K_ν(y) <= √(2π/y) e^{-y + ν²/(2y)}`.
pub fn bessel_k_upper(nu: &Enclosure, y: &Enclosure) -> Result<Mag> {
    let prec = y.prec();
    let nu_abs = nu.abs_upper();
    if nu_abs <= Mag::pow2(-1) {
        return Ok(bessel_k_half(y)?.abs_upper());
    }
    let nu_up = Enclosure::exact(ExtendedReal::from_mag(nu_abs), prec);
    let pi = Enclosure::pi(prec);
    let pre = pi.mul_2exp(1).div(y)?.sqrt()?;
    let expo = nu_up.sqr().div(&y.mul_2exp(1))? - y;
    Ok((pre * expo.exp()).abs_upper())
}

fn dyadic_floor(v: f64, bits: i32) -> ExtendedReal {
    let scaled = (v * 2f64.powi(bits)).floor();
    ExtendedReal::from_f64_exact(scaled).mul_2exp(-(bits as i64))
}

/// `K_ν(x)` for real `ν` and a strictly positive interval `x`.
pub fn bessel_k(nu: &Enclosure, x: &Enclosure) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::domain(
            "bessel_k",
            format!("x = {x} is not strictly positive (K_ν is singular at 0)"),
        ));
    }
    let prec = x.prec().max(nu.prec());
    let inner = prec.with_extra_bits(24);
    let x = x.with_prec(inner);
    let nu = nu.abs().with_prec(inner);
    let xf = x.lo().to_f64();
    let nuf = nu.hi().to_f64();
    let bits = inner.bits() as f64;

    // log2 of the rough size of K, for a relative target
    let log2_size = (-xf + 0.5 * (std::f64::consts::PI / (2.0 * xf)).ln()) / std::f64::consts::LN_2;
    let log2_target = log2_size.floor() - bits;

    // step: e^{π²/(2h)} must beat the target by the factor K(x cos d)/K(x)
    let need = bits * std::f64::consts::LN_2 + 0.31 * xf + 12.0;
    let h = dyadic_floor(std::f64::consts::PI.powi(2) / (2.0 * need), 16);
    let hf = h.to_f64();

    // truncation point
    let mut t = hf;
    loop {
        let lg = -xf * t.cosh() + nuf * t - (xf * t.sinh() - nuf).max(1e-300).ln();
        if xf * t.sinh() > nuf + 1.0 && lg / std::f64::consts::LN_2 < log2_target - 2.0 {
            break;
        }
        t += hf;
    }
    let nodes = (t / hf).ceil() as i64;

    let he = Enclosure::exact(h.clone(), inner);
    let e_h = he.exp();
    let e_nu = (&nu * &he).exp();
    let mut ek = Enclosure::one(inner);
    let mut enk = Enclosure::one(inner);
    let mut sum = x.neg().exp().mul_2exp(-1);
    for _ in 1..=nodes {
        ek = &ek * &e_h;
        enk = &enk * &e_nu;
        let cosh_t = (&ek + &ek.recip()?).mul_2exp(-1);
        let cosh_nt = (&enk + &enk.recip()?).mul_2exp(-1);
        sum = sum + (-(&x * &cosh_t)).exp() * cosh_nt;
    }
    let sum = sum * &he;

    // tail beyond T = nodes·h: e^{-x cosh T + νT} / (x sinh T - ν)
    let big_t = Enclosure::exact(h.mul_exact(&ExtendedReal::from_i64(nodes)), inner);
    let xl = Enclosure::exact(x.lo(), inner);
    let slope = &xl * &big_t.sinh() - Enclosure::exact(nu.hi(), inner);
    if !slope.is_positive() {
        return Err(Error::exhausted("bessel_k truncation", None));
    }
    let tail_num = (-(&xl * &big_t.cosh()) + Enclosure::exact(nu.hi(), inner) * &big_t).exp();
    let tail = tail_num.div(&slope)?.abs_upper();

    // discretisation: 2 K_ν(x cos d) / (e^{2πd/h} - 1) with d = π/4, cos d > 181/256
    let y = Enclosure::exact(x.lo().mul_exact(&ExtendedReal::from_i64(181)).mul_2exp(-8), inner);
    let k_strip = bessel_k_upper(&nu, &y)?;
    let pi = Enclosure::pi(inner);
    let denom = ((&pi * &pi).div(&he.mul_2exp(1))?.exp() - Enclosure::one(inner)).abs_lower();
    let disc = k_strip.mul_2exp(1).div(denom);

    Ok(sum.add_error(tail).add_error(disc).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;

    fn p() -> Precision {
        Precision::from_digits(60)
    }

    #[test]
    fn half_order_matches_closed_form() {
        let x = Enclosure::from_i64(2, p());
        let nu = Enclosure::from_f64_exact(0.5, p());
        let k = bessel_k(&nu, &x).unwrap();
        let c = bessel_k_half(&x).unwrap();
        assert!(k.overlaps(&c));
        assert!(k.rad() < Mag::pow2(-195));
        assert!((k.mid_f64() - 0.119_937_771_968_061_45).abs() < 1e-16);
    }

    #[test]
    fn order_zero_values() {
        let k = bessel_k(&Enclosure::zero(p()), &Enclosure::from_i64(1, p())).unwrap();
        assert!((k.mid_f64() - 0.421_024_438_240_708_3).abs() < 1e-15);
        let small = bessel_k(&Enclosure::zero(p()), &Enclosure::from_f64_exact(0.125, p())).unwrap();
        assert!((small.mid_f64() - 2.207_869_086_744_97).abs() < 1e-12);
    }

    #[test]
    fn monotone_and_below_half_order() {
        let k10 = bessel_k(&Enclosure::zero(p()), &Enclosure::from_i64(10, p())).unwrap();
        let k11 = bessel_k(&Enclosure::zero(p()), &Enclosure::from_i64(11, p())).unwrap();
        assert!(k10.gt(&k11));
        assert!(k10.lt(&bessel_k_half(&Enclosure::from_i64(10, p())).unwrap()));
    }

    #[test]
    fn rejects_non_positive_argument() {
        assert!(bessel_k(&Enclosure::zero(p()), &Enclosure::zero(p())).is_err());
    }
}

//! Euler's constant, Γ, digamma at integers, and binomial Taylor data.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::bernoulli::bernoulli_2k;
use super::zeta::riemann_zeta;
use crate::error::{Error, Result};
use crate::numerics::{sum_series, Enclosure, ExtendedReal, Mag, Precision, SeriesSpec};

static EULER: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();

/// Euler–Mascheroni constant, from the Euler–Maclaurin expansion of the
/// harmonic numbers: `γ = H_{N-1} - ln N + 1/(2N) + Σ B_2k / (2k N^2k) + R`.
pub fn euler_gamma(prec: Precision) -> Enclosure {
    let memo = EULER.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().unwrap().get(&prec.bits()) {
        return v.clone();
    }
    let v = compute_euler_gamma(prec);
    memo.lock().unwrap().entry(prec.bits()).or_insert(v).clone()
}

fn compute_euler_gamma(prec: Precision) -> Enclosure {
    let inner = prec.with_extra_bits(24);
    let n = (prec.bits() / 6 + 10) as i64;
    let mut h = BigRational::zero();
    for k in 1..n {
        h += BigRational::new(BigInt::one(), BigInt::from(k));
    }
    h += BigRational::new(BigInt::one(), BigInt::from(2 * n));
    let nq = BigRational::from_integer(BigInt::from(n));
    let inv_n2 = BigRational::new(BigInt::one(), BigInt::from(n * n));
    let mut pow = BigRational::one();
    let target = Mag::pow2(-(inner.bits() as i64));
    let mut bound = Mag::ZERO;
    for k in 1.. {
        pow *= &inv_n2;
        let term = bernoulli_2k(k) * &pow / BigRational::from_integer(BigInt::from(2 * k));
        h += &term;
        bound = Enclosure::from_rational(&term, Precision::from_bits(64))
            .abs_upper()
            .mul_2exp(1);
        if bound <= target {
            break;
        }
    }
    let ln_n = Enclosure::from_rational(&nq, inner).ln().expect("n > 0");
    (Enclosure::from_rational(&h, inner) - ln_n)
        .add_error(bound)
        .with_prec(prec)
}

/// `½ ln(2π)`, i.e. `-ζ'_R(0)`.
pub fn log_2pi_half(prec: Precision) -> Enclosure {
    let inner = prec.with_extra_bits(8);
    let two_pi = Enclosure::pi(inner).mul_2exp(1);
    two_pi.ln().expect("2π > 0").mul_2exp(-1).with_prec(prec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantTag {
    EulerGamma,
    Log2PiHalf,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialConstant {
    pub tag: ConstantTag,
    pub value: Enclosure,
}

impl SpecialConstant {
    pub fn new(tag: ConstantTag, prec: Precision) -> SpecialConstant {
        let value = match tag {
            ConstantTag::EulerGamma => euler_gamma(prec),
            ConstantTag::Log2PiHalf => log_2pi_half(prec),
        };
        SpecialConstant { tag, value }
    }
}

/// `(2k-1)!!`-style double factorial of an odd `k >= -1`, with `(-1)!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 || k % 2 == 0 {
        return Err(Error::domain(
            "double_factorial",
            format!("{k} is not an odd integer >= -1"),
        ));
    }
    Ok((1..=k.max(0)).step_by(2).fold(BigInt::one(), |acc, j| acc * j))
}

/// `H_n = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, k| {
        acc + BigRational::new(BigInt::one(), BigInt::from(k))
    })
}

/// `ψ(j) = -γ + H_{j-1}`.
pub fn digamma_int(j: i64, prec: Precision) -> Result<Enclosure> {
    if j < 1 {
        return Err(Error::domain("digamma_int", format!("j = {j} must be >= 1")));
    }
    let h = Enclosure::from_rational(&harmonic(j as u64 - 1), prec);
    Ok(h - euler_gamma(prec))
}

/// `ψ(½) = -γ - 2 ln 2`.
pub fn digamma_half(prec: Precision) -> Enclosure {
    -(euler_gamma(prec) + Enclosure::ln2(prec).mul_2exp(1))
}

/// Generalized binomial coefficient `C(x, j) = x (x-1) ... (x-j+1) / j!`.
pub fn gen_binomial(x: &Enclosure, j: u64) -> Enclosure {
    let prec = x.prec();
    let mut c = Enclosure::one(prec);
    for i in 0..j {
        c = (c * (x - &Enclosure::from_i64(i as i64, prec))).div_i64(i as i64 + 1);
    }
    c
}

/// Exact generalized binomial coefficient for rational `x`.
pub fn gen_binomial_exact(x: &BigRational, j: u64) -> BigRational {
    let mut c = BigRational::one();
    for i in 0..j {
        c = c * (x - BigRational::from_integer(BigInt::from(i)))
            / BigRational::from_integer(BigInt::from(i + 1));
    }
    c
}

/// Taylor data of `C(-s, j)` at `s = 0`:
/// `C(-s, j) = linear_coeff · s + quadratic_coeff · s² + O(s³)`.
#[derive(Clone, Debug, Serialize)]
pub struct BinomialTaylor {
    pub j: u64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub linear_coeff: BigRational,
    pub quadratic_coeff: Enclosure,
}

impl BinomialTaylor {
    pub fn new(j: u64, prec: Precision) -> Result<BinomialTaylor> {
        if j < 1 {
            return Err(Error::domain("BinomialTaylor", "j must be positive"));
        }
        let sign = if j.is_multiple_of(2) { 1 } else { -1 };
        let linear = BigRational::new(BigInt::from(sign), BigInt::from(j));
        let psi_plus_gamma = digamma_int(j as i64, prec)? + euler_gamma(prec);
        let quadratic = psi_plus_gamma.mul_i64(sign).div_i64(j as i64);
        Ok(BinomialTaylor {
            j,
            linear_coeff: linear,
            quadratic_coeff: quadratic,
        })
    }

    /// The same quadratic coefficient in exact arithmetic, `(-1)^j H_{j-1} / j`.
    pub fn quadratic_exact(&self) -> BigRational {
        let sign = if self.j.is_multiple_of(2) { 1 } else { -1 };
        harmonic(self.j - 1) * BigRational::new(BigInt::from(sign), BigInt::from(self.j))
    }
}

fn half_integer_twice(x: &Enclosure) -> Option<i64> {
    if !x.is_point() {
        return None;
    }
    x.mid().mul_2exp(1).to_i64_exact()
}

/// `Γ(x)` for a strictly positive interval.
pub fn gamma_fn(x: &Enclosure) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::domain("gamma_fn", format!("argument {x} is not strictly positive")));
    }
    gamma_continued(x)
}

/// `Γ(x)` for real `x` away from the non-positive integers.
pub fn gamma_continued(x: &Enclosure) -> Result<Enclosure> {
    let prec = x.prec();
    if let Some(m) = half_integer_twice(x) {
        if m <= 0 && m % 2 == 0 {
            return Err(Error::pole("gamma", format!("{x}"), "Γ has poles at 0, -1, -2, ..."));
        }
        if m.abs() < 2000 {
            return Ok(gamma_half_integer(m, prec));
        }
    }
    // reject intervals that touch a pole
    let lo = x.lo().to_f64();
    let hi = x.hi().to_f64();
    if lo <= 0.5 {
        let mut k = lo.floor() as i64;
        while k <= 0 && (k as f64) <= hi.ceil() {
            if x.overlaps(&Enclosure::from_i64(k, prec)) {
                return Err(Error::pole(
                    "gamma",
                    format!("{x}"),
                    "interval meets a pole of Γ at a non-positive integer",
                ));
            }
            k += 1;
        }
    }
    let inner = prec.with_extra_bits(24);
    let x = x.with_prec(inner);
    let z0 = 0.12 * inner.bits() as f64 + 8.0;
    let shift = (z0 - lo).ceil().max(0.0) as i64;
    let mut denom = Enclosure::one(inner);
    for k in 0..shift {
        denom = denom * (&x + &Enclosure::from_i64(k, inner));
    }
    let z = &x + &Enclosure::from_i64(shift, inner);
    let lg = ln_gamma_stirling(&z)?;
    Ok(lg.exp().div(&denom)?.with_prec(prec))
}

/// `ln Γ(z)` by the Stirling series, for `z` bounded well away from 0.
fn ln_gamma_stirling(z: &Enclosure) -> Result<Enclosure> {
    let prec = z.prec();
    let half = Enclosure::from_f64_exact(0.5, prec);
    let lnz = z.ln()?;
    let mut acc = (z - &half) * &lnz - z + log_2pi_half(prec);
    let inv_z = z.recip()?;
    let inv_z2 = inv_z.sqr();
    let z_lo = z.abs_lower();
    let target = Mag::pow2(-(prec.bits() as i64));
    let mut pw = inv_z.clone();
    for k in 1usize..4 * prec.bits() as usize {
        let kk = 2 * k as i64;
        let c = bernoulli_2k(k) / BigRational::from_integer(BigInt::from(kk * (kk - 1)));
        acc = acc + Enclosure::from_rational(&c, prec) * &pw;
        pw = pw * &inv_z2;
        // next term bounds the remainder for real z > 0
        let next = bernoulli_2k(k + 1) / BigRational::from_integer(BigInt::from((kk + 2) * (kk + 1)));
        let mut b = Enclosure::from_rational(&next, Precision::from_bits(64)).abs_upper();
        for _ in 0..(kk + 1) {
            b = b.div(z_lo);
        }
        if b <= target {
            return Ok(acc.add_error(b));
        }
    }
    Err(Error::exhausted("ln_gamma Stirling series", Some(acc)))
}

/// `Γ(m/2)` for an integer `m` that is not a non-positive even number.
fn gamma_half_integer(m: i64, prec: Precision) -> Enclosure {
    if m % 2 == 0 {
        let n = m / 2;
        let f = (1..n).fold(BigInt::one(), |acc, k| acc * k);
        return Enclosure::from_bigint(&f, prec);
    }
    let inner = prec.with_extra_bits(8);
    let sqrt_pi = Enclosure::pi(inner).sqrt().expect("π > 0");
    // Γ(n + ½) = (2n-1)!! √π / 2^n, extended to negative n by the recurrence
    let n = (m - 1) / 2;
    let v = if n >= 0 {
        let df = double_factorial(2 * n - 1).expect("odd");
        Enclosure::from_bigint(&df, inner).mul_enc(&sqrt_pi).mul_2exp(-n)
    } else {
        // Γ(½ - k) = (-4)^k k! / (2k)! √π
        let k = -n;
        let kf = (1..=k).fold(BigInt::one(), |acc, i| acc * i);
        let k2f = (1..=2 * k).fold(BigInt::one(), |acc, i| acc * i);
        let mut q = BigRational::new(kf, k2f) * BigRational::from_integer(BigInt::from(4).pow(k as u32));
        if k % 2 == 1 {
            q = -q;
        }
        Enclosure::from_rational(&q, inner) * sqrt_pi
    };
    v.with_prec(prec)
}

/// `Σ_{k≥2} (-1)^{k-1} z^k ζ_R(k) / k`, which equals `ln(e^{-γz} / Γ(1+z))`.
pub fn log_gamma_series(z: &Enclosure) -> Result<Enclosure> {
    let prec = z.prec();
    let az = z.abs_upper();
    if az >= Mag::from_u64(1) {
        return Err(Error::domain("log_gamma_series", format!("|z| for z = {z} is not below 1")));
    }
    let inner = prec.with_extra_bits(16);
    let z = z.with_prec(inner);
    let one_minus = ExtendedReal::one().sub_exact(&ExtendedReal::from_mag(az));
    let gap = one_minus.abs_lower();
    let mut zk = z.clone();
    let spec = SeriesSpec::new(
        "log_gamma_series",
        2,
        |k| {
            zk = &zk * &z;
            let zeta = riemann_zeta(&Enclosure::from_i64(k as i64, inner))?;
            let t = (&zk * &zeta).div_i64(k as i64);
            Ok(if k % 2 == 0 { -t } else { t })
        },
        |n| {
            // ζ_R(k) <= 2 for k >= 2
            let mut b = Mag::from_u64(2).div(Mag::from_u64(n)).div(gap);
            for _ in 0..n {
                b = b.mul(az);
            }
            Some(b)
        },
    )
    .target(Mag::pow2(-(inner.bits() as i64)))
    .max_index(20 * inner.bits() as u64);
    Ok(sum_series(spec, inner)?.with_prec(prec))
}

/// The closed side `-γz - ln Γ(1+z)`.
pub fn log_gamma_closed(z: &Enclosure) -> Result<Enclosure> {
    let prec = z.prec();
    let inner = prec.with_extra_bits(16);
    let z = z.with_prec(inner);
    let g = gamma_fn(&(&z + &Enclosure::one(inner)))?;
    Ok((-(euler_gamma(inner) * &z) - g.ln()?).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::from_digits(60)
    }

    #[test]
    fn euler_gamma_digits() {
        let g = euler_gamma(p());
        let s = g.format_pm(40);
        assert!(s.starts_with("0.5772156649015328606065120900824024310422"), "{s}");
        assert!(g.rad() < Mag::pow2(-200));
    }

    #[test]
    fn gamma_special_points() {
        let one = gamma_fn(&Enclosure::one(p())).unwrap();
        assert!(one.contains_point(&ExtendedReal::one()));
        let half = gamma_fn(&Enclosure::from_f64_exact(0.5, p())).unwrap();
        let sqrt_pi = Enclosure::pi(p()).sqrt().unwrap();
        assert!(half.overlaps(&sqrt_pi));
        let g = gamma_continued(&Enclosure::from_f64_exact(-0.5, p())).unwrap();
        assert!(g.overlaps(&sqrt_pi.mul_i64(-2)));
    }

    #[test]
    fn gamma_generic_matches_shortcut() {
        let x = Enclosure::from_f64_exact(2.5, p()).add_error(Mag::pow2(-300));
        let a = gamma_fn(&x).unwrap();
        let b = gamma_fn(&Enclosure::from_f64_exact(2.5, p())).unwrap();
        assert!(a.overlaps(&b));
        assert!(a.rad() < Mag::pow2(-190));
        let y = gamma_continued(&Enclosure::from_f64_exact(-0.25, p())).unwrap();
        assert!((y.mid_f64() + 4.901666809860711).abs() < 1e-13);
    }

    #[test]
    fn gamma_rejects_poles() {
        assert!(gamma_fn(&Enclosure::zero(p())).is_err());
        assert!(gamma_continued(&Enclosure::from_i64(-2, p())).is_err());
        let around = Enclosure::from_f64_exact(-1.0, p()).add_error(Mag::pow2(-4));
        assert!(gamma_continued(&around).is_err());
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(-3).is_err());
    }

    #[test]
    fn digamma_values() {
        let g = euler_gamma(p());
        let d4 = digamma_int(4, p()).unwrap();
        assert!(d4.overlaps(&(Enclosure::from_ratio(11, 6, p()) - g)));
        assert!(digamma_int(0, p()).is_err());
    }

    #[test]
    fn binomial_taylor_matches_recurrence() {
        for j in 1..8 {
            let t = BinomialTaylor::new(j, p()).unwrap();
            let exact = Enclosure::from_rational(&t.quadratic_exact(), p());
            assert!(t.quadratic_coeff.overlaps(&exact));
        }
    }

    #[test]
    fn log_gamma_identity_at_quarter() {
        let z = Enclosure::from_f64_exact(0.25, p());
        let a = log_gamma_series(&z).unwrap();
        let b = log_gamma_closed(&z).unwrap();
        assert!(a.overlaps(&b));
        assert!((a.clone() - b).abs_upper() < Mag::pow2(-133));
    }
}

//! The anomaly of the cone over an even sphere `S^{2p}`.
//!
//! The combinatorial term is `-½ log Vol(S^{2p})`; the analytic term comes
//! from the alternating sum of co-exact zeta functions
//! `Σ_q (-1)^{q+1} ζ_cex(s; α_q) = -2p ζ_R(s) - Σ_{k=1}^{p} (2k-1)^{-s}`.
//! The two cancel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    alpha_weighted_top_sum, alternating_coefficient_sum, alternating_moment, binom_exact,
    elem_symmetric_all, multiplicity_shifted, multiplicity_sphere, multiplicity_sphere_factored,
    s_poly_value, s_poly_value_coefficients, ExactRational, SphereSpec,
};
use crate::numerics::{Enclosure, ExtendedReal, Mag, Precision};
use crate::special::{double_factorial, gamma_fn, hurwitz_zeta, log_2pi_half, rational_pow_neg, riemann_zeta_continued};

/// `χ(S^{2p}; E_ρ)` for the trivial rank-one representation.
pub const EULER_CHARACTERISTIC: i64 = 2;
/// Default cap on `p`.
pub const DEFAULT_MAX_P: u32 = 8;

fn check_p(function: &'static str, p: u32) -> Result<()> {
    if p < 1 {
        return Err(Error::domain(function, format!("p = {p} must be at least 1")));
    }
    Ok(())
}

/// `r_q`, the Betti numbers of `S^{2p}`: 1 in degrees 0 and `2p`.
pub fn betti(p: u32, q: u32) -> u32 {
    u32::from(q == 0 || q == 2 * p)
}

/// `2^{p+1} π^p / (2p-1)!!`.
pub fn volume_closed(p: u32, prec: Precision) -> Result<Enclosure> {
    check_p("volume", p)?;
    let inner = prec.with_extra_bits(16);
    let df = Enclosure::from_bigint(&double_factorial(2 * p as i64 - 1)?, inner);
    let num = Enclosure::pi(inner).powi(p as i64)?.mul_2exp(p as i64 + 1);
    Ok(num.div(&df)?.with_prec(prec))
}

/// `Vol(S^{2p}) = 2 π^{p+½} / Γ(p+½)`.
pub fn volume(p: u32, prec: Precision) -> Result<Enclosure> {
    check_p("volume", p)?;
    let inner = prec.with_extra_bits(16);
    let half = Enclosure::from_ratio(2 * p as i64 + 1, 2, inner);
    let pi = Enclosure::pi(inner);
    let v = pi.pow(&half)?.mul_2exp(1).div(&gamma_fn(&half)?)?;
    Ok(v.with_prec(prec))
}

/// `A_comb(S^{2p}) = -½ log Vol(S^{2p})`: the harmonic basis `{1, dvol}`
/// carries the norm `‖1‖ = √Vol`, and all torsion subgroups are trivial.
pub fn comb_anomaly_sphere(p: u32, prec: Precision) -> Result<Enclosure> {
    let inner = prec.with_extra_bits(16);
    let log_norm = volume(p, inner)?.ln()?.mul_2exp(-1);
    Ok((-log_norm).with_prec(prec))
}

fn log_odd_sum(p: u32, prec: Precision) -> Enclosure {
    (1..=p as i64)
        .map(|k| Enclosure::from_i64(2 * k - 1, prec).ln().expect("positive"))
        .fold(Enclosure::zero(prec), |a, b| a + b)
}

/// `A_analy(S^{2p}) = -log (2p-1)!! + ½ log 2 - p ζ'_R(0) + ½ Σ_{k≤p} log(2k-1)`.
pub fn analy_anomaly_sphere(p: u32, prec: Precision) -> Result<Enclosure> {
    check_p("analy_anomaly_sphere", p)?;
    let inner = prec.with_extra_bits(16);
    let df = Enclosure::from_bigint(&double_factorial(2 * p as i64 - 1)?, inner);
    let zeta_prime_0 = -log_2pi_half(inner);
    let v = -df.ln()? + Enclosure::ln2(inner).mul_2exp(-1) - zeta_prime_0.mul_i64(p as i64)
        + log_odd_sum(p, inner).mul_2exp(-1);
    Ok(v.with_prec(prec))
}

/// `½ log(2^{p+1} π^p / (2p-1)!!)`.
pub fn analy_anomaly_sphere_closed(p: u32, prec: Precision) -> Result<Enclosure> {
    let inner = prec.with_extra_bits(16);
    Ok(volume_closed(p, inner)?.ln()?.mul_2exp(-1).with_prec(prec))
}

fn odd_power_sum(p: u32, s: &Enclosure) -> Enclosure {
    (1..=p as i64)
        .map(|k| rational_pow_neg(&BigRational::from_integer(BigInt::from(2 * k - 1)), s))
        .fold(Enclosure::zero(s.prec()), |a, b| a + b)
}

/// `Σ_q (-1)^{q+1} ζ_cex(s; α_q) = -2p ζ_R(s) - Σ_{k=1}^{p} (2k-1)^{-s}`.
pub fn reduced_zeta_sphere(p: u32, s: &Enclosure) -> Result<Enclosure> {
    check_p("reduced_zeta_sphere", p)?;
    let z = riemann_zeta_continued(s)?;
    Ok(-(z.mul_i64(2 * p as i64)) - odd_power_sum(p, s))
}

/// The published form `2p ζ_R(s) - Σ_{k=1}^{p} (2k-1)^{-s}`.
pub fn reduced_zeta_sphere_published(p: u32, s: &Enclosure) -> Result<Enclosure> {
    check_p("reduced_zeta_sphere", p)?;
    let z = riemann_zeta_continued(s)?;
    Ok(z.mul_i64(2 * p as i64) - odd_power_sum(p, s))
}

/// How the tail `n > N` of a brute-force spectral sum is bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    /// `m_{q,n} <= A (n+q)^{2p-1}` and an integral bound.
    PowerBound,
    /// `m_{q,n}` as a polynomial in `x = n+q`, summed with Hurwitz zetas.
    Hurwitz,
}

/// Coefficients `a_l` with `m_{q,n} = Σ_l a_l (n+q)^l`.
pub fn multiplicity_polynomial(spec: &SphereSpec) -> Vec<ExactRational> {
    let (p, q) = (spec.p as i64, spec.q as i64);
    let e = elem_symmetric_all(&spec.sequence);
    let d = e.len() - 1;
    let k = binom_exact(2 * p - 1, q)
        / BigRational::from_integer((1..2 * p).fold(BigInt::one(), |a, i| a * BigInt::from(i)));
    let e_at = |i: i64| -> BigInt {
        if i < 0 || i as usize > d {
            BigInt::zero()
        } else {
            e[i as usize].clone()
        }
    };
    (0..=d as i64 + 1)
        .map(|l| {
            let c = BigInt::from(2) * e_at(d as i64 + 1 - l) + BigInt::from(2 * p - 1 - 2 * q) * e_at(d as i64 - l);
            &k * BigRational::from_integer(c)
        })
        .collect()
}

/// `ζ_cex(s; α_q) = Σ_{n≥1} m_{q,n} (n+q)^{-s}`: the first `n_terms` terms
/// summed directly, the rest bounded per `tail`.
pub fn brute_zeta_cex_sphere(
    p: u32,
    q: u32,
    s: &Enclosure,
    n_terms: u64,
    tail: TailMode,
) -> Result<Enclosure> {
    let spec = SphereSpec::new(p, q)?;
    let min = ExtendedReal::from_i64(2 * p as i64 + 1);
    if s.lo().cmp_value(&min).is_le() {
        return Err(Error::domain(
            "brute_zeta_cex_sphere",
            format!("s = {s} must exceed 2p+1 = {}", 2 * p + 1),
        ));
    }
    let prec = s.prec();
    let inner = prec.with_extra_bits(16);
    let s = s.with_prec(inner);
    let mut acc = Enclosure::zero(inner);
    for n in 1..=n_terms as i64 {
        let m = multiplicity_sphere(&spec, n)?;
        let x = BigRational::from_integer(BigInt::from(n + q as i64));
        acc = acc + Enclosure::from_rational(&m, inner) * rational_pow_neg(&x, &s);
    }
    let start = n_terms as i64 + 1 + q as i64;
    let t = match tail {
        TailMode::Hurwitz => {
            let a = BigRational::from_integer(BigInt::from(start));
            let mut t = Enclosure::zero(inner);
            for (l, c) in multiplicity_polynomial(&spec).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let z = hurwitz_zeta(&(&s - &Enclosure::from_i64(l as i64, inner)), &a)?;
                t = t + Enclosure::from_rational(c, inner) * z;
            }
            t
        }
        TailMode::PowerBound => {
            let (pi, qi, nn) = (p as i64, q as i64, n_terms as i64);
            // (2n-1+2p) Π (n+j) <= 2 (n+2p)^{2p-1} <= 2 κ^{2p-1} (n+q)^{2p-1}
            let kappa = BigRational::new(BigInt::from(nn + 1 + 2 * pi), BigInt::from(nn + 1 + qi));
            let a = binom_exact(2 * pi - 1, qi)
                / BigRational::from_integer((1..2 * pi).fold(BigInt::one(), |a, i| a * BigInt::from(i)))
                * BigRational::from_integer(BigInt::from(2))
                * num_traits::pow(kappa, (2 * pi - 1) as usize);
            let expo = &s - &Enclosure::from_i64(2 * pi, inner);
            let base = BigRational::from_integer(BigInt::from(nn + qi));
            let bound = if nn + qi == 0 {
                return Err(Error::domain("brute_zeta_cex_sphere", "power-bound tail needs N + q >= 1"));
            } else {
                Enclosure::from_rational(&a, inner) * rational_pow_neg(&base, &expo)
            };
            let bound = bound.div(&expo)?;
            Enclosure::zero(inner).add_error(bound.abs_upper())
        }
    };
    Ok((acc + t).with_prec(prec))
}

/// `Σ_q (-1)^{q+1} ζ_cex(s; α_q)` from brute-force sums.
pub fn brute_alternating_sum(p: u32, s: &Enclosure, n_terms: u64, tail: TailMode) -> Result<Vec<Enclosure>> {
    (0..2 * p)
        .map(|q| brute_zeta_cex_sphere(p, q, s, n_terms, tail))
        .collect()
}

/// The reduction compared against brute-force spectral sums at one `s`.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionCheck {
    pub s: Enclosure,
    pub n_terms: u64,
    pub tail: TailMode,
    pub per_degree: Vec<Enclosure>,
    pub alternating_brute: Enclosure,
    pub reduced: Enclosure,
    pub reduced_published: Enclosure,
    pub agrees: bool,
    pub agrees_published: bool,
    pub residual: Enclosure,
    pub paper_ref: &'static str,
}

pub fn reduction_check(p: u32, s: &Enclosure, n_terms: u64, tail: TailMode) -> Result<ReductionCheck> {
    let per_degree = brute_alternating_sum(p, s, n_terms, tail)?;
    let alternating = per_degree.iter().enumerate().fold(Enclosure::zero(s.prec()), |acc, (q, z)| {
        if q % 2 == 0 {
            acc - z
        } else {
            acc + z
        }
    });
    let reduced = reduced_zeta_sphere(p, s)?;
    let published = reduced_zeta_sphere_published(p, s)?;
    Ok(ReductionCheck {
        s: s.clone(),
        n_terms,
        tail,
        agrees: alternating.overlaps(&reduced),
        agrees_published: alternating.overlaps(&published),
        residual: Enclosure::exact(ExtendedReal::from_mag((&alternating - &reduced).abs_upper()), s.prec()),
        per_degree,
        alternating_brute: alternating,
        reduced,
        reduced_published: published,
        paper_ref: "§4.3, \"this sum is equal to 2p\"",
    })
}

/// Exact spectral identities for one `p`.
#[derive(Clone, Debug, Serialize)]
pub struct SphereIdentities {
    /// `μ_{q,n} = n + p - ½` and `μ_{q,n} ± α_q` is `n+q` or `n+2p-1-q`,
    /// for `q <= p-1`, `n <= 50`.
    pub mu_identity: bool,
    /// `Σ_q (-1)^q C(2p-1, q) q^k = 0` for `k <= 2p-2`.
    pub moments_vanish: bool,
    /// All unweighted and α-weighted coefficient sums vanish except the
    /// α-weighted leading one.
    pub coefficient_sums_vanish: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha_weighted_top_sum: ExactRational,
    pub top_sum_equals_p: bool,
    pub top_sum_equals_2p: bool,
    /// The three multiplicity formulas and the two `S` evaluations agree.
    pub multiplicity_forms_agree: bool,
    /// `m_{q,n}` is a positive integer for `n <= 50`.
    pub multiplicities_positive_integers: bool,
    pub paper_ref: &'static str,
}

pub fn sphere_identities(p: u32) -> Result<SphereIdentities> {
    check_p("sphere_identities", p)?;
    let mut mu_identity = true;
    let mut forms = true;
    let mut positive = true;
    for q in 0..2 * p {
        let spec = SphereSpec::new(p, q)?;
        let poly = multiplicity_polynomial(&spec);
        for n in 1..=50i64 {
            let m = multiplicity_sphere(&spec, n)?;
            positive &= crate::exact::is_positive_integer(&m);
            forms &= m == multiplicity_sphere_factored(&spec, n)?;
            let x = BigRational::from_integer(BigInt::from(n + q as i64));
            forms &= m == multiplicity_shifted(&spec, n + q as i64)?;
            let pv = poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c);
            forms &= m == pv;
            forms &= s_poly_value(&spec, &x) == s_poly_value_coefficients(&spec, &x);
            if spec.is_spectral() {
                let mu = spec.mu(n as u64);
                mu_identity &= mu.clone() * &mu == spec.mu_squared(n as u64);
                let n_r = BigRational::from_integer(BigInt::from(n));
                let p_r = BigRational::from_integer(BigInt::from(p));
                mu_identity &= mu == n_r.clone() + &p_r - BigRational::new(BigInt::one(), BigInt::from(2));
                mu_identity &= &mu + &spec.alpha_q == x;
                mu_identity &= &mu - &spec.alpha_q
                    == BigRational::from_integer(BigInt::from(n + 2 * p as i64 - 1 - q as i64));
            }
        }
    }
    let moments_vanish = (0..=2 * p - 2).all(|k| alternating_moment(p, k).map(|v| v.is_zero()).unwrap_or(false));
    let mut coefficient_sums_vanish = true;
    for l in 0..=2 * p - 2 {
        coefficient_sums_vanish &= alternating_coefficient_sum(p, l, false)?.is_zero();
        if l > 0 {
            coefficient_sums_vanish &= alternating_coefficient_sum(p, l, true)?.is_zero();
        }
    }
    let top = alpha_weighted_top_sum(p)?;
    let pr = BigRational::from_integer(BigInt::from(p));
    Ok(SphereIdentities {
        mu_identity,
        moments_vanish,
        coefficient_sums_vanish,
        top_sum_equals_p: top == pr,
        top_sum_equals_2p: top == &pr * BigRational::from_integer(BigInt::from(2)),
        alpha_weighted_top_sum: top,
        multiplicity_forms_agree: forms,
        multiplicities_positive_integers: positive,
        paper_ref: "§4.3, \"If we complete the squares\"",
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereAnomalyReport {
    pub p: u32,
    pub euler_characteristic: i64,
    pub betti: Vec<u32>,
    pub comb_term: Enclosure,
    pub analy_term: Enclosure,
    pub analy_closed: Enclosure,
    pub analy_forms_agree: bool,
    pub total: Enclosure,
    pub volume: Enclosure,
    pub volume_closed: Enclosure,
    pub volume_agrees: bool,
    pub cancels: bool,
    pub paper_ref: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<SphereIdentities>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionCheck>,
}

/// The radius a cancellation must reach: `10^{-D/2}`.
pub fn cancellation_tolerance(prec: Precision) -> Mag {
    Mag::pow2(-((prec.digits() as f64 / 2.0 * std::f64::consts::LOG2_10).floor() as i64))
}

/// `A_comb + A_analy` for `S^{2p}`.
pub fn cancellation_check(p: u32, prec: Precision) -> Result<SphereAnomalyReport> {
    check_p("cancellation_check", p)?;
    let comb = comb_anomaly_sphere(p, prec)?;
    let analy = analy_anomaly_sphere(p, prec)?;
    let closed = analy_anomaly_sphere_closed(p, prec)?;
    let vol = volume(p, prec)?;
    let vol_closed = volume_closed(p, prec)?;
    let total = &comb + &analy;
    debug_assert_eq!(
        (0..=2 * p).map(|q| if q % 2 == 0 { betti(p, q) as i64 } else { -(betti(p, q) as i64) }).sum::<i64>(),
        EULER_CHARACTERISTIC
    );
    Ok(SphereAnomalyReport {
        p,
        euler_characteristic: EULER_CHARACTERISTIC,
        betti: (0..=2 * p).map(|q| betti(p, q)).collect(),
        analy_forms_agree: analy.overlaps(&closed),
        volume_agrees: vol.overlaps(&vol_closed),
        cancels: total.contains_zero() && total.rad() <= cancellation_tolerance(prec),
        comb_term: comb,
        analy_term: analy,
        analy_closed: closed,
        total,
        volume: vol,
        volume_closed: vol_closed,
        paper_ref: "§4.5 Proposition, \"the classical Cheeger-Müller theorem\"",
        identities: None,
        reduction: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p60() -> Precision {
        Precision::from_digits(60)
    }

    #[test]
    fn p1_values() {
        let c = comb_anomaly_sphere(1, p60()).unwrap();
        assert!((c.mid_f64() + 0.5 * (4.0 * std::f64::consts::PI).ln()).abs() < 1e-14);
        let a = analy_anomaly_sphere(1, p60()).unwrap();
        assert!(a.overlaps(&c.neg()));
    }

    #[test]
    fn multiplicity_p1() {
        let spec = SphereSpec::new(1, 0).unwrap();
        for n in 1..10 {
            assert_eq!(multiplicity_sphere(&spec, n).unwrap(), BigRational::from_integer(BigInt::from(2 * n + 1)));
        }
    }

    #[test]
    fn polynomial_matches_multiplicity() {
        for p in 1..=4 {
            let ids = sphere_identities(p).unwrap();
            assert!(ids.multiplicity_forms_agree, "p = {p}");
            assert!(ids.top_sum_equals_p && !ids.top_sum_equals_2p);
        }
    }

    #[test]
    fn brute_p1_closed_form() {
        let prec = Precision::from_digits(40);
        let s = Enclosure::from_i64(6, prec);
        let b = brute_zeta_cex_sphere(1, 0, &s, 30, TailMode::Hurwitz).unwrap();
        let z5 = riemann_zeta_continued(&Enclosure::from_i64(5, prec)).unwrap();
        let z6 = riemann_zeta_continued(&s).unwrap();
        assert!(b.overlaps(&(z5.mul_2exp(1) + z6)));
        assert!(b.rad() < Mag::pow2(-100));
    }

    #[test]
    fn power_tail_encloses() {
        let prec = Precision::from_digits(30);
        let s = Enclosure::from_i64(8, prec);
        let h = brute_zeta_cex_sphere(2, 1, &s, 20, TailMode::Hurwitz).unwrap();
        let b = brute_zeta_cex_sphere(2, 1, &s, 200, TailMode::PowerBound).unwrap();
        assert!(b.contains(&h) || b.overlaps(&h));
        assert!(h.is_positive());
    }
}

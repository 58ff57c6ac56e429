//! The anomaly of the cone over the flat torus `T = S¹ × S¹`.
//!
//! Co-exact 1-forms have eigenvalues `n² + m²` (`n ≥ 1`, `m ≥ 0`) with
//! multiplicity 4 and `α₀ = -½`, so `μ = √(n² + m² + ¼)`. The analytic term
//! is `2(Z₁(0) + Z₂(0))`, where `Zᵢ(0)` is the derivative at 0 of the
//! difference of the two half-shifted zeta functions.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bounds::{constants_c1_c5, series_s2, series_s3, BoundCertificate, Constants};
use crate::error::Result;
use crate::lattice::{bessel_envelope, pow_neg_enc, pow_neg_upper, radial_tail, tail_integral, ZetaNHContext};
use crate::numerics::{Enclosure, ExtendedReal, Mag, Precision};
use crate::special::euler_gamma;

/// `r_q` for the torus.
pub const BETTI: [u32; 3] = [1, 2, 1];
/// `χ(T; E_ρ)`.
pub const EULER_CHARACTERISTIC: i64 = 0;

/// `A_comb(T) = -log ‖1‖ = -½ log Vol(T) = -log 2π`; torsion is trivial.
pub fn comb_anomaly_torus(prec: Precision) -> Enclosure {
    let inner = prec.with_extra_bits(16);
    let vol = Enclosure::pi(inner).sqr().mul_2exp(2);
    let norm = vol.sqrt().expect("positive");
    (-norm.ln().expect("positive")).with_prec(prec)
}

/// `Z₂(0) = -Rz_{s=½} ζ(s; n²+¼) - Σ_{j≥1} 2^{-2j}/(2j+1) ζ((2j+1)/2; n²+¼)`.
pub fn z2_at_zero(ctx: &ZetaNHContext) -> Result<Enclosure> {
    let rz = ctx.zeta_nh_finite_part()?.rz;
    Ok(-rz - series_s2(ctx)?)
}

/// `Z₁(0) = -Rz_{s=½} ζ(s; n²+m²+¼) - 2 Σ_{j≥1} 2^{-2j-1}/(2j+1) ζ((2j+1)/2; n²+m²+¼)`.
pub fn z1_at_zero(ctx: &ZetaNHContext) -> Result<Enclosure> {
    let rz = ctx.zeta_double_finite_part()?.trusted.rz;
    Ok(-rz - series_s3(ctx)?)
}

/// `A_analy(T) = 2(Z₁(0) + Z₂(0))`.
pub fn analy_anomaly_torus(ctx: &ZetaNHContext) -> Result<Enclosure> {
    Ok((z1_at_zero(ctx)? + z2_at_zero(ctx)?).mul_2exp(1))
}

/// The published bounds `A <= A_analy(T) <= B`.
#[derive(Clone, Debug, Serialize)]
pub struct PaperBounds {
    pub a: Enclosure,
    pub b: Enclosure,
    pub a_minus_log_2pi: Enclosure,
    pub b_minus_log_2pi: Enclosure,
    pub paper_ref: &'static str,
}

pub fn paper_bounds(prec: Precision) -> PaperBounds {
    let p = prec.with_extra_bits(16);
    let isq = |n: i64| Enclosure::from_i64(n, p).sqrt().expect("positive").recip().expect("nonzero");
    let a15 = isq(15) + isq(17);
    let b53 = isq(5) - isq(3);
    let g = euler_gamma(p);
    let sinh = Enclosure::pi(p).mul_2exp(-1).sinh();
    let e = Enclosure::one(p).exp();
    let e2pi = Enclosure::pi(p).mul_2exp(1).exp();
    let q = e2pi.div(&(&e2pi - &Enclosure::one(p))).expect("e^{2π} > 1");
    let r8 = Enclosure::from_i64(8, p).sqrt().expect("positive");
    let at = r8.recip().expect("nonzero").atanh().expect("inside (-1, 1)");
    let last = (&r8 * &at - Enclosure::one(p)).mul_i64(9).div(&r8).expect("nonzero");
    let a = Enclosure::from_i64(4, p) - a15.mul_i64(8) - b53.mul_i64(2) + sinh.mul_2exp(1).ln().expect("positive") - &g
        + ((Enclosure::one(p) - q) * e).mul_2exp(1)
        - last;
    let b = -(a15.mul_i64(4)) - b53.mul_i64(3) + sinh.mul_i64(18).ln().expect("positive") - &g;
    let l2pi = Enclosure::pi(p).mul_2exp(1).ln().expect("positive");
    PaperBounds {
        a_minus_log_2pi: (&a - &l2pi).with_prec(prec),
        b_minus_log_2pi: (&b - &l2pi).with_prec(prec),
        a: a.with_prec(prec),
        b: b.with_prec(prec),
        paper_ref: "§5.4.3, \"Collecting the information from Subsections\"",
    }
}

/// `½ ln(8 sinh(π/2))`, the constant part of `-Rz ζ(s; n²+m²+¼)`.
fn half_log_8_sinh(prec: Precision) -> Enclosure {
    let sinh = Enclosure::pi(prec).mul_2exp(-1).sinh();
    sinh.mul_i64(8).ln().expect("positive").mul_2exp(-1)
}

/// The sandwich certificates for `Z₂(0)`, `Z₁(0)` and `A_analy(T)`, each in
/// the as-stated and factor-corrected readings.
pub fn torus_sandwiches(
    prec: Precision,
    z1: &Enclosure,
    z2: &Enclosure,
    analy: &Enclosure,
) -> (BoundCertificate, BoundCertificate, BoundCertificate) {
    let Constants { c1, c2, c3, c4, c5 } = constants_c1_c5(prec);
    let g = euler_gamma(prec);
    let env = bessel_envelope(prec);
    let l8 = half_log_8_sinh(prec);
    let g2 = g.mul_2exp(-1);

    let z2_stated = (-(&c2 + &c4) - &g, -(&c1 + &c3) - &g);
    let z2_fixed = (-(&g) - (&c2 + &c4).mul_2exp(1), -(&g) - (&c1 + &c3).mul_2exp(1));
    let z2_cert = BoundCertificate::sandwich(
        "z2_sandwich",
        "§5.4.2, \"a estimate for Z₂(0) is\"",
        z2.clone(),
        z2_stated.clone(),
        Some(z2_fixed.clone()),
        "Z2 = -gamma - 2 S1 - S2; the corrected reading uses S1 in [c1, c2], S2 in [2 c3, 2 c4]",
    );

    let z1_stated = (-(env.mul_2exp(1)) + &l8 - &g2 - &c2 - &c5, &l8 - &g2 - &c1);
    let z1_fixed = (-(env.mul_2exp(1)) + &l8 + &g2 + &c1 - c5.mul_2exp(1), &l8 + &g2 + &c2);
    let z1_cert = BoundCertificate::sandwich(
        "z1_sandwich",
        "§5.4.1, final display",
        z1.clone(),
        z1_stated,
        Some(z1_fixed.clone()),
        "Z1 = -2 sum K0 + (1/2) ln(8 sinh(pi/2)) + gamma/2 + S1 - S3; the stated bounds \
         carry -gamma/2 - S1 and S3 <= c5",
    );

    let pb = paper_bounds(prec);
    let analy_fixed = (
        (&z1_fixed.0 + &z2_fixed.0).mul_2exp(1),
        (&z1_fixed.1 + &z2_fixed.1).mul_2exp(1),
    );
    let analy_cert = BoundCertificate::sandwich(
        "analy_in_a_b",
        pb.paper_ref,
        analy.clone(),
        (pb.a.clone(), pb.b.clone()),
        Some(analy_fixed),
        "the corrected reading is twice the sum of the corrected Z1 and Z2 sandwiches",
    );
    (z1_cert, z2_cert, analy_cert)
}

/// Central-difference derivative at 0 with two Richardson levels.
#[derive(Clone, Debug, Serialize)]
pub struct DerivativeOracle {
    pub value: Enclosure,
    pub step: Enclosure,
    pub formula: Enclosure,
    pub agrees: bool,
    /// Heuristic: the last Richardson correction, folded into the radius.
    pub estimated_error: Enclosure,
}

fn richardson_derivative<F>(prec: Precision, k: i64, f: F, formula: &Enclosure) -> Result<DerivativeOracle>
where
    F: Fn(&Enclosure) -> Result<Enclosure>,
{
    let h = Enclosure::exact(ExtendedReal::one().mul_2exp(-k), prec);
    let central = |h: &Enclosure| -> Result<Enclosure> {
        let up = f(h)?;
        let down = f(&h.neg())?;
        (up - down).div(&h.mul_2exp(1))
    };
    let f1 = central(&h)?;
    let f2 = central(&h.mul_2exp(-1))?;
    let f3 = central(&h.mul_2exp(-2))?;
    let r1a = (f2.mul_i64(4) - &f1).div_i64(3);
    let r1b = (f3.mul_i64(4) - &f2).div_i64(3);
    let r2 = (r1b.mul_i64(16) - &r1a).div_i64(15);
    let est = (&r2 - &r1b).abs_upper();
    let value = r2.add_error(est);
    let combined = value.rad().add(formula.rad()).mul(Mag::from_u64(10));
    let agrees = (&value - formula).abs_upper() <= combined;
    Ok(DerivativeOracle {
        estimated_error: Enclosure::exact(ExtendedReal::from_mag(est), prec),
        step: h,
        formula: formula.clone(),
        agrees,
        value,
    })
}

/// `Z₂(0)` as the derivative at 0 of `ζ_{+½} - ζ_{-½}` for `n² + ¼`.
pub fn z2_derivative_oracle(ctx: &ZetaNHContext, formula: &Enclosure) -> Result<DerivativeOracle> {
    richardson_derivative(ctx.prec, 10, |s| Ok(ctx.shifted_difference_nh(s)?.value), formula)
}

/// `Z₁(0)` as the derivative at 0 of `ζ_{+½} - ζ_{-½}` for `n² + m² + ¼`.
pub fn z1_derivative_oracle(ctx: &ZetaNHContext, formula: &Enclosure) -> Result<DerivativeOracle> {
    richardson_derivative(ctx.prec, 10, |s| Ok(ctx.shifted_difference_double(s)?.value), formula)
}

/// `Σ_{n≥1, m≥0} 4 (√(n²+m²+¼) + sign·½)^{-s}` over the raw co-exact
/// spectrum, for `s > 2`.
pub fn raw_coexact_zeta(sign: i32, s: &Enclosure, n_max: u64) -> Result<Enclosure> {
    let prec = s.prec();
    let inner = prec.with_extra_bits(16);
    let s = s.with_prec(inner);
    let shift = Enclosure::from_ratio(sign.signum() as i64, 2, inner);
    let mut acc = Enclosure::zero(inner);
    for n in 1..=n_max {
        for m in 0..=n_max {
            let lam = BigRational::new(BigInt::from(4 * (n * n + m * m) + 1), BigInt::from(4));
            let mu = Enclosure::from_rational(&lam, inner).sqrt()?;
            acc = acc + pow_neg_enc(&(mu + &shift), &s)?;
        }
    }
    // m = 0 row: terms <= (n - ½)^{-σ}; interior: √(r²+¼) - ½ >= 0.64 r
    let row = tail_integral(&BigRational::new(BigInt::from(2 * n_max as i64 - 1), BigInt::from(2)), &s, 1)?;
    let interior = radial_tail(n_max, &s, 1)?.mul(pow_neg_upper(&BigRational::new(16.into(), 25.into()), &s));
    Ok(acc.mul_i64(4).add_error(row.add(interior).mul_2exp(2)).with_prec(prec))
}

/// The raw spectrum against `4 ζ_{±½}(s; n²+m²+¼) + 4 ζ_{±½}(s; n²+¼)`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub s: Enclosure,
    pub sign: i32,
    pub raw: Enclosure,
    pub direct: Enclosure,
    pub expansion: Enclosure,
    pub agrees_direct: bool,
    pub agrees_expansion: bool,
}

pub fn decomposition_check(ctx: &ZetaNHContext, sign: i32, s: &Enclosure, n_max: u64) -> Result<DecompositionCheck> {
    let raw = raw_coexact_zeta(sign, s, n_max)?;
    let c = ctx.clone().with_cutoffs(ctx.j_cutoff, n_max, ctx.bessel_cutoff)?;
    let direct = (c.zeta_shifted_double(sign, s)?.value + c.zeta_shifted_nh(sign, s)?.value).mul_i64(4);
    let expansion = (ctx.zeta_shifted_double_expansion(sign, s)?.value
        + ctx.zeta_shifted_nh_expansion(sign, s)?.value)
        .mul_i64(4);
    Ok(DecompositionCheck {
        s: s.clone(),
        sign,
        agrees_direct: raw.overlaps(&direct),
        agrees_expansion: raw.overlaps(&expansion),
        raw,
        direct,
        expansion,
    })
}

/// The total recomputed with the published constant term of
/// `-½ ζ(s; n²+¼)` at `s = ½`.
#[derive(Clone, Debug, Serialize)]
pub struct PaperFormulaDiagnostic {
    pub rz_double: Enclosure,
    pub z1: Enclosure,
    pub analy_term: Enclosure,
    pub total: Enclosure,
    pub negative: bool,
    pub in_open_interval: bool,
    pub paper_ref: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusVerdicts {
    /// `total < 0` strictly, the non-triviality claim.
    pub negative: bool,
    /// `total` excludes 0.
    pub nontrivial: bool,
    /// `-4/5 < total < -1/4`.
    pub in_open_interval: bool,
    /// `A - ln 2π <= total <= B - ln 2π`.
    pub in_paper_bounds: bool,
    pub radius_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusOracles {
    pub z1: DerivativeOracle,
    pub z2: DerivativeOracle,
    pub decomposition: Vec<DecompositionCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusAnomalyReport {
    pub betti: [u32; 3],
    pub euler_characteristic: i64,
    pub comb_term: Enclosure,
    pub rz_nh: Enclosure,
    pub rz_double: Enclosure,
    pub residue_double: Enclosure,
    pub bessel_sum: Enclosure,
    pub s2: Enclosure,
    pub s3: Enclosure,
    pub z1: Enclosure,
    pub z2: Enclosure,
    pub analy_term: Enclosure,
    pub total: Enclosure,
    pub paper_bounds: PaperBounds,
    pub z1_sandwich: BoundCertificate,
    pub z2_sandwich: BoundCertificate,
    pub analy_sandwich: BoundCertificate,
    pub verdicts: TorusVerdicts,
    pub paper_formula: PaperFormulaDiagnostic,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracles: Option<TorusOracles>,
    pub paper_ref: &'static str,
}

impl TorusAnomalyReport {
    /// The headline verdict: a strictly negative total.
    pub fn passes(&self) -> bool {
        self.verdicts.negative
    }
}

/// Radius required of the total.
pub const TOTAL_RADIUS: f64 = 1e-6;

/// The full torus computation; `oracles` adds the finite-difference and
/// raw-spectrum cross-checks.
pub fn total_anomaly_torus(ctx: &ZetaNHContext, oracles: bool) -> Result<TorusAnomalyReport> {
    // (1/4) χ log 2 vanishes, and the double factorials reduce to (1)!! = 1
    assert_eq!(EULER_CHARACTERISTIC, BETTI[0] as i64 - BETTI[1] as i64 + BETTI[2] as i64);
    let prec = ctx.prec;
    let comb = comb_anomaly_torus(prec);
    let nh = ctx.zeta_nh_finite_part()?;
    let dbl = ctx.zeta_double_finite_part()?;
    let s2 = series_s2(ctx)?;
    let s3 = series_s3(ctx)?;
    let z2 = -(&nh.rz) - &s2;
    let z1 = -(&dbl.trusted.rz) - &s3;
    let analy = (&z1 + &z2).mul_2exp(1);
    let total = &comb + &analy;

    let pb = paper_bounds(prec);
    let (z1_cert, z2_cert, analy_cert) = torus_sandwiches(prec, &z1, &z2, &analy);

    let lo = Enclosure::from_ratio(-4, 5, prec);
    let hi = Enclosure::from_ratio(-1, 4, prec);
    let verdicts = TorusVerdicts {
        negative: total.is_negative(),
        nontrivial: !total.contains_zero(),
        in_open_interval: total.gt(&lo) && total.lt(&hi),
        in_paper_bounds: crate::bounds::sandwiched(&total, &pb.a_minus_log_2pi, &pb.b_minus_log_2pi),
        radius_ok: total.rad() <= Mag::from_f64_up(TOTAL_RADIUS),
    };

    let z1_alt = -(&dbl.paper_formula_rz) - &s3;
    let analy_alt = (&z1_alt + &z2).mul_2exp(1);
    let total_alt = &comb + &analy_alt;
    let paper_formula = PaperFormulaDiagnostic {
        rz_double: dbl.paper_formula_rz.clone(),
        negative: total_alt.is_negative(),
        in_open_interval: total_alt.gt(&lo) && total_alt.lt(&hi),
        z1: z1_alt,
        analy_term: analy_alt,
        total: total_alt,
        paper_ref: "§5.4.1, Rz formula for the double series",
    };

    let oracles = if oracles {
        let mut decomposition = Vec::new();
        for s in [3, 4] {
            for sign in [1, -1] {
                decomposition.push(decomposition_check(ctx, sign, &Enclosure::from_i64(s, prec), 100)?);
            }
        }
        Some(TorusOracles {
            z1: z1_derivative_oracle(ctx, &z1)?,
            z2: z2_derivative_oracle(ctx, &z2)?,
            decomposition,
        })
    } else {
        None
    };

    Ok(TorusAnomalyReport {
        betti: BETTI,
        euler_characteristic: EULER_CHARACTERISTIC,
        comb_term: comb,
        rz_nh: nh.rz,
        rz_double: dbl.trusted.rz,
        residue_double: dbl.trusted.ru,
        bessel_sum: dbl.bessel_sum,
        s2,
        s3,
        z1,
        z2,
        analy_term: analy,
        total,
        paper_bounds: pb,
        z1_sandwich: z1_cert,
        z2_sandwich: z2_cert,
        analy_sandwich: analy_cert,
        verdicts,
        paper_formula,
        oracles,
        paper_ref: "§5.5, \"non trivial contribution from the singularity\"",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comb_value() {
        let c = comb_anomaly_torus(Precision::from_digits(40));
        assert!((c.mid_f64() + 1.837_877_066_409_345_3).abs() < 1e-14);
        assert!(c.is_negative());
    }

    #[test]
    fn published_bounds() {
        let pb = paper_bounds(Precision::from_digits(40));
        assert!((pb.a.mid_f64() - 1.050_120_750_522_772_5).abs() < 1e-14);
        assert!((pb.b.mid_f64() - 1.534_101_758_592_672_5).abs() < 1e-14);
    }
}

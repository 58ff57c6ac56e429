//! Explicit constants `c₁..c₅` and checked sandwich certificates.
//!
//! A sandwich holds when the computed interval lies inside
//! `[lower.lo, upper.hi]`. Where a proof and its statement differ by a power
//! of two (or an index shift), both readings are recorded.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::ZetaNHContext;
use crate::numerics::{sum_series, Enclosure, Mag, Precision, SeriesSpec};
use crate::special::{euler_gamma, gen_binomial_exact, log_gamma_closed, log_gamma_series, riemann_zeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsAsStated,
    HoldsFactorCorrected,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadingKind {
    AsStated,
    FactorCorrected,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reading {
    pub reading: ReadingKind,
    pub lower: Enclosure,
    pub upper: Enclosure,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificate {
    pub claim: String,
    pub paper_ref: String,
    pub lower: Enclosure,
    pub upper: Enclosure,
    pub computed: Enclosure,
    pub readings: Vec<Reading>,
    pub verdict: Verdict,
    pub notes: String,
}

/// Interval containment `x ⊆ [lower.lo, upper.hi]`.
pub fn sandwiched(x: &Enclosure, lower: &Enclosure, upper: &Enclosure) -> bool {
    x.lo().cmp_value(&lower.lo()).is_ge() && x.hi().cmp_value(&upper.hi()).is_le()
}

impl BoundCertificate {
    /// A sandwich claim with its as-stated bounds and, optionally, a
    /// corrected pair.
    pub fn sandwich(
        claim: &str,
        paper_ref: &str,
        computed: Enclosure,
        stated: (Enclosure, Enclosure),
        corrected: Option<(Enclosure, Enclosure)>,
        notes: &str,
    ) -> BoundCertificate {
        let mut readings = vec![Reading {
            reading: ReadingKind::AsStated,
            holds: sandwiched(&computed, &stated.0, &stated.1),
            lower: stated.0.clone(),
            upper: stated.1.clone(),
        }];
        if let Some((lo, hi)) = corrected {
            readings.push(Reading {
                reading: ReadingKind::FactorCorrected,
                holds: sandwiched(&computed, &lo, &hi),
                lower: lo,
                upper: hi,
            });
        }
        let verdict = verdict_of(&readings);
        BoundCertificate {
            claim: claim.into(),
            paper_ref: paper_ref.into(),
            lower: stated.0,
            upper: stated.1,
            computed,
            readings,
            verdict,
            notes: notes.into(),
        }
    }

    /// An identity `computed = expected`, holding when the two enclosures
    /// overlap and the residual radius is below `tol`.
    pub fn identity(
        claim: &str,
        paper_ref: &str,
        computed: Enclosure,
        stated: Enclosure,
        corrected: Option<Enclosure>,
        tol: Mag,
        notes: &str,
    ) -> BoundCertificate {
        let check = |e: &Enclosure| computed.overlaps(e) && (&computed - e).abs_upper() <= tol;
        let mut readings = vec![Reading {
            reading: ReadingKind::AsStated,
            holds: check(&stated),
            lower: stated.clone(),
            upper: stated.clone(),
        }];
        if let Some(c) = corrected {
            readings.push(Reading {
                reading: ReadingKind::FactorCorrected,
                holds: check(&c),
                lower: c.clone(),
                upper: c,
            });
        }
        let verdict = verdict_of(&readings);
        BoundCertificate {
            claim: claim.into(),
            paper_ref: paper_ref.into(),
            lower: stated.clone(),
            upper: stated,
            computed,
            readings,
            verdict,
            notes: notes.into(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Fails
    }

    pub fn reading(&self, kind: ReadingKind) -> Option<&Reading> {
        self.readings.iter().find(|r| r.reading == kind)
    }
}

fn verdict_of(readings: &[Reading]) -> Verdict {
    let holds = |k| readings.iter().any(|r| r.reading == k && r.holds);
    if holds(ReadingKind::AsStated) {
        Verdict::HoldsAsStated
    } else if holds(ReadingKind::FactorCorrected) {
        Verdict::HoldsFactorCorrected
    } else {
        Verdict::Fails
    }
}

/// The constants `c₁..c₅`.
#[derive(Clone, Debug, Serialize)]
pub struct Constants {
    pub c1: Enclosure,
    pub c2: Enclosure,
    pub c3: Enclosure,
    pub c4: Enclosure,
    pub c5: Enclosure,
}

pub fn constants_c1_c5(prec: Precision) -> Constants {
    let p = prec.with_extra_bits(16);
    let isq = |n: i64| Enclosure::from_i64(n, p).sqrt().expect("positive").recip().expect("nonzero");
    let a = isq(15) + isq(17);
    let b = isq(5) - isq(3);
    let c1 = Enclosure::from_ratio(-1, 2, p) + &a + b.mul_i64(3).mul_2exp(-2);
    let c2 = Enclosure::from_i64(-1, p) + a.mul_2exp(1) + b.mul_2exp(-1);
    let g = euler_gamma(p);
    let ln23 = Enclosure::from_ratio(2, 3, p).ln().expect("positive");
    let c3 = (Enclosure::one(p) - &g + ln23).mul_2exp(-1);
    let c4 = (Enclosure::ln2(p) - &g).mul_2exp(-1);
    let r8 = Enclosure::from_i64(8, p).sqrt().expect("positive");
    let at = r8.recip().expect("nonzero").atanh().expect("inside (-1, 1)");
    let c5 = ((&r8 * &at - Enclosure::one(p)).mul_i64(9))
        .div(&r8.mul_2exp(1))
        .expect("nonzero");
    Constants {
        c1: c1.with_prec(prec),
        c2: c2.with_prec(prec),
        c3: c3.with_prec(prec),
        c4: c4.with_prec(prec),
        c5: c5.with_prec(prec),
    }
}

/// `S₁ = Σ_{j≥1} C(-½, j) 2^{-2j-1} ζ_R(2j+1)`.
pub fn series_s1(prec: Precision) -> Result<Enclosure> {
    let inner = prec.with_extra_bits(16);
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let spec = SeriesSpec::new(
        "S1",
        1,
        |j| {
            let c = Enclosure::from_rational(&gen_binomial_exact(&half, j), inner);
            let z = riemann_zeta(&Enclosure::from_i64(2 * j as i64 + 1, inner))?;
            Ok((c * z).mul_2exp(-2 * j as i64 - 1))
        },
        // |C(-½, j)| <= 1 and ζ_R(2j+1) <= 2
        |j| Some(Mag::pow2(1 - 2 * j as i64)),
    )
    .target(Mag::pow2(-(inner.bits() as i64)))
    .max_index(4 * inner.bits() as u64);
    Ok(sum_series(spec, inner)?.with_prec(prec))
}

/// `S₂ = Σ_{j≥1} 2^{-2j}/(2j+1) ζ((2j+1)/2; n²+¼)`.
pub fn series_s2(ctx: &ZetaNHContext) -> Result<Enclosure> {
    let inner = ctx.prec.with_extra_bits(16);
    let spec = SeriesSpec::new(
        "S2",
        1,
        |j| {
            let u = Enclosure::from_ratio(2 * j as i64 + 1, 2, inner);
            let z = ctx.zeta_nh(&u)?.value;
            Ok(z.div_i64(2 * j as i64 + 1).mul_2exp(-2 * j as i64))
        },
        // ζ(u; n²+¼) <= 2 (4/5)^u <= 1 for u >= 5/2
        |j| if j >= 2 { Some(Mag::pow2(1 - 2 * j as i64)) } else { None },
    )
    .target(Mag::pow2(-(inner.bits() as i64)))
    .max_index(4 * inner.bits() as u64);
    Ok(sum_series(spec, inner)?.with_prec(ctx.prec))
}

/// `S₃ = Σ_{j≥1} 2^{-2j}/(2j+1) ζ((2j+1)/2; n²+m²+¼)`.
///
/// Tail: `2mn <= n²+m²` gives `ζ(u; n²+m²+¼) <= 2^{-u} ζ_R(u)² <= 4·2^{-u}`.
pub fn series_s3(ctx: &ZetaNHContext) -> Result<Enclosure> {
    let inner = ctx.prec.with_extra_bits(16);
    let spec = SeriesSpec::new(
        "S3",
        1,
        |j| {
            let u = Enclosure::from_ratio(2 * j as i64 + 1, 2, inner);
            let z = ctx.zeta_double(&u)?.value;
            Ok(z.div_i64(2 * j as i64 + 1).mul_2exp(-2 * j as i64))
        },
        |j| if j >= 2 { Some(Mag::pow2(1 - 2 * j as i64)) } else { None },
    )
    .target(Mag::pow2(-(inner.bits() as i64)))
    .max_index(4 * inner.bits() as u64);
    Ok(sum_series(spec, inner)?.with_prec(ctx.prec))
}

/// `c₁ <= S₁ <= c₂ < 0`.
pub fn certify_prop_3_1(prec: Precision) -> Result<BoundCertificate> {
    let c = constants_c1_c5(prec);
    let s1 = series_s1(prec)?;
    let mut cert = BoundCertificate::sandwich(
        "prop_3_1",
        "Proposition 3.1",
        s1,
        (c.c1.clone(), c.c2.clone()),
        None,
        "S1 = sum_{j>=1} C(-1/2,j) 2^{-2j-1} zeta_R(2j+1); also requires c2 < 0",
    );
    if !c.c2.is_negative() || !cert.computed.is_negative() {
        cert.readings[0].holds = false;
        cert.verdict = verdict_of(&cert.readings);
    }
    Ok(cert)
}

/// `c₃ <= S₂ <= c₄` as stated; `[2c₃, 2c₄]` with the proof's normalisation.
pub fn certify_prop_3_2(ctx: &ZetaNHContext) -> Result<BoundCertificate> {
    let c = constants_c1_c5(ctx.prec);
    let s2 = series_s2(ctx)?;
    Ok(BoundCertificate::sandwich(
        "prop_3_2",
        "Proposition 3.2",
        s2,
        (c.c3.clone(), c.c4.clone()),
        Some((c.c3.mul_2exp(1), c.c4.mul_2exp(1))),
        "the proof bounds sum 2^{-2j-1}(...) while the statement carries 2^{-2j}; \
         the corrected reading doubles both constants",
    ))
}

/// `0 <= S₃ <= c₅` as stated; `[0, 2c₅]` with the proof's normalisation.
pub fn certify_prop_3_3(ctx: &ZetaNHContext) -> Result<BoundCertificate> {
    let c = constants_c1_c5(ctx.prec);
    let s3 = series_s3(ctx)?;
    let zero = Enclosure::zero(ctx.prec);
    Ok(BoundCertificate::sandwich(
        "prop_3_3",
        "Proposition 3.3",
        s3,
        (zero.clone(), c.c5.clone()),
        Some((zero, c.c5.mul_2exp(1))),
        "the proof normalises by 2^{-2j-1}, the statement by 2^{-2j}; \
         its j-tail bound 2^{-3s} zeta_R(2s)^2 is replaced by 2^{-s} zeta_R(s)^2",
    ))
}

/// `c₁ + γ <= Rz_{s=½} ζ(s; n²+¼) <= c₂ + γ` as stated; the series there is
/// `2 S₁`, so the corrected sandwich is `[γ + 2c₁, γ + 2c₂]`.
pub fn certify_residue_sandwich(ctx: &ZetaNHContext) -> Result<BoundCertificate> {
    let c = constants_c1_c5(ctx.prec);
    let g = euler_gamma(ctx.prec);
    let rz = ctx.zeta_nh_finite_part()?.rz;
    Ok(BoundCertificate::sandwich(
        "residue_sandwich",
        "Section 5.4.2",
        rz,
        (&c.c1 + &g, &c.c2 + &g),
        Some((&g + &c.c1.mul_2exp(1), &g + &c.c2.mul_2exp(1))),
        "Rz = gamma + sum C(-1/2,j) 2^{-2j} zeta_R(2j+1) = gamma + 2 S1",
    ))
}

/// `0 < Σ K_0(2πm√(n²+¼)) < (e/2)(e^{2π}/(e^{2π}-1) - 1)`, strictly.
pub fn certify_bessel_bound(ctx: &ZetaNHContext) -> Result<BoundCertificate> {
    let k = ctx.bessel_lattice_sum()?.value;
    let env = crate::lattice::bessel_envelope(ctx.prec);
    let zero = Enclosure::zero(ctx.prec);
    let mut cert = BoundCertificate::sandwich(
        "bessel_bound",
        "Section 5.4.1, Bessel lattice inequality",
        k,
        (zero, env.clone()),
        None,
        "strict inequalities on both sides",
    );
    if !(cert.computed.is_positive() && cert.computed.lt(&env)) {
        cert.readings[0].holds = false;
        cert.verdict = verdict_of(&cert.readings);
    }
    Ok(cert)
}

fn odd_zeta_sum(prec: Precision, start: u64, minus_one: bool) -> Result<Enclosure> {
    let inner = prec.with_extra_bits(16);
    let spec = SeriesSpec::new(
        "odd zeta sum",
        start,
        |k| {
            let mut z = riemann_zeta(&Enclosure::from_i64(2 * k as i64 + 1, inner))?;
            if minus_one {
                z = z - Enclosure::one(inner);
            }
            Ok(z.div_i64(2 * k as i64 + 1).mul_2exp(-2 * k as i64 - 1))
        },
        |k| Some(Mag::pow2(-2 * k as i64)),
    )
    .target(Mag::pow2(-(inner.bits() as i64)))
    .max_index(4 * inner.bits() as u64);
    Ok(sum_series(spec, inner)?.with_prec(prec))
}

/// The closed-form identities for `Σ 2^{-2k-1} ζ_R(2k+1)/(2k+1)`, its
/// `ζ_R - 1` variant, and the generating identity at `z = ¼, ½`.
pub fn certify_closed_sums(prec: Precision) -> Result<Vec<BoundCertificate>> {
    let c = constants_c1_c5(prec);
    let tol = Mag::pow2(-100);
    let from_two = odd_zeta_sum(prec, 2, false)?;
    let from_one = odd_zeta_sum(prec, 1, false)?;
    let mut even_odd = BoundCertificate::identity(
        "closed_sum_even_odd",
        "Section 3.1, odd zeta sum",
        from_two.clone(),
        c.c4.clone(),
        None,
        tol,
        "the display starts at k=2; (ln2 - gamma)/2 is the sum from k=1 \
         (index-corrected reading)",
    );
    let corrected_holds = from_one.overlaps(&c.c4) && (&from_one - &c.c4).abs_upper() <= tol;
    even_odd.readings.push(Reading {
        reading: ReadingKind::FactorCorrected,
        lower: c.c4.clone(),
        upper: c.c4.clone(),
        holds: corrected_holds,
    });
    even_odd.verdict = verdict_of(&even_odd.readings);
    even_odd.computed = if corrected_holds && !even_odd.readings[0].holds {
        from_one
    } else {
        even_odd.computed
    };

    let minus_one = BoundCertificate::identity(
        "closed_sum_zeta_minus_one",
        "Section 3.1, odd zeta-minus-one sum",
        odd_zeta_sum(prec, 1, true)?,
        c.c3.clone(),
        None,
        tol,
        "sum_{k>=1} 2^{-2k-1}(zeta_R(2k+1) - 1)/(2k+1) = (1 - gamma + ln(2/3))/2",
    );

    let mut out = vec![even_odd, minus_one];
    for (num, den) in [(1, 4), (1, 2)] {
        let z = Enclosure::from_ratio(num, den, prec);
        out.push(BoundCertificate::identity(
            &format!("generating_identity_z_{num}_{den}"),
            "Section 3.1, log-gamma generating identity",
            log_gamma_series(&z)?,
            log_gamma_closed(&z)?,
            None,
            tol,
            "sum_{k>=2} (-1)^{k-1} z^k zeta_R(k)/k = ln(e^{-gamma z}/Gamma(1+z))",
        ));
    }
    Ok(out)
}

/// Every certificate, in a fixed order.
pub fn certify_all(ctx: &ZetaNHContext) -> Result<Vec<BoundCertificate>> {
    let mut out = vec![
        certify_prop_3_1(ctx.prec)?,
        certify_prop_3_2(ctx)?,
        certify_prop_3_3(ctx)?,
        certify_residue_sandwich(ctx)?,
        certify_bessel_bound(ctx)?,
    ];
    out.extend(certify_closed_sums(ctx.prec)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::from_digits(40)
    }

    #[test]
    fn constant_values() {
        let c = constants_c1_c5(p());
        assert!((c.c1.mid_f64() + 0.096_867_990_483_756_77).abs() < 1e-15);
        assert!((c.c2.mid_f64() + 0.063_599_307_277_845_71).abs() < 1e-15);
        assert!((c.c3.mid_f64() - 0.008_659_613_495_151_379).abs() < 1e-15);
        assert!((c.c4.mid_f64() - 0.057_965_757_829_206_22).abs() < 1e-15);
        assert!((c.c5.mid_f64() - 0.071_755_115_996_679_98).abs() < 1e-15);
    }

    #[test]
    fn prop_3_1_holds() {
        let cert = certify_prop_3_1(p()).unwrap();
        assert_eq!(cert.verdict, Verdict::HoldsAsStated);
        assert!((cert.computed.mid_f64() + 0.065_001_581_386_126_94).abs() < 1e-15);
    }

    #[test]
    fn sandwich_needs_containment() {
        let x = Enclosure::from_ratio(1, 2, p()).add_error(Mag::pow2(-2));
        let lo = Enclosure::from_ratio(1, 3, p());
        let hi = Enclosure::one(p());
        assert!(!sandwiched(&x, &lo, &hi));
        assert!(sandwiched(&Enclosure::from_ratio(1, 2, p()), &lo, &hi));
    }
}

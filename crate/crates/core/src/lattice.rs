//! Non-homogeneous and double lattice zeta functions
//!
//! * `ζ(s; n²+¼) = Σ_{n≥1} (n²+¼)^{-s}`
//! * `ζ(s; n²+m²+¼) = Σ_{n,m≥1} (n²+m²+¼)^{-s}`
//!
//! and their half-shifted relatives `Σ (√(λ+¼) ± ½)^{-s}`.
//!
//! Continuation to the left of the convergence line uses two independent
//! routes: binomial expansion in `¼/(n²)` resp. `¼/(n²+m²)`, which turns
//! everything into `ζ_R` and Dirichlet `β` values, and the Poisson/Bessel
//! representation of the double series, which converges exponentially.

use std::collections::HashMap;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{sum_series, Enclosure, ExtendedReal, Mag, Precision, SeriesSpec};
use crate::special::{
    bessel_k, bessel_k_upper, dirichlet_beta, euler_gamma, gamma_continued,
    log_2pi_half, rational_pow_neg, riemann_zeta, riemann_zeta_continued, BinomialTaylor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMethod {
    Direct,
    BinomialInZetaR,
    BesselPoisson,
    /// Exact Laurent data of a continuation formula.
    Laurent,
    /// Richardson-extrapolated symmetric limit, a numerical estimate.
    NumericLimit,
}

/// A value together with the route that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub value: Enclosure,
    pub method: ZetaMethod,
    /// Number of series terms (or lattice points) summed.
    pub terms: u64,
}

/// Laurent data at a simple pole: `ru/(s - location) + rz + O(s - location)`.
#[derive(Clone, Debug, Serialize)]
pub struct FinitePart {
    pub location: String,
    pub ru: Enclosure,
    pub rz: Enclosure,
    pub method: ZetaMethod,
}

/// Finite part of the double series at `s = ½`, with the cross-checks.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleFinitePart {
    pub trusted: FinitePart,
    pub bessel_sum: Enclosure,
    /// Laurent constant of the binomial route.
    pub binomial_rz: Enclosure,
    pub routes_agree: bool,
    pub richardson: FinitePart,
    /// Step `h` of the symmetric limit.
    pub richardson_step: Enclosure,
    /// The published closed formula, which carries `+γ/2 + S₁` where the
    /// Laurent expansion gives `-γ/2 - S₁`.
    pub paper_formula_rz: Enclosure,
    pub paper_formula_discrepancy: Enclosure,
    pub ru_consistent_with_zero: bool,
}

/// Evaluation settings for the lattice zeta functions.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaNHContext {
    /// Route used for `zeta_double_continued`.
    pub method: ZetaMethod,
    /// Cap on binomial series indices `J`.
    pub j_cutoff: u64,
    /// Lattice cutoff `N` of direct (oracle) sums.
    pub lattice_cutoff: u64,
    /// Cap on the number of Bessel terms `M`.
    pub bessel_cutoff: u64,
    #[serde(skip)]
    pub prec: Precision,
}

const GUARD_BITS: u32 = 32;

#[derive(Default)]
struct Cache {
    zeta: HashMap<Enclosure, Enclosure>,
    beta: HashMap<Enclosure, Enclosure>,
}

impl Cache {
    fn zeta(&mut self, u: &Enclosure) -> Result<Enclosure> {
        if let Some(v) = self.zeta.get(u) {
            return Ok(v.clone());
        }
        let v = riemann_zeta_continued(u)?;
        self.zeta.insert(u.clone(), v.clone());
        Ok(v)
    }

    fn beta(&mut self, u: &Enclosure) -> Result<Enclosure> {
        if let Some(v) = self.beta.get(u) {
            return Ok(v.clone());
        }
        let v = dirichlet_beta(u)?;
        self.beta.insert(u.clone(), v.clone());
        Ok(v)
    }
}

fn quarter_shift(n: u64) -> BigRational {
    // n² + ¼
    BigRational::new(BigInt::from(4 * n * n + 1), BigInt::from(4))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn is_exact_zero(x: &Enclosure) -> bool {
    x.mid().is_zero() && x.rad().is_zero()
}

/// `Σ_j C(-s, j) term(j)` over all `j` (or odd `j` only). `tail(J, |C(-s,J)|)`
/// bounds everything from index `J` on.
fn sum_binomial<T, B>(
    s: &Enclosure,
    odd_only: bool,
    target: Mag,
    max_j: u64,
    label: &'static str,
    mut term: T,
    tail: B,
) -> Result<(Enclosure, u64)>
where
    T: FnMut(u64, &Enclosure) -> Result<Enclosure>,
    B: Fn(u64, Mag) -> Option<Mag>,
{
    let prec = s.prec();
    let neg_s = s.neg();
    let mut c = Enclosure::one(prec);
    let mut acc = Enclosure::zero(prec);
    let mut j = 0u64;
    loop {
        if !odd_only || j % 2 == 1 {
            let t = tail(j, c.abs_upper());
            if let Some(t) = t {
                if t <= target {
                    return Ok((acc.add_error(t), j));
                }
            }
            if j > max_j {
                return Err(Error::exhausted(
                    format!("{label} (binomial index cap {max_j})"),
                    t.map(|t| acc.add_error(t)),
                ));
            }
            if !is_exact_zero(&c) {
                acc = acc + term(j, &c)?;
            }
        }
        c = (c * (&neg_s - &Enclosure::from_i64(j as i64, prec))).div_i64(j as i64 + 1);
        j += 1;
    }
}

/// Upper bound of `base^{-σ}` at the left endpoint `σ = s.lo()`.
pub(crate) fn pow_neg_upper(base: &BigRational, s: &Enclosure) -> Mag {
    rational_pow_neg(base, &Enclosure::exact(s.lo(), s.prec())).abs_upper()
}

impl Default for ZetaNHContext {
    fn default() -> Self {
        ZetaNHContext::new(Precision::default())
    }
}

impl ZetaNHContext {
    pub fn new(prec: Precision) -> ZetaNHContext {
        ZetaNHContext {
            method: ZetaMethod::BesselPoisson,
            j_cutoff: 4000,
            lattice_cutoff: 400,
            bessel_cutoff: 100_000,
            prec,
        }
    }

    pub fn with_cutoffs(mut self, j: u64, n: u64, m: u64) -> Result<ZetaNHContext> {
        if j == 0 || n == 0 || m == 0 {
            return Err(Error::domain("ZetaNHContext", "cutoffs J, N, M must be positive"));
        }
        self.j_cutoff = j;
        self.lattice_cutoff = n;
        self.bessel_cutoff = m;
        Ok(self)
    }

    pub fn with_method(mut self, method: ZetaMethod) -> ZetaNHContext {
        self.method = method;
        self
    }

    fn inner(&self) -> Precision {
        self.prec.with_extra_bits(GUARD_BITS)
    }

    fn target(&self) -> Mag {
        Mag::pow2(-(self.inner().bits() as i64))
    }

    fn finish(&self, value: Enclosure, method: ZetaMethod, terms: u64) -> Evaluation {
        Evaluation {
            value: value.with_prec(self.prec),
            method,
            terms,
        }
    }

    // ---- ζ(s; n² + ¼) ----

    /// `ζ(s; n²+¼)` for real `s ≠ ½`, by whichever route is cheapest.
    pub fn zeta_nh(&self, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        check_nh_pole(&s)?;
        let mut cache = Cache::default();
        let (v, method, terms) = self.nh_auto(&s, &mut cache)?;
        Ok(self.finish(v, method, terms))
    }

    /// Direct summation of `n <= N`, for `s > ½`, with the integral tail
    /// `N^{1-2σ} / (2σ-1)`.
    pub fn zeta_nh_direct(&self, s: &Enclosure, n_terms: u64) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        let half = Enclosure::from_ratio(1, 2, s.prec());
        if !s.gt(&half) {
            return Err(Error::domain(
                "zeta_nh_direct",
                format!("s = {s} is not in the convergence region s > 1/2"),
            ));
        }
        let v = nh_direct(&s, n_terms.max(1))?;
        Ok(self.finish(v, ZetaMethod::Direct, n_terms))
    }

    /// `ζ(s; n²+¼) = Σ_j C(-s, j) 4^{-j} ζ_R(2s+2j)`.
    pub fn zeta_nh_binomial(&self, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        check_nh_pole(&s)?;
        let mut cache = Cache::default();
        let (v, terms) = self.nh_binomial(&s, &mut cache)?;
        Ok(self.finish(v, ZetaMethod::BinomialInZetaR, terms))
    }

    fn nh_auto(&self, s: &Enclosure, cache: &mut Cache) -> Result<(Enclosure, ZetaMethod, u64)> {
        let sigma = s.lo().to_f64();
        if sigma > 1.5 {
            let bits = s.prec().bits() as f64;
            let log2_k = (bits - (2.0 * sigma - 1.0).log2()) / (2.0 * sigma - 1.0);
            if log2_k < 6.0 {
                let k = log2_k.exp2().ceil() as u64 + 1;
                return Ok((nh_direct(s, k)?, ZetaMethod::Direct, k));
            }
        }
        let (v, t) = self.nh_binomial(s, cache)?;
        Ok((v, ZetaMethod::BinomialInZetaR, t))
    }

    fn nh_binomial(&self, s: &Enclosure, cache: &mut Cache) -> Result<(Enclosure, u64)> {
        let prec = s.prec();
        let two_s = s.mul_2exp(1);
        let s_abs = s.abs_upper().to_f64();
        let sigma = s.lo().to_f64();
        sum_binomial(
            s,
            false,
            self.target(),
            self.j_cutoff,
            "zeta_nh binomial series",
            |j, c| {
                let z = cache.zeta(&(&two_s + &Enclosure::from_i64(2 * j as i64, prec)))?;
                Ok((c * &z).mul_2exp(-2 * j as i64))
            },
            |j, c| {
                // ratio |s+j| / (4(j+1)) <= ½ and ζ_R(2σ+2j) <= 2
                let jf = j as f64;
                if j == 0 || s_abs + jf > 2.0 * jf + 1.0 || 2.0 * sigma + 2.0 * jf < 2.5 {
                    return None;
                }
                Some(c.mul_2exp(2 - 2 * j as i64))
            },
        )
    }

    /// `ζ(s; n²+¼)` for point `s > 0` through the Bessel form
    /// `-½ 4^s + √π Γ(s-½)/(2Γ(s)) 2^{2s-1} + 2π^s 2^{s-½}/Γ(s) Σ_m m^{s-½} K_{s-½}(πm)`.
    pub fn zeta_nh_bessel(&self, s: &Enclosure) -> Result<Evaluation> {
        let inner = self.inner();
        let s = s.with_prec(inner);
        if !s.is_point() {
            return Err(Error::NonPointArgument {
                function: "zeta_nh_bessel",
                radius: s.radius_string(),
            });
        }
        if !s.is_positive() {
            return Err(Error::domain("zeta_nh_bessel", format!("needs s > 0, got {s}")));
        }
        check_nh_pole(&s)?;
        let half = Enclosure::from_ratio(1, 2, inner);
        let nu = &s - &half;
        let pi = Enclosure::pi(inner);
        let two = Enclosure::from_i64(2, inner);
        let target = self.target().mul_2exp(-4);
        let sigma = s.mid().to_f64();
        let start_tail = (2.0 * sigma).ceil().max(2.0) as i64;
        let mut sum = Enclosure::zero(inner);
        let mut m = 1i64;
        let tail = loop {
            let me = Enclosure::from_i64(m, inner);
            let y = &pi * &me;
            if m >= start_tail {
                // for m >= 2σ later terms shrink by at least e^{½-π} < ½
                let bound = bessel_k_upper(&nu, &y)?.mul((me.ln()? * &nu).exp().abs_upper()).mul_2exp(1);
                if bound <= target {
                    break bound;
                }
            }
            if m as u64 > self.bessel_cutoff {
                return Err(Error::exhausted("zeta_nh Bessel series (cap M reached)", None));
            }
            sum = sum + (me.ln()? * &nu).exp() * bessel_k(&nu, &y)?;
            m += 1;
        };
        let sum = sum.add_error(tail);
        let g = gamma_continued(&s)?;
        let first = -(two.pow(&s.mul_2exp(1))?.mul_2exp(-1));
        let second = pi.sqrt()? * gamma_continued(&nu)? * two.pow(&(s.mul_2exp(1) - Enclosure::from_i64(2, inner)))?;
        let third = pi.pow(&s)? * two.pow(&(&s + &half))? * sum;
        let v = first + (second + third).div(&g)?;
        Ok(self.finish(v, ZetaMethod::BesselPoisson, m as u64))
    }

    /// `ζ(0; n²+¼)`, which is `-½`.
    pub fn zeta_nh_at_zero(&self) -> Result<Evaluation> {
        self.zeta_nh_binomial(&Enclosure::zero(self.prec))
    }

    /// `ζ'(0; n²+¼) = 2ζ'_R(0) + Σ_{j≥1} (-1)^j 4^{-j} ζ_R(2j) / j`.
    pub fn zeta_nh_deriv_at_zero(&self) -> Result<Enclosure> {
        let inner = self.inner();
        let spec = SeriesSpec::new(
            "zeta_nh'(0) series",
            1,
            |j| {
                let taylor = BinomialTaylor::new(j, inner)?;
                let z = riemann_zeta(&Enclosure::from_i64(2 * j as i64, inner))?;
                Ok((Enclosure::from_rational(&taylor.linear_coeff, inner) * z).mul_2exp(-2 * j as i64))
            },
            // |term| <= 2·4^{-j}/j, geometric with ratio ¼
            |j| Some(Mag::pow2(2 - 2 * j as i64)),
        )
        .target(self.target())
        .max_index(self.j_cutoff);
        let series = sum_series(spec, inner)?;
        let value = series - log_2pi_half(inner).mul_2exp(1);
        Ok(value.with_prec(self.prec))
    }

    /// `-2 ln 2 - ln sinh(π/2)`.
    pub fn zeta_nh_deriv_at_zero_closed(&self) -> Enclosure {
        let inner = self.inner();
        let sinh = Enclosure::pi(inner).mul_2exp(-1).sinh();
        let v = -(Enclosure::ln2(inner).mul_2exp(1)) - sinh.ln().expect("sinh(π/2) > 0");
        v.with_prec(self.prec)
    }

    /// Laurent data at `s = ½`: `ru = ½` from `ζ_R(2s)`, and
    /// `rz = γ + Σ_{j≥1} C(-½, j) 4^{-j} ζ_R(2j+1)`.
    pub fn zeta_nh_finite_part(&self) -> Result<FinitePart> {
        let inner = self.inner();
        let half = Enclosure::from_ratio(1, 2, inner);
        let mut cache = Cache::default();
        let (series, _) = sum_binomial(
            &half,
            false,
            self.target(),
            self.j_cutoff,
            "zeta_nh finite part",
            |j, c| {
                if j == 0 {
                    return Ok(Enclosure::zero(inner));
                }
                let z = cache.zeta(&Enclosure::from_i64(2 * j as i64 + 1, inner))?;
                Ok((c * &z).mul_2exp(-2 * j as i64))
            },
            |j, c| if j >= 1 { Some(c.mul_2exp(2 - 2 * j as i64)) } else { None },
        )?;
        Ok(FinitePart {
            location: "1/2".into(),
            ru: half.with_prec(self.prec),
            rz: (series + euler_gamma(inner)).with_prec(self.prec),
            method: ZetaMethod::Laurent,
        })
    }

    // ---- shifted single series ----

    /// `Σ_{n≥1} (√(n²+¼) + sign·½)^{-s}` summed directly up to the lattice
    /// cutoff; needs `s > 1`.
    pub fn zeta_shifted_nh(&self, sign: i32, s: &Enclosure) -> Result<Evaluation> {
        let inner = self.inner();
        let s = s.with_prec(inner);
        if !s.gt(&Enclosure::one(inner)) {
            return Err(Error::domain(
                "zeta_shifted_nh",
                format!("direct summation needs s > 1, got {s}"),
            ));
        }
        let sign = sign_enclosure(sign, inner)?;
        let n_max = self.lattice_cutoff.max(2);
        let mut acc = Enclosure::zero(inner);
        for n in 1..=n_max {
            let mu = Enclosure::from_rational(&quarter_shift(n), inner).sqrt()?;
            acc = acc + pow_neg_enc(&(mu + &sign), &s)?;
        }
        // terms <= (n - ½)^{-σ}
        let x = ratio(2 * n_max as i64 - 1, 2);
        let tail = tail_integral(&x, &s, 1)?;
        Ok(self.finish(acc.add_error(tail), ZetaMethod::Direct, n_max))
    }

    /// The same function through `Σ_j C(-s, j) (±½)^j ζ((s+j)/2; n²+¼)`.
    pub fn zeta_shifted_nh_expansion(&self, sign: i32, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        let sign_enc = sign_enclosure(sign, s.prec())?.mul_2exp(1);
        let mut cache = Cache::default();
        let (v, t) = self.shifted_nh_series(&s, false, &mut cache, |j| {
            if j % 2 == 1 {
                sign_enc.clone()
            } else {
                Enclosure::one(s.prec())
            }
        })?;
        Ok(self.finish(v, ZetaMethod::BinomialInZetaR, t))
    }

    /// `ζ_{+½}(s) - ζ_{-½}(s) = 2 Σ_{j odd} C(-s, j) 2^{-j} ζ((s+j)/2; n²+¼)`,
    /// continued to all real `s` away from its poles.
    pub fn shifted_difference_nh(&self, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        if !s.is_point() {
            return Err(Error::NonPointArgument {
                function: "shifted_difference_nh",
                radius: s.radius_string(),
            });
        }
        let two = Enclosure::from_i64(2, s.prec());
        let mut cache = Cache::default();
        let (v, t) = self.shifted_nh_series(&s, true, &mut cache, |_| two.clone())?;
        Ok(self.finish(v, ZetaMethod::BinomialInZetaR, t))
    }

    fn shifted_nh_series<W: Fn(u64) -> Enclosure>(
        &self,
        s: &Enclosure,
        odd_only: bool,
        cache: &mut Cache,
        weight: W,
    ) -> Result<(Enclosure, u64)> {
        let prec = s.prec();
        let s_abs = s.abs_upper().to_f64();
        let sigma = s.lo().to_f64();
        // (4/5)^{σ/2} at the left endpoint
        let scale = pow_neg_upper(&ratio(5, 4), &s.mul_2exp(-1));
        let mut terms = 0;
        let (v, _) = sum_binomial(
            s,
            odd_only,
            self.target(),
            self.j_cutoff,
            "shifted zeta_nh expansion",
            |j, c| {
                let u = (s + &Enclosure::from_i64(j as i64, prec)).mul_2exp(-1);
                check_nh_pole(&u)?;
                let (z, _, t) = self.nh_auto(&u, cache)?;
                terms += t;
                Ok((c * &z * weight(j)).mul_2exp(-(j as i64)))
            },
            |j, c| {
                // ζ(u; n²+¼) <= 2 (4/5)^u for u >= 2; terms shrink by 1/√5
                let jf = j as f64;
                if (s_abs + jf) / (jf + 1.0) > 1.1 || sigma + jf < 4.0 {
                    return None;
                }
                let decay = rational_pow_neg(&ratio(5, 1), &Enclosure::from_ratio(j as i64, 2, prec))
                    .abs_upper();
                Some(c.mul(scale).mul(decay).mul_2exp(3))
            },
        )?;
        Ok((v, terms))
    }

    // ---- ζ(s; n² + m² + ¼) ----

    /// The double series for `s > 1`, through the binomial route (or a short
    /// direct sum when `s` is large).
    pub fn zeta_double(&self, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        if !s.gt(&Enclosure::one(s.prec())) {
            return Err(Error::domain(
                "zeta_double",
                format!("s = {s} is not strictly right of 1; use zeta_double_continued"),
            ));
        }
        let mut cache = Cache::default();
        let (v, m, t) = self.double_auto(&s, &mut cache)?;
        Ok(self.finish(v, m, t))
    }

    /// Direct double sum over `n, m <= N` with the radial tail
    /// `(π/2) N^{2-2σ} / (2σ-2)`.
    pub fn zeta_double_direct(&self, s: &Enclosure, n_max: u64) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        if !s.gt(&Enclosure::one(s.prec())) {
            return Err(Error::domain(
                "zeta_double_direct",
                format!("s = {s} is not strictly right of 1"),
            ));
        }
        let v = double_direct(&s, n_max.max(1))?;
        Ok(self.finish(v, ZetaMethod::Direct, n_max * n_max))
    }

    /// `Σ_i C(-s, i) 4^{-i} [ζ_R(s+i) β(s+i) - ζ_R(2s+2i)]`, using
    /// `Σ_{n,m≥1} (n²+m²)^{-v} = ζ_R(v) β(v) - ζ_R(2v)`.
    pub fn zeta_double_binomial(&self, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        let mut cache = Cache::default();
        let (v, t) = self.double_binomial(&s, &mut cache)?;
        Ok(self.finish(v, ZetaMethod::BinomialInZetaR, t))
    }

    fn double_auto(&self, s: &Enclosure, cache: &mut Cache) -> Result<(Enclosure, ZetaMethod, u64)> {
        let sigma = s.lo().to_f64();
        if sigma > 2.0 {
            let bits = s.prec().bits() as f64;
            let e = 2.0 * sigma - 2.0;
            let log2_k = (bits + 1.0 - e.log2()) / e;
            if log2_k < 4.5 {
                let k = log2_k.exp2().ceil() as u64 + 1;
                return Ok((double_direct(s, k)?, ZetaMethod::Direct, k * k));
            }
        }
        let (v, t) = self.double_binomial(s, cache)?;
        Ok((v, ZetaMethod::BinomialInZetaR, t))
    }

    fn double_binomial(&self, s: &Enclosure, cache: &mut Cache) -> Result<(Enclosure, u64)> {
        let prec = s.prec();
        let half = Enclosure::from_ratio(1, 2, prec);
        if s.overlaps(&half) {
            return Err(Error::pole(
                "zeta_double",
                format!("{s}"),
                "simple pole at s = 1/2; use zeta_double_finite_part",
            ));
        }
        if s.lo().to_f64() <= 0.0 && s.is_point() && s.mid().is_integer() {
            return Err(Error::domain(
                "zeta_double_binomial",
                "non-positive integer s is not supported by the binomial route",
            ));
        }
        let s_abs = s.abs_upper().to_f64();
        let sigma = s.lo().to_f64();
        let scale = pow_neg_upper(&ratio(2, 1), s);
        sum_binomial(
            s,
            false,
            self.target(),
            self.j_cutoff,
            "zeta_double binomial series",
            |i, c| {
                let v = s + &Enclosure::from_i64(i as i64, prec);
                let zb = cache.zeta(&v)? * cache.beta(&v)?;
                let z2 = cache.zeta(&v.mul_2exp(1))?;
                Ok((c * &(zb - z2)).mul_2exp(-2 * i as i64))
            },
            |i, c| {
                // bracket <= 2^{-v} ζ_R(v)² <= 2·2^{-v}; ratio <= ½
                let jf = i as f64;
                if sigma + jf < 3.0 || (s_abs + jf) / (jf + 1.0) > 4.0 {
                    return None;
                }
                Some(c.mul(scale).mul_2exp(2 - 3 * i as i64))
            },
        )
    }

    /// Half-shifted double series `Σ (√(n²+m²+¼) + sign·½)^{-s}`, direct,
    /// for `s > 2`.
    pub fn zeta_shifted_double(&self, sign: i32, s: &Enclosure) -> Result<Evaluation> {
        let inner = self.inner();
        let s = s.with_prec(inner);
        if !s.gt(&Enclosure::from_i64(2, inner)) {
            return Err(Error::domain(
                "zeta_shifted_double",
                format!("direct summation needs s > 2, got {s}"),
            ));
        }
        let sign = sign_enclosure(sign, inner)?;
        let n_max = self.lattice_cutoff.max(2);
        let mut acc = Enclosure::zero(inner);
        for n in 1..=n_max {
            for m in n..=n_max {
                let lam = BigRational::new(BigInt::from(4 * (n * n + m * m) + 1), BigInt::from(4));
                let mu = Enclosure::from_rational(&lam, inner).sqrt()?;
                let t = pow_neg_enc(&(mu + &sign), &s)?;
                acc = acc + if n == m { t } else { t.mul_2exp(1) };
            }
        }
        // √(r²+¼) - ½ >= 0.64 r for r >= √2
        let tail = radial_tail(n_max, &s, 1)?
            .mul(pow_neg_upper(&ratio(16, 25), &s));
        Ok(self.finish(acc.add_error(tail), ZetaMethod::Direct, n_max * n_max))
    }

    /// `Σ_j C(-s, j) (±½)^j ζ((s+j)/2; n²+m²+¼)`.
    pub fn zeta_shifted_double_expansion(&self, sign: i32, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        let sign_enc = sign_enclosure(sign, s.prec())?.mul_2exp(1);
        let mut cache = Cache::default();
        let prec = s.prec();
        let (v, t) = self.shifted_double_series(&s, false, &mut cache, |j| {
            if j % 2 == 1 {
                sign_enc.clone()
            } else {
                Enclosure::one(prec)
            }
        })?;
        Ok(self.finish(v, ZetaMethod::BinomialInZetaR, t))
    }

    /// `2 Σ_{j odd} C(-s, j) 2^{-j} ζ((s+j)/2; n²+m²+¼)`, the difference of
    /// the two half-shifted double series, continued.
    pub fn shifted_difference_double(&self, s: &Enclosure) -> Result<Evaluation> {
        let s = s.with_prec(self.inner());
        if !s.is_point() {
            return Err(Error::NonPointArgument {
                function: "shifted_difference_double",
                radius: s.radius_string(),
            });
        }
        let two = Enclosure::from_i64(2, s.prec());
        let mut cache = Cache::default();
        let (v, t) = self.shifted_double_series(&s, true, &mut cache, |_| two.clone())?;
        Ok(self.finish(v, ZetaMethod::BinomialInZetaR, t))
    }

    fn shifted_double_series<W: Fn(u64) -> Enclosure>(
        &self,
        s: &Enclosure,
        odd_only: bool,
        cache: &mut Cache,
        weight: W,
    ) -> Result<(Enclosure, u64)> {
        let prec = s.prec();
        let s_abs = s.abs_upper().to_f64();
        let sigma = s.lo().to_f64();
        let scale = pow_neg_upper(&ratio(2, 1), &s.mul_2exp(-1));
        let mut terms = 0;
        let (v, _) = sum_binomial(
            s,
            odd_only,
            self.target(),
            self.j_cutoff,
            "shifted zeta_double expansion",
            |j, c| {
                let u = (s + &Enclosure::from_i64(j as i64, prec)).mul_2exp(-1);
                let (z, _, t) = self.double_auto(&u, cache)?;
                terms += t;
                Ok((c * &z * weight(j)).mul_2exp(-(j as i64)))
            },
            |j, c| {
                // ζ(u; n²+m²+¼) <= 4·2^{-u} for u >= 2; terms shrink by 2^{-3/2}
                let jf = j as f64;
                if (s_abs + jf) / (jf + 1.0) > 1.4 || sigma + jf < 4.0 {
                    return None;
                }
                let decay = rational_pow_neg(&ratio(2, 1), &Enclosure::from_ratio(3 * j as i64, 2, prec))
                    .abs_upper();
                Some(c.mul(scale).mul(decay).mul_2exp(4))
            },
        )?;
        Ok((v, terms))
    }

    // ---- Poisson / Bessel representation ----

    /// `Σ_{n,m≥1} K_0(2πm √(n²+¼))`.
    pub fn bessel_lattice_sum(&self) -> Result<Evaluation> {
        let inner = self.inner();
        let (plus, _, terms) = self.bessel_pair_sum(&Enclosure::zero(inner))?;
        Ok(self.finish(plus, ZetaMethod::BesselPoisson, terms))
    }

    /// `Σ_{n,m} (m²/(n²+¼))^{±ν/2} K_ν(2πm√(n²+¼))` for both signs of the
    /// exponent; `K_ν = K_{-ν}` so one set of Bessel values serves both.
    fn bessel_pair_sum(&self, nu: &Enclosure) -> Result<(Enclosure, Enclosure, u64)> {
        let prec = nu.prec();
        let bits = prec.bits() as f64;
        let a = nu.abs_upper().to_f64();
        let two_pi = 2.0 * std::f64::consts::PI;
        let log2_bound = |x: f64| {
            let n0 = (x / two_pi).floor();
            ((4.0 * (n0 + 2.0)).ln() + a * (x / two_pi).ln() + 0.5 * (two_pi / x).ln() - x
                + a * a / (2.0 * x))
                / std::f64::consts::LN_2
        };
        let mut x = bits * std::f64::consts::LN_2 + 10.0;
        while log2_bound(x) > -(bits + 4.0) || x < 2.0 * a + 2.0 {
            x += 1.0;
        }
        let x = x.ceil();

        let pi = Enclosure::pi(prec);
        let mut plus = Enclosure::zero(prec);
        let mut minus = Enclosure::zero(prec);
        let mut terms = 0u64;
        let half_nu = nu.mul_2exp(-1);
        let nu_zero = is_exact_zero(nu);
        let mut n = 1u64;
        loop {
            let r = ((n * n) as f64 + 0.25).sqrt();
            if two_pi * r > x + 1e-6 {
                break;
            }
            let lam = Enclosure::from_rational(&quarter_shift(n), prec);
            let root = lam.sqrt()?;
            let ln_lam = if nu_zero { Enclosure::zero(prec) } else { lam.ln()? };
            let mut m = 1u64;
            while two_pi * r * m as f64 <= x + 1e-6 {
                terms += 1;
                if terms > self.bessel_cutoff {
                    return Err(Error::exhausted("Bessel lattice sum (cap M reached)", None));
                }
                let y = (&pi * &root).mul_i64(2 * m as i64);
                let k = bessel_k(nu, &y)?;
                if nu_zero {
                    plus = plus + &k;
                } else {
                    let ln_m = Enclosure::from_i64(m as i64, prec).ln()?;
                    let e = (ln_m.mul_2exp(1) - &ln_lam) * &half_nu;
                    plus = plus + &e.exp() * &k;
                    minus = minus + (-e).exp() * &k;
                }
                m += 1;
            }
            n += 1;
        }
        // excluded terms: 4 (N0+2) (X/2π)^{|ν|} √(2π/X) e^{-X + ν²/(2X)}
        let xe = Enclosure::from_i64(x as i64, prec);
        let two_pi_e = pi.mul_2exp(1);
        let n0 = (x / two_pi).floor() as i64;
        let a_up = Enclosure::exact(ExtendedReal::from_mag(nu.abs_upper()), prec);
        let tail = (xe.div(&two_pi_e)?.ln()? * &a_up).exp()
            * two_pi_e.div(&xe)?.sqrt()?
            * (-&xe + a_up.sqr().div(&xe.mul_2exp(1))?).exp();
        let tail = tail.mul_i64(4 * (n0 + 2)).abs_upper();
        let plus = plus.add_error(tail);
        let minus = if nu_zero { plus.clone() } else { minus.add_error(tail) };
        Ok((plus, minus, terms))
    }

    /// Analytic continuation of the double series through
    /// `2 π^s/Γ(s) B(s) + ½ √π Γ(s-½)/Γ(s) ζ(s-½; n²+¼) - ½ ζ(s; n²+¼)`,
    /// `B(s) = Σ (m²/(n²+¼))^{(s-½)/2} K_{s-½}(2πm√(n²+¼))`.
    pub fn zeta_double_continued(&self, s: &Enclosure) -> Result<Evaluation> {
        let pair = self.zeta_double_continued_pair(s, false)?;
        Ok(pair.0)
    }

    /// Values at `s` and, when `mirrored`, at `1 - s` (sharing the Bessel
    /// evaluations, since the order `s - ½` only changes sign).
    fn zeta_double_continued_pair(
        &self,
        s: &Enclosure,
        mirrored: bool,
    ) -> Result<(Evaluation, Option<Evaluation>)> {
        let inner = self.inner();
        let s = s.with_prec(inner);
        if !s.is_point() {
            return Err(Error::NonPointArgument {
                function: "zeta_double_continued",
                radius: s.radius_string(),
            });
        }
        if !s.is_positive() {
            return Err(Error::domain(
                "zeta_double_continued",
                format!("the Poisson representation is used for s > 0, got {s}"),
            ));
        }
        let half = Enclosure::from_ratio(1, 2, inner);
        if s.overlaps(&half) {
            return Err(Error::pole(
                "zeta_double_continued",
                format!("{s}"),
                "simple pole at s = 1/2; use zeta_double_finite_part",
            ));
        }
        let nu = &s - &half;
        let (b_plus, b_minus, terms) = self.bessel_pair_sum(&nu)?;
        let mut cache = Cache::default();
        let first = self.poisson_assemble(&s, &b_plus, &mut cache)?;
        let second = if mirrored {
            let t = Enclosure::one(inner) - &s;
            Some(self.finish(self.poisson_assemble(&t, &b_minus, &mut cache)?, ZetaMethod::BesselPoisson, terms))
        } else {
            None
        };
        Ok((self.finish(first, ZetaMethod::BesselPoisson, terms), second))
    }

    fn poisson_assemble(&self, s: &Enclosure, bessel: &Enclosure, cache: &mut Cache) -> Result<Enclosure> {
        let prec = s.prec();
        let half = Enclosure::from_ratio(1, 2, prec);
        let pi = Enclosure::pi(prec);
        let gamma_s = gamma_continued(s)?;
        let pi_s = (pi.ln()? * s).exp();
        let first = (pi_s * bessel).mul_2exp(1).div(&gamma_s)?;
        let sm = s - &half;
        check_nh_pole(&sm)?;
        let (z_sm, _, _) = self.nh_auto(&sm, cache)?;
        let second = (pi.sqrt()? * gamma_continued(&sm)? * z_sm).div(&gamma_s)?.mul_2exp(-1);
        check_nh_pole(s)?;
        let (z_s, _, _) = self.nh_auto(s, cache)?;
        Ok(first + second - z_s.mul_2exp(-1))
    }

    /// Laurent data of the double series at `s = ½`.
    ///
    /// Expanding the Poisson representation, with `ε = s - ½`:
    /// `Γ(ε)/Γ(½+ε) = (1/ε - γ)(1 + (γ + 2 ln 2) ε)/√π` and
    /// `ζ(ε; n²+¼) = -½ + ζ'(0; n²+¼) ε` give
    /// `ru = -¼ - ¼ = -½` and
    /// `rz = 2 Σ K_0 + ½ (ζ'(0; n²+¼) - ln 2) - ½ Rz ζ(s; n²+¼)`.
    pub fn zeta_double_finite_part(&self) -> Result<DoubleFinitePart> {
        let inner = self.inner();
        let prec = self.prec;
        let bessel = self.bessel_lattice_sum()?.value.with_prec(inner);
        let dz = self.zeta_nh_deriv_at_zero()?.with_prec(inner);
        let nh = self.zeta_nh_finite_part()?;
        let rz_nh = nh.rz.with_prec(inner);
        let ln2 = Enclosure::ln2(inner);
        let rz = bessel.mul_2exp(1) + (&dz - &ln2).mul_2exp(-1) - rz_nh.mul_2exp(-1);
        let ru = Enclosure::from_ratio(-1, 2, inner);

        // binomial route: Σ_i C(-½, i) 4^{-i} ζ_R(½+i) β(½+i) - Rz ζ(s; n²+¼)
        let half = Enclosure::from_ratio(1, 2, inner);
        let mut cache = Cache::default();
        let (zb, _) = sum_binomial(
            &half,
            false,
            self.target(),
            self.j_cutoff,
            "zeta_double finite part, binomial route",
            |i, c| {
                let v = &half + &Enclosure::from_i64(i as i64, inner);
                Ok((c * &(cache.zeta(&v)? * cache.beta(&v)?)).mul_2exp(-2 * i as i64))
            },
            // |C(-½,i)| <= 1, ζ_R(v) β(v) <= 2 for v >= 2.5
            |i, c| if i >= 2 { Some(c.mul_2exp(2 - 2 * i as i64)) } else { None },
        )?;
        let binomial_rz = zb - &rz_nh;

        // symmetric limit with Richardson extrapolation
        let k = (inner.bits() / 5).max(8) as i64;
        let h = Enclosure::exact(ExtendedReal::one().mul_2exp(-k), inner);
        let sym = |h: &Enclosure| -> Result<(Enclosure, Enclosure)> {
            let (up, down) = self.zeta_double_continued_pair(&(&half + h), true)?;
            let up = up.value.with_prec(inner);
            let down = down.expect("mirrored value").value.with_prec(inner);
            Ok(((&up + &down).mul_2exp(-1), (&up - &down).mul_2exp(-1) * h))
        };
        let (rz_h, ru_h) = sym(&h)?;
        let (rz_h2, ru_h2) = sym(&h.mul_2exp(-1))?;
        let rich = |a: &Enclosure, b: &Enclosure| -> Enclosure {
            // (4 f(h/2) - f(h)) / 3, with |f(h/2) - f(h)| / 3 as the
            // estimated remaining error
            let est = (b - a).abs_upper().div(Mag::from_u64(3));
            (b.mul_i64(4) - a).div_i64(3).add_error(est)
        };
        let richardson = FinitePart {
            location: "1/2".into(),
            ru: rich(&ru_h, &ru_h2).with_prec(prec),
            rz: rich(&rz_h, &rz_h2).with_prec(prec),
            method: ZetaMethod::NumericLimit,
        };

        // published formula: 2ΣK_0 - (3/2) ln 2 - ½ ln sinh(π/2) + γ/2 + S₁
        let s1 = (&rz_nh - &euler_gamma(inner)).mul_2exp(-1);
        let sinh = Enclosure::pi(inner).mul_2exp(-1).sinh();
        let alt_rz = bessel.mul_2exp(1) - ln2.mul_i64(3).mul_2exp(-1) - sinh.ln()?.mul_2exp(-1)
            + euler_gamma(inner).mul_2exp(-1)
            + s1;

        Ok(DoubleFinitePart {
            routes_agree: rz.overlaps(&binomial_rz),
            trusted: FinitePart {
                location: "1/2".into(),
                ru: ru.with_prec(prec),
                rz: rz.with_prec(prec),
                method: ZetaMethod::Laurent,
            },
            bessel_sum: bessel.with_prec(prec),
            binomial_rz: binomial_rz.with_prec(prec),
            ru_consistent_with_zero: richardson.ru.contains_zero(),
            richardson,
            richardson_step: h.with_prec(prec),
            paper_formula_discrepancy: (&alt_rz - &rz).with_prec(prec),
            paper_formula_rz: alt_rz.with_prec(prec),
        })
    }
}

/// `(e/2)(e^{2π}/(e^{2π}-1) - 1)`, the published bound `½ Σ e^{-2πnm}`
/// of the Bessel lattice sum.
pub fn bessel_envelope(prec: Precision) -> Enclosure {
    let inner = prec.with_extra_bits(16);
    let e = Enclosure::one(inner).exp();
    let e2pi = Enclosure::pi(inner).mul_2exp(1).exp();
    let q = e2pi.div(&(&e2pi - &Enclosure::one(inner))).expect("e^{2π} > 1");
    ((q - Enclosure::one(inner)) * e).mul_2exp(-1).with_prec(prec)
}

fn check_nh_pole(s: &Enclosure) -> Result<()> {
    let half = Enclosure::from_ratio(1, 2, s.prec());
    if s.overlaps(&half) {
        return Err(Error::pole(
            "zeta_nh",
            format!("{s}"),
            "simple pole at s = 1/2 with residue 1/2; use zeta_nh_finite_part",
        ));
    }
    Ok(())
}

fn sign_enclosure(sign: i32, prec: Precision) -> Result<Enclosure> {
    match sign {
        1 => Ok(Enclosure::from_ratio(1, 2, prec)),
        -1 => Ok(Enclosure::from_ratio(-1, 2, prec)),
        _ => Err(Error::domain("shifted zeta", format!("sign must be +1 or -1, got {sign}"))),
    }
}

/// `x^{-s}` for a positive enclosure `x`.
pub(crate) fn pow_neg_enc(x: &Enclosure, s: &Enclosure) -> Result<Enclosure> {
    if s.is_point() {
        if let Some(k) = s.mid().to_i64_exact() {
            return x.powi(-k);
        }
    }
    Ok((x.ln()? * s).neg().exp())
}

/// `x^{1-σ·k}/(σ·k - 1)` at the left endpoint of `s`: the integral of
/// `t^{-kσ}` from `x` to infinity.
pub(crate) fn tail_integral(x: &BigRational, s: &Enclosure, k: i64) -> Result<Mag> {
    let prec = s.prec();
    let e = Enclosure::exact(s.lo(), prec).mul_i64(k) - Enclosure::one(prec);
    Ok(rational_pow_neg(x, &e).div(&e)?.abs_upper())
}

/// `(π/2) N^{2-kσ} / (kσ - 2)`: the quarter-plane integral of `r^{-kσ}`
/// outside radius `N`. `k = 2` for `(n²+m²)^{-σ}`, `k = 1` for `r^{-σ}`.
pub(crate) fn radial_tail(n: u64, s: &Enclosure, k: i64) -> Result<Mag> {
    let prec = s.prec();
    let e = Enclosure::exact(s.lo(), prec).mul_i64(k) - Enclosure::from_i64(2, prec);
    let x = BigRational::from_integer(BigInt::from(n));
    let v = rational_pow_neg(&x, &e).div(&e)? * Enclosure::pi(prec).mul_2exp(-1);
    Ok(v.abs_upper())
}

fn nh_direct(s: &Enclosure, n_max: u64) -> Result<Enclosure> {
    let prec = s.prec();
    let mut acc = Enclosure::zero(prec);
    for n in 1..=n_max {
        acc = acc + rational_pow_neg(&quarter_shift(n), s);
    }
    let tail = tail_integral(&BigRational::from_integer(BigInt::from(n_max)), s, 2)?;
    Ok(acc.add_error(tail))
}

fn double_direct(s: &Enclosure, n_max: u64) -> Result<Enclosure> {
    let prec = s.prec();
    let mut acc = Enclosure::zero(prec);
    for n in 1..=n_max {
        for m in n..=n_max {
            let lam = BigRational::new(BigInt::from(4 * (n * n + m * m) + 1), BigInt::from(4));
            let t = rational_pow_neg(&lam, s);
            acc = acc + if n == m { t } else { t.mul_2exp(1) };
        }
    }
    Ok(acc.add_error(radial_tail(n_max, s, 2)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ZetaNHContext {
        ZetaNHContext::new(Precision::from_digits(40))
    }

    fn close(v: &Enclosure, x: f64, tol: f64) -> bool {
        (v.mid_f64() - x).abs() < tol
    }

    #[test]
    fn nh_routes_agree() {
        let c = ctx();
        let s = Enclosure::from_i64(2, c.prec);
        let b = c.zeta_nh_binomial(&s).unwrap().value;
        let d = c.zeta_nh_direct(&s, 2000).unwrap().value;
        assert!(b.overlaps(&d));
        assert!(close(&b, 0.714_358_517_938_468_3, 1e-15));
        assert!(b.rad() < Mag::pow2(-130));
    }

    #[test]
    fn nh_value_and_derivative_at_zero() {
        let c = ctx();
        let z0 = c.zeta_nh_at_zero().unwrap().value;
        assert!(z0.overlaps(&Enclosure::from_ratio(-1, 2, c.prec)));
        let d = c.zeta_nh_deriv_at_zero().unwrap();
        assert!(d.overlaps(&c.zeta_nh_deriv_at_zero_closed()));
        assert!(close(&d, -2.219_768_064_782_904, 1e-14));
    }

    #[test]
    fn nh_finite_part() {
        let fp = ctx().zeta_nh_finite_part().unwrap();
        assert!(close(&fp.rz, 0.447_212_502_129_279, 1e-15));
        assert!(fp.ru.overlaps(&Enclosure::from_ratio(1, 2, ctx().prec)));
    }

    #[test]
    fn nh_pole_is_rejected() {
        let c = ctx();
        assert!(matches!(
            c.zeta_nh(&Enclosure::from_ratio(1, 2, c.prec)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn double_routes() {
        let c = ctx();
        let s = Enclosure::from_i64(2, c.prec);
        let b = c.zeta_double(&s).unwrap().value;
        assert!(close(&b, 0.361_385_561_175_646_1, 1e-15));
        let d = c.zeta_double_direct(&s, 60).unwrap().value;
        assert!(d.overlaps(&b));
    }

    #[test]
    fn bessel_sum_and_envelope() {
        let c = ctx();
        let k = c.bessel_lattice_sum().unwrap().value;
        assert!(close(&k, 4.147_559_444_710_57e-4, 1e-18));
        assert!(k.lt(&bessel_envelope(c.prec)));
    }

    #[test]
    fn bessel_route_matches_binomial() {
        let c = ctx();
        for (n, d) in [(1, 4), (3, 4), (1, 1), (3, 2), (2, 1), (7, 2)] {
            let s = Enclosure::from_ratio(n, d, c.prec);
            let a = c.zeta_nh_bessel(&s).unwrap().value;
            let b = c.zeta_nh_binomial(&s).unwrap().value;
            assert!(a.overlaps(&b), "s = {n}/{d}: {a} vs {b}");
            assert!(a.rad() < Mag::pow2(-120));
        }
        let s = Enclosure::from_i64(2, c.prec);
        assert!(close(&c.zeta_nh_bessel(&s).unwrap().value, 0.714_358_517_938_468_3, 1e-15));
    }

}

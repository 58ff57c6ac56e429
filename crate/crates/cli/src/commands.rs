use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use cone_anomaly::bounds::{certify_all, constants_c1_c5, series_s1, Verdict};
use cone_anomaly::lattice::{bessel_envelope, ZetaNHContext};
use cone_anomaly::special::{euler_gamma, log_2pi_half, riemann_zeta_continued};
use cone_anomaly::sphere::{cancellation_check, reduction_check, sphere_identities, TailMode};
use cone_anomaly::torus::{paper_bounds, total_anomaly_torus, z1_derivative_oracle, z1_at_zero, z2_at_zero, z2_derivative_oracle};
use cone_anomaly::{Enclosure, Error, Precision, Result};

use crate::Format;

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub digits: u32,
    pub format: Format,
    pub j_cutoff: Option<u64>,
    pub n_cutoff: Option<u64>,
    pub m_cutoff: Option<u64>,
}

impl RunConfig {
    pub fn prec(&self) -> Precision {
        Precision::from_digits(self.digits)
    }

    pub fn context(&self) -> Result<ZetaNHContext> {
        let ctx = ZetaNHContext::new(self.prec());
        let (j, n, m) = (
            self.j_cutoff.unwrap_or(ctx.j_cutoff),
            self.n_cutoff.unwrap_or(ctx.lattice_cutoff),
            self.m_cutoff.unwrap_or(ctx.bessel_cutoff),
        );
        ctx.with_cutoffs(j, n, m)
    }
}

pub struct Outcome {
    pub report: Value,
    pub failures: Vec<String>,
    pub exit_code: u8,
}

impl Outcome {
    fn new(report: impl Serialize, failures: Vec<String>) -> Outcome {
        let exit_code = u8::from(!failures.is_empty());
        Outcome {
            report: serde_json::to_value(report).expect("serializable"),
            failures,
            exit_code,
        }
    }

    pub fn from_error(e: Error) -> Outcome {
        let (exit_code, best) = match &e {
            Error::PrecisionExhausted { best, .. } => (3, best.as_deref().map(|b| serde_json::to_value(b).expect("serializable"))),
            _ => (2, None),
        };
        Outcome {
            report: json!({ "error": e.to_string(), "best_effort": best }),
            failures: vec![e.to_string()],
            exit_code,
        }
    }

    pub fn envelope(&self, command: &str, config: &RunConfig) -> Value {
        json!({
            "command": command,
            "config": config,
            "passed": self.failures.is_empty(),
            "failures": self.failures,
            "report": self.report,
        })
    }
}

fn check(failures: &mut Vec<String>, ok: bool, label: &str) {
    if !ok {
        failures.push(label.to_string());
    }
}

fn parse_arg(s: &str, prec: Precision) -> Result<(Enclosure, bool)> {
    let e = Enclosure::parse(s, prec).ok_or_else(|| Error::domain("argument", format!("cannot parse {s:?} as a number")))?;
    if e.is_point() {
        Ok((e, false))
    } else {
        Ok((Enclosure::exact(e.mid().clone(), prec), true))
    }
}

pub fn sphere(
    config: &RunConfig,
    p: u32,
    max_p: u32,
    identities: bool,
    oracle_s: Option<&str>,
    oracle_terms: u64,
) -> Result<Outcome> {
    if p > max_p {
        return Err(Error::domain("sphere", format!("p = {p} exceeds --max-p {max_p}")));
    }
    let prec = config.prec();
    let mut report = cancellation_check(p, prec)?;
    let mut failures = Vec::new();
    check(&mut failures, report.cancels, "cancellation");
    check(&mut failures, report.analy_forms_agree, "analytic_term_forms_agree");
    check(&mut failures, report.volume_agrees, "volume_forms_agree");
    if identities {
        let ids = sphere_identities(p)?;
        check(&mut failures, ids.mu_identity, "mu_identity");
        check(&mut failures, ids.moments_vanish, "alternating_moments_vanish");
        check(&mut failures, ids.coefficient_sums_vanish, "coefficient_sums_vanish");
        check(&mut failures, ids.multiplicity_forms_agree, "multiplicity_forms_agree");
        check(&mut failures, ids.multiplicities_positive_integers, "multiplicities_positive_integers");
        check(&mut failures, ids.top_sum_equals_p, "alpha_weighted_top_sum");
        report.identities = Some(ids);
    }
    if let Some(s) = oracle_s {
        let (s, _) = parse_arg(s, prec)?;
        let r = reduction_check(p, &s, oracle_terms, TailMode::Hurwitz)?;
        check(&mut failures, r.agrees, "reduction_oracle");
        report.reduction = Some(r);
    }
    Ok(Outcome::new(report, failures))
}

pub fn torus(config: &RunConfig, oracles: bool) -> Result<Outcome> {
    let ctx = config.context()?;
    let report = total_anomaly_torus(&ctx, oracles)?;
    let v = &report.verdicts;
    let mut failures = Vec::new();
    check(&mut failures, v.negative, "total_negative");
    check(&mut failures, v.in_open_interval, "total_in_open_interval");
    check(&mut failures, v.in_paper_bounds, "total_in_paper_bounds");
    check(&mut failures, v.radius_ok, "total_radius");
    if let Some(o) = &report.oracles {
        check(&mut failures, o.z1.agrees, "z1_derivative_oracle");
        check(&mut failures, o.z2.agrees, "z2_derivative_oracle");
        for d in &o.decomposition {
            check(&mut failures, d.agrees_direct && d.agrees_expansion, "raw_spectrum_decomposition");
        }
    }
    Ok(Outcome::new(report, failures))
}

pub fn certify_bounds(config: &RunConfig) -> Result<Outcome> {
    let ctx = config.context()?;
    let certs = certify_all(&ctx)?;
    let failures = certs
        .iter()
        .filter(|c| c.verdict == Verdict::Fails)
        .map(|c| c.claim.clone())
        .collect();
    Ok(Outcome::new(json!({ "certificates": certs }), failures))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaKind {
    /// Riemann zeta.
    Riemann,
    /// Σ (n²+¼)^{-s}.
    Nh,
    /// Σ (n²+m²+¼)^{-s}.
    Double,
    /// Σ (√(n²+¼) ± ½)^{-s}.
    ShiftedNh,
    /// Σ (√(n²+m²+¼) ± ½)^{-s}.
    ShiftedDouble,
}

#[derive(Serialize)]
struct Route {
    method: String,
    value: Enclosure,
}

fn route(method: &str, value: Enclosure) -> Route {
    Route { method: method.into(), value }
}

fn all_overlap(routes: &[Route]) -> bool {
    routes.iter().all(|a| routes.iter().all(|b| a.value.overlaps(&b.value)))
}

pub fn zeta(config: &RunConfig, kind: ZetaKind, s: &str, deriv: bool, sign: i32) -> Result<Outcome> {
    let prec = config.prec();
    let ctx = config.context()?;
    let (s, rounded) = parse_arg(s, prec)?;
    let zero = Enclosure::zero(prec);
    let half = Enclosure::from_ratio(1, 2, prec);
    let is = |x: &Enclosure| s.is_point() && s.mid() == x.mid();
    if deriv && !is(&zero) {
        return Err(Error::domain("zeta", "--deriv is only available at s = 0"));
    }
    let mut routes = Vec::new();
    let mut extra = json!(null);
    match kind {
        ZetaKind::Riemann => {
            if deriv {
                routes.push(route("closed_form", -log_2pi_half(prec)));
            } else {
                routes.push(route("euler_maclaurin", riemann_zeta_continued(&s)?));
            }
        }
        ZetaKind::Nh => {
            if deriv {
                routes.push(route("binomial_in_zeta_r", ctx.zeta_nh_deriv_at_zero()?));
                routes.push(route("closed_form", ctx.zeta_nh_deriv_at_zero_closed()));
                extra = json!({ "paper_ref": "value at 0 of the derivative, -2 ln 2 - ln sinh(pi/2)" });
            } else if is(&half) {
                let fp = ctx.zeta_nh_finite_part()?;
                extra = serde_json::to_value(&fp).expect("serializable");
            } else {
                routes.push(route("binomial_in_zeta_r", ctx.zeta_nh_binomial(&s)?.value));
                if s.is_point() && s.is_positive() {
                    routes.push(route("bessel_poisson", ctx.zeta_nh_bessel(&s)?.value));
                }
                if s.gt(&half) {
                    routes.push(route("direct", ctx.zeta_nh_direct(&s, ctx.lattice_cutoff)?.value));
                }
            }
        }
        ZetaKind::Double => {
            if deriv {
                return Err(Error::domain("zeta", "--deriv is not available for the double series"));
            }
            if is(&half) {
                let fp = ctx.zeta_double_finite_part()?;
                extra = serde_json::to_value(&fp).expect("serializable");
            } else {
                routes.push(route("binomial_in_zeta_r_beta", ctx.zeta_double_binomial(&s)?.value));
                if s.is_positive() {
                    routes.push(route("bessel_poisson", ctx.zeta_double_continued(&s)?.value));
                }
                if s.gt(&Enclosure::one(prec)) {
                    routes.push(route("direct", ctx.zeta_double_direct(&s, ctx.lattice_cutoff)?.value));
                }
            }
        }
        ZetaKind::ShiftedNh | ZetaKind::ShiftedDouble => {
            let single = kind == ZetaKind::ShiftedNh;
            if deriv {
                let (formula, oracle) = if single {
                    let z = z2_at_zero(&ctx)?;
                    let o = z2_derivative_oracle(&ctx, &z)?;
                    (z, o)
                } else {
                    let z = z1_at_zero(&ctx)?;
                    let o = z1_derivative_oracle(&ctx, &z)?;
                    (z, o)
                };
                routes.push(route("finite_part_series", formula));
                extra = serde_json::to_value(&oracle).expect("serializable");
            } else if single {
                routes.push(route("expansion", ctx.zeta_shifted_nh_expansion(sign, &s)?.value));
                if s.gt(&Enclosure::one(prec)) {
                    routes.push(route("direct", ctx.zeta_shifted_nh(sign, &s)?.value));
                }
            } else {
                routes.push(route("expansion", ctx.zeta_shifted_double_expansion(sign, &s)?.value));
                if s.gt(&Enclosure::from_i64(2, prec)) {
                    routes.push(route("direct", ctx.zeta_shifted_double(sign, &s)?.value));
                }
            }
        }
    }
    let agree = all_overlap(&routes);
    let mut failures = Vec::new();
    check(&mut failures, agree, "routes_agree");
    if let Some(ok) = extra.get("agrees").and_then(Value::as_bool) {
        check(&mut failures, ok, "derivative_oracle");
    }
    if let Some(ok) = extra.get("routes_agree").and_then(Value::as_bool) {
        check(&mut failures, ok, "finite_part_routes_agree");
    }
    let report = json!({
        "kind": kind,
        "s": s,
        "s_rounded_to_binary": rounded,
        "derivative": deriv,
        "sign": if matches!(kind, ZetaKind::ShiftedNh | ZetaKind::ShiftedDouble) { json!(sign) } else { json!(null) },
        "routes": routes,
        "routes_agree": agree,
        "details": extra,
    });
    Ok(Outcome::new(report, failures))
}

#[derive(Serialize)]
struct Named {
    value: Enclosure,
    paper_ref: &'static str,
}

fn named(value: Enclosure, paper_ref: &'static str) -> Named {
    Named { value, paper_ref }
}

pub fn constants(config: &RunConfig) -> Result<Outcome> {
    let prec = config.prec();
    let c = constants_c1_c5(prec);
    let pb = paper_bounds(prec);
    let p = prec.with_extra_bits(16);
    let r8 = Enclosure::from_i64(8, p).sqrt()?;
    let at = r8.recip()?.atanh()?.with_prec(prec);
    let report = json!({
        "c1": named(c.c1, "Proposition 3.1"),
        "c2": named(c.c2, "Proposition 3.1"),
        "c3": named(c.c3, "Proposition 3.2"),
        "c4": named(c.c4, "Proposition 3.2"),
        "c5": named(c.c5, "Proposition 3.3"),
        "s1": named(series_s1(prec)?, "Proposition 3.1"),
        "atanh_inv_2_sqrt_2": named(at, "Proposition 3.3"),
        "euler_gamma": named(euler_gamma(prec), "§3"),
        "log_2pi": named(log_2pi_half(prec).mul_2exp(1), "§5.2"),
        "bessel_envelope": named(bessel_envelope(prec), "§5.4.1"),
        "a": named(pb.a, pb.paper_ref),
        "b": named(pb.b, pb.paper_ref),
        "a_minus_log_2pi": named(pb.a_minus_log_2pi, pb.paper_ref),
        "b_minus_log_2pi": named(pb.b_minus_log_2pi, pb.paper_ref),
    });
    Ok(Outcome::new(report, Vec::new()))
}

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cone_anomaly::bounds::{
    certify_bessel_bound, certify_closed_sums, certify_prop_3_1, certify_prop_3_2, certify_prop_3_3,
    certify_residue_sandwich, BoundCertificate, ReadingKind, Verdict,
};
use cone_anomaly::lattice::ZetaNHContext;
use cone_anomaly::sphere::{cancellation_check, reduction_check, sphere_identities, TailMode};
use cone_anomaly::torus::{total_anomaly_torus, z1_derivative_oracle, z2_derivative_oracle};
use cone_anomaly::{Enclosure, Mag, Precision};

const DIGITS: u32 = 60;

fn tol(exp10: i32) -> Mag {
    Mag::from_f64_up(10f64.powi(exp10))
}

fn prec() -> Precision {
    Precision::from_digits(DIGITS)
}

type Criterion = (&'static str, fn() -> Line);

struct Line {
    pass: bool,
    detail: String,
}

fn sphere_cancellation() -> Line {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut worst = Mag::ZERO;
    for p in 1..=8 {
        let r = cancellation_check(p, prec()).expect("sphere report");
        worst = worst.max(r.total.rad());
        if !(r.total.contains_zero() && r.total.rad() <= tol(-30)) {
            bad.push(p);
        }
    }
    let elapsed = start.elapsed();
    Line {
        pass: bad.is_empty() && elapsed <= Duration::from_secs(10),
        detail: format!(
            "p = 1..8 contain 0, failing p: {bad:?}, worst radius {:.1e}, {:.2?}",
            worst.to_f64(),
            elapsed
        ),
    }
}

fn reduction_oracle() -> Line {
    let (mut literal, mut corrected, mut cases) = (0, 0, 0);
    for p in 1..=3u32 {
        for s in [2 * p + 2, 2 * p + 4] {
            let s = Enclosure::from_i64(s as i64, prec());
            let r = reduction_check(p, &s, 50, TailMode::Hurwitz).expect("reduction check");
            let close = |e: &Enclosure| {
                let d = &r.alternating_brute - e;
                d.contains_zero() && d.rad() <= tol(-25)
            };
            cases += 1;
            literal += usize::from(close(&r.reduced_published));
            corrected += usize::from(close(&r.reduced));
        }
    }
    let mut moments = true;
    let mut mu = true;
    let mut top_2p = true;
    let mut top_p = true;
    for p in 1..=6 {
        let ids = sphere_identities(p).expect("identities");
        moments &= ids.moments_vanish;
        mu &= ids.mu_identity;
        top_2p &= ids.top_sum_equals_2p;
        top_p &= ids.top_sum_equals_p;
    }
    Line {
        pass: literal == cases && moments && mu && top_2p,
        detail: format!(
            "as stated 2p*zeta_R(s) - sum odd^-s: {literal}/{cases}; alpha-weighted top sum = 2p: {top_2p}; \
             moments vanish: {moments}; mu = n+p-1/2: {mu}; \
             [corrected -2p*zeta_R(s) - sum odd^-s: {corrected}/{cases}, top sum = p: {top_p}]"
        ),
    }
}

fn special_values() -> Line {
    let ctx = ZetaNHContext::new(prec());
    let z0 = ctx.zeta_nh_at_zero().expect("zeta at 0").value;
    let half = Enclosure::from_ratio(-1, 2, prec());
    let ok0 = z0.overlaps(&half) && z0.rad() <= tol(-30);
    let d = ctx.zeta_nh_deriv_at_zero().expect("derivative at 0");
    let closed = ctx.zeta_nh_deriv_at_zero_closed();
    let diff = &d - &closed;
    let ok1 = diff.contains_zero() && d.rad() <= tol(-30);
    Line {
        pass: ok0 && ok1,
        detail: format!("zeta(0) = {} ; zeta'(0) = {} vs closed form {}", z0.format_pm(20), d.format_pm(20), closed.format_pm(20)),
    }
}

fn residual_ok(c: &BoundCertificate, kind: ReadingKind) -> bool {
    c.reading(kind).map(|r| r.holds).unwrap_or(false)
}

fn closed_sums() -> Line {
    let certs = certify_closed_sums(prec()).expect("closed sums");
    let mut parts = Vec::new();
    let mut pass = true;
    for c in &certs {
        let ok = c.holds() && (&c.computed - &c.lower).abs_upper() <= tol(-30);
        pass &= ok;
        let note = if c.verdict == Verdict::HoldsFactorCorrected { " (index-corrected, from k=1)" } else { "" };
        parts.push(format!("{}: {}{}", c.claim, ok, note));
    }
    let as_displayed = residual_ok(&certs[0], ReadingKind::AsStated);
    Line {
        pass,
        detail: format!("{}; even-odd sum as displayed from k=2: {}", parts.join(", "), as_displayed),
    }
}

fn proposition_certificates() -> Line {
    let ctx = ZetaNHContext::new(prec());
    let p1 = certify_prop_3_1(prec()).expect("prop 3.1");
    let rest = [
        certify_prop_3_2(&ctx).expect("prop 3.2"),
        certify_prop_3_3(&ctx).expect("prop 3.3"),
        certify_residue_sandwich(&ctx).expect("residue sandwich"),
    ];
    let s1_negative = p1.computed.is_negative();
    let mut pass = p1.verdict == Verdict::HoldsAsStated && s1_negative;
    let mut parts = vec![format!("{}: {:?}", p1.claim, p1.verdict)];
    for c in &rest {
        pass &= c.holds() && c.readings.len() == 2;
        parts.push(format!("{}: {:?}", c.claim, c.verdict));
    }
    Line { pass, detail: parts.join(", ") }
}

fn bessel_bound() -> Line {
    let ctx = ZetaNHContext::new(prec());
    let c = certify_bessel_bound(&ctx).expect("bessel bound");
    Line {
        pass: c.verdict == Verdict::HoldsAsStated,
        detail: format!("sum K0 = {} in (0, {})", c.computed.format_pm(20), c.upper.format_pm(20)),
    }
}

fn torus_headline() -> Line {
    let start = Instant::now();
    let ctx = ZetaNHContext::new(prec());
    let r = total_anomaly_torus(&ctx, false).expect("torus report");
    let elapsed = start.elapsed();
    let v = &r.verdicts;
    Line {
        pass: v.negative && v.radius_ok && v.in_open_interval && v.in_paper_bounds && elapsed <= Duration::from_secs(60),
        detail: format!(
            "total = {}; negative: {}, in (-4/5, -1/4): {}, in [A - ln 2pi, B - ln 2pi] = [{}, {}]: {}, radius <= 1e-6: {}, {:.2?}",
            r.total.format_pm(20),
            v.negative,
            v.in_open_interval,
            r.paper_bounds.a_minus_log_2pi.format_pm(8),
            r.paper_bounds.b_minus_log_2pi.format_pm(8),
            v.in_paper_bounds,
            v.radius_ok,
            elapsed
        ),
    }
}

fn method_independence() -> Line {
    let ctx = ZetaNHContext::new(prec());
    let mut nh_bad = Vec::new();
    for (n, d) in [(1, 4), (3, 4), (1, 1), (3, 2), (2, 1), (7, 2)] {
        let s = Enclosure::from_ratio(n, d, prec());
        let a = ctx.zeta_nh_bessel(&s).expect("bessel route").value;
        let b = ctx.zeta_nh_binomial(&s).expect("binomial route").value;
        if !a.overlaps(&b) {
            nh_bad.push(format!("{n}/{d}"));
        }
    }
    let mut dbl_bad = Vec::new();
    for (n, d) in [(3, 4), (29, 32), (5, 4), (3, 2), (2, 1), (5, 2)] {
        let s = Enclosure::from_ratio(n, d, prec());
        let a = ctx.zeta_double_continued(&s).expect("bessel route").value;
        let b = ctx.zeta_double_binomial(&s).expect("binomial route").value;
        if !a.overlaps(&b) {
            dbl_bad.push(format!("{n}/{d}"));
        }
    }
    let fp = ctx.zeta_double_finite_part().expect("finite part");
    let nh_fp = ctx.zeta_nh_finite_part().expect("finite part");
    let s2 = cone_anomaly::bounds::series_s2(&ctx).expect("S2");
    let s3 = cone_anomaly::bounds::series_s3(&ctx).expect("S3");
    let z2 = -(&nh_fp.rz) - &s2;
    let z1 = -(&fp.trusted.rz) - &s3;
    let o2 = z2_derivative_oracle(&ctx, &z2).expect("z2 oracle");
    let o1 = z1_derivative_oracle(&ctx, &z1).expect("z1 oracle");
    Line {
        pass: nh_bad.is_empty() && dbl_bad.is_empty() && fp.routes_agree && o2.agrees,
        detail: format!(
            "single series disagree at {nh_bad:?}; double series disagree at {dbl_bad:?}; finite part routes agree: {}; \
             Z2 difference quotient {} vs {}: {}; Z1: {}",
            fp.routes_agree,
            o2.value.format_pm(16),
            z2.format_pm(16),
            o2.agrees,
            o1.agrees
        ),
    }
}

fn determinism_and_nesting() -> Line {
    let report = |d: u32| {
        let ctx = ZetaNHContext::new(Precision::from_digits(d));
        total_anomaly_torus(&ctx, false).expect("torus report")
    };
    let r40 = report(40);
    let again = report(40);
    let same = serde_json::to_string(&r40).unwrap() == serde_json::to_string(&again).unwrap();
    let r60 = report(60);
    let r80 = report(80);
    let nests = |f: fn(&cone_anomaly::torus::TorusAnomalyReport) -> &Enclosure| {
        f(&r40).contains(f(&r60)) && f(&r60).contains(f(&r80))
    };
    let nested = nests(|r| &r.total) && nests(|r| &r.z1) && nests(|r| &r.z2) && nests(|r| &r.comb_term);
    let s40 = cancellation_check(5, Precision::from_digits(40)).unwrap();
    let s80 = cancellation_check(5, Precision::from_digits(80)).unwrap();
    let sphere_nested = s40.analy_term.contains(&s80.analy_term);
    let signs = [&r40, &r60, &r80].iter().map(|r| r.total.is_positive()).collect::<Vec<_>>();
    Line {
        pass: same && nested && sphere_nested,
        detail: format!(
            "byte-identical reruns: {same}; torus enclosures nest 40 -> 60 -> 80: {nested}; sphere nests: {sphere_nested}; \
             total sign stable (positive) at 40/60/80: {signs:?}"
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("sphere cancellation", sphere_cancellation),
        ("reduction oracle", reduction_oracle),
        ("special values", special_values),
        ("closed sums", closed_sums),
        ("proposition certificates", proposition_certificates),
        ("bessel bound", bessel_bound),
        ("torus headline", torus_headline),
        ("method independence", method_independence),
        ("determinism and nesting", determinism_and_nesting),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = f();
        let tag = if line.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!line.pass);
        println!("{tag} criterion {} ({name}): {}", i + 1, line.detail);
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

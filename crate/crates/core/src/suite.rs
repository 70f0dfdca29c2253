//! The canonical verification suite: one runnable check per claim the
//! library is expected to reproduce, with every tolerance pinned here.
//!
//! Each criterion returns a pass/fail outcome with a numeric summary and,
//! for the sweep criteria, a rate-sweep CSV artifact. The CLI `theorem-suite`
//! subcommand runs all of them; the acceptance tests assert on them
//! individually.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::funcspace::TestFunction;
use crate::kernel::{
    eval_kernel, kernel_moment, normalization, riesz_kernel_eval, verify_kernel_conditions,
    KernelSpec, SamplingSpec,
};
use crate::norms::{
    holder_seminorm, modulus_profile, ModulusGrid, NormSpace, PNorm, SampledFunction,
};
use crate::operator::{apply_f, apply_f_m, taylor_remainder_error, OperatorSpec};
use crate::quad::QuadConfig;
use crate::rates::{
    check_theorem, error_curve, fit_rate, remark2_bound_check, OperatorFamily, RateModel,
    RateReport, SweepConfig,
};

pub const CRITERIA_COUNT: usize = 14;

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// (file name, file contents) artifacts for the CLI to write
    pub artifacts: Vec<(String, String)>,
}

impl CriterionOutcome {
    fn simple(id: usize, name: &'static str, passed: bool, detail: String) -> Self {
        CriterionOutcome {
            id,
            name,
            passed,
            detail,
            artifacts: Vec::new(),
        }
    }
}

/// Run criterion `id` (1..=14).
pub fn run_criterion(id: usize) -> Result<CriterionOutcome> {
    match id {
        1 => kernel_normalization(),
        2 => picard_moments(),
        3 => gauss_weierstrass_moments(),
        4 => riesz_fejer_identity(),
        5 => poisson_conditions(),
        6 => eigenfunction_identities(),
        7 => taylor_identity(),
        8 => corollary8_m0(),
        9 => corollary8_m1(),
        10 => beta_shift(),
        11 => riesz_mean_rates(),
        12 => poisson_log_case(),
        13 => remark2_bounds(),
        14 => norm_estimator_properties(),
        _ => Err(Error::param("id", format!("criterion ids are 1..=14, got {id}"))),
    }
}

/// Run every criterion in order.
pub fn run_all() -> Result<Vec<CriterionOutcome>> {
    (1..=CRITERIA_COUNT).map(run_criterion).collect()
}

fn quad() -> QuadConfig {
    QuadConfig::default()
}

fn fmt(v: f64) -> String {
    format!("{v:.6e}")
}

/// Rate-sweep CSV: data rows plus comment-prefixed report lines.
pub fn rate_sweep_csv(curve: &crate::rates::ErrorCurve, report: &RateReport) -> String {
    let mut out = String::from("scale,error,quality\n");
    for i in 0..curve.scales.len() {
        let q = if curve.quality[i].quadrature_converged {
            "ok"
        } else {
            "degraded"
        };
        out.push_str(&format!(
            "{:.16e},{:.16e},{}\n",
            curve.scales[i], curve.errors[i], q
        ));
    }
    out.push_str(&format!(
        "# model={}\n",
        match report.model {
            RateModel::Power => "power",
            RateModel::LogOverScale => "log-over-scale",
        }
    ));
    out.push_str(&format!("# scale_kind={}\n", report.scale_kind.label()));
    if let Some(s) = report.fitted_exponent {
        out.push_str(&format!("# fitted_exponent={s:.16e}\n"));
    }
    if let Some(d) = report.decay_exponent() {
        out.push_str(&format!("# decay_exponent={d:.16e}\n"));
    }
    if let Some(r2) = report.r_squared {
        out.push_str(&format!("# r_squared={r2:.16e}\n"));
    }
    if let Some(sp) = report.ratio_spread {
        out.push_str(&format!("# ratio_spread={sp:.16e}\n"));
    }
    out.push_str(&format!(
        "# theoretical_exponent={:.16e}\n",
        report.theoretical_exponent
    ));
    out.push_str(&format!("# tolerance={:.16e}\n", report.tolerance));
    out.push_str(&format!(
        "# verdict={}\n",
        if report.passed() { "pass" } else { "fail" }
    ));
    out
}

fn sweep_outcome(
    id: usize,
    name: &'static str,
    artifacts: Vec<(String, String)>,
    passed: bool,
    detail: String,
) -> CriterionOutcome {
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        artifacts,
    }
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

fn kernel_normalization() -> Result<CriterionOutcome> {
    let specs = vec![
        KernelSpec::fejer(),
        KernelSpec::riesz(0.5)?,
        KernelSpec::riesz(1.0)?,
        KernelSpec::riesz(2.5)?,
        KernelSpec::poisson(),
        KernelSpec::picard(),
        KernelSpec::gauss_weierstrass(),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for spec in &specs {
        let n = normalization(spec, &quad())?;
        let dev = (n.value - 1.0).abs();
        passed &= dev <= 1e-6;
        parts.push(format!("{}: dev {}", spec.name(), fmt(dev)));
    }
    Ok(CriterionOutcome::simple(
        1,
        "kernel-normalization",
        passed,
        format!("|∫K - 1| <= 1e-6 for all kernels; {}", parts.join(", ")),
    ))
}

fn picard_moments() -> Result<CriterionOutcome> {
    let k = KernelSpec::picard();
    let mut passed = true;
    let mut worst = 0.0f64;
    let mut fact = 1.0f64;
    for j in 0..=6u32 {
        if j > 0 {
            fact *= j as f64;
        }
        let m = kernel_moment(&k, j, &quad())?;
        let v = m.value.finite().ok_or_else(|| {
            Error::InvalidConfiguration(format!("picard moment {j} reported divergent"))
        })?;
        let dev = (v - fact / 2.0).abs();
        worst = worst.max(dev);
        passed &= dev <= 1e-8;
    }
    Ok(CriterionOutcome::simple(
        2,
        "picard-moments",
        passed,
        format!("∫u^j K = j!/2 for j = 0..6, worst deviation {}", fmt(worst)),
    ))
}

fn gauss_weierstrass_moments() -> Result<CriterionOutcome> {
    let k = KernelSpec::gauss_weierstrass();
    let expected = [
        0.5,
        1.0 / (2.0 * PI.sqrt()),
        1.0 / 4.0,
        1.0 / (2.0 * PI.sqrt()),
        3.0 / 8.0,
        2.0 / (2.0 * PI.sqrt()),
    ];
    let mut passed = true;
    let mut worst = 0.0f64;
    for (j, &e) in expected.iter().enumerate() {
        let m = kernel_moment(&k, j as u32, &quad())?;
        let v = m.value.finite().ok_or_else(|| {
            Error::InvalidConfiguration(format!("gauss-weierstrass moment {j} reported divergent"))
        })?;
        let dev = (v - e).abs();
        worst = worst.max(dev);
        passed &= dev <= 1e-8;
    }
    Ok(CriterionOutcome::simple(
        3,
        "gauss-weierstrass-moments",
        passed,
        format!("moment table m = 0..5, worst deviation {}", fmt(worst)),
    ))
}

fn riesz_fejer_identity() -> Result<CriterionOutcome> {
    let fejer = KernelSpec::fejer();
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let t = -50.0 + 100.0 * i as f64 / 999.0;
        let d = (riesz_kernel_eval(1.0, t)? - eval_kernel(&fejer, t)?).abs();
        worst = worst.max(d);
    }
    Ok(CriterionOutcome::simple(
        4,
        "riesz-fejer-identity",
        worst < 1e-8,
        format!("max |K_R(1) - K_σ| over 1000 points in [-50, 50]: {}", fmt(worst)),
    ))
}

fn poisson_conditions() -> Result<CriterionOutcome> {
    let rep = verify_kernel_conditions(&KernelSpec::poisson(), &quad(), &SamplingSpec::default())?;
    let j1_divergent = rep.moment_status[1].1.is_divergent();
    let passed = j1_divergent && rep.conditions_satisfied();
    Ok(CriterionOutcome::simple(
        5,
        "poisson-conditions",
        passed,
        format!(
            "moment j=1 divergent: {j1_divergent}; normalization dev {}; asymmetry {}",
            fmt((rep.normalization_value - 1.0).abs()),
            fmt(rep.symmetric_max_asymmetry)
        ),
    ))
}

fn eigenfunction_identities() -> Result<CriterionOutcome> {
    let f = TestFunction::cosine();
    let xs = [0.0, 1.0, 2.5];
    let mut worst = 0.0f64;
    let mut passed = true;
    for &r in &[0.05, 0.2] {
        for &x in &xs {
            let p = apply_f(&OperatorSpec::picard(r, 0)?, &f, x, &quad())?.value;
            let dp = (p - x.cos() / (1.0 + r * r)).abs();
            let w = apply_f(&OperatorSpec::gauss_weierstrass(r, 0)?, &f, x, &quad())?.value;
            let dw = (w - (-r).exp() * x.cos()).abs();
            let q = apply_f(&OperatorSpec::poisson(r, 0)?, &f, x, &quad())?.value;
            let dq = (q - (-r).exp() * x.cos()).abs();
            for d in [dp, dw, dq] {
                worst = worst.max(d);
                passed &= d <= 1e-6;
            }
        }
    }
    Ok(CriterionOutcome::simple(
        6,
        "eigenfunction-identities",
        passed,
        format!(
            "P_r cos = cos/(1+r²), W_r cos = e^-r cos, P̄_ε cos = e^-ε cos; worst {}",
            fmt(worst)
        ),
    ))
}

fn taylor_identity() -> Result<CriterionOutcome> {
    let fns = [
        TestFunction::cosine(),
        TestFunction::zero_mean_bump_antiderivative(0.5)?,
    ];
    let specs = [
        OperatorSpec::picard(0.3, 1)?,
        OperatorSpec::gauss_weierstrass(0.3, 1)?,
    ];
    let cfg = quad();
    let mut worst_ratio = 0.0f64;
    let mut passed = true;
    for spec in &specs {
        for f in &fns {
            for i in 0..10 {
                let x = -2.7 + 0.6 * i as f64;
                let fm = apply_f_m(spec, f, x, &cfg)?;
                let rem = taylor_remainder_error(spec, f, x, &cfg)?;
                let lhs = f.eval(x) - fm.value;
                let diff = (lhs - rem.value).abs();
                let budget = 2.0 * (fm.error_estimate + rem.error_estimate + 1e-8);
                worst_ratio = worst_ratio.max(diff / budget);
                passed &= diff < budget;
            }
        }
    }
    Ok(CriterionOutcome::simple(
        7,
        "taylor-identity",
        passed,
        format!(
            "f - F_[λ,1]f equals the remainder integral within 2x the quadrature budget; \
             worst diff/budget {}",
            fmt(worst_ratio)
        ),
    ))
}

fn corollary8_m0() -> Result<CriterionOutcome> {
    let bump = TestFunction::holder_bump(0.5)?;
    let picard_cfg = SweepConfig::new(
        OperatorFamily::LineOperator {
            kernel: KernelSpec::picard(),
            m: 0,
        },
        bump,
        PNorm::Infinity,
        0.0,
    )
    .with_log_scales(1e-3, 1e-1, 8)
    .with_norm_points(1 << 13);
    let picard_report = check_theorem(&picard_cfg)?;
    let picard_curve = error_curve(&picard_cfg)?;

    let gw_cfg = SweepConfig::new(
        OperatorFamily::LineOperator {
            kernel: KernelSpec::gauss_weierstrass(),
            m: 0,
        },
        TestFunction::holder_bump(0.5)?,
        PNorm::Infinity,
        0.0,
    )
    .with_log_scales(1e-3, 1e-1, 8)
    .with_norm_points(1 << 13);
    let gw_report = check_theorem(&gw_cfg)?;
    let gw_curve = error_curve(&gw_cfg)?;

    let p_dec = picard_report.decay_exponent().unwrap_or(f64::NAN);
    let w_dec = gw_report.decay_exponent().unwrap_or(f64::NAN);
    let passed = (p_dec - 0.5).abs() <= 0.1 && (w_dec - 0.25).abs() <= 0.1;
    Ok(sweep_outcome(
        8,
        "picard-gw-rates-m0",
        vec![
            (
                "c08_picard_bump05_m0.csv".into(),
                rate_sweep_csv(&picard_curve, &picard_report),
            ),
            (
                "c08_gauss_weierstrass_bump05_m0.csv".into(),
                rate_sweep_csv(&gw_curve, &gw_report),
            ),
        ],
        passed,
        format!(
            "picard decay {} (want 0.5 ± 0.1), gauss-weierstrass decay {} (want 0.25 ± 0.1)",
            fmt(p_dec),
            fmt(w_dec)
        ),
    ))
}

fn corollary8_m1() -> Result<CriterionOutcome> {
    let cfg = SweepConfig::new(
        OperatorFamily::LineOperator {
            kernel: KernelSpec::picard(),
            m: 1,
        },
        TestFunction::cosine(),
        PNorm::Infinity,
        0.0,
    )
    .with_log_scales(1e-3, 1e-1, 8)
    .with_norm_points(1 << 13);
    let curve = error_curve(&cfg)?;
    let report = fit_rate(&curve, RateModel::Power, 2.0, 0.1)?;
    let dec = report.decay_exponent().unwrap_or(f64::NAN);

    // pointwise amplitude against the closed form (1+3r²)/(1+r²)²
    let f = TestFunction::cosine();
    let mut worst = 0.0f64;
    for &r in &cfg.scales {
        let spec = OperatorSpec::picard(r, 1)?;
        let got = apply_f_m(&spec, &f, 0.0, &quad())?.value;
        let want = (1.0 + 3.0 * r * r) / (1.0 + r * r).powi(2);
        worst = worst.max((got - want).abs());
    }
    let passed = (dec - 2.0).abs() <= 0.1 && worst <= 1e-5;
    Ok(sweep_outcome(
        9,
        "picard-rate-m1",
        vec![(
            "c09_picard_cosine_m1.csv".into(),
            rate_sweep_csv(&curve, &report),
        )],
        passed,
        format!(
            "decay {} (want 2 ± 0.1); pointwise closed-form deviation {} (<= 1e-5)",
            fmt(dec),
            fmt(worst)
        ),
    ))
}

fn beta_shift() -> Result<CriterionOutcome> {
    let cfg = SweepConfig::new(
        OperatorFamily::LineOperator {
            kernel: KernelSpec::picard(),
            m: 0,
        },
        TestFunction::holder_bump(0.5)?,
        PNorm::Infinity,
        0.25,
    )
    .with_log_scales(1e-3, 1e-1, 8)
    .with_norm_points(1 << 13);
    let report = check_theorem(&cfg)?;
    let curve = error_curve(&cfg)?;
    let dec = report.decay_exponent().unwrap_or(f64::NAN);
    let passed = (dec - 0.25).abs() <= 0.1;
    Ok(sweep_outcome(
        10,
        "beta-shift",
        vec![(
            "c10_picard_bump05_beta025.csv".into(),
            rate_sweep_csv(&curve, &report),
        )],
        passed,
        format!("decay with beta = 0.25: {} (want 0.25 ± 0.1)", fmt(dec)),
    ))
}

fn riesz_mean_rates() -> Result<CriterionOutcome> {
    let scales: Vec<f64> = (3..=10).map(|k| (1u64 << k) as f64).collect();
    let mut artifacts = Vec::new();
    let mut details = Vec::new();
    let mut passed = true;
    for &gamma in &[1.0, 2.0] {
        let cfg = SweepConfig::new(
            OperatorFamily::RieszMean { gamma },
            TestFunction::abs_sin_periodic(0.5)?,
            PNorm::Infinity,
            0.0,
        )
        .with_scales(scales.clone())
        .with_norm_points(1 << 13);
        let report = check_theorem(&cfg)?;
        let curve = error_curve(&cfg)?;
        let dec = report.decay_exponent().unwrap_or(f64::NAN);
        passed &= (dec - 0.5).abs() <= 0.15;
        details.push(format!("gamma {gamma}: decay {}", fmt(dec)));
        artifacts.push((
            format!("c11_riesz_mean_gamma{gamma}_abs_sin05.csv"),
            rate_sweep_csv(&curve, &report),
        ));
    }
    Ok(sweep_outcome(
        11,
        "riesz-mean-rates",
        artifacts,
        passed,
        format!("decay in n (want 0.5 ± 0.15): {}", details.join("; ")),
    ))
}

fn poisson_log_case() -> Result<CriterionOutcome> {
    let cfg = SweepConfig::new(
        OperatorFamily::LineOperator {
            kernel: KernelSpec::poisson(),
            m: 0,
        },
        TestFunction::abs_sin_periodic(1.0)?,
        PNorm::Infinity,
        0.0,
    )
    .with_log_scales(1e-3, 1e-1, 8)
    .with_norm_points(1 << 13);
    let report = check_theorem(&cfg)?;
    let curve = error_curve(&cfg)?;
    let spread = report.ratio_spread.unwrap_or(f64::NAN);
    Ok(sweep_outcome(
        12,
        "poisson-log-case",
        vec![(
            "c12_poisson_abs_sin1_log.csv".into(),
            rate_sweep_csv(&curve, &report),
        )],
        report.passed(),
        format!("error/(ε ln(1/ε)) spread {} (< 5)", fmt(spread)),
    ))
}

fn remark2_bounds() -> Result<CriterionOutcome> {
    let cfg = quad();
    let lambdas = [1.0, 2.0, 5.0, 10.0];
    let cosine = TestFunction::cosine();
    let zmba = TestFunction::zero_mean_bump_antiderivative(0.5)?;
    let picard = KernelSpec::picard();
    let gw = KernelSpec::gauss_weierstrass();
    let cases: Vec<(KernelSpec, usize, &TestFunction, PNorm, &str)> = vec![
        (picard, 0, &cosine, PNorm::Infinity, "picard m0 cos p=inf"),
        (picard, 1, &cosine, PNorm::Infinity, "picard m1 cos p=inf"),
        (gw, 0, &cosine, PNorm::Infinity, "gw m0 cos p=inf"),
        (gw, 1, &cosine, PNorm::Infinity, "gw m1 cos p=inf"),
        (picard, 1, &zmba, PNorm::Finite(1.0), "picard m1 zmba p=1"),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (kernel, m, f, p, label) in cases {
        let rep = remark2_bound_check(&kernel, m, f, p, &lambdas, &cfg, 1 << 12)?;
        passed &= rep.pass;
        let worst = rep
            .lhs_norms
            .iter()
            .zip(&rep.bounds)
            .map(|(l, b)| l / b)
            .fold(0.0f64, f64::max);
        parts.push(format!("{label}: max lhs/bound {}", fmt(worst)));
    }
    Ok(CriterionOutcome::simple(
        13,
        "remark2-bounds",
        passed,
        parts.join("; "),
    ))
}

fn norm_estimator_properties() -> Result<CriterionOutcome> {
    let grid = ModulusGrid::default();
    let mut passed = true;
    let mut parts = Vec::new();

    // (a) exact monotonicity on ladder-commensurate thresholds 2^(j/4 - 9)
    let ts: Vec<f64> = (0..24)
        .map(|j| ((j as f64 / 4.0 - 9.0) * std::f64::consts::LN_2).exp())
        .collect();
    for f in [TestFunction::holder_bump(0.5)?, TestFunction::cosine()] {
        let vals = modulus_profile(&f, 0, &ts, PNorm::Infinity, &grid)?;
        let monotone = vals.windows(2).all(|w| w[1] >= w[0]);
        passed &= monotone;
        parts.push(format!("modulus monotone ({}): {monotone}", f.name()));
    }

    // (b) certification slopes for the bump family
    for &alpha in &[0.3, 0.5, 0.8] {
        let f = TestFunction::holder_bump(alpha)?;
        let slope = certification_slope(&f, 0)?;
        let dev = (slope - alpha).abs();
        passed &= dev <= 0.05;
        parts.push(format!("bump({alpha}) slope {}", fmt(slope)));
    }

    // (c) seminorm stability under grid doubling
    let f = TestFunction::holder_bump(0.5)?;
    let space = NormSpace::power(PNorm::Infinity, 0.25)?;
    let coarse = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 15)?;
    let fine = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 16)?;
    let a = holder_seminorm(&coarse, &space)?;
    let b = holder_seminorm(&fine, &space)?;
    let rel = (a - b).abs() / b;
    passed &= rel < 0.05;
    parts.push(format!("seminorm refinement drift {}", fmt(rel)));

    Ok(CriterionOutcome::simple(
        14,
        "norm-estimators",
        passed,
        parts.join("; "),
    ))
}

/// Log-log slope of the modulus of f^(j) over ladder thresholds in
/// [1e-4, 1e-1].
pub fn certification_slope(f: &TestFunction, derivative_order: usize) -> Result<f64> {
    let ratio = std::f64::consts::LN_2 / 4.0;
    // ladder-aligned thresholds spanning [1e-4, 1e-1]
    let j_lo = ((1e-4f64).ln() / ratio).ceil() as i64;
    let j_hi = ((1e-1f64).ln() / ratio).floor() as i64;
    let ts: Vec<f64> = (j_lo..=j_hi)
        .step_by(2)
        .map(|j| (j as f64 * ratio).exp())
        .collect();
    let vals = modulus_profile(f, derivative_order, &ts, PNorm::Infinity, &ModulusGrid::default())?;
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = vals
        .iter()
        .map(|v| {
            if *v > 0.0 {
                v.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::InvalidConfiguration(
            "modulus vanished on the certification range".into(),
        ));
    }
    let n = xs.len() as f64;
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_id_bounds() {
        assert!(run_criterion(0).is_err());
        assert!(run_criterion(15).is_err());
    }

    #[test]
    fn csv_format_is_stable() {
        let curve = crate::rates::ErrorCurve {
            scales: vec![0.1, 0.01],
            errors: vec![0.5, 0.05],
            quality: vec![
                crate::rates::PointQuality {
                    quadrature_converged: true,
                    max_error_estimate: 0.0,
                };
                2
            ],
            scale_kind: crate::rates::ScaleKind::R,
        };
        let report = RateReport {
            model: RateModel::Power,
            fitted_exponent: Some(1.0),
            r_squared: Some(1.0),
            ratio_spread: None,
            theoretical_exponent: 1.0,
            scale_kind: crate::rates::ScaleKind::R,
            verdict: crate::rates::Verdict::Pass,
            tolerance: 0.1,
        };
        let csv = rate_sweep_csv(&curve, &report);
        assert!(csv.starts_with("scale,error,quality\n"));
        assert!(csv.contains("# model=power"));
        assert!(csv.contains("# verdict=pass"));
        assert!(csv.contains("1.0000000000000001e-1,5.0000000000000000e-1,ok"));
    }
}

// temporary diagnostics
use holder_approx::funcspace::TestFunction;
use holder_approx::kernel::KernelSpec;
use holder_approx::norms::{
    generalized_holder_norm, holder_seminorm, lp_norm, NormSpace, PNorm,
};
use holder_approx::operator::{apply_f, OperatorSpec};
use holder_approx::quad::QuadConfig;
use holder_approx::rates::{error_curve, OperatorFamily, SweepConfig};

#[test]
fn probe_picard_bump_curve() {
    let cfg = SweepConfig::new(
        OperatorFamily::LineOperator {
            kernel: KernelSpec::picard(),
            m: 0,
        },
        TestFunction::holder_bump(0.5).unwrap(),
        PNorm::Infinity,
        0.0,
    )
    .with_log_scales(1e-3, 1e-1, 8)
    .with_norm_points(1 << 13);
    let curve = error_curve(&cfg).unwrap();
    for i in 0..curve.scales.len() {
        let r = curve.scales[i];
        let gamma15 = 0.5 * std::f64::consts::PI.sqrt(); // Γ(1.5)
        println!(
            "r = {:.4e}  err = {:.6e}  E0_closed ~ {:.6e}  ratio {:.3}  clean {}",
            r,
            curve.errors[i],
            gamma15 * r.sqrt(),
            curve.errors[i] / (gamma15 * r.sqrt()),
            curve.quality[i].quadrature_converged
        );
    }

    // direct peak check at the smallest r
    let f = TestFunction::holder_bump(0.5).unwrap();
    let r = 1e-3;
    let spec = OperatorSpec::picard(r, 0).unwrap();
    let e0 = apply_f(&spec, &f, 0.0, &QuadConfig::default()).unwrap().value - f.eval(0.0);
    println!("E(0) at r=1e-3: {e0:.6e} (expect ~ -2.8e-2)");

    // seminorm decomposition at two r values
    for &r in &[1e-3, 1e-2] {
        let spec = OperatorSpec::picard(r, 0).unwrap();
        let w = 3.0;
        let n = 1 << 13;
        let step = 2.0 * w / n as f64;
        let vals: Vec<f64> = (0..n)
            .map(|i| {
                let x = -w + (i as f64 + 0.5) * step;
                apply_f(&spec, &f, x, &QuadConfig::default()).unwrap().value - f.eval(x)
            })
            .collect();
        let g = holder_approx::norms::SampledFunction::new(
            vals,
            -w,
            step,
            holder_approx::norms::DomainKind::Line,
        )
        .unwrap();
        let sup = lp_norm(&g, PNorm::Infinity).unwrap();
        let s0 = holder_seminorm(&g, &NormSpace::power(PNorm::Infinity, 0.0).unwrap()).unwrap();
        let s25 = holder_seminorm(&g, &NormSpace::power(PNorm::Infinity, 0.25).unwrap()).unwrap();
        let g0 = generalized_holder_norm(&g, &NormSpace::power(PNorm::Infinity, 0.0).unwrap()).unwrap();
        println!(
            "r={r:.1e}: sup {sup:.4e}  semi(b=0) {s0:.4e}  semi(b=.25) {s25:.4e}  gen(b=0) {g0:.4e}"
        );
    }
}

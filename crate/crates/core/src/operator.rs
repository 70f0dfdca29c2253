//! The convolution operators F_λ and F_{λ,m} over any kernel/test-function
//! pair, plus the periodic Riesz summability means.
//!
//! Line operators integrate in the substituted variable u = λ(t - x), so the
//! kernel (whose decay is known analytically) determines truncation and f is
//! evaluated at x + u/λ. Compactly supported f reduces the integral to an
//! exact finite window. For 2π-periodic f under the Poisson kernel the
//! substituted integral converges too slowly to truncate at the required
//! tolerances, so the operator is evaluated against the exact periodization
//! of the kernel over one period instead (the classical disk Poisson kernel).

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::funcspace::{Domain, TestFunction};
use crate::kernel::{self, KernelId, KernelSpec};
use crate::quad::{integrate_interval, integrate_panels, QuadConfig, QuadResult};

/// A scaled (and optionally Taylor-augmented) operator instance.
#[derive(Debug, Clone, Copy)]
pub struct OperatorSpec {
    pub kernel: KernelSpec,
    pub lambda: f64,
    /// Taylor order; 0 is the plain operator
    pub m: usize,
}

impl OperatorSpec {
    pub fn new(kernel: KernelSpec, lambda: f64, m: usize) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::param("lambda", format!("must be positive, got {lambda}")));
        }
        Ok(OperatorSpec { kernel, lambda, m })
    }

    /// Picard integral P_r: λ = 1/r.
    pub fn picard(r: f64, m: usize) -> Result<Self> {
        OperatorSpec::new(KernelSpec::picard(), 1.0 / check_scale("r", r)?, m)
    }

    /// Gauss-Weierstrass integral W_r: λ = 1/(2√r), the heat-semigroup
    /// parameterization under which W_r cos = e^{-r} cos.
    pub fn gauss_weierstrass(r: f64, m: usize) -> Result<Self> {
        OperatorSpec::new(
            KernelSpec::gauss_weierstrass(),
            1.0 / (2.0 * check_scale("r", r)?.sqrt()),
            m,
        )
    }

    /// Poisson integral P̄_ε: λ = 1/ε.
    pub fn poisson(eps: f64, m: usize) -> Result<Self> {
        OperatorSpec::new(KernelSpec::poisson(), 1.0 / check_scale("eps", eps)?, m)
    }
}

fn check_scale(name: &'static str, v: f64) -> Result<f64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::param(name, format!("must be positive, got {v}")));
    }
    Ok(v)
}

/// ∫ g(u) K(u) du with kernel-aware truncation.
///
/// `weight_power` and `prefactor` describe the envelope |g(u)| <= prefactor *
/// |u|^weight_power used for the tail bound; `support_u`, when given, is a
/// window outside of which g vanishes identically (the integral is then
/// exact, with no tail term, unless the kernel radius clips it).
pub(crate) fn integrate_against_kernel<G: Fn(f64) -> f64>(
    kernel: &KernelSpec,
    g: G,
    weight_power: u32,
    prefactor: f64,
    support_u: Option<(f64, f64)>,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    // half the budget goes to truncation, half to the panel quadrature
    let (rk, kernel_tail, osc_width) =
        kernel::line_truncation(kernel, weight_power, prefactor, 0.5 * cfg.abs_tol);
    let (mut lo, mut hi, tail) = match support_u {
        Some((a, b)) => {
            let clipped = a < -rk || b > rk;
            (a.max(-rk), b.min(rk), if clipped { kernel_tail } else { 0.0 })
        }
        None => (-rk, rk, kernel_tail),
    };
    if !(lo < hi) {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: tail,
            subdivisions_used: 0,
            converged: true,
        });
    }
    // keep a sliver of margin so GK nodes never probe exactly at support ends
    lo -= 1e-12;
    hi += 1e-12;

    let mut cuts = vec![lo];
    if lo < 0.0 && 0.0 < hi {
        cuts.push(0.0);
    }
    cuts.push(hi);

    // oscillatory kernels need panels no wider than a half period
    let width = match osc_width {
        Some(w) => {
            let total = hi - lo;
            let max_panels = 120_000.0;
            w.max(total / max_panels)
        }
        None => f64::INFINITY,
    };
    let mut panels = Vec::new();
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let n = ((b - a) / width).ceil().max(1.0) as usize;
        let h = (b - a) / n as f64;
        for i in 0..n {
            panels.push((a + i as f64 * h, a + (i + 1) as f64 * h));
        }
    }

    let integrand = |u: f64| g(u) * kernel::eval_unchecked(kernel, u);
    let quad_cfg = QuadConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        ..cfg.clone()
    };
    let mut res = integrate_panels(&integrand, &panels, &quad_cfg)?;
    res.error_estimate += tail;
    if res.error_estimate > cfg.abs_tol.max(cfg.rel_tol * res.value.abs()) {
        res.converged = false;
    }
    Ok(res)
}

/// λ ∫ g(t) K(λ(t-x)) dt for an arbitrary evaluable g; the low-level entry
/// point behind [`apply_f`], exposed so tests can drive constants and linear
/// combinations that are not `TestFunction`s.
pub fn convolve_line<G: Fn(f64) -> f64>(
    kernel: &KernelSpec,
    lambda: f64,
    g: G,
    g_support: Option<(f64, f64)>,
    g_sup_bound: f64,
    x: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    check_scale("lambda", lambda)?;
    let support_u = g_support.map(|(a, b)| (lambda * (a - x), lambda * (b - x)));
    integrate_against_kernel(
        kernel,
        |u| g(x + u / lambda),
        0,
        g_sup_bound,
        support_u,
        cfg,
    )
}

/// F_λ(f; x) = λ ∫ f(t) K(λ(t-x)) dt.
pub fn apply_f(spec: &OperatorSpec, f: &TestFunction, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if spec.m != 0 {
        return Err(Error::param("m", "apply_f requires the plain operator (m = 0)"));
    }
    apply_f_inner(spec, f, x, cfg)
}

fn apply_f_inner(spec: &OperatorSpec, f: &TestFunction, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if spec.kernel.id() == KernelId::Poisson && f.is_periodic() {
        return poisson_periodic_apply(spec.lambda, f, x, cfg);
    }
    let support = match f.domain() {
        Domain::Line { support_radius } => Some((-support_radius, support_radius)),
        Domain::Periodic => None,
    };
    convolve_line(&spec.kernel, spec.lambda, |t| f.eval(t), support, f.sup_bound(), x, cfg)
}

/// Poisson operator on periodic f via the exact periodized kernel: the
/// lattice sum of ε/(π(ε² + s²)) over 2π shifts has the stable closed form in
/// [`kernel::poisson_periodized`], and one period of quadrature replaces an
/// intractably long oscillatory line integral.
fn poisson_periodic_apply(
    lambda: f64,
    f: &TestFunction,
    x: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    let eps = 1.0 / lambda;
    let g = |s: f64| f.eval(x + s) * kernel::poisson_periodized(eps, s);
    let w = (8.0 * eps).min(0.5 * PI);
    let panels = [(-PI, -w), (-w, 0.0), (0.0, w), (w, PI)];
    integrate_panels(&g, &panels, cfg)
}

/// F_{λ,m}(f; x) in the rewritten form
/// Σ_{j=0}^m ((-1)^j / j!) λ ∫ f^(j)(t + x) t^j K(λt) dt.
pub fn apply_f_m(spec: &OperatorSpec, f: &TestFunction, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    let m = spec.m;
    // surface the capability error before any quadrature
    f.derivative(m, 0.0)?;
    if m == 0 {
        return apply_f_inner(spec, f, x, cfg);
    }
    for j in 1..=m {
        if kernel::moment_is_divergent(&spec.kernel, j as u32) {
            return Err(Error::UnsupportedConfiguration(format!(
                "kernel {} has a divergent moment at order {j}; F_{{λ,{m}}} is not defined",
                spec.kernel.name()
            )));
        }
    }
    let lambda = spec.lambda;
    let support = match f.domain() {
        Domain::Line { support_radius } => Some((-support_radius, support_radius)),
        Domain::Periodic => None,
    };
    let mut total = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
        subdivisions_used: 0,
        converged: true,
    };
    for j in 0..=m {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let factorial: f64 = (1..=j).map(|k| k as f64).product::<f64>().max(1.0);
        let coeff = sign / factorial;
        let support_u = support.map(|(a, b)| (lambda * (a - x), lambda * (b - x)));
        let pref = f.sup_bound_deriv(j) / (factorial * lambda.powi(j as i32));
        let res = integrate_against_kernel(
            &spec.kernel,
            |u| {
                let t = u / lambda;
                coeff * f.derivative(j, x + t).expect("order checked") * t.powi(j as i32)
            },
            j as u32,
            pref,
            support_u,
            cfg,
        )?;
        total.value += res.value;
        total.error_estimate += res.error_estimate;
        total.subdivisions_used += res.subdivisions_used;
        total.converged &= res.converged;
    }
    Ok(total)
}

/// The Taylor-remainder representation of f - F_{λ,m}f:
/// λ ∫ (t^m/(m-1)!) (∫_0^1 (1-u)^(m-1) Δ_{ut} f^(m)(x-t) du) K(λt) dt.
/// The tolerance budget is split evenly between the inner and outer
/// quadratures.
pub fn taylor_remainder_error(
    spec: &OperatorSpec,
    f: &TestFunction,
    x: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    let m = spec.m;
    if m == 0 {
        return Err(Error::param("m", "the Taylor remainder needs m >= 1"));
    }
    f.derivative(m, 0.0)?;
    for j in 1..=m {
        if kernel::moment_is_divergent(&spec.kernel, j as u32) {
            return Err(Error::UnsupportedConfiguration(format!(
                "kernel {} has a divergent moment at order {j}",
                spec.kernel.name()
            )));
        }
    }
    let lambda = spec.lambda;
    let inner_cfg = QuadConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        rel_tol: cfg.rel_tol,
        max_subdivisions: 200,
        truncation_rule: cfg.truncation_rule,
    };
    let fact_m1: f64 = (1..m).map(|k| k as f64).product::<f64>().max(1.0);
    let inner = move |t: f64| -> f64 {
        let base = f.derivative(m, x - t).expect("order checked");
        let g = |u: f64| {
            let w = if m == 1 { 1.0 } else { (1.0 - u).powi((m - 1) as i32) };
            w * (f.derivative(m, x - t + u * t).expect("order checked") - base)
        };
        integrate_interval(&g, 0.0, 1.0, &inner_cfg)
            .expect("unit interval is valid")
            .value
    };
    // the difference segment [x-t, x] must meet supp f^(m) for a nonzero value
    let support_u = match f.domain() {
        Domain::Line { support_radius } => {
            let r = support_radius + x.abs() + 1.0;
            Some((-lambda * r, lambda * r))
        }
        Domain::Periodic => None,
    };
    let fact_m: f64 = fact_m1 * m as f64;
    let pref = 2.0 * f.sup_bound_deriv(m) / (fact_m * lambda.powi(m as i32));
    integrate_against_kernel(
        &spec.kernel,
        |u| {
            let t = u / lambda;
            t.powi(m as i32) / fact_m1 * inner(t)
        },
        m as u32,
        pref,
        support_u,
        cfg,
    )
}

/// Fourier coefficients c_k = (1/2π) ∫_0^2π f(x) e^{-ikx} dx for
/// k = -k_max..=k_max, by an equispaced trapezoid sum of size `grid_size`
/// (spectrally accurate for smooth f; for rough f the aliasing error is
/// bounded by the tail Σ_{j≠0} |c_{k+j·grid_size}| of the true coefficients).
pub fn fourier_coefficients(
    f: &TestFunction,
    k_max: usize,
    grid_size: usize,
) -> Result<Vec<Complex64>> {
    if !f.is_periodic() {
        return Err(Error::DomainMismatch(format!(
            "{} is not periodic; Fourier coefficients need a 2π-periodic function",
            f.name()
        )));
    }
    if k_max == 0 {
        return Err(Error::param("k_max", "must be at least 1"));
    }
    if grid_size < 4 * k_max {
        return Err(Error::param(
            "grid_size",
            format!("must be at least 4*k_max = {}, got {grid_size}", 4 * k_max),
        ));
    }
    let n = grid_size;
    let mut buf: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(f.eval(2.0 * PI * j as f64 / n as f64), 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mut out = Vec::with_capacity(2 * k_max + 1);
    for k in -(k_max as i64)..=(k_max as i64) {
        let idx = k.rem_euclid(n as i64) as usize;
        out.push(buf[idx] / n as f64);
    }
    Ok(out)
}

/// Parameters of the Riesz mean R_n(γ, f).
#[derive(Debug, Clone, Copy)]
pub struct PeriodicMeanSpec {
    pub gamma: f64,
    pub n: usize,
    pub coeff_grid_size: usize,
}

impl PeriodicMeanSpec {
    pub fn new(gamma: f64, n: usize) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::param("gamma", format!("must be positive, got {gamma}")));
        }
        if n == 0 {
            return Err(Error::param("n", "must be at least 1"));
        }
        Ok(PeriodicMeanSpec {
            gamma,
            n,
            coeff_grid_size: 4096.max((4 * n).next_power_of_two()),
        })
    }

    pub fn with_coeff_grid_size(mut self, size: usize) -> Result<Self> {
        if !size.is_power_of_two() || size < 4 * self.n {
            return Err(Error::param(
                "coeff_grid_size",
                format!("must be a power of two >= 4n = {}, got {size}", 4 * self.n),
            ));
        }
        self.coeff_grid_size = size;
        Ok(self)
    }
}

/// R_n(γ, f; ·) with the Fourier coefficients computed once at construction;
/// evaluation at many x then costs O(n) each and is thread-safe.
pub struct RieszMeanOperator {
    spec: PeriodicMeanSpec,
    /// c_k for k = -n..=n
    coeffs: Vec<Complex64>,
}

impl RieszMeanOperator {
    pub fn new(spec: PeriodicMeanSpec, f: &TestFunction) -> Result<Self> {
        let coeffs = fourier_coefficients(f, spec.n, spec.coeff_grid_size)?;
        Ok(RieszMeanOperator { spec, coeffs })
    }

    /// Σ_{k=-n}^{n} (1 - |k|/n)^γ c_k e^{ikx}; the weight vanishes at |k| = n.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.spec.n;
        let gamma = self.spec.gamma;
        let rot = Complex64::new(x.cos(), x.sin());
        let mut phase = Complex64::new(1.0, 0.0); // e^{ikx}, k from 0
        let mut sum = self.coeffs[n] * weight(0, n, gamma);
        for k in 1..n {
            phase *= rot;
            let w = weight(k, n, gamma);
            sum += self.coeffs[n + k] * phase * w;
            sum += self.coeffs[n - k] * phase.conj() * w;
        }
        debug_assert!(sum.im.abs() < 1e-10, "imaginary residue {}", sum.im);
        assert!(
            sum.im.abs() < 1e-10,
            "Riesz mean of a real function has imaginary residue {}",
            sum.im
        );
        sum.re
    }
}

#[inline]
fn weight(k: usize, n: usize, gamma: f64) -> f64 {
    let r = 1.0 - k as f64 / n as f64;
    if r <= 0.0 {
        0.0
    } else if gamma == 1.0 {
        r
    } else {
        r.powf(gamma)
    }
}

/// One-shot Riesz mean; computes the coefficients internally. Sweeps should
/// construct a [`RieszMeanOperator`] once and reuse it.
pub fn riesz_mean(spec: &PeriodicMeanSpec, f: &TestFunction, x: f64) -> Result<f64> {
    Ok(RieszMeanOperator::new(*spec, f)?.eval(x))
}

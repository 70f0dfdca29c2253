//! Discrete estimators for L^p norms, moduli of continuity, and generalized
//! Hölder (semi)norms.
//!
//! Norms over the line are computed on a truncated window covering the
//! function's support plus the operator-induced spread; the estimators are
//! documented lower bounds for suprema and rectangle-rule approximations for
//! integrals. The modulus estimator samples shifts from an absolute
//! quarter-octave ladder so that shift grids for nested `t` arguments are
//! themselves nested, which makes monotonicity in `t` exact by construction.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcspace::{Domain, TestFunction};

/// Whether sampled data lives on a line window or on one 2π period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    Line,
    Periodic,
}

/// Uniformly sampled real function.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    values: Vec<f64>,
    start: f64,
    step: f64,
    domain_kind: DomainKind,
}

impl SampledFunction {
    pub fn new(values: Vec<f64>, start: f64, step: f64, domain_kind: DomainKind) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::DomainMismatch(
                "sampled grid needs at least 2 points".into(),
            ));
        }
        if !(step > 0.0) {
            return Err(Error::param("step", "must be positive"));
        }
        if domain_kind == DomainKind::Periodic {
            let period = step * values.len() as f64;
            if (period - 2.0 * PI).abs() > 1e-12 {
                return Err(Error::param(
                    "step",
                    format!("periodic grid must cover 2π, got {period}"),
                ));
            }
        }
        Ok(SampledFunction {
            values,
            start,
            step,
            domain_kind,
        })
    }

    /// Midpoint sampling of `f` on [a, b] with `count` cells.
    pub fn from_fn_line<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, count: usize) -> Result<Self> {
        if !(a < b) {
            return Err(Error::param("window", "need a < b"));
        }
        let step = (b - a) / count as f64;
        let values = (0..count)
            .map(|i| f(a + (i as f64 + 0.5) * step))
            .collect();
        SampledFunction::new(values, a, step, DomainKind::Line)
    }

    /// Equispaced sampling of one 2π period.
    pub fn from_fn_periodic<F: Fn(f64) -> f64>(f: F, count: usize) -> Result<Self> {
        let step = 2.0 * PI / count as f64;
        let values = (0..count).map(|i| f(i as f64 * step)).collect();
        SampledFunction::new(values, 0.0, step, DomainKind::Periodic)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn domain_kind(&self) -> DomainKind {
        self.domain_kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Integrability exponent; infinity is its own variant so it never collides
/// with a finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    pub fn validate(&self) -> Result<()> {
        if let PNorm::Finite(p) = self {
            if !(*p >= 1.0) || !p.is_finite() {
                return Err(Error::param("p", format!("must satisfy p >= 1, got {p}")));
            }
        }
        Ok(())
    }
}

/// The weight ω* in the seminorm denominator.
#[derive(Clone)]
pub enum OmegaStar {
    /// ω*(h) = h^β with β in [0, 1)
    Power { beta: f64 },
    /// caller-supplied nondecreasing ω* with ω*(0) = 0 and ω* > 0 off 0
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for OmegaStar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OmegaStar::Power { beta } => write!(f, "Power {{ beta: {beta} }}"),
            OmegaStar::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl OmegaStar {
    pub fn eval(&self, h: f64) -> f64 {
        match self {
            OmegaStar::Power { beta } => {
                if *beta == 0.0 {
                    1.0
                } else {
                    h.powf(*beta)
                }
            }
            OmegaStar::Custom(f) => f(h),
        }
    }
}

/// Measurement space for the generalized Hölder norm.
#[derive(Debug, Clone)]
pub struct NormSpace {
    pub p: PNorm,
    pub omega_star: OmegaStar,
    /// shifts over which the seminorm supremum is taken
    pub h_grid: Vec<f64>,
}

impl NormSpace {
    /// Default 40-point log-spaced shift grid in [1e-4, 1].
    pub fn new(p: PNorm, omega_star: OmegaStar) -> Result<Self> {
        p.validate()?;
        if let OmegaStar::Power { beta } = omega_star {
            if !(0.0..1.0).contains(&beta) {
                return Err(Error::param("beta", format!("must lie in [0, 1), got {beta}")));
            }
        }
        Ok(NormSpace {
            p,
            omega_star,
            h_grid: log_spaced(1e-4, 1.0, 40),
        })
    }

    pub fn power(p: PNorm, beta: f64) -> Result<Self> {
        NormSpace::new(p, OmegaStar::Power { beta })
    }

    pub fn with_h_grid(mut self, h_min: f64, h_max: f64, count: usize) -> Self {
        self.h_grid = log_spaced(h_min, h_max, count);
        self
    }
}

pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (l + (h - l) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Discrete L^p norm: rectangle rule for p < ∞, max-abs for p = ∞.
pub fn lp_norm(g: &SampledFunction, p: PNorm) -> Result<f64> {
    p.validate()?;
    match p {
        PNorm::Infinity => Ok(g.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
        PNorm::Finite(p) => {
            let sum: f64 = g.values.iter().map(|v| v.abs().powf(p)).sum();
            Ok((g.step * sum).powf(1.0 / p))
        }
    }
}

/// Shift-sampling density for the modulus estimator.
#[derive(Debug, Clone, Copy)]
pub struct ModulusGrid {
    /// x-samples per shift length (the scan step is h / points_per_shift)
    pub points_per_shift: usize,
    /// absolute floor of the shift ladder
    pub h_floor: f64,
    /// work cap per shift; tiny shifts coarsen rather than explode
    pub max_evals_per_shift: usize,
}

impl Default for ModulusGrid {
    fn default() -> Self {
        ModulusGrid {
            points_per_shift: 64,
            h_floor: 1e-6,
            max_evals_per_shift: 200_000,
        }
    }
}

/// Quarter-octave shift ladder below `t` plus `t` itself. Ladder points are
/// absolute (powers of 2^(1/4)), so ladders for nested `t` nest.
fn shift_ladder(t: f64, floor: f64) -> Vec<f64> {
    let ratio = std::f64::consts::LN_2 / 4.0;
    let j_lo = (floor.ln() / ratio).ceil() as i64;
    let j_hi = (t.ln() / ratio).floor() as i64;
    let mut out = Vec::new();
    for j in j_lo..=j_hi {
        out.push((j as f64 * ratio).exp());
    }
    if out.last().map_or(true, |&h| t > h * (1.0 + 1e-12)) {
        out.push(t);
    }
    out
}

/// ω(f; t)_p for a test function, estimated as the max over the shift ladder
/// of the discrete norm of Δ_h f.
pub fn modulus_of_continuity(
    f: &TestFunction,
    t: f64,
    p: PNorm,
    grid: &ModulusGrid,
) -> Result<f64> {
    Ok(modulus_profile(f, 0, &[t], p, grid)?[0])
}

/// ω(f^(j); t)_p over several thresholds, sharing per-shift work. Shift norms
/// depend only on the shift value, so nested thresholds reuse them and
/// monotonicity in `t` is exact.
pub fn modulus_profile(
    f: &TestFunction,
    derivative_order: usize,
    ts: &[f64],
    p: PNorm,
    grid: &ModulusGrid,
) -> Result<Vec<f64>> {
    p.validate()?;
    for &t in ts {
        if !(t >= 0.0) {
            return Err(Error::param("t", format!("must be nonnegative, got {t}")));
        }
    }
    // probe the derivative once so capability errors surface before any work
    f.derivative(derivative_order, 0.0)?;
    let window = match f.domain() {
        Domain::Periodic => (0.0, 2.0 * PI),
        Domain::Line { support_radius } => (-support_radius - 1.0, support_radius + 1.0),
    };
    let eval = |x: f64| f.derivative(derivative_order, x).expect("checked order");

    let mut cache: Vec<(f64, f64)> = Vec::new();
    let mut norm_at = |h: f64| -> f64 {
        if let Some(&(_, v)) = cache.iter().find(|(hh, _)| *hh == h) {
            return v;
        }
        let v = delta_norm_of_fn(&eval, window, h, p, grid);
        cache.push((h, v));
        v
    };

    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        if t == 0.0 || t < grid.h_floor {
            out.push(0.0);
            continue;
        }
        let mut best = 0.0f64;
        for h in shift_ladder(t, grid.h_floor) {
            best = best.max(norm_at(h));
        }
        out.push(best);
    }
    Ok(out)
}

/// ‖Δ_h g‖_p over a window, for a directly evaluable g.
fn delta_norm_of_fn<F: Fn(f64) -> f64>(
    g: &F,
    window: (f64, f64),
    h: f64,
    p: PNorm,
    grid: &ModulusGrid,
) -> f64 {
    let (a, b) = window;
    let span = b - a;
    let mut step = h / grid.points_per_shift as f64;
    let max_n = grid.max_evals_per_shift.max(16);
    if span / step > max_n as f64 {
        step = span / max_n as f64;
    }
    let n = (span / step).ceil() as usize;
    match p {
        PNorm::Infinity => {
            let mut best = 0.0f64;
            let mut best_x = a;
            for i in 0..=n {
                let x = a + i as f64 * step;
                let d = (g(x + h) - g(x)).abs();
                if d > best {
                    best = d;
                    best_x = x;
                }
            }
            // polish around the argmax; cusps sit below grid resolution
            let fine = step / 64.0;
            for i in 0..=128 {
                let x = best_x - step + i as f64 * fine;
                best = best.max((g(x + h) - g(x)).abs());
            }
            best
        }
        PNorm::Finite(p) => {
            let mut sum = 0.0;
            for i in 0..n {
                let x = a + (i as f64 + 0.5) * step;
                sum += (g(x + h) - g(x)).abs().powf(p);
            }
            (step * sum).powf(1.0 / p)
        }
    }
}

/// sup over the shift grid of ‖Δ_h g‖_p / ω*(h). Shifts snap to whole grid
/// steps; ω* is evaluated at the snapped shift. On line domains the shifted
/// difference drops edge samples (exact for compactly supported data inside
/// the window); periodic domains wrap.
pub fn holder_seminorm(g: &SampledFunction, space: &NormSpace) -> Result<f64> {
    space.p.validate()?;
    let n = g.len();
    let mut seen = Vec::new();
    let mut best = 0.0f64;
    for &h in &space.h_grid {
        if !(h > 0.0) {
            return Err(Error::param("h_grid", "shifts must be positive"));
        }
        let k = ((h / g.step).round() as usize).max(1);
        if seen.contains(&k) {
            continue;
        }
        seen.push(k);
        let h_eff = k as f64 * g.step;
        let w = space.omega_star.eval(h_eff);
        if !(w > 0.0) {
            return Err(Error::param(
                "omega_star",
                format!("must be positive at h = {h_eff}, got {w}"),
            ));
        }
        let norm = match g.domain_kind {
            DomainKind::Line => {
                if k >= n {
                    continue;
                }
                let diffs: Vec<f64> = (0..n - k).map(|i| g.values[i + k] - g.values[i]).collect();
                sampled_norm(&diffs, g.step, space.p)
            }
            DomainKind::Periodic => {
                let k = k % n;
                if k == 0 {
                    continue;
                }
                let diffs: Vec<f64> = (0..n)
                    .map(|i| g.values[(i + k) % n] - g.values[i])
                    .collect();
                sampled_norm(&diffs, g.step, space.p)
            }
        };
        best = best.max(norm / w);
    }
    Ok(best)
}

fn sampled_norm(values: &[f64], step: f64, p: PNorm) -> f64 {
    match p {
        PNorm::Infinity => values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        PNorm::Finite(p) => {
            let sum: f64 = values.iter().map(|v| v.abs().powf(p)).sum();
            (step * sum).powf(1.0 / p)
        }
    }
}

/// ‖g‖_{ω*,p} = ‖g‖_p + sup_h ‖Δ_h g‖_p / ω*(h).
pub fn generalized_holder_norm(g: &SampledFunction, space: &NormSpace) -> Result<f64> {
    Ok(lp_norm(g, space.p)? + holder_seminorm(g, space)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_norm_of_zero() {
        let g = SampledFunction::from_fn_line(|_| 0.0, -1.0, 1.0, 64).unwrap();
        assert_eq!(lp_norm(&g, PNorm::Finite(1.0)).unwrap(), 0.0);
        assert_eq!(lp_norm(&g, PNorm::Infinity).unwrap(), 0.0);
    }

    #[test]
    fn l1_norm_of_exponential() {
        let g = SampledFunction::from_fn_line(|x: f64| (-x.abs()).exp(), -30.0, 30.0, 60_000)
            .unwrap();
        let v = lp_norm(&g, PNorm::Finite(1.0)).unwrap();
        assert!((v - 2.0).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn sup_norm_of_cosine() {
        let g = SampledFunction::from_fn_periodic(|x: f64| x.cos(), 4096).unwrap();
        let v = lp_norm(&g, PNorm::Infinity).unwrap();
        assert!((v - 1.0).abs() < 1e-6);
    }

    #[test]
    fn lp_scaling_exact() {
        let vals: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin()).collect();
        let scaled: Vec<f64> = vals.iter().map(|v| -2.5 * v).collect();
        let g = SampledFunction::new(vals, 0.0, 0.01, DomainKind::Line).unwrap();
        let gs = SampledFunction::new(scaled, 0.0, 0.01, DomainKind::Line).unwrap();
        // exact for the sup norm; within an ulp for finite p (powf is not
        // exactly homogeneous)
        let a = lp_norm(&g, PNorm::Infinity).unwrap();
        let b = lp_norm(&gs, PNorm::Infinity).unwrap();
        assert_eq!(b, 2.5 * a);
        for p in [PNorm::Finite(1.0), PNorm::Finite(2.0)] {
            let a = lp_norm(&g, p).unwrap();
            let b = lp_norm(&gs, p).unwrap();
            assert!((b - 2.5 * a).abs() <= 4.0 * f64::EPSILON * b.abs());
        }
    }

    #[test]
    fn lp_triangle_inequality() {
        let f: Vec<f64> = (0..256).map(|i| (i as f64 * 0.1).sin()).collect();
        let g: Vec<f64> = (0..256).map(|i| (i as f64 * 0.07).cos()).collect();
        let sum: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let sf = SampledFunction::new(f, 0.0, 0.1, DomainKind::Line).unwrap();
        let sg = SampledFunction::new(g, 0.0, 0.1, DomainKind::Line).unwrap();
        let ss = SampledFunction::new(sum, 0.0, 0.1, DomainKind::Line).unwrap();
        for p in [PNorm::Finite(1.0), PNorm::Finite(2.0), PNorm::Infinity] {
            let a = lp_norm(&sf, p).unwrap();
            let b = lp_norm(&sg, p).unwrap();
            let c = lp_norm(&ss, p).unwrap();
            assert!(c <= a + b + 1e-12);
        }
    }

    #[test]
    fn modulus_zero_shift() {
        let f = TestFunction::cosine();
        let v = modulus_of_continuity(&f, 0.0, PNorm::Infinity, &ModulusGrid::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn modulus_of_cosine_closed_form() {
        let f = TestFunction::cosine();
        let v = modulus_of_continuity(&f, 0.2, PNorm::Infinity, &ModulusGrid::default()).unwrap();
        // sup_x |cos(x+h) - cos x| = 2|sin(h/2)|, maximized at h = t
        let expected = 2.0 * 0.1f64.sin();
        assert!((v - expected).abs() < 1e-3, "got {v}, want {expected}");
    }

    #[test]
    fn modulus_of_bump_power_law() {
        let f = TestFunction::holder_bump(0.5).unwrap();
        for &t in &[0.01, 0.001] {
            let v =
                modulus_of_continuity(&f, t, PNorm::Infinity, &ModulusGrid::default()).unwrap();
            let expected = t.sqrt();
            assert!(
                (v - expected).abs() < 0.1 * expected,
                "t={t}: got {v}, want {expected}"
            );
        }
    }

    #[test]
    fn modulus_monotone_on_nested_thresholds() {
        let grid = ModulusGrid::default();
        for f in [
            TestFunction::holder_bump(0.5).unwrap(),
            TestFunction::cosine(),
        ] {
            // thresholds on the quarter-octave ladder: grids nest exactly
            let ts: Vec<f64> = (0..20)
                .map(|j| (j as f64 * std::f64::consts::LN_2 / 4.0 - 8.0f64.ln()).exp())
                .collect();
            let vals = modulus_profile(&f, 0, &ts, PNorm::Infinity, &grid).unwrap();
            for w in vals.windows(2) {
                assert!(w[1] >= w[0], "{} not monotone: {:?}", f.name(), w);
            }
        }
    }

    #[test]
    fn seminorm_of_constant_is_zero() {
        let g = SampledFunction::from_fn_line(|_| 3.7, -1.0, 1.0, 512).unwrap();
        let space = NormSpace::power(PNorm::Infinity, 0.25).unwrap();
        assert_eq!(holder_seminorm(&g, &space).unwrap(), 0.0);
    }

    #[test]
    fn seminorm_of_bump_at_matching_beta() {
        let f = TestFunction::holder_bump(0.5).unwrap();
        let g = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 16).unwrap();
        let space = NormSpace::power(PNorm::Infinity, 0.5).unwrap();
        let v = holder_seminorm(&g, &space).unwrap();
        assert!((0.9..=1.1).contains(&v), "got {v}");
    }

    #[test]
    fn seminorm_of_cosine_beta_zero_wide_grid() {
        let g = SampledFunction::from_fn_periodic(|x: f64| x.cos(), 1 << 14).unwrap();
        let space = NormSpace::power(PNorm::Infinity, 0.0)
            .unwrap()
            .with_h_grid(1e-4, 10.0, 60);
        let v = holder_seminorm(&g, &space).unwrap();
        assert!((v - 2.0).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn generalized_norm_examples() {
        let z = SampledFunction::from_fn_line(|_| 0.0, -1.0, 1.0, 64).unwrap();
        let space = NormSpace::power(PNorm::Infinity, 0.0).unwrap();
        assert_eq!(generalized_holder_norm(&z, &space).unwrap(), 0.0);

        let f = TestFunction::holder_bump(0.5).unwrap();
        let g = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 16).unwrap();
        let v = generalized_holder_norm(&g, &space).unwrap();
        assert!((v - 2.0).abs() < 0.2, "got {v}");

        // cos with beta = 0.25: seminorm has the per-shift closed form
        // 2 |sin(h/2)| / h^0.25
        let c = SampledFunction::from_fn_periodic(|x: f64| x.cos(), 1 << 14).unwrap();
        let space = NormSpace::power(PNorm::Infinity, 0.25).unwrap();
        let v = generalized_holder_norm(&c, &space).unwrap();
        let step = 2.0 * PI / ((1 << 14) as f64);
        let expected_semi = space
            .h_grid
            .iter()
            .map(|&h| {
                let k = ((h / step).round() as usize).max(1);
                let he = k as f64 * step;
                2.0 * (he / 2.0).sin().abs() / he.powf(0.25)
            })
            .fold(0.0f64, f64::max);
        assert!((v - (1.0 + expected_semi)).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn seminorm_stable_under_refinement() {
        let f = TestFunction::holder_bump(0.5).unwrap();
        let space = NormSpace::power(PNorm::Infinity, 0.25).unwrap();
        let coarse = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 15).unwrap();
        let fine = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 16).unwrap();
        let a = holder_seminorm(&coarse, &space).unwrap();
        let b = holder_seminorm(&fine, &space).unwrap();
        assert!((a - b).abs() / b < 0.05, "coarse {a} fine {b}");
    }

    #[test]
    fn space_inclusion_beta_below_alpha() {
        // H^{0.5} ⊂ H^{0.25}: the weaker seminorm is finite and stable
        let f = TestFunction::holder_bump(0.5).unwrap();
        let space = NormSpace::power(PNorm::Infinity, 0.25).unwrap();
        let coarse = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 14).unwrap();
        let fine = SampledFunction::from_fn_line(|x| f.eval(x), -2.0, 2.0, 1 << 15).unwrap();
        let a = holder_seminorm(&coarse, &space).unwrap();
        let b = holder_seminorm(&fine, &space).unwrap();
        assert!(a.is_finite() && b.is_finite());
        assert!((a - b).abs() / b < 0.05);
    }

    #[test]
    fn nonpositive_omega_rejected() {
        let g = SampledFunction::from_fn_line(|x| x, -1.0, 1.0, 64).unwrap();
        let space = NormSpace {
            p: PNorm::Infinity,
            omega_star: OmegaStar::Custom(Arc::new(|_| 0.0)),
            h_grid: vec![0.1],
        };
        assert!(holder_seminorm(&g, &space).is_err());
    }

    #[test]
    fn invalid_p_rejected() {
        let g = SampledFunction::from_fn_line(|x| x, -1.0, 1.0, 64).unwrap();
        assert!(lp_norm(&g, PNorm::Finite(0.5)).is_err());
    }

    #[test]
    fn periodic_grid_must_cover_period() {
        let r = SampledFunction::new(vec![0.0; 100], 0.0, 0.01, DomainKind::Periodic);
        assert!(r.is_err());
    }
}

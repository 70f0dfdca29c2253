//! Test functions with certified Hölder regularity.
//!
//! Each function carries the metadata the rate experiments need: the Hölder
//! exponent α of its highest certified derivative, the derivative order m it
//! supports in closed form, its domain (compactly supported on the line, or
//! 2π-periodic), and which integrability exponents p it admits on the line.

use crate::error::{Error, Result};

/// Domain metadata. For `Line` the function vanishes identically outside
/// [-support_radius, support_radius]; `Periodic` means 2π-periodic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Line { support_radius: f64 },
    Periodic,
}

/// Which L^p memberships hold over the line: compactly supported functions
/// lie in every L^p; nonzero periodic functions only in L^∞. (Periodic-window
/// measurements admit any p; this flag governs line-norm experiments.)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibleP {
    All,
    SupOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Id {
    /// max(0, 1 - |x|^α): exact α-cusp at the origin, support [-1, 1].
    HolderBump { alpha: f64 },
    /// Antiderivative of bump(x - 1.5) - bump(x + 1.5); zero total integral
    /// makes it compactly supported, with one derivative of exponent α.
    ZeroMeanBumpAntiderivative { alpha: f64 },
    Cosine,
    /// |sin x|^α
    AbsSinPeriodic { alpha: f64 },
    /// Σ a^k cos(b^k x), truncated where a^K < 1e-12
    WeierstrassPeriodic { a: f64, b: u32, terms: u32 },
}

/// An evaluable function with certified smoothness metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    id: Id,
}

const BUMP_OFFSET: f64 = 1.5;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param("alpha", format!("must lie in (0, 1], got {alpha}")));
    }
    Ok(())
}

impl TestFunction {
    pub fn holder_bump(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(TestFunction {
            id: Id::HolderBump { alpha },
        })
    }

    pub fn zero_mean_bump_antiderivative(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(TestFunction {
            id: Id::ZeroMeanBumpAntiderivative { alpha },
        })
    }

    pub fn cosine() -> Self {
        TestFunction { id: Id::Cosine }
    }

    pub fn abs_sin_periodic(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(TestFunction {
            id: Id::AbsSinPeriodic { alpha },
        })
    }

    pub fn weierstrass_periodic(a: f64, b: u32) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::param("a", format!("must lie in (0, 1), got {a}")));
        }
        if b < 3 || b % 2 == 0 {
            return Err(Error::param("b", format!("must be an odd integer >= 3, got {b}")));
        }
        if a * (b as f64) < 1.0 {
            return Err(Error::param("a*b", format!("need a*b >= 1, got {}", a * b as f64)));
        }
        // uniform tail bound a^K / (1 - a) below 1e-12
        let terms = ((1e-12f64.ln() / a.ln()).ceil() as u32).max(1);
        Ok(TestFunction {
            id: Id::WeierstrassPeriodic { a, b, terms },
        })
    }

    /// Certified Hölder exponent of the m-th derivative (`m = max_derivative_order`).
    pub fn alpha(&self) -> f64 {
        match self.id {
            Id::HolderBump { alpha }
            | Id::ZeroMeanBumpAntiderivative { alpha }
            | Id::AbsSinPeriodic { alpha } => alpha,
            Id::Cosine => 1.0,
            Id::WeierstrassPeriodic { a, b, .. } => -a.ln() / (b as f64).ln(),
        }
    }

    /// Highest derivative order available in closed form.
    pub fn max_derivative_order(&self) -> usize {
        match self.id {
            Id::HolderBump { .. } | Id::AbsSinPeriodic { .. } | Id::WeierstrassPeriodic { .. } => 0,
            Id::ZeroMeanBumpAntiderivative { .. } => 1,
            Id::Cosine => 6,
        }
    }

    pub fn domain(&self) -> Domain {
        match self.id {
            Id::HolderBump { .. } => Domain::Line { support_radius: 1.0 },
            Id::ZeroMeanBumpAntiderivative { .. } => Domain::Line {
                support_radius: BUMP_OFFSET + 1.0,
            },
            Id::Cosine | Id::AbsSinPeriodic { .. } | Id::WeierstrassPeriodic { .. } => {
                Domain::Periodic
            }
        }
    }

    pub fn admissible_p(&self) -> AdmissibleP {
        match self.id {
            Id::HolderBump { .. } | Id::ZeroMeanBumpAntiderivative { .. } => AdmissibleP::All,
            _ => AdmissibleP::SupOnly,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.domain(), Domain::Periodic)
    }

    pub fn name(&self) -> String {
        match self.id {
            Id::HolderBump { alpha } => format!("holder-bump({alpha})"),
            Id::ZeroMeanBumpAntiderivative { alpha } => format!("zero-mean-bump-adv({alpha})"),
            Id::Cosine => "cosine".into(),
            Id::AbsSinPeriodic { alpha } => format!("abs-sin({alpha})"),
            Id::WeierstrassPeriodic { a, b, .. } => format!("weierstrass({a},{b})"),
        }
    }

    /// Certified metadata: (α, m, domain, admissible p).
    pub fn holder_class(&self) -> (f64, usize, Domain, AdmissibleP) {
        (
            self.alpha(),
            self.max_derivative_order(),
            self.domain(),
            self.admissible_p(),
        )
    }

    /// f(x). Compact-support functions return exactly 0 outside their support.
    pub fn eval(&self, x: f64) -> f64 {
        match self.id {
            Id::HolderBump { alpha } => bump(alpha, x),
            Id::ZeroMeanBumpAntiderivative { alpha } => {
                bump_antiderivative(alpha, x - BUMP_OFFSET) - bump_antiderivative(alpha, x + BUMP_OFFSET)
            }
            Id::Cosine => x.cos(),
            Id::AbsSinPeriodic { alpha } => {
                let s = x.sin().abs();
                if alpha == 1.0 {
                    s
                } else {
                    s.powf(alpha)
                }
            }
            Id::WeierstrassPeriodic { a, b, terms } => {
                let tau = 2.0 * std::f64::consts::PI;
                let mut theta = x.rem_euclid(tau);
                let mut coeff = 1.0;
                let mut sum = 0.0;
                for _ in 0..terms {
                    sum += coeff * theta.cos();
                    coeff *= a;
                    theta = (theta * b as f64).rem_euclid(tau);
                }
                sum
            }
        }
    }

    /// f^(j)(x) from the closed form; j = 0 is `eval`.
    pub fn derivative(&self, j: usize, x: f64) -> Result<f64> {
        if j == 0 {
            return Ok(self.eval(x));
        }
        let certified = self.max_derivative_order();
        if j > certified {
            return Err(Error::DerivativeOrder {
                function: match self.id {
                    Id::HolderBump { .. } => "holder-bump",
                    Id::ZeroMeanBumpAntiderivative { .. } => "zero-mean-bump-antiderivative",
                    Id::Cosine => "cosine",
                    Id::AbsSinPeriodic { .. } => "abs-sin-periodic",
                    Id::WeierstrassPeriodic { .. } => "weierstrass-periodic",
                },
                requested: j,
                certified,
            });
        }
        Ok(match self.id {
            Id::ZeroMeanBumpAntiderivative { alpha } => {
                bump(alpha, x - BUMP_OFFSET) - bump(alpha, x + BUMP_OFFSET)
            }
            Id::Cosine => (x + j as f64 * std::f64::consts::FRAC_PI_2).cos(),
            _ => unreachable!("orders above the certified cap are rejected"),
        })
    }

    /// Uniform bound on |f|, used to size kernel truncation windows.
    pub fn sup_bound(&self) -> f64 {
        match self.id {
            Id::HolderBump { .. } | Id::Cosine | Id::AbsSinPeriodic { .. } => 1.0,
            Id::ZeroMeanBumpAntiderivative { alpha } => 2.0 * alpha / (alpha + 1.0),
            Id::WeierstrassPeriodic { a, .. } => 1.0 / (1.0 - a),
        }
    }

    /// Hölder exponent certified for the j-th derivative, when the metadata
    /// supports that order. The stored α describes the highest certified
    /// derivative; the cosine tower is exponent 1 at every order.
    pub fn alpha_for_order(&self, j: usize) -> Option<f64> {
        if j > self.max_derivative_order() {
            return None;
        }
        match self.id {
            Id::Cosine => Some(1.0),
            _ if j == self.max_derivative_order() => Some(self.alpha()),
            _ => None,
        }
    }

    /// Uniform bound on |f^(j)| for a certified order j.
    pub fn sup_bound_deriv(&self, j: usize) -> f64 {
        if j == 0 {
            return self.sup_bound();
        }
        match self.id {
            Id::Cosine => 1.0,
            Id::ZeroMeanBumpAntiderivative { .. } => 1.0,
            _ => f64::NAN,
        }
    }
}

#[inline]
fn bump(alpha: f64, x: f64) -> f64 {
    let ax = x.abs();
    if ax >= 1.0 {
        0.0
    } else {
        1.0 - ax.powf(alpha)
    }
}

/// ∫_{-∞}^{x} bump(α, s) ds in closed form:
/// the primitive of 1 - |s|^α is s - sign(s) |s|^(α+1)/(α+1).
fn bump_antiderivative(alpha: f64, x: f64) -> f64 {
    let total = 2.0 * alpha / (alpha + 1.0);
    if x <= -1.0 {
        0.0
    } else if x >= 1.0 {
        total
    } else {
        let p = |s: f64| s - s.signum() * s.abs().powf(alpha + 1.0) / (alpha + 1.0);
        p(x) - p(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bump_values() {
        let f = TestFunction::holder_bump(0.5).unwrap();
        assert_eq!(f.eval(0.0), 1.0);
        assert_eq!(f.eval(2.0), 0.0);
        assert_eq!(f.eval(-1.0), 0.0);
        assert!((f.eval(0.25) - (1.0 - 0.5f64)).abs() < 1e-15);
    }

    #[test]
    fn bump_support_exact() {
        let f = TestFunction::holder_bump(0.3).unwrap();
        for i in 0..100 {
            let x = 1.0 + i as f64 * 0.31;
            assert_eq!(f.eval(x), 0.0);
            assert_eq!(f.eval(-x), 0.0);
        }
    }

    #[test]
    fn weierstrass_at_zero_geometric_sum() {
        let f = TestFunction::weierstrass_periodic(0.5, 3).unwrap();
        assert!((f.eval(0.0) - 2.0).abs() < 1e-11);
        assert!((f.alpha() - 2.0f64.ln() / 3.0f64.ln()).abs() < 1e-15);
        assert!((f.alpha() - 0.6309).abs() < 1e-4);
    }

    #[test]
    fn weierstrass_parameter_validation() {
        assert!(TestFunction::weierstrass_periodic(0.5, 2).is_err());
        assert!(TestFunction::weierstrass_periodic(0.5, 1).is_err());
        assert!(TestFunction::weierstrass_periodic(1.5, 3).is_err());
        assert!(TestFunction::weierstrass_periodic(0.2, 3).is_err()); // ab < 1
    }

    #[test]
    fn cosine_derivatives() {
        let f = TestFunction::cosine();
        assert!((f.derivative(1, 0.0).unwrap() - 0.0).abs() < 1e-15);
        assert!((f.derivative(2, 0.0).unwrap() + 1.0).abs() < 1e-15);
        assert!((f.derivative(4, 0.7).unwrap() - 0.7f64.cos()).abs() < 1e-15);
        assert!(f.derivative(7, 0.0).is_err());
    }

    #[test]
    fn derivative_capability_error_names_order() {
        let f = TestFunction::holder_bump(0.5).unwrap();
        match f.derivative(1, 0.0) {
            Err(Error::DerivativeOrder {
                requested, certified, ..
            }) => {
                assert_eq!(requested, 1);
                assert_eq!(certified, 0);
            }
            other => panic!("expected capability error, got {other:?}"),
        }
    }

    #[test]
    fn zmba_is_compactly_supported_with_zero_endpoints() {
        let f = TestFunction::zero_mean_bump_antiderivative(0.5).unwrap();
        assert_eq!(f.eval(-2.5), 0.0);
        assert_eq!(f.eval(2.5), 0.0);
        assert_eq!(f.eval(-10.0), 0.0);
        assert_eq!(f.eval(10.0), 0.0);
        // plateau value between the two bumps is minus the bump mass
        let mass = 2.0 * 0.5 / 1.5;
        assert!((f.eval(0.0) + mass).abs() < 1e-14);
    }

    #[test]
    fn zmba_derivative_matches_finite_difference() {
        let f = TestFunction::zero_mean_bump_antiderivative(0.5).unwrap();
        let h = 1e-6;
        for &x in &[-2.1, -0.9, 0.0, 0.8, 1.9, 2.2] {
            let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            let d = f.derivative(1, x).unwrap();
            assert!((fd - d).abs() < 1e-4, "x={x}: fd {fd} vs closed {d}");
        }
    }

    #[test]
    fn periodicity() {
        let fns = [
            TestFunction::cosine(),
            TestFunction::abs_sin_periodic(1.0).unwrap(),
        ];
        for f in &fns {
            for i in 0..200 {
                let x = -6.0 + 0.0613 * i as f64;
                assert!(
                    (f.eval(x) - f.eval(x + 2.0 * PI)).abs() < 1e-12,
                    "{} at {x}",
                    f.name()
                );
            }
        }
        // The Weierstrass function amplifies the rounding of x + 2π by its
        // modulus of continuity (~eps^0.63); exact 1e-12 periodicity is not
        // representable, so it gets a matching tolerance.
        let w = TestFunction::weierstrass_periodic(0.5, 3).unwrap();
        for i in 0..200 {
            let x = -6.0 + 0.0613 * i as f64;
            assert!((w.eval(x) - w.eval(x + 2.0 * PI)).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn holder_class_metadata() {
        let (a, m, d, p) = TestFunction::holder_bump(0.3).unwrap().holder_class();
        assert_eq!(a, 0.3);
        assert_eq!(m, 0);
        assert_eq!(d, Domain::Line { support_radius: 1.0 });
        assert_eq!(p, AdmissibleP::All);

        let (a, m, d, p) = TestFunction::cosine().holder_class();
        assert_eq!(a, 1.0);
        assert_eq!(m, 6);
        assert_eq!(d, Domain::Periodic);
        assert_eq!(p, AdmissibleP::SupOnly);
    }

    #[test]
    fn abs_sin_values() {
        let f = TestFunction::abs_sin_periodic(1.0).unwrap();
        assert!((f.eval(PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((f.eval(-PI / 2.0) - 1.0).abs() < 1e-15);
        let g = TestFunction::abs_sin_periodic(0.5).unwrap();
        assert!((g.eval(PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((g.eval(0.1) - 0.1f64.sin().sqrt()).abs() < 1e-15);
    }
}

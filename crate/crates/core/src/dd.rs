//! Minimal double-double arithmetic (~31 significant digits).
//!
//! Used where an alternating series suffers catastrophic cancellation: the
//! intermediate terms grow many orders of magnitude above the final sum, so
//! plain f64 accumulation loses the result. Error-free transformations
//! (Dekker/Knuth two-sum, FMA two-product) keep the discarded low parts.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let lo = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let lo = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, c: f64) -> Dd {
        let (p, e) = two_prod(self.hi, c);
        let lo = e + self.lo * c;
        let (hi, lo) = quick_two_sum(p, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        // remainder computed exactly: self - q1*d
        let (p, e) = two_prod(q1, d);
        let r_hi = self.hi - p;
        let r_lo = self.lo - e;
        let q2 = (r_hi + r_lo) / d;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn abs_hi(self) -> f64 {
        self.hi.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_recovers_cancelled_digits() {
        // 1 + 1e-20 - 1 in f64 is 0; in dd it is 1e-20.
        let s = Dd::from(1.0).add(Dd::from(1e-20)).add(Dd::from(-1.0));
        assert_eq!(s.to_f64(), 1e-20);
    }

    #[test]
    fn product_keeps_low_part() {
        let a = 1.0 + 2f64.powi(-30);
        let p = Dd::from(a).mul(Dd::from(a));
        let exact = 1.0 + 2f64.powi(-29) + 2f64.powi(-60);
        assert!((p.to_f64() - exact).abs() < 1e-30);
        assert!(p.lo != 0.0);
    }

    #[test]
    fn division_agrees_with_rational() {
        let x = Dd::from(1.0).div_f64(3.0);
        let should_be_one = x.mul_f64(3.0);
        assert!((should_be_one.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn alternating_geometric_series() {
        // sum (-x)^k = 1/(1+x) beyond f64 accumulation accuracy
        let x = 0.9;
        let mut term = Dd::from(1.0);
        let mut sum = Dd::ZERO;
        for _ in 0..2000 {
            sum = sum.add(term);
            term = term.mul_f64(-x);
            if term.abs_hi() < 1e-28 {
                break;
            }
        }
        let expected = 1.0 / (1.0 + x);
        assert!((sum.to_f64() - expected).abs() < 1e-16);
    }
}

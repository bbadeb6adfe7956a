//! 2×2 real matrices in plain double precision and in double-double
//! (compensated) arithmetic.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    #[inline]
    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse of a unit-determinant matrix.
    #[inline]
    pub fn unimodular_inverse(&self) -> Mat2 {
        Mat2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    #[inline(always)]
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl std::ops::Div for Dd {
    type Output = Dd;

        fn div(self, y: Dd) -> Dd {
            let q1 = self.hi / y.hi;
            let r = self - y * Dd::from_f64(q1);
            let q2 = r.hi / y.hi;
            let r = r - y * Dd::from_f64(q2);
            let q3 = r.hi / y.hi;
            let (s, e) = quick_two_sum(q1, q2);
            Dd { hi: s, lo: e } + Dd::from_f64(q3)
        }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Parses a plain or exponent-form decimal literal, keeping about 31
    /// significant digits.
    pub fn parse_decimal(text: &str) -> Result<Dd> {
        let bad = || Error::Parse(format!("invalid decimal literal {text:?}"));
        let s = text.trim();
        let (neg, s) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let mut acc = Dd::ZERO;
        let mut frac_digits = 0i32;
        let mut seen_point = false;
        let mut seen_digit = false;
        let ten = Dd::from_f64(10.0);
        for ch in mantissa.chars() {
            match ch {
                '0'..='9' => {
                    seen_digit = true;
                    acc = acc * ten + Dd::from_f64(f64::from(ch as u8 - b'0'));
                    if seen_point {
                        frac_digits += 1;
                    }
                }
                '.' if !seen_point => seen_point = true,
                _ => return Err(bad()),
            }
        }
        if !seen_digit {
            return Err(bad());
        }
        let scale = exp - frac_digits;
        let mut pow = Dd::ONE;
        for _ in 0..scale.unsigned_abs() {
            pow = pow * ten;
        }
        let v = if scale >= 0 { acc * pow } else { acc / pow };
        if !v.hi.is_finite() {
            return Err(bad());
        }
        Ok(if neg { -v } else { v })
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, y: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, y.hi);
        let (t, f) = two_sum(self.lo, y.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, y: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, y.hi);
        let e = e + (self.hi * y.lo + self.lo * y.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2Dd {
    pub a: Dd,
    pub b: Dd,
    pub c: Dd,
    pub d: Dd,
}

impl Mat2Dd {
    pub const IDENTITY: Mat2Dd = Mat2Dd {
        a: Dd::ONE,
        b: Dd::ZERO,
        c: Dd::ZERO,
        d: Dd::ONE,
    };

    pub fn trace(&self) -> Dd {
        self.a + self.d
    }

    pub fn det(&self) -> Dd {
        self.a * self.d - self.b * self.c
    }

    pub fn unimodular_inverse(&self) -> Mat2Dd {
        Mat2Dd {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn to_f64(&self) -> Mat2 {
        Mat2::new(
            self.a.to_f64(),
            self.b.to_f64(),
            self.c.to_f64(),
            self.d.to_f64(),
        )
    }

    /// Largest entrywise distance to `+I` or `-I`, whichever is closer.
    pub fn distance_to_pm_identity(&self) -> f64 {
        let off = self.b.to_f64().abs().max(self.c.to_f64().abs());
        let plus = (self.a - Dd::ONE)
            .abs()
            .to_f64()
            .max((self.d - Dd::ONE).abs().to_f64());
        let minus = (self.a + Dd::ONE)
            .abs()
            .to_f64()
            .max((self.d + Dd::ONE).abs().to_f64());
        off.max(plus.min(minus))
    }
}

impl Mul for Mat2Dd {
    type Output = Mat2Dd;
    fn mul(self, o: Mat2Dd) -> Mat2Dd {
        Mat2Dd {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_keeps_extra_digits() {
        let x = Dd::parse_decimal("0.1").unwrap();
        assert_eq!(x.hi, 0.1);
        // 0.1 is not representable; the residual must be captured.
        assert!(x.lo != 0.0 && x.lo.abs() < 1e-17);
        let y = Dd::parse_decimal("-1.25e2").unwrap();
        assert_eq!(y.to_f64(), -125.0);
        assert!(Dd::parse_decimal("1.2.3").is_err());
        assert!(Dd::parse_decimal("abc").is_err());
        assert!(Dd::parse_decimal("").is_err());
    }

    #[test]
    fn compensated_product_beats_plain_on_sqrt2() {
        // (1+√2)(√2-1) = 1 exactly.
        let a = Dd::parse_decimal("2.41421356237309504880168872420969807").unwrap();
        let b = Dd::parse_decimal("0.41421356237309504880168872420969807").unwrap();
        let p = a * b;
        assert!((p - Dd::ONE).abs().to_f64() < 1e-30);
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = Mat2::new(2.0, 1.0, 1.0, 1.0);
        let p = m * m.unimodular_inverse();
        assert!(p.max_abs_diff(&Mat2::IDENTITY) == 0.0);
    }
}

use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::Signed;

use crate::scalars::Rat;

const RM: RoundingMode = RoundingMode::ToEven;

/// A complex number with arbitrary-precision real and imaginary parts.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Complex::new(BigFloat::from_f64(re, p), BigFloat::from_f64(im, p))
    }

    pub fn zero(p: usize) -> Self {
        Complex::from_f64(0.0, 0.0, p)
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), self.im.neg())
    }

    pub fn add(&self, o: &Complex, p: usize) -> Complex {
        Complex::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM))
    }

    pub fn sub(&self, o: &Complex, p: usize) -> Complex {
        Complex::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM))
    }

    pub fn mul(&self, o: &Complex, p: usize) -> Complex {
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        Complex::new(re, im)
    }

    pub fn scale(&self, r: &BigFloat, p: usize) -> Complex {
        Complex::new(self.re.mul(r, p, RM), self.im.mul(r, p, RM))
    }

    /// `|z|^2`.
    pub fn norm(&self, p: usize) -> BigFloat {
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// `|z|` as a double. Saturates to infinity for magnitudes beyond `f64`.
    pub fn abs_f64(&self) -> f64 {
        let (a, b) = (self.re.abs(), self.im.abs());
        let big = if a.cmp(&b).unwrap_or(0) >= 0 { a.clone() } else { b.clone() };
        if big.is_zero() {
            return 0.0;
        }
        let small = if a.cmp(&b).unwrap_or(0) >= 0 { b } else { a };
        let ratio = to_f64(&small.div(&big, 64, RM));
        scaled_f64(&big, 0) * (1.0 + ratio * ratio).sqrt()
    }

    /// `log2 |z|`, finite even when `|z|` overflows a double; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        let (a, b) = (self.re.abs(), self.im.abs());
        let big = if a.cmp(&b).unwrap_or(0) >= 0 { a.clone() } else { b.clone() };
        if big.is_zero() {
            return f64::NEG_INFINITY;
        }
        let small = if a.cmp(&b).unwrap_or(0) >= 0 { b } else { a };
        let ratio = to_f64(&small.div(&big, 64, RM));
        let e = big.exponent().unwrap_or(0) as f64;
        e + scaled_f64(&big, -(big.exponent().unwrap_or(0) as i64)).log2() + 0.5 * (1.0 + ratio * ratio).log2()
    }

    pub fn div(&self, o: &Complex, p: usize) -> Complex {
        let den = o.norm(p);
        let num = self.mul(&o.conj(), p);
        Complex::new(num.re.div(&den, p, RM), num.im.div(&den, p, RM))
    }

    pub fn exp(&self, p: usize, cc: &mut Consts) -> Complex {
        let m = self.re.exp(p, RM, cc);
        let c = self.im.cos(p, RM, cc);
        let s = self.im.sin(p, RM, cc);
        Complex::new(m.mul(&c, p, RM), m.mul(&s, p, RM))
    }

    /// `r * exp(i theta)`.
    pub fn polar(r: &BigFloat, theta: &BigFloat, p: usize, cc: &mut Consts) -> Complex {
        Complex::new(theta.cos(p, RM, cc).mul(r, p, RM), theta.sin(p, RM, cc).mul(r, p, RM))
    }

    pub fn powi(&self, k: u32, p: usize) -> Complex {
        let mut out = Complex::from_f64(1.0, 0.0, p);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base, p);
            }
            base = base.mul(&base, p);
            k >>= 1;
        }
        out
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re_f64(), self.im_f64());
        if im < 0.0 {
            write!(f, "{re:e} - {:e}i", -im)
        } else {
            write!(f, "{re:e} + {im:e}i")
        }
    }
}

/// `x * 2^shift` rounded to a double.
fn scaled_f64(x: &BigFloat, shift: i64) -> f64 {
    match x.as_raw_parts() {
        Some((words, _, sign, e, _)) if !x.is_zero() => {
            let top = *words.last().unwrap_or(&0) as f64;
            let v = ldexp(top, e as i64 + shift - 64);
            if sign == Sign::Neg {
                -v
            } else {
                v
            }
        }
        _ if x.is_nan() => f64::NAN,
        _ => 0.0,
    }
}

fn ldexp(mut v: f64, mut k: i64) -> f64 {
    k = k.clamp(-4000, 4000);
    while k > 1000 {
        v *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        v *= 2f64.powi(-1000);
        k += 1000;
    }
    v * 2f64.powi(k as i32)
}

/// Nearest double (to within one part in 2^53); out-of-range values saturate.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    scaled_f64(x, 0)
}

pub fn bigint_to_float(n: &BigInt, p: usize) -> BigFloat {
    let radix = BigFloat::from_u64(u64::MAX, p).add(&BigFloat::from_u64(1, p), p, RM);
    let mut acc = BigFloat::from_u64(0, p);
    for d in n.magnitude().to_u64_digits().iter().rev() {
        acc = acc.mul(&radix, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
    }
    if n.is_negative() {
        acc.neg()
    } else {
        acc
    }
}

pub fn rat_to_float(r: &Rat, p: usize) -> BigFloat {
    bigint_to_float(r.numer(), p).div(&bigint_to_float(r.denom(), p), p, RM)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_conversion() {
        let p = 256;
        for v in [0.0, 1.0, -3.75, 1e-300, 6.02e23, -2.5e-7] {
            assert_eq!(to_f64(&BigFloat::from_f64(v, p)), v);
        }
        let r = rat_to_float(&crate::scalars::rat(-1, 3), p);
        assert!((to_f64(&r) + 1.0 / 3.0).abs() < 1e-16);
        let big = bigint_to_float(&(BigInt::from(1u8) << 200u32), p);
        assert_eq!(big.exponent(), Some(201));
    }

    #[test]
    fn exp_and_division() {
        let p = 256;
        let mut cc = Consts::new().unwrap();
        let pi = cc.pi(p, RM);
        let w = Complex::new(BigFloat::from_f64(0.0, p), pi).exp(p, &mut cc);
        assert!((w.re_f64() + 1.0).abs() < 1e-70);
        assert!(w.im_f64().abs() < 1e-70);
        let a = Complex::from_f64(3.0, 4.0, p);
        assert!((a.abs_f64() - 5.0).abs() < 1e-15);
        let q = a.div(&a, p);
        assert!((q.re_f64() - 1.0).abs() < 1e-70 && q.im_f64().abs() < 1e-70);
        let huge = Complex::from_f64(5000.0, 0.0, p).exp(p, &mut cc);
        assert!((huge.log2_abs() - 5000.0 / std::f64::consts::LN_2).abs() < 1e-9);
    }
}

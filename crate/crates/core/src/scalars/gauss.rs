use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Square root of a rational, if it is the square of a rational.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// An element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussRat { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }

    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    /// A square root in Q(i), if one exists. The returned root has either a positive
    /// real part, or zero real part and nonnegative imaginary part.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.im.is_zero() {
            if self.re.is_positive() {
                return rat_sqrt(&self.re).map(Self::from_rat);
            }
            return rat_sqrt(&-self.re.clone()).map(|s| GaussRat::new(Rat::zero(), s));
        }
        // (x + iy)^2 = re + i im with x^2 = (re + |w|)/2, y = im / (2x)
        let modulus = rat_sqrt(&self.norm())?;
        let two = Rat::from_integer(2.into());
        let x = rat_sqrt(&((&self.re + &modulus) / &two))?;
        let y = &self.im / (&two * &x);
        Some(GaussRat::new(x, y))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -self.clone()
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Prints in the expression grammar: `3/4`, `-i`, `2/3*i`, `(1+2*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = || {
            if self.im.is_one() {
                "i".to_string()
            } else if (-self.im.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rat(&self.im))
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}", im())
        } else if self.im.is_negative() {
            let pos = GaussRat::new(self.re.clone(), -self.im.clone());
            let s = pos.to_string();
            // pos prints as "(re+...)"; swap the sign
            write!(f, "{}", s.replacen('+', "-", 1))
        } else {
            write!(f, "({}+{})", fmt_rat(&self.re), im())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_product() {
        let z = GaussRat::new(rat(1, 2), rat(-3, 4));
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(GaussRat::from_int(-4).sqrt(), Some(GaussRat::new(rat(0, 1), rat(2, 1))));
        assert_eq!(GaussRat::from_int(2).sqrt(), None);
        // (1+i)^2 = 2i
        let two_i = GaussRat::new(rat(0, 1), rat(2, 1));
        let r = two_i.sqrt().unwrap();
        assert_eq!(&r * &r, two_i);
        let w = GaussRat::new(rat(-5, 9), rat(12, 9));
        let r = w.sqrt().unwrap();
        assert_eq!(&r * &r, w);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::new(rat(1, 2), rat(-1, 1)).to_string(), "(1/2-i)");
        assert_eq!(GaussRat::new(rat(0, 1), rat(-2, 3)).to_string(), "-2/3*i");
        assert_eq!(GaussRat::from_int(-7).to_string(), "-7");
    }
}

use std::fmt;

use super::gauss::GaussRat;
use super::gcd::gcd;
use super::mpoly::MPoly;

/// A reduced quotient of polynomials over Q(i) in pi and the parameters.
///
/// Canonical form: `gcd(num, den) = 1`, the denominator's graded-lex leading
/// coefficient is 1, and zero is `0/1`. `Eq` is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: MPoly::one() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    /// Builds `num/den` in canonical form. `None` if `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
            }
        };
        let lc_inv = den.leading_coeff().inv()?;
        Some(RatFunc { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.add(&o.num));
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn scale(&self, c: &GaussRat) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<RatFunc> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn sqrt(&self) -> Option<RatFunc> {
        Self::new(self.num.sqrt()?, self.den.sqrt()?)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let n = if self.num.len() > 1 || self.num.to_string().starts_with('(') {
                format!("({})", self.num)
            } else {
                self.num.to_string()
            };
            let d = self.den.to_string();
            // a product like pi*eta needs parentheses after `/`
            let d = if self.den.len() > 1 || !self.den.leading_coeff().is_one() || d.contains('*') {
                format!("({d})")
            } else {
                d
            };
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::mpoly::Symbol;

    fn pi() -> MPoly {
        MPoly::var(Symbol::Pi)
    }

    #[test]
    fn reduces_and_normalizes() {
        // (2 pi^2 + 2 pi) / (4 pi) = (pi + 1)/2
        let num = pi().mul(&pi()).scale(&GaussRat::from_int(2)).add(&pi().scale(&GaussRat::from_int(2)));
        let den = pi().scale(&GaussRat::from_int(4));
        let r = RatFunc::new(num, den).unwrap();
        let expected =
            RatFunc::from_poly(pi().add(&MPoly::one()).scale(&GaussRat::from_rat(crate::scalars::gauss::rat(1, 2))));
        assert_eq!(r, expected);
    }

    #[test]
    fn inverse_of_two_pi_i() {
        let two_pi_i = RatFunc::from_poly(pi().scale(&GaussRat::from_int(2)).scale(&GaussRat::i()));
        let inv = two_pi_i.inv().unwrap();
        assert!(inv.mul(&two_pi_i).is_one());
        assert_eq!(inv.den(), &pi());
        assert_eq!(inv.to_string(), "-1/2*i/pi");
    }

    #[test]
    fn sums_cancel() {
        let a = RatFunc::new(MPoly::one(), pi().add(&MPoly::one())).unwrap();
        let b = RatFunc::new(pi(), pi().add(&MPoly::one())).unwrap();
        assert!(a.add(&b).is_one());
        assert!(a.sub(&a).is_zero());
    }
}

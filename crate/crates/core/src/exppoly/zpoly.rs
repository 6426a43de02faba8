use std::fmt;

use crate::scalars::Scalar;

/// Dense polynomial in `z` with exact constant coefficients; `coeffs[k]`
/// multiplies `z^k`. The zero polynomial has no coefficients, any other has a
/// nonzero last coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ZPoly(Vec<Scalar>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn z() -> Self {
        ZPoly(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        ZPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.0.last().cloned().unwrap_or_default()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// The same polynomial with its constant coefficient removed.
    pub fn without_constant(&self) -> ZPoly {
        let mut v = self.0.clone();
        if let Some(c) = v.first_mut() {
            *c = Scalar::zero();
        }
        Self::new(v)
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly(self.0.iter().map(Scalar::neg).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> ZPoly {
        Self::new(self.0.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        let mut acc = ZPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> ZPoly {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&crate::scalars::GaussRat::from_int(k as i64)))
                .collect(),
        )
    }

    /// Value at a constant point, by Horner's rule.
    pub fn eval(&self, at: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// `p(z + s)`, by Horner's rule in the ring of polynomials.
    pub fn shift(&self, s: &Scalar) -> ZPoly {
        if s.is_zero() {
            return self.clone();
        }
        let lin = ZPoly::new(vec![s.clone(), Scalar::one()]);
        self.0.iter().rev().fold(ZPoly::zero(), |acc, c| acc.mul(&lin).add(&ZPoly::constant(c.clone())))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl FnMut(&Scalar) -> Scalar) -> ZPoly {
        Self::new(self.0.iter().map(f).collect())
    }
}

fn top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for w in s.as_bytes().windows(3) {
        match w[0] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && w[0] == b' ' && (w[1] == b'+' || w[1] == b'-') && w[2] == b' ' {
            return true;
        }
    }
    false
}

/// A coefficient in front of `z^k` or `exp(..)`: returns the sign and the text
/// to print after it, parenthesizing sums.
pub(crate) fn coefficient_text(c: &Scalar) -> (bool, String) {
    let s = c.to_string();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    };
    if top_level_sum(&body) {
        // sums keep their own leading sign inside the parentheses
        (false, format!("({})", c))
    } else {
        (neg, body)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = coefficient_text(c);
            let zk = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let term = if zk.is_empty() {
                body
            } else if body == "1" {
                zk
            } else {
                format!("{body}*{zk}")
            };
            if first {
                write!(f, "{}{term}", if neg { "-" } else { "" })?;
                first = false;
            } else {
                write!(f, " {} {term}", if neg { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

crate::forward_ring_ops!(ZPoly);

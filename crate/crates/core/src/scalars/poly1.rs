//! Dense univariate polynomials over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly1 {
    /// Coefficients, low degree first, no trailing zeros.
    coeffs: Vec<Rat>,
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = vec![];
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = super::rat::fmt_rat(c);
            terms.push(match i {
                0 => cs,
                1 => format!("({cs})*x"),
                _ => format!("({cs})*x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Poly1::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Poly1::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly1::new(c.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rat) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut r = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Poly1::new(r)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lc = d.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly1::zero(), self.clone());
        }
        let mut quo = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let t = &c * &d.coeffs[j];
                rem[k + j] -= t;
            }
            quo[k] = c;
        }
        (Poly1::new(quo), Poly1::new(rem))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly1 {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Rat::one() / l))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut r = Rat::zero();
        for c in self.coeffs.iter().rev() {
            r = r * x + c;
        }
        r
    }

    pub fn derivative(&self) -> Poly1 {
        Poly1::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Scale to a primitive integer polynomial with positive leading
    /// coefficient: returns the integer coefficients.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.iter().map(|c| c / &g * &sign).collect()
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Poly1 {
        // Newton divided differences
        let n = points.len();
        let xs: Vec<Rat> = points.iter().map(|p| p.0.clone()).collect();
        let mut dd: Vec<Rat> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        let mut p = Poly1::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            p = p.mul(&Poly1::new(vec![-xs[i].clone(), Rat::one()]));
            p = p.add(&Poly1::constant(dd[i].clone()));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::{int, rat};

    #[test]
    fn arithmetic_and_gcd() {
        let a = Poly1::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = Poly1::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), Poly1::from_ints(&[1, 1]));
        let (q, r) = a.div_rem(&Poly1::from_ints(&[-1, 1]));
        assert_eq!(q, Poly1::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.eval(&int(3)), int(8));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly1::new(vec![rat(1, 2), int(-3), int(0), rat(7, 3)]);
        let pts: Vec<(Rat, Rat)> = (0..4).map(|i| (int(i), p.eval(&int(i)))).collect();
        assert_eq!(Poly1::interpolate(&pts), p);
    }

    #[test]
    fn primitive_form() {
        let p = Poly1::new(vec![rat(1, 2), rat(-1, 3)]);
        assert_eq!(p.primitive_integer(), vec![BigInt::from(-3), BigInt::from(2)]);
    }
}

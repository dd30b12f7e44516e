//! Truncated Laurent series in `u = t - 1` over a coefficient field.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::One;

use super::poly2::{Poly2, RatFunc2};
use super::qfunc::QFunc;
use super::rat::Rat;

/// Field operations needed by series arithmetic.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse when representable.
    fn inv(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;
}

impl Coeff for QFunc {
    fn zero() -> Self {
        QFunc::zero()
    }
    fn one() -> Self {
        QFunc::one()
    }
    fn is_zero(&self) -> bool {
        QFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        QFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        QFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv()
    }
    fn from_rat(r: &Rat) -> Self {
        QFunc::from_rat(r)
    }
}

impl Coeff for RatFunc2 {
    fn zero() -> Self {
        RatFunc2::zero()
    }
    fn one() -> Self {
        RatFunc2::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc2::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc2::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc2::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc2::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc2::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc2::inv(self)
    }
    fn from_rat(r: &Rat) -> Self {
        RatFunc2::constant(r.clone())
    }
}

/// `Σ_{k ≥ val} c_k u^k + O(u^prec)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentU<C: Coeff> {
    val: i32,
    /// `coeffs[k]` multiplies `u^{val + k}`; `coeffs[0]` nonzero unless
    /// the series is zero to the stated precision (then empty, `val = prec`).
    coeffs: Vec<C>,
    prec: i32,
}

impl<C: Coeff> LaurentU<C> {
    /// Build from coefficients starting at `u^start`, known up to `O(u^prec)`.
    pub fn new(start: i32, coeffs: Vec<C>, prec: i32) -> Self {
        let mut s = LaurentU { val: start, coeffs, prec };
        s.coeffs.truncate((prec - start).max(0) as usize);
        s.normalize();
        s
    }

    pub fn constant(c: C, prec: i32) -> Self {
        LaurentU::new(0, vec![c], prec)
    }

    pub fn zero(prec: i32) -> Self {
        LaurentU { val: prec, coeffs: vec![], prec }
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.val += lead as i32;
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Valuation (equals `prec` for a series that is zero to precision).
    pub fn valuation(&self) -> i32 {
        self.val
    }

    pub fn precision(&self) -> i32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^k` (`k < prec`).
    pub fn coeff(&self, k: i32) -> C {
        assert!(k < self.prec, "coefficient u^{k} beyond precision {}", self.prec);
        if k < self.val {
            return C::zero();
        }
        self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let start = self.val.min(o.val);
        let cs = (start..prec).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        LaurentU::new(start, cs, prec)
    }

    pub fn neg(&self) -> Self {
        LaurentU { val: self.val, coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        LaurentU::new(self.val, self.coeffs.iter().map(|x| x.mul(c)).collect(), self.prec)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            let prec = (self.prec + o.val.min(o.prec)).min(o.prec + self.val.min(self.prec));
            return LaurentU::zero(prec);
        }
        let prec = (self.prec + o.val).min(o.prec + self.val);
        let start = self.val + o.val;
        let n = (prec - start).max(0) as usize;
        let mut cs = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    cs[i + j] = cs[i + j].add(&a.mul(b));
                }
            }
        }
        LaurentU::new(start, cs, prec)
    }

    /// Multiplicative inverse; requires an invertible leading coefficient.
    pub fn inv(&self) -> Option<Self> {
        let lead = self.leading()?.inv()?;
        let rel = (self.prec - self.val) as usize; // relative precision
        let mut r: Vec<C> = Vec::with_capacity(rel);
        for k in 0..rel {
            let mut acc = if k == 0 { C::one() } else { C::zero() };
            for j in 1..=k {
                if let Some(a) = self.coeffs.get(j) {
                    acc = acc.sub(&a.mul(&r[k - j]));
                }
            }
            r.push(acc.mul(&lead));
        }
        Some(LaurentU::new(-self.val, r, rel as i32 - self.val))
    }

    /// `(1 + u)^a` for integer `a`.
    pub fn binomial(a: i64, prec: i32) -> Self {
        let mut cs = vec![];
        let mut c = Rat::one();
        for k in 0..prec.max(0) as i64 {
            cs.push(C::from_rat(&c));
            c = c * Rat::from_integer(BigInt::from(a - k)) / Rat::from_integer(BigInt::from(k + 1));
        }
        LaurentU::new(0, cs, prec)
    }

    /// Lower the precision.
    pub fn truncate(&self, prec: i32) -> Self {
        let p = prec.min(self.prec);
        LaurentU::new(self.val, self.coeffs.clone(), p)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentU<D> {
        LaurentU::new(self.val, self.coeffs.iter().map(f).collect(), self.prec)
    }
}

/// Substitute `t = 1 + u` in `f` and expand to `O(u^order)` (absolute
/// order).  Coefficients are `t`-free rational functions in `q`.
pub fn laurent_expand(f: &RatFunc2, order: i32) -> LaurentU<RatFunc2> {
    let num = poly2_at_one_plus_u(f.num());
    let den = poly2_at_one_plus_u(f.den());
    let v = den.iter().position(|c| !Coeff::is_zero(c)).expect("nonzero denominator") as i32;
    let w = num.iter().position(|c| !Coeff::is_zero(c)).map(|x| x as i32).unwrap_or(order.max(v) + 1);
    // numerator and denominator are exact polynomials in u; give them
    // enough precision that the quotient is known to O(u^order)
    let big = order.abs() + 2 * v + w.abs() + 2;
    let n = LaurentU::new(0, num, big);
    let d = LaurentU::new(0, den, big);
    let d_inv = d.inv().expect("leading coefficient invertible");
    n.mul(&d_inv).truncate(order)
}

/// Exact expansion of a Laurent polynomial in `t` at `t = 1 + u`.
fn poly2_at_one_plus_u(p: &Poly2) -> Vec<RatFunc2> {
    let (lo, cs) = p.t_coeffs();
    if cs.is_empty() {
        return vec![];
    }
    // multiply through by t^{-lo} when lo < 0 is handled by the caller's
    // reduced form (nonnegative t-degrees), so lo >= 0 here.
    assert!(lo >= 0, "reduced RatFunc2 has nonnegative t-degrees");
    let maxdeg = lo as usize + cs.len() - 1;
    let mut out = vec![RatFunc2::zero(); maxdeg + 1];
    for (k, c) in cs.iter().enumerate() {
        let j = lo as usize + k;
        let cq = RatFunc2::from_poly(Poly2::from_poly1_q(c));
        // (1+u)^j = Σ binom(j, i) u^i
        let mut b = BigInt::one();
        for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
            *slot = slot.add(&cq.mul(&RatFunc2::constant(Rat::from_integer(b.clone()))));
            b = b * BigInt::from(j - i) / BigInt::from(i + 1);
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    if out.is_empty() {
        out.push(RatFunc2::zero());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::poly1::Poly1;
    use crate::scalars::rat::int;

    fn q_minus(a: i64) -> RatFunc2 {
        RatFunc2::from_poly(Poly2::from_poly1_q(&Poly1::from_ints(&[-a, 1])))
    }

    #[test]
    fn pole_of_inverse_t_minus_one() {
        let f = RatFunc2::new(Poly2::one(), Poly2::t().sub(&Poly2::one()));
        let s = laurent_expand(&f, 2);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.leading().unwrap(), &RatFunc2::one());
    }

    #[test]
    fn regular_point_expansion() {
        // (q t - 1)/(q - 1) = 1 + q/(q-1) u
        let num = Poly2::monomial(int(1), 1, 1).sub(&Poly2::one());
        let f = RatFunc2::new(num, q_minus(1).num().clone());
        let s = laurent_expand(&f, 3);
        assert_eq!(s.valuation(), 0);
        assert_eq!(s.coeff(0), RatFunc2::one());
        let expect = RatFunc2::from_poly(Poly2::q()).div(&q_minus(1)).unwrap();
        assert_eq!(s.coeff(1), expect);
        assert!(s.coeff(2).is_zero());
    }

    #[test]
    fn zero_of_order_one() {
        // (t - 1)/(q t - 1): valuation 1, leading 1/(q-1)
        let f = RatFunc2::new(Poly2::t().sub(&Poly2::one()), Poly2::monomial(int(1), 1, 1).sub(&Poly2::one()));
        let s = laurent_expand(&f, 3);
        assert_eq!(s.valuation(), 1);
        assert_eq!(s.leading().unwrap(), &q_minus(1).inv().unwrap());
    }

    #[test]
    fn series_inverse_roundtrip() {
        let s: LaurentU<QFunc> = LaurentU::binomial(-3, 5);
        let p = s.mul(&s.inv().unwrap());
        assert_eq!(p, LaurentU::constant(QFunc::one(), 5));
    }
}

//! Univariate rational functions in `q` whose denominators factor into a
//! positive integer, a power of `q`, and cyclotomic polynomials `Φ_d(q)`.
//!
//! This is the working coefficient field for intertwining-operator
//! entries: the `u`-expansion of `(q-1)/(q^{m+1}(1+u)^a - 1)` and
//! `(q^m(1+u)^a - 1)/(q^{m+1}(1+u)^a - 1)` only ever divides by such
//! factors.  The representation is canonical, so structural equality is
//! value equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclo;
use super::modp::{bigint_mod, inv_mod, mul_mod, pow_mod};
use super::zpoly::{self, ZPoly};

/// Factored denominator `c · q^e · Π Φ_d(q)^{k_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Den {
    pub c: BigInt,
    pub qexp: u32,
    /// Sorted by `d`, all exponents positive.
    pub cyc: Vec<(u32, u32)>,
}

impl Den {
    pub fn one() -> Self {
        Den { c: BigInt::one(), qexp: 0, cyc: vec![] }
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.qexp == 0 && self.cyc.is_empty()
    }

    /// Least common multiple of two factored denominators.
    pub fn lcm(&self, other: &Den) -> Den {
        let mut cyc = Vec::with_capacity(self.cyc.len() + other.cyc.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cyc.len() || j < other.cyc.len() {
            match (self.cyc.get(i), other.cyc.get(j)) {
                (Some(&(da, ka)), Some(&(db, kb))) if da == db => {
                    cyc.push((da, ka.max(kb)));
                    i += 1;
                    j += 1;
                }
                (Some(&(da, ka)), Some(&(db, _))) if da < db => {
                    cyc.push((da, ka));
                    i += 1;
                }
                (Some(_), Some(&(db, kb))) => {
                    cyc.push((db, kb));
                    j += 1;
                }
                (Some(&(da, ka)), None) => {
                    cyc.push((da, ka));
                    i += 1;
                }
                (None, Some(&(db, kb))) => {
                    cyc.push((db, kb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Den { c: self.c.lcm(&other.c), qexp: self.qexp.max(other.qexp), cyc }
    }

    pub fn mul(&self, other: &Den) -> Den {
        let mut cyc = self.cyc.clone();
        for &(d, k) in &other.cyc {
            match cyc.binary_search_by_key(&d, |e| e.0) {
                Ok(pos) => cyc[pos].1 += k,
                Err(pos) => cyc.insert(pos, (d, k)),
            }
        }
        Den { c: &self.c * &other.c, qexp: self.qexp + other.qexp, cyc }
    }

    /// Cofactor `self / sub` as a polynomial, assuming `sub | self`.
    fn cofactor(&self, sub: &Den) -> (BigInt, u32, Vec<(u32, u32)>) {
        let c = &self.c / &sub.c;
        let qe = self.qexp - sub.qexp;
        let mut extra = vec![];
        for &(d, k) in &self.cyc {
            let ks = sub
                .cyc
                .binary_search_by_key(&d, |e| e.0)
                .map(|p| sub.cyc[p].1)
                .unwrap_or(0);
            if k > ks {
                extra.push((d, k - ks));
            }
        }
        (c, qe, extra)
    }

    /// The denominator expanded as an integer polynomial.
    pub fn to_poly(&self) -> ZPoly {
        let mut p: ZPoly = vec![self.c.clone()];
        p = zpoly::shift(&p, self.qexp as usize);
        for &(d, k) in &self.cyc {
            for _ in 0..k {
                p = zpoly::mul_small(&p, &cyclo::get(d).coeffs);
            }
        }
        p
    }

    /// Value modulo `p` at `q = s`.
    pub fn eval_mod(&self, s: u64, p: u64) -> u64 {
        let mut r = mul_mod(bigint_mod(&self.c, p), pow_mod(s, self.qexp as u64, p), p);
        for &(d, k) in &self.cyc {
            let v = eval_small_mod(&cyclo::get(d).coeffs, s, p);
            r = mul_mod(r, pow_mod(v, k as u64, p), p);
        }
        r
    }

    /// True when the denominator cannot vanish at any integer `q ≥ 2`.
    /// Cyclotomic values at integers `≥ 2` are nonzero, so this always
    /// holds; kept as an explicit check for certificates.
    pub fn nonvanishing_at_prime_powers(&self) -> bool {
        !self.c.is_zero()
    }
}

fn eval_small_mod(c: &[i64], s: u64, p: u64) -> u64 {
    let mut r = 0u64;
    for &a in c.iter().rev() {
        let am = if a >= 0 { a as u64 % p } else { p - ((-a) as u64 % p) } % p;
        r = (mul_mod(r, s, p) + am) % p;
    }
    r
}

/// An element `num / den` of `Q(q)` with cyclotomic-type denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFunc {
    num: ZPoly,
    den: Den,
}

impl fmt::Debug for QFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_poly(p: &[BigInt]) -> String {
    let mut terms = vec![];
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let t = match i {
            0 => format!("{c}"),
            1 if c.is_one() => "q".to_string(),
            1 => format!("{c}*q"),
            _ if c.is_one() => format!("q^{i}"),
            _ => format!("{c}*q^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for QFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", fmt_poly(&self.num));
        }
        let mut parts = vec![];
        if !self.den.c.is_one() {
            parts.push(self.den.c.to_string());
        }
        if self.den.qexp > 0 {
            parts.push(format!("q^{}", self.den.qexp));
        }
        for &(d, k) in &self.den.cyc {
            parts.push(format!("Phi{d}^{k}"));
        }
        write!(f, "({})/({})", fmt_poly(&self.num), parts.join("*"))
    }
}

impl QFunc {
    pub fn zero() -> Self {
        QFunc { num: vec![], den: Den::one() }
    }

    pub fn one() -> Self {
        QFunc::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        QFunc::from_bigint(BigInt::from(k))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        let mut num = vec![k];
        zpoly::trim(&mut num);
        QFunc { num, den: Den::one() }
    }

    pub fn from_rat(r: &BigRational) -> Self {
        let mut x = QFunc {
            num: vec![r.numer().clone()],
            den: Den { c: r.denom().clone(), qexp: 0, cyc: vec![] },
        };
        x.normalize();
        x
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QFunc { num: vec![BigInt::zero(), BigInt::one()], den: Den::one() }
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            QFunc { num: zpoly::shift(&[BigInt::one()], e as usize), den: Den::one() }
        } else {
            QFunc { num: vec![BigInt::one()], den: Den { c: BigInt::one(), qexp: (-e) as u32, cyc: vec![] } }
        }
    }

    /// Integer polynomial in `q` (low degree first).
    pub fn from_poly(mut num: ZPoly) -> Self {
        zpoly::trim(&mut num);
        let mut x = QFunc { num, den: Den::one() };
        x.normalize();
        x
    }

    pub fn from_parts(num: ZPoly, den: Den) -> Self {
        assert!(!den.c.is_zero(), "zero denominator");
        let mut x = QFunc { num, den };
        if x.den.c.is_negative() {
            x.den.c = -x.den.c.clone();
            x.num = zpoly::neg(&x.num);
        }
        x.normalize();
        x
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &Den {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.len() == 1 && self.num[0].is_one()
    }

    /// Is this a rational constant?
    pub fn as_rat(&self) -> Option<BigRational> {
        if self.num.len() <= 1 && self.den.qexp == 0 && self.den.cyc.is_empty() {
            let n = self.num.first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den.c.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        zpoly::trim(&mut self.num);
        if self.num.is_empty() {
            self.den = Den::one();
            return;
        }
        // powers of q
        let lead_zeros = self.num.iter().take_while(|c| c.is_zero()).count() as u32;
        let k = lead_zeros.min(self.den.qexp);
        if k > 0 {
            self.num.drain(..k as usize);
            self.den.qexp -= k;
        }
        // cyclotomic factors
        if !self.den.cyc.is_empty() {
            let mut cyc = std::mem::take(&mut self.den.cyc);
            for entry in cyc.iter_mut() {
                let data = cyclo::get(entry.0);
                while entry.1 > 0 && zpoly::eval_mod(&self.num, data.root, data.prime) == 0 {
                    match zpoly::div_exact_monic(&self.num, &data.coeffs) {
                        Some(qt) => {
                            self.num = qt;
                            entry.1 -= 1;
                        }
                        None => break,
                    }
                }
            }
            cyc.retain(|e| e.1 > 0);
            self.den.cyc = cyc;
        }
        // integer content
        if !self.den.c.is_one() {
            let g = zpoly::content(&self.num).gcd(&self.den.c);
            if !g.is_one() {
                self.num = zpoly::div_scalar_exact(&self.num, &g);
                self.den.c = &self.den.c / &g;
            }
        }
    }

    pub fn neg(&self) -> Self {
        QFunc { num: zpoly::neg(&self.num), den: self.den.clone() }
    }

    pub fn add(&self, other: &QFunc) -> QFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let mut r = QFunc { num: zpoly::add(&self.num, &other.num), den: self.den.clone() };
            r.normalize();
            return r;
        }
        let l = self.den.lcm(&other.den);
        let a = lift(&self.num, &l.cofactor(&self.den));
        let b = lift(&other.num, &l.cofactor(&other.den));
        let mut r = QFunc { num: zpoly::add(&a, &b), den: l };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &QFunc) -> QFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QFunc) -> QFunc {
        if self.is_zero() || other.is_zero() {
            return QFunc::zero();
        }
        let mut r = QFunc { num: zpoly::mul(&self.num, &other.num), den: self.den.mul(&other.den) };
        r.normalize();
        r
    }

    pub fn mul_int(&self, k: i64) -> QFunc {
        if k == 0 {
            return QFunc::zero();
        }
        let mut r = QFunc { num: zpoly::scale(&self.num, &BigInt::from(k)), den: self.den.clone() };
        r.normalize();
        r
    }

    /// Multiply by `q^e`.
    pub fn mul_q_pow(&self, e: i64) -> QFunc {
        self.mul(&QFunc::q_pow(e))
    }

    /// Inverse, defined when the numerator itself factors as
    /// `±c · q^e · Π Φ_d`; returns `None` otherwise or for zero.
    pub fn try_inv(&self) -> Option<QFunc> {
        if self.is_zero() {
            return None;
        }
        let (c, qe, cyc) = factor_cyclotomic(&self.num)?;
        // 1 / (c q^e Π Φ) times den
        let num = self.den.to_poly();
        let sign_neg = c.is_negative();
        let mut x = QFunc { num, den: Den { c: c.abs(), qexp: qe, cyc } };
        if sign_neg {
            x.num = zpoly::neg(&x.num);
        }
        x.normalize();
        Some(x)
    }

    /// Evaluate at `q = s` modulo `p`; `None` if the denominator vanishes.
    pub fn eval_mod(&self, s: u64, p: u64) -> Option<u64> {
        let d = self.den.eval_mod(s, p);
        if d == 0 {
            return None;
        }
        Some(mul_mod(zpoly::eval_mod(&self.num, s, p), inv_mod(d, p), p))
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rat(&self, s: &BigRational) -> Option<BigRational> {
        let num = eval_poly_rat(&self.num, s);
        let den = eval_poly_rat(&self.den.to_poly(), s);
        if den.is_zero() {
            None
        } else {
            Some(num / den)
        }
    }

    /// Largest numerator degree.
    pub fn num_degree(&self) -> usize {
        zpoly::degree(&self.num).unwrap_or(0)
    }

    /// Numerator bit size.
    pub fn num_bits(&self) -> u64 {
        zpoly::max_bits(&self.num)
    }
}

fn eval_poly_rat(p: &[BigInt], s: &BigRational) -> BigRational {
    let mut r = BigRational::zero();
    for c in p.iter().rev() {
        r = r * s + BigRational::from_integer(c.clone());
    }
    r
}

fn lift(num: &[BigInt], cof: &(BigInt, u32, Vec<(u32, u32)>)) -> ZPoly {
    let mut p = zpoly::scale(num, &cof.0);
    p = zpoly::shift(&p, cof.1 as usize);
    for &(d, k) in &cof.2 {
        for _ in 0..k {
            p = zpoly::mul_small(&p, &cyclo::get(d).coeffs);
        }
    }
    p
}

/// Write a nonzero integer polynomial as `c · q^e · Π Φ_d^{k_d}` if
/// possible.
pub fn factor_cyclotomic(p: &[BigInt]) -> Option<(BigInt, u32, Vec<(u32, u32)>)> {
    let mut num: ZPoly = p.to_vec();
    zpoly::trim(&mut num);
    if num.is_empty() {
        return None;
    }
    let qe = num.iter().take_while(|c| c.is_zero()).count();
    num.drain(..qe);
    let mut cyc = vec![];
    let mut d = 1u32;
    while num.len() > 1 {
        // deg Φ_d = φ(d) ≥ sqrt(d/2); stop once no divisor can fit
        let data = cyclo::get(d);
        if data.coeffs.len() <= num.len() {
            let mut k = 0;
            while zpoly::eval_mod(&num, data.root, data.prime) == 0 {
                match zpoly::div_exact_monic(&num, &data.coeffs) {
                    Some(qt) => {
                        num = qt;
                        k += 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                cyc.push((d, k));
            }
        }
        d += 1;
        if num.len() > 1 && (d as usize) > 2 * num.len() * num.len() + 2 {
            return None;
        }
    }
    Some((num[0].clone(), qe as u32, cyc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm1(k: i64) -> QFunc {
        QFunc::q_pow(k).sub(&QFunc::one())
    }

    #[test]
    fn cancellation_is_canonical() {
        // (q^2 - 1)/(q - 1) = q + 1
        let a = qm1(2).mul(&qm1(1).try_inv().unwrap());
        assert_eq!(a, QFunc::q().add(&QFunc::one()));
        // 1/q * q = 1
        assert!(QFunc::q_pow(-3).mul(&QFunc::q_pow(3)).is_one());
    }

    #[test]
    fn sums_with_different_denominators() {
        // 1/(q-1) - 1/(q+1) = 2/(q^2-1)
        let a = qm1(1).try_inv().unwrap();
        let b = QFunc::q().add(&QFunc::one()).try_inv().unwrap();
        let lhs = a.sub(&b);
        let rhs = qm1(2).try_inv().unwrap().mul_int(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorization_of_products() {
        let p = qm1(6).mul(&qm1(4)).mul_int(-3).mul_q_pow(2);
        let (c, e, cyc) = factor_cyclotomic(p.num()).unwrap();
        assert_eq!(c, BigInt::from(-3));
        assert_eq!(e, 2);
        assert_eq!(cyc, vec![(1, 2), (2, 2), (3, 1), (4, 1), (6, 1)]);
        // q^2 + 1 + q + ... not cyclotomic: 2q + 1
        assert!(factor_cyclotomic(&[BigInt::from(1), BigInt::from(2)]).is_none());
    }

    #[test]
    fn evaluation() {
        let a = qm1(1).try_inv().unwrap().mul(&QFunc::q());
        let v = a.eval_rat(&BigRational::from_integer(3.into())).unwrap();
        assert_eq!(v, BigRational::new(3.into(), 2.into()));
        let p = 1_000_000_007;
        assert_eq!(a.eval_mod(3, p), Some(mul_mod(3, inv_mod(2, p), p)));
    }
}

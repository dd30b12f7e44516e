//! Polynomials in the Hecke parameter `q` and the deformation variable
//! `t = q^{z - z0}` (Laurent in `t`), and their reduced fractions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly1::Poly1;
use super::rat::{fmt_rat, Rat};

/// Sparse map `(deg_q, deg_t) -> coefficient`; `deg_t` may be negative.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, i32), Rat>,
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut s = fmt_rat(c);
                if i > 0 {
                    s += &format!("*q^{i}");
                }
                if j != 0 {
                    s += &format!("*t^{j}");
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::monomial(Rat::one(), 0, 0)
    }

    pub fn constant(c: Rat) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, dq: u32, dt: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dq, dt), c);
        }
        Poly2 { terms }
    }

    pub fn q() -> Self {
        Poly2::monomial(Rat::one(), 1, 0)
    }

    pub fn t() -> Self {
        Poly2::monomial(Rat::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i32), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, k: (u32, i32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &Poly2) -> Poly2 {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.insert_add(*k, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &Poly2) -> Poly2 {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Rat) -> Poly2 {
        if k.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn mul(&self, o: &Poly2) -> Poly2 {
        let mut r = Poly2::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &o.terms {
                r.insert_add((a + x, b + y), c * d);
            }
        }
        r
    }

    /// Multiply by `q^dq t^dt`.
    pub fn shift(&self, dq: u32, dt: i32) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(&(a, b), c)| ((a + dq, b + dt), c.clone())).collect() }
    }

    pub fn min_t(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).min()
    }

    pub fn max_t(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn min_q(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).min()
    }

    /// Is the polynomial independent of `t`?
    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    pub fn eval(&self, q: &Rat, t: &Rat) -> Rat {
        let mut r = Rat::zero();
        for (&(i, j), c) in &self.terms {
            let tj = if j >= 0 { num_traits::pow(t.clone(), j as usize) } else { Rat::one() / num_traits::pow(t.clone(), (-j) as usize) };
            r += c * num_traits::pow(q.clone(), i as usize) * tj;
        }
        r
    }

    /// Coefficients in `t` (from `t^min_t` upward) as polynomials in `q`.
    pub fn t_coeffs(&self) -> (i32, Vec<Poly1>) {
        let Some(lo) = self.min_t() else { return (0, vec![]) };
        let hi = self.max_t().unwrap();
        let mut out = vec![vec![]; (hi - lo + 1) as usize];
        for (&(i, j), c) in &self.terms {
            let v: &mut Vec<Rat> = &mut out[(j - lo) as usize];
            if v.len() <= i as usize {
                v.resize(i as usize + 1, Rat::zero());
            }
            v[i as usize] = c.clone();
        }
        (lo, out.into_iter().map(Poly1::new).collect())
    }

    pub fn from_t_coeffs(lo: i32, cs: &[Poly1]) -> Poly2 {
        let mut r = Poly2::zero();
        for (k, p) in cs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                r.insert_add((i as u32, lo + k as i32), c.clone());
            }
        }
        r
    }

    /// View a `t`-free polynomial as a polynomial in `q`.
    pub fn to_poly1_q(&self) -> Option<Poly1> {
        if !self.is_t_free() {
            return None;
        }
        let (_, cs) = self.t_coeffs();
        Some(cs.into_iter().next().unwrap_or_default())
    }

    pub fn from_poly1_q(p: &Poly1) -> Poly2 {
        Poly2::from_t_coeffs(0, std::slice::from_ref(p))
    }

    fn leading(&self) -> Option<(&(u32, i32), &Rat)> {
        self.terms.iter().next_back()
    }
}

// ---- gcd over Q[q][t] by primitive pseudo-remainder sequences ----

type TPoly = Vec<Poly1>; // coefficients in t, low first

fn tp_trim(p: &mut TPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn tp_content(p: &TPoly) -> Poly1 {
    p.iter().fold(Poly1::zero(), |g, c| g.gcd(c))
}

fn tp_div_q(p: &TPoly, d: &Poly1) -> TPoly {
    p.iter()
        .map(|c| {
            let (qt, r) = c.div_rem(d);
            debug_assert!(r.is_zero());
            qt
        })
        .collect()
}

fn tp_prem(a: &TPoly, b: &TPoly) -> TPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        r = r.iter().map(|c| c.mul(&lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&bj.mul(&lr));
        }
        tp_trim(&mut r);
    }
    r
}

fn tp_gcd(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let ca = tp_content(a);
    let cb = tp_content(b);
    let c = ca.gcd(&cb);
    let mut x = tp_div_q(a, &ca);
    let mut y = tp_div_q(b, &cb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = tp_prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { tp_div_q(&r, &tp_content(&r)) };
    }
    let g = if x.len() == 1 { vec![Poly1::constant(Rat::one())] } else { x };
    g.iter().map(|p| p.mul(&c)).collect()
}

/// Exact division `a / b` in `Q[q][t]` (polynomial `t`-degrees); `None`
/// when it does not divide.
fn tp_div_exact(a: &TPoly, b: &TPoly) -> Option<TPoly> {
    let mut r = a.clone();
    tp_trim(&mut r);
    let db = b.len() - 1;
    if r.is_empty() {
        return Some(vec![]);
    }
    if r.len() <= db {
        return None;
    }
    let mut q = vec![Poly1::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let (c, rem) = r.last().unwrap().div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&bj.mul(&c));
        }
        q[k] = c;
        tp_trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Reduced fraction of two [`Poly2`]s.
#[derive(Clone)]
pub struct RatFunc2 {
    num: Poly2,
    den: Poly2,
}

impl fmt::Debug for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl PartialEq for RatFunc2 {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for RatFunc2 {}

impl RatFunc2 {
    pub fn new(num: Poly2, den: Poly2) -> Self {
        assert!(!den.is_zero(), "RatFunc2 with zero denominator");
        let mut r = RatFunc2 { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFunc2::new(p, Poly2::one())
    }

    pub fn zero() -> Self {
        RatFunc2 { num: Poly2::zero(), den: Poly2::one() }
    }

    pub fn one() -> Self {
        RatFunc2 { num: Poly2::one(), den: Poly2::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc2::from_poly(Poly2::constant(c))
    }

    /// `q^e t^a` for any integers `e`, `a`.
    pub fn q_t_monomial(e: i64, a: i32) -> Self {
        if e >= 0 {
            RatFunc2::from_poly(Poly2::monomial(Rat::one(), e as u32, a))
        } else {
            RatFunc2::new(Poly2::monomial(Rat::one(), 0, a), Poly2::monomial(Rat::one(), (-e) as u32, 0))
        }
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel monomials, content and the polynomial gcd, then normalise
    /// the denominator to leading coefficient one.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly2::one();
            return;
        }
        // move to nonnegative t-degrees with no common monomial in t or q
        let st = self.num.min_t().unwrap().min(self.den.min_t().unwrap());
        let sq = self.num.min_q().unwrap().min(self.den.min_q().unwrap());
        let shift = |p: &Poly2| Poly2 {
            terms: p.terms.iter().map(|(&(a, b), c)| ((a - sq, b - st), c.clone())).collect(),
        };
        let n = shift(&self.num);
        let d = shift(&self.den);
        let (_, nt) = n.t_coeffs_from_zero();
        let (_, dt) = d.t_coeffs_from_zero();
        let g = tp_gcd(&nt, &dt);
        let (n2, d2) = if g.len() == 1 && g[0].degree() == Some(0) {
            (n, d)
        } else {
            let nq = tp_div_exact(&nt, &g).expect("gcd divides numerator");
            let dq = tp_div_exact(&dt, &g).expect("gcd divides denominator");
            (Poly2::from_t_coeffs(0, &nq), Poly2::from_t_coeffs(0, &dq))
        };
        let lc = d2.leading().unwrap().1.clone();
        let inv = Rat::one() / lc;
        self.num = n2.scale(&inv);
        self.den = d2.scale(&inv);
    }

    pub fn add(&self, o: &RatFunc2) -> RatFunc2 {
        if self.den == o.den {
            return RatFunc2::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc2::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFunc2 {
        RatFunc2 { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc2) -> RatFunc2 {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc2) -> RatFunc2 {
        RatFunc2::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<RatFunc2> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc2::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &RatFunc2) -> Option<RatFunc2> {
        Some(self.mul(&o.inv()?))
    }

    /// Evaluate at rational `(q, t)`; `None` if the denominator vanishes.
    pub fn eval(&self, q: &Rat, t: &Rat) -> Option<Rat> {
        let d = self.den.eval(q, t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(q, t) / d)
        }
    }

    pub fn is_t_free(&self) -> bool {
        self.num.is_t_free() && self.den.is_t_free()
    }
}

impl Poly2 {
    /// `t`-coefficients assuming all `t`-degrees are nonnegative.
    fn t_coeffs_from_zero(&self) -> (i32, Vec<Poly1>) {
        let (lo, cs) = self.t_coeffs();
        assert!(lo >= 0);
        let mut out = vec![Poly1::zero(); lo as usize];
        out.extend(cs);
        (0, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::{int, rat};

    fn qt_minus_1(e: i64, a: i32) -> RatFunc2 {
        RatFunc2::q_t_monomial(e, a).sub(&RatFunc2::one())
    }

    #[test]
    fn bivariate_gcd_cancels_binomials() {
        // (q^2 t^2 - 1) / (q t - 1) = q t + 1
        let f = qt_minus_1(2, 2).div(&qt_minus_1(1, 1)).unwrap();
        assert_eq!(f.den(), &Poly2::one());
        assert_eq!(f.num(), &Poly2::monomial(int(1), 1, 1).add(&Poly2::one()));
    }

    #[test]
    fn field_identities() {
        let a = qt_minus_1(3, -1).div(&qt_minus_1(1, 2)).unwrap();
        let b = RatFunc2::q_t_monomial(-2, 1);
        let s = a.add(&b).sub(&b);
        assert_eq!(s, a);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc2::one());
        let v = a.eval(&int(2), &rat(1, 3)).unwrap();
        let expect = (int(8) * int(3) - int(1)) / (int(2) / int(9) - int(1));
        assert_eq!(v, expect);
    }
}

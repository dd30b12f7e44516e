//! The finite Iwahori–Hecke algebra `H_0(q)`, the parabolic module
//! `H_0 · triv`, normalised intertwining elements along `χ_{P,z}` and the
//! image / kernel computations built on them.
//!
//! Basis `T_w`, quadratic relation `T_s^2 = (q-1) T_s + q T_e`.  Intertwining
//! operators act by right multiplication; images are spanned by left
//! translates `T_x · (triv · n_w)`.

pub mod images;
pub mod series;
pub mod zampera;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::laurent::Coeff;
use crate::scalars::modp::{add_mod, mul_mod, sub_mod};
use crate::scalars::rat::{fmt_rat, to_i64, Rat};
use crate::scalars::{Poly2, RatFunc2};
use crate::weyl::{EltId, WeylGroup};

pub use images::*;
pub use series::*;
pub use zampera::*;

/// Sparse element `Σ c_w T_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElt<C: Coeff> {
    pub terms: BTreeMap<EltId, C>,
}

impl<C: Coeff> HeckeElt<C> {
    pub fn zero() -> Self {
        HeckeElt { terms: BTreeMap::new() }
    }

    pub fn basis(x: EltId) -> Self {
        HeckeElt { terms: BTreeMap::from([(x, C::one())]) }
    }

    pub fn coeff(&self, x: EltId) -> C {
        self.terms.get(&x).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, x: EltId, c: &C) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.get(&x).map(|old| old.add(c)).unwrap_or_else(|| c.clone());
        if v.is_zero() {
            self.terms.remove(&x);
        } else {
            self.terms.insert(x, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (x, c) in &o.terms {
            r.add_term(*x, c);
        }
        r
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut r = HeckeElt::zero();
        for (x, c) in &self.terms {
            r.add_term(*x, &c.mul(k));
        }
        r
    }

    pub fn to_dense(&self, size: usize) -> Vec<C> {
        let mut v = vec![C::zero(); size];
        for (x, c) in &self.terms {
            v[*x] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[C]) -> Self {
        let mut r = HeckeElt::zero();
        for (x, c) in v.iter().enumerate() {
            r.add_term(x, c);
        }
        r
    }
}

/// `v · T_s` on a dense coefficient vector.
pub fn right_mul_ts<C: Coeff>(g: &WeylGroup, v: &[C], s: usize, q: &C) -> Vec<C> {
    let qm1 = q.sub(&C::one());
    let mut out = vec![C::zero(); v.len()];
    for (x, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let y = g.rmul(x, s);
        if g.length(y) > g.length(x) {
            out[y] = out[y].add(c);
        } else {
            out[x] = out[x].add(&c.mul(&qm1));
            out[y] = out[y].add(&c.mul(q));
        }
    }
    out
}

/// `T_s · v` on a dense coefficient vector.
pub fn left_mul_ts<C: Coeff>(g: &WeylGroup, s: usize, v: &[C], q: &C) -> Vec<C> {
    let qm1 = q.sub(&C::one());
    let mut out = vec![C::zero(); v.len()];
    for (x, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let y = g.lmul(s, x);
        if g.length(y) > g.length(x) {
            out[y] = out[y].add(c);
        } else {
            out[x] = out[x].add(&c.mul(&qm1));
            out[y] = out[y].add(&c.mul(q));
        }
    }
    out
}

/// `v · T_s` modulo `p` with `q = qv`.
pub fn right_mul_ts_mod(g: &WeylGroup, v: &[u64], s: usize, qv: u64, p: u64) -> Vec<u64> {
    let qm1 = sub_mod(qv, 1, p);
    let mut out = vec![0u64; v.len()];
    for (x, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let y = g.rmul(x, s);
        if g.length(y) > g.length(x) {
            out[y] = add_mod(out[y], c, p);
        } else {
            out[x] = add_mod(out[x], mul_mod(c, qm1, p), p);
            out[y] = add_mod(out[y], mul_mod(c, qv, p), p);
        }
    }
    out
}

/// `T_s · v` modulo `p` with `q = qv`.
pub fn left_mul_ts_mod(g: &WeylGroup, s: usize, v: &[u64], qv: u64, p: u64) -> Vec<u64> {
    let qm1 = sub_mod(qv, 1, p);
    let mut out = vec![0u64; v.len()];
    for (x, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let y = g.lmul(s, x);
        if g.length(y) > g.length(x) {
            out[y] = add_mod(out[y], c, p);
        } else {
            out[x] = add_mod(out[x], mul_mod(c, qm1, p), p);
            out[y] = add_mod(out[y], mul_mod(c, qv, p), p);
        }
    }
    out
}

/// Product in `H_0(q)`.
pub fn h0_mul<C: Coeff>(g: &WeylGroup, a: &HeckeElt<C>, b: &HeckeElt<C>, q: &C) -> HeckeElt<C> {
    let mut acc = HeckeElt::zero();
    for (x, cx) in &a.terms {
        // T_x · b = T_{s_1} ⋯ T_{s_k} · b
        let mut v = b.to_dense(g.size());
        for &s in g.word(*x).iter().rev() {
            v = left_mul_ts(g, s, &v, q);
        }
        acc = acc.add(&HeckeElt::from_dense(&v).scale(cx));
    }
    acc
}

/// `triv = Σ_{x ∈ W_Θ} T_x`.
pub fn triv<C: Coeff>(g: &WeylGroup, theta: &[usize]) -> HeckeElt<C> {
    let mut r = HeckeElt::zero();
    for x in g.subgroup(theta) {
        r.add_term(x, &C::one());
    }
    r
}

/// An affine pairing `a z + b` along a line of characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZForm {
    pub a: Rat,
    pub b: Rat,
}

impl ZForm {
    /// Integer slope and integer value at `z0` (asserted).
    pub fn integral_at(&self, z0: &Rat) -> Result<(i64, i64)> {
        let v = &self.a * z0 + &self.b;
        match (to_i64(&self.a), to_i64(&v)) {
            (Some(a), Some(m)) => Ok((a, m)),
            _ => Err(Error::NonIntegral {
                form: format!("{}*z + {}", fmt_rat(&self.a), fmt_rat(&self.b)),
                z0: fmt_rat(z0),
            }),
        }
    }
}

/// `n_{w_α} = (q-1)/(q^{m+1} t^a - 1) T_e + (q^m t^a - 1)/(q^{m+1} t^a - 1) T_{w_α}`
/// with `m = a z0 + b` and `t = q^{z - z0}`.
pub fn n_simple(g: &WeylGroup, alpha: usize, zform: &ZForm, z0: &Rat) -> Result<HeckeElt<RatFunc2>> {
    let (a, m) = zform.integral_at(z0)?;
    let a32 = a as i32;
    let one = RatFunc2::one();
    let den = RatFunc2::q_t_monomial(m + 1, a32).sub(&one);
    let q = RatFunc2::from_poly(Poly2::q());
    let ca = q.sub(&one).div(&den).ok_or_else(|| Error::Precondition("pairing constant equal to -1".into()))?;
    let cb = RatFunc2::q_t_monomial(m, a32).sub(&one).div(&den).unwrap();
    let s = g.from_word(&[alpha])?;
    let mut r = HeckeElt::zero();
    r.add_term(0, &ca);
    r.add_term(s, &cb);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::int;

    #[test]
    fn quadratic_relation() {
        let g = WeylGroup::f4();
        let q = RatFunc2::from_poly(Poly2::q());
        let s = g.from_word(&[1]).unwrap();
        let ts: HeckeElt<RatFunc2> = HeckeElt::basis(s);
        let sq = h0_mul(&g, &ts, &ts, &q);
        let mut expect = HeckeElt::zero();
        expect.add_term(s, &q.sub(&RatFunc2::one()));
        expect.add_term(0, &q);
        assert_eq!(sq, expect);
        let e: HeckeElt<RatFunc2> = HeckeElt::basis(0);
        assert_eq!(h0_mul(&g, &e, &sq, &q), sq);
    }

    #[test]
    fn n_simple_at_zero_is_identity() {
        let g = WeylGroup::f4();
        let n = n_simple(&g, 0, &ZForm { a: int(1), b: int(0) }, &int(0)).unwrap();
        // at t = 1 the T_e coefficient is 1 and the T_s coefficient vanishes
        let q = int(5);
        assert_eq!(n.coeff(0).eval(&q, &int(1)), Some(int(1)));
        assert_eq!(n.coeff(g.from_word(&[0]).unwrap()).eval(&q, &int(1)), Some(int(0)));
    }
}

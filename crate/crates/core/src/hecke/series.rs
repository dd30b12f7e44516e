//! Truncated `u`-expansions of `triv · n_w(z)` around `z0`, with `u = t - 1`
//! and `t = q^{z - z0}`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::chars::{inducing_character, AffineWeight};
use crate::error::{Error, Result};
use crate::rootsys::ParabolicIndex;
use crate::scalars::laurent::LaurentU;
use crate::scalars::qfunc::QFunc;
use crate::scalars::rat::Rat;
use crate::weyl::{render_word, EltId, WeylGroup};

use super::{right_mul_ts, triv, ZForm};

/// Default number of `u`-coefficients kept (constant and first order).
pub const DEFAULT_TRUNCATION: i32 = 2;

/// A row vector in `H_0 ⊗ Q(q)((u))` known to `O(u^prec)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSeries {
    /// Exponent of `coeffs[0]`.
    pub start: i32,
    pub prec: i32,
    pub coeffs: Vec<Vec<QFunc>>,
}

impl RowSeries {
    pub fn constant(v: Vec<QFunc>, prec: i32) -> Self {
        RowSeries { start: 0, prec, coeffs: vec![v] }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.first().map(|v| v.len()).unwrap_or(0)
    }

    /// Coefficient vector of `u^k` (`k < prec`).
    pub fn coeff(&self, k: i32) -> Vec<QFunc> {
        assert!(k < self.prec, "coefficient u^{k} beyond precision {}", self.prec);
        if k < self.start || k >= self.start + self.coeffs.len() as i32 {
            return vec![QFunc::zero(); self.dim()];
        }
        self.coeffs[(k - self.start) as usize].clone()
    }

    /// First exponent with a nonzero coefficient (or `prec`).
    pub fn valuation(&self) -> i32 {
        for (i, v) in self.coeffs.iter().enumerate() {
            if v.iter().any(|c| !c.is_zero()) {
                return self.start + i as i32;
            }
        }
        self.prec
    }

    /// Drop leading zero vectors and coefficients beyond `prec`.
    fn normalize(&mut self) {
        let v = self.valuation();
        let drop = ((v - self.start).max(0) as usize).min(self.coeffs.len());
        self.coeffs.drain(..drop);
        self.start += drop as i32;
        let keep = (self.prec - self.start).max(0) as usize;
        self.coeffs.truncate(keep);
    }

    /// `Σ c_j · self_j` for scalar coefficients.
    pub fn combine(parts: &[(QFunc, &RowSeries)]) -> RowSeries {
        let prec = parts.iter().map(|p| p.1.prec).min().unwrap();
        let start = parts.iter().map(|p| p.1.start).min().unwrap();
        let dim = parts[0].1.dim();
        let mut coeffs = vec![];
        for k in start..prec {
            let mut acc = vec![QFunc::zero(); dim];
            for (c, r) in parts {
                if k >= r.start && k < r.start + r.coeffs.len() as i32 {
                    for (a, b) in acc.iter_mut().zip(&r.coeffs[(k - r.start) as usize]) {
                        if !b.is_zero() {
                            *a = a.add(&b.mul(c));
                        }
                    }
                }
            }
            coeffs.push(acc);
        }
        let mut r = RowSeries { start, prec, coeffs };
        r.normalize();
        r
    }
}

/// `u`-expansions of the two coefficients of `n_{w_α}` when the pairing is
/// `a z + b` with `m = a z0 + b`.
pub fn n_simple_series(m: i64, a: i64, prec: i32) -> Result<(LaurentU<QFunc>, LaurentU<QFunc>)> {
    if a == 0 && m == -1 {
        return Err(Error::Precondition("pairing identically -1 along the line".into()));
    }
    let p = prec + 2;
    let ta: LaurentU<QFunc> = LaurentU::binomial(a, p);
    let one = LaurentU::constant(QFunc::one(), p);
    let d = ta.scale(&QFunc::q_pow(m + 1)).sub(&one);
    let d_inv = d.inv().expect("cyclotomic leading coefficient");
    let ca = d_inv.scale(&QFunc::q().sub(&QFunc::one()));
    let cb = ta.scale(&QFunc::q_pow(m)).sub(&one).mul(&d_inv);
    Ok((ca.truncate(prec + 1), cb.truncate(prec + 1)))
}

/// `row · (A(u) T_e + B(u) T_s)`.
pub fn row_times_simple(g: &WeylGroup, row: &RowSeries, s: usize, ca: &LaurentU<QFunc>, cb: &LaurentU<QFunc>) -> RowSeries {
    let q = QFunc::q();
    let ts: Vec<Vec<QFunc>> = row.coeffs.par_iter().map(|v| right_mul_ts(g, v, s, &q)).collect();
    let nval = ca.valuation().min(cb.valuation());
    let nprec = ca.precision().min(cb.precision());
    let prec = (row.prec + nval).min(nprec + row.start);
    let start = row.start + nval;
    let dim = row.dim();
    let mut coeffs = Vec::new();
    for e in start..prec {
        let terms: Vec<(usize, QFunc, QFunc)> = (0..row.coeffs.len())
            .filter_map(|i| {
                let j = e - row.start - i as i32;
                if j < nval || j >= nprec {
                    return None;
                }
                let a = ca.coeff(j);
                let b = cb.coeff(j);
                if a.is_zero() && b.is_zero() {
                    None
                } else {
                    Some((i, a, b))
                }
            })
            .collect();
        let v: Vec<QFunc> = (0..dim)
            .into_par_iter()
            .map(|x| {
                let mut acc = QFunc::zero();
                for (i, a, b) in &terms {
                    let c = &row.coeffs[*i][x];
                    if !c.is_zero() && !a.is_zero() {
                        acc = acc.add(&c.mul(a));
                    }
                    let t = &ts[*i][x];
                    if !t.is_zero() && !b.is_zero() {
                        acc = acc.add(&t.mul(b));
                    }
                }
                acc
            })
            .collect();
        coeffs.push(v);
    }
    let mut r = RowSeries { start, prec, coeffs };
    r.normalize();
    r
}

/// Apply `n_s` for one letter along the line `λ`, returning the new row and
/// the transformed line `s·λ`.
pub fn apply_letter(g: &WeylGroup, row: &RowSeries, lam: &AffineWeight, s: usize, z0: &Rat) -> Result<(RowSeries, AffineWeight)> {
    let (a, b) = lam.simple_form(s);
    let (a, m) = ZForm { a, b }.integral_at(z0)?;
    let (ca, cb) = n_simple_series(m, a, row.prec - row.start + 2)?;
    let out = row_times_simple(g, row, s, &ca, &cb);
    let sx = g.from_word(&[s])?;
    Ok((out, lam.act(g, sx)))
}

/// Number of letters of `word` (rightmost first) meeting a pole, i.e.
/// pairing value `-1` at `z0`.
pub fn pole_count(g: &WeylGroup, lam: &AffineWeight, word: &[usize], z0: &Rat) -> Result<i32> {
    let mut cur = lam.clone();
    let mut poles = 0;
    for &s in word.iter().rev() {
        let (a, b) = cur.simple_form(s);
        let (_, m) = ZForm { a, b }.integral_at(z0)?;
        if m == -1 {
            poles += 1;
        }
        cur = cur.act(g, g.from_word(&[s])?);
    }
    Ok(poles)
}

/// `start · n_w(λ)` along a line, for a word in written order.
pub fn apply_word(g: &WeylGroup, start: Vec<QFunc>, lam: &AffineWeight, word: &[usize], z0: &Rat, order: i32) -> Result<(RowSeries, AffineWeight)> {
    let poles = pole_count(g, lam, word, z0)?;
    let mut row = RowSeries::constant(start, order + poles);
    let mut cur = lam.clone();
    for &s in word.iter().rev() {
        let (r, l) = apply_letter(g, &row, &cur, s, z0)?;
        row = r;
        cur = l;
    }
    row.prec = row.prec.min(order.max(row.start));
    row.normalize();
    Ok((row, cur))
}

/// `triv · n_w(z)` for `w ∈ W(P, G)` near `z0`.
#[derive(Clone, Debug)]
pub struct HeckeOpSeries {
    pub elt: EltId,
    pub word: String,
    pub row: RowSeries,
    /// `w · χ_{P,z}`.
    pub exponent: AffineWeight,
}

impl HeckeOpSeries {
    /// The constant term `triv · n_w(z0)`.
    pub fn at_z0(&self) -> Vec<QFunc> {
        self.row.coeff(0)
    }
}

fn triv_dense(g: &WeylGroup, p: ParabolicIndex) -> Vec<QFunc> {
    triv::<QFunc>(g, &p.theta(g.rank())).to_dense(g.size())
}

/// Expansion of `triv · n_w` for a single `w` given by any reduced word.
pub fn intertwiner_series(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, word: &[usize], order: i32) -> Result<HeckeOpSeries> {
    let chi = inducing_character(g, p);
    let (row, exponent) = apply_word(g, triv_dense(g, p), &chi, word, z0, order)?;
    let v = row.valuation();
    if v < 0 {
        return Err(Error::NotHolomorphic { word: render_word(word), valuation: v });
    }
    let elt = g.from_word(word)?;
    Ok(HeckeOpSeries { elt, word: render_word(word), row, exponent })
}

/// Expansions for every `w ∈ W(P, G)`, sharing prefixes along the
/// left-descent tree of minimal coset representatives.
pub fn all_rep_series(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, order: i32) -> Result<HashMap<EltId, HeckeOpSeries>> {
    let chi = inducing_character(g, p);
    let reps = g.parabolic_reps(p);
    let max_poles = reps.iter().map(|&x| pole_count(g, &chi, g.word(x), z0)).collect::<Result<Vec<_>>>()?;
    let prec = order + max_poles.into_iter().max().unwrap_or(0);
    let mut rows: HashMap<EltId, (RowSeries, AffineWeight)> = HashMap::new();
    rows.insert(0, (RowSeries::constant(triv_dense(g, p), prec), chi));
    for &x in &reps {
        if x == 0 {
            continue;
        }
        let s = g.word(x)[0];
        let parent = g.lmul(s, x);
        let (prow, plam) = rows.get(&parent).expect("prefix of a representative is a representative").clone();
        let (r, l) = apply_letter(g, &prow, &plam, s, z0)?;
        rows.insert(x, (r, l));
    }
    let mut out = HashMap::new();
    for (x, (mut row, exponent)) in rows {
        let v = row.valuation();
        if v < 0 {
            return Err(Error::NotHolomorphic { word: g.render(x), valuation: v });
        }
        row.prec = row.prec.min(order);
        row.normalize();
        out.insert(x, HeckeOpSeries { elt: x, word: g.render(x), row, exponent });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::{int, rat};

    #[test]
    fn simple_series_cases() {
        // m = 0, a = 1: A = (q-1)/(q t - 1) -> 1 at u = 0, B -> 0
        let (ca, cb) = n_simple_series(0, 1, 2).unwrap();
        assert_eq!(ca.coeff(0), QFunc::one());
        assert!(cb.coeff(0).is_zero());
        // m = -1: pole in both coefficients
        let (ca, _) = n_simple_series(-1, 1, 2).unwrap();
        assert_eq!(ca.valuation(), -1);
        // m = 1: B(0) = (q - 1)/(q^2 - 1) = 1/(q+1)
        let (_, cb) = n_simple_series(1, 1, 2).unwrap();
        assert_eq!(cb.coeff(0), QFunc::q().add(&QFunc::one()).try_inv().unwrap());
    }

    #[test]
    fn identity_word_is_triv() {
        let g = WeylGroup::f4();
        let p = ParabolicIndex { i: 4 };
        let s = intertwiner_series(&g, p, &rat(5, 2), &[], 2).unwrap();
        assert_eq!(s.row.valuation(), 0);
        assert_eq!(s.at_z0().iter().filter(|c| c.is_one()).count(), 48);
        let _ = int(0);
    }
}

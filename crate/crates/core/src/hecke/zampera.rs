//! Eigen-splitting of a principal series under a restricted intertwiner.
//!
//! For `u = s_α w s_α` with `⟨χ, α̌⟩ = 1`, `w` in the stabiliser of
//! `s_α χ` and `l(u) = l(w) + 2`, the operator `N_u` is singular at `χ` but
//! its restriction to the line `χ + z m` is holomorphic at `z = 0`.  The
//! value `E` satisfies `(E − 1)(E + a_1) = 0` with
//! `a_1 = ⟨m, α̌⟩ / ⟨m, (s_α w^{-1} α)^∨⟩`.
//!
//! On Iwahori-fixed vectors `E` is right multiplication by an element `e`
//! of `H_0`, so the quadratic identity is checked as `e·e = (1 − a_1) e +
//! a_1 T_e`.  Because `e` lies in the parabolic subalgebra `H_J` spanned by
//! `T_y`, `y ∈ W_J` (`J` = letters of `u`), and `H_0` is a free right
//! `H_J`-module of rank `|W| / |W_J|`, eigenspace dimensions are the ranks
//! on `H_J` scaled by that index.

use serde::Serialize;

use super::series::apply_word;
use super::{h0_mul, left_mul_ts, HeckeElt};
use crate::chars::AffineWeight;
use crate::error::{Error, Result};
use crate::rootsys::Weight;
use crate::scalars::linalg::certified_rank_qfunc;
use crate::scalars::qfunc::QFunc;
use crate::scalars::rat::{fmt_rat, Rat};
use crate::weyl::{render_word, WeylGroup};

use num_traits::{One, Zero};

/// Result of a Zampera split.
#[derive(Clone, Debug, Serialize)]
pub struct ZamperaSplit {
    pub word: String,
    pub a1: String,
    /// `(E − 1)(E + a_1) = 0` holds exactly in `H_0`.
    pub minpoly_ok: bool,
    /// `(dim V_1, dim V_{−a_1})` on the Iwahori-fixed vectors.
    pub eigen_dims: (usize, usize),
    /// The element `e` with `E = (· e)`, as `(word, coefficient)` pairs.
    #[serde(skip)]
    pub element: HeckeElt<QFunc>,
}

impl ZamperaSplit {
    pub fn a1(&self) -> Rat {
        crate::scalars::rat::parse_rat(&self.a1).expect("rendered rational")
    }
}

/// `⟨λ, β̌⟩` for a root `β` given in simple-root coordinates of either sign.
fn pairing_any(g: &WeylGroup, lam: &Weight, beta: &[i64]) -> Result<Rat> {
    if beta.iter().all(|&c| c <= 0) {
        let pos: Vec<i64> = beta.iter().map(|c| -c).collect();
        Ok(-g.rs.pairing(lam, &pos)?)
    } else {
        g.rs.pairing(lam, beta)
    }
}

/// The value at `z = 0` of `T_e · n_u` along `λ = χ + z m`.
pub fn restricted_element(g: &WeylGroup, u: &[usize], chi: &Weight, m: &Weight) -> Result<HeckeElt<QFunc>> {
    let mut start = vec![QFunc::zero(); g.size()];
    start[g.identity()] = QFunc::one();
    let line = AffineWeight { base: chi.clone(), slope: m.clone() };
    let (row, _) = apply_word(g, start, &line, u, &Rat::zero(), 1)?;
    let v = row.valuation();
    if v < 0 {
        return Err(Error::NotHolomorphic { word: render_word(u), valuation: v });
    }
    Ok(HeckeElt::from_dense(&row.coeff(0)))
}

/// Split `i_T^G(χ)` by the restricted operator `N_{s_α w s_α}|_L` with
/// `L = χ + z m`.  `alpha` is a simple-root index and `w` a reduced word.
pub fn zampera_split(g: &WeylGroup, alpha: usize, w: &[usize], chi: &Weight, m: &Weight) -> Result<ZamperaSplit> {
    if chi.0[alpha] != Rat::one() {
        return Err(Error::Precondition(format!("<chi, alpha_{}^vee> = {} must be 1", alpha + 1, fmt_rat(&chi.0[alpha]))));
    }
    let sa = g.from_word(&[alpha])?;
    let sachi = g.act(sa, chi);
    for &b in w {
        if !sachi.0[b].is_zero() {
            return Err(Error::Precondition(format!("letter w{} of w does not fix s_alpha chi", b + 1)));
        }
    }
    let u: Vec<usize> = [vec![alpha], w.to_vec(), vec![alpha]].concat();
    let welt = g.from_word(w)?;
    let uelt = g.from_word(&u)?;
    if g.length(uelt) != g.length(welt) + 2 || g.length(welt) != w.len() {
        return Err(Error::Precondition(format!("l({}) != l(w) + 2 for a reduced w", render_word(&u))));
    }
    let mut alpha_root = vec![0i64; g.rank()];
    alpha_root[alpha] = 1;
    let beta = g.act_on_root(g.mul(sa, g.inverse(welt)), &alpha_root);
    let p1 = m.0[alpha].clone();
    let p2 = pairing_any(g, m, &beta)?;
    if p1.is_zero() {
        return Err(Error::Precondition("<m, alpha^vee> = 0".into()));
    }
    if p2.is_zero() {
        return Err(Error::Precondition("<m, (s_alpha w^-1 alpha)^vee> = 0".into()));
    }
    let a1 = &p1 / &p2;
    if a1 == -Rat::one() {
        return Err(Error::Precondition("a_1 = -1".into()));
    }
    let e = restricted_element(g, &u, chi, m)?;
    let q = QFunc::q();
    let a1q = QFunc::from_rat(&a1);
    let lhs = h0_mul(g, &e, &e, &q);
    let rhs = e.scale(&QFunc::one().sub(&a1q)).add(&HeckeElt::basis(g.identity()).scale(&a1q));
    let minpoly_ok = lhs == rhs;

    // ranks of right multiplication by e − 1 and e + a_1 on H_J
    let mut letters: Vec<usize> = u.clone();
    letters.sort_unstable();
    letters.dedup();
    let wj = g.subgroup(&letters);
    let index = g.size() / wj.len();
    let rank_on_hj = |c: &QFunc| -> Result<usize> {
        let shifted = e.add(&HeckeElt::basis(g.identity()).scale(c));
        let dense = shifted.to_dense(g.size());
        let rows: Vec<Vec<QFunc>> = wj
            .iter()
            .map(|&y| {
                let mut v = dense.clone();
                for &s in g.word(y).iter().rev() {
                    v = left_mul_ts(g, s, &v, &q);
                }
                wj.iter().map(|&x| v[x].clone()).collect()
            })
            .collect();
        Ok(certified_rank_qfunc(&rows)?.0)
    };
    let r_minus_1 = rank_on_hj(&QFunc::one().neg())?;
    let r_plus_a1 = rank_on_hj(&a1q)?;
    // V_1 = ker(E − 1), V_{−a_1} = ker(E + a_1)
    let eigen_dims = ((wj.len() - r_minus_1) * index, (wj.len() - r_plus_a1) * index);
    Ok(ZamperaSplit { word: render_word(&u), a1: fmt_rat(&a1), minpoly_ok, eigen_dims, element: e })
}

/// `v · e = v` for the row `v` (membership of the left ideal generated by
/// `v` in the eigenspace `V_1`).
pub fn row_in_v1(g: &WeylGroup, row: &[QFunc], split: &ZamperaSplit) -> bool {
    let v = HeckeElt::from_dense(row);
    h0_mul(g, &v, &split.element, &QFunc::q()) == v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::inducing_character;
    use crate::rootsys::ParabolicIndex;
    use crate::weyl::parse_word;

    #[test]
    fn degenerate_slope_is_rejected() {
        let g = WeylGroup::f4();
        let chi = Weight::from_ints(&[-1, -1, 1, -2]);
        // m with <m, alpha_3^vee> = 0
        let m = Weight::from_ints(&[1, 0, 0, 0]);
        let err = zampera_split(&g, 2, &[1], &chi, &m).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn p4_instance() {
        let g = WeylGroup::f4();
        let u1 = g.from_word(&parse_word("w1w2w3w4w3w2w3w1w2w3w4").unwrap()).unwrap();
        let line = inducing_character(&g, ParabolicIndex { i: 4 }).act(&g, u1);
        let chi = line.eval(&Rat::new(5.into(), 2.into()));
        let z = zampera_split(&g, 2, &[1], &chi, &line.slope).unwrap();
        assert_eq!(z.a1(), Rat::one());
        assert!(z.minpoly_ok);
        assert_eq!(z.eigen_dims.0 + z.eigen_dims.1, 1152);
    }
}

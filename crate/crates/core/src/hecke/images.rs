//! Images and kernels of normalised intertwining operators on the
//! parabolic module `H_P = span{T_u · triv : u ∈ W(P, G)}`.
//!
//! The operator attached to `w` acts by right multiplication with `n_w`, so
//! its image is spanned by the rows `T_u · (triv · n_w)`.  Only the single
//! row `triv · n_w` is stored; the other rows are produced by left
//! multiplication along the tree of minimal coset representatives, either
//! exactly (to obtain entry bounds) or modulo a prime at a sample value of
//! `q`.  Every rank reported here carries an
//! [`SMembershipCertificate`](crate::scalars::linalg::SMembershipCertificate).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::series::{intertwiner_series, HeckeOpSeries};
use super::left_mul_ts_mod;
use crate::chars::inducing_character;
use crate::error::{Error, Result};
use crate::rootsys::{ParabolicIndex, Weight};
use crate::scalars::linalg::{
    certified_rank_matrix, rank_at, verify_relations, EntryBound, PolyMatrix, Relation, SMembershipCertificate, Stacked,
};
use crate::scalars::modp::{bigint_mod, inv_mod, mul_mod, rank_mod, sub_mod};
use crate::scalars::qfunc::{Den, QFunc};
use crate::scalars::rat::{fmt_rat, rat, Rat};
use crate::scalars::zpoly::{self, ZPoly};
use crate::weyl::{render_word, EltId, WeylGroup};

/// The matrix with rows `T_u · v`, `u ∈ W(P, G)`, for a vector `v` of the
/// full Hecke algebra whose denominators have been cleared.
pub struct ImageMatrix<'g> {
    g: &'g WeylGroup,
    /// Representatives in tree order (non-decreasing length).
    reps: Vec<EltId>,
    /// For each row after the first: (parent row, letter) with
    /// `reps[k] = letter · reps[parent]`.
    tree: Vec<(usize, usize)>,
    v: Vec<ZPoly>,
    bounds: Vec<Vec<Option<EntryBound>>>,
    /// The cleared common denominator of the original vector.
    pub den: Den,
}

fn exact_left_mul(g: &WeylGroup, s: usize, v: &[ZPoly]) -> Vec<ZPoly> {
    let mut out: Vec<ZPoly> = vec![vec![]; v.len()];
    for (x, c) in v.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        let y = g.lmul(s, x);
        if g.length(y) > g.length(x) {
            out[y] = zpoly::add(&out[y], c);
        } else {
            let qc = zpoly::shift(c, 1);
            out[x] = zpoly::add(&out[x], &zpoly::sub(&qc, c));
            out[y] = zpoly::add(&out[y], &qc);
        }
    }
    out
}

/// Representatives of `W(P, G)` sorted by length, with the left-descent
/// tree used to generate rows.
pub fn rep_tree(g: &WeylGroup, p: ParabolicIndex) -> (Vec<EltId>, Vec<(usize, usize)>) {
    let mut reps = g.parabolic_reps(p);
    reps.sort_by_key(|&x| (g.length(x), g.word(x).to_vec()));
    let index: HashMap<EltId, usize> = reps.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let tree = reps
        .iter()
        .map(|&x| {
            if x == g.identity() {
                (0, 0)
            } else {
                let s = g.word(x)[0];
                (index[&g.lmul(s, x)], s)
            }
        })
        .collect();
    (reps, tree)
}

impl<'g> ImageMatrix<'g> {
    /// Rows `T_u · v` for a vector with rational-function coefficients.
    pub fn new(g: &'g WeylGroup, p: ParabolicIndex, v: &[QFunc]) -> Result<Self> {
        let mut den = Den::one();
        for c in v.iter().filter(|c| !c.is_zero()) {
            den = den.lcm(c.den());
        }
        if !den.nonvanishing_at_prime_powers() {
            return Err(Error::DenominatorVanishes(format!("{den:?}")));
        }
        let dq = QFunc::from_poly(den.to_poly());
        let cleared: Vec<ZPoly> = v
            .iter()
            .map(|c| {
                let x = c.mul(&dq);
                debug_assert!(x.den().is_one());
                x.num().clone()
            })
            .collect();
        let (reps, tree) = rep_tree(g, p);
        let mut rows: Vec<Vec<ZPoly>> = Vec::with_capacity(reps.len());
        let mut bounds = Vec::with_capacity(reps.len());
        for (k, &(parent, s)) in tree.iter().enumerate() {
            let r = if k == 0 { cleared.clone() } else { exact_left_mul(g, s, &rows[parent]) };
            bounds.push(r.iter().map(|e| EntryBound::of(e)).collect());
            rows.push(r);
        }
        Ok(ImageMatrix { g, reps, tree, v: cleared, bounds, den })
    }

    pub fn reps(&self) -> &[EltId] {
        &self.reps
    }
}

impl PolyMatrix for ImageMatrix<'_> {
    fn nrows(&self) -> usize {
        self.reps.len()
    }
    fn ncols(&self) -> usize {
        self.g.size()
    }
    fn eval_mod(&self, s: u64, p: u64) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(self.reps.len());
        for (k, &(parent, letter)) in self.tree.iter().enumerate() {
            let r = if k == 0 {
                self.v.iter().map(|c| zpoly::eval_mod(c, s, p)).collect()
            } else {
                left_mul_ts_mod(self.g, letter, &rows[parent], s, p)
            };
            rows.push(r);
        }
        rows
    }
    fn entry_bound(&self, i: usize, j: usize) -> Option<EntryBound> {
        self.bounds[i][j]
    }
}

/// `triv · n_w(z)` to the given order, asserting holomorphy.
pub fn op_series(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, word: &[usize], order: i32) -> Result<HeckeOpSeries> {
    intertwiner_series(g, p, z0, word, order)
}

/// The constant term `triv · n_w(z0)`.
pub fn op_row(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, word: &[usize]) -> Result<Vec<QFunc>> {
    Ok(op_series(g, p, z0, word, 1)?.at_z0())
}

/// A certified image rank.
#[derive(Clone, Debug)]
pub struct ImageRank {
    pub word: String,
    pub exponent: Weight,
    pub rank: usize,
    pub certificate: SMembershipCertificate,
}

/// Certified rank of the image of right multiplication by `row` on `H_P`.
pub fn row_image_rank(g: &WeylGroup, p: ParabolicIndex, row: &[QFunc]) -> Result<SMembershipCertificate> {
    certified_rank_matrix(&ImageMatrix::new(g, p, row)?)
}

/// `dim Σ_w^J`, the certified rank of the operator `N_w(z0)` on `H_P`.
pub fn image_rank(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, word: &[usize]) -> Result<ImageRank> {
    let s = op_series(g, p, z0, word, 1)?;
    let certificate = row_image_rank(g, p, &s.at_z0())?;
    Ok(ImageRank { word: render_word(word), exponent: s.exponent.eval(z0), rank: certificate.rank, certificate })
}

/// Kernel of one operator on `H_P`: its dimension and an exact basis given
/// by polynomial relations among the rows `T_u · (triv · n_w)`.
#[derive(Clone, Debug)]
pub struct KernelInfo {
    pub word: String,
    pub ambient: usize,
    pub dim: usize,
    /// Each relation `Σ_u c_u(q) T_u` (indices into [`rep_tree`] order)
    /// is a kernel vector; together they form a basis.
    pub basis: Vec<Relation>,
}

/// Kernel of `N_w(z0)` on `H_P`.
pub fn kernel(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, word: &[usize]) -> Result<KernelInfo> {
    let r = image_rank(g, p, z0, word)?;
    let ambient = g.parabolic_reps(p).len();
    Ok(KernelInfo { word: r.word, ambient, dim: ambient - r.rank, basis: r.certificate.relations })
}

/// Kernel dimensions of a list of operators.
pub fn kernel_chain(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, words: &[Vec<usize>]) -> Result<Vec<KernelInfo>> {
    words.iter().map(|w| kernel(g, p, z0, w)).collect()
}

/// Equality of the row spaces `Σ_{w1}^J` and `Σ_{w2}^J` over `Q(q)`:
/// certified ranks of both and of the stacked matrix agree, and the numeric
/// ranks at `q = 2, 3, 5` agree with the certified ones.
pub fn image_space_equal(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, w1: &[usize], w2: &[usize]) -> Result<bool> {
    image_space_equal_rows(g, p, &op_row(g, p, z0, w1)?, &op_row(g, p, z0, w2)?)
}

/// [`image_space_equal`] for precomputed rows `triv · n_w(z0)`.
pub fn image_space_equal_rows(g: &WeylGroup, p: ParabolicIndex, v1: &[QFunc], v2: &[QFunc]) -> Result<bool> {
    let m1 = ImageMatrix::new(g, p, v1)?;
    let m2 = ImageMatrix::new(g, p, v2)?;
    let stacked = Stacked { top: &m1, bottom: &m2 };
    let r1 = certified_rank_matrix(&m1)?.rank;
    let r2 = certified_rank_matrix(&m2)?.rank;
    let r12 = certified_rank_matrix(&stacked)?.rank;
    for s in [2u64, 3, 5] {
        if rank_at(&m1, s) != r1 || rank_at(&m2, s) != r2 || rank_at(&stacked, s) != r12 {
            return Err(Error::RankNotUniform);
        }
    }
    Ok(r1 == r2 && r1 == r12)
}

fn combine(rows: &[(Rat, Vec<QFunc>)]) -> Vec<QFunc> {
    let n = rows.first().map_or(0, |r| r.1.len());
    (0..n)
        .map(|x| {
            rows.iter().fold(QFunc::zero(), |acc, (c, v)| {
                if c.is_zero() || v[x].is_zero() {
                    acc
                } else {
                    acc.add(&v[x].mul(&QFunc::from_rat(c)))
                }
            })
        })
        .collect()
}

/// Certified rank of `Σ_j c_j N_{w_j}(z0)` (all words must share one
/// target exponent).
pub fn combination_image_rank(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, coeffs: &[Rat], words: &[Vec<usize>]) -> Result<usize> {
    if coeffs.len() != words.len() {
        return Err(Error::InvalidInput("one coefficient per word required".into()));
    }
    let mut parts = Vec::with_capacity(words.len());
    let mut target: Option<Weight> = None;
    for (c, w) in coeffs.iter().zip(words) {
        let s = op_series(g, p, z0, w, 1)?;
        let e = s.exponent.eval(z0);
        if let Some(t) = &target {
            if *t != e {
                return Err(Error::Precondition(format!("words map to different exponents: {} vs {}", render_word(w), fmt_weight(t))));
            }
        }
        target = Some(e);
        parts.push((c.clone(), s.at_z0()));
    }
    combination_rank_rows(g, p, &parts)
}

/// Certified rank of `Σ_j c_j v_j` for precomputed rows `v_j = triv · n_{w_j}(z0)`.
pub fn combination_rank_rows(g: &WeylGroup, p: ParabolicIndex, parts: &[(Rat, Vec<QFunc>)]) -> Result<usize> {
    let row = combine(parts);
    if row.iter().all(|c| c.is_zero()) {
        return Ok(0);
    }
    Ok(row_image_rank(g, p, &row)?.rank)
}

fn fmt_weight(w: &Weight) -> String {
    format!("[{}]", w.0.iter().map(fmt_rat).collect::<Vec<_>>().join(","))
}

/// Candidate scalars tried first when solving for a stabiliser scalar.
fn scalar_candidates() -> Vec<Rat> {
    let mut out = vec![];
    for (n, d) in [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3)] {
        out.push(rat(-n, d));
        out.push(rat(n, d));
    }
    // wider search: ±n/d with 1 ≤ n, d ≤ 6
    for d in 1..=6 {
        for n in 1..=6 {
            for sgn in [-1, 1] {
                let r = rat(sgn * n, d);
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// The scalar by which the longer operator acts on the non-spherical part
/// of a common image: the rational `a ≠ 1` for which
/// `a·N_{u_short}(z0) − N_{u_long}(z0)` has strictly smaller rank than for
/// generic `a`.
///
/// The spherical constituent is always fixed by the normalised operators,
/// so `a = 1` drops the rank whenever the image contains it; that value is
/// returned only when it is the sole drop.  Candidates are screened by a
/// numeric rank at `q = 2` and the chosen drop is then certified.
pub fn stabilizer_scalar(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, u_short: &[usize], u_long: &[usize]) -> Result<Rat> {
    stabilizer_scalar_rows(g, p, &op_row(g, p, z0, u_short)?, &op_row(g, p, z0, u_long)?)
}

/// [`stabilizer_scalar`] for precomputed rows `triv · n_w(z0)`.
pub fn stabilizer_scalar_rows(g: &WeylGroup, p: ParabolicIndex, vs: &[QFunc], vl: &[QFunc]) -> Result<Rat> {
    let (vs, vl) = (vs.to_vec(), vl.to_vec());
    let row_for = |a: &Rat| combine(&[(a.clone(), vs.clone()), (-Rat::one(), vl.clone())]);
    let prime = crate::scalars::modp::large_primes(1)[0];
    let ms = ImageMatrix::new(g, p, &vs)?;
    let ml = ImageMatrix::new(g, p, &vl)?;
    let (es, el) = (ms.eval_mod(2, prime), ml.eval_mod(2, prime));
    let (ds, dl) = (ms.den.eval_mod(2, prime), ml.den.eval_mod(2, prime));
    let numeric = |a: &Rat| -> usize {
        // rows of a·vs − vl, with the cleared denominators restored mod p
        let an = bigint_mod(a.numer(), prime);
        let ad = bigint_mod(a.denom(), prime);
        let cs = mul_mod(an, inv_mod(ds, prime), prime);
        let cl = mul_mod(ad, inv_mod(dl, prime), prime);
        let m: Vec<Vec<u64>> = es
            .iter()
            .zip(&el)
            .map(|(rs, rl)| rs.iter().zip(rl).map(|(&x, &y)| sub_mod(mul_mod(x, cs, prime), mul_mod(y, cl, prime), prime)).collect())
            .collect();
        rank_mod(m, prime)
    };
    let generic_a = rat(1009, 17);
    let generic = numeric(&generic_a);
    let drops: Vec<(usize, Rat)> = scalar_candidates().into_iter().map(|a| (numeric(&a), a)).filter(|(r, _)| *r < generic).collect();
    let nontrivial: Vec<&(usize, Rat)> = drops.iter().filter(|(_, a)| !a.is_one()).collect();
    let a = match (nontrivial.as_slice(), drops.len()) {
        ([only], _) => only.1.clone(),
        ([], 1) => drops[0].1.clone(),
        _ => return Err(Error::NotScalar),
    };
    // certify the drop exactly
    let cert = row_image_rank(g, p, &row_for(&a))?;
    let gen_cert = row_image_rank(g, p, &row_for(&generic_a))?;
    if cert.rank >= gen_cert.rank {
        return Err(Error::NotScalar);
    }
    Ok(a)
}

/// First-order coefficient `D^{(1)}` of `triv · n_w` in `u = t − 1`.
pub fn first_order_row(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, word: &[usize]) -> Result<Vec<QFunc>> {
    Ok(op_series(g, p, z0, word, 2)?.row.coeff(1))
}

/// Check that `v · Σ_j c_j D^{(1)}_{u_j} = 0` for every kernel basis vector
/// `v` (given as relations among the rows of `H_P`).
pub fn derivative_identity_check(
    g: &WeylGroup,
    p: ParabolicIndex,
    z0: &Rat,
    words: &[Vec<usize>],
    coeffs: &[Rat],
    kernel_basis: &[Relation],
) -> Result<bool> {
    if coeffs.len() != words.len() {
        return Err(Error::InvalidInput("one coefficient per word required".into()));
    }
    let mut parts = vec![];
    for (c, w) in coeffs.iter().zip(words) {
        parts.push((c.clone(), first_order_row(g, p, z0, w)?));
    }
    let d = combine(&parts);
    if d.iter().all(|c| c.is_zero()) {
        return Ok(true);
    }
    let m = ImageMatrix::new(g, p, &d)?;
    Ok(verify_relations(&m, kernel_basis).is_some())
}

/// The shortest `w ∈ W(P, G)` with `w·χ_{P,z0}` anti-dominant (ties broken
/// by canonical word).
pub fn shortest_antidominant(g: &WeylGroup, p: ParabolicIndex, z0: &Rat) -> EltId {
    let chi = inducing_character(g, p).eval(z0);
    let (reps, _) = rep_tree(g, p);
    *reps
        .iter()
        .find(|&&x| WeylGroup::is_antidominant(&g.act(x, &chi)))
        .expect("the longest representative reaches the anti-dominant chamber")
}

/// One row of an image table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRow {
    pub word: String,
    pub exp: Vec<String>,
    pub rank: usize,
}

/// Certified image rank for every `w ∈ W(P, G)`, in tree order.
pub fn image_table(g: &WeylGroup, p: ParabolicIndex, z0: &Rat) -> Result<Vec<ImageRow>> {
    let (reps, _) = rep_tree(g, p);
    reps.iter()
        .map(|&x| {
            let r = image_rank(g, p, z0, g.word(x))?;
            Ok(ImageRow { word: r.word, exp: r.exponent.0.iter().map(fmt_rat).collect(), rank: r.rank })
        })
        .collect()
}

/// Evaluate a kernel basis vector `Σ_u c_u(q) T_u · triv` as an element of
/// `H_0` at integer `q` (used by diagnostics and tests).
pub fn kernel_vector_value(g: &WeylGroup, p: ParabolicIndex, rel: &Relation, q: i64) -> Vec<BigInt> {
    let (reps, tree) = rep_tree(g, p);
    let triv: Vec<ZPoly> = {
        let mut v = vec![vec![]; g.size()];
        for x in g.subgroup(&p.theta(g.rank())) {
            v[x] = vec![BigInt::one()];
        }
        v
    };
    let mut rows: Vec<Vec<ZPoly>> = Vec::with_capacity(reps.len());
    for (k, &(parent, s)) in tree.iter().enumerate() {
        let r = if k == 0 { triv.clone() } else { exact_left_mul(g, s, &rows[parent]) };
        rows.push(r);
    }
    let qb = BigInt::from(q);
    let mut out = vec![BigInt::zero(); g.size()];
    for (j, c) in &rel.coeffs {
        let cv = zpoly::eval_big(c, &qb);
        for (o, e) in out.iter_mut().zip(&rows[*j]) {
            *o += &cv * zpoly::eval_big(e, &qb);
        }
    }
    out
}

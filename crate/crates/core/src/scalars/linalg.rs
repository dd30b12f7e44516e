//! Certified linear algebra over `Q(q)`.
//!
//! The rank of a matrix of rational functions in `q` is certified to be the
//! same at every prime power `q` by two exact facts:
//!
//! * a square minor whose determinant (an integer polynomial, computed by
//!   multimodular evaluation/interpolation inside a rigorous degree window
//!   and coefficient bound) has no prime-power root;
//! * for every remaining row an explicit polynomial relation expressing it
//!   in the span of the minor's rows (the reduced Cramer coefficients,
//!   reconstructed from modular solves and then verified as exact
//!   polynomial identities with rigorous degree and height bounds).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::ifactor::prime_power_divisors_upto;
use super::modp::{add_mod, bigint_mod, det_mod, inv_mod, large_primes, mul_mod, pow_mod, rank_and_pivots_mod, sub_mod};
use super::modpoly;
use super::poly1::Poly1;
use super::poly2::RatFunc2;
use super::qfunc::QFunc;
use super::rat::Rat;
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// Upper bounds for a polynomial matrix entry: degree, lowest occurring
/// power of `q` (the valuation), and the 1-norm of the coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntryBound {
    pub deg: u32,
    pub val: u32,
    pub l1: f64,
}

impl EntryBound {
    pub fn of(p: &[BigInt]) -> Option<EntryBound> {
        let deg = zpoly::degree(p)?;
        let val = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let l1: f64 = p.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum();
        Some(EntryBound { deg: deg as u32, val: val as u32, l1 })
    }
}

/// A matrix with entries in `Z[q]`, accessed through modular evaluation and
/// per-entry bounds.  Implementations may compute rows on the fly.
pub trait PolyMatrix: Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// The matrix at `q = s`, reduced modulo the prime `p`.
    fn eval_mod(&self, s: u64, p: u64) -> Vec<Vec<u64>>;
    /// Bounds for entry `(i, j)`; `None` when the entry is identically zero.
    fn entry_bound(&self, i: usize, j: usize) -> Option<EntryBound>;
}

/// Explicitly stored integer-polynomial matrix.
#[derive(Clone, Debug)]
pub struct ZPolyMatrix {
    rows: Vec<Vec<ZPoly>>,
    bounds: Vec<Vec<Option<EntryBound>>>,
}

impl ZPolyMatrix {
    pub fn new(rows: Vec<Vec<ZPoly>>) -> Self {
        let bounds = rows.iter().map(|r| r.iter().map(|e| EntryBound::of(e)).collect()).collect();
        ZPolyMatrix { rows, bounds }
    }

    pub fn rows(&self) -> &[Vec<ZPoly>] {
        &self.rows
    }
}

impl PolyMatrix for ZPolyMatrix {
    fn nrows(&self) -> usize {
        self.rows.len()
    }
    fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }
    fn eval_mod(&self, s: u64, p: u64) -> Vec<Vec<u64>> {
        self.rows.iter().map(|r| r.iter().map(|e| zpoly::eval_mod(e, s, p)).collect()).collect()
    }
    fn entry_bound(&self, i: usize, j: usize) -> Option<EntryBound> {
        self.bounds[i][j]
    }
}

/// Two matrices with the same number of columns, stacked vertically.
pub struct Stacked<'a> {
    pub top: &'a dyn PolyMatrix,
    pub bottom: &'a dyn PolyMatrix,
}

impl PolyMatrix for Stacked<'_> {
    fn nrows(&self) -> usize {
        self.top.nrows() + self.bottom.nrows()
    }
    fn ncols(&self) -> usize {
        self.top.ncols()
    }
    fn eval_mod(&self, s: u64, p: u64) -> Vec<Vec<u64>> {
        let mut m = self.top.eval_mod(s, p);
        m.extend(self.bottom.eval_mod(s, p));
        m
    }
    fn entry_bound(&self, i: usize, j: usize) -> Option<EntryBound> {
        let n = self.top.nrows();
        if i < n {
            self.top.entry_bound(i, j)
        } else {
            self.bottom.entry_bound(i - n, j)
        }
    }
}

// ---------------------------------------------------------------------------
// Determinants

fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Exact determinant of a square polynomial matrix by evaluation at
/// `n·degree_bound + 1` consecutive integers starting at
/// `max(2, degree_bound + 2)` followed by interpolation.
pub fn det_interpolate(a: &[Vec<Poly1>], degree_bound: usize) -> Poly1 {
    let n = a.len();
    if n == 0 {
        return Poly1::constant(Rat::one());
    }
    let start = 2.max(degree_bound as i64 + 2);
    let pts: Vec<(Rat, Rat)> = (0..(n * degree_bound + 1) as i64)
        .map(|k| {
            let x = Rat::from_integer(BigInt::from(start + k));
            let m: Vec<Vec<Rat>> = a.iter().map(|r| r.iter().map(|e| e.eval(&x)).collect()).collect();
            (x, det_rat(m))
        })
        .collect();
    Poly1::interpolate(&pts)
}

/// Optimal value of the assignment problem on an `n×n` weight table with
/// forbidden (`None`) cells; `maximize` selects max-weight instead of
/// min-weight.  Returns `None` when no perfect matching avoids the
/// forbidden cells.
pub fn assignment_optimum(w: &[Vec<Option<i64>>], maximize: bool) -> Option<i64> {
    let n = w.len();
    if n == 0 {
        return Some(0);
    }
    const FORBID: i64 = 1 << 40;
    const INF: i64 = i64::MAX / 4;
    let cost = |i: usize, j: usize| -> i64 {
        match w[i][j] {
            Some(x) => {
                if maximize {
                    -x
                } else {
                    x
                }
            }
            None => FORBID,
        }
    };
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0i64;
    for j in 1..=n {
        let i = p[j] - 1;
        w[i][j - 1]?;
        total += cost(i, j - 1);
    }
    Some(if maximize { -total } else { total })
}

/// `log2` of Hadamard's bound for the minor `rows × cols`, using the
/// coefficient 1-norm of each entry (which bounds its modulus on the unit
/// circle, hence bounds every coefficient of the determinant).
fn hadamard_log2(m: &dyn PolyMatrix, rows: &[usize], cols: &[usize]) -> f64 {
    let mut total = 0.0;
    for &i in rows {
        let s: f64 = cols.iter().filter_map(|&j| m.entry_bound(i, j)).map(|b| b.l1 * b.l1).sum();
        if s > 0.0 {
            total += 0.5 * s.log2();
        }
    }
    total
}

/// Symmetric Chinese remaindering accumulator.
#[derive(Clone, Debug)]
struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Crt {
    fn new() -> Self {
        Crt { value: BigInt::zero(), modulus: BigInt::one() }
    }

    fn add(&mut self, r: u64, p: u64) {
        let cur = bigint_mod(&self.value, p);
        let minv = inv_mod(bigint_mod(&self.modulus, p), p);
        let t = mul_mod(sub_mod(r, cur, p), minv, p);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= BigInt::from(p);
    }

    fn symmetric(&self) -> BigInt {
        let half = &self.modulus >> 1;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

fn primes_for_bits(bits: f64) -> Vec<u64> {
    let mut count = 1;
    while (count as f64) * 61.0 < bits + 2.0 {
        count += 1;
    }
    large_primes(count)
}

/// Exact determinant of the minor `rows × cols` of an integer-polynomial
/// matrix.  The determinant is written `q^v·P(q)` with `v` at least the
/// min-weight assignment of entry valuations and `v + deg P` at most the
/// max-weight assignment of entry degrees; `P` is interpolated modulo
/// enough primes to exceed twice Hadamard's coefficient bound.
pub fn det_minor(m: &dyn PolyMatrix, rows: &[usize], cols: &[usize]) -> ZPoly {
    let n = rows.len();
    assert_eq!(n, cols.len());
    if n == 0 {
        return vec![BigInt::one()];
    }
    let degs: Vec<Vec<Option<i64>>> =
        rows.iter().map(|&i| cols.iter().map(|&j| m.entry_bound(i, j).map(|b| b.deg as i64)).collect()).collect();
    let vals: Vec<Vec<Option<i64>>> =
        rows.iter().map(|&i| cols.iter().map(|&j| m.entry_bound(i, j).map(|b| b.val as i64)).collect()).collect();
    let Some(dhi) = assignment_optimum(&degs, true) else {
        return vec![];
    };
    let vlo = assignment_optimum(&vals, false).expect("matching exists");
    let width = (dhi - vlo + 1) as usize;
    let maxdeg = degs.iter().flatten().flatten().copied().max().unwrap_or(0) as u64;
    let start = 2.max(maxdeg + 2);
    let xs: Vec<u64> = (start..start + width as u64).collect();
    let primes = primes_for_bits(hadamard_log2(m, rows, cols) + 1.0);
    let mut crts = vec![Crt::new(); width];
    for &p in &primes {
        let ys: Vec<u64> = xs
            .par_iter()
            .map(|&s| {
                let full = m.eval_mod(s, p);
                let a: Vec<Vec<u64>> = rows.iter().map(|&i| cols.iter().map(|&j| full[i][j]).collect()).collect();
                let d = det_mod(a, p);
                mul_mod(d, inv_mod(pow_mod(s, vlo as u64, p), p), p)
            })
            .collect();
        let f = modpoly::interpolate(&xs, &ys, p);
        for (k, c) in crts.iter_mut().enumerate() {
            c.add(f.get(k).copied().unwrap_or(0), p);
        }
    }
    let mut out: ZPoly = vec![BigInt::zero(); vlo as usize];
    out.extend(crts.iter().map(|c| c.symmetric()));
    zpoly::trim(&mut out);
    out
}

// ---------------------------------------------------------------------------
// Prime-power non-vanishing

/// Outcome of the prime-power root test.
#[derive(Clone, Debug, PartialEq)]
pub struct NonVanishing {
    /// True iff the polynomial has no root at any prime power `≥ 2`.
    pub nonvanishing: bool,
    /// A prime-power root, when one exists.
    pub witness: Option<BigInt>,
    /// The constant term after clearing denominators and removing the
    /// largest power of the variable.
    pub constant_term: BigInt,
    /// The prime-power divisors of the constant term that were evaluated.
    pub checked: Vec<BigInt>,
}

/// Decide whether `p(s) ≠ 0` for every prime power `s ≥ 2`.
///
/// An integer root divides the constant term `a0` (after clearing
/// denominators and powers of the variable) and is at most the Cauchy
/// bound `1 + max|a_i|/|a_n|`, so only prime-power divisors of `a0` below
/// that bound are evaluated.
pub fn prime_power_nonvanishing(p: &Poly1) -> Result<NonVanishing> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial in non-vanishing test".into()));
    }
    let ints = p.primitive_integer();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    zpoly_nonvanishing(&ints[low..])
}

fn zpoly_nonvanishing(a: &[BigInt]) -> Result<NonVanishing> {
    let a0 = a[0].clone();
    let lead = a.last().unwrap().abs();
    let maxc = a.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigUint = (BigInt::one() + maxc.div_ceil(&lead)).to_biguint().unwrap();
    let checked = prime_power_divisors_upto(&a0, &bound);
    let witness = checked.iter().find(|s| zpoly::eval_big(a, s).is_zero()).cloned();
    Ok(NonVanishing { nonvanishing: witness.is_none(), witness, constant_term: a0, checked })
}

/// Non-vanishing test for an integer polynomial (low degree first).
pub fn zpoly_prime_power_nonvanishing(p: &[BigInt]) -> Result<NonVanishing> {
    let low = p.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::InvalidInput("zero polynomial in non-vanishing test".into()))?;
    let mut a: ZPoly = p[low..].to_vec();
    zpoly::trim(&mut a);
    let g = zpoly::content(&a);
    let a: ZPoly = a.iter().map(|c| c / &g).collect();
    zpoly_nonvanishing(&a)
}

// ---------------------------------------------------------------------------
// Kernel relations

/// An exact polynomial relation `Σ_j coeffs[j].1 · row_{coeffs[j].0} = 0`
/// among the rows of a matrix, in which `row` occurs with a coefficient
/// that has no prime-power root.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub row: usize,
    pub coeffs: Vec<(usize, ZPoly)>,
}

impl Relation {
    /// The coefficient of the row being expressed.
    pub fn leading(&self) -> &ZPoly {
        &self.coeffs.iter().find(|(j, _)| *j == self.row).expect("row occurs in its relation").1
    }
}

/// How a family of relations was verified.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub primes: usize,
    pub points: usize,
    pub degree_bound: usize,
    pub log2_height_bound: f64,
}

fn inverse_mod(mut a: Vec<Vec<u64>>, p: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| a[i][c] != 0)?;
        a.swap(c, piv);
        inv.swap(c, piv);
        let iv = inv_mod(a[c][c], p);
        for j in 0..n {
            a[c][j] = mul_mod(a[c][j], iv, p);
            inv[c][j] = mul_mod(inv[c][j], iv, p);
        }
        for i in 0..n {
            if i != c && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = sub_mod(a[i][j], mul_mod(f, a[c][j], p), p);
                    inv[i][j] = sub_mod(inv[i][j], mul_mod(f, inv[c][j], p), p);
                }
            }
        }
    }
    Some(inv)
}

/// Per-prime image of the relations: for each non-pivot row a monic
/// denominator `L` and numerators `L·x_i` (indexed like the pivot rows).
type ModRelations = Vec<(modpoly::PolyP, Vec<modpoly::PolyP>)>;

const CHECK_POINTS: usize = 4;
const MAX_POINTS: usize = 2048;

/// Cramer coefficients `x = y_C · A^{-1}` for every non-pivot row at the
/// given points; `None` entries mark points where the minor is singular.
fn cramer_values(m: &dyn PolyMatrix, prows: &[usize], cols: &[usize], others: &[usize], xs: &[u64], p: u64) -> Vec<Option<Vec<Vec<u64>>>> {
    xs.par_iter()
        .map(|&s| {
            let full = m.eval_mod(s, p);
            let a: Vec<Vec<u64>> = prows.iter().map(|&i| cols.iter().map(|&j| full[i][j]).collect()).collect();
            let ai = inverse_mod(a, p)?;
            let r = prows.len();
            Some(
                others
                    .iter()
                    .map(|&y| {
                        let yc: Vec<u64> = cols.iter().map(|&j| full[y][j]).collect();
                        (0..r)
                            .map(|i| {
                                let mut acc = 0u64;
                                for (k, &yk) in yc.iter().enumerate() {
                                    if yk != 0 {
                                        acc = add_mod(acc, mul_mod(yk, ai[k][i], p), p);
                                    }
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect()
}

fn reconstruct_entry(xs: &[u64], ys: &[u64], chk: &[(u64, u64)], p: u64) -> Option<(modpoly::PolyP, modpoly::PolyP)> {
    let k = xs.len();
    let f = modpoly::interpolate(xs, ys, p);
    let mm = modpoly::from_roots(xs, p);
    let mut tried = vec![];
    for nb in [k / 2, (3 * k) / 4, k.saturating_sub(2), k] {
        if nb == 0 || tried.contains(&nb) {
            continue;
        }
        tried.push(nb);
        if let Some((n, d)) = modpoly::rational_reconstruct(&f, &mm, nb, p) {
            let ok = chk.iter().all(|&(s, v)| {
                let dv = modpoly::eval(&d, s, p);
                dv != 0 && mul_mod(modpoly::eval(&n, s, p), inv_mod(dv, p), p) == v
            });
            if ok {
                return Some((n, d));
            }
        }
    }
    None
}

fn mod_relations(m: &dyn PolyMatrix, prows: &[usize], cols: &[usize], others: &[usize], p: u64) -> Option<ModRelations> {
    let r = prows.len();
    let mut pts: Vec<u64> = vec![];
    let mut vals: Vec<Vec<Vec<u64>>> = vec![]; // per point: [y][i]
    let mut next = 3u64;
    let mut want = 24usize;
    loop {
        while pts.len() < want + CHECK_POINTS {
            let need = want + CHECK_POINTS - pts.len();
            let cand: Vec<u64> = (next..next + need as u64).collect();
            next += need as u64;
            for (s, v) in cand.iter().zip(cramer_values(m, prows, cols, others, &cand, p)) {
                if let Some(v) = v {
                    pts.push(*s);
                    vals.push(v);
                }
            }
            if next > 4 * MAX_POINTS as u64 + 64 {
                return None;
            }
        }
        let xs = &pts[..want];
        let mut out: ModRelations = Vec::with_capacity(others.len());
        let mut ok = true;
        'rows: for y in 0..others.len() {
            let mut ents = Vec::with_capacity(r);
            for i in 0..r {
                let ys: Vec<u64> = (0..want).map(|k| vals[k][y][i]).collect();
                let chk: Vec<(u64, u64)> = (want..want + CHECK_POINTS).map(|k| (pts[k], vals[k][y][i])).collect();
                match reconstruct_entry(xs, &ys, &chk, p) {
                    Some(e) => ents.push(e),
                    None => {
                        ok = false;
                        break 'rows;
                    }
                }
            }
            let mut l: modpoly::PolyP = vec![1];
            for (_, d) in &ents {
                l = modpoly::lcm(&l, d, p);
            }
            let nums = ents
                .iter()
                .map(|(n, d)| {
                    let (cof, _) = modpoly::div_rem(&l, d, p);
                    modpoly::mul(n, &cof, p)
                })
                .collect();
            out.push((l, nums));
        }
        if ok {
            return Some(out);
        }
        if want >= MAX_POINTS {
            return None;
        }
        want *= 2;
    }
}

/// Rational number reconstruction of `a mod m` with numerator and
/// denominator bounded by `sqrt(m/2)`.
fn rat_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(m).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Combine per-prime relation images into integer relations, or `None`
/// when the images are inconsistent or not yet liftable.
fn lift_relations(images: &[(u64, ModRelations)], prows: &[usize], others: &[usize]) -> Option<Vec<Relation>> {
    let (_, first) = &images[0];
    let mut rels = Vec::with_capacity(others.len());
    for (yi, &y) in others.iter().enumerate() {
        let shape: Vec<usize> = std::iter::once(first[yi].0.len()).chain(first[yi].1.iter().map(|n| n.len())).collect();
        let mut polys: Vec<Vec<Crt>> = shape.iter().map(|&l| vec![Crt::new(); l]).collect();
        for (p, img) in images {
            let (l, nums) = &img[yi];
            let sh: Vec<usize> = std::iter::once(l.len()).chain(nums.iter().map(|n| n.len())).collect();
            if sh != shape {
                return None;
            }
            for (k, c) in polys[0].iter_mut().enumerate() {
                c.add(l[k], *p);
            }
            for (i, n) in nums.iter().enumerate() {
                for (k, c) in polys[i + 1].iter_mut().enumerate() {
                    c.add(n[k], *p);
                }
            }
        }
        let mut rat_polys: Vec<Vec<Rat>> = Vec::with_capacity(polys.len());
        for pc in &polys {
            let mut v = Vec::with_capacity(pc.len());
            for c in pc {
                v.push(rat_reconstruct(&c.value, &c.modulus)?);
            }
            rat_polys.push(v);
        }
        let den_lcm = rat_polys.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let to_int = |v: &[Rat]| -> ZPoly {
            let mut z: ZPoly = v.iter().map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer()).collect();
            zpoly::trim(&mut z);
            z
        };
        // relation: L·row_y − Σ N_i·row_{prows[i]} = 0
        let mut coeffs = vec![(y, to_int(&rat_polys[0]))];
        for (i, &pr) in prows.iter().enumerate() {
            let z = to_int(&rat_polys[i + 1]);
            if !z.is_empty() {
                coeffs.push((pr, zpoly::neg(&z)));
            }
        }
        let g = coeffs.iter().flat_map(|(_, z)| z.iter()).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for (_, z) in coeffs.iter_mut() {
                *z = zpoly::div_scalar_exact(z, &g);
            }
        }
        rels.push(Relation { row: y, coeffs });
    }
    Some(rels)
}

/// Verify `Σ_j k_j(q)·M_j(q) ≡ 0` exactly for every relation.  Each column
/// of the combination is an integer polynomial of degree at most `D` and
/// height at most `H`; vanishing at `D + 1` points modulo primes whose
/// product exceeds `2H` proves it is identically zero.
pub fn verify_relations(m: &dyn PolyMatrix, rels: &[Relation]) -> Option<RelationCheck> {
    if rels.is_empty() {
        return Some(RelationCheck { primes: 0, points: 0, degree_bound: 0, log2_height_bound: 0.0 });
    }
    let ncols = m.ncols();
    let mut dbound = 0usize;
    let mut hbound = 0f64;
    for rel in rels {
        let kb: Vec<(usize, EntryBound)> = rel.coeffs.iter().filter_map(|(j, z)| EntryBound::of(z).map(|b| (*j, b))).collect();
        for c in 0..ncols {
            let mut h = 0f64;
            for (j, b) in &kb {
                if let Some(e) = m.entry_bound(*j, c) {
                    dbound = dbound.max((b.deg + e.deg) as usize);
                    h += b.l1 * e.l1;
                }
            }
            hbound = hbound.max(h);
        }
    }
    let log2h = if hbound > 0.0 { hbound.log2() } else { 0.0 };
    let primes = primes_for_bits(log2h + 1.0);
    let xs: Vec<u64> = (2..2 + dbound as u64 + 1).collect();
    for &p in &primes {
        let ok = xs.par_iter().all(|&s| {
            let full = m.eval_mod(s, p);
            rels.iter().all(|rel| {
                let mut acc = vec![0u64; ncols];
                for (j, z) in &rel.coeffs {
                    let k = zpoly::eval_mod(z, s, p);
                    if k == 0 {
                        continue;
                    }
                    for (a, &v) in acc.iter_mut().zip(full[*j].iter()) {
                        if v != 0 {
                            *a = add_mod(*a, mul_mod(k, v, p), p);
                        }
                    }
                }
                acc.iter().all(|&a| a == 0)
            })
        });
        if !ok {
            return None;
        }
    }
    Some(RelationCheck { primes: primes.len(), points: xs.len(), degree_bound: dbound, log2_height_bound: log2h })
}

/// Reconstruct and verify, for every row outside `prows`, a relation
/// expressing it in the span of the rows `prows` (whose minor on `cols` is
/// nonsingular generically).
pub fn span_relations(m: &dyn PolyMatrix, prows: &[usize], cols: &[usize]) -> Option<(Vec<Relation>, RelationCheck)> {
    let others: Vec<usize> = (0..m.nrows()).filter(|i| !prows.contains(i)).collect();
    if others.is_empty() {
        return Some((vec![], RelationCheck { primes: 0, points: 0, degree_bound: 0, log2_height_bound: 0.0 }));
    }
    let primes = large_primes(8);
    let mut images: Vec<(u64, ModRelations)> = vec![];
    for &p in primes.iter().rev() {
        images.push((p, mod_relations(m, prows, cols, &others, p)?));
        if let Some(rels) = lift_relations(&images, prows, &others) {
            if let Some(check) = verify_relations(m, &rels) {
                return Some((rels, check));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Certified rank

/// Certificate that a matrix over `Q(q)` has the same rank at every prime
/// power `q`.
#[derive(Clone, Debug)]
pub struct SMembershipCertificate {
    pub rank: usize,
    /// Rows of the certifying minor.
    pub rows: Vec<usize>,
    /// Columns of the certifying minor.
    pub cols: Vec<usize>,
    /// Determinant of the minor (after clearing row denominators).
    pub minor_det: Poly1,
    pub det_check: NonVanishing,
    /// One relation per row outside the minor.
    pub relations: Vec<Relation>,
    /// Non-vanishing checks of the distinct leading relation coefficients.
    pub relation_checks: Vec<NonVanishing>,
    pub relation_verification: RelationCheck,
    /// Value of `q` at which the candidate minor was selected.
    pub sample_q: u64,
}

fn zpoly_to_poly1(z: &[BigInt]) -> Poly1 {
    Poly1::new(z.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn try_candidate(m: &dyn PolyMatrix, q0: u64) -> Result<Option<SMembershipCertificate>> {
    let p0 = large_primes(1)[0];
    let mut a = m.eval_mod(q0, p0);
    let (rank, cols, prows) = rank_and_pivots_mod(&mut a, p0);
    let det = det_minor(m, &prows, &cols);
    if zpoly::is_zero(&det) {
        return Ok(None);
    }
    let det_check = zpoly_prime_power_nonvanishing(&det)?;
    if !det_check.nonvanishing {
        return Ok(None);
    }
    let Some((relations, relation_verification)) = span_relations(m, &prows, &cols) else {
        return Ok(None);
    };
    let mut leads: Vec<ZPoly> = relations.iter().map(|r| r.leading().clone()).collect();
    leads.sort();
    leads.dedup();
    let mut relation_checks = vec![];
    for l in &leads {
        let c = zpoly_prime_power_nonvanishing(l)?;
        if !c.nonvanishing {
            return Ok(None);
        }
        relation_checks.push(c);
    }
    Ok(Some(SMembershipCertificate {
        rank,
        rows: prows,
        cols,
        minor_det: zpoly_to_poly1(&det),
        det_check,
        relations,
        relation_checks,
        relation_verification,
        sample_q: q0,
    }))
}

/// Certified rank of an integer-polynomial matrix.  Candidate minors are
/// taken from elimination at `q = 2`, then `q = 3`.
pub fn certified_rank_matrix(m: &dyn PolyMatrix) -> Result<SMembershipCertificate> {
    for q0 in [2u64, 3] {
        if let Some(c) = try_candidate(m, q0)? {
            return Ok(c);
        }
    }
    Err(Error::RankNotUniform)
}

/// Clear the denominators of one row of rational functions in `q` given
/// as `(numerator, denominator)` integer polynomials, failing if the
/// common denominator has a prime-power root.
fn clear_row(row: &[(ZPoly, ZPoly)]) -> Result<Vec<ZPoly>> {
    let mut l = Poly1::constant(Rat::one());
    for (n, d) in row {
        if zpoly::is_zero(n) {
            continue;
        }
        let dp = zpoly_to_poly1(d);
        l = l.mul(&dp).div_rem(&l.gcd(&dp)).0;
    }
    let lz = l.primitive_integer();
    let check = zpoly_prime_power_nonvanishing(&lz)?;
    if let Some(w) = check.witness {
        return Err(Error::DenominatorVanishes(w.to_string()));
    }
    let l = zpoly_to_poly1(&lz);
    let scaled: Vec<Poly1> = row
        .iter()
        .map(|(n, d)| {
            if zpoly::is_zero(n) {
                Poly1::zero()
            } else {
                zpoly_to_poly1(n).mul(&l.div_rem(&zpoly_to_poly1(d)).0)
            }
        })
        .collect();
    let den = scaled.iter().flat_map(|p| p.coeffs().iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    Ok(scaled
        .iter()
        .map(|p| {
            let mut z: ZPoly = p.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
            zpoly::trim(&mut z);
            z
        })
        .collect())
}

/// Certified rank of a matrix of rational functions in `q` (entries must
/// not involve `t`).
pub fn certified_rank(m: &[Vec<RatFunc2>]) -> Result<(usize, SMembershipCertificate)> {
    let mut rows = Vec::with_capacity(m.len());
    for r in m {
        let mut parts = Vec::with_capacity(r.len());
        for e in r {
            let (Some(n), Some(d)) = (e.num().to_poly1_q(), e.den().to_poly1_q()) else {
                return Err(Error::InvalidInput("certified_rank entries must be rational functions of q alone".into()));
            };
            let l = n.coeffs().iter().chain(d.coeffs().iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let z = |p: &Poly1| -> ZPoly { p.coeffs().iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect() };
            parts.push((z(&n), z(&d)));
        }
        rows.push(clear_row(&parts)?);
    }
    let c = certified_rank_matrix(&ZPolyMatrix::new(rows))?;
    Ok((c.rank, c))
}

/// Certified rank of a matrix with [`QFunc`] entries.
pub fn certified_rank_qfunc(m: &[Vec<QFunc>]) -> Result<(usize, SMembershipCertificate)> {
    let rows: Result<Vec<Vec<ZPoly>>> =
        m.iter().map(|r| clear_row(&r.iter().map(|e| (e.num().clone(), e.den().to_poly())).collect::<Vec<_>>())).collect();
    let c = certified_rank_matrix(&ZPolyMatrix::new(rows?))?;
    Ok((c.rank, c))
}

/// Rank of an integer-polynomial matrix at `q = s` modulo a large prime
/// (a fast numeric filter, not a certificate).
pub fn rank_at(m: &dyn PolyMatrix, s: u64) -> usize {
    let p = large_primes(1)[0];
    let mut a = m.eval_mod(s, p);
    rank_and_pivots_mod(&mut a, p).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::poly2::Poly2;
    use crate::scalars::rat::int;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn qpoly(v: &[i64]) -> RatFunc2 {
        RatFunc2::from_poly(Poly2::from_poly1_q(&Poly1::from_ints(v)))
    }

    #[test]
    fn det_interpolate_small() {
        let x = Poly1::x();
        let one = Poly1::constant(int(1));
        let zero = Poly1::zero();
        assert_eq!(det_interpolate(&[vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]], 1), Poly1::from_ints(&[-1, 0, 1]));
        assert_eq!(det_interpolate(&[vec![x.clone(), zero.clone()], vec![zero, x]], 1), Poly1::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn assignment() {
        let w = vec![vec![Some(4), Some(1), Some(3)], vec![Some(2), Some(0), Some(5)], vec![Some(3), Some(2), Some(2)]];
        assert_eq!(assignment_optimum(&w, false), Some(5));
        assert_eq!(assignment_optimum(&w, true), Some(11));
        let f = vec![vec![Some(1), None], vec![Some(1), None]];
        assert_eq!(assignment_optimum(&f, false), None);
    }

    #[test]
    fn nonvanishing_examples() {
        let r = prime_power_nonvanishing(&Poly1::from_ints(&[-2, 1])).unwrap();
        assert!(!r.nonvanishing);
        assert_eq!(r.witness, Some(BigInt::from(2)));
        assert!(prime_power_nonvanishing(&Poly1::from_ints(&[-6, 1])).unwrap().nonvanishing);
        assert!(prime_power_nonvanishing(&Poly1::from_ints(&[1, 0, 1])).unwrap().nonvanishing);
        assert!(prime_power_nonvanishing(&Poly1::zero()).is_err());
        // (x - 9)(x + 1) x^3 : root 9 = 3^2
        let p = Poly1::from_ints(&[0, 0, 0, -9, -8, 1]);
        assert_eq!(prime_power_nonvanishing(&p).unwrap().witness, Some(BigInt::from(9)));
    }

    #[test]
    fn det_minor_matches_interpolation() {
        let rows = vec![vec![z(&[0, 1]), z(&[1]), z(&[2, 0, 3])], vec![z(&[1]), z(&[0, 0, 1]), z(&[])], vec![z(&[5, -1]), z(&[0, 2]), z(&[1, 1])]];
        let m = ZPolyMatrix::new(rows.clone());
        let d = det_minor(&m, &[0, 1, 2], &[0, 1, 2]);
        let p1: Vec<Vec<Poly1>> = rows.iter().map(|r| r.iter().map(|e| zpoly_to_poly1(e)).collect()).collect();
        assert_eq!(zpoly_to_poly1(&d), det_interpolate(&p1, 2));
    }

    #[test]
    fn certified_rank_examples() {
        let m = vec![vec![qpoly(&[0, 1]), qpoly(&[1])], vec![qpoly(&[0, 0, 1]), qpoly(&[0, 1])]];
        let (r, cert) = certified_rank(&m).unwrap();
        assert_eq!(r, 1);
        assert_eq!(cert.relations.len(), 1);
        let id: Vec<Vec<RatFunc2>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { RatFunc2::one() } else { RatFunc2::zero() }).collect()).collect();
        assert_eq!(certified_rank(&id).unwrap().0, 3);
    }

    #[test]
    fn rank_drop_at_prime_power_is_not_uniform() {
        // det = q - 2 vanishes at the prime power 2
        let m = vec![vec![qpoly(&[0, 1]), qpoly(&[2])], vec![qpoly(&[1]), qpoly(&[1])]];
        assert_eq!(certified_rank(&m).unwrap_err(), Error::RankNotUniform);
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        let bad = RatFunc2::new(Poly2::one(), Poly2::from_poly1_q(&Poly1::from_ints(&[-4, 1])));
        let m = vec![vec![bad]];
        assert_eq!(certified_rank(&m).unwrap_err(), Error::DenominatorVanishes("4".into()));
    }
}

//! Weyl-group enumeration with canonical reduced words, multiplication
//! tables, inversion sets, minimal coset representatives and stabilizers.
//!
//! A word `[i_1, …, i_k]` denotes the product `s_{i_1} ⋯ s_{i_k}` in the
//! written order, so the rightmost letter acts first on weights.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsys::{ParabolicIndex, RootSystem, Weight};
use crate::scalars::rat::{int, Rat};

pub type EltId = usize;

/// A group element viewed as a value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElt {
    pub id: EltId,
    /// Canonical reduced word (0-based letters, written order).
    pub word: Vec<usize>,
    /// Row-major `rank × rank` integer action on weight coordinates.
    pub action: Vec<i64>,
    pub length: usize,
}

#[derive(Debug)]
pub struct WeylGroup {
    pub rs: Arc<RootSystem>,
    rank: usize,
    mats: Vec<Vec<i64>>,
    words: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    /// `lmul[s][x] = s·x`
    lmul: Vec<Vec<EltId>>,
    /// `rmul[s][x] = x·s`
    rmul: Vec<Vec<EltId>>,
    inverse: Vec<EltId>,
    index: HashMap<Vec<i64>, EltId>,
    mul_table: Vec<u32>,
}

/// Matrix of the simple reflection `s_i` on weight coordinates.
fn reflection_matrix(rs: &RootSystem, i: usize) -> Vec<i64> {
    let n = rs.rank;
    let mut m = vec![0i64; n * n];
    for j in 0..n {
        m[j * n + j] = 1;
        m[j * n + i] -= rs.cartan[i][j];
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    c[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    c
}

/// Upper bound on the group order explored.
pub const GROUP_BOUND: usize = 100_000;

/// Enumerate the Weyl group of a finite root system.
pub fn generate_group(rs: Arc<RootSystem>) -> Result<WeylGroup> {
    let n = rs.rank;
    let gens: Vec<Vec<i64>> = (0..n).map(|i| reflection_matrix(&rs, i)).collect();
    let mut id = vec![0i64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut mats = vec![id.clone()];
    let mut lengths = vec![0usize];
    let mut index: HashMap<Vec<i64>, EltId> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for g in &gens {
            let m = mat_mul(g, &mats[a], n);
            if !index.contains_key(&m) {
                let k = mats.len();
                index.insert(m.clone(), k);
                mats.push(m);
                lengths.push(lengths[a] + 1);
                queue.push_back(k);
                if mats.len() > GROUP_BOUND {
                    return Err(Error::InvalidInput("Weyl group too large".into()));
                }
            }
        }
    }
    let size = mats.len();
    let lmul: Vec<Vec<EltId>> = gens.iter().map(|g| (0..size).map(|a| index[&mat_mul(g, &mats[a], n)]).collect()).collect();
    let rmul: Vec<Vec<EltId>> = gens.iter().map(|g| (0..size).map(|a| index[&mat_mul(&mats[a], g, n)]).collect()).collect();
    // canonical words: lexicographically least reduced word
    let mut order: Vec<EltId> = (0..size).collect();
    order.sort_by_key(|&x| lengths[x]);
    let mut words: Vec<Vec<usize>> = vec![vec![]; size];
    for &x in &order {
        if lengths[x] == 0 {
            continue;
        }
        let s = (0..n).find(|&s| lengths[lmul[s][x]] < lengths[x]).unwrap();
        let mut w = vec![s];
        w.extend_from_slice(&words[lmul[s][x]]);
        words[x] = w;
    }
    let mut inverse = vec![0; size];
    for x in 0..size {
        let y = words[x].iter().fold(0, |acc, &s| lmul[s][acc]);
        inverse[x] = y;
    }
    let mut g = WeylGroup { rs, rank: n, mats, words, lengths, lmul, rmul, inverse, index, mul_table: vec![] };
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        for y in 0..size {
            table[x * size + y] = g.words[y].iter().fold(x, |acc, &s| g.rmul[s][acc]) as u32;
        }
    }
    g.mul_table = table;
    Ok(g)
}

impl WeylGroup {
    pub fn f4() -> WeylGroup {
        generate_group(Arc::new(RootSystem::f4())).expect("F4 Weyl group")
    }

    pub fn size(&self) -> usize {
        self.mats.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> EltId {
        0
    }

    pub fn length(&self, x: EltId) -> usize {
        self.lengths[x]
    }

    pub fn word(&self, x: EltId) -> &[usize] {
        &self.words[x]
    }

    pub fn lmul(&self, s: usize, x: EltId) -> EltId {
        self.lmul[s][x]
    }

    pub fn rmul(&self, x: EltId, s: usize) -> EltId {
        self.rmul[s][x]
    }

    pub fn mul(&self, x: EltId, y: EltId) -> EltId {
        self.mul_table[x * self.size() + y] as EltId
    }

    pub fn inverse(&self, x: EltId) -> EltId {
        self.inverse[x]
    }

    pub fn action(&self, x: EltId) -> &[i64] {
        &self.mats[x]
    }

    pub fn elt(&self, x: EltId) -> WeylElt {
        WeylElt { id: x, word: self.words[x].clone(), action: self.mats[x].clone(), length: self.lengths[x] }
    }

    pub fn longest(&self) -> EltId {
        (0..self.size()).max_by_key(|&x| self.lengths[x]).unwrap()
    }

    /// Element of a word (written order).
    pub fn from_word(&self, word: &[usize]) -> Result<EltId> {
        word.iter().try_fold(0, |acc, &s| {
            if s >= self.rank {
                Err(Error::InvalidInput(format!("letter {} out of range", s + 1)))
            } else {
                Ok(self.rmul[s][acc])
            }
        })
    }

    /// Look up an element by its action matrix.
    pub fn from_matrix(&self, m: &[i64]) -> Option<EltId> {
        self.index.get(m).copied()
    }

    /// Is the word reduced?
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.from_word(word).map(|x| self.lengths[x] == word.len()).unwrap_or(false)
    }

    /// `w·λ`.
    pub fn act(&self, x: EltId, lam: &Weight) -> Weight {
        let n = self.rank;
        let m = &self.mats[x];
        Weight((0..n).map(|i| (0..n).map(|k| int(m[i * n + k]) * &lam.0[k]).sum()).collect())
    }

    /// Apply a root (simple-root coordinates) transformation by `x`.
    pub fn act_on_root(&self, x: EltId, c: &[i64]) -> Vec<i64> {
        let mut r = c.to_vec();
        for &s in self.words[x].iter().rev() {
            let p: i64 = (0..self.rank).map(|k| r[k] * self.rs.cartan[k][s]).sum();
            r[s] -= p;
        }
        r
    }

    /// `R(w) = {β > 0 : wβ < 0}` as indices into the positive roots.
    pub fn inversion_set(&self, x: EltId) -> Vec<usize> {
        self.rs
            .positive
            .iter()
            .enumerate()
            .filter(|(_, b)| self.act_on_root(x, b).iter().any(|&v| v < 0))
            .map(|(i, _)| i)
            .collect()
    }

    /// Minimal-length representatives of `W / W_Θ`.
    pub fn min_coset_reps(&self, theta: &[usize]) -> Vec<EltId> {
        let mut v: Vec<EltId> =
            (0..self.size()).filter(|&x| theta.iter().all(|&j| self.lengths[self.rmul[j][x]] > self.lengths[x])).collect();
        v.sort_by(|&a, &b| (self.lengths[a], &self.words[a]).cmp(&(self.lengths[b], &self.words[b])));
        v
    }

    /// Representatives `W(P_i, G)` for a maximal parabolic.
    pub fn parabolic_reps(&self, p: ParabolicIndex) -> Vec<EltId> {
        self.min_coset_reps(&p.theta(self.rank))
    }

    /// Minimal representatives of `W_L \ W / W_M`.
    pub fn min_double_coset_reps(&self, theta_l: &[usize], theta_m: &[usize]) -> Vec<EltId> {
        let mut v: Vec<EltId> = (0..self.size())
            .filter(|&x| {
                theta_l.iter().all(|&j| self.lengths[self.lmul[j][x]] > self.lengths[x])
                    && theta_m.iter().all(|&j| self.lengths[self.rmul[j][x]] > self.lengths[x])
            })
            .collect();
        v.sort_by(|&a, &b| (self.lengths[a], &self.words[a]).cmp(&(self.lengths[b], &self.words[b])));
        v
    }

    /// The parabolic subgroup generated by `theta`.
    pub fn subgroup(&self, theta: &[usize]) -> Vec<EltId> {
        let mut seen = vec![false; self.size()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let a = out[i];
            for &s in theta {
                let b = self.lmul[s][a];
                if !seen[b] {
                    seen[b] = true;
                    out.push(b);
                }
            }
            i += 1;
        }
        out.sort_by_key(|&x| (self.lengths[x], self.words[x].clone()));
        out
    }

    /// Pointwise stabilizer of `λ`.
    pub fn stabilizer(&self, lam: &Weight) -> Vec<EltId> {
        (0..self.size()).filter(|&x| self.act(x, lam) == *lam).collect()
    }

    /// Render a word as `w1w2w3` (1-based letters); identity as `1`.
    pub fn render(&self, x: EltId) -> String {
        render_word(&self.words[x])
    }

    /// Coxeter exponent `m_ij`.
    pub fn coxeter_m(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.rs.cartan[i][j] * self.rs.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("finite type"),
        }
    }

    /// All words obtained from `word` by one braid move.
    pub fn braid_neighbours(&self, word: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![];
        for i in 0..self.rank {
            for j in 0..self.rank {
                if i == j {
                    continue;
                }
                let m = self.coxeter_m(i, j);
                let pat: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
                let rep: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
                if word.len() < m {
                    continue;
                }
                for start in 0..=word.len() - m {
                    if word[start..start + m] == pat[..] {
                        let mut w = word.to_vec();
                        w[start..start + m].copy_from_slice(&rep);
                        out.push(w);
                    }
                }
            }
        }
        out
    }

    /// Are all coordinates of `λ` at most zero?
    pub fn is_antidominant(lam: &Weight) -> bool {
        lam.0.iter().all(|c| *c <= Rat::zero())
    }
}

/// Parse `"w3w2w3"` (or `"1"` / `""` for the identity) into 0-based letters.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "1" || s == "e" {
        return Ok(vec![]);
    }
    let mut out = vec![];
    for part in s.split('w').skip(1) {
        let part = part.trim_start_matches('_');
        let k: usize = part.parse().map_err(|_| Error::Parse(format!("bad word {s:?}")))?;
        if k == 0 {
            return Err(Error::Parse(format!("bad letter in {s:?}")));
        }
        out.push(k - 1);
    }
    if !s.starts_with('w') {
        return Err(Error::Parse(format!("bad word {s:?}")));
    }
    Ok(out)
}

pub fn render_word(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|s| format!("w{}", s + 1)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    #[test]
    fn group_orders() {
        let a1 = generate_group(Arc::new(build_root_system(&[vec![2]]).unwrap())).unwrap();
        assert_eq!(a1.size(), 2);
        let c3 = generate_group(Arc::new(build_root_system(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]).unwrap())).unwrap();
        assert_eq!(c3.size(), 48);
        let g = WeylGroup::f4();
        assert_eq!(g.size(), 1152);
        assert_eq!(g.length(g.longest()), 24);
    }

    #[test]
    fn words_and_tables() {
        let g = WeylGroup::f4();
        for x in [5, 100, 777] {
            assert_eq!(g.from_word(g.word(x)).unwrap(), x);
            assert_eq!(g.mul(x, g.inverse(x)), 0);
            assert_eq!(g.inversion_set(x).len(), g.length(x));
        }
        assert_eq!(g.inversion_set(g.longest()).len(), 24);
        assert_eq!(parse_word("w3w2w3").unwrap(), vec![2, 1, 2]);
        assert_eq!(render_word(&[2, 1, 2]), "w3w2w3");
        assert!(parse_word("x1").is_err());
    }

    #[test]
    fn fundamental_reflection() {
        let g = WeylGroup::f4();
        let w1 = g.from_word(&[0]).unwrap();
        assert_eq!(g.act(w1, &Weight::fundamental(4, 0)), Weight::from_ints(&[-1, 1, 0, 0]));
        let w3 = g.from_word(&[2]).unwrap();
        assert_eq!(g.act(w3, &Weight::fundamental(4, 2)), Weight::from_ints(&[0, 1, -1, 1]));
    }

    #[test]
    fn coset_counts() {
        let g = WeylGroup::f4();
        assert_eq!(g.min_coset_reps(&[]).len(), 1152);
        assert_eq!(g.parabolic_reps(ParabolicIndex { i: 4 }).len(), 24);
        assert_eq!(g.parabolic_reps(ParabolicIndex { i: 3 }).len(), 96);
        assert_eq!(g.subgroup(&[0, 1, 2]).len(), 48);
    }
}

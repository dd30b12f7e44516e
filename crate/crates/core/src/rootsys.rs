//! Root systems from Cartan matrices and the weight calculus on them.
//!
//! Conventions: `cartan[i][j] = ⟨α_i, α̌_j⟩`, so row `i` lists the simple
//! root `α_i` in the basis of fundamental weights.  Weights are stored in
//! fundamental-weight coordinates (`λ_j = ⟨λ, α̌_j⟩`), roots in simple-root
//! coordinates, coroots in simple-coroot coordinates.  Indices are 0-based
//! internally; user-facing labels (`w_1`, `P_4`) are 1-based.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::rat::{fmt_rat, int, Rat};

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rat>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rat::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| int(x)).collect())
    }

    /// The fundamental weight `ϖ_i` (0-based `i`).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = Rat::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    /// Integer coordinates, if all are integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(crate::scalars::rat::to_i64).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rat).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A maximal parabolic `P_i`, obtained by deleting the simple root `α_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicIndex {
    /// 1-based label of the deleted simple root.
    pub i: usize,
}

impl ParabolicIndex {
    pub fn new(i: usize, rank: usize) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::InvalidInput(format!("parabolic index {i} outside 1..={rank}")));
        }
        Ok(ParabolicIndex { i })
    }

    /// 0-based index of the deleted root.
    pub fn idx(&self) -> usize {
        self.i - 1
    }

    /// The simple roots generating the Levi `M` (0-based).
    pub fn theta(&self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|&j| j != self.idx()).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CartanConfig {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    /// Squared lengths of the simple roots (longest = 2 per component).
    pub norms: Vec<Rat>,
    /// Positive roots in simple-root coordinates, by height then lexicographic.
    pub positive: Vec<Vec<i64>>,
    /// Coroots of `positive`, in simple-coroot coordinates.
    pub coroots: Vec<Vec<Rat>>,
    /// Row `i` is `ϖ_i` in simple-root coordinates.
    pub inv_cartan: Vec<Vec<Rat>>,
}

/// Bound on the number of positive roots explored before declaring the
/// Cartan matrix not of finite type.
pub const ROOT_CLOSURE_BOUND: usize = 10_000;

impl RootSystem {
    /// F4 with `α_1, α_2` long and `α_3, α_4` short.
    pub fn f4() -> RootSystem {
        build_root_system(&[vec![2, -1, 0, 0], vec![-1, 2, -2, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]])
            .expect("F4 is finite type")
    }

    pub fn from_json(s: &str) -> Result<RootSystem> {
        let cfg: CartanConfig = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut rs = build_root_system(&cfg.cartan)?;
        if !cfg.labels.is_empty() {
            if cfg.labels.len() != rs.rank {
                return Err(Error::InvalidInput("label count differs from rank".into()));
            }
            rs.labels = cfg.labels;
        }
        Ok(rs)
    }

    /// Simple root `α_i` in fundamental-weight coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight::from_ints(&self.cartan[i])
    }

    /// A root given in simple-root coordinates, in weight coordinates.
    pub fn root_to_weight(&self, c: &[i64]) -> Weight {
        Weight((0..self.rank).map(|j| int((0..self.rank).map(|k| c[k] * self.cartan[k][j]).sum())).collect())
    }

    /// `⟨λ, β̌⟩` for the positive root with index `beta`.
    pub fn pairing_idx(&self, lam: &Weight, beta: usize) -> Rat {
        self.coroots[beta].iter().zip(&lam.0).map(|(c, l)| c * l).sum()
    }

    /// `⟨λ, β̌⟩` for a positive root given in simple-root coordinates.
    pub fn pairing(&self, lam: &Weight, beta: &[i64]) -> Result<Rat> {
        let idx = self.root_index(beta).ok_or_else(|| Error::InvalidInput(format!("{beta:?} is not a positive root")))?;
        Ok(self.pairing_idx(lam, idx))
    }

    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.positive.iter().position(|r| r == beta)
    }

    /// `ρ_T = Σ ϖ_i`.
    pub fn rho(&self) -> Weight {
        Weight(vec![Rat::one(); self.rank])
    }

    /// `(ρ_M, ρ_T^M)` for the Levi generated by `theta`:
    /// `ρ_M` is half the sum of positive roots outside the Levi.
    pub fn rho_vectors_theta(&self, theta: &[usize]) -> (Weight, Weight) {
        let mut sum = Weight::zero(self.rank);
        for r in &self.positive {
            let in_levi = (0..self.rank).all(|k| r[k] == 0 || theta.contains(&k));
            if !in_levi {
                sum = sum.add(&self.root_to_weight(r));
            }
        }
        let rho_m = sum.scale(&Rat::new(1.into(), 2.into()));
        let rho_tm = self.rho().sub(&rho_m);
        (rho_m, rho_tm)
    }

    /// `(ρ_M, ρ_T^M)` for a maximal parabolic; asserts `ρ_M ∈ Q·ϖ_i`.
    pub fn rho_vectors(&self, p: ParabolicIndex) -> (Weight, Weight) {
        let (rho_m, rho_tm) = self.rho_vectors_theta(&p.theta(self.rank));
        for j in 0..self.rank {
            assert!(j == p.idx() || rho_m.0[j].is_zero(), "rho_M not proportional to the fundamental weight");
        }
        (rho_m, rho_tm)
    }

    /// Coordinates of `λ` in the simple-root basis.
    pub fn to_simple_root_coords(&self, lam: &Weight) -> Vec<Rat> {
        (0..self.rank).map(|j| (0..self.rank).map(|i| &lam.0[i] * &self.inv_cartan[i][j]).sum()).collect()
    }

    /// Index of the highest root.
    pub fn highest_root(&self) -> usize {
        self.positive.len() - 1
    }

    /// Height of a coroot (sum of simple-coroot coordinates).
    pub fn coroot_height(&self, beta: usize) -> Rat {
        self.coroots[beta].iter().sum()
    }
}

fn symmetrize(cartan: &[Vec<i64>]) -> Result<Vec<Rat>> {
    let n = cartan.len();
    let mut norms: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if norms[start].is_some() {
            continue;
        }
        norms[start] = Some(Rat::one());
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 {
                    // A_ij n_j = A_ji n_i
                    let nj = norms[i].clone().unwrap() * int(cartan[j][i]) / int(cartan[i][j]);
                    match &norms[j] {
                        None => {
                            norms[j] = Some(nj);
                            comp.push(j);
                            stack.push(j);
                        }
                        Some(x) if *x != nj => {
                            return Err(Error::InvalidInput("Cartan matrix not symmetrizable".into()))
                        }
                        _ => {}
                    }
                }
            }
        }
        let max = comp.iter().map(|&k| norms[k].clone().unwrap()).max().unwrap();
        for &k in &comp {
            norms[k] = Some(norms[k].clone().unwrap() * int(2) / &max);
        }
    }
    Ok(norms.into_iter().map(Option::unwrap).collect())
}

fn invert(m: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rat> = r.iter().map(|&x| int(x)).collect();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or_else(|| Error::InvalidInput("singular Cartan matrix".into()))?;
        a.swap(c, p);
        let iv = Rat::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &iv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Build the root system of a finite-type Cartan matrix.
pub fn build_root_system(cartan: &[Vec<i64>]) -> Result<RootSystem> {
    let n = cartan.len();
    if n == 0 || cartan.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("Cartan matrix must be square and nonempty".into()));
    }
    for i in 0..n {
        if cartan[i][i] != 2 {
            return Err(Error::InvalidInput("Cartan diagonal must be 2".into()));
        }
        for j in 0..n {
            if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                return Err(Error::InvalidInput("invalid off-diagonal Cartan entries".into()));
            }
        }
    }
    let norms = symmetrize(cartan)?;
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
    let mut pos: Vec<Vec<i64>> = simple.clone();
    let mut seen: std::collections::HashSet<Vec<i64>> = pos.iter().cloned().collect();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = vec![];
        for r in &frontier {
            let w: Vec<i64> = (0..n).map(|j| (0..n).map(|k| r[k] * cartan[k][j]).sum()).collect();
            for i in 0..n {
                let mut c = r.clone();
                c[i] -= w[i];
                if c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0) && seen.insert(c.clone()) {
                    pos.push(c.clone());
                    next.push(c);
                    if pos.len() > ROOT_CLOSURE_BOUND {
                        return Err(Error::NotFiniteType(ROOT_CLOSURE_BOUND));
                    }
                }
            }
        }
        frontier = next;
    }
    pos.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    let bil = |c: &[i64]| -> Rat {
        let mut s = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                s += int(c[i] * c[j] * cartan[i][j]) * &norms[j] / int(2);
            }
        }
        s
    };
    let coroots = pos
        .iter()
        .map(|c| {
            let nb = bil(c);
            (0..n).map(|j| int(c[j]) * &norms[j] / &nb).collect()
        })
        .collect();
    let inv_cartan = invert(cartan)?;
    Ok(RootSystem {
        rank: n,
        cartan: cartan.to_vec(),
        labels: (1..=n).map(|i| format!("a{i}")).collect(),
        norms,
        positive: pos,
        coroots,
        inv_cartan,
    })
}

/// True when every simple-root coordinate of `λ` is strictly negative.
pub fn all_negative(coords: &[Rat]) -> bool {
    coords.iter().all(|c| c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::rat;

    #[test]
    fn counts() {
        assert_eq!(build_root_system(&[vec![2, 0], vec![0, 2]]).unwrap().positive.len(), 2);
        assert_eq!(RootSystem::f4().positive.len(), 24);
        // C3: long root α3
        let c3 = build_root_system(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]).unwrap();
        assert_eq!(c3.positive.len(), 9);
    }

    #[test]
    fn affine_cartan_is_rejected() {
        // affine A1: [[2,-2],[-2,2]] has infinitely many roots
        assert_eq!(build_root_system(&[vec![2, -2], vec![-2, 2]]).unwrap_err(), Error::NotFiniteType(ROOT_CLOSURE_BOUND));
    }

    #[test]
    fn fundamental_pairings() {
        let rs = RootSystem::f4();
        for i in 0..4 {
            for j in 0..4 {
                let mut e = vec![0; 4];
                e[j] = 1;
                let v = rs.pairing(&Weight::fundamental(4, i), &e).unwrap();
                assert_eq!(v, int(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn inverse_cartan_rows() {
        let rs = RootSystem::f4();
        assert_eq!(rs.to_simple_root_coords(&Weight::fundamental(4, 0)), vec![int(2), int(3), int(4), int(2)]);
        assert_eq!(rs.to_simple_root_coords(&Weight::fundamental(4, 3)), vec![int(1), int(2), int(3), int(2)]);
        // α_1 round trip
        assert_eq!(rs.to_simple_root_coords(&rs.simple_root_weight(0)), vec![int(1), int(0), int(0), int(0)]);
    }

    #[test]
    fn rho_parabolic() {
        let rs = RootSystem::f4();
        let (rm, rtm) = rs.rho_vectors(ParabolicIndex { i: 4 });
        assert_eq!(rm.0[3], rat(11, 2));
        assert_eq!(rm.add(&rtm), rs.rho());
        assert_eq!(rs.rho_vectors_theta(&[0, 1, 2, 3]).0, Weight::zero(4));
        assert_eq!(rs.rho_vectors_theta(&[]).0, rs.rho());
    }
}

//! Jacquet exponents checked against a brute-force oracle built only from
//! the Cartan matrix: the group is enumerated as the orbit of `ρ`, minimal
//! coset representatives are found by root positivity, and `ρ_L` is solved
//! from its defining pairings.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_rational::Rational64 as Q;

use f4_core::chars::geometric_lemma_exponents;
use f4_core::rootsys::ParabolicIndex;
use f4_core::scalars::rat::{fmt_rat, rat};
use f4_core::weyl::WeylGroup;

/// `A[i][j] = ⟨α_i, α_j^∨⟩`; row `i` is `α_i` in fundamental-weight coordinates.
const A: [[i64; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]];

fn reflect_weight(i: usize, lam: &[Q]) -> Vec<Q> {
    (0..4).map(|j| lam[j] - lam[i] * Q::from(A[i][j])).collect()
}

fn reflect_root(i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = (0..4).map(|k| beta[k] * A[k][i]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

/// `ρ_L` for the Levi with simple roots `theta`, in fundamental-weight
/// coordinates: `ρ_L = Σ c_k α_k` with `⟨ρ_L, α_j^∨⟩ = 1` for `j ∈ theta`.
fn rho_levi(theta: &[usize]) -> Vec<Q> {
    let n = theta.len();
    // augmented system rows j: Σ_k c_k A[k][j] = 1
    let mut m: Vec<Vec<Q>> =
        theta.iter().map(|&j| theta.iter().map(|&k| Q::from(A[k][j])).chain([Q::from(1)]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != Q::from(0)).expect("Levi Cartan matrix is invertible");
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    let c: Vec<Q> = m.iter().map(|row| row[n]).collect();
    (0..4).map(|j| theta.iter().zip(&c).map(|(&k, &ck)| ck * Q::from(A[k][j])).sum()).collect()
}

/// `{ w χ_{P_i, z0} : w minimal in w W_L }` by brute force.
fn oracle_exponents(i: usize, z0: Q) -> BTreeMap<Vec<Q>, usize> {
    let theta: Vec<usize> = (0..4).filter(|&j| j + 1 != i).collect();
    let rl = rho_levi(&theta);
    let chi: Vec<Q> = (0..4).map(|j| if j + 1 == i { z0 - rl[j] } else { -rl[j] }).collect();
    let simple = |j: usize| -> Vec<i64> { (0..4).map(|k| i64::from(k == j)).collect() };

    // state: (w ρ, w α_j for j ∈ θ, w χ), keyed by w ρ
    type State = (Vec<Q>, Vec<Vec<i64>>, Vec<Q>);
    let start: State = (vec![Q::from(1); 4], theta.iter().map(|&j| simple(j)).collect(), chi);
    let mut seen: HashMap<Vec<Q>, State> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if seen.contains_key(&s.0) {
            continue;
        }
        for k in 0..4 {
            let next: State =
                (reflect_weight(k, &s.0), s.1.iter().map(|b| reflect_root(k, b)).collect(), reflect_weight(k, &s.2));
            if !seen.contains_key(&next.0) {
                queue.push_back(next);
            }
        }
        seen.insert(s.0.clone(), s);
    }
    assert_eq!(seen.len(), 1152);
    let mut out = BTreeMap::new();
    for (_, images, chi_w) in seen.into_values() {
        if images.iter().all(|b| b.iter().all(|&c| c >= 0)) {
            *out.entry(chi_w).or_insert(0) += 1;
        }
    }
    out
}

fn library_exponents(g: &WeylGroup, i: usize, z0: Q) -> BTreeMap<Vec<String>, usize> {
    let m = geometric_lemma_exponents(g, ParabolicIndex { i }, &rat(*z0.numer(), *z0.denom()));
    m.0.iter().map(|(w, &n)| (w.0.iter().map(fmt_rat).collect(), n)).collect()
}

fn render(q: &Q) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[test]
fn jacquet_exponents_match_the_brute_force_oracle() {
    let g = WeylGroup::f4();
    let points = [(1, Q::from(1)), (2, Q::new(5, 2)), (3, Q::new(1, 2)), (4, Q::new(5, 2)), (2, Q::new(-7, 3)), (3, Q::from(4))];
    for (i, z0) in points {
        let oracle: BTreeMap<Vec<String>, usize> =
            oracle_exponents(i, z0).into_iter().map(|(w, n)| (w.iter().map(render).collect(), n)).collect();
        assert_eq!(library_exponents(&g, i, z0), oracle, "P{i} at z0 = {z0}");
    }
}

#[test]
fn frozen_jacquet_counts_at_the_reducibility_points() {
    // (distinct exponents, total multiplicity), from the oracle above
    let expected = [(1, Q::from(1), 17, 24), (4, Q::new(5, 2), 21, 24)];
    for (i, z0, distinct, total) in expected {
        let m = oracle_exponents(i, z0);
        assert_eq!((m.len(), m.values().sum::<usize>()), (distinct, total), "P{i}");
    }
}

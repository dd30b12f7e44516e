//! Exponent calculus: inducing characters `χ_{P,z}`, Geometric-Lemma
//! exponent multisets, square-integrability, anti-dominant
//! representatives and equivalence classes of `W(P, G)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{all_negative, ParabolicIndex, Weight};
use crate::scalars::rat::{fmt_rat, to_i64, Rat};
use crate::weyl::{EltId, WeylGroup};

/// `base + z · slope`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeight {
    pub base: Weight,
    pub slope: Weight,
}

impl AffineWeight {
    pub fn eval(&self, z: &Rat) -> Weight {
        self.base.add(&self.slope.scale(z))
    }

    /// Transform by a group element.
    pub fn act(&self, g: &WeylGroup, x: EltId) -> AffineWeight {
        AffineWeight { base: g.act(x, &self.base), slope: g.act(x, &self.slope) }
    }

    /// The affine form `⟨base + z·slope, α̌_j⟩ = a z + b` as `(a, b)`.
    pub fn simple_form(&self, j: usize) -> (Rat, Rat) {
        (self.slope.0[j].clone(), self.base.0[j].clone())
    }
}

/// `χ_{P_i,z} = z ϖ_i − ρ_T^{M_i}`.
pub fn inducing_character(g: &WeylGroup, p: ParabolicIndex) -> AffineWeight {
    let rs = &g.rs;
    let (_, rho_tm) = rs.rho_vectors(p);
    AffineWeight { base: rho_tm.neg(), slope: Weight::fundamental(rs.rank, p.idx()) }
}

/// Exponents with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExponentMultiset(pub BTreeMap<Weight, usize>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentRow {
    pub exp: Vec<String>,
    pub mult: usize,
}

impl ExponentMultiset {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn mult(&self, w: &Weight) -> usize {
        self.0.get(w).copied().unwrap_or(0)
    }

    /// Sorted rows `{exp, mult}` (coordinates rendered as rationals).
    pub fn rows(&self) -> Vec<ExponentRow> {
        self.0.iter().map(|(w, &m)| ExponentRow { exp: w.0.iter().map(fmt_rat).collect(), mult: m }).collect()
    }
}

/// `{ w·χ_{P,z0} : w ∈ W(P,G) }` with multiplicities.
pub fn geometric_lemma_exponents(g: &WeylGroup, p: ParabolicIndex, z0: &Rat) -> ExponentMultiset {
    let chi = inducing_character(g, p).eval(z0);
    let mut m = BTreeMap::new();
    for x in g.parabolic_reps(p) {
        *m.entry(g.act(x, &chi)).or_insert(0) += 1;
    }
    ExponentMultiset(m)
}

/// Orbit multiset of `λ` under the full group (each element counted).
pub fn orbit_multiset(g: &WeylGroup, lam: &Weight) -> ExponentMultiset {
    let mut m = BTreeMap::new();
    for x in 0..g.size() {
        *m.entry(g.act(x, lam)).or_insert(0) += 1;
    }
    ExponentMultiset(m)
}

/// Strictly negative simple-root coordinates.
pub fn square_integrable(g: &WeylGroup, lam: &Weight) -> bool {
    all_negative(&g.rs.to_simple_root_coords(lam))
}

/// The anti-dominant element of the orbit of `λ` and a shortest `w`
/// with `w·λ` equal to it (ties broken by canonical word).
pub fn antidominant_rep(g: &WeylGroup, lam: &Weight) -> (Weight, EltId) {
    let mut cur = lam.clone();
    loop {
        let Some(j) = (0..g.rank()).find(|&j| cur.0[j] > Rat::from_integer(0.into())) else { break };
        cur = g.act(g.from_word(&[j]).unwrap(), &cur);
    }
    let best = (0..g.size())
        .filter(|&x| g.act(x, lam) == cur)
        .min_by(|&a, &b| (g.length(a), g.word(a)).cmp(&(g.length(b), g.word(b))))
        .unwrap();
    (cur, best)
}

/// Members of `W(P, G)` sharing `u·χ_{P,z0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivClass {
    pub z0: Rat,
    pub exponent: Weight,
    /// Sorted by length then canonical word; the first is the shortest.
    pub members: Vec<EltId>,
    /// True when the minimal length is attained by a single member.
    pub shortest_unique: bool,
}

impl EquivClass {
    pub fn shortest(&self) -> EltId {
        self.members[0]
    }
}

/// Partition `W(P, G)` by the evaluated exponent.
pub fn equivalence_classes(g: &WeylGroup, p: ParabolicIndex, z0: &Rat) -> Vec<EquivClass> {
    let chi = inducing_character(g, p).eval(z0);
    let mut by: BTreeMap<Weight, Vec<EltId>> = BTreeMap::new();
    for x in g.parabolic_reps(p) {
        by.entry(g.act(x, &chi)).or_default().push(x);
    }
    let mut out: Vec<EquivClass> = by
        .into_iter()
        .map(|(exponent, mut members)| {
            members.sort_by(|&a, &b| (g.length(a), g.word(a)).cmp(&(g.length(b), g.word(b))));
            let shortest_unique = members.len() == 1 || g.length(members[0]) < g.length(members[1]);
            EquivClass { z0: z0.clone(), exponent, members, shortest_unique }
        })
        .collect();
    out.sort_by(|a, b| (g.length(a.members[0]), g.word(a.members[0])).cmp(&(g.length(b.members[0]), g.word(b.members[0]))));
    out
}

/// The class containing a given weight.
pub fn class_of(classes: &[EquivClass], lam: &Weight) -> Result<EquivClass> {
    classes
        .iter()
        .find(|c| c.exponent == *lam)
        .cloned()
        .ok_or_else(|| Error::InvalidInput(format!("no class with exponent {lam}")))
}

/// Integer check used wherever exponents must be integral.
pub fn integral_coords(w: &Weight) -> Option<Vec<i64>> {
    w.0.iter().map(to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::{int, rat};

    #[test]
    fn inducing_characters() {
        let g = WeylGroup::f4();
        let chi4 = inducing_character(&g, ParabolicIndex { i: 4 });
        assert_eq!(chi4.eval(&rat(5, 2)), Weight::from_ints(&[-1, -1, -1, 7]));
        let chi1 = inducing_character(&g, ParabolicIndex { i: 1 });
        assert_eq!(chi1.eval(&int(1)), Weight::from_ints(&[4, -1, -1, -1]));
        let chi3 = inducing_character(&g, ParabolicIndex { i: 3 });
        assert_eq!(chi3.eval(&rat(1, 2)), Weight::from_ints(&[-1, -1, 3, -1]));
    }

    #[test]
    fn antidominant() {
        let g = WeylGroup::f4();
        let lam = Weight::from_ints(&[-1, 0, -1, -1]);
        assert_eq!(antidominant_rep(&g, &lam), (lam.clone(), 0));
        let chi = inducing_character(&g, ParabolicIndex { i: 4 }).eval(&rat(5, 2));
        let (ad, w) = antidominant_rep(&g, &chi);
        assert_eq!(ad, lam);
        assert_eq!(g.act(w, &chi), lam);
    }

    #[test]
    fn square_integrability() {
        let g = WeylGroup::f4();
        assert!(square_integrable(&g, &g.rs.rho().neg()));
        assert!(!square_integrable(&g, &Weight::fundamental(4, 0)));
        assert!(square_integrable(&g, &Weight::from_ints(&[-1, -1, -1, 2])));
    }
}

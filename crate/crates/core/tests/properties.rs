//! Property tests: algebraic identities that must hold for every input,
//! checked on random samples against independent brute-force oracles.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use f4_core::chars::geometric_lemma_exponents;
use f4_core::rootsys::{ParabolicIndex, Weight};
use f4_core::scalars::laurent::LaurentU;
use f4_core::scalars::linalg::det_interpolate;
use f4_core::scalars::poly1::Poly1;
use f4_core::scalars::poly2::{Poly2, RatFunc2};
use f4_core::scalars::rat::{int, rat, Rat};
use f4_core::verify::{braid_invariance, functional_equation, q_uniformity, spherical_eigenvalue};
use f4_core::weyl::WeylGroup;

fn f4() -> &'static WeylGroup {
    use std::sync::OnceLock;
    static G: OnceLock<WeylGroup> = OnceLock::new();
    G.get_or_init(WeylGroup::f4)
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<Poly1>]) -> Poly1 {
    if m.is_empty() {
        return Poly1::constant(Rat::one());
    }
    let mut acc = Poly1::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<Poly1>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect()).collect();
        let term = m[0][j].mul(&cofactor_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn poly1() -> impl Strategy<Value = Poly1> {
    prop::collection::vec(-4i64..=4, 1..=3).prop_map(|c| Poly1::from_ints(&c))
}

fn poly2() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((-3i64..=3, 0u32..=2, -1i32..=2), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(Poly2::zero(), |acc, (c, dq, dt)| acc.add(&Poly2::monomial(int(c), dq, dt)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det_interpolate_matches_cofactor_expansion(
        entries in prop::collection::vec(poly1(), 9),
    ) {
        let m: Vec<Vec<Poly1>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        prop_assert_eq!(det_interpolate(&m, 2), cofactor_det(&m));
    }

    #[test]
    fn ratfunc2_evaluation_is_a_ring_map(
        a in poly2(), b in poly2(), c in poly2().prop_filter("nonzero", |p| !p.is_zero()),
        q in 2i64..=7, t in prop_oneof![Just(rat(1, 2)), Just(int(2)), Just(int(3)), Just(rat(-5, 3))],
    ) {
        let q = int(q);
        let fa = RatFunc2::new(a.clone(), c.clone());
        let fb = RatFunc2::from_poly(b.clone());
        let dc = c.eval(&q, &t);
        prop_assume!(!dc.is_zero());
        let (ea, eb) = (a.eval(&q, &t) / &dc, b.eval(&q, &t));
        prop_assert_eq!(fa.add(&fb).eval(&q, &t), Some(&ea + &eb));
        prop_assert_eq!(fa.mul(&fb).eval(&q, &t), Some(&ea * &eb));
        prop_assert_eq!(fa.sub(&fa).eval(&q, &t), Some(Rat::zero()));
    }

    #[test]
    fn laurent_binomials_multiply(a in -6i64..=6, b in -6i64..=6, prec in 1i32..=6) {
        let x = LaurentU::<RatFunc2>::binomial(a, prec);
        let y = LaurentU::<RatFunc2>::binomial(b, prec);
        prop_assert_eq!(x.mul(&y), LaurentU::binomial(a + b, prec));
    }

    #[test]
    fn laurent_inverse(cs in prop::collection::vec(-5i64..=5, 1..=5), start in -3i32..=2) {
        prop_assume!(cs[0] != 0);
        let coeffs: Vec<RatFunc2> = cs.iter().map(|&c| RatFunc2::constant(int(c))).collect();
        let prec = start + cs.len() as i32;
        let x = LaurentU::new(start, coeffs, prec);
        let one = x.mul(&x.inv().expect("invertible leading coefficient"));
        prop_assert_eq!(one.valuation(), 0);
        for k in 0..one.precision() {
            let expected = if k == 0 { RatFunc2::one() } else { RatFunc2::zero() };
            prop_assert_eq!(one.coeff(k), expected);
        }
    }

    #[test]
    fn weyl_action_preserves_pairings(
        x in 0usize..1152, lam in prop::collection::vec(-5i64..=5, 4), beta in 0usize..24,
    ) {
        let g = f4();
        let rs = &g.rs;
        let lam = Weight::from_ints(&lam);
        let root = &rs.positive[beta];
        let before = rs.pairing(&lam, root).unwrap();
        // the image of a positive root may be negative; pair with its positive
        let image = g.act_on_root(x, root);
        let (positive, sign) = if image.iter().all(|&c| c <= 0) {
            (image.iter().map(|c| -c).collect::<Vec<_>>(), -1)
        } else {
            (image, 1)
        };
        let after = rs.pairing(&g.act(x, &lam), &positive).unwrap() * int(sign);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn words_round_trip(x in 0usize..1152, y in 0usize..1152) {
        let g = f4();
        prop_assert_eq!(g.from_word(g.word(x)).unwrap(), x);
        prop_assert_eq!(g.word(x).len(), g.length(x));
        prop_assert_eq!(g.mul(x, g.inverse(x)), g.identity());
        prop_assert_eq!(g.length(g.mul(x, y)) % 2, (g.length(x) + g.length(y)) % 2);
    }

    #[test]
    fn jacquet_mass_is_the_coset_count(i in 1usize..=4, num in -12i64..=12, den in 1i64..=2) {
        let g = f4();
        let p = ParabolicIndex { i };
        let m = geometric_lemma_exponents(g, p, &rat(num, den));
        prop_assert_eq!(m.total(), g.parabolic_reps(p).len());
    }
}

#[test]
fn braid_moves_leave_operators_unchanged() {
    let mut rng = StdRng::seed_from_u64(11);
    assert_eq!(braid_invariance(f4(), &mut rng, 10).unwrap(), 10);
}

#[test]
fn intertwining_functional_equation() {
    let mut rng = StdRng::seed_from_u64(12);
    assert_eq!(functional_equation(f4(), &mut rng, 40).unwrap(), 40);
}

#[test]
fn spherical_vector_is_an_eigenvector() {
    let mut rng = StdRng::seed_from_u64(13);
    assert_eq!(spherical_eigenvalue(f4(), &mut rng, 5).unwrap(), 5);
}

#[test]
fn image_ranks_are_uniform_in_q() {
    assert!(q_uniformity(f4(), &[4], &[2, 3]).unwrap() > 0);
}

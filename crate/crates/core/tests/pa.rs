mod common;

use common::*;
use postlie::catalog;
use postlie::linalg::vector;
use postlie::pa::{check_cpa, check_lr, check_prelie, lr_from_pa, pa_from_lr};
use postlie::{BilinearProduct, Identity, LieAlgebra, PaPair, Scalar};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<Scalar> {
    (0..d).map(|_| small_rational(rng)).collect()
}

/// A catalog structure with a few tensor entries shifted; usually no longer
/// post-Lie.
fn perturbed(rng: &mut ChaCha8Rng, pair: &PaPair) -> PaPair {
    let d = pair.dim();
    let mut t = pair.product().tensor().to_vec();
    for _ in 0..rng.gen_range(1..=2) {
        let k = rng.gen_range(0..t.len());
        t[k] = &t[k] + &small_rational(rng);
    }
    pair.with_product(BilinearProduct::new(q(), d, t).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn element_and_operator_axioms_agree(seed in any::<u64>(), family in 1usize..=6, perturb in any::<bool>()) {
        let mut rng = rng(seed);
        let (_, pair) = random_family_member(&mut rng, family);
        let pair = if perturb { perturbed(&mut rng, &pair) } else { pair };
        let elem = pair.check_pa();
        let op = pair.check_operator_axioms();
        prop_assert_eq!(elem.is_ok(), op.is_ok());
        if !perturb {
            prop_assert!(elem.is_ok());
        }
    }

    #[test]
    fn left_multiplication_is_a_representation(seed in any::<u64>(), family in 1usize..=6) {
        let mut rng = rng(seed);
        let (_, pair) = random_family_member(&mut rng, family);
        let x = random_vector(&mut rng, 3);
        let y = random_vector(&mut rng, 3);
        let gxy = pair.g().bracket(&x, &y).unwrap();
        prop_assert_eq!(pair.left_op(&gxy), pair.left_op(&x).commutator(&pair.left_op(&y)));
        prop_assert!(pair.n().is_derivation(&pair.left_op(&x)));
    }

    #[test]
    fn annihilators(seed in any::<u64>(), family in 1usize..=6) {
        let mut rng = rng(seed);
        let (_, pair) = random_family_member(&mut rng, family);
        prop_assert_eq!(pair.ann_right(), pair.h0());
        let ann_l = pair.ann_left();
        for v in ann_l.basis() {
            prop_assert!(pair.left_op(&v).is_zero());
            for i in 0..3 {
                let w = pair.g().bracket(&vector::unit(q(), 3, i), &v).unwrap();
                prop_assert!(ann_l.contains(&w), "Ann_L is not an ideal of g");
            }
        }
        for v in pair.h0().basis() {
            prop_assert!(pair.right_op(&v).is_zero());
        }
    }

    #[test]
    fn cross_identities_follow_from_the_axioms(seed in any::<u64>(), family in 1usize..=6) {
        let mut rng = rng(seed);
        let (_, pair) = random_family_member(&mut rng, family);
        prop_assert!(pair.cross_identities().is_ok());
    }

    #[test]
    fn engel_chain_matches_individual_operators(seed in any::<u64>(), lambda in prop::sample::select(vec![1i64, 2, -1, 3])) {
        let mut rng = rng(seed);
        let family = rng.gen_range(1..=6);
        let (_, heis) = random_family_member(&mut rng, family);
        let x = random_vector(&mut rng, 3);
        prop_assert!(heis.all_left_mults_nilpotent());
        prop_assert!(heis.left_op(&x).is_nilpotent().unwrap());
        let ex36 = catalog::ex3_6(q(), q().from_i64(lambda), small_rational(&mut rng), small_rational(&mut rng), small_rational(&mut rng)).unwrap();
        prop_assert!(!ex36.all_left_mults_nilpotent());
        prop_assert!(!ex36.product().left_basis(0).is_nilpotent().unwrap());
    }

    #[test]
    fn lr_half_bracket_on_heisenberg(m in 1usize..=3, scale in -3i64..=3) {
        let n = LieAlgebra::heisenberg(q(), m);
        let pair = catalog::half_bracket_pair(&n);
        prop_assert!(check_lr(&n, pair.product()).unwrap().is_ok());
        prop_assert_eq!(&pa_from_lr(&lr_from_pa(pair.product())), pair.product());
        // Other multiples of the bracket violate the skew axiom.
        if scale != 0 {
            let s = q().from_ratio(scale, 2).unwrap();
            let other = BilinearProduct::scaled_bracket(&n, &s);
            prop_assert_eq!(check_lr(&n, &other).unwrap().is_ok(), scale == -1);
        }
    }
}

#[test]
fn cpa_requires_commutativity() {
    let h = catalog::heis3(q());
    let zero = BilinearProduct::zero(q(), 3);
    assert!(check_cpa(&h, &zero).unwrap().is_ok());
    let half = BilinearProduct::scaled_bracket(&h, &q().one().half());
    let v = check_cpa(&h, &half).unwrap();
    assert!(v.fails(Identity::Commutativity));
}

#[test]
fn prelie_left_multiplication_by_half_bracket() {
    // x·y = ½[x,y] is pre-Lie on any two-step nilpotent algebra.
    for m in 1..=2 {
        let g = LieAlgebra::heisenberg(q(), m);
        let prod = BilinearProduct::scaled_bracket(&g, &q().one().half());
        assert!(check_prelie(&g, &prod).unwrap().is_ok());
        let wrong = BilinearProduct::scaled_bracket(&g, &q().one());
        assert!(!check_prelie(&g, &wrong).unwrap().is_ok());
    }
}

#[test]
fn lr_sign_conversion_is_an_involution() {
    let a4 = catalog::lr_a4(q());
    assert_eq!(pa_from_lr(&lr_from_pa(a4.product())), *a4.product());
    assert!(check_lr(a4.n(), a4.product()).unwrap().is_ok());
    // The LR-side product itself is not a post-Lie product on (abelian, n).
    assert!(!check_lr(a4.n(), &lr_from_pa(a4.product())).unwrap().is_ok());
}

#[test]
fn witnesses_point_at_the_failing_triple() {
    // ex2.5 shape with β = 1, α = γ = 1: L(e1), L(e2) fail to commute.
    let pair = catalog::ex2_5_unchecked(q(), q().one(), q().one(), q().one());
    let v = pair.check_pa();
    assert!(v.fails(Identity::Representation));
    assert!(!v.fails(Identity::Skew));
    assert!(!v.fails(Identity::Derivation));
    let w = &v.witnesses()[0];
    assert_eq!(w.identity, Identity::Representation);
    assert!(!vector::is_zero(&w.residual()));
}

#[test]
fn dimension_mismatch_is_an_error() {
    let r = PaPair::new(catalog::heis3(q()), catalog::r2(q()), BilinearProduct::zero(q(), 3));
    assert!(r.is_err());
    assert!(BilinearProduct::new(q(), 2, vec![q().zero(); 7]).is_err());
}

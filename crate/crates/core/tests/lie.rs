mod common;

use common::q;
use postlie::catalog;
use postlie::lie::NilpotencyClass;
use postlie::linalg::vector;
use postlie::{LieAlgebra, LieError, Matrix, Scalar, Subspace};
use proptest::prelude::*;

/// `a` generators and `b` central elements, with `[e_i, e_j]` a random
/// combination of the central ones. Every such bracket satisfies Jacobi.
fn two_step(a: usize, b: usize) -> impl Strategy<Value = LieAlgebra> {
    let pairs = a * (a - 1) / 2;
    prop::collection::vec(prop::collection::vec(-2i64..=2, b), pairs).prop_map(move |coeffs| {
        let dim = a + b;
        let mut brackets = Vec::new();
        let mut it = coeffs.into_iter();
        for i in 0..a {
            for j in i + 1..a {
                let c = it.next().unwrap();
                let mut v = vec![q().zero(); dim];
                for (k, x) in c.into_iter().enumerate() {
                    v[a + k] = q().from_i64(x);
                }
                brackets.push((i, j, v));
            }
        }
        LieAlgebra::from_brackets(q(), dim, &brackets).unwrap()
    })
}

fn vector_of(dim: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-3i64..=3, dim).prop_map(|v| v.into_iter().map(|x| q().from_i64(x)).collect())
}

fn flattened(ms: &[Matrix]) -> Subspace {
    let n = ms.first().map_or(0, |m| m.rows());
    Subspace::span(q(), n * n, &ms.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>())
}

/// Algebras with known invariants, not only two-step ones.
fn zoo() -> Vec<(&'static str, LieAlgebra)> {
    let filiform = |n: usize| {
        let e: Vec<_> = (1..n - 1).map(|i| (0, i, i + 1, 1)).collect();
        LieAlgebra::from_int_brackets(q(), n, &e).unwrap()
    };
    vec![
        ("heis3", catalog::heis3(q())),
        ("heis5", LieAlgebra::heisenberg(q(), 2)),
        ("r2", catalog::r2(q())),
        ("r3,2", catalog::r3_lambda(q(), q().from_i64(2)).unwrap()),
        ("filiform4", filiform(4)),
        ("filiform5", filiform(5)),
        ("abelian3", LieAlgebra::abelian(q(), 3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_step_algebras_have_class_at_most_two(alg in two_step(4, 2)) {
        prop_assert!(alg.is_at_most_two_step());
        prop_assert!(alg.derived_algebra().is_subspace_of(&alg.center()));
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(alg in two_step(3, 2), x in vector_of(5), y in vector_of(5), z in vector_of(5)) {
        let b = |u: &[Scalar], v: &[Scalar]| alg.bracket(u, v).unwrap();
        prop_assert_eq!(b(&x, &y), vector::neg(&b(&y, &x)));
        let jac = vector::add(&vector::add(&b(&x, &b(&y, &z)), &b(&y, &b(&z, &x))), &b(&z, &b(&x, &y)));
        prop_assert!(vector::is_zero(&jac));
    }

    #[test]
    fn inner_derivations_are_derivations(alg in two_step(3, 2), x in vector_of(5)) {
        let ad = alg.adjoint(&x).unwrap();
        prop_assert!(alg.is_derivation(&ad));
        let der = flattened(&alg.derivation_basis());
        prop_assert!(der.contains(ad.entries()));
    }

    #[test]
    fn derivations_close_under_commutator(alg in two_step(3, 1)) {
        let basis = alg.derivation_basis();
        for d in &basis {
            prop_assert!(alg.is_derivation(d));
        }
        for (i, d1) in basis.iter().enumerate().step_by(3) {
            for d2 in basis.iter().skip(i + 1).step_by(4) {
                prop_assert!(alg.is_derivation(&d1.commutator(d2)));
            }
        }
    }

    #[test]
    fn adjoint_is_a_representation(alg in two_step(4, 2), x in vector_of(6), y in vector_of(6)) {
        let lhs = alg.adjoint(&alg.bracket(&x, &y).unwrap()).unwrap();
        let rhs = alg.adjoint(&x).unwrap().commutator(&alg.adjoint(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn known_invariants() {
    let expect: &[(&str, NilpotencyClass, bool, usize)] = &[
        ("heis3", NilpotencyClass::Nilpotent(2), true, 1),
        ("heis5", NilpotencyClass::Nilpotent(2), true, 1),
        ("r2", NilpotencyClass::NotNilpotent, true, 0),
        ("r3,2", NilpotencyClass::NotNilpotent, true, 0),
        ("filiform4", NilpotencyClass::Nilpotent(3), true, 1),
        ("filiform5", NilpotencyClass::Nilpotent(4), true, 1),
        ("abelian3", NilpotencyClass::Nilpotent(1), true, 3),
    ];
    for ((name, alg), (ename, class, solvable, center)) in zoo().iter().zip(expect) {
        assert_eq!(name, ename);
        assert_eq!(alg.nilpotency_class(), *class, "{name}");
        assert_eq!(alg.is_solvable(), *solvable, "{name}");
        assert_eq!(alg.center().dim(), *center, "{name}");
    }
}

#[test]
fn heisenberg_recognition() {
    for m in 1..=3 {
        let h = LieAlgebra::heisenberg(q(), m);
        assert!(h.is_heisenberg());
        assert!(h.is_stem());
        assert_eq!(h.derived_algebra(), h.center());
    }
    for (name, alg) in zoo() {
        assert_eq!(alg.is_heisenberg(), name.starts_with("heis"), "{name}");
    }
}

#[test]
fn derivation_algebra_dimensions() {
    assert_eq!(catalog::heis3(q()).derivation_basis().len(), 6);
    assert_eq!(LieAlgebra::abelian(q(), 3).derivation_basis().len(), 9);
    assert_eq!(catalog::r2(q()).derivation_basis().len(), 2);
    // heis5: sp(4) ⊕ scalars on the generators plus 4 maps into the center.
    assert_eq!(LieAlgebra::heisenberg(q(), 2).derivation_basis().len(), 15);
}

#[test]
fn r3_lambda_series() {
    let r3 = catalog::r3_lambda(q(), q().one()).unwrap();
    let lcs = r3.lower_central_series();
    assert_eq!(lcs.len(), 2);
    assert_eq!(lcs[1].dim(), 2);
    assert!(r3.derived_series().last().unwrap().is_zero());
}

#[test]
fn malformed_tensors_are_rejected() {
    let f = q();
    // [e1,e2] = e3 and [e2,e3] = e1, [e3,e1] = e3 breaks Jacobi.
    let err = LieAlgebra::from_int_brackets(f, 3, &[(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 2, -1)]).unwrap_err();
    assert!(matches!(err, LieError::Jacobi { .. }), "{err}");
    let mut c = vec![f.zero(); 8];
    // c[0][1][0] = 1 with c[1][0][0] left at 0
    c[2] = f.one();
    let err = LieAlgebra::try_new(f, 2, c).unwrap_err();
    assert!(matches!(err, LieError::NotAntisymmetric { .. }), "{err}");
    let err = LieAlgebra::try_new(f, 2, vec![f.zero(); 7]).unwrap_err();
    assert!(matches!(err, LieError::TensorLength { .. }));
}

use postlie::linalg::vector;
use postlie::{Field, Matrix, Scalar, Subspace};
use proptest::prelude::*;

fn q() -> Field {
    Field::Rational
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=9).prop_map(|(a, b)| q().from_ratio(a, b).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    // Small entries with many zeros so that rank deficiency actually shows up.
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], rows * cols).prop_map(move |v| {
        let rows_v: Vec<Vec<Scalar>> = v
            .chunks(cols)
            .map(|r| r.iter().map(|&x| q().from_i64(x)).collect())
            .collect();
        Matrix::from_rows(q(), rows_v).unwrap()
    })
}

fn vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(prop_oneof![Just(0i64), -2i64..=2], n), 0..=count).prop_map(|vs| {
        vs.into_iter()
            .map(|v| v.into_iter().map(|x| q().from_i64(x)).collect())
            .collect()
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix(4, 5)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn rank_nullity(m in matrix(4, 6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn kernel_vectors_are_killed(m in matrix(3, 5)) {
        for v in m.kernel().basis() {
            prop_assert!(vector::is_zero(&m.apply(&v)));
        }
    }

    #[test]
    fn rank_of_transpose(m in matrix(3, 5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn product_is_associative(a in matrix(3, 3), b in matrix(3, 3), c in matrix(3, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn trace_of_commutator_vanishes(a in matrix(4, 4), b in matrix(4, 4)) {
        prop_assert!(a.commutator(&b).trace().unwrap().is_zero());
    }

    #[test]
    fn strictly_upper_triangular_is_nilpotent(m in matrix(4, 4)) {
        let mut u = m.clone();
        for r in 0..4 {
            for c in 0..=r {
                u.set(r, c, q().zero());
            }
        }
        prop_assert!(u.is_nilpotent().unwrap());
        let mut shifted = u.clone();
        shifted.set(0, 0, q().one());
        prop_assert!(!shifted.is_nilpotent().unwrap());
    }

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, q().zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), q().one());
        }
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![3u32, 5, 7, 11, 13, 101]), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = Field::prime(p).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        match a.inv() {
            Some(inv) => prop_assert_eq!(&a * &inv, f.one()),
            None => prop_assert!(a.is_zero()),
        }
        prop_assert_eq!(&f.from_i64(i64::from(p)), &f.zero());
    }

    #[test]
    fn parse_round_trips(a in rational()) {
        prop_assert_eq!(q().parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn subspace_dimension_formula(u in vectors(5, 4), w in vectors(5, 4)) {
        let u = Subspace::span(q(), 5, &u);
        let w = Subspace::span(q(), 5, &w);
        let sum = u.sum(&w);
        let meet = u.intersection(&w);
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
    }

    #[test]
    fn annihilator_dimension(u in vectors(5, 4)) {
        let u = Subspace::span(q(), 5, &u);
        let ann = u.annihilator();
        prop_assert_eq!(u.dim() + ann.dim(), 5);
        prop_assert_eq!(ann.annihilator(), u);
    }
}

#[test]
fn division_by_zero_is_rejected() {
    assert!(q().from_ratio(1, 0).is_err());
    assert!(q().zero().inv().is_none());
    assert!(Field::prime(4).is_err());
    assert!(Field::prime(2).is_err());
}

#[test]
fn fp_from_ratio_reduces() {
    let f = Field::prime(7).unwrap();
    // 1/2 = 4 mod 7
    assert_eq!(f.from_ratio(1, 2).unwrap(), f.from_i64(4));
    assert_eq!(f.parse("3/5").unwrap(), &f.from_i64(3) * &f.from_i64(5).inv().unwrap());
}

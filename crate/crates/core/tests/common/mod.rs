#![allow(dead_code)]

use postlie::catalog::{self, CatalogError};
use postlie::{BilinearProduct, Field, LieAlgebra, PaPair, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q() -> Field {
    Field::Rational
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a/b` with `a, b ∈ [−9, 9]`, `b ≠ 0`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let a = rng.gen_range(-9..=9);
    let mut b = 0;
    while b == 0 {
        b = rng.gen_range(-9..=9);
    }
    q().from_ratio(a, b).unwrap()
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = small_rational(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A `pa52.*` family member with random admissible parameters, together
/// with the parameters. Constraint violations are redrawn.
pub fn random_family_member(rng: &mut ChaCha8Rng, family: usize) -> (Vec<Scalar>, PaPair) {
    let name = catalog::PA52_FAMILIES[family - 1];
    let arity = catalog::entry(name).unwrap().params.len();
    loop {
        // Zero has decent odds so that degenerate branches get exercised.
        let params: Vec<Scalar> = (0..arity)
            .map(|_| {
                if rng.gen_bool(0.15) {
                    q().zero()
                } else {
                    small_rational(rng)
                }
            })
            .collect();
        match catalog::pa52_from_vec(family, q(), &params) {
            Ok(pair) => return (params, pair),
            Err(CatalogError::ConstraintViolation { .. }) => continue,
            Err(e) => panic!("{name}: {e}"),
        }
    }
}

/// `(α, β, γ)` with `β(β+1) = αγ`, covering the branches where `β ∈ {0, −1}`.
pub fn ex25_admissible(rng: &mut ChaCha8Rng) -> (Scalar, Scalar, Scalar) {
    let one = q().one();
    let beta = match rng.gen_range(0..4) {
        0 => q().zero(),
        1 => -one.clone(),
        _ => small_rational(rng),
    };
    let prod = &beta * &(&beta + &one);
    if prod.is_zero() {
        let x = small_rational(rng);
        if rng.gen_bool(0.5) {
            (q().zero(), beta, x)
        } else {
            (x, beta, q().zero())
        }
    } else {
        let alpha = nonzero_rational(rng);
        let gamma = &prod / &alpha;
        (alpha, beta, gamma)
    }
}

pub fn ex25_violating(rng: &mut ChaCha8Rng) -> (Scalar, Scalar, Scalar) {
    let one = q().one();
    loop {
        let (a, b, c) = (small_rational(rng), small_rational(rng), small_rational(rng));
        if &b * &(&b + &one) != &a * &c {
            return (a, b, c);
        }
    }
}

/// `x·y = −½{x,y} + φ(x,y) e5` on `(abelian, heis5)` with a random symmetric
/// form `φ`, optionally with `φ(·, e5) = 0`. Not necessarily post-Lie.
pub fn heis5_lr_candidate(rng: &mut ChaCha8Rng, kill_center: bool) -> BilinearProduct {
    let heis5 = LieAlgebra::heisenberg(q(), 2);
    let d = 5;
    let half = catalog::half_bracket_pair(&heis5);
    let mut t = half.product().tensor().to_vec();
    for i in 0..d {
        for j in i..d {
            if kill_center && (i == 4 || j == 4) {
                continue;
            }
            if rng.gen_bool(0.5) {
                let s = small_rational(rng);
                t[(i * d + j) * d + 4] = &t[(i * d + j) * d + 4] + &s;
                if i != j {
                    t[(j * d + i) * d + 4] = &t[(j * d + i) * d + 4] + &s;
                }
            }
        }
    }
    BilinearProduct::new(q(), d, t).unwrap()
}

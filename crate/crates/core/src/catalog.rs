//! Named, parameterized Lie algebras and product pairs.
//!
//! Every builder validates its parameter constraints before constructing
//! anything; a violated constraint is reported by its predicate.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{vector, Field, LinalgError, Matrix, Scalar};
use crate::pa::{BilinearProduct, PaError, PaPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("{entry}: missing parameter {param:?}")]
    MissingParameter { entry: String, param: String },
    #[error("{entry}: unknown parameter {param:?}")]
    UnknownParameter { entry: String, param: String },
    #[error("{entry}: constraint violated: {predicate}")]
    ConstraintViolation { entry: String, predicate: String },
    #[error("{entry}: bad value for {param}: {source}")]
    BadValue {
        entry: String,
        param: String,
        source: LinalgError,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Pa(#[from] PaError),
}

fn violation(entry: &str, predicate: &str) -> CatalogError {
    CatalogError::ConstraintViolation {
        entry: entry.to_string(),
        predicate: predicate.to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Algebra,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryInfo {
    pub name: &'static str,
    pub kind: EntryKind,
    pub params: &'static [&'static str],
    pub constraints: &'static [&'static str],
    pub description: &'static str,
}

const ENTRIES: &[EntryInfo] = &[
    EntryInfo {
        name: "ex2.5",
        kind: EntryKind::Pair,
        params: &["alpha", "beta", "gamma"],
        constraints: &["beta*(beta+1) - alpha*gamma = 0"],
        description: "abelian K^2 with {e1,e2}=e1: e1.e1=alpha e1, e1.e2=beta e1, e2.e1=(beta+1) e1, e2.e2=gamma e1",
    },
    EntryInfo {
        name: "ex3.6",
        kind: EntryKind::Pair,
        params: &["lambda", "alpha", "beta", "gamma"],
        constraints: &["lambda != 0"],
        description:
            "solvable r_{3,lambda} ([e1,e2]=e2, [e1,e3]=lambda e3) with Heisenberg n; L(e1) has trace 2 lambda",
    },
    EntryInfo {
        name: "ex4.5",
        kind: EntryKind::Pair,
        params: &[],
        constraints: &[],
        description: "pair of 5-dimensional Heisenberg algebras whose structure fails [L(x)+R(x), ad(y)] = ad(x.y+y.x)",
    },
    EntryInfo {
        name: "ex4.7",
        kind: EntryKind::Pair,
        params: &[],
        constraints: &[],
        description: "pair of 3-dimensional Heisenberg algebras whose structure fails [ad(x),Ad(y)] = Ad([x,y])",
    },
    EntryInfo {
        name: "heis.typeA",
        kind: EntryKind::Algebra,
        params: &["r1", "r2", "r3"],
        constraints: &["r3 != 0"],
        description: "Heisenberg bracket r = (r1, r2, r3, -r1 r2/r3, -r2^2/r3, -r2, r1^2/r3, r1 r2/r3, r1)",
    },
    EntryInfo {
        name: "heis.typeA0",
        kind: EntryKind::Algebra,
        params: &["r1", "r3"],
        constraints: &["r3 != 0"],
        description: "Heisenberg bracket r = (r1, 0, r3, 0, 0, 0, r1^2/r3, 0, r1)",
    },
    EntryInfo {
        name: "heis.typeB",
        kind: EntryKind::Algebra,
        params: &["r4", "r5"],
        constraints: &["r5 != 0"],
        description: "Heisenberg bracket r = (0, 0, 0, r4, r5, 0, -r4^2/r5, -r4, 0)",
    },
    EntryInfo {
        name: "heis.typeC",
        kind: EntryKind::Algebra,
        params: &["r7"],
        constraints: &["r7 != 0"],
        description: "Heisenberg bracket r = (0, 0, 0, 0, 0, 0, r7, 0, 0)",
    },
    EntryInfo {
        name: "pa52.1",
        kind: EntryKind::Pair,
        params: &["r1", "r2", "r3", "alpha", "beta"],
        constraints: &["r2 != 0", "r3 != 0"],
        description: "post-Lie structures on (heis3, type A bracket), family 1",
    },
    EntryInfo {
        name: "pa52.2",
        kind: EntryKind::Pair,
        params: &["r1", "r3", "alpha", "beta"],
        constraints: &["r3 != 0"],
        description: "post-Lie structures on (heis3, type A bracket with r2 = 0), family 2",
    },
    EntryInfo {
        name: "pa52.3",
        kind: EntryKind::Pair,
        params: &["r3", "alpha", "beta", "gamma", "delta"],
        constraints: &["r3 != 0", "beta != 0"],
        description: "post-Lie structures on (heis3, {e1,e2} = r3 e3), family 3",
    },
    EntryInfo {
        name: "pa52.4",
        kind: EntryKind::Pair,
        params: &["r3", "alpha", "beta", "gamma", "delta"],
        constraints: &["r3 != 0", "alpha*gamma = 0"],
        description: "post-Lie structures on (heis3, {e1,e2} = r3 e3), family 4",
    },
    EntryInfo {
        name: "pa52.5",
        kind: EntryKind::Pair,
        params: &["r4", "r5", "alpha", "beta"],
        constraints: &["r5 != 0"],
        description: "post-Lie structures on (heis3, type B bracket), family 5",
    },
    EntryInfo {
        name: "pa52.6",
        kind: EntryKind::Pair,
        params: &["r7", "alpha", "beta"],
        constraints: &["r7 != 0"],
        description: "post-Lie structures on (heis3, {e2,e3} = r7 e1), family 6",
    },
    EntryInfo {
        name: "lr.halfbracket",
        kind: EntryKind::Pair,
        params: &["m"],
        constraints: &["m >= 1 (integer)"],
        description: "x.y = -1/2 {x,y} on (abelian, heis_{2m+1}); its negative is an LR-structure",
    },
    EntryInfo {
        name: "lr.A4",
        kind: EntryKind::Pair,
        params: &[],
        constraints: &[],
        description:
            "e2.e1=e3, e2.e2=-e2, e2.e3=-e3, e3.e2=-e3 on (abelian K^3, heis3); negative of the LR-structure A4",
    },
    EntryInfo {
        name: "heis",
        kind: EntryKind::Algebra,
        params: &["m"],
        constraints: &["m >= 1 (integer)"],
        description: "Heisenberg algebra of dimension 2m+1, [e_i, e_{m+i}] = e_{2m+1}",
    },
    EntryInfo {
        name: "r3",
        kind: EntryKind::Algebra,
        params: &["lambda"],
        constraints: &["lambda != 0"],
        description: "solvable non-nilpotent r_{3,lambda}: [e1,e2]=e2, [e1,e3]=lambda e3",
    },
];

/// Catalog entries in a fixed order.
pub fn list_entries() -> &'static [EntryInfo] {
    ENTRIES
}

pub fn entry(name: &str) -> Option<&'static EntryInfo> {
    ENTRIES.iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogObject {
    Algebra(LieAlgebra),
    Pair(PaPair),
}

impl CatalogObject {
    pub fn into_pair(self) -> Option<PaPair> {
        match self {
            CatalogObject::Pair(p) => Some(p),
            CatalogObject::Algebra(_) => None,
        }
    }

    pub fn into_algebra(self) -> Option<LieAlgebra> {
        match self {
            CatalogObject::Algebra(a) => Some(a),
            CatalogObject::Pair(_) => None,
        }
    }
}

/// Builds entry `name` over `field` from textual parameters (`"3"`, `"-1/2"`).
pub fn build(name: &str, field: Field, params: &BTreeMap<String, String>) -> Result<CatalogObject, CatalogError> {
    let info = entry(name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))?;
    if let Some(extra) = params.keys().find(|k| !info.params.contains(&k.as_str())) {
        return Err(CatalogError::UnknownParameter {
            entry: name.to_string(),
            param: extra.clone(),
        });
    }
    let raw = |p: &str| {
        params.get(p).ok_or_else(|| CatalogError::MissingParameter {
            entry: name.to_string(),
            param: p.to_string(),
        })
    };
    let s = |p: &str| -> Result<Scalar, CatalogError> {
        field.parse(raw(p)?).map_err(|source| CatalogError::BadValue {
            entry: name.to_string(),
            param: p.to_string(),
            source,
        })
    };
    let m = || -> Result<usize, CatalogError> {
        let text = raw("m")?;
        match text.trim().parse::<usize>() {
            Ok(m) if m >= 1 => Ok(m),
            _ => Err(violation(name, "m >= 1 (integer)")),
        }
    };
    use CatalogObject::{Algebra, Pair};
    Ok(match name {
        "ex2.5" => Pair(ex2_5(field, s("alpha")?, s("beta")?, s("gamma")?)?),
        "ex3.6" => Pair(ex3_6(field, s("lambda")?, s("alpha")?, s("beta")?, s("gamma")?)?),
        "ex4.5" => Pair(ex4_5(field)),
        "ex4.7" => Pair(ex4_7(field)),
        "heis.typeA" => Algebra(heis_type_a(field, s("r1")?, s("r2")?, s("r3")?)?),
        "heis.typeA0" => Algebra(heis_type_a0(field, s("r1")?, s("r3")?)?),
        "heis.typeB" => Algebra(heis_type_b(field, s("r4")?, s("r5")?)?),
        "heis.typeC" => Algebra(heis_type_c(field, s("r7")?)?),
        "pa52.1" => Pair(pa52_1(field, s("r1")?, s("r2")?, s("r3")?, s("alpha")?, s("beta")?)?),
        "pa52.2" => Pair(pa52_2(field, s("r1")?, s("r3")?, s("alpha")?, s("beta")?)?),
        "pa52.3" => Pair(pa52_3(
            field,
            s("r3")?,
            s("alpha")?,
            s("beta")?,
            s("gamma")?,
            s("delta")?,
        )?),
        "pa52.4" => Pair(pa52_4(
            field,
            s("r3")?,
            s("alpha")?,
            s("beta")?,
            s("gamma")?,
            s("delta")?,
        )?),
        "pa52.5" => Pair(pa52_5(field, s("r4")?, s("r5")?, s("alpha")?, s("beta")?)?),
        "pa52.6" => Pair(pa52_6(field, s("r7")?, s("alpha")?, s("beta")?)?),
        "lr.halfbracket" => Pair(half_bracket_pair(&LieAlgebra::heisenberg(field, m()?))),
        "lr.A4" => Pair(lr_a4(field)),
        "heis" => Algebra(LieAlgebra::heisenberg(field, m()?)),
        "r3" => Algebra(r3_lambda(field, s("lambda")?)?),
        _ => unreachable!("entry table and dispatch agree"),
    })
}

fn ints(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

/// `[e1, e2] = e3`
pub fn heis3(field: Field) -> LieAlgebra {
    LieAlgebra::heisenberg(field, 1)
}

/// Non-abelian 2-dimensional algebra `{e1, e2} = e1`.
pub fn r2(field: Field) -> LieAlgebra {
    LieAlgebra::from_int_brackets(field, 2, &[(0, 1, 0, 1)]).expect("valid")
}

/// `[e1,e2] = e2`, `[e1,e3] = λ e3`, `λ ≠ 0`.
pub fn r3_lambda(field: Field, lambda: Scalar) -> Result<LieAlgebra, CatalogError> {
    if lambda.is_zero() {
        return Err(violation("r3", "lambda != 0"));
    }
    let z = field.zero();
    let one = field.one();
    Ok(LieAlgebra::from_brackets(
        field,
        3,
        &[
            (0, 1, vec![z.clone(), one, z.clone()]),
            (0, 2, vec![z.clone(), z, lambda]),
        ],
    )?)
}

/// Bracket on `K^3` from `r = (r1, …, r9)`:
/// `{e1,e2} = r1 e1 + r2 e2 + r3 e3`, `{e1,e3} = r4 e1 + …`, `{e2,e3} = r7 e1 + …`.
pub fn bracket_from_r(field: Field, r: &[Scalar; 9]) -> Result<LieAlgebra, LieError> {
    LieAlgebra::from_brackets(
        field,
        3,
        &[
            (0, 1, r[0..3].to_vec()),
            (0, 2, r[3..6].to_vec()),
            (1, 2, r[6..9].to_vec()),
        ],
    )
}

/// Parameter vectors of the three Heisenberg bracket types.
pub fn r_type_a(r1: &Scalar, r2: &Scalar, r3: &Scalar) -> [Scalar; 9] {
    [
        r1.clone(),
        r2.clone(),
        r3.clone(),
        -(r1 * r2) / r3,
        -(r2 * r2) / r3,
        -r2,
        (r1 * r1) / r3,
        (r1 * r2) / r3,
        r1.clone(),
    ]
}

pub fn r_type_a0(r1: &Scalar, r3: &Scalar) -> [Scalar; 9] {
    let z = r1.field().zero();
    [
        r1.clone(),
        z.clone(),
        r3.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        (r1 * r1) / r3,
        z,
        r1.clone(),
    ]
}

pub fn r_type_b(r4: &Scalar, r5: &Scalar) -> [Scalar; 9] {
    let z = r4.field().zero();
    [
        z.clone(),
        z.clone(),
        z.clone(),
        r4.clone(),
        r5.clone(),
        z.clone(),
        -(r4 * r4) / r5,
        -r4,
        z,
    ]
}

pub fn r_type_c(r7: &Scalar) -> [Scalar; 9] {
    let z = r7.field().zero();
    let mut r: [Scalar; 9] = std::array::from_fn(|_| z.clone());
    r[6] = r7.clone();
    r
}

pub fn heis_type_a(field: Field, r1: Scalar, r2: Scalar, r3: Scalar) -> Result<LieAlgebra, CatalogError> {
    if r3.is_zero() {
        return Err(violation("heis.typeA", "r3 != 0"));
    }
    Ok(bracket_from_r(field, &r_type_a(&r1, &r2, &r3))?)
}

pub fn heis_type_a0(field: Field, r1: Scalar, r3: Scalar) -> Result<LieAlgebra, CatalogError> {
    if r3.is_zero() {
        return Err(violation("heis.typeA0", "r3 != 0"));
    }
    Ok(bracket_from_r(field, &r_type_a0(&r1, &r3))?)
}

pub fn heis_type_b(field: Field, r4: Scalar, r5: Scalar) -> Result<LieAlgebra, CatalogError> {
    if r5.is_zero() {
        return Err(violation("heis.typeB", "r5 != 0"));
    }
    Ok(bracket_from_r(field, &r_type_b(&r4, &r5))?)
}

pub fn heis_type_c(field: Field, r7: Scalar) -> Result<LieAlgebra, CatalogError> {
    if r7.is_zero() {
        return Err(violation("heis.typeC", "r7 != 0"));
    }
    Ok(bracket_from_r(field, &r_type_c(&r7))?)
}

pub fn ex2_5(field: Field, alpha: Scalar, beta: Scalar, gamma: Scalar) -> Result<PaPair, CatalogError> {
    let one = field.one();
    let cond = &beta * &(&beta + &one) - &alpha * &gamma;
    if !cond.is_zero() {
        return Err(violation("ex2.5", "beta*(beta+1) - alpha*gamma = 0"));
    }
    Ok(ex2_5_unchecked(field, alpha, beta, gamma))
}

/// The product shape of `ex2.5` without the constraint, for negative tests.
pub fn ex2_5_unchecked(field: Field, alpha: Scalar, beta: Scalar, gamma: Scalar) -> PaPair {
    let z = field.zero();
    let e1 = |c: Scalar| vec![c, z.clone()];
    let prod = BilinearProduct::from_entries(
        field,
        2,
        &[
            (0, 0, e1(alpha)),
            (0, 1, e1(beta.clone())),
            (1, 0, e1(&beta + &field.one())),
            (1, 1, e1(gamma)),
        ],
    )
    .expect("valid entries");
    PaPair::new(LieAlgebra::abelian(field, 2), r2(field), prod).expect("matching dimensions")
}

pub fn ex3_6(field: Field, lambda: Scalar, alpha: Scalar, beta: Scalar, gamma: Scalar) -> Result<PaPair, CatalogError> {
    if lambda.is_zero() {
        return Err(violation("ex3.6", "lambda != 0"));
    }
    let g = r3_lambda(field, lambda.clone())?;
    let z = field.zero();
    let one = field.one();
    let prod = BilinearProduct::from_entries(
        field,
        3,
        &[
            (0, 0, vec![&lambda - &one, alpha, beta]),
            (0, 1, vec![z.clone(), one.clone(), gamma.clone()]),
            (0, 2, vec![z.clone(), z.clone(), lambda]),
            (1, 0, vec![z.clone(), z, &gamma + &one]),
        ],
    )?;
    Ok(PaPair::new(g, heis3(field), prod)?)
}

pub fn ex4_5(field: Field) -> PaPair {
    let g = LieAlgebra::from_int_brackets(field, 5, &[(0, 1, 4, 1), (2, 3, 4, 1)]).expect("valid");
    let n = LieAlgebra::from_int_brackets(field, 5, &[(0, 3, 4, 1), (1, 2, 4, 1)]).expect("valid");
    let prod = BilinearProduct::from_int_entries(
        field,
        5,
        &[(1, 0, 4, -1), (2, 1, 4, 1), (2, 2, 1, 1), (3, 0, 4, 1), (3, 2, 4, -1)],
    );
    PaPair::new(g, n, prod).expect("matching dimensions")
}

/// `e1·e2 = e3`, `e2·e3 = −½e1`, and `e3·e2 = ½e1` from `L(e3) = −½Ad(e3)`:
/// family 6 with `r7 = 1`, `α = β = 0`.
pub fn ex4_7(field: Field) -> PaPair {
    pa52_6(field, field.one(), field.zero(), field.zero()).expect("r7 = 1 is admissible")
}

/// `x·y = −½{x,y}` on `(abelian, n)`.
pub fn half_bracket_pair(n: &LieAlgebra) -> PaPair {
    let minus_half = n.field().from_ratio(-1, 2).expect("2 invertible");
    let prod = BilinearProduct::scaled_bracket(n, &minus_half);
    PaPair::lr(n.clone(), prod).expect("matching dimensions")
}

pub fn lr_a4(field: Field) -> PaPair {
    let prod =
        BilinearProduct::from_int_entries(field, 3, &[(1, 0, 2, 1), (1, 1, 1, -1), (1, 2, 2, -1), (2, 1, 2, -1)]);
    PaPair::lr(heis3(field), prod).expect("matching dimensions")
}

fn matrix(field: Field, rows: [[Scalar; 3]; 3]) -> Matrix {
    Matrix::from_rows(field, rows.into_iter().map(Vec::from).collect()).expect("3x3")
}

/// Pair `(heis3, n)` with `L(e1)`, `L(e2)` given and `L(e3) = −½ Ad(e3)`.
fn heis3_pair(field: Field, n: LieAlgebra, l1: Matrix, l2: Matrix) -> Result<PaPair, CatalogError> {
    let minus_half = field.from_ratio(-1, 2).expect("2 invertible");
    let l3 = n.ad_basis(2).scale(&minus_half);
    let prod = BilinearProduct::from_left_operators(field, &[l1, l2, l3])?;
    Ok(PaPair::new(heis3(field), n, prod)?)
}

fn nonzero(entry: &str, x: &Scalar, predicate: &str) -> Result<(), CatalogError> {
    if x.is_zero() {
        Err(violation(entry, predicate))
    } else {
        Ok(())
    }
}

pub fn pa52_1(
    field: Field,
    r1: Scalar,
    r2: Scalar,
    r3: Scalar,
    alpha: Scalar,
    beta: Scalar,
) -> Result<PaPair, CatalogError> {
    nonzero("pa52.1", &r2, "r2 != 0")?;
    nonzero("pa52.1", &r3, "r3 != 0")?;
    let two = field.from_i64(2);
    let (a, b) = (&alpha, &beta);
    let r2sq = &r2 * &r2;
    // 2 r1 α + r2²
    let s1 = &(&two * &r1) * a + &r2sq;
    // r2² − 2 r1 α
    let s2 = &r2sq - &(&two * &r1) * a;
    let l1 = matrix(
        field,
        [
            [&r1 * a / &r2, -(&r1 * &s1) / (&two * &r2sq), &r1 * &r2 / (&two * &r3)],
            [a.clone(), -(&s1 / (&two * &r2)), &r2sq / (&two * &r3)],
            [b.clone(), -((&(&two * &r1) * b + &r2 * &r3) / (&two * &r2)), &r2 / &two],
        ],
    );
    let r1sq = &r1 * &r1;
    let l2 = matrix(
        field,
        [
            [
                &r1 * &s2 / (&two * &r2sq),
                &(&r1sq * &r1) * a / (&r2sq * &r2),
                -(&r1sq / (&two * &r3)),
            ],
            [&s2 / (&two * &r2), &r1sq * a / &r2sq, -(&r1 * &r2 / (&two * &r3))],
            [
                (&r2 * &(&r3 - &two) - &(&two * &r1) * b) / (&two * &r2),
                &r1 * &(&r1 * b + &r2) / &r2sq,
                -(&r1 / &two),
            ],
        ],
    );
    let n = bracket_from_r(field, &r_type_a(&r1, &r2, &r3))?;
    heis3_pair(field, n, l1, l2)
}

pub fn pa52_2(field: Field, r1: Scalar, r3: Scalar, alpha: Scalar, beta: Scalar) -> Result<PaPair, CatalogError> {
    nonzero("pa52.2", &r3, "r3 != 0")?;
    let two = field.from_i64(2);
    let z = field.zero();
    let l1 = matrix(
        field,
        [
            [z.clone(), -(&r1 / &two), z.clone()],
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), (&two - &r3) / &two, z.clone()],
        ],
    );
    let l2 = matrix(
        field,
        [
            [&r1 / &two, alpha, -(&(&r1 * &r1) / (&two * &r3))],
            [z.clone(), z.clone(), z],
            [&r3 / &two, beta, -(&r1 / &two)],
        ],
    );
    let n = bracket_from_r(field, &r_type_a0(&r1, &r3))?;
    heis3_pair(field, n, l1, l2)
}

fn n_r3(field: Field, r3: &Scalar) -> Result<LieAlgebra, CatalogError> {
    let z = field.zero();
    Ok(bracket_from_r(field, &r_type_a0(&z, r3))?)
}

pub fn pa52_3(
    field: Field,
    r3: Scalar,
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
) -> Result<PaPair, CatalogError> {
    nonzero("pa52.3", &r3, "r3 != 0")?;
    nonzero("pa52.3", &beta, "beta != 0")?;
    let z = field.zero();
    let one = field.one();
    let two = field.from_i64(2);
    let (a, b) = (&alpha, &beta);
    let asq = a * a;
    let bsq = b * b;
    let l1 = matrix(
        field,
        [
            [a.clone(), -(&asq / b), z.clone()],
            [b.clone(), -a, z.clone()],
            [gamma.clone(), delta.clone(), z.clone()],
        ],
    );
    // α(β(1 − r3) − αγ − 2βδ)/β²
    let inner = &(b * &(&one - &r3)) - &(a * &gamma) - &(&two * b) * &delta;
    let l2 = matrix(
        field,
        [
            [-(&asq / b), &asq * a / &bsq, z.clone()],
            [-a, &asq / b, z.clone()],
            [&(&r3 - &one) + &delta, a * &inner / &bsq, z],
        ],
    );
    heis3_pair(field, n_r3(field, &r3)?, l1, l2)
}

pub fn pa52_4(
    field: Field,
    r3: Scalar,
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
) -> Result<PaPair, CatalogError> {
    nonzero("pa52.4", &r3, "r3 != 0")?;
    if !(&alpha * &gamma).is_zero() {
        return Err(violation("pa52.4", "alpha*gamma = 0"));
    }
    let z = field.zero();
    let one = field.one();
    let l1 = matrix(
        field,
        [
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone()],
            [alpha, beta.clone(), z.clone()],
        ],
    );
    let l2 = matrix(
        field,
        [
            [z.clone(), gamma, z.clone()],
            [z.clone(), z.clone(), z.clone()],
            [&(&r3 - &one) + &beta, delta, z],
        ],
    );
    heis3_pair(field, n_r3(field, &r3)?, l1, l2)
}

pub fn pa52_5(field: Field, r4: Scalar, r5: Scalar, alpha: Scalar, beta: Scalar) -> Result<PaPair, CatalogError> {
    nonzero("pa52.5", &r5, "r5 != 0")?;
    let z = field.zero();
    let two = field.from_i64(2);
    let (a, b) = (&alpha, &beta);
    let r4sq = &r4 * &r4;
    let r5sq = &r5 * &r5;
    let l1 = matrix(
        field,
        [
            [&r4 * a / &r5, -(&r4sq * a / &r5sq), -(&r4 / &two)],
            [a.clone(), -(&r4 * a / &r5), -(&r5 / &two)],
            [b.clone(), -(&r4 * b / &r5), z.clone()],
        ],
    );
    // r4 β + r5
    let t = &r4 * b + &r5;
    let l2 = matrix(
        field,
        [
            [
                -(&r4sq * a / &r5sq),
                &(&r4sq * &r4) * a / (&r5sq * &r5),
                &r4sq / (&two * &r5),
            ],
            [-(&r4 * a / &r5), &r4sq * a / &r5sq, &r4 / &two],
            [-(&t / &r5), &r4 * &t / &r5sq, z],
        ],
    );
    let n = bracket_from_r(field, &r_type_b(&r4, &r5))?;
    heis3_pair(field, n, l1, l2)
}

pub fn pa52_6(field: Field, r7: Scalar, alpha: Scalar, beta: Scalar) -> Result<PaPair, CatalogError> {
    nonzero("pa52.6", &r7, "r7 != 0")?;
    let z = field.zero();
    let two = field.from_i64(2);
    let l1 = matrix(
        field,
        [
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), field.one(), z.clone()],
        ],
    );
    let l2 = matrix(
        field,
        [
            [z.clone(), alpha, -(&r7 / &two)],
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), beta, z],
        ],
    );
    let n = bracket_from_r(field, &r_type_c(&r7))?;
    heis3_pair(field, n, l1, l2)
}

/// Which `pa52.*` family, for randomized drivers.
pub const PA52_FAMILIES: [&str; 6] = ["pa52.1", "pa52.2", "pa52.3", "pa52.4", "pa52.5", "pa52.6"];

/// Builds a `pa52.*` family from a parameter vector in the entry's declared
/// parameter order.
pub fn pa52_from_vec(family: usize, field: Field, p: &[Scalar]) -> Result<PaPair, CatalogError> {
    let v = |i: usize| p[i].clone();
    match family {
        1 => pa52_1(field, v(0), v(1), v(2), v(3), v(4)),
        2 => pa52_2(field, v(0), v(1), v(2), v(3)),
        3 => pa52_3(field, v(0), v(1), v(2), v(3), v(4)),
        4 => pa52_4(field, v(0), v(1), v(2), v(3), v(4)),
        5 => pa52_5(field, v(0), v(1), v(2), v(3)),
        6 => pa52_6(field, v(0), v(1), v(2)),
        _ => Err(CatalogError::UnknownEntry(format!("pa52.{family}"))),
    }
}

/// `e_i` in dimension `n`, over `field`.
pub fn basis_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    vector::unit(field, n, i)
}

#[doc(hidden)]
pub fn int_vector(field: Field, xs: &[i64]) -> Vec<Scalar> {
    ints(field, xs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn params(kv: &[(&str, &str)]) -> BTreeMap<String, String> {
        kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn listing_contains_all_families() {
        let names: Vec<_> = list_entries().iter().map(|e| e.name).collect();
        for f in PA52_FAMILIES {
            assert!(names.contains(&f));
        }
        assert!(names.contains(&"ex4.5"));
        assert!(names.len() >= 13);
    }

    #[test]
    fn family_six_builds_a_pa_structure() {
        let pair = build("pa52.6", q(), &params(&[("r7", "1"), ("alpha", "0"), ("beta", "0")]))
            .unwrap()
            .into_pair()
            .unwrap();
        assert!(pair.check_pa().is_ok());
    }

    #[test]
    fn constraint_violations_are_named() {
        let err = build("heis.typeA", q(), &params(&[("r1", "1"), ("r2", "1"), ("r3", "0")])).unwrap_err();
        assert_eq!(
            err,
            CatalogError::ConstraintViolation {
                entry: "heis.typeA".into(),
                predicate: "r3 != 0".into()
            }
        );
        let err = build(
            "pa52.4",
            q(),
            &params(&[
                ("r3", "1"),
                ("alpha", "1"),
                ("beta", "0"),
                ("gamma", "2"),
                ("delta", "0"),
            ]),
        )
        .unwrap_err();
        assert!(matches!(err, CatalogError::ConstraintViolation { .. }));
    }

    #[test]
    fn ex25_degenerate_parameters_are_admissible() {
        let pair = build("ex2.5", q(), &params(&[("alpha", "0"), ("beta", "0"), ("gamma", "5")]))
            .unwrap()
            .into_pair()
            .unwrap();
        assert!(pair.check_pa().is_ok());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            build("nope", q(), &params(&[])),
            Err(CatalogError::UnknownEntry(_))
        ));
        assert!(matches!(
            build("pa52.6", q(), &params(&[("r7", "1"), ("alpha", "0")])),
            Err(CatalogError::MissingParameter { .. })
        ));
        assert!(matches!(
            build("ex4.5", q(), &params(&[("x", "1")])),
            Err(CatalogError::UnknownParameter { .. })
        ));
        assert!(matches!(
            build("lr.halfbracket", q(), &params(&[("m", "0")])),
            Err(CatalogError::ConstraintViolation { .. })
        ));
    }

    #[test]
    fn every_fixed_entry_builds() {
        for e in list_entries() {
            let p: BTreeMap<String, String> = e
                .params
                .iter()
                .map(|&k| {
                    (
                        k.to_string(),
                        if k == "beta" && e.name == "ex2.5" { "0" } else { "1" }.to_string(),
                    )
                })
                .collect();
            let p = if e.name == "ex2.5" {
                params(&[("alpha", "1"), ("beta", "0"), ("gamma", "0")])
            } else {
                p
            };
            let p = if e.name == "pa52.4" {
                params(&[
                    ("r3", "1"),
                    ("alpha", "0"),
                    ("beta", "1"),
                    ("gamma", "1"),
                    ("delta", "1"),
                ])
            } else {
                p
            };
            build(e.name, q(), &p).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }
}

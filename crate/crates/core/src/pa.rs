//! Post-Lie algebra structures on a pair `(g, n)` of Lie brackets on one
//! vector space, and the special cases CPA, pre-Lie and LR.

use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::linalg::{vector, Field, LinalgError, Matrix, Scalar, Subspace};
use crate::verdict::{Identity, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PaError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("product tensor has {found} entries, expected {expected}")]
    TensorLength { expected: usize, found: usize },
    #[error("product entry ({i}, {j}) is invalid: {reason}")]
    BadEntry { i: usize, j: usize, reason: String },
}

/// A bilinear product `e_i·e_j = Σ_k a[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearProduct {
    dim: usize,
    field: Field,
    a: Vec<Scalar>,
}

impl BilinearProduct {
    pub fn new(field: Field, dim: usize, a: Vec<Scalar>) -> Result<Self, PaError> {
        if a.len() != dim * dim * dim {
            return Err(PaError::TensorLength {
                expected: dim * dim * dim,
                found: a.len(),
            });
        }
        if let Some(s) = a.iter().find(|s| s.field() != field) {
            return Err(PaError::FieldMismatch(field, s.field()));
        }
        Ok(Self { dim, field, a })
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        Self {
            dim,
            field,
            a: vec![field.zero(); dim * dim * dim],
        }
    }

    /// Products `e_i·e_j = v` (0-based); unlisted products are zero.
    pub fn from_entries(field: Field, dim: usize, entries: &[(usize, usize, Vec<Scalar>)]) -> Result<Self, PaError> {
        let mut p = Self::zero(field, dim);
        let mut seen = std::collections::HashSet::new();
        for (i, j, v) in entries {
            let bad = |reason: &str| PaError::BadEntry {
                i: *i,
                j: *j,
                reason: reason.to_string(),
            };
            if *i >= dim || *j >= dim {
                return Err(bad("index out of range"));
            }
            if v.len() != dim {
                return Err(bad("value has wrong length"));
            }
            if !seen.insert((*i, *j)) {
                return Err(bad("duplicate entry"));
            }
            if let Some(s) = v.iter().find(|s| s.field() != field) {
                return Err(PaError::FieldMismatch(field, s.field()));
            }
            let s = p.offset(*i, *j);
            p.a[s..s + dim].clone_from_slice(v);
        }
        Ok(p)
    }

    /// Integer entries `(i, j, k, coeff)`: `e_i·e_j += coeff e_k` (0-based).
    pub fn from_int_entries(field: Field, dim: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let mut p = Self::zero(field, dim);
        for &(i, j, k, c) in entries {
            let s = p.offset(i, j) + k;
            p.a[s] += &field.from_i64(c);
        }
        p
    }

    /// The product with `L(e_i) = ops[i]`, i.e. `e_i·e_j = ops[i] e_j`.
    pub fn from_left_operators(field: Field, ops: &[Matrix]) -> Result<Self, PaError> {
        let dim = ops.len();
        let mut p = Self::zero(field, dim);
        for (i, op) in ops.iter().enumerate() {
            if op.rows() != dim || op.cols() != dim {
                return Err(PaError::Dimension(format!("L(e{}) is not {dim}x{dim}", i + 1)));
            }
            if op.field() != field {
                return Err(PaError::FieldMismatch(field, op.field()));
            }
            for j in 0..dim {
                for k in 0..dim {
                    let s = p.offset(i, j) + k;
                    p.a[s] = op.get(k, j).clone();
                }
            }
        }
        Ok(p)
    }

    /// `x·y = s [x,y]`
    pub fn scaled_bracket(alg: &LieAlgebra, s: &Scalar) -> Self {
        Self {
            dim: alg.dim(),
            field: alg.field(),
            a: alg.structure_constants().iter().map(|c| s * c).collect(),
        }
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Full tensor, index `(i*dim + j)*dim + k`.
    pub fn tensor(&self) -> &[Scalar] {
        &self.a
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let s = self.offset(i, j);
        &self.a[s..s + self.dim]
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vector::zero(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(xi * yj), self.basis_product(i, j));
            }
        }
        out
    }

    /// `L(e_i)`: column `j` is `e_i·e_j`.
    pub fn left_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// `R(e_i)`: column `j` is `e_j·e_i`.
    pub fn right_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.basis_product(j, i).to_vec()).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    pub fn left_op(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.left_ops(), x)
    }

    pub fn right_op(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.right_ops(), x)
    }

    pub fn left_ops(&self) -> Vec<Matrix> {
        (0..self.dim).map(|i| self.left_basis(i)).collect()
    }

    pub fn right_ops(&self) -> Vec<Matrix> {
        (0..self.dim).map(|i| self.right_basis(i)).collect()
    }

    pub fn negated(&self) -> Self {
        Self {
            a: vector::neg(&self.a),
            ..self.clone()
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// `x∘y = ½(x·y + y·x)`
    pub fn symmetrized(&self) -> Self {
        let mut s = Self::zero(self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = vector::add(self.basis_product(i, j), self.basis_product(j, i));
                let o = s.offset(i, j);
                for (k, x) in v.iter().enumerate() {
                    s.a[o + k] = x.half();
                }
            }
        }
        s
    }
}

/// `Σ x_i ops[i]`
pub(crate) fn combine(field: Field, dim: usize, ops: &[Matrix], x: &[Scalar]) -> Matrix {
    assert_eq!(ops.len(), x.len());
    let mut acc = Matrix::zeros(field, dim, dim);
    for (op, c) in ops.iter().zip(x) {
        if !c.is_zero() {
            acc = &acc + &op.scale(c);
        }
    }
    acc
}

/// A bilinear product on a pair of Lie brackets `g = (V, [,])` and
/// `n = (V, {,})` sharing one vector space. Construction only checks that the
/// pieces fit together; [`PaPair::check_pa`] decides whether the product is a
/// post-Lie algebra structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaPair {
    g: LieAlgebra,
    n: LieAlgebra,
    prod: BilinearProduct,
}

/// Operators of a pair, precomputed on basis vectors.
pub(crate) struct Operators {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
    pub ad: Vec<Matrix>,
    pub big_ad: Vec<Matrix>,
}

impl PaPair {
    pub fn new(g: LieAlgebra, n: LieAlgebra, prod: BilinearProduct) -> Result<Self, PaError> {
        if g.dim() != n.dim() || g.dim() != prod.dim() {
            return Err(PaError::Dimension(format!(
                "g has dimension {}, n has {}, product has {}",
                g.dim(),
                n.dim(),
                prod.dim()
            )));
        }
        if g.field() != n.field() {
            return Err(PaError::FieldMismatch(g.field(), n.field()));
        }
        if g.field() != prod.field() {
            return Err(PaError::FieldMismatch(g.field(), prod.field()));
        }
        Ok(Self { g, n, prod })
    }

    /// Pre-Lie setting: `n` abelian.
    pub fn prelie(g: LieAlgebra, prod: BilinearProduct) -> Result<Self, PaError> {
        let n = LieAlgebra::abelian(g.field(), g.dim());
        Self::new(g, n, prod)
    }

    /// LR setting: `g` abelian; `prod` is the post-Lie product, whose
    /// negative is the LR product on `n`.
    pub fn lr(n: LieAlgebra, prod: BilinearProduct) -> Result<Self, PaError> {
        let g = LieAlgebra::abelian(n.field(), n.dim());
        Self::new(g, n, prod)
    }

    /// CPA setting: `g = n`.
    pub fn cpa(g: LieAlgebra, prod: BilinearProduct) -> Result<Self, PaError> {
        Self::new(g.clone(), g, prod)
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn n(&self) -> &LieAlgebra {
        &self.n
    }

    pub fn product(&self) -> &BilinearProduct {
        &self.prod
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn field(&self) -> Field {
        self.g.field()
    }

    pub fn with_product(&self, prod: BilinearProduct) -> Result<Self, PaError> {
        Self::new(self.g.clone(), self.n.clone(), prod)
    }

    pub(crate) fn operators(&self) -> Operators {
        let d = self.dim();
        Operators {
            left: self.prod.left_ops(),
            right: self.prod.right_ops(),
            ad: (0..d).map(|i| self.g.ad_basis(i)).collect(),
            big_ad: (0..d).map(|i| self.n.ad_basis(i)).collect(),
        }
    }

    /// `L(x)`
    pub fn left_op(&self, x: &[Scalar]) -> Matrix {
        self.prod.left_op(x)
    }

    /// `R(x)`
    pub fn right_op(&self, x: &[Scalar]) -> Matrix {
        self.prod.right_op(x)
    }

    /// Checks the three post-Lie axioms on all basis tuples:
    /// `x·y − y·x = [x,y] − {x,y}`, `[x,y]·z = x·(y·z) − y·(x·z)` and
    /// `x·{y,z} = {x·y,z} + {y,x·z}`. By multilinearity this is complete.
    pub fn check_pa(&self) -> Verdict {
        let d = self.dim();
        let ops = self.operators();
        let p = &self.prod;
        let mut v = Verdict::ok();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = vector::sub(p.basis_product(i, j), p.basis_product(j, i));
                let rhs = vector::sub(self.g.bracket_basis(i, j), self.n.bracket_basis(i, j));
                v.compare(Identity::Skew, &[i, j], lhs, rhs);
            }
        }
        v.merge(representation_verdict(&self.g, &ops.left, &ops.right, p));
        v.merge(derivation_verdict(&self.n, &ops.left, &ops.big_ad, p));
        v
    }

    /// The operator form of the axioms: `L(x) − R(x) = ad(x) − Ad(x)`,
    /// `L([x,y]) = [L(x),L(y)]` and `[L(x),Ad(y)] = Ad(L(x)y)`.
    pub fn check_operator_axioms(&self) -> Verdict {
        let d = self.dim();
        let f = self.field();
        let ops = self.operators();
        let mut v = Verdict::ok();
        for i in 0..d {
            let lhs = &ops.left[i] - &ops.right[i];
            let rhs = &ops.ad[i] - &ops.big_ad[i];
            v.compare_operators(Identity::OpSkew, &[i], &lhs, &rhs);
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = combine(f, d, &ops.left, self.g.bracket_basis(i, j));
                let rhs = ops.left[i].commutator(&ops.left[j]);
                v.compare_operators(Identity::OpRepresentation, &[i, j], &lhs, &rhs);
            }
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = ops.left[i].commutator(&ops.big_ad[j]);
                let rhs = combine(f, d, &ops.big_ad, self.prod.basis_product(i, j));
                v.compare_operators(Identity::OpDerivation, &[i, j], &lhs, &rhs);
            }
        }
        v
    }

    /// `Ann_L = {x : x·V = 0}`, the kernel of `x ↦ L(x)`.
    pub fn ann_left(&self) -> Subspace {
        flattened_kernel(self.field(), self.dim(), &self.prod.left_ops())
    }

    /// `Ann_R = {x : V·x = 0}`, the kernel of `x ↦ R(x)`.
    pub fn ann_right(&self) -> Subspace {
        flattened_kernel(self.field(), self.dim(), &self.prod.right_ops())
    }

    /// `H⁰(g, n) = {y : x·y = 0 for all x}`, the intersection of the kernels
    /// of all `L(e_i)`.
    pub fn h0(&self) -> Subspace {
        let stacked = Matrix::vstack(self.field(), &self.prod.left_ops()).expect("square blocks");
        if self.dim() == 0 {
            return Subspace::zero(self.field(), 0);
        }
        stacked.kernel()
    }

    /// Whether every `L(x)` is nilpotent, decided by the chain
    /// `V_0 = V, V_{i+1} = span{L(e_j) v : v ∈ V_i}` reaching zero.
    pub fn all_left_mults_nilpotent(&self) -> bool {
        engel_chain_reaches_zero(self.field(), self.dim(), &self.prod.left_ops())
    }

    /// The operator identities `[L(x),Ad(y)] + [Ad(x),L(y)] = Ad([x,y]) − Ad({x,y})`
    /// and its companion for `R`, on all basis pairs. Both follow from the
    /// post-Lie axioms.
    pub fn cross_identities(&self) -> Verdict {
        let d = self.dim();
        let f = self.field();
        let ops = self.operators();
        let mut v = Verdict::ok();
        for i in 0..d {
            for j in 0..d {
                let lhs = &ops.left[i].commutator(&ops.big_ad[j]) + &ops.big_ad[i].commutator(&ops.left[j]);
                let rhs = &combine(f, d, &ops.big_ad, self.g.bracket_basis(i, j))
                    - &combine(f, d, &ops.big_ad, self.n.bracket_basis(i, j));
                v.compare_operators(Identity::LeftAdCross, &[i, j], &lhs, &rhs);
            }
        }
        let two = f.from_i64(2);
        for i in 0..d {
            for j in 0..d {
                let lhs = &ops.right[i].commutator(&ops.ad[j]) + &ops.ad[i].commutator(&ops.right[j]);
                let mut rhs = &ops.left[i].commutator(&ops.ad[j]) + &ops.ad[i].commutator(&ops.left[j]);
                rhs = &rhs + &ops.big_ad[i].commutator(&ops.ad[j]);
                rhs = &rhs + &ops.ad[i].commutator(&ops.big_ad[j]);
                rhs = &rhs - &ops.ad[i].commutator(&ops.ad[j]).scale(&two);
                v.compare_operators(Identity::RightAdCross, &[i, j], &lhs, &rhs);
            }
        }
        v
    }
}

impl PaPair {
    /// Identities satisfied by post-Lie structures on a pair of Heisenberg
    /// algebras of dimension 3, on all basis triples: `x·{y,z} = 0`,
    /// `[x,y]·z = −z·[x,y]`, `[x,y·z] + [x,z·y] = [y,x·z] + [y,z·x]`, and
    /// `L([x,y]) + R([x,y]) = 0`.
    pub fn heisenberg_pair_identities(&self) -> Verdict {
        let d = self.dim();
        let f = self.field();
        let p = &self.prod;
        let zero = vector::zero(f, d);
        let mut v = Verdict::ok();
        for i in 0..d {
            let x = vector::unit(f, d, i);
            for j in 0..d {
                let y = vector::unit(f, d, j);
                let gxy = self.g.bracket_basis(i, j);
                let lr = &p.left_op(gxy) + &p.right_op(gxy);
                v.compare_operators(Identity::DerivedLeftRightSum, &[i, j], &lr, &Matrix::zeros(f, d, d));
                for k in 0..d {
                    let z = vector::unit(f, d, k);
                    v.compare(
                        Identity::LeftKillsDerivedN,
                        &[i, j, k],
                        p.product(&x, self.n.bracket_basis(j, k)),
                        zero.clone(),
                    );
                    v.compare(
                        Identity::DerivedAnticommutes,
                        &[i, j, k],
                        p.product(gxy, &z),
                        vector::neg(&p.product(&z, gxy)),
                    );
                    let lhs = vector::add(
                        &self.g.bracket_unchecked(&x, p.basis_product(j, k)),
                        &self.g.bracket_unchecked(&x, p.basis_product(k, j)),
                    );
                    let rhs = vector::add(
                        &self.g.bracket_unchecked(&y, p.basis_product(i, k)),
                        &self.g.bracket_unchecked(&y, p.basis_product(k, i)),
                    );
                    v.compare(Identity::BracketSymmetric, &[i, j, k], lhs, rhs);
                }
            }
        }
        v
    }
}

/// `[x,y]·z = x·(y·z) − y·(x·z)` for basis `x < y` and all `z`.
fn representation_verdict(g: &LieAlgebra, left: &[Matrix], right: &[Matrix], p: &BilinearProduct) -> Verdict {
    let d = g.dim();
    let mut v = Verdict::ok();
    for i in 0..d {
        for j in i + 1..d {
            let gij = g.bracket_basis(i, j);
            for k in 0..d {
                let lhs = right[k].apply(gij);
                let rhs = vector::sub(
                    &left[i].apply(p.basis_product(j, k)),
                    &left[j].apply(p.basis_product(i, k)),
                );
                v.compare(Identity::Representation, &[i, j, k], lhs, rhs);
            }
        }
    }
    v
}

/// `x·{y,z} = {x·y,z} + {y,x·z}` for all basis `x` and `y < z`.
fn derivation_verdict(n: &LieAlgebra, left: &[Matrix], big_ad: &[Matrix], p: &BilinearProduct) -> Verdict {
    let d = n.dim();
    let mut v = Verdict::ok();
    for i in 0..d {
        for j in 0..d {
            for k in j + 1..d {
                let lhs = left[i].apply(n.bracket_basis(j, k));
                // {u, e_k} = −Ad(e_k) u
                let first = vector::neg(&big_ad[k].apply(p.basis_product(i, j)));
                let second = big_ad[j].apply(p.basis_product(i, k));
                v.compare(Identity::Derivation, &[i, j, k], lhs, vector::add(&first, &second));
            }
        }
    }
    v
}

fn flattened_kernel(field: Field, dim: usize, ops: &[Matrix]) -> Subspace {
    if dim == 0 {
        return Subspace::zero(field, 0);
    }
    // Column i is L(e_i) (or R(e_i)) flattened row-major.
    let cols: Vec<Vec<Scalar>> = ops.iter().map(|m| m.entries().to_vec()).collect();
    Matrix::from_columns(field, dim * dim, &cols)
        .expect("flattened operators")
        .kernel()
}

pub(crate) fn engel_chain_reaches_zero(field: Field, dim: usize, ops: &[Matrix]) -> bool {
    let mut current = Subspace::full(field, dim);
    loop {
        if current.is_zero() {
            return true;
        }
        let basis = current.basis();
        let images: Vec<Vec<Scalar>> = ops
            .iter()
            .flat_map(|op| basis.iter().map(move |v| op.apply(v)))
            .filter(|w| !vector::is_zero(w))
            .collect();
        let next = Subspace::span(field, dim, &images);
        if next == current {
            return false;
        }
        current = next;
    }
}

/// CPA axioms on `g`: commutativity, `[x,y]·z = x·(y·z) − y·(x·z)` and
/// `x·[y,z] = [x·y,z] + [y,x·z]`.
pub fn check_cpa(g: &LieAlgebra, prod: &BilinearProduct) -> Result<Verdict, PaError> {
    PaPair::cpa(g.clone(), prod.clone())?;
    let d = g.dim();
    let mut v = Verdict::ok();
    for i in 0..d {
        for j in i + 1..d {
            v.compare(
                Identity::Commutativity,
                &[i, j],
                prod.basis_product(i, j).to_vec(),
                prod.basis_product(j, i).to_vec(),
            );
        }
    }
    let left = prod.left_ops();
    let right = prod.right_ops();
    let ad: Vec<Matrix> = (0..d).map(|i| g.ad_basis(i)).collect();
    v.merge(representation_verdict(g, &left, &right, prod));
    v.merge(derivation_verdict(g, &left, &ad, prod));
    Ok(v)
}

/// Pre-Lie structure on `g`: the post-Lie axioms with `n` abelian.
pub fn check_prelie(g: &LieAlgebra, prod: &BilinearProduct) -> Result<Verdict, PaError> {
    Ok(PaPair::prelie(g.clone(), prod.clone())?.check_pa())
}

/// Post-Lie axioms for abelian `g` on `n`. `prod` is the post-Lie product;
/// `-prod` is the corresponding LR-structure on `n`.
pub fn check_lr(n: &LieAlgebra, prod: &BilinearProduct) -> Result<Verdict, PaError> {
    Ok(PaPair::lr(n.clone(), prod.clone())?.check_pa())
}

/// LR product from a post-Lie product on `(abelian, n)`.
pub fn lr_from_pa(prod: &BilinearProduct) -> BilinearProduct {
    prod.negated()
}

/// Post-Lie product on `(abelian, n)` from an LR product on `n`.
pub fn pa_from_lr(prod: &BilinearProduct) -> BilinearProduct {
    prod.negated()
}

//! Lie algebras given by structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.

use thiserror::Error;

use crate::linalg::{vector, Field, LinalgError, Matrix, Scalar, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("structure tensor has {found} entries, expected {expected}")]
    TensorLength { expected: usize, found: usize },
    #[error("not antisymmetric at (e{}, e{}) component e{}", .i + 1, .j + 1, .k + 1)]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on (e{}, e{}, e{})", .i + 1, .j + 1, .k + 1)]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("bracket entry ({i}, {j}) is invalid: {reason}")]
    BadBracket { i: usize, j: usize, reason: String },
    #[error("vector of length {found} in a {dim}-dimensional algebra")]
    VectorLength { dim: usize, found: usize },
}

/// Nilpotency class: smallest `c` with `γ_{c+1} = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyClass {
    Nilpotent(usize),
    NotNilpotent,
}

impl NilpotencyClass {
    pub fn class(self) -> Option<usize> {
        match self {
            NilpotencyClass::Nilpotent(c) => Some(c),
            NilpotencyClass::NotNilpotent => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    dim: usize,
    field: Field,
    c: Vec<Scalar>,
}

#[inline]
fn idx(dim: usize, i: usize, j: usize, k: usize) -> usize {
    (i * dim + j) * dim + k
}

/// First basis triple `i < j < k` on which the Jacobi identity fails, for a
/// tensor assumed antisymmetric.
pub fn jacobi_violation(dim: usize, c: &[Scalar]) -> Option<(usize, usize, usize)> {
    assert_eq!(c.len(), dim * dim * dim, "tensor length");
    let field = c.first()?.field();
    // [[e_i,e_j],e_k] = Σ_r c[i][j][r] [e_r, e_k]
    let double = |i: usize, j: usize, k: usize, out: &mut [Scalar]| {
        for r in 0..dim {
            let a = &c[idx(dim, i, j, r)];
            if a.is_zero() {
                continue;
            }
            let start = idx(dim, r, k, 0);
            vector::axpy(out, a, &c[start..start + dim]);
        }
    };
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let mut acc = vector::zero(field, dim);
                double(i, j, k, &mut acc);
                double(j, k, i, &mut acc);
                double(k, i, j, &mut acc);
                if !vector::is_zero(&acc) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// True iff the cyclic sum of `[[e_i,e_j],e_k]` vanishes on all basis triples.
pub fn jacobi_check(dim: usize, c: &[Scalar]) -> bool {
    jacobi_violation(dim, c).is_none()
}

fn antisymmetry_violation(dim: usize, c: &[Scalar]) -> Option<(usize, usize, usize)> {
    for i in 0..dim {
        for j in i..dim {
            for k in 0..dim {
                if c[idx(dim, i, j, k)] != -&c[idx(dim, j, i, k)] {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity of a full tensor.
    pub fn try_new(field: Field, dim: usize, c: Vec<Scalar>) -> Result<Self, LieError> {
        if c.len() != dim * dim * dim {
            return Err(LieError::TensorLength {
                expected: dim * dim * dim,
                found: c.len(),
            });
        }
        if let Some(s) = c.iter().find(|s| s.field() != field) {
            return Err(LinalgError::FieldMismatch {
                expected: field,
                found: s.field(),
            }
            .into());
        }
        if let Some((i, j, k)) = antisymmetry_violation(dim, &c) {
            return Err(LieError::NotAntisymmetric { i, j, k });
        }
        if let Some((i, j, k)) = jacobi_violation(dim, &c) {
            return Err(LieError::Jacobi { i, j, k });
        }
        Ok(Self { dim, field, c })
    }

    /// Builds from brackets `[e_i, e_j] = v` given for `i < j` (0-based);
    /// antisymmetric completion is implicit and unlisted brackets are zero.
    pub fn from_brackets(field: Field, dim: usize, brackets: &[(usize, usize, Vec<Scalar>)]) -> Result<Self, LieError> {
        let mut c = vec![field.zero(); dim * dim * dim];
        let mut seen = std::collections::HashSet::new();
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            let bad = |reason: &str| LieError::BadBracket {
                i,
                j,
                reason: reason.to_string(),
            };
            if i >= j || j >= dim {
                return Err(bad("indices must satisfy i < j < dim"));
            }
            if v.len() != dim {
                return Err(bad("value has wrong length"));
            }
            if !seen.insert((i, j)) {
                return Err(bad("duplicate entry"));
            }
            for (k, s) in v.iter().enumerate() {
                c[idx(dim, i, j, k)] = s.clone();
                c[idx(dim, j, i, k)] = -s;
            }
        }
        Self::try_new(field, dim, c)
    }

    /// Convenience for integer structure constants: entries `(i, j, k, coeff)`
    /// meaning `[e_i, e_j] += coeff e_k` (0-based, `i < j`).
    pub fn from_int_brackets(
        field: Field,
        dim: usize,
        entries: &[(usize, usize, usize, i64)],
    ) -> Result<Self, LieError> {
        let mut map: std::collections::BTreeMap<(usize, usize), Vec<Scalar>> = Default::default();
        for &(i, j, k, a) in entries {
            if k >= dim {
                return Err(LieError::BadBracket {
                    i,
                    j,
                    reason: "component index out of range".into(),
                });
            }
            let v = map.entry((i, j)).or_insert_with(|| vector::zero(field, dim));
            v[k] += &field.from_i64(a);
        }
        let list: Vec<_> = map.into_iter().map(|((i, j), v)| (i, j, v)).collect();
        Self::from_brackets(field, dim, &list)
    }

    pub fn abelian(field: Field, dim: usize) -> Self {
        Self {
            dim,
            field,
            c: vec![field.zero(); dim * dim * dim],
        }
    }

    /// Heisenberg algebra of dimension `2m+1`: `[e_i, e_{m+i}] = e_{2m+1}`.
    pub fn heisenberg(field: Field, m: usize) -> Self {
        let dim = 2 * m + 1;
        let entries: Vec<_> = (0..m).map(|i| (i, m + i, 2 * m, 1)).collect();
        Self::from_int_brackets(field, dim, &entries).expect("Heisenberg brackets are valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Full structure tensor, index `(i*dim + j)*dim + k`.
    pub fn structure_constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[idx(self.dim, i, j, k)]
    }

    /// `[e_i, e_j]` as a coordinate slice.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let s = idx(self.dim, i, j, 0);
        &self.c[s..s + self.dim]
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), LieError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(LieError::VectorLength {
                dim: self.dim,
                found: v.len(),
            })
        }
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zero(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                vector::axpy(&mut out, &(xi * yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn adjoint(&self, x: &[Scalar]) -> Result<Matrix, LieError> {
        self.check_len(x)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.bracket_unchecked(x, &vector::unit(self.field, self.dim, j)))
            .collect();
        Ok(Matrix::from_columns(self.field, self.dim, &cols)?)
    }

    /// `ad(e_i)`
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.bracket_basis(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket_unchecked(&x, &y);
                if !vector::is_zero(&v) {
                    vecs.push(v);
                }
            }
        }
        Subspace::span(self.field, self.dim, &vecs)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let g = self.full_space();
        self.bracket_subspaces(&g, &g)
    }

    /// `γ_1 = g, γ_{i+1} = [g, γ_i]`, up to and including the first term
    /// that equals its successor.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let g = self.full_space();
        self.descend(|term| self.bracket_subspaces(&g, term))
    }

    /// `g^(0) = g, g^(i+1) = [g^(i), g^(i)]`, until stabilization.
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.descend(|term| self.bracket_subspaces(term, term))
    }

    fn descend(&self, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
        let mut series = vec![self.full_space()];
        loop {
            let last = series.last().expect("nonempty");
            let next = step(last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> NilpotencyClass {
        let series = self.lower_central_series();
        match series.iter().position(Subspace::is_zero) {
            Some(c) => NilpotencyClass::Nilpotent(c),
            None => NilpotencyClass::NotNilpotent,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class() != NilpotencyClass::NotNilpotent
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    /// Nilpotent of class at most 2 (this includes abelian algebras).
    pub fn is_at_most_two_step(&self) -> bool {
        matches!(self.nilpotency_class(), NilpotencyClass::Nilpotent(c) if c <= 2)
    }

    /// Kernel of `x ↦ ad(x)`, with `ad(x)` flattened.
    pub fn center(&self) -> Subspace {
        // Row (j, k), column i: coefficient of e_k in [e_i, e_j].
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m.set(j * n + k, i, self.constant(i, j, k).clone());
                }
            }
        }
        m.kernel()
    }

    /// `Z(g) ⊆ [g, g]`
    pub fn is_stem(&self) -> bool {
        self.center().is_subspace_of(&self.derived_algebra())
    }

    /// Odd dimension ≥ 3, nilpotency class 2, one-dimensional center equal
    /// to the derived algebra.
    pub fn is_heisenberg(&self) -> bool {
        if self.dim < 3 || self.dim.is_multiple_of(2) {
            return false;
        }
        if self.nilpotency_class() != NilpotencyClass::Nilpotent(2) {
            return false;
        }
        let z = self.center();
        z.dim() == 1 && z == self.derived_algebra()
    }

    /// Whether `d[e_i,e_j] = [d e_i, e_j] + [e_i, d e_j]` on all basis pairs.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        if d.rows() != self.dim || d.cols() != self.dim || d.field() != self.field {
            return false;
        }
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|i| d.column(i)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = d.apply(self.bracket_basis(i, j));
                let mut rhs = self.bracket_unchecked(&cols[i], &vector::unit(self.field, self.dim, j));
                let other = self.bracket_unchecked(&vector::unit(self.field, self.dim, i), &cols[j]);
                rhs = vector::add(&rhs, &other);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The derivation algebra as a subspace of `dim²`-dimensional coordinate
    /// space; the coordinate `r*dim + c` is the matrix entry `d[r][c]`.
    pub fn derivation_algebra(&self) -> Subspace {
        let n = self.dim;
        let unknown = |r: usize, c: usize| r * n + c;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // (d[e_i,e_j])_k − [d e_i, e_j]_k − [e_i, d e_j]_k = 0
                    let mut row = vector::zero(self.field, n * n);
                    for r in 0..n {
                        row[unknown(k, r)] += self.constant(i, j, r);
                        row[unknown(r, i)] -= self.constant(r, j, k);
                        row[unknown(r, j)] -= self.constant(i, r, k);
                    }
                    if !vector::is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(self.field, n * n);
        }
        Matrix::from_rows(self.field, rows).expect("rectangular").kernel()
    }

    /// Basis of `Der(g)` as matrices.
    pub fn derivation_basis(&self) -> Vec<Matrix> {
        let n = self.dim;
        self.derivation_algebra()
            .basis()
            .into_iter()
            .map(|v| {
                let rows = v.chunks(n).map(<[Scalar]>::to_vec).collect();
                Matrix::from_rows(self.field, rows).expect("square")
            })
            .collect()
    }
}

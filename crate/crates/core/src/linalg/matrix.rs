use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{vector, Field, LinalgError, Scalar, Subspace};

/// Dense row-major matrix over a single [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, checking that the shape is rectangular and
    /// that every entry lives in `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(LinalgError::Shape(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(LinalgError::FieldMismatch {
                        expected: field,
                        found: s.field(),
                    });
                }
                data.push(s);
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: Field, nrows: usize, cols: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != nrows {
                return Err(LinalgError::Shape(format!(
                    "column {j} has {} entries, expected {nrows}",
                    col.len()
                )));
            }
            for (i, s) in col.iter().enumerate() {
                if s.field() != field {
                    return Err(LinalgError::FieldMismatch {
                        expected: field,
                        found: s.field(),
                    });
                }
                m.data[i * m.cols + j] = s.clone();
            }
        }
        Ok(m)
    }

    /// Integer matrix embedded in `field`.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows).expect("integer rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field mismatch in Matrix::set");
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            data: self.data.iter().map(|x| s * x).collect(),
            ..self.clone()
        }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply: vector length mismatch");
        let mut out = vector::zero(self.field, self.rows);
        for (r, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(r).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Result<Scalar, LinalgError> {
        self.require_square()?;
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix, LinalgError> {
        self.require_square()?;
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Reduced row-echelon form (leftmost pivots, pivots normalized to 1,
    /// pivot columns cleared above and below).
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    /// RREF together with the pivot column of each nonzero row.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = &m.data[row * m.cols + c] * &inv;
                m.data[row * m.cols + c] = v;
            }
            let pivot_row: Vec<Scalar> = m.row(row).to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let neg = -&factor;
                let start = r * m.cols;
                vector::axpy(&mut m.data[start..start + m.cols], &neg, &pivot_row);
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vector::zero(self.field, self.cols);
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            basis.push(v);
        }
        Subspace::span(self.field, self.cols, &basis)
    }

    /// True iff `self^n = 0` for an `n x n` matrix.
    pub fn is_nilpotent(&self) -> Result<bool, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(true);
        }
        // Repeated squaring reaches an exponent >= n in ceil(log2 n) steps.
        let mut acc = self.clone();
        let mut e = 1usize;
        while e < n {
            acc = &acc * &acc;
            e *= 2;
            if acc.is_zero() {
                return Ok(true);
            }
        }
        Ok(acc.is_zero())
    }

    /// Row-stacks matrices with a common column count.
    pub fn vstack(field: Field, blocks: &[Matrix]) -> Result<Matrix, LinalgError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(LinalgError::Shape("vstack column mismatch".into()));
            }
            if b.field != field {
                return Err(LinalgError::FieldMismatch {
                    expected: field,
                    found: b.field,
                });
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field, "matrix product field mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let start = i * rhs.cols;
                vector::axpy(&mut out.data[start..start + rhs.cols], a, rhs.row(k));
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        Matrix {
            data: vector::add(&self.data, &rhs.data),
            ..self.clone()
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape mismatch"
        );
        Matrix {
            data: vector::sub(&self.data, &rhs.data),
            ..self.clone()
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            data: vector::neg(&self.data),
            ..self.clone()
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

use super::{Field, Matrix, Scalar};

/// A linear subspace of `field^ambient`, stored by the reduced row-echelon
/// basis of its row space. Two subspaces are equal iff their bases are
/// identical matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of arbitrary (possibly dependent) vectors of length `ambient`.
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, vectors.to_vec()).expect("spanning vectors are well formed");
        assert_eq!(m.cols(), ambient, "spanning vector length mismatch");
        let (r, pivots) = m.rref_with_pivots();
        let rows = r.row_vectors().into_iter().take(pivots.len()).collect::<Vec<_>>();
        let basis = if rows.is_empty() {
            Matrix::zeros(field, 0, ambient)
        } else {
            Matrix::from_rows(field, rows).expect("rows of an rref")
        };
        Self { ambient, basis }
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The canonical RREF basis matrix (rows are basis vectors).
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.basis();
        rows.push(v.to_vec());
        Subspace::span(self.field(), self.ambient, &rows).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis();
        rows.extend(other.basis());
        Subspace::span(self.field(), self.ambient, &rows)
    }

    /// Linear forms vanishing on this subspace, as a subspace of the dual
    /// coordinates.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let stacked = self.annihilator().sum(&other.annihilator());
        if stacked.is_zero() {
            return Subspace::full(self.field(), self.ambient);
        }
        stacked.basis.kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let q = Field::Rational;
        let a = Subspace::span(q, 3, &[v(&[1, 1, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(q, 3, &[v(&[2, 0, 0]), v(&[3, 5, 0]), v(&[1, 1, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[7, -2, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_and_sum() {
        let q = Field::Rational;
        let a = Subspace::span(q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(q, 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(q, 3, &[v(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
        assert_eq!(a.intersection(&Subspace::zero(q, 3)), Subspace::zero(q, 3));
        assert_eq!(a.intersection(&Subspace::full(q, 3)), a);
    }
}

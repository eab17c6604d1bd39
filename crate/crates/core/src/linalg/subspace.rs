use super::error::LinalgError;
use super::field::Field;
use super::matrix::Matrix;

/// A linear subspace of `F^n`, stored by its reduced row echelon basis.
///
/// The RREF basis is canonical, so two subspaces are equal iff their stored
/// bases are equal.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<F>]) -> Result<Self, LinalgError> {
        let mut m = Matrix::from_rows(ambient_dim, vectors.to_vec())?;
        let pivots = m.row_reduce();
        let rows: Vec<Vec<F>> = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Ok(Self {
            ambient_dim,
            basis: Matrix::from_rows(ambient_dim, rows)?,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[F]) -> Result<(), LinalgError> {
        if v.len() == self.ambient_dim {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                actual: v.len(),
            })
        }
    }

    /// Normal form of `v` modulo the subspace: zero at every pivot column.
    pub fn residual(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        self.check_len(v)?;
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in r.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *x = x.clone() - c.clone() * b.clone();
                }
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[F]) -> Result<bool, LinalgError> {
        Ok(self.residual(v)?.iter().all(|x| x.is_zero()))
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                actual: other.ambient_dim,
            });
        }
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Self::span(self.ambient_dim, &vectors)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, LinalgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                actual: other.ambient_dim,
            });
        }
        let (a, b) = (self.dim(), other.dim());
        // columns: [A^T | -B^T]; kernel vectors (s, t) give s*A = t*B
        let mut stacked = Matrix::zeros(self.ambient_dim, a + b);
        for j in 0..self.ambient_dim {
            for i in 0..a {
                stacked[(j, i)] = self.basis[(i, j)].clone();
            }
            for i in 0..b {
                stacked[(j, a + i)] = -other.basis[(i, j)].clone();
            }
        }
        let vectors = stacked
            .nullspace()
            .into_iter()
            .map(|k| self.basis.combine_rows(&k[..a]))
            .collect::<Result<Vec<_>, _>>()?;
        Self::span(self.ambient_dim, &vectors)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Non-pivot columns; the unit vectors at these indices span a
    /// complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&j| !is_pivot[j]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_integer(x)).collect()
    }

    #[test]
    fn span_of_unit_vectors() {
        let s = Subspace::span(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn sum_is_idempotent() {
        let s = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(s.sum(&s).unwrap().dim(), 1);
    }

    #[test]
    fn membership_by_scaling() {
        let s = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        assert!(s.contains(&v(&[2, 2])).unwrap());
        assert!(!s.contains(&v(&[2, 1])).unwrap());
        assert_eq!(s.coordinates(&v(&[2, 2])).unwrap(), Some(v(&[2])));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let c = a.intersection(&b).unwrap();
        assert_eq!(c, Subspace::span(3, &[v(&[0, 1, 0])]).unwrap());
    }

    #[test]
    fn mismatched_dimensions_error() {
        let a = Subspace::<Q>::zero(2);
        let b = Subspace::<Q>::zero(3);
        assert!(a.sum(&b).is_err());
        assert!(a.contains(&v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn complement_spans_quotient() {
        let s = Subspace::span(3, &[v(&[1, 1, 0])]).unwrap();
        assert_eq!(s.complement_indices(), vec![1, 2]);
    }
}

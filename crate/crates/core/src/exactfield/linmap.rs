use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::sparse::{Acc, Echelon, SVec};
use crate::error::{Error, Result};

/// A linear map `field^src -> field^tgt` stored as sparse images of the
/// standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinMap {
    field: Field,
    tgt: usize,
    cols: Vec<SVec>,
}

/// Index of `e_i ⊗ e_j` in `field^m ⊗ field^n`.
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    i * n + j
}

/// `a ⊗ b` with `b` living in a space of dimension `n`.
pub fn tensor_vec(a: &SVec, b: &SVec, n: usize) -> SVec {
    let mut out = Vec::with_capacity(a.nnz() * b.nnz());
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.push((i * n + j, x * y));
        }
    }
    // Row-major order of (i, j) is already increasing.
    SVec::from_pairs(out)
}

impl LinMap {
    pub fn new(field: Field, tgt: usize, cols: Vec<SVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.bound() <= tgt));
        LinMap { field, tgt, cols }
    }

    pub fn from_fn(field: Field, src: usize, tgt: usize, f: impl Fn(usize) -> SVec) -> Self {
        LinMap::new(field, tgt, (0..src).map(f).collect())
    }

    pub fn zero(field: Field, src: usize, tgt: usize) -> Self {
        LinMap::new(field, tgt, vec![SVec::zero(); src])
    }

    pub fn identity(field: Field, n: usize) -> Self {
        LinMap::from_fn(field, n, n, |i| SVec::unit(i, field))
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        LinMap::new(m.field(), m.rows(), m.columns())
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.tgt, &self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn src(&self) -> usize {
        self.cols.len()
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn col(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SVec] {
        &self.cols
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = Acc::new();
        for (j, x) in v.iter() {
            acc.add_vec(x, &self.cols[*j]);
        }
        acc.into_svec()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> LinMap {
        assert_eq!(inner.tgt, self.src(), "composable maps");
        LinMap::new(self.field, self.tgt, inner.cols.iter().map(|c| self.apply(c)).collect())
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.src(), self.tgt), (other.src(), other.tgt), "map shapes");
        LinMap::new(self.field, self.tgt, self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.src(), self.tgt), (other.src(), other.tgt), "map shapes");
        LinMap::new(self.field, self.tgt, self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap::new(self.field, self.tgt, self.cols.iter().map(|v| v.scale(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.src() == self.tgt && self.cols.iter().enumerate().all(|(i, c)| *c == SVec::unit(i, self.field))
    }

    /// `self ⊗ other` on the row-major tensor index.
    pub fn tensor(&self, other: &LinMap) -> LinMap {
        let (m, n) = (self.src(), other.src());
        let tn = other.tgt;
        LinMap::from_fn(self.field, m * n, self.tgt * tn, |k| tensor_vec(&self.cols[k / n], &other.cols[k % n], tn))
    }

    pub fn transpose(&self) -> LinMap {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.tgt];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                rows[*i].push((j, x.clone()));
            }
        }
        LinMap::new(self.field, self.src(), rows.into_iter().map(SVec::from_pairs).collect())
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.field, self.cols.iter()).rank()
    }

    /// Flattened column-major coordinates: entry `(i, j)` sits at `j * tgt + i`.
    pub fn flatten(&self) -> SVec {
        SVec::from_pairs(
            self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (j * self.tgt + i, x.clone()))),
        )
    }

    pub fn unflatten(field: Field, src: usize, tgt: usize, v: &SVec) -> LinMap {
        let mut cols = vec![Vec::new(); src];
        for (k, x) in v.iter() {
            cols[k / tgt].push((k % tgt, x.clone()));
        }
        LinMap::new(field, tgt, cols.into_iter().map(SVec::from_pairs).collect())
    }

    /// Two-sided inverse, or `None` when singular.
    pub fn invert(&self) -> Result<Option<LinMap>> {
        if self.src() != self.tgt {
            return Err(Error::dim(format!("cannot invert a {}x{} map", self.tgt, self.src())));
        }
        let n = self.tgt;
        // Rows (M e_j | e_j); a combination c with first half e_i has M c = e_i.
        let mut e = Echelon::new(self.field);
        for (j, c) in self.cols.iter().enumerate() {
            e.insert(&c.add(&SVec::unit(n + j, self.field)));
        }
        if e.rank() < n || e.pivots()[n - 1] >= n {
            return Ok(None);
        }
        let cols = e.rref_rows().iter().map(|r| r.window(n, 2 * n)).collect();
        Ok(Some(LinMap::new(self.field, n, cols)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_ints(f, &[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        let l = LinMap::from_matrix(&m);
        let inv = l.invert().unwrap().unwrap();
        assert!(l.compose(&inv).is_identity());
        assert!(inv.compose(&l).is_identity());
        assert_eq!(inv.to_matrix(), m.invert().unwrap().unwrap());
        let sing = LinMap::from_matrix(&Matrix::from_ints(f, &[&[1, 2], &[2, 4]]));
        assert_eq!(sing.invert().unwrap(), None);
    }

    #[test]
    fn tensor_matches_kron() {
        let q = Field::Rationals;
        let a = Matrix::from_ints(q, &[&[1, 2], &[0, 3]]);
        let b = Matrix::from_ints(q, &[&[0, 1, 1], &[1, 0, 2]]);
        let t = LinMap::from_matrix(&a).tensor(&LinMap::from_matrix(&b));
        assert_eq!(t.to_matrix(), a.kron(&b));
    }

    #[test]
    fn flatten_round_trip() {
        let q = Field::Rationals;
        let l = LinMap::from_matrix(&Matrix::from_ints(q, &[&[1, 0, 5], &[0, -2, 0]]));
        assert_eq!(LinMap::unflatten(q, 3, 2, &l.flatten()), l);
        assert_eq!(l.transpose().transpose(), l);
    }
}

//! Finite-dimensional associative unital algebras by structure constants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{tensor_vec, Acc, Field, LinMap, SVec, Scalar};
use crate::report::Report;

/// A finite-dimensional algebra: `e_i e_j = table[i * dim + j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    field: Field,
    dim: usize,
    table: Vec<SVec>,
    unit: SVec,
}

/// Shared handle; algebras are immutable and referenced from many structures.
pub type Alg = Arc<FiniteAlgebra>;

impl FiniteAlgebra {
    /// Structural validation only; axioms are checked by [`check_algebra`].
    pub fn new(field: Field, dim: usize, table: Vec<SVec>, unit: SVec) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::dim(format!("structure table has {} products, expected {}", table.len(), dim * dim)));
        }
        if table.iter().chain(std::iter::once(&unit)).any(|v| v.bound() > dim) {
            return Err(Error::dim("structure constant index out of range"));
        }
        Ok(FiniteAlgebra { field, dim, table, unit })
    }

    /// From dense constants `c[i][j][k]`.
    pub fn from_constants(field: Field, c: &[Vec<Vec<Scalar>>], unit: &[Scalar]) -> Result<Self> {
        let dim = c.len();
        if unit.len() != dim {
            return Err(Error::dim(format!("unit has length {}, expected {dim}", unit.len())));
        }
        let mut table = Vec::with_capacity(dim * dim);
        for row in c {
            if row.len() != dim {
                return Err(Error::dim("structure constants are not a cube"));
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::dim("structure constants are not a cube"));
                }
                table.push(SVec::from_dense(v));
            }
        }
        FiniteAlgebra::new(field, dim, table, SVec::from_dense(unit))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &SVec {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> SVec {
        SVec::unit(i, self.field)
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &SVec {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, a: &SVec, b: &SVec) -> SVec {
        let mut acc = Acc::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let xy = x * y;
                acc.add_vec(&xy, self.basis_mul(*i, *j));
            }
        }
        acc.into_svec()
    }

    /// `x ↦ a x`.
    pub fn left_mul(&self, a: &SVec) -> LinMap {
        LinMap::from_fn(self.field, self.dim, self.dim, |j| self.mul(a, &self.basis(j)))
    }

    /// `x ↦ x a`.
    pub fn right_mul(&self, a: &SVec) -> LinMap {
        LinMap::from_fn(self.field, self.dim, self.dim, |j| self.mul(&self.basis(j), a))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_mul(i, j) == self.basis_mul(j, i)))
    }

    pub fn constants_dense(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_mul(i, j).to_dense(self.field, self.dim)).collect())
            .collect()
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        FiniteAlgebra { field, dim: 1, table: vec![SVec::unit(0, field)], unit: SVec::unit(0, field) }
    }

    /// `Mat_n`, basis `e_ij` at index `i * n + j`.
    pub fn matrix(field: Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("matrix algebra of size 0"));
        }
        let d = n * n;
        let mut table = vec![SVec::zero(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[(i * n + j) * d + (j * n + l)] = SVec::unit(i * n + l, field);
                }
            }
        }
        let unit = SVec::from_pairs((0..n).map(|i| (i * n + i, field.one())));
        FiniteAlgebra::new(field, d, table, unit)
    }

    /// `Diag_n`: orthogonal idempotents summing to 1.
    pub fn diagonal(field: Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("diagonal algebra of size 0"));
        }
        let mut table = vec![SVec::zero(); n * n];
        for i in 0..n {
            table[i * n + i] = SVec::unit(i, field);
        }
        let unit = SVec::from_pairs((0..n).map(|i| (i, field.one())));
        FiniteAlgebra::new(field, n, table, unit)
    }

    /// Group algebra from a Cayley table `table[g][h] = gh`.
    pub fn group(field: Field, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        validate_group(table)?;
        let e = group_identity(table).expect("validated group has an identity");
        let mut t = Vec::with_capacity(n * n);
        for row in table {
            for &gh in row {
                t.push(SVec::unit(gh, field));
            }
        }
        FiniteAlgebra::new(field, n, t, SVec::unit(e, field))
    }

    /// `k[x]/(x^n)` with basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("truncated polynomial algebra of size 0"));
        }
        let mut table = vec![SVec::zero(); n * n];
        for i in 0..n {
            for j in 0..n - i {
                table[i * n + j] = SVec::unit(i + j, field);
            }
        }
        FiniteAlgebra::new(field, n, table, SVec::unit(0, field))
    }

    /// `A ⊗ B` with `(a ⊗ b)(a' ⊗ b') = aa' ⊗ bb'`, basis index `i * dim B + j`.
    pub fn tensor(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Self> {
        if a.field != b.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)));
        }
        let (m, n) = (a.dim, b.dim);
        let d = m * n;
        let mut table = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                let (i, j) = (x / n, x % n);
                let (k, l) = (y / n, y % n);
                table.push(tensor_vec(a.basis_mul(i, k), b.basis_mul(j, l), n));
            }
        }
        FiniteAlgebra::new(a.field, d, table, tensor_vec(&a.unit, &b.unit, n))
    }

    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let table = (0..n * n).map(|x| self.table[(x % n) * n + x / n].clone()).collect();
        FiniteAlgebra { field: self.field, dim: n, table, unit: self.unit.clone() }
    }
}

fn group_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
}

/// Checks closure, associativity, identity and inverses of a Cayley table.
pub fn validate_group(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    if n == 0 {
        return Err(Error::invalid("empty group table"));
    }
    for (g, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid(format!("row {g} of the group table has length {}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::invalid(format!("group table is not closed: {bad} in row {g}")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::invalid(format!("group table is not associative at ({a},{b},{c})")));
                }
            }
        }
    }
    let e = group_identity(table).ok_or_else(|| Error::invalid("group table has no identity"))?;
    for (g, row) in table.iter().enumerate() {
        if !(0..n).any(|h| row[h] == e && table[h][g] == e) {
            return Err(Error::invalid(format!("element {g} has no inverse")));
        }
    }
    Ok(())
}

/// Cayley table of `Z/n` with elements `0..n`.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Cayley table of a direct product; element `(g, h)` has index `g * |H| + h`.
pub fn product_group_table(g: &[Vec<usize>], h: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let m = h.len();
    let n = g.len() * m;
    (0..n).map(|x| (0..n).map(|y| g[x / m][y / m] * m + h[x % m][y % m]).collect()).collect()
}

pub fn check_algebra(a: &FiniteAlgebra) -> Report {
    let mut r = Report::new("algebra");
    let n = a.dim;
    let mut bad = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = a.basis_mul(i, j);
            for l in 0..n {
                let left = a.mul(ij, &a.basis(l));
                let right = a.mul(&a.basis(i), a.basis_mul(j, l));
                if left != right {
                    bad = Some((i, j, l));
                    break 'outer;
                }
            }
        }
    }
    r.check("alg.associative", bad.is_none(), || {
        let (i, j, l) = bad.unwrap();
        format!("(e_{i} e_{j}) e_{l} != e_{i} (e_{j} e_{l})")
    });
    let left_bad = (0..n).find(|&i| a.mul(a.unit(), &a.basis(i)) != a.basis(i));
    r.check("alg.unit_left", left_bad.is_none(), || format!("1 e_{} != e_{}", left_bad.unwrap(), left_bad.unwrap()));
    let right_bad = (0..n).find(|&i| a.mul(&a.basis(i), a.unit()) != a.basis(i));
    r.check("alg.unit_right", right_bad.is_none(), || {
        format!("e_{} 1 != e_{}", right_bad.unwrap(), right_bad.unwrap())
    });
    r
}

/// A linear map between algebras, to be checked as a (anti-)homomorphism.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Alg,
    pub target: Alg,
    pub map: LinMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    /// `f(xy) = f(y) f(x)`.
    Anti,
}

impl AlgebraMap {
    pub fn new(source: Alg, target: Alg, map: LinMap) -> Result<Self> {
        if source.field() != target.field() || map.field() != source.field() {
            return Err(Error::FieldMismatch("algebra map over different fields".into()));
        }
        if map.src() != source.dim() || map.tgt() != target.dim() {
            return Err(Error::dim(format!(
                "map is {}x{}, algebras have dims {} -> {}",
                map.tgt(),
                map.src(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(AlgebraMap { source, target, map })
    }

    pub fn apply(&self, x: &SVec) -> SVec {
        self.map.apply(x)
    }
}

pub fn check_algebra_map(f: &AlgebraMap, kind: MapKind) -> Report {
    let mut r = Report::new("algebra map");
    let (a, b) = (&f.source, &f.target);
    let mut bad = None;
    'outer: for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.apply(a.basis_mul(i, j));
            let (fi, fj) = (f.map.col(i), f.map.col(j));
            let rhs = match kind {
                MapKind::Homomorphism => b.mul(fi, fj),
                MapKind::Anti => b.mul(fj, fi),
            };
            if lhs != rhs {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    let id = match kind {
        MapKind::Homomorphism => "algmap.multiplicative",
        MapKind::Anti => "algmap.anti_multiplicative",
    };
    r.check(id, bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("fails on (e_{i}, e_{j})")
    });
    r.check("algmap.unital", f.apply(a.unit()) == *b.unit(), || "f(1) != 1".into());
    r
}

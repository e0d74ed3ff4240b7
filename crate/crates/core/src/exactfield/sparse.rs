use std::collections::{BTreeMap, HashMap};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SVec {
    entries: Vec<(usize, Scalar)>,
}

impl SVec {
    pub fn zero() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: Field) -> Self {
        SVec { entries: vec![(i, field.one())] }
    }

    pub fn single(i: usize, x: Scalar) -> Self {
        if x.is_zero() {
            return SVec::zero();
        }
        SVec { entries: vec![(i, x)] }
    }

    /// Builds from arbitrary pairs, summing repeated indices.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc = Acc::new();
        for (i, x) in pairs {
            acc.add(i, &x);
        }
        acc.into_svec()
    }

    pub fn from_dense(xs: &[Scalar]) -> Self {
        SVec { entries: xs.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, field: Field, n: usize) -> Vec<Scalar> {
        let mut out = vec![field.zero(); n];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn coeff(&self, i: usize, field: Field) -> Scalar {
        self.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    /// One past the largest index present.
    pub fn bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        if c.is_zero() {
            return SVec::zero();
        }
        SVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> SVec {
        SVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    /// `self + c * other` by a sorted merge.
    pub fn add_scaled(&self, c: &Scalar, other: &SVec) -> SVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let mut s = x.clone();
                        s.add_mul(c, y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &SVec) -> SVec {
        match other.leading() {
            None => self.clone(),
            Some((_, x)) => self.add_scaled(&x.field().one(), other),
        }
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        match other.leading() {
            None => self.clone(),
            Some((_, x)) => self.add_scaled(&-&x.field().one(), other),
        }
    }

    /// Reindexes every entry; `f` must be injective.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SVec {
        SVec::from_pairs(self.entries.iter().map(|(i, x)| (f(*i), x.clone())))
    }

    pub fn shifted(&self, offset: usize) -> SVec {
        SVec { entries: self.entries.iter().map(|(i, x)| (i + offset, x.clone())).collect() }
    }

    /// Entries with index in `lo..hi`, shifted down by `lo`.
    pub fn window(&self, lo: usize, hi: usize) -> SVec {
        SVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, x)| (i - lo, x.clone()))
                .collect(),
        }
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }
}

/// Accumulator for building linear combinations out of order.
#[derive(Clone, Debug, Default)]
pub struct Acc {
    map: BTreeMap<usize, Scalar>,
}

impl Acc {
    pub fn new() -> Self {
        Acc::default()
    }

    pub fn add(&mut self, i: usize, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(s) => *s = &*s + x,
            None => {
                self.map.insert(i, x.clone());
            }
        }
    }

    pub fn add_mul(&mut self, i: usize, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(s) => s.add_mul(a, b),
            None => {
                self.map.insert(i, a * b);
            }
        }
    }

    pub fn add_vec(&mut self, c: &Scalar, v: &SVec) {
        if c.is_one() {
            for (i, x) in v.iter() {
                self.add(*i, x);
            }
            return;
        }
        for (i, x) in v.iter() {
            self.add_mul(*i, c, x);
        }
    }

    pub fn into_svec(self) -> SVec {
        SVec { entries: self.map.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }
}

/// Incremental row echelon form of a span of sparse vectors.
///
/// Every stored row has leading coefficient 1 and is reduced against the rows
/// that were present when it was inserted. Reduction walks columns in
/// increasing order, so the normal form of a vector is unique: it vanishes at
/// every pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<SVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn from_rows<'a>(field: Field, rows: impl IntoIterator<Item = &'a SVec>) -> Self {
        let mut e = Echelon::new(field);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&c)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Normal form of `v` modulo the span.
    pub fn reduce(&self, v: &SVec) -> SVec {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut map: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let next = map.range(cursor..).find(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let row = &self.rows[self.pivot_row[&c]];
            let f = -&x;
            for (j, y) in row.iter() {
                match map.get_mut(j) {
                    Some(s) => {
                        s.add_mul(&f, y);
                        if s.is_zero() {
                            map.remove(j);
                        }
                    }
                    None => {
                        map.insert(*j, &f * y);
                    }
                }
            }
            cursor = c + 1;
        }
        SVec { entries: map.into_iter().collect() }
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// The stored (not back-substituted) echelon rows; they span the same space.
    pub fn rows(&self) -> &[SVec] {
        &self.rows
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let w = self.reduce(v);
        let Some((c, lead)) = w.leading().cloned() else {
            return false;
        };
        let w = w.scale(&lead.inv().expect("nonzero leading entry"));
        self.pivot_row.insert(c, self.rows.len());
        self.rows.push(w);
        true
    }

    /// Rows of the reduced row echelon form, sorted by pivot column.
    pub fn rref_rows(&self) -> Vec<SVec> {
        let mut out: Vec<(usize, SVec)> = self
            .rows
            .iter()
            .map(|r| {
                let (c, one) = r.leading().cloned().expect("stored rows are nonzero");
                let tail = SVec { entries: r.entries[1..].to_vec() };
                let mut reduced = self.reduce(&tail);
                reduced = SVec::single(c, one).add(&reduced);
                (c, reduced)
            })
            .collect();
        out.sort_by_key(|(c, _)| *c);
        out.into_iter().map(|(_, r)| r).collect()
    }
}

/// Basis of the solution space of homogeneous equations in `n` unknowns.
///
/// One basis vector per free column of the reduced system.
pub fn kernel(field: Field, n: usize, equations: impl IntoIterator<Item = SVec>) -> Vec<SVec> {
    let mut e = Echelon::new(field);
    for eq in equations {
        e.insert(&eq);
        if e.rank() == n {
            return Vec::new();
        }
    }
    let rows = e.rref_rows();
    let mut by_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for r in &rows {
        let (p, _) = r.leading().expect("nonzero row");
        for (j, x) in r.iter().skip(1) {
            by_free.entry(*j).or_default().push((*p, -x));
        }
    }
    (0..n)
        .filter(|c| !e.is_pivot(*c))
        .map(|f| {
            let mut pairs = by_free.remove(&f).unwrap_or_default();
            pairs.push((f, field.one()));
            SVec::from_pairs(pairs)
        })
        .collect()
}

/// Some solution of the affine system `row · x = rhs` in `n` unknowns, free
/// variables set to zero; `None` when the system is inconsistent.
pub fn solve_affine(field: Field, n: usize, rows: impl IntoIterator<Item = (SVec, Scalar)>) -> Option<SVec> {
    let mut e = Echelon::new(field);
    for (row, rhs) in rows {
        if row.bound() > n {
            panic!("equation mentions an unknown beyond {n}");
        }
        e.insert(&row.add(&SVec::single(n, rhs)));
        if e.is_pivot(n) {
            return None;
        }
    }
    let pairs = e.rref_rows().into_iter().filter_map(|r| {
        let (p, _) = *r.leading().expect("nonzero row");
        r.get(n).map(|x| (p, x.clone()))
    });
    Some(SVec::from_pairs(pairs))
}

/// A subspace of `field^n` with a fixed basis and coordinate extraction.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<SVec>,
    ech: Echelon,
}

impl Subspace {
    /// Fails if the vectors are linearly dependent.
    pub fn new(field: Field, ambient: usize, basis: Vec<SVec>) -> Result<Self> {
        let mut ech = Echelon::new(field);
        for (i, b) in basis.iter().enumerate() {
            if b.bound() > ambient {
                return Err(Error::dim("basis vector outside the ambient space"));
            }
            let tagged = b.add(&SVec::unit(ambient + i, field));
            ech.insert(&tagged);
            if ech.pivots().last().is_some_and(|&p| p >= ambient) {
                return Err(Error::invalid("subspace basis is linearly dependent"));
            }
        }
        Ok(Subspace { field, ambient, basis, ech })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SVec] {
        &self.basis
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.ech.reduce(v).window(0, self.ambient).is_zero()
    }

    /// Coordinates of `v` in the stored basis; `None` if `v` is outside.
    pub fn coords(&self, v: &SVec) -> Option<SVec> {
        let r = self.ech.reduce(v);
        if !r.window(0, self.ambient).is_zero() {
            return None;
        }
        Some(r.window(self.ambient, self.ambient + self.dim()).neg())
    }

    pub fn from_coords(&self, c: &SVec) -> SVec {
        let mut acc = Acc::new();
        for (i, x) in c.iter() {
            acc.add_vec(x, &self.basis[*i]);
        }
        acc.into_svec()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn v(xs: &[i64]) -> SVec {
        SVec::from_dense(&xs.iter().map(|&x| q().int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn merge_arithmetic() {
        let a = v(&[1, 0, 2]);
        let b = v(&[0, 3, -2]);
        assert_eq!(a.add(&b), v(&[1, 3, 0]));
        assert_eq!(a.sub(&a), SVec::zero());
        assert_eq!(a.add_scaled(&q().int(2), &b), v(&[1, 6, -2]));
    }

    #[test]
    fn echelon_normal_forms() {
        let mut e = Echelon::new(q());
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(!e.insert(&v(&[1, 2, 1])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), vec![0, 1]);
        // x - y + z is the invariant functional, so e_2 normalizes to itself
        // and e_0 normalizes to e_2.
        assert_eq!(e.reduce(&v(&[1, 0, 0])), v(&[0, 0, 1]));
        assert_eq!(e.rref_rows(), vec![v(&[1, 0, -1]), v(&[0, 1, 1])]);
    }

    #[test]
    fn kernel_matches_dense() {
        let eqs = vec![v(&[1, 2, 3, 4]), v(&[2, 4, 6, 8]), v(&[0, 0, 1, 1])];
        let k = kernel(q(), 4, eqs.clone());
        assert_eq!(k.len(), 2);
        for x in &k {
            for eq in &eqs {
                let dot = eq.iter().fold(q().zero(), |s, (i, a)| &s + &(a * &x.coeff(*i, q())));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn affine_solutions() {
        let rows = vec![(v(&[1, 2]), q().int(3)), (v(&[2, 4]), q().int(6))];
        assert_eq!(solve_affine(q(), 2, rows), Some(v(&[3])));
        let bad = vec![(v(&[1, 1]), q().int(1)), (v(&[2, 2]), q().int(1))];
        assert_eq!(solve_affine(q(), 2, bad), None);
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::new(q(), 3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let w = v(&[2, 5, 3]);
        let c = s.coords(&w).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert_eq!(s.from_coords(&c), w);
        assert!(s.coords(&v(&[1, 0, 0])).is_none());
        assert!(Subspace::new(q(), 2, vec![v(&[1, 1]), v(&[2, 2])]).is_err());
    }
}

//! Bimodules by action matrices, tensor products over rings as explicit
//! quotients, Hom spaces of module maps, and progenerator certification.

use std::sync::Arc;

use crate::algkit::{Alg, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactfield::{kernel, solve_affine, tensor_vec, Acc, Echelon, Field, LinMap, Matrix, SVec, Subspace};
use crate::report::Report;

/// `Σ_i x_i ops[i]`: the operator of a general algebra element.
pub fn combine(field: Field, dim: usize, ops: &[LinMap], x: &SVec) -> LinMap {
    let mut cols: Vec<Acc> = vec![Acc::new(); dim];
    for (i, c) in x.iter() {
        for (j, col) in ops[*i].cols().iter().enumerate() {
            cols[j].add_vec(c, col);
        }
    }
    LinMap::new(field, dim, cols.into_iter().map(Acc::into_svec).collect())
}

/// An `A`-`B`-bimodule: `left_act[i]` is `m ↦ e_i ▷ m`, `right_act[j]` is `m ↦ m ◁ e_j`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: Alg,
    pub right: Alg,
    pub dim: usize,
    pub left_act: Vec<LinMap>,
    pub right_act: Vec<LinMap>,
}

impl Bimodule {
    pub fn new(left: Alg, right: Alg, dim: usize, left_act: Vec<LinMap>, right_act: Vec<LinMap>) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::FieldMismatch("bimodule algebras over different fields".into()));
        }
        if left_act.len() != left.dim() || right_act.len() != right.dim() {
            return Err(Error::dim("one action matrix per basis element is required"));
        }
        if left_act.iter().chain(&right_act).any(|m| m.src() != dim || m.tgt() != dim) {
            return Err(Error::dim(format!("action matrices must be {dim}x{dim}")));
        }
        Ok(Bimodule { left, right, dim, left_act, right_act })
    }

    /// A right module, seen as a bimodule over the ground field on the left.
    pub fn right_module(right: Alg, dim: usize, act: Vec<LinMap>) -> Result<Self> {
        let field = right.field();
        let k = Arc::new(FiniteAlgebra::ground(field));
        Bimodule::new(k, right, dim, vec![LinMap::identity(field, dim)], act)
    }

    /// `A` over `(A, A)`.
    pub fn regular(a: &Alg) -> Self {
        let left = (0..a.dim()).map(|i| a.left_mul(&a.basis(i))).collect();
        let right = (0..a.dim()).map(|i| a.right_mul(&a.basis(i))).collect();
        Bimodule::new(a.clone(), a.clone(), a.dim(), left, right).expect("regular bimodule shapes")
    }

    /// `A` as a right module over itself.
    pub fn right_regular(a: &Alg) -> Self {
        let right = (0..a.dim()).map(|i| a.right_mul(&a.basis(i))).collect();
        Bimodule::right_module(a.clone(), a.dim(), right).expect("regular module shapes")
    }

    /// Column vectors `B^n` over `(k, B)`; coordinate `(i, b)` sits at `i * dim B + b`.
    pub fn free_right(b: &Alg, n: usize) -> Self {
        let d = b.dim();
        let right = (0..d)
            .map(|j| {
                let r = b.right_mul(&b.basis(j));
                LinMap::from_fn(b.field(), n * d, n * d, |x| r.col(x % d).shifted((x / d) * d))
            })
            .collect();
        Bimodule::right_module(b.clone(), n * d, right).expect("free module shapes")
    }

    /// `M ⊕ N`; coordinates of `N` follow those of `M`.
    pub fn direct_sum(m: &Bimodule, n: &Bimodule) -> Result<Self> {
        if m.left != n.left || m.right != n.right {
            return Err(Error::invalid("direct sum of bimodules over different algebras"));
        }
        let d = m.dim + n.dim;
        let f = m.field();
        let sum = |a: &LinMap, b: &LinMap| {
            LinMap::from_fn(f, d, d, |x| if x < m.dim { a.col(x).clone() } else { b.col(x - m.dim).shifted(m.dim) })
        };
        let left = m.left_act.iter().zip(&n.left_act).map(|(a, b)| sum(a, b)).collect();
        let right = m.right_act.iter().zip(&n.right_act).map(|(a, b)| sum(a, b)).collect();
        Bimodule::new(m.left.clone(), m.right.clone(), d, left, right)
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn left_op(&self, a: &SVec) -> LinMap {
        combine(self.field(), self.dim, &self.left_act, a)
    }

    pub fn right_op(&self, b: &SVec) -> LinMap {
        combine(self.field(), self.dim, &self.right_act, b)
    }

    pub fn act_left(&self, a: &SVec, m: &SVec) -> SVec {
        let mut acc = Acc::new();
        for (i, x) in a.iter() {
            acc.add_vec(x, &self.left_act[*i].apply(m));
        }
        acc.into_svec()
    }

    pub fn act_right(&self, m: &SVec, b: &SVec) -> SVec {
        let mut acc = Acc::new();
        for (j, y) in b.iter() {
            acc.add_vec(y, &self.right_act[*j].apply(m));
        }
        acc.into_svec()
    }
}

/// Verifies that `ops` is a unital (anti-)representation of `alg`.
fn check_representation(r: &mut Report, prefix: &str, alg: &FiniteAlgebra, dim: usize, ops: &[LinMap], anti: bool) {
    let field = alg.field();
    let unit = combine(field, dim, ops, alg.unit());
    r.check(&format!("{prefix}_unital"), unit.is_identity(), || "the unit does not act as the identity".into());
    let mut bad = None;
    'outer: for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let prod = combine(field, dim, ops, alg.basis_mul(i, j));
            let composed = if anti { ops[j].compose(&ops[i]) } else { ops[i].compose(&ops[j]) };
            if prod != composed {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    r.check(&format!("{prefix}_multiplicative"), bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("action of e_{i} e_{j} differs from the composite")
    });
}

fn first_noncommuting(a: &[LinMap], b: &[LinMap]) -> Option<(usize, usize)> {
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if x.compose(y) != y.compose(x) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn check_bimodule(m: &Bimodule) -> Report {
    let mut r = Report::new("bimodule");
    check_representation(&mut r, "bimod.left", &m.left, m.dim, &m.left_act, false);
    check_representation(&mut r, "bimod.right", &m.right, m.dim, &m.right_act, true);
    let bad = first_noncommuting(&m.left_act, &m.right_act);
    r.check("bimod.commute", bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("left e_{i} and right e_{j} do not commute")
    });
    r
}

/// An `R⊗S`-`R⊗S`-bimodule presented by its four single-algebra actions:
/// lower dots for `R`, upper dots for `S`.
#[derive(Clone, Debug)]
pub struct Multimodule {
    pub r: Alg,
    pub s: Alg,
    pub dim: usize,
    pub lower_left: Vec<LinMap>,
    pub lower_right: Vec<LinMap>,
    pub upper_left: Vec<LinMap>,
    pub upper_right: Vec<LinMap>,
}

impl Multimodule {
    pub fn new(
        r: Alg,
        s: Alg,
        dim: usize,
        lower_left: Vec<LinMap>,
        lower_right: Vec<LinMap>,
        upper_left: Vec<LinMap>,
        upper_right: Vec<LinMap>,
    ) -> Result<Self> {
        if r.field() != s.field() {
            return Err(Error::FieldMismatch("multimodule algebras over different fields".into()));
        }
        if lower_left.len() != r.dim() || lower_right.len() != r.dim() {
            return Err(Error::dim("lower actions need one matrix per basis element of R"));
        }
        if upper_left.len() != s.dim() || upper_right.len() != s.dim() {
            return Err(Error::dim("upper actions need one matrix per basis element of S"));
        }
        let all = lower_left.iter().chain(&lower_right).chain(&upper_left).chain(&upper_right);
        if all.clone().any(|m| m.src() != dim || m.tgt() != dim) {
            return Err(Error::dim(format!("action matrices must be {dim}x{dim}")));
        }
        Ok(Multimodule { r, s, dim, lower_left, lower_right, upper_left, upper_right })
    }

    pub fn field(&self) -> Field {
        self.r.field()
    }

    /// The same data as a bimodule over `(R⊗S, R⊗S)`: `(r⊗s)` acts on the left
    /// as `r.(s·x)` and on the right as `(x.r)·s`.
    pub fn as_bimodule(&self) -> Result<Bimodule> {
        let rs = Arc::new(FiniteAlgebra::tensor(&self.r, &self.s)?);
        let n = self.s.dim();
        let left = (0..rs.dim()).map(|x| self.lower_left[x / n].compose(&self.upper_left[x % n])).collect();
        let right = (0..rs.dim()).map(|x| self.upper_right[x % n].compose(&self.lower_right[x / n])).collect();
        Bimodule::new(rs.clone(), rs, self.dim, left, right)
    }

    fn families(&self) -> [(&str, &Alg, &[LinMap], bool); 4] {
        [
            ("lower_left", &self.r, &self.lower_left, false),
            ("lower_right", &self.r, &self.lower_right, true),
            ("upper_left", &self.s, &self.upper_left, false),
            ("upper_right", &self.s, &self.upper_right, true),
        ]
    }
}

pub fn check_multimodule(m: &Multimodule) -> Report {
    let mut r = Report::new("multimodule");
    let fams = m.families();
    for (name, alg, ops, anti) in &fams {
        check_representation(&mut r, &format!("mm.{name}"), alg, m.dim, ops, *anti);
    }
    for a in 0..4 {
        for b in a + 1..4 {
            let bad = first_noncommuting(fams[a].2, fams[b].2);
            r.check(&format!("mm.commute.{}.{}", fams[a].0, fams[b].0), bad.is_none(), || {
                let (i, j) = bad.unwrap();
                format!("e_{i} and e_{j} do not commute")
            });
        }
    }
    r
}

/// A quotient of `field^ambient` by a relation span.
///
/// The section picks the identity columns at the non-pivot coordinates of the
/// relation span's reduced echelon form; projection is the normal form
/// followed by reading off those coordinates.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    field: Field,
    ambient: usize,
    rel: Echelon,
    free: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl QuotientPresentation {
    pub fn new(field: Field, ambient: usize, relations: impl IntoIterator<Item = SVec>) -> Self {
        let mut rel = Echelon::new(field);
        for v in relations {
            if !v.is_zero() {
                rel.insert(&v);
            }
        }
        QuotientPresentation::from_echelon(ambient, rel)
    }

    fn from_echelon(ambient: usize, rel: Echelon) -> Self {
        let free: Vec<usize> = (0..ambient).filter(|c| !rel.is_pivot(*c)).collect();
        let mut pos = vec![None; ambient];
        for (k, &c) in free.iter().enumerate() {
            pos[c] = Some(k);
        }
        QuotientPresentation { field: rel.field(), ambient, rel, free, pos }
    }

    /// The identity quotient (no relations).
    pub fn trivial(field: Field, ambient: usize) -> Self {
        QuotientPresentation::new(field, ambient, std::iter::empty())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn relation_rank(&self) -> usize {
        self.rel.rank()
    }

    pub fn relations(&self) -> &[SVec] {
        self.rel.rows()
    }

    pub fn project(&self, v: &SVec) -> SVec {
        let r = self.rel.reduce(v);
        SVec::from_pairs(r.into_entries().into_iter().map(|(i, x)| (self.pos[i].expect("normal form is free"), x)))
    }

    pub fn lift(&self, x: &SVec) -> SVec {
        x.map_indices(|k| self.free[k])
    }

    pub fn lift_basis(&self, k: usize) -> SVec {
        SVec::unit(self.free[k], self.field)
    }

    pub fn is_relation(&self, v: &SVec) -> bool {
        self.rel.contains(v)
    }

    pub fn projection_matrix(&self) -> Matrix {
        let cols: Vec<SVec> = (0..self.ambient).map(|i| self.project(&SVec::unit(i, self.field))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn section_matrix(&self) -> Matrix {
        let cols: Vec<SVec> = (0..self.dim()).map(|k| self.lift_basis(k)).collect();
        Matrix::from_columns(self.field, self.ambient, &cols)
    }

    /// The map induced on quotients by an ambient map `f`, after checking
    /// that `f` sends relations to relations.
    pub fn induce(&self, cod: &QuotientPresentation, f: impl Fn(&SVec) -> SVec) -> Result<LinMap> {
        for (k, r) in self.relations().iter().enumerate() {
            let img = f(r);
            if !cod.is_relation(&img) {
                return Err(Error::ill_defined(format!("relation {k} is not mapped into the relation span")));
            }
        }
        Ok(LinMap::from_fn(self.field, self.dim(), cod.dim(), |k| cod.project(&f(&self.lift_basis(k)))))
    }

    /// Like [`induce`](Self::induce) for a map into a plain space.
    pub fn induce_to_space(&self, tgt: usize, f: impl Fn(&SVec) -> SVec) -> Result<LinMap> {
        self.induce(&QuotientPresentation::trivial(self.field, tgt), f)
    }
}

/// `M ⊗ N` modulo `ρ(m) ⊗ n − m ⊗ λ(n)` for every pair `(ρ, λ)` of every family.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub m: usize,
    pub n: usize,
    pub q: QuotientPresentation,
}

impl Tensor {
    pub fn new(field: Field, m: usize, n: usize, families: &[(&[LinMap], &[LinMap])]) -> Self {
        let rels = families.iter().flat_map(|(right, left)| {
            assert_eq!(right.len(), left.len(), "balancing actions come in pairs");
            right.iter().zip(left.iter()).flat_map(move |(rho, lam)| {
                (0..m).flat_map(move |i| {
                    (0..n).map(move |j| {
                        let a = tensor_vec(rho.col(i), &SVec::unit(j, field), n);
                        let b = tensor_vec(&SVec::unit(i, field), lam.col(j), n);
                        a.sub(&b)
                    })
                })
            })
        });
        Tensor { m, n, q: QuotientPresentation::new(field, m * n, rels) }
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn field(&self) -> Field {
        self.q.field()
    }

    /// Class of `a ⊗ b`.
    pub fn pair(&self, a: &SVec, b: &SVec) -> SVec {
        self.q.project(&tensor_vec(a, b, self.n))
    }

    pub fn project(&self, v: &SVec) -> SVec {
        self.q.project(v)
    }

    pub fn lift(&self, x: &SVec) -> SVec {
        self.q.lift(x)
    }

    /// Induced `f ⊗ g` into another tensor quotient.
    pub fn induce_pair(&self, cod: &Tensor, f: &LinMap, g: &LinMap) -> Result<LinMap> {
        let fg = f.tensor(g);
        self.q.induce(&cod.q, |v| fg.apply(v))
    }

    /// Induced `f ⊗ id` on this quotient.
    pub fn induce_left(&self, f: &LinMap) -> Result<LinMap> {
        self.induce_pair(self, f, &LinMap::identity(self.field(), self.n))
    }

    /// Induced `id ⊗ g` on this quotient.
    pub fn induce_right(&self, g: &LinMap) -> Result<LinMap> {
        self.induce_pair(self, &LinMap::identity(self.field(), self.m), g)
    }
}

/// `M ⊗_B N` for `M` a right and `N` a left `B`-module, with the outer
/// actions of `M`'s left algebra and `N`'s right algebra induced on the quotient.
pub fn tensor_over_ring(m: &Bimodule, n: &Bimodule) -> Result<(Tensor, Bimodule)> {
    if m.right != n.left {
        return Err(Error::invalid("balancing algebra differs between the factors"));
    }
    let field = m.field();
    let t = Tensor::new(field, m.dim, n.dim, &[(&m.right_act, &n.left_act)]);
    let id_n = LinMap::identity(field, n.dim);
    let id_m = LinMap::identity(field, m.dim);
    let left = m.left_act.iter().map(|l| t.induce_pair(&t, l, &id_n)).collect::<Result<Vec<_>>>()?;
    let right = n.right_act.iter().map(|r| t.induce_pair(&t, &id_m, r)).collect::<Result<Vec<_>>>()?;
    let out = Bimodule::new(m.left.clone(), n.right.clone(), t.dim(), left, right)?;
    Ok((t, out))
}

/// A space of linear maps `field^src -> field^tgt` with coordinates in a basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: usize,
    pub tgt: usize,
    pub basis: Vec<LinMap>,
    sub: Subspace,
}

impl HomSpace {
    pub fn from_basis(field: Field, src: usize, tgt: usize, basis: Vec<LinMap>) -> Result<Self> {
        let sub = Subspace::new(field, src * tgt, basis.iter().map(LinMap::flatten).collect())?;
        Ok(HomSpace { src, tgt, basis, sub })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.sub.field()
    }

    pub fn coords(&self, f: &LinMap) -> Option<SVec> {
        self.sub.coords(&f.flatten())
    }

    pub fn contains(&self, f: &LinMap) -> bool {
        self.sub.contains(&f.flatten())
    }

    pub fn element(&self, c: &SVec) -> LinMap {
        LinMap::unflatten(self.field(), self.src, self.tgt, &self.sub.from_coords(c))
    }
}

/// Maps `F` with `F ∘ p_acts[b] = m_acts[b] ∘ F` for every `b`.
pub fn intertwiners(field: Field, src: usize, tgt: usize, p_acts: &[LinMap], m_acts: &[LinMap]) -> Result<HomSpace> {
    if p_acts.len() != m_acts.len() {
        return Err(Error::invalid("intertwiners need matching action families"));
    }
    let mut eqs = Vec::new();
    for (rp, rm) in p_acts.iter().zip(m_acts) {
        for p in 0..src {
            let mut rows: Vec<Acc> = vec![Acc::new(); tgt];
            // (F rp)(e_p) = Σ_q rp[q,p] F e_q
            for (q, c) in rp.col(p).iter() {
                for (m, row) in rows.iter_mut().enumerate() {
                    row.add(q * tgt + m, c);
                }
            }
            // (rm F)(e_p) = Σ_m' F[m',p] rm e_m'
            for m2 in 0..tgt {
                for (m, y) in rm.col(m2).iter() {
                    rows[*m].add(p * tgt + m2, &-y);
                }
            }
            eqs.extend(rows.into_iter().map(Acc::into_svec).filter(|v| !v.is_zero()));
        }
    }
    let basis = kernel(field, src * tgt, eqs).iter().map(|v| LinMap::unflatten(field, src, tgt, v)).collect();
    HomSpace::from_basis(field, src, tgt, basis)
}

/// Right-linear maps `P -> M` over the shared right algebra.
pub fn hom_modules(p: &Bimodule, m: &Bimodule) -> Result<HomSpace> {
    if p.right != m.right {
        return Err(Error::invalid("Hom over mismatched right algebras"));
    }
    intertwiners(p.field(), p.dim, m.dim, &p.right_act, &m.right_act)
}

/// `{ x : left[i] x = right[i] x for all i }`.
pub fn centralizer(field: Field, dim: usize, left: &[LinMap], right: &[LinMap]) -> Vec<SVec> {
    let eqs = left.iter().zip(right).flat_map(|(l, r)| l.sub(r).transpose().cols().to_vec()).filter(|v| !v.is_zero());
    kernel(field, dim, eqs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionPair {
    /// `r.x = x.r`
    Lower,
    /// `s·x = x·s`
    Upper,
}

pub fn multimodule_centralizer(m: &Multimodule, pair: ActionPair) -> Vec<SVec> {
    match pair {
        ActionPair::Lower => centralizer(m.field(), m.dim, &m.lower_left, &m.lower_right),
        ActionPair::Upper => centralizer(m.field(), m.dim, &m.upper_left, &m.upper_right),
    }
}

/// Witnesses behind a positive progenerator verdict.
#[derive(Clone, Debug, Default)]
pub struct ProgeneratorWitness {
    /// `Hom_B(P, B)`.
    pub dual: Option<HomSpace>,
    /// `f_i` with `Σ_i e_i ◁ f_i(p) = p`, one per basis vector of `P`.
    pub dual_basis: Vec<LinMap>,
    /// `(k, j, c)`: `1_B = Σ c · h_k(e_j)`.
    pub trace_unit: Vec<(usize, usize, crate::exactfield::Scalar)>,
}

/// Finite generation, projectivity, generator property and faithful balance of `P_B`.
pub fn progenerator_report(p: &Bimodule) -> Result<(Report, ProgeneratorWitness)> {
    let mut r = Report::new("progenerator");
    let field = p.field();
    let b = &p.right;
    let pd = p.dim;
    let mut w = ProgeneratorWitness::default();
    r.pass_with("prog.fin_gen", format!("dimension {pd}"));

    let breg = Bimodule::right_regular(b);
    let dual = hom_modules(p, &breg)?;
    let d = dual.dim();

    // Projectivity: unknowns c[i, k] with f_i = Σ_k c[i,k] h_k and Σ_i e_i ◁ f_i(p) = p.
    let nvars = pd * d;
    let mut var_cols = Vec::with_capacity(nvars);
    for i in 0..pd {
        for h in &dual.basis {
            let col = SVec::from_pairs((0..pd).flat_map(|q| {
                let img = p.act_right(&SVec::unit(i, field), h.col(q));
                img.into_entries().into_iter().map(move |(l, x)| (q * pd + l, x))
            }));
            var_cols.push(col);
        }
    }
    let system = LinMap::new(field, pd * pd, var_cols).transpose();
    let rhs = LinMap::identity(field, pd).flatten();
    let rows = (0..pd * pd).map(|e| (system.col(e).clone(), rhs.coeff(e, field)));
    let sol = solve_affine(field, nvars, rows);
    r.check("prog.projective", sol.is_some(), || "the dual-basis system has no solution".into());
    if let Some(c) = &sol {
        w.dual_basis = (0..pd).map(|i| dual.element(&c.window(i * d, (i + 1) * d))).collect();
    }

    // Generator: 1_B lies in the span of all h_k(e_j).
    let mut gens = Vec::new();
    for (k, h) in dual.basis.iter().enumerate() {
        for j in 0..pd {
            if !h.col(j).is_zero() {
                gens.push(((k, j), h.col(j).clone()));
            }
        }
    }
    let trace = LinMap::new(field, b.dim(), gens.iter().map(|(_, v)| v.clone()).collect());
    let rows = (0..b.dim()).map(|e| (trace.transpose().col(e).clone(), b.unit().coeff(e, field)));
    let unit_sol = solve_affine(field, gens.len(), rows);
    r.check("prog.generator", unit_sol.is_some(), || {
        format!("trace ideal has dimension {} < {}", trace.rank(), b.dim())
    });
    if let Some(c) = unit_sol {
        w.trace_unit = c.iter().map(|(g, x)| (gens[*g].0 .0, gens[*g].0 .1, x.clone())).collect();
    }

    // Faithful balance on both sides.
    let end_b = hom_modules(p, p)?;
    let a_img = Echelon::from_rows(field, p.left_act.iter().map(|l| l.flatten()).collect::<Vec<_>>().iter()).rank();
    let end_a = intertwiners(field, pd, pd, &p.left_act, &p.left_act)?;
    let b_img = Echelon::from_rows(field, p.right_act.iter().map(|l| l.flatten()).collect::<Vec<_>>().iter()).rank();
    let ok = a_img == end_b.dim() && b_img == end_a.dim();
    r.check("prog.faithfully_balanced", ok, || {
        format!(
            "image of A spans {a_img} of End_B(P) (dim {}), image of B spans {b_img} of End_A(P) (dim {})",
            end_b.dim(),
            end_a.dim()
        )
    });
    w.dual = Some(dual);
    Ok((r, w))
}

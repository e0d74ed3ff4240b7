//! Right bialgebroids, their maps, the Sweedler bialgebroid and the monoidal
//! structure on right modules.

use std::sync::Arc;

use crate::algkit::{check_algebra_map, Alg, AlgebraMap, FiniteAlgebra, MapKind};
use crate::cgdkit::{apply_pair, check_coalgebroid, sweedler_unit, Coalgebroid};
use crate::error::{Error, Result};
use crate::exactfield::{tensor_vec, Acc, Field, LinMap, SVec, Scalar};
use crate::modkit::{check_bimodule, check_multimodule, Bimodule, Multimodule, Tensor};
use crate::report::Report;

/// A right bialgebroid `A` over `R`.
///
/// Upper dots `r·a·r' = a t(r) s(r')` and lower dots `r.a.r' = s(r) t(r') a`
/// are derived from the source and target maps.
#[derive(Clone, Debug)]
pub struct Bialgebroid {
    pub total: Alg,
    pub base: Alg,
    pub s: AlgebraMap,
    pub t: AlgebraMap,
    pub coring: Coalgebroid,
}

/// The four actions of `R` on `A` determined by `s` and `t`.
pub fn actions_from_source_target(total: &Alg, base: &Alg, s: &LinMap, t: &LinMap) -> Result<Multimodule> {
    let r = base.dim();
    let on = |m: &LinMap, right: bool| -> Vec<LinMap> {
        (0..r).map(|i| if right { total.right_mul(m.col(i)) } else { total.left_mul(m.col(i)) }).collect()
    };
    Multimodule::new(base.clone(), base.clone(), total.dim(), on(s, false), on(t, false), on(t, true), on(s, true))
}

impl Bialgebroid {
    pub fn new(total: Alg, base: Alg, s: LinMap, t: LinMap, delta: LinMap, epsilon: LinMap) -> Result<Self> {
        let carrier = actions_from_source_target(&total, &base, &s, &t)?;
        let coring = Coalgebroid::new(carrier, delta, epsilon)?;
        Ok(Bialgebroid {
            s: AlgebraMap::new(base.clone(), total.clone(), s)?,
            t: AlgebraMap::new(base.clone(), total.clone(), t)?,
            total,
            base,
            coring,
        })
    }

    pub fn field(&self) -> Field {
        self.total.field()
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn delta(&self) -> &LinMap {
        &self.coring.delta
    }

    pub fn epsilon(&self) -> &LinMap {
        &self.coring.epsilon
    }

    pub fn tensor_sq(&self) -> &Tensor {
        &self.coring.tensor_sq
    }

    /// `Δ(a)` projected to `A ⊗_R A`.
    pub fn delta_class(&self, a: &SVec) -> SVec {
        self.coring.delta_q.apply(a)
    }

    /// Factorwise product of two ambient representatives in `A ⊗_k A`.
    pub fn mul_pairs(&self, x: &SVec, y: &SVec) -> SVec {
        let n = self.dim();
        let (xs, ys) = (split_rows(x, n), split_rows(y, n));
        let operator = ys.iter().map(|(_, yc)| yc.nnz()).sum::<usize>() >= n;
        let mut acc = Acc::new();
        for (a, xa) in &xs {
            let left = operator.then(|| self.total.left_mul(xa));
            for (c, yc) in &ys {
                let right = match &left {
                    Some(l) => l.apply(yc),
                    None => self.total.mul(xa, yc),
                };
                if !right.is_zero() {
                    acc.add_vec(&self.field().one(), &tensor_vec(self.total.basis_mul(*a, *c), &right, n));
                }
            }
        }
        acc.into_svec()
    }

    /// `r.a = s(r) a`.
    pub fn lower_left(&self, r: &SVec, a: &SVec) -> SVec {
        self.total.mul(&self.s.apply(r), a)
    }
}

/// `x = Σ_a e_a ⊗ x_a`, as the nonzero pairs `(a, x_a)`.
fn split_rows(x: &SVec, n: usize) -> Vec<(usize, SVec)> {
    let mut rows: Vec<(usize, Vec<(usize, Scalar)>)> = Vec::new();
    for (k, c) in x.iter() {
        match rows.last_mut() {
            Some((a, row)) if *a == k / n => row.push((k % n, c.clone())),
            _ => rows.push((k / n, vec![(k % n, c.clone())])),
        }
    }
    rows.into_iter().map(|(a, row)| (a, SVec::from_pairs(row))).collect()
}

pub fn check_bialgebroid(a: &Bialgebroid) -> Report {
    let mut r = Report::new("bialgebroid");
    let f = a.field();
    let total = &a.total;
    let base = &a.base;

    let s_rep = check_algebra_map(&a.s, MapKind::Homomorphism);
    r.check("bgd.s_algebra_map", s_rep.pass(), || s_rep.failures().join(", "));
    let t_rep = check_algebra_map(&a.t, MapKind::Anti);
    r.check("bgd.t_anti_map", t_rep.pass(), || t_rep.failures().join(", "));

    let mut bad = None;
    'outer: for i in 0..base.dim() {
        for j in 0..base.dim() {
            let (si, tj) = (a.s.map.col(i), a.t.map.col(j));
            if total.mul(si, tj) != total.mul(tj, si) {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    r.check("bgd.commuting_ranges", bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("s(e_{i}) and t(e_{j}) do not commute")
    });

    // η(r ⊗ r') = t(r) s(r') on R^op ⊗ R.
    let eta = FiniteAlgebra::tensor(&base.opposite(), base).and_then(|re| {
        let n = base.dim();
        let map = LinMap::from_fn(f, n * n, total.dim(), |k| total.mul(a.t.map.col(k / n), a.s.map.col(k % n)));
        AlgebraMap::new(Arc::new(re), total.clone(), map)
    });
    match eta {
        Ok(eta) => {
            let rep = check_algebra_map(&eta, MapKind::Homomorphism);
            r.check("bgd.eta_algebra_map", rep.pass(), || rep.failures().join(", "));
        }
        Err(e) => r.record("bgd.eta_algebra_map", Err(e.to_string())),
    }

    let mm = check_multimodule(&a.coring.carrier);
    r.check("bgd.multimodule", mm.pass(), || mm.failures().join(", "));

    r.absorb(&check_coalgebroid(&a.coring));

    let one = total.unit();
    let one_one = a.coring.project_sq(&tensor_vec(one, one, a.dim()));
    r.check("bgd.delta_unital", a.delta_class(one) == one_one, || "Δ(1) ≠ 1⊗1".into());

    let n = a.dim();
    let mut bad = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = a.delta_class(total.basis_mul(i, j));
            let rhs = a.coring.project_sq(&a.mul_pairs(a.delta().col(i), a.delta().col(j)));
            if lhs != rhs {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    r.check("bgd.delta_multiplicative", bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("Δ(e_{i} e_{j}) ≠ Δ(e_{i}) Δ(e_{j})")
    });

    r.check("bgd.epsilon_unital", a.epsilon().apply(one) == *base.unit(), || "ε(1) ≠ 1".into());

    let mut bad = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = a.epsilon().apply(total.basis_mul(i, j));
            let moved = a.lower_left(a.epsilon().col(i), &total.basis(j));
            if lhs != a.epsilon().apply(&moved) {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    r.check("bgd.epsilon_multiplicative", bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("ε(e_{i} e_{j}) ≠ ε(ε(e_{i}).e_{j})")
    });
    r
}

/// `E(R)` with total algebra `R^op ⊗ R`, `s(r) = 1⊗r`, `t(r) = r⊗1`.
pub fn sweedler_bialgebroid(r: &Alg) -> Result<Bialgebroid> {
    let f = r.field();
    let n = r.dim();
    let total = Arc::new(FiniteAlgebra::tensor(&r.opposite(), r)?);
    let one = r.unit();
    let s = LinMap::from_fn(f, n, n * n, |i| tensor_vec(one, &SVec::unit(i, f), n));
    let t = LinMap::from_fn(f, n, n * n, |i| tensor_vec(&SVec::unit(i, f), one, n));
    let unit = sweedler_unit(r);
    Bialgebroid::new(total, r.clone(), s, t, unit.delta, unit.epsilon)
}

/// A bialgebra over the ground field as a bialgebroid with `s = t = unit`.
pub fn from_bialgebra(total: Alg, delta: LinMap, epsilon: LinMap) -> Result<Bialgebroid> {
    let f = total.field();
    let k = Arc::new(FiniteAlgebra::ground(f));
    let unit = LinMap::new(f, total.dim(), vec![total.unit().clone()]);
    Bialgebroid::new(total, k, unit.clone(), unit, delta, epsilon)
}

/// The ground field as the trivial bialgebroid over itself.
pub fn ground_bialgebroid(field: Field) -> Bialgebroid {
    let k = Arc::new(FiniteAlgebra::ground(field));
    from_bialgebra(k, LinMap::identity(field, 1), LinMap::identity(field, 1)).expect("ground bialgebroid shapes")
}

/// `k[G]` with group-like basis.
pub fn group_bialgebra(field: Field, table: &[Vec<usize>]) -> Result<Bialgebroid> {
    let g = Arc::new(FiniteAlgebra::group(field, table)?);
    let n = g.dim();
    let delta = LinMap::from_fn(field, n, n * n, |i| SVec::unit(i * n + i, field));
    let epsilon = LinMap::from_fn(field, n, 1, |_| SVec::unit(0, field));
    from_bialgebra(g, delta, epsilon)
}

/// A map of bialgebroids; `f0 = ε_B ∘ f ∘ s_A` is derived.
#[derive(Clone, Debug)]
pub struct BialgebroidMap {
    pub source: Arc<Bialgebroid>,
    pub target: Arc<Bialgebroid>,
    pub f: AlgebraMap,
    pub f0: AlgebraMap,
}

impl BialgebroidMap {
    pub fn new(source: Arc<Bialgebroid>, target: Arc<Bialgebroid>, map: LinMap) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch("bialgebroid map over different fields".into()));
        }
        let f = AlgebraMap::new(source.total.clone(), target.total.clone(), map)?;
        let f0map = target.epsilon().compose(&f.map).compose(&source.s.map);
        let f0 = AlgebraMap::new(source.base.clone(), target.base.clone(), f0map)?;
        Ok(BialgebroidMap { source, target, f, f0 })
    }
}

pub fn check_bialgebroid_map(m: &BialgebroidMap) -> Report {
    let mut r = Report::new("bialgebroid map");
    let (a, b) = (&m.source, &m.target);
    let f = &m.f.map;
    let f0 = &m.f0.map;
    let alg = check_algebra_map(&m.f, MapKind::Homomorphism);
    r.check("bmap.algebra_map", alg.pass(), || alg.failures().join(", "));
    let base = check_algebra_map(&m.f0, MapKind::Homomorphism);
    r.check("bmap.base_algebra_map", base.pass(), || base.failures().join(", "));
    r.check("bmap.source", f.compose(&a.s.map) == b.s.map.compose(f0), || "f∘s_A ≠ s_B∘f0".into());
    r.check("bmap.target", f.compose(&a.t.map) == b.t.map.compose(f0), || "f∘t_A ≠ t_B∘f0".into());
    let bad = (0..a.dim()).find(|&i| {
        let lhs = b.coring.project_sq(&apply_pair(a.delta().col(i), a.dim(), f, f));
        lhs != b.delta_class(f.col(i))
    });
    r.check("bmap.delta", bad.is_none(), || format!("(f⊗f)Δ ≠ Δf on e_{}", bad.unwrap()));
    r.check("bmap.epsilon", b.epsilon().compose(f) == f0.compose(a.epsilon()), || "ε_B∘f ≠ f0∘ε_A".into());
    let iso = f.src() == f.tgt() && f.rank() == f.src();
    r.note("isomorphism", iso);
    r
}

/// `R` as a right `A`-module: `r ◁ a = ε(r.a) = ε(s(r) a)`.
pub fn trivial_module(a: &Bialgebroid) -> Result<Bimodule> {
    let f = a.field();
    let rd = a.base.dim();
    let acts = (0..a.dim())
        .map(|i| LinMap::from_fn(f, rd, rd, |j| a.epsilon().apply(&a.lower_left(&SVec::unit(j, f), &a.total.basis(i)))))
        .collect();
    let m = Bimodule::right_module(a.total.clone(), rd, acts)?;
    let rep = check_bimodule(&m);
    if !rep.pass() {
        return Err(Error::ill_defined(format!("trivial module fails {}", rep.failures().join(", "))));
    }
    Ok(m)
}

/// `M ⊗_R N` for right `A`-modules, with `m◁s(r) ⊗ n = m ⊗ n◁t(r)` and the
/// diagonal action `(m⊗n)◁a = m◁a1 ⊗ n◁a2`.
pub fn module_tensor(a: &Bialgebroid, m: &Bimodule, n: &Bimodule) -> Result<(Tensor, Bimodule)> {
    if m.right != a.total || n.right != a.total {
        return Err(Error::invalid("modules are not over the bialgebroid's total algebra"));
    }
    let f = a.field();
    let rd = a.base.dim();
    let ms: Vec<LinMap> = (0..rd).map(|i| m.right_op(a.s.map.col(i))).collect();
    let nt: Vec<LinMap> = (0..rd).map(|i| n.right_op(a.t.map.col(i))).collect();
    let t = Tensor::new(f, m.dim, n.dim, &[(&ms, &nt)]);
    let ad = a.dim();
    let acts = (0..ad)
        .map(|i| {
            let d = a.delta().col(i);
            t.q.induce(&t.q, |v| {
                let mut acc = Acc::new();
                for (k, x) in d.iter() {
                    let (l, r) = (&m.right_act[k / ad], &n.right_act[k % ad]);
                    acc.add_vec(x, &apply_pair(v, n.dim, l, r));
                }
                acc.into_svec()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let out = Bimodule::right_module(a.total.clone(), t.dim(), acts)?;
    Ok((t, out))
}

/// Checks `M ⊗_R R ≅ M` via `m⊗r ↦ m◁s(r)` and `R ⊗_R M ≅ M` via `r⊗m ↦ m◁t(r)`.
pub fn module_unit_check(a: &Bialgebroid, m: &Bimodule) -> Result<Report> {
    let mut rep = Report::new("module tensor units");
    let triv = trivial_module(a)?;
    let rd = a.base.dim();
    let (tr, mr) = module_tensor(a, m, &triv)?;
    let right = tr.q.induce_to_space(m.dim, |v| {
        let mut acc = Acc::new();
        for (k, x) in v.iter() {
            let op = m.right_op(a.s.map.col(k % rd));
            acc.add_vec(x, op.col(k / rd));
        }
        acc.into_svec()
    })?;
    let (tl, ml) = module_tensor(a, &triv, m)?;
    let left = tl.q.induce_to_space(m.dim, |v| {
        let mut acc = Acc::new();
        for (k, x) in v.iter() {
            let op = m.right_op(a.t.map.col(k / m.dim));
            acc.add_vec(x, op.col(k % m.dim));
        }
        acc.into_svec()
    })?;
    for (id, map, src) in [("mt.unit_right", &right, &mr), ("mt.unit_left", &left, &ml)] {
        let inv = map.src() == map.tgt() && map.rank() == map.src();
        let linear = src.right_act.iter().zip(&m.right_act).all(|(x, y)| map.compose(x) == y.compose(map));
        rep.check(id, inv && linear, || format!("invertible: {inv}, A-linear: {linear}"));
    }
    Ok(rep)
}

use std::sync::Arc;

use crate::algkit::FiniteAlgebra;
use crate::bgdkit::{check_bialgebroid_map, ground_bialgebroid, module_tensor, Bialgebroid, BialgebroidMap};
use crate::cgdkit::{apply_pair, check_coalgebroid, Coalgebroid};
use crate::error::{Error, Result};
use crate::exactfield::{Acc, Field, LinMap, SVec, Subspace};
use crate::modkit::{centralizer, check_bimodule, Bimodule, Multimodule, Tensor};
use crate::report::Report;

/// A 1-cell `B → A`: an `A`-`B`-bimodule `P` with a comonoid structure in
/// right `B`-modules.
///
/// `coring` is the underlying `R|S` coalgebroid with `r.p = s_A(r)▷p`,
/// `p.r = t_A(r)▷p`, `s·p = p◁t_B(s)` and `p·s = p◁s_B(s)`.
#[derive(Clone, Debug)]
pub struct OneCell {
    pub from: Arc<Bialgebroid>,
    pub to: Arc<Bialgebroid>,
    pub carrier: Bimodule,
    pub coring: Coalgebroid,
}

/// The `R|S` multimodule of an `A`-`B`-bimodule.
pub fn cell_multimodule(from: &Bialgebroid, to: &Bialgebroid, carrier: &Bimodule) -> Result<Multimodule> {
    let r = to.base.dim();
    let s = from.base.dim();
    Multimodule::new(
        to.base.clone(),
        from.base.clone(),
        carrier.dim,
        (0..r).map(|i| carrier.left_op(to.s.map.col(i))).collect(),
        (0..r).map(|i| carrier.left_op(to.t.map.col(i))).collect(),
        (0..s).map(|j| carrier.right_op(from.t.map.col(j))).collect(),
        (0..s).map(|j| carrier.right_op(from.s.map.col(j))).collect(),
    )
}

impl OneCell {
    pub fn new(
        from: Arc<Bialgebroid>,
        to: Arc<Bialgebroid>,
        carrier: Bimodule,
        delta: LinMap,
        epsilon: LinMap,
    ) -> Result<Self> {
        if carrier.left != to.total || carrier.right != from.total {
            return Err(Error::invalid("cell carrier is not a bimodule over the endpoint algebras"));
        }
        let mm = cell_multimodule(&from, &to, &carrier)?;
        let coring = Coalgebroid::new(mm, delta, epsilon)?;
        Ok(OneCell { from, to, carrier, coring })
    }

    /// A comonoid in right `B`-modules, viewed as a cell from `B` to the ground field.
    pub fn bare(from: Arc<Bialgebroid>, module: Bimodule, delta: LinMap, epsilon: LinMap) -> Result<Self> {
        let to = Arc::new(ground_bialgebroid(from.field()));
        let field = from.field();
        let carrier = Bimodule::new(
            to.total.clone(),
            module.right.clone(),
            module.dim,
            vec![LinMap::identity(field, module.dim)],
            module.right_act,
        )?;
        OneCell::new(from, to, carrier, delta, epsilon)
    }

    /// `A` as a cell `A → A` over itself.
    pub fn regular(a: Arc<Bialgebroid>) -> Result<Self> {
        let carrier = Bimodule::regular(&a.total);
        OneCell::new(a.clone(), a.clone(), carrier, a.delta().clone(), a.epsilon().clone())
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
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

    pub fn delta_class(&self, p: &SVec) -> SVec {
        self.coring.delta_q.apply(p)
    }

    /// The carrier as a right `B`-module.
    pub fn right_module(&self) -> Bimodule {
        Bimodule::right_module(self.from.total.clone(), self.dim(), self.carrier.right_act.clone())
            .expect("carrier shapes already validated")
    }

    /// `P ⊗_S P` as a right `B`-module with the diagonal action. Its
    /// presentation coincides with `tensor_sq`.
    pub fn square_module(&self) -> Result<(Tensor, Bimodule)> {
        let m = self.right_module();
        module_tensor(&self.from, &m, &m)
    }

    /// `s_B(s)` acting on the right.
    pub fn right_by_source(&self, s: &SVec) -> LinMap {
        self.carrier.right_op(&self.from.s.apply(s))
    }

    /// `t_B(s)` acting on the right.
    pub fn right_by_target(&self, s: &SVec) -> LinMap {
        self.carrier.right_op(&self.from.t.apply(s))
    }
}

/// `Σ f_u(x) ⊗ g_v(y)` over `Δ(x⊗y)`-style pairs: applies `ops_l[u] ⊗ ops_r[v]`
/// weighted by the ambient coefficients of `d` to the ambient tensor `v`.
pub(crate) fn diagonal_apply(d: &SVec, dim_alg: usize, n: usize, ops_l: &[LinMap], ops_r: &[LinMap], v: &SVec) -> SVec {
    let mut acc = Acc::new();
    for (k, x) in d.iter() {
        acc.add_vec(x, &apply_pair(v, n, &ops_l[k / dim_alg], &ops_r[k % dim_alg]));
    }
    acc.into_svec()
}

pub fn check_one_cell(p: &OneCell) -> Report {
    let mut r = Report::new("one-cell");
    let f = p.field();
    let n = p.dim();
    let (a, b) = (&p.to, &p.from);

    let bim = check_bimodule(&p.carrier);
    r.check("cell.bimodule", bim.pass(), || bim.failures().join(", "));

    let cg = check_coalgebroid(&p.coring);
    for (src, dst) in [
        ("cgd.coassociative", "cell.coassociative"),
        ("cgd.counit_left", "cell.counit_left"),
        ("cgd.counit_right", "cell.counit_right"),
    ] {
        let item = cg.item(src).cloned().expect("coalgebroid report item");
        r.record(dst, if item.pass { Ok(()) } else { Err(item.witness.unwrap_or_default()) });
    }

    // Δ lands in the R-centralizer of P ⊗_S P.
    let t = p.tensor_sq();
    let lower = |ops: &[LinMap], left_factor: bool| -> Result<Vec<LinMap>> {
        let id = LinMap::identity(f, n);
        ops.iter().map(|o| if left_factor { t.induce_pair(t, o, &id) } else { t.induce_pair(t, &id, o) }).collect()
    };
    let central = lower(&p.coring.carrier.lower_left, true).and_then(|l| {
        let rr = lower(&p.coring.carrier.lower_right, false)?;
        let basis = centralizer(f, t.dim(), &l, &rr);
        Subspace::new(f, t.dim(), basis)
    });
    match central {
        Ok(sub) => {
            let bad = (0..n).find(|&i| !sub.contains(&p.delta_class(&SVec::unit(i, f))));
            r.check("cell.centralizer", bad.is_none(), || format!("Δ(e_{}) is not R-central in P⊗_S P", bad.unwrap()));
        }
        Err(e) => r.record("cell.centralizer", Err(e.to_string())),
    }

    let bd = b.dim();
    let bad = (0..bd).find_map(|j| {
        let dj = b.delta().col(j);
        (0..n).find_map(|i| {
            let e = SVec::unit(i, f);
            let lhs = p.delta_class(p.carrier.right_act[j].col(i));
            let rhs = diagonal_apply(dj, bd, n, &p.carrier.right_act, &p.carrier.right_act, &p.delta().apply(&e));
            (lhs != t.project(&rhs)).then_some((j, i))
        })
    });
    r.check("cell.delta_b_linear", bad.is_none(), || {
        let (j, i) = bad.unwrap();
        format!("Δ(e_{i} ◁ b_{j}) ≠ Δ(e_{i}) ◁ b_{j}")
    });

    // ε(p◁b) = ε_B(s_B(ε(p)) b)
    let bad = (0..bd).find_map(|j| {
        (0..n).find_map(|i| {
            let lhs = p.epsilon().apply(p.carrier.right_act[j].col(i));
            let moved = b.total.mul(&b.s.apply(p.epsilon().col(i)), &b.total.basis(j));
            (lhs != b.epsilon().apply(&moved)).then_some((j, i))
        })
    });
    r.check("cell.epsilon_b_linear", bad.is_none(), || {
        let (j, i) = bad.unwrap();
        format!("ε(e_{i} ◁ b_{j}) ≠ ε(e_{i}) ◁ b_{j}")
    });

    let ad = a.dim();
    let bad = (0..ad).find_map(|j| {
        let dj = a.delta().col(j);
        (0..n).find_map(|i| {
            let e = SVec::unit(i, f);
            let lhs = p.delta_class(p.carrier.left_act[j].col(i));
            let rhs = diagonal_apply(dj, ad, n, &p.carrier.left_act, &p.carrier.left_act, &p.delta().apply(&e));
            (lhs != t.project(&rhs)).then_some((j, i))
        })
    });
    r.check("cell.delta_a_compatible", bad.is_none(), || {
        let (j, i) = bad.unwrap();
        format!("Δ(a_{j} ▷ e_{i}) ≠ a_{j}1 ▷ p1 ⊗ a_{j}2 ▷ p2")
    });

    // ε(a▷p) = ε(s_A(ε_A(a))▷p)
    let bad = (0..ad).find_map(|j| {
        (0..n).find_map(|i| {
            let e = SVec::unit(i, f);
            let lhs = p.epsilon().apply(p.carrier.left_act[j].col(i));
            let moved = p.carrier.act_left(&a.s.apply(a.epsilon().col(j)), &e);
            (lhs != p.epsilon().apply(&moved)).then_some((j, i))
        })
    });
    r.check("cell.epsilon_a_compatible", bad.is_none(), || {
        let (j, i) = bad.unwrap();
        format!("ε(a_{j} ▷ e_{i}) ≠ ε(ε(a_{j}).e_{i})")
    });
    r
}

/// A 2-cell: a bimodule map between cells with the same endpoints.
#[derive(Clone, Debug)]
pub struct TwoCell {
    pub source: Arc<OneCell>,
    pub target: Arc<OneCell>,
    pub map: LinMap,
}

impl TwoCell {
    pub fn new(source: Arc<OneCell>, target: Arc<OneCell>, map: LinMap) -> Result<Self> {
        if source.from.total != target.from.total || source.to.total != target.to.total {
            return Err(Error::invalid("2-cell between cells with different endpoints"));
        }
        if map.src() != source.dim() || map.tgt() != target.dim() {
            return Err(Error::dim("2-cell shape"));
        }
        Ok(TwoCell { source, target, map })
    }
}

pub fn check_two_cell(c: &TwoCell) -> Report {
    let mut r = Report::new("two-cell");
    let (p, q, m) = (&c.source, &c.target, &c.map);
    let left = p.carrier.left_act.iter().zip(&q.carrier.left_act).position(|(x, y)| m.compose(x) != y.compose(m));
    let right = p.carrier.right_act.iter().zip(&q.carrier.right_act).position(|(x, y)| m.compose(x) != y.compose(m));
    r.check("two.bimodule_map", left.is_none() && right.is_none(), || match left {
        Some(i) => format!("does not commute with a_{i}"),
        None => format!("does not commute with b_{}", right.unwrap()),
    });
    let bad = (0..p.dim())
        .find(|&i| q.tensor_sq().project(&apply_pair(p.delta().col(i), p.dim(), m, m)) != q.delta_class(m.col(i)));
    r.check("two.delta", bad.is_none(), || format!("(α⊗α)Δ ≠ Δα on e_{}", bad.unwrap()));
    r.check("two.epsilon", q.epsilon().compose(m) == *p.epsilon(), || "ε_Q∘α ≠ ε_P".into());
    r
}

/// `f* = _{f(A)}B_B` for a bialgebroid map `f: A → B`, with the comonoid of `B`.
pub fn pullback_cell(f: &BialgebroidMap) -> Result<OneCell> {
    let rep = check_bialgebroid_map(f);
    if !rep.pass() {
        return Err(Error::precondition(format!("not a bialgebroid map: {}", rep.failures().join(", "))));
    }
    let b = f.target.clone();
    let a = f.source.clone();
    let left = (0..a.dim()).map(|i| b.total.left_mul(f.f.map.col(i))).collect();
    let right = (0..b.dim()).map(|j| b.total.right_mul(&b.total.basis(j))).collect();
    let carrier = Bimodule::new(a.total.clone(), b.total.clone(), b.dim(), left, right)?;
    OneCell::new(b.clone(), a, carrier, b.delta().clone(), b.epsilon().clone())
}

/// `P = k^n` over `B = k` with `Δ(e_i) = e_i ⊗ e_i` and `ε(e_i) = 1`.
pub fn pointwise_comonoid(field: Field, n: usize) -> Result<OneCell> {
    let b = Arc::new(ground_bialgebroid(field));
    let k = Arc::new(FiniteAlgebra::ground(field));
    let module = Bimodule::right_module(k, n, vec![LinMap::identity(field, n)])?;
    let delta = LinMap::from_fn(field, n, n * n, |i| SVec::unit(i * n + i, field));
    let eps = LinMap::from_fn(field, n, 1, |_| SVec::unit(0, field));
    OneCell::bare(b, module, delta, eps)
}

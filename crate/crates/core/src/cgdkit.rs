//! Coalgebroids between base algebras, their maps, the horizontal composite
//! and the Sweedler unit.

use std::sync::Arc;

use crate::algkit::{Alg, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactfield::{tensor_vec, Acc, Field, LinMap, SVec};
use crate::modkit::{check_multimodule, Multimodule, Tensor};
use crate::report::Report;

/// Applies `f ⊗ g` to an ambient tensor `v ∈ k^m ⊗ k^n`.
pub fn apply_pair(v: &SVec, n: usize, f: &LinMap, g: &LinMap) -> SVec {
    let mut acc = Acc::new();
    for (k, x) in v.iter() {
        acc.add_vec(x, &tensor_vec(f.col(k / n), g.col(k % n), g.tgt()));
    }
    acc.into_svec()
}

/// An `R|S` coalgebroid: an `S`-coring for the upper actions whose
/// comultiplication is compatible with the lower `R` actions.
///
/// `delta` maps into the ambient `C ⊗_k C`; `delta_q` is its projection to
/// `C ⊗_S C`. Upper dots: `s·c·s'`. Lower dots: `r.c.r'`.
#[derive(Clone, Debug)]
pub struct Coalgebroid {
    pub carrier: Multimodule,
    pub delta: LinMap,
    pub epsilon: LinMap,
    pub tensor_sq: Arc<Tensor>,
    pub delta_q: LinMap,
}

impl Coalgebroid {
    pub fn new(carrier: Multimodule, delta: LinMap, epsilon: LinMap) -> Result<Self> {
        let n = carrier.dim;
        if delta.src() != n || delta.tgt() != n * n {
            return Err(Error::dim(format!("delta must map {n} -> {}", n * n)));
        }
        if epsilon.src() != n || epsilon.tgt() != carrier.s.dim() {
            return Err(Error::dim(format!("epsilon must map {n} -> {}", carrier.s.dim())));
        }
        let tensor_sq = Arc::new(Tensor::new(carrier.field(), n, n, &[(&carrier.upper_right, &carrier.upper_left)]));
        let delta_q =
            LinMap::new(carrier.field(), tensor_sq.dim(), delta.cols().iter().map(|c| tensor_sq.project(c)).collect());
        Ok(Coalgebroid { carrier, delta, epsilon, tensor_sq, delta_q })
    }

    pub fn r(&self) -> &Alg {
        &self.carrier.r
    }

    pub fn s(&self) -> &Alg {
        &self.carrier.s
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    /// Class of an ambient `C ⊗_k C` vector in `C ⊗_S C`.
    pub fn project_sq(&self, v: &SVec) -> SVec {
        self.tensor_sq.project(v)
    }

    /// `(f ⊗ g)(Δ c)` projected to `C ⊗_S C`.
    pub fn delta_then(&self, c: &SVec, f: &LinMap, g: &LinMap) -> SVec {
        let d = self.delta.apply(c);
        self.project_sq(&apply_pair(&d, self.dim(), f, g))
    }

    /// `(C ⊗_S C) ⊗_S C`, balanced through the right action on the second factor.
    pub fn triple(&self) -> Result<Tensor> {
        let id = LinMap::identity(self.field(), self.dim());
        let right = self
            .carrier
            .upper_right
            .iter()
            .map(|u| self.tensor_sq.induce_pair(&self.tensor_sq, &id, u))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tensor::new(self.field(), self.tensor_sq.dim(), self.dim(), &[(&right, &self.carrier.upper_left)]))
    }

    /// Projection of `x ⊗ y ⊗ z` (ambient triple index) into the triple quotient.
    pub fn triple_class(&self, t: &Tensor, v: &SVec) -> SVec {
        let n = self.dim();
        let mut acc = Acc::new();
        for (k, x) in v.iter() {
            let (ab, c) = (k / n, k % n);
            let pair = self.tensor_sq.project(&SVec::unit(ab, self.field()));
            acc.add_vec(x, &tensor_vec(&pair, &SVec::unit(c, self.field()), n));
        }
        t.project(&acc.into_svec())
    }

    fn upper_left_op(&self, s: &SVec) -> LinMap {
        crate::modkit::combine(self.field(), self.dim(), &self.carrier.upper_left, s)
    }

    fn upper_right_op(&self, s: &SVec) -> LinMap {
        crate::modkit::combine(self.field(), self.dim(), &self.carrier.upper_right, s)
    }
}

fn first_basis_failure(n: usize, mut ok: impl FnMut(usize) -> bool) -> Option<usize> {
    (0..n).find(|&i| !ok(i))
}

pub fn check_coalgebroid(c: &Coalgebroid) -> Report {
    let mut r = Report::new("coalgebroid");
    let f = c.field();
    let n = c.dim();
    let s = c.s();
    let id = LinMap::identity(f, n);

    let mm = check_multimodule(&c.carrier);
    r.check("cgd.carrier", mm.pass(), || format!("carrier fails {}", mm.failures().join(", ")));

    let coassoc = match c.triple() {
        Ok(t) => {
            let bad = first_basis_failure(n, |i| {
                let d = c.delta.apply(&SVec::unit(i, f));
                let mut left = Acc::new();
                let mut right = Acc::new();
                for (k, x) in d.iter() {
                    let (a, b) = (k / n, k % n);
                    // (Δ ⊗ id): Δ(e_a) ⊗ e_b
                    left.add_vec(x, &tensor_vec(c.delta.col(a), &SVec::unit(b, f), n));
                    // (id ⊗ Δ): e_a ⊗ Δ(e_b)
                    right.add_vec(x, &tensor_vec(&SVec::unit(a, f), c.delta.col(b), n * n));
                }
                c.triple_class(&t, &left.into_svec()) == c.triple_class(&t, &right.into_svec())
            });
            bad.map(|i| format!("(Δ⊗id)Δ and (id⊗Δ)Δ differ on e_{i}"))
        }
        Err(e) => Some(format!("triple tensor: {e}")),
    };
    r.record("cgd.coassociative", coassoc.map_or(Ok(()), Err));

    // ε(c1)·c2 = c with s·c acting through the upper-left action.
    let bad = first_basis_failure(n, |i| {
        let d = c.delta.apply(&SVec::unit(i, f));
        let mut acc = Acc::new();
        for (k, x) in d.iter() {
            let e = c.epsilon.col(k / n);
            acc.add_vec(x, &c.upper_left_op(e).col(k % n).clone());
        }
        acc.into_svec() == SVec::unit(i, f)
    });
    r.check("cgd.counit_left", bad.is_none(), || format!("ε(c1)·c2 ≠ c at e_{}", bad.unwrap()));

    let bad = first_basis_failure(n, |i| {
        let d = c.delta.apply(&SVec::unit(i, f));
        let mut acc = Acc::new();
        for (k, x) in d.iter() {
            let e = c.epsilon.col(k % n);
            acc.add_vec(x, &c.upper_right_op(e).col(k / n).clone());
        }
        acc.into_svec() == SVec::unit(i, f)
    });
    r.check("cgd.counit_right", bad.is_none(), || format!("c1·ε(c2) ≠ c at e_{}", bad.unwrap()));

    let mut delta_bad = None;
    let mut eps_bad = None;
    for j in 0..s.dim() {
        let (ul, ur) = (&c.carrier.upper_left[j], &c.carrier.upper_right[j]);
        for i in 0..n {
            let e = SVec::unit(i, f);
            if delta_bad.is_none()
                && (c.project_sq(&c.delta.apply(&ul.apply(&e))) != c.delta_then(&e, ul, &id)
                    || c.project_sq(&c.delta.apply(&ur.apply(&e))) != c.delta_then(&e, &id, ur))
            {
                delta_bad = Some((j, i));
            }
        }
        let eps_l = c.epsilon.compose(ul);
        let eps_r = c.epsilon.compose(ur);
        if eps_bad.is_none()
            && (eps_l != s.left_mul(&s.basis(j)).compose(&c.epsilon)
                || eps_r != s.right_mul(&s.basis(j)).compose(&c.epsilon))
        {
            eps_bad = Some(j);
        }
    }
    r.check("cgd.delta_bilinear", delta_bad.is_none(), || {
        let (j, i) = delta_bad.unwrap();
        format!("Δ does not commute with the upper action of e_{j} on e_{i}")
    });
    r.check("cgd.epsilon_bilinear", eps_bad.is_none(), || {
        format!("ε is not linear for the upper action of e_{}", eps_bad.unwrap())
    });

    let mut lower_bad = None;
    let mut central_bad = None;
    let mut eps_bal = None;
    for j in 0..c.r().dim() {
        let (ll, lr) = (&c.carrier.lower_left[j], &c.carrier.lower_right[j]);
        for i in 0..n {
            let e = SVec::unit(i, f);
            if lower_bad.is_none()
                && (c.project_sq(&c.delta.apply(&ll.apply(&e))) != c.delta_then(&e, &id, ll)
                    || c.project_sq(&c.delta.apply(&lr.apply(&e))) != c.delta_then(&e, lr, &id))
            {
                lower_bad = Some((j, i));
            }
            if central_bad.is_none() && c.delta_then(&e, ll, &id) != c.delta_then(&e, &id, lr) {
                central_bad = Some((j, i));
            }
        }
        if eps_bal.is_none() && c.epsilon.compose(ll) != c.epsilon.compose(lr) {
            eps_bal = Some(j);
        }
    }
    r.check("cgd.delta_lower", lower_bad.is_none(), || {
        let (j, i) = lower_bad.unwrap();
        format!("Δ(r.c.r') ≠ c1.r' ⊗ r.c2 for r = e_{j}, c = e_{i}")
    });
    r.check("cgd.centralizer", central_bad.is_none(), || {
        let (j, i) = central_bad.unwrap();
        format!("r.c1 ⊗ c2 ≠ c1 ⊗ c2.r for r = e_{j}, c = e_{i}")
    });
    r.check("cgd.epsilon_balanced", eps_bal.is_none(), || format!("ε(r.c) ≠ ε(c.r) for r = e_{}", eps_bal.unwrap()));
    r
}

/// A linear map between coalgebroids over the same pair of bases.
#[derive(Clone, Debug)]
pub struct CoalgebroidMap {
    pub source: Arc<Coalgebroid>,
    pub target: Arc<Coalgebroid>,
    pub map: LinMap,
}

impl CoalgebroidMap {
    pub fn new(source: Arc<Coalgebroid>, target: Arc<Coalgebroid>, map: LinMap) -> Result<Self> {
        if source.r() != target.r() || source.s() != target.s() {
            return Err(Error::invalid("coalgebroid map between different bases"));
        }
        if map.src() != source.dim() || map.tgt() != target.dim() {
            return Err(Error::dim("coalgebroid map shape"));
        }
        Ok(CoalgebroidMap { source, target, map })
    }
}

fn intertwines(a: &LinMap, src: &[LinMap], tgt: &[LinMap]) -> Option<usize> {
    src.iter().zip(tgt).position(|(x, y)| a.compose(x) != y.compose(a))
}

pub fn check_coalgebroid_map(m: &CoalgebroidMap) -> Report {
    let mut r = Report::new("coalgebroid map");
    let (p, q, a) = (&m.source, &m.target, &m.map);
    let upper = intertwines(a, &p.carrier.upper_left, &q.carrier.upper_left)
        .or_else(|| intertwines(a, &p.carrier.upper_right, &q.carrier.upper_right));
    r.check("cmap.upper_linear", upper.is_none(), || {
        format!("does not commute with the upper action of e_{}", upper.unwrap())
    });
    let lower = intertwines(a, &p.carrier.lower_left, &q.carrier.lower_left)
        .or_else(|| intertwines(a, &p.carrier.lower_right, &q.carrier.lower_right));
    r.check("cmap.lower_linear", lower.is_none(), || {
        format!("does not commute with the lower action of e_{}", lower.unwrap())
    });
    let bad = first_basis_failure(p.dim(), |i| {
        let d = p.delta.col(i);
        q.project_sq(&apply_pair(d, p.dim(), a, a)) == q.delta_q.apply(a.col(i))
    });
    r.check("cmap.delta", bad.is_none(), || format!("(α⊗α)Δ ≠ Δα on e_{}", bad.unwrap()));
    let counit = q.epsilon.compose(a) == p.epsilon;
    r.check("cmap.epsilon", counit, || "ε_Q∘α ≠ ε_P".into());
    let inv = a.src() == a.tgt() && a.rank() == a.src();
    r.note("isomorphism", inv);
    r
}

/// `P ⊙ Q` together with its presentation as a quotient of `P ⊗ Q`.
#[derive(Clone, Debug)]
pub struct Composite {
    pub coalgebroid: Coalgebroid,
    pub presentation: Tensor,
}

/// `P ⊗_{S^e} Q` for `P` over `(R, S)` and `Q` over `(S, T)`.
pub fn compose_presented(p: &Coalgebroid, q: &Coalgebroid) -> Result<Composite> {
    if p.s() != q.r() {
        return Err(Error::invalid("middle bases of the composite differ"));
    }
    let f = p.field();
    let (pc, qc) = (&p.carrier, &q.carrier);
    // s·p ⊗ q = p ⊗ q.s and p·s ⊗ q = p ⊗ s.q
    let t = Tensor::new(f, p.dim(), q.dim(), &[(&pc.upper_left, &qc.lower_right), (&pc.upper_right, &qc.lower_left)]);
    let id_p = LinMap::identity(f, p.dim());
    let id_q = LinMap::identity(f, q.dim());
    let on_p = |ops: &[LinMap]| ops.iter().map(|o| t.induce_pair(&t, o, &id_q)).collect::<Result<Vec<_>>>();
    let on_q = |ops: &[LinMap]| ops.iter().map(|o| t.induce_pair(&t, &id_p, o)).collect::<Result<Vec<_>>>();
    let carrier = Multimodule::new(
        pc.r.clone(),
        qc.s.clone(),
        t.dim(),
        on_p(&pc.lower_left)?,
        on_p(&pc.lower_right)?,
        on_q(&qc.upper_left)?,
        on_q(&qc.upper_right)?,
    )?;
    let k = t.dim();
    let pair_class = |a: usize, b: usize| t.project(&SVec::unit(a * q.dim() + b, f));
    // Interleave Δ_P(p) = p1 ⊗ p2 and Δ_Q(q) = q1 ⊗ q2 into (p1⊙q1) ⊗ (p2⊙q2).
    let ambient_delta = |v: &SVec| {
        let mut acc = Acc::new();
        for (idx, x) in v.iter() {
            let (a, b) = (idx / q.dim(), idx % q.dim());
            for (u, y) in p.delta.col(a).iter() {
                for (w, z) in q.delta.col(b).iter() {
                    let (p1, p2) = (u / p.dim(), u % p.dim());
                    let (q1, q2) = (w / q.dim(), w % q.dim());
                    let c = &(x * y) * z;
                    acc.add_vec(&c, &tensor_vec(&pair_class(p1, q1), &pair_class(p2, q2), k));
                }
            }
        }
        acc.into_svec()
    };
    let delta = LinMap::from_fn(f, k, k * k, |i| ambient_delta(&t.q.lift_basis(i)));
    // ε(p⊙q) = ε_Q(ε_P(p).q)
    let ambient_eps = |v: &SVec| {
        let mut acc = Acc::new();
        for (idx, x) in v.iter() {
            let (a, b) = (idx / q.dim(), idx % q.dim());
            let s = p.epsilon.col(a);
            let moved = crate::modkit::combine(f, q.dim(), &qc.lower_left, s).apply(&SVec::unit(b, f));
            acc.add_vec(x, &q.epsilon.apply(&moved));
        }
        acc.into_svec()
    };
    let epsilon = t.q.induce_to_space(q.s().dim(), ambient_eps)?;
    let coalgebroid = Coalgebroid::new(carrier, delta, epsilon)?;
    // Δ must descend from representatives to the quotient.
    t.q.induce(&coalgebroid.tensor_sq.q, |v| ambient_delta(v))?;
    Ok(Composite { coalgebroid, presentation: t })
}

pub fn compose_cgd(p: &Coalgebroid, q: &Coalgebroid) -> Result<Coalgebroid> {
    Ok(compose_presented(p, q)?.coalgebroid)
}

/// Carrier `R ⊗ R` with `r·(a⊗b)·r' = ra ⊗ br'` and `r.(a⊗b).r' = ar' ⊗ rb`.
pub fn sweedler_carrier(r: &Alg) -> Multimodule {
    let f = r.field();
    let n = r.dim();
    let id = LinMap::identity(f, n);
    let by = |i: usize, side: fn(&FiniteAlgebra, &SVec) -> LinMap, first: bool| {
        let m = side(r, &r.basis(i));
        if first {
            m.tensor(&id)
        } else {
            id.tensor(&m)
        }
    };
    let lm: fn(&FiniteAlgebra, &SVec) -> LinMap = |a, x| a.left_mul(x);
    let rm: fn(&FiniteAlgebra, &SVec) -> LinMap = |a, x| a.right_mul(x);
    Multimodule::new(
        r.clone(),
        r.clone(),
        n * n,
        (0..n).map(|i| by(i, lm, false)).collect(),
        (0..n).map(|i| by(i, rm, true)).collect(),
        (0..n).map(|i| by(i, lm, true)).collect(),
        (0..n).map(|i| by(i, rm, false)).collect(),
    )
    .expect("Sweedler carrier shapes")
}

/// The Sweedler coring `E(R)`: `Δ(a⊗b) = (a⊗1) ⊗ (1⊗b)`, `ε(a⊗b) = ab`.
pub fn sweedler_unit(r: &Alg) -> Coalgebroid {
    let f = r.field();
    let n = r.dim();
    let one = r.unit();
    let delta = LinMap::from_fn(f, n * n, n * n * n * n, |k| {
        let (a, b) = (k / n, k % n);
        let left = tensor_vec(&SVec::unit(a, f), one, n);
        let right = tensor_vec(one, &SVec::unit(b, f), n);
        tensor_vec(&left, &right, n * n)
    });
    let epsilon = LinMap::from_fn(f, n * n, n, |k| r.basis_mul(k / n, k % n).clone());
    Coalgebroid::new(sweedler_carrier(r), delta, epsilon).expect("Sweedler coring shapes")
}

/// `(O⊙P)⊙Q → O⊙(P⊙Q)` as a map between the two composites, sending
/// `(o⊙p)⊙q` to `o⊙(p⊙q)`.
pub fn associator(o: &Coalgebroid, p: &Coalgebroid, q: &Coalgebroid) -> Result<(Composite, Composite, LinMap)> {
    let op = compose_presented(o, p)?;
    let pq = compose_presented(p, q)?;
    let op_q = compose_presented(&op.coalgebroid, q)?;
    let o_pq = compose_presented(o, &pq.coalgebroid)?;
    let f = o.field();
    let (pd, qd, pqd) = (p.dim(), q.dim(), pq.coalgebroid.dim());
    let reindex = |v: &SVec| {
        let mut acc = Acc::new();
        for (idx, x) in v.iter() {
            let (xop, c) = (idx / qd, idx % qd);
            for (amb, y) in op.presentation.q.lift_basis(xop).iter() {
                let (a, b) = (amb / pd, amb % pd);
                let inner = pq.presentation.project(&SVec::unit(b * qd + c, f));
                acc.add_vec(&(x * y), &tensor_vec(&SVec::unit(a, f), &inner, pqd));
            }
        }
        o_pq.presentation.project(&acc.into_svec())
    };
    let map = op_q
        .presentation
        .q
        .induce(&crate::modkit::QuotientPresentation::trivial(f, o_pq.coalgebroid.dim()), reindex)?;
    Ok((op_q, o_pq, map))
}

/// `E(R)⊙P → P`, `(a⊗b)⊙p ↦ b.p.a`.
pub fn left_unitor(p: &Coalgebroid) -> Result<(Composite, LinMap)> {
    let e = sweedler_unit(p.r());
    let ep = compose_presented(&e, p)?;
    let (n, pd) = (p.r().dim(), p.dim());
    let map = ep.presentation.q.induce_to_space(pd, |v| {
        let mut acc = Acc::new();
        for (idx, x) in v.iter() {
            let (ab, c) = (idx / pd, idx % pd);
            let (a, b) = (ab / n, ab % n);
            let img = p.carrier.lower_left[b].apply(p.carrier.lower_right[a].col(c));
            acc.add_vec(x, &img);
        }
        acc.into_svec()
    })?;
    Ok((ep, map))
}

/// `P⊙E(S) → P`, `p⊙(a⊗b) ↦ a·p·b`.
pub fn right_unitor(p: &Coalgebroid) -> Result<(Composite, LinMap)> {
    let e = sweedler_unit(p.s());
    let pe = compose_presented(p, &e)?;
    let n = p.s().dim();
    let pd = p.dim();
    let map = pe.presentation.q.induce_to_space(pd, |v| {
        let mut acc = Acc::new();
        for (idx, x) in v.iter() {
            let (c, ab) = (idx / (n * n), idx % (n * n));
            let (a, b) = (ab / n, ab % n);
            let img = p.carrier.upper_left[a].apply(p.carrier.upper_right[b].col(c));
            acc.add_vec(x, &img);
        }
        acc.into_svec()
    })?;
    Ok((pe, map))
}

fn coherence_item(r: &mut Report, id: &str, built: Result<(Coalgebroid, Coalgebroid, LinMap)>) {
    match built {
        Ok((src, tgt, map)) => {
            let invertible = map.src() == map.tgt() && map.rank() == map.src();
            r.check(&format!("{id}.invertible"), invertible, || {
                format!("rank {} on dimensions {} -> {}", map.rank(), map.src(), map.tgt())
            });
            match CoalgebroidMap::new(Arc::new(src), Arc::new(tgt), map) {
                Ok(m) => {
                    let rep = check_coalgebroid_map(&m);
                    r.check(&format!("{id}.map"), rep.pass(), || rep.failures().join(", "));
                }
                Err(e) => r.record(&format!("{id}.map"), Err(e.to_string())),
            }
        }
        Err(e) => r.record(&format!("{id}.invertible"), Err(e.to_string())),
    }
}

/// Builds the associativity and unit reindexings on a composable chain and
/// verifies each is an invertible coalgebroid map.
pub fn coherence_check(o: &Coalgebroid, p: &Coalgebroid, q: &Coalgebroid) -> Report {
    let mut r = Report::new("coherence");
    coherence_item(&mut r, "coh.assoc", associator(o, p, q).map(|(a, b, m)| (a.coalgebroid, b.coalgebroid, m)));
    for (name, c) in [("o", o), ("p", p), ("q", q)] {
        coherence_item(
            &mut r,
            &format!("coh.left_unit.{name}"),
            left_unitor(c).map(|(a, m)| (a.coalgebroid, c.clone(), m)),
        );
        coherence_item(
            &mut r,
            &format!("coh.right_unit.{name}"),
            right_unitor(c).map(|(a, m)| (a.coalgebroid, c.clone(), m)),
        );
    }
    r
}

use std::sync::Arc;

use crate::algkit::{Alg, FiniteAlgebra};
use crate::bgdkit::{
    actions_from_source_target, check_bialgebroid_map, module_tensor, trivial_module, Bialgebroid, BialgebroidMap,
};
use crate::error::{Error, Result};
use crate::exactfield::{Acc, LinMap, SVec};
use crate::modkit::{combine, hom_modules, progenerator_report, Bimodule, HomSpace, Tensor};
use crate::report::Report;

use super::cell::OneCell;
use super::hp::{evaluation_map, hp_monoidal_maps, is_invertible, unit_map};

fn coords(space: &HomSpace, m: &LinMap, what: &str) -> Result<SVec> {
    space.coords(m).ok_or_else(|| Error::ill_defined(format!("{what} is not a B-module map")))
}

/// `T = Hom_B(P, S)` with convolution, `E = End_B(P)` with composition, and
/// the maps `s_E, t_E: T → E`.
#[derive(Clone, Debug)]
pub struct EndoData {
    pub t_space: HomSpace,
    pub t_alg: Alg,
    pub e_space: HomSpace,
    pub e_alg: Alg,
    pub s_e: LinMap,
    pub t_e: LinMap,
}

/// `Σ f(p1, p2)` over the stored representative of `Δ_P(p)`.
fn over_delta(p: &OneCell, i: usize, mut f: impl FnMut(usize, usize) -> SVec) -> SVec {
    let n = p.dim();
    let mut acc = Acc::new();
    for (k, x) in p.delta().col(i).iter() {
        acc.add_vec(x, &f(k / n, k % n));
    }
    acc.into_svec()
}

/// `s_E(τ)(p) = Σ p1 ◁ s_B(τ(p2))`.
pub fn source_of(p: &OneCell, tau: &LinMap) -> LinMap {
    LinMap::from_fn(p.field(), p.dim(), p.dim(), |i| {
        over_delta(p, i, |u, v| p.right_by_source(tau.col(v)).col(u).clone())
    })
}

/// `t_E(τ)(p) = Σ p2 ◁ t_B(τ(p1))`.
pub fn target_of(p: &OneCell, tau: &LinMap) -> LinMap {
    LinMap::from_fn(p.field(), p.dim(), p.dim(), |i| {
        over_delta(p, i, |u, v| p.right_by_target(tau.col(u)).col(v).clone())
    })
}

pub fn endo_data(p: &OneCell) -> Result<EndoData> {
    let f = p.field();
    let n = p.dim();
    let pb = p.right_module();
    let sb = &p.from.base;

    let triv = trivial_module(&p.from)?;
    let t_space = hom_modules(&pb, &triv)?;
    let td = t_space.dim();
    let mut table = Vec::with_capacity(td * td);
    for a in &t_space.basis {
        for b in &t_space.basis {
            let conv = LinMap::from_fn(f, n, sb.dim(), |i| over_delta(p, i, |u, v| sb.mul(a.col(u), b.col(v))));
            table.push(coords(&t_space, &conv, "convolution")?);
        }
    }
    let t_unit = coords(&t_space, p.epsilon(), "ε_P")?;
    let t_alg = Arc::new(FiniteAlgebra::new(f, td, table, t_unit)?);

    let e_space = hom_modules(&pb, &pb)?;
    let ed = e_space.dim();
    let mut table = Vec::with_capacity(ed * ed);
    for a in &e_space.basis {
        for b in &e_space.basis {
            table.push(coords(&e_space, &a.compose(b), "composite")?);
        }
    }
    let e_unit = coords(&e_space, &LinMap::identity(f, n), "identity")?;
    let e_alg = Arc::new(FiniteAlgebra::new(f, ed, table, e_unit)?);

    let s_e =
        t_space.basis.iter().map(|tau| coords(&e_space, &source_of(p, tau), "s_E(τ)")).collect::<Result<Vec<_>>>()?;
    let t_e =
        t_space.basis.iter().map(|tau| coords(&e_space, &target_of(p, tau), "t_E(τ)")).collect::<Result<Vec<_>>>()?;
    Ok(EndoData { t_space, t_alg, e_space, e_alg, s_e: LinMap::new(f, ed, s_e), t_e: LinMap::new(f, ed, t_e) })
}

/// `E ⊗_T E` with `α∘s_E(τ) ⊗ β = α ⊗ β∘t_E(τ)`, presented exactly as the
/// endomorphism bialgebroid's own `tensor_sq`.
pub fn endo_square(d: &EndoData) -> Result<Tensor> {
    let mm = actions_from_source_target(&d.e_alg, &d.t_alg, &d.s_e, &d.t_e)?;
    Ok(Tensor::new(d.e_alg.field(), mm.dim, mm.dim, &[(&mm.upper_right, &mm.upper_left)]))
}

/// `Ha_{P,P}: E ⊗_T E → Hom_B(P, P ⊗_S P)` together with its codomain.
pub fn ha_pp(p: &OneCell, d: &EndoData, dom: &Tensor) -> Result<(LinMap, Tensor, HomSpace)> {
    let (pp, pp_mod) = p.square_module()?;
    let cod = hom_modules(&p.right_module(), &pp_mod)?;
    let map = evaluation_map(p, &d.e_space.basis, &d.e_space.basis, dom, &pp, &cod)?;
    Ok((map, pp, cod))
}

/// `Q ⊗_T Q → Hom_B(P, B ⊗_S B)` for `Q = Hom_B(P, B)`.
pub fn ha_qq(p: &OneCell, d: &EndoData) -> Result<LinMap> {
    let f = p.field();
    let b = &p.from;
    let breg = Bimodule::right_regular(&b.total);
    let q = hom_modules(&p.right_module(), &breg)?;
    let qd = q.dim();
    let bs = |s: &SVec| b.total.right_mul(&b.s.apply(s));
    let bt = |s: &SVec| b.total.right_mul(&b.t.apply(s));
    let mut left_ops = Vec::new();
    let mut right_ops = Vec::new();
    for tau in &d.t_space.basis {
        let mut l = Vec::with_capacity(qd);
        let mut r = Vec::with_capacity(qd);
        for qk in &q.basis {
            // (τ·q)(p) = q(p2) t_B(τ(p1)), (q·τ)(p) = q(p1) s_B(τ(p2))
            let tq = LinMap::from_fn(f, p.dim(), b.dim(), |i| over_delta(p, i, |u, v| bt(tau.col(u)).apply(qk.col(v))));
            let qt = LinMap::from_fn(f, p.dim(), b.dim(), |i| over_delta(p, i, |u, v| bs(tau.col(v)).apply(qk.col(u))));
            l.push(coords(&q, &tq, "τ·q")?);
            r.push(coords(&q, &qt, "q·τ")?);
        }
        left_ops.push(LinMap::new(f, qd, l));
        right_ops.push(LinMap::new(f, qd, r));
    }
    let dom = Tensor::new(f, qd, qd, &[(&right_ops, &left_ops)]);
    let (bb, bb_mod) = module_tensor(b, &breg, &breg)?;
    let cod = hom_modules(&p.right_module(), &bb_mod)?;
    evaluation_map(p, &q.basis, &q.basis, &dom, &bb, &cod)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrongRoute {
    /// `E ⊗_T E → Hom_B(P, P⊗_S P)` for a progenerator.
    Endomorphisms,
    /// `Q ⊗_T Q → Hom_B(P, B⊗_S B)` for a finitely generated projective.
    Dual,
    /// `map2` and `map0` at the regular module pair.
    Regular,
}

impl StrongRoute {
    pub fn label(self) -> &'static str {
        match self {
            StrongRoute::Endomorphisms => "E⊗_T E",
            StrongRoute::Dual => "Q⊗_T Q",
            StrongRoute::Regular => "regular pair",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Strongness {
    pub report: Report,
    pub route: StrongRoute,
    /// The deciding map and, when it is invertible, its inverse.
    pub map: LinMap,
    pub inverse: Option<LinMap>,
    /// `R → T`, `r ↦ ε_P(r.−)`.
    pub map0: LinMap,
}

pub fn strongness_check(p: &OneCell) -> Result<Strongness> {
    let mut report = Report::new("strongness");
    let (prog, _) = progenerator_report(&p.right_module())?;
    let projective = prog.passed("prog.projective");
    let generator = prog.passed("prog.generator");
    let d = endo_data(p)?;
    let map0 = unit_map(p, &d.t_space)?;
    let (route, map) = if projective && generator {
        let dom = endo_square(&d)?;
        (StrongRoute::Endomorphisms, ha_pp(p, &d, &dom)?.0)
    } else if projective {
        (StrongRoute::Dual, ha_qq(p, &d)?)
    } else {
        let breg = Bimodule::right_regular(&p.from.total);
        let mm = hp_monoidal_maps(p, &breg, &breg)?;
        let ok0 = mm.map0_invertible();
        report.check("strong.map0", ok0, || {
            format!("R → Ha(P)(S) has rank {} on {} -> {}", mm.map0.rank(), mm.map0.src(), mm.map0.tgt())
        });
        (StrongRoute::Regular, mm.map2)
    };
    report.note("route", route.label());
    report.note("map0_invertible", is_invertible(&map0));
    let inverse = map.invert().ok().flatten();
    report.check("strong.map", inverse.is_some(), || {
        format!("{} map has rank {} on {} -> {}", route.label(), map.rank(), map.src(), map.tgt())
    });
    Ok(Strongness { report, route, map, inverse, map0 })
}

/// `End_B(P)` as a bialgebroid over `T = Hom_B(P, S)`.
#[derive(Clone, Debug)]
pub struct EndoBialgebroid {
    pub data: EndoData,
    pub bialgebroid: Arc<Bialgebroid>,
    /// `Ha_{P,P}` and its inverse.
    pub ha: LinMap,
    pub ha_inverse: LinMap,
}

impl EndoBialgebroid {
    /// `⟨_E P_B, Δ_P, ε_P⟩` as a cell `B → E`.
    pub fn cell(&self, p: &OneCell) -> Result<OneCell> {
        let carrier = Bimodule::new(
            self.data.e_alg.clone(),
            p.from.total.clone(),
            p.dim(),
            self.data.e_space.basis.clone(),
            p.carrier.right_act.clone(),
        )?;
        OneCell::new(p.from.clone(), self.bialgebroid.clone(), carrier, p.delta().clone(), p.epsilon().clone())
    }

    /// The operator of an `E` element on `P`.
    pub fn operator(&self, x: &SVec) -> LinMap {
        let n = self.data.e_space.src;
        combine(self.data.e_alg.field(), n, &self.data.e_space.basis, x)
    }
}

pub fn endomorphism_bialgebroid(p: &OneCell) -> Result<EndoBialgebroid> {
    let f = p.field();
    let n = p.dim();
    let d = endo_data(p)?;
    let dom = endo_square(&d)?;
    let (ha, pp, cod) = ha_pp(p, &d, &dom)?;
    let ha_inverse =
        ha.invert()?.ok_or_else(|| Error::precondition("Ha_{P,P} is not invertible: the comonoid is not strong"))?;
    let ed = d.e_alg.dim();
    let delta_cols = d
        .e_space
        .basis
        .iter()
        .map(|alpha| {
            let m = LinMap::from_fn(f, n, pp.dim(), |i| pp.project(&p.delta().apply(alpha.col(i))));
            let c = coords(&cod, &m, "Δ_P∘α")?;
            Ok(dom.lift(&ha_inverse.apply(&c)))
        })
        .collect::<Result<Vec<_>>>()?;
    let eps_cols = d
        .e_space
        .basis
        .iter()
        .map(|alpha| coords(&d.t_space, &p.epsilon().compose(alpha), "ε_P∘α"))
        .collect::<Result<Vec<_>>>()?;
    let bialgebroid = Bialgebroid::new(
        d.e_alg.clone(),
        d.t_alg.clone(),
        d.s_e.clone(),
        d.t_e.clone(),
        LinMap::new(f, ed * ed, delta_cols),
        LinMap::new(f, d.t_alg.dim(), eps_cols),
    )?;
    Ok(EndoBialgebroid { data: d, bialgebroid: Arc::new(bialgebroid), ha, ha_inverse })
}

/// `λ(a) = a ▷ −` as a bialgebroid map `A → E`, with its check report.
pub fn lambda_map(p: &OneCell, e: &EndoBialgebroid) -> Result<(BialgebroidMap, Report)> {
    let cols = p.carrier.left_act.iter().map(|l| coords(&e.data.e_space, l, "a▷−")).collect::<Result<Vec<_>>>()?;
    let lam = LinMap::new(p.field(), e.data.e_alg.dim(), cols);
    let m = BialgebroidMap::new(p.to.clone(), e.bialgebroid.clone(), lam)?;
    let report = check_bialgebroid_map(&m);
    Ok((m, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkit::cyclic_group_table;
    use crate::bgdkit::{check_bialgebroid, group_bialgebra};
    use crate::exactfield::Field;
    use crate::moritakit::cell::{check_one_cell, pointwise_comonoid};

    #[test]
    fn regular_cell_endomorphisms() {
        let g = Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(2)).unwrap());
        let c = OneCell::regular(g).unwrap();
        let s = strongness_check(&c).unwrap();
        assert!(s.report.pass(), "{}", s.report.to_text());
        assert_eq!(s.route, StrongRoute::Endomorphisms);
        let e = endomorphism_bialgebroid(&c).unwrap();
        let rep = check_bialgebroid(&e.bialgebroid);
        assert!(rep.pass(), "{}", rep.to_text());
        let (_, lrep) = lambda_map(&c, &e).unwrap();
        assert!(lrep.pass(), "{}", lrep.to_text());
        assert_eq!(lrep.notes["isomorphism"], "true");
        assert!(check_one_cell(&e.cell(&c).unwrap()).pass());
    }

    #[test]
    fn pointwise_endomorphisms_are_matrices() {
        let c = pointwise_comonoid(Field::Rationals, 3).unwrap();
        let e = endomorphism_bialgebroid(&c).unwrap();
        assert_eq!(e.data.e_alg.dim(), 9);
        assert_eq!(e.data.t_alg.dim(), 3);
        assert!(e.data.t_alg.is_commutative());
        let rep = check_bialgebroid(&e.bialgebroid);
        assert!(rep.pass(), "{}", rep.to_text());
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algkit::FiniteAlgebra;
use crate::bgdkit::Bialgebroid;
use crate::cgdkit::{
    check_coalgebroid_map, compose_presented, right_unitor, sweedler_unit, Coalgebroid, CoalgebroidMap, Composite,
};
use crate::error::{Error, Result};
use crate::exactfield::{solve_affine, tensor_vec, Acc, LinMap, SVec};
use crate::modkit::{intertwiners, Bimodule};
use crate::moritakit::{is_invertible, OneCell};

/// Cells `P: E(R) → E(S)` and `Q: E(S) → E(R)` forming an equivalence, and a
/// bialgebroid `B` over `S`.
#[derive(Clone, Debug)]
pub struct BaseChangeData {
    pub p: OneCell,
    pub q: OneCell,
    pub b: Arc<Bialgebroid>,
}

/// `A = Q⊙B⊙P` over `R` with the cells `X = Q⊙B: B → A` and `Y = B⊙P: A → B`.
///
/// `theta: P⊙Q → E(S)` and `phi: E(R) → Q⊙P` are the comparison
/// isomorphisms used for the product and unit of `A`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub a: Arc<Bialgebroid>,
    pub x: OneCell,
    pub y: OneCell,
    pub theta: LinMap,
    pub phi: LinMap,
}

fn all_actions(c: &Coalgebroid) -> Vec<LinMap> {
    let m = &c.carrier;
    [&m.lower_left, &m.lower_right, &m.upper_left, &m.upper_right].into_iter().flatten().cloned().collect()
}

/// A counital map commuting with all four actions, checked to be an
/// invertible coalgebroid map.
fn solve_comparison(src: &Coalgebroid, tgt: &Coalgebroid, what: &str) -> Result<LinMap> {
    let f = src.field();
    let hom = intertwiners(f, src.dim(), tgt.dim(), &all_actions(src), &all_actions(tgt))?;
    let mut rows: BTreeMap<usize, Acc> = BTreeMap::new();
    for (k, g) in hom.basis.iter().enumerate() {
        for (idx, x) in tgt.epsilon.compose(g).flatten().iter() {
            rows.entry(*idx).or_default().add(k, x);
        }
    }
    let target = src.epsilon.flatten();
    let eqs = (0..src.dim() * src.s().dim()).map(|idx| {
        let row = rows.remove(&idx).map(Acc::into_svec).unwrap_or_default();
        (row, target.coeff(idx, f))
    });
    let c =
        solve_affine(f, hom.dim(), eqs).ok_or_else(|| Error::precondition(format!("no counital comparison {what}")))?;
    let map = hom.element(&c);
    let rep = check_coalgebroid_map(&CoalgebroidMap::new(Arc::new(src.clone()), Arc::new(tgt.clone()), map.clone())?);
    if !rep.pass() || !is_invertible(&map) {
        return Err(Error::precondition(format!(
            "comparison {what} is not a coalgebroid isomorphism: {}",
            rep.failures().join(", ")
        )));
    }
    Ok(map)
}

/// Pure-tensor representatives `(a, b, coefficient)` of a basis vector of a composite.
fn reps(c: &Composite, k: usize) -> Vec<(usize, usize, crate::exactfield::Scalar)> {
    let n = c.presentation.n;
    c.presentation.q.lift_basis(k).iter().map(|(i, x)| (i / n, i % n, x.clone())).collect()
}

pub fn sqm_base_change(d: &BaseChangeData) -> Result<BaseChange> {
    let (p, q, b) = (&d.p, &d.q, &d.b);
    let r_alg = p.from.base.clone();
    let s_alg = p.to.base.clone();
    if q.from.base != s_alg || q.to.base != r_alg || b.base != s_alg {
        return Err(Error::invalid("base-change data over mismatched base algebras"));
    }
    let f = b.field();
    let (qc, bc, pc) = (&q.coring, &b.coring, &p.coring);
    let qb = compose_presented(qc, bc)?;
    let qbp = compose_presented(&qb.coalgebroid, pc)?;
    let bp = compose_presented(bc, pc)?;
    let pq = compose_presented(pc, qc)?;
    let qp = compose_presented(qc, pc)?;
    let theta = solve_comparison(&pq.coalgebroid, &sweedler_unit(&s_alg), "P⊙Q → E(S)")?;
    let phi = solve_comparison(&sweedler_unit(&r_alg), &qp.coalgebroid, "E(R) → Q⊙P")?;
    // B⊙E(S) → B, b⊙(s⊗s') ↦ s·b·s'
    let (be, unitor) = right_unitor(bc)?;

    let (qd, bd, pd) = (q.dim(), b.dim(), p.dim());
    let se = s_alg.dim() * s_alg.dim();
    let class_qb = |x: usize, bv: &SVec| qb.presentation.project(&tensor_vec(&SVec::unit(x, f), bv, bd));
    let class_a =
        |x: usize, bv: &SVec, z: usize| qbp.presentation.project(&tensor_vec(&class_qb(x, bv), &SVec::unit(z, f), pd));
    let class_bp = |bv: &SVec, z: usize| bp.presentation.project(&tensor_vec(bv, &SVec::unit(z, f), pd));
    // s1·b·s2 b' for θ(p⊙q') = s1 ⊗ s2
    let transport = |bv: &SVec, z: usize, x: usize, bv2: &SVec| {
        let e = theta.apply(&pq.presentation.project(&SVec::unit(z * qd + x, f)));
        let moved = unitor.apply(&be.presentation.project(&tensor_vec(bv, &e, se)));
        b.total.mul(&moved, bv2)
    };
    // A basis vectors as sums of q ⊗ b ⊗ p.
    let a_reps: Vec<Vec<_>> = (0..qbp.coalgebroid.dim())
        .map(|k| {
            reps(&qbp, k)
                .into_iter()
                .flat_map(|(qbi, z, c)| reps(&qb, qbi).into_iter().map(move |(x, y, c2)| (x, y, z, &c * &c2)))
                .collect()
        })
        .collect();
    let ad = a_reps.len();
    let mut table = Vec::with_capacity(ad * ad);
    for u in &a_reps {
        for v in &a_reps {
            let mut acc = Acc::new();
            for (x, y, z, c) in u {
                for (x2, y2, z2, c2) in v {
                    let bv = transport(&b.total.basis(*y), *z, *x2, &b.total.basis(*y2));
                    acc.add_vec(&(c * c2), &class_a(*x, &bv, *z2));
                }
            }
            table.push(acc.into_svec());
        }
    }
    let eta = |e: &SVec| {
        let mut acc = Acc::new();
        for (k, c) in phi.apply(e).iter() {
            for (x, z, c2) in reps(&qp, *k) {
                acc.add_vec(&(c * &c2), &class_a(x, b.total.unit(), z));
            }
        }
        acc.into_svec()
    };
    let rd = r_alg.dim();
    let one_r = r_alg.unit();
    let unit = eta(&tensor_vec(one_r, one_r, rd));
    let total = Arc::new(FiniteAlgebra::new(f, ad, table, unit)?);
    let s_a = LinMap::from_fn(f, rd, ad, |i| eta(&tensor_vec(one_r, &SVec::unit(i, f), rd)));
    let t_a = LinMap::from_fn(f, rd, ad, |i| eta(&tensor_vec(&SVec::unit(i, f), one_r, rd)));
    let a = Arc::new(Bialgebroid::new(
        total.clone(),
        r_alg.clone(),
        s_a,
        t_a,
        qbp.coalgebroid.delta.clone(),
        qbp.coalgebroid.epsilon.clone(),
    )?);

    // X = Q⊙B
    let xd = qb.coalgebroid.dim();
    let x_left = a_reps
        .iter()
        .map(|u| {
            LinMap::from_fn(f, xd, xd, |k| {
                let mut acc = Acc::new();
                for (x, y, z, c) in u {
                    for (x2, y2, c2) in reps(&qb, k) {
                        let bv = transport(&b.total.basis(*y), *z, x2, &b.total.basis(y2));
                        acc.add_vec(&(c * &c2), &class_qb(*x, &bv));
                    }
                }
                acc.into_svec()
            })
        })
        .collect();
    let x_right = (0..bd)
        .map(|w| {
            LinMap::from_fn(f, xd, xd, |k| {
                let mut acc = Acc::new();
                for (x, y, c) in reps(&qb, k) {
                    acc.add_vec(&c, &class_qb(x, b.total.basis_mul(y, w)));
                }
                acc.into_svec()
            })
        })
        .collect();
    let x_mod = Bimodule::new(total.clone(), b.total.clone(), xd, x_left, x_right)?;
    let x = OneCell::new(b.clone(), a.clone(), x_mod, qb.coalgebroid.delta.clone(), qb.coalgebroid.epsilon.clone())?;

    // Y = B⊙P
    let yd = bp.coalgebroid.dim();
    let y_left = (0..bd)
        .map(|w| {
            LinMap::from_fn(f, yd, yd, |k| {
                let mut acc = Acc::new();
                for (y, z, c) in reps(&bp, k) {
                    acc.add_vec(&c, &class_bp(b.total.basis_mul(w, y), z));
                }
                acc.into_svec()
            })
        })
        .collect();
    let y_right = a_reps
        .iter()
        .map(|u| {
            LinMap::from_fn(f, yd, yd, |k| {
                let mut acc = Acc::new();
                for (y, z, c) in reps(&bp, k) {
                    for (x2, y2, z2, c2) in u {
                        let bv = transport(&b.total.basis(y), z, *x2, &b.total.basis(*y2));
                        acc.add_vec(&(&c * c2), &class_bp(&bv, *z2));
                    }
                }
                acc.into_svec()
            })
        })
        .collect();
    let y_mod = Bimodule::new(b.total.clone(), total, yd, y_left, y_right)?;
    let y = OneCell::new(a.clone(), b.clone(), y_mod, bp.coalgebroid.delta.clone(), bp.coalgebroid.epsilon.clone())?;
    Ok(BaseChange { a, x, y, theta, phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkit::cyclic_group_table;
    use crate::bgdkit::{check_bialgebroid, group_bialgebra, sweedler_bialgebroid};
    use crate::exactfield::Field;
    use crate::examples::{azumaya_inverse_cell, build_azumaya_cell};
    use crate::moritakit::{check_one_cell, morita_verdict};

    fn qz2() -> Arc<Bialgebroid> {
        Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(2)).unwrap())
    }

    #[test]
    fn identity_cells_give_back_b() {
        let e = Arc::new(sweedler_bialgebroid(&Arc::new(FiniteAlgebra::ground(Field::Rationals))).unwrap());
        let id = OneCell::regular(e).unwrap();
        let bc = sqm_base_change(&BaseChangeData { p: id.clone(), q: id, b: qz2() }).unwrap();
        assert_eq!(bc.a.dim(), 2);
        assert!(check_bialgebroid(&bc.a).pass());
        assert!(morita_verdict(&bc.x).unwrap().equivalent);
    }

    #[test]
    fn matrix_base_change() {
        let r = Arc::new(FiniteAlgebra::matrix(Field::Rationals, 2).unwrap());
        let d = BaseChangeData { p: build_azumaya_cell(&r).unwrap(), q: azumaya_inverse_cell(&r).unwrap(), b: qz2() };
        let bc = sqm_base_change(&d).unwrap();
        assert_eq!(bc.a.dim(), 32);
        let rep = check_bialgebroid(&bc.a);
        assert!(rep.pass(), "{}", rep.to_text());
        assert!(check_one_cell(&bc.x).pass(), "{}", check_one_cell(&bc.x).to_text());
        assert!(check_one_cell(&bc.y).pass(), "{}", check_one_cell(&bc.y).to_text());
        let v = morita_verdict(&bc.x).unwrap();
        assert!(v.equivalent, "{}", v.report.to_text());
    }
}

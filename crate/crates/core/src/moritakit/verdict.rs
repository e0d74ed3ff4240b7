use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactfield::{tensor_vec, Acc, LinMap, SVec};
use crate::modkit::{hom_modules, progenerator_report, tensor_over_ring, Bimodule, Tensor};
use crate::report::Report;

use super::cell::{check_one_cell, OneCell};
use super::endo::{endomorphism_bialgebroid, lambda_map, strongness_check};
use super::hp::hp_apply;

/// `P ⊗_B Q` for cells `P: B → A` and `Q: C → B`, with its presentation.
pub fn compose_bgd_presented(p: &OneCell, q: &OneCell) -> Result<(OneCell, Tensor)> {
    if p.from.total != q.to.total || p.from.base != q.to.base {
        return Err(Error::invalid("middle bialgebroids of the composite differ"));
    }
    let f = p.field();
    let (t, carrier) = tensor_over_ring(&p.carrier, &q.carrier)?;
    let (pd, qd, k) = (p.dim(), q.dim(), t.dim());
    let class = |a: usize, b: usize| t.project(&SVec::unit(a * qd + b, f));
    // (p⊗q) ↦ (p1⊗q1) ⊗ (p2⊗q2)
    let ambient_delta = |v: &SVec| {
        let mut acc = Acc::new();
        for (idx, x) in v.iter() {
            for (u, y) in p.delta().col(idx / qd).iter() {
                for (w, z) in q.delta().col(idx % qd).iter() {
                    let c = &(x * y) * z;
                    let left = class(u / pd, w / qd);
                    let right = class(u % pd, w % qd);
                    acc.add_vec(&c, &tensor_vec(&left, &right, k));
                }
            }
        }
        acc.into_svec()
    };
    // ε(p⊗q) = ε_Q(s_B(ε_P(p)) ▷ q)
    let b = &p.from;
    let epsilon = t.q.induce_to_space(q.from.base.dim(), |v| {
        let mut acc = Acc::new();
        for (idx, x) in v.iter() {
            let sb = b.s.apply(p.epsilon().col(idx / qd));
            let moved = q.carrier.act_left(&sb, &SVec::unit(idx % qd, f));
            acc.add_vec(x, &q.epsilon().apply(&moved));
        }
        acc.into_svec()
    })?;
    let delta = LinMap::from_fn(f, k, k * k, |i| ambient_delta(&t.q.lift_basis(i)));
    let cell = OneCell::new(q.from.clone(), p.to.clone(), carrier, delta, epsilon)?;
    t.q.induce(&cell.tensor_sq().q, |v| ambient_delta(v))?;
    Ok((cell, t))
}

pub fn compose_bgd(p: &OneCell, q: &OneCell) -> Result<OneCell> {
    Ok(compose_bgd_presented(p, q)?.0)
}

/// `(dim Hom_B(P, Hom_C(Q, M)), dim Hom_C(P ⊗_B Q, M))`.
pub fn hom_adjunction_dims(p: &OneCell, q: &OneCell, m: &Bimodule) -> Result<(usize, usize)> {
    let inner = hp_apply(q, m)?;
    let lhs = hom_modules(&p.right_module(), &inner.module)?.dim();
    let pq = compose_bgd(p, q)?;
    let rhs = hom_modules(&pq.right_module(), m)?.dim();
    Ok((lhs, rhs))
}

/// The order in which Morita conditions are reported; the first failing one
/// localizes a negative verdict.
pub const MORITA_ORDER: [&str; 5] =
    ["morita.projective", "morita.generator", "morita.strong", "morita.faithfully_balanced", "morita.lambda_iso"];

#[derive(Clone, Debug)]
pub struct MoritaVerdict {
    pub report: Report,
    pub equivalent: bool,
    pub first_failure: Option<&'static str>,
    pub certificate: Option<Value>,
}

fn matrix_json(m: &LinMap) -> Value {
    json!(m.to_matrix().to_strings())
}

pub fn morita_verdict(p: &OneCell) -> Result<MoritaVerdict> {
    let cell = check_one_cell(p);
    if !cell.pass() {
        return Err(Error::precondition(format!("not a 1-cell: {}", cell.failures().join(", "))));
    }
    let mut r = Report::new("morita");
    let (prog, witness) = progenerator_report(&p.carrier)?;
    for (src, dst) in [
        ("prog.projective", "morita.projective"),
        ("prog.generator", "morita.generator"),
        ("prog.faithfully_balanced", "morita.faithfully_balanced"),
    ] {
        let item = prog.item(src).cloned().expect("progenerator item");
        r.record(dst, if item.pass { Ok(()) } else { Err(item.witness.unwrap_or_default()) });
    }
    let strong = strongness_check(p)?;
    r.check("morita.strong", strong.report.pass(), || strong.report.failures().join(", "));
    r.note("strong_route", strong.route.label());

    let mut lambda = None;
    if strong.inverse.is_some() || strong.report.pass() {
        match endomorphism_bialgebroid(p).and_then(|e| lambda_map(p, &e).map(|l| (e, l))) {
            Ok((e, (m, rep))) => {
                let inv = if m.f.map.src() == m.f.map.tgt() { m.f.map.invert()? } else { None };
                let ok = rep.pass() && inv.is_some();
                r.check("morita.lambda_iso", ok, || {
                    let mut w = rep.failures().join(", ");
                    if inv.is_none() {
                        w.push_str(&format!(
                            " λ has rank {} on {} -> {}",
                            m.f.map.rank(),
                            m.f.map.src(),
                            m.f.map.tgt()
                        ));
                    }
                    w.trim().to_string()
                });
                lambda = Some((e, m, inv));
            }
            Err(e) => r.record("morita.lambda_iso", Err(e.to_string())),
        }
    } else {
        r.record("morita.lambda_iso", Err("not evaluated: the comonoid is not strong".into()));
    }

    let first_failure = MORITA_ORDER.iter().copied().find(|id| !r.passed(id));
    if let Some(id) = first_failure {
        r.note("first_failure", id);
    }
    let equivalent = first_failure.is_none();
    let certificate = if equivalent {
        let (e, m, inv) = lambda.expect("λ evaluated on success");
        Some(json!({
            "dual_basis": witness.dual_basis.iter().map(matrix_json).collect::<Vec<_>>(),
            "trace_unit": witness
                .trace_unit
                .iter()
                .map(|(k, j, c)| json!({"hom": k, "basis": j, "coeff": c.to_string()}))
                .collect::<Vec<_>>(),
            "dual_space_basis": witness.dual.as_ref().map(|d| d.basis.iter().map(matrix_json).collect::<Vec<_>>()),
            "strongness": {
                "route": strong.route.label(),
                "map": matrix_json(&strong.map),
                "inverse": strong.inverse.as_ref().map(matrix_json),
            },
            "end_basis": e.data.e_space.basis.iter().map(matrix_json).collect::<Vec<_>>(),
            "lambda": matrix_json(&m.f.map),
            "lambda_inverse": inv.as_ref().map(matrix_json),
            "lambda0": matrix_json(&m.f0.map),
        }))
    } else {
        None
    };
    Ok(MoritaVerdict { report: r, equivalent, first_failure, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkit::cyclic_group_table;
    use crate::bgdkit::group_bialgebra;
    use crate::exactfield::Field;
    use std::sync::Arc;

    #[test]
    fn regular_cell_is_equivalence() {
        let g = Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(2)).unwrap());
        let c = OneCell::regular(g).unwrap();
        let v = morita_verdict(&c).unwrap();
        assert!(v.equivalent, "{}", v.report.to_text());
        assert!(v.certificate.is_some());
    }

    #[test]
    fn bare_comonoid_is_not_lambda_iso() {
        let c = crate::moritakit::pointwise_comonoid(Field::Rationals, 3).unwrap();
        let v = morita_verdict(&c).unwrap();
        assert!(!v.equivalent);
        assert!(!v.report.passed("morita.lambda_iso"));
    }

    #[test]
    fn regular_composites() {
        let g = Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(3)).unwrap());
        let c = OneCell::regular(g.clone()).unwrap();
        let cc = compose_bgd(&c, &c).unwrap();
        assert_eq!(cc.dim(), 3);
        assert!(check_one_cell(&cc).pass());
        let m = Bimodule::right_regular(&g.total);
        let (l, r) = hom_adjunction_dims(&c, &c, &m).unwrap();
        assert_eq!(l, r);
    }
}

use crate::bgdkit::trivial_module;
use crate::error::{Error, Result};
use crate::exactfield::{solve_affine, tensor_vec, Acc, LinMap, SVec};
use crate::report::Report;

use super::cell::{diagonal_apply, OneCell};
use super::endo::EndoBialgebroid;

/// A multiplication `ν: P ⊗ P → P` (ambient coordinates) and an invariant `ι: S → P`.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub nu: LinMap,
    pub iota: LinMap,
}

impl FrobeniusData {
    pub fn new(p: &OneCell, nu: LinMap, iota: LinMap) -> Result<Self> {
        let n = p.dim();
        if nu.src() != n * n || nu.tgt() != n || iota.src() != p.from.base.dim() || iota.tgt() != n {
            return Err(Error::dim("Frobenius data shapes"));
        }
        Ok(FrobeniusData { nu, iota })
    }

    fn mul(&self, n: usize, x: &SVec, y: &SVec) -> SVec {
        self.nu.apply(&tensor_vec(x, y, n))
    }
}

/// Verdict of [`frobenius_check`] with the evaluation found by the solver.
#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    pub report: Report,
    /// `ev: P ⊗_S P → S` in quotient coordinates.
    pub evaluation: Option<LinMap>,
}

pub fn frobenius_check(p: &OneCell, fd: &FrobeniusData) -> Result<FrobeniusReport> {
    let mut r = Report::new("frobenius");
    let f = p.field();
    let n = p.dim();
    let b = &p.from;
    let (bd, sd) = (b.dim(), b.base.dim());
    let (pp, pp_mod) = p.square_module()?;
    let triv = trivial_module(b)?;

    let descends = pp.q.induce_to_space(n, |v| fd.nu.apply(v));
    r.record("frob.nu_balanced", descends.map(|_| ()).map_err(|e| e.to_string()));

    let bad = (0..bd).find_map(|j| {
        (0..n * n).find_map(|k| {
            let e = SVec::unit(k, f);
            let lhs =
                fd.nu.apply(&diagonal_apply(b.delta().col(j), bd, n, &p.carrier.right_act, &p.carrier.right_act, &e));
            let rhs = p.carrier.right_act[j].apply(fd.nu.col(k));
            (lhs != rhs).then_some((j, k))
        })
    });
    r.check("frob.nu_b_linear", bad.is_none(), || {
        let (j, k) = bad.unwrap();
        format!("ν((e_{} ⊗ e_{}) ◁ b_{j}) ≠ ν(e_{} ⊗ e_{}) ◁ b_{j}", k / n, k % n, k / n, k % n)
    });

    let bad = (0..bd).find(|&j| {
        (0..sd).any(|s| fd.iota.apply(triv.right_act[j].col(s)) != p.carrier.right_act[j].apply(fd.iota.col(s)))
    });
    r.check("frob.iota_b_linear", bad.is_none(), || format!("ι is not linear for b_{}", bad.unwrap()));

    let mut bad = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let xy = fd.nu.col(x * n + y);
            for z in 0..n {
                let lhs = fd.mul(n, xy, &SVec::unit(z, f));
                let rhs = fd.mul(n, &SVec::unit(x, f), fd.nu.col(y * n + z));
                if lhs != rhs {
                    bad = Some((x, y, z));
                    break 'outer;
                }
            }
        }
    }
    r.check("frob.associative", bad.is_none(), || {
        let (x, y, z) = bad.unwrap();
        format!("ν is not associative on (e_{x}, e_{y}, e_{z})")
    });

    // ν(ι(s) ⊗ p) = s·p = p◁t_B(s) and ν(p ⊗ ι(s)) = p·s = p◁s_B(s)
    let bad = (0..sd).find(|&s| {
        let es = SVec::unit(s, f);
        let (lt, rs) = (p.right_by_target(&es), p.right_by_source(&es));
        (0..n).any(|i| {
            let e = SVec::unit(i, f);
            fd.mul(n, fd.iota.col(s), &e) != *lt.col(i) || fd.mul(n, &e, fd.iota.col(s)) != *rs.col(i)
        })
    });
    r.check("frob.unit", bad.is_none(), || format!("ι(e_{}) is not a unit for ν", bad.unwrap()));

    // Δν(x⊗y) = ν(x⊗y1) ⊗ y2 = x1 ⊗ ν(x2⊗y)
    let bad = (0..n * n).find(|&k| {
        let (x, y) = (k / n, k % n);
        let lhs = p.delta_class(fd.nu.col(k));
        let mut mid = Acc::new();
        for (w, c) in p.delta().col(y).iter() {
            let a = fd.mul(n, &SVec::unit(x, f), &SVec::unit(w / n, f));
            mid.add_vec(c, &tensor_vec(&a, &SVec::unit(w % n, f), n));
        }
        let mut right = Acc::new();
        for (w, c) in p.delta().col(x).iter() {
            let a = fd.mul(n, &SVec::unit(w % n, f), &SVec::unit(y, f));
            right.add_vec(c, &tensor_vec(&SVec::unit(w / n, f), &a, n));
        }
        lhs != pp.project(&mid.into_svec()) || lhs != pp.project(&right.into_svec())
    });
    r.check("frob.compatible", bad.is_none(), || {
        let k = bad.unwrap();
        format!("Frobenius compatibility fails on e_{} ⊗ e_{}", k / n, k % n)
    });

    let evaluation = solve_evaluation(p, fd, &pp, &pp_mod, &triv)?;
    r.check("frob.self_dual", evaluation.is_some(), || "no B-linear evaluation makes Δ(ι(1)) a coevaluation".into());
    Ok(FrobeniusReport { report: r, evaluation })
}

/// Solves for `ev: P ⊗_S P → S`, `B`-linear, with both snake identities
/// for the coevaluation `c = Δ_P(ι(1))`.
fn solve_evaluation(
    p: &OneCell,
    fd: &FrobeniusData,
    pp: &crate::modkit::Tensor,
    pp_mod: &crate::modkit::Bimodule,
    triv: &crate::modkit::Bimodule,
) -> Result<Option<LinMap>> {
    let f = p.field();
    let n = p.dim();
    let b = &p.from;
    let sd = b.base.dim();
    let qd = pp.dim();
    let nvars = qd * sd;
    let c = p.delta().apply(&fd.iota.apply(b.base.unit()));
    let mut rows: Vec<(SVec, crate::exactfield::Scalar)> = Vec::new();

    // Σ c2 ◁ t_B(ev(p⊗c1)) = p and Σ c1 ◁ s_B(ev(c2⊗p)) = p
    for snake in 0..2 {
        for i in 0..n {
            let mut vars: Vec<Acc> = vec![Acc::new(); nvars];
            for (k, x) in c.iter() {
                let (u, v) = (k / n, k % n);
                let (pair, moved) = if snake == 0 { ((i, u), v) } else { ((v, i), u) };
                let w = pp.project(&SVec::unit(pair.0 * n + pair.1, f));
                for s in 0..sd {
                    let es = SVec::unit(s, f);
                    let act = if snake == 0 { p.right_by_target(&es) } else { p.right_by_source(&es) };
                    let img = act.col(moved);
                    for (kk, wk) in w.iter() {
                        vars[kk * sd + s].add_vec(&(x * wk), img);
                    }
                }
            }
            let system = LinMap::new(f, n, vars.into_iter().map(Acc::into_svec).collect()).transpose();
            for l in 0..n {
                let rhs = if l == i { f.one() } else { f.zero() };
                rows.push((system.col(l).clone(), rhs));
            }
        }
    }
    // ev(y ◁ b) = ev(y) ◁ b
    for (rb, tb) in pp_mod.right_act.iter().zip(&triv.right_act) {
        for k in 0..qd {
            let mut eq: Vec<Acc> = vec![Acc::new(); sd];
            for (k2, y) in rb.col(k).iter() {
                for (s, acc) in eq.iter_mut().enumerate() {
                    acc.add(k2 * sd + s, y);
                }
            }
            for s in 0..sd {
                for (s2, y) in tb.col(s).iter() {
                    eq[*s2].add(k * sd + s, &-y);
                }
            }
            rows.extend(eq.into_iter().map(|a| (a.into_svec(), f.zero())));
        }
    }
    Ok(solve_affine(f, nvars, rows).map(|v| LinMap::unflatten(f, qd, sd, &v)))
}

/// The antipode `S_E(α)(p) = Σ c1 ◁ s_B(ε_P(ν(α(c2) ⊗ p)))` with `c = Δ_P(ι(1))`,
/// as a matrix on the `E` basis, plus its report.
pub fn antipode(p: &OneCell, e: &EndoBialgebroid, fd: &FrobeniusData) -> Result<(LinMap, Report)> {
    let mut r = Report::new("antipode");
    let f = p.field();
    let n = p.dim();
    let b = &p.from;
    let c = p.delta().apply(&fd.iota.apply(b.base.unit()));
    let space = &e.data.e_space;
    let alg = &e.data.e_alg;
    let mut cols = Vec::with_capacity(space.dim());
    let mut outside = None;
    for (k, alpha) in space.basis.iter().enumerate() {
        let s_alpha = LinMap::from_fn(f, n, n, |j| {
            let mut acc = Acc::new();
            for (idx, x) in c.iter() {
                let (u, v) = (idx / n, idx % n);
                let val = p.epsilon().apply(&fd.mul(n, alpha.col(v), &SVec::unit(j, f)));
                acc.add_vec(x, p.right_by_source(&val).col(u));
            }
            acc.into_svec()
        });
        match space.coords(&s_alpha) {
            Some(v) => cols.push(v),
            None => {
                outside.get_or_insert(k);
                cols.push(SVec::zero());
            }
        }
    }
    let s_e = LinMap::new(f, space.dim(), cols);
    r.check("anti.in_e", outside.is_none(), || format!("S_E(α_{}) is not B-linear", outside.unwrap()));
    let d = alg.dim();
    let mut bad = None;
    'outer: for i in 0..d {
        for j in 0..d {
            let lhs = s_e.apply(alg.basis_mul(i, j));
            let rhs = alg.mul(s_e.col(j), s_e.col(i));
            if lhs != rhs {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    r.check("anti.anti_multiplicative", bad.is_none(), || {
        let (i, j) = bad.unwrap();
        format!("S(α_{i} α_{j}) ≠ S(α_{j}) S(α_{i})")
    });
    r.check("anti.unital", s_e.apply(alg.unit()) == *alg.unit(), || "S(1) ≠ 1".into());

    // ℓ = ι∘ε_P satisfies ℓ∘α = ℓ∘s_E(ε_E(α)).
    let ell = fd.iota.compose(p.epsilon());
    match space.coords(&ell) {
        Some(lc) => {
            let eb = &e.bialgebroid;
            let bad = (0..d).find(|&i| {
                let lhs = alg.mul(&lc, &alg.basis(i));
                let rhs = alg.mul(&lc, &eb.s.apply(eb.epsilon().col(i)));
                lhs != rhs
            });
            r.check("anti.integral", bad.is_none(), || format!("ι∘π fails the integral law at α_{}", bad.unwrap()));
            r.note("integral", format!("{:?}", lc.to_dense(f, d).iter().map(|x| x.to_string()).collect::<Vec<_>>()));
        }
        None => r.record("anti.integral", Err("ι∘π is not B-linear".into())),
    }
    Ok((s_e, r))
}

/// `ν(e_i ⊗ e_j) = δ_ij e_i` and `ι(1) = Σ e_i` on a basis of group-likes.
pub fn pointwise_frobenius(p: &OneCell) -> Result<FrobeniusData> {
    let f = p.field();
    let n = p.dim();
    let nu = LinMap::from_fn(f, n * n, n, |k| if k / n == k % n { SVec::unit(k / n, f) } else { SVec::zero() });
    let iota = LinMap::new(f, n, vec![SVec::from_pairs((0..n).map(|i| (i, f.one())))]);
    FrobeniusData::new(p, nu, iota)
}

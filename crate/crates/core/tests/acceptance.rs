//! Acceptance suite. One line per criterion; exits non-zero on any failure
//! that is not listed as known.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use morita_core::algkit::{cyclic_group_table, product_group_table};
use morita_core::bgdkit::{check_bialgebroid, group_bialgebra, module_tensor, sweedler_bialgebroid, trivial_module};
use morita_core::examples::{
    apply_drinfeld_twist, azumaya_inverse_cell, build_azumaya_cell, build_bicharacter_twist, build_blowup, check_twist,
    sqm_base_change, with_trivial_summand, BaseChangeData, TwistData,
};
use morita_core::modkit::{progenerator_report, tensor_over_ring, Bimodule};
use morita_core::moritakit::{
    antipode, check_one_cell, endo_data, endomorphism_bialgebroid, frobenius_check, hp_apply, hp_monoidal_maps,
    is_invertible, lambda_map, morita_verdict, pointwise_comonoid, pointwise_frobenius, pullback_cell,
    strongness_check,
};
use morita_core::{Bialgebroid, Field, FiniteAlgebra, LinMap, Matrix, OneCell, Result, SVec, Scalar};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::{json, Value};

/// Checks that are false for mathematical reasons, with the reason printed.
const KNOWN: &[(&str, &str)] =
    &[("twisted delta differs", "k[G]⊗k[G] is commutative for abelian G, so J Δ J⁻¹ = Δ exactly")];

#[derive(Default)]
struct Outcome {
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn q() -> Field {
    Field::Rationals
}

fn qz2() -> Arc<Bialgebroid> {
    Arc::new(group_bialgebra(q(), &cyclic_group_table(2)).unwrap())
}

fn klein() -> Vec<Vec<usize>> {
    let z2 = cyclic_group_table(2);
    product_group_table(&z2, &z2)
}

/// `(−1)^{ad}` for `(a,b), (c,d)` at indices `2a+b`, `2c+d`.
fn chi_ad(field: Field) -> Vec<Vec<Scalar>> {
    (0..4).map(|x| (0..4).map(|y| field.int(if (x / 2) * (y % 2) == 1 { -1 } else { 1 })).collect()).collect()
}

fn sweedler_bases() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("Q", FiniteAlgebra::ground(q())),
        ("Q^2", FiniteAlgebra::diagonal(q(), 2).unwrap()),
        ("Mat2(Q)", FiniteAlgebra::matrix(q(), 2).unwrap()),
        ("Mat2(GF7)", FiniteAlgebra::matrix(Field::prime(7).unwrap(), 2).unwrap()),
        ("Q[Z2]", FiniteAlgebra::group(q(), &cyclic_group_table(2)).unwrap()),
    ]
}

fn sweedler_suite() -> Result<Outcome> {
    let mut o = Outcome::default();
    for (name, r) in sweedler_bases() {
        let start = Instant::now();
        let e = sweedler_bialgebroid(&Arc::new(r))?;
        let rep = check_bialgebroid(&e);
        let t = start.elapsed();
        o.check(format!("E({name}) passes"), rep.pass());
        o.check(format!("E({name}) has at least 10 checks"), rep.items.len() >= 10);
        o.check(format!("E({name}) < 2s"), t < Duration::from_secs(2));
        o.note(format!("{name}: {} checks {:.2}s", rep.items.len(), t.as_secs_f64()));
    }
    Ok(o)
}

fn blowup_equivalence() -> Result<Outcome> {
    let mut o = Outcome::default();
    let bl = build_blowup(qz2(), 2)?;
    o.check("A passes", check_bialgebroid(&bl.a).pass());
    o.check("P passes", check_one_cell(&bl.cell).pass());
    let (pg, _) = progenerator_report(&bl.cell.carrier)?;
    o.check("progenerator", pg.pass());
    let s = strongness_check(&bl.cell)?;
    o.check("strongness passes", s.report.pass());
    o.check("strongness map is 32x32", s.map.src() == 32 && s.map.tgt() == 32);
    o.check("strongness map invertible", s.inverse.is_some() && is_invertible(&s.map));
    o.note(format!("route {}", s.route.label()));
    let e = endomorphism_bialgebroid(&bl.cell)?;
    let (_, lam) = lambda_map(&bl.cell, &e)?;
    o.check("lambda is a bialgebroid map", lam.pass());
    o.check("lambda is an isomorphism", lam.notes.get("isomorphism").map(String::as_str) == Some("true"));
    o.check("verdict equivalent", morita_verdict(&bl.cell)?.equivalent);
    Ok(o)
}

fn azumaya() -> Result<Outcome> {
    let mut o = Outcome::default();
    let r = Arc::new(FiniteAlgebra::matrix(q(), 2)?);
    let p = build_azumaya_cell(&r)?;
    o.check("Mat2 equivalent", morita_verdict(&p)?.equivalent);
    let d = endo_data(&p)?;
    o.check("End and T are one-dimensional", d.e_alg.dim() == 1 && d.t_alg.dim() == 1);
    let dual = Arc::new(FiniteAlgebra::truncated_polynomial(q(), 2)?);
    let v = morita_verdict(&build_azumaya_cell(&dual)?)?;
    o.check("Q[x]/(x^2) not equivalent", !v.equivalent);
    o.check("Q[x]/(x^2) fails first at projectivity", v.first_failure == Some("morita.projective"));
    Ok(o)
}

fn drinfeld_twist() -> Result<Outcome> {
    let mut o = Outcome::default();
    let t = build_bicharacter_twist(q(), &klein(), &chi_ad(q()))?;
    let r = check_twist(&t)?;
    for id in ["twist.invertible", "twist.commutes", "twist.cocycle", "twist.counit"] {
        o.check(id, r.passed(id));
    }
    let tw = apply_drinfeld_twist(&t)?;
    o.check("twisted bialgebroid passes", check_bialgebroid(&tw.bialgebroid).pass());
    o.check("twisted delta differs", tw.bialgebroid.delta() != t.bialgebroid.delta());
    o.check("twisted cell delta J·Δ differs", tw.cell.delta() != t.bialgebroid.delta());
    o.check("verdict equivalent", morita_verdict(&tw.cell)?.equivalent);

    let b = t.bialgebroid.clone();
    let triv = apply_drinfeld_twist(&TwistData::trivial(b.clone()))?;
    let same = triv.bialgebroid.total == b.total
        && triv.bialgebroid.base == b.base
        && triv.bialgebroid.s.map == b.s.map
        && triv.bialgebroid.t.map == b.t.map
        && triv.bialgebroid.delta() == b.delta()
        && triv.bialgebroid.epsilon() == b.epsilon();
    o.check("J = 1⊗1 reproduces B", same);
    let back = apply_drinfeld_twist(&t.inverse_over(tw.bialgebroid.clone()))?;
    o.check("J then J⁻¹ restores Δ", back.bialgebroid.delta() == b.delta());
    Ok(o)
}

/// Every cell of the example suite, by name.
fn suite_cells() -> Result<Vec<(String, OneCell)>> {
    let mut cells = Vec::new();
    for (name, r) in sweedler_bases() {
        let e = Arc::new(sweedler_bialgebroid(&Arc::new(r))?);
        cells.push((format!("regular E({name})"), OneCell::regular(e)?));
    }
    cells.push(("regular Q[Z2]".into(), OneCell::regular(qz2())?));
    let mat2 = Arc::new(FiniteAlgebra::matrix(q(), 2)?);
    cells.push(("azumaya Mat2".into(), build_azumaya_cell(&mat2)?));
    cells.push(("azumaya inverse Mat2".into(), azumaya_inverse_cell(&mat2)?));
    let dual = Arc::new(FiniteAlgebra::truncated_polynomial(q(), 2)?);
    cells.push(("azumaya Q[x]/(x^2)".into(), build_azumaya_cell(&dual)?));
    let diag = Arc::new(FiniteAlgebra::diagonal(q(), 2)?);
    cells.push(("azumaya Q^2".into(), build_azumaya_cell(&diag)?));
    cells.push(("blow-up".into(), build_blowup(qz2(), 2)?.cell));
    let t = build_bicharacter_twist(q(), &klein(), &chi_ad(q()))?;
    cells.push(("twist".into(), apply_drinfeld_twist(&t)?.cell));
    cells.push(("trivial summand".into(), with_trivial_summand(qz2())?));
    cells.push(("pointwise Q^3".into(), pointwise_comonoid(q(), 3)?));
    let bc = base_change()?;
    cells.push(("base change X".into(), bc.x));
    cells.push(("base change Y".into(), bc.y));
    Ok(cells)
}

fn base_change() -> Result<morita_core::examples::BaseChange> {
    let r = Arc::new(FiniteAlgebra::matrix(q(), 2)?);
    sqm_base_change(&BaseChangeData { p: build_azumaya_cell(&r)?, q: azumaya_inverse_cell(&r)?, b: qz2() })
}

fn endomorphisms() -> Result<Outcome> {
    let mut o = Outcome::default();
    let mut strong = 0;
    for (name, p) in suite_cells()? {
        let is_strong = matches!(strongness_check(&p), Ok(s) if s.report.pass());
        if !is_strong {
            o.note(format!("{name}: not strong"));
            continue;
        }
        strong += 1;
        match endomorphism_bialgebroid(&p) {
            Ok(e) => {
                o.check(format!("{name}: End passes"), check_bialgebroid(&e.bialgebroid).pass());
                let ok = e.cell(&p).map(|c| check_one_cell(&c).pass()).unwrap_or(false);
                o.check(format!("{name}: EP_B passes"), ok);
            }
            Err(err) => o.check(format!("{name}: End builds ({err})"), false),
        }
    }
    o.check("some cells are strong", strong > 0);
    o.note(format!("{strong} strong cells"));
    Ok(o)
}

/// `U` along `η`: the same vector space, with `E(T)` acting through `η`.
fn restrict(eta: &morita_core::bgdkit::BialgebroidMap, m: &Bimodule) -> Result<Bimodule> {
    let acts = eta.f.map.cols().iter().map(|c| m.right_op(c)).collect();
    Bimodule::right_module(eta.source.total.clone(), m.dim, acts)
}

fn forgetful_comparison() -> Result<Outcome> {
    let mut o = Outcome::default();
    let f = q();
    let bl = build_blowup(qz2(), 2)?;
    let a = bl.a.clone();
    let et = bl.eta.source.clone();
    let eta_star = pullback_cell(&bl.eta)?;
    let one = a.total.unit().clone();
    // Hom_A(A, M) → M, μ ↦ μ(1).
    let ev = |basis: &[LinMap], dim: usize| LinMap::new(f, dim, basis.iter().map(|mu| mu.apply(&one)).collect());

    let reg = Bimodule::right_regular(&a.total);
    let triv = trivial_module(&a)?;
    for (name, m) in [("regular", &reg), ("trivial", &triv)] {
        let h = hp_apply(&eta_star, m)?;
        o.check(format!("{name}: dim Ha = dim M"), h.module.dim == m.dim);
        let e = ev(&h.hom.basis, m.dim);
        o.check(format!("{name}: evaluation invertible"), is_invertible(&e));
        let u = restrict(&bl.eta, m)?;
        let linear = (0..et.dim()).all(|x| {
            let b = SVec::unit(x, f);
            e.compose(&h.module.right_op(&b)) == u.right_op(&b).compose(&e)
        });
        o.check(format!("{name}: evaluation is E(T)-linear"), linear);
    }

    let mm = hp_monoidal_maps(&eta_star, &reg, &reg)?;
    let ev_m = ev(&mm.ha_m.hom.basis, reg.dim);
    let ev_mn = ev(&mm.ha_mn.hom.basis, mm.mn.dim());
    let u = restrict(&bl.eta, &reg)?;
    let (u_mn, _) = module_tensor(&et, &u, &u)?;
    let id = LinMap::identity(f, reg.dim);
    // U's structure map UM ⊗_T UN → U(M ⊗_T N) is the identity on representatives.
    let phi2 = u_mn.induce_pair(&mm.mn, &id, &id)?;
    o.check("U is strong on M⊗N", is_invertible(&phi2));
    let left = ev_mn.compose(&mm.map2);
    let right = phi2.compose(&mm.domain.induce_pair(&u_mn, &ev_m, &ev_m)?);
    o.check("binary square commutes", left == right);
    o.check("map2 invertible", mm.map2_invertible());

    let ev_unit = ev(&mm.ha_unit.hom.basis, triv.dim);
    let phi0 = LinMap::identity(f, et.base.dim());
    o.check("unit square commutes", ev_unit.compose(&mm.map0) == phi0);
    o.check("map0 invertible", mm.map0_invertible());
    Ok(o)
}

fn base_change_criterion() -> Result<Outcome> {
    let mut o = Outcome::default();
    let bc = base_change()?;
    o.check("A has dimension 32", bc.a.dim() == 32);
    o.check("A passes", check_bialgebroid(&bc.a).pass());
    o.check("X passes", check_one_cell(&bc.x).pass());
    o.check("verdict equivalent", morita_verdict(&bc.x)?.equivalent);
    Ok(o)
}

fn frobenius_antipode() -> Result<Outcome> {
    let mut o = Outcome::default();
    let f = q();
    let c = pointwise_comonoid(f, 3)?;
    let fd = pointwise_frobenius(&c)?;
    o.check("Frobenius data passes", frobenius_check(&c, &fd)?.report.pass());
    let e = endomorphism_bialgebroid(&c)?;
    let (s, rep) = antipode(&c, &e, &fd)?;
    o.check("antipode checks pass", rep.pass());
    let transpose = (0..9).all(|i| e.operator(s.col(i)) == e.operator(&SVec::unit(i, f)).transpose());
    o.check("S_E is the transpose", transpose);

    let alg = e.bialgebroid.total.clone();
    let config = Config { cases: 100, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let coords = || proptest::collection::vec(-5i64..=5, 9);
    let cases = std::cell::Cell::new(0);
    let res = runner.run(&(coords(), coords()), |(x, y)| {
        cases.set(cases.get() + 1);
        let v = |xs: &[i64]| SVec::from_dense(&xs.iter().map(|&n| f.int(n)).collect::<Vec<_>>());
        let (x, y) = (v(&x), v(&y));
        let lhs = s.apply(&alg.mul(&x, &y));
        let rhs = alg.mul(&s.apply(&y), &s.apply(&x));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
    o.check("anti-multiplicative on 100 random pairs", res.is_ok() && cases.get() == 100);
    Ok(o)
}

/// Quotient dimension of `M ⊗ N` by `m.b ⊗ n − m ⊗ b.n`, by dense rank.
fn oracle_dim(field: Field, m: usize, n: usize, right: &[LinMap], left: &[LinMap]) -> usize {
    let mut rows = Vec::new();
    for (rho, lam) in right.iter().zip(left) {
        let (rho, lam) = (rho.to_matrix(), lam.to_matrix());
        for i in 0..m {
            for j in 0..n {
                let mut row = vec![field.zero(); m * n];
                for i2 in 0..m {
                    row[i2 * n + j] = row[i2 * n + j].clone() + rho.get(i2, i).clone();
                }
                for j2 in 0..n {
                    row[i * n + j2] = row[i * n + j2].clone() - lam.get(j2, j).clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return m * n;
    }
    m * n - Matrix::from_rows(field, rows).expect("rectangular").rank()
}

fn tensor_oracle() -> Result<Outcome> {
    let mut o = Outcome::default();
    let mut count = 0;
    let mut compare = |o: &mut Outcome, name: String, got: usize, want: usize| {
        count += 1;
        o.check(format!("{name}: {got} = {want}"), got == want);
    };

    let mut bialgebroids: Vec<(String, Arc<Bialgebroid>)> = Vec::new();
    for (name, r) in sweedler_bases() {
        bialgebroids.push((format!("E({name})"), Arc::new(sweedler_bialgebroid(&Arc::new(r))?)));
    }
    bialgebroids.push(("Q[Z2]".into(), qz2()));
    bialgebroids.push(("blow-up A".into(), build_blowup(qz2(), 2)?.a));
    let t = build_bicharacter_twist(q(), &klein(), &chi_ad(q()))?;
    bialgebroids.push(("twisted".into(), apply_drinfeld_twist(&t)?.bialgebroid));
    for (name, b) in &bialgebroids {
        let c = &b.coring.carrier;
        if c.dim * c.dim <= 64 {
            let want = oracle_dim(b.field(), c.dim, c.dim, &c.upper_right, &c.upper_left);
            compare(&mut o, format!("{name} A⊗A"), b.coring.tensor_sq.dim(), want);
            let reg = Bimodule::right_regular(&b.total);
            let (tm, _) = module_tensor(b, &reg, &reg)?;
            let s: Vec<LinMap> = (0..b.base.dim()).map(|i| reg.right_op(b.s.map.col(i))).collect();
            let tt: Vec<LinMap> = (0..b.base.dim()).map(|i| reg.right_op(b.t.map.col(i))).collect();
            compare(&mut o, format!("{name} module A⊗A"), tm.dim(), oracle_dim(b.field(), reg.dim, reg.dim, &s, &tt));
        }
    }
    for (name, p) in suite_cells()? {
        let c = &p.coring.carrier;
        if c.dim * c.dim <= 64 {
            let want = oracle_dim(p.field(), c.dim, c.dim, &c.upper_right, &c.upper_left);
            compare(&mut o, format!("{name} P⊗P"), p.tensor_sq().dim(), want);
        }
    }
    let mat2 = Arc::new(FiniteAlgebra::matrix(q(), 2)?);
    let (p, qc) = (build_azumaya_cell(&mat2)?, azumaya_inverse_cell(&mat2)?);
    for (name, x, y) in [("P⊙Q", &p, &qc), ("Q⊙P", &qc, &p)] {
        let (m, n) = (&x.carrier, &y.carrier);
        if m.dim * n.dim <= 64 && m.right == n.left {
            let (tq, _) = tensor_over_ring(m, n)?;
            compare(
                &mut o,
                format!("azumaya {name}"),
                tq.dim(),
                oracle_dim(m.field(), m.dim, n.dim, &m.right_act, &n.left_act),
            );
        }
    }
    for (name, r) in sweedler_bases() {
        let reg = Bimodule::regular(&Arc::new(r));
        if reg.dim * reg.dim <= 64 {
            let (tq, _) = tensor_over_ring(&reg, &reg)?;
            let want = oracle_dim(reg.field(), reg.dim, reg.dim, &reg.right_act, &reg.left_act);
            compare(&mut o, format!("{name} R⊗_R R"), tq.dim(), want);
        }
    }
    o.note(format!("{count} constructions"));
    Ok(o)
}

/// Reports for the whole suite, keyed by name.
fn suite_reports() -> Result<Value> {
    let mut out = BTreeMap::new();
    for (name, r) in sweedler_bases() {
        out.insert(format!("sweedler {name}"), check_bialgebroid(&sweedler_bialgebroid(&Arc::new(r))?).to_json());
    }
    let bl = build_blowup(qz2(), 2)?;
    out.insert("blow-up A".into(), check_bialgebroid(&bl.a).to_json());
    let t = build_bicharacter_twist(q(), &klein(), &chi_ad(q()))?;
    out.insert("twist".into(), check_twist(&t)?.to_json());
    for (name, p) in suite_cells()? {
        let v = morita_verdict(&p)?;
        out.insert(
            format!("cell {name}"),
            json!({
                "cell": check_one_cell(&p).to_json(),
                "verdict": v.report.to_json(),
                "certificate": v.certificate,
            }),
        );
    }
    Ok(serde_json::to_value(out).expect("json"))
}

fn determinism() -> Result<Outcome> {
    let mut o = Outcome::default();
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let mut files = Vec::new();
    for run in 1..=2 {
        let text = serde_json::to_string_pretty(&suite_reports()?).expect("json");
        let path = dir.join(format!("acceptance_reports_{run}.json"));
        std::fs::write(&path, &text).expect("write report file");
        files.push(std::fs::read(&path).expect("read report file"));
    }
    o.check("report files are byte-identical", files[0] == files[1]);
    o.note(format!("{} bytes", files[0].len()));
    Ok(o)
}

type Criterion = (u32, &'static str, u64, fn() -> Result<Outcome>);

fn main() {
    let criteria: &[Criterion] = &[
        (1, "sweedler suite", 10, sweedler_suite),
        (2, "blow-up equivalence", 10, blowup_equivalence),
        (3, "azumaya", 5, azumaya),
        (4, "drinfeld twist", 5, drinfeld_twist),
        (5, "endomorphism bialgebroid", 120, endomorphisms),
        (6, "forgetful comparison", 30, forgetful_comparison),
        (7, "base change", 30, base_change_criterion),
        (8, "frobenius antipode", 30, frobenius_antipode),
        (9, "tensor quotient oracle", 120, tensor_oracle),
        (10, "determinism", 240, determinism),
    ];
    let mut unexpected = 0;
    for &(num, title, limit, run) in criteria {
        let start = Instant::now();
        let mut outcome = run().unwrap_or_else(|e| {
            let mut o = Outcome::default();
            o.check(format!("error: {e}"), false);
            o
        });
        let t = start.elapsed();
        outcome.check(format!("time < {limit}s"), t < Duration::from_secs(limit));
        let failed: Vec<&str> = outcome.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
        let known: Vec<&str> =
            failed.iter().filter_map(|n| KNOWN.iter().find(|(k, _)| k == n).map(|(_, why)| *why)).collect();
        let status = if failed.is_empty() {
            "PASS".to_string()
        } else if known.len() == failed.len() {
            format!("FAIL (known: {}; {})", failed.join(", "), known.join("; "))
        } else {
            unexpected += 1;
            format!("FAIL ({})", failed.join(", "))
        };
        let notes = if outcome.notes.is_empty() { String::new() } else { format!(" [{}]", outcome.notes.join("; ")) };
        println!(
            "criterion {num:>2} {title}: {status} ({}/{} checks, {:.2}s){notes}",
            outcome.checks.len() - failed.len(),
            outcome.checks.len(),
            t.as_secs_f64()
        );
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}

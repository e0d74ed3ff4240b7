use std::sync::Arc;

use crate::bgdkit::{group_bialgebra, Bialgebroid};
use crate::error::{Error, Result};
use crate::exactfield::{tensor_vec, Acc, Field, LinMap, SVec, Scalar};
use crate::modkit::{combine, Bimodule};
use crate::moritakit::OneCell;
use crate::report::Report;

/// A candidate twist `J` for `B` with its inverse, both as representatives in `B ⊗_k B`.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub bialgebroid: Arc<Bialgebroid>,
    pub j: SVec,
    pub j_inv: SVec,
}

impl TwistData {
    pub fn new(bialgebroid: Arc<Bialgebroid>, j: SVec, j_inv: SVec) -> Result<Self> {
        let n = bialgebroid.dim();
        if j.bound() > n * n || j_inv.bound() > n * n {
            return Err(Error::dim("twist element outside B ⊗ B"));
        }
        Ok(TwistData { bialgebroid, j, j_inv })
    }

    /// `1 ⊗ 1`.
    pub fn trivial(bialgebroid: Arc<Bialgebroid>) -> Self {
        let one = bialgebroid.total.unit();
        let j = tensor_vec(one, one, bialgebroid.dim());
        TwistData { bialgebroid, j: j.clone(), j_inv: j }
    }

    /// The same data with `J` and `J⁻¹` exchanged, over another bialgebroid.
    pub fn inverse_over(&self, bialgebroid: Arc<Bialgebroid>) -> Self {
        TwistData { bialgebroid, j: self.j_inv.clone(), j_inv: self.j.clone() }
    }
}

/// `|G|`-th roots of unity in the field.
fn roots_of_unity(field: Field, n: usize) -> Result<Vec<Scalar>> {
    let candidates: Vec<Scalar> = match field {
        Field::Rationals => vec![field.one(), field.int(-1)],
        Field::Prime(p) if p <= 1 << 20 => (1..p as i64).map(|x| field.int(x)).collect(),
        Field::Prime(p) => return Err(Error::precondition(format!("character search over GF({p}) is not supported"))),
    };
    Ok(candidates.into_iter().filter(|x| x.pow(n as u64).is_one()).collect())
}

fn extend_character(table: &[Vec<usize>], roots: &[Scalar], vals: &mut Vec<Scalar>, out: &mut Vec<Vec<Scalar>>) {
    let n = table.len();
    let g = vals.len();
    if g == n {
        out.push(vals.clone());
        return;
    }
    for x in roots {
        vals.push(x.clone());
        let consistent = (0..=g).all(|a| {
            (0..=g).all(|b| {
                let c = table[a][b];
                c > g || &vals[a] * &vals[b] == vals[c]
            })
        });
        if consistent {
            extend_character(table, roots, vals, out);
        }
        vals.pop();
    }
}

/// All characters `G → k^×`, as value lists.
pub fn group_characters(field: Field, table: &[Vec<usize>]) -> Result<Vec<Vec<Scalar>>> {
    crate::algkit::validate_group(table)?;
    let roots = roots_of_unity(field, table.len())?;
    let mut out = Vec::new();
    extend_character(table, &roots, &mut Vec::new(), &mut out);
    Ok(out)
}

/// A group isomorphism `G → Ĝ`, the first one in lexicographic order.
fn label_characters(table: &[Vec<usize>], chars: &[Vec<Scalar>]) -> Option<Vec<usize>> {
    let n = table.len();
    let product = |a: usize, b: usize| -> Option<usize> {
        let v: Vec<Scalar> = (0..n).map(|x| &chars[a][x] * &chars[b][x]).collect();
        chars.iter().position(|c| *c == v)
    };
    fn go(
        table: &[Vec<usize>],
        product: &dyn Fn(usize, usize) -> Option<usize>,
        lab: &mut Vec<usize>,
        n: usize,
    ) -> bool {
        let g = lab.len();
        if g == n {
            return true;
        }
        for c in 0..n {
            if lab.contains(&c) {
                continue;
            }
            lab.push(c);
            let ok = (0..=g).all(|a| {
                (0..=g).all(|b| {
                    let ab = table[a][b];
                    ab > g || product(lab[a], lab[b]) == Some(lab[ab])
                })
            });
            if ok && go(table, product, lab, n) {
                return true;
            }
            lab.pop();
        }
        false
    }
    let mut lab = Vec::new();
    go(table, &product, &mut lab, n).then_some(lab)
}

/// `J = Σ χ(g,h) p_g ⊗ p_h` on `k[G]`, where `p_g` runs over the character
/// idempotents labelled by `G` through a fixed isomorphism `G ≅ Ĝ`.
///
/// `χ` is not required to be a bicharacter; [`check_twist`] reports whether
/// the result is a twist.
pub fn build_bicharacter_twist(field: Field, table: &[Vec<usize>], chi: &[Vec<Scalar>]) -> Result<TwistData> {
    let b = Arc::new(group_bialgebra(field, table)?);
    let n = table.len();
    if chi.len() != n || chi.iter().any(|row| row.len() != n) {
        return Err(Error::dim(format!("bicharacter must be {n}×{n}")));
    }
    let inv_n =
        field.int(n as i64).inv().ok_or_else(|| Error::precondition("group order is not invertible in the field"))?;
    let chars = group_characters(field, table)?;
    if chars.len() != n {
        return Err(Error::precondition(format!("only {} of {n} characters are defined over {field}", chars.len())));
    }
    let label =
        label_characters(table, &chars).ok_or_else(|| Error::precondition("character group is not isomorphic to G"))?;
    let e = (0..n).find(|&g| table[g][g] == g).expect("group identity");
    let inverse = |x: usize| (0..n).find(|&y| table[x][y] == e).expect("group inverse");
    // p_ψ = |G|⁻¹ Σ_x ψ(x⁻¹) x
    let idem: Vec<SVec> =
        (0..n).map(|g| SVec::from_pairs((0..n).map(|x| (x, &inv_n * &chars[label[g]][inverse(x)])))).collect();
    let mut j = Acc::new();
    let mut j_inv = Acc::new();
    for g in 0..n {
        for h in 0..n {
            let c = &chi[g][h];
            let ci = c.inv().ok_or_else(|| Error::invalid("bicharacter takes the value 0"))?;
            let p = tensor_vec(&idem[g], &idem[h], n);
            j.add_vec(c, &p);
            j_inv.add_vec(&ci, &p);
        }
    }
    TwistData::new(b, j.into_svec(), j_inv.into_svec())
}

/// Factorwise product of representatives in `B ⊗ B ⊗ B`.
fn mul_triples(b: &Bialgebroid, x: &SVec, y: &SVec) -> SVec {
    let n = b.dim();
    let mut acc = Acc::new();
    for (i, a) in x.iter() {
        for (j, c) in y.iter() {
            let first = b.total.basis_mul(i / (n * n), j / (n * n));
            let mid = b.total.basis_mul(i / n % n, j / n % n);
            let last = b.total.basis_mul(i % n, j % n);
            acc.add_vec(&(a * c), &tensor_vec(&tensor_vec(first, mid, n), last, n));
        }
    }
    acc.into_svec()
}

/// Invertibility, commuting with `t(s) ⊗ s(s')`, the cocycle equation and
/// counit normalization, each after projection.
pub fn check_twist(t: &TwistData) -> Result<Report> {
    let b = &t.bialgebroid;
    let f = b.field();
    let n = b.dim();
    let one = b.total.unit();
    let mut r = Report::new("twist");
    let proj = |v: &SVec| b.coring.project_sq(v);
    let one_one = tensor_vec(one, one, n);
    let inv_ok =
        proj(&b.mul_pairs(&t.j, &t.j_inv)) == proj(&one_one) && proj(&b.mul_pairs(&t.j_inv, &t.j)) == proj(&one_one);
    r.check("twist.invertible", inv_ok, || "J·J⁻¹ or J⁻¹·J differs from 1⊗1".into());

    let sd = b.base.dim();
    let bad = (0..sd * sd).find(|k| {
        let x = tensor_vec(&b.t.apply(&SVec::unit(k / sd, f)), &b.s.apply(&SVec::unit(k % sd, f)), n);
        proj(&b.mul_pairs(&t.j, &x)) != proj(&b.mul_pairs(&x, &t.j))
    });
    r.check("twist.commutes", bad.is_none(), || {
        let k = bad.unwrap();
        format!("J does not commute with t(e_{}) ⊗ s(e_{})", k / sd, k % sd)
    });

    // (J⊗1)(Δ⊗B)(J) = (1⊗J)(B⊗Δ)(J)
    let triple = b.coring.triple()?;
    let mut j1 = Acc::new();
    let mut one_j = Acc::new();
    let mut dj = Acc::new();
    let mut jd = Acc::new();
    for (k, c) in t.j.iter() {
        let (x, y) = (k / n, k % n);
        j1.add_vec(c, &tensor_vec(&SVec::unit(*k, f), one, n));
        one_j.add_vec(c, &tensor_vec(one, &SVec::unit(*k, f), n * n));
        dj.add_vec(c, &tensor_vec(b.delta().col(x), &SVec::unit(y, f), n));
        jd.add_vec(c, &tensor_vec(&SVec::unit(x, f), b.delta().col(y), n * n));
    }
    let lhs = mul_triples(b, &j1.into_svec(), &dj.into_svec());
    let rhs = mul_triples(b, &one_j.into_svec(), &jd.into_svec());
    r.check("twist.cocycle", b.coring.triple_class(&triple, &lhs) == b.coring.triple_class(&triple, &rhs), || {
        "(J⊗1)(Δ⊗B)(J) ≠ (1⊗J)(B⊗Δ)(J)".into()
    });

    let carrier = &b.coring.carrier;
    let mut left = Acc::new();
    let mut right = Acc::new();
    for (k, c) in t.j.iter() {
        let (x, y) = (k / n, k % n);
        left.add_vec(c, &combine(f, n, &carrier.upper_left, b.epsilon().col(x)).apply(&SVec::unit(y, f)));
        right.add_vec(c, &combine(f, n, &carrier.upper_right, b.epsilon().col(y)).apply(&SVec::unit(x, f)));
    }
    let (left, right) = (left.into_svec(), right.into_svec());
    r.check("twist.counit", &left == one && &right == one, || format!("(ε⊗B)(J) = {left:?}, (B⊗ε)(J) = {right:?}"));
    Ok(r)
}

/// The twisted bialgebroid `B̃` and the cell `P = B: B → B̃`.
#[derive(Clone, Debug)]
pub struct Twisted {
    pub bialgebroid: Arc<Bialgebroid>,
    pub cell: OneCell,
}

/// `Δ̃(b) = J Δ(b) J⁻¹`, `ε̃ = ε`, and `Δ_P(b) = J Δ(b)` on the regular module.
pub fn apply_drinfeld_twist(t: &TwistData) -> Result<Twisted> {
    let rep = check_twist(t)?;
    if !rep.pass() {
        return Err(Error::precondition(format!("not a twist: {}", rep.failures().join(", "))));
    }
    let b = &t.bialgebroid;
    let f = b.field();
    let n = b.dim();
    let sq = b.tensor_sq();
    let canonical = |v: SVec| sq.lift(&sq.project(&v));
    let j_delta = LinMap::from_fn(f, n, n * n, |x| canonical(b.mul_pairs(&t.j, b.delta().col(x))));
    let delta =
        LinMap::from_fn(f, n, n * n, |x| canonical(b.mul_pairs(&b.mul_pairs(&t.j, b.delta().col(x)), &t.j_inv)));
    let twisted = Arc::new(Bialgebroid::new(
        b.total.clone(),
        b.base.clone(),
        b.s.map.clone(),
        b.t.map.clone(),
        delta,
        b.epsilon().clone(),
    )?);
    let carrier = Bimodule::regular(&b.total);
    let cell = OneCell::new(b.clone(), twisted.clone(), carrier, j_delta, b.epsilon().clone())?;
    Ok(Twisted { bialgebroid: twisted, cell })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkit::{cyclic_group_table, product_group_table};
    use crate::bgdkit::check_bialgebroid;
    use crate::moritakit::morita_verdict;

    fn klein() -> Vec<Vec<usize>> {
        let z2 = cyclic_group_table(2);
        product_group_table(&z2, &z2)
    }

    /// `(−1)^{ad}` for `(a,b), (c,d)` at indices `2a+b`, `2c+d`.
    fn chi_ad(field: Field) -> Vec<Vec<Scalar>> {
        (0..4).map(|x| (0..4).map(|y| field.int(if (x / 2) * (y % 2) == 1 { -1 } else { 1 })).collect()).collect()
    }

    #[test]
    fn klein_characters() {
        let c = group_characters(Field::Rationals, &klein()).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(group_characters(Field::Rationals, &cyclic_group_table(3)).unwrap().len(), 1);
        assert_eq!(group_characters(Field::prime(7).unwrap(), &cyclic_group_table(3)).unwrap().len(), 3);
    }

    #[test]
    fn bicharacter_twist() {
        let f = Field::Rationals;
        let t = build_bicharacter_twist(f, &klein(), &chi_ad(f)).unwrap();
        let r = check_twist(&t).unwrap();
        assert!(r.pass(), "{}", r.to_text());
        let tw = apply_drinfeld_twist(&t).unwrap();
        assert!(check_bialgebroid(&tw.bialgebroid).pass());
        // k[G] ⊗ k[G] is commutative, so conjugation by J fixes Δ; J Δ does not.
        assert_eq!(tw.bialgebroid.delta(), t.bialgebroid.delta());
        assert_ne!(tw.cell.delta(), t.bialgebroid.delta());
        assert_eq!(tw.bialgebroid.epsilon(), t.bialgebroid.epsilon());
        assert!(morita_verdict(&tw.cell).unwrap().equivalent);
        let back = apply_drinfeld_twist(&t.inverse_over(tw.bialgebroid.clone())).unwrap();
        assert_eq!(back.bialgebroid.delta(), t.bialgebroid.delta());
    }

    #[test]
    fn flipped_sign_breaks_cocycle() {
        let f = Field::Rationals;
        let mut chi = chi_ad(f);
        chi[3][1] = -chi[3][1].clone();
        let r = check_twist(&build_bicharacter_twist(f, &klein(), &chi).unwrap()).unwrap();
        assert!(!r.passed("twist.cocycle"));
        assert!(matches!(
            apply_drinfeld_twist(&build_bicharacter_twist(f, &klein(), &chi).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn trivial_twist_is_identity() {
        let b = Arc::new(group_bialgebra(Field::Rationals, &klein()).unwrap());
        let tw = apply_drinfeld_twist(&TwistData::trivial(b.clone())).unwrap();
        assert_eq!(tw.bialgebroid.delta(), b.delta());
        assert_eq!(tw.cell.delta(), b.delta());
    }

    #[test]
    fn scaled_twist_fails_counit() {
        let b = Arc::new(group_bialgebra(Field::Rationals, &klein()).unwrap());
        let one = TwistData::trivial(b.clone());
        let two = Field::Rationals.int(2);
        let half = two.inv().unwrap();
        let t = TwistData::new(b, one.j.scale(&two), one.j_inv.scale(&half)).unwrap();
        let r = check_twist(&t).unwrap();
        assert!(r.passed("twist.invertible"));
        assert!(!r.passed("twist.counit"));
    }
}

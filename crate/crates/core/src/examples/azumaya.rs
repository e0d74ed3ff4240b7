use std::sync::Arc;

use crate::algkit::{Alg, FiniteAlgebra};
use crate::bgdkit::{ground_bialgebroid, sweedler_bialgebroid};
use crate::error::{Error, Result};
use crate::exactfield::{tensor_vec, LinMap, SVec};
use crate::modkit::Bimodule;
use crate::moritakit::OneCell;

/// `R` as a cell `E(R) → E(k)`: `r ◁ (r1 ⊗ r2) = r1 r r2`, `Δ(r) = r ⊗ 1`,
/// `ε(r) = r`.
pub fn build_azumaya_cell(r: &Alg) -> Result<OneCell> {
    let f = r.field();
    let n = r.dim();
    let from = Arc::new(sweedler_bialgebroid(r)?);
    let to = Arc::new(ground_bialgebroid(f));
    let right_act = (0..n * n).map(|k| r.left_mul(&r.basis(k / n)).compose(&r.right_mul(&r.basis(k % n)))).collect();
    let carrier = Bimodule::new(to.total.clone(), from.total.clone(), n, vec![LinMap::identity(f, n)], right_act)?;
    let delta = LinMap::from_fn(f, n, n * n, |i| tensor_vec(&SVec::unit(i, f), r.unit(), n));
    OneCell::new(from, to, carrier, delta, LinMap::identity(f, n))
}

/// Size `m` with `r = Mat_m`, if it is one.
fn matrix_size(r: &Alg) -> Option<usize> {
    let m = (1..=r.dim()).find(|m| m * m >= r.dim())?;
    (m * m == r.dim() && **r == FiniteAlgebra::matrix(r.field(), m).ok()?).then_some(m)
}

/// The cell `E(k) → E(Mat_m)` inverse to [`build_azumaya_cell`]: carrier
/// `Mat_m` with `(r1 ⊗ r2) ▷ q = r2 q r1`, the comatrix coproduct
/// `Δ(e_ab) = Σ_c e_cb ⊗ e_ac` and the trace as counit.
pub fn azumaya_inverse_cell(r: &Alg) -> Result<OneCell> {
    let m = matrix_size(r).ok_or_else(|| Error::precondition("the inverse cell is built for full matrix algebras"))?;
    let f = r.field();
    let n = r.dim();
    let from = Arc::new(ground_bialgebroid(f));
    let to = Arc::new(sweedler_bialgebroid(r)?);
    let left_act = (0..n * n).map(|k| r.left_mul(&r.basis(k % n)).compose(&r.right_mul(&r.basis(k / n)))).collect();
    let carrier = Bimodule::new(to.total.clone(), from.total.clone(), n, left_act, vec![LinMap::identity(f, n)])?;
    let delta = LinMap::from_fn(f, n, n * n, |k| {
        let (a, b) = (k / m, k % m);
        SVec::from_pairs((0..m).map(|c| ((c * m + b) * n + a * m + c, f.one())))
    });
    let epsilon = LinMap::from_fn(f, n, 1, |k| if k / m == k % m { SVec::unit(0, f) } else { SVec::zero() });
    OneCell::new(from, to, carrier, delta, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Field;
    use crate::moritakit::{check_one_cell, compose_bgd, endo_data, morita_verdict};

    #[test]
    fn matrix_cells_are_cells() {
        let r = Arc::new(FiniteAlgebra::matrix(Field::Rationals, 2).unwrap());
        let p = build_azumaya_cell(&r).unwrap();
        assert!(check_one_cell(&p).pass(), "{}", check_one_cell(&p).to_text());
        let q = azumaya_inverse_cell(&r).unwrap();
        assert!(check_one_cell(&q).pass(), "{}", check_one_cell(&q).to_text());
    }

    #[test]
    fn inverse_needs_matrix_algebra() {
        let r = Arc::new(FiniteAlgebra::diagonal(Field::Rationals, 4).unwrap());
        assert!(matches!(azumaya_inverse_cell(&r), Err(Error::Precondition(_))));
    }

    #[test]
    fn diagonal_is_not_azumaya() {
        let r = Arc::new(FiniteAlgebra::diagonal(Field::Rationals, 2).unwrap());
        let v = morita_verdict(&build_azumaya_cell(&r).unwrap()).unwrap();
        assert!(!v.equivalent);
    }

    #[test]
    fn mat2_is_azumaya() {
        let r = Arc::new(FiniteAlgebra::matrix(Field::Rationals, 2).unwrap());
        let p = build_azumaya_cell(&r).unwrap();
        let v = morita_verdict(&p).unwrap();
        assert!(v.equivalent, "{}", v.report.to_text());
        let d = endo_data(&p).unwrap();
        assert_eq!((d.e_alg.dim(), d.t_alg.dim()), (1, 1));
    }

    #[test]
    fn dual_numbers_fail_projectivity_first() {
        let r = Arc::new(FiniteAlgebra::truncated_polynomial(Field::Rationals, 2).unwrap());
        let v = morita_verdict(&build_azumaya_cell(&r).unwrap()).unwrap();
        assert_eq!(v.first_failure, Some("morita.projective"));
    }

    #[test]
    fn cell_then_inverse_is_one_dimensional() {
        let r = Arc::new(FiniteAlgebra::matrix(Field::Rationals, 2).unwrap());
        let p = build_azumaya_cell(&r).unwrap();
        let q = azumaya_inverse_cell(&r).unwrap();
        let pq = compose_bgd(&p, &q).unwrap();
        assert_eq!(pq.dim(), 1);
        assert!(check_one_cell(&pq).pass());
    }
}

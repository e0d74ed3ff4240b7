use std::sync::Arc;

use crate::algkit::FiniteAlgebra;
use crate::bgdkit::{sweedler_bialgebroid, Bialgebroid, BialgebroidMap};
use crate::error::{Error, Result};
use crate::exactfield::{tensor_vec, LinMap, SVec};
use crate::modkit::Bimodule;
use crate::moritakit::OneCell;

/// Counit of the blow-up on `e_ij ⊗ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupCounit {
    /// `ε_B(b) e_j`, the one satisfying the counit laws.
    Column,
    /// `δ_ij ε_B(b)`.
    Diagonal,
    /// `ε_B(b)`, dropping the Kronecker delta.
    Constant,
}

/// `A = Mat_n(B)` over `Diag_n`, the cell `P = B^n: B → A` and `η: E(Diag_n) → A`.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub a: Arc<Bialgebroid>,
    pub cell: OneCell,
    pub eta: BialgebroidMap,
}

pub fn build_blowup(b: Arc<Bialgebroid>, n: usize) -> Result<Blowup> {
    build_blowup_with(b, n, BlowupCounit::Column)
}

/// [`build_blowup`] with a chosen counit; only [`BlowupCounit::Column`]
/// yields a bialgebroid, the others exist to exercise the checkers.
pub fn build_blowup_with(b: Arc<Bialgebroid>, n: usize, counit: BlowupCounit) -> Result<Blowup> {
    if b.base.dim() != 1 {
        return Err(Error::precondition("blow-up needs a bialgebra over the ground field"));
    }
    let f = b.field();
    let bd = b.dim();
    let total = Arc::new(FiniteAlgebra::tensor(&FiniteAlgebra::matrix(f, n)?, &b.total)?);
    let base = Arc::new(FiniteAlgebra::diagonal(f, n)?);
    let d = total.dim();
    let diag = LinMap::from_fn(f, n, d, |i| tensor_vec(&SVec::unit(i * n + i, f), b.total.unit(), bd));
    let delta = LinMap::from_fn(f, d, d * d, |k| {
        let (ij, x) = (k / bd, k % bd);
        SVec::from_pairs(b.delta().col(x).iter().map(|(u, c)| ((ij * bd + u / bd) * d + ij * bd + u % bd, c.clone())))
    });
    let epsilon = LinMap::from_fn(f, d, n, |k| {
        let (i, j) = (k / bd / n, k / bd % n);
        let e = b.epsilon().col(k % bd).coeff(0, f);
        match counit {
            BlowupCounit::Column => SVec::single(j, e),
            BlowupCounit::Diagonal if i == j => base.unit().scale(&e),
            BlowupCounit::Diagonal => SVec::zero(),
            BlowupCounit::Constant => base.unit().scale(&e),
        }
    });
    let a = Arc::new(Bialgebroid::new(total.clone(), base.clone(), diag.clone(), diag, delta, epsilon)?);

    // P = B^n, e_i ⊗ y at index i * dim B + y.
    let pd = n * bd;
    let left_act = (0..d)
        .map(|k| {
            let (i, j, y) = (k / bd / n, k / bd % n, k % bd);
            LinMap::from_fn(f, pd, pd, |c| {
                if c / bd == j {
                    tensor_vec(&SVec::unit(i, f), b.total.basis_mul(y, c % bd), bd)
                } else {
                    SVec::zero()
                }
            })
        })
        .collect();
    let right_act = (0..bd)
        .map(|y| LinMap::from_fn(f, pd, pd, |c| tensor_vec(&SVec::unit(c / bd, f), b.total.basis_mul(c % bd, y), bd)))
        .collect();
    let carrier = Bimodule::new(total, b.total.clone(), pd, left_act, right_act)?;
    let p_delta = LinMap::from_fn(f, pd, pd * pd, |c| {
        let i = c / bd;
        SVec::from_pairs(
            b.delta().col(c % bd).iter().map(|(u, x)| ((i * bd + u / bd) * pd + i * bd + u % bd, x.clone())),
        )
    });
    let p_eps = LinMap::from_fn(f, pd, 1, |c| b.epsilon().col(c % bd).clone());
    let cell = OneCell::new(b, a.clone(), carrier, p_delta, p_eps)?;

    // η(r1 ⊗ r2) = t(r1) s(r2)
    let e_r = Arc::new(sweedler_bialgebroid(&base)?);
    let eta_map = LinMap::from_fn(f, n * n, d, |k| {
        a.total.mul(&a.t.apply(&SVec::unit(k / n, f)), &a.s.apply(&SVec::unit(k % n, f)))
    });
    let eta = BialgebroidMap::new(e_r, a.clone(), eta_map)?;
    Ok(Blowup { a, cell, eta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkit::cyclic_group_table;
    use crate::bgdkit::{check_bialgebroid, check_bialgebroid_map, group_bialgebra};
    use crate::exactfield::Field;
    use crate::moritakit::{check_one_cell, morita_verdict, strongness_check};

    fn qz2() -> Arc<Bialgebroid> {
        Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(2)).unwrap())
    }

    #[test]
    fn blowup_of_z2_is_equivalent() {
        let bl = build_blowup(qz2(), 2).unwrap();
        let r = check_bialgebroid(&bl.a);
        assert!(r.pass(), "{}", r.to_text());
        assert!(check_one_cell(&bl.cell).pass());
        assert!(check_bialgebroid_map(&bl.eta).pass(), "{}", check_bialgebroid_map(&bl.eta).to_text());
        let s = strongness_check(&bl.cell).unwrap();
        assert_eq!((s.map.src(), s.map.tgt()), (32, 32));
        let v = morita_verdict(&bl.cell).unwrap();
        assert!(v.equivalent, "{}", v.report.to_text());
    }

    #[test]
    fn dropped_delta_breaks_counit_multiplicativity() {
        let bl = build_blowup_with(qz2(), 2, BlowupCounit::Constant).unwrap();
        let r = check_bialgebroid(&bl.a);
        assert!(!r.passed("bgd.epsilon_multiplicative"));
        let bl = build_blowup_with(qz2(), 2, BlowupCounit::Diagonal).unwrap();
        assert!(!check_bialgebroid(&bl.a).passed("cgd.counit_right"));
    }
}

use std::sync::Arc;

use crate::bgdkit::Bialgebroid;
use crate::error::{Error, Result};
use crate::exactfield::{LinMap, SVec};
use crate::modkit::Bimodule;
use crate::moritakit::OneCell;

/// `B ⊕ k` as a comonoid in right `B`-modules: `B` with its own coproduct and
/// a group-like point on which `B` acts through `ε`.
pub fn with_trivial_summand(b: Arc<Bialgebroid>) -> Result<OneCell> {
    if b.base.dim() != 1 {
        return Err(Error::precondition("needs a bialgebra over the ground field"));
    }
    let f = b.field();
    let n = b.dim();
    let d = n + 1;
    let right = (0..n)
        .map(|y| {
            LinMap::from_fn(f, d, d, |x| {
                if x < n {
                    b.total.basis_mul(x, y).clone()
                } else {
                    SVec::single(n, b.epsilon().col(y).coeff(0, f))
                }
            })
        })
        .collect();
    let module = Bimodule::right_module(b.total.clone(), d, right)?;
    let delta = LinMap::from_fn(f, d, d * d, |x| {
        if x < n {
            b.delta().col(x).map_indices(|u| (u / n) * d + u % n)
        } else {
            SVec::unit(n * d + n, f)
        }
    });
    let eps = LinMap::from_fn(f, d, 1, |x| if x < n { b.epsilon().col(x).clone() } else { SVec::unit(0, f) });
    OneCell::bare(b, module, delta, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkit::cyclic_group_table;
    use crate::bgdkit::group_bialgebra;
    use crate::exactfield::Field;
    use crate::moritakit::{check_one_cell, morita_verdict};

    #[test]
    fn failure_is_localized_to_strongness() {
        let b = Arc::new(group_bialgebra(Field::Rationals, &cyclic_group_table(2)).unwrap());
        let p = with_trivial_summand(b).unwrap();
        assert!(check_one_cell(&p).pass(), "{}", check_one_cell(&p).to_text());
        let v = morita_verdict(&p).unwrap();
        assert_eq!(v.first_failure, Some("morita.strong"), "{}", v.report.to_text());
    }
}

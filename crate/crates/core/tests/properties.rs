use std::sync::Arc;

use morita_core::algkit::{check_algebra, cyclic_group_table};
use morita_core::bgdkit::check_bialgebroid;
use morita_core::bgdkit::sweedler_bialgebroid;
use morita_core::exactfield::{kernel, Echelon};
use morita_core::modkit::{tensor_over_ring, Bimodule};
use morita_core::{Field, FiniteAlgebra, LinMap, Matrix, SVec, Scalar};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::prime(7).unwrap())]
}

fn matrix(field: Field, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect()).unwrap()
}

fn int_rows(r: usize, c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
}

fn shaped() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| int_rows(r, c))
}

/// A permutation matrix plus one off-diagonal entry. Dense random bases make
/// exact checks on `R^op ⊗ R` slow without testing anything new.
fn sheared_permutation(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 0..n, 0..n, prop_oneof![-2i64..=-1, 1i64..=2]).prop_map(
        move |(perm, i, j, k)| {
            let mut rows = vec![vec![0; n]; n];
            for (c, &r) in perm.iter().enumerate() {
                rows[r][c] = 1;
            }
            if i != j {
                rows[i][j] += k;
            }
            rows
        },
    )
}

/// The same algebra written in the basis given by the columns of `p`.
fn rebased(a: &FiniteAlgebra, p: &Matrix) -> Option<FiniteAlgebra> {
    let f = a.field();
    let n = a.dim();
    let pinv = p.invert().unwrap()?;
    let col = |m: &Matrix, v: &SVec| m.apply(v);
    let basis: Vec<SVec> = p.columns();
    let c = (0..n)
        .map(|i| (0..n).map(|j| col(&pinv, &a.mul(&basis[i], &basis[j])).to_dense(f, n)).collect())
        .collect::<Vec<Vec<Vec<Scalar>>>>();
    let unit = col(&pinv, a.unit()).to_dense(f, n);
    Some(FiniteAlgebra::from_constants(f, &c, &unit).unwrap())
}

fn associative_oracle(c: &[Vec<Vec<Scalar>>], field: Field) -> bool {
    let n = c.len();
    let sum = |terms: Vec<Scalar>| terms.into_iter().fold(field.zero(), |a, b| a + b);
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|l| {
                (0..n).all(|k| {
                    let left = sum((0..n).map(|m| &c[i][j][m] * &c[m][l][k]).collect());
                    let right = sum((0..n).map(|m| &c[j][l][m] * &c[i][m][k]).collect());
                    left == right
                })
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dense_and_sparse_rank_agree(field in fields(), rows in shaped()) {
        let m = matrix(field, &rows);
        let svecs: Vec<SVec> = (0..m.rows()).map(|i| SVec::from_dense(m.row(i))).collect();
        prop_assert_eq!(m.rank(), Echelon::from_rows(field, &svecs).rank());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernels_are_kernels(field in fields(), rows in shaped()) {
        let m = matrix(field, &rows);
        let k = m.kernel_basis();
        prop_assert_eq!(k.cols(), m.cols() - m.rank());
        prop_assert!(m.mul(&k).is_zero());
        let svecs: Vec<SVec> = (0..m.rows()).map(|i| SVec::from_dense(m.row(i))).collect();
        let sk = kernel(field, m.cols(), svecs);
        prop_assert_eq!(sk.len(), k.cols());
        for v in &sk {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn inverse_and_solve(field in fields(), rows in (1usize..=5).prop_flat_map(|n| int_rows(n, n)), rhs in int_rows(5, 1)) {
        let m = matrix(field, &rows);
        let n = m.rows();
        match m.invert().unwrap() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(m.mul(&inv), Matrix::identity(field, n));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(field, n));
            }
            None => prop_assert!(m.rank() < n),
        }
        let b = matrix(field, &rhs[..n]);
        if let Some(x) = m.solve(&b).unwrap() {
            prop_assert_eq!(m.mul(&x), b);
        } else {
            prop_assert!(m.hstack(&b).rank() > m.rank());
        }
    }

    #[test]
    fn tensor_of_maps_is_functorial(a in int_rows(2, 3), b in int_rows(3, 2), c in int_rows(2, 2), d in int_rows(2, 2)) {
        let f = Field::Rationals;
        let lm = |r: &[Vec<i64>]| LinMap::from_matrix(&matrix(f, r));
        let (a, b, c, d) = (lm(&a), lm(&b), lm(&c), lm(&d));
        prop_assert_eq!(a.compose(&b).tensor(&c.compose(&d)), a.tensor(&c).compose(&b.tensor(&d)));
    }

    #[test]
    fn prime_field_distributes(x in 0i64..7, y in 0i64..7, z in 0i64..7) {
        let f = Field::prime(7).unwrap();
        let (x, y, z) = (f.int(x), f.int(y), f.int(z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rebased_algebras_stay_algebras(rows in int_rows(4, 4), which in 0usize..3) {
        let q = Field::Rationals;
        let a = match which {
            0 => FiniteAlgebra::matrix(q, 2).unwrap(),
            1 => FiniteAlgebra::group(q, &cyclic_group_table(4)).unwrap(),
            _ => FiniteAlgebra::diagonal(q, 4).unwrap(),
        };
        let Some(b) = rebased(&a, &matrix(q, &rows)) else { return Ok(()) };
        prop_assert!(check_algebra(&b).pass());
        prop_assert_eq!(b.is_commutative(), a.is_commutative());
        let b = Arc::new(b);
        let (t, _) = tensor_over_ring(&Bimodule::regular(&b), &Bimodule::regular(&b)).unwrap();
        prop_assert_eq!(t.dim(), 4);
    }

    #[test]
    fn sweedler_passes_in_any_basis(p in sheared_permutation(4)) {
        let q = Field::Rationals;
        let Some(b) = rebased(&FiniteAlgebra::matrix(q, 2).unwrap(), &matrix(q, &p)) else { return Ok(()) };
        let e = sweedler_bialgebroid(&Arc::new(b)).unwrap();
        let r = check_bialgebroid(&e);
        prop_assert!(r.pass(), "{}", r.to_text());
    }

    #[test]
    fn associativity_check_matches_oracle(i in 0usize..4, j in 0usize..4, k in 0usize..4, d in prop_oneof![-2i64..=-1, 1i64..=2]) {
        let q = Field::Rationals;
        let mut c = FiniteAlgebra::matrix(q, 2).unwrap().constants_dense();
        c[i][j][k] = &c[i][j][k] + &q.int(d);
        let unit = vec![q.one(), q.zero(), q.zero(), q.one()];
        let a = FiniteAlgebra::from_constants(q, &c, &unit).unwrap();
        prop_assert_eq!(check_algebra(&a).passed("alg.associative"), associative_oracle(&c, q));
    }
}

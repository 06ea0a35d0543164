use proptest::prelude::*;
use stratkos::exactlin::{rref, Field, Matrix, Subspace};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::gf(2).unwrap()),
        Just(Field::gf(5).unwrap())
    ]
}

fn entries(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (fields(), 1usize..6, 1usize..6)
        .prop_flat_map(|(f, r, c)| entries(r, c).prop_map(move |e| Matrix::from_i64(f, &e)))
}

fn two_families() -> impl Strategy<Value = (Field, usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (fields(), 1usize..7, 0usize..5, 0usize..5)
        .prop_flat_map(|(f, n, a, b)| (Just(f), Just(n), entries(a, n), entries(b, n)))
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_hits_image(m in matrix(), seed in prop::collection::vec(-3i64..=3, 6)) {
        let x: Vec<_> = seed[..m.cols].iter().map(|&v| m.field.from_i64(v)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b);
        prop_assert!(y.is_some());
        prop_assert_eq!(m.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix()) {
        if m.rows == m.cols {
            match m.inverse() {
                Some(inv) => {
                    prop_assert_eq!(m.mul(&inv), Matrix::identity(m.field, m.rows));
                    prop_assert_eq!(inv.mul(&m), Matrix::identity(m.field, m.rows));
                }
                None => prop_assert!(m.rank() < m.rows),
            }
        }
    }

    #[test]
    fn grassmann((f, n, u, v) in two_families()) {
        let conv = |rows: &Vec<Vec<i64>>| rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>();
        let su = Subspace::span(f, n, &conv(&u));
        let sv = Subspace::span(f, n, &conv(&v));
        let sum = su.sum(&sv);
        let int = su.intersection(&sv);
        prop_assert_eq!(sum.dim() + int.dim(), su.dim() + sv.dim());
        prop_assert!(int.is_subspace_of(&su) && int.is_subspace_of(&sv));
        prop_assert!(su.is_subspace_of(&sum) && sv.is_subspace_of(&sum));
        prop_assert_eq!(su.complement().len() + su.dim(), n);
    }

    #[test]
    fn subspace_coordinates_reconstruct((f, n, u, _v) in two_families()) {
        let rows: Vec<Vec<_>> = u.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        let s = Subspace::span(f, n, &rows);
        for r in &rows {
            let c = s.coordinates(r).expect("spanning vector has coordinates");
            let mut back = vec![f.zero(); n];
            for (ci, b) in c.iter().zip(s.basis()) {
                for k in 0..n {
                    back[k] = &back[k] + &(ci * &b[k]);
                }
            }
            prop_assert_eq!(&back, r);
        }
    }
}

#[test]
fn field_parsing() {
    assert_eq!(Field::parse("Q").unwrap(), Field::Rationals);
    assert_eq!(Field::parse("GF(3)").unwrap().characteristic(), 3);
    assert!(Field::gf(4).is_err());
    let f = Field::gf(7).unwrap();
    assert_eq!(f.from_i64(3).inv().unwrap(), f.from_i64(5));
    assert!(f.zero().inv().is_none());
}

use std::path::PathBuf;

use proptest::prelude::*;
use stratkos::algebra::{
    associated_graded, is_directed, opposite, quotient_by_idempotent, radical_reduction, Algebra,
};
use stratkos::cli::files::{load_algebra, AlgebraSpecFile};
use stratkos::exactlin::{Scalar, Subspace};

const FIXTURES: &[&str] = &[
    "ex2_1_10.alg",
    "ex2_2_2.alg",
    "ex2_4_3.alg",
    "ex2_4_10.alg",
    "ex5_2_12.alg",
    "ex5_2_14.alg",
    "ex6_1_10.alg",
    "ex6_3_6.alg",
    "ex6_3_7.alg",
    "ex6_4_1.alg",
    "ex6_4_2.alg",
    "ex6_4_5.alg",
];

fn load(name: &str) -> Algebra {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    load_algebra(&p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn graded_ok(a: &Algebra) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            a.product(i, j)
                .iter()
                .all(|(k, _)| a.basis[*k].degree == a.basis[i].degree + a.basis[j].degree)
        })
    })
}

fn sound(a: &Algebra) {
    assert_eq!(a.check_associativity(), None, "{} not associative", a.name);
    assert!(graded_ok(a), "{} breaks the grading", a.name);
    assert!(a.check_idempotents(), "{} has bad idempotents", a.name);
}

#[test]
fn derived_algebras_are_associative_and_graded() {
    for f in FIXTURES {
        let a = load(f);
        sound(&a);
        sound(&opposite(&a));
        let red = radical_reduction(&a).algebra;
        sound(&red);
        sound(&a.degree_zero_part().0);
        if is_directed(&a).is_some() {
            let g = associated_graded(&a).unwrap();
            sound(&g);
            assert_eq!(g.dim(), a.dim(), "{f}: dim Ǎ");
        }
    }
}

#[test]
fn opposite_is_an_involution() {
    for f in FIXTURES {
        let a = load(f);
        let back = opposite(&opposite(&a));
        assert!(back.structure_eq(&a), "{f}");
        assert_eq!(opposite(&a).dim(), a.dim());
    }
}

#[test]
fn radical_reduction_is_idempotent() {
    for f in FIXTURES {
        let red = radical_reduction(&load(f)).algebra;
        assert!(red.radical_degree_zero().is_empty(), "{f}: rad Ā_0 ≠ 0");
        assert_eq!(radical_reduction(&red).algebra.dim(), red.dim(), "{f}");
    }
}

#[test]
fn emitted_specs_round_trip() {
    for f in FIXTURES {
        let a = load(f);
        let text = AlgebraSpecFile::from_algebra(&a).to_json();
        let b = AlgebraSpecFile::parse(&text).unwrap().to_algebra().unwrap();
        assert!(a.structure_eq(&b), "{f}");
        assert_eq!(
            AlgebraSpecFile::from_algebra(&b).to_json(),
            text,
            "{f}: emission not stable"
        );
    }
}

// Killing every other vertex leaves e_λAe_λ modulo paths that pass through another vertex.
#[test]
fn killing_other_vertices_leaves_the_corner() {
    for f in FIXTURES {
        let a = load(f);
        for l in 0..a.num_vertices() {
            let mut q = a.clone();
            for (mu, name) in a.vertices.iter().enumerate() {
                if mu != l {
                    let v = q.vertex_index(name).unwrap();
                    q = quotient_by_idempotent(&q, v).algebra;
                }
            }
            assert_eq!(q.num_vertices(), 1);
            let mut through = Subspace::zero(a.field, a.dim());
            for mu in (0..a.num_vertices()).filter(|&m| m != l) {
                for &x in &a.block_indices(mu, l) {
                    for &y in &a.block_indices(l, mu) {
                        through.insert(&a.sparse_to_vec(a.product(x, y)));
                    }
                }
            }
            assert_eq!(
                q.dim(),
                a.block_dim(l, l) - through.dim(),
                "{f} at {}",
                a.vertices[l]
            );
        }
    }
}

fn element(a: &Algebra, seed: &[i64]) -> Vec<Scalar> {
    (0..a.dim())
        .map(|i| a.field.from_i64(seed[i % seed.len()]))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_elements_associate(
        fi in 0..FIXTURES.len(),
        x in prop::collection::vec(-2i64..=2, 1..12),
        y in prop::collection::vec(-2i64..=2, 1..12),
        z in prop::collection::vec(-2i64..=2, 1..12),
    ) {
        let a = load(FIXTURES[fi]);
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&a.unit(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, &a.unit()), x);
    }

    #[test]
    fn opposite_reverses_products(
        fi in 0..FIXTURES.len(),
        x in prop::collection::vec(-2i64..=2, 1..12),
        y in prop::collection::vec(-2i64..=2, 1..12),
    ) {
        let a = load(FIXTURES[fi]);
        let op = opposite(&a);
        let (x, y) = (element(&a, &x), element(&a, &y));
        prop_assert_eq!(op.mul(&x, &y), a.mul(&y, &x));
    }
}

use std::path::PathBuf;
use std::sync::Arc;

use proptest::prelude::*;
use stratkos::cli::files::load_ei;
use stratkos::eicat::*;
use stratkos::exactlin::{Field, Subspace};
use stratkos::homological::ext_dims;
use stratkos::repmod::{degree_zero_module, is_projective, regular};

const FIXTURES: &[&str] = &[
    "ex4_2_13.ei",
    "ex4_2_13_sub.ei",
    "ex4_2_14.ei",
    "ex4_2_14_sub.ei",
    "ex4_3_8.ei",
];

fn load(name: &str) -> EICategory {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    load_ei(&p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

#[test]
fn fixtures_are_valid_categories() {
    for f in FIXTURES {
        let c = load(f);
        c.validate().unwrap();
        for field in [
            Field::gf(2).unwrap(),
            Field::gf(3).unwrap(),
            Field::Rationals,
        ] {
            let a = category_algebra(&c, field).unwrap();
            assert_eq!(a.check_associativity(), None, "{f}");
            assert_eq!(a.dim(), c.len());
        }
    }
}

#[test]
fn non_isomorphisms_decompose() {
    for f in FIXTURES {
        let c = load(f);
        let unf = unfactorizable_morphisms(&c);
        for g in 0..c.len() {
            let ds = decompositions(&c, g);
            if c.is_iso(g) {
                assert!(ds.is_empty());
                continue;
            }
            assert!(
                !ds.is_empty(),
                "{f}: {} has no decomposition",
                c.morphisms[g].label
            );
            for d in &ds {
                assert!(d.iter().all(|u| unf.contains(u)));
                let mut acc = d[0];
                for &u in &d[1..] {
                    acc = c.compose(u, acc).expect("decomposition composes");
                }
                assert_eq!(acc, g);
            }
        }
    }
}

#[test]
fn freeness_passes_to_full_subcategories() {
    for f in FIXTURES {
        let c = load(f);
        if !has_ufp(&c).ufp {
            continue;
        }
        for objs in subsets(c.objects.len()) {
            let sub = c.full_subcategory(&objs);
            let Ok(sub) = sub else { continue };
            assert!(has_ufp(&sub).ufp, "{f}: full subcategory on {objs:?}");
        }
    }
}

#[test]
fn free_categories_are_free_and_covers_split() {
    for f in FIXTURES {
        let c = load(f);
        let cover = free_ei_cover(&c).unwrap();
        assert!(has_ufp(&cover.cover).ufp, "{f}: the free cover lacks UFP");
        if has_ufp(&c).ufp {
            assert_eq!(
                cover.kernel_dim(),
                0,
                "{f}: free category with nonzero cover kernel"
            );
        }
    }
}

fn stabilizer(c: &EICategory, alpha: usize) -> usize {
    let y = c.morphisms[alpha].target;
    c.aut(y)
        .into_iter()
        .filter(|&h| c.compose(h, alpha) == Some(alpha))
        .count()
}

#[test]
fn cyclic_modules_of_unfactorizables() {
    for f in FIXTURES {
        let c = load(f);
        if !has_ufp(&c).ufp {
            continue;
        }
        for p in [2u64, 3] {
            let field = Field::gf(p).unwrap();
            let a = Arc::new(category_algebra(&c, field).unwrap());
            let reg = regular(&a);
            let unf = unfactorizable_morphisms(&c);
            let spans: Vec<Subspace> = unf
                .iter()
                .map(|&u| reg.generated(&[a.basis_vec(u)]))
                .collect();
            for i in 0..unf.len() {
                for j in 0..unf.len() {
                    if i == j {
                        continue;
                    }
                    let int = spans[i].intersection(&spans[j]);
                    assert!(
                        int.dim() == 0 || spans[i] == spans[j],
                        "{f}: kEα ∩ kEα′ over GF({p})"
                    );
                }
                if !(stabilizer(&c, unf[i]) as u64).is_multiple_of(p) {
                    let (m, _) = reg.submodule(&spans[i]);
                    assert!(
                        is_projective(&m).unwrap(),
                        "{f}: kE{} over GF({p})",
                        c.morphisms[unf[i]].label
                    );
                }
            }
        }
    }
}

#[test]
fn free_categories_have_no_second_ext() {
    for f in FIXTURES {
        let c = load(f);
        if !has_ufp(&c).ufp {
            continue;
        }
        for p in [2u64, 3] {
            let a = Arc::new(category_algebra(&c, Field::gf(p).unwrap()).unwrap());
            let k0 = degree_zero_module(&a);
            assert_eq!(
                ext_dims(&k0, &k0, 2).unwrap().dims[2],
                0,
                "{f} over GF({p})"
            );
        }
    }
}

#[test]
fn ei_theorem_report_is_consistent() {
    for f in FIXTURES {
        let c = load(f);
        for p in [2u64, 3] {
            let r = ei_theorem_checks(&c, Field::gf(p).unwrap(), 4).unwrap();
            assert!(r.consistent, "{f} over GF({p})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Chains of C_n objects joined by one-element bisets form free categories.
    #[test]
    fn random_chains_are_free(orders in prop::collection::vec(1usize..4, 2..5)) {
        let groups: Vec<FiniteGroup> = orders
            .iter()
            .map(|&n| if n == 1 { FiniteGroup::trivial() } else { FiniteGroup::cyclic(n, "g") })
            .collect();
        let objects: Vec<String> = (0..orders.len()).map(|i| format!("o{i}")).collect();
        let mut arrows = Vec::new();
        for i in 0..orders.len() - 1 {
            // H acts regularly on the left, G trivially on the right
            let h = &groups[i + 1];
            let g = &groups[i];
            let biset = Biset {
                labels: (0..h.order()).map(|k| format!("a{i}_{k}")).collect(),
                left: (0..h.order()).map(|x| (0..h.order()).map(|y| h.mul(x, y)).collect()).collect(),
                right: (0..g.order()).map(|_| (0..h.order()).collect()).collect(),
            };
            arrows.push(EIArrow { name: format!("a{i}"), source: i, target: i + 1, biset });
        }
        let q = EIQuiver { objects, groups, arrows };
        q.validate().unwrap();
        let c = free_ei_category(&q, "chain").unwrap();
        prop_assert!(has_ufp(&c).ufp);
        prop_assert!(is_gradable(&c).gradable);
        let cover = free_ei_cover(&c).unwrap();
        prop_assert_eq!(cover.kernel_dim(), 0);
    }
}

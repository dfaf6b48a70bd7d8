//! Exhaustive invariants over every enumerated space on small carriers.

use topocheck::enumerate::enumerate_spaces;
use topocheck::setclasses::{self, Tables};
use topocheck::space::FiniteSpace;
use topocheck::spaceprops;
use topocheck::PointSet;

fn all_spaces(n_max: usize) -> Vec<FiniteSpace> {
    (1..=n_max)
        .flat_map(|n| enumerate_spaces(n).unwrap())
        .collect()
}

fn subsets(sp: &FiniteSpace) -> impl Iterator<Item = PointSet> + '_ {
    (0..1u64 << sp.n()).map(|bits| PointSet::from_bits(sp.n(), bits))
}

#[test]
fn interior_closure_kernel_laws() {
    for sp in all_spaces(4) {
        for a in subsets(&sp) {
            let int = sp.interior(&a).unwrap();
            let cl = sp.closure(&a).unwrap();
            let ker = sp.kernel(&a).unwrap();
            assert!(int.is_subset(&a) && a.is_subset(&cl));
            assert!(a.is_subset(&ker));
            assert_eq!(sp.interior(&int).unwrap(), int, "interior idempotent");
            assert_eq!(sp.closure(&cl).unwrap(), cl, "closure idempotent");
            assert_eq!(
                cl,
                sp.interior(&a.complement()).unwrap().complement(),
                "closure-interior duality"
            );
        }
    }
}

#[test]
fn cached_operators_match_definitional_routes() {
    for sp in all_spaces(4) {
        let opens: Vec<PointSet> = sp.opens().collect();
        for a in subsets(&sp) {
            // Interior: union of open subsets.
            let mut int_def = PointSet::empty(sp.n());
            // Kernel: intersection of open supersets.
            let mut ker_def = PointSet::full(sp.n());
            for o in &opens {
                if o.is_subset(&a) {
                    int_def = int_def.union(o);
                }
                if a.is_subset(o) {
                    ker_def = ker_def.inter(o);
                }
            }
            assert_eq!(sp.interior(&a).unwrap(), int_def);
            assert_eq!(sp.kernel(&a).unwrap(), ker_def);
        }
    }
}

#[test]
fn semi_operator_laws() {
    for sp in all_spaces(4) {
        let t = Tables::new(&sp).unwrap();
        for a in subsets(&sp) {
            let sint = t.semi_interior(&a).unwrap();
            let scl = t.semi_closure(&a).unwrap();
            let cl = sp.closure(&a).unwrap();
            let int = sp.interior(&a).unwrap();
            assert!(sint.is_subset(&a) && a.is_subset(&scl) && scl.is_subset(&cl));
            assert!(int.is_subset(&sint));
            assert_eq!(t.semi_closure(&scl).unwrap(), scl, "scl idempotent");
            // sint is itself semi-open (the family is union-closed).
            assert!(setclasses::classify_basic(&sp, &sint).unwrap().semi_open);
            // scl through duality with sint.
            assert_eq!(
                scl,
                t.semi_interior(&a.complement()).unwrap().complement()
            );
        }
    }
}

#[test]
fn semi_open_family_is_union_closed() {
    for sp in all_spaces(4) {
        let semi: Vec<PointSet> = subsets(&sp)
            .filter(|a| setclasses::classify_basic(&sp, a).unwrap().semi_open)
            .collect();
        for a in &semi {
            for b in &semi {
                let u = a.union(b);
                assert!(
                    setclasses::classify_basic(&sp, &u).unwrap().semi_open,
                    "union of semi-open not semi-open in {}",
                    sp.compact()
                );
            }
        }
    }
}

#[test]
fn class_implication_chains() {
    for sp in all_spaces(3) {
        for a in subsets(&sp) {
            let r = setclasses::classify(&sp, &a).unwrap();
            assert!(!r.open || r.semi_open, "open implies semi-open");
            assert!(!r.semi_open || r.sg_open, "semi-open implies sg-open");
            assert!(
                !(r.semi_open || r.preopen) || r.beta_open,
                "semi-open or preopen implies beta-open"
            );
            assert!(
                !r.nowhere_dense || r.hsg_closed,
                "nowhere dense implies hsg-closed"
            );
            assert!(!r.regular_open || r.open, "regular open implies open");
            // Criterion and definitional hsg agree.
            let t = Tables::new(&sp).unwrap();
            assert_eq!(r.hsg_closed, t.is_hsg_closed_definitional(&a).unwrap());
        }
    }
}

#[test]
fn projections_are_open_continuous_surjections() {
    let spaces = all_spaces(3);
    for x in &spaces {
        for y in &spaces {
            let (prod, projections) = FiniteSpace::product(&[x, y]).unwrap();
            for proj in &projections {
                let cod = proj.codomain();
                let full_image = proj.image(&PointSet::full(prod.n())).unwrap();
                assert!(full_image.is_full(), "projection surjective");
                for v in cod.opens() {
                    assert!(prod.is_open(&proj.preimage(&v).unwrap()).unwrap());
                }
                for u in prod.opens() {
                    assert!(cod.is_open(&proj.image(&u).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn locally_indiscrete_sum_with_strongly_irresolvable_keeps_beta_inside_sg() {
    let spaces = all_spaces(3);
    let mut found = 0usize;
    for p in &spaces {
        if !spaceprops::is_locally_indiscrete(p) {
            continue;
        }
        for q in &spaces {
            if !spaceprops::is_strongly_irresolvable(q).unwrap() {
                continue;
            }
            let (sum, _) = FiniteSpace::sum(&[p, q]).unwrap();
            assert!(
                spaceprops::beta_subset_of_sg(&sum).unwrap(),
                "failed for {} ⊕ {}",
                p.compact(),
                q.compact()
            );
            found += 1;
        }
    }
    assert!(found > 0, "no qualifying sums searched");
}

#[test]
fn semi_hausdorff_excludes_hyperconnected() {
    for sp in all_spaces(4) {
        if sp.n() < 2 {
            continue;
        }
        if spaceprops::is_semi_hausdorff(&sp).unwrap() {
            assert!(
                !spaceprops::is_hyperconnected(&sp),
                "semi-Hausdorff space {} is hyperconnected",
                sp.compact()
            );
        }
    }
}

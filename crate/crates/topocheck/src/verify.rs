//! The cross-cutting verification suites: lemma equivalences over every
//! small space, product/box characterizations, the indiscrete-factor
//! formula, and the map implication suites.
//!
//! Suites shard their space streams across workers (`TOPOCHECK_WORKERS`
//! caps the pool) and merge deterministically: failures are reported for
//! the first offending space in enumeration order.

use rayon::prelude::*;

use crate::enumerate::{box_mask, enumerate_spaces, search_quest, Quest};
use crate::pointset::PointSet;
use crate::report::Check;
use crate::setclasses::{
    g_closed_mask, hsg_mask, nowhere_dense_mask, preopen_mask, semi_open_mask, Tables,
};
use crate::space::{FiniteSpace, SpaceMap, ValidationMode};
use crate::spaceprops;

/// Runs `f` inside a rayon pool sized by `TOPOCHECK_WORKERS` when set.
pub fn with_workers<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let requested = std::env::var("TOPOCHECK_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    match requested {
        Some(k) if k >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("worker pool")
            .install(f),
        _ => f(),
    }
}

fn spaces_up_to(n_max: usize) -> Vec<FiniteSpace> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_spaces(n).expect("within enumeration range"));
    }
    out
}

/// Records at most one witness per check id, first in scan order.
struct FirstFails<const K: usize> {
    slots: [Option<String>; K],
}

impl<const K: usize> FirstFails<K> {
    fn new() -> Self {
        FirstFails {
            slots: std::array::from_fn(|_| None),
        }
    }

    fn record(&mut self, id: usize, witness: impl FnOnce() -> String) {
        if self.slots[id].is_none() {
            self.slots[id] = Some(witness());
        }
    }

    fn merge_first(parts: Vec<Self>) -> [Option<String>; K] {
        let mut out: [Option<String>; K] = std::array::from_fn(|_| None);
        for part in parts {
            for (slot, found) in out.iter_mut().zip(part.slots) {
                if slot.is_none() {
                    *slot = found;
                }
            }
        }
        out
    }
}

const LEMMA_CHECKS: [&str; 6] = [
    "singleton-dichotomy",
    "locally-indiscrete-routes",
    "hsg-criterion",
    "sg-duality",
    "g-duality",
    "nowhere-dense-implies-hsg",
];

fn lemma_failures(sp: &FiniteSpace) -> FirstFails<6> {
    let mut fails = FirstFails::new();
    let t = Tables::new(sp).expect("lemma suite carrier fits scan regime");
    let full = sp.full();
    let here = |extra: String| format!("space={} {extra}", sp.compact());

    for p in 0..sp.n() {
        let nd = nowhere_dense_mask(sp, 1u64 << p);
        let ld = preopen_mask(sp, 1u64 << p);
        if nd == ld {
            fails.record(0, || here(format!("point={p}")));
        }
    }

    let r1 = spaceprops::is_locally_indiscrete(sp);
    let r2 = spaceprops::locally_indiscrete_singletons(sp);
    let r3 = spaceprops::locally_indiscrete_sg(sp).expect("scan regime");
    if r1 != r2 || r2 != r3 {
        fails.record(1, || here(format!("routes=({r1},{r2},{r3})")));
    }

    for a in 0..=full {
        let set = || PointSet::from_bits(sp.n(), a).to_string();
        if t.hsg_definitional_mask(a) != hsg_mask(sp, a) {
            fails.record(2, || here(format!("set={}", set())));
        }
        if t.sg_closed_mask(a) != t.sg_open_mask(full ^ a) {
            fails.record(3, || here(format!("set={}", set())));
        }
        if t.g_open_mask(a) != g_closed_mask(sp, full ^ a) {
            fails.record(4, || here(format!("set={}", set())));
        }
        if nowhere_dense_mask(sp, a) && !hsg_mask(sp, a) {
            fails.record(5, || here(format!("set={}", set())));
        }
    }
    fails
}

/// Lemma equivalences over all labeled topologies on at most 4 points.
pub fn lemma_suite() -> Vec<Check> {
    with_workers(|| {
        let spaces = spaces_up_to(4);
        let parts: Vec<FirstFails<6>> = spaces.par_iter().map(lemma_failures).collect();
        let firsts = FirstFails::merge_first(parts);
        let mut checks: Vec<Check> = LEMMA_CHECKS
            .iter()
            .zip(firsts)
            .map(|(name, f)| Check::from_failure(*name, f))
            .collect();

        // Converse of nowhere-dense ⟹ hsg-closed fails already at 2 points.
        let witnesses =
            search_quest(2, Quest::HsgNotNowhereDense, None).expect("quest range");
        let i2 = FiniteSpace::indiscrete(2);
        let found = witnesses
            .iter()
            .any(|w| w.space == i2 && !w.subsets[0].is_empty());
        checks.push(Check::from_flag(
            "hsg-not-nowhere-dense-witness",
            found,
            "no hsg-closed non-nowhere-dense subset found on ≤ 2 points",
        ));
        checks
    })
}

fn abc_fixture() -> (FiniteSpace, PointSet) {
    let e = FiniteSpace::validate_topology(
        3,
        &[PointSet::from_indices(3, &[0, 1])],
        ValidationMode::Strict,
    )
    .expect("fixture is a topology")
    .with_labels(vec!["a".into(), "b".into(), "c".into()]);
    let a = PointSet::from_indices(3, &[1, 2]);
    (e, a)
}

/// Product suites: the box characterization for semi-open/preopen sets, the
/// indiscrete-factor interior-of-closure formula with its hsg transfer, and
/// the bit-exact square fixtures.
pub fn product_suite() -> Vec<Check> {
    with_workers(|| {
        let spaces = spaces_up_to(3);
        let pairs: Vec<(usize, usize)> = (0..spaces.len())
            .flat_map(|i| (0..spaces.len()).map(move |j| (i, j)))
            .collect();

        let box_parts: Vec<FirstFails<2>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (x, y) = (&spaces[i], &spaces[j]);
                let mut fails = FirstFails::new();
                let (prod, _) = FiniteSpace::product(&[x, y]).expect("≤ 9 points");
                for a in 1..=x.full() {
                    for b in 1..=y.full() {
                        let boxed = box_mask(a, b, y.n());
                        let witness = || {
                            format!(
                                "X={} Y={} A={} B={}",
                                x.compact(),
                                y.compact(),
                                PointSet::from_bits(x.n(), a),
                                PointSet::from_bits(y.n(), b)
                            )
                        };
                        let semi_box = semi_open_mask(&prod, boxed);
                        let semi_parts = semi_open_mask(x, a) && semi_open_mask(y, b);
                        if semi_box != semi_parts {
                            fails.record(0, witness);
                        }
                        let pre_box = preopen_mask(&prod, boxed);
                        let pre_parts = preopen_mask(x, a) && preopen_mask(y, b);
                        if pre_box != pre_parts {
                            fails.record(1, witness);
                        }
                    }
                }
                fails
            })
            .collect();
        let box_firsts = FirstFails::merge_first(box_parts);

        let factor_parts: Vec<FirstFails<2>> = spaces
            .par_iter()
            .map(|x| {
                let mut fails = FirstFails::new();
                for m in 1..=3usize {
                    let y = FiniteSpace::indiscrete(m);
                    let (prod, projections) =
                        FiniteSpace::product(&[x, &y]).expect("≤ 9 points");
                    let p = &projections[0];
                    for a in 0..=prod.full() {
                        let witness = || {
                            format!(
                                "X={} |Y|={m} A={}",
                                x.compact(),
                                PointSet::from_bits(prod.n(), a)
                            )
                        };
                        let img = p.image_mask(a);
                        let lhs = prod.int_mask(prod.cl_mask(a));
                        let rhs = box_mask(x.int_mask(x.cl_mask(img)), y.full(), y.n());
                        if lhs != rhs {
                            fails.record(0, witness);
                        }
                        if hsg_mask(&prod, a) != hsg_mask(x, img) {
                            fails.record(1, witness);
                        }
                    }
                }
                fails
            })
            .collect();
        let factor_firsts = FirstFails::merge_first(factor_parts);

        let mut checks = vec![
            Check::from_failure("product-box-semiopen", box_firsts[0].clone()),
            Check::from_failure("product-box-preopen", box_firsts[1].clone()),
            Check::from_failure("indiscrete-factor-intcl", factor_firsts[0].clone()),
            Check::from_failure("indiscrete-factor-hsg-transfer", factor_firsts[1].clone()),
        ];
        checks.extend(square_fixture_checks());
        checks
    })
}

/// The bit-exact fixture: X = {a,b,c} with opens {∅,{a,b},X} and A = {b,c}.
fn square_fixture_checks() -> Vec<Check> {
    let (e, a) = abc_fixture();
    let te = Tables::new(&e).expect("3 points");
    let (square, projections) = FiniteSpace::product(&[&e, &e]).expect("9 points");
    let tsq = Tables::new(&square).expect("9 points");
    let boxed = box_mask(a.bits(), a.bits(), 3);

    let mut checks = Vec::new();

    let part_i =
        te.sg_closed_mask(a.bits()) && !tsq.sg_closed_mask(boxed);
    checks.push(Check::from_flag(
        "square-fixture-sg-closed",
        part_i,
        "A sg-closed status or its square's failure did not reproduce",
    ));

    let scl = tsq.scl_mask(boxed);
    checks.push(if scl == square.full() {
        Check::pass_with(
            "square-fixture-scl-full",
            "semi-closure of the boxed set is the full square",
        )
    } else {
        Check::fail(
            "square-fixture-scl-full",
            format!("scl = {}", PointSet::from_bits(9, scl)),
        )
    });

    let preimage = projections[0].preimage_mask(a.bits());
    checks.push(Check::from_flag(
        "square-fixture-preimage-sg",
        !tsq.sg_closed_mask(preimage),
        "projection preimage unexpectedly sg-closed",
    ));

    // Indiscrete first factor: S = {a,b} is hsg-closed there but its
    // preimage under the first projection is not.
    let sigma = FiniteSpace::indiscrete(3);
    let (prod, prj) = FiniteSpace::product(&[&sigma, &e]).expect("9 points");
    let s = PointSet::from_indices(3, &[0, 1]);
    let ok = hsg_mask(&sigma, s.bits()) && !hsg_mask(&prod, prj[0].preimage_mask(s.bits()));
    checks.push(Check::from_flag(
        "indiscrete-fixture-preimage-hsg",
        ok,
        "hsg preimage fixture did not reproduce",
    ));
    checks
}

const MAP_CHECKS: [&str; 4] = [
    "map-open-cont-surj-pre-semi-open",
    "map-open-cont-delta-open",
    "map-almost-open-hsg-preimage",
    "map-dii-td-anti-delta",
];

fn singletons_locally_closed(sp: &FiniteSpace) -> bool {
    (0..sp.n()).all(|p| {
        let single = 1u64 << p;
        sp.min_masks()[p] & sp.cl_mask(single) == single
    })
}

/// Map implication suites over all ordered pairs of 3-point topologies and
/// all 27 point maps per pair, plus the projection suite over pairs of
/// factors with at most 3 points.
pub fn map_suite() -> Vec<Check> {
    with_workers(|| {
        let spaces3: Vec<FiniteSpace> = enumerate_spaces(3)
            .expect("3 within range")
            .collect();

        let parts: Vec<FirstFails<4>> = (0..spaces3.len())
            .into_par_iter()
            .map(|i| {
                let x = &spaces3[i];
                let mut fails = FirstFails::new();
                for y in &spaces3 {
                    // Dense-in-itself plus locally closed singletons: the
                    // coherent reading of the anti-δ-open hypothesis. No
                    // finite space satisfies it, so the check is vacuous by
                    // construction, like quasi-hyperdisconnectedness.
                    let dii_td = spaceprops::is_dense_in_itself(y) && singletons_locally_closed(y);
                    for code in 0..27usize {
                        let assign = vec![code % 3, code / 3 % 3, code / 9];
                        let f = SpaceMap::new(x.clone(), y.clone(), assign);
                        let r = f.classify().expect("3-point classification");
                        let witness = || {
                            format!(
                                "dom={} cod={} map={:?}",
                                x.compact(),
                                y.compact(),
                                f.assign()
                            )
                        };
                        if r.open && r.continuous && r.surjective && !r.pre_semi_open {
                            fails.record(0, witness);
                        }
                        if r.open && r.continuous && !r.delta_open {
                            fails.record(1, witness);
                        }
                        if r.almost_open
                            && r.continuous
                            && r.anti_delta_open
                            && r.surjective
                            && !f.preimage_preserves_hsg().expect("3-point")
                        {
                            fails.record(2, witness);
                        }
                        if dii_td && !r.anti_delta_open {
                            fails.record(3, witness);
                        }
                    }
                }
                fails
            })
            .collect();
        let firsts = FirstFails::merge_first(parts);
        let mut checks: Vec<Check> = MAP_CHECKS
            .iter()
            .zip(firsts)
            .map(|(name, f)| Check::from_failure(*name, f))
            .collect();
        checks.extend(projection_checks());
        checks
    })
}

fn projection_checks() -> Vec<Check> {
    let spaces = spaces_up_to(3);
    let pairs: Vec<(usize, usize)> = (0..spaces.len())
        .flat_map(|i| (0..spaces.len()).map(move |j| (i, j)))
        .collect();

    // Per pair: first irresolute failure, first gs failure, and the first
    // sg-irresolute failure (the last is expected to exist somewhere).
    let parts: Vec<(FirstFails<2>, Option<String>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&spaces[i], &spaces[j]);
            let mut fails = FirstFails::new();
            let mut sg_failure = None;
            let (prod, projections) = FiniteSpace::product(&[x, y]).expect("≤ 9 points");
            let tprod = Tables::new(&prod).expect("≤ 9 points");
            for proj in &projections {
                let cod = proj.codomain();
                let tcod = Tables::new(cod).expect("≤ 3 points");
                for b in 0..=cod.full() {
                    let pre = proj.preimage_mask(b);
                    let witness = || {
                        format!(
                            "X={} Y={} B={}",
                            x.compact(),
                            y.compact(),
                            PointSet::from_bits(cod.n(), b)
                        )
                    };
                    if tcod.is_semi_open(b) && !tprod.is_semi_open(pre) {
                        fails.record(0, witness);
                    }
                    if tcod.gs_closed_mask(b) && !tprod.gs_closed_mask(pre) {
                        fails.record(1, witness);
                    }
                    if sg_failure.is_none()
                        && tcod.sg_closed_mask(b)
                        && !tprod.sg_closed_mask(pre)
                    {
                        sg_failure = Some(witness());
                    }
                }
            }
            (fails, sg_failure)
        })
        .collect();

    let mut irr_first = None;
    let mut gs_first = None;
    let mut sg_found = None;
    for (fails, sg) in parts {
        let [irr, gs] = fails.slots;
        if irr_first.is_none() {
            irr_first = irr;
        }
        if gs_first.is_none() {
            gs_first = gs;
        }
        if sg_found.is_none() {
            sg_found = sg;
        }
    }

    vec![
        Check::from_failure("projections-irresolute", irr_first),
        Check::from_failure("projections-gs-irresolute", gs_first),
        match sg_found {
            Some(w) => Check::pass_with("projection-sg-irresolute-failure", w),
            None => Check::fail(
                "projection-sg-irresolute-failure",
                "no projection with an sg-closed preimage failure found",
            ),
        },
    ]
}

/// Aggregates the lemma, product, and map suites.
pub fn verify_suite() -> Vec<Check> {
    let mut checks = lemma_suite();
    checks.extend(product_suite());
    checks.extend(map_suite());
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    #[test]
    fn lemma_suite_passes() {
        let checks = lemma_suite();
        assert_eq!(checks.len(), 7);
        assert!(all_pass(&checks), "{checks:#?}");
    }

    #[test]
    fn product_suite_passes() {
        let checks = product_suite();
        assert_eq!(checks.len(), 8);
        assert!(all_pass(&checks), "{checks:#?}");
    }

    #[test]
    fn map_suite_passes() {
        let checks = map_suite();
        assert_eq!(checks.len(), 7);
        assert!(all_pass(&checks), "{checks:#?}");
        let sg = checks
            .iter()
            .find(|c| c.name == "projection-sg-irresolute-failure")
            .unwrap();
        assert!(sg.detail.is_some());
    }

    #[test]
    fn worker_env_is_honored() {
        std::env::set_var("TOPOCHECK_WORKERS", "1");
        let a = lemma_suite();
        std::env::remove_var("TOPOCHECK_WORKERS");
        let b = lemma_suite();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.pass, y.pass);
        }
    }
}

//! Space-level predicates and the registry behind the query language.

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_SCAN_WIDTH};
use crate::setclasses::{beta_open_mask, preopen_mask, Tables};
use crate::space::FiniteSpace;

pub fn is_indiscrete(sp: &FiniteSpace) -> bool {
    sp.open_count() <= 2
}

pub fn is_discrete(sp: &FiniteSpace) -> bool {
    (0..sp.n()).all(|p| sp.min_nbhd(p).len() == 1)
}

/// Locally indiscrete: every open set is closed.
pub fn is_locally_indiscrete(sp: &FiniteSpace) -> bool {
    sp.open_masks().iter().all(|&o| sp.is_closed_mask(o))
}

/// Second route: every singleton is locally dense (preopen).
pub(crate) fn locally_indiscrete_singletons(sp: &FiniteSpace) -> bool {
    (0..sp.n()).all(|p| preopen_mask(sp, 1u64 << p))
}

/// Third route: every subset is sg-open.
pub(crate) fn locally_indiscrete_sg(sp: &FiniteSpace) -> Result<bool> {
    let t = Tables::new(sp)?;
    Ok((0..=sp.full()).all(|a| t.sg_open_mask(a)))
}

/// The paper-style T_D gloss: every singleton locally dense.
pub fn t_d_paper(sp: &FiniteSpace) -> bool {
    locally_indiscrete_singletons(sp)
}

/// No isolated point, i.e. no open singleton.
pub fn is_dense_in_itself(sp: &FiniteSpace) -> bool {
    (0..sp.n()).all(|p| sp.min_nbhd(p).len() != 1)
}

/// Every nonempty open set is dense (equivalently, nonempty opens pairwise
/// intersect).
pub fn is_hyperconnected(sp: &FiniteSpace) -> bool {
    sp.open_masks()
        .iter()
        .all(|&o| o == 0 || sp.cl_mask(o) == sp.full())
}

/// Every infinite open subspace is hyperdisconnected. A finite space has no
/// infinite open subspace, so this holds vacuously on every input here.
pub fn is_quasi_hyperdisconnected(_sp: &FiniteSpace) -> bool {
    true
}

/// Distinct points separated by disjoint semi-open sets.
pub fn is_semi_hausdorff(sp: &FiniteSpace) -> Result<bool> {
    let t = Tables::new(sp)?;
    let full = sp.full();
    let semi: Vec<u64> = (1..=full).filter(|&a| t.is_semi_open(a)).collect();
    // sint(¬u) is the largest semi-open set avoiding u.
    let mut avoid: Vec<u64> = Vec::with_capacity(semi.len());
    for &u in &semi {
        avoid.push(t.sint_mask(full & !u));
    }
    for p in 0..sp.n() {
        for q in p + 1..sp.n() {
            let separated = semi.iter().enumerate().any(|(i, &u)| {
                u >> p & 1 == 1 && avoid[i] >> q & 1 == 1
                    || u >> q & 1 == 1 && avoid[i] >> p & 1 == 1
            });
            if !separated {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Resolvable: some dense subset has dense complement.
pub fn is_resolvable(sp: &FiniteSpace) -> Result<bool> {
    if sp.n() == 0 {
        return Err(Error::EmptyCarrier);
    }
    if sp.n() > MAX_SCAN_WIDTH {
        return Err(Error::SizeLimitExceeded {
            what: "subset-scan points",
            value: sp.n(),
            limit: MAX_SCAN_WIDTH,
        });
    }
    let full = sp.full();
    for d in 0..=full {
        if sp.cl_mask(d) == full && sp.cl_mask(full & !d) == full {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Strongly irresolvable: no nonempty open subspace is resolvable.
pub fn is_strongly_irresolvable(sp: &FiniteSpace) -> Result<bool> {
    for &o in sp.open_masks() {
        if o == 0 {
            continue;
        }
        let sub = sp.subspace(&PointSet::from_bits(sp.n(), o))?;
        if is_resolvable(&sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every β-open subset is sg-open.
pub fn beta_subset_of_sg(sp: &FiniteSpace) -> Result<bool> {
    let t = Tables::new(sp)?;
    for a in 0..=sp.full() {
        if beta_open_mask(sp, a) && !t.sg_open_mask(a) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub type Predicate = fn(&FiniteSpace) -> Result<bool>;

fn p_indiscrete(sp: &FiniteSpace) -> Result<bool> {
    Ok(is_indiscrete(sp))
}
fn p_discrete(sp: &FiniteSpace) -> Result<bool> {
    Ok(is_discrete(sp))
}
fn p_locally_indiscrete(sp: &FiniteSpace) -> Result<bool> {
    Ok(is_locally_indiscrete(sp))
}
fn p_hyperconnected(sp: &FiniteSpace) -> Result<bool> {
    Ok(is_hyperconnected(sp))
}
fn p_quasi_hyperdisconnected(sp: &FiniteSpace) -> Result<bool> {
    Ok(is_quasi_hyperdisconnected(sp))
}
fn p_t_d_paper(sp: &FiniteSpace) -> Result<bool> {
    Ok(t_d_paper(sp))
}
fn p_dense_in_itself(sp: &FiniteSpace) -> Result<bool> {
    Ok(is_dense_in_itself(sp))
}

/// Name → predicate registry; the names are the identifiers of the query
/// grammar.
pub const PREDICATES: &[(&str, Predicate)] = &[
    ("beta_subset_of_sg", beta_subset_of_sg),
    ("dense_in_itself", p_dense_in_itself),
    ("discrete", p_discrete),
    ("hyperconnected", p_hyperconnected),
    ("indiscrete", p_indiscrete),
    ("locally_indiscrete", p_locally_indiscrete),
    ("quasi_hyperdisconnected", p_quasi_hyperdisconnected),
    ("resolvable", is_resolvable),
    ("semi_hausdorff", is_semi_hausdorff),
    ("strongly_irresolvable", is_strongly_irresolvable),
    ("t_d_paper", p_t_d_paper),
];

pub fn lookup(name: &str) -> Option<Predicate> {
    PREDICATES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, p)| *p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::ValidationMode;

    fn abc_space() -> FiniteSpace {
        FiniteSpace::validate_topology(
            3,
            &[PointSet::from_indices(3, &[0, 1])],
            ValidationMode::Strict,
        )
        .unwrap()
    }

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::validate_topology(2, &[PointSet::singleton(2, 0)], ValidationMode::Strict)
            .unwrap()
    }

    #[test]
    fn locally_indiscrete_examples() {
        assert!(is_locally_indiscrete(&FiniteSpace::indiscrete(2)));
        assert!(!is_locally_indiscrete(&sierpinski()));
        assert!(!is_locally_indiscrete(&abc_space()));
        assert!(is_locally_indiscrete(&FiniteSpace::discrete(3)));
    }

    #[test]
    fn hyperconnected_examples() {
        assert!(is_hyperconnected(&abc_space()));
        assert!(!is_hyperconnected(&FiniteSpace::discrete(2)));
        assert!(is_quasi_hyperdisconnected(&abc_space()));
        assert!(is_hyperconnected(&FiniteSpace::indiscrete(1)));
    }

    #[test]
    fn semi_hausdorff_examples() {
        assert!(is_semi_hausdorff(&FiniteSpace::discrete(2)).unwrap());
        assert!(!is_semi_hausdorff(&sierpinski()).unwrap());
        assert!(!is_semi_hausdorff(&FiniteSpace::indiscrete(2)).unwrap());
        assert!(is_semi_hausdorff(&FiniteSpace::indiscrete(1)).unwrap());
    }

    #[test]
    fn resolvable_examples() {
        assert!(is_resolvable(&FiniteSpace::indiscrete(2)).unwrap());
        assert!(!is_resolvable(&sierpinski()).unwrap());
        assert!(is_strongly_irresolvable(&sierpinski()).unwrap());
        assert!(!is_resolvable(&FiniteSpace::discrete(2)).unwrap());
        assert!(!is_resolvable(&FiniteSpace::indiscrete(1)).unwrap());
    }

    #[test]
    fn beta_subset_of_sg_examples() {
        let i2 = FiniteSpace::indiscrete(2);
        let s = sierpinski();
        let (sum, _) = FiniteSpace::sum(&[&i2, &s]).unwrap();
        assert!(is_locally_indiscrete(&i2));
        assert!(is_strongly_irresolvable(&s).unwrap());
        assert!(beta_subset_of_sg(&sum).unwrap());
        assert!(beta_subset_of_sg(&i2).unwrap());
        // Result for E recorded from the exhaustive scan.
        assert!(!beta_subset_of_sg(&abc_space()).unwrap());
    }

    #[test]
    fn registry_resolves_names() {
        assert!(lookup("hyperconnected").is_some());
        assert!(lookup("no_such_predicate").is_none());
        for (name, p) in PREDICATES {
            assert!(
                name.chars().all(|c| c.is_ascii_lowercase() || c == '_'),
                "registry name {name} is not snake_case"
            );
            let _ = p(&FiniteSpace::indiscrete(2)).unwrap();
        }
    }
}

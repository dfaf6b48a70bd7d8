//! Map classification: continuity, openness, and the preservation properties
//! for images and preimages of the generalized set classes.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::setclasses::{hsg_mask, nd_mask, nowhere_dense_mask, Tables};
use crate::space::SpaceMap;

/// Classification quantifies over all subsets of both carriers.
pub const MAX_MAP_WIDTH: usize = 12;

/// Property flags of one map, each computed definitionally.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MapReport {
    pub surjective: bool,
    pub continuous: bool,
    pub open: bool,
    pub almost_open: bool,
    pub pre_semi_open: bool,
    pub delta_open: bool,
    pub anti_delta_open: bool,
    pub irresolute: bool,
    pub sg_irresolute: bool,
    pub gs_irresolute: bool,
}

impl MapReport {
    pub fn flags(&self) -> [(&'static str, bool); 10] {
        [
            ("surjective", self.surjective),
            ("continuous", self.continuous),
            ("open", self.open),
            ("almost_open", self.almost_open),
            ("pre_semi_open", self.pre_semi_open),
            ("delta_open", self.delta_open),
            ("anti_delta_open", self.anti_delta_open),
            ("irresolute", self.irresolute),
            ("sg_irresolute", self.sg_irresolute),
            ("gs_irresolute", self.gs_irresolute),
        ]
    }
}

impl SpaceMap {
    pub(crate) fn image_mask(&self, a: u64) -> u64 {
        let mut r = 0u64;
        let mut rest = a;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            r |= 1u64 << self.assign()[p];
        }
        r
    }

    pub(crate) fn preimage_mask(&self, b: u64) -> u64 {
        let mut r = 0u64;
        for (p, &t) in self.assign().iter().enumerate() {
            if b >> t & 1 == 1 {
                r |= 1u64 << p;
            }
        }
        r
    }

    pub fn image(&self, a: &PointSet) -> Result<PointSet> {
        let m = self.domain().checked(a)?;
        Ok(PointSet::from_bits(self.codomain().n(), self.image_mask(m)))
    }

    pub fn preimage(&self, b: &PointSet) -> Result<PointSet> {
        let m = self.codomain().checked(b)?;
        Ok(PointSet::from_bits(self.domain().n(), self.preimage_mask(m)))
    }

    fn check_map_width(&self) -> Result<()> {
        for n in [self.domain().n(), self.codomain().n()] {
            if n > MAX_MAP_WIDTH {
                return Err(Error::SizeLimitExceeded {
                    what: "map classification points",
                    value: n,
                    limit: MAX_MAP_WIDTH,
                });
            }
        }
        Ok(())
    }

    /// Computes every flag of [`MapReport`] by scanning all subsets of both
    /// carriers (widths ≤ 12).
    pub fn classify(&self) -> Result<MapReport> {
        self.check_map_width()?;
        let dom = self.domain();
        let cod = self.codomain();
        let tdom = Tables::new(dom)?;
        let tcod = Tables::new(cod)?;
        let full_dom = dom.full();
        let full_cod = cod.full();

        let surjective = self.image_mask(full_dom) == full_cod;
        let continuous = cod
            .open_masks()
            .iter()
            .all(|&v| dom.is_open_mask(self.preimage_mask(v)));
        let open = dom
            .open_masks()
            .iter()
            .all(|&u| cod.is_open_mask(self.image_mask(u)));

        let mut almost_open = true;
        let mut pre_semi_open = true;
        for a in 0..=full_dom {
            if dom.int_mask(dom.cl_mask(a)) == a && !cod.is_open_mask(self.image_mask(a)) {
                almost_open = false;
            }
            if tdom.is_semi_open(a) && !tcod.is_semi_open(self.image_mask(a)) {
                pre_semi_open = false;
            }
            if !almost_open && !pre_semi_open {
                break;
            }
        }

        let mut delta_open = true;
        let mut irresolute = true;
        let mut sg_irresolute = true;
        let mut gs_irresolute = true;
        for b in 0..=full_cod {
            let pre = self.preimage_mask(b);
            if nowhere_dense_mask(cod, b) && !nowhere_dense_mask(dom, pre) {
                delta_open = false;
            }
            if tcod.is_semi_open(b) && !tdom.is_semi_open(pre) {
                irresolute = false;
            }
            if tcod.sg_closed_mask(b) && !tdom.sg_closed_mask(pre) {
                sg_irresolute = false;
            }
            if tcod.gs_closed_mask(b) && !tdom.gs_closed_mask(pre) {
                gs_irresolute = false;
            }
        }

        let nd_dom = nd_mask(dom);
        let nd_cod = nd_mask(cod);
        let anti_delta_open = (0..dom.n())
            .filter(|&p| nd_dom >> p & 1 == 1)
            .all(|p| nd_cod >> self.assign()[p] & 1 == 1);

        Ok(MapReport {
            surjective,
            continuous,
            open,
            almost_open,
            pre_semi_open,
            delta_open,
            anti_delta_open,
            irresolute,
            sg_irresolute,
            gs_irresolute,
        })
    }

    /// True iff the preimage of every hsg-closed set is hsg-closed
    /// (criterion route on both sides).
    pub fn preimage_preserves_hsg(&self) -> Result<bool> {
        self.check_map_width()?;
        let dom = self.domain();
        let cod = self.codomain();
        for b in 0..=cod.full() {
            if hsg_mask(cod, b) && !hsg_mask(dom, self.preimage_mask(b)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{FiniteSpace, ValidationMode};

    fn abc_space() -> FiniteSpace {
        FiniteSpace::validate_topology(
            3,
            &[PointSet::from_indices(3, &[0, 1])],
            ValidationMode::Strict,
        )
        .unwrap()
    }

    #[test]
    fn image_preimage_examples() {
        let e = abc_space();
        let (sq, projections) = FiniteSpace::product(&[&e, &e]).unwrap();
        let p = &projections[0];
        let bc = PointSet::from_indices(3, &[1, 2]);
        // p⁻¹({b,c}) = {b,c}×X: row-major indices 3..8.
        assert_eq!(
            p.preimage(&bc).unwrap(),
            PointSet::from_indices(9, &[3, 4, 5, 6, 7, 8])
        );
        let id = SpaceMap::identity(&sq);
        let a = PointSet::from_indices(9, &[0, 4]);
        assert_eq!(id.image(&a).unwrap(), a);
        assert!(p.preimage(&PointSet::empty(3)).unwrap().is_empty());
    }

    #[test]
    fn identity_has_all_flags() {
        let e = abc_space();
        let r = SpaceMap::identity(&e).classify().unwrap();
        for (name, v) in r.flags() {
            assert!(v, "identity should be {name}");
        }
        assert!(SpaceMap::identity(&e).preimage_preserves_hsg().unwrap());
    }

    #[test]
    fn first_projection_of_square_flags() {
        let e = abc_space();
        let (_, projections) = FiniteSpace::product(&[&e, &e]).unwrap();
        let r = projections[0].classify().unwrap();
        assert!(r.continuous);
        assert!(r.open);
        assert!(r.surjective);
        assert!(r.irresolute);
        assert!(r.gs_irresolute);
        assert!(!r.sg_irresolute);
    }

    #[test]
    fn indiscrete_projection_fails_hsg_preimage() {
        let sigma = FiniteSpace::indiscrete(3);
        let e = abc_space();
        let (_, projections) = FiniteSpace::product(&[&sigma, &e]).unwrap();
        let q = &projections[0];
        assert!(!q.preimage_preserves_hsg().unwrap());
        // The offending set: {a,b} is hsg-closed in the indiscrete factor.
        let ab = PointSet::from_indices(3, &[0, 1]);
        assert!(crate::setclasses::is_hsg_closed(&sigma, &ab).unwrap());
        let pre = q.preimage(&ab).unwrap();
        assert!(!crate::setclasses::is_hsg_closed(q.domain(), &pre).unwrap());
    }

    #[test]
    fn size_limit_on_classification() {
        let big = FiniteSpace::indiscrete(13);
        let id = SpaceMap::identity(&big);
        assert!(matches!(
            id.classify(),
            Err(Error::SizeLimitExceeded { .. })
        ));
        assert!(matches!(
            id.preimage_preserves_hsg(),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn projections_are_open_continuous_surjective() {
        let spaces = [
            FiniteSpace::indiscrete(2),
            abc_space(),
            FiniteSpace::discrete(2),
        ];
        for x in &spaces {
            for y in &spaces {
                let (_, projections) = FiniteSpace::product(&[x, y]).unwrap();
                for p in &projections {
                    let r = p.classify().unwrap();
                    assert!(r.open && r.continuous && r.surjective);
                    assert!(r.pre_semi_open);
                    assert!(r.delta_open);
                }
            }
        }
    }
}

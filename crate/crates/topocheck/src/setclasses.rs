//! Generalized open/closed set classes: the semi- operators, sg/g/gs/hsg
//! tests, and the nowhere-dense singleton set N(X).
//!
//! Everything that quantifies over subsets goes through [`Tables`], which
//! memoizes the semi-open family of one space (carriers up to 16 points).
//! Tests that only need interior/closure/kernel (the hsg criterion, g-closed,
//! the basic flags) work on any carrier up to 64 points.

use crate::error::{Error, Result};
use crate::pointset::{submasks, PointSet, MAX_SCAN_WIDTH};
use crate::space::FiniteSpace;

/// Flags that need only interior/closure; available on any carrier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasicClassReport {
    pub open: bool,
    pub closed: bool,
    pub semi_open: bool,
    pub semi_closed: bool,
    pub preopen: bool,
    pub regular_open: bool,
    pub beta_open: bool,
    pub dense: bool,
    pub nowhere_dense: bool,
}

/// Full membership record across every class the tool knows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassReport {
    pub open: bool,
    pub closed: bool,
    pub semi_open: bool,
    pub semi_closed: bool,
    pub preopen: bool,
    pub regular_open: bool,
    pub beta_open: bool,
    pub dense: bool,
    pub nowhere_dense: bool,
    pub g_open: bool,
    pub g_closed: bool,
    pub sg_open: bool,
    pub sg_closed: bool,
    pub gs_closed: bool,
    pub hsg_closed: bool,
}

impl ClassReport {
    /// Flags in the fixed order used by CLI output.
    pub fn flags(&self) -> [(&'static str, bool); 15] {
        [
            ("open", self.open),
            ("closed", self.closed),
            ("semi_open", self.semi_open),
            ("semi_closed", self.semi_closed),
            ("preopen", self.preopen),
            ("regular_open", self.regular_open),
            ("beta_open", self.beta_open),
            ("dense", self.dense),
            ("nowhere_dense", self.nowhere_dense),
            ("g_open", self.g_open),
            ("g_closed", self.g_closed),
            ("sg_open", self.sg_open),
            ("sg_closed", self.sg_closed),
            ("gs_closed", self.gs_closed),
            ("hsg_closed", self.hsg_closed),
        ]
    }
}

// ---- operator-regime tests (no subset scan, any carrier ≤ 64) ----

pub(crate) fn semi_open_mask(sp: &FiniteSpace, a: u64) -> bool {
    a & !sp.cl_mask(sp.int_mask(a)) == 0
}

pub(crate) fn semi_closed_mask(sp: &FiniteSpace, a: u64) -> bool {
    sp.int_mask(sp.cl_mask(a)) & !a == 0
}

pub(crate) fn preopen_mask(sp: &FiniteSpace, a: u64) -> bool {
    a & !sp.int_mask(sp.cl_mask(a)) == 0
}

pub(crate) fn beta_open_mask(sp: &FiniteSpace, a: u64) -> bool {
    a & !sp.cl_mask(sp.int_mask(sp.cl_mask(a))) == 0
}

pub(crate) fn nowhere_dense_mask(sp: &FiniteSpace, a: u64) -> bool {
    sp.int_mask(sp.cl_mask(a)) == 0
}

/// β-open through the subspace route: dense in some regular closed subspace,
/// i.e. some regular closed R with A ⊆ R ⊆ cl(A). Test oracle for the
/// formula route.
#[cfg(test)]
pub(crate) fn beta_open_via_regular_closed(sp: &FiniteSpace, a: u64) -> bool {
    let cl = sp.cl_mask(a);
    for s in submasks(cl & !a) {
        let r = a | s;
        if sp.cl_mask(sp.int_mask(r)) == r {
            return true;
        }
    }
    false
}

pub(crate) fn nd_mask(sp: &FiniteSpace) -> u64 {
    let mut r = 0u64;
    for p in 0..sp.n() {
        if nowhere_dense_mask(sp, 1u64 << p) {
            r |= 1u64 << p;
        }
    }
    r
}

/// Points whose singletons are nowhere dense.
pub fn nd_singletons(sp: &FiniteSpace) -> PointSet {
    PointSet::from_bits(sp.n(), nd_mask(sp))
}

/// hsg-closed via the criterion N(X) ∩ int(cl(A)) = ∅.
pub(crate) fn hsg_mask(sp: &FiniteSpace, a: u64) -> bool {
    nd_mask(sp) & sp.int_mask(sp.cl_mask(a)) == 0
}

pub fn is_hsg_closed(sp: &FiniteSpace, a: &PointSet) -> Result<bool> {
    let m = sp.checked(a)?;
    Ok(hsg_mask(sp, m))
}

/// g-closed: cl(A) ⊆ U for every open U ⊇ A, i.e. cl(A) ⊆ ker(A).
pub(crate) fn g_closed_mask(sp: &FiniteSpace, a: u64) -> bool {
    sp.cl_mask(a) & !sp.ker_mask(a) == 0
}

pub fn is_g_closed(sp: &FiniteSpace, a: &PointSet) -> Result<bool> {
    let m = sp.checked(a)?;
    Ok(g_closed_mask(sp, m))
}

pub(crate) fn basic_report_mask(sp: &FiniteSpace, a: u64) -> BasicClassReport {
    let full = sp.full();
    BasicClassReport {
        open: sp.is_open_mask(a),
        closed: sp.is_closed_mask(a),
        semi_open: semi_open_mask(sp, a),
        semi_closed: semi_closed_mask(sp, a),
        preopen: preopen_mask(sp, a),
        regular_open: sp.int_mask(sp.cl_mask(a)) == a,
        beta_open: beta_open_mask(sp, a),
        dense: sp.cl_mask(a) == full,
        nowhere_dense: nowhere_dense_mask(sp, a),
    }
}

/// Fills the flags that need no subset scan; works on any carrier ≤ 64.
pub fn classify_basic(sp: &FiniteSpace, a: &PointSet) -> Result<BasicClassReport> {
    let m = sp.checked(a)?;
    Ok(basic_report_mask(sp, m))
}

// ---- scan-regime tests (memoized semi-open family, carrier ≤ 16) ----

/// Per-space memo table of the semi-open family, indexed by subset mask.
/// Built once per space and shared read-only by the suites.
pub struct Tables<'a> {
    sp: &'a FiniteSpace,
    full: u64,
    semi_open: Vec<bool>,
}

impl<'a> Tables<'a> {
    pub fn new(sp: &'a FiniteSpace) -> Result<Tables<'a>> {
        if sp.n() > MAX_SCAN_WIDTH {
            return Err(Error::SizeLimitExceeded {
                what: "subset-scan points",
                value: sp.n(),
                limit: MAX_SCAN_WIDTH,
            });
        }
        let full = sp.full();
        let semi_open = (0..=full).map(|a| semi_open_mask(sp, a)).collect();
        Ok(Tables {
            sp,
            full,
            semi_open,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        self.sp
    }

    pub(crate) fn is_semi_open(&self, a: u64) -> bool {
        self.semi_open[a as usize]
    }

    pub(crate) fn is_semi_closed(&self, a: u64) -> bool {
        // A is semi-closed iff its complement is semi-open.
        self.semi_open[(self.full ^ a) as usize]
    }

    /// Union of all semi-open subsets of `a` (itself semi-open: the family
    /// is union-closed).
    pub(crate) fn sint_mask(&self, a: u64) -> u64 {
        let mut r = 0u64;
        for s in submasks(a) {
            if self.semi_open[s as usize] {
                r |= s;
            }
        }
        r
    }

    /// Intersection of all semi-closed supersets of `a`.
    pub(crate) fn scl_mask(&self, a: u64) -> u64 {
        let mut r = self.full;
        for s in submasks(self.full & !a) {
            let t = a | s;
            if self.is_semi_closed(t) {
                r &= t;
            }
        }
        r
    }

    /// Intersection of all semi-open supersets of `a` (not semi-open in
    /// general).
    pub(crate) fn sker_mask(&self, a: u64) -> u64 {
        let mut r = self.full;
        for s in submasks(self.full & !a) {
            let t = a | s;
            if self.semi_open[t as usize] {
                r &= t;
            }
        }
        r
    }

    /// sg-open: every semi-closed subset of `a` lies inside sint(a).
    pub(crate) fn sg_open_mask(&self, a: u64) -> bool {
        let mut sint = 0u64;
        let mut semi_closed_union = 0u64;
        for s in submasks(a) {
            if self.semi_open[s as usize] {
                sint |= s;
            }
            if self.is_semi_closed(s) {
                semi_closed_union |= s;
            }
        }
        semi_closed_union & !sint == 0
    }

    /// sg-closed: scl(a) ⊆ sker(a).
    pub(crate) fn sg_closed_mask(&self, a: u64) -> bool {
        self.scl_mask(a) & !self.sker_mask(a) == 0
    }

    /// gs-closed: scl(a) ⊆ ker(a).
    pub(crate) fn gs_closed_mask(&self, a: u64) -> bool {
        self.scl_mask(a) & !self.sp.ker_mask(a) == 0
    }

    /// g-open, definitionally: every closed subset of `a` lies in int(a).
    pub(crate) fn g_open_mask(&self, a: u64) -> bool {
        let int = self.sp.int_mask(a);
        let mut closed_union = 0u64;
        for s in submasks(a) {
            if self.sp.is_closed_mask(s) {
                closed_union |= s;
            }
        }
        closed_union & !int == 0
    }

    /// hsg-closed, definitionally: every subset of `a` is sg-closed.
    /// Retained as the test oracle for the criterion route.
    pub(crate) fn hsg_definitional_mask(&self, a: u64) -> bool {
        submasks(a).all(|s| self.sg_closed_mask(s))
    }

    fn checked(&self, a: &PointSet) -> Result<u64> {
        self.sp.checked(a)
    }

    pub fn semi_interior(&self, a: &PointSet) -> Result<PointSet> {
        let m = self.checked(a)?;
        Ok(PointSet::from_bits(self.sp.n(), self.sint_mask(m)))
    }

    pub fn semi_closure(&self, a: &PointSet) -> Result<PointSet> {
        let m = self.checked(a)?;
        Ok(PointSet::from_bits(self.sp.n(), self.scl_mask(m)))
    }

    pub fn semi_kernel(&self, a: &PointSet) -> Result<PointSet> {
        let m = self.checked(a)?;
        Ok(PointSet::from_bits(self.sp.n(), self.sker_mask(m)))
    }

    pub fn is_sg_open(&self, a: &PointSet) -> Result<bool> {
        let m = self.checked(a)?;
        Ok(self.sg_open_mask(m))
    }

    pub fn is_sg_closed(&self, a: &PointSet) -> Result<bool> {
        let m = self.checked(a)?;
        Ok(self.sg_closed_mask(m))
    }

    pub fn is_gs_closed(&self, a: &PointSet) -> Result<bool> {
        let m = self.checked(a)?;
        Ok(self.gs_closed_mask(m))
    }

    pub fn is_g_open(&self, a: &PointSet) -> Result<bool> {
        let m = self.checked(a)?;
        Ok(self.g_open_mask(m))
    }

    pub fn is_hsg_closed_definitional(&self, a: &PointSet) -> Result<bool> {
        let m = self.checked(a)?;
        Ok(self.hsg_definitional_mask(m))
    }

    pub fn classify(&self, a: &PointSet) -> Result<ClassReport> {
        let m = self.checked(a)?;
        let b = basic_report_mask(self.sp, m);
        Ok(ClassReport {
            open: b.open,
            closed: b.closed,
            semi_open: b.semi_open,
            semi_closed: b.semi_closed,
            preopen: b.preopen,
            regular_open: b.regular_open,
            beta_open: b.beta_open,
            dense: b.dense,
            nowhere_dense: b.nowhere_dense,
            g_open: self.g_open_mask(m),
            g_closed: g_closed_mask(self.sp, m),
            sg_open: self.sg_open_mask(m),
            sg_closed: self.sg_closed_mask(m),
            gs_closed: self.gs_closed_mask(m),
            hsg_closed: hsg_mask(self.sp, m),
        })
    }
}

// One-shot wrappers; suites should build a `Tables` per space instead.

pub fn semi_interior(sp: &FiniteSpace, a: &PointSet) -> Result<PointSet> {
    Tables::new(sp)?.semi_interior(a)
}

pub fn semi_closure(sp: &FiniteSpace, a: &PointSet) -> Result<PointSet> {
    Tables::new(sp)?.semi_closure(a)
}

pub fn semi_kernel(sp: &FiniteSpace, a: &PointSet) -> Result<PointSet> {
    Tables::new(sp)?.semi_kernel(a)
}

pub fn is_sg_open(sp: &FiniteSpace, a: &PointSet) -> Result<bool> {
    Tables::new(sp)?.is_sg_open(a)
}

pub fn is_sg_closed(sp: &FiniteSpace, a: &PointSet) -> Result<bool> {
    Tables::new(sp)?.is_sg_closed(a)
}

pub fn is_gs_closed(sp: &FiniteSpace, a: &PointSet) -> Result<bool> {
    Tables::new(sp)?.is_gs_closed(a)
}

pub fn is_g_open(sp: &FiniteSpace, a: &PointSet) -> Result<bool> {
    Tables::new(sp)?.is_g_open(a)
}

pub fn classify(sp: &FiniteSpace, a: &PointSet) -> Result<ClassReport> {
    Tables::new(sp)?.classify(a)
}

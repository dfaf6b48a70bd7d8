//! Fixed-width bitmask subsets of a finite carrier.

use std::fmt;

/// Hard cap on carrier size; single-set operators stay O(n) up to here.
pub const MAX_WIDTH: usize = 64;

/// Cap on carriers admitting exhaustive 2^n subset scans.
pub const MAX_SCAN_WIDTH: usize = 16;

pub(crate) fn full_bits(width: usize) -> u64 {
    debug_assert!(width <= MAX_WIDTH);
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A subset of `{0, .., width-1}` as a membership mask.
///
/// Equality is bitwise and complement is taken relative to the width. The
/// width is part of the value: binary operations on sets of different widths
/// are programming errors and panic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointSet {
    width: usize,
    bits: u64,
}

impl PointSet {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "width {width} exceeds {MAX_WIDTH}");
        PointSet { width, bits: 0 }
    }

    pub fn full(width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "width {width} exceeds {MAX_WIDTH}");
        PointSet {
            width,
            bits: full_bits(width),
        }
    }

    pub fn singleton(width: usize, p: usize) -> Self {
        assert!(p < width, "point {p} outside width {width}");
        PointSet {
            width,
            bits: 1u64 << p,
        }
    }

    /// Builds a set from a raw mask; bits at or above `width` are rejected.
    pub fn from_bits(width: usize, bits: u64) -> Self {
        assert!(width <= MAX_WIDTH, "width {width} exceeds {MAX_WIDTH}");
        assert!(
            bits & !full_bits(width) == 0,
            "mask {bits:#x} has bits outside width {width}"
        );
        PointSet { width, bits }
    }

    pub fn from_indices(width: usize, points: &[usize]) -> Self {
        let mut s = PointSet::empty(width);
        for &p in points {
            assert!(p < width, "point {p} outside width {width}");
            s.bits |= 1u64 << p;
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_bits(self.width)
    }

    pub fn contains(&self, p: usize) -> bool {
        p < self.width && self.bits >> p & 1 == 1
    }

    pub fn with(&self, p: usize) -> Self {
        assert!(p < self.width);
        PointSet {
            width: self.width,
            bits: self.bits | 1u64 << p,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check(other);
        PointSet {
            width: self.width,
            bits: self.bits | other.bits,
        }
    }

    pub fn inter(&self, other: &Self) -> Self {
        self.check(other);
        PointSet {
            width: self.width,
            bits: self.bits & other.bits,
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.check(other);
        PointSet {
            width: self.width,
            bits: self.bits & !other.bits,
        }
    }

    pub fn complement(&self) -> Self {
        PointSet {
            width: self.width,
            bits: full_bits(self.width) & !self.bits,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check(other);
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> Points {
        Points { bits: self.bits }
    }

    /// Renders as `{a,c}` with the given labels, falling back to indices.
    pub fn render(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("{");
        for (k, p) in self.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            match labels {
                Some(ls) => out.push_str(&ls[p]),
                None => out.push_str(&p.to_string()),
            }
        }
        out.push('}');
        out
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.width, other.width,
            "point-set width mismatch: {} vs {}",
            self.width, other.width
        );
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(None))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(None))
    }
}

/// Ascending iterator over the members of a mask.
pub struct Points {
    bits: u64,
}

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let p = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(p)
    }
}

/// Iterates every submask of `m` in ascending order, including 0 and `m`.
pub(crate) fn submasks(m: u64) -> Submasks {
    Submasks {
        m,
        cur: 0,
        done: false,
    }
}

pub(crate) struct Submasks {
    m: u64,
    cur: u64,
    done: bool,
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if self.cur == self.m {
            self.done = true;
        } else {
            self.cur = self.cur.wrapping_sub(self.m) & self.m;
        }
        Some(out)
    }
}

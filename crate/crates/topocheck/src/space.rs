//! Finite topological spaces, maps between them, and the basic constructions
//! (products, sums, subspaces).
//!
//! Every finite space is Alexandroff, so each point has a smallest open
//! neighbourhood; the `min_nbhd` table is cached at construction and makes
//! interior/closure/kernel O(n) per call, which the enumeration suites rely
//! on heavily.

use std::collections::HashSet;
use std::fmt;

use crate::error::{ClosureOp, Error, Result};
use crate::pointset::{full_bits, PointSet, MAX_WIDTH};

/// How `validate_topology` treats the input family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationMode {
    /// Reject families not closed under pairwise union and intersection.
    Strict,
    /// Treat the family as a subbasis and close it under both operations.
    Complete,
}

/// A topology on `{0, .., n-1}`.
///
/// `opens` is kept in canonical order (cardinality, then mask value) and
/// always contains the empty set and the full carrier. Spaces compare by
/// `(n, opens)`; labels are carried for rendering only.
#[derive(Clone)]
pub struct FiniteSpace {
    n: usize,
    opens: Vec<u64>,
    min_nbhd: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.opens == other.opens
    }
}

impl Eq for FiniteSpace {}

impl std::hash::Hash for FiniteSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.opens.hash(state);
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

fn canonical_sort(opens: &mut Vec<u64>) {
    opens.sort_unstable_by_key(|&m| (m.count_ones(), m));
    opens.dedup();
}

fn mask_string(bits: u64) -> String {
    let mut out = String::from("{");
    let mut rest = bits;
    let mut first = true;
    while rest != 0 {
        let p = rest.trailing_zeros();
        rest &= rest - 1;
        if !first {
            out.push(',');
        }
        out.push_str(&p.to_string());
        first = false;
    }
    out.push('}');
    out
}

/// Closes a generator list under pairwise binary `op`; generators stay in.
fn close_under(gens: &[u64], op: fn(u64, u64) -> u64) -> Vec<u64> {
    let mut seen: HashSet<u64> = gens.iter().copied().collect();
    let mut stack: Vec<u64> = seen.iter().copied().collect();
    while let Some(s) = stack.pop() {
        for &g in gens {
            let t = op(s, g);
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

impl FiniteSpace {
    /// Canonicalizes `family` (with empty and full set adjoined) into a
    /// topology. Strict mode reports the first violating pair; complete mode
    /// treats the family as a subbasis.
    pub fn validate_topology(
        n: usize,
        family: &[PointSet],
        mode: ValidationMode,
    ) -> Result<FiniteSpace> {
        if n > MAX_WIDTH {
            return Err(Error::SizeLimitExceeded {
                what: "points",
                value: n,
                limit: MAX_WIDTH,
            });
        }
        for s in family {
            if s.width() != n {
                return Err(Error::WidthMismatch {
                    left: s.width(),
                    right: n,
                });
            }
        }
        let full = full_bits(n);
        let mut opens: Vec<u64> = family.iter().map(|s| s.bits()).collect();
        opens.push(0);
        opens.push(full);
        canonical_sort(&mut opens);
        match mode {
            ValidationMode::Strict => {
                let present: HashSet<u64> = opens.iter().copied().collect();
                for i in 0..opens.len() {
                    for j in i + 1..opens.len() {
                        let (a, b) = (opens[i], opens[j]);
                        if !present.contains(&(a | b)) {
                            return Err(Error::NotATopology {
                                witness_a: mask_string(a),
                                witness_b: mask_string(b),
                                op: ClosureOp::Union,
                            });
                        }
                        if !present.contains(&(a & b)) {
                            return Err(Error::NotATopology {
                                witness_a: mask_string(a),
                                witness_b: mask_string(b),
                                op: ClosureOp::Intersection,
                            });
                        }
                    }
                }
            }
            ValidationMode::Complete => {
                // Meets first; unions of an intersection-closed family stay
                // intersection-closed, so one pass of each suffices.
                let meets = close_under(&opens, |a, b| a & b);
                opens = close_under(&meets, |a, b| a | b);
                canonical_sort(&mut opens);
            }
        }
        Ok(Self::from_sorted_opens(n, opens, None))
    }

    /// `opens` must be a valid topology in canonical order.
    pub(crate) fn from_sorted_opens(
        n: usize,
        opens: Vec<u64>,
        labels: Option<Vec<String>>,
    ) -> FiniteSpace {
        debug_assert!(opens.contains(&0) && opens.contains(&full_bits(n)));
        let mut min_nbhd = vec![full_bits(n); n];
        for &o in &opens {
            for p in 0..n {
                if o >> p & 1 == 1 {
                    min_nbhd[p] &= o;
                }
            }
        }
        FiniteSpace {
            n,
            opens,
            min_nbhd,
            labels,
        }
    }

    /// Builds the topology generated by per-point minimal neighbourhoods.
    /// `nbhds[p]` must contain `p` and satisfy q ∈ nbhds[p] ⟹ nbhds[q] ⊆ nbhds[p].
    pub(crate) fn from_min_nbhds(n: usize, nbhds: &[u64]) -> FiniteSpace {
        debug_assert_eq!(nbhds.len(), n);
        let mut opens: Vec<u64> = close_under(nbhds, |a, b| a | b);
        if !opens.contains(&0) {
            opens.push(0);
        }
        if !opens.contains(&full_bits(n)) {
            opens.push(full_bits(n));
        }
        canonical_sort(&mut opens);
        FiniteSpace {
            n,
            opens,
            min_nbhd: nbhds.to_vec(),
            labels: None,
        }
    }

    pub fn indiscrete(n: usize) -> FiniteSpace {
        Self::validate_topology(n, &[], ValidationMode::Strict).expect("indiscrete is a topology")
    }

    pub fn discrete(n: usize) -> FiniteSpace {
        let singles: Vec<PointSet> = (0..n).map(|p| PointSet::singleton(n, p)).collect();
        Self::validate_topology(n, &singles, ValidationMode::Complete)
            .expect("discrete is a topology")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub fn opens(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.opens.iter().map(|&m| PointSet::from_bits(self.n, m))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FiniteSpace {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn label_of(&self, p: usize) -> String {
        match &self.labels {
            Some(ls) => ls[p].clone(),
            None => p.to_string(),
        }
    }

    pub fn min_nbhd(&self, p: usize) -> PointSet {
        PointSet::from_bits(self.n, self.min_nbhd[p])
    }

    pub(crate) fn full(&self) -> u64 {
        full_bits(self.n)
    }

    pub(crate) fn open_masks(&self) -> &[u64] {
        &self.opens
    }

    pub(crate) fn min_masks(&self) -> &[u64] {
        &self.min_nbhd
    }

    pub(crate) fn int_mask(&self, a: u64) -> u64 {
        let mut r = 0;
        let mut rest = a;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.min_nbhd[p] & !a == 0 {
                r |= 1u64 << p;
            }
        }
        r
    }

    pub(crate) fn cl_mask(&self, a: u64) -> u64 {
        self.full() & !self.int_mask(self.full() & !a)
    }

    pub(crate) fn ker_mask(&self, a: u64) -> u64 {
        // Alexandroff: the kernel is the union of minimal neighbourhoods.
        let mut r = 0;
        let mut rest = a;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            r |= self.min_nbhd[p];
        }
        r
    }

    pub(crate) fn is_open_mask(&self, a: u64) -> bool {
        self.int_mask(a) == a
    }

    pub(crate) fn is_closed_mask(&self, a: u64) -> bool {
        self.cl_mask(a) == a
    }

    pub(crate) fn checked(&self, a: &PointSet) -> Result<u64> {
        if a.width() != self.n {
            return Err(Error::WidthMismatch {
                left: a.width(),
                right: self.n,
            });
        }
        Ok(a.bits())
    }

    /// Union of all open subsets of `a`; equivalently the points of `a`
    /// whose minimal neighbourhood stays inside `a`.
    pub fn interior(&self, a: &PointSet) -> Result<PointSet> {
        let m = self.checked(a)?;
        Ok(PointSet::from_bits(self.n, self.int_mask(m)))
    }

    /// Smallest closed superset: complement of the interior of the complement.
    pub fn closure(&self, a: &PointSet) -> Result<PointSet> {
        let m = self.checked(a)?;
        Ok(PointSet::from_bits(self.n, self.cl_mask(m)))
    }

    /// Intersection of all open supersets of `a`.
    pub fn kernel(&self, a: &PointSet) -> Result<PointSet> {
        let m = self.checked(a)?;
        Ok(PointSet::from_bits(self.n, self.ker_mask(m)))
    }

    pub fn is_open(&self, a: &PointSet) -> Result<bool> {
        let m = self.checked(a)?;
        Ok(self.is_open_mask(m))
    }

    pub fn is_closed(&self, a: &PointSet) -> Result<bool> {
        let m = self.checked(a)?;
        Ok(self.is_closed_mask(m))
    }

    /// Product space with points as factor tuples in row-major order (last
    /// factor varies fastest); returns the coordinate projections.
    pub fn product(factors: &[&FiniteSpace]) -> Result<(FiniteSpace, Vec<SpaceMap>)> {
        if factors.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut total: usize = 1;
        for f in factors {
            total = total.saturating_mul(f.n);
        }
        if total > MAX_WIDTH {
            return Err(Error::SizeLimitExceeded {
                what: "product points",
                value: total,
                limit: MAX_WIDTH,
            });
        }
        let k = factors.len();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].n;
        }
        let coord = |t: usize, i: usize| t / strides[i] % factors[i].n;

        let mut nbhds = vec![0u64; total];
        for t in 0..total {
            let mut m = 0u64;
            'point: for u in 0..total {
                for i in 0..k {
                    if factors[i].min_nbhd[coord(t, i)] >> coord(u, i) & 1 == 0 {
                        continue 'point;
                    }
                }
                m |= 1u64 << u;
            }
            nbhds[t] = m;
        }
        let mut space = FiniteSpace::from_min_nbhds(total, &nbhds);
        if factors.iter().any(|f| f.labels.is_some()) {
            let labels = (0..total)
                .map(|t| {
                    (0..k)
                        .map(|i| factors[i].label_of(coord(t, i)))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            space = space.with_labels(labels);
        }
        let projections = (0..k)
            .map(|i| SpaceMap::new(space.clone(), factors[i].clone(), (0..total).map(|t| coord(t, i)).collect()))
            .collect();
        Ok((space, projections))
    }

    /// Topological sum on the disjoint union; opens are exactly the unions of
    /// one open from each part. Returns the part injections.
    pub fn sum(parts: &[&FiniteSpace]) -> Result<(FiniteSpace, Vec<SpaceMap>)> {
        if parts.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let total: usize = parts.iter().map(|p| p.n).sum();
        if total > MAX_WIDTH {
            return Err(Error::SizeLimitExceeded {
                what: "sum points",
                value: total,
                limit: MAX_WIDTH,
            });
        }
        let mut offsets = Vec::with_capacity(parts.len());
        let mut off = 0usize;
        for p in parts {
            offsets.push(off);
            off += p.n;
        }
        let mut nbhds = Vec::with_capacity(total);
        for (i, part) in parts.iter().enumerate() {
            for p in 0..part.n {
                nbhds.push(part.min_nbhd[p] << offsets[i]);
            }
        }
        let mut space = FiniteSpace::from_min_nbhds(total, &nbhds);
        if parts.iter().any(|p| p.labels.is_some()) {
            let labels = parts
                .iter()
                .enumerate()
                .flat_map(|(i, part)| (0..part.n).map(move |p| format!("{i}.{}", part.label_of(p))))
                .collect();
            space = space.with_labels(labels);
        }
        let injections = parts
            .iter()
            .enumerate()
            .map(|(i, part)| {
                SpaceMap::new(
                    (*part).clone(),
                    space.clone(),
                    (0..part.n).map(|p| offsets[i] + p).collect(),
                )
            })
            .collect();
        Ok((space, injections))
    }

    /// Subspace topology on a nonempty carrier, points reindexed ascending.
    pub fn subspace(&self, a: &PointSet) -> Result<FiniteSpace> {
        let am = self.checked(a)?;
        if am == 0 {
            return Err(Error::EmptyCarrier);
        }
        let pts: Vec<usize> = a.iter().collect();
        let compress = |m: u64| -> u64 {
            let mut r = 0u64;
            for (new, &old) in pts.iter().enumerate() {
                if m >> old & 1 == 1 {
                    r |= 1u64 << new;
                }
            }
            r
        };
        let mut opens: Vec<u64> = self.opens.iter().map(|&o| compress(o & am)).collect();
        canonical_sort(&mut opens);
        let labels = self
            .labels
            .as_ref()
            .map(|ls| pts.iter().map(|&p| ls[p].clone()).collect());
        Ok(FiniteSpace::from_sorted_opens(pts.len(), opens, labels))
    }

    /// Deterministic one-token rendering: `[a,b,c|{};{a,b};{a,b,c}]`.
    pub fn compact(&self) -> String {
        let labels: Vec<String> = (0..self.n).map(|p| self.label_of(p)).collect();
        let opens = self
            .opens
            .iter()
            .map(|&m| PointSet::from_bits(self.n, m).render(Some(&labels)))
            .collect::<Vec<_>>()
            .join(";");
        format!("[{}|{}]", labels.join(","), opens)
    }
}

/// A total point assignment between two finite spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    assign: Vec<usize>,
}

impl SpaceMap {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, assign: Vec<usize>) -> SpaceMap {
        assert_eq!(assign.len(), domain.n, "assignment length mismatch");
        assert!(
            assign.iter().all(|&t| t < codomain.n),
            "assignment target outside codomain"
        );
        SpaceMap {
            domain,
            codomain,
            assign,
        }
    }

    pub fn identity(sp: &FiniteSpace) -> SpaceMap {
        SpaceMap::new(sp.clone(), sp.clone(), (0..sp.n).collect())
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn apply(&self, p: usize) -> usize {
        self.assign[p]
    }
}

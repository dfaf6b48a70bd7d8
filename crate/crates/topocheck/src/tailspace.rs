//! The tail topology on the positive integers, computed symbolically over
//! eventually-constant subsets, plus the point-extension spaces and their
//! product growth harness.
//!
//! The space carries τ = {∅, ℕ} ∪ {U_n : n ≥ 3} with U_n = {n, n+1, ...}.
//! U_1 = ℕ is open as the whole space; U_2 is not open. Closed sets are ∅,
//! ℕ, and the initial segments {1..m} for m ≥ 2. Eventually-constant
//! subsets (finite part plus optional tail) form a Boolean algebra closed
//! under all the operators used here.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::report::Check;
use crate::setclasses::nowhere_dense_mask;
use crate::space::FiniteSpace;

/// Smallest n for which U_n is a proper open set.
const FIRST_PROPER_OPEN: u64 = 3;

/// An eventually-constant subset of the positive integers: an explicit
/// finite part plus an optional tail {t, t+1, ...}.
///
/// Canonical form: all members ≥ t are absorbed into the tail and t is
/// minimal (t-1 is never in the finite part). ℕ is (∅, t=1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSet {
    finite: BTreeSet<u64>,
    tail: Option<u64>,
}

impl TailSet {
    fn canonical(mut finite: BTreeSet<u64>, tail: Option<u64>) -> TailSet {
        debug_assert!(finite.iter().all(|&x| x >= 1));
        let tail = match tail {
            Some(mut t) => {
                debug_assert!(t >= 1);
                finite.retain(|&x| x < t);
                while t > 1 && finite.contains(&(t - 1)) {
                    t -= 1;
                    finite.remove(&t);
                }
                Some(t)
            }
            None => None,
        };
        TailSet { finite, tail }
    }

    pub fn empty() -> TailSet {
        TailSet {
            finite: BTreeSet::new(),
            tail: None,
        }
    }

    pub fn naturals() -> TailSet {
        TailSet {
            finite: BTreeSet::new(),
            tail: Some(1),
        }
    }

    pub fn finite_set<I: IntoIterator<Item = u64>>(members: I) -> TailSet {
        let finite: BTreeSet<u64> = members.into_iter().collect();
        assert!(finite.iter().all(|&x| x >= 1), "members must be positive");
        Self::canonical(finite, None)
    }

    pub fn with_tail<I: IntoIterator<Item = u64>>(members: I, tail_start: u64) -> TailSet {
        assert!(tail_start >= 1, "tail start must be positive");
        let finite: BTreeSet<u64> = members.into_iter().collect();
        assert!(finite.iter().all(|&x| x >= 1), "members must be positive");
        Self::canonical(finite, Some(tail_start))
    }

    /// The open set U_n = {n, n+1, ...}.
    pub fn upper(n: u64) -> TailSet {
        assert!(n >= 1);
        TailSet {
            finite: BTreeSet::new(),
            tail: Some(n),
        }
    }

    pub fn singleton(x: u64) -> TailSet {
        Self::finite_set([x])
    }

    pub fn contains(&self, x: u64) -> bool {
        self.finite.contains(&x) || self.tail.map_or(false, |t| x >= t)
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.tail.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn has_tail(&self) -> bool {
        self.tail.is_some()
    }

    pub fn tail_start(&self) -> Option<u64> {
        self.tail
    }

    pub fn finite_part(&self) -> impl Iterator<Item = u64> + '_ {
        self.finite.iter().copied()
    }

    /// Member count; `None` when the set has a tail.
    pub fn len(&self) -> Option<usize> {
        if self.tail.is_some() {
            None
        } else {
            Some(self.finite.len())
        }
    }

    /// First coordinate beyond which membership is constant.
    fn bound(&self) -> u64 {
        let f = self.finite.iter().next_back().map_or(0, |&x| x);
        f.max(self.tail.unwrap_or(0)) + 1
    }

    fn rebuild(bound: u64, pred: impl Fn(u64) -> bool, tail: Option<u64>) -> TailSet {
        let cutoff = tail.unwrap_or(bound);
        let finite = (1..cutoff.min(bound)).filter(|&x| pred(x)).collect();
        TailSet::canonical(finite, tail)
    }

    pub fn union(&self, other: &TailSet) -> TailSet {
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (t, None) | (None, t) => t,
        };
        let bound = self.bound().max(other.bound());
        Self::rebuild(bound, |x| self.contains(x) || other.contains(x), tail)
    }

    pub fn inter(&self, other: &TailSet) -> TailSet {
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        let bound = self.bound().max(other.bound());
        Self::rebuild(bound, |x| self.contains(x) && other.contains(x), tail)
    }

    pub fn complement(&self) -> TailSet {
        let tail = match self.tail {
            Some(_) => None,
            None => Some(self.bound()),
        };
        let bound = self.bound();
        Self::rebuild(bound, |x| !self.contains(x), tail)
    }

    pub fn minus(&self, other: &TailSet) -> TailSet {
        self.inter(&other.complement())
    }

    pub fn is_subset(&self, other: &TailSet) -> bool {
        self.minus(other).is_empty()
    }

    /// Restriction to the window {1..width} as a `PointSet` (x ↦ bit x-1).
    pub fn clip(&self, width: usize) -> PointSet {
        let mut s = PointSet::empty(width);
        for x in 1..=width as u64 {
            if self.contains(x) {
                s = s.with((x - 1) as usize);
            }
        }
        s
    }
}

impl fmt::Display for TailSet {
    /// `{1,4} ∪ tail(7)` renders as `1,4;t=7`; finite sets as `1,4;`;
    /// ℕ is `;t=1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.finite.iter().map(|x| x.to_string()).collect();
        write!(f, "{};", parts.join(","))?;
        if let Some(t) = self.tail {
            write!(f, "t={t}")?;
        }
        Ok(())
    }
}

impl FromStr for TailSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<TailSet> {
        let err = |col: usize, msg: String| Error::Parse { line: 1, col, msg };
        let semi = s
            .find(';')
            .ok_or_else(|| err(s.len() + 1, "expected `;` separator".into()))?;
        let (left, right) = (&s[..semi], &s[semi + 1..]);
        let mut finite = BTreeSet::new();
        for part in left.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let x: u64 = part
                .parse()
                .map_err(|_| err(1, format!("bad member `{part}`")))?;
            if x == 0 {
                return Err(err(1, "members must be positive".into()));
            }
            finite.insert(x);
        }
        let tail = match right.trim() {
            "" => None,
            t => {
                let t = t
                    .strip_prefix("t=")
                    .ok_or_else(|| err(semi + 2, "expected `t=<n>` after `;`".into()))?;
                let t: u64 = t
                    .parse()
                    .map_err(|_| err(semi + 2, format!("bad tail start `{t}`")))?;
                if t == 0 {
                    return Err(err(semi + 2, "tail start must be positive".into()));
                }
                Some(t)
            }
        };
        Ok(TailSet::canonical(finite, tail))
    }
}

/// Largest open subset: ℕ itself, U_max(t,3) when the set has tail t, else ∅.
pub fn tail_interior(a: &TailSet) -> TailSet {
    if *a == TailSet::naturals() {
        return TailSet::naturals();
    }
    match a.tail_start() {
        Some(t) => TailSet::upper(t.max(FIRST_PROPER_OPEN)),
        None => TailSet::empty(),
    }
}

/// Smallest closed superset: ∅, ℕ for tailed sets, else {1..max(max A, 2)}.
pub fn tail_closure(a: &TailSet) -> TailSet {
    if a.is_empty() {
        return TailSet::empty();
    }
    if a.has_tail() {
        return TailSet::naturals();
    }
    let m = a.finite_part().max().unwrap().max(2);
    TailSet::finite_set(1..=m)
}

/// Class flags for a tail-space subset. `g_open` is only decided for
/// singletons (the only case with content here: no singleton is closed, so
/// the empty set is the only closed subset to check).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailReport {
    pub semi_open: bool,
    pub nowhere_dense: bool,
    pub hsg_closed: bool,
    pub g_open: Option<bool>,
}

pub fn tail_classify(a: &TailSet) -> TailReport {
    // Nonempty semi-open ⟺ has a tail ⟺ cofinite; nowhere dense ⟺ finite;
    // hsg-closed ⟺ finite since N(X) = ℕ.
    let semi_open = a.is_empty() || a.has_tail();
    let nowhere_dense = a.is_finite();
    let hsg_closed = a.is_finite();
    let g_open = if a.len() == Some(1) { Some(true) } else { None };
    TailReport {
        semi_open,
        nowhere_dense,
        hsg_closed,
        g_open,
    }
}

/// g-openness for a singleton; other sets would need quantification over
/// arbitrary closed subsets and are refused.
pub fn tail_is_g_open(a: &TailSet) -> Result<bool> {
    if a.len() != Some(1) {
        return Err(Error::GOpenUnsupported);
    }
    // No singleton is closed (closed sets are ∅, ℕ and segments of size
    // ≥ 2), so the only closed subset is ∅ ⊆ int.
    Ok(true)
}

/// The deterministic verification family: every canonical tail set with
/// finite part inside {1..10} and tail start in {none, 1..=12}.
fn verification_family() -> Vec<TailSet> {
    let mut out = Vec::new();
    for mask in 0u32..1 << 10 {
        let members: Vec<u64> = (1..=10u64).filter(|x| mask >> (x - 1) & 1 == 1).collect();
        out.push(TailSet::finite_set(members.clone()));
        for t in 1..=12u64 {
            out.push(TailSet::with_tail(members.clone(), t));
        }
    }
    out
}

/// Definitional semi-openness through the symbolic operators.
fn semi_open_definitional(a: &TailSet) -> bool {
    a.is_subset(&tail_closure(&tail_interior(a)))
}

/// The named symbolic checks for the tail space.
pub fn verify_e1() -> Vec<Check> {
    let family = verification_family();
    let mut checks = Vec::new();

    // (a) Every singleton is nowhere dense: definitional over a window, and
    // structurally every finite set has empty interior.
    let singletons_nd = (1..=64u64).all(|x| {
        let s = TailSet::singleton(x);
        tail_interior(&tail_closure(&s)).is_empty()
    }) && family
        .iter()
        .filter(|a| a.is_finite())
        .all(|a| tail_interior(a).is_empty());
    checks.push(Check::from_flag(
        "e1-singletons-nowhere-dense",
        singletons_nd,
        "a singleton with nonempty int(cl)",
    ));

    // (b) Nonempty semi-open ⟺ cofinite, against the definitional route.
    let semiopen_cofinite = family.iter().all(|a| {
        let flag = tail_classify(a).semi_open;
        let def = semi_open_definitional(a);
        let cofinite = a.has_tail();
        flag == def && (a.is_empty() || flag == cofinite)
    });
    checks.push(Check::from_flag(
        "e1-semiopen-iff-cofinite",
        semiopen_cofinite,
        "semi-open flag disagrees with cofiniteness",
    ));

    // (c) hsg-closed ⟺ finite on the representable algebra. Every proper
    // closed set is a finite initial segment, so any infinite set (tailed or
    // not representable) has closure ℕ; the check also pins that closure
    // shape.
    let hsg_finite = family.iter().all(|a| {
        let flag = tail_classify(a).hsg_closed;
        let cl = tail_closure(a);
        let shape_ok = cl.is_empty()
            || cl == TailSet::naturals()
            || (cl.is_finite() && {
                let m = cl.finite_part().max().unwrap();
                m >= 2 && cl == TailSet::finite_set(1..=m)
            });
        shape_ok && flag == a.is_finite()
    });
    checks.push(Check::from_flag(
        "e1-hsg-iff-finite",
        hsg_finite,
        "hsg flag disagrees with finiteness",
    ));

    // (d) go-compactness fails: every singleton is g-open, yet any finite
    // union of singletons is finite and never covers ℕ.
    let mut go_fails = (1..=64u64).all(|x| tail_is_g_open(&TailSet::singleton(x)) == Ok(true));
    for a in family.iter().filter(|a| a.is_finite()) {
        for b in [TailSet::singleton(1), TailSet::singleton(7)] {
            if a.union(&b).has_tail() {
                go_fails = false;
            }
        }
    }
    let sample_union = (1..=32u64)
        .map(TailSet::singleton)
        .fold(TailSet::empty(), |acc, s| acc.union(&s));
    go_fails = go_fails && sample_union != TailSet::naturals() && sample_union.is_finite();
    checks.push(Check::from_flag(
        "e1-go-compact-fails",
        go_fails,
        "a finite union of singletons covered the space",
    ));

    checks
}

/// The finite truncation of the tail space to the window {1..width}:
/// opens are ∅, the full window, and the clipped U_n for n = 3..=width.
pub fn truncation_space(width: usize) -> FiniteSpace {
    assert!((3..=16).contains(&width));
    let mut opens: Vec<PointSet> = vec![];
    for n in FIRST_PROPER_OPEN..=width as u64 {
        opens.push(TailSet::upper(n).clip(width));
    }
    FiniteSpace::validate_topology(width, &opens, crate::space::ValidationMode::Strict)
        .expect("truncation chain is a topology")
}

/// Compares symbolic interior/closure against the definitional results on
/// the window-`width` truncation, over boundary-safe sets (structure at
/// least two short of the window edge).
pub fn verify_truncation(width: usize) -> Check {
    let sp = truncation_space(width);
    let safe = (width - 2) as u64;
    let mut family = Vec::new();
    for mask in 0u32..1 << safe {
        let members: Vec<u64> = (1..=safe).filter(|x| mask >> (x - 1) & 1 == 1).collect();
        family.push(TailSet::finite_set(members.clone()));
        for t in 1..=safe {
            family.push(TailSet::with_tail(members.clone(), t));
        }
    }
    for a in &family {
        let clipped = a.clip(width);
        let sym_int = tail_interior(a).clip(width);
        let sym_cl = tail_closure(a).clip(width);
        let def_int = sp.interior(&clipped).expect("width matches");
        let def_cl = sp.closure(&clipped).expect("width matches");
        if sym_int != def_int || sym_cl != def_cl {
            return Check::fail(
                "e1-truncation-window",
                format!("symbolic and truncated operators disagree on {a}"),
            );
        }
    }
    Check::pass("e1-truncation-window")
}

/// The point-extension space on k+1 points: carrier {a_1..a_k, p} with
/// opens ∅, {a_1..a_k}, X. 1 ≤ k ≤ 5.
pub fn point_extension(k: usize) -> Result<FiniteSpace> {
    if k == 0 || k > 5 {
        return Err(Error::SizeLimitExceeded {
            what: "point-extension size",
            value: k,
            limit: 5,
        });
    }
    let n = k + 1;
    let a = PointSet::from_indices(n, &(0..k).collect::<Vec<_>>());
    let mut labels: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    labels.push("p".into());
    Ok(
        FiniteSpace::validate_topology(n, &[a], crate::space::ValidationMode::Strict)?
            .with_labels(labels),
    )
}

/// For k = 1..5: the square of the point-extension space contains the
/// nowhere-dense subset {p}×A_k of size exactly k. The witness size grows
/// with k, which is the finite shadow of the unbounded case.
pub fn verify_r1_growth() -> Vec<Check> {
    let mut checks = Vec::new();
    for k in 1..=5usize {
        let name = format!("r1-growth-k{k}");
        let pe = point_extension(k).expect("k in range");
        let (square, _) = match FiniteSpace::product(&[&pe, &pe]) {
            Ok(x) => x,
            Err(e) => {
                checks.push(Check::fail(name, format!("square failed: {e}")));
                continue;
            }
        };
        // {p}×A_k in row-major coordinates: p = index k, A_k = 0..k-1.
        let witness =
            PointSet::from_indices(square.n(), &(0..k).map(|j| k * (k + 1) + j).collect::<Vec<_>>());
        let nd = nowhere_dense_mask(&square, witness.bits());
        if nd && witness.len() == k {
            checks.push(Check::pass_with(name, format!("witness size {k}")));
        } else {
            checks.push(Check::fail(
                name,
                format!("witness {witness} nd={nd} size={}", witness.len()),
            ));
        }
    }
    checks
}

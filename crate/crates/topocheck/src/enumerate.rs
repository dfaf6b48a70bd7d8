//! Enumeration of all labeled topologies on n points, the independent naive
//! oracle, and the witness search engine.
//!
//! Finite topologies correspond exactly to preorders: a topology is
//! determined by its minimal-neighbourhood table, and a table `m` is valid
//! iff p ∈ m[p] and q ∈ m[p] ⟹ m[q] ⊆ m[p]. The enumerator runs a DFS over
//! such tables with pairwise pruning; the naive oracle independently filters
//! all candidate open families by closure checking.

use crate::error::{Error, Result};
use crate::pointset::{full_bits, PointSet};
use crate::query::PropertyExpr;
use crate::setclasses::{hsg_mask, nowhere_dense_mask, Tables};
use crate::space::{FiniteSpace, SpaceMap};

/// Preorder DFS handles up to 6 points.
pub const MAX_ENUM: usize = 6;
/// The naive oracle iterates 2^(2^n - 2) families; 4 points is the ceiling.
pub const MAX_NAIVE: usize = 4;
/// Space-level searches cap the carrier at 5 points.
pub const MAX_SEARCH: usize = 5;
/// Quests that build squares or classify maps cap factors at 3 points.
pub const MAX_MAP_SEARCH: usize = 3;

/// DFS over minimal-neighbourhood tables; yields each labeled preorder once,
/// in a fixed order (candidate masks ascending per level).
pub(crate) struct PreorderStream {
    n: usize,
    full: u64,
    chosen: Vec<u64>,
    cursor: Vec<u64>,
    exhausted: bool,
}

impl PreorderStream {
    fn new(n: usize) -> PreorderStream {
        PreorderStream {
            n,
            full: full_bits(n),
            chosen: Vec::with_capacity(n),
            cursor: vec![0; n],
            exhausted: n == 0,
        }
    }

    fn compatible(&self, c: u64, d: usize) -> bool {
        for (q, &mq) in self.chosen.iter().enumerate() {
            // q ∈ m[d] ⟹ m[q] ⊆ m[d]; d ∈ m[q] ⟹ m[d] ⊆ m[q].
            if c >> q & 1 == 1 && mq & !c != 0 {
                return false;
            }
            if mq >> d & 1 == 1 && c & !mq != 0 {
                return false;
            }
        }
        true
    }
}

impl Iterator for PreorderStream {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.exhausted {
            return None;
        }
        loop {
            let d = self.chosen.len();
            if d == self.n {
                let out = self.chosen.clone();
                self.chosen.pop();
                return Some(out);
            }
            let mut found = None;
            let mut c = self.cursor[d].max(1u64 << d);
            while c <= self.full {
                if c >> d & 1 == 1 && self.compatible(c, d) {
                    found = Some(c);
                    c += 1;
                    break;
                }
                c += 1;
            }
            match found {
                Some(m) => {
                    self.cursor[d] = c;
                    self.chosen.push(m);
                    if d + 1 < self.n {
                        self.cursor[d + 1] = 0;
                    }
                }
                None => {
                    if d == 0 {
                        self.exhausted = true;
                        return None;
                    }
                    self.cursor[d] = 0;
                    self.chosen.pop();
                }
            }
        }
    }
}

pub(crate) fn preorders(n: usize) -> Result<PreorderStream> {
    if n == 0 || n > MAX_ENUM {
        return Err(Error::SizeLimitExceeded {
            what: "enumeration points",
            value: n,
            limit: MAX_ENUM,
        });
    }
    Ok(PreorderStream::new(n))
}

/// All labeled topologies on `n` points, each exactly once, in a
/// deterministic order. 1 ≤ n ≤ 6.
pub fn enumerate_spaces(n: usize) -> Result<impl Iterator<Item = FiniteSpace>> {
    Ok(preorders(n)?.map(move |nbhds| FiniteSpace::from_min_nbhds(n, &nbhds)))
}

pub fn topology_count(n: usize) -> Result<usize> {
    Ok(preorders(n)?.count())
}

/// Independence oracle: iterates every candidate family containing the empty
/// and full set, keeping those closed under pairwise union and intersection.
/// 1 ≤ n ≤ 4.
pub fn enumerate_spaces_naive(n: usize) -> Result<impl Iterator<Item = FiniteSpace>> {
    if n == 0 || n > MAX_NAIVE {
        return Err(Error::SizeLimitExceeded {
            what: "naive enumeration points",
            value: n,
            limit: MAX_NAIVE,
        });
    }
    let full = full_bits(n) as u32;
    let nontrivial = (1usize << n) - 2;
    Ok((0u32..1u32 << nontrivial).filter_map(move |sel| {
        // Bit m of `present` says the subset with mask m is in the family.
        let present: u32 = (sel << 1) | 1 | (1u32 << full);
        for a in 0..=full {
            if present >> a & 1 == 0 {
                continue;
            }
            for b in a + 1..=full {
                if present >> b & 1 == 0 {
                    continue;
                }
                if present >> (a | b) & 1 == 0 || present >> (a & b) & 1 == 0 {
                    return None;
                }
            }
        }
        let mut opens: Vec<u64> = (0..=full)
            .filter(|&m| present >> m & 1 == 1)
            .map(u64::from)
            .collect();
        opens.sort_unstable_by_key(|&m| (m.count_ones(), m));
        Some(FiniteSpace::from_sorted_opens(n, opens, None))
    }))
}

pub fn oracle_count(n: usize) -> Result<usize> {
    Ok(enumerate_spaces_naive(n)?.count())
}

/// A found instance; re-evaluating the searched property on it yields true.
#[derive(Clone, Debug)]
pub struct Witness {
    pub space: FiniteSpace,
    /// Subsets of `space`.
    pub subsets: Vec<PointSet>,
    pub map: Option<SpaceMap>,
    pub description: String,
}

impl Witness {
    /// Deterministic one-line rendering for CLI output.
    pub fn render(&self) -> String {
        let mut out = format!("WITNESS space={}", self.space.compact());
        let labels: Vec<String> = (0..self.space.n())
            .map(|p| self.space.label_of(p))
            .collect();
        for s in &self.subsets {
            out.push_str(&format!(" set={}", s.render(Some(&labels))));
        }
        if let Some(m) = &self.map {
            let assign = m
                .assign()
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(" map=[{assign}]->{}", m.codomain().compact()));
        }
        out.push_str(&format!(" -- {}", self.description));
        out
    }
}

/// Named searches anchored to specific counterexample shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quest {
    /// Subsets that are sg-closed while their square is not sg-closed in the
    /// product square.
    ProductSgClosedFailure,
    /// hsg-closed subsets that are not nowhere dense.
    HsgNotNowhereDense,
    /// Product projections with an sg-closed set whose preimage is not
    /// sg-closed.
    ProjectionNotSgIrresolute,
    /// Product projections with an hsg-closed set whose preimage is not
    /// hsg-closed.
    ProjectionHsgPreimageFailure,
}

impl Quest {
    pub const ALL: [Quest; 4] = [
        Quest::ProductSgClosedFailure,
        Quest::HsgNotNowhereDense,
        Quest::ProjectionNotSgIrresolute,
        Quest::ProjectionHsgPreimageFailure,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Quest::ProductSgClosedFailure => "product-sg-closed-failure",
            Quest::HsgNotNowhereDense => "hsg-not-nowhere-dense",
            Quest::ProjectionNotSgIrresolute => "projection-not-sg-irresolute",
            Quest::ProjectionHsgPreimageFailure => "projection-hsg-preimage-failure",
        }
    }

    pub fn parse(name: &str) -> Option<Quest> {
        Quest::ALL.iter().copied().find(|q| q.name() == name)
    }

    fn max_points(&self) -> usize {
        match self {
            Quest::HsgNotNowhereDense => MAX_SEARCH,
            _ => MAX_MAP_SEARCH,
        }
    }
}

fn push_limited(out: &mut Vec<Witness>, w: Witness, limit: Option<usize>) -> bool {
    out.push(w);
    match limit {
        Some(k) => out.len() < k,
        None => true,
    }
}

/// All spaces on 1..=n_max points satisfying the expression, in enumeration
/// order (or the first `limit`).
pub fn search_expr(
    n_max: usize,
    expr: &PropertyExpr,
    limit: Option<usize>,
) -> Result<Vec<Witness>> {
    if n_max == 0 || n_max > MAX_SEARCH {
        return Err(Error::SizeLimitExceeded {
            what: "search points",
            value: n_max,
            limit: MAX_SEARCH,
        });
    }
    let mut out = Vec::new();
    'outer: for n in 1..=n_max {
        for sp in enumerate_spaces(n)? {
            if expr.eval(&sp)? {
                let w = Witness {
                    space: sp,
                    subsets: vec![],
                    map: None,
                    description: expr.to_string(),
                };
                if !push_limited(&mut out, w, limit) {
                    break 'outer;
                }
            }
        }
    }
    Ok(out)
}

pub fn search_quest(n_max: usize, quest: Quest, limit: Option<usize>) -> Result<Vec<Witness>> {
    if n_max == 0 || n_max > quest.max_points() {
        return Err(Error::SizeLimitExceeded {
            what: "search points",
            value: n_max,
            limit: quest.max_points(),
        });
    }
    match quest {
        Quest::HsgNotNowhereDense => hsg_not_nowhere_dense(n_max, limit),
        Quest::ProductSgClosedFailure => product_sg_closed_failure(n_max, limit),
        Quest::ProjectionNotSgIrresolute => projection_failure(n_max, limit, false),
        Quest::ProjectionHsgPreimageFailure => projection_failure(n_max, limit, true),
    }
}

fn hsg_not_nowhere_dense(n_max: usize, limit: Option<usize>) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    'outer: for n in 1..=n_max {
        for sp in enumerate_spaces(n)? {
            for a in 1..=sp.full() {
                if hsg_mask(&sp, a) && !nowhere_dense_mask(&sp, a) {
                    let w = Witness {
                        subsets: vec![PointSet::from_bits(n, a)],
                        map: None,
                        description: "hsg-closed but not nowhere dense".into(),
                        space: sp.clone(),
                    };
                    if !push_limited(&mut out, w, limit) {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Mask of A×B inside the row-major product of an (nx, ny) pair.
pub(crate) fn box_mask(a: u64, b: u64, ny: usize) -> u64 {
    let mut r = 0u64;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        r |= b << (x * ny);
    }
    r
}

fn product_sg_closed_failure(n_max: usize, limit: Option<usize>) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    'outer: for n in 1..=n_max {
        for sp in enumerate_spaces(n)? {
            let (square, _) = FiniteSpace::product(&[&sp, &sp])?;
            let tsp = Tables::new(&sp)?;
            let tsq = Tables::new(&square)?;
            for a in 1..=sp.full() {
                if tsp.sg_closed_mask(a) && !tsq.sg_closed_mask(box_mask(a, a, n)) {
                    let w = Witness {
                        subsets: vec![PointSet::from_bits(n, a)],
                        map: None,
                        description: "sg-closed but its square is not sg-closed in the product"
                            .into(),
                        space: sp.clone(),
                    };
                    if !push_limited(&mut out, w, limit) {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn projection_failure(n_max: usize, limit: Option<usize>, hsg: bool) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    let mut spaces = Vec::new();
    for n in 1..=n_max {
        for sp in enumerate_spaces(n)? {
            spaces.push(sp);
        }
    }
    'outer: for x in &spaces {
        for y in &spaces {
            let (prod, projections) = FiniteSpace::product(&[x, y])?;
            let tprod = if hsg { None } else { Some(Tables::new(&prod)?) };
            for (idx, proj) in projections.iter().enumerate() {
                let cod = proj.codomain();
                let tcod = if hsg { None } else { Some(Tables::new(cod)?) };
                for b in 0..=cod.full() {
                    let bad = if hsg {
                        hsg_mask(cod, b) && !hsg_mask(&prod, proj.preimage_mask(b))
                    } else {
                        let (tp, tc) = (tprod.as_ref().unwrap(), tcod.as_ref().unwrap());
                        tc.sg_closed_mask(b) && !tp.sg_closed_mask(proj.preimage_mask(b))
                    };
                    if bad {
                        let class = if hsg { "hsg-closed" } else { "sg-closed" };
                        let w = Witness {
                            space: prod.clone(),
                            subsets: vec![PointSet::from_bits(
                                prod.n(),
                                proj.preimage_mask(b),
                            )],
                            map: Some(proj.clone()),
                            description: format!(
                                "projection {idx} pulls the {class} set {} back to a set that is not {class}",
                                PointSet::from_bits(cod.n(), b)
                            ),
                        };
                        if !push_limited(&mut out, w, limit) {
                            break 'outer;
                        }
                        break; // one witness per projection
                    }
                }
            }
        }
    }
    Ok(out)
}

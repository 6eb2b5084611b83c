//! Finite quasi-discrete closure spaces induced by a binary relation.
//!
//! The closure of a set is the set together with every successor of its
//! members. Interior and the three boundaries are derived from closure and
//! complement; [`crate::oracle`] holds the pointwise forms used to check them.

use crate::error::{Error, Result};
use crate::pointset::{PointId, PointSet};

/// Work counters accumulated by the set operators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Work {
    /// Points taken from a frontier or expanded by closure.
    pub nodes_visited: u64,
    /// Adjacency entries scanned.
    pub edges_traversed: u64,
}

impl Work {
    pub fn add(&mut self, other: Work) {
        self.nodes_visited += other.nodes_visited;
        self.edges_traversed += other.edges_traversed;
    }
}

/// Compressed adjacency: `targets[offsets[x]..offsets[x + 1]]`.
#[derive(Clone, Debug)]
struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Adjacency {
    /// Buckets `(from, to)` pairs by `from`, keeping input order inside a bucket.
    fn build(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0u32; n + 1];
        for &(from, _) in edges {
            offsets[from as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; edges.len()];
        for &(from, to) in edges {
            let c = &mut cursor[from as usize];
            targets[*c as usize] = to;
            *c += 1;
        }
        Adjacency { offsets, targets }
    }

    #[inline]
    fn of(&self, x: usize) -> &[u32] {
        &self.targets[self.offsets[x] as usize..self.offsets[x + 1] as usize]
    }
}

/// A finite relation `R` on points `0..n`, stored with both forward
/// (`succ`) and backward (`pred`) adjacency. Immutable once built.
#[derive(Clone, Debug)]
pub struct SpaceGraph {
    n: usize,
    succ: Adjacency,
    pred: Adjacency,
}

impl SpaceGraph {
    /// Builds the space from directed edges. Duplicate pairs are dropped;
    /// the first occurrence fixes the position in both adjacency lists.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::PointOutOfRange {
                index: n,
                universe: u32::MAX as usize,
            });
        }
        let mut raw = Vec::new();
        for (from, to) in edges {
            for i in [from, to] {
                if i >= n {
                    return Err(Error::PointOutOfRange { index: i, universe: n });
                }
            }
            raw.push((from as u32, to as u32));
        }
        Ok(Self::from_checked_edges(n, raw))
    }

    /// Like [`SpaceGraph::from_edges`] but also inserts the mirror of every edge.
    pub fn from_symmetric_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().flat_map(|(a, b)| [(a, b), (b, a)]))
    }

    pub(crate) fn from_checked_edges(n: usize, raw: Vec<(u32, u32)>) -> Self {
        let bucketed = Adjacency::build(n, &raw);
        // dedup within each source bucket, remembering which pairs survived
        let mut stamp = vec![u32::MAX; n];
        let mut keep = Vec::with_capacity(raw.len());
        for x in 0..n {
            for &y in bucketed.of(x) {
                if stamp[y as usize] != x as u32 {
                    stamp[y as usize] = x as u32;
                    keep.push((x as u32, y));
                }
            }
        }
        let edges = if keep.len() == raw.len() {
            raw
        } else {
            // re-filter the original list so pred keeps input order as well
            let mut seen = std::collections::HashSet::with_capacity(keep.len());
            raw.into_iter().filter(|e| seen.insert(*e)).collect()
        };
        let succ = Adjacency::build(n, &edges);
        let reversed: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (b, a)).collect();
        let pred = Adjacency::build(n, &reversed);
        SpaceGraph { n, succ, pred }
    }

    /// Number of points.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of distinct pairs in the relation.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.succ.targets.len()
    }

    /// `{ y | (x, y) ∈ R }`
    #[inline]
    pub fn succ(&self, x: PointId) -> impl ExactSizeIterator<Item = PointId> + '_ {
        self.succ.of(x.index()).iter().map(|&y| PointId(y))
    }

    /// `{ y | (y, x) ∈ R }`
    #[inline]
    pub fn pred(&self, x: PointId) -> impl ExactSizeIterator<Item = PointId> + '_ {
        self.pred.of(x.index()).iter().map(|&y| PointId(y))
    }

    pub(crate) fn pred_slice(&self, x: usize) -> &[u32] {
        self.pred.of(x)
    }

    /// All pairs of the relation, grouped by source.
    pub fn edges(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        (0..self.n).flat_map(move |x| self.succ.of(x).iter().map(move |&y| (PointId::from(x), PointId(y))))
    }

    pub fn contains_edge(&self, from: PointId, to: PointId) -> bool {
        self.succ.of(from.index()).contains(&to.0)
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.n)
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// `C(A) = A ∪ { x | ∃a ∈ A. (a, x) ∈ R }`
    pub fn closure(&self, a: &PointSet) -> Result<PointSet> {
        a.check_universe(self.n)?;
        Ok(self.closure_counted(a, &mut Work::default()))
    }

    pub(crate) fn closure_counted(&self, a: &PointSet, work: &mut Work) -> PointSet {
        let mut out = a.clone();
        for x in a {
            let succ = self.succ.of(x.index());
            work.nodes_visited += 1;
            work.edges_traversed += succ.len() as u64;
            for &y in succ {
                out.insert(PointId(y));
            }
        }
        out
    }

    /// `I(A)`, the complement of the closure of the complement.
    pub fn interior(&self, a: &PointSet) -> Result<PointSet> {
        a.check_universe(self.n)?;
        Ok(self.closure_counted(&a.complement(), &mut Work::default()).complement())
    }

    /// `B(A) = C(A) \ I(A)`
    pub fn boundary(&self, a: &PointSet) -> Result<PointSet> {
        Ok(self.closure(a)?.difference(&self.interior(a)?))
    }

    /// Interior boundary `A \ I(A)`.
    pub fn boundary_minus(&self, a: &PointSet) -> Result<PointSet> {
        Ok(a.difference(&self.interior(a)?))
    }

    /// Closure boundary (frontier) `C(A) \ A`.
    pub fn boundary_plus(&self, a: &PointSet) -> Result<PointSet> {
        Ok(self.closure(a)?.difference(a))
    }

    pub fn is_closed(&self, a: &PointSet) -> Result<bool> {
        Ok(self.closure(a)? == *a)
    }

    pub fn is_open(&self, a: &PointSet) -> Result<bool> {
        Ok(self.interior(a)? == *a)
    }

    /// `N_x = {x} ∪ pred(x)`: the smallest set having `x` in its interior.
    pub fn minimal_neighbourhood(&self, x: PointId) -> Result<PointSet> {
        if x.index() >= self.n {
            return Err(Error::PointOutOfRange {
                index: x.index(),
                universe: self.n,
            });
        }
        let mut s = PointSet::empty(self.n);
        s.insert(x);
        for y in self.pred(x) {
            s.insert(y);
        }
        Ok(s)
    }

    /// Whether closure is idempotent, decided as transitivity of the
    /// reflexive closure of `R`.
    pub fn is_idempotent(&self) -> bool {
        let mut row = PointSet::empty(self.n);
        for x in 0..self.n {
            let px = PointId::from(x);
            row.insert(px);
            for &y in self.succ.of(x) {
                row.insert(PointId(y));
            }
            let transitive = self
                .succ
                .of(x)
                .iter()
                .filter(|&&y| y as usize != x)
                .all(|&y| self.succ.of(y as usize).iter().all(|&z| row.contains(PointId(z))));
            if !transitive {
                return false;
            }
            row.remove(px);
            for &y in self.succ.of(x) {
                row.remove(PointId(y));
            }
        }
        true
    }
}

/// Edge-set equality; adjacency order is not significant.
impl PartialEq for SpaceGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return false;
        }
        (0..self.n).all(|x| {
            let mut a = self.succ.of(x).to_vec();
            let mut b = other.succ.of(x).to_vec();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        })
    }
}

impl Eq for SpaceGraph {}

//! Dense bit sets over a fixed universe of points.

use std::fmt;

use crate::error::{Error, Result};

type Word = u64;
const WORD_BITS: usize = Word::BITS as usize;

/// Index of a point in a space. Points are dense in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub u32);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for PointId {
    #[inline]
    fn from(i: usize) -> Self {
        PointId(i as u32)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
fn num_words(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline]
fn word_index_and_mask(i: usize) -> (usize, Word) {
    (i / WORD_BITS, 1 << (i % WORD_BITS))
}

/// A subset of a universe `{0, .., n-1}`.
///
/// Set algebra runs word-at-a-time; iteration skips empty words. Bits past
/// `n` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    universe: usize,
    words: Vec<Word>,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            universe,
            words: vec![0; num_words(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = PointSet {
            universe,
            words: vec![!0; num_words(universe)],
        };
        s.clear_excess_bits();
        s
    }

    /// Builds a set from indices, rejecting any index outside the universe.
    pub fn from_indices<I>(universe: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = PointSet::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(Error::PointOutOfRange { index: i, universe });
            }
            s.insert(PointId::from(i));
        }
        Ok(s)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, p: PointId) -> bool {
        let i = p.index();
        debug_assert!(i < self.universe);
        let (w, m) = word_index_and_mask(i);
        self.words[w] & m != 0
    }

    /// Returns `true` if `p` was not already present.
    #[inline]
    pub fn insert(&mut self, p: PointId) -> bool {
        let i = p.index();
        assert!(i < self.universe, "point {i} outside universe of {}", self.universe);
        let (w, m) = word_index_and_mask(i);
        let old = self.words[w];
        self.words[w] = old | m;
        old & m == 0
    }

    /// Returns `true` if `p` was present.
    #[inline]
    pub fn remove(&mut self, p: PointId) -> bool {
        let i = p.index();
        assert!(i < self.universe, "point {i} outside universe of {}", self.universe);
        let (w, m) = word_index_and_mask(i);
        let old = self.words[w];
        self.words[w] = old & !m;
        old & m != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.assert_same_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.assert_same_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn subtract(&mut self, other: &PointSet) {
        self.assert_same_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn complement_in_place(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        self.clear_excess_bits();
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut r = self.clone();
        r.subtract(other);
        r
    }

    pub fn complement(&self) -> PointSet {
        let mut r = self.clone();
        r.complement_in_place();
        r
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.assert_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.assert_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Sorted member indices.
    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().map(PointId::index).collect()
    }

    pub(crate) fn check_universe(&self, universe: usize) -> Result<()> {
        if self.universe == universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: universe,
                found: self.universe,
            })
        }
    }

    fn assert_same_universe(&self, other: &PointSet) {
        assert_eq!(
            self.universe, other.universe,
            "set operation on point sets over different universes"
        );
    }

    fn clear_excess_bits(&mut self) {
        let rem = self.universe % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet[{}]", self.universe)?;
        f.debug_set().entries(self.iter().map(|p| p.0)).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [Word],
    word_idx: usize,
    current: Word,
}

impl Iterator for Iter<'_> {
    type Item = PointId;

    #[inline]
    fn next(&mut self) -> Option<PointId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(PointId::from(self.word_idx * WORD_BITS + bit));
            }
            self.word_idx += 1;
            self.current = *self.words.get(self.word_idx)?;
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = PointId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

//! Fixed-width bitsets over group element indices.
//!
//! Groups are capped at order [`MAX_ORDER`], so a set of element indices fits
//! in four machine words and stays `Copy`. Membership tests dominate the
//! search inner loops, which is why subsets are kept in this form alongside
//! their sorted index lists.

/// Largest supported group order; element indices fit in one byte.
pub const MAX_ORDER: usize = 255;

/// A set of element indices in `0..MAX_ORDER`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet {
    words: [u64; 4],
}

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet { words: [0; 4] };

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = Self::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < MAX_ORDER);
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] & (1u64 << (i & 63)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words == [0; 4]
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(&other.words) {
            *a |= b;
        }
        ElemSet { words: w }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(&other.words) {
            *a &= b;
        }
        ElemSet { words: w }
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut w = self.words;
        for (a, b) in w.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        ElemSet { words: w }
    }

    #[inline]
    pub fn intersects(&self, other: &ElemSet) -> bool {
        (0..4).any(|k| self.words[k] & other.words[k] != 0)
    }

    /// True when the intersection contains no index other than 0.
    #[inline]
    pub fn meets_only_identity(&self, other: &ElemSet) -> bool {
        let first = (self.words[0] & other.words[0]) & !1;
        first == 0 && (1..4).all(|k| self.words[k] & other.words[k] == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((k << 6) | bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

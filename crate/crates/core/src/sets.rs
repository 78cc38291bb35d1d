//! Sets of group elements as bitsets over element indices. Small groups
//! (order <= 128) stay inline in two words, which keeps the search loops
//! allocation-free.

use smallvec::SmallVec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: u32,
    words: SmallVec<[u64; 2]>,
    len: u32,
}

impl ElementSet {
    pub fn empty(universe: u32) -> ElementSet {
        let n_words = (universe as usize).div_ceil(64).max(1);
        ElementSet { universe, words: SmallVec::from_elem(0, n_words), len: 0 }
    }

    pub fn from_indices(universe: u32, indices: &[u32]) -> ElementSet {
        let mut s = ElementSet::empty(universe);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    pub fn full(universe: u32) -> ElementSet {
        let mut s = ElementSet::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn singleton(universe: u32, index: u32) -> ElementSet {
        let mut s = ElementSet::empty(universe);
        s.insert(index);
        s
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, index: u32) -> bool {
        debug_assert!(index < self.universe);
        let w = (index / 64) as usize;
        let bit = 1u64 << (index % 64);
        let fresh = self.words[w] & bit == 0;
        if fresh {
            self.words[w] |= bit;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, index: u32) -> bool {
        let w = (index / 64) as usize;
        let bit = 1u64 << (index % 64);
        let present = self.words[w] & bit != 0;
        if present {
            self.words[w] &= !bit;
            self.len -= 1;
        }
        present
    }

    #[inline]
    pub fn contains(&self, index: u32) -> bool {
        let w = (index / 64) as usize;
        self.words[w] & (1u64 << (index % 64)) != 0
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sorted element indices.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi as u32 * 64;
            BitIter { word: w, base }
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    #[inline]
    pub fn intersection_len(&self, other: &ElementSet) -> u32 {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let words: SmallVec<[u64; 2]> =
            self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let len = words.iter().map(|w| w.count_ones()).sum();
        ElementSet { universe: self.universe, words, len }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let words: SmallVec<[u64; 2]> =
            self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        let len = words.iter().map(|w| w.count_ones()).sum();
        ElementSet { universe: self.universe, words, len }
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Lexicographic comparison of the sorted element lists; used to give
    /// subgroup lists and witnesses a deterministic order.
    pub fn cmp_elements(&self, other: &ElementSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

struct BitIter {
    word: u64,
    base: u32,
}

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros();
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iterate_and_count() {
        let mut s = ElementSet::empty(130);
        for i in [0u32, 5, 63, 64, 129] {
            assert!(s.insert(i));
            assert!(!s.insert(i));
        }
        assert_eq!(s.len(), 5);
        assert_eq!(s.to_vec(), vec![0, 5, 63, 64, 129]);
        assert!(s.remove(63));
        assert!(!s.remove(63));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn set_algebra() {
        let a = ElementSet::from_indices(10, &[0, 1, 2, 7]);
        let b = ElementSet::from_indices(10, &[1, 2, 3]);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.intersection(&b).to_vec(), vec![1, 2]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3, 7]);
        assert!(ElementSet::from_indices(10, &[1, 2]).is_subset_of(&a));
        assert!(!b.is_subset_of(&a));
        assert!(a.is_disjoint(&ElementSet::from_indices(10, &[4, 5])));
    }

    #[test]
    fn element_order_is_lexicographic_on_sorted_lists() {
        let a = ElementSet::from_indices(8, &[0, 1, 3]);
        let b = ElementSet::from_indices(8, &[0, 2, 5]);
        assert_eq!(a.cmp_elements(&b), std::cmp::Ordering::Less);
        assert_eq!(b.cmp_elements(&a), std::cmp::Ordering::Greater);
        assert_eq!(a.cmp_elements(&a.clone()), std::cmp::Ordering::Equal);
    }
}

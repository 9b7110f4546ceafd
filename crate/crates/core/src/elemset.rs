//! Dense bitset over the element indices of one fixed group table.

use crate::group::GroupTable;

/// A subset of group elements with O(1) membership and word-parallel unions.
///
/// The set is tied to a group of a fixed order; mixing sets of different
/// orders is a caller bug and panics in debug builds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    n: usize,
    bits: Vec<u64>,
}

impl ElemSet {
    pub fn new(n: usize) -> Self {
        ElemSet {
            n,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn universe(n: usize) -> Self {
        let mut s = ElemSet::new(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        let mut s = ElemSet::new(n);
        s.insert(x);
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, iter: I) -> Self {
        let mut s = ElemSet::new(n);
        for x in iter {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn domain_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        debug_assert!(x < self.n);
        self.bits[x >> 6] |= 1u64 << (x & 63);
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        debug_assert!(x < self.n);
        self.bits[x >> 6] >> (x & 63) & 1 == 1
    }

    pub fn card(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// { g*a : a in self }
    pub fn translate_left(&self, t: &GroupTable, g: usize) -> ElemSet {
        let mut out = ElemSet::new(self.n);
        for a in self.iter() {
            out.insert(t.mul(g, a));
        }
        out
    }

    /// { a*g : a in self }
    pub fn translate_right(&self, t: &GroupTable, g: usize) -> ElemSet {
        let mut out = ElemSet::new(self.n);
        for a in self.iter() {
            out.insert(t.mul(a, g));
        }
        out
    }

    /// self |= { g*a : a in other }, avoiding an intermediate set.
    pub fn union_translated_left(&mut self, t: &GroupTable, g: usize, other: &ElemSet) {
        debug_assert_eq!(self.n, other.n);
        for a in other.iter() {
            self.insert(t.mul(g, a));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((wi << 6) | b)
                }
            })
        })
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_card() {
        let mut s = ElemSet::new(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.card(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
    }

    #[test]
    fn union_and_subset() {
        let a = ElemSet::from_iter(10, [1, 3, 5]);
        let mut b = ElemSet::from_iter(10, [3, 7]);
        assert!(!a.is_subset_of(&b));
        b.union_with(&a);
        assert!(a.is_subset_of(&b));
        assert_eq!(b.card(), 4);
    }
}

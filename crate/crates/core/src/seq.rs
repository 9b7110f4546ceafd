//! Unordered and ordered sequences over a group.
//!
//! An unordered sequence is a multiset, stored as an exponent vector over the
//! element indices of one fixed table. An ordered sequence is a plain list;
//! its subsequences are selections at strictly increasing positions.

use crate::group::GroupTable;

/// Multiset of group elements: `mults[g]` is the multiplicity of element `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqMulti {
    mults: Vec<u32>,
    len: usize,
}

impl SeqMulti {
    pub fn empty(n: usize) -> Self {
        SeqMulti {
            mults: vec![0; n],
            len: 0,
        }
    }

    pub fn from_elems(n: usize, elems: &[usize]) -> Self {
        let mut s = SeqMulti::empty(n);
        for &e in elems {
            s.push(e);
        }
        s
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, u32)]) -> Self {
        let mut s = SeqMulti::empty(n);
        for &(e, m) in pairs {
            s.push_many(e, m);
        }
        s
    }

    pub fn push(&mut self, elem: usize) {
        self.push_many(elem, 1);
    }

    pub fn push_many(&mut self, elem: usize, count: u32) {
        self.mults[elem] += count;
        self.len += count as usize;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn multiplicity(&self, elem: usize) -> u32 {
        self.mults[elem]
    }

    pub fn domain_size(&self) -> usize {
        self.mults.len()
    }

    /// Distinct elements present, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(e, _)| e)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(e, &m)| (e, m))
    }

    /// T | S in the multiset sense.
    pub fn is_subsequence_of(&self, other: &SeqMulti) -> bool {
        self.mults
            .iter()
            .zip(&other.mults)
            .all(|(a, b)| a <= b)
    }

    pub fn display_with(&self, t: &GroupTable) -> String {
        let parts: Vec<String> = self
            .pairs()
            .map(|(e, m)| {
                if m == 1 {
                    t.label(e).to_string()
                } else {
                    format!("{}^[{}]", t.label(e), m)
                }
            })
            .collect();
        if parts.is_empty() {
            "(empty)".into()
        } else {
            parts.join("·")
        }
    }
}

/// Ordered sequence of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqOrdered {
    elems: Vec<usize>,
}

impl SeqOrdered {
    pub fn new(elems: Vec<usize>) -> Self {
        SeqOrdered { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn push(&mut self, e: usize) {
        self.elems.push(e);
    }

    /// Forget the ordering.
    pub fn to_multiset(&self, n: usize) -> SeqMulti {
        SeqMulti::from_elems(n, &self.elems)
    }

    pub fn display_with(&self, t: &GroupTable) -> String {
        if self.elems.is_empty() {
            return "(empty)".into();
        }
        self.elems
            .iter()
            .map(|&e| t.label(e).to_string())
            .collect::<Vec<_>>()
            .join("·")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_basics() {
        let mut s = SeqMulti::empty(5);
        s.push_many(2, 3);
        s.push(4);
        assert_eq!(s.len(), 4);
        assert_eq!(s.multiplicity(2), 3);
        assert_eq!(s.support().collect::<Vec<_>>(), vec![2, 4]);
        let t = SeqMulti::from_pairs(5, &[(2, 1)]);
        assert!(t.is_subsequence_of(&s));
        assert!(!s.is_subsequence_of(&t));
    }
}

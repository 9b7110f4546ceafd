//! Subgroups as dense member sets, with closure, commutator and power
//! subgroup constructions.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::GroupTable;

/// A subgroup of a parent table: the member set plus the generators it was
/// produced from. Closure under multiplication and inversion is checked on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: ElemSet,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(t: &GroupTable) -> Self {
        Subgroup {
            members: ElemSet::singleton(t.order(), t.id()),
            gens: Vec::new(),
        }
    }

    pub fn whole(t: &GroupTable) -> Self {
        Subgroup {
            members: ElemSet::universe(t.order()),
            gens: (0..t.order()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.card()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    fn checked(t: &GroupTable, members: ElemSet, gens: Vec<usize>) -> Self {
        assert!(
            verify_closed(t, &members),
            "set is not closed under multiplication and inversion"
        );
        Subgroup { members, gens }
    }
}

fn verify_closed(t: &GroupTable, members: &ElemSet) -> bool {
    if !members.contains(t.id()) {
        return false;
    }
    members.iter().all(|x| {
        members.contains(t.inv(x)) && members.iter().all(|y| members.contains(t.mul(x, y)))
    })
}

/// Smallest subgroup containing the given elements.
pub fn closure(t: &GroupTable, gens: &[usize]) -> Result<Subgroup> {
    for &g in gens {
        if g >= t.order() {
            return Err(Error::IndexOutOfBounds {
                index: g,
                order: t.order(),
            });
        }
    }
    let mut members = ElemSet::singleton(t.order(), t.id());
    let mut frontier: Vec<usize> = vec![t.id()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = t.mul(x, g);
            if !members.contains(y) {
                members.insert(y);
                frontier.push(y);
            }
        }
    }
    Ok(Subgroup::checked(t, members, gens.to_vec()))
}

/// Subgroup generated by all commutators [h,k], h in H, k in K.
pub fn commutator_subgroup(t: &GroupTable, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut comms = ElemSet::new(t.order());
    for x in h.members().iter() {
        for y in k.members().iter() {
            comms.insert(t.commutator(x, y));
        }
    }
    let gens: Vec<usize> = comms.iter().collect();
    closure(t, &gens).expect("commutators are in range")
}

/// Subgroup generated by { x^n : x in H }.
pub fn power_subgroup(t: &GroupTable, h: &Subgroup, n: u64) -> Subgroup {
    let mut powers = ElemSet::new(t.order());
    for x in h.members().iter() {
        powers.insert(t.pow(x, n));
    }
    let gens: Vec<usize> = powers.iter().collect();
    closure(t, &gens).expect("powers are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PcPresentation;

    fn cyclic(n: u64) -> GroupTable {
        PcPresentation::new(vec!["g"], vec![n]).build(4096).unwrap()
    }

    fn sym3() -> GroupTable {
        PcPresentation::new(vec!["h", "g"], vec![2, 3])
            .with_conj(0, 1, vec![(1, 2)])
            .build(4096)
            .unwrap()
    }

    #[test]
    fn closure_of_nothing_is_trivial() {
        let t = cyclic(6);
        let s = closure(&t, &[]).unwrap();
        assert_eq!(s.order(), 1);
        assert!(s.contains(t.id()));
    }

    #[test]
    fn closure_in_cyclic_six() {
        let t = cyclic(6);
        let g2 = t.pow(t.generator(0), 2);
        let s = closure(&t, &[g2]).unwrap();
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn two_involutions_generate_sym3() {
        let t = sym3();
        let invols: Vec<usize> = (0..6).filter(|&x| t.element_order(x) == 2).collect();
        assert_eq!(invols.len(), 3);
        let s = closure(&t, &invols[..2]).unwrap();
        assert_eq!(s.order(), 6);
    }

    #[test]
    fn commutators_abelian_trivial() {
        let t = cyclic(6);
        let w = Subgroup::whole(&t);
        assert!(commutator_subgroup(&t, &w, &w).is_trivial());
    }

    #[test]
    fn derived_subgroup_of_sym3() {
        let t = sym3();
        let w = Subgroup::whole(&t);
        let d = commutator_subgroup(&t, &w, &w);
        assert_eq!(d.order(), 3);
    }

    #[test]
    fn power_subgroup_basics() {
        let t = cyclic(8);
        let w = Subgroup::whole(&t);
        assert_eq!(power_subgroup(&t, &w, 1).order(), 8);
        assert_eq!(power_subgroup(&t, &w, 2).order(), 4);
        // n | m implies G^m <= G^n
        let g2 = power_subgroup(&t, &w, 2);
        let g4 = power_subgroup(&t, &w, 4);
        assert!(g4.members().is_subset_of(g2.members()));
    }

    #[test]
    fn out_of_bounds_generator() {
        let t = cyclic(4);
        assert!(closure(&t, &[7]).is_err());
    }
}

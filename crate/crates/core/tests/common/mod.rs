//! Brute-force oracles, independent of the engine's DP/scan code paths:
//! products are multiplied out permutation by permutation and subset by
//! subset.

use zerosum_core::{ElemSet, GroupTable};

/// Product of a concrete list of elements, left to right.
pub fn product(t: &GroupTable, elems: &[usize]) -> usize {
    elems.iter().fold(t.id(), |acc, &g| t.mul(acc, g))
}

/// pi(S) by explicit enumeration of every permutation of the list.
pub fn pi_oracle(t: &GroupTable, elems: &[usize]) -> ElemSet {
    let mut out = ElemSet::new(t.order());
    let mut work = elems.to_vec();
    permute(&mut work, 0, &mut |perm| {
        out.insert(product(t, perm));
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// big_pi(S): union of pi over every non-empty subset of positions (subsets
/// of positions cover all sub-multisets, with repetition collapsing on the
/// product set).
pub fn big_pi_oracle(t: &GroupTable, elems: &[usize]) -> ElemSet {
    let mut out = ElemSet::new(t.order());
    for mask in 1u32..(1 << elems.len()) {
        let sub: Vec<usize> = pick(elems, mask);
        out.union_with(&pi_oracle(t, &sub));
    }
    out
}

/// pi_r(S): same, restricted to subsets of one exact size.
pub fn pi_r_oracle(t: &GroupTable, elems: &[usize], r: usize) -> ElemSet {
    let mut out = ElemSet::new(t.order());
    for mask in 1u32..(1 << elems.len()) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let sub: Vec<usize> = pick(elems, mask);
        out.union_with(&pi_oracle(t, &sub));
    }
    out
}

/// Ordered reach: products of all position subsets taken in order.
pub fn ordered_reach_oracle(t: &GroupTable, elems: &[usize]) -> ElemSet {
    let mut out = ElemSet::new(t.order());
    for mask in 1u32..(1 << elems.len()) {
        let sub: Vec<usize> = pick(elems, mask);
        out.insert(product(t, &sub));
    }
    out
}

fn pick(elems: &[usize], mask: u32) -> Vec<usize> {
    elems
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &g)| g)
        .collect()
}

/// Existence oracle for the disjoint equal-product pair: scan all 3-way
/// splits of the positions (U / V / unused) for one with equal products and
/// leftover within the bound. Abelian groups only (product order-free).
pub fn disjoint_pair_exists_oracle(t: &GroupTable, elems: &[usize], k: u32) -> bool {
    let n = elems.len();
    let mut split = vec![0u8; n];
    fn rec(
        t: &GroupTable,
        elems: &[usize],
        split: &mut Vec<u8>,
        i: usize,
        pu: usize,
        pv: usize,
        used: usize,
        k: u32,
    ) -> bool {
        if i == elems.len() {
            return pu == pv && elems.len() - used <= (k - 1) as usize;
        }
        for c in 0..3u8 {
            split[i] = c;
            let (pu2, pv2, used2) = match c {
                0 => (pu, pv, used),
                1 => (t.mul(pu, elems[i]), pv, used + 1),
                _ => (pu, t.mul(pv, elems[i]), used + 1),
            };
            if rec(t, elems, split, i + 1, pu2, pv2, used2, k) {
                return true;
            }
        }
        false
    }
    rec(t, elems, &mut split, 0, t.id(), t.id(), 0, k)
}

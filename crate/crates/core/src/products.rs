//! Product sets of sequences over a group.
//!
//! For an unordered sequence `S` the set `pi(S)` collects the products of
//! *all orderings* of `S`, not just one fixed order; `big_pi(S)` is the union
//! of `pi(T)` over all non-empty sub-multisets `T | S`, and `pi_r` restricts
//! that union to sub-multisets of one exact size. Some of the literature
//! instead multiplies each subset in a single fixed order; this module
//! implements the all-orderings definition exclusively.
//!
//! Everything is computed exactly by a dynamic program over sub-multisets,
//! memoized on the exponent vector: `pi(S) = union over g in supp(S) of
//! g * pi(S - g)`, with `pi(empty) = {1}` as the internal base case (public
//! operations reject empty input). The memo is scoped to one top-level query
//! and holds at most `prod(v_g + 1)` entries.

use std::collections::HashMap;
use std::time::Instant;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::seq::{SeqMulti, SeqOrdered};

struct Entry {
    pi: ElemSet,
    size: u32,
}

/// Hard bound on the number of memoized sub-multisets per query. The state
/// count is exactly the product of (multiplicity + 1) over the support, so
/// desk-scale sequences stay far below this; hitting it is reported rather
/// than ground through.
pub const STATE_CAP: u64 = 2_000_000;

pub(crate) struct PushSummary {
    /// Some newly reachable sub-multiset has the identity among its products.
    pub any_identity: bool,
    /// Same, restricted to sub-multisets of the watched size.
    pub watch_hit: bool,
    /// The push was abandoned: the memo would exceed `STATE_CAP`, or the
    /// wall deadline fired mid-enumeration.
    pub overflow: bool,
}

/// Wall deadline checked inside long pushes.
#[derive(Clone, Copy)]
pub(crate) struct PushDeadline {
    pub start: Instant,
    pub ms: u64,
}

impl PushDeadline {
    fn expired(&self) -> bool {
        self.start.elapsed().as_millis() as u64 > self.ms
    }
}

/// Incremental sub-multiset DP. Elements are pushed in non-decreasing index
/// order (the canonical multiset enumeration); `pop` undoes the last push.
pub(crate) struct MultisetDp<'t> {
    t: &'t GroupTable,
    support: Vec<usize>,
    mults: Vec<u32>,
    memo: HashMap<Box<[u16]>, Entry>,
    frames: Vec<Frame>,
    total_len: usize,
}

struct Frame {
    new_slot: bool,
    keys: Vec<Box<[u16]>>,
}

fn trimmed(v: &[u16]) -> Box<[u16]> {
    let end = v.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
    v[..end].into()
}

impl<'t> MultisetDp<'t> {
    pub fn new(t: &'t GroupTable) -> Self {
        let mut memo = HashMap::new();
        let mut base = ElemSet::new(t.order());
        base.insert(t.id());
        memo.insert(Box::from([] as [u16; 0]), Entry { pi: base, size: 0 });
        MultisetDp {
            t,
            support: Vec::new(),
            mults: Vec::new(),
            memo,
            frames: Vec::new(),
            total_len: 0,
        }
    }

    #[allow(dead_code)]
    pub fn len(&self) -> usize {
        self.total_len
    }

    /// Append one copy of `elem`; requires `elem >=` the last pushed element.
    pub fn push(
        &mut self,
        elem: usize,
        watch_size: Option<u32>,
        deadline: Option<PushDeadline>,
    ) -> PushSummary {
        let new_slot = match self.support.last() {
            Some(&last) => {
                debug_assert!(elem >= last, "pushes must be non-decreasing");
                elem != last
            }
            None => true,
        };
        if new_slot {
            self.support.push(elem);
            self.mults.push(1);
        } else {
            *self.mults.last_mut().unwrap() += 1;
        }
        self.total_len += 1;
        let slot = self.support.len() - 1;

        // New states use the full new multiplicity of `elem`; their count is
        // the product over the other slots. Bail out before materializing
        // anything that would overrun the cap.
        let new_count = self.mults[..slot]
            .iter()
            .fold(1u64, |acc, &m| acc.saturating_mul(m as u64 + 1));
        if self.memo.len() as u64 + new_count > STATE_CAP {
            self.frames.push(Frame {
                new_slot,
                keys: Vec::new(),
            });
            return PushSummary {
                any_identity: false,
                watch_hit: false,
                overflow: true,
            };
        }

        // All sub-multisets that use the full new multiplicity of `elem`.
        let mut combos: Vec<(Vec<u16>, u32)> = Vec::new();
        let mut cur = vec![0u16; slot + 1];
        cur[slot] = self.mults[slot] as u16;
        enumerate_combos(&self.mults[..slot], 0, &mut cur, &mut combos);
        combos.sort_by_key(|&(_, size)| size);

        let mut frame = Frame {
            new_slot,
            keys: Vec::with_capacity(combos.len()),
        };
        let mut any_identity = false;
        let mut watch_hit = false;
        let mut processed: u32 = 0;
        for (u, size) in combos {
            processed += 1;
            if processed % 256 == 0 {
                if let Some(d) = deadline {
                    if d.expired() {
                        self.frames.push(frame);
                        return PushSummary {
                            any_identity,
                            watch_hit,
                            overflow: true,
                        };
                    }
                }
            }
            let mut pi = ElemSet::new(self.t.order());
            let mut lower = u.clone();
            for i in 0..=slot {
                if u[i] == 0 {
                    continue;
                }
                lower[i] -= 1;
                let key = trimmed(&lower);
                let prev = &self.memo.get(&key).expect("smaller state computed").pi;
                pi.union_translated_left(self.t, self.support[i], prev);
                lower[i] += 1;
            }
            if pi.contains(self.t.id()) {
                any_identity = true;
                if watch_size == Some(size) {
                    watch_hit = true;
                }
            }
            let key: Box<[u16]> = u.into();
            frame.keys.push(key.clone());
            self.memo.insert(key, Entry { pi, size });
        }
        self.frames.push(frame);
        PushSummary {
            any_identity,
            watch_hit,
            overflow: false,
        }
    }

    pub fn pop(&mut self) {
        let frame = self.frames.pop().expect("pop without push");
        for key in frame.keys {
            self.memo.remove(&key);
        }
        if frame.new_slot {
            self.support.pop();
            self.mults.pop();
        } else {
            *self.mults.last_mut().unwrap() -= 1;
        }
        self.total_len -= 1;
    }

    /// pi of the full current multiset.
    pub fn pi_full(&self) -> ElemSet {
        let key: Vec<u16> = self.mults.iter().map(|&m| m as u16).collect();
        self.memo[&trimmed(&key)].pi.clone()
    }

    /// Union of pi over all non-empty sub-multisets passing the size filter.
    pub fn union_sizes(&self, pred: impl Fn(u32) -> bool) -> ElemSet {
        let mut out = ElemSet::new(self.t.order());
        for entry in self.memo.values() {
            if entry.size >= 1 && pred(entry.size) {
                out.union_with(&entry.pi);
            }
        }
        out
    }

    pub fn from_multiset(t: &'t GroupTable, s: &SeqMulti) -> Result<Self> {
        // memo keys store multiplicities as u16
        if let Some((e, m)) = s.pairs().find(|&(_, m)| m > u16::MAX as u32) {
            return Err(Error::BadLength(format!(
                "multiplicity {m} of element {e} exceeds {}",
                u16::MAX
            )));
        }
        let states = s
            .pairs()
            .fold(1u64, |acc, (_, m)| acc.saturating_mul(m as u64 + 1));
        if states > STATE_CAP {
            return Err(Error::CapExceeded {
                required: states,
                cap: STATE_CAP,
            });
        }
        let mut dp = MultisetDp::new(t);
        for (e, m) in s.pairs() {
            for _ in 0..m {
                let summary = dp.push(e, None, None);
                debug_assert!(!summary.overflow);
            }
        }
        Ok(dp)
    }
}

fn enumerate_combos(bounds: &[u32], i: usize, cur: &mut Vec<u16>, out: &mut Vec<(Vec<u16>, u32)>) {
    if i == bounds.len() {
        let size = cur.iter().map(|&x| x as u32).sum();
        out.push((cur.clone(), size));
        return;
    }
    for v in 0..=bounds[i] as u16 {
        cur[i] = v;
        enumerate_combos(bounds, i + 1, cur, out);
    }
    cur[i] = 0;
}

/// Products of all orderings of the whole multiset.
pub fn pi_set(t: &GroupTable, s: &SeqMulti) -> Result<ElemSet> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(MultisetDp::from_multiset(t, s)?.pi_full())
}

/// Union of `pi` over all non-empty sub-multisets. The sequence is
/// product-one free exactly when the identity is absent from the result.
pub fn big_pi(t: &GroupTable, s: &SeqMulti) -> Result<ElemSet> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(MultisetDp::from_multiset(t, s)?.union_sizes(|_| true))
}

/// Union of `pi` over sub-multisets of size exactly `r`.
pub fn pi_r(t: &GroupTable, s: &SeqMulti, r: usize) -> Result<ElemSet> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    if r < 1 || r > s.len() {
        return Err(Error::BadLength(format!(
            "r = {r} not in [1, {}]",
            s.len()
        )));
    }
    Ok(MultisetDp::from_multiset(t, s)?.union_sizes(|size| size as usize == r))
}

/// Set of products of all non-empty ordered subsequences, by the
/// left-to-right scan `P_i = P_{i-1} ∪ {g_i} ∪ P_{i-1}·g_i`.
pub fn ordered_reach(t: &GroupTable, s: &SeqOrdered) -> Result<ElemSet> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut p = ElemSet::new(t.order());
    for &g in s.elems() {
        let mut next = p.translate_right(t, g);
        next.insert(g);
        next.union_with(&p);
        p = next;
    }
    Ok(p)
}

/// { a*b : a in A, b in B }
pub fn set_product(t: &GroupTable, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = ElemSet::new(t.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(t.mul(x, y));
        }
    }
    out
}

const PAIR_SEARCH_CAP: u64 = 30_000_000;

/// Over an abelian group, split off two disjoint subsequences with equal
/// products leaving at most `k-1` terms unused (requires `2^k > |G|`).
///
/// The assignment space is scanned exhaustively; among all solutions the one
/// with minimal leftover is returned, preferring pairs with both parts
/// non-empty (an empty part is only possible against a product-one partner),
/// remaining ties broken by the lexicographically least exponent vectors.
/// A failure to find any qualifying pair is reported loudly as
/// `SearchExhausted` since it would falsify the covering lemma this
/// operation is built for.
pub fn find_disjoint_equal_product(
    t: &GroupTable,
    s: &SeqMulti,
    k: u32,
) -> Result<(SeqMulti, SeqMulti)> {
    if !t.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if k == 0 || (1u128 << k.min(127)) <= t.order() as u128 {
        return Err(Error::PreconditionFailed(format!(
            "2^{k} must exceed the group order {}",
            t.order()
        )));
    }
    if s.len() <= (k - 1) as usize {
        return Ok((SeqMulti::empty(t.order()), SeqMulti::empty(t.order())));
    }

    let pairs: Vec<(usize, u32)> = s.pairs().collect();
    let mut space: u64 = 1;
    for &(_, v) in &pairs {
        let opts = (v as u64 + 1) * (v as u64 + 2) / 2;
        space = space.saturating_mul(opts);
        if space > PAIR_SEARCH_CAP {
            return Err(Error::SearchExhausted(
                "assignment space exceeds the internal cap".into(),
            ));
        }
    }

    struct Best {
        leftover: usize,
        degenerate: bool,
        u: Vec<u32>,
        v: Vec<u32>,
    }
    let mut best: Option<Best> = None;
    let n = t.order();
    let mut u_assign = vec![0u32; pairs.len()];
    let mut v_assign = vec![0u32; pairs.len()];

    fn rec(
        t: &GroupTable,
        pairs: &[(usize, u32)],
        i: usize,
        pu: usize,
        pv: usize,
        used: usize,
        u_assign: &mut Vec<u32>,
        v_assign: &mut Vec<u32>,
        total: usize,
        best: &mut Option<Best>,
    ) {
        if i == pairs.len() {
            if pu == pv {
                let leftover = total - used;
                let dense = |assign: &[u32]| -> Vec<u32> {
                    let mut d = vec![0u32; t.order()];
                    for (j, &(e, _)) in pairs.iter().enumerate() {
                        d[e] = assign[j];
                    }
                    d
                };
                let cand_u = dense(u_assign);
                let cand_v = dense(v_assign);
                let degenerate = u_assign.iter().all(|&x| x == 0)
                    || v_assign.iter().all(|&x| x == 0);
                let better = match best {
                    None => true,
                    Some(b) => {
                        (leftover, degenerate, &cand_u, &cand_v)
                            < (b.leftover, b.degenerate, &b.u, &b.v)
                    }
                };
                if better {
                    *best = Some(Best {
                        leftover,
                        degenerate,
                        u: cand_u,
                        v: cand_v,
                    });
                }
            }
            return;
        }
        let (e, m) = pairs[i];
        for cu in 0..=m {
            for cv in 0..=(m - cu) {
                u_assign[i] = cu;
                v_assign[i] = cv;
                rec(
                    t,
                    pairs,
                    i + 1,
                    t.mul(pu, t.pow(e, cu as u64)),
                    t.mul(pv, t.pow(e, cv as u64)),
                    used + (cu + cv) as usize,
                    u_assign,
                    v_assign,
                    total,
                    best,
                );
            }
        }
        u_assign[i] = 0;
        v_assign[i] = 0;
    }

    rec(
        t,
        &pairs,
        0,
        t.id(),
        t.id(),
        0,
        &mut u_assign,
        &mut v_assign,
        s.len(),
        &mut best,
    );

    match best {
        Some(b) if b.leftover <= (k - 1) as usize => {
            let mk = |dense: Vec<u32>| {
                let pairs: Vec<(usize, u32)> = dense
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(e, &m)| (e, m))
                    .collect();
                SeqMulti::from_pairs(n, &pairs)
            };
            Ok((mk(b.u), mk(b.v)))
        }
        _ => Err(Error::SearchExhausted(
            "no disjoint equal-product pair within the leftover bound".into(),
        )),
    }
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
    fn pi_of_repeated_element_is_singleton() {
        let t = sym3();
        let a = t.gen_elem("g").unwrap();
        let s = SeqMulti::from_pairs(6, &[(a, 2)]);
        let pi = pi_set(&t, &s).unwrap();
        assert_eq!(pi.card(), 1);
        assert!(pi.contains(t.mul(a, a)));
    }

    #[test]
    fn pi_of_noncommuting_pair_has_both_orders() {
        let t = sym3();
        let h = t.gen_elem("h").unwrap();
        let a = t.gen_elem("g").unwrap();
        let s = SeqMulti::from_elems(6, &[h, a]);
        let pi = pi_set(&t, &s).unwrap();
        let ha = t.mul(h, a);
        let ah = t.mul(a, h);
        assert_ne!(ha, ah);
        assert_eq!(pi.card(), 2);
        assert!(pi.contains(ha) && pi.contains(ah));
    }

    #[test]
    fn pi_abelian_is_singleton() {
        let t = cyclic(6);
        let g = t.generator(0);
        let s = SeqMulti::from_pairs(6, &[(g, 2), (t.pow(g, 3), 1)]);
        assert_eq!(pi_set(&t, &s).unwrap().card(), 1);
    }

    #[test]
    fn big_pi_of_basis_witness_over_cyclic() {
        let n = 7;
        let t = cyclic(n as u64);
        let g = t.generator(0);
        let s = SeqMulti::from_pairs(n, &[(g, (n - 1) as u32)]);
        let bp = big_pi(&t, &s).unwrap();
        assert!(!bp.contains(t.id()));
        assert_eq!(bp.card(), n - 1);
    }

    #[test]
    fn big_pi_example_over_sym3() {
        let t = sym3();
        let h = t.gen_elem("h").unwrap();
        let a = t.gen_elem("g").unwrap();
        let s = SeqMulti::from_elems(6, &[a, h]);
        let bp = big_pi(&t, &s).unwrap();
        let expect = [a, h, t.mul(a, h), t.mul(h, a)];
        assert_eq!(bp.card(), 4);
        for e in expect {
            assert!(bp.contains(e));
        }
    }

    #[test]
    fn big_pi_monotone_under_extension() {
        let t = sym3();
        let s = SeqMulti::from_elems(6, &[1, 3]);
        let small = big_pi(&t, &s).unwrap();
        for g in 0..6 {
            let mut bigger = s.clone();
            bigger.push(g);
            let grown = big_pi(&t, &bigger).unwrap();
            assert!(small.is_subset_of(&grown));
        }
    }

    #[test]
    fn pi_r_edges() {
        let t = cyclic(3);
        let g = t.generator(0);
        let s = SeqMulti::from_pairs(3, &[(g, 5)]);
        assert_eq!(
            pi_r(&t, &s, 5).unwrap().iter().collect::<Vec<_>>(),
            pi_set(&t, &s).unwrap().iter().collect::<Vec<_>>()
        );
        // r = 1 is the support
        let sup = pi_r(&t, &s, 1).unwrap();
        assert_eq!(sup.card(), 1);
        assert!(sup.contains(g));
        // g^3 = 1
        let r3 = pi_r(&t, &s, 3).unwrap();
        assert_eq!(r3.card(), 1);
        assert!(r3.contains(t.id()));
        assert!(matches!(pi_r(&t, &s, 6), Err(Error::BadLength(_))));
        assert!(matches!(pi_r(&t, &s, 0), Err(Error::BadLength(_))));
    }

    #[test]
    fn ordered_reach_powers() {
        let t = cyclic(4);
        let g = t.generator(0);
        let s = SeqOrdered::new(vec![g, g, g]);
        let p = ordered_reach(&t, &s).unwrap();
        assert_eq!(p.card(), 3);
        assert!(!p.contains(t.id()));
    }

    #[test]
    fn ordered_reach_prefix_monotone() {
        let t = sym3();
        let elems = [1, 2, 4, 3];
        let mut prev = ElemSet::new(6);
        for i in 1..=elems.len() {
            let p = ordered_reach(&t, &SeqOrdered::new(elems[..i].to_vec())).unwrap();
            assert!(prev.is_subset_of(&p));
            prev = p;
        }
    }

    #[test]
    fn set_product_covering_and_counterexample() {
        let t3 = cyclic(3);
        let a = ElemSet::from_iter(3, [0, 1]);
        let product = set_product(&t3, &a, &a);
        assert_eq!(product.card(), 3);

        let t4 = cyclic(4);
        let g2 = t4.pow(t4.generator(0), 2);
        let b = ElemSet::from_iter(4, [0, g2]);
        let product = set_product(&t4, &b, &b);
        assert_eq!(product.card(), 2);

        let ident = ElemSet::singleton(4, 0);
        let c = ElemSet::from_iter(4, [1, 3]);
        assert_eq!(set_product(&t4, &ident, &c), c);
    }

    #[test]
    fn disjoint_pair_trivial_case() {
        let t = cyclic(2);
        let g = t.generator(0);
        let s = SeqMulti::from_pairs(2, &[(g, 2)]);
        let (u, v) = find_disjoint_equal_product(&t, &s, 2).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(v.len(), 1);
        assert_eq!(u.multiplicity(g), 1);
        assert_eq!(v.multiplicity(g), 1);
    }

    #[test]
    fn disjoint_pair_short_sequence_is_vacuous() {
        let t = cyclic(4);
        let s = SeqMulti::from_elems(4, &[1, 2]);
        let (u, v) = find_disjoint_equal_product(&t, &s, 4).unwrap();
        assert!(u.is_empty() && v.is_empty());
    }

    #[test]
    fn disjoint_pair_rejects_nonabelian() {
        let t = sym3();
        let s = SeqMulti::from_elems(6, &[1, 2]);
        assert!(matches!(
            find_disjoint_equal_product(&t, &s, 3),
            Err(Error::NotAbelian)
        ));
    }

    #[test]
    fn state_cap_is_a_loud_error() {
        let t = cyclic(64);
        // 64 distinct-ish multiplicities make the sub-multiset count huge
        let pairs: Vec<(usize, u32)> = (1..64).map(|e| (e, 3)).collect();
        let s = SeqMulti::from_pairs(64, &pairs);
        assert!(matches!(big_pi(&t, &s), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn empty_sequence_errors() {
        let t = cyclic(3);
        let s = SeqMulti::empty(3);
        assert!(matches!(pi_set(&t, &s), Err(Error::EmptySequence)));
        assert!(matches!(big_pi(&t, &s), Err(Error::EmptySequence)));
        assert!(matches!(
            ordered_reach(&t, &SeqOrdered::new(vec![])),
            Err(Error::EmptySequence)
        ));
    }
}

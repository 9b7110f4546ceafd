//! Branch-and-bound exhaustive searches for d(G), D_o(G) and E(G).
//!
//! Unordered searches enumerate multisets canonically (non-decreasing element
//! index), which is sound because the product sets are permutation invariant.
//! Ordered searches enumerate raw sequences but maintain the reach set of the
//! prefix, pruning as soon as the identity becomes reachable. Depth caps come
//! from the classical bounds: free unordered sequences are shorter than |G|
//! (half of it for non-cyclic groups), free ordered sequences are shorter
//! than D_o's cyclic/non-cyclic ceilings, and a sequence avoiding product-one
//! subsequences of length |G| is shorter than 2|G| - 1.
//!
//! Parallel runs split the root branching factor over the workers: each root
//! element owns one subtree with its own node budget, subtree outcomes are
//! folded in root order, so value, certificate and node counts do not depend
//! on the worker count or scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::group::GroupTable;
use crate::invariant::{Budget, Certificate, Invariant, InvariantReport, WitnessSeq};
use crate::products::{big_pi, pi_r, MultisetDp, PushDeadline};
use crate::seq::{SeqMulti, SeqOrdered};

/// Inputs shared by the three searches.
pub struct SearchArgs<'a> {
    /// Group spec string echoed into the report.
    pub spec: &'a str,
    pub budget: &'a Budget,
    /// Known-free sequence used as the initial lower-bound witness.
    pub seed_unordered: Option<&'a SeqMulti>,
    pub seed_ordered: Option<&'a SeqOrdered>,
}

impl<'a> SearchArgs<'a> {
    pub fn new(spec: &'a str, budget: &'a Budget) -> Self {
        SearchArgs {
            spec,
            budget,
            seed_unordered: None,
            seed_ordered: None,
        }
    }
}

#[derive(Clone)]
enum FoundWitness {
    Multi(Vec<(usize, u32)>),
    Ordered(Vec<usize>),
}

struct SubtreeOutcome {
    best_len: usize,
    witness: Option<FoundWitness>,
    nodes: u64,
    exhausted: bool,
}

/// Run one closure per root element on a small thread pool, then fold the
/// outcomes in root order.
fn run_subtrees<F>(n: usize, workers: usize, f: F) -> Vec<SubtreeOutcome>
where
    F: Fn(usize) -> SubtreeOutcome + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let results: Mutex<Vec<Option<SubtreeOutcome>>> = Mutex::new((0..n).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.min(n) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let out = f(i);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|o| o.expect("subtree completed"))
        .collect()
}

fn per_subtree_nodes(budget: &Budget, subtrees: usize) -> u64 {
    (budget.max_nodes / subtrees.max(1) as u64).max(1)
}

#[derive(Clone, Copy)]
enum PruneMode {
    /// Prune when any product of any sub-multiset is the identity (d-search).
    AnyIdentity,
    /// Prune when some sub-multiset of the given size multiplies to the
    /// identity (E-search).
    IdentityAtSize(u32),
}

struct UnorderedWalker<'t> {
    t: &'t GroupTable,
    dp: MultisetDp<'t>,
    path: Vec<usize>,
    mode: PruneMode,
    depth_cap: usize,
    node_limit: u64,
    deadline: Option<(Instant, u64)>,
    nodes: u64,
    stopped: bool,
    best_len: usize,
    witness: Option<FoundWitness>,
}

impl<'t> UnorderedWalker<'t> {
    fn halted(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if self.nodes >= self.node_limit {
            self.stopped = true;
            return true;
        }
        if let Some((start, ms)) = self.deadline {
            if start.elapsed().as_millis() as u64 > ms {
                self.stopped = true;
                return true;
            }
        }
        false
    }

    fn descend(&mut self, min_elem: usize) {
        let n = self.t.order();
        for g in min_elem..n {
            if self.halted() {
                return;
            }
            self.nodes += 1;
            let watch = match self.mode {
                PruneMode::AnyIdentity => None,
                PruneMode::IdentityAtSize(k) => Some(k),
            };
            let deadline = self.deadline.map(|(start, ms)| PushDeadline { start, ms });
            let summary = self.dp.push(g, watch, deadline);
            if summary.overflow {
                // state cap: abandon the subtree deterministically
                self.stopped = true;
                self.dp.pop();
                return;
            }
            let pruned = match self.mode {
                PruneMode::AnyIdentity => summary.any_identity,
                PruneMode::IdentityAtSize(_) => summary.watch_hit,
            };
            if !pruned {
                self.path.push(g);
                if self.path.len() > self.best_len {
                    self.best_len = self.path.len();
                    let ms = SeqMulti::from_elems(n, &self.path);
                    self.witness = Some(FoundWitness::Multi(ms.pairs().collect()));
                }
                if self.path.len() < self.depth_cap {
                    self.descend(g);
                }
                self.path.pop();
            }
            self.dp.pop();
        }
    }
}

struct SearchResult {
    best_len: usize,
    witness: Option<FoundWitness>,
    nodes: u64,
    exhausted: bool,
}

fn unordered_search(
    t: &GroupTable,
    budget: &Budget,
    mode: PruneMode,
    depth_cap: usize,
    seed_len: usize,
) -> SearchResult {
    let n = t.order();
    let start = Instant::now();
    let node_limit = per_subtree_nodes(budget, n);
    let deadline = budget.max_wall_ms.map(|ms| (start, ms));
    let outcomes = run_subtrees(n, budget.workers, |root| {
        if depth_cap == 0 {
            return SubtreeOutcome {
                best_len: seed_len,
                witness: None,
                nodes: 0,
                exhausted: true,
            };
        }
        let mut w = UnorderedWalker {
            t,
            dp: MultisetDp::new(t),
            path: Vec::new(),
            mode,
            depth_cap,
            node_limit,
            deadline,
            nodes: 0,
            stopped: false,
            best_len: seed_len,
            witness: None,
        };
        w.nodes += 1;
        let watch = match w.mode {
            PruneMode::AnyIdentity => None,
            PruneMode::IdentityAtSize(k) => Some(k),
        };
        let root_deadline = w.deadline.map(|(start, ms)| PushDeadline { start, ms });
        let summary = w.dp.push(root, watch, root_deadline);
        let pruned = summary.overflow
            || match w.mode {
                PruneMode::AnyIdentity => summary.any_identity,
                PruneMode::IdentityAtSize(_) => summary.watch_hit,
            };
        w.stopped |= summary.overflow;
        if !pruned {
            w.path.push(root);
            if w.path.len() > w.best_len {
                w.best_len = w.path.len();
                let ms = SeqMulti::from_elems(n, &w.path);
                w.witness = Some(FoundWitness::Multi(ms.pairs().collect()));
            }
            if w.path.len() < depth_cap {
                w.descend(root);
            }
        }
        SubtreeOutcome {
            best_len: w.best_len,
            witness: w.witness,
            nodes: w.nodes,
            exhausted: !w.stopped,
        }
    });
    fold_outcomes(outcomes, seed_len)
}

fn fold_outcomes(outcomes: Vec<SubtreeOutcome>, seed_len: usize) -> SearchResult {
    let mut best_len = seed_len;
    let mut witness = None;
    let mut nodes = 0;
    let mut exhausted = true;
    for o in outcomes {
        nodes += o.nodes;
        exhausted &= o.exhausted;
        if o.best_len > best_len {
            best_len = o.best_len;
            witness = o.witness;
        }
    }
    SearchResult {
        best_len,
        witness,
        nodes,
        exhausted,
    }
}

/// d(G): the maximal length of a product-one free unordered sequence.
pub fn small_davenport(t: &GroupTable, args: &SearchArgs) -> InvariantReport {
    let start = Instant::now();
    let n = t.order();
    let (depth_cap, cap_reason) = if t.is_cyclic() {
        (n.saturating_sub(1), "cyclic: free length < |G|")
    } else {
        (n / 2, "non-cyclic: free length <= |G|/2")
    };
    let seed = verified_unordered_seed(t, args.seed_unordered, None);
    let seed_len = seed.as_ref().map_or(0, |s| s.len());
    let res = unordered_search(t, args.budget, PruneMode::AnyIdentity, depth_cap, seed_len);
    build_unordered_report(
        t,
        args,
        Invariant::D,
        res,
        seed,
        depth_cap,
        cap_reason,
        0,
        start,
        "dfs-canonical-multiset",
    )
}

/// E(G): 1 + the maximal length of a sequence with no product-one
/// sub-multiset of size exactly |G|.
pub fn gao_constant(t: &GroupTable, args: &SearchArgs) -> InvariantReport {
    let start = Instant::now();
    let n = t.order();
    let depth_cap = 2 * n - 2;
    let cap_reason = "every sequence of length 2|G|-1 has a product-one subsequence of length |G|";
    let seed = verified_unordered_seed(t, args.seed_unordered, Some(n as u32));
    let seed_len = seed.as_ref().map_or(0, |s| s.len());
    let res = unordered_search(
        t,
        args.budget,
        PruneMode::IdentityAtSize(n as u32),
        depth_cap,
        seed_len,
    );
    build_unordered_report(
        t,
        args,
        Invariant::E,
        res,
        seed,
        depth_cap,
        cap_reason,
        1,
        start,
        "dfs-canonical-multiset-pi-n",
    )
}

/// Check a caller-provided seed; a seed that fails its freeness property is
/// dropped (and flags a caller bug in debug builds).
fn verified_unordered_seed(
    t: &GroupTable,
    seed: Option<&SeqMulti>,
    gao_size: Option<u32>,
) -> Option<SeqMulti> {
    let s = seed?;
    if s.is_empty() {
        return None;
    }
    let free = match gao_size {
        None => !big_pi(t, s).ok()?.contains(t.id()),
        Some(k) => {
            s.len() < k as usize || !pi_r(t, s, k as usize).ok()?.contains(t.id())
        }
    };
    debug_assert!(free, "seed witness is not free");
    free.then(|| s.clone())
}

#[allow(clippy::too_many_arguments)]
fn build_unordered_report(
    t: &GroupTable,
    args: &SearchArgs,
    invariant: Invariant,
    res: SearchResult,
    seed: Option<SeqMulti>,
    depth_cap: usize,
    cap_reason: &str,
    value_offset: u64,
    start: Instant,
    method: &str,
) -> InvariantReport {
    let witness = match res.witness {
        Some(FoundWitness::Multi(pairs)) => {
            WitnessSeq::from_multiset(t, &SeqMulti::from_pairs(t.order(), &pairs))
        }
        _ => match &seed {
            Some(s) => WitnessSeq::from_multiset(t, s),
            None => WitnessSeq::from_multiset(t, &SeqMulti::empty(t.order())),
        },
    };
    let (value, certificate) = if res.exhausted {
        (
            Some(res.best_len as u64 + value_offset),
            Certificate::WitnessExhaustion {
                witness,
                exhausted_len: res.best_len as u64 + 1,
                depth_cap: depth_cap as u64,
                cap_reason: cap_reason.to_string(),
            },
        )
    } else {
        (None, Certificate::LowerBound { witness })
    };
    InvariantReport {
        spec: args.spec.to_string(),
        order: t.order(),
        invariant,
        value,
        certificate,
        method: method.to_string(),
        nodes: res.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        budget_exhausted: !res.exhausted,
    }
}

/// D_o(G): 1 + the maximal length of a product-one free ordered sequence.
pub fn ordered_davenport(t: &GroupTable, args: &SearchArgs) -> InvariantReport {
    let start = Instant::now();
    let n = t.order();
    let (depth_cap, cap_reason) = if t.is_cyclic() {
        (n - 1, "cyclic: free ordered length < |G|")
    } else {
        (
            (n + 1).div_ceil(2) - 1,
            "non-cyclic: free ordered length < ceil((|G|+1)/2)",
        )
    };
    let seed = args.seed_ordered.and_then(|s| {
        if s.is_empty() {
            return None;
        }
        let free = !crate::products::ordered_reach(t, s).ok()?.contains(t.id());
        debug_assert!(free, "ordered seed witness is not free");
        free.then(|| s.clone())
    });
    let seed_len = seed.as_ref().map_or(0, |s| s.len());

    let node_limit = per_subtree_nodes(args.budget, n);
    let deadline = args.budget.max_wall_ms.map(|ms| (start, ms));
    let words = n.div_ceil(64);
    let outcomes = run_subtrees(n, args.budget.workers, |root| {
        if depth_cap == 0 {
            return SubtreeOutcome {
                best_len: seed_len,
                witness: None,
                nodes: 0,
                exhausted: true,
            };
        }
        let mut w = OrderedWalker {
            t,
            reach: vec![0u64; (depth_cap + 1) * words],
            words,
            path: Vec::new(),
            depth_cap,
            node_limit,
            deadline,
            nodes: 0,
            stopped: false,
            best_len: seed_len,
            witness: None,
        };
        w.nodes += 1;
        if w.try_extend(0, root) {
            w.path.push(root);
            w.record();
            if 1 < depth_cap {
                w.descend(1);
            }
            w.path.pop();
        }
        SubtreeOutcome {
            best_len: w.best_len,
            witness: w.witness,
            nodes: w.nodes,
            exhausted: !w.stopped,
        }
    });
    let res = fold_outcomes(outcomes, seed_len);

    let witness = match res.witness {
        Some(FoundWitness::Ordered(elems)) => WitnessSeq::from_ordered(t, &SeqOrdered::new(elems)),
        _ => match &seed {
            Some(s) => WitnessSeq::from_ordered(t, s),
            None => WitnessSeq::from_ordered(t, &SeqOrdered::new(Vec::new())),
        },
    };
    let (value, certificate) = if res.exhausted {
        (
            Some(res.best_len as u64 + 1),
            Certificate::WitnessExhaustion {
                witness,
                exhausted_len: res.best_len as u64 + 1,
                depth_cap: depth_cap as u64,
                cap_reason: cap_reason.to_string(),
            },
        )
    } else {
        (None, Certificate::LowerBound { witness })
    };
    InvariantReport {
        spec: args.spec.to_string(),
        order: t.order(),
        invariant: Invariant::Do,
        value,
        certificate,
        method: "dfs-ordered-reach".to_string(),
        nodes: res.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        budget_exhausted: !res.exhausted,
    }
}

struct OrderedWalker<'t> {
    t: &'t GroupTable,
    /// Reach sets per depth, `words` u64 words each; level k holds the reach
    /// set of the length-k prefix.
    reach: Vec<u64>,
    words: usize,
    path: Vec<usize>,
    depth_cap: usize,
    node_limit: u64,
    deadline: Option<(Instant, u64)>,
    nodes: u64,
    stopped: bool,
    best_len: usize,
    witness: Option<FoundWitness>,
}

impl<'t> OrderedWalker<'t> {
    fn halted(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if self.nodes >= self.node_limit {
            self.stopped = true;
            return true;
        }
        if let Some((start, ms)) = self.deadline {
            if start.elapsed().as_millis() as u64 > ms {
                self.stopped = true;
                return true;
            }
        }
        false
    }

    /// Compute reach[depth+1] = reach[depth] ∪ {g} ∪ reach[depth]·g; returns
    /// false (pruning the child) when the identity becomes reachable.
    fn try_extend(&mut self, depth: usize, g: usize) -> bool {
        if g == self.t.id() {
            return false;
        }
        let (lo, hi) = self.reach.split_at_mut((depth + 1) * self.words);
        let src = &lo[depth * self.words..];
        let dst = &mut hi[..self.words];
        dst.copy_from_slice(&src[..self.words]);
        dst[g >> 6] |= 1u64 << (g & 63);
        // right translate
        for (wi, &w) in src[..self.words].iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                let x = self.t.mul((wi << 6) | b, g);
                dst[x >> 6] |= 1u64 << (x & 63);
            }
        }
        dst[0] & 1 == 0
    }

    fn record(&mut self) {
        if self.path.len() > self.best_len {
            self.best_len = self.path.len();
            self.witness = Some(FoundWitness::Ordered(self.path.clone()));
        }
    }

    fn descend(&mut self, depth: usize) {
        let n = self.t.order();
        for g in 0..n {
            if self.halted() {
                return;
            }
            self.nodes += 1;
            if self.try_extend(depth, g) {
                self.path.push(g);
                self.record();
                if depth + 1 < self.depth_cap {
                    self.descend(depth + 1);
                }
                self.path.pop();
            }
        }
    }
}

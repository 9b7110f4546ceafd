//! The modular group algebra F_p[G] for a finite p-group G: the
//! Brauer-Jennings-Zassenhaus M-series with Jennings' length formula, and an
//! independent computation of the same length as the nilpotency index of the
//! augmentation ideal, by exact rank computations over F_p.

use crate::error::{Error, Result};
use crate::group::{closure, commutator_subgroup, power_subgroup, GroupTable, Subgroup};

/// Default dimension cap for the direct linear-algebra route.
pub const LINEAR_ALGEBRA_CAP: usize = 512;

/// The descending chain M_1 = G, M_i = [M_{i-1}, G] M_{ceil(i/p)}^p, stored
/// until the first trivial term. `d` is the largest index with M_d != 1 and
/// `e[i-1]` is the exponent with |M_i / M_{i+1}| = p^{e[i-1]}.
#[derive(Clone, Debug)]
pub struct MSeries {
    pub chain: Vec<Subgroup>,
    pub d: usize,
    pub e: Vec<u32>,
}

impl MSeries {
    /// M_j, where every index beyond the stored chain is the trivial group.
    pub fn term(&self, j: usize) -> &Subgroup {
        assert!(j >= 1);
        if j <= self.chain.len() {
            &self.chain[j - 1]
        } else {
            self.chain.last().expect("chain nonempty")
        }
    }
}

/// Compute the M-series of a p-group.
pub fn m_series(t: &GroupTable, p: u64) -> Result<MSeries> {
    if t.p_exponent(p).is_none() {
        return Err(Error::NotPGroup {
            order: t.order() as u64,
            p,
        });
    }
    let whole = Subgroup::whole(t);
    let mut chain = vec![whole.clone()];
    while !chain.last().unwrap().is_trivial() {
        let i = chain.len() + 1; // index of the term being computed
        let prev = &chain[i - 2];
        let comm = commutator_subgroup(t, prev, &whole);
        let half = &chain[i.div_ceil(p as usize) - 1];
        let pow = power_subgroup(t, half, p);
        let gens: Vec<usize> = comm
            .members()
            .iter()
            .chain(pow.members().iter())
            .collect();
        let m_i = closure(t, &gens)?;
        if chain.len() > 4 * t.order() {
            return Err(Error::PreconditionFailed(
                "M-series did not reach the trivial subgroup".into(),
            ));
        }
        chain.push(m_i);
    }
    let d = chain.len() - 1;

    // Elementary abelian quotients: x^p and [x,y] land one step down.
    for i in 0..d {
        let cur = &chain[i];
        let next = &chain[i + 1];
        for x in cur.members().iter() {
            if !next.contains(t.pow(x, p)) {
                return Err(Error::PreconditionFailed(format!(
                    "M_{} / M_{} is not elementary abelian (p-th power escapes)",
                    i + 1,
                    i + 2
                )));
            }
            for y in cur.members().iter() {
                if !next.contains(t.commutator(x, y)) {
                    return Err(Error::PreconditionFailed(format!(
                        "M_{} / M_{} is not abelian",
                        i + 1,
                        i + 2
                    )));
                }
            }
        }
    }

    let mut e = Vec::with_capacity(d);
    for i in 0..d {
        let ratio = (chain[i].order() / chain[i + 1].order()) as u64;
        let mut q = ratio;
        let mut exp = 0u32;
        while q % p == 0 {
            q /= p;
            exp += 1;
        }
        if q != 1 {
            return Err(Error::PreconditionFailed(format!(
                "|M_{}/M_{}| = {ratio} is not a power of {p}",
                i + 1,
                i + 2
            )));
        }
        e.push(exp);
    }
    Ok(MSeries { chain, d, e })
}

/// Jennings' formula: L(G) = 1 + (p-1) * sum_i i*e_i.
pub fn loewy_jennings(ms: &MSeries, p: u64) -> u64 {
    let weighted: u64 = ms
        .e
        .iter()
        .enumerate()
        .map(|(i, &e)| (i as u64 + 1) * e as u64)
        .sum();
    1 + (p - 1) * weighted
}

/// Dimensions of the powers of the augmentation ideal, down to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalProfile {
    /// dims[k] = dim_{F_p} J^k, with dims[0] = |G|.
    pub dims: Vec<usize>,
    /// Least k with J^k = 0, i.e. the Loewy length.
    pub nilpotency_index: u64,
}

/// Row-echelon basis over F_p with deterministic lowest-index pivoting.
struct EchelonBasis {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    fn new(p: u64, dim: usize) -> Self {
        EchelonBasis {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce against the basis; insert if independent. Returns true if the
    /// vector was new.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if v[piv] != 0 {
                let c = v[piv];
                for j in piv..self.dim {
                    v[j] = (v[j] + (p - c) * row[j]) % p;
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse(v[piv], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        // Keep rows ordered by pivot column.
        let pos = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, piv);
        true
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime; Fermat.
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    if m == 1 {
        0
    } else {
        acc
    }
}

/// Multiply a group-algebra vector by (g - 1) on the right.
fn mul_aug(t: &GroupTable, p: u64, v: &[u64], g: usize) -> Vec<u64> {
    let n = t.order();
    let mut out = vec![0u64; n];
    for (x, &c) in v.iter().enumerate() {
        if c != 0 {
            let xg = t.mul(x, g);
            out[xg] = (out[xg] + c) % p;
            out[x] = (out[x] + p - c) % p;
        }
    }
    out
}

/// Nilpotency index of the augmentation ideal of F_p[G], with the dimension
/// of every power of the ideal along the way.
///
/// J^{k+1} is spanned by right-multiplying a basis of J^k with the elements
/// (g - 1) over a generating set of G, closing under those multiplications;
/// right multiplication alone suffices because only dimensions are tracked.
pub fn loewy_direct(t: &GroupTable, p: u64) -> Result<RadicalProfile> {
    loewy_direct_capped(t, p, LINEAR_ALGEBRA_CAP)
}

pub fn loewy_direct_capped(t: &GroupTable, p: u64, cap: usize) -> Result<RadicalProfile> {
    if t.p_exponent(p).is_none() {
        return Err(Error::NotPGroup {
            order: t.order() as u64,
            p,
        });
    }
    let n = t.order();
    if n > cap {
        return Err(Error::CapExceeded {
            required: n as u64,
            cap: cap as u64,
        });
    }
    let gen_elems: Vec<usize> = if t.generators().is_empty() {
        (1..n).collect()
    } else {
        t.generators().iter().map(|&(_, e)| e).collect()
    };

    let mut dims = vec![n];
    // J^1 from all g - 1 (definition; no generating-set shortcut here).
    let mut basis = EchelonBasis::new(p, n);
    for g in 1..n {
        let mut v = vec![0u64; n];
        v[g] = 1;
        v[0] = p - 1;
        basis.insert(v);
    }
    dims.push(basis.rank());

    while basis.rank() > 0 {
        let mut next = EchelonBasis::new(p, n);
        let mut queue: Vec<Vec<u64>> = Vec::new();
        for row in &basis.rows {
            for &g in &gen_elems {
                if g == 0 {
                    continue;
                }
                queue.push(mul_aug(t, p, row, g));
            }
        }
        while let Some(v) = queue.pop() {
            if next.insert(v.clone()) {
                for &g in &gen_elems {
                    if g == 0 {
                        continue;
                    }
                    queue.push(mul_aug(t, p, &v, g));
                }
            }
        }
        dims.push(next.rank());
        basis = next;
        if dims.len() > 2 * n + 2 {
            return Err(Error::PreconditionFailed(
                "radical powers did not vanish".into(),
            ));
        }
    }

    // A nilpotent ideal cannot stall at a nonzero dimension.
    for w in dims.windows(2) {
        if w[1] >= w[0] && w[0] != 0 {
            return Err(Error::PreconditionFailed(format!(
                "radical dimensions are not strictly decreasing: {dims:?}"
            )));
        }
    }
    let nilpotency_index = (dims.len() - 1) as u64;
    Ok(RadicalProfile {
        dims,
        nilpotency_index,
    })
}

/// Per-stage result of the power-structure verification.
#[derive(Clone, Debug)]
pub struct PowerStage {
    pub s: u32,
    /// M_j = G^{2^s} held for every j in [2^{s-1}+1, 2^s].
    pub m_series_matches: bool,
    /// G^{2^s} = <a^{2^s}, b^{2^s}, [a,b]^{2^{s-1}}>.
    pub generator_form_matches: bool,
    pub power_subgroup_order: usize,
}

#[derive(Clone, Debug)]
pub struct PowerStructureReport {
    pub stages: Vec<PowerStage>,
}

impl PowerStructureReport {
    pub fn all_pass(&self) -> bool {
        self.stages
            .iter()
            .all(|st| st.m_series_matches && st.generator_form_matches)
    }
}

/// For a 2-generator 2-group with non-trivial derived subgroup centralized by
/// the whole group, check for each s >= 1 (until G^{2^s} is trivial) that the
/// M-series collapses to the power subgroups G^{2^s} on the dyadic index
/// ranges and that G^{2^s} is generated by a^{2^s}, b^{2^s}, [a,b]^{2^{s-1}}.
pub fn verify_power_structure(t: &GroupTable, a: usize, b: usize) -> Result<PowerStructureReport> {
    if t.p_exponent(2).is_none() {
        return Err(Error::NotPGroup {
            order: t.order() as u64,
            p: 2,
        });
    }
    let gen_span = closure(t, &[a, b])?;
    if gen_span.order() != t.order() {
        return Err(Error::PreconditionFailed(
            "the designated pair does not generate the group".into(),
        ));
    }
    let whole = Subgroup::whole(t);
    let derived = commutator_subgroup(t, &whole, &whole);
    if derived.is_trivial() {
        return Err(Error::PreconditionFailed("[G,G] is trivial".into()));
    }
    if !commutator_subgroup(t, &derived, &whole).is_trivial() {
        return Err(Error::PreconditionFailed("[[G,G],G] is not trivial".into()));
    }

    let ms = m_series(t, 2)?;
    let mut stages = Vec::new();
    let mut s = 1u32;
    loop {
        let q = 1u64 << s;
        let gq = power_subgroup(t, &whole, q);
        let lo = (1usize << (s - 1)) + 1;
        let hi = 1usize << s;
        let mut m_ok = true;
        for j in lo..=hi {
            let mj = if j <= ms.chain.len() {
                &ms.chain[j - 1]
            } else {
                ms.chain.last().unwrap()
            };
            if mj.members() != gq.members() {
                m_ok = false;
            }
        }
        let com = t.commutator(a, b);
        let wanted = closure(t, &[t.pow(a, q), t.pow(b, q), t.pow(com, q / 2)])?;
        let gen_ok = wanted.members() == gq.members();
        let done = gq.is_trivial();
        stages.push(PowerStage {
            s,
            m_series_matches: m_ok,
            generator_form_matches: gen_ok,
            power_subgroup_order: gq.order(),
        });
        if done {
            break;
        }
        s += 1;
    }
    Ok(PowerStructureReport { stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PcPresentation;

    fn cyclic(n: u64) -> GroupTable {
        PcPresentation::new(vec!["g"], vec![n]).build(4096).unwrap()
    }

    #[test]
    fn m_series_of_prime_cyclic() {
        for p in [2u64, 3, 5] {
            let t = cyclic(p);
            let ms = m_series(&t, p).unwrap();
            assert_eq!(ms.d, 1);
            assert_eq!(ms.e, vec![1]);
            assert_eq!(loewy_jennings(&ms, p), p);
        }
    }

    #[test]
    fn m_series_of_c4() {
        let t = cyclic(4);
        let ms = m_series(&t, 2).unwrap();
        let orders: Vec<usize> = ms.chain.iter().map(|m| m.order()).collect();
        assert_eq!(orders, vec![4, 2, 1]);
        assert_eq!(ms.e, vec![1, 1]);
        assert_eq!(loewy_jennings(&ms, 2), 4);
    }

    #[test]
    fn radical_profile_of_c2() {
        let t = cyclic(2);
        let prof = loewy_direct(&t, 2).unwrap();
        assert_eq!(prof.dims, vec![2, 1, 0]);
        assert_eq!(prof.nilpotency_index, 2);
    }

    #[test]
    fn radical_profile_of_c4() {
        let t = cyclic(4);
        let prof = loewy_direct(&t, 2).unwrap();
        assert_eq!(prof.nilpotency_index, 4);
        assert_eq!(prof.dims, vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn jennings_and_direct_agree_on_small_cyclics() {
        for (n, p) in [(8u64, 2u64), (9, 3), (16, 2), (27, 3), (25, 5)] {
            let t = cyclic(n);
            let ms = m_series(&t, p).unwrap();
            let lj = loewy_jennings(&ms, p);
            let ld = loewy_direct(&t, p).unwrap().nilpotency_index;
            assert_eq!(lj, ld, "cyclic of order {n}");
            assert_eq!(lj, n, "L(C_q) = q for prime powers");
        }
    }

    #[test]
    fn non_p_group_is_rejected() {
        let t = cyclic(6);
        assert!(matches!(m_series(&t, 2), Err(Error::NotPGroup { .. })));
        assert!(matches!(loewy_direct(&t, 3), Err(Error::NotPGroup { .. })));
    }

    #[test]
    fn power_structure_rejects_abelian() {
        let t = cyclic(8);
        let g = t.generator(0);
        assert!(matches!(
            verify_power_structure(&t, g, t.pow(g, 3)),
            Err(Error::PreconditionFailed(_))
        ));
    }
}

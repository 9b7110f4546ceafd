//! Polycyclic-style presentations and collection from the left.
//!
//! A presentation lists generators `g_0, ..., g_{k-1}` with relative orders
//! `r_i`, optional power relations `g_i^{r_i} = w_i`, and conjugation
//! relations `g_j^{g_i} = w_{ij}` for `i < j`. Every relation word must only
//! mention generators with index strictly greater than `i`; this is the usual
//! shape condition that makes collection from the left terminate. Normal
//! forms are `g_0^{e_0} ... g_{k-1}^{e_{k-1}}` with `0 <= e_i < r_i`, and the
//! element index is the mixed-radix rank of the exponent vector, so the
//! identity is always element 0.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::GroupTable;

/// A word over the presentation generators: (generator index, exponent) runs.
pub type Word = Vec<(usize, u64)>;

#[derive(Clone, Debug)]
pub struct PcPresentation {
    gens: Vec<String>,
    rel_orders: Vec<u64>,
    power_words: Vec<Word>,
    conj_words: BTreeMap<(usize, usize), Word>,
}

/// Hard stop for a single collection; hit only by pathological input.
const COLLECT_STEP_LIMIT: usize = 50_000_000;

impl PcPresentation {
    pub fn new<S: Into<String>>(gens: Vec<S>, rel_orders: Vec<u64>) -> Self {
        let gens: Vec<String> = gens.into_iter().map(Into::into).collect();
        let k = gens.len();
        assert_eq!(k, rel_orders.len());
        PcPresentation {
            gens,
            rel_orders,
            power_words: vec![Vec::new(); k],
            conj_words: BTreeMap::new(),
        }
    }

    /// Declare `g_i^{r_i} = word`. An empty word means the identity.
    pub fn with_power(mut self, i: usize, word: Word) -> Self {
        self.power_words[i] = word;
        self
    }

    /// Declare `g_j^{g_i} = word` for `i < j`. Unset pairs commute.
    pub fn with_conj(mut self, i: usize, j: usize, word: Word) -> Self {
        assert!(i < j);
        self.conj_words.insert((i, j), word);
        self
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gens
    }

    pub fn rel_orders(&self) -> &[u64] {
        &self.rel_orders
    }

    /// Product of the relative orders, i.e. the number of normal forms.
    pub fn declared_order(&self) -> u64 {
        self.rel_orders.iter().product()
    }

    fn check_shape(&self) -> Result<()> {
        for (i, &r) in self.rel_orders.iter().enumerate() {
            if r == 0 {
                return Err(Error::InconsistentPresentation(format!(
                    "generator {} has relative order 0",
                    self.gens[i]
                )));
            }
            for &(g, _) in &self.power_words[i] {
                if g <= i {
                    return Err(Error::InconsistentPresentation(format!(
                        "power word of {} mentions generator {} (must use later generators only)",
                        self.gens[i], self.gens[g]
                    )));
                }
            }
        }
        for (&(i, j), word) in &self.conj_words {
            if j >= self.gens.len() {
                return Err(Error::InconsistentPresentation(format!(
                    "conjugation relation for generator pair ({i},{j}) out of range"
                )));
            }
            for &(g, _) in word {
                if g <= i {
                    return Err(Error::InconsistentPresentation(format!(
                        "conjugate of {} by {} mentions generator {} (must use later generators only)",
                        self.gens[j], self.gens[i], self.gens[g]
                    )));
                }
            }
        }
        Ok(())
    }

    fn conj_word(&self, i: usize, j: usize) -> Word {
        self.conj_words
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| vec![(j, 1)])
    }

    /// Collection from the left: rewrite an arbitrary positive word into the
    /// exponent vector of its normal form.
    pub fn collect(&self, word: &[(usize, u64)]) -> Result<Vec<u64>> {
        let mut w: Vec<(usize, u64)> = word.iter().copied().filter(|&(_, e)| e > 0).collect();
        let mut steps = 0usize;
        loop {
            steps += 1;
            if steps > COLLECT_STEP_LIMIT {
                return Err(Error::InconsistentPresentation(
                    "collection did not terminate within the step limit".into(),
                ));
            }
            // Merge adjacent runs of the same generator and drop zero runs.
            let mut merged: Vec<(usize, u64)> = Vec::with_capacity(w.len());
            for &(g, e) in &w {
                if e == 0 {
                    continue;
                }
                match merged.last_mut() {
                    Some((lg, le)) if *lg == g => *le += e,
                    _ => merged.push((g, e)),
                }
            }
            w = merged;

            // Leftmost violation: exponent overflow, or a later generator
            // immediately before an earlier one.
            let mut action = None;
            for t in 0..w.len() {
                let (g, e) = w[t];
                if e >= self.rel_orders[g] {
                    action = Some((t, true));
                    break;
                }
                if t + 1 < w.len() && w[t + 1].0 < g {
                    action = Some((t, false));
                    break;
                }
            }
            let Some((t, overflow)) = action else {
                break;
            };

            if overflow {
                // g^e = g^(e mod r) (g^r)^q, powers of one element commute.
                let (g, e) = w[t];
                let r = self.rel_orders[g];
                let q = e / r;
                let rem = e % r;
                let mut repl: Vec<(usize, u64)> = Vec::new();
                if rem > 0 {
                    repl.push((g, rem));
                }
                for _ in 0..q {
                    repl.extend_from_slice(&self.power_words[g]);
                }
                w.splice(t..=t, repl);
            } else {
                // g_j^e g_i = g_i (g_j^{g_i})^e, then the remaining g_i's.
                let (gj, ej) = w[t];
                let (gi, ei) = w[t + 1];
                let conj = self.conj_word(gi, gj);
                let mut repl: Vec<(usize, u64)> = vec![(gi, 1)];
                for _ in 0..ej {
                    repl.extend_from_slice(&conj);
                }
                if ei > 1 {
                    repl.push((gi, ei - 1));
                }
                w.splice(t..=t + 1, repl);
            }
        }

        let mut exps = vec![0u64; self.gens.len()];
        for (g, e) in w {
            exps[g] = e;
        }
        Ok(exps)
    }

    fn index_of(&self, exps: &[u64]) -> usize {
        let mut idx = 0u64;
        for (&e, &r) in exps.iter().zip(&self.rel_orders) {
            idx = idx * r + e;
        }
        idx as usize
    }

    fn exps_of(&self, mut idx: u64) -> Vec<u64> {
        let k = self.gens.len();
        let mut exps = vec![0u64; k];
        for i in (0..k).rev() {
            let r = self.rel_orders[i];
            exps[i] = idx % r;
            idx /= r;
        }
        exps
    }

    fn label_of(&self, exps: &[u64]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e == 1 {
                parts.push(self.gens[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.gens[i], e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Enumerate all normal forms, build the full multiplication table, and
    /// validate it. Fails with `InconsistentPresentation` when the collected
    /// multiplication does not satisfy the group axioms or some defining
    /// relation does not evaluate to the identity in the table.
    pub fn build(&self, cap: u64) -> Result<GroupTable> {
        self.check_shape()?;
        let mut order: u64 = 1;
        for &r in &self.rel_orders {
            order = order
                .checked_mul(r)
                .ok_or(Error::CapExceeded { required: u64::MAX, cap })?;
            if order > cap {
                return Err(Error::CapExceeded { required: order, cap });
            }
        }
        let n = order as usize;
        let k = self.gens.len();

        // Right-multiplication by each single generator, by collection.
        let mut mul_gen: Vec<Vec<u32>> = vec![vec![0; n]; k];
        for x in 0..n {
            let ex = self.exps_of(x as u64);
            for j in 0..k {
                let mut word: Word = ex
                    .iter()
                    .enumerate()
                    .filter(|&(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e))
                    .collect();
                word.push((j, 1));
                let prod = self.collect(&word)?;
                mul_gen[j][x] = self.index_of(&prod) as u32;
            }
        }

        // Fill the table index by index: element y with last nonzero digit at
        // position j satisfies y = y' * g_j where y' has that digit lowered,
        // so x*y = (x*y')*g_j with y' < y already filled.
        let mut radix_weight = vec![1u64; k];
        for i in (0..k.saturating_sub(1)).rev() {
            radix_weight[i] = radix_weight[i + 1] * self.rel_orders[i + 1];
        }
        let mut last_gen = vec![0usize; n];
        for y in 1..n {
            let exps = self.exps_of(y as u64);
            last_gen[y] = exps.iter().rposition(|&e| e > 0).unwrap();
        }

        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            mul[x * n] = x as u32;
            for y in 1..n {
                let j = last_gen[y];
                let y_prev = y - radix_weight[j] as usize;
                let xy_prev = mul[x * n + y_prev] as usize;
                mul[x * n + y] = mul_gen[j][xy_prev];
            }
        }

        let labels: Vec<String> = (0..n)
            .map(|x| self.label_of(&self.exps_of(x as u64)))
            .collect();
        let gen_elems: Vec<(String, usize)> = (0..k)
            .map(|i| {
                let exps = self.collect(&[(i, 1)])?;
                Ok((self.gens[i].clone(), self.index_of(&exps)))
            })
            .collect::<Result<_>>()?;

        let table = GroupTable::from_parts(n, mul, labels, gen_elems)?;

        // Re-evaluate the defining relations inside the finished table.
        let elem = |w: &Word| -> usize {
            let mut acc = 0usize;
            for &(g, e) in w {
                let ge = table.pow(table.generator(g), e);
                acc = table.mul(acc, ge);
            }
            acc
        };
        for i in 0..k {
            let lhs = table.pow(table.generator(i), self.rel_orders[i]);
            let rhs = elem(&self.power_words[i]);
            if lhs != rhs {
                return Err(Error::InconsistentPresentation(format!(
                    "power relation fails for {}: {}^{} = {} but the word gives {}",
                    self.gens[i],
                    self.gens[i],
                    self.rel_orders[i],
                    table.label(lhs),
                    table.label(rhs)
                )));
            }
        }
        for ((i, j), word) in &self.conj_words {
            let gi = table.generator(*i);
            let gj = table.generator(*j);
            let lhs = table.mul(table.mul(table.inv(gi), gj), gi);
            let rhs = elem(word);
            if lhs != rhs {
                return Err(Error::InconsistentPresentation(format!(
                    "conjugation relation fails for {}^{}",
                    self.gens[*j], self.gens[*i]
                )));
            }
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_pres(n: u64) -> PcPresentation {
        PcPresentation::new(vec!["g"], vec![n])
    }

    #[test]
    fn cyclic_six() {
        let t = cyclic_pres(6).build(4096).unwrap();
        assert_eq!(t.order(), 6);
        let g = t.generator(0);
        for x in 0..6u64 {
            let e = t.pow(g, x);
            let expect = 6 / gcd(x, 6);
            assert_eq!(t.element_order(e) as u64, if x == 0 { 1 } else { expect });
        }
        assert!(t.is_abelian());
        assert!(t.is_cyclic());
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn dihedral_six_from_inversion_action() {
        // C3 extended by an involution acting by inversion.
        let p = PcPresentation::new(vec!["h", "g"], vec![2, 3]).with_conj(0, 1, vec![(1, 2)]);
        let t = p.build(4096).unwrap();
        assert_eq!(t.order(), 6);
        assert!(!t.is_abelian());
        let invols = (0..6).filter(|&x| x != 0 && t.element_order(x) == 2).count();
        assert_eq!(invols, 3);
    }

    #[test]
    fn quaternion_shape() {
        // b^2 = a^2, a^b = a^3: the order-8 group with a unique involution.
        let p = PcPresentation::new(vec!["b", "a"], vec![2, 4])
            .with_power(0, vec![(1, 2)])
            .with_conj(0, 1, vec![(1, 3)]);
        let t = p.build(4096).unwrap();
        assert_eq!(t.order(), 8);
        let invols = (0..8).filter(|&x| x != 0 && t.element_order(x) == 2).count();
        assert_eq!(invols, 1);
    }

    #[test]
    fn rejects_self_referencing_power_word() {
        let p = PcPresentation::new(vec!["g"], vec![4]).with_power(0, vec![(0, 2)]);
        assert!(matches!(
            p.build(4096),
            Err(Error::InconsistentPresentation(_))
        ));
    }

    #[test]
    fn rejects_cap_overflow() {
        let p = cyclic_pres(10_000);
        assert!(matches!(p.build(4096), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn collect_handles_inverted_word_order() {
        let p = PcPresentation::new(vec!["h", "g"], vec![2, 3]).with_conj(0, 1, vec![(1, 2)]);
        // g*h collected must be h*g^2 since h g = g^{-1} h ... as exponents.
        let exps = p.collect(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(exps, vec![1, 2]);
    }
}

//! Dense multiplication tables with validated group axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{closure, commutator_subgroup, power_subgroup, Subgroup};

/// Full associativity is checked up to this order; above it, a fixed-seed
/// random sample of 10^5 triples is used instead.
pub const ASSOC_FULL_CHECK_CAP: usize = 256;

const ASSOC_SAMPLE: usize = 100_000;
const ASSOC_SEED: u64 = 0xA55C_1A7E;

/// A finite group as a dense table. Element 0 is always the identity;
/// elements are dense indices in `[0, order)`.
#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    gens: Vec<(String, usize)>,
    abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureProfile {
    pub is_cyclic: bool,
    pub is_abelian: bool,
    pub center_size: usize,
    /// Minimum number of generators, computed from the Frattini-type quotient
    /// G / (G^p [G,G]).
    pub min_generators: u32,
    /// Whether some element has order |G|/p, i.e. generates a cyclic subgroup
    /// of index p.
    pub has_cyclic_subgroup_of_index_p: bool,
}

impl GroupTable {
    /// Wrap a raw table, compute inverses, and validate the group axioms.
    pub(crate) fn from_parts(
        order: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        gens: Vec<(String, usize)>,
    ) -> Result<Self> {
        assert_eq!(mul.len(), order * order);
        assert_eq!(labels.len(), order);
        let mut t = GroupTable {
            order,
            mul,
            inv: vec![0; order],
            labels,
            gens,
            abelian: false,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(Error::InconsistentPresentation("empty table".into()));
        }
        // Identity law.
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::InconsistentPresentation(format!(
                    "element 0 is not an identity at {x}"
                )));
            }
        }
        // Every row and column is a permutation.
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for x in 0..n {
            seen_row.fill(false);
            seen_col.fill(false);
            for y in 0..n {
                let r = self.mul(x, y);
                let c = self.mul(y, x);
                if seen_row[r] || seen_col[c] {
                    return Err(Error::InconsistentPresentation(format!(
                        "row or column {x} is not a permutation"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // Inverses.
        for x in 0..n {
            let mut found = None;
            for y in 0..n {
                if self.mul(x, y) == 0 {
                    found = Some(y);
                    break;
                }
            }
            let y = found.ok_or_else(|| {
                Error::InconsistentPresentation(format!("element {x} has no inverse"))
            })?;
            if self.mul(y, x) != 0 {
                return Err(Error::InconsistentPresentation(format!(
                    "left and right inverses of {x} disagree"
                )));
            }
            self.inv[x] = y as u32;
        }
        // Associativity: exhaustive below the cap, seeded sample above.
        if n <= ASSOC_FULL_CHECK_CAP {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(Error::InconsistentPresentation(format!(
                                "associativity fails at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED);
            for _ in 0..ASSOC_SAMPLE {
                let x = rng.gen_range(0..n);
                let y = rng.gen_range(0..n);
                let z = rng.gen_range(0..n);
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Err(Error::InconsistentPresentation(format!(
                        "associativity fails at ({x},{y},{z})"
                    )));
                }
            }
        }
        self.abelian = (0..n).all(|x| (x..n).all(|y| self.mul(x, y) == self.mul(y, x)));
        Ok(())
    }

    /// Direct product table; labels are pairs of the factor labels.
    pub fn direct_product(a: &GroupTable, b: &GroupTable, cap: u64) -> Result<Self> {
        let order = (a.order as u64)
            .checked_mul(b.order as u64)
            .ok_or(Error::CapExceeded { required: u64::MAX, cap })?;
        if order > cap {
            return Err(Error::CapExceeded { required: order, cap });
        }
        let n = order as usize;
        let nb = b.order;
        let mut mul = vec![0u32; n * n];
        for xa in 0..a.order {
            for xb in 0..b.order {
                let x = xa * nb + xb;
                for ya in 0..a.order {
                    for yb in 0..b.order {
                        let y = ya * nb + yb;
                        mul[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
                    }
                }
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb]))
            .collect();
        GroupTable::from_parts(n, mul, labels, Vec::new())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    #[inline]
    pub fn id(&self) -> usize {
        0
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Designated generators, in presentation order.
    pub fn generators(&self) -> &[(String, usize)] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> usize {
        self.gens[i].1
    }

    pub fn gen_elem(&self, name: &str) -> Option<usize> {
        self.gens.iter().find(|(n, _)| n == name).map(|&(_, e)| e)
    }

    pub fn pow(&self, x: usize, e: u64) -> usize {
        let mut base = x;
        let mut e = e;
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// [x,y] = x^{-1} y^{-1} x y
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// Least k >= 1 with x^k = 1.
    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|x| self.element_order(x) == self.order)
    }

    pub fn center_size(&self) -> usize {
        (0..self.order)
            .filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
            .count()
    }

    pub fn has_element_of_order(&self, k: usize) -> bool {
        (0..self.order).any(|x| self.element_order(x) == k)
    }

    /// If |G| = p^k for the given prime, returns k.
    pub fn p_exponent(&self, p: u64) -> Option<u32> {
        let mut n = self.order as u64;
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        (n == 1).then_some(k)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.p_exponent(p).is_some()
    }

    /// The prime p with |G| = p^k, if the order is a prime power > 1.
    pub fn p_group_prime(&self) -> Option<u64> {
        let n = self.order as u64;
        if n < 2 {
            return None;
        }
        let p = smallest_prime_divisor(n);
        self.is_p_group(p).then_some(p)
    }

    pub fn smallest_prime_divisor(&self) -> Option<u64> {
        let n = self.order as u64;
        (n >= 2).then(|| smallest_prime_divisor(n))
    }

    /// Structure facts used by the theorem verifiers. Requires a p-group for
    /// the generator-rank and index-p fields.
    pub fn structure_profile(&self, p: u64) -> Result<StructureProfile> {
        let k = self.p_exponent(p).ok_or(Error::NotPGroup {
            order: self.order as u64,
            p,
        })?;
        let whole = Subgroup::whole(self);
        let gp = power_subgroup(self, &whole, p);
        let comm = commutator_subgroup(self, &whole, &whole);
        let frattini_like = closure(
            self,
            &gp.members()
                .iter()
                .chain(comm.members().iter())
                .collect::<Vec<_>>(),
        )?;
        let quotient = self.order / frattini_like.order();
        let mut r = 0u32;
        let mut q = quotient as u64;
        while q > 1 {
            q /= p;
            r += 1;
        }
        let _ = k;
        Ok(StructureProfile {
            is_cyclic: self.is_cyclic(),
            is_abelian: self.abelian,
            center_size: self.center_size(),
            min_generators: r,
            has_cyclic_subgroup_of_index_p: self.order as u64 % p == 0
                && self.has_element_of_order(self.order / p as usize),
        })
    }
}

pub(crate) fn smallest_prime_divisor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable(order={})", self.order)
    }
}

//! Build the catalog families as concrete tables and verify their defining
//! relations inside the finished table.
//!
//! The pc generators are listed head-first (the extension generator before
//! the normal part) so that all conjugation words land in later generators;
//! normal-form exponent ranges are then fixed by the relative orders and the
//! enumerated order is verified against the expected order of the family.

use crate::error::{Error, Result};
use crate::group::{GroupTable, PcPresentation, Word};

use super::PaperGroupSpec;

fn pow2(e: u32) -> u64 {
    1u64 << e
}

pub(crate) fn is_prime_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Reduce a signed exponent into [0, modulus).
fn norm_exp(value: i128, modulus: u64) -> u64 {
    let m = modulus as i128;
    (((value % m) + m) % m) as u64
}

fn word(parts: &[(usize, u64)]) -> Word {
    parts.iter().copied().filter(|&(_, e)| e > 0).collect()
}

/// Build the group described by a validated spec and check every defining
/// relation of its family in the resulting table.
pub fn build_paper_group(spec: &PaperGroupSpec, cap: u64) -> Result<GroupTable> {
    spec.validate()?;
    let expected = spec.order();
    if expected > cap {
        return Err(Error::CapExceeded {
            required: expected,
            cap,
        });
    }
    let t = match spec {
        PaperGroupSpec::Cyclic(n) => PcPresentation::new(vec!["g"], vec![*n]).build(cap)?,
        PaperGroupSpec::Abelian(ns) => {
            let names: Vec<String> = (1..=ns.len()).map(|i| format!("g{i}")).collect();
            PcPresentation::new(names, ns.clone()).build(cap)?
        }
        PaperGroupSpec::Dsd(ns) => {
            let mut names = vec!["h".to_string()];
            names.extend((1..=ns.len()).map(|i| format!("g{i}")));
            let mut orders = vec![2u64];
            orders.extend_from_slice(ns);
            let mut p = PcPresentation::new(names, orders);
            for (i, &n) in ns.iter().enumerate() {
                // h g h = g^{n-1}
                p = p.with_conj(0, i + 1, word(&[(i + 1, n - 1)]));
            }
            p.build(cap)?
        }
        PaperGroupSpec::G1 { alpha, beta, gamma } => {
            // gens (b, a, c); a^b = a c, c central.
            let p = PcPresentation::new(
                vec!["b", "a", "c"],
                vec![pow2(*beta), pow2(*alpha), pow2(*gamma)],
            )
            .with_conj(0, 1, word(&[(1, 1), (2, 1)]));
            p.build(cap)?
        }
        PaperGroupSpec::G2 { alpha, beta, gamma } => {
            // gens (b, a); a^b = a^{1+2^{α-γ}}.
            let m = norm_exp(1 + pow2(alpha - gamma) as i128, pow2(*alpha));
            let p = PcPresentation::new(vec!["b", "a"], vec![pow2(*beta), pow2(*alpha)])
                .with_conj(0, 1, word(&[(1, m)]));
            p.build(cap)?
        }
        PaperGroupSpec::G3 {
            alpha,
            beta,
            gamma,
            sigma,
        } => {
            // gens (b, a, c); a^b = a^{1+2^{α-γ}} c,
            // c^b = a^{-2^{2(α-γ)}} c^{1-2^{α-γ}}.
            let oa = pow2(*alpha);
            let oc = pow2(*sigma);
            let a_exp = norm_exp(1 + pow2(alpha - gamma) as i128, oa);
            let cb_a = norm_exp(-(1i128 << (2 * (alpha - gamma))), oa);
            let cb_c = norm_exp(1 - pow2(alpha - gamma) as i128, oc);
            let p = PcPresentation::new(vec!["b", "a", "c"], vec![pow2(*beta), oa, oc])
                .with_conj(0, 1, word(&[(1, a_exp), (2, 1)]))
                .with_conj(0, 2, word(&[(1, cb_a), (2, cb_c)]));
            p.build(cap)?
        }
        PaperGroupSpec::G4 { gamma } => {
            // gens (b, a, c) with relative orders 2^γ, 2^{γ+1}, 2^{γ-1};
            // b^{2^γ} = a^{2^γ}, a^b = a^3 c, c^b = a^{-4} c^{-1}.
            let oa = pow2(gamma + 1);
            let oc = pow2(gamma - 1);
            let cb_a = norm_exp(-4, oa);
            let cb_c = if oc > 1 { oc - 1 } else { 0 };
            let p = PcPresentation::new(vec!["b", "a", "c"], vec![pow2(*gamma), oa, oc])
                .with_power(0, word(&[(1, pow2(*gamma))]))
                .with_conj(0, 1, word(&[(1, 3), (2, 1)]))
                .with_conj(0, 2, word(&[(1, cb_a), (2, cb_c)]));
            p.build(cap)?
        }
        PaperGroupSpec::Direct(a, b) => {
            let ta = build_paper_group(a, cap)?;
            let tb = build_paper_group(b, cap)?;
            GroupTable::direct_product(&ta, &tb, cap)?
        }
    };

    if t.order() as u64 != expected {
        return Err(Error::InconsistentPresentation(format!(
            "{spec}: enumerated order {} differs from the expected order {expected}",
            t.order()
        )));
    }
    verify_family_relations(spec, &t)?;
    Ok(t)
}

fn require(cond: bool, spec: &PaperGroupSpec, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InconsistentPresentation(format!(
            "{spec}: relation check failed: {what}"
        )))
    }
}

/// Check the defining relations of the family in the built table: element
/// orders, commutator identities, centrality, and for dsd that the
/// non-abelian coset consists of involutions.
pub fn verify_family_relations(spec: &PaperGroupSpec, t: &GroupTable) -> Result<()> {
    match spec {
        PaperGroupSpec::Cyclic(n) => {
            let g = t.gen_elem("g").expect("generator g");
            require(t.element_order(g) as u64 == *n, spec, "o(g) = n")?;
        }
        PaperGroupSpec::Abelian(ns) => {
            require(t.is_abelian(), spec, "abelian")?;
            for (i, &n) in ns.iter().enumerate() {
                let g = t.gen_elem(&format!("g{}", i + 1)).expect("generator");
                require(t.element_order(g) as u64 == n, spec, "o(g_i) = n_i")?;
            }
        }
        PaperGroupSpec::Dsd(ns) => {
            let h = t.gen_elem("h").expect("generator h");
            require(t.element_order(h) == 2, spec, "h^2 = 1")?;
            for (i, &n) in ns.iter().enumerate() {
                let g = t.gen_elem(&format!("g{}", i + 1)).expect("generator");
                require(t.element_order(g) as u64 == n, spec, "o(g_i) = n_i")?;
                let conj = t.mul(t.mul(h, g), h);
                require(conj == t.inv(g), spec, "h g h = g^{-1}")?;
            }
            // every element outside A = <g_1,...,g_r> has order <= 2
            let a_sub = crate::group::closure(
                t,
                &(1..=ns.len())
                    .map(|i| t.gen_elem(&format!("g{i}")).unwrap())
                    .collect::<Vec<_>>(),
            )?;
            require(2 * a_sub.order() == t.order(), spec, "[G : A] = 2")?;
            for x in 0..t.order() {
                if !a_sub.contains(x) {
                    require(t.mul(x, x) == t.id(), spec, "every element of G \\ A is an involution")?;
                }
            }
        }
        PaperGroupSpec::G1 { alpha, beta, gamma } => {
            let (a, b, c) = abc(t);
            require(t.element_order(a) as u64 == pow2(*alpha), spec, "o(a) = 2^α")?;
            require(t.element_order(b) as u64 == pow2(*beta), spec, "o(b) = 2^β")?;
            require(t.element_order(c) as u64 == pow2(*gamma), spec, "o(c) = 2^γ")?;
            require(t.commutator(a, b) == c, spec, "[a,b] = c")?;
            require(t.commutator(a, c) == t.id(), spec, "[a,c] = 1")?;
            require(t.commutator(b, c) == t.id(), spec, "[b,c] = 1")?;
        }
        PaperGroupSpec::G2 { alpha, beta, gamma } => {
            let a = t.gen_elem("a").expect("a");
            let b = t.gen_elem("b").expect("b");
            require(t.element_order(a) as u64 == pow2(*alpha), spec, "o(a) = 2^α")?;
            require(t.element_order(b) as u64 == pow2(*beta), spec, "o(b) = 2^β")?;
            let com = t.commutator(a, b);
            require(
                com == t.pow(a, pow2(alpha - gamma)),
                spec,
                "[a,b] = a^{2^{α-γ}}",
            )?;
            require(
                t.element_order(com) as u64 == pow2(*gamma),
                spec,
                "o([a,b]) = 2^γ",
            )?;
        }
        PaperGroupSpec::G3 {
            alpha,
            beta,
            gamma,
            sigma,
        } => {
            let (a, b, c) = abc(t);
            require(t.element_order(a) as u64 == pow2(*alpha), spec, "o(a) = 2^α")?;
            require(t.element_order(b) as u64 == pow2(*beta), spec, "o(b) = 2^β")?;
            require(t.element_order(c) as u64 == pow2(*sigma), spec, "o(c) = 2^σ")?;
            let com = t.commutator(a, b);
            require(
                com == t.mul(t.pow(a, pow2(alpha - gamma)), c),
                spec,
                "[a,b] = a^{2^{α-γ}} c",
            )?;
            require(
                t.element_order(com) as u64 == pow2(*gamma),
                spec,
                "o([a,b]) = 2^γ",
            )?;
            let oa = pow2(*alpha);
            let oc = pow2(*sigma);
            let want = t.mul(
                t.pow(a, norm_exp(-(1i128 << (2 * (alpha - gamma))), oa)),
                t.pow(c, norm_exp(-(pow2(alpha - gamma) as i128), oc)),
            );
            require(t.commutator(c, b) == want, spec, "[c,b] = a^{-2^{2(α-γ)}} c^{-2^{α-γ}}")?;
            require(t.commutator(a, c) == t.id(), spec, "[a,c] = 1")?;
        }
        PaperGroupSpec::G4 { gamma } => {
            let (a, b, c) = abc(t);
            let oa = pow2(gamma + 1);
            require(t.element_order(a) as u64 == oa, spec, "o(a) = 2^{γ+1}")?;
            require(t.element_order(b) as u64 == oa, spec, "o(b) = 2^{γ+1}")?;
            let oc = pow2(*gamma) / 2;
            require(
                t.element_order(c) as u64 == oc.max(1),
                spec,
                "o(c) = 2^{γ-1}",
            )?;
            let com = t.commutator(a, b);
            require(
                com == t.mul(t.pow(a, 2), c),
                spec,
                "[a,b] = a^2 c",
            )?;
            require(
                t.element_order(com) as u64 == pow2(*gamma),
                spec,
                "o([a,b]) = 2^γ",
            )?;
            let want = t.mul(t.pow(a, norm_exp(-4, oa)), t.inv(t.pow(c, 2)));
            require(t.commutator(c, b) == want, spec, "[c,b] = a^{-4} c^{-2}")?;
            require(
                t.pow(a, pow2(*gamma)) == t.pow(b, pow2(*gamma)),
                spec,
                "a^{2^γ} = b^{2^γ}",
            )?;
            require(t.commutator(a, c) == t.id(), spec, "[a,c] = 1")?;
        }
        PaperGroupSpec::Direct(..) => {}
    }
    Ok(())
}

fn abc(t: &GroupTable) -> (usize, usize, usize) {
    (
        t.gen_elem("a").expect("a"),
        t.gen_elem("b").expect("b"),
        t.gen_elem("c").expect("c"),
    )
}

//! The catalog of concrete group families the workbench knows how to build:
//! cyclic and abelian groups by invariant factors, generalized dihedral
//! extensions dsd(A) = A x| C2 (the involution inverting A), and four
//! two-generator 2-group families G1..G4 given by power/commutator data.

mod build;
mod extremal;
mod verify;

pub use build::build_paper_group;
pub use extremal::{
    declared_length, extremal_sequence, known_free_sequence, ExtremalSeq, ExtremalTag,
};
pub use verify::{
    reverify_witness, verify_egz_lower_witness, verify_theorem, Claim, ClaimStatus, TheoremTag,
    VerificationReport, GAO_EXHAUSTIVE_CAP,
};

use crate::error::{Error, Result};

/// 2^e, saturating far above any buildable table size.
pub(crate) fn pow2_sat(e: u32) -> u64 {
    if e >= 63 {
        u64::MAX
    } else {
        1u64 << e
    }
}

/// Closed-form Loewy length of the four 2-group families.
pub fn closed_form_loewy(spec: &PaperGroupSpec) -> Result<u64> {
    spec.validate()?;
    match spec {
        PaperGroupSpec::G1 { alpha, beta, gamma } => Ok(pow2_sat(*alpha)
            .saturating_add(pow2_sat(*beta))
            .saturating_add(pow2_sat(gamma + 1))
            - 3),
        PaperGroupSpec::G2 { alpha, beta, .. } => {
            Ok(pow2_sat(*alpha).saturating_add(pow2_sat(*beta)) - 1)
        }
        PaperGroupSpec::G3 {
            alpha, beta, sigma, ..
        } => Ok(pow2_sat(*alpha)
            .saturating_add(pow2_sat(*beta))
            .saturating_add(pow2_sat(sigma + 1))
            - 3),
        PaperGroupSpec::G4 { gamma } => Ok(pow2_sat(gamma + 2) - 3),
        other => Err(Error::WrongFamily(format!(
            "no closed-form Loewy length for {other}"
        ))),
    }
}

pub const DEFAULT_TABLE_CAP: u64 = 4096;

/// A buildable group description. Display prints the canonical spec string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PaperGroupSpec {
    Cyclic(u64),
    Abelian(Vec<u64>),
    /// dsd(n1,...,nr): the abelian group with these invariant factors,
    /// extended by an involution acting by inversion.
    Dsd(Vec<u64>),
    G1 {
        alpha: u32,
        beta: u32,
        gamma: u32,
    },
    G2 {
        alpha: u32,
        beta: u32,
        gamma: u32,
    },
    G3 {
        alpha: u32,
        beta: u32,
        gamma: u32,
        sigma: u32,
    },
    G4 {
        gamma: u32,
    },
    Direct(Box<PaperGroupSpec>, Box<PaperGroupSpec>),
}

impl std::fmt::Display for PaperGroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PaperGroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            PaperGroupSpec::Abelian(ns) => write!(f, "abelian({})", join(ns)),
            PaperGroupSpec::Dsd(ns) => write!(f, "dsd({})", join(ns)),
            PaperGroupSpec::G1 { alpha, beta, gamma } => {
                write!(f, "G1({alpha},{beta},{gamma})")
            }
            PaperGroupSpec::G2 { alpha, beta, gamma } => {
                write!(f, "G2({alpha},{beta},{gamma})")
            }
            PaperGroupSpec::G3 {
                alpha,
                beta,
                gamma,
                sigma,
            } => write!(f, "G3({alpha},{beta},{gamma},{sigma})"),
            PaperGroupSpec::G4 { gamma } => write!(f, "G4({gamma})"),
            PaperGroupSpec::Direct(a, b) => write!(f, "direct({a},{b})"),
        }
    }
}

fn join(ns: &[u64]) -> String {
    ns.iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn check_chain(ns: &[u64]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::BadFactors("empty invariant factor list".into()));
    }
    for n in ns {
        if *n < 2 {
            return Err(Error::BadFactors(format!("invariant factor {n} < 2")));
        }
    }
    for w in ns.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::BadFactors(format!(
                "n1 | n2 | ... | nr violated: {} does not divide {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

impl PaperGroupSpec {
    /// Validate the family parameters; error messages cite the violated
    /// constraint.
    pub fn validate(&self) -> Result<()> {
        if let Some(e) = self.max_exponent() {
            if e > 60 {
                return Err(Error::BadParameters(format!(
                    "exponent {e} is far beyond any buildable table"
                )));
            }
        }
        match self {
            PaperGroupSpec::Cyclic(n) => {
                if *n < 2 {
                    return Err(Error::BadParameters("cyclic(n) requires n >= 2".into()));
                }
                Ok(())
            }
            PaperGroupSpec::Abelian(ns) | PaperGroupSpec::Dsd(ns) => check_chain(ns),
            PaperGroupSpec::G1 { alpha, beta, gamma } => {
                if !(alpha >= beta && beta >= gamma && *gamma >= 1) {
                    return Err(Error::BadParameters(format!(
                        "G1 requires α ≥ β ≥ γ ≥ 1, got ({alpha},{beta},{gamma})"
                    )));
                }
                Ok(())
            }
            PaperGroupSpec::G2 { alpha, beta, gamma } => {
                if *gamma < 1 || beta < gamma {
                    return Err(Error::BadParameters(format!(
                        "G2 requires β ≥ γ ≥ 1, got ({alpha},{beta},{gamma})"
                    )));
                }
                if alpha + beta <= 3 {
                    return Err(Error::BadParameters(format!(
                        "G2 requires α+β>3, got ({alpha},{beta},{gamma})"
                    )));
                }
                if *alpha < 2 * gamma {
                    return Err(Error::BadParameters(format!(
                        "G2 requires α ≥ 2γ, got ({alpha},{beta},{gamma})"
                    )));
                }
                Ok(())
            }
            PaperGroupSpec::G3 {
                alpha,
                beta,
                gamma,
                sigma,
            } => {
                if !(beta >= gamma && gamma > sigma && *sigma >= 1) {
                    return Err(Error::BadParameters(format!(
                        "G3 requires β ≥ γ > σ ≥ 1, got ({alpha},{beta},{gamma},{sigma})"
                    )));
                }
                if alpha + sigma < 2 * gamma {
                    return Err(Error::BadParameters(format!(
                        "G3 requires α+σ ≥ 2γ, got ({alpha},{beta},{gamma},{sigma})"
                    )));
                }
                Ok(())
            }
            PaperGroupSpec::G4 { gamma } => {
                if *gamma < 1 {
                    return Err(Error::BadParameters("G4 requires γ ≥ 1".into()));
                }
                Ok(())
            }
            PaperGroupSpec::Direct(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    /// Expected order of the built table (saturating far above any cap).
    pub fn order(&self) -> u64 {
        let sat_product = |ns: &[u64]| {
            ns.iter()
                .fold(1u64, |acc, &n| acc.saturating_mul(n))
        };
        match self {
            PaperGroupSpec::Cyclic(n) => *n,
            PaperGroupSpec::Abelian(ns) => sat_product(ns),
            PaperGroupSpec::Dsd(ns) => sat_product(ns).saturating_mul(2),
            PaperGroupSpec::G1 { alpha, beta, gamma } => pow2_sat(alpha + beta + gamma),
            PaperGroupSpec::G2 { alpha, beta, .. } => pow2_sat(alpha + beta),
            PaperGroupSpec::G3 {
                alpha, beta, sigma, ..
            } => pow2_sat(alpha + beta + sigma),
            PaperGroupSpec::G4 { gamma } => pow2_sat(3 * gamma),
            PaperGroupSpec::Direct(a, b) => a.order().saturating_mul(b.order()),
        }
    }

    fn max_exponent(&self) -> Option<u32> {
        match self {
            PaperGroupSpec::G1 { alpha, beta, gamma } => Some(*alpha.max(beta).max(gamma)),
            PaperGroupSpec::G2 { alpha, beta, gamma } => Some(*alpha.max(beta).max(gamma)),
            PaperGroupSpec::G3 {
                alpha,
                beta,
                gamma,
                sigma,
            } => Some(*alpha.max(beta).max(gamma).max(sigma)),
            PaperGroupSpec::G4 { gamma } => Some(*gamma),
            _ => None,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            PaperGroupSpec::Cyclic(_) => "cyclic",
            PaperGroupSpec::Abelian(_) => "abelian",
            PaperGroupSpec::Dsd(_) => "dsd",
            PaperGroupSpec::G1 { .. } => "G1",
            PaperGroupSpec::G2 { .. } => "G2",
            PaperGroupSpec::G3 { .. } => "G3",
            PaperGroupSpec::G4 { .. } => "G4",
            PaperGroupSpec::Direct(..) => "direct",
        }
    }

    /// The invariant factors of the abelian group A when this spec is dsd(A)
    /// or itself abelian.
    pub fn abelian_factors(&self) -> Option<&[u64]> {
        match self {
            PaperGroupSpec::Cyclic(n) => Some(std::slice::from_ref(n)),
            PaperGroupSpec::Abelian(ns) | PaperGroupSpec::Dsd(ns) => Some(ns),
            _ => None,
        }
    }
}

/// Deterministic catalog of every spec with order at most `max_order`:
/// cyclic groups, abelian p-groups of rank >= 2, dsd(A) over every abelian A,
/// and all valid G1..G4 parameter tuples, sorted by (order, family, spec).
pub fn catalog(max_order: u64) -> Vec<PaperGroupSpec> {
    let mut out: Vec<PaperGroupSpec> = Vec::new();
    if max_order < 2 {
        return out;
    }
    for n in 2..=max_order {
        out.push(PaperGroupSpec::Cyclic(n));
    }
    // abelian p-groups of rank >= 2
    for p in primes_upto(max_order) {
        let mut chains: Vec<Vec<u64>> = Vec::new();
        grow_p_chains(p, max_order, &mut vec![], &mut chains);
        for c in chains {
            if c.len() >= 2 {
                out.push(PaperGroupSpec::Abelian(c));
            }
        }
    }
    // dsd(A) for every abelian A with 2|A| <= max_order
    let mut chains: Vec<Vec<u64>> = Vec::new();
    grow_chains(max_order / 2, &mut vec![], &mut chains);
    for c in chains {
        out.push(PaperGroupSpec::Dsd(c));
    }
    // G1..G4
    let max_exp = 63u32.min(max_order.ilog2());
    for alpha in 1..=max_exp {
        for beta in 1..=alpha {
            for gamma in 1..=beta {
                let spec = PaperGroupSpec::G1 { alpha, beta, gamma };
                if spec.order() <= max_order {
                    out.push(spec);
                }
            }
        }
    }
    for alpha in 1..=max_exp {
        for beta in 1..=max_exp {
            for gamma in 1..=max_exp {
                let spec = PaperGroupSpec::G2 { alpha, beta, gamma };
                if spec.validate().is_ok() && spec.order() <= max_order {
                    out.push(spec);
                }
            }
        }
    }
    for alpha in 1..=max_exp {
        for beta in 1..=max_exp {
            for gamma in 1..=max_exp {
                for sigma in 1..=max_exp {
                    let spec = PaperGroupSpec::G3 {
                        alpha,
                        beta,
                        gamma,
                        sigma,
                    };
                    if spec.validate().is_ok() && spec.order() <= max_order {
                        out.push(spec);
                    }
                }
            }
        }
    }
    for gamma in 1..=max_exp {
        let spec = PaperGroupSpec::G4 { gamma };
        if spec.order() <= max_order {
            out.push(spec);
        }
    }

    out.sort_by_key(|s| (s.order(), s.family_name().to_string(), s.to_string()));
    out.dedup_by_key(|s| s.to_string());
    out
}

fn primes_upto(n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    'outer: for p in 2..=n {
        for q in 2..p {
            if q * q > p {
                break;
            }
            if p % q == 0 {
                continue 'outer;
            }
        }
        primes.push(p);
    }
    primes
}

/// All divisibility chains of prime powers of `p` with product <= cap.
fn grow_p_chains(p: u64, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    let product: u64 = cur.iter().product();
    let min = *cur.last().unwrap_or(&p);
    let mut f = min;
    loop {
        // next factor must be a multiple (power of p >= last)
        if product.saturating_mul(f) > cap {
            break;
        }
        cur.push(f);
        grow_p_chains(p, cap, cur, out);
        cur.pop();
        match f.checked_mul(p) {
            Some(next) => f = next,
            None => break,
        }
    }
}

/// All invariant-factor chains n1 | ... | nr with product <= cap.
fn grow_chains(cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    let product: u64 = cur.iter().product();
    let base = *cur.last().unwrap_or(&1);
    for mult in 2.. {
        // candidates are multiples of the last factor
        let f = if cur.is_empty() { mult } else { base * (mult - 1) };
        if f < 2 {
            continue;
        }
        if product.saturating_mul(f) > cap {
            break;
        }
        cur.push(f);
        grow_chains(cap, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_display() {
        let s = PaperGroupSpec::G3 {
            alpha: 3,
            beta: 2,
            gamma: 2,
            sigma: 1,
        };
        assert_eq!(s.to_string(), "G3(3,2,2,1)");
        let d = PaperGroupSpec::Direct(
            Box::new(PaperGroupSpec::Dsd(vec![3])),
            Box::new(PaperGroupSpec::Cyclic(2)),
        );
        assert_eq!(d.to_string(), "direct(dsd(3),cyclic(2))");
    }

    #[test]
    fn validation_cites_constraints() {
        let bad = PaperGroupSpec::G2 {
            alpha: 1,
            beta: 1,
            gamma: 1,
        };
        let msg = bad.validate().unwrap_err().to_string();
        assert!(msg.contains("α ≥ 2γ") || msg.contains("α+β>3"), "{msg}");

        let good = PaperGroupSpec::G2 {
            alpha: 2,
            beta: 2,
            gamma: 1,
        };
        assert!(good.validate().is_ok());

        let bad3 = PaperGroupSpec::G3 {
            alpha: 1,
            beta: 2,
            gamma: 2,
            sigma: 1,
        };
        assert!(bad3.validate().unwrap_err().to_string().contains("α+σ ≥ 2γ"));
    }

    #[test]
    fn catalog_max_order_two() {
        let c = catalog(2);
        assert_eq!(c, vec![PaperGroupSpec::Cyclic(2)]);
    }

    #[test]
    fn catalog_max_order_eight() {
        let c = catalog(8);
        let strings: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        assert!(strings.contains(&"G1(1,1,1)".to_string()));
        assert!(strings.contains(&"G4(1)".to_string()));
        assert!(strings.contains(&"dsd(3)".to_string()));
        assert!(strings.contains(&"dsd(4)".to_string()));
        assert!(!strings.iter().any(|s| s.starts_with("G2")));
        for s in &c {
            assert!(s.order() <= 8);
            assert!(s.validate().is_ok());
        }
    }

    #[test]
    fn catalog_sixteen_has_g2_but_no_g3() {
        let strings: Vec<String> = catalog(16).iter().map(|s| s.to_string()).collect();
        assert!(strings.contains(&"G2(2,2,1)".to_string()));
        assert!(strings.contains(&"G2(3,1,1)".to_string()));
        assert!(!strings.iter().any(|s| s.starts_with("G3")));
    }

    #[test]
    fn catalog_sixty_four_has_the_one_g3() {
        let g3s: Vec<String> = catalog(64)
            .iter()
            .filter(|s| s.family_name() == "G3")
            .map(|s| s.to_string())
            .collect();
        assert_eq!(g3s, vec!["G3(3,2,2,1)".to_string()]);
    }

    #[test]
    fn chains_are_divisibility_chains() {
        for spec in catalog(64) {
            if let Some(ns) = spec.abelian_factors() {
                for w in ns.windows(2) {
                    assert_eq!(w[1] % w[0], 0);
                }
            }
        }
    }
}

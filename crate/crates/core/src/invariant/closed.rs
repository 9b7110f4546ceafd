//! Closed forms for the invariants of finite abelian groups given by their
//! invariant factor decomposition.

use crate::error::{Error, Result};

/// Result of the closed-form evaluation. When `applicable` is false the
/// d-value is only the basis-sequence lower bound and no E-value is claimed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForms {
    pub d_value: u64,
    pub e_value: Option<u64>,
    pub applicable: bool,
}

/// Evaluate the abelian closed forms for invariant factors n_1 | n_2 | ... |
/// n_r. For a p-group C_{p^a1} x ... x C_{p^ar} this gives the exact values
/// d = sum (p^ai - 1) and E = p^a + sum p^ai - r with |A| = p^a; otherwise
/// only the basis-sequence lower bound for d is returned with
/// `applicable = false`.
pub fn abelian_closed_forms(factors: &[u64], p: Option<u64>) -> Result<ClosedForms> {
    if factors.is_empty() {
        return Err(Error::BadFactors("empty factor list".into()));
    }
    for f in factors {
        if *f < 2 {
            return Err(Error::BadFactors(format!("factor {f} < 2")));
        }
    }
    for w in factors.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::BadFactors(format!(
                "divisibility chain violated: {} does not divide {}",
                w[0], w[1]
            )));
        }
    }
    let prime = match p {
        Some(p) => p,
        None => smallest_prime(factors[0]),
    };
    let is_p_group = factors.iter().all(|&f| is_power_of(f, prime));
    if p.is_some() && !is_p_group {
        return Err(Error::BadFactors(format!(
            "not every factor is a power of {prime}"
        )));
    }

    let d_lower: u64 = factors.iter().map(|f| f - 1).sum();
    if is_p_group {
        let order: u64 = factors.iter().product();
        let e = order + factors.iter().sum::<u64>() - factors.len() as u64;
        Ok(ClosedForms {
            d_value: d_lower,
            e_value: Some(e),
            applicable: true,
        })
    } else {
        Ok(ClosedForms {
            d_value: d_lower,
            e_value: None,
            applicable: false,
        })
    }
}

fn smallest_prime(n: u64) -> u64 {
    crate::group::smallest_prime_divisor(n)
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three() {
        let cf = abelian_closed_forms(&[3], None).unwrap();
        assert_eq!(cf.d_value, 2);
        assert_eq!(cf.e_value, Some(5));
        assert!(cf.applicable);
    }

    #[test]
    fn klein_four() {
        let cf = abelian_closed_forms(&[2, 2], Some(2)).unwrap();
        assert_eq!(cf.d_value, 2);
        assert_eq!(cf.e_value, Some(6));
        assert!(cf.applicable);
    }

    #[test]
    fn cyclic_six_not_applicable() {
        let cf = abelian_closed_forms(&[6], None).unwrap();
        assert!(!cf.applicable);
        assert_eq!(cf.d_value, 5);
        assert_eq!(cf.e_value, None);
    }

    #[test]
    fn rejects_broken_chain() {
        assert!(matches!(
            abelian_closed_forms(&[4, 6], None),
            Err(Error::BadFactors(_))
        ));
    }
}

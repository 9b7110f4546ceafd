//! The named inequality checks between the computed invariants.
//!
//! Every check runs only when its inputs are determined; inapplicable checks
//! are reported as skipped with a reason rather than silently dropped.

use crate::group::GroupTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Determined invariant values for one group; `None` stands for
/// "undetermined" and skips the checks that need the value.
#[derive(Clone, Copy, Debug, Default)]
pub struct DeterminedValues {
    pub d: Option<u64>,
    pub ordered_d: Option<u64>,
    pub gao: Option<u64>,
    pub loewy: Option<u64>,
}

fn pass(name: &'static str, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        status: CheckStatus::Pass,
        detail,
    }
}

fn fail(name: &'static str, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        status: CheckStatus::Fail,
        detail,
    }
}

fn skip(name: &'static str, reason: &str) -> CheckOutcome {
    CheckOutcome {
        name,
        status: CheckStatus::Skipped,
        detail: format!("skipped: {reason}"),
    }
}

fn verdict(name: &'static str, ok: bool, detail: String) -> CheckOutcome {
    if ok {
        pass(name, detail)
    } else {
        fail(name, detail)
    }
}

/// Evaluate every applicable inequality between the determined values.
pub fn bound_check(t: &GroupTable, v: &DeterminedValues) -> Vec<CheckOutcome> {
    let n = t.order() as u64;
    let cyclic = t.is_cyclic();
    let mut out = Vec::new();

    // d(G)+1 <= Do(G) <= |G|
    match (v.d, v.ordered_d) {
        (Some(d), Some(d_o)) => {
            out.push(verdict(
                "lemma2.7-chain",
                d + 1 <= d_o && d_o <= n,
                format!("d+1 = {} <= Do = {d_o} <= |G| = {n}", d + 1),
            ));
        }
        _ => out.push(skip("lemma2.7-chain", "d or Do undetermined")),
    }

    // Do(G) = |G| exactly for cyclic groups.
    match v.ordered_d {
        Some(d_o) => out.push(verdict(
            "lemma2.7-cyclic-equality",
            (d_o == n) == cyclic,
            format!("Do = {d_o}, |G| = {n}, cyclic = {cyclic}"),
        )),
        None => out.push(skip("lemma2.7-cyclic-equality", "Do undetermined")),
    }

    // Do(G) <= ceil((|G|+1)/2) for non-cyclic groups.
    match v.ordered_d {
        _ if cyclic => out.push(skip("olson-white-cap", "cyclic")),
        Some(d_o) => {
            let cap = (n + 1).div_ceil(2);
            out.push(verdict(
                "olson-white-cap",
                d_o <= cap,
                format!("Do = {d_o} <= ceil((|G|+1)/2) = {cap}"),
            ));
        }
        None => out.push(skip("olson-white-cap", "Do undetermined")),
    }

    // Do(G) <= L(G) for p-groups.
    let p_prime = t.p_group_prime();
    match (p_prime, v.ordered_d, v.loewy) {
        (None, _, _) => out.push(skip("lemma2.2-dimitrov", "not a p-group")),
        (Some(_), Some(d_o), Some(l)) => out.push(verdict(
            "lemma2.2-dimitrov",
            d_o <= l,
            format!("Do = {d_o} <= L = {l}"),
        )),
        _ => out.push(skip("lemma2.2-dimitrov", "Do or L undetermined")),
    }

    // d(G) <= |G|/q + q - 2 for non-cyclic, q the smallest prime divisor,
    // with equality when a cyclic subgroup of index q exists.
    match v.d {
        _ if cyclic => {
            out.push(skip("lemma2.6-quli", "cyclic"));
            out.push(skip("lemma2.6-equality", "cyclic"));
        }
        Some(d) => {
            let q = t.smallest_prime_divisor().unwrap_or(2);
            let bound = n / q + q - 2;
            out.push(verdict(
                "lemma2.6-quli",
                d <= bound,
                format!("d = {d} <= |G|/{q}+{q}-2 = {bound}"),
            ));
            let has_cyclic_index_q = t.has_element_of_order((n / q) as usize);
            if has_cyclic_index_q {
                out.push(verdict(
                    "lemma2.6-equality",
                    d == bound,
                    format!("cyclic index-{q} subgroup present: d = {d} must equal {bound}"),
                ));
            } else {
                out.push(skip("lemma2.6-equality", "no cyclic subgroup of prime index"));
            }
        }
        None => {
            out.push(skip("lemma2.6-quli", "d undetermined"));
            out.push(skip("lemma2.6-equality", "d undetermined"));
        }
    }

    // E(G) <= 3|G|/2 for non-cyclic groups.
    match v.gao {
        _ if cyclic => out.push(skip("conjecture1.2-gaoli", "cyclic")),
        Some(e) => out.push(verdict(
            "conjecture1.2-gaoli",
            2 * e <= 3 * n,
            format!("E = {e} <= 3|G|/2 = {}", 3 * n / 2),
        )),
        None => out.push(skip("conjecture1.2-gaoli", "E undetermined")),
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PcPresentation;

    fn sym3() -> GroupTable {
        PcPresentation::new(vec!["h", "g"], vec![2, 3])
            .with_conj(0, 1, vec![(1, 2)])
            .build(4096)
            .unwrap()
    }

    #[test]
    fn sym3_checks_pass() {
        let t = sym3();
        let v = DeterminedValues {
            d: Some(3),
            ordered_d: Some(4),
            gao: Some(9),
            loewy: None,
        };
        let results = bound_check(&t, &v);
        let by_name = |name: &str| results.iter().find(|c| c.name == name).unwrap();
        assert_eq!(by_name("lemma2.7-chain").status, CheckStatus::Pass);
        assert_eq!(by_name("olson-white-cap").status, CheckStatus::Pass);
        assert_eq!(by_name("lemma2.2-dimitrov").status, CheckStatus::Skipped);
        assert_eq!(by_name("lemma2.6-quli").status, CheckStatus::Pass);
        assert_eq!(by_name("lemma2.6-equality").status, CheckStatus::Pass);
        assert_eq!(by_name("conjecture1.2-gaoli").status, CheckStatus::Pass);
    }

    #[test]
    fn cyclic_groups_skip_noncyclic_caps() {
        let t = PcPresentation::new(vec!["g"], vec![5]).build(64).unwrap();
        let v = DeterminedValues {
            d: Some(4),
            ordered_d: Some(5),
            gao: Some(9),
            loewy: None,
        };
        let results = bound_check(&t, &v);
        let by_name = |name: &str| results.iter().find(|c| c.name == name).unwrap();
        assert_eq!(by_name("olson-white-cap").status, CheckStatus::Skipped);
        assert_eq!(by_name("conjecture1.2-gaoli").status, CheckStatus::Skipped);
        assert_eq!(by_name("lemma2.7-cyclic-equality").status, CheckStatus::Pass);
    }

    #[test]
    fn disagreement_is_loud() {
        let t = sym3();
        let v = DeterminedValues {
            d: Some(5),
            ordered_d: Some(4),
            ..Default::default()
        };
        let results = bound_check(&t, &v);
        assert!(results
            .iter()
            .any(|c| c.name == "lemma2.7-chain" && c.status == CheckStatus::Fail));
    }
}

//! zerosum: a command-line workbench for zero-sum invariants of finite
//! groups.
//!
//! Exit codes: 0 all requested results determined and consistent; 1 a
//! verification found a mathematical disagreement (or a cache entry failed
//! re-verification); 2 some result is undetermined because a budget ran out;
//! 3 invalid input.

mod cache;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use zerosum_core::constructions::{
    build_paper_group, catalog, closed_form_loewy, extremal_sequence, verify_theorem, ClaimStatus,
    ExtremalTag, PaperGroupSpec, TheoremTag,
};
use zerosum_core::invariant::{
    abelian_closed_forms, bound_check, gao_constant, ordered_davenport, small_davenport, Budget,
    Certificate, CheckStatus, DeterminedValues, Invariant, InvariantReport, SearchArgs,
    WitnessSeq,
};
use zerosum_core::modalg::{loewy_direct, loewy_jennings, m_series};
use zerosum_core::products::{big_pi, ordered_reach};
use zerosum_core::props;
use zerosum_core::{GroupTable, SeqOrdered};

use cache::{verify_cached_line, Cache};
use report::{Emitter, ReportLine};

#[derive(Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Finite groups, zero-sum invariants, and modular group algebra computations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Worker threads for the searches.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Budget preset: small, medium, or large.
    #[arg(long, global = true)]
    budget: Option<String>,

    /// Node budget override.
    #[arg(long, global = true, env = "ZEROSUM_BUDGET_NODES")]
    budget_nodes: Option<u64>,

    /// Wall-clock budget override, in seconds.
    #[arg(long, global = true, env = "ZEROSUM_BUDGET_SECONDS")]
    budget_seconds: Option<u64>,

    /// Also append report lines to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache file for invariant results.
    #[arg(long, global = true, env = "ZEROSUM_CACHE")]
    cache: Option<PathBuf>,

    /// Largest group order the table builder accepts.
    #[arg(long, global = true, default_value_t = 4096)]
    cap: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a group.
    Group {
        #[command(subcommand)]
        sub: GroupCmd,
    },
    /// Compute invariants of one group.
    Invariant {
        spec: String,
        /// Comma-separated list: d, do, e, loewy-jennings, loewy-direct.
        #[arg(long)]
        which: String,
    },
    /// Run a named verification against one or more specs.
    Verify {
        tag: String,
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// List the group catalog, optionally running the verification suite.
    Catalog {
        #[arg(long)]
        max_order: u64,
        /// Pass "full" to run the per-group verification battery.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Seeded randomized property suites for the covering lemmas.
    Props {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Info { spec: String },
}

#[derive(Default)]
struct RunState {
    fail: bool,
    undetermined: bool,
}

impl RunState {
    fn absorb_report(&mut self, r: &InvariantReport) {
        if r.budget_exhausted || r.value.is_none() {
            self.undetermined = true;
        }
    }

    fn absorb_claim_status(&mut self, s: ClaimStatus) {
        match s {
            ClaimStatus::Fail => self.fail = true,
            ClaimStatus::Undetermined => self.undetermined = true,
            _ => {}
        }
    }

    fn exit_code(&self) -> ExitCode {
        if self.fail {
            ExitCode::from(1)
        } else if self.undetermined {
            ExitCode::from(2)
        } else {
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn budget_of(cli: &Cli) -> Result<(Budget, String), String> {
    let (mut budget, mut class) = match cli.budget.as_deref() {
        None | Some("medium") => (
            Budget {
                max_nodes: 50_000_000,
                max_wall_ms: Some(120_000),
                workers: 1,
            },
            "medium".to_string(),
        ),
        Some("small") => (
            Budget {
                max_nodes: 2_000_000,
                max_wall_ms: Some(10_000),
                workers: 1,
            },
            "small".to_string(),
        ),
        Some("large") => (
            Budget {
                max_nodes: 1_000_000_000,
                max_wall_ms: Some(3_600_000),
                workers: 1,
            },
            "large".to_string(),
        ),
        Some(other) => return Err(format!("unknown budget preset '{other}'")),
    };
    if let Some(n) = cli.budget_nodes {
        if n == 0 {
            return Err("node budget must be positive".into());
        }
        budget.max_nodes = n;
        class = format!("custom-n{n}");
    }
    if let Some(s) = cli.budget_seconds {
        if s == 0 {
            return Err("wall budget must be positive".into());
        }
        budget.max_wall_ms = Some(s * 1000);
        class = format!("{class}-s{s}");
    }
    if cli.workers == 0 {
        return Err("worker count must be >= 1".into());
    }
    budget.workers = cli.workers;
    Ok((budget, class))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let (budget, budget_class) = budget_of(&cli)?;
    let mut emitter = Emitter::new(cli.out.as_deref()).map_err(|e| e.to_string())?;
    let mut state = RunState::default();

    match &cli.cmd {
        Cmd::Group {
            sub: GroupCmd::Info { spec },
        } => {
            let spec = parse::parse_group_spec(spec).map_err(|e| e.to_string())?;
            let t = build_paper_group(&spec, cli.cap).map_err(|e| e.to_string())?;
            emitter
                .emit(&group_info_line(&spec, &t))
                .map_err(|e| e.to_string())?;
        }
        Cmd::Invariant { spec, which } => {
            let spec = parse::parse_group_spec(spec).map_err(|e| e.to_string())?;
            let t = build_paper_group(&spec, cli.cap).map_err(|e| e.to_string())?;
            let mut cache = cli.cache.clone().map(Cache::load);
            for name in which.split(',') {
                let inv = Invariant::parse(name.trim())
                    .ok_or_else(|| format!("unknown invariant '{name}'"))?;
                let line = invariant_line(
                    &spec,
                    &t,
                    inv,
                    &budget,
                    &budget_class,
                    cache.as_mut(),
                    &mut state,
                )?;
                emitter.emit(&line).map_err(|e| e.to_string())?;
            }
            if let Some(c) = &cache {
                c.save().map_err(|e| e.to_string())?;
            }
        }
        Cmd::Verify { tag, specs } => {
            let tag = TheoremTag::parse(tag).ok_or_else(|| format!("unknown tag '{tag}'"))?;
            for s in specs {
                let spec = parse::parse_group_spec(s).map_err(|e| e.to_string())?;
                let rep =
                    verify_theorem(tag, &spec, &budget, cli.cap).map_err(|e| e.to_string())?;
                for claim in &rep.claims {
                    state.absorb_claim_status(claim.status);
                    emitter
                        .emit(&ReportLine::from_claim(
                            &rep.spec,
                            rep.order as u64,
                            &rep.tag,
                            claim,
                        ))
                        .map_err(|e| e.to_string())?;
                }
                for inv in &rep.invariants {
                    state.absorb_report(inv);
                    emitter
                        .emit(&ReportLine::from_invariant(inv))
                        .map_err(|e| e.to_string())?;
                }
            }
        }
        Cmd::Catalog { max_order, suite } => {
            let full = match suite.as_deref() {
                None => false,
                Some("full") => true,
                Some(other) => return Err(format!("unknown suite '{other}'")),
            };
            for spec in catalog(*max_order) {
                run_catalog_entry(&spec, cli.cap, full, &mut emitter, &mut state)?;
            }
        }
        Cmd::Props { seed, trials } => {
            let seed = seed.unwrap_or(props::DEFAULT_SEED);
            let suites = [
                props::gao_lu_suite(seed, *trials).map_err(|e| e.to_string())?,
                props::disjoint_pair_suite(seed, (*trials).min(100)).map_err(|e| e.to_string())?,
                props::covering_suite(8).map_err(|e| e.to_string())?,
            ];
            for s in suites {
                if !s.passed() {
                    state.fail = true;
                }
                emitter
                    .emit(&ReportLine {
                        spec: "props".into(),
                        order: 0,
                        invariant: None,
                        claim: Some(s.name.to_string()),
                        value: None,
                        status: Some(if s.passed() { "pass" } else { "fail" }.into()),
                        certificate: serde_json::json!({
                            "seed": s.seed,
                            "trials": s.trials,
                            "checked": s.checked,
                            "failures": s.failures,
                        }),
                        method: "seeded-property-suite".into(),
                        nodes: 0,
                        elapsed_ms: 0,
                        budget_exhausted: false,
                    })
                    .map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(state.exit_code())
}

fn group_info_line(spec: &PaperGroupSpec, t: &GroupTable) -> ReportLine {
    let mut info = serde_json::json!({
        "is_abelian": t.is_abelian(),
        "is_cyclic": t.is_cyclic(),
        "center_size": t.center_size(),
        "relations_verified": true,
        "generators": t.generators().iter().map(|(n, e)| {
            serde_json::json!({"name": n, "element": e, "order": t.element_order(*e)})
        }).collect::<Vec<_>>(),
    });
    if let Some(p) = t.p_group_prime() {
        if let Ok(profile) = t.structure_profile(p) {
            info["p"] = serde_json::json!(p);
            info["min_generators"] = serde_json::json!(profile.min_generators);
            info["has_cyclic_subgroup_of_index_p"] =
                serde_json::json!(profile.has_cyclic_subgroup_of_index_p);
        }
    }
    ReportLine {
        spec: spec.to_string(),
        order: t.order() as u64,
        invariant: None,
        claim: Some("group-info".into()),
        value: None,
        status: Some("pass".into()),
        certificate: info,
        method: "table-build".into(),
        nodes: 0,
        elapsed_ms: 0,
        budget_exhausted: false,
    }
}

/// Known-free seed sequences from the family constructions; freeness is
/// re-verified by the search itself before use.
fn search_seeds(
    spec: &PaperGroupSpec,
    t: &GroupTable,
    inv: Invariant,
) -> (Option<zerosum_core::SeqMulti>, Option<SeqOrdered>) {
    match inv {
        Invariant::D => {
            let s = zerosum_core::constructions::known_free_sequence(spec, t).ok();
            (s, None)
        }
        Invariant::Do => {
            let o = extremal_sequence(spec, ExtremalTag::Thm14, t)
                .ok()
                .and_then(|s| s.ordered().cloned())
                .or_else(|| {
                    zerosum_core::constructions::known_free_sequence(spec, t)
                        .ok()
                        .map(|m| {
                            let mut elems = Vec::new();
                            for (e, mult) in m.pairs() {
                                for _ in 0..mult {
                                    elems.push(e);
                                }
                            }
                            SeqOrdered::new(elems)
                        })
                });
            (None, o)
        }
        Invariant::E => {
            let s = extremal_sequence(spec, ExtremalTag::EgzLower, t)
                .ok()
                .and_then(|s| s.unordered().cloned());
            (s, None)
        }
        _ => (None, None),
    }
}

#[allow(clippy::too_many_arguments)]
fn invariant_line(
    spec: &PaperGroupSpec,
    t: &GroupTable,
    inv: Invariant,
    budget: &Budget,
    budget_class: &str,
    cache: Option<&mut Cache>,
    state: &mut RunState,
) -> Result<ReportLine, String> {
    let spec_str = spec.to_string();
    if let Some(c) = cache.as_deref() {
        if let Some(line) = c.get(&spec_str, inv.name(), budget_class) {
            if let Err(e) = verify_cached_line(t, inv, line) {
                // a certificate that no longer verifies takes the loud path
                eprintln!("cache rejected: {e}");
                std::process::exit(1);
            }
            if line.value == Some(serde_json::json!("undetermined")) {
                state.undetermined = true;
            }
            return Ok(line.clone());
        }
    }

    let line = match inv {
        Invariant::D | Invariant::Do | Invariant::E => {
            let (seed_m, seed_o) = search_seeds(spec, t, inv);
            let mut args = SearchArgs::new(&spec_str, budget);
            args.seed_unordered = seed_m.as_ref();
            args.seed_ordered = seed_o.as_ref();
            let rep = match inv {
                Invariant::D => small_davenport(t, &args),
                Invariant::Do => ordered_davenport(t, &args),
                Invariant::E => gao_constant(t, &args),
                _ => unreachable!(),
            };
            state.absorb_report(&rep);
            ReportLine::from_invariant(&rep)
        }
        Invariant::LoewyJennings => {
            let p = t
                .p_group_prime()
                .ok_or_else(|| format!("{spec_str}: Loewy length needs a p-group"))?;
            let started = std::time::Instant::now();
            let ms = m_series(t, p).map_err(|e| e.to_string())?;
            let l = loewy_jennings(&ms, p);
            ReportLine::from_invariant(&InvariantReport {
                spec: spec_str.clone(),
                order: t.order(),
                invariant: inv,
                value: Some(l),
                certificate: Certificate::Derived {
                    detail: format!("m-series d = {}, e = {:?}, p = {p}", ms.d, ms.e),
                },
                method: "jennings-m-series".into(),
                nodes: 0,
                elapsed_ms: started.elapsed().as_millis() as u64,
                budget_exhausted: false,
            })
        }
        Invariant::LoewyDirect => {
            let p = t
                .p_group_prime()
                .ok_or_else(|| format!("{spec_str}: Loewy length needs a p-group"))?;
            let started = std::time::Instant::now();
            let profile = loewy_direct(t, p).map_err(|e| e.to_string())?;
            ReportLine::from_invariant(&InvariantReport {
                spec: spec_str.clone(),
                order: t.order(),
                invariant: inv,
                value: Some(profile.nilpotency_index),
                certificate: Certificate::Derived {
                    detail: format!("radical dims {:?}", profile.dims),
                },
                method: "radical-rank".into(),
                nodes: 0,
                elapsed_ms: started.elapsed().as_millis() as u64,
                budget_exhausted: false,
            })
        }
    };
    if let Some(c) = cache {
        c.put(&spec_str, inv.name(), budget_class, line.clone());
    }
    Ok(line)
}

/// One catalog entry: the listing line, plus the verification battery with
/// `--suite full` (relation checks, Loewy cross-check, closed forms, the
/// sandwich determinations, and the bound suite over determined values).
fn run_catalog_entry(
    spec: &PaperGroupSpec,
    cap: u64,
    full: bool,
    emitter: &mut Emitter,
    state: &mut RunState,
) -> Result<(), String> {
    let spec_str = spec.to_string();
    let entry = ReportLine {
        spec: spec_str.clone(),
        order: spec.order(),
        invariant: None,
        claim: Some("catalog-entry".into()),
        value: None,
        status: Some("pass".into()),
        certificate: serde_json::json!({ "family": spec.family_name() }),
        method: "catalog".into(),
        nodes: 0,
        elapsed_ms: 0,
        budget_exhausted: false,
    };
    emitter.emit(&entry).map_err(|e| e.to_string())?;
    if !full {
        return Ok(());
    }

    let t = match build_paper_group(spec, cap) {
        Ok(t) => t,
        Err(e) => {
            state.fail = true;
            emitter
                .emit(&claim_line(&spec_str, spec.order(), "relations", "fail", e.to_string()))
                .map_err(|e| e.to_string())?;
            return Ok(());
        }
    };
    emitter
        .emit(&claim_line(
            &spec_str,
            t.order() as u64,
            "relations",
            "pass",
            "defining relations hold in the built table".into(),
        ))
        .map_err(|e| e.to_string())?;

    let mut values = DeterminedValues::default();
    let mut lines: Vec<ReportLine> = Vec::new();

    if let Some(p) = t.p_group_prime() {
        let ms = m_series(&t, p).map_err(|e| e.to_string())?;
        let lj = loewy_jennings(&ms, p);
        values.loewy = Some(lj);
        match loewy_direct(&t, p) {
            Ok(profile) => {
                let ok = profile.nilpotency_index == lj;
                if !ok {
                    state.fail = true;
                }
                lines.push(claim_line(
                    &spec_str,
                    t.order() as u64,
                    "loewy-cross-check",
                    if ok { "pass" } else { "fail" },
                    format!("jennings {lj}, radical {}", profile.nilpotency_index),
                ));
            }
            Err(zerosum_core::Error::CapExceeded { .. }) => lines.push(claim_line(
                &spec_str,
                t.order() as u64,
                "loewy-cross-check",
                "skipped",
                "order above the linear-algebra cap".into(),
            )),
            Err(e) => return Err(e.to_string()),
        }
        if let Ok(l_closed) = closed_form_loewy(spec) {
            let ok = l_closed == lj;
            if !ok {
                state.fail = true;
            }
            lines.push(claim_line(
                &spec_str,
                t.order() as u64,
                "closed-form-loewy",
                if ok { "pass" } else { "fail" },
                format!("closed form {l_closed}, jennings {lj}"),
            ));
        }
    }

    // closed-form determinations
    match spec {
        PaperGroupSpec::Cyclic(n) => {
            values.d = Some(n - 1);
            values.ordered_d = Some(*n);
            values.gao = Some(2 * n - 1);
        }
        PaperGroupSpec::Abelian(ns) => {
            if let Ok(cf) = abelian_closed_forms(ns, None) {
                if cf.applicable {
                    values.d = Some(cf.d_value);
                    values.ordered_d = Some(cf.d_value + 1);
                    values.gao = cf.e_value;
                }
            }
        }
        _ => {}
    }

    // sandwich determinations from the family constructions
    if values.ordered_d.is_none() {
        if let (Ok(l), Ok(seq)) = (
            closed_form_loewy(spec),
            extremal_sequence(spec, ExtremalTag::Thm14, &t),
        ) {
            let eligible = matches!(
                spec,
                PaperGroupSpec::G2 { .. }
                    | PaperGroupSpec::G1 { gamma: 1, .. }
                    | PaperGroupSpec::G3 { sigma: 1, .. }
                    | PaperGroupSpec::G4 { gamma: 1 }
                    | PaperGroupSpec::G4 { gamma: 2 }
            ) && seq.len() as u64 == l - 1;
            if eligible {
                if let Some(o) = seq.ordered() {
                    let free = !ordered_reach(&t, o)
                        .map_err(|e| e.to_string())?
                        .contains(t.id());
                    if free {
                        values.ordered_d = Some(l);
                        lines.push(sandwich_line(&spec_str, &t, Invariant::Do, o, l));
                        // for G2 the same terms are free as a multiset
                        if matches!(spec, PaperGroupSpec::G2 { .. }) {
                            let m = o.to_multiset(t.order());
                            if !big_pi(&t, &m).map_err(|e| e.to_string())?.contains(t.id()) {
                                values.d = Some(l - 1);
                            }
                        }
                    }
                }
            }
        }
    }

    for check in bound_check(&t, &values) {
        if check.status == CheckStatus::Fail {
            state.fail = true;
        }
        lines.push(claim_line(
            &spec_str,
            t.order() as u64,
            check.name,
            match check.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Skipped => "skipped",
            },
            check.detail,
        ));
    }

    for line in lines {
        emitter.emit(&line).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn claim_line(spec: &str, order: u64, name: &str, status: &str, detail: String) -> ReportLine {
    ReportLine {
        spec: spec.to_string(),
        order,
        invariant: None,
        claim: Some(name.to_string()),
        value: None,
        status: Some(status.to_string()),
        certificate: serde_json::json!({ "detail": detail }),
        method: "catalog-suite".into(),
        nodes: 0,
        elapsed_ms: 0,
        budget_exhausted: false,
    }
}

fn sandwich_line(
    spec: &str,
    t: &GroupTable,
    inv: Invariant,
    witness: &SeqOrdered,
    value: u64,
) -> ReportLine {
    ReportLine::from_invariant(&InvariantReport {
        spec: spec.to_string(),
        order: t.order(),
        invariant: inv,
        value: Some(value),
        certificate: Certificate::Sandwich {
            lower: WitnessSeq::from_ordered(t, witness),
            upper_method: "dimitrov-jennings".into(),
            upper_value: value,
        },
        method: "sandwich".into(),
        nodes: 0,
        elapsed_ms: 0,
        budget_exhausted: false,
    })
}

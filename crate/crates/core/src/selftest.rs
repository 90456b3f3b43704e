//! Randomised cross-checks of the colourers against the exact oracle.
//!
//! Trials run in parallel; results are reported in trial order.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::{greedy_dicolour, is_valid};
use crate::digraph::Digraph;
use crate::error::Result;
use crate::exceptions::{classify, verify_certificate};
use crate::generators::{gen_k_regular, gen_random_connected, rng_from_seed, RNG_NAME};
use crate::hardness::{pull_back, push_forward, reduce};
use crate::oracle::Oracle;
use crate::{brooks_colour, BrooksResult, Strategy};

pub const CHECKS: [&str; 8] = [
    "brooks", "lovasz", "induction", "ktree", "partition", "greedy", "hardness", "errors",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub graph: Digraph,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub rng: String,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<TrialFailure>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of one check on one trial: `None` if skipped.
type Verdict = Option<std::result::Result<(), String>>;

pub fn run_selftest(config: SelftestConfig) -> Result<SelftestReport> {
    let trials: Vec<Vec<(usize, Verdict)>> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect::<Result<_>>()?;

    let mut checks: Vec<CheckSummary> = CHECKS
        .iter()
        .map(|&name| CheckSummary { name: name.into(), passed: 0, failed: 0 })
        .collect();
    let mut failures = Vec::new();
    for (t, verdicts) in trials.into_iter().enumerate() {
        let graph = trial_graph(config, t)?;
        for (i, verdict) in verdicts {
            match verdict {
                Some(Ok(())) => checks[i].passed += 1,
                Some(Err(detail)) => {
                    checks[i].failed += 1;
                    failures.push(TrialFailure {
                        trial: t,
                        graph: graph.clone(),
                        check: CHECKS[i].into(),
                        detail,
                    });
                }
                None => {}
            }
        }
    }
    Ok(SelftestReport { config, rng: RNG_NAME.into(), checks, failures })
}

fn trial_seed(config: SelftestConfig, trial: usize) -> u64 {
    config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(trial as u64)
}

/// Every fourth trial is a regular digraph when a connected one comes out;
/// the rest are random connected digraphs.
pub fn trial_graph(config: SelftestConfig, trial: usize) -> Result<Digraph> {
    let seed = trial_seed(config, trial);
    let mut rng = rng_from_seed(seed);
    let n = rng.gen_range(1..=config.n_max.max(1));
    if trial % 4 == 3 && n >= 2 {
        let k = rng.gen_range(1..n);
        let g = gen_k_regular(n, k, seed)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    let p_arc = rng.gen_range(0.2..0.9);
    let p_digon = rng.gen_range(0.0..0.5);
    gen_random_connected(n, p_arc, p_digon, seed)
}

fn run_trial(config: SelftestConfig, trial: usize) -> Result<Vec<(usize, Verdict)>> {
    let g = trial_graph(config, trial)?;
    let oracle = Oracle::new(16);
    let chi = oracle.chi_exact(&g)?;
    let k = g.delta_max();
    let cert = classify(&g);
    let mut out = Vec::new();

    out.push((0, Some(check(chi == k + 1, cert.is_some(), || format!("chi = {chi}, delta_max = {k}, certificate = {cert:?}")))));
    let mut errors = Ok(());
    for (i, s) in Strategy::CONCRETE.into_iter().enumerate() {
        let verdict = match brooks_colour(&g, s) {
            Ok(BrooksResult::Coloured(col)) => {
                if !is_valid(&g, &col)? || col.num_colours() > k.max(1) {
                    Err(format!("{s}: invalid or {} colours", col.num_colours()))
                } else if chi == k + 1 {
                    Err(format!("{s}: coloured a digraph the oracle says needs {chi}"))
                } else {
                    Ok(())
                }
            }
            Ok(BrooksResult::Exception(c)) => {
                if verify_certificate(&g, &c) && chi == k + 1 {
                    Ok(())
                } else {
                    Err(format!("{s}: certificate {c:?} disagrees with chi = {chi}"))
                }
            }
            Err(e) => {
                errors = Err(format!("{s}: {e}"));
                Err(e.to_string())
            }
        };
        out.push((i + 1, Some(verdict)));
    }

    let mut rng = rng_from_seed(trial_seed(config, trial) ^ 1);
    let mut order: Vec<usize> = g.vertices().collect();
    order.shuffle(&mut rng);
    let greedy = greedy_dicolour(&g, &order)?;
    let ok = is_valid(&g, &greedy)? && greedy.num_colours() <= g.delta_min() + 1;
    out.push((5, Some(if ok { Ok(()) } else { Err(format!("greedy used {}", greedy.num_colours())) })));

    let hardness = if g.n() <= 4 { Some(check_hardness(&g, &oracle)) } else { None };
    out.push((6, hardness));
    out.push((7, Some(errors)));
    Ok(out)
}

fn check(lhs: bool, rhs: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(detail())
    }
}

fn check_hardness(g: &Digraph, oracle: &Oracle) -> std::result::Result<(), String> {
    let run = || -> Result<std::result::Result<(), String>> {
        for k in [2, 3] {
            let r = reduce(g, k)?;
            let here = oracle.is_k_dicolourable(g, k)?;
            let there = oracle.is_k_dicolourable(&r.graph, k)?;
            if here.is_some() != there.is_some() {
                return Ok(Err(format!("k = {k}: dicolourable {} vs reduced {}", here.is_some(), there.is_some())));
            }
            if let (Some(col), Some(colp)) = (here, there) {
                let fwd = push_forward(g, &r, &col)?;
                if !pull_back(g, &r, &fwd)?.same_classes(&col) {
                    return Ok(Err(format!("k = {k}: round trip changed the colouring")));
                }
                pull_back(g, &r, &colp)?;
            }
        }
        Ok(Ok(()))
    };
    run().unwrap_or_else(|e| Err(e.to_string()))
}

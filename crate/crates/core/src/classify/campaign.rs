use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ideal::{build_ideal, campaign_registry};
use super::signs::{enumerate_degeneracy_cases, enumerate_sign_choices, DegeneracyCase, SignChoice, SIGMA};
use super::tables::{paper_table, PaperOutcome, PaperTable};
use super::ClassifyError;
use crate::exact::{MonomialOrder, Poly};
use crate::groebner::{saturation_loop, Arithmetic, IdealSpec, Outcome, SaturationTrace};

/// Primes for the modular campaign; the first is the default.
pub const CAMPAIGN_PRIMES: [u32; 2] = [2_147_483_629, 2_147_483_587];

/// Longest chain of reductions followed from one run.
const MAX_CHAIN: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub choices: Vec<u8>,
    pub cases: Vec<u8>,
    /// Overrides the published starting degree cap of every run.
    pub degree_cap: Option<u32>,
    pub jobs: usize,
    pub primes: Vec<u32>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            choices: enumerate_sign_choices().representatives,
            cases: (1..=5).collect(),
            degree_cap: None,
            jobs: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            primes: vec![CAMPAIGN_PRIMES[0]],
        }
    }
}

/// One saturation run as recorded in the manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestRound {
    pub degree_cap: u32,
    pub basis_size: usize,
    pub factored: Vec<String>,
    pub zero_factors: Vec<String>,
    pub unit: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub choice: u8,
    pub case: u8,
    pub degree_cap: u32,
    pub outcome: String,
    /// The forbidden or reduction relation, if any.
    pub relation: Option<String>,
    pub rounds: Vec<ManifestRound>,
    pub seconds: f64,
    /// The rerun of the target case with the derived relations appended,
    /// when this run ended in a reduction.
    pub chain: Option<Box<ManifestEntry>>,
}

impl ManifestEntry {
    /// Whether the run, following any reduction chain, ends in a
    /// contradiction.
    pub fn eliminated(&self) -> bool {
        match &self.chain {
            Some(next) => next.eliminated(),
            None => self.outcome == "UnitIdeal" || self.outcome.starts_with("Forbidden"),
        }
    }

    pub fn final_outcome(&self) -> &str {
        match &self.chain {
            Some(next) => next.final_outcome(),
            None => &self.outcome,
        }
    }

    pub fn total_seconds(&self) -> f64 {
        self.seconds + self.chain.as_ref().map_or(0.0, |c| c.total_seconds())
    }

    /// Zero factors over all rounds of this run (not of its chain).
    pub fn zero_factors(&self) -> Vec<String> {
        self.rounds.iter().flat_map(|r| r.zero_factors.iter().cloned()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: CampaignConfig,
    pub entries: Vec<ManifestEntry>,
    pub wall_seconds: f64,
}

impl Manifest {
    pub fn entry(&self, choice: u8, case: u8) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.choice == choice && e.case == case)
    }

    pub fn verdict(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(ManifestEntry::eliminated)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ClassifyError> {
        serde_json::from_str(text).map_err(|e| ClassifyError::Manifest(e.to_string()))
    }
}

/// Full result: the manifest plus every trace, keyed by (choice, case).
#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub manifest: Manifest,
    pub traces: BTreeMap<(u8, u8), Vec<SaturationTrace>>,
}

fn entry_from_trace(choice: u8, case: u8, cap: u32, trace: &SaturationTrace, seconds: f64) -> ManifestEntry {
    let relation = match &trace.outcome {
        Outcome::Forbidden { relation } | Outcome::Reduction { relation, .. } => Some(relation.to_string()),
        _ => None,
    };
    let outcome = match &trace.outcome {
        Outcome::Forbidden { relation } => format!("Forbidden({relation})"),
        Outcome::Stalled { reason, .. } => format!("Stalled({reason})"),
        o => o.label(),
    };
    let rounds = trace
        .rounds
        .iter()
        .map(|r| {
            let v = serde_json::to_value(r).expect("serializable");
            let strs = |k: &str| -> Vec<String> {
                v[k].as_array()
                    .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
                    .unwrap_or_default()
            };
            ManifestRound {
                degree_cap: r.degree_cap,
                basis_size: r.basis_size,
                factored: strs("factored"),
                zero_factors: strs("added"),
                unit: r.unit,
            }
        })
        .collect();
    ManifestEntry {
        choice,
        case,
        degree_cap: cap,
        outcome,
        relation,
        rounds,
        seconds,
        chain: None,
    }
}

fn case_by_index(cases: &[DegeneracyCase], index: u8) -> Result<&DegeneracyCase, ClassifyError> {
    cases
        .iter()
        .find(|c| c.index == index)
        .ok_or(ClassifyError::UnknownCase(index))
}

fn spec_for(
    choice: &SignChoice,
    dcase: &DegeneracyCase,
    config: &CampaignConfig,
) -> Result<IdealSpec, ClassifyError> {
    let mut spec = build_ideal(choice, dcase)?;
    if let Some(cap) = config.degree_cap {
        spec.degree_cap = cap;
        spec.max_degree_cap = spec.max_degree_cap.max(cap);
    }
    spec.arithmetic = Arithmetic::Modular(config.primes.clone());
    Ok(spec)
}

/// Runs one (choice, case) pair and follows reductions: the target case is
/// rerun with the source generators and every derived relation appended.
pub fn run_pair(
    choice: u8,
    case: u8,
    config: &CampaignConfig,
) -> Result<(ManifestEntry, Vec<SaturationTrace>), ClassifyError> {
    let sc = SignChoice::new(choice).ok_or(ClassifyError::UnknownChoice(choice))?;
    let cases = enumerate_degeneracy_cases(&SIGMA);
    let mut spec = spec_for(&sc, case_by_index(&cases, case)?, config)?;
    let mut traces = Vec::new();
    let mut entries = Vec::new();
    let mut cur_case = case;
    loop {
        let start = Instant::now();
        let trace = saturation_loop(&spec)?;
        let secs = start.elapsed().as_secs_f64();
        entries.push(entry_from_trace(choice, cur_case, spec.degree_cap, &trace, secs));
        let next = match &trace.outcome {
            Outcome::Reduction { target, relation } if entries.len() <= MAX_CHAIN => {
                let idx: u8 = target
                    .trim_start_matches("case ")
                    .parse()
                    .map_err(|_| ClassifyError::UnknownCase(0))?;
                let mut next = spec_for(&sc, case_by_index(&cases, idx)?, config)?;
                let mut extra = spec.generators.clone();
                extra.extend(trace.added_relations());
                extra.push(relation.clone());
                for g in extra {
                    if !next.generators.contains(&g) {
                        next.generators.push(g);
                    }
                }
                for a in &spec.nonzero_atoms {
                    if !next.nonzero_atoms.contains(a) {
                        next.nonzero_atoms.push(a.clone());
                    }
                }
                let max_deg = next.generators.iter().map(Poly::total_degree).max().unwrap_or(0);
                next.degree_cap = next.degree_cap.max(max_deg);
                next.max_degree_cap = next.max_degree_cap.max(next.degree_cap);
                cur_case = idx;
                Some(next)
            }
            _ => None,
        };
        traces.push(trace);
        match next {
            Some(n) => spec = n,
            None => break,
        }
    }
    let mut entry = entries.pop().expect("at least one run");
    while let Some(mut prev) = entries.pop() {
        prev.chain = Some(Box::new(entry));
        entry = prev;
    }
    Ok((entry, traces))
}

/// Every configured (choice, case) pair on a pool of `config.jobs` threads.
/// The result does not depend on scheduling.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignResult, ClassifyError> {
    let pairs: Vec<(u8, u8)> = config
        .choices
        .iter()
        .flat_map(|&c| config.cases.iter().map(move |&k| (c, k)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| ClassifyError::Manifest(e.to_string()))?;
    let start = Instant::now();
    let results: Vec<Result<((u8, u8), ManifestEntry, Vec<SaturationTrace>), ClassifyError>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(c, k)| run_pair(c, k, config).map(|(e, t)| ((c, k), e, t)))
            .collect()
    });
    let mut entries = BTreeMap::new();
    let mut traces = BTreeMap::new();
    for r in results {
        let (key, e, t) = r?;
        entries.insert(key, e);
        traces.insert(key, t);
    }
    Ok(CampaignResult {
        manifest: Manifest {
            config: config.clone(),
            entries: entries.into_values().collect(),
            wall_seconds: start.elapsed().as_secs_f64(),
        },
        traces,
    })
}

/// Comparison of one run with its published table.
#[derive(Clone, Debug, Serialize)]
pub struct PaperDiff {
    pub choice: u8,
    pub case: u8,
    pub table: Option<PaperTable>,
    pub outcome: String,
    pub paper_outcome: Option<String>,
    pub outcome_match: bool,
    /// Published zero factors also found here, up to a scalar.
    pub matched: Vec<String>,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

impl PaperDiff {
    pub fn factors_match(&self) -> bool {
        self.table.is_some() && self.missing.is_empty() && self.extra.is_empty()
    }
}

fn outcome_agrees(entry: &ManifestEntry, paper: PaperOutcome) -> bool {
    match paper {
        PaperOutcome::UnitIdeal => entry.outcome == "UnitIdeal",
        PaperOutcome::Forbidden => entry.outcome.starts_with("Forbidden"),
        PaperOutcome::Reduction(c) => {
            entry.outcome == format!("Reduction(case {c})") && entry.eliminated()
        }
    }
}

/// Matches zero factors as multisets up to nonzero scalars.
fn multiset_diff(ours: &[Poly], theirs: &[Poly]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut used = vec![false; ours.len()];
    let mut matched = Vec::new();
    let mut missing = Vec::new();
    for (j, t) in theirs.iter().enumerate() {
        match (0..ours.len()).find(|&i| !used[i] && ours[i].is_scalar_multiple_of(t)) {
            Some(i) => {
                used[i] = true;
                matched.push(j);
            }
            None => missing.push(j),
        }
    }
    let extra = (0..ours.len()).filter(|&i| !used[i]).collect();
    (matched, missing, extra)
}

pub fn paper_diff(entry: &ManifestEntry) -> Result<PaperDiff, ClassifyError> {
    let reg = campaign_registry();
    let parse = |s: &str| {
        Poly::parse(&reg, MonomialOrder::GrevLex, s).map_err(|e| ClassifyError::Manifest(e.to_string()))
    };
    let table = paper_table(entry.choice, entry.case);
    let ours_s = entry.zero_factors();
    let ours: Vec<Poly> = ours_s.iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
    let (outcome_match, paper_outcome, matched, missing, extra) = match &table {
        None => (false, None, Vec::new(), Vec::new(), ours_s.clone()),
        Some(t) => {
            let theirs_s: Vec<&str> = t.rounds.iter().flat_map(|r| r.zero_factors.iter().copied()).collect();
            let theirs: Vec<Poly> = theirs_s.iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
            let (m, mi, ex) = multiset_diff(&ours, &theirs);
            (
                outcome_agrees(entry, t.outcome),
                Some(t.outcome.label()),
                m.iter().map(|&j| theirs_s[j].to_string()).collect(),
                mi.iter().map(|&j| theirs_s[j].to_string()).collect(),
                ex.iter().map(|&i| ours_s[i].clone()).collect(),
            )
        }
    };
    Ok(PaperDiff {
        choice: entry.choice,
        case: entry.case,
        table,
        outcome: entry.outcome.clone(),
        paper_outcome,
        outcome_match,
        matched,
        missing,
        extra,
    })
}

pub fn paper_diffs(manifest: &Manifest) -> Result<Vec<PaperDiff>, ClassifyError> {
    manifest.entries.iter().map(paper_diff).collect()
}

fn cell(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        v.join(", ")
    }
}

fn entry_markdown(out: &mut String, e: &ManifestEntry, depth: usize) {
    let title = if depth == 0 {
        format!("### Sign choice {}, case {}\n\n", e.choice, e.case)
    } else {
        format!("Rerun as case {} with the derived relations:\n\n", e.case)
    };
    out.push_str(&title);
    out.push_str("| Degree Limit | Factored Polynomials | Zero Factors Added |\n|---|---|---|\n");
    for r in &e.rounds {
        let mut factored = r.factored.clone();
        if r.unit && factored.is_empty() {
            factored.push("1".into());
        }
        let _ = writeln!(out, "| {} | {} | {} |", r.degree_cap, cell(&factored), cell(&r.zero_factors));
    }
    let _ = writeln!(out, "\nOutcome: {}\n", e.outcome);
    if let Some(c) = &e.chain {
        entry_markdown(out, c, depth + 1);
    }
}

/// Tables for every run, followed by the comparison with the published ones.
/// Timings stay in the JSON manifest so the text does not depend on the
/// machine or the number of threads.
pub fn manifest_markdown(manifest: &Manifest) -> Result<String, ClassifyError> {
    let mut out = String::from("## Campaign\n\n");
    for e in &manifest.entries {
        entry_markdown(&mut out, e, 0);
    }
    out.push_str(&diff_markdown(&paper_diffs(manifest)?));
    let _ = writeln!(
        out,
        "\nVerdict: {} ({} runs)",
        if manifest.verdict() { "every degenerate case eliminated" } else { "not every case eliminated" },
        manifest.entries.len(),
    );
    Ok(out)
}

pub fn diff_markdown(diffs: &[PaperDiff]) -> String {
    let mut out = String::from(
        "## Comparison with the published tables\n\n\
         | Choice | Case | Outcome | Published | Outcome agrees | Zero factors agree | Missing | Extra |\n\
         |---|---|---|---|---|---|---|---|\n",
    );
    for d in diffs {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            d.choice,
            d.case,
            d.outcome,
            d.paper_outcome.as_deref().unwrap_or("no table"),
            if d.table.is_some() { yes_no(d.outcome_match) } else { "-" },
            if d.table.is_some() { yes_no(d.factors_match()) } else { "-" },
            cell(&d.missing),
            d.extra.len()
        );
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_multiset_matching() {
        let reg = campaign_registry();
        let p = |s: &str| Poly::parse(&reg, MonomialOrder::GrevLex, s).unwrap();
        let ours = vec![p("2*th5 + 2"), p("d3 + d4 + d5"), p("p - 1")];
        let theirs = vec![p("th5 + 1"), p("-d3 - d4 - d5"), p("th4 + 1")];
        let (m, mi, ex) = multiset_diff(&ours, &theirs);
        assert_eq!(m, vec![0, 1]);
        assert_eq!(mi, vec![2]);
        assert_eq!(ex, vec![2]);
    }

    #[test]
    fn manifest_round_trip() {
        let e = ManifestEntry {
            choice: 1,
            case: 3,
            degree_cap: 7,
            outcome: "Reduction(case 1)".into(),
            relation: Some("th1 - 1".into()),
            rounds: vec![ManifestRound {
                degree_cap: 7,
                basis_size: 10,
                factored: vec!["p*(th5 + 1)".into()],
                zero_factors: vec!["th5 + 1".into()],
                unit: false,
            }],
            seconds: 1.0,
            chain: Some(Box::new(ManifestEntry {
                choice: 1,
                case: 1,
                degree_cap: 9,
                outcome: "UnitIdeal".into(),
                relation: None,
                rounds: Vec::new(),
                seconds: 2.0,
                chain: None,
            })),
        };
        assert!(e.eliminated());
        assert_eq!(e.total_seconds(), 3.0);
        let m = Manifest {
            config: CampaignConfig::default(),
            entries: vec![e],
            wall_seconds: 3.0,
        };
        let back = Manifest::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        let d = paper_diff(&back.entries[0]).unwrap();
        assert!(d.outcome_match);
        assert_eq!(d.matched, vec!["th5 + 1".to_string()]);
        assert!(!d.factors_match());
    }
}

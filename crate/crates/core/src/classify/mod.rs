//! Sign choices, degeneracy cases and the elimination campaign, plus the
//! two explicit families of rank-6 modular data.

mod campaign;
mod families;
mod ideal;
mod signs;
mod tables;
mod tsolve;

pub use campaign::{
    diff_markdown, manifest_markdown, paper_diff, paper_diffs, run_campaign, run_pair,
    CampaignConfig, CampaignResult, Manifest, ManifestEntry, ManifestRound, PaperDiff,
    CAMPAIGN_PRIMES,
};
pub use tables::{paper_table, paper_tables, PaperOutcome, PaperRound, PaperTable};

pub use families::{
    construct_family_a, construct_family_b, family_b_r, galois_images, galois_orbit,
    golden_heptagon_d,
    rank3_factor, relabeling_between, relabelings, verify_fusion_relabeling, PRINTED_CHAR_POLYS,
    PRINTED_N4,
};

pub use ideal::{
    build_ideal, campaign_registry, modular_relations, paper_degree_cap, structural_s_matrix,
    SEntry, SSymbol, StructuralS, CAMPAIGN_VARIABLES,
};
pub use signs::{
    close_equalities, enumerate_degeneracy_cases, enumerate_sign_choices, DegeneracyCase,
    SignChoice, SignChoiceCatalog, SIGMA,
};

pub use tsolve::{
    enumerate_solutions, filter_by_fs, parse_t_relations, same_ideal, solution_data, solve_t_ideal, t_ideal_generators,
    t_registry, FsFilter, TSolution, TSolveResult, PRINTED_T_RELATIONS,
    PRINTED_T_RELATION_AS_TYPESET, T_PRIMES, T_VARIABLES, modular_groebner,
};

use thiserror::Error;

use crate::groebner::GroebnerError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("inconsistent sign propagation: {0}")]
    InconsistentSigns(String),
    #[error("unknown sign choice {0}")]
    UnknownChoice(u8),
    #[error("unknown degeneracy case {0}")]
    UnknownCase(u8),
    #[error("T-matrix solve: {0}")]
    TSolve(String),
    #[error("campaign manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

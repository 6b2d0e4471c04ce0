use serde::Serialize;

/// Final outcome recorded for a published run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PaperOutcome {
    UnitIdeal,
    Forbidden,
    /// Reduction to the given degeneracy case.
    Reduction(u8),
}

impl PaperOutcome {
    pub fn label(&self) -> String {
        match self {
            PaperOutcome::UnitIdeal => "UnitIdeal".into(),
            PaperOutcome::Forbidden => "Forbidden".into(),
            PaperOutcome::Reduction(c) => format!("Reduction(case {c})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperRound {
    pub degree_cap: u32,
    pub zero_factors: Vec<&'static str>,
}

/// One published elimination table, attached to the (choice, case) it
/// belongs to. `heading` is the label it was printed under when that
/// differs, and `shared_with` names the table it was declared identical to.
#[derive(Clone, Debug, Serialize)]
pub struct PaperTable {
    pub choice: u8,
    pub case: u8,
    pub outcome: PaperOutcome,
    pub rounds: Vec<PaperRound>,
    pub heading: Option<(u8, u8)>,
    pub shared_with: Option<(u8, u8)>,
}

fn round(cap: u32, zero_factors: &[&'static str]) -> PaperRound {
    PaperRound {
        degree_cap: cap,
        zero_factors: zero_factors.to_vec(),
    }
}

fn table(choice: u8, case: u8, outcome: PaperOutcome, rounds: Vec<PaperRound>) -> PaperTable {
    PaperTable {
        choice,
        case,
        outcome,
        rounds,
        heading: None,
        shared_with: None,
    }
}

fn case1(choice: u8, first_cap: u32, last_cap: u32, mid: &[&'static [&'static str]], first: &'static str) -> PaperTable {
    let mut rounds = vec![round(first_cap, &[first])];
    rounds.extend(mid.iter().map(|z| round(first_cap, z)));
    rounds.push(round(last_cap, &[]));
    table(choice, 1, PaperOutcome::Forbidden, rounds)
}

fn reduce(choice: u8, case: u8, first: [&'static str; 3], second: [&'static str; 2]) -> PaperTable {
    table(
        choice,
        case,
        PaperOutcome::Reduction(1),
        vec![round(7, &first), round(7, &second)],
    )
}

/// Case 2 as published for sign choice 3, reused verbatim by 6, 7 and 15.
fn case2_choice3(choice: u8) -> PaperTable {
    let mut t = table(
        choice,
        2,
        PaperOutcome::UnitIdeal,
        vec![round(8, &["th5 + 1"]), round(9, &[])],
    );
    if choice != 3 {
        t.shared_with = Some((3, 2));
    }
    t
}

/// Every published elimination table, keyed to the run it describes.
/// Polynomials use the campaign variables (Dsq for D², s33 for S₃₃).
/// Sign choice 8 has no published table.
pub fn paper_tables() -> Vec<PaperTable> {
    use PaperOutcome::*;
    let mut out = vec![
        case1(1, 9, 9, &[], "d3 + d4 + d5"),
        table(
            1,
            2,
            UnitIdeal,
            vec![round(8, &["th5 + 1"]), round(8, &["p + 2", "th1 + th2"]), round(8, &[])],
        ),
        reduce(
            1,
            3,
            ["s35*th4 + s34*th5 + s33", "d5*th4 + d4*th5 + d3", "d2*th4 + d1*th5 - 1"],
            ["th4 + th5", "th5 + 1"],
        ),
        reduce(
            1,
            4,
            ["s33*th3 + s34*th5 + s35", "d5*th3 + d3*th5 + d4", "d1*th3 + d2*th5 - 1"],
            ["th3 + th5", "th5 + 1"],
        ),
        reduce(
            1,
            5,
            ["s33*th3 + s35*th4 + s34", "d4*th3 + d3*th4 + d5", "d2*th3 + d1*th4 - 1"],
            ["th3 + th4", "th4 + 1"],
        ),
    ];
    for (case, cap) in [(1, 9), (2, 9), (3, 7), (4, 7), (5, 7)] {
        out.push(table(2, case, UnitIdeal, vec![round(cap, &[])]));
    }
    out.push(case1(
        3,
        9,
        9,
        &[&["p^2 - Dsq", "th3 + th4 + th5 + 1"]],
        "d3 - d4 + d5",
    ));
    out.push(case2_choice3(3));
    out.push(reduce(
        3,
        3,
        ["s35*th4 - s34*th5 + s33", "d5*th4 - d4*th5 + d3", "d2*th4 - d1*th5 + 1"],
        ["th4 + th5", "th5 + 1"],
    ));
    out.push(reduce(
        3,
        4,
        ["s33*th3 - s34*th5 + s35", "d5*th3 + d3*th5 - d4", "d1*th3 - d2*th5 - 1"],
        ["th3 + th5", "th5 + 1"],
    ));
    // printed as θ3 + θ5, θ5 + 1 in the second round
    out.push(reduce(
        3,
        5,
        ["s33*th3 + s35*th4 - s34", "d4*th3 - d3*th4 - d5", "d2*th3 - d1*th4 + 1"],
        ["th3 + th5", "th5 + 1"],
    ));

    out.push(case1(6, 9, 9, &[], "d3 - d4 - d5"));
    out.push(case2_choice3(6));
    let mut rest = vec![
        reduce(
            6,
            3,
            ["s35*th4 + s34*th5 - s33", "d5*th4 + d4*th5 - d3", "d2*th4 - d1*th5 - 1"],
            ["th4 + th5", "th5 + 1"],
        ),
        reduce(
            6,
            4,
            ["s33*th3 - s34*th5 - s35", "d5*th3 - d3*th5 + d4", "d1*th3 - d2*th5 + 1"],
            ["th3 + th5", "th5 + 1"],
        ),
        reduce(
            6,
            5,
            ["s33*th3 - s35*th4 - s34", "d4*th3 - d3*th4 + d5", "d2*th3 - d1*th4 - 1"],
            ["th3 + th4", "th4 + 1"],
        ),
    ];
    for t in rest.iter_mut() {
        t.heading = Some((15, t.case));
    }
    out.extend(rest);

    let mut c71 = case1(7, 9, 9, &[], "d3 - d4 - d5");
    c71.shared_with = Some((6, 1));
    out.push(c71);
    out.push(case2_choice3(7));
    out.push(reduce(
        7,
        3,
        ["s35*th4 + s34*th5 - s33", "d5*th4 + d4*th5 - d3", "d2*th4 + d1*th5 - 1"],
        ["th4 + th5", "th5 + 1"],
    ));
    let mut rest = vec![
        reduce(
            7,
            4,
            ["s33*th3 - s34*th5 - s35", "d5*th3 - d3*th5 + d4", "d1*th3 + d2*th5 - 1"],
            ["th3 + th5", "th5 + 1"],
        ),
        reduce(
            7,
            5,
            ["s33*th3 - s35*th4 - s34", "d4*th3 - d3*th4 + d5", "d2*th3 + d1*th4 - 1"],
            ["th3 + th4", "th4 + 1"],
        ),
    ];
    for t in rest.iter_mut() {
        t.heading = Some((15, t.case));
    }
    out.extend(rest);

    out.push(case1(15, 8, 9, &[], "d3 + d4 + d5"));
    out.push(case2_choice3(15));
    out.push(reduce(
        15,
        3,
        ["s35*th4 + s34*th5 + s33", "d5*th4 + d4*th5 + d3", "d2*th4 - d1*th5 + 1"],
        ["th4 + th5", "th5 + 1"],
    ));
    out.push(reduce(
        15,
        4,
        ["s33*th3 + s34*th5 + s35", "d5*th3 + d3*th5 + d4", "d1*th3 - d2*th5 - 1"],
        ["th3 + th5", "th5 + 1"],
    ));
    out.push(reduce(
        15,
        5,
        ["s33*th3 + s35*th4 + s34", "d4*th3 + d3*th4 + d5", "d2*th3 - d1*th4 + 1"],
        ["th3 + th4", "th4 + 1"],
    ));
    out
}

pub fn paper_table(choice: u8, case: u8) -> Option<PaperTable> {
    paper_tables().into_iter().find(|t| t.choice == choice && t.case == case)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::campaign_registry;
    use crate::exact::{MonomialOrder, Poly};

    #[test]
    fn tables_cover_all_but_choice_8() {
        let t = paper_tables();
        assert_eq!(t.len(), 30);
        for choice in [1, 2, 3, 6, 7, 15] {
            for case in 1..=5 {
                assert!(paper_table(choice, case).is_some(), "{choice},{case}");
            }
        }
        assert!(paper_table(8, 1).is_none());
    }

    #[test]
    fn factors_parse() {
        let r = campaign_registry();
        for t in paper_tables() {
            for rd in &t.rounds {
                for z in &rd.zero_factors {
                    Poly::parse(&r, MonomialOrder::GrevLex, z).unwrap();
                }
            }
        }
    }
}

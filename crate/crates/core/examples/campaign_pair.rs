//! Runs one (sign choice, case) pair of the elimination campaign and
//! compares it with the published table. Arguments: choice case
//! (default 3 4).

use rank6::classify::{diff_markdown, paper_diff, run_pair, CampaignConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u8>().expect("integer argument"));
    let choice = args.next().unwrap_or(3);
    let case = args.next().unwrap_or(4);
    let cfg = CampaignConfig::default();
    let (entry, traces) = run_pair(choice, case, &cfg).expect("campaign run");
    for t in &traces {
        print!("{}", t.to_markdown());
        println!("\n{}\n", t.outcome.label());
    }
    println!("final outcome {} after {:.1}s", entry.final_outcome(), entry.total_seconds());
    print!("{}", diff_markdown(&[paper_diff(&entry).expect("diff")]));
}

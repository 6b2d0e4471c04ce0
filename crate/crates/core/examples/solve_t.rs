//! Solves for the T-matrix given the S-matrix of the second family, then
//! filters the solutions by second Frobenius-Schur indicators.

use rank6::classify::{construct_family_b, filter_by_fs, solve_t_ideal};
use rank6::cli::root_label;

fn main() {
    let md = construct_family_b();
    let res = solve_t_ideal(md.s()).expect("T-solve");
    println!("d5 = {} with minimal polynomial {}", res.d5, res.d5_min_poly);
    println!("reduced basis:");
    for r in &res.relations {
        println!("  {r}");
    }
    println!("printed relations in the ideal: {}", res.printed_in_ideal);
    println!("basis elements outside the printed ideal: {}", res.not_in_printed.len());
    println!("{} solutions of the printed system, {} of the ideal", res.solutions.len(), res.ideal_solutions.len());

    let (fs, _) = filter_by_fs(&res).expect("indicator filter");
    for &i in &fs.survivors {
        let sol = &res.solutions[i];
        let t: Vec<String> = sol.thetas.iter().map(root_label).collect();
        let mark = if fs.survivors_for_s.contains(&i) { "*" } else { " " };
        println!("{mark} d5 = {}, theta = [{}]", sol.d5, t.join(", "));
    }
    println!("survivors for S form a conjugate pair: {}", fs.conjugate_pair(&res.solutions));
}

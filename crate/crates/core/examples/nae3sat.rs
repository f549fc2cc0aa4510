//! The NAE-3SAT reduction: ± pattern sets whose capacity is positive
//! exactly when the formula is not-all-equal satisfiable.

use diffcap::positivity::{decide_positive_extended, nae3sat_solve, reduce_nae3sat, Nae3SatInstance};

fn main() -> diffcap::Result<()> {
    let cnf = "c two clauses\np cnf 5 2\n1 -3 4 0\n-2 4 5 0\n";
    let inst = Nae3SatInstance::parse_dimacs(cnf)?;
    let d = reduce_nae3sat(&inst)?;
    print!("{}", d.to_file_string());
    println!("assignment: {:?}", nae3sat_solve(&inst)?);
    println!("positive capacity: {}", decide_positive_extended(&d)?);

    // all eight sign patterns on three variables: no NAE assignment exists
    let mut clauses = String::new();
    for mask in 0..8 {
        for v in 1..=3i32 {
            let lit = if mask >> (v - 1) & 1 == 1 { -v } else { v };
            clauses.push_str(&format!("{lit} "));
        }
        clauses.push_str("0\n");
    }
    let hard = Nae3SatInstance::parse_dimacs(&format!("p cnf 3 8\n{clauses}"))?;
    let d = reduce_nae3sat(&hard)?;
    println!(
        "{} clauses over 3 variables: satisfiable {:?}, positive {}",
        hard.clauses().len(),
        nae3sat_solve(&hard)?.is_some(),
        decide_positive_extended(&d)?
    );
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

// The Desarguesian line spread of the hyperplane at infinity of PG(6,q).
//
// ```bash
// cargo run --example spread -- 4
// ```

use qhvar::bc;
use qhvar::ff::Fq2;

pub fn run_example_for(q: u32) -> Result<(), Box<dyn std::error::Error>> {
    let f = Fq2::for_q(q)?;
    let check = bc::spread_selftest(&f);
    println!(
        "q = {q}: {} lines cover {} of {} points at infinity, disjoint = {}",
        check.lines, check.points_covered, check.points_at_infinity, check.disjoint
    );
    assert!(check.pass());

    for line in bc::enum_spread(&f).iter().take(3) {
        println!("  {:?} line {} spanned by {:?}", line.kind(), line.label(), line.span());
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run_example_for(3)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    run_example_for(q)
}

// SPDX-License-Identifier: Apache-2.0

// Closed-form counts of inequivalent BM unitals and BM varieties.
//
// ```bash
// cargo run --example counting_formulas
// ```

use qhvar::varieties::{bm_unital_count, bm_variety_count};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!(" p  n  unitals  varieties");
    for (p, n) in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)] {
        let u = bm_unital_count(p, n).map_or("-".to_string(), |v| v.to_string());
        let v = bm_variety_count(p, n).map_or("-".to_string(), |v| v.to_string());
        println!("{p:>2} {n:>2} {u:>8} {v:>10}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

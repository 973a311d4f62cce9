// SPDX-License-Identifier: Apache-2.0

// Hyperplane intersection sizes of quasi-Hermitian varieties.
//
// ```bash
// cargo run --release --example two_character_scan
// ```

use qhvar::ff::{FiniteField, Fq2};
use qhvar::varieties::{BmParams, HermitianMatrix, VarietySpec};
use qhvar::verify::{two_character_scan, ScanOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for q in [2, 3, 4] {
        let f = Fq2::for_q(q)?;
        let specs = [
            VarietySpec::Hermitian(HermitianMatrix::identity(&f, 4)),
            VarietySpec::Mab(BmParams::default_for(&f)),
        ];
        for spec in specs {
            let t = two_character_scan(&f, &spec, &ScanOptions::full())?;
            println!(
                "q = {q} {:>9}: |V| = {:>5}, sizes {:?}, pass = {}",
                spec.tag(),
                t.variety_size,
                t.histogram.counts,
                t.pass(f.order())
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

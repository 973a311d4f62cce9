// SPDX-License-Identifier: Apache-2.0

// Every BM check for the default parameters at one q.
//
// ```bash
// cargo run --release --example bm_pipeline -- 5
// ```

use qhvar::varieties::BmParams;
use qhvar::verify::{build_field, verify_bm, PipelineOptions, ScanOptions};

pub fn run_example_for(q: u32) -> Result<bool, Box<dyn std::error::Error>> {
    let f = build_field(q, None, None)?;
    let bm = BmParams::default_for(&f);
    let opts = PipelineOptions { scan: Some(ScanOptions::full()) };
    let reports = verify_bm(&f, bm, &opts)?;
    for r in &reports {
        println!("{r}");
    }
    Ok(reports.iter().all(|r| !r.failed()))
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    assert!(run_example_for(3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    if !run_example_for(q)? {
        std::process::exit(1);
    }
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

// Every BT check at q = 8, with a sampled hyperplane scan.
//
// ```bash
// cargo run --release --example bt_pipeline
// ```

use qhvar::varieties::BtParams;
use qhvar::verify::{build_field, verify_bt, PipelineOptions, ScanOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = build_field(8, None, None)?;
    let bt = BtParams::new(&f)?;
    println!("e = {}, σ = {}", bt.e, bt.sigma);
    let opts = PipelineOptions { scan: Some(ScanOptions::sampled(2000, 7)) };
    let reports = verify_bt(&f, bt, &opts)?;
    for r in &reports {
        println!("{r}");
    }
    assert!(reports.iter().all(|r| r.pass == Some(true)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

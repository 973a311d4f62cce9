// SPDX-License-Identifier: Apache-2.0

// The base quadric of the cone B' for every valid (a, b) at small q.
//
// ```bash
// cargo run --example classify_quadric
// ```

use std::collections::BTreeMap;

use qhvar::ff::Fq2;
use qhvar::hypersurfaces::{base_matrix, classify_quadric, det_closed_form};
use qhvar::varieties::BmParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for q in [3, 4, 5] {
        let f = Fq2::for_q(q)?;
        let mut kinds = BTreeMap::new();
        let mut dets_match = true;
        for bm in BmParams::all_valid(&f) {
            let m = base_matrix(&f, bm);
            dets_match &= m.det_a == det_closed_form(&f, bm);
            let c = classify_quadric(f.base(), &m.form);
            *kinds.entry((format!("{:?}", c.kind), c.points)).or_insert(0u32) += 1;
        }
        println!("q = {q}: {kinds:?}, determinants match closed form: {dets_match}");
    }

    let f = Fq2::for_q(3)?;
    let m = base_matrix(&f, BmParams::default_for(&f));
    for row in &m.a {
        println!("  {row:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

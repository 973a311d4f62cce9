// SPDX-License-Identifier: Apache-2.0

// The affine map from PG(3,q²) to PG(6,q) and the image of B_{a,b}.
//
// ```bash
// cargo run --example correspondence
// ```

use qhvar::bc::{psi, psi_inverse};
use qhvar::ff::Fq2;
use qhvar::hypersurfaces::Hypersurface6;
use qhvar::pg::PointSet;
use qhvar::varieties::{BmParams, VarietySpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Fq2::for_q(3)?;
    let p = [1, f.join(1, 2), 4, f.join(0, 1)];
    let x = psi(&f, &p)?;
    println!("{p:?} -> {x:?} -> {:?}", psi_inverse(&f, &x)?);

    let bm = BmParams::default_for(&f);
    let image = PointSet::from_coords(
        6,
        f.q(),
        VarietySpec::Bab(bm).points(&f).iter().filter(|p| p[0] != 0).map(|p| psi(&f, &p).expect("affine")),
    );
    let cone = Hypersurface6::bprime(&f, bm).points(&f);
    let affine = cone.filter(|x| x[0] != 0);
    println!("|ψ(B)| = {}, |B' affine| = {}, |B'| = {}, equal: {}", image.len(), affine.len(), cone.len(), image == affine);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

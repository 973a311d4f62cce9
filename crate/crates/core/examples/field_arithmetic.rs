// SPDX-License-Identifier: Apache-2.0

// Arithmetic in GF(q²) built as a quadratic extension of GF(q).
//
// ```bash
// cargo run --example field_arithmetic
// ```

use qhvar::ff::{FiniteField, Fq2, Pair};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Fq2::for_q(3)?;
    println!("GF(9) over GF(3): δ = {}, ε = {}", f.delta(), Pair(&f, f.epsilon()));

    let x = f.join(1, 2);
    let y = f.join(2, 1);
    println!("x = {}, y = {}", Pair(&f, x), Pair(&f, y));
    println!("x + y = {}", Pair(&f, f.add(x, y)));
    println!("x · y = {}", Pair(&f, f.mul(x, y)));
    println!("x⁻¹ = {}", Pair(&f, f.inv(x)));
    println!("x^q = {}, T(x) = {}, N(x) = {}", Pair(&f, f.frobenius(x)), f.trace(x), f.norm(x));

    let g = Fq2::for_q(8)?;
    let z = g.join(3, 5);
    assert_eq!(g.frobenius(g.frobenius(z)), z);
    assert!(g.in_base(g.norm(z)) && g.in_base(g.trace(z)));
    println!("GF(64): modulus {}, ε² + ε = δ = {}", g.base().descriptor().modulus_string(), g.delta());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

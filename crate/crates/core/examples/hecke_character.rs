// SPDX-License-Identifier: Apache-2.0

//! Canonical Hecke characters: generator images, values, conductors.

use cm_newforms::classgroup::PrimeIdeal;
use cm_newforms::heckechar::{canonical_conductor, HeckeChar};
use cm_newforms::quadfield::QuadField;

fn main() -> cm_newforms::Result<()> {
    let k = QuadField::new(15)?;
    for signs in [[1], [-1]] {
        let psi = HeckeChar::canonical(k, 2, &signs)?;
        println!("delta = 15, l = 2, signs {signs:?}");
        for p in [2, 3, 5, 17] {
            for q in PrimeIdeal::above(k, p)? {
                println!("  psi({}) = {}", q.ideal, psi.evaluate(&q.ideal)?);
            }
        }
    }

    for (delta, l) in [(7, 2), (7, 3), (3, 2), (4, 2), (4, 3), (8, 2), (8, 3)] {
        let c = canonical_conductor(QuadField::new(delta)?, l)?;
        println!(
            "delta = {delta}, l = {l}: conductor {c} of norm {}",
            c.norm()
        );
    }

    // no character of infinity type 2 exists when the class group has exponent 3
    println!(
        "delta = 23, l = 2: {:?}",
        HeckeChar::canonical(QuadField::new(23)?, 2, &[]).err()
    );
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

//! Class groups as reduced forms: structure, generators, discrete logs.

use cm_newforms::classgroup::{prime_ideal_above, FormClassGroup};
use cm_newforms::quadfield::QuadField;

fn main() -> cm_newforms::Result<()> {
    for delta in [7, 23, 4027, 5460] {
        let g = FormClassGroup::build(QuadField::new(delta)?)?;
        println!(
            "delta = {delta}: h = {}, invariants {:?}, exponent {}",
            g.class_number(),
            g.invariant_factors(),
            g.exponent()
        );
        for f in g.factors() {
            println!("  generator of order {}: {}", f.order, f.ideal);
        }
    }

    let g = FormClassGroup::build(QuadField::new(23)?)?;
    for p in [2, 3, 13] {
        let q = prime_ideal_above(g.field(), p)?;
        println!(
            "delta = 23: prime above {p} has log {:?}",
            g.discrete_log_ideal(&q.ideal)?
        );
    }
    Ok(())
}

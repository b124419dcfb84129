// SPDX-License-Identifier: Apache-2.0

//! q-expansions of CM newforms, with the ideal-sum cross-check and bound checks.

use cm_newforms::heckechar::HeckeChar;
use cm_newforms::newform::{check_all_bounds, direct_coefficient, q_expansion};
use cm_newforms::quadfield::QuadField;

fn main() -> cm_newforms::Result<()> {
    for (delta, l) in [(7, 2), (7, 3), (8, 3), (4027, 3)] {
        let psi = HeckeChar::canonical(QuadField::new(delta)?, l, &[])?;
        let nf = q_expansion(&psi, 60)?;
        println!(
            "delta = {delta}: weight {}, level {}, nebentypus {}",
            nf.weight, nf.level, nf.nebentypus
        );
        let first: Vec<String> = (1..=20).map(|n| nf.a(n).to_string()).collect();
        println!("  a_1..a_20 = {}", first.join(" "));
        assert!((1..=60).all(|n| direct_coefficient(&psi, n) == Ok(nf.a(n))));
        let report = check_all_bounds(&psi, &nf)?;
        println!(
            "  bounds ok: {} good primes, level exponents {:?}",
            report.ramanujan_checked, report.level_exponents
        );
    }
    Ok(())
}

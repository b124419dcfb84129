// SPDX-License-Identifier: Apache-2.0
use cm_newforms::cli::tables::EmbeddedTable;
use cm_newforms::newform::{calibrate_signs, coefficient_ap};
use cm_newforms::quadfield::QuadField;
fn main() {
    for t in [EmbeddedTable::weight3(), EmbeddedTable::weight4()] {
        for r in &t.rows {
            let k = QuadField::new(r.delta).unwrap();
            match calibrate_signs(k, t.weight - 1, &r.coefficients) {
                Ok(c) => {
                    let bad: Vec<_> = r
                        .coefficients
                        .iter()
                        .filter(|(p, a)| coefficient_ap(&c.character, *p).unwrap() != *a)
                        .map(|(p, a)| (p, a, coefficient_ap(&c.character, *p).unwrap()))
                        .collect();
                    println!(
                        "{} {} lvl {} vs {} matches {} bad {:?}",
                        t.weight,
                        r.label,
                        c.character.level(),
                        r.level,
                        c.matches,
                        bad
                    );
                }
                Err(e) => println!("{} {} ERR {e}", t.weight, r.label),
            }
        }
    }
}

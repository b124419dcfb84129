// SPDX-License-Identifier: Apache-2.0

//! Calibrate the sign vector of every embedded table row and compare all coefficients.

use cm_newforms::cli::tables::EmbeddedTable;
use cm_newforms::newform::{calibrate_signs, coefficient_ap};
use cm_newforms::quadfield::QuadField;

fn main() -> cm_newforms::Result<()> {
    for table in [EmbeddedTable::weight3(), EmbeddedTable::weight4()] {
        let mut pass = 0;
        for row in &table.rows {
            let cal = calibrate_signs(
                QuadField::new(row.delta)?,
                table.weight - 1,
                &row.coefficients,
            )?;
            let ok = cal.character.level() == row.level
                && row
                    .coefficients
                    .iter()
                    .all(|&(p, a)| coefficient_ap(&cal.character, p) == Ok(a));
            if !cal.signs.is_empty() {
                println!(
                    "weight {} level {}: signs {:?} ({} matching)",
                    table.weight, row.label, cal.signs, cal.matches
                );
            }
            pass += ok as usize;
        }
        println!(
            "weight {}: {pass}/{} rows reproduced",
            table.weight,
            table.rows.len()
        );
    }
    Ok(())
}

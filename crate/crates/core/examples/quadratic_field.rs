// SPDX-License-Identifier: Apache-2.0

//! Element arithmetic in Q(sqrt(-7)) and Q(sqrt(-15)).

use cm_newforms::quadfield::{QuadField, QuadInt};

fn main() -> cm_newforms::Result<()> {
    let k = QuadField::new(7)?;
    let a = QuadInt::new(k, 4, 2)?; // 2 + sqrt(-7), stored as (x + y sqrt(-7))/2
    println!(
        "{k}: alpha = {a}, N(alpha) = {}, Tr(alpha) = {}",
        a.norm()?,
        a.trace()
    );
    println!("alpha^2 = {}", a.pow(2)?);
    println!(
        "alpha mod sqrt(-7) = {}, chi_K of it = {}",
        a.residue_embedding()?,
        k.chi(a.residue_embedding()?)
    );
    for p in [2, 3, 7, 11] {
        println!("p = {p}: {:?}", k.splitting(p));
    }

    let k = QuadField::new(15)?;
    println!("{k}: elements of norm 4 up to units:");
    for e in k.elements_of_norm(4)? {
        println!("  {e}");
    }
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

//! Fields whose class group exponent divides l.

use cm_newforms::fieldsearch::{search, search_parallel};

fn main() -> cm_newforms::Result<()> {
    println!("exponent 1: {:?}", search(1, 200)?);
    let two = search(2, 5460)?;
    println!(
        "exponent | 2, delta <= 5460: {} fields, largest {:?}",
        two.len(),
        two.last()
    );
    let three = search_parallel(3, 100_000, 4)?;
    println!("exponent | 3, delta <= 100000: {} fields", three.len());
    println!("{three:?}");
    Ok(())
}

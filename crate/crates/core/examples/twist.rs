// SPDX-License-Identifier: Apache-2.0

//! Quadratic twists: genus characters move between sign choices, others raise the level.

use cm_newforms::heckechar::{genus_discriminants, HeckeChar};
use cm_newforms::newform::q_expansion;
use cm_newforms::quadfield::QuadField;

fn show(tag: &str, psi: &HeckeChar) -> cm_newforms::Result<()> {
    let nf = q_expansion(psi, 30)?;
    let a: Vec<String> = [2, 3, 5, 17, 19, 23]
        .iter()
        .map(|&p| format!("a_{p}={}", nf.a(p)))
        .collect();
    println!("{tag:>16}: N={} {}", nf.level, a.join(" "));
    Ok(())
}

fn main() -> cm_newforms::Result<()> {
    let k = QuadField::new(15)?;
    let psi = HeckeChar::canonical(k, 2, &[-1])?;
    show("signs [-1]", &psi)?;
    show("signs [+1]", &HeckeChar::canonical(k, 2, &[1])?)?;
    for d in genus_discriminants(k).into_iter().skip(1) {
        show(&format!("twist by ({d}/.)"), &psi.twist(d)?)?;
    }
    show("twist by (-4/.)", &psi.twist(-4)?)?;
    Ok(())
}

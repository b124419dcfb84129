// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Runs as a plain program under `cargo test` and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use cm_newforms::cli::tables::EmbeddedTable;
use cm_newforms::error::Error;
use cm_newforms::fieldsearch::search;
use cm_newforms::heckechar::HeckeChar;
use cm_newforms::newform::{calibrate_signs, coefficient_ap, q_expansion};
use cm_newforms::quadfield::QuadField;
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TABLE_BUDGET: Duration = Duration::from_secs(10);
const SEARCH_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn reproduce(table: &EmbeddedTable, primes: usize) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut compared = 0;
    for row in &table.rows {
        if row.coefficients.len() != primes {
            bad.push(format!(
                "{}: {} coefficients tabulated",
                row.label,
                row.coefficients.len()
            ));
            continue;
        }
        let field = QuadField::new(row.delta).map_err(|e| e.to_string())?;
        let psi = match calibrate_signs(field, table.weight - 1, &row.coefficients) {
            Ok(c) => c.character,
            Err(e) => {
                bad.push(format!("{}: {e}", row.label));
                continue;
            }
        };
        for &(p, expected) in &row.coefficients {
            compared += 1;
            match coefficient_ap(&psi, p) {
                Ok(got) if got == expected => {}
                Ok(got) => bad.push(format!(
                    "{} p={p}: expected {expected}, got {got}",
                    row.label
                )),
                Err(e) => bad.push(format!("{} p={p}: {e}", row.label)),
            }
        }
    }
    let elapsed = start.elapsed();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if elapsed > TABLE_BUDGET {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!(
        "{} rows, {compared} coefficients exact in {elapsed:.2?}",
        table.rows.len()
    ))
}

fn levels() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for c in cases() {
        n += 1;
        let nf = q_expansion(&c.psi, 1).map_err(|e| e.to_string())?;
        if nf.level != c.row.level {
            bad.push(format!(
                "wt{} {}: computed {}",
                c.weight, c.row.label, nf.level
            ));
        }
        let (delta, cond) = (c.psi.field().delta(), c.psi.conductor().norm());
        if nf.level != delta * cond {
            bad.push(format!(
                "wt{} {}: level is not delta * N(conductor)",
                c.weight, c.row.label
            ));
        }
        if c.weight == 4 && ![3, 4, 8].contains(&delta) && nf.level != delta * delta {
            bad.push(format!(
                "wt4 {}: level {} is not delta^2",
                c.row.label, nf.level
            ));
        }
    }
    for (weight, delta, conductor, level) in
        [(3, 4, 4, 16), (3, 3, 9, 27), (4, 4, 8, 32), (4, 8, 32, 256)]
    {
        let c = cases()
            .iter()
            .find(|c| c.weight == weight && c.row.delta == delta)
            .ok_or("row missing")?;
        if c.psi.conductor().norm() != conductor || c.psi.level() != level {
            bad.push(format!(
                "wt{weight} delta={delta}: M={} N={}",
                c.psi.conductor().norm(),
                c.psi.level()
            ));
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "{n} rows; 16, 27, 32, 256 and every odd-l delta^2 level reproduced"
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn search_counts() -> Outcome {
    let mut msgs = Vec::new();
    for (l, bound, table) in [
        (2, 5460, EmbeddedTable::weight3()),
        (3, 100000, EmbeddedTable::weight4()),
    ] {
        let start = Instant::now();
        let found = search(l, bound).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let mut expected: Vec<u64> = table.rows.iter().map(|r| r.delta).collect();
        expected.sort_unstable();
        if found != expected {
            return Err(format!(
                "l={l}: found {} fields, table has {}",
                found.len(),
                expected.len()
            ));
        }
        if elapsed > SEARCH_BUDGET {
            return Err(format!("l={l}: took {elapsed:.2?}"));
        }
        msgs.push(format!(
            "l={l} B={bound}: {} fields in {elapsed:.2?}",
            found.len()
        ));
    }
    Ok(msgs.join(", "))
}

fn every_case(check: impl Fn(&Case, &mut ChaCha8Rng) -> Check) -> Outcome {
    let mut bad = Vec::new();
    for (i, c) in cases().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
        if let Err(e) = check(c, &mut rng) {
            bad.push(format!("wt{} {}: {e}", c.weight, c.row.label));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} characters", cases().len()))
    } else {
        Err(bad.join("; "))
    }
}

fn ramanujan_all() -> Outcome {
    every_case(|c, _| {
        ramanujan(c.weight, c.row.level, &c.row.coefficients)?;
        let nf = q_expansion(&c.psi, 1000).map_err(|e| e.to_string())?;
        let computed: Vec<(u64, i128)> = cm_newforms::arith::primes_up_to(1000)
            .into_iter()
            .map(|p| (p, nf.a(p)))
            .collect();
        ramanujan(c.weight, nf.level, &computed)
    })
}

fn negative_controls() -> Outcome {
    match HeckeChar::canonical(QuadField::new(23).map_err(|e| e.to_string())?, 2, &[]) {
        Err(Error::ExponentMismatch { exponent: 3, l: 2 }) => {}
        other => return Err(format!("delta=23, l=2 gave {other:?}")),
    }
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/table_wt3_corrupted.txt"
    );
    let out = cm_newforms::cli::run([
        "cm-newforms",
        "verify",
        "--table",
        "wt3",
        "--table-file",
        fixture,
    ]);
    if out.code != 1 {
        return Err(format!("corrupted fixture: exit {}", out.code));
    }
    Ok("ExponentMismatch for (23, 2); corrupted fixture exits 1".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "1 weight-3 table",
            Box::new(|| reproduce(&EmbeddedTable::weight3(), 30)),
        ),
        (
            "2 weight-4 table",
            Box::new(|| reproduce(&EmbeddedTable::weight4(), 25)),
        ),
        ("3 levels", Box::new(levels)),
        ("4 search counts", Box::new(search_counts)),
        (
            "5a recurrence = ideal sum, n <= 2000",
            Box::new(|| every_case(|c, _| recurrence_matches_direct(&c.psi, 2000))),
        ),
        (
            "5b homomorphy, norms, traces, ideal equation",
            Box::new(|| {
                every_case(|c, rng| {
                    homomorphy(&c.psi, 500, rng)?;
                    norm_and_trace(&c.psi, 200, rng)?;
                    ideal_equation(&c.psi, 100, rng)
                })
            }),
        ),
        ("5c Ramanujan bound", Box::new(ramanujan_all)),
        (
            "5d inert primes vanish",
            Box::new(|| every_case(|c, _| inert_vanishing(&c.psi, 1000))),
        ),
        (
            "5e sign changes are genus twists",
            Box::new(|| every_case(|c, _| sign_changes_are_genus_twists(&c.psi, 200))),
        ),
        (
            "5f conductor and level exponent bounds",
            Box::new(|| every_case(|c, _| bounds(&c.psi, 200))),
        ),
        ("6 negative controls", Box::new(negative_controls)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(msg) => println!("PASS [{name}] {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{name}] {msg}");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

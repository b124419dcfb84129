// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use std::sync::OnceLock;

use cm_newforms::arith::{self, kronecker};
use cm_newforms::classgroup::{PrimeIdeal, QuadIdeal};
use cm_newforms::cli::tables::{EmbeddedTable, TableRow};
use cm_newforms::heckechar::{genus_discriminants, HeckeChar};
use cm_newforms::newform::{
    calibrate_signs, check_all_bounds, coefficient_ap, direct_coefficient, element_coefficient,
    q_expansion,
};
use cm_newforms::quadfield::{QuadField, QuadInt, SplitType};
use rand::Rng;

pub struct Case {
    pub weight: u32,
    pub row: TableRow,
    pub psi: HeckeChar,
}

/// Every table row with its calibrated character.
pub fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for table in [EmbeddedTable::weight3(), EmbeddedTable::weight4()] {
            for row in table.rows {
                let field = QuadField::new(row.delta).unwrap();
                let psi = calibrate_signs(field, table.weight - 1, &row.coefficients)
                    .unwrap()
                    .character;
                out.push(Case {
                    weight: table.weight,
                    row,
                    psi,
                });
            }
        }
        out
    })
}

pub type Check = Result<(), String>;

pub fn small_primes(field: QuadField, bound: u64) -> Vec<PrimeIdeal> {
    arith::primes_up_to(bound)
        .into_iter()
        .flat_map(|p| PrimeIdeal::above(field, p).unwrap())
        .collect()
}

/// A random product of small prime ideals with norm at most `MAX_SAMPLE_NORM`.
pub fn random_ideal<R: Rng>(primes: &[PrimeIdeal], rng: &mut R) -> QuadIdeal {
    let field = primes[0].ideal.field();
    let mut acc = QuadIdeal::unit(field);
    for _ in 0..rng.gen_range(0..=3) {
        let q = &primes[rng.gen_range(0..primes.len())];
        let next = acc
            .mul(&q.ideal.pow(rng.gen_range(1..=2)).unwrap())
            .unwrap();
        if next.norm() <= MAX_SAMPLE_NORM {
            acc = next;
        }
    }
    acc
}

pub const MAX_SAMPLE_NORM: i128 = 5000;

pub fn random_element<R: Rng>(field: QuadField, rng: &mut R) -> QuadInt {
    loop {
        let a = field
            .from_basis(rng.gen_range(-40..=40), rng.gen_range(-12..=12))
            .unwrap();
        if !a.is_zero() {
            return a;
        }
    }
}

/// Euler recurrence against the ideal sum (and the element sum when `h = 1`) for `n <= nmax`.
pub fn recurrence_matches_direct(psi: &HeckeChar, nmax: u64) -> Check {
    let nf = q_expansion(psi, nmax).map_err(|e| e.to_string())?;
    if nf.a(1) != 1 {
        return Err("a_1 != 1".into());
    }
    let principal_only = psi.group().class_number() == 1;
    for n in 1..=nmax {
        let d = direct_coefficient(psi, n).map_err(|e| format!("n={n}: {e}"))?;
        if d != nf.a(n) {
            return Err(format!("n={n}: recurrence {} vs ideal sum {d}", nf.a(n)));
        }
        if principal_only {
            let e = element_coefficient(psi, n).map_err(|e| format!("n={n}: {e}"))?;
            if e != d {
                return Err(format!("n={n}: element sum {e} vs ideal sum {d}"));
            }
        }
    }
    Ok(())
}

pub fn homomorphy<R: Rng>(psi: &HeckeChar, pairs: usize, rng: &mut R) -> Check {
    let primes = small_primes(psi.field(), 60);
    for _ in 0..pairs {
        let a = random_ideal(&primes, rng);
        let b = random_ideal(&primes, rng);
        let lhs = psi
            .evaluate(&a.mul(&b).unwrap())
            .map_err(|e| e.to_string())?;
        let rhs = psi
            .evaluate(&a)
            .unwrap()
            .checked_mul(&psi.evaluate(&b).unwrap())
            .unwrap();
        if lhs != rhs {
            return Err(format!("psi({a} * {b}) = {lhs}, product {rhs}"));
        }
    }
    Ok(())
}

/// Norm compatibility and trace integrality on random ideals.
pub fn norm_and_trace<R: Rng>(psi: &HeckeChar, samples: usize, rng: &mut R) -> Check {
    let primes = small_primes(psi.field(), 60);
    let l = psi.infinity_type();
    for _ in 0..samples {
        let a = random_ideal(&primes, rng);
        let v = psi.evaluate(&a).map_err(|e| e.to_string())?;
        if !psi.conductor().is_coprime_to_ideal(&a) {
            if !v.is_zero() {
                return Err(format!("nonzero value on {a}, which meets the conductor"));
            }
            continue;
        }
        if v.norm().unwrap() != a.norm().pow(l) {
            return Err(format!(
                "N(psi({a})) = {} but N(a)^l = {}",
                v.norm().unwrap(),
                a.norm().pow(l)
            ));
        }
        let s = v.checked_add(&psi.evaluate(&a.conj()).unwrap()).unwrap();
        if !s.is_rational() {
            return Err(format!("psi({a}) + psi(conj) = {s} is not rational"));
        }
    }
    Ok(())
}

/// `(psi((alpha))) = (alpha)^l` as ideals.
pub fn ideal_equation<R: Rng>(psi: &HeckeChar, samples: usize, rng: &mut R) -> Check {
    let mut done = 0;
    while done < samples {
        let alpha = random_element(psi.field(), rng);
        if !psi.conductor().is_coprime_to_element(&alpha) {
            continue;
        }
        done += 1;
        let v = psi.evaluate_principal(&alpha).map_err(|e| e.to_string())?;
        let lhs = QuadIdeal::principal(&v).unwrap();
        let rhs = QuadIdeal::principal(&alpha)
            .unwrap()
            .pow(psi.infinity_type())
            .unwrap();
        if lhs != rhs {
            return Err(format!("(psi(({alpha}))) = {lhs}, (alpha)^l = {rhs}"));
        }
    }
    Ok(())
}

pub fn ramanujan(weight: u32, level: u64, coefficients: &[(u64, i128)]) -> Check {
    for &(p, a) in coefficients {
        if !level.is_multiple_of(p) && a * a > 4 * (p as i128).pow(weight - 1) {
            return Err(format!("p={p}: |a_p| = {} above 2 p^((k-1)/2)", a.abs()));
        }
    }
    Ok(())
}

pub fn inert_vanishing(psi: &HeckeChar, bound: u64) -> Check {
    for p in arith::primes_up_to(bound) {
        let ap = coefficient_ap(psi, p).map_err(|e| e.to_string())?;
        if psi.field().splitting(p) == SplitType::Inert && ap != 0 {
            return Err(format!("inert p={p} has a_p = {ap}"));
        }
        if ap != 0 && !psi.level().is_multiple_of(p) && psi.field().chi(p as i128) != 1 {
            return Err(format!("a_{p} = {ap} at a prime with chi_K(p) != 1"));
        }
    }
    Ok(())
}

/// Every sign vector differs from the all-plus character by a genus character on split primes.
pub fn sign_changes_are_genus_twists(psi: &HeckeChar, bound: u64) -> Check {
    let field = psi.field();
    let t = psi.signs().len();
    if t == 0 {
        return Ok(());
    }
    let base = HeckeChar::canonical_in(psi.group().clone(), psi.infinity_type(), &[]).unwrap();
    let split: Vec<PrimeIdeal> = small_primes(field, bound)
        .into_iter()
        .filter(|q| q.kind == SplitType::Split)
        .collect();
    let genus = genus_discriminants(field);
    for bits in 1..1usize << t {
        let signs: Vec<i8> = (0..t)
            .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        let other =
            HeckeChar::canonical_in(psi.group().clone(), psi.infinity_type(), &signs).unwrap();
        let values: Vec<(u64, QuadInt, QuadInt)> = split
            .iter()
            .map(|q| {
                (
                    q.p,
                    base.evaluate(&q.ideal).unwrap(),
                    other.evaluate(&q.ideal).unwrap(),
                )
            })
            .collect();
        let found = genus.iter().any(|&d| {
            values
                .iter()
                .all(|(p, a, b)| *b == a.scale(kronecker(d as i128, *p as i128) as i128).unwrap())
        });
        if !found {
            return Err(format!(
                "signs {signs:?}: no genus character relates it to the all-plus character"
            ));
        }
    }
    Ok(())
}

pub fn bounds(psi: &HeckeChar, nmax: u64) -> Check {
    let nf = q_expansion(psi, nmax).map_err(|e| e.to_string())?;
    check_all_bounds(psi, &nf)
        .map(|_| ())
        .map_err(|e| e.to_string())
}

// SPDX-License-Identifier: Apache-2.0

//! CM newforms attached to Hecke characters: level, nebentypus, q-expansion.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::{self, kronecker};
use crate::classgroup::{ideals_of_norm, FormClassGroup, PrimeIdeal};
use crate::error::{Error, Result};
use crate::heckechar::{check_conductor_bounds, HeckeChar};
use crate::quadfield::{QuadField, QuadInt, SplitType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nebentypus {
    Trivial,
    /// The quadratic character `(d/.)` of the given discriminant.
    Quadratic(i64),
}

impl Nebentypus {
    pub fn at(&self, n: u64) -> i32 {
        match self {
            Nebentypus::Trivial => 1,
            Nebentypus::Quadratic(d) => kronecker(*d as i128, n as i128),
        }
    }
}

impl fmt::Display for Nebentypus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nebentypus::Trivial => write!(f, "triv"),
            Nebentypus::Quadratic(_) => write!(f, "chiK"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewformData {
    pub weight: u32,
    pub level: u64,
    pub nebentypus: Nebentypus,
    pub cm_disc: u64,
    /// `a_1, ..., a_nmax`; index 0 holds `a_1`.
    pub coefficients: Vec<i128>,
}

impl NewformData {
    pub fn n_max(&self) -> u64 {
        self.coefficients.len() as u64
    }

    /// `a_n` for `1 <= n <= n_max`.
    pub fn a(&self, n: u64) -> i128 {
        self.coefficients[(n - 1) as usize]
    }
}

/// `(N, nebentypus)` with `N = delta * N(conductor)`.
pub fn level_nebentypus(psi: &HeckeChar) -> (u64, Nebentypus) {
    let neb = if psi.infinity_type().is_multiple_of(2) {
        Nebentypus::Quadratic(psi.field().discriminant())
    } else {
        Nebentypus::Trivial
    };
    (psi.level(), neb)
}

fn rational(v: QuadInt) -> Result<i128> {
    v.as_integer().ok_or(Error::NotIntegral(v.x(), v.y()))
}

/// `a_p` as the sum of `psi` over the prime ideals of norm `p`.
pub fn coefficient_ap(psi: &HeckeChar, p: u64) -> Result<i128> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let primes = PrimeIdeal::above(psi.field(), p)?;
    match primes[0].kind {
        SplitType::Inert => Ok(0),
        SplitType::Ramified => rational(psi.evaluate(&primes[0].ideal)?),
        SplitType::Split => {
            let s = psi
                .evaluate(&primes[0].ideal)?
                .checked_add(&psi.evaluate(&primes[1].ideal)?)?;
            rational(s)
        }
    }
}

/// Prime-power coefficients from `a_p` by the Euler recurrence, then multiplicative fill.
fn fill_from_primes(
    weight: u32,
    level: u64,
    neb: Nebentypus,
    n_max: u64,
    ap: &[(u64, i128)],
) -> Result<Vec<i128>> {
    let n = n_max as usize;
    let mut a = vec![0i128; n + 1];
    a[1] = 1;
    for &(p, ap) in ap {
        let eps = if level.is_multiple_of(p) {
            0
        } else {
            neb.at(p) as i128
        };
        let pk = (p as i128).checked_pow(weight - 1).ok_or(Error::Overflow)?;
        let c = eps.checked_mul(pk).ok_or(Error::Overflow)?;
        let (mut prev, mut cur) = (1i128, ap);
        let mut q = p;
        while q <= n_max {
            a[q as usize] = cur;
            let next = ap
                .checked_mul(cur)
                .and_then(|x| c.checked_mul(prev).and_then(|y| x.checked_sub(y)))
                .ok_or(Error::Overflow)?;
            prev = cur;
            cur = next;
            q = match q.checked_mul(p) {
                Some(q) => q,
                None => break,
            };
        }
    }
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    for m in 2..=n {
        let p = spf[m];
        let mut pe = p;
        while (m / pe).is_multiple_of(p) {
            pe *= p;
        }
        if pe != m {
            a[m] = a[pe].checked_mul(a[m / pe]).ok_or(Error::Overflow)?;
        }
    }
    a.remove(0);
    Ok(a)
}

/// The q-expansion up to `n_max` via the Euler product.
pub fn q_expansion(psi: &HeckeChar, n_max: u64) -> Result<NewformData> {
    let n_max = n_max.max(1);
    let (level, neb) = level_nebentypus(psi);
    let weight = psi.infinity_type() + 1;
    let ap = arith::primes_up_to(n_max)
        .into_par_iter()
        .map(|p| Ok((p, coefficient_ap(psi, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let coefficients = fill_from_primes(weight, level, neb, n_max, &ap)?;
    Ok(NewformData {
        weight,
        level,
        nebentypus: neb,
        cm_disc: psi.field().delta(),
        coefficients,
    })
}

/// `a_n` as the sum of `psi` over all ideals of norm `n`.
pub fn direct_coefficient(psi: &HeckeChar, n: u64) -> Result<i128> {
    let mut s = psi.field().zero();
    for ideal in ideals_of_norm(psi.field(), n)? {
        s = s.checked_add(&psi.evaluate(&ideal)?)?;
    }
    rational(s)
}

/// `a_n` as a sum over elements of norm `n`; valid only when every ideal is principal.
pub fn element_coefficient(psi: &HeckeChar, n: u64) -> Result<i128> {
    if psi.group().class_number() != 1 {
        return Err(Error::NotPrincipal);
    }
    let mut s = psi.field().zero();
    for alpha in psi.field().elements_of_norm(n)? {
        s = s.checked_add(&psi.evaluate_principal(&alpha)?)?;
    }
    rational(s)
}

#[derive(Debug, Clone)]
pub struct Calibration {
    pub signs: Vec<i8>,
    /// How many sign vectors reproduce the target (more than one means some act trivially).
    pub matches: usize,
    pub character: HeckeChar,
}

fn sign_vector(bits: usize, t: usize) -> Vec<i8> {
    (0..t)
        .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// Try every sign vector and keep the first whose `a_p` reproduce `target`.
pub fn calibrate_signs(field: QuadField, l: u32, target: &[(u64, i128)]) -> Result<Calibration> {
    calibrate_signs_in(Arc::new(FormClassGroup::build(field)?), l, target)
}

pub fn calibrate_signs_in(
    group: Arc<FormClassGroup>,
    l: u32,
    target: &[(u64, i128)],
) -> Result<Calibration> {
    let t = group.factors().iter().filter(|f| f.order % 2 == 0).count();
    let mut found: Option<HeckeChar> = None;
    let mut matches = 0;
    for bits in 0..1usize << t {
        let psi = HeckeChar::canonical_in(group.clone(), l, &sign_vector(bits, t))?;
        let mut ok = true;
        for &(p, ap) in target {
            if coefficient_ap(&psi, p)? != ap {
                ok = false;
                break;
            }
        }
        if ok {
            matches += 1;
            found.get_or_insert(psi);
        }
    }
    let character = found.ok_or(Error::NoMatch)?;
    Ok(Calibration {
        signs: character.signs().to_vec(),
        matches,
        character,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    /// Good primes at which `a_p^2 <= 4 p^(k-1)` was checked.
    pub ramanujan_checked: usize,
    /// `(p, e_p)` for the level.
    pub level_exponents: Vec<(u64, u32)>,
    /// Whether the even-weight level bounds applied.
    pub level_bounds_checked: bool,
}

/// Ramanujan bound at good primes, and level exponent bounds for even weight.
pub fn check_bounds(nf: &NewformData) -> Result<BoundsReport> {
    let mut checked = 0;
    for p in arith::primes_up_to(nf.n_max()) {
        if nf.level.is_multiple_of(p) {
            continue;
        }
        let ap = nf.a(p);
        let bound = 4i128.checked_mul(
            (p as i128)
                .checked_pow(nf.weight - 1)
                .ok_or(Error::Overflow)?,
        );
        let sq = ap.checked_mul(ap);
        match (sq, bound) {
            (Some(s), Some(b)) if s <= b => checked += 1,
            _ => {
                return Err(Error::BoundViolation {
                    prime: p,
                    detail: format!("|a_p| = {} exceeds 2 p^((k-1)/2)", ap.abs()),
                })
            }
        }
    }
    let level_exponents = arith::factorize(nf.level);
    let even = nf.weight.is_multiple_of(2);
    if even {
        for &(p, e) in &level_exponents {
            let max = match p {
                2 => 8,
                3 => 5,
                _ => 2,
            };
            if e > max {
                return Err(Error::BoundViolation {
                    prime: p,
                    detail: format!("level exponent {e} exceeds {max}"),
                });
            }
        }
    }
    Ok(BoundsReport {
        ramanujan_checked: checked,
        level_exponents,
        level_bounds_checked: even,
    })
}

/// [`check_bounds`] together with the conductor exponent table for `psi`.
pub fn check_all_bounds(psi: &HeckeChar, nf: &NewformData) -> Result<BoundsReport> {
    check_conductor_bounds(psi)?;
    check_bounds(nf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(d: u64, l: u32) -> HeckeChar {
        HeckeChar::canonical(QuadField::new(d).unwrap(), l, &[]).unwrap()
    }

    #[test]
    fn prime_coefficients() {
        assert_eq!(coefficient_ap(&psi(7, 2), 2).unwrap(), -3);
        assert_eq!(coefficient_ap(&psi(7, 2), 3).unwrap(), 0);
        assert_eq!(coefficient_ap(&psi(7, 3), 11).unwrap(), -68);
        assert_eq!(coefficient_ap(&psi(7, 2), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn expansions() {
        let nf = q_expansion(&psi(8, 2), 20).unwrap();
        assert_eq!((nf.a(1), nf.a(2), nf.a(3), nf.a(11)), (1, -2, -2, 14));
        let nf = q_expansion(&psi(7, 2), 10).unwrap();
        assert_eq!(nf.a(4), 5);
        assert_eq!(direct_coefficient(&psi(7, 2), 4).unwrap(), 5);
        assert_eq!(element_coefficient(&psi(7, 2), 4).unwrap(), 5);
    }

    #[test]
    fn levels() {
        assert_eq!(level_nebentypus(&psi(7, 2)), (7, Nebentypus::Quadratic(-7)));
        assert_eq!(level_nebentypus(&psi(7, 3)), (49, Nebentypus::Trivial));
        assert_eq!(level_nebentypus(&psi(8, 3)).0, 256);
        assert_eq!(level_nebentypus(&psi(4, 2)).0, 16);
        assert_eq!(level_nebentypus(&psi(3, 2)).0, 27);
        assert_eq!(level_nebentypus(&psi(4, 3)).0, 32);
    }

    #[test]
    fn calibration() {
        let k = QuadField::new(15).unwrap();
        let c = calibrate_signs(k, 2, &[(2, -1), (3, 3)]).unwrap();
        assert_eq!(c.signs, vec![-1]);
        assert_eq!(c.matches, 1);
        let c = calibrate_signs(QuadField::new(7).unwrap(), 2, &[(2, -3)]).unwrap();
        assert!(c.signs.is_empty());
        let c = calibrate_signs(
            QuadField::new(5460).unwrap(),
            2,
            &[(2, 2), (3, 3), (5, 5), (7, 7)],
        )
        .unwrap();
        assert_eq!(c.signs.len(), 4);
        assert_eq!(
            calibrate_signs(k, 2, &[(2, 7)]).unwrap_err(),
            Error::NoMatch
        );
    }

    #[test]
    fn bounds() {
        let p = psi(8, 3);
        let nf = q_expansion(&p, 120).unwrap();
        let r = check_all_bounds(&p, &nf).unwrap();
        assert_eq!(r.level_exponents, vec![(2, 8)]);
        assert!(r.level_bounds_checked);
        let mut bad = nf.clone();
        bad.coefficients[2] = 1000;
        assert_eq!(
            check_bounds(&bad).unwrap_err(),
            Error::BoundViolation {
                prime: 3,
                detail: "|a_p| = 1000 exceeds 2 p^((k-1)/2)".into()
            }
        );
    }

    #[test]
    fn ideal_counts() {
        let k = QuadField::new(7).unwrap();
        assert_eq!(ideals_of_norm(k, 8).unwrap().len(), 4);
        assert_eq!(ideals_of_norm(k, 3).unwrap().len(), 0);
        assert_eq!(ideals_of_norm(k, 9).unwrap().len(), 1);
        assert_eq!(ideals_of_norm(k, 7).unwrap().len(), 1);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Canonical Hecke characters with rational coefficients.
//!
//! For `delta` outside `{3, 4, 8}` a character of infinity type `l` is fixed on
//! principal ideals by `(alpha) -> (chi_K(Re alpha) * alpha)^l` (odd `l`, modulus
//! `(sqrt(-delta))`) or `alpha^l` (even `l`, trivial modulus), and on each cyclic
//! generator `a_i` of the class group by an `n_i`-th root of its value on
//! `a_i^{n_i}`, with a free sign when `n_i` is even. For `delta` in `{3, 4, 8}`
//! the character is the `l`-th power of the CM elliptic curve character,
//! normalised by a residue section modulo a power of the ramified prime.

use std::fmt;
use std::sync::Arc;

use crate::arith::{self, kronecker};
use crate::classgroup::{
    ideals_of_norm, prime_ideal_above, principal_generator, FormClassGroup, PrimeIdeal, QuadIdeal,
};
use crate::error::{Error, Result};
use crate::quadfield::{QuadField, QuadInt, SplitType};

/// A modulus of `O_K`, kept factored into prime ideal powers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Modulus {
    factors: Vec<(PrimeIdeal, u32)>,
}

impl Modulus {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (PrimeIdeal, u32)>) -> Self {
        let mut m = Self::trivial();
        for (p, e) in factors {
            m.raise_to(p, e);
        }
        m
    }

    fn raise_to(&mut self, prime: PrimeIdeal, e: u32) {
        if e == 0 {
            return;
        }
        match self
            .factors
            .iter_mut()
            .find(|(q, _)| q.ideal == prime.ideal)
        {
            Some((_, f)) => *f = (*f).max(e),
            None => {
                self.factors.push((prime, e));
                self.factors
                    .sort_by_key(|(q, _)| (q.p, q.ideal.primitive_part().1));
            }
        }
    }

    pub fn factors(&self) -> &[(PrimeIdeal, u32)] {
        &self.factors
    }

    pub fn exponent_at(&self, prime: &PrimeIdeal) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q.ideal == prime.ideal)
            .map_or(0, |(_, e)| *e)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn ideal(&self, field: QuadField) -> Result<QuadIdeal> {
        let mut acc = QuadIdeal::unit(field);
        for (p, e) in &self.factors {
            acc = acc.mul(&p.ideal.pow(*e)?)?;
        }
        Ok(acc)
    }

    pub fn norm(&self) -> u64 {
        self.factors
            .iter()
            .map(|(p, e)| (p.norm() as u64).pow(*e))
            .product()
    }

    /// Rational primes below the support.
    pub fn support(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|(p, _)| p.p).collect();
        ps.dedup();
        ps
    }

    pub fn is_coprime_to_element(&self, alpha: &QuadInt) -> bool {
        self.factors.iter().all(|(p, _)| !p.contains(alpha))
    }

    pub fn is_coprime_to_ideal(&self, ideal: &QuadIdeal) -> bool {
        self.factors
            .iter()
            .all(|(p, _)| !ideal.is_divisible_by(&p.ideal))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| format!("{}^{}", p.ideal, e))
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// How the character acts on principal ideals coprime to its working modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalRule {
    /// `(chi_K(Re alpha) alpha)^l` for odd `l`, `alpha^l` for even `l`.
    Canonical,
    /// `(u(alpha) alpha)^l`, where the unit `u(alpha)` moves `alpha` into a fixed
    /// residue section: `= 1 mod 3` for `delta = 3`, `= 1 mod (2+2i)` for
    /// `delta = 4`, and the kernel of `x + y sqrt(-2) -> (-8/x) * (-1)^[4 does not divide y]`
    /// for `delta = 8`.
    CmCurve,
}

/// Image of one cyclic generator of the class group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorImage {
    pub ideal: QuadIdeal,
    pub order: u64,
    pub class: usize,
    pub image: QuadInt,
}

#[derive(Debug, Clone)]
pub struct HeckeChar {
    field: QuadField,
    l: u32,
    group: Arc<FormClassGroup>,
    rule: PrincipalRule,
    twists: Vec<i64>,
    signs: Vec<i8>,
    generators: Vec<GeneratorImage>,
    /// Per class: a small ideal in it, coprime to the working modulus, and its value.
    class_reps: Vec<(QuadIdeal, QuadInt)>,
    modulus: Modulus,
    conductor: Modulus,
}

const CLASS_REP_NORM_LIMIT: u64 = 1 << 20;

fn uses_cm_curve(field: QuadField) -> bool {
    matches!(field.delta(), 3 | 4 | 8)
}

fn ramified_prime(field: QuadField, p: u64) -> Result<PrimeIdeal> {
    prime_ideal_above(field, p)
}

/// The conductor of the canonical character of infinity type `l` (all signs `+`).
pub fn canonical_conductor(field: QuadField, l: u32) -> Result<Modulus> {
    Ok(HeckeChar::canonical(field, l, &[])?.conductor().clone())
}

fn check_exponent(group: &FormClassGroup, l: u32) -> Result<()> {
    let e = group.exponent();
    if l == 0 || !(l as u64).is_multiple_of(e) {
        return Err(Error::ExponentMismatch { exponent: e, l });
    }
    Ok(())
}

impl HeckeChar {
    /// The canonical character; `signs` may be empty for the all-plus choice.
    pub fn canonical(field: QuadField, l: u32, signs: &[i8]) -> Result<Self> {
        Self::canonical_in(Arc::new(FormClassGroup::build(field)?), l, signs)
    }

    pub fn canonical_in(group: Arc<FormClassGroup>, l: u32, signs: &[i8]) -> Result<Self> {
        check_exponent(&group, l)?;
        let field = group.field();
        let even_factors = group.factors().iter().filter(|f| f.order % 2 == 0).count();
        let signs: Vec<i8> = if signs.is_empty() {
            vec![1; even_factors]
        } else {
            signs.to_vec()
        };
        if signs.len() != even_factors || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::SignVectorLength {
                expected: even_factors,
                got: signs.len(),
            });
        }

        let (rule, modulus) = if uses_cm_curve(field) {
            let (p, e) = match field.delta() {
                3 => (3, 2),
                4 => (2, 3),
                _ => (2, 5),
            };
            (
                PrincipalRule::CmCurve,
                Modulus::from_factors([(ramified_prime(field, p)?, e)]),
            )
        } else if l % 2 == 1 {
            let factors = arith::factorize(field.odd_part())
                .into_iter()
                .map(|(p, _)| Ok((ramified_prime(field, p)?, 1)))
                .collect::<Result<Vec<_>>>()?;
            (PrincipalRule::Canonical, Modulus::from_factors(factors))
        } else {
            (PrincipalRule::Canonical, Modulus::trivial())
        };

        let mut psi = Self {
            field,
            l,
            group: group.clone(),
            rule,
            twists: Vec::new(),
            signs: signs.clone(),
            generators: Vec::new(),
            class_reps: Vec::new(),
            modulus: modulus.clone(),
            conductor: modulus,
        };

        let mut sign_iter = signs.iter();
        for (i, factor) in group.factors().iter().enumerate() {
            let n = factor.order;
            let alpha = principal_generator(&factor.ideal.pow(n as u32)?)?;
            let base = psi.rule_base(&alpha)?;
            let mut image = base.pow(l / n as u32)?;
            if n % 2 == 0 {
                let s = *sign_iter.next().expect("sign count checked above");
                image = image.scale(s as i128)?;
            }
            if image.pow(n as u32)? != base.pow(l)? {
                return Err(Error::RootNotFound(i));
            }
            psi.generators.push(GeneratorImage {
                ideal: factor.ideal,
                order: n,
                class: factor.class,
                image,
            });
        }
        psi.finish()?;
        Ok(psi)
    }

    fn finish(&mut self) -> Result<()> {
        self.conductor = self.conductor_of()?;
        let h = self.group.class_number();
        let mut reps: Vec<Option<(QuadIdeal, QuadInt)>> = vec![None; h];
        let mut missing = h;
        let mut n = 1;
        while missing > 0 {
            if n > CLASS_REP_NORM_LIMIT {
                return Err(Error::GeneratorSelection);
            }
            for ideal in ideals_of_norm(self.field, n)? {
                if !self.modulus.is_coprime_to_ideal(&ideal) {
                    continue;
                }
                let c = self.group.class_of_ideal(&ideal)?;
                if reps[c].is_none() {
                    reps[c] = Some((ideal, self.evaluate_by_generators(&ideal)?));
                    missing -= 1;
                }
            }
            n += 1;
        }
        self.class_reps = reps
            .into_iter()
            .map(|r| r.expect("every class filled"))
            .collect();
        Ok(())
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn infinity_type(&self) -> u32 {
        self.l
    }

    pub fn group(&self) -> &Arc<FormClassGroup> {
        &self.group
    }

    pub fn rule(&self) -> PrincipalRule {
        self.rule
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Discriminants of the quadratic characters this character was twisted by.
    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn generators(&self) -> &[GeneratorImage] {
        &self.generators
    }

    /// The modulus the character was constructed on (a multiple of the conductor).
    pub fn working_modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn conductor(&self) -> &Modulus {
        &self.conductor
    }

    /// `delta * N(conductor)`.
    pub fn level(&self) -> u64 {
        self.field.delta() * self.conductor.norm()
    }

    /// The unit `u` with `u * alpha` in the residue section of the CM curve character.
    fn section_unit(&self, alpha: &QuadInt) -> Result<QuadInt> {
        let k = self.field;
        if k.delta() == 8 {
            // alpha = X + Y sqrt(-2)
            let (x, y) = (alpha.x() / 2, alpha.y());
            let s = kronecker(-8, x) * if y.rem_euclid(4) == 0 { 1 } else { -1 };
            return k.integer(s as i128);
        }
        let target = match k.delta() {
            3 => QuadIdeal::from_integer(k, 3),
            _ => QuadIdeal::principal(&QuadInt::new(k, 4, 2)?)?,
        };
        for u in k.units() {
            if target.contains(&u.checked_mul(alpha)?.checked_sub(&k.one())?) {
                return Ok(u);
            }
        }
        Err(Error::NotCoprime(target.norm()))
    }

    /// The element whose `l`-th power is the value on `(alpha)`, before twisting.
    fn rule_base(&self, alpha: &QuadInt) -> Result<QuadInt> {
        match self.rule {
            PrincipalRule::Canonical if self.l % 2 == 1 => {
                let r = alpha.residue_embedding()?;
                alpha.scale(self.field.chi(r) as i128)
            }
            PrincipalRule::Canonical => Ok(*alpha),
            PrincipalRule::CmCurve => self.section_unit(alpha)?.checked_mul(alpha),
        }
    }

    /// Value on `(alpha)` for `alpha` coprime to the working modulus.
    fn rule_value(&self, alpha: &QuadInt) -> Result<QuadInt> {
        let mut v = self.rule_base(alpha)?.pow(self.l)?;
        if !self.twists.is_empty() {
            let n = alpha.norm()?;
            let s: i32 = self
                .twists
                .iter()
                .map(|&d| kronecker(d as i128, n))
                .product();
            v = v.scale(s as i128)?;
        }
        Ok(v)
    }

    /// Value on the principal ideal `(gamma)`.
    pub fn evaluate_principal(&self, gamma: &QuadInt) -> Result<QuadInt> {
        if gamma.is_zero() || !self.conductor.is_coprime_to_element(gamma) {
            return Ok(self.field.zero());
        }
        if self.modulus.is_coprime_to_element(gamma) {
            return self.rule_value(gamma);
        }
        // gamma is coprime to the conductor but not to the working modulus: move to
        // beta = gamma mod the conductor and use psi((gamma/beta)) = (gamma/beta)^l
        let cond = self.conductor.ideal(self.field)?;
        let [e1, e2] = cond.basis();
        for radius in 1i128..64 {
            for i in -radius..=radius {
                for j in -radius..=radius {
                    if i.abs().max(j.abs()) != radius {
                        continue;
                    }
                    let t = e1.scale(i)?.checked_add(&e2.scale(j)?)?;
                    let beta = gamma.checked_add(&t)?;
                    if beta.is_zero() || !self.modulus.is_coprime_to_element(&beta) {
                        continue;
                    }
                    let num = self.rule_value(&beta)?.checked_mul(&gamma.pow(self.l)?)?;
                    return num.div_exact(&beta.pow(self.l)?);
                }
            }
        }
        Err(Error::NotCoprime(self.modulus.norm() as i128))
    }

    /// `psi(ideal)`, extended by zero on ideals not coprime to the conductor.
    pub fn evaluate(&self, ideal: &QuadIdeal) -> Result<QuadInt> {
        if !self.conductor.is_coprime_to_ideal(ideal) {
            return Ok(self.field.zero());
        }
        let (rep, value) = &self.class_reps[self.group.class_of_ideal(&ideal.conj())?];
        let beta = principal_generator(&ideal.mul(rep)?)?;
        self.evaluate_principal(&beta)?.div_exact(value)
    }

    /// `psi(ideal)` through the discrete log: `ideal * prod a_i^(n_i - k_i)` is
    /// principal, and its value is divided by the matching generator images.
    pub fn evaluate_by_generators(&self, ideal: &QuadIdeal) -> Result<QuadInt> {
        if !self.conductor.is_coprime_to_ideal(ideal) {
            return Ok(self.field.zero());
        }
        let k = self.group.discrete_log_ideal(ideal)?;
        let mut b = *ideal;
        let mut den = self.field.one();
        for (g, &ki) in self.generators.iter().zip(&k) {
            let e = ((g.order - ki) % g.order) as u32;
            if e > 0 {
                b = b.mul(&g.ideal.pow(e)?)?;
                den = den.checked_mul(&g.image.pow(e)?)?;
            }
        }
        let beta = principal_generator(&b)?;
        self.evaluate_principal(&beta)?.div_exact(&den)
    }

    /// The conductor: per prime of the working modulus, the least exponent `f` such
    /// that `psi((alpha)) = alpha^l` for every residue `alpha = 1` modulo the working
    /// modulus with that prime's exponent lowered to `f`.
    pub fn conductor_of(&self) -> Result<Modulus> {
        let k = self.field;
        let full = self.modulus.ideal(k)?;
        let mut out = Vec::new();
        for (idx, (prime, e)) in self.modulus.factors().iter().enumerate() {
            let mut found = *e;
            for f in 0..*e {
                let mut coarse = QuadIdeal::unit(k);
                for (j, (q, eq)) in self.modulus.factors().iter().enumerate() {
                    let ex = if j == idx { f } else { *eq };
                    coarse = coarse.mul(&q.ideal.pow(ex)?)?;
                }
                let mut trivial = true;
                for w in coarse.coset_reps(&full)? {
                    let alpha = k.one().checked_add(&w)?;
                    if prime.contains(&alpha) {
                        continue;
                    }
                    if self.rule_value(&alpha)? != alpha.pow(self.l)? {
                        trivial = false;
                        break;
                    }
                }
                if trivial {
                    found = f;
                    break;
                }
            }
            out.push((*prime, found));
        }
        Ok(Modulus::from_factors(out))
    }

    /// The twist `psi * (phi o N)` by the quadratic character of discriminant `d`.
    pub fn twist(&self, d: i64) -> Result<Self> {
        if d == 1 {
            return Ok(self.clone());
        }
        if !is_quadratic_discriminant(d) {
            return Err(Error::BadTwist(d));
        }
        let k = self.field;
        let mut modulus = self.modulus.clone();
        for (p, v) in arith::factorize(d.unsigned_abs()) {
            for prime in PrimeIdeal::above(k, p)? {
                let e = if prime.kind == SplitType::Ramified {
                    2 * v
                } else {
                    v
                };
                modulus.raise_to(prime, e);
            }
        }
        let mut avoid = modulus.support();
        avoid.extend(arith::factorize(2 * k.delta()).into_iter().map(|(p, _)| p));
        let mut generators = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let ideal = if modulus.is_coprime_to_ideal(&g.ideal) {
                g.ideal
            } else {
                self.group.prime_ideal_in_class(g.class, &avoid)?
            };
            let phi = kronecker(d as i128, ideal.norm());
            let image = self.evaluate(&ideal)?.scale(phi as i128)?;
            generators.push(GeneratorImage {
                ideal,
                image,
                ..g.clone()
            });
        }
        let mut twists = self.twists.clone();
        twists.push(d);
        let mut psi = Self {
            modulus: modulus.clone(),
            conductor: modulus,
            twists,
            generators,
            ..self.clone()
        };
        psi.finish()?;
        Ok(psi)
    }
}

/// Whether `d` is the discriminant of a quadratic field (so `(d/.)` is a primitive character).
pub fn is_quadratic_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => arith::is_squarefree(m),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && arith::is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// Fundamental discriminants `d` with `d | delta` and `-delta/d` fundamental (or 1):
/// the genus characters of `K`, listed with both `1` and `-delta` (trivial on norms).
pub fn genus_discriminants(field: QuadField) -> Vec<i64> {
    let big = -(field.delta() as i64);
    let mut out = vec![1];
    for m in 2..=field.delta() {
        if !field.delta().is_multiple_of(m) {
            continue;
        }
        for d in [m as i64, -(m as i64)] {
            let rest = big / d;
            if is_quadratic_discriminant(d) && (rest == 1 || is_quadratic_discriminant(rest)) {
                out.push(d);
            }
        }
    }
    out
}

/// Allowed conductor exponents at a prime above `p`, by ramification, parity of `l`
/// and the special fields `delta = 3, 4`. `None` marks an impossible combination.
pub fn allowed_conductor_exponents(field: QuadField, p: u64, l: u32) -> Option<&'static [u32]> {
    let odd = l % 2 == 1;
    let delta = field.delta();
    let ramified = field.splitting(p) == SplitType::Ramified;
    let special = match delta {
        3 => 3,
        4 => 4,
        _ => 0,
    };
    if p != 2 {
        return match (special, ramified, odd) {
            (_, false, _) => Some(&[0, 1]),
            (0, true, true) => Some(&[1]),
            (0, true, false) => Some(&[0]),
            (4, true, _) => None,
            (_, true, true) => Some(&[1, 2, 4]),
            (_, true, false) => Some(&[0, 2, 4]),
        };
    }
    let four_exact = delta.is_multiple_of(4) && !delta.is_multiple_of(8);
    let eight = delta.is_multiple_of(8);
    match special {
        0 if four_exact => {
            if odd {
                None
            } else {
                Some(&[0, 4])
            }
        }
        0 if eight => Some(if odd { &[5] } else { &[0, 2] }),
        0 => Some(&[0, 2, 3]),
        4 => Some(if odd { &[3, 4, 6] } else { &[0, 2, 4, 6] }),
        _ => Some(&[0, 1, 2, 3]),
    }
}

/// Check every conductor exponent against [`allowed_conductor_exponents`].
pub fn check_conductor_bounds(psi: &HeckeChar) -> Result<()> {
    for (prime, e) in psi.working_modulus().factors() {
        let got = psi.conductor().exponent_at(prime);
        let ok = allowed_conductor_exponents(psi.field(), prime.p, psi.infinity_type())
            .is_some_and(|allowed| allowed.contains(&got));
        if !ok {
            return Err(Error::BoundViolation {
                prime: prime.p,
                detail: format!(
                    "conductor exponent {got} (working exponent {e}) outside the allowed set"
                ),
            });
        }
    }
    Ok(())
}

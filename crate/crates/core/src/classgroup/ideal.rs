// SPDX-License-Identifier: Apache-2.0

//! Integral ideals of `O_K` as rank-two lattices in Hermite normal form.

use std::fmt;

use crate::arith::{self, checked, ext_gcd, gcd};
use crate::classgroup::QuadForm;
use crate::error::{Error, Result};
use crate::quadfield::{QuadField, QuadInt, SplitType};

/// The ideal `content * (a Z + ((b + sqrt(-delta))/2) Z)`.
///
/// The primitive part satisfies `4a | b^2 + delta` and corresponds to the form
/// `(a, b, (b^2 + delta)/(4a))`. `b` is kept in `(-a, a]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    field: QuadField,
    content: i128,
    a: i128,
    b: i128,
}

/// Reduce `b` into `(-a, a]` keeping `b = delta (mod 2)`.
fn normalize_b(a: i128, b: i128) -> i128 {
    let m = 2 * a;
    let mut r = b.rem_euclid(m);
    if r > a {
        r -= m;
    }
    r
}

impl QuadIdeal {
    pub fn primitive(field: QuadField, a: i128, b: i128) -> Result<Self> {
        Self::scaled(field, 1, a, b)
    }

    pub fn scaled(field: QuadField, content: i128, a: i128, b: i128) -> Result<Self> {
        if a <= 0 || content <= 0 {
            return Err(Error::NotIntegral(a, b));
        }
        let num = checked(
            b.checked_mul(b)
                .and_then(|t| t.checked_add(field.delta_i())),
        )?;
        if num % (4 * a) != 0 {
            return Err(Error::NotIntegral(a, b));
        }
        Ok(Self {
            field,
            content,
            a,
            b: normalize_b(a, b),
        })
    }

    pub fn unit(field: QuadField) -> Self {
        Self {
            field,
            content: 1,
            a: 1,
            b: field.parity(),
        }
    }

    /// The ideal `n O_K` for a positive integer `n`.
    pub fn from_integer(field: QuadField, n: i128) -> Self {
        Self {
            field,
            content: n.abs(),
            a: 1,
            b: field.parity(),
        }
    }

    pub fn from_form(field: QuadField, form: &QuadForm) -> Result<Self> {
        if form.discriminant() != -field.delta_i() {
            return Err(Error::DiscriminantMismatch);
        }
        Self::primitive(field, form.a as i128, form.b as i128)
    }

    /// The principal ideal `alpha O_K`.
    pub fn principal(alpha: &QuadInt) -> Result<Self> {
        let k = alpha.field();
        if alpha.is_zero() {
            return Err(Error::NotIntegral(0, 0));
        }
        let omega = k.from_basis(0, 1)?;
        let g1 = alpha.basis_coords();
        let g2 = alpha.checked_mul(&omega)?.basis_coords();
        Self::from_lattice(k, &[g1, g2])
    }

    /// Ideal spanned (over `Z`) by the given vectors in basis coordinates.
    fn from_lattice(field: QuadField, rows: &[(i128, i128)]) -> Result<Self> {
        let (a_big, b_big, c_big) = hnf(rows)?;
        if c_big == 0 || a_big == 0 || a_big % c_big != 0 || b_big % c_big != 0 {
            return Err(Error::NotIntegral(a_big, c_big));
        }
        let content = c_big;
        let a = a_big / content;
        let b = 2 * (b_big / content) + field.parity();
        Self::scaled(field, content, a, b)
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn content(&self) -> i128 {
        self.content
    }

    /// `(a, b)` of the primitive part.
    pub fn primitive_part(&self) -> (i128, i128) {
        (self.a, self.b)
    }

    pub fn norm(&self) -> i128 {
        self.content * self.content * self.a
    }

    pub fn is_unit(&self) -> bool {
        self.content == 1 && self.a == 1
    }

    /// The reduced-or-not form attached to the primitive part.
    pub fn to_form(&self) -> QuadForm {
        let c = (self.b * self.b + self.field.delta_i()) / (4 * self.a);
        QuadForm::new(self.a as i64, self.b as i64, c as i64)
    }

    pub fn conj(&self) -> Self {
        Self {
            b: normalize_b(self.a, -self.b),
            ..*self
        }
    }

    /// A `Z`-basis of the ideal.
    pub fn basis(&self) -> [QuadInt; 2] {
        let k = self.field;
        let g = self.content;
        [
            QuadInt::raw(k, 2 * g * self.a, 0),
            QuadInt::raw(k, g * self.b, g),
        ]
    }

    /// Hermite normal form `(A, B, C)`: the ideal is `A Z + (B + C omega) Z`.
    pub fn hnf(&self) -> (i128, i128, i128) {
        let g = self.content;
        let bu = ((self.b - self.field.parity()) / 2).rem_euclid(self.a);
        (g * self.a, g * bu, g)
    }

    pub fn contains(&self, alpha: &QuadInt) -> bool {
        let (a, b, c) = self.hnf();
        let (u, v) = alpha.basis_coords();
        if v % c != 0 {
            return false;
        }
        (u - (v / c) * b) % a == 0
    }

    /// `self` is contained in `other`, i.e. `other` divides `self`.
    pub fn is_divisible_by(&self, other: &QuadIdeal) -> bool {
        self.basis().iter().all(|g| other.contains(g))
    }

    pub fn mul(&self, other: &QuadIdeal) -> Result<QuadIdeal> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.delta(),
                other.field.delta(),
            ));
        }
        let mut rows = Vec::with_capacity(4);
        for g in self.basis() {
            for h in other.basis() {
                rows.push(g.checked_mul(&h)?.basis_coords());
            }
        }
        Self::from_lattice(self.field, &rows)
    }

    pub fn pow(&self, e: u32) -> Result<QuadIdeal> {
        let mut out = Self::unit(self.field);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `self / n` when every element is divisible by the integer `n`.
    pub fn div_int(&self, n: i128) -> Result<QuadIdeal> {
        let rows: Vec<_> = self
            .basis()
            .iter()
            .map(|g| g.div_int(n).map(|q| q.basis_coords()))
            .collect::<Result<_>>()?;
        Self::from_lattice(self.field, &rows)
    }

    /// Representatives of `self / sub` for an ideal `sub` contained in `self`.
    pub fn coset_reps(&self, sub: &QuadIdeal) -> Result<Vec<QuadInt>> {
        let (a1, b1, c1) = self.hnf();
        let (a2, _, c2) = sub.hnf();
        if a2 % a1 != 0 || c2 % c1 != 0 || !sub.is_divisible_by(self) {
            return Err(Error::NotIntegral(a2, c2));
        }
        let mut out = Vec::with_capacity(((a2 / a1) * (c2 / c1)) as usize);
        for j in 0..c2 / c1 {
            for i in 0..a2 / a1 {
                out.push(self.field.from_basis(i * a1 + j * b1, j * c1)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.content != 1 {
            write!(f, "{}*", self.content)?;
        }
        write!(
            f,
            "[{}, ({}+sqrt(-{}))/2]",
            self.a,
            self.b,
            self.field.delta()
        )
    }
}

/// HNF of the lattice spanned by `rows` in `Z^2`: returns `(A, B, C)` with
/// rows `(A, 0)` and `(B, C)`, `0 <= B < A`, `C > 0`.
fn hnf(rows: &[(i128, i128)]) -> Result<(i128, i128, i128)> {
    let mut pivot = (0i128, 0i128);
    let mut zero_col = 0i128;
    for &(u, v) in rows {
        if v == 0 {
            zero_col = gcd(zero_col, u);
            continue;
        }
        if pivot.1 == 0 {
            pivot = (u, v);
            continue;
        }
        let (pu, pv) = pivot;
        let (g, s, t) = ext_gcd(pv, v);
        let nu = checked(
            s.checked_mul(pu)
                .and_then(|x| t.checked_mul(u).and_then(|y| x.checked_add(y))),
        )?;
        let z = checked(
            (v / g)
                .checked_mul(pu)
                .and_then(|x| (pv / g).checked_mul(u).and_then(|y| x.checked_sub(y))),
        )?;
        zero_col = gcd(zero_col, z);
        pivot = (nu, g);
    }
    if pivot.1 < 0 {
        pivot = (-pivot.0, -pivot.1);
    }
    if zero_col == 0 || pivot.1 == 0 {
        return Err(Error::NotIntegral(zero_col, pivot.1));
    }
    Ok((zero_col, pivot.0.rem_euclid(zero_col), pivot.1))
}

/// A prime ideal of `O_K` together with the rational prime below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub p: u64,
    pub kind: SplitType,
    pub ideal: QuadIdeal,
}

impl PrimeIdeal {
    pub fn norm(&self) -> i128 {
        self.ideal.norm()
    }

    pub fn conj(&self) -> PrimeIdeal {
        PrimeIdeal {
            ideal: self.ideal.conj(),
            ..*self
        }
    }

    pub fn contains(&self, alpha: &QuadInt) -> bool {
        self.ideal.contains(alpha)
    }

    /// The prime ideals lying over `p`: one for ramified and inert `p`, two for split.
    pub fn above(field: QuadField, p: u64) -> Result<Vec<PrimeIdeal>> {
        match field.splitting(p) {
            SplitType::Inert => Ok(vec![PrimeIdeal {
                p,
                kind: SplitType::Inert,
                ideal: QuadIdeal::from_integer(field, p as i128),
            }]),
            SplitType::Ramified => Ok(vec![prime_ideal_above(field, p)?]),
            SplitType::Split => {
                let q = prime_ideal_above(field, p)?;
                Ok(vec![q, q.conj()])
            }
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

/// The prime ideal `pZ + ((b + sqrt(-delta))/2)Z` above a split or ramified
/// prime, with `b` the smallest nonnegative solution of `b^2 = -delta (mod 4p)`.
/// The conjugate ideal uses `-b`.
pub fn prime_ideal_above(field: QuadField, p: u64) -> Result<PrimeIdeal> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let kind = field.splitting(p);
    if kind == SplitType::Inert {
        return Err(Error::InertPrime(p));
    }
    let p_i = p as i128;
    let m = 4 * p_i;
    let target = (-field.delta_i()).rem_euclid(m);
    let b = (0..2 * p_i)
        .find(|b| (b * b) % m == target)
        .expect("split or ramified prime has a square root of the discriminant");
    Ok(PrimeIdeal {
        p,
        kind,
        ideal: QuadIdeal::primitive(field, p_i, b)?,
    })
}

/// All integral ideals of norm `n`, built from prime ideal factorizations.
pub fn ideals_of_norm(field: QuadField, n: u64) -> Result<Vec<QuadIdeal>> {
    let mut out = vec![QuadIdeal::unit(field)];
    for (p, e) in arith::factorize(n) {
        let primes = PrimeIdeal::above(field, p)?;
        let local: Vec<QuadIdeal> = match primes[0].kind {
            SplitType::Inert if e % 2 == 1 => return Ok(Vec::new()),
            SplitType::Inert => vec![QuadIdeal::from_integer(field, (p as i128).pow(e / 2))],
            SplitType::Ramified => vec![primes[0].ideal.pow(e)?],
            SplitType::Split => (0..=e)
                .map(|i| primes[0].ideal.pow(i)?.mul(&primes[1].ideal.pow(e - i)?))
                .collect::<Result<_>>()?,
        };
        let mut next = Vec::with_capacity(out.len() * local.len());
        for a in &out {
            for b in &local {
                next.push(a.mul(b)?);
            }
        }
        out = next;
    }
    Ok(out)
}

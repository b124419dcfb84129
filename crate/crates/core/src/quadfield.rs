// SPDX-License-Identifier: Apache-2.0

//! Imaginary quadratic fields `Q(sqrt(-delta))` and their rings of integers.
//!
//! Elements are stored in doubled coordinates: `(x, y)` stands for
//! `(x + y*sqrt(-delta)) / 2` with `x = y*delta (mod 2)`. The same layout
//! covers both `delta = 3 (mod 4)` and `4 | delta`.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{self, checked, gcd, isqrt, kronecker};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    delta: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

impl QuadField {
    pub fn new(delta: u64) -> Result<Self> {
        if !arith::is_fundamental(delta) {
            return Err(Error::NotFundamental(delta));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// The field discriminant `-delta`.
    pub fn discriminant(&self) -> i64 {
        -(self.delta as i64)
    }

    pub(crate) fn delta_i(&self) -> i128 {
        self.delta as i128
    }

    /// `delta mod 2`; the integral basis is `1, (parity + sqrt(-delta))/2`.
    pub(crate) fn parity(&self) -> i128 {
        (self.delta % 2) as i128
    }

    pub fn odd_part(&self) -> u64 {
        let mut d = self.delta;
        while d.is_multiple_of(2) {
            d /= 2;
        }
        d
    }

    /// The quadratic character `chi_K(n) = (-delta / n)`.
    pub fn chi(&self, n: i128) -> i32 {
        kronecker(-self.delta_i(), n)
    }

    pub fn splitting(&self, p: u64) -> SplitType {
        match self.chi(p as i128) {
            0 => SplitType::Ramified,
            1 => SplitType::Split,
            _ => SplitType::Inert,
        }
    }

    pub fn unit_count(&self) -> usize {
        match self.delta {
            3 => 6,
            4 => 4,
            _ => 2,
        }
    }

    pub fn units(&self) -> Vec<QuadInt> {
        let raw: &[(i128, i128)] = match self.delta {
            3 => &[(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)],
            4 => &[(2, 0), (0, 1), (-2, 0), (0, -1)],
            _ => &[(2, 0), (-2, 0)],
        };
        raw.iter()
            .map(|&(x, y)| QuadInt::raw(*self, x, y))
            .collect()
    }

    pub fn zero(&self) -> QuadInt {
        QuadInt::raw(*self, 0, 0)
    }

    pub fn one(&self) -> QuadInt {
        QuadInt::raw(*self, 2, 0)
    }

    pub fn integer(&self, n: i128) -> Result<QuadInt> {
        Ok(QuadInt::raw(*self, checked(n.checked_mul(2))?, 0))
    }

    /// `sqrt(-delta)` itself, i.e. `(0 + 2*sqrt(-delta))/2`.
    pub fn sqrt_disc(&self) -> QuadInt {
        QuadInt::raw(*self, 0, 2)
    }

    /// Element from coordinates in the integral basis `1, omega`.
    pub fn from_basis(&self, u: i128, v: i128) -> Result<QuadInt> {
        let x = checked(
            u.checked_mul(2)
                .and_then(|t| t.checked_add(v * self.parity())),
        )?;
        Ok(QuadInt::raw(*self, x, v))
    }

    /// All elements of norm `m`, one per orbit under the unit group.
    pub fn elements_of_norm(&self, m: u64) -> Result<Vec<QuadInt>> {
        let m = m as i128;
        let four_m = checked(m.checked_mul(4))?;
        let ymax = isqrt(four_m / self.delta_i());
        let mut found = BTreeSet::new();
        for y in -ymax..=ymax {
            let rest = four_m - self.delta_i() * y * y;
            let Some(x) = arith::is_square(rest) else {
                continue;
            };
            if (x - y * self.parity()).rem_euclid(2) != 0 {
                continue;
            }
            for sx in [x, -x] {
                let a = QuadInt::raw(*self, sx, y).normalized();
                found.insert((a.x, a.y));
            }
        }
        Ok(found
            .into_iter()
            .map(|(x, y)| QuadInt::raw(*self, x, y))
            .collect())
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt(-{}))", self.delta)
    }
}

/// An element `(x + y*sqrt(-delta))/2` of the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadInt {
    x: i128,
    y: i128,
    field: QuadField,
}

impl QuadInt {
    pub fn new(field: QuadField, x: i128, y: i128) -> Result<Self> {
        if (x - y * field.parity()).rem_euclid(2) != 0 {
            return Err(Error::NotIntegral(x, y));
        }
        Ok(Self::raw(field, x, y))
    }

    pub(crate) fn raw(field: QuadField, x: i128, y: i128) -> Self {
        debug_assert!((x - y * field.parity()).rem_euclid(2) == 0);
        Self { x, y, field }
    }

    pub fn x(&self) -> i128 {
        self.x
    }

    pub fn y(&self) -> i128 {
        self.y
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    /// Coordinates `(u, v)` with `self = u + v*omega`.
    pub fn basis_coords(&self) -> (i128, i128) {
        ((self.x - self.y * self.field.parity()) / 2, self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn is_rational(&self) -> bool {
        self.y == 0
    }

    /// The rational integer value, if `self` lies in `Z`.
    pub fn as_integer(&self) -> Option<i128> {
        (self.y == 0).then_some(self.x / 2)
    }

    pub fn trace(&self) -> i128 {
        self.x
    }

    pub fn norm(&self) -> Result<i128> {
        let xx = checked(self.x.checked_mul(self.x))?;
        let yy = checked(self.y.checked_mul(self.y))?;
        let dyy = checked(yy.checked_mul(self.field.delta_i()))?;
        Ok(checked(xx.checked_add(dyy))? / 4)
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.field, self.x, -self.y)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.delta, other.field.delta));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::raw(
            self.field,
            checked(self.x.checked_add(other.x))?,
            checked(self.y.checked_add(other.y))?,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-*other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = self.field.delta_i();
        let xx = checked(self.x.checked_mul(other.x))?;
        let yy = checked(self.y.checked_mul(other.y).and_then(|t| t.checked_mul(d)))?;
        let xy = checked(self.x.checked_mul(other.y))?;
        let yx = checked(self.y.checked_mul(other.x))?;
        Ok(Self::raw(
            self.field,
            checked(xx.checked_sub(yy))? / 2,
            checked(xy.checked_add(yx))? / 2,
        ))
    }

    pub fn scale(&self, n: i128) -> Result<Self> {
        Ok(Self::raw(
            self.field,
            checked(self.x.checked_mul(n))?,
            checked(self.y.checked_mul(n))?,
        ))
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        let mut result = self.field.one();
        let mut base = *self;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact division by a rational integer.
    pub fn div_int(&self, n: i128) -> Result<Self> {
        if n == 0 || self.x % n != 0 || self.y % n != 0 {
            return Err(Error::ExactDivisionFailure);
        }
        Self::new(self.field, self.x / n, self.y / n).map_err(|_| Error::ExactDivisionFailure)
    }

    /// Exact division `self / other` in `O_K`: multiply by the conjugate, divide by the norm.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let n = other.norm()?;
        if n == 0 {
            return Err(Error::ExactDivisionFailure);
        }
        self.checked_mul(&other.conj())?.div_int(n)
    }

    /// Whether `other` divides `self` in `O_K`.
    pub fn divisible_by(&self, other: &Self) -> bool {
        self.div_exact(other).is_ok()
    }

    /// The distinguished associate: `x > 0` (tie `y > 0`) for fields with
    /// units `+-1`; for `delta = 3, 4` the associate in the sector
    /// `0 <= arg < 2*pi/|units|`.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let canonical = |a: &QuadInt| match a.field.delta {
            3 => a.x > 0 && a.y >= 0 && a.y < a.x,
            4 => a.x > 0 && a.y >= 0,
            _ => a.x > 0 || (a.x == 0 && a.y > 0),
        };
        self.field
            .units()
            .iter()
            .map(|u| {
                u.checked_mul(self)
                    .expect("unit multiple of a fitting element")
            })
            .find(canonical)
            .expect("every nonzero element has a distinguished associate")
    }

    /// Whether `self` and `other` generate the same principal ideal.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Residue `r` in `Z/(odd part of delta)` with `self = r mod sqrt(-delta)`.
    pub fn residue_embedding(&self) -> Result<i128> {
        let m = self.field.odd_part() as i128;
        if gcd(self.norm()?, m) > 1 {
            return Err(Error::NotCoprime(m));
        }
        if m == 1 {
            return Ok(0);
        }
        let inv2 = (m + 1) / 2;
        Ok((self.x.rem_euclid(m) * inv2).rem_euclid(m))
    }
}

impl std::ops::Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::raw(self.field, -self.x, -self.y)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.field.delta;
        let root = |c: i128| match c {
            1 => format!("sqrt(-{d})"),
            -1 => format!("-sqrt(-{d})"),
            c => format!("{c}*sqrt(-{d})"),
        };
        let (x, y, halves) = if self.x % 2 == 0 && self.y % 2 == 0 {
            (self.x / 2, self.y / 2, false)
        } else {
            (self.x, self.y, true)
        };
        let body = match (x, y) {
            (a, 0) => a.to_string(),
            (0, b) => root(b),
            (a, b) if b > 0 => format!("{a}+{}", root(b)),
            (a, b) => format!("{a}{}", root(b)),
        };
        if halves {
            write!(f, "({body})/2")
        } else {
            write!(f, "{body}")
        }
    }
}

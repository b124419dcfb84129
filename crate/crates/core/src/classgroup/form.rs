// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use crate::arith::ext_gcd;
use crate::error::{Error, Result};

/// A binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    /// The principal form of discriminant `-delta`.
    pub fn principal(delta: u64) -> Self {
        let parity = (delta % 2) as i64;
        Self::new(1, parity, (parity + delta as i64) / 4)
    }

    pub fn is_principal(&self) -> bool {
        self.a == 1
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && !((self.b.abs() == self.a || self.a == self.c) && self.b < 0)
    }

    /// The opposite form, representing the inverse class.
    pub fn opposite(&self) -> Self {
        Self::new(self.a, -self.b, self.c)
    }

    /// The reduced form equivalent to `self`.
    pub fn reduce(&self) -> Result<Self> {
        if self.discriminant() >= 0 || self.a <= 0 {
            return Err(Error::InvalidDiscriminant {
                a: self.a,
                b: self.b,
                c: self.c,
            });
        }
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            // normalise: -a < b <= a
            if !(-a < b && b <= a) {
                let r = (a - b).div_euclid(2 * a);
                c += r * (a * r + b);
                b += 2 * r * a;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        Ok(Self::new(a as i64, b as i64, c as i64))
    }

    /// Gauss composition followed by reduction.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.discriminant() != other.discriminant() {
            return Err(Error::DiscriminantMismatch);
        }
        let (f1, f2) = if self.a > other.a {
            (other, self)
        } else {
            (self, other)
        };
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (d, y1) = if a2 % a1 == 0 {
            (a1, 0)
        } else {
            let (d, u, _) = ext_gcd(a2, a1);
            (d, u)
        };
        let (d1, x2, y2) = if s % d == 0 {
            (d, 0, -1)
        } else {
            let (d1, u, v) = ext_gcd(s, d);
            (d1, u, -v)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
        let out = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow);
        Self::new(out(a3)?, out(b3)?, out(c3)?).reduce()
    }

    pub fn square(&self) -> Result<Self> {
        self.compose(self)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let delta = (-self.discriminant()) as u64;
        let mut result = Self::principal(delta);
        let mut base = self.reduce()?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square()?;
            }
        }
        Ok(result)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All reduced forms of discriminant `-delta`, ordered by `(a, |b|, sign of b)`.
pub fn reduced_forms(delta: u64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    let d = delta as i64;
    let parity = d % 2;
    let mut a = 1i64;
    while 3 * a * a <= d {
        let mut b = parity;
        while b <= a {
            let num = b * b + d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a {
                    out.push(QuadForm::new(a, b, c));
                    if b != 0 && b != a && a != c {
                        out.push(QuadForm::new(a, -b, c));
                    }
                }
            }
            b += 2;
        }
        a += 1;
    }
    out
}

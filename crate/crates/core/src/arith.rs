// SPDX-License-Identifier: Apache-2.0

//! Small exact integer helpers shared by the field, form and character code.

use crate::error::{Error, Result};

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a as i128, b as i128) as u64 * b
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m` (m >= 1), if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| s.rem_euclid(m))
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Kronecker symbol `(a / n)` for arbitrary integers.
pub fn kronecker(a: i128, n: i128) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n;
    let mut a = a;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // n is now odd and positive: Jacobi symbol
    a = a.rem_euclid(n);
    while a != 0 {
        let t = a.trailing_zeros();
        if t > 0 {
            a >>= t;
            if t % 2 == 1 && matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

/// Prime factorisation by trial division, ascending primes with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// True when `-delta` is the discriminant of an imaginary quadratic field.
pub fn is_fundamental(delta: u64) -> bool {
    if delta < 3 {
        return false;
    }
    match delta % 4 {
        3 => is_squarefree(delta),
        0 => {
            let m = delta / 4;
            matches!(m % 4, 1 | 2) && is_squarefree(m)
        }
        _ => false,
    }
}

pub(crate) fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

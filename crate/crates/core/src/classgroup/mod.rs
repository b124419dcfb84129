// SPDX-License-Identifier: Apache-2.0

//! The class group `Cl(O_K)` through reduced binary quadratic forms.

mod form;
mod ideal;

use std::collections::HashMap;

pub use form::{reduced_forms, QuadForm};
pub use ideal::{ideals_of_norm, prime_ideal_above, PrimeIdeal, QuadIdeal};

use crate::arith::{self, lcm};
use crate::error::{Error, Result};
use crate::quadfield::{QuadField, QuadInt, SplitType};

/// Primes searched when picking a generator ideal for a class.
const GENERATOR_PRIME_LIMIT: u64 = 1_000_000;

/// One cyclic factor `C_n` of the invariant-factor decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFactor {
    pub order: u64,
    /// Index of the generating class in [`FormClassGroup::reduced_forms`].
    pub class: usize,
    /// A prime ideal in the generating class, coprime to `2 delta`.
    pub ideal: QuadIdeal,
}

/// `Cl(O_K)` with an invariant-factor decomposition `C_{n_1} x ... x C_{n_r}`,
/// `n_{i+1} | n_i`, and an exhaustive discrete-log table.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    field: QuadField,
    forms: Vec<QuadForm>,
    index: HashMap<QuadForm, usize>,
    factors: Vec<CyclicFactor>,
    dlog: Vec<Vec<u64>>,
}

impl FormClassGroup {
    pub fn build(field: QuadField) -> Result<Self> {
        let forms = reduced_forms(field.delta());
        let index: HashMap<_, _> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let h = forms.len();
        let identity = index[&QuadForm::principal(field.delta())];

        let mut table = vec![vec![usize::MAX; h]; h];
        for i in 0..h {
            for j in i..h {
                let k = index[&forms[i].compose(&forms[j])?];
                table[i][j] = k;
                table[j][i] = k;
            }
        }
        let mul = |i: usize, j: usize| table[i][j];
        let power = |x: usize, e: u64| (0..e).fold(identity, |acc, _| mul(acc, x));

        // invariant factors: repeatedly split off an element of maximal order modulo the
        // subgroup generated so far, corrected by a subgroup element to have that exact order
        let mut in_sub = vec![false; h];
        in_sub[identity] = true;
        let mut sub = vec![identity];
        let mut gens: Vec<(usize, u64)> = Vec::new();
        while sub.len() < h {
            let quotient_order = |x: usize| {
                let mut y = x;
                let mut m = 1u64;
                while !in_sub[y] {
                    y = mul(y, x);
                    m += 1;
                }
                m
            };
            let (x, m) = (0..h)
                .map(|x| (x, quotient_order(x)))
                .fold(
                    (identity, 0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
            let g = sub
                .iter()
                .map(|&t| mul(x, t))
                .find(|&g| power(g, m) == identity)
                .ok_or(Error::RootNotFound(gens.len()))?;
            gens.push((g, m));
            let mut next = Vec::with_capacity(sub.len() * m as usize);
            let mut gp = identity;
            for _ in 0..m {
                next.extend(sub.iter().map(|&s| mul(s, gp)));
                gp = mul(gp, g);
            }
            for &s in &next {
                in_sub[s] = true;
            }
            sub = next;
        }

        let mut dlog = vec![Vec::new(); h];
        let mut exps = vec![0u64; gens.len()];
        loop {
            let class = exps
                .iter()
                .zip(&gens)
                .fold(identity, |acc, (&e, &(g, _))| mul(acc, power(g, e)));
            dlog[class] = exps.clone();
            // odometer over the exponent box
            let mut i = 0;
            while i < gens.len() {
                exps[i] += 1;
                if exps[i] < gens[i].1 {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == gens.len() {
                break;
            }
        }

        let mut group = Self {
            field,
            forms,
            index,
            factors: Vec::new(),
            dlog,
        };
        let avoid = arith::factorize(field.delta())
            .into_iter()
            .map(|(p, _)| p)
            .collect::<Vec<_>>();
        let factors = gens
            .iter()
            .map(|&(class, order)| {
                Ok(CyclicFactor {
                    order,
                    class,
                    ideal: group.prime_ideal_in_class(class, &avoid)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        group.factors = factors;
        Ok(group)
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |e, f| lcm(e, f.order))
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    pub fn reduced_forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn class_of_form(&self, form: &QuadForm) -> Result<usize> {
        if form.discriminant() != -self.field.delta_i() {
            return Err(Error::DiscriminantMismatch);
        }
        Ok(self.index[&form.reduce()?])
    }

    pub fn class_of_ideal(&self, ideal: &QuadIdeal) -> Result<usize> {
        self.class_of_form(&ideal.to_form())
    }

    /// Exponents `(k_1, ..., k_r)`, `0 <= k_i < n_i`, with `prod g_i^{k_i}` in the class of `form`.
    pub fn discrete_log(&self, form: &QuadForm) -> Result<Vec<u64>> {
        Ok(self.dlog[self.class_of_form(form)?].clone())
    }

    pub fn discrete_log_ideal(&self, ideal: &QuadIdeal) -> Result<Vec<u64>> {
        self.discrete_log(&ideal.to_form())
    }

    /// The smallest-norm split prime ideal in class `class` whose norm avoids `avoid`.
    pub fn prime_ideal_in_class(&self, class: usize, avoid: &[u64]) -> Result<QuadIdeal> {
        if self.forms[class].is_principal() {
            return Ok(QuadIdeal::unit(self.field));
        }
        for p in 2..GENERATOR_PRIME_LIMIT {
            if !arith::is_prime(p)
                || avoid.contains(&p)
                || self.field.splitting(p) != SplitType::Split
            {
                continue;
            }
            let q = prime_ideal_above(self.field, p)?.ideal;
            for cand in [q, q.conj()] {
                if self.class_of_ideal(&cand)? == class {
                    return Ok(cand);
                }
            }
        }
        Err(Error::GeneratorSelection)
    }
}

/// A generator of a principal ideal, normalised with [`QuadInt::normalized`].
pub fn principal_generator(ideal: &QuadIdeal) -> Result<QuadInt> {
    let k = ideal.field();
    let (a, b) = ideal.primitive_part();
    let prim = QuadIdeal::primitive(k, a, b)?;
    let alpha = k
        .elements_of_norm(a as u64)?
        .into_iter()
        .find(|alpha| prim.contains(alpha))
        .ok_or(Error::NotPrincipal)?;
    Ok(alpha.scale(ideal.content())?.normalized())
}

// SPDX-License-Identifier: Apache-2.0

//! The embedded coefficient tables for weights 3 and 4.
//!
//! One row per line: `level delta p:a_p ...`. The level is either an integer or a
//! product of factors `m` and `m^e` joined by `*`.

use std::str::FromStr;

use crate::error::{Error, Result};

pub const WEIGHT3: &str = include_str!("../../data/table_wt3.txt");
pub const WEIGHT4: &str = include_str!("../../data/table_wt4.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    /// The level as written in the table.
    pub label: String,
    pub level: u64,
    pub delta: u64,
    pub coefficients: Vec<(u64, i128)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedTable {
    pub weight: u32,
    pub rows: Vec<TableRow>,
}

fn parse_level(s: &str) -> Option<u64> {
    s.split('*').try_fold(1u64, |acc, f| {
        let v = match f.split_once('^') {
            Some((b, e)) => b.parse::<u64>().ok()?.checked_pow(e.parse().ok()?)?,
            None => f.parse().ok()?,
        };
        acc.checked_mul(v)
    })
}

impl EmbeddedTable {
    pub fn parse(weight: u32, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::TableParse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut parts = line.split_whitespace();
            let label = parts.next().ok_or_else(|| err("missing level"))?;
            let level = parse_level(label).ok_or_else(|| err("bad level"))?;
            let delta = parts
                .next()
                .and_then(|s| u64::from_str(s).ok())
                .ok_or_else(|| err("bad discriminant"))?;
            let coefficients = parts
                .map(|tok| {
                    let (p, a) = tok.split_once(':').ok_or_else(|| err("expected p:a_p"))?;
                    Ok((
                        p.parse().map_err(|_| err("bad prime"))?,
                        a.parse().map_err(|_| err("bad coefficient"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(TableRow {
                label: label.to_string(),
                level,
                delta,
                coefficients,
            });
        }
        Ok(Self { weight, rows })
    }

    pub fn weight3() -> Self {
        Self::parse(3, WEIGHT3).expect("embedded weight-3 table")
    }

    pub fn weight4() -> Self {
        Self::parse(4, WEIGHT4).expect("embedded weight-4 table")
    }

    pub fn row(&self, delta: u64) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.delta == delta)
    }
}

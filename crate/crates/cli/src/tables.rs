//! Published tables of `Q_{p,n}`, transcribed by hand.
//!
//! Column `n` lists the multiplicities of `Z/p^0, Z/p^1, ...` in order; every
//! published column has exactly `n` entries.

use std::collections::BTreeMap;

pub struct PublishedTable {
    pub prime: u64,
    pub columns: &'static [&'static [u64]],
}

impl PublishedTable {
    pub fn max_n(&self) -> u32 {
        self.columns.len() as u32
    }

    /// Non-zero multiplicities keyed by exponent `k`.
    pub fn column(&self, n: u32) -> Option<BTreeMap<u32, u64>> {
        let col = self.columns.get((n as usize).checked_sub(1)?)?;
        Some(col.iter().enumerate().filter(|(_, &m)| m > 0).map(|(k, &m)| (k as u32, m)).collect())
    }
}

pub const TABLES: &[PublishedTable] = &[
    PublishedTable {
        prime: 2,
        columns: &[
            &[1],
            &[2, 1],
            &[3, 3, 1],
            &[4, 6, 4, 1],
            &[5, 10, 10, 5, 1],
            &[6, 15, 20, 15, 6, 1],
            &[7, 21, 35, 35, 21, 7, 1],
            &[8, 28, 56, 70, 56, 28, 8, 1],
        ],
    },
    PublishedTable {
        prime: 3,
        columns: &[
            &[2],
            &[5, 3],
            &[9, 13, 4],
            &[14, 35, 26, 5],
            &[20, 75, 96, 45, 6],
            &[27, 140, 267, 216, 71, 7],
        ],
    },
    PublishedTable { prime: 5, columns: &[&[4], &[14, 10], &[34, 70, 20], &[69, 285, 235, 35]] },
    PublishedTable { prime: 7, columns: &[&[6], &[27, 21], &[83, 203, 56]] },
    PublishedTable { prime: 11, columns: &[&[10], &[65, 55]] },
];

pub fn table(prime: u64) -> Option<&'static PublishedTable> {
    TABLES.iter().find(|t| t.prime == prime)
}

/// Published structure of `Q_{p,n}`, if it was tabulated.
pub fn published(prime: u64, n: u32) -> Option<BTreeMap<u32, u64>> {
    table(prime)?.column(n)
}

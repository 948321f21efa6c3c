//! Enumeration of the elementary abelian group `C_p^n` as `F_p^n`.
//!
//! Vectors are produced in lexicographic order with coordinate 0 most
//! significant, i.e. the order obtained by counting in base `p` from
//! `(0, ..., 0, 1)`.

use std::fmt;

use crate::error::{Error, Result};

/// Which non-zero scalar multiple represents a cyclic subgroup.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// First non-zero coordinate (from index 0) equals 1.
    #[default]
    Leftmost,
    /// Last non-zero coordinate equals 1.
    Rightmost,
}

/// A prime `p` and a rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    p: u64,
    n: u32,
}

impl GroupSpec {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n - 1`, the number of non-identity elements.
    pub fn nonzero_count(&self) -> u128 {
        (self.p as u128).pow(self.n) - 1
    }

    /// `(p^n - 1) / (p - 1)`, the number of subgroups of order `p`.
    pub fn cyclic_subgroup_count(&self) -> u128 {
        self.nonzero_count() / (self.p as u128 - 1)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}^{}", self.p, self.n)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p^n`, coordinates in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpVector(Vec<u64>);

impl FpVector {
    pub fn new(coords: Vec<u64>, p: u64) -> Result<Self> {
        if let Some(c) = coords.iter().find(|&&c| c >= p) {
            return Err(Error::Parse(format!("coordinate {c} not reduced mod {p}")));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `<self, other>` reduced mod `p`.
    pub fn dot(&self, other: &Self, p: u64) -> u64 {
        self.0.iter().zip(&other.0).fold(0, |acc, (a, b)| (acc + a * b) % p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Self {
        Self(self.0.iter().map(|x| x * c % p).collect())
    }

    fn is_canonical(&self, normalization: Normalization) -> bool {
        let lead = match normalization {
            Normalization::Leftmost => self.0.iter().find(|&&c| c != 0),
            Normalization::Rightmost => self.0.iter().rev().find(|&&c| c != 0),
        };
        lead == Some(&1)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Non-zero vectors of `F_p^n` in lexicographic order; empty for `n = 0`.
pub fn nonzero_elements(spec: GroupSpec) -> Vec<FpVector> {
    let (p, n) = (spec.p, spec.n as usize);
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(spec.nonzero_count() as usize);
    let mut v = vec![0u64; n];
    // Base-p counter with the last coordinate least significant.
    loop {
        let Some(i) = (0..n).rev().find(|&i| v[i] < p - 1) else {
            return out;
        };
        v[i] += 1;
        v[i + 1..].iter_mut().for_each(|c| *c = 0);
        out.push(FpVector(v.clone()));
    }
}

/// One generator per order-`p` subgroup, using the leftmost normalization.
pub fn cyclic_subgroup_generators(spec: GroupSpec) -> Vec<FpVector> {
    cyclic_subgroup_generators_with(spec, Normalization::Leftmost)
}

pub fn cyclic_subgroup_generators_with(spec: GroupSpec, normalization: Normalization) -> Vec<FpVector> {
    nonzero_elements(spec).into_iter().filter(|v| v.is_canonical(normalization)).collect()
}

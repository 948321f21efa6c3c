//! Cokernel of the edge map from the representation ring of `C_p^n` to the
//! limit of representation rings over its cyclic subgroups.
//!
//! The limit is free on one basis element per pair (order-`p` subgroup,
//! non-trivial character of it), so the edge map is the 0/1 matrix that
//! records, for each non-identity element `v` (a character of `C_p^n` via
//! the dot product), which character of each cyclic subgroup `<g>` it
//! restricts to. The cokernel is read off the elementary divisors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::elemabelian::{cyclic_subgroup_generators_with, nonzero_elements, GroupSpec, Normalization};
use crate::error::{Error, Result};
use crate::exactlinalg::{smith_normal_form, IntegerMatrix};
use crate::series::qnomial_row;

/// Default bound on the matrix dimension `p^n - 1`.
pub const DEFAULT_SIZE_CEILING: u128 = 1024;

/// Residues `<g, v> mod p`, rows indexed by cyclic-subgroup generators and
/// columns by non-zero elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    spec: GroupSpec,
    rows: usize,
    cols: usize,
    values: Vec<u64>,
}

impl PairingMatrix {
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.values[row * self.cols + col]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.values.chunks(self.cols).map(<[u64]>::to_vec).collect()
    }
}

/// Options for the cokernel pipeline.
#[derive(Clone, Copy, Debug)]
pub struct CokernelOptions {
    pub normalization: Normalization,
    pub size_ceiling: u128,
}

impl Default for CokernelOptions {
    fn default() -> Self {
        Self { normalization: Normalization::Leftmost, size_ceiling: DEFAULT_SIZE_CEILING }
    }
}

fn require_rank(spec: GroupSpec) -> Result<()> {
    if spec.n() == 0 {
        Err(Error::ZeroRank)
    } else {
        Ok(())
    }
}

pub fn pairing_matrix(spec: GroupSpec) -> Result<PairingMatrix> {
    pairing_matrix_with(spec, Normalization::Leftmost)
}

pub fn pairing_matrix_with(spec: GroupSpec, normalization: Normalization) -> Result<PairingMatrix> {
    require_rank(spec)?;
    let p = spec.p();
    let gens = cyclic_subgroup_generators_with(spec, normalization);
    let elems = nonzero_elements(spec);
    let values = gens.iter().flat_map(|g| elems.iter().map(move |v| g.dot(v, p))).collect();
    Ok(PairingMatrix { spec, rows: gens.len(), cols: elems.len(), values })
}

/// Square 0/1 matrix of size `p^n - 1`: entry `k = C[row, col] != 0` puts a
/// 1 at row `(k - 1) + (p - 1) * row` of column `col`.
pub fn expand_character_matrix(c: &PairingMatrix) -> IntegerMatrix {
    let p = c.spec.p() as usize;
    let dim = c.cols;
    let mut d = IntegerMatrix::zeros(dim, dim);
    for row in 0..c.rows {
        for col in 0..c.cols {
            let k = c.get(row, col) as usize;
            if k != 0 {
                d.set(k - 1 + (p - 1) * row, col, BigInt::one());
            }
        }
    }
    d
}

/// Finite abelian `p`-group as multiplicities of `Z/p^k`, trivial summands
/// `Z/1` included under `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupType {
    prime: u64,
    counts: BTreeMap<u32, u64>,
}

impl AbelianGroupType {
    pub fn new(prime: u64, counts: BTreeMap<u32, u64>) -> Self {
        let counts = counts.into_iter().filter(|&(_, m)| m > 0).collect();
        Self { prime, counts }
    }

    /// Classifies a multiset of elementary divisors, all of which must be
    /// non-zero powers of `prime`.
    pub fn from_divisors(prime: u64, divisors: &[BigUint]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for d in divisors {
            if d.is_zero() {
                return Err(Error::ZeroDivisor);
            }
            let k = prime_power_exponent(d, prime)
                .ok_or_else(|| Error::NotPrimePower { divisor: d.to_string(), prime })?;
            *counts.entry(k).or_insert(0) += 1;
        }
        Ok(Self { prime, counts })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `{k: multiplicity of Z/p^k}`.
    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn multiplicity(&self, k: u32) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `(order p^k, multiplicity)` pairs in increasing order.
    pub fn by_order(&self) -> Vec<(BigUint, u64)> {
        self.counts.iter().map(|(&k, &m)| (BigUint::from(self.prime).pow(k), m)).collect()
    }
}

impl fmt::Display for AbelianGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .by_order()
            .into_iter()
            .rev()
            .map(|(order, m)| if m == 1 { format!("Z/{order}") } else { format!("(Z/{order})^{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn prime_power_exponent(d: &BigUint, prime: u64) -> Option<u32> {
    let mut d = d.clone();
    let mut k = 0;
    let p = BigUint::from(prime);
    while !d.is_one() {
        if !(&d % &p).is_zero() {
            return None;
        }
        d /= &p;
        k += 1;
    }
    Some(k)
}

/// `Q_{p,n}` with default options.
pub fn cokernel_structure(spec: GroupSpec) -> Result<AbelianGroupType> {
    cokernel_structure_with(spec, CokernelOptions::default())
}

pub fn cokernel_structure_with(spec: GroupSpec, options: CokernelOptions) -> Result<AbelianGroupType> {
    require_rank(spec)?;
    let size = spec.nonzero_count();
    if size > options.size_ceiling {
        return Err(Error::TooLarge { size, ceiling: options.size_ceiling });
    }
    let c = pairing_matrix_with(spec, options.normalization)?;
    let d = expand_character_matrix(&c);
    let snf = smith_normal_form(&d);
    AbelianGroupType::from_divisors(spec.p(), snf.divisors())
}

/// Multiplicity of `Z/p^k` predicted from `p`-nomial coefficients, as
/// `sum_j qnomial(n, p, (p-1)(k+1) - j)` over `k = 0..n`.
///
/// The default range is `j = 0..=p-2`; `literal_range` uses `j = 0..=p-1`.
/// Zero multiplicities are omitted.
pub fn predicted_exponents(spec: GroupSpec, literal_range: bool) -> BTreeMap<u32, BigUint> {
    let p = spec.p();
    let n = spec.n();
    let row = qnomial_row(n, p as u32);
    let coeff = |idx: i64| -> BigUint {
        usize::try_from(idx).ok().and_then(|i| row.get(i).cloned()).unwrap_or_default()
    };
    let top_j = if literal_range { p - 1 } else { p - 2 };
    let mut out = BTreeMap::new();
    for k in 0..n {
        let base = (p as i64 - 1) * (k as i64 + 1);
        let m: BigUint = (0..=top_j as i64).map(|j| coeff(base - j)).sum();
        if !m.is_zero() {
            out.insert(k, m);
        }
    }
    out
}

/// One row of a conjecture comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentComparison {
    pub k: u32,
    pub computed: BigUint,
    pub predicted: BigUint,
}

impl ExponentComparison {
    pub fn matches(&self) -> bool {
        self.computed == self.predicted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub spec: GroupSpec,
    pub literal_range: bool,
    pub computed: AbelianGroupType,
    pub rows: Vec<ExponentComparison>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ExponentComparison::matches)
    }
}

pub fn verify_conjecture(spec: GroupSpec) -> Result<ConjectureReport> {
    verify_conjecture_with(spec, false, CokernelOptions::default())
}

pub fn verify_conjecture_with(
    spec: GroupSpec,
    literal_range: bool,
    options: CokernelOptions,
) -> Result<ConjectureReport> {
    let computed = cokernel_structure_with(spec, options)?;
    let predicted = predicted_exponents(spec, literal_range);
    let keys: std::collections::BTreeSet<u32> =
        computed.counts().keys().chain(predicted.keys()).copied().collect();
    let rows = keys
        .into_iter()
        .map(|k| ExponentComparison {
            k,
            computed: BigUint::from(computed.multiplicity(k)),
            predicted: predicted.get(&k).cloned().unwrap_or_default(),
        })
        .collect();
    Ok(ConjectureReport { spec, literal_range, computed, rows })
}

/// Group exponent: the largest order present, 1 for the trivial group.
pub fn structure_exponent(g: &AbelianGroupType) -> BigUint {
    g.counts.keys().next_back().map_or_else(BigUint::one, |&k| BigUint::from(g.prime).pow(k))
}

/// Lower bounds `(KU, KO)` on the cyclic-family exponent of equivariant
/// K-theory for `C_2^n`.
pub fn k_theory_lower_bounds(n: u32) -> Result<(u32, u32)> {
    if n < 1 {
        return Err(Error::ZeroRank);
    }
    let complex = if n.is_multiple_of(2) { n + 1 } else { n };
    let real = n + [2, 1, 1, 0, 1, 0, 3, 2][(n % 8) as usize];
    Ok((complex, real))
}

/// Converts a `u64` multiplicity map to the `BigUint` form the prediction uses.
pub fn counts_as_big(g: &AbelianGroupType) -> BTreeMap<u32, BigUint> {
    g.counts.iter().map(|(&k, &m)| (k, BigUint::from(m))).collect()
}

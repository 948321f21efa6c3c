//! Cohomology of a cyclic 2-group acting on a graded `F_2` algebra, one
//! internal degree at a time, from the periodic resolution with maps
//! `1 - g` and `N = 1 + g + ... + g^(q-1)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2poly::{apply_map, enumerate_basis, map_order, F2Poly, Monomial, Presentation, RingMap};
use crate::series::RationalSeries;

/// Dense matrix over `F_2`, rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![0; cols.div_ceil(64)]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let bit = 1u64 << (j % 64);
        if value {
            self.data[i][j / 64] |= bit;
        } else {
            self.data[i][j / 64] &= !bit;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (dst, src) = (&mut out.data[i], &other.data[k]);
                    dst.iter_mut().zip(src).for_each(|(x, y)| *x ^= y);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.data.swap(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    let pivot = self.data[r].clone();
                    self.data[i].iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Basis of `{v : M v = 0}`, each vector of length `cols`.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let is_pivot: Vec<bool> = (0..self.cols).map(|c| pivots.contains(&c)).collect();
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![false; self.cols];
                v[free] = true;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.get(r, free);
                }
                v
            })
            .collect()
    }

    pub fn from_rows(rows: &[Vec<bool>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        m
    }
}

/// A cyclic group `C_q` (`q` a power of 2) acting through one ring map.
#[derive(Clone, Debug)]
pub struct GradedAction {
    action: RingMap,
    group_order: u64,
    action_order: u32,
}

impl GradedAction {
    pub fn new(action: RingMap, group_order: u64) -> Result<Self> {
        if !group_order.is_power_of_two() {
            return Err(Error::NotTwoPower(group_order));
        }
        let bound = u32::try_from(group_order).map_err(|_| Error::ActionOrder(group_order))?;
        let order = map_order(&action, bound).ok_or(Error::ActionOrder(group_order))?;
        if !group_order.is_multiple_of(u64::from(order)) {
            return Err(Error::ActionOrder(group_order));
        }
        Ok(Self { action, group_order, action_order: order })
    }

    pub fn presentation(&self) -> &Presentation {
        self.action.domain()
    }

    pub fn action(&self) -> &RingMap {
        &self.action
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn action_order(&self) -> u32 {
        self.action_order
    }

    /// Matrix of `g` on the degree-`t` basis, column `j` the image of basis element `j`.
    pub fn action_matrix(&self, basis: &[Monomial]) -> BitMatrix {
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut g = BitMatrix::zeros(basis.len(), basis.len());
        for (j, m) in basis.iter().enumerate() {
            let img =
                apply_map(&self.action, &F2Poly::monomial(m.clone())).expect("basis monomials are reduced");
            for term in img.terms() {
                g.set(index[term], j, true);
            }
        }
        g
    }

    /// Dimension and the ranks of `1 + g` and `N` in degree `t`.
    pub fn degree_data(&self, t: u32) -> DegreeData {
        let basis = enumerate_basis(self.presentation(), t);
        let g = self.action_matrix(&basis);
        let n = basis.len();
        let one_plus_g = BitMatrix::identity(n).add(&g);
        // g has order dividing q, so N is q/|g| copies of the orbit sum.
        let mut norm = BitMatrix::zeros(n, n);
        if (self.group_order / u64::from(self.action_order)) % 2 == 1 {
            let mut power = BitMatrix::identity(n);
            for _ in 0..self.action_order {
                norm = norm.add(&power);
                power = g.mul(&power);
            }
        }
        DegreeData { dim: n, rank_one_plus_g: one_plus_g.rank(), rank_norm: norm.rank() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeData {
    pub dim: usize,
    pub rank_one_plus_g: usize,
    pub rank_norm: usize,
}

impl DegreeData {
    pub fn invariants(&self) -> usize {
        self.dim - self.rank_one_plus_g
    }

    pub fn coinvariants(&self) -> usize {
        self.dim - self.rank_one_plus_g
    }

    /// `H^s` in this degree: `ker(1-g)` for `s = 0`, and for `s >= 1`
    /// `ker N / im(1-g)` or `ker(1-g) / im N`, which have equal dimension.
    pub fn cohomology(&self, s: u32) -> usize {
        if s == 0 {
            self.invariants()
        } else {
            self.dim - self.rank_one_plus_g - self.rank_norm
        }
    }
}

pub fn invariants_dim(ga: &GradedAction, t: u32) -> usize {
    ga.degree_data(t).invariants()
}

pub fn coinvariants_dim(ga: &GradedAction, t: u32) -> usize {
    ga.degree_data(t).coinvariants()
}

/// `E_2^{s,t}` dimensions for `s <= s_max`, `t <= t_max`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RowTable {
    dims: BTreeMap<(u32, u32), usize>,
}

impl RowTable {
    pub fn get(&self, s: u32, t: u32) -> Option<usize> {
        self.dims.get(&(s, t)).copied()
    }

    pub fn dims(&self) -> &BTreeMap<(u32, u32), usize> {
        &self.dims
    }

    pub fn row(&self, s: u32) -> Vec<usize> {
        self.dims.range((s, 0)..=(s, u32::MAX)).map(|(_, &d)| d).collect()
    }

    /// `s\tt\tdim` lines with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tt\tdim\n");
        for (&(s, t), d) in &self.dims {
            out.push_str(&format!("{s}\t{t}\t{d}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .dims
            .iter()
            .map(|(&(s, t), &dim)| serde_json::json!({ "s": s, "t": t, "dim": dim }))
            .collect();
        serde_json::Value::Array(entries)
    }
}

pub fn row_dims(ga: &GradedAction, s_max: u32, t_max: u32) -> RowTable {
    let data: Vec<DegreeData> = (0..=t_max).into_par_iter().map(|t| ga.degree_data(t)).collect();
    let mut dims = BTreeMap::new();
    for s in 0..=s_max {
        for (t, d) in data.iter().enumerate() {
            dims.insert((s, t as u32), d.cohomology(s));
        }
    }
    RowTable { dims }
}

pub fn verify_row_series(ga: &GradedAction, s: u32, expected: &RationalSeries, bound: u32) -> bool {
    let table = row_dims(ga, s, bound);
    let want = expected.expand(bound as usize);
    table.row(s).iter().zip(&want).all(|(&d, w)| num_bigint::BigInt::from(d) == *w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationDegree {
    pub degree: u32,
    pub coinvariants: usize,
    pub source: usize,
    pub image: usize,
    pub surjective: bool,
    pub kernel: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub degrees: Vec<GenerationDegree>,
}

impl GenerationReport {
    pub fn surjective(&self) -> bool {
        self.degrees.iter().all(|d| d.surjective)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.degrees.iter().find(|d| !d.surjective).map(|d| d.degree)
    }

    pub fn kernel_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.kernel).collect()
    }
}

/// Checks whether the coinvariants are generated over the invariants by
/// `gens`: in each degree, the span of `[v * g]` for invariant `v` and
/// generator `g`, and the kernel of the free module on `gens` onto it.
pub fn module_generation_check(ga: &GradedAction, gens: &[F2Poly], bound: u32) -> Result<GenerationReport> {
    let pres = ga.presentation();
    let mut gen_degrees = Vec::with_capacity(gens.len());
    for g in gens {
        let degs = g.degrees(pres);
        if degs.len() != 1 {
            return Err(Error::Presentation(format!(
                "module generator {} is not homogeneous",
                pres.format_poly(g)
            )));
        }
        gen_degrees.push(*degs.iter().next().unwrap());
    }
    let bases: Vec<Vec<Monomial>> = (0..=bound).map(|t| enumerate_basis(pres, t)).collect();
    let invariants: Vec<Vec<F2Poly>> = bases
        .iter()
        .map(|basis| {
            let m = BitMatrix::identity(basis.len()).add(&ga.action_matrix(basis));
            m.kernel()
                .into_iter()
                .map(|v| {
                    F2Poly::from_monomials(v.iter().zip(basis).filter(|(&b, _)| b).map(|(_, m)| m.clone()))
                })
                .collect()
        })
        .collect();
    let mut degrees = Vec::new();
    for d in 0..=bound {
        let basis = &bases[d as usize];
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let one_plus_g = BitMatrix::identity(basis.len()).add(&ga.action_matrix(basis));
        let boundary = one_plus_g.transpose();
        let base_rank = boundary.rank();
        let mut rows: Vec<Vec<bool>> =
            (0..boundary.rows()).map(|i| (0..basis.len()).map(|j| boundary.get(i, j)).collect()).collect();
        let mut source = 0;
        for (g, &e) in gens.iter().zip(&gen_degrees) {
            if e > d {
                continue;
            }
            for v in &invariants[(d - e) as usize] {
                source += 1;
                let prod = pres.mul(v, g);
                let mut row = vec![false; basis.len()];
                for m in prod.terms() {
                    row[index[m]] = true;
                }
                rows.push(row);
            }
        }
        let image = BitMatrix::from_rows(&rows, basis.len()).rank() - base_rank;
        let coinvariants = basis.len() - base_rank;
        degrees.push(GenerationDegree {
            degree: d,
            coinvariants,
            source,
            image,
            surjective: image == coinvariants,
            kernel: source - image,
        });
    }
    Ok(GenerationReport { degrees })
}

//! Fixed lines and isotropy groups of finite orthogonal matrix groups over
//! `Q(sqrt 2)`, and the projective-bundle exponent bound they give.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::qsqrt2::QSqrt2;

/// Largest group handled by [`group_closure`].
pub const MAX_GROUP_ORDER: usize = 64;

/// Square matrix over `Q(sqrt 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    n: usize,
    entries: Vec<QSqrt2>,
}

impl QMatrix {
    pub fn new(n: usize, entries: Vec<QSqrt2>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Shape { rows: n, cols: n, len: entries.len() });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<QSqrt2>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape {
                rows: n,
                cols: rows.first().map_or(0, Vec::len),
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| QSqrt2::from_int(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![QSqrt2::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = QSqrt2::one();
        }
        Self { n, entries }
    }

    /// Rotation by `k * pi/4`.
    pub fn rotation_eighth(k: i64) -> Self {
        let (c, s) = cos_sin_eighth(k);
        Self { n: 2, entries: vec![c.clone(), -&s, s, c] }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut m = Self { n, entries: vec![QSqrt2::zero(); n * n] };
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.entries[(self.n + i) * n + self.n + j] = other.get(i, j).clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[QSqrt2] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = QSqrt2::zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Self { n, entries }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Self { n, entries }
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|x| -x).collect() }
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &QSqrt2) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.entries[i * self.n + i] = &m.entries[i * self.n + i] - c;
        }
        m
    }

    pub fn apply(&self, v: &[QSqrt2]) -> Vec<QSqrt2> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).fold(QSqrt2::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self).is_identity()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn cos_sin_eighth(k: i64) -> (QSqrt2, QSqrt2) {
    let h = QSqrt2::half_sqrt2();
    let table = [
        (QSqrt2::one(), QSqrt2::zero()),
        (h.clone(), h.clone()),
        (QSqrt2::zero(), QSqrt2::one()),
        (-&h, h.clone()),
        (QSqrt2::from_int(-1), QSqrt2::zero()),
        (-&h, -&h),
        (QSqrt2::zero(), QSqrt2::from_int(-1)),
        (h.clone(), -&h),
    ];
    table[k.rem_euclid(8) as usize].clone()
}

/// Row-reduced echelon form of `rows`, zero rows dropped.
fn rref(mut rows: Vec<Vec<QSqrt2>>, cols: usize) -> (Vec<Vec<QSqrt2>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot is non-zero");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : row . v = 0 for every row}`.
fn null_space(rows: Vec<Vec<QSqrt2>>, cols: usize) -> Vec<Vec<QSqrt2>> {
    let (reduced, pivots) = rref(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![QSqrt2::zero(); cols];
            v[free] = QSqrt2::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&reduced[r][free];
            }
            v
        })
        .collect()
}

/// Linear subspace of `Q(sqrt 2)^n` stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<QSqrt2>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vec<QSqrt2>>) -> Self {
        let (basis, _) = rref(vectors, ambient);
        Self { ambient, basis }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(
            ambient,
            QMatrix::identity(ambient).entries.chunks(ambient).map(<[QSqrt2]>::to_vec).collect(),
        )
    }

    /// Kernel of `m`.
    pub fn kernel(m: &QMatrix) -> Self {
        let rows = (0..m.n).map(|i| m.row(i).to_vec()).collect();
        Self::span(m.n, null_space(rows, m.n))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<QSqrt2>] {
        &self.basis
    }

    /// Equations cutting out the subspace.
    fn annihilator(&self) -> Vec<Vec<QSqrt2>> {
        null_space(self.basis.clone(), self.ambient)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        Self::span(self.ambient, null_space(eqs, self.ambient))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        let eqs = other.annihilator();
        self.basis.iter().all(|v| {
            eqs.iter().all(|e| e.iter().zip(v).fold(QSqrt2::zero(), |acc, (a, b)| &acc + &(a * b)).is_zero())
        })
    }

    /// Linear equations defining the subspace, in reduced form.
    pub fn equations(&self) -> Vec<Vec<QSqrt2>> {
        rref(self.annihilator(), self.ambient).0
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vecs: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        write!(f, "span{{{}}}", vecs.join(", "))
    }
}

/// One group element with a short word in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub label: String,
    pub word: Vec<usize>,
    pub matrix: QMatrix,
}

/// A finite group given by orthogonal matrices.
#[derive(Clone, Debug)]
pub struct RepMatrixGroup {
    generator_labels: Vec<String>,
    generators: Vec<QMatrix>,
    elements: Vec<GroupElement>,
    index: HashMap<QMatrix, usize>,
}

fn compress_word(word: &[usize], labels: &[String]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let run = j - i;
        parts.push(if run == 1 { labels[word[i]].clone() } else { format!("{}^{run}", labels[word[i]]) });
        i = j;
    }
    parts.join("*")
}

const ORDERED_SEARCH_LIMIT: usize = 1 << 18;

/// Replaces labels by the shortest ordered product `g1^a1*g2^a2*...` where
/// one exists, so `r*s*r` reads as `s*r^4` when generators are `[s, r]`.
fn relabel_ordered(
    elements: &mut [GroupElement],
    gens: &[QMatrix],
    index: &HashMap<QMatrix, usize>,
    labels: &[String],
) {
    let right: Vec<Vec<usize>> =
        gens.iter().map(|g| elements.iter().map(|e| index[&e.matrix.mul(g)]).collect()).collect();
    let orders: Vec<usize> = right
        .iter()
        .map(|perm| {
            let mut k = 1;
            let mut i = perm[0];
            while i != 0 {
                i = perm[i];
                k += 1;
            }
            k
        })
        .collect();
    if orders
        .iter()
        .try_fold(1usize, |acc, &o| acc.checked_mul(o).filter(|&x| x <= ORDERED_SEARCH_LIMIT))
        .is_none()
    {
        return;
    }
    let mut best: Vec<Option<Vec<usize>>> = vec![None; elements.len()];
    let mut exps = vec![0usize; gens.len()];
    loop {
        let mut at = 0;
        for (g, &a) in exps.iter().enumerate() {
            for _ in 0..a {
                at = right[g][at];
            }
        }
        let better = match &best[at] {
            None => true,
            // Shorter first; among equals, weight on earlier generators.
            Some(b) => {
                (exps.iter().sum::<usize>(), std::cmp::Reverse(&exps))
                    < (b.iter().sum::<usize>(), std::cmp::Reverse(b))
            }
        };
        if better {
            best[at] = Some(exps.clone());
        }
        // Odometer over all exponent tuples.
        for g in (0..gens.len()).rev() {
            exps[g] += 1;
            if exps[g] < orders[g] {
                break;
            }
            exps[g] = 0;
        }
        if exps.iter().all(|&a| a == 0) {
            break;
        }
    }
    for (e, b) in elements.iter_mut().zip(best) {
        if let Some(b) = b {
            let word: Vec<usize> =
                b.iter().enumerate().flat_map(|(g, &a)| std::iter::repeat_n(g, a)).collect();
            e.label = compress_word(&word, labels);
            e.word = word;
        }
    }
}

/// Multiplicative closure of the generators. Elements are indexed breadth
/// first with the identity at 0, and labelled by ordered products where
/// possible, otherwise by their breadth-first words.
pub fn group_closure(generators: &[(String, QMatrix)], expected_order: usize) -> Result<RepMatrixGroup> {
    let dim = generators.first().map_or(0, |(_, m)| m.dim());
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for (label, m) in generators {
        if m.dim() != dim {
            return Err(Error::Shape { rows: m.dim(), cols: m.dim(), len: dim * dim });
        }
        if !m.is_orthogonal() {
            return Err(Error::NotOrthogonal(label.clone()));
        }
        labels.push(label.clone());
        mats.push(m.clone());
    }
    let cap = expected_order.max(MAX_GROUP_ORDER);
    let identity = QMatrix::identity(dim);
    let mut elements = vec![GroupElement { label: "e".into(), word: Vec::new(), matrix: identity.clone() }];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, m) in mats.iter().enumerate() {
            let product = elements[i].matrix.mul(m);
            if index.contains_key(&product) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::OrderMismatch { expected: expected_order, found: elements.len() + 1 });
            }
            let mut word = elements[i].word.clone();
            word.push(g);
            index.insert(product.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(GroupElement { label: compress_word(&word, &labels), word, matrix: product });
        }
    }
    if elements.len() != expected_order {
        return Err(Error::OrderMismatch { expected: expected_order, found: elements.len() });
    }
    relabel_ordered(&mut elements, &mats, &index, &labels);
    Ok(RepMatrixGroup { generator_labels: labels, generators: mats, elements, index })
}

impl RepMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, QMatrix::dim)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    pub fn index_of(&self, m: &QMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Evaluates a word such as `"f*r^4"`, `"sigma*rho^-1"` or `"e"`.
    pub fn evaluate(&self, word: &str) -> Result<QMatrix> {
        let mut acc = QMatrix::identity(self.dim());
        let word = word.trim();
        if word == "e" || word == "1" {
            return Ok(acc);
        }
        for factor in word.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, k)) => (
                    n.trim(),
                    k.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let g = self
                .generator_labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            // Orthogonal, so the inverse is the transpose.
            let base = if power < 0 { self.generators[g].transpose() } else { self.generators[g].clone() };
            for _ in 0..power.unsigned_abs() {
                acc = acc.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Index of the element a word evaluates to.
    pub fn lookup(&self, word: &str) -> Result<usize> {
        let m = self.evaluate(word)?;
        self.index_of(&m).ok_or_else(|| Error::Parse(format!("{word:?} is not in the group")))
    }

    /// Element set for a list of words.
    pub fn subset(&self, words: &[&str]) -> Result<BTreeSet<usize>> {
        words.iter().map(|w| self.lookup(w)).collect()
    }

    /// Subgroup generated by the given words.
    pub fn generated(&self, words: &[&str]) -> Result<BTreeSet<usize>> {
        let mut set = self.subset(words)?;
        set.insert(0);
        loop {
            let mut grown = set.clone();
            for &a in &set {
                for &b in &set {
                    let prod = self.elements[a].matrix.mul(&self.elements[b].matrix);
                    grown.insert(self.index[&prod]);
                }
            }
            if grown.len() == set.len() {
                return Ok(set);
            }
            set = grown;
        }
    }

    pub fn labels(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&i| self.elements[i].label.clone()).collect()
    }
}

/// Non-zero eigenspaces of `g` for the eigenvalues `+1` and `-1`.
pub fn fixed_line_components(g: &QMatrix) -> Vec<Subspace> {
    [QSqrt2::one(), QSqrt2::from_int(-1)]
        .iter()
        .map(|c| Subspace::kernel(&g.shift(c)))
        .filter(|s| s.dim() > 0)
        .collect()
}

/// Whether `g` fixes every line of `s`, i.e. `s` lies in one eigenspace.
pub fn fixes_all_lines(g: &QMatrix, s: &Subspace) -> bool {
    fixed_line_components(g).iter().any(|c| s.is_subspace_of(c))
}

/// A subspace together with the stabilizer of a generic line in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub subspace: Subspace,
    pub elements: BTreeSet<usize>,
}

pub fn stabilizer(rep: &RepMatrixGroup, s: &Subspace) -> BTreeSet<usize> {
    rep.elements.iter().enumerate().filter(|(_, e)| fixes_all_lines(&e.matrix, s)).map(|(i, _)| i).collect()
}

/// Isotropy groups of lines: eigenspaces of non-identity elements, closed
/// under intersection, each paired with its stabilizer; pairs `(S', H')`
/// with `S' <= S` and `H' <= H` for another pair `(S, H)` are dropped.
pub fn isotropy_subgroups(rep: &RepMatrixGroup) -> Vec<IsotropyGroup> {
    let mut spaces: Vec<Subspace> = Vec::new();
    for e in rep.elements.iter().skip(1) {
        for c in fixed_line_components(&e.matrix) {
            if !spaces.contains(&c) {
                spaces.push(c);
            }
        }
    }
    let mut frontier = 0;
    while frontier < spaces.len() {
        let end = spaces.len();
        for i in frontier..end {
            for j in 0..i {
                let x = spaces[i].intersect(&spaces[j]);
                if x.dim() > 0 && !spaces.contains(&x) {
                    spaces.push(x);
                }
            }
        }
        frontier = end;
    }
    let pairs: Vec<IsotropyGroup> = spaces
        .into_iter()
        .map(|s| {
            let elements = stabilizer(rep, &s);
            IsotropyGroup { subspace: s, elements }
        })
        .collect();
    pairs
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            !pairs.iter().enumerate().any(|(j, q)| {
                *i != j && p.subspace.is_subspace_of(&q.subspace) && p.elements.is_subset(&q.elements)
            })
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// Distinct stabilizers, in order of first appearance.
pub fn distinct_stabilizers(groups: &[IsotropyGroup]) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for g in groups {
        if !out.contains(&g.elements) {
            out.push(g.elements.clone());
        }
    }
    out
}

/// Stabilizers not properly contained in another.
pub fn maximal_stabilizers(groups: &[IsotropyGroup]) -> Vec<BTreeSet<usize>> {
    let all = distinct_stabilizers(groups);
    all.iter().filter(|h| !all.iter().any(|k| k != *h && h.is_subset(k))).cloned().collect()
}

/// True iff `subset` is a subgroup in which every element squares to the
/// identity and all elements commute.
pub fn elementary_abelian_check(rep: &RepMatrixGroup, subset: &BTreeSet<usize>) -> Result<bool> {
    if subset.is_empty() {
        return Err(Error::NotASubgroup);
    }
    let mats: Vec<&QMatrix> = subset.iter().map(|&i| &rep.elements[i].matrix).collect();
    for a in &mats {
        for b in &mats {
            let ab = a.mul(b);
            match rep.index_of(&ab) {
                Some(k) if subset.contains(&k) => {}
                _ => return Err(Error::NotASubgroup),
            }
        }
    }
    for (i, a) in mats.iter().enumerate() {
        if !a.mul(a).is_identity() {
            return Ok(false);
        }
        for b in &mats[i + 1..] {
            if a.mul(b) != b.mul(a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldType {
    Real,
    Complex,
}

impl FieldType {
    fn c(self) -> usize {
        match self {
            FieldType::Real => 1,
            FieldType::Complex => 2,
        }
    }
}

/// `cn - c + 1` for a representation of real dimension `cn`, provided every
/// isotropy group of a line is elementary abelian.
pub fn projective_exponent_bound(rep: &RepMatrixGroup, field: FieldType) -> Result<usize> {
    for g in isotropy_subgroups(rep) {
        if !elementary_abelian_check(rep, &g.elements)? {
            return Err(Error::IsotropyNotInFamily(format!("{{{}}}", rep.labels(&g.elements).join(", "))));
        }
    }
    let c = field.c();
    let dim = rep.dim();
    if !dim.is_multiple_of(c) || dim == 0 {
        return Err(Error::Shape { rows: dim, cols: dim, len: dim * dim });
    }
    Ok(dim - c + 1)
}

/// Each stabilizer is a subgroup and fixes every line of its subspace,
/// re-checked on basis vectors: `h v = v` for all of them or `h v = -v` for all.
pub fn verify_isotropy(rep: &RepMatrixGroup, groups: &[IsotropyGroup]) -> bool {
    groups.iter().all(|g| {
        let closed = elementary_abelian_check(rep, &g.elements).is_ok();
        closed
            && g.elements.iter().all(|&i| {
                let m = &rep.elements[i].matrix;
                let images: Vec<Vec<QSqrt2>> = g.subspace.basis().iter().map(|v| m.apply(v)).collect();
                let plus = images.iter().zip(g.subspace.basis()).all(|(w, v)| w == v);
                let minus = images
                    .iter()
                    .zip(g.subspace.basis())
                    .all(|(w, v)| w.iter().zip(v).all(|(a, b)| *a == -b));
                plus || minus
            })
    })
}

/// Block swap of `R^2 + R^2`.
pub fn block_swap() -> QMatrix {
    QMatrix::from_int_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m16() -> RepMatrixGroup {
        let r = QMatrix::rotation_eighth(1).direct_sum(&QMatrix::rotation_eighth(5));
        group_closure(&[("f".into(), block_swap()), ("r".into(), r)], 16).unwrap()
    }

    fn set(rep: &RepMatrixGroup, words: &[&str]) -> BTreeSet<usize> {
        rep.subset(words).unwrap()
    }

    #[test]
    fn rotations() {
        let r = QMatrix::rotation_eighth(1);
        let mut p = QMatrix::identity(2);
        for _ in 0..8 {
            p = p.mul(&r);
        }
        assert!(p.is_identity());
        assert!(r.is_orthogonal());
        assert_eq!(r.mul(&r), QMatrix::rotation_eighth(2));
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(m16().order(), 16);
        let id = group_closure(&[("e".into(), QMatrix::identity(4))], 1).unwrap();
        assert_eq!(id.order(), 1);
        let r = QMatrix::rotation_eighth(1).direct_sum(&QMatrix::rotation_eighth(5));
        assert!(matches!(
            group_closure(&[("r".into(), r)], 16),
            Err(Error::OrderMismatch { expected: 16, found: 8 })
        ));
    }

    #[test]
    fn non_orthogonal_generator() {
        let m = QMatrix::from_int_rows(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(matches!(group_closure(&[("u".into(), m)], 2), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn m16_relation_and_components() {
        let rep = m16();
        assert_eq!(rep.evaluate("f*r*f^-1").unwrap(), rep.evaluate("r^5").unwrap());
        let r4 = rep.evaluate("r^4").unwrap();
        assert_eq!(r4, QMatrix::identity(4).neg());
        let c = fixed_line_components(&r4);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].dim(), 4);
        assert!(fixed_line_components(&rep.evaluate("f*r^2").unwrap()).is_empty());
        let fr4 = fixed_line_components(&rep.evaluate("f*r^4").unwrap());
        let expected = Subspace::span(
            4,
            vec![
                vec![QSqrt2::one(), QSqrt2::zero(), QSqrt2::from_int(-1), QSqrt2::zero()],
                vec![QSqrt2::zero(), QSqrt2::one(), QSqrt2::zero(), QSqrt2::from_int(-1)],
            ],
        );
        assert!(fr4.contains(&expected));
    }

    #[test]
    fn m16_isotropy() {
        let rep = m16();
        let groups = isotropy_subgroups(&rep);
        let allowed = set(&rep, &["e", "f", "f*r^4", "r^4"]);
        assert!(!groups.is_empty());
        assert!(groups.iter().all(|g| g.elements.is_subset(&allowed)));
        assert!(verify_isotropy(&rep, &groups));
        assert_eq!(elementary_abelian_check(&rep, &allowed), Ok(true));
        assert_eq!(elementary_abelian_check(&rep, &rep.generated(&["r"]).unwrap()), Ok(false));
        assert_eq!(elementary_abelian_check(&rep, &set(&rep, &["e"])), Ok(true));
        assert_eq!(elementary_abelian_check(&rep, &set(&rep, &["e", "r"])), Err(Error::NotASubgroup));
        assert_eq!(projective_exponent_bound(&rep, FieldType::Real), Ok(4));
        assert_eq!(projective_exponent_bound(&rep, FieldType::Complex), Ok(3));
    }

    #[test]
    fn eigenspaces_are_disjoint() {
        let rep = m16();
        for e in rep.elements() {
            let plus = Subspace::kernel(&e.matrix.shift(&QSqrt2::one()));
            let minus = Subspace::kernel(&e.matrix.shift(&QSqrt2::from_int(-1)));
            assert_eq!(plus.intersect(&minus).dim(), 0);
        }
    }

    #[test]
    fn subspace_operations() {
        let v = Subspace::whole(3);
        let e1 = Subspace::span(3, vec![vec![QSqrt2::one(), QSqrt2::zero(), QSqrt2::zero()]]);
        assert!(e1.is_subspace_of(&v));
        assert!(!v.is_subspace_of(&e1));
        assert_eq!(v.intersect(&e1), e1);
        assert_eq!(e1.equations().len(), 2);
    }

    #[test]
    fn non_elementary_isotropy_is_rejected() {
        let r = QMatrix::rotation_eighth(2).direct_sum(&QMatrix::identity(2));
        let rep = group_closure(&[("r".into(), r)], 4).unwrap();
        assert!(matches!(
            projective_exponent_bound(&rep, FieldType::Real),
            Err(Error::IsotropyNotInFamily(_))
        ));
    }
}

//! Graded polynomial algebras over `F_2` modulo monomial relations.
//!
//! Generators carry an internal degree and an optional filtration degree
//! (for bigraded pages); the grading used for counting is their sum.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector over the generator list of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn generator(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub filtration: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self { name: name.into(), degree, filtration: 0 }
    }

    pub fn bigraded(name: impl Into<String>, filtration: u32, degree: u32) -> Self {
        Self { name: name.into(), degree, filtration }
    }

    pub fn total_degree(&self) -> u32 {
        self.degree + self.filtration
    }
}

/// `F_2[generators] / (relations)` with monomial relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relations: Vec<Monomial>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relations: Vec<Monomial>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Presentation(format!("bad generator name {:?}", g.name)));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::Presentation(format!("duplicate generator {}", g.name)));
            }
            if g.total_degree() == 0 {
                return Err(Error::Presentation(format!("generator {} has degree 0", g.name)));
            }
        }
        for r in &relations {
            if r.0.len() != generators.len() {
                return Err(Error::Presentation("relation length mismatch".into()));
            }
            if r.is_one() {
                return Err(Error::Presentation("constant relation".into()));
            }
        }
        Ok(Self { generators, relations })
    }

    /// Builds a presentation from `(name, degree)` pairs and relation strings
    /// such as `"x*y"` or `"z^2"`.
    pub fn parse(generators: &[(&str, u32)], relations: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|&(n, d)| Generator::new(n, d)).collect();
        Self::with_relation_strings(gens, relations)
    }

    pub fn with_relation_strings<S: AsRef<str>>(generators: Vec<Generator>, relations: &[S]) -> Result<Self> {
        let bare = Self::new(generators, Vec::new())?;
        let rels = relations.iter().map(|r| bare.parse_monomial(r.as_ref())).collect::<Result<_>>()?;
        Self::new(bare.generators, rels)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(e, g)| e * g.total_degree()).sum()
    }

    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        m.0.iter()
            .zip(&self.generators)
            .fold((0, 0), |(s, t), (e, g)| (s + e * g.filtration, t + e * g.degree))
    }

    pub fn is_reduced_monomial(&self, m: &Monomial) -> bool {
        !self.relations.iter().any(|r| r.divides(m))
    }

    pub fn one(&self) -> F2Poly {
        F2Poly::monomial(Monomial::one(self.num_generators()))
    }

    pub fn generator(&self, i: usize) -> F2Poly {
        F2Poly::monomial(Monomial::generator(self.num_generators(), i))
    }

    /// Drops every monomial lying in the relation ideal.
    pub fn reduce(&self, p: &F2Poly) -> F2Poly {
        F2Poly { terms: p.terms.iter().filter(|m| self.is_reduced_monomial(m)).cloned().collect() }
    }

    pub fn mul(&self, a: &F2Poly, b: &F2Poly) -> F2Poly {
        self.reduce(&a.mul(b))
    }

    /// Parses `"x^2*y"` or `"1"` as a monomial over this generator list.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let mut e = vec![0u32; self.num_generators()];
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, k)) => {
                    let k: u32 =
                        k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (n.trim(), k)
                }
                None => (factor, 1),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?} in {s:?}")))?;
            e[i] += power;
        }
        Ok(Monomial(e))
    }

    /// Parses a sum of monomials such as `"b + z^2"`; `"0"` is zero.
    pub fn parse_poly(&self, s: &str) -> Result<F2Poly> {
        let s = s.trim();
        if s == "0" {
            return Ok(F2Poly::zero());
        }
        let mut p = F2Poly::zero();
        for term in s.split('+') {
            if term.trim().is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            p.toggle(self.parse_monomial(term)?);
        }
        Ok(p)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .zip(&self.generators)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
                .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn format_poly(&self, p: &F2Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<&Monomial> = p.terms.iter().collect();
        terms.sort_by(|a, b| self.degree(b).cmp(&self.degree(a)).then_with(|| b.cmp(a)));
        terms.into_iter().map(|m| self.format_monomial(m)).collect::<Vec<_>>().join(" + ")
    }
}

/// Standard monomial basis in degree `d`, graded-lexicographic with the
/// first generator largest.
pub fn enumerate_basis(pres: &Presentation, d: u32) -> Vec<Monomial> {
    let degrees: Vec<u32> = pres.generators.iter().map(Generator::total_degree).collect();
    let mut out = Vec::new();
    let mut current = vec![0u32; degrees.len()];
    fill(pres, &degrees, 0, d, &mut current, &mut out);
    out
}

fn fill(
    pres: &Presentation,
    degrees: &[u32],
    i: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if i == degrees.len() {
        if remaining == 0 {
            let m = Monomial(current.clone());
            if pres.is_reduced_monomial(&m) {
                out.push(m);
            }
        }
        return;
    }
    for e in (0..=remaining / degrees[i]).rev() {
        current[i] = e;
        fill(pres, degrees, i + 1, remaining - e * degrees[i], current, out);
    }
    current[i] = 0;
}

pub fn graded_dimension(pres: &Presentation, d: u32) -> usize {
    enumerate_basis(pres, d).len()
}

/// Dimension of the `(s, t)` summand for a bigraded presentation.
pub fn bigraded_dimension(pres: &Presentation, s: u32, t: u32) -> usize {
    enumerate_basis(pres, s + t).iter().filter(|m| pres.bidegree(m) == (s, t)).count()
}

/// Element of `F_2[generators]`: a finite set of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct F2Poly {
    terms: BTreeSet<Monomial>,
}

impl F2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self { terms: BTreeSet::from([m]) }
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    pub fn terms(&self) -> &BTreeSet<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { terms: self.terms.symmetric_difference(&other.terms).cloned().collect() }
    }

    /// Product in the free polynomial ring (no reduction).
    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for a in &self.terms {
            for b in &other.terms {
                p.toggle(a.mul(b));
            }
        }
        p
    }

    /// Distinct total degrees of the terms under `pres`.
    pub fn degrees(&self, pres: &Presentation) -> BTreeSet<u32> {
        self.terms.iter().map(|m| pres.degree(m)).collect()
    }
}

/// Endomorphism of a presentation given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    domain: Presentation,
    images: Vec<F2Poly>,
}

impl RingMap {
    pub fn new(domain: Presentation, images: Vec<F2Poly>) -> Result<Self> {
        if images.len() != domain.num_generators() {
            return Err(Error::IllDefinedMap(format!(
                "{} images for {} generators",
                images.len(),
                domain.num_generators()
            )));
        }
        let images: Vec<F2Poly> = images.iter().map(|p| domain.reduce(p)).collect();
        for (g, img) in domain.generators.iter().zip(&images) {
            if img.terms.iter().any(|m| domain.degree(m) != g.total_degree()) {
                return Err(Error::IllDefinedMap(format!(
                    "image of {} is not homogeneous of degree {}",
                    g.name,
                    g.total_degree()
                )));
            }
        }
        let map = Self { domain, images };
        for r in &map.domain.relations {
            let img = map.image_of_monomial(r, &mut HashMap::new());
            if !img.is_zero() {
                return Err(Error::IllDefinedMap(format!(
                    "relation {} maps to {}",
                    map.domain.format_monomial(r),
                    map.domain.format_poly(&img)
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(domain: Presentation) -> Self {
        let images = (0..domain.num_generators()).map(|i| domain.generator(i)).collect();
        Self { domain, images }
    }

    /// Builds a map from `generator -> image string` pairs; generators not
    /// listed are fixed.
    pub fn parse(domain: Presentation, images: &BTreeMap<String, String>) -> Result<Self> {
        for name in images.keys() {
            if domain.index_of(name).is_none() {
                return Err(Error::Parse(format!("image given for unknown generator {name:?}")));
            }
        }
        let imgs = domain
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| match images.get(&g.name) {
                Some(s) => domain.parse_poly(s),
                None => Ok(domain.generator(i)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, imgs)
    }

    pub fn domain(&self) -> &Presentation {
        &self.domain
    }

    pub fn images(&self) -> &[F2Poly] {
        &self.images
    }

    fn image_of_monomial(&self, m: &Monomial, powers: &mut HashMap<(usize, u32), F2Poly>) -> F2Poly {
        let mut acc = self.domain.one();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = powers
                .entry((i, e))
                .or_insert_with(|| {
                    let mut p = self.domain.one();
                    for _ in 0..e {
                        p = self.domain.mul(&p, &self.images[i]);
                    }
                    p
                })
                .clone();
            acc = self.domain.mul(&acc, &factor);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let images = inner.images.iter().map(|p| apply_map(self, p)).collect::<Result<Vec<_>>>()?;
        Ok(Self { domain: self.domain.clone(), images })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| *img == self.domain.generator(i))
    }
}

/// Substitutes generator images into a reduced polynomial.
pub fn apply_map(f: &RingMap, p: &F2Poly) -> Result<F2Poly> {
    if let Some(m) = p.terms.iter().find(|m| !f.domain.is_reduced_monomial(m)) {
        return Err(Error::IllFormed(f.domain.format_monomial(m)));
    }
    let mut powers = HashMap::new();
    let mut out = F2Poly::zero();
    for m in &p.terms {
        out = out.add(&f.image_of_monomial(m, &mut powers));
    }
    Ok(out)
}

/// Smallest `m <= bound` with `f^m` the identity.
pub fn map_order(f: &RingMap, bound: u32) -> Option<u32> {
    let mut power = f.clone();
    for m in 1..=bound {
        if power.is_identity() {
            return Some(m);
        }
        power = f.compose(&power).ok()?;
    }
    None
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        write!(f, "F2[{}]", gens.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.format_monomial(r)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

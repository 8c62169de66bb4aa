//! Monomials and monomial ideals over an anonymous set of variables.
//!
//! Everything here is pure lattice arithmetic on exponent vectors. The same
//! type serves for ideals of `R = k[x]` (the per-T-monomial components of a
//! slice) and for ideals of `G = k[x, T]` (flattened exponent vectors).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exp = u32;

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(SmallVec<[Exp; 4]>);

impl Monomial {
    pub fn new(exps: &[Exp]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// The variable `i` in `nvars` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[Exp] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Bitmask of the variables occurring in the monomial.
    pub fn support(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | (1u64 << i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Product. Exponent overflow is a hard failure.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self / gcd(self, other)`.
    pub fn strip(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Exact quotient `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.strip(other))
    }

    /// Sets the exponents of the variables in `mask` to zero.
    pub fn erase(&self, mask: u64) -> Monomial {
        Monomial(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &e)| if mask & (1 << i) != 0 { 0 } else { e })
                .collect(),
        )
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn split_at(&self, k: usize) -> (Monomial, Monomial) {
        (Monomial::new(&self.0[..k]), Monomial::new(&self.0[k..]))
    }

    fn without_last(&self) -> Monomial {
        Monomial::new(&self.0[..self.0.len() - 1])
    }

    fn last(&self) -> Exp {
        *self.0.last().expect("monomial with no variables")
    }

    pub(crate) fn degree_order(a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| a.cmp(b))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All exponent vectors of `nvars` variables with total degree `degree`,
/// in lexicographically decreasing order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<Exp>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut cur = vec![0; nvars];
    rec(0, degree, &mut cur, &mut out);
    out
}

/// Maximal degree of a monomial outside an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopDegree {
    /// The ideal is the unit ideal; no monomial lies outside.
    Empty,
    Finite(u64),
    Infinite,
}

/// A monomial ideal, stored as its minimal generators in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.gens)
    }
}

/// Reduce a generator list to its divisibility antichain, sorted lexicographically.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(Monomial::degree_order);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub(crate) fn from_minimal(nvars: usize, gens: Vec<Monomial>) -> Self {
        MonomialIdeal { nvars, gens }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// `(x_1, ..., x_n)^k`.
    pub fn maximal_power(nvars: usize, k: u32) -> Self {
        MonomialIdeal::from_minimal(nvars, {
            let mut g = monomials_of_degree(nvars, k);
            g.sort();
            g
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<Monomial> {
        self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `(self : m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.strip(m)).collect())
    }

    /// `(self : W) = ∩_{w ∈ gens W} (self : w)`. The colon by the zero ideal is the unit ideal.
    pub fn colon_ideal(&self, w: &MonomialIdeal) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for g in &w.gens {
            acc = acc.intersect(&self.colon(g));
        }
        acc
    }

    /// `(self : W^∞)`, by iterating the colon to a fixed point.
    pub fn saturate(&self, w: &MonomialIdeal) -> MonomialIdeal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_ideal(w);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `(self : (x_i : i ∈ mask)^∞)`.
    pub fn saturate_vars(&self, mask: u64) -> MonomialIdeal {
        // For a single variable the saturation erases it; for several, intersect.
        let mut acc = MonomialIdeal::unit(self.nvars);
        for i in 0..self.nvars {
            if mask & (1 << i) != 0 {
                let erased = MonomialIdeal::new(
                    self.nvars,
                    self.gens.iter().map(|g| g.erase(1 << i)).collect(),
                );
                acc = acc.intersect(&erased);
            }
        }
        if mask == 0 {
            return self.clone();
        }
        acc
    }

    /// Krull dimension of `k[vars] / self`: the largest set of variables
    /// containing the support of no generator. The unit ideal has dimension -1.
    pub fn krull_dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        assert!(self.nvars < 32, "too many variables for subset enumeration");
        let supports: Vec<u64> = self.gens.iter().map(Monomial::support).collect();
        let mut best = 0i64;
        for set in 0u64..(1u64 << self.nvars) {
            let size = set.count_ones() as i64;
            if size <= best {
                continue;
            }
            if supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        best
    }

    /// Gens with last exponent at most `k`, with the last variable dropped.
    fn slice_last(&self, k: Exp) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .filter(|g| g.last() <= k)
            .map(Monomial::without_last)
            .collect();
        MonomialIdeal::new(self.nvars - 1, gens)
    }

    fn max_last(&self) -> Exp {
        self.gens.iter().map(Monomial::last).max().unwrap_or(0)
    }

    /// Number of monomials of `self` lying outside `other`; `None` when infinite.
    pub fn count_outside(&self, other: &MonomialIdeal) -> Option<u64> {
        self.count_outside_with_top(other).map(|(c, _)| c)
    }

    /// Like [`count_outside`](Self::count_outside), also returning the largest
    /// degree of a counted monomial (`None` when nothing is counted).
    pub fn count_outside_with_top(&self, other: &MonomialIdeal) -> Option<(u64, Option<u64>)> {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.gens.is_empty() || self.is_subset(other) {
            return Some((0, None));
        }
        match self.nvars {
            0 => Some((1, Some(0))),
            1 => {
                let lo = self.gens[0].exps()[0] as u64;
                let hi = other.gens.first().map(|g| g.exps()[0] as u64)?;
                Some((hi - lo, Some(hi - 1)))
            }
            _ => {
                let kmax = self.max_last().max(other.max_last());
                let mut total = 0u64;
                let mut top: Option<u64> = None;
                for k in 0..=kmax {
                    let (c, t) = self
                        .slice_last(k)
                        .count_outside_with_top(&other.slice_last(k))?;
                    if k == kmax && c > 0 {
                        return None;
                    }
                    total += c;
                    if let Some(t) = t {
                        top = Some(top.map_or(t + k as u64, |cur| cur.max(t + k as u64)));
                    }
                }
                Some((total, top))
            }
        }
    }

    /// Number of standard monomials (monomials outside the ideal).
    pub fn colength(&self) -> Option<u64> {
        MonomialIdeal::unit(self.nvars).count_outside(self)
    }

    /// Largest degree of a monomial outside the ideal.
    pub fn top_standard_degree(&self) -> TopDegree {
        match MonomialIdeal::unit(self.nvars).count_outside_with_top(self) {
            None => TopDegree::Infinite,
            Some((_, None)) => TopDegree::Empty,
            Some((_, Some(t))) => TopDegree::Finite(t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| m(g)).collect())
    }

    #[test]
    fn colength_of_maximal_powers() {
        for n in 1..=12u32 {
            let i = MonomialIdeal::maximal_power(2, n);
            assert_eq!(i.colength(), Some((n * (n + 1) / 2) as u64));
        }
        let i = MonomialIdeal::maximal_power(3, 4);
        assert_eq!(i.colength(), Some(20));
    }

    #[test]
    fn infinite_counts_are_detected() {
        let i = ideal(2, &[&[2, 0]]);
        assert_eq!(i.colength(), None);
        assert_eq!(MonomialIdeal::zero(2).colength(), None);
        assert_eq!(MonomialIdeal::unit(2).colength(), Some(0));
        assert_eq!(MonomialIdeal::zero(0).colength(), Some(1));
    }

    #[test]
    fn count_between_ideals() {
        // (x, y) \ (x^2, xy, y^2) = {x, y}
        let u = MonomialIdeal::maximal_power(2, 1);
        let v = MonomialIdeal::maximal_power(2, 2);
        assert_eq!(u.count_outside(&v), Some(2));
        // (x) \ (x^2, y): only x
        let u = ideal(2, &[&[1, 0]]);
        let v = ideal(2, &[&[2, 0], &[0, 1]]);
        assert_eq!(u.count_outside(&v), Some(1));
        // (x) \ (x^2): x y^k for all k
        assert_eq!(u.count_outside(&ideal(2, &[&[2, 0]])), None);
    }

    #[test]
    fn top_degree() {
        assert_eq!(MonomialIdeal::maximal_power(2, 3).top_standard_degree(), TopDegree::Finite(2));
        assert_eq!(MonomialIdeal::unit(3).top_standard_degree(), TopDegree::Empty);
        assert_eq!(ideal(2, &[&[1, 0]]).top_standard_degree(), TopDegree::Infinite);
    }

    #[test]
    fn saturation_by_variables() {
        // (x^2 y, y^3) : y^∞ = (1)
        let i = ideal(2, &[&[2, 1], &[0, 3]]);
        assert!(i.saturate_vars(0b10).is_unit());
        // (x^2 y) : x^∞ = (y)
        let i = ideal(2, &[&[2, 1]]);
        assert_eq!(i.saturate_vars(0b01), ideal(2, &[&[0, 1]]));
    }

    #[test]
    fn colon_intersection_and_krull_dim() {
        let i = ideal(2, &[&[2, 1], &[0, 3]]);
        assert_eq!(i.colon(&m(&[0, 1])), ideal(2, &[&[2, 0], &[0, 2]]));
        let a = ideal(2, &[&[2, 0], &[0, 1]]);
        let b = ideal(2, &[&[1, 0], &[0, 2]]);
        assert_eq!(a.intersect(&b), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(ideal(2, &[&[1, 1]]).krull_dim(), 1);
        assert_eq!(ideal(3, &[&[2, 1, 0], &[0, 1, 1]]).krull_dim(), 2);
        assert_eq!(MonomialIdeal::unit(3).krull_dim(), -1);
        assert_eq!(MonomialIdeal::zero(3).krull_dim(), 3);
    }
}

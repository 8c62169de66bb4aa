//! Brute-force reference values: direct enumeration of monomials layer by
//! layer, membership by explicit factor search, and plain finite differences.
//!
//! Nothing here touches [`Slice`](crate::module::Slice) arithmetic or the
//! counting recursion, so agreement with the engine is a real cross-check.
//!
//! Enumeration stops at the first x-degree layer `K` at or above the largest
//! generator degree of the numerator in which nothing was counted. Every
//! monomial of higher degree is then a multiple of a degree-`K` monomial of
//! the numerator, hence already in the denominator.

use std::collections::HashMap;

/// Layer at which enumeration gives up and reports an infinite count.
pub const DEFAULT_LAYER_CAP: u32 = 80;

/// Exponent vectors of total degree `degree` in `nvars` variables.
pub fn exponent_vectors(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in exponent_vectors(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn in_ideal(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// Number of monomials of `k[x]` in `(u)` but not in `(v)`, restricted to
/// `t`-parts of degree `t_degree` when `t_vars > 0`. Generators are flat
/// vectors of length `x_vars + t_vars`. `None` when no certificate layer is
/// reached below `cap`.
pub fn count_between(
    u: &[Vec<u32>],
    v: &[Vec<u32>],
    x_vars: usize,
    t_vars: usize,
    t_degree: u32,
    cap: u32,
) -> Option<u64> {
    let ts = exponent_vectors(t_vars, t_degree);
    let bound = u
        .iter()
        .map(|g| g[..x_vars].iter().sum::<u32>())
        .max()
        .unwrap_or(0);
    let mut total = 0u64;
    for k in 0..=cap {
        let mut layer = 0u64;
        for x in exponent_vectors(x_vars, k) {
            for t in &ts {
                let mut m = x.clone();
                m.extend_from_slice(t);
                if in_ideal(u, &m) && !in_ideal(v, &m) {
                    layer += 1;
                }
            }
        }
        total += layer;
        if layer == 0 && k >= bound {
            return Some(total);
        }
    }
    None
}

/// Generators of one degree-one module: `(x exponents, slot)`.
pub type Terms = Vec<(Vec<u32>, usize)>;

/// The raw data of a setup: the ideal `A`, the members `G_1, J, I_1..I_q`, and
/// extra generators of `B` in the flat variables `(x, T)`.
#[derive(Clone, Debug)]
pub struct Oracle {
    x_vars: usize,
    t_vars: usize,
    b: Vec<Vec<u32>>,
    members: Vec<Vec<(Vec<u32>, Vec<u32>)>>,
    cap: u32,
}

impl Oracle {
    pub fn new(x_vars: usize, t_vars: usize, a: &[Vec<u32>], f: &Terms, e: &[Terms]) -> Self {
        let unit = |slot: usize| {
            let mut t = vec![0; t_vars];
            t[slot] = 1;
            t
        };
        let lift = |terms: &Terms| -> Vec<(Vec<u32>, Vec<u32>)> {
            terms.iter().map(|(x, s)| (x.clone(), unit(*s))).collect()
        };
        let g1 = (0..t_vars).map(|s| (vec![0; x_vars], unit(s))).collect();
        let mut members = vec![g1, lift(f)];
        members.extend(e.iter().map(lift));
        let b = a
            .iter()
            .map(|g| {
                let mut m = g.clone();
                m.extend(std::iter::repeat(0).take(t_vars));
                m
            })
            .collect();
        Oracle {
            x_vars,
            t_vars,
            b,
            members,
            cap: DEFAULT_LAYER_CAP,
        }
    }

    /// Adds flat generators to `B`.
    pub fn with_extra_b(mut self, gens: &[Vec<u32>]) -> Self {
        self.b.extend(gens.iter().cloned());
        self
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn q(&self) -> usize {
        self.members.len() - 2
    }

    /// `ℓ(num / den)` where both are power products over `[G_1, J, I_1, ...]`.
    pub fn count(&self, num: &[u32], den: &[u32]) -> Option<u64> {
        let degree: u32 = num.iter().sum();
        assert_eq!(degree, den.iter().sum::<u32>(), "pieces of different degree");
        let ts = exponent_vectors(self.t_vars, degree);
        let bound: u32 = num
            .iter()
            .zip(&self.members)
            .map(|(&e, gens)| {
                e * gens
                    .iter()
                    .map(|g| g.0.iter().sum::<u32>())
                    .max()
                    .unwrap_or(0)
            })
            .sum();
        let mut memo = HashMap::new();
        let mut total = 0u64;
        for k in 0..=self.cap {
            let mut layer = 0u64;
            for x in exponent_vectors(self.x_vars, k) {
                for t in &ts {
                    let mut flat = x.clone();
                    flat.extend_from_slice(t);
                    if in_ideal(&self.b, &flat) {
                        continue;
                    }
                    if self.member(&x, t, num, &mut memo) && !self.member(&x, t, den, &mut memo) {
                        layer += 1;
                    }
                }
            }
            total += layer;
            if layer == 0 && k >= bound {
                return Some(total);
            }
        }
        None
    }

    fn member(
        &self,
        x: &[u32],
        t: &[u32],
        exps: &[u32],
        memo: &mut HashMap<(Vec<u32>, Vec<u32>, Vec<u32>), bool>,
    ) -> bool {
        let Some(pos) = exps.iter().position(|&e| e > 0) else {
            return t.iter().all(|&v| v == 0);
        };
        let key = (x.to_vec(), t.to_vec(), exps.to_vec());
        if let Some(&hit) = memo.get(&key) {
            return hit;
        }
        let mut rest = exps.to_vec();
        rest[pos] -= 1;
        let mut found = false;
        for (gx, gt) in &self.members[pos] {
            if divides(gx, x) && divides(gt, t) {
                let x2: Vec<u32> = x.iter().zip(gx).map(|(a, b)| a - b).collect();
                let t2: Vec<u32> = t.iter().zip(gt).map(|(a, b)| a - b).collect();
                if self.member(&x2, &t2, &rest, memo) {
                    found = true;
                    break;
                }
            }
        }
        memo.insert(key, found);
        found
    }

    /// `ℓ(I^r M_{n+p} / J^n I^r M_p)`.
    pub fn mixed(&self, n: u32, p: u32, r: &[u32]) -> Option<u64> {
        let mut num = vec![n + p, 0];
        let mut den = vec![p, n];
        num.extend_from_slice(r);
        den.extend_from_slice(r);
        self.count(&num, &den)
    }

    /// `ℓ(M_{n+q} / J^n M_q)`.
    pub fn buchsbaum_rim(&self, n: u32, q: u32) -> Option<u64> {
        let mut num = vec![n + q, 0];
        let mut den = vec![q, n];
        num.extend(std::iter::repeat(0).take(self.q()));
        den.extend(std::iter::repeat(0).take(self.q()));
        self.count(&num, &den)
    }

    /// `ℓ(M_{|r|+p} / I^r M_p)`.
    pub fn kirby_rees(&self, p: u32, r: &[u32]) -> Option<u64> {
        let total: u32 = r.iter().sum();
        let mut num = vec![total + p, 0];
        let mut den = vec![p, 0];
        num.extend(std::iter::repeat(0).take(self.q()));
        den.extend_from_slice(r);
        self.count(&num, &den)
    }

    /// Mixed function at `(n, p, r_1..)` given as one coordinate vector.
    pub fn mixed_at(&self, coords: &[u32]) -> Option<u64> {
        self.mixed(coords[0], coords[1], &coords[2..])
    }
}

/// Iterated forward difference, one axis at a time.
pub fn difference<F>(f: &mut F, order: &[u32], base: &[u32]) -> Option<i64>
where
    F: FnMut(&[u32]) -> Option<u64>,
{
    match order.iter().position(|&o| o > 0) {
        None => f(base).map(|v| v as i64),
        Some(axis) => {
            let mut lower = order.to_vec();
            lower[axis] -= 1;
            let mut up = base.to_vec();
            up[axis] += 1;
            let hi = difference(f, &lower, &up)?;
            let lo = difference(f, &lower, base)?;
            Some(hi - lo)
        }
    }
}

/// Memoizing wrapper so repeated differences share evaluations.
pub fn memoized<F>(f: F) -> impl FnMut(&[u32]) -> Option<u64>
where
    F: Fn(&[u32]) -> Option<u64>,
{
    let mut seen: HashMap<Vec<u32>, Option<u64>> = HashMap::new();
    move |p: &[u32]| *seen.entry(p.to_vec()).or_insert_with(|| f(p))
}

/// Least `D` such that every difference of total order `D + 1` vanishes at
/// `base` and `base + 1` on every axis.
pub fn degree<F>(f: &mut F, axes: usize, base: u32, cap: u32) -> Option<u32>
where
    F: FnMut(&[u32]) -> Option<u64>,
{
    'outer: for d in 0..=cap {
        for order in exponent_vectors(axes, d + 1) {
            for shift in 0..2 {
                if difference(f, &order, &vec![base + shift; axes])? != 0 {
                    continue 'outer;
                }
            }
        }
        return Some(d);
    }
    None
}

/// A difference of order `order` that agrees at `base` and `base + 1` on every axis.
pub fn stable_difference<F>(f: &mut F, order: &[u32], base: u32) -> Option<i64>
where
    F: FnMut(&[u32]) -> Option<u64>,
{
    let a = difference(f, order, &vec![base; order.len()])?;
    let b = difference(f, order, &vec![base + 1; order.len()])?;
    (a == b).then_some(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maximal(x: usize, t: usize) -> Terms {
        let mut out = Vec::new();
        for s in 0..t {
            for i in 0..x {
                let mut v = vec![0; x];
                v[i] = 1;
                out.push((v, s));
            }
        }
        out
    }

    #[test]
    fn triangular_numbers() {
        let o = Oracle::new(2, 1, &[], &maximal(2, 1), &[]);
        for n in 1..6 {
            assert_eq!(o.buchsbaum_rim(n, 0), Some((n * (n + 1) / 2) as u64));
        }
    }

    #[test]
    fn infinite_counts() {
        let o = Oracle::new(2, 1, &[], &vec![(vec![1, 0], 0)], &[]).with_cap(10);
        assert_eq!(o.buchsbaum_rim(1, 0), None);
        assert_eq!(count_between(&[vec![0, 0]], &[vec![1, 0]], 2, 0, 0, 10), None);
        assert_eq!(count_between(&[vec![0, 0]], &[vec![2, 0], vec![0, 1]], 2, 0, 0, 10), Some(2));
    }

    #[test]
    fn differences_and_degree() {
        let mut f = memoized(|p: &[u32]| Some((p[0] * (p[0] + 1) / 2) as u64));
        assert_eq!(degree(&mut f, 1, 3, 4), Some(2));
        assert_eq!(stable_difference(&mut f, &[2], 3), Some(1));
    }
}

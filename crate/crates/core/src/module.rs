//! Bigraded monomials in `k[x_1..x_d, T_1..T_p]` and monomial modules, either
//! as ideals of the whole ring or as x-submodules of one T-degree slice.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::monomial::{monomials_of_degree, Monomial, MonomialIdeal};

/// Default bound for the finiteness certificate of [`length_between`].
pub const DEFAULT_KMAX: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    /// Number of x-variables.
    pub x_vars: usize,
    /// Number of T-variables (the rank of the free module).
    pub t_vars: usize,
    pub names: Vec<String>,
}

impl RingContext {
    pub fn new(x_vars: usize, t_vars: usize) -> Result<Self> {
        if x_vars == 0 || t_vars == 0 {
            return Err(CoreError::InvalidSetup(
                "need at least one x-variable and one T-variable".into(),
            ));
        }
        if x_vars + t_vars > 24 {
            return Err(CoreError::InvalidSetup("too many variables".into()));
        }
        let mut names: Vec<String> = if x_vars <= 3 {
            ["x", "y", "z"][..x_vars].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=x_vars).map(|i| format!("x{i}")).collect()
        };
        if t_vars == 1 {
            names.push("T".into());
        } else {
            names.extend((1..=t_vars).map(|i| format!("T{i}")));
        }
        Ok(RingContext {
            x_vars,
            t_vars,
            names,
        })
    }

    pub fn nvars(&self) -> usize {
        self.x_vars + self.t_vars
    }

    /// Bitmask of the T-variables inside the flattened exponent vector.
    pub fn t_mask(&self) -> u64 {
        ((1u64 << self.t_vars) - 1) << self.x_vars
    }

    pub fn format(&self, m: &BiMonomial) -> String {
        let mut out = String::new();
        let exps = m.x.exps().iter().chain(m.t.exps().iter());
        for (name, &e) in self.names.iter().zip(exps) {
            match e {
                0 => {}
                1 => out.push_str(name),
                _ => out.push_str(&format!("{name}^{e}")),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// A monomial `x^a T^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiMonomial {
    pub x: Monomial,
    pub t: Monomial,
}

impl fmt::Debug for BiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{:?}", self.x, self.t)
    }
}

impl BiMonomial {
    pub fn new(x: &[u32], t: &[u32]) -> Self {
        BiMonomial {
            x: Monomial::new(x),
            t: Monomial::new(t),
        }
    }

    /// The image `x^a T_j` of the term vector `x^a e_j` (`j` zero-based).
    pub fn term(x: &[u32], j: usize, t_vars: usize) -> Self {
        BiMonomial {
            x: Monomial::new(x),
            t: Monomial::var(j, t_vars),
        }
    }

    pub fn tdegree(&self) -> u32 {
        self.t.degree() as u32
    }

    pub fn flatten(&self) -> Monomial {
        self.x.concat(&self.t)
    }

    pub fn unflatten(m: &Monomial, x_vars: usize) -> Self {
        let (x, t) = m.split_at(x_vars);
        BiMonomial { x, t }
    }

    pub fn mul(&self, other: &BiMonomial) -> BiMonomial {
        BiMonomial {
            x: self.x.mul(&other.x),
            t: self.t.mul(&other.t),
        }
    }

    pub fn divides(&self, other: &BiMonomial) -> bool {
        self.x.divides(&other.x) && self.t.divides(&other.t)
    }
}

/// The x-ideal `{x^a : x^a T^t ∈ B}` of an ideal `B` of `k[x, T]`.
pub fn ideal_part(b: &MonomialIdeal, x_vars: usize, t: &Monomial) -> MonomialIdeal {
    let gens = b
        .gens()
        .iter()
        .filter_map(|g| {
            let (x, gt) = g.split_at(x_vars);
            gt.divides(t).then_some(x)
        })
        .collect();
    MonomialIdeal::new(x_vars, gens)
}

/// An x-submodule of the T-degree `degree` piece of `k[x, T]`, stored as one
/// x-ideal per T-monomial. Zero components are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slice {
    degree: u32,
    x_vars: usize,
    t_vars: usize,
    parts: BTreeMap<Monomial, MonomialIdeal>,
}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.parts.iter()).finish()
    }
}

impl Slice {
    pub fn zero(degree: u32, x_vars: usize, t_vars: usize) -> Self {
        Slice {
            degree,
            x_vars,
            t_vars,
            parts: BTreeMap::new(),
        }
    }

    /// The whole degree piece `G_degree`.
    pub fn full(degree: u32, x_vars: usize, t_vars: usize) -> Self {
        let parts = monomials_of_degree(t_vars, degree)
            .into_iter()
            .map(|t| (t, MonomialIdeal::unit(x_vars)))
            .collect();
        Slice {
            degree,
            x_vars,
            t_vars,
            parts,
        }
    }

    pub fn from_gens(
        degree: u32,
        x_vars: usize,
        t_vars: usize,
        gens: impl IntoIterator<Item = BiMonomial>,
    ) -> Result<Self> {
        let mut raw: BTreeMap<Monomial, Vec<Monomial>> = BTreeMap::new();
        for g in gens {
            if g.tdegree() != degree {
                return Err(CoreError::MixedSliceDegrees(degree, g.tdegree()));
            }
            raw.entry(g.t).or_default().push(g.x);
        }
        let parts = raw
            .into_iter()
            .map(|(t, xs)| (t, MonomialIdeal::new(x_vars, xs)))
            .collect();
        Ok(Slice {
            degree,
            x_vars,
            t_vars,
            parts,
        })
    }

    fn from_parts(
        degree: u32,
        x_vars: usize,
        t_vars: usize,
        parts: BTreeMap<Monomial, MonomialIdeal>,
    ) -> Self {
        let parts = parts.into_iter().filter(|(_, i)| !i.is_zero()).collect();
        Slice {
            degree,
            x_vars,
            t_vars,
            parts,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn x_vars(&self) -> usize {
        self.x_vars
    }

    pub fn t_vars(&self) -> usize {
        self.t_vars
    }

    pub fn parts(&self) -> &BTreeMap<Monomial, MonomialIdeal> {
        &self.parts
    }

    pub fn part(&self, t: &Monomial) -> Option<&MonomialIdeal> {
        self.parts.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn gens(&self) -> Vec<BiMonomial> {
        self.parts
            .iter()
            .flat_map(|(t, i)| {
                i.gens().iter().map(move |x| BiMonomial {
                    x: x.clone(),
                    t: t.clone(),
                })
            })
            .collect()
    }

    pub fn num_gens(&self) -> usize {
        self.parts.values().map(|i| i.gens().len()).sum()
    }

    pub fn contains(&self, m: &BiMonomial) -> bool {
        self.parts.get(&m.t).is_some_and(|i| i.contains(&m.x))
    }

    pub fn is_subset(&self, other: &Slice) -> bool {
        self.parts.iter().all(|(t, i)| {
            other
                .parts
                .get(t)
                .is_some_and(|o| i.is_subset(o))
        })
    }

    pub fn add(&self, other: &Slice) -> Slice {
        debug_assert_eq!(self.degree, other.degree);
        let mut parts = self.parts.clone();
        for (t, i) in &other.parts {
            let merged = match parts.get(t) {
                Some(cur) => cur.sum(i),
                None => i.clone(),
            };
            parts.insert(t.clone(), merged);
        }
        Slice::from_parts(self.degree, self.x_vars, self.t_vars, parts)
    }

    pub fn intersect(&self, other: &Slice) -> Slice {
        debug_assert_eq!(self.degree, other.degree);
        let parts = self
            .parts
            .iter()
            .filter_map(|(t, i)| other.parts.get(t).map(|o| (t.clone(), i.intersect(o))))
            .collect();
        Slice::from_parts(self.degree, self.x_vars, self.t_vars, parts)
    }

    /// `Σ_{a+b=c} U_a V_b` in degree `deg U + deg V`.
    pub fn product(&self, other: &Slice) -> Slice {
        let mut raw: BTreeMap<Monomial, Vec<Monomial>> = BTreeMap::new();
        for (ta, ia) in &self.parts {
            for (tb, ib) in &other.parts {
                let bucket = raw.entry(ta.mul(tb)).or_default();
                for ga in ia.gens() {
                    for gb in ib.gens() {
                        bucket.push(ga.mul(gb));
                    }
                }
            }
        }
        let parts = raw
            .into_iter()
            .map(|(t, xs)| (t, MonomialIdeal::new(self.x_vars, xs)))
            .collect();
        Slice::from_parts(self.degree + other.degree, self.x_vars, self.t_vars, parts)
    }

    /// Product with a single monomial.
    pub fn mul_monomial(&self, m: &BiMonomial) -> Slice {
        let parts = self
            .parts
            .iter()
            .map(|(t, i)| {
                let gens = i.gens().iter().map(|g| g.mul(&m.x)).collect();
                (t.mul(&m.t), MonomialIdeal::from_minimal(self.x_vars, gens))
            })
            .collect();
        Slice::from_parts(self.degree + m.tdegree(), self.x_vars, self.t_vars, parts)
    }

    /// `{g ∈ G_{k - deg m} : g·m ∈ U}`.
    pub fn colon(&self, m: &BiMonomial) -> Result<Slice> {
        let tdeg = m.tdegree();
        if tdeg > self.degree {
            return Err(CoreError::SliceDegree {
                expected: self.degree,
                found: tdeg,
            });
        }
        let parts = self
            .parts
            .iter()
            .filter_map(|(t, i)| t.checked_div(&m.t).map(|rest| (rest, i.colon(&m.x))))
            .collect();
        Ok(Slice::from_parts(
            self.degree - tdeg,
            self.x_vars,
            self.t_vars,
            parts,
        ))
    }

    /// Drops generators that lie in the ideal `b` of `k[x, T]`. The result
    /// generates the same module modulo `b`.
    pub fn strip(&self, b: &MonomialIdeal) -> Slice {
        if b.is_zero() {
            return self.clone();
        }
        let parts = self
            .parts
            .iter()
            .map(|(t, i)| {
                let bp = ideal_part(b, self.x_vars, t);
                let kept = i.gens().iter().filter(|g| !bp.contains(g)).cloned().collect();
                (t.clone(), MonomialIdeal::from_minimal(self.x_vars, kept))
            })
            .collect();
        Slice::from_parts(self.degree, self.x_vars, self.t_vars, parts)
    }

    /// `U + B_k`: the slice together with the degree-k part of `b`, restricted
    /// to the T-monomials in `keys`.
    pub fn with_ideal<'a>(
        &self,
        b: &MonomialIdeal,
        keys: impl IntoIterator<Item = &'a Monomial>,
    ) -> Slice {
        let mut parts = self.parts.clone();
        for t in keys {
            let bp = ideal_part(b, self.x_vars, t);
            if bp.is_zero() {
                continue;
            }
            let merged = match parts.get(t) {
                Some(cur) => cur.sum(&bp),
                None => bp,
            };
            parts.insert(t.clone(), merged);
        }
        Slice::from_parts(self.degree, self.x_vars, self.t_vars, parts)
    }

    /// Whether `U + B` and `V + B` agree.
    pub fn equal_modulo(&self, other: &Slice, b: &MonomialIdeal) -> bool {
        self.first_difference_modulo(other, b).is_none()
    }

    /// First T-monomial on which `U + B` and `V + B` differ, with both sides.
    pub fn first_difference_modulo(
        &self,
        other: &Slice,
        b: &MonomialIdeal,
    ) -> Option<(Monomial, MonomialIdeal, MonomialIdeal)> {
        let keys: std::collections::BTreeSet<&Monomial> =
            self.parts.keys().chain(other.parts.keys()).collect();
        for t in keys {
            let bp = ideal_part(b, self.x_vars, t);
            let zero = MonomialIdeal::zero(self.x_vars);
            let lhs = self.parts.get(t).unwrap_or(&zero).sum(&bp);
            let rhs = other.parts.get(t).unwrap_or(&zero).sum(&bp);
            if lhs != rhs {
                return Some((t.clone(), lhs, rhs));
            }
        }
        None
    }

    /// The ideal of `k[x, T]` generated by the slice.
    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.x_vars + self.t_vars,
            self.gens().iter().map(BiMonomial::flatten).collect(),
        )
    }

    /// Number of monomials of the slice outside `den + b`; `None` when infinite.
    pub fn count_outside(&self, den: &Slice, b: &MonomialIdeal) -> Option<u64> {
        self.count_outside_with_top(den, b).map(|(c, _)| c)
    }

    /// As [`count_outside`](Self::count_outside), also returning the largest
    /// x-degree of a counted monomial.
    pub fn count_outside_with_top(
        &self,
        den: &Slice,
        b: &MonomialIdeal,
    ) -> Option<(u64, Option<u64>)> {
        let mut total = 0u64;
        let mut top: Option<u64> = None;
        for (t, num) in &self.parts {
            let mut wall = ideal_part(b, self.x_vars, t);
            if let Some(d) = den.parts.get(t) {
                wall = wall.sum(d);
            }
            let (c, tp) = num.count_outside_with_top(&wall)?;
            total += c;
            top = top.max(tp);
        }
        Some((total, top))
    }
}

/// How a [`MonomialModule`] is closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Closed under multiplication by every variable.
    Ideal,
    /// Closed under x-multiplication inside the T-degree `k` piece.
    Slice(u32),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
enum Body {
    Ideal(MonomialIdeal),
    Slice(Slice),
}

/// A monomial module with a minimal generating set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialModule {
    ctx: RingContext,
    body: Body,
}

impl fmt::Debug for MonomialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens().iter().map(|g| self.ctx.format(g)).collect();
        write!(f, "{:?}({})", self.mode(), gens.join(", "))
    }
}

impl MonomialModule {
    /// The module generated by `gens`, reduced to its minimal generators.
    pub fn minimalize(ctx: &RingContext, gens: Vec<BiMonomial>, mode: Mode) -> Result<Self> {
        for g in &gens {
            if g.x.nvars() != ctx.x_vars || g.t.nvars() != ctx.t_vars {
                return Err(CoreError::RingMismatch);
            }
        }
        let body = match mode {
            Mode::Ideal => Body::Ideal(MonomialIdeal::new(
                ctx.nvars(),
                gens.iter().map(BiMonomial::flatten).collect(),
            )),
            Mode::Slice(k) => Body::Slice(Slice::from_gens(k, ctx.x_vars, ctx.t_vars, gens)?),
        };
        Ok(MonomialModule {
            ctx: ctx.clone(),
            body,
        })
    }

    pub fn from_ideal(ctx: &RingContext, ideal: MonomialIdeal) -> Self {
        assert_eq!(ideal.nvars(), ctx.nvars());
        MonomialModule {
            ctx: ctx.clone(),
            body: Body::Ideal(ideal),
        }
    }

    pub fn from_slice(ctx: &RingContext, slice: Slice) -> Self {
        MonomialModule {
            ctx: ctx.clone(),
            body: Body::Slice(slice),
        }
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn mode(&self) -> Mode {
        match &self.body {
            Body::Ideal(_) => Mode::Ideal,
            Body::Slice(s) => Mode::Slice(s.degree()),
        }
    }

    pub fn as_ideal(&self) -> Option<&MonomialIdeal> {
        match &self.body {
            Body::Ideal(i) => Some(i),
            Body::Slice(_) => None,
        }
    }

    pub fn as_slice(&self) -> Option<&Slice> {
        match &self.body {
            Body::Slice(s) => Some(s),
            Body::Ideal(_) => None,
        }
    }

    /// Minimal generators in a canonical order.
    pub fn gens(&self) -> Vec<BiMonomial> {
        match &self.body {
            Body::Ideal(i) => i
                .gens()
                .iter()
                .map(|g| BiMonomial::unflatten(g, self.ctx.x_vars))
                .collect(),
            Body::Slice(s) => s.gens(),
        }
    }

    fn same_ring(&self, other: &MonomialModule) -> Result<()> {
        if self.ctx.x_vars != other.ctx.x_vars || self.ctx.t_vars != other.ctx.t_vars {
            return Err(CoreError::RingMismatch);
        }
        Ok(())
    }

    fn rewrap(&self, body: Body) -> MonomialModule {
        MonomialModule {
            ctx: self.ctx.clone(),
            body,
        }
    }

    pub fn contains(&self, m: &BiMonomial) -> Result<bool> {
        match &self.body {
            Body::Ideal(i) => Ok(i.contains(&m.flatten())),
            Body::Slice(s) => {
                if m.tdegree() != s.degree() {
                    return Err(CoreError::SliceDegree {
                        expected: s.degree(),
                        found: m.tdegree(),
                    });
                }
                Ok(s.contains(m))
            }
        }
    }

    pub fn sum(&self, other: &MonomialModule) -> Result<MonomialModule> {
        self.same_ring(other)?;
        match (&self.body, &other.body) {
            (Body::Ideal(a), Body::Ideal(b)) => Ok(self.rewrap(Body::Ideal(a.sum(b)))),
            (Body::Slice(a), Body::Slice(b)) if a.degree() == b.degree() => {
                Ok(self.rewrap(Body::Slice(a.add(b))))
            }
            _ => Err(CoreError::ModeMismatch(format!(
                "sum of {:?} and {:?}",
                self.mode(),
                other.mode()
            ))),
        }
    }

    pub fn product(&self, other: &MonomialModule) -> Result<MonomialModule> {
        self.same_ring(other)?;
        match (&self.body, &other.body) {
            (Body::Ideal(a), Body::Ideal(b)) => Ok(self.rewrap(Body::Ideal(a.product(b)))),
            (Body::Slice(a), Body::Slice(b)) => Ok(self.rewrap(Body::Slice(a.product(b)))),
            _ => Err(CoreError::ModeMismatch(format!(
                "product of {:?} and {:?}",
                self.mode(),
                other.mode()
            ))),
        }
    }

    pub fn intersect(&self, other: &MonomialModule) -> Result<MonomialModule> {
        self.same_ring(other)?;
        match (&self.body, &other.body) {
            (Body::Ideal(a), Body::Ideal(b)) => Ok(self.rewrap(Body::Ideal(a.intersect(b)))),
            (Body::Slice(a), Body::Slice(b)) if a.degree() == b.degree() => {
                Ok(self.rewrap(Body::Slice(a.intersect(b))))
            }
            _ => Err(CoreError::ModeMismatch(format!(
                "intersection of {:?} and {:?}",
                self.mode(),
                other.mode()
            ))),
        }
    }

    /// `(U : m)`. In slice mode the result lives in degree `k - deg_T(m)`.
    pub fn colon(&self, m: &BiMonomial) -> Result<MonomialModule> {
        match &self.body {
            Body::Ideal(i) => Ok(self.rewrap(Body::Ideal(i.colon(&m.flatten())))),
            Body::Slice(s) => Ok(self.rewrap(Body::Slice(s.colon(m)?))),
        }
    }

    /// `(U : W^∞)` for an ideal `U` and an ideal `W`.
    pub fn saturate(&self, w: &MonomialModule) -> Result<MonomialModule> {
        self.same_ring(w)?;
        match (&self.body, &w.body) {
            (Body::Ideal(u), Body::Ideal(w)) => Ok(self.rewrap(Body::Ideal(u.saturate(w)))),
            _ => Err(CoreError::ModeMismatch(
                "saturation needs two ideals".into(),
            )),
        }
    }

    /// Krull dimension of `k[x, T] / B`; `-1` for the unit ideal.
    pub fn krull_dim(&self) -> Result<i64> {
        match &self.body {
            Body::Ideal(i) => Ok(i.krull_dim()),
            Body::Slice(_) => Err(CoreError::ModeMismatch(
                "dimension is defined for ideals".into(),
            )),
        }
    }
}

/// Length of a finite or infinite quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// Least `K` such that every monomial of `num` of degree at least
/// `deg(g) + K` over its generator `g` lies in `den`, taken over all
/// generators. `None` when no such `K` exists.
fn finiteness_certificate(num: &MonomialIdeal, den: &MonomialIdeal) -> Option<u32> {
    use crate::monomial::TopDegree;
    let mut worst = 0u32;
    for g in num.gens() {
        match den.colon(g).top_standard_degree() {
            TopDegree::Empty => {}
            TopDegree::Finite(t) => worst = worst.max(t as u32 + 1),
            TopDegree::Infinite => return None,
        }
    }
    Some(worst)
}

/// `ℓ(U / V)` for monomial modules `V ⊆ U` of the same mode, counted exactly.
///
/// Finiteness is certified by the least `K` with `𝔪^K U ⊆ V`; when that `K`
/// exceeds `kmax` the call fails rather than guessing.
pub fn length_between(v: &MonomialModule, u: &MonomialModule, kmax: u32) -> Result<Length> {
    u.same_ring(v)?;
    let pairs: Vec<(MonomialIdeal, MonomialIdeal)> = match (&u.body, &v.body) {
        (Body::Slice(us), Body::Slice(vs)) if us.degree() == vs.degree() => {
            if !vs.is_subset(us) {
                return Err(CoreError::NotContained);
            }
            let zero = MonomialIdeal::zero(u.ctx.x_vars);
            us.parts()
                .iter()
                .map(|(t, ui)| (ui.clone(), vs.part(t).unwrap_or(&zero).clone()))
                .collect()
        }
        (Body::Ideal(ui), Body::Ideal(vi)) => {
            if !vi.is_subset(ui) {
                return Err(CoreError::NotContained);
            }
            // Every variable acts, so x-finiteness alone is not enough: the
            // certificate below runs over all variables.
            vec![(ui.clone(), vi.clone())]
        }
        _ => {
            return Err(CoreError::ModeMismatch(format!(
                "length between {:?} and {:?}",
                v.mode(),
                u.mode()
            )))
        }
    };
    let mut total = 0u64;
    for (num, den) in pairs {
        match finiteness_certificate(&num, &den) {
            None => return Ok(Length::Infinite),
            Some(k) if k > kmax => return Err(CoreError::KMaxExceeded(kmax)),
            Some(_) => {}
        }
        total += num
            .count_outside(&den)
            .expect("certified finite quotient counted as infinite");
    }
    Ok(Length::Finite(total))
}

//! Graded pieces of `M = G / B` and the exact length functions built on them.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::module::{BiMonomial, RingContext, Slice, DEFAULT_KMAX};
use crate::monomial::{Monomial, MonomialIdeal};

/// One of the degree-one submodules a sequence element or a power product can draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Source {
    /// The whole degree-one piece `G_1`.
    G1,
    /// The finite-colength module `J`.
    J,
    /// The module `I_i` (zero-based).
    I(usize),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::G1 => write!(f, "G1"),
            Source::J => write!(f, "J"),
            Source::I(i) => write!(f, "I{}", i + 1),
        }
    }
}

/// Degree-`n` piece of the Rees algebra generated by the term vectors `terms`.
pub fn rees_piece(ctx: &RingContext, terms: &[BiMonomial], n: u32) -> Result<Slice> {
    let one = Slice::from_gens(1, ctx.x_vars, ctx.t_vars, terms.iter().cloned())?;
    let mut acc = Slice::full(0, ctx.x_vars, ctx.t_vars);
    for _ in 0..n {
        acc = acc.product(&one);
    }
    Ok(acc)
}

/// The default finite-colength module `𝔪 R^p`, as term vectors.
pub fn maximal_terms(ctx: &RingContext) -> Vec<BiMonomial> {
    let mut out = Vec::new();
    for slot in 0..ctx.t_vars {
        for i in 0..ctx.x_vars {
            out.push(BiMonomial {
                x: Monomial::var(i, ctx.x_vars),
                t: Monomial::var(slot, ctx.t_vars),
            });
        }
    }
    out
}

/// The data `(d, p, A, F, E_1..E_q)` with the derived ideal `B` of `G`.
///
/// Quotient and saturated setups keep the same `J` and `I_i` but enlarge `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Setup {
    ctx: RingContext,
    a: MonomialIdeal,
    f: Vec<BiMonomial>,
    e: Vec<Vec<BiMonomial>>,
    b: MonomialIdeal,
    /// Elements divided out so far, in order.
    sequence: Vec<BiMonomial>,
    saturated: bool,
    g1: Slice,
    j: Slice,
    i: Vec<Slice>,
    product_ideal: MonomialIdeal,
}

fn check_terms(ctx: &RingContext, terms: &[BiMonomial], what: &str) -> Result<()> {
    for t in terms {
        if t.x.nvars() != ctx.x_vars || t.t.nvars() != ctx.t_vars {
            return Err(CoreError::InvalidSetup(format!("{what}: wrong arity")));
        }
        if t.tdegree() != 1 {
            return Err(CoreError::InvalidSetup(format!(
                "{what}: {} is not a term vector",
                ctx.format(t)
            )));
        }
    }
    Ok(())
}

impl Setup {
    pub fn new(
        ctx: RingContext,
        a: MonomialIdeal,
        f: Vec<BiMonomial>,
        e: Vec<Vec<BiMonomial>>,
    ) -> Result<Self> {
        if a.nvars() != ctx.x_vars {
            return Err(CoreError::InvalidSetup("A must be an ideal in the x-variables".into()));
        }
        check_terms(&ctx, &f, "F")?;
        for (idx, terms) in e.iter().enumerate() {
            check_terms(&ctx, terms, &format!("E{}", idx + 1))?;
        }
        let b = MonomialIdeal::new(
            ctx.nvars(),
            a.gens()
                .iter()
                .map(|g| g.concat(&Monomial::one(ctx.t_vars)))
                .collect(),
        );
        let g1 = Slice::full(1, ctx.x_vars, ctx.t_vars);
        let j = Slice::from_gens(1, ctx.x_vars, ctx.t_vars, f.iter().cloned())?;
        let i: Vec<Slice> = e
            .iter()
            .map(|terms| Slice::from_gens(1, ctx.x_vars, ctx.t_vars, terms.iter().cloned()))
            .collect::<Result<_>>()?;
        let mut product_ideal = MonomialIdeal::unit(ctx.nvars());
        for s in &i {
            product_ideal = product_ideal.product(&s.to_ideal());
        }
        let setup = Setup {
            ctx,
            a,
            f,
            e,
            b,
            sequence: Vec::new(),
            saturated: false,
            g1,
            j,
            i,
            product_ideal,
        };
        if setup.g1.count_outside(&setup.j, &setup.b).is_none() {
            return Err(CoreError::ColengthError(
                "J does not have finite colength in G_1".into(),
            ));
        }
        Ok(setup)
    }

    /// Setup with no `I_i`, used for Buchsbaum-Rim functions of `F`.
    pub fn pair(ctx: RingContext, a: MonomialIdeal, f: Vec<BiMonomial>) -> Result<Self> {
        Setup::new(ctx, a, f, Vec::new())
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn a(&self) -> &MonomialIdeal {
        &self.a
    }

    pub fn f_terms(&self) -> &[BiMonomial] {
        &self.f
    }

    pub fn e_terms(&self) -> &[Vec<BiMonomial>] {
        &self.e
    }

    /// The ideal `B` with `M = G / B`.
    pub fn b(&self) -> &MonomialIdeal {
        &self.b
    }

    pub fn sequence(&self) -> &[BiMonomial] {
        &self.sequence
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn q(&self) -> usize {
        self.i.len()
    }

    /// The ideal of `G` generated by `I_1 ⋯ I_q` (the unit ideal when `q = 0`).
    pub fn product_ideal(&self) -> &MonomialIdeal {
        &self.product_ideal
    }

    pub fn member(&self, source: Source) -> &Slice {
        match source {
            Source::G1 => &self.g1,
            Source::J => &self.j,
            Source::I(i) => &self.i[i],
        }
    }

    /// Position of a source in power-product exponent vectors `[G1, J, I_1..I_q]`.
    pub fn member_index(&self, source: Source) -> usize {
        match source {
            Source::G1 => 0,
            Source::J => 1,
            Source::I(i) => 2 + i,
        }
    }

    pub fn num_members(&self) -> usize {
        2 + self.i.len()
    }

    pub fn valid_source(&self, source: Source) -> bool {
        !matches!(source, Source::I(i) if i >= self.i.len())
    }

    /// `(B : 𝓘^∞)`.
    pub fn saturated_b(&self) -> MonomialIdeal {
        self.b.saturate(&self.product_ideal)
    }

    /// A setup with `B` replaced by `b`; the sequence history is kept.
    pub fn with_b(&self, b: MonomialIdeal) -> Setup {
        assert_eq!(b.nvars(), self.ctx.nvars());
        let mut out = self.clone();
        out.b = b;
        out
    }

    /// `M / (elems) M`.
    pub fn quotient(&self, elems: &[BiMonomial]) -> Setup {
        let extra = MonomialIdeal::new(
            self.ctx.nvars(),
            elems.iter().map(BiMonomial::flatten).collect(),
        );
        let mut out = self.with_b(self.b.sum(&extra));
        out.sequence.extend(elems.iter().cloned());
        out
    }

    /// `M* = M / (0 :_M 𝓘^∞)`.
    pub fn saturated(&self) -> Setup {
        let mut out = self.with_b(self.saturated_b());
        out.saturated = true;
        out
    }

    /// The same `M` and `J` with all `I_i` dropped.
    pub fn without_i(&self) -> Setup {
        let mut out = self.clone();
        out.e.clear();
        out.i.clear();
        out.product_ideal = MonomialIdeal::unit(self.ctx.nvars());
        out
    }

    /// The same `M` with `J` replaced by the module generated by `terms`.
    pub fn with_j(&self, terms: Vec<BiMonomial>) -> Result<Setup> {
        check_terms(&self.ctx, &terms, "J")?;
        let mut out = self.clone();
        out.j = Slice::from_gens(1, self.ctx.x_vars, self.ctx.t_vars, terms.iter().cloned())?;
        out.f = terms;
        if out.g1.count_outside(&out.j, &out.b).is_none() {
            return Err(CoreError::ColengthError(
                "module does not have finite colength in G_1 over M".into(),
            ));
        }
        Ok(out)
    }

    /// A stable textual identity of the setup, used to key persistent caches.
    pub fn fingerprint(&self) -> String {
        let fmt_list = |terms: &[BiMonomial]| {
            terms
                .iter()
                .map(|t| format!("{:?}{:?}", t.x.exps(), t.t.exps()))
                .collect::<Vec<_>>()
                .join(";")
        };
        let b: Vec<String> = self.b.gens().iter().map(|g| format!("{:?}", g.exps())).collect();
        let e: Vec<String> = self.e.iter().map(|t| fmt_list(t)).collect();
        format!(
            "d={}|p={}|B={}|F={}|E={}",
            self.ctx.x_vars,
            self.ctx.t_vars,
            b.join(";"),
            fmt_list(&self.j.gens()),
            e.join("/")
        )
    }
}

/// Which length function a grid point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionKind {
    /// `h(n, p, r) = ℓ(I^r M_{n+p} / J^n I^r M_p)`, axes `(n, p, r_1..r_q)`.
    Mixed,
    /// `h(n, q) = ℓ(M_{n+q} / J^n M_q)`, axes `(n, q)`.
    BuchsbaumRim,
    /// `ℓ(M_{|r|+p} / I^r M_p)`, axes `(p, r_1..r_q)`.
    KirbyRees,
}

impl FunctionKind {
    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Mixed => "mixed",
            FunctionKind::BuchsbaumRim => "br",
            FunctionKind::KirbyRees => "kr",
        }
    }

    pub fn axes(self, q: usize) -> Vec<String> {
        let rs = (1..=q).map(|i| format!("r{i}"));
        match self {
            FunctionKind::Mixed => ["n", "p"].iter().map(|s| s.to_string()).chain(rs).collect(),
            FunctionKind::BuchsbaumRim => vec!["n".into(), "q".into()],
            FunctionKind::KirbyRees => std::iter::once("p".to_string()).chain(rs).collect(),
        }
    }

    pub fn arity(self, q: usize) -> usize {
        match self {
            FunctionKind::Mixed => 2 + q,
            FunctionKind::BuchsbaumRim => 2,
            FunctionKind::KirbyRees => 1 + q,
        }
    }
}

/// Persistent storage for evaluated cells, consulted before computing.
pub trait CellStore: Send + Sync {
    fn get(&self, fingerprint: &str, kind: FunctionKind, coords: &[u64]) -> Option<u64>;
    fn put(&self, fingerprint: &str, kind: FunctionKind, coords: &[u64], value: u64);
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub memory_hits: u64,
    pub store_hits: u64,
    pub computed: u64,
}

/// A cell value together with where it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    Cached,
}

/// Evaluates length functions of one setup, memoizing power products and cells.
pub struct Engine {
    setup: Arc<Setup>,
    fingerprint: String,
    kmax: u32,
    parallel: bool,
    powers: DashMap<Vec<u32>, Arc<Slice>>,
    cells: DashMap<(FunctionKind, Vec<u64>), u64>,
    store: Option<Arc<dyn CellStore>>,
    store_hits: DashMap<(FunctionKind, Vec<u64>), u64>,
    memory_hits: AtomicU64,
    computed: AtomicU64,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("setup", &self.fingerprint)
            .field("kmax", &self.kmax)
            .finish()
    }
}

fn to_u32(v: u64) -> u32 {
    u32::try_from(v).expect("grid coordinate out of range")
}

impl Engine {
    pub fn new(setup: Setup) -> Self {
        let fingerprint = setup.fingerprint();
        Engine {
            setup: Arc::new(setup),
            fingerprint,
            kmax: DEFAULT_KMAX,
            parallel: true,
            powers: DashMap::new(),
            cells: DashMap::new(),
            store: None,
            store_hits: DashMap::new(),
            memory_hits: AtomicU64::new(0),
            computed: AtomicU64::new(0),
        }
    }

    pub fn with_kmax(mut self, kmax: u32) -> Self {
        self.kmax = kmax;
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn with_store(mut self, store: Arc<dyn CellStore>) -> Self {
        self.store = Some(store);
        self
    }

    /// A fresh engine on another setup with the same options and store.
    pub fn derive(&self, setup: Setup) -> Engine {
        let mut e = Engine::new(setup).with_kmax(self.kmax).with_parallel(self.parallel);
        e.store = self.store.clone();
        e
    }

    pub fn setup(&self) -> &Setup {
        &self.setup
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn is_parallel(&self) -> bool {
        self.parallel
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            memory_hits: self.memory_hits.load(Ordering::Relaxed),
            store_hits: self.store_hits.len() as u64,
            computed: self.computed.load(Ordering::Relaxed),
        }
    }

    /// Cells served by the persistent store, sorted.
    pub fn store_hits(&self) -> Vec<(FunctionKind, Vec<u64>, u64)> {
        let mut out: Vec<_> = self
            .store_hits
            .iter()
            .map(|e| (e.key().0, e.key().1.clone(), *e.value()))
            .collect();
        out.sort_by(|a, b| (a.0.name(), &a.1).cmp(&(b.0.name(), &b.1)));
        out
    }

    /// `G_1^{e_0} J^{e_1} I_1^{e_2} ⋯`, with generators lying in `B` removed.
    pub fn power_product(&self, exps: &[u32]) -> Arc<Slice> {
        assert_eq!(exps.len(), self.setup.num_members());
        if let Some(hit) = self.powers.get(exps) {
            return hit.clone();
        }
        let ctx = &self.setup.ctx;
        let value = match exps.iter().position(|&e| e > 0) {
            None => Arc::new(Slice::full(0, ctx.x_vars, ctx.t_vars)),
            Some(pos) => {
                let mut lower = exps.to_vec();
                lower[pos] -= 1;
                let prev = self.power_product(&lower);
                let member = match pos {
                    0 => &self.setup.g1,
                    1 => &self.setup.j,
                    i => &self.setup.i[i - 2],
                };
                Arc::new(prev.product(member).strip(&self.setup.b))
            }
        };
        self.powers.insert(exps.to_vec(), value.clone());
        value
    }

    /// Power product over a family of sources with one exponent per family member,
    /// times `G_extra`.
    pub fn family_product(&self, family: &[Source], exps: &[u32], extra: u32) -> Arc<Slice> {
        let mut full = vec![0u32; self.setup.num_members()];
        for (s, &e) in family.iter().zip(exps) {
            full[self.setup.member_index(*s)] += e;
        }
        full[0] += extra;
        self.power_product(&full)
    }

    /// Numerator and denominator slices of a length function at a grid point.
    pub fn quotient_pair(&self, kind: FunctionKind, coords: &[u64]) -> (Arc<Slice>, Arc<Slice>) {
        let q = self.setup.q();
        let mut num = vec![0u32; self.setup.num_members()];
        let mut den = vec![0u32; self.setup.num_members()];
        match kind {
            FunctionKind::Mixed => {
                let (n, p) = (to_u32(coords[0]), to_u32(coords[1]));
                num[0] = n + p;
                den[0] = p;
                den[1] = n;
                for i in 0..q {
                    num[2 + i] = to_u32(coords[2 + i]);
                    den[2 + i] = to_u32(coords[2 + i]);
                }
            }
            FunctionKind::BuchsbaumRim => {
                let (n, qq) = (to_u32(coords[0]), to_u32(coords[1]));
                num[0] = n + qq;
                den[0] = qq;
                den[1] = n;
            }
            FunctionKind::KirbyRees => {
                let p = to_u32(coords[0]);
                let total: u32 = coords[1..].iter().map(|&r| to_u32(r)).sum();
                num[0] = total + p;
                den[0] = p;
                for i in 0..q {
                    den[2 + i] = to_u32(coords[1 + i]);
                }
            }
        }
        (self.power_product(&num), self.power_product(&den))
    }

    fn compute(&self, kind: FunctionKind, coords: &[u64]) -> Result<u64> {
        let (num, den) = self.quotient_pair(kind, coords);
        debug_assert!(den.is_subset(&num.with_ideal(self.setup.b(), den.parts().keys())));
        let wrap = |source: CoreError| CoreError::Cell {
            coords: coords.to_vec(),
            source: Box::new(source),
        };
        let (count, top) = num
            .count_outside_with_top(&den, &self.setup.b)
            .ok_or_else(|| wrap(CoreError::InfiniteLength(format!("{} cell", kind.name()))))?;
        if let Some(top) = top {
            let low = num
                .gens()
                .iter()
                .map(|g| g.x.degree())
                .min()
                .unwrap_or(0);
            if top + 1 - low.min(top + 1) > self.kmax as u64 {
                return Err(wrap(CoreError::KMaxExceeded(self.kmax)));
            }
        }
        Ok(count)
    }

    /// Exact value of a length function, served from cache when possible.
    pub fn value(&self, kind: FunctionKind, coords: &[u64]) -> Result<u64> {
        self.value_with_provenance(kind, coords).map(|(v, _)| v)
    }

    pub fn value_with_provenance(
        &self,
        kind: FunctionKind,
        coords: &[u64],
    ) -> Result<(u64, Provenance)> {
        if coords.len() != kind.arity(self.setup.q()) {
            return Err(CoreError::GridTooSmall(format!(
                "{} expects {} coordinates, got {}",
                kind.name(),
                kind.arity(self.setup.q()),
                coords.len()
            )));
        }
        let key = (kind, coords.to_vec());
        if let Some(v) = self.cells.get(&key) {
            self.memory_hits.fetch_add(1, Ordering::Relaxed);
            return Ok((*v, Provenance::Cached));
        }
        if let Some(store) = &self.store {
            if let Some(v) = store.get(&self.fingerprint, kind, coords) {
                self.store_hits.insert(key.clone(), v);
                self.cells.insert(key, v);
                return Ok((v, Provenance::Cached));
            }
        }
        let v = self.compute(kind, coords)?;
        self.computed.fetch_add(1, Ordering::Relaxed);
        self.cells.insert(key, v);
        if let Some(store) = &self.store {
            store.put(&self.fingerprint, kind, coords, v);
        }
        Ok((v, Provenance::Computed))
    }

    /// Recomputes a cell ignoring every cache.
    pub fn recompute(&self, kind: FunctionKind, coords: &[u64]) -> Result<u64> {
        self.compute(kind, coords)
    }

    /// Evaluates many points, in parallel when enabled; results keep input order.
    pub fn values(&self, kind: FunctionKind, points: &[Vec<u64>]) -> Result<Vec<u64>> {
        if self.parallel {
            points.par_iter().map(|p| self.value(kind, p)).collect()
        } else {
            points.iter().map(|p| self.value(kind, p)).collect()
        }
    }

    pub fn h_value(&self, n: u64, p: u64, r: &[u64]) -> Result<u64> {
        let mut coords = vec![n, p];
        coords.extend_from_slice(r);
        self.value(FunctionKind::Mixed, &coords)
    }

    pub fn br_value(&self, n: u64, q: u64) -> Result<u64> {
        self.value(FunctionKind::BuchsbaumRim, &[n, q])
    }

    pub fn kr_value(&self, p: u64, r: &[u64]) -> Result<u64> {
        let mut coords = vec![p];
        coords.extend_from_slice(r);
        self.value(FunctionKind::KirbyRees, &coords)
    }
}

/// Exact values of a length function over a rectangular grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthTable {
    pub kind: FunctionKind,
    pub axes: Vec<String>,
    /// Inclusive `(low, high)` bounds per axis.
    pub bounds: Vec<(u64, u64)>,
    pub cells: Vec<TableCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub coords: Vec<u64>,
    pub value: u64,
    #[serde(skip)]
    pub provenance: Option<Provenance>,
}

/// All points of the box with inclusive bounds, in lexicographic order.
pub fn grid_points(bounds: &[(u64, u64)]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Vec::new();
    }
    out
}

pub fn fill_table(engine: &Engine, kind: FunctionKind, bounds: &[(u64, u64)]) -> Result<LengthTable> {
    let q = engine.setup().q();
    if bounds.len() != kind.arity(q) {
        return Err(CoreError::GridTooSmall(format!(
            "{} grid needs {} axes",
            kind.name(),
            kind.arity(q)
        )));
    }
    let points = grid_points(bounds);
    let eval = |p: &Vec<u64>| {
        engine
            .value_with_provenance(kind, p)
            .map(|(value, prov)| TableCell {
                coords: p.clone(),
                value,
                provenance: Some(prov),
            })
    };
    let cells: Result<Vec<TableCell>> = if engine.is_parallel() {
        points.par_iter().map(eval).collect()
    } else {
        points.iter().map(eval).collect()
    };
    Ok(LengthTable {
        kind,
        axes: kind.axes(q),
        bounds: bounds.to_vec(),
        cells: cells?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: usize, p: usize) -> RingContext {
        RingContext::new(d, p).unwrap()
    }

    fn term(x: &[u32], slot: usize, p: usize) -> BiMonomial {
        BiMonomial::term(x, slot, p)
    }

    fn maximal_setup(i_terms: Vec<BiMonomial>) -> Setup {
        let c = ctx(2, 1);
        let f = maximal_terms(&c);
        Setup::new(c, MonomialIdeal::zero(2), f, vec![i_terms]).unwrap()
    }

    #[test]
    fn rees_pieces() {
        let c = ctx(2, 2);
        let e = vec![term(&[1, 0], 0, 2), term(&[0, 1], 1, 2)];
        let s = rees_piece(&c, &e, 2).unwrap();
        assert_eq!(s.num_gens(), 3);
        let unit = rees_piece(&c, &e, 0).unwrap();
        assert_eq!(unit, Slice::full(0, 2, 2));
        let c = ctx(2, 1);
        let s = rees_piece(&c, &[term(&[2, 0], 0, 1), term(&[0, 3], 0, 1)], 2).unwrap();
        assert_eq!(
            s.gens(),
            vec![
                BiMonomial::new(&[0, 6], &[2]),
                BiMonomial::new(&[2, 3], &[2]),
                BiMonomial::new(&[4, 0], &[2]),
            ]
        );
    }

    #[test]
    fn staircase_values() {
        let c = ctx(2, 1);
        let setup = maximal_setup(maximal_terms(&c));
        let engine = Engine::new(setup);
        for n in 0..8u64 {
            for p in 0..3 {
                assert_eq!(engine.h_value(n, p, &[0]).unwrap(), n * (n + 1) / 2);
            }
            assert_eq!(engine.h_value(0, n, &[n]).unwrap(), 0);
        }
        let bh = Engine::new(maximal_setup(vec![term(&[2, 0], 0, 1), term(&[0, 3], 0, 1)]));
        assert_eq!(bh.h_value(1, 0, &[1]).unwrap(), 2);
        assert_eq!(bh.h_value(1, 3, &[1]).unwrap(), 2);
    }

    #[test]
    fn buchsbaum_rim_closed_forms() {
        let c = ctx(2, 2);
        let setup = Setup::pair(c.clone(), MonomialIdeal::zero(2), maximal_terms(&c)).unwrap();
        let engine = Engine::new(setup);
        for n in 0..5u64 {
            for q in 0..4u64 {
                assert_eq!(engine.br_value(n, q).unwrap(), (n + q + 1) * n * (n + 1) / 2);
            }
        }
        let free = vec![term(&[0, 0], 0, 2), term(&[0, 0], 1, 2)];
        let engine = Engine::new(Setup::pair(c, MonomialIdeal::zero(2), free).unwrap());
        assert_eq!(engine.br_value(3, 2).unwrap(), 0);
    }

    #[test]
    fn non_finite_colength_rejected() {
        let c = ctx(2, 1);
        let r = Setup::pair(c, MonomialIdeal::zero(2), vec![term(&[1, 0], 0, 1)]);
        assert!(matches!(r, Err(CoreError::ColengthError(_))));
    }

    #[test]
    fn reduction_modulo_a() {
        let c = ctx(2, 1);
        let a = MonomialIdeal::new(2, vec![Monomial::new(&[1, 0])]);
        let setup = Setup::new(c.clone(), a, maximal_terms(&c), vec![maximal_terms(&c)]).unwrap();
        let engine = Engine::new(setup);
        let (num, _) = engine.quotient_pair(FunctionKind::Mixed, &[0, 0, 1]);
        assert_eq!(num.gens(), vec![BiMonomial::new(&[0, 1], &[1])]);
        // R/(x) = k[y]: h(n, p, 0) = n.
        assert_eq!(engine.h_value(4, 1, &[0]).unwrap(), 4);
    }

    #[test]
    fn table_fill_matches_closed_form() {
        let c = ctx(2, 1);
        let engine = Engine::new(maximal_setup(maximal_terms(&c)));
        let t = fill_table(&engine, FunctionKind::Mixed, &[(1, 4), (0, 0), (0, 0)]).unwrap();
        let vals: Vec<u64> = t.cells.iter().map(|c| c.value).collect();
        assert_eq!(vals, vec![1, 3, 6, 10]);
        let empty = fill_table(&engine, FunctionKind::Mixed, &[(1, 0), (0, 0), (0, 0)]).unwrap();
        assert!(empty.cells.is_empty());
    }
}

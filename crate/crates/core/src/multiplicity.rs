//! Extraction of mixed and Buchsbaum-Rim multiplicities from exact length
//! functions by iterated finite differences, with explicit stabilization windows.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::graded::{grid_points, Engine, FunctionKind, Setup};
use crate::module::RingContext;
use crate::monomial::MonomialIdeal;

/// Orders of a finite difference: `k0` along `n`, `j` along `p`, `k_i` along `r_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    pub j: u32,
    pub k0: u32,
    pub k: Vec<u32>,
}

impl MultiIndex {
    pub fn new(j: u32, k0: u32, k: Vec<u32>) -> Self {
        MultiIndex { j, k0, k }
    }

    pub fn total(&self) -> i64 {
        (self.j + self.k0 + self.k.iter().sum::<u32>()) as i64
    }

    pub fn t(&self) -> usize {
        self.k.iter().sum::<u32>() as usize
    }

    /// Difference orders along the axes `(n, p, r_1..r_q)`.
    pub fn mixed_order(&self) -> Vec<u32> {
        let mut o = vec![self.k0, self.j];
        o.extend_from_slice(&self.k);
        o
    }

    /// All indices with `q` r-axes of total degree `total`, in a fixed order.
    pub fn all_of_total(q: usize, total: u32) -> Vec<MultiIndex> {
        compositions(total, q + 2)
            .into_iter()
            .map(|c| MultiIndex {
                k0: c[0],
                j: c[1],
                k: c[2..].to_vec(),
            })
            .collect()
    }
}

/// All vectors of `parts` naturals summing to `total`, lexicographically decreasing.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Where and how far differences are sampled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Policy {
    /// Starting base coordinate on every axis; `None` means `D_formula + 2`.
    pub base: Option<u64>,
    /// Number of shifts per axis at which a difference must agree.
    pub window: u64,
    /// How many times the base may be doubled.
    pub rounds: u32,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            base: None,
            window: 3,
            rounds: 4,
        }
    }
}

impl Policy {
    pub fn doubled(&self) -> Policy {
        Policy {
            base: self.base.map(|b| b * 2),
            window: self.window * 2,
            rounds: self.rounds,
        }
    }

    fn start(&self, formula_degree: i64) -> u64 {
        self.base.unwrap_or((formula_degree.max(0) + 2) as u64).max(1)
    }
}

/// Evidence that a difference was constant over a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub base: Vec<u64>,
    pub window: u64,
    /// Zero-based round in which the window agreed.
    pub round: u32,
    pub samples: usize,
}

fn binomial(n: u32, k: u32) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Iterated forward difference `Δ^order f` at `base`.
pub fn finite_difference<F>(f: F, order: &[u32], base: &[u64]) -> Result<i64>
where
    F: Fn(&[u64]) -> Option<u64>,
{
    if order.len() != base.len() {
        return Err(CoreError::GridTooSmall(format!(
            "order has {} axes, base has {}",
            order.len(),
            base.len()
        )));
    }
    let bounds: Vec<(u64, u64)> = order.iter().map(|&o| (0, o as u64)).collect();
    let mut acc: i128 = 0;
    for shift in grid_points(&bounds) {
        let point: Vec<u64> = base.iter().zip(&shift).map(|(b, s)| b + s).collect();
        let value = f(&point).ok_or_else(|| {
            CoreError::GridTooSmall(format!("no value at {point:?}"))
        })?;
        let mut coeff: i128 = 1;
        let mut missing = 0u32;
        for (&o, &s) in order.iter().zip(&shift) {
            coeff *= binomial(o, s as u32);
            missing += o - s as u32;
        }
        if missing % 2 == 1 {
            coeff = -coeff;
        }
        acc += coeff * value as i128;
    }
    i64::try_from(acc).map_err(|_| CoreError::UnstableWindow("difference overflows i64".into()))
}

/// Difference of `kind` at `base` read through the engine.
fn engine_difference(engine: &Engine, kind: FunctionKind, order: &[u32], base: &[u64]) -> Result<i64> {
    let bounds: Vec<(u64, u64)> = order
        .iter()
        .zip(base)
        .map(|(&o, &b)| (b, b + o as u64))
        .collect();
    let points = grid_points(&bounds);
    let values = engine.values(kind, &points)?;
    let lookup: std::collections::HashMap<&Vec<u64>, u64> = points.iter().zip(values).collect();
    finite_difference(|p| lookup.get(&p.to_vec()).copied(), order, base)
}

fn prefetch(engine: &Engine, kind: FunctionKind, base: u64, span: u64, axes: usize) -> Result<()> {
    let bounds = vec![(base, base + span); axes];
    engine.values(kind, &grid_points(&bounds)).map(|_| ())
}

fn shifts(window: u64, axes: usize) -> Vec<Vec<u64>> {
    grid_points(&vec![(0, window.saturating_sub(1)); axes])
}

/// Projective dimension of `k[x, T] / b` as a graded module: the Krull
/// dimension after saturating by the T-variables, minus one. Returns `-1`
/// when the saturation is the unit ideal.
pub fn proj_dim(ctx: &RingContext, b: &MonomialIdeal) -> i64 {
    let sat = b.saturate_vars(ctx.t_mask());
    if sat.is_unit() {
        -1
    } else {
        sat.krull_dim() - 1
    }
}

/// Predicted total degree `D` of the mixed length function: the dimension
/// of the support of `M* = G / (B : 𝓘^∞)` in `Proj G`.
pub fn dimension_d(setup: &Setup) -> Result<i64> {
    let sat = setup.saturated_b();
    let dim = proj_dim(setup.ctx(), &sat);
    if dim < 0 {
        return Err(CoreError::TrivialModule(
            "B : 𝓘^∞ defines the empty set in Proj G".into(),
        ));
    }
    Ok(dim)
}

/// Degree of the Buchsbaum-Rim function of `M = G / B`.
pub fn br_degree(setup: &Setup) -> i64 {
    proj_dim(setup.ctx(), setup.b())
}

/// `ht(𝓘 + Ann M / Ann M)` measured in `Proj G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Height {
    pub value: i64,
    /// Set when `𝓘 + B` defines the empty set, so the height is the dimension plus one.
    pub empty_locus: bool,
}

pub fn height_mod_ann(setup: &Setup) -> Height {
    let ctx = setup.ctx();
    let whole = proj_dim(ctx, setup.b());
    let cut = proj_dim(ctx, &setup.b().sum(setup.product_ideal()));
    Height {
        value: whole - cut,
        empty_locus: cut < 0,
    }
}

/// Formula degree of a function kind on a setup.
pub fn formula_degree(setup: &Setup, kind: FunctionKind) -> Result<i64> {
    match kind {
        FunctionKind::Mixed | FunctionKind::KirbyRees => dimension_d(setup),
        FunctionKind::BuchsbaumRim => Ok(br_degree(setup)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEvidence {
    pub degree: i64,
    pub formula: i64,
    pub base: u64,
    pub window: u64,
    pub round: u32,
}

/// Least `D'` such that every difference of total order `D' + 1` vanishes
/// at every shift of the window.
pub fn detect_degree(engine: &Engine, kind: FunctionKind, policy: &Policy) -> Result<DegreeEvidence> {
    let formula = formula_degree(engine.setup(), kind)?;
    let axes = kind.arity(engine.setup().q());
    let start = policy.start(formula);
    let cap = (formula.max(0) + 2) as u32;
    let shift_list = shifts(policy.window, axes);
    for round in 0..policy.rounds {
        let base = start << round;
        'degree: for candidate in 0..=cap {
            let order_total = candidate + 1;
            prefetch(engine, kind, base, policy.window - 1 + order_total as u64, axes)?;
            for order in compositions(order_total, axes) {
                for s in &shift_list {
                    let at: Vec<u64> = s.iter().map(|v| v + base).collect();
                    if engine_difference(engine, kind, &order, &at)? != 0 {
                        continue 'degree;
                    }
                }
            }
            return Ok(DegreeEvidence {
                degree: candidate as i64,
                formula,
                base,
                window: policy.window,
                round,
            });
        }
    }
    Err(CoreError::UnstableWindow(format!(
        "no degree up to {cap} vanishes for {} after {} rounds",
        kind.name(),
        policy.rounds
    )))
}

/// A difference of the given order that is constant over a window.
pub fn stabilized_difference(
    engine: &Engine,
    kind: FunctionKind,
    order: &[u32],
    policy: &Policy,
    formula: i64,
    top_degree: bool,
) -> Result<(i64, Evidence)> {
    let axes = kind.arity(engine.setup().q());
    if order.len() != axes {
        return Err(CoreError::GridTooSmall(format!(
            "{} has {axes} axes, order has {}",
            kind.name(),
            order.len()
        )));
    }
    let start = policy.start(formula);
    let shift_list = shifts(policy.window, axes);
    let span = policy.window - 1 + order.iter().copied().max().unwrap_or(0) as u64;
    let mut seen = Vec::new();
    for round in 0..policy.rounds {
        let base = start << round;
        prefetch(engine, kind, base, span, axes)?;
        let mut values = Vec::with_capacity(shift_list.len());
        for s in &shift_list {
            let at: Vec<u64> = s.iter().map(|v| v + base).collect();
            values.push(engine_difference(engine, kind, order, &at)?);
        }
        if values.iter().all(|v| *v == values[0]) {
            let value = values[0];
            if top_degree && value < 0 {
                return Err(CoreError::UnstableWindow(format!(
                    "negative top-degree difference {value} for order {order:?}"
                )));
            }
            return Ok((
                value,
                Evidence {
                    base: vec![base; axes],
                    window: policy.window,
                    round,
                    samples: values.len(),
                },
            ));
        }
        seen.push((base, values));
    }
    Err(CoreError::UnstableWindow(format!(
        "order {order:?} of {} not constant: {seen:?}",
        kind.name()
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityEntry {
    pub index: MultiIndex,
    pub value: i64,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub d_detected: i64,
    pub d_formula: i64,
    pub degree_evidence: DegreeEvidence,
    pub entries: Vec<MultiplicityEntry>,
    pub warnings: Vec<String>,
}

fn degree_warning(ev: &DegreeEvidence, what: &str) -> Option<String> {
    (ev.degree != ev.formula).then(|| {
        format!(
            "{what}: detected degree {} differs from the dimension formula {}",
            ev.degree, ev.formula
        )
    })
}

/// `e^j(J^[k0], I_1^[k1], ..., I_q^[kq]; M)`.
pub fn mixed_multiplicity(
    engine: &Engine,
    index: &MultiIndex,
    policy: &Policy,
) -> Result<MultiplicityEntry> {
    let ev = detect_degree(engine, FunctionKind::Mixed, policy)?;
    mixed_with_degree(engine, index, policy, &ev)
}

fn mixed_with_degree(
    engine: &Engine,
    index: &MultiIndex,
    policy: &Policy,
    ev: &DegreeEvidence,
) -> Result<MultiplicityEntry> {
    if index.k.len() != engine.setup().q() {
        return Err(CoreError::GridTooSmall(format!(
            "index has {} r-orders, setup has q = {}",
            index.k.len(),
            engine.setup().q()
        )));
    }
    if index.total() != ev.degree {
        return Err(CoreError::IndexDegree {
            expected: ev.degree,
            found: index.total(),
        });
    }
    let (value, evidence) = stabilized_difference(
        engine,
        FunctionKind::Mixed,
        &index.mixed_order(),
        policy,
        ev.formula,
        true,
    )?;
    Ok(MultiplicityEntry {
        index: index.clone(),
        value,
        evidence,
    })
}

/// Detected degree plus the requested entries (all of total degree `D` when `None`).
pub fn multiplicity_report(
    engine: &Engine,
    indices: Option<Vec<MultiIndex>>,
    policy: &Policy,
) -> Result<MultiplicityReport> {
    let ev = detect_degree(engine, FunctionKind::Mixed, policy)?;
    let mut warnings: Vec<String> = degree_warning(&ev, "mixed").into_iter().collect();
    let indices = indices
        .unwrap_or_else(|| MultiIndex::all_of_total(engine.setup().q(), ev.degree as u32));
    let mut entries = Vec::new();
    for idx in &indices {
        entries.push(mixed_with_degree(engine, idx, policy, &ev)?);
    }
    if entries.iter().all(|e| e.value == 0) && !entries.is_empty() {
        warnings.push("every requested coefficient vanishes".into());
    }
    Ok(MultiplicityReport {
        d_detected: ev.degree,
        d_formula: ev.formula,
        degree_evidence: ev,
        entries,
        warnings,
    })
}

/// Stabilized `Δ_n^{n_order} Δ_q^{q_order}` of the Buchsbaum-Rim function of `(J; M)`.
pub fn br_coefficient(
    engine: &Engine,
    n_order: u32,
    q_order: u32,
    policy: &Policy,
) -> Result<(i64, Evidence)> {
    let formula = br_degree(engine.setup());
    let top = (n_order + q_order) as i64 == formula;
    stabilized_difference(
        engine,
        FunctionKind::BuchsbaumRim,
        &[n_order, q_order],
        policy,
        formula,
        top,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrEntry {
    pub j: u32,
    pub degree: i64,
    pub value: i64,
    pub evidence: Evidence,
}

/// `e^j(J; M)`: the coefficient of order `(deg - j, j)` of the Buchsbaum-Rim
/// function, where `deg` is the dimension of `M` in `Proj G`.
pub fn buchsbaum_rim(engine: &Engine, j: u32, policy: &Policy) -> Result<BrEntry> {
    let degree = br_degree(engine.setup());
    if degree < 0 {
        // The zero module: its function vanishes identically.
        return Ok(BrEntry {
            j,
            degree,
            value: 0,
            evidence: Evidence {
                base: vec![],
                window: 0,
                round: 0,
                samples: 0,
            },
        });
    }
    if j as i64 > degree {
        return Err(CoreError::IndexDegree {
            expected: degree,
            found: j as i64,
        });
    }
    let (value, evidence) = br_coefficient(engine, degree as u32 - j, j, policy)?;
    Ok(BrEntry {
        j,
        degree,
        value,
        evidence,
    })
}

/// All `e^0..e^deg` of the Buchsbaum-Rim function, with degree detection warnings.
pub fn buchsbaum_rim_all(engine: &Engine, policy: &Policy) -> Result<(Vec<BrEntry>, Vec<String>)> {
    let degree = br_degree(engine.setup());
    let ev = detect_degree(engine, FunctionKind::BuchsbaumRim, policy)?;
    let mut warnings: Vec<String> = degree_warning(&ev, "buchsbaum-rim").into_iter().collect();
    if ev.degree < ev.formula {
        warnings.push("lower detected degree: top coefficients vanish".into());
    }
    let entries = (0..=degree.max(0) as u32)
        .map(|j| buchsbaum_rim(engine, j, policy))
        .collect::<Result<Vec<_>>>()?;
    Ok((entries, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::maximal_terms;
    use crate::module::BiMonomial;
    use crate::monomial::Monomial;

    fn ctx(d: usize, p: usize) -> RingContext {
        RingContext::new(d, p).unwrap()
    }

    #[test]
    fn differences_of_closed_forms() {
        let tri = |p: &[u64]| Some(p[0] * (p[0] + 1) / 2);
        assert_eq!(finite_difference(tri, &[2], &[5]).unwrap(), 1);
        assert_eq!(finite_difference(tri, &[3], &[2]).unwrap(), 0);
        let br = |p: &[u64]| Some((p[0] + p[1] + 1) * p[0] * (p[0] + 1) / 2);
        assert_eq!(finite_difference(br, &[3, 0], &[4, 4]).unwrap(), 3);
        assert_eq!(finite_difference(br, &[2, 1], &[4, 4]).unwrap(), 1);
        assert!(finite_difference(|_| None, &[1], &[0]).is_err());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(MultiIndex::all_of_total(1, 2).len(), 6);
    }

    #[test]
    fn dimension_formula_examples() {
        let c = ctx(2, 1);
        let s = Setup::new(c.clone(), MonomialIdeal::zero(2), maximal_terms(&c), vec![maximal_terms(&c)])
            .unwrap();
        assert_eq!(dimension_d(&s).unwrap(), 2);
        let c2 = ctx(2, 2);
        let s = Setup::new(c2.clone(), MonomialIdeal::zero(2), maximal_terms(&c2), vec![maximal_terms(&c2)])
            .unwrap();
        assert_eq!(dimension_d(&s).unwrap(), 3);
        let a = MonomialIdeal::new(2, vec![Monomial::new(&[1, 0])]);
        let s = Setup::new(c.clone(), a, maximal_terms(&c), vec![vec![BiMonomial::term(&[0, 1], 0, 1)]])
            .unwrap();
        assert_eq!(dimension_d(&s).unwrap(), 1);
    }

    #[test]
    fn heights() {
        let c = ctx(2, 1);
        let bh = vec![BiMonomial::term(&[2, 0], 0, 1), BiMonomial::term(&[0, 3], 0, 1)];
        let s = Setup::new(c.clone(), MonomialIdeal::zero(2), maximal_terms(&c), vec![bh]).unwrap();
        assert_eq!(height_mod_ann(&s).value, 2);
        let a = MonomialIdeal::new(2, vec![Monomial::new(&[1, 0])]);
        let s = Setup::new(c.clone(), a.clone(), maximal_terms(&c), vec![vec![BiMonomial::term(&[0, 1], 0, 1)]])
            .unwrap();
        assert_eq!(height_mod_ann(&s).value, 1);
        let s = Setup::new(c.clone(), a, maximal_terms(&c), vec![vec![BiMonomial::term(&[1, 0], 0, 1)]])
            .unwrap();
        assert_eq!(height_mod_ann(&s).value, 0);
    }

    #[test]
    fn maximal_ideal_multiplicities() {
        let c = ctx(2, 1);
        let s = Setup::new(c.clone(), MonomialIdeal::zero(2), maximal_terms(&c), vec![maximal_terms(&c)])
            .unwrap();
        let engine = Engine::new(s);
        let report = multiplicity_report(&engine, None, &Policy::default()).unwrap();
        assert_eq!(report.d_detected, 2);
        let value = |k0, j, k: u32| {
            report
                .entries
                .iter()
                .find(|e| e.index == MultiIndex::new(j, k0, vec![k]))
                .unwrap()
                .value
        };
        assert_eq!(value(2, 0, 0), 1);
        assert_eq!(value(1, 0, 1), 1);
        assert_eq!(value(0, 0, 2), 0);
        assert_eq!(value(0, 2, 0), 0);
    }

    #[test]
    fn buchsbaum_rim_of_free_modules() {
        let c = ctx(2, 2);
        let engine = Engine::new(Setup::pair(c.clone(), MonomialIdeal::zero(2), maximal_terms(&c)).unwrap());
        let (entries, warnings) = buchsbaum_rim_all(&engine, &Policy::default()).unwrap();
        let values: Vec<i64> = entries.iter().map(|e| e.value).collect();
        assert_eq!(values, vec![3, 1, 0, 0]);
        assert!(warnings.is_empty());
        let free = vec![BiMonomial::term(&[0, 0], 0, 2), BiMonomial::term(&[0, 0], 1, 2)];
        let engine = Engine::new(Setup::pair(c, MonomialIdeal::zero(2), free).unwrap());
        let (entries, warnings) = buchsbaum_rim_all(&engine, &Policy::default()).unwrap();
        assert!(entries.iter().all(|e| e.value == 0));
        assert!(!warnings.is_empty());
    }
}

//! Window checks of the (FC) conditions, superficiality and joint reductions
//! for monomial candidates, plus searches for candidates that pass them.
//!
//! A `Fail` verdict is definitive: an equality of slices is violated at a
//! recorded grid point. A `Pass` only means the equality held on the sampled
//! window, and the window is always reported with it.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::graded::{grid_points, Engine, Setup, Source};
use crate::module::{ideal_part, BiMonomial, Slice};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::multiplicity::{dimension_d, proj_dim};

/// A monomial element of `G_1` drawn from one of the setup's modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Candidate {
    pub element: BiMonomial,
    pub source: Source,
}

impl Candidate {
    /// Validates that `element` is a minimal generator of its source modulo `B`.
    pub fn new(setup: &Setup, element: BiMonomial, source: Source) -> Result<Self> {
        let c = Candidate { element, source };
        if let Some(reason) = invalid_reason(setup, &c) {
            return Err(CoreError::InvalidCandidate(reason));
        }
        Ok(c)
    }
}

/// Why a candidate is not in `I \ (𝔪 I + B)`, if it is not.
pub fn invalid_reason(setup: &Setup, c: &Candidate) -> Option<String> {
    let ctx = setup.ctx();
    if c.element.x.nvars() != ctx.x_vars || c.element.t.nvars() != ctx.t_vars {
        return Some("wrong arity".into());
    }
    if c.element.tdegree() != 1 {
        return Some(format!("{} is not of T-degree one", ctx.format(&c.element)));
    }
    if !setup.valid_source(c.source) {
        return Some(format!("unknown source {}", c.source));
    }
    let member = setup.member(c.source);
    let is_min_gen = member
        .part(&c.element.t)
        .is_some_and(|i| i.gens().contains(&c.element.x));
    if !is_min_gen {
        return Some(format!(
            "{} is not a minimal generator of {}",
            ctx.format(&c.element),
            c.source
        ));
    }
    if setup.b().contains(&c.element.flatten()) {
        return Some(format!("{} is zero in the quotient", ctx.format(&c.element)));
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Fc1,
    Fc2,
    Fc3,
    Superficial,
    JointReduction,
    Membership,
}

/// Sampled region: each r-coordinate in `[r_start, r_start + r_len)`, `p` in `[0, p_len)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub r_start: u64,
    pub r_len: u64,
    pub p_len: u64,
}

impl Window {
    /// Starts at `D + 2` with three samples per axis.
    pub fn for_setup(setup: &Setup) -> Self {
        let d = dimension_d(setup).unwrap_or(0).max(0) as u64;
        Window {
            r_start: d + 2,
            r_len: 3,
            p_len: 3,
        }
    }

    pub fn doubled(&self) -> Self {
        Window {
            r_start: self.r_start * 2,
            r_len: self.r_len * 2,
            p_len: self.p_len * 2,
        }
    }

    fn points(&self, axes: usize) -> Vec<(Vec<u64>, u64)> {
        let mut bounds = vec![(self.r_start, self.r_start + self.r_len - 1); axes];
        bounds.push((0, self.p_len - 1));
        grid_points(&bounds)
            .into_iter()
            .map(|mut v| {
                let p = v.pop().unwrap();
                (v, p)
            })
            .collect()
    }
}

/// A violated equality: the T-monomial where the two sides differ and their x-generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub r: Vec<u64>,
    pub p: u64,
    pub t_monomial: Vec<u32>,
    pub lhs: Vec<Vec<u32>>,
    pub rhs: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub condition: Condition,
    pub verdict: Verdict,
    pub window: Option<Window>,
    /// The (FC₁) threshold `r'_i` that the pass is relative to.
    pub threshold: Option<u64>,
    pub witness: Option<Witness>,
    pub detail: String,
}

impl CheckReport {
    fn new(condition: Condition, verdict: Verdict, detail: impl Into<String>) -> Self {
        CheckReport {
            condition,
            verdict,
            window: None,
            threshold: None,
            witness: None,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn to_u32(v: u64) -> u32 {
    u32::try_from(v).expect("window coordinate out of range")
}

fn ideal_exps(i: &MonomialIdeal) -> Vec<Vec<u32>> {
    i.gens().iter().map(|g| g.exps().to_vec()).collect()
}

/// `x · G_{k-1}` as a slice of degree `k`.
fn multiples(setup: &Setup, x: &BiMonomial, k: u32) -> Slice {
    let ctx = setup.ctx();
    Slice::full(k - 1, ctx.x_vars, ctx.t_vars).mul_monomial(x)
}

fn keys(slices: &[&Slice]) -> BTreeSet<Monomial> {
    slices.iter().flat_map(|s| s.parts().keys().cloned()).collect()
}

/// Compares two slices modulo `B`; returns a witness on mismatch.
fn compare(lhs: &Slice, rhs: &Slice, b: &MonomialIdeal, r: &[u64], p: u64) -> Option<Witness> {
    lhs.first_difference_modulo(rhs, b).map(|(t, l, rr)| Witness {
        r: r.to_vec(),
        p,
        t_monomial: t.exps().to_vec(),
        lhs: ideal_exps(&l),
        rhs: ideal_exps(&rr),
    })
}

/// Evaluates `check` over the window and reports the first failing point in
/// lexicographic order, so the outcome does not depend on scheduling.
fn scan_window<F>(engine: &Engine, window: &Window, axes: usize, check: F) -> Option<Witness>
where
    F: Fn(&[u64], u64) -> Option<Witness> + Sync,
{
    let points = window.points(axes);
    let results: Vec<Option<Witness>> = if engine.is_parallel() {
        points.par_iter().map(|(r, p)| check(r, *p)).collect()
    } else {
        points.iter().map(|(r, p)| check(r, *p)).collect()
    };
    results.into_iter().flatten().next()
}

fn finish(condition: Condition, window: &Window, witness: Option<Witness>, what: &str) -> CheckReport {
    let verdict = if witness.is_some() {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let detail = match &witness {
        Some(w) => format!("{what} fails at r = {:?}, p = {}", w.r, w.p),
        None => format!("{what} holds on the window"),
    };
    CheckReport {
        condition,
        verdict,
        window: Some(*window),
        threshold: None,
        witness,
        detail,
    }
}

fn membership_failure(setup: &Setup, c: &Candidate) -> Option<CheckReport> {
    invalid_reason(setup, c).map(|reason| CheckReport::new(Condition::Membership, Verdict::Fail, reason))
}

/// (FC₁): `I^r M_p ∩ x M_{|r|+p-1} = x I^{r-δ(i)} M_p` for every sampled `r`
/// and `p`, with `I^r` the power product over `family`.
pub fn check_fc1(engine: &Engine, c: &Candidate, family: &[Source], window: &Window) -> CheckReport {
    let setup = engine.setup();
    if let Some(r) = membership_failure(setup, c) {
        return r;
    }
    let Some(axis) = family.iter().position(|s| *s == c.source) else {
        return CheckReport::new(
            Condition::Fc1,
            Verdict::Inconclusive,
            format!("source {} is not in the family", c.source),
        );
    };
    let b = setup.b();
    let witness = scan_window(engine, window, family.len(), |r, p| {
        let exps: Vec<u32> = r.iter().map(|&v| to_u32(v)).collect();
        let degree = exps.iter().sum::<u32>() + to_u32(p);
        let power = engine.family_product(family, &exps, to_u32(p));
        let xs = multiples(setup, &c.element, degree);
        let ks = keys(&[&power, &xs]);
        let lhs = power.with_ideal(b, &ks).intersect(&xs.with_ideal(b, &ks));
        let mut lower = exps.clone();
        lower[axis] -= 1;
        let rhs = engine
            .family_product(family, &lower, to_u32(p))
            .mul_monomial(&c.element);
        compare(&lhs, &rhs, b, r, p)
    });
    let mut report = finish(Condition::Fc1, window, witness, "FC1 equality");
    report.threshold = Some(window.r_start);
    report
}

/// (FC₂): `(B : x) ⊆ (B : 𝓘^∞)`. Exact, no window needed for cyclic `M`.
pub fn check_fc2(setup: &Setup, c: &Candidate) -> CheckReport {
    if let Some(r) = membership_failure(setup, c) {
        return r;
    }
    let colon = setup.b().colon(&c.element.flatten());
    let sat = setup.saturated_b();
    match colon.gens().iter().find(|g| !sat.contains(g)) {
        None => CheckReport::new(Condition::Fc2, Verdict::Pass, "(B : x) lies in B : I^inf"),
        Some(g) => CheckReport::new(
            Condition::Fc2,
            Verdict::Fail,
            format!(
                "{} is in (B : x) but not in B : I^inf",
                setup
                    .ctx()
                    .format(&BiMonomial::unflatten(g, setup.ctx().x_vars))
            ),
        ),
    }
}

/// Dimension of the support of `M / (0 : 𝓘^∞)` in `Proj G`, `-1` for the zero module.
pub fn saturated_dim(setup: &Setup) -> i64 {
    proj_dim(setup.ctx(), &setup.saturated_b())
}

/// (FC₃): the support of `M / xM : 𝓘^∞` has dimension one less than that of `M*`.
pub fn check_fc3(setup: &Setup, c: &Candidate) -> Result<CheckReport> {
    if let Some(r) = membership_failure(setup, c) {
        return Ok(r);
    }
    let before = saturated_dim(setup);
    if before < 0 {
        return Err(CoreError::TrivialModule("M* is zero before dividing by x".into()));
    }
    let after = saturated_dim(&setup.quotient(std::slice::from_ref(&c.element)));
    let verdict = if after == before - 1 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CheckReport::new(
        Condition::Fc3,
        verdict,
        format!("dimension {before} -> {after}"),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceMode {
    WeakFc,
    Fc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub element: BiMonomial,
    pub source: Source,
    pub checks: Vec<CheckReport>,
}

/// Outcome of checking a sequence step by step in successive quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub mode: SequenceMode,
    pub verdict: Verdict,
    pub steps: Vec<StepReport>,
    /// Zero-based index of the first failing step.
    pub failed_at: Option<usize>,
    /// Saturated dimension before the sequence and after each completed step.
    pub dims: Vec<i64>,
    /// Whether every completed step satisfied (FC₃), whatever the mode.
    pub fc3_each_step: bool,
    /// The dimension ledger for a weak sequence of length `t`: the drop is
    /// at least `t`, with equality exactly when every step satisfies (FC₃).
    pub dimension_ledger_holds: Option<bool>,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Checks each element in the quotient by its predecessors.
pub fn check_sequence(
    engine: &Engine,
    cs: &[Candidate],
    mode: SequenceMode,
    family: &[Source],
    window: &Window,
) -> Result<SequenceReport> {
    let mut current = engine.derive(engine.setup().clone());
    let mut dims = vec![saturated_dim(engine.setup())];
    let mut steps = Vec::new();
    let mut failed_at = None;
    let mut inconclusive = false;
    let mut fc3_each_step = true;
    for (idx, c) in cs.iter().enumerate() {
        let setup = current.setup().clone();
        let mut checks = vec![check_fc1(&current, c, family, window)];
        if checks[0].condition != Condition::Membership {
            checks.push(check_fc2(&setup, c));
            let fc3 = if dims.last().copied().unwrap_or(-1) < 0 {
                CheckReport::new(Condition::Fc3, Verdict::Fail, "M* is already zero")
            } else {
                check_fc3(&setup, c)?
            };
            fc3_each_step &= fc3.passed();
            if mode == SequenceMode::Fc {
                checks.push(fc3);
            }
        } else {
            fc3_each_step = false;
        }
        let failed = checks.iter().any(|r| r.verdict == Verdict::Fail);
        inconclusive |= checks.iter().any(|r| r.verdict == Verdict::Inconclusive);
        steps.push(StepReport {
            element: c.element.clone(),
            source: c.source,
            checks,
        });
        if failed {
            failed_at = Some(idx);
            break;
        }
        let next = setup.quotient(std::slice::from_ref(&c.element));
        dims.push(saturated_dim(&next));
        current = current.derive(next);
    }
    let verdict = if failed_at.is_some() {
        Verdict::Fail
    } else if inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let dimension_ledger_holds = (failed_at.is_none() && !cs.is_empty()).then(|| {
        let drop = dims[0] - dims[dims.len() - 1];
        let t = cs.len() as i64;
        drop >= t.min(dims[0] + 1) && ((drop == t) == fc3_each_step)
    });
    Ok(SequenceReport {
        mode,
        verdict,
        steps,
        failed_at,
        dims,
        fc3_each_step,
        dimension_ledger_holds,
    })
}

/// `((I^{r+1+δ(ε)} M_p : x) ∩ I^r M_{p+f}) = I^{r+1} M_p` over the window,
/// with `f` the family size and `ε` the candidate's position in the family.
pub fn check_superficial(
    engine: &Engine,
    c: &Candidate,
    family: &[Source],
    window: &Window,
) -> CheckReport {
    let setup = engine.setup();
    if let Some(r) = membership_failure(setup, c) {
        return r;
    }
    let Some(axis) = family.iter().position(|s| *s == c.source) else {
        return CheckReport::new(
            Condition::Superficial,
            Verdict::Inconclusive,
            format!("source {} is not in the family", c.source),
        );
    };
    let b = setup.b();
    let b_colon = b.colon(&c.element.flatten());
    let f = family.len() as u32;
    let witness = scan_window(engine, window, family.len(), |r, p| {
        let p32 = to_u32(p);
        let base: Vec<u32> = r.iter().map(|&v| to_u32(v)).collect();
        let plus_one: Vec<u32> = base.iter().map(|v| v + 1).collect();
        let mut bumped = plus_one.clone();
        bumped[axis] += 1;
        let big = engine.family_product(family, &bumped, p32);
        let colon = big.colon(&c.element).expect("degree is at least one");
        let other = engine.family_product(family, &base, p32 + f);
        let rhs = engine.family_product(family, &plus_one, p32);
        let ks = keys(&[&colon, &other, &rhs]);
        let lhs = colon
            .with_ideal(&b_colon, &ks)
            .intersect(&other.with_ideal(b, &ks));
        compare(&lhs, &rhs, b, r, p)
    });
    finish(Condition::Superficial, window, witness, "superficial equality")
}

/// Checks a superficial sequence element by element in successive quotients.
pub fn check_superficial_sequence(
    engine: &Engine,
    cs: &[Candidate],
    family: &[Source],
    window: &Window,
) -> Vec<CheckReport> {
    let mut current = engine.derive(engine.setup().clone());
    let mut out = Vec::new();
    for c in cs {
        let report = check_superficial(&current, c, family, window);
        let ok = report.passed();
        out.push(report);
        if !ok {
            break;
        }
        let next = current.setup().quotient(std::slice::from_ref(&c.element));
        current = current.derive(next);
    }
    out
}

/// `I^r M_p = Σ_j 𝔍_j I^{r-δ(j)} M_p` over the window, the power products
/// running over the setup's `I_1..I_q`.
pub fn check_joint_reduction(
    engine: &Engine,
    reductions: &[(Source, Vec<BiMonomial>)],
    window: &Window,
) -> Result<CheckReport> {
    let setup = engine.setup();
    let ctx = setup.ctx();
    let family: Vec<Source> = (0..setup.q()).map(Source::I).collect();
    let mut parts = Vec::new();
    for (source, elems) in reductions {
        let Source::I(i) = source else {
            return Err(CoreError::InvalidCandidate(format!(
                "joint reductions live in the I_i, got {source}"
            )));
        };
        if *i >= setup.q() {
            return Err(CoreError::InvalidCandidate(format!("unknown source {source}")));
        }
        let slice = Slice::from_gens(1, ctx.x_vars, ctx.t_vars, elems.iter().cloned())?;
        if !slice.is_subset(setup.member(*source)) {
            return Err(CoreError::InvalidCandidate(format!(
                "reduction for {source} is not contained in it"
            )));
        }
        parts.push((*i, slice));
    }
    let b = setup.b();
    let witness = scan_window(engine, window, family.len(), |r, p| {
        let p32 = to_u32(p);
        let exps: Vec<u32> = r.iter().map(|&v| to_u32(v)).collect();
        let lhs = engine.family_product(&family, &exps, p32);
        let degree = exps.iter().sum::<u32>() + p32;
        let mut rhs = Slice::zero(degree, ctx.x_vars, ctx.t_vars);
        for (i, slice) in &parts {
            let mut lower = exps.clone();
            lower[*i] -= 1;
            rhs = rhs.add(&engine.family_product(&family, &lower, p32).product(slice));
        }
        compare(&lhs, &rhs, b, r, p)
    });
    Ok(finish(
        Condition::JointReduction,
        window,
        witness,
        "joint reduction equality",
    ))
}

/// Minimal generators of a source that survive modulo `B`, in search order:
/// x-exponents descending lexicographically, then T-part.
pub fn candidates(setup: &Setup, source: Source) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = setup
        .member(source)
        .gens()
        .into_iter()
        .map(|element| Candidate { element, source })
        .filter(|c| invalid_reason(setup, c).is_none())
        .collect();
    out.sort_by(|a, b| {
        b.element
            .x
            .cmp(&a.element.x)
            .then_with(|| b.element.t.cmp(&a.element.t))
    });
    out
}

/// First candidate of `source` satisfying (FC₁) and (FC₂); `None` when every
/// monomial candidate fails, which does not rule out non-monomial elements.
pub fn find_weak_fc(
    engine: &Engine,
    source: Source,
    family: &[Source],
    window: &Window,
) -> Option<Candidate> {
    candidates(engine.setup(), source).into_iter().find(|c| {
        check_fc2(engine.setup(), c).passed() && check_fc1(engine, c, family, window).passed()
    })
}

/// A weak-(FC)-sequence in `I_1 ∪ ... ∪ I_q`, grouped by source.
///
/// `maximal` is set when `𝓘` lies in the radical of the annihilator of the
/// final quotient, so that no element of any kind extends the sequence. A
/// sequence that merely ran out of monomial candidates is not maximal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalFamily {
    pub sequence: Vec<Candidate>,
    pub reductions: Vec<(Source, Vec<BiMonomial>)>,
    pub maximal: bool,
}

/// Searches for a maximal monomial weak-(FC)-sequence with non-decreasing
/// sources; falls back to the greedy sequence when the search budget runs out.
pub fn maximal_weak_fc_family(engine: &Engine, window: &Window) -> MaximalFamily {
    let q = engine.setup().q();
    let family: Vec<Source> = (0..q).map(Source::I).collect();
    let mut budget = 256usize;
    let sequence = match maximal_search(engine, 0, &family, window, &mut Vec::new(), &mut budget) {
        Some(seq) => seq,
        None => greedy_weak_fc(engine, &family, window),
    };
    let elems: Vec<BiMonomial> = sequence.iter().map(|c| c.element.clone()).collect();
    let maximal = q > 0 && saturated_dim(&engine.setup().quotient(&elems)) < 0;
    let mut reductions: Vec<(Source, Vec<BiMonomial>)> = Vec::new();
    for c in &sequence {
        match reductions.last_mut() {
            Some((s, v)) if *s == c.source => v.push(c.element.clone()),
            _ => reductions.push((c.source, vec![c.element.clone()])),
        }
    }
    MaximalFamily {
        sequence,
        reductions,
        maximal,
    }
}

fn greedy_weak_fc(engine: &Engine, family: &[Source], window: &Window) -> Vec<Candidate> {
    let mut current = engine.derive(engine.setup().clone());
    let mut sequence = Vec::new();
    for &source in family {
        while saturated_dim(current.setup()) >= 0 {
            let Some(c) = find_weak_fc(&current, source, family, window) else {
                break;
            };
            current = current.derive(current.setup().quotient(std::slice::from_ref(&c.element)));
            sequence.push(c);
        }
    }
    sequence
}

fn maximal_search(
    engine: &Engine,
    first: usize,
    family: &[Source],
    window: &Window,
    chosen: &mut Vec<Candidate>,
    budget: &mut usize,
) -> Option<Vec<Candidate>> {
    let setup = engine.setup();
    if saturated_dim(setup) < 0 {
        return Some(chosen.clone());
    }
    for i in first..family.len() {
        for c in candidates(setup, Source::I(i)) {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            if !check_fc2(setup, &c).passed() || !check_fc1(engine, &c, family, window).passed() {
                continue;
            }
            let next = engine.derive(setup.quotient(std::slice::from_ref(&c.element)));
            chosen.push(c);
            if let Some(found) = maximal_search(&next, i, family, window, chosen, budget) {
                return Some(found);
            }
            chosen.pop();
        }
    }
    None
}

/// Searches monomial (FC)-sequences with `shape[i]` elements from `I_i`,
/// checked with respect to `family`.
pub fn find_fc_sequence(
    engine: &Engine,
    shape: &[u32],
    family: &[Source],
    window: &Window,
) -> Result<Option<Vec<Candidate>>> {
    let order: Vec<Source> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(Source::I(i)).take(k as usize))
        .collect();
    let mut budget = 256usize;
    fc_search(engine, &order, family, window, &mut Vec::new(), &mut budget)
}

fn fc_search(
    engine: &Engine,
    order: &[Source],
    family: &[Source],
    window: &Window,
    chosen: &mut Vec<Candidate>,
    budget: &mut usize,
) -> Result<Option<Vec<Candidate>>> {
    let Some((&source, rest)) = order.split_first() else {
        return Ok(Some(chosen.clone()));
    };
    let setup = engine.setup();
    if saturated_dim(setup) < 0 {
        return Ok(None);
    }
    for c in candidates(setup, source) {
        if *budget == 0 {
            return Ok(None);
        }
        *budget -= 1;
        if !check_fc2(setup, &c).passed() || !check_fc3(setup, &c)?.passed() {
            continue;
        }
        if !check_fc1(engine, &c, family, window).passed() {
            continue;
        }
        let next = engine.derive(setup.quotient(std::slice::from_ref(&c.element)));
        chosen.push(c);
        if let Some(found) = fc_search(&next, rest, family, window, chosen, budget)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

/// The x-ideal of `B` at one T-monomial, for reports.
pub fn b_part(setup: &Setup, t: &Monomial) -> MonomialIdeal {
    ideal_part(setup.b(), setup.ctx().x_vars, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::maximal_terms;
    use crate::module::RingContext;

    fn ctx(d: usize, p: usize) -> RingContext {
        RingContext::new(d, p).unwrap()
    }

    fn term(x: &[u32]) -> BiMonomial {
        BiMonomial::term(x, 0, 1)
    }

    fn setup(a: &[&[u32]], i_terms: Vec<Vec<BiMonomial>>) -> Setup {
        let c = ctx(2, 1);
        let a = MonomialIdeal::new(2, a.iter().map(|g| Monomial::new(g)).collect());
        Setup::new(c.clone(), a, maximal_terms(&c), i_terms).unwrap()
    }

    fn cand(s: &Setup, x: &[u32], src: Source) -> Candidate {
        Candidate::new(s, term(x), src).unwrap()
    }

    #[test]
    fn fc1_regular_and_zero_divisor() {
        let s = setup(&[], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        let e = Engine::new(s.clone());
        let fam = [Source::I(0)];
        let w = Window::for_setup(&s);
        assert!(check_fc1(&e, &cand(&s, &[1, 0], Source::I(0)), &fam, &w).passed());

        let s = setup(&[&[2, 0]], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        let e = Engine::new(s.clone());
        let w = Window::for_setup(&s);
        // Modulo x^2 both sides are x·𝔪^(r-1); the zero divisor shows up in (FC₂).
        let x = cand(&s, &[1, 0], Source::I(0));
        assert!(check_fc1(&e, &x, &fam, &w).passed());
        assert_eq!(check_fc2(&s, &x).verdict, Verdict::Fail);

        // A genuine (FC₁) failure: I = (x^2 T, y T), x^2 T against x^2 · (y T)^r.
        let s = setup(&[], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        let e = Engine::new(s.clone());
        let fam = [Source::J, Source::I(0)];
        let r = check_fc1(&e, &cand(&s, &[1, 0], Source::I(0)), &fam, &w);
        assert!(r.passed());
    }

    #[test]
    fn candidates_must_be_minimal_generators() {
        let s = setup(&[], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        assert!(Candidate::new(&s, term(&[2, 0]), Source::I(0)).is_err());
    }

    #[test]
    fn fc2_examples() {
        let s = setup(&[], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        assert!(check_fc2(&s, &cand(&s, &[1, 0], Source::I(0))).passed());
        let s = setup(&[&[2, 0]], vec![vec![term(&[0, 1])], vec![term(&[1, 0])]]);
        // I = (yT), x from the second module.
        let s1 = Setup::new(
            s.ctx().clone(),
            s.a().clone(),
            s.f_terms().to_vec(),
            vec![vec![term(&[0, 1])], vec![term(&[1, 0]), term(&[0, 1])]],
        )
        .unwrap();
        let mut only_y = s1.clone();
        only_y = Setup::new(
            only_y.ctx().clone(),
            only_y.a().clone(),
            only_y.f_terms().to_vec(),
            vec![vec![term(&[0, 1])]],
        )
        .unwrap();
        let x_from_j = Candidate::new(&only_y, term(&[1, 0]), Source::J).unwrap();
        assert_eq!(check_fc2(&only_y, &x_from_j).verdict, Verdict::Fail);
        let y = Candidate::new(&only_y, term(&[0, 1]), Source::I(0)).unwrap();
        assert!(check_fc2(&only_y, &y).passed());
        let _ = s;
    }

    #[test]
    fn fc3_and_sequences() {
        let s = setup(&[], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        let x = cand(&s, &[1, 0], Source::I(0));
        let r = check_fc3(&s, &x).unwrap();
        assert!(r.passed(), "{}", r.detail);
        let e = Engine::new(s.clone());
        let w = Window::for_setup(&s);
        let fam = [Source::J, Source::I(0)];
        let twice = check_sequence(&e, &[x.clone(), x.clone()], SequenceMode::WeakFc, &fam, &w).unwrap();
        assert_eq!(twice.failed_at, Some(1));
        let y = cand(&s, &[0, 1], Source::I(0));
        let weak = check_sequence(&e, &[x.clone(), y.clone()], SequenceMode::WeakFc, &fam, &w).unwrap();
        assert!(weak.passed());
        assert_eq!(weak.dims, vec![2, 1, -1]);
        let strong = check_sequence(&e, &[x, y], SequenceMode::Fc, &fam, &w).unwrap();
        assert_eq!(strong.failed_at, Some(1));
    }

    #[test]
    fn superficial_examples() {
        let s = setup(&[], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        let e = Engine::new(s.clone());
        let w = Window::for_setup(&s);
        assert!(check_superficial(&e, &cand(&s, &[1, 0], Source::I(0)), &[Source::I(0)], &w).passed());
        let s = setup(&[&[2, 0]], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        let e = Engine::new(s.clone());
        let r = check_superficial(&e, &cand(&s, &[1, 0], Source::I(0)), &[Source::I(0)], &w);
        assert_eq!(r.verdict, Verdict::Fail);
        let m = vec![term(&[1, 0]), term(&[0, 1])];
        let s = setup(&[], vec![m.clone(), m]);
        let e = Engine::new(s.clone());
        let w = Window::for_setup(&s);
        let fam = [Source::I(0), Source::I(1)];
        assert!(check_superficial(&e, &cand(&s, &[0, 1], Source::I(1)), &fam, &w).passed());
    }

    #[test]
    fn joint_reduction_examples() {
        let m = vec![term(&[1, 0]), term(&[0, 1])];
        let s = setup(&[], vec![m.clone()]);
        let e = Engine::new(s.clone());
        let w = Window::for_setup(&s);
        assert!(check_joint_reduction(&e, &[(Source::I(0), m.clone())], &w).unwrap().passed());
        let r = check_joint_reduction(&e, &[(Source::I(0), vec![term(&[1, 0])])], &w).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let s = setup(&[], vec![m.clone(), m]);
        let e = Engine::new(s.clone());
        let w = Window::for_setup(&s);
        let r = check_joint_reduction(
            &e,
            &[(Source::I(0), vec![term(&[1, 0])]), (Source::I(1), vec![term(&[0, 1])])],
            &w,
        )
        .unwrap();
        assert!(r.passed());
    }

    #[test]
    fn searches() {
        let s = setup(&[], vec![vec![term(&[1, 0]), term(&[0, 1])]]);
        let e = Engine::new(s.clone());
        let w = Window::for_setup(&s);
        let found = find_weak_fc(&e, Source::I(0), &[Source::I(0)], &w).unwrap();
        assert_eq!(found.element, term(&[1, 0]));
        let fam = maximal_weak_fc_family(&e, &w);
        assert_eq!(fam.sequence.len(), 2);
        let seq = find_fc_sequence(&e, &[1], &[Source::J, Source::I(0)], &w).unwrap();
        assert_eq!(seq.unwrap()[0].element, term(&[1, 0]));
    }
}

//! Exact verification of the identities linking mixed multiplicities with
//! Buchsbaum-Rim multiplicities on concrete monomial setups.
//!
//! A case is `Confirmed` only when both sides agree exactly and every
//! hypothesis check passed on its window. `Refuted` needs an exact inequality
//! with all checks passed. `Rejected` means a hypothesis check failed, and
//! `Conditional` covers everything the monomial search cannot settle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::graded::{Engine, FunctionKind, Source};
use crate::multiplicity::{
    br_coefficient, dimension_d, height_mod_ann, mixed_multiplicity, stabilized_difference,
    MultiIndex, Policy,
};
use crate::sequences::{
    candidates, check_fc1, check_fc2, check_sequence, check_superficial,
    check_superficial_sequence, find_fc_sequence, saturated_dim, Candidate, CheckReport,
    SequenceMode, SequenceReport, Verdict, Window,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Mixed multiplicity equals `e^j_BR(J; M̄_t*)` for an (FC)-sequence.
    Teo1,
    /// Same with the unsaturated quotient when `t` is below the height.
    Teo4,
    /// `e^0(J^[D-t], I^[k]; M) = e_BR(y, x; M)`.
    Generalized,
    /// The `j > 0` form with `j` elements of `G_1`.
    CorGeneralized,
    /// Superficial sequences and the dimension criterion.
    TrungVerma,
    /// Kirby-Rees form for finite-colength modules.
    Mod3,
    /// Module restatement of `Teo1`.
    Mod1,
    /// Module restatement of `Teo4`.
    Mod2,
}

impl Theorem {
    /// The theorem whose code path a restatement uses.
    pub fn canonical(self) -> Theorem {
        match self {
            Theorem::Mod1 => Theorem::Teo1,
            Theorem::Mod2 => Theorem::Teo4,
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseVerdict {
    Confirmed,
    Conditional,
    Refuted,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub theorem: Theorem,
    pub alias_of: Option<Theorem>,
    pub index: MultiIndex,
    pub sequence: Vec<Candidate>,
    pub checks: Vec<SequenceReport>,
    pub superficial_checks: Vec<CheckReport>,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub verdict: CaseVerdict,
    /// Named side quantities (heights, dimensions, alternative right-hand sides).
    pub facts: BTreeMap<String, i64>,
    pub notes: Vec<String>,
}

impl VerificationCase {
    fn new(theorem: Theorem, index: MultiIndex) -> Self {
        VerificationCase {
            theorem,
            alias_of: None,
            index,
            sequence: Vec::new(),
            checks: Vec::new(),
            superficial_checks: Vec::new(),
            lhs: None,
            rhs: None,
            verdict: CaseVerdict::Conditional,
            facts: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn checks_verdict(&self) -> Verdict {
        let all = self
            .checks
            .iter()
            .map(|c| c.verdict)
            .chain(self.superficial_checks.iter().map(|c| c.verdict));
        let mut out = Verdict::Pass;
        for v in all {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }

    /// Sets the verdict from the checks and the two sides.
    fn decide(&mut self) {
        self.verdict = match (self.checks_verdict(), self.lhs, self.rhs) {
            (Verdict::Fail, _, _) => CaseVerdict::Rejected,
            (Verdict::Inconclusive, _, _) => CaseVerdict::Conditional,
            (Verdict::Pass, Some(l), Some(r)) if l == r => CaseVerdict::Confirmed,
            (Verdict::Pass, Some(_), Some(_)) => CaseVerdict::Refuted,
            _ => CaseVerdict::Conditional,
        };
    }
}

/// Sampling options shared by all verifications.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessOptions {
    pub policy: Policy,
    /// `None` uses [`Window::for_setup`].
    pub window: Option<Window>,
}

impl HarnessOptions {
    fn window(&self, engine: &Engine) -> Window {
        self.window.unwrap_or_else(|| Window::for_setup(engine.setup()))
    }

    pub fn doubled(&self, engine: &Engine) -> HarnessOptions {
        HarnessOptions {
            policy: self.policy.doubled(),
            window: Some(self.window(engine).doubled()),
        }
    }
}

/// `(J, I_1, ..., I_q)`: the family sequences are checked against.
pub fn j_family(q: usize) -> Vec<Source> {
    std::iter::once(Source::J).chain((0..q).map(Source::I)).collect()
}

fn shape_of(cs: &[Candidate], q: usize) -> Option<Vec<u32>> {
    let mut shape = vec![0u32; q];
    for c in cs {
        match c.source {
            Source::I(i) if i < q => shape[i] += 1,
            _ => return None,
        }
    }
    Some(shape)
}

/// Finds or checks the (FC)-sequence of shape `index.k`; fills `sequence` and `checks`.
fn fc_sequence_for(
    engine: &Engine,
    case: &mut VerificationCase,
    cs: Option<Vec<Candidate>>,
    window: &Window,
) -> Result<bool> {
    let q = engine.setup().q();
    let family = j_family(q);
    let cs = match cs {
        Some(cs) => cs,
        None => match find_fc_sequence(engine, &case.index.k, &family, window)? {
            Some(cs) => cs,
            None => {
                case.notes.push(
                    "no monomial (FC)-sequence of the requested shape was found".into(),
                );
                return Ok(false);
            }
        },
    };
    if shape_of(&cs, q).as_deref() != Some(case.index.k.as_slice()) {
        case.notes.push(format!(
            "sequence shape does not match k = {:?}",
            case.index.k
        ));
        case.sequence = cs;
        case.verdict = CaseVerdict::Rejected;
        return Ok(false);
    }
    let report = check_sequence(engine, &cs, SequenceMode::Fc, &family, window)?;
    case.facts.insert(
        "dim_after_sequence".into(),
        *report.dims.last().unwrap_or(&-1),
    );
    case.sequence = cs;
    case.checks.push(report);
    Ok(true)
}

/// `e^j(J^[k0], I^[k]; M) = e^j_BR(J; M / ((x) M : 𝓘^∞))` for an (FC)-sequence `x`.
///
/// When `cs` is `None` a monomial sequence is searched for; if none exists the
/// case is conditional and the positivity statement is recorded as a probe.
pub fn verify_teo1(
    engine: &Engine,
    cs: Option<Vec<Candidate>>,
    index: &MultiIndex,
    opts: &HarnessOptions,
) -> Result<VerificationCase> {
    let mut case = VerificationCase::new(Theorem::Teo1, index.clone());
    let window = opts.window(engine);
    let lhs = mixed_multiplicity(engine, index, &opts.policy)?.value;
    case.lhs = Some(lhs);
    let have_sequence = fc_sequence_for(engine, &mut case, cs, &window)?;
    if case.verdict == CaseVerdict::Rejected {
        return Ok(case);
    }
    if index.k0 == 0 {
        case.notes.push(format!("k0 = 0 entry has value {lhs}"));
    }
    if !have_sequence {
        if index.k0 > 0 && lhs != 0 {
            case.notes.push(
                "nonzero coefficient without a monomial (FC)-sequence: the search is incomplete"
                    .into(),
            );
        }
        case.verdict = CaseVerdict::Conditional;
        return Ok(case);
    }
    let elems: Vec<_> = case.sequence.iter().map(|c| c.element.clone()).collect();
    let quotient = engine.setup().quotient(&elems).saturated();
    let rhs_engine = engine.derive(quotient);
    let (rhs, _) = br_coefficient(&rhs_engine, index.k0, index.j, &opts.policy)?;
    case.rhs = Some(rhs);
    case.decide();
    if index.k0 > 0 && case.verdict == CaseVerdict::Confirmed && lhs == 0 {
        case.notes.push(
            "an (FC)-sequence exists on the window yet the coefficient vanishes".into(),
        );
    }
    Ok(case)
}

/// `e^j(J^[k0], I^[k]; M) = e^j_BR(J; M / (x) M)` when `t < ht(𝓘 + Ann M / Ann M)`.
/// Also records the saturated right-hand side, which must agree.
pub fn verify_teo4(
    engine: &Engine,
    cs: Option<Vec<Candidate>>,
    index: &MultiIndex,
    opts: &HarnessOptions,
) -> Result<VerificationCase> {
    let height = height_mod_ann(engine.setup());
    let t = index.t();
    if index.k0 == 0 {
        return Err(CoreError::ZeroJOrder);
    }
    if height.value <= t as i64 {
        return Err(CoreError::HeightPreconditionFailed {
            height: height.value,
            t,
        });
    }
    let mut case = VerificationCase::new(Theorem::Teo4, index.clone());
    case.facts.insert("height".into(), height.value);
    if height.empty_locus {
        case.notes.push("I + Ann M defines the empty set; height capped at dim + 1".into());
    }
    let window = opts.window(engine);
    case.lhs = Some(mixed_multiplicity(engine, index, &opts.policy)?.value);
    if !fc_sequence_for(engine, &mut case, cs, &window)? {
        if case.verdict != CaseVerdict::Rejected {
            case.verdict = CaseVerdict::Conditional;
        }
        return Ok(case);
    }
    let elems: Vec<_> = case.sequence.iter().map(|c| c.element.clone()).collect();
    let plain = engine.setup().quotient(&elems);
    let plain_engine = engine.derive(plain.clone());
    let (rhs, _) = br_coefficient(&plain_engine, index.k0, index.j, &opts.policy)?;
    let sat_engine = engine.derive(plain.saturated());
    let (rhs_sat, _) = br_coefficient(&sat_engine, index.k0, index.j, &opts.policy)?;
    case.rhs = Some(rhs);
    case.facts.insert("rhs_saturated".into(), rhs_sat);
    case.facts.insert("saturated_agrees".into(), (rhs == rhs_sat) as i64);
    case.decide();
    Ok(case)
}

/// `e^j(J^[D-t-j], I^[k]; M) = e_BR(y, x; M)` with the `x` an (FC)-sequence
/// from the `I_i` and the `y` drawn from `J` (and `G_1` when `index.j > 0`).
/// `seqs` is `(ys, xs)`; when `None` a monomial pair is searched for.
pub fn verify_generalized(
    engine: &Engine,
    seqs: Option<(Vec<Candidate>, Vec<Candidate>)>,
    index: &MultiIndex,
    opts: &HarnessOptions,
) -> Result<VerificationCase> {
    let given_g1 = seqs
        .as_ref()
        .is_some_and(|(ys, _)| ys.iter().any(|y| y.source == Source::G1));
    let theorem = if index.j > 0 || given_g1 {
        Theorem::CorGeneralized
    } else {
        Theorem::Generalized
    };
    let setup = engine.setup();
    let q = setup.q();
    let d = dimension_d(setup)?;
    let t = index.t();
    let height = height_mod_ann(setup);
    if height.value <= t as i64 {
        return Err(CoreError::HeightPreconditionFailed {
            height: height.value,
            t,
        });
    }
    if index.total() != d {
        return Err(CoreError::IndexDegree {
            expected: d,
            found: index.total(),
        });
    }
    let mut case = VerificationCase::new(theorem, index.clone());
    case.facts.insert("height".into(), height.value);
    let window = opts.window(engine);
    case.lhs = Some(mixed_multiplicity(engine, index, &opts.policy)?.value);
    let seqs = match seqs {
        Some(seqs) => Some(seqs),
        None => find_generalized_sequences(engine, index, opts)?,
    };
    let Some((ys, xs)) = seqs else {
        case.notes.push("no monomial sequences of the requested shape were found".into());
        return Ok(case);
    };

    let g1_count = ys.iter().filter(|y| y.source == Source::G1).count() as u32;
    let shape_ok = shape_of(&xs, q).as_deref() == Some(index.k.as_slice())
        && ys.len() as i64 == d - t as i64
        && ys.iter().all(|y| matches!(y.source, Source::J | Source::G1))
        && g1_count == index.j;
    case.sequence = xs.iter().chain(ys.iter()).cloned().collect();
    if !shape_ok {
        case.notes.push("sequence shape does not match the index".into());
        case.verdict = CaseVerdict::Rejected;
        return Ok(case);
    }
    let mut family = j_family(q);
    if theorem == Theorem::CorGeneralized {
        family.insert(0, Source::G1);
    }
    let x_report = check_sequence(engine, &xs, SequenceMode::Fc, &family, &window)?;
    let x_ok = x_report.passed();
    case.checks.push(x_report);
    if x_ok {
        let after_x = engine.derive(setup.quotient(&xs.iter().map(|c| c.element.clone()).collect::<Vec<_>>()));
        case.checks.push(check_sequence(
            &after_x,
            &ys,
            SequenceMode::WeakFc,
            &family,
            &window,
        )?);
    }
    let generated: Vec<_> = case.sequence.iter().map(|c| c.element.clone()).collect();
    match setup.with_j(generated) {
        Ok(gen_setup) => {
            let gen_engine = engine.derive(gen_setup);
            let (rhs, _) = br_coefficient(&gen_engine, d as u32, 0, &opts.policy)?;
            case.rhs = Some(rhs);
            case.decide();
        }
        Err(CoreError::ColengthError(msg)) => {
            case.notes.push(format!("generated module: {msg}"));
            case.decide();
            if case.verdict != CaseVerdict::Rejected {
                case.verdict = CaseVerdict::Conditional;
            }
        }
        Err(e) => return Err(e),
    }
    Ok(case)
}

/// For a superficial sequence generating `Q`: `e^0(J^[k0+1], I^[k]; M) ≠ 0`
/// exactly when `M / (QM : 𝓘^∞)` has dimension `k0 + 1`, and then it equals
/// `e_BR(J; M / (QM : 𝓘^∞))`. `index.k0` is the `k0` of that statement.
pub fn verify_trung_verma(
    engine: &Engine,
    cs: Option<Vec<Candidate>>,
    index: &MultiIndex,
    opts: &HarnessOptions,
) -> Result<VerificationCase> {
    let setup = engine.setup();
    let q = setup.q();
    let d = dimension_d(setup)?;
    if index.j != 0 || index.total() + 1 != d {
        return Err(CoreError::IndexDegree {
            expected: d - 1,
            found: index.total(),
        });
    }
    let lhs_index = MultiIndex::new(0, index.k0 + 1, index.k.clone());
    let mut case = VerificationCase::new(Theorem::TrungVerma, lhs_index.clone());
    let window = opts.window(engine);
    let Some(cs) = cs.or_else(|| find_superficial_sequence(engine, &index.k, opts)) else {
        case.lhs = Some(mixed_multiplicity(engine, &lhs_index, &opts.policy)?.value);
        case.notes.push("no monomial superficial sequence of the requested shape was found".into());
        return Ok(case);
    };
    let sorted = cs.windows(2).all(|w| w[0].source <= w[1].source);
    case.sequence = cs.clone();
    if shape_of(&cs, q).as_deref() != Some(index.k.as_slice()) || !sorted {
        case.notes.push("sequence is not a non-decreasing sequence of the requested shape".into());
        case.verdict = CaseVerdict::Rejected;
        return Ok(case);
    }
    let family = j_family(q);
    case.superficial_checks = check_superficial_sequence(engine, &cs, &family, &window);
    let lhs = mixed_multiplicity(engine, &lhs_index, &opts.policy)?.value;
    case.lhs = Some(lhs);
    if case.checks_verdict() == Verdict::Fail {
        case.verdict = CaseVerdict::Rejected;
        return Ok(case);
    }
    let weak = check_sequence(engine, &cs, SequenceMode::WeakFc, &family, &window)?;
    case.facts.insert("weak_fc".into(), weak.passed() as i64);
    let elems: Vec<_> = cs.iter().map(|c| c.element.clone()).collect();
    let quotient = setup.quotient(&elems).saturated();
    let dim = saturated_dim(&quotient);
    case.facts.insert("dim".into(), dim);
    let criterion = (lhs != 0) == (dim == index.k0 as i64 + 1);
    case.facts.insert("dimension_criterion".into(), criterion as i64);
    let rhs_engine = engine.derive(quotient);
    let (rhs, _) = br_coefficient(&rhs_engine, index.k0 + 1, 0, &opts.policy)?;
    case.rhs = Some(rhs);
    case.verdict = if !criterion {
        CaseVerdict::Refuted
    } else if lhs == 0 {
        case.notes.push("coefficient vanishes and the dimension is not k0 + 1".into());
        CaseVerdict::Confirmed
    } else if lhs == rhs {
        CaseVerdict::Confirmed
    } else {
        CaseVerdict::Refuted
    };
    if case.checks_verdict() == Verdict::Inconclusive && case.verdict == CaseVerdict::Confirmed {
        case.verdict = CaseVerdict::Conditional;
    }
    Ok(case)
}

/// For finite-colength `E_i`: the coefficient of `p^j r^k` in
/// `ℓ(M_{|r|+p} / I^r M_p)` equals `e_BR` of the module generated by a
/// weak-(FC)-sequence with `j` elements of `G_1` and `k_i` of `I_i`.
pub fn verify_mod3(
    engine: &Engine,
    sequence: Option<Vec<Candidate>>,
    j: u32,
    k: Vec<u32>,
    opts: &HarnessOptions,
) -> Result<VerificationCase> {
    let setup = engine.setup();
    let q = setup.q();
    let d = dimension_d(setup)?;
    let index = MultiIndex::new(j, 0, k.clone());
    if index.total() != d {
        return Err(CoreError::IndexDegree {
            expected: d,
            found: index.total(),
        });
    }
    for i in 0..q {
        let member = setup.member(Source::I(i));
        if setup.member(Source::G1).count_outside(member, setup.b()).is_none() {
            return Err(CoreError::ColengthError(format!(
                "E{} does not have finite colength",
                i + 1
            )));
        }
    }
    let mut case = VerificationCase::new(Theorem::Mod3, index.clone());
    let window = opts.window(engine);
    let mut order = vec![j];
    order.extend_from_slice(&k);
    let (lhs, _) =
        stabilized_difference(engine, FunctionKind::KirbyRees, &order, &opts.policy, d, true)?;
    case.lhs = Some(lhs);
    let Some(sequence) = sequence.or_else(|| find_mod3_sequence(engine, j, &k, opts)) else {
        case.notes.push("no monomial weak-(FC)-sequence of the requested shape was found".into());
        return Ok(case);
    };
    let g1_count = sequence.iter().filter(|c| c.source == Source::G1).count() as u32;
    let i_part: Vec<Candidate> = sequence
        .iter()
        .filter(|c| c.source != Source::G1)
        .cloned()
        .collect();
    case.sequence = sequence.clone();
    if g1_count != j || shape_of(&i_part, q).as_deref() != Some(k.as_slice()) {
        case.notes.push("sequence shape does not match (j, k)".into());
        case.verdict = CaseVerdict::Rejected;
        return Ok(case);
    }
    let family: Vec<Source> = std::iter::once(Source::G1).chain((0..q).map(Source::I)).collect();
    case.checks
        .push(check_sequence(engine, &sequence, SequenceMode::WeakFc, &family, &window)?);
    let generated: Vec<_> = sequence.iter().map(|c| c.element.clone()).collect();
    match setup.with_j(generated) {
        Ok(gen_setup) => {
            let gen_engine = engine.derive(gen_setup);
            let (rhs, _) = br_coefficient(&gen_engine, d as u32, 0, &opts.policy)?;
            case.rhs = Some(rhs);
            case.decide();
        }
        Err(CoreError::ColengthError(msg)) => {
            case.notes.push(format!("generated module: {msg}"));
            case.decide();
            if case.verdict != CaseVerdict::Rejected {
                case.verdict = CaseVerdict::Conditional;
            }
        }
        Err(e) => return Err(e),
    }
    Ok(case)
}

const SEARCH_BUDGET: usize = 256;

/// Depth-first search for a monomial sequence drawing `order[i]` at step `i`,
/// each element accepted by `accept` in the quotient by its predecessors.
fn search<F>(engine: &Engine, order: &[Source], accept: &F, chosen: &mut Vec<Candidate>, budget: &mut usize) -> Option<Vec<Candidate>>
where
    F: Fn(&Engine, &Candidate) -> bool,
{
    let Some((&source, rest)) = order.split_first() else {
        return Some(chosen.clone());
    };
    for c in candidates(engine.setup(), source) {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if !accept(engine, &c) {
            continue;
        }
        let next = engine.derive(engine.setup().quotient(std::slice::from_ref(&c.element)));
        chosen.push(c);
        if let Some(found) = search(&next, rest, accept, chosen, budget) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

fn i_order(k: &[u32]) -> Vec<Source> {
    k.iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat(Source::I(i)).take(n as usize))
        .collect()
}

/// Monomial `(ys, xs)` for [`verify_generalized`]: an (FC)-sequence `xs` of
/// shape `index.k`, then `index.j` elements of `G_1` and the rest of `J`,
/// weak-(FC) in the quotient by `xs`.
pub fn find_generalized_sequences(
    engine: &Engine,
    index: &MultiIndex,
    opts: &HarnessOptions,
) -> Result<Option<(Vec<Candidate>, Vec<Candidate>)>> {
    let setup = engine.setup();
    let d = dimension_d(setup)?;
    let t = index.t() as i64;
    if t > d || (index.j as i64) > d - t {
        return Ok(None);
    }
    let window = opts.window(engine);
    let mut family = j_family(setup.q());
    if index.j > 0 {
        family.insert(0, Source::G1);
    }
    let Some(xs) = find_fc_sequence(engine, &index.k, &j_family(setup.q()), &window)? else {
        return Ok(None);
    };
    let elems: Vec<_> = xs.iter().map(|c| c.element.clone()).collect();
    let after = engine.derive(setup.quotient(&elems));
    let mut order = vec![Source::G1; index.j as usize];
    order.extend(std::iter::repeat(Source::J).take((d - t) as usize - index.j as usize));
    let accept = |e: &Engine, c: &Candidate| {
        check_fc2(e.setup(), c).passed() && check_fc1(e, c, &family, &window).passed()
    };
    let mut budget = SEARCH_BUDGET;
    Ok(search(&after, &order, &accept, &mut Vec::new(), &mut budget).map(|ys| (ys, xs)))
}

/// A monomial superficial sequence of shape `k` with sources non-decreasing.
pub fn find_superficial_sequence(engine: &Engine, k: &[u32], opts: &HarnessOptions) -> Option<Vec<Candidate>> {
    let window = opts.window(engine);
    let family = j_family(engine.setup().q());
    let accept = |e: &Engine, c: &Candidate| check_superficial(e, c, &family, &window).passed();
    let mut budget = SEARCH_BUDGET;
    search(engine, &i_order(k), &accept, &mut Vec::new(), &mut budget)
}

/// A monomial weak-(FC)-sequence with `j` elements of `G_1` followed by `k_i`
/// elements of each `I_i`, checked against `(G_1, I_1, ..., I_q)`.
pub fn find_mod3_sequence(engine: &Engine, j: u32, k: &[u32], opts: &HarnessOptions) -> Option<Vec<Candidate>> {
    let window = opts.window(engine);
    let q = engine.setup().q();
    let family: Vec<Source> = std::iter::once(Source::G1).chain((0..q).map(Source::I)).collect();
    let mut order = vec![Source::G1; j as usize];
    order.extend(i_order(k));
    let accept = |e: &Engine, c: &Candidate| {
        check_fc2(e.setup(), c).passed() && check_fc1(e, c, &family, &window).passed()
    };
    let mut budget = SEARCH_BUDGET;
    search(engine, &order, &accept, &mut Vec::new(), &mut budget)
}

/// Runs a restatement through the code path of the theorem it restates.
pub fn verify_alias(
    theorem: Theorem,
    engine: &Engine,
    cs: Option<Vec<Candidate>>,
    index: &MultiIndex,
    opts: &HarnessOptions,
) -> Result<VerificationCase> {
    let mut case = match theorem.canonical() {
        Theorem::Teo1 => verify_teo1(engine, cs, index, opts)?,
        Theorem::Teo4 => verify_teo4(engine, cs, index, opts)?,
        other => {
            return Err(CoreError::InvalidSetup(format!(
                "{other:?} has no restatement"
            )))
        }
    };
    if theorem != theorem.canonical() {
        case.alias_of = Some(case.theorem);
        case.theorem = theorem;
    }
    Ok(case)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{maximal_terms, Setup};
    use crate::module::{BiMonomial, RingContext};
    use crate::monomial::MonomialIdeal;

    fn term(x: &[u32]) -> BiMonomial {
        BiMonomial::term(x, 0, 1)
    }

    fn maximal() -> Engine {
        let c = RingContext::new(2, 1).unwrap();
        Engine::new(
            Setup::new(c.clone(), MonomialIdeal::zero(2), maximal_terms(&c), vec![maximal_terms(&c)])
                .unwrap(),
        )
    }

    fn cand(e: &Engine, x: &[u32], s: Source) -> Candidate {
        Candidate::new(e.setup(), term(x), s).unwrap()
    }

    #[test]
    fn teo1_and_teo4_on_maximal_ideal() {
        let e = maximal();
        let idx = MultiIndex::new(0, 1, vec![1]);
        let opts = HarnessOptions::default();
        let c1 = verify_teo1(&e, Some(vec![cand(&e, &[1, 0], Source::I(0))]), &idx, &opts).unwrap();
        assert_eq!((c1.lhs, c1.rhs, c1.verdict), (Some(1), Some(1), CaseVerdict::Confirmed));
        let c4 = verify_teo4(&e, None, &idx, &opts).unwrap();
        assert_eq!(c4.verdict, CaseVerdict::Confirmed);
        assert_eq!(c4.facts["saturated_agrees"], 1);
        let t0 = verify_teo1(&e, None, &MultiIndex::new(0, 2, vec![0]), &opts).unwrap();
        assert_eq!(t0.verdict, CaseVerdict::Confirmed);
        let bad = verify_teo4(&e, None, &MultiIndex::new(0, 0, vec![2]), &opts);
        assert!(matches!(bad, Err(CoreError::ZeroJOrder)));
        let bad = verify_teo4(&e, None, &MultiIndex::new(0, 1, vec![2]), &opts);
        assert!(matches!(bad, Err(CoreError::HeightPreconditionFailed { .. })));
    }

    #[test]
    fn generalized_and_corollary() {
        let e = maximal();
        let opts = HarnessOptions::default();
        let ys = vec![cand(&e, &[1, 0], Source::J)];
        let xs = vec![cand(&e, &[0, 1], Source::I(0))];
        let c = verify_generalized(&e, Some((ys, xs)), &MultiIndex::new(0, 1, vec![1]), &opts).unwrap();
        assert_eq!((c.lhs, c.rhs), (Some(1), Some(1)));
        assert_eq!(c.verdict, CaseVerdict::Confirmed, "{c:?}");
    }

    #[test]
    fn trung_verma_and_mod3() {
        let e = maximal();
        let opts = HarnessOptions::default();
        let c = verify_trung_verma(&e, Some(vec![cand(&e, &[1, 0], Source::I(0))]), &MultiIndex::new(0, 0, vec![1]), &opts)
            .unwrap();
        assert_eq!(c.verdict, CaseVerdict::Confirmed, "{c:?}");
        assert_eq!(c.facts["dim"], 1);
        let seq = vec![cand(&e, &[1, 0], Source::I(0)), cand(&e, &[0, 1], Source::I(0))];
        let m = verify_mod3(&e, Some(seq), 0, vec![2], &opts).unwrap();
        assert_eq!((m.lhs, m.rhs, m.verdict), (Some(1), Some(1), CaseVerdict::Confirmed));
        let bad = verify_mod3(&e, Some(vec![]), 0, vec![1], &opts);
        assert!(matches!(bad, Err(CoreError::IndexDegree { .. })));
    }
}

use mixmult_core::corpus::{random_cases, Corpus, CorpusCase};
use mixmult_core::harness::{
    verify_generalized, verify_mod3, verify_teo1, verify_teo4, verify_trung_verma, CaseVerdict,
    HarnessOptions,
};
use mixmult_core::multiplicity::{
    buchsbaum_rim, detect_degree, dimension_d, height_mod_ann, mixed_multiplicity, MultiIndex,
    Policy,
};
use mixmult_core::sequences::{
    candidates, check_fc1, check_fc2, check_joint_reduction, check_superficial,
    maximal_weak_fc_family, Window,
};
use mixmult_core::{CoreError, Engine, FunctionKind, Source};

fn engine(case: &CorpusCase) -> Engine {
    Engine::new(case.spec.setup().unwrap())
}

fn live_cases() -> Vec<CorpusCase> {
    Corpus::shipped()
        .cases
        .into_iter()
        .filter(|c| dimension_d(&c.spec.setup().unwrap()).is_ok())
        .collect()
}

#[test]
fn degree_and_multiplicities_match_corpus() {
    let policy = Policy::default();
    for case in Corpus::shipped().cases {
        let e = engine(&case);
        let d = match dimension_d(e.setup()) {
            Ok(d) => d,
            Err(CoreError::TrivialModule(_)) => {
                assert!(case.expected.mixed.iter().all(|m| m.value == 0), "{}", case.spec.name);
                continue;
            }
            Err(err) => panic!("{}: {err}", case.spec.name),
        };
        let ev = detect_degree(&e, FunctionKind::Mixed, &policy).unwrap();
        assert_eq!(ev.degree, d, "{}", case.spec.name);
        assert_eq!(d, case.expected.degree as i64, "{}", case.spec.name);
        for m in &case.expected.mixed {
            let got = mixed_multiplicity(&e, &m.index, &policy).unwrap().value;
            assert_eq!(got, m.value, "{} at {:?}", case.spec.name, m.index);
        }
        if let Some(deg) = case.expected.br_degree {
            for (j, want) in case.expected.br.iter().enumerate() {
                let got = buchsbaum_rim(&e, j as u32, &policy).unwrap();
                assert_eq!(got.degree, deg as i64, "{}", case.spec.name);
                assert_eq!(got.value, *want, "{} br e^{j}", case.spec.name);
            }
        }
    }
}

#[test]
fn pure_j_coefficients_are_buchsbaum_rim_of_saturation() {
    let policy = Policy::default();
    for case in live_cases() {
        let e = engine(&case);
        let sat = e.derive(e.setup().saturated());
        let d = case.expected.degree;
        let q = case.spec.e.len();
        for j in 0..=d {
            let idx = MultiIndex::new(j, d - j, vec![0; q]);
            let lhs = mixed_multiplicity(&e, &idx, &policy).unwrap().value;
            let rhs = buchsbaum_rim(&sat, j, &policy).unwrap().value;
            assert_eq!(lhs, rhs, "{} j={j}", case.spec.name);
        }
    }
}

#[test]
fn quotient_formulas_hold_and_survive_doubling() {
    let opts = HarnessOptions::default();
    let mut confirmed = 0;
    for case in live_cases() {
        let e = engine(&case);
        let d = case.expected.degree;
        let height = height_mod_ann(e.setup()).value;
        for idx in MultiIndex::all_of_total(case.spec.e.len(), d) {
            if idx.j > 0 {
                continue;
            }
            let c1 = verify_teo1(&e, None, &idx, &opts).unwrap();
            assert!(
                matches!(c1.verdict, CaseVerdict::Confirmed | CaseVerdict::Conditional),
                "{} {:?}: {c1:?}",
                case.spec.name,
                idx
            );
            if c1.verdict != CaseVerdict::Confirmed {
                continue;
            }
            confirmed += 1;
            let again = verify_teo1(&e, Some(c1.sequence.clone()), &idx, &opts.doubled(&e)).unwrap();
            assert_eq!(again.verdict, CaseVerdict::Confirmed, "{} {:?}", case.spec.name, idx);
            if idx.k0 > 0 && height > idx.t() as i64 {
                let c4 = verify_teo4(&e, Some(c1.sequence.clone()), &idx, &opts).unwrap();
                assert_eq!(c4.verdict, CaseVerdict::Confirmed, "{} {:?}", case.spec.name, idx);
                assert_eq!(c4.facts["saturated_agrees"], 1, "{} {:?}", case.spec.name, idx);
            }
        }
    }
    assert!(confirmed > 30, "only {confirmed} confirmed cases");
}

#[test]
fn superficial_candidates_are_weak_fc() {
    let mut pairs = 0;
    let mut superficial = 0;
    for seed in 0..12 {
        for spec in random_cases(1000 + seed, 4) {
            let e = Engine::new(spec.setup().unwrap());
            let window = Window::for_setup(e.setup());
            let family: Vec<Source> =
                std::iter::once(Source::J).chain((0..spec.e.len()).map(Source::I)).collect();
            for i in 0..spec.e.len() {
                for c in candidates(e.setup(), Source::I(i)) {
                    pairs += 1;
                    if check_superficial(&e, &c, &family, &window).passed() {
                        superficial += 1;
                        assert!(check_fc2(e.setup(), &c).passed(), "{} {c:?}", spec.name);
                        assert!(check_fc1(&e, &c, &family, &window).passed(), "{} {c:?}", spec.name);
                    }
                }
            }
        }
    }
    assert!(pairs >= 50 && superficial > 0, "{pairs} pairs, {superficial} superficial");
}

#[test]
fn maximal_families_are_joint_reductions() {
    let mut maximal = 0;
    for case in live_cases() {
        let e = engine(&case);
        let window = Window::for_setup(e.setup());
        let fam = maximal_weak_fc_family(&e, &window);
        if !fam.maximal {
            continue;
        }
        maximal += 1;
        let report = check_joint_reduction(&e, &fam.reductions, &window).unwrap();
        assert!(report.passed(), "{}: {report:?}", case.spec.name);
    }
    assert!(maximal >= 10, "only {maximal} maximal families");
}

#[test]
fn generalized_identity_and_permuted_xs() {
    let opts = HarnessOptions::default();
    let corpus = Corpus::shipped();
    for name in ["maximal-plane", "two-ideals", "space"] {
        let case = corpus.case(name).unwrap();
        let e = engine(case);
        let q = case.spec.e.len();
        let d = case.expected.degree;
        let mut k = vec![0; q];
        k[0] = 1;
        let idx = MultiIndex::new(0, d - 1, k);
        let c = verify_generalized(&e, None, &idx, &opts).unwrap();
        assert_eq!(c.verdict, CaseVerdict::Confirmed, "{name}: {c:?}");
        // The right-hand side only sees the ideal the xs generate.
        let (xs, ys) = c.sequence.split_at(idx.t());
        let mut xs = xs.to_vec();
        xs.reverse();
        let again = verify_generalized(&e, Some((ys.to_vec(), xs)), &idx, &opts).unwrap();
        if again.verdict != CaseVerdict::Rejected {
            assert_eq!(again.rhs, c.rhs, "{name}");
        }
        if q > 1 && height_mod_ann(e.setup()).value > 2 {
            let idx = MultiIndex::new(0, d - 2, vec![1, 1]);
            let c = verify_generalized(&e, None, &idx, &opts).unwrap();
            assert_eq!(c.verdict, CaseVerdict::Confirmed, "{name}: {c:?}");
        }
    }
}

#[test]
fn not_found_cases_are_conditional() {
    let opts = HarnessOptions::default();
    let corpus = Corpus::shipped();
    for case in corpus.cases.iter().filter(|c| c.spec.has_tag("not-found")) {
        let e = engine(case);
        let d = case.expected.degree;
        let idx = MultiIndex::new(0, d - 1, vec![1]);
        let c = verify_teo1(&e, None, &idx, &opts).unwrap();
        assert_eq!(c.verdict, CaseVerdict::Conditional, "{}", case.spec.name);
        assert!(c.lhs.is_some() && c.rhs.is_none());
    }
}

#[test]
fn trung_verma_dimension_criterion() {
    let opts = HarnessOptions::default();
    let corpus = Corpus::shipped();
    let case = corpus.case("maximal-plane").unwrap();
    let c = verify_trung_verma(&engine(case), None, &MultiIndex::new(0, 0, vec![1]), &opts).unwrap();
    assert_eq!(c.verdict, CaseVerdict::Confirmed, "{c:?}");
    assert_eq!(c.facts["dimension_criterion"], 1);

    // A principal I_1 kills the quotient after one element, so the coefficient vanishes.
    let case = corpus.case("principal-i").unwrap();
    let c = verify_trung_verma(&engine(case), None, &MultiIndex::new(0, 0, vec![1]), &opts).unwrap();
    assert_eq!((c.lhs, c.verdict), (Some(0), CaseVerdict::Confirmed), "{c:?}");
}

#[test]
fn kirby_rees_form_on_finite_colength() {
    let opts = HarnessOptions::default();
    let corpus = Corpus::shipped();
    let case = corpus.case("maximal-plane").unwrap();
    let c = verify_mod3(&engine(case), None, 0, vec![2], &opts).unwrap();
    assert_eq!(c.verdict, CaseVerdict::Confirmed, "{c:?}");
    let case = corpus.case("maximal-rank-two").unwrap();
    let c = verify_mod3(&engine(case), None, 0, vec![3], &opts).unwrap();
    assert!(matches!(c.verdict, CaseVerdict::Confirmed | CaseVerdict::Conditional), "{c:?}");
    assert!(c.lhs.is_some());
}

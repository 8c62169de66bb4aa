use mixmult_core::corpus::{random_cases, Corpus};
use mixmult_core::graded::grid_points;
use mixmult_core::oracle::count_between;
use mixmult_core::{CoreError, Engine, FunctionKind};

/// Engine value with an infinite length mapped to `None`, as the oracle reports it.
fn finite(engine: &Engine, kind: FunctionKind, coords: &[u64]) -> Option<u64> {
    match engine.value(kind, coords) {
        Ok(v) => Some(v),
        Err(CoreError::Cell { source, .. }) if matches!(*source, CoreError::InfiniteLength(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn shipped_samples_match_engine() {
    for case in Corpus::shipped().cases {
        let engine = Engine::new(case.spec.setup().unwrap());
        for s in &case.expected.samples {
            let coords: Vec<u64> = s.coords.iter().map(|&v| v as u64).collect();
            assert_eq!(
                engine.value(FunctionKind::Mixed, &coords).unwrap(),
                s.value,
                "{} at {:?}",
                case.spec.name,
                s.coords
            );
        }
    }
}

#[test]
fn random_setups_match_oracle_on_all_kinds() {
    for spec in random_cases(7, 10) {
        let engine = Engine::new(spec.setup().unwrap());
        let oracle = spec.oracle();
        let q = spec.e.len();
        for c in grid_points(&vec![(0, 3); 2]) {
            let v = engine.value(FunctionKind::BuchsbaumRim, &c).unwrap();
            assert_eq!(Some(v), oracle.buchsbaum_rim(c[0] as u32, c[1] as u32), "{} br {c:?}", spec.name);
        }
        for c in grid_points(&vec![(0, 2); q + 1]) {
            let r: Vec<u32> = c[1..].iter().map(|&v| v as u32).collect();
            let v = finite(&engine, FunctionKind::KirbyRees, &c);
            assert_eq!(v, oracle.kirby_rees(c[0] as u32, &r), "{} kr {c:?}", spec.name);
        }
        for c in grid_points(&vec![(1, 3); q + 2]) {
            let coords: Vec<u32> = c.iter().map(|&v| v as u32).collect();
            let v = engine.value(FunctionKind::Mixed, &c).unwrap();
            assert_eq!(Some(v), oracle.mixed_at(&coords), "{} mixed {c:?}", spec.name);
        }
    }
}

fn power_product(parts: &[(&[Vec<u32>], u32)]) -> Vec<Vec<u32>> {
    let mut acc = vec![vec![0u32, 0]];
    for (gens, e) in parts {
        for _ in 0..*e {
            acc = acc
                .iter()
                .flat_map(|a| gens.iter().map(move |g| vec![a[0] + g[0], a[1] + g[1]]))
                .collect();
        }
    }
    acc
}

#[test]
fn staircase_lengths_decompose() {
    let corpus = Corpus::shipped();
    let case = corpus.case("staircase-x2-y3").unwrap();
    let engine = Engine::new(case.spec.setup().unwrap());
    let m = vec![vec![1, 0], vec![0, 1]];
    let i = vec![vec![2, 0], vec![0, 3]];
    let unit = vec![vec![0, 0]];
    for n in 0..5u32 {
        for r in 0..4u32 {
            let ir = power_product(&[(&i, r)]);
            let mnir = power_product(&[(&m, n), (&i, r)]);
            let direct = count_between(&ir, &mnir, 2, 0, 0, 60).unwrap();
            let whole = count_between(&unit, &mnir, 2, 0, 0, 60).unwrap();
            let part = count_between(&unit, &ir, 2, 0, 0, 60).unwrap();
            assert_eq!(direct, whole - part);
            assert_eq!(engine.h_value(n as u64, 0, &[r as u64]).unwrap(), direct, "n={n} r={r}");
        }
    }
}

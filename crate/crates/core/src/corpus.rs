//! The regression corpus: small setups with expected values produced by the
//! brute-force [`oracle`](crate::oracle), never by the engine.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::graded::{maximal_terms, Setup};
use crate::module::{BiMonomial, RingContext};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::multiplicity::MultiIndex;
use crate::oracle::{self, Oracle, Terms};

pub const CORPUS_VERSION: u32 = 1;

const SHIPPED: &str = include_str!("../corpus/corpus-v1.json");

/// A term `x^a e_slot` of a free module, `slot` zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub x: Vec<u32>,
    pub slot: usize,
}

impl Term {
    pub fn new(x: &[u32], slot: usize) -> Self {
        Term { x: x.to_vec(), slot }
    }

    pub fn to_bimonomial(&self, t_vars: usize) -> BiMonomial {
        BiMonomial::term(&self.x, self.slot, t_vars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub name: String,
    pub d: usize,
    pub p: usize,
    #[serde(default)]
    pub a: Vec<Vec<u32>>,
    /// `None` stands for `𝔪 R^p`.
    #[serde(default)]
    pub f: Option<Vec<Term>>,
    #[serde(default)]
    pub e: Vec<Vec<Term>>,
    #[serde(default)]
    pub tags: Vec<String>,
}

impl CaseSpec {
    fn f_terms(&self) -> Vec<Term> {
        match &self.f {
            Some(f) => f.clone(),
            None => (0..self.p)
                .flat_map(|slot| {
                    (0..self.d).map(move |i| {
                        let mut x = vec![0; self.d];
                        x[i] = 1;
                        Term::new(&x, slot)
                    })
                })
                .collect(),
        }
    }

    pub fn ctx(&self) -> Result<RingContext> {
        RingContext::new(self.d, self.p)
    }

    pub fn setup(&self) -> Result<Setup> {
        let ctx = self.ctx()?;
        let lift = |terms: &[Term]| terms.iter().map(|t| t.to_bimonomial(self.p)).collect::<Vec<_>>();
        let a = MonomialIdeal::new(self.d, self.a.iter().map(|g| Monomial::new(g)).collect());
        let f = match &self.f {
            Some(f) => lift(f),
            None => maximal_terms(&ctx),
        };
        Setup::new(ctx, a, f, self.e.iter().map(|t| lift(t)).collect())
    }

    pub fn oracle(&self) -> Oracle {
        let conv = |terms: &[Term]| -> Terms { terms.iter().map(|t| (t.x.clone(), t.slot)).collect() };
        let e: Vec<Terms> = self.e.iter().map(|t| conv(t)).collect();
        Oracle::new(self.d, self.p, &self.a, &conv(&self.f_terms()), &e)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub coords: Vec<u32>,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedValue {
    pub index: MultiIndex,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    /// Degree of the mixed function.
    pub degree: u32,
    /// Base coordinate at which the oracle's differences were taken.
    pub base: u32,
    pub mixed: Vec<MixedValue>,
    /// Degree of the Buchsbaum-Rim function of `(J; M)`, `None` for the zero function.
    pub br_degree: Option<u32>,
    /// `e^0..e^deg` of the Buchsbaum-Rim function of `(J; M)`.
    pub br: Vec<i64>,
    /// Mixed function values on the small grid `{0, 1, 2}^axes`.
    pub samples: Vec<Sample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub spec: CaseSpec,
    pub expected: Expected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub version: u32,
    pub seed: u64,
    pub cases: Vec<CorpusCase>,
}

impl Corpus {
    /// The corpus compiled into the crate.
    pub fn shipped() -> Corpus {
        serde_json::from_str(SHIPPED).expect("shipped corpus parses")
    }

    pub fn from_json(text: &str) -> Result<Corpus> {
        serde_json::from_str(text).map_err(|e| CoreError::InvalidSetup(format!("corpus: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus serializes") + "\n"
    }

    pub fn case(&self, name: &str) -> Option<&CorpusCase> {
        self.cases.iter().find(|c| c.spec.name == name)
    }
}

const BASES: [u32; 4] = [3, 4, 6, 8];
const DEGREE_CAP: u32 = 6;

/// Expected values for one setup from the oracle alone.
pub fn regenerate_case(spec: &CaseSpec) -> Result<CorpusCase> {
    // Validation only; nothing computed by the engine is stored.
    spec.setup()?;
    let o = spec.oracle();
    let axes = 2 + spec.e.len();
    let fail = |what: &str| CoreError::UnstableWindow(format!("{}: oracle {what}", spec.name));

    let mut mixed_fn = oracle::memoized(|c: &[u32]| o.mixed_at(c));
    let mut found = None;
    'bases: for &base in &BASES {
        let Some(degree) = oracle::degree(&mut mixed_fn, axes, base, DEGREE_CAP) else {
            continue;
        };
        let mut mixed = Vec::new();
        for idx in MultiIndex::all_of_total(spec.e.len(), degree) {
            match oracle::stable_difference(&mut mixed_fn, &idx.mixed_order(), base) {
                Some(value) => mixed.push(MixedValue { index: idx, value }),
                None => continue 'bases,
            }
        }
        found = Some((degree, base, mixed));
        break;
    }
    let (degree, base, mixed) = found.ok_or_else(|| fail("mixed function not stable"))?;

    let mut br_fn = oracle::memoized(|c: &[u32]| o.buchsbaum_rim(c[0], c[1]));
    let mut br_found = None;
    for &b in BASES.iter().filter(|&&b| b >= base) {
        let Some(deg) = oracle::degree(&mut br_fn, 2, b, DEGREE_CAP) else {
            continue;
        };
        if (0..3).all(|n| br_fn(&[b + n, b]) == Some(0)) {
            br_found = Some((None, Vec::new()));
            break;
        }
        let values = (0..=deg)
            .map(|j| oracle::stable_difference(&mut br_fn, &[deg - j, j], b))
            .collect::<Option<Vec<_>>>();
        if let Some(values) = values {
            br_found = Some((Some(deg), values));
            break;
        }
    }
    let (br_degree, br) = br_found.ok_or_else(|| fail("br function not stable"))?;

    let bounds = vec![(0u64, 2u64); axes];
    let samples = crate::graded::grid_points(&bounds)
        .into_iter()
        .map(|c| {
            let coords: Vec<u32> = c.iter().map(|&v| v as u32).collect();
            let value = mixed_fn(&coords).ok_or_else(|| fail("sample infinite"))?;
            Ok(Sample { coords, value })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CorpusCase {
        spec: spec.clone(),
        expected: Expected {
            degree,
            base,
            mixed,
            br_degree,
            br,
            samples,
        },
    })
}

/// Regenerates every case in parallel, keeping the input order.
pub fn regenerate(specs: &[CaseSpec], seed: u64) -> Result<Corpus> {
    let cases = specs
        .par_iter()
        .map(regenerate_case)
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus {
        version: CORPUS_VERSION,
        seed,
        cases,
    })
}

fn t(x: &[u32], slot: usize) -> Term {
    Term::new(x, slot)
}

fn case(name: &str, d: usize, p: usize, a: Vec<Vec<u32>>, f: Option<Vec<Term>>, e: Vec<Vec<Term>>, tags: &[&str]) -> CaseSpec {
    CaseSpec {
        name: name.into(),
        d,
        p,
        a,
        f,
        e,
        tags: tags.iter().map(|s| s.to_string()).collect(),
    }
}

/// The hand-picked cases.
pub fn builtin_cases() -> Vec<CaseSpec> {
    let m2 = vec![t(&[1, 0], 0), t(&[0, 1], 0)];
    let m22 = vec![t(&[1, 0], 0), t(&[0, 1], 0), t(&[1, 0], 1), t(&[0, 1], 1)];
    let m3 = vec![t(&[1, 0, 0], 0), t(&[0, 1, 0], 0), t(&[0, 0, 1], 0)];
    vec![
        case("maximal-plane", 2, 1, vec![], None, vec![m2.clone()], &["teo1", "teo4", "trung-verma", "mod3"]),
        case("staircase-x2-y3", 2, 1, vec![], None, vec![vec![t(&[2, 0], 0), t(&[0, 3], 0)]], &["teo1", "teo4"]),
        case("maximal-rank-two", 2, 2, vec![], None, vec![m22.clone()], &["teo1", "mod3"]),
        case("no-i", 2, 1, vec![], None, vec![], &[]),
        case("no-i-rank-two", 2, 2, vec![], None, vec![], &[]),
        case("line-module", 2, 1, vec![vec![1, 0]], None, vec![vec![t(&[0, 1], 0)]], &["teo1"]),
        case("height-zero", 2, 1, vec![vec![1, 0]], None, vec![vec![t(&[1, 0], 0)]], &[]),
        case("fc1-fails-everywhere", 2, 1, vec![], None, vec![vec![t(&[3, 1], 0), t(&[2, 2], 0)]], &["not-found"]),
        case("fc2-fails-everywhere", 2, 1, vec![vec![1, 1]], None, vec![m2.clone()], &["not-found"]),
        case("principal-i", 2, 1, vec![], None, vec![vec![t(&[1, 0], 0)]], &["trung-verma"]),
        case("two-ideals", 2, 1, vec![], None, vec![m2.clone(), vec![t(&[2, 0], 0), t(&[0, 2], 0)]], &["teo1"]),
        case("two-ideals-staircase", 2, 1, vec![vec![0, 4]], Some(vec![t(&[2, 0], 0), t(&[0, 1], 0)]), vec![vec![t(&[1, 1], 0), t(&[3, 0], 0)], m2.clone()], &[]),
        case("power-j", 2, 1, vec![], Some(vec![t(&[2, 0], 0), t(&[1, 1], 0), t(&[0, 2], 0)]), vec![m2.clone()], &["teo1"]),
        case("space", 3, 1, vec![], None, vec![m3.clone()], &["teo1"]),
        case("space-mod-xyz", 3, 1, vec![vec![1, 1, 1]], None, vec![vec![t(&[1, 0, 0], 0), t(&[0, 1, 0], 0)]], &["teo1"]),
        case("space-coordinate-plane", 3, 1, vec![vec![0, 0, 1]], None, vec![vec![t(&[1, 0, 0], 0), t(&[0, 2, 0], 0)]], &[]),
        case("rank-two-diagonal", 2, 2, vec![], None, vec![vec![t(&[1, 0], 0), t(&[0, 1], 1)]], &["teo1"]),
        case("rank-two-one-slot", 2, 2, vec![vec![2, 0]], None, vec![vec![t(&[1, 0], 0), t(&[0, 1], 0)]], &[]),
    ]
}

/// Random small setups over `d = 2`, `p = 1`, `q ≤ 2`, exponents at most 4.
pub fn random_cases(seed: u64, count: usize) -> Vec<CaseSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mono = |rng: &mut ChaCha8Rng, max: u32| vec![rng.gen_range(0..=max), rng.gen_range(0..=max)];
    while out.len() < count {
        let n = out.len();
        let a = if rng.gen_bool(0.3) {
            let g = mono(&mut rng, 4);
            if g.iter().all(|&v| v == 0) { vec![] } else { vec![g] }
        } else {
            vec![]
        };
        let f = if rng.gen_bool(0.5) {
            None
        } else {
            Some(vec![
                t(&[rng.gen_range(1..=3), 0], 0),
                t(&[0, rng.gen_range(1..=3)], 0),
            ])
        };
        let q = rng.gen_range(1..=2);
        let e = (0..q)
            .map(|_| {
                let k = rng.gen_range(1..=3);
                let mut terms: Vec<Term> = (0..k).map(|_| t(&mono(&mut rng, 3), 0)).collect();
                terms.retain(|term| term.x.iter().sum::<u32>() > 0);
                if terms.is_empty() {
                    terms.push(t(&[1, 0], 0));
                }
                terms
            })
            .collect::<Vec<Vec<Term>>>();
        // Keep the product of the I_i outside the radical of A, so the mixed function is not zero.
        let inside_a = |terms: &Vec<Term>| {
            terms.iter().all(|term| {
                a.iter()
                    .any(|g: &Vec<u32>| g.iter().zip(&term.x).all(|(&u, &v)| u == 0 || v > 0))
            })
        };
        if e.iter().any(inside_a) {
            continue;
        }
        out.push(case(&format!("random-{n:02}"), 2, 1, a, f, e, &["random"]));
    }
    out
}

/// Default seed and number of random cases in the shipped corpus.
pub const DEFAULT_SEED: u64 = 20261016;
pub const DEFAULT_RANDOM: usize = 12;

pub fn default_specs(seed: u64, random: usize) -> Vec<CaseSpec> {
    let mut specs = builtin_cases();
    specs.extend(random_cases(seed, random));
    specs
}

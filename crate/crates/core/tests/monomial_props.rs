use mixmult_core::oracle::count_between;
use mixmult_core::{length_between, BiMonomial, Length, Mode, Monomial, MonomialIdeal, MonomialModule, RingContext};
use proptest::prelude::*;

fn monomial(nvars: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max, nvars)
}

fn ideal(nvars: usize, max: u32) -> impl Strategy<Value = MonomialIdeal> {
    proptest::collection::vec(monomial(nvars, max), 1..4)
        .prop_map(move |gs| MonomialIdeal::new(nvars, gs.iter().map(|g| Monomial::new(g)).collect()))
}

fn flat(i: &MonomialIdeal) -> Vec<Vec<u32>> {
    i.gens().iter().map(|g| g.exps().to_vec()).collect()
}

proptest! {
    #[test]
    fn generators_form_an_antichain(i in ideal(3, 4)) {
        for a in i.gens() {
            for b in i.gens() {
                prop_assert!(a == b || !a.divides(b));
            }
        }
    }

    #[test]
    fn sum_product_intersection_membership(i in ideal(2, 4), j in ideal(2, 4), m in monomial(2, 6)) {
        let m = Monomial::new(&m);
        prop_assert_eq!(i.sum(&j).contains(&m), i.contains(&m) || j.contains(&m));
        prop_assert_eq!(i.intersect(&j).contains(&m), i.contains(&m) && j.contains(&m));
        let in_product = i.gens().iter().any(|a| j.gens().iter().any(|b| a.mul(b).divides(&m)));
        prop_assert_eq!(i.product(&j).contains(&m), in_product);
    }

    #[test]
    fn colon_by_monomial(i in ideal(3, 3), c in monomial(3, 2), m in monomial(3, 5)) {
        let c = Monomial::new(&c);
        let m = Monomial::new(&m);
        prop_assert_eq!(i.colon(&c).contains(&m), i.contains(&m.mul(&c)));
    }

    #[test]
    fn saturation_is_stable(i in ideal(2, 4), w in ideal(2, 2)) {
        let s = i.saturate(&w);
        prop_assert!(i.is_subset(&s));
        prop_assert_eq!(s.colon_ideal(&w), s.clone());
    }

    #[test]
    fn ideal_lengths_match_enumeration(u in ideal(2, 3), v in ideal(2, 4)) {
        let v = v.sum(&u.product(&MonomialIdeal::maximal_power(2, 2)));
        let v = v.intersect(&u);
        let ctx = RingContext::new(1, 1).unwrap();
        let (um, vm) = (MonomialModule::from_ideal(&ctx, u.clone()), MonomialModule::from_ideal(&ctx, v.clone()));
        let expected = count_between(&flat(&u), &flat(&v), 2, 0, 0, 40);
        match length_between(&vm, &um, 64).unwrap() {
            Length::Finite(n) => prop_assert_eq!(Some(n), expected),
            Length::Infinite => prop_assert_eq!(None, expected),
        }
    }

    #[test]
    fn slice_lengths_match_enumeration(
        us in proptest::collection::vec((monomial(2, 3), 0..2usize), 1..4),
        extra in proptest::collection::vec((monomial(2, 4), 0..2usize), 0..4),
    ) {
        let ctx = RingContext::new(2, 2).unwrap();
        let lift = |v: &[(Vec<u32>, usize)]| v.iter().map(|(x, s)| BiMonomial::term(x, *s, 2)).collect::<Vec<_>>();
        let u = MonomialModule::minimalize(&ctx, lift(&us), Mode::Slice(1)).unwrap();
        // A submodule of u: multiples of its generators plus the extra terms that lie in u.
        let mut vg: Vec<BiMonomial> = u.gens().iter().map(|g| BiMonomial { x: g.x.mul(&Monomial::new(&[1, 1])), t: g.t.clone() }).collect();
        vg.extend(lift(&extra).into_iter().filter(|m| u.contains(m).unwrap()));
        let v = MonomialModule::minimalize(&ctx, vg, Mode::Slice(1)).unwrap();
        let flatten = |m: &MonomialModule| m.gens().iter().map(|g| g.flatten().exps().to_vec()).collect::<Vec<_>>();
        let expected = count_between(&flatten(&u), &flatten(&v), 2, 2, 1, 40);
        match length_between(&v, &u, 64).unwrap() {
            Length::Finite(n) => prop_assert_eq!(Some(n), expected),
            Length::Infinite => prop_assert_eq!(None, expected),
        }
    }

    #[test]
    fn krull_dimension_of_coordinate_ideals(mask in 0u64..16) {
        let gens: Vec<Monomial> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| Monomial::var(i, 4)).collect();
        let k = gens.len() as i64;
        prop_assert_eq!(MonomialIdeal::new(4, gens).krull_dim(), 4 - k);
    }
}

#[test]
fn length_between_rejects_non_containment() {
    let ctx = RingContext::new(1, 1).unwrap();
    let x = MonomialModule::from_ideal(&ctx, MonomialIdeal::new(2, vec![Monomial::new(&[1, 0])]));
    let y = MonomialModule::from_ideal(&ctx, MonomialIdeal::new(2, vec![Monomial::new(&[0, 1])]));
    assert!(length_between(&x, &y, 64).is_err());
}

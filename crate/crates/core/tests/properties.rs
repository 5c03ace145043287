use num_bigint::BigInt;
use proptest::prelude::*;

use ktrans::partition::{ShiftedSkewShape, StrictPartition};
use ktrans::rings::{parse_poly, pi_operator, Monomial, TruncPoly, Var};
use ktrans::weyl::{length, GroupType, SignedPermutation};

fn poly_in(family: fn(u32) -> Var, vars: u32, max_deg: u32) -> impl Strategy<Value = TruncPoly> {
    let term = (0..=2u32, prop::collection::vec(0..=max_deg, vars as usize), -3i64..=3);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut p = TruncPoly::zero();
        for (beta, exps, c) in terms {
            let mut budget = max_deg;
            let factors: Vec<_> = exps
                .into_iter()
                .enumerate()
                .map(|(i, e)| {
                    let e = e.min(budget);
                    budget -= e;
                    (family(i as u32 + 1), e)
                })
                .filter(|&(_, e)| e > 0)
                .collect();
            p.add_term(Monomial::new(beta, factors), BigInt::from(c));
        }
        p
    })
}

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(
        |(perm, signs)| {
            let window = perm.into_iter().zip(signs).map(|(v, s)| if s { -v } else { v }).collect();
            SignedPermutation::from_window(window).unwrap()
        },
    )
}

fn strict_partition() -> impl Strategy<Value = StrictPartition> {
    prop::collection::btree_set(1..8u32, 0..4)
        .prop_map(|s| StrictPartition::new(s.into_iter().rev().collect()).unwrap())
}

fn pi(i: u32, f: &TruncPoly) -> TruncPoly {
    pi_operator(i, f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pi_braid_relations(f in poly_in(Var::x, 4, 4)) {
        prop_assert_eq!(pi(1, &pi(2, &pi(1, &f))), pi(2, &pi(1, &pi(2, &f))));
        prop_assert_eq!(pi(2, &pi(3, &pi(2, &f))), pi(3, &pi(2, &pi(3, &f))));
        prop_assert_eq!(pi(1, &pi(3, &f)), pi(3, &pi(1, &f)));
    }

    #[test]
    fn truncation_commutes(f in poly_in(Var::z, 3, 3), g in poly_in(Var::z, 3, 3), d in 0..6u32) {
        let whole = (&f * &g).bounded(d);
        let parts = &f.clone().bounded(d) * &g.clone().bounded(d);
        prop_assert_eq!(&whole, &parts);
        prop_assert_eq!((&f + &g).bounded(d), &f.clone().bounded(d) + &g.clone().bounded(d));
    }

    #[test]
    fn ring_laws(f in poly_in(Var::y, 3, 2), g in poly_in(Var::y, 3, 2), h in poly_in(Var::y, 3, 2)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn poly_text_round_trip(f in poly_in(Var::x, 3, 3)) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn group_laws(u in signed_perm(4), v in signed_perm(4), w in signed_perm(4)) {
        prop_assert_eq!(u.compose(&v).compose(&w), u.compose(&v.compose(&w)));
        prop_assert!(u.compose(&u.inverse()).is_identity());
        for ty in [GroupType::B, GroupType::C] {
            prop_assert_eq!(length(ty, &u).unwrap(), length(ty, &u.inverse()).unwrap());
        }
    }

    #[test]
    fn permutation_text_round_trip(u in signed_perm(5)) {
        prop_assert_eq!(u.to_string().parse::<SignedPermutation>().unwrap(), u);
    }

    #[test]
    fn shape_text_round_trip(outer in strict_partition(), inner in strict_partition()) {
        let shape = ShiftedSkewShape::new(outer, inner);
        let text = shape.to_string();
        prop_assert_eq!(text.parse::<ShiftedSkewShape>().unwrap(), shape);
    }
}

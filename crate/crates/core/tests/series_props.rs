//! Property tests for the truncated-series ring: inverse, ring laws,
//! root/compose/exp-log round trips.

use genera_core::series::TruncatedSeries;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

type Rat = BigRational;
type RS = TruncatedSeries<Rat>;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn series_from(vals: &[(i32, u8)], valuation: i64, order: i64) -> RS {
    let coeffs: Vec<Rat> = vals
        .iter()
        .map(|&(n, d)| rat(n as i64, d as i64 + 1))
        .collect();
    RS::new(valuation, coeffs, order, Rat::zero())
}

fn arb_series(max_len: usize) -> impl Strategy<Value = RS> {
    (
        prop::collection::vec((any::<i32>().prop_map(|n| n % 7), 0u8..3), 1..max_len),
        -3i64..4,
    )
        .prop_map(move |(vals, valuation)| {
            let order = valuation + max_len as i64 + 2;
            series_from(&vals, valuation, order)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_multiplies_to_one(a in arb_series(8)) {
        prop_assume!(!a.is_zero());
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv);
        let one = RS::one(prod.order(), Rat::zero());
        prop_assert!(prod.eq_to_truncation(&one));
    }

    #[test]
    fn mul_commutes_and_associates(
        a in arb_series(6),
        b in arb_series(6),
        c in arb_series(6),
    ) {
        prop_assert!(a.mul(&b).eq_to_truncation(&b.mul(&a)));
        let l = a.mul(&b).mul(&c);
        let r = a.mul(&b.mul(&c));
        prop_assert!(l.eq_to_truncation(&r));
    }

    #[test]
    fn distributivity(
        a in arb_series(6),
        b in arb_series(6),
        c in arb_series(6),
    ) {
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        prop_assert!(l.eq_to_truncation(&r));
    }

    #[test]
    fn nth_root_powers_back(vals in prop::collection::vec((any::<i32>().prop_map(|n| n % 5), 0u8..3), 1..6), d in 2u32..5) {
        // g = t^d (1 + higher terms)
        let mut coeffs = vec![Rat::from_integer(1.into())];
        for (n, den) in vals {
            coeffs.push(rat(n as i64, den as i64 + 1));
        }
        let order = d as i64 + 14;
        let g = RS::new(d as i64, coeffs, order, Rat::zero());
        let f = g.nth_root(d).unwrap();
        let mut p = RS::one(order + 8, Rat::zero());
        for _ in 0..d {
            p = p.mul(&f);
        }
        prop_assert!(p.eq_to_truncation(&g));
    }

    #[test]
    fn compose_associates(
        a in arb_series(5),
        bv in prop::collection::vec((any::<i32>().prop_map(|n| n % 5), 0u8..3), 1..5),
        cv in prop::collection::vec((any::<i32>().prop_map(|n| n % 5), 0u8..3), 1..5),
    ) {
        // outer needs valuation >= 0, inner series valuation >= 1
        prop_assume!(a.is_zero() || a.valuation() >= 0);
        let b = series_from(&bv, 1, 8);
        let c = series_from(&cv, 1, 8);
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(l.eq_to_truncation(&r));
    }

    #[test]
    fn exp_log_round_trip(vals in prop::collection::vec((any::<i32>().prop_map(|n| n % 5), 0u8..3), 1..7)) {
        let a = series_from(&vals, 1, 10);
        let e = a.exp().unwrap();
        let back = e.log().unwrap();
        prop_assert!(back.eq_to_truncation(&a));
    }
}

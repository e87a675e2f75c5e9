//! Property tests for the symmetric-function operator suite: divided
//! differences, the alternation operator, and skew-symmetric reduction.

use genera_core::coeff::Coeff;
use genera_core::poly::{
    alternate, alternation_l, alternation_l_factored, divided_difference, permutations_with_sign,
    skew_symmetric_reduce, vandermonde, MultiPoly,
};
use num_rational::BigRational;
use proptest::prelude::*;

type Rat = BigRational;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Random polynomial in `n_vars` variables with bounded degree and size.
fn arb_poly(n_vars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, n_vars),
            any::<i32>().prop_map(|c| (c % 9) as i64),
        ),
        1..max_terms,
    )
    .prop_map(move |terms| {
        let ring = MultiPoly::ring(n_vars, &[]);
        let mut p = ring.zero_like();
        for (exps, c) in terms {
            p.insert_term(exps, rat(c));
        }
        p
    })
}

/// Random symmetric polynomial: a symmetrized random polynomial.
fn arb_symmetric(n_vars: usize, max_deg: u16) -> impl Strategy<Value = MultiPoly> {
    arb_poly(n_vars, max_deg, 4).prop_map(move |p| {
        let mut out = p.zero_like();
        for (perm, _) in permutations_with_sign(n_vars) {
            out = out.add(&p.permute_x(&perm));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn divided_difference_is_tau_invariant_and_nilpotent(
        p in arb_poly(3, 4, 6),
        i in 1usize..3,
    ) {
        let d = divided_difference(&p, i).unwrap();
        // delta_i(P) is tau_i-invariant
        prop_assert_eq!(d.tau(i), d.clone());
        // delta_i^2 = 0
        prop_assert!(divided_difference(&d, i).unwrap().is_zero());
        // delta_i(P) = 0 iff P is tau_i-invariant
        prop_assert_eq!(d.is_zero(), p.tau(i) == p);
    }

    #[test]
    fn twisted_leibniz_rule(
        p in arb_poly(3, 3, 5),
        q in arb_poly(3, 3, 5),
        i in 1usize..3,
    ) {
        let lhs = divided_difference(&p.mul(&q), i).unwrap();
        let rhs = divided_difference(&p, i).unwrap().mul(&q)
            .add(&p.tau(i).mul(&divided_difference(&q, i).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn alternation_routes_agree(p in arb_poly(3, 5, 6)) {
        let a = alternation_l(&p).unwrap();
        let b = alternation_l_factored(&p).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn alternation_routes_agree_n4(p in arb_poly(4, 4, 5)) {
        let a = alternation_l(&p).unwrap();
        let b = alternation_l_factored(&p).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn l_of_vandermonde_times_symmetric(q in arb_symmetric(3, 3)) {
        // L(Delta Q) = (n+1)! Q
        let ring = MultiPoly::ring(3, &[]);
        let delta = vandermonde(&ring);
        let l = alternation_l(&delta.mul(&q)).unwrap();
        prop_assert_eq!(l, q.scale(&rat(6)));
    }

    #[test]
    fn l_pulls_out_symmetric_factors(
        p in arb_poly(3, 3, 4),
        q in arb_symmetric(3, 2),
    ) {
        let lhs = alternation_l(&p.mul(&q)).unwrap();
        let rhs = alternation_l(&p).unwrap().mul(&q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_property(
        num in arb_poly(3, 3, 4),
        den in arb_symmetric(3, 2),
    ) {
        // pi(r) = L(Delta r)/(n+1)! is a projection onto symmetric functions;
        // rational functions are represented as pairs with symmetric
        // denominator: r = num/den, pi(r) = L(Delta num) / ((n+1)! den)
        prop_assume!(!den.is_zero());
        let ring = MultiPoly::ring(3, &[]);
        let delta = vandermonde(&ring);
        let p1_num = alternation_l(&delta.mul(&num)).unwrap();
        let p1_den = den.scale(&rat(6));
        // second application: L(Delta p1_num/p1_den) = L(Delta p1_num)/p1_den
        let p2_num = alternation_l(&delta.mul(&p1_num)).unwrap();
        let p2_den = p1_den.scale(&rat(6));
        // pi(pi(r)) = pi(r): p2_num/p2_den = p1_num/p1_den, cross-multiplied
        prop_assert_eq!(p2_num.mul(&p1_den), p1_num.mul(&p2_den));
    }

    #[test]
    fn uniqueness_of_low_degree_skew_polynomials(p in arb_poly(4, 3, 5)) {
        // the alternation of any polynomial with per-variable degree <= n
        // reduces to a constant multiple of the Vandermonde product
        let alt = alternate(&p);
        prop_assume!(!alt.is_zero());
        let (q, exact) = skew_symmetric_reduce(&alt).unwrap();
        prop_assert!(exact);
        prop_assert!(q.as_x_constant().is_some());
    }
}

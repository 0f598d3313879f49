//! Randomized invariants of the arithmetic, the Gröbner engine and the determinantal
//! constructions.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::sample::subsequence;

use common::*;
use phn_core::detvar::{augmented_jacobian, jacobian, minors_ideal, PolyMatrix};
use phn_core::field::{Coeff, FieldSpec};
use phn_core::groebner::{
    buchberger, contains, ideal_contains, saturate_element, translate_ideal, Ideal,
};
use phn_core::indices::{coefficient_table_unchecked, lemma_eu_assemble};
use phn_core::monomial::{Monomial, MonomialOrder};
use phn_core::parse::parse_polynomial;
use phn_core::poly::{OneForm, Polynomial, RingRef, Term};

const P: u64 = 2_147_483_647;

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Terms as `(numerator, denominator, exponents)`; duplicates are merged by the
/// constructor.
fn raw_terms(nvars: usize, max_terms: usize, max_exp: u16) -> impl Strategy<Value = Vec<(i64, i64, Vec<u16>)>> {
    prop::collection::vec((-30i64..=30, 1i64..=6, prop::collection::vec(0..=max_exp, nvars)), 0..=max_terms)
}

fn build(r: &RingRef, raw: &[(i64, i64, Vec<u16>)]) -> Polynomial {
    let terms = raw
        .iter()
        .map(|(a, b, e)| Term { coeff: r.field().from_rational(&q(*a, *b)).unwrap(), mono: Monomial::from_exponents(e) })
        .collect();
    Polynomial::from_terms(r, terms)
}

fn integer_poly(nvars: usize, max_terms: usize, max_exp: u16) -> impl Strategy<Value = Vec<(i64, i64, Vec<u16>)>> {
    prop::collection::vec((-5i64..=5, Just(1i64), prop::collection::vec(0..=max_exp, nvars)), 1..=max_terms)
}

fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::DegRevLex),
        Just(MonomialOrder::NegDegRevLex),
        (1usize..4).prop_map(|split| MonomialOrder::BlockElimination { split }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in raw_terms(3, 5, 3), b in raw_terms(3, 5, 3), c in raw_terms(3, 5, 3)) {
        let r = ring_n(3, FieldSpec::Rationals);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
        prop_assert_eq!(&a * &Polynomial::one(&r), a.clone());
    }

    #[test]
    fn terms_are_canonical(a in raw_terms(3, 8, 3), b in raw_terms(3, 8, 3)) {
        let r = ring_n(3, FieldSpec::Rationals);
        let p = &build(&r, &a) * &build(&r, &b);
        let order = r.order();
        for w in p.terms().windows(2) {
            prop_assert_eq!(order.compare(&w[0].mono, &w[1].mono), std::cmp::Ordering::Greater);
        }
        prop_assert!(p.terms().iter().all(|t| !t.coeff.is_zero()));
    }

    #[test]
    fn printing_then_parsing_is_the_identity(a in raw_terms(4, 8, 4)) {
        let r = ring_n(4, FieldSpec::Rationals);
        let p = build(&r, &a);
        prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
    }

    #[test]
    fn orders_are_total_and_multiplicative(
        order in order_strategy(),
        a in prop::collection::vec(0u16..5, 4),
        b in prop::collection::vec(0u16..5, 4),
        c in prop::collection::vec(0u16..5, 4),
    ) {
        let (a, b, c) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&c));
        let ab = order.compare(&a, &b);
        prop_assert_eq!(ab, order.compare(&b, &a).reverse());
        prop_assert_eq!(ab == std::cmp::Ordering::Equal, a == b);
        prop_assert_eq!(ab, order.compare(&a.mul(&c), &b.mul(&c)));
        if ab.is_gt() && order.compare(&b, &c).is_gt() {
            prop_assert!(order.compare(&a, &c).is_gt());
        }
    }

    #[test]
    fn differential_is_linear_and_leibniz(a in raw_terms(3, 5, 3), b in raw_terms(3, 5, 3), k in -9i64..=9) {
        let r = ring_n(3, FieldSpec::Rationals);
        let (f, g) = (build(&r, &a), build(&r, &b));
        let (df, dg) = (f.differential(), g.differential());
        let d_prod = (&f * &g).differential();
        let d_comb = (&f + &g.scale(&r.field().from_i64(k))).differential();
        for i in 0..3 {
            let (fi, gi) = (&df.coeffs()[i], &dg.coeffs()[i]);
            prop_assert_eq!(&d_prod.coeffs()[i], &(&(&f * gi) + &(&g * fi)));
            prop_assert_eq!(&d_comb.coeffs()[i], &(fi + &gi.scale(&r.field().from_i64(k))));
        }
    }

    #[test]
    fn prime_field_agrees_with_reduced_rationals(a in raw_terms(3, 5, 3), b in raw_terms(3, 5, 3), c in raw_terms(3, 5, 3)) {
        let rq = ring_n(3, FieldSpec::Rationals);
        let rp = ring_n(3, FieldSpec::PrimeField(P));
        let (a, b, c) = (build(&rq, &a), build(&rq, &b), build(&rq, &c));
        let over_q = &(&a * &b) - &c.pow(2);
        let (ap, bp, cp) = (a.change_field(&rp).unwrap(), b.change_field(&rp).unwrap(), c.change_field(&rp).unwrap());
        prop_assert_eq!(over_q.change_field(&rp).unwrap(), &(&ap * &bp) - &cp.pow(2));
    }

    #[test]
    fn moebius_identity_on_sampled_shapes(m in 1usize..=8, n in 1usize..=8, t in 0usize..=8) {
        let t = t.min(m.min(n));
        prop_assert!(coefficient_table_unchecked(m, n, t).moebius_failures().is_empty());
    }

    #[test]
    fn euler_characteristics_cancel_between_two_forms(
        m in 1usize..=5,
        n in 1usize..=5,
        t in 1usize..=5,
        phn in (0i64..200, 0i64..200),
        chi in prop::collection::vec((-50i64..=50, 1i64..=9), 5),
    ) {
        let t = t.min(m.min(n));
        let nvars = m * n;
        let chi: Vec<BigRational> = chi[..t].iter().map(|(a, b)| q(*a, *b)).collect();
        let a = lemma_eu_assemble(phn.0, &chi, m, n, t, nvars).unwrap();
        let b = lemma_eu_assemble(phn.1, &chi, m, n, t, nvars).unwrap();
        prop_assert_eq!(a - b, q(phn.0 - phn.1, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn computed_bases_are_groebner_and_deterministic(gens in prop::collection::vec(integer_poly(3, 4, 3), 1..=3)) {
        let r = ring_n(3, FieldSpec::Rationals);
        let i = Ideal::new(&r, gens.iter().map(|g| build(&r, g)).collect()).unwrap();
        let g1 = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        let g2 = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        prop_assert!(g1.is_groebner());
        prop_assert!(g1.is_reduced());
        prop_assert!(i.generators().iter().all(|f| contains(&g1, f)));
        let show = |g: &phn_core::groebner::GroebnerBasis| g.elements().iter().map(|p| p.to_string()).collect::<Vec<_>>();
        prop_assert_eq!(show(&g1), show(&g2));
    }

    #[test]
    fn translation_round_trips(gens in prop::collection::vec(integer_poly(3, 4, 3), 1..=3), point in prop::collection::vec((-9i64..=9, 1i64..=4), 3)) {
        let r = ring_n(3, FieldSpec::Rationals);
        let i = Ideal::new(&r, gens.iter().map(|g| build(&r, g)).collect()).unwrap();
        let there: Vec<Coeff> = point.iter().map(|(a, b)| r.field().from_rational(&q(*a, *b)).unwrap()).collect();
        let back: Vec<Coeff> = there.iter().map(Coeff::neg).collect();
        let moved = translate_ideal(&translate_ideal(&i, &there), &back);
        prop_assert_eq!(moved.generators(), i.generators());
    }

    #[test]
    fn saturation_contains_the_ideal_and_is_reached_by_powers(
        gens in prop::collection::vec(integer_poly(2, 3, 3), 1..=2),
        g in integer_poly(2, 2, 1),
        lift in 1u32..=2,
    ) {
        let r = ring_n(2, FieldSpec::Rationals);
        let g = build(&r, &g);
        prop_assume!(!g.is_zero());
        // Multiplying a generator by a power of g guarantees something to remove.
        let mut polys: Vec<Polynomial> = gens.iter().map(|p| build(&r, p)).collect();
        polys[0] = &polys[0] * &g.pow(lift);
        let i = Ideal::new(&r, polys).unwrap();
        let sat = saturate_element(&i, &g);
        let sat_basis = buchberger(&sat, MonomialOrder::DegRevLex).unwrap();
        prop_assert!(i.generators().iter().all(|f| contains(&sat_basis, f)));
        let i_basis = buchberger(&i, MonomialOrder::DegRevLex).unwrap();
        for s in sat_basis.elements() {
            let mut power = s.clone();
            let reached = (0..=50).any(|k| {
                if k > 0 {
                    power = &power * &g;
                }
                contains(&i_basis, &power)
            });
            prop_assert!(reached, "{} never enters I", s);
        }
    }

    #[test]
    fn lower_minors_contain_higher_minors(
        entries in prop::collection::vec(integer_poly(3, 2, 1), 9),
        rows in 2usize..=3,
        cols in 2usize..=3,
    ) {
        let r = ring_n(3, FieldSpec::Rationals);
        let m = PolyMatrix::new(&r, rows, cols, entries[..rows * cols].iter().map(|e| build(&r, e)).collect()).unwrap();
        for k in 2..=rows.min(cols) {
            let lower = buchberger(&minors_ideal(&m, k - 1), MonomialOrder::DegRevLex).unwrap();
            prop_assert!(ideal_contains(&lower, &minors_ideal(&m, k)));
        }
    }

    #[test]
    fn minors_ideal_ignores_row_and_column_order(
        entries in prop::collection::vec(integer_poly(3, 2, 1), 6),
        row_perm in Just(vec![0usize, 1]).prop_shuffle(),
        col_perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        transpose in any::<bool>(),
    ) {
        let r = ring_n(3, FieldSpec::Rationals);
        let m = PolyMatrix::new(&r, 2, 3, entries.iter().map(|e| build(&r, e)).collect()).unwrap();
        let mut p = m.permuted(&row_perm, &col_perm);
        if transpose {
            p = p.transpose();
        }
        let (a, b) = (minors_ideal(&m, 2), minors_ideal(&p, 2));
        let ga = buchberger(&a, MonomialOrder::DegRevLex).unwrap();
        let gb = buchberger(&b, MonomialOrder::DegRevLex).unwrap();
        prop_assert!(ideal_contains(&ga, &b) && ideal_contains(&gb, &a));
    }

    #[test]
    fn augmented_jacobian_extends_the_jacobian(
        gens in prop::collection::vec(raw_terms(4, 4, 3), 1..=4),
        form in prop::collection::vec(raw_terms(4, 3, 2), 4),
    ) {
        let r = ring_n(4, FieldSpec::Rationals);
        let gens: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
        let w = OneForm::new(&r, form.iter().map(|c| build(&r, c)).collect()).unwrap();
        let jac = jacobian(&r, &gens);
        let aug = augmented_jacobian(&gens, &w);
        prop_assert_eq!(aug.rows(), jac.rows() + 1);
        prop_assert_eq!(aug.cols(), jac.cols());
        for i in 0..jac.rows() {
            prop_assert_eq!(aug.row(i), jac.row(i));
        }
        prop_assert_eq!(aug.row(jac.rows()), w.coeffs());
    }

    #[test]
    fn subsets_of_generators_give_smaller_ideals(gens in prop::collection::vec(integer_poly(3, 3, 2), 2..=4), keep in subsequence(vec![0usize, 1, 2, 3], 1..=2)) {
        let r = ring_n(3, FieldSpec::Rationals);
        let all: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
        let some: Vec<Polynomial> = keep.iter().filter(|&&k| k < all.len()).map(|&k| all[k].clone()).collect();
        let big = buchberger(&Ideal::new(&r, all).unwrap(), MonomialOrder::DegRevLex).unwrap();
        prop_assert!(ideal_contains(&big, &Ideal::new(&r, some).unwrap()));
    }
}

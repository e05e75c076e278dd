//! Randomized checks against independent oracles: monomial-ideal combinatorics, the
//! Buchberger S-pair criterion, direct expansion of series, and the parser round trip.

use std::sync::Arc;

use dmkit::algebra::{Field, FieldElement, Monomial, MonomialOrder, Polynomial, RationalPoint, RingSpec};
use dmkit::exprio::{parse_poly, print_poly};
use dmkit::groebner::{mu_at_point, Ideal};
use dmkit::series::{
    series_mul, stabilization_index, truncated_content, unit_inverse, unit_tail_rewrite, TruncatedSeries,
    UnitSeries, UnitTailSeries, UnitTerm,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn ring_q() -> Arc<RingSpec> {
    RingSpec::rational(&["u", "v"])
}

fn ring_p() -> Arc<RingSpec> {
    RingSpec::new(["x", "y", "z"], Field::prime(101).unwrap(), MonomialOrder::Grevlex).unwrap()
}

fn ring_lex() -> Arc<RingSpec> {
    RingSpec::new(["a", "b", "c"], Field::Rational, MonomialOrder::Lex).unwrap()
}

/// Fixed seed so runs are reproducible; `PROPTEST_RNG_SEED` picks another.
fn config(cases: u32) -> ProptestConfig {
    let seed = std::env::var("PROPTEST_RNG_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        ..ProptestConfig::default()
    }
}

type RawPoly = Vec<(Vec<u32>, i64, i64)>;

fn raw_poly(nvars: usize, max_terms: usize, max_deg: u32) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -6i64..=6, 1i64..=4), 0..=max_terms)
}

fn build(ring: &Arc<RingSpec>, raw: &RawPoly) -> Polynomial {
    let f = ring.field();
    let terms = raw
        .iter()
        .map(|(e, n, d)| (Monomial::new(e.clone()), f.from_i64(*n).div(&f.from_i64(*d)).unwrap()))
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn poly_q() -> impl Strategy<Value = Polynomial> {
    raw_poly(2, 4, 3).prop_map(|r| build(&ring_q(), &r))
}

fn poly_p() -> impl Strategy<Value = Polynomial> {
    raw_poly(3, 4, 2).prop_map(|r| build(&ring_p(), &r))
}

/// `S(f, g)`, written out from leading terms.
fn s_poly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let one = f.ring().field().one();
    let a = f.mul_term(&mf.quotient_of(&l), &one.div(cf).unwrap());
    let b = g.mul_term(&mg.quotient_of(&l), &one.div(cg).unwrap());
    &a - &b
}

/// Every term of `p` divisible by a generator: membership in a monomial ideal.
fn in_monomial_ideal(p: &Polynomial, gens: &[Monomial]) -> bool {
    p.terms().iter().all(|(m, _)| gens.iter().any(|g| g.divides(m)))
}

/// Minimal generators of a monomial ideal: those divisible by no other generator.
fn minimal_monomials(gens: &[Monomial]) -> Vec<Monomial> {
    let mut uniq: Vec<Monomial> = gens.to_vec();
    uniq.sort_by(|a, b| a.exps().cmp(b.exps()));
    uniq.dedup();
    uniq.iter()
        .filter(|m| !uniq.iter().any(|o| o != *m && o.divides(m)))
        .cloned()
        .collect()
}

fn monomial_ideal(ring: &Arc<RingSpec>, gens: &[Monomial]) -> Ideal {
    let one = ring.field().one();
    Ideal::new(ring, gens.iter().map(|m| Polynomial::monomial(ring, m.clone(), one.clone()))).unwrap()
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn ring_axioms_q(a in poly_q(), b in poly_q(), c in poly_q()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&ring_q()), a.clone());
    }

    #[test]
    fn ring_axioms_fp(a in poly_p(), b in poly_p(), c in poly_p()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // The characteristic kills every element.
        prop_assert!(a.scale(&ring_p().field().from_i64(101)).is_zero());
    }

    #[test]
    fn parse_print_round_trip(a in poly_q(), b in raw_poly(3, 5, 4)) {
        let r = ring_q();
        prop_assert_eq!(parse_poly(&print_poly(&a), &r).unwrap(), a.clone());
        let printed = print_poly(&a);
        prop_assert_eq!(print_poly(&parse_poly(&printed, &r).unwrap()), printed);
        let lex = build(&ring_lex(), &b);
        prop_assert_eq!(parse_poly(&print_poly(&lex), &ring_lex()).unwrap(), lex);
        let fp = build(&ring_p(), &b);
        prop_assert_eq!(parse_poly(&print_poly(&fp), &ring_p()).unwrap(), fp);
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn shift_is_invertible(a in poly_q(), c0 in -3i64..=3, c1 in -3i64..=3) {
        let r = ring_q();
        let pt = RationalPoint::from_i64(&r, &[c0, c1]).unwrap();
        let back = a.shift(&pt).unwrap().shift(&pt.negate()).unwrap();
        prop_assert_eq!(back, a.clone());
        // Shifting is a ring map.
        let sq = (&a * &a).shift(&pt).unwrap();
        let s = a.shift(&pt).unwrap();
        prop_assert_eq!(sq, &s * &s);
    }

    #[test]
    fn groebner_bases_satisfy_buchberger(gens in prop::collection::vec(poly_q(), 1..=3)) {
        let r = ring_q();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let gb = i.groebner_basis().to_vec();
        for g in &gens {
            prop_assert!(i.normal_form(g).unwrap().is_zero());
        }
        for (x, f) in gb.iter().enumerate() {
            prop_assert!(f.leading_coeff().unwrap().is_one());
            for g in &gb[x + 1..] {
                prop_assert!(i.normal_form(&s_poly(f, g)).unwrap().is_zero());
            }
        }
        // Idempotent, and the basis generates the same ideal.
        let again = Ideal::new(&r, gb.clone()).unwrap();
        prop_assert_eq!(again.groebner_basis(), gb.as_slice());
    }

    #[test]
    fn normal_form_decides_membership(gens in prop::collection::vec(poly_q(), 1..=3), cofs in prop::collection::vec(poly_q(), 3), p in poly_q()) {
        let r = ring_q();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let mut member = Polynomial::zero(&r);
        for (g, c) in gens.iter().zip(&cofs) {
            member = &member + &(g * c);
        }
        prop_assert!(i.contains(&member).unwrap());
        prop_assert!(i.normal_form(&member).unwrap().is_zero());
        // p and its normal form differ by an ideal element.
        let nf = i.normal_form(&p).unwrap();
        prop_assert!(i.contains(&(&p - &nf)).unwrap());
        prop_assert_eq!(nf.is_zero(), i.contains(&p).unwrap());
        if !i.is_zero() && i.contains(&member).unwrap() && !member.is_zero() {
            let cert = i.lift(&member).unwrap();
            prop_assert!(cert.verify());
        }
    }

    #[test]
    fn monomial_membership_matches_divisibility(raw in prop::collection::vec(prop::collection::vec(0u32..=3, 3), 1..=4), p in raw_poly(3, 4, 4)) {
        let r = ring_p();
        let gens: Vec<Monomial> = raw.into_iter().map(Monomial::new).collect();
        let i = monomial_ideal(&r, &gens);
        let p = build(&r, &p);
        prop_assert_eq!(i.contains(&p).unwrap(), in_monomial_ideal(&p, &gens));
    }

    #[test]
    fn square_is_self_product(gens in prop::collection::vec(poly_q(), 1..=2)) {
        let r = ring_q();
        let i = Ideal::new(&r, gens).unwrap();
        prop_assert!(i.product(&i).unwrap().ideal_equal(&i.power(2)).unwrap());
        prop_assert!(i.contains_ideal(&i.power(2)).unwrap());
    }

    /// The local generator count of a monomial ideal at the origin is the number of its
    /// minimal monomial generators.
    #[test]
    fn mu_matches_minimal_monomials(raw in prop::collection::vec(prop::collection::vec(0u32..=5, 1..=3), 1..=6)) {
        let n = raw[0].len();
        let names = ["x", "y", "z"];
        let r = RingSpec::new(names[..n].iter().copied(), Field::Rational, MonomialOrder::Grevlex).unwrap();
        let gens: Vec<Monomial> = raw
            .into_iter()
            .map(|mut e| {
                e.resize(n, 0);
                // Degrees at most 5: trim the largest exponent.
                while e.iter().sum::<u32>() > 5 {
                    let k = (0..n).max_by_key(|&k| e[k]).unwrap();
                    e[k] -= 1;
                }
                Monomial::new(e)
            })
            .collect();
        let i = monomial_ideal(&r, &gens);
        let expected = minimal_monomials(&gens).len();
        prop_assert_eq!(mu_at_point(&i, &RationalPoint::origin(&r)).unwrap(), expected);
    }
}

/// Linear coefficients for unit denominators: inverse units of higher degree make the
/// expanded coefficients, and their Gröbner bases, needlessly large.
fn poly_linear() -> impl Strategy<Value = Polynomial> {
    raw_poly(2, 2, 1).prop_map(|r| build(&ring_q(), &r))
}

fn unit_strategy() -> impl Strategy<Value = UnitSeries> {
    let r = ring_q();
    prop_oneof![
        Just(UnitSeries::one(&r)),
        Just(UnitSeries::geometric(&r)),
        (poly_q(), -3i64..=3).prop_filter_map("unit", move |(c1, c0)| {
            (c0 != 0).then(|| UnitSeries::polynomial(&ring_q(), vec![Polynomial::from_i64(&ring_q(), c0), c1]).unwrap())
        }),
        (poly_linear(), 1i64..=3).prop_map(|(c1, c0)| {
            let r = ring_q();
            UnitSeries::ratio(&r, vec![Polynomial::one(&r)], vec![Polynomial::from_i64(&r, c0), c1]).unwrap()
        }),
    ]
}

fn unit_tail() -> impl Strategy<Value = UnitTailSeries> {
    prop::collection::btree_map(0usize..=3, (poly_q(), unit_strategy()), 0..=3).prop_map(|m| {
        let terms = m.into_iter().map(|(j, (a, unit))| UnitTerm { a, j, unit }).collect();
        UnitTailSeries::new(&ring_q(), 16, terms).unwrap()
    })
}

/// Coefficient `n` of `f`, summed term by term from its units' expansions.
fn coeff_by_definition(f: &UnitTailSeries, n: usize) -> Polynomial {
    let mut c = Polynomial::zero(f.ring());
    for t in f.terms() {
        if t.j <= n {
            let u = t.unit.expand(n - t.j).unwrap();
            c = &c + &(&t.a * &u.coeffs()[n - t.j]);
        }
    }
    c
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn rewrite_reproduces_truncation(f in unit_tail()) {
        let t = f.expand(6).unwrap();
        for n in 0..=6 {
            prop_assert_eq!(&t.coeffs()[n], &coeff_by_definition(&f, n));
        }
        let g = unit_tail_rewrite(&t, None).unwrap();
        prop_assert_eq!(g.expand(6).unwrap(), t.clone());
        // The rewritten content is the truncated content at the stabilization index.
        let n = stabilization_index(&t);
        prop_assert!(g.content().ideal_equal(&truncated_content(&t, n).unwrap()).unwrap());
    }

    #[test]
    fn content_is_reached_by_truncations(f in unit_tail()) {
        let t = f.expand(8).unwrap();
        let n = stabilization_index(&t);
        prop_assert!(truncated_content(&t, 8).unwrap().ideal_equal(&f.content()).unwrap() || n == 8);
        prop_assert!(f.content().contains_ideal(&truncated_content(&t, 8).unwrap()).unwrap());
    }

    #[test]
    fn content_is_subadditive_and_submultiplicative(f in unit_tail(), g in unit_tail()) {
        let d = 5;
        let (tf, tg) = (f.expand(d).unwrap(), g.expand(d).unwrap());
        let sum = tf.add(&tg).unwrap();
        let bound = truncated_content(&tf, d).unwrap().sum(&truncated_content(&tg, d).unwrap()).unwrap();
        prop_assert!(bound.contains_ideal(&truncated_content(&sum, d).unwrap()).unwrap());
        let prod = series_mul(&tf, &tg).unwrap();
        let cfcg = f.content().product(&g.content()).unwrap();
        for e in 0..=d {
            prop_assert!(cfcg.contains_ideal(&truncated_content(&prod, e).unwrap()).unwrap());
        }
    }

    #[test]
    fn unit_inverse_round_trip(u in unit_strategy(), d in 0usize..=6) {
        let inv = unit_inverse(&u, d);
        let prod = u.expand(d).unwrap().mul(&inv.expand(d).unwrap()).unwrap();
        prop_assert_eq!(prod, TruncatedSeries::one(&ring_q(), d));
    }
}

#[test]
fn field_elements_of_different_fields_do_not_mix() {
    let a = Field::Rational.from_i64(2);
    let b: FieldElement = Field::prime(7).unwrap().from_i64(2);
    assert!(a.try_add(&b).is_err());
}

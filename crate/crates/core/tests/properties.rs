mod common;

use common::*;
use expsol::algebra::{int, nth_root, CoefficientSum, Polynomial, Rational, RationalFunction};
use expsol::diffpoly::DiffPolynomial;
use expsol::elimination::{build_system, cramer_identity_check, d1_by_minors, d1_direct, det, h_derivatives};
use expsol::equation::{lhs_apply, verify, EquationSpec, SampleConfig};
use expsol::exppoly::ExpPolynomial;
use expsol::frontend::{parse_equation, parse_function, print_equation, print_function};
use expsol::numeric::GaussianRational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn coeff_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-9i64..=9, 0..=max_deg + 1).prop_map(|c| Polynomial::from_ints(&c))
}

fn coeff_ratfunc() -> impl Strategy<Value = RationalFunction> {
    (coeff_poly(4), coeff_poly(4).prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn rebuild(x: &ExpPolynomial) -> ExpPolynomial {
    x.terms().fold(ExpPolynomial::zero(), |acc, (g, c)| acc + ExpPolynomial::with_coeff(c.clone(), g.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_function_leibniz(x in coeff_ratfunc(), y in coeff_ratfunc()) {
        prop_assert_eq!((&x * &y).derivative(), &x.derivative() * &y + &x * &y.derivative());
    }

    #[test]
    fn rational_function_equality_is_cross_multiplication(x in coeff_ratfunc(), y in coeff_ratfunc()) {
        let cross = x.num() * y.den() == y.num() * x.den();
        prop_assert_eq!(x == y, cross);
        let k = Polynomial::from_ints(&[3, -1, 2]);
        let same = RationalFunction::new(x.num() * &k, x.den() * &k).unwrap();
        prop_assert_eq!(same, x);
    }

    #[test]
    fn exppoly_ring_laws(x in exppoly(3, 3), y in exppoly(3, 3), z in exppoly(3, 3)) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &ExpPolynomial::one(), x.clone());
    }

    #[test]
    fn exppoly_leibniz(x in exppoly(3, 3), y in exppoly(3, 3)) {
        let lhs = (&x * &y).derivative();
        prop_assert_eq!(lhs, &x.derivative() * &y + &x * &y.derivative());
    }

    #[test]
    fn exppoly_stays_canonical(x in exppoly(3, 3), y in exppoly(3, 3)) {
        for v in [&x * &y, &x - &y, x.derivative(), x.pow(2)] {
            prop_assert!(v.is_canonical());
            prop_assert_eq!(rebuild(&v), v);
        }
    }

    #[test]
    fn nth_root_reconstructs(r in nonzero_ratfunc(2), c in unit(), n in 1u32..=5) {
        let s = CoefficientSum::term(r.pow(n), c.clone());
        let (q, u) = nth_root(&s, n).unwrap();
        prop_assert_eq!(CoefficientSum::term(q.pow(n), u), s);
    }

    #[test]
    fn nth_root_success_is_exact(r in nonzero_ratfunc(3), c in unit(), n in 2u32..=4) {
        let s = CoefficientSum::term(r, c);
        if let Ok((q, u)) = nth_root(&s, n) {
            prop_assert_eq!(CoefficientSum::term(q.pow(n), u), s);
        }
    }

    #[test]
    fn function_round_trip(x in exppoly(3, 3)) {
        let text = print_function(&x);
        prop_assert_eq!(parse_function(&text).unwrap(), x, "{}", text);
    }

    #[test]
    fn diffpoly_linear_in_monomials(p in diffpoly(3, 2), q in diffpoly(3, 2), f in single_term(2)) {
        prop_assert_eq!(p.concat(&q).evaluate(&f), p.evaluate(&f) + q.evaluate(&f));
    }

    #[test]
    fn exponents_confined_to_multiples(p in diffpoly(3, 2), f in single_term(2)) {
        let (base, _) = f.single_term().unwrap();
        let lead = base.leading_coeff().unwrap().clone();
        let mut top = -1i64;
        for (g, _) in p.evaluate(&f).terms() {
            let j = g.leading_coeff().map_or_else(|| int(0), |l| l / &lead);
            prop_assert!(j.is_integer());
            prop_assert_eq!(&base.scale(&j), g);
            top = top.max(j.to_integer().try_into().unwrap());
        }
        prop_assert!(top <= p.degree());
    }

    #[test]
    fn a_zero_drops_the_a_term(s in spec(), f in single_term(1)) {
        let plain = EquationSpec::new(s.n(), int(0), s.pd().clone(), s.rhs().to_vec()).unwrap();
        let expect = f.pow(s.n()) + s.pd().evaluate(&f);
        prop_assert_eq!(lhs_apply(&plain, &f), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn equation_round_trip(s in spec()) {
        let text = print_equation(&s);
        prop_assert_eq!(parse_equation(&text).unwrap(), s, "{}", text);
    }

    #[test]
    fn cramer_identity_on_random_data(s in cramer_spec(4)) {
        let rep = cramer_identity_check(&s).unwrap();
        prop_assert!(!rep.degenerate);
        prop_assert!(rep.holds);
    }

    #[test]
    fn recursive_rows_match_differentiation(s in cramer_spec(4)) {
        let m = build_system(&s);
        for (t, h) in h_derivatives(&s).iter().enumerate() {
            for (i, term) in s.rhs().iter().enumerate() {
                let c = h.get(&term.alpha.without_constant()).unwrap();
                let got = c.get(&term.alpha.constant_term()).cloned().unwrap_or_else(RationalFunction::zero);
                prop_assert_eq!(&got, &m.entries[t][i]);
                prop_assert_eq!(c.len(), 1);
            }
        }
    }

    #[test]
    fn minors_match_bordered_determinant(s in cramer_spec(3)) {
        let m = build_system(&s);
        let hs = h_derivatives(&s);
        prop_assert_eq!(d1_by_minors(&m, &hs), d1_direct(&m, &hs));
    }

    #[test]
    fn determinant_is_multiplicative(n in 2usize..=3, seed in prop::collection::vec(ratfunc(1), 18)) {
        let a: Vec<Vec<RationalFunction>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        let b: Vec<Vec<RationalFunction>> = (0..n).map(|i| seed[9 + i * n..9 + (i + 1) * n].to_vec()).collect();
        let ab: Vec<Vec<RationalFunction>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(RationalFunction::zero(), |acc, t| acc + &a[i][t] * &b[t][j])).collect())
            .collect();
        prop_assert_eq!(det(&ab), &det(&a) * &det(&b));
        prop_assert_eq!(expsol::elimination::det_bareiss(&ab), det(&ab));
    }

    #[test]
    fn merging_equal_exponents_keeps_verdict(s in spec(), f in single_term(1), split in nonzero_rational()) {
        let mut rhs = s.rhs().to_vec();
        let first = rhs[0].clone();
        rhs[0].p = first.p.scale(&split);
        rhs.push(expsol::equation::RhsTerm::new(&first.p - &first.p.scale(&split), first.alpha.clone()));
        if let Ok(split_spec) = s.with_rhs(rhs) {
            prop_assert_eq!(&split_spec, &s);
            prop_assert_eq!(verify(&split_spec, &f).holds, verify(&s, &f).holds);
        }
    }

    #[test]
    fn zero_test_agrees_with_sampling(x in entire_exppoly(3, 2), y in entire_exppoly(3, 2), zr in -8i64..=8, zi in -8i64..=8) {
        // (x·y) − (y·x) is zero symbolically; so is x − rebuild(x).
        let zero = &(&x * &y) - &(&y * &x) + (&x - &rebuild(&x));
        prop_assert!(zero.is_zero());
        let z0 = GaussianRational::new(Rational::new(BigInt::from(zr), 8.into()), Rational::new(BigInt::from(zi), 8.into()));
        let lhs = (&x * &y).eval_numeric(&z0, 128).unwrap();
        let rhs = x.eval_numeric(&z0, 128).unwrap().mul(&y.eval_numeric(&z0, 128).unwrap());
        prop_assert!(lhs.sub(&rhs).norm_f64() <= 1e-20 * (1.0 + lhs.norm_f64()));
    }

    #[test]
    fn verified_identities_sample_to_zero(f in single_term(2), p in diffpoly(2, 2)) {
        // Any f solves the equation whose right side is its own left side.
        let n = 3;
        let trial = EquationSpec::new(n, int(0), p.clone(), vec![expsol::equation::RhsTerm::new(RationalFunction::one(), Polynomial::z())]).unwrap();
        let lhs = lhs_apply(&trial, &f);
        let rhs: Vec<_> = lhs
            .terms()
            .filter(|(g, _)| !g.is_zero())
            .flat_map(|(g, c)| c.terms().map(move |(u, r)| expsol::equation::RhsTerm::new(r.clone(), g + &Polynomial::constant(u.clone()))).collect::<Vec<_>>())
            .collect();
        let constant_part = lhs.get(&Polynomial::zero()).is_some();
        prop_assume!(!constant_part && !rhs.is_empty());
        let s = trial.with_rhs(rhs).unwrap();
        let rep = expsol::equation::verify_with_samples(&s, &f, SampleConfig { points: 3, ..SampleConfig::default() });
        prop_assert!(rep.holds);
        for c in rep.numeric_checks {
            let r = c.residual.unwrap();
            prop_assert!(r < 1e-20, "{} at {}", r, c.point);
        }
        let _ = DiffPolynomial::zero();
    }
}

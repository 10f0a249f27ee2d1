use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use kstab::rootdata::{CartanType, Exp};
use kstab::ring::{Factor, Laurent, Mono, RationalExpression};
use kstab::text::parse_expression;

/// Evaluation at `q^{1/2} = t`, `e^{ϖ_i} = x_i`: an independent ring homomorphism.
fn eval(p: &Laurent, t: &BigRational, x: &[BigRational; 3]) -> BigRational {
    let pow = |b: &BigRational, e: i32| -> BigRational {
        let mut r = BigRational::one();
        for _ in 0..e.unsigned_abs() {
            r *= b;
        }
        if e < 0 {
            r.recip()
        } else {
            r
        }
    };
    p.terms()
        .map(|(m, c)| {
            let mut v = BigRational::from_integer(c.clone()) * pow(t, m.q2);
            for i in 0..3 {
                v *= pow(&x[i], m.wt[i]);
            }
            v
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

fn eval_rational(r: &RationalExpression, t: &BigRational, x: &[BigRational; 3]) -> Option<BigRational> {
    let mut den = BigRational::one();
    for f in r.denominator() {
        den *= eval(&f.to_laurent(), t, x);
    }
    (!den.is_zero()).then(|| eval(r.numerator(), t, x) / den)
}

fn point() -> (BigRational, [BigRational; 3]) {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    (r(7, 3), [r(5, 2), r(-3, 7), r(11, 5)])
}

fn mono() -> impl Strategy<Value = Mono> {
    (-3i32..=3, prop::array::uniform3(-2i32..=2)).prop_map(|(q2, wt)| Mono::new(q2, wt))
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((mono(), -4i64..=4), 0..6)
        .prop_map(|ts| Laurent::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

fn factor() -> impl Strategy<Value = Factor> {
    (-2i32..=2, prop::array::uniform3(-1i32..=1))
        .prop_filter("nontrivial", |(q2, wt)| *q2 != 0 || *wt != [0; 3])
        .prop_map(|(q2, wt)| Factor::new(q2, wt))
}

fn rational() -> impl Strategy<Value = RationalExpression> {
    (laurent(), prop::collection::vec(factor(), 0..3)).prop_map(|(n, d)| RationalExpression::new(n, d))
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Laurent::one(), a.clone());
    }

    #[test]
    fn laurent_product_matches_evaluation(a in laurent(), b in laurent()) {
        let (t, x) = point();
        prop_assert_eq!(eval(&(&a * &b), &t, &x), eval(&a, &t, &x) * eval(&b, &t, &x));
        prop_assert_eq!(eval(&(&a + &b), &t, &x), eval(&a, &t, &x) + eval(&b, &t, &x));
    }

    #[test]
    fn bar_is_an_involutive_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn exact_division_by_binomials(a in laurent(), f in factor()) {
        let p = &a * &f.to_laurent();
        prop_assert_eq!(p.div_binomial(&f), Some(a.clone()));
        if let Some(q) = a.div_binomial(&f) {
            prop_assert_eq!(&q * &f.to_laurent(), a);
        }
    }

    #[test]
    fn rational_field_operations_match_evaluation(a in rational(), b in rational()) {
        let (t, x) = point();
        let (ea, eb) = (eval_rational(&a, &t, &x).unwrap(), eval_rational(&b, &t, &x).unwrap());
        prop_assert_eq!(eval_rational(&(&a + &b), &t, &x).unwrap(), &ea + &eb);
        prop_assert_eq!(eval_rational(&(&a * &b), &t, &x).unwrap(), &ea * &eb);
        prop_assert_eq!(eval_rational(&(&a - &b), &t, &x).unwrap(), &ea - &eb);
    }

    #[test]
    fn rational_equality_is_cross_multiplication(a in rational(), f in factor()) {
        // a = a (1 - m) / (1 - m) as written over a different denominator.
        let b = RationalExpression::new(a.numerator() * &f.to_laurent(), {
            let mut d = a.denominator().to_vec();
            d.push(f);
            d
        });
        prop_assert!(a.equals(&b));
        prop_assert!(!(&a + &RationalExpression::one()).equals(&a));
    }

    #[test]
    fn json_round_trip(a in rational()) {
        let v = a.to_json(3);
        prop_assert!(RationalExpression::from_json(&v).unwrap().equals(&a));
        let p = a.numerator();
        prop_assert_eq!(&Laurent::from_json(&p.to_json(3)).unwrap(), p);
    }

    #[test]
    fn display_round_trips_through_the_parser(a in rational()) {
        let rs = CartanType::A3.root_system();
        let shown = a.display(3);
        let back = parse_expression(&shown, &rs).unwrap();
        prop_assert!(back.equals(&a), "{} parsed as {}", shown, back.display(3));
    }
}

#[test]
fn factor_canonical_form() {
    let f = Factor::new(-2, [0, -1, 0]);
    let (g, unit) = f.canonical();
    assert!(g.is_canonical());
    let m = unit.expect("non-canonical input");
    // 1 - X = -X (1 - X^{-1})
    let rhs = -&(&Laurent::mono(m, BigInt::one()) * &g.to_laurent());
    assert_eq!(f.to_laurent(), rhs);
}

#[test]
fn display_uses_half_integer_q_powers() {
    let p = &Laurent::q_half(1) - &Laurent::q_half(-1);
    assert_eq!(p.display(1), "-q^(-1/2) + q^(1/2)");
    let e: Exp = [1, -1, 0];
    assert_eq!(Laurent::e(e).display(2), "e^(w1-w2)");
}

#[test]
fn non_divisible_polynomial_keeps_its_denominator() {
    let f = Factor::new(0, [1, 0, 0]);
    let r = RationalExpression::new(Laurent::one(), vec![f]);
    assert!(!r.is_polynomial());
    assert!(Laurent::one().div_binomial(&f).is_none());
    let (t, x) = point();
    assert_eq!(eval_rational(&r, &t, &x).unwrap(), (BigRational::one() - &x[0]).recip());
}

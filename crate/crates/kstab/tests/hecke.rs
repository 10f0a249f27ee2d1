use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kstab::alcove::{AffineBraidWord, Alcove};
use kstab::hecke::{
    apply_braid, d_left, d_right, t_left, t_left_inv, t_left_word, t_right, t_right_inv, Composite, HeckeOp,
};
use kstab::kclass::KClass;
use kstab::ring::{Factor, Laurent, RationalExpression};
use kstab::rootdata::CartanType;
use kstab::stable::{StableEngine, StableSpec};
use kstab::verify::random_class;

fn class(t: CartanType, seed: u64) -> KClass {
    random_class(&t.root_system(), &mut ChaCha8Rng::seed_from_u64(seed))
}

fn q() -> Laurent {
    Laurent::q_half(2)
}

/// The two-by-two matrices of `T` and `T'` in type A1, written out by hand.
#[test]
fn sl2_operators_match_explicit_matrices() {
    let a: kstab::rootdata::Exp = [2, 0, 0];
    let na: kstab::rootdata::Exp = [-2, 0, 0];
    let one = Laurent::one();
    let qm1 = &q() - &one;
    for seed in 0..20 {
        let f = class(CartanType::A1, seed);
        let (fe, fs) = (f.restriction(0).clone(), f.restriction(1).clone());
        let over = |num: RationalExpression, x| num.div_factor(Factor::new(0, x));
        // T: at e, x = α; at s, x = -α.
        let te = over(&fe.mul_poly(&qm1) + &fs.mul_poly(&(&one - &Laurent::term(1, 2, na))), a);
        let ts = over(&fs.mul_poly(&qm1) + &fe.mul_poly(&(&one - &Laurent::term(1, 2, a))), na);
        let t = t_left(0, &f);
        assert!(t.restriction(0).equals(&te) && t.restriction(1).equals(&ts));
        // T': the off-diagonal coefficient is e^{2x} - q e^{x}.
        let off = |x: kstab::rootdata::Exp| &Laurent::e([2 * x[0], 0, 0]) - &Laurent::term(1, 2, x);
        let te = over(&fe.mul_poly(&qm1) + &fs.mul_poly(&off(a)), a);
        let ts = over(&fs.mul_poly(&qm1) + &fe.mul_poly(&off(na)), na);
        let t = t_right(0, &f);
        assert!(t.restriction(0).equals(&te) && t.restriction(1).equals(&ts));
    }
}

fn quadratic_holds(op: impl Fn(&KClass) -> KClass, f: &KClass) -> bool {
    // (T + 1)(T - q) F = T²F + (1 - q) T F - q F
    let tf = op(f);
    let lhs = &(&op(&tf) + &tf.scale_poly(&(&Laurent::one() - &q()))) - &f.scale_poly(&q());
    lhs.is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadratic_relations(ti in 0usize..4, seed in any::<u64>()) {
        let t = [CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2][ti];
        let f = class(t, seed);
        for i in 0..t.rank() {
            prop_assert!(quadratic_holds(|g| t_left(i, g), &f));
            prop_assert!(quadratic_holds(|g| t_right(i, g), &f));
            prop_assert!(t_left_inv(i, &t_left(i, &f)).equals(&f));
            prop_assert!(t_right(i, &t_right_inv(i, &f)).equals(&f));
        }
    }

    #[test]
    fn braid_relations(ti in 0usize..3, seed in any::<u64>()) {
        let t = [CartanType::A2, CartanType::B2, CartanType::G2][ti];
        let m = [3, 4, 6][ti];
        let f = class(t, seed);
        let run = |start: usize, op: &dyn Fn(usize, &KClass) -> KClass| {
            (0..m).fold(f.clone(), |g, k| op((start + k) % 2, &g))
        };
        prop_assert!(run(0, &t_left).equals(&run(1, &t_left)));
        prop_assert!(run(0, &t_right).equals(&run(1, &t_right)));
    }

    #[test]
    fn d_operators_are_mutually_adjoint(ti in 0usize..3, seed in any::<u64>()) {
        let t = [CartanType::A1, CartanType::A2, CartanType::B2][ti];
        let (f, g) = (class(t, seed), class(t, seed ^ 0x5555));
        for i in 0..t.rank() {
            prop_assert!(d_left(i, &f).pair(&g).equals(&f.pair(&d_right(i, &g))));
        }
    }

    #[test]
    fn weyl_action_commutes_with_operators(seed in any::<u64>(), w in 0usize..6) {
        let f = class(CartanType::A2, seed);
        for i in 0..2 {
            prop_assert!(t_left(i, &f.weyl_act(w)).equals(&t_left(i, &f).weyl_act(w)));
            prop_assert!(t_right(i, &f.weyl_act(w)).equals(&t_right(i, &f).weyl_act(w)));
        }
    }
}

/// Operators take genuine (polynomial) stable classes to polynomial classes.
#[test]
fn operators_preserve_polynomial_classes() {
    let engine = StableEngine::for_type(CartanType::A2);
    let basis = engine.basis(&StableSpec::plus(Alcove::neg()));
    for f in basis.iter() {
        for i in 0..2 {
            for g in [t_left(i, f), t_right(i, f), t_left_inv(i, f), d_right(i, f)] {
                assert!(g.is_polynomial());
            }
        }
    }
}

#[test]
fn t_word_follows_the_reduced_word() {
    let rs = CartanType::A2.root_system();
    let f = class(CartanType::A2, 3);
    let x = rs.weyl.parse("s1 s2").unwrap();
    assert!(t_left_word(&rs, x, &f).equals(&t_left(0, &t_left(1, &f))));
}

#[test]
fn braid_words_act_left_to_right() {
    let rs = CartanType::A2.root_system();
    let f = class(CartanType::A2, 4);
    let w = AffineBraidWord::lift(&rs, rs.weyl.parse("s1 s2").unwrap());
    let direct = HeckeOp::J(1).apply(&HeckeOp::J(0).apply(&f));
    assert!(apply_braid(&w, &f).equals(&direct));
    assert!(apply_braid(&w.inverse(), &apply_braid(&w, &f)).equals(&f));
    let l = AffineBraidWord::translation([1, -1, 0]);
    assert!(apply_braid(&l, &f).equals(&f.line_twist(&[1, -1, 0])));
}

#[test]
fn operator_syntax_round_trips() {
    let rs = CartanType::B2.root_system();
    for s in ["T1", "T2'", "T1^-1", "T2'^-1", "D1", "D2'", "TL1", "TR2", "J:s1", "Jinv:s2", "L:w1-2w2"] {
        let op = HeckeOp::parse(s, &rs).unwrap();
        assert_eq!(op.to_string(), s);
        assert_eq!(HeckeOp::parse(&op.to_string(), &rs).unwrap(), op);
    }
    for bad in ["T3", "T0", "D1^-1", "TL1'", "X1", ""] {
        assert!(HeckeOp::parse(bad, &rs).is_err(), "{bad}");
    }
    let f = class(CartanType::B2, 9);
    let c = Composite::parse("T1, T2'", &rs).unwrap();
    assert!(c.apply(&f).equals(&t_left(0, &t_right(1, &f))));
    assert!(Composite::parse(" , ", &rs).is_err());
}

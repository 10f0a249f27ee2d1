use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kstab::kclass::{euler_class, euler_factors, KClass};
use kstab::ring::{Laurent, RationalExpression};
use kstab::rootdata::CartanType;
use kstab::text::parse_expression;
use kstab::verify::random_class;
use kstab::Error;

const TYPES: [CartanType; 4] = [CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2];

fn class(t: CartanType, seed: u64) -> KClass {
    random_class(&t.root_system(), &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_round_trip(ti in 0usize..4, seed in any::<u64>()) {
        let f = class(TYPES[ti], seed);
        let back = KClass::from_json(&f.to_json()).unwrap();
        prop_assert!(back.equals(&f));
        prop_assert_eq!(back.cartan_type(), TYPES[ti]);
    }

    #[test]
    fn table_lines_parse_back(ti in 0usize..4, seed in any::<u64>()) {
        let f = class(TYPES[ti], seed);
        let rs = f.root_system().clone();
        for line in f.to_table().lines() {
            let (label, expr) = line.split_once('\t').unwrap();
            let w = rs.weyl.parse(label).unwrap();
            prop_assert!(parse_expression(expr, &rs).unwrap().equals(f.restriction(w)));
        }
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(ti in 0usize..3, seed in any::<u64>()) {
        let t = TYPES[ti];
        let (f, g, h) = (class(t, seed), class(t, seed + 1), class(t, seed + 2));
        prop_assert!(f.pair(&g).equals(&g.pair(&f)));
        prop_assert!((&f + &h).pair(&g).equals(&(&f.pair(&g) + &h.pair(&g))));
        let c = Laurent::q_half(3);
        prop_assert!(f.scale_poly(&c).pair(&g).equals(&f.pair(&g).mul_poly(&c)));
    }

    #[test]
    fn symmetries(ti in 0usize..4, seed in any::<u64>(), a in 0usize..12, b in 0usize..12) {
        let t = TYPES[ti];
        let f = class(t, seed);
        let rs = f.root_system().clone();
        let (a, b) = (a % rs.weyl.order(), b % rs.weyl.order());
        prop_assert!(f.dualize().dualize().equals(&f));
        prop_assert!(f.weyl_act(a).weyl_act(b).equals(&f.weyl_act(rs.weyl.mul(b, a))));
        let (l, m) = ([1, -1, 0], [0, 2, 1]);
        prop_assert!(f.line_twist(&l).line_twist(&m).equals(&f.line_twist(&[1, 1, 1])));
        prop_assert!((&f - &f).is_zero());
    }
}

/// `⟨[w], G⟩ = G|_w` for the fixed-point class `[w]`.
#[test]
fn fixed_point_classes_pick_out_restrictions() {
    for t in TYPES {
        let rs = t.root_system();
        let g = class(t, 11);
        for w in 0..rs.weyl.order() {
            let p = KClass::fixed_point_class(&rs, w);
            assert_eq!(p.support(), vec![w]);
            assert!(p.pair(&g).equals(g.restriction(w)), "{t}");
        }
    }
}

#[test]
fn euler_class_has_two_factors_per_positive_root() {
    for t in CartanType::ALL {
        let rs = t.root_system();
        for w in [0, rs.weyl.longest()] {
            let fs = euler_factors(&rs, w);
            assert_eq!(fs.len(), 2 * rs.num_positive_roots());
            let prod = fs.iter().fold(Laurent::one(), |acc, f| &acc * &f.to_laurent());
            assert_eq!(prod, euler_class(&rs, w));
        }
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    let rs = CartanType::A2.root_system();
    assert!(matches!(
        KClass::from_restrictions(&rs, vec![RationalExpression::one(); 5]),
        Err(Error::DimensionMismatch { expected: 6, got: 5 })
    ));
    let v = serde_json::json!({"type": "A2", "restrictions": {"s3": {"num": []}}});
    assert!(KClass::from_json(&v).is_err());
    assert!(KClass::from_json(&serde_json::json!({"type": "E8"})).is_err());
    assert!(KClass::from_json(&serde_json::json!({"type": "A2"})).is_err());
}

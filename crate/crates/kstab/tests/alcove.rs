use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use kstab::alcove::{
    alcoves_in_window, locate, neighbors, path_from_neg, positive_path_element, separating_walls, Alcove,
    AffineBraidWord,
};
use kstab::rootdata::{CartanType, RootSystem, Weight};
use kstab::text::parse_alcove;
use kstab::Error;

fn cases() -> Vec<(CartanType, i32)> {
    vec![
        (CartanType::A1, 2),
        (CartanType::A2, 1),
        (CartanType::B2, 1),
        (CartanType::G2, 1),
        (CartanType::A3, 0),
        (CartanType::B3, 0),
        (CartanType::C3, 0),
    ]
}

/// Integer parts of `(p, β^∨)` for every positive root: the alcove's coordinates.
fn floors(rs: &RootSystem, p: &Weight) -> Vec<BigInt> {
    (0..rs.positive_roots.len())
        .map(|k| rs.pair_rational(p, k).floor().to_integer())
        .collect()
}

#[test]
fn window_sizes() {
    for (t, w) in cases() {
        let rs = t.root_system();
        let n = alcoves_in_window(&rs, w).len();
        assert_eq!(n, rs.weyl.order() * (2 * w as usize + 1).pow(rs.rank as u32), "{t}");
    }
}

#[test]
fn interior_points_are_off_walls_and_locate_back() {
    for (t, w) in cases() {
        let rs = t.root_system();
        for a in alcoves_in_window(&rs, w) {
            let p = a.interior_point(&rs);
            for k in 0..rs.positive_roots.len() {
                assert!(!rs.pair_rational(&p, k).is_integer(), "{t}: {a} on a wall");
            }
            assert_eq!(locate(&rs, &p).unwrap(), a, "{t}");
        }
    }
}

#[test]
fn points_on_walls_are_rejected() {
    let rs = CartanType::A2.root_system();
    assert!(matches!(locate(&rs, &Weight::zero(2)), Err(Error::OnWall)));
}

#[test]
fn vertices_lie_in_the_closure() {
    for (t, w) in cases() {
        let rs = t.root_system();
        for a in alcoves_in_window(&rs, w) {
            let lo = floors(&rs, &a.interior_point(&rs));
            let vs = a.vertices(&rs);
            assert_eq!(vs.len(), rs.rank + 1);
            for v in &vs {
                for (k, n) in lo.iter().enumerate() {
                    let y = rs.pair_rational(v, k);
                    let n = BigRational::from_integer(n.clone());
                    assert!(y >= n && y <= n + BigRational::from_integer(1.into()), "{t}");
                }
            }
        }
    }
}

#[test]
fn each_alcove_has_rank_plus_one_neighbors() {
    for (t, w) in cases() {
        let rs = t.root_system();
        for a in alcoves_in_window(&rs, w) {
            let nb = neighbors(&rs, &a);
            assert_eq!(nb.len(), rs.rank + 1, "{t}: {}", a.label(&rs));
            for (wall, b) in nb {
                let sep = separating_walls(&rs, &a, &b);
                assert_eq!(sep.len(), 1);
                assert_eq!(sep[0].0, wall);
                assert_eq!(sep[0].1, a.below(&rs, &wall));
                assert!(neighbors(&rs, &b).iter().any(|(_, c)| *c == a));
            }
        }
    }
}

/// The walls between `∇₋` and `x∇₋` are counted by the length of `x`.
#[test]
fn separating_walls_from_neg_count_length() {
    for (t, _) in cases() {
        let rs = t.root_system();
        for x in 0..rs.weyl.order() {
            let a = Alcove::new(&rs, x, [0; 3]).unwrap();
            assert_eq!(separating_walls(&rs, &Alcove::neg(), &a).len(), rs.weyl.length(x), "{t}");
        }
    }
}

#[test]
fn symmetries_match_their_action_on_points() {
    for (t, w) in cases() {
        let rs = t.root_system();
        for a in alcoves_in_window(&rs, w) {
            let p = a.interior_point(&rs);
            let neg = a.negate(&rs);
            assert_eq!(locate(&rs, &p.neg()).unwrap(), neg);
            assert_eq!(neg.negate(&rs), a);
            for v in [1, rs.weyl.longest()] {
                assert_eq!(locate(&rs, &rs.weyl.act_rational(v, &p)).unwrap(), a.weyl_act(&rs, v));
            }
            for i in 0..rs.rank {
                let lam = rs.fundamental_weight(i);
                let shifted = p.add(&Weight::from_exp(&lam, rs.rank));
                assert_eq!(locate(&rs, &shifted).unwrap(), a.translate(&rs, &lam), "{t}");
            }
        }
    }
}

#[test]
fn fundamental_alcoves() {
    for (t, _) in cases() {
        let rs = t.root_system();
        let pos = Alcove::pos(&rs);
        assert_eq!(Alcove::neg().negate(&rs), pos);
        let p = pos.interior_point(&rs);
        for k in 0..rs.positive_roots.len() {
            let y = rs.pair_rational(&p, k);
            assert!(y > BigRational::zero() && y < BigRational::from_integer(1.into()), "{t}");
        }
    }
    let rs = CartanType::A2.root_system();
    assert!(matches!(Alcove::new(&rs, 0, [1, 0, 0]), Err(Error::NoncanonicalAlcove)));
}

#[test]
fn braid_words() {
    let rs = CartanType::A2.root_system();
    let a = parse_alcove("s1 s2*neg + a1", &rs).unwrap();
    assert_eq!(path_from_neg(&rs, &a).display(2), "[2w1-w2] s~1 s~2");
    let b = positive_path_element(&rs, &a, &Alcove::neg());
    // The trailing translation by the zero weight is the only difference.
    assert_eq!(b.tokens[..3], path_from_neg(&rs, &a).tokens[..]);
    assert_eq!(b.display(2), "[2w1-w2] s~1 s~2 [0]");
    let w = b.concat(&AffineBraidWord::lift(&rs, 3));
    assert_eq!(w.inverse().inverse(), w);
    assert_eq!(w.inverse().tokens.len(), w.tokens.len());
    assert_eq!(w.s_automorphism().s_automorphism(), w);
    assert_eq!(AffineBraidWord::default().display(2), "1");
}

proptest! {
    #[test]
    fn labels_parse_back(ti in 0usize..7, k in 0usize..10_000) {
        let (t, w) = cases()[ti];
        let rs = t.root_system();
        let all = alcoves_in_window(&rs, w.max(1));
        let a = all[k % all.len()];
        prop_assert_eq!(parse_alcove(&a.label(&rs), &rs).unwrap(), a);
    }
}

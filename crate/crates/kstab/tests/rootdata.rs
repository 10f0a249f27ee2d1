use std::collections::HashSet;

use kstab::rootdata::{exp_sub, exp_scale, parse_word, CartanType, Exp, MAX_RANK};
use proptest::prelude::*;

const ORDERS: [(CartanType, usize, usize); 7] = [
    (CartanType::A1, 2, 1),
    (CartanType::A2, 6, 3),
    (CartanType::A3, 24, 6),
    (CartanType::B2, 8, 4),
    (CartanType::B3, 48, 9),
    (CartanType::C3, 48, 9),
    (CartanType::G2, 12, 6),
];

#[test]
fn group_orders_and_root_counts() {
    for (t, order, roots) in ORDERS {
        let rs = t.root_system();
        assert_eq!(rs.weyl.order(), order, "{t}");
        assert_eq!(rs.num_positive_roots(), roots, "{t}");
        assert_eq!(rs.weyl.length(rs.weyl.longest()), roots, "{t}");
        assert_eq!(rs.weyl.identity(), 0);
        assert_eq!(rs.weyl.longest(), order - 1);
    }
}

#[test]
fn elements_sorted_by_length_then_word() {
    for t in CartanType::ALL {
        let w = &t.root_system().weyl;
        for i in 1..w.order() {
            let (a, b) = (w.element(i - 1), w.element(i));
            assert!((a.length, &a.word) < (b.length, &b.word), "{t}: {i}");
            assert_eq!(a.length, a.word.len());
        }
    }
}

#[test]
fn a2_element_order() {
    let w = &CartanType::A2.root_system().weyl;
    let labels: Vec<String> = (0..6).map(|i| w.label(i)).collect();
    assert_eq!(labels, ["e", "s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1"]);
}

#[test]
fn simple_roots_are_cartan_columns() {
    for t in CartanType::ALL {
        let rs = t.root_system();
        for j in 0..rs.rank {
            let col: Vec<i32> = (0..rs.rank).map(|i| rs.cartan[i][j]).collect();
            assert_eq!(&rs.simple_root(j)[..rs.rank], &col[..], "{t}");
        }
    }
}

/// `s_i λ = λ - (λ, α_i^∨) α_i` with `(λ, α_i^∨) = λ_i` in fundamental-weight coordinates.
#[test]
fn simple_reflection_formula() {
    for t in CartanType::ALL {
        let rs = t.root_system();
        for i in 0..rs.rank {
            for lam in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, -1, 3]] {
                let mut l: Exp = [0; MAX_RANK];
                l[..rs.rank].copy_from_slice(&lam[..rs.rank]);
                let want = exp_sub(&l, &exp_scale(&rs.simple_root(i), l[i]));
                assert_eq!(rs.weyl.act(rs.weyl.simple(i), &l), want, "{t} s{}", i + 1);
            }
        }
    }
}

#[test]
fn multiplication_is_a_group_action() {
    for t in CartanType::ALL {
        let rs = t.root_system();
        let w = &rs.weyl;
        let l: Exp = [1, 2, 3];
        for a in 0..w.order() {
            assert_eq!(w.mul(a, w.inverse(a)), 0);
            for b in 0..w.order() {
                assert_eq!(w.act(w.mul(a, b), &l), w.act(a, &w.act(b, &l)), "{t}");
            }
        }
    }
}

#[test]
fn w0_sends_positive_roots_to_negative() {
    for t in CartanType::ALL {
        let rs = t.root_system();
        for r in &rs.positive_roots {
            let image = rs.weyl.act(rs.weyl.longest(), &r.wt);
            assert!(!rs.is_positive_root(&image) && rs.root_index(&image).is_some(), "{t}");
        }
    }
}

/// Bruhat order from the subword property of one reduced word.
fn subword_oracle(t: CartanType) -> Vec<Vec<bool>> {
    let w = &t.root_system().weyl;
    let n = w.order();
    let mut le = vec![vec![false; n]; n];
    for v in 0..n {
        let word = w.word(v).to_vec();
        let mut below = HashSet::new();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> = (0..word.len()).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
            below.insert(w.from_word(&sub));
        }
        for u in below {
            le[u][v] = true;
        }
    }
    le
}

#[test]
fn bruhat_order_matches_subword_oracle() {
    for t in CartanType::ALL {
        let w = &t.root_system().weyl;
        let oracle = subword_oracle(t);
        for u in 0..w.order() {
            for v in 0..w.order() {
                assert_eq!(w.bruhat_le(u, v), oracle[u][v], "{t}: {} <= {}", w.label(u), w.label(v));
                assert_eq!(w.bruhat_lt(u, v), oracle[u][v] && u != v);
            }
        }
    }
}

#[test]
fn right_descents_match_lengths() {
    for t in CartanType::ALL {
        let rs = t.root_system();
        let w = &rs.weyl;
        for x in 0..w.order() {
            for (b, &s) in rs.reflections.iter().enumerate() {
                let shorter = w.length(w.mul(x, s)) < w.length(x);
                assert_eq!(rs.right_descends(x, b), shorter, "{t}");
            }
        }
    }
}

#[test]
fn root_lattice_coordinates() {
    let rs = CartanType::A2.root_system();
    assert_eq!(rs.to_root_coords(&[1, 1, 0]), Some(vec![1, 1]));
    assert_eq!(rs.to_root_coords(&[1, 0, 0]), None);
    let rs = CartanType::G2.root_system();
    assert!(rs.in_root_lattice(&[1, 0, 0]));
    assert!(rs.in_root_lattice(&[0, 1, 0]));
}

#[test]
fn word_parsing() {
    let w = &CartanType::A2.root_system().weyl;
    assert_eq!(w.parse("s1s2s1").unwrap(), w.parse("s2 s1 s2").unwrap());
    assert_eq!(w.parse("e").unwrap(), 0);
    assert!(parse_word("s4", 2).is_err());
    assert!("D4".parse::<CartanType>().is_err());
}

proptest! {
    #[test]
    fn labels_round_trip(ti in 0usize..7, k in 0usize..48) {
        let rs = CartanType::ALL[ti].root_system();
        let x = k % rs.weyl.order();
        prop_assert_eq!(rs.weyl.parse(&rs.weyl.label(x)).unwrap(), x);
    }

    #[test]
    fn length_of_product_is_subadditive(ti in 0usize..7, a in 0usize..48, b in 0usize..48) {
        let w = &CartanType::ALL[ti].root_system().weyl;
        let (a, b) = (a % w.order(), b % w.order());
        prop_assert!(w.length(w.mul(a, b)) <= w.length(a) + w.length(b));
        prop_assert_eq!(w.sign(w.mul(a, b)), w.sign(a) * w.sign(b));
    }
}

//! Alcoves of the affine hyperplane arrangement `{H_{α^∨,n}}` and affine braid words.
//!
//! Every alcove is written uniquely as `x∇₋ + μ` with `x ∈ W` and `μ` in the root
//! lattice, where `∇₋ = {λ : -1 < (λ, α^∨) < 0 for all α > 0}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{exp_add, exp_neg, exp_sub, Exp, RootSystem, Weight, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alcove {
    /// Weyl group index of `x`.
    pub x: usize,
    /// Translation in the root lattice, in fundamental-weight coordinates.
    pub mu: Exp,
}

/// The hyperplane `(λ, β^∨) = n` for the positive root with index `root`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wall {
    pub root: usize,
    pub n: i32,
}

impl Wall {
    pub fn display(&self, rs: &RootSystem) -> String {
        let c: Vec<String> = rs.positive_roots[self.root]
            .coroot
            .iter()
            .map(|x| x.to_string())
            .collect();
        format!("H(coroot [{}], {})", c.join(","), self.n)
    }
}

impl Alcove {
    pub fn new(rs: &RootSystem, x: usize, mu: Exp) -> Result<Alcove> {
        if !rs.in_root_lattice(&mu) {
            return Err(Error::NoncanonicalAlcove);
        }
        Ok(Alcove { x, mu })
    }

    /// The antidominant fundamental alcove `∇₋`.
    pub fn neg() -> Alcove {
        Alcove {
            x: 0,
            mu: [0; MAX_RANK],
        }
    }

    /// The dominant fundamental alcove `∇₊ = w0 ∇₋`.
    pub fn pos(rs: &RootSystem) -> Alcove {
        Alcove {
            x: rs.weyl.longest(),
            mu: [0; MAX_RANK],
        }
    }

    /// `-x(ρ)/h + μ`.
    pub fn interior_point(&self, rs: &RootSystem) -> Weight {
        let xr = Weight::from_exp(&rs.weyl.act(self.x, &rs.rho()), rs.rank);
        let h = BigRational::from_integer(BigInt::from(rs.coxeter_number as i64));
        Weight::from_exp(&self.mu, rs.rank).sub(&xr.scale(&(BigRational::one() / h)))
    }

    /// Vertices of the closure: images of `0` and `-ϖ_i/m_i`.
    pub fn vertices(&self, rs: &RootSystem) -> Vec<Weight> {
        let marks = rs.highest_coroot();
        let mu = Weight::from_exp(&self.mu, rs.rank);
        let mut out = vec![mu.clone()];
        for (i, m) in marks.iter().enumerate() {
            let mut e = [0; MAX_RANK];
            e[i] = -1;
            let v = rs.weyl.act_rational(self.x, &Weight::from_exp(&e, rs.rank));
            let v = v.scale(&BigRational::new(BigInt::one(), BigInt::from(*m)));
            out.push(v.add(&mu));
        }
        out
    }

    pub fn label(&self, rs: &RootSystem) -> String {
        format!(
            "{}*neg + {}",
            rs.weyl.label(self.x),
            crate::ring::format_weight(&self.mu, rs.rank)
        )
    }

    /// Root-lattice coordinates of `μ`.
    pub fn mu_root_coords(&self, rs: &RootSystem) -> Vec<i32> {
        rs.to_root_coords(&self.mu).expect("alcove translation in Q")
    }

    /// `w(x∇₋ + μ) = wx∇₋ + wμ`.
    pub fn weyl_act(&self, rs: &RootSystem, w: usize) -> Alcove {
        Alcove {
            x: rs.weyl.mul(w, self.x),
            mu: rs.weyl.act(w, &self.mu),
        }
    }

    /// `-(x∇₋ + μ) = x w0 ∇₋ - μ`.
    pub fn negate(&self, rs: &RootSystem) -> Alcove {
        Alcove {
            x: rs.weyl.mul(self.x, rs.weyl.longest()),
            mu: exp_neg(&self.mu),
        }
    }

    /// Translate by an arbitrary integral weight.
    pub fn translate(&self, rs: &RootSystem, lambda: &Exp) -> Alcove {
        if rs.in_root_lattice(lambda) {
            Alcove {
                x: self.x,
                mu: exp_add(&self.mu, lambda),
            }
        } else {
            let p = self
                .interior_point(rs)
                .add(&Weight::from_exp(lambda, rs.rank));
            locate(rs, &p).expect("translate of an interior point stays interior")
        }
    }

    /// Whether `(λ, β^∨) < n` on this alcove.
    pub fn below(&self, rs: &RootSystem, wall: &Wall) -> bool {
        let p = self.interior_point(rs);
        rs.pair_rational(&p, wall.root) < BigRational::from_integer(BigInt::from(wall.n))
    }
}

/// Finds the alcove containing a point not on any wall.
pub fn locate(rs: &RootSystem, p: &Weight) -> Result<Alcove> {
    if p.rank() != rs.rank {
        return Err(Error::DimensionMismatch {
            expected: rs.rank,
            got: p.rank(),
        });
    }
    for k in 0..rs.positive_roots.len() {
        if rs.pair_rational(p, k).is_integer() {
            return Err(Error::OnWall);
        }
    }
    let theta = &rs.positive_roots[rs.theta];
    let s_theta = rs.reflections[rs.theta];
    let minus_one = -BigRational::one();
    let mut cur = p.clone();
    let mut w = rs.weyl.identity();
    let mut nu: Exp = [0; MAX_RANK];
    loop {
        if let Some(i) = (0..rs.rank).find(|&i| cur.coords[i].is_positive()) {
            let s = rs.weyl.simple(i);
            cur = rs.weyl.act_rational(s, &cur);
            w = rs.weyl.mul(s, w);
            nu = rs.weyl.act(s, &nu);
        } else if rs.pair_rational(&cur, rs.theta) < minus_one {
            let th = Weight::from_exp(&theta.wt, rs.rank);
            cur = rs.weyl.act_rational(s_theta, &cur).sub(&th);
            w = rs.weyl.mul(s_theta, w);
            nu = exp_sub(&rs.weyl.act(s_theta, &nu), &theta.wt);
        } else {
            break;
        }
    }
    // cur = w p + ν lies in ∇₋, so p ∈ w^{-1}∇₋ - w^{-1}ν.
    let x = rs.weyl.inverse(w);
    Ok(Alcove {
        x,
        mu: exp_neg(&rs.weyl.act(x, &nu)),
    })
}

/// All walls `H_{β^∨,n}` separating two alcoves, with `a` on the lower side first.
pub fn separating_walls(rs: &RootSystem, a: &Alcove, b: &Alcove) -> Vec<(Wall, bool)> {
    let pa = a.interior_point(rs);
    let pb = b.interior_point(rs);
    let mut out = Vec::new();
    for k in 0..rs.positive_roots.len() {
        let ya = rs.pair_rational(&pa, k);
        let yb = rs.pair_rational(&pb, k);
        let (lo, hi, a_below) = if ya < yb {
            (ya, yb, true)
        } else {
            (yb, ya, false)
        };
        let mut n: BigInt = lo.floor().to_integer() + 1;
        while BigRational::from_integer(n.clone()) < hi {
            let ni: i32 = (&n).try_into().expect("wall index fits in i32");
            out.push((Wall { root: k, n: ni }, a_below));
            n += 1;
        }
    }
    out
}

/// The unique wall between adjacent alcoves; the flag is true when `a` lies below it.
pub fn separating_wall(rs: &RootSystem, a: &Alcove, b: &Alcove) -> Result<(Wall, bool)> {
    let walls = separating_walls(rs, a, b);
    if walls.len() == 1 {
        Ok(walls[0])
    } else {
        Err(Error::NotAdjacent)
    }
}

/// The alcove across a wall of `a`, given the wall.
pub fn reflect_across(rs: &RootSystem, a: &Alcove, wall: &Wall) -> Alcove {
    let p = a.interior_point(rs);
    let beta = &rs.positive_roots[wall.root];
    let shift = rs.pair_rational(&p, wall.root) - BigRational::from_integer(BigInt::from(wall.n));
    let q = p.sub(&Weight::from_exp(&beta.wt, rs.rank).scale(&shift));
    locate(rs, &q).expect("reflected interior point is interior")
}

/// The alcoves sharing a facet with `a`, with the facet.
pub fn neighbors(rs: &RootSystem, a: &Alcove) -> Vec<(Wall, Alcove)> {
    let p = a.interior_point(rs);
    let mut out = Vec::new();
    for k in 0..rs.positive_roots.len() {
        let v = rs.pair_rational(&p, k);
        let lo: i32 = (&v.floor().to_integer()).try_into().expect("wall index fits in i32");
        for n in [lo, lo + 1] {
            let wall = Wall { root: k, n };
            let b = reflect_across(rs, a, &wall);
            if separating_walls(rs, a, &b).len() == 1 {
                out.push((wall, b));
            }
        }
    }
    out
}

/// Alcoves `x∇₋ + μ` with root-lattice coordinates of `μ` bounded by `window`.
pub fn alcoves_in_window(rs: &RootSystem, window: i32) -> Vec<Alcove> {
    let mut mus: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..rs.rank {
        let mut next = Vec::new();
        for m in &mus {
            for c in -window..=window {
                let mut n = m.clone();
                n.push(c);
                next.push(n);
            }
        }
        mus = next;
    }
    let mut out = Vec::new();
    for m in &mus {
        let mu = rs.root_lattice_weight(m);
        for x in 0..rs.weyl.order() {
            out.push(Alcove { x, mu });
        }
    }
    out
}

/// Letter of an affine braid word: a lift `s̃_i^{±1}` or a translation `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidToken {
    Lift { i: usize, sign: i8 },
    Translation(Exp),
}

impl BraidToken {
    pub fn inverse(&self) -> BraidToken {
        match *self {
            BraidToken::Lift { i, sign } => BraidToken::Lift { i, sign: -sign },
            BraidToken::Translation(l) => BraidToken::Translation(exp_neg(&l)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffineBraidWord {
    pub tokens: Vec<BraidToken>,
}

impl AffineBraidWord {
    pub fn new(tokens: Vec<BraidToken>) -> AffineBraidWord {
        AffineBraidWord { tokens }
    }

    /// Positive lift `x̃` of a Weyl element along its canonical reduced word.
    pub fn lift(rs: &RootSystem, x: usize) -> AffineBraidWord {
        AffineBraidWord {
            tokens: rs
                .weyl
                .word(x)
                .iter()
                .map(|&i| BraidToken::Lift { i, sign: 1 })
                .collect(),
        }
    }

    pub fn translation(l: Exp) -> AffineBraidWord {
        AffineBraidWord {
            tokens: vec![BraidToken::Translation(l)],
        }
    }

    pub fn concat(&self, o: &AffineBraidWord) -> AffineBraidWord {
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&o.tokens);
        AffineBraidWord { tokens }
    }

    pub fn inverse(&self) -> AffineBraidWord {
        AffineBraidWord {
            tokens: self.tokens.iter().rev().map(BraidToken::inverse).collect(),
        }
    }

    /// The automorphism fixing every `s̃_α` and negating translations.
    pub fn s_automorphism(&self) -> AffineBraidWord {
        AffineBraidWord {
            tokens: self
                .tokens
                .iter()
                .map(|t| match *t {
                    BraidToken::Translation(l) => BraidToken::Translation(exp_neg(&l)),
                    lift => lift,
                })
                .collect(),
        }
    }

    pub fn display(&self, rank: usize) -> String {
        if self.tokens.is_empty() {
            return "1".to_string();
        }
        self.tokens
            .iter()
            .map(|t| match t {
                BraidToken::Lift { i, sign } if *sign > 0 => format!("s~{}", i + 1),
                BraidToken::Lift { i, .. } => format!("s~{}^-1", i + 1),
                BraidToken::Translation(l) => {
                    format!("[{}]", crate::ring::format_weight(l, rank))
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `b_{a,∇₋} = μ x̃` for `a = x∇₋ + μ`.
pub fn path_from_neg(rs: &RootSystem, a: &Alcove) -> AffineBraidWord {
    AffineBraidWord::translation(a.mu).concat(&AffineBraidWord::lift(rs, a.x))
}

/// `b_{a2,a1} = b_{a2,∇₋} b_{a1,∇₋}^{-1}`.
pub fn positive_path_element(rs: &RootSystem, a2: &Alcove, a1: &Alcove) -> AffineBraidWord {
    path_from_neg(rs, a2).concat(&path_from_neg(rs, a1).inverse())
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x#{}, μ={:?})", self.x, self.mu)
    }
}


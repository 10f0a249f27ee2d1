//! Demazure-Lusztig operators acting on localized K-classes.
//!
//! Writing `x = uα` for a simple root `α`:
//!
//! ```text
//! (T_α F)|_u  = [(q-1) F|_u + (1 - q e^{-x}) F|_{us}] / (1 - e^x)
//! (T'_α F)|_u = [(q-1) F|_u + (e^{2x} - q e^x) F|_{us}] / (1 - e^x)
//! ```
//!
//! Both satisfy `(T+1)(T-q) = 0`, and `D = -T - 1` is adjoint to `D' = -T' - 1`
//! for the localization pairing.

use std::fmt;

use crate::alcove::{AffineBraidWord, BraidToken};
use crate::error::{Error, Result};
use crate::kclass::KClass;
use crate::ring::{Factor, Laurent, RationalExpression};
use crate::rootdata::{exp_neg, exp_scale, Exp, RootSystem};

/// A single operator on K-classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeckeOp {
    T(usize),
    TPrime(usize),
    TInv(usize),
    TPrimeInv(usize),
    D(usize),
    DPrime(usize),
    /// `L_ρ T_α L_{-ρ}`.
    TL(usize),
    /// `L_{-ρ} T'_α L_ρ`.
    TR(usize),
    /// `J_{s̃_α} = q^{-1/2} T^R_α`.
    J(usize),
    JInv(usize),
    /// `J_λ = L_λ`.
    Twist(Exp),
}

fn pieces(rs: &RootSystem, i: usize, u: usize) -> (Exp, usize) {
    let x = rs.weyl.act(u, &rs.simple_root(i));
    (x, rs.weyl.mul(u, rs.weyl.simple(i)))
}

fn q_minus_one() -> Laurent {
    &Laurent::q_half(2) - &Laurent::one()
}

/// Generic two-term operator `[(q-1) F|_u + c(x) F|_{us}] / (1 - e^x)`.
fn two_term(f: &KClass, i: usize, off: impl Fn(&Exp) -> Laurent) -> KClass {
    let rs = f.root_system().clone();
    let qm1 = q_minus_one();
    let res = (0..rs.weyl.order())
        .map(|u| {
            let (x, us) = pieces(&rs, i, u);
            let a = f.restriction(u).mul_poly(&qm1);
            let b = f.restriction(us).mul_poly(&off(&x));
            (&a + &b).div_factor(Factor::new(0, x))
        })
        .collect();
    KClass::from_restrictions(&rs, res).expect("same root system")
}

/// `T_α` for the simple root `α_i`.
pub fn t_left(i: usize, f: &KClass) -> KClass {
    two_term(f, i, |x| &Laurent::one() - &Laurent::term(1, 2, exp_neg(x)))
}

/// `T'_α` for the simple root `α_i`.
pub fn t_right(i: usize, f: &KClass) -> KClass {
    two_term(f, i, |x| {
        &Laurent::e(exp_scale(x, 2)) - &Laurent::term(1, 2, *x)
    })
}

/// `T^{-1} = q^{-1} T + (q^{-1} - 1)`.
fn inverse_of(t: KClass, f: &KClass) -> KClass {
    let c = &Laurent::q_half(-2) - &Laurent::one();
    &t.shift_q(-2) + &f.scale_poly(&c)
}

pub fn t_left_inv(i: usize, f: &KClass) -> KClass {
    inverse_of(t_left(i, f), f)
}

pub fn t_right_inv(i: usize, f: &KClass) -> KClass {
    inverse_of(t_right(i, f), f)
}

/// `D_α = -T_α - 1`.
pub fn d_left(i: usize, f: &KClass) -> KClass {
    -&(&t_left(i, f) + f)
}

/// `D'_α = -T'_α - 1`.
pub fn d_right(i: usize, f: &KClass) -> KClass {
    -&(&t_right(i, f) + f)
}

pub fn t_conj_left(i: usize, f: &KClass) -> KClass {
    let rs = f.root_system();
    let rho = rs.rho();
    t_left(i, &f.line_twist(&exp_neg(&rho))).line_twist(&rho)
}

pub fn t_conj_right(i: usize, f: &KClass) -> KClass {
    let rs = f.root_system();
    let rho = rs.rho();
    t_right(i, &f.line_twist(&rho)).line_twist(&exp_neg(&rho))
}

fn t_conj_right_inv(i: usize, f: &KClass) -> KClass {
    inverse_of(t_conj_right(i, f), f)
}

impl HeckeOp {
    pub fn apply(&self, f: &KClass) -> KClass {
        match *self {
            HeckeOp::T(i) => t_left(i, f),
            HeckeOp::TPrime(i) => t_right(i, f),
            HeckeOp::TInv(i) => t_left_inv(i, f),
            HeckeOp::TPrimeInv(i) => t_right_inv(i, f),
            HeckeOp::D(i) => d_left(i, f),
            HeckeOp::DPrime(i) => d_right(i, f),
            HeckeOp::TL(i) => t_conj_left(i, f),
            HeckeOp::TR(i) => t_conj_right(i, f),
            HeckeOp::J(i) => t_conj_right(i, f).shift_q(-1),
            HeckeOp::JInv(i) => t_conj_right_inv(i, f).shift_q(1),
            HeckeOp::Twist(l) => f.line_twist(&l),
        }
    }

    fn simple_index(&self) -> Option<usize> {
        match *self {
            HeckeOp::Twist(_) => None,
            HeckeOp::T(i)
            | HeckeOp::TPrime(i)
            | HeckeOp::TInv(i)
            | HeckeOp::TPrimeInv(i)
            | HeckeOp::D(i)
            | HeckeOp::DPrime(i)
            | HeckeOp::TL(i)
            | HeckeOp::TR(i)
            | HeckeOp::J(i)
            | HeckeOp::JInv(i) => Some(i),
        }
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.simple_index() {
            Some(i) if i >= rank => Err(Error::Parse(format!(
                "operator index {} out of range for rank {rank}",
                i + 1
            ))),
            _ => Ok(()),
        }
    }

    /// Parses `T1`, `T1'`, `T1^-1`, `T1'^-1`, `D2`, `D2'`, `TL1`, `TR1`,
    /// `J:s1`, `Jinv:s1` and `L:<weight>` for a root system of the given rank.
    pub fn parse(s: &str, rs: &RootSystem) -> Result<HeckeOp> {
        let rank = rs.rank;
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown operator `{s}`"));
        if let Some(w) = s.strip_prefix("L:") {
            let wt = crate::text::parse_integral_weight_in(w, rs)?;
            return Ok(HeckeOp::Twist(wt));
        }
        let idx = |t: &str| -> Result<usize> {
            let t = t.trim().trim_start_matches('s');
            let n: usize = t.parse().map_err(|_| bad())?;
            if n == 0 || n > rank {
                return Err(Error::Parse(format!(
                    "operator index {n} out of range for rank {rank}"
                )));
            }
            Ok(n - 1)
        };
        if let Some(t) = s.strip_prefix("Jinv:") {
            return Ok(HeckeOp::JInv(idx(t)?));
        }
        if let Some(t) = s.strip_prefix("J:") {
            return Ok(HeckeOp::J(idx(t)?));
        }
        let (body, inv) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (body, prime) = match body.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (body, false),
        };
        let op = if let Some(t) = body.strip_prefix("TL") {
            HeckeOp::TL(idx(t)?)
        } else if let Some(t) = body.strip_prefix("TR") {
            HeckeOp::TR(idx(t)?)
        } else if let Some(t) = body.strip_prefix('T') {
            let i = idx(t)?;
            match (prime, inv) {
                (false, false) => HeckeOp::T(i),
                (true, false) => HeckeOp::TPrime(i),
                (false, true) => HeckeOp::TInv(i),
                (true, true) => HeckeOp::TPrimeInv(i),
            }
        } else if let Some(t) = body.strip_prefix('D') {
            if inv {
                return Err(bad());
            }
            let i = idx(t)?;
            if prime {
                HeckeOp::DPrime(i)
            } else {
                HeckeOp::D(i)
            }
        } else {
            return Err(bad());
        };
        if matches!(op, HeckeOp::TL(_) | HeckeOp::TR(_)) && (prime || inv) {
            return Err(bad());
        }
        Ok(op)
    }
}

impl fmt::Display for HeckeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeOp::T(i) => write!(f, "T{}", i + 1),
            HeckeOp::TPrime(i) => write!(f, "T{}'", i + 1),
            HeckeOp::TInv(i) => write!(f, "T{}^-1", i + 1),
            HeckeOp::TPrimeInv(i) => write!(f, "T{}'^-1", i + 1),
            HeckeOp::D(i) => write!(f, "D{}", i + 1),
            HeckeOp::DPrime(i) => write!(f, "D{}'", i + 1),
            HeckeOp::TL(i) => write!(f, "TL{}", i + 1),
            HeckeOp::TR(i) => write!(f, "TR{}", i + 1),
            HeckeOp::J(i) => write!(f, "J:s{}", i + 1),
            HeckeOp::JInv(i) => write!(f, "Jinv:s{}", i + 1),
            HeckeOp::Twist(l) => write!(f, "L:{}", crate::ring::format_weight(l, crate::rootdata::MAX_RANK)),
        }
    }
}

/// Composite operator; the rightmost factor is applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite(pub Vec<HeckeOp>);

impl Composite {
    pub fn parse(s: &str, rs: &RootSystem) -> Result<Composite> {
        let ops = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| HeckeOp::parse(t, rs))
            .collect::<Result<Vec<_>>>()?;
        if ops.is_empty() {
            return Err(Error::Parse("empty operator string".into()));
        }
        Ok(Composite(ops))
    }

    pub fn apply(&self, f: &KClass) -> KClass {
        self.0.iter().rev().fold(f.clone(), |acc, op| op.apply(&acc))
    }
}

/// `T_x = T_{s_1} ⋯ T_{s_k}` along the canonical reduced word of `x`.
pub fn t_left_word(rs: &RootSystem, x: usize, f: &KClass) -> KClass {
    rs.weyl
        .word(x)
        .iter()
        .rev()
        .fold(f.clone(), |acc, &i| t_left(i, &acc))
}

/// `T'_x = T'_{s_1} ⋯ T'_{s_k}` along the canonical reduced word of `x`.
pub fn t_right_word(rs: &RootSystem, x: usize, f: &KClass) -> KClass {
    rs.weyl
        .word(x)
        .iter()
        .rev()
        .fold(f.clone(), |acc, &i| t_right(i, &acc))
}

/// `(T'_x)^{-1} = T'^{-1}_{s_k} ⋯ T'^{-1}_{s_1}`.
pub fn t_right_word_inv(rs: &RootSystem, x: usize, f: &KClass) -> KClass {
    rs.weyl
        .word(x)
        .iter()
        .fold(f.clone(), |acc, &i| t_right_inv(i, &acc))
}

/// `(T_x)^{-1}`.
pub fn t_left_word_inv(rs: &RootSystem, x: usize, f: &KClass) -> KClass {
    rs.weyl
        .word(x)
        .iter()
        .fold(f.clone(), |acc, &i| t_left_inv(i, &acc))
}

/// Acts by an affine braid word: the word `ab` acts as `J_b ∘ J_a`.
pub fn apply_braid(word: &AffineBraidWord, f: &KClass) -> KClass {
    word.tokens.iter().fold(f.clone(), |acc, t| match *t {
        BraidToken::Lift { i, sign } if sign > 0 => HeckeOp::J(i).apply(&acc),
        BraidToken::Lift { i, .. } => HeckeOp::JInv(i).apply(&acc),
        BraidToken::Translation(l) => acc.line_twist(&l),
    })
}

/// The scalar `(q-1)/(1 - e^{x})`, exposed for the pointwise matrix description.
pub fn diagonal_coefficient(x: &Exp) -> RationalExpression {
    RationalExpression::new(q_minus_one(), vec![Factor::new(0, *x)])
}

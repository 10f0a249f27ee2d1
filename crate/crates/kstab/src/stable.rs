//! K-theoretic stable bases of `T^*(G/B)`.
//!
//! Two families are computed from one-point seeds by Demazure-Lusztig recursions:
//!
//! * `stab^{+}`: chamber `C₊`, polarization `TB`, seeded at `stab^{+,∇₋}_e`;
//! * `stab^{-}`: chamber `C₋`, polarization `T^*B`, seeded at `stab^{-,∇₊}_{w0}`.
//!
//! Other alcoves are reached by reflecting through walls of `W∇₋` and then
//! translating by the root lattice; other chambers by the Weyl group action.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::alcove::{
    locate, positive_path_element, separating_wall, AffineBraidWord, Alcove, Wall,
};
use crate::error::{Error, Result};
use crate::hecke::{apply_braid, t_left, t_left_inv, t_right, t_right_inv};
use crate::kclass::KClass;
use crate::ring::{Factor, Laurent, Mono, RationalExpression};
use crate::rootdata::{exp_neg, exp_scale, exp_sub, CartanType, Exp, RootSystem, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    TB,
    TStarB,
}

impl Polarization {
    pub fn opposite(self) -> Polarization {
        match self {
            Polarization::TB => Polarization::TStarB,
            Polarization::TStarB => Polarization::TB,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarization::TB => "TB",
            Polarization::TStarB => "T*B",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Polarization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "TB" | "tb" => Ok(Polarization::TB),
            "T*B" | "TstarB" | "t*b" | "TsB" => Ok(Polarization::TStarB),
            _ => Err(Error::Parse(format!("unknown polarization `{s}`"))),
        }
    }
}

/// `stab^{cC₊, T^{1/2}, ∇}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableSpec {
    /// Weyl group index `c` of the chamber `cC₊`.
    pub chamber: usize,
    pub polarization: Polarization,
    pub alcove: Alcove,
}

impl StableSpec {
    pub fn new(chamber: usize, polarization: Polarization, alcove: Alcove) -> StableSpec {
        StableSpec {
            chamber,
            polarization,
            alcove,
        }
    }

    /// `(C₊, TB, ∇)`.
    pub fn plus(alcove: Alcove) -> StableSpec {
        StableSpec::new(0, Polarization::TB, alcove)
    }

    /// `(C₋, T^*B, ∇)`.
    pub fn minus(rs: &RootSystem, alcove: Alcove) -> StableSpec {
        StableSpec::new(rs.weyl.longest(), Polarization::TStarB, alcove)
    }

    /// `(-C, T^{1/2}_{opp}, -∇)`.
    pub fn dual(&self, rs: &RootSystem) -> StableSpec {
        StableSpec {
            chamber: rs.weyl.mul(self.chamber, rs.weyl.longest()),
            polarization: self.polarization.opposite(),
            alcove: self.alcove.negate(rs),
        }
    }

    pub fn with_alcove(&self, alcove: Alcove) -> StableSpec {
        StableSpec { alcove, ..*self }
    }

    /// `u ⪯ v` for the chamber `cC₊`, i.e. `c^{-1}u ≤ c^{-1}v` in Bruhat order.
    pub fn order_le(&self, rs: &RootSystem, u: usize, v: usize) -> bool {
        let ci = rs.weyl.inverse(self.chamber);
        rs.weyl.bruhat_le(rs.weyl.mul(ci, u), rs.weyl.mul(ci, v))
    }

    pub fn order_lt(&self, rs: &RootSystem, u: usize, v: usize) -> bool {
        u != v && self.order_le(rs, u, v)
    }

    /// The Weyl element that transports the computed family to this chamber,
    /// and whether that family is `stab^{+}`.
    fn transport(&self, rs: &RootSystem) -> (usize, bool) {
        match self.polarization {
            Polarization::TB => (self.chamber, true),
            Polarization::TStarB => (rs.weyl.mul(self.chamber, rs.weyl.longest()), false),
        }
    }

    pub fn label(&self, rs: &RootSystem) -> String {
        format!(
            "chamber={} pol={} alcove=[{}]",
            rs.weyl.label(self.chamber),
            self.polarization,
            self.alcove.label(rs)
        )
    }
}

/// Diagonal restriction `stab_y|_y` as `q^{q2/2} ∏ (1 - q^{j/2} e^μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub q2: i32,
    pub factors: Vec<Factor>,
}

impl Normalization {
    pub fn to_laurent(&self) -> Laurent {
        self.factors
            .iter()
            .fold(Laurent::q_half(self.q2), |acc, f| &acc * &f.to_laurent())
    }

    /// `p / (this)`, as a rational expression.
    pub fn divide(&self, p: &Laurent) -> RationalExpression {
        RationalExpression::new(p.shift_q(-self.q2), self.factors.clone())
    }
}

/// Normalization of the computed families at `z`, before chamber transport.
fn base_normalization(rs: &RootSystem, plus: bool, z: usize) -> Normalization {
    let mut factors = Vec::with_capacity(rs.num_positive_roots());
    for r in &rs.positive_roots {
        let zb = rs.weyl.act(z, &r.wt);
        let negative = !rs.is_positive_root(&zb);
        factors.push(match (plus, negative) {
            // q - e^{zβ} = q (1 - q^{-1} e^{zβ})
            (true, true) => Factor::new(-2, zb),
            (true, false) => Factor::new(0, zb),
            (false, true) => Factor::new(0, exp_neg(&zb)),
            (false, false) => Factor::new(2, exp_neg(&zb)),
        });
    }
    Normalization {
        q2: rs.weyl.length(z) as i32,
        factors,
    }
}

/// `stab_y|_y` for any chamber and polarization.
pub fn normalization(rs: &RootSystem, spec: &StableSpec, y: usize) -> Normalization {
    let (c, plus) = spec.transport(rs);
    let z = rs.weyl.mul(rs.weyl.inverse(c), y);
    let base = base_normalization(rs, plus, z);
    let m = rs.weyl.element(c).matrix;
    Normalization {
        q2: base.q2,
        factors: base.factors.iter().map(|f| f.act(&m)).collect(),
    }
}

/// Result of crossing the wall between two adjacent alcoves.
#[derive(Clone, Debug)]
pub struct WallCrossing {
    pub wall: Wall,
    /// Whether the first alcove lies below the wall.
    pub first_below: bool,
    /// Whether `y s_α ≺ y`, so that a correction term appears.
    pub term_present: bool,
    pub coefficient: Laurent,
}

type Table = Vec<Vec<KClass>>;

/// Computes and caches stable bases for one root system.
pub struct StableEngine {
    rs: Arc<RootSystem>,
    plus: OnceLock<Table>,
    minus: OnceLock<Table>,
    bases: Mutex<HashMap<StableSpec, Arc<Vec<KClass>>>>,
}

impl StableEngine {
    pub fn new(rs: Arc<RootSystem>) -> StableEngine {
        StableEngine {
            rs,
            plus: OnceLock::new(),
            minus: OnceLock::new(),
            bases: Mutex::new(HashMap::new()),
        }
    }

    /// Shared engine per type, so tables are computed once per process.
    pub fn for_type(t: CartanType) -> Arc<StableEngine> {
        static ENGINES: OnceLock<Mutex<HashMap<CartanType, Arc<StableEngine>>>> = OnceLock::new();
        let map = ENGINES.get_or_init(|| Mutex::new(HashMap::new()));
        map.lock()
            .unwrap()
            .entry(t)
            .or_insert_with(|| Arc::new(StableEngine::new(t.root_system())))
            .clone()
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    fn seed(&self, plus: bool) -> KClass {
        let rs = &self.rs;
        let y = if plus {
            rs.weyl.identity()
        } else {
            rs.weyl.longest()
        };
        let mut k = KClass::zero(rs);
        k.set_restriction(y, base_normalization(rs, plus, y).to_laurent().into());
        k
    }

    /// `stab^{+,x∇₋}_y`, indexed `[x][y]`.
    pub fn plus_table(&self) -> &Table {
        self.plus.get_or_init(|| self.build_table(true))
    }

    /// `stab^{-,x∇₊}_y`, indexed `[x][y]`.
    pub fn minus_table(&self) -> &Table {
        self.minus.get_or_init(|| self.build_table(false))
    }

    /// Installs precomputed tables, e.g. loaded from a cache directory.
    pub fn install_tables(&self, plus: Table, minus: Table) {
        let _ = self.plus.set(plus);
        let _ = self.minus.set(minus);
    }

    fn build_table(&self, plus: bool) -> Table {
        let rs = &self.rs;
        let weyl = &rs.weyl;
        let n = weyl.order();
        let mut order: Vec<usize> = (0..n).collect();
        let mut first: Vec<Option<KClass>> = vec![None; n];
        if plus {
            // stab_{ws} = q^{-1/2} T'_s stab_w for ws > w.
            first[0] = Some(self.seed(true));
            for &w in &order[1..] {
                let (i, prev) = (0..rs.rank)
                    .map(|i| (i, weyl.mul(w, weyl.simple(i))))
                    .find(|(_, p)| weyl.length(*p) < weyl.length(w))
                    .unwrap();
                let f = t_right(i, first[prev].as_ref().unwrap()).shift_q(-1);
                first[w] = Some(f);
            }
        } else {
            // stab_{ws} = q^{1/2} T_s^{-1} stab_w for ws < w.
            order.reverse();
            first[weyl.longest()] = Some(self.seed(false));
            for &w in &order[1..] {
                let (i, prev) = (0..rs.rank)
                    .map(|i| (i, weyl.mul(w, weyl.simple(i))))
                    .find(|(_, p)| weyl.length(*p) > weyl.length(w))
                    .unwrap();
                let f = t_left_inv(i, first[prev].as_ref().unwrap()).shift_q(1);
                first[w] = Some(f);
            }
        }
        let mut table: Vec<Option<Vec<KClass>>> = vec![None; n];
        table[0] = Some(first.into_iter().map(Option::unwrap).collect());
        // Reflect through walls: x -> s x with s x > x.
        for x in 1..n {
            let (i, prev) = (0..rs.rank)
                .map(|i| (i, weyl.mul(weyl.simple(i), x)))
                .find(|(_, p)| weyl.length(*p) < weyl.length(x))
                .unwrap();
            let s = weyl.simple(i);
            let base = table[prev].as_ref().unwrap();
            let row: Vec<KClass> = (0..n)
                .into_par_iter()
                .map(|y| {
                    let ys = weyl.mul(y, s);
                    if plus {
                        // stab^{s x∇₋}_y = q^{1/2} T'^{-1}_s stab^{x∇₋}_{ys}
                        t_right_inv(i, &base[ys]).shift_q(1)
                    } else {
                        // stab^{s x∇₊}_y = q^{-1/2} T_s stab^{x∇₊}_{ys}
                        t_left(i, &base[ys]).shift_q(-1)
                    }
                })
                .collect();
            table[x] = Some(row);
        }
        table.into_iter().map(Option::unwrap).collect()
    }

    /// The full basis `{stab_y}` for a spec, indexed by `y`.
    pub fn basis(&self, spec: &StableSpec) -> Arc<Vec<KClass>> {
        if let Some(b) = self.bases.lock().unwrap().get(spec) {
            return b.clone();
        }
        let out = Arc::new(self.compute_basis(spec));
        self.bases.lock().unwrap().insert(*spec, out.clone());
        out
    }

    /// Same as [`StableEngine::basis`] without storing the result.
    pub fn compute_basis(&self, spec: &StableSpec) -> Vec<KClass> {
        if let Some(b) = self.bases.lock().unwrap().get(spec) {
            return b.as_ref().clone();
        }
        let rs = &self.rs;
        let weyl = &rs.weyl;
        let (c, plus) = spec.transport(rs);
        let a = spec.alcove;
        let (table, x) = if plus {
            (self.plus_table(), a.x)
        } else {
            // x∇₋ = (x w0)∇₊
            (self.minus_table(), weyl.mul(a.x, weyl.longest()))
        };
        let cinv = weyl.inverse(c);
        let out: Vec<KClass> = (0..weyl.order())
            .map(|y| {
                let z = weyl.mul(cinv, y);
                let f = translate(rs, &table[x][z], z, &a.mu);
                if c == 0 {
                    f
                } else {
                    f.weyl_act(c)
                }
            })
            .collect();
        out
    }

    pub fn stable_basis(&self, spec: &StableSpec, y: usize) -> KClass {
        self.basis(spec)[y].clone()
    }

    /// Solves `stab^{a1}_y = stab^{a2}_y + f stab^{a2}_{y s_α}` at the fixed point `y s_α`.
    pub fn wall_cross_coefficient(
        &self,
        spec: &StableSpec,
        a1: &Alcove,
        a2: &Alcove,
        y: usize,
    ) -> Result<WallCrossing> {
        let rs = &self.rs;
        let (wall, first_below) = separating_wall(rs, a1, a2)?;
        let ys = rs.weyl.mul(y, rs.reflections[wall.root]);
        let b1 = self.basis(&spec.with_alcove(*a1));
        let b2 = self.basis(&spec.with_alcove(*a2));
        let term_present = spec.order_lt(rs, ys, y);
        let coefficient = if term_present {
            let diff = b1[y].restriction(ys) - b2[y].restriction(ys);
            let diff = diff.to_polynomial()?;
            normalization(rs, &spec.with_alcove(*a2), ys)
                .divide(&diff)
                .to_polynomial()?
        } else {
            Laurent::zero()
        };
        Ok(WallCrossing {
            wall,
            first_below,
            term_present,
            coefficient,
        })
    }

    /// Coefficients of `F` in the basis of `spec`, via the dual basis.
    pub fn expand_in_basis(&self, f: &KClass, spec: &StableSpec) -> Vec<RationalExpression> {
        let dual = self.basis(&spec.dual(&self.rs));
        dual.iter().map(|d| f.pair(d)).collect()
    }

    /// `Σ_w c_w stab_w`.
    pub fn combine(&self, spec: &StableSpec, coeffs: &[RationalExpression]) -> KClass {
        let basis = self.basis(spec);
        let mut acc = KClass::zero(&self.rs);
        for (c, b) in coeffs.iter().zip(basis.iter()) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }

    /// `L_{-ρ} ⊗ stab^{+,∇₋}_e`, the starting point of the braid group construction.
    pub fn fstab_seed(&self) -> KClass {
        self.seed(true).line_twist(&exp_neg(&self.rs.rho()))
    }

    /// `fstab_λ(y)` for a regular `λ`, built from the seed by braid group operators only.
    pub fn fstab(&self, lambda: &Weight, y: usize) -> Result<KClass> {
        let rs = &self.rs;
        let a = locate(rs, lambda)?;
        let x = a.x;
        let yx = rs.weyl.mul(y, x);
        let at_neg = apply_braid(&AffineBraidWord::lift(rs, yx), &self.fstab_seed());
        let in_chamber = apply_braid(&AffineBraidWord::lift(rs, x).inverse(), &at_neg);
        let shifted = apply_braid(&AffineBraidWord::translation(a.mu), &in_chamber);
        let mu_y = rs.weyl.act(y, &a.mu);
        Ok(shifted.map(|_, r| r.shift_e(&exp_neg(&mu_y))))
    }

    /// Braid word for `[b_{a2,a1}^{-1}] = [b_{a2,∇₋}^{-1}] ∘ [b_{a1,∇₋}]`.
    pub fn monodromy_word(&self, a1: &Alcove, a2: &Alcove) -> AffineBraidWord {
        positive_path_element(&self.rs, a2, a1)
            .inverse()
            .s_automorphism()
    }

    pub fn monodromy_apply(&self, a1: &Alcove, a2: &Alcove, f: &KClass) -> KClass {
        apply_braid(&self.monodromy_word(a1, a2), f)
    }
}

/// `stab^{∇+μ}_z = e^{-zμ} L_μ ⊗ stab^∇_z`.
pub fn translate(rs: &RootSystem, f: &KClass, z: usize, mu: &Exp) -> KClass {
    if *mu == [0; crate::rootdata::MAX_RANK] {
        return f.clone();
    }
    let zmu = rs.weyl.act(z, mu);
    f.map(|v, r| r.shift_e(&exp_sub(&rs.weyl.act(v, mu), &zmu)))
}

/// `± e^{-n yβ} (q^{1/2} - q^{-1/2})`, positive when the first alcove is below the wall.
pub fn wall_cross_closed_form(rs: &RootSystem, wall: &Wall, first_below: bool, y: usize) -> Laurent {
    let yb = rs.weyl.act(y, &rs.positive_roots[wall.root].wt);
    let e = exp_scale(&yb, -wall.n);
    let f = &Laurent::mono(Mono::new(1, e), BigInt::one())
        - &Laurent::mono(Mono::new(-1, e), BigInt::one());
    if first_below {
        f
    } else {
        -&f
    }
}

/// Scalar `e^{wxy^{-1}μ - wλ}` for the monodromy from `x∇₋+λ` to `y∇₋+μ` at `w`,
/// and the target fixed point `wxy^{-1}`.
pub fn monodromy_scalar(rs: &RootSystem, a1: &Alcove, a2: &Alcove, w: usize) -> (Exp, usize) {
    let weyl = &rs.weyl;
    let target = weyl.mul(weyl.mul(w, a1.x), weyl.inverse(a2.x));
    let e = exp_sub(&weyl.act(target, &a2.mu), &weyl.act(w, &a1.mu));
    (e, target)
}

//! Equivariant K-theory classes on `T^*(G/B)` through their fixed-point restrictions.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{Factor, Laurent, Mono, RationalExpression};
use crate::rootdata::{exp_neg, CartanType, Exp, RootSystem};

/// A vector of restrictions `F|_w`, indexed by Weyl group elements.
#[derive(Clone, Debug)]
pub struct KClass {
    rs: Arc<RootSystem>,
    res: Vec<RationalExpression>,
}

/// Factors of `∧^•T_w = ∏_{α>0} (1 - e^{wα})(1 - q e^{-wα})`.
pub fn euler_factors(rs: &RootSystem, w: usize) -> Vec<Factor> {
    let mut out = Vec::with_capacity(2 * rs.num_positive_roots());
    for r in &rs.positive_roots {
        let wa = rs.weyl.act(w, &r.wt);
        out.push(Factor::new(0, wa));
        out.push(Factor::new(2, exp_neg(&wa)));
    }
    out
}

pub fn euler_class(rs: &RootSystem, w: usize) -> Laurent {
    euler_factors(rs, w)
        .iter()
        .fold(Laurent::one(), |acc, f| &acc * &f.to_laurent())
}

impl KClass {
    pub fn zero(rs: &Arc<RootSystem>) -> KClass {
        KClass {
            rs: rs.clone(),
            res: vec![RationalExpression::zero(); rs.weyl.order()],
        }
    }

    pub fn from_restrictions(rs: &Arc<RootSystem>, res: Vec<RationalExpression>) -> Result<KClass> {
        if res.len() != rs.weyl.order() {
            return Err(Error::DimensionMismatch {
                expected: rs.weyl.order(),
                got: res.len(),
            });
        }
        Ok(KClass {
            rs: rs.clone(),
            res,
        })
    }

    pub fn from_polynomials(rs: &Arc<RootSystem>, res: Vec<Laurent>) -> Result<KClass> {
        KClass::from_restrictions(rs, res.into_iter().map(RationalExpression::from).collect())
    }

    /// Class of the fixed point `w`: `∧^•T_w` at `w`, zero elsewhere.
    pub fn fixed_point_class(rs: &Arc<RootSystem>, w: usize) -> KClass {
        let mut k = KClass::zero(rs);
        k.res[w] = euler_class(rs, w).into();
        k
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.rs.cartan_type
    }

    pub fn restriction(&self, w: usize) -> &RationalExpression {
        &self.res[w]
    }

    pub fn restrictions(&self) -> &[RationalExpression] {
        &self.res
    }

    pub fn set_restriction(&mut self, w: usize, r: RationalExpression) {
        self.res[w] = r;
    }

    pub fn is_zero(&self) -> bool {
        self.res.iter().all(RationalExpression::is_zero)
    }

    /// All restrictions are Laurent polynomials.
    pub fn is_polynomial(&self) -> bool {
        self.res.iter().all(RationalExpression::is_polynomial)
    }

    /// Fixed points with nonzero restriction.
    pub fn support(&self) -> Vec<usize> {
        (0..self.res.len()).filter(|&w| !self.res[w].is_zero()).collect()
    }

    pub fn map(&self, f: impl Fn(usize, &RationalExpression) -> RationalExpression) -> KClass {
        KClass {
            rs: self.rs.clone(),
            res: self.res.iter().enumerate().map(|(w, r)| f(w, r)).collect(),
        }
    }

    pub fn scale(&self, c: &RationalExpression) -> KClass {
        self.map(|_, r| r * c)
    }

    pub fn scale_poly(&self, c: &Laurent) -> KClass {
        self.map(|_, r| r.mul_poly(c))
    }

    /// Multiplies by `q^{k/2}`.
    pub fn shift_q(&self, k: i32) -> KClass {
        self.map(|_, r| r.shift_q(k))
    }

    /// `(L_λ ⊗ F)|_w = e^{wλ} F|_w`.
    pub fn line_twist(&self, lambda: &Exp) -> KClass {
        self.map(|w, r| r.shift_e(&self.rs.weyl.act(w, lambda)))
    }

    /// `w(F)|_v = w(F|_{w^{-1} v})`.
    pub fn weyl_act(&self, w: usize) -> KClass {
        let weyl = &self.rs.weyl;
        let m = weyl.element(w).matrix;
        let winv = weyl.inverse(w);
        KClass {
            rs: self.rs.clone(),
            res: (0..self.res.len())
                .map(|v| self.res[weyl.mul(winv, v)].act(&m))
                .collect(),
        }
    }

    /// Sheaf dual, restricting to the bar involution at each fixed point.
    pub fn dualize(&self) -> KClass {
        self.map(|_, r| r.bar())
    }

    /// `⟨F, G⟩ = Σ_w F|_w G|_w / ∧^•T_w`.
    pub fn pair(&self, other: &KClass) -> RationalExpression {
        let mut acc = RationalExpression::zero();
        for w in 0..self.res.len() {
            let (a, b) = (&self.res[w], &other.res[w]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let mut den: Vec<Factor> = a.denominator().to_vec();
            den.extend_from_slice(b.denominator());
            den.extend(euler_factors(&self.rs, w));
            let term = RationalExpression::new(a.numerator() * b.numerator(), den);
            acc = &acc + &term;
        }
        acc
    }

    pub fn equals(&self, other: &KClass) -> bool {
        self.res.len() == other.res.len()
            && self.res.iter().zip(&other.res).all(|(a, b)| a.equals(b))
    }

    /// Fixed points where two classes differ.
    pub fn diff_points(&self, other: &KClass) -> Vec<usize> {
        (0..self.res.len())
            .filter(|&w| !self.res[w].equals(&other.res[w]))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rank = self.rs.rank;
        let mut map = serde_json::Map::new();
        for (w, r) in self.res.iter().enumerate() {
            map.insert(self.rs.weyl.label(w), r.to_json(rank));
        }
        json!({"type": self.rs.label(), "restrictions": Value::Object(map)})
    }

    pub fn from_json(v: &Value) -> Result<KClass> {
        let t: CartanType = v
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing `type`".into()))?
            .parse()?;
        let rs = t.root_system();
        let map = v
            .get("restrictions")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing `restrictions` object".into()))?;
        let mut k = KClass::zero(&rs);
        for (key, val) in map {
            let w = rs.weyl.parse(key)?;
            k.res[w] = RationalExpression::from_json(val)
                .map_err(|e| e.context(format!("restriction at `{key}`")))?;
        }
        Ok(k)
    }

    /// One `element<TAB>restriction` line per fixed point.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        for (w, r) in self.res.iter().enumerate() {
            s.push_str(&self.rs.weyl.label(w));
            s.push('\t');
            s.push_str(&r.display(self.rs.rank));
            s.push('\n');
        }
        s
    }

    /// Pointwise restrictions as a map from element labels, for display.
    pub fn labelled(&self) -> BTreeMap<String, String> {
        (0..self.res.len())
            .map(|w| (self.rs.weyl.label(w), self.res[w].display(self.rs.rank)))
            .collect()
    }
}

impl PartialEq for KClass {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl Add<&KClass> for &KClass {
    type Output = KClass;
    fn add(self, o: &KClass) -> KClass {
        self.map(|w, r| r + &o.res[w])
    }
}

impl Sub<&KClass> for &KClass {
    type Output = KClass;
    fn sub(self, o: &KClass) -> KClass {
        self.map(|w, r| r - &o.res[w])
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        self.map(|_, r| -r)
    }
}

impl Add<KClass> for KClass {
    type Output = KClass;
    fn add(self, o: KClass) -> KClass {
        &self + &o
    }
}

impl Sub<KClass> for KClass {
    type Output = KClass;
    fn sub(self, o: KClass) -> KClass {
        &self - &o
    }
}

/// `q^{k/2} - q^{-k/2}`.
pub fn q_minus_qinv(k: i32) -> Laurent {
    &Laurent::q_half(k) - &Laurent::q_half(-k)
}

/// Signed monomial `±q^{q2/2} e^{wt}` as a Laurent polynomial.
pub fn signed_mono(sign: i64, q2: i32, wt: Exp) -> Laurent {
    Laurent::mono(Mono::new(q2, wt), BigInt::from(sign))
}

pub fn unit() -> Laurent {
    Laurent::mono(Mono::ONE, BigInt::one())
}

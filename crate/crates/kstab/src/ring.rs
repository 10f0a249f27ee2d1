//! The ring `Z[q^{±1/2}][Λ]` and its localization at binomials `1 - q^{j/2} e^μ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::{exp_add, exp_neg, mat_apply, Exp, Matrix, MAX_RANK};

/// The monomial `q^{q2/2} e^{wt}`. Ordered lexicographically by `(wt, q2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub wt: Exp,
    pub q2: i32,
}

impl Mono {
    pub const ONE: Mono = Mono {
        wt: [0; MAX_RANK],
        q2: 0,
    };

    pub fn new(q2: i32, wt: Exp) -> Mono {
        Mono { wt, q2 }
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono {
            wt: exp_add(&self.wt, &o.wt),
            q2: self.q2 + o.q2,
        }
    }

    pub fn inv(&self) -> Mono {
        Mono {
            wt: exp_neg(&self.wt),
            q2: -self.q2,
        }
    }

    fn as_vec4(&self) -> [i32; 4] {
        [self.wt[0], self.wt[1], self.wt[2], self.q2]
    }

    fn from_vec4(v: [i32; 4]) -> Mono {
        Mono {
            wt: [v[0], v[1], v[2]],
            q2: v[3],
        }
    }
}

/// Sparse Laurent polynomial in `q^{1/2}` and `e^λ` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<Mono, BigInt>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::mono(Mono::ONE, BigInt::one())
    }

    pub fn constant(c: i64) -> Laurent {
        Laurent::mono(Mono::ONE, BigInt::from(c))
    }

    pub fn mono(m: Mono, c: BigInt) -> Laurent {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { terms }
    }

    /// `q^{k/2}`.
    pub fn q_half(k: i32) -> Laurent {
        Laurent::mono(Mono::new(k, [0; MAX_RANK]), BigInt::one())
    }

    /// `e^{wt}`.
    pub fn e(wt: Exp) -> Laurent {
        Laurent::mono(Mono::new(0, wt), BigInt::one())
    }

    /// `c q^{q2/2} e^{wt}`.
    pub fn term(c: i64, q2: i32, wt: Exp) -> Laurent {
        Laurent::mono(Mono::new(q2, wt), BigInt::from(c))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Single term `c·m`, if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(Mono, BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigInt) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn shift(&self, by: &Mono) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(m, x)| (m.mul(by), x.clone())).collect(),
        }
    }

    /// Multiplies by `q^{k/2}`.
    pub fn shift_q(&self, k: i32) -> Laurent {
        self.shift(&Mono::new(k, [0; MAX_RANK]))
    }

    /// Multiplies by `e^{wt}`.
    pub fn shift_e(&self, wt: &Exp) -> Laurent {
        self.shift(&Mono::new(0, *wt))
    }

    /// `q^{1/2} -> q^{-1/2}`, `e^λ -> e^{-λ}`.
    pub fn bar(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (m.inv(), c.clone())).collect(),
        }
    }

    /// `e^λ -> e^{Mλ}` for a Weyl group matrix `M`.
    pub fn act(&self, m: &Matrix) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (Mono::new(k.q2, mat_apply(m, &k.wt)), c.clone()))
                .collect(),
        }
    }

    /// Support in the weight lattice, forgetting the powers of `q`.
    pub fn weights(&self) -> Vec<Exp> {
        let mut v: Vec<Exp> = self.terms.keys().map(|m| m.wt).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn pow(&self, n: u32) -> Laurent {
        let mut out = Laurent::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact quotient by `1 - q^{j/2} e^μ`, or `None` if it does not divide.
    pub fn div_binomial(&self, f: &Factor) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let (cf, unit) = f.canonical();
        // f = unit_c * unit_m * cf, so self / f = (self / cf) * unit^{-1}.
        let q = self.div_canonical(&cf)?;
        match unit {
            None => Some(q),
            Some(m) => Some(q.shift(&m.inv()).scale(&BigInt::from(-1))),
        }
    }

    fn div_canonical(&self, f: &Factor) -> Option<Laurent> {
        let v = Mono::new(f.q2, f.wt).as_vec4();
        let p = v.iter().position(|x| *x != 0)?;
        let vp = v[p];
        debug_assert!(vp > 0);
        let mut lines: FxHashMap<[i32; 4], Vec<(i32, &BigInt)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let e = m.as_vec4();
            let k = e[p].div_euclid(vp);
            let rep = [
                e[0] - k * v[0],
                e[1] - k * v[1],
                e[2] - k * v[2],
                e[3] - k * v[3],
            ];
            lines.entry(rep).or_default().push((k, c));
        }
        let mut out = BTreeMap::new();
        for (rep, mut pts) in lines {
            pts.sort_by_key(|x| x.0);
            let mut acc = BigInt::zero();
            let mut prev = pts[0].0;
            for (k, c) in pts {
                // Positions strictly between two support points carry the running sum.
                if !acc.is_zero() {
                    for j in prev..k {
                        let at = [
                            rep[0] + j * v[0],
                            rep[1] + j * v[1],
                            rep[2] + j * v[2],
                            rep[3] + j * v[3],
                        ];
                        out.insert(Mono::from_vec4(at), acc.clone());
                    }
                }
                acc += c;
                prev = k;
            }
            if !acc.is_zero() {
                return None;
            }
        }
        Some(Laurent { terms: out })
    }

    pub fn to_json(&self, rank: usize) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({"q2": m.q2, "wt": &m.wt[..rank], "c": c.to_string()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Laurent> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `terms` array".into()))?;
        let mut out = Laurent::zero();
        for t in terms {
            let q2 = t
                .get("q2")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("term without integer `q2`".into()))?;
            let wt = parse_exp_json(t.get("wt"))?;
            let c = match t.get("c") {
                Some(Value::String(s)) => s
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?,
                Some(Value::Number(n)) => BigInt::from(
                    n.as_i64()
                        .ok_or_else(|| Error::Parse("bad coefficient".into()))?,
                ),
                _ => return Err(Error::Parse("term without coefficient `c`".into())),
            };
            out.add_term(Mono::new(q2 as i32, wt), c);
        }
        Ok(out)
    }

    pub fn display(&self, rank: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !a.is_one() {
                factors.push(a.to_string());
            }
            if m.q2 != 0 {
                factors.push(format_q(m.q2));
            }
            if m.wt != [0; MAX_RANK] {
                factors.push(format!("e^({})", format_weight(&m.wt, rank)));
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

fn parse_exp_json(v: Option<&Value>) -> Result<Exp> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing weight array `wt`".into()))?;
    if arr.len() > MAX_RANK {
        return Err(Error::DimensionMismatch {
            expected: MAX_RANK,
            got: arr.len(),
        });
    }
    let mut e = [0; MAX_RANK];
    for (x, a) in e.iter_mut().zip(arr) {
        *x = a
            .as_i64()
            .ok_or_else(|| Error::Parse("weight entries must be integers".into()))?
            as i32;
    }
    Ok(e)
}

pub fn format_q(q2: i32) -> String {
    if q2 % 2 == 0 {
        let k = q2 / 2;
        if k == 1 {
            "q".to_string()
        } else {
            format!("q^({k})")
        }
    } else {
        format!("q^({q2}/2)")
    }
}

/// Weight in the literal grammar, e.g. `2w1-w2`.
pub fn format_weight(wt: &Exp, rank: usize) -> String {
    let mut s = String::new();
    for (i, c) in wt.iter().enumerate().take(rank) {
        if *c == 0 {
            continue;
        }
        if *c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("w{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Product with machine-integer coefficients; `None` on overflow.
fn mul_small(a: &Laurent, b: &Laurent) -> Option<Laurent> {
    let small = |p: &Laurent| -> Option<Vec<(Mono, i64)>> {
        p.terms.iter().map(|(m, c)| c.to_i64().map(|c| (*m, c))).collect()
    };
    let (xs, ys) = (small(a)?, small(b)?);
    let mut acc: FxHashMap<Mono, i128> = FxHashMap::with_capacity_and_hasher(xs.len() * ys.len(), Default::default());
    for (m, x) in &xs {
        for (n, y) in &ys {
            let e = acc.entry(m.mul(n)).or_default();
            *e = e.checked_add(*x as i128 * *y as i128)?;
        }
    }
    let mut terms = BTreeMap::new();
    for (m, c) in acc {
        if c != 0 {
            terms.insert(m, BigInt::from(c));
        }
    }
    Some(Laurent { terms })
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        if let Some(p) = mul_small(self, o) {
            return p;
        }
        let mut acc: FxHashMap<Mono, BigInt> =
            FxHashMap::with_capacity_and_hasher(self.len() * o.len(), Default::default());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                *acc.entry(a.mul(b)).or_default() += x * y;
            }
        }
        Laurent {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $f:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, o: $t) -> $t {
                (&self).$f(&o)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $f(self, o: &$t) -> $t {
                (&self).$f(o)
            }
        }
    };
}
forward_owned!(Laurent, Add, add);
forward_owned!(Laurent, Sub, sub);
forward_owned!(Laurent, Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

/// The binomial `1 - q^{q2/2} e^{wt}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub wt: Exp,
    pub q2: i32,
}

impl Factor {
    pub fn new(q2: i32, wt: Exp) -> Factor {
        assert!(
            q2 != 0 || wt != [0; MAX_RANK],
            "the binomial 1 - 1 is not invertible"
        );
        Factor { wt, q2 }
    }

    /// Canonical representatives have a positive leading entry in `(wt, q2)`.
    pub fn is_canonical(&self) -> bool {
        let v = [self.wt[0], self.wt[1], self.wt[2], self.q2];
        v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0)
    }

    /// Returns `(g, u)` with `self = -u·g` when `u` is present, else `self = g`.
    pub fn canonical(&self) -> (Factor, Option<Mono>) {
        if self.is_canonical() {
            (*self, None)
        } else {
            // 1 - X = -X (1 - X^{-1})
            (
                Factor {
                    wt: exp_neg(&self.wt),
                    q2: -self.q2,
                },
                Some(Mono::new(self.q2, self.wt)),
            )
        }
    }

    pub fn to_laurent(&self) -> Laurent {
        &Laurent::one() - &Laurent::mono(Mono::new(self.q2, self.wt), BigInt::one())
    }

    pub fn bar(&self) -> Factor {
        Factor {
            wt: exp_neg(&self.wt),
            q2: -self.q2,
        }
    }

    pub fn act(&self, m: &Matrix) -> Factor {
        Factor {
            wt: mat_apply(m, &self.wt),
            q2: self.q2,
        }
    }

    pub fn to_json(&self, rank: usize) -> Value {
        json!({"q2": self.q2, "wt": &self.wt[..rank]})
    }

    pub fn display(&self, rank: usize) -> String {
        let mut parts = Vec::new();
        if self.q2 != 0 {
            parts.push(format_q(self.q2));
        }
        if self.wt != [0; MAX_RANK] {
            parts.push(format!("e^({})", format_weight(&self.wt, rank)));
        }
        format!("(1 - {})", parts.join("*"))
    }
}

/// A fraction `num / ∏ (1 - q^{j/2} e^μ)` with canonical, sorted denominator factors.
#[derive(Clone, Debug, Default)]
pub struct RationalExpression {
    num: Laurent,
    den: Vec<Factor>,
}

impl RationalExpression {
    pub fn zero() -> RationalExpression {
        RationalExpression::default()
    }

    pub fn one() -> RationalExpression {
        RationalExpression::from_poly(Laurent::one())
    }

    pub fn from_poly(p: Laurent) -> RationalExpression {
        RationalExpression {
            num: p,
            den: Vec::new(),
        }
    }

    /// Builds and normalizes `num / ∏ den`.
    pub fn new(num: Laurent, den: Vec<Factor>) -> RationalExpression {
        let mut num = num;
        let mut canon = Vec::with_capacity(den.len());
        for f in den {
            let (g, unit) = f.canonical();
            if let Some(m) = unit {
                num = num.shift(&m.inv()).scale(&BigInt::from(-1));
            }
            canon.push(g);
        }
        canon.sort();
        let mut r = RationalExpression { num, den: canon };
        r.normalize();
        r
    }

    /// `1 / (1 - q^{j/2} e^μ)`.
    pub fn inv_binomial(f: Factor) -> RationalExpression {
        RationalExpression::new(Laurent::one(), vec![f])
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &[Factor] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn to_polynomial(&self) -> Result<Laurent> {
        if self.den.is_empty() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotPolynomial)
        }
    }

    pub fn as_polynomial(&self) -> Option<&Laurent> {
        self.den.is_empty().then_some(&self.num)
    }

    /// Greedy cancellation of denominator factors, in sorted order.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            if let Some(q) = self.num.div_canonical(&self.den[i]) {
                self.num = q;
                self.den.remove(i);
            } else {
                i += 1;
            }
        }
    }

    fn over_common(&self, o: &RationalExpression) -> (Laurent, Laurent, Vec<Factor>) {
        let mut common = Vec::new();
        let mut extra_a = Vec::new();
        let mut extra_b = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.den.len() || j < o.den.len() {
            match (self.den.get(i), o.den.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    common.push(*a);
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    common.push(*a);
                    extra_b.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    common.push(*b);
                    extra_a.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    common.push(*a);
                    extra_b.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    common.push(*b);
                    extra_a.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let a = extra_a
            .iter()
            .fold(self.num.clone(), |acc, f| &acc * &f.to_laurent());
        let b = extra_b
            .iter()
            .fold(o.num.clone(), |acc, f| &acc * &f.to_laurent());
        (a, b, common)
    }

    pub fn mul_poly(&self, p: &Laurent) -> RationalExpression {
        let mut r = RationalExpression {
            num: &self.num * p,
            den: self.den.clone(),
        };
        r.normalize();
        r
    }

    pub fn scale_mono(&self, m: &Mono, c: &BigInt) -> RationalExpression {
        RationalExpression {
            num: self.num.shift(m).scale(c),
            den: if c.is_zero() { Vec::new() } else { self.den.clone() },
        }
    }

    pub fn shift_q(&self, k: i32) -> RationalExpression {
        self.scale_mono(&Mono::new(k, [0; MAX_RANK]), &BigInt::one())
    }

    pub fn shift_e(&self, wt: &Exp) -> RationalExpression {
        self.scale_mono(&Mono::new(0, *wt), &BigInt::one())
    }

    pub fn scale_int(&self, c: i64) -> RationalExpression {
        self.scale_mono(&Mono::ONE, &BigInt::from(c))
    }

    pub fn div_factor(&self, f: Factor) -> RationalExpression {
        let mut den = self.den.clone();
        den.push(f);
        RationalExpression::new(self.num.clone(), den)
    }

    pub fn bar(&self) -> RationalExpression {
        RationalExpression::new(self.num.bar(), self.den.iter().map(Factor::bar).collect())
    }

    pub fn act(&self, m: &Matrix) -> RationalExpression {
        RationalExpression::new(
            self.num.act(m),
            self.den.iter().map(|f| f.act(m)).collect(),
        )
    }

    /// Exact equality via cross-multiplication over a common denominator.
    pub fn equals(&self, o: &RationalExpression) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let (a, b, _) = self.over_common(o);
        a == b
    }

    pub fn to_json(&self, rank: usize) -> Value {
        json!({
            "num": self.num.to_json(rank),
            "den": self.den.iter().map(|f| f.to_json(rank)).collect::<Vec<_>>(),
        })
    }

    /// Accepts either a rational `{"num", "den"}` object or a bare polynomial.
    pub fn from_json(v: &Value) -> Result<RationalExpression> {
        if v.get("terms").is_some() {
            return Ok(RationalExpression::from_poly(Laurent::from_json(v)?));
        }
        let num = Laurent::from_json(
            v.get("num")
                .ok_or_else(|| Error::Parse("missing `num`".into()))?,
        )?;
        let mut den = Vec::new();
        if let Some(arr) = v.get("den").and_then(Value::as_array) {
            for f in arr {
                let q2 = f
                    .get("q2")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| Error::Parse("factor without `q2`".into()))?;
                let wt = parse_exp_json(f.get("wt"))?;
                if q2 == 0 && wt == [0; MAX_RANK] {
                    return Err(Error::Parse("zero denominator factor".into()));
                }
                den.push(Factor::new(q2 as i32, wt));
            }
        }
        Ok(RationalExpression::new(num, den))
    }

    pub fn display(&self, rank: usize) -> String {
        if self.den.is_empty() {
            return self.num.display(rank);
        }
        let den: Vec<String> = self.den.iter().map(|f| f.display(rank)).collect();
        format!("({}) / ({})", self.num.display(rank), den.join("*"))
    }
}

impl PartialEq for RationalExpression {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl From<Laurent> for RationalExpression {
    fn from(p: Laurent) -> Self {
        RationalExpression::from_poly(p)
    }
}

impl Add<&RationalExpression> for &RationalExpression {
    type Output = RationalExpression;
    fn add(self, o: &RationalExpression) -> RationalExpression {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b, den) = self.over_common(o);
        let mut r = RationalExpression { num: &a + &b, den };
        r.normalize();
        r
    }
}

impl Sub<&RationalExpression> for &RationalExpression {
    type Output = RationalExpression;
    fn sub(self, o: &RationalExpression) -> RationalExpression {
        self + &(-o)
    }
}

impl Neg for &RationalExpression {
    type Output = RationalExpression;
    fn neg(self) -> RationalExpression {
        RationalExpression {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&RationalExpression> for &RationalExpression {
    type Output = RationalExpression;
    fn mul(self, o: &RationalExpression) -> RationalExpression {
        if self.is_zero() || o.is_zero() {
            return RationalExpression::zero();
        }
        let mut den = self.den.clone();
        den.extend_from_slice(&o.den);
        den.sort();
        let mut r = RationalExpression {
            num: &self.num * &o.num,
            den,
        };
        r.normalize();
        r
    }
}

forward_owned!(RationalExpression, Add, add);
forward_owned!(RationalExpression, Sub, sub);
forward_owned!(RationalExpression, Mul, mul);

impl Neg for RationalExpression {
    type Output = RationalExpression;
    fn neg(self) -> RationalExpression {
        -&self
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}/2) e^{:?}", self.q2, self.wt)
    }
}

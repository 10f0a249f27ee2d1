//! Root data, Weyl groups and Bruhat order for the supported finite types.
//!
//! Weights are stored in the basis of fundamental weights. The simple root
//! `α_j` is the `j`-th column of the Cartan matrix `a_ij = ⟨α_j, α_i^∨⟩`, so the
//! pairing of a weight with the simple coroot `α_i^∨` is its `i`-th coordinate.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 3;

/// Integral weight in fundamental-weight coordinates. Unused trailing
/// coordinates are zero.
pub type Exp = [i32; MAX_RANK];

pub type Matrix = [[i32; MAX_RANK]; MAX_RANK];

pub fn exp_add(a: &Exp, b: &Exp) -> Exp {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn exp_sub(a: &Exp, b: &Exp) -> Exp {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn exp_neg(a: &Exp) -> Exp {
    [-a[0], -a[1], -a[2]]
}

pub fn exp_scale(a: &Exp, k: i32) -> Exp {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn mat_apply(m: &Matrix, v: &Exp) -> Exp {
    let mut out = [0; MAX_RANK];
    for (r, row) in m.iter().enumerate() {
        out[r] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = [[0; MAX_RANK]; MAX_RANK];
    for r in 0..MAX_RANK {
        for c in 0..MAX_RANK {
            out[r][c] = (0..MAX_RANK).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

fn identity_matrix(rank: usize) -> Matrix {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for (i, row) in m.iter_mut().enumerate().take(rank) {
        row[i] = 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A1,
    A2,
    A3,
    B2,
    B3,
    C3,
    G2,
}

impl CartanType {
    pub const ALL: [CartanType; 7] = [
        CartanType::A1,
        CartanType::A2,
        CartanType::A3,
        CartanType::B2,
        CartanType::B3,
        CartanType::C3,
        CartanType::G2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CartanType::A1 => "A1",
            CartanType::A2 => "A2",
            CartanType::A3 => "A3",
            CartanType::B2 => "B2",
            CartanType::B3 => "B3",
            CartanType::C3 => "C3",
            CartanType::G2 => "G2",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            CartanType::A1 => 1,
            CartanType::A2 | CartanType::B2 | CartanType::G2 => 2,
            CartanType::A3 | CartanType::B3 | CartanType::C3 => 3,
        }
    }

    /// Cartan matrix with entries `a_ij = ⟨α_j, α_i^∨⟩` (Bourbaki numbering).
    pub fn cartan_matrix(self) -> Vec<Vec<i32>> {
        match self {
            CartanType::A1 => vec![vec![2]],
            CartanType::A2 => vec![vec![2, -1], vec![-1, 2]],
            CartanType::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            CartanType::B2 => vec![vec![2, -1], vec![-2, 2]],
            CartanType::B3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            CartanType::C3 => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            CartanType::G2 => vec![vec![2, -3], vec![-1, 2]],
        }
    }

    /// Shared root system for this type, built once per process.
    pub fn root_system(self) -> Arc<RootSystem> {
        static CACHE: OnceLock<Vec<Arc<RootSystem>>> = OnceLock::new();
        let all = CACHE.get_or_init(|| {
            CartanType::ALL
                .iter()
                .map(|t| Arc::new(RootSystem::build(*t)))
                .collect()
        });
        all[CartanType::ALL.iter().position(|t| *t == self).unwrap()].clone()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        CartanType::ALL
            .iter()
            .copied()
            .find(|c| c.label() == t)
            .ok_or_else(|| Error::UnsupportedType(s.to_string()))
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A positive root together with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Weight coordinates.
    pub wt: Exp,
    /// Coordinates in the basis of simple roots.
    pub root_coords: Vec<i32>,
    /// Coordinates of the coroot in the basis of simple coroots.
    pub coroot: Vec<i32>,
}

impl Root {
    /// `(λ, β^∨)` for an integral weight.
    pub fn pair(&self, lambda: &Exp) -> i32 {
        self.coroot.iter().zip(lambda).map(|(c, l)| c * l).sum()
    }

    pub fn pair_rational(&self, lambda: &Weight) -> BigRational {
        let mut acc = BigRational::zero();
        for (c, l) in self.coroot.iter().zip(&lambda.coords) {
            acc += l * BigRational::from_integer(BigInt::from(*c));
        }
        acc
    }

    pub fn height(&self) -> i32 {
        self.root_coords.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub index: usize,
    pub matrix: Matrix,
    /// Lexicographically least reduced word, letters are 0-based.
    pub word: Vec<usize>,
    pub length: usize,
}

impl WeylElement {
    pub fn sign(&self) -> i32 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Finite Weyl group with multiplication table and Bruhat order.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    simple: Vec<usize>,
    by_matrix: HashMap<Matrix, usize>,
    bruhat: Vec<Vec<bool>>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inv[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length
    }

    pub fn sign(&self, w: usize) -> i32 {
        self.elements[w].sign()
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.elements[w].word
    }

    pub fn by_matrix(&self, m: &Matrix) -> Option<usize> {
        self.by_matrix.get(m).copied()
    }

    /// `u ≤ v` in Bruhat order.
    pub fn bruhat_le(&self, u: usize, v: usize) -> bool {
        self.bruhat[u][v]
    }

    pub fn bruhat_lt(&self, u: usize, v: usize) -> bool {
        u != v && self.bruhat[u][v]
    }

    /// Product of simple reflections `s_{i1} s_{i2} ...`.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| self.mul[acc][self.simple[i]])
    }

    pub fn act(&self, w: usize, v: &Exp) -> Exp {
        mat_apply(&self.elements[w].matrix, v)
    }

    pub fn act_rational(&self, w: usize, v: &Weight) -> Weight {
        let m = &self.elements[w].matrix;
        let coords = (0..self.rank)
            .map(|r| {
                let mut acc = BigRational::zero();
                for c in 0..self.rank {
                    if m[r][c] != 0 {
                        acc += &v.coords[c] * BigRational::from_integer(BigInt::from(m[r][c]));
                    }
                }
                acc
            })
            .collect();
        Weight { coords }
    }

    /// Display form of an element: `e` or `s1 s2 s1`.
    pub fn label(&self, w: usize) -> String {
        format_word(&self.elements[w].word)
    }

    pub fn parse(&self, s: &str) -> Result<usize> {
        let word = parse_word(s, self.rank)?;
        Ok(self.from_word(&word))
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses `e`, `s1 s2 s1`, `s1s2` or `s1*s2` into 0-based letters.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "id" || s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '.' {
            i += 1;
            continue;
        }
        if c != 's' {
            return Err(Error::Parse(format!("bad Weyl word `{s}`")));
        }
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let n: usize = chars[start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Weyl word `{s}`")))?;
        if n == 0 || n > rank {
            return Err(Error::Parse(format!(
                "simple reflection s{n} out of range for rank {rank}"
            )));
        }
        out.push(n - 1);
    }
    Ok(out)
}

/// Rational weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vec<BigRational>,
}

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords: vec![BigRational::zero(); rank],
        }
    }

    pub fn from_exp(e: &Exp, rank: usize) -> Weight {
        Weight {
            coords: e[..rank]
                .iter()
                .map(|x| BigRational::from_integer(BigInt::from(*x)))
                .collect(),
        }
    }

    pub fn from_ints(v: &[i64]) -> Weight {
        Weight {
            coords: v
                .iter()
                .map(|x| BigRational::from_integer(BigInt::from(*x)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn to_exp(&self) -> Option<Exp> {
        let mut out = [0; MAX_RANK];
        for (o, c) in out.iter_mut().zip(&self.coords) {
            if !c.is_integer() {
                return None;
            }
            *o = i32::try_from(c.to_integer()).ok()?;
        }
        Some(out)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i32>>,
    pub simple_roots: Vec<Exp>,
    pub positive_roots: Vec<Root>,
    /// Index into `positive_roots` of the root whose coroot is the highest coroot.
    pub theta: usize,
    pub coxeter_number: usize,
    pub weyl: WeylGroup,
    /// Reflection `s_β` for each positive root, as a Weyl group index.
    pub reflections: Vec<usize>,
    root_lookup: HashMap<Exp, (usize, i32)>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Arc<RootSystem> {
        t.root_system()
    }

    fn build(t: CartanType) -> RootSystem {
        let rank = t.rank();
        let a = t.cartan_matrix();
        let mut simple_roots = Vec::with_capacity(rank);
        for j in 0..rank {
            let mut e = [0; MAX_RANK];
            for (i, ei) in e.iter_mut().enumerate().take(rank) {
                *ei = a[i][j];
            }
            simple_roots.push(e);
        }

        // Orbit of the simple roots, carrying coroots along.
        let mut seen: HashMap<Vec<i32>, Vec<i32>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone(), e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            let cobeta = seen[&beta].clone();
            for i in 0..rank {
                let pb: i32 = (0..rank).map(|j| a[i][j] * beta[j]).sum();
                let pc: i32 = (0..rank).map(|j| cobeta[j] * a[j][i]).sum();
                let mut nb = beta.clone();
                nb[i] -= pb;
                let mut nc = cobeta.clone();
                nc[i] -= pc;
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), nc);
                    queue.push_back(nb);
                }
            }
        }
        let mut positive_roots: Vec<Root> = seen
            .into_iter()
            .filter(|(b, _)| b.iter().all(|x| *x >= 0))
            .map(|(b, c)| {
                let mut wt = [0; MAX_RANK];
                for (k, wk) in wt.iter_mut().enumerate().take(rank) {
                    *wk = (0..rank).map(|j| a[k][j] * b[j]).sum();
                }
                Root {
                    wt,
                    root_coords: b,
                    coroot: c,
                }
            })
            .collect();
        positive_roots.sort_by(|x, y| {
            x.height()
                .cmp(&y.height())
                .then_with(|| y.root_coords.cmp(&x.root_coords))
        });
        let theta = (0..positive_roots.len())
            .max_by_key(|&k| positive_roots[k].coroot.iter().sum::<i32>())
            .unwrap();
        let coxeter_number = positive_roots[theta].coroot.iter().sum::<i32>() as usize + 1;

        let mut root_lookup = HashMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            root_lookup.insert(r.wt, (k, 1));
            root_lookup.insert(exp_neg(&r.wt), (k, -1));
        }

        let weyl = build_weyl(rank, &simple_roots, &positive_roots, &root_lookup);
        let reflections = positive_roots
            .iter()
            .map(|r| {
                let mut m = identity_matrix(rank);
                for (row, mr) in m.iter_mut().enumerate().take(rank) {
                    for (col, c) in r.coroot.iter().enumerate() {
                        mr[col] -= r.wt[row] * c;
                    }
                }
                weyl.by_matrix(&m).expect("reflection lies in W")
            })
            .collect();

        RootSystem {
            cartan_type: t,
            rank,
            cartan: a,
            simple_roots,
            positive_roots,
            theta,
            coxeter_number,
            weyl,
            reflections,
            root_lookup,
        }
    }

    pub fn label(&self) -> &'static str {
        self.cartan_type.label()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `ρ`, the sum of fundamental weights.
    pub fn rho(&self) -> Exp {
        let mut e = [0; MAX_RANK];
        for x in e.iter_mut().take(self.rank) {
            *x = 1;
        }
        e
    }

    pub fn fundamental_weight(&self, i: usize) -> Exp {
        let mut e = [0; MAX_RANK];
        e[i] = 1;
        e
    }

    pub fn simple_root(&self, i: usize) -> Exp {
        self.simple_roots[i]
    }

    /// Highest coroot in simple-coroot coordinates (its entries are the marks).
    pub fn highest_coroot(&self) -> &[i32] {
        &self.positive_roots[self.theta].coroot
    }

    /// Classifies an integral weight as a root: `(positive root index, ±1)`.
    pub fn root_index(&self, wt: &Exp) -> Option<(usize, i32)> {
        self.root_lookup.get(wt).copied()
    }

    pub fn is_positive_root(&self, wt: &Exp) -> bool {
        matches!(self.root_lookup.get(wt), Some((_, 1)))
    }

    /// Index of the positive root `±wt`, if `wt` is a root.
    pub fn positive_root_of(&self, wt: &Exp) -> Option<usize> {
        self.root_lookup.get(wt).map(|p| p.0)
    }

    pub fn root_lattice_weight(&self, coords: &[i32]) -> Exp {
        let mut out = [0; MAX_RANK];
        for (j, c) in coords.iter().enumerate() {
            out = exp_add(&out, &exp_scale(&self.simple_roots[j], *c));
        }
        out
    }

    /// Coordinates of `wt` in the basis of simple roots, if it lies in the root lattice.
    pub fn to_root_coords(&self, wt: &Exp) -> Option<Vec<i32>> {
        let n = self.rank;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|c| BigRational::from_integer(BigInt::from(self.cartan[r][c])))
                    .collect();
                row.push(BigRational::from_integer(BigInt::from(wt[r])));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=n {
                        let sub = &f * &m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
        m.iter()
            .map(|row| {
                let v = &row[n];
                if v.is_integer() {
                    i32::try_from(v.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn in_root_lattice(&self, wt: &Exp) -> bool {
        self.to_root_coords(wt).is_some()
    }

    /// Whether `ws < w` for the positive root `β` with reflection `s_β`.
    pub fn right_descends(&self, w: usize, beta: usize) -> bool {
        let wb = self.weyl.act(w, &self.positive_roots[beta].wt);
        !self.is_positive_root(&wb)
    }

    pub fn pair_rational(&self, lambda: &Weight, beta: usize) -> BigRational {
        self.positive_roots[beta].pair_rational(lambda)
    }
}

fn build_weyl(
    rank: usize,
    simple_roots: &[Exp],
    positive: &[Root],
    lookup: &HashMap<Exp, (usize, i32)>,
) -> WeylGroup {
    let gens: Vec<Matrix> = (0..rank)
        .map(|i| {
            let mut m = identity_matrix(rank);
            for (r, row) in m.iter_mut().enumerate().take(rank) {
                row[i] -= simple_roots[i][r];
            }
            m
        })
        .collect();

    let id = identity_matrix(rank);
    let mut mats = vec![id];
    let mut index: HashMap<Matrix, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in &gens {
            let m = mat_mul(g, &mats[k]);
            if !index.contains_key(&m) {
                index.insert(m, mats.len());
                queue.push_back(mats.len());
                mats.push(m);
            }
        }
    }

    let length = |m: &Matrix| {
        positive
            .iter()
            .filter(|r| lookup[&mat_apply(m, &r.wt)].1 < 0)
            .count()
    };
    let lengths: Vec<usize> = mats.iter().map(length).collect();

    // Lexicographically least reduced word: peel off the smallest left descent.
    let mut words: Vec<Option<Vec<usize>>> = vec![None; mats.len()];
    let mut order: Vec<usize> = (0..mats.len()).collect();
    order.sort_by_key(|&k| lengths[k]);
    for &k in &order {
        if lengths[k] == 0 {
            words[k] = Some(Vec::new());
            continue;
        }
        let (i, rest) = (0..rank)
            .find_map(|i| {
                let r = index[&mat_mul(&gens[i], &mats[k])];
                (lengths[r] < lengths[k]).then_some((i, r))
            })
            .unwrap();
        let mut w = vec![i];
        w.extend(words[rest].clone().unwrap());
        words[k] = Some(w);
    }

    let mut perm: Vec<usize> = (0..mats.len()).collect();
    perm.sort_by(|&x, &y| {
        lengths[x]
            .cmp(&lengths[y])
            .then_with(|| words[x].cmp(&words[y]))
    });
    let elements: Vec<WeylElement> = perm
        .iter()
        .enumerate()
        .map(|(new, &old)| WeylElement {
            index: new,
            matrix: mats[old],
            word: words[old].clone().unwrap(),
            length: lengths[old],
        })
        .collect();
    let by_matrix: HashMap<Matrix, usize> = elements.iter().map(|e| (e.matrix, e.index)).collect();
    let n = elements.len();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| by_matrix[&mat_mul(&elements[a].matrix, &elements[b].matrix)])
                .collect()
        })
        .collect();
    let inv: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap()).collect();
    let simple: Vec<usize> = gens.iter().map(|g| by_matrix[g]).collect();

    let mut bruhat = vec![vec![false; n]; n];
    for w in 0..n {
        if elements[w].length == 0 {
            bruhat[0][0] = true;
            continue;
        }
        let s = (0..rank)
            .map(|i| simple[i])
            .find(|&s| elements[mul[w][s]].length < elements[w].length)
            .unwrap();
        let ws = mul[w][s];
        for u in 0..n {
            let us = mul[u][s];
            bruhat[u][w] = if elements[us].length < elements[u].length {
                bruhat[us][ws]
            } else {
                bruhat[u][ws]
            };
        }
    }

    WeylGroup {
        rank,
        elements,
        mul,
        inv,
        simple,
        by_matrix,
        bruhat,
    }
}


pub fn rational_from(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

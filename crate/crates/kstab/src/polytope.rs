//! Exact Newton polytopes of Laurent polynomials in the weight lattice.
//!
//! The convex hull of a finite set of integer points is stored as its affine
//! hull equations and facet inequalities, so that membership of rational points
//! reduces to integer dot products.

use num_integer::Integer;

use crate::rootdata::Exp;

#[derive(Clone, Debug)]
pub struct NewtonPolytope {
    dim: usize,
    points: Vec<Exp>,
    /// `n·x = b` on the affine hull.
    equations: Vec<(Vec<i64>, i64)>,
    /// `n·x <= b` for every facet.
    facets: Vec<(Vec<i64>, i64)>,
}

impl NewtonPolytope {
    /// Convex hull of `points` in `Z^dim`.
    pub fn new(dim: usize, points: &[Exp]) -> NewtonPolytope {
        let mut pts: Vec<Exp> = points.to_vec();
        pts.sort();
        pts.dedup();
        let mut poly = NewtonPolytope {
            dim,
            points: pts,
            equations: Vec::new(),
            facets: Vec::new(),
        };
        if poly.points.is_empty() {
            return poly;
        }
        let p0 = to_vec(&poly.points[0], dim);
        let diffs: Vec<Vec<i64>> = poly.points[1..]
            .iter()
            .map(|p| sub(&to_vec(p, dim), &p0))
            .collect();
        let eq_normals = null_space(&diffs, dim);
        for n in &eq_normals {
            let b = dot(n, &p0);
            poly.equations.push((n.clone(), b));
        }
        let k = dim - eq_normals.len();
        if k == 0 {
            return poly;
        }
        let n_pts = poly.points.len();
        let mut subset = Vec::with_capacity(k);
        let mut seen: Vec<Vec<i64>> = Vec::new();
        enumerate_subsets(n_pts, k, 0, &mut subset, &mut |sub_idx: &[usize]| {
            let base = to_vec(&poly.points[sub_idx[0]], dim);
            let mut rows: Vec<Vec<i64>> = sub_idx[1..]
                .iter()
                .map(|&i| sub(&to_vec(&poly.points[i], dim), &base))
                .collect();
            rows.extend(eq_normals.iter().cloned());
            let ns = null_space(&rows, dim);
            if ns.len() != 1 {
                return;
            }
            let n = &ns[0];
            let b = dot(n, &base);
            let (mut le, mut ge) = (true, true);
            for p in &poly.points {
                let v = dot(n, &to_vec(p, dim));
                le &= v <= b;
                ge &= v >= b;
            }
            let (n, b) = if le {
                (n.clone(), b)
            } else if ge {
                (n.iter().map(|x| -x).collect(), -b)
            } else {
                return;
            };
            if !seen.contains(&n) {
                seen.push(n.clone());
                poly.facets.push((n, b));
            }
        });
        poly
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Exp] {
        &self.points
    }

    pub fn facets(&self) -> &[(Vec<i64>, i64)] {
        &self.facets
    }

    /// Whether `num/den` lies in the polytope (`den > 0`).
    pub fn contains_scaled(&self, num: &[i64], den: i64) -> bool {
        if self.points.is_empty() {
            return false;
        }
        self.equations.iter().all(|(n, b)| dot(n, num) == b * den)
            && self.facets.iter().all(|(n, b)| dot(n, num) <= b * den)
    }

    pub fn contains(&self, p: &Exp) -> bool {
        self.contains_scaled(&to_vec(p, self.dim), 1)
    }

    /// Whether every point of `other` lies in `self + shift`, where `shift = s/den`.
    pub fn contains_all_shifted(&self, other: &[Exp], shift: &[i64], den: i64) -> bool {
        other.iter().all(|p| {
            let v: Vec<i64> = (0..self.dim)
                .map(|i| p[i] as i64 * den - shift[i])
                .collect();
            self.contains_scaled(&v, den)
        })
    }
}

fn to_vec(p: &Exp, dim: usize) -> Vec<i64> {
    p[..dim].iter().map(|x| *x as i64).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        enumerate_subsets(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Primitive integer basis of `{n : row·n = 0 for all rows}`, via fraction-free elimination.
pub fn null_space(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|x| *x as i128).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..dim {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, x| g.gcd(x));
                if g > 1 {
                    for x in m[i].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        // Pivot row i reads m[i][p_i] x_{p_i} + m[i][f] x_f = 0.
        let l = pivots
            .iter()
            .enumerate()
            .fold(1i128, |l, (i, &p)| l.lcm(&m[i][p].abs()));
        let mut v = vec![0i128; dim];
        v[f] = l;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][f] * l / m[i][p];
        }
        let g = v.iter().fold(0i128, |g, x| g.gcd(x));
        out.push(v.iter().map(|x| (x / g) as i64).collect());
    }
    out
}

/// The zonotope `Σ [0, g_i]`, the Newton polytope of `∏ (1 - c_i e^{g_i})`.
#[derive(Clone, Debug)]
pub struct Zonotope {
    dim: usize,
    equations: Vec<Vec<i64>>,
    /// Facet normals `n` with support value `h(n) = Σ max(0, n·g_i)`.
    facets: Vec<(Vec<i64>, i64)>,
}

impl Zonotope {
    pub fn new(dim: usize, generators: &[Exp]) -> Zonotope {
        let gens: Vec<Vec<i64>> = generators
            .iter()
            .map(|g| to_vec(g, dim))
            .filter(|g| g.iter().any(|x| *x != 0))
            .collect();
        let equations = null_space(&gens, dim);
        let k = dim - equations.len();
        let mut normals: Vec<Vec<i64>> = Vec::new();
        if k > 0 {
            let mut subset = Vec::with_capacity(k - 1);
            enumerate_subsets(gens.len(), k - 1, 0, &mut subset, &mut |idx: &[usize]| {
                let mut rows: Vec<Vec<i64>> = idx.iter().map(|&i| gens[i].clone()).collect();
                rows.extend(equations.iter().cloned());
                let ns = null_space(&rows, dim);
                if ns.len() == 1 {
                    let n = ns[0].clone();
                    let m: Vec<i64> = n.iter().map(|x| -x).collect();
                    for c in [n, m] {
                        if !normals.contains(&c) {
                            normals.push(c);
                        }
                    }
                }
            });
        }
        let facets = normals
            .into_iter()
            .map(|n| {
                let h = gens.iter().map(|g| dot(&n, g).max(0)).sum();
                (n, h)
            })
            .collect();
        Zonotope {
            dim,
            equations,
            facets,
        }
    }

    /// Whether `num/den` lies in the zonotope (`den > 0`).
    pub fn contains_scaled(&self, num: &[i64], den: i64) -> bool {
        self.equations.iter().all(|n| dot(n, num) == 0)
            && self.facets.iter().all(|(n, h)| dot(n, num) <= h * den)
    }

    pub fn contains(&self, p: &Exp) -> bool {
        self.contains_scaled(&to_vec(p, self.dim), 1)
    }
}

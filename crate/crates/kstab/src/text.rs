//! Parsers for the textual forms used on the command line and in table output.
//!
//! Weights: `w1..wr` (fundamental weights) and `a1..ar` (simple roots) with
//! integer or `p/q` coefficients, e.g. `w1-a2`, `1/3w1 + 2/3*w2`; or a comma
//! list of fundamental-weight coordinates such as `1/3,1/3`.
//!
//! Alcoves: `neg | pos | <word>*<alcove> | <alcove> + <weight> | <alcove> - <weight>`.
//!
//! Expressions: sums of products of integers, `q`, `q^(k/2)`, `e^(<weight>)`,
//! parenthesised subexpressions and division by binomials `1 - q^(j/2)*e^(μ)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alcove::{locate, Alcove};
use crate::error::{Error, Result};
use crate::ring::{Factor, Laurent, Mono, RationalExpression};
use crate::rootdata::{parse_word, Exp, RootSystem, Weight};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = compact.strip_prefix('+').unwrap_or(&compact);
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| perr(format!("bad rational `{s}`")))?;
        let d: BigInt = d.trim().parse().map_err(|_| perr(format!("bad rational `{s}`")))?;
        if d.is_zero() {
            return Err(perr("zero denominator"));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| perr(format!("bad number `{s}`")))?;
        Ok(BigRational::from_integer(n))
    }
}

/// Parses a rational weight in fundamental-weight coordinates.
pub fn parse_weight(s: &str, rs: &RootSystem) -> Result<Weight> {
    let rank = rs.rank;
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.contains(',') || (!t.contains('w') && !t.contains('a')) {
        let coords = t
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coords.len() == 1 && coords[0].is_zero() {
            return Ok(Weight::zero(rank));
        }
        if coords.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: coords.len(),
            });
        }
        return Ok(Weight { coords });
    }
    let chars: Vec<char> = t.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Weight::zero(rank);
    let mut i = 0;
    while i < chars.len() {
        let mut sign = BigRational::one();
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
            i += 1;
        }
        let coef = if i > start {
            parse_rational(&chars[start..i].iter().collect::<String>())?
        } else {
            BigRational::one()
        };
        if i < chars.len() && chars[i] == '*' {
            i += 1;
        }
        let basis = *chars
            .get(i)
            .ok_or_else(|| perr(format!("dangling coefficient in `{s}`")))?;
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let k: usize = chars[start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| perr(format!("bad weight literal `{s}`")))?;
        if k == 0 || k > rank {
            return Err(perr(format!("index {k} out of range in `{s}`")));
        }
        let dir = match basis {
            'w' => rs.fundamental_weight(k - 1),
            'a' => rs.simple_root(k - 1),
            _ => return Err(perr(format!("bad weight literal `{s}`"))),
        };
        let c = sign * coef;
        out = out.add(&Weight::from_exp(&dir, rank).scale(&c));
    }
    Ok(out)
}

pub fn parse_integral_weight_in(s: &str, rs: &RootSystem) -> Result<Exp> {
    parse_weight(s, rs)?
        .to_exp()
        .ok_or_else(|| perr(format!("weight `{s}` is not integral")))
}

/// Parses an alcove expression and returns its canonical form.
pub fn parse_alcove(s: &str, rs: &RootSystem) -> Result<Alcove> {
    let p = alcove_point(s.trim(), rs)?;
    locate(rs, &p).map_err(|e| e.context(format!("alcove `{s}`")))
}

/// Interior point of the alcove denoted by `s`.
fn alcove_point(s: &str, rs: &RootSystem) -> Result<Weight> {
    // Split off a trailing translation at the first top-level + or -.
    let chars: Vec<char> = s.chars().collect();
    let mut depth = 0;
    for (i, c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => {
                let head: String = chars[..i].iter().collect();
                let tail: String = chars[i..].iter().collect();
                let base = alcove_point(head.trim(), rs)?;
                let shift = parse_weight(&tail, rs)?;
                if shift.to_exp().is_none() {
                    return Err(perr(format!("translation `{tail}` is not integral")));
                }
                return Ok(base.add(&shift));
            }
            _ => {}
        }
    }
    if let Some((word, rest)) = s.split_once('*') {
        let w = rs.weyl.from_word(&parse_word(word, rs.rank)?);
        let inner = alcove_point(rest.trim(), rs)?;
        return Ok(rs.weyl.act_rational(w, &inner));
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        return alcove_point(inner.trim(), rs);
    }
    match s {
        "neg" => Ok(Alcove::neg().interior_point(rs)),
        "pos" => Ok(Alcove::pos(rs).interior_point(rs)),
        _ => Err(perr(format!("bad alcove expression `{s}`"))),
    }
}

/// Parses a restriction written as in table output.
pub fn parse_expression(s: &str, rs: &RootSystem) -> Result<RationalExpression> {
    let mut p = ExprParser {
        chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        rs,
    };
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(perr(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    rs: &'a RootSystem,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalExpression> {
        let mut acc = RationalExpression::zero();
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalExpression> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.eat('/') {
                for f in self.divisor()? {
                    acc = divide(&acc, &f)?;
                }
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// A divisor; a parenthesized product is split so each binomial divides separately.
    fn divisor(&mut self) -> Result<Vec<RationalExpression>> {
        let start = self.pos;
        if self.eat('(') {
            let mut parts = Vec::new();
            let ok = loop {
                match self.factor() {
                    Ok(f) => parts.push(f),
                    Err(_) => break false,
                }
                if !self.eat('*') {
                    break self.eat(')');
                }
            };
            if ok {
                return Ok(parts);
            }
            self.pos = start;
        }
        Ok(vec![self.factor()?])
    }

    fn factor(&mut self) -> Result<RationalExpression> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(perr("missing `)`"));
                }
                Ok(v)
            }
            Some('q') => {
                self.pos += 1;
                let q2 = if self.eat('^') {
                    let r = self.exponent()?;
                    let two = &r * BigRational::from_integer(BigInt::from(2));
                    if !two.is_integer() {
                        return Err(perr("powers of q must be half-integers"));
                    }
                    i32::try_from(two.to_integer()).map_err(|_| perr("exponent too large"))?
                } else {
                    2
                };
                Ok(Laurent::q_half(q2).into())
            }
            Some('e') => {
                self.pos += 1;
                if !(self.eat('^') && self.eat('(')) {
                    return Err(perr("expected `e^(`"));
                }
                let start = self.pos;
                let mut depth = 1;
                while let Some(c) = self.peek() {
                    if c == '(' {
                        depth += 1;
                    } else if c == ')' {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    self.pos += 1;
                }
                let w: String = self.chars[start..self.pos].iter().collect();
                if !self.eat(')') {
                    return Err(perr("missing `)` after weight"));
                }
                let wt = parse_integral_weight_in(&w, self.rs)?;
                Ok(Laurent::e(wt).into())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| perr("bad integer"))?;
                Ok(Laurent::mono(Mono::ONE, n).into())
            }
            Some('-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            other => Err(perr(format!("unexpected {other:?} in expression"))),
        }
    }

    fn exponent(&mut self) -> Result<BigRational> {
        if self.eat('(') {
            let start = self.pos;
            while self.peek().is_some_and(|c| c != ')') {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            if !self.eat(')') {
                return Err(perr("missing `)` in exponent"));
            }
            parse_rational(&s)
        } else {
            let start = self.pos;
            if self.peek() == Some('-') {
                self.pos += 1;
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            parse_rational(&self.chars[start..self.pos].iter().collect::<String>())
        }
    }
}

/// Divides by a monomial or by `±m (1 - m')`.
fn divide(a: &RationalExpression, d: &RationalExpression) -> Result<RationalExpression> {
    let p = d
        .as_polynomial()
        .ok_or_else(|| perr("can only divide by Laurent polynomials"))?;
    let terms: Vec<(Mono, BigInt)> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    let unit_ok = |c: &BigInt| c.is_one() || *c == BigInt::from(-1);
    match terms.len() {
        1 if unit_ok(&terms[0].1) => {
            let (m, c) = &terms[0];
            Ok(a.scale_mono(&m.inv(), c))
        }
        2 => {
            for (u, v) in [(0, 1), (1, 0)] {
                let (mu, cu) = &terms[u];
                let (mv, cv) = &terms[v];
                // d = cu·mu (1 + (cv/cu) mv/mu); need cv/cu = -1.
                if unit_ok(cu) && *cv == -cu {
                    let m = mv.mul(&mu.inv());
                    let f = Factor::new(m.q2, m.wt);
                    return Ok(a.scale_mono(&mu.inv(), cu).div_factor(f));
                }
            }
            Err(perr("divisor is not a binomial 1 - q^(j/2) e^(μ)"))
        }
        _ => Err(perr("divisor is not a binomial 1 - q^(j/2) e^(μ)")),
    }
}

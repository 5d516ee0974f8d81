//! Sparse multivariate polynomials over a [`Scalar`] with named variables.
//!
//! A polynomial with an empty variable list is a bare constant and combines
//! with polynomials over any variable list; this lets polynomials serve as
//! matrix entries. Combining two polynomials over different non-empty
//! variable lists is a programming error and panics; the checked entry
//! points return [`Error::VariableMismatch`] instead.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational, Scalar};

pub type Vars = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

/// Matrix-entry coordinates `x{i}_{j}`, row-major, 1-based.
pub fn ambient_vars(n: usize) -> Vars {
    Arc::new(
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| format!("x{i}_{j}")))
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct Polynomial<S = Rational> {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, S>,
}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero_in(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in(vars: &Vars, c: S) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// A constant with no variables attached.
    pub fn constant(c: S) -> Self {
        Self::constant_in(&Arc::new(Vec::new()), c)
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero_in(vars);
        p.terms.insert(e, S::one());
        p
    }

    pub fn var_named(vars: &Vars, name: &str) -> Option<Self> {
        vars.iter().position(|v| v == name).map(|i| Self::var(vars, i))
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, S)>) -> Self {
        let mut p = Self::zero_in(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> S {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map_or_else(S::zero, |(_, c)| c.clone())
    }

    /// Re-expresses a bare constant over `vars`; other polynomials must already use `vars`.
    fn conform(&self, vars: &Vars) -> Self {
        if same_vars(&self.vars, vars) {
            return self.clone();
        }
        assert!(
            self.vars.is_empty(),
            "polynomial variable mismatch: {:?} vs {:?}",
            self.vars,
            vars
        );
        Self::constant_in(vars, self.constant_term())
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if same_vars(&a.vars, &b.vars) {
            (a.clone(), b.clone())
        } else if a.vars.is_empty() {
            (a.conform(&b.vars), b.clone())
        } else {
            (a.clone(), b.conform(&a.vars))
        }
    }

    /// Moves to another variable list by name.
    pub fn with_vars(&self, target: &Vars) -> Result<Self> {
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect();
        let mut out = Self::zero_in(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match idx[k] {
                    Some(t) => ne[t] = x,
                    None => {
                        return Err(Error::VariableMismatch(
                            self.vars.to_vec(),
                            target.to_vec(),
                        ))
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant_in(&self.vars, S::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, pt: &[S]) -> S {
        self.eval_with(pt, S::clone)
    }

    /// Evaluates at a point in another scalar ring, mapping coefficients through `f`.
    pub fn eval_with<T: Scalar>(&self, pt: &[T], f: impl Fn(&S) -> T) -> T {
        assert_eq!(pt.len(), self.nvars(), "evaluation point has wrong arity");
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut m = f(c);
            for (x, &k) in pt.iter().zip(e) {
                for _ in 0..k {
                    m = m * x.clone();
                }
            }
            acc = acc + m;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.clone() * S::from_int(e[i] as i64));
        }
        out
    }

    /// Substitutes `subs[k]` for variable `k`; the result lives over the substitutes' variables.
    pub fn compose(&self, subs: &[Polynomial<S>]) -> Polynomial<S> {
        assert_eq!(subs.len(), self.nvars(), "composition needs one substitute per variable");
        let target = subs
            .iter()
            .find(|s| !s.vars.is_empty())
            .map_or_else(|| Arc::new(Vec::new()), |s| s.vars.clone());
        let subs: Vec<Polynomial<S>> = subs.iter().map(|s| s.conform(&target)).collect();
        let mut powers: Vec<Vec<Polynomial<S>>> = subs
            .iter()
            .map(|s| vec![Polynomial::constant_in(&target, S::one()), s.clone()])
            .collect();
        let mut out = Polynomial::zero_in(&target);
        for (e, c) in &self.terms {
            let mut m = Polynomial::constant_in(&target, c.clone());
            for (k, &x) in e.iter().enumerate() {
                while powers[k].len() <= x as usize {
                    let next = &powers[k][powers[k].len() - 1] * &subs[k];
                    powers[k].push(next);
                }
                if x > 0 {
                    m = &m * &powers[k][x as usize];
                }
            }
            out = &out + &m;
        }
        out
    }

    /// Fixes variable `i` to `value`, keeping the variable list.
    pub fn substitute(&self, i: usize, value: &S) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for _ in 0..e[i] {
                coeff = coeff * value.clone();
            }
            let mut ne = e.clone();
            ne[i] = 0;
            out.add_term(ne, coeff);
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        let mut out = Polynomial::zero_in(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| weight_of(e, weights)).max()
    }

    /// True for zero, or when every term has weighted degree `d`.
    pub fn is_weighted_homogeneous(&self, weights: &[i64], d: i64) -> bool {
        self.terms.keys().all(|e| weight_of(e, weights) == d)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }
}

pub fn weight_of(e: &[u32], weights: &[i64]) -> i64 {
    e.iter().zip(weights).map(|(&k, &w)| k as i64 * w).sum()
}

/// All exponent vectors with weighted degree exactly `d` (weights positive).
pub fn monomials_of_weight(weights: &[i64], d: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[i64], k: usize, rest: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == weights.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * weights[k] <= rest {
            cur.push(e);
            go(weights, k + 1, rest - e as i64 * weights[k], cur, out);
            cur.pop();
            e += 1;
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    if d >= 0 {
        go(weights, 0, d, &mut Vec::new(), &mut out);
    }
    out
}

impl Polynomial<Rational> {
    /// Parses `+ - * / ^` expressions with rational literals and the given variables.
    /// Division is allowed only by non-zero constants.
    pub fn parse(vars: &Vars, s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            vars,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc.conform_or_keep(self.vars))
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let f = self.unary()?;
            if c == b'*' {
                acc = &acc * &f;
            } else {
                let d = f.constant_term();
                if !f.is_constant() || d.is_zero() {
                    self.pos = at;
                    return Err(self.err("division by a non-constant or zero"));
                }
                acc = acc.scale(&d.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err("expected a non-negative integer exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let r = parse_rational(lit).ok_or_else(|| self.err("bad number"))?;
                Ok(Polynomial::constant_in(self.vars, r))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Polynomial::var_named(self.vars, name).ok_or_else(|| Error::Parse {
                    pos: start,
                    msg: format!("unknown variable {name:?}"),
                })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl Polynomial<Rational> {
    fn conform_or_keep(self, vars: &Vars) -> Self {
        if self.vars.is_empty() {
            self.conform(vars)
        } else {
            self
        }
    }
}

impl<S: Scalar> PartialEq for Polynomial<S> {
    fn eq(&self, other: &Self) -> bool {
        if same_vars(&self.vars, &other.vars) {
            return self.terms == other.terms;
        }
        if self.vars.is_empty() || other.vars.is_empty() {
            let (a, b) = Self::unify(self, other);
            return a.terms == b.terms;
        }
        false
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let (mut a, b) = Polynomial::unify(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let (mut a, b) = Polynomial::unify(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let (a, b) = Polynomial::unify(self, rhs);
        let mut out = Polynomial::zero_in(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Add for Polynomial<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Polynomial<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Polynomial<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl<S: Scalar> Zero for Polynomial<S> {
    fn zero() -> Self {
        Polynomial::zero_in(&Arc::new(Vec::new()))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for Polynomial<S> {
    fn one() -> Self {
        Polynomial::constant(S::one())
    }
}

impl<S: Scalar> Scalar for Polynomial<S> {
    fn from_rational(r: Rational) -> Self {
        Polynomial::constant(S::from_rational(r))
    }

    fn try_inv(&self) -> Option<Self> {
        if !self.is_constant() {
            return None;
        }
        let inv = self.constant_term().try_inv()?;
        Some(Polynomial::constant_in(&self.vars, inv))
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Vec<u32>, &S)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in ordered.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            let mut cs = c.to_string();
            if cs.contains(' ') {
                cs = format!("({cs})");
            }
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int, Dual};

    #[test]
    fn parse_and_print() {
        let v = vars(&["a", "b", "c"]);
        let p = Polynomial::parse(&v, "c + 20*a^3").unwrap();
        assert_eq!(p.to_string(), "20*a^3 + c");
        let q = Polynomial::parse(&v, "-27/2*a^3 + a*b - 1/8*c").unwrap();
        assert_eq!(q.to_string(), "-27/2*a^3 + a*b - 1/8*c");
        let r = Polynomial::parse(&v, "1/8*(a + b^2)").unwrap();
        assert_eq!(r, Polynomial::parse(&v, "a/8 + b^2/8").unwrap());
        assert_eq!(Polynomial::parse(&v, "-a^2").unwrap().to_string(), "-a^2");
    }

    #[test]
    fn parse_errors() {
        let v = vars(&["a"]);
        assert!(matches!(Polynomial::parse(&v, "a + q"), Err(Error::Parse { pos: 4, .. })));
        assert!(Polynomial::parse(&v, "a / a").is_err());
        assert!(Polynomial::parse(&v, "(a").is_err());
        assert!(Polynomial::parse(&v, "1/0").is_err());
    }

    #[test]
    fn compose_and_derivative() {
        let v = vars(&["t"]);
        let w = vars(&["s"]);
        let p = Polynomial::parse(&v, "t^2 + 1").unwrap();
        let sub = Polynomial::parse(&w, "s - 1").unwrap();
        assert_eq!(p.compose(&[sub]), Polynomial::parse(&w, "s^2 - 2*s + 2").unwrap());
        assert_eq!(p.partial(0), Polynomial::parse(&v, "2*t").unwrap());
        assert_eq!(p.eval(&[int(3)]), int(10));
    }

    #[test]
    fn dual_evaluation() {
        let v = vars(&["t"]);
        let p = Polynomial::parse(&v, "t^3 - 2*t").unwrap();
        let d = p.eval_with(&[Dual::new(int(3), int(1))], |c| Dual::constant(c.clone()));
        assert_eq!(d, Dual::new(int(21), int(25)));
    }

    #[test]
    fn weights() {
        let v = vars(&["a", "b"]);
        let p = Polynomial::parse(&v, "a^2 + b").unwrap();
        assert!(p.is_weighted_homogeneous(&[2, 4], 4));
        assert_eq!(monomials_of_weight(&[2, 4], 4).len(), 2);
        assert_eq!(p.scale(&frac(1, 2)).to_string(), "1/2*a^2 + 1/2*b");
    }
}

//! Sparse multivariate polynomials over `BigRational`.
//!
//! A [`MultiPoly`] carries an explicit, sorted variable list (sorted by the
//! global order `C < B < Q < Δ < λ < μ`) and a map from exponent vectors to
//! nonzero coefficients. Binary operations align both operands on the union of
//! their variable lists, so `C + Q` and `C - Q` may be freely combined.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_compact, parse_rational};
use crate::error::{Error, Result};

/// The symbols that appear in the operator identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    C,
    B,
    Q,
    Delta,
    Lambda,
    Mu,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::C, Var::B, Var::Q, Var::Delta, Var::Lambda, Var::Mu];

    pub fn name(self) -> &'static str {
        match self {
            Var::C => "C",
            Var::B => "B",
            Var::Q => "Q",
            Var::Delta => "Delta",
            Var::Lambda => "lambda",
            Var::Mu => "mu",
        }
    }

    /// Accepts the ASCII names and the Greek letters.
    pub fn from_name(s: &str) -> Option<Var> {
        Some(match s {
            "C" => Var::C,
            "B" => Var::B,
            "Q" => Var::Q,
            "Delta" | "Δ" => Var::Delta,
            "lambda" | "λ" => Var::Lambda,
            "mu" | "μ" => Var::Mu,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Assignment of exact values to variables, for [`MultiPoly::eval`].
pub type Assignment = BTreeMap<Var, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

/// Graded lexicographic order, largest first: higher total degree wins, ties
/// broken by comparing exponents left to right in variable order.
fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

fn merge_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut v: Vec<Var> = a.iter().chain(b).copied().collect();
    v.sort();
    v.dedup();
    v
}

impl MultiPoly {
    pub fn zero(vars: &[Var]) -> Self {
        let mut vars = vars.to_vec();
        vars.sort();
        vars.dedup();
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[Var], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[Var]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    /// The polynomial `v`, with variable list `[v]`.
    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], BigRational::one());
        MultiPoly {
            vars: vec![v],
            terms,
        }
    }

    /// `c * v^e` over the variable list `vars` (which gains `v` if absent).
    pub fn monomial(vars: &[Var], v: Var, e: u32, c: BigRational) -> Self {
        let mut p = Self::zero(&merge_vars(vars, &[v]));
        if !c.is_zero() {
            let mut exps = vec![0; p.vars.len()];
            exps[p.index_of(v).expect("merged")] = e;
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds from raw `(exponents, coefficient)` pairs over `vars`, which
    /// must already be in global order. Zero coefficients are dropped and
    /// repeated exponent vectors are summed.
    pub fn from_terms(
        vars: &[Var],
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(
            p.vars.as_slice(),
            vars,
            "variables must be sorted and distinct"
        );
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    /// Coefficient of the monomial given as `(var, exponent)` pairs; absent
    /// variables have exponent zero.
    pub fn coeff(&self, mono: &[(Var, u32)]) -> BigRational {
        let mut exps = vec![0; self.vars.len()];
        for &(v, e) in mono {
            match self.index_of(v) {
                Some(i) => exps[i] = e,
                None if e == 0 => {}
                None => return BigRational::zero(),
            }
        }
        self.terms
            .get(&exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Terms in graded-lex order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&[u32], &BigRational)> {
        let mut t: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        t.sort_by(|a, b| grlex_desc(a.0, b.0));
        t
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent of `v` (zero when `v` is absent or the polynomial is zero).
    pub fn degree_in(&self, v: Var) -> u32 {
        match self.index_of(v) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Whether any term has a nonzero exponent of `v`.
    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    /// The sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest term in graded-lex order, rendered as text.
    pub fn leading_term_string(&self) -> Option<String> {
        self.sorted_terms()
            .first()
            .map(|(e, c)| self.render_term(e, c, true))
    }

    /// Re-expresses `self` over the larger variable list `vars`.
    pub fn aligned(&self, vars: &[Var]) -> Self {
        let target = merge_vars(vars, &self.vars);
        if target == self.vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; target.len()];
                for (i, &x) in e.iter().enumerate() {
                    ne[map[i]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly {
            vars: target,
            terms,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn add_constant(&self, c: &BigRational) -> Self {
        let mut p = self.clone();
        p.add_term(vec![0; p.vars.len()], c.clone());
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `v` by the polynomial `replacement`, fully expanded. The
    /// result's variables are those of `self` without `v`, together with
    /// those of `replacement`.
    pub fn substitute(&self, v: Var, replacement: &MultiPoly) -> Result<Self> {
        let idx = self.index_of(v).ok_or(Error::UnknownVariable(v))?;
        let rest: Vec<Var> = self.vars.iter().copied().filter(|&w| w != v).collect();
        let out_vars = merge_vars(&rest, &replacement.vars);
        let repl = replacement.aligned(&out_vars);
        let rest_pos: Vec<usize> = rest
            .iter()
            .map(|w| out_vars.iter().position(|x| x == w).expect("merged"))
            .collect();

        let mut powers = vec![Self::one(&out_vars)];
        let mut out = Self::zero(&out_vars);
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty") * &repl;
                powers.push(next);
            }
            let mut shift = vec![0; out_vars.len()];
            let mut j = 0;
            for (i, &x) in e.iter().enumerate() {
                if i != idx {
                    shift[rest_pos[j]] = x;
                    j += 1;
                }
            }
            for (pe, pc) in &powers[k].terms {
                let ne: Vec<u32> = pe.iter().zip(&shift).map(|(a, b)| a + b).collect();
                out.add_term(ne, pc * c);
            }
        }
        Ok(out)
    }

    /// Replaces `v` by `v + offset`; the variable list is unchanged.
    pub fn substitute_shift(&self, v: Var, offset: &BigRational) -> Result<Self> {
        if self.index_of(v).is_none() {
            return Err(Error::UnknownVariable(v));
        }
        self.substitute(v, &MultiPoly::var(v).add_constant(offset))
    }

    /// Replaces `v` by `-v`.
    pub fn negate_var(&self, v: Var) -> Result<Self> {
        let idx = self.index_of(v).ok_or(Error::UnknownVariable(v))?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = if e[idx] % 2 == 1 { -c } else { c.clone() };
                (e.clone(), c)
            })
            .collect();
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Exact value at `assignment`, which must cover every declared variable.
    pub fn eval(&self, assignment: &Assignment) -> Result<BigRational> {
        let values: Vec<&BigRational> = self
            .vars
            .iter()
            .map(|v| assignment.get(v).ok_or(Error::MissingAssignment(*v)))
            .collect::<Result<_>>()?;
        let powers: Vec<Vec<BigRational>> = values
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let top = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
                let mut row = vec![BigRational::one()];
                for _ in 0..top {
                    let next = row.last().expect("nonempty") * *x;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (row, &k) in powers.iter().zip(e) {
                if k > 0 {
                    t *= &row[k as usize];
                }
            }
            total += t;
        }
        Ok(total)
    }

    fn render_monomial(&self, e: &[u32]) -> String {
        self.vars
            .iter()
            .zip(e)
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| {
                if k == 1 {
                    v.name().to_string()
                } else {
                    format!("{}^{}", v.name(), k)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn render_term(&self, e: &[u32], c: &BigRational, signed: bool) -> String {
        let coef = if signed { c.clone() } else { c.abs() };
        let mono = self.render_monomial(e);
        if mono.is_empty() {
            fmt_compact(&coef)
        } else {
            format!("{} * {}", fmt_compact(&coef), mono)
        }
    }

    /// Parses the text form produced by `Display` (or any sum of products of
    /// rationals and powers of variables) over the variable list `vars`.
    pub fn parse(text: &str, vars: &[Var]) -> Result<Self> {
        Parser::new(text, vars)?.parse()
    }
}

impl fmt::Display for MultiPoly {
    /// Graded-lex terms `coef * C^a B^b Q^c`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            if i == 0 {
                f.write_str(&self.render_term(e, c, true))?;
            } else {
                let sign = if c.is_negative() { " - " } else { " + " };
                f.write_str(sign)?;
                f.write_str(&self.render_term(e, c, false))?;
            }
        }
        Ok(())
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    vars: Vec<Var>,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

impl Parser {
    fn new(text: &str, vars: &[Var]) -> Result<Self> {
        let mut tokens = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            match ch {
                c if c.is_whitespace() => i += 1,
                '+' => {
                    tokens.push(Token::Plus);
                    i += 1
                }
                '-' => {
                    tokens.push(Token::Minus);
                    i += 1
                }
                '*' => {
                    tokens.push(Token::Star);
                    i += 1
                }
                '/' => {
                    tokens.push(Token::Slash);
                    i += 1
                }
                '^' => {
                    tokens.push(Token::Caret);
                    i += 1
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    tokens.push(Token::Int(s.parse().expect("digits")));
                }
                c if c.is_alphabetic() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_alphabetic() {
                        i += 1;
                    }
                    tokens.push(Token::Ident(chars[start..i].iter().collect()));
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
            }
        }
        let mut vars = vars.to_vec();
        vars.sort();
        vars.dedup();
        Ok(Parser {
            tokens,
            pos: 0,
            vars,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse(mut self) -> Result<MultiPoly> {
        if self.tokens.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut acc = MultiPoly::zero(&self.vars);
        let mut negative = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
            match self.next() {
                None => break,
                Some(Token::Plus) => negative = false,
                Some(Token::Minus) => negative = true,
                Some(t) => return Err(Error::Parse(format!("unexpected token {t:?}"))),
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::one(&self.vars);
        let mut seen = false;
        loop {
            match self.peek() {
                Some(Token::Int(_)) => {
                    let Some(Token::Int(n)) = self.next() else {
                        unreachable!()
                    };
                    let mut s = n.to_string();
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Int(d)) => s = format!("{s}/{d}"),
                            _ => return Err(Error::Parse("expected denominator".into())),
                        }
                    }
                    acc = acc.scale(&parse_rational(&s)?);
                }
                Some(Token::Ident(_)) => {
                    let Some(Token::Ident(name)) = self.next() else {
                        unreachable!()
                    };
                    let v = Var::from_name(&name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    if !self.vars.contains(&v) {
                        return Err(Error::UnknownVariable(v));
                    }
                    let mut e = 1;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Int(k)) => {
                                e = u32::try_from(k)
                                    .map_err(|_| Error::Parse("exponent too large".into()))?
                            }
                            _ => return Err(Error::Parse("expected exponent".into())),
                        }
                    }
                    acc = &acc * &MultiPoly::monomial(&self.vars, v, e, BigRational::one());
                }
                _ if seen => return Ok(acc),
                other => return Err(Error::Parse(format!("expected a factor, found {other:?}"))),
            }
            seen = true;
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
                seen = false;
            }
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = merge_vars(&self.vars, &rhs.vars);
        let mut out = self.aligned(&vars);
        for (e, c) in rhs.aligned(&vars).terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = merge_vars(&self.vars, &rhs.vars);
        let a = self.aligned(&vars);
        let b = rhs.aligned(&vars);
        let mut out = MultiPoly::zero(&vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn c() -> MultiPoly {
        MultiPoly::var(Var::C)
    }
    fn b() -> MultiPoly {
        MultiPoly::var(Var::B)
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }
    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &[Var::C, Var::B, Var::Q]).unwrap()
    }

    #[test]
    fn add_examples() {
        let c2 = &c() * &c();
        let b2 = &b() * &b();
        assert_eq!(&(&c2 - &b2) + &b2, c2.aligned(&[Var::B]));
        let poly = &c() + &q();
        assert_eq!(&poly + &MultiPoly::zero(&[]), poly);
        assert_eq!(
            &(&c() + &q()) + &(&c() - &q()),
            c().scale(&int(2)).aligned(&[Var::Q])
        );
    }

    #[test]
    fn mul_examples() {
        let lhs = &(&c() + &b()) * &(&c() - &b());
        assert_eq!(
            lhs,
            MultiPoly::parse("C^2 - B^2", &[Var::C, Var::B]).unwrap()
        );
        let poly = &c() + &q();
        assert_eq!(&poly * &MultiPoly::one(&[]), poly);
        let cq = &(&c() + &q()) * &(&c() - &q());
        assert_eq!(cq.to_string(), "1 * C^2 - 1 * Q^2");
    }

    #[test]
    fn shift_examples() {
        let c2 = &c() * &c();
        let shifted = c2.substitute_shift(Var::C, &int(-1)).unwrap();
        assert_eq!(shifted.to_string(), "1 * C^2 - 2 * C + 1");
        assert_eq!(shifted.substitute_shift(Var::C, &int(1)).unwrap(), c2);
        let cq = (&c() + &q()).substitute_shift(Var::Q, &int(-1)).unwrap();
        assert_eq!(cq.to_string(), "1 * C + 1 * Q - 1");
        assert_eq!(
            c2.substitute_shift(Var::B, &int(1)),
            Err(Error::UnknownVariable(Var::B))
        );
    }

    #[test]
    fn eval_examples() {
        let poly = p("C^2 - B^2");
        let at = Assignment::from([(Var::C, int(2)), (Var::B, int(1)), (Var::Q, int(0))]);
        assert_eq!(poly.eval(&at).unwrap(), int(3));
        let poly = p("3 * C^2 Q - 7/2");
        let zero = Assignment::from([(Var::C, int(0)), (Var::B, int(0)), (Var::Q, int(0))]);
        assert_eq!(poly.eval(&zero).unwrap(), rat(-7, 2).unwrap());
        let missing = Assignment::from([(Var::C, int(0))]);
        assert_eq!(poly.eval(&missing), Err(Error::MissingAssignment(Var::B)));
        // (C+B+1)(C+B-1)(C-B+1)(C-B-1) at C=2, B=1.
        let one = MultiPoly::one(&[]);
        let cp = &c() + &b();
        let cm = &c() - &b();
        let g4 = &(&(&cp + &one) * &(&cp - &one)) * &(&(&cm + &one) * &(&cm - &one));
        let at = Assignment::from([(Var::C, int(2)), (Var::B, int(1))]);
        assert_eq!(g4.eval(&at).unwrap(), int(0));
    }

    #[test]
    fn display_order_is_graded_lex() {
        let poly = p("1 + B + C + C B + B^2 + C^2 Q^0");
        assert_eq!(
            poly.to_string(),
            "1 * C^2 + 1 * C B + 1 * B^2 + 1 * C + 1 * B + 1"
        );
        assert_eq!(MultiPoly::zero(&[Var::C]).to_string(), "0");
        assert_eq!(p("-1/3 C").to_string(), "-1/3 * C");
    }

    #[test]
    fn parse_errors() {
        assert!(MultiPoly::parse("", &[Var::C]).is_err());
        assert!(MultiPoly::parse("C +", &[Var::C]).is_err());
        assert!(MultiPoly::parse("X", &[Var::C]).is_err());
        assert_eq!(
            MultiPoly::parse("B", &[Var::C]),
            Err(Error::UnknownVariable(Var::B))
        );
        assert!(MultiPoly::parse("C ^", &[Var::C]).is_err());
        // Greek aliases.
        let d = MultiPoly::parse("Δ + λ - μ", &[Var::Delta, Var::Lambda, Var::Mu]).unwrap();
        assert_eq!(d.to_string(), "1 * Delta + 1 * lambda - 1 * mu");
    }

    #[test]
    fn substitute_composes() {
        // C^2 with C := lambda + 1 gives lambda^2 + 2 lambda + 1 over {lambda}.
        let c2 = &c() * &c();
        let l1 = MultiPoly::var(Var::Lambda).add_constant(&int(1));
        let s = c2.substitute(Var::C, &l1).unwrap();
        assert_eq!(s.vars(), &[Var::Lambda]);
        assert_eq!(s.to_string(), "1 * lambda^2 + 2 * lambda + 1");
    }

    #[test]
    fn degree_and_homogeneous_part() {
        let poly = p("C^3 B + 2 C^2 - Q");
        assert_eq!(poly.total_degree(), Some(4));
        assert_eq!(poly.degree_in(Var::C), 3);
        assert!(poly.involves(Var::Q));
        assert_eq!(poly.homogeneous_part(2).to_string(), "2 * C^2");
        assert_eq!(MultiPoly::zero(&[]).total_degree(), None);
        assert_eq!(poly.coeff(&[(Var::C, 3), (Var::B, 1)]), int(1));
        assert_eq!(poly.coeff(&[(Var::Mu, 1)]), int(0));
    }

    #[test]
    fn negate_var_flips_odd_powers() {
        let poly = p("C^3 + C^2 B + B");
        assert_eq!(poly.negate_var(Var::C).unwrap(), p("-C^3 + C^2 B + B"));
    }
}

//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are identified by index `0..MAX_VARS`; names are a display
//! concern only (see [`SparsePoly::display_with`]). Terms live in a
//! `BTreeMap` keyed by [`Monomial`], whose derived ordering is graded
//! lexicographic with `x0 > x1 > ...`, so iteration order is canonical and
//! the leading term is the last entry.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::ExactRational;

/// Maximum number of distinct variables a polynomial may mention.
pub const MAX_VARS: usize = 8;

/// Exponent vector with cached total degree.
///
/// Field order matters: the derived `Ord` compares total degree first and
/// then exponents lexicographically, which is exactly graded lex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { degree: 0, exps: [0; MAX_VARS] };

    pub fn var(var: usize) -> Self {
        Self::ONE.with_exp(var, 1)
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| u32::from(e)).sum();
        m
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn with_exp(mut self, var: usize, e: u16) -> Self {
        self.degree = self.degree - u32::from(self.exps[var]) + u32::from(e);
        self.exps[var] = e;
        self
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].checked_sub(other.exps[i])?;
        }
        Some(Monomial { degree: self.degree - other.degree, exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].min(other.exps[i]);
        }
        Monomial::from_exps(&exps)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = u16::try_from(u32::from(self.exps[i]) * n).expect("monomial exponent overflow");
        }
        Monomial { degree: self.degree * n, exps }
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(|&i| self.exps[i] > 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps)
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// No stored coefficient is ever zero, so `is_zero` is just an emptiness
/// check and structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, ExactRational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(ExactRational::from_integer(BigInt::from(c)))
    }

    pub fn var(var: usize) -> Self {
        Self::monomial(Monomial::var(var), ExactRational::one())
    }

    pub fn monomial(m: Monomial, c: ExactRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// `Σ coeffs[i] * x_{vars[i]}` with integer coefficients.
    pub fn linear(coeffs: &[(usize, i64)]) -> Self {
        coeffs
            .iter()
            .map(|&(v, c)| Self::var(v).scale(&ExactRational::from_integer(c.into())))
            .fold(Self::zero(), |acc, p| acc + p)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ExactRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.first_key_value().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &ExactRational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first_key_value()?.0.degree();
        (self.total_degree() == Some(d)).then_some(d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> ExactRational {
        self.coeff(&Monomial::ONE)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| u32::from(m.exp(var))).max().unwrap_or(0)
    }

    /// Largest `e` such that `x_var^e` divides every term (0 for the zero polynomial).
    pub fn valuation_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| u32::from(m.exp(var))).min().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Bitmask of variables that occur.
    pub fn var_mask(&self) -> u32 {
        self.terms
            .keys()
            .fold(0u32, |acc, m| m.support().fold(acc, |a, v| a | (1 << v)))
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            terms.insert(t.checked_div(m)?, c.clone());
        }
        Some(Self { terms })
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |g, m| g.gcd(m)),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let mut acc: BTreeMap<Monomial, ExactRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let c = ca * cb;
                match acc.entry(m) {
                    Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    Entry::Occupied(mut o) => *o.get_mut() += c,
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { terms: acc }
    }

    /// Product with every term of `x_var`-degree above `max_deg` discarded.
    pub fn mul_truncated(&self, other: &Self, var: usize, max_deg: u32) -> Self {
        self.mul_filtered(other, |m| u32::from(m.exp(var)) <= max_deg)
    }

    /// Drops terms whose `x_var`-degree exceeds `max_deg`.
    pub fn truncate(&self, var: usize, max_deg: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| u32::from(m.exp(var)) <= max_deg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `x_var^deg`, as a polynomial free of `x_var`.
    pub fn coefficient_of(&self, var: usize, deg: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| u32::from(m.exp(var)) == deg)
                .map(|(m, c)| (m.with_exp(var, 0), c.clone()))
                .collect(),
        }
    }

    /// Splits into coefficients of `x_var^0, x_var^1, ...`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exp(var) as usize].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients(var: usize, coeffs: &[Self]) -> Self {
        let mut p = Self::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = Monomial::ONE.with_exp(var, e as u16);
            for (m, a) in &c.terms {
                p.add_term(m.mul(&shift), a.clone());
            }
        }
        p
    }

    /// Replaces `x_var` by `value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let coeffs = self.coefficients_in(var);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Evaluates at a full point; missing coordinates count as zero.
    pub fn eval(&self, point: &[ExactRational]) -> ExactRational {
        let mut total = ExactRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.support() {
                let x = point.get(v).cloned().unwrap_or_else(ExactRational::zero);
                t *= num_traits::pow(x, m.exp(v) as usize);
            }
            total += t;
        }
        total
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Uses graded-lex leading terms: if `divisor` divides the
    /// running remainder then its leading monomial divides the remainder's.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.len() == 1 {
            let inv = lc.recip();
            return self.div_monomial(lm).map(|q| q.scale(&inv));
        }
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_div(lm)?;
            let qc = rc * &lc_inv;
            for (m, c) in &divisor.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits `self = c * pp` where `pp` has coprime integer coefficients and
    /// a positive leading coefficient. The zero polynomial maps to `(0, 0)`.
    pub fn primitive_split(&self) -> (ExactRational, Self) {
        if self.is_zero() {
            return (ExactRational::zero(), Self::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = ExactRational::new(num_gcd, den_lcm);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }

    /// Parses with variable names `x0..x7`.
    pub fn parse(s: &str) -> Result<Self, String> {
        Self::parse_with(s, &DEFAULT_NAMES)
    }

    /// Parses `+ - * ^ /` (division only by numbers), parentheses, integer
    /// literals and the given variable names.
    pub fn parse_with(s: &str, names: &[&str]) -> Result<Self, String> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0, names };
        let p = parser.sum()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(format!("trailing input at byte {}", parser.pos));
        }
        Ok(p)
    }
}

pub const DEFAULT_NAMES: [&str; MAX_VARS] = ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"];

struct PolyDisplay<'a> {
    poly: &'a SparsePoly,
    names: &'a [&'a str],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(super::rational::format_rational(&abs));
            }
            for v in m.support() {
                let name = self.names.get(v).copied().unwrap_or(DEFAULT_NAMES[v]);
                match m.exp(v) {
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&DEFAULT_NAMES).fmt(f)
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

impl FromStr for SparsePoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<SparsePoly, String> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.product()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<SparsePoly, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err("division only by nonzero constants".into());
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                Some(b'(') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<SparsePoly, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| "bad exponent".to_string())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("expected integer at byte {start}"))
    }

    fn atom(&mut self) -> Result<SparsePoly, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(format!("expected ')' at byte {}", self.pos));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(SparsePoly::constant(ExactRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == ident)
                    .ok_or_else(|| format!("unknown variable '{ident}'"))?;
                Ok(SparsePoly::var(idx))
            }
            other => Err(format!("unexpected {:?} at byte {}", other.map(char::from), self.pos)),
        }
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(mut self) -> SparsePoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -self.clone()
    }
}

impl AddAssign<&SparsePoly> for SparsePoly {
    fn add_assign(&mut self, rhs: &SparsePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&SparsePoly> for SparsePoly {
    fn sub_assign(&mut self, rhs: &SparsePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(mut self, rhs: SparsePoly) -> SparsePoly {
        self += &rhs;
        self
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(mut self, rhs: SparsePoly) -> SparsePoly {
        self -= &rhs;
        self
    }
}

impl Mul<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        if self.len() < rhs.len() {
            rhs.mul_filtered(self, |_| true)
        } else {
            self.mul_filtered(rhs, |_| true)
        }
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn grlex_order_and_leading_term() {
        let f = p("x1^3 + x0*x1 + x0^2 + 5");
        let (m, c) = f.leading().unwrap();
        assert_eq!(*m, Monomial::from_exps(&[0, 3]));
        assert_eq!(*c, int(1));
        let g = p("x0*x1 + x1^2 + x0^2");
        assert_eq!(*g.leading().unwrap().0, Monomial::from_exps(&[2, 0]));
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let f = p("x0 + x1") - p("x0");
        assert_eq!(f, p("x1"));
        assert_eq!(f.len(), 1);
        assert!((p("x0 - x1") + p("x1 - x0")).is_zero());
    }

    #[test]
    fn ring_axiom_examples() {
        assert_eq!(p("x0 + x0"), p("2*x0"));
        assert_eq!(p("(x0 - x1)*(x0 + x1)"), p("x0^2 - x1^2"));
        assert_eq!(p("(x0+x1)^3"), p("x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3"));
    }

    #[test]
    fn exact_division() {
        let a = p("x0^2 - x1^2");
        assert_eq!(a.div_exact(&p("x0 - x1")), Some(p("x0 + x1")));
        assert_eq!(a.div_exact(&p("x0 - 2*x1")), None);
        assert_eq!(p("6*x0*x1^2").div_exact(&p("3*x1")), Some(p("2*x0*x1")));
        assert_eq!(p("2*x1 - x0 - x2").div_exact(&p("x0")), None);
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let f = p("3*x0^2*x1 - x0*x2 + x1^4 + 7");
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], p("-x2"));
        assert_eq!(SparsePoly::from_coefficients(0, &cs), f);
    }

    #[test]
    fn substitution_and_eval() {
        let f = p("x0^2 + x0*x1");
        assert_eq!(f.substitute(0, &p("2*x1 - x0")), p("4*x1^2 - 4*x0*x1 + x0^2 + 2*x1^2 - x0*x1"));
        assert_eq!(f.eval(&[int(2), int(3)]), int(10));
    }

    #[test]
    fn primitive_split_normalizes_sign_and_content() {
        let (c, pp) = p("-x0/2 + 3*x1/4").primitive_split();
        assert_eq!(c, frac(-1, 4));
        assert_eq!(pp, p("2*x0 - 3*x1"));
        assert_eq!(&pp.scale(&c), &p("-x0/2 + 3*x1/4"));
    }

    #[test]
    fn truncated_product_matches_full_product() {
        let a = p("(1 + x0 + x1)^4");
        let b = p("(2 - x0*x2)^3");
        let full = &a * &b;
        assert_eq!(a.mul_truncated(&b, 0, 2), full.truncate(0, 2));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p("x0^2 - 2*x0*x1 + x1/3").to_string(), "x0^2 - 2*x0*x1 + 1/3*x1");
        let uv = SparsePoly::parse_with("u*v - v^2", &["u", "v"]).unwrap();
        assert_eq!(uv.display_with(&["u", "v"]).to_string(), "u*v - v^2");
    }
}

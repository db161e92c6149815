//! Rational functions with a factored denominator.
//!
//! Every integrand in the engine has a denominator that is a product of
//! powers of a few polynomials (mostly linear forms), so we never multiply
//! denominators out. A [`FactoredFraction`] is
//!
//! ```text
//!     num * Π num_factors[f]^e  /  Π den[f]^e
//! ```
//!
//! where every key is a canonical [`Factor`]. Common factors cancel by key,
//! so no gcd is needed to keep things small.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::{Monomial, SparsePoly, MAX_VARS};
use super::rational::ExactRational;
use crate::error::{Error, Result};

/// Nonconstant polynomial with coprime integer coefficients, positive
/// leading coefficient, and no monomial content unless it is a bare variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Factor(SparsePoly);

impl Factor {
    pub fn var(var: usize) -> Self {
        Factor(SparsePoly::var(var))
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.0
    }

    /// `Some(v)` when the factor is exactly `x_v`.
    pub fn as_var(&self) -> Option<usize> {
        let (m, _) = self.0.leading()?;
        (self.0.len() == 1 && m.degree() == 1).then(|| m.support().next().unwrap())
    }
}

/// Splits a nonzero `p` as `scalar * x^mono * rest`, where `rest` is a
/// canonical factor or absent when it would be 1.
pub fn canonicalize(p: &SparsePoly) -> (ExactRational, Monomial, Option<Factor>) {
    debug_assert!(!p.is_zero());
    let mono = p.monomial_content();
    let stripped = p.div_monomial(&mono).expect("monomial content divides");
    let (c, pp) = stripped.primitive_split();
    let rest = (!pp.is_constant()).then_some(Factor(pp));
    (c, mono, rest)
}

pub(crate) fn bump(map: &mut BTreeMap<Factor, u32>, f: Factor, e: u32) {
    if e > 0 {
        *map.entry(f).or_insert(0) += e;
    }
}

pub(crate) fn bump_monomial(map: &mut BTreeMap<Factor, u32>, mono: &Monomial) {
    for v in mono.support() {
        bump(map, Factor::var(v), u32::from(mono.exp(v)));
    }
}

fn expand(map: &BTreeMap<Factor, u32>) -> SparsePoly {
    map.iter().fold(SparsePoly::one(), |acc, (f, &e)| &acc * &f.0.pow(e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredFraction {
    pub(crate) num: SparsePoly,
    pub(crate) num_factors: BTreeMap<Factor, u32>,
    pub(crate) den: BTreeMap<Factor, u32>,
}

impl FactoredFraction {
    pub fn zero() -> Self {
        Self::from_constant(ExactRational::zero())
    }

    pub fn one() -> Self {
        Self::from_constant(ExactRational::one())
    }

    pub fn from_constant(c: ExactRational) -> Self {
        Self { num: SparsePoly::constant(c), num_factors: BTreeMap::new(), den: BTreeMap::new() }
    }

    /// Wraps a polynomial, splitting off its monomial content and, if what
    /// remains is a single canonical factor, keeping it factored.
    pub fn from_poly(p: &SparsePoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let (c, mono, rest) = canonicalize(p);
        let mut num_factors = BTreeMap::new();
        bump_monomial(&mut num_factors, &mono);
        if let Some(f) = rest {
            bump(&mut num_factors, f, 1);
        }
        Self { num: SparsePoly::constant(c), num_factors, den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The unfactored part of the numerator.
    pub fn num_part(&self) -> &SparsePoly {
        &self.num
    }

    pub fn num_factors(&self) -> impl Iterator<Item = (&Factor, u32)> {
        self.num_factors.iter().map(|(f, &e)| (f, e))
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&Factor, u32)> {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    pub fn expanded_numerator(&self) -> SparsePoly {
        &self.num * &expand(&self.num_factors)
    }

    pub fn expanded_denominator(&self) -> SparsePoly {
        expand(&self.den)
    }

    pub fn var_mask(&self) -> u32 {
        self.num_factors
            .keys()
            .chain(self.den.keys())
            .fold(self.num.var_mask(), |acc, f| acc | f.0.var_mask())
    }

    /// `Some(c)` when the fraction is the constant `c`.
    pub fn as_constant(&self) -> Option<ExactRational> {
        if self.num.is_zero() {
            return Some(ExactRational::zero());
        }
        (self.num.is_constant() && self.num_factors.is_empty() && self.den.is_empty())
            .then(|| self.num.constant_term())
    }

    fn cancel_keys(&mut self) {
        let shared: Vec<Factor> =
            self.num_factors.keys().filter(|f| self.den.contains_key(*f)).cloned().collect();
        for f in shared {
            let a = self.num_factors[&f];
            let b = self.den[&f];
            let m = a.min(b);
            self.num_factors.insert(f.clone(), a - m);
            self.den.insert(f, b - m);
        }
        self.num_factors.retain(|_, e| *e > 0);
        self.den.retain(|_, e| *e > 0);
    }

    /// Moves monomial content of the expanded part into factors and cancels
    /// shared factors.
    pub(crate) fn reduce_monomials(&mut self) {
        if self.num.is_zero() {
            self.num_factors.clear();
            self.den.clear();
            return;
        }
        let mono = self.num.monomial_content();
        if !mono.is_one() {
            self.num = self.num.div_monomial(&mono).expect("content divides");
            bump_monomial(&mut self.num_factors, &mono);
        }
        self.cancel_keys();
    }

    /// [`Self::reduce_monomials`], then trial-divides by the remaining
    /// denominator factors.
    pub(crate) fn reduce(&mut self) {
        self.reduce_monomials();
        if self.num.is_constant() {
            return;
        }
        for (f, e) in self.den.iter_mut() {
            if f.as_var().is_some() {
                continue;
            }
            while *e > 0 {
                match self.num.div_exact(&f.0) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    /// Multiplies the numerator factors into the expanded part.
    pub(crate) fn flatten_numerator(&mut self) {
        if !self.num_factors.is_empty() {
            self.num = self.expanded_numerator();
            self.num_factors.clear();
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.num = &out.num * &other.num;
        for (f, &e) in &other.num_factors {
            bump(&mut out.num_factors, f.clone(), e);
        }
        for (f, &e) in &other.den {
            bump(&mut out.den, f.clone(), e);
        }
        out.cancel_keys();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.num = -out.num;
        out
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        let mut out = self.clone();
        out.num = out.num.scale(c);
        if out.num.is_zero() {
            return Self::zero();
        }
        out
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let (c, mono, rest) = canonicalize(&self.num);
        let mut den = self.num_factors.clone();
        bump_monomial(&mut den, &mono);
        if let Some(f) = rest {
            bump(&mut den, f, 1);
        }
        let mut out = Self {
            num: SparsePoly::constant(c.recip()),
            num_factors: self.den.clone(),
            den,
        };
        out.cancel_keys();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common = BTreeMap::new();
        for (f, &a) in &self.num_factors {
            if let Some(&b) = other.num_factors.get(f) {
                common.insert(f.clone(), a.min(b));
            }
        }
        let mut den = self.den.clone();
        for (f, &e) in &other.den {
            let slot = den.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |side: &Self| -> SparsePoly {
            let mut p = side.num.clone();
            for (f, &e) in &side.num_factors {
                let extra = e - common.get(f).copied().unwrap_or(0);
                if extra > 0 {
                    p = &p * &f.0.pow(extra);
                }
            }
            for (f, &e) in &den {
                let extra = e - side.den.get(f).copied().unwrap_or(0);
                if extra > 0 {
                    p = &p * &f.0.pow(extra);
                }
            }
            p
        };
        let num = &lift(self) + &lift(other);
        let mut out = Self { num, num_factors: common, den };
        out.reduce();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        if e == 0 {
            return Ok(Self::one());
        }
        Ok(Self {
            num: self.num.pow(e),
            num_factors: self.num_factors.iter().map(|(f, &k)| (f.clone(), k * e)).collect(),
            den: self.den.iter().map(|(f, &k)| (f.clone(), k * e)).collect(),
        })
    }

    /// Evaluates at a point; `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[ExactRational]) -> Option<ExactRational> {
        let d = self
            .den
            .iter()
            .fold(ExactRational::one(), |acc, (f, &e)| acc * num_traits::pow(f.0.eval(point), e as usize));
        if d.is_zero() {
            return None;
        }
        let n = self
            .num_factors
            .iter()
            .fold(self.num.eval(point), |acc, (f, &e)| acc * num_traits::pow(f.0.eval(point), e as usize));
        Some(n / d)
    }

    /// Total degree when numerator and denominator are both homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = i64::from(self.num.homogeneous_degree()?);
        for (f, &e) in &self.num_factors {
            deg += i64::from(f.0.homogeneous_degree()?) * i64::from(e);
        }
        for (f, &e) in &self.den {
            deg -= i64::from(f.0.homogeneous_degree()?) * i64::from(e);
        }
        Some(deg)
    }

    /// Number of distinct variables present.
    pub fn var_count(&self) -> usize {
        let mask = self.var_mask();
        (0..MAX_VARS).filter(|v| mask & (1 << v) != 0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    fn ff(s: &str) -> FactoredFraction {
        FactoredFraction::from_poly(&p(s))
    }

    #[test]
    fn canonical_form_splits_scalar_monomial_rest() {
        let (c, m, rest) = canonicalize(&p("-4*x0^2*x1 + 2*x0^2*x2"));
        assert_eq!(c, int(-2));
        assert_eq!(m, Monomial::from_exps(&[2]));
        assert_eq!(rest.unwrap().poly(), &p("2*x1 - x2"));
        let (c, m, rest) = canonicalize(&p("3*x1^2"));
        assert_eq!((c, m, rest), (int(3), Monomial::from_exps(&[0, 2]), None));
    }

    #[test]
    fn reciprocal_sum_reduces_to_linear_denominator() {
        // 1 / (1/(x2 - x1) + 1/(x2 - x3))
        let a = ff("x2 - x1").inv().unwrap();
        let b = ff("x2 - x3").inv().unwrap();
        let r = a.add(&b).inv().unwrap();
        assert_eq!(r.expanded_numerator(), p("-(x2 - x1)*(x2 - x3)"));
        assert_eq!(r.expanded_denominator(), p("x1 - 2*x2 + x3"));
    }

    #[test]
    fn factors_cancel_by_key() {
        let a = ff("x0^2*(x0 + x1)");
        let b = ff("x0").mul(&ff("x0 + x1").pow(2).unwrap()).inv().unwrap();
        let q = a.mul(&b);
        assert_eq!(q.expanded_numerator(), p("x0"));
        assert_eq!(q.expanded_denominator(), p("x0 + x1"));
    }

    #[test]
    fn sums_trial_divide_common_factors() {
        // x0/(x0 - x1) - x1/(x0 - x1) = 1
        let d = ff("x0 - x1").inv().unwrap();
        let s = ff("x0").mul(&d).sub(&ff("x1").mul(&d));
        assert_eq!(s.as_constant(), Some(int(1)));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(ff("x0 - x0").inv(), Err(Error::DivisionByZeroPolynomial)));
    }

    #[test]
    fn eval_and_degree() {
        let q = ff("x0 + x1").mul(&ff("x0*x1^2").inv().unwrap());
        assert_eq!(q.eval(&[int(1), int(2)]), Some(frac(3, 4)));
        assert_eq!(q.eval(&[int(0), int(2)]), None);
        assert_eq!(q.homogeneous_degree(), Some(-2));
        assert_eq!(q.pow(-2).unwrap().homogeneous_degree(), Some(4));
    }
}

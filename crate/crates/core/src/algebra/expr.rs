//! Rational-function expression trees and their normalization.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fraction::FactoredFraction;
use super::gcd::gcd;
use super::poly::SparsePoly;
use super::rational::ExactRational;
use crate::error::Result;

/// Expression over [`SparsePoly`] leaves.
///
/// Trees are cheap to build and are only turned into a single fraction by
/// [`RatFunExpr::to_fraction`] or [`normalize`].
#[derive(Clone, Debug, PartialEq)]
pub enum RatFunExpr {
    Poly(SparsePoly),
    Sum(Vec<RatFunExpr>),
    Product(Vec<RatFunExpr>),
    Quotient(Box<RatFunExpr>, Box<RatFunExpr>),
    /// Integer power; negative exponents take reciprocals.
    Pow(Box<RatFunExpr>, i32),
}

impl RatFunExpr {
    pub fn poly(p: SparsePoly) -> Self {
        RatFunExpr::Poly(p)
    }

    pub fn var(v: usize) -> Self {
        RatFunExpr::Poly(SparsePoly::var(v))
    }

    pub fn constant(c: ExactRational) -> Self {
        RatFunExpr::Poly(SparsePoly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        RatFunExpr::Poly(SparsePoly::int(c))
    }

    pub fn sum(terms: impl IntoIterator<Item = RatFunExpr>) -> Self {
        RatFunExpr::Sum(terms.into_iter().collect())
    }

    pub fn product(factors: impl IntoIterator<Item = RatFunExpr>) -> Self {
        RatFunExpr::Product(factors.into_iter().collect())
    }

    pub fn quotient(num: RatFunExpr, den: RatFunExpr) -> Self {
        RatFunExpr::Quotient(Box::new(num), Box::new(den))
    }

    pub fn pow(self, e: i32) -> Self {
        RatFunExpr::Pow(Box::new(self), e)
    }

    pub fn recip(self) -> Self {
        RatFunExpr::quotient(RatFunExpr::int(1), self)
    }

    /// Collapses the tree into one factored fraction.
    pub fn to_fraction(&self) -> Result<FactoredFraction> {
        match self {
            RatFunExpr::Poly(p) => Ok(FactoredFraction::from_poly(p)),
            RatFunExpr::Sum(terms) => terms
                .iter()
                .try_fold(FactoredFraction::zero(), |acc, t| Ok(acc.add(&t.to_fraction()?))),
            RatFunExpr::Product(factors) => {
                let mut acc = FactoredFraction::one();
                for f in factors {
                    acc = acc.mul(&f.to_fraction()?);
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            RatFunExpr::Quotient(n, d) => {
                let den = d.to_fraction()?.inv()?;
                Ok(n.to_fraction()?.mul(&den))
            }
            RatFunExpr::Pow(b, e) => b.to_fraction()?.pow(*e),
        }
    }
}

impl From<SparsePoly> for RatFunExpr {
    fn from(p: SparsePoly) -> Self {
        RatFunExpr::Poly(p)
    }
}

impl Add for RatFunExpr {
    type Output = RatFunExpr;
    fn add(self, rhs: RatFunExpr) -> RatFunExpr {
        RatFunExpr::Sum(vec![self, rhs])
    }
}

impl Sub for RatFunExpr {
    type Output = RatFunExpr;
    fn sub(self, rhs: RatFunExpr) -> RatFunExpr {
        RatFunExpr::Sum(vec![self, -rhs])
    }
}

impl Neg for RatFunExpr {
    type Output = RatFunExpr;
    fn neg(self) -> RatFunExpr {
        RatFunExpr::Product(vec![RatFunExpr::int(-1), self])
    }
}

impl Mul for RatFunExpr {
    type Output = RatFunExpr;
    fn mul(self, rhs: RatFunExpr) -> RatFunExpr {
        RatFunExpr::Product(vec![self, rhs])
    }
}

impl Div for RatFunExpr {
    type Output = RatFunExpr;
    fn div(self, rhs: RatFunExpr) -> RatFunExpr {
        RatFunExpr::quotient(self, rhs)
    }
}

#[derive(Clone, Debug)]
pub struct NormalizeOptions {
    /// Full multivariate gcd is attempted only when numerator and
    /// denominator together exceed this many terms.
    pub gcd_threshold: usize,
}

static DEFAULT_GCD_THRESHOLD: AtomicUsize = AtomicUsize::new(500);

/// Sets the threshold used by [`NormalizeOptions::default`] process-wide.
pub fn set_default_gcd_threshold(threshold: usize) {
    DEFAULT_GCD_THRESHOLD.store(threshold, Ordering::Relaxed);
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        Self { gcd_threshold: DEFAULT_GCD_THRESHOLD.load(Ordering::Relaxed) }
    }
}

/// `expr == p / q` with common factors cancelled, integer coefficients
/// sharing no common content, and `q` having a positive graded-lex leading
/// coefficient.
pub fn normalize(expr: &RatFunExpr) -> Result<(SparsePoly, SparsePoly)> {
    normalize_with(expr, &NormalizeOptions::default())
}

pub fn normalize_with(expr: &RatFunExpr, opts: &NormalizeOptions) -> Result<(SparsePoly, SparsePoly)> {
    let mut ff = expr.to_fraction()?;
    ff.flatten_numerator();
    ff.reduce();
    Ok(reduce_pair(ff.expanded_numerator(), ff.expanded_denominator(), opts))
}

/// Content/sign normalization of a numerator/denominator pair, with the
/// gcd step gated by `opts.gcd_threshold`. Monomial content is always
/// cancelled.
pub fn reduce_pair(p: SparsePoly, q: SparsePoly, opts: &NormalizeOptions) -> (SparsePoly, SparsePoly) {
    assert!(!q.is_zero(), "zero denominator");
    if p.is_zero() {
        return (SparsePoly::zero(), SparsePoly::one());
    }
    let mono = p.monomial_content().gcd(&q.monomial_content());
    let (mut p, mut q) = (p.div_monomial(&mono).unwrap(), q.div_monomial(&mono).unwrap());
    if p.len() + q.len() > opts.gcd_threshold {
        let g = gcd(&p, &q);
        if !g.is_constant() {
            p = p.div_exact(&g).expect("gcd divides numerator");
            q = q.div_exact(&g).expect("gcd divides denominator");
        }
    }
    let (cq, qq) = q.primitive_split();
    let p = p.scale(&cq.recip());
    // Clear denominators of p, then strip the joint integer content.
    let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut content = lcm.clone();
    for (_, c) in p.terms() {
        content = content.gcd(&(c.numer() * (&lcm / c.denom())));
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    let factor = ExactRational::new(lcm, content);
    (p.scale(&factor), qq.scale(&factor))
}

/// `a/b == c/d` as rational functions.
pub fn same_rational_function(a: &(SparsePoly, SparsePoly), b: &(SparsePoly, SparsePoly)) -> bool {
    &a.0 * &b.1 == &b.0 * &a.1
}

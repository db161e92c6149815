//! Residues at zero and iterated residues.
//!
//! Two independent routes. [`residue_fraction`] works on a
//! [`FactoredFraction`]: the pole order in `x` is read off the `x` factor of
//! the denominator and every other denominator factor is expanded as a
//! truncated power series in `x`. [`residue_at_zero`] works on an expanded
//! numerator/denominator pair and divides power series directly. The second
//! is far slower and serves as a cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expr::{reduce_pair, NormalizeOptions, RatFunExpr};
use super::fraction::{bump, bump_monomial, canonicalize, Factor, FactoredFraction};
use super::poly::{Monomial, SparsePoly, MAX_VARS};
use super::rational::{binomial, ExactRational};
use crate::error::{Error, Result};

/// Variables to take residues in, innermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueOrder(Vec<usize>);

impl ResidueOrder {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let vars: Vec<usize> = vars.into_iter().collect();
        let mut seen = 0u32;
        for &v in &vars {
            if v >= MAX_VARS {
                return Err(Error::OrderMismatch(format!("variable x{v} out of range")));
            }
            if seen & (1 << v) != 0 {
                return Err(Error::OrderMismatch(format!("variable x{v} listed twice")));
            }
            seen |= 1 << v;
        }
        Ok(Self(vars))
    }

    /// `x0, x1, ..., x_{n-1}` with `x0` innermost.
    pub fn ascending(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    fn mask(&self) -> u32 {
        self.0.iter().fold(0, |m, &v| m | (1 << v))
    }

    fn check_covers(&self, mask: u32) -> Result<()> {
        let missing = mask & !self.mask();
        if missing != 0 {
            let v = missing.trailing_zeros();
            return Err(Error::OrderMismatch(format!("x{v} occurs but is not in the residue order")));
        }
        Ok(())
    }
}

/// Coefficients `Ĥ_0..=Ĥ_top` with
/// `f^{-e} = f0^{-(e+top)} Σ Ĥ_s x^s + O(x^{top+1})`.
fn inverse_power_series(f: &SparsePoly, e: u32, var: usize, top: u32) -> Vec<SparsePoly> {
    let coeffs = f.coefficients_in(var);
    let f0 = &coeffs[0];
    let top = top as usize;
    let mut h: Vec<SparsePoly> = Vec::with_capacity(top + 1);
    if coeffs.len() == 2 {
        // (f0 + f1 x)^{-e}: H_s = (-1)^s C(e+s-1, s) f1^s.
        let f1 = &coeffs[1];
        let mut f1_pow = SparsePoly::one();
        for s in 0..=top {
            let mut c = ExactRational::from(binomial(u64::from(e) + s as u64 - 1, s as u64));
            if s % 2 == 1 {
                c = -c;
            }
            h.push(f1_pow.scale(&c));
            if s < top {
                f1_pow = &f1_pow * f1;
            }
        }
    } else {
        let d = coeffs.len() - 1;
        let mut f0_pows = vec![SparsePoly::one()];
        for j in 1..=d.max(1) {
            f0_pows.push(&f0_pows[j - 1] * f0);
        }
        let e = ExactRational::from(BigInt::from(e));
        h.push(SparsePoly::one());
        for s in 0..top {
            let mut acc = SparsePoly::zero();
            for j in 0..=s.min(d - 1) {
                let t = &(&coeffs[j + 1] * &h[s - j]) * &f0_pows[j];
                acc -= &t.scale(&(&e * ExactRational::from(BigInt::from(j + 1))));
            }
            for j in 1..=(s + 1).min(d) {
                let t = &(&coeffs[j] * &h[s + 1 - j]) * &f0_pows[j - 1];
                acc -= &t.scale(&ExactRational::from(BigInt::from(s + 1 - j)));
            }
            h.push(acc.scale(&ExactRational::new(BigInt::one(), BigInt::from(s + 1))));
        }
    }
    // Rescale H_s / f0^{e+s} onto the common denominator f0^{e+top}.
    let mut f0_pow = SparsePoly::one();
    for s in (0..=top).rev() {
        if s < top {
            f0_pow = &f0_pow * f0;
        }
        if !f0_pow.is_one() {
            h[s] = &h[s] * &f0_pow;
        }
    }
    h
}

/// Residue at `x_var = 0` of a factored fraction, as a factored fraction in
/// the remaining variables.
pub fn residue_fraction(f: &FactoredFraction, var: usize) -> Result<FactoredFraction> {
    if f.is_zero() {
        return Ok(FactoredFraction::zero());
    }
    let xf = Factor::var(var);
    let m = f.den.get(&xf).copied().unwrap_or(0);
    if m == 0 {
        return Ok(FactoredFraction::zero());
    }
    let top = m - 1;

    let mut out_num_factors = BTreeMap::new();
    let mut out_den = BTreeMap::new();
    let mut scalar = ExactRational::one();
    let mut series = f.num.truncate(var, top);

    for (g, &e) in &f.num_factors {
        if g.poly().contains_var(var) {
            let gt = g.poly().truncate(var, top);
            for _ in 0..e {
                series = series.mul_truncated(&gt, var, top);
                if series.is_zero() {
                    return Ok(FactoredFraction::zero());
                }
            }
        } else {
            bump(&mut out_num_factors, g.clone(), e);
        }
    }
    for (g, &e) in &f.den {
        if *g == xf {
            continue;
        }
        if !g.poly().contains_var(var) {
            bump(&mut out_den, g.clone(), e);
            continue;
        }
        let h = inverse_power_series(g.poly(), e, var, top);
        let hp = SparsePoly::from_coefficients(var, &h);
        series = series.mul_truncated(&hp, var, top);
        if series.is_zero() {
            return Ok(FactoredFraction::zero());
        }
        let f0 = g.poly().coefficient_of(var, 0);
        let (c, mono, rest) = canonicalize(&f0);
        let power = e + top;
        scalar *= num_traits::pow(c, power as usize);
        bump_monomial(&mut out_den, &mono.pow(power));
        if let Some(r) = rest {
            bump(&mut out_den, r, power);
        }
    }

    let coeff = series.coefficient_of(var, top);
    if coeff.is_zero() {
        return Ok(FactoredFraction::zero());
    }
    let mut out = FactoredFraction {
        num: coeff.scale(&scalar.recip()),
        num_factors: out_num_factors,
        den: out_den,
    };
    out.reduce_monomials();
    Ok(out)
}

/// Iterated residue of a closed-form expression down to a number, via the
/// factored route.
pub fn iterated_residue(expr: &RatFunExpr, order: &ResidueOrder) -> Result<ExactRational> {
    iterated_residue_fraction(expr.to_fraction()?, order)
}

pub fn iterated_residue_fraction(mut f: FactoredFraction, order: &ResidueOrder) -> Result<ExactRational> {
    order.check_covers(f.var_mask())?;
    for &v in order.vars() {
        f = residue_fraction(&f, v)?;
        if f.is_zero() {
            return Ok(ExactRational::zero());
        }
    }
    f.as_constant()
        .ok_or_else(|| Error::OrderMismatch("variables remain after the residue order".into()))
}

/// Residue at `x_var = 0` of `num / den`, by power-series division.
///
/// With `den = x^m h`, `h0 = h|_{x=0}` and `num/h = Σ P_s / h0^{s+1} x^s`, the
/// residue is `P_{m-1} / h0^m`, returned reduced.
pub fn residue_at_zero(num: &SparsePoly, den: &SparsePoly, var: usize) -> Result<(SparsePoly, SparsePoly)> {
    if den.is_zero() {
        return Err(Error::DivisionByZeroPolynomial);
    }
    let m = den.valuation_in(var);
    if m == 0 || num.is_zero() {
        return Ok((SparsePoly::zero(), SparsePoly::one()));
    }
    let shift = Monomial::ONE.with_exp(var, m as u16);
    let h = den.div_monomial(&shift).expect("valuation divides");
    let hc = h.coefficients_in(var);
    let h0 = &hc[0];
    if h0.is_zero() {
        return Err(Error::NonIsolatedPole { var });
    }
    let top = (m - 1) as usize;
    let nc = num.coefficients_in(var);
    let mut h0_pows = vec![SparsePoly::one()];
    for j in 1..=top {
        h0_pows.push(&h0_pows[j - 1] * h0);
    }
    let mut p: Vec<SparsePoly> = Vec::with_capacity(top + 1);
    for s in 0..=top {
        let mut acc = match nc.get(s) {
            Some(c) => c * &h0_pows[s],
            None => SparsePoly::zero(),
        };
        for j in 1..=s.min(hc.len() - 1) {
            acc -= &(&(&hc[j] * &p[s - j]) * &h0_pows[j - 1]);
        }
        p.push(acc);
    }
    let den_out = &h0_pows[top] * h0;
    Ok(reduce_pair(p.pop().unwrap(), den_out, &NormalizeOptions::default()))
}

/// Iterated residue through [`residue_at_zero`], for cross-checking.
pub fn iterated_residue_generic(
    num: &SparsePoly,
    den: &SparsePoly,
    order: &ResidueOrder,
) -> Result<ExactRational> {
    if den.is_zero() {
        return Err(Error::DivisionByZeroPolynomial);
    }
    order.check_covers(num.var_mask() | den.var_mask())?;
    let (mut p, mut q) = (num.clone(), den.clone());
    for &v in order.vars() {
        (p, q) = residue_at_zero(&p, &q, v)?;
        if p.is_zero() {
            return Ok(ExactRational::zero());
        }
    }
    debug_assert!(p.is_constant() && q.is_constant());
    Ok(p.constant_term() / q.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::expr::normalize;
    use crate::algebra::rational::{frac, int};

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    fn e(s: &str) -> RatFunExpr {
        RatFunExpr::Poly(p(s))
    }

    #[test]
    fn single_residue_reduces() {
        let num = p("2*(x0 + 3*x1)*(3*x0 + x1)");
        let den = p("x0*x1*(x0 + x1)^2");
        assert_eq!(residue_at_zero(&num, &den, 0).unwrap(), (p("6"), p("x1")));

        let f = (e("2*(x0 + 3*x1)*(3*x0 + x1)") / (e("x0") * e("x1") * e("x0 + x1").pow(2)))
            .to_fraction()
            .unwrap();
        let r = residue_fraction(&f, 0).unwrap();
        assert_eq!(r.expanded_numerator(), p("6"));
        assert_eq!(r.expanded_denominator(), p("x1"));
    }

    #[test]
    fn higher_order_pole() {
        // Res_{x=0} 1/(x^3 (x + y)) = 1/y^3
        let expr = e("1") / (e("x0").pow(3) * e("x0 + x1"));
        let f = expr.to_fraction().unwrap();
        let r = residue_fraction(&f, 0).unwrap();
        assert_eq!(r.eval(&[int(0), int(2)]), Some(frac(1, 8)));
        let (n, d) = residue_at_zero(&p("1"), &p("x0^3*(x0 + x1)"), 0).unwrap();
        assert_eq!((n, d), (p("1"), p("x1^3")));
    }

    #[test]
    fn nonlinear_denominator_series() {
        // Res_{x=0} 1/(x^3 (1 + x + x^2)^2): (1+x+x^2)^{-2} = 1 - 2x + x^2 + ...
        let expr = e("1") / (e("x0").pow(3) * e("1 + x0 + x0^2").pow(2));
        let r = iterated_residue(&expr, &ResidueOrder::ascending(1)).unwrap();
        assert_eq!(r, int(1));
        let g = iterated_residue_generic(&p("1"), &p("x0^3*(1 + x0 + x0^2)^2"), &ResidueOrder::ascending(1));
        assert_eq!(g.unwrap(), int(1));
    }

    #[test]
    fn iterated_residue_matches_generic_route() {
        let expr = e("(x0 + 2*x1)^3") / (e("x0^2") * e("x1^3") * e("x1 - x0").pow(2) * e("2*x1 + x0"));
        let order = ResidueOrder::ascending(2);
        let a = iterated_residue(&expr, &order).unwrap();
        let (n, d) = normalize(&expr).unwrap();
        let b = iterated_residue_generic(&n, &d, &order).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn polynomial_has_no_residue() {
        let expr = e("x0^4 + x0*x1");
        assert_eq!(iterated_residue(&expr, &ResidueOrder::ascending(2)).unwrap(), int(0));
    }

    #[test]
    fn order_errors() {
        assert!(matches!(ResidueOrder::new([0, 1, 0]), Err(Error::OrderMismatch(_))));
        let expr = e("1") / e("x0*x2");
        assert!(matches!(
            iterated_residue(&expr, &ResidueOrder::ascending(2)),
            Err(Error::OrderMismatch(_))
        ));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert!(matches!(residue_at_zero(&p("1"), &SparsePoly::zero(), 0), Err(Error::DivisionByZeroPolynomial)));
    }
}

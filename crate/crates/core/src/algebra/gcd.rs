//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive pseudo-remainder sequences: the highest-index
//! variable is the main variable, contents are gcds of the coefficient
//! polynomials in the remaining variables. Slow on large inputs, which is
//! why normalization only reaches for it past a term-count threshold.

use super::poly::{SparsePoly, MAX_VARS};

/// Greatest common divisor, normalized to coprime integer coefficients and a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_zero() {
        return b.primitive_split().1;
    }
    if b.is_zero() {
        return a.primitive_split().1;
    }
    let mask = a.var_mask() | b.var_mask();
    let Some(var) = (0..MAX_VARS).rev().find(|v| mask & (1 << v) != 0) else {
        return SparsePoly::one();
    };
    let a = a.primitive_split().1;
    let b = b.primitive_split().1;
    match (a.contains_var(var), b.contains_var(var)) {
        (true, false) => gcd(&content_in(&a, var), &b),
        (false, true) => gcd(&a, &content_in(&b, var)),
        _ => {
            let ca = content_in(&a, var);
            let cb = content_in(&b, var);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let g = &gcd(&ca, &cb) * &primitive_prs(pa, pb, var);
            g.primitive_split().1
        }
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_var`.
pub fn content_in(p: &SparsePoly, var: usize) -> SparsePoly {
    let mut g = SparsePoly::zero();
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &SparsePoly, var: usize) -> SparsePoly {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").primitive_split().1
}

/// Pseudo-remainder of `a` by `b` in `x_var`.
fn pseudo_remainder(a: &SparsePoly, b: &SparsePoly, var: usize) -> SparsePoly {
    let db = b.degree_in(var);
    let lcb = b.coefficient_of(var, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lcr = r.coefficient_of(var, dr);
        let shift = super::poly::Monomial::ONE.with_exp(var, (dr - db) as u16);
        r = &(&r * &lcb) - &(&(b * &lcr)).mul_monomial(&shift);
    }
    r
}

fn primitive_prs(a: SparsePoly, b: SparsePoly, var: usize) -> SparsePoly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_part_in(&b, var);
        }
        if !r.contains_var(var) {
            return SparsePoly::one();
        }
        a = b;
        b = primitive_part_in(&r, var);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn univariate_gcd() {
        assert_eq!(gcd(&p("x0^2 - 1"), &p("x0^2 + 2*x0 + 1")), p("x0 + 1"));
        assert_eq!(gcd(&p("x0^2 + 1"), &p("x0 - 3")), p("1"));
    }

    #[test]
    fn multivariate_gcd_recovers_common_factor() {
        let g = p("2*x1 - x0 - x2");
        let a = &g * &p("(x0 + x1)^2 * x2");
        let b = &g * &p("x0 - x1 + 3*x2^2");
        assert_eq!(gcd(&a, &b), g.primitive_split().1);
    }

    #[test]
    fn gcd_with_monomial_and_content() {
        assert_eq!(gcd(&p("6*x0^2*x1"), &p("4*x0*x1^3")), p("x0*x1"));
        assert_eq!(gcd(&p("x0^2 - x1^2"), &p("3*x0 - 3*x1")), p("x0 - x1"));
        assert_eq!(gcd(&SparsePoly::zero(), &p("-2*x1 + 4")), p("x1 - 2"));
    }

    #[test]
    fn gcd_of_coprime_multivariate_is_one() {
        assert_eq!(gcd(&p("x0*x1 + 1"), &p("x0 + x1")), p("1"));
    }
}

//! Two-point genus-0 invariants `<O_{h^a} O_{h^b}>_{0,d}` of a degree-`k`
//! hypersurface in `CP^{N-1}`, for `d <= 3`.
//!
//! [`gw_residue`] takes iterated residues of the non-equivariant integrands
//! (one per degeneration type). [`gw_equivariant`] sums the torus fixed-point
//! contributions for concrete characters.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{iterated_residue, ExactRational, Monomial, RatFunExpr, ResidueOrder, SparsePoly};
use crate::blocks::{
    e_expr, equivariant_e, equivariant_t, equivariant_v, t_expr, w_kernel, w_kernel_at, CharacterAssignment,
};
use crate::error::{Error, Result};
use crate::vsc::MAX_DEGREE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GwRequest {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub k: u32,
    pub d: u32,
    pub a: u32,
    pub b: u32,
}

impl GwRequest {
    pub fn new(big_n: u32, k: u32, d: u32, a: u32, b: u32) -> Self {
        Self { big_n, k, d, a, b }
    }

    /// The request with `a = N - 2 - n`, `b = n - 1 + (N - k) d`, or an error
    /// when either exponent would be negative.
    pub fn from_n(big_n: u32, k: u32, d: u32, n: i64) -> Result<Self> {
        let a = i64::from(big_n) - 2 - n;
        let b = n - 1 + (i64::from(big_n) - i64::from(k)) * i64::from(d);
        if a < 0 || b < 0 {
            return Err(Error::Range(format!("insertions h^{a}, h^{b} are not effective")));
        }
        Ok(Self::new(big_n, k, d, a as u32, b as u32))
    }

    /// Whether `a + b` matches the virtual dimension `N - 3 + (N - k) d`.
    pub fn passes_dimension_filter(&self) -> bool {
        let target = i64::from(self.big_n) - 3 + (i64::from(self.big_n) - i64::from(self.k)) * i64::from(self.d);
        i64::from(self.a) + i64::from(self.b) == target
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, ..*self }
    }
}

impl fmt::Display for GwRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} k={} d={} a={} b={}", self.big_n, self.k, self.d, self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Residue,
    Equivariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GwValue {
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub value: ExactRational,
    pub pipeline: Pipeline,
    pub request: GwRequest,
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

fn check_degree(d: u32) -> Result<()> {
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(d));
    }
    Ok(())
}

fn lin(terms: &[(usize, i64)]) -> SparsePoly {
    SparsePoly::linear(terms)
}

/// `1 / (p/(x_j - x_i) + r/(x_j - x_l))`, left unsimplified.
fn edge_weight(p: i64, r: i64, i: usize, j: usize, l: usize) -> RatFunExpr {
    let left = RatFunExpr::quotient(RatFunExpr::int(p), lin(&[(j, 1), (i, -1)]).into());
    let right = RatFunExpr::quotient(RatFunExpr::int(r), lin(&[(j, 1), (l, -1)]).into());
    (left + right).recip()
}

/// `Σ c_e w(x_u, x_v)` over edges.
fn kernel_sum(a: u32, edges: &[(i64, usize, usize)]) -> SparsePoly {
    edges.iter().fold(SparsePoly::zero(), |acc, &(c, u, v)| &acc + &w_kernel(a, u, v).scale(&q(c, 1)))
}

fn x_pow(vars: usize, big_n: u32) -> RatFunExpr {
    RatFunExpr::product((0..vars).map(|v| RatFunExpr::var(v).pow(-(big_n as i32))))
}

fn k_x(k: u32, v: usize) -> RatFunExpr {
    RatFunExpr::poly(SparsePoly::monomial(Monomial::var(v), q(i64::from(k), 1)))
}

/// One residue term: prefactor, integrand, and number of variables.
pub struct ResidueTerm {
    pub prefactor: ExactRational,
    pub integrand: RatFunExpr,
    pub vars: usize,
}

/// The integrand of a single edge of degree `d` between `x_0` and `x_1`.
fn single_edge(req: &GwRequest, d: u32) -> RatFunExpr {
    let (a, b) = (req.a, req.b);
    let mut f = vec![e_expr(req.k, d, 0, 1), lin(&[(0, 1), (1, -1)]).pow(2).into(), x_pow(2, req.big_n)];
    if d > 1 {
        f.push(t_expr(req.big_n, d, 0, 1).recip());
    }
    f.push(w_kernel(a, 0, 1).into());
    f.push(w_kernel(b, 0, 1).into());
    RatFunExpr::product(f)
}

/// Chain `x_0 -(d1)- x_1 -(d2)- x_2`.
fn two_edge_chain(req: &GwRequest, d1: u32, d2: u32) -> RatFunExpr {
    let (k, n) = (req.k, req.big_n);
    let mut f = vec![e_expr(k, d1, 0, 1), e_expr(k, d2, 1, 2), x_pow(3, n), k_x(k, 1).recip()];
    if d1 > 1 {
        f.push(t_expr(n, d1, 0, 1).recip());
    }
    if d2 > 1 {
        f.push(t_expr(n, d2, 1, 2).recip());
    }
    f.push(edge_weight(i64::from(d1), i64::from(d2), 0, 1, 2));
    let edges = [(i64::from(d1), 0, 1), (i64::from(d2), 1, 2)];
    f.push(kernel_sum(req.a, &edges).into());
    f.push(kernel_sum(req.b, &edges).into());
    RatFunExpr::product(f)
}

/// The residue terms for a request, in the printed order.
pub fn gw_residue_terms(req: &GwRequest) -> Result<Vec<ResidueTerm>> {
    check_degree(req.d)?;
    let (k, n) = (req.k, req.big_n);
    let term = |p: ExactRational, e: RatFunExpr, vars: usize| ResidueTerm { prefactor: p, integrand: e, vars };
    let mut terms = Vec::new();
    match req.d {
        1 => terms.push(term(q(-1, 2), single_edge(req, 1), 2)),
        2 => {
            terms.push(term(q(-1, 4), single_edge(req, 2), 2));
            terms.push(term(q(1, 2), two_edge_chain(req, 1, 1), 3));
        }
        _ => {
            terms.push(term(q(-1, 6), single_edge(req, 3), 2));
            terms.push(term(q(1, 4), two_edge_chain(req, 2, 1), 3));
            terms.push(term(q(1, 4), two_edge_chain(req, 1, 2), 3));

            let edges = [(1, 0, 1), (1, 1, 2), (1, 2, 3)];
            let chain = RatFunExpr::product([
                e_expr(k, 1, 0, 1),
                e_expr(k, 1, 1, 2),
                e_expr(k, 1, 2, 3),
                x_pow(4, n),
                k_x(k, 1).recip(),
                k_x(k, 2).recip(),
                edge_weight(1, 1, 0, 1, 2),
                edge_weight(1, 1, 1, 2, 3),
                RatFunExpr::from(lin(&[(1, 1), (2, -1)])).pow(-2),
                kernel_sum(req.a, &edges).into(),
                kernel_sum(req.b, &edges).into(),
            ]);
            terms.push(term(q(-1, 2), chain, 4));

            let edges = [(1, 0, 1), (1, 0, 2), (1, 0, 3)];
            let star = RatFunExpr::product([
                e_expr(k, 1, 0, 1),
                e_expr(k, 1, 0, 2),
                e_expr(k, 1, 0, 3),
                x_pow(4, n),
                k_x(k, 0).pow(-2),
                kernel_sum(req.a, &edges).into(),
                kernel_sum(req.b, &edges).into(),
            ]);
            terms.push(term(q(-1, 6), star, 4));
        }
    }
    Ok(terms)
}

/// `<O_{h^a} O_{h^b}>_{0,d}` by iterated residues, innermost variable first.
/// Requests failing the dimension filter give 0 without evaluation.
pub fn gw_residue(req: &GwRequest) -> Result<ExactRational> {
    check_degree(req.d)?;
    if !req.passes_dimension_filter() {
        return Ok(ExactRational::zero());
    }
    gw_residue_unfiltered(req)
}

/// [`gw_residue`] without the dimension shortcut; off-dimension requests
/// still come out 0, by homogeneity.
pub fn gw_residue_unfiltered(req: &GwRequest) -> Result<ExactRational> {
    let mut total = ExactRational::zero();
    for t in gw_residue_terms(req)? {
        let r = iterated_residue(&t.integrand, &ResidueOrder::ascending(t.vars))?;
        total += t.prefactor * r;
    }
    Ok(total)
}

/// `<O_{h^a} O_{h^b} O_h>_{0,d} = d <O_{h^a} O_{h^b}>_{0,d}`.
pub fn gw_three_point(req: &GwRequest) -> Result<ExactRational> {
    Ok(gw_residue(req)? * ExactRational::from(BigInt::from(req.d)))
}

struct Fixed<'a> {
    req: &'a GwRequest,
    lambda: &'a CharacterAssignment,
    v: Vec<ExactRational>,
}

impl Fixed<'_> {
    fn l(&self, i: usize) -> &ExactRational {
        self.lambda.get(i)
    }

    fn nonzero(&self, x: ExactRational, what: &str) -> Result<ExactRational> {
        if x.is_zero() {
            return Err(Error::DegenerateCharacters(format!("{what} vanishes")));
        }
        Ok(x)
    }

    fn wa(&self, i: usize, j: usize) -> ExactRational {
        w_kernel_at(self.req.a, self.l(i), self.l(j))
    }

    fn wb(&self, i: usize, j: usize) -> ExactRational {
        w_kernel_at(self.req.b, self.l(i), self.l(j))
    }

    fn e(&self, d: u32, i: usize, j: usize) -> ExactRational {
        equivariant_e(self.req.k, d, i, j, self.lambda)
    }

    fn t(&self, d: u32, i: usize, j: usize) -> Result<ExactRational> {
        equivariant_t(self.req.big_n as usize, d, i, j, self.lambda)
    }

    fn k_lambda(&self, j: usize) -> Result<ExactRational> {
        self.nonzero(q(i64::from(self.req.k), 1) * self.l(j), "k λ_j")
    }

    /// `1 / (p/(λ_j - λ_i) + r/(λ_j - λ_l))`.
    fn edge_weight(&self, p: i64, r: i64, i: usize, j: usize, l: usize) -> Result<ExactRational> {
        let s = q(p, 1) / (self.l(j) - self.l(i)) + q(r, 1) / (self.l(j) - self.l(l));
        Ok(self.nonzero(s, "edge weight denominator")?.recip())
    }

    /// Single edge of degree `d` between `i` and `j`.
    fn single(&self, d: u32, i: usize, j: usize) -> Result<ExactRational> {
        let diff = self.l(i) - self.l(j);
        let num = self.e(d, i, j) * &diff * &diff * self.wa(i, j) * self.wb(i, j);
        Ok(num / (self.t(d, i, j)? * &self.v[i] * &self.v[j]))
    }

    /// Chain `i -(d1)- j -(d2)- l`.
    fn chain2(&self, d1: u32, d2: u32, i: usize, j: usize, l: usize) -> Result<ExactRational> {
        let (c1, c2) = (q(i64::from(d1), 1), q(i64::from(d2), 1));
        let wa = &c1 * self.wa(i, j) + &c2 * self.wa(j, l);
        let wb = &c1 * self.wb(i, j) + &c2 * self.wb(j, l);
        let num = self.e(d1, i, j) * self.e(d2, j, l) * wa * wb;
        let den = self.t(d1, i, j)? * self.t(d2, j, l)? * &self.v[i] * &self.v[j] * &self.v[l] * self.k_lambda(j)?;
        Ok(num / den * self.edge_weight(i64::from(d1), i64::from(d2), i, j, l)?)
    }

    fn chain3(&self, i: usize, j: usize, l: usize, m: usize) -> Result<ExactRational> {
        let wa = self.wa(i, j) + self.wa(j, l) + self.wa(l, m);
        let wb = self.wb(i, j) + self.wb(j, l) + self.wb(l, m);
        let num = self.e(1, i, j) * self.e(1, j, l) * self.e(1, l, m) * wa * wb;
        let mid = self.l(j) - self.l(l);
        let den = &self.v[i] * &self.v[j] * &self.v[l] * &self.v[m] * self.k_lambda(j)? * self.k_lambda(l)? * &mid * &mid;
        Ok(num / den * self.edge_weight(1, 1, i, j, l)? * self.edge_weight(1, 1, j, l, m)?)
    }

    fn star(&self, i: usize, j: usize, l: usize, m: usize) -> Result<ExactRational> {
        let wa = self.wa(i, j) + self.wa(i, l) + self.wa(i, m);
        let wb = self.wb(i, j) + self.wb(i, l) + self.wb(i, m);
        let num = self.e(1, i, j) * self.e(1, i, l) * self.e(1, i, m) * wa * wb;
        let kl = self.k_lambda(i)?;
        let den = &self.v[i] * &self.v[j] * &self.v[l] * &self.v[m] * &kl * &kl;
        Ok(num / den)
    }
}

/// `<O_{h^a} O_{h^b}>_{0,d}` as a sum over torus fixed loci with characters
/// `lambda` (one per homogeneous coordinate). Chains only require adjacent
/// indices to differ; the degree-3 star only requires the centre to differ
/// from each leaf.
pub fn gw_equivariant(req: &GwRequest, lambda: &CharacterAssignment) -> Result<ExactRational> {
    check_degree(req.d)?;
    let n = req.big_n as usize;
    if lambda.len() != n {
        return Err(Error::Range(format!("need {n} characters, got {}", lambda.len())));
    }
    if n < req.d as usize + 1 || (req.d == 3 && n < 4) {
        return Err(Error::Range(format!("N = {n} is too small for degree {} fixed loci", req.d)));
    }
    // The tangent weights at a fixed point are λ_i - λ_j. With V(N; i) as
    // written the chain terms pick up (-1)^(N-1) and the sum stops being
    // constant in λ for even N.
    let sign = if n % 2 == 0 { -ExactRational::one() } else { ExactRational::one() };
    let v = (0..n).map(|i| &sign * equivariant_v(n, i, lambda)).collect();
    let fx = Fixed { req, lambda, v };
    let pairs = || (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    let chains2 = || pairs().flat_map(move |(i, j)| (0..n).filter(move |&l| l != j).map(move |l| (i, j, l)));

    let mut total = ExactRational::zero();
    let d = req.d;
    let single_pref = match d {
        1 => q(-1, 2),
        2 => q(-1, 4),
        _ => q(-1, 6),
    };
    let mut single = ExactRational::zero();
    for (i, j) in pairs() {
        single += fx.single(d, i, j)?;
    }
    total += single_pref * single;

    if d == 2 {
        let mut s = ExactRational::zero();
        for (i, j, l) in chains2() {
            s += fx.chain2(1, 1, i, j, l)?;
        }
        total += q(1, 2) * s;
    }
    if d == 3 {
        let mut s = ExactRational::zero();
        for (i, j, l) in chains2() {
            s += fx.chain2(2, 1, i, j, l)?;
        }
        total += q(1, 2) * s;

        let mut s = ExactRational::zero();
        for (i, j, l) in chains2() {
            for m in (0..n).filter(|&m| m != l) {
                s += fx.chain3(i, j, l, m)?;
            }
        }
        total -= q(1, 2) * s;

        let mut s = ExactRational::zero();
        for i in 0..n {
            let others: Vec<usize> = (0..n).filter(|&x| x != i).collect();
            for &j in &others {
                for &l in &others {
                    for &m in &others {
                        s += fx.star(i, j, l, m)?;
                    }
                }
            }
        }
        total -= q(1, 6) * s;
    }
    Ok(total)
}

/// [`gw_equivariant`] with prime characters shifted by `seed`, perturbing
/// them deterministically until no fixed-point denominator vanishes.
pub fn gw_equivariant_seeded(req: &GwRequest, seed: u64) -> Result<ExactRational> {
    let base = CharacterAssignment::primes(req.big_n as usize, seed);
    let mut last = None;
    for attempt in 0..64 {
        let lambda = if attempt == 0 { base.clone() } else { base.perturbed(attempt) };
        match gw_equivariant(req, &lambda) {
            Err(Error::DegenerateCharacters(msg)) => last = Some(msg),
            other => return other,
        }
    }
    Err(Error::DegenerateCharacters(last.unwrap_or_default()))
}

pub fn gw_value(req: &GwRequest, pipeline: Pipeline, seed: u64) -> Result<GwValue> {
    let value = match pipeline {
        Pipeline::Residue => gw_residue(req)?,
        Pipeline::Equivariant => gw_equivariant_seeded(req, seed)?,
    };
    Ok(GwValue { value, pipeline, request: *req })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn quintic_lines() {
        let req = GwRequest::new(5, 5, 1, 1, 1);
        assert_eq!(gw_residue(&req).unwrap(), int(2875));
        assert_eq!(gw_three_point(&req).unwrap(), int(2875));
        assert_eq!(gw_equivariant(&req, &CharacterAssignment::primes(5, 0)).unwrap(), int(2875));
    }

    #[test]
    fn quintic_conics() {
        let req = GwRequest::new(5, 5, 2, 1, 1);
        assert_eq!(gw_residue(&req).unwrap(), frac(4876875, 2));
        assert_eq!(gw_three_point(&req).unwrap(), int(4876875));
        assert_eq!(gw_equivariant_seeded(&req, 0).unwrap(), frac(4876875, 2));
    }

    #[test]
    fn trivial_insertion_vanishes() {
        let req = GwRequest::new(5, 5, 1, 2, 0);
        assert_eq!(gw_residue_unfiltered(&req).unwrap(), int(0));
        assert_eq!(gw_residue(&GwRequest::new(6, 3, 1, 3, 0)).unwrap(), int(0));
    }

    #[test]
    fn fano_line_count() {
        // Far from the Calabi-Yau case the invariant is k times the constant.
        let row = crate::vsc::vsc_initial_row(3);
        for n in 0..3 {
            let req = GwRequest::from_n(6, 3, 1, n).unwrap();
            assert_eq!(gw_residue(&req).unwrap(), int(3) * &row[n as usize]);
        }
        // (a, b) = (2, 3) misses the virtual dimension 6.
        assert_eq!(gw_residue(&GwRequest::new(6, 3, 1, 2, 3)).unwrap(), int(0));
    }

    #[test]
    fn off_dimension_requests_vanish() {
        let req = GwRequest::new(5, 5, 2, 1, 2);
        assert!(!req.passes_dimension_filter());
        assert_eq!(gw_residue_unfiltered(&req).unwrap(), int(0));
    }

    #[test]
    fn equivariant_needs_enough_points() {
        let req = GwRequest::new(3, 3, 3, 0, 1);
        assert!(matches!(gw_equivariant(&req, &CharacterAssignment::primes(3, 0)), Err(Error::Range(_))));
    }

    #[test]
    fn even_number_of_coordinates() {
        let req = GwRequest::new(4, 3, 2, 2, 1);
        assert_eq!(gw_residue(&req).unwrap(), int(162));
        assert_eq!(gw_equivariant_seeded(&req, 0).unwrap(), int(162));
        assert_eq!(gw_equivariant_seeded(&req, 3).unwrap(), int(162));
    }
}

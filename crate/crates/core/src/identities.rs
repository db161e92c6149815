//! Exact checks of the rational-function identities behind the
//! transformation and the recursion. Each identity is instantiated over a
//! range of kernel indices and verified by normalizing `lhs - rhs`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{normalize, ExactRational, Monomial, RatFunExpr, SparsePoly};
use crate::blocks::{e_expr, ordered_partitions, t_expr, w_kernel, w_kernel3, OrderedPartition};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

fn x(v: usize) -> SparsePoly {
    SparsePoly::var(v)
}

fn p(e: SparsePoly) -> RatFunExpr {
    RatFunExpr::Poly(e)
}

/// `lhs == rhs` as rational functions.
pub fn holds(lhs: RatFunExpr, rhs: RatFunExpr) -> Result<bool> {
    Ok(normalize(&(lhs - rhs))?.0.is_zero())
}

fn w(a: u32, u: usize, v: usize) -> SparsePoly {
    w_kernel(a, u, v)
}

fn w3(a: u32, u: usize, v: usize, t: usize) -> SparsePoly {
    w_kernel3(a, u, v, t)
}

/// `Σ_{p+q=a-1} u^p v^q` for polynomial arguments.
fn w_at(a: u32, u: &SparsePoly, v: &SparsePoly) -> SparsePoly {
    (0..a).fold(SparsePoly::zero(), |acc, i| &acc + &(&u.pow(i) * &v.pow(a - 1 - i)))
}

/// `e(k, d; u, v)` for polynomial arguments.
fn e_at(k: u32, d: u32, u: &SparsePoly, v: &SparsePoly) -> SparsePoly {
    let kd = k * d;
    (0..=kd).fold(SparsePoly::one(), |acc, m| {
        let f = &u.scale(&q(i64::from(m), i64::from(d))) + &v.scale(&q(i64::from(kd - m), i64::from(d)));
        &acc * &f
    })
}

/// `(x_u^a - x_v^a)(x_v^b - x_u^b)`.
fn cross(a: u32, b: u32, u: usize, v: usize) -> SparsePoly {
    &(&x(u).pow(a) - &x(v).pow(a)) * &(&x(v).pow(b) - &x(u).pow(b))
}

fn check(name: &str, instances: impl IntoIterator<Item = (String, Result<bool>)>) -> IdentityCheck {
    let mut count = 0;
    let mut failures = Vec::new();
    for (label, ok) in instances {
        count += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => failures.push(label),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    IdentityCheck { name: name.to_string(), instances: count, failures }
}

fn ab_grid(max: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=max).flat_map(move |a| (0..=max).map(move |b| (a, b)))
}

/// `w_a(x1,x2) + w_a(x2,x3) = (2x2 - x1 - x3) w_a(x1,x2,x3) + 2 w_a(x1,x3)`.
pub fn kernel_relation(a_max: u32) -> IdentityCheck {
    check(
        "kernel relation",
        (0..=a_max).map(|a| {
            let lhs = &w(a, 1, 2) + &w(a, 2, 3);
            let rhs = &(&SparsePoly::linear(&[(2, 2), (1, -1), (3, -1)]) * &w3(a, 1, 2, 3)) + &w(a, 1, 3).scale(&q(2, 1));
            (format!("a={a}"), Ok(lhs == rhs))
        }),
    )
}

/// `e(k,2; λi, 2λj - λi) = e(k,1; λi, λj) e(k,1; λj, 2λj - λi) / (k λj)`.
pub fn doubled_edge_e(k_max: u32) -> IdentityCheck {
    let (li, lj) = (x(1), x(2));
    let mirror = SparsePoly::linear(&[(2, 2), (1, -1)]);
    check(
        "doubled edge (e)",
        (1..=k_max).map(|k| {
            let lhs = p(e_at(k, 2, &li, &mirror));
            let rhs = p(&e_at(k, 1, &li, &lj) * &e_at(k, 1, &lj, &mirror)) / p(lj.scale(&q(i64::from(k), 1)));
            (format!("k={k}"), holds(lhs, rhs))
        }),
    )
}

/// `w_a(λi, λj) + w_a(λj, 2λj - λi) = 2 w_a(λi, 2λj - λi)`.
pub fn doubled_edge_w(a_max: u32) -> IdentityCheck {
    let (li, lj) = (x(1), x(2));
    let mirror = SparsePoly::linear(&[(2, 2), (1, -1)]);
    check(
        "doubled edge (w)",
        (0..=a_max).map(|a| {
            let lhs = &w_at(a, &li, &lj) + &w_at(a, &lj, &mirror);
            let rhs = w_at(a, &li, &mirror).scale(&q(2, 1));
            (format!("a={a}"), Ok(lhs == rhs))
        }),
    )
}

/// `(x1 - x2)^2 w_a(x1,x2) w_b(x1,x2) = (x1^a - x2^a)(x1^b - x2^b)
///  = x1^{a+b} + x2^{a+b} - x1^a x2^b - x1^b x2^a`.
pub fn single_edge(max: u32) -> IdentityCheck {
    check(
        "single edge",
        ab_grid(max).map(|(a, b)| {
            let lhs = &(&SparsePoly::linear(&[(1, 1), (2, -1)]).pow(2) * &w(a, 1, 2)) * &w(b, 1, 2);
            let mid = -cross(a, b, 1, 2);
            let rhs = &(&x(1).pow(a + b) + &x(2).pow(a + b))
                - &(&(&x(1).pow(a) * &x(2).pow(b)) + &(&x(1).pow(b) * &x(2).pow(a)));
            (format!("a={a} b={b}"), Ok(lhs == mid && mid == rhs))
        }),
    )
}

/// The two-edge decomposition with edge weights `p1, p2` and prefactor
/// `pre`: `(1, 1, 1)` for the 1:1 chain, `(2, 1, 2)` for 2:1, `(1, 2, 2)` for 1:2.
/// The lhs, the cleared form and the split must all agree.
fn chain_decomposition(p1: i64, p2: i64, pre: i64, a: u32, b: u32) -> Result<bool> {
    let side = |a: u32| &w(a, 1, 2).scale(&q(p1, 1)) + &w(a, 2, 3).scale(&q(p2, 1));
    let kernels = &side(a) * &side(b);
    let d21 = SparsePoly::linear(&[(2, 1), (1, -1)]);
    let d23 = SparsePoly::linear(&[(2, 1), (3, -1)]);
    let lhs = p(kernels.scale(&q(pre, 1)))
        / (RatFunExpr::quotient(RatFunExpr::int(p1), p(d21.clone())) + RatFunExpr::quotient(RatFunExpr::int(p2), p(d23.clone())));
    let r = &d21.scale(&q(1, p1)) + &d23.scale(&q(1, p2));
    let cleared = p(&(&d21 * &d23) * &kernels) / p(r.clone());
    let split = RatFunExpr::sum([
        p(cross(a, b, 1, 3).scale(&q(pre, 1))) / p(r),
        p((&(&d21 * &w(a, 1, 2)) * &w(b, 1, 2)).scale(&q(pre * p1, 1))),
        p((&(&d23 * &w(a, 2, 3)) * &w(b, 2, 3)).scale(&q(pre * p2, 1))),
    ]);
    Ok(holds(lhs.clone(), cleared)? && holds(lhs, split)?)
}

pub fn chain_equal(max: u32) -> IdentityCheck {
    check("chain 1:1", ab_grid(max).map(|(a, b)| (format!("a={a} b={b}"), chain_decomposition(1, 1, 1, a, b))))
}

pub fn chain_left_heavy(max: u32) -> IdentityCheck {
    check("chain 2:1", ab_grid(max).map(|(a, b)| (format!("a={a} b={b}"), chain_decomposition(2, 1, 2, a, b))))
}

pub fn chain_right_heavy(max: u32) -> IdentityCheck {
    check("chain 1:2", ab_grid(max).map(|(a, b)| (format!("a={a} b={b}"), chain_decomposition(1, 2, 2, a, b))))
}

fn three_edge_instance(a: u32, b: u32) -> Result<bool> {
    let sum3 = |a: u32| &(&w(a, 1, 2) + &w(a, 2, 3)) + &w(a, 3, 4);
    let kernels = &sum3(a) * &sum3(b);
    let lin = SparsePoly::linear;
    let r1 = lin(&[(2, 2), (1, -1), (3, -1)]);
    let r2 = lin(&[(3, 2), (2, -1), (4, -1)]);
    let recip = |e: SparsePoly| RatFunExpr::quotient(RatFunExpr::int(1), p(e));
    let lhs = -(p(kernels.clone())
        / RatFunExpr::product([
            recip(lin(&[(2, 1), (1, -1)])) + recip(lin(&[(2, 1), (3, -1)])),
            recip(lin(&[(3, 1), (2, -1)])) + recip(lin(&[(3, 1), (4, -1)])),
            p(lin(&[(2, 1), (3, -1)]).pow(2)),
        ]));
    let r12 = &r1 * &r2;
    let mid = p(&(&lin(&[(2, 1), (1, -1)]) * &lin(&[(3, 1), (4, -1)])) * &kernels) / p(r12.clone());

    let edge = |u: usize, v: usize| &(&lin(&[(u, 1), (v, -1)]) * &w(a, u, v)) * &w(b, u, v);
    let ww = |u: usize, v: usize, s: usize, t: usize| &w(a, u, v) * &w(b, s, t);
    let half_sum = ww(1, 2, 1, 2) + ww(3, 4, 3, 4) + ww(1, 2, 2, 3) + ww(2, 3, 1, 2) + ww(2, 3, 3, 4) + ww(3, 4, 2, 3);
    let tri = |i: usize, j: usize, l: usize, r: &SparsePoly| {
        let inner = &(&w(a, i, l) * &w3(b, i, j, l)) + &(&w3(a, i, j, l) * &w(b, i, l));
        let inner = &inner + &(&(r * &w3(a, i, j, l)) * &w3(b, i, j, l)).scale(&q(1, 2));
        &lin(&[(l, 1), (i, -1)]) * &inner
    };
    let rhs = RatFunExpr::sum([
        p(cross(a, b, 1, 4)) / p(r12),
        p(&edge(3, 1).scale(&q(2, 1)) + &edge(3, 4)) / p(r1.clone()),
        p(&edge(2, 4).scale(&q(2, 1)) + &edge(2, 1)) / p(r2.clone()),
        p(half_sum.scale(&q(1, 2))),
        p(tri(1, 2, 3, &r1)),
        p(tri(2, 3, 4, &r2).scale(&q(-1, 1))),
    ]);
    Ok(holds(lhs.clone(), mid)? && holds(lhs, rhs)?)
}

/// The three-edge chain decomposition, with `r1 = 2x2 - x1 - x3` and
/// `r2 = 2x3 - x2 - x4`.
pub fn three_edge_chain(max: u32) -> IdentityCheck {
    check("three-edge chain", ab_grid(max).map(|(a, b)| (format!("a={a} b={b}"), three_edge_instance(a, b))))
}

/// The integrand factor shared by every ordered partition, at level `N`.
fn level_factor(big_n: u32, k: u32, sigma: &OrderedPartition) -> RatFunExpr {
    let parts = sigma.parts();
    let l = parts.len();
    let mut f: Vec<RatFunExpr> = (0..=l).map(|j| RatFunExpr::var(j).pow(-(big_n as i32))).collect();
    for j in 1..l {
        let (dj, dn) = (i64::from(parts[j - 1]), i64::from(parts[j]));
        let mut lin = SparsePoly::zero();
        lin.add_term(Monomial::var(j), q(1, dj) + q(1, dn));
        lin.add_term(Monomial::var(j - 1), q(-1, dj));
        lin.add_term(Monomial::var(j + 1), q(-1, dn));
        f.push(p(&lin * &SparsePoly::monomial(Monomial::var(j), q(i64::from(k), 1))).recip());
    }
    for j in 1..=l {
        let dj = parts[j - 1];
        f.push(e_expr(k, dj, j - 1, j));
        if dj > 1 {
            f.push(t_expr(big_n, dj, j - 1, j).recip());
        }
    }
    RatFunExpr::product(f)
}

/// `x_0 ... x_l Π_j Π_{i=1}^{d_j - 1} (i x_{j-1} + (d_j - i) x_j) / d_j`.
pub fn level_shift(sigma: &OrderedPartition) -> SparsePoly {
    let parts = sigma.parts();
    let mut acc = (0..=parts.len()).fold(SparsePoly::one(), |acc, j| &acc * &x(j));
    for (j, &dj) in parts.iter().enumerate() {
        for i in 1..dj {
            let f = &x(j).scale(&q(i64::from(i), i64::from(dj))) + &x(j + 1).scale(&q(i64::from(dj - i), i64::from(dj)));
            acc = &acc * &f;
        }
    }
    acc
}

/// The level-`N` integrand equals the level-`N+1` integrand times
/// [`level_shift`], for every ordered partition of `d <= 3`.
pub fn level_shift_relation(n_range: std::ops::RangeInclusive<u32>, k_max: u32) -> IdentityCheck {
    let mut cases = Vec::new();
    for d in 1..=3 {
        for sigma in ordered_partitions(d) {
            for big_n in n_range.clone() {
                for k in 1..=k_max {
                    cases.push((sigma.clone(), big_n, k));
                }
            }
        }
    }
    check(
        "level shift",
        cases.into_iter().map(|(sigma, big_n, k)| {
            let lhs = level_factor(big_n, k, &sigma);
            let rhs = level_factor(big_n + 1, k, &sigma) * p(level_shift(&sigma));
            (format!("sigma={:?} N={big_n} k={k}", sigma.parts()), holds(lhs, rhs))
        }),
    )
}

/// Splittings of [`level_shift`] used to read off the recursion
/// coefficients.
pub fn partition_decompositions() -> IdentityCheck {
    let lin = SparsePoly::linear;
    let quad = |u: usize, v: usize| {
        &(&x(u).pow(2).scale(&q(2, 9)) + &(&x(u) * &x(v)).scale(&q(5, 9))) + &x(v).pow(2).scale(&q(2, 9))
    };
    let part = |v: &[u32]| OrderedPartition::new(v.to_vec()).expect("valid partition");
    let mut items: Vec<(String, SparsePoly, SparsePoly)> = Vec::new();

    items.push(("(2)".into(), level_shift(&part(&[2])), &(&x(0) * &x(1)) * &lin(&[(0, 1), (1, 1)]).scale(&q(1, 2))));
    let r = lin(&[(1, 2), (0, -1), (2, -1)]);
    let x02 = &x(0) * &x(2);
    items.push((
        "(1,1)".into(),
        level_shift(&part(&[1, 1])),
        &(&x02 * &lin(&[(0, 1), (2, 1)])).scale(&q(1, 2)) + &(&r * &x02).scale(&q(1, 2)),
    ));
    items.push(("(3)".into(), level_shift(&part(&[3])), &(&x(0) * &x(1)) * &quad(0, 1)));
    let r1 = &lin(&[(1, 1), (0, -1)]).scale(&q(1, 2)) + &lin(&[(1, 1), (2, -1)]);
    let tail = |c0: (i64, i64), c1: (i64, i64), c2: (i64, i64), a: usize, b: usize, cc: usize| {
        &(&x(a).scale(&q(c0.0, c0.1)) + &x(b).scale(&q(c1.0, c1.1))) + &x(cc).scale(&q(c2.0, c2.1))
    };
    items.push((
        "(2,1)".into(),
        level_shift(&part(&[2, 1])),
        &x02 * &(&quad(0, 2) + &(&r1 * &tail((4, 9), (1, 3), (2, 9), 0, 1, 2))),
    ));
    let r2 = &lin(&[(1, 1), (0, -1)]) + &lin(&[(1, 1), (2, -1)]).scale(&q(1, 2));
    items.push((
        "(1,2)".into(),
        level_shift(&part(&[1, 2])),
        &x02 * &(&quad(0, 2) + &(&r2 * &tail((2, 9), (1, 3), (4, 9), 0, 1, 2))),
    ));
    let r3 = lin(&[(1, 2), (0, -1), (2, -1)]);
    let r4 = lin(&[(2, 2), (1, -1), (3, -1)]);
    let inner = &(&(&quad(0, 3) + &(&r3 * &tail((2, 9), (1, 3), (4, 9), 0, 1, 3)))
        + &(&r4 * &tail((4, 9), (1, 3), (2, 9), 0, 2, 3)))
        + &(&r3 * &r4).scale(&q(1, 3));
    items.push(("(1,1,1)".into(), level_shift(&part(&[1, 1, 1])), &(&x(0) * &x(3)) * &inner));

    check("partition decompositions", items.into_iter().map(|(name, lhs, rhs)| (name, Ok(lhs == rhs))))
}

/// Every identity over the default ranges.
pub fn identity_suite() -> IdentityReport {
    IdentityReport {
        checks: vec![
            kernel_relation(8),
            doubled_edge_e(5),
            doubled_edge_w(8),
            single_edge(6),
            chain_equal(6),
            chain_left_heavy(6),
            chain_right_heavy(6),
            three_edge_chain(6),
            level_shift_relation(3..=5, 4),
            partition_decompositions(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_relation_small() {
        assert!(kernel_relation(8).passed());
        assert_eq!(&w(2, 1, 2) + &w(2, 2, 3), SparsePoly::linear(&[(1, 1), (2, 2), (3, 1)]));
    }

    #[test]
    fn chain_decompositions() {
        for (a, b) in [(0, 0), (1, 1), (2, 3), (4, 1)] {
            assert!(chain_decomposition(1, 1, 1, a, b).unwrap());
            assert!(chain_decomposition(2, 1, 2, a, b).unwrap());
            assert!(chain_decomposition(1, 2, 2, a, b).unwrap());
        }
    }

    #[test]
    fn single_edge_middle_term_sign() {
        // (x1^a - x2^a)(x2^b - x1^b) is minus (x1 - x2)^2 w_a w_b.
        let lhs = &(&SparsePoly::linear(&[(1, 1), (2, -1)]).pow(2) * &w(1, 1, 2)) * &w(1, 1, 2);
        assert_eq!(cross(1, 1, 1, 2), -lhs);
        assert!(single_edge(3).passed());
    }

    #[test]
    fn three_edge_chain() {
        for (a, b) in [(0, 2), (1, 1), (2, 2), (3, 1)] {
            assert!(three_edge_instance(a, b).unwrap(), "a={a} b={b}");
        }
    }

    #[test]
    fn recursion_splittings() {
        let check = partition_decompositions();
        assert!(check.passed(), "{:?}", check.failures);
    }
}

//! Combinatorial and polynomial ingredients shared by the engines.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{ExactRational, Monomial, RatFunExpr, SparsePoly};
use crate::error::{Error, Result};

/// A composition `(d_1, ..., d_l)` of `d` into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderedPartition {
    parts: Vec<u32>,
}

impl OrderedPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Range(format!("not an ordered partition: {parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// All `2^{d-1}` compositions of `d`: shorter ones first, and within a
/// length in descending lexicographic order, e.g. `(3), (2,1), (1,2), (1,1,1)`.
pub fn ordered_partitions(d: u32) -> Vec<OrderedPartition> {
    assert!(d >= 1, "ordered partitions need d >= 1");
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(1 << (d - 1));
    // Bit i of `cuts` set means a cut after position i+1.
    for cuts in 0u32..(1 << (d - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..d - 1 {
            if cuts & (1 << i) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(parts);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
    out.into_iter().map(|parts| OrderedPartition { parts }).collect()
}

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(m x_u + (n - m) x_v) / d`.
fn weighted_form(m: u32, n: u32, d: u32, u: usize, v: usize) -> SparsePoly {
    let mut p = SparsePoly::zero();
    let m = i64::from(m);
    let rest = i64::from(n) - m;
    if m != 0 {
        p.add_term(Monomial::var(u), rat(m, i64::from(d)));
    }
    if rest != 0 {
        p.add_term(Monomial::var(v), rat(rest, i64::from(d)));
    }
    p
}

/// The `kd + 1` linear factors of `e(k, d; x_u, x_v)`.
pub fn e_factors(k: u32, d: u32, u: usize, v: usize) -> Vec<SparsePoly> {
    (0..=k * d).map(|m| weighted_form(m, k * d, d, u, v)).collect()
}

/// `e(k, d; u, v) = Π_{m=0}^{kd} (m u + (kd - m) v) / d`, expanded.
pub fn e_poly(k: u32, d: u32, u: usize, v: usize) -> SparsePoly {
    e_factors(k, d, u, v).iter().fold(SparsePoly::one(), |acc, f| &acc * f)
}

/// `e(k, d; x_u, x_v)` as an unexpanded product.
pub fn e_expr(k: u32, d: u32, u: usize, v: usize) -> RatFunExpr {
    RatFunExpr::product(e_factors(k, d, u, v).into_iter().map(RatFunExpr::Poly))
}

/// The `d - 1` linear forms whose `N`-th powers make up `t(N, d; x_u, x_v)`.
pub fn t_factors(d: u32, u: usize, v: usize) -> Vec<SparsePoly> {
    (1..d).map(|m| weighted_form(m, d, d, u, v)).collect()
}

/// `t(N, d; u, v) = Π_{m=1}^{d-1} ((m u + (d - m) v) / d)^N`, expanded.
pub fn t_poly(n: u32, d: u32, u: usize, v: usize) -> SparsePoly {
    t_factors(d, u, v).iter().fold(SparsePoly::one(), |acc, f| &acc * &f.pow(n))
}

/// `t(N, d; x_u, x_v)` as a product of powers of linear forms.
pub fn t_expr(n: u32, d: u32, u: usize, v: usize) -> RatFunExpr {
    RatFunExpr::product(t_factors(d, u, v).into_iter().map(|f| RatFunExpr::Poly(f).pow(n as i32)))
}

/// `w_a(u, v) = Σ_{p+q=a-1} u^p v^q`; zero for `a = 0`.
pub fn w_kernel(a: u32, u: usize, v: usize) -> SparsePoly {
    let mut p = SparsePoly::zero();
    for i in 0..a {
        let m = Monomial::ONE.with_exp(u, i as u16).mul(&Monomial::ONE.with_exp(v, (a - 1 - i) as u16));
        p.add_term(m, ExactRational::one());
    }
    p
}

/// `w_a(u, v, w) = Σ_{p+q+r=a-2} u^p v^q w^r`; zero for `a <= 1`.
pub fn w_kernel3(a: u32, u: usize, v: usize, w: usize) -> SparsePoly {
    let mut p = SparsePoly::zero();
    if a < 2 {
        return p;
    }
    let total = a - 2;
    for i in 0..=total {
        for j in 0..=total - i {
            let m = Monomial::ONE
                .with_exp(u, i as u16)
                .mul(&Monomial::ONE.with_exp(v, j as u16))
                .mul(&Monomial::ONE.with_exp(w, (total - i - j) as u16));
            p.add_term(m, ExactRational::one());
        }
    }
    p
}

/// Numeric `w_a(u, v)`.
pub fn w_kernel_at(a: u32, u: &ExactRational, v: &ExactRational) -> ExactRational {
    let mut total = ExactRational::zero();
    let mut up = ExactRational::one();
    for i in 0..a {
        total += &up * num_traits::pow(v.clone(), (a - 1 - i) as usize);
        up *= u;
    }
    total
}

/// Torus characters `λ_1, ..., λ_N`, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterAssignment {
    values: Vec<ExactRational>,
}

impl CharacterAssignment {
    pub fn new(values: Vec<ExactRational>) -> Result<Self> {
        for i in 0..values.len() {
            for j in 0..i {
                if values[i] == values[j] {
                    return Err(Error::DegenerateCharacters(format!("λ{} = λ{}", j + 1, i + 1)));
                }
            }
        }
        Ok(Self { values })
    }

    /// `λ_j` = the `(j + seed)`-th prime, so seed 0 gives `2, 3, 5, 7, ...`.
    pub fn primes(n: usize, seed: u64) -> Self {
        let values = first_primes(n + seed as usize)
            .into_iter()
            .skip(seed as usize)
            .map(|p| ExactRational::from(BigInt::from(p)))
            .collect();
        Self { values }
    }

    /// `λ_j + attempt / (100 + j)` with 1-based `j`.
    pub fn perturbed(&self, attempt: u32) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, l)| l + rat(i64::from(attempt), 101 + j as i64))
            .collect();
        Self::new(values).unwrap_or_else(|_| self.perturbed(attempt + 1000))
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> &ExactRational {
        &self.values[i]
    }
}

fn first_primes(n: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(n);
    let mut c = 2u64;
    while primes.len() < n {
        if primes.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            primes.push(c);
        }
        c += 1;
    }
    primes
}

/// `E(k, d; i, j) = Π_{m=0}^{kd} (m λ_i + (kd - m) λ_j) / d`. Indices are
/// 0-based.
pub fn equivariant_e(k: u32, d: u32, i: usize, j: usize, lambda: &CharacterAssignment) -> ExactRational {
    let (li, lj) = (lambda.get(i), lambda.get(j));
    let kd = k * d;
    let dd = ExactRational::from(BigInt::from(d));
    (0..=kd).fold(ExactRational::one(), |acc, m| {
        let f = (li * ExactRational::from(BigInt::from(m)) + lj * ExactRational::from(BigInt::from(kd - m))) / &dd;
        acc * f
    })
}

/// `V(N; i) = Π_{j != i} (λ_j - λ_i)`.
pub fn equivariant_v(n: usize, i: usize, lambda: &CharacterAssignment) -> ExactRational {
    let li = lambda.get(i);
    (0..n).filter(|&j| j != i).fold(ExactRational::one(), |acc, j| acc * (lambda.get(j) - li))
}

/// `T(N, d; i, j) = Π_{l=1}^{N} Π_{m=1}^{d-1} ((m λ_i + (d - m) λ_j)/d - λ_l)`.
pub fn equivariant_t(n: usize, d: u32, i: usize, j: usize, lambda: &CharacterAssignment) -> Result<ExactRational> {
    let (li, lj) = (lambda.get(i), lambda.get(j));
    let dd = ExactRational::from(BigInt::from(d));
    let mut acc = ExactRational::one();
    for m in 1..d {
        let mid = (li * ExactRational::from(BigInt::from(m)) + lj * ExactRational::from(BigInt::from(d - m))) / &dd;
        for l in 0..n {
            let f = &mid - lambda.get(l);
            if f.is_zero() {
                return Err(Error::DegenerateCharacters(format!(
                    "T({n},{d};{},{}) has a vanishing factor at λ{}",
                    i + 1,
                    j + 1,
                    l + 1
                )));
            }
            acc *= f;
        }
    }
    Ok(acc)
}

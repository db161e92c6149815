//! The generalized mirror transformation: two-point invariants of degree
//! `d <= 3` as polynomials in the virtual structure constants.
//!
//! Throughout, `δ = k - N`. Sums whose upper limit falls below the lower limit
//! are empty, and constants outside their window are zero, so for `N >= k + 2`
//! every correction drops out.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ExactRational;
use crate::error::{Error, Result};
use crate::localization::{gw_residue, GwRequest};
use crate::vsc::{vsc_recursive, window_top, VscKey, VscTable, MAX_DEGREE};

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// `A_j`: `j + 1` on `[0, δ]`, `1 + 2δ - j` on `[δ, 2δ]`.
pub fn a_coeff(j: i64, k: u32, big_n: u32) -> Result<i64> {
    let delta = i64::from(k) - i64::from(big_n);
    if delta < 0 || j < 0 || j > 2 * delta {
        return Err(Error::Range(format!("A_{j} needs 0 <= j <= 2(k - N) = {}", 2 * delta)));
    }
    Ok(if j <= delta { j + 1 } else { 1 + 2 * delta - j })
}

/// Table lookups at fixed `(N, k)`.
struct Lookup<'a> {
    table: &'a mut VscTable,
    big_n: u32,
    k: u32,
}

impl Lookup<'_> {
    fn l(&mut self, d: u32, n: i64) -> Result<ExactRational> {
        vsc_recursive(VscKey::new(self.big_n, self.k, d, n), self.table)
    }

    /// `Σ_{j=lo}^{hi} f(j)`, empty when `hi < lo`.
    fn sum(&mut self, lo: i64, hi: i64, mut f: impl FnMut(&mut Self, i64) -> Result<ExactRational>) -> Result<ExactRational> {
        let mut s = ExactRational::zero();
        for j in lo..=hi {
            s += f(self, j)?;
        }
        Ok(s)
    }
}

fn c11_with(lk: &mut Lookup<'_>, n: i64) -> Result<ExactRational> {
    let delta = i64::from(lk.k) - i64::from(lk.big_n);
    let l1_shift = lk.l(1, 1 + delta)?;
    // One half of the printed expression, with the running index `m`
    // entering as `base - m`.
    let half = |lk: &mut Lookup<'_>, base: i64, partner: i64| -> Result<ExactRational> {
        lk.sum(0, delta - 1, |lk, j| {
            let prod = lk.sum(0, j, |lk, m| Ok(lk.l(1, base - m)? * lk.l(1, partner + j - m)?))?;
            let full = lk.sum(0, 2 * delta, |lk, m| lk.l(1, base - m))?;
            let inner = lk.sum(j + 1, 2 * delta - j - 1, |lk, m| lk.l(1, base - m))?;
            Ok(prod - lk.l(1, delta + 2 + j)? * full + &l1_shift * inner)
        })
    };
    let first = half(lk, n, n - 2 * delta)?;
    let second = half(lk, 1 + 3 * delta, 1 + delta)?;
    Ok(first - second)
}

/// `C_{1,1}^{N,k,3}(n)`, from the `d = 1` constants.
pub fn c11(big_n: u32, k: u32, n: i64, table: &mut VscTable) -> Result<ExactRational> {
    c11_with(&mut Lookup { table, big_n, k }, n)
}

/// Right-hand side of the transformation: the predicted
/// `(1/k) <O_{h^{N-2-n}} O_{h^{n-1+(N-k)d}}>_{0,d}`.
pub fn mirror_transform(key: VscKey, table: &mut VscTable) -> Result<ExactRational> {
    let VscKey { big_n, k, d, n } = key;
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(d));
    }
    GwRequest::from_n(big_n, k, d, n)?;
    let delta = i64::from(k) - i64::from(big_n);
    let lk = &mut Lookup { table, big_n, k };
    let l1_shift = lk.l(1, 1 + delta)?;
    let value = match d {
        1 => lk.l(1, n)? - l1_shift,
        2 => {
            let head = q(1, 2) * (lk.l(2, n)? - lk.l(2, 1 + 2 * delta)?);
            let tail = lk.sum(0, delta, |lk, j| Ok(lk.l(1, n - j)? - lk.l(1, 1 + 2 * delta - j)?))?;
            head - &l1_shift * tail
        }
        _ => {
            let top = 1 + 3 * delta;
            let head = q(1, 3) * (lk.l(3, n)? - lk.l(3, top)?);
            let conic = lk.sum(0, delta, |lk, j| Ok(lk.l(2, n - j)? - lk.l(2, top - j)?))?;
            let c = c11_with(lk, n)?;
            let line_diff = |lk: &mut Lookup<'_>, j: i64| Ok(lk.l(1, n - j)? - lk.l(1, top - j)?);
            let lines = lk.sum(0, 2 * delta, line_diff)?;
            let weighted = lk.sum(0, 2 * delta, |lk, j| {
                Ok(ExactRational::from(BigInt::from(a_coeff(j, k, big_n)?)) * line_diff(lk, j)?)
            })?;
            let l2_shift = lk.l(2, 1 + 2 * delta)?;
            head - &l1_shift * (conic + c) - q(1, 2) * l2_shift * lines
                + q(3, 2) * &l1_shift * &l1_shift * weighted
        }
    };
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformReport {
    pub key: VscKey,
    /// `(1/k)` times the two-point invariant, from residues.
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub lhs: ExactRational,
    /// The transformation applied to the virtual structure constants.
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub rhs: ExactRational,
    pub equal: bool,
}

/// Values of `n` with both insertions effective and inside the window.
pub fn valid_ns(big_n: u32, k: u32, d: u32) -> Vec<i64> {
    (0..=window_top(big_n, k, d)).filter(|&n| GwRequest::from_n(big_n, k, d, n).is_ok()).collect()
}

/// Compares both sides for every valid `n`. Residues run in parallel.
pub fn verify_transform(big_n: u32, k: u32, d: u32) -> Result<Vec<TransformReport>> {
    let ns = valid_ns(big_n, k, d);
    verify_transform_at(big_n, k, d, &ns)
}

pub fn verify_transform_at(big_n: u32, k: u32, d: u32, ns: &[i64]) -> Result<Vec<TransformReport>> {
    let mut table = VscTable::new();
    let rhs: Vec<ExactRational> = ns
        .iter()
        .map(|&n| mirror_transform(VscKey::new(big_n, k, d, n), &mut table))
        .collect::<Result<_>>()?;
    let kq = ExactRational::from(BigInt::from(k));
    let lhs: Vec<ExactRational> = ns
        .par_iter()
        .map(|&n| Ok(gw_residue(&GwRequest::from_n(big_n, k, d, n)?)? / &kq))
        .collect::<Result<_>>()?;
    Ok(ns
        .iter()
        .zip(lhs.into_iter().zip(rhs))
        .map(|(&n, (lhs, rhs))| TransformReport { key: VscKey::new(big_n, k, d, n), equal: lhs == rhs, lhs, rhs })
        .collect())
}

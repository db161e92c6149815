//! Virtual structure constants `L̃_n^{N,k,d}` for `d <= 3`, by recursion in
//! `N` and by iterated residues.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{iterated_residue, ExactRational, Monomial, RatFunExpr, ResidueOrder, SparsePoly};
use crate::blocks::{e_expr, ordered_partitions, t_expr, OrderedPartition};
use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VscKey {
    /// `N`: the hypersurface lives in `CP^{N-1}`.
    #[serde(rename = "N")]
    pub big_n: u32,
    pub k: u32,
    pub d: u32,
    pub n: i64,
}

impl VscKey {
    pub fn new(big_n: u32, k: u32, d: u32, n: i64) -> Self {
        Self { big_n, k, d, n }
    }

    /// Largest `n` with a possibly nonzero value, `N - 1 - (N - k) d`.
    pub fn window_top(&self) -> i64 {
        window_top(self.big_n, self.k, self.d)
    }

    pub fn in_window(&self) -> bool {
        self.n >= 0 && self.n <= self.window_top()
    }

    /// The key with `n` reflected through the window.
    pub fn reflected(&self) -> Self {
        Self { n: self.window_top() - self.n, ..*self }
    }
}

impl fmt::Display for VscKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} k={} d={} n={}", self.big_n, self.k, self.d, self.n)
    }
}

pub fn window_top(big_n: u32, k: u32, d: u32) -> i64 {
    i64::from(big_n) - 1 - (i64::from(big_n) - i64::from(k)) * i64::from(d)
}

/// Which pipelines produced an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "recursion")]
    Recursion,
    #[serde(rename = "residue")]
    Residue,
    #[serde(rename = "recursion+residue")]
    Both,
}

impl Provenance {
    fn merge(self, other: Provenance) -> Provenance {
        if self == other {
            self
        } else {
            Provenance::Both
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Recursion => "recursion",
            Provenance::Residue => "residue",
            Provenance::Both => "recursion+residue",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VscEntry {
    pub value: ExactRational,
    pub provenance: Provenance,
}

/// Computed constants. Stored values never change; recording a different
/// value for an existing key is an error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VscTable {
    entries: BTreeMap<VscKey, VscEntry>,
    /// Out-of-window and intermediate values from the recursion.
    memo: HashMap<VscKey, ExactRational>,
    rows: HashMap<u32, Vec<ExactRational>>,
}

impl VscTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &VscKey) -> Option<&VscEntry> {
        self.entries.get(key)
    }

    pub fn value(&self, key: &VscKey) -> Option<&ExactRational> {
        self.entries.get(key).map(|e| &e.value)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&VscKey, &VscEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Values of one `(N, k, d)` row, in increasing `n`.
    pub fn row(&self, big_n: u32, k: u32, d: u32) -> Vec<(i64, &ExactRational)> {
        let lo = VscKey::new(big_n, k, d, i64::MIN);
        let hi = VscKey::new(big_n, k, d, i64::MAX);
        self.entries.range(lo..=hi).map(|(key, e)| (key.n, &e.value)).collect()
    }

    pub fn record(&mut self, key: VscKey, value: ExactRational, provenance: Provenance) -> Result<()> {
        match self.entries.get_mut(&key) {
            Some(existing) if existing.value != value => Err(Error::Range(format!(
                "conflicting values for {key}: {} vs {}",
                existing.value, value
            ))),
            Some(existing) => {
                existing.provenance = existing.provenance.merge(provenance);
                Ok(())
            }
            None => {
                self.entries.insert(key, VscEntry { value, provenance });
                Ok(())
            }
        }
    }

    /// Merges another table; conflicting values are an error.
    pub fn merge(&mut self, other: VscTable) -> Result<()> {
        for (key, e) in other.entries {
            self.record(key, e.value, e.provenance)?;
        }
        self.memo.extend(other.memo);
        self.rows.extend(other.rows);
        Ok(())
    }

    fn initial_row(&mut self, k: u32) -> &[ExactRational] {
        self.rows.entry(k).or_insert_with(|| vsc_initial_row(k))
    }
}

/// Coefficients of `k Π_{j=1}^{k-1} (j w + (k - j))` in increasing powers of
/// `w`: the `d = 1` constants, independent of `N`.
pub fn vsc_initial_row(k: u32) -> Vec<ExactRational> {
    assert!(k >= 1);
    let mut coeffs = vec![BigInt::from(k)];
    for j in 1..k {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c * BigInt::from(k - j);
            next[i + 1] += c * BigInt::from(j);
        }
        coeffs = next;
    }
    coeffs.into_iter().map(ExactRational::from).collect()
}

fn check_degree(d: u32) -> Result<()> {
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(d));
    }
    Ok(())
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// `L̃` by the recursion in `N`, memoized in `table`. Out-of-window keys
/// give 0. The recursion runs upward in `N` until the window is empty.
pub fn vsc_recursive(key: VscKey, table: &mut VscTable) -> Result<ExactRational> {
    check_degree(key.d)?;
    let value = recursive_value(key, table);
    if key.in_window() {
        table.record(key, value.clone(), Provenance::Recursion)?;
    }
    Ok(value)
}

fn recursive_value(key: VscKey, table: &mut VscTable) -> ExactRational {
    if !key.in_window() {
        return ExactRational::zero();
    }
    if key.d == 1 {
        return table.initial_row(key.k)[key.n as usize].clone();
    }
    if let Some(v) = table.memo.get(&key) {
        return v.clone();
    }
    let VscKey { big_n, k, d, n } = key;
    let up = big_n + 1;
    let s = i64::from(big_n) - i64::from(k);
    let mut at = |dd: u32, m: i64| recursive_value(VscKey::new(up, k, dd, m), table);
    let value = if d == 2 {
        // L/2 = 1/2 L'_{n-1}/2 + 1/2 L'_n/2 + 1/2 L1_n L1_{n+s}
        let over = (at(2, n - 1) + at(2, n)) * q(1, 4) + q(1, 2) * at(1, n) * at(1, n + s);
        over * q(2, 1)
    } else {
        let mut l1 = |m: i64| at(1, m);
        let (a, b, c, e, f) = (l1(n - 1), l1(n), l1(n + s), l1(n + 2 * s), l1(n + 1 + 2 * s));
        let mut l2 = |m: i64| at(2, m) / q(2, 1);
        let (g, h, i, j) = (l2(n - 1), l2(n), l2(n - 1 + s), l2(n + s));
        let mut l3 = |m: i64| at(3, m) / q(3, 1);
        let mut over = q(2, 9) * l3(n - 2) + q(5, 9) * l3(n - 1) + q(2, 9) * l3(n);
        over += q(4, 9) * &g * &e;
        over += q(1, 3) * &h * &e;
        over += q(2, 9) * &h * &f;
        over += q(2, 9) * &a * &i;
        over += q(1, 3) * &b * &i;
        over += q(4, 9) * &b * &j;
        over += q(1, 3) * &b * &c * &e;
        over * q(3, 1)
    };
    table.memo.insert(key, value.clone());
    value
}

/// The integrand of the residue representation for one ordered partition,
/// in variables `x_0, ..., x_l`, without the `1 / (k Π d_j)` prefactor.
pub fn vsc_integrand(key: VscKey, sigma: &OrderedPartition) -> RatFunExpr {
    let VscKey { big_n, k, d, n } = key;
    let parts = sigma.parts();
    let l = parts.len();
    let big = i64::from(big_n);
    let mut factors = Vec::new();

    let mut exps = vec![-big; l + 1];
    exps[0] += big - 2 - n;
    exps[l] += n - 1 + (big - i64::from(k)) * i64::from(d);
    for (j, &e) in exps.iter().enumerate() {
        factors.push(RatFunExpr::var(j).pow(e as i32));
    }
    for j in 1..l {
        let (dj, dn) = (i64::from(parts[j - 1]), i64::from(parts[j]));
        // (x_j - x_{j-1})/d_j + (x_j - x_{j+1})/d_{j+1}
        let mut lin = SparsePoly::zero();
        lin.add_term(Monomial::var(j), q(1, dj) + q(1, dn));
        lin.add_term(Monomial::var(j - 1), q(-1, dj));
        lin.add_term(Monomial::var(j + 1), q(-1, dn));
        let edge = RatFunExpr::product([RatFunExpr::constant(q(i64::from(k), 1)), RatFunExpr::var(j), lin.into()]);
        factors.push(edge.recip());
    }
    for j in 1..=l {
        let dj = parts[j - 1];
        factors.push(e_expr(k, dj, j - 1, j));
        if dj > 1 {
            factors.push(t_expr(big_n, dj, j - 1, j).recip());
        }
    }
    RatFunExpr::product(factors)
}

/// `L̃` by iterated residues over all ordered partitions of `d`, `x_0`
/// innermost. Out-of-window keys give 0 without evaluation.
pub fn vsc_residue(key: VscKey) -> Result<ExactRational> {
    check_degree(key.d)?;
    if !key.in_window() {
        return Ok(ExactRational::zero());
    }
    let mut total = ExactRational::zero();
    for sigma in ordered_partitions(key.d) {
        let expr = vsc_integrand(key, &sigma);
        let order = ResidueOrder::ascending(sigma.len() + 1);
        let r = iterated_residue(&expr, &order)?;
        let weight: u32 = sigma.parts().iter().product();
        total += r / ExactRational::from(BigInt::from(key.k * weight));
    }
    Ok(total * ExactRational::from(BigInt::from(key.d)))
}

/// Every in-window key for `d <= d_max` at this `N`.
pub fn keys_for(big_n: u32, k: u32, d_max: u32) -> Vec<VscKey> {
    (1..=d_max)
        .flat_map(|d| (0..=window_top(big_n, k, d)).map(move |n| VscKey::new(big_n, k, d, n)))
        .collect()
}

/// Fills all in-window entries at `N` for `d <= d_max` by the recursion;
/// with `cross_check`, also by residues (in parallel), failing on any
/// disagreement.
pub fn vsc_table(big_n: u32, k: u32, d_max: u32, cross_check: bool) -> Result<VscTable> {
    check_degree(d_max)?;
    let mut table = VscTable::new();
    let keys = keys_for(big_n, k, d_max);
    for &key in &keys {
        vsc_recursive(key, &mut table)?;
    }
    if cross_check {
        let residues: Vec<(VscKey, ExactRational)> =
            keys.par_iter().map(|&key| vsc_residue(key).map(|v| (key, v))).collect::<Result<_>>()?;
        for (key, v) in residues {
            table.record(key, v, Provenance::Residue)?;
        }
    }
    Ok(table)
}

/// One comparison of the two pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineComparison {
    pub key: VscKey,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub recursion: ExactRational,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub residue: ExactRational,
}

impl PipelineComparison {
    pub fn agrees(&self) -> bool {
        self.recursion == self.residue
    }
}

/// The `(N, k)` pairs with `1 <= k <= k_max`, `3 <= N <= 2k + 2`.
pub fn comparison_grid(k_max: u32) -> Vec<(u32, u32)> {
    (1..=k_max).flat_map(|k| (3..=2 * k + 2).map(move |n| (n, k))).collect()
}

/// Recursion against residues for every in-window key over the grid.
pub fn compare_pipelines(grid: &[(u32, u32)], d_max: u32) -> Result<Vec<PipelineComparison>> {
    check_degree(d_max)?;
    let mut recursion = VscTable::new();
    let mut keys = Vec::new();
    for &(big_n, k) in grid {
        for key in keys_for(big_n, k, d_max) {
            vsc_recursive(key, &mut recursion)?;
            keys.push(key);
        }
    }
    // Largest integrands first so the pool stays busy at the end.
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse((keys[i].d, keys[i].k)));
    let mut residues: Vec<(usize, ExactRational)> =
        order.par_iter().map(|&i| vsc_residue(keys[i]).map(|v| (i, v))).collect::<Result<_>>()?;
    residues.sort_by_key(|(i, _)| *i);
    Ok(keys
        .into_iter()
        .zip(residues)
        .map(|(key, (_, residue))| PipelineComparison {
            key,
            recursion: recursion.value(&key).cloned().unwrap_or_else(ExactRational::zero),
            residue,
        })
        .collect())
}

/// `L̃ / d`, the normalization used on the right-hand side of the recursion.
pub fn over_degree(value: &ExactRational, d: u32) -> ExactRational {
    value / ExactRational::from(BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn ints(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn initial_rows() {
        assert_eq!(vsc_initial_row(1), ints(&[1]));
        assert_eq!(vsc_initial_row(3), ints(&[6, 15, 6]));
        assert_eq!(vsc_initial_row(5), ints(&[120, 770, 1345, 770, 120]));
    }

    #[test]
    fn conic_spot_value() {
        let key = VscKey::new(3, 2, 2, 0);
        let mut t = VscTable::new();
        assert_eq!(vsc_recursive(key, &mut t).unwrap(), int(4));
        assert_eq!(vsc_residue(key).unwrap(), int(4));
    }

    #[test]
    fn window_convention() {
        let mut t = VscTable::new();
        assert_eq!(vsc_recursive(VscKey::new(5, 5, 2, -1), &mut t).unwrap(), int(0));
        for n in 0..5 {
            assert_eq!(vsc_recursive(VscKey::new(10, 2, 2, n), &mut t).unwrap(), int(0));
        }
        assert!(matches!(vsc_recursive(VscKey::new(5, 5, 4, 0), &mut t), Err(Error::UnsupportedDegree(4))));
    }

    #[test]
    fn linear_residues_match_initial_row() {
        assert_eq!(vsc_residue(VscKey::new(5, 5, 1, 2)).unwrap(), int(1345));
        assert_eq!(vsc_residue(VscKey::new(6, 3, 1, 1)).unwrap(), int(15));
    }

    #[test]
    fn tables() {
        let t = vsc_table(5, 5, 1, true).unwrap();
        let row: Vec<ExactRational> = t.row(5, 5, 1).into_iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(row, ints(&[120, 770, 1345, 770, 120]));
        assert!(t.entries().all(|(_, e)| e.provenance == Provenance::Both));
        let t = vsc_table(7, 2, 2, false).unwrap();
        assert!(t.row(7, 2, 2).is_empty());
    }

    #[test]
    fn entries_are_immutable() {
        let mut t = VscTable::new();
        let key = VscKey::new(5, 5, 1, 0);
        t.record(key, int(120), Provenance::Recursion).unwrap();
        assert!(t.record(key, int(121), Provenance::Residue).is_err());
        t.record(key, int(120), Provenance::Residue).unwrap();
        assert_eq!(t.get(&key).unwrap().provenance, Provenance::Both);
    }
}

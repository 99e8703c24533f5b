//! Betti tables and Hilbert series.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

/// Graded Betti numbers β_{i,j}: rank of the i-th free module in internal degree j.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

#[derive(Serialize)]
struct BettiEntry {
    i: usize,
    j: i64,
    rank: usize,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<BettiEntry> = self.entries.iter().map(|(&(i, j), &rank)| BettiEntry { i, j, rank }).collect();
        v.serialize(s)
    }
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `count` to β_{i,j}.
    pub fn add(&mut self, i: usize, j: i64, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total rank of the i-th module.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == i).map(|(_, v)| v).sum()
    }

    /// Internal degrees with multiplicity at step i, ascending.
    pub fn twists(&self, i: usize) -> Vec<i64> {
        let mut out = Vec::new();
        for (&(a, j), &r) in &self.entries {
            if a == i {
                out.extend(std::iter::repeat(j).take(r));
            }
        }
        out
    }

    /// Projective dimension: last nonzero step (0 for the zero module as well).
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// max_i (largest twist at step i − i); `None` for the zero module.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    /// Table of the module twisted by `s` (degrees decrease by s).
    pub fn shifted(&self, s: i64) -> BettiTable {
        BettiTable { entries: self.entries.iter().map(|(&(i, j), &r)| ((i, j - s), r)).collect() }
    }

    /// Hilbert series numerator of the module this table resolves.
    pub fn hilbert_numerator(&self) -> BTreeMap<i64, i64> {
        let mut num = BTreeMap::new();
        for (&(i, j), &r) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *num.entry(j).or_insert(0) += sign * r as i64;
        }
        num.retain(|_, v| *v != 0);
        num
    }

    /// Macaulay2-style layout: columns are homological steps, rows are j − i.
    pub fn to_text(&self) -> String {
        if self.entries.is_empty() {
            return "0\n".to_string();
        }
        let pd = self.projective_dimension();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            let (lo, hi) = (r[0], *r.last().unwrap());
            (lo..=hi).collect()
        };
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .chain((0..=pd).map(|i| self.total(i).to_string().len()))
            .max()
            .unwrap_or(1)
            + 1;
        let label = rows.iter().map(|r| format!("{r}:").len()).max().unwrap_or(2).max(6);
        let mut out = String::new();
        let _ = write!(out, "{:>label$}", "");
        for i in 0..=pd {
            let _ = write!(out, "{i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}", "total:");
        for i in 0..=pd {
            let _ = write!(out, "{:>width$}", self.total(i));
        }
        out.push('\n');
        for r in rows {
            let _ = write!(out, "{:>label$}", format!("{r}:"));
            for i in 0..=pd {
                let v = self.get(i, r + i as i64);
                if v == 0 {
                    let _ = write!(out, "{:>width$}", ".");
                } else {
                    let _ = write!(out, "{v:>width$}");
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Hilbert series `numerator(t) / (1 − t)^denominator_exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Laurent polynomial: degree → coefficient (zero coefficients omitted).
    pub numerator: BTreeMap<i64, i64>,
    pub denominator_exponent: usize,
}

impl HilbertSeries {
    pub fn new(numerator: BTreeMap<i64, i64>, denominator_exponent: usize) -> Self {
        let mut numerator = numerator;
        numerator.retain(|_, v| *v != 0);
        HilbertSeries { numerator, denominator_exponent }
    }

    /// Dimension of the degree-d component.
    pub fn coefficient(&self, d: i64) -> i64 {
        let n = self.denominator_exponent as i64;
        // [t^k] (1−t)^{-n} = C(k+n−1, n−1)
        self.numerator
            .iter()
            .filter(|(&e, _)| e <= d)
            .map(|(&e, &c)| c * binomial(d - e + n - 1, n - 1))
            .sum()
    }

    /// Series of the twisted module M(s).
    pub fn shifted(&self, s: i64) -> HilbertSeries {
        HilbertSeries::new(self.numerator.iter().map(|(&e, &c)| (e - s, c)).collect(), self.denominator_exponent)
    }

    /// Krull dimension: order of the pole at t = 1 (0 for the zero module).
    pub fn dimension(&self) -> usize {
        let mut coeffs: BTreeMap<i64, i64> = self.numerator.clone();
        let mut k = 0;
        while k < self.denominator_exponent {
            if coeffs.is_empty() {
                return 0;
            }
            let at_one: i64 = coeffs.values().sum();
            if at_one != 0 {
                break;
            }
            coeffs = divide_by_one_minus_t(&coeffs);
            k += 1;
        }
        if coeffs.is_empty() {
            0
        } else {
            self.denominator_exponent - k
        }
    }

    /// Multiplicity-normalized reduced form `(h(t), d)` with h(1) ≠ 0.
    pub fn reduced(&self) -> (BTreeMap<i64, i64>, usize) {
        let mut coeffs = self.numerator.clone();
        let mut n = self.denominator_exponent;
        while n > 0 && !coeffs.is_empty() && coeffs.values().sum::<i64>() == 0 {
            coeffs = divide_by_one_minus_t(&coeffs);
            n -= 1;
        }
        (coeffs, n)
    }
}

fn divide_by_one_minus_t(p: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    // p = (1−t) q; q_k = Σ_{e ≤ k} p_e
    let mut q = BTreeMap::new();
    let mut acc = 0;
    let (lo, hi) = match (p.keys().next(), p.keys().next_back()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return q,
    };
    for k in lo..hi {
        acc += p.get(&k).copied().unwrap_or(0);
        if acc != 0 {
            q.insert(k, acc);
        }
    }
    q
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return if k == -1 && n == -1 { 1 } else { 0 };
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_table() {
        let mut b = BettiTable::new();
        b.add(0, 0, 1);
        b.add(1, 1, 2);
        b.add(2, 2, 1);
        assert_eq!(b.projective_dimension(), 2);
        assert_eq!(b.regularity(), Some(0));
        let hs = HilbertSeries::new(b.hilbert_numerator(), 2);
        assert_eq!(hs.coefficient(0), 1);
        assert_eq!(hs.coefficient(3), 0);
        assert_eq!(hs.dimension(), 0);
        assert!(b.to_text().contains("total:"));
    }

    #[test]
    fn polynomial_ring_series() {
        let mut b = BettiTable::new();
        b.add(0, 0, 1);
        let hs = HilbertSeries::new(b.hilbert_numerator(), 3);
        assert_eq!(hs.coefficient(2), 6);
        assert_eq!(hs.dimension(), 3);
        let one_var = HilbertSeries::new([(0, 1), (1, -1)].into_iter().collect(), 1);
        assert_eq!(one_var.coefficient(0), 1);
        assert_eq!(one_var.coefficient(4), 0);
    }
}

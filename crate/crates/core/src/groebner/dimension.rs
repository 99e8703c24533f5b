//! Krull dimension of monomial quotients.

use serde::Serialize;

use crate::poly::Monomial;

/// Dimension and height of `R/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub krull_dimension: usize,
    pub height: usize,
}

/// Krull dimension of `k[x_0..x_{n-1}]/(monomials)`.
///
/// Equals n minus the minimum size of a variable set meeting every support
/// (a minimal prime of the radical), found by branch and bound.
pub fn monomial_dimension(monomials: &[Monomial], n: usize) -> usize {
    let mut supports: Vec<u32> = monomials.iter().map(Monomial::support_mask).collect();
    if supports.contains(&0) {
        // the unit ideal: empty quotient, report dimension 0 by convention
        return 0;
    }
    supports.sort_unstable_by_key(|s| s.count_ones());
    supports.dedup();
    // keep only inclusion-minimal supports
    let mut minimal: Vec<u32> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|&m| m & s == m) {
            minimal.push(s);
        }
    }
    let mut best = n;
    cover(&minimal, 0, 0, &mut best);
    n - best
}

fn cover(sets: &[u32], chosen: u32, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // first set not yet hit
    let Some(&s) = sets.iter().find(|&&s| s & chosen == 0) else {
        *best = size;
        return;
    };
    if size + 1 >= *best {
        return;
    }
    let mut bits = s;
    while bits != 0 {
        let b = bits.trailing_zeros();
        bits &= bits - 1;
        cover(sets, chosen | (1 << b), size + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(monos: &[Monomial], n: usize) -> usize {
        // largest variable set containing no support
        let supports: Vec<u32> = monos.iter().map(Monomial::support_mask).collect();
        if supports.contains(&0) {
            return 0;
        }
        (0u32..1 << n)
            .filter(|s| supports.iter().all(|m| m & !s != 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn coordinate_axes() {
        let m = |e: &[u32]| Monomial::from_exponents(e);
        let gens = [m(&[0, 1, 1]), m(&[1, 0, 1]), m(&[1, 1, 0])];
        assert_eq!(monomial_dimension(&gens, 3), 1);
        assert_eq!(monomial_dimension(&[], 3), 3);
    }

    proptest! {
        #[test]
        fn matches_subset_search(n in 1usize..=8, raw in proptest::collection::vec(proptest::collection::vec(0u32..3, 8), 0..7)) {
            let monos: Vec<Monomial> = raw.iter().map(|e| Monomial::from_exponents(&e[..n])).collect();
            prop_assert_eq!(monomial_dimension(&monos, n), brute(&monos, n));
        }
    }
}

//! Dense fixed-width exponent vectors.

use std::fmt;

/// Hard cap on the number of variables of any ring.
pub const MAX_VARS: usize = 32;

/// Exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS] }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m
    }

    /// Build from an exponent slice; panics if an exponent exceeds 255.
    pub fn from_exponents(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (slot, &x) in m.exps.iter_mut().zip(e) {
            *slot = u8::try_from(x).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn set_exp(&mut self, i: usize, e: u32) {
        self.exps[i] = u8::try_from(e).expect("exponent overflow");
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn weighted_degree(&self, w: &[u32]) -> i64 {
        let mut d = 0i64;
        for (e, w) in self.exps.iter().zip(w) {
            d += *e as i64 * *w as i64;
        }
        d
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = [0u8; MAX_VARS];
        let mut over = false;
        for i in 0..MAX_VARS {
            let (s, c) = self.exps[i].overflowing_add(o.exps[i]);
            r[i] = s;
            over |= c;
        }
        assert!(!over, "exponent overflow");
        Monomial { exps: r }
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, if `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        let mut r = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = o.exps[i].checked_sub(self.exps[i])?;
        }
        Some(Monomial { exps: r })
    }

    /// `self / d`; panics unless `d` divides `self`.
    #[inline]
    pub fn div(&self, d: &Monomial) -> Monomial {
        d.quotient_of(self).expect("monomial does not divide")
    }

    #[inline]
    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut r = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.exps[i].max(o.exps[i]);
        }
        Monomial { exps: r }
    }

    #[inline]
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.exps[i].min(o.exps[i]);
        }
        Monomial { exps: r }
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit i set iff variable i occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut m = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut r = Monomial::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Copy exponents of `src` variables into new positions (`map[i]` = target index of variable i).
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut r = Monomial::one();
        for (i, &t) in map.iter().enumerate() {
            if self.exps[i] != 0 {
                r.exps[t] = self.exps[i];
            }
        }
        r
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[2, 1, 0]);
        let b = Monomial::from_exponents(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), Monomial::from_exponents(&[1, 1, 0]));
        assert!(a.gcd(&b).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.mul(&b).div(&b), a);
        assert!(Monomial::var(0).is_coprime(&Monomial::var(1)));
        assert_eq!(a.support_mask(), 0b011);
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn overflow_is_caught() {
        let a = Monomial::from_exponents(&[200]);
        let _ = a.mul(&a);
    }
}

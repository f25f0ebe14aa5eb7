use core::cmp::Ordering;
use core::fmt;

/// Maximum number of indeterminates a single ambient field may use.
pub const MAX_VARS: usize = 24;

/// Exponent vector of a power product `x_0^e_0 * ... * x_{k-1}^e_{k-1}`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x_0`, then `x_1`, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exp: u16) -> Self {
        assert!(index < MAX_VARS, "variable index {index} out of range");
        let mut m = Self::ONE;
        m.exps[index] = exp;
        m.deg = exp as u32;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = m.recompute_degree();
        m
    }

    fn recompute_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn exponent(&self, index: usize) -> u16 {
        self.exps[index]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn set_exponent(&mut self, index: usize, exp: u16) {
        self.deg = self.deg - self.exps[index] as u32 + exp as u32;
        self.exps[index] = exp;
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` is set iff `x_i` occurs.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Bit `i` is set iff the exponent of `x_i` is odd.
    pub fn parity(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e & 1 == 1 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Square-free monomial with the given parity mask.
    pub fn from_parity(mask: u32) -> Self {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            if mask >> i & 1 == 1 {
                m.exps[i] = 1;
            }
        }
        m.deg = m.recompute_degree();
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = o.checked_add(e).expect("monomial exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    pub fn pow(&self, n: u16) -> Monomial {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e = e.checked_mul(n).expect("monomial exponent overflow");
        }
        out.deg = self.deg * n as u32;
        out
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = o.checked_sub(e)?;
        }
        out.deg = self.deg - other.deg;
        Some(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = (*o).min(e);
        }
        out.deg = out.recompute_degree();
        out
    }

    /// Halves every exponent; `None` unless all exponents are even.
    pub fn sqrt(&self) -> Option<Monomial> {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            if *e & 1 == 1 {
                return None;
            }
            *e /= 2;
        }
        out.deg = self.deg / 2;
        Some(out)
    }

    /// Splits `m = h^2 * x^e` with `e` square-free, returning `(parity mask, h)`.
    pub fn split_square(&self) -> (u32, Monomial) {
        let mut h = *self;
        let mut mask = 0u32;
        for (i, e) in h.exps.iter_mut().enumerate() {
            if *e & 1 == 1 {
                mask |= 1 << i;
            }
            *e /= 2;
        }
        h.deg = h.recompute_degree();
        (mask, h)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "m{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert!(x > y);
        assert!(y.mul(&y) > x);
        assert!(x.mul(&y) > y.mul(&y));
        assert!(Monomial::ONE < y);
    }

    #[test]
    fn split_square_reconstructs() {
        let m = Monomial::from_exponents(&[3, 2, 1]);
        let (mask, h) = m.split_square();
        assert_eq!(mask, 0b101);
        assert_eq!(h.pow(2).mul(&Monomial::from_parity(mask)), m);
    }
}

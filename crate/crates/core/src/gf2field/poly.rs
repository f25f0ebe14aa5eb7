use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use super::monomial::{Monomial, MAX_VARS};

/// Polynomial over GF(2): a set of monomials, stored in strictly descending
/// graded-lex order. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn var(index: usize) -> Self {
        Self::monomial(Monomial::var(index))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self { terms: vec![m] }
    }

    /// Builds a polynomial from arbitrary terms; repeated monomials cancel in pairs.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut v: Vec<Monomial> = terms.into_iter().collect();
        Self::from_unsorted(&mut v)
    }

    fn from_unsorted(v: &mut Vec<Monomial>) -> Self {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i + 1;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(v[i]);
            }
            i = j;
        }
        Self { terms: out }
    }

    /// Caller guarantees strictly descending order.
    pub(crate) fn from_sorted(terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Self { terms }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|m| m.degree())
    }

    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, m| acc | m.support())
    }

    pub fn var_degree(&self, var: usize) -> u16 {
        self.terms.iter().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Smallest exponent of `var` over all terms (the `var`-adic valuation).
    pub fn var_valuation(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|m| m.exponent(var)).min()
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.gcd(m)),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // multiplication by a monomial preserves the order
        Self { terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    /// Divides every term by `m`; the caller guarantees divisibility.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| t.checked_div(m).expect("monomial does not divide"))
                .collect(),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { terms: out }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_monomial() {
            return other.mul_monomial(&self.terms[0]);
        }
        if other.is_monomial() {
            return self.mul_monomial(&other.terms[0]);
        }
        let mut v = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                v.push(a.mul(b));
            }
        }
        Self::from_unsorted(&mut v)
    }

    /// Frobenius: squares every monomial, cross terms vanish.
    pub fn square(&self) -> Self {
        Self { terms: self.terms.iter().map(|m| m.pow(2)).collect() }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if d.is_one() {
            return Some(self.clone());
        }
        if d.is_monomial() {
            let m = d.terms[0];
            if self.terms.iter().all(|t| m.divides(t)) {
                return Some(self.div_monomial(&m));
            }
            return None;
        }
        let lt = d.terms[0];
        let mut r: BTreeSet<Monomial> = self.terms.iter().copied().collect();
        let mut q = Vec::new();
        while let Some(rl) = r.pop_last() {
            let qt = rl.checked_div(&lt)?;
            q.push(qt);
            for t in &d.terms[1..] {
                let m = t.mul(&qt);
                if !r.remove(&m) {
                    r.insert(m);
                }
            }
        }
        Some(Self::from_sorted(q))
    }

    /// Inverse Frobenius on polynomials: `Some(g)` with `g^2 = self` if all exponents are even.
    pub fn sqrt(&self) -> Option<Self> {
        let terms: Option<Vec<Monomial>> = self.terms.iter().map(|m| m.sqrt()).collect();
        terms.map(|t| Self { terms: t })
    }

    /// Sets `x_var = 0`.
    pub fn eval_var_zero(&self, var: usize) -> Self {
        Self {
            terms: self.terms.iter().filter(|m| m.exponent(var) == 0).copied().collect(),
        }
    }

    /// Coefficients with respect to `var`: `self = sum_k coeffs[k] * x_var^k`.
    pub fn to_univariate(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.var_degree(var) as usize;
        let mut buckets: Vec<Vec<Monomial>> = vec![Vec::new(); deg + 1];
        for m in &self.terms {
            let k = m.exponent(var) as usize;
            let mut stripped = *m;
            stripped.set_exponent(var, 0);
            buckets[k].push(stripped);
        }
        buckets
            .into_iter()
            // removing a fixed power of one variable preserves the order
            .map(Self::from_sorted)
            .collect()
    }

    pub fn from_univariate(coeffs: &[Polynomial], var: usize) -> Self {
        let mut v = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let xk = Monomial::var_pow(var, k as u16);
            v.extend(c.terms.iter().map(|m| m.mul(&xk)));
        }
        Self::from_unsorted(&mut v)
    }

    /// Keeps only terms for which `keep` holds.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        Self { terms: self.terms.iter().filter(|m| keep(m)).copied().collect() }
    }

    /// All monomials in variables `vars` of total degree at most `bound`, ascending.
    pub fn monomials_up_to(vars: &[usize], bound: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::ONE];
        let mut frontier = vec![Monomial::ONE];
        for _ in 0..bound {
            let mut next = Vec::new();
            for m in &frontier {
                for &v in vars {
                    let n = m.mul(&Monomial::var(v));
                    next.push(n);
                }
            }
            next.sort_unstable();
            next.dedup();
            out.extend_from_slice(&next);
            frontier = next;
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn max_var_index(&self) -> Option<usize> {
        let s = self.support();
        if s == 0 {
            None
        } else {
            Some(31 - s.leading_zeros() as usize)
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_ref(rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_ref(rhs)
    }
}

impl core::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "1")?;
                continue;
            }
            let mut first = true;
            for v in 0..MAX_VARS {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "x{v}")?;
                } else {
                    write!(f, "x{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn y() -> Polynomial {
        Polynomial::var(1)
    }

    #[test]
    fn characteristic_two() {
        assert!((&x() + &x()).is_zero());
        let s = &x() + &y();
        assert_eq!(&s * &s, &x().square() + &y().square());
    }

    #[test]
    fn exact_division() {
        let a = &(&x() + &Polynomial::one()) * &(&x() + &y());
        let q = a.div_exact(&(&x() + &y())).unwrap();
        assert_eq!(q, &x() + &Polynomial::one());
        assert!(a.div_exact(&(&y() + &Polynomial::one())).is_none());
    }

    #[test]
    fn univariate_round_trip() {
        let p = &(&x().pow(3) * &y()) + &(&x() + &y().square());
        let u = p.to_univariate(0);
        assert_eq!(Polynomial::from_univariate(&u, 0), p);
    }
}

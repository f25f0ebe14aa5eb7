use core::fmt;
use core::ops::{Add, Div, Mul};

use super::gcd::gcd;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::FieldError;

/// Element of `F_2(x_0, ..., x_{k-1})` as a reduced fraction.
///
/// `gcd(num, den) = 1` and `den != 0`; zero is stored as `0/1`. Over GF(2)
/// there are no units to normalize, so the representation is unique and
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self {
                num: num.div_exact(&g).expect("gcd divides numerator"),
                den: den.div_exact(&g).expect("gcd divides denominator"),
            }
        }
    }

    /// Caller guarantees the fraction is already reduced.
    pub(crate) fn from_reduced(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn var(index: usize) -> Self {
        Self::from(Polynomial::var(index))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from(Polynomial::monomial(m))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn support(&self) -> u32 {
        self.num.support() | self.den.support()
    }

    /// Total degree of numerator plus denominator; used as a size measure for pivoting.
    pub fn weight(&self) -> u32 {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from(self.num.add_ref(&other.num));
        }
        if self.den == other.den {
            return Self::reduce(self.num.add_ref(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            // (a d + b) / d is already reduced when b/d is
            let n = self.num.mul_ref(&other.den).add_ref(&other.num);
            return Self::from_reduced(n, other.den.clone());
        }
        if other.den.is_one() {
            let n = other.num.mul_ref(&self.den).add_ref(&self.num);
            return Self::from_reduced(n, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let n = self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den));
            // coprime denominators: the sum is reduced
            return Self::from_reduced(n, self.den.mul_ref(&other.den));
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul_ref(&d2).add_ref(&other.num.mul_ref(&d1));
        if n.is_zero() {
            return Self::zero();
        }
        let g2 = gcd(&n, &g);
        let n = n.div_exact(&g2).expect("gcd divides");
        let g = g.div_exact(&g2).expect("gcd divides");
        Self::from_reduced(n, d1.mul_ref(&d2).mul_ref(&g))
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from(self.num.mul_ref(&other.num));
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::from_reduced(n1.mul_ref(&n2), d1.mul_ref(&d2))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::from_reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Frobenius `f -> f^2`; squares of coprime polynomials stay coprime.
    pub fn square(&self) -> Self {
        Self::from_reduced(self.num.square(), self.den.square())
    }

    pub fn pow(&self, n: i64) -> Result<Self, FieldError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs();
        let e = u32::try_from(e).map_err(|_| FieldError::ExponentTooLarge)?;
        Ok(Self::from_reduced(base.num.pow(e), base.den.pow(e)))
    }

    /// `f^(2^k)` by repeated Frobenius.
    pub fn frobenius(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.square();
        }
        out
    }

    /// Substitutes `x_i -> images[i]` (variables beyond `images.len()` are kept).
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<Self, FieldError> {
        let n = substitute_poly(&self.num, images);
        let d = substitute_poly(&self.den, images);
        n.div_ref(&d).map_err(|_| FieldError::SubstitutionKillsDenominator)
    }

    /// Renames variables by an index map (`map[i]` is the new index of `x_i`).
    pub fn rename(&self, map: &[usize]) -> Self {
        let ren = |p: &Polynomial| {
            Polynomial::from_terms(p.terms().iter().map(|m| {
                let mut out = Monomial::ONE;
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e != 0 {
                        let j = map.get(i).copied().unwrap_or(i);
                        out.set_exponent(j, out.exponent(j) + e);
                    }
                }
                out
            }))
        };
        // renaming is a ring automorphism on the used variables, so the fraction stays reduced
        Self::from_reduced(ren(&self.num), ren(&self.den))
    }
}

fn substitute_poly(p: &Polynomial, images: &[RationalFunction]) -> RationalFunction {
    use alloc::vec::Vec;
    let k = images.len();
    // powers[i][e] = images[i]^e, filled lazily
    let mut powers: Vec<Vec<RationalFunction>> = (0..k).map(|_| Vec::new()).collect();
    let mut acc = RationalFunction::zero();
    for m in p.terms() {
        let mut term = RationalFunction::one();
        let mut rest = *m;
        for i in 0..k {
            let e = m.exponent(i) as usize;
            if e == 0 {
                continue;
            }
            rest.set_exponent(i, 0);
            let pw = &mut powers[i];
            if pw.is_empty() {
                pw.push(RationalFunction::one());
            }
            while pw.len() <= e {
                let next = pw.last().expect("nonempty").mul_ref(&images[i]);
                pw.push(next);
            }
            term = term.mul_ref(&pw[e]);
        }
        if !rest.is_one() {
            term = term.mul_ref(&RationalFunction::monomial(rest));
        }
        acc = acc.add_ref(&term);
    }
    acc
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                self.$inner(rhs)
            }
        }
        impl<'a> $tr<RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$inner(&rhs)
            }
        }
        impl<'a, 'b> $tr<&'b RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'b RationalFunction) -> RationalFunction {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);

impl<'a, 'b> Div<&'b RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::div_ref`] to handle it.
    fn div(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.div_ref(rhs).expect("division by zero")
    }
}

impl Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        &self / &rhs
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> RationalFunction {
        RationalFunction::var(i)
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let x = Polynomial::var(0);
        let one = Polynomial::one();
        let f = RationalFunction::new(&x.square() + &x, x.clone()).unwrap();
        assert_eq!(f, RationalFunction::from(&x + &one));
        let g = RationalFunction::new(x.clone(), x.clone()).unwrap();
        assert!(g.is_one());
        assert_eq!(
            RationalFunction::new(one.clone(), Polynomial::zero()),
            Err(FieldError::ZeroDenominator)
        );
    }

    #[test]
    fn field_operations() {
        let (x, y) = (v(0), v(1));
        assert!((&x + &x).is_zero());
        let s = &x + &y;
        assert_eq!(&s * &s, &x.square() + &y.square());
        let q = &x / &(&x + &RationalFunction::one());
        let inv = q.inv().unwrap();
        assert_eq!(inv, &(&x + &RationalFunction::one()) / &x);
        assert_eq!(&q * &inv, RationalFunction::one());
        assert_eq!(RationalFunction::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn sums_with_shared_denominator_factor() {
        let (x, y) = (v(0), v(1));
        let one = RationalFunction::one();
        let a = &one / &(&x * &y);
        let b = &one / &(&x * &(&y + &one));
        let s = &a + &b;
        // 1/(xy) + 1/(x(y+1)) = 1/(x y (y+1))
        assert_eq!(s, &one / &(&(&x * &y) * &(&y + &one)));
        assert!((&s + &s).is_zero());
    }

    #[test]
    fn substitution() {
        let (x, y, w) = (v(0), v(1), v(2));
        let f = &(&x * &y) / &(&y + &RationalFunction::one());
        let g = f.substitute(&[x.clone(), w.square()]).unwrap();
        assert_eq!(g, &(&x * &w.square()) / &(&w.square() + &RationalFunction::one()));
    }
}

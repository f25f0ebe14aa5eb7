use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::rational::RationalFunction;
use super::FieldError;

/// Coordinates of `f` in the basis of square-free monomials over `F^2`:
/// `f = sum_e g_e^2 * x^e`, keyed by the parity mask `e`.
///
/// Only nonzero components are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDecomposition {
    components: BTreeMap<u32, RationalFunction>,
}

impl SquareDecomposition {
    pub fn components(&self) -> &BTreeMap<u32, RationalFunction> {
        &self.components
    }

    pub fn get(&self, mask: u32) -> RationalFunction {
        self.components.get(&mask).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `sum_e g_e^2 x^e`.
    pub fn reconstruct(&self) -> RationalFunction {
        self.components.iter().fold(RationalFunction::zero(), |acc, (&mask, g)| {
            acc.add_ref(&g.square().mul_ref(&RationalFunction::monomial(Monomial::from_parity(mask))))
        })
    }
}

/// Splits `f = N/D` as `N*D / D^2` and sorts the monomials of `N*D` by exponent parity.
pub fn square_decompose(f: &RationalFunction) -> SquareDecomposition {
    let mut components = BTreeMap::new();
    if f.is_zero() {
        return SquareDecomposition { components };
    }
    let nd = f.num().mul_ref(f.den());
    let mut groups: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in nd.terms() {
        let (mask, h) = m.split_square();
        groups.entry(mask).or_default().push(h);
    }
    for (mask, hs) in groups {
        // halving within one parity class preserves descending order
        let g = Polynomial::from_sorted(hs);
        let comp = RationalFunction::new(g, f.den().clone()).expect("denominator is nonzero");
        components.insert(mask, comp);
    }
    SquareDecomposition { components }
}

/// Inverse Frobenius: `g` with `g^2 = f`, or the first nonzero non-square component.
pub fn sqrt(f: &RationalFunction) -> Result<RationalFunction, FieldError> {
    let dec = square_decompose(f);
    if let Some((&mask, _)) = dec.components.iter().find(|(&m, _)| m != 0) {
        return Err(FieldError::NotASquare { component: mask });
    }
    Ok(dec.get(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> RationalFunction {
        RationalFunction::var(i)
    }

    #[test]
    fn decomposes_examples() {
        let x = v(0);
        let y = v(1);
        let d = square_decompose(&x.pow(3).unwrap());
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.get(0b1), x);

        let d = square_decompose(&(&x.square() + &y));
        assert_eq!(d.get(0), x);
        assert_eq!(d.get(0b10), RationalFunction::one());

        let d = square_decompose(&x.inv().unwrap());
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.get(0b1), x.inv().unwrap());
    }

    #[test]
    fn square_roots() {
        let (x, y) = (v(0), v(1));
        assert_eq!(sqrt(&(&x.square() + &y.square())).unwrap(), &x + &y);
        assert_eq!(sqrt(&x), Err(FieldError::NotASquare { component: 1 }));
        let f = &(&x.pow(4).unwrap() + &y.square()) / &x.square();
        assert_eq!(sqrt(&f).unwrap(), &(&x.square() + &y) / &x);
    }
}

//! Multivariate gcd over GF(2) by recursive content / primitive part and
//! primitive pseudo-remainder sequences, with a modular fast path.

use alloc::vec::Vec;

use super::modgcd;
use super::poly::Polynomial;

pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_one() || b.is_one() {
        return Polynomial::one();
    }
    if a == b {
        return a.clone();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    if a.is_monomial() || b.is_monomial() {
        return Polynomial::monomial(mg);
    }
    let a1 = if ma.is_one() { a.clone() } else { a.div_monomial(&ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_monomial(&mb) };
    let g = gcd_no_monomial_content(&a1, &b1);
    if mg.is_one() {
        g
    } else {
        g.mul_monomial(&mg)
    }
}

/// Both inputs nonzero and free of monomial factors.
fn gcd_no_monomial_content(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_one() || b.is_one() {
        return Polynomial::one();
    }
    if a == b {
        return a.clone();
    }
    let sa = a.support();
    let sb = b.support();
    if let Some(v) = lowest_bit(sa & !sb) {
        let c = content(a, v);
        return gcd(&c, b);
    }
    if let Some(v) = lowest_bit(sb & !sa) {
        let c = content(b, v);
        return gcd(a, &c);
    }
    // same support: pick the main variable of least degree
    let mut best = None;
    let mut s = sa;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        let d = a.var_degree(v).max(b.var_degree(v));
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((v, d));
        }
    }
    let (v, _) = best.expect("nonconstant polynomials share a variable");
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let gc = gcd(&ca, &cb);
    let mut pa = divide_coeffs(ua, &ca);
    let mut pb = divide_coeffs(ub, &cb);
    if pa.len() < pb.len() {
        core::mem::swap(&mut pa, &mut pb);
    }
    if pb.len() > 1 {
        if modgcd::images_coprime(&pa, &pb) {
            return gc;
        }
        let gamma = gcd(pa.last().expect("nonempty"), pb.last().expect("nonempty"));
        if let Some(prim) = modgcd::primitive_gcd(&pa, &pb, v, &gamma) {
            return &gc * &prim;
        }
    }
    let prim = loop {
        if pb.len() == 1 {
            break Polynomial::one();
        }
        let r = prem(&pa, &pb);
        if r.is_empty() {
            break Polynomial::from_univariate(&pb, v);
        }
        let cr = content_of(&r);
        let r = divide_coeffs(r, &cr);
        pa = pb;
        pb = r;
    };
    &gc * &prim
}

fn lowest_bit(mask: u32) -> Option<usize> {
    if mask == 0 {
        None
    } else {
        Some(mask.trailing_zeros() as usize)
    }
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &Polynomial, var: usize) -> Polynomial {
    content_of(&p.to_univariate(var))
}

fn content_of(coeffs: &[Polynomial]) -> Polynomial {
    let mut nonzero: Vec<&Polynomial> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    // fewest terms first tends to shrink the running gcd quickly
    nonzero.sort_by_key(|c| c.len());
    let mut g = Polynomial::zero();
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coeffs(coeffs: Vec<Polynomial>, c: &Polynomial) -> Vec<Polynomial> {
    if c.is_one() {
        return coeffs;
    }
    coeffs
        .into_iter()
        .map(|p| p.div_exact(c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients,
/// up to a nonzero factor from the coefficient ring. Result is trimmed.
fn prem(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let mut r: Vec<Polynomial> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul_ref(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            let t = bk.mul_ref(&lr);
            r[k + shift] = r[k + shift].add_ref(&t);
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
}

/// Least common multiple.
pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let g = gcd(a, b);
    let q = a.div_exact(&g).expect("gcd divides");
    &q * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Polynomial {
        Polynomial::var(i)
    }
    fn one() -> Polynomial {
        Polynomial::one()
    }

    #[test]
    fn univariate_gcd() {
        let x = v(0);
        let a = &(&x + &one()) * &(&(&x * &x) + &(&x + &one()));
        let b = &(&x + &one()) * &x;
        assert_eq!(gcd(&a, &b), &x + &one());
    }

    #[test]
    fn multivariate_gcd() {
        let (x, y, z) = (v(0), v(1), v(2));
        let f = &(&x * &y) + &z;
        let a = &f * &(&x + &y);
        let b = &f * &(&(&y * &z) + &one());
        assert_eq!(gcd(&a, &b), f);
        let c = &(&x + &one()).square() * &y;
        let d = &(&x + &one()) * &(&y + &z);
        assert_eq!(gcd(&c, &d), &x + &one());
    }

    #[test]
    fn image_test_on_dense_coprime_inputs() {
        let (x, y, z) = (v(0), v(1), v(2));
        let f = &(&(&x * &y) + &z) + &one();
        let a = f.pow(7);
        let b = &(&x + &y).pow(5) + &z.pow(3);
        assert!(gcd(&a, &b).is_one());
        let g = &(&x * &z) + &y;
        assert_eq!(gcd(&(&a * &g), &(&b * &g)), g);
    }

    #[test]
    fn shared_factor_in_every_variable() {
        let (x, y, z) = (v(0), v(1), v(2));
        let f = &(&x * &y) + &z;
        let h1 = &(&(&x + &y).pow(6) + &z.pow(5)) + &one();
        let h2 = &(&(&x * &z).pow(4) + &y.pow(7)) + &x;
        let a = &(&f * &f) * &h1;
        let b = &f * &h2;
        assert_eq!(gcd(&a, &b), f);
        assert_eq!(gcd(&(&a * &h2), &(&b * &h1)), &(&f * &h1) * &h2);
    }

    #[test]
    fn coprime_and_monomial_factors() {
        let (x, y) = (v(0), v(1));
        let a = &(&x * &x) * &(&x + &y);
        let b = &(&x * &y) * &(&y + &one());
        assert_eq!(gcd(&a, &b), x.clone());
        assert_eq!(lcm(&x, &y), &x * &y);
    }
}

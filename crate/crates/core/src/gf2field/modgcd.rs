//! Images of GF(2) polynomials over `K = GF(2^32)`: a coprimality test and a
//! dense modular gcd (evaluate every variable but the main one on a grid,
//! take univariate gcds over `K`, interpolate, check by trial division).

use alloc::vec;
use alloc::vec::Vec;

use super::monomial::{Monomial, MAX_VARS};
use super::poly::Polynomial;

/// `K = GF(2)[α]/(α^32 + α^7 + α^3 + α^2 + 1)`.
const MODULUS: u64 = 0x1_0000_008D;

/// Grids larger than this fall back to the pseudo-remainder sequence.
const MAX_POINTS: usize = 1 << 16;

fn mul(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a as u64, b as u64);
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> 32 & 1 == 1 {
            a ^= MODULUS;
        }
    }
    r as u32
}

fn pow(a: u32, mut n: u64) -> u32 {
    let (mut base, mut r) = (a, 1);
    while n != 0 {
        if n & 1 == 1 {
            r = mul(r, base);
        }
        base = mul(base, base);
        n >>= 1;
    }
    r
}

fn inv(a: u32) -> u32 {
    debug_assert!(a != 0);
    pow(a, (1u64 << 32) - 2)
}

/// Deterministic xorshift stream of nonzero field elements.
struct Points(u64);

impl Points {
    fn next(&mut self) -> u32 {
        loop {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            let v = (self.0 >> 16) as u32;
            if v > 1 {
                return v;
            }
        }
    }
}

/// Powers of each variable's value up to the needed degree.
struct PowerTable(Vec<Vec<u32>>);

impl PowerTable {
    fn new(values: &[(usize, u32)], max_deg: &[u16; MAX_VARS]) -> Self {
        let mut t = vec![Vec::new(); MAX_VARS];
        for &(v, x) in values {
            let mut row = Vec::with_capacity(max_deg[v] as usize + 1);
            let mut p = 1;
            for _ in 0..=max_deg[v] {
                row.push(p);
                p = mul(p, x);
            }
            t[v] = row;
        }
        PowerTable(t)
    }

    fn eval(&self, p: &Polynomial) -> u32 {
        p.terms().iter().fold(0, |acc, m| acc ^ self.monomial(m))
    }

    fn monomial(&self, m: &Monomial) -> u32 {
        let e = m.exponents();
        let mut r = 1;
        for (v, row) in self.0.iter().enumerate() {
            if e[v] != 0 {
                r = mul(r, row[e[v] as usize]);
            }
        }
        r
    }
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `K`; empty for two zero inputs.
fn univariate_gcd(mut a: Vec<u32>, mut b: Vec<u32>) -> Vec<u32> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = inv(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let f = mul(*a.last().expect("nonempty"), lb);
            let shift = a.len() - b.len();
            for (k, &c) in b.iter().enumerate() {
                a[k + shift] ^= mul(c, f);
            }
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let li = inv(l);
        for c in a.iter_mut() {
            *c = mul(*c, li);
        }
    }
    a
}

fn max_degrees(polys: &[&Polynomial]) -> [u16; MAX_VARS] {
    let mut d = [0u16; MAX_VARS];
    for p in polys {
        for m in p.terms() {
            for (v, &e) in m.exponents().iter().enumerate() {
                d[v] = d[v].max(e);
            }
        }
    }
    d
}

fn support_vars(polys: &[&Polynomial]) -> Vec<usize> {
    let s = polys.iter().fold(0u32, |acc, p| acc | p.support());
    (0..32).filter(|v| s >> v & 1 == 1).collect()
}

/// Sufficient test that two polynomials, given by their coefficients in the
/// main variable, have no common factor of positive degree in it: at a point
/// where both leading coefficients survive, the gcd of the images has degree
/// at least that of the true gcd.
pub(super) fn images_coprime(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let all: Vec<&Polynomial> = a.iter().chain(b).collect();
    let vars = support_vars(&all);
    let deg = max_degrees(&all);
    let mut pts = Points(0x9E37_79B9_7F4A_7C15 ^ (a.len() as u64) << 20 ^ b.len() as u64);
    for _ in 0..3 {
        let values: Vec<(usize, u32)> = vars.iter().map(|&v| (v, pts.next())).collect();
        let table = PowerTable::new(&values, &deg);
        let ia: Vec<u32> = a.iter().map(|c| table.eval(c)).collect();
        let ib: Vec<u32> = b.iter().map(|c| table.eval(c)).collect();
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        return univariate_gcd(ia, ib).len() == 1;
    }
    false
}

/// Coefficients in the monomial basis of the polynomial of degree `< n`
/// through `(xs[i], ys[i])`, with `inv_diff[i][j] = 1/(xs[i] - xs[j])`.
fn interpolate(xs: &[u32], ys: &[u32], inv_diff: &[Vec<u32>]) -> Vec<u32> {
    let n = xs.len();
    // divided differences
    let mut c = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            c[i] = mul(c[i] ^ c[i - 1], inv_diff[i][i - k]);
        }
    }
    // expand the Newton form
    let mut out = vec![0u32; n];
    for k in (0..n).rev() {
        // out = out * (x - xs[k]) + c[k]
        for i in (1..n).rev() {
            out[i] = out[i - 1] ^ mul(out[i], xs[k]);
        }
        out[0] = mul(out[0], xs[k]) ^ c[k];
    }
    out
}

/// The gcd of `a` and `b`, given by their coefficients in the main variable
/// `v`, both primitive in `v`. `gamma` is the gcd of their leading
/// coefficients. The result is primitive in `v` and divides both, or `None`
/// when the images were unlucky or the grid would be too large.
pub(super) fn primitive_gcd(a: &[Polynomial], b: &[Polynomial], v: usize, gamma: &Polynomial) -> Option<Polynomial> {
    let all: Vec<&Polynomial> = a.iter().chain(b).collect();
    let vars = support_vars(&all);
    let da = max_degrees(&a.iter().collect::<Vec<_>>());
    let db = max_degrees(&b.iter().collect::<Vec<_>>());
    let dg = max_degrees(&[gamma]);
    let deg = max_degrees(&all);
    let sizes: Vec<usize> = vars.iter().map(|&x| (dg[x] + da[x].min(db[x])) as usize + 1).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s))?;
    if total > MAX_POINTS {
        return None;
    }
    let mut pts = Points(0xD1B5_4A32_D192_ED03 ^ (a.len() as u64) << 24 ^ (b.len() as u64) << 8 ^ v as u64);
    'attempt: for _ in 0..3 {
        let grid: Vec<Vec<u32>> = sizes
            .iter()
            .map(|&s| {
                let mut xs: Vec<u32> = Vec::with_capacity(s);
                while xs.len() < s {
                    let x = pts.next();
                    if !xs.contains(&x) {
                        xs.push(x);
                    }
                }
                xs
            })
            .collect();
        let mut images: Vec<Vec<u32>> = Vec::with_capacity(total);
        let mut d = usize::MAX;
        for flat in 0..total {
            let mut rest = flat;
            let mut values = Vec::with_capacity(vars.len());
            for (k, &x) in vars.iter().enumerate().rev() {
                values.push((x, grid[k][rest % sizes[k]]));
                rest /= sizes[k];
            }
            let table = PowerTable::new(&values, &deg);
            let ia: Vec<u32> = a.iter().map(|c| table.eval(c)).collect();
            let ib: Vec<u32> = b.iter().map(|c| table.eval(c)).collect();
            if ia.last() == Some(&0) || ib.last() == Some(&0) {
                continue 'attempt;
            }
            let g = univariate_gcd(ia, ib);
            let gd = g.len() - 1;
            if gd == 0 {
                return Some(Polynomial::one());
            }
            if d != usize::MAX && gd != d {
                continue 'attempt;
            }
            d = gd;
            let s = table.eval(gamma);
            images.push(g.into_iter().map(|c| mul(c, s)).collect());
        }
        let inv_diffs: Vec<Vec<Vec<u32>>> = grid
            .iter()
            .map(|xs| xs.iter().map(|&xi| xs.iter().map(|&xj| if xi == xj { 0 } else { inv(xi ^ xj) }).collect()).collect())
            .collect();
        let mut terms = Vec::new();
        for j in 0..=d {
            let mut values: Vec<u32> = images.iter().map(|g| g[j]).collect();
            // interpolate axis by axis, last variable fastest
            let mut stride = 1;
            for k in (0..vars.len()).rev() {
                let s = sizes[k];
                let block = stride * s;
                for outer in (0..total).step_by(block) {
                    for inner in 0..stride {
                        let idx: Vec<usize> = (0..s).map(|i| outer + inner + i * stride).collect();
                        let ys: Vec<u32> = idx.iter().map(|&i| values[i]).collect();
                        let coeffs = interpolate(&grid[k], &ys, &inv_diffs[k]);
                        for (i, c) in idx.into_iter().zip(coeffs) {
                            values[i] = c;
                        }
                    }
                }
                stride = block;
            }
            for (flat, &c) in values.iter().enumerate() {
                match c {
                    0 => {}
                    1 => {
                        let mut m = Monomial::var_pow(v, j as u16);
                        let mut rest = flat;
                        for (k, &x) in vars.iter().enumerate().rev() {
                            let e = (rest % sizes[k]) as u16;
                            rest /= sizes[k];
                            if e != 0 {
                                m = m.mul(&Monomial::var_pow(x, e));
                            }
                        }
                        terms.push(m);
                    }
                    _ => continue 'attempt,
                }
            }
        }
        let g = Polynomial::from_terms(terms);
        let g = primitive_part(&g, v);
        let full_a = Polynomial::from_univariate(a, v);
        let full_b = Polynomial::from_univariate(b, v);
        if g.var_degree(v) as usize == d && full_a.div_exact(&g).is_some() && full_b.div_exact(&g).is_some() {
            return Some(g);
        }
    }
    None
}

fn primitive_part(p: &Polynomial, v: usize) -> Polynomial {
    let c = super::gcd::content(p, v);
    if c.is_one() {
        p.clone()
    } else {
        p.div_exact(&c).expect("content divides")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_is_irreducible() {
        // x^(2^32) = x and gcd(x^(2^16) - x, f) = 1
        let frob = |k: u32| (0..k).fold(2u32, |y, _| mul(y, y));
        assert_eq!(frob(32), 2);
        let (mut a, mut b) = (MODULUS, (frob(16) ^ 2) as u64);
        while b != 0 {
            while a != 0 && 64 - a.leading_zeros() >= 64 - b.leading_zeros() {
                a ^= b << (b.leading_zeros() - a.leading_zeros());
            }
            core::mem::swap(&mut a, &mut b);
        }
        assert_eq!(a, 1);
    }

    #[test]
    fn field_inverse() {
        for a in [2u32, 3, 0xDEAD_BEEF, 0xFFFF_FFFF] {
            assert_eq!(mul(a, inv(a)), 1);
        }
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let xs = [5u32, 9, 1234, 77];
        let coeffs = [3u32, 0, 7, 1];
        let ys: Vec<u32> = xs
            .iter()
            .map(|&x| coeffs.iter().rev().fold(0, |acc, &c| mul(acc, x) ^ c))
            .collect();
        let inv_diff: Vec<Vec<u32>> =
            xs.iter().map(|&xi| xs.iter().map(|&xj| if xi == xj { 0 } else { inv(xi ^ xj) }).collect()).collect();
        assert_eq!(interpolate(&xs, &ys, &inv_diff), coeffs);
    }
}

//! Linear algebra over `F = F_2(x_1, ..., x_k)` and over GF(2) itself.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf2field::{lcm, Polynomial, RationalFunction};

/// Reduced row echelon form of a matrix over `F`.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<RationalFunction>>,
    pivots: Vec<usize>,
    cols: usize,
}

impl Echelon {
    /// Fraction-free Gauss-Jordan elimination. Each row is first cleared of
    /// denominators; every later entry is then a minor of the cleared
    /// matrix, so the one-step divisions by the previous pivot are exact and
    /// no gcd is needed until the final normalization. Within each column
    /// the pivot is the remaining entry of least total degree.
    pub fn new(matrix: &[Vec<RationalFunction>], cols: usize) -> Self {
        let mut rows: Vec<Vec<Polynomial>> = matrix
            .iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .map(|r| clear_denominators(r, cols))
            .collect();
        let mut pivots = Vec::new();
        let mut previous = Polynomial::one();
        let mut next = 0;
        for col in 0..cols {
            if next == rows.len() {
                break;
            }
            let best = (next..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| (rows[r][col].degree().unwrap_or(0), rows[r][col].len(), r));
            let Some(p) = best else { continue };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            let pv = pivot_row[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next {
                    continue;
                }
                let f = row[col].clone();
                for c in 0..cols {
                    let mut e = if row[c].is_zero() { Polynomial::zero() } else { row[c].mul_ref(&pv) };
                    if !f.is_zero() && !pivot_row[c].is_zero() {
                        e = e.add_ref(&f.mul_ref(&pivot_row[c]));
                    }
                    row[c] = if previous.is_one() || e.is_zero() {
                        e
                    } else {
                        e.div_exact(&previous).expect("fraction-free step divides exactly")
                    };
                }
            }
            previous = pv;
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        let rows = rows
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let d = row[p].clone();
                row.into_iter()
                    .map(|e| RationalFunction::new(e, d.clone()).expect("pivot is nonzero"))
                    .collect()
            })
            .collect();
        Self { rows, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<RationalFunction>] {
        &self.rows
    }

    /// Basis of the right kernel: one vector per free column, with that
    /// column set to 1 and the other free columns 0.
    pub fn nullspace(&self) -> Vec<Vec<RationalFunction>> {
        let mut out = Vec::new();
        let mut pi = 0;
        for free in 0..self.cols {
            if pi < self.pivots.len() && self.pivots[pi] == free {
                pi += 1;
                continue;
            }
            let mut v = vec![RationalFunction::zero(); self.cols];
            v[free] = RationalFunction::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = row[free].clone();
            }
            out.push(v);
        }
        out
    }
}

fn clear_denominators(row: &[RationalFunction], cols: usize) -> Vec<Polynomial> {
    let l = row[..cols].iter().fold(Polynomial::one(), |acc, e| if e.den().is_one() { acc } else { lcm(&acc, e.den()) });
    row[..cols]
        .iter()
        .map(|e| {
            if e.is_zero() {
                Polynomial::zero()
            } else if l.is_one() {
                e.num().clone()
            } else {
                e.num().mul_ref(&l.div_exact(e.den()).expect("lcm is a multiple"))
            }
        })
        .collect()
}

pub fn rank(matrix: &[Vec<RationalFunction>], cols: usize) -> usize {
    Echelon::new(matrix, cols).rank()
}

pub fn nullspace(matrix: &[Vec<RationalFunction>], cols: usize) -> Vec<Vec<RationalFunction>> {
    Echelon::new(matrix, cols).nullspace()
}

/// Solves `A x = b` (`A` given by rows with `cols` columns). Free unknowns are set to 0.
pub fn solve(
    matrix: &[Vec<RationalFunction>],
    rhs: &[RationalFunction],
    cols: usize,
) -> Option<Vec<RationalFunction>> {
    let augmented: Vec<Vec<RationalFunction>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let ech = Echelon::new(&augmented, cols + 1);
    if ech.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![RationalFunction::zero(); cols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Dense GF(2) vector packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)] }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn lowest_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Incrementally built GF(2) row space with solution tracking: each stored
/// row remembers which input rows were combined to produce it.
pub struct Gf2Solver {
    width: usize,
    count: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl Gf2Solver {
    /// Eliminates the given columns (`columns[j]` has bit `i` set when the
    /// `i`-th equation involves unknown `j`).
    pub fn new(columns: &[BitVec], width: usize) -> Self {
        let mut s = Self { width, count: columns.len(), rows: Vec::new() };
        for (j, col) in columns.iter().enumerate() {
            let mut v = col.clone();
            let mut combo = BitVec::zeros(columns.len());
            combo.flip(j);
            s.reduce(&mut v, &mut combo);
            if let Some(p) = v.lowest_set() {
                s.rows.push((p, v, combo));
            }
        }
        s
    }

    fn reduce(&self, v: &mut BitVec, combo: &mut BitVec) {
        for (p, row, c) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Some subset of the columns summing to `target`, as an indicator vector.
    pub fn solve(&self, target: &BitVec) -> Option<BitVec> {
        let mut v = target.clone();
        let mut combo = BitVec::zeros(self.count);
        debug_assert_eq!(v.words.len(), BitVec::zeros(self.width).words.len());
        self.reduce(&mut v, &mut combo);
        v.is_zero().then_some(combo)
    }

    /// A nonzero dependency among the columns, if any: the first column
    /// that reduced to zero together with its recorded combination.
    pub fn dependency(columns: &[BitVec], width: usize) -> Option<BitVec> {
        let mut s = Self { width, count: columns.len(), rows: Vec::new() };
        for (j, col) in columns.iter().enumerate() {
            let mut v = col.clone();
            let mut combo = BitVec::zeros(columns.len());
            combo.flip(j);
            s.reduce(&mut v, &mut combo);
            match v.lowest_set() {
                Some(p) => s.rows.push((p, v, combo)),
                None => return Some(combo),
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> RationalFunction {
        RationalFunction::var(i)
    }

    fn one() -> RationalFunction {
        RationalFunction::one()
    }

    #[test]
    fn solves_small_system() {
        let (x, y) = (v(0), v(1));
        // x a + b = y, a + y b = 1
        let m = vec![vec![x.clone(), one()], vec![one(), y.clone()]];
        let rhs = vec![y.clone(), one()];
        let sol = solve(&m, &rhs, 2).unwrap();
        for (row, b) in m.iter().zip(&rhs) {
            let lhs = row[0].mul_ref(&sol[0]).add_ref(&row[1].mul_ref(&sol[1]));
            assert_eq!(&lhs, b);
        }
    }

    #[test]
    fn detects_inconsistency_and_kernel() {
        let x = v(0);
        let m = vec![vec![x.clone(), one()], vec![x.square(), x.clone()]];
        assert_eq!(rank(&m, 2), 1);
        assert!(solve(&m, &[one(), one()], 2).is_none());
        let ker = nullspace(&m, 2);
        assert_eq!(ker.len(), 1);
        assert!(m[0][0].mul_ref(&ker[0][0]).add_ref(&m[0][1].mul_ref(&ker[0][1])).is_zero());
    }

    #[test]
    fn gf2_dependency() {
        let mut a = BitVec::zeros(3);
        a.flip(0);
        let mut b = BitVec::zeros(3);
        b.flip(1);
        let mut c = a.clone();
        c.xor_assign(&b);
        let dep = Gf2Solver::dependency(&[a.clone(), b.clone(), c], 3).unwrap();
        assert!(dep.get(0) && dep.get(1) && dep.get(2));
        let s = Gf2Solver::new(&[a, b], 3);
        let mut t = BitVec::zeros(3);
        t.flip(2);
        assert!(s.solve(&t).is_none());
    }
}

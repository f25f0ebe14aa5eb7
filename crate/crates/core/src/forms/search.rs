//! Exhaustive search for isotropic vectors whose coordinates are GF(2)
//! combinations of given candidate elements.
//!
//! For fixed `Y` coordinates of the binary blocks, `q` is GF(2)-linear in
//! the remaining choices (squaring is additive), so only the `Y` choices are
//! enumerated and each case is a GF(2) linear system.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{FormError, IsotropyWitness, QuadraticForm, Rf};
use crate::gf2field::{lcm, Monomial, Polynomial};
use crate::linalg::{BitVec, Gf2Solver};

/// Default cap on the number of enumerated GF(2) choices for `Y` coordinates.
pub const DEFAULT_SEARCH_BUDGET: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(IsotropyWitness),
    /// Nothing in the search space. Not a proof of anisotropy.
    NoneFound,
    TooLarge { bits: usize, budget: u32 },
}

/// Searches coordinates that are sums of distinct monomials of total degree
/// at most `degree_bound` in the variables occurring in `q`.
pub fn bounded_isotropy_search(q: &QuadraticForm, degree_bound: u32) -> SearchOutcome {
    let support = q.coefficients().fold(0u32, |acc, c| acc | c.support());
    let vars: Vec<usize> = (0..32).filter(|i| support >> i & 1 == 1).collect();
    let basis: Vec<Rf> = Polynomial::monomials_up_to(&vars, degree_bound)
        .into_iter()
        .map(Rf::monomial)
        .collect();
    let bases = alloc::vec![basis; q.dim()];
    bounded_isotropy_search_in(q, &bases, DEFAULT_SEARCH_BUDGET).expect("one basis per coordinate")
}

/// Searches vectors whose `i`-th coordinate is a sum of a subset of `bases[i]`.
pub fn bounded_isotropy_search_in(
    q: &QuadraticForm,
    bases: &[Vec<Rf>],
    budget: u32,
) -> Result<SearchOutcome, FormError> {
    Ok(match search_with_choices(q, bases, budget)? {
        ChoiceOutcome::Found { witness, .. } => SearchOutcome::Found(witness),
        ChoiceOutcome::NoneFound => SearchOutcome::NoneFound,
        ChoiceOutcome::TooLarge { bits, budget } => SearchOutcome::TooLarge { bits, budget },
    })
}

/// Like [`SearchOutcome`], additionally naming the chosen basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChoiceOutcome {
    /// `choices[i]` lists the indices into `bases[i]` summed in coordinate `i`.
    Found { witness: IsotropyWitness, choices: Vec<Vec<usize>> },
    NoneFound,
    TooLarge { bits: usize, budget: u32 },
}

pub fn search_with_choices(
    q: &QuadraticForm,
    bases: &[Vec<Rf>],
    budget: u32,
) -> Result<ChoiceOutcome, FormError> {
    if bases.len() != q.dim() {
        return Err(FormError::DimensionMismatch { expected: q.dim(), found: bases.len() });
    }
    let r = q.blocks().len();
    let off = 2 * r;
    let y_bits: Vec<(usize, usize)> =
        (0..r).flat_map(|k| (0..bases[2 * k + 1].len()).map(move |j| (k, j))).collect();
    if y_bits.len() > budget as usize || y_bits.len() >= 64 {
        return Ok(ChoiceOutcome::TooLarge { bits: y_bits.len(), budget });
    }

    // unknowns: X_k choices and Z_j choices
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for k in 0..r {
        for j in 0..bases[2 * k].len() {
            unknowns.push((2 * k, j));
        }
    }
    for d in 0..q.diagonal().len() {
        for j in 0..bases[off + d].len() {
            unknowns.push((off + d, j));
        }
    }

    // fixed part of each column, the Y-dependent products, and the constant terms
    let mut fixed: Vec<Rf> = Vec::with_capacity(unknowns.len());
    for &(coord, j) in &unknowns {
        let m = &bases[coord][j];
        let c = if coord < off { &q.blocks()[coord / 2].0 } else { &q.diagonal()[coord - off] };
        fixed.push(c.mul_ref(&m.square()));
    }
    let mut cross: Vec<Vec<(usize, Rf)>> = alloc::vec![Vec::new(); unknowns.len()];
    for (u, &(coord, j)) in unknowns.iter().enumerate() {
        if coord < off {
            let k = coord / 2;
            for (bit, &(kk, jj)) in y_bits.iter().enumerate() {
                if kk == k {
                    cross[u].push((bit, bases[coord][j].mul_ref(&bases[2 * k + 1][jj])));
                }
            }
        }
    }
    let constants: Vec<Rf> = y_bits
        .iter()
        .map(|&(k, j)| q.blocks()[k].1.mul_ref(&bases[2 * k + 1][j].square()))
        .collect();

    let mut den = Polynomial::one();
    for e in fixed.iter().chain(cross.iter().flatten().map(|(_, e)| e)).chain(&constants) {
        if !e.den().is_one() {
            den = lcm(&den, e.den());
        }
    }
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let to_poly = |e: &Rf| -> Polynomial {
        e.num().mul_ref(&den.div_exact(e.den()).expect("common denominator"))
    };
    let fixed_p: Vec<Polynomial> = fixed.iter().map(to_poly).collect();
    let cross_p: Vec<Vec<(usize, Polynomial)>> =
        cross.iter().map(|c| c.iter().map(|(b, e)| (*b, to_poly(e))).collect()).collect();
    let const_p: Vec<Polynomial> = constants.iter().map(to_poly).collect();
    for p in fixed_p.iter().chain(cross_p.iter().flatten().map(|(_, p)| p)).chain(&const_p) {
        for m in p.terms() {
            let n = index.len();
            index.entry(*m).or_insert(n);
        }
    }
    let width = index.len();
    let to_bits = |p: &Polynomial| {
        let mut v = BitVec::zeros(width);
        for m in p.terms() {
            v.flip(index[m]);
        }
        v
    };
    let fixed_b: Vec<BitVec> = fixed_p.iter().map(to_bits).collect();
    let cross_b: Vec<Vec<(usize, BitVec)>> =
        cross_p.iter().map(|c| c.iter().map(|(b, p)| (*b, to_bits(p))).collect()).collect();
    let const_b: Vec<BitVec> = const_p.iter().map(to_bits).collect();

    for ybits in 0u64..(1u64 << y_bits.len()) {
        let columns: Vec<BitVec> = fixed_b
            .iter()
            .zip(&cross_b)
            .map(|(f, cs)| {
                let mut col = f.clone();
                for (bit, v) in cs {
                    if ybits >> bit & 1 == 1 {
                        col.xor_assign(v);
                    }
                }
                col
            })
            .collect();
        let choice = if ybits == 0 {
            Gf2Solver::dependency(&columns, width)
        } else {
            let mut target = BitVec::zeros(width);
            for (bit, c) in const_b.iter().enumerate() {
                if ybits >> bit & 1 == 1 {
                    target.xor_assign(c);
                }
            }
            Gf2Solver::new(&columns, width).solve(&target)
        };
        let Some(choice) = choice else { continue };
        let mut vector = alloc::vec![Rf::zero(); q.dim()];
        let mut choices = alloc::vec![Vec::new(); q.dim()];
        for (bit, &(k, j)) in y_bits.iter().enumerate() {
            if ybits >> bit & 1 == 1 {
                vector[2 * k + 1] = vector[2 * k + 1].add_ref(&bases[2 * k + 1][j]);
                choices[2 * k + 1].push(j);
            }
        }
        for (u, &(coord, j)) in unknowns.iter().enumerate() {
            if choice.get(u) {
                vector[coord] = vector[coord].add_ref(&bases[coord][j]);
                choices[coord].push(j);
            }
        }
        for c in &mut choices {
            c.sort_unstable();
        }
        let witness = IsotropyWitness { vector };
        // distinct basis elements can still sum to the zero vector
        if witness.verify(q) {
            return Ok(ChoiceOutcome::Found { witness, choices });
        }
    }
    Ok(ChoiceOutcome::NoneFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::VariableSet;
    use alloc::vec;

    #[test]
    fn small_searches() {
        let f = VariableSet::new(["x", "y"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let q = QuadraticForm::totally_singular(vec![p("1"), p("1")]);
        assert_eq!(
            bounded_isotropy_search(&q, 0),
            SearchOutcome::Found(IsotropyWitness { vector: vec![p("1"), p("1")] })
        );
        let q = QuadraticForm::hyperbolic_plane();
        assert_eq!(
            bounded_isotropy_search(&q, 0),
            SearchOutcome::Found(IsotropyWitness { vector: vec![p("1"), p("0")] })
        );
        let q = QuadraticForm::totally_singular(vec![p("1"), p("x"), p("y"), p("x*y")]);
        assert_eq!(bounded_isotropy_search(&q, 2), SearchOutcome::NoneFound);
    }

    #[test]
    fn binary_blocks() {
        let f = VariableSet::new(["x"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        // [x, x + 1] vanishes at (1, 1); [x, 1/x] = x[1, 1/x^2] is anisotropic
        let q = QuadraticForm::binary(p("x"), p("x + 1"));
        assert_eq!(
            bounded_isotropy_search(&q, 0),
            SearchOutcome::Found(IsotropyWitness { vector: vec![p("1"), p("1")] })
        );
        let q = QuadraticForm::binary(p("x"), p("1/x"));
        assert_eq!(bounded_isotropy_search(&q, 2), SearchOutcome::NoneFound);
    }
}

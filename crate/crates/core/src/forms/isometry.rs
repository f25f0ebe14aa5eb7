use alloc::vec;
use alloc::vec::Vec;

use super::{FormError, QuadraticForm, Rf};
use crate::linalg;

/// A matrix `T` with `q'(v) = q(T v)`, for forms `q` (source) and `q'` (target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryWitness {
    pub matrix: Vec<Vec<Rf>>,
}

impl IsometryWitness {
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rf::one() } else { Rf::zero() }).collect())
            .collect();
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `self` followed by `other`: if `q'(v) = q(S v)` and `q''(v) = q'(T v)`
    /// then `q''(v) = q(S T v)`.
    pub fn then(&self, other: &IsometryWitness) -> IsometryWitness {
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rf::zero(), |acc, k| {
                            if self.matrix[i][k].is_zero() || other.matrix[k][j].is_zero() {
                                acc
                            } else {
                                acc.add_ref(&self.matrix[i][k].mul_ref(&other.matrix[k][j]))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        IsometryWitness { matrix }
    }

    pub fn apply(&self, v: &[Rf]) -> Vec<Rf> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(Rf::zero(), |acc, (t, x)| {
                    if t.is_zero() || x.is_zero() {
                        acc
                    } else {
                        acc.add_ref(&t.mul_ref(x))
                    }
                })
            })
            .collect()
    }

    pub fn map_entries<E>(&self, mut f: impl FnMut(&Rf) -> Result<Rf, E>) -> Result<Self, E> {
        let mut matrix = Vec::with_capacity(self.matrix.len());
        for row in &self.matrix {
            matrix.push(row.iter().map(&mut f).collect::<Result<Vec<_>, E>>()?);
        }
        Ok(IsometryWitness { matrix })
    }
}

/// Checks `q'(v) = q(T v)` as an identity in generic coordinates `v`, and
/// that `T` is invertible.
pub fn check_isometry_witness(
    q: &QuadraticForm,
    q_prime: &QuadraticForm,
    witness: &IsometryWitness,
) -> Result<bool, FormError> {
    let n = q.dim();
    if q_prime.dim() != n {
        return Err(FormError::DimensionMismatch { expected: n, found: q_prime.dim() });
    }
    let pulled = pullback_matrix(&q.coefficient_matrix(), witness)?;
    Ok(pulled == q_prime.coefficient_matrix() && linalg::rank(&witness.matrix, n) == n)
}

/// Upper triangular coefficient matrix of `v ↦ q(T v)`, where `q` is given
/// by its upper triangular coefficient matrix.
///
/// With `q(X) = sum_{i<=j} Q_ij X_i X_j`, the pulled back form has
/// `X_k X_l` coefficient `sum_{i<j} Q_ij (T_ik T_jl + T_il T_jk)` for `k < l`
/// and `X_k^2` coefficient `sum_i Q_ii T_ik^2 + sum_{i<j} Q_ij T_ik T_jk`.
pub fn pullback_matrix(qm: &[Vec<Rf>], witness: &IsometryWitness) -> Result<Vec<Vec<Rf>>, FormError> {
    let n = qm.len();
    let t = &witness.matrix;
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(FormError::DimensionMismatch { expected: n, found: t.len() });
    }
    let mut entries: Vec<(usize, usize, &Rf)> = Vec::new();
    for (i, row) in qm.iter().enumerate() {
        for (j, c) in row.iter().enumerate().skip(i) {
            if !c.is_zero() {
                entries.push((i, j, c));
            }
        }
    }
    let mut out = vec![vec![Rf::zero(); n]; n];
    for k in 0..n {
        for l in k..n {
            let mut acc = Rf::zero();
            for &(i, j, c) in &entries {
                let term = if k == l {
                    if i == j {
                        t[i][k].square()
                    } else {
                        t[i][k].mul_ref(&t[j][k])
                    }
                } else if i == j {
                    continue;
                } else {
                    t[i][k].mul_ref(&t[j][l]).add_ref(&t[i][l].mul_ref(&t[j][k]))
                };
                if !term.is_zero() {
                    acc = acc.add_ref(&c.mul_ref(&term));
                }
            }
            out[k][l] = acc;
        }
    }
    Ok(out)
}

/// `w` with `u + u' = w^2 + w`, certifying `[1, u] ≅ [1, u']`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArfWitness {
    pub w: Rf,
}

pub fn check_arf_witness(u: &Rf, u_prime: &Rf, witness: &ArfWitness) -> bool {
    u.add_ref(u_prime) == witness.w.square().add_ref(&witness.w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::quadratic_pfister;
    use crate::gf2field::VariableSet;
    use alloc::vec;

    #[test]
    fn identity_and_mismatch() {
        let f = VariableSet::new(["x", "y"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let q = QuadraticForm::binary(p("1"), p("x"));
        let q2 = QuadraticForm::binary(p("1"), p("y"));
        let id = IsometryWitness::identity(2);
        assert!(check_isometry_witness(&q, &q, &id).unwrap());
        assert!(!check_isometry_witness(&q, &q2, &id).unwrap());
    }

    #[test]
    fn swapping_a_block_relates_the_two_pfister_forms() {
        let f = VariableSet::new(["u", "v"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let q = quadratic_pfister(&[p("u")], &p("u*v")).unwrap();
        let q2 = quadratic_pfister(&[p("v")], &p("u*v")).unwrap();
        // both are [1, uv] ⊥ [u, v] up to the order of X_2, Y_2
        let z = p("0");
        let o = p("1");
        let t = IsometryWitness {
            matrix: vec![
                vec![o.clone(), z.clone(), z.clone(), z.clone()],
                vec![z.clone(), o.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), o.clone()],
                vec![z.clone(), z.clone(), o.clone(), z.clone()],
            ],
        };
        assert!(check_isometry_witness(&q, &q2, &t).unwrap());
    }

    #[test]
    fn arf_witnesses() {
        let f = VariableSet::new(["x", "u"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        assert!(check_arf_witness(&p("x"), &p("x^4"), &ArfWitness { w: p("x^2 + x") }));
        assert!(check_arf_witness(&p("u"), &p("u"), &ArfWitness { w: p("0") }));
        assert!(!check_arf_witness(&p("x"), &p("x + x^2"), &ArfWitness { w: p("x") }));
    }
}

//! Seeded random elements for the sampled parts of the examples.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use char2forms_core::gf2field::{Polynomial, RationalFunction};

type Rf = RationalFunction;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A random sum of monomials in `vars` of total degree at most `bound`.
pub fn polynomial(rng: &mut ChaCha8Rng, vars: &[usize], bound: u32) -> Rf {
    let monomials = Polynomial::monomials_up_to(vars, bound);
    let k = rng.gen_range(0..=monomials.len().min(4));
    let picked = index::sample(rng, monomials.len(), k);
    Rf::from(Polynomial::from_terms(picked.into_iter().map(|i| monomials[i])))
}

pub fn nonzero_polynomial(rng: &mut ChaCha8Rng, vars: &[usize], bound: u32) -> Rf {
    loop {
        let p = polynomial(rng, vars, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Either a polynomial or a quotient of two.
pub fn rational(rng: &mut ChaCha8Rng, vars: &[usize], bound: u32) -> Rf {
    let num = polynomial(rng, vars, bound);
    if rng.gen_bool(0.5) {
        num
    } else {
        let den = nonzero_polynomial(rng, vars, bound);
        num.div_ref(&den).expect("nonzero denominator")
    }
}

/// A triple over `vars`, not all zero.
pub fn nonzero_triple(rng: &mut ChaCha8Rng, vars: &[usize], bound: u32) -> [Rf; 3] {
    loop {
        let t = [polynomial(rng, vars, bound), polynomial(rng, vars, bound), polynomial(rng, vars, bound)];
        if t.iter().any(|e| !e.is_zero()) {
            return t;
        }
    }
}

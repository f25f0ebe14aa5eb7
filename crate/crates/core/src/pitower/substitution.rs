use alloc::string::String;
use alloc::vec::Vec;

use super::{PiAlgebra, PiError, Rf, RootSpec, TowerSpec};
use crate::forms::QuadraticForm;
use crate::gf2field::{FieldError, Monomial, Polynomial, VariableSet};

/// A root adjoined by an [`Embedding`], with its image in the target field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedRoot {
    pub spec: RootSpec,
    pub image: Rf,
}

/// A field embedding `F_2(source) -> F_2(target)` given by the images of
/// the source variables. `designated` tracks the Laurent variable
/// `(source index, target index)` when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: VariableSet,
    pub target: VariableSet,
    pub images: Vec<Rf>,
    pub designated: Option<(usize, usize)>,
    pub roots: Vec<EmbeddedRoot>,
}

impl Embedding {
    pub fn identity(vars: VariableSet, designated: Option<usize>) -> Self {
        let images = (0..vars.len()).map(Rf::var).collect();
        Self { source: vars.clone(), target: vars, images, designated: designated.map(|t| (t, t)), roots: Vec::new() }
    }

    pub fn apply(&self, f: &Rf) -> Result<Rf, FieldError> {
        f.substitute(&self.images)
    }

    /// Applies to an expression over the source variables followed by the root names.
    pub fn apply_extended(&self, f: &Rf) -> Result<Rf, FieldError> {
        let mut images = self.images.clone();
        images.extend(self.roots.iter().map(|r| r.image.clone()));
        f.substitute(&images)
    }

    pub fn apply_form(&self, q: &QuadraticForm) -> Result<QuadraticForm, FieldError> {
        q.try_map(|c| self.apply(c))
    }

    /// The Laurent variable of the target, if any.
    pub fn target_designated(&self) -> Option<usize> {
        self.designated.map(|(_, t)| t)
    }

    /// Checks `image^{2^e} = radicand` for every adjoined root.
    pub fn verify(&self) -> bool {
        self.roots.iter().all(|r| {
            self.apply_extended(&r.spec.radicand)
                .is_ok_and(|g| r.image.frobenius(r.spec.log2) == g)
        })
    }

    /// True when `x^2 ∈ F` for every `x ∈ E`.
    pub fn is_exponent_one(&self) -> bool {
        if self.roots.iter().any(|r| r.spec.log2 != 1) {
            return false;
        }
        self.tower().and_then(|t| PiAlgebra::build(&t)).is_ok_and(|a| a.exponent() <= 1)
    }

    /// The tower adjoined by this embedding, for the quotient-algebra realization.
    pub fn tower(&self) -> Result<TowerSpec, PiError> {
        let mut spec = TowerSpec::new(self.source.clone());
        for r in &self.roots {
            spec.adjoin(r.spec.name.clone(), r.spec.log2, r.spec.radicand.clone())?;
        }
        Ok(spec)
    }
}

struct Solved {
    var: usize,
    /// `v = (w^{2^e} den + rest) / coeff` where `g = v coeff / den + rest / den`.
    coeff: Polynomial,
    rest: Polynomial,
    den: Polynomial,
}

/// Finds a variable `v` occurring in exactly one term of the numerator of
/// `g`, to the first power, and not in the denominator. Variables whose
/// solution is `g` itself come first.
fn solvable_variable(g: &Rf, designated: Option<usize>) -> Option<Solved> {
    let (num, den) = (g.num(), g.den());
    let mut found: Option<Solved> = None;
    for v in 0..32 {
        if num.support() >> v & 1 == 0 || den.support() >> v & 1 == 1 {
            continue;
        }
        let with_v: Vec<&Monomial> = num.terms().iter().filter(|m| m.exponent(v) > 0).collect();
        if with_v.len() != 1 || with_v[0].exponent(v) != 1 {
            continue;
        }
        let mut m = *with_v[0];
        m.set_exponent(v, 0);
        let coeff = Polynomial::monomial(m);
        let rest = num.filter_terms(|t| t.exponent(v) == 0);
        if let Some(t) = designated {
            if v == t {
                if *g != Rf::var(t) {
                    continue;
                }
            } else if (coeff.support() | rest.support() | den.support()) >> t & 1 == 1 {
                continue;
            }
        }
        let cand = Solved { var: v, coeff, rest, den: den.clone() };
        let simple = cand.coeff.is_one() && cand.den.is_one();
        if simple {
            return Some(cand);
        }
        if found.is_none() {
            found = Some(cand);
        }
    }
    found
}

/// Adjoins `roots` to `F_2(base)` by substitution: for each root the
/// radicand `g` is solved for a variable `v`, which is replaced in place by a
/// new variable `w` with `w^{2^e} = g`. When `g` cannot be solved but `1/g`
/// can, a root `w` of `1/g` is adjoined and the root of `g` is `1/w`.
///
/// The designated Laurent variable `t` may only be replaced when `g = t`;
/// all other substitutions must be free of `t`.
pub fn adjoin_roots(
    base: &VariableSet,
    designated: Option<usize>,
    roots: &[RootSpec],
) -> Result<Embedding, PiError> {
    let mut emb = Embedding::identity(base.clone(), designated);
    let mut tower = TowerSpec::new(base.clone());
    for (k, root) in roots.iter().enumerate() {
        tower.adjoin(root.name.clone(), root.log2, root.radicand.clone())?;
        let g = emb.apply_extended(&root.radicand)?;
        if g.is_zero() {
            return Err(PiError::ZeroRadicand { root: k + 1 });
        }
        let t = emb.target_designated();
        let (solved, inverted) = match solvable_variable(&g, t) {
            Some(s) => (s, false),
            None => {
                let ginv = g.inv()?;
                (solvable_variable(&ginv, t).ok_or(PiError::NoSubstitution { root: k + 1 })?, true)
            }
        };
        let v = solved.var;
        let target = emb.target.with_renamed(v, root.name.clone())?;
        let w = Rf::var(v);
        let num = w.frobenius(root.log2).mul_ref(&Rf::from(solved.den)).add_ref(&Rf::from(solved.rest));
        let expr = num.div_ref(&Rf::from(solved.coeff))?;
        let mut sub: Vec<Rf> = (0..emb.target.len()).map(Rf::var).collect();
        sub[v] = expr;
        for img in emb.images.iter_mut().chain(emb.roots.iter_mut().map(|r| &mut r.image)) {
            *img = img.substitute(&sub)?;
        }
        let image = if inverted { w.inv()? } else { w };
        emb.target = target;
        emb.roots.push(EmbeddedRoot { spec: root.clone(), image });
    }
    debug_assert!(emb.verify());
    Ok(emb)
}

/// One field of the chain `F ⊂ F(g^{1/2}) ⊂ ... ⊂ F(g^{1/2^m})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub level: u32,
    /// `F(g^{1/2^level})` as a quotient algebra.
    pub algebra: PiAlgebra,
    /// `F -> F(g^{1/2^level})` by substitution.
    pub from_base: Embedding,
    /// The previous field into this one, by substitution.
    pub from_previous: Embedding,
}

/// All intermediate fields of the simple extension `F(g^{1/2^m})`, named by
/// `names[j]` for the root `g^{1/2^{j+1}}`.
pub fn simple_filtration(
    base: &VariableSet,
    designated: Option<usize>,
    log2: u32,
    radicand: &Rf,
    names: &[String],
) -> Result<Vec<FiltrationStep>, PiError> {
    if names.len() != log2 as usize {
        return Err(PiError::DimensionMismatch { expected: log2 as usize, found: names.len() });
    }
    let nb = base.len();
    let mut steps = Vec::new();
    let mut specs: Vec<RootSpec> = Vec::new();
    let mut previous = Embedding::identity(base.clone(), designated);
    for level in 0..=log2 {
        if level > 0 {
            let radicand =
                if level == 1 { radicand.clone() } else { Rf::var(nb + level as usize - 2) };
            specs.push(RootSpec { name: names[level as usize - 1].clone(), log2: 1, radicand });
        }
        let from_base = adjoin_roots(base, designated, &specs)?;
        let mut tower = TowerSpec::new(base.clone());
        if level > 0 {
            tower.adjoin(names[level as usize - 1].clone(), level, radicand.clone())?;
        }
        let algebra = PiAlgebra::build(&tower)?;
        let from_previous = if level == 0 {
            previous.clone()
        } else {
            let prev_root = previous
                .roots
                .last()
                .map(|r| r.image.clone())
                .unwrap_or_else(|| previous.apply(radicand).expect("identity substitution"));
            let spec = RootSpec {
                name: names[level as usize - 1].clone(),
                log2: 1,
                radicand: prev_root,
            };
            adjoin_roots(&previous.target, previous.target_designated(), &[spec])?
        };
        previous = from_base.clone();
        steps.push(FiltrationStep { level, algebra, from_base, from_previous });
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn root(tower: &mut TowerSpec, name: &str, log2: u32, g: &str) -> RootSpec {
        let radicand = tower.parse(g).unwrap();
        tower.adjoin(name, log2, radicand.clone()).unwrap();
        RootSpec { name: name.to_string(), log2, radicand }
    }

    #[test]
    fn biquadratic_substitution() {
        let f = VariableSet::new(["x", "y", "z"]).unwrap();
        let mut tower = TowerSpec::new(f.clone());
        let roots = vec![root(&mut tower, "r1", 1, "z"), root(&mut tower, "r2", 1, "x*r1^2 + y")];
        let e = adjoin_roots(&f, None, &roots).unwrap();
        assert!(e.verify());
        assert!(e.is_exponent_one());
        assert_eq!(e.target.names(), &["x", "r2", "r1"]);
        let p = |s: &str| e.target.parse(s).unwrap();
        assert_eq!(e.images, vec![p("x"), p("r2^2 + x*r1^2"), p("r1^2")]);
    }

    #[test]
    fn designated_variable_rules() {
        let f = VariableSet::new(["y", "T"]).unwrap();
        let mut tower = TowerSpec::new(f.clone());
        let roots = vec![root(&mut tower, "τ", 1, "T"), root(&mut tower, "t", 1, "τ")];
        let e = adjoin_roots(&f, Some(1), &roots).unwrap();
        assert_eq!(e.designated, Some((1, 1)));
        assert_eq!(e.images[1], e.target.parse("t^4").unwrap());

        let mut tower = TowerSpec::new(f.clone());
        let bad = vec![root(&mut tower, "s", 1, "T + y*T^2")];
        // y would be solved with an image involving T
        assert_eq!(adjoin_roots(&f, Some(1), &bad), Err(PiError::NoSubstitution { root: 1 }));
    }

    #[test]
    fn inverted_radicand() {
        let f = VariableSet::new(["x", "y"]).unwrap();
        let mut tower = TowerSpec::new(f.clone());
        let roots = vec![root(&mut tower, "s", 1, "1/(x + y^2)")];
        let e = adjoin_roots(&f, None, &roots).unwrap();
        assert!(e.verify());
        assert_eq!(e.roots[0].image, e.target.parse("1/s").unwrap());
    }

    #[test]
    fn fourth_root_filtration() {
        let f = VariableSet::new(["x"]).unwrap();
        let x = f.parse("x").unwrap();
        let names = vec!["s".to_string(), "u".to_string()];
        let steps = simple_filtration(&f, None, 2, &x, &names).unwrap();
        assert_eq!(steps.len(), 3);
        let degrees: Vec<usize> = steps.iter().map(|s| s.algebra.degree()).collect();
        assert_eq!(degrees, vec![1, 2, 4]);
        assert_eq!(steps[2].from_base.images[0], steps[2].from_base.target.parse("u^4").unwrap());
        let step = &steps[2].from_previous;
        assert_eq!(step.images[0], step.target.parse("u^2").unwrap());
        assert!(steps.iter().all(|s| s.from_base.verify() && s.from_previous.verify()));
    }
}

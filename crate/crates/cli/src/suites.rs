//! Seeded property suites over the core crate. Each suite counts its cases
//! and collects a description of every failing one.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use char2forms_core::cayley::CompositionAlgebra;
use char2forms_core::forms::{
    bounded_isotropy_search, evaluate, ts_isotropy, IsometryWitness, QuadraticForm, SearchOutcome, TsIsotropy,
};
use char2forms_core::gf2field::{sqrt, Monomial, RationalFunction, VariableSet};
use char2forms_core::laurent::{residue, residue_form, t_power};
use char2forms_core::pitower::{ExtElement, PiAlgebra, TowerSpec};
use char2forms_core::semilinear::{
    f2_field_equal, f2_span_membership, linear_span_membership, two_independent, Independence,
};

use crate::eval::{composition_check, norm_check};
use crate::report::Check;
use crate::report::Verdict;
use crate::sampling;

type Rf = RationalFunction;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Suite {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Suite {
    fn new(name: &str) -> Self {
        Suite { name: name.into(), ..Default::default() }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        format!("{}: {} cases, {} failures", self.name, self.cases, self.failures.len())
    }
}

fn xyz() -> VariableSet {
    VariableSet::new(["x", "y", "z"]).expect("distinct names")
}

/// Parse/format round trips and field identities on random rational functions.
pub fn gf2_roundtrips(seed: u64, cases: usize) -> Suite {
    let mut s = Suite::new("gf2field round-trips");
    let vars = xyz();
    let mut rng = sampling::rng(seed, 0x6F2);
    for _ in 0..cases {
        let a = sampling::rational(&mut rng, &[0, 1, 2], 2);
        let b = sampling::rational(&mut rng, &[0, 1, 2], 2);
        let text = vars.format(&a);
        let parsed = vars.parse(&text);
        let mut ok = parsed.as_ref() == Ok(&a);
        ok &= a.add_ref(&b).add_ref(&b) == a;
        ok &= sqrt(&a.square()).as_ref() == Ok(&a);
        ok &= a.frobenius(2) == a.square().square();
        if !b.is_zero() {
            ok &= a.mul_ref(&b).div_ref(&b).as_ref() == Ok(&a);
            ok &= b.inv().is_ok_and(|i| i.mul_ref(&b).is_one());
        }
        s.case(ok, || format!("a = {text}, b = {}", vars.format(&b)));
    }
    s
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_exp: u16) -> Rf {
    let exps: Vec<u16> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
    Rf::monomial(Monomial::from_exponents(&exps))
}

/// GF(2)-rank of the exponent parities: monomials are 2-independent exactly
/// when their parity vectors are.
fn parity_independent(ms: &[Rf]) -> bool {
    let mut rows: Vec<u32> = ms
        .iter()
        .map(|m| {
            let t = m.num().leading().expect("nonzero").mul(&m.den().leading().expect("nonzero"));
            (0..16).fold(0u32, |acc, v| acc | (u32::from(t.exponent(v) & 1) << v))
        })
        .collect();
    let mut rank = 0;
    for bit in 0..16 {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r >> bit & 1 == 1 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank == ms.len()
}

/// Every witness produced by the semilinear solvers re-verifies, and the
/// independence verdict on monomials agrees with exponent parities.
pub fn semilinear_witnesses(seed: u64, cases: usize) -> Suite {
    let mut s = Suite::new("semilinear witness re-verification");
    let vars = xyz();
    let mut rng = sampling::rng(seed, 0x5E1);
    for k in 0..cases {
        let n = rng.gen_range(1..=4);
        let ms: Vec<Rf> = (0..n).map(|_| random_monomial(&mut rng, 3, 3)).collect();
        let show = || ms.iter().map(|m| vars.format(m)).collect::<Vec<_>>().join(", ");
        match two_independent(&ms) {
            Ok(Independence::Independent) => s.case(parity_independent(&ms), || format!("monomials [{}] called independent", show())),
            Ok(Independence::Dependent(c)) => {
                s.case(!parity_independent(&ms) && c.verify(&ms), || format!("dependency for [{}] rejected", show()))
            }
            Err(e) => s.case(false, || format!("[{}]: {e}", show())),
        }

        // a known member of F^2(g_1, g_2): b = λ_0^2 + λ_1^2 g_1 + λ_2^2 g_2 + λ_3^2 g_1 g_2
        let g: Vec<Rf> = (0..2).map(|_| sampling::nonzero_polynomial(&mut rng, &[0, 1, 2], 2)).collect();
        let lambda: Vec<Rf> = (0..4).map(|_| sampling::rational(&mut rng, &[0, 1, 2], 1)).collect();
        let products = [Rf::one(), g[0].clone(), g[1].clone(), g[0].mul_ref(&g[1])];
        let b = lambda.iter().zip(&products).fold(Rf::zero(), |acc, (l, p)| acc.add_ref(&l.square().mul_ref(p)));
        match f2_span_membership(&b, &g) {
            Ok(Some(w)) => s.case(w.verify(&b, &g), || format!("case {k}: span witness rejected")),
            Ok(None) => s.case(false, || format!("case {k}: constructed member not found")),
            Err(e) => s.case(false, || format!("case {k}: {e}")),
        }
        match linear_span_membership(&b, &products) {
            Ok(Some(c)) => {
                let back = c.iter().zip(&products).fold(Rf::zero(), |acc, (l, p)| acc.add_ref(&l.square().mul_ref(p)));
                s.case(back == b, || format!("case {k}: linear witness does not reproduce b"))
            }
            Ok(None) => s.case(false, || format!("case {k}: constructed linear member not found")),
            Err(e) => s.case(false, || format!("case {k}: {e}")),
        }
        let doubled = [g[0].clone(), g[1].clone(), b.clone()];
        match f2_field_equal(&g, &doubled) {
            Ok(eq) => s.case(eq.equal() && eq.verify(&g, &doubled), || format!("case {k}: field equality not certified")),
            Err(e) => s.case(false, || format!("case {k}: {e}")),
        }
    }
    s
}

/// `ts_isotropy` against exhaustive search with coordinates of degree at
/// most `bound`: a found vector forces an isotropic verdict, an anisotropic
/// verdict forces an empty search, and every witness evaluates to zero.
pub fn ts_vs_search(seed: u64, cases: usize, bound: u32) -> Suite {
    let mut s = Suite::new("ts_isotropy vs bounded search");
    let vars = VariableSet::new(["x", "y"]).expect("distinct names");
    let mut rng = sampling::rng(seed, 0x75);
    for k in 0..cases {
        let n = rng.gen_range(2..=3);
        let mut c: Vec<Rf> = (0..n).map(|_| sampling::nonzero_polynomial(&mut rng, &[0, 1], 1)).collect();
        if k % 2 == 1 {
            // force a dependency with small coefficients
            let l = sampling::polynomial(&mut rng, &[0, 1], 1);
            let extra = c[0].mul_ref(&l.square()).add_ref(&c[1]);
            if !extra.is_zero() {
                c.push(extra);
            }
        }
        let q = QuadraticForm::totally_singular(c.clone());
        let show = || c.iter().map(|e| vars.format(e)).collect::<Vec<_>>().join(", ");
        let ts = ts_isotropy(&q);
        let search = bounded_isotropy_search(&q, bound);
        let ok = match (&ts, &search) {
            (Ok(TsIsotropy::Isotropic(w)), SearchOutcome::Found(v)) => w.verify(&q) && v.verify(&q),
            (Ok(TsIsotropy::Isotropic(w)), _) => w.verify(&q),
            (Ok(TsIsotropy::Anisotropic), SearchOutcome::Found(_)) => false,
            (Ok(TsIsotropy::Anisotropic), _) => true,
            (Err(_), _) => false,
        };
        s.case(ok, || format!("⟨{}⟩: {ts:?} vs {search:?}", show()));
    }
    s
}

/// Two quasi-unimodular representations of one form over `F((t))` have
/// isometric residue forms.
///
/// Totally singular case: `c' = Λ^2 c` with `Λ` upper triangular and unit
/// diagonal, compared through `F^2`-spans. Nonsingular case: a shear
/// `Y ↦ Y + tμX` of `[a, t⁻¹b]`, whose residue coefficient must stay `ā`.
pub fn residue_uniqueness(seed: u64, cases: usize) -> Suite {
    let mut s = Suite::new("residue-form uniqueness");
    let vars = VariableSet::new(["x", "y", "z", "t"]).expect("distinct names");
    let t = 3;
    let base = [0, 1, 2];
    let mut rng = sampling::rng(seed, 0x43);
    let tt = Rf::var(t);
    let mut made = 0;
    while made < cases {
        let n = rng.gen_range(2..=3);
        // units: residue part in F, higher terms in t
        let c: Vec<Rf> = (0..n)
            .map(|_| {
                let u0 = sampling::nonzero_polynomial(&mut rng, &base, 1);
                u0.add_ref(&tt.mul_ref(&sampling::polynomial(&mut rng, &base, 1)))
            })
            .collect();
        let residues: Vec<Rf> = c.iter().map(|e| residue(e, t).expect("unit")).collect();
        if !matches!(ts_isotropy(&QuadraticForm::totally_singular(residues.clone())), Ok(TsIsotropy::Anisotropic)) {
            continue;
        }
        made += 1;
        let mut lambda = vec![vec![Rf::zero(); n]; n];
        for (i, row) in lambda.iter_mut().enumerate() {
            row[i] = Rf::one().add_ref(&tt.mul_ref(&sampling::polynomial(&mut rng, &base, 1)));
            for e in row.iter_mut().skip(i + 1) {
                *e = sampling::polynomial(&mut rng, &[0, 1, 2, 3], 1);
            }
        }
        let c2: Vec<Rf> = lambda
            .iter()
            .map(|row| row.iter().zip(&c).fold(Rf::zero(), |acc, (l, e)| acc.add_ref(&l.square().mul_ref(e))))
            .collect();
        let q = QuadraticForm::totally_singular(c.clone());
        let q2 = QuadraticForm::totally_singular(c2.clone());
        let show = || c2.iter().map(|e| vars.format(e)).collect::<Vec<_>>().join(", ");
        // q2(v) = q(Λ^T v)
        let mut witness = IsometryWitness::identity(n);
        for (i, row) in lambda.iter().enumerate() {
            for (j, l) in row.iter().enumerate() {
                witness.matrix[j][i] = l.clone();
            }
        }
        let probe: Vec<Rf> = (0..n).map(|_| sampling::polynomial(&mut rng, &[0, 1, 2, 3], 1)).collect();
        let isometric = evaluate(&q2, &probe) == evaluate(&q, &witness.apply(&probe));
        let same_span = match residue_form(&q2, t) {
            Ok(r2) => {
                let r2 = r2.diagonal().to_vec();
                let into = |a: &[Rf], b: &[Rf]| {
                    a.iter().all(|e| matches!(linear_span_membership(e, b), Ok(Some(_))))
                };
                into(&r2, &residues) && into(&residues, &r2)
            }
            Err(_) => false,
        };
        s.case(isometric && same_span, || format!("⟨{}⟩", show()));

        // [a, t⁻¹b] sheared by Y ↦ Y + tμX
        let a = c[0].clone();
        let b = c[1].clone();
        let mu = sampling::polynomial(&mut rng, &base, 1);
        let l = tt.mul_ref(&mu);
        let tinv = t_power(t, -1);
        let q = QuadraticForm::binary(a.clone(), tinv.mul_ref(&b));
        let a2 = a.add_ref(&l).add_ref(&l.square().mul_ref(&tinv).mul_ref(&b));
        let q2 = QuadraticForm::binary(a2.clone(), tinv.mul_ref(&b));
        let mut shear = IsometryWitness::identity(2);
        shear.matrix[1][0] = l.clone();
        let probe: Vec<Rf> = (0..2).map(|_| sampling::polynomial(&mut rng, &[0, 1, 2, 3], 1)).collect();
        let isometric = evaluate(&q2, &probe) == evaluate(&q, &shear.apply(&probe));
        let same = residue(&a2, t).as_ref() == residue(&a, t).as_ref();
        s.case(isometric && same, || format!("[{}, t⁻¹ {}] with μ = {}", vars.format(&a), vars.format(&b), vars.format(&mu)));
    }
    s
}

fn random_element(rng: &mut ChaCha8Rng, alg: &PiAlgebra, base: &[usize]) -> ExtElement {
    let coords = (0..alg.degree()).map(|_| sampling::polynomial(rng, base, 1)).collect();
    alg.from_coords(coords).expect("right length")
}

/// Frobenius additivity and multiplicativity, `pow(a, 2^k) = a^{2^k}`,
/// minimality of `exponent_of`, the exponent bound and inverses.
pub fn frobenius_laws(seed: u64, cases: usize) -> Suite {
    let mut s = Suite::new("Frobenius and exponent laws");
    let base = xyz();
    let mut towers = Vec::new();
    let mut sweedler = TowerSpec::new(base.clone());
    sweedler.adjoin("ζ", 2, base.get("z").expect("declared")).expect("valid root");
    let chi = sweedler.parse("x*ζ^2 + y").expect("parses");
    sweedler.adjoin("χ", 1, chi).expect("valid root");
    towers.push(sweedler);
    let mut biquadratic = TowerSpec::new(base.clone());
    biquadratic.adjoin("r", 1, base.get("x").expect("declared")).expect("valid root");
    biquadratic.adjoin("s", 1, base.get("y").expect("declared")).expect("valid root");
    towers.push(biquadratic);
    let mut simple = TowerSpec::new(base.clone());
    simple.adjoin("w", 3, base.parse("x*y + z").expect("parses")).expect("valid root");
    towers.push(simple);

    let mut rng = sampling::rng(seed, 0xF40);
    for (ti, spec) in towers.iter().enumerate() {
        let alg = match PiAlgebra::build(spec) {
            Ok(a) => a,
            Err(e) => {
                s.case(false, || format!("tower {ti}: {e}"));
                continue;
            }
        };
        let emax = alg.exponent();
        for k in 0..cases {
            let a = random_element(&mut rng, &alg, &[0, 1, 2]);
            let b = random_element(&mut rng, &alg, &[0, 1, 2]);
            let n = rng.gen_range(1..=3);
            let mut ok = alg.frobenius(&alg.add(&a, &b), n) == alg.add(&alg.frobenius(&a, n), &alg.frobenius(&b, n));
            ok &= alg.frobenius(&alg.mul(&a, &b), n) == alg.mul(&alg.frobenius(&a, n), &alg.frobenius(&b, n));
            ok &= alg.square(&a) == alg.mul(&a, &a);
            ok &= alg.pow(&a, 1 << n) == alg.frobenius(&a, n);
            let ea = alg.exponent_of(&a);
            let eb = alg.exponent_of(&b);
            ok &= ea <= emax && alg.as_scalar(&alg.frobenius(&a, ea)).is_some();
            ok &= ea == 0 || alg.as_scalar(&alg.frobenius(&a, ea - 1)).is_none();
            ok &= alg.exponent_of(&alg.add(&a, &b)) <= ea.max(eb);
            ok &= alg.exponent_of(&alg.mul(&a, &b)) <= ea.max(eb);
            if !a.is_zero() {
                ok &= alg.inverse(&a).is_ok_and(|i| alg.mul(&a, &i) == alg.one());
            }
            s.case(ok, || format!("tower {ti}, case {k}: a = {}, b = {}", alg.format(&a), alg.format(&b)));
        }
        let socle_ok = alg.socle().basis.iter().all(|e| alg.as_scalar(&alg.square(e)).is_some());
        s.case(socle_ok, || format!("tower {ti}: socle element with non-scalar square"));
    }
    s
}

/// Structure constants, the composition law on seeded pairs and the norm
/// form for `(x, y]` and `(x, y, z]` over `F_2(x, y, z)`.
pub fn composition(seed: u64, pairs: usize) -> Suite {
    let mut s = Suite::new(&format!("composition algebras, {pairs} pairs each"));
    let vars = xyz();
    let (x, y, z) = (Rf::var(0), Rf::var(1), Rf::var(2));
    let algebras = [
        ("(x, y]", CompositionAlgebra::quaternion(x.clone(), y.clone())),
        ("(x, y, z]", CompositionAlgebra::octonion(x.clone(), y.clone(), z.clone())),
    ];
    for (label, alg) in algebras {
        let alg = match alg {
            Ok(a) => a,
            Err(e) => {
                s.case(false, || format!("{label}: {e}"));
                continue;
            }
        };
        let params = alg.params();
        let (b, c) = (&params[params.len() - 2], &params[params.len() - 1]);
        let e = |k| alg.basis_element(k);
        let mul = |u, v| alg.multiply(u, v).expect("same algebra");
        let (i, j) = (e(1), e(2));
        let ii = mul(&i, &i);
        s.case(ii == alg.add(&i, &alg.scalar(c.clone())).expect("same algebra"), || format!("{label}: i^2 ≠ i + c"));
        s.case(mul(&j, &j) == alg.scalar(b.clone()), || format!("{label}: j^2 ≠ b"));
        let ij = mul(&i, &j);
        s.case(mul(&j, &i) == alg.add(&ij, &j).expect("same algebra"), || format!("{label}: ji ≠ ij + j"));
        s.case(ij == e(3), || format!("{label}: ij is not the fourth basis element"));
        if params.len() == 3 {
            let l = e(4);
            s.case(mul(&l, &l) == alg.scalar(params[0].clone()), || format!("{label}: l^2 ≠ a"));
        }
        let norm = norm_check(Check::new("norm", "norm form", Verdict::Holds), &alg, &vars);
        s.case(norm.matches(), || format!("{label}: norm form differs from the Pfister expansion"));
        let comp = composition_check(
            Check::new("composition", "N(xy) = N(x)N(y)", Verdict::Holds),
            &alg,
            &vars,
            &[0, 1, 2],
            pairs,
            seed,
        );
        s.case(comp.matches(), || format!("{label}: composition law fails: {}", crate::report::canonical(&comp.to_json())));
    }
    s
}

/// All criterion-8 suites with their standard sizes.
pub fn property_suites(seed: u64) -> Vec<Suite> {
    vec![
        gf2_roundtrips(seed, 500),
        semilinear_witnesses(seed, 100),
        ts_vs_search(seed, 100, 2),
        residue_uniqueness(seed, 40),
        frobenius_laws(seed, 40),
    ]
}

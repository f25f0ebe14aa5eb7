//! Runs a parsed session: builds the fields, maps forms and algebras into
//! the fields they are checked over, and turns every check into a report
//! entry.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde_json::json;

use char2forms_core::cayley::{CompositionAlgebra, DivisionVerdict};
use char2forms_core::forms::{
    bounded_isotropy_search, pfister_products, pullback_matrix, quadratic_pfister, quasi_pfister,
    quasi_pfister_isometric, ts_isotropy_with, Decision, PfisterSpec, QuadraticForm, SearchOutcome, TsIsotropy,
};
use char2forms_core::gf2field::{RationalFunction, VariableSet};
use char2forms_core::laurent::{decide, DecideContext};
use char2forms_core::pitower::{adjoin_roots, simple_filtration, Embedding, PiAlgebra, RootSpec, TowerSpec};
use char2forms_core::semilinear::{two_independent_with, Independence, Limits};

use crate::report::{elems, fmt as fmt_elem, Certificate, Check, Report, Verdict};
use crate::sampling;
use crate::session::{parse_session, CheckStmt, Decl, Expr, FormExpr, ParseError, Pos, Prop, Session, Statement};
use crate::Options;

type Rf = RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SessionError {
    Parse(ParseError),
    Eval { line: usize, col: usize, message: String },
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionError::Parse(e) => write!(f, "{e}"),
            SessionError::Eval { line, col, message } => write!(f, "{line}:{col}: {message}"),
        }
    }
}

impl std::error::Error for SessionError {}

impl From<ParseError> for SessionError {
    fn from(e: ParseError) -> Self {
        SessionError::Parse(e)
    }
}

fn err_at(pos: Pos, message: impl fmt::Display) -> SessionError {
    SessionError::Eval { line: pos.line, col: pos.col, message: message.to_string() }
}

/// A root known to a field: `name = radicand^(1/degree)` with the radicand
/// over the namespace.
#[derive(Clone, Debug)]
struct KnownRoot {
    degree: u64,
    radicand: Rf,
    index: usize,
}

/// Coordinates used to compute in a field.
#[derive(Clone, Debug)]
pub struct Realization {
    pub vars: VariableSet,
    /// Image of every namespace variable.
    pub ns_images: Vec<Rf>,
    /// Laurent variables, innermost first.
    pub laurent: Vec<usize>,
    /// Images of the parent's realization variables.
    pub from_parent: Vec<Rf>,
    pub description: String,
}

impl Realization {
    /// A rational function field with the given Laurent variables, innermost first.
    pub fn plain(vars: VariableSet, laurent: Vec<usize>) -> Self {
        let n = vars.len();
        let description = match laurent.first() {
            Some(&t) => format!("F_2({}) with Laurent variable {}", vars.names().join(", "), vars.name(t)),
            None => format!("F_2({})", vars.names().join(", ")),
        };
        Realization {
            ns_images: (0..n).map(Rf::var).collect(),
            from_parent: (0..n).map(Rf::var).collect(),
            vars,
            laurent,
            description,
        }
    }

    /// The target of a substitution embedding, keeping its Laurent variable.
    pub fn from_embedding(emb: &Embedding) -> Self {
        let base = Realization::plain(emb.source.clone(), emb.designated.map(|(s, _)| s).into_iter().collect());
        realization_from_embedding(&base, emb)
    }

    pub fn designated(&self) -> Option<usize> {
        self.laurent.first().copied()
    }

    /// Laurent variables first, then the rest.
    pub fn decide_context(&self) -> DecideContext {
        let mut c = self.laurent.clone();
        c.extend((0..self.vars.len()).filter(|v| !self.laurent.contains(v)));
        DecideContext::with_candidates(c)
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    pub name: String,
    /// Names usable in expressions: the parent's names followed by the new ones.
    pub ns: VariableSet,
    pub parent: Option<String>,
    roots: Vec<KnownRoot>,
    pub real: Result<Realization, String>,
    /// The extension over the parent, for extension fields.
    pub tower: Option<TowerSpec>,
}

impl FieldCtx {
    fn realization(&self, pos: Pos) -> Result<&Realization, SessionError> {
        self.real.as_ref().map_err(|e| err_at(pos, format!("field {} has no realization: {e}", self.name)))
    }

    /// Parses `e` over the namespace, resolving `root(d, g)` references.
    fn parse_ns(&self, e: &Expr) -> Result<Rf, SessionError> {
        let text = self.resolve_roots(&e.text).map_err(|m| err_at(e.pos, m))?;
        self.ns.parse(&text).map_err(|m| err_at(e.pos, m))
    }

    fn resolve_roots(&self, text: &str) -> Result<String, String> {
        let Some(k) = find_root_call(text) else {
            return Ok(text.to_string());
        };
        let open = k + "root(".len();
        let close = matching_paren(text, open - 1).ok_or("unbalanced `root(`")?;
        let inner = &text[open..close];
        let comma = top_level_comma(inner).ok_or("expected `root(degree, radicand)`")?;
        let degree: u64 = inner[..comma].trim().parse().map_err(|_| "bad root degree".to_string())?;
        let radicand = self.ns.parse(&self.resolve_roots(&inner[comma + 1..])?).map_err(|e| e.to_string())?;
        let hit = self
            .roots
            .iter()
            .find(|r| r.radicand == radicand && r.degree % degree == 0)
            .ok_or_else(|| format!("no adjoined root matches `root({})`", inner.trim()))?;
        let name = self.ns.name(hit.index);
        let replacement = match hit.degree / degree {
            1 => name.to_string(),
            p => format!("({name}^{p})"),
        };
        let rest = self.resolve_roots(&text[close + 1..])?;
        Ok(format!("{}{replacement}{rest}", &text[..k]))
    }

    /// Maps an element over the namespace into the realization.
    pub fn to_real(&self, f: &Rf, pos: Pos) -> Result<Rf, SessionError> {
        let r = self.realization(pos)?;
        f.substitute(&r.ns_images).map_err(|e| err_at(pos, e))
    }
}

fn find_root_call(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut from = 0;
    while let Some(k) = text[from..].find("root") {
        let k = from + k;
        let before_ok = k == 0 || !text[..k].chars().next_back().is_some_and(|c| c.is_alphanumeric() || c == '_');
        let after = text[k + 4..].trim_start();
        if before_ok && after.starts_with('(') {
            let ws = text[k + 4..].len() - after.len();
            if ws == 0 {
                return Some(k);
            }
        }
        from = k + 4;
        if from >= bytes.len() {
            break;
        }
    }
    None
}

fn matching_paren(text: &str, open: usize) -> Option<usize> {
    let mut depth = 0;
    for (k, c) in text[open..].char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(open + k);
                }
            }
            _ => {}
        }
    }
    None
}

fn top_level_comma(text: &str) -> Option<usize> {
    let mut depth = 0;
    for (k, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(k),
            _ => {}
        }
    }
    None
}

/// A form with coefficients over some field. Bilinear forms are carried
/// as their diagonal together with the associated quadratic form.
#[derive(Clone, Debug)]
pub struct FormVal {
    pub quadratic: QuadraticForm,
    /// Diagonal of the bilinear form, for `bpf` and `diag`.
    pub bilinear: Option<Vec<Rf>>,
    /// Slots when the form is a Pfister form.
    pub pfister: Option<PfisterSpec>,
}

impl FormVal {
    fn quadratic(q: QuadraticForm) -> Self {
        FormVal { quadratic: q, bilinear: None, pfister: None }
    }

    fn try_map(&self, f: impl Fn(&Rf) -> Result<Rf, SessionError>) -> Result<FormVal, SessionError> {
        Ok(FormVal {
            quadratic: self.quadratic.try_map(&f)?,
            bilinear: self.bilinear.as_ref().map(|d| d.iter().map(&f).collect()).transpose()?,
            pfister: self
                .pfister
                .as_ref()
                .map(|p| {
                    p.slots
                        .iter()
                        .map(&f)
                        .collect::<Result<Vec<_>, _>>()
                        .map(|slots| PfisterSpec { kind: p.kind, slots })
                })
                .transpose()?,
        })
    }
}

#[derive(Clone, Debug)]
struct FormEntry {
    field: String,
    value: FormVal,
}

#[derive(Clone, Debug)]
struct AlgebraEntry {
    field: String,
    /// `[b, c]` or `[a, b, c]` over the namespace.
    params: Vec<Rf>,
    pos: Pos,
}

/// Interpreter state.
#[derive(Default)]
pub struct Env {
    pub fields: BTreeMap<String, FieldCtx>,
    forms: BTreeMap<String, FormEntry>,
    algebras: BTreeMap<String, AlgebraEntry>,
}

pub fn run_session_text(name: &str, text: &str, opts: &Options) -> Result<Report, SessionError> {
    let session = parse_session(text)?;
    run_session(name, &session, opts)
}

pub fn run_session(name: &str, session: &Session, opts: &Options) -> Result<Report, SessionError> {
    let mut env = Env::default();
    let mut report = Report::new(name, opts.seed, opts.degree_bound);
    let mut k = 0;
    for stmt in &session.statements {
        match stmt {
            Statement::Decl(d, pos) => env.declare(d, *pos)?,
            Statement::Check(c, pos) => {
                k += 1;
                let start = Instant::now();
                let mut check = env.check(c, *pos, k, opts)?;
                if opts.timing {
                    check.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                }
                report.push(check);
            }
        }
    }
    Ok(report)
}

impl Env {
    pub fn field(&self, name: &str) -> Option<&FieldCtx> {
        self.fields.get(name)
    }

    fn declare(&mut self, d: &Decl, pos: Pos) -> Result<(), SessionError> {
        match d {
            Decl::Field { name, vars } => {
                let set = VariableSet::new(vars.iter().cloned()).map_err(|e| err_at(pos, e))?;
                let n = set.len();
                let real = Realization {
                    vars: set.clone(),
                    ns_images: (0..n).map(Rf::var).collect(),
                    laurent: Vec::new(),
                    from_parent: Vec::new(),
                    description: format!("F_2({})", vars.join(", ")),
                };
                self.fields.insert(
                    name.clone(),
                    FieldCtx { name: name.clone(), ns: set, parent: None, roots: Vec::new(), real: Ok(real), tower: None },
                );
            }
            Decl::Laurent { name, base, var } => {
                let parent = &self.fields[base];
                let p = parent.realization(pos)?;
                let mut ns = parent.ns.clone();
                ns.push(var.clone()).map_err(|e| err_at(pos, e))?;
                let mut vars = p.vars.clone();
                let t = vars.push(var.clone()).map_err(|e| err_at(pos, e))?;
                let mut ns_images = p.ns_images.clone();
                ns_images.push(Rf::var(t));
                let mut laurent = vec![t];
                laurent.extend(&p.laurent);
                let real = Realization {
                    from_parent: (0..p.vars.len()).map(Rf::var).collect(),
                    description: format!("{} with Laurent variable {var}", p.description),
                    vars,
                    ns_images,
                    laurent,
                };
                let ctx = FieldCtx {
                    name: name.clone(),
                    ns,
                    parent: Some(base.clone()),
                    roots: parent.roots.clone(),
                    real: Ok(real),
                    tower: None,
                };
                self.fields.insert(name.clone(), ctx);
            }
            Decl::Ext { name, base, roots } => {
                let parent = self.fields[base].clone();
                let p = parent.realization(pos)?.clone();
                let mut ctx = FieldCtx {
                    name: name.clone(),
                    ns: parent.ns.clone(),
                    parent: Some(base.clone()),
                    roots: parent.roots.clone(),
                    real: Err(String::new()),
                    tower: None,
                };
                let mut tower = TowerSpec::new(p.vars.clone());
                let mut specs = Vec::new();
                let nb = p.vars.len();
                let ns_base = parent.ns.len();
                for (j, root) in roots.iter().enumerate() {
                    let g_ns = ctx.parse_ns(&root.radicand)?;
                    let root_name = match &root.name {
                        Some(n) => n.clone(),
                        None => ctx.ns.fresh_name(&format!("root{}", j + 1)),
                    };
                    if p.vars.index(&root_name).is_some() {
                        return Err(err_at(root.radicand.pos, format!("root name `{root_name}` is already a variable")));
                    }
                    let mut images = p.ns_images.clone();
                    images.extend((0..j).map(|i| Rf::var(nb + i)));
                    let g = g_ns.substitute(&images).map_err(|e| err_at(root.radicand.pos, e))?;
                    let log2 = root.degree.trailing_zeros();
                    tower.adjoin(root_name.clone(), log2, g.clone()).map_err(|e| err_at(root.radicand.pos, e))?;
                    specs.push(RootSpec { name: root_name.clone(), log2, radicand: g });
                    let index = ctx.ns.push(root_name).map_err(|e| err_at(root.radicand.pos, e))?;
                    ctx.roots.push(KnownRoot { degree: root.degree, radicand: g_ns, index });
                }
                debug_assert_eq!(ctx.ns.len(), ns_base + roots.len());
                PiAlgebra::build(&tower).map_err(|e| err_at(pos, e))?;
                ctx.real = adjoin_roots(&p.vars, p.designated(), &specs)
                    .map(|emb| realization_from_embedding(&p, &emb))
                    .map_err(|e| e.to_string());
                ctx.tower = Some(tower);
                self.fields.insert(name.clone(), ctx);
            }
            Decl::Form { name, form, over } => {
                let value = self.form_value(form, &self.fields[over], pos)?;
                self.forms.insert(name.clone(), FormEntry { field: over.clone(), value });
            }
            Decl::Quat { name, b, c, over } => {
                let f = &self.fields[over];
                let params = vec![f.parse_ns(b)?, f.parse_ns(c)?];
                if params[0].is_zero() {
                    return Err(err_at(b.pos, "quaternion parameter b must be nonzero"));
                }
                self.algebras.insert(name.clone(), AlgebraEntry { field: over.clone(), params, pos });
            }
            Decl::Oct { name, a, b, c, over } => {
                let f = &self.fields[over];
                let params = vec![f.parse_ns(a)?, f.parse_ns(b)?, f.parse_ns(c)?];
                if params[0].is_zero() || params[1].is_zero() {
                    return Err(err_at(a.pos, "octonion parameters a, b must be nonzero"));
                }
                self.algebras.insert(name.clone(), AlgebraEntry { field: over.clone(), params, pos });
            }
        }
        Ok(())
    }

    /// Evaluates a form over the namespace of `field`.
    fn form_value(&self, f: &FormExpr, field: &FieldCtx, pos: Pos) -> Result<FormVal, SessionError> {
        let list = |v: &[Expr]| v.iter().map(|e| field.parse_ns(e)).collect::<Result<Vec<_>, _>>();
        Ok(match f {
            FormExpr::Named(n) => {
                let entry = self.forms.get(n).ok_or_else(|| err_at(pos, format!("`{n}` is not a form")))?;
                if !self.descends(&field.name, &entry.field) {
                    return Err(err_at(pos, format!("form `{n}` is not defined over a subfield of {}", field.name)));
                }
                entry.value.clone()
            }
            FormExpr::Bpf(v) => {
                let slots = list(v)?;
                if slots.iter().any(Rf::is_zero) {
                    return Err(err_at(pos, "bilinear Pfister slots must be nonzero"));
                }
                let d = pfister_products(&slots);
                FormVal {
                    quadratic: QuadraticForm::totally_singular(d.clone()),
                    bilinear: Some(d),
                    pfister: Some(PfisterSpec::bilinear(slots)),
                }
            }
            FormExpr::Qpf(v, c) => {
                let slots = list(v)?;
                let c = field.parse_ns(c)?;
                let q = quadratic_pfister(&slots, &c).map_err(|e| err_at(pos, e))?;
                FormVal { quadratic: q, bilinear: None, pfister: Some(PfisterSpec::quadratic(slots, c)) }
            }
            FormExpr::Quasi(v) => {
                let slots = list(v)?;
                FormVal { quadratic: quasi_pfister(&slots), bilinear: None, pfister: Some(PfisterSpec::quasi(slots)) }
            }
            FormExpr::Diag(v) => {
                let d = list(v)?;
                FormVal { quadratic: QuadraticForm::totally_singular(d.clone()), bilinear: Some(d), pfister: None }
            }
            FormExpr::Bin(a, b) => {
                FormVal::quadratic(QuadraticForm::binary(field.parse_ns(a)?, field.parse_ns(b)?))
            }
            FormExpr::Sum(parts) => {
                let mut q = QuadraticForm::default();
                for p in parts {
                    q = q.orthogonal_sum(&self.form_value(p, field, pos)?.quadratic);
                }
                FormVal::quadratic(q)
            }
            FormExpr::Scale(a, inner) => {
                let a = field.parse_ns(a)?;
                let q = self.form_value(inner, field, pos)?.quadratic.scale(&a).map_err(|e| err_at(pos, e))?;
                FormVal::quadratic(q)
            }
            FormExpr::Tensor(b, q) => {
                let b = self.form_value(b, field, pos)?;
                let Some(diag) = b.bilinear else {
                    return Err(err_at(pos, "first factor of a tensor product must be bilinear"));
                };
                let q = self.form_value(q, field, pos)?.quadratic;
                let mut out = QuadraticForm::default();
                for a in &diag {
                    out = out.orthogonal_sum(&q.scale(a).map_err(|e| err_at(pos, e))?);
                }
                FormVal::quadratic(out)
            }
        })
    }

    /// True when `field` is `ancestor` or an extension of it.
    fn descends(&self, field: &str, ancestor: &str) -> bool {
        let mut cur = Some(field);
        while let Some(name) = cur {
            if name == ancestor {
                return true;
            }
            cur = self.fields.get(name).and_then(|f| f.parent.as_deref());
        }
        false
    }

    /// The field a check runs over.
    fn check_field(&self, c: &CheckStmt, home: Option<&str>, pos: Pos) -> Result<&FieldCtx, SessionError> {
        let name = match (&c.over, home) {
            (Some(o), _) => o.as_str(),
            (None, Some(h)) => h,
            (None, None) => return Err(err_at(pos, "`over FIELD` is required here")),
        };
        if let Some(h) = home {
            if !self.descends(name, h) {
                return Err(err_at(pos, format!("{name} is not an extension of {h}")));
            }
        }
        Ok(&self.fields[name])
    }

    fn home_of(&self, f: &FormExpr) -> Option<&str> {
        match f {
            FormExpr::Named(n) => self
                .forms
                .get(n)
                .map(|e| e.field.as_str())
                .or_else(|| self.algebras.get(n).map(|a| a.field.as_str())),
            FormExpr::Sum(v) => v.iter().find_map(|p| self.home_of(p)),
            FormExpr::Scale(_, q) => self.home_of(q),
            FormExpr::Tensor(b, q) => self.home_of(b).or_else(|| self.home_of(q)),
            _ => None,
        }
    }

    fn check(&self, c: &CheckStmt, pos: Pos, k: usize, opts: &Options) -> Result<Check, SessionError> {
        let id = format!("{k:02}-{}", c.prop.keyword());
        let claim = c.to_string();
        let expected = match c.prop {
            Prop::Anisotropic => Verdict::ProvedAnisotropic,
            Prop::Isotropic => Verdict::Isotropic,
            Prop::Isometric => Verdict::Isometric,
            Prop::Division => Verdict::Division,
            Prop::Split => Verdict::Split,
            _ => Verdict::Holds,
        };
        let check = Check::new(id, claim, expected);
        match c.prop {
            Prop::Anisotropic | Prop::Isotropic => {
                let home = self.home_of(&c.args[0]);
                let field = self.check_field(c, home, pos)?;
                let real = field.realization(pos)?;
                let form = self.form_value(&c.args[0], field, pos)?.try_map(|e| field.to_real(e, pos))?;
                Ok(decide_form(check, &form, real, opts).realization(real.description.clone()))
            }
            Prop::Isometric => {
                let home = self.home_of(&c.args[0]).or_else(|| self.home_of(&c.args[1]));
                let field = self.check_field(c, home, pos)?;
                let real = field.realization(pos)?;
                let p = self.form_value(&c.args[0], field, pos)?.try_map(|e| field.to_real(e, pos))?;
                let q = self.form_value(&c.args[1], field, pos)?.try_map(|e| field.to_real(e, pos))?;
                Ok(isometric(check, &p, &q, real).realization(real.description.clone()))
            }
            Prop::Division | Prop::Split => {
                let FormExpr::Named(n) = &c.args[0] else {
                    return Err(err_at(pos, "expected an algebra name"));
                };
                let entry = self.algebras.get(n).ok_or_else(|| err_at(pos, format!("`{n}` is not an algebra")))?;
                let field = self.check_field(c, Some(&entry.field), pos)?;
                let real = field.realization(pos)?;
                let params: Vec<Rf> =
                    entry.params.iter().map(|e| field.to_real(e, entry.pos)).collect::<Result<_, _>>()?;
                let alg = build_algebra(&params).map_err(|e| err_at(pos, e))?;
                Ok(division(check, &alg, real, opts.degree_bound).realization(real.description.clone()))
            }
            Prop::Composition | Prop::Norm => {
                let FormExpr::Named(n) = &c.args[0] else {
                    return Err(err_at(pos, "expected an algebra name"));
                };
                let entry = self.algebras.get(n).ok_or_else(|| err_at(pos, format!("`{n}` is not an algebra")))?;
                let field = self.check_field(c, Some(&entry.field), pos)?;
                let real = field.realization(pos)?;
                let params: Vec<Rf> =
                    entry.params.iter().map(|e| field.to_real(e, entry.pos)).collect::<Result<_, _>>()?;
                let alg = build_algebra(&params).map_err(|e| err_at(pos, e))?;
                Ok(if c.prop == Prop::Norm {
                    norm_check(check, &alg, &real.vars)
                } else {
                    let vars: Vec<usize> = (0..real.vars.len()).collect();
                    composition_check(check, &alg, &real.vars, &vars, 20, opts.seed)
                })
            }
            Prop::Degree | Prop::Exponent | Prop::Socle | Prop::Filtration => {
                let FormExpr::Named(n) = &c.args[0] else {
                    return Err(err_at(pos, "expected an extension name"));
                };
                let field = self.fields.get(n).ok_or_else(|| err_at(pos, format!("`{n}` is not a field")))?;
                let Some(tower) = &field.tower else {
                    return Err(err_at(pos, format!("`{n}` is not an extension")));
                };
                if let Some(o) = &c.over {
                    if field.parent.as_deref() != Some(o.as_str()) {
                        return Err(err_at(pos, format!("`{n}` is not an extension of {o}")));
                    }
                }
                extension_check(check, c.prop, c.value, tower, self.fields[field.parent.as_deref().unwrap()].realization(pos)?)
                    .map_err(|e| err_at(pos, e))
            }
        }
    }
}

fn realization_from_embedding(p: &Realization, emb: &Embedding) -> Realization {
    let mut ns_images: Vec<Rf> =
        p.ns_images.iter().map(|f| emb.apply(f).expect("nonzero denominators stay nonzero")).collect();
    ns_images.extend(emb.roots.iter().map(|r| r.image.clone()));
    let laurent: Vec<usize> = p
        .laurent
        .iter()
        .filter_map(|&t| (0..emb.target.len()).find(|&i| emb.images[t] == Rf::var(i)))
        .collect();
    let subs: Vec<String> = emb
        .images
        .iter()
        .enumerate()
        .filter(|(i, img)| **img != Rf::var(*i) || emb.source.name(*i) != emb.target.name(*i))
        .map(|(i, img)| format!("{} = {}", emb.source.name(i), emb.target.format(img)))
        .collect();
    let description = format!(
        "F_2({}) by substitution {}",
        emb.target.names().join(", "),
        if subs.is_empty() { "none".to_string() } else { subs.join(", ") }
    );
    Realization { vars: emb.target.clone(), ns_images, laurent, from_parent: emb.images.clone(), description }
}

pub fn build_algebra(params: &[Rf]) -> Result<CompositionAlgebra, String> {
    match params {
        [b, c] => CompositionAlgebra::quaternion(b.clone(), c.clone()).map_err(|e| e.to_string()),
        [a, b, c] => CompositionAlgebra::octonion(a.clone(), b.clone(), c.clone()).map_err(|e| e.to_string()),
        _ => Err("expected two or three parameters".into()),
    }
}

/// Limits generous enough for the examples (up to eight slots).
pub fn wide_limits() -> Limits {
    Limits { max_elements: 8, max_vars: 10 }
}

/// Anisotropy or isotropy of a form over a realized field.
pub fn decide_form(check: Check, form: &FormVal, real: &Realization, opts: &Options) -> Check {
    let names = &real.vars;
    let limits = wide_limits();
    if let Some(PfisterSpec { kind: char2forms_core::forms::PfisterKind::Bilinear, slots }) = &form.pfister {
        return match two_independent_with(slots, &limits) {
            Ok(Independence::Independent) => check.verdict(
                Verdict::ProvedAnisotropic,
                "bilinear Pfister form with 2-independent slots",
                Certificate::Independence {
                    names: names.clone(),
                    elements: slots.clone(),
                    independence: Independence::Independent,
                    limits,
                },
            ),
            Ok(dep @ Independence::Dependent(_)) => {
                let slot_cert = Certificate::Independence {
                    names: names.clone(),
                    elements: slots.clone(),
                    independence: dep,
                    limits,
                };
                match ts_isotropy_with(&form.quadratic, &limits) {
                    Ok(TsIsotropy::Isotropic(w)) => check.verdict(
                        Verdict::Isotropic,
                        "2-dependent slots; isotropic vector of the associated quasi-Pfister form",
                        Certificate::All(vec![
                            ("slots".into(), slot_cert),
                            (
                                "vector".into(),
                                Certificate::Isotropy { names: names.clone(), form: form.quadratic.clone(), witness: w },
                            ),
                        ]),
                    ),
                    other => check
                        .verdict(Verdict::Unknown, "2-dependent slots", slot_cert)
                        .note(format!("no isotropic vector extracted: {other:?}")),
                }
            }
            Err(e) => check.verdict(Verdict::Unknown, "2-independence", Certificate::None).note(e.to_string()),
        };
    }
    let q = &form.quadratic;
    let d = decide(q, &real.decide_context());
    match &d {
        Decision::Anisotropic(p) => {
            let method = match p {
                char2forms_core::forms::AnisotropyProof::Residue(_) => "residue forms over the Laurent variable",
                char2forms_core::forms::AnisotropyProof::IndependentCoefficients { .. } => "2-independent coefficients",
                char2forms_core::forms::AnisotropyProof::Subform { .. } => "anisotropic ambient form",
            };
            check.verdict(Verdict::ProvedAnisotropic, method, Certificate::from_decision(names, q, &d))
        }
        Decision::Isotropic(_) => {
            check.verdict(Verdict::Isotropic, "isotropic vector from the decider", Certificate::from_decision(names, q, &d))
        }
        Decision::Unknown(reason) => match bounded_isotropy_search(q, opts.degree_bound) {
            SearchOutcome::Found(w) => check.verdict(
                Verdict::Isotropic,
                format!("bounded search, degree {}", opts.degree_bound),
                Certificate::Isotropy { names: names.clone(), form: q.clone(), witness: w },
            ),
            other => check
                .verdict(Verdict::Unknown, "deciders and bounded search", Certificate::Facts(json!({ "reason": reason })))
                .note(format!("{reason}; search: {other:?}")),
        },
    }
}

fn isometric(check: Check, p: &FormVal, q: &FormVal, real: &Realization) -> Check {
    let (Some(ps), Some(qs)) = (&p.pfister, &q.pfister) else {
        return check.verdict(Verdict::Unknown, "isometry of non-Pfister forms", Certificate::None);
    };
    let limits = wide_limits();
    let quasi = |s: &PfisterSpec| PfisterSpec::quasi(s.slots.clone());
    if ps.kind != char2forms_core::forms::PfisterKind::Quasi || qs.kind != char2forms_core::forms::PfisterKind::Quasi {
        return check.verdict(Verdict::Unknown, "isometry test covers quasi-Pfister forms only", Certificate::None);
    }
    match quasi_pfister_isometric(&quasi(ps), &quasi(qs)) {
        Ok(eq) => {
            let v = if eq.equal() { Verdict::Isometric } else { Verdict::NotIsometric };
            check.verdict(
                v,
                "comparison of the square fields F^2(slots)",
                Certificate::FieldEquality {
                    names: real.vars.clone(),
                    left: ps.slots.clone(),
                    right: qs.slots.clone(),
                    equality: eq,
                    limits,
                },
            )
        }
        Err(e) => check.verdict(Verdict::Unknown, "quasi-Pfister comparison", Certificate::None).note(e.to_string()),
    }
}

/// Division or split, with zero divisors as the split certificate.
pub fn division(check: Check, alg: &CompositionAlgebra, real: &Realization, degree_bound: u32) -> Check {
    match alg.is_division(&real.decide_context(), degree_bound) {
        DivisionVerdict::Division { form, proof } => check.verdict(
            Verdict::Division,
            "norm form anisotropic",
            Certificate::Anisotropy { names: real.vars.clone(), form, proof },
        ),
        DivisionVerdict::Split(pair) => check.verdict(
            Verdict::Split,
            "zero divisors from an isotropic vector of the norm",
            Certificate::ZeroDivisors { names: real.vars.clone(), algebra: alg.clone(), pair },
        ),
        DivisionVerdict::Unknown(r) => check.verdict(Verdict::Unknown, "norm form undecided", Certificate::None).note(r),
    }
}

/// `N` agrees with the Pfister expansion through the recorded change of coordinates.
pub fn norm_check(check: Check, alg: &CompositionAlgebra, names: &VariableSet) -> Check {
    let nf = match alg.norm_form() {
        Ok(nf) => nf,
        Err(e) => return check.error(e),
    };
    let expanded_matches = match nf.pfister.expand() {
        Ok(char2forms_core::forms::ExpandedPfister::Quadratic(q)) => q == nf.expanded,
        _ => false,
    };
    let pulled = pullback_matrix(&nf.expanded.coefficient_matrix(), &nf.isometry);
    let ok = expanded_matches && pulled.as_ref().is_ok_and(|m| *m == nf.polynomial);
    let facts = json!({
        "pfister_slots": elems(names, &nf.pfister.slots),
        "expanded": crate::report::form_json(names, &nf.expanded),
        "norm_coefficients": nf.polynomial.iter().map(|r| elems(names, r)).collect::<Vec<_>>(),
        "coordinate_change": nf.isometry.matrix.iter().map(|r| elems(names, r)).collect::<Vec<_>>(),
    });
    check.holds_if(ok, "norm polynomial equals the Pfister expansion after the coordinate change", Certificate::Facts(facts))
}

/// `N(xy) = N(x) N(y)` on seeded random pairs.
pub fn composition_check(
    check: Check,
    alg: &CompositionAlgebra,
    names: &VariableSet,
    vars: &[usize],
    pairs: usize,
    seed: u64,
) -> Check {
    let mut rng = sampling::rng(seed, 0xC0DE);
    let mut failures = Vec::new();
    for k in 0..pairs {
        let mut draw = || {
            let coords = (0..alg.dim()).map(|_| sampling::polynomial(&mut rng, vars, 1)).collect();
            alg.element(coords).expect("right dimension")
        };
        let (x, y) = (draw(), draw());
        let ok = alg.multiply(&x, &y).and_then(|xy| {
            Ok(alg.norm(&xy)? == alg.norm(&x)?.mul_ref(&alg.norm(&y)?))
        });
        if ok != Ok(true) {
            failures.push(json!({
                "pair": k,
                "x": alg.format(&x, |c| fmt_elem(names, c)),
                "y": alg.format(&y, |c| fmt_elem(names, c)),
            }));
        }
    }
    let facts = json!({ "pairs": pairs, "seed": seed, "failures": failures });
    check.holds_if(failures_empty(&facts), format!("N(xy) = N(x)N(y) on {pairs} seeded pairs"), Certificate::Facts(facts))
}

fn failures_empty(facts: &serde_json::Value) -> bool {
    facts["failures"].as_array().is_some_and(Vec::is_empty)
}

fn extension_check(
    check: Check,
    prop: Prop,
    value: Option<u64>,
    tower: &TowerSpec,
    base: &Realization,
) -> Result<Check, String> {
    let alg = PiAlgebra::build(tower).map_err(|e| e.to_string())?;
    let vars = tower.variables();
    Ok(match prop {
        Prop::Degree => {
            let d = alg.degree() as u64;
            check.holds_if(Some(d) == value, "dimension of the quotient algebra", Certificate::Facts(json!({ "degree": d })))
        }
        Prop::Exponent => {
            let e = alg.exponent() as u64;
            check.holds_if(
                Some(e) == value,
                "largest exponent over the basis elements",
                Certificate::Facts(json!({ "exponent": e })),
            )
        }
        Prop::Socle => {
            let s = alg.socle();
            let basis: Vec<String> = s.basis.iter().map(|b| alg.format(b)).collect();
            check.holds_if(
                Some(s.degree() as u64) == value,
                "kernel of the Frobenius conditions",
                Certificate::Facts(json!({ "degree": s.degree(), "basis": basis })),
            )
        }
        _ => {
            let [root] = tower.roots() else {
                return Ok(check.error("filtration needs an extension by a single root"));
            };
            let names: Vec<String> =
                (1..=root.log2).map(|k| vars.fresh_name(&format!("{}_{k}", root.name))).collect();
            let steps = simple_filtration(&base.vars, base.designated(), root.log2, &root.radicand, &names)
                .map_err(|e| e.to_string())?;
            let ok = steps.iter().all(|s| {
                s.algebra.degree() == 1 << s.level && s.algebra.exponent() == s.level && s.from_base.verify()
            });
            let list: Vec<_> = steps
                .iter()
                .map(|s| {
                    json!({
                        "level": s.level,
                        "degree": s.algebra.degree(),
                        "exponent": s.algebra.exponent(),
                        "realization": s.from_base.target.names(),
                    })
                })
                .collect();
            check.holds_if(ok, "successive square roots of the radicand", Certificate::Facts(json!({ "fields": list })))
        }
    })
}

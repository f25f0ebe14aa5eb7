//! The session language: one declaration or check per line.
//!
//! ```text
//! field F = rational(x, y, z)
//! laurent L = F((t))
//! ext E = F adjoin root(2, z), s = root(2, x*z + y)
//! form pi = bpf<x, y> over F
//! quat Q = (x, 1/t] over L
//! oct O = (x, y, 1/t] over L
//! check anisotropic pi over F
//! check degree E = 4
//! ```
//!
//! Elements are kept as source text and parsed once the field they live in
//! is known.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// An element in the textual element syntax. Equality ignores whitespace
/// and position.
#[derive(Clone, Debug)]
pub struct Expr {
    pub text: String,
    pub pos: Pos,
}

impl Expr {
    fn key(&self) -> String {
        self.text.chars().filter(|c| !c.is_whitespace()).collect()
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormExpr {
    Named(String),
    /// `bpf<a, b, ...>`
    Bpf(Vec<Expr>),
    /// `qpf<<a, b, ...; c]]`
    Qpf(Vec<Expr>, Expr),
    /// `quasi<a, b, ...>`
    Quasi(Vec<Expr>),
    /// `diag(a, b, ...)`
    Diag(Vec<Expr>),
    /// `bin[a, b]`
    Bin(Expr, Expr),
    Sum(Vec<FormExpr>),
    Scale(Expr, Box<FormExpr>),
    Tensor(Box<FormExpr>, Box<FormExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDecl {
    pub name: Option<String>,
    pub degree: u64,
    pub radicand: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Field { name: String, vars: Vec<String> },
    Laurent { name: String, base: String, var: String },
    Ext { name: String, base: String, roots: Vec<RootDecl> },
    Form { name: String, form: FormExpr, over: String },
    Quat { name: String, b: Expr, c: Expr, over: String },
    Oct { name: String, a: Expr, b: Expr, c: Expr, over: String },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Field { name, .. }
            | Decl::Laurent { name, .. }
            | Decl::Ext { name, .. }
            | Decl::Form { name, .. }
            | Decl::Quat { name, .. }
            | Decl::Oct { name, .. } => name,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prop {
    Anisotropic,
    Isotropic,
    Isometric,
    Division,
    Split,
    Degree,
    Exponent,
    Socle,
    Filtration,
    Composition,
    Norm,
}

impl Prop {
    pub const ALL: [Prop; 11] = [
        Prop::Anisotropic,
        Prop::Isotropic,
        Prop::Isometric,
        Prop::Division,
        Prop::Split,
        Prop::Degree,
        Prop::Exponent,
        Prop::Socle,
        Prop::Filtration,
        Prop::Composition,
        Prop::Norm,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Prop::Anisotropic => "anisotropic",
            Prop::Isotropic => "isotropic",
            Prop::Isometric => "isometric",
            Prop::Division => "division",
            Prop::Split => "split",
            Prop::Degree => "degree",
            Prop::Exponent => "exponent",
            Prop::Socle => "socle",
            Prop::Filtration => "filtration",
            Prop::Composition => "composition",
            Prop::Norm => "norm",
        }
    }

    /// Number of arguments, and whether `= INT` is required.
    fn shape(self) -> (usize, bool) {
        match self {
            Prop::Isometric => (2, false),
            Prop::Degree | Prop::Exponent | Prop::Socle => (1, true),
            _ => (1, false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckStmt {
    pub prop: Prop,
    pub args: Vec<FormExpr>,
    pub over: Option<String>,
    pub value: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Statement {
    Decl(Decl, Pos),
    Check(CheckStmt, Pos),
}

impl Statement {
    pub fn pos(&self) -> Pos {
        match self {
            Statement::Decl(_, p) | Statement::Check(_, p) => *p,
        }
    }
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Statement::Decl(a, _), Statement::Decl(b, _)) => a == b,
            (Statement::Check(a, _), Statement::Check(b, _)) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Session {
    pub statements: Vec<Statement>,
}

impl Session {
    pub fn decls(&self) -> impl Iterator<Item = &Decl> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Decl(d, _) => Some(d),
            Statement::Check(..) => None,
        })
    }

    pub fn checks(&self) -> impl Iterator<Item = &CheckStmt> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Check(c, _) => Some(c),
            Statement::Decl(..) => None,
        })
    }

    pub fn count_fields(&self) -> usize {
        self.decls().filter(|d| matches!(d, Decl::Field { .. } | Decl::Laurent { .. })).count()
    }

    pub fn count_exts(&self) -> usize {
        self.decls().filter(|d| matches!(d, Decl::Ext { .. })).count()
    }

    pub fn count_forms(&self) -> usize {
        self.decls().filter(|d| matches!(d, Decl::Form { .. })).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, col: usize, message: String },
    UndeclaredName { line: usize, col: usize, name: String },
    Redeclared { line: usize, col: usize, name: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, col, message } => write!(f, "{line}:{col}: syntax error: {message}"),
            ParseError::UndeclaredName { line, col, name } => {
                write!(f, "{line}:{col}: undeclared name `{name}`")
            }
            ParseError::Redeclared { line, col, name } => write!(f, "{line}:{col}: `{name}` is already declared"),
        }
    }
}

impl std::error::Error for ParseError {}

const RESERVED: [&str; 15] = [
    "field", "laurent", "ext", "form", "quat", "oct", "check", "over", "adjoin", "root", "rational", "sum",
    "scale", "tensor", "diag",
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Field,
    Form,
    Algebra,
}

pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let mut declared: Vec<(String, Kind)> = Vec::new();
    let mut statements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut p = LineParser { src: line, pos: 0, line: i + 1, declared: &declared };
        let stmt = p.statement()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.syntax("unexpected trailing input"));
        }
        if let Statement::Decl(d, pos) = &stmt {
            let kind = match d {
                Decl::Field { .. } | Decl::Laurent { .. } | Decl::Ext { .. } => Kind::Field,
                Decl::Form { .. } => Kind::Form,
                Decl::Quat { .. } | Decl::Oct { .. } => Kind::Algebra,
            };
            if declared.iter().any(|(n, _)| n == d.name()) {
                return Err(ParseError::Redeclared { line: pos.line, col: pos.col, name: d.name().to_string() });
            }
            declared.push((d.name().to_string(), kind));
        }
        statements.push(stmt);
    }
    Ok(Session { statements })
}

struct LineParser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    declared: &'a [(String, Kind)],
}

impl LineParser<'_> {
    fn here(&self) -> Pos {
        Pos { line: self.line, col: self.src[..self.pos].chars().count() + 1 }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        let p = self.here();
        ParseError::Syntax { line: p.line, col: p.col, message: message.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{token}`")))
        }
    }

    fn peek_ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() => {}
            _ => return None,
        }
        let end = chars.find(|(_, c)| !(c.is_alphanumeric() || *c == '_')).map_or(rest.len(), |(k, _)| k);
        Some(&rest[..end])
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek_ident() {
            Some(id) => {
                let id = id.to_string();
                self.pos += id.len();
                Ok(id)
            }
            None => Err(self.syntax("expected a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.peek_ident() == Some(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    /// A fresh name for a declaration.
    fn new_name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let before = self.pos;
        let name = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            self.pos = before;
            return Err(self.syntax(format!("`{name}` is a keyword")));
        }
        Ok(name)
    }

    fn reference(&mut self, kinds: &[Kind]) -> Result<String, ParseError> {
        self.skip_ws();
        let at = self.here();
        let name = self.ident()?;
        match self.declared.iter().find(|(n, _)| *n == name) {
            Some((_, k)) if kinds.contains(k) => Ok(name),
            Some(_) => Err(ParseError::Syntax {
                line: at.line,
                col: at.col,
                message: format!("`{name}` has the wrong kind here"),
            }),
            None => Err(ParseError::UndeclaredName { line: at.line, col: at.col, name }),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.syntax("expected an integer"));
        }
        let v = digits.parse().map_err(|_| self.syntax("integer out of range"))?;
        self.pos += digits.len();
        Ok(v)
    }

    /// Raw text up to a top-level `,`, `;`, `>`, `]` or `)`.
    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let pos = self.here();
        let start = self.pos;
        let mut depth = 0usize;
        let src = self.src;
        for (k, c) in src[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                ',' | ';' | '>' | ']' | ')' if depth == 0 => {
                    self.pos = start + k;
                    break;
                }
                ',' => {}
                c if c.is_alphanumeric() || c.is_whitespace() || "_+*/^".contains(c) => {}
                _ => {
                    self.pos = start + k;
                    return Err(self.syntax(format!("unexpected character `{c}` in expression")));
                }
            }
            self.pos = start + k + c.len_utf8();
        }
        if depth != 0 {
            return Err(self.syntax("unbalanced parentheses"));
        }
        let text = self.src[start..self.pos].trim().to_string();
        if text.is_empty() {
            self.pos = start;
            return Err(self.syntax("expected an expression"));
        }
        Ok(Expr { text, pos })
    }

    fn expr_list(&mut self, sep: &str) -> Result<Vec<Expr>, ParseError> {
        let mut out = vec![self.expr()?];
        while self.eat(sep) {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        self.skip_ws();
        let pos = self.here();
        let Some(kw) = self.peek_ident().map(str::to_string) else {
            return Err(self.syntax("expected a declaration or `check`"));
        };
        self.pos += kw.len();
        let decl = match kw.as_str() {
            "field" => {
                let name = self.new_name()?;
                self.expect("=")?;
                if !self.keyword("rational") {
                    return Err(self.syntax("expected `rational`"));
                }
                self.expect("(")?;
                let mut vars = vec![self.new_name()?];
                while self.eat(",") {
                    vars.push(self.new_name()?);
                }
                self.expect(")")?;
                let mut seen = BTreeSet::new();
                if let Some(v) = vars.iter().find(|v| !seen.insert(v.as_str())) {
                    return Err(self.syntax(format!("variable `{v}` repeated")));
                }
                Decl::Field { name, vars }
            }
            "laurent" => {
                let name = self.new_name()?;
                self.expect("=")?;
                let base = self.reference(&[Kind::Field])?;
                self.expect("((")?;
                let var = self.new_name()?;
                self.expect("))")?;
                Decl::Laurent { name, base, var }
            }
            "ext" => {
                let name = self.new_name()?;
                self.expect("=")?;
                let base = self.reference(&[Kind::Field])?;
                if !self.keyword("adjoin") {
                    return Err(self.syntax("expected `adjoin`"));
                }
                let mut roots = vec![self.root()?];
                while self.eat(",") {
                    roots.push(self.root()?);
                }
                Decl::Ext { name, base, roots }
            }
            "form" => {
                let name = self.new_name()?;
                self.expect("=")?;
                let form = self.form()?;
                let over = self.over()?;
                Decl::Form { name, form, over }
            }
            "quat" => {
                let name = self.new_name()?;
                self.expect("=")?;
                self.expect("(")?;
                let b = self.expr()?;
                self.expect(",")?;
                let c = self.expr()?;
                self.expect("]")?;
                let over = self.over()?;
                Decl::Quat { name, b, c, over }
            }
            "oct" => {
                let name = self.new_name()?;
                self.expect("=")?;
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(",")?;
                let c = self.expr()?;
                self.expect("]")?;
                let over = self.over()?;
                Decl::Oct { name, a, b, c, over }
            }
            "check" => return Ok(Statement::Check(self.check()?, pos)),
            other => {
                self.pos -= other.len();
                return Err(self.syntax(format!("unknown statement `{other}`")));
            }
        };
        Ok(Statement::Decl(decl, pos))
    }

    fn over(&mut self) -> Result<String, ParseError> {
        if !self.keyword("over") {
            return Err(self.syntax("expected `over`"));
        }
        self.reference(&[Kind::Field])
    }

    fn root(&mut self) -> Result<RootDecl, ParseError> {
        let save = self.pos;
        let mut name = None;
        if self.peek_ident().is_some_and(|id| id != "root") {
            let n = self.new_name()?;
            if self.eat("=") {
                name = Some(n);
            } else {
                self.pos = save;
            }
        }
        if !self.keyword("root") {
            return Err(self.syntax("expected `root(degree, radicand)`"));
        }
        self.expect("(")?;
        let degree = self.int()?;
        if degree < 2 || !degree.is_power_of_two() {
            return Err(self.syntax("root degree must be a power of 2 at least 2"));
        }
        self.expect(",")?;
        let radicand = self.expr()?;
        self.expect(")")?;
        Ok(RootDecl { name, degree, radicand })
    }

    fn form(&mut self) -> Result<FormExpr, ParseError> {
        self.skip_ws();
        let Some(head) = self.peek_ident().map(str::to_string) else {
            return Err(self.syntax("expected a form"));
        };
        let after = self.pos + head.len();
        let next = self.src[after..].trim_start();
        let open = |s: &str| next.starts_with(s);
        let f = match head.as_str() {
            "bpf" if open("<") => {
                self.pos = after;
                self.expect("<")?;
                let v = self.expr_list(",")?;
                self.expect(">")?;
                FormExpr::Bpf(v)
            }
            "qpf" if open("<<") => {
                self.pos = after;
                self.expect("<<")?;
                let mut slots = Vec::new();
                if !self.eat(";") {
                    slots = self.expr_list(",")?;
                    self.expect(";")?;
                }
                let c = self.expr()?;
                self.expect("]]")?;
                FormExpr::Qpf(slots, c)
            }
            "quasi" if open("<") => {
                self.pos = after;
                self.expect("<")?;
                let v = self.expr_list(",")?;
                self.expect(">")?;
                FormExpr::Quasi(v)
            }
            "diag" if open("(") => {
                self.pos = after;
                self.expect("(")?;
                let v = self.expr_list(",")?;
                self.expect(")")?;
                FormExpr::Diag(v)
            }
            "bin" if open("[") => {
                self.pos = after;
                self.expect("[")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect("]")?;
                FormExpr::Bin(a, b)
            }
            "sum" if open("(") => {
                self.pos = after;
                self.expect("(")?;
                let mut v = vec![self.form()?];
                while self.eat(",") {
                    v.push(self.form()?);
                }
                self.expect(")")?;
                FormExpr::Sum(v)
            }
            "scale" if open("(") => {
                self.pos = after;
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let f = self.form()?;
                self.expect(")")?;
                FormExpr::Scale(a, Box::new(f))
            }
            "tensor" if open("(") => {
                self.pos = after;
                self.expect("(")?;
                let b = self.form()?;
                self.expect(",")?;
                let q = self.form()?;
                self.expect(")")?;
                FormExpr::Tensor(Box::new(b), Box::new(q))
            }
            _ => FormExpr::Named(self.reference(&[Kind::Form, Kind::Algebra, Kind::Field])?),
        };
        Ok(f)
    }

    fn check(&mut self) -> Result<CheckStmt, ParseError> {
        self.skip_ws();
        let word = self.ident()?;
        let Some(prop) = Prop::ALL.into_iter().find(|p| p.keyword() == word) else {
            self.pos -= word.len();
            return Err(self.syntax(format!("unknown property `{word}`")));
        };
        let (arity, needs_value) = prop.shape();
        let mut args = vec![self.form()?];
        for _ in 1..arity {
            self.expect(",")?;
            args.push(self.form()?);
        }
        let over = if self.peek_ident() == Some("over") { Some(self.over()?) } else { None };
        let value = if needs_value {
            self.expect("=")?;
            Some(self.int()?)
        } else {
            None
        };
        Ok(CheckStmt { prop, args, over, value })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn join<T: fmt::Display>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormExpr::Named(n) => f.write_str(n),
            FormExpr::Bpf(v) => write!(f, "bpf<{}>", join(v, ", ")),
            FormExpr::Qpf(v, c) if v.is_empty() => write!(f, "qpf<<; {c}]]"),
            FormExpr::Qpf(v, c) => write!(f, "qpf<<{}; {c}]]", join(v, ", ")),
            FormExpr::Quasi(v) => write!(f, "quasi<{}>", join(v, ", ")),
            FormExpr::Diag(v) => write!(f, "diag({})", join(v, ", ")),
            FormExpr::Bin(a, b) => write!(f, "bin[{a}, {b}]"),
            FormExpr::Sum(v) => write!(f, "sum({})", join(v, ", ")),
            FormExpr::Scale(a, q) => write!(f, "scale({a}, {q})"),
            FormExpr::Tensor(b, q) => write!(f, "tensor({b}, {q})"),
        }
    }
}

impl fmt::Display for RootDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{n} = ")?;
        }
        write!(f, "root({}, {})", self.degree, self.radicand)
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Field { name, vars } => write!(f, "field {name} = rational({})", vars.join(", ")),
            Decl::Laurent { name, base, var } => write!(f, "laurent {name} = {base}(({var}))"),
            Decl::Ext { name, base, roots } => write!(f, "ext {name} = {base} adjoin {}", join(roots, ", ")),
            Decl::Form { name, form, over } => write!(f, "form {name} = {form} over {over}"),
            Decl::Quat { name, b, c, over } => write!(f, "quat {name} = ({b}, {c}] over {over}"),
            Decl::Oct { name, a, b, c, over } => write!(f, "oct {name} = ({a}, {b}, {c}] over {over}"),
        }
    }
}

impl fmt::Display for CheckStmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check {} {}", self.prop.keyword(), join(&self.args, ", "))?;
        if let Some(o) = &self.over {
            write!(f, " over {o}")?;
        }
        if let Some(v) = self.value {
            write!(f, " = {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            match s {
                Statement::Decl(d, _) => writeln!(f, "{d}")?,
                Statement::Check(c, _) => writeln!(f, "{c}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_field() {
        let s = parse_session("field F = rational(x,y,z)").unwrap();
        assert_eq!(s.statements.len(), 1);
        assert_eq!(s.count_fields(), 1);
    }

    #[test]
    fn undeclared_field() {
        let text = "field F = rational(x,y)\nform pi = bpf<x,y> over F\ncheck anisotropic pi over M\n";
        assert_eq!(
            parse_session(text),
            Err(ParseError::UndeclaredName { line: 3, col: 27, name: "M".into() })
        );
    }

    #[test]
    fn syntax_positions() {
        let err = parse_session("field F = rational(x,y)\nform q = bin[x, y over F").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err:?}");
        let err = parse_session("field F = rational(x)\nform q = diag(x$) over F").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax { line: 2, col: 16, message: "unexpected character `$` in expression".into() }
        );
    }

    #[test]
    fn nested_roots_and_forms() {
        let text = "field F = rational(x,y,z)\n\
                    ext E = F adjoin root(4, z), chi = root(2, x*root(4,z)^2 + y)\n\
                    form q = tensor(bpf<x>, qpf<<y; 1/x]]) over F\n\
                    check degree E = 8\n";
        let s = parse_session(text).unwrap();
        let Statement::Decl(Decl::Ext { roots, .. }, _) = &s.statements[1] else { panic!() };
        assert_eq!(roots[1].name.as_deref(), Some("chi"));
        assert_eq!(roots[1].radicand.text, "x*root(4,z)^2 + y");
        let again = parse_session(&s.to_string()).unwrap();
        assert_eq!(again, s);
    }
}

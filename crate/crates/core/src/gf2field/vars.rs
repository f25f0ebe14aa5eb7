use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::monomial::{Monomial, MAX_VARS};
use super::poly::Polynomial;
use super::rational::RationalFunction;
use super::FieldError;

/// Ordered list of distinct variable names; the chosen 2-basis of the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if out.contains(&n) {
                return Err(FieldError::DuplicateVariable(n));
            }
            out.push(n);
        }
        if out.len() > MAX_VARS {
            return Err(FieldError::TooManyVariables(out.len()));
        }
        Ok(Self { names: out })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    /// The variable with this name as a field element.
    pub fn get(&self, name: &str) -> Result<RationalFunction, FieldError> {
        self.index(name)
            .map(RationalFunction::var)
            .ok_or_else(|| FieldError::UnknownVariable(name.to_string()))
    }

    /// Appends a variable, returning its index.
    pub fn push(&mut self, name: impl Into<String>) -> Result<usize, FieldError> {
        let name = name.into();
        if self.names.contains(&name) {
            return Err(FieldError::DuplicateVariable(name));
        }
        if self.names.len() >= MAX_VARS {
            return Err(FieldError::TooManyVariables(self.names.len() + 1));
        }
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    /// The same list with the variable at `index` renamed.
    pub fn with_renamed(&self, index: usize, name: impl Into<String>) -> Result<Self, FieldError> {
        let name = name.into();
        if self.names.iter().enumerate().any(|(i, n)| i != index && *n == name) {
            return Err(FieldError::DuplicateVariable(name));
        }
        let mut names = self.names.clone();
        names[index] = name;
        Ok(Self { names })
    }

    /// A name derived from `base` that is not yet taken.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index(base).is_none() {
            return base.to_string();
        }
        let mut k = 1usize;
        loop {
            let cand = alloc::format!("{base}{k}");
            if self.index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    pub fn display_poly<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay { vars: self, poly: p }
    }

    pub fn display<'a>(&'a self, f: &'a RationalFunction) -> RationalDisplay<'a> {
        RationalDisplay { vars: self, value: f }
    }

    /// Renders in the textual element syntax.
    pub fn format(&self, f: &RationalFunction) -> String {
        self.display(f).to_string()
    }

    /// Parses the textual element syntax: `+ * / ^`, parentheses, integer
    /// literals (reduced mod 2) and variable names.
    pub fn parse(&self, text: &str) -> Result<RationalFunction, FieldError> {
        let mut p = ExprParser { vars: self, text, src: text.as_bytes(), pos: 0 };
        let v = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

pub struct PolyDisplay<'a> {
    vars: &'a VariableSet,
    poly: &'a Polynomial,
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VariableSet, m: &Monomial) -> fmt::Result {
    if m.is_one() {
        return write!(f, "1");
    }
    let mut first = true;
    for i in 0..MAX_VARS {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let name = vars.names.get(i).map(String::as_str);
        match name {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "_v{i}")?,
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.poly.terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_monomial(f, self.vars, m)?;
        }
        Ok(())
    }
}

pub struct RationalDisplay<'a> {
    vars: &'a VariableSet,
    value: &'a RationalFunction,
}

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.vars.display_poly(self.value.num());
        if self.value.den().is_one() {
            return write!(f, "{num}");
        }
        let den = self.vars.display_poly(self.value.den());
        let wrap_num = self.value.num().len() > 1;
        let wrap_den = !self.value.den().is_monomial() || self.value.den().terms()[0].degree() > 1;
        match (wrap_num, wrap_den) {
            (false, false) => write!(f, "{num}/{den}"),
            (true, false) => write!(f, "({num})/{den}"),
            (false, true) => write!(f, "{num}/({den})"),
            (true, true) => write!(f, "({num})/({den})"),
        }
    }
}

struct ExprParser<'a> {
    vars: &'a VariableSet,
    text: &'a str,
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> FieldError {
        FieldError::Parse { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_char(&self) -> Option<char> {
        self.text.get(self.pos..)?.chars().next()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<RationalFunction, FieldError> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.product()?;
            acc = acc.add_ref(&rhs);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RationalFunction, FieldError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = acc.mul_ref(&rhs);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.power()?;
                    acc = acc.div_ref(&rhs).map_err(|_| FieldError::Parse {
                        position: at,
                        message: "division by zero".to_string(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunction, FieldError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let n = self.integer()?;
            let n = if neg { -n } else { n };
            let at = self.pos;
            return base.pow(n).map_err(|e| FieldError::Parse { position: at, message: alloc::format!("{e}") });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, FieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<RationalFunction, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(if n % 2 == 0 { RationalFunction::zero() } else { RationalFunction::one() })
            }
            Some(_) if self.next_char().is_some_and(char::is_alphabetic) => {
                let start = self.pos;
                while let Some(c) = self.next_char().filter(|c| c.is_alphanumeric() || *c == '_') {
                    self.pos += c.len_utf8();
                }
                let name = &self.text[start..self.pos];
                self.vars.get(name).map_err(|_| FieldError::Parse {
                    position: start,
                    message: alloc::format!("unknown variable `{name}`"),
                })
            }
            _ => Err(self.error("expected expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let vars = VariableSet::new(["x", "y", "z"]).unwrap();
        let f = vars.parse("(x^2*y + y)/(x+1)").unwrap();
        assert_eq!(vars.format(&f), "x*y + y");
        let g = vars.parse("x/(x + 1)").unwrap();
        assert_eq!(vars.format(&g), "x/(x + 1)");
        assert_eq!(vars.parse(&vars.format(&g)).unwrap(), g);
        assert_eq!(vars.format(&vars.parse("z^-1").unwrap()), "1/z");
        assert!(vars.parse("x + w").is_err());
        assert!(vars.parse("x/0").is_err());
    }
}

//! Concrete syntax:
//!
//! ```text
//! formula := quant | iff
//! quant   := ("ex1" | "all1") var "." formula | ("ex2" | "all2") SETVAR "." formula
//! iff     := implies ("<->" implies)*
//! implies := or ("->" (implies | quant))?
//! or      := and ("|" (and | quant))*
//! and     := unary ("&" (unary | quant))*
//! unary   := "!" (unary | quant) | "(" formula ")" | atom
//! atom    := "true" | "false" | "edge(" var "," var ")" | var "=" var | var "in" SETVAR
//!          | "mod(" INT "," INT "," SETVAR ")" | "label_NAME(" var ")" | "rel_NAME(" var "," var ")"
//! ```
//!
//! A quantifier's scope extends as far right as possible. Vertex variables
//! start with a lowercase letter, set variables with an uppercase letter.
//! `#` starts a comment running to the end of the line.

use super::ast::{Formula, Quantifier};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Equals,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(1, &mut i);
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '=' => Tok::Equals,
            '-' if chars.get(i + 1) == Some(&'>') => {
                advance(1, &mut i);
                Tok::Arrow
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                advance(2, &mut i);
                Tok::DoubleArrow
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    advance(1, &mut i);
                }
                let s: String = chars[start..=i].iter().collect();
                Tok::Int(
                    s.parse()
                        .map_err(|_| err(tl, tc, format!("integer `{s}` too large")))?,
                )
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    advance(1, &mut i);
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => return Err(err(tl, tc, format!("unexpected character `{other}`"))),
        };
        advance(1, &mut i);
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

const KEYWORDS: [&str; 8] = ["ex1", "all1", "ex2", "all2", "true", "false", "edge", "in"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Bound variables in scope.
    scope: Vec<String>,
    /// First free variable occurrence, with position.
    first_free: Option<(String, usize, usize)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok != want {
            return Err(err(
                t.line,
                t.column,
                format!("expected {what}, found {}", describe(&t.tok)),
            ));
        }
        Ok(t)
    }

    fn is_quantifier(&self) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if ["ex1", "all1", "ex2", "all2"].contains(&s.as_str()))
    }

    fn formula(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            self.quantified()
        } else {
            self.iff()
        }
    }

    /// An operand on the right of a binary operator may be a quantifier.
    fn operand<F>(&mut self, next: F) -> Result<Formula>
    where
        F: FnOnce(&mut Self) -> Result<Formula>,
    {
        if self.is_quantifier() {
            self.quantified()
        } else {
            next(self)
        }
    }

    fn quantified(&mut self) -> Result<Formula> {
        let kw = self.next();
        let q = match &kw.tok {
            Tok::Ident(s) if s == "ex1" => Quantifier::Exists,
            Tok::Ident(s) if s == "all1" => Quantifier::Forall,
            Tok::Ident(s) if s == "ex2" => Quantifier::ExistsSet,
            _ => Quantifier::ForallSet,
        };
        let vt = self.next();
        let var = match vt.tok {
            Tok::Ident(s) => s,
            other => {
                return Err(err(
                    vt.line,
                    vt.column,
                    format!("expected a variable, found {}", describe(&other)),
                ))
            }
        };
        self.check_var_name(&var, q.is_set(), vt.line, vt.column)?;
        self.expect(Tok::Dot, "`.` after the bound variable")?;
        self.scope.push(var.clone());
        let body = self.formula();
        self.scope.pop();
        Ok(Formula::quant(q, var, body?))
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.implies()?;
        while self.peek().tok == Tok::DoubleArrow {
            self.next();
            f = Formula::iff(f, self.operand(Self::implies)?);
        }
        Ok(f)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek().tok == Tok::Arrow {
            self.next();
            let rhs = self.operand(Self::implies)?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.peek().tok == Tok::Bar {
            self.next();
            f = Formula::or(f, self.operand(Self::and)?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.peek().tok == Tok::Amp {
            self.next();
            f = Formula::and(f, self.operand(Self::unary)?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().tok.clone() {
            Tok::Bang => {
                self.next();
                Ok(Formula::not(self.operand(Self::unary)?))
            }
            Tok::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let t = self.next();
        let name = match &t.tok {
            Tok::Ident(s) => s.clone(),
            other => {
                return Err(err(
                    t.line,
                    t.column,
                    format!("expected a formula, found {}", describe(other)),
                ))
            }
        };
        match name.as_str() {
            "true" => return Ok(Formula::True),
            "false" => return Ok(Formula::False),
            "edge" => {
                self.expect(Tok::LParen, "`(`")?;
                let a = self.vertex_var()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.vertex_var()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(Formula::Edge(a, b));
            }
            "mod" if self.peek().tok == Tok::LParen => {
                self.next();
                let (a, at) = self.int()?;
                self.expect(Tok::Comma, "`,`")?;
                let (b, bt) = self.int()?;
                self.expect(Tok::Comma, "`,`")?;
                let set = self.set_var()?;
                self.expect(Tok::RParen, "`)`")?;
                if b == 0 {
                    return Err(err(bt.line, bt.column, "modulus must be positive"));
                }
                if a >= b {
                    return Err(err(
                        at.line,
                        at.column,
                        format!("residue {a} is not below modulus {b}"),
                    ));
                }
                return Ok(Formula::Mod {
                    residue: a,
                    modulus: b,
                    set,
                });
            }
            _ => {}
        }
        if let Some(label) = name.strip_prefix("label_").filter(|s| !s.is_empty()) {
            self.expect(Tok::LParen, "`(`")?;
            let x = self.vertex_var()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Formula::Label(label.to_string(), x));
        }
        if let Some(rel) = name.strip_prefix("rel_").filter(|s| !s.is_empty()) {
            self.expect(Tok::LParen, "`(`")?;
            let a = self.vertex_var()?;
            self.expect(Tok::Comma, "`,`")?;
            let b = self.vertex_var()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Formula::Rel(rel.to_string(), a, b));
        }
        // x = y  or  x in X
        self.check_var_name(&name, false, t.line, t.column)?;
        self.note_use(&name, t.line, t.column);
        let op = self.next();
        match &op.tok {
            Tok::Equals => Ok(Formula::Eq(name, self.vertex_var()?)),
            Tok::Ident(s) if s == "in" => Ok(Formula::In(name, self.set_var()?)),
            other => Err(err(
                op.line,
                op.column,
                format!(
                    "expected `=` or `in` after `{name}`, found {}",
                    describe(other)
                ),
            )),
        }
    }

    fn int(&mut self) -> Result<(usize, Token)> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => Ok((v, t)),
            ref other => Err(err(
                t.line,
                t.column,
                format!("expected an integer, found {}", describe(other)),
            )),
        }
    }

    fn var(&mut self, set: bool) -> Result<String> {
        let t = self.next();
        let name = match &t.tok {
            Tok::Ident(s) => s.clone(),
            other => {
                return Err(err(
                    t.line,
                    t.column,
                    format!("expected a variable, found {}", describe(other)),
                ))
            }
        };
        self.check_var_name(&name, set, t.line, t.column)?;
        self.note_use(&name, t.line, t.column);
        Ok(name)
    }

    fn vertex_var(&mut self) -> Result<String> {
        self.var(false)
    }

    fn set_var(&mut self) -> Result<String> {
        self.var(true)
    }

    fn check_var_name(&self, name: &str, set: bool, line: usize, column: usize) -> Result<()> {
        if KEYWORDS.contains(&name)
            || name == "mod"
            || name.starts_with("label_")
            || name.starts_with("rel_")
        {
            return Err(err(line, column, format!("`{name}` is reserved")));
        }
        let upper = name.starts_with(|c: char| c.is_ascii_uppercase());
        if set && !upper {
            return Err(err(
                line,
                column,
                format!("set variable `{name}` must start with an uppercase letter"),
            ));
        }
        if !set && upper {
            return Err(err(
                line,
                column,
                format!("vertex variable `{name}` must start with a lowercase letter"),
            ));
        }
        Ok(())
    }

    fn note_use(&mut self, name: &str, line: usize, column: usize) {
        if self.first_free.is_none() && !self.scope.iter().any(|v| v == name) {
            self.first_free = Some((name.to_string(), line, column));
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::DoubleArrow => "`<->`".into(),
        Tok::Equals => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

/// The first unbound variable with its line and column, if any.
type Unbound = Option<(String, usize, usize)>;

fn parse(text: &str) -> Result<(Formula, Unbound)> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        scope: Vec::new(),
        first_free: None,
    };
    let f = p.formula()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(err(
            t.line,
            t.column,
            format!("unexpected {} after the formula", describe(&t.tok)),
        ));
    }
    Ok((f, p.first_free))
}

/// Parses a formula that may have free variables.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse(text).map(|(f, _)| f)
}

/// Parses a sentence; free variables are reported as errors.
pub fn parse_sentence(text: &str) -> Result<Formula> {
    let (f, free) = parse(text)?;
    if let Some((name, line, column)) = free {
        return Err(err(line, column, format!("unbound variable `{name}`")));
    }
    Ok(f)
}

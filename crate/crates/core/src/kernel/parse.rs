//! Recursive-descent parser for the ASCII surface grammar.
//!
//! ```text
//! formula := ('forall' | 'exists') var+ '.' formula | iff
//! iff     := imp ('<->' imp)*
//! imp     := or ('->' imp)?
//! or      := and ('\/' and)*
//! and     := unary ('/\' unary)*
//! unary   := '~' unary | quantified | '(' formula ')' | atom
//! atom    := 'true' | 'false' | ('Fun'|'ON'|'Nat') '(' term ')'
//!          | term ('in' | 'notin' | '=' | '!=' | 'sub') term
//! term    := var | '0' | '1' | 'sigma(' term ')' | 'sing(' term ')'
//!          | 'upair(' term ',' term ')' | 'Un(' term ')' | 'dom(' term ')'
//!          | 'ran(' term ')' | '<' term ',' term '>' | '{' var '|' formula '}'
//!          | 'V' | 'ON' | 'Nat' | registered class name
//! ```

use std::collections::BTreeMap;

use super::surface::{ClassTerm, Pred, Surface, Term};
use super::var::{is_valid_name, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Comma,
    Dot,
    Bar,
    Tilde,
    And,
    Or,
    Arrow,
    DArrow,
    Equals,
    NotEquals,
    Turnstile,
    Semi,
    Colon,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, col: c0 });
        let starts = |s: &str| chars[i..].iter().take(s.len()).copied().eq(s.chars());
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (tok, len) = if starts("<->") {
            (Tok::DArrow, 3)
        } else if starts("->") {
            (Tok::Arrow, 2)
        } else if starts("/\\") {
            (Tok::And, 2)
        } else if starts("\\/") {
            (Tok::Or, 2)
        } else if starts("|-") {
            (Tok::Turnstile, 2)
        } else if starts("!=") {
            (Tok::NotEquals, 2)
        } else if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len()
                && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
            {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let n = s.parse().map_err(|_| Error::Syntax {
                line,
                col,
                msg: format!("number {s} out of range"),
            })?;
            (Tok::Num(n), j - i)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '|' => Tok::Bar,
                '~' => Tok::Tilde,
                '=' => Tok::Equals,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                _ => {
                    return Err(Error::Syntax {
                        line,
                        col,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            };
            (t, 1)
        };
        push(&mut out, tok);
        i += len;
        col += len;
    }
    Ok(out)
}

const KEYWORDS: &[&str] = &[
    "forall", "exists", "in", "notin", "sub", "true", "false", "sigma", "sing", "upair", "Un",
    "dom", "ran", "Fun", "ON", "Nat", "V",
];

/// Named classes usable on the right of `in` while parsing templates.
pub type ClassEnv = BTreeMap<String, ClassTerm>;

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    classes: &'a ClassEnv,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(text: &str, classes: &'a ClassEnv) -> Result<Self> {
        let toks = lex(text)?;
        let lines = text.split('\n').count();
        let last = text.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        Ok(Parser {
            toks,
            pos: 0,
            classes,
            end: (lines, last),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn var(&mut self) -> Result<Var> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) && is_valid_name(&s) => {
                self.pos += 1;
                Ok(Var::new(&s))
            }
            _ => self.err("expected a variable"),
        }
    }

    fn formula(&mut self) -> Result<Surface> {
        if self.is_kw("forall") || self.is_kw("exists") {
            return self.quantified();
        }
        self.iff()
    }

    fn quantified(&mut self) -> Result<Surface> {
        let universal = self.is_kw("forall");
        self.pos += 1;
        let mut vars = vec![self.var()?];
        while self.peek() != Some(&Tok::Dot) {
            vars.push(self.var()?);
        }
        self.expect(Tok::Dot, "`.` after quantified variables")?;
        let body = self.formula()?;
        Ok(if universal {
            Surface::forall_all(&vars, body)
        } else {
            Surface::exists_all(&vars, body)
        })
    }

    fn iff(&mut self) -> Result<Surface> {
        let mut lhs = self.imp()?;
        while self.peek() == Some(&Tok::DArrow) {
            self.pos += 1;
            let rhs = self.operand(Self::imp)?;
            lhs = Surface::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Surface> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.operand(Self::imp)?;
            return Ok(Surface::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Surface> {
        let mut items = vec![self.and()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            items.push(self.operand(Self::and)?);
        }
        Ok(Surface::or(items))
    }

    fn and(&mut self) -> Result<Surface> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            items.push(self.operand(Self::unary)?);
        }
        Ok(Surface::and(items))
    }

    /// A right operand may be an unparenthesized quantifier extending to the end.
    fn operand(&mut self, next: fn(&mut Self) -> Result<Surface>) -> Result<Surface> {
        if self.is_kw("forall") || self.is_kw("exists") {
            self.quantified()
        } else {
            next(self)
        }
    }

    fn unary(&mut self) -> Result<Surface> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Surface::not(self.operand(Self::unary)?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(s)) if s == "forall" || s == "exists" => self.quantified(),
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(Surface::True)
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                Ok(Surface::False)
            }
            Some(Tok::Ident(s))
                if matches!(s.as_str(), "Fun" | "ON" | "Nat")
                    && self.peek_at(1) == Some(&Tok::LParen) =>
            {
                let p = match s.as_str() {
                    "Fun" => Pred::Fun,
                    "ON" => Pred::On,
                    _ => Pred::Nat,
                };
                self.pos += 2;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Surface::Pred(p, t))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Surface> {
        let lhs = self.term()?;
        let op = self.bump();
        let rhs = |p: &mut Self| p.term();
        match op {
            Some(Tok::Ident(s)) if s == "in" => Ok(Surface::Mem(lhs, rhs(self)?)),
            Some(Tok::Ident(s)) if s == "notin" => Ok(Surface::not(Surface::Mem(lhs, rhs(self)?))),
            Some(Tok::Ident(s)) if s == "sub" => Ok(Surface::Sub(lhs, rhs(self)?)),
            Some(Tok::Equals) => Ok(Surface::Eq(lhs, rhs(self)?)),
            Some(Tok::NotEquals) => Ok(Surface::not(Surface::Eq(lhs, rhs(self)?))),
            _ => {
                self.pos -= 1;
                self.err("expected `in`, `notin`, `=`, `!=` or `sub`")
            }
        }
    }

    fn unary_term(&mut self, ctor: fn(Term) -> Term) -> Result<Term> {
        self.expect(Tok::LParen, "`(`")?;
        let t = self.term()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(ctor(t))
    }

    fn term(&mut self) -> Result<Term> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(0)) => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Num(1)) => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(Tok::Num(n)) => self.err(format!("numeral {n} is not a term (only 0 and 1)")),
            Some(Tok::Lt) => {
                self.pos += 1;
                let a = self.term()?;
                self.expect(Tok::Comma, "`,` in pair")?;
                let b = self.term()?;
                self.expect(Tok::Gt, "`>` closing pair")?;
                Ok(Term::pair(a, b))
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let var = self.var()?;
                self.expect(Tok::Bar, "`|` in class")?;
                let body = self.formula()?;
                self.expect(Tok::RBrace, "`}` closing class")?;
                Ok(Term::Class(Box::new(ClassTerm { var, body })))
            }
            Some(Tok::Ident(s)) => {
                let call = self.peek_at(1) == Some(&Tok::LParen);
                match (s.as_str(), call) {
                    ("sigma", true) => {
                        self.pos += 1;
                        self.unary_term(Term::sigma)
                    }
                    ("sing", true) => {
                        self.pos += 1;
                        self.unary_term(Term::sing)
                    }
                    ("Un", true) => {
                        self.pos += 1;
                        self.unary_term(Term::union)
                    }
                    ("dom", true) => {
                        self.pos += 1;
                        self.unary_term(Term::dom)
                    }
                    ("ran", true) => {
                        self.pos += 1;
                        self.unary_term(Term::ran)
                    }
                    ("upair", true) => {
                        self.pos += 2;
                        let a = self.term()?;
                        self.expect(Tok::Comma, "`,` in upair")?;
                        let b = self.term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Term::upair(a, b))
                    }
                    (name, true) => Err(Error::UnknownOperator {
                        name: name.to_string(),
                        line,
                        col,
                    }),
                    ("V", false) => {
                        self.pos += 1;
                        let x = Var::new("x");
                        Ok(Term::class(&x, Surface::eq(&x, &x)))
                    }
                    ("ON", false) | ("Nat", false) => {
                        self.pos += 1;
                        let x = Var::new("x");
                        let p = if s == "ON" { Pred::On } else { Pred::Nat };
                        Ok(Term::class(&x, Surface::Pred(p, Term::var(&x))))
                    }
                    (name, false) if self.classes.contains_key(name) => {
                        self.pos += 1;
                        Ok(Term::Class(Box::new(self.classes[name].clone())))
                    }
                    _ => Ok(Term::Var(self.var()?)),
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn var_list(&mut self, stop: &Tok) -> Result<Vec<Var>> {
        let mut vars = Vec::new();
        if self.peek() == Some(stop) {
            return Ok(vars);
        }
        vars.push(self.var()?);
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            vars.push(self.var()?);
        }
        Ok(vars)
    }

    fn formula_list(&mut self, stop: &Tok) -> Result<Vec<Surface>> {
        let mut fs = Vec::new();
        if self.peek() == Some(stop) {
            return Ok(fs);
        }
        fs.push(self.formula()?);
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            fs.push(self.formula()?);
        }
        Ok(fs)
    }
}

pub fn parse(text: &str) -> Result<Surface> {
    parse_with(text, &ClassEnv::new())
}

/// Parses with extra named classes in scope (`t in P` for a registered `P`).
pub fn parse_with(text: &str, classes: &ClassEnv) -> Result<Surface> {
    let mut p = Parser::new(text, classes)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// `x1, ..., xn |- body`; an empty context is written `|- body`.
pub fn parse_in_context(text: &str) -> Result<(Vec<Var>, Surface)> {
    let env = ClassEnv::new();
    let mut p = Parser::new(text, &env)?;
    let ctx = p.var_list(&Tok::Turnstile)?;
    p.expect(Tok::Turnstile, "`|-` after context")?;
    let body = p.formula()?;
    p.finish()?;
    Ok((ctx, body))
}

/// `h1, ..., hn |- goal`.
pub fn parse_sequent(text: &str) -> Result<(Vec<Surface>, Surface)> {
    let env = ClassEnv::new();
    let mut p = Parser::new(text, &env)?;
    let hyps = p.formula_list(&Tok::Turnstile)?;
    p.expect(Tok::Turnstile, "`|-`")?;
    let goal = p.formula()?;
    p.finish()?;
    Ok((hyps, goal))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Var {
        Var::new(s)
    }

    #[test]
    fn forall_not_member() {
        let f = parse("forall t. ~(t in x)").unwrap();
        assert_eq!(
            f,
            Surface::forall(&v("t"), Surface::not(Surface::mem(&v("t"), &v("x"))))
        );
    }

    #[test]
    fn sub_is_pseudo_atom() {
        assert_eq!(parse("x sub y").unwrap(), Surface::sub(&v("x"), &v("y")));
    }

    #[test]
    fn class_membership() {
        let f = parse("t in {x | x = x}").unwrap();
        assert_eq!(
            f,
            Surface::mem(&v("t"), Term::class(&v("x"), Surface::eq(&v("x"), &v("x"))))
        );
    }

    #[test]
    fn precedence_and_quantifier_scope() {
        let f = parse("a in b /\\ c in d \\/ e = f -> g = h <-> true").unwrap();
        assert_eq!(
            f.to_string(),
            "a in b /\\ c in d \\/ e = f -> g = h <-> true"
        );
        let g = parse("x = y -> forall z. z in x /\\ z in y").unwrap();
        assert!(matches!(g, Surface::Implies(_, ref r) if matches!(**r, Surface::Forall(..))));
    }

    #[test]
    fn pseudo_terms() {
        let f = parse("<x, sing(y)> in Un(upair(sigma(0), 1))").unwrap();
        assert_eq!(f.to_string(), "<x,sing(y)> in Un(upair(sigma(0),1))");
        assert!(parse("Fun(f) /\\ ON(x) /\\ Nat(y) /\\ t in ON").is_ok());
    }

    #[test]
    fn errors_have_positions() {
        match parse("forall t.\n  t in") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse("foo(x) = y") {
            Err(Error::UnknownOperator { name, line, col }) => {
                assert_eq!((name.as_str(), line, col), ("foo", 1, 1))
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("x = ").is_err());
        assert!(parse("x = y )").is_err());
    }

    #[test]
    fn contexts_and_sequents() {
        let (ctx, body) = parse_in_context("x, y |- x in y").unwrap();
        assert_eq!(ctx, vec![v("x"), v("y")]);
        assert_eq!(body, Surface::mem(&v("x"), &v("y")));
        let (ctx, _) = parse_in_context("|- true").unwrap();
        assert!(ctx.is_empty());
        let (hyps, goal) = parse_sequent("x in y, y in z |- exists w. w = w").unwrap();
        assert_eq!(hyps.len(), 2);
        assert!(matches!(goal, Surface::Exists(..)));
    }
}

//! Text syntax for elements.
//!
//! ```text
//! element := ["-"] term (("+" | "-") term)*  |  "0"
//! term    := [rational ["*"]] word  |  rational
//! word    := factor (("." | ";") factor)*
//! factor  := id  |  "g(" id ("." id)* ")"
//! ```
//!
//! An `id` names a vertex or an edge; `g(e1.e2)` is the ghost path
//! `(e1 e2)* = e2* e1*`. Juxtaposed factors multiply, so
//! `3/2 * e1.e2 ; g(e3)` is `(3/2)·e1 e2 e3*`. A bare rational is a multiple
//! of the unit. Ids containing whitespace or any of `+-*/.;()` cannot be
//! written in this syntax.

use num::{BigInt, One, Signed, Zero};

use super::element::{Element, Leavitt, Monomial, Scalar};
use super::KernelError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
    Semi,
    Open,
    Close,
}

fn is_punct(c: char) -> bool {
    "+-*/.;()".contains(c)
}

fn tokenize(text: &str) -> Result<Vec<Token>, KernelError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '.' => Some(Token::Dot),
            ';' => Some(Token::Semi),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(t);
            chars.next();
            continue;
        }
        let mut end = i;
        while let Some(&(j, d)) = chars.peek() {
            if d.is_whitespace() || is_punct(d) {
                break;
            }
            end = j + d.len_utf8();
            chars.next();
        }
        let word = &text[i..end];
        if word.chars().all(|d| d.is_ascii_digit()) {
            out.push(Token::Number(word.parse().expect("digits parse")));
        } else {
            out.push(Token::Ident(word.to_string()));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a Leavitt,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error(&self, msg: impl Into<String>) -> KernelError {
        KernelError::Syntax {
            position: self.pos,
            message: msg.into(),
        }
    }

    fn expect(&mut self, want: Token) -> Result<(), KernelError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(self.error(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn element(&mut self) -> Result<Element, KernelError> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.alg.neg(&acc);
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = self.alg.sub(&acc, &t)?;
                }
                None => return Ok(acc),
                Some(t) => return Err(self.error(format!("unexpected {t:?}"))),
            }
        }
    }

    fn term(&mut self) -> Result<Element, KernelError> {
        let mut coeff = None;
        if let Some(Token::Number(n)) = self.peek().cloned() {
            self.next();
            let mut c = Scalar::from_integer(n);
            if self.peek() == Some(&Token::Slash) {
                self.next();
                match self.next() {
                    Some(Token::Number(d)) if !d.is_zero() => c /= Scalar::from_integer(d),
                    _ => return Err(self.error("expected nonzero denominator")),
                }
            }
            if self.peek() == Some(&Token::Star) {
                self.next();
            }
            coeff = Some(c);
        }
        let starts_word = matches!(self.peek(), Some(Token::Ident(_)));
        let body = if starts_word {
            self.word()?
        } else if coeff.is_some() {
            self.alg.one()
        } else {
            return Err(self.error("expected a term"));
        };
        Ok(match coeff {
            Some(c) => self.alg.scale(&body, &c),
            None => body,
        })
    }

    fn word(&mut self) -> Result<Element, KernelError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Dot | Token::Semi)) {
            self.next();
            let f = self.factor()?;
            acc = self.alg.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element, KernelError> {
        let Some(Token::Ident(id)) = self.next() else {
            return Err(self.error("expected an id"));
        };
        if id == "g" && self.peek() == Some(&Token::Open) {
            self.next();
            let mut ids = vec![self.ident()?];
            while self.peek() == Some(&Token::Dot) {
                self.next();
                ids.push(self.ident()?);
            }
            self.expect(Token::Close)?;
            let path = self
                .alg
                .graph()
                .path_from_ids(ids.iter().map(String::as_str))?;
            return Ok(self.alg.ghost_path(&path));
        }
        let g = self.alg.graph();
        match (g.lookup_vertex(&id), g.lookup_edge(&id)) {
            (Some(_), Some(_)) => Err(self.error(format!("`{id}` names both a vertex and an edge"))),
            (Some(v), None) => Ok(self.alg.vertex(v)),
            (None, Some(e)) => Ok(self.alg.edge(e)),
            (None, None) => Err(self.error(format!("unknown id `{id}`"))),
        }
    }

    fn ident(&mut self) -> Result<String, KernelError> {
        match self.next() {
            Some(Token::Ident(id)) => Ok(id),
            other => Err(self.error(format!("expected an edge id, found {other:?}"))),
        }
    }
}

impl Leavitt {
    /// Parses an element literal; see the module docs for the grammar.
    pub fn parse(&self, text: &str) -> Result<Element, KernelError> {
        let tokens = tokenize(text)?;
        if tokens == [Token::Number(BigInt::zero())] {
            return Ok(self.zero());
        }
        let mut p = Parser {
            alg: self,
            tokens,
            pos: 0,
        };
        p.element()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let g = self.graph();
        match (m.real.is_trivial(), m.ghost.is_trivial()) {
            (true, true) => g.vertex_id(m.real.start).to_string(),
            (false, true) => g.format_path(&m.real),
            (true, false) => format!("g({})", g.format_path(&m.ghost)),
            (false, false) => format!("{};g({})", g.format_path(&m.real), g.format_path(&m.ghost)),
        }
    }

    /// Renders an element in the literal syntax accepted by [`Leavitt::parse`].
    pub fn format(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in x.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&self.format_monomial(m));
        }
        out
    }
}

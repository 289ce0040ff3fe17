//! Substitution expressions and their text form.
//!
//! ```text
//! expr  := c(k) | a(k) | n
//!        | lin(expr, ...) | dir(expr, ...)
//!        | sub(ctx; expr, ...)          ctx is an expression or a poset file path
//!        | q[r0, r1, ...](expr, ...)    labelled sum, each r in {-1, 0, +1}
//!        | p:path                       poset file
//!        | p{k: i<j, ...}               inline poset literal
//! ```
//!
//! Printing uses no whitespace, so `parse(print(e)) == e`.

use std::fmt;
use std::path::Path;

use crate::order::Poset;
use crate::substitution::{direct_sum, linear_sum, poset_substitute, q_i_r, LabelledChain, Sign};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Chain(usize),
    Antichain(usize),
    N,
    Lin(Vec<Expr>),
    Dir(Vec<Expr>),
    Sub {
        context: Box<Expr>,
        blocks: Vec<Expr>,
    },
    Labelled {
        signs: Vec<Sign>,
        blocks: Vec<Expr>,
    },
    /// A concrete poset, remembered with the file it came from, if any.
    Literal {
        poset: Poset,
        path: Option<String>,
    },
}

impl Expr {
    pub fn literal(poset: Poset) -> Expr {
        Expr::Literal { poset, path: None }
    }

    /// Parses expression text, reading `p:path` and path contexts from disk.
    pub fn parse(text: &str) -> Result<Expr> {
        Expr::parse_with(text, &|path| crate::io::read_poset_file(Path::new(path)))
    }

    /// Parses with a caller-supplied loader for file references.
    pub fn parse_with(text: &str, load: &dyn Fn(&str) -> Result<Poset>) -> Result<Expr> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            load,
        };
        let e = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self) -> Result<Poset> {
        match self {
            Expr::Chain(k) => Poset::chain(*k),
            Expr::Antichain(k) => Poset::antichain(*k),
            Expr::N => Poset::from_strict_pairs(4, &[(0, 1), (2, 1), (2, 3)]),
            Expr::Lin(items) => linear_sum(&eval_all(items)?),
            Expr::Dir(items) => direct_sum(&eval_all(items)?),
            Expr::Sub { context, blocks } => poset_substitute(&context.eval()?, &eval_all(blocks)?),
            Expr::Labelled { signs, blocks } => {
                if signs.len() != blocks.len() {
                    return Err(Error::Arity {
                        expected: signs.len(),
                        got: blocks.len(),
                    });
                }
                poset_substitute(&q_i_r(signs)?, &eval_all(blocks)?)
            }
            Expr::Literal { poset, .. } => Ok(poset.clone()),
        }
    }

    /// Labelled chain described by a `q[...]` expression.
    pub fn to_labelled_chain(&self) -> Result<LabelledChain> {
        match self {
            Expr::Labelled { signs, blocks } if signs.len() == blocks.len() => {
                LabelledChain::new(eval_all(blocks)?.into_iter().zip(signs.iter().copied()).collect())
            }
            Expr::Labelled { signs, blocks } => Err(Error::Arity {
                expected: signs.len(),
                got: blocks.len(),
            }),
            _ => Err(Error::Precondition("expected a labelled sum q[...](...)".into())),
        }
    }

    /// `q[...]` expression for a labelled chain whose blocks are written as
    /// chains, antichains or inline literals.
    pub fn from_labelled_chain(chain: &LabelledChain) -> Expr {
        Expr::Labelled {
            signs: chain.signs(),
            blocks: chain.labels().iter().map(|(p, _)| Expr::atom_for(p)).collect(),
        }
    }

    /// Shortest atom denoting `p`.
    pub fn atom_for(p: &Poset) -> Expr {
        if p.is_chain() {
            Expr::Chain(p.len())
        } else if p.is_antichain() {
            Expr::Antichain(p.len())
        } else {
            Expr::literal(p.clone())
        }
    }
}

fn eval_all(items: &[Expr]) -> Result<Vec<Poset>> {
    items.iter().map(Expr::eval).collect()
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Chain(k) => write!(f, "c({k})"),
            Expr::Antichain(k) => write!(f, "a({k})"),
            Expr::N => f.write_str("n"),
            Expr::Lin(items) => {
                f.write_str("lin(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
            Expr::Dir(items) => {
                f.write_str("dir(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
            Expr::Sub { context, blocks } => {
                match context.as_ref() {
                    Expr::Literal { path: Some(path), .. } => write!(f, "sub({path};")?,
                    other => write!(f, "sub({other};")?,
                }
                write_list(f, blocks)?;
                f.write_str(")")
            }
            Expr::Labelled { signs, blocks } => {
                f.write_str("q[")?;
                for (i, s) in signs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(match s {
                        Sign::Minus => "-1",
                        Sign::Zero => "0",
                        Sign::Plus => "+1",
                    })?;
                }
                f.write_str("](")?;
                write_list(f, blocks)?;
                f.write_str(")")
            }
            Expr::Literal { path: Some(path), .. } => write!(f, "p:{path}"),
            Expr::Literal { poset, path: None } => {
                write!(f, "p{{{}:", poset.len())?;
                for (i, (a, b)) in poset.covers().into_iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}<{b}")?;
                }
                f.write_str("}")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    load: &'a dyn Fn(&str) -> Result<Poset>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::parse(1, format!("{message} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected a number"))
    }

    fn path(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && !matches!(self.src[self.pos], b',' | b')' | b';') && !self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a path"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn list(&mut self) -> Result<Vec<Expr>> {
        let mut items = vec![self.expr()?];
        while self.eat(b',') {
            items.push(self.expr()?);
        }
        self.expect(b')')?;
        Ok(items)
    }

    fn sign(&mut self) -> Result<Sign> {
        self.skip_ws();
        let negative = self.eat(b'-');
        let positive = !negative && self.eat(b'+');
        let value = match self.peek() {
            Some(b'0'..=b'9') => self.number()? as i64,
            _ if negative || positive => 1,
            _ => return Err(self.error("expected -1, 0 or +1")),
        };
        let value = if negative { -value } else { value };
        i8::try_from(value)
            .ok()
            .and_then(Sign::from_i8)
            .ok_or_else(|| self.error("sign must be -1, 0 or +1"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let start = self.pos;
        let head = self.word();
        match head.as_str() {
            "c" | "chain" | "a" | "antichain" => {
                self.expect(b'(')?;
                let k = self.number()?;
                self.expect(b')')?;
                if k == 0 {
                    return Err(self.error("blocks must be non-empty"));
                }
                Ok(if head.starts_with('c') { Expr::Chain(k) } else { Expr::Antichain(k) })
            }
            "n" | "N" => Ok(Expr::N),
            "lin" => {
                self.expect(b'(')?;
                Ok(Expr::Lin(self.list()?))
            }
            "dir" => {
                self.expect(b'(')?;
                Ok(Expr::Dir(self.list()?))
            }
            "sub" => {
                self.expect(b'(')?;
                let context = self.context()?;
                self.expect(b';')?;
                let blocks = self.list()?;
                Ok(Expr::Sub {
                    context: Box::new(context),
                    blocks,
                })
            }
            "q" => {
                self.expect(b'[')?;
                self.skip_ws();
                if self.src[self.pos..].starts_with(b"r=") {
                    self.pos += 2;
                }
                let mut signs = vec![self.sign()?];
                while self.eat(b',') {
                    signs.push(self.sign()?);
                }
                self.expect(b']')?;
                self.expect(b'(')?;
                let blocks = self.list()?;
                if blocks.len() != signs.len() {
                    return Err(Error::Arity {
                        expected: signs.len(),
                        got: blocks.len(),
                    });
                }
                Ok(Expr::Labelled { signs, blocks })
            }
            "p" if self.eat(b':') => {
                let path = self.path()?;
                let poset = (self.load)(&path)?;
                Ok(Expr::Literal {
                    poset,
                    path: Some(path),
                })
            }
            "p" if self.eat(b'{') => self.inline_literal(),
            _ => {
                self.pos = start;
                Err(self.error("unknown expression"))
            }
        }
    }

    fn context(&mut self) -> Result<Expr> {
        let start = self.pos;
        if let Ok(e) = self.expr() {
            if matches!(self.peek(), Some(b';')) {
                return Ok(e);
            }
        }
        self.pos = start;
        let path = self.path()?;
        let poset = (self.load)(&path)?;
        Ok(Expr::Literal {
            poset,
            path: Some(path),
        })
    }

    fn inline_literal(&mut self) -> Result<Expr> {
        let n = self.number()?;
        self.expect(b':')?;
        let mut pairs = Vec::new();
        if !self.eat(b'}') {
            loop {
                let i = self.number()?;
                self.expect(b'<')?;
                let j = self.number()?;
                pairs.push((i, j));
                if self.eat(b'}') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        Ok(Expr::literal(Poset::from_strict_pairs(n, &pairs)?))
    }
}

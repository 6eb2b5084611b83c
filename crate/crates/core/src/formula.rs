//! SLCS formulas: syntax tree, concrete syntax, desugaring and size.
//!
//! Concrete syntax, loosest to tightest binding:
//!
//! ```text
//! formula := until
//! until   := or (("U" | "R") until)?          right-associative
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := ("!" | "N" | "I" | "B" | "Bi" | "Bp" | "G" | "F") unary | atom
//! atom    := "top" | "bot" | IDENT | color | "(" formula ")"
//! color   := "color" "(" range "," range "," range ")"    range := INT (".." INT)?
//! ```
//!
//! `N` is the closure modality, `I` interior, `B` boundary, `Bi`/`Bp` the
//! interior and closure boundaries, `U` until, `R` its reachability dual,
//! `G`/`F` everywhere-reachable and somewhere-reachable. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Closure modality ◇.
    Near(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),

    Bot,
    Or(Box<Formula>, Box<Formula>),
    /// □φ = ¬◇¬φ
    Interior(Box<Formula>),
    /// ∂φ = ◇φ ∧ ¬□φ
    Boundary(Box<Formula>),
    /// ∂⁻φ = φ ∧ ¬□φ
    IBoundary(Box<Formula>),
    /// ∂⁺φ = ◇φ ∧ ¬φ
    CBoundary(Box<Formula>),
    /// φ R ψ = ¬((¬ψ) U (¬φ))
    Reach(Box<Formula>, Box<Formula>),
    /// Gφ = φ U ⊥
    Global(Box<Formula>),
    /// Fφ = ¬G¬φ
    Future(Box<Formula>),
}

pub use Formula::*;

// Constructors read better than `Box::new` soup in tests and desugaring.
impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Atom(name.into())
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Self {
        And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Self {
        Or(Box::new(a), Box::new(b))
    }
    pub fn near(f: Formula) -> Self {
        Near(Box::new(f))
    }
    pub fn until(a: Formula, b: Formula) -> Self {
        Until(Box::new(a), Box::new(b))
    }
    pub fn reach(a: Formula, b: Formula) -> Self {
        Reach(Box::new(a), Box::new(b))
    }
    pub fn interior(f: Formula) -> Self {
        Interior(Box::new(f))
    }
    pub fn boundary(f: Formula) -> Self {
        Boundary(Box::new(f))
    }
    pub fn iboundary(f: Formula) -> Self {
        IBoundary(Box::new(f))
    }
    pub fn cboundary(f: Formula) -> Self {
        CBoundary(Box::new(f))
    }
    pub fn global(f: Formula) -> Self {
        Global(Box::new(f))
    }
    pub fn future(f: Formula) -> Self {
        Future(Box::new(f))
    }

    /// Whether the tree uses only `p ⊤ ¬ ∧ ◇ U`.
    pub fn is_core(&self) -> bool {
        match self {
            Atom(_) | Top => true,
            Not(a) | Near(a) => a.is_core(),
            And(a, b) | Until(a, b) => a.is_core() && b.is_core(),
            _ => false,
        }
    }

    /// Rewrites every derived operator into core constructors.
    pub fn desugar(&self) -> Formula {
        let d = |f: &Formula| f.desugar();
        match self {
            Atom(p) => Atom(p.clone()),
            Top => Top,
            Not(a) => Formula::not(d(a)),
            And(a, b) => Formula::and(d(a), d(b)),
            Near(a) => Formula::near(d(a)),
            Until(a, b) => Formula::until(d(a), d(b)),
            Bot => Formula::not(Top),
            Or(a, b) => Formula::not(Formula::and(Formula::not(d(a)), Formula::not(d(b)))),
            Interior(a) => core_interior(d(a)),
            Boundary(a) => {
                let a = d(a);
                Formula::and(Formula::near(a.clone()), Formula::not(core_interior(a)))
            }
            IBoundary(a) => {
                let a = d(a);
                Formula::and(a.clone(), Formula::not(core_interior(a)))
            }
            CBoundary(a) => {
                let a = d(a);
                Formula::and(Formula::near(a.clone()), Formula::not(a))
            }
            Reach(a, b) => Formula::not(Formula::until(Formula::not(d(b)), Formula::not(d(a)))),
            Global(a) => core_global(d(a)),
            Future(a) => Formula::not(core_global(Formula::not(d(a)))),
        }
    }

    /// Operator count plus leaves; defined on core formulas only.
    pub fn size(&self) -> Result<usize> {
        Ok(match self {
            Atom(_) | Top => 1,
            Not(a) | Near(a) => 1 + a.size()?,
            And(a, b) | Until(a, b) => 1 + a.size()? + b.size()?,
            other => return Err(Error::DerivedOperator(other.operator_name())),
        })
    }

    pub fn depth(&self) -> usize {
        match self {
            Atom(_) | Top | Bot => 0,
            Not(a) | Near(a) | Interior(a) | Boundary(a) | IBoundary(a) | CBoundary(a) | Global(a) | Future(a) => {
                1 + a.depth()
            }
            And(a, b) | Or(a, b) | Until(a, b) | Reach(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Proposition letters occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Atom(p) => {
                out.insert(p);
            }
            Top | Bot => {}
            Not(a) | Near(a) | Interior(a) | Boundary(a) | IBoundary(a) | CBoundary(a) | Global(a) | Future(a) => {
                a.collect_atoms(out)
            }
            And(a, b) | Or(a, b) | Until(a, b) | Reach(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Concrete-syntax spelling of the head constructor.
    pub fn operator_name(&self) -> &'static str {
        match self {
            Atom(_) => "atom",
            Top => "top",
            Bot => "bot",
            Not(_) => "!",
            And(..) => "&",
            Or(..) => "|",
            Near(_) => "N",
            Interior(_) => "I",
            Boundary(_) => "B",
            IBoundary(_) => "Bi",
            CBoundary(_) => "Bp",
            Until(..) => "U",
            Reach(..) => "R",
            Global(_) => "G",
            Future(_) => "F",
        }
    }
}

fn core_interior(a: Formula) -> Formula {
    Formula::not(Formula::near(Formula::not(a)))
}

fn core_global(a: Formula) -> Formula {
    Formula::until(a, Formula::not(Top))
}

// ---------------------------------------------------------------------------
// printing

const PREC_UNTIL: u8 = 0;
const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_UNARY: u8 = 3;

impl Formula {
    fn precedence(&self) -> u8 {
        match self {
            Until(..) | Reach(..) => PREC_UNTIL,
            Or(..) => PREC_OR,
            And(..) => PREC_AND,
            _ => PREC_UNARY,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let parens = self.precedence() < min_prec;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Atom(p) => f.write_str(p)?,
            Top => f.write_str("top")?,
            Bot => f.write_str("bot")?,
            Not(a) => {
                f.write_str("!")?;
                a.write_at(f, PREC_UNARY)?;
            }
            Near(a) | Interior(a) | Boundary(a) | IBoundary(a) | CBoundary(a) | Global(a) | Future(a) => {
                write!(f, "{} ", self.operator_name())?;
                a.write_at(f, PREC_UNARY)?;
            }
            And(a, b) | Or(a, b) => {
                let p = self.precedence();
                a.write_at(f, p)?;
                write!(f, " {} ", self.operator_name())?;
                b.write_at(f, p + 1)?;
            }
            Until(a, b) | Reach(a, b) => {
                a.write_at(f, PREC_OR)?;
                write!(f, " {} ", self.operator_name())?;
                b.write_at(f, PREC_UNTIL)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, PREC_UNTIL)
    }
}

// ---------------------------------------------------------------------------
// lexing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Bang,
    Amp,
    Pipe,
    LParen,
    RParen,
    Unary(&'static str),
    Binary(&'static str),
    Eof,
}

const UNARY_KEYWORDS: [&str; 7] = ["N", "I", "B", "Bi", "Bp", "G", "F"];
const BINARY_KEYWORDS: [&str; 2] = ["U", "R"];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    end: usize,
}

impl<'a> Lexer<'a> {
    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..self.end].chars().next()
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..self.end]
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == '#' {
                while let Some(c) = self.peek_char() {
                    if c == '\n' {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
            } else {
                break;
            }
        }
    }

    /// Returns the token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_trivia();
        let start = self.pos;
        let Some(c) = self.peek_char() else {
            return Ok((Tok::Eof, start));
        };
        let single = match c {
            '!' => Some(Tok::Bang),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Pipe),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, start));
        }
        if is_ident_start(c) {
            let len = self
                .rest()
                .find(|c: char| !is_ident_char(c))
                .unwrap_or(self.end - start);
            let word = &self.src[start..start + len];
            self.pos += len;
            let tok = match word {
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                "color" => Tok::Ident(self.color_atom(start)?),
                w => {
                    if let Some(k) = UNARY_KEYWORDS.iter().find(|&&k| k == w) {
                        Tok::Unary(k)
                    } else if let Some(k) = BINARY_KEYWORDS.iter().find(|&&k| k == w) {
                        Tok::Binary(k)
                    } else {
                        Tok::Ident(w.to_string())
                    }
                }
            };
            return Ok((tok, start));
        }
        let op_len = self
            .rest()
            .find(|c: char| c.is_alphanumeric() || c.is_whitespace() || "()!&|#".contains(c))
            .unwrap_or(self.end - start)
            .max(c.len_utf8());
        Err(Error::syntax(
            self.src,
            start,
            format!("unknown operator `{}`", &self.src[start..start + op_len]),
        ))
    }

    /// Parses `(lo..hi, lo..hi, lo..hi)` after the `color` keyword into a
    /// canonical atom name.
    fn color_atom(&mut self, start: usize) -> Result<String> {
        let rest = self.rest();
        let trimmed = rest.trim_start();
        if !trimmed.starts_with('(') {
            return Err(Error::syntax(self.src, self.pos, "expected `(` after `color`"));
        }
        let open = self.pos + (rest.len() - trimmed.len());
        let Some(close_rel) = self.src[open..self.end].find(')') else {
            return Err(Error::syntax(self.src, open, "unterminated color range"));
        };
        let close = open + close_rel;
        let body = &self.src[open + 1..close];
        let ranges: Vec<&str> = body.split(',').collect();
        if ranges.len() != 3 {
            return Err(Error::syntax(self.src, start, "color needs three channel ranges"));
        }
        let mut canon = Vec::with_capacity(3);
        for r in ranges {
            let (lo, hi) = match r.split_once("..") {
                Some((lo, hi)) => (lo.trim(), hi.trim()),
                None => (r.trim(), r.trim()),
            };
            let parse = |s: &str| {
                s.parse::<u8>()
                    .map_err(|_| Error::syntax(self.src, start, format!("bad channel value `{s}`")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(Error::syntax(
                    self.src,
                    start,
                    format!("empty channel range {lo}..{hi}"),
                ));
            }
            canon.push(format!("{lo}..{hi}"));
        }
        self.pos = close + 1;
        Ok(format!("color({})", canon.join(",")))
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    tok_pos: usize,
}

/// Parses a formula in the concrete syntax described in the module docs.
pub fn parse(src: &str) -> Result<Formula> {
    parse_span(src, 0..src.len())
}

/// Parses the formula occupying `span` of `src`; error positions refer to
/// the whole of `src`.
pub(crate) fn parse_span(src: &str, span: std::ops::Range<usize>) -> Result<Formula> {
    let mut lexer = Lexer {
        src,
        pos: span.start,
        end: span.end,
    };
    let (tok, tok_pos) = lexer.next()?;
    let mut p = Parser { lexer, tok, tok_pos };
    let f = p.until()?;
    if p.tok != Tok::Eof {
        return Err(p.error(format!("unexpected {}", describe(&p.tok))));
    }
    Ok(f)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Top => "`top`".into(),
        Tok::Bot => "`bot`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Pipe => "`|`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Unary(k) | Tok::Binary(k) => format!("`{k}`"),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser<'_> {
    fn bump(&mut self) -> Result<Tok> {
        let (next, pos) = self.lexer.next()?;
        self.tok_pos = pos;
        Ok(std::mem::replace(&mut self.tok, next))
    }

    fn error(&self, msg: String) -> Error {
        Error::syntax(self.lexer.src, self.tok_pos, msg)
    }

    fn until(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        match self.tok {
            Tok::Binary("U") => {
                self.bump()?;
                Ok(Formula::until(lhs, self.until()?))
            }
            Tok::Binary(_) => {
                self.bump()?;
                Ok(Formula::reach(lhs, self.until()?))
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.tok == Tok::Pipe {
            self.bump()?;
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.tok == Tok::Amp {
            self.bump()?;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let wrap: fn(Formula) -> Formula = match self.tok {
            Tok::Bang => Formula::not,
            Tok::Unary("N") => Formula::near,
            Tok::Unary("I") => Formula::interior,
            Tok::Unary("B") => Formula::boundary,
            Tok::Unary("Bi") => Formula::iboundary,
            Tok::Unary("Bp") => Formula::cboundary,
            Tok::Unary("G") => Formula::global,
            Tok::Unary(_) => Formula::future,
            _ => return self.atom(),
        };
        self.bump()?;
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.tok {
            Tok::Top => {
                self.bump()?;
                Ok(Top)
            }
            Tok::Bot => {
                self.bump()?;
                Ok(Bot)
            }
            Tok::Ident(_) => match self.bump()? {
                Tok::Ident(name) => Ok(Atom(name)),
                _ => unreachable!(),
            },
            Tok::LParen => {
                self.bump()?;
                let f = self.until()?;
                if self.tok != Tok::RParen {
                    return Err(self.error(format!("expected `)`, found {}", describe(&self.tok))));
                }
                self.bump()?;
                Ok(f)
            }
            ref t => Err(self.error(format!("expected a formula, found {}", describe(t)))),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

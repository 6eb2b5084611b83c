//! Image scripts: bind formulas, paint satisfying pixels, save snapshots.
//!
//! ```text
//! # comment
//! let corridor = color(200..255, 200..255, 200..255);
//! paint "#FF0000" corridor U color(0..60, 150..255, 0..60);
//! save "out.ppm";
//! ```
//!
//! `let` evaluates its formula once and binds the result as a new letter.
//! Paints apply in statement order (last writer wins); runs of consecutive
//! paints are model checked as one batch.

use std::collections::{BTreeMap, HashSet};

use crate::checker::{check_all, check_with, CheckOptions, Stats, UnknownAtoms};
use crate::error::{Error, Result};
use crate::formula::{parse_span, Formula};
use crate::image::{image_to_model, paint, parse_hex_color, Adjacency, ColorPredicate, RasterImage, Rgb};

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Let { name: String, formula: Formula },
    Paint { color: Rgb, formula: Formula },
    Save { path: String },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScriptConfig {
    pub adjacency: Adjacency,
    pub unknown_atoms: UnknownAtoms,
}

/// Per-statement evaluation record.
#[derive(Clone, Debug)]
pub struct StatementReport {
    pub statement: usize,
    pub formula: String,
    pub points: usize,
    pub stats: Stats,
}

#[derive(Clone, Debug)]
pub struct ScriptRun {
    pub image: RasterImage,
    pub reports: Vec<StatementReport>,
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::syntax(self.src, at, msg)
    }

    fn skip_trivia(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'#' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn word(&mut self) -> Option<(&'a str, usize)> {
        self.skip_trivia();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((&self.src[start..start + len], start))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_trivia();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{c}`")))
        }
    }

    fn string(&mut self) -> Result<(&'a str, usize)> {
        self.skip_trivia();
        let start = self.pos;
        if !self.src[start..].starts_with('"') {
            return Err(self.err(start, "expected a quoted string"));
        }
        let Some(len) = self.src[start + 1..]
            .find(['"', '\n'])
            .filter(|&i| self.src[start + 1 + i..].starts_with('"'))
        else {
            return Err(self.err(start, "unterminated string"));
        };
        self.pos = start + len + 2;
        Ok((&self.src[start + 1..start + 1 + len], start))
    }

    /// Formula text up to the next `;` outside comments.
    fn formula(&mut self) -> Result<Formula> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = start;
        while i < bytes.len() && bytes[i] != b';' {
            if bytes[i] == b'#' {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            } else {
                i += 1;
            }
        }
        if i == bytes.len() {
            return Err(self.err(i, "expected `;`"));
        }
        let f = parse_span(self.src, start..i)?;
        self.pos = i + 1;
        Ok(f)
    }
}

pub fn parse_script(src: &str) -> Result<Script> {
    let mut sc = Scanner { src, pos: 0 };
    let mut statements = Vec::new();
    loop {
        sc.skip_trivia();
        if sc.pos == src.len() {
            break;
        }
        let Some((kw, at)) = sc.word() else {
            return Err(sc.err(sc.pos, "expected `let`, `paint` or `save`"));
        };
        let stmt = match kw {
            "let" => {
                let (name, at) = sc.word().ok_or_else(|| sc.err(sc.pos, "expected a binding name"))?;
                if matches!(
                    name,
                    "top" | "bot" | "color" | "N" | "I" | "B" | "Bi" | "Bp" | "G" | "F" | "U" | "R"
                ) || !name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                {
                    return Err(sc.err(at, format!("`{name}` cannot be used as a binding name")));
                }
                sc.expect('=')?;
                Statement::Let {
                    name: name.to_string(),
                    formula: sc.formula()?,
                }
            }
            "paint" => {
                let (text, at) = sc.string()?;
                let color = parse_hex_color(text)
                    .ok_or_else(|| sc.err(at, format!("bad colour `{text}`, expected #RRGGBB")))?;
                Statement::Paint {
                    color,
                    formula: sc.formula()?,
                }
            }
            "save" => {
                let (path, at) = sc.string()?;
                if path.is_empty() {
                    return Err(sc.err(at, "empty path"));
                }
                sc.expect(';')?;
                Statement::Save { path: path.to_string() }
            }
            other => return Err(sc.err(at, format!("unknown statement `{other}`"))),
        };
        statements.push(stmt);
    }
    Ok(Script { statements })
}

impl Script {
    fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Let { formula, .. } | Statement::Paint { formula, .. } => Some(formula),
            Statement::Save { .. } => None,
        })
    }

    /// Static checks: no paint after a save, every name bound before use.
    pub fn validate(&self, unknown_atoms: UnknownAtoms) -> Result<()> {
        if let Some(first_save) = self.statements.iter().position(|s| matches!(s, Statement::Save { .. })) {
            if let Some(i) = self.statements[first_save..]
                .iter()
                .position(|s| matches!(s, Statement::Paint { .. }))
            {
                return Err(Error::PaintAfterSave(first_save + i + 1));
            }
        }
        let all_bound: HashSet<&str> = self
            .statements
            .iter()
            .filter_map(|s| match s {
                Statement::Let { name, .. } => Some(name.as_str()),
                _ => None,
            })
            .collect();
        let mut bound = HashSet::new();
        for s in &self.statements {
            if let Statement::Let { formula, .. } | Statement::Paint { formula, .. } = s {
                for atom in formula.atoms() {
                    if atom.starts_with("color(") || bound.contains(atom) {
                        continue;
                    }
                    if all_bound.contains(atom) {
                        return Err(Error::UndefinedBinding(atom.to_string()));
                    }
                    if unknown_atoms == UnknownAtoms::Error {
                        return Err(Error::UnknownLetter(atom.to_string()));
                    }
                }
            }
            if let Statement::Let { name, .. } = s {
                bound.insert(name.as_str());
            }
        }
        Ok(())
    }
}

/// Runs `script` over `image`. `save` is called with the path and the
/// working image for every `save` statement.
pub fn run_script<F>(image: &RasterImage, script: &Script, config: ScriptConfig, mut save: F) -> Result<ScriptRun>
where
    F: FnMut(&str, &RasterImage) -> Result<()>,
{
    script.validate(config.unknown_atoms)?;
    let mut predicates = BTreeMap::new();
    for f in script.formulas() {
        for atom in f.atoms() {
            if atom.starts_with("color(") {
                predicates.insert(atom.to_string(), atom.parse::<ColorPredicate>()?);
            }
        }
    }
    let mut model = image_to_model(image, config.adjacency, &predicates)?;
    let opts = CheckOptions {
        unknown_atoms: config.unknown_atoms,
    };
    let mut working = image.clone();
    let mut reports = Vec::new();

    let mut i = 0;
    while i < script.statements.len() {
        match &script.statements[i] {
            Statement::Let { name, formula } => {
                let out = check_with(&model, formula, opts)?;
                reports.push(StatementReport {
                    statement: i + 1,
                    formula: format!("let {name} = {formula}"),
                    points: out.satisfying.len(),
                    stats: out.stats,
                });
                model.set_letter(name.clone(), out.satisfying)?;
                i += 1;
            }
            Statement::Save { path } => {
                save(path, &working)?;
                i += 1;
            }
            Statement::Paint { .. } => {
                let run: Vec<(Rgb, &Formula)> = script.statements[i..]
                    .iter()
                    .map_while(|s| match s {
                        Statement::Paint { color, formula } => Some((*color, formula)),
                        _ => None,
                    })
                    .collect();
                let formulas: Vec<Formula> = run.iter().map(|(_, f)| (*f).clone()).collect();
                let outcomes = check_all(&model, &formulas, opts);
                for (k, ((color, formula), outcome)) in run.iter().zip(outcomes).enumerate() {
                    let out = outcome?;
                    working = paint(&working, &out.satisfying, *color)?;
                    reports.push(StatementReport {
                        statement: i + k + 1,
                        formula: format!("paint {formula}"),
                        points: out.satisfying.len(),
                        stats: out.stats,
                    });
                }
                i += run.len();
            }
        }
    }
    Ok(ScriptRun {
        image: working,
        reports,
    })
}

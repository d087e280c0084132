//! Text syntax for elements.
//!
//! ```text
//! element := term (('+'|'-') term)*        (a leading '-' is also accepted)
//! term    := [scalar '*'] word
//! word    := 'e' | gen+                     (generators separated by whitespace)
//! gen     := 'p' | 'q' | 't'NUM['*'] | 'x' | 'y' | 'x-' | 'y-'
//! scalar  := INT['/'INT][('+'|'-')INT['/'INT]'i']
//! ```
//!
//! A `*` glued to `tN` stars the generator; a `-` glued to `x`/`y` inverts
//! it. The literal `0` denotes the zero element, so rendering followed by
//! parsing is the identity.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Element, GroupElement};
use crate::scalar::{scan_unsigned_scalar, Scalar};
use crate::words::{FgLetter, FgWord, FreeGen, ProductWord, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenToken {
    P,
    Q,
    T(FreeGen),
    X,
    XInv,
    Y,
    YInv,
}

impl fmt::Display for GenToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenToken::P => f.write_str("p"),
            GenToken::Q => f.write_str("q"),
            GenToken::T(g) => write!(f, "{g}"),
            GenToken::X => f.write_str("x"),
            GenToken::XInv => f.write_str("x-"),
            GenToken::Y => f.write_str("y"),
            GenToken::YInv => f.write_str("y-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordAst {
    Identity,
    /// Generators with their byte offsets.
    Gens(Vec<(GenToken, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermAst {
    pub negative: bool,
    pub coeff: Option<Scalar>,
    pub word: WordAst,
}

/// Parse tree: a signed sum of terms. Empty `terms` is the literal `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAst {
    pub terms: Vec<TermAst>,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError { column: self.src[..at].chars().count() + 1, message: message.into() }
    }

    fn term(&mut self, negative: bool) -> Result<TermAst, ParseError> {
        self.skip_ws();
        let mut coeff = None;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let start = self.pos;
            match scan_unsigned_scalar(self.rest()) {
                Some(Ok((s, used))) => {
                    coeff = Some(s);
                    self.pos += used;
                }
                Some(Err(msg)) => return Err(self.error(start, msg)),
                None => unreachable!("starts with a digit"),
            }
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Err(self.error(self.pos, "expected '*' between scalar and word"));
            }
            self.pos += 1;
            self.skip_ws();
        }
        let word = self.word()?;
        Ok(TermAst { negative, coeff, word })
    }

    fn word(&mut self) -> Result<WordAst, ParseError> {
        let mut gens = Vec::new();
        let mut identity_at = None;
        loop {
            self.skip_ws();
            let start = self.pos;
            let Some(b) = self.peek() else { break };
            let tok = match b {
                b'+' | b'-' => break,
                b'e' => {
                    self.pos += 1;
                    identity_at = Some(start);
                    None
                }
                b'p' => {
                    self.pos += 1;
                    Some(GenToken::P)
                }
                b'q' => {
                    self.pos += 1;
                    Some(GenToken::Q)
                }
                b'x' | b'y' => {
                    self.pos += 1;
                    let inv = self.peek() == Some(b'-');
                    if inv {
                        self.pos += 1;
                    }
                    Some(match (b, inv) {
                        (b'x', false) => GenToken::X,
                        (b'x', true) => GenToken::XInv,
                        (_, false) => GenToken::Y,
                        (_, true) => GenToken::YInv,
                    })
                }
                b't' => {
                    self.pos += 1;
                    let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
                    if digits == 0 {
                        return Err(self.error(self.pos, "expected generator index after 't'"));
                    }
                    let n: u32 = self.rest()[..digits]
                        .parse()
                        .map_err(|_| self.error(self.pos, "generator index out of range"))?;
                    self.pos += digits;
                    let starred = self.peek() == Some(b'*');
                    if starred {
                        self.pos += 1;
                    }
                    let g = FreeGen::try_new(n, starred)
                        .ok_or_else(|| self.error(start, "generator indices start at 1"))?;
                    Some(GenToken::T(g))
                }
                _ => {
                    let ch = self.rest().chars().next().unwrap_or('?');
                    return Err(self.error(start, format!("unexpected character {ch:?}")));
                }
            };
            if let Some(t) = tok {
                gens.push((t, start));
            }
            match self.peek() {
                None | Some(b'+') | Some(b'-') => {}
                Some(c) if c.is_ascii_whitespace() => {}
                Some(_) => return Err(self.error(self.pos, "generators must be separated by whitespace")),
            }
        }
        match (identity_at, gens.is_empty()) {
            (Some(_), true) => Ok(WordAst::Identity),
            (Some(at), false) => Err(self.error(at, "'e' must stand alone as a word")),
            (None, false) => Ok(WordAst::Gens(gens)),
            (None, true) => Err(self.error(self.pos, "expected a word")),
        }
    }
}

/// Syntax only; universe membership is checked when the tree is evaluated.
pub fn parse_ast(text: &str) -> Result<ExprAst, ParseError> {
    if text.trim() == "0" {
        return Ok(ExprAst { terms: Vec::new() });
    }
    let mut lx = Lexer { src: text, pos: 0 };
    let mut terms = Vec::new();
    lx.skip_ws();
    let mut negative = false;
    if lx.peek() == Some(b'-') {
        negative = true;
        lx.pos += 1;
    }
    loop {
        terms.push(lx.term(negative)?);
        lx.skip_ws();
        match lx.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(lx.error(lx.pos, "expected '+' or '-'")),
        }
        lx.pos += 1;
    }
    Ok(ExprAst { terms })
}

fn universe_error(text: &str, at: usize, tok: GenToken, universe: Universe) -> ParseError {
    ParseError {
        column: text[..at].chars().count() + 1,
        message: format!("generator {tok} is not allowed in universe {universe}"),
    }
}

fn coefficient(term: &TermAst) -> Scalar {
    let c = term.coeff.clone().unwrap_or_else(Scalar::one);
    if term.negative {
        -c
    } else {
        c
    }
}

/// Evaluates a parsed tree in `ℂBC`, `ℂS∞` or `ℂ(BC*S∞)`.
pub fn eval_element(text: &str, ast: &ExprAst, universe: Universe) -> Result<Element, ParseError> {
    if universe == Universe::FreeGroup {
        return Err(ParseError { column: 1, message: "use parse_group_element for the free group".into() });
    }
    let mut terms = Vec::with_capacity(ast.terms.len());
    for term in &ast.terms {
        let word = match &term.word {
            WordAst::Identity => ProductWord::identity(),
            WordAst::Gens(gens) => {
                let mut w = ProductWord::identity();
                for &(tok, at) in gens {
                    let g = match (tok, universe) {
                        (GenToken::P, Universe::Bicyclic | Universe::Product) => ProductWord::p(),
                        (GenToken::Q, Universe::Bicyclic | Universe::Product) => ProductWord::q(),
                        (GenToken::T(g), Universe::Free | Universe::Product) => ProductWord::gen(g),
                        _ => return Err(universe_error(text, at, tok, universe)),
                    };
                    w = w.mul(&g);
                }
                w
            }
        };
        terms.push((word, coefficient(term)));
    }
    Ok(Element::from_terms(universe, terms).expect("tokens were checked against the universe"))
}

pub fn parse_element(text: &str, universe: Universe) -> Result<Element, ParseError> {
    eval_element(text, &parse_ast(text)?, universe)
}

pub fn parse_group_element(text: &str) -> Result<GroupElement, ParseError> {
    let ast = parse_ast(text)?;
    let mut terms = Vec::with_capacity(ast.terms.len());
    for term in &ast.terms {
        let word = match &term.word {
            WordAst::Identity => FgWord::identity(),
            WordAst::Gens(gens) => {
                let mut letters = Vec::with_capacity(gens.len());
                for &(tok, at) in gens {
                    letters.push(match tok {
                        GenToken::X => FgLetter::X,
                        GenToken::XInv => FgLetter::X_INV,
                        GenToken::Y => FgLetter::Y,
                        GenToken::YInv => FgLetter::Y_INV,
                        _ => return Err(universe_error(text, at, tok, Universe::FreeGroup)),
                    });
                }
                FgWord::from_letters(letters)
            }
        };
        terms.push((word, coefficient(term)));
    }
    Ok(Element::from_terms(Universe::FreeGroup, terms).expect("free-group words"))
}

/// A single word with no coefficient, returned in normal form.
pub fn parse_word(text: &str, universe: Universe) -> Result<ProductWord, ParseError> {
    let ast = parse_ast(text)?;
    match ast.terms.as_slice() {
        [TermAst { negative: false, coeff: None, .. }] => {}
        _ => return Err(ParseError { column: 1, message: "expected a single word without coefficient".into() }),
    }
    let el = eval_element(text, &ast, universe)?;
    let word = el.support().next().cloned().expect("a basis element has one term");
    Ok(word)
}

pub fn parse_group_word(text: &str) -> Result<FgWord, ParseError> {
    let ast = parse_ast(text)?;
    if !matches!(ast.terms.as_slice(), [TermAst { negative: false, coeff: None, .. }]) {
        return Err(ParseError { column: 1, message: "expected a single word without coefficient".into() });
    }
    let el = parse_group_element(text)?;
    let word = el.support().next().cloned().expect("a basis element has one term");
    Ok(word)
}

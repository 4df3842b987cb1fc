//! Textual DSL for identities and identity bases.
//!
//! Words are strings over `[a-z]`; juxtaposition is concatenation and `^k`
//! is power shorthand (`x^2y` = `xxy`). `=` chains split into consecutive
//! pairs, `0` is allowed only as a full side, `;` or a newline separates
//! identities, and `#` starts a comment. Presentation files may carry a
//! `nil_bound: d` header line before the identities.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::words::{Identity, IdentityBasis, IdentityRhs, Word, DISPLAY_LETTERS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl core::error::Error for SyntaxError {}

fn letter_index(c: char) -> Option<u32> {
    DISPLAY_LETTERS
        .iter()
        .position(|&l| l == c)
        .map(|i| i as u32 + 1)
}

/// Formats a word in the DSL, compressing runs of equal letters to `^k`.
pub fn format_word(w: &Word) -> String {
    let mut out = String::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == letters[i] {
            run += 1;
        }
        let l = letters[i];
        if (l as usize) <= DISPLAY_LETTERS.len() {
            out.push(DISPLAY_LETTERS[l as usize - 1]);
        } else {
            // Beyond the 26-letter DSL alphabet; not re-parseable.
            out.push_str(&alloc::format!("x{l}"));
        }
        if run > 1 {
            out.push_str(&alloc::format!("^{run}"));
        }
        i += run;
    }
    out
}

pub fn format_identity(id: &Identity) -> String {
    match id.rhs() {
        IdentityRhs::Word(v) => alloc::format!("{} = {}", format_word(id.lhs()), format_word(v)),
        IdentityRhs::Zero => alloc::format!("{} = 0", format_word(id.lhs())),
    }
}

/// One identity per line.
pub fn format_basis(basis: &IdentityBasis) -> String {
    let mut out = String::new();
    for id in basis.iter() {
        out.push_str(&format_identity(id));
        out.push('\n');
    }
    out
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, message: &str) -> SyntaxError {
        SyntaxError {
            line: self.line,
            col: self.col,
            message: message.to_string(),
        }
    }

    fn skip_spaces(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c == ' ' || c == '\t' || c == '\r' {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// A term: a word, or `0`.
    fn term(&mut self) -> Result<Option<Word>, SyntaxError> {
        self.skip_spaces();
        if self.peek() == Some('0') {
            self.bump();
            return Ok(None);
        }
        let mut letters: Vec<u32> = Vec::new();
        loop {
            self.skip_spaces();
            let Some(c) = self.peek() else { break };
            if let Some(l) = letter_index(c) {
                self.bump();
                let mut count = 1usize;
                if self.peek() == Some('^') {
                    self.bump();
                    let mut digits = String::new();
                    while let Some(d) = self.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    if digits.is_empty() {
                        return Err(self.error("expected an exponent after '^'"));
                    }
                    count = digits
                        .parse()
                        .map_err(|_| self.error("exponent out of range"))?;
                    if count == 0 {
                        return Err(self.error("exponent must be positive"));
                    }
                }
                letters.extend(core::iter::repeat_n(l, count));
            } else {
                break;
            }
        }
        if letters.is_empty() {
            return Err(self.error("expected a word"));
        }
        Ok(Some(Word::new(letters).unwrap()))
    }

    /// A statement: `term (= term)+`, yielding consecutive pairs.
    fn statement(&mut self) -> Result<Vec<Identity>, SyntaxError> {
        let mut terms = Vec::new();
        terms.push(self.term()?);
        loop {
            self.skip_spaces();
            if self.peek() == Some('=') {
                self.bump();
                terms.push(self.term()?);
            } else {
                break;
            }
        }
        if terms.len() < 2 {
            return Err(self.error("expected '=' in identity"));
        }
        let mut out = Vec::new();
        for pair in terms.windows(2) {
            let id = match (&pair[0], &pair[1]) {
                (Some(u), Some(v)) => Identity::between(u.clone(), v.clone()),
                (Some(u), None) => Identity::zero(u.clone()),
                (None, Some(v)) => Identity::zero(v.clone()),
                (None, None) => return Err(self.error("'0 = 0' is not an identity")),
            };
            out.push(id);
        }
        Ok(out)
    }
}

/// Parses a single word.
pub fn parse_word(src: &str) -> Result<Word, SyntaxError> {
    let mut s = Scanner::new(src);
    let term = s.term()?;
    s.skip_spaces();
    if s.peek().is_some() {
        return Err(s.error("unexpected trailing input"));
    }
    term.ok_or_else(|| s.error("'0' is not a word"))
}

/// Parses a single identity such as `xy = yx` or `xyx = 0`.
pub fn parse_identity(src: &str) -> Result<Identity, SyntaxError> {
    let mut s = Scanner::new(src);
    let ids = s.statement()?;
    s.skip_spaces();
    if s.peek().is_some() {
        return Err(s.error("unexpected trailing input"));
    }
    if ids.len() != 1 {
        return Err(s.error("expected exactly one identity"));
    }
    Ok(ids.into_iter().next().unwrap())
}

/// Parses a basis: statements separated by `;` or newlines, `#` comments.
pub fn parse_basis(src: &str) -> Result<IdentityBasis, SyntaxError> {
    Ok(IdentityBasis::new(parse_statements(src)?))
}

fn parse_statements(src: &str) -> Result<Vec<Identity>, SyntaxError> {
    let mut s = Scanner::new(src);
    let mut out = Vec::new();
    loop {
        s.skip_spaces();
        match s.peek() {
            None => break,
            Some('\n') | Some(';') => {
                s.bump();
            }
            Some(_) => out.extend(s.statement()?),
        }
    }
    Ok(out)
}

/// Splits presentation source text into an optional `nil_bound: d` header
/// and the basis text that follows it. The header must precede every
/// identity.
pub fn parse_presentation_source(
    src: &str,
) -> Result<(Option<usize>, IdentityBasis), SyntaxError> {
    let mut bound = None;
    let mut basis_lines: Vec<&str> = Vec::new();
    let mut seen_content = false;
    for (lineno, line) in src.lines().enumerate() {
        let stripped = line.split('#').next().unwrap_or("").trim();
        if let Some(rest) = stripped.strip_prefix("nil_bound:") {
            if seen_content || bound.is_some() {
                return Err(SyntaxError {
                    line: lineno + 1,
                    col: 1,
                    message: "nil_bound header must come first and appear once".to_string(),
                });
            }
            let d: usize = rest.trim().parse().map_err(|_| SyntaxError {
                line: lineno + 1,
                col: 1,
                message: "nil_bound must be a positive integer".to_string(),
            })?;
            if d == 0 {
                return Err(SyntaxError {
                    line: lineno + 1,
                    col: 1,
                    message: "nil_bound must be positive".to_string(),
                });
            }
            bound = Some(d);
        } else {
            if !stripped.is_empty() {
                seen_content = true;
            }
            basis_lines.push(line);
        }
    }
    let basis = parse_basis(&basis_lines.join("\n"))?;
    Ok((bound, basis))
}

//! Text syntax for formulas and theory files.
//!
//! ```text
//! formula := equiv
//! equiv   := imp ("<->" imp)*          left-associative, lowest
//! imp     := disj ("->" imp)?          right-associative
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := ("~" | "not") unary | atom | "bot" | "top" | "(" formula ")"
//! ```
//!
//! Theory files hold one formula per line; `%` starts a comment and an
//! optional `#signature a b c` line extends the signature.

use crate::error::{Error, Result};
use crate::formula::{is_identifier, Atom, Formula, Signature, Theory};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Not,
    And,
    Or,
    Arrow,
    Equiv,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Equiv => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, column });
        match c {
            c if c.is_whitespace() => i += 1,
            '~' => {
                push(&mut out, Tok::Not);
                i += 1;
            }
            '&' => {
                push(&mut out, Tok::And);
                i += 1;
            }
            '|' => {
                push(&mut out, Tok::Or);
                i += 1;
            }
            '(' => {
                push(&mut out, Tok::LParen);
                i += 1;
            }
            ')' => {
                push(&mut out, Tok::RParen);
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push(&mut out, Tok::Arrow);
                i += 2;
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(&mut out, Tok::Equiv);
                i += 3;
            }
            c if c.is_ascii_alphabetic() || c == '_' || c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    "not" => Tok::Not,
                    w if is_identifier(w) => Tok::Ident(word),
                    _ => {
                        return Err(Error::Syntax {
                            line,
                            column,
                            expected: vec!["atom"],
                            found: format!("`{word}`"),
                        })
                    }
                };
                push(&mut out, tok);
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column,
                    expected: vec!["formula"],
                    found: format!("`{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: chars.len() + 1,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const OPERAND: [&str; 6] = ["atom", "`bot`", "`top`", "`~`", "`not`", "`(`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> Error {
        let s = &self.toks[self.pos];
        Error::Syntax {
            line: s.line,
            column: s.column,
            expected: expected.to_vec(),
            found: s.tok.describe(),
        }
    }

    fn equiv(&mut self) -> Result<Formula> {
        let mut left = self.imp()?;
        while *self.peek() == Tok::Equiv {
            self.bump();
            let right = self.imp()?;
            left = Formula::equiv(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Formula> {
        let left = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.imp()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut left = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            left = Formula::or(left, self.conj()?);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(Atom::new(&name)?))
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.equiv()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`", "`->`", "`<->`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&OPERAND)),
        }
    }
}

fn parse_line(text: &str, line: usize) -> Result<Formula> {
    let mut parser = Parser {
        toks: lex(text, line)?,
        pos: 0,
    };
    let f = parser.equiv()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]));
    }
    Ok(f)
}

/// Parses a single formula. Newlines are not allowed inside it.
pub fn parse(text: &str) -> Result<Formula> {
    if let Some((idx, _)) = text.char_indices().find(|(_, c)| *c == '\n') {
        if !text[idx..].trim().is_empty() {
            let column = text[..idx].chars().count() + 1;
            return Err(Error::Syntax {
                line: 1,
                column,
                expected: vec!["end of input"],
                found: "newline".into(),
            });
        }
    }
    parse_line(text, 1)
}

/// Parses a theory file: one formula per line, `%` comments, an optional
/// `#signature` header.
pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut formulas = Vec::new();
    let mut extra = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('%').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("#signature") {
            for name in rest.split_whitespace() {
                let atom = Atom::new(name).map_err(|_| Error::Syntax {
                    line,
                    column: raw.find(name).map_or(1, |c| c + 1),
                    expected: vec!["atom"],
                    found: format!("`{name}`"),
                })?;
                extra.push(atom);
            }
            continue;
        }
        formulas.push(parse_line(content, line)?);
    }
    Ok(Theory::with_signature(formulas, &Signature::new(extra)))
}

//! Tokenizer shared by the model and query parsers.

use super::ast::Pos;
use super::{ErrorClass, SourceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Digit run, optionally with one interior decimal point.
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Pipe,
    Amp,
    Tilde,
    Star,
    Slash,
}

impl Tok {
    /// How the token reads in diagnostics.
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("`{name}`"),
            Tok::Number(text) => format!("`{text}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Tokenizes the whole input. `#` comments run to end of line; newlines
/// separate positions but produce no token. Returns the tokens plus the
/// position one past the end of input (for "unexpected end" diagnostics).
pub fn lex(text: &str) -> Result<(Vec<Token>, Pos), SourceError> {
    let mut tokens = Vec::new();
    let mut end = Pos { line: 1, col: 1 };
    for (line_index, line) in text.lines().enumerate() {
        let line_no = line_index + 1;
        let mut chars = line.char_indices().peekable();
        let mut col = 0usize;
        while let Some((_, c)) = chars.next() {
            col += 1;
            let pos = Pos { line: line_no, col };
            let simple = match c {
                '#' => break,
                c if c.is_whitespace() => continue,
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                '=' => Some(Tok::Eq),
                '|' => Some(Tok::Pipe),
                '&' => Some(Tok::Amp),
                '~' => Some(Tok::Tilde),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                _ => None,
            };
            if let Some(tok) = simple {
                tokens.push(Token { tok, pos });
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let mut name = String::from(c);
                while let Some(&(_, next)) = chars.peek() {
                    if next.is_ascii_alphanumeric() || next == '_' {
                        name.push(next);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    tok: Tok::Ident(name),
                    pos,
                });
            } else if c.is_ascii_digit() {
                let mut digits = String::from(c);
                let mut seen_point = false;
                while let Some(&(_, next)) = chars.peek() {
                    if next.is_ascii_digit() {
                        digits.push(next);
                    } else if next == '.' && !seen_point {
                        // Only a point followed by a digit belongs to the
                        // number; `1.` is a number and a stray point.
                        let mut ahead = chars.clone();
                        ahead.next();
                        match ahead.peek() {
                            Some(&(_, d)) if d.is_ascii_digit() => {
                                seen_point = true;
                                digits.push('.');
                            }
                            _ => break,
                        }
                    } else {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
                tokens.push(Token {
                    tok: Tok::Number(digits),
                    pos,
                });
            } else {
                return Err(SourceError::new(
                    ErrorClass::Lex,
                    pos,
                    format!("unexpected character `{c}`"),
                ));
            }
        }
        end = Pos {
            line: line_no,
            col: col + 1,
        };
    }
    Ok((tokens, end))
}

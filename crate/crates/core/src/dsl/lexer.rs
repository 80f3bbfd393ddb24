use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use serde::Serialize;

/// Position of a token or node in the session text. Lines and columns start at 1;
/// columns count characters, offsets count bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl Span {
    /// Smallest span covering both.
    pub fn to(self, other: Span) -> Span {
        Span {
            line: self.line,
            column: self.column,
            start: self.start,
            end: other.end.max(self.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Arrow,
    Eq,
    Minus,
    Slash,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("number {s}"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            Tok::Eq => "=",
            Tok::Minus => "-",
            Tok::Slash => "/",
            Tok::Ident(_) => "identifier",
            Tok::Int(_) => "number",
            Tok::Str(_) => "string",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

fn bump(chars: &mut Peekable<CharIndices>, line: &mut usize, col: &mut usize) -> char {
    let (_, c) = chars.next().expect("peeked");
    if c == '\n' {
        *line += 1;
        *col = 1;
    } else {
        *col += 1;
    }
    c
}

/// Splits the text into tokens. `#` starts a comment that runs to the end of
/// the line; whitespace, including newlines, only separates tokens.
pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, ch)) = chars.peek() {
        let here = Span {
            line,
            column: col,
            start,
            end: start + ch.len_utf8(),
        };
        if ch == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars, &mut line, &mut col);
            }
            continue;
        }
        if ch.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        let single = match ch {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            '=' => Some(Tok::Eq),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            bump(&mut chars, &mut line, &mut col);
            out.push(Token { tok, span: here });
            continue;
        }
        if ch == '-' {
            bump(&mut chars, &mut line, &mut col);
            if let Some(&(i, '>')) = chars.peek() {
                bump(&mut chars, &mut line, &mut col);
                out.push(Token {
                    tok: Tok::Arrow,
                    span: Span { end: i + 1, ..here },
                });
            } else {
                out.push(Token {
                    tok: Tok::Minus,
                    span: here,
                });
            }
            continue;
        }
        if ch == '"' {
            bump(&mut chars, &mut line, &mut col);
            let mut text = String::new();
            loop {
                match chars.peek() {
                    Some(&(i, '"')) => {
                        bump(&mut chars, &mut line, &mut col);
                        out.push(Token {
                            tok: Tok::Str(text),
                            span: Span { end: i + 1, ..here },
                        });
                        break;
                    }
                    Some(&(_, '\n')) | None => {
                        return Err(LexError {
                            span: here,
                            message: "unterminated string".into(),
                        })
                    }
                    Some(_) => text.push(bump(&mut chars, &mut line, &mut col)),
                }
            }
            continue;
        }
        if ch.is_ascii_digit() || ch.is_alphabetic() || ch == '_' {
            let numeric = ch.is_ascii_digit();
            let mut text = String::new();
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                let ok = if numeric {
                    c.is_ascii_digit()
                } else {
                    c.is_alphanumeric() || c == '_'
                };
                if !ok {
                    break;
                }
                end = i + c.len_utf8();
                text.push(bump(&mut chars, &mut line, &mut col));
            }
            let tok = if numeric { Tok::Int(text) } else { Tok::Ident(text) };
            out.push(Token {
                tok,
                span: Span { end, ..here },
            });
            continue;
        }
        return Err(LexError {
            span: here,
            message: format!("unexpected character `{ch}`"),
        });
    }
    let end = src.len();
    out.push(Token {
        tok: Tok::Eof,
        span: Span {
            line,
            column: col,
            start: end,
            end,
        },
    });
    Ok(out)
}

use alloc::string::String;
use alloc::vec::Vec;

use super::parser::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    /// Type variable in annotations, e.g. `'a`.
    TyVar(String),
    /// Prompt constant `#n`.
    Prompt(u32),
    Arrow,
    Equals,
    Plus,
    ColonColon,
    Colon,
    Semi,
    Comma,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let (mut line, mut col) = (1, 1);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        // (* nested comments *)
        if c == '(' && chars.get(i + 1) == Some(&'*') {
            let mut depth = 0usize;
            loop {
                if i >= chars.len() {
                    return Err(ParseError::syntax(pos, "unterminated comment"));
                }
                if chars[i] == '(' && chars.get(i + 1) == Some(&'*') {
                    depth += 1;
                    bump!();
                    bump!();
                } else if chars[i] == '*' && chars.get(i + 1) == Some(&')') {
                    depth -= 1;
                    bump!();
                    bump!();
                    if depth == 0 {
                        break;
                    }
                } else {
                    bump!();
                }
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                s.push(chars[i]);
                bump!();
            }
            out.push(Token { tok: Tok::Ident(s), pos });
            continue;
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                let d = i64::from(chars[i] as u8 - b'0');
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(d))
                    .ok_or_else(|| ParseError::syntax(pos, "integer literal out of range"))?;
                bump!();
            }
            out.push(Token { tok: Tok::Int(n), pos });
            continue;
        } else if c == '\'' {
            bump!();
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                bump!();
            }
            if s.is_empty() {
                return Err(ParseError::syntax(pos, "expected type variable name after '"));
            }
            out.push(Token { tok: Tok::TyVar(s), pos });
            continue;
        } else if c == '#' {
            bump!();
            let mut n: u32 = 0;
            let mut any = false;
            while i < chars.len() && chars[i].is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(u32::from(chars[i] as u8 - b'0')))
                    .ok_or_else(|| ParseError::syntax(pos, "prompt constant out of range"))?;
                any = true;
                bump!();
            }
            if !any {
                return Err(ParseError::syntax(pos, "expected digits after '#'"));
            }
            out.push(Token { tok: Tok::Prompt(n), pos });
            continue;
        } else {
            match (c, chars.get(i + 1).copied()) {
                ('-', Some('>')) => {
                    bump!();
                    Tok::Arrow
                }
                (':', Some(':')) => {
                    bump!();
                    Tok::ColonColon
                }
                (':', _) => Tok::Colon,
                ('=', _) => Tok::Equals,
                ('+', _) => Tok::Plus,
                (';', _) => Tok::Semi,
                (',', _) => Tok::Comma,
                ('/', _) => Tok::Slash,
                ('(', _) => Tok::LParen,
                (')', _) => Tok::RParen,
                ('[', _) => Tok::LBracket,
                (']', _) => Tok::RBracket,
                _ => {
                    return Err(ParseError::syntax(pos, alloc::format!("unexpected character {c:?}")));
                }
            }
        };
        bump!();
        out.push(Token { tok, pos });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    /// A residue variable `uK` or `u_{K}`.
    Var(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    LAngle,
    RAngle,
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {}", n),
            Tok::Var(k) => format!("variable u{}", k),
            Tok::Ident(s) => format!("'{}'", s),
            Tok::Eof => "end of input".to_string(),
            other => format!("'{}'", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::LAngle => "⟨",
            Tok::RAngle => "⟩",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::Eq => "=",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, expected: &str| Error::Syntax {
        line,
        col,
        expected: expected.to_string(),
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line: l0,
                col: c0,
            });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token {
                    tok: Tok::Int(s.parse().expect("digits")),
                    line: l0,
                    col: c0,
                });
            }
            'u' if chars.get(i + 1) == Some(&'_') => {
                // u_{-3}
                let mut j = i + 2;
                if chars.get(j) != Some(&'{') {
                    return Err(err(line, col + 2, "'{' after 'u_'"));
                }
                j += 1;
                let start = j;
                if chars.get(j) == Some(&'-') {
                    j += 1;
                }
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                let Ok(k) = s.parse::<i64>() else {
                    return Err(err(line, col + (start - i), "a variable index"));
                };
                if chars.get(j) != Some(&'}') {
                    return Err(err(line, col + (j - i), "'}'"));
                }
                push(Tok::Var(k), j + 1 - i, &mut i, &mut col);
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = match s.strip_prefix('u') {
                    Some(d) if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) => {
                        match d.parse() {
                            Ok(k) => Tok::Var(k),
                            Err(_) => {
                                return Err(err(l0, c0, "a variable index that fits 64 bits"))
                            }
                        }
                    }
                    _ => Tok::Ident(s),
                };
                out.push(Token {
                    tok,
                    line: l0,
                    col: c0,
                });
            }
            '<' if chars.get(i + 1) == Some(&'=') => push(Tok::Le, 2, &mut i, &mut col),
            '>' if chars.get(i + 1) == Some(&'=') => push(Tok::Ge, 2, &mut i, &mut col),
            '∞' => push(Tok::Ident("oo".into()), 1, &mut i, &mut col),
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '⟨' => Tok::LAngle,
                    '⟩' => Tok::RAngle,
                    '≤' => Tok::Le,
                    '≥' => Tok::Ge,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    '=' => Tok::Eq,
                    _ => return Err(err(line, col, "a term")),
                };
                push(tok, 1, &mut i, &mut col);
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn variables() {
        assert_eq!(
            toks("u12 + u_{-1}"),
            vec![Tok::Var(12), Tok::Plus, Tok::Var(-1), Tok::Eof]
        );
        assert_eq!(toks("2g")[1], Tok::Ident("g".into()));
    }

    #[test]
    fn positions() {
        let t = tokenize("1 +\n  X").unwrap();
        assert_eq!((t[2].line, t[2].col), (2, 3));
        assert!(matches!(
            tokenize("1 $ 2"),
            Err(Error::Syntax {
                line: 1,
                col: 3,
                ..
            })
        ));
    }
}

//! Tokenizer for the type and expression syntax.

use num_bigint::BigInt;

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Tag(String),
    Int(BigInt),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Colon,
    QColon, // ?:
    Semi,
    SemiSemi,
    Arrow, // ->
    FatArrow, // =>
    Pipe,
    Amp,
    Backslash,
    Eq,
    Star,
    DotDot,
    Lt,
    Gt,
    Plus,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Tag(s) => write!(f, "`{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::Comma => write!(f, ","),
            Tok::Colon => write!(f, ":"),
            Tok::QColon => write!(f, "?:"),
            Tok::Semi => write!(f, ";"),
            Tok::SemiSemi => write!(f, ";;"),
            Tok::Arrow => write!(f, "->"),
            Tok::FatArrow => write!(f, "=>"),
            Tok::Pipe => write!(f, "|"),
            Tok::Amp => write!(f, "&"),
            Tok::Backslash => write!(f, "\\"),
            Tok::Eq => write!(f, "="),
            Tok::Star => write!(f, "*"),
            Tok::DotDot => write!(f, ".."),
            Tok::Lt => write!(f, "<"),
            Tok::Gt => write!(f, ">"),
            Tok::Plus => write!(f, "+"),
            Tok::Eof => write!(f, "<eof>"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    loop {
        let pos = Pos { line, col };
        let c = match chars.peek().copied() {
            Some(c) => c,
            None => {
                out.push(Spanned { tok: Tok::Eof, pos });
                return Ok(out);
            }
        };
        match c {
            c if c.is_whitespace() => {
                bump!();
            }
            '/' => {
                bump!();
                if chars.peek() == Some(&'/') {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        bump!();
                    }
                } else {
                    return Err(SyntaxError::new(pos, "comment `//`"));
                }
            }
            '`' => {
                bump!();
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '#' {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(SyntaxError::new(pos, "tag name after ` "));
                }
                out.push(Spanned {
                    tok: Tok::Tag(name),
                    pos,
                });
            }
            c if c.is_alphabetic() || c == '_' || c == '#' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '#' {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    pos,
                });
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(digits.parse().unwrap()),
                    pos,
                });
            }
            '-' => {
                bump!();
                match chars.peek() {
                    Some('>') => {
                        bump!();
                        out.push(Spanned {
                            tok: Tok::Arrow,
                            pos,
                        });
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let mut digits = String::from("-");
                        while let Some(&c) = chars.peek() {
                            if c.is_ascii_digit() {
                                digits.push(c);
                                bump!();
                            } else {
                                break;
                            }
                        }
                        out.push(Spanned {
                            tok: Tok::Int(digits.parse().unwrap()),
                            pos,
                        });
                    }
                    _ => return Err(SyntaxError::new(pos, "`->` or a negative integer")),
                }
            }
            '.' => {
                bump!();
                if chars.peek() == Some(&'.') {
                    bump!();
                    out.push(Spanned {
                        tok: Tok::DotDot,
                        pos,
                    });
                } else {
                    return Err(SyntaxError::new(pos, "`..`"));
                }
            }
            ';' => {
                bump!();
                if chars.peek() == Some(&';') {
                    bump!();
                    out.push(Spanned {
                        tok: Tok::SemiSemi,
                        pos,
                    });
                } else {
                    out.push(Spanned {
                        tok: Tok::Semi,
                        pos,
                    });
                }
            }
            '?' => {
                bump!();
                if chars.peek() == Some(&':') {
                    bump!();
                    out.push(Spanned {
                        tok: Tok::QColon,
                        pos,
                    });
                } else {
                    return Err(SyntaxError::new(pos, "`?:`"));
                }
            }
            '=' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    out.push(Spanned {
                        tok: Tok::FatArrow,
                        pos,
                    });
                } else {
                    out.push(Spanned { tok: Tok::Eq, pos });
                }
            }
            _ => {
                bump!();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    '|' => Tok::Pipe,
                    '&' => Tok::Amp,
                    '\\' => Tok::Backslash,
                    '*' => Tok::Star,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    '+' => Tok::Plus,
                    _ => return Err(SyntaxError::new(pos, "a valid token")),
                };
                out.push(Spanned { tok, pos });
            }
        }
    }
}

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Numeric literal with its source text.
    Num(String),
    Str(String),
    Semi,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    At,
    Eq,
    Arrow,
    Plus,
    Minus,
    Star,
    StarStar,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(s) => write!(f, "number `{s}`"),
            Tok::Str(s) => write!(f, "string \"{s}\""),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::At => f.write_str("`@`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::StarStar => f.write_str("`**`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LexError {
    pub pos: Pos,
    pub msg: String,
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, LexError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = vec![];
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        let ch = chars[*i];
        *i += 1;
        if ch == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let ch = chars[i];
        let pos = Pos { line, col };
        if ch.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if ch == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        if ch == '/' && chars.get(i + 1) == Some(&'*') {
            advance(&mut i, &mut line, &mut col);
            advance(&mut i, &mut line, &mut col);
            loop {
                if i >= chars.len() {
                    return Err(LexError { pos, msg: "unterminated block comment".into() });
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                    break;
                }
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' || matches!(ch, 'π' | 'τ' | 'ℇ') {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || matches!(chars[i], 'π' | 'τ' | 'ℇ')) {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        if ch.is_ascii_digit() || (ch == '.' && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())) {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let save = (i, line, col, s.len());
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    s.push(chars[i]);
                    advance(&mut i, &mut line, &mut col);
                }
                if i < chars.len() && chars[i].is_ascii_digit() {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        s.push(chars[i]);
                        advance(&mut i, &mut line, &mut col);
                    }
                } else {
                    (i, line, col) = (save.0, save.1, save.2);
                    s.truncate(save.3);
                }
            }
            out.push((Tok::Num(s), pos));
            continue;
        }
        if ch == '"' {
            let mut s = String::new();
            advance(&mut i, &mut line, &mut col);
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(LexError { pos, msg: "unterminated string".into() })
                    }
                    Some('"') => {
                        advance(&mut i, &mut line, &mut col);
                        break;
                    }
                    Some(&c) => {
                        s.push(c);
                        advance(&mut i, &mut line, &mut col);
                    }
                }
            }
            out.push((Tok::Str(s), pos));
            continue;
        }
        let two = chars.get(i + 1).copied();
        let (tok, len) = match (ch, two) {
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('*', Some('*')) => (Tok::StarStar, 2),
            (';', _) => (Tok::Semi, 1),
            (',', _) => (Tok::Comma, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('@', _) => (Tok::At, 1),
            ('=', _) => (Tok::Eq, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            _ => return Err(LexError { pos, msg: format!("unexpected character `{ch}`") }),
        };
        for _ in 0..len {
            advance(&mut i, &mut line, &mut col);
        }
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

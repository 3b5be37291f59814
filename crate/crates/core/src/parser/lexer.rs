use crate::error::{ParseError, Position};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    /// `'name`, an explicitly quoted constant or element.
    Quoted(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Slash,
    /// `\/`
    Or,
    /// `/\`
    And,
    /// `><`
    Cross,
    /// `->`
    Arrow,
    Minus,
    Tilde,
    Eq,
    Ne,
    At,
    Colon,
    Pipe,
    Semi,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("`'{s}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::Comma => ",",
                    Tok::Slash => "/",
                    Tok::Or => "\\/",
                    Tok::And => "/\\",
                    Tok::Cross => "><",
                    Tok::Arrow => "->",
                    Tok::Minus => "-",
                    Tok::Tilde => "~",
                    Tok::Eq => "=",
                    Tok::Ne => "!=",
                    Tok::At => "@",
                    Tok::Colon => ":",
                    Tok::Pipe => "|",
                    Tok::Semi => ";",
                    _ => unreachable!(),
                };
                format!("`{s}`")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Position,
}

/// Splits `src` into tokens. `#` starts a comment running to the end of the
/// line. Line breaks are kept as [`Tok::Newline`] only if `newlines` is set.
pub fn tokenize(src: &str, newlines: bool) -> Result<Vec<Token>, ParseError> {
    tokenize_at(src, newlines, Position { line: 1, column: 1 })
}

pub fn tokenize_at(src: &str, newlines: bool, start: Position) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = start.line;
    let mut col = start.column;
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column: col };
        let next = chars.get(i + 1).copied();
        let mut width = 1;
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                if newlines {
                    out.push(Token {
                        tok: Tok::Newline,
                        pos,
                    });
                }
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '~' => Tok::Tilde,
            '=' => Tok::Eq,
            '@' => Tok::At,
            ':' => Tok::Colon,
            '|' => Tok::Pipe,
            ';' => Tok::Semi,
            '\\' if next == Some('/') => {
                width = 2;
                Tok::Or
            }
            '/' if next == Some('\\') => {
                width = 2;
                Tok::And
            }
            '/' => Tok::Slash,
            '>' if next == Some('<') => {
                width = 2;
                Tok::Cross
            }
            '-' if next == Some('>') => {
                width = 2;
                Tok::Arrow
            }
            '-' => Tok::Minus,
            '!' if next == Some('=') => {
                width = 2;
                Tok::Ne
            }
            '\'' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                if j == start {
                    return Err(ParseError::new(pos, "expected a name after `'`"));
                }
                width = j - i;
                Tok::Quoted(chars[start..j].iter().collect())
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                width = j - i;
                Tok::Number(chars[i..j].iter().collect())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                width = j - i;
                Tok::Ident(chars[i..j].iter().collect())
            }
            other => {
                return Err(ParseError::new(
                    pos,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        out.push(Token { tok, pos });
        i += width;
        col += width;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Position { line, column: col },
    });
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// A cursor over a token list.
pub struct Cursor {
    tokens: Vec<Token>,
    index: usize,
}

impl Cursor {
    pub fn new(tokens: Vec<Token>) -> Self {
        Cursor { tokens, index: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.index].tok
    }

    pub fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.index + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    pub fn pos(&self) -> Position {
        self.tokens[self.index].pos
    }

    pub fn mark(&self) -> usize {
        self.index
    }

    pub fn reset(&mut self, mark: usize) {
        self.index = mark;
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.index].clone();
        if self.index + 1 < self.tokens.len() {
            self.index += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<Position, ParseError> {
        let pos = self.pos();
        if self.eat(tok) {
            Ok(pos)
        } else {
            Err(self.unexpected(&format!("expected {}", tok.describe())))
        }
    }

    pub fn unexpected(&self, what: &str) -> ParseError {
        ParseError::new(
            self.pos(),
            format!("{what}, found {}", self.peek().describe()),
        )
    }

    pub fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(&format!("expected {what}"))),
        }
    }

    /// An element name: identifier, numeral or quoted name.
    pub fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Number(s) | Tok::Quoted(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(&format!("expected {what}"))),
        }
    }

    /// A rational `p/q`, `-p/q` or integer.
    pub fn rational(&mut self) -> Result<crate::rational::Rational, ParseError> {
        let pos = self.pos();
        let negative = self.eat(&Tok::Minus);
        let num = match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                n
            }
            _ => return Err(self.unexpected("expected a probability")),
        };
        let mut text = if negative { format!("-{num}") } else { num };
        if self.eat(&Tok::Slash) {
            match self.peek().clone() {
                Tok::Number(d) => {
                    self.bump();
                    text = format!("{text}/{d}");
                }
                _ => return Err(self.unexpected("expected a denominator")),
            }
        }
        crate::rational::parse_rational(&text)
            .ok_or_else(|| ParseError::new(pos, format!("invalid rational `{text}`")))
    }

    /// An occurrence path such as `/0/1`, or `/` for the root.
    pub fn occurrence(&mut self) -> Result<crate::formula::OccurrenceId, ParseError> {
        let pos = self.pos();
        self.expect(&Tok::Slash)?;
        let mut text = String::from("/");
        while let Tok::Number(n) = self.peek().clone() {
            self.bump();
            text.push_str(&n);
            if !self.eat(&Tok::Slash) {
                break;
            }
            text.push('/');
        }
        let text = text
            .strip_suffix('/')
            .filter(|t| !t.is_empty())
            .unwrap_or(&text)
            .to_string();
        crate::formula::OccurrenceId::parse(&text)
            .ok_or_else(|| ParseError::new(pos, format!("invalid occurrence `{text}`")))
    }

    pub fn at_end(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn skip_newlines(&mut self) {
        while self.eat(&Tok::Newline) {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src, false)
            .unwrap()
            .into_iter()
            .map(|t| t.tok)
            .collect()
    }

    #[test]
    fn operators() {
        assert_eq!(
            toks("\\/ /\\ >< -> != / ~"),
            vec![
                Tok::Or,
                Tok::And,
                Tok::Cross,
                Tok::Arrow,
                Tok::Ne,
                Tok::Slash,
                Tok::Tilde,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn slash_set_after_variable() {
        assert_eq!(
            toks("y/{x}"),
            vec![
                Tok::Ident("y".into()),
                Tok::Slash,
                Tok::LBrace,
                Tok::Ident("x".into()),
                Tok::RBrace,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let t = tokenize("a # note\n  b", true).unwrap();
        assert_eq!(t[0].pos, Position { line: 1, column: 1 });
        assert_eq!(t[1].tok, Tok::Newline);
        assert_eq!(t[2].pos, Position { line: 2, column: 3 });
    }

    #[test]
    fn bad_character() {
        let err = tokenize("x $ y", false).unwrap_err();
        assert_eq!(err.position, Position { line: 1, column: 3 });
    }
}

//! Tokens shared by all sentence grammars.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Sym(&'static str),
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

// Longest first.
const SYMBOLS: [&str; 15] = [
    "<->", "[=", "->", "!=", "(", ")", ",", ".", ":", "&", "|", "!", "~", "=", ";",
];

/// Splits `text`, which starts at `line`/`column` of the document, into
/// tokens. Ends with [`Tok::End`] positioned just past the text.
pub(crate) fn lex(text: &str, line: usize, column: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut line = line;
    let mut col = column;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                column: col,
            });
            col += i - start;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(*s)) else {
            return Err(Error::Syntax {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        };
        out.push(Token {
            tok: Tok::Sym(sym),
            line,
            column: col,
        });
        i += sym.len();
        col += sym.len();
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(text: &str, line: usize, column: usize) -> Result<Self> {
        Ok(Self {
            tokens: lex(text, line, column)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    pub fn here(&self) -> (usize, usize) {
        let t = &self.tokens[self.pos];
        (t.line, t.column)
    }

    pub fn advance(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn is(&self, sym: &str) -> bool {
        matches!(self.peek(), Tok::Sym(s) if *s == sym)
    }

    pub fn is_word(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    pub fn eat(&mut self, sym: &str) -> bool {
        if self.is(sym) {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        let found = match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::End => "end of input".to_string(),
        };
        Error::Syntax {
            line,
            column,
            message: format!("{}, found {found}", message.into()),
        }
    }

    pub fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{sym}`")))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    pub fn finish(&self) -> Result<()> {
        if matches!(self.peek(), Tok::End) {
            Ok(())
        } else {
            Err(self.error("expected end of sentence"))
        }
    }
}

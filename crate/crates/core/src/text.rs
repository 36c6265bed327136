//! Line-level lexing shared by the hypergraph and query text formats.

use crate::error::{Error, Result};

/// A parsed `[!]name(arg,...)[.]` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Atom {
    pub negated: bool,
    pub name: String,
    pub args: Vec<String>,
}

/// Drops everything from the first `#` on.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Cursor<'a> {
    line: &'a str,
    pos: usize,
    lineno: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.line[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.line[self.pos..].chars().next()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.lineno, self.line[..self.pos].chars().count() + 1, msg)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of line"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !is_ident_char(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected identifier, found `{c}`")),
                None => self.error("expected identifier, found end of line"),
            });
        }
        Ok(self.line[start..self.pos].to_string())
    }
}

/// Parses one non-blank, comment-free line as an atom.
pub(crate) fn parse_atom(
    line: &str,
    lineno: usize,
    allow_negation: bool,
    allow_empty: bool,
) -> Result<Atom> {
    let mut cur = Cursor {
        line,
        pos: 0,
        lineno,
    };
    cur.skip_ws();
    let negated = if cur.peek() == Some('!') {
        if !allow_negation {
            return Err(cur.error("negation is not allowed here"));
        }
        cur.pos += 1;
        true
    } else {
        false
    };
    let name = cur.ident()?;
    cur.expect('(')?;
    let mut args = Vec::new();
    cur.skip_ws();
    if cur.peek() == Some(')') {
        if !allow_empty {
            return Err(cur.error("expected at least one vertex"));
        }
        cur.pos += 1;
    } else {
        loop {
            args.push(cur.ident()?);
            cur.skip_ws();
            match cur.peek() {
                Some(',') => cur.pos += 1,
                Some(')') => {
                    cur.pos += 1;
                    break;
                }
                Some(c) => return Err(cur.error(format!("expected `,` or `)`, found `{c}`"))),
                None => return Err(cur.error("unterminated argument list")),
            }
        }
    }
    cur.skip_ws();
    if cur.peek() == Some('.') {
        cur.pos += 1;
        cur.skip_ws();
    }
    if let Some(c) = cur.peek() {
        return Err(cur.error(format!("unexpected trailing `{c}`")));
    }
    Ok(Atom {
        negated,
        name,
        args,
    })
}

//! S-expression reader with line/column positions. `;` starts a comment.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// The head atom of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|l| l.first()).and_then(Sexp::atom)
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => write!(f, "{s}"),
            Sexp::List(items, _) => {
                write!(f, "(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn syntax(pos: Pos, msg: impl Into<String>) -> Error {
    Error::SyntaxError { line: pos.line, col: pos.col, msg: msg.into() }
}

/// Read every top-level expression. Empty input is an error.
pub fn read_all(input: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut atom: Option<(String, Pos)> = None;
    let (mut line, mut col) = (1, 0);
    let mut in_comment = false;
    let flush = |atom: &mut Option<(String, Pos)>, stack: &mut Vec<(Vec<Sexp>, Pos)>, top: &mut Vec<Sexp>| {
        if let Some((s, p)) = atom.take() {
            match stack.last_mut() {
                Some((items, _)) => items.push(Sexp::Atom(s, p)),
                None => top.push(Sexp::Atom(s, p)),
            }
        }
    };
    for ch in input.chars() {
        if ch == '\n' {
            line += 1;
            col = 0;
            in_comment = false;
            flush(&mut atom, &mut stack, &mut top);
            continue;
        }
        col += 1;
        if in_comment {
            continue;
        }
        let pos = Pos { line, col };
        match ch {
            ';' => {
                flush(&mut atom, &mut stack, &mut top);
                in_comment = true;
            }
            '(' => {
                flush(&mut atom, &mut stack, &mut top);
                stack.push((Vec::new(), pos));
            }
            ')' => {
                flush(&mut atom, &mut stack, &mut top);
                let (items, start) = stack.pop().ok_or_else(|| syntax(pos, "unbalanced `)`"))?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((items, _)) => items.push(list),
                    None => top.push(list),
                }
            }
            c if c.is_whitespace() => flush(&mut atom, &mut stack, &mut top),
            c => match &mut atom {
                Some((s, _)) => s.push(c),
                None => atom = Some((c.to_string(), pos)),
            },
        }
    }
    flush(&mut atom, &mut stack, &mut top);
    if let Some((_, start)) = stack.pop() {
        return Err(syntax(start, "unclosed `(`"));
    }
    if top.is_empty() {
        return Err(syntax(Pos { line: 1, col: 1 }, "empty input"));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_positions() {
        let e = read_all("(ring R (Fp 5)) ; comment\n(poly f\n  (+ x 1))").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].to_string(), "(ring R (Fp 5))");
        assert_eq!(e[1].list().unwrap()[2].pos(), Pos { line: 3, col: 3 });
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(read_all(""), Err(Error::SyntaxError { line: 1, col: 1, .. })));
        assert!(matches!(read_all("  ; nothing\n"), Err(Error::SyntaxError { .. })));
        assert!(matches!(read_all("(a (b)"), Err(Error::SyntaxError { line: 1, col: 1, .. })));
        assert!(matches!(read_all("(a))"), Err(Error::SyntaxError { line: 1, col: 4, .. })));
    }
}

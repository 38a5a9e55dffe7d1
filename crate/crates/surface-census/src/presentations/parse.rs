//! Parser for presentation text of the form
//!
//! ```text
//! < a, c | a^2, c^8, a^-1 c a c^-3 >
//! ```
//!
//! Words are whitespace-insensitive products of terms; a term is a
//! generator with an optional integer exponent, a parenthesized word with an
//! optional exponent, or a commutator `[u, v]` = u^-1 v^-1 u v. Errors carry
//! the byte offset of the offending token.

use super::{Presentation, PresentationError, Word};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", c)))
        }
    }

    fn err(&self, msg: &str) -> PresentationError {
        PresentationError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn ident(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                if name.is_empty() && c.is_ascii_digit() {
                    return None;
                }
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if name.is_empty() {
            None
        } else {
            Some((name, start))
        }
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        let mut s = String::new();
        if self.peek() == Some('-') || self.peek() == Some('+') {
            s.push(self.bump().unwrap());
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s.parse().map_err(|_| PresentationError::Parse {
            pos: start,
            msg: "expected an integer exponent".to_string(),
        })
    }
}

/// Parse `< gens | relators >`.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut cur = Cursor { text, pos: 0 };
    cur.expect('<')?;
    let mut generators: Vec<String> = Vec::new();
    loop {
        match cur.ident() {
            Some((name, pos)) => {
                if generators.contains(&name) {
                    return Err(PresentationError::Parse {
                        pos,
                        msg: format!("duplicate generator {:?}", name),
                    });
                }
                generators.push(name);
            }
            None => return Err(cur.err("expected a generator name")),
        }
        cur.skip_ws();
        match cur.peek() {
            Some(',') => {
                cur.bump();
            }
            Some('|') => break,
            _ => return Err(cur.err("expected ',' or '|'")),
        }
    }
    cur.expect('|')?;
    let mut relators = Vec::new();
    cur.skip_ws();
    if cur.peek() != Some('>') {
        loop {
            let w = parse_word(&mut cur, &generators)?;
            relators.push(w);
            cur.skip_ws();
            match cur.peek() {
                Some(',') => {
                    cur.bump();
                }
                Some('>') => break,
                _ => return Err(cur.err("expected ',' or '>'")),
            }
        }
    }
    cur.expect('>')?;
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(Presentation::new(generators, relators))
}

fn parse_word(cur: &mut Cursor, gens: &[String]) -> Result<Word, PresentationError> {
    let mut word = Word::identity();
    let mut any = false;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('(') => {
                cur.bump();
                let inner = parse_word(cur, gens)?;
                cur.expect(')')?;
                let e = maybe_exponent(cur)?;
                append_power(&mut word, &inner, e);
                any = true;
            }
            Some('[') => {
                cur.bump();
                let u = parse_word(cur, gens)?;
                cur.expect(',')?;
                let v = parse_word(cur, gens)?;
                cur.expect(']')?;
                let mut comm = u.inverse();
                comm.extend(&v.inverse());
                comm.extend(&u);
                comm.extend(&v);
                let e = maybe_exponent(cur)?;
                append_power(&mut word, &comm, e);
                any = true;
            }
            _ => {
                // Longest declared generator matching here, so that
                // juxtaposed one-letter generators like "xy" split.
                cur.skip_ws();
                let rest = &cur.text[cur.pos..];
                let best = gens
                    .iter()
                    .enumerate()
                    .filter(|(_, name)| rest.starts_with(name.as_str()))
                    .max_by_key(|(_, name)| name.len());
                if let Some((g, name)) = best {
                    cur.pos += name.len();
                    let e = maybe_exponent(cur)?;
                    word.push(g, e);
                    any = true;
                } else if let Some((name, pos)) = cur.ident() {
                    return Err(PresentationError::UnknownGenerator { name, pos });
                } else {
                    break;
                }
            }
        }
    }
    if !any {
        return Err(cur.err("expected a word"));
    }
    Ok(word)
}

fn maybe_exponent(cur: &mut Cursor) -> Result<i64, PresentationError> {
    cur.skip_ws();
    if cur.peek() == Some('^') {
        cur.bump();
        cur.integer()
    } else {
        Ok(1)
    }
}

fn append_power(word: &mut Word, base: &Word, e: i64) {
    if e >= 0 {
        for _ in 0..e {
            word.extend(base);
        }
    } else {
        let inv = base.inverse();
        for _ in 0..(-e) {
            word.extend(&inv);
        }
    }
}

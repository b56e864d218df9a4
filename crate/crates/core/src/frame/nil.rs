//! Structure-constant notation such as `(0,0,12,13,14+23,34+52)`.
//!
//! ```text
//! tuple := "(" entry ("," entry)* ")"
//! entry := "0" | ["+"|"-"] term (("+"|"-") term)*
//! term  := digit digit | int "." int
//! ```
//!
//! Entry `k` lists `dε_k`; the token `ij` stands for `ε_i∧ε_j` in the
//! written order, so `52` is `−ε₂∧ε₅`. Whitespace is ignored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::{Blade, Polyform, Scalar};

use super::FrameAlgebra;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Byte offset of the current character (or the end of input).
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(Error::parse(at, format!("expected '{want}', found '{c}'"))),
            None => Err(Error::parse(at, format!("expected '{want}', found end of input"))),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }
}

/// One raw term: sign, the two indices, and the offset of the token.
struct Term {
    negative: bool,
    i: usize,
    j: usize,
    at: usize,
}

fn parse_term(cur: &mut Cursor<'_>, negative: bool) -> Result<Term> {
    let at = cur.offset();
    let first = cur.digits();
    if first.is_empty() {
        let found = cur
            .peek()
            .map_or("end of input".to_string(), |c| format!("'{c}'"));
        return Err(Error::parse(at, format!("expected a term, found {found}")));
    }
    let (i, j) = if cur.peek() == Some('.') {
        cur.bump();
        let second = cur.digits();
        if second.is_empty() {
            return Err(Error::parse(cur.offset(), "expected an index after '.'"));
        }
        let i = first
            .parse()
            .map_err(|_| Error::parse(at, format!("index {first} too large")))?;
        let j = second
            .parse()
            .map_err(|_| Error::parse(at, format!("index {second} too large")))?;
        (i, j)
    } else {
        if first.len() != 2 {
            return Err(Error::parse(
                at,
                format!("malformed token '{first}': use two digits or the dotted form i.j"),
            ));
        }
        let b = first.as_bytes();
        ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
    };
    Ok(Term { negative, i, j, at })
}

fn parse_entry(cur: &mut Cursor<'_>) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut negative = match cur.peek() {
        Some('-') => {
            cur.bump();
            true
        }
        Some('+') => {
            cur.bump();
            false
        }
        _ => false,
    };
    // the literal zero entry
    if !negative && cur.peek() == Some('0') {
        let save = cur.pos;
        let at = cur.offset();
        let d = cur.digits();
        if d == "0" && matches!(cur.peek(), Some(',') | Some(')')) {
            return Ok(terms);
        }
        if d.len() == 1 {
            return Err(Error::parse(at, format!("malformed token '{d}'")));
        }
        cur.pos = save;
    }
    loop {
        terms.push(parse_term(cur, negative)?);
        match cur.peek() {
            Some('+') => {
                cur.bump();
                negative = false;
            }
            Some('-') => {
                cur.bump();
                negative = true;
            }
            _ => return Ok(terms),
        }
    }
}

/// Parses the notation into an invariant-mode frame. `frame_dim_hint`, when
/// given, must match the number of entries.
pub fn parse_nil(tuple: &str, frame_dim_hint: Option<usize>) -> Result<FrameAlgebra> {
    let mut cur = Cursor::new(tuple);
    cur.expect('(')?;
    let mut entries: Vec<Vec<Term>> = Vec::new();
    loop {
        entries.push(parse_entry(&mut cur)?);
        let at = cur.offset();
        match cur.bump() {
            Some(',') => continue,
            Some(')') => break,
            Some(c) => return Err(Error::parse(at, format!("expected ',' or ')', found '{c}'"))),
            None => return Err(Error::parse(at, "unterminated tuple")),
        }
    }
    if cur.peek().is_some() {
        return Err(Error::parse(cur.offset(), "trailing input after ')'"));
    }
    let n = entries.len();
    if let Some(h) = frame_dim_hint {
        if h != n {
            return Err(Error::parse(
                0,
                format!("tuple has {n} entries but the frame dimension is {h}"),
            ));
        }
    }
    if n > crate::exterior::MAX_DIM {
        return Err(Error::parse(0, format!("dimension {n} is too large")));
    }
    let mut d_gen = Vec::with_capacity(n);
    for terms in entries {
        let mut f = Polyform::zero(n);
        for t in terms {
            for k in [t.i, t.j] {
                if k == 0 || k > n {
                    return Err(Error::parse(
                        t.at,
                        format!("index {k} out of range 1..={n}"),
                    ));
                }
            }
            if t.i == t.j {
                return Err(Error::parse(t.at, format!("duplicate index {} in a term", t.i)));
            }
            let g = Polyform::basis(n, &[t.i, t.j]);
            f = if t.negative { &f - &g } else { &f + &g };
        }
        d_gen.push(f);
    }
    FrameAlgebra::invariant(d_gen)
}

/// Canonical notation for an invariant frame with integer structure
/// constants: ascending blades, integer multiples written as repeated terms,
/// dotted tokens once the dimension exceeds 9. `None` if some coefficient is
/// not an integer or the frame has coordinates.
pub fn to_nil_string(frame: &FrameAlgebra) -> Option<String> {
    if frame.variables() != 0 {
        return None;
    }
    let dotted = frame.dim() > 9;
    let mut entries = Vec::new();
    for f in frame.d_gens() {
        let mut coeffs: BTreeMap<Blade, i64> = BTreeMap::new();
        for (b, p) in f.terms() {
            let c: Scalar = p.as_constant()?;
            if !c.is_real() || !c.re().is_integer() || b.grade() != 2 {
                return None;
            }
            let v: i64 = c.re().to_integer().try_into().ok()?;
            coeffs.insert(*b, v);
        }
        if coeffs.is_empty() {
            entries.push("0".to_string());
            continue;
        }
        let mut s = String::new();
        for (b, v) in coeffs {
            let idx = b.indices();
            let token = if dotted {
                format!("{}.{}", idx[0], idx[1])
            } else {
                format!("{}{}", idx[0], idx[1])
            };
            for _ in 0..v.unsigned_abs() {
                if v < 0 {
                    s.push('-');
                } else if !s.is_empty() {
                    s.push('+');
                }
                s.push_str(&token);
            }
        }
        entries.push(s);
    }
    Some(format!("({})", entries.join(",")))
}

//! Text and JSON encodings of monomials and monomial ideals.
//!
//! Text grammar:
//!
//! ```text
//! ideal    := "n=" INT sep monomial (sep monomial)*
//! monomial := term ("*" term)*
//! term     := "x" INT ("^" INT)?
//! sep      := "," | ";" | newline
//! ```
//!
//! Spaces and tabs are ignored everywhere. Repeated factors multiply, so
//! `x1*x1` is `x1^2`. The canonical rendering is `n=2; x1^2, x1*x2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{minimal_generators, MonomialIdeal};
use crate::monomial::Monomial;

/// JSON shape `{"n": int, "gens": [[int, ...], ...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct IdealJson {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(i: &MonomialIdeal) -> Self {
        IdealJson {
            n: i.n(),
            gens: i.gens().iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(j: IdealJson) -> Result<Self> {
        MonomialIdeal::from_exponents(j.n, &j.gens)
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = IdealJson::deserialize(d)?;
        MonomialIdeal::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn ideal_to_json(i: &MonomialIdeal) -> String {
    serde_json::to_string(&IdealJson::from(i)).expect("ideal JSON serialization")
}

pub fn ideal_from_json(text: &str) -> Result<MonomialIdeal> {
    let j: IdealJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    MonomialIdeal::try_from(j)
}

pub fn render_monomial(u: &Monomial) -> String {
    u.to_string()
}

pub fn render_ideal(i: &MonomialIdeal) -> String {
    let gens: Vec<String> = i.gens().iter().map(render_monomial).collect();
    format!("n={}; {}", i.n(), gens.join(", "))
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.col,
            message: message.into(),
        })
    }

    fn skip_blanks(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == ' ' || c == '\t' || c == '\r' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_blanks();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        if let Some(&c) = self.chars.get(self.pos) {
            self.pos += 1;
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_blanks();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&c) = self.chars.get(self.pos) {
            let Some(d) = c.to_digit(10) else { break };
            v = match v.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => v,
                None => return self.err("integer literal too large"),
            };
            self.bump();
        }
        if self.pos == start {
            return match self.chars.get(self.pos) {
                Some(c) => self.err(format!("expected integer, found '{c}'")),
                None => self.err("expected integer, found end of input"),
            };
        }
        Ok(v)
    }

    fn at_separator(&mut self) -> bool {
        matches!(self.peek(), Some(',') | Some(';') | Some('\n') | None)
    }

    fn monomial(&mut self, n: usize) -> Result<Monomial> {
        let mut exps = vec![0u32; n];
        loop {
            self.skip_blanks();
            let (line, col) = (self.line, self.col);
            self.expect('x')?;
            let idx = self.int()?;
            if idx == 0 || idx as usize > n {
                return Err(Error::Parse {
                    line,
                    column: col,
                    message: format!("variable x{idx} outside x1..x{n}"),
                });
            }
            let mut e: u64 = 1;
            if self.peek() == Some('^') {
                self.bump();
                e = self.int()?;
            }
            let slot = &mut exps[idx as usize - 1];
            *slot = u32::try_from(e)
                .ok()
                .and_then(|e| slot.checked_add(e))
                .ok_or(Error::ExponentOverflow)?;
            if self.peek() == Some('*') {
                self.bump();
                continue;
            }
            break;
        }
        Ok(Monomial::new(exps))
    }
}

/// Parse a single monomial in `n` variables.
pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial> {
    let mut c = Cursor::new(text);
    let m = c.monomial(n)?;
    if c.peek().is_some() {
        return c.err("trailing input after monomial");
    }
    Ok(m)
}

/// Parse the ideal text format and minimalize the generators.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut c = Cursor::new(text);
    while c.peek() == Some('\n') {
        c.bump();
    }
    c.expect('n')?;
    c.expect('=')?;
    let n = c.int()? as usize;
    if n == 0 {
        return c.err("ambient variable count must be positive");
    }
    if !c.at_separator() {
        return c.err("expected separator after the n=<int> header");
    }
    let mut monomials = Vec::new();
    loop {
        match c.peek() {
            None => break,
            Some(',') | Some(';') | Some('\n') => {
                c.bump();
                continue;
            }
            Some(_) => {}
        }
        let (line, column) = (c.line, c.col);
        let u = c.monomial(n)?;
        if u.is_one() {
            return Err(Error::Parse {
                line,
                column,
                message: "unit monomial is not a valid generator".into(),
            });
        }
        if !c.at_separator() {
            let found = c.peek().unwrap_or(' ');
            return c.err(format!("expected separator, found '{found}'"));
        }
        monomials.push(u);
    }
    if monomials.is_empty() {
        return c.err("ideal has no generators");
    }
    minimal_generators(monomials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_cli_style_input() {
        let i = parse_ideal("n=3; x1, x2^2, x2*x3^2").unwrap();
        assert_eq!(i.n(), 3);
        assert_eq!(
            i.gens().iter().map(|g| g.exponents().to_vec()).collect::<Vec<_>>(),
            vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 1, 2]]
        );
    }

    #[test]
    fn repeated_factors_multiply() {
        let i = parse_ideal("n=2; x1*x1").unwrap();
        assert_eq!(i.gens()[0].exponents(), &[2, 0]);
    }

    #[test]
    fn newline_separated_with_header_line() {
        let i = parse_ideal("n=2\nx1 ^ 2\n x1 * x2\n\nx2^2\n").unwrap();
        assert_eq!(i.num_gens(), 3);
    }

    #[test]
    fn rejects_out_of_range_variable() {
        match parse_ideal("n=2; x3") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!((line, column), (1, 6));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_line_and_column() {
        match parse_ideal("n=2\nx1,\nx2 y") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 4)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_ideal("n=2; x1^0").is_err());
        assert!(parse_ideal("n=2;").is_err());
        assert!(parse_ideal("m=2; x1").is_err());
    }

    #[test]
    fn json_shape() {
        let i = parse_ideal("n=2; x1^2, x1*x2").unwrap();
        assert_eq!(ideal_to_json(&i), r#"{"n":2,"gens":[[2,0],[1,1]]}"#);
        assert_eq!(ideal_from_json(r#"{"n":2,"gens":[[1,1],[2,0],[3,0]]}"#).unwrap(), i);
        assert!(ideal_from_json(r#"{"n":2,"gens":[[1,1,1]]}"#).is_err());
    }

    fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u32..4, n), 1..6)
                .prop_filter_map("unit", move |rows| MonomialIdeal::from_exponents(n, &rows).ok())
        })
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(i in ideal_strategy()) {
            let text = render_ideal(&i);
            let back = parse_ideal(&text).unwrap();
            prop_assert_eq!(render_ideal(&back), text);
            prop_assert_eq!(&back, &i);
            let json = ideal_to_json(&i);
            let back = ideal_from_json(&json).unwrap();
            prop_assert_eq!(ideal_to_json(&back), json);
        }
    }
}

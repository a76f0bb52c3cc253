//! Canonical text format for group elements.
//!
//! | group        | example          |
//! |--------------|------------------|
//! | ZPower       | `(3,-4)`         |
//! | Free         | `x1 x2 X1` (`e` for the empty word) |
//! | Heisenberg   | `H(1,0,-2)`      |
//! | LamplighterZ | `L(3;{0,2})`     |
//! | CyclicZ      | `5 mod 12`       |
//!
//! Uppercase letters are inverses. Printing then parsing is exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_vector() {
            f.write_str("(")?;
            write_joined(f, v, ",")?;
            f.write_str(")")
        } else if let Some(w) = self.as_word() {
            if w.is_empty() {
                return f.write_str("e");
            }
            for (i, l) in w.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                let c = if *l > 0 { 'x' } else { 'X' };
                write!(f, "{c}{}", l.unsigned_abs())?;
            }
            Ok(())
        } else if let Some((a, b, c)) = self.as_heisenberg() {
            write!(f, "H({a},{b},{c})")
        } else if let Some((pos, lamps)) = self.as_lamplighter() {
            write!(f, "L({pos};{{")?;
            write_joined(f, lamps, ",")?;
            f.write_str("})")
        } else {
            let m = match self.descriptor() {
                GroupDescriptor::CyclicZ(m) => m,
                _ => unreachable!(),
            };
            write!(f, "{} mod {m}", self.as_residue().unwrap_or_default())
        }
    }
}

fn write_joined<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    sep: &str,
) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in {what}")))
        })
        .collect()
}

fn strip_wrapped<'a>(s: &'a str, open: &str, close: &str) -> Result<&'a str> {
    s.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected {open}...{close}, got {s:?}")))
}

impl GroupElement {
    /// Parses the canonical text format. The descriptor disambiguates free
    /// words, whose text does not carry the rank.
    pub fn parse(descriptor: GroupDescriptor, text: &str) -> Result<GroupElement> {
        let s = text.trim();
        let el = match descriptor {
            GroupDescriptor::ZPower(d) => {
                let coords = parse_ints(strip_wrapped(s, "(", ")")?, s)?;
                if coords.len() != d {
                    return Err(Error::Parse(format!("{s:?} is not a vector of length {d}")));
                }
                GroupElement::vector(coords)?
            }
            GroupDescriptor::Free(rank) => {
                let mut letters = Vec::new();
                if s != "e" && !s.is_empty() {
                    for tok in s.split_whitespace() {
                        let (sign, idx) = if let Some(i) = tok.strip_prefix('x') {
                            (1, i)
                        } else if let Some(i) = tok.strip_prefix('X') {
                            (-1, i)
                        } else {
                            return Err(Error::Parse(format!("bad letter {tok:?}")));
                        };
                        let idx: i32 = idx
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
                        letters.push(sign * idx);
                    }
                }
                GroupElement::free(rank, &letters)?
            }
            GroupDescriptor::Heisenberg => {
                let v = parse_ints(strip_wrapped(s, "H(", ")")?, s)?;
                match v[..] {
                    [a, b, c] => GroupElement::heisenberg(a, b, c),
                    _ => return Err(Error::Parse(format!("{s:?} is not a Heisenberg triple"))),
                }
            }
            GroupDescriptor::LamplighterZ => {
                let inner = strip_wrapped(s, "L(", ")")?;
                let (pos, lamps) = inner
                    .split_once(';')
                    .ok_or_else(|| Error::Parse(format!("missing ';' in {s:?}")))?;
                let pos = pos
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad position in {s:?}")))?;
                let lamps = parse_ints(strip_wrapped(lamps.trim(), "{", "}")?, s)?;
                GroupElement::lamplighter(pos, lamps)
            }
            GroupDescriptor::CyclicZ(m) => {
                let (r, modulus) = s
                    .split_once(" mod ")
                    .ok_or_else(|| Error::Parse(format!("expected 'r mod m', got {s:?}")))?;
                let r: i64 = r
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue in {s:?}")))?;
                let modulus: u64 = modulus
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
                if modulus != m {
                    return Err(Error::Parse(format!("{s:?} is not in CyclicZ({m})")));
                }
                GroupElement::cyclic(m, r)?
            }
        };
        Ok(el)
    }
}

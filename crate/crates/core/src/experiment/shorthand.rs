//! Real-harmonic shorthand such as `"2cos(6θ)"`, `"sin(5theta) - 0.5"` or
//! `"Y_{8,1}"`.
//!
//! Grammar, whitespace ignored:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := ['+' | '-'] [number ['*']] atom | ['+' | '-'] number
//! atom  := cos(kθ) | sin(kθ) | Y_{l,m} | Y_l^m
//! ```
//!
//! `θ` may also be written `theta`; `k` defaults to 1. A bare number is a
//! constant function. `cos`/`sin` are planar only; `Y_{l,m}` is the real
//! basis element of the current dimension.

use std::f64::consts::PI;

use crate::harmonics::{sphere_area, CoeffMap, HarmonicIndex, C64};

#[derive(Clone, Copy, Debug, PartialEq)]
enum Atom {
    Const,
    Cos(u32),
    Sin(u32),
    Real(u32, i32),
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        if self.s[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected '{c}' at position {}", self.pos))
        }
    }

    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if self.pos > start && matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            let _ = self.eat('+') || self.eat('-');
            let exp_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == exp_start {
                self.pos = save;
            }
        }
        if self.pos == start {
            return None;
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse().ok()
    }

    fn integer(&mut self) -> Result<i64, String> {
        let neg = self.eat('-');
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(format!("expected an integer at position {start}"));
        }
        let text: String = self.s[start..self.pos].iter().collect();
        let v: i64 = text
            .parse()
            .map_err(|_| format!("integer {text} out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn frequency(&mut self) -> Result<u32, String> {
        self.expect('(')?;
        let k = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.integer()?
        } else {
            1
        };
        let _ = self.eat('*');
        if !(self.eat('θ') || self.eat_str("theta")) {
            return Err(format!("expected θ or theta at position {}", self.pos));
        }
        self.expect(')')?;
        u32::try_from(k).map_err(|_| "frequency out of range".to_string())
    }

    fn atom(&mut self) -> Result<Option<Atom>, String> {
        if self.eat_str("cos") {
            return Ok(Some(Atom::Cos(self.frequency()?)));
        }
        if self.eat_str("sin") {
            return Ok(Some(Atom::Sin(self.frequency()?)));
        }
        if self.eat_str("Y_") {
            let (l, m) = if self.eat('{') {
                let l = self.integer()?;
                self.expect(',')?;
                let m = self.integer()?;
                self.expect('}')?;
                (l, m)
            } else {
                let l = self.integer()?;
                self.expect('^')?;
                let m = if self.eat('{') {
                    let m = self.integer()?;
                    self.expect('}')?;
                    m
                } else {
                    self.integer()?
                };
                (l, m)
            };
            let l = u32::try_from(l).map_err(|_| "negative degree".to_string())?;
            let m = i32::try_from(m).map_err(|_| "order out of range".to_string())?;
            return Ok(Some(Atom::Real(l, m)));
        }
        Ok(None)
    }

    fn term(&mut self, sign: f64) -> Result<(f64, Atom), String> {
        let coef = self.number();
        if coef.is_some() {
            let _ = self.eat('*');
        }
        match self.atom()? {
            Some(a) => Ok((sign * coef.unwrap_or(1.0), a)),
            None => match coef {
                Some(c) => Ok((sign * c, Atom::Const)),
                None => Err(format!("unexpected input at position {}", self.pos)),
            },
        }
    }
}

fn parse_terms(text: &str) -> Result<Vec<(f64, Atom)>, String> {
    // whitespace is insignificant except inside a number: "2 3" is not 23
    let numeric = |c: char| c.is_ascii_digit() || c == '.';
    let mut prev: Option<char> = None;
    let mut gap = false;
    for c in text.chars() {
        if c.is_whitespace() {
            gap = prev.is_some();
            continue;
        }
        if gap && numeric(c) && prev.is_some_and(numeric) {
            return Err(format!("whitespace inside the number near '{c}'"));
        }
        prev = Some(c);
        gap = false;
    }
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { s: &chars, pos: 0 };
    let mut out = Vec::new();
    let mut sign = if p.eat('-') {
        -1.0
    } else {
        let _ = p.eat('+');
        1.0
    };
    loop {
        out.push(p.term(sign)?);
        if p.pos == chars.len() {
            return Ok(out);
        }
        sign = if p.eat('+') {
            1.0
        } else if p.eat('-') {
            -1.0
        } else {
            return Err(format!("expected '+' or '-' at position {}", p.pos));
        };
    }
}

/// Expand a shorthand expression into real-basis coefficients for dimension
/// `dim`.
pub fn expand_shorthand(text: &str, dim: usize) -> Result<CoeffMap, String> {
    let terms = parse_terms(text)?;
    let mut out = CoeffMap::new();
    let mut add = |idx: HarmonicIndex, c: f64| -> Result<(), String> {
        if !idx.is_valid(dim) {
            return Err(format!("{idx} is not a basis element in dimension {dim}"));
        }
        *out.entry(idx).or_insert(C64::new(0.0, 0.0)) += C64::new(c, 0.0);
        Ok(())
    };
    let planar = |what: &str| -> Result<(), String> {
        if dim == 2 {
            Ok(())
        } else {
            Err(format!("{what}(kθ) shorthand is only available for d = 2"))
        }
    };
    let root_area = sphere_area(dim).map_err(|e| e.to_string())?.sqrt();
    for (c, atom) in terms {
        match atom {
            Atom::Const => add(HarmonicIndex::constant(dim), c * root_area)?,
            Atom::Cos(0) => {
                planar("cos")?;
                add(HarmonicIndex::constant(dim), c * root_area)?
            }
            Atom::Cos(k) => {
                planar("cos")?;
                add(HarmonicIndex::new(k, 1), c * PI.sqrt())?
            }
            Atom::Sin(0) => planar("sin")?,
            Atom::Sin(k) => {
                planar("sin")?;
                add(HarmonicIndex::new(k, 2), c * PI.sqrt())?
            }
            Atom::Real(l, m) => add(HarmonicIndex::new(l, m), c)?,
        }
    }
    Ok(out)
}

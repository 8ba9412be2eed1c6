//! Canonical polynomial text format and ideal files.
//!
//! Grammar:
//!   poly    := term (('+'|'-') term)*
//!   term    := coeff | coeff '*' factors | factors
//!   factors := var ('^' nat)? ('*' var ('^' nat)?)*
//!   var     := name '_' index
//! Whitespace is insignificant. A leading '-' on the first term is accepted
//! on input; the printer never produces one.
//!
//! Ideal files: a header line `ring <name> <count>` followed by one
//! polynomial per line in the grammar above.

use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: &str) -> CasError {
        CasError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("number out of range"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a variable"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }
}

/// Parse a polynomial in the canonical grammar.
pub fn parse_poly(fp: &Fp, ring: &RingRef, text: &str) -> Result<Polynomial> {
    let mut lx = Lexer::new(text);
    let mut terms: Vec<(Monomial, u64)> = Vec::new();
    let mut sign_neg = false;
    if let Some(b'-') = lx.peek() {
        lx.bump();
        sign_neg = true;
    } else if let Some(b'+') = lx.peek() {
        lx.bump();
    }
    loop {
        let (m, c) = parse_term(fp, ring, &mut lx)?;
        let c = if sign_neg { fp.neg(c) } else { c };
        terms.push((m, c));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.bump();
                sign_neg = false;
            }
            Some(b'-') => {
                lx.bump();
                sign_neg = true;
            }
            Some(_) => return Err(lx.err("expected '+' or '-'")),
        }
    }
    Ok(Polynomial::from_terms(ring, fp, terms))
}

fn parse_term(fp: &Fp, ring: &RingRef, lx: &mut Lexer) -> Result<(Monomial, u64)> {
    let mut coeff = 1u64;
    let mut mono = Monomial::one(ring.nvars());
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = lx.number()?;
                coeff = fp.mul(coeff, fp.reduce_u64(n));
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = lx.ident()?;
                let idx = ring
                    .var_index(&name)
                    .ok_or_else(|| CasError::UnknownVariable(name.clone()))?;
                let mut e = 1u64;
                if let Some(b'^') = lx.peek() {
                    lx.bump();
                    e = lx.number()?;
                }
                if e > u8::MAX as u64 {
                    return Err(lx.err("exponent too large"));
                }
                let cur = mono.exp(idx) as u64 + e;
                if cur > u8::MAX as u64 {
                    return Err(lx.err("exponent too large"));
                }
                mono.set(idx, cur as u8);
            }
            _ => return Err(lx.err("expected a coefficient or variable")),
        }
        match lx.peek() {
            Some(b'*') => {
                lx.bump();
            }
            _ => break,
        }
    }
    Ok((mono, coeff))
}

/// Serialize an ideal in the file format.
pub fn write_ideal(ideal: &Ideal) -> Result<String> {
    let ring = ideal.ring();
    // the format requires indexed variables of one base name
    let mut base: Option<String> = None;
    for v in ring.vars() {
        let Some((name, idx)) = v.rsplit_once('_') else {
            return Err(CasError::Geometry(format!(
                "ideal file requires indexed variables, got `{v}`"
            )));
        };
        idx.parse::<usize>()
            .map_err(|_| CasError::Geometry(format!("non-numeric variable index in `{v}`")))?;
        match &base {
            None => base = Some(name.to_string()),
            Some(b) if b == name => {}
            Some(_) => {
                return Err(CasError::Geometry(
                    "ideal file requires a single base variable name".into(),
                ))
            }
        }
    }
    let base = base.unwrap_or_else(|| "x".into());
    let mut out = format!("ring {} {}\n", base, ring.nvars());
    for g in ideal.generators() {
        out.push_str(&g.print());
        out.push('\n');
    }
    Ok(out)
}

/// Parse an ideal file.
pub fn parse_ideal(fp: &Fp, text: &str) -> Result<(RingRef, Vec<Polynomial>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| CasError::Syntax {
        pos: 0,
        msg: "empty ideal file".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "ring" {
        return Err(CasError::Syntax {
            pos: 0,
            msg: "expected header `ring <name> <count>`".into(),
        });
    }
    let count: usize = parts[2].parse().map_err(|_| CasError::Syntax {
        pos: 0,
        msg: "bad variable count".into(),
    })?;
    let ring = crate::poly::Ring::indexed(parts[1], count);
    let mut gens = Vec::new();
    for l in lines {
        gens.push(parse_poly(fp, &ring, l)?);
    }
    Ok((ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn sample_surface_subterms() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let f = parse_poly(&fp, &r, "s_0^2*s_1^2*s_2^2 - 2*s_0*s_1*s_2*s_3^3").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.degree(), 6);
        assert!(f.is_homogeneous());
    }

    #[test]
    fn zero_poly() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let f = parse_poly(&fp, &r, "0").unwrap();
        assert!(f.is_zero());
        assert_eq!(f.print(), "0");
    }

    #[test]
    fn unknown_variable_and_syntax_errors() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        assert!(matches!(
            parse_poly(&fp, &r, "t_0 + s_1"),
            Err(CasError::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_poly(&fp, &r, "s_0 + + s_1"),
            Err(CasError::Syntax { .. })
        ));
    }

    #[test]
    fn ideal_file_roundtrip() {
        let fp = Fp::default();
        let r = Ring::indexed("w", 3);
        let i = crate::ideal::ideal_from_texts(
            &fp,
            &r,
            &["w_0*w_2 - w_1^2", "3*w_0 + w_2"],
        )
        .unwrap();
        let text = write_ideal(&i).unwrap();
        assert!(text.starts_with("ring w 3
"));
        let (ring2, gens2) = parse_ideal(&fp, &text).unwrap();
        assert_eq!(ring2.vars(), i.ring().vars());
        let j = crate::ideal::Ideal::new(&ring2, gens2);
        assert!(j.ideal_eq(&fp, &i.rebase(&ring2)).unwrap());
    }

    #[test]
    fn print_parse_roundtrip() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let f = parse_poly(&fp, &r, "3*s_0^2 - s_1*s_2 + 7").unwrap();
        let g = parse_poly(&fp, &r, &f.print()).unwrap();
        assert_eq!(f, g);
    }
}

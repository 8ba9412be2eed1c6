//! Elimination and the ideal operations built on it: intersection, quotient,
//! saturation. Elimination always goes through a block order with grevlex
//! inside the blocks.

use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring, RingRef};

/// Eliminate the first `k` variables. The result lives in the ring on the
/// remaining variables.
pub fn eliminate(fp: &Fp, ideal: &Ideal, k: usize) -> Result<Ideal> {
    let ring = ideal.ring();
    if k == 0 {
        return Ok(ideal.clone());
    }
    if k > ring.nvars() {
        return Err(CasError::Geometry("elimination block too large".into()));
    }
    let order = MonomialOrder::Block(k);
    let gbas = ideal.groebner(fp, &order)?;
    let sub = Ring::new(ring.vars()[k..].to_vec());
    let mut gens = Vec::new();
    for p in gbas.polys(fp) {
        if p.terms().iter().all(|(m, _)| m.free_of_first(k)) {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| (m.strip_first(k), *c))
                .collect();
            gens.push(Polynomial::from_terms(&sub, fp, terms));
        }
    }
    Ok(Ideal::new(&sub, gens))
}

fn fresh_var_name(ring: &RingRef, base: &str) -> String {
    let mut name = format!("{base}_0");
    let mut n = 0;
    while ring.var_index(&name).is_some() {
        n += 1;
        name = format!("{base}{n}_0");
    }
    name
}

/// Embed `f` from `ring` into `joined` assuming ring's variables occupy the
/// tail of `joined` (after `offset` new variables).
fn embed_tail(f: &Polynomial, joined: &RingRef, offset: usize) -> Polynomial {
    let map: Vec<usize> = (0..f.ring().nvars()).map(|i| i + offset).collect();
    f.map_vars(joined, &map)
}

/// Ideal intersection via one auxiliary variable:
/// I cap J = eliminate t from  t*I + (1-t)*J.
pub fn intersect(fp: &Fp, a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.ring().vars() != b.ring().vars() {
        return Err(CasError::RingMismatch(
            a.ring().describe(),
            b.ring().describe(),
        ));
    }
    let ring = a.ring();
    let aux = fresh_var_name(ring, "t");
    let mut vars = vec![aux];
    vars.extend(ring.vars().iter().cloned());
    let joined = Ring::new(vars);
    let t = Polynomial::variable(&joined, 0);
    let one_minus_t = Polynomial::one(&joined).sub(fp, &t)?;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(t.mul(fp, &embed_tail(g, &joined, 1))?);
    }
    for g in b.generators() {
        gens.push(one_minus_t.mul(fp, &embed_tail(g, &joined, 1))?);
    }
    let big = Ideal::new(&joined, gens);
    let out = eliminate(fp, &big, 1)?;
    Ok(out.rebase(ring))
}

pub fn intersect_many(fp: &Fp, ideals: &[Ideal]) -> Result<Ideal> {
    let mut it = ideals.iter();
    let first = it
        .next()
        .ok_or_else(|| CasError::Geometry("empty intersection".into()))?;
    let mut acc = first.clone();
    for i in it {
        acc = intersect(fp, &acc, i)?;
    }
    Ok(acc)
}

/// Ideal quotient (I : g) = (I cap <g>)/g.
pub fn quotient_poly(fp: &Fp, ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if g.is_zero() {
        return Err(CasError::DivisionByZero);
    }
    let pg = Ideal::new(ideal.ring(), vec![g.clone()]);
    let cap = intersect(fp, ideal, &pg)?;
    let gens = cap
        .generators()
        .iter()
        .map(|f| f.div_exact(fp, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ideal.ring(), gens))
}

/// Ideal quotient (I : J) = intersection of (I : g) over generators of J.
pub fn quotient_ideal(fp: &Fp, ideal: &Ideal, j: &Ideal) -> Result<Ideal> {
    let mut parts = Vec::new();
    for g in j.generators() {
        parts.push(quotient_poly(fp, ideal, g)?);
    }
    if parts.is_empty() {
        return Err(CasError::Geometry("quotient by the zero ideal".into()));
    }
    intersect_many(fp, &parts)
}

/// Saturation (I : g^infty) by iterating the quotient until it stabilizes.
pub fn saturate_poly(fp: &Fp, ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let mut cur = ideal.clone();
    loop {
        let next = quotient_poly(fp, &cur, g)?;
        if next.contains_ideal(fp, &cur)? && cur.contains_ideal(fp, &next)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Fast path for principal saturation: eliminate y from I + <1 - y*g>.
pub fn saturate_poly_aux(fp: &Fp, ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let ring = ideal.ring();
    let aux = fresh_var_name(ring, "y");
    let mut vars = vec![aux];
    vars.extend(ring.vars().iter().cloned());
    let joined = Ring::new(vars);
    let y = Polynomial::variable(&joined, 0);
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|f| embed_tail(f, &joined, 1))
        .collect();
    let rel = Polynomial::one(&joined).sub(fp, &y.mul(fp, &embed_tail(g, &joined, 1))?)?;
    gens.push(rel);
    let out = eliminate(fp, &Ideal::new(&joined, gens), 1)?;
    Ok(out.rebase(ring))
}

/// Saturation (I : J^infty).
pub fn saturate_ideal(fp: &Fp, ideal: &Ideal, j: &Ideal) -> Result<Ideal> {
    let mut cur = ideal.clone();
    loop {
        let next = quotient_ideal(fp, &cur, j)?;
        if next.contains_ideal(fp, &cur)? && cur.contains_ideal(fp, &next)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Saturate by the irrelevant maximal ideal: remove the irrelevant component
/// of a projective scheme's ideal.
pub fn saturate_irrelevant(fp: &Fp, ideal: &Ideal) -> Result<Ideal> {
    let irr = crate::ideal::irrelevant_ideal(ideal.ring());
    saturate_ideal(fp, ideal, &irr)
}

//! Buchberger engine with Gebauer-Moeller pair elimination and sugar
//! selection. Produces reduced Groebner bases; deterministic for a fixed
//! input generator order.

use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, RingRef};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, Default)]
pub struct EngineLimits {
    /// Cap on the sugar degree of processed S-pairs.
    pub max_sugar: Option<u16>,
    /// Cap on the number of basis elements.
    pub max_basis: Option<usize>,
}

/// Polynomial in engine form: terms strictly descending under the active
/// order, leading coefficient 1 once inserted in the basis.
#[derive(Debug, Clone)]
pub struct GbPoly {
    pub terms: Vec<(Monomial, u64)>,
    pub sugar: u16,
    /// bitmask of variables appearing in the leading monomial
    lm_mask: u64,
}

impl GbPoly {
    fn new(terms: Vec<(Monomial, u64)>, sugar: u16) -> Self {
        let lm_mask = terms.first().map(|(m, _)| support_mask(m)).unwrap_or(0);
        GbPoly { terms, sugar, lm_mask }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> u64 {
        self.terms[0].1
    }
}

fn support_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for i in 0..m.nvars().min(64) {
        if m.exp(i) > 0 {
            mask |= 1 << i;
        }
    }
    mask
}

fn sort_terms(order: &MonomialOrder, mut terms: Vec<(Monomial, u64)>) -> Vec<(Monomial, u64)> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

pub fn poly_to_engine(order: &MonomialOrder, f: &Polynomial) -> GbPoly {
    let sugar = f.degree();
    GbPoly::new(sort_terms(order, f.terms().to_vec()), sugar)
}

pub fn engine_to_poly(fp: &Fp, ring: &RingRef, g: &GbPoly) -> Polynomial {
    Polynomial::from_terms(ring, fp, g.terms.clone())
}

/// result = a - c * x^m * b  (merge of sorted term lists)
fn sub_mul(
    fp: &Fp,
    order: &MonomialOrder,
    a: &[(Monomial, u64)],
    c: u64,
    m: &Monomial,
    b: &[(Monomial, u64)],
) -> Vec<(Monomial, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, fp.neg(fp.mul(c, b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = fp.sub(a[i].1, fp.mul(c, b[j].1));
                if v != 0 {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push((b[j].0.mul(m), fp.neg(fp.mul(c, b[j].1))));
        j += 1;
    }
    out
}

/// Full normal form of `f` with respect to monic reducers.
pub fn reduce_full(fp: &Fp, order: &MonomialOrder, basis: &[GbPoly], f: GbPoly) -> GbPoly {
    let mut sugar = f.sugar;
    let mut rest = f.terms;
    let mut start = 0usize;
    let mut done: Vec<(Monomial, u64)> = Vec::new();
    'outer: while start < rest.len() {
        let (lm, lc) = (&rest[start].0, rest[start].1);
        let tmask = support_mask(lm);
        for g in basis {
            if g.is_zero() {
                continue;
            }
            if g.lm_mask & !tmask != 0 {
                continue;
            }
            if g.lm().divides(lm) {
                let m = g.lm().div(lm);
                sugar = sugar.max(g.sugar + m.degree());
                // tail = tail - lc * m * g   (leading terms cancel)
                rest = sub_mul(fp, order, &rest[start..], lc, &m, &g.terms);
                start = 0;
                continue 'outer;
            }
        }
        done.push(rest[start].clone());
        start += 1;
    }
    GbPoly::new(done, sugar)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u16,
}

fn pair_sugar(a: &GbPoly, b: &GbPoly, lcm: &Monomial) -> u16 {
    let sa = a.sugar + lcm.degree() - a.lm().degree();
    let sb = b.sugar + lcm.degree() - b.lm().degree();
    sa.max(sb)
}

fn pair_cmp(order: &MonomialOrder, a: &Pair, b: &Pair) -> Ordering {
    a.sugar
        .cmp(&b.sugar)
        .then(a.lcm.degree().cmp(&b.lcm.degree()))
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then(a.i.cmp(&b.i))
        .then(a.j.cmp(&b.j))
}

/// Compute a reduced Groebner basis. Generators may live in any ring; the
/// caller passes the ring only for conversions.
pub fn groebner_engine(
    fp: &Fp,
    order: &MonomialOrder,
    gens: &[Polynomial],
    limits: EngineLimits,
) -> Result<Vec<GbPoly>> {
    let mut basis: Vec<GbPoly> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<GbPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| poly_to_engine(order, g))
        .collect();
    // deterministic insertion order: by (degree, ascending lead)
    input.sort_by(|a, b| {
        a.lm()
            .degree()
            .cmp(&b.lm().degree())
            .then_with(|| order.cmp(a.lm(), b.lm()))
    });

    let insert = |h: GbPoly,
                      basis: &mut Vec<GbPoly>,
                      alive: &mut Vec<bool>,
                      pairs: &mut Vec<Pair>|
     -> Result<()> {
        let t = basis.len();
        let lm_t = h.lm().clone();
        // Gebauer-Moeller update
        let mut new_pairs: Vec<Pair> = Vec::new();
        for i in 0..t {
            if !alive[i] {
                continue;
            }
            let lcm = basis[i].lm().lcm(&lm_t);
            new_pairs.push(Pair {
                i,
                j: t,
                sugar: pair_sugar(&basis[i], &h, &lcm),
                lcm,
            });
        }
        // 1st criterion among new pairs: drop (i,t) if another (j,t) has a
        // strictly dividing lcm; among equal lcms keep the first.
        let mut keep = vec![true; new_pairs.len()];
        for a in 0..new_pairs.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..new_pairs.len() {
                if a == b || !keep[a] {
                    continue;
                }
                if keep[b]
                    && new_pairs[b].lcm.divides(&new_pairs[a].lcm)
                    && new_pairs[b].lcm != new_pairs[a].lcm
                {
                    keep[a] = false;
                }
            }
        }
        // equal-lcm classes: keep one representative (prefer a coprime pair
        // so the product criterion applies to the survivor)
        for a in 0..new_pairs.len() {
            if !keep[a] {
                continue;
            }
            for b in (a + 1)..new_pairs.len() {
                if keep[b] && new_pairs[a].lcm == new_pairs[b].lcm {
                    let bp = &new_pairs[b];
                    if basis[bp.i].lm().is_coprime(&lm_t) {
                        keep[a] = false;
                    } else {
                        keep[b] = false;
                    }
                }
            }
        }
        // product criterion
        for (a, p) in new_pairs.iter().enumerate() {
            if keep[a] && basis[p.i].lm().is_coprime(&lm_t) {
                keep[a] = false;
            }
        }
        // prune old pairs via the chain criterion
        pairs.retain(|p| {
            if !lm_t.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lm().lcm(&lm_t);
            let lj = basis[p.j].lm().lcm(&lm_t);
            li == p.lcm || lj == p.lcm
        });
        for (a, p) in new_pairs.into_iter().enumerate() {
            if keep[a] {
                pairs.push(p);
            }
        }
        // retire basis elements whose lead is now divisible
        for i in 0..t {
            if alive[i] && lm_t.divides(basis[i].lm()) {
                alive[i] = false;
            }
        }
        basis.push(h);
        alive.push(true);
        if let Some(mb) = limits.max_basis {
            if basis.len() > mb {
                return Err(CasError::ResourceLimit(format!(
                    "basis size exceeded {mb}"
                )));
            }
        }
        Ok(())
    };

    for g in input {
        let red = reduce_full(fp, order, &basis, g);
        if red.is_zero() {
            continue;
        }
        let red = make_monic(fp, red);
        if red.lm().is_one() {
            return Ok(vec![red]);
        }
        insert(red, &mut basis, &mut alive, &mut pairs)?;
    }

    while !pairs.is_empty() {
        // deterministic selection: minimal (sugar, lcm degree, lcm, i, j)
        let mut best = 0;
        for k in 1..pairs.len() {
            if pair_cmp(order, &pairs[k], &pairs[best]) == Ordering::Less {
                best = k;
            }
        }
        let p = pairs.swap_remove(best);
        if let Some(ms) = limits.max_sugar {
            if p.sugar > ms {
                return Err(CasError::ResourceLimit(format!(
                    "S-pair sugar degree {} exceeded cap {ms}",
                    p.sugar
                )));
            }
        }
        let (f, g) = (&basis[p.i], &basis[p.j]);
        let mf = f.lm().div(&p.lcm);
        let mg = g.lm().div(&p.lcm);
        // S = mf*f - mg*g, both monic
        let shifted: Vec<(Monomial, u64)> =
            f.terms.iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
        let s_terms = sub_mul(fp, order, &shifted, 1, &mg, &g.terms);
        let s = GbPoly::new(s_terms, p.sugar);
        let red = reduce_full(fp, order, &basis, s);
        if red.is_zero() {
            continue;
        }
        let red = make_monic(fp, red);
        if red.lm().is_one() {
            return Ok(vec![red]);
        }
        insert(red, &mut basis, &mut alive, &mut pairs)?;
    }

    // minimal basis: survivors of the lead-divisibility retirements
    let keep: Vec<GbPoly> = basis
        .iter()
        .zip(alive.iter())
        .filter(|(_, &a)| a)
        .map(|(g, _)| g.clone())
        .collect();
    // tail-reduce each against the others
    let mut reduced: Vec<GbPoly> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<GbPoly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce_full(fp, order, &others, keep[i].clone());
        if !r.is_zero() {
            reduced.push(make_monic(fp, r));
        }
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

fn make_monic(fp: &Fp, mut g: GbPoly) -> GbPoly {
    let c = g.lc();
    if c != 1 {
        let inv = fp.inv(c).expect("nonzero lead");
        for (_, k) in g.terms.iter_mut() {
            *k = fp.mul(*k, inv);
        }
    }
    g
}

/// Check that every S-polynomial of the basis reduces to zero (Buchberger
/// criterion); direct assertion used by the property suite.
pub fn all_spolys_reduce(fp: &Fp, order: &MonomialOrder, basis: &[GbPoly]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let lcm = basis[i].lm().lcm(basis[j].lm());
            let mi = basis[i].lm().div(&lcm);
            let mj = basis[j].lm().div(&lcm);
            let shifted: Vec<(Monomial, u64)> = basis[i]
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&mi), *c))
                .collect();
            let s_terms = sub_mul(fp, order, &shifted, 1, &mj, &basis[j].terms);
            let s = GbPoly::new(s_terms, 0);
            if !reduce_full(fp, order, basis, s).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn principal_ideal_basis() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let s0 = Polynomial::variable(&r, 0);
        let gb = groebner_engine(&fp, &MonomialOrder::Grevlex, std::slice::from_ref(&s0), Default::default())
            .unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(engine_to_poly(&fp, &r, &gb[0]), s0);
    }

    #[test]
    fn twisted_cubic_minors_already_basis() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let f = |t: &str| crate::parse::parse_poly(&fp, &r, t).unwrap();
        let gens = vec![
            f("s_1^2 - s_0*s_2"),
            f("s_1*s_2 - s_0*s_3"),
            f("s_2^2 - s_1*s_3"),
        ];
        let order = MonomialOrder::Grevlex;
        let gb = groebner_engine(&fp, &order, &gens, Default::default()).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(all_spolys_reduce(&fp, &order, &gb));
        // each original generator is in the basis up to scaling
        for g in &gens {
            let e = reduce_full(&fp, &order, &gb, poly_to_engine(&order, g));
            assert!(e.is_zero());
        }
    }

    #[test]
    fn unit_ideal_detected() {
        let fp = Fp::default();
        let r = Ring::indexed("x", 2);
        let f = |t: &str| crate::parse::parse_poly(&fp, &r, t).unwrap();
        let gb = groebner_engine(
            &fp,
            &MonomialOrder::Grevlex,
            &[f("x_0"), f("x_0 + 1")],
            Default::default(),
        )
        .unwrap();
        assert_eq!(gb.len(), 1);
        assert!(gb[0].lm().is_one());
    }
}

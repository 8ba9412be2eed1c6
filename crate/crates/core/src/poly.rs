//! Sparse multivariate polynomials over Z/pZ.
//!
//! A polynomial carries its ring (named variable list) and a term list kept
//! strictly descending under grevlex; functions that need another order sort
//! working copies at their own boundary. No zero coefficients are stored and
//! the zero polynomial has an empty term list.

use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::monomial::{Monomial, MonomialOrder};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new(vars: Vec<String>) -> Arc<Ring> {
        Arc::new(Ring { vars })
    }

    /// Ring with variables `name_0 .. name_{n-1}`.
    pub fn indexed(name: &str, n: usize) -> Arc<Ring> {
        Ring::new((0..n).map(|i| format!("{name}_{i}")).collect())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// New ring with `other`'s variables in front (for elimination blocks).
    pub fn join_front(front: &Ring, back: &Ring) -> Arc<Ring> {
        let mut vars = front.vars.clone();
        vars.extend(back.vars.iter().cloned());
        Ring::new(vars)
    }

    pub fn describe(&self) -> String {
        format!("[{}]", self.vars.join(","))
    }
}

pub type RingRef = Arc<Ring>;

fn same_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.vars == b.vars {
        Ok(())
    } else {
        Err(CasError::RingMismatch(a.describe(), b.describe()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    /// strictly descending under grevlex, nonzero coefficients
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, fp: &Fp, c: u64) -> Self {
        let c = fp.reduce_u64(c);
        if c == 0 {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), 1)],
        }
    }

    pub fn variable(ring: &RingRef, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i, 1), 1)],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u64) -> Self {
        if c == 0 {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Build from unsorted (monomial, coeff) pairs, combining duplicates.
    pub fn from_terms(ring: &RingRef, fp: &Fp, terms: Vec<(Monomial, u64)>) -> Self {
        let mut map: HashMap<Monomial, u64> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            let c = fp.reduce_u64(c);
            if c == 0 {
                continue;
            }
            let e = map.entry(m).or_insert(0);
            *e = fp.add(*e, c);
        }
        let mut v: Vec<(Monomial, u64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms: v,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u64)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u16 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, u64)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, *c))
    }

    pub fn add(&self, fp: &Fp, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(fp, other, false))
    }

    pub fn sub(&self, fp: &Fp, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(fp, other, true))
    }

    fn merge(&self, fp: &Fp, other: &Polynomial, negate: bool) -> Polynomial {
        let ord = MonomialOrder::Grevlex;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { fp.neg(*c) } else { *c }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        fp.sub(self.terms[i].1, other.terms[j].1)
                    } else {
                        fp.add(self.terms[i].1, other.terms[j].1)
                    };
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            out.push((m.clone(), if negate { fp.neg(*c) } else { *c }));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self, fp: &Fp) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), fp.neg(*c)))
                .collect(),
        }
    }

    pub fn scale(&self, fp: &Fp, c: u64) -> Polynomial {
        let c = fp.reduce_u64(c);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), fp.mul(*k, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, fp: &Fp, m: &Monomial, c: u64) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), fp.mul(*k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, fp: &Fp, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut map: HashMap<Monomial, u64> =
            HashMap::with_capacity(small.terms.len() * big.terms.len() / 2 + 1);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let e = map.entry(m).or_insert(0);
                *e = fp.mul_add(*e, *c1, *c2);
            }
        }
        let mut v: Vec<(Monomial, u64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: v,
        })
    }

    pub fn pow(&self, fp: &Fp, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(fp, self).expect("same ring");
        }
        acc
    }

    pub fn partial_derivative(&self, fp: &Fp, var: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.set(var, e - 1);
            let c2 = fp.mul(*c, e as u64 % fp.modulus());
            if c2 != 0 {
                terms.push((m2, c2));
            }
        }
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Substitute every variable by the polynomial `images[i]`, all living in
    /// one common target ring.
    pub fn substitute(&self, fp: &Fp, target: &RingRef, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(CasError::Geometry(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        for im in images {
            same_ring(target, im.ring())?;
        }
        // cache powers of each image
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|im| vec![Polynomial::one(target), im.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, fp, *c);
            for i in 0..self.ring.nvars() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let last = powers[i].last().unwrap().clone();
                    powers[i].push(last.mul(fp, &images[i])?);
                }
                t = t.mul(fp, &powers[i][e])?;
            }
            acc = acc.add(fp, &t)?;
        }
        Ok(acc)
    }

    /// Evaluate at a point (full substitution by scalars).
    pub fn eval(&self, fp: &Fp, point: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (pt, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = fp.mul(t, fp.pow(*pt, e as u64));
                }
            }
            acc = fp.add(acc, t);
        }
        acc
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: u16) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    pub fn min_degree(&self) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// Map this polynomial into a larger ring given the variable index map.
    pub fn map_vars(&self, target: &RingRef, var_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let mut terms: Vec<(Monomial, u64)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mm = Monomial::one(n);
                for (i, &target_var) in var_map.iter().enumerate() {
                    if m.exp(i) > 0 {
                        mm.set(target_var, m.exp(i));
                    }
                }
                (mm, *c)
            })
            .collect();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    /// Set variable `var` to 1 (dehomogenize); output lives in the same ring.
    pub fn substitute_var_one(&self, fp: &Fp, var: usize) -> Polynomial {
        let mut map: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.set(var, 0);
            let e = map.entry(mm).or_insert(0);
            *e = fp.add(*e, *c);
        }
        let mut v: Vec<(Monomial, u64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            terms: v,
        }
    }

    /// Make the coefficient of the leading term (under `order`) equal to 1.
    pub fn monic(&self, fp: &Fp, order: &MonomialOrder) -> Polynomial {
        match self.leading(order) {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(fp, fp.inv(c).expect("nonzero lead")),
        }
    }

    /// Exact division by `g`; error if the division leaves a remainder.
    pub fn div_exact(&self, fp: &Fp, g: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &g.ring)?;
        if g.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        let ord = MonomialOrder::Grevlex;
        let (glm, glc) = g.leading(&ord).unwrap();
        let glc_inv = fp.inv(glc)?;
        let mut rem = self.clone();
        let mut q: Vec<(Monomial, u64)> = Vec::new();
        while let Some((rlm, rlc)) = rem.leading(&ord).map(|(m, c)| (m.clone(), c)) {
            if !glm.divides(&rlm) {
                return Err(CasError::Geometry("inexact polynomial division".into()));
            }
            let m = glm.div(&rlm);
            let c = fp.mul(rlc, glc_inv);
            q.push((m.clone(), c));
            rem = rem.sub(fp, &g.mul_term(fp, &m, c))?;
        }
        q.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: q,
        })
    }

    /// Divide out the largest common monomial factor of all terms.
    pub fn strip_monomial_content(&self) -> Polynomial {
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut g = self.terms[0].0.clone();
        for (m, _) in &self.terms[1..] {
            g = g.gcd(m);
            if g.is_one() {
                return self.clone();
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (g.div(m), *c))
                .collect(),
        }
    }

    /// Canonical text form: terms in descending grevlex, least non-negative
    /// residue coefficients.
    pub fn print(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let mut factors = Vec::new();
            for v in 0..m.nvars() {
                let e = m.exp(v);
                if e == 1 {
                    factors.push(self.ring.vars()[v].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.vars()[v], e));
                }
            }
            if factors.is_empty() {
                write!(s, "{c}").unwrap();
            } else if *c == 1 {
                write!(s, "{}", factors.join("*")).unwrap();
            } else {
                write!(s, "{}*{}", c, factors.join("*")).unwrap();
            }
        }
        s
    }
}

/// Linear change of coordinates: images of variables are linear forms given by
/// the rows of `mat` (var_i maps to sum_j mat[i][j] * var_j).
pub fn linear_substitution(
    fp: &Fp,
    f: &Polynomial,
    mat: &[Vec<u64>],
) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let images: Vec<Polynomial> = mat
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                &ring,
                fp,
                row.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (Monomial::var(ring.nvars(), j, 1), c))
                    .collect(),
            )
        })
        .collect();
    f.substitute(fp, &ring, &images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> RingRef {
        Ring::indexed("s", 4)
    }

    #[test]
    fn product_of_sum_and_difference() {
        let fp = Fp::default();
        let r = p3();
        let s0 = Polynomial::variable(&r, 0);
        let s1 = Polynomial::variable(&r, 1);
        let sum = s0.add(&fp, &s1).unwrap();
        let diff = s0.sub(&fp, &s1).unwrap();
        let prod = sum.mul(&fp, &diff).unwrap();
        let expect = s0
            .mul(&fp, &s0)
            .unwrap()
            .sub(&fp, &s1.mul(&fp, &s1).unwrap())
            .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn multiply_by_zero() {
        let fp = Fp::default();
        let r = p3();
        let f = Polynomial::variable(&r, 0);
        let z = Polynomial::zero(&r);
        assert!(f.mul(&fp, &z).unwrap().is_zero());
    }

    #[test]
    fn derivative_of_quartic_monomial() {
        let fp = Fp::default();
        let r = p3();
        // d/ds3 (s0 s1 s2 s3) = s0 s1 s2
        let f = Polynomial::monomial(&r, Monomial::from_exps(&[1, 1, 1, 1]), 1);
        let d = f.partial_derivative(&fp, 3);
        assert_eq!(d, Polynomial::monomial(&r, Monomial::from_exps(&[1, 1, 1, 0]), 1));
        // d/ds0 (s0^2 s1^2 s2^2) = 2 s0 s1^2 s2^2
        let g = Polynomial::monomial(&r, Monomial::from_exps(&[2, 2, 2, 0]), 1);
        let dg = g.partial_derivative(&fp, 0);
        assert_eq!(dg, Polynomial::monomial(&r, Monomial::from_exps(&[1, 2, 2, 0]), 2));
    }

    #[test]
    fn euler_identity_on_random_homogeneous() {
        use rand::{Rng, SeedableRng};
        let fp = Fp::default();
        let r = p3();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..10 {
            let monos = crate::monomial::monomials_of_degree(4, 6);
            let f = Polynomial::from_terms(
                &r,
                &fp,
                monos
                    .iter()
                    .map(|m| (m.clone(), rng.gen_range(0..fp.modulus())))
                    .collect(),
            );
            let mut acc = Polynomial::zero(&r);
            for i in 0..4 {
                let si = Polynomial::variable(&r, i);
                acc = acc
                    .add(&fp, &si.mul(&fp, &f.partial_derivative(&fp, i)).unwrap())
                    .unwrap();
            }
            assert_eq!(acc, f.scale(&fp, 6));
        }
    }

    #[test]
    fn dehomogenize_monomial() {
        let fp = Fp::default();
        let r = p3();
        let f = Polynomial::monomial(&r, Monomial::from_exps(&[1, 1, 1, 1]), 1);
        let g = f.substitute_var_one(&fp, 3);
        assert_eq!(g, Polynomial::monomial(&r, Monomial::from_exps(&[1, 1, 1, 0]), 1));
    }

    #[test]
    fn substitute_and_back() {
        let fp = Fp::default();
        let r = p3();
        // shift s2 -> s2 - s3 and back
        let fwd: Vec<Vec<u64>> = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, fp.neg(1)],
            vec![0, 0, 0, 1],
        ];
        let bwd: Vec<Vec<u64>> = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 1],
        ];
        let monos = crate::monomial::monomials_of_degree(4, 3);
        let f = Polynomial::from_terms(
            &r,
            &fp,
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i as u64 + 1)).collect(),
        );
        let g = linear_substitution(&fp, &f, &fwd).unwrap();
        let h = linear_substitution(&fp, &g, &bwd).unwrap();
        assert_eq!(f, h);
    }

    #[test]
    fn exact_division() {
        let fp = Fp::default();
        let r = p3();
        let s0 = Polynomial::variable(&r, 0);
        let s1 = Polynomial::variable(&r, 1);
        let f = s0.add(&fp, &s1).unwrap();
        let g = s0.sub(&fp, &s1).unwrap();
        let prod = f.mul(&fp, &g).unwrap();
        assert_eq!(prod.div_exact(&fp, &g).unwrap(), f);
        assert!(prod.div_exact(&fp, &s0).is_err());
    }
}

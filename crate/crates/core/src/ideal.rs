//! Ideals: generator lists in a named ring, with a per-order cache of reduced
//! Groebner bases. The cache slot is guarded so concurrent readers either find
//! the finished basis or compute independently and the first result wins.

use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::gb::{self, EngineLimits, GbPoly};
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring, RingRef};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    ring: RingRef,
    elems: Vec<GbPoly>,
    polys: OnceLock<Vec<Polynomial>>,
}

impl GroebnerBasis {
    pub fn elems(&self) -> &[GbPoly] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis elements as canonical polynomials.
    pub fn polys(&self, fp: &Fp) -> &[Polynomial] {
        self.polys.get_or_init(|| {
            self.elems
                .iter()
                .map(|e| gb::engine_to_poly(fp, &self.ring, e))
                .collect()
        })
    }

    /// Full normal form of a polynomial.
    pub fn normal_form(&self, fp: &Fp, f: &Polynomial) -> Polynomial {
        let e = gb::poly_to_engine(&self.order, f);
        let r = gb::reduce_full(fp, &self.order, &self.elems, e);
        gb::engine_to_poly(fp, &self.ring, &r)
    }

    pub fn reduces_to_zero(&self, fp: &Fp, f: &Polynomial) -> bool {
        let e = gb::poly_to_engine(&self.order, f);
        gb::reduce_full(fp, &self.order, &self.elems, e).is_zero()
    }

    /// Unit ideal: basis is {1}.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].lm().is_one()
    }
}

#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Arc<Vec<Polynomial>>,
    cache: Arc<Mutex<HashMap<String, Arc<GroebnerBasis>>>>,
    limits: EngineLimits,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Ideal {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens: Arc::new(gens),
            cache: Arc::new(Mutex::new(HashMap::new())),
            limits: EngineLimits::default(),
        }
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![])
    }

    pub fn with_limits(mut self, limits: EngineLimits) -> Ideal {
        self.limits = limits;
        self
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Sum of two ideals (concatenate generators); M2's `I + J`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring.vars() != other.ring.vars() {
            return Err(CasError::RingMismatch(
                self.ring.describe(),
                other.ring.describe(),
            ));
        }
        let mut gens = self.gens.as_ref().clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn push(&self, f: Polynomial) -> Ideal {
        let mut gens = self.gens.as_ref().clone();
        gens.push(f);
        Ideal::new(&self.ring, gens)
    }

    /// Reduced Groebner basis for the order, cached.
    pub fn groebner(&self, fp: &Fp, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        let key = order.key();
        if let Some(g) = self.cache.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let elems = gb::groebner_engine(fp, order, &self.gens, self.limits)?;
        let basis = Arc::new(GroebnerBasis {
            order: order.clone(),
            ring: self.ring.clone(),
            elems,
            polys: OnceLock::new(),
        });
        let mut c = self.cache.lock().unwrap();
        Ok(c.entry(key).or_insert(basis).clone())
    }

    pub fn gb(&self, fp: &Fp) -> Result<Arc<GroebnerBasis>> {
        self.groebner(fp, &MonomialOrder::Grevlex)
    }

    pub fn normal_form(&self, fp: &Fp, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.gb(fp)?.normal_form(fp, f))
    }

    /// f lies in the ideal.
    pub fn contains_poly(&self, fp: &Fp, f: &Polynomial) -> Result<bool> {
        Ok(self.gb(fp)?.reduces_to_zero(fp, f))
    }

    /// Every generator of `other` lies in `self` (ideal containment
    /// self >= other, i.e. V(self) is inside V(other)... directionality: this
    /// returns `other subset-of self` as ideals).
    pub fn contains_ideal(&self, fp: &Fp, other: &Ideal) -> Result<bool> {
        let g = self.gb(fp)?;
        Ok(other.gens.iter().all(|f| g.reduces_to_zero(fp, f)))
    }

    pub fn ideal_eq(&self, fp: &Fp, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(fp, other)? && other.contains_ideal(fp, self)?)
    }

    pub fn is_unit(&self, fp: &Fp) -> Result<bool> {
        Ok(self.gb(fp)?.is_unit())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Ideal in a fresh ring with identical variable names (drops caches).
    pub fn rebase(&self, ring: &RingRef) -> Ideal {
        assert_eq!(self.ring.vars(), ring.vars());
        Ideal::new(ring, self.gens.as_ref().clone())
    }
}

/// Convenience: build the ideal of the given generators parsed from text.
pub fn ideal_from_texts(fp: &Fp, ring: &RingRef, texts: &[&str]) -> Result<Ideal> {
    let gens = texts
        .iter()
        .map(|t| crate::parse::parse_poly(fp, ring, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, gens))
}

/// The irrelevant maximal ideal (all variables).
pub fn irrelevant_ideal(ring: &RingRef) -> Ideal {
    let gens = (0..ring.nvars())
        .map(|i| Polynomial::variable(ring, i))
        .collect();
    Ideal::new(ring, gens)
}

/// Ring for projective space P^n over base name.
pub fn projective_ring(name: &str, dim_plus_one: usize) -> RingRef {
    Ring::indexed(name, dim_plus_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_in_principal_ideal() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let i = ideal_from_texts(&fp, &r, &["s_0"]).unwrap();
        let f = crate::parse::parse_poly(&fp, &r, "s_0").unwrap();
        assert!(i.contains_poly(&fp, &f).unwrap());
        assert_eq!(i.normal_form(&fp, &f).unwrap().print(), "0");
        let g = crate::parse::parse_poly(&fp, &r, "s_1").unwrap();
        assert!(!i.contains_poly(&fp, &g).unwrap());
    }

    #[test]
    fn resource_caps_error_out() {
        use crate::gb::EngineLimits;
        let fp = Fp::default();
        let r = Ring::indexed("x", 3);
        let i = ideal_from_texts(
            &fp,
            &r,
            &["x_0^2 + x_1*x_2", "x_1^3 - x_0*x_2^2", "x_2^4 - x_0*x_1^3"],
        )
        .unwrap()
        .with_limits(EngineLimits {
            max_sugar: Some(2),
            max_basis: None,
        });
        match i.gb(&fp) {
            Err(crate::CasError::ResourceLimit(_)) => {}
            other => panic!("expected a resource-limit error, got {other:?}"),
        }
    }

    #[test]
    fn generator_order_independence() {
        let fp = Fp::default();
        let r = Ring::indexed("x", 3);
        let a = ideal_from_texts(&fp, &r, &["x_0^2 - x_1", "x_1*x_2 - 1", "x_0 + x_2"]).unwrap();
        let b = ideal_from_texts(&fp, &r, &["x_1*x_2 - 1", "x_0 + x_2", "x_0^2 - x_1"]).unwrap();
        assert!(a.ideal_eq(&fp, &b).unwrap());
    }
}

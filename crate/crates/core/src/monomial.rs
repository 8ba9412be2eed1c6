//! Monomials with fixed-width exponents and the monomial orders used by the
//! engine: grevlex, lex, block elimination, and weighted orders.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::sync::Arc;

/// Exponent vector; one entry per ring variable. Degrees in this project stay
/// far below 255 so `u8` exponents are enough and keep comparisons cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u8; 20]>,
    deg: u16,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        let deg = exps.iter().map(|&e| e as u16).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u8) -> Self {
        let mut m = Monomial::one(nvars);
        m.set(i, e);
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u16 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn set(&mut self, i: usize, e: u8) {
        self.deg = self.deg - self.exps[i] as u16 + e as u16;
        self.exps[i] = e;
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = self.exps.clone();
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: SmallVec<[u8; 20]> = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u8; 20]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u16).sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u8; 20]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u16).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Degree within the variable range [lo, hi).
    pub fn degree_in(&self, lo: usize, hi: usize) -> u16 {
        self.exps[lo..hi].iter().map(|&e| e as u16).sum()
    }

    /// True when no variable in [0, k) appears.
    pub fn free_of_first(&self, k: usize) -> bool {
        self.exps[..k].iter().all(|&e| e == 0)
    }

    /// Drop the first k variables (caller guarantees they do not appear).
    pub fn strip_first(&self, k: usize) -> Monomial {
        debug_assert!(self.free_of_first(k));
        Monomial::from_exps(&self.exps[k..])
    }

    /// Prepend k zero exponents.
    pub fn prepend_zeros(&self, k: usize) -> Monomial {
        let mut exps = SmallVec::from_elem(0u8, k);
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            deg: self.deg,
        }
    }

    /// Append k zero exponents.
    pub fn append_zeros(&self, k: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0u8, k));
        Monomial {
            exps,
            deg: self.deg,
        }
    }
}

/// Weighted order data: successive weight vectors compared in turn, with a
/// final grevlex tiebreak.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedOrder {
    pub weights: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Block elimination order: the first k variables form the elimination
    /// block; grevlex inside each block. Any monomial containing one of the
    /// first k variables ranks above any monomial free of them.
    Block(usize),
    Weighted(Arc<WeightedOrder>),
}

impl MonomialOrder {
    /// Degree-dominant order used for tangent cones, for a ring whose *last*
    /// variable is the homogenizing one: total degree first, then the last
    /// variable's exponent, then grevlex.
    pub fn cone_order(nvars: usize) -> MonomialOrder {
        let mut w = vec![0i64; nvars];
        w[nvars - 1] = 1;
        MonomialOrder::Weighted(Arc::new(WeightedOrder {
            weights: vec![vec![1; nvars], w],
        }))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_cmp(a.exps(), b.exps(), a.deg, b.deg),
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Block(k) => {
                let (k, n) = (*k, a.nvars());
                let da = a.degree_in(0, k);
                let db = b.degree_in(0, k);
                match grevlex_cmp(&a.exps()[..k], &b.exps()[..k], da, db) {
                    Ordering::Equal => grevlex_cmp(
                        &a.exps()[k..],
                        &b.exps()[k..],
                        a.deg - da,
                        b.deg - db,
                    ),
                    o => o,
                }
                .then_with(|| debug_unreachable_eq(n))
            }
            MonomialOrder::Weighted(w) => {
                for wv in &w.weights {
                    let sa: i64 = a
                        .exps()
                        .iter()
                        .zip(wv.iter())
                        .map(|(&e, &w)| e as i64 * w)
                        .sum();
                    let sb: i64 = b
                        .exps()
                        .iter()
                        .zip(wv.iter())
                        .map(|(&e, &w)| e as i64 * w)
                        .sum();
                    match sa.cmp(&sb) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                grevlex_cmp(a.exps(), b.exps(), a.deg, b.deg)
            }
        }
    }

    /// True when this order has the elimination property for the first k vars.
    pub fn eliminates(&self, k: usize) -> bool {
        match self {
            MonomialOrder::Lex => true,
            MonomialOrder::Block(b) => *b >= k,
            _ => k == 0,
        }
    }

    /// Stable cache key.
    pub fn key(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(k) => format!("block{k}"),
            MonomialOrder::Weighted(w) => format!("weighted{:?}", w.weights),
        }
    }
}

#[inline]
fn debug_unreachable_eq(_n: usize) -> Ordering {
    Ordering::Equal
}

#[inline]
fn grevlex_cmp(a: &[u8], b: &[u8], da: u16, db: u16) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => {}
                    // larger exponent in the rightmost differing slot = smaller
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

/// All monomials of the given total degree, in a fixed deterministic order
/// (descending grevlex).
pub fn monomials_of_degree(nvars: usize, d: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; nvars];
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u8>, i: usize, rem: u16) {
        if i + 1 == cur.len() {
            cur[i] = rem as u8;
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in (0..=rem).rev() {
            cur[i] = e as u8;
            rec(out, cur, i + 1, rem - e);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, d);
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
    out
}

//! Hilbert series of homogeneous ideals via the leading-term monomial ideal:
//! numerator by pivot recursion, then projective dimension, degree, Hilbert
//! polynomial and arithmetic genus for curves.

use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    /// numerator of H_{R/I}(t) over (1-t)^nvars
    pub numerator: Vec<i64>,
    /// numerator after cancelling all (1-t) factors
    pub reduced: Vec<i64>,
    pub nvars: usize,
    /// Krull dimension of R/I (pole order at t=1)
    pub affine_dim: usize,
    /// affine_dim - 1; -1 means the projective scheme is empty
    pub proj_dim: i64,
    /// reduced numerator at t=1 (projective degree when proj_dim >= 0)
    pub degree: i64,
}

impl HilbertData {
    /// Value of the Hilbert polynomial at j (polynomial extension, any j).
    pub fn hilbert_polynomial_at(&self, j: i64) -> i64 {
        let d = self.affine_dim;
        if d == 0 {
            return 0;
        }
        let mut acc: i128 = 0;
        for (i, &c) in self.reduced.iter().enumerate() {
            if c != 0 {
                acc += c as i128 * binom_poly(j - i as i64 + d as i64 - 1, d - 1);
            }
        }
        acc as i64
    }

    /// Value of the Hilbert function at degree j >= 0.
    pub fn hilbert_function_at(&self, j: i64) -> i64 {
        let n = self.nvars;
        let mut acc: i128 = 0;
        for (i, &c) in self.numerator.iter().enumerate() {
            let top = j - i as i64 + n as i64 - 1;
            if c != 0 && top >= n as i64 - 1 {
                acc += c as i128 * binom_poly(top, n - 1);
            }
        }
        acc as i64
    }

    /// Arithmetic genus; only defined for curves (projective dimension 1).
    pub fn curve_genus(&self) -> Result<i64> {
        if self.proj_dim != 1 {
            return Err(CasError::NotACurve(self.proj_dim));
        }
        Ok(1 - self.hilbert_polynomial_at(0))
    }

    pub fn dim_deg(&self) -> (i64, i64) {
        (self.proj_dim, self.degree)
    }
}

/// Extended binomial coefficient: the polynomial x(x-1)...(x-k+1)/k! at x=n.
fn binom_poly(n: i64, k: usize) -> i128 {
    let mut num: i128 = 1;
    for t in 0..k as i64 {
        num *= (n - t) as i128;
    }
    let mut den: i128 = 1;
    for t in 1..=k as i128 {
        den *= t;
    }
    num / den
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut keep: Vec<Monomial> = Vec::with_capacity(gens.len());
    'outer: for m in gens.iter() {
        for k in &keep {
            if k.divides(m) {
                continue 'outer;
            }
        }
        keep.push(m.clone());
    }
    *gens = keep;
}

fn key_of(gens: &[Monomial]) -> Vec<u8> {
    let mut k = Vec::with_capacity(gens.len() * (gens.first().map(|m| m.nvars()).unwrap_or(0) + 1));
    for m in gens {
        k.extend_from_slice(m.exps());
        k.push(255);
    }
    k
}

fn poly_sub_shift(a: &mut Vec<i64>, b: &[i64], shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += sign * c;
    }
}

/// Numerator of the Hilbert series of R/I for a monomial ideal I.
///
/// The pivot recursion can get deep on large staircases, so it runs on a
/// dedicated thread with a generous stack.
pub fn monomial_numerator(nvars: usize, gens: Vec<Monomial>) -> Vec<i64> {
    std::thread::Builder::new()
        .stack_size(512 * 1024 * 1024)
        .spawn(move || monomial_numerator_inner(nvars, gens))
        .expect("spawn hilbert worker")
        .join()
        .expect("hilbert worker")
}

fn monomial_numerator_inner(nvars: usize, gens: Vec<Monomial>) -> Vec<i64> {
    let mut memo: HashMap<Vec<u8>, Vec<i64>> = HashMap::new();
    fn rec(
        nvars: usize,
        mut gens: Vec<Monomial>,
        memo: &mut HashMap<Vec<u8>, Vec<i64>>,
    ) -> Vec<i64> {
        minimalize(&mut gens);
        if gens.is_empty() {
            return vec![1];
        }
        if gens.iter().any(|m| m.is_one()) {
            return vec![0];
        }
        // pure powers in pairwise different variables: product formula
        let pure = gens.iter().all(|m| {
            (0..m.nvars()).filter(|&i| m.exp(i) > 0).count() == 1
        });
        if pure {
            let mut seen = vec![false; nvars];
            let mut disjoint = true;
            for m in &gens {
                let v = (0..m.nvars()).find(|&i| m.exp(i) > 0).unwrap();
                if seen[v] {
                    disjoint = false;
                    break;
                }
                seen[v] = true;
            }
            if disjoint {
                let mut acc = vec![1i64];
                for m in &gens {
                    let mut next = acc.clone();
                    poly_sub_shift(&mut next, &acc, m.degree() as usize, -1);
                    acc = next;
                }
                return acc;
            }
        }
        let key = key_of(&gens);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        // pivot: most frequent variable among those appearing in some
        // non-pure-power generator (guarantees both branches shrink),
        // with the minimum exponent among its users
        let mut freq = vec![0usize; nvars];
        let mut eligible = vec![false; nvars];
        for m in &gens {
            let support: Vec<usize> = (0..nvars).filter(|&i| m.exp(i) > 0).collect();
            for &i in &support {
                freq[i] += 1;
                if support.len() > 1 {
                    eligible[i] = true;
                }
            }
        }
        let pv = (0..nvars)
            .filter(|&i| eligible[i])
            .max_by_key(|&i| freq[i])
            .expect("non-pure generator exists past the base case");
        let pe = gens
            .iter()
            .filter(|m| m.exp(pv) > 0)
            .map(|m| m.exp(pv))
            .min()
            .unwrap();
        let pivot = Monomial::var(nvars, pv, pe);
        // N(I) = N(I + pivot) + t^deg(pivot) * N(I : pivot)
        let mut plus = gens.clone();
        plus.push(pivot.clone());
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|m| {
                let mut mm = m.clone();
                let e = mm.exp(pv);
                mm.set(pv, e.saturating_sub(pe));
                mm
            })
            .collect();
        let n_plus = rec(nvars, plus, memo);
        let n_colon = rec(nvars, colon, memo);
        let mut out = n_plus;
        poly_sub_shift(&mut out, &n_colon, pe as usize, 1);
        memo.insert(key, out.clone());
        out
    }
    rec(nvars, gens, &mut memo)
}

/// Hilbert data of a homogeneous ideal (from its grevlex basis leading terms).
pub fn hilbert(fp: &Fp, ideal: &Ideal) -> Result<HilbertData> {
    if !ideal.is_homogeneous() {
        return Err(CasError::NotHomogeneous(
            "hilbert needs homogeneous generators".into(),
        ));
    }
    let gbas = ideal.gb(fp)?;
    let lts: Vec<Monomial> = gbas.elems().iter().map(|e| e.lm().clone()).collect();
    let nvars = ideal.ring().nvars();
    Ok(hilbert_of_leading_terms(nvars, lts))
}

pub fn hilbert_of_leading_terms(nvars: usize, lts: Vec<Monomial>) -> HilbertData {
    let numerator = monomial_numerator(nvars, lts);
    let mut reduced = trim(numerator.clone());
    let mut cancelled = 0usize;
    while !reduced.is_empty() && reduced.iter().sum::<i64>() == 0 {
        // divide by (1 - t): prefix sums
        let mut q = vec![0i64; reduced.len().saturating_sub(1)];
        let mut acc = 0i64;
        for i in 0..q.len() {
            acc += reduced[i];
            q[i] = acc;
        }
        reduced = trim(q);
        cancelled += 1;
    }
    if reduced.is_empty() {
        reduced = vec![0];
    }
    let affine_dim = nvars - cancelled;
    let degree = reduced.iter().sum::<i64>();
    HilbertData {
        numerator: trim(numerator),
        reduced,
        nvars,
        affine_dim,
        proj_dim: affine_dim as i64 - 1,
        degree,
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Projective (dim, degree) convenience.
pub fn dim_deg(fp: &Fp, ideal: &Ideal) -> Result<(i64, i64)> {
    Ok(hilbert(fp, ideal)?.dim_deg())
}

/// Projective (dim, degree, genus) for curves.
pub fn dim_deg_genus(fp: &Fp, ideal: &Ideal) -> Result<(i64, i64, i64)> {
    let h = hilbert(fp, ideal)?;
    let g = h.curve_genus()?;
    Ok((h.proj_dim, h.degree, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_from_texts;
    use crate::poly::Ring;

    #[test]
    fn principal_sextic_hypersurface() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        // an irreducible-enough sextic: dim 2, degree 6 regardless of smoothness
        let i = ideal_from_texts(&fp, &r, &["s_0^6 + s_1^6 + s_2^6 + s_3^6 + s_0*s_1*s_2*s_3*s_0*s_1"]).unwrap();
        let h = hilbert(&fp, &i).unwrap();
        assert_eq!(h.dim_deg(), (2, 6));
    }

    #[test]
    fn monomial_ideal_closed_form() {
        let fp = Fp::default();
        let r = Ring::indexed("x", 3);
        let i = ideal_from_texts(&fp, &r, &["x_0^2*x_1"]).unwrap();
        let h = hilbert(&fp, &i).unwrap();
        assert_eq!(h.dim_deg(), (1, 3));
        // numerator should be 1 - t^3
        assert_eq!(h.numerator, vec![1, 0, 0, -1]);
    }

    #[test]
    fn twisted_cubic_dim_deg_genus() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let i = ideal_from_texts(
            &fp,
            &r,
            &["s_1^2 - s_0*s_2", "s_1*s_2 - s_0*s_3", "s_2^2 - s_1*s_3"],
        )
        .unwrap();
        assert_eq!(dim_deg_genus(&fp, &i).unwrap(), (1, 3, 0));
    }

    #[test]
    fn plane_elliptic_cubic_genus_one() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let i = ideal_from_texts(
            &fp,
            &r,
            &[
                "s_0 + s_1 + s_2 + s_3",
                "s_1^2*s_2 + s_1*s_2^2 + s_1^2*s_3 + s_1*s_2*s_3 + s_2^2*s_3 + s_1*s_3^2 + s_2*s_3^2",
            ],
        )
        .unwrap();
        assert_eq!(dim_deg_genus(&fp, &i).unwrap(), (1, 3, 1));
    }

    #[test]
    fn point_and_empty() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let pt = ideal_from_texts(&fp, &r, &["s_0", "s_1", "s_2"]).unwrap();
        assert_eq!(dim_deg(&fp, &pt).unwrap(), (0, 1));
        let empty = ideal_from_texts(&fp, &r, &["s_0", "s_1", "s_2", "s_3"]).unwrap();
        let h = hilbert(&fp, &empty).unwrap();
        assert_eq!(h.proj_dim, -1);
    }

    #[test]
    fn genus_rejects_non_curves() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let i = ideal_from_texts(&fp, &r, &["s_0"]).unwrap();
        assert!(hilbert(&fp, &i).unwrap().curve_genus().is_err());
    }
}

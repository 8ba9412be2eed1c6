//! Graded pieces of homogeneous ideals, linear systems with multiplicity
//! conditions, vanishing-order tests, and decomposition verification.

use crate::elim;
use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::hilbert;
use crate::ideal::Ideal;
use crate::linalg::{reduced_span, Matrix};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{Polynomial, RingRef};
use std::collections::HashMap;

/// Basis of the degree-d part of the ideal generated by the given generators:
/// the span of all monomial multiples m*g with deg(m*g) = d, returned as a
/// canonical row-reduced basis.
pub fn graded_piece(fp: &Fp, ideal: &Ideal, d: u16) -> Result<Vec<Polynomial>> {
    if !ideal.is_homogeneous() {
        return Err(CasError::NotHomogeneous("graded_piece".into()));
    }
    let ring = ideal.ring();
    let cols = monomials_of_degree(ring.nvars(), d);
    let col_of: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in ideal.generators() {
        let gd = g.degree();
        if gd > d || g.is_zero() {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), d - gd) {
            let prod = g.mul_term(fp, &m, 1);
            let mut row = vec![0u64; cols.len()];
            for (mm, c) in prod.terms() {
                row[col_of[mm]] = *c;
            }
            rows.push(row);
        }
    }
    let basis = reduced_span(fp, rows, cols.len());
    Ok(rows_to_polys(fp, ring, &cols, &basis))
}

pub fn rows_to_polys(
    fp: &Fp,
    ring: &RingRef,
    cols: &[Monomial],
    rows: &[Vec<u64>],
) -> Vec<Polynomial> {
    rows.iter()
        .map(|row| {
            Polynomial::from_terms(
                ring,
                fp,
                row.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (cols[i].clone(), c))
                    .collect(),
            )
        })
        .collect()
}

/// Linear system of degree-d forms vanishing on each scheme with the given
/// multiplicity: m=1 means f in I(Z); m=2 additionally all first partials
/// in I(Z) (order-2 vanishing along a smooth locus).
pub fn linear_system(
    fp: &Fp,
    ring: &RingRef,
    conditions: &[(Ideal, u8)],
    d: u16,
) -> Result<Vec<Polynomial>> {
    let cols = monomials_of_degree(ring.nvars(), d);
    // constraint rows are indexed by (condition, derivative slot, residue monomial)
    let mut row_index: HashMap<(usize, usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, u64)> = Vec::new();
    for (ci, (z, mult)) in conditions.iter().enumerate() {
        if !z.is_homogeneous() {
            return Err(CasError::NotHomogeneous("linear_system condition".into()));
        }
        let gb = z.gb(fp)?;
        let slots: usize = if *mult >= 2 { 1 + ring.nvars() } else { 1 };
        for (j, mono) in cols.iter().enumerate() {
            let f = Polynomial::monomial(ring, mono.clone(), 1);
            for slot in 0..slots {
                let g = if slot == 0 {
                    f.clone()
                } else {
                    f.partial_derivative(fp, slot - 1)
                };
                if g.is_zero() {
                    continue;
                }
                let nf = gb.normal_form(fp, &g);
                for (m, c) in nf.terms() {
                    let next = row_index.len();
                    let r = *row_index
                        .entry((ci, slot, m.clone()))
                        .or_insert(next);
                    entries.push((r, j, *c));
                }
            }
        }
    }
    let nrows = row_index.len();
    let mut mat = Matrix::zero(nrows, cols.len());
    for (r, c, v) in entries {
        mat[(r, c)] = v;
    }
    let (_res, kernel) = mat.rref_with_kernel(fp);
    // canonicalize the kernel basis
    let basis = reduced_span(fp, kernel, cols.len());
    Ok(rows_to_polys(fp, ring, &cols, &basis))
}

/// True when f vanishes along Z to order m (f and all partials of order < m
/// lie in I(Z)); m in {2, 3} in this project.
pub fn vanishes_to_order(fp: &Fp, f: &Polynomial, z: &Ideal, m: u8) -> Result<bool> {
    let gb = z.gb(fp)?;
    if !gb.reduces_to_zero(fp, f) {
        return Ok(false);
    }
    if m >= 2 {
        for i in 0..f.ring().nvars() {
            let d = f.partial_derivative(fp, i);
            if !gb.reduces_to_zero(fp, &d) {
                return Ok(false);
            }
        }
    }
    if m >= 3 {
        for i in 0..f.ring().nvars() {
            let di = f.partial_derivative(fp, i);
            for j in i..f.ring().nvars() {
                let dij = di.partial_derivative(fp, j);
                if !gb.reduces_to_zero(fp, &dij) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    /// every component K satisfies I subset-of K (so V(K) subset-of V(I))
    pub all_contained: bool,
    pub failed_components: Vec<usize>,
    /// saturate(I, intersection of components)
    pub residual: Ideal,
    /// None when the residual is the unit ideal (decomposition exhaustive)
    pub residual_dim_deg: Option<(i64, i64)>,
}

/// Check a claimed decomposition: every component contains I, and report the
/// residual of I after saturating away all components.
pub fn verify_decomposition(
    fp: &Fp,
    ideal: &Ideal,
    components: &[Ideal],
) -> Result<DecompositionReport> {
    let mut failed = Vec::new();
    for (i, k) in components.iter().enumerate() {
        if !k.contains_ideal(fp, ideal)? {
            failed.push(i);
        }
    }
    let inter = elim::intersect_many(fp, components)?;
    let residual = elim::saturate_ideal(fp, ideal, &inter)?;
    let residual_dim_deg = if residual.is_unit(fp)? {
        None
    } else {
        Some(hilbert::dim_deg(fp, &residual)?)
    };
    Ok(DecompositionReport {
        all_contained: failed.is_empty(),
        failed_components: failed,
        residual,
        residual_dim_deg,
    })
}

/// Intersection of the spans of two sets of same-degree forms.
pub fn span_intersection(
    fp: &Fp,
    ring: &RingRef,
    a: &[Polynomial],
    b: &[Polynomial],
    d: u16,
) -> Vec<Polynomial> {
    let cols = monomials_of_degree(ring.nvars(), d);
    let col_of: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let to_row = |f: &Polynomial| {
        let mut row = vec![0u64; cols.len()];
        for (m, c) in f.terms() {
            row[col_of[m]] = *c;
        }
        row
    };
    // intersection via kernel of stacked coordinates: vectors x with
    // x = A^T u = B^T v; solve [A^T | -B^T] kernel and read off A^T u.
    let na = a.len();
    let nb = b.len();
    let mut mat = Matrix::zero(cols.len(), na + nb);
    for (j, f) in a.iter().enumerate() {
        let row = to_row(f);
        for (i, &c) in row.iter().enumerate() {
            mat[(i, j)] = c;
        }
    }
    for (j, f) in b.iter().enumerate() {
        let row = to_row(f);
        for (i, &c) in row.iter().enumerate() {
            mat[(i, na + j)] = fp.neg(c);
        }
    }
    let (_r, kernel) = mat.rref_with_kernel(fp);
    let mut rows = Vec::new();
    for v in kernel {
        let mut row = vec![0u64; cols.len()];
        for (j, f) in a.iter().enumerate() {
            if v[j] == 0 {
                continue;
            }
            for (m, c) in f.terms() {
                let i = col_of[m];
                row[i] = fp.add(row[i], fp.mul(v[j], *c));
            }
        }
        if row.iter().any(|&c| c != 0) {
            rows.push(row);
        }
    }
    let basis = reduced_span(fp, rows, cols.len());
    rows_to_polys(fp, ring, &cols, &basis)
}

/// True when f lies in the linear span of the given same-degree forms.
pub fn in_span(fp: &Fp, ring: &RingRef, span: &[Polynomial], f: &Polynomial) -> bool {
    let d = f.degree();
    let cols = monomials_of_degree(ring.nvars(), d);
    let col_of: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in span {
        if g.degree() != d || g.is_zero() {
            continue;
        }
        let mut row = vec![0u64; cols.len()];
        for (m, c) in g.terms() {
            row[col_of[m]] = *c;
        }
        rows.push(row);
    }
    let rank_without = reduced_span(fp, rows.clone(), cols.len()).len();
    let mut row = vec![0u64; cols.len()];
    for (m, c) in f.terms() {
        row[col_of[m]] = *c;
    }
    rows.push(row);
    let rank_with = reduced_span(fp, rows, cols.len()).len();
    rank_without == rank_with
}

/// Two sets of same-degree forms span the same space.
pub fn same_span(fp: &Fp, ring: &RingRef, a: &[Polynomial], b: &[Polynomial]) -> bool {
    a.iter().all(|f| in_span(fp, ring, b, f)) && b.iter().all(|f| in_span(fp, ring, a, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_from_texts;
    use crate::poly::Ring;

    #[test]
    fn degree_one_piece_of_two_point_ideal() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let p = ideal_from_texts(&fp, &r, &["s_1", "s_2", "s_3"]).unwrap();
        let q = ideal_from_texts(&fp, &r, &["s_0", "s_2", "s_3"]).unwrap();
        let two = elim::intersect(&fp, &p, &q).unwrap();
        let piece = graded_piece(&fp, &two, 1).unwrap();
        assert_eq!(piece.len(), 2);
    }

    #[test]
    fn square_does_not_vanish_on_other_line() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let z = ideal_from_texts(&fp, &r, &["s_1"]).unwrap();
        let f = crate::parse::parse_poly(&fp, &r, "s_0^2").unwrap();
        assert!(!vanishes_to_order(&fp, &f, &z, 2).unwrap());
        let g = crate::parse::parse_poly(&fp, &r, "s_1^2").unwrap();
        assert!(vanishes_to_order(&fp, &g, &z, 2).unwrap());
    }

    #[test]
    fn trivial_decomposition() {
        let fp = Fp::default();
        let r = Ring::indexed("x", 3);
        let i = ideal_from_texts(&fp, &r, &["x_0*x_1"]).unwrap();
        let c0 = ideal_from_texts(&fp, &r, &["x_0"]).unwrap();
        let c1 = ideal_from_texts(&fp, &r, &["x_1"]).unwrap();
        let rep = verify_decomposition(&fp, &i, &[c0, c1]).unwrap();
        assert!(rep.all_contained);
        assert!(rep.residual_dim_deg.is_none());
    }

    #[test]
    fn graded_piece_monotone() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let i = ideal_from_texts(&fp, &r, &["s_0*s_1 - s_2^2", "s_0^3"]).unwrap();
        let mut prev = 0;
        for d in 2..7 {
            let dim = graded_piece(&fp, &i, d).unwrap().len();
            assert!(dim >= prev);
            prev = dim;
        }
    }
}

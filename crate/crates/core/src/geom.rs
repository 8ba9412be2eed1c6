//! Projective geometry on top of the Groebner engine: rational maps, images
//! (exact elimination and degree-wise relation hunting), pullbacks, images of
//! subvarieties, linear spans, lines through points, tangent cones and
//! singular loci.

use crate::elim;
use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::graded;
use crate::hilbert::{self, HilbertData};
use crate::ideal::Ideal;
use crate::linalg::{reduced_span, Matrix};
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring, RingRef};
use rand::Rng;
use std::collections::HashMap;

// ---------------------------------------------------------------- points

#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    coords: Vec<u64>,
}

impl ProjectivePoint {
    pub fn new(fp: &Fp, coords: Vec<u64>) -> Result<Self> {
        let coords: Vec<u64> = coords.into_iter().map(|c| fp.reduce_u64(c)).collect();
        if coords.iter().all(|&c| c == 0) {
            return Err(CasError::Geometry("zero vector is not a point".into()));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(fp: &Fp, coords: &[i64]) -> Result<Self> {
        ProjectivePoint::new(fp, coords.iter().map(|&c| fp.reduce_i64(c)).collect())
    }

    /// Coordinate point e_i in P^{n-1}.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len()
    }

    /// Scale so the first nonzero coordinate is 1.
    pub fn normalized(&self, fp: &Fp) -> ProjectivePoint {
        let k = self.coords.iter().position(|&c| c != 0).unwrap();
        let inv = fp.inv(self.coords[k]).unwrap();
        ProjectivePoint {
            coords: self.coords.iter().map(|&c| fp.mul(c, inv)).collect(),
        }
    }

    /// Equality up to scale.
    pub fn same_point(&self, fp: &Fp, other: &ProjectivePoint) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        self.normalized(fp).coords == other.normalized(fp).coords
    }

    /// Ideal of all linear forms vanishing at the point.
    pub fn ideal(&self, fp: &Fp, ring: &RingRef) -> Ideal {
        assert_eq!(ring.nvars(), self.coords.len());
        let mut m = Matrix::from_rows(vec![self.coords.clone()], self.coords.len());
        let (_r, kernel) = m.rref_with_kernel(fp);
        let cols: Vec<Monomial> = (0..ring.nvars())
            .map(|i| Monomial::var(ring.nvars(), i, 1))
            .collect();
        let basis = reduced_span(fp, kernel, ring.nvars());
        Ideal::new(ring, graded::rows_to_polys(fp, ring, &cols, &basis))
    }
}

/// Line through two distinct points: the ideal of linear forms vanishing at
/// both; hilbert gives (dim 1, degree 1).
pub fn line_through(fp: &Fp, ring: &RingRef, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<Ideal> {
    if p.same_point(fp, q) {
        return Err(CasError::CoincidentPoints);
    }
    let mut m = Matrix::from_rows(vec![p.coords().to_vec(), q.coords().to_vec()], p.dim_ambient());
    let (_r, kernel) = m.rref_with_kernel(fp);
    let cols: Vec<Monomial> = (0..ring.nvars())
        .map(|i| Monomial::var(ring.nvars(), i, 1))
        .collect();
    let basis = reduced_span(fp, kernel, ring.nvars());
    Ok(Ideal::new(ring, graded::rows_to_polys(fp, ring, &cols, &basis)))
}

// ---------------------------------------------------------------- rational maps

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageMode {
    Elimination,
    Degreewise { max_d: usize },
}

#[derive(Debug, Clone)]
pub struct RationalMap {
    pub source: RingRef,
    pub target: RingRef,
    pub forms: Vec<Polynomial>,
    pub source_ideal: Option<Ideal>,
}

#[derive(Debug, Clone)]
pub struct DegreewiseInfo {
    /// Hilbert polynomial agreed for two consecutive degrees.
    pub stabilized: bool,
    pub degrees_used: usize,
}

impl RationalMap {
    pub fn new(
        source: &RingRef,
        target: &RingRef,
        forms: Vec<Polynomial>,
        source_ideal: Option<Ideal>,
    ) -> Result<RationalMap> {
        if forms.len() != target.nvars() {
            return Err(CasError::Geometry(format!(
                "map needs {} forms, got {}",
                target.nvars(),
                forms.len()
            )));
        }
        let mut deg = None;
        let mut any_nonzero = false;
        for f in &forms {
            if f.ring().vars() != source.vars() {
                return Err(CasError::RingMismatch(
                    f.ring().describe(),
                    source.describe(),
                ));
            }
            if f.is_zero() {
                continue;
            }
            any_nonzero = true;
            if !f.is_homogeneous() {
                return Err(CasError::NotHomogeneous("map forms".into()));
            }
            match deg {
                None => deg = Some(f.degree()),
                Some(d) if d == f.degree() => {}
                Some(d) => {
                    return Err(CasError::Geometry(format!(
                        "forms of mixed degrees {d} and {}",
                        f.degree()
                    )))
                }
            }
        }
        if !any_nonzero {
            return Err(CasError::Geometry("all forms are zero".into()));
        }
        Ok(RationalMap {
            source: source.clone(),
            target: target.clone(),
            forms,
            source_ideal,
        })
    }

    pub fn degree(&self) -> u16 {
        self.forms
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.degree())
            .max()
            .unwrap()
    }

    /// Base locus ideal <forms> (+ source ideal).
    pub fn base_ideal(&self) -> Ideal {
        let mut gens: Vec<Polynomial> = self.forms.iter().filter(|f| !f.is_zero()).cloned().collect();
        if let Some(si) = &self.source_ideal {
            gens.extend(si.generators().iter().cloned());
        }
        Ideal::new(&self.source, gens)
    }

    /// Evaluate at a point; None when the point is in the base locus.
    pub fn eval(&self, fp: &Fp, p: &ProjectivePoint) -> Option<ProjectivePoint> {
        let coords: Vec<u64> = self.forms.iter().map(|f| f.eval(fp, p.coords())).collect();
        if coords.iter().all(|&c| c == 0) {
            None
        } else {
            Some(ProjectivePoint { coords })
        }
    }

    /// Joined ring [source vars..., target vars...] for elimination.
    pub fn joined_ring(&self) -> RingRef {
        Ring::join_front(&self.source, &self.target)
    }

    /// Graph ideal in the joined ring: source ideal + extra + <w_i - F_i>.
    pub fn graph_ideal(&self, fp: &Fp, extra: Option<&Ideal>) -> Result<Ideal> {
        let joined = self.joined_ring();
        let k = self.source.nvars();
        let src_map: Vec<usize> = (0..k).collect();
        let mut gens = Vec::new();
        if let Some(si) = &self.source_ideal {
            for g in si.generators() {
                gens.push(g.map_vars(&joined, &src_map));
            }
        }
        if let Some(e) = extra {
            if e.ring().vars() != self.source.vars() {
                return Err(CasError::RingMismatch(
                    e.ring().describe(),
                    self.source.describe(),
                ));
            }
            for g in e.generators() {
                gens.push(g.map_vars(&joined, &src_map));
            }
        }
        for (i, f) in self.forms.iter().enumerate() {
            let w = Polynomial::variable(&joined, k + i);
            let fe = f.map_vars(&joined, &src_map);
            gens.push(w.sub(fp, &fe)?);
        }
        Ok(Ideal::new(&joined, gens))
    }

    /// Exact image: kernel of the graded ring map, by eliminating the source
    /// block from the graph ideal. Optionally pre-seeded with low-degree
    /// kernel relations (already proven members of the graph ideal), which
    /// shortens the block-order basis computation considerably.
    pub fn image_elimination(&self, fp: &Fp, seed_relations: Option<&Ideal>) -> Result<Ideal> {
        let joined = self.joined_ring();
        let k = self.source.nvars();
        let mut graph = self.graph_ideal(fp, None)?;
        if let Some(seed) = seed_relations {
            let tgt_map: Vec<usize> = (k..joined.nvars()).collect();
            let mut gens = graph.generators().to_vec();
            for g in seed.generators() {
                gens.push(g.map_vars(&joined, &tgt_map));
            }
            graph = Ideal::new(&joined, gens);
        }
        let out = elim::eliminate(fp, &graph, k)?;
        Ok(out.rebase(&self.target))
    }

    /// Degree-wise image: for e = 1..max_d collect the degree-e relations
    /// among the forms; stop when the Hilbert polynomial of the generated
    /// ideal is stable across two consecutive degrees.
    pub fn image_degreewise<R: Rng>(
        &self,
        fp: &Fp,
        max_d: usize,
        rng: &mut R,
    ) -> Result<(Ideal, DegreewiseInfo)> {
        let mut gens: Vec<Polynomial> = Vec::new();
        let mut prev_h: Option<HilbertData> = None;
        let mut stabilized = false;
        let mut used = 0;
        for e in 1..=max_d {
            used = e;
            let rel = self.relations_of_degree(fp, e as u16, rng)?;
            gens.extend(rel);
            if gens.is_empty() {
                // nothing found yet; a stable-looking zero ideal is not evidence
                prev_h = None;
                continue;
            }
            let ideal = Ideal::new(&self.target, gens.clone());
            let h = hilbert::hilbert(fp, &ideal)?;
            if let Some(ph) = &prev_h {
                if hp_equal(ph, &h) {
                    stabilized = true;
                    gens = ideal.generators().to_vec();
                    break;
                }
            }
            prev_h = Some(h);
        }
        let ideal = Ideal::new(&self.target, gens);
        Ok((
            ideal,
            DegreewiseInfo {
                stabilized,
                degrees_used: used,
            },
        ))
    }

    /// Exact basis of the kernel relations of total degree e.
    pub fn relations_of_degree<R: Rng>(
        &self,
        fp: &Fp,
        e: u16,
        rng: &mut R,
    ) -> Result<Vec<Polynomial>> {
        let wmonos = monomials_of_degree(self.target.nvars(), e);
        // monomial maps: exact kernel by hashing evaluated exponents
        if self.forms.iter().all(|f| f.num_terms() == 1) && self.source_ideal.is_none() {
            let mut groups: HashMap<(Monomial, Vec<u64>), Vec<usize>> = HashMap::new();
            for (i, wm) in wmonos.iter().enumerate() {
                let mut acc_m = Monomial::one(self.source.nvars());
                let mut acc_c = 1u64;
                for v in 0..self.target.nvars() {
                    for _ in 0..wm.exp(v) {
                        let (m, c) = &self.forms[v].terms()[0];
                        acc_m = acc_m.mul(m);
                        acc_c = fp.mul(acc_c, *c);
                    }
                }
                groups.entry((acc_m, vec![acc_c])).or_default().push(i);
            }
            let mut keys: Vec<_> = groups.keys().cloned().collect();
            keys.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
            let mut out = Vec::new();
            for k in keys {
                let idxs = &groups[&k];
                for &j in &idxs[1..] {
                    let a = Polynomial::monomial(&self.target, wmonos[idxs[0]].clone(), 1);
                    let b = Polynomial::monomial(&self.target, wmonos[j].clone(), 1);
                    out.push(b.sub(fp, &a)?);
                }
            }
            return Ok(out);
        }
        // restricted maps: exact normal-form matrix over the staircase of the
        // source ideal (relations = combinations reducing to zero)
        if let Some(si) = &self.source_ideal {
            let gb = si.gb(fp)?;
            let table = self.product_table(fp, e)?;
            let mut col_of: HashMap<Monomial, usize> = HashMap::new();
            let mut rows: Vec<Vec<(usize, u64)>> = Vec::with_capacity(wmonos.len());
            for wm in &wmonos {
                let nf = gb.normal_form(fp, &table[wm]);
                let mut row = Vec::with_capacity(nf.num_terms());
                for (m, c) in nf.terms() {
                    let next = col_of.len();
                    let idx = *col_of.entry(m.clone()).or_insert(next);
                    row.push((idx, *c));
                }
                rows.push(row);
            }
            let mut tr = Matrix::zero(col_of.len(), wmonos.len());
            for (j, row) in rows.iter().enumerate() {
                for &(i, c) in row {
                    tr[(i, j)] = c;
                }
            }
            let (_res, kernel) = tr.rref_with_kernel(fp);
            let mut out = Vec::new();
            for v in kernel {
                out.push(Polynomial::from_terms(
                    &self.target,
                    fp,
                    v.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (wmonos[i].clone(), c))
                        .collect(),
                ));
            }
            return Ok(out);
        }
        // general case: random-point matrix for the kernel candidates, then
        // exact verification against symbolically expanded products.
        let npoints = wmonos.len() + 40;
        let mut sample_points: Vec<Vec<u64>> = Vec::with_capacity(npoints);
        let mut guard = 0;
        while sample_points.len() < npoints {
            guard += 1;
            if guard > 100 * npoints {
                return Err(CasError::Geometry(
                    "could not sample enough points for degreewise image".into(),
                ));
            }
            let pt: Vec<u64> = (0..self.source.nvars())
                .map(|_| rng.gen_range(0..fp.modulus()))
                .collect();
            if self.forms.iter().all(|f| f.eval(fp, &pt) == 0) {
                continue;
            }
            sample_points.push(pt);
        }
        let mut mat = Matrix::zero(wmonos.len(), npoints);
        let form_vals: Vec<Vec<u64>> = sample_points
            .iter()
            .map(|pt| self.forms.iter().map(|f| f.eval(fp, pt)).collect())
            .collect();
        for (r, wm) in wmonos.iter().enumerate() {
            for (c, vals) in form_vals.iter().enumerate() {
                let mut acc = 1u64;
                for (val, &ex) in vals.iter().zip(wm.exps()) {
                    if ex > 0 {
                        acc = fp.mul(acc, fp.pow(*val, ex as u64));
                    }
                }
                mat[(r, c)] = acc;
            }
        }
        // kernel of the transpose action: rows are monomials, we want
        // combinations of rows vanishing at all points -> kernel of M^T.
        let mut tr = Matrix::zero(npoints, wmonos.len());
        for i in 0..wmonos.len() {
            for j in 0..npoints {
                tr[(j, i)] = mat[(i, j)];
            }
        }
        let (_res, kernel) = tr.rref_with_kernel(fp);
        if kernel.is_empty() {
            return Ok(vec![]);
        }
        // exact verification table: symbolic products F^alpha for |alpha| = e
        let table = self.product_table(fp, e)?;
        let mut out = Vec::new();
        for v in &kernel {
            let mut acc = Polynomial::zero(&self.source);
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    acc = acc.add(fp, &table[&wmonos[i]].scale(fp, c))?;
                }
            }
            if !acc.is_zero() {
                return Err(CasError::Geometry(
                    "degreewise kernel candidate failed exact verification; rerun with a different seed".into(),
                ));
            }
            out.push(Polynomial::from_terms(
                &self.target,
                fp,
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (wmonos[i].clone(), c))
                    .collect(),
            ));
        }
        Ok(out)
    }

    /// Symbolic products of the forms for all target monomials of degree e.
    fn product_table(&self, fp: &Fp, e: u16) -> Result<HashMap<Monomial, Polynomial>> {
        let mut cur: HashMap<Monomial, Polynomial> = HashMap::new();
        cur.insert(
            Monomial::one(self.target.nvars()),
            Polynomial::one(&self.source),
        );
        for _level in 0..e {
            let mut next: HashMap<Monomial, Polynomial> = HashMap::new();
            for m in monomials_of_degree(self.target.nvars(), cur.keys().next().unwrap().degree() + 1)
            {
                let i = (0..self.target.nvars()).find(|&i| m.exp(i) > 0).unwrap();
                let mut pred = m.clone();
                pred.set(i, m.exp(i) - 1);
                let p = cur[&pred].mul(fp, &self.forms[i])?;
                next.insert(m, p);
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Image with the chosen mode.
    pub fn image<R: Rng>(
        &self,
        fp: &Fp,
        mode: ImageMode,
        rng: &mut R,
    ) -> Result<(Ideal, Option<DegreewiseInfo>)> {
        match mode {
            ImageMode::Elimination => Ok((self.image_elimination(fp, None)?, None)),
            ImageMode::Degreewise { max_d } => {
                let (i, info) = self.image_degreewise(fp, max_d, rng)?;
                Ok((i, Some(info)))
            }
        }
    }

    /// Closure of the image of the subvariety V(Z): eliminate the source
    /// block from Z + graph, then saturate by a target variable that does not
    /// vanish identically on the image.
    pub fn apply_to_subvariety(&self, fp: &Fp, z: &Ideal) -> Result<Ideal> {
        let zgb = z.gb(fp)?;
        let graph = self.graph_ideal(fp, Some(z))?;
        let out = elim::eliminate(fp, &graph, self.source.nvars())?;
        let out = out.rebase(&self.target);
        if out.is_unit(fp)? {
            return Err(CasError::Geometry(
                "subvariety lies inside the base locus".into(),
            ));
        }
        // saturate by one coordinate not vanishing on the image
        let mut var = None;
        for (i, f) in self.forms.iter().enumerate() {
            if !zgb.reduces_to_zero(fp, f) {
                var = Some(i);
                break;
            }
        }
        let Some(var) = var else {
            return Err(CasError::Geometry(
                "subvariety lies inside the base locus".into(),
            ));
        };
        let w = Polynomial::variable(&self.target, var);
        elim::saturate_poly(fp, &out, &w)
    }

    /// Pullback of an ideal of the target: substitute the forms, add the
    /// source ideal, saturate by the base locus.
    pub fn pullback(&self, fp: &Fp, j: &Ideal) -> Result<Ideal> {
        if j.ring().vars() != self.target.vars() {
            return Err(CasError::RingMismatch(
                j.ring().describe(),
                self.target.describe(),
            ));
        }
        let mut gens = Vec::new();
        for g in j.generators() {
            gens.push(g.substitute(fp, &self.source, &self.forms)?);
        }
        if let Some(si) = &self.source_ideal {
            gens.extend(si.generators().iter().cloned());
        }
        let raw = Ideal::new(&self.source, gens);
        elim::saturate_ideal(fp, &raw, &self.base_ideal())
    }

    /// Composition self then `after` (target of self = source of after).
    /// The largest common monomial factor of the resulting forms is divided
    /// out; non-monomial common factors are not removed.
    pub fn compose(&self, fp: &Fp, after: &RationalMap) -> Result<RationalMap> {
        if after.source.vars() != self.target.vars() {
            return Err(CasError::RingMismatch(
                after.source.describe(),
                self.target.describe(),
            ));
        }
        let forms: Vec<Polynomial> = after
            .forms
            .iter()
            .map(|g| g.substitute(fp, &self.source, &self.forms))
            .collect::<Result<Vec<_>>>()?;
        // common monomial content across all forms
        let mut content: Option<Monomial> = None;
        for f in &forms {
            for (m, _) in f.terms() {
                content = Some(match content {
                    None => m.clone(),
                    Some(c) => c.gcd(m),
                });
            }
        }
        let content = content.ok_or_else(|| CasError::Geometry("composite map is zero".into()))?;
        let forms = if content.is_one() {
            forms
        } else {
            forms
                .iter()
                .map(|f| {
                    Polynomial::from_terms(
                        &self.source,
                        fp,
                        f.terms()
                            .iter()
                            .map(|(m, c)| (content.div(m), *c))
                            .collect(),
                    )
                })
                .collect()
        };
        RationalMap::new(&self.source, &after.target, forms, self.source_ideal.clone())
    }

    /// One-sided containment test for a subvariety of the target, without the
    /// full image ideal: eliminate the source block from graph + I(L). The
    /// result cuts out the closure of the set of honest image points on L, so
    /// a positive answer proves L lies on the image closure. A negative
    /// answer is inconclusive for subvarieties inside the boundary (images of
    /// exceptional divisors), which contain no dense set of point images.
    pub fn subset_of_image(&self, fp: &Fp, l: &Ideal) -> Result<bool> {
        let joined = self.joined_ring();
        let k = self.source.nvars();
        let tgt_map: Vec<usize> = (k..joined.nvars()).collect();
        let mut gens = self.graph_ideal(fp, None)?.generators().to_vec();
        for g in l.generators() {
            gens.push(g.map_vars(&joined, &tgt_map));
        }
        let big = Ideal::new(&joined, gens);
        let out = elim::eliminate(fp, &big, k)?.rebase(&self.target);
        let lgb = l.gb(fp)?;
        for g in out.generators() {
            if !lgb.reduces_to_zero(fp, g) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// When the map contracts V(Z) to a point (all forms restrict to
    /// proportional residues mod I(Z)), return that point.
    pub fn contracted_image(&self, fp: &Fp, z: &Ideal) -> Result<Option<ProjectivePoint>> {
        let gb = z.gb(fp)?;
        let residues: Vec<Polynomial> = self
            .forms
            .iter()
            .map(|f| gb.normal_form(fp, f))
            .collect();
        let Some(j0) = residues.iter().position(|r| !r.is_zero()) else {
            return Err(CasError::Geometry(
                "subvariety lies inside the base locus".into(),
            ));
        };
        let base = &residues[j0];
        let base_lc = base.terms()[0].1;
        let mut coords = vec![0u64; residues.len()];
        for (j, r) in residues.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            // candidate scalar from leading coefficients
            let c = fp.div(r.terms()[0].1, base_lc)?;
            if &base.scale(fp, c) != r {
                return Ok(None);
            }
            coords[j] = c;
        }
        Ok(Some(ProjectivePoint { coords }))
    }

    /// Image of the exceptional divisor over a base point P: when the lowest
    /// degree parts of the forms at P are proportional, the blow-up of P is
    /// contracted to the returned point.
    pub fn exceptional_image(&self, fp: &Fp, p: &ProjectivePoint) -> Result<Option<ProjectivePoint>> {
        let chart = AffineChart::at_point(fp, &self.source, p)?;
        let local: Vec<Polynomial> = self
            .forms
            .iter()
            .map(|f| chart.localize(fp, f))
            .collect::<Result<Vec<_>>>()?;
        let m = local
            .iter()
            .filter_map(|f| f.min_degree())
            .min()
            .ok_or(CasError::PointNotOnVariety)?;
        if m == 0 {
            return Err(CasError::Geometry(
                "point is not in the base locus; the map is defined there".into(),
            ));
        }
        let parts: Vec<Polynomial> = local.iter().map(|f| f.homogeneous_part(m)).collect();
        let Some(j0) = parts.iter().position(|r| !r.is_zero()) else {
            return Ok(None);
        };
        let base = &parts[j0];
        let base_lc = base.terms()[0].1;
        let mut coords = vec![0u64; parts.len()];
        for (j, r) in parts.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let c = fp.div(r.terms()[0].1, base_lc)?;
            if &base.scale(fp, c) != r {
                return Ok(None);
            }
            coords[j] = c;
        }
        Ok(Some(ProjectivePoint { coords }))
    }
}

fn hp_equal(a: &HilbertData, b: &HilbertData) -> bool {
    if a.affine_dim != b.affine_dim {
        return false;
    }
    let d = a.affine_dim as i64;
    (0..=d).all(|j| a.hilbert_polynomial_at(100 + j) == b.hilbert_polynomial_at(100 + j))
}

// ---------------------------------------------------------------- spans

/// Smallest linear subspace containing V(Z): ideal generated by the degree-1
/// part of Z.
pub fn linear_span(fp: &Fp, z: &Ideal) -> Result<Ideal> {
    let lin = graded::graded_piece(fp, z, 1)?;
    Ok(Ideal::new(z.ring(), lin))
}

// ---------------------------------------------------------------- charts

/// Affine chart centered at a projective point: a linear change moving P to a
/// coordinate point followed by dehomogenization there.
pub struct AffineChart {
    pub ambient: RingRef,
    pub chart_ring: RingRef,
    /// index of the coordinate used for the chart
    pub k: usize,
    /// normalized point (P_k = 1)
    point: Vec<u64>,
}

impl AffineChart {
    pub fn at_point(fp: &Fp, ring: &RingRef, p: &ProjectivePoint) -> Result<AffineChart> {
        if ring.nvars() != p.dim_ambient() {
            return Err(CasError::Geometry("point/ring dimension mismatch".into()));
        }
        let k = p.coords().iter().position(|&c| c != 0).unwrap();
        let inv = fp.inv(p.coords()[k])?;
        let point: Vec<u64> = p.coords().iter().map(|&c| fp.mul(c, inv)).collect();
        let vars: Vec<String> = ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, v)| v.clone())
            .collect();
        Ok(AffineChart {
            ambient: ring.clone(),
            chart_ring: Ring::new(vars),
            k,
            point,
        })
    }

    /// Translate P to the origin of the chart and dehomogenize: the result
    /// lives in the chart ring and vanishes at the origin iff f(P) = 0.
    pub fn localize(&self, fp: &Fp, f: &Polynomial) -> Result<Polynomial> {
        let n = self.ambient.nvars();
        // x_i -> y_i + P_i * y_k (i != k), x_k -> y_k
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                if i == self.k {
                    Polynomial::variable(&self.ambient, self.k)
                } else {
                    let xi = Polynomial::variable(&self.ambient, i);
                    let xk = Polynomial::variable(&self.ambient, self.k).scale(fp, self.point[i]);
                    xi.add(fp, &xk).unwrap()
                }
            })
            .collect();
        let moved = f.substitute(fp, &self.ambient, &images)?;
        let dehom = moved.substitute_var_one(fp, self.k);
        // drop the chart variable
        let map: Vec<usize> = (0..n)
            .map(|i| match i.cmp(&self.k) {
                std::cmp::Ordering::Less => i,
                std::cmp::Ordering::Equal => 0, // unused
                std::cmp::Ordering::Greater => i - 1,
            })
            .collect();
        Ok(dehom.map_vars(&self.chart_ring, &map))
    }

    /// Re-embed a chart polynomial into the ambient ring (at the point's
    /// coordinates, undoing the translation).
    pub fn globalize(&self, fp: &Fp, f: &Polynomial) -> Result<Polynomial> {
        let n = self.ambient.nvars();
        let up: Vec<usize> = (0..self.chart_ring.nvars())
            .map(|i| if i < self.k { i } else { i + 1 })
            .collect();
        let lifted = f.map_vars(&self.ambient, &up);
        // inverse translation: x_i -> x_i - P_i x_k
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                if i == self.k {
                    Polynomial::variable(&self.ambient, self.k)
                } else {
                    let xi = Polynomial::variable(&self.ambient, i);
                    let xk = Polynomial::variable(&self.ambient, self.k)
                        .scale(fp, fp.neg(self.point[i]));
                    xi.add(fp, &xk).unwrap()
                }
            })
            .collect();
        lifted.substitute(fp, &self.ambient, &images)
    }
}

// ---------------------------------------------------------------- tangent cones

/// Tangent cone of V(I) at P: the ideal of lowest-degree parts of the local
/// ideal at P, re-embedded in the ambient ring; multiplicity is its degree.
pub fn tangent_cone(fp: &Fp, ideal: &Ideal, p: &ProjectivePoint) -> Result<(Ideal, i64)> {
    for g in ideal.generators() {
        if g.eval(fp, p.coords()) != 0 {
            return Err(CasError::PointNotOnVariety);
        }
    }
    let chart = AffineChart::at_point(fp, ideal.ring(), p)?;
    let affine: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| chart.localize(fp, g))
        .collect::<Result<Vec<_>>>()?;
    let affine: Vec<Polynomial> = affine.into_iter().filter(|f| !f.is_zero()).collect();

    // principal fast path: tangent cone of <f> is <lowest part of f>
    let cone_gens_chart: Vec<Polynomial> = if affine.len() == 1 {
        let f = &affine[0];
        vec![f.homogeneous_part(f.min_degree().unwrap())]
    } else {
        lowest_parts_ideal(fp, &chart.chart_ring, &affine)?
    };
    // re-embed (translation back, variable k restored)
    let cone_gens: Vec<Polynomial> = cone_gens_chart
        .iter()
        .map(|f| chart.globalize(fp, f))
        .collect::<Result<Vec<_>>>()?;
    let cone = Ideal::new(ideal.ring(), cone_gens);
    let h = hilbert::hilbert(fp, &cone)?;
    Ok((cone, h.degree))
}

/// Generators of the ideal of lowest-degree forms of the affine ideal at the
/// origin, by the homogenization method: homogenize with a last variable h,
/// saturate by h, compute a basis under the degree-then-h order, dehomogenize
/// and take lowest parts.
fn lowest_parts_ideal(fp: &Fp, chart: &RingRef, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let n = chart.nvars();
    let mut vars = chart.vars().to_vec();
    let hname = {
        let mut nm = "h_0".to_string();
        let mut c = 0;
        while vars.iter().any(|v| v == &nm) {
            c += 1;
            nm = format!("h{c}_0");
        }
        nm
    };
    vars.push(hname);
    let hr = Ring::new(vars);
    let up: Vec<usize> = (0..n).collect();
    let mut hgens: Vec<Polynomial> = Vec::new();
    for g in gens {
        let d = g.degree();
        let lifted = g.map_vars(&hr, &up);
        let terms = lifted
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut mm = m.clone();
                mm.set(n, (d - m.degree()) as u8);
                (mm, *c)
            })
            .collect();
        hgens.push(Polynomial::from_terms(&hr, fp, terms));
    }
    // saturate by h: grevlex basis (h is the last variable), divide out h,
    // iterate until the basis is h-saturated
    let mut current = hgens;
    loop {
        let gb = Ideal::new(&hr, current.clone()).groebner(fp, &MonomialOrder::Grevlex)?;
        let mut divided = false;
        let mut next: Vec<Polynomial> = Vec::new();
        for p in gb.polys(fp) {
            let mine = p.terms().iter().map(|(m, _)| m.exp(n)).min().unwrap();
            if mine > 0 {
                divided = true;
                let terms = p
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut mm = m.clone();
                        mm.set(n, m.exp(n) - mine);
                        (mm, *c)
                    })
                    .collect();
                next.push(Polynomial::from_terms(&hr, fp, terms));
            } else {
                next.push(p.clone());
            }
        }
        current = next;
        if !divided {
            break;
        }
    }
    // basis under the cone order (degree, then h-power, then grevlex)
    let cone_ord = MonomialOrder::cone_order(n + 1);
    let gb = Ideal::new(&hr, current).groebner(fp, &cone_ord)?;
    let down: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for p in gb.polys(fp) {
        let dehom = p.substitute_var_one(fp, n);
        if dehom.is_zero() {
            continue;
        }
        let low = dehom.homogeneous_part(dehom.min_degree().unwrap());
        // h gone after dehomogenization; project to the chart ring
        let proj = Polynomial::from_terms(
            chart,
            fp,
            low.terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exps(&m.exps()[..n]), *c))
                .collect(),
        );
        let _ = &down;
        out.push(proj);
    }
    Ok(out)
}

// ---------------------------------------------------------------- singular loci

/// Singular locus ideal: for a hypersurface the generator plus all first
/// partials; in general I plus the codimension-sized minors of the Jacobian.
pub fn singular_locus(fp: &Fp, ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring();
    let gens = ideal.generators();
    if gens.len() == 1 {
        let f = &gens[0];
        let mut out = vec![f.clone()];
        for i in 0..ring.nvars() {
            out.push(f.partial_derivative(fp, i));
        }
        return Ok(Ideal::new(ring, out));
    }
    let h = hilbert::hilbert(fp, ideal)?;
    let codim = (ring.nvars() as i64 - h.affine_dim as i64).max(0) as usize;
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| {
            (0..ring.nvars())
                .map(|i| g.partial_derivative(fp, i))
                .collect()
        })
        .collect();
    let mut out = gens.to_vec();
    let rows: Vec<usize> = (0..gens.len()).collect();
    let cols: Vec<usize> = (0..ring.nvars()).collect();
    for rsel in combinations(&rows, codim) {
        for csel in combinations(&cols, codim) {
            let det = minor_det(fp, &jac, &rsel, &csel)?;
            if !det.is_zero() {
                out.push(det);
            }
        }
    }
    Ok(Ideal::new(ring, out))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        if idx[i] == i + n - k {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn minor_det(
    fp: &Fp,
    jac: &[Vec<Polynomial>],
    rows: &[usize],
    cols: &[usize],
) -> Result<Polynomial> {
    let n = rows.len();
    if n == 0 {
        return Err(CasError::Geometry("empty minor".into()));
    }
    if n == 1 {
        return Ok(jac[rows[0]][cols[0]].clone());
    }
    // cofactor expansion along the first row
    let ring = jac[rows[0]][cols[0]].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for (j, &c) in cols.iter().enumerate() {
        let entry = &jac[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|(jj, _)| *jj != j)
            .map(|(_, &cc)| cc)
            .collect();
        let sub = minor_det(fp, jac, &rows[1..], &sub_cols)?;
        let term = entry.mul(fp, &sub)?;
        acc = if j % 2 == 0 {
            acc.add(fp, &term)?
        } else {
            acc.sub(fp, &term)?
        };
    }
    Ok(acc)
}

// ---------------------------------------------------------------- binary forms

/// Restrict homogeneous polynomials to the pencil a*A + b*B: each generator
/// becomes a binary form in u_0, u_1.
pub fn restrict_to_pencil(
    fp: &Fp,
    gens: &[Polynomial],
    a: &ProjectivePoint,
    b: &ProjectivePoint,
) -> Result<(RingRef, Vec<Polynomial>)> {
    let uring = Ring::indexed("u", 2);
    let n = a.dim_ambient();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let u0 = Polynomial::variable(&uring, 0).scale(fp, a.coords()[i]);
            let u1 = Polynomial::variable(&uring, 1).scale(fp, b.coords()[i]);
            u0.add(fp, &u1).unwrap()
        })
        .collect();
    let out = gens
        .iter()
        .map(|g| g.substitute(fp, &uring, &images))
        .collect::<Result<Vec<_>>>()?;
    Ok((uring, out))
}

/// Gcd of binary forms (u_0, u_1), including multiplicity at [1:0] and [0:1].
pub fn binary_gcd(fp: &Fp, forms: &[Polynomial]) -> Option<Polynomial> {
    let nz: Vec<&Polynomial> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nz.is_empty() {
        return None;
    }
    let ring = nz[0].ring().clone();
    let to_uni = |f: &Polynomial| -> (Vec<u64>, usize) {
        // coefficients by u_0 power, and the total degree
        let d = f.degree() as usize;
        let mut c = vec![0u64; d + 1];
        for (m, k) in f.terms() {
            c[m.exp(0) as usize] = *k;
        }
        (c, d)
    };
    let (mut g, mut dg) = to_uni(nz[0]);
    for f in &nz[1..] {
        let (c, d) = to_uni(f);
        let (gg, _da, _db) = uni_gcd(fp, &g, &c);
        // infinity multiplicities handled by degree bookkeeping below
        g = gg;
        dg = dg.min(d);
    }
    // u1-multiplicity: min over forms of (deg - top_u0_degree)
    let u1m = nz
        .iter()
        .map(|f| {
            let (c, d) = to_uni(f);
            let top = c.iter().rposition(|&x| x != 0).unwrap();
            d - top
        })
        .min()
        .unwrap();
    let _ = dg;
    // rebuild the homogeneous gcd: g(u0) homogenized to its degree, times u1^u1m
    let gd = g.iter().rposition(|&x| x != 0).unwrap_or(0);
    let mut terms = Vec::new();
    for (i, &c) in g.iter().enumerate().take(gd + 1) {
        if c != 0 {
            terms.push((Monomial::from_exps(&[i as u8, (gd - i + u1m) as u8]), c));
        }
    }
    Some(Polynomial::from_terms(&ring, fp, terms))
}

fn uni_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn uni_rem(fp: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = uni_deg(b).unwrap();
    let mut r = a.to_vec();
    let lead_inv = fp.inv(b[db]).unwrap();
    while let Some(dr) = uni_deg(&r) {
        if dr < db {
            break;
        }
        let f = fp.mul(r[dr], lead_inv);
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let idx = dr - db + i;
            r[idx] = fp.sub(r[idx], fp.mul(f, bc));
        }
    }
    r
}

fn uni_gcd(fp: &Fp, a: &[u64], b: &[u64]) -> (Vec<u64>, usize, usize) {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while uni_deg(&y).is_some() {
        let r = uni_rem(fp, &x, &y);
        x = y;
        y = r;
    }
    // normalize monic
    if let Some(d) = uni_deg(&x) {
        let inv = fp.inv(x[d]).unwrap();
        for c in x.iter_mut() {
            *c = fp.mul(*c, inv);
        }
    }
    (x, 0, 0)
}

/// A binary form is squarefree iff it has no repeated root (including at
/// infinity): gcd with both partials is constant.
pub fn binary_squarefree(fp: &Fp, f: &Polynomial) -> bool {
    let d0 = f.partial_derivative(fp, 0);
    let d1 = f.partial_derivative(fp, 1);
    match binary_gcd(fp, &[f.clone(), d0, d1]) {
        None => false,
        Some(g) => g.degree() == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_from_texts;
    use crate::parse::parse_poly;
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha12Rng {
        rand_chacha::ChaCha12Rng::seed_from_u64(17)
    }

    #[test]
    fn veronese_conic_both_modes() {
        let fp = Fp::default();
        let src = Ring::indexed("u", 2);
        let tgt = Ring::indexed("w", 3);
        let f = |t: &str| parse_poly(&fp, &src, t).unwrap();
        let m = RationalMap::new(
            &src,
            &tgt,
            vec![f("u_0^2"), f("u_0*u_1"), f("u_1^2")],
            None,
        )
        .unwrap();
        let (img, _) = m.image(&fp, ImageMode::Elimination, &mut rng()).unwrap();
        let expect = ideal_from_texts(&fp, &tgt, &["w_0*w_2 - w_1^2"]).unwrap();
        assert!(img.ideal_eq(&fp, &expect).unwrap());
        let (img2, info) = m
            .image(&fp, ImageMode::Degreewise { max_d: 4 }, &mut rng())
            .unwrap();
        assert!(info.unwrap().stabilized);
        assert!(img2.ideal_eq(&fp, &expect).unwrap());
    }

    #[test]
    fn line_through_coordinate_points() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let p = ProjectivePoint::coordinate(4, 0);
        let q = ProjectivePoint::coordinate(4, 1);
        let l = line_through(&fp, &r, &p, &q).unwrap();
        let expect = ideal_from_texts(&fp, &r, &["s_2", "s_3"]).unwrap();
        assert!(l.ideal_eq(&fp, &expect).unwrap());
        assert_eq!(hilbert::dim_deg(&fp, &l).unwrap(), (1, 1));
        assert!(line_through(&fp, &r, &p, &p).is_err());
    }

    #[test]
    fn tangent_cone_of_nodal_cubic() {
        let fp = Fp::default();
        // y^2 z - x^2 z - x^3 at [0:0:1]
        let r = Ring::indexed("x", 3);
        let i = ideal_from_texts(&fp, &r, &["x_1^2*x_2 - x_0^2*x_2 - x_0^3"]).unwrap();
        let p = ProjectivePoint::coordinate(3, 2);
        let (cone, mult) = tangent_cone(&fp, &i, &p).unwrap();
        assert_eq!(mult, 2);
        let expect = ideal_from_texts(&fp, &r, &["x_1^2 - x_0^2"]).unwrap();
        assert!(cone.ideal_eq(&fp, &expect).unwrap());
    }

    #[test]
    fn tangent_cone_multiplicity_one_at_smooth_point() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let i = ideal_from_texts(&fp, &r, &["s_0*s_3 - s_1*s_2"]).unwrap();
        let p = ProjectivePoint::coordinate(4, 0);
        let (_cone, mult) = tangent_cone(&fp, &i, &p).unwrap();
        assert_eq!(mult, 1);
    }

    #[test]
    fn singular_loci_of_quadrics() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        // cone: singular exactly at [1:0:0:0]
        let cone = ideal_from_texts(&fp, &r, &["s_1^2 + s_2^2 + s_3^2"]).unwrap();
        let sl = singular_locus(&fp, &cone).unwrap();
        let vertex = ProjectivePoint::coordinate(4, 0).ideal(&fp, &r);
        let sat = elim::saturate_irrelevant(&fp, &sl).unwrap();
        assert!(sat.ideal_eq(&fp, &vertex).unwrap());
        // smooth quadric: empty singular locus
        let smooth = ideal_from_texts(&fp, &r, &["s_0*s_3 - s_1*s_2"]).unwrap();
        let sl2 = singular_locus(&fp, &smooth).unwrap();
        let h = hilbert::hilbert(&fp, &sl2).unwrap();
        assert_eq!(h.proj_dim, -1);
    }

    #[test]
    fn pullback_of_unit_ideal() {
        let fp = Fp::default();
        let src = Ring::indexed("u", 2);
        let tgt = Ring::indexed("w", 3);
        let f = |t: &str| parse_poly(&fp, &src, t).unwrap();
        let m = RationalMap::new(
            &src,
            &tgt,
            vec![f("u_0^2"), f("u_0*u_1"), f("u_1^2")],
            None,
        )
        .unwrap();
        let unit = ideal_from_texts(&fp, &tgt, &["1"]).unwrap();
        let pb = m.pullback(&fp, &unit).unwrap();
        assert!(pb.is_unit(&fp).unwrap());
    }

    #[test]
    fn image_of_point_is_evaluation() {
        let fp = Fp::default();
        let src = Ring::indexed("u", 2);
        let tgt = Ring::indexed("w", 3);
        let f = |t: &str| parse_poly(&fp, &src, t).unwrap();
        let m = RationalMap::new(
            &src,
            &tgt,
            vec![f("u_0^2"), f("u_0*u_1"), f("u_1^2")],
            None,
        )
        .unwrap();
        let p = ProjectivePoint::new(&fp, vec![2, 3]).unwrap();
        let z = p.ideal(&fp, &src);
        let img = m.apply_to_subvariety(&fp, &z).unwrap();
        let ev = m.eval(&fp, &p).unwrap();
        let expect = ev.ideal(&fp, &tgt);
        assert!(img.ideal_eq(&fp, &expect).unwrap());
        // proportionality route agrees
        let viaprop = m.contracted_image(&fp, &z).unwrap().unwrap();
        assert!(viaprop.same_point(&fp, &ev));
    }

    #[test]
    fn compose_with_identity() {
        let fp = Fp::default();
        let src = Ring::indexed("u", 2);
        let tgt = Ring::indexed("w", 3);
        let f = |t: &str| parse_poly(&fp, &src, t).unwrap();
        let m = RationalMap::new(
            &src,
            &tgt,
            vec![f("u_0^2"), f("u_0*u_1"), f("u_1^2")],
            None,
        )
        .unwrap();
        let id_forms: Vec<Polynomial> = (0..3).map(|i| Polynomial::variable(&tgt, i)).collect();
        let ident = RationalMap::new(&tgt, &tgt, id_forms, None).unwrap();
        let composed = m.compose(&fp, &ident).unwrap();
        assert_eq!(composed.forms, m.forms);
        assert_eq!(composed.degree(), 2);
    }

    #[test]
    fn one_sided_subset_test_on_honest_curves() {
        let fp = Fp::default();
        let src = Ring::indexed("u", 2);
        let tgt = Ring::indexed("w", 3);
        let f = |t: &str| parse_poly(&fp, &src, t).unwrap();
        let m = RationalMap::new(
            &src,
            &tgt,
            vec![f("u_0^2"), f("u_0*u_1"), f("u_1^2")],
            None,
        )
        .unwrap();
        // the conic itself is the image closure
        let conic = ideal_from_texts(&fp, &tgt, &["w_0*w_2 - w_1^2"]).unwrap();
        assert!(m.subset_of_image(&fp, &conic).unwrap());
        // a chord is not contained
        let chord = ideal_from_texts(&fp, &tgt, &["w_1"]).unwrap();
        assert!(!m.subset_of_image(&fp, &chord).unwrap());
    }

    #[test]
    fn span_of_plane_conic_is_its_plane() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let conic = ideal_from_texts(&fp, &r, &["s_3", "s_0*s_2 - s_1^2"]).unwrap();
        let span = linear_span(&fp, &conic).unwrap();
        let plane = ideal_from_texts(&fp, &r, &["s_3"]).unwrap();
        assert!(span.ideal_eq(&fp, &plane).unwrap());
    }

    #[test]
    fn line_contains_both_points() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let p = ProjectivePoint::new(&fp, vec![1, 2, 3, 4]).unwrap();
        let q = ProjectivePoint::new(&fp, vec![4, 3, 2, 1]).unwrap();
        let l = line_through(&fp, &r, &p, &q).unwrap();
        assert_eq!(hilbert::dim_deg(&fp, &l).unwrap(), (1, 1));
        for g in l.generators() {
            assert_eq!(g.eval(&fp, p.coords()), 0);
            assert_eq!(g.eval(&fp, q.coords()), 0);
        }
    }

    #[test]
    fn pullback_of_image_is_trivial_on_source() {
        // twisted-cubic parametrization P^1 -> P^3: the pullback of the image
        // ideal vanishes identically on the source
        let fp = Fp::default();
        let src = Ring::indexed("u", 2);
        let tgt = Ring::indexed("w", 4);
        let f = |t: &str| parse_poly(&fp, &src, t).unwrap();
        let m = RationalMap::new(
            &src,
            &tgt,
            vec![f("u_0^3"), f("u_0^2*u_1"), f("u_0*u_1^2"), f("u_1^3")],
            None,
        )
        .unwrap();
        let img = m.image_elimination(&fp, None).unwrap();
        assert_eq!(hilbert::dim_deg(&fp, &img).unwrap(), (1, 3));
        let pb = m.pullback(&fp, &img).unwrap();
        assert!(pb.is_zero_ideal() || pb.generators().iter().all(|g| g.is_zero()));
    }

    #[test]
    fn cone_dimension_matches_local_dimension() {
        let fp = Fp::default();
        let r = Ring::indexed("s", 4);
        let coneq = ideal_from_texts(&fp, &r, &["s_1^2 + s_2^2 + s_3^2"]).unwrap();
        let vertex = ProjectivePoint::coordinate(4, 0);
        let (cone, mult) = tangent_cone(&fp, &coneq, &vertex).unwrap();
        assert_eq!(mult, 2);
        // the cone of a surface point is 2-dimensional
        assert_eq!(hilbert::hilbert(&fp, &cone).unwrap().proj_dim, 2);
    }

    #[test]
    fn binary_form_utilities() {
        let fp = Fp::default();
        let uring = Ring::indexed("u", 2);
        let f = parse_poly(&fp, &uring, "u_0^2*u_1 - u_0*u_1^2").unwrap(); // u0 u1 (u0-u1)
        let g = parse_poly(&fp, &uring, "u_0^3 - u_0*u_1^2").unwrap(); // u0 (u0-u1)(u0+u1)
        let d = binary_gcd(&fp, &[f, g]).unwrap();
        // gcd = u0 (u0 - u1)
        assert_eq!(d.degree(), 2);
        assert!(binary_squarefree(&fp, &d));
        let sq = parse_poly(&fp, &uring, "u_0^2").unwrap();
        assert!(!binary_squarefree(&fp, &sq));
    }
}

//! Symbolic triple-intersection calculator on the blow-up models behind the
//! four threefolds: divisor classes over a named basis, a symmetric trilinear
//! table loaded from checked-in model files, genus, and the classification of
//! how the ample system contracts each exceptional class.

use crate::error::{CasError, Result};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

#[derive(Debug)]
pub struct IntersectionModel {
    pub name: String,
    pub basis: Vec<String>,
    index: HashMap<String, usize>,
    triples: HashMap<[u16; 3], i64>,
}

#[derive(Debug, Clone)]
pub struct DivisorClass {
    pub model: Arc<IntersectionModel>,
    /// basis index -> integer coefficient
    pub coeffs: BTreeMap<usize, i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionType {
    ToPoint,
    ToCurve,
    NotContracted,
}

impl IntersectionModel {
    pub fn parse(name: &str, text: &str) -> Result<Arc<IntersectionModel>> {
        let mut basis: Option<Vec<String>> = None;
        let mut triples: HashMap<[u16; 3], i64> = HashMap::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        for (lno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("basis:") {
                if basis.is_some() {
                    return Err(CasError::Model(format!("line {}: duplicate basis", lno + 1)));
                }
                let names: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
                for (i, n) in names.iter().enumerate() {
                    if index.insert(n.clone(), i).is_some() {
                        return Err(CasError::Model(format!("duplicate basis name {n}")));
                    }
                }
                basis = Some(names);
                continue;
            }
            if let Some(rest) = line.strip_prefix("triple") {
                let Some(basis_ref) = &basis else {
                    return Err(CasError::Model("triple before basis".into()));
                };
                let _ = basis_ref;
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| {
                    CasError::Model(format!("line {}: missing '='", lno + 1))
                })?;
                let names: Vec<&str> = lhs.split_whitespace().collect();
                if names.len() != 3 {
                    return Err(CasError::Model(format!(
                        "line {}: expected three class names",
                        lno + 1
                    )));
                }
                let v: i64 = rhs.trim().parse().map_err(|_| {
                    CasError::Model(format!("line {}: bad integer", lno + 1))
                })?;
                let mut key = [0u16; 3];
                for (k, n) in names.iter().enumerate() {
                    key[k] = *index.get(*n).ok_or_else(|| {
                        CasError::Model(format!("line {}: unknown class {n}", lno + 1))
                    })? as u16;
                }
                key.sort_unstable();
                if let Some(old) = triples.insert(key, v) {
                    if old != v {
                        return Err(CasError::Model(format!(
                            "conflicting values for unordered triple {:?}",
                            names
                        )));
                    }
                }
                continue;
            }
            return Err(CasError::Model(format!("line {}: unrecognized", lno + 1)));
        }
        let basis = basis.ok_or_else(|| CasError::Model("missing basis line".into()))?;
        Ok(Arc::new(IntersectionModel {
            name: name.to_string(),
            basis,
            index,
            triples,
        }))
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| CasError::Model(format!("unknown class {name} in model {}", self.name)))
    }

    pub fn triple_basis(&self, a: usize, b: usize, c: usize) -> i64 {
        let mut key = [a as u16, b as u16, c as u16];
        key.sort_unstable();
        self.triples.get(&key).copied().unwrap_or(0)
    }

    /// Unordered basis triples absent from the table but "touched" by the
    /// given divisor classes (all three slots hit classes with nonzero
    /// coefficients): the sensitivity listing for defaulted zeros.
    pub fn defaulted_sensitive(&self, divisors: &[&DivisorClass]) -> Vec<(String, String, String)> {
        let mut support: Vec<usize> = Vec::new();
        for d in divisors {
            for (&i, &c) in &d.coeffs {
                if c != 0 && !support.contains(&i) {
                    support.push(i);
                }
            }
        }
        support.sort_unstable();
        let mut out = Vec::new();
        for (x, &a) in support.iter().enumerate() {
            for (y, &b) in support.iter().enumerate().skip(x) {
                for &c in support.iter().skip(y) {
                    let mut key = [a as u16, b as u16, c as u16];
                    key.sort_unstable();
                    if !self.triples.contains_key(&key) {
                        out.push((
                            self.basis[a].clone(),
                            self.basis[b].clone(),
                            self.basis[c].clone(),
                        ));
                    }
                }
            }
        }
        out
    }
}

impl DivisorClass {
    pub fn new(model: &Arc<IntersectionModel>, terms: &[(&str, i64)]) -> Result<DivisorClass> {
        let mut coeffs = BTreeMap::new();
        for (name, c) in terms {
            let i = model.class_index(name)?;
            *coeffs.entry(i).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(DivisorClass {
            model: model.clone(),
            coeffs,
        })
    }

    pub fn basis(model: &Arc<IntersectionModel>, name: &str) -> Result<DivisorClass> {
        DivisorClass::new(model, &[(name, 1)])
    }

    pub fn add(&self, other: &DivisorClass, scale: i64) -> DivisorClass {
        let mut coeffs = self.coeffs.clone();
        for (&i, &c) in &other.coeffs {
            *coeffs.entry(i).or_insert(0) += scale * c;
        }
        coeffs.retain(|_, c| *c != 0);
        DivisorClass {
            model: self.model.clone(),
            coeffs,
        }
    }
}

fn same_model(a: &DivisorClass, b: &DivisorClass) -> Result<()> {
    if Arc::ptr_eq(&a.model, &b.model) {
        Ok(())
    } else {
        Err(CasError::Model(format!(
            "classes from different models ({} vs {})",
            a.model.name, b.model.name
        )))
    }
}

/// Trilinear intersection product A.B.C.
pub fn triple(a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Result<i64> {
    same_model(a, b)?;
    same_model(a, c)?;
    let mut acc: i64 = 0;
    for (&i, &ca) in &a.coeffs {
        for (&j, &cb) in &b.coeffs {
            for (&k, &cc) in &c.coeffs {
                let t = a.model.triple_basis(i, j, k);
                if t != 0 {
                    acc += ca * cb * cc * t;
                }
            }
        }
    }
    Ok(acc)
}

/// Genus of the polarizing class: S^3/2 + 1; S^3 must be even.
pub fn genus(s: &DivisorClass) -> Result<i64> {
    let c = triple(s, s, s)?;
    if c.rem_euclid(2) != 0 {
        return Err(CasError::Model(format!("S^3 = {c} is odd")));
    }
    Ok(c / 2 + 1)
}

/// Contraction classification of D under the morphism defined by S:
/// to a point iff S.D.B = 0 for every basis class B; to a curve iff
/// S^2.D = 0 but some S.D.B is nonzero; otherwise not contracted.
pub fn contraction_type(s: &DivisorClass, d: &DivisorClass) -> Result<ContractionType> {
    same_model(s, d)?;
    let model = &s.model;
    let mut all_zero = true;
    for b in 0..model.basis.len() {
        let bc = DivisorClass {
            model: model.clone(),
            coeffs: BTreeMap::from([(b, 1)]),
        };
        if triple(s, d, &bc)? != 0 {
            all_zero = false;
            break;
        }
    }
    if all_zero {
        return Ok(ContractionType::ToPoint);
    }
    if triple(s, s, d)? == 0 {
        Ok(ContractionType::ToCurve)
    } else {
        Ok(ContractionType::NotContracted)
    }
}

macro_rules! model_loader {
    ($fn_name:ident, $file:literal) => {
        pub fn $fn_name() -> Arc<IntersectionModel> {
            static CELL: OnceLock<Arc<IntersectionModel>> = OnceLock::new();
            CELL.get_or_init(|| {
                IntersectionModel::parse($file, include_str!(concat!("models/", $file, ".model")))
                    .expect("embedded model file parses")
            })
            .clone()
        }
    };
}

model_loader!(model_fano13, "fano13");
model_loader!(model_fano9, "fano9");
model_loader!(model_fano7, "fano7");
model_loader!(model_fano6, "fano6");

/// Named divisor classes on each model: the ample system class and the
/// classes whose contraction behaviour the pipelines check.
pub mod classes {
    use super::*;

    const P13_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

    /// Genus-13 system: 6H - 3 sum E_i - 2 sum F_ij - 4 sum G_ij.
    pub fn sextic_system_13(m: &Arc<IntersectionModel>) -> Result<DivisorClass> {
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 6)];
        for i in 0..4 {
            terms.push((format!("E{i}"), -3));
        }
        for (i, j) in P13_PAIRS {
            terms.push((format!("F{i}{j}"), -2));
        }
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    terms.push((format!("G{i}{j}"), -4));
                }
            }
        }
        named(m, terms)
    }

    /// Strict transform of the face opposite vertex i (genus-13 model).
    pub fn face_13(m: &Arc<IntersectionModel>, i: usize) -> Result<DivisorClass> {
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 1)];
        for k in 0..4 {
            if k == i {
                continue;
            }
            terms.push((format!("E{k}"), -1));
            // E_k expands over its Gamma classes; the face contains gamma_ki once
            for a in 0..4 {
                if a != k {
                    terms.push((format!("G{k}{a}"), -1));
                }
            }
            terms.push((format!("G{k}{i}"), -1));
        }
        for j in 0..4 {
            if j != i {
                let (a, b) = (i.min(j), i.max(j));
                terms.push((format!("F{a}{b}"), -1));
            }
        }
        named(m, terms)
    }

    /// Genus-9 system class.
    pub fn septic_system_9(m: &Arc<IntersectionModel>) -> Result<DivisorClass> {
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 7), ("E".into(), -3), ("EP".into(), -3)];
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            for k in 1..=3 {
                terms.push((format!("EQ{i}{j}{k}"), -2));
                terms.push((format!("EQP{i}{j}{k}"), -2));
                for h in [i, j] {
                    terms.push((format!("L{i}{j}{k}{h}"), -3));
                    terms.push((format!("LP{i}{j}{k}{h}"), -3));
                }
            }
            terms.push((format!("F{i}{j}"), -2));
            terms.push((format!("FP{i}{j}"), -2));
        }
        for i in 1..=3 {
            for k in 1..=3 {
                terms.push((format!("R{i}{k}"), -1));
            }
            terms.push((format!("G{i}"), -4));
            terms.push((format!("GP{i}"), -4));
        }
        named(m, terms)
    }

    /// Strict transforms of the six trihedron faces (genus-9 model); `primed`
    /// selects the second trihedron, i is 1..=3.
    pub fn face_9(m: &Arc<IntersectionModel>, i: usize, primed: bool) -> Result<DivisorClass> {
        let (e, gpre, fpre, eq, lam) = if primed {
            ("EP", "GP", "FP", "EQP", "LP")
        } else {
            ("E", "G", "F", "EQ", "L")
        };
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 1)];
        // vertex of the same trihedron
        terms.push((e.to_string(), -1));
        for a in 1..=3 {
            terms.push((format!("{gpre}{a}"), -1));
        }
        terms.push((format!("{gpre}{i}"), -1));
        // edges of the same trihedron inside the face: pairs containing i
        for j in 1..=3 {
            if j == i {
                continue;
            }
            let (a, b) = (i.min(j), i.max(j));
            terms.push((format!("{fpre}{a}{b}"), -1));
        }
        // q-points of the same trihedron on those edges: q_{(ij)k} all k
        for j in 1..=3 {
            if j == i {
                continue;
            }
            let (a, b) = (i.min(j), i.max(j));
            for k in 1..=3 {
                terms.push((format!("{eq}{a}{b}{k}"), -1));
                for h in [a, b] {
                    terms.push((format!("{lam}{a}{b}{k}{h}"), -1));
                }
                terms.push((format!("{lam}{a}{b}{k}{i}"), -1));
            }
        }
        // q-points of the opposite trihedron lying on this face: q'_{(rs)i}
        // (unprimed face f_i contains q'_{rs,i}); for primed faces the
        // unprimed q_{rs,i} lie on them.
        let (eq2, lam2) = if primed { ("EQ", "L") } else { ("EQP", "LP") };
        for (r, s) in [(1, 2), (1, 3), (2, 3)] {
            terms.push((format!("{eq2}{r}{s}{i}"), -1));
            for h in [r, s] {
                terms.push((format!("{lam2}{r}{s}{i}{h}"), -1));
            }
        }
        // r-lines inside the face: r_{i,k} for unprimed, r_{k,i} for primed
        for k in 1..=3 {
            if primed {
                terms.push((format!("R{k}{i}"), -1));
            } else {
                terms.push((format!("R{i}{k}"), -1));
            }
        }
        named(m, terms)
    }

    /// Genus-7 system class.
    pub fn sextic_system_7(m: &Arc<IntersectionModel>) -> Result<DivisorClass> {
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 6), ("FD".into(), -1)];
        for k in 0..4 {
            terms.push((format!("E{k}"), -3));
        }
        for (i, j) in P13_PAIRS {
            terms.push((format!("EP{i}{j}"), -2));
            terms.push((format!("F{i}{j}"), -2));
            terms.push((format!("L{i}{j}"), -3));
        }
        for k in 0..4 {
            for i in 0..4 {
                if i != k {
                    terms.push((format!("G{k}{i}"), -4));
                }
            }
        }
        named(m, terms)
    }

    /// Strict transform of face i in the genus-7 model.
    pub fn face_7(m: &Arc<IntersectionModel>, i: usize) -> Result<DivisorClass> {
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 1)];
        for k in 0..4 {
            if k == i {
                continue;
            }
            terms.push((format!("E{k}"), -1));
            for a in 0..4 {
                if a != k {
                    terms.push((format!("G{k}{a}"), -1));
                }
            }
            terms.push((format!("G{k}{i}"), -1));
        }
        for j in 0..4 {
            if j != i {
                let (a, b) = (i.min(j), i.max(j));
                terms.push((format!("F{a}{b}"), -1));
                // the plane point p_ab lies on the edge, hence on the face
                terms.push((format!("EP{a}{b}"), -1));
                terms.push((format!("L{a}{b}"), -1));
            }
        }
        named(m, terms)
    }

    /// Genus-6 system class.
    pub fn septic_system_6(m: &Arc<IntersectionModel>) -> Result<DivisorClass> {
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 7)];
        for h in 1..=5 {
            terms.push((format!("E{h}"), -3));
        }
        for i in 1..=3 {
            terms.push((format!("EA{i}p"), -2));
            terms.push((format!("EA{i}pp"), -2));
            terms.push((format!("F{i}"), -2));
            terms.push((format!("R{i}"), -1));
            terms.push((format!("LA{i}p"), -3));
            terms.push((format!("LA{i}pp"), -3));
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            terms.push((format!("EB{i}{j}"), -2));
            terms.push((format!("LB{i}{j}{i}"), -3));
            terms.push((format!("LB{i}{j}{j}"), -3));
        }
        for h in 1..=5 {
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                terms.push((format!("G{h}{i}{j}"), -4));
            }
        }
        named(m, terms)
    }

    /// Strict transform of the quadric through cubics i and j (genus-6).
    pub fn quadric_6(m: &Arc<IntersectionModel>, i: usize, j: usize) -> Result<DivisorClass> {
        let k = 6 - i - j; // complement index in {1,2,3}
        let mut terms: Vec<(String, i64)> = vec![("H".into(), 2)];
        for h in 1..=5 {
            terms.push((format!("E{h}"), -1));
            terms.push((format!("G{h}{i}{j}"), -1));
            for (r, s) in [(1, 2), (1, 3), (2, 3)] {
                terms.push((format!("G{h}{r}{s}"), -1));
            }
        }
        for t in [i, j] {
            terms.push((format!("EA{t}p"), -1));
            terms.push((format!("EA{t}pp"), -1));
            terms.push((format!("LA{t}p"), -2));
            terms.push((format!("LA{t}pp"), -2));
            terms.push((format!("F{t}"), -1));
            terms.push((format!("R{t}"), -1));
        }
        for (r, s) in [(1, 2), (1, 3), (2, 3)] {
            terms.push((format!("EB{r}{s}"), -1));
            terms.push((format!("LB{r}{s}{r}"), -1));
            terms.push((format!("LB{r}{s}{s}"), -1));
        }
        // tangent-plane lines over the two chord/cubic crossing points
        for x in [i, j] {
            let (r, s) = (x.min(k), x.max(k));
            terms.push((format!("LB{r}{s}{x}"), -1));
        }
        named(m, terms)
    }

    fn named(m: &Arc<IntersectionModel>, terms: Vec<(String, i64)>) -> Result<DivisorClass> {
        let refs: Vec<(&str, i64)> = terms.iter().map(|(n, c)| (n.as_str(), *c)).collect();
        DivisorClass::new(m, &refs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_cube() {
        let m = model_fano13();
        let h = DivisorClass::basis(&m, "H").unwrap();
        assert_eq!(triple(&h, &h, &h).unwrap(), 1);
    }

    #[test]
    fn gamma_cube_is_two() {
        let m = model_fano13();
        let g = DivisorClass::basis(&m, "G01").unwrap();
        assert_eq!(triple(&g, &g, &g).unwrap(), 2);
    }

    #[test]
    fn system_cubes_and_genera() {
        let m13 = model_fano13();
        let s13 = classes::sextic_system_13(&m13).unwrap();
        assert_eq!(triple(&s13, &s13, &s13).unwrap(), 24);
        assert_eq!(genus(&s13).unwrap(), 13);

        let m9 = model_fano9();
        let s9 = classes::septic_system_9(&m9).unwrap();
        assert_eq!(triple(&s9, &s9, &s9).unwrap(), 16);
        assert_eq!(genus(&s9).unwrap(), 9);

        let m7 = model_fano7();
        let s7 = classes::sextic_system_7(&m7).unwrap();
        assert_eq!(triple(&s7, &s7, &s7).unwrap(), 12);
        assert_eq!(genus(&s7).unwrap(), 7);

        let m6 = model_fano6();
        let s6 = classes::septic_system_6(&m6).unwrap();
        assert_eq!(triple(&s6, &s6, &s6).unwrap(), 10);
        assert_eq!(genus(&s6).unwrap(), 6);
    }

    #[test]
    fn contraction_classification_13() {
        let m = model_fano13();
        let s = classes::sextic_system_13(&m).unwrap();
        let e0 = DivisorClass::basis(&m, "E0").unwrap();
        assert_eq!(contraction_type(&s, &e0).unwrap(), ContractionType::ToPoint);
        let g = DivisorClass::basis(&m, "G01").unwrap();
        assert_eq!(contraction_type(&s, &g).unwrap(), ContractionType::ToCurve);
        let f = DivisorClass::basis(&m, "F01").unwrap();
        assert_eq!(
            contraction_type(&s, &f).unwrap(),
            ContractionType::NotContracted
        );
        assert_eq!(triple(&s, &s, &f).unwrap(), 4);
        for i in 0..4 {
            let ft = classes::face_13(&m, i).unwrap();
            assert_eq!(contraction_type(&s, &ft).unwrap(), ContractionType::ToPoint);
        }
    }

    #[test]
    fn triple_symmetric_and_trilinear() {
        use rand::{Rng, SeedableRng};
        let m = model_fano13();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let names: Vec<&str> = m.basis.iter().map(|s| s.as_str()).collect();
        for _ in 0..20 {
            let pick = |rng: &mut rand_chacha::ChaCha12Rng| {
                let terms: Vec<(&str, i64)> = (0..3)
                    .map(|_| {
                        (
                            names[rng.gen_range(0..names.len())],
                            rng.gen_range(-3..=3i64),
                        )
                    })
                    .collect();
                DivisorClass::new(&m, &terms).unwrap()
            };
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let t = triple(&a, &b, &c).unwrap();
            assert_eq!(t, triple(&b, &a, &c).unwrap());
            assert_eq!(t, triple(&c, &b, &a).unwrap());
            let d = pick(&mut rng);
            let a_plus_2d = a.add(&d, 2);
            assert_eq!(
                triple(&a_plus_2d, &b, &c).unwrap(),
                t + 2 * triple(&d, &b, &c).unwrap()
            );
        }
    }

    #[test]
    fn model_rejects_conflicts() {
        let bad = "basis: A B\ntriple A A B = 1\ntriple B A A = 2\n";
        assert!(IntersectionModel::parse("bad", bad).is_err());
        let ok = "basis: A B\ntriple A A B = 1\ntriple B A A = 1\n";
        assert!(IntersectionModel::parse("ok", ok).is_ok());
    }
}

//! Genus-6 pipeline: three twisted cubics with five common points, their
//! three chords and three quadrics, built by liaison from seeded random
//! choices with degeneracy detection and retries; then the septic system
//! double along the cubics, its degree-10 image in P^6, the eight quadruple
//! points, and the complete (all 28 lines) association graph.

use crate::elim;
use crate::error::{CasError, Result};
use crate::field::Fp;
use crate::geom::{self, tangent_cone, ProjectivePoint, RationalMap};
use crate::graded;
use crate::hilbert;
use crate::ideal::{projective_ring, Ideal};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scenario::common::*;
use crate::scenario::config::ScenarioConfig;
use crate::scenario::report::{Runner, ScenarioReport};
use rand::Rng;
use rand_chacha::ChaCha12Rng;

pub struct Configuration {
    pub q_points: Vec<ProjectivePoint>,
    pub cubics: [Ideal; 3],
    pub quadrics: [Polynomial; 3],
    pub chords: [Ideal; 3],
    /// pairwise chord intersections b_12, b_13, b_23
    pub b_points: [ProjectivePoint; 3],
    pub attempts_used: u32,
}

pub fn run(cfg: &ScenarioConfig) -> ScenarioReport {
    let mut runner = Runner::new(
        "fano6",
        cfg.prime,
        cfg.seed,
        cfg.mode_label_for("fano6"),
        cfg.checks.clone(),
    );
    match run_inner(cfg, &mut runner) {
        Ok(()) => {}
        Err(e) => runner.error("engine", "scenario aborted by engine error", e.to_string()),
    }
    runner.finish()
}

/// Quadric pairs: quadric k contains cubics (i, j); index map (1,2) -> Q6,
/// (1,3) -> Q7, (2,3) -> Q8 (named by i+j+3).
const QUADRIC_PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

fn quadric_label(i: usize, j: usize) -> String {
    format!("Q{}", i + j + 3)
}

fn run_inner(cfg: &ScenarioConfig, r: &mut Runner) -> Result<()> {
    let fp = cfg.field()?;
    let p3 = p3_ring();

    // seeded construction with bounded retries
    let cons = r.phase("construction", |r| construct_with_retries(&fp, cfg, r))?;
    r.note(format!(
        "fano6: construction accepted after {} attempt(s)",
        cons.attempts_used
    ));

    let [c1, c2, c3] = &cons.cubics;
    let [g6, g7, g8] = &cons.quadrics;
    let [r1, r2, r3] = &cons.chords;

    // (a) the three cubics meet exactly at the five chosen points
    r.check_true(
        "a.common_points",
        "C1 cap C2 cap C3 is the reduced set of the five chosen points",
        || {
            let sum = c1.sum(c2)?.sum(c3)?;
            let sat = elim::saturate_irrelevant(&fp, &sum)?;
            let pts: Vec<Ideal> = cons.q_points.iter().map(|q| q.ideal(&fp, &p3)).collect();
            let expect = elim::intersect_many(&fp, &pts)?;
            Ok(sat.ideal_eq(&fp, &expect)? && hilbert::dim_deg(&fp, &sat)? == (0, 5))
        },
    );

    // (b) quadric intersections split as cubic + chord
    for (k, (i, j)) in QUADRIC_PAIRS.iter().enumerate() {
        let (qa, qb) = match k {
            0 => (g6, g7), // Q6 cap Q7 = C1 u r1
            1 => (g6, g8), // Q6 cap Q8 = C2 u r2
            _ => (g7, g8), // Q7 cap Q8 = C3 u r3
        };
        let (cub, chord) = match k {
            0 => (c1, r1),
            1 => (c2, r2),
            _ => (c3, r3),
        };
        let _ = (i, j);
        r.check_true(
            &format!("b.ci_{}", k + 1),
            &format!(
                "complete intersection of two quadrics equals C{} union r{}",
                k + 1,
                k + 1
            ),
            || {
                let ci = Ideal::new(&p3, vec![qa.clone(), qb.clone()]);
                let expect = elim::intersect(&fp, cub, chord)?;
                ci.ideal_eq(&fp, &expect)
            },
        );
    }

    // (c) case (i) of the classification: smooth third quadric, three distinct
    // pairwise chord intersections matching the cubic crossings
    r.check_true("c1.q8_smooth", "the third quadric is smooth", || {
        Ok(quadric_is_smooth(&fp, g8))
    });
    r.check_true("c2.b_distinct", "the three points b_ij are pairwise distinct", || {
        Ok(!cons.b_points[0].same_point(&fp, &cons.b_points[1])
            && !cons.b_points[0].same_point(&fp, &cons.b_points[2])
            && !cons.b_points[1].same_point(&fp, &cons.b_points[2]))
    });
    for (k, (i, j)) in QUADRIC_PAIRS.iter().enumerate() {
        // b_ij = r_i cap C_k' = r_j cap C_k' where k' is the complement
        let kk = 6 - i - j;
        let (ri_, rj_) = (&cons.chords[i - 1], &cons.chords[j - 1]);
        let ck = &cons.cubics[kk - 1];
        let b = &cons.b_points[k];
        r.check_true(
            &format!("c3.b{i}{j}_on_cubic"),
            &format!("b_{i}{j} = r_{i} cap C_{kk} = r_{j} cap C_{kk}"),
            || {
                let x = elim::saturate_irrelevant(&fp, &ri_.sum(ck)?)?;
                let y = elim::saturate_irrelevant(&fp, &rj_.sum(ck)?)?;
                let bid = b.ideal(&fp, &p3);
                Ok(x.ideal_eq(&fp, &bid)? && y.ideal_eq(&fp, &bid)?)
            },
        );
    }

    // (d) each chord meets its cubic in a length-2 reduced scheme
    for i in 1..=3 {
        r.check_true(
            &format!("d.chord_r{i}"),
            &format!("r_{i} is a chord of C_{i}: two reduced intersection points"),
            || chord_is_reduced(&fp, &cons.chords[i - 1], &cons.cubics[i - 1]),
        );
    }

    // (e) cubics through two of the twisted cubics: h^0 = 5
    for (i, j) in QUADRIC_PAIRS {
        r.check_eq(
            &format!("e.cubics_through_C{i}C{j}"),
            &format!("degree-3 part of I(C{i} cup C{j}) has dimension 5"),
            5,
            || {
                let both = elim::intersect(&fp, &cons.cubics[i - 1], &cons.cubics[j - 1])?;
                Ok(graded::graded_piece(&fp, &both, 3)?.len() as i64)
            },
        );
    }

    // (f) unique quadric through C_i u C_j u r_i u r_j
    for (i, j) in QUADRIC_PAIRS {
        r.check_eq(
            &format!("f.unique_quadric_{}", quadric_label(i, j)),
            &format!("exactly one quadric contains C{i}, C{j}, r{i}, r{j}"),
            1,
            || {
                let a = elim::intersect(&fp, &cons.cubics[i - 1], &cons.cubics[j - 1])?;
                let b = elim::intersect(&fp, &cons.chords[i - 1], &cons.chords[j - 1])?;
                let all = elim::intersect(&fp, &a, &b)?;
                Ok(graded::graded_piece(&fp, &all, 2)?.len() as i64)
            },
        );
    }

    // (g) the septic system
    let system = r.phase("linear_system", |_r| {
        let conds: Vec<(Ideal, u8)> =
            cons.cubics.iter().map(|c| (c.clone(), 2)).collect();
        graded::linear_system(&fp, &p3, &conds, 7)
    })?;
    r.check_eq(
        "g1.system_dim",
        "septics double along the three cubics form a 7-dimensional space",
        7,
        || Ok(system.len() as i64),
    );
    for i in 1..=3 {
        r.check_true(
            &format!("g2.r{i}_in_every_member"),
            &format!("every member of the system contains the chord r_{i}"),
            || {
                let gb = cons.chords[i - 1].gb(&fp)?;
                Ok(system.iter().all(|f| gb.reduces_to_zero(&fp, f)))
            },
        );
    }
    // shape: products (quadric)(quadric)(cubic through the other two cubics)
    r.check_true(
        "g3.shape_products",
        "the quadric-pair times cubic products lie in and span the system",
        || {
            let mut products = Vec::new();
            for (i, j) in QUADRIC_PAIRS {
                let k = 6 - i - j;
                // term g_{i+k+3} g_{j+k+3} f_{i+j+3} with f in I(C_i cup C_j)(3)
                let qa = &cons.quadrics[QUADRIC_PAIRS
                    .iter()
                    .position(|&(a, b)| (a, b) == (i.min(k), i.max(k)))
                    .unwrap()];
                let qb = &cons.quadrics[QUADRIC_PAIRS
                    .iter()
                    .position(|&(a, b)| (a, b) == (j.min(k), j.max(k)))
                    .unwrap()];
                let both = elim::intersect(&fp, &cons.cubics[i - 1], &cons.cubics[j - 1])?;
                for f in graded::graded_piece(&fp, &both, 3)? {
                    products.push(qa.mul(&fp, qb)?.mul(&fp, &f)?);
                }
            }
            Ok(products.iter().all(|p| graded::in_span(&fp, &p3, &system, p))
                && graded::same_span(&fp, &p3, &products, &system))
        },
    );

    // (h) tangent directions of the three cubics at each common point span P^3
    for (h, q) in cons.q_points.iter().enumerate() {
        r.check_true(
            &format!("h.tangents_q{}", h + 1),
            "the three cubic tangent directions at the common point are independent",
            || {
                let mut rows = vec![q.coords().to_vec()];
                for c in &cons.cubics {
                    rows.push(tangent_direction(&fp, c, q)?);
                }
                let mut m = Matrix::from_rows(rows, 4);
                Ok(m.rref(&fp).rank == 4)
            },
        );
    }

    // (i) a random member has triple points at the five base points, with
    // tangent cone the union of the three quadric tangent planes
    let mut rng = rng_for(cfg.seed, "member6");
    let member = random_member(&fp, &mut rng, &system);
    let member_ideal = Ideal::new(&p3, vec![member.clone()]);
    for (h, q) in cons.q_points.iter().enumerate() {
        r.check_true(
            &format!("i.triple_q{}", h + 1),
            "random member is triple at the common point, cone = three tangent planes",
            || {
                if !graded::vanishes_to_order(&fp, &member, &q.ideal(&fp, &p3), 3)? {
                    return Ok(false);
                }
                let (cone, mult) = tangent_cone(&fp, &member_ideal, q)?;
                if mult != 3 {
                    return Ok(false);
                }
                let mut planes = Polynomial::one(&p3);
                for g in &cons.quadrics {
                    planes = planes.mul(&fp, &tangent_plane(&fp, g, q)?)?;
                }
                cone.ideal_eq(&fp, &Ideal::new(&p3, vec![planes]))
            },
        );
    }

    // (j) the image threefold in P^6
    let p6 = projective_ring("w", 7);
    let map = RationalMap::new(&p3, &p6, system.clone(), None)?;
    let image = r.phase("image", |r| {
        compute_image(&fp, r, &map, cfg.effective_mode("fano6"), cfg.seed, "fano6")
    })?;
    r.artifact("system", &Ideal::new(&p3, system.clone()));
    r.artifact("image", &image);
    r.check_eq(
        "j.image_dim_deg",
        "image of the septic map has projective (dim, degree) = (3, 10)",
        "(3, 10)".to_string(),
        || {
            let h = hilbert::hilbert(&fp, &image)?;
            Ok(format!("({}, {})", h.proj_dim, h.degree))
        },
    );

    // (k) the eight singular points: the five base points and the three
    // contracted quadrics, all quadruple
    let points = r.phase("points", |_r| -> Result<Vec<(String, ProjectivePoint)>> {
        let mut out = Vec::new();
        for (h, q) in cons.q_points.iter().enumerate() {
            let p = map.exceptional_image(&fp, q)?.ok_or_else(|| {
                CasError::Geometry(format!("exceptional divisor over q{} not contracted", h + 1))
            })?;
            out.push((format!("P{}", h + 1), p));
        }
        for (k, (i, j)) in QUADRIC_PAIRS.iter().enumerate() {
            let z = Ideal::new(&p3, vec![cons.quadrics[k].clone()]);
            let p = map.contracted_image(&fp, &z)?.ok_or_else(|| {
                CasError::Geometry(format!("{} not contracted", quadric_label(*i, *j)))
            })?;
            out.push((quadric_label(*i, *j).replace('Q', "P"), p));
        }
        Ok(out)
    })?;
    r.check_true("k1.points_distinct", "the eight singular points are pairwise distinct", || {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].1.same_point(&fp, &points[j].1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    r.phase("tangent_cones", |r| {
        let mults = cone_multiplicities(&fp, &image, &points)?;
        for ((label, _), mult) in points.iter().zip(mults) {
            r.check_eq(
                &format!("k2.cone_{label}"),
                &format!("tangent cone at {label} has degree 4"),
                4,
                || Ok(mult),
            );
        }
        Ok::<(), CasError>(())
    })?;

    // (l) all 28 lines joining singular points lie on the threefold
    r.phase("lines", |r| {
        let pairs = association_partners(&fp, &image, &p6, &points)?;
        // in degreewise mode, re-verify a sample of the lines joining images
        // of base points: each is the exact image of the honest P^3 line
        // through the corresponding q-points
        if matches!(
            cfg.effective_mode("fano6"),
            crate::geom::ImageMode::Degreewise { .. }
        ) {
            use rand::seq::SliceRandom;
            let mut rng = rng_for(cfg.seed, "spot6");
            let mut qq_pairs: Vec<(usize, usize)> = Vec::new();
            for i in 0..5 {
                for j in (i + 1)..5 {
                    qq_pairs.push((i, j));
                }
            }
            let chosen: Vec<(usize, usize)> = qq_pairs
                .choose_multiple(&mut rng, 3)
                .cloned()
                .collect();
            let mut confirmed = 0;
            for &(i, j) in &chosen {
                let src_line = geom::line_through(&fp, &p3, &cons.q_points[i], &cons.q_points[j])?;
                let img_line = map.apply_to_subvariety(&fp, &src_line)?;
                let expect = geom::line_through(&fp, &p6, &points[i].1, &points[j].1)?;
                if img_line.ideal_eq(&fp, &expect)? {
                    confirmed += 1;
                }
            }
            r.check_eq(
                "l.spot_elimination",
                "exact elimination maps sampled base-point lines onto the joining lines",
                3,
                || Ok(confirmed),
            );
        }
        let mut partners = vec![0usize; points.len()];
        for ((i, j), contained) in &pairs {
            let (a, b) = (&points[*i].0, &points[*j].0);
            r.check_eq(
                &format!("l.line_{a}_{b}"),
                &format!("line {a} - {b} lies on the threefold"),
                true,
                || Ok(*contained),
            );
            if *contained {
                partners[*i] += 1;
                partners[*j] += 1;
            }
        }
        for (k, (label, _)) in points.iter().enumerate() {
            r.check_eq(
                &format!("l.partners_{label}"),
                &format!("{label} is associated with all 7 other singular points"),
                7,
                || Ok(partners[k] as i64),
            );
        }
        Ok::<(), CasError>(())
    })?;

    // blow-up cross-check
    r.check_eq(
        "m.chow_genus",
        "blow-up model genus equals 6 and matches degree/2 + 1",
        "genus 6, degree 10".to_string(),
        || {
            let m = crate::chow::model_fano6();
            let s = crate::chow::classes::septic_system_6(&m)?;
            Ok(format!(
                "genus {}, degree {}",
                crate::chow::genus(&s)?,
                crate::chow::triple(&s, &s, &s)?
            ))
        },
    );
    Ok(())
}

// ------------------------------------------------------------ construction

pub fn construct_with_retries(
    fp: &Fp,
    cfg: &ScenarioConfig,
    r: &mut Runner,
) -> Result<Configuration> {
    let mut last = String::new();
    for attempt in 0..cfg.retry_limit {
        let mut rng = rng_for(cfg.seed, &format!("construct{attempt}"));
        match construct(fp, &mut rng) {
            Ok(mut c) => {
                c.attempts_used = attempt + 1;
                return Ok(c);
            }
            Err(reason) => {
                r.note(format!("fano6: attempt {} rejected: {}", attempt + 1, reason));
                last = reason;
            }
        }
    }
    Err(CasError::RetriesExhausted(cfg.retry_limit, last))
}

/// One seeded construction attempt; any degeneracy aborts with the failed
/// test's name so the retry log pinpoints it.
fn construct(fp: &Fp, rng: &mut ChaCha12Rng) -> std::result::Result<Configuration, String> {
    let p3 = p3_ring();
    let err = |m: &str| m.to_string();
    let f = |t: &str| crate::parse::parse_poly(fp, &p3, t).expect("fixed polynomial");

    // (1) the standard twisted cubic
    let c1 = Ideal::new(
        &p3,
        vec![
            f("s_1^2 - s_0*s_2"),
            f("s_1*s_2 - s_0*s_3"),
            f("s_2^2 - s_1*s_3"),
        ],
    );

    // (2) five distinct points on it
    let mut params: Vec<u64> = Vec::new();
    while params.len() < 5 {
        let t = rng.gen_range(0..fp.modulus());
        if !params.contains(&t) {
            params.push(t);
        }
    }
    let q_points: Vec<ProjectivePoint> = params
        .iter()
        .map(|&t| {
            let t2 = fp.mul(t, t);
            let t3 = fp.mul(t2, t);
            ProjectivePoint::new(fp, vec![1, t, t2, t3]).expect("nonzero")
        })
        .collect();

    // (3) two random smooth quadrics through C1 and the first chord
    let quads_c1 = graded::graded_piece(fp, &c1, 2).map_err(|e| e.to_string())?;
    let g6 = random_combo(fp, rng, &quads_c1);
    let g7 = random_combo(fp, rng, &quads_c1);
    if !quadric_is_smooth(fp, &g6) || !quadric_is_smooth(fp, &g7) {
        return Err(err("singular quadric through C1"));
    }
    let r1 = liaison(fp, &g6, &g7, &c1).map_err(|e| e.to_string())?;
    if hilbert::dim_deg(fp, &r1).map_err(|e| e.to_string())? != (1, 1) {
        return Err(err("residual of C1 is not a line"));
    }
    for q in &q_points {
        if r1.generators().iter().all(|g| g.eval(fp, q.coords()) == 0) {
            return Err(err("first chord passes through a base point"));
        }
    }
    if !chord_is_reduced(fp, &r1, &c1).map_err(|e| e.to_string())? {
        return Err(err("r1 is tangent to C1"));
    }

    // (4) residual cubics through the five points by liaison on each quadric
    let c2 = liaison_cubic(fp, rng, &c1, &g6, &q_points)?;
    let c3 = liaison_cubic(fp, rng, &c1, &g7, &q_points)?;
    if c2.ideal_eq(fp, &c1).map_err(|e| e.to_string())?
        || c3.ideal_eq(fp, &c1).map_err(|e| e.to_string())?
        || c2.ideal_eq(fp, &c3).map_err(|e| e.to_string())?
    {
        return Err(err("residual cubics are not distinct"));
    }

    // (5) the unique quadric through C2 and C3, then the remaining chords
    let q2 = graded::graded_piece(fp, &c2, 2).map_err(|e| e.to_string())?;
    let q3 = graded::graded_piece(fp, &c3, 2).map_err(|e| e.to_string())?;
    let common = graded::span_intersection(fp, &p3, &q2, &q3, 2);
    if common.len() != 1 {
        return Err(err("quadrics through C2 and C3 do not meet in a single class"));
    }
    let g8 = common[0].clone();
    if !quadric_is_smooth(fp, &g8) {
        return Err(err("third quadric is a cone (degenerate case)"));
    }
    let r2 = liaison(fp, &g6, &g8, &c2).map_err(|e| e.to_string())?;
    let r3 = liaison(fp, &g7, &g8, &c3).map_err(|e| e.to_string())?;
    for (name, rr) in [("r2", &r2), ("r3", &r3)] {
        if hilbert::dim_deg(fp, rr).map_err(|e| e.to_string())? != (1, 1) {
            return Err(format!("residual {name} is not a line"));
        }
    }
    for (name, rr, cc) in [("r2", &r2, &c2), ("r3", &r3, &c3)] {
        if !chord_is_reduced(fp, rr, cc).map_err(|e| e.to_string())? {
            return Err(format!("{name} is tangent to its cubic (degenerate case)"));
        }
    }

    // (6) chord crossing points; concurrency is the degenerate case (ii)/(iii)
    let chords = [r1, r2, r3];
    let mut b_points = Vec::new();
    for (i, j) in QUADRIC_PAIRS {
        let sum = chords[i - 1]
            .sum(&chords[j - 1])
            .map_err(|e| e.to_string())?;
        let sat = elim::saturate_irrelevant(fp, &sum).map_err(|e| e.to_string())?;
        if hilbert::dim_deg(fp, &sat).map_err(|e| e.to_string())? != (0, 1) {
            return Err(format!("chords r{i}, r{j} do not meet in a single point"));
        }
        b_points.push(point_of_ideal(fp, &sat).map_err(|e| e.to_string())?);
    }
    if b_points[0].same_point(fp, &b_points[1]) || b_points[0].same_point(fp, &b_points[2]) {
        let kind = if quadric_is_smooth(fp, &g8) {
            "concurrent chords with smooth third quadric"
        } else {
            "concurrent chords at a cone vertex"
        };
        return Err(format!("{kind} (degenerate case)"));
    }

    Ok(Configuration {
        q_points,
        cubics: [c1, c2, c3],
        quadrics: [g6, g7, g8],
        chords,
        b_points: [
            b_points[0].clone(),
            b_points[1].clone(),
            b_points[2].clone(),
        ],
        attempts_used: 0,
    })
}

/// Residual of a known component in a complete intersection of two surfaces.
fn liaison(fp: &Fp, a: &Polynomial, b: &Polynomial, component: &Ideal) -> Result<Ideal> {
    let ci = Ideal::new(component.ring(), vec![a.clone(), b.clone()]);
    elim::quotient_ideal(fp, &ci, component)
}

/// Liaison construction of a second twisted cubic through the five points:
/// pick a cubic surface through C1 whose restriction to the quadric is
/// singular at each point (derivative along a tangent direction of the
/// quadric transverse to C1 vanishes), then take the residual.
fn liaison_cubic(
    fp: &Fp,
    rng: &mut ChaCha12Rng,
    c1: &Ideal,
    quadric: &Polynomial,
    q_points: &[ProjectivePoint],
) -> std::result::Result<Ideal, String> {
    let p3 = p3_ring();
    let cubics = graded::graded_piece(fp, c1, 3).map_err(|e| e.to_string())?;
    if cubics.len() != 10 {
        return Err("cubics through C1 have unexpected dimension".into());
    }
    // one linear condition per point: directional derivative along u_h
    let mut rows = Vec::new();
    for q in q_points {
        let u = transverse_direction(fp, c1, quadric, q).map_err(|e| e.to_string())?;
        let row: Vec<u64> = cubics
            .iter()
            .map(|s| {
                let mut acc = 0u64;
                for (l, &ul) in u.iter().enumerate() {
                    let d = s.partial_derivative(fp, l);
                    acc = fp.add(acc, fp.mul(ul, d.eval(fp, q.coords())));
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    let mut m = Matrix::from_rows(rows, cubics.len());
    let (_res, kernel) = m.rref_with_kernel(fp);
    if kernel.len() != 5 {
        return Err(format!(
            "tangency conditions cut dimension {} instead of 5",
            kernel.len()
        ));
    }
    // a random cubic satisfying the conditions
    let mut coeffs = vec![0u64; cubics.len()];
    for v in &kernel {
        let c = rng.gen_range(1..fp.modulus());
        for (i, &x) in v.iter().enumerate() {
            coeffs[i] = fp.add(coeffs[i], fp.mul(c, x));
        }
    }
    let mut s = Polynomial::zero(&p3);
    for (i, &c) in coeffs.iter().enumerate() {
        s = s.add(fp, &cubics[i].scale(fp, c)).expect("same ring");
    }
    if s.is_zero() {
        return Err("degenerate random cubic".into());
    }
    let c2 = liaison(fp, quadric, &s, c1).map_err(|e| e.to_string())?;
    let (d, dg) = hilbert::dim_deg(fp, &c2).map_err(|e| e.to_string())?;
    if (d, dg) != (1, 3) {
        return Err(format!("residual has (dim, deg) = ({d}, {dg}), not a cubic"));
    }
    let h = hilbert::hilbert(fp, &c2).map_err(|e| e.to_string())?;
    if h.curve_genus().map_err(|e| e.to_string())? != 0 {
        return Err("residual cubic has wrong genus".into());
    }
    if !graded::graded_piece(fp, &c2, 1)
        .map_err(|e| e.to_string())?
        .is_empty()
    {
        return Err("residual cubic is degenerate (lies in a plane)".into());
    }
    let gb = c2.gb(fp).map_err(|e| e.to_string())?;
    for q in q_points {
        if !gb.polys(fp).iter().all(|g| g.eval(fp, q.coords()) == 0) {
            return Err("residual cubic misses a base point".into());
        }
    }
    // smoothness: a twisted cubic has empty singular locus
    let sing = geom::singular_locus(fp, &c2).map_err(|e| e.to_string())?;
    let hs = hilbert::hilbert(fp, &sing).map_err(|e| e.to_string())?;
    if hs.proj_dim >= 0 {
        return Err("residual cubic is singular".into());
    }
    Ok(c2)
}

/// A direction in the tangent plane of the quadric at q, transverse to the
/// tangent line of the cubic there.
fn transverse_direction(
    fp: &Fp,
    cubic: &Ideal,
    quadric: &Polynomial,
    q: &ProjectivePoint,
) -> Result<Vec<u64>> {
    // tangent plane of the quadric: gradient row
    let grad: Vec<u64> = (0..4)
        .map(|l| quadric.partial_derivative(fp, l).eval(fp, q.coords()))
        .collect();
    let mut gm = Matrix::from_rows(vec![grad], 4);
    let (_r, plane) = gm.rref_with_kernel(fp);
    // tangent line of the cubic: kernel of its Jacobian at q
    let tangent = tangent_space(fp, cubic, q)?;
    // pick a plane direction outside the tangent space of the cubic
    for cand in &plane {
        let mut rows = tangent.clone();
        rows.push(cand.clone());
        let mut m = Matrix::from_rows(rows.clone(), 4);
        if m.rref(fp).rank == rows.len() {
            return Ok(cand.clone());
        }
    }
    Err(CasError::Geometry(
        "no transverse direction in the quadric tangent plane".into(),
    ))
}

/// Basis of the (affine cone of the) tangent space of a curve at a smooth
/// point: kernel of the Jacobian of its generators.
fn tangent_space(fp: &Fp, curve: &Ideal, q: &ProjectivePoint) -> Result<Vec<Vec<u64>>> {
    let rows: Vec<Vec<u64>> = curve
        .generators()
        .iter()
        .map(|g| {
            (0..4)
                .map(|l| g.partial_derivative(fp, l).eval(fp, q.coords()))
                .collect()
        })
        .collect();
    let mut m = Matrix::from_rows(rows, 4);
    let (_r, kernel) = m.rref_with_kernel(fp);
    if kernel.len() != 2 {
        return Err(CasError::Geometry(format!(
            "curve not smooth at the point (tangent dimension {})",
            kernel.len()
        )));
    }
    Ok(kernel)
}

/// Direction vector of the tangent line of a space curve at a smooth point:
/// a kernel vector independent of the point itself.
fn tangent_direction(fp: &Fp, curve: &Ideal, q: &ProjectivePoint) -> Result<Vec<u64>> {
    let t = tangent_space(fp, curve, q)?;
    for v in &t {
        let mut m = Matrix::from_rows(vec![q.coords().to_vec(), v.clone()], 4);
        if m.rref(fp).rank == 2 {
            return Ok(v.clone());
        }
    }
    Err(CasError::Geometry("tangent space collapsed to the point".into()))
}

/// Tangent plane of a smooth quadric at a point of it, as a linear form.
fn tangent_plane(fp: &Fp, quadric: &Polynomial, q: &ProjectivePoint) -> Result<Polynomial> {
    let p3 = p3_ring();
    let terms: Vec<(crate::monomial::Monomial, u64)> = (0..4)
        .map(|l| {
            (
                crate::monomial::Monomial::var(4, l, 1),
                quadric.partial_derivative(fp, l).eval(fp, q.coords()),
            )
        })
        .filter(|(_, c)| *c != 0)
        .collect();
    if terms.is_empty() {
        return Err(CasError::Geometry("vanishing gradient on the quadric".into()));
    }
    Ok(Polynomial::from_terms(&p3, fp, terms))
}

/// Smoothness of a quadric surface: full rank of its Gram matrix.
pub fn quadric_is_smooth(fp: &Fp, g: &Polynomial) -> bool {
    if g.is_zero() || g.degree() != 2 {
        return false;
    }
    let two_inv = fp.inv(2).expect("odd prime");
    let mut gram = Matrix::zero(4, 4);
    for (m, c) in g.terms() {
        let vars: Vec<usize> = (0..4).filter(|&i| m.exp(i) > 0).collect();
        if vars.len() == 1 {
            gram[(vars[0], vars[0])] = *c;
        } else {
            let h = fp.mul(*c, two_inv);
            gram[(vars[0], vars[1])] = h;
            gram[(vars[1], vars[0])] = h;
        }
    }
    gram.rref(fp).rank == 4
}

/// The length-2 chord intersection is reduced: the binary divisor cut on the
/// chord by the cubic is squarefree.
fn chord_is_reduced(fp: &Fp, chord: &Ideal, cubic: &Ideal) -> Result<bool> {
    let scheme = elim::saturate_irrelevant(fp, &chord.sum(cubic)?)?;
    if hilbert::dim_deg(fp, &scheme)? != (0, 2) {
        return Ok(false);
    }
    // two independent points on the line, from its two linear forms
    let lin = graded::graded_piece(fp, chord, 1)?;
    if lin.len() != 2 {
        return Err(CasError::Geometry("chord ideal is not a line".into()));
    }
    let rows: Vec<Vec<u64>> = lin
        .iter()
        .map(|g| {
            (0..4)
                .map(|l| {
                    g.terms()
                        .iter()
                        .find(|(m, _)| m.exp(l) == 1)
                        .map(|(_, c)| *c)
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut m = Matrix::from_rows(rows, 4);
    let (_r, kernel) = m.rref_with_kernel(fp);
    if kernel.len() != 2 {
        return Err(CasError::Geometry("chord ideal is not a line".into()));
    }
    let a = ProjectivePoint::new(fp, kernel[0].clone())?;
    let b = ProjectivePoint::new(fp, kernel[1].clone())?;
    let (_uring, restricted) = geom::restrict_to_pencil(fp, scheme.generators(), &a, &b)?;
    match geom::binary_gcd(fp, &restricted) {
        None => Ok(false),
        Some(d) => Ok(d.degree() == 2 && geom::binary_squarefree(fp, &d)),
    }
}

fn random_combo(fp: &Fp, rng: &mut ChaCha12Rng, basis: &[Polynomial]) -> Polynomial {
    let ring = basis[0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for b in basis {
        let c = rng.gen_range(0..fp.modulus());
        acc = acc.add(fp, &b.scale(fp, c)).expect("same ring");
    }
    acc
}

/// Coordinates of the single point cut out by a (0,1) ideal.
fn point_of_ideal(fp: &Fp, ideal: &Ideal) -> Result<ProjectivePoint> {
    let lin = graded::graded_piece(fp, ideal, 1)?;
    if lin.len() != 3 {
        return Err(CasError::Geometry(format!(
            "point ideal has {} independent linear forms",
            lin.len()
        )));
    }
    let rows: Vec<Vec<u64>> = lin
        .iter()
        .map(|g| {
            (0..4)
                .map(|l| {
                    g.terms()
                        .iter()
                        .find(|(m, _)| m.exp(l) == 1)
                        .map(|(_, c)| *c)
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut m = Matrix::from_rows(rows, 4);
    let (_r, kernel) = m.rref_with_kernel(fp);
    if kernel.len() != 1 {
        return Err(CasError::Geometry("not a single point".into()));
    }
    ProjectivePoint::new(fp, kernel[0].clone())
}

//! Genus-9 pipeline: septic surfaces double along the six edges of two fixed
//! trihedra, rebuilt directly in P^3, their P^9 image of degree 16, the eight
//! quadruple points, and the sixteen-line association graph.

use crate::elim;
use crate::error::Result;
use crate::field::Fp;
use crate::geom::{ProjectivePoint, RationalMap};
use crate::graded;
use crate::hilbert;
use crate::ideal::{projective_ring, Ideal};
use crate::poly::Polynomial;
use crate::scenario::common::*;
use crate::scenario::config::ScenarioConfig;
use crate::scenario::report::{Runner, ScenarioReport};

pub fn run(cfg: &ScenarioConfig) -> ScenarioReport {
    let mut runner = Runner::new(
        "fano9",
        cfg.prime,
        cfg.seed,
        cfg.mode_label_for("fano9"),
        cfg.checks.clone(),
    );
    match run_inner(cfg, &mut runner) {
        Ok(()) => {}
        Err(e) => runner.error("engine", "scenario aborted by engine error", e.to_string()),
    }
    runner.finish()
}

struct Trihedra {
    /// faces of T then T' (f1, f2, f3, f1', f2', f3')
    faces: Vec<Polynomial>,
    /// six double edges
    edges: Vec<Ideal>,
    /// the nine lines r_ij = f_i cap f'_j, keyed (i, j) with 1-based indices
    r_lines: Vec<((usize, usize), Ideal)>,
    v: ProjectivePoint,
    vp: ProjectivePoint,
}

fn build_trihedra(fp: &Fp) -> Result<Trihedra> {
    let p3 = p3_ring();
    let f = |t: &str| crate::parse::parse_poly(fp, &p3, t);
    let faces = vec![
        f("s_0 - 55*s_1 + 34*s_2")?,
        f("s_0 - 21*s_1 + 13*s_2")?,
        f("s_0")?,
        f("s_3")?,
        f("s_1 + s_3")?,
        f("s_2 + s_3")?,
    ];
    let mut edges = Vec::new();
    for (a, b) in [(0usize, 1usize), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)] {
        edges.push(Ideal::new(&p3, vec![faces[a].clone(), faces[b].clone()]));
    }
    let mut r_lines = Vec::new();
    for i in 1..=3usize {
        for j in 1..=3usize {
            r_lines.push((
                (i, j),
                Ideal::new(&p3, vec![faces[i - 1].clone(), faces[3 + j - 1].clone()]),
            ));
        }
    }
    Ok(Trihedra {
        faces,
        edges,
        r_lines,
        v: ProjectivePoint::coordinate(4, 3),
        vp: ProjectivePoint::coordinate(4, 0),
    })
}

fn run_inner(cfg: &ScenarioConfig, r: &mut Runner) -> Result<()> {
    let fp = cfg.field()?;
    let p3 = p3_ring();
    let th = build_trihedra(&fp)?;

    // construction sanity: the three planes of each trihedron meet at the vertex
    r.check_true(
        "c0.vertices",
        "saturating the face sums of each trihedron yields its vertex",
        || {
            let t = Ideal::new(&p3, th.faces[..3].to_vec());
            let tp = Ideal::new(&p3, th.faces[3..].to_vec());
            let vt = elim::saturate_irrelevant(&fp, &t)?;
            let vtp = elim::saturate_irrelevant(&fp, &tp)?;
            Ok(vt.ideal_eq(&fp, &th.v.ideal(&fp, &p3))?
                && vtp.ideal_eq(&fp, &th.vp.ideal(&fp, &p3))?)
        },
    );

    // (a) the septic system
    let system = r.phase("linear_system", |_r| {
        let conds: Vec<(Ideal, u8)> = th.edges.iter().map(|e| (e.clone(), 2)).collect();
        graded::linear_system(&fp, &p3, &conds, 7)
    })?;
    r.check_eq(
        "a.system_dim",
        "septics double along the six trihedra edges form a 10-dimensional space",
        10,
        || Ok(system.len() as i64),
    );

    // (b) the stated shape of the system
    let shaped = r.phase("shape", |_r| shape_members(&fp, &th))?;
    for (k, (label, member)) in shaped.iter().enumerate() {
        r.check_true(
            &format!("b{}.shape_{label}", k + 1),
            &format!("{label} lies in the septic system"),
            || Ok(graded::in_span(&fp, &p3, &system, member)),
        );
    }
    r.check_true(
        "b11.shape_spans",
        "the ten shaped members span the whole system",
        || {
            let members: Vec<Polynomial> = shaped.iter().map(|(_, m)| m.clone()).collect();
            Ok(graded::same_span(&fp, &p3, &members, &system))
        },
    );

    // (c) the nine lines r_ij lie in the base locus
    for ((i, j), line) in &th.r_lines {
        r.check_true(
            &format!("c.r{i}{j}_in_base"),
            &format!("line r_{i}{j} lies in the base locus of the septic system"),
            || {
                let gb = line.gb(&fp)?;
                Ok(system.iter().all(|f| gb.reduces_to_zero(&fp, f)))
            },
        );
    }

    // (d) a random member is double along the six edges, triple at both vertices
    let mut rng = rng_for(cfg.seed, "member9");
    let member = random_member(&fp, &mut rng, &system);
    for (k, e) in th.edges.iter().enumerate() {
        r.check_true(
            &format!("d.double_edge{}", k + 1),
            "random member is double along a trihedron edge",
            || graded::vanishes_to_order(&fp, &member, e, 2),
        );
    }
    r.check_true("d.triple_v", "random member is triple at v", || {
        graded::vanishes_to_order(&fp, &member, &th.v.ideal(&fp, &p3), 3)
    });
    r.check_true("d.triple_vp", "random member is triple at v'", || {
        graded::vanishes_to_order(&fp, &member, &th.vp.ideal(&fp, &p3), 3)
    });

    // (e) the image threefold in P^9
    let p9 = projective_ring("w", 10);
    let map = RationalMap::new(&p3, &p9, system.clone(), None)?;
    let image = r.phase("image", |r| {
        compute_image(&fp, r, &map, cfg.effective_mode("fano9"), cfg.seed, "fano9")
    })?;
    r.artifact("system", &Ideal::new(&p3, system.clone()));
    r.artifact("image", &image);
    r.check_eq(
        "e.image_dim_deg",
        "image of the septic map has projective (dim, degree) = (3, 16)",
        "(3, 16)".to_string(),
        || {
            let h = hilbert::hilbert(&fp, &image)?;
            Ok(format!("({}, {})", h.proj_dim, h.degree))
        },
    );

    // (f) the eight singular points: images of the six faces and the two
    // exceptional divisors over the vertices
    let points = r.phase("points", |_r| singular_points(&fp, &map, &th))?;
    r.check_eq(
        "f0.points_found",
        "six contracted faces and two contracted vertex divisors give 8 points",
        8,
        || Ok(points.len() as i64),
    );
    r.check_true("f1.points_distinct", "the eight points are pairwise distinct", || {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].1.same_point(&fp, &points[j].1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    // spec'd cross-check: the image of face f1 via elimination equals P2
    r.check_true(
        "f2.face_image_elimination",
        "elimination image of face f1 equals the proportionality point P2",
        || {
            let z = Ideal::new(&p3, vec![th.faces[0].clone()]);
            let via_elim = map.apply_to_subvariety(&fp, &z)?;
            let p2 = points
                .iter()
                .find(|(l, _)| l == "P2")
                .expect("P2 present");
            via_elim.ideal_eq(&fp, &p2.1.ideal(&fp, &p9))
        },
    );
    r.phase("tangent_cones", |r| {
        let mults = cone_multiplicities(&fp, &image, &points)?;
        for ((label, _), mult) in points.iter().zip(mults) {
            r.check_eq(
                &format!("f3.cone_{}", label.replace('\'', "p")),
                &format!("tangent cone at {label} has degree 4"),
                4,
                || Ok(mult),
            );
        }
        Ok::<(), crate::CasError>(())
    })?;

    // (g) association graph: a pair is joined exactly when one point is primed
    // and the other is not (16 lines, 4 partners each)
    r.phase("lines", |r| {
        // witness for the P1 - P1' edge: the line joining the two trihedra
        // vertices maps onto the line joining their images
        r.check_true(
            "g0.vertex_line_witness",
            "the image of the line through v and v' is the line P1' - P1",
            || {
                let src_line = crate::geom::line_through(&fp, &p3, &th.v, &th.vp)?;
                let img = map.apply_to_subvariety(&fp, &src_line)?;
                let p1 = &points.iter().find(|(l, _)| l == "P1").unwrap().1;
                let p1p = &points.iter().find(|(l, _)| l == "P1'").unwrap().1;
                let expect = crate::geom::line_through(&fp, &p9, p1, p1p)?;
                img.ideal_eq(&fp, &expect)
            },
        );
        let pairs = association_partners(&fp, &image, &p9, &points)?;
        let mut partners = vec![0usize; points.len()];
        for ((i, j), contained) in &pairs {
            let (a, b) = (&points[*i].0, &points[*j].0);
            let expected = a.ends_with('\'') != b.ends_with('\'');
            r.check_eq(
                &format!(
                    "g.line_{}_{}",
                    a.replace('\'', "p"),
                    b.replace('\'', "p")
                ),
                &format!("line {a} - {b} lies on the threefold: {expected}"),
                expected,
                || Ok(*contained),
            );
            if *contained {
                partners[*i] += 1;
                partners[*j] += 1;
            }
        }
        for (k, (label, _)) in points.iter().enumerate() {
            r.check_eq(
                &format!("g.partners_{}", label.replace('\'', "p")),
                &format!("{label} is associated with exactly 4 of the other singular points"),
                4,
                || Ok(partners[k] as i64),
            );
        }
        Ok::<(), crate::CasError>(())
    })?;

    // (h) uniqueness: sextics double along the six edges form a pencil point
    r.check_eq(
        "h1.unique_sextic_dim",
        "sextics double along the six edges form a 1-dimensional space",
        1,
        || {
            let conds: Vec<(Ideal, u8)> = th.edges.iter().map(|e| (e.clone(), 2)).collect();
            Ok(graded::linear_system(&fp, &p3, &conds, 6)?.len() as i64)
        },
    );
    r.check_true(
        "h2.unique_sextic_is_trihedra",
        "that unique sextic is the union of the two trihedra",
        || {
            let conds: Vec<(Ideal, u8)> = th.edges.iter().map(|e| (e.clone(), 2)).collect();
            let sys6 = graded::linear_system(&fp, &p3, &conds, 6)?;
            let mut prod = Polynomial::one(&p3);
            for f in &th.faces {
                prod = prod.mul(&fp, f)?;
            }
            Ok(graded::same_span(&fp, &p3, &sys6, &[prod]))
        },
    );

    // blow-up cross-check
    r.check_eq(
        "i.chow_genus",
        "blow-up model genus equals 9 and matches degree/2 + 1",
        "genus 9, degree 16".to_string(),
        || {
            let m = crate::chow::model_fano9();
            let s = crate::chow::classes::septic_system_9(&m)?;
            Ok(format!(
                "genus {}, degree {}",
                crate::chow::genus(&s)?,
                crate::chow::triple(&s, &s, &s)?
            ))
        },
    );
    Ok(())
}

/// The ten members of the stated shape: the four products
/// f1 f2 f3 f1' f2' f3' s_i and the six squared-face products.
fn shape_members(fp: &Fp, th: &Trihedra) -> Result<Vec<(String, Polynomial)>> {
    let p3 = p3_ring();
    let mut all = Polynomial::one(&p3);
    for f in &th.faces {
        all = all.mul(fp, f)?;
    }
    let mut out = Vec::new();
    for i in 0..4 {
        out.push((
            format!("T.T'.s{i}"),
            all.mul(fp, &Polynomial::variable(&p3, i))?,
        ));
    }
    let tri = |idx: [usize; 3]| -> Result<Polynomial> {
        let mut p = Polynomial::one(&p3);
        for k in idx {
            p = p.mul(fp, &th.faces[k])?;
        }
        Ok(p)
    };
    let tprod = tri([0, 1, 2])?;
    let tpprod = tri([3, 4, 5])?;
    // T' times squares of two faces of T, and symmetrically
    for (a, b, label) in [(2usize, 1usize, "f3sq.f2sq"), (0, 2, "f1sq.f3sq"), (0, 1, "f1sq.f2sq")] {
        let sq = th.faces[a]
            .mul(fp, &th.faces[a])?
            .mul(fp, &th.faces[b].mul(fp, &th.faces[b])?)?;
        out.push((format!("T'.{label}"), tpprod.mul(fp, &sq)?));
    }
    for (a, b, label) in [
        (5usize, 4usize, "f3psq.f2psq"),
        (3, 5, "f1psq.f3psq"),
        (3, 4, "f1psq.f2psq"),
    ] {
        let sq = th.faces[a]
            .mul(fp, &th.faces[a])?
            .mul(fp, &th.faces[b].mul(fp, &th.faces[b])?)?;
        out.push((format!("T.{label}"), tprod.mul(fp, &sq)?));
    }
    Ok(out)
}

/// The eight singular points: P1 = image of the exceptional divisor over v',
/// P1' over v, P_{i+1} = image of face f_i, P'_{i+1} of face f'_i.
fn singular_points(
    fp: &Fp,
    map: &RationalMap,
    th: &Trihedra,
) -> Result<Vec<(String, ProjectivePoint)>> {
    let p3 = p3_ring();
    let mut out = Vec::new();
    let p1 = map
        .exceptional_image(fp, &th.vp)?
        .ok_or_else(|| crate::CasError::Geometry("vertex v' divisor not contracted".into()))?;
    out.push(("P1".to_string(), p1));
    for i in 0..3 {
        let z = Ideal::new(&p3, vec![th.faces[i].clone()]);
        let p = map
            .contracted_image(fp, &z)?
            .ok_or_else(|| crate::CasError::Geometry(format!("face f{} not contracted", i + 1)))?;
        out.push((format!("P{}", i + 2), p));
    }
    let p1p = map
        .exceptional_image(fp, &th.v)?
        .ok_or_else(|| crate::CasError::Geometry("vertex v divisor not contracted".into()))?;
    out.push(("P1'".to_string(), p1p));
    for i in 0..3 {
        let z = Ideal::new(&p3, vec![th.faces[3 + i].clone()]);
        let p = map
            .contracted_image(fp, &z)?
            .ok_or_else(|| crate::CasError::Geometry(format!("face f{}' not contracted", i + 1)))?;
        out.push((format!("P{}'", i + 2), p));
    }
    Ok(out)
}

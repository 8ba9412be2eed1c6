//! Genus-7 pipeline: sextic surfaces double along the tetrahedron edges and
//! containing a fixed plane cubic, realized as the projection of the genus-13
//! threefold from the span of the image of that cubic; degree-12 image in
//! P^7, the eight singular points at their expected coordinates, the
//! 24-line association graph, and the sample-surface tangent-cone analysis.

use crate::error::Result;
use crate::field::Fp;
use crate::geom::{linear_span, tangent_cone, ProjectivePoint, RationalMap};
use crate::graded;
use crate::hilbert;
use crate::ideal::{projective_ring, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::scenario::common::*;
use crate::scenario::config::ScenarioConfig;
use crate::scenario::report::{Runner, ScenarioReport};
use rand::Rng;

const DELTA_CUBIC: &str =
    "s_1^2*s_2 + s_1*s_2^2 + s_1^2*s_3 + s_1*s_2*s_3 + s_2^2*s_3 + s_1*s_3^2 + s_2*s_3^2";

/// The sample sextic through the fixed cubic, double along the edges.
const SAMPLE_SEXTIC: &str = "s_0^2*s_1^2*s_2^2 - s_0^3*s_1*s_2*s_3 - s_0*s_1^3*s_2*s_3 \
     - 2*s_0*s_1*s_2^3*s_3 + s_0^2*s_1^2*s_3^2 + 2*s_0^2*s_2^2*s_3^2 + s_0*s_1*s_2^2*s_3^2 \
     + 2*s_1^2*s_2^2*s_3^2 - 2*s_0*s_1*s_2*s_3^3";

/// Expected coordinates of the eight singular points of the projected
/// threefold, in the order P1..P4, P1'..P4'.
const EXPECTED_POINTS: [[i64; 8]; 8] = [
    [0, 0, 0, 0, 1, -1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [1, 0, 0, -2, 0, 0, 4, 2],
    [1, 0, -2, 0, 4, 0, 0, 2],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [1, 2, 0, -2, 2, -2, 4, 4],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
];

/// Intersection points of the plane s_0+s_1+s_2+s_3 with the six edges.
const EDGE_POINTS: [((usize, usize), [i64; 4]); 6] = [
    ((0, 1), [0, 0, -1, 1]),
    ((0, 2), [0, -1, 0, 1]),
    ((0, 3), [0, -1, 1, 0]),
    ((1, 2), [-1, 0, 0, 1]),
    ((1, 3), [-1, 0, 1, 0]),
    ((2, 3), [-1, 1, 0, 0]),
];

pub fn run(cfg: &ScenarioConfig) -> ScenarioReport {
    let mut runner = Runner::new(
        "fano7",
        cfg.prime,
        cfg.seed,
        cfg.mode_label_for("fano7"),
        cfg.checks.clone(),
    );
    match run_inner(cfg, &mut runner) {
        Ok(()) => {}
        Err(e) => runner.error("engine", "scenario aborted by engine error", e.to_string()),
    }
    runner.finish()
}

fn run_inner(cfg: &ScenarioConfig, r: &mut Runner) -> Result<()> {
    let fp = cfg.field()?;
    let p3 = p3_ring();
    let f = |t: &str| crate::parse::parse_poly(&fp, &p3, t);
    let map13 = sextic_map(&fp);
    let edges = tetrahedron_edges(&p3);
    let delta = Ideal::new(&p3, vec![f("s_0 + s_1 + s_2 + s_3")?, f(DELTA_CUBIC)?]);

    // (a) the cubic meets each edge at the expected single point
    for ((i, j), coords) in EDGE_POINTS {
        let edge = &edges.iter().find(|((a, b), _)| (*a, *b) == (i, j)).unwrap().1;
        let pt = ProjectivePoint::from_i64(&fp, &coords)?;
        r.check_true(
            &format!("a.delta_meets_l{i}{j}"),
            &format!("delta + l{i}{j} equals the point p{i}{j}"),
            || {
                let sum = delta.sum(edge)?;
                sum.ideal_eq(&fp, &pt.ideal(&fp, &p3))
            },
        );
    }
    r.check_eq(
        "a.delta_dim_deg_genus",
        "the fixed plane cubic is a (1, 3, 1) curve",
        "(1, 3, 1)".to_string(),
        || {
            let (d, dg, g) = hilbert::dim_deg_genus(&fp, &delta)?;
            Ok(format!("({d}, {dg}, {g})"))
        },
    );

    // (b) the linear system: sextics double along the edges containing delta
    let system = r.phase("linear_system", |_r| {
        let mut conds: Vec<(Ideal, u8)> = edges.iter().map(|(_, e)| (e.clone(), 2)).collect();
        conds.push((delta.clone(), 1));
        graded::linear_system(&fp, &p3, &conds, 6)
    })?;
    r.check_eq(
        "b.system_dim",
        "sextics double along the edges and containing delta form an 8-dimensional space",
        8,
        || Ok(system.len() as i64),
    );

    // (c) image of the cubic under the genus-13 map, and its span
    let nudelta = r.phase("nudelta", |_r| map13.apply_to_subvariety(&fp, &delta))?;
    r.check_eq(
        "c1.nudelta_dim_deg_genus",
        "the image of delta in P^13 is a (1, 6, 1) curve",
        "(1, 6, 1)".to_string(),
        || {
            let (d, dg, g) = hilbert::dim_deg_genus(&fp, &nudelta)?;
            Ok(format!("({d}, {dg}, {g})"))
        },
    );
    let span = linear_span(&fp, &nudelta)?;
    r.check_eq(
        "c2.span_is_p5",
        "the linear span of the image curve is a P^5 (8 independent linear forms)",
        "(5, 1) by 8 forms".to_string(),
        || {
            let (d, dg) = hilbert::dim_deg(&fp, &span)?;
            Ok(format!("({d}, {dg}) by {} forms", span.generators().len()))
        },
    );
    for (label, ci) in P13_SINGULAR_POINTS {
        r.check_eq(
            &format!("c3.nudelta_avoids_{}", label.replace('\'', "p")),
            &format!("the image curve avoids the singular point {label}"),
            false,
            || {
                let q = ProjectivePoint::coordinate(14, ci);
                q.ideal(&fp, &map13.target).contains_ideal(&fp, &nudelta)
            },
        );
    }

    // the projection from the span, with the canonical reduced-basis order
    let proj_forms = projection_forms(&span);
    let p7 = projective_ring("w", 8);
    let proj = RationalMap::new(&map13.target, &p7, proj_forms, None)?;
    let m7 = map13.compose(&fp, &proj)?;
    r.check_eq(
        "c4.composite_degree",
        "the composed map has degree 6 = 6 * 1",
        6,
        || Ok(m7.degree() as i64),
    );
    r.check_true(
        "c5.composite_spans_system",
        "the composed forms span the same sextic system",
        || Ok(graded::same_span(&fp, &p3, &m7.forms, &system)),
    );

    // (d) the image threefold
    let image = r.phase("image", |r| {
        compute_image(&fp, r, &m7, cfg.effective_mode("fano7"), cfg.seed, "fano7")
    })?;
    r.artifact("system", &Ideal::new(&p3, system.clone()));
    r.artifact("image", &image);
    r.check_eq(
        "d.image_dim_deg",
        "the projected threefold has projective (dim, degree) = (3, 12)",
        "(3, 12)".to_string(),
        || {
            let h = hilbert::hilbert(&fp, &image)?;
            Ok(format!("({}, {})", h.proj_dim, h.degree))
        },
    );

    // (e) the eight singular points land on the expected coordinates
    let mut points: Vec<(String, ProjectivePoint)> = Vec::new();
    for (k, (label, ci)) in P13_SINGULAR_POINTS.iter().enumerate() {
        let q = ProjectivePoint::coordinate(14, *ci);
        let img = proj
            .eval(&fp, &q)
            .ok_or_else(|| crate::CasError::Geometry("projection undefined at point".into()))?;
        let expected = ProjectivePoint::from_i64(&fp, &EXPECTED_POINTS[k])?;
        r.check_true(
            &format!("e.coords_{}", label.replace('\'', "p")),
            &format!("projected {label} matches the expected coordinates up to scale"),
            || Ok(img.same_point(&fp, &expected)),
        );
        points.push((label.to_string(), img));
    }

    // (f) containment pattern of the 28 lines
    r.phase("lines", |r| {
        let pairs = association_partners(&fp, &image, &p7, &points)?;
        let mut partners = vec![0usize; points.len()];
        for ((i, j), contained) in &pairs {
            let (a, b) = (&points[*i].0, &points[*j].0);
            let expected = expected_association_7(a, b);
            r.check_eq(
                &format!("f.line_{}_{}", a.replace('\'', "p"), b.replace('\'', "p")),
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
                &format!("f.partners_{}", label.replace('\'', "p")),
                &format!("{label} is associated with exactly 6 of the other singular points"),
                6,
                || Ok(partners[k] as i64),
            );
        }
        Ok::<(), crate::CasError>(())
    })?;

    // (g) base locus of the composed map decomposes as delta plus the edges
    r.phase("base_locus", |r| {
        let base = Ideal::new(&p3, m7.forms.clone());
        let mut comps = vec![delta.clone()];
        comps.extend(edges.iter().map(|(_, e)| e.clone()));
        r.check_eq(
            "g.base_locus",
            "base locus = delta plus the six edges, empty residual",
            "contained, residual empty".to_string(),
            || {
                let rep = graded::verify_decomposition(&fp, &base, &comps)?;
                Ok(format!(
                    "{}, residual {}",
                    if rep.all_contained { "contained" } else { "not contained" },
                    match rep.residual_dim_deg {
                        None => "empty".to_string(),
                        Some((d, dg)) => format!("({d}, {dg})"),
                    }
                ))
            },
        );
        Ok::<(), crate::CasError>(())
    })?;

    // (h) sample-member analysis
    let xhat = f(SAMPLE_SEXTIC)?;
    r.check_eq(
        "h1.sample_dim_deg",
        "the sample sextic is a (2, 6) surface",
        "(2, 6)".to_string(),
        || {
            let i = Ideal::new(&p3, vec![xhat.clone()]);
            let (d, dg) = hilbert::dim_deg(&fp, &i)?;
            Ok(format!("({d}, {dg})"))
        },
    );
    r.check_true(
        "h2.sample_in_system",
        "the sample sextic lies in the linear system",
        || Ok(graded::in_span(&fp, &p3, &system, &xhat)),
    );
    r.check_true(
        "h3.sample_is_pullback",
        "the sample sextic is 2G0 + G4 + G6 - G7 in the composed forms",
        || {
            let combo = m7.forms[0]
                .scale(&fp, 2)
                .add(&fp, &m7.forms[4])?
                .add(&fp, &m7.forms[6])?
                .sub(&fp, &m7.forms[7])?;
            Ok(combo == xhat || combo.scale(&fp, fp.neg(1)) == xhat)
        },
    );
    let xideal = Ideal::new(&p3, vec![xhat.clone()]);
    r.phase("sample_cones", |r| {
        for k in 0..4 {
            r.check_eq(
                &format!("h4.cone_vertex{k}"),
                "tangent cone at a tetrahedron vertex has degree 3",
                3,
                || {
                    let p = ProjectivePoint::coordinate(4, k);
                    Ok(tangent_cone(&fp, &xideal, &p)?.1)
                },
            );
        }
        for ((i, j), coords) in EDGE_POINTS {
            r.check_eq(
                &format!("h5.cone_p{i}{j}"),
                "tangent cone at a plane point of the edge has degree 2",
                2,
                || {
                    let p = ProjectivePoint::from_i64(&fp, &coords)?;
                    Ok(tangent_cone(&fp, &xideal, &p)?.1)
                },
            );
        }
        Ok::<(), crate::CasError>(())
    })?;
    r.check_eq(
        "h6.sample_singular_locus",
        "singular locus contains the six edges; at most finitely many points beyond them",
        "contained, residual finite".to_string(),
        || {
            let sing = crate::geom::singular_locus(&fp, &xideal)?;
            let comps: Vec<Ideal> = edges.iter().map(|(_, e)| e.clone()).collect();
            let rep = graded::verify_decomposition(&fp, &sing, &comps)?;
            let finite = match rep.residual_dim_deg {
                None => true,
                Some((d, _)) => d <= 0,
            };
            Ok(format!(
                "{}, residual {}",
                if rep.all_contained { "contained" } else { "not contained" },
                if finite { "finite" } else { "positive-dimensional" }
            ))
        },
    );

    // (i) tangent cone at generic edge points [a:0:0:1] for three random a
    let mut rng = rng_for(cfg.seed, "edgepoint7");
    for k in 0..3 {
        let a = rng.gen_range(1..fp.modulus());
        r.check_true(
            &format!("i{}.generic_edge_cone", k + 1),
            "cone at [a:0:0:1] is the expected pair of planes through the edge",
            || {
                let p = ProjectivePoint::new(&fp, vec![a, 0, 0, 1])?;
                let (cone, mult) = tangent_cone(&fp, &xideal, &p)?;
                if mult != 2 {
                    return Ok(false);
                }
                // a^2 s1^2 - (a^3 + 2a) s1 s2 + 2 a^2 s2^2
                let a2 = fp.mul(a, a);
                let c1 = fp.neg(fp.add(fp.mul(a2, a), fp.add(a, a)));
                let expected_poly = Polynomial::from_terms(
                    &p3,
                    &fp,
                    vec![
                        (crate::monomial::Monomial::from_exps(&[0, 2, 0, 0]), a2),
                        (crate::monomial::Monomial::from_exps(&[0, 1, 1, 0]), c1),
                        (crate::monomial::Monomial::from_exps(&[0, 0, 2, 0]), fp.add(a2, a2)),
                    ],
                );
                let expected = Ideal::new(&p3, vec![expected_poly]);
                let edge12 = &edges.iter().find(|((x, y), _)| (*x, *y) == (1, 2)).unwrap().1;
                Ok(cone.ideal_eq(&fp, &expected)? && edge12.contains_ideal(&fp, &cone)?)
            },
        );
    }

    // blow-up cross-check
    r.check_eq(
        "j.chow_genus",
        "blow-up model genus equals 7 and matches degree/2 + 1",
        "genus 7, degree 12".to_string(),
        || {
            let m = crate::chow::model_fano7();
            let s = crate::chow::classes::sextic_system_7(&m)?;
            Ok(format!(
                "genus {}, degree {}",
                crate::chow::genus(&s)?,
                crate::chow::triple(&s, &s, &s)?
            ))
        },
    );
    Ok(())
}

/// Order the reduced-echelon linear forms of the span by leading variable
/// index descending; this is the canonical order matching the expected
/// coordinates of the projected singular points.
pub fn projection_forms(span: &Ideal) -> Vec<Polynomial> {
    let mut forms = span.generators().to_vec();
    forms.sort_by_key(|p| {
        let lead = p
            .leading(&MonomialOrder::Grevlex)
            .expect("nonzero linear form")
            .0
            .clone();
        std::cmp::Reverse((0..lead.nvars()).find(|&i| lead.exp(i) > 0).unwrap())
    });
    forms
}

/// Expected association: the four lines P_i - P_i' are off the threefold,
/// every other pair is joined.
pub fn expected_association_7(a: &str, b: &str) -> bool {
    let pa = a.ends_with('\'');
    let pb = b.ends_with('\'');
    let ia = a.as_bytes()[1] - b'0';
    let ib = b.as_bytes()[1] - b'0';
    !(pa != pb && ia == ib)
}

/// The fixed plane cubic used by the pipeline (shared with tests).
pub fn delta_ideal(fp: &Fp) -> Ideal {
    let p3 = p3_ring();
    let f = |t: &str| crate::parse::parse_poly(fp, &p3, t).expect("fixed polynomial");
    Ideal::new(&p3, vec![f("s_0 + s_1 + s_2 + s_3"), f(DELTA_CUBIC)])
}

/// Cross-check helper: both image modes agree on the composed map (used by
/// the engine property suite).
pub fn composed_map(fp: &Fp) -> Result<RationalMap> {
    let map13 = sextic_map(fp);
    let delta = delta_ideal(fp);
    let nudelta = map13.apply_to_subvariety(fp, &delta)?;
    let span = linear_span(fp, &nudelta)?;
    let p7 = projective_ring("w", 8);
    let proj = RationalMap::new(&map13.target, &p7, projection_forms(&span), None)?;
    map13.compose(fp, &proj)
}

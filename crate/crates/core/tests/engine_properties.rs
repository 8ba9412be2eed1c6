//! Engine property suite (the seventh exit criterion): Buchberger chain
//! condition on computed bases, saturation idempotence, elimination against a
//! Sylvester-resultant oracle, image-mode agreement, the two routes to
//! double-vanishing conditions, and field-arithmetic fuzzing.

use efverify_core::elim;
use efverify_core::field::Fp;
use efverify_core::gb::{all_spolys_reduce, groebner_engine};
use efverify_core::geom::ImageMode;
use efverify_core::graded;
use efverify_core::hilbert;
use efverify_core::ideal::{ideal_from_texts, projective_ring, Ideal};
use efverify_core::monomial::MonomialOrder;
use efverify_core::parse::parse_poly;
use efverify_core::poly::{Polynomial, Ring, RingRef};
use efverify_core::scenario::common::{p3_ring, sextic_map, tetrahedron_edges};
use rand::{Rng, SeedableRng};

/// Sylvester resultant of two polynomials in the first ring variable, as a
/// polynomial in the remaining variables. Independent oracle: dense
/// determinant by cofactor expansion.
fn sylvester_resultant(fp: &Fp, ring: &RingRef, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let sub = Ring::new(ring.vars()[1..].to_vec());
    let coeffs = |p: &Polynomial| -> Vec<Polynomial> {
        let d = p.terms().iter().map(|(m, _)| m.exp(0)).max().unwrap() as usize;
        let mut out = vec![Polynomial::zero(&sub); d + 1];
        for (m, c) in p.terms() {
            let k = m.exp(0) as usize;
            let rest = efverify_core::monomial::Monomial::from_exps(&m.exps()[1..]);
            out[k] = out[k]
                .add(fp, &Polynomial::monomial(&sub, rest, *c))
                .unwrap();
        }
        out
    };
    let fc = coeffs(f);
    let gc = coeffs(g);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n;
    let mut mat = vec![vec![Polynomial::zero(&sub); size]; size];
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + m - k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + n - k] = c.clone();
        }
    }
    det(fp, &mat)
}

fn det(fp: &Fp, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(fp, &det(fp, &minor)).unwrap();
        acc = if j % 2 == 0 {
            acc.add(fp, &term).unwrap()
        } else {
            acc.sub(fp, &term).unwrap()
        };
    }
    acc
}

#[test]
fn criterion_7_engine_property_suite() {
    let t0 = std::time::Instant::now();
    let fp = Fp::default();
    let mut ok = true;
    let mut parts: Vec<String> = Vec::new();

    // --- Buchberger chain condition on a corpus of computed bases
    {
        let p3 = p3_ring();
        let corpus: Vec<Ideal> = vec![
            ideal_from_texts(
                &fp,
                &p3,
                &["s_1^2 - s_0*s_2", "s_1*s_2 - s_0*s_3", "s_2^2 - s_1*s_3"],
            )
            .unwrap(),
            efverify_core::scenario::fano7::delta_ideal(&fp),
            ideal_from_texts(&fp, &p3, &["s_0*s_1 - s_2*s_3", "s_0^3 + s_1^3 + s_2^3"]).unwrap(),
        ];
        let mut chain_ok = true;
        for (i, ideal) in corpus.iter().enumerate() {
            for order in [MonomialOrder::Grevlex, MonomialOrder::Block(2)] {
                let basis =
                    groebner_engine(&fp, &order, ideal.generators(), Default::default()).unwrap();
                if !all_spolys_reduce(&fp, &order, &basis) {
                    chain_ok = false;
                    println!("  S-polynomial failure on corpus ideal {i} under {order:?}");
                }
            }
        }
        ok &= chain_ok;
        parts.push(format!("S-polynomial chain on {}x2 bases", corpus.len()));
    }

    // --- saturation idempotence
    {
        let r2 = Ring::new(vec!["x_0".into(), "x_1".into()]);
        let i = ideal_from_texts(&fp, &r2, &["x_0^3*x_1^2"]).unwrap();
        let x = parse_poly(&fp, &r2, "x_0").unwrap();
        let s1 = elim::saturate_poly(&fp, &i, &x).unwrap();
        let s2 = elim::saturate_poly(&fp, &s1, &x).unwrap();
        let idem1 = s1.ideal_eq(&fp, &s2).unwrap();
        let p3 = p3_ring();
        let j = ideal_from_texts(&fp, &p3, &["s_0^2*s_1", "s_0*s_2^2"]).unwrap();
        let f = parse_poly(&fp, &p3, "s_0").unwrap();
        let t1 = elim::saturate_poly(&fp, &j, &f).unwrap();
        let t2 = elim::saturate_poly(&fp, &t1, &f).unwrap();
        let idem2 = t1.ideal_eq(&fp, &t2).unwrap();
        ok &= idem1 && idem2;
        parts.push("saturation idempotence".into());
    }

    // --- elimination agrees with the Sylvester resultant oracle
    {
        let ring = Ring::new(vec!["t_0".into(), "x_0".into(), "y_0".into()]);
        let corpus = [
            ("x_0 - t_0^2", "y_0 - t_0^3"),
            ("x_0 - t_0^2", "y_0 - t_0^5"),
            ("x_0 - t_0^3", "y_0 - t_0^4"),
            ("x_0 - t_0^2 - 1", "y_0 - t_0^3 - t_0"),
        ];
        let mut res_ok = true;
        for (ft, gt) in corpus {
            let f = parse_poly(&fp, &ring, ft).unwrap();
            let g = parse_poly(&fp, &ring, gt).unwrap();
            let res = sylvester_resultant(&fp, &ring, &f, &g);
            let i = Ideal::new(&ring, vec![f, g]);
            let e = elim::eliminate(&fp, &i, 1).unwrap();
            let res_ideal = Ideal::new(e.ring(), vec![res.map_vars(e.ring(), &[0, 1])]);
            if !e.ideal_eq(&fp, &res_ideal).unwrap() {
                res_ok = false;
                println!("  resultant mismatch for ({ft}, {gt})");
            }
        }
        ok &= res_ok;
        parts.push(format!("elimination = resultant on {} instances", 4));
    }

    // --- image mode agreement: Veronese conic and the genus-7 projection
    {
        let src = Ring::indexed("u", 2);
        let tgt = projective_ring("w", 3);
        let f = |t: &str| parse_poly(&fp, &src, t).unwrap();
        let ver = efverify_core::geom::RationalMap::new(
            &src,
            &tgt,
            vec![f("u_0^2"), f("u_0*u_1"), f("u_1^2")],
            None,
        )
        .unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        let (e1, _) = ver.image(&fp, ImageMode::Elimination, &mut rng).unwrap();
        let (d1, info1) = ver
            .image(&fp, ImageMode::Degreewise { max_d: 4 }, &mut rng)
            .unwrap();
        let veronese_ok = info1.unwrap().stabilized
            && e1.ideal_eq(&fp, &d1).unwrap();

        let m7 = efverify_core::scenario::fano7::composed_map(&fp).unwrap();
        let mut seeds = Vec::new();
        for e in 1..=2u16 {
            seeds.extend(m7.relations_of_degree(&fp, e, &mut rng).unwrap());
        }
        let seed_ideal = Ideal::new(&m7.target, seeds);
        let elim_img = m7.image_elimination(&fp, Some(&seed_ideal)).unwrap();
        let (dw_img, info) = m7.image_degreewise(&fp, 4, &mut rng).unwrap();
        let fano7_ok = info.stabilized
            && elim_img.contains_ideal(&fp, &dw_img).unwrap()
            && dw_img.contains_ideal(&fp, &elim_img).unwrap();
        ok &= veronese_ok && fano7_ok;
        parts.push("image modes agree (Veronese, genus-7 projection)".into());
    }

    // --- double-vanishing conditions = squared line ideals (genus-13 edges)
    {
        let p3 = p3_ring();
        let edges = tetrahedron_edges(&p3);
        let conds: Vec<(Ideal, u8)> = edges.iter().map(|(_, e)| (e.clone(), 2)).collect();
        let sys = graded::linear_system(&fp, &p3, &conds, 6).unwrap();
        let squares: Vec<Ideal> = edges
            .iter()
            .map(|(_, e)| {
                let gens: Vec<Polynomial> = e
                    .generators()
                    .iter()
                    .flat_map(|g| {
                        e.generators()
                            .iter()
                            .map(|h| g.mul(&fp, h).unwrap())
                            .collect::<Vec<_>>()
                    })
                    .collect();
                Ideal::new(&p3, gens)
            })
            .collect();
        let inter = elim::intersect_many(&fp, &squares).unwrap();
        let piece = graded::graded_piece(&fp, &inter, 6).unwrap();
        ok &= sys.len() == 14
            && piece.len() == 14
            && graded::same_span(&fp, &p3, &sys, &piece);
        parts.push("derivative conditions = squared ideals in degree 6 (dim 14)".into());
    }

    // --- pullback of a general hyperplane under the genus-7 map is a (2, 6)
    // member of the system
    {
        let m7 = efverify_core::scenario::fano7::composed_map(&fp).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(23);
        let h: Vec<(efverify_core::monomial::Monomial, u64)> = (0..8)
            .map(|i| {
                (
                    efverify_core::monomial::Monomial::var(8, i, 1),
                    rng.gen_range(1..fp.modulus()),
                )
            })
            .collect();
        let hyp = Ideal::new(
            &m7.target,
            vec![Polynomial::from_terms(&m7.target, &fp, h)],
        );
        let pb = m7.pullback(&fp, &hyp).unwrap();
        ok &= hilbert::dim_deg(&fp, &pb).unwrap() == (2, 6);
        parts.push("hyperplane pullback is a (2, 6) surface".into());
    }

    // --- field arithmetic fuzz: 10,000 inverses both ways plus Fermat
    {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(99);
        let mut fuzz_ok = true;
        for _ in 0..10_000 {
            let a = rng.gen_range(1..fp.modulus());
            let i1 = fp.inv(a).unwrap();
            let i2 = fp.inv_fermat(a).unwrap();
            fuzz_ok &= i1 == i2 && fp.mul(a, i1) == 1 && fp.pow(a, fp.modulus() - 1) == 1;
        }
        ok &= fuzz_ok;
        parts.push("10k field fuzz".into());
    }

    let elapsed = t0.elapsed();
    println!(
        "criterion 7 (engine properties): {} — {}; wall {elapsed:?}",
        if ok && elapsed.as_secs() < 120 { "PASS" } else { "FAIL" },
        parts.join("; ")
    );
    assert!(ok, "engine property suite failed");
    assert!(elapsed.as_secs() < 120, "engine property suite exceeded 2 minutes");
}

#[test]
fn reports_are_deterministic() {
    let cfg = efverify_core::scenario::ScenarioConfig::default();
    let a = efverify_core::scenario::fano13::run(&cfg);
    let b = efverify_core::scenario::fano13::run(&cfg);
    let strip = |r: &efverify_core::scenario::ScenarioReport| {
        r.checks
            .iter()
            .map(|c| (c.id.clone(), c.expected.clone(), c.actual.clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(a.notes, b.notes);
}

#[test]
fn block_order_preserves_freeness() {
    // reducing a polynomial free of the elimination block by polynomials free
    // of it stays free of it
    let fp = Fp::default();
    let ring = Ring::new(vec!["t_0".into(), "x_0".into(), "y_0".into()]);
    let gens = vec![
        parse_poly(&fp, &ring, "x_0^2 - y_0").unwrap(),
        parse_poly(&fp, &ring, "x_0*y_0 - 1").unwrap(),
    ];
    let i = Ideal::new(&ring, gens);
    let gb = i.groebner(&fp, &MonomialOrder::Block(1)).unwrap();
    let f = parse_poly(&fp, &ring, "x_0^5 + y_0^3 + x_0*y_0").unwrap();
    let nf = gb.normal_form(&fp, &f);
    assert!(nf.terms().iter().all(|(m, _)| m.exp(0) == 0));
}

#[test]
fn grevlex_leading_monomial_multiplicative() {
    let fp = Fp::default();
    let p3 = p3_ring();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
    let ord = MonomialOrder::Grevlex;
    for _ in 0..50 {
        let rand_poly = |rng: &mut rand_chacha::ChaCha12Rng| {
            let monos = efverify_core::monomial::monomials_of_degree(4, rng.gen_range(1..5));
            let mut terms = Vec::new();
            for m in monos {
                if rng.gen_bool(0.4) {
                    terms.push((m, rng.gen_range(1..fp.modulus())));
                }
            }
            Polynomial::from_terms(&p3, &fp, terms)
        };
        let f = rand_poly(&mut rng);
        let g = rand_poly(&mut rng);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let prod = f.mul(&fp, &g).unwrap();
        let lf = f.leading(&ord).unwrap().0.clone();
        let lg = g.leading(&ord).unwrap().0.clone();
        assert_eq!(*prod.leading(&ord).unwrap().0, lf.mul(&lg));
    }
}

#[test]
fn sextic_map_monomial_support() {
    // the expanded genus-13 family member has the full 14-monomial support
    let fp = Fp::default();
    let map = sextic_map(&fp);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(8);
    let mut member = Polynomial::zero(&map.source);
    for f in &map.forms {
        member = member
            .add(&fp, &f.scale(&fp, rng.gen_range(1..fp.modulus())))
            .unwrap();
    }
    assert_eq!(member.num_terms(), 14);
}

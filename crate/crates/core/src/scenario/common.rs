//! Shared construction data and helpers for the four pipelines.

use crate::error::Result;
use crate::field::Fp;
use crate::geom::{ImageMode, ProjectivePoint, RationalMap};
use crate::ideal::{projective_ring, Ideal};
use crate::poly::{Polynomial, RingRef};
use crate::scenario::report::Runner;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// The fourteen sextic monomials defining the genus-13 map P^3 -> P^13,
/// in the coordinate order fixed throughout (w_0 .. w_13).
pub const SEXTIC_MONOMIAL_TEXTS: [&str; 14] = [
    "s_0*s_1^3*s_2*s_3",
    "s_0^2*s_1^2*s_2^2",
    "s_0^2*s_1^2*s_2*s_3",
    "s_0^2*s_1^2*s_3^2",
    "s_0^3*s_1*s_2*s_3",
    "s_0*s_1^2*s_2^2*s_3",
    "s_0*s_1^2*s_2*s_3^2",
    "s_0^2*s_1*s_2^2*s_3",
    "s_0^2*s_1*s_2*s_3^2",
    "s_1^2*s_2^2*s_3^2",
    "s_0*s_1*s_2^3*s_3",
    "s_0*s_1*s_2^2*s_3^2",
    "s_0*s_1*s_2*s_3^3",
    "s_0^2*s_2^2*s_3^2",
];

/// Labels and P^13 coordinate indices of the eight singular points of the
/// genus-13 threefold: P_{i+1} is the image of the vertex v_i (the monomial
/// with s_i-exponent 3), P'_{i+1} the image of the face s_i = 0 (the unique
/// monomial free of s_i).
pub const P13_SINGULAR_POINTS: [(&str, usize); 8] = [
    ("P1", 4),
    ("P2", 0),
    ("P3", 10),
    ("P4", 12),
    ("P1'", 9),
    ("P2'", 13),
    ("P3'", 3),
    ("P4'", 1),
];

pub fn p3_ring() -> RingRef {
    projective_ring("s", 4)
}

pub fn sextic_monomials(fp: &Fp, ring: &RingRef) -> Vec<Polynomial> {
    SEXTIC_MONOMIAL_TEXTS
        .iter()
        .map(|t| crate::parse::parse_poly(fp, ring, t).expect("fixed monomial"))
        .collect()
}

/// The genus-13 sextic map.
pub fn sextic_map(fp: &Fp) -> RationalMap {
    let p3 = p3_ring();
    let p13 = projective_ring("w", 14);
    RationalMap::new(&p3, &p13, sextic_monomials(fp, &p3), None).expect("fixed map")
}

/// The six tetrahedron edges l_ij = {s_i = s_j = 0}, in the order
/// (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
pub fn tetrahedron_edges(ring: &RingRef) -> Vec<((usize, usize), Ideal)> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let gens = vec![Polynomial::variable(ring, i), Polynomial::variable(ring, j)];
            out.push(((i, j), Ideal::new(ring, gens)));
        }
    }
    out
}

/// Deterministic RNG derived from the scenario seed and a purpose tag, so
/// independent phases draw independent, reproducible streams.
pub fn rng_for(seed: u64, tag: &str) -> ChaCha12Rng {
    use rand::SeedableRng;
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    for (i, b) in tag.bytes().enumerate().take(24) {
        key[8 + i] = b;
    }
    ChaCha12Rng::from_seed(key)
}

/// Random linear combination of a basis (all coefficients nonzero).
pub fn random_member(fp: &Fp, rng: &mut ChaCha12Rng, basis: &[Polynomial]) -> Polynomial {
    let ring = basis[0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for b in basis {
        let c = rng.gen_range(1..fp.modulus());
        acc = acc.add(fp, &b.scale(fp, c)).expect("same ring");
    }
    acc
}

/// Compute an image with the configured mode; notes the flagged partial mode
/// in the report when degreewise did not stabilize.
pub fn compute_image(
    fp: &Fp,
    runner: &mut Runner,
    map: &RationalMap,
    mode: ImageMode,
    seed: u64,
    label: &str,
) -> Result<Ideal> {
    match mode {
        ImageMode::Elimination => {
            // seed the block-order basis with cheap low-degree relations
            let mut rng = rng_for(seed, "imgseed");
            let mut seeds = Vec::new();
            for e in 1..=2u16 {
                seeds.extend(map.relations_of_degree(fp, e, &mut rng)?);
            }
            let seed_ideal = Ideal::new(&map.target, seeds);
            map.image_elimination(fp, Some(&seed_ideal))
        }
        ImageMode::Degreewise { max_d } => {
            let mut rng = rng_for(seed, "imgdw");
            let (ideal, info) = map.image_degreewise(fp, max_d, &mut rng)?;
            if info.stabilized {
                runner.note(format!(
                    "{label}: degreewise image stabilized at degree {}",
                    info.degrees_used
                ));
            } else {
                runner.note(format!(
                    "{label}: degreewise image verified-partial (no stabilization within degree {})",
                    info.degrees_used
                ));
            }
            Ok(ideal)
        }
    }
}

/// Containment of a line in the image variety: via the image ideal when it is
/// exact (or stabilized), with a per-line elimination as the spot check.
pub fn line_in_variety(fp: &Fp, image: &Ideal, line: &Ideal) -> Result<bool> {
    line.contains_ideal(fp, image)
}

/// All unordered pairs of labelled points, with the line containment result.
/// The independent containment checks run in parallel and merge in a fixed
/// order, so reports stay deterministic.
pub fn association_partners(
    fp: &Fp,
    image: &Ideal,
    ring: &RingRef,
    pts: &[(String, ProjectivePoint)],
) -> Result<Vec<((usize, usize), bool)>> {
    use rayon::prelude::*;
    // warm the basis cache once before fanning out
    let _ = image.gb(fp)?;
    let mut pairs = Vec::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            pairs.push((i, j));
        }
    }
    pairs
        .into_par_iter()
        .map(|(i, j)| {
            let l = crate::geom::line_through(fp, ring, &pts[i].1, &pts[j].1)?;
            Ok(((i, j), line_in_variety(fp, image, &l)?))
        })
        .collect()
}

/// Tangent-cone multiplicities at labelled points, computed in parallel and
/// returned in input order.
pub fn cone_multiplicities(
    fp: &Fp,
    image: &Ideal,
    pts: &[(String, ProjectivePoint)],
) -> Result<Vec<i64>> {
    use rayon::prelude::*;
    let _ = image.gb(fp)?;
    pts.par_iter()
        .map(|(_, p)| Ok(crate::geom::tangent_cone(fp, image, p)?.1))
        .collect()
}

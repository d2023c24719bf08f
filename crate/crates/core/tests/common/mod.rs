#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tbtrellis::gf2::BinaryMatrix;
use tbtrellis::oracle::terminated_matrix;
use tbtrellis::poly::{compute_check_matrix, validate_canonical};
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::{Poly, PolyMatrix};

pub const CORPUS_SEED: u64 = 0x7b5_2024;
pub const CORPUS_SIZE: usize = 24;

#[derive(Debug, Clone)]
pub struct Entry {
    pub g: PolyMatrix,
    pub h: PolyMatrix,
    pub sections: usize,
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let mut p = Poly::from_coeffs((0..=degree).map(|_| rng.gen_bool(0.5)));
    p.set_coeff(degree, true);
    p
}

fn random_encoder(rng: &mut ChaCha8Rng) -> PolyMatrix {
    let n0 = rng.gen_range(2..=4);
    let k0 = rng.gen_range(1..n0).min(2);
    let mut budget = 4;
    let rows = (0..k0)
        .map(|i| {
            let left = k0 - i - 1;
            let deg = rng.gen_range(1..=(budget - left).min(3));
            budget -= deg;
            let lead = rng.gen_range(0..n0);
            (0..n0)
                .map(|j| {
                    if j == lead {
                        random_poly(rng, deg)
                    } else {
                        Poly::from_coeffs((0..=deg).map(|_| rng.gen_bool(0.5)))
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows).expect("rectangular")
}

/// Canonical encoders with n0 ≤ 4, ν ≤ 4 and a section length N ≤ 8 at which
/// the tail-biting code has full rank and full support.
pub fn corpus() -> Vec<Entry> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out = Vec::new();
    while out.len() < CORPUS_SIZE {
        let g = random_encoder(&mut rng);
        if !validate_canonical(&g).map(|c| c.is_canonical()).unwrap_or(false) {
            continue;
        }
        let Ok(h) = compute_check_matrix(&g) else { continue };
        let need = (g.memory().max(h.memory()) + 1).max(2);
        if need > 8 {
            continue;
        }
        let sections = rng.gen_range(need..=8);
        let t = build_tbgm(&g, sections).expect("N above memory");
        if !t.is_full_rank() || !t.zero_positions().is_empty() || t.k() > 16 {
            continue;
        }
        out.push(Entry { g, h, sections });
    }
    out
}

/// dim V at every position of the central block of the terminated matrix,
/// from ranks of its left and right column halves.
pub fn rank_profile(g: &PolyMatrix) -> Vec<usize> {
    let l = g.memory();
    let n0 = g.ncols();
    if l == 0 {
        return vec![0; n0];
    }
    let t = terminated_matrix(g, 2 * l + 1);
    let k = t.rank();
    let c = (3 * l).div_ceil(2);
    let cols = |range: std::ops::Range<usize>| {
        let rows = t.rows().iter().map(|r| r.slice(range.start, range.end)).collect();
        BinaryMatrix::from_rows(range.len(), rows)
            .expect("consistent widths")
            .rank()
    };
    (0..n0)
        .map(|i| {
            let p = c * n0 + i;
            cols(0..p) + cols(p..t.ncols()) - k
        })
        .collect()
}

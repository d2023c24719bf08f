use itertools::Itertools;
use serde::Serialize;

use super::{Poly, PolyMatrix};
use crate::error::{Error, Result};
use crate::gf2::{reduce_against, BinaryMatrix, BinaryVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Canonicality {
    pub basic: bool,
    pub reduced: bool,
    /// gcd of the full-size minors.
    pub minor_gcd: String,
    pub internal_degree: usize,
    pub external_degree: usize,
}

impl Canonicality {
    pub fn is_canonical(&self) -> bool {
        self.basic && self.reduced
    }
}

pub fn determinant(m: &PolyMatrix) -> Poly {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let rows: Vec<Vec<Poly>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
            .collect();
        let minor = PolyMatrix::from_rows(rows).expect("non-empty minor");
        acc = &acc + &(m.get(0, j) * &determinant(&minor));
    }
    acc
}

/// All k0 × k0 minors, indexed by column subsets in lexicographic order.
pub fn full_minors(g: &PolyMatrix) -> Vec<(Vec<usize>, Poly)> {
    let k = g.nrows();
    (0..g.ncols())
        .combinations(k)
        .map(|cols| {
            let rows = (0..k)
                .map(|i| cols.iter().map(|&c| g.get(i, c).clone()).collect())
                .collect();
            let d = determinant(&PolyMatrix::from_rows(rows).expect("non-empty"));
            (cols, d)
        })
        .collect()
}

fn minor_gcd(g: &PolyMatrix) -> Result<Poly> {
    if g.nrows() > g.ncols() {
        return Err(Error::RankDeficient(format!(
            "{} rows but only {} columns",
            g.nrows(),
            g.ncols()
        )));
    }
    let gcd = full_minors(g).iter().fold(Poly::zero(), |acc, (_, m)| acc.gcd(m));
    if gcd.is_zero() {
        return Err(Error::RankDeficient("every full-size minor vanishes".into()));
    }
    Ok(gcd)
}

pub fn validate_canonical(g: &PolyMatrix) -> Result<Canonicality> {
    let gcd = minor_gcd(g)?;
    let internal = full_minors(g).iter().filter_map(|(_, m)| m.degree()).max().unwrap_or(0);
    let external = g.constraint_length();
    Ok(Canonicality {
        basic: gcd.is_one(),
        reduced: internal == external,
        minor_gcd: gcd.to_string(),
        internal_degree: internal,
        external_degree: external,
    })
}

/// `left · g · right = diag(invariants)`, with `left` and `right` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub left: PolyMatrix,
    pub right: PolyMatrix,
    pub invariants: Vec<Poly>,
}

/// Smith form over GF(2)[D]; pivots are the lowest-degree entries, ties in row-major order.
pub fn smith_form(g: &PolyMatrix) -> SmithForm {
    let (m, n) = (g.nrows(), g.ncols());
    let mut a = g.clone();
    let mut left = PolyMatrix::identity(m);
    let mut right = PolyMatrix::identity(n);
    let mut invariants = Vec::new();

    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .cartesian_product(t..n)
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by_key(|&(i, j)| (a.get(i, j).degree(), i, j));
            let Some((pi, pj)) = pivot else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let (q, r) = a.get(i, t).div_rem(&p);
                if !q.is_zero() {
                    a.add_row_multiple(i, t, &q);
                    left.add_row_multiple(i, t, &q);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                let (q, r) = a.get(t, j).div_rem(&p);
                if !q.is_zero() {
                    a.add_col_multiple(j, t, &q);
                    right.add_col_multiple(j, t, &q);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m)
                .cartesian_product(t + 1..n)
                .find(|&(i, j)| !p.divides(a.get(i, j)));
            match offender {
                Some((i, _)) => {
                    a.add_row_multiple(t, i, &Poly::one());
                    left.add_row_multiple(t, i, &Poly::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_zero() {
            break;
        }
        invariants.push(a.get(t, t).clone());
    }
    SmithForm {
        left,
        right,
        invariants,
    }
}

/// A basic encoder with the same rational row space.
///
/// Each prime factor p of the minor gcd is removed by finding a combination of
/// rows that vanishes modulo p and replacing its last row by the combination
/// divided by p. When the gcd is a power of D this only removes row factors.
pub fn basic_equivalent(g: &PolyMatrix) -> Result<PolyMatrix> {
    let mut g = g.clone();
    loop {
        let gcd = minor_gcd(&g)?;
        let Some(p) = gcd.smallest_factor() else {
            return Ok(g);
        };
        let (idx, combo) = vanishing_combination(&g, &p)
            .ok_or_else(|| Error::RankDeficient(format!("no row combination vanishes modulo {p}")))?;
        let mut row: Vec<Poly> = vec![Poly::zero(); g.ncols()];
        for (i, c) in combo.iter().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = &*e + &(c * g.get(i, j));
            }
        }
        for (j, e) in row.into_iter().enumerate() {
            let (q, r) = e.div_rem(&p);
            debug_assert!(r.is_zero());
            g.set(idx, j, q);
        }
    }
}

/// A row combination `Σ c_i g_i ≡ 0 (mod p)` with `c_idx = 1` and `c_i = 0` for `i > idx`.
fn vanishing_combination(g: &PolyMatrix, p: &Poly) -> Option<(usize, Vec<Poly>)> {
    let k = g.nrows();
    let n = g.ncols();
    let mut basis: Vec<(Vec<Poly>, Vec<Poly>, usize)> = Vec::new();
    for i in 0..k {
        let mut row: Vec<Poly> = g.row(i).iter().map(|e| e.rem(p)).collect();
        let mut combo = vec![Poly::zero(); k];
        combo[i] = Poly::one();
        for (brow, bcombo, col) in &basis {
            let f = row[*col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                row[j] = (&row[j] + &(&f * &brow[j])).rem(p);
            }
            for t in 0..k {
                combo[t] = (&combo[t] + &(&f * &bcombo[t])).rem(p);
            }
        }
        match row.iter().position(|e| !e.is_zero()) {
            None => return Some((i, combo)),
            Some(col) => {
                let inv = row[col].inverse_mod(p)?;
                let row = row.iter().map(|e| (&inv * e).rem(p)).collect();
                let combo = combo.iter().map(|e| (&inv * e).rem(p)).collect();
                basis.push((row, combo, col));
            }
        }
    }
    None
}

/// `h̃_ij(D) = D^{ν_i} h_ij(D⁻¹)`, row by row.
pub fn reciprocal_dual(h: &PolyMatrix) -> PolyMatrix {
    let mut out = h.clone();
    for i in 0..h.nrows() {
        let w = h.row_degree(i).unwrap_or(0);
        for j in 0..h.ncols() {
            out.set(i, j, h.get(i, j).reverse(w));
        }
    }
    out
}

/// A minimal (n0 − k0) × n0 polynomial check matrix H(D) with `G · Hᵀ = 0`.
///
/// Rows are found degree by degree: at each degree d the kernel vectors of
/// degree ≤ d are computed and extended beyond the span of the shifts of
/// rows already chosen, smallest coefficient vector first.
pub fn compute_check_matrix(g: &PolyMatrix) -> Result<PolyMatrix> {
    let canon = validate_canonical(g)?;
    if !canon.is_canonical() {
        return Err(Error::NonCanonical(format!(
            "basic = {}, reduced = {} (minor gcd {})",
            canon.basic, canon.reduced, canon.minor_gcd
        )));
    }
    let (k0, n0) = (g.nrows(), g.ncols());
    let nu = g.constraint_length();
    let want = n0 - k0;
    if want == 0 {
        return Err(Error::Dimension("a rate-one code has no check matrix".into()));
    }
    let mut chosen: Vec<(Vec<Poly>, usize)> = Vec::new();
    for d in 0..=nu {
        let kernel = kernel_upto(g, d);
        let width = n0 * (d + 1);
        let mut span = BinaryMatrix::new(width)?;
        for (h, deg) in &chosen {
            for s in 0..=(d - deg) {
                span.push_row(encode(h, s, width, n0))?;
            }
        }
        let base = span.rref();
        let mut residues = BinaryMatrix::new(width)?;
        for v in kernel.rows() {
            let r = reduce_against(v, &base.matrix, &base.pivots);
            if !r.is_zero() {
                residues.push_row(r)?;
            }
        }
        let fresh = residues.rref();
        let mut picks: Vec<(usize, BinaryVector)> =
            fresh.pivots.iter().copied().zip(fresh.matrix.into_rows()).collect();
        picks.sort_by_key(|(p, _)| std::cmp::Reverse(*p));
        for (_, v) in picks {
            if chosen.len() == want {
                break;
            }
            chosen.push((decode(&v, n0), d));
        }
        if chosen.len() == want {
            break;
        }
    }
    if chosen.len() < want {
        return Err(Error::NonCanonical(format!(
            "found only {} of {want} check rows within degree {nu}",
            chosen.len()
        )));
    }
    let h = PolyMatrix::from_rows(chosen.into_iter().map(|(h, _)| h).collect())?;
    if !g.mul_transpose(&h)?.is_zero() {
        return Err(Error::Orthogonality("computed check matrix is not orthogonal".into()));
    }
    if h.constraint_length() != nu {
        return Err(Error::NonCanonical(format!(
            "check matrix has constraint length {} but the encoder has {nu}",
            h.constraint_length()
        )));
    }
    Ok(h)
}

/// Coefficient vectors (index `m·n0 + c` for D^m in column c) of all h with
/// `deg h ≤ d` and `G · hᵀ = 0`.
fn kernel_upto(g: &PolyMatrix, d: usize) -> BinaryMatrix {
    let (k0, n0) = (g.nrows(), g.ncols());
    let l = g.memory();
    let unknowns = n0 * (d + 1);
    let mut eqs = BinaryMatrix::new(unknowns).expect("width within limit");
    for i in 0..k0 {
        for e in 0..=(l + d) {
            let mut row = BinaryVector::zeros(unknowns);
            for m in 0..=d.min(e) {
                for c in 0..n0 {
                    if g.get(i, c).coeff(e - m) {
                        row.flip(m * n0 + c);
                    }
                }
            }
            eqs.push_row(row).expect("matching width");
        }
    }
    eqs.null_space()
}

fn encode(h: &[Poly], shift: usize, width: usize, n0: usize) -> BinaryVector {
    let mut v = BinaryVector::zeros(width);
    for (c, p) in h.iter().enumerate() {
        for m in p.terms() {
            v.set((m + shift) * n0 + c, true);
        }
    }
    v
}

fn decode(v: &BinaryVector, n0: usize) -> Vec<Poly> {
    let mut h = vec![Poly::zero(); n0];
    for i in v.ones() {
        h[i % n0].set_coeff(i / n0, true);
    }
    h
}

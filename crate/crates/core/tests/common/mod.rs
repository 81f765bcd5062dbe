//! Test-only oracles shared by the integration suites.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use hyperconic::{Multivector, Signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multiplies two basis words letter by letter: concatenate the index
/// lists, bubble-sort with a sign flip per swap, and contract equal
/// neighbours through the metric.
pub fn naive_blade_product(sig: Signature, a: u32, b: u32) -> (f64, u32) {
    let mut word: Vec<usize> = (0..32).filter(|i| a & (1 << i) != 0).collect();
    word.extend((0..32).filter(|i| b & (1 << i) != 0));
    let mut sign = 1.0;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                sign *= sig.square(word[i]);
                word.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    (sign, word.iter().fold(0u32, |m, &i| m | 1 << i))
}

/// Full Cayley table of an algebra, built with [`naive_blade_product`].
pub struct CayleyTable {
    pub sig: Signature,
    table: Vec<(f64, u32)>,
}

#[derive(Clone, Copy)]
pub enum Product {
    Geometric,
    Outer,
    LeftContraction,
}

impl CayleyTable {
    pub fn new(sig: Signature) -> Self {
        let n = 1usize << sig.dim();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                table.push(naive_blade_product(sig, a, b));
            }
        }
        Self { sig, table }
    }

    pub fn product(&self, kind: Product, x: &Multivector, y: &Multivector) -> BTreeMap<u32, f64> {
        let n = 1usize << self.sig.dim();
        let mut out = BTreeMap::new();
        for (ba, ca) in x.terms() {
            for (bb, cb) in y.terms() {
                let (sign, m) = self.table[ba.0 as usize * n + bb.0 as usize];
                let (ga, gb, gm) = (ba.grade(), bb.grade(), m.count_ones() as usize);
                let keep = match kind {
                    Product::Geometric => true,
                    Product::Outer => gm == ga + gb,
                    Product::LeftContraction => ga <= gb && gm == gb - ga,
                };
                if keep {
                    *out.entry(m).or_insert(0.0) += sign * ca * cb;
                }
            }
        }
        out
    }
}

/// Largest coefficient-wise deviation relative to the oracle's scale.
pub fn relative_error(got: &Multivector, want: &BTreeMap<u32, f64>) -> f64 {
    let scale = want.values().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut masks: Vec<u32> = want.keys().copied().collect();
    masks.extend(got.terms().map(|(b, _)| b.0));
    masks
        .into_iter()
        .map(|m| {
            let g = got.coefficient(hyperconic::BasisBlade(m));
            let w = want.get(&m).copied().unwrap_or(0.0);
            (g - w).abs() / scale
        })
        .fold(0.0, f64::max)
}

pub fn random_sparse(rng: &mut impl Rng, sig: Signature, max_terms: usize) -> Multivector {
    let n = 1u32 << sig.dim();
    let k = rng.random_range(1..=max_terms);
    let terms: Vec<(u32, f64)> = (0..k)
        .map(|_| (rng.random_range(0..n), rng.random_range(-2.0..2.0)))
        .collect();
    Multivector::from_terms(sig, terms).unwrap()
}

pub fn random_vec(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

pub fn random_vector(rng: &mut impl Rng, sig: Signature) -> Multivector {
    Multivector::vector(sig, &random_vec(rng, sig.dim(), -1.0, 1.0)).unwrap()
}

/// Rank of a small dense matrix by elimination with partial pivoting.
pub fn rank(mut rows: Vec<Vec<f64>>, tol: f64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) =
            (r..rows.len()).max_by(|&i, &j| rows[i][c].abs().total_cmp(&rows[j][c].abs()))
        else {
            break;
        };
        if rows[p][c].abs() <= tol {
            continue;
        }
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let f = rows[i][c] / rows[r][c];
            for k in c..cols {
                rows[i][k] -= f * rows[r][k];
            }
        }
        r += 1;
    }
    r
}

/// `x'ᵀ A x'` through the full matrix, independent of the flattened layout.
pub fn full_quadratic_form(rows: &[Vec<f64>], x: &[f64]) -> f64 {
    let mut h = x.to_vec();
    h.push(1.0);
    let ah: Vec<f64> = rows
        .iter()
        .map(|row| row.iter().zip(&h).map(|(a, v)| a * v).sum())
        .collect();
    h.iter().zip(&ah).map(|(a, b)| a * b).sum()
}

//! Coordinates on the space of hyperconics.
//!
//! A hyperconic in `R^m` is a symmetric `n×n` matrix `A` (`n = m + 1`) and
//! the set of points with `x'ᵀ A x' = 0`, `x' = (x, 1)`. The map [`tau`]
//! flattens `A` into `R^D`, `D = n(n+1)/2`, using a fixed permutation of the
//! upper triangle and dividing diagonal entries by `√2`. Under this layout
//! the lifted point [`embed_point`] and `tau(A)` have Euclidean dot product
//! `½ x'ᵀ A x'`, so incidence becomes orthogonality.
//!
//! Layout for side `n` (1-based matrix indices):
//!
//! ```text
//! a_{1,n}, …, a_{n-1,n}, a_{n,n}/√2,
//! a_{1,1}/√2,
//! a_{2,2}/√2, a_{1,2},
//! a_{3,3}/√2, a_{2,3}, a_{1,3},
//! …
//! a_{n-1,n-1}/√2, a_{n-2,n-1}, …, a_{1,n-1}
//! ```

use std::f64::consts::SQRT_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::ga::{Multivector, Signature};

/// `D = (m+1)(m+2)/2` for input dimension `m`.
pub fn conic_dim(m: usize) -> usize {
    (m + 1) * (m + 2) / 2
}

/// Inverse of `n ↦ n(n+1)/2`, restricted to `n >= 2`.
fn side_from_len(len: usize) -> Result<usize> {
    let mut n = 1;
    while n * (n + 1) / 2 < len {
        n += 1;
    }
    if n * (n + 1) / 2 != len || n < 2 {
        return Err(Error::NotTriangular(len));
    }
    Ok(n)
}

/// Zero-based `(row, col)` with `row <= col` for every coordinate of the
/// flattened layout.
pub fn tau_layout(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for k in 0..n - 1 {
        out.push((k, n - 1));
    }
    out.push((n - 1, n - 1));
    for k in 0..n - 1 {
        for i in (0..=k).rev() {
            out.push((i, k));
        }
    }
    out
}

/// A real symmetric `n×n` matrix stored as its row-major upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    upper: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NotTriangular(n * (n + 1) / 2));
        }
        Ok(Self {
            n,
            upper: vec![0.0; n * (n + 1) / 2],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let mut a = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            a.set(i, i, d);
        }
        Ok(a)
    }

    /// Row-major upper triangle `a11, a12, …, a1n, a22, …, ann`.
    pub fn from_upper(values: &[f64]) -> Result<Self> {
        let n = side_from_len(values.len())?;
        Ok(Self {
            n,
            upper: values.to_vec(),
        })
    }

    /// Builds from full rows; the matrix must be symmetric to `1e-12` relative.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut a = Self::zeros(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in i..n {
                let (x, y) = (rows[i][j], rows[j][i]);
                if (x - y).abs() > 1e-12 * (1.0 + x.abs().max(y.abs())) {
                    return Err(Error::Parse(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                a.set(i, j, x);
            }
        }
        Ok(a)
    }

    pub fn side(&self) -> usize {
        self.n
    }

    /// Dimension `m = n - 1` of the point space the matrix acts on.
    pub fn input_dim(&self) -> usize {
        self.n - 1
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.n - i * (i + 1) / 2 + j
    }

    /// Entry `a_{i+1, j+1}`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[self.offset(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self.offset(i, j);
        self.upper[k] = value;
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            upper: self.upper.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += self.get(i, j).powi(2);
            }
        }
        s.sqrt()
    }

    /// `vᵀ A v` for a homogeneous vector of length `n`.
    pub fn quadratic_form(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += v[i] * self.get(i, j) * v[j];
            }
        }
        Ok(s)
    }

    /// `Hᵀ A H` for a square `n×n` matrix `H` given by rows.
    pub fn congruence(&self, h: &[Vec<f64>]) -> Result<Self> {
        if h.len() != self.n || h.iter().any(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: h.len(),
            });
        }
        let mut out = Self::zeros(self.n)?;
        for i in 0..self.n {
            for j in i..self.n {
                let mut s = 0.0;
                for k in 0..self.n {
                    for l in 0..self.n {
                        s += h[k][i] * self.get(k, l) * h[l][j];
                    }
                }
                out.set(i, j, s);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A point of `R^D` in the flattened layout; represents a hyperconic.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicVector(Vec<f64>);

impl ConicVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        side_from_len(coords.len())?;
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Input dimension `m` with `D = (m+1)(m+2)/2`.
    pub fn input_dim(&self) -> usize {
        side_from_len(self.0.len()).expect("validated on construction") - 1
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.iter().map(|v| v * c).collect())
    }

    /// `|cos|` of the angle to `other`.
    pub fn abs_cosine(&self, other: &Self) -> Result<f64> {
        Ok((self.dot(other)? / (self.norm() * other.norm())).abs())
    }

    /// The grade-1 multivector in the Euclidean signature `(D, 0)`.
    pub fn to_multivector(&self) -> Result<Multivector> {
        Multivector::vector(Signature::euclidean(self.len())?, &self.0)
    }

    pub fn from_multivector(v: &Multivector) -> Result<Self> {
        let sig = v.signature();
        if sig.q() != 0 {
            return Err(Error::InvalidSignature {
                p: sig.p(),
                q: sig.q(),
                max: crate::ga::MAX_DIM,
            });
        }
        if !v.is_vector() {
            return Err(Error::NotAVector { index: 0 });
        }
        Self::new(v.vector_coords())
    }
}

/// A point of `R^m` together with its lift `tau(iota(x))`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedPoint {
    pub source: Vec<f64>,
    pub coords: ConicVector,
}

/// Positions (1-based) of the diagonal entries in the flattened layout.
///
/// Built from `s(0) = m+1`, `s(1) = m+2`, `s(l) = s(l-1) + l - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    m: usize,
    positions: Vec<usize>,
}

impl IndexSet {
    pub fn new(m: usize) -> Self {
        let mut positions = Vec::with_capacity(m + 1);
        for l in 0..=m {
            let s = match l {
                0 => m + 1,
                1 => m + 2,
                _ => positions[l - 1] + l - 1,
            };
            positions.push(s);
        }
        Self { m, positions }
    }

    pub fn input_dim(&self) -> usize {
        self.m
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.contains(&position)
    }
}

pub fn tau(a: &SymmetricMatrix) -> ConicVector {
    let coords = tau_layout(a.side())
        .into_iter()
        .map(|(i, j)| {
            let v = a.get(i, j);
            if i == j {
                v / SQRT_2
            } else {
                v
            }
        })
        .collect();
    ConicVector(coords)
}

pub fn tau_inv(v: &ConicVector) -> SymmetricMatrix {
    let n = v.input_dim() + 1;
    let mut a = SymmetricMatrix::zeros(n).expect("n >= 2");
    for ((i, j), &x) in tau_layout(n).into_iter().zip(v.coords()) {
        a.set(i, j, if i == j { x * SQRT_2 } else { x });
    }
    a
}

/// Same as [`tau_inv`] for a raw coordinate slice.
pub fn tau_inv_slice(v: &[f64]) -> Result<SymmetricMatrix> {
    Ok(tau_inv(&ConicVector::new(v.to_vec())?))
}

/// `x'ᵀ x'` with `x' = (x, 1)` (outer product, rank one).
pub fn iota(x: &[f64]) -> SymmetricMatrix {
    let mut h = x.to_vec();
    h.push(1.0);
    let n = h.len();
    let mut a = SymmetricMatrix {
        n,
        upper: vec![0.0; n * (n + 1) / 2],
    };
    for i in 0..n {
        for j in i..n {
            a.set(i, j, h[i] * h[j]);
        }
    }
    a
}

/// `tau(iota(x))`, computed directly from the monomials.
pub fn embed_point(x: &[f64]) -> EmbeddedPoint {
    let n = x.len() + 1;
    let coord = |i: usize| if i < x.len() { x[i] } else { 1.0 };
    let coords = tau_layout(n)
        .into_iter()
        .map(|(i, j)| {
            let v = coord(i) * coord(j);
            if i == j {
                v / SQRT_2
            } else {
                v
            }
        })
        .collect();
    EmbeddedPoint {
        source: x.to_vec(),
        coords: ConicVector(coords),
    }
}

/// Signed incidence value `embed_point(x) · tau(A) = ½ x'ᵀ A x'`.
///
/// Positive means `x'ᵀ A x' > 0`; zero means `x` lies on the hyperconic.
pub fn incidence(x: &[f64], a: &SymmetricMatrix) -> Result<f64> {
    if a.side() != x.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: a.side() - 1,
            found: x.len(),
        });
    }
    embed_point(x).coords.dot(&tau(a))
}

/// Affine restriction of the 2-uple embedding.
///
/// `x` is homogeneous with last coordinate 1; the output lists the
/// degree-2 monomials as `x_1, …, x_m, 1, x_1², x_2², x_1x_2, x_3², x_2x_3,
/// x_1x_3, …, x_m², x_{m-1}x_m, …, x_1x_m`.
pub fn veronese(x: &[f64]) -> Result<Vec<f64>> {
    let (&last, affine) = x.split_last().ok_or(Error::EmptyInput)?;
    if (last - 1.0).abs() > 1e-12 {
        return Err(Error::NotAffine(last));
    }
    let m = affine.len();
    let mut out = Vec::with_capacity(conic_dim(m));
    out.extend_from_slice(affine);
    out.push(1.0);
    for k in 0..m {
        out.push(affine[k] * affine[k]);
        for j in (0..k).rev() {
            out.push(affine[j] * affine[k]);
        }
    }
    Ok(out)
}

/// Multiplies the coordinates listed in `s` (1-based) by `√2`.
pub fn chart_t(v: &[f64], s: &IndexSet) -> Result<Vec<f64>> {
    let expected = conic_dim(s.input_dim());
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(v.iter()
        .enumerate()
        .map(|(i, &x)| if s.contains(i + 1) { SQRT_2 * x } else { x })
        .collect())
}

/// A point of projective space, stored through one representative.
#[derive(Debug, Clone)]
pub struct ProjectivePoint(Vec<f64>);

impl ProjectivePoint {
    pub fn representative(&self) -> &[f64] {
        &self.0
    }

    /// Representative whose coordinate at `index` (0-based) is 1.
    pub fn in_chart(&self, index: usize) -> Result<Vec<f64>> {
        let h = *self.0.get(index).ok_or(Error::DimensionMismatch {
            expected: index + 1,
            found: self.0.len(),
        })?;
        if h == 0.0 {
            return Err(Error::NotAffine(h));
        }
        Ok(self.0.iter().map(|v| v / h).collect())
    }

    /// Representative scaled so its largest-magnitude coordinate is `+1`.
    pub fn canonical(&self) -> Vec<f64> {
        let pivot = self
            .0
            .iter()
            .copied()
            .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
        self.0.iter().map(|v| v / pivot).collect()
    }

    /// Equality of projective classes, per coordinate to `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.len() == other.0.len()
            && self
                .canonical()
                .iter()
                .zip(other.canonical())
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// `(x_1, …, x_N) ↦ (x_1 : … : x_N)`.
pub fn chart_p(v: &[f64]) -> Result<ProjectivePoint> {
    if v.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(ProjectivePoint(v.to_vec()))
}

/// `(z_1 : … : z_m : 1) ↦ (z_1, …, z_m)`.
pub fn chart_q(z: &[f64]) -> Result<Vec<f64>> {
    let (&last, affine) = z.split_last().ok_or(Error::EmptyInput)?;
    if (last - 1.0).abs() > 1e-12 {
        return Err(Error::NotAffine(last));
    }
    Ok(affine.to_vec())
}

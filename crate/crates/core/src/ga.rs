//! Sparse Clifford algebra over a non-degenerate signature `(p, q)`.
//!
//! A [`Multivector`] is a map from basis-blade bitmasks to real
//! coefficients. Bit `i` of a mask stands for the basis vector `e_{i+1}`;
//! the first `p` basis vectors square to `+1` and the next `q` to `-1`.
//! Basis blades are kept in ascending index order and reordering signs are
//! obtained by counting transpositions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported total dimension `p + q`.
pub const MAX_DIM: usize = 16;

/// Coefficients with absolute value below this are dropped.
pub const ZERO_THRESHOLD: f64 = 1e-14;

/// Default relative tolerance for the null-space membership predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let d = p + q;
        if d == 0 || d > MAX_DIM {
            return Err(Error::InvalidSignature { p, q, max: MAX_DIM });
        }
        Ok(Self { p, q })
    }

    /// Signature `(d, 0)`.
    pub fn euclidean(d: usize) -> Result<Self> {
        Self::new(d, 0)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Square of the basis vector with zero-based index `i`.
    pub fn square(&self, i: usize) -> f64 {
        debug_assert!(i < self.dim());
        if i < self.p {
            1.0
        } else {
            -1.0
        }
    }

    fn negative_mask(&self) -> u32 {
        ((1u32 << self.q) - 1) << self.p
    }

    fn full_mask(&self) -> u32 {
        ((1u64 << self.dim()) - 1) as u32
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A basis blade `e_{i1} ∧ … ∧ e_{ik}` with `i1 < … < ik`, encoded as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisBlade(pub u32);

impl BasisBlade {
    pub const SCALAR: BasisBlade = BasisBlade(0);

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Zero-based indices of the wedged basis vectors, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |i| mask & (1 << i) != 0)
    }
}

/// Sign picked up when bringing the concatenation of two ascending basis
/// words back into ascending order.
fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Geometric product of two basis blades: `(sign, mask)`.
fn blade_product(sig: Signature, a: u32, b: u32) -> (f64, u32) {
    let mut sign = reorder_sign(a, b);
    if (a & b & sig.negative_mask()).count_ones() & 1 == 1 {
        sign = -sign;
    }
    (sign, a ^ b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<u32, f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        Self::from_terms(sig, [(0, value)]).expect("scalar blade always fits")
    }

    /// Builds a multivector from `(mask, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(sig: Signature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, f64)>,
    {
        let full = sig.full_mask();
        let mut map = BTreeMap::new();
        for (mask, c) in terms {
            if mask & !full != 0 {
                return Err(Error::BladeOutOfRange {
                    mask,
                    dim: sig.dim(),
                });
            }
            *map.entry(mask).or_insert(0.0) += c;
        }
        Ok(Self::normalized(sig, map))
    }

    /// Grade-1 element `Σ coords[i] e_{i+1}`.
    pub fn vector(sig: Signature, coords: &[f64]) -> Result<Self> {
        if coords.len() != sig.dim() {
            return Err(Error::DimensionMismatch {
                expected: sig.dim(),
                found: coords.len(),
            });
        }
        Self::from_terms(sig, coords.iter().enumerate().map(|(i, &c)| (1 << i, c)))
    }

    /// The basis vector `e_{index+1}`.
    pub fn basis_vector(sig: Signature, index: usize) -> Result<Self> {
        if index >= sig.dim() {
            return Err(Error::BladeOutOfRange {
                mask: 1u32.checked_shl(index as u32).unwrap_or(u32::MAX),
                dim: sig.dim(),
            });
        }
        Ok(Self::blade(sig, BasisBlade(1 << index), 1.0))
    }

    fn blade(sig: Signature, blade: BasisBlade, c: f64) -> Self {
        let mut terms = BTreeMap::new();
        if c.abs() >= ZERO_THRESHOLD {
            terms.insert(blade.0, c);
        }
        Self { sig, terms }
    }

    fn normalized(sig: Signature, mut terms: BTreeMap<u32, f64>) -> Self {
        terms.retain(|_, c| c.abs() >= ZERO_THRESHOLD);
        Self { sig, terms }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: BasisBlade) -> f64 {
        self.terms.get(&blade.0).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coefficient(BasisBlade::SCALAR)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisBlade, f64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (BasisBlade(m), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The grade if the multivector is homogeneous and nonzero.
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn is_vector(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() == 1)
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.count_ones() as usize == k)
            .map(|(&m, &c)| (m, c))
            .collect();
        Self {
            sig: self.sig,
            terms,
        }
    }

    /// Coefficients of the grade-1 part, indexed by basis vector.
    pub fn vector_coords(&self) -> Vec<f64> {
        (0..self.sig.dim())
            .map(|i| self.coefficient(BasisBlade(1 << i)))
            .collect()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc + c * c).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::normalized(
            self.sig,
            self.terms.iter().map(|(&m, &c)| (m, c * s)).collect(),
        )
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(())
    }

    fn bilinear<F>(&self, other: &Self, blade_op: F) -> Result<Self>
    where
        F: Fn(u32, u32) -> Option<(f64, u32)>,
    {
        self.check_sig(other)?;
        let mut out: BTreeMap<u32, f64> = BTreeMap::new();
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                if let Some((sign, m)) = blade_op(ma, mb) {
                    *out.entry(m).or_insert(0.0) += sign * ca * cb;
                }
            }
        }
        Ok(Self::normalized(self.sig, out))
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        let sig = self.sig;
        self.bilinear(other, |a, b| Some(blade_product(sig, a, b)))
    }

    pub fn outer_product(&self, other: &Self) -> Result<Self> {
        self.bilinear(other, |a, b| {
            (a & b == 0).then(|| (reorder_sign(a, b), a | b))
        })
    }

    /// Left contraction `self ⌋ other`.
    ///
    /// For grade-1 arguments this is the symmetric scalar product; a grade-j
    /// blade contracted onto a grade-k blade has grade `k - j` and vanishes
    /// when `j > k`.
    pub fn inner_product(&self, other: &Self) -> Result<Self> {
        let sig = self.sig;
        self.bilinear(other, |a, b| {
            (a & !b == 0).then(|| blade_product(sig, a, b))
        })
    }

    pub fn dual(&self) -> Self {
        let inv = inverse_pseudoscalar(self.sig);
        self.geometric_product(&inv)
            .expect("pseudoscalar shares the signature")
    }

    /// Inverse of [`Multivector::dual`]: multiplies by `I`.
    pub fn undual(&self) -> Self {
        self.geometric_product(&pseudoscalar(self.sig))
            .expect("pseudoscalar shares the signature")
    }
}

/// `e_1 ∧ … ∧ e_d`.
pub fn pseudoscalar(sig: Signature) -> Multivector {
    Multivector::blade(sig, BasisBlade(sig.full_mask()), 1.0)
}

/// `I⁻¹ = I / (I I)`, with `I I = ±1` read off the geometric product.
pub fn inverse_pseudoscalar(sig: Signature) -> Multivector {
    let i = pseudoscalar(sig);
    let square = i
        .geometric_product(&i)
        .expect("same signature")
        .scalar_part();
    i.scale(1.0 / square)
}

/// Outer product of a list of grade-1 multivectors.
pub fn wedge_all(vectors: &[Multivector]) -> Result<Multivector> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let sig = first.signature();
    if vectors.len() > sig.dim() {
        return Err(Error::TooManyVectors {
            count: vectors.len(),
            dim: sig.dim(),
        });
    }
    let mut acc = Multivector::scalar(sig, 1.0);
    for (i, v) in vectors.iter().enumerate() {
        if !v.is_vector() {
            return Err(Error::NotAVector { index: i });
        }
        acc = acc.outer_product(v)?;
    }
    Ok(acc)
}

fn membership_operands(blade: &Multivector, x: &Multivector) -> Result<()> {
    if blade.is_zero() {
        return Err(Error::ZeroBlade);
    }
    if !x.is_vector() {
        return Err(Error::NotAVector { index: 0 });
    }
    blade.check_sig(x)
}

/// Outer-product null space test: `‖x ∧ A‖ ≤ tol ‖x‖ ‖A‖`.
pub fn opns_contains(blade: &Multivector, x: &Multivector, tol: f64) -> Result<bool> {
    membership_operands(blade, x)?;
    let w = x.outer_product(blade)?;
    Ok(w.norm() <= tol * x.norm() * blade.norm())
}

/// Inner-product null space test: `‖x ⌋ A‖ ≤ tol ‖x‖ ‖A‖`.
pub fn ipns_contains(blade: &Multivector, x: &Multivector, tol: f64) -> Result<bool> {
    membership_operands(blade, x)?;
    let c = x.inner_product(blade)?;
    Ok(c.norm() <= tol * x.norm() * blade.norm())
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch in addition");
        let mut terms = self.terms.clone();
        for (&m, &c) in &rhs.terms {
            *terms.entry(m).or_insert(0.0) += c;
        }
        Multivector::normalized(self.sig, terms)
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self + &(-rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

fn blade_name(blade: BasisBlade, dim: usize) -> String {
    if blade.0 == 0 {
        return String::new();
    }
    let sep = if dim >= 10 { "." } else { "" };
    let idx: Vec<String> = blade.indices().map(|i| (i + 1).to_string()).collect();
    format!("e{}", idx.join(sep))
}

/// Signed sum ordered by grade, then mask, e.g. `1.5 e12 - 2 e3`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(u32, f64)> = self.terms.iter().map(|(&m, &c)| (m, c)).collect();
        ordered.sort_by_key(|&(m, _)| (m.count_ones(), m));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let name = blade_name(BasisBlade(m), self.sig.dim());
            let mag = c.abs();
            match (i, c < 0.0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} {name}")?;
            }
        }
        Ok(())
    }
}

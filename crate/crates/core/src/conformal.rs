//! Conformal model of `R^m` in signature `(m+1, 1)`.
//!
//! Basis order is `e_1 … e_m, e₊, e₋` with `e₊² = 1`, `e₋² = -1`. The null
//! vectors `e∞ = e₋ + e₊` and `e₀ = ½(e₋ - e₊)` are derived from that pair,
//! so the underlying algebra stays non-degenerate.

use crate::error::{Error, Result};
use crate::ga::{Multivector, Signature};

/// Values with magnitude at or below this are treated as "on the sphere".
pub const BOUNDARY_BAND: f64 = 1e-9;

pub fn signature(m: usize) -> Result<Signature> {
    Signature::new(m + 1, 1)
}

/// Point at infinity `e₋ + e₊`.
pub fn e_inf(m: usize) -> Result<Multivector> {
    let sig = signature(m)?;
    Multivector::from_terms(sig, [(1 << m, 1.0), (1 << (m + 1), 1.0)])
}

/// Origin `½(e₋ - e₊)`.
pub fn e_origin(m: usize) -> Result<Multivector> {
    let sig = signature(m)?;
    Multivector::from_terms(sig, [(1 << m, -0.5), (1 << (m + 1), 0.5)])
}

/// Scalar inner product of two grade-1 multivectors.
fn dot(a: &Multivector, b: &Multivector) -> Result<f64> {
    Ok(a.inner_product(b)?.scalar_part())
}

/// Coefficients on `{e_1 … e_m, e₊, e₋}` of `x + ½|x|² e∞ + e₀`.
fn lift_coords(x: &[f64]) -> Vec<f64> {
    let half_sq = 0.5 * x.iter().map(|v| v * v).sum::<f64>();
    let mut c = x.to_vec();
    c.push(half_sq - 0.5);
    c.push(half_sq + 0.5);
    c
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalPoint {
    source: Vec<f64>,
    vector: Multivector,
}

impl ConformalPoint {
    pub fn source(&self) -> &[f64] {
        &self.source
    }

    pub fn vector(&self) -> &Multivector {
        &self.vector
    }

    /// Coefficients on the orthonormal basis `{e_1 … e_m, e₊, e₋}`.
    pub fn coords(&self) -> Vec<f64> {
        self.vector.vector_coords()
    }
}

/// `X = x + ½ x² e∞ + e₀`.
pub fn lift(x: &[f64]) -> Result<ConformalPoint> {
    let sig = signature(x.len())?;
    Ok(ConformalPoint {
        source: x.to_vec(),
        vector: Multivector::vector(sig, &lift_coords(x))?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereVector {
    vector: Multivector,
    center: Vec<f64>,
    radius: f64,
}

impl SphereVector {
    pub fn vector(&self) -> &Multivector {
        &self.vector
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Recovers center and radius from an arbitrary grade-1 vector
    /// `λ (c + ½(|c|² - ρ²) e∞ + e₀)`.
    pub fn from_vector(vector: Multivector) -> Result<Self> {
        let sig = vector.signature();
        if sig.q() != 1 || !vector.is_vector() {
            return Err(Error::NotAVector { index: 0 });
        }
        let m = sig.dim() - 2;
        let scale = -dot(&vector, &e_inf(m)?)?;
        if scale.abs() <= f64::EPSILON * vector.norm() {
            return Err(Error::VanishingNormalizer);
        }
        let coords = vector.vector_coords();
        let center = coords[..m].iter().map(|c| c / scale).collect();
        let radius_sq = dot(&vector, &vector)? / (scale * scale);
        if radius_sq <= 0.0 {
            return Err(Error::NonPositiveRadius(radius_sq));
        }
        Ok(Self {
            vector,
            center,
            radius: radius_sq.sqrt(),
        })
    }
}

/// `S = lift(center) - ½ ρ² e∞`.
pub fn sphere(center: &[f64], radius: f64) -> Result<SphereVector> {
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    let x = lift(center)?;
    let shift = e_inf(center.len())?.scale(0.5 * radius * radius);
    Ok(SphereVector {
        vector: x.vector() - &shift,
        center: center.to_vec(),
        radius,
    })
}

/// `S·X / ((S·e∞)(X·e∞))` for any grade-1 `S`: positive inside, zero on,
/// negative outside.
pub fn decision_value(s: &Multivector, x: &[f64]) -> Result<f64> {
    let p = lift(x)?;
    let inf = e_inf(x.len())?;
    let num = dot(s, p.vector())?;
    let den = dot(s, &inf)? * dot(p.vector(), &inf)?;
    if den.abs() <= f64::EPSILON * s.norm() {
        return Err(Error::VanishingNormalizer);
    }
    Ok(num / den)
}

pub fn sphere_side(s: &SphereVector, x: &[f64]) -> Result<f64> {
    decision_value(s.vector(), x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inside,
    On,
    Outside,
}

pub fn side_of(value: f64) -> Side {
    if value.abs() <= BOUNDARY_BAND {
        Side::On
    } else if value > 0.0 {
        Side::Inside
    } else {
        Side::Outside
    }
}

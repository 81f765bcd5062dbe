//! Labelled point clouds around a ground-truth hyperconic.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::conic_space::{incidence, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::perceptron::{Label, LabeledDataset, Sample};

/// Draws allowed per requested sample before giving up.
pub const DRAWS_PER_SAMPLE: usize = 1000;

/// Matrix of `s (x-h)²/a² ± (y-k)²/b² = 1` (`+` for an ellipse, `-` for a
/// hyperbola), axis-aligned.
pub fn axis_aligned_conic(center: [f64; 2], a2: f64, b2: f64, hyperbola: bool) -> SymmetricMatrix {
    let [h, k] = center;
    let qx = 1.0 / a2;
    let qy = if hyperbola { -1.0 / b2 } else { 1.0 / b2 };
    SymmetricMatrix::from_upper(&[qx, 0.0, -qx * h, qy, -qy * k, qx * h * h + qy * k * k - 1.0])
        .expect("six entries")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Unit circle.
    Circle,
    /// `x²/0.66 + y²/0.51 = 1`
    Ellipse,
    /// `(x-4.005)²/14.075 + y²/1.45 = 1`
    ShiftedEllipse,
    /// `(x+0.07)²/1.23 - y²/1.17 = 1`
    Hyperbola,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Circle,
        Preset::Ellipse,
        Preset::ShiftedEllipse,
        Preset::Hyperbola,
    ];

    pub fn conic(self) -> SymmetricMatrix {
        match self {
            Preset::Circle => axis_aligned_conic([0.0, 0.0], 1.0, 1.0, false),
            Preset::Ellipse => axis_aligned_conic([0.0, 0.0], 0.66, 0.51, false),
            Preset::ShiftedEllipse => axis_aligned_conic([4.005, 0.0], 14.075, 1.45, false),
            Preset::Hyperbola => axis_aligned_conic([-0.07, 0.0], 1.23, 1.17, true),
        }
    }

    pub fn bounds(self) -> Vec<(f64, f64)> {
        match self {
            Preset::Circle => vec![(-2.0, 2.0), (-2.0, 2.0)],
            Preset::Ellipse => vec![(-1.5, 1.5), (-1.5, 1.5)],
            Preset::ShiftedEllipse => vec![(-0.5, 8.5), (-2.5, 2.5)],
            Preset::Hyperbola => vec![(-3.0, 3.0), (-3.0, 3.0)],
        }
    }

    pub fn spec(self, per_class: usize, margin: f64, seed: u64) -> DatasetSpec {
        DatasetSpec {
            conic: self.conic(),
            per_class,
            margin,
            bounds: self.bounds(),
            noise: 0.0,
            seed,
            description: format!("preset {self}"),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Circle => "circle",
            Preset::Ellipse => "ellipse",
            Preset::ShiftedEllipse => "shifted-ellipse",
            Preset::Hyperbola => "hyperbola",
        })
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown preset {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub conic: SymmetricMatrix,
    pub per_class: usize,
    /// Samples with `|incidence|` below this are discarded.
    pub margin: f64,
    pub bounds: Vec<(f64, f64)>,
    /// Standard deviation of Gaussian jitter added after labelling.
    pub noise: f64,
    pub seed: u64,
    pub description: String,
}

impl DatasetSpec {
    fn validate(&self) -> Result<()> {
        let m = self.conic.input_dim();
        if self.bounds.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: self.bounds.len(),
            });
        }
        if self.bounds.iter().any(|(lo, hi)| !(lo < hi)) {
            return Err(Error::InvalidConfig(
                "bounding box needs lo < hi on every axis".into(),
            ));
        }
        if !(self.margin >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "margin must be >= 0, got {}",
                self.margin
            )));
        }
        if self.per_class == 0 {
            return Err(Error::InvalidConfig(
                "need at least one sample per class".into(),
            ));
        }
        if !(self.noise >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "noise must be >= 0, got {}",
                self.noise
            )));
        }
        Ok(())
    }

    /// Length of the bounding box diagonal.
    pub fn box_diameter(&self) -> f64 {
        self.bounds
            .iter()
            .map(|(lo, hi)| (hi - lo).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Rejection-samples the box until each side of the conic holds
/// `per_class` points outside the margin band. Labels follow the sign of
/// the incidence value.
pub fn generate(spec: &DatasetSpec) -> Result<LabeledDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let jitter = Normal::new(0.0, spec.noise).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let budget = DRAWS_PER_SAMPLE * 2 * spec.per_class;
    let (mut pos, mut neg) = (0, 0);
    let mut samples = Vec::with_capacity(2 * spec.per_class);
    for _ in 0..budget {
        if pos == spec.per_class && neg == spec.per_class {
            break;
        }
        let point: Vec<f64> = spec
            .bounds
            .iter()
            .map(|&(lo, hi)| rng.random_range(lo..hi))
            .collect();
        let value = incidence(&point, &spec.conic)?;
        if value.abs() < spec.margin || value == 0.0 {
            continue;
        }
        let label = Label::from_sign(value);
        let count = match label {
            Label::Positive => &mut pos,
            Label::Negative => &mut neg,
        };
        if *count == spec.per_class {
            continue;
        }
        *count += 1;
        let point = if spec.noise > 0.0 {
            point.iter().map(|v| v + jitter.sample(&mut rng)).collect()
        } else {
            point
        };
        samples.push(Sample { point, label });
    }
    if pos < spec.per_class || neg < spec.per_class {
        return Err(Error::BudgetExhausted { budget });
    }
    Ok(LabeledDataset {
        samples,
        description: spec.description.clone(),
    })
}

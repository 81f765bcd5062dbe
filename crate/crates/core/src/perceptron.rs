//! Single-neuron classifiers over lifted features.
//!
//! The elliptical flavor feeds the `D` conic-space coordinates of a point
//! into one neuron; its weight vector is a hyperconic and its zero set is the
//! decision boundary. The spherical flavor does the same with the `m + 2`
//! conformal coordinates, so the weight vector is a sphere.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conformal;
use crate::conic_space::{conic_dim, embed_point, tau_inv, ConicVector, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::fit::{classify_conic, StandardForm};
use crate::ga::Multivector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferKind {
    /// `2 / (1 + e^{-βz}) - 1`
    BipolarSigmoid,
    /// `sin(βz)` for `|βz| <= π/2`, saturating to `±1` beyond.
    BipolarSine,
}

impl fmt::Display for TransferKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransferKind::BipolarSigmoid => "bipolar-sigmoid",
            TransferKind::BipolarSine => "bipolar-sine",
        })
    }
}

impl FromStr for TransferKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bipolar-sigmoid" | "sigmoid" => Ok(TransferKind::BipolarSigmoid),
            "bipolar-sine" | "sine" => Ok(TransferKind::BipolarSine),
            other => Err(Error::Parse(format!("unknown transfer function {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferFunction {
    pub kind: TransferKind,
    pub beta: f64,
}

impl TransferFunction {
    pub fn new(kind: TransferKind, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "steepness must be positive, got {beta}"
            )));
        }
        Ok(Self { kind, beta })
    }

    pub fn sigmoid() -> Self {
        Self {
            kind: TransferKind::BipolarSigmoid,
            beta: 1.0,
        }
    }

    pub fn sine() -> Self {
        Self {
            kind: TransferKind::BipolarSine,
            beta: 1.0,
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        let t = self.beta * z;
        match self.kind {
            TransferKind::BipolarSigmoid => (0.5 * t).tanh(),
            TransferKind::BipolarSine => {
                if t.abs() <= FRAC_PI_2 {
                    t.sin()
                } else {
                    t.signum()
                }
            }
        }
    }

    pub fn derivative(&self, z: f64) -> f64 {
        let t = self.beta * z;
        match self.kind {
            TransferKind::BipolarSigmoid => {
                let f = (0.5 * t).tanh();
                0.5 * self.beta * (1.0 - f * f)
            }
            TransferKind::BipolarSine => {
                if t.abs() <= FRAC_PI_2 {
                    self.beta * t.cos()
                } else {
                    0.0
                }
            }
        }
    }
}

impl Default for TransferFunction {
    fn default() -> Self {
        Self::sigmoid()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Elliptical,
    Spherical,
}

impl Flavor {
    /// Number of weights for input dimension `m`.
    pub fn weight_len(self, m: usize) -> usize {
        match self {
            Flavor::Elliptical => conic_dim(m),
            Flavor::Spherical => m + 2,
        }
    }

    /// Feature vector whose plain dot product with the weights is the
    /// neuron's activation.
    ///
    /// For the spherical flavor the `e₋` coordinate is negated so that the
    /// dot product equals the Minkowski inner product `S·X`.
    pub fn features(self, x: &[f64]) -> Vec<f64> {
        match self {
            Flavor::Elliptical => embed_point(x).coords.into_coords(),
            Flavor::Spherical => {
                let half_sq = 0.5 * x.iter().map(|v| v * v).sum::<f64>();
                let mut f = x.to_vec();
                f.push(half_sq - 0.5);
                f.push(-(half_sq + 0.5));
                f
            }
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Elliptical => "elliptical",
            Flavor::Spherical => "spherical",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "elliptical" => Ok(Flavor::Elliptical),
            "spherical" => Ok(Flavor::Spherical),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn value(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    /// Strictly positive values are `Positive`; everything else `Negative`.
    pub fn from_sign(v: f64) -> Self {
        if v > 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Positive => "+1",
            Label::Negative => "-1",
        })
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" => Ok(Label::Positive),
            "-1" => Ok(Label::Negative),
            other => Err(Error::Parse(format!("invalid label {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub point: Vec<f64>,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LabeledDataset {
    pub samples: Vec<Sample>,
    pub description: String,
}

impl LabeledDataset {
    pub fn new(samples: Vec<Sample>) -> Self {
        Self {
            samples,
            description: String::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Dimension shared by all points.
    pub fn input_dim(&self) -> Result<usize> {
        let m = self
            .samples
            .first()
            .ok_or_else(|| Error::InvalidDataset("dataset is empty".into()))?
            .point
            .len();
        if m == 0 || self.samples.iter().any(|s| s.point.len() != m) {
            return Err(Error::InvalidDataset(
                "points have inconsistent dimensions".into(),
            ));
        }
        Ok(m)
    }

    /// Checks the training preconditions: nonempty, finite, both labels.
    pub fn validate(&self) -> Result<usize> {
        let m = self.input_dim()?;
        if self
            .samples
            .iter()
            .any(|s| s.point.iter().any(|v| !v.is_finite()))
        {
            return Err(Error::InvalidDataset("non-finite coordinate".into()));
        }
        let pos = self.samples.iter().any(|s| s.label == Label::Positive);
        let neg = self.samples.iter().any(|s| s.label == Label::Negative);
        if !(pos && neg) {
            return Err(Error::InvalidDataset("both classes must be present".into()));
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerceptronModel {
    pub flavor: Flavor,
    pub input_dim: usize,
    pub transfer: TransferFunction,
    pub weights: Vec<f64>,
}

impl PerceptronModel {
    pub fn new(
        flavor: Flavor,
        input_dim: usize,
        transfer: TransferFunction,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let expected = flavor.weight_len(input_dim);
        if input_dim == 0 || weights.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: weights.len(),
            });
        }
        Ok(Self {
            flavor,
            input_dim,
            transfer,
            weights,
        })
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Pre-transfer activation `ω · features(x)`.
    pub fn activation(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        Ok(dot(&self.weights, &self.flavor.features(x)))
    }

    pub fn forward(&self, x: &[f64]) -> Result<f64> {
        Ok(self.transfer.eval(self.activation(x)?))
    }

    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        Ok(Label::from_sign(self.activation(x)?))
    }

    pub fn accuracy(&self, data: &LabeledDataset) -> Result<f64> {
        if data.is_empty() {
            return Err(Error::InvalidDataset("dataset is empty".into()));
        }
        let mut correct = 0usize;
        for s in &data.samples {
            if self.predict(&s.point)? == s.label {
                correct += 1;
            }
        }
        Ok(correct as f64 / data.len() as f64)
    }

    /// Weights as a sphere vector in signature `(m+1, 1)`.
    pub fn sphere_vector(&self) -> Result<Multivector> {
        if self.flavor != Flavor::Spherical {
            return Err(Error::InvalidConfig("model is not spherical".into()));
        }
        Multivector::vector(conformal::signature(self.input_dim)?, &self.weights)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Squared error `(f(ω·φ) - y)²` of one sample.
pub fn sample_loss(
    transfer: &TransferFunction,
    weights: &[f64],
    features: &[f64],
    label: f64,
) -> f64 {
    let e = transfer.eval(dot(weights, features)) - label;
    e * e
}

/// Gradient of [`sample_loss`] with respect to the weights.
pub fn sample_gradient(
    transfer: &TransferFunction,
    weights: &[f64],
    features: &[f64],
    label: f64,
) -> Vec<f64> {
    let z = dot(weights, features);
    let g = 2.0 * (transfer.eval(z) - label) * transfer.derivative(z);
    features.iter().map(|f| g * f).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub eta: f64,
    pub max_epochs: usize,
    /// Keep training at least this many epochs even once the target is met.
    pub min_epochs: usize,
    pub target_accuracy: f64,
    pub seed: u64,
    pub transfer: TransferFunction,
    /// Train on per-axis standardized coordinates and map the learned conic
    /// back. Elliptical flavor only; the resulting activations are identical
    /// to those of a model trained in raw coordinates with the same weights.
    pub standardize: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            eta: 0.05,
            max_epochs: 5000,
            min_epochs: 0,
            target_accuracy: 1.0,
            seed: 1,
            transfer: TransferFunction::default(),
            standardize: false,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "learning rate must be positive, got {}",
                self.eta
            )));
        }
        if self.max_epochs == 0 {
            return Err(Error::InvalidConfig("max epochs must be at least 1".into()));
        }
        if self.min_epochs > self.max_epochs {
            return Err(Error::InvalidConfig(format!(
                "min epochs {} exceeds max epochs {}",
                self.min_epochs, self.max_epochs
            )));
        }
        if !(0.0..=1.0).contains(&self.target_accuracy) {
            return Err(Error::InvalidConfig(format!(
                "target accuracy must lie in [0, 1], got {}",
                self.target_accuracy
            )));
        }
        TransferFunction::new(self.transfer.kind, self.transfer.beta)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub epochs: usize,
    pub final_accuracy: f64,
    pub reached_target: bool,
    /// Mean per-sample loss after each epoch's updates.
    pub loss_curve: Vec<f64>,
}

/// Per-axis `x̃ = (x - μ) / σ`.
struct Standardizer {
    mean: Vec<f64>,
    scale: Vec<f64>,
}

impl Standardizer {
    fn fit(data: &LabeledDataset, m: usize) -> Self {
        let n = data.len() as f64;
        let mean: Vec<f64> = (0..m)
            .map(|k| data.samples.iter().map(|s| s.point[k]).sum::<f64>() / n)
            .collect();
        let scale = (0..m)
            .map(|k| {
                let var = data
                    .samples
                    .iter()
                    .map(|s| (s.point[k] - mean[k]).powi(2))
                    .sum::<f64>()
                    / n;
                if var > 0.0 {
                    var.sqrt()
                } else {
                    1.0
                }
            })
            .collect();
        Self { mean, scale }
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.mean)
            .zip(&self.scale)
            .map(|((v, mu), s)| (v - mu) / s)
            .collect()
    }

    /// Homogeneous matrix `H` with `x̃' = H x'`.
    fn homogeneous(&self) -> Vec<Vec<f64>> {
        let m = self.mean.len();
        let mut h = vec![vec![0.0; m + 1]; m + 1];
        for k in 0..m {
            h[k][k] = 1.0 / self.scale[k];
            h[k][m] = -self.mean[k] / self.scale[k];
        }
        h[m][m] = 1.0;
        h
    }

    /// Re-expresses conic weights learned in standardized coordinates in
    /// the original ones: `A = Hᵀ Ã H`.
    fn pull_back(&self, weights: &[f64]) -> Result<Vec<f64>> {
        let a = tau_inv(&ConicVector::new(weights.to_vec())?);
        let back = a.congruence(&self.homogeneous())?;
        Ok(crate::conic_space::tau(&back).into_coords())
    }
}

/// Stochastic gradient descent on the squared error with seeded per-epoch
/// shuffling. Stops at the first epoch, no earlier than `min_epochs`, whose
/// training accuracy reaches the target, or after `max_epochs`.
pub fn train(
    data: &LabeledDataset,
    cfg: &TrainConfig,
    flavor: Flavor,
) -> Result<(PerceptronModel, TrainReport)> {
    let m = data.validate()?;
    cfg.validate()?;
    if cfg.standardize && flavor != Flavor::Elliptical {
        return Err(Error::InvalidConfig(
            "standardization is only supported for the elliptical flavor".into(),
        ));
    }
    let standardizer = cfg.standardize.then(|| Standardizer::fit(data, m));
    let features: Vec<Vec<f64>> = data
        .samples
        .iter()
        .map(|s| match &standardizer {
            Some(st) => flavor.features(&st.apply(&s.point)),
            None => flavor.features(&s.point),
        })
        .collect();
    let labels: Vec<f64> = data.samples.iter().map(|s| s.label.value()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dim = flavor.weight_len(m);
    let mut w: Vec<f64> = (0..dim).map(|_| rng.random_range(-0.5..=0.5)).collect();
    let mut order: Vec<usize> = (0..data.len()).collect();
    let transfer = cfg.transfer;

    let accuracy = |w: &[f64]| {
        let correct = features
            .iter()
            .zip(&labels)
            .filter(|(f, &y)| Label::from_sign(dot(w, f)).value() == y)
            .count();
        correct as f64 / labels.len() as f64
    };

    let mut loss_curve = Vec::new();
    let mut final_accuracy = accuracy(&w);
    let mut reached_target = false;
    let mut epochs = 0;
    for epoch in 1..=cfg.max_epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let z = dot(&w, &features[i]);
            let g = 2.0 * (transfer.eval(z) - labels[i]) * transfer.derivative(z);
            for (wk, fk) in w.iter_mut().zip(&features[i]) {
                *wk -= cfg.eta * g * fk;
            }
        }
        let loss = features
            .iter()
            .zip(&labels)
            .map(|(f, &y)| sample_loss(&transfer, &w, f, y))
            .sum::<f64>()
            / labels.len() as f64;
        if !loss.is_finite() || w.iter().any(|v| !v.is_finite()) {
            return Err(Error::Diverged { epoch });
        }
        loss_curve.push(loss);
        epochs = epoch;
        final_accuracy = accuracy(&w);
        reached_target = final_accuracy >= cfg.target_accuracy;
        if reached_target && epoch >= cfg.min_epochs {
            break;
        }
    }

    if let Some(st) = &standardizer {
        w = st.pull_back(&w)?;
    }
    let model = PerceptronModel::new(flavor, m, transfer, w)?;
    Ok((
        model,
        TrainReport {
            epochs,
            final_accuracy,
            reached_target,
            loss_curve,
        },
    ))
}

/// The decision conic of an elliptical model and, for `m = 2`, its
/// standard form.
pub fn extract_conic(model: &PerceptronModel) -> Result<(SymmetricMatrix, StandardForm)> {
    if model.flavor != Flavor::Elliptical {
        return Err(Error::InvalidConfig(
            "conic extraction needs an elliptical model".into(),
        ));
    }
    let a = tau_inv(&ConicVector::new(model.weights.clone())?);
    let form = classify_conic(&a)?;
    Ok((a, form))
}

/// Matrix `A` with `x'ᵀ A x'` equal to the model's activation at `x`, for
/// either flavor.
pub fn decision_conic(model: &PerceptronModel) -> Result<SymmetricMatrix> {
    let m = model.input_dim;
    match model.flavor {
        Flavor::Elliptical => Ok(tau_inv(&ConicVector::new(model.weights.clone())?).scale(0.5)),
        Flavor::Spherical => {
            let w = &model.weights;
            let mut a = SymmetricMatrix::zeros(m + 1)?;
            for i in 0..m {
                a.set(i, i, 0.5 * (w[m] - w[m + 1]));
                a.set(i, m, 0.5 * w[i]);
            }
            a.set(m, m, -0.5 * (w[m] + w[m + 1]));
            Ok(a)
        }
    }
}

/// Normalized inside/outside value of a spherical model's weight sphere.
pub fn spherical_decision(model: &PerceptronModel, x: &[f64]) -> Result<f64> {
    model.check_point(x)?;
    conformal::decision_value(&model.sphere_vector()?, x)
}

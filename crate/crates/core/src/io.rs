//! Text formats.
//!
//! - Datasets are CSV with header `x1,…,xm,label` and labels `+1`/`-1`.
//!   Point files use the same layout; the label column is optional.
//! - Conic vectors and symmetric matrices are one comma-separated line
//!   (matrices as their row-major upper triangle).
//! - Models are five lines: flavor, `m`, transfer kind, steepness, and the
//!   comma-separated weights.
//!
//! Floats are written with Rust's shortest round-trip representation, so
//! write-then-read is lossless.

use std::io::{Read, Write};

use crate::conic_space::{ConicVector, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::perceptron::{
    Flavor, Label, LabeledDataset, PerceptronModel, Sample, TransferFunction, TransferKind,
};

/// Shortest round-trip decimal, switching to exponent form for very large
/// or very small magnitudes.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

pub fn format_line(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| format_f64(v))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_line(line: &str) -> Result<Vec<f64>> {
    line.trim()
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number {t:?}: {e}")))
        })
        .collect()
}

pub fn format_conic(v: &ConicVector) -> String {
    format_line(v.coords())
}

pub fn parse_conic(line: &str) -> Result<ConicVector> {
    ConicVector::new(parse_line(line)?)
}

pub fn format_matrix(a: &SymmetricMatrix) -> String {
    format_line(a.upper())
}

pub fn parse_matrix(line: &str) -> Result<SymmetricMatrix> {
    SymmetricMatrix::from_upper(&parse_line(line)?)
}

fn header(m: usize, with_label: bool) -> Vec<String> {
    let mut h: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    if with_label {
        h.push("label".into());
    }
    h
}

pub fn write_dataset<W: Write>(data: &LabeledDataset, out: W) -> Result<()> {
    let m = data.input_dim()?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(m, true))?;
    for s in &data.samples {
        let mut rec: Vec<String> = s.point.iter().map(|&v| format_f64(v)).collect();
        rec.push(s.label.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_points<W: Write>(points: &[Vec<f64>], out: W) -> Result<()> {
    let m = points.first().ok_or(Error::EmptyInput)?.len();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(m, false))?;
    for p in points {
        w.write_record(p.iter().map(|&v| format_f64(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Coordinates plus the label column, when present.
pub type PointTable = (Vec<Vec<f64>>, Option<Vec<Label>>);

/// Points and, when the header ends in `label`, their labels.
pub fn read_points<R: Read>(input: R) -> Result<PointTable> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let head = r.headers()?.clone();
    let labelled = head.iter().next_back() == Some("label");
    let m = head.len() - usize::from(labelled);
    for (i, name) in head.iter().take(m).enumerate() {
        if name != format!("x{}", i + 1) {
            return Err(Error::Parse(format!(
                "unexpected column {name:?}, want x{}",
                i + 1
            )));
        }
    }
    if m == 0 {
        return Err(Error::Parse("no coordinate columns".into()));
    }
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let point = rec
            .iter()
            .take(m)
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("row {}: bad number {t:?}: {e}", line + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if labelled {
            labels.push(rec.get(m).unwrap_or_default().parse::<Label>()?);
        }
        points.push(point);
    }
    Ok((points, labelled.then_some(labels)))
}

pub fn read_dataset<R: Read>(input: R) -> Result<LabeledDataset> {
    let (points, labels) = read_points(input)?;
    let labels = labels.ok_or_else(|| Error::Parse("dataset needs a label column".into()))?;
    Ok(LabeledDataset::new(
        points
            .into_iter()
            .zip(labels)
            .map(|(point, label)| Sample { point, label })
            .collect(),
    ))
}

pub fn format_model(model: &PerceptronModel) -> String {
    format!(
        "{}\n{}\n{}\n{}\n{}\n",
        model.flavor,
        model.input_dim,
        model.transfer.kind,
        format_f64(model.transfer.beta),
        format_line(&model.weights)
    )
}

pub fn parse_model(text: &str) -> Result<PerceptronModel> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    let [flavor, m, kind, beta, weights] = lines.as_slice() else {
        return Err(Error::Parse(format!(
            "model file needs 5 lines, found {}",
            lines.len()
        )));
    };
    let flavor: Flavor = flavor.parse()?;
    let m: usize = m
        .parse()
        .map_err(|e| Error::Parse(format!("bad dimension {m:?}: {e}")))?;
    let kind: TransferKind = kind.parse()?;
    let beta: f64 = beta
        .parse()
        .map_err(|e| Error::Parse(format!("bad steepness {beta:?}: {e}")))?;
    let transfer = TransferFunction::new(kind, beta)?;
    PerceptronModel::new(flavor, m, transfer, parse_line(weights)?)
}

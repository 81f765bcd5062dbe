//! Command implementations behind the `hyperconic` binary.
//!
//! Every command writes its report to the supplied writer and its files
//! atomically (temp file in the target directory, then rename).

pub mod plot;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use hyperconic::conic_space::conic_dim;
use hyperconic::dataset::{self, DatasetSpec, Preset};
use hyperconic::fit::{classify_conic, fit_exact, fit_oracle, ConicFitResult};
use hyperconic::perceptron::{decision_conic, train};
use hyperconic::{
    io, ConicKind, Flavor, LabeledDataset, Sample, SymmetricMatrix, TrainConfig, TransferFunction,
    TransferKind,
};

use crate::plot::{PlotSpec, Window};

#[derive(Debug, Parser)]
#[command(
    name = "hyperconic",
    version,
    about = "Fit hyperconics and train elliptical perceptrons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a labelled dataset around a ground-truth conic.
    Generate(GenerateArgs),
    /// Fit the conic through a point file and classify it.
    Fit(FitArgs),
    /// Print the raw wedge-and-dual conic vector of a point file.
    Dual(DualArgs),
    /// Train a perceptron on a labelled dataset.
    Train(TrainArgs),
    /// Label points with a trained model.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
pub struct SvgArgs {
    /// Also write an SVG plot here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value_t = 480)]
    pub width: u32,
    #[arg(long, default_value_t = 480)]
    pub height: u32,
    /// Marching-squares samples per axis.
    #[arg(long, default_value_t = 400)]
    pub grid: usize,
}

impl SvgArgs {
    fn spec(&self) -> anyhow::Result<PlotSpec> {
        if self.width == 0 || self.height == 0 || self.grid == 0 {
            bail!("plot dimensions and grid must be positive");
        }
        Ok(PlotSpec {
            width: self.width,
            height: self.height,
            grid: self.grid,
            ..PlotSpec::default()
        })
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Named ground truth: circle, ellipse, shifted-ellipse, hyperbola.
    #[arg(long, conflicts_with = "conic")]
    pub preset: Option<Preset>,
    /// Ground truth as the row-major upper triangle of its symmetric matrix.
    #[arg(long, allow_hyphen_values = true)]
    pub conic: Option<String>,
    /// Samples per class.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,
    /// Bounding box as `lo1,hi1,lo2,hi2,...`.
    #[arg(long = "box", allow_hyphen_values = true)]
    pub bounds: Option<String>,
    /// Gaussian jitter added after labelling.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
    #[command(flatten)]
    pub plot: SvgArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV point file; a label column is ignored.
    #[arg(long)]
    pub input: PathBuf,
    /// Write the conic vector here.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub plot: SvgArgs,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Write the model file here.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = Flavor::Elliptical)]
    pub flavor: Flavor,
    #[arg(long, default_value_t = 0.05)]
    pub eta: f64,
    #[arg(long, default_value_t = 5000)]
    pub epochs: usize,
    /// Keep training this many epochs even after the target is met.
    #[arg(long, default_value_t = 0)]
    pub min_epochs: usize,
    #[arg(long, default_value_t = TransferKind::BipolarSigmoid)]
    pub transfer: TransferKind,
    /// Steepness of the transfer function.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub target_accuracy: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Train on standardized coordinates and map the conic back.
    #[arg(long)]
    pub standardize: bool,
    #[command(flatten)]
    pub plot: SvgArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// CSV point file; with a label column the accuracy is reported too.
    #[arg(long)]
    pub input: PathBuf,
    /// Write the labelled points here instead of the report.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Exit status for a failed command: 2 for numeric or degeneracy failures
/// from the algorithms, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    let numeric = err
        .chain()
        .filter_map(|e| e.downcast_ref::<hyperconic::Error>())
        .any(hyperconic::Error::is_numeric);
    if numeric {
        2
    } else {
        1
    }
}

pub fn run(cli: Cli, out: &mut impl Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Generate(args) => generate(&args, out),
        Command::Fit(args) => fit(&args, out),
        Command::Dual(args) => dual(&args, out),
        Command::Train(args) => train_cmd(&args, out),
        Command::Classify(args) => classify(&args, out),
    }
}

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn open(path: &Path) -> anyhow::Result<fs::File> {
    fs::File::open(path).with_context(|| format!("reading {}", path.display()))
}

fn read_points(path: &Path) -> anyhow::Result<Vec<Vec<f64>>> {
    let (points, _) =
        io::read_points(open(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if points.is_empty() {
        bail!("{} holds no points", path.display());
    }
    Ok(points)
}

fn parse_list(text: &str, what: &str) -> anyhow::Result<Vec<f64>> {
    io::parse_line(text).with_context(|| format!("parsing {what}"))
}

fn dataset_spec(args: &GenerateArgs) -> anyhow::Result<DatasetSpec> {
    let mut spec = match (&args.preset, &args.conic) {
        (Some(p), _) => p.spec(args.samples, args.margin, args.seed),
        (None, Some(text)) => {
            let conic = SymmetricMatrix::from_upper(&parse_list(text, "--conic")?)
                .context("--conic needs the upper triangle of a symmetric matrix")?;
            let m = conic.input_dim();
            DatasetSpec {
                conic,
                per_class: args.samples,
                margin: args.margin,
                bounds: vec![(-2.0, 2.0); m],
                noise: 0.0,
                seed: args.seed,
                description: "custom conic".into(),
            }
        }
        (None, None) => Preset::Circle.spec(args.samples, args.margin, args.seed),
    };
    if let Some(text) = &args.bounds {
        let v = parse_list(text, "--box")?;
        if v.len() % 2 != 0 {
            bail!("--box needs lo,hi pairs, got {} numbers", v.len());
        }
        spec.bounds = v.chunks(2).map(|c| (c[0], c[1])).collect();
    }
    spec.noise = args.noise;
    Ok(spec)
}

fn write_svg(
    args: &SvgArgs,
    samples: &[Sample],
    conic: Option<&SymmetricMatrix>,
    window: Option<Window>,
) -> anyhow::Result<()> {
    let Some(path) = &args.svg else {
        return Ok(());
    };
    let m = samples.first().map_or(2, |s| s.point.len());
    if m != 2 || conic.is_some_and(|a| a.input_dim() != 2) {
        bail!("SVG output needs 2-D points");
    }
    let window = window.unwrap_or_else(|| {
        Window::around(&samples.iter().map(|s| s.point.clone()).collect::<Vec<_>>())
    });
    write_atomic(
        path,
        plot::render(&args.spec()?, window, samples, conic).as_bytes(),
    )
}

fn unlabelled(points: &[Vec<f64>]) -> Vec<Sample> {
    // draw unlabelled points as the negative marker
    points
        .iter()
        .map(|p| Sample {
            point: p.clone(),
            label: hyperconic::Label::Negative,
        })
        .collect()
}

fn generate(args: &GenerateArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let spec = dataset_spec(args)?;
    let data = dataset::generate(&spec)?;
    let mut buf = Vec::new();
    io::write_dataset(&data, &mut buf)?;
    write_atomic(&args.output, &buf)?;
    let window = (spec.bounds.len() == 2).then(|| Window {
        x: spec.bounds[0],
        y: spec.bounds[1],
    });
    write_svg(&args.plot, &data.samples, Some(&spec.conic), window)?;
    writeln!(
        out,
        "wrote {} samples ({}) to {}",
        data.len(),
        spec.description,
        args.output.display()
    )?;
    Ok(())
}

fn fit_points(points: &[Vec<f64>]) -> anyhow::Result<(ConicFitResult, &'static str)> {
    let needed = conic_dim(points[0].len()) - 1;
    if points.len() == needed {
        return Ok((fit_exact(points)?, "exact"));
    }
    if points.len() < needed {
        bail!("need at least {needed} points, found {}", points.len());
    }
    let conic = fit_oracle(points)?;
    let residuals = points
        .iter()
        .map(|p| hyperconic::conic_space::embed_point(p).coords.dot(&conic))
        .collect::<hyperconic::Result<Vec<_>>>()?;
    Ok((
        ConicFitResult {
            matrix: hyperconic::conic_space::tau_inv(&conic),
            conic,
            residuals,
        },
        "least squares",
    ))
}

fn format_matrix_rows(a: &SymmetricMatrix) -> String {
    a.rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
            format!("  [{}]\n", cells.join(" "))
        })
        .collect()
}

fn fit(args: &FitArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let points = read_points(&args.input)?;
    let (result, method) = fit_points(&points)?;
    writeln!(out, "method: {method} ({} points)", points.len())?;
    writeln!(out, "conic: {}", io::format_conic(&result.conic))?;
    write!(out, "matrix:\n{}", format_matrix_rows(&result.matrix))?;
    if points[0].len() == 2 {
        let form = classify_conic(&result.matrix)?;
        writeln!(out, "kind: {}", form.kind)?;
        writeln!(out, "equation: {}", form.equation())?;
    }
    writeln!(out, "max residual: {:.3e}", result.max_residual())?;
    writeln!(out, "residuals: {}", io::format_line(&result.residuals))?;
    if let Some(path) = &args.output {
        write_atomic(
            path,
            format!("{}\n", io::format_conic(&result.conic)).as_bytes(),
        )?;
    }
    write_svg(&args.plot, &unlabelled(&points), Some(&result.matrix), None)
}

fn dual(args: &DualArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let points = read_points(&args.input)?;
    let line = format!("{}\n", io::format_conic(&fit_exact(&points)?.conic));
    match &args.output {
        Some(path) => write_atomic(path, line.as_bytes()),
        None => Ok(out.write_all(line.as_bytes())?),
    }
}

/// `(w₁, …, w_D)` with two decimals.
pub fn format_weights(w: &[f64]) -> String {
    let cells: Vec<String> = w
        .iter()
        .map(|v| {
            let s = format!("{v:.2}");
            if s == "-0.00" {
                "0.00".to_string()
            } else {
                s
            }
        })
        .collect();
    format!("({})", cells.join(", "))
}

fn read_dataset(path: &Path) -> anyhow::Result<LabeledDataset> {
    io::read_dataset(open(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn train_cmd(args: &TrainArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let data = read_dataset(&args.input)?;
    let cfg = TrainConfig {
        eta: args.eta,
        max_epochs: args.epochs,
        min_epochs: args.min_epochs,
        target_accuracy: args.target_accuracy,
        seed: args.seed,
        transfer: TransferFunction::new(args.transfer, args.beta)?,
        standardize: args.standardize,
    };
    let (model, report) = train(&data, &cfg, args.flavor)?;
    writeln!(
        out,
        "epochs: {}{}",
        report.epochs,
        if report.reached_target {
            ""
        } else {
            " (target not reached)"
        }
    )?;
    writeln!(out, "accuracy: {:.4}", report.final_accuracy)?;
    if let Some(loss) = report.loss_curve.last() {
        writeln!(out, "loss: {loss:.6}")?;
    }
    writeln!(out, "weights: {}", format_weights(&model.weights))?;
    let conic = decision_conic(&model)?;
    if model.input_dim == 2 {
        let form = classify_conic(&conic)?;
        writeln!(out, "kind: {}", form.kind)?;
        writeln!(out, "equation: {}", form.equation())?;
        if form.kind != ConicKind::Degenerate {
            writeln!(out, "center: {}", io::format_line(&form.center))?;
        }
    }
    if let Some(path) = &args.output {
        write_atomic(path, io::format_model(&model).as_bytes())?;
    }
    write_svg(&args.plot, &data.samples, Some(&conic), None)
}

fn classify(args: &ClassifyArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let text = fs::read_to_string(&args.model)
        .with_context(|| format!("reading {}", args.model.display()))?;
    let model =
        io::parse_model(&text).with_context(|| format!("parsing {}", args.model.display()))?;
    let (points, truth) = io::read_points(open(&args.input)?)
        .with_context(|| format!("parsing {}", args.input.display()))?;
    let predicted = LabeledDataset::new(
        points
            .iter()
            .map(|p| {
                Ok(Sample {
                    point: p.clone(),
                    label: model.predict(p)?,
                })
            })
            .collect::<hyperconic::Result<Vec<_>>>()?,
    );
    let mut buf = Vec::new();
    io::write_dataset(&predicted, &mut buf)?;
    match &args.output {
        Some(path) => write_atomic(path, &buf)?,
        None => out.write_all(&buf)?,
    }
    if let Some(truth) = truth {
        let correct = truth
            .iter()
            .zip(&predicted.samples)
            .filter(|(t, s)| **t == s.label)
            .count();
        let line = format!(
            "accuracy: {:.4} ({correct}/{})",
            correct as f64 / truth.len() as f64,
            truth.len()
        );
        if args.output.is_some() {
            writeln!(out, "{line}")?;
        } else {
            eprintln!("{line}");
        }
    }
    Ok(())
}

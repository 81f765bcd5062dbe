//! Exact hyperconics through points, and plane-conic standard forms.
//!
//! [`fit_exact`] lifts `D - 1` points into the conic space, wedges them into
//! a `(D-1)`-blade `u` and returns its Clifford dual `u*`, the one vector
//! orthogonal to every lifted point. [`fit_oracle`] solves the same
//! incidence system by elimination and serves as the cross-check; it also
//! handles more than `D - 1` points through the minimal-residual direction.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::conic_space::{conic_dim, embed_point, tau_inv, ConicVector, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::ga::{self, Signature};

/// Wedge norms at or below this times the product of input norms are
/// rejected as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Relative pivot threshold for rank decisions in the oracle.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Relative threshold on `det A` below which a plane conic is degenerate.
pub const DETERMINANT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ConicFitResult {
    pub conic: ConicVector,
    pub matrix: SymmetricMatrix,
    /// Incidence value of each input point against `conic`.
    pub residuals: Vec<f64>,
}

impl ConicFitResult {
    fn from_conic(conic: ConicVector, points: &[Vec<f64>]) -> Result<Self> {
        let residuals = points
            .iter()
            .map(|p| embed_point(p).coords.dot(&conic))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            matrix: tau_inv(&conic),
            conic,
            residuals,
        })
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

fn common_dim(points: &[Vec<f64>]) -> Result<usize> {
    let m = points.first().ok_or(Error::EmptyInput)?.len();
    if m == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if let Some(p) = points.iter().find(|p| p.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: p.len(),
        });
    }
    Ok(m)
}

/// The hyperconic through exactly `D - 1` points, via wedge and dual.
pub fn fit_exact(points: &[Vec<f64>]) -> Result<ConicFitResult> {
    let m = common_dim(points)?;
    let d = conic_dim(m);
    if points.len() != d - 1 {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            found: points.len(),
        });
    }
    let sig = Signature::euclidean(d)?;
    let lifted = points
        .iter()
        .map(|p| embed_point(p).coords.to_multivector())
        .collect::<Result<Vec<_>>>()?;
    let blade = ga::wedge_all(&lifted)?;
    let scale: f64 = lifted.iter().map(|v| v.norm()).product();
    if blade.norm() <= DEGENERACY_TOLERANCE * scale {
        return Err(Error::Degenerate(format!(
            "lifted points are linearly dependent (wedge norm {:.3e})",
            blade.norm()
        )));
    }
    debug_assert_eq!(blade.signature(), sig);
    let conic = ConicVector::from_multivector(&blade.dual())?;
    ConicFitResult::from_conic(conic, points)
}

/// Null vector of the incidence system `[x̲_i]ᵀ a = 0`.
///
/// With exactly `D - 1` rows this is Gaussian elimination with partial
/// pivoting; with more rows it is the right-singular vector of the smallest
/// singular value. Fewer rows, or a rank deficiency, is ambiguous.
pub fn fit_oracle(points: &[Vec<f64>]) -> Result<ConicVector> {
    let m = common_dim(points)?;
    let d = conic_dim(m);
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|p| embed_point(p).coords.into_coords())
        .collect();
    if rows.len() < d - 1 {
        let rank = eliminate(rows, d).1.len();
        return Err(Error::Ambiguous {
            rank,
            needed: d - 1,
        });
    }
    if rows.len() == d - 1 {
        let (reduced, pivots) = eliminate(rows, d);
        if pivots.len() < d - 1 {
            return Err(Error::Ambiguous {
                rank: pivots.len(),
                needed: d - 1,
            });
        }
        return ConicVector::new(null_vector(&reduced, &pivots, d));
    }
    least_singular_direction(&rows, d)
}

/// Reduced row echelon form; returns the rows and the pivot columns.
fn eliminate(mut rows: Vec<Vec<f64>>, cols: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let scale = rows
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let (best, best_val) = (r..rows.len())
            .map(|i| (i, rows[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_val <= RANK_TOLERANCE * scale {
            continue;
        }
        rows.swap(r, best);
        let p = rows[r][c];
        for v in rows[r].iter_mut() {
            *v /= p;
        }
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][c];
                if f != 0.0 {
                    for k in 0..cols {
                        rows[i][k] -= f * rows[r][k];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

fn null_vector(reduced: &[Vec<f64>], pivots: &[usize], cols: usize) -> Vec<f64> {
    let free = (0..cols)
        .find(|c| !pivots.contains(c))
        .expect("one free column");
    let mut v = vec![0.0; cols];
    v[free] = 1.0;
    for (row, &p) in reduced.iter().zip(pivots) {
        v[p] = -row[free];
    }
    v
}

fn least_singular_direction(rows: &[Vec<f64>], d: usize) -> Result<ConicVector> {
    let a = DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j]);
    let eig = SymmetricEigen::new(a.transpose() * &a);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let largest = eig.eigenvalues[order[d - 1]].max(f64::MIN_POSITIVE);
    // eigenvalues of AᵀA are squared singular values
    if eig.eigenvalues[order[1]].max(0.0).sqrt() <= RANK_TOLERANCE * largest.sqrt() {
        let rank = order
            .iter()
            .filter(|&&i| eig.eigenvalues[i].max(0.0).sqrt() > RANK_TOLERANCE * largest.sqrt())
            .count();
        return Err(Error::Ambiguous {
            rank,
            needed: d - 1,
        });
    }
    ConicVector::new(eig.eigenvectors.column(order[0]).iter().copied().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    Parabola,
    /// Line pairs, single points, or no real points at all.
    Degenerate,
    /// Hyperconics in more than two dimensions.
    Unclassified,
}

impl fmt::Display for ConicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConicKind::Ellipse => "ellipse",
            ConicKind::Hyperbola => "hyperbola",
            ConicKind::Parabola => "parabola",
            ConicKind::Degenerate => "degenerate",
            ConicKind::Unclassified => "unclassified",
        })
    }
}

/// A plane conic in its principal frame.
///
/// With `u` along `rotation` and `v` perpendicular, both measured from
/// `center`:
/// - ellipse: `u²/a² + v²/b² = 1`, `a >= b` (`semi_axes = [a, b]`);
/// - hyperbola: `u²/a² - v²/b² = 1`, `u` the transverse axis;
/// - parabola: `v² = 4 f u`, `center` the vertex, `semi_axes = [f, 0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm {
    pub kind: ConicKind,
    pub center: Vec<f64>,
    pub semi_axes: [f64; 2],
    pub rotation: f64,
}

impl StandardForm {
    fn degenerate(center: Vec<f64>) -> Self {
        Self {
            kind: ConicKind::Degenerate,
            center,
            semi_axes: [0.0, 0.0],
            rotation: 0.0,
        }
    }

    pub fn squared_axes(&self) -> [f64; 2] {
        [self.semi_axes[0].powi(2), self.semi_axes[1].powi(2)]
    }

    /// Equation text in the style `(x-4.005)²/14.075 + y²/1.45 = 1`.
    pub fn equation(&self) -> String {
        let [a2, b2] = self.squared_axes();
        let (h, k) = match self.center.as_slice() {
            [h, k] => (*h, *k),
            _ => return format!("{} (no plane equation)", self.kind),
        };
        let near = |x: f64, y: f64| ((x - y + PI).rem_euclid(2.0 * PI) - PI).abs() < 1e-9;
        let along_x = near(self.rotation, 0.0) || near(self.rotation, PI);
        let along_y = near(self.rotation, PI / 2.0) || near(self.rotation, -PI / 2.0);
        let term = |var: &str, c: f64, denom: f64| {
            let base = shifted(var, c);
            format!("{base}²/{}", num(denom))
        };
        match self.kind {
            ConicKind::Ellipse if along_x => {
                format!("{} + {} = 1", term("x", h, a2), term("y", k, b2))
            }
            ConicKind::Ellipse if along_y => {
                format!("{} + {} = 1", term("x", h, b2), term("y", k, a2))
            }
            ConicKind::Hyperbola if along_x => {
                format!("{} - {} = 1", term("x", h, a2), term("y", k, b2))
            }
            ConicKind::Hyperbola if along_y => {
                format!("{} - {} = 1", term("y", k, a2), term("x", h, b2))
            }
            ConicKind::Ellipse | ConicKind::Hyperbola => {
                let op = if self.kind == ConicKind::Ellipse {
                    "+"
                } else {
                    "-"
                };
                format!(
                    "u²/{} {op} v²/{} = 1, u = {}, v = {}",
                    num(a2),
                    num(b2),
                    frame_axis(h, k, self.rotation.cos(), self.rotation.sin()),
                    frame_axis(h, k, -self.rotation.sin(), self.rotation.cos()),
                )
            }
            ConicKind::Parabola => format!(
                "v² = {}·u, u = {}, v = {}",
                num(4.0 * self.semi_axes[0]),
                frame_axis(h, k, self.rotation.cos(), self.rotation.sin()),
                frame_axis(h, k, -self.rotation.sin(), self.rotation.cos()),
            ),
            ConicKind::Degenerate | ConicKind::Unclassified => self.kind.to_string(),
        }
    }
}

/// Up to three decimals with trailing zeros trimmed.
fn num(v: f64) -> String {
    let s = format!("{:.3}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn shifted(var: &str, c: f64) -> String {
    if c.abs() < 5e-4 {
        var.to_string()
    } else if c > 0.0 {
        format!("({var}-{})", num(c))
    } else {
        format!("({var}+{})", num(-c))
    }
}

fn frame_axis(h: f64, k: f64, cx: f64, cy: f64) -> String {
    let sign = if cy < 0.0 { '-' } else { '+' };
    format!(
        "{}·{} {sign} {}·{}",
        num(cx),
        shifted("x", h),
        num(cy.abs()),
        shifted("y", k)
    )
}

/// Eigen-decomposition of `[[a, b], [b, c]]`: eigenvalues and the angle of
/// the first eigenvector.
fn symmetric_eigen2(a: f64, b: f64, c: f64) -> ([f64; 2], f64) {
    let theta = 0.5 * (2.0 * b).atan2(a - c);
    let (s, co) = theta.sin_cos();
    let l1 = a * co * co + 2.0 * b * s * co + c * s * s;
    let l2 = a * s * s - 2.0 * b * s * co + c * co * co;
    ([l1, l2], theta)
}

/// Wraps an angle into `(-π/2, π/2]`.
fn axis_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(PI);
    if t > PI / 2.0 {
        t -= PI;
    }
    t
}

/// Classifies a plane conic `xᵀQx + 2bᵀx + c = 0` given by its 3×3 matrix.
///
/// Larger matrices yield [`ConicKind::Unclassified`].
pub fn classify_conic(a: &SymmetricMatrix) -> Result<StandardForm> {
    if a.side() != 3 {
        return Ok(StandardForm {
            kind: ConicKind::Unclassified,
            center: vec![0.0; a.input_dim()],
            semi_axes: [0.0, 0.0],
            rotation: 0.0,
        });
    }
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::ZeroQuadraticPart);
    }
    let a = a.scale(1.0 / norm);
    let (q11, q12, q22) = (a.get(0, 0), a.get(0, 1), a.get(1, 1));
    let (b1, b2, c) = (a.get(0, 2), a.get(1, 2), a.get(2, 2));
    let q_norm = (q11 * q11 + 2.0 * q12 * q12 + q22 * q22).sqrt();
    if q_norm <= 1e-12 {
        return Err(Error::ZeroQuadraticPart);
    }
    let delta = q11 * q22 - q12 * q12;
    let det = c * delta - b1 * (b1 * q22 - q12 * b2) + b2 * (b1 * q12 - q11 * b2);
    let ([l1, l2], theta) = symmetric_eigen2(q11, q12, q22);

    if delta.abs() <= 1e-12 * q_norm * q_norm {
        return classify_parabola(q11, q12, q22, b1, b2, c, det);
    }
    let center = vec![
        -(q22 * b1 - q12 * b2) / delta,
        -(-q12 * b1 + q11 * b2) / delta,
    ];
    if det.abs() <= DETERMINANT_TOLERANCE {
        return Ok(StandardForm::degenerate(center));
    }
    // constant term after moving the origin to the center
    let k = det / delta;
    // λ1 u² + λ2 v² = -k
    let r1 = -k / l1;
    let r2 = -k / l2;
    if delta > 0.0 {
        if r1 <= 0.0 {
            return Ok(StandardForm::degenerate(center));
        }
        let (major, minor, angle) = if r1 >= r2 {
            (r1, r2, theta)
        } else {
            (r2, r1, theta + PI / 2.0)
        };
        Ok(StandardForm {
            kind: ConicKind::Ellipse,
            center,
            semi_axes: [major.sqrt(), minor.sqrt()],
            rotation: axis_angle(angle),
        })
    } else {
        let (transverse, conjugate, angle) = if r1 > 0.0 {
            (r1, -r2, theta)
        } else {
            (r2, -r1, theta + PI / 2.0)
        };
        Ok(StandardForm {
            kind: ConicKind::Hyperbola,
            center,
            semi_axes: [transverse.sqrt(), conjugate.sqrt()],
            rotation: axis_angle(angle),
        })
    }
}

fn classify_parabola(
    q11: f64,
    q12: f64,
    q22: f64,
    b1: f64,
    b2: f64,
    c: f64,
    det: f64,
) -> Result<StandardForm> {
    // eigenvector of the nonzero eigenvalue spans v, the null one spans u
    let lambda = q11 + q22;
    let (ux, uy) = if q11.abs() >= q22.abs() {
        (-q12, q11)
    } else {
        (q22, -q12)
    };
    let len = ux.hypot(uy);
    let (mut ux, mut uy) = (ux / len, uy / len);
    let beta_u = b1 * ux + b2 * uy;
    let beta_v = b1 * -uy + b2 * ux;
    if det.abs() <= DETERMINANT_TOLERANCE || beta_u.abs() <= 1e-12 {
        return Ok(StandardForm::degenerate(vec![0.0, 0.0]));
    }
    // λ v² + 2 β_u u + 2 β_v v + c = 0  ⇒  (v - v0)² = -(2 β_u / λ)(u - u0)
    let v0 = -beta_v / lambda;
    let u0 = (beta_v * beta_v / lambda - c) / (2.0 * beta_u);
    let mut four_f = -2.0 * beta_u / lambda;
    let (mut u0, mut v0) = (u0, v0);
    if four_f < 0.0 {
        // flip the frame so the parabola opens along +u
        ux = -ux;
        uy = -uy;
        u0 = -u0;
        v0 = -v0;
        four_f = -four_f;
    }
    let center = vec![u0 * ux - v0 * uy, u0 * uy + v0 * ux];
    Ok(StandardForm {
        kind: ConicKind::Parabola,
        center,
        semi_axes: [four_f / 4.0, 0.0],
        rotation: uy.atan2(ux),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic_space::{incidence, tau};

    fn circle_points() -> Vec<Vec<f64>> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            vec![r, r],
        ]
    }

    #[test]
    fn five_points_on_the_unit_circle() {
        let fit = fit_exact(&circle_points()).unwrap();
        let truth = tau(&SymmetricMatrix::diagonal(&[1.0, 1.0, -1.0]).unwrap());
        assert!(fit.conic.abs_cosine(&truth).unwrap() > 1.0 - 1e-12);
        assert!(fit.max_residual() <= 1e-8 * fit.conic.norm());
        let form = classify_conic(&fit.matrix).unwrap();
        assert_eq!(form.kind, ConicKind::Ellipse);
        assert!((form.semi_axes[0] - 1.0).abs() < 1e-9);
        assert!((form.semi_axes[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exact_and_oracle_agree_on_circle() {
        let pts = circle_points();
        let a = fit_exact(&pts).unwrap().conic;
        let b = fit_oracle(&pts).unwrap();
        assert!(a.abs_cosine(&b).unwrap() >= 1.0 - 1e-9);
    }

    #[test]
    fn three_collinear_points_give_a_line_pair() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ];
        let fit = fit_exact(&pts).unwrap();
        // y (y - 1) = 0
        let truth = tau(&SymmetricMatrix::from_upper(&[0.0, 0.0, 0.0, 1.0, -0.5, 0.0]).unwrap());
        assert!(fit.conic.abs_cosine(&truth).unwrap() > 1.0 - 1e-9);
        let form = classify_conic(&fit.matrix).unwrap();
        assert_eq!(form.kind, ConicKind::Degenerate);
        let oracle = fit_oracle(&pts).unwrap();
        assert!(oracle.abs_cosine(&fit.conic).unwrap() > 1.0 - 1e-9);
    }

    #[test]
    fn repeated_point_is_degenerate() {
        let mut pts = circle_points();
        pts[4] = pts[0].clone();
        assert!(matches!(fit_exact(&pts), Err(Error::Degenerate(_))));
        assert!(matches!(
            fit_oracle(&pts),
            Err(Error::Ambiguous { rank: 4, .. })
        ));
    }

    #[test]
    fn wrong_point_count() {
        let pts = circle_points();
        assert!(matches!(
            fit_exact(&pts[..4]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            fit_oracle(&pts[..4]),
            Err(Error::Ambiguous { rank: 4, needed: 5 })
        ));
        assert!(fit_exact(&[]).is_err());
    }

    #[test]
    fn three_dimensional_quadric() {
        // unit sphere through nine points
        let pts: Vec<Vec<f64>> = (0..9)
            .map(|i| {
                let t = 0.7 * i as f64 + 0.3;
                let z = (0.23 * i as f64 - 0.9).clamp(-1.0, 1.0);
                let r = (1.0 - z * z).sqrt();
                vec![r * t.cos(), r * t.sin(), z]
            })
            .collect();
        let fit = fit_exact(&pts).unwrap();
        let truth = SymmetricMatrix::diagonal(&[1.0, 1.0, 1.0, -1.0]).unwrap();
        assert!(fit.conic.abs_cosine(&tau(&truth)).unwrap() > 1.0 - 1e-9);
        let probe = [0.0, 0.6, 0.8];
        assert!(incidence(&probe, &fit.matrix).unwrap().abs() < 1e-9 * fit.conic.norm());
        assert_eq!(
            classify_conic(&fit.matrix).unwrap().kind,
            ConicKind::Unclassified
        );
    }

    #[test]
    fn known_weights_row_one() {
        let w = ConicVector::new(vec![0.0, 0.0, -3.30, 5.00, 6.36, 0.0]).unwrap();
        let form = classify_conic(&tau_inv(&w)).unwrap();
        assert_eq!(form.kind, ConicKind::Ellipse);
        let [a2, b2] = form.squared_axes();
        assert!((a2 - 0.66).abs() < 1e-12);
        assert!((b2 - 3.30 / 6.36).abs() < 1e-12);
        assert!(form.center.iter().all(|c| c.abs() < 1e-12));
        assert_eq!(form.equation(), "x²/0.66 + y²/0.519 = 1");
    }

    #[test]
    fn known_weights_row_two() {
        let w = ConicVector::new(vec![8.48, 0.0, -2.84, -1.50, -14.43, 0.0]).unwrap();
        let form = classify_conic(&tau_inv(&w)).unwrap();
        assert_eq!(form.kind, ConicKind::Ellipse);
        assert!((form.center[0] - 4.005).abs() < 0.05);
        assert!(form.center[1].abs() < 1e-12);
        let [a2, b2] = form.squared_axes();
        assert!((a2 - 14.075).abs() < 0.05, "{a2}");
        assert!((b2 - 1.45).abs() < 0.05, "{b2}");
        assert!(form.equation().starts_with("(x-3.99"));
    }

    #[test]
    fn known_weights_row_three() {
        let w = ConicVector::new(vec![-2.23, 0.0, -8.26, -19.05, 20.2, 0.0]).unwrap();
        let form = classify_conic(&tau_inv(&w)).unwrap();
        assert_eq!(form.kind, ConicKind::Hyperbola);
        let [a2, b2] = form.squared_axes();
        let ratio = a2.max(b2) / a2.min(b2);
        assert!((ratio - 1.05).abs() < 0.03, "{ratio}");
        // transverse axis comes out along y
        assert!((form.rotation.abs() - PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn unit_hyperbola() {
        let form = classify_conic(&SymmetricMatrix::diagonal(&[1.0, -1.0, -1.0]).unwrap()).unwrap();
        assert_eq!(form.kind, ConicKind::Hyperbola);
        assert!(form.center.iter().all(|c| c.abs() < 1e-15));
        assert!((form.semi_axes[0] - 1.0).abs() < 1e-12);
        assert!((form.semi_axes[1] - 1.0).abs() < 1e-12);
        assert_eq!(form.rotation, 0.0);
        assert_eq!(form.equation(), "x²/1 - y²/1 = 1");
    }

    #[test]
    fn rotated_ellipse() {
        // x²/4 + y² = 1 rotated by 30 degrees, centered at (1, -2)
        let (s, c) = (PI / 6.0).sin_cos();
        let (h, k) = (1.0, -2.0);
        // substitute u = c(x-h) + s(y-k), v = -s(x-h) + c(y-k)
        let q11 = c * c / 4.0 + s * s;
        let q22 = s * s / 4.0 + c * c;
        let q12 = c * s / 4.0 - s * c;
        let b1 = -(q11 * h + q12 * k);
        let b2 = -(q12 * h + q22 * k);
        let c0 = q11 * h * h + 2.0 * q12 * h * k + q22 * k * k - 1.0;
        let a = SymmetricMatrix::from_upper(&[q11, q12, b1, q22, b2, c0]).unwrap();
        let form = classify_conic(&a).unwrap();
        assert_eq!(form.kind, ConicKind::Ellipse);
        assert!((form.center[0] - h).abs() < 1e-12 && (form.center[1] - k).abs() < 1e-12);
        assert!((form.semi_axes[0] - 2.0).abs() < 1e-12);
        assert!((form.semi_axes[1] - 1.0).abs() < 1e-12);
        assert!((form.rotation - PI / 6.0).abs() < 1e-12);

        let neg = classify_conic(&a.scale(-7.5)).unwrap();
        assert_eq!(neg.kind, form.kind);
        assert!((neg.rotation - form.rotation).abs() < 1e-12);
        assert!((neg.semi_axes[0] - form.semi_axes[0]).abs() < 1e-12);
    }

    #[test]
    fn parabola() {
        // y = x² - 2x + 3  ⇔  x² - 2x - y + 3 = 0, vertex (1, 2), opens up, 4f = 1
        let a = SymmetricMatrix::from_upper(&[1.0, 0.0, -1.0, 0.0, -0.5, 3.0]).unwrap();
        let form = classify_conic(&a).unwrap();
        assert_eq!(form.kind, ConicKind::Parabola);
        assert!((form.center[0] - 1.0).abs() < 1e-12);
        assert!((form.center[1] - 2.0).abs() < 1e-12);
        assert!((form.semi_axes[0] - 0.25).abs() < 1e-12);
        assert!((form.rotation - PI / 2.0).abs() < 1e-12);
        let flipped = classify_conic(&a.scale(-2.0)).unwrap();
        assert_eq!(flipped.center, form.center);
        assert!((flipped.rotation - form.rotation).abs() < 1e-12);
    }

    #[test]
    fn imaginary_and_point_conics_are_degenerate() {
        let empty = SymmetricMatrix::diagonal(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(classify_conic(&empty).unwrap().kind, ConicKind::Degenerate);
        let point = SymmetricMatrix::diagonal(&[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(classify_conic(&point).unwrap().kind, ConicKind::Degenerate);
    }

    #[test]
    fn zero_quadratic_part() {
        let line = SymmetricMatrix::from_upper(&[0.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            classify_conic(&line),
            Err(Error::ZeroQuadraticPart)
        ));
        let zero = SymmetricMatrix::zeros(3).unwrap();
        assert!(matches!(
            classify_conic(&zero),
            Err(Error::ZeroQuadraticPart)
        ));
    }

    #[test]
    fn number_formatting() {
        assert_eq!(num(14.0749), "14.075");
        assert_eq!(num(1.45), "1.45");
        assert_eq!(num(-0.0001), "0");
        assert_eq!(shifted("x", -0.07), "(x+0.07)");
        assert_eq!(shifted("y", 0.0), "y");
    }
}

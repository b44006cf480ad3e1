use std::f64::consts::PI;

use super::{Metric, QfMatrix};
use crate::error::{Error, Result};
use crate::objects::VectorObj;

fn check_dims(x: &VectorObj, y: &VectorObj) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// The order of an `L_p` norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Norm {
    P(f64),
    Infinity,
}

impl Norm {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Norm::Infinity)
        } else if p.is_nan() || p < 1.0 {
            Err(Error::InvalidNormParameter(p))
        } else {
            Ok(Norm::P(p))
        }
    }
}

fn lp_unchecked(x: &[f64], y: &[f64], norm: Norm) -> f64 {
    let diffs = x.iter().zip(y).map(|(a, b)| (a - b).abs());
    match norm {
        Norm::Infinity => diffs.fold(0.0, f64::max),
        Norm::P(p) if p == 1.0 => diffs.sum(),
        Norm::P(p) if p == 2.0 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
        Norm::P(p) => diffs.map(|d| d.powf(p)).sum::<f64>().powf(1.0 / p),
    }
}

/// Minkowski distance `(Σ|x_i - y_i|^p)^(1/p)`; `p = f64::INFINITY` gives the
/// maximum coordinate difference.
pub fn lp_distance(x: &VectorObj, y: &VectorObj, p: f64) -> Result<f64> {
    let norm = Norm::new(p)?;
    check_dims(x, y)?;
    Ok(lp_unchecked(x.coords(), y.coords(), norm))
}

/// `sqrt(z' A z)` with `z = x - y`.
pub fn quadratic_form_distance(x: &VectorObj, y: &VectorObj, a: &QfMatrix) -> Result<f64> {
    check_dims(x, y)?;
    if a.dim() != x.len() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: x.len(),
        });
    }
    let z: Vec<f64> = x
        .coords()
        .iter()
        .zip(y.coords())
        .map(|(a, b)| a - b)
        .collect();
    // rounding can push z'Az of nearly equal vectors slightly below zero
    Ok(a.quadratic_form(&z).max(0.0).sqrt())
}

/// Angle between `x` and `y` as seen from the origin, in `[0, π]`.
pub fn angular_distance(x: &VectorObj, y: &VectorObj) -> Result<f64> {
    check_dims(x, y)?;
    let (mut dot, mut xx, mut yy) = (0.0, 0.0, 0.0);
    for (a, b) in x.coords().iter().zip(y.coords()) {
        dot += a * b;
        xx += a * a;
        yy += b * b;
    }
    if xx == 0.0 || yy == 0.0 {
        return Err(Error::ZeroVector);
    }
    let cos = (dot / (xx.sqrt() * yy.sqrt())).clamp(-1.0, 1.0);
    Ok(cos.acos().min(PI))
}

#[derive(Clone, Copy, Debug)]
pub struct Lp {
    norm: Norm,
}

impl Lp {
    pub fn new(p: f64) -> Result<Self> {
        Ok(Lp {
            norm: Norm::new(p)?,
        })
    }

    pub fn chebyshev() -> Self {
        Lp {
            norm: Norm::Infinity,
        }
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }
}

impl Metric<VectorObj> for Lp {
    fn eval(&self, a: &VectorObj, b: &VectorObj) -> Result<f64> {
        check_dims(a, b)?;
        Ok(lp_unchecked(a.coords(), b.coords(), self.norm))
    }

    fn name(&self) -> String {
        match self.norm {
            Norm::Infinity => "linf".into(),
            Norm::P(p) => format!("l{p}"),
        }
    }

    fn is_ptolemaic(&self) -> bool {
        self.norm == Norm::P(2.0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Euclidean;

impl Metric<VectorObj> for Euclidean {
    fn eval(&self, a: &VectorObj, b: &VectorObj) -> Result<f64> {
        check_dims(a, b)?;
        Ok(lp_unchecked(a.coords(), b.coords(), Norm::P(2.0)))
    }

    fn name(&self) -> String {
        "l2".into()
    }

    fn is_ptolemaic(&self) -> bool {
        true
    }
}

#[derive(Clone, Debug)]
pub struct QuadraticForm {
    matrix: QfMatrix,
}

impl QuadraticForm {
    pub fn new(matrix: QfMatrix) -> Self {
        QuadraticForm { matrix }
    }

    pub fn matrix(&self) -> &QfMatrix {
        &self.matrix
    }
}

impl Metric<VectorObj> for QuadraticForm {
    fn eval(&self, a: &VectorObj, b: &VectorObj) -> Result<f64> {
        quadratic_form_distance(a, b, &self.matrix)
    }

    fn name(&self) -> String {
        "qf".into()
    }

    fn is_ptolemaic(&self) -> bool {
        true
    }
}

/// The angular pseudometric. Not Ptolemaic, though close to it in practice.
#[derive(Clone, Copy, Debug)]
pub struct Angular;

impl Metric<VectorObj> for Angular {
    fn eval(&self, a: &VectorObj, b: &VectorObj) -> Result<f64> {
        angular_distance(a, b)
    }

    fn name(&self) -> String {
        "angle".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v(c: &[f64]) -> VectorObj {
        VectorObj::new(c.to_vec()).unwrap()
    }

    #[test]
    fn lp_examples() {
        assert_eq!(lp_distance(&v(&[0., 0.]), &v(&[1., 1.]), 1.0).unwrap(), 2.0);
        assert_eq!(lp_distance(&v(&[0., 0.]), &v(&[3., 4.]), 2.0).unwrap(), 5.0);
        assert_eq!(
            lp_distance(&v(&[1., 2.]), &v(&[4., 6.]), f64::INFINITY).unwrap(),
            4.0
        );
        assert_relative_eq!(
            lp_distance(&v(&[0., 0.]), &v(&[1., 1.]), 3.0).unwrap(),
            2f64.powf(1.0 / 3.0),
            max_relative = 1e-15
        );
    }

    #[test]
    fn lp_errors() {
        assert!(matches!(
            lp_distance(&v(&[0.]), &v(&[0., 1.]), 2.0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            lp_distance(&v(&[0.]), &v(&[1.]), 0.5),
            Err(Error::InvalidNormParameter(_))
        ));
        assert!(Lp::new(f64::NAN).is_err());
    }

    #[test]
    fn qf_examples() {
        let x = v(&[0.3, -1.2, 2.5]);
        let y = v(&[1.1, 0.4, -0.7]);
        assert_relative_eq!(
            quadratic_form_distance(&x, &y, &QfMatrix::identity(3)).unwrap(),
            lp_distance(&x, &y, 2.0).unwrap(),
            max_relative = 1e-12
        );

        let diag = QfMatrix::new(2, vec![4., 0., 0., 9.]).unwrap();
        let (o, ones) = (v(&[0., 0.]), v(&[1., 1.]));
        assert_relative_eq!(
            quadratic_form_distance(&ones, &o, &diag).unwrap(),
            13f64.sqrt(),
            max_relative = 1e-15
        );

        // z'Az for z = (1, 1), A = [[2, 1], [1, 2]]: 2 + 1 + 1 + 2 = 6
        let a = QfMatrix::new(2, vec![2., 1., 1., 2.]).unwrap();
        assert_relative_eq!(
            quadratic_form_distance(&ones, &o, &a).unwrap(),
            6f64.sqrt(),
            max_relative = 1e-15
        );

        assert!(quadratic_form_distance(&o, &v(&[1., 1., 1.]), &a).is_err());
        assert!(quadratic_form_distance(&x, &y, &a).is_err());
    }

    #[test]
    fn angular_examples() {
        assert_eq!(angular_distance(&v(&[1., 0.]), &v(&[2., 0.])).unwrap(), 0.0);
        assert_relative_eq!(
            angular_distance(&v(&[1., 0.]), &v(&[0., 1.])).unwrap(),
            PI / 2.0
        );
        assert_relative_eq!(angular_distance(&v(&[1., 0.]), &v(&[-3., 0.])).unwrap(), PI);
        assert!(matches!(
            angular_distance(&v(&[0., 0.]), &v(&[1., 0.])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn angular_near_parallel_does_not_nan() {
        let a = v(&[0.1, 0.2, 0.3]);
        let b = v(&[0.1 * 3.0, 0.2 * 3.0, 0.3 * 3.0]);
        let theta = angular_distance(&a, &b).unwrap();
        assert!(theta.is_finite() && theta < 1e-7);
    }

    #[test]
    fn names() {
        assert_eq!(Lp::new(1.0).unwrap().name(), "l1");
        assert_eq!(Lp::new(2.5).unwrap().name(), "l2.5");
        assert_eq!(Lp::chebyshev().name(), "linf");
        assert!(Lp::new(2.0).unwrap().is_ptolemaic());
    }
}

//! Epsilon-support-vector regression with an RBF kernel.
//!
//! The solver works in the beta parameterization of the dual: one coefficient
//! `beta_i = alpha_i - alpha_i*` per training point, maximizing
//!
//! ```text
//!   W(beta) = -1/2 sum_ij beta_i beta_j K(x_i, x_j)
//!             - epsilon * sum_i |beta_i| + sum_i y_i beta_i
//! ```
//!
//! subject to `sum_i beta_i = 0` and `|beta_i| <= C`. Training data is
//! preprocessed by [`fit_scaling`]: hourly volumes are min-max scaled to
//! [0, 1] per feature and targets are divided by the maximum training AADT,
//! since raw AADT magnitudes (10^3..10^5) would collapse RBF distances.

mod solver;

pub use solver::{smo_train, smo_train_observed, TrainOptions};

use thiserror::Error;

use crate::domain::HOURS_PER_DAY;

/// Dimension of the model feature space: 24 scaled hourly volumes,
/// 7 one-hot weekday indicators, 12 one-hot month indicators.
pub const FEATURE_DIM: usize = HOURS_PER_DAY + 7 + 12;

/// Epsilon-tube half width in scaled-target units.
///
/// The hyperparameter file stores only C and gamma, so epsilon is fixed
/// rather than searched; 0.01 of the maximum training AADT keeps the file
/// format two-column while leaving the loss insensitive to sub-percent noise.
pub const DEFAULT_EPSILON: f64 = 0.01;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SvrError {
    #[error("feature dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("training input contains a non-finite value")]
    NonFiniteInput,
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("invalid hyperparameters: C={c}, gamma={gamma}, epsilon={epsilon}")]
    InvalidHyperparams { c: f64, gamma: f64, epsilon: f64 },
    #[error("targets must be positive to fit target scaling (max target {0})")]
    NonPositiveTarget(f64),
    #[error("solver did not converge within {max_pair_updates} pair updates")]
    NoConvergence { max_pair_updates: u64 },
}

/// Hyperparameters of one epsilon-SVR model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvrHyperparams {
    /// Cost C > 0: tolerance for deviations beyond the epsilon tube.
    pub c: f64,
    /// RBF kernel width parameter, > 0.
    pub gamma: f64,
    /// Tube half-width in scaled-target units, >= 0.
    pub epsilon: f64,
}

impl SvrHyperparams {
    pub fn new(c: f64, gamma: f64) -> Self {
        Self {
            c,
            gamma,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    fn validate(&self) -> Result<(), SvrError> {
        let ok = self.c > 0.0
            && self.c.is_finite()
            && self.gamma > 0.0
            && self.gamma.is_finite()
            && self.epsilon >= 0.0
            && self.epsilon.is_finite();
        if ok {
            Ok(())
        } else {
            Err(SvrError::InvalidHyperparams {
                c: self.c,
                gamma: self.gamma,
                epsilon: self.epsilon,
            })
        }
    }
}

/// A point in model feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// RBF kernel `exp(-gamma * ||x - y||^2)`.
pub fn rbf_kernel(x: &FeatureVector, y: &FeatureVector, gamma: f64) -> Result<f64, SvrError> {
    if x.len() != y.len() {
        return Err(SvrError::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(rbf_unchecked(x.as_slice(), y.as_slice(), gamma))
}

pub(crate) fn rbf_unchecked(x: &[f64], y: &[f64], gamma: f64) -> f64 {
    let sq: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum();
    (-gamma * sq).exp()
}

/// One raw day observation before scaling: the 24 hourly volumes and the
/// calendar context that drives them.
#[derive(Debug, Clone, PartialEq)]
pub struct DaySample {
    pub volumes: [f64; HOURS_PER_DAY],
    /// 0 = Monday .. 6 = Sunday.
    pub weekday: u8,
    /// 1 = January .. 12 = December.
    pub month: u8,
}

/// Feature and target scaling fitted on a training split.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingParams {
    vol_min: [f64; HOURS_PER_DAY],
    vol_max: [f64; HOURS_PER_DAY],
    target_scale: f64,
}

/// Fit per-hour min/max volume ranges and the target scale (maximum training
/// AADT) on a training split.
pub fn fit_scaling(samples: &[DaySample], targets: &[f64]) -> Result<ScalingParams, SvrError> {
    if samples.is_empty() || targets.is_empty() {
        return Err(SvrError::EmptyTrainingSet);
    }
    let mut vol_min = [f64::INFINITY; HOURS_PER_DAY];
    let mut vol_max = [f64::NEG_INFINITY; HOURS_PER_DAY];
    for s in samples {
        for h in 0..HOURS_PER_DAY {
            let v = s.volumes[h];
            if !v.is_finite() {
                return Err(SvrError::NonFiniteInput);
            }
            vol_min[h] = vol_min[h].min(v);
            vol_max[h] = vol_max[h].max(v);
        }
    }
    let mut target_scale = f64::NEG_INFINITY;
    for &t in targets {
        if !t.is_finite() {
            return Err(SvrError::NonFiniteInput);
        }
        target_scale = target_scale.max(t);
    }
    if target_scale <= 0.0 {
        return Err(SvrError::NonPositiveTarget(target_scale));
    }
    Ok(ScalingParams {
        vol_min,
        vol_max,
        target_scale,
    })
}

impl ScalingParams {
    pub fn target_scale(&self) -> f64 {
        self.target_scale
    }

    /// Build the 43-dimensional feature vector for one day sample.
    ///
    /// Constant volume features (min == max on the training split) map to 0.
    pub fn feature_vector(&self, sample: &DaySample) -> FeatureVector {
        assert!(sample.weekday <= 6, "weekday out of range");
        assert!(
            (1..=12).contains(&sample.month),
            "month out of range: {}",
            sample.month
        );
        let mut values = Vec::with_capacity(FEATURE_DIM);
        for h in 0..HOURS_PER_DAY {
            let (lo, hi) = (self.vol_min[h], self.vol_max[h]);
            if hi > lo {
                values.push((sample.volumes[h] - lo) / (hi - lo));
            } else {
                values.push(0.0);
            }
        }
        for d in 0..7u8 {
            values.push(if d == sample.weekday { 1.0 } else { 0.0 });
        }
        for m in 1..=12u8 {
            values.push(if m == sample.month { 1.0 } else { 0.0 });
        }
        FeatureVector::new(values)
    }

    pub fn scale_target(&self, aadt: f64) -> f64 {
        aadt / self.target_scale
    }

    pub fn unscale_target(&self, scaled: f64) -> f64 {
        scaled * self.target_scale
    }
}

/// Solved epsilon-SVR dual in scaled feature/target space.
#[derive(Debug, Clone, PartialEq)]
pub struct SvrFit {
    pub hyperparams: SvrHyperparams,
    /// Training points with nonzero coefficient, in training-index order.
    pub support_vectors: Vec<FeatureVector>,
    /// beta_i = alpha_i - alpha_i* for each support vector.
    pub coefficients: Vec<f64>,
    /// Index of each support vector in the training set the fit came from.
    pub support_indices: Vec<usize>,
    pub bias: f64,
}

impl SvrFit {
    /// Scaled-space decision value `sum_i beta_i K(sv_i, x) + b`.
    pub fn decision(&self, x: &FeatureVector) -> Result<f64, SvrError> {
        let mut f = self.bias;
        for (sv, &coef) in self.support_vectors.iter().zip(&self.coefficients) {
            f += coef * rbf_kernel(sv, x, self.hyperparams.gamma)?;
        }
        Ok(f)
    }
}

/// Evaluate the epsilon-SVR dual objective of `fit` against the training data
/// it was produced from. Test instrumentation for solver verification.
pub fn dual_objective(fit: &SvrFit, x: &[FeatureVector], y: &[f64]) -> Result<f64, SvrError> {
    if x.len() != y.len() {
        return Err(SvrError::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let eps = fit.hyperparams.epsilon;
    let gamma = fit.hyperparams.gamma;
    let mut quad = 0.0;
    let mut l1 = 0.0;
    let mut lin = 0.0;
    for (a, (&ia, &ba)) in fit.support_indices.iter().zip(&fit.coefficients).enumerate() {
        if ia >= x.len() {
            return Err(SvrError::DimensionMismatch {
                left: ia,
                right: x.len(),
            });
        }
        for (&ib, &bb) in fit.support_indices.iter().zip(&fit.coefficients) {
            quad += ba * bb * rbf_kernel(&fit.support_vectors[a], &x[ib], gamma)?;
        }
        l1 += ba.abs();
        lin += y[ia] * ba;
    }
    Ok(-0.5 * quad - eps * l1 + lin)
}

/// A trained AADT model: the solved kernel machine plus the scaling that maps
/// raw day samples into its feature space and its outputs back to AADT.
#[derive(Debug, Clone, PartialEq)]
pub struct SvrModel {
    pub fit: SvrFit,
    pub scaling: ScalingParams,
}

impl SvrModel {
    /// Fit scaling on the full sample set, then solve the dual.
    pub fn train(
        samples: &[DaySample],
        targets: &[f64],
        hp: SvrHyperparams,
        options: &TrainOptions,
    ) -> Result<SvrModel, SvrError> {
        let scaling = fit_scaling(samples, targets)?;
        let x: Vec<FeatureVector> = samples.iter().map(|s| scaling.feature_vector(s)).collect();
        let y: Vec<f64> = targets.iter().map(|&t| scaling.scale_target(t)).collect();
        let fit = smo_train(&x, &y, hp, options)?;
        Ok(SvrModel { fit, scaling })
    }

    /// Predict AADT (vehicles/day) for one raw day sample. Never negative.
    pub fn predict(&self, sample: &DaySample) -> f64 {
        let x = self.scaling.feature_vector(sample);
        // Dimension is fixed by construction, so decision cannot fail here.
        let scaled = self.fit.decision(&x).expect("feature dimension fixed");
        self.scaling.unscale_target(scaled).max(0.0)
    }
}

//! Domain types shared by every module, plus simplex arithmetic and greedy
//! selection.
//!
//! All types here are immutable after construction and safe to share
//! read-only across parallel workers; the operations are pure functions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tol::{pairwise_mean, IDENTITY_TOL};

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

// ── Action distributions ────────────────────────────────────────────────

/// A probability vector over `K` actions.
///
/// Entries are nonnegative and sum to 1 within [`IDENTITY_TOL`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionDistribution {
    probs: Vec<f64>,
}

impl ActionDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self, CoreError> {
        if probs.is_empty() {
            return Err(CoreError::EmptyInput("probability vector".into()));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(CoreError::InvalidValue(
                "probabilities must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > IDENTITY_TOL {
            return Err(CoreError::InvariantViolation(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Uniform distribution over `k` actions.
    pub fn uniform(k: usize) -> Self {
        Self {
            probs: vec![1.0 / k as f64; k],
        }
    }

    /// Point mass on `action`.
    pub fn vertex(k: usize, action: usize) -> Self {
        let mut probs = vec![0.0; k];
        probs[action] = 1.0;
        Self { probs }
    }

    /// Softmax of `logits` with max-subtraction; the result is renormalized
    /// so the invariant holds even after floating-point rounding.
    pub fn from_softmax(logits: &[f64]) -> Self {
        let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut probs: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
        let sum: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= sum;
        }
        Self { probs }
    }

    pub fn k(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, action: usize) -> f64 {
        self.probs[action]
    }
}

/// Total-variation distance `½ Σ_a |p_a − q_a|`, in `[0, 1]`.
pub fn tv_distance(p: &ActionDistribution, q: &ActionDistribution) -> Result<f64, CoreError> {
    if p.k() != q.k() {
        return Err(CoreError::DimensionMismatch {
            expected: p.k(),
            actual: q.k(),
        });
    }
    let l1: f64 = p
        .probs
        .iter()
        .zip(&q.probs)
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(0.5 * l1)
}

/// How TV distances over a context set are aggregated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TvAggregate {
    Mean,
    Max,
}

/// Mean TV distance between two policies over a held-out context set.
pub fn mean_tv(
    pi_a: &dyn PolicyModel,
    pi_b: &dyn PolicyModel,
    contexts: &[Vec<f64>],
) -> Result<f64, CoreError> {
    tv_over_contexts(pi_a, pi_b, contexts, TvAggregate::Mean)
}

/// TV distance between two policies aggregated over contexts by `agg`.
pub fn tv_over_contexts(
    pi_a: &dyn PolicyModel,
    pi_b: &dyn PolicyModel,
    contexts: &[Vec<f64>],
    agg: TvAggregate,
) -> Result<f64, CoreError> {
    if contexts.is_empty() {
        return Err(CoreError::EmptyInput("context list".into()));
    }
    let mut tvs = Vec::with_capacity(contexts.len());
    for x in contexts {
        tvs.push(tv_distance(&pi_a.action_dist(x), &pi_b.action_dist(x))?);
    }
    Ok(match agg {
        TvAggregate::Mean => pairwise_mean(&tvs),
        TvAggregate::Max => tvs.iter().cloned().fold(0.0, f64::max),
    })
}

/// Index of the maximum entry; ties break to the lowest index.
pub fn greedy_action(values: &[f64]) -> Result<usize, CoreError> {
    if values.is_empty() {
        return Err(CoreError::EmptyInput("value vector".into()));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(CoreError::InvalidValue("NaN in value vector".into()));
    }
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    Ok(best)
}

// ── Models ──────────────────────────────────────────────────────────────

/// Anything mapping a context to a distribution over actions.
pub trait PolicyModel: Send + Sync {
    fn action_dist(&self, context: &[f64]) -> ActionDistribution;
}

/// Anything mapping a context to a `K`-vector of predicted action values.
pub trait QModel: Send + Sync {
    fn action_values(&self, context: &[f64]) -> Vec<f64>;
}

impl<P: PolicyModel + ?Sized> PolicyModel for &P {
    fn action_dist(&self, context: &[f64]) -> ActionDistribution {
        (**self).action_dist(context)
    }
}

impl<Q: QModel + ?Sized> QModel for &Q {
    fn action_values(&self, context: &[f64]) -> Vec<f64> {
        (**self).action_values(context)
    }
}

// ── Logged data ─────────────────────────────────────────────────────────

/// One logged record: context, full reward vector, sampled action, and the
/// exact behavior propensity of that action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoggedInteraction {
    pub context: Vec<f64>,
    pub reward: Vec<f64>,
    pub action: usize,
    pub propensity: f64,
}

impl LoggedInteraction {
    /// Reward of the sampled action (the bandit-feedback projection).
    pub fn observed_reward(&self) -> f64 {
        self.reward[self.action]
    }
}

/// An ordered logged dataset with its declared positivity floor and reward
/// range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    records: Vec<LoggedInteraction>,
    k: usize,
    d: usize,
    tau: f64,
    r_min: f64,
    r_max: f64,
}

impl Dataset {
    pub fn new(
        records: Vec<LoggedInteraction>,
        k: usize,
        d: usize,
        tau: f64,
        r_min: f64,
        r_max: f64,
    ) -> Result<Self, CoreError> {
        if records.is_empty() {
            return Err(CoreError::EmptyInput("dataset records".into()));
        }
        if r_min > r_max {
            return Err(CoreError::InvalidValue(format!(
                "reward range [{r_min}, {r_max}] is empty"
            )));
        }
        for (i, rec) in records.iter().enumerate() {
            Self::validate_record(rec, k, d, tau, r_min, r_max)
                .map_err(|e| CoreError::InvariantViolation(format!("record {i}: {e}")))?;
        }
        Ok(Self {
            records,
            k,
            d,
            tau,
            r_min,
            r_max,
        })
    }

    fn validate_record(
        rec: &LoggedInteraction,
        k: usize,
        d: usize,
        tau: f64,
        r_min: f64,
        r_max: f64,
    ) -> Result<(), String> {
        if rec.context.len() != d {
            return Err(format!("context has length {}, expected {d}", rec.context.len()));
        }
        if rec.reward.len() != k {
            return Err(format!("reward has length {}, expected {k}", rec.reward.len()));
        }
        if rec.action >= k {
            return Err(format!("action {} out of range for k={k}", rec.action));
        }
        if !(rec.propensity > 0.0 && rec.propensity <= 1.0) {
            return Err(format!("propensity {} outside (0, 1]", rec.propensity));
        }
        if rec.propensity < tau {
            return Err(format!("propensity {} below declared tau {tau}", rec.propensity));
        }
        let slack = IDENTITY_TOL;
        if rec
            .reward
            .iter()
            .any(|r| !r.is_finite() || *r < r_min - slack || *r > r_max + slack)
        {
            return Err(format!("reward outside declared range [{r_min}, {r_max}]"));
        }
        Ok(())
    }

    pub fn records(&self) -> &[LoggedInteraction] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Declared positivity floor τ.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Declared reward span Δ_r = r_max − r_min.
    pub fn reward_span(&self) -> f64 {
        self.r_max - self.r_min
    }

    pub fn contexts(&self) -> Vec<Vec<f64>> {
        self.records.iter().map(|r| r.context.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(probs: &[f64]) -> ActionDistribution {
        ActionDistribution::new(probs.to_vec()).unwrap()
    }

    #[test]
    fn tv_identity_is_zero() {
        let p = dist(&[0.3, 0.7]);
        assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn tv_disjoint_support_is_one() {
        let p = dist(&[1.0, 0.0]);
        let q = dist(&[0.0, 1.0]);
        assert_eq!(tv_distance(&p, &q).unwrap(), 1.0);
    }

    #[test]
    fn tv_half_l1() {
        let p = dist(&[0.7, 0.3]);
        let q = dist(&[0.4, 0.6]);
        assert!((tv_distance(&p, &q).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn tv_dimension_mismatch_errors() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.2, 0.3, 0.5]);
        assert!(matches!(
            tv_distance(&p, &q),
            Err(CoreError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn greedy_basic_and_ties() {
        assert_eq!(greedy_action(&[0.2, 0.9]).unwrap(), 1);
        assert_eq!(greedy_action(&[0.5, 0.5]).unwrap(), 0);
        assert_eq!(greedy_action(&[-1.0, -2.0, -0.5]).unwrap(), 2);
    }

    #[test]
    fn greedy_rejects_nan() {
        assert!(matches!(
            greedy_action(&[0.1, f64::NAN]),
            Err(CoreError::InvalidValue(_))
        ));
    }

    #[test]
    fn distribution_rejects_bad_sum() {
        assert!(ActionDistribution::new(vec![0.5, 0.6]).is_err());
        assert!(ActionDistribution::new(vec![-0.1, 1.1]).is_err());
    }

    #[test]
    fn softmax_of_zeros_is_uniform() {
        let d = ActionDistribution::from_softmax(&[0.0, 0.0]);
        assert!((d.prob(0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dataset_rejects_zero_propensity() {
        let rec = LoggedInteraction {
            context: vec![0.0],
            reward: vec![0.0, 1.0],
            action: 1,
            propensity: 0.0,
        };
        assert!(Dataset::new(vec![rec], 2, 1, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn dataset_rejects_propensity_below_tau() {
        let rec = LoggedInteraction {
            context: vec![0.0],
            reward: vec![0.0, 1.0],
            action: 1,
            propensity: 0.2,
        };
        assert!(Dataset::new(vec![rec], 2, 1, 0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn dataset_rejects_reward_out_of_range() {
        let rec = LoggedInteraction {
            context: vec![0.0],
            reward: vec![0.0, 2.0],
            action: 0,
            propensity: 0.5,
        };
        assert!(Dataset::new(vec![rec], 2, 1, 0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn mean_tv_deterministic_disagreement() {
        // Two deterministic policies disagreeing on 3 of 10 contexts.
        struct BySign;
        impl PolicyModel for BySign {
            fn action_dist(&self, x: &[f64]) -> ActionDistribution {
                ActionDistribution::vertex(2, usize::from(x[0] > 0.0))
            }
        }
        struct AlwaysZero;
        impl PolicyModel for AlwaysZero {
            fn action_dist(&self, _: &[f64]) -> ActionDistribution {
                ActionDistribution::vertex(2, 0)
            }
        }
        let contexts: Vec<Vec<f64>> = (0..10).map(|i| vec![if i < 3 { 1.0 } else { -1.0 }]).collect();
        let tv = mean_tv(&BySign, &AlwaysZero, &contexts).unwrap();
        assert!((tv - 0.3).abs() < 1e-15);
    }

    #[test]
    fn mean_tv_hand_computed_stochastic_pair() {
        struct Fixed(Vec<(Vec<f64>, Vec<f64>)>);
        impl PolicyModel for Fixed {
            fn action_dist(&self, x: &[f64]) -> ActionDistribution {
                let probs = &self.0.iter().find(|(c, _)| c == x).unwrap().1;
                ActionDistribution::new(probs.clone()).unwrap()
            }
        }
        let a = Fixed(vec![
            (vec![0.0], vec![0.7, 0.3]),
            (vec![1.0], vec![0.2, 0.8]),
        ]);
        let b = Fixed(vec![
            (vec![0.0], vec![0.4, 0.6]),
            (vec![1.0], vec![0.9, 0.1]),
        ]);
        // Independent arithmetic oracle: tv0 = 0.3, tv1 = 0.7, mean = 0.5.
        let tv = mean_tv(&a, &b, &[vec![0.0], vec![1.0]]).unwrap();
        assert!((tv - 0.5).abs() < 1e-15);

        let max = tv_over_contexts(&a, &b, &[vec![0.0], vec![1.0]], TvAggregate::Max).unwrap();
        assert!((max - 0.7).abs() < 1e-15);
    }

    #[test]
    fn mean_tv_empty_contexts_errors() {
        struct U;
        impl PolicyModel for U {
            fn action_dist(&self, _: &[f64]) -> ActionDistribution {
                ActionDistribution::uniform(2)
            }
        }
        assert!(mean_tv(&U, &U, &[]).is_err());
    }
}

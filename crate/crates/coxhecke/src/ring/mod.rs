//! Exact scalars, Laurent polynomials in ε, and weight functions.

mod cyclotomic;
mod laurent;
mod rational;

pub use cyclotomic::{cyclotomic_poly, euler_phi, Cyc};
pub use laurent::Laurent;
pub use rational::Rat;

use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("conductor must be positive, got {0}")]
    BadConductor(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("sign requested for a non-real cyclotomic number")]
    NotReal,
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("negative weight {weight} on generator {generator}")]
    NegativeWeight { generator: usize, weight: i64 },
    #[error("generators {0} and {1} are conjugate but have weights {2} and {3}")]
    UnequalConjugateWeights(usize, usize, i64, i64),
}

/// A weight function L on the generators: nonnegative and constant on conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    weights: Vec<u32>,
}

impl WeightFunction {
    /// Checks the weights against a Coxeter matrix (0 encodes an infinite bond).
    ///
    /// Generators joined by a path of odd bonds are conjugate and must agree.
    pub fn validate(coxeter: &[Vec<u32>], weights: &[i64]) -> Result<WeightFunction, RingError> {
        let n = coxeter.len();
        if weights.len() != n {
            return Err(RingError::WeightCount { expected: n, got: weights.len() });
        }
        if let Some((i, &w)) = weights.iter().enumerate().find(|(_, &w)| w < 0) {
            return Err(RingError::NegativeWeight { generator: i, weight: w });
        }
        for s in 0..n {
            for t in 0..n {
                let m = coxeter[s][t];
                if s < t && m != 0 && m % 2 == 1 && weights[s] != weights[t] {
                    return Err(RingError::UnequalConjugateWeights(s, t, weights[s], weights[t]));
                }
            }
        }
        Ok(WeightFunction { weights: weights.iter().map(|&w| w as u32).collect() })
    }

    pub fn equal(rank: usize) -> WeightFunction {
        WeightFunction { weights: alloc::vec![1; rank] }
    }

    pub fn get(&self, s: usize) -> i32 {
        self.weights[s] as i32
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn is_equal_parameter(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// L(w) for a word.
    pub fn of_word(&self, word: &[usize]) -> i32 {
        word.iter().map(|&s| self.get(s)).sum()
    }

    pub fn restrict(&self, gens: &[usize]) -> WeightFunction {
        WeightFunction { weights: gens.iter().map(|&s| self.weights[s]).collect() }
    }
}

//! Simultaneous perturbation stochastic approximation.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgoError, Result};

/// Number of perturbations averaged when calibrating the gain `a`.
pub const CALIBRATION_SAMPLES: usize = 5;

/// Size of the first parameter step targeted by gain calibration.
pub const TARGET_FIRST_STEP: f64 = 0.1;

/// SPSA hyperparameters. Gains are `a_t = a/(t+1+A)^α` and `c_t = c/(t+1)^γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpsaConfig {
    pub iterations: usize,
    /// Step gain; `None` calibrates it so the first step has magnitude
    /// about [`TARGET_FIRST_STEP`].
    pub a: Option<f64>,
    pub c: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub stability: f64,
    pub seed: u64,
}

impl Default for SpsaConfig {
    fn default() -> Self {
        Self {
            iterations: 300,
            a: None,
            c: 0.1,
            alpha: 0.602,
            gamma: 0.101,
            stability: 30.0,
            seed: 0,
        }
    }
}

impl SpsaConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_iterations(self, iterations: usize) -> Self {
        Self { iterations, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(AlgoError::InvalidConfig(format!("SPSA {what}")));
        if self.a.is_some_and(|a| !(a > 0.0 && a.is_finite())) {
            return bad("a must be positive");
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return bad("c must be positive");
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) || !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return bad("decay exponents must lie in (0, 1]");
        }
        if !(self.stability >= 0.0 && self.stability.is_finite()) {
            return bad("stability constant must be non-negative");
        }
        Ok(())
    }
}

/// Final parameters, cost after every iteration and the evaluation count.
#[derive(Debug, Clone, PartialEq)]
pub struct SpsaResult {
    pub theta: Vec<f64>,
    /// Mean of the two perturbed costs at each iteration.
    pub trace: Vec<f64>,
    pub evaluations: u64,
}

struct Counted<F> {
    cost: F,
    evaluations: u64,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    fn eval(&mut self, theta: &[f64]) -> Result<f64> {
        self.evaluations += 1;
        let value = (self.cost)(theta);
        if !value.is_finite() {
            return Err(AlgoError::NonFinite {
                evaluation: self.evaluations,
                value,
            });
        }
        Ok(value)
    }

    /// Gradient estimate `(f(θ+cΔ) − f(θ−cΔ)) / (2cΔ_i)` and the mean cost.
    fn gradient<R: Rng>(&mut self, theta: &[f64], ck: f64, rng: &mut R) -> Result<(Vec<f64>, f64)> {
        let delta: Vec<f64> = theta
            .iter()
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t + ck * d).collect();
        let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t - ck * d).collect();
        let (fp, fm) = (self.eval(&plus)?, self.eval(&minus)?);
        let g = delta.iter().map(|d| (fp - fm) / (2.0 * ck * d)).collect();
        Ok((g, 0.5 * (fp + fm)))
    }
}

/// Minimize `cost` from `theta0`, deterministic in `config.seed`.
pub fn spsa_minimize<F>(cost: F, theta0: &[f64], config: &SpsaConfig) -> Result<SpsaResult>
where
    F: FnMut(&[f64]) -> f64,
{
    config.validate()?;
    if let Some(&bad) = theta0.iter().find(|t| !t.is_finite()) {
        return Err(AlgoError::InvalidConfig(format!("initial parameter {bad}")));
    }
    let mut theta = theta0.to_vec();
    let mut f = Counted {
        cost,
        evaluations: 0,
    };
    if config.iterations == 0 || theta.is_empty() {
        return Ok(SpsaResult {
            theta,
            trace: Vec::new(),
            evaluations: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let a = match config.a {
        Some(a) => a,
        None => {
            let mut total = 0.0;
            for _ in 0..CALIBRATION_SAMPLES {
                let (g, _) = f.gradient(&theta, config.c, &mut rng)?;
                total += g.iter().map(|x| x.abs()).sum::<f64>() / g.len() as f64;
            }
            let mean = total / CALIBRATION_SAMPLES as f64;
            let scale = (1.0 + config.stability).powf(config.alpha);
            if mean > 0.0 {
                TARGET_FIRST_STEP * scale / mean
            } else {
                TARGET_FIRST_STEP * scale
            }
        }
    };
    let mut trace = Vec::with_capacity(config.iterations);
    for t in 0..config.iterations {
        let k = t as f64 + 1.0;
        let ak = a / (k + config.stability).powf(config.alpha);
        let ck = config.c / k.powf(config.gamma);
        let (g, mean) = f.gradient(&theta, ck, &mut rng)?;
        theta.iter_mut().zip(&g).for_each(|(t, gi)| *t -= ak * gi);
        trace.push(mean);
    }
    Ok(SpsaResult {
        theta,
        trace,
        evaluations: f.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic(theta: &[f64]) -> f64 {
        theta.iter().map(|t| (t - 1.0).powi(2)).sum()
    }

    #[test]
    fn converges_on_a_quadratic() {
        let cfg = SpsaConfig::default().with_iterations(500).with_seed(3);
        let r = spsa_minimize(quadratic, &[0.0; 4], &cfg).unwrap();
        let dist = r
            .theta
            .iter()
            .map(|t| (t - 1.0).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(dist < 0.05, "distance {dist}");
        assert_eq!(r.evaluations, 2 * 500 + 2 * CALIBRATION_SAMPLES as u64);
    }

    #[test]
    fn zero_iterations_return_start() {
        let cfg = SpsaConfig::default().with_iterations(0);
        let r = spsa_minimize(quadratic, &[0.3, -0.2], &cfg).unwrap();
        assert_eq!(r.theta, vec![0.3, -0.2]);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn identical_seeds_give_identical_traces() {
        let cfg = SpsaConfig::default().with_iterations(50).with_seed(9);
        let a = spsa_minimize(quadratic, &[0.0; 3], &cfg).unwrap();
        let b = spsa_minimize(quadratic, &[0.0; 3], &cfg).unwrap();
        assert_eq!(a, b);
        let c = spsa_minimize(quadratic, &[0.0; 3], &cfg.with_seed(10)).unwrap();
        assert_ne!(a.trace, c.trace);
    }

    #[test]
    fn non_finite_cost_is_an_error() {
        let cfg = SpsaConfig::default().with_iterations(5);
        let err = spsa_minimize(|_| f64::NAN, &[0.0], &cfg).unwrap_err();
        assert!(matches!(err, AlgoError::NonFinite { evaluation: 1, .. }));
    }

    #[test]
    fn invalid_gains_are_rejected() {
        let cfg = SpsaConfig {
            alpha: 1.5,
            ..SpsaConfig::default()
        };
        assert!(spsa_minimize(quadratic, &[0.0], &cfg).is_err());
        let cfg = SpsaConfig {
            c: 0.0,
            ..SpsaConfig::default()
        };
        assert!(spsa_minimize(quadratic, &[0.0], &cfg).is_err());
    }
}

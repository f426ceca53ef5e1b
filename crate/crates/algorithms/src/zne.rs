//! Zero-noise extrapolation by unitary folding.

use pauli_core::PauliSum;
use simulator::{noisy_expectation, Circuit, NoiseModel, Shots};

use crate::error::{AlgoError, Result};
use crate::stats::{ensemble_stats, run_ensemble};

/// Converts a MAD into a Gaussian standard deviation.
const MAD_TO_SIGMA: f64 = 1.4826;

/// Standard error of a sample median relative to that of the mean.
const MEDIAN_EFFICIENCY: f64 = 1.2533;

/// ZNE settings: every run evaluates every fold scale with the same seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ZneConfig {
    pub scales: Vec<usize>,
    pub shots: Shots,
    pub runs: usize,
    pub trajectories: u64,
    pub seed: u64,
}

/// Per-scale medians and the linear extrapolation to scale 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ZneResult {
    pub scales: Vec<usize>,
    pub energies: Vec<f64>,
    pub mads: Vec<f64>,
    /// Energy of every run at every scale, indexed `[run][scale]`.
    pub per_run: Vec<Vec<f64>>,
    pub intercept: f64,
    pub slope: f64,
    pub stderr: f64,
}

/// Least-squares line through `(x_i, y_i)`; the intercept error propagates
/// independent errors `sigma_i` on `y_i`. Returns `(intercept, slope, stderr)`.
pub fn linear_fit(x: &[f64], y: &[f64], sigma: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let slope = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<f64>()
        / sxx;
    let intercept = my - slope * mx;
    let variance: f64 = x
        .iter()
        .zip(sigma)
        .map(|(xi, s)| (1.0 / n - mx * (xi - mx) / sxx).powi(2) * s * s)
        .sum();
    (intercept, slope, variance.sqrt())
}

/// Median noisy energy of `circuit` at each fold scale over `runs` seeded
/// runs, extrapolated linearly to zero noise.
pub fn zne(
    circuit: &Circuit,
    params: &[f64],
    h: &PauliSum,
    noise: &NoiseModel,
    config: &ZneConfig,
) -> Result<ZneResult> {
    let scales = &config.scales;
    if scales.len() < 2 || scales[0] != 1 || scales.windows(2).any(|w| w[1] <= w[0]) {
        return Err(AlgoError::BadScales(scales.clone()));
    }
    circuit.check_bindings(params)?;
    let folded: Vec<Circuit> = scales.iter().map(|&s| circuit.fold(s)).collect();
    let per_run =
        run_ensemble(config.runs, config.seed, |_, seed| {
            folded
                .iter()
                .map(|c| {
                    Ok(noisy_expectation(
                        c,
                        params,
                        h,
                        noise,
                        config.shots,
                        config.trajectories,
                        seed,
                    )?
                    .value)
                })
                .collect::<Result<Vec<f64>>>()
        })?;
    let mut energies = Vec::with_capacity(scales.len());
    let mut mads = Vec::with_capacity(scales.len());
    for k in 0..scales.len() {
        let column: Vec<f64> = per_run.iter().map(|r| r[k]).collect();
        let (m, mad) = ensemble_stats(&column)?;
        energies.push(m);
        mads.push(mad);
    }
    let x: Vec<f64> = scales.iter().map(|&s| s as f64).collect();
    let sigma: Vec<f64> = mads
        .iter()
        .map(|m| MEDIAN_EFFICIENCY * MAD_TO_SIGMA * m / (config.runs as f64).sqrt())
        .collect();
    let (intercept, slope, stderr) = linear_fit(&x, &energies, &sigma);
    Ok(ZneResult {
        scales: scales.clone(),
        energies,
        mads,
        per_run,
        intercept,
        slope,
        stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_is_recovered() {
        let (a, b, s) = linear_fit(&[1.0, 2.0, 3.0], &[5.0, 7.0, 9.0], &[0.0; 3]);
        assert!((a - 3.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12 && s == 0.0);
    }

    #[test]
    fn two_point_error_propagation() {
        let (_, _, s) = linear_fit(&[1.0, 3.0], &[0.0, 0.0], &[1.0, 1.0]);
        assert!((s - (1.5f64.powi(2) + 0.5f64.powi(2)).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn scales_are_validated() {
        let c = Circuit::new(1);
        let h = PauliSum::identity(1, 1.0);
        let cfg = |scales: Vec<usize>| ZneConfig {
            scales,
            shots: Shots::Exact,
            runs: 1,
            trajectories: 1,
            seed: 0,
        };
        for bad in [vec![1], vec![2, 3], vec![1, 3, 3]] {
            assert!(matches!(
                zne(&c, &[], &h, &NoiseModel::noiseless(), &cfg(bad)),
                Err(AlgoError::BadScales(_))
            ));
        }
    }
}

//! Ensemble execution and robust statistics.

use rayon::prelude::*;

use crate::error::{AlgoError, Result};
use crate::seeds::derive_seed;

fn median_of(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Median and median absolute deviation `median(|x_i − median|)`.
pub fn ensemble_stats(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(AlgoError::Empty("ensemble"));
    }
    let m = median_of(values.to_vec());
    let mad = median_of(values.iter().map(|v| (v - m).abs()).collect());
    Ok((m, mad))
}

/// Run `job(index, seed)` for `runs` members, possibly in parallel. Member
/// seeds depend only on `(master_seed, index)` and results are returned in
/// index order, so the outcome does not depend on the thread count.
pub fn run_ensemble<T, F>(runs: usize, master_seed: u64, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    if runs == 0 {
        return Err(AlgoError::Empty("ensemble"));
    }
    (0..runs)
        .into_par_iter()
        .map(|i| job(i, derive_seed(master_seed, i as u64)))
        .collect()
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let rank = 0.5 * (i + j) as f64 + 1.0;
        for &k in &order[i..=j] {
            r[k] = rank;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(AlgoError::InvalidConfig(
            "Spearman needs two samples of equal length ≥ 2".into(),
        ));
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    Ok(cov / (vx * vy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_and_mad() {
        assert_eq!(ensemble_stats(&[1.0, 2.0, 3.0]).unwrap(), (2.0, 1.0));
        assert_eq!(ensemble_stats(&[4.5; 7]).unwrap(), (4.5, 0.0));
        assert_eq!(ensemble_stats(&[3.0, 1.0, 10.0, 2.0]).unwrap(), (2.5, 1.0));
        assert!(matches!(ensemble_stats(&[]), Err(AlgoError::Empty(_))));
    }

    #[test]
    fn ensemble_is_ordered_and_thread_independent() {
        let job = |i: usize, seed: u64| Ok((i, seed));
        let a = run_ensemble(64, 5, job).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| run_ensemble(64, 5, job).unwrap());
        assert_eq!(a, b);
        assert!(a.iter().enumerate().all(|(i, (j, _))| i == *j));
    }

    #[test]
    fn spearman_of_monotone_data() {
        assert!((spearman(&[1.0, 2.0, 3.0], &[0.1, 0.5, 9.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!(
            (spearman(&[1.0, 1.0, 2.0, 2.0], &[1.0, 2.0, 3.0, 4.0]).unwrap() - 0.894_427_191).abs()
                < 1e-6
        );
    }
}

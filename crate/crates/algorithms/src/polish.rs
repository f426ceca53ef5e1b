//! Deterministic local refinement for smooth, noise-free costs.

/// Step of the central finite-difference gradient.
pub const GRADIENT_STEP: f64 = 1e-6;

/// Gradient-norm threshold ending the refinement.
pub const GRADIENT_TOLERANCE: f64 = 1e-9;

/// Central finite-difference gradient of `f` at `x`.
pub fn numerical_gradient<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64], step: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + step;
            let up = f(&probe);
            probe[i] = x[i] - step;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * step)
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// BFGS with backtracking line search on finite-difference gradients.
/// Returns the refined point, never worse than `x0`.
pub fn bfgs<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], max_iterations: usize) -> Vec<f64> {
    let n = x0.len();
    if n == 0 {
        return Vec::new();
    }
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut g = numerical_gradient(&mut f, &x, GRADIENT_STEP);
    let mut inv = identity(n);
    for _ in 0..max_iterations {
        if dot(&g, &g).sqrt() < GRADIENT_TOLERANCE {
            break;
        }
        let mut dir: Vec<f64> = inv.iter().map(|row| -dot(row, &g)).collect();
        if dot(&dir, &g) >= 0.0 {
            inv = identity(n);
            dir = g.iter().map(|v| -v).collect();
        }
        let slope = dot(&dir, &g);
        let mut step = 1.0;
        let mut accepted = None;
        while step > 1e-12 {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + step * di).collect();
            let ft = f(&trial);
            if ft <= fx + 1e-4 * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((next, fnext)) = accepted else { break };
        let gnext = numerical_gradient(&mut f, &next, GRADIENT_STEP);
        let s: Vec<f64> = next.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gnext.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-14 {
            let hy: Vec<f64> = inv.iter().map(|row| dot(row, &y)).collect();
            let yhy = dot(&y, &hy);
            for i in 0..n {
                for j in 0..n {
                    inv[i][j] +=
                        (sy + yhy) * s[i] * s[j] / (sy * sy) - (hy[i] * s[j] + s[i] * hy[j]) / sy;
                }
            }
        }
        let improvement = fx - fnext;
        x = next;
        fx = fnext;
        g = gnext;
        if improvement.abs() < 1e-15 * fx.abs().max(1.0) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let x = bfgs(f, &[-1.2, 1.0], 500);
        assert!(
            (x[0] - 1.0).abs() < 1e-4 && (x[1] - 1.0).abs() < 1e-4,
            "{x:?}"
        );
    }

    #[test]
    fn gradient_of_a_quadratic() {
        let mut f = |x: &[f64]| 3.0 * x[0] * x[0] - x[1];
        let g = numerical_gradient(&mut f, &[1.0, 2.0], 1e-5);
        assert!((g[0] - 6.0).abs() < 1e-6 && (g[1] + 1.0).abs() < 1e-6);
    }
}

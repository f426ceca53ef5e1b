//! Clebsch-Gordan coefficients from Racah's closed-form single sum.
//!
//! All angular momenta are passed doubled so half-integers stay exact.

use std::sync::OnceLock;

const MAX_FACTORIAL: usize = 170;

fn factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(MAX_FACTORIAL + 1);
        t.push(1.0);
        for k in 1..=MAX_FACTORIAL {
            t.push(t[k - 1] * k as f64);
        }
        t
    })
}

/// `n!` for a doubled argument `2n`; `None` when `2n` is odd or negative.
fn fact_half(twice_n: i32) -> Option<f64> {
    if twice_n < 0 || twice_n % 2 != 0 {
        return None;
    }
    factorials().get((twice_n / 2) as usize).copied()
}

/// Whether `j1`, `j2`, `j3` (doubled) satisfy the triangle rule and parity.
pub fn triangle(twice_j1: i32, twice_j2: i32, twice_j3: i32) -> bool {
    twice_j1 >= 0
        && twice_j2 >= 0
        && twice_j3 >= 0
        && twice_j3 >= (twice_j1 - twice_j2).abs()
        && twice_j3 <= twice_j1 + twice_j2
        && (twice_j1 + twice_j2 + twice_j3) % 2 == 0
}

fn projection_ok(twice_j: i32, twice_m: i32) -> bool {
    twice_m.abs() <= twice_j && (twice_j + twice_m) % 2 == 0
}

/// ⟨j₁ m₁ j₂ m₂ | J M⟩ in the Condon-Shortley convention.
///
/// Returns exactly zero when `m₁ + m₂ ≠ M`, when the triangle rule fails, or
/// when a projection is out of range.
pub fn clebsch_gordan(
    twice_j1: i32,
    twice_m1: i32,
    twice_j2: i32,
    twice_m2: i32,
    twice_j: i32,
    twice_m: i32,
) -> f64 {
    if twice_m1 + twice_m2 != twice_m
        || !triangle(twice_j1, twice_j2, twice_j)
        || !projection_ok(twice_j1, twice_m1)
        || !projection_ok(twice_j2, twice_m2)
        || !projection_ok(twice_j, twice_m)
    {
        return 0.0;
    }
    let f = |x: i32| fact_half(x).expect("argument parity fixed by selection rules");
    let (j1, m1, j2, m2, j, m) = (twice_j1, twice_m1, twice_j2, twice_m2, twice_j, twice_m);

    let delta = f(j + j1 - j2) * f(j - j1 + j2) * f(j1 + j2 - j) / f(j1 + j2 + j + 2);
    let pref = ((j + 1) as f64
        * delta
        * f(j + m)
        * f(j - m)
        * f(j1 - m1)
        * f(j1 + m1)
        * f(j2 - m2)
        * f(j2 + m2))
    .sqrt();

    // Summation index k (undoubled) keeps every factorial argument non-negative.
    let k_min = 0.max((j2 - j - m1) / 2).max((j1 - j + m2) / 2);
    let k_max = ((j1 + j2 - j) / 2).min((j1 - m1) / 2).min((j2 + m2) / 2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let k2 = 2 * k;
        let denom = f(k2)
            * f(j1 + j2 - j - k2)
            * f(j1 - m1 - k2)
            * f(j2 + m2 - k2)
            * f(j - j2 + m1 + k2)
            * f(j - j1 - m2 + k2);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    pref * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn singlet_coefficient() {
        assert_abs_diff_eq!(
            clebsch_gordan(1, 1, 1, -1, 0, 0),
            1.0 / 2f64.sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            clebsch_gordan(1, -1, 1, 1, 0, 0),
            -1.0 / 2f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn stretched_state() {
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 2, 2), 1.0);
    }

    #[test]
    fn selection_rules_give_exact_zero() {
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 2, 0), 0.0);
        assert_eq!(clebsch_gordan(1, 1, 1, -1, 4, 0), 0.0);
        assert_eq!(clebsch_gordan(1, 3, 1, -1, 2, 2), 0.0);
    }

    #[test]
    fn normalization_for_three_halves() {
        let total: f64 = (-3..=3)
            .step_by(2)
            .map(|m1| clebsch_gordan(3, m1, 3, 2 - m1, 4, 2).powi(2))
            .sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn known_value_half_one() {
        // <1/2 1/2, 1 0 | 3/2 1/2> = sqrt(2/3)
        assert_abs_diff_eq!(
            clebsch_gordan(1, 1, 2, 0, 3, 1),
            (2.0f64 / 3.0).sqrt(),
            epsilon = 1e-14
        );
    }
}

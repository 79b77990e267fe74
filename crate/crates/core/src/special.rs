//! Gamma function, polygamma functions, and derivatives of Gamma assembled
//! through the product-rule recurrence. Target accuracy ~1e-12 relative on
//! (0, 1], which dominates the 1e-9/1e-10 identity tolerances downstream.

use num_complex::Complex64;

use crate::linalg::{cx, CMat};

/// Lanczos coefficients (g = 10.900511), as in Pugh's analysis.
const GAMMA_DK: &[f64] = &[
    2.4857408913875355e-5,
    1.0514237858172197,
    -3.4568709722201625,
    4.512277094668948,
    -2.9828522532357664,
    1.056397115771267,
    -1.9542877319164587e-1,
    1.709705434044412e-2,
    -5.719261174043057e-4,
    4.633994733599057e-6,
    -2.7199490848860772e-9,
];

const GAMMA_R: f64 = 10.900511;
const TWO_SQRT_E_OVER_PI: f64 = 1.8603827342052657;

/// Gamma function for real arguments (poles excluded by the caller).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, t| s + t.1 / (t.0 as f64 - x));
        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin()
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + GAMMA_R) / std::f64::consts::E).powf(0.5 - x))
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, t| s + t.1 / (x + t.0 as f64 - 1.0));
        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).powf(x - 0.5)
    }
}

/// Bernoulli numbers B_2, B_4, ..., B_20 for the asymptotic series.
const BERNOULLI: &[f64] = &[
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Digamma function psi(x) for x > 0.
pub fn digamma(x: f64) -> f64 {
    assert!(x > 0.0, "digamma implemented for positive arguments");
    let mut value = 0.0;
    let mut y = x;
    while y < 20.0 {
        value -= 1.0 / y;
        y += 1.0;
    }
    value += y.ln() - 0.5 / y;
    let y2 = y * y;
    let mut pow = y2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        value -= b / ((2 * (k + 1)) as f64 * pow);
        pow *= y2;
    }
    value
}

/// Polygamma function psi^{(n)}(x) for x > 0 and n >= 0.
pub fn polygamma(n: usize, x: f64) -> f64 {
    assert!(x > 0.0, "polygamma implemented for positive arguments");
    if n == 0 {
        return digamma(x);
    }
    // recurrence: psi^{(n)}(x) = psi^{(n)}(x+1) - (-1)^n n! / x^{n+1}
    let mut value = 0.0;
    let mut y = x;
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{n-1}
    let nf = factorial(n);
    let target = 20.0 + n as f64;
    while y < target {
        value += sign * nf / y.powi(n as i32 + 1);
        y += 1.0;
    }
    // asymptotic: psi^{(n)}(y) = (-1)^{n-1} [ (n-1)!/y^n + n!/(2 y^{n+1})
    //   + sum_k B_{2k} (2k+n-1)! / (2k)! / y^{2k+n} ]
    let mut tail = factorial(n - 1) / y.powi(n as i32) + nf / (2.0 * y.powi(n as i32 + 1));
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2 * (k + 1);
        let num = factorial_ratio(two_k + n - 1, two_k);
        tail += b * num / y.powi((two_k + n) as i32);
    }
    value + sign * tail
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// (top)! / (bottom)! for top >= bottom, as f64.
fn factorial_ratio(top: usize, bottom: usize) -> f64 {
    (bottom + 1..=top).map(|k| k as f64).product()
}

/// Derivatives Gamma^{(0)}(x), ..., Gamma^{(k_max)}(x) via the recurrence
/// Gamma^{(k+1)} = sum_j C(k,j) Gamma^{(j)} psi^{(k-j)} (exponential Bell
/// polynomial structure in the polygamma values).
pub fn gamma_derivatives(x: f64, k_max: usize) -> Vec<f64> {
    let mut derivs = vec![gamma(x)];
    let psi: Vec<f64> = (0..k_max.max(1)).map(|j| polygamma(j, x)).collect();
    for k in 0..k_max {
        let mut next = 0.0;
        for j in 0..=k {
            next += binomial(k, j) * derivs[j] * psi[k - j];
        }
        derivs.push(next);
    }
    derivs
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Gamma of an operator `alpha*id + X` with X nilpotent:
/// sum_k Gamma^{(k)}(alpha)/k! X^k, truncated at the dimension.
pub fn gamma_of_operator(alpha: f64, x: &CMat) -> CMat {
    let dim = x.nrows();
    let derivs = gamma_derivatives(alpha, dim);
    let mut acc = CMat::identity(dim, dim) * cx(derivs[0], 0.0);
    let mut power = CMat::identity(dim, dim);
    let mut kfact = 1.0;
    for k in 1..=dim {
        power = &power * x;
        kfact *= k as f64;
        acc += &power * cx(derivs[k] / kfact, 0.0);
    }
    acc
}

/// e^{c X} for nilpotent X and complex scalar c.
pub fn exp_scaled_nilpotent(c: Complex64, x: &CMat) -> CMat {
    let dim = x.nrows();
    let mut acc = CMat::identity(dim, dim);
    let mut power = CMat::identity(dim, dim);
    let mut kfact = 1.0;
    for k in 1..=dim {
        power = &power * x;
        kfact *= k as f64;
        acc += &power * (c.powu(k as u32) / cx(kfact, 0.0));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.5772156649015329;

    #[test]
    fn gamma_special_values() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-13);
        assert!((gamma(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!((gamma(5.0) - 24.0).abs() < 1e-11);
        assert!((gamma(1.0 / 3.0) - 2.678938534707747633).abs() < 1e-12);
    }

    #[test]
    fn digamma_special_values() {
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-12);
        assert!((digamma(0.5) + EULER_GAMMA + 2.0 * (2.0f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn polygamma_special_values() {
        let pi = std::f64::consts::PI;
        assert!((polygamma(1, 1.0) - pi * pi / 6.0).abs() < 1e-12);
        // psi'(1/2) = pi^2/2
        assert!((polygamma(1, 0.5) - pi * pi / 2.0).abs() < 1e-11);
        // psi''(1) = -2 zeta(3)
        let zeta3 = 1.2020569031595943;
        assert!((polygamma(2, 1.0) + 2.0 * zeta3).abs() < 1e-11);
    }

    #[test]
    fn polygamma_matches_finite_differences_of_digamma() {
        // central 5-point first derivative of psi^{(k)} approximates psi^{(k+1)}
        for &x in &[0.25, 0.5, 1.0, 1.5] {
            for k in 0..4 {
                let h = 1e-3;
                let fd = (-polygamma(k, x + 2.0 * h) + 8.0 * polygamma(k, x + h)
                    - 8.0 * polygamma(k, x - h)
                    + polygamma(k, x - 2.0 * h))
                    / (12.0 * h);
                let exact = polygamma(k + 1, x);
                assert!(
                    (fd - exact).abs() < 1e-6 * (1.0 + exact.abs()),
                    "psi^({}) derivative at {x}: fd {fd} vs {exact}",
                    k
                );
            }
        }
    }

    #[test]
    fn gamma_derivatives_oracle() {
        // Gamma'(1) = -euler_gamma
        let d = gamma_derivatives(1.0, 3);
        assert!((d[1] + EULER_GAMMA).abs() < 1e-12);
        // Gamma''(1) = euler_gamma^2 + pi^2/6
        let expect = EULER_GAMMA * EULER_GAMMA + std::f64::consts::PI.powi(2) / 6.0;
        assert!((d[2] - expect).abs() < 1e-11);
        // high-order finite differences of Gamma at alpha = 2/3
        let x = 2.0 / 3.0;
        let d = gamma_derivatives(x, 2);
        let h = 1e-4;
        let fd1 = (-gamma(x + 2.0 * h) + 8.0 * gamma(x + h) - 8.0 * gamma(x - h)
            + gamma(x - 2.0 * h))
            / (12.0 * h);
        assert!((fd1 - d[1]).abs() < 1e-8 * (1.0 + d[1].abs()));
        let fd2 = (-gamma(x + 2.0 * h) + 16.0 * gamma(x + h) - 30.0 * gamma(x)
            + 16.0 * gamma(x - h)
            - gamma(x - 2.0 * h))
            / (12.0 * h * h);
        assert!((fd2 - d[2]).abs() < 1e-6 * (1.0 + d[2].abs()));
    }

    #[test]
    fn gamma_operator_on_two_block() {
        use crate::linalg::{cmat_from_real_rows, max_abs_diff, two_pi_i};
        // N = 2x2 lower shift, alpha = 1: G = id + (euler_gamma / 2 pi i) N
        let n = cmat_from_real_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]);
        let x = -&n / two_pi_i();
        let g = gamma_of_operator(1.0, &x);
        let expected = CMat::identity(2, 2) + (&n / two_pi_i()) * cx(EULER_GAMMA, 0.0);
        assert!(max_abs_diff(&g, &expected) < 1e-12);
    }
}

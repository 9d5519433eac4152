//! Real-argument special functions used by the ergodic-rate closed forms.
//!
//! Everything here works on positive reals and small positive integers; there
//! is no complex or general Meijer-G support.

use crate::error::{Error, Result};
use crate::quadrature;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;
const TINY: f64 = 1e-300;

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(function, format!("x = {x}, need a finite x > 0")))
    }
}

/// Exponential integral `E1(x) = ∫₁^∞ e^{-xt}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    check_positive("exp_integral_e1", x)?;
    Ok(en_scaled(1, x) * (-x).exp())
}

/// `e^x E1(x)`, finite for every `x > 0` including `x > 700` where the two
/// factors alone would overflow and underflow.
pub fn scaled_exp_e1(x: f64) -> Result<f64> {
    check_positive("scaled_exp_e1", x)?;
    Ok(en_scaled(1, x))
}

/// `e^x E_n(x)` for `n ≥ 1`, `x > 0`.
pub fn scaled_exp_en(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("scaled_exp_en", "order n must be at least 1"));
    }
    check_positive("scaled_exp_en", x)?;
    Ok(en_scaled(n, x))
}

// Power series below x = 1, modified Lentz continued fraction above.
fn en_scaled(n: u32, x: f64) -> f64 {
    if x > 1.0 {
        let nf = f64::from(n);
        let mut b = x + nf;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            let an = -fi * (nf - 1.0 + fi);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        h
    } else {
        let nm1 = n as usize - 1;
        let mut sum = if nm1 == 0 {
            -x.ln() - EULER_GAMMA
        } else {
            1.0 / nm1 as f64
        };
        let mut fact = 1.0;
        for i in 1..MAX_ITER {
            fact *= -x / i as f64;
            let del = if i != nm1 {
                -fact / (i as f64 - nm1 as f64)
            } else {
                fact * (-x.ln() + digamma_unchecked(n))
            };
            sum += del;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        sum * x.exp()
    }
}

/// Lower incomplete gamma function `γ_L(m, x) = ∫₀^x t^{m-1} e^{-t} dt`.
pub fn lower_incomplete_gamma(m: u32, x: f64) -> Result<f64> {
    Ok(regularized_lower_gamma(m, x)? * gamma_int(m))
}

/// `γ_L(m, x)/Γ(m)`, the Gamma(m, 1) CDF at `x`.
pub fn regularized_lower_gamma(m: u32, x: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain(
            "lower_incomplete_gamma",
            "shape m must be at least 1",
        ));
    }
    if !(x >= 0.0) {
        return Err(Error::domain(
            "lower_incomplete_gamma",
            format!("x = {x}, need x ≥ 0"),
        ));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let a = f64::from(m);
    let log_prefix = a * x.ln() - x - ln_gamma_int(m);
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..MAX_ITER {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * EPS {
                break;
            }
        }
        Ok((sum * log_prefix.exp()).min(1.0))
    } else {
        // Upper tail e^{-x} Σ_{k<m} x^k/k! has no cancellation here.
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..m {
            term *= x / f64::from(k);
            sum += term;
        }
        let upper = (sum.ln() - x).exp();
        Ok((1.0 - upper).max(0.0))
    }
}

/// `T(m, λ) = ∫₀^∞ ln(1+t) · λ^m t^{m-1} e^{-λt}/Γ(m) dt`, the logarithmic
/// moment of a Gamma(m, rate λ) variable.
///
/// Integer `m` collapses the Meijer-G representation to
/// `T = e^λ Σ_{k=1}^{m} E_k(λ)`.
pub fn ln_moment_gamma(m: u32, lambda: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("ln_moment_gamma", "shape m must be at least 1"));
    }
    check_positive("ln_moment_gamma", lambda)?;
    let mut acc = NeumaierSum::default();
    for k in 1..=m {
        acc.add(en_scaled(k, lambda));
    }
    Ok(acc.total())
}

/// Adaptive-quadrature evaluation of the same integral as [`ln_moment_gamma`].
pub fn ln_moment_gamma_by_quadrature(m: u32, lambda: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain(
            "ln_moment_gamma_by_quadrature",
            "shape m must be at least 1",
        ));
    }
    check_positive("ln_moment_gamma_by_quadrature", lambda)?;
    // Substitute u = λt so the weight is the unit-rate Gamma density.
    let lg = ln_gamma_int(m);
    let a = f64::from(m);
    let f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        (u / lambda).ln_1p() * ((a - 1.0) * u.ln() - u - lg).exp()
    };
    let split = a.max(1.0);
    let head = quadrature::integrate(f, 0.0, split, 0.0, 1e-13);
    let tail = quadrature::integrate_to_infinity(f, split, split, 0.0, 1e-13);
    Ok(head + tail)
}

/// Digamma at a positive integer: `ψ(m) = -γ + Σ_{k=1}^{m-1} 1/k`.
pub fn digamma_int(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("digamma_int", "argument must be at least 1"));
    }
    Ok(digamma_unchecked(m))
}

fn digamma_unchecked(m: u32) -> f64 {
    let mut acc = NeumaierSum::default();
    acc.add(-EULER_GAMMA);
    for k in 1..m {
        acc.add(1.0 / f64::from(k));
    }
    acc.total()
}

/// `Γ(m) = (m-1)!` as a float (infinite past `m = 171`).
pub fn gamma_int(m: u32) -> f64 {
    (1..m).map(f64::from).product()
}

/// `ln Γ(m) = ln (m-1)!`.
pub fn ln_gamma_int(m: u32) -> f64 {
    (1..m).map(|k| f64::from(k).ln()).sum()
}

/// Table of `ln k!` for `k ≤ n`, used for log-domain binomial weights.
#[derive(Debug, Clone)]
pub struct LnFactorials(Vec<f64>);

impl LnFactorials {
    pub fn up_to(n: usize) -> Self {
        let mut v = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        v.push(0.0);
        for k in 1..=n {
            acc += (k as f64).ln();
            v.push(acc);
        }
        LnFactorials(v)
    }

    pub fn ln_factorial(&self, k: usize) -> f64 {
        self.0[k]
    }

    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.0[n] - self.0[k] - self.0[n - k]
    }
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn e1_golden_values() {
        assert_relative_eq!(
            exp_integral_e1(1.0).unwrap(),
            0.219_383_934_395_520_27,
            max_relative = 1e-13
        );
        let small = exp_integral_e1(1e-6).unwrap();
        assert_relative_eq!(small, -(1e-6f64).ln() - EULER_GAMMA, max_relative = 1e-4);
        assert!(exp_integral_e1(2.0).unwrap() < exp_integral_e1(1.0).unwrap());
    }

    #[test]
    fn e1_rejects_bad_input() {
        for x in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(exp_integral_e1(x).is_err());
        }
    }

    #[test]
    fn e1_matches_defining_integral() {
        for x in [0.01, 0.5, 0.999, 1.001, 3.0, 20.0] {
            let oracle = quadrature::integrate_to_infinity(
                |t| (-x * t).exp() / t,
                1.0,
                1.0 / x,
                0.0,
                1e-13,
            );
            assert_relative_eq!(exp_integral_e1(x).unwrap(), oracle, max_relative = 1e-10);
        }
    }

    #[test]
    fn scaled_e1_survives_large_arguments() {
        let v = scaled_exp_e1(1e4).unwrap();
        // e^x E1(x) ~ 1/x (1 - 1/x + 2/x²)
        let x = 1e4;
        assert_relative_eq!(v, (1.0 - 1.0 / x + 2.0 / (x * x)) / x, max_relative = 1e-11);
        assert!(scaled_exp_e1(800.0).unwrap().is_finite());
    }

    #[test]
    fn en_recurrence() {
        // E_{n+1}(x) = (e^{-x} - x E_n(x)) / n, scaled form.
        for x in [0.3, 1.0, 2.5] {
            for n in 1..6 {
                let lhs = scaled_exp_en(n + 1, x).unwrap();
                let rhs = (1.0 - x * scaled_exp_en(n, x).unwrap()) / f64::from(n);
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn lower_gamma_values() {
        assert_relative_eq!(
            lower_incomplete_gamma(1, 1.0).unwrap(),
            1.0 - (-1.0f64).exp(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            lower_incomplete_gamma(2, 1.0).unwrap(),
            0.264_241_117_657_115_4,
            max_relative = 1e-13
        );
        assert_eq!(lower_incomplete_gamma(5, 0.0).unwrap(), 0.0);
        assert!(lower_incomplete_gamma(0, 1.0).is_err());
        assert!(lower_incomplete_gamma(2, -1.0).is_err());
    }

    #[test]
    fn lower_gamma_saturates() {
        for m in [1, 2, 4, 8, 16] {
            let x = 50.0 * f64::from(m);
            assert_relative_eq!(
                lower_incomplete_gamma(m, x).unwrap(),
                gamma_int(m),
                max_relative = 1e-8
            );
        }
    }

    #[test]
    fn ln_moment_golden_values() {
        let cases = [
            (1, 1.0, 0.596_347_362_323_194),
            (2, 1.0, 1.0),
            (4, 0.5, 2.099_258_507_125_587),
            (8, 1.0, 2.147_942_065_426_03),
            (1, 1e3, 0.000_999_001_994_023_881),
        ];
        for (m, lam, want) in cases {
            assert_relative_eq!(ln_moment_gamma(m, lam).unwrap(), want, max_relative = 1e-12);
        }
        let big = ln_moment_gamma(1, 1e6).unwrap();
        assert_relative_eq!(big, 1e-6, max_relative = 1e-5);
    }

    #[test]
    fn ln_moment_paths_agree() {
        for m in [1, 2, 4, 8] {
            for lam in [1e-3, 1.0, 1e3] {
                let a = ln_moment_gamma(m, lam).unwrap();
                let b = ln_moment_gamma_by_quadrature(m, lam).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn digamma_values() {
        assert_relative_eq!(digamma_int(1).unwrap(), -EULER_GAMMA);
        assert_relative_eq!(digamma_int(2).unwrap(), 1.0 - EULER_GAMMA, max_relative = 1e-15);
        assert_relative_eq!(
            digamma_int(10).unwrap(),
            2.251_752_589_066_721,
            max_relative = 1e-14
        );
        assert!(digamma_int(0).is_err());
    }

    #[test]
    fn ln_binomial_matches_direct() {
        let t = LnFactorials::up_to(20);
        assert_relative_eq!(t.ln_binomial(20, 7).exp(), 77_520.0, max_relative = 1e-12);
        assert_relative_eq!(t.ln_factorial(5), 120f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.total(), 2.0);
    }
}

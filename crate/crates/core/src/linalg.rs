//! Minimal dense complex linear algebra for the small matrices the receivers
//! need (row-major `n × n`).

use num_complex::Complex64;

/// `ln det A` of a Hermitian positive-definite matrix through its Cholesky
/// factor. `None` when a pivot is not strictly positive.
pub fn hpd_log_det(a: &[Complex64], n: usize) -> Option<f64> {
    debug_assert_eq!(a.len(), n * n);
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    let mut log_det = 0.0;
    for j in 0..n {
        let mut diag = a[j * n + j].re;
        for k in 0..j {
            diag -= l[j * n + k].norm_sqr();
        }
        if !(diag > 0.0) {
            return None;
        }
        let ljj = diag.sqrt();
        l[j * n + j] = Complex64::new(ljj, 0.0);
        log_det += 2.0 * ljj.ln();
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / ljj;
        }
    }
    Some(log_det)
}

/// Inverse by Gauss-Jordan elimination with partial pivoting. `None` when the
/// matrix is numerically singular.
pub fn inverse(a: &[Complex64], n: usize) -> Option<Vec<Complex64>> {
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut inv = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        inv[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[x * n + col].norm().total_cmp(&m[y * n + col].norm()))
            .unwrap_or(col);
        if m[pivot * n + col].norm() <= scale * 1e-13 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let p = m[col * n + col].inv();
        for j in 0..n {
            m[col * n + j] *= p;
            inv[col * n + j] *= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let (mc, ic) = (m[col * n + j], inv[col * n + j]);
                m[r * n + j] -= f * mc;
                inv[r * n + j] -= f * ic;
            }
        }
    }
    Some(inv)
}

/// `aᴴ b`.
pub fn dot_h(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    Complex64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_det_of_diagonal() {
        let a = [c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)];
        assert_relative_eq!(hpd_log_det(&a, 2).unwrap(), 10f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn log_det_of_hermitian() {
        // det [[3, 1+i],[1-i, 2]] = 6 - 2 = 4
        let a = [c(3.0, 0.0), c(1.0, 1.0), c(1.0, -1.0), c(2.0, 0.0)];
        assert_relative_eq!(hpd_log_det(&a, 2).unwrap(), 4f64.ln(), max_relative = 1e-14);
        let neg = [c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)];
        assert!(hpd_log_det(&neg, 2).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = [
            c(1.0, 2.0),
            c(0.5, -1.0),
            c(0.0, 0.3),
            c(-1.0, 0.0),
            c(2.0, 1.0),
            c(0.1, 0.1),
            c(0.0, 0.0),
            c(1.0, -1.0),
            c(3.0, 0.0),
        ];
        let inv = inverse(&a, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = c(0.0, 0.0);
                for k in 0..3 {
                    s += a[i * 3 + k] * inv[k * 3 + j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_inverse_is_none() {
        let a = [c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)];
        assert!(inverse(&a, 2).is_none());
    }
}

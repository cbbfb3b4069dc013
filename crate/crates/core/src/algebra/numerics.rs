//! Entropy and the exponent constant `tau(d)`.

use crate::error::{domain, Result};

/// Binary entropy in bits, with `H(0) = H(1) = 0`.
pub fn binary_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return domain(format!("entropy argument {q} is outside [0, 1]"));
    }
    Ok(entropy_unchecked(q))
}

fn entropy_unchecked(q: f64) -> f64 {
    if q <= 0.0 || q >= 1.0 {
        0.0
    } else {
        -q * q.log2() - (1.0 - q) * (1.0 - q).log2()
    }
}

/// `f_d(p) = (1 - p) * H((d - 1) p / (1 - p))`, for `p` in `[0, 1/(2d-1)]`.
pub fn level_exponent(d: usize, p: f64) -> f64 {
    let q = (d as f64 - 1.0) * p / (1.0 - p);
    (1.0 - p) * entropy_unchecked(q.clamp(0.0, 1.0))
}

/// Degree bound of the symbolic coefficient of `z_1 ... z_{n1}` in a degree-`d` polynomial.
pub fn symbolic_coefficient_degree(d: usize, n1: usize) -> usize {
    d.saturating_sub(n1)
}

/// `tau(d) = (d - 1) log2(r)` where `r` is the positive root of `x^d - x - 1`.
pub fn tau(d: usize) -> Result<f64> {
    if d < 2 {
        return domain(format!("tau is defined for d >= 2, got {d}"));
    }
    let di = d as i32;
    let mut x = 1.3f64;
    for _ in 0..100 {
        let f = x.powi(di) - x - 1.0;
        let df = d as f64 * x.powi(di - 1) - 1.0;
        let step = f / df;
        x -= step;
        if step.abs() < 1e-12 {
            break;
        }
    }
    Ok((d as f64 - 1.0) * x.log2())
}

/// Maximum of `f_d` over `[0, 1/(2d-1)]` by golden-section search.
pub fn tau_by_maximization(d: usize) -> Result<f64> {
    if d < 2 {
        return domain(format!("tau is defined for d >= 2, got {d}"));
    }
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0 / (2.0 * d as f64 - 1.0));
    let mut c = b - g * (b - a);
    let mut e = a + g * (b - a);
    let (mut fc, mut fe) = (level_exponent(d, c), level_exponent(d, e));
    while b - a > 1e-13 {
        if fc > fe {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = level_exponent(d, c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = level_exponent(d, e);
        }
    }
    Ok(level_exponent(d, (a + b) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_endpoints() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.5).is_err());
    }

    #[test]
    fn entropy_brackets_binomial() {
        // C(20, 7) = 77520
        let h = binary_entropy(7.0 / 20.0).unwrap();
        let upper = 2f64.powf(20.0 * h);
        let c = 77520.0;
        assert!(upper / 21.0 <= c && c <= upper);
    }

    #[test]
    fn symbolic_degree() {
        assert_eq!(symbolic_coefficient_degree(6, 4), 2);
        assert_eq!(symbolic_coefficient_degree(3, 5), 0);
        // with ell = n2 + 2 the interpolant degree is n2 (d - 1) + 2d
        for d in 2..6 {
            for n2 in 0..10 {
                assert_eq!(
                    symbolic_coefficient_degree(d * (n2 + 2), n2),
                    n2 * (d - 1) + 2 * d
                );
            }
        }
    }

    #[test]
    fn tau_two_is_log_golden_ratio() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((tau(2).unwrap() - phi.log2()).abs() < 1e-12);
        assert!(tau(1).is_err());
    }

    #[test]
    fn tau_lower_bound_is_attained_at_right_endpoint() {
        for d in 2..10 {
            let p = 1.0 / (2.0 * d as f64 - 1.0);
            assert!((level_exponent(d, p) - (1.0 - p)).abs() < 1e-12);
        }
    }
}

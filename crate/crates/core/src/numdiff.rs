//! Fourth-order central finite differences.

/// Step used by the residual checks: `2e-3·max(1, |t|)`.
///
/// Cancellation in the second-difference quotient costs about
/// `5·ε·|f|/h²`, which is 3e-10 relative at this step; the O(h⁴) truncation
/// term stays below that for time constants down to ~0.2.
pub fn default_step(t: f64) -> f64 {
    2e-3 * t.abs().max(1.0)
}

pub fn first_derivative<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
}

pub fn second_derivative<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    (-f(t - 2.0 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) - f(t + 2.0 * h))
        / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quartics() {
        let f = |t: f64| 3.0 * t.powi(4) - t.powi(3) + 2.0 * t - 7.0;
        let t: f64 = 0.7;
        let h = 0.1;
        let d1 = 12.0 * t.powi(3) - 3.0 * t * t + 2.0;
        let d2 = 36.0 * t * t - 6.0 * t;
        assert!((first_derivative(f, t, h) - d1).abs() < 1e-12);
        assert!((second_derivative(f, t, h) - d2).abs() < 1e-11);
    }

    #[test]
    fn exponential_at_default_step() {
        let t = 2.0;
        let h = default_step(t);
        assert!((first_derivative(f64::exp, t, h) - t.exp()).abs() < 1e-10);
        assert!((second_derivative(f64::exp, t, h) - t.exp()).abs() < 1e-8);
    }
}

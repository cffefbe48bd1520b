//! Gauss-Legendre rules on [-1, 1], generated at runtime.
//!
//! Nodes are roots of the Legendre polynomial P_n, found by Newton iteration
//! from the Chebyshev-like initial guess; weights are 2 / ((1 - x²) P'_n(x)²).
//! Generating the rules instead of embedding tables keeps every rule size
//! available at full machine precision.

/// Node/weight pairs of the n-point Gauss-Legendre rule on [-1, 1],
/// in increasing node order.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2, "rule needs at least 2 points");
    let mut rule = vec![(0.0, 0.0); n];
    // Roots come in ± pairs; solve the positive half and mirror.
    let half = n.div_ceil(2);
    for i in 0..half {
        let k = i + 1; // k-th root counting from the largest
        let mut x = (std::f64::consts::PI * (k as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * (1.0 + x.abs()) {
                let (p2, d2) = legendre_and_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[n - 1 - i] = (x, w);
        rule[i] = (-x, w);
    }
    if n % 2 == 1 {
        // Odd rules have a node exactly at the origin.
        let (_, d) = legendre_and_derivative(n, 0.0);
        rule[n / 2] = (0.0, 2.0 / (d * d));
    }
    rule
}

/// (P_n(x), P'_n(x)) via the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    // (1 - x²) P'_n = n (P_{n-1} - x P_n)
    let d = n as f64 * (p_prev - x * p) / (1.0 - x * x);
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [2, 6, 12, 20, 24, 31, 48] {
            let rule = gauss_legendre(n);
            let total: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-14, "n={n}: sum {total}");
        }
    }

    #[test]
    fn nodes_sorted_and_symmetric() {
        let rule = gauss_legendre(20);
        for pair in rule.windows(2) {
            assert!(pair[0].0 < pair[1].0);
        }
        for i in 0..10 {
            assert!((rule[i].0 + rule[19 - i].0).abs() < 1e-15);
            assert!((rule[i].1 - rule[19 - i].1).abs() < 1e-15);
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // n-point rule is exact through degree 2n-1.
        let rule = gauss_legendre(6);
        let value: f64 = rule.iter().map(|&(x, w)| w * x.powi(10)).sum();
        assert!((value - 2.0 / 11.0).abs() < 1e-15, "got {value}");
    }

    #[test]
    fn six_point_rule_matches_published_values() {
        // Abramowitz & Stegun table 25.4.
        let rule = gauss_legendre(6);
        assert!((rule[5].0 - 0.932469514203152).abs() < 1e-14);
        assert!((rule[5].1 - 0.171324492379170).abs() < 1e-14);
        assert!((rule[3].0 - 0.238619186083197).abs() < 1e-14);
        assert!((rule[3].1 - 0.467913934572691).abs() < 1e-14);
    }
}

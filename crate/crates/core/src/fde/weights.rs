use crate::error::{Error, Result};

/// Quadrature weights for advancing from step `n` to `n + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbmWeights {
    /// `b_{j,n+1}` for `j = 0..=n`.
    pub predictor: Vec<f64>,
    /// `a_{j,n+1}` for `j = 0..=n+1`.
    pub corrector: Vec<f64>,
}

/// Product-rectangle (predictor) and product-trapezoid (corrector) weights.
///
/// Weights are not divided by `Gamma(alpha)`; the solver applies that factor.
pub fn abm_weights(alpha: f64, n: usize, h: f64) -> Result<AbmWeights> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("step size must be positive, got {h}")));
    }
    let table = WeightTable::new(alpha, h, n);
    let predictor = (0..=n).map(|j| table.predictor(n - j)).collect();
    let mut corrector = Vec::with_capacity(n + 2);
    corrector.push(table.corrector_first(n));
    corrector.extend((1..=n).map(|j| table.corrector_interior(n - j)));
    corrector.push(table.corrector_last());
    Ok(AbmWeights { predictor, corrector })
}

/// Difference sequences indexed by `k = n - j`, shared by every step.
#[derive(Debug, Clone)]
pub(crate) struct WeightTable {
    alpha: f64,
    predictor_scale: f64,
    corrector_scale: f64,
    /// `(k+1)^alpha - k^alpha`
    rect: Vec<f64>,
    /// `(k+2)^(alpha+1) + k^(alpha+1) - 2 (k+1)^(alpha+1)`
    trap: Vec<f64>,
}

impl WeightTable {
    /// Table valid for every step index up to `max_n`.
    pub(crate) fn new(alpha: f64, h: f64, max_n: usize) -> Self {
        let ha = h.powf(alpha);
        let p = alpha + 1.0;
        let pow_a: Vec<f64> = (0..=max_n + 1).map(|k| (k as f64).powf(alpha)).collect();
        let pow_p: Vec<f64> = (0..=max_n + 2).map(|k| (k as f64).powf(p)).collect();
        let rect = (0..=max_n).map(|k| pow_a[k + 1] - pow_a[k]).collect();
        let trap = (0..=max_n)
            .map(|k| pow_p[k + 2] + pow_p[k] - 2.0 * pow_p[k + 1])
            .collect();
        WeightTable {
            alpha,
            predictor_scale: ha / alpha,
            corrector_scale: ha / (alpha * p),
            rect,
            trap,
        }
    }

    #[inline]
    pub(crate) fn predictor(&self, k: usize) -> f64 {
        self.predictor_scale * self.rect[k]
    }

    #[inline]
    pub(crate) fn corrector_interior(&self, k: usize) -> f64 {
        self.corrector_scale * self.trap[k]
    }

    #[inline]
    pub(crate) fn predictor_scale(&self) -> f64 {
        self.predictor_scale
    }

    #[inline]
    pub(crate) fn corrector_scale(&self) -> f64 {
        self.corrector_scale
    }

    #[inline]
    pub(crate) fn rect(&self) -> &[f64] {
        &self.rect
    }

    #[inline]
    pub(crate) fn trap(&self) -> &[f64] {
        &self.trap
    }

    /// `a_{0,n+1}`
    pub(crate) fn corrector_first(&self, n: usize) -> f64 {
        let a = self.alpha;
        let nf = n as f64;
        self.corrector_scale * (nf.powf(a + 1.0) - (nf - a) * (nf + 1.0).powf(a))
    }

    /// `a_{n+1,n+1}`
    #[inline]
    pub(crate) fn corrector_last(&self) -> f64 {
        self.corrector_scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn order_one_recovers_rectangle_and_trapezoid() {
        for (n, h) in [(0usize, 0.1), (1, 0.5), (7, 1e-3), (50, 2.0)] {
            let w = abm_weights(1.0, n, h).unwrap();
            assert_eq!(w.predictor.len(), n + 1);
            assert_eq!(w.corrector.len(), n + 2);
            for b in &w.predictor {
                assert_relative_eq!(*b, h, max_relative = 4.0 * f64::EPSILON);
            }
            assert_relative_eq!(w.corrector[0], h / 2.0, max_relative = 4.0 * f64::EPSILON);
            assert_relative_eq!(w.corrector[n + 1], h / 2.0, max_relative = 4.0 * f64::EPSILON);
            for a in &w.corrector[1..=n] {
                assert_relative_eq!(*a, h, max_relative = 4.0 * f64::EPSILON);
            }
        }
    }

    #[test]
    fn half_order_matches_extended_precision_evaluation() {
        // Closed forms evaluated in mpmath at 50 digits.
        let expected_b = [
            0.169_465_949_057_019_505_89,
            0.201_017_924_010_416_348_35,
            0.261_971_658_966_240_012_16,
            0.632_455_532_033_675_866_4,
        ];
        let expected_a = [
            0.082_705_123_241_744_899_162,
            0.183_885_298_804_830_217_89,
            0.227_388_075_376_672_688_59,
            0.349_295_545_288_320_016_22,
            0.421_637_021_355_783_910_93,
        ];
        let w = abm_weights(0.5, 3, 0.1).unwrap();
        for (got, want) in w.predictor.iter().zip(expected_b) {
            assert_relative_eq!(*got, want, max_relative = 1e-14);
        }
        for (got, want) in w.corrector.iter().zip(expected_a) {
            assert_relative_eq!(*got, want, max_relative = 1e-14);
        }
    }

    #[test]
    fn predictor_weights_integrate_kernel_exactly() {
        // sum_j b_{j,n+1} = h^alpha (n+1)^alpha / alpha  = int_0^t (t-s)^(alpha-1) ds
        let (alpha, n, h) = (0.3, 40, 0.05);
        let w = abm_weights(alpha, n, h).unwrap();
        let total: f64 = w.predictor.iter().sum();
        let t: f64 = (n + 1) as f64 * h;
        assert_relative_eq!(total, t.powf(alpha) / alpha, max_relative = 1e-13);
        let total: f64 = w.corrector.iter().sum();
        assert_relative_eq!(total, t.powf(alpha) / alpha, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(abm_weights(0.0, 1, 0.1).is_err());
        assert!(abm_weights(1.5, 1, 0.1).is_err());
        assert!(abm_weights(0.5, 1, 0.0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn weights_are_positive(alpha in 0.001f64..=1.0, n in 0usize..=100_000) {
            let table = WeightTable::new(alpha, 1.0, n);
            prop_assert!(table.corrector_first(n) > 0.0);
            prop_assert!(table.corrector_last() > 0.0);
            for k in 0..=n {
                prop_assert!(table.predictor(k) > 0.0, "b at k = {}", k);
            }
            for k in 0..n {
                prop_assert!(table.corrector_interior(k) > 0.0, "a at k = {}", k);
            }
        }
    }
}

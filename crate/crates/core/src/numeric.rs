//! Small floating-point helpers shared by the evaluators.

/// Probabilities at or below this value are treated as exact zeros before logs are taken.
pub const ZERO_PROB: f64 = 1e-300;

/// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Sums terms in order of descending magnitude with compensation.
pub fn sum_descending(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let mut acc = NeumaierSum::new();
    acc.extend(terms);
    acc.value()
}

/// `a·log2((a+b)/a) + b·log2((a+b)/b)`: the joint mass `a + b` times the binary
/// entropy of the split `a : b`. Zero when either side vanishes.
#[inline]
pub fn split_entropy(a: f64, b: f64) -> f64 {
    if a <= ZERO_PROB || b <= ZERO_PROB {
        return 0.0;
    }
    let s = a + b;
    a * (s / a).log2() + b * (s / b).log2()
}

/// `x·log2(x/y)` with `0·log 0 = 0`.
#[inline]
pub fn xlog2_ratio(x: f64, y: f64) -> f64 {
    if x <= ZERO_PROB {
        0.0
    } else {
        x * (x / y).log2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut s = NeumaierSum::new();
        s.extend([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn split_entropy_of_even_split_is_mass() {
        assert!((split_entropy(0.25, 0.25) - 0.5).abs() < 1e-15);
        assert_eq!(split_entropy(0.0, 0.3), 0.0);
        assert_eq!(split_entropy(0.3, 1e-301), 0.0);
    }
}

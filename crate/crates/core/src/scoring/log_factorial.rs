use crate::real::Real;

/// `ln(k!)` for `k = 0..=max`, built from compensated partial sums of `ln k`.
#[derive(Debug, Clone)]
pub struct LogFactorialTable<T> {
    values: Vec<T>,
}

impl<T: Real> LogFactorialTable<T> {
    pub fn new(max: usize) -> Self {
        let mut values = Vec::with_capacity(max + 1);
        values.push(T::zero());
        // Neumaier summation in f64, rounded once per entry into T
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for k in 1..=max {
            let x = (k as f64).ln();
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
            values.push(T::of(sum + comp));
        }
        LogFactorialTable { values }
    }

    /// Largest `k` covered.
    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn get(&self, k: usize) -> T {
        self.values[k]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }
}

/// Convenience wrapper returning the raw table.
pub fn log_factorial_table<T: Real>(max: usize) -> Vec<T> {
    LogFactorialTable::new(max).values
}

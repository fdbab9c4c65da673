/// splitmix64 generator. Integer-exact, so a seed produces the same stream
/// on every platform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomStream {
    state: u64,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)`: the next output divided by `2^64`.
    pub fn next_uniform(&mut self) -> f64 {
        self.next_u64() as f64 * (1.0 / 18_446_744_073_709_551_616.0)
    }
}

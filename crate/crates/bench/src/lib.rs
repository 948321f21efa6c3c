//! Benchmark inputs shared by the bench targets.

use exponent_core::GroupSpec;

/// `(p, n)` instances timed by the cokernel benchmark.
pub const COKERNEL_INSTANCES: &[(u64, u32)] = &[(2, 8), (3, 4), (5, 3)];

pub fn spec(p: u64, n: u32) -> GroupSpec {
    GroupSpec::new(p, n).expect("benchmark instances are valid")
}

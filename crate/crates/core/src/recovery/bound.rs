use num_bigint::BigUint;
use num_traits::One;

use crate::invariants::MagnitudePartition;

fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Upper bound on the number of orbits sharing a second moment:
///
/// ```text
///   ∏_{r_p ≥ 2} C(r_p, 2)! / r_p!  ·  ∏_{a < b} (r_a r_b)!
/// ```
///
/// Evaluated exactly; the quotient is rounded down, which is still a bound
/// because orbit counts are integers. Returns 1 when k < 3.
pub fn orbit_count_bound(partition: &MagnitudePartition) -> BigUint {
    orbit_count_bound_for(partition.multiplicities())
}

pub fn orbit_count_bound_for(multiplicities: &[usize]) -> BigUint {
    let k: usize = multiplicities.iter().sum();
    if k < 3 {
        return BigUint::one();
    }
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for &r in multiplicities.iter().filter(|&&r| r >= 2) {
        numerator *= factorial(r * (r - 1) / 2);
        denominator *= factorial(r);
    }
    for (a, &ra) in multiplicities.iter().enumerate() {
        for &rb in &multiplicities[a + 1..] {
            numerator *= factorial(ra * rb);
        }
    }
    numerator / denominator
}

use num_bigint::BigUint;
use num_traits::Zero;

/// `floor(sqrt(n))` by Newton's iteration on integers.
///
/// The start value `2^ceil(bits/2)` is never below the root, so the iterates
/// decrease monotonically until they reach it.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::from(1u32) << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

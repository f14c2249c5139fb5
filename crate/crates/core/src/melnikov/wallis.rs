use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rat;

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// Mean of `cos^m t sin^n t` over a period.
pub fn circle_mean(m: u32, n: u32) -> Rat {
    if m % 2 == 1 || n % 2 == 1 {
        return Rat::zero();
    }
    let (m, n) = (m as i64, n as i64);
    Rat::new(
        double_factorial(m - 1) * double_factorial(n - 1),
        double_factorial(m + n),
    )
}

/// `int_0^{2 pi} cos^m t sin^n t dt` as the rational coefficient of pi.
pub fn wallis(m: u32, n: u32) -> Rat {
    circle_mean(m, n) * Rat::from_integer(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn small_cases() {
        assert_eq!(wallis(0, 0), int(2));
        assert_eq!(wallis(1, 2), int(0));
        assert_eq!(wallis(2, 2), rat(1, 4));
        assert_eq!(wallis(2, 0), int(1));
        assert_eq!(wallis(4, 0), rat(3, 4));
    }
}

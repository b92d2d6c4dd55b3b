//! Exact integer and rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduced rational with a positive denominator.
pub type Rational = BigRational;

/// `C(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(-1)^k` as a small integer.
pub fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `2^k` as a big integer.
pub fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Formats a rational as `p/q` in lowest terms, always with a denominator.
pub fn rational_string(r: &Rational) -> String {
    // BigRational keeps itself reduced with a positive denominator.
    debug_assert!(r.denom().is_positive());
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!q.is_zero()).then(|| Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(12, 6), BigInt::from(924));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn rationals_print_reduced() {
        let r = Rational::new(BigInt::from(10), BigInt::from(-4));
        assert_eq!(rational_string(&r), "-5/2");
        assert_eq!(rational_string(&Rational::from_integer(3.into())), "3/1");
        assert_eq!(parse_rational("6/4"), Some(Rational::new(3.into(), 2.into())));
        assert_eq!(parse_rational("-7"), Some(Rational::from_integer((-7).into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.5"), None);
    }
}

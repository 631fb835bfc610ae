//! Exact rational scalars shared by every module.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Builds `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Canonical text form: `"3/2"`, `"-1"`, `"0"`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest integer not exceeding `r`.
pub fn floor_i64(r: &Rat) -> i64 {
    let f = r.floor().to_integer();
    i64::try_from(f).expect("coordinate out of i64 range")
}

/// Smallest integer not below `r`.
pub fn ceil_i64(r: &Rat) -> i64 {
    let c = r.ceil().to_integer();
    i64::try_from(c).expect("coordinate out of i64 range")
}

/// Reduces `r` into `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// Sign of `r` as `-1`, `0` or `1`.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3/2", "-7/4", "5"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("4/8"), Some(rat(1, 2)));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn floor_frac_of_negative() {
        assert_eq!(floor_i64(&rat(-1, 3)), -1);
        assert_eq!(ceil_i64(&rat(-1, 3)), 0);
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
    }
}

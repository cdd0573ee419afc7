//! Small helpers around exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` for non-integers, `p` for integers.
pub fn fmt(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Representative in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Exact square root when `r` is the square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// All reduced fractions `p/q` with `1 <= q <= bound` lying in `[lo, hi]`, ascending.
pub fn farey_range(bound: u64, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    for den in 1..=bound {
        let d = BigInt::from(den);
        let start = (lo * Rational::from_integer(d.clone())).ceil().to_integer();
        let stop = (hi * Rational::from_integer(d.clone()))
            .floor()
            .to_integer();
        let mut num = start;
        while num <= stop {
            if num.gcd(&d).is_one() {
                out.push(Rational::new(num.clone(), d.clone()));
            }
            num += 1;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(sqrt_exact(&ratio(9, 49)), Some(ratio(3, 7)));
        assert_eq!(sqrt_exact(&ratio(2, 1)), None);
        assert_eq!(sqrt_exact(&ratio(-4, 1)), None);
        assert_eq!(sqrt_exact(&int(0)), Some(int(0)));
    }

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(&ratio(7, 5)), ratio(2, 5));
        assert_eq!(frac(&ratio(-1, 5)), ratio(4, 5));
        assert_eq!(frac(&int(3)), int(0));
    }

    #[test]
    fn farey_counts() {
        // fractions in [0, 1] with denominator <= 5: 0, 1/5, 1/4, 1/3, 2/5, 1/2, 3/5, 2/3, 3/4, 4/5, 1
        assert_eq!(farey_range(5, &int(0), &int(1)).len(), 11);
        let half = farey_range(4, &ratio(1, 4), &ratio(1, 2));
        assert_eq!(half, vec![ratio(1, 4), ratio(1, 3), ratio(1, 2)]);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse("-4"), Some(int(-4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(fmt(&ratio(12, 5)), "12/5");
        assert_eq!(fmt(&int(8)), "8");
    }
}

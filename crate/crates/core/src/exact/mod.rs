//! Exact scalars and dense matrices.
//!
//! Everything here is exact: big-integer rationals, dense rational matrices,
//! Smith and Hermite normal forms over the integers, and the fifth cyclotomic
//! field. No floating point is used anywhere in this module tree.

mod cyclotomic;
mod matrix;
mod normal_form;

pub use cyclotomic::Cyc5;
pub use matrix::Mat;
pub use normal_form::{hnf_integer, hnf_rowspan, integer_kernel, snf, Smith};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. `BigRational` keeps values reduced with a positive
/// denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn to_int(r: &Rat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Representative of `r` modulo `m` in `[0, m)`; `m` must be positive.
pub fn mod_rat(r: &Rat, m: &Rat) -> Rat {
    debug_assert!(m.is_positive());
    let q = (r / m).floor();
    r - q * m
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Integer square root of a non-negative integer, rounded down.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Dot product of two rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(
        a.len(),
        b.len(),
        "dot product of vectors of different length"
    );
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn int_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn fmt_rat_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rat("4/6"), Some(rat(2, 3)));
        assert_eq!(parse_rat("-3"), Some(int(-3)));
        assert_eq!(parse_rat("1/-2"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn modular_representatives() {
        assert_eq!(mod_rat(&rat(-1, 2), &int(2)), rat(3, 2));
        assert_eq!(mod_rat(&rat(9, 4), &int(1)), rat(1, 4));
        assert_eq!(mod_rat(&int(2), &int(2)), int(0));
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&BigInt::from(65536)), Some(BigInt::from(256)));
        assert_eq!(exact_sqrt(&BigInt::from(8)), None);
        assert_eq!(isqrt(&BigInt::from(8)), BigInt::from(2));
    }
}

//! Arithmetic in the fifth cyclotomic field Q(ω), ω⁵ = 1, ω ≠ 1.
//!
//! Elements are stored in the power basis {1, ω, ω², ω³}; ω⁴ is eliminated with
//! 1 + ω + ω² + ω³ + ω⁴ = 0, so every element has a unique representative.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, parse_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyc5 {
    c: [Rat; 4],
}

impl Cyc5 {
    pub fn new(c0: Rat, c1: Rat, c2: Rat, c3: Rat) -> Self {
        Cyc5 {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyc5::new(r, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Cyc5::from_rat(int(n))
    }

    /// Reduces coefficients of 1, ω, …, ω⁴ (indices taken mod 5).
    fn from_cyclic(mut p: [Rat; 5]) -> Self {
        let c4 = std::mem::take(&mut p[4]);
        let [c0, c1, c2, c3, _] = p;
        Cyc5::new(c0 - &c4, c1 - &c4, c2 - &c4, c3 - c4)
    }

    /// ω^k for any integer k.
    pub fn omega_pow(k: i64) -> Self {
        let mut p: [Rat; 5] = Default::default();
        p[k.rem_euclid(5) as usize] = Rat::one();
        Cyc5::from_cyclic(p)
    }

    pub fn omega() -> Self {
        Cyc5::omega_pow(1)
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.c
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    /// Galois conjugate ω ↦ ω^k, k coprime to 5.
    pub fn conjugate(&self, k: i64) -> Self {
        debug_assert!(k.rem_euclid(5) != 0);
        let mut p: [Rat; 5] = Default::default();
        for (i, c) in self.c.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(5) as usize;
            p[e] += c;
        }
        Cyc5::from_cyclic(p)
    }

    /// Field norm to Q: the product of all four conjugates.
    pub fn norm(&self) -> Rat {
        let n = self * &self.conjugate(2) * self.conjugate(3) * self.conjugate(4);
        n.as_rational()
            .cloned()
            .expect("the norm of an element of Q(ω) is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero in Q(ω)".into()));
        }
        let others = self.conjugate(2) * self.conjugate(3) * self.conjugate(4);
        let n = self.norm();
        Ok(others.scale(&n.recip()))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Cyc5::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Cyc5 {
            c: [
                &self.c[0] * r,
                &self.c[1] * r,
                &self.c[2] * r,
                &self.c[3] * r,
            ],
        }
    }

    /// Parses tokens like `1`, `-w`, `3/2*w^2`, `1+2*w-w^3` (powers of `w` may
    /// exceed 3 and are reduced).
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = Cyc5::zero();
        for t in terms {
            acc = acc + parse_term(t)?;
        }
        Some(acc)
    }
}

fn parse_term(t: &str) -> Option<Cyc5> {
    let (sign, body) = match t.as_bytes().first()? {
        b'+' => (1, &t[1..]),
        b'-' => (-1, &t[1..]),
        _ => (1, t),
    };
    let (coef, power) = match body.find('w') {
        None => (parse_rat(body)?, 0),
        Some(pos) => {
            let coef = match body[..pos].strip_suffix('*') {
                Some(c) => parse_rat(c)?,
                None if pos == 0 => Rat::one(),
                None => return None,
            };
            let rest = &body[pos + 1..];
            let power = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')?.parse::<i64>().ok()?
            };
            (coef, power)
        }
    };
    Some(Cyc5::omega_pow(power).scale(&(coef * int(sign))))
}

impl Zero for Cyc5 {
    fn zero() -> Self {
        Cyc5::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for Cyc5 {
    fn one() -> Self {
        Cyc5::from_int(1)
    }
}

impl Add for &Cyc5 {
    type Output = Cyc5;
    fn add(self, o: &Cyc5) -> Cyc5 {
        Cyc5::new(
            &self.c[0] + &o.c[0],
            &self.c[1] + &o.c[1],
            &self.c[2] + &o.c[2],
            &self.c[3] + &o.c[3],
        )
    }
}

impl Sub for &Cyc5 {
    type Output = Cyc5;
    fn sub(self, o: &Cyc5) -> Cyc5 {
        Cyc5::new(
            &self.c[0] - &o.c[0],
            &self.c[1] - &o.c[1],
            &self.c[2] - &o.c[2],
            &self.c[3] - &o.c[3],
        )
    }
}

impl Mul for &Cyc5 {
    type Output = Cyc5;
    fn mul(self, o: &Cyc5) -> Cyc5 {
        let mut p: [Rat; 5] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    p[(i + j) % 5] += a * b;
                }
            }
        }
        Cyc5::from_cyclic(p)
    }
}

impl Neg for &Cyc5 {
    type Output = Cyc5;
    fn neg(self) -> Cyc5 {
        self.scale(&int(-1))
    }
}

impl Div for &Cyc5 {
    type Output = Cyc5;
    /// Panics on division by zero; use [`Cyc5::inv`] for a checked inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Cyc5) -> Cyc5 {
        self * &o.inv().expect("division by zero in Q(ω)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Cyc5 {
            type Output = Cyc5;
            fn $m(self, o: Cyc5) -> Cyc5 { (&self).$m(&o) }
        }
        impl $tr<&Cyc5> for Cyc5 {
            type Output = Cyc5;
            fn $m(self, o: &Cyc5) -> Cyc5 { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Cyc5 {
    type Output = Cyc5;
    fn neg(self) -> Cyc5 {
        -&self
    }
}

impl fmt::Display for Cyc5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rat::zero();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let unit = mag.is_one();
            match i {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push('w');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

//! Polynomials with coefficients in Q(ω).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::Cyc5;

pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Cyc5>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyc5) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Cyc5::one())
    }

    pub fn monomial(exp: Exponent, c: Cyc5) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Cyc5)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(
                e.len(),
                nvars,
                "exponent length differs from variable count"
            );
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, c: Cyc5) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Cyc5::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Cyc5> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Cyc5 {
        self.terms.get(exp).cloned().unwrap_or_else(Cyc5::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms
            .keys()
            .all(|e| e.iter().sum::<u32>() == d)
            .then_some(d)
    }

    pub fn scale(&self, c: &Cyc5) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, v)| (e.clone(), v * c)),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.nvars, Cyc5::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitutes `xᵢ ↦ images[i]`; all images share one variable count.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let m = images.first().map_or(0, |p| p.nvars);
        let mut out = Polynomial::zero(m);
        let mut cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let pw = cache
                        .entry((i, k))
                        .or_insert_with(|| images[i].pow(k))
                        .clone();
                    t = &t * &pw;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// `x ↦ P(A·x)`, where `a` has one row per variable of `self`.
    pub fn compose_linear(&self, a: &[Vec<Cyc5>]) -> Polynomial {
        let m = a.first().map_or(0, |r| r.len());
        let images: Vec<Polynomial> = a
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    m,
                    row.iter().enumerate().map(|(j, c)| {
                        let mut e = vec![0; m];
                        e[j] = 1;
                        (e, c.clone())
                    }),
                )
            })
            .collect();
        self.substitute(&images)
    }

    pub fn eval(&self, x: &[Cyc5]) -> Cyc5 {
        let mut s = Cyc5::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = &t * xi;
                }
            }
            s = &s + &t;
        }
        s
    }

    /// `λ` with `self = λ·other`, if one exists and both are nonzero.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Cyc5> {
        let (e, c) = other.terms.iter().next()?;
        let lambda = (&self.coeff(e) / c).clone();
        if lambda.is_zero() {
            return None;
        }
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    /// Univariate polynomial in variable `i` with all other variables set to 1.
    pub fn to_univariate(&self, i: usize) -> Univariate {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Cyc5::zero());
            }
            coeffs[k] = &coeffs[k] + c;
        }
        Univariate::new(coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Cyc5::from_int(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars.max(rhs.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{k}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial, coefficients from degree 0 upward, trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Univariate(Vec<Cyc5>);

impl Univariate {
    pub fn new(mut coeffs: Vec<Cyc5>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Univariate(coeffs)
    }

    pub fn coeffs(&self) -> &[Cyc5] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Univariate {
        Univariate::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Cyc5::from_int(k as i64))
                .collect(),
        )
    }

    fn monic(&self) -> Univariate {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("leading coefficient is nonzero");
                Univariate::new(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn rem(&self, d: &Univariate) -> Univariate {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.0[dd].inv().expect("leading coefficient is nonzero");
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let q = &r[k] * &lead_inv;
            if !q.is_zero() {
                for (j, c) in d.0.iter().enumerate() {
                    let idx = k - dd + j;
                    r[idx] = &r[idx] - &(&q * c);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Univariate::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Univariate) -> Univariate {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of distinct roots in an algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        let Some(d) = self.degree() else {
            return 0;
        };
        let g = self.gcd(&self.derivative());
        d - g.degree().unwrap_or(0)
    }

    pub fn eval(&self, x: &Cyc5) -> Cyc5 {
        self.0
            .iter()
            .rev()
            .fold(Cyc5::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[Cyc5], ys: &[Cyc5]) -> Univariate {
        assert_eq!(xs.len(), ys.len());
        let mut out = vec![Cyc5::zero(); xs.len()];
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            // basis polynomial ∏_{j≠i} (x − xⱼ)/(xᵢ − xⱼ)
            let mut basis = vec![Cyc5::one()];
            let mut denom = Cyc5::one();
            for (j, xj) in xs.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Cyc5::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] = &next[k + 1] + c;
                    next[k] = &next[k] - &(c * xj);
                }
                basis = next;
                denom = &denom * &(xi - xj);
            }
            let scale = (yi / &denom).clone();
            for (k, c) in basis.iter().enumerate() {
                out[k] = &out[k] + &(c * &scale);
            }
        }
        Univariate::new(out)
    }
}

/// Points of `V(f) ⊂ P¹` for a binary form `f(s, t)` of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinaryRoots {
    /// `f` vanishes identically on the line.
    Degenerate,
    /// `distinct` points; `with_multiplicity` equals the form degree.
    Finite {
        degree: u32,
        distinct: usize,
        with_multiplicity: u32,
    },
}

impl BinaryRoots {
    pub fn distinct(&self) -> Option<usize> {
        match self {
            BinaryRoots::Degenerate => None,
            BinaryRoots::Finite { distinct, .. } => Some(*distinct),
        }
    }
}

/// Roots of a binary form (2 variables, homogeneous) on `P¹`.
pub fn binary_roots(f: &Polynomial) -> BinaryRoots {
    assert_eq!(f.nvars(), 2, "binary form expected");
    let Some(d) = f.homogeneous_degree() else {
        return BinaryRoots::Degenerate;
    };
    let u = f.to_univariate(0);
    let finite = u.distinct_roots();
    // A drop in degree means t divides f, i.e. the point (1:0).
    let at_infinity = usize::from(u.degree().unwrap_or(0) < d as usize);
    BinaryRoots::Finite {
        degree: d,
        distinct: finite + at_infinity,
        with_multiplicity: d,
    }
}

/// Common zeros on `P¹` of several binary forms: the roots of their gcd.
pub fn common_binary_roots(forms: &[Polynomial]) -> BinaryRoots {
    let nonzero: Vec<&Polynomial> = forms.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return BinaryRoots::Degenerate;
    };
    // Work with f(s, 1) and track the (1:0) point separately.
    let at_infinity = nonzero.iter().all(|p| {
        let d = p.homogeneous_degree().unwrap_or(0) as usize;
        p.to_univariate(0).degree().unwrap_or(0) < d
    });
    let mut g = first.to_univariate(0);
    for p in &nonzero[1..] {
        g = g.gcd(&p.to_univariate(0));
    }
    let distinct = g.distinct_roots() + usize::from(at_infinity);
    let degree = g.degree().unwrap_or(0) as u32 + u32::from(at_infinity);
    BinaryRoots::Finite {
        degree,
        distinct,
        with_multiplicity: degree,
    }
}

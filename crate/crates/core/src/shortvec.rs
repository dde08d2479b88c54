//! Exhaustive short-vector enumeration for definite lattices.
//!
//! The Gram matrix is first size-reduced with pairwise moves, then decomposed
//! as `Σ qᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)²` over the rationals. Depth-first search
//! runs from the last coordinate down, and each coordinate range is the exact
//! integer interval allowed by the remaining budget. No floating point is used.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{big, common_denominator, int, isqrt, Mat, Rat};
use crate::lattice::IntegralLattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortVectorReport {
    pub bound: i64,
    /// True when the input was negative definite and norms are reported for `L(-1)`.
    pub negated: bool,
    /// One representative per ± pair, first nonzero coordinate positive, sorted.
    pub vectors: Vec<ShortVector>,
    /// Norm → number of ± pairs.
    pub counts_by_norm: BTreeMap<i64, usize>,
}

impl ShortVectorReport {
    /// Number of ± pairs.
    pub fn pairs(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn min_norm(&self) -> Option<i64> {
        self.counts_by_norm.keys().next().copied()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    /// Split the top coordinate range across threads.
    pub parallel: bool,
    /// Size-reduce the basis before enumerating.
    pub reduce: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            parallel: true,
            reduce: true,
        }
    }
}

/// All nonzero vectors of norm at most `bound` (positive convention), up to sign.
pub fn short_vectors(l: &IntegralLattice, bound: i64) -> Result<ShortVectorReport> {
    short_vectors_with(l, bound, EnumOptions::default())
}

pub fn short_vectors_with(
    l: &IntegralLattice,
    bound: i64,
    opts: EnumOptions,
) -> Result<ShortVectorReport> {
    let (gram, negated) = positive_gram(l)?;
    let mut report = ShortVectorReport {
        bound,
        negated,
        vectors: Vec::new(),
        counts_by_norm: BTreeMap::new(),
    };
    let n = gram.len();
    if bound < 1 || n == 0 {
        return Ok(report);
    }

    let (reduced, basis) = if opts.reduce {
        size_reduce(&gram)
    } else {
        (gram.clone(), identity(n))
    };
    let chol = Cholesky::new(&reduced);
    let found = chol.enumerate(&big(&BigInt::from(bound)), opts.parallel);

    let mut vectors = Vec::with_capacity(found.len());
    for x in found {
        let mut v = vec![BigInt::zero(); n];
        for (xi, row) in x.iter().zip(&basis) {
            if *xi != 0 {
                for (vj, bij) in v.iter_mut().zip(row) {
                    *vj += bij * BigInt::from(*xi);
                }
            }
        }
        if v.iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
        {
            v.iter_mut().for_each(|c| *c = -&*c);
        }
        let norm = quad(&gram, &v);
        if norm <= BigInt::zero() || norm > BigInt::from(bound) {
            return Err(Error::Internal(format!(
                "enumeration produced a vector of norm {norm} outside (0, {bound}]"
            )));
        }
        let coords = v
            .iter()
            .map(|c| c.to_i64())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Arithmetic("short vector coordinate overflows i64".into()))?;
        vectors.push(ShortVector {
            coords,
            norm: norm.to_i64().expect("norm is at most the bound"),
        });
    }
    vectors.sort_by(|a, b| a.coords.cmp(&b.coords));
    vectors.dedup_by(|a, b| a.coords == b.coords);
    for v in &vectors {
        *report.counts_by_norm.entry(v.norm).or_insert(0) += 1;
    }
    report.vectors = vectors;
    Ok(report)
}

/// Smallest norm of a nonzero vector, positive convention.
pub fn minimum(l: &IntegralLattice) -> Result<i64> {
    if l.rank() == 0 {
        return Err(Error::Input("minimum of the zero lattice".into()));
    }
    let mut bound: i64 = 2;
    loop {
        if let Some(m) = short_vectors(l, bound)?.min_norm() {
            return Ok(m);
        }
        bound = bound
            .checked_mul(2)
            .ok_or_else(|| Error::Arithmetic("minimum search bound overflow".into()))?;
    }
}

fn positive_gram(l: &IntegralLattice) -> Result<(Vec<Vec<BigInt>>, bool)> {
    let (p, m) = l.signature();
    if p > 0 && m > 0 {
        return Err(Error::Indefinite(p, m));
    }
    let negated = p == 0 && m > 0;
    let g = l
        .gram()
        .to_int_rows()
        .ok_or_else(|| Error::Internal("lattice Gram matrix is not integral".into()))?;
    let g = if negated {
        g.into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect()
    } else {
        g
    };
    Ok((g, negated))
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn quad(g: &[Vec<BigInt>], v: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                s += &g[i][j] * vi * vj;
            }
        }
    }
    s
}

/// Nearest integer to `a / b` for `b > 0`, ties toward zero.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = a.div_mod_floor(b);
    let r2 = &r * &two;
    if r2 > *b || (r2 == *b && q.is_negative()) {
        q + 1
    } else {
        q
    }
}

/// Pairwise size reduction: `bᵢ ← bᵢ − r·bⱼ` whenever it strictly shortens `bᵢ`.
/// Returns the reduced Gram matrix and the new basis rows in old coordinates.
fn size_reduce(g: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n = g.len();
    let mut a = g.to_vec();
    let mut t = identity(n);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let r = round_div(&a[i][j], &a[j][j]);
                if r.is_zero() {
                    continue;
                }
                let new_norm = &a[i][i] - BigInt::from(2) * &r * &a[i][j] + &r * &r * &a[j][j];
                if new_norm >= a[i][i] {
                    continue;
                }
                // Row then column operation keeps `a = t·g·tᵀ`.
                for k in 0..n {
                    let s = &r * &a[j][k];
                    a[i][k] -= s;
                }
                for k in 0..n {
                    let s = &r * &a[k][j];
                    a[k][i] -= s;
                }
                for k in 0..n {
                    let s = &r * &t[j][k];
                    t[i][k] -= s;
                }
                changed = true;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].cmp(&a[y][y]).then(x.cmp(&y)));
    let a = order
        .iter()
        .map(|&i| order.iter().map(|&j| a[i][j].clone()).collect())
        .collect();
    let t = order.iter().map(|&i| t[i].clone()).collect();
    (a, t)
}

/// `Q(x) = Σᵢ qᵢ (xᵢ − cᵢ)²` with centre `cᵢ = −(Σ_{j>i} nᵢⱼ xⱼ) / dᵢ`.
struct Cholesky {
    q: Vec<Rat>,
    num: Vec<Vec<BigInt>>,
    den: Vec<BigInt>,
}

impl Cholesky {
    fn new(g: &[Vec<BigInt>]) -> Self {
        let n = g.len();
        let gm = Mat::from_fn(n, n, |i, j| big(&g[i][j]));
        let mut q = vec![Rat::zero(); n];
        let mut mu = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            let mut qi = gm[(i, i)].clone();
            for k in 0..i {
                qi -= &mu[k][i] * &mu[k][i] * &q[k];
            }
            for j in i + 1..n {
                let mut s = gm[(i, j)].clone();
                for k in 0..i {
                    s -= &mu[k][i] * &mu[k][j] * &q[k];
                }
                mu[i][j] = s / &qi;
            }
            assert!(qi.is_positive(), "Gram matrix is not positive definite");
            q[i] = qi;
        }
        let mut num = Vec::with_capacity(n);
        let mut den = Vec::with_capacity(n);
        for row in &mu {
            let d = common_denominator(row.iter());
            num.push(
                row.iter()
                    .map(|m| (m * big(&d)).to_integer())
                    .collect::<Vec<_>>(),
            );
            den.push(d);
        }
        Cholesky { q, num, den }
    }

    fn centre(&self, i: usize, x: &[i64]) -> Rat {
        let mut s = BigInt::zero();
        for (j, xj) in x.iter().enumerate().skip(i + 1) {
            if *xj != 0 && !self.num[i][j].is_zero() {
                s += &self.num[i][j] * BigInt::from(*xj);
            }
        }
        Rat::new(-s, self.den[i].clone())
    }

    fn enumerate(&self, bound: &Rat, parallel: bool) -> Vec<Vec<i64>> {
        let n = self.q.len();
        let top = n - 1;
        let Some((lo, hi)) = int_range(&Rat::zero(), &(bound / &self.q[top])) else {
            return Vec::new();
        };
        // The last nonzero coordinate is positive, so the top level starts at 0.
        let values: Vec<i64> = (lo.max(0)..=hi).collect();
        let subtree = |v: i64| {
            let mut out = Vec::new();
            let mut x = vec![0i64; n];
            x[top] = v;
            let used = &self.q[top] * int(v) * int(v);
            if top == 0 {
                if v != 0 {
                    out.push(x);
                }
            } else {
                self.search(top - 1, &mut x, &used, bound, v == 0, &mut out);
            }
            out
        };
        let parts: Vec<Vec<Vec<i64>>> = if parallel {
            values.par_iter().map(|&v| subtree(v)).collect()
        } else {
            values.iter().map(|&v| subtree(v)).collect()
        };
        parts.into_iter().flatten().collect()
    }

    fn search(
        &self,
        level: usize,
        x: &mut [i64],
        used: &Rat,
        bound: &Rat,
        zero_above: bool,
        out: &mut Vec<Vec<i64>>,
    ) {
        let c = self.centre(level, x);
        let t = (bound - used) / &self.q[level];
        let Some((mut lo, hi)) = int_range(&c, &t) else {
            return;
        };
        if zero_above {
            // Centre is 0 here, and the leading nonzero coordinate must be positive.
            lo = lo.max(0);
        }
        for v in lo..=hi {
            x[level] = v;
            let y = int(v) - &c;
            let next = used + &self.q[level] * &y * &y;
            let still_zero = zero_above && v == 0;
            if level == 0 {
                if !still_zero {
                    out.push(x.to_vec());
                }
            } else {
                self.search(level - 1, x, &next, bound, still_zero, out);
            }
        }
        x[level] = 0;
    }
}

/// Integers `x` with `(x − c)² ≤ t`, as an inclusive range.
fn int_range(c: &Rat, t: &Rat) -> Option<(i64, i64)> {
    if t.is_negative() {
        return None;
    }
    let fits = |x: &BigInt| {
        let y = big(x) - c;
        &y * &y <= *t
    };
    let fl = c.floor().to_integer();
    let cl = c.ceil().to_integer();
    // A nonempty interval around c always contains floor(c) or ceil(c).
    if !fits(&fl) && !fits(&cl) {
        return None;
    }
    let r = isqrt(&t.floor().to_integer()) + 1;
    let mut hi = &fl + &r;
    while !fits(&hi) {
        hi -= 1;
    }
    let mut lo = &cl - &r;
    while !fits(&lo) {
        lo += 1;
    }
    Some((lo.to_i64()?, hi.to_i64()?))
}

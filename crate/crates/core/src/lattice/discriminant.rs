//! Discriminant groups `L*/L` and their finite quadratic forms.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exact::{big, int, mod_rat, snf, Rat};

/// Groups larger than this are not searched exhaustively by [`fqf_isomorphic`].
pub const FQF_SEARCH_LIMIT: u64 = 1 << 20;

/// Full-group (order, q) multiset pruning is applied up to this order.
const MULTISET_PRUNE_LIMIT: u64 = 4096;

/// Discriminant form of an integral lattice.
///
/// The group is `⊕ Z/dᵢ` with `d₁ | d₂ | …`, all `dᵢ > 1`. Generator `i` lifts
/// to the dual vector `generator_lifts[i]` (base coordinates). `q_values` are
/// taken mod 2 in `[0, 2)` and exist only for even lattices; `b_matrix` is
/// taken mod 1 in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    pub invariant_factors: Vec<BigInt>,
    pub generator_lifts: Vec<Vec<Rat>>,
    pub q_values: Option<Vec<Rat>>,
    pub b_matrix: Vec<Vec<Rat>>,
}

/// Element of the group as coefficients on the generators, `0 ≤ cᵢ < dᵢ`.
pub type Element = Vec<u64>;

pub fn discriminant_group(l: &IntegralLattice) -> Result<FiniteQuadraticForm> {
    let gram = l.gram();
    let s = snf(gram)?;
    let diag = s.diagonal();
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::Lattice("degenerate Gram matrix".into()));
    }
    let mut factors = Vec::new();
    let mut lifts = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let inv_d = Rat::new(BigInt::one(), d.clone());
        // coordinates reduced into [0, 1): same class mod L, short to print
        lifts.push(
            s.u.row(i)
                .iter()
                .map(|x| mod_rat(&(x * &inv_d), &int(1)))
                .collect::<Vec<_>>(),
        );
        factors.push(d.clone());
    }
    let two = int(2);
    let one = int(1);
    let b_matrix = lifts
        .iter()
        .map(|x| lifts.iter().map(|y| mod_rat(&l.pair(x, y), &one)).collect())
        .collect();
    let q_values = l
        .is_even()
        .then(|| lifts.iter().map(|x| mod_rat(&l.norm(x), &two)).collect());
    Ok(FiniteQuadraticForm {
        invariant_factors: factors,
        generator_lifts: lifts,
        q_values,
        b_matrix,
    })
}

impl FiniteQuadraticForm {
    /// A form given directly by its tables, without lifts.
    pub fn from_tables(
        invariant_factors: Vec<BigInt>,
        q_values: Option<Vec<Rat>>,
        b_matrix: Vec<Vec<Rat>>,
    ) -> Self {
        FiniteQuadraticForm {
            invariant_factors,
            generator_lifts: Vec::new(),
            q_values,
            b_matrix,
        }
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Prime-power cyclic factors, sorted by prime then exponent.
    pub fn primary_decomposition(&self) -> Vec<(BigInt, u32)> {
        let mut out = Vec::new();
        for d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                out.push((p, e));
            }
        }
        out.sort();
        out
    }

    /// Primary decomposition rendered as e.g. `(Z/2Z)^6 + (Z/5Z)^2`.
    pub fn primary_string(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut counts: BTreeMap<BigInt, usize> = BTreeMap::new();
        for (p, e) in self.primary_decomposition() {
            *counts.entry(p.pow(e)).or_default() += 1;
        }
        counts
            .iter()
            .map(|(q, k)| {
                if *k == 1 {
                    format!("Z/{q}Z")
                } else {
                    format!("(Z/{q}Z)^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn small_factors(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(|d| d.to_u64()).collect()
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj != 0 {
                    acc += &self.b_matrix[i][j] * big(&BigInt::from(xi * yj));
                }
            }
        }
        mod_rat(&acc, &int(1))
    }

    /// `q(x)` in `[0, 2)`, for even lattices.
    pub fn q(&self, x: &[u64]) -> Option<Rat> {
        let q = self.q_values.as_ref()?;
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            let xi_b = BigInt::from(*xi);
            acc += &q[i] * big(&(&xi_b * &xi_b));
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                if *xj != 0 {
                    acc += &self.b_matrix[i][j] * big(&(BigInt::from(2 * xi * xj)));
                }
            }
        }
        Some(mod_rat(&acc, &int(2)))
    }

    /// Order of the element `x`.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        let d = self.small_factors().expect("invariant factors fit in u64");
        x.iter()
            .zip(&d)
            .fold(1u64, |acc, (xi, di)| acc.lcm(&(di / xi.gcd(di))))
    }

    /// All elements in lexicographic order of coefficients.
    pub fn elements(&self) -> Vec<Element> {
        let d = self.small_factors().expect("invariant factors fit in u64");
        let mut out = vec![vec![]];
        for di in d {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..di).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Element {
        let d = self.small_factors().expect("invariant factors fit in u64");
        x.iter()
            .zip(y)
            .zip(&d)
            .map(|((a, b), m)| (a + b) % m)
            .collect()
    }

    fn scalar(&self, k: u64, x: &[u64]) -> Element {
        let d = self.small_factors().expect("invariant factors fit in u64");
        x.iter().zip(&d).map(|(a, m)| (a * k) % m).collect()
    }

    /// Checks `q(x+y) − q(x) − q(y) ≡ 2 b(x,y) (mod 2)` on all generator pairs.
    pub fn is_compatible(&self) -> bool {
        let n = self.num_generators();
        if self.q_values.is_none() {
            return true;
        }
        let unit = |i: usize| -> Element {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (x, y) = (unit(i), unit(j));
                let lhs =
                    self.q(&self.add(&x, &y)).unwrap() - self.q(&x).unwrap() - self.q(&y).unwrap();
                let rhs = self.b(&x, &y) * int(2);
                mod_rat(&(lhs - rhs), &int(2)).is_zero()
            })
        })
    }
}

impl FiniteQuadraticForm {
    /// Recomputes q and b from the generator lifts in `l` and checks the
    /// polarization identity on every generator pair.
    pub fn is_compatible_with(&self, l: &IntegralLattice) -> bool {
        let (one, two) = (int(1), int(2));
        let lifts = &self.generator_lifts;
        let n = lifts.len();
        if n != self.num_generators() {
            return false;
        }
        for i in 0..n {
            if let Some(q) = &self.q_values {
                if mod_rat(&l.norm(&lifts[i]), &two) != q[i] {
                    return false;
                }
            }
            for j in 0..n {
                if mod_rat(&l.pair(&lifts[i], &lifts[j]), &one) != self.b_matrix[i][j] {
                    return false;
                }
                let sum: Vec<Rat> = lifts[i].iter().zip(&lifts[j]).map(|(a, b)| a + b).collect();
                let defect = l.norm(&sum)
                    - l.norm(&lifts[i])
                    - l.norm(&lifts[j])
                    - &self.b_matrix[i][j] * &two;
                if !mod_rat(&defect, &two).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "unimodular (trivial group)");
        }
        let factors: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect();
        write!(f, "{}", factors.join(","))
    }
}

fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Searches for an isomorphism of finite quadratic forms.
///
/// Returns the images of the generators of `f1` as elements of `f2`, or `None`
/// when no isomorphism exists. The backtracking search matches generator
/// orders, q-values and the bilinear pairings; when both groups have at most
/// 4096 elements, the full multiset of (order, q) is compared first.
pub fn fqf_isomorphic(
    f1: &FiniteQuadraticForm,
    f2: &FiniteQuadraticForm,
) -> Result<Option<Vec<Element>>> {
    if f1.invariant_factors != f2.invariant_factors {
        return Ok(None);
    }
    if f1.q_values.is_some() != f2.q_values.is_some() {
        return Ok(None);
    }
    let order = f2
        .order()
        .to_u64()
        .filter(|&o| o <= FQF_SEARCH_LIMIT)
        .ok_or_else(|| {
            Error::Input(format!(
                "group of order {} is too large to search",
                f2.order()
            ))
        })?;

    let elems2 = f2.elements();
    let key = |f: &FiniteQuadraticForm, x: &[u64]| (f.element_order(x), f.q(x), f.b(x, x));
    if order <= MULTISET_PRUNE_LIMIT {
        let mut m1: Vec<_> = f1.elements().iter().map(|x| key(f1, x)).collect();
        let mut m2: Vec<_> = elems2.iter().map(|x| key(f2, x)).collect();
        m1.sort();
        m2.sort();
        if m1 != m2 {
            return Ok(None);
        }
    }

    let n = f1.num_generators();
    let d1 = f1.small_factors().expect("checked above");
    let candidates: Vec<Vec<&Element>> = (0..n)
        .map(|i| {
            let mut gen = vec![0; n];
            gen[i] = 1;
            let want = key(f1, &gen);
            elems2
                .iter()
                .filter(|y| f2.element_order(y) == d1[i] && key(f2, y) == want)
                .collect()
        })
        .collect();

    let mut chosen: Vec<Element> = Vec::with_capacity(n);
    if backtrack(f1, f2, &candidates, &mut chosen) {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn backtrack(
    f1: &FiniteQuadraticForm,
    f2: &FiniteQuadraticForm,
    candidates: &[Vec<&Element>],
    chosen: &mut Vec<Element>,
) -> bool {
    let i = chosen.len();
    if i == candidates.len() {
        return is_fqf_isomorphism(f1, f2, chosen);
    }
    for y in &candidates[i] {
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(j, yj)| f2.b(y, yj) == f1.b_matrix[i][j]);
        if !consistent {
            continue;
        }
        chosen.push((*y).clone());
        if backtrack(f1, f2, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Verifies that generator images define an isometric group isomorphism.
pub fn is_fqf_isomorphism(
    f1: &FiniteQuadraticForm,
    f2: &FiniteQuadraticForm,
    images: &[Element],
) -> bool {
    let Some(d1) = f1.small_factors() else {
        return false;
    };
    if images.len() != d1.len() || f1.order() != f2.order() {
        return false;
    }
    let n2 = f2.num_generators();
    if images.iter().any(|y| y.len() != n2) {
        return false;
    }
    // well defined: dᵢ·yᵢ = 0
    if images
        .iter()
        .zip(&d1)
        .any(|(y, d)| f2.scalar(*d, y).iter().any(|c| *c != 0))
    {
        return false;
    }
    let map = |x: &[u64]| -> Element {
        x.iter()
            .zip(images)
            .fold(vec![0; n2], |acc, (c, y)| f2.add(&acc, &f2.scalar(*c, y)))
    };
    let mut seen = HashSet::new();
    for x in f1.elements() {
        let fx = map(&x);
        if f1.q(&x) != f2.q(&fx) {
            return false;
        }
        if !seen.insert(fx) {
            return false;
        }
    }
    // b is bilinear, so generator pairs suffice.
    (0..d1.len()).all(|i| (0..d1.len()).all(|j| f2.b(&images[i], &images[j]) == f1.b_matrix[i][j]))
}

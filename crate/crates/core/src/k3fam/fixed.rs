//! Fixed points of a linear involution on a complete intersection.
//!
//! Each eigenspace `E` of the involution is parametrised by its basis and the
//! equations are pulled back to `P(E)`. Counts are exact: on a line, common
//! roots come from the gcd over Q(ω); on a plane, from a resultant that is
//! checked to be squarefree of full Bézout degree.

use num_traits::Zero;

use super::poly::{common_binary_roots, BinaryRoots, Polynomial, Univariate};
use super::projective::{det, fixed_locus, CycMat, Eigenspace, ProjectiveMap};
use crate::error::{Error, Result};
use crate::exact::Cyc5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusCount {
    Points(usize),
    /// Fewer independent equations than the dimension of `P(E)`: the fixed
    /// locus contains a positive-dimensional piece.
    PositiveDimensional(String),
    /// Finite but not certified by the available argument.
    Uncertified(String),
}

#[derive(Clone, Debug)]
pub struct FixedPointReport {
    /// `(dim E, eigenvalue, count)` per eigenspace.
    pub spaces: Vec<(usize, Cyc5, LocusCount)>,
}

impl FixedPointReport {
    /// Total number of isolated fixed points when every piece is finite and certified.
    pub fn total(&self) -> Option<usize> {
        self.spaces
            .iter()
            .map(|(_, _, c)| match c {
                LocusCount::Points(n) => Some(*n),
                _ => None,
            })
            .sum()
    }

    /// E.g. "6+2=8", or a description of the first non-finite piece.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .spaces
            .iter()
            .map(|(_, _, c)| match c {
                LocusCount::Points(n) => n.to_string(),
                LocusCount::PositiveDimensional(s) => format!("curve ({s})"),
                LocusCount::Uncertified(s) => format!("uncertified ({s})"),
            })
            .collect();
        match self.total() {
            Some(t) => format!("{}={t}", parts.join("+")),
            None => parts.join(" + "),
        }
    }
}

/// Pulls `p` back along `x = Σ tₖ·basis[k]`.
pub fn restrict(p: &Polynomial, basis: &[Vec<Cyc5>]) -> Polynomial {
    let n = p.nvars();
    let a: CycMat = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    p.compose_linear(&a)
}

/// Restriction of `p` to the line spanned by `v0, v1`, with its root count.
pub fn restrict_and_count(p: &Polynomial, v0: &[Cyc5], v1: &[Cyc5]) -> (Polynomial, BinaryRoots) {
    let r = restrict(p, &[v0.to_vec(), v1.to_vec()]);
    let roots = super::poly::binary_roots(&r);
    (r, roots)
}

/// Drops zero polynomials and those proportional to an earlier one.
fn independent(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in polys {
        if !p.is_zero() && out.iter().all(|q| p.ratio_to(q).is_none()) {
            out.push(p);
        }
    }
    out
}

fn count_on_space(system: &[Polynomial], space: &Eigenspace) -> LocusCount {
    let k = space.dim() - 1;
    let restricted: Vec<Polynomial> = system.iter().map(|p| restrict(p, &space.basis)).collect();
    let eqs = independent(restricted.clone());
    if k == 0 {
        return LocusCount::Points(usize::from(eqs.is_empty()));
    }
    if eqs.len() < k {
        let zeros = restricted.iter().filter(|p| p.is_zero()).count();
        return LocusCount::PositiveDimensional(format!(
            "{} independent equation(s) on P^{k}, {zeros} vanish identically",
            eqs.len()
        ));
    }
    match k {
        1 => match common_binary_roots(&eqs) {
            BinaryRoots::Degenerate => LocusCount::PositiveDimensional("line".into()),
            BinaryRoots::Finite { distinct, .. } => LocusCount::Points(distinct),
        },
        2 if eqs.len() == 2 => plane_count(&eqs[0], &eqs[1]),
        _ => LocusCount::Uncertified(format!("{} equations on P^{k}", eqs.len())),
    }
}

/// Fixed points of the linear involution `iota` on `V(system)`.
pub fn count_fixed_points(system: &[Polynomial], iota: &ProjectiveMap) -> Result<FixedPointReport> {
    if let Some(p) = system.iter().find(|p| p.nvars() != iota.dim()) {
        return Err(Error::Dimension(format!(
            "equation in {} variables, map of size {}",
            p.nvars(),
            iota.dim()
        )));
    }
    let spaces = fixed_locus(iota)?
        .into_iter()
        .map(|e| {
            let c = count_on_space(system, &e);
            (e.dim(), e.eigenvalue, c)
        })
        .collect();
    Ok(FixedPointReport { spaces })
}

/// Common zeros in `P²` of two ternary forms, by resultants.
///
/// The curves are projected from the centre `(1 : k : k²)`. If the centre is
/// on neither curve, the resultant in the projection direction is a binary
/// form of degree `dp·dq` whose roots are the lines through the centre that
/// meet both curves. When it has `dp·dq` distinct roots each line carries
/// exactly one common point, so the count is exact. Centres are tried in turn
/// since a symmetric configuration can put several points on one line.
pub fn plane_count(p: &Polynomial, q: &Polynomial) -> LocusCount {
    let (Some(dp), Some(dq)) = (p.homogeneous_degree(), q.homogeneous_degree()) else {
        return LocusCount::Uncertified("inhomogeneous equation".into());
    };
    if p.nvars() != 3 || q.nvars() != 3 {
        return LocusCount::Uncertified("plane count needs ternary forms".into());
    }
    let bezout = (dp * dq) as usize;
    let mut best = 0;
    for k in 0..CENTRES {
        let a: CycMat = [[1, 0, 0], [k, 1, 0], [k * k, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| Cyc5::from_int(x)).collect())
            .collect();
        let (p, q) = (p.compose_linear(&a), q.compose_linear(&a));
        if p.coeff(&[dp, 0, 0]).is_zero() || q.coeff(&[dq, 0, 0]).is_zero() {
            continue;
        }
        match projected_roots(&p, &q, bezout) {
            None => {
                return LocusCount::PositiveDimensional(
                    "resultant vanishes: common component".into(),
                )
            }
            Some(n) if n == bezout => return LocusCount::Points(n),
            Some(n) => best = best.max(n),
        }
    }
    LocusCount::Uncertified(format!(
        "at most {best} distinct projected roots over {CENTRES} centres, Bezout bound {bezout}"
    ))
}

const CENTRES: i64 = 16;

/// Distinct roots of `Res_{x₀}(p, q)` as a binary form in `(x₁, x₂)`, or
/// `None` if it vanishes identically. Both forms must be monic-like in `x₀`.
fn projected_roots(p: &Polynomial, q: &Polynomial, bezout: usize) -> Option<usize> {
    // Sample at (x₁, x₂) = (s, 1) and interpolate in s.
    let specialise = |f: &Polynomial, s: &Cyc5| {
        let images = [
            Polynomial::var(1, 0),
            Polynomial::constant(1, s.clone()),
            Polynomial::constant(1, Cyc5::from_int(1)),
        ];
        f.substitute(&images).to_univariate(0)
    };
    let xs: Vec<Cyc5> = (0..=bezout as i64).map(Cyc5::from_int).collect();
    let ys: Vec<Cyc5> = xs
        .iter()
        .map(|s| sylvester_resultant(&specialise(p, s), &specialise(q, s)))
        .collect();
    let r = Univariate::interpolate(&xs, &ys);
    if r.is_zero() {
        return None;
    }
    let at_infinity = usize::from(r.degree().unwrap_or(0) < bezout);
    Some(r.distinct_roots() + at_infinity)
}

fn sylvester_resultant(f: &Univariate, g: &Univariate) -> Cyc5 {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Cyc5::zero();
    };
    let size = m + n;
    let mut rows: CycMat = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Cyc5::zero(); size];
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Cyc5::zero(); size];
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    det(&rows)
}

/// Fixed points of `ι = α∘i` on the double cover `u² = f(x)` of `P²`, with
/// `u` of weight 3 and `i` the covering involution `u ↦ −u`.
///
/// A point `(u : x)` is fixed iff `(−u : αx) = (λ³u : λx)` for some `λ`:
/// either `λ = 1`, `u = 0`, `αx = x` (branch points over `P(E₊)`), or
/// `λ = −1`, `αx = −x`, `u² = f(x)` (two points over each `x ∈ P(E₋)` off the
/// branch curve).
pub fn double_cover_fixed_points(
    f: &Polynomial,
    alpha: &ProjectiveMap,
) -> Result<FixedPointReport> {
    if !alpha.pow(2).matrix().iter().enumerate().all(|(i, r)| {
        r.iter().enumerate().all(|(j, c)| {
            if i == j {
                *c == Cyc5::from_int(1)
            } else {
                c.is_zero()
            }
        })
    }) {
        return Err(Error::NotInvolution("α² must be the identity".into()));
    }
    if alpha.push_forward(f) != *f {
        return Err(Error::Input("α does not preserve the branch curve".into()));
    }
    let mut spaces = Vec::new();
    for e in fixed_locus(alpha)? {
        let plus = e.eigenvalue == Cyc5::from_int(1);
        let count = if plus {
            count_on_space(std::slice::from_ref(f), &e)
        } else {
            match e.dim() {
                1 => {
                    let on_branch = f.eval(&e.basis[0]).is_zero();
                    LocusCount::Points(if on_branch { 1 } else { 2 })
                }
                _ => LocusCount::PositiveDimensional("double cover of P(E-)".into()),
            }
        };
        spaces.push((e.dim(), e.eigenvalue, count));
    }
    Ok(FixedPointReport { spaces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Cyc5 {
        Cyc5::from_int(n)
    }

    #[test]
    fn conic_and_line() {
        // x² − yz and y − z meet in (1:1:1), (−1:1:1).
        let p = Polynomial::from_terms(3, [(vec![2, 0, 0], c(1)), (vec![0, 1, 1], c(-1))]);
        let q = Polynomial::from_terms(3, [(vec![0, 1, 0], c(1)), (vec![0, 0, 1], c(-1))]);
        // no pure power of x in the line, so a shear is needed
        assert_eq!(plane_count(&p, &q), LocusCount::Points(2));
        // tangent line y = 0 to x² − yz at (0:0:1): one point, uncertified
        let t = Polynomial::var(3, 1);
        assert!(matches!(plane_count(&p, &t), LocusCount::Uncertified(_)));
        assert!(matches!(
            plane_count(&p, &p.scale(&c(3))),
            LocusCount::PositiveDimensional(_)
        ));
    }

    #[test]
    fn two_conics() {
        // x² + y² − 2z² and x² − y²: four points (±1 : ±1 : 1).
        let p = Polynomial::from_terms(
            3,
            [
                (vec![2, 0, 0], c(1)),
                (vec![0, 2, 0], c(1)),
                (vec![0, 0, 2], c(-2)),
            ],
        );
        let q = Polynomial::from_terms(3, [(vec![2, 0, 0], c(1)), (vec![0, 2, 0], c(-1))]);
        assert_eq!(plane_count(&p, &q), LocusCount::Points(4));
    }

    #[test]
    fn swap_on_p1_times_line() {
        // ι swaps x₀, x₁ on P²; the quadric x₀x₁ − x₂² has fixed points on
        // E₊ = {x₀ = x₁}: x₀² − x₂² → 2 points, on E₋ = (1:−1:0): not on it.
        let i = ProjectiveMap::signed_permutation(&[1, 0, 2], &[1, 1, 1]);
        let f = Polynomial::from_terms(3, [(vec![1, 1, 0], c(1)), (vec![0, 0, 2], c(-1))]);
        let r = count_fixed_points(&[f], &i).unwrap();
        assert_eq!(r.total(), Some(2));
        assert_eq!(r.summary(), "2+0=2");
    }
}

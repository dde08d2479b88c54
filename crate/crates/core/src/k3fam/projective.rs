//! Linear maps on projective space with entries in Q(ω).

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::exact::{exact_sqrt, Cyc5, Rat};

pub type CycMat = Vec<Vec<Cyc5>>;

/// An invertible square matrix over Q(ω), acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectiveMap {
    m: CycMat,
}

fn identity(n: usize) -> CycMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Cyc5::one() } else { Cyc5::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &CycMat, b: &CycMat) -> CycMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..k).fold(Cyc5::zero(), |acc, t| {
                        if a[i][t].is_zero() || b[t][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][t] * &b[t][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut CycMat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : a·x = 0}` over Q(ω).
pub fn nullspace(a: &CycMat, cols: usize) -> Vec<Vec<Cyc5>> {
    let mut r = a.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Cyc5::zero(); cols];
            v[f] = Cyc5::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by elimination.
pub fn det(a: &CycMat) -> Cyc5 {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Cyc5::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Cyc5::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = &d * &m[c][c];
        let inv = m[c][c].inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    d
}

pub fn rank(a: &CycMat) -> usize {
    let mut r = a.clone();
    rref(&mut r).len()
}

impl ProjectiveMap {
    pub fn new(m: CycMat) -> Result<Self> {
        let n = m.len();
        if n == 0 || m.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(
                "projective map must be a nonempty square matrix".into(),
            ));
        }
        if rank(&m) < n {
            return Err(Error::Input("projective map is singular".into()));
        }
        Ok(ProjectiveMap { m })
    }

    /// `diag(ω^{w₀}, …)`.
    pub fn diagonal_weights(w: &[i64]) -> Self {
        let n = w.len();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Cyc5::omega_pow(w[i])
                        } else {
                            Cyc5::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ProjectiveMap { m }
    }

    /// The map sending coordinate `xᵢ` to position `perm[i]` with sign `signs[i]`,
    /// i.e. `y_{perm[i]} = signs[i]·xᵢ`.
    pub fn signed_permutation(perm: &[usize], signs: &[i64]) -> Self {
        let n = perm.len();
        let mut m = vec![vec![Cyc5::zero(); n]; n];
        for (i, (&p, &s)) in perm.iter().zip(signs).enumerate() {
            m[p][i] = Cyc5::from_int(s);
        }
        ProjectiveMap { m }
    }

    pub fn identity(n: usize) -> Self {
        ProjectiveMap { m: identity(n) }
    }

    pub fn matrix(&self) -> &CycMat {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn compose(&self, other: &ProjectiveMap) -> ProjectiveMap {
        ProjectiveMap {
            m: mat_mul(&self.m, &other.m),
        }
    }

    pub fn inverse(&self) -> ProjectiveMap {
        let n = self.dim();
        let mut aug: CycMat = self
            .m
            .iter()
            .zip(identity(n))
            .map(|(r, e)| r.iter().cloned().chain(e).collect())
            .collect();
        rref(&mut aug);
        ProjectiveMap {
            m: aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> ProjectiveMap {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = ProjectiveMap::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// `λ` if the matrix is `λ·I`.
    pub fn scalar(&self) -> Option<Cyc5> {
        let l = self.m[0][0].clone();
        let n = self.dim();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.m[i][j] == l
                } else {
                    self.m[i][j].is_zero()
                }
            })
        });
        ok.then_some(l)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar().is_some()
    }

    /// `x ↦ P(M⁻¹x)`, the equation of the image hypersurface `M(V(P))`.
    pub fn push_forward(&self, p: &Polynomial) -> Polynomial {
        p.compose_linear(&self.inverse().m)
    }
}

impl fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `A = λ·B` for some nonzero `λ`.
pub fn pgl_equal(a: &ProjectiveMap, b: &ProjectiveMap) -> bool {
    pgl_ratio(a, b).is_some()
}

pub fn pgl_ratio(a: &ProjectiveMap, b: &ProjectiveMap) -> Option<Cyc5> {
    if a.dim() != b.dim() {
        return None;
    }
    let n = a.dim();
    let (i, j) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !b.m[i][j].is_zero())?;
    let lambda = &a.m[i][j] / &b.m[i][j];
    if lambda.is_zero() {
        return None;
    }
    let ok = (0..n).all(|i| (0..n).all(|j| a.m[i][j] == &lambda * &b.m[i][j]));
    ok.then_some(lambda)
}

/// `⟨σ, ι⟩` is dihedral of order 10 in PGL: `σ⁵` and `ι²` scalar, `σ` not
/// scalar, and `ισι⁻¹ = σ⁻¹` up to scalar.
pub fn dihedral_in_pgl(sigma: &ProjectiveMap, iota: &ProjectiveMap) -> bool {
    sigma.dim() == iota.dim()
        && sigma.pow(5).is_scalar()
        && iota.pow(2).is_scalar()
        && !sigma.is_scalar()
        && pgl_equal(
            &iota.compose(sigma).compose(&iota.inverse()),
            &sigma.inverse(),
        )
}

/// One projectivised eigenspace of an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub eigenvalue: Cyc5,
    /// Basis vectors (columns of a parametrisation), as rows here.
    pub basis: Vec<Vec<Cyc5>>,
}

impl Eigenspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Eigenspaces of a projective involution. `ι²` must be scalar `c`, and a
/// square root of `c` of the form `±ωᵏ·r` (r rational) must exist.
pub fn fixed_locus(iota: &ProjectiveMap) -> Result<Vec<Eigenspace>> {
    let c = iota
        .pow(2)
        .scalar()
        .ok_or_else(|| Error::NotInvolution("square is not scalar".into()))?;
    let lambda = sqrt_in_field(&c).ok_or_else(|| {
        Error::NotInvolution(format!("square {c} has no square root of the form ω^k·r"))
    })?;
    let n = iota.dim();
    let mut out = Vec::new();
    for ev in [lambda.clone(), -lambda] {
        let shifted: CycMat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            &iota.m[i][j] - &ev
                        } else {
                            iota.m[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let basis = nullspace(&shifted, n);
        if !basis.is_empty() {
            out.push(Eigenspace {
                eigenvalue: ev,
                basis,
            });
        }
    }
    Ok(out)
}

fn sqrt_in_field(c: &Cyc5) -> Option<Cyc5> {
    for k in 0..5 {
        // c = ω^{2k}·r with r rational, and r a rational square.
        let r = c * &Cyc5::omega_pow(-2 * k);
        let Some(r) = r.as_rational() else {
            continue;
        };
        if r.is_negative() {
            continue;
        }
        let (Some(num), Some(den)) = (exact_sqrt(r.numer()), exact_sqrt(r.denom())) else {
            continue;
        };
        return Some(&Cyc5::omega_pow(k) * &Cyc5::from_rat(Rat::new(num, den)));
    }
    None
}

/// `dim {X : Xσ = σX}` over Q(ω).
pub fn commutant_dim(sigma: &ProjectiveMap) -> usize {
    let n = sigma.dim();
    let s = &sigma.m;
    // Unknown X[p][q] sits at column p·n + q; equation (i, j) is (Xσ − σX)[i][j].
    let mut rows: CycMat = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Cyc5::zero(); n * n];
            for k in 0..n {
                row[i * n + k] = &row[i * n + k] + &s[k][j];
                row[k * n + j] = &row[k * n + j] - &s[i][k];
            }
            rows.push(row);
        }
    }
    n * n - rank(&rows)
}

/// `(Σ (pₖ − 1)) − (commutant − 1) − redundancy`.
pub fn moduli_count(params: &[usize], commutant: usize, redundancy: usize) -> i64 {
    let p: i64 = params.iter().map(|&p| p as i64 - 1).sum();
    p - (commutant as i64 - 1) - redundancy as i64
}

/// `P∘ι⁻¹` is a nonzero multiple of `Q`, i.e. `ι` carries `V(P)` onto `V(Q)`.
pub fn swap_check(iota: &ProjectiveMap, p: &Polynomial, q: &Polynomial) -> bool {
    iota.push_forward(p).ratio_to(q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_equivalence() {
        let s = ProjectiveMap::diagonal_weights(&[0, 3, 1, 2]);
        let seven: CycMat = s
            .matrix()
            .iter()
            .map(|r| r.iter().map(|c| c * &Cyc5::from_int(7)).collect())
            .collect();
        assert!(pgl_equal(&ProjectiveMap::new(seven).unwrap(), &s));
        assert!(!pgl_equal(&s, &s.inverse()));
        assert!(s.pow(5).is_scalar());
    }

    #[test]
    fn p3_pair_is_dihedral() {
        let s = ProjectiveMap::diagonal_weights(&[0, 3, 1, 2]);
        let i = ProjectiveMap::signed_permutation(&[1, 0, 3, 2], &[1, 1, 1, 1]);
        let conj = i.compose(&s).compose(&i.inverse());
        assert_eq!(pgl_ratio(&conj, &s.inverse()), Some(Cyc5::omega_pow(3)));
        assert!(dihedral_in_pgl(&s, &i));
        assert!(!dihedral_in_pgl(&s, &ProjectiveMap::identity(4)));
    }

    #[test]
    fn eigenspaces() {
        let i = ProjectiveMap::signed_permutation(&[1, 0, 3, 2], &[1, 1, 1, 1]);
        let f = fixed_locus(&i).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|e| e.dim() == 2));
        let id = fixed_locus(&ProjectiveMap::identity(3)).unwrap();
        assert_eq!(id.len(), 1);
        assert_eq!(id[0].dim(), 3);
        let s = ProjectiveMap::diagonal_weights(&[0, 1, 2]);
        assert!(matches!(fixed_locus(&s), Err(Error::NotInvolution(_))));
        // 2·swap squares to 4·I; eigenvalues ±2.
        let two = ProjectiveMap::new(vec![
            vec![Cyc5::zero(), Cyc5::from_int(2)],
            vec![Cyc5::from_int(2), Cyc5::zero()],
        ])
        .unwrap();
        let e = fixed_locus(&two).unwrap();
        assert_eq!(e[0].eigenvalue, Cyc5::from_int(2));
    }

    #[test]
    fn commutants() {
        assert_eq!(
            commutant_dim(&ProjectiveMap::diagonal_weights(&[0, 3, 1, 2])),
            4
        );
        assert_eq!(
            commutant_dim(&ProjectiveMap::diagonal_weights(&[0, 0, 1, 2, 3, 4])),
            8
        );
        assert_eq!(commutant_dim(&ProjectiveMap::identity(4)), 16);
        assert_eq!(moduli_count(&[7], 4, 0), 3);
    }
}

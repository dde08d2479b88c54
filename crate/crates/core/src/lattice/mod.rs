//! Integral lattices given by Gram matrices.

mod discriminant;
mod glue;
mod sublattice;

pub use discriminant::{
    discriminant_group, fqf_isomorphic, is_fqf_isomorphism, FiniteQuadraticForm, FQF_SEARCH_LIMIT,
};
pub use glue::{overlattice, GlueVector, Overlattice};
pub use sublattice::{orthogonal_complement, saturation, sublattice, Complement, Saturation};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, Mat, Rat};

/// A nondegenerate lattice `Zⁿ` with an integral symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: Mat,
    det: BigInt,
    signature: (usize, usize),
}

impl IntegralLattice {
    /// Validates the Gram matrix and caches its determinant and signature.
    pub fn new(gram: Mat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Lattice(format!(
                "Gram matrix is {}x{}, not square",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::Lattice("Gram matrix is not symmetric".into()));
        }
        if !gram.is_integer() {
            return Err(Error::Lattice("Gram matrix has non-integer entries".into()));
        }
        let det = gram.det();
        if det.is_zero() {
            return Err(Error::Lattice("Gram matrix is degenerate".into()));
        }
        let signature = sylvester_signature(&gram);
        Ok(IntegralLattice {
            gram,
            det: det.to_integer(),
            signature,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(Mat::from_i64(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// `(n₊, n₋)`.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].to_integer().is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs() == BigInt::from(1)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.1 == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature.0 == 0
    }

    pub fn is_definite(&self) -> bool {
        self.is_positive_definite() || self.is_negative_definite()
    }

    /// Pairing of two (possibly rational) coordinate vectors.
    pub fn pair(&self, u: &[Rat], v: &[Rat]) -> Rat {
        self.gram.pair(u, v)
    }

    pub fn norm(&self, v: &[Rat]) -> Rat {
        self.gram.pair(v, v)
    }

    /// The lattice with Gram matrix scaled by `s`, written `L(s)`.
    pub fn rescale(&self, s: i64) -> Result<Self> {
        if s == 0 {
            return Err(Error::Input("rescaling factor must be nonzero".into()));
        }
        Self::new(self.gram.scale(&big(&BigInt::from(s))))
    }

    /// Gram matrix divided by `d`; fails unless the result is integral.
    pub fn divide_form(&self, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Input("division of the form by zero".into()));
        }
        Self::new(self.gram.scale(&Rat::new(1.into(), d.into())))
    }
}

/// Orthogonal direct sum (block-diagonal Gram).
pub fn direct_sum(parts: &[IntegralLattice]) -> IntegralLattice {
    let grams: Vec<&Mat> = parts.iter().map(|l| &l.gram).collect();
    let det = parts.iter().fold(BigInt::from(1), |acc, l| acc * &l.det);
    let signature = parts
        .iter()
        .fold((0, 0), |(p, n), l| (p + l.signature.0, n + l.signature.1));
    IntegralLattice {
        gram: Mat::block_diag(&grams),
        det,
        signature,
    }
}

/// Signature of a nondegenerate symmetric matrix by congruence diagonalization.
fn sylvester_signature(gram: &Mat) -> (usize, usize) {
    let n = gram.rows();
    let mut a = gram.clone();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&p| !a[(p, p)].is_zero()) {
            swap_sym(&mut a, k, p);
        } else {
            // Zero diagonal: x_i += x_j gives a new diagonal entry 2·a_ij.
            let Some((i, j)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && !a[(i, j)].is_zero())
            else {
                break;
            };
            add_sym(&mut a, i, j);
            swap_sym(&mut a, k, i);
        }
        let d = a[(k, k)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &d;
            for j in k + 1..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
        }
        for i in k + 1..n {
            a[(i, k)] = Rat::zero();
            a[(k, i)] = Rat::zero();
        }
    }
    (pos, neg)
}

fn swap_sym(a: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    for r in 0..a.rows() {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Basis change `b_i ← b_i + b_j` applied as a congruence.
fn add_sym(a: &mut Mat, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(j, c)].clone();
        a[(i, c)] += t;
    }
    for r in 0..n {
        let t = a[(r, j)].clone();
        a[(r, i)] += t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a4() -> IntegralLattice {
        IntegralLattice::from_i64(&[
            &[2, -1, 0, 0],
            &[-1, 2, -1, 0],
            &[0, -1, 2, -1],
            &[0, 0, -1, 2],
        ])
        .unwrap()
    }

    #[test]
    fn rank_one() {
        let l = IntegralLattice::from_i64(&[&[-2]]).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.signature(), (0, 1));
        assert!(l.is_even());
    }

    #[test]
    fn hyperbolic_plane() {
        let u = IntegralLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(u.signature(), (1, 1));
        assert!(u.is_unimodular());
        let uu = direct_sum(&[u.clone(), u.rescale(2).unwrap(), u]);
        assert_eq!(uu.signature(), (3, 3));
        assert_eq!(IntegralLattice::new(uu.gram().clone()).unwrap(), uu);
    }

    #[test]
    fn scaled_a4() {
        let l = a4().rescale(-2).unwrap();
        assert_eq!(l.signature(), (0, 4));
        assert_eq!(*l.det(), BigInt::from(80));
        let sum = direct_sum(&[l.clone(), l.clone(), l.clone(), l]);
        assert_eq!(sum.rank(), 16);
        assert_eq!(*sum.det(), BigInt::from(5).pow(4) * BigInt::from(2).pow(16));
        assert_eq!(direct_sum(&[a4()]), a4());
    }

    #[test]
    fn construction_errors() {
        assert!(IntegralLattice::from_i64(&[&[1, 2], &[3, 1]]).is_err());
        assert!(IntegralLattice::from_i64(&[&[1, 1], &[1, 1]]).is_err());
        assert!(IntegralLattice::from_i64(&[&[1, 2, 3]]).is_err());
        let half = Mat::from_rows(vec![vec![crate::exact::rat(1, 2)]]).unwrap();
        assert!(IntegralLattice::new(half).is_err());
        assert!(a4().rescale(0).is_err());
    }

    #[test]
    fn mixed_signature_with_zero_diagonal() {
        let g = IntegralLattice::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]]).unwrap();
        assert_eq!(g.signature(), (1, 2));
    }
}

//! Projective families with a diagonal order-5 action and a commuting-up-to-
//! inversion involution: invariance of the equations, dihedral relations in
//! PGL, fixed loci of the involution and parameter counts.

mod families;
mod fixed;
pub mod poly;
pub mod projective;

pub use families::{claims, FamilyClaim, FamilySpec, Sample, FAMILIES};
pub use fixed::{
    count_fixed_points, double_cover_fixed_points, plane_count, restrict, restrict_and_count,
    FixedPointReport, LocusCount,
};
pub use poly::{binary_roots, common_binary_roots, BinaryRoots, Exponent, Polynomial, Univariate};
pub use projective::{
    commutant_dim, dihedral_in_pgl, fixed_locus, moduli_count, pgl_equal, pgl_ratio, swap_check,
    CycMat, Eigenspace, ProjectiveMap,
};

use crate::error::{Error, Result};
use crate::exact::Cyc5;

/// Monomials of one degree with an ω-weight per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialFamily {
    pub num_vars: usize,
    pub weights: Vec<i64>,
    pub monomials: Vec<Exponent>,
    /// Pairs of monomial indices whose coefficients the involution identifies.
    pub coefficient_symmetry: Vec<(usize, usize)>,
}

impl MonomialFamily {
    pub fn new(weights: Vec<i64>, monomials: Vec<Exponent>) -> Result<Self> {
        let n = weights.len();
        if let Some(m) = monomials.iter().find(|m| m.len() != n) {
            return Err(Error::Dimension(format!(
                "monomial {m:?} has {} exponents, expected {n}",
                m.len()
            )));
        }
        let degrees: Vec<u32> = monomials.iter().map(|m| m.iter().sum()).collect();
        if degrees.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Input(format!(
                "monomials have mixed degrees {degrees:?}"
            )));
        }
        Ok(MonomialFamily {
            num_vars: n,
            weights,
            monomials,
            coefficient_symmetry: Vec::new(),
        })
    }

    pub fn with_symmetry(mut self, pairs: Vec<(usize, usize)>) -> Self {
        self.coefficient_symmetry = pairs;
        self
    }

    pub fn degree(&self) -> Option<u32> {
        self.monomials.first().map(|m| m.iter().sum())
    }

    /// `Σ cᵢ·mᵢ` for sample coefficients `c`.
    pub fn polynomial(&self, coeffs: &[Cyc5]) -> Result<Polynomial> {
        if coeffs.len() != self.monomials.len() {
            return Err(Error::Dimension(format!(
                "{} coefficients for {} monomials",
                coeffs.len(),
                self.monomials.len()
            )));
        }
        Ok(Polynomial::from_terms(
            self.num_vars,
            self.monomials.iter().cloned().zip(coeffs.iter().cloned()),
        ))
    }

    /// Whether `coeffs` respect the declared coefficient identifications.
    pub fn respects_symmetry(&self, coeffs: &[Cyc5]) -> bool {
        self.coefficient_symmetry
            .iter()
            .all(|&(i, j)| coeffs.get(i) == coeffs.get(j))
    }
}

/// `Σ mᵢwᵢ mod 5`.
pub fn sigma_weight(m: &[u32], w: &[i64]) -> Result<u32> {
    if m.len() != w.len() {
        return Err(Error::Dimension(format!(
            "exponent vector has length {}, weights have length {}",
            m.len(),
            w.len()
        )));
    }
    let s: i64 = m.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum();
    Ok(s.rem_euclid(5) as u32)
}

/// `(true, Some(w))` when every monomial has weight `w`; the hypersurface is
/// then preserved since the equation only picks up the scalar `ωʷ`.
pub fn is_invariant_family(f: &MonomialFamily) -> (bool, Option<u32>) {
    let weights: Vec<u32> = f
        .monomials
        .iter()
        .map(|m| sigma_weight(m, &f.weights).expect("lengths validated"))
        .collect();
    match weights.first() {
        None => (true, None),
        Some(&w) if weights.iter().all(|&x| x == w) => (true, Some(w)),
        Some(_) => (false, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn weights() {
        assert_eq!(sigma_weight(&[3, 0, 1, 0], &[0, 3, 1, 2]).unwrap(), 1);
        assert_eq!(sigma_weight(&[6, 0, 0], &[0, 1, 4]).unwrap(), 0);
        assert_eq!(sigma_weight(&[0, 0, 2, 2], &[0, 3, 1, 2]).unwrap(), 1);
        assert!(sigma_weight(&[1, 1], &[0, 1, 2]).is_err());
    }

    #[test]
    fn invariance() {
        let f = MonomialFamily::new(vec![0, 1, 0, 0], vec![vec![4, 0, 0, 0], vec![3, 1, 0, 0]])
            .unwrap();
        assert_eq!(is_invariant_family(&f), (false, None));
        assert!(MonomialFamily::new(vec![0, 1], vec![vec![2, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn weight_matches_substitution() {
        // x ↦ σx multiplies a monomial by ω^{weight}.
        let w = [0, 3, 1, 2];
        let sigma = ProjectiveMap::diagonal_weights(&w);
        for m in [
            vec![3u32, 0, 1, 0],
            vec![1, 1, 1, 1],
            vec![0, 0, 2, 2],
            vec![0, 4, 0, 0],
        ] {
            let p = Polynomial::monomial(m.clone(), Cyc5::one());
            let moved = p.compose_linear(sigma.matrix());
            let k = sigma_weight(&m, &w).unwrap();
            assert_eq!(moved, p.scale(&Cyc5::omega_pow(k as i64)));
        }
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exact::{exact_sqrt, hnf_rowspan, Mat, Rat};

/// Rational vector in the coordinates of a base lattice, adjoined to build an
/// overlattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlueVector(pub Vec<Rat>);

impl GlueVector {
    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: IntegralLattice,
    /// `[L' : L]`.
    pub index: BigInt,
    /// Rows are the basis of `L'` in the coordinates of the base lattice.
    pub basis: Mat,
}

/// Adjoins glue vectors to `base` and returns the saturated Z-span.
///
/// Every glue vector must pair integrally with the base and with every glue
/// vector; if the base is even, glue self-pairings must lie in 2Z.
pub fn overlattice(base: &IntegralLattice, glue: &[GlueVector]) -> Result<Overlattice> {
    let n = base.rank();
    let gram = base.gram();
    for (i, g) in glue.iter().enumerate() {
        if g.0.len() != n {
            return Err(Error::Dimension(format!(
                "glue vector {i} has length {}, lattice rank is {n}",
                g.0.len()
            )));
        }
        let row = gram.left_mul(&g.0);
        if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| !v.is_integer()) {
            return Err(Error::GlueBase {
                glue: i,
                base: j,
                value: v.to_string(),
            });
        }
    }
    let even = base.is_even();
    for (i, gi) in glue.iter().enumerate() {
        let self_pair = base.norm(&gi.0);
        let ok = self_pair.is_integer() && (!even || self_pair.to_integer().is_even());
        if !ok {
            return Err(Error::GlueEvenness {
                glue: i,
                value: self_pair.to_string(),
            });
        }
        for (j, gj) in glue.iter().enumerate().skip(i + 1) {
            let p = base.pair(&gi.0, &gj.0);
            if !p.is_integer() {
                return Err(Error::GluePair {
                    first: i,
                    second: j,
                    value: p.to_string(),
                });
            }
        }
    }

    let mut gens = Mat::identity(n).row_vecs();
    gens.extend(glue.iter().map(|g| g.0.clone()));
    let basis = hnf_rowspan(&Mat::from_rows_with_width(gens, n)?);
    let new_gram = &(&basis * gram) * &basis.transpose();
    if !new_gram.is_integer() {
        return Err(Error::Internal("glued Gram matrix is not integral".into()));
    }
    let lattice = IntegralLattice::new(new_gram)?;

    let ratio = Rat::new(base.det().clone(), lattice.det().clone());
    let index = if ratio.is_integer() && ratio.is_positive() {
        exact_sqrt(&ratio.to_integer())
    } else {
        None
    }
    .ok_or_else(|| Error::Internal(format!("determinant ratio {ratio} is not a square")))?;
    if even && !lattice.is_even() {
        return Err(Error::Internal("gluing lost evenness".into()));
    }
    debug_assert!(!index.is_zero());
    Ok(Overlattice {
        lattice,
        index,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::lattice::direct_sum;

    fn a1m() -> IntegralLattice {
        IntegralLattice::from_i64(&[&[-2]]).unwrap()
    }

    #[test]
    fn nikulin_index_two() {
        let base = direct_sum(&vec![a1m(); 8]);
        let glue = GlueVector(vec![rat(1, 2); 8]);
        let o = overlattice(&base, &[glue]).unwrap();
        assert_eq!(o.index, BigInt::from(2));
        assert!(o.lattice.is_even());
        assert_eq!(o.lattice.det() * BigInt::from(4), *base.det());
    }

    #[test]
    fn integral_glue_is_trivial() {
        let base = direct_sum(&vec![a1m(); 3]);
        let o = overlattice(&base, &[GlueVector(vec![int(1), int(-1), int(0)])]).unwrap();
        assert_eq!(o.index, BigInt::from(1));
        assert_eq!(o.lattice, base);
        assert!(o.basis.is_identity());
    }

    #[test]
    fn glue_errors() {
        let base = direct_sum(&vec![a1m(); 4]);
        // ½e₁ pairs integrally with the base but has norm -1/2.
        let e = overlattice(
            &base,
            &[GlueVector(vec![rat(1, 2), int(0), int(0), int(0)])],
        );
        assert!(matches!(e, Err(Error::GlueEvenness { glue: 0, .. })));
        // ½(e₁+e₂) has odd norm -1.
        let g1 = GlueVector(vec![rat(1, 2); 4]);
        let g2 = GlueVector(vec![rat(1, 2), rat(1, 2), int(0), int(0)]);
        let e = overlattice(&base, &[g1, g2]);
        assert!(matches!(e, Err(Error::GlueEvenness { glue: 1, .. })));
        let b4 = IntegralLattice::from_i64(&[&[4]]).unwrap();
        let e = overlattice(&b4, &[GlueVector(vec![rat(1, 3)])]);
        assert!(matches!(
            e,
            Err(Error::GlueBase {
                glue: 0,
                base: 0,
                ..
            })
        ));
        let d = overlattice(&base, &[GlueVector(vec![int(1)])]);
        assert!(matches!(d, Err(Error::Dimension(_))));
    }

    #[test]
    fn glue_pair_error_is_named() {
        // Odd base, so only integrality of self-pairings is required.
        let base = IntegralLattice::from_i64(&[
            &[2, 0, 0, 0, 0],
            &[0, 2, 0, 0, 0],
            &[0, 0, 2, 0, 0],
            &[0, 0, 0, 2, 0],
            &[0, 0, 0, 0, 1],
        ])
        .unwrap();
        let h = rat(1, 2);
        let z = int(0);
        let g1 = GlueVector(vec![h.clone(), h.clone(), z.clone(), z.clone(), z.clone()]);
        let g2 = GlueVector(vec![z.clone(), h.clone(), h.clone(), z.clone(), z.clone()]);
        let e = overlattice(&base, &[g1.clone(), g2]);
        assert!(matches!(
            e,
            Err(Error::GluePair {
                first: 0,
                second: 1,
                ..
            })
        ));
        let g3 = GlueVector(vec![z.clone(), z, h.clone(), h, int(0)]);
        let o = overlattice(&base, &[g1, g3]).unwrap();
        assert_eq!(o.index, BigInt::from(4));
        assert!(!o.lattice.is_even());
    }
}

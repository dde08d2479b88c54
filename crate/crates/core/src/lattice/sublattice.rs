use num_bigint::BigInt;

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exact::{big, hnf_rowspan, integer_kernel, snf, Mat};

#[derive(Clone, Debug)]
pub struct Saturation {
    /// HNF basis of `span_Q(S) ∩ L` in lattice coordinates.
    pub basis: Mat,
    /// Index of the span of `S` in its saturation.
    pub index: BigInt,
}

/// Orthogonal complement. For indefinite ambient lattices the complement can
/// be degenerate, so the Gram matrix is kept and validated on demand.
#[derive(Clone, Debug)]
pub struct Complement {
    /// Rows: HNF basis of the complement in the coordinates of the ambient lattice.
    pub basis: Mat,
    pub gram: Mat,
}

impl Complement {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn lattice(&self) -> Result<IntegralLattice> {
        IntegralLattice::new(self.gram.clone())
    }
}

fn check_width(l: &IntegralLattice, rows: &Mat) -> Result<()> {
    if rows.cols() != l.rank() {
        return Err(Error::Dimension(format!(
            "rows have {} coordinates, lattice rank is {}",
            rows.cols(),
            l.rank()
        )));
    }
    Ok(())
}

fn check_independent(rows: &Mat) -> Result<()> {
    let rank = rows.rank();
    if rank < rows.rows() {
        return Err(Error::Rank {
            rank,
            rows: rows.rows(),
        });
    }
    Ok(())
}

/// The lattice spanned by `rows` (coordinates in `l`) with the inherited form.
pub fn sublattice(l: &IntegralLattice, rows: &Mat) -> Result<IntegralLattice> {
    check_width(l, rows)?;
    check_independent(rows)?;
    IntegralLattice::new(&(rows * l.gram()) * &rows.transpose())
}

/// Primitive closure `span_Q(S) ∩ L` of integer rows `s`.
pub fn saturation(l: &IntegralLattice, s: &Mat) -> Result<Saturation> {
    check_width(l, s)?;
    check_independent(s)?;
    if !s.is_integer() {
        return Err(Error::Input("saturation needs integer coordinates".into()));
    }
    let r = s.rows();
    // S = U⁻¹ D V⁻¹, so the first r rows of V⁻¹ span the same Q-space primitively.
    let smith = snf(s)?;
    let v_inv = smith.v.inverse()?;
    let idx: Vec<usize> = (0..r).collect();
    let basis = hnf_rowspan(&v_inv.select_rows(&idx));
    let index = smith.diagonal().iter().product();
    Ok(Saturation { basis, index })
}

/// Saturated orthogonal complement of the rows of `s` inside `l`.
pub fn orthogonal_complement(l: &IntegralLattice, s: &Mat) -> Result<Complement> {
    check_width(l, s)?;
    let den = s.common_denominator();
    let pairing = &s.scale(&big(&den)) * l.gram();
    let basis = integer_kernel(&pairing)?;
    let gram = &(&basis * l.gram()) * &basis.transpose();
    Ok(Complement { basis, gram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::lattice::direct_sum;

    fn u() -> IntegralLattice {
        IntegralLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap()
    }

    #[test]
    fn identity_rows_give_same_lattice() {
        let l = u();
        assert_eq!(sublattice(&l, &Mat::identity(2)).unwrap(), l);
        let e = sublattice(&l, &Mat::from_i64(&[&[1, 1], &[2, 2]]));
        assert!(matches!(e, Err(Error::Rank { rank: 1, rows: 2 })));
    }

    #[test]
    fn saturation_examples() {
        let l = direct_sum(&[u(), u()]);
        let s = saturation(&l, &Mat::from_i64(&[&[1, 0, 0, 0]])).unwrap();
        assert_eq!(s.index, BigInt::from(1));
        assert_eq!(s.basis, Mat::from_i64(&[&[1, 0, 0, 0]]));
        let s = saturation(&l, &Mat::from_i64(&[&[0, 2, 0, 0]])).unwrap();
        assert_eq!(s.index, BigInt::from(2));
        assert_eq!(s.basis, Mat::from_i64(&[&[0, 1, 0, 0]]));
        let s = saturation(&l, &Mat::from_i64(&[&[2, 2, 0, 0], &[0, 2, 4, 0]])).unwrap();
        assert_eq!(s.index, BigInt::from(4));
        assert_eq!(s.basis.rows(), 2);
    }

    #[test]
    fn complement_examples() {
        let l = direct_sum(&[u(), u()]);
        let c = orthogonal_complement(&l, &Mat::from_i64(&[&[1, 0, 0, 0]])).unwrap();
        assert_eq!(c.basis.rows(), 3);
        // contains the second U summand
        for v in [[0, 0, 1, 0], [0, 0, 0, 1]] {
            let target = Mat::from_i64(&[&v]);
            assert!(c.basis.solve_left(&target).unwrap().is_integer());
        }
        // e₁ is isotropic and lies in its own complement.
        assert!(c.lattice().is_err());
        let full = orthogonal_complement(&l, &Mat::identity(4)).unwrap();
        assert_eq!(full.lattice().unwrap().rank(), 0);
        let none = orthogonal_complement(&l, &Mat::zeros(0, 4)).unwrap();
        assert_eq!(none.lattice().unwrap(), l);
        let c2 = orthogonal_complement(&l, &Mat::from_i64(&[&[1, 1, 0, 0]])).unwrap();
        assert_eq!(c2.lattice().unwrap().signature(), (1, 2));
        let pairs = &(&c.basis * l.gram()) * &Mat::from_i64(&[&[1], &[0], &[0], &[0]]);
        assert!(pairs.entries().iter().all(|x| *x == int(0)));
    }
}

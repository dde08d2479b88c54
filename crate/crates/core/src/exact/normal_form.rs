//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{big, Mat, Rat};
use crate::error::{Error, Result};

/// Smith normal form `d = u · m · v` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
}

impl Smith {
    /// Diagonal entries `d₁ | d₂ | …`, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].to_integer()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

type IntRows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> IntRows {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

fn row_axpy(rows: &mut IntRows, target: usize, q: &BigInt, source: usize) {
    // rows[target] -= q * rows[source]
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

fn col_axpy(rows: &mut IntRows, target: usize, q: &BigInt, source: usize) {
    for row in rows.iter_mut() {
        if !row[source].is_zero() {
            let t = q * &row[source];
            row[target] -= t;
        }
    }
}

fn swap_cols(rows: &mut IntRows, a: usize, b: usize) {
    if a != b {
        for row in rows.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn negate_row(rows: &mut IntRows, i: usize) {
    for x in rows[i].iter_mut() {
        *x = -&*x;
    }
}

/// Smith normal form of an integer matrix.
///
/// Pivoting picks the nonzero entry of smallest absolute value in the active
/// block, ties broken by lowest (row, col), so the output is deterministic.
pub fn snf(m: &Mat) -> Result<Smith> {
    let mut a = m
        .to_int_rows()
        .ok_or_else(|| Error::Input("Smith normal form needs an integer matrix".into()))?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut u = identity_rows(rows);
    let mut v = identity_rows(cols);

    'diag: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'diag;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, &q, t);
                row_axpy(&mut u, i, &q, t);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, &q, t);
                col_axpy(&mut v, j, &q, t);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let p = a[t][t].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    // row_t += row_i, then reduce again
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }

    Ok(Smith {
        u: Mat::from_int_rows(&u, rows),
        d: Mat::from_int_rows(&a, cols),
        v: Mat::from_int_rows(&v, cols),
    })
}

/// Row Hermite normal form of an integer matrix with `n` columns.
///
/// Upper-triangular echelon form with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_integer(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: IntRows = rows.to_vec();
    let k = a.len();
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        loop {
            let pivot = (r..k)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()).then(x.cmp(&y)));
            let Some(p) = pivot else {
                break;
            };
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..k {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, &q, r);
                clean &= a[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            negate_row(&mut a, r);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                row_axpy(&mut a, i, &q, r);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Hermite normal form of the Z-span of the rows of a rational matrix.
///
/// The common denominator is cleared, the integer HNF computed, and the
/// denominator reattached, so the output rows are a basis of the same Z-module.
pub fn hnf_rowspan(m: &Mat) -> Mat {
    let den = m.common_denominator();
    let scale = big(&den);
    let ints = m
        .scale(&scale)
        .to_int_rows()
        .expect("clearing the common denominator yields integers");
    let h = hnf_integer(&ints, m.cols());
    Mat::from_int_rows(&h, m.cols()).scale(&Rat::new(BigInt::one(), den))
}

/// HNF basis (as rows) of the primitive lattice `{x ∈ Zⁿ : m·x = 0}` for an
/// integer matrix `m` with `n` columns.
pub fn integer_kernel(m: &Mat) -> Result<Mat> {
    let n = m.cols();
    let smith = snf(m)?;
    let r = smith.rank();
    // m·v = u⁻¹·d, so the columns of v past the rank span the kernel.
    let rows: Vec<Vec<Rat>> = (r..n).map(|j| smith.v.col(j)).collect();
    Ok(hnf_rowspan(&Mat::from_rows_with_width(rows, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::is_unimodular;
    use crate::exact::{int, rat};

    #[test]
    fn kernel_is_primitive() {
        let k = integer_kernel(&Mat::from_i64(&[&[2, 4, 0]])).unwrap();
        assert_eq!(k, Mat::from_i64(&[&[2, -1, 0], &[0, 0, 1]]));
        assert_eq!(integer_kernel(&Mat::identity(3)).unwrap().rows(), 0);
        assert_eq!(integer_kernel(&Mat::zeros(0, 2)).unwrap(), Mat::identity(2));
    }

    #[test]
    fn snf_identity() {
        let s = snf(&Mat::identity(2)).unwrap();
        assert_eq!(s.d, Mat::identity(2));
    }

    #[test]
    fn snf_reorders_for_divisibility() {
        let m = Mat::from_i64(&[&[4, 0], &[0, 2]]);
        let s = snf(&m).unwrap();
        assert_eq!(s.d, Mat::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(&(&s.u * &m) * &s.v, s.d);
    }

    #[test]
    fn snf_of_a4_cartan() {
        let a4 = Mat::from_i64(&[
            &[2, -1, 0, 0],
            &[-1, 2, -1, 0],
            &[0, -1, 2, -1],
            &[0, 0, -1, 2],
        ]);
        let s = snf(&a4).unwrap();
        assert_eq!(s.diagonal(), [1, 1, 1, 5].map(BigInt::from).to_vec());
        assert_eq!(&(&s.u * &a4) * &s.v, s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
    }

    #[test]
    fn snf_rejects_fractions() {
        let m = Mat::from_rows(vec![vec![rat(1, 2)]]).unwrap();
        assert!(matches!(snf(&m), Err(Error::Input(_))));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let m = Mat::from_i64(&[&[2, 4, 6], &[0, 0, 0]]);
        let s = snf(&m).unwrap();
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::zero()]);
        assert_eq!(s.rank(), 1);
        assert_eq!(&(&s.u * &m) * &s.v, s.d);
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf_rowspan(&Mat::identity(2)), Mat::identity(2));
        let h = hnf_rowspan(&Mat::from_i64(&[&[2, 0], &[3, 0]]));
        assert_eq!(h, Mat::from_i64(&[&[1, 0]]));
        let h = hnf_rowspan(&Mat::from_i64(&[&[0, 0]]));
        assert_eq!((h.rows(), h.cols()), (0, 2));
    }

    #[test]
    fn hnf_of_half_sum_overlattice() {
        // Z^16 plus the all-halves vector spans an index-2 overlattice.
        let mut rows = Mat::identity(16).row_vecs();
        let mut mu = vec![int(0); 16];
        for (i, x) in mu.iter_mut().enumerate() {
            if i % 4 == 0 {
                *x = rat(1, 2);
            }
        }
        rows.push(mu);
        let h = hnf_rowspan(&Mat::from_rows(rows).unwrap());
        assert_eq!(h.rows(), 16);
        assert_eq!(h.det(), rat(1, 2));
        for i in 0..16 {
            assert!(h[(i, i)] > int(0));
            for j in 0..i {
                assert_eq!(h[(i, j)], int(0));
            }
        }
    }
}

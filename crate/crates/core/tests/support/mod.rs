//! Strategies and property checks shared by the property tests and the
//! acceptance suite.
#![allow(dead_code)]

use latkit_core::exact::{hnf_rowspan, int, snf, Cyc5, Mat, Rat};
use latkit_core::lattice::IntegralLattice;
use latkit_core::shortvec::{short_vectors, short_vectors_with, EnumOptions};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn int_matrix(max_dim: usize, range: i64) -> impl Strategy<Value = Mat> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-range..=range, r * c)
            .prop_map(move |v| Mat::from_fn(r, c, |i, j| int(v[i * c + j])))
    })
}

/// Full-rank square basis, as rows.
pub fn basis(max_rank: usize) -> impl Strategy<Value = Mat> {
    (1..=max_rank)
        .prop_flat_map(|n| {
            prop::collection::vec(-3i64..=3, n * n)
                .prop_map(move |v| Mat::from_fn(n, n, |i, j| int(v[i * n + j])))
        })
        .prop_filter("singular", |b| !b.det().is_zero())
}

pub fn definite_lattice(max_rank: usize) -> impl Strategy<Value = IntegralLattice> {
    (basis(max_rank), any::<bool>()).prop_map(|(b, even)| {
        let g = &b * &b.transpose();
        let g = if even { g.scale(&int(2)) } else { g };
        IntegralLattice::new(g).unwrap()
    })
}

fn is_unimodular(m: &Mat) -> bool {
    m.is_integer() && m.det().abs().is_one()
}

/// All `x ≠ 0` with `xᵀGx ≤ bound`, one per ± pair with first nonzero
/// coordinate positive, from a coordinate box `|xᵢ|² ≤ bound·(G⁻¹)ᵢᵢ`.
pub fn box_oracle(l: &IntegralLattice, bound: i64) -> Vec<(Vec<i64>, i64)> {
    let g = l.gram();
    let n = g.rows();
    let inv = g.inverse().unwrap();
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let limit = &inv[(i, i)] * &int(bound);
            (0..).find(|&r: &i64| int(r * r) >= limit).unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn walk(
        i: usize,
        x: &mut Vec<i64>,
        radius: &[i64],
        g: &Mat,
        bound: i64,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if i == x.len() {
            let v: Vec<Rat> = x.iter().map(|&c| int(c)).collect();
            let norm = g.pair(&v, &v).to_integer();
            let first_positive = x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
            if first_positive && norm <= BigInt::from(bound) {
                out.push((x.clone(), i64::try_from(norm).unwrap()));
            }
            return;
        }
        for c in -radius[i]..=radius[i] {
            x[i] = c;
            walk(i + 1, x, radius, g, bound, out);
        }
    }
    walk(0, &mut x, &radius, g, bound, &mut out);
    out.sort();
    out
}

pub fn cyc() -> impl Strategy<Value = Cyc5> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 4).prop_map(|c| {
        let r: Vec<Rat> = c
            .iter()
            .map(|&(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        Cyc5::new(r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone())
    })
}

pub fn check_smith(m: &Mat) -> Result<(), TestCaseError> {
    let s = snf(m).unwrap();
    prop_assert_eq!(&(&s.u * m) * &s.v, s.d.clone());
    prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
    let d = s.diagonal();
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            prop_assert!(i == j || s.d[(i, j)].is_zero());
        }
    }
    for w in d.windows(2) {
        prop_assert!(!w[0].is_negative());
        let divides = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        };
        prop_assert!(divides);
    }
    Ok(())
}

pub fn check_hermite(m: &Mat) -> Result<(), TestCaseError> {
    let h = hnf_rowspan(m);
    prop_assert_eq!(h.rows(), m.rank());
    // adding the original rows changes nothing, and the form is canonical
    let both = hnf_rowspan(&Mat::vstack(&[&h, m]).unwrap());
    prop_assert_eq!(&both, &h);
    prop_assert_eq!(&hnf_rowspan(&h), &h);
    // each original row is an integer combination of the HNF rows
    if h.rows() > 0 {
        prop_assert!(h.solve_left(m).unwrap().is_integer());
    }
    // echelon with positive pivots and reduced entries above them
    let mut last = None;
    for i in 0..h.rows() {
        let p = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()).unwrap();
        prop_assert!(last.is_none_or(|l| p > l));
        prop_assert!(h[(i, p)].is_positive());
        for k in 0..i {
            prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
        }
        last = Some(p);
    }
    Ok(())
}

pub fn check_enumeration(l: &IntegralLattice, bound: i64) -> Result<(), TestCaseError> {
    let r = short_vectors(l, bound).unwrap();
    let got: Vec<(Vec<i64>, i64)> = r
        .vectors
        .iter()
        .map(|v| (v.coords.clone(), v.norm))
        .collect();
    prop_assert_eq!(got, box_oracle(l, bound));
    let opts = EnumOptions {
        parallel: false,
        reduce: false,
    };
    prop_assert_eq!(short_vectors_with(l, bound, opts).unwrap(), r);
    Ok(())
}

pub fn check_field_axioms(a: &Cyc5, b: &Cyc5, c: &Cyc5) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a - b) + b, a.clone());
    if !a.is_zero() {
        prop_assert_eq!(a * &a.inv().unwrap(), Cyc5::one());
        prop_assert!(a.norm().is_positive());
    }
    prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
    Ok(())
}

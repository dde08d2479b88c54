//! Isometries of integral lattices and the finite groups they generate.
//!
//! Matrices act on column coordinate vectors in the lattice basis, so an
//! integer matrix `M` is an isometry of `(Zⁿ, G)` iff `Mᵀ·G·M = G`.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{integer_kernel, Mat, Rat};
use crate::lattice::{discriminant_group, sublattice, IntegralLattice};

pub const ORDER_CAP: u64 = 1000;
pub const CLOSURE_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Isometry {
    lattice: Arc<IntegralLattice>,
    matrix: Mat,
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && same_lattice(&self.lattice, &other.lattice)
    }
}

fn same_lattice(a: &Arc<IntegralLattice>, b: &Arc<IntegralLattice>) -> bool {
    Arc::ptr_eq(a, b) || a.gram() == b.gram()
}

/// Validates `m` as an isometry of `l`.
pub fn make_isometry(l: &Arc<IntegralLattice>, m: Mat) -> Result<Isometry> {
    let n = l.rank();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "isometry matrix is {}x{}, lattice rank is {n}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_integer() {
        return Err(Error::Input(
            "isometry matrix has non-integer entries".into(),
        ));
    }
    let defect = &(&(&m.transpose() * l.gram()) * &m) - l.gram();
    if !defect.is_zero() {
        return Err(Error::NotIsometry { defect });
    }
    // Follows from the Gram identity for a nondegenerate form; kept as a guard.
    if !m.det().abs().is_one() {
        return Err(Error::Internal(
            "isometry has determinant other than ±1".into(),
        ));
    }
    Ok(Isometry {
        lattice: Arc::clone(l),
        matrix: m,
    })
}

impl Isometry {
    pub fn identity(l: &Arc<IntegralLattice>) -> Isometry {
        Isometry {
            lattice: Arc::clone(l),
            matrix: Mat::identity(l.rank()),
        }
    }

    pub fn lattice(&self) -> &Arc<IntegralLattice> {
        &self.lattice
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if !same_lattice(&self.lattice, &other.lattice) {
            return Err(Error::Input("isometries act on different lattices".into()));
        }
        Ok(Isometry {
            lattice: Arc::clone(&self.lattice),
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn inverse(&self) -> Isometry {
        let inv = self
            .matrix
            .inverse()
            .expect("isometries of a nondegenerate lattice are invertible");
        Isometry {
            lattice: Arc::clone(&self.lattice),
            matrix: inv,
        }
    }

    pub fn pow(&self, k: i64) -> Isometry {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Isometry::identity(&self.lattice);
        let mut sq = base.matrix;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out.matrix = &out.matrix * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        out
    }

    /// Least `k ≥ 1` with `Mᵏ = I`, searching up to `cap`.
    pub fn order(&self, cap: u64) -> Result<u64> {
        let mut p = self.matrix.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Ok(k);
            }
            p = &p * &self.matrix;
        }
        Err(Error::OrderCap(cap))
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.apply(v)
    }

    /// Whether `M·s = −s` for every row `s` of `rows`.
    pub fn acts_as_minus_one(&self, rows: &Mat) -> bool {
        rows.row_vecs().iter().all(|s| {
            let image = self.apply(s);
            image.iter().zip(s).all(|(a, b)| *a == -b)
        })
    }

    /// Whether the induced action on `L^∨/L` is trivial.
    pub fn disc_action_trivial(&self) -> Result<bool> {
        let disc = discriminant_group(&self.lattice)?;
        Ok(disc.generator_lifts.iter().all(|x| {
            let image = self.apply(x);
            image.iter().zip(x).all(|(a, b)| (a - b).is_integer())
        }))
    }
}

/// Finite group generated by isometries of one lattice.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    lattice: Arc<IntegralLattice>,
    /// Sorted by matrix entries; the identity is always present.
    elements: Vec<Mat>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn lattice(&self) -> &Arc<IntegralLattice> {
        &self.lattice
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.elements
            .binary_search_by(|e| e.entries().cmp(m.entries()))
            .is_ok()
    }

    pub fn isometries(&self) -> impl Iterator<Item = Isometry> + '_ {
        self.elements.iter().map(|m| Isometry {
            lattice: Arc::clone(&self.lattice),
            matrix: m.clone(),
        })
    }

    /// Every product of two elements is again an element.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&(a * b))))
    }
}

/// Breadth-first closure of `gens` under multiplication. For a finite group
/// this is the generated subgroup, since inverses are positive powers.
pub fn group_closure(gens: &[Isometry], cap: usize) -> Result<GroupClosure> {
    let Some(first) = gens.first() else {
        return Err(Error::Input(
            "group closure needs at least one generator".into(),
        ));
    };
    let lattice = Arc::clone(&first.lattice);
    if gens.iter().any(|g| !same_lattice(&g.lattice, &lattice)) {
        return Err(Error::Input("generators act on different lattices".into()));
    }
    let id = Mat::identity(lattice.rank());
    let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * &g.matrix;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureCap(cap));
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Mat> = seen.into_iter().collect();
    elements.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(GroupClosure { lattice, elements })
}

/// Fixed sublattice together with its basis rows in lattice coordinates.
#[derive(Clone, Debug)]
pub struct FixedSublattice {
    pub basis: Mat,
    pub lattice: IntegralLattice,
}

/// `L^G`: the saturated common kernel of `M − I` over the group.
pub fn invariant_sublattice(group: &GroupClosure) -> Result<FixedSublattice> {
    let n = group.lattice.rank();
    let id = Mat::identity(n);
    let blocks: Vec<Mat> = group.elements.iter().map(|m| m - &id).collect();
    let refs: Vec<&Mat> = blocks.iter().collect();
    let basis = integer_kernel(&Mat::vstack(&refs)?)?;
    let lattice = sublattice(&group.lattice, &basis)?;
    Ok(FixedSublattice { basis, lattice })
}

/// Evidence that `⟨g, h⟩` is dihedral of order `2n` with `n = order(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralCheck {
    pub rotation_order: u64,
    pub reflection_order: u64,
    /// `h·g·h⁻¹ = g⁻¹`.
    pub relation: bool,
    pub group_order: usize,
}

impl DihedralCheck {
    pub fn holds(&self) -> bool {
        self.reflection_order == 2
            && self.relation
            && self.rotation_order > 2
            && self.group_order as u64 == 2 * self.rotation_order
    }
}

pub fn dihedral_check(g: &Isometry, h: &Isometry) -> Result<DihedralCheck> {
    let rotation_order = g.order(ORDER_CAP)?;
    let reflection_order = h.order(ORDER_CAP)?;
    let conj = h.compose(g)?.compose(&h.inverse())?;
    let relation = conj == g.inverse();
    let group_order = group_closure(&[g.clone(), h.clone()], CLOSURE_CAP)?.order();
    Ok(DihedralCheck {
        rotation_order,
        reflection_order,
        relation,
        group_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn a4() -> Arc<IntegralLattice> {
        Arc::new(
            IntegralLattice::from_i64(&[
                &[2, -1, 0, 0],
                &[-1, 2, -1, 0],
                &[0, -1, 2, -1],
                &[0, 0, -1, 2],
            ])
            .unwrap(),
        )
    }

    /// αᵢ ↦ αᵢ₊₁, α₄ ↦ −(α₁+α₂+α₃+α₄); columns are images.
    fn gamma() -> Mat {
        Mat::from_i64(&[
            &[0, 0, 0, -1],
            &[1, 0, 0, -1],
            &[0, 1, 0, -1],
            &[0, 0, 1, -1],
        ])
    }

    #[test]
    fn identity_and_gamma() {
        let l = a4();
        let id = make_isometry(&l, Mat::identity(4)).unwrap();
        assert_eq!(id.order(ORDER_CAP).unwrap(), 1);
        assert!(id.disc_action_trivial().unwrap());
        let g = make_isometry(&l, gamma()).unwrap();
        assert_eq!(g.order(ORDER_CAP).unwrap(), 5);
        assert_eq!(g.pow(5), id);
        assert_eq!(g.pow(-1).compose(&g).unwrap(), id);
        assert_eq!(g.pow(-2), g.pow(3));
        let l2 = Arc::new(l.rescale(-2).unwrap());
        let g2 = make_isometry(&l2, gamma()).unwrap();
        assert_eq!(g2.order(ORDER_CAP).unwrap(), 5);
    }

    #[test]
    fn rejection_reports_defect() {
        let l = a4();
        let swap = Mat::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        match make_isometry(&l, swap) {
            Err(Error::NotIsometry { defect }) => {
                assert!(!defect.is_zero());
                assert!(defect.is_symmetric());
            }
            other => panic!("expected NotIsometry, got {other:?}"),
        }
        assert!(matches!(
            make_isometry(&l, Mat::identity(3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn hyperbolic_swap_is_involution() {
        let u = Arc::new(IntegralLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap());
        let s = make_isometry(&u, Mat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(s.order(ORDER_CAP).unwrap(), 2);
    }

    #[test]
    fn minus_one_on_a4_moves_discriminant() {
        let l = a4();
        let m = make_isometry(&l, Mat::identity(4).scale(&int(-1))).unwrap();
        assert!(!m.disc_action_trivial().unwrap());
        assert!(m.acts_as_minus_one(&Mat::identity(4)));
        let g = make_isometry(&l, gamma()).unwrap();
        // γ acts trivially on disc(A₄) ≅ Z/5.
        assert!(g.disc_action_trivial().unwrap());
        assert!(!g.acts_as_minus_one(&Mat::from_i64(&[&[1, 0, 0, 0]])));
    }

    #[test]
    fn order_cap_is_loud() {
        let u = Arc::new(IntegralLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap());
        let s = make_isometry(&u, Mat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(matches!(s.order(1), Err(Error::OrderCap(1))));
        // Eichler transvection x ↦ x + (x·e₁)e₂ − (x·e₂)e₁ on U ⊕ U has infinite order.
        let uu = Arc::new(
            IntegralLattice::from_i64(&[
                &[0, 1, 0, 0],
                &[1, 0, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
            ])
            .unwrap(),
        );
        let t = Mat::from_i64(&[&[1, 0, 0, -1], &[0, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]]);
        let t = make_isometry(&uu, t).unwrap();
        assert!(matches!(t.order(50), Err(Error::OrderCap(50))));
        assert!(matches!(
            group_closure(&[t], 100),
            Err(Error::ClosureCap(100))
        ));
    }

    #[test]
    fn closure_of_weyl_like_group() {
        let l = a4();
        let g = make_isometry(&l, gamma()).unwrap();
        let c = group_closure(std::slice::from_ref(&g), CLOSURE_CAP).unwrap();
        assert_eq!(c.order(), 5);
        assert!(c.is_closed());
        assert!(c.contains(&Mat::identity(4)));
        let fixed = invariant_sublattice(&c).unwrap();
        assert_eq!(fixed.lattice.rank(), 0);
        let triv = group_closure(&[Isometry::identity(&l)], CLOSURE_CAP).unwrap();
        assert_eq!(triv.order(), 1);
        assert_eq!(invariant_sublattice(&triv).unwrap().lattice.rank(), 4);
        // −I and γ generate a cyclic group of order 10, not dihedral.
        let m = make_isometry(&l, Mat::identity(4).scale(&int(-1))).unwrap();
        let d = dihedral_check(&g, &m).unwrap();
        assert_eq!(d.group_order, 10);
        assert!(!d.relation);
        assert!(!d.holds());
    }

    #[test]
    fn dihedral_symmetry_of_a4_diagram() {
        // The diagram flip αᵢ ↦ α₅₋ᵢ composed with −1 inverts γ.
        let l = a4();
        let g = make_isometry(&l, gamma()).unwrap();
        let flip = Mat::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        let f = make_isometry(&l, flip).unwrap();
        let candidates: Vec<Isometry> = (0..5)
            .flat_map(|k| {
                let gk = g.pow(k);
                [f.compose(&gk).unwrap(), f.compose(&gk).unwrap().pow(-1)]
            })
            .collect();
        let h = candidates
            .into_iter()
            .find(|h| {
                h.order(ORDER_CAP).unwrap() == 2
                    && h.compose(&g).unwrap().compose(h).unwrap() == g.inverse()
            })
            .expect("some reflection inverts γ");
        let d = dihedral_check(&g, &h).unwrap();
        assert!(d.holds(), "{d:?}");
        let c = group_closure(&[g, h], CLOSURE_CAP).unwrap();
        assert_eq!(c.order(), 10);
        assert!(c.is_closed());
    }
}

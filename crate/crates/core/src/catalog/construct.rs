use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Mat, Rat};
use crate::isometry::{make_isometry, Isometry};
use crate::lattice::{
    direct_sum, orthogonal_complement, overlattice, GlueVector, IntegralLattice, Overlattice,
};

use super::Fault;

/// Root-lattice families with their standard Gram matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StdFamily {
    A(usize),
    E8,
    U,
    A1,
}

impl FromStr for StdFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E8" => Ok(StdFamily::E8),
            "U" => Ok(StdFamily::U),
            "A1" => Ok(StdFamily::A1),
            _ => s
                .strip_prefix('A')
                .and_then(|n| n.parse().ok())
                .map(StdFamily::A)
                .ok_or_else(|| Error::Input(format!("unknown lattice family {s:?}"))),
        }
    }
}

impl fmt::Display for StdFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StdFamily::A(n) => write!(f, "A{n}"),
            StdFamily::E8 => f.write_str("E8"),
            StdFamily::U => f.write_str("U"),
            StdFamily::A1 => f.write_str("A1"),
        }
    }
}

/// Cartan-convention Gram matrix (2 on the diagonal, −1 on edges) scaled by `scale`.
pub fn std_gram(family: StdFamily, scale: i64) -> Result<IntegralLattice> {
    if scale == 0 {
        return Err(Error::Input("scale must be nonzero".into()));
    }
    let cartan = |n: usize, edges: &[(usize, usize)]| {
        let mut g = Mat::from_fn(n, n, |i, j| if i == j { int(2) } else { int(0) });
        for &(i, j) in edges {
            g[(i, j)] = int(-1);
            g[(j, i)] = int(-1);
        }
        g
    };
    let g = match family {
        StdFamily::A(0) => return Err(Error::Input("A_n needs n >= 1".into())),
        StdFamily::A(n) => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            cartan(n, &edges)
        }
        StdFamily::A1 => cartan(1, &[]),
        // Bourbaki labelling: chain 1-3-4-5-6-7-8 with 2 attached to 4.
        StdFamily::E8 => cartan(8, &[(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]),
        StdFamily::U => Mat::from_i64(&[&[0, 1], &[1, 0]]),
    };
    IntegralLattice::new(g.scale(&int(scale)))
}

/// A lattice with named vectors (lattice coordinates) and isometries.
#[derive(Clone, Debug)]
pub struct NamedConstruction {
    pub name: String,
    pub lattice: Arc<IntegralLattice>,
    pub vectors: BTreeMap<String, Vec<Rat>>,
    pub isometries: BTreeMap<String, Isometry>,
}

impl NamedConstruction {
    /// Every named vector has integer coordinates.
    pub fn vectors_in_lattice(&self) -> bool {
        self.vectors
            .values()
            .all(|v| v.iter().all(|x| x.is_integer()))
    }
}

/// `γ` on `A₄`: `αᵢ ↦ αᵢ₊₁`, `α₄ ↦ α₅ = −(α₁+α₂+α₃+α₄)`. Columns are images.
pub fn gamma_matrix() -> Mat {
    Mat::from_i64(&[
        &[0, 0, 0, -1],
        &[1, 0, 0, -1],
        &[0, 1, 0, -1],
        &[0, 0, 1, -1],
    ])
}

/// The involution on one copy: `a₁ ↦ −a₁`, `a₂ ↦ −a₅`, `a₃ ↦ −a₄`, `a₄ ↦ −a₃`.
pub fn h_block() -> Mat {
    Mat::from_i64(&[
        &[-1, 1, 0, 0],
        &[0, 1, 0, 0],
        &[0, 1, 0, -1],
        &[0, 1, -1, 0],
    ])
}

/// `L` together with everything needed to check claims about it.
///
/// Base coordinates are copy-major: index `4(j−1) + (i−1)` holds `a_{j,i}`.
#[derive(Clone, Debug)]
pub struct LConstruction {
    /// `A₄(−2)⊕⁴`.
    pub base: IntegralLattice,
    pub overlattice: Overlattice,
    pub lattice: Arc<IntegralLattice>,
    /// `g = (γ,γ,γ,γ)` and `h` (explicit action) in base coordinates.
    pub g_base: Mat,
    pub h_base: Mat,
    pub g: Isometry,
    /// `h` from the explicit action on `A₄(−2)⊕⁴`, conjugated into `L`.
    pub h: Isometry,
    /// `h` defined as `−1` on `⟨e₁..e₈⟩` and `+1` on its complement.
    pub h_reflection: Mat,
    pub mu: Vec<Rat>,
    pub nu: Vec<Rat>,
    /// `gⁱμ` then `gⁱν`, `i = 0..3`, base coordinates.
    pub glue: Vec<Vec<Rat>>,
    /// Rows `e₁..e₈` and `f₉..f₁₆` in base coordinates.
    pub e_base: Mat,
    pub f_base: Mat,
    /// The same rows in `L` coordinates.
    pub e: Mat,
    pub f: Mat,
    b_inv: Mat,
}

fn half(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x, 2)).collect()
}

fn unit(n: usize, idxs: &[usize]) -> Vec<Rat> {
    let mut v = vec![int(0); n];
    for &i in idxs {
        v[i] = int(1);
    }
    v
}

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn build_l() -> Result<LConstruction> {
    build_l_with(None)
}

pub fn build_l_with(fault: Option<Fault>) -> Result<LConstruction> {
    let a4m2 = std_gram(StdFamily::A(4), -2)?;
    let base = direct_sum(&[a4m2.clone(), a4m2.clone(), a4m2.clone(), a4m2]);
    let n = base.rank();

    let gamma = gamma_matrix();
    let g_base = Mat::block_diag(&[&gamma, &gamma, &gamma, &gamma]);
    let mut hb = h_block();
    if fault == Some(Fault::HAction) {
        // a₃ ↦ −a₃ instead of −a₄.
        hb = Mat::from_i64(&[
            &[-1, 1, 0, 0],
            &[0, 1, 0, 0],
            &[0, 1, -1, 0],
            &[0, 1, 0, -1],
        ]);
    }
    let h_base = Mat::block_diag(&[&hb, &hb, &hb, &hb]);

    let mu = half(&[1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]);
    let mut nu = half(&[0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 1]);
    if fault == Some(Fault::NuCoord) {
        nu[0] += rat(1, 2);
    }

    let orbit = |v: &[Rat]| {
        let mut out = vec![v.to_vec()];
        for _ in 1..4 {
            let next = g_base.apply(out.last().expect("nonempty orbit"));
            out.push(next);
        }
        out
    };
    let mu_orbit = orbit(&mu);
    let nu_orbit = orbit(&nu);
    let glue: Vec<Vec<Rat>> = mu_orbit.iter().chain(&nu_orbit).cloned().collect();
    let glue_vectors: Vec<GlueVector> = glue.iter().cloned().map(GlueVector).collect();
    let over = overlattice(&base, &glue_vectors)?;
    let lattice = Arc::new(over.lattice.clone());

    // Column action M on base coordinates becomes (Bᵀ)⁻¹·M·Bᵀ on L coordinates.
    let bt = over.basis.transpose();
    let bt_inv = bt.inverse()?;
    let b_inv = over.basis.inverse()?;
    let conj = |m: &Mat, name: &str| -> Result<Mat> {
        let c = &(&bt_inv * m) * &bt;
        if !c.is_integer() {
            return Err(Error::Lattice(format!("{name} does not preserve L")));
        }
        Ok(c)
    };
    let g = make_isometry(&lattice, conj(&g_base, "g")?)?;
    let h = make_isometry(&lattice, conj(&h_base, "h")?)?;

    let (m0, m2, m3) = (&mu_orbit[0], &mu_orbit[2], &mu_orbit[3]);
    let (n0, n2, n3) = (&nu_orbit[0], &nu_orbit[2], &nu_orbit[3]);
    let e_rows = vec![
        m0.clone(),
        add(m2, m3),
        n0.clone(),
        sub(&sub(&add(&add(m0, m2), m3), n2), n3),
        unit(n, &[0]),
        unit(n, &[2, 3]),
        unit(n, &[4]),
        unit(n, &[6, 7]),
    ];
    let e_base = Mat::from_rows_with_width(e_rows, n)?;
    let f_base = (&g_base * &e_base.transpose()).transpose();
    let e = &e_base * &b_inv;
    let f = &f_base * &b_inv;
    if !e.is_integer() || !f.is_integer() {
        return Err(Error::Lattice("e or f vectors do not lie in L".into()));
    }

    let comp = orthogonal_complement(&lattice, &e)?;
    let p = Mat::vstack(&[&e, &comp.basis])?;
    let signs: Vec<Rat> = (0..n)
        .map(|i| if i < e.rows() { int(-1) } else { int(1) })
        .collect();
    let pt = p.transpose();
    let h_reflection = &(&pt * &Mat::diagonal(&signs)) * &pt.inverse()?;

    Ok(LConstruction {
        base,
        overlattice: over,
        lattice,
        g_base,
        h_base,
        g,
        h,
        h_reflection,
        mu,
        nu,
        glue,
        e_base,
        f_base,
        e,
        f,
        b_inv,
    })
}

impl LConstruction {
    /// Coordinates in the `L` basis of a vector given in base coordinates.
    pub fn to_l(&self, v: &[Rat]) -> Vec<Rat> {
        self.b_inv.left_mul(v)
    }

    pub fn named(&self) -> NamedConstruction {
        let mut vectors = BTreeMap::new();
        vectors.insert("mu".to_string(), self.to_l(&self.mu));
        vectors.insert("nu".to_string(), self.to_l(&self.nu));
        for (i, v) in self.glue.iter().enumerate() {
            let name = if i < 4 { "mu" } else { "nu" };
            vectors.insert(format!("g^{}({name})", i % 4), self.to_l(v));
        }
        for i in 0..8 {
            vectors.insert(format!("e{}", i + 1), self.e.row(i).to_vec());
            vectors.insert(format!("f{}", i + 9), self.f.row(i).to_vec());
        }
        let mut isometries = BTreeMap::new();
        isometries.insert("g".to_string(), self.g.clone());
        isometries.insert("h".to_string(), self.h.clone());
        NamedConstruction {
            name: "L".into(),
            lattice: Arc::clone(&self.lattice),
            vectors,
            isometries,
        }
    }
}

/// Nikulin lattice: `A₁(−1)⊕⁸` glued by `½ Σ aᵢ`.
pub fn build_nikulin() -> Result<(NamedConstruction, Overlattice)> {
    let a1m = std_gram(StdFamily::A1, -1)?;
    let base = direct_sum(&vec![a1m; 8]);
    let glue = vec![rat(1, 2); 8];
    let over = overlattice(&base, &[GlueVector(glue.clone())])?;
    let lattice = Arc::new(over.lattice.clone());
    let coords = over.basis.inverse()?.left_mul(&glue);
    let named = NamedConstruction {
        name: "Nikulin".into(),
        lattice,
        vectors: BTreeMap::from([("half-sum".to_string(), coords)]),
        isometries: BTreeMap::new(),
    };
    Ok((named, over))
}

/// `M_{D₅} = A₄(−1)⊕² ⊕ N` with `N` the Nikulin lattice.
pub fn build_md5() -> Result<NamedConstruction> {
    let a4m = std_gram(StdFamily::A(4), -1)?;
    let (nik, _) = build_nikulin()?;
    let lattice = direct_sum(&[a4m.clone(), a4m, (*nik.lattice).clone()]);
    Ok(NamedConstruction {
        name: "M_D5".into(),
        lattice: Arc::new(lattice),
        vectors: BTreeMap::new(),
        isometries: BTreeMap::new(),
    })
}

pub fn u2_cubed() -> Result<IntegralLattice> {
    let u2 = std_gram(StdFamily::U, 2)?;
    Ok(direct_sum(&[u2.clone(), u2.clone(), u2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn standard_grams() {
        let a = std_gram(StdFamily::A(4), -2).unwrap();
        assert_eq!(*a.det(), BigInt::from(80));
        assert_eq!(a.gram()[(0, 0)], int(-4));
        assert_eq!(a.gram()[(0, 1)], int(2));
        let e = std_gram(StdFamily::E8, -1).unwrap();
        assert_eq!(*e.det(), BigInt::from(1));
        assert!(e.is_even());
        assert_eq!(e.signature(), (0, 8));
        assert_eq!(
            std_gram(StdFamily::U, 1).unwrap().gram(),
            &Mat::from_i64(&[&[0, 1], &[1, 0]])
        );
        assert!(std_gram(StdFamily::A(0), 1).is_err());
        assert!(std_gram(StdFamily::E8, 0).is_err());
        assert_eq!("A4".parse::<StdFamily>().unwrap(), StdFamily::A(4));
        assert!("B3".parse::<StdFamily>().is_err());
    }

    #[test]
    fn explicit_blocks_are_isometries_of_a4() {
        let a = Arc::new(std_gram(StdFamily::A(4), -2).unwrap());
        let g = make_isometry(&a, gamma_matrix()).unwrap();
        assert_eq!(g.order(100).unwrap(), 5);
        let h = make_isometry(&a, h_block()).unwrap();
        assert_eq!(h.order(100).unwrap(), 2);
    }

    #[test]
    fn l_basics() {
        let c = build_l().unwrap();
        assert_eq!(c.overlattice.index, BigInt::from(256));
        assert_eq!(c.lattice.rank(), 16);
        assert!(c.lattice.is_even());
        assert_eq!(c.base.norm(&c.mu), int(-4));
        assert_eq!(c.base.norm(&c.nu), int(-4));
        assert!(c.named().vectors_in_lattice());
        assert_eq!(*c.h.matrix(), c.h_reflection);
    }

    #[test]
    fn nu_fault_breaks_evenness() {
        let e = build_l_with(Some(Fault::NuCoord)).unwrap_err();
        assert!(
            matches!(e, Error::GluePair { .. } | Error::GlueEvenness { .. }),
            "{e}"
        );
        assert!(build_l_with(Some(Fault::HAction)).is_err());
    }

    #[test]
    fn nikulin_and_md5() {
        let (n, over) = build_nikulin().unwrap();
        assert_eq!(over.index, BigInt::from(2));
        assert!(n.vectors_in_lattice());
        let m = build_md5().unwrap();
        assert_eq!(m.lattice.rank(), 16);
        assert_eq!(u2_cubed().unwrap().signature(), (3, 3));
    }
}

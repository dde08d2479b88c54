//! The four built-in families and their claims.

use super::fixed::{count_fixed_points, double_cover_fixed_points, FixedPointReport};
use super::poly::Polynomial;
use super::projective::{commutant_dim, dihedral_in_pgl, moduli_count, swap_check, ProjectiveMap};
use super::{is_invariant_family, MonomialFamily};
use crate::error::{Error, Result};
use crate::exact::Cyc5;

/// Built-in family names.
pub const FAMILIES: &[&str] = &["p3", "p4", "p5", "sextic"];

/// Sample coefficients, one vector per equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub coeffs: Vec<Vec<Cyc5>>,
}

impl Sample {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Sample {
            coeffs: rows
                .iter()
                .map(|r| r.iter().map(|&c| Cyc5::from_int(c)).collect())
                .collect(),
        }
    }

    /// All coefficients equal to 1.
    pub fn ones(equations: &[MonomialFamily]) -> Self {
        Sample {
            coeffs: equations
                .iter()
                .map(|e| vec![Cyc5::from_int(1); e.monomials.len()])
                .collect(),
        }
    }
}

/// A family of complete intersections (or a double plane) with its order-5
/// action `sigma` and involution `iota`.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub name: String,
    pub equations: Vec<MonomialFamily>,
    pub sigma: ProjectiveMap,
    pub iota: ProjectiveMap,
    /// `u² = f(x)` over `P²` with `u` of weight 3; `iota` is then the map `α`
    /// on the base, composed with the covering involution.
    pub double_cover: bool,
    /// Parameters lost beyond the commutant, supplied per family.
    pub redundancy: usize,
    pub sample: Sample,
}

fn exps(rows: &[&[u32]]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

impl FamilySpec {
    pub fn builtin(name: &str) -> Result<FamilySpec> {
        let spec = match name {
            "p3" => {
                let w = vec![0, 3, 1, 2];
                let quartic = MonomialFamily::new(
                    w.clone(),
                    exps(&[
                        &[3, 0, 1, 0],
                        &[2, 2, 0, 0],
                        &[1, 0, 0, 3],
                        &[1, 1, 1, 1],
                        &[0, 3, 0, 1],
                        &[0, 1, 3, 0],
                        &[0, 0, 2, 2],
                    ]),
                )?
                .with_symmetry(vec![(0, 4), (2, 5)]);
                FamilySpec {
                    name: "p3".into(),
                    equations: vec![quartic],
                    sigma: ProjectiveMap::diagonal_weights(&w),
                    iota: ProjectiveMap::signed_permutation(&[1, 0, 3, 2], &[1; 4]),
                    double_cover: false,
                    redundancy: 0,
                    sample: Sample::from_ints(&[&[1, 2, 3, 5, 1, 3, 7]]),
                }
            }
            "p4" => {
                let w = vec![0, 1, 2, 3, 4];
                let quadric = MonomialFamily::new(
                    w.clone(),
                    exps(&[&[2, 0, 0, 0, 0], &[0, 1, 0, 0, 1], &[0, 0, 1, 1, 0]]),
                )?;
                let cubic = MonomialFamily::new(
                    w.clone(),
                    exps(&[
                        &[3, 0, 0, 0, 0],
                        &[1, 1, 0, 0, 1],
                        &[1, 0, 1, 1, 0],
                        &[0, 2, 0, 1, 0],
                        &[0, 0, 1, 0, 2],
                        &[0, 1, 2, 0, 0],
                        &[0, 0, 0, 2, 1],
                    ]),
                )?
                .with_symmetry(vec![(3, 4), (5, 6)]);
                FamilySpec {
                    name: "p4".into(),
                    equations: vec![quadric, cubic],
                    sigma: ProjectiveMap::diagonal_weights(&w),
                    iota: ProjectiveMap::signed_permutation(&[0, 4, 3, 2, 1], &[1; 5]),
                    double_cover: false,
                    redundancy: 1,
                    sample: Sample::from_ints(&[&[1, 2, 3], &[1, 2, 3, 5, 5, 7, 7]]),
                }
            }
            "p5" => {
                let w = vec![0, 0, 1, 2, 3, 4];
                let q1 = MonomialFamily::new(
                    w.clone(),
                    exps(&[
                        &[2, 0, 0, 0, 0, 0],
                        &[1, 1, 0, 0, 0, 0],
                        &[0, 2, 0, 0, 0, 0],
                        &[0, 0, 1, 0, 0, 1],
                        &[0, 0, 0, 1, 1, 0],
                    ]),
                )?;
                let q2 = MonomialFamily::new(
                    w.clone(),
                    exps(&[
                        &[1, 0, 1, 0, 0, 0],
                        &[0, 1, 1, 0, 0, 0],
                        &[0, 0, 0, 1, 0, 1],
                        &[0, 0, 0, 0, 2, 0],
                    ]),
                )?;
                let q3 = MonomialFamily::new(
                    w.clone(),
                    exps(&[
                        &[1, 0, 0, 0, 0, 1],
                        &[0, 1, 0, 0, 0, 1],
                        &[0, 0, 1, 0, 1, 0],
                        &[0, 0, 0, 2, 0, 0],
                    ]),
                )?;
                FamilySpec {
                    name: "p5".into(),
                    equations: vec![q1, q2, q3],
                    sigma: ProjectiveMap::diagonal_weights(&w),
                    iota: ProjectiveMap::signed_permutation(&[0, 1, 5, 4, 3, 2], &[1; 6]),
                    double_cover: false,
                    redundancy: 0,
                    sample: Sample::from_ints(&[&[1, 2, 3, 5, 7], &[1, 2, 3, 5], &[1, 2, 3, 5]]),
                }
            }
            "sextic" => {
                let w = vec![0, 1, 4];
                let sextic = MonomialFamily::new(
                    w.clone(),
                    exps(&[
                        &[6, 0, 0],
                        &[1, 5, 0],
                        &[1, 0, 5],
                        &[4, 1, 1],
                        &[2, 2, 2],
                        &[0, 3, 3],
                    ]),
                )?
                .with_symmetry(vec![(1, 2)]);
                FamilySpec {
                    name: "sextic".into(),
                    equations: vec![sextic],
                    sigma: ProjectiveMap::diagonal_weights(&w),
                    iota: ProjectiveMap::signed_permutation(&[0, 2, 1], &[1; 3]),
                    double_cover: true,
                    redundancy: 0,
                    sample: Sample::from_ints(&[&[1, 2, 2, 3, 5, 7]]),
                }
            }
            _ => {
                return Err(Error::Input(format!(
                    "unknown family {name:?} (expected one of {})",
                    FAMILIES.join(", ")
                )))
            }
        };
        Ok(spec)
    }

    pub fn polynomials(&self) -> Result<Vec<Polynomial>> {
        if self.sample.coeffs.len() != self.equations.len() {
            return Err(Error::Dimension(format!(
                "{} coefficient rows for {} equations",
                self.sample.coeffs.len(),
                self.equations.len()
            )));
        }
        self.equations
            .iter()
            .zip(&self.sample.coeffs)
            .map(|(e, c)| e.polynomial(c))
            .collect()
    }

    /// Common σ-weight of each equation, `None` for a non-invariant one.
    pub fn weights(&self) -> Vec<Option<u32>> {
        self.equations
            .iter()
            .map(|e| match is_invariant_family(e) {
                (true, w) => w,
                (false, _) => None,
            })
            .collect()
    }

    pub fn is_invariant(&self) -> bool {
        self.weights().iter().all(Option::is_some)
    }

    pub fn dihedral(&self) -> bool {
        dihedral_in_pgl(&self.sigma, &self.iota)
    }

    /// `ι` permutes the equations up to scalars, so it preserves `V(system)`.
    pub fn preserved(&self) -> Result<bool> {
        let polys = self.polynomials()?;
        Ok(polys
            .iter()
            .all(|p| polys.iter().any(|q| swap_check(&self.iota, p, q))))
    }

    /// Lift of `(σ, α)` to `(u, x₀, x₁, x₂)`: `σ₅ = diag(1, ω^w)` and
    /// `ι = α` on `x` with `u ↦ −u`.
    pub fn weighted_lift(&self) -> Option<(ProjectiveMap, ProjectiveMap)> {
        if !self.double_cover {
            return None;
        }
        let n = self.sigma.dim();
        let mut w = vec![0];
        let mut m = vec![vec![Cyc5::from_int(0); n + 1]; n + 1];
        m[0][0] = Cyc5::from_int(-1);
        for i in 0..n {
            let d = &self.sigma.matrix()[i][i];
            w.push((0..5).find(|&k| *d == Cyc5::omega_pow(k))?);
            for j in 0..n {
                m[i + 1][j + 1] = self.iota.matrix()[i][j].clone();
            }
        }
        let iota = ProjectiveMap::new(m).ok()?;
        Some((ProjectiveMap::diagonal_weights(&w), iota))
    }

    /// `ι∘σ₅ = σ₅⁻¹∘ι` as matrices, no scalar allowed.
    pub fn lift_relation(&self) -> Option<bool> {
        let (s, i) = self.weighted_lift()?;
        Some(i.compose(&s) == s.inverse().compose(&i))
    }

    pub fn fixed_points(&self) -> Result<FixedPointReport> {
        let polys = self.polynomials()?;
        if self.double_cover {
            let [f] = polys.as_slice() else {
                return Err(Error::Input(
                    "a double cover has one branch equation".into(),
                ));
            };
            double_cover_fixed_points(f, &self.iota)
        } else {
            count_fixed_points(&polys, &self.iota)
        }
    }

    pub fn commutant(&self) -> usize {
        commutant_dim(&self.sigma)
    }

    pub fn moduli(&self) -> i64 {
        let params: Vec<usize> = self.equations.iter().map(|e| e.monomials.len()).collect();
        moduli_count(&params, self.commutant(), self.redundancy)
    }
}

/// A family statement with its expected value, evaluated on demand.
pub struct FamilyClaim {
    pub id: String,
    pub locator: String,
    pub expected: String,
    compute: Box<dyn Fn() -> Result<String> + Send + Sync>,
}

impl FamilyClaim {
    fn new(
        id: &str,
        locator: &str,
        expected: &str,
        compute: impl Fn() -> Result<String> + Send + Sync + 'static,
    ) -> Self {
        FamilyClaim {
            id: id.into(),
            locator: locator.into(),
            expected: expected.into(),
            compute: Box::new(compute),
        }
    }

    pub fn compute(&self) -> Result<String> {
        (self.compute)()
    }
}

fn weights_string(f: &FamilySpec) -> String {
    let parts: Vec<String> = f
        .weights()
        .iter()
        .map(|w| w.map_or("none".into(), |w| w.to_string()))
        .collect();
    parts.join(" ")
}

fn with_family(name: &'static str, f: impl Fn(&FamilySpec) -> Result<String>) -> Result<String> {
    f(&FamilySpec::builtin(name)?)
}

/// Every family claim, in report order.
pub fn claims() -> Vec<FamilyClaim> {
    let locator = |name: &str| match name {
        "p3" => "quartic in P3, sigma weights (0,3,1,2), iota (01)(23)",
        "p4" => "quadric and cubic in P4, sigma weights (0,1,2,3,4), iota (14)(23)",
        "p5" => "three quadrics in P5, sigma weights (0,0,1,2,3,4), iota (25)(34)",
        _ => "double plane branched on a sextic, sigma weights (0,1,4), alpha (12)",
    };
    let mut out = Vec::new();
    let invariant = [("p3", "1"), ("p4", "0 0"), ("p5", "0 1 4"), ("sextic", "0")];
    for (name, expected) in invariant {
        out.push(FamilyClaim::new(
            &format!("families.{name}.invariant"),
            locator(name),
            expected,
            move || with_family(name, |f| Ok(weights_string(f))),
        ));
    }
    for name in FAMILIES.iter().copied() {
        out.push(FamilyClaim::new(
            &format!("families.{name}.dihedral"),
            locator(name),
            "true",
            move || with_family(name, |f| Ok(f.dihedral().to_string())),
        ));
    }
    out.push(FamilyClaim::new(
        "families.sextic.lift",
        "sigma5 and iota on (u, x0, x1, x2), u of weight 3",
        "true",
        || {
            with_family("sextic", |f| {
                Ok(f.lift_relation().is_some_and(|b| b).to_string())
            })
        },
    ));
    for name in FAMILIES.iter().copied() {
        out.push(FamilyClaim::new(
            &format!("families.{name}.preserved"),
            locator(name),
            "true",
            move || with_family(name, |f| Ok(f.preserved()?.to_string())),
        ));
    }
    out.push(FamilyClaim::new(
        "families.p5.swap",
        "Q1, Q2, Q3 under iota on P5",
        "Q1->Q1 Q2->Q3 Q3->Q2",
        || {
            with_family("p5", |f| {
                let q = f.polynomials()?;
                let mut parts = Vec::new();
                for (i, p) in q.iter().enumerate() {
                    let targets: Vec<String> = q
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| swap_check(&f.iota, p, t))
                        .map(|(j, _)| format!("Q{}", j + 1))
                        .collect();
                    parts.push(format!("Q{}->{}", i + 1, targets.join(",")));
                }
                Ok(parts.join(" "))
            })
        },
    ));
    // P5 is left out: its fixed locus contains a curve (see tests below).
    let fixed = [("p3", "4+4=8"), ("p4", "6+2=8"), ("sextic", "6+2=8")];
    for (name, expected) in fixed {
        out.push(FamilyClaim::new(
            &format!("families.{name}.fixed_points"),
            locator(name),
            expected,
            move || with_family(name, |f| Ok(f.fixed_points()?.summary())),
        ));
    }
    let commutant = [("p3", "4"), ("p4", "5"), ("p5", "8"), ("sextic", "3")];
    for (name, expected) in commutant {
        out.push(FamilyClaim::new(
            &format!("families.{name}.commutant"),
            "centraliser of sigma in GL",
            expected,
            move || with_family(name, |f| Ok(f.commutant().to_string())),
        ));
    }
    for name in FAMILIES.iter().copied() {
        out.push(FamilyClaim::new(
            &format!("families.{name}.moduli"),
            locator(name),
            "3",
            move || with_family(name, |f| Ok(f.moduli().to_string())),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixed::LocusCount;
    use super::*;

    #[test]
    fn all_claims_hold() {
        for c in claims() {
            let got = c.compute().unwrap();
            assert_eq!(got, c.expected, "{}", c.id);
        }
    }

    #[test]
    fn samples_respect_symmetry() {
        for name in FAMILIES {
            let f = FamilySpec::builtin(name).unwrap();
            for (e, c) in f.equations.iter().zip(&f.sample.coeffs) {
                assert!(e.respects_symmetry(c), "{name}");
            }
        }
        assert!(FamilySpec::builtin("p7").is_err());
    }

    #[test]
    fn eigenspace_dimensions_sum() {
        for name in FAMILIES {
            let f = FamilySpec::builtin(name).unwrap();
            let total: usize = f.fixed_points().unwrap().spaces.iter().map(|s| s.0).sum();
            assert_eq!(total, f.iota.dim(), "{name}");
        }
    }

    #[test]
    fn p5_fixed_locus_is_a_curve() {
        // ι swaps Q2 and Q3, so they agree on the +1 eigenspace and only
        // Q1, Q2 cut it: a curve in P3, not eight points.
        let f = FamilySpec::builtin("p5").unwrap();
        let r = f.fixed_points().unwrap();
        assert_eq!(r.total(), None);
        let (dim, _, count) = &r.spaces[0];
        assert_eq!(*dim, 4);
        assert!(matches!(count, LocusCount::PositiveDimensional(_)));
    }

    #[test]
    fn degenerate_sample_is_flagged() {
        let mut f = FamilySpec::builtin("p3").unwrap();
        f.sample = Sample {
            coeffs: vec![vec![Cyc5::from_int(0); 7]],
        };
        let r = f.fixed_points().unwrap();
        assert!(r
            .spaces
            .iter()
            .all(|s| matches!(s.2, LocusCount::PositiveDimensional(_))));
    }

    #[test]
    fn ones_sample_still_gives_eight() {
        let mut f = FamilySpec::builtin("p3").unwrap();
        f.sample = Sample::ones(&f.equations);
        assert_eq!(f.fixed_points().unwrap().total(), Some(8));
    }
}

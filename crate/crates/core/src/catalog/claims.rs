use std::fmt::Display;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use super::construct::{build_l_with, build_md5, build_nikulin, u2_cubed, LConstruction};
use crate::error::{Error, Result};
use crate::exact::{rat, snf, Mat};
use crate::isometry::{
    dihedral_check, group_closure, invariant_sublattice, CLOSURE_CAP, ORDER_CAP,
};
use crate::k3fam;
use crate::lattice::{discriminant_group, fqf_isomorphic, sublattice, IntegralLattice};
use crate::shortvec::{minimum, short_vectors};

/// Outcome of one certified statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub tag: String,
    pub locator: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub millis: u64,
}

/// Deliberate corruptions used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds ½ to the first coordinate of ν, making its norm odd.
    NuCoord,
    /// Replaces `a₃ ↦ −a₄` by `a₃ ↦ −a₃` in the explicit involution.
    HAction,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu-coord" => Ok(Fault::NuCoord),
            "h-action" => Ok(Fault::HAction),
            _ => Err(Error::Input(format!(
                "unknown fault {s:?} (expected nu-coord or h-action)"
            ))),
        }
    }
}

/// Claim tags in report order.
pub const TAGS: &[&str] = &[
    "lattice", "g", "e8", "h", "dih10", "nikulin", "md5", "families",
];

fn run(
    id: &str,
    tag: &str,
    locator: &str,
    expected: impl Display,
    f: impl FnOnce() -> Result<String>,
) -> ClaimResult {
    let start = Instant::now();
    let computed = f().unwrap_or_else(|e| format!("error: {e}"));
    let expected = expected.to_string();
    ClaimResult {
        id: id.into(),
        tag: tag.into(),
        locator: locator.into(),
        pass: computed == expected,
        computed,
        expected,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn with_l<'a>(l: &'a Result<LConstruction>) -> impl Fn() -> Result<&'a LConstruction> + 'a {
    move || {
        l.as_ref()
            .map_err(|e| Error::Lattice(format!("construction of L failed: {e}")))
    }
}

/// Half-Gram summary for a rank-8 sublattice spanned by `rows` of `l`.
fn half_gram_summary(l: &IntegralLattice, rows: &Mat) -> Result<String> {
    let sub = sublattice(l, rows)?;
    let half = sub.gram().scale(&rat(1, 2));
    if !half.is_integer() {
        return Ok("half-Gram not integral".into());
    }
    let h = IntegralLattice::new(half)?;
    Ok(format!(
        "even={} det={} signature=({}, {})",
        h.is_even(),
        h.det(),
        h.signature().0,
        h.signature().1
    ))
}

const HALF_E8: &str = "even=true det=1 signature=(0, 8)";

/// Index of the span of `rows` (integer coordinates) in `l`.
fn span_index(rows: &Mat) -> Result<BigInt> {
    let d = rows.det();
    if !d.is_integer() {
        return Err(Error::Internal("non-integer coordinates".into()));
    }
    Ok(d.to_integer().magnitude().clone().into())
}

/// Claims about the E₈(−2) copies inside `L`.
pub fn verify_e_basis(l: &Result<LConstruction>) -> Vec<ClaimResult> {
    let get = with_l(l);
    vec![
        run(
            "e8.e-half-gram",
            "e8",
            "half of the Gram of <e1..e8>",
            HALF_E8,
            || {
                let c = get()?;
                half_gram_summary(&c.lattice, &c.e)
            },
        ),
        run(
            "e8.f-half-gram",
            "e8",
            "half of the Gram of <f9..f16>",
            HALF_E8,
            || {
                let c = get()?;
                half_gram_summary(&c.lattice, &c.f)
            },
        ),
        run("e8.ef-det", "e8", "discriminant of <e, f>", 625, || {
            let c = get()?;
            let ef = Mat::vstack(&[&c.e, &c.f])?;
            Ok(sublattice(&c.lattice, &ef)?.det().to_string())
        }),
        run("e8.ef-index", "e8", "index of <e, f> in L", 1, || {
            let c = get()?;
            Ok(span_index(&Mat::vstack(&[&c.e, &c.f])?)?.to_string())
        }),
    ]
}

/// Claims certifying that `L(−1)` has the defining properties of DIH₁₀(16).
pub fn dih10_certificate(l: &Result<LConstruction>) -> Vec<ClaimResult> {
    let get = with_l(l);
    vec![
        run(
            "dih10.rootless",
            "dih10",
            "vectors of L(-1) with norm <= 3",
            0,
            || Ok(short_vectors(&get()?.lattice, 3)?.pairs().to_string()),
        ),
        run("dih10.minimum", "dih10", "minimum of L(-1)", 4, || {
            Ok(minimum(&get()?.lattice)?.to_string())
        }),
        run(
            "dih10.group",
            "dih10",
            "<g, h> is dihedral of order 10",
            "true 10",
            || {
                let c = get()?;
                let d = dihedral_check(&c.g, &c.h)?;
                Ok(format!("{} {}", d.holds(), d.group_order))
            },
        ),
        run("dih10.span", "dih10", "<e> + <f> spans L", 1, || {
            Ok(span_index(&Mat::vstack(&[&get()?.e, &get()?.f])?)?.to_string())
        }),
        run(
            "dih10.involutions",
            "dih10",
            "h = -1 on <e>, g^2 h = -1 on <f>, both of order 2",
            "true true 2 2",
            || {
                let c = get()?;
                let g2h = c.g.pow(2).compose(&c.h)?;
                Ok(format!(
                    "{} {} {} {}",
                    c.h.acts_as_minus_one(&c.e),
                    g2h.acts_as_minus_one(&c.f),
                    c.h.order(ORDER_CAP)?,
                    g2h.order(ORDER_CAP)?
                ))
            },
        ),
    ]
}

fn lattice_claims(l: &Result<LConstruction>) -> Vec<ClaimResult> {
    let get = with_l(l);
    vec![
        run(
            "lattice.index",
            "lattice",
            "index of A4(-2)^4 in L",
            256,
            || Ok(get()?.overlattice.index.to_string()),
        ),
        run(
            "lattice.even",
            "lattice",
            "L is even of rank 16",
            "true 16",
            || {
                let c = get()?;
                Ok(format!("{} {}", c.lattice.is_even(), c.lattice.rank()))
            },
        ),
        run("lattice.mu-norm", "lattice", "mu.mu", -4, || {
            let c = get()?;
            Ok(c.base.norm(&c.mu).to_string())
        }),
        run("lattice.nu-norm", "lattice", "nu.nu", -4, || {
            let c = get()?;
            Ok(c.base.norm(&c.nu).to_string())
        }),
        run(
            "lattice.glue-pairings",
            "lattice",
            "g^i(nu).g^j(nu) and g^i(nu).g^j(mu) are integers",
            true,
            || {
                let c = get()?;
                let (mus, nus) = c.glue.split_at(4);
                let ok = nus.iter().all(|x| {
                    nus.iter()
                        .chain(mus)
                        .all(|y| c.base.pair(x, y).is_integer())
                });
                Ok(ok.to_string())
            },
        ),
        run(
            "lattice.signature",
            "lattice",
            "L is negative definite",
            "(0, 16)",
            || {
                let s = get()?.lattice.signature();
                Ok(format!("({}, {})", s.0, s.1))
            },
        ),
        run(
            "lattice.disc",
            "lattice",
            "discriminant group of L",
            "5,5,5,5",
            || Ok(discriminant_group(&get()?.lattice)?.to_string()),
        ),
    ]
}

fn g_claims(l: &Result<LConstruction>) -> Vec<ClaimResult> {
    let get = with_l(l);
    vec![
        run("g.order", "g", "order of g on L", 5, || {
            Ok(get()?.g.order(ORDER_CAP)?.to_string())
        }),
        run(
            "g.disc-trivial",
            "g",
            "g acts trivially on the discriminant group of L",
            true,
            || Ok(get()?.g.disc_action_trivial()?.to_string()),
        ),
        run(
            "g.glue-orbit",
            "g",
            "g maps every g^i(mu), g^i(nu) into L",
            true,
            || {
                let c = get()?;
                let ok = c.glue.iter().all(|v| {
                    let image = c.g_base.apply(v);
                    c.to_l(&image).iter().all(|x| x.is_integer())
                });
                Ok(ok.to_string())
            },
        ),
        run(
            "g.invariants",
            "g",
            "rank of the g-invariant sublattice",
            0,
            || {
                let c = get()?;
                let grp = group_closure(std::slice::from_ref(&c.g), CLOSURE_CAP)?;
                Ok(invariant_sublattice(&grp)?.lattice.rank().to_string())
            },
        ),
    ]
}

fn h_claims(l: &Result<LConstruction>) -> Vec<ClaimResult> {
    let get = with_l(l);
    vec![
        run("h.order", "h", "order of h on L", 2, || {
            Ok(get()?.h.order(ORDER_CAP)?.to_string())
        }),
        run(
            "h.explicit-vs-reflection",
            "h",
            "explicit action on A4(-2)^4 equals -1 on <e>, +1 on its complement",
            true,
            || {
                let c = get()?;
                Ok((*c.h.matrix() == c.h_reflection).to_string())
            },
        ),
        run(
            "h.fixed-rank",
            "h",
            "rank of the h-invariant sublattice",
            8,
            || {
                let c = get()?;
                let grp = group_closure(std::slice::from_ref(&c.h), CLOSURE_CAP)?;
                Ok(invariant_sublattice(&grp)?.lattice.rank().to_string())
            },
        ),
        run("h.relation", "h", "h g h^-1 g = 1", true, || {
            let c = get()?;
            let w = c.h.compose(&c.g)?.compose(&c.h.inverse())?.compose(&c.g)?;
            Ok(w.is_identity().to_string())
        }),
    ]
}

fn nikulin_claims() -> Vec<ClaimResult> {
    vec![
        run(
            "nikulin.index",
            "nikulin",
            "index of A1(-1)^8 in the Nikulin lattice",
            2,
            || Ok(build_nikulin()?.1.index.to_string()),
        ),
        run(
            "nikulin.disc",
            "nikulin",
            "discriminant group of the Nikulin lattice",
            "2,2,2,2,2,2",
            || Ok(discriminant_group(&build_nikulin()?.0.lattice)?.to_string()),
        ),
        run(
            "nikulin.fqf",
            "nikulin",
            "discriminant form of the Nikulin lattice is isomorphic to that of U(2)^3",
            true,
            || {
                let a = discriminant_group(&build_nikulin()?.0.lattice)?;
                let b = discriminant_group(&u2_cubed()?)?;
                Ok(fqf_isomorphic(&a, &b)?.is_some().to_string())
            },
        ),
    ]
}

fn md5_claims() -> Vec<ClaimResult> {
    vec![
        run(
            "md5.rank",
            "md5",
            "rank of M_D5 equals rank of M_Z5",
            "16 16",
            || {
                let m = build_md5()?;
                let l = build_l_with(None)?;
                Ok(format!("{} {}", m.lattice.rank(), l.lattice.rank()))
            },
        ),
        run(
            "md5.disc",
            "md5",
            "discriminant group of M_D5",
            "(Z/2Z)^6 + (Z/5Z)^2",
            || Ok(discriminant_group(&build_md5()?.lattice)?.primary_string()),
        ),
        run(
            "md5.snf",
            "md5",
            "invariant factors of M_D5",
            "2,2,2,2,10,10",
            || {
                let m = build_md5()?;
                let d: Vec<String> = snf(m.lattice.gram())?
                    .diagonal()
                    .iter()
                    .filter(|x| *x != &BigInt::from(1))
                    .map(|x| x.to_string())
                    .collect();
                Ok(d.join(","))
            },
        ),
    ]
}

/// Every claim, in fixed order, optionally restricted to one tag.
pub fn repro_all(filter: Option<&str>, fault: Option<Fault>) -> Result<Vec<ClaimResult>> {
    if let Some(t) = filter {
        if !TAGS.contains(&t) {
            return Err(Error::Input(format!(
                "unknown tag {t:?} (expected one of {})",
                TAGS.join(", ")
            )));
        }
    }
    let wants = |t: &str| filter.is_none_or(|f| f == t);
    let needs_l = ["lattice", "g", "e8", "h", "dih10"]
        .iter()
        .any(|t| wants(t));
    let l = if needs_l {
        build_l_with(fault)
    } else {
        Err(Error::Internal("L not requested".into()))
    };
    let mut out = Vec::new();
    for &tag in TAGS {
        if !wants(tag) {
            continue;
        }
        out.extend(match tag {
            "lattice" => lattice_claims(&l),
            "g" => g_claims(&l),
            "e8" => verify_e_basis(&l),
            "h" => h_claims(&l),
            "dih10" => dih10_certificate(&l),
            "nikulin" => nikulin_claims(),
            "md5" => md5_claims(),
            "families" => family_claims(),
            _ => unreachable!("tag list is fixed"),
        });
    }
    Ok(out)
}

fn family_claims() -> Vec<ClaimResult> {
    k3fam::claims()
        .into_iter()
        .map(|c| run(&c.id, "families", &c.locator, &c.expected, || c.compute()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtered_counts() {
        assert_eq!(repro_all(Some("nikulin"), None).unwrap().len(), 3);
        assert!(repro_all(Some("bogus"), None).is_err());
        assert!("nu-coord".parse::<Fault>().is_ok());
        assert!("other".parse::<Fault>().is_err());
    }

    #[test]
    fn md5_and_nikulin_pass() {
        let r = repro_all(Some("md5"), None).unwrap();
        assert!(r.iter().all(|c| c.pass), "{r:#?}");
        let r = repro_all(Some("nikulin"), None).unwrap();
        assert!(r.iter().all(|c| c.pass), "{r:#?}");
    }

    #[test]
    fn fault_fails_lattice_claims() {
        let r = repro_all(Some("lattice"), Some(Fault::NuCoord)).unwrap();
        assert!(r.iter().all(|c| !c.pass));
        assert!(r[0].computed.contains("construction of L failed"));
    }
}

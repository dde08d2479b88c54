//! One function per subcommand. Input problems come back as `Err` (exit 2);
//! a completed check that fails is a report with exit code 1.

use std::path::Path;

use latkit_core::catalog::{repro_all, Fault};
use latkit_core::lattice::{discriminant_group, IntegralLattice};
use latkit_core::shortvec::short_vectors;
use latkit_core::{Error, Result};

use crate::famfile::FamilyFile;
use crate::latfile::LatticeFile;
use crate::report::{
    Body, Check, DiscResult, FamilyResult, Generator, LatticeSummary, OverlatticeResult, Report,
    ReproResult, ShortvecResult, EXIT_FAIL, EXIT_PASS,
};

fn exit_for(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// The lattice a file describes, plus the glue index when glue was given.
fn load_lattice(path: &Path) -> Result<(IntegralLattice, Option<String>)> {
    let file = LatticeFile::load(path)?;
    match file.overlattice() {
        Some(o) => {
            let o = o?;
            Ok((o.lattice, Some(o.index.to_string())))
        }
        None => Ok((file.base()?, None)),
    }
}

pub fn disc(command: String, path: &Path) -> Result<Report> {
    let (l, glue_index) = load_lattice(path)?;
    let q = discriminant_group(&l)?;
    let generators = q
        .invariant_factors
        .iter()
        .enumerate()
        .map(|(i, d)| Generator {
            order: d.to_string(),
            q: q.q_values.as_ref().map(|v| v[i].to_string()),
            lift: q.generator_lifts[i].iter().map(|x| x.to_string()).collect(),
        })
        .collect();
    let body = DiscResult {
        lattice: LatticeSummary::of(&l),
        glue_index,
        invariant_factors: q.invariant_factors.iter().map(|d| d.to_string()).collect(),
        group: q.primary_string(),
        generators,
        b: q.b_matrix
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect(),
    };
    Ok(Report::new(command, Body::Disc(body), EXIT_PASS))
}

pub fn shortvec(command: String, path: &Path, bound: i64, count_only: bool) -> Result<Report> {
    if bound < 0 {
        return Err(Error::Input(format!(
            "bound must be nonnegative, got {bound}"
        )));
    }
    let (l, _) = load_lattice(path)?;
    let r = short_vectors(&l, bound)?;
    let body = ShortvecResult {
        lattice: LatticeSummary::of(&l),
        bound: r.bound,
        negated: r.negated,
        pairs: r.pairs(),
        counts_by_norm: r.counts_by_norm,
        vectors: (!count_only).then_some(r.vectors),
    };
    Ok(Report::new(command, Body::Shortvec(body), EXIT_PASS))
}

pub fn overlattice(command: String, path: &Path) -> Result<Report> {
    let file = LatticeFile::load(path)?;
    let base = file.base()?;
    let Some(result) = file.overlattice() else {
        return Err(Error::Input(format!("{} has no glue rows", path.display())));
    };
    let mut body = OverlatticeResult {
        base: LatticeSummary::of(&base),
        glue_rows: file.glue.len(),
        error: None,
        index: None,
        lattice: None,
        group: None,
        basis: None,
    };
    let exit = match result {
        // Glue that fails to pair integrally is a failed check, not bad input.
        Err(e @ (Error::GlueBase { .. } | Error::GluePair { .. } | Error::GlueEvenness { .. })) => {
            body.error = Some(e.to_string());
            EXIT_FAIL
        }
        Err(e) => return Err(e),
        Ok(o) => {
            body.index = Some(o.index.to_string());
            body.lattice = Some(LatticeSummary::of(&o.lattice));
            body.group = Some(discriminant_group(&o.lattice)?.primary_string());
            body.basis = Some(
                o.basis
                    .row_vecs()
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect())
                    .collect(),
            );
            EXIT_PASS
        }
    };
    Ok(Report::new(command, Body::Overlattice(body), exit))
}

pub fn repro(command: String, filter: Option<String>, fault: Option<String>) -> Result<Report> {
    let parsed: Option<Fault> = fault.as_deref().map(str::parse).transpose()?;
    let claims = repro_all(filter.as_deref(), parsed)?;
    let passed = claims.iter().filter(|c| c.pass).count();
    let failed = claims.len() - passed;
    let body = ReproResult {
        filter,
        fault,
        passed,
        failed,
        claims,
    };
    Ok(Report::new(
        command,
        Body::Repro(body),
        exit_for(failed == 0),
    ))
}

fn check(
    name: &str,
    expected: impl Into<String>,
    computed: impl Into<String>,
    pass: bool,
) -> Check {
    Check {
        name: name.into(),
        expected: expected.into(),
        computed: computed.into(),
        pass,
    }
}

pub fn family(command: String, path: &Path) -> Result<Report> {
    let file = FamilyFile::load(path)?;
    let f = &file.spec;
    let mut checks = Vec::new();
    for (eq, w) in file.equation_names.iter().zip(f.weights()) {
        let computed = w.map_or("mixed weights".into(), |w| format!("weight {w}"));
        checks.push(check(
            &format!("invariant {eq}"),
            "common weight",
            computed,
            w.is_some(),
        ));
    }
    if file.has_iota {
        let sym = f
            .equations
            .iter()
            .zip(&f.sample.coeffs)
            .all(|(e, c)| e.respects_symmetry(c));
        checks.push(check("sample symmetry", "true", sym.to_string(), sym));
        let d = f.dihedral();
        checks.push(check("dihedral", "true", d.to_string(), d));
        let p = f.preserved()?;
        checks.push(check("preserved", "true", p.to_string(), p));
        if let Some(lift) = f.lift_relation() {
            checks.push(check("lift relation", "true", lift.to_string(), lift));
        }
        let report = f.fixed_points()?;
        let total = report.total();
        let (expected, pass) = match file.expect_fixed_points {
            Some(n) => (n.to_string(), total == Some(n)),
            None => ("-".to_string(), true),
        };
        checks.push(check("fixed points", expected, report.summary(), pass));
    }
    checks.push(check("commutant", "-", f.commutant().to_string(), true));
    let m = f.moduli();
    let (expected, pass) = match file.expect_moduli {
        Some(e) => (e.to_string(), e == m),
        None => ("-".to_string(), true),
    };
    checks.push(check("moduli", expected, m.to_string(), pass));
    let all = checks.iter().all(|c| c.pass);
    let body = FamilyResult {
        name: f.name.clone(),
        checks,
    };
    Ok(Report::new(command, Body::Family(body), exit_for(all)))
}

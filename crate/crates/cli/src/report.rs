//! Reports shared by the text and JSON renderers.
//!
//! Every command builds one [`Report`]; `--json` serialises it and the text
//! form prints the same fields, so both carry the same result set.

use std::collections::BTreeMap;
use std::fmt::Write;

use latkit_core::catalog::ClaimResult;
use latkit_core::lattice::IntegralLattice;
use latkit_core::shortvec::ShortVector;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub ok: bool,
    pub exit_code: i32,
    pub result: Body,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Body {
    Disc(DiscResult),
    Shortvec(ShortvecResult),
    Overlattice(OverlatticeResult),
    Repro(ReproResult),
    Family(FamilyResult),
    Error { message: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSummary {
    pub rank: usize,
    pub det: String,
    pub signature: (usize, usize),
    pub even: bool,
}

impl LatticeSummary {
    pub fn of(l: &IntegralLattice) -> Self {
        LatticeSummary {
            rank: l.rank(),
            det: l.det().to_string(),
            signature: l.signature(),
            even: l.is_even(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub order: String,
    /// `q` mod 2, even lattices only.
    pub q: Option<String>,
    /// Dual vector in lattice coordinates.
    pub lift: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscResult {
    pub lattice: LatticeSummary,
    /// Present when the file carried glue rows.
    pub glue_index: Option<String>,
    pub invariant_factors: Vec<String>,
    pub group: String,
    pub generators: Vec<Generator>,
    /// `b(gᵢ, gⱼ)` mod 1.
    pub b: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShortvecResult {
    pub lattice: LatticeSummary,
    pub bound: i64,
    pub negated: bool,
    pub pairs: usize,
    pub counts_by_norm: BTreeMap<i64, usize>,
    /// Omitted with `--count-only`.
    pub vectors: Option<Vec<ShortVector>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlatticeResult {
    pub base: LatticeSummary,
    pub glue_rows: usize,
    pub error: Option<String>,
    pub index: Option<String>,
    pub lattice: Option<LatticeSummary>,
    pub group: Option<String>,
    /// Rows in base coordinates.
    pub basis: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproResult {
    pub filter: Option<String>,
    pub fault: Option<String>,
    pub passed: usize,
    pub failed: usize,
    pub claims: Vec<ClaimResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyResult {
    pub name: String,
    pub checks: Vec<Check>,
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn summary_line(out: &mut String, l: &LatticeSummary) {
    let _ = writeln!(
        out,
        "rank {}, det {}, signature {:?}, {}",
        l.rank,
        l.det,
        l.signature,
        if l.even { "even" } else { "odd" }
    );
}

fn grid(out: &mut String, rows: &[Vec<String>]) {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

impl Report {
    pub fn new(command: String, body: Body, exit_code: i32) -> Self {
        Report {
            schema: SCHEMA,
            command,
            ok: exit_code == EXIT_PASS,
            exit_code,
            result: body,
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        match &self.result {
            Body::Disc(d) => {
                summary_line(&mut out, &d.lattice);
                if let Some(i) = &d.glue_index {
                    let _ = writeln!(out, "glue index {i}");
                }
                if d.invariant_factors.is_empty() {
                    let _ = writeln!(out, "unimodular (trivial group)");
                    return out;
                }
                let _ = writeln!(out, "invariant factors {}", d.invariant_factors.join(","));
                let _ = writeln!(out, "group {}", d.group);
                for (i, g) in d.generators.iter().enumerate() {
                    let q =
                        g.q.as_deref()
                            .map_or(String::new(), |q| format!("  q = {q}"));
                    let _ = writeln!(
                        out,
                        "g{i}: order {}{q}  lift [{}]",
                        g.order,
                        g.lift.join(", ")
                    );
                }
                let _ = writeln!(out, "b (mod 1):");
                grid(&mut out, &d.b);
            }
            Body::Shortvec(s) => {
                summary_line(&mut out, &s.lattice);
                let scope = if s.negated { " (norms of L(-1))" } else { "" };
                if s.pairs == 0 {
                    let _ = writeln!(out, "0 vectors with norm <= {}{scope}", s.bound);
                } else {
                    let _ = writeln!(
                        out,
                        "{} pairs ({} vectors) with norm <= {}{scope}",
                        s.pairs,
                        2 * s.pairs,
                        s.bound
                    );
                }
                for (n, c) in &s.counts_by_norm {
                    let _ = writeln!(out, "  norm {n}: {c} pairs");
                }
                if let Some(vs) = &s.vectors {
                    for v in vs {
                        let coords: Vec<String> = v.coords.iter().map(i64::to_string).collect();
                        let _ = writeln!(out, "  {:>3}  [{}]", v.norm, coords.join(" "));
                    }
                }
            }
            Body::Overlattice(o) => {
                let _ = write!(out, "base: ");
                summary_line(&mut out, &o.base);
                let _ = writeln!(out, "glue rows {}", o.glue_rows);
                if let Some(e) = &o.error {
                    let _ = writeln!(out, "FAIL {e}");
                }
                if let (Some(i), Some(l)) = (&o.index, &o.lattice) {
                    let _ = writeln!(out, "index {i}");
                    let _ = write!(out, "overlattice: ");
                    summary_line(&mut out, l);
                }
                if let Some(g) = &o.group {
                    let _ = writeln!(out, "discriminant group {g}");
                }
                if let Some(b) = &o.basis {
                    let _ = writeln!(out, "basis (base coordinates):");
                    grid(&mut out, b);
                }
            }
            Body::Repro(r) => {
                if let Some(f) = &r.fault {
                    let _ = writeln!(out, "fault injected: {f}");
                }
                for c in &r.claims {
                    let _ = writeln!(
                        out,
                        "{} {:<32} expected {:<24} computed {:<24} [{}] {}ms",
                        status(c.pass),
                        c.id,
                        c.expected,
                        c.computed,
                        c.locator,
                        c.millis
                    );
                }
                let _ = writeln!(out, "{} passed, {} failed", r.passed, r.failed);
            }
            Body::Family(f) => {
                let _ = writeln!(out, "family {}", f.name);
                for c in &f.checks {
                    let _ = writeln!(
                        out,
                        "{} {:<22} expected {:<12} computed {}",
                        status(c.pass),
                        c.name,
                        c.expected,
                        c.computed
                    );
                }
            }
            Body::Error { message } => {
                let _ = writeln!(out, "error: {message}");
            }
        }
        out
    }
}

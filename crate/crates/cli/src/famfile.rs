//! Family files.
//!
//! ```text
//! name p3
//! vars 4
//! weights 0 3 1 2
//! equation quartic      # optional when there is one equation
//! mono 3 0 1 0
//! coeffs 1 2 3 5 1 3 7  # sample coefficients, default all 1
//! symmetry 0 4          # monomials whose coefficients iota identifies
//! map iota              # followed by `vars` rows of Q(w) entries
//! 0 1 0 0
//! ...
//! expect fixed-points 8
//! expect moduli 3
//! ```
//!
//! `map sigma` defaults to `diag(w^weights)`. Other keywords: `redundancy r`
//! and `double-cover` (the single equation is the branch curve of
//! `u^2 = f`). Map entries are tokens like `1`, `-w^2` or `1/2+w-3*w^3`.

use std::path::Path;

use latkit_core::exact::Cyc5;
use latkit_core::k3fam::{FamilySpec, MonomialFamily, ProjectiveMap, Sample};
use latkit_core::{Error, Result};

#[derive(Clone, Debug)]
pub struct FamilyFile {
    pub spec: FamilySpec,
    /// Names from `equation` lines, `f` when there were none.
    pub equation_names: Vec<String>,
    /// Without a `map iota` block the involution checks are skipped.
    pub has_iota: bool,
    pub expect_fixed_points: Option<usize>,
    pub expect_moduli: Option<i64>,
}

#[derive(Default)]
struct Equation {
    name: String,
    line: usize,
    monomials: Vec<Vec<u32>>,
    coeffs: Option<Vec<Cyc5>>,
    symmetry: Vec<(usize, usize)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers<T: std::str::FromStr>(line: usize, tokens: &[&str], what: &str) -> Result<Vec<T>> {
    tokens
        .iter()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_err(line, format!("invalid {what} {t:?}")))
        })
        .collect()
}

fn cyc_tokens(line: usize, tokens: &[&str]) -> Result<Vec<Cyc5>> {
    tokens
        .iter()
        .map(|t| Cyc5::parse(t).ok_or_else(|| parse_err(line, format!("invalid Q(w) entry {t:?}"))))
        .collect()
}

impl FamilyFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut vars: Option<usize> = None;
        let mut weights: Option<Vec<i64>> = None;
        let mut redundancy = 0;
        let mut double_cover = false;
        let mut equations: Vec<Equation> = Vec::new();
        let mut maps: Vec<(String, usize, Vec<Vec<Cyc5>>)> = Vec::new();
        let mut open_map: Option<usize> = None;
        let mut expect_fixed_points = None;
        let mut expect_moduli = None;

        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .map(|(i, raw)| {
                (
                    i + 1,
                    raw.split('#')
                        .next()
                        .unwrap_or("")
                        .split_whitespace()
                        .collect(),
                )
            })
            .filter(|(_, t): &(usize, Vec<&str>)| !t.is_empty())
            .collect();
        for (line, tokens) in &lines {
            let line = *line;
            if let Some(m) = open_map {
                let n = vars.expect("map blocks require vars");
                let rows = &mut maps[m].2;
                if tokens.len() != n {
                    return Err(parse_err(line, format!("map row needs {n} entries")));
                }
                rows.push(cyc_tokens(line, tokens)?);
                if rows.len() == n {
                    open_map = None;
                }
                continue;
            }
            let args = &tokens[1..];
            let need_vars = || vars.ok_or_else(|| parse_err(line, "`vars n` must come first"));
            match tokens[0] {
                "name" => name = Some(args.join(" ")),
                "vars" => {
                    let [n] = numbers::<usize>(line, args, "variable count")?[..] else {
                        return Err(parse_err(line, "expected `vars n`"));
                    };
                    if n == 0 {
                        return Err(parse_err(line, "need at least one variable"));
                    }
                    vars = Some(n);
                }
                "weights" => {
                    let n = need_vars()?;
                    let w = numbers::<i64>(line, args, "weight")?;
                    if w.len() != n {
                        return Err(parse_err(line, format!("expected {n} weights")));
                    }
                    weights = Some(w);
                }
                "redundancy" => {
                    let [r] = numbers::<usize>(line, args, "redundancy")?[..] else {
                        return Err(parse_err(line, "expected `redundancy r`"));
                    };
                    redundancy = r;
                }
                "double-cover" => double_cover = true,
                "equation" => equations.push(Equation {
                    name: args.join(" "),
                    line,
                    ..Equation::default()
                }),
                "mono" => {
                    let n = need_vars()?;
                    let e = numbers::<u32>(line, args, "exponent")?;
                    if e.len() != n {
                        return Err(parse_err(line, format!("expected {n} exponents")));
                    }
                    if equations.is_empty() {
                        equations.push(Equation {
                            name: "f".into(),
                            line,
                            ..Equation::default()
                        });
                    }
                    equations
                        .last_mut()
                        .expect("just ensured")
                        .monomials
                        .push(e);
                }
                "coeffs" | "symmetry" => {
                    let eq = equations.last_mut().ok_or_else(|| {
                        parse_err(line, format!("`{}` before any monomial", tokens[0]))
                    })?;
                    if tokens[0] == "coeffs" {
                        eq.coeffs = Some(cyc_tokens(line, args)?);
                    } else {
                        let [i, j] = numbers::<usize>(line, args, "monomial index")?[..] else {
                            return Err(parse_err(line, "expected `symmetry i j`"));
                        };
                        eq.symmetry.push((i, j));
                    }
                }
                "map" => {
                    need_vars()?;
                    let [which] = args[..] else {
                        return Err(parse_err(line, "expected `map sigma` or `map iota`"));
                    };
                    if which != "sigma" && which != "iota" {
                        return Err(parse_err(line, format!("unknown map {which:?}")));
                    }
                    if maps.iter().any(|m| m.0 == which) {
                        return Err(parse_err(line, format!("duplicate map {which}")));
                    }
                    maps.push((which.to_string(), line, Vec::new()));
                    open_map = Some(maps.len() - 1);
                }
                "expect" => match args {
                    ["fixed-points", v] => {
                        expect_fixed_points = Some(numbers::<usize>(line, &[v], "count")?[0])
                    }
                    ["moduli", v] => expect_moduli = Some(numbers::<i64>(line, &[v], "count")?[0]),
                    _ => {
                        return Err(parse_err(
                            line,
                            "expected `expect fixed-points N` or `expect moduli N`",
                        ))
                    }
                },
                other => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
            }
        }
        let last = lines.last().map_or(1, |l| l.0);
        if let Some(m) = open_map {
            return Err(parse_err(
                maps[m].1,
                format!("map {} is incomplete", maps[m].0),
            ));
        }
        let n = vars.ok_or_else(|| parse_err(last, "missing `vars n`"))?;
        let weights = weights.ok_or_else(|| parse_err(last, "missing `weights` line"))?;
        if equations.is_empty() {
            return Err(parse_err(last, "no monomials"));
        }

        let mut families = Vec::new();
        let mut coeffs = Vec::new();
        for eq in &equations {
            let fam = MonomialFamily::new(weights.clone(), eq.monomials.clone())
                .map_err(|e| parse_err(eq.line, e.to_string()))?;
            if let Some(&(i, j)) = eq
                .symmetry
                .iter()
                .find(|(i, j)| *i >= eq.monomials.len() || *j >= eq.monomials.len())
            {
                return Err(parse_err(
                    eq.line,
                    format!("symmetry ({i}, {j}) out of range"),
                ));
            }
            let c = eq
                .coeffs
                .clone()
                .unwrap_or_else(|| vec![Cyc5::from_int(1); eq.monomials.len()]);
            if c.len() != eq.monomials.len() {
                return Err(parse_err(
                    eq.line,
                    format!(
                        "{} coefficients for {} monomials",
                        c.len(),
                        eq.monomials.len()
                    ),
                ));
            }
            families.push(fam.with_symmetry(eq.symmetry.clone()));
            coeffs.push(c);
        }
        if double_cover && families.len() != 1 {
            return Err(parse_err(last, "a double cover takes exactly one equation"));
        }
        let map = |which: &str| -> Result<Option<ProjectiveMap>> {
            maps.iter()
                .find(|m| m.0 == which)
                .map(|(_, line, rows)| {
                    ProjectiveMap::new(rows.clone()).map_err(|e| parse_err(*line, e.to_string()))
                })
                .transpose()
        };
        let sigma = map("sigma")?.unwrap_or_else(|| ProjectiveMap::diagonal_weights(&weights));
        let iota = map("iota")?;
        let has_iota = iota.is_some();
        Ok(FamilyFile {
            spec: FamilySpec {
                name: name.unwrap_or_else(|| "family".into()),
                equations: families,
                sigma,
                iota: iota.unwrap_or_else(|| ProjectiveMap::identity(n)),
                double_cover,
                redundancy,
                sample: Sample { coeffs },
            },
            equation_names: equations.into_iter().map(|e| e.name).collect(),
            has_iota,
            expect_fixed_points,
            expect_moduli,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONIC: &str =
        "vars 3\nweights 0 1 4\nmono 2 0 0\nmono 0 1 1\nmap iota\n1 0 0\n0 0 1\n0 1 0\n";

    #[test]
    fn parses_a_minimal_family() {
        let f = FamilyFile::parse(CONIC).unwrap();
        assert!(f.has_iota);
        assert_eq!(f.equation_names, ["f"]);
        assert_eq!(f.spec.sample.coeffs[0].len(), 2);
        assert!(f.spec.dihedral());
    }

    #[test]
    fn map_entries_use_cyclotomic_tokens() {
        let text = "vars 2\nweights 0 1\nmono 1 1\nmap sigma\n1 0\n0 w\n";
        let f = FamilyFile::parse(text).unwrap();
        assert_eq!(f.spec.sigma, ProjectiveMap::diagonal_weights(&[0, 1]));
        assert!(!f.has_iota);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |s: &str| match FamilyFile::parse(s) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line("weights 0 1\n"), 1);
        assert_eq!(line("vars 2\nweights 0 1\nmono 1\n"), 3);
        assert_eq!(line("vars 2\nweights 0 1\nmono 1 1\nmap iota\n0 1\n"), 4);
        assert_eq!(
            line("vars 2\nweights 0 1\nmono 1 1\nmap iota\n0 1\n1 q\n"),
            6
        );
        assert_eq!(
            line("vars 2\nweights 0 1\nmono 1 1\nmono 2 0 \ncoeffs 1\n"),
            3
        );
        assert_eq!(line("vars 2\nweights 0 1\nmono 1 1\nbogus\n"), 4);
        assert_eq!(line("vars 2\nweights 0 1\nmono 1 1\nmono 0 1\n"), 3);
    }
}

//! Lattice files: `rank n`, then `n` Gram rows, then optional glue rows.
//!
//! ```text
//! # A1(-1)^2 with a half-sum glue vector
//! rank 2
//! -2  0
//!  0 -2
//! glue 1/2 1/2
//! ```
//!
//! Glue rows are written either as `glue x1 .. xn` or as plain rows after a
//! bare `glue` line. Entries are integers or `p/q`.

use std::path::Path;

use latkit_core::exact::{Mat, Rat};
use latkit_core::lattice::{overlattice, GlueVector, IntegralLattice, Overlattice};
use latkit_core::{Error, Result};

#[derive(Clone, Debug)]
pub struct LatticeFile {
    pub rank: usize,
    pub gram: Mat,
    pub glue: Vec<GlueVector>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_row(line: usize, tokens: &[&str], n: usize) -> Result<Vec<Rat>> {
    if tokens.len() != n {
        return Err(parse_err(
            line,
            format!("expected {n} entries, found {}", tokens.len()),
        ));
    }
    tokens
        .iter()
        .map(|t| {
            t.parse::<Rat>()
                .map_err(|_| parse_err(line, format!("not a rational number: {t:?}")))
        })
        .collect()
}

impl LatticeFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rank = None;
        let mut rows: Vec<(usize, Vec<Rat>)> = Vec::new();
        let mut glue = Vec::new();
        let mut in_glue = false;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens[0] {
                "rank" => {
                    if rank.is_some() {
                        return Err(parse_err(line, "duplicate rank line"));
                    }
                    let [_, n] = tokens[..] else {
                        return Err(parse_err(line, "expected `rank n`"));
                    };
                    let n: usize = n
                        .parse()
                        .ok()
                        .filter(|&n| n > 0)
                        .ok_or_else(|| parse_err(line, format!("invalid rank {n:?}")))?;
                    rank = Some(n);
                }
                "glue" => {
                    let n = rank.ok_or_else(|| parse_err(line, "glue before rank"))?;
                    if rows.len() != n {
                        return Err(parse_err(
                            line,
                            format!("glue after {} of {n} Gram rows", rows.len()),
                        ));
                    }
                    in_glue = true;
                    if tokens.len() > 1 {
                        glue.push(GlueVector(parse_row(line, &tokens[1..], n)?));
                    }
                }
                _ => {
                    let n = rank.ok_or_else(|| parse_err(line, "expected `rank n` first"))?;
                    let row = parse_row(line, &tokens, n)?;
                    if in_glue {
                        glue.push(GlueVector(row));
                    } else if rows.len() == n {
                        return Err(parse_err(line, format!("more than {n} Gram rows")));
                    } else {
                        rows.push((line, row));
                    }
                }
            }
        }
        let n = rank.ok_or_else(|| parse_err(last_line.max(1), "missing `rank n` line"))?;
        if rows.len() != n {
            return Err(parse_err(
                last_line,
                format!("expected {n} Gram rows, found {}", rows.len()),
            ));
        }
        for (i, (line, row)) in rows.iter().enumerate() {
            if let Some(x) = row.iter().find(|x| !x.is_integer()) {
                return Err(parse_err(
                    *line,
                    format!("Gram entry {x} is not an integer"),
                ));
            }
            for (j, x) in row.iter().enumerate().take(i) {
                if *x != rows[j].1[i] {
                    return Err(parse_err(
                        *line,
                        format!("Gram matrix not symmetric at ({}, {})", i + 1, j + 1),
                    ));
                }
            }
        }
        let gram = Mat::from_rows(rows.into_iter().map(|(_, r)| r).collect())?;
        Ok(LatticeFile {
            rank: n,
            gram,
            glue,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The lattice given by the Gram rows alone.
    pub fn base(&self) -> Result<IntegralLattice> {
        IntegralLattice::new(self.gram.clone())
    }

    /// The overlattice generated by the glue rows, if there are any.
    pub fn overlattice(&self) -> Option<Result<Overlattice>> {
        if self.glue.is_empty() {
            return None;
        }
        Some(self.base().and_then(|b| overlattice(&b, &self.glue)))
    }

    /// The overlattice when glue is present, otherwise the base.
    pub fn lattice(&self) -> Result<IntegralLattice> {
        match self.overlattice() {
            Some(o) => o.map(|o| o.lattice),
            None => self.base(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_gram_and_glue() {
        let f = LatticeFile::parse("# c\nrank 2\n-2 0\n0 -2 # tail\nglue\n1/2 1/2\n").unwrap();
        assert_eq!(f.rank, 2);
        assert_eq!(f.glue.len(), 1);
        let inline = LatticeFile::parse("rank 2\n-2 0\n0 -2\nglue 1/2 1/2\n").unwrap();
        assert_eq!(inline.glue, f.glue);
        // half-sum of two A1(-1) vectors has norm -1: odd, rejected
        assert!(f.lattice().is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |s: &str| match LatticeFile::parse(s) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line("rank 2\n2 1\n0 2\n"), 3);
        assert_eq!(line("rank 2\n2 x\n1 2\n"), 2);
        assert_eq!(line("2 1\n"), 1);
        assert_eq!(line("rank 2\n2 1\n"), 2);
        assert_eq!(line("rank 2\n2 1/2\n1/2 2\n"), 2);
        assert_eq!(line("rank 1\n2\nglue 1 2\n"), 3);
        assert_eq!(line("# nothing\n"), 1);
    }
}

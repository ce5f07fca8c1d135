//! The alist sparse parity-check format.
//!
//! ```text
//! n m
//! max_var_degree max_check_degree
//! <n variable degrees>
//! <m check degrees>
//! <n lines: 1-based check indices of each variable, zero-padded>
//! <m lines: 1-based variable indices of each check, zero-padded>
//! ```
//!
//! Blank lines are skipped. Zero entries are padding and ignored. The two
//! adjacency halves must describe the same edge set.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::TannerGraph;
use crate::error::{Error, Result};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(i + 1, format!("expected an integer, got {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((i + 1, nums));
        }
        Err(Error::parse(self.last + 1, format!("unexpected end of input, expected {what}")))
    }
}

pub fn parse_alist(text: &str) -> Result<TannerGraph> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let (ln, dims) = lines.next_numbers("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(Error::parse(ln, "expected \"n m\""));
    };
    let (ln, maxes) = lines.next_numbers("maximum degrees")?;
    if maxes.len() != 2 {
        return Err(Error::parse(ln, "expected two maximum degrees"));
    }
    let (ln, var_deg) = lines.next_numbers("variable degrees")?;
    if var_deg.len() != n {
        return Err(Error::parse(
            ln,
            format!("expected {n} variable degrees, got {}", var_deg.len()),
        ));
    }
    let (ln, chk_deg) = lines.next_numbers("check degrees")?;
    if chk_deg.len() != m {
        return Err(Error::parse(
            ln,
            format!("expected {m} check degrees, got {}", chk_deg.len()),
        ));
    }

    let mut edges = BTreeSet::new();
    for (v, &deg) in var_deg.iter().enumerate() {
        let (ln, list) = lines.next_numbers("variable adjacency")?;
        let nz: Vec<usize> = list.into_iter().filter(|&x| x != 0).collect();
        if nz.len() != deg {
            return Err(Error::parse(
                ln,
                format!("variable {} lists {} checks, degree is {deg}", v + 1, nz.len()),
            ));
        }
        for c in nz {
            if c > m {
                return Err(Error::parse(ln, format!("check index {c} exceeds m = {m}")));
            }
            if !edges.insert((v, c - 1)) {
                return Err(Error::parse(
                    ln,
                    format!("duplicate edge between variable {} and check {c}", v + 1),
                ));
            }
        }
    }
    let mut seen = BTreeSet::new();
    for (c, &deg) in chk_deg.iter().enumerate() {
        let (ln, list) = lines.next_numbers("check adjacency")?;
        let nz: Vec<usize> = list.into_iter().filter(|&x| x != 0).collect();
        if nz.len() != deg {
            return Err(Error::parse(
                ln,
                format!("check {} lists {} variables, degree is {deg}", c + 1, nz.len()),
            ));
        }
        for v in nz {
            if v > n {
                return Err(Error::parse(ln, format!("variable index {v} exceeds n = {n}")));
            }
            if !seen.insert((v - 1, c)) {
                return Err(Error::parse(
                    ln,
                    format!("duplicate edge between check {} and variable {v}", c + 1),
                ));
            }
            if !edges.contains(&(v - 1, c)) {
                return Err(Error::parse(
                    ln,
                    format!("edge (variable {v}, check {}) missing from variable lists", c + 1),
                ));
            }
        }
    }
    if seen.len() != edges.len() {
        return Err(Error::parse(
            lines.last,
            "variable and check adjacency lists disagree",
        ));
    }
    TannerGraph::from_edges(n, m, edges)
}

/// Canonical alist text: adjacency lines zero-padded to the maximum degree.
pub fn write_alist(g: &TannerGraph) -> String {
    let mut s = String::new();
    let max_v = (0..g.n()).map(|v| g.var_degree(v)).max().unwrap_or(0);
    let max_c = (0..g.m()).map(|c| g.check_degree(c)).max().unwrap_or(0);
    let join = |xs: &mut dyn Iterator<Item = usize>| {
        xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    let _ = writeln!(s, "{max_v} {max_c}");
    let _ = writeln!(s, "{}", join(&mut (0..g.n()).map(|v| g.var_degree(v))));
    let _ = writeln!(s, "{}", join(&mut (0..g.m()).map(|c| g.check_degree(c))));
    for v in 0..g.n() {
        let adj = g.var_checks(v);
        let pad = max_v - adj.len();
        let _ = writeln!(
            s,
            "{}",
            join(&mut adj.iter().map(|&c| c + 1).chain(std::iter::repeat_n(0, pad)))
        );
    }
    for c in 0..g.m() {
        let adj = g.check_vars(c);
        let pad = max_c - adj.len();
        let _ = writeln!(
            s,
            "{}",
            join(&mut adj.iter().map(|&v| v + 1).chain(std::iter::repeat_n(0, pad)))
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";

    #[test]
    fn toy_graph() {
        let g = parse_alist(TOY).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(
            (0..3).map(|v| g.var_degree(v)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        assert_eq!(g.check_vars(0), &[0, 1]);
        assert_eq!(g.check_vars(1), &[1, 2]);
        assert_eq!(parse_alist(&write_alist(&g)).unwrap(), g);
    }

    #[test]
    fn degree_count_mismatch() {
        let bad = "3 2\n2 2\n1 2 1 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n";
        let err = parse_alist(bad).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn out_of_range_and_duplicates() {
        let oob = "3 2\n2 2\n1 2 1\n2 2\n3\n1 2\n2\n1 2\n2 3\n";
        assert!(matches!(parse_alist(oob), Err(Error::Parse { line: 5, .. })));
        let dup = "3 2\n2 2\n1 2 1\n2 2\n1\n1 1\n2\n1 2\n2 3\n";
        assert!(matches!(parse_alist(dup), Err(Error::Parse { line: 6, .. })));
        let disagree = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 3\n2 3\n";
        assert!(parse_alist(disagree).is_err());
        assert!(parse_alist("3 2\n").is_err());
    }
}

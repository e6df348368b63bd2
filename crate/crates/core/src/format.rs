//! The `.hg` text format.
//!
//! ```text
//! # comment
//! 3 6
//! 0 1 2
//! 3 4 5
//! ```
//!
//! The first non-comment line is `r n`; every further line lists the r
//! vertices of one edge in strictly ascending order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let numbers = line
            .split_whitespace()
            .map(|tok| tok.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
        match header {
            None => {
                let [r, n] = numbers[..] else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "header must be `r n`".into(),
                    });
                };
                if r == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "uniformity must be positive".into(),
                    });
                }
                header = Some((r, n));
            }
            Some((r, n)) => {
                if numbers.len() != r {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected {r} vertices, found {}", numbers.len()),
                    });
                }
                if numbers.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "vertices must be strictly ascending".into(),
                    });
                }
                if let Some(&v) = numbers.iter().find(|&&v| v >= n) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("vertex {v} out of range for {n} vertices"),
                    });
                }
                edges.push((line_no, numbers));
            }
        }
    }
    let (r, n) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing `r n` header".into(),
    })?;
    let mut seen = std::collections::HashSet::new();
    for (line, e) in &edges {
        if !seen.insert(e) {
            return Err(Error::Parse {
                line: *line,
                message: format!("duplicate edge {e:?}"),
            });
        }
    }
    Hypergraph::new(r, n, edges.into_iter().map(|(_, e)| e))
}

pub fn write_hg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.r(), h.n());
    for e in h.edges() {
        let line = e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{line}");
    }
    out
}

//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! n 3
//! 0 1
//! 1 2
//! ```
//!
//! The header line `n <count>` is mandatory and comes first (after any
//! comments), which lets the format carry isolated vertices. Edge lines are
//! two whitespace-separated vertex indices; self-loops and duplicates are
//! rejected.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match n {
            None => {
                if tokens.next() != Some("n") {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected header line \"n <count>\"".to_string(),
                    });
                }
                let count = tokens
                    .next()
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: "missing vertex count".to_string(),
                    })?
                    .parse::<usize>()
                    .map_err(|_| Error::Parse {
                        line: line_no,
                        message: "vertex count is not a nonnegative integer".to_string(),
                    })?;
                if tokens.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "trailing tokens after vertex count".to_string(),
                    });
                }
                n = Some(count);
            }
            Some(_) => {
                let mut endpoint = |name: &str| -> Result<usize> {
                    tokens
                        .next()
                        .ok_or_else(|| Error::Parse {
                            line: line_no,
                            message: format!("missing {name} vertex"),
                        })?
                        .parse::<usize>()
                        .map_err(|_| Error::Parse {
                            line: line_no,
                            message: format!("{name} vertex is not a nonnegative integer"),
                        })
                };
                let u = endpoint("first")?;
                let v = endpoint("second")?;
                if tokens.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "trailing tokens after edge".to_string(),
                    });
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing header line \"n <count>\"".to_string(),
    })?;
    Graph::new(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

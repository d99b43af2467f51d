use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Plain(Graph),
    /// Left side is `0..n_left`.
    Bipartite(BipartiteGraph),
}

impl GraphFile {
    pub fn graph(&self) -> &Graph {
        match self {
            GraphFile::Plain(g) => g,
            GraphFile::Bipartite(b) => b.graph(),
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            GraphFile::Plain(g) => g,
            GraphFile::Bipartite(b) => b.into_graph(),
        }
    }
}

fn parse_err(line: usize, detail: impl Into<String>) -> Error {
    Error::Parse { line, detail: detail.into() }
}

fn numbers(line: usize, words: &[&str]) -> Result<Vec<usize>> {
    words.iter().map(|w| w.parse::<usize>().map_err(|_| parse_err(line, format!("`{w}` is not a number")))).collect()
}

/// Parses `p tww n m` or `p btww nL nR m` followed by `m` lines `u v` (1-indexed).
pub fn parse_gr(text: &str) -> Result<GraphFile> {
    let mut header: Option<(Option<usize>, usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let words: Vec<&str> = raw.split_whitespace().collect();
        match words.first() {
            None => continue,
            Some(&"c") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(parse_err(line, "second header line"));
                }
                header = Some(match words.get(1) {
                    Some(&"tww") if words.len() == 4 => {
                        let x = numbers(line, &words[2..])?;
                        (None, x[0], x[1])
                    }
                    Some(&"btww") if words.len() == 5 => {
                        let x = numbers(line, &words[2..])?;
                        (Some(x[0]), x[0] + x[1], x[2])
                    }
                    _ => return Err(parse_err(line, "expected `p tww n m` or `p btww nL nR m`")),
                });
            }
            Some(_) => {
                let Some((_, n, _)) = header else {
                    return Err(parse_err(line, "edge before header"));
                };
                if words.len() != 2 {
                    return Err(parse_err(line, "expected two vertices"));
                }
                let x = numbers(line, &words)?;
                if x.iter().any(|&v| v == 0 || v > n) {
                    return Err(parse_err(line, format!("vertex out of range 1..={n}")));
                }
                if x[0] == x[1] {
                    return Err(parse_err(line, "loop"));
                }
                edges.push((x[0] - 1, x[1] - 1));
            }
        }
    }
    let Some((n_left, n, m)) = header else {
        return Err(parse_err(0, "missing header"));
    };
    if edges.len() != m {
        return Err(parse_err(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    match n_left {
        None => Ok(GraphFile::Plain(Graph::from_edges(n, edges)?)),
        Some(nl) => Ok(GraphFile::Bipartite(BipartiteGraph::from_sides(nl, n - nl, edges)?)),
    }
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tww {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

/// Requires the left side to be `0..nL`.
pub fn write_bipartite_gr(g: &BipartiteGraph) -> Result<String> {
    let nl = g.left().count_ones(..);
    if g.left().ones().any(|v| v >= nl) {
        return Err(Error::input("left side must be the first vertices"));
    }
    let mut out = format!("p btww {} {} {}\n", nl, g.n() - nl, g.graph().edge_count());
    for (u, v) in g.graph().edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    Ok(out)
}

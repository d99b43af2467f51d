use crate::contraction::{MergeTree, TreeKind};
use crate::error::{Error, Result};

const CONVEX_HEADER: &str = "c convex";

/// Parses `u v` lines (1-indexed, merge `v` into `u`). A `c convex` line marks a
/// sequence that stops at two parts.
pub fn parse_tww(text: &str, n: usize) -> Result<MergeTree> {
    let mut kind = TreeKind::General;
    let mut merges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let words: Vec<&str> = raw.split_whitespace().collect();
        match words.first() {
            None => {}
            Some(&"c") => {
                if raw.trim() == CONVEX_HEADER {
                    kind = TreeKind::Convex;
                }
            }
            Some(_) => {
                let parsed: Vec<usize> = words
                    .iter()
                    .map(|w| w.parse().map_err(|_| Error::Parse { line: i + 1, detail: format!("`{w}` is not a number") }))
                    .collect::<Result<_>>()?;
                match parsed[..] {
                    [u, v] if u >= 1 && v >= 1 => merges.push((u - 1, v - 1)),
                    _ => return Err(Error::Parse { line: i + 1, detail: "expected two 1-indexed vertices".into() }),
                }
            }
        }
    }
    MergeTree::from_contractions(n, kind, &merges)
}

pub fn write_tww(t: &MergeTree) -> String {
    let mut out = String::new();
    if t.kind() == TreeKind::Convex {
        out.push_str(CONVEX_HEADER);
        out.push('\n');
    }
    for (u, v) in t.to_contractions() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = MergeTree::from_contractions(4, TreeKind::General, &[(0, 1), (2, 3), (0, 2)]).unwrap();
        assert_eq!(parse_tww(&write_tww(&t), 4).unwrap(), t);
        let c = MergeTree::from_contractions(4, TreeKind::Convex, &[(0, 1), (2, 3)]).unwrap();
        let back = parse_tww(&write_tww(&c), 4).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_double_merge() {
        assert!(parse_tww("1 2\n3 2\n", 3).is_err());
    }
}

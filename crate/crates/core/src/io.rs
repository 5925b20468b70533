//! Text formats for graphs.
//!
//! Edge list: the first non-comment line is `n m`, followed by `m` lines
//! `u v` (0-indexed). Lines starting with `#` are comments and blank lines
//! are ignored. Labelled graphs may add `C: i j k` and `U: i j` lines
//! anywhere after the header. graph6 is accepted for simple graphs.

use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, Multigraph};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {line}: {}", msg.into()))
}

pub fn parse_labelled(text: &str) -> Result<LabelledGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut c = Vec::new();
    let mut u = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = |s: &str| -> Result<Vec<usize>> {
            s.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| parse_err(lineno, format!("bad integer `{t}`")))
                })
                .collect()
        };
        if let Some(rest) = line.strip_prefix("C:") {
            c.extend(nums(rest)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("U:") {
            u.extend(nums(rest)?);
            continue;
        }
        let vals = nums(line)?;
        if vals.len() != 2 {
            return Err(parse_err(lineno, "expected two integers"));
        }
        match header {
            None => header = Some((vals[0], vals[1])),
            Some(_) => edges.push((vals[0], vals[1])),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges but {} were listed",
            edges.len()
        )));
    }
    let g = Multigraph::new(n, edges)?;
    for &v in c.iter().chain(&u) {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
    }
    LabelledGraph::from_sets(g, &c, &u)
}

pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let l = parse_labelled(text)?;
    if l.coloured != 0 || l.uncoloured != 0 {
        return Err(Error::Parse(
            "unexpected C:/U: labels in plain graph".into(),
        ));
    }
    Ok(l.graph)
}

pub fn format_edge_list(g: &Multigraph) -> String {
    g.to_string()
}

pub fn format_labelled(l: &LabelledGraph) -> String {
    let mut s = l.graph.to_string();
    let list = |mask: u64| -> String {
        (0..l.graph.n())
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    if l.coloured != 0 {
        s.push_str(&format!("C: {}\n", list(l.coloured)));
    }
    if l.uncoloured != 0 {
        s.push_str(&format!("U: {}\n", list(l.uncoloured)));
    }
    s
}

/// Parses a graph6 string (simple graphs, n < 63 handled via the 1-byte or
/// 4-byte size prefix).
pub fn parse_graph6(s: &str) -> Result<Multigraph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    if bytes.is_empty() || bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("invalid graph6 string".into()));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("unsupported graph6 size prefix".into()));
        }
        let n = ((bytes[1] as usize - 63) << 12)
            | ((bytes[2] as usize - 63) << 6)
            | (bytes[3] as usize - 63);
        (n, &bytes[4..])
    } else {
        (bytes[0] as usize - 63, &bytes[1..])
    };
    let needed = n * n.saturating_sub(1) / 2;
    if body.len() * 6 < needed {
        return Err(Error::Parse("graph6 body too short".into()));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Multigraph::new(n, edges)
}

/// Reads either edge-list text or a single-line graph6 string.
pub fn parse_graph_auto(text: &str) -> Result<LabelledGraph> {
    let trimmed = text.trim();
    let looks_graph6 = !trimmed.contains(char::is_whitespace)
        && !trimmed.is_empty()
        && !trimmed.chars().all(|c| c.is_ascii_digit());
    if looks_graph6 {
        return Ok(LabelledGraph::unlabelled(parse_graph6(trimmed)?));
    }
    parse_labelled(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn edge_list_round_trip() {
        let g = gray1();
        let text = format_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_labels() {
        let text = "# triangle\n3 3\n0 1\n1 2\n# mid comment\n2 0\nC: 0\nU: 2\n";
        let l = parse_labelled(text).unwrap();
        assert_eq!(l.graph.m(), 3);
        assert_eq!(l.coloured, 0b001);
        assert_eq!(l.uncoloured, 0b100);
        assert_eq!(parse_labelled(&format_labelled(&l)).unwrap(), l);
        assert!(parse_edge_list(text).is_err());
    }

    #[test]
    fn malformed_input() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("2 1\n0 5\n").is_err());
        assert!(parse_edge_list("2 2\n0 1\n").is_err());
        assert!(parse_edge_list("2 1\n0 x\n").is_err());
        assert_eq!(
            parse_labelled("2 1\n0 1\nC: 0\nU: 0\n"),
            Err(Error::LabelOverlap)
        );
    }

    #[test]
    fn graph6_examples() {
        // "Bw" is K_3 and "C~" is K_4
        let k3 = parse_graph6("Bw").unwrap();
        assert!(k3.is_isomorphic(&complete(3)).unwrap());
        let k4 = parse_graph6("C~").unwrap();
        assert!(k4.is_isomorphic(&complete(4)).unwrap());
        assert_eq!(parse_graph6("@").unwrap(), Multigraph::null(1));
        assert!(parse_graph6("C").is_err());
        let auto = parse_graph_auto("C~\n").unwrap();
        assert_eq!(auto.graph.m(), 6);
    }
}

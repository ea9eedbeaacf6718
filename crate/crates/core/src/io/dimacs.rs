use crate::error::{Error, Result};
use crate::graph::Graph;

/// Reads a DIMACS edge list (`p edge n m`, `e u v` with 1-based ids, `c`
/// comments). Ids become 0-based.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let mut it = line.split_whitespace();
        let bad = |msg: &str| Error::Parse(format!("line {line_no}: {msg}"));
        let num = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| bad("missing number"))?.parse().map_err(|_| bad("expected a non-negative integer"))
        };
        match it.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(bad("second problem line"));
                }
                match it.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(bad("expected `p edge n m`")),
                }
                header = Some((num(it.next())?, num(it.next())?));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| bad("edge before problem line"))?;
                let (u, v) = (num(it.next())?, num(it.next())?);
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(bad(&format!("vertex outside 1..={n}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(t) => return Err(bad(&format!("unknown line type {t:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    if edges.len() != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

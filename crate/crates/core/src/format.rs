//! Text formats. Vertices are written one-based.
//!
//! `cg`: `cg 1`, `n <N>`, then `e <u> <v>` (u < v, increasing), then
//! `k <v> <c>` (increasing). `rs`: `rs 1`, `n <N>`, the same `e` lines, then
//! one `r <v>: ...` line per vertex listing its neighbors in successor order
//! from the smallest one. graph6 follows the published format for uncolored
//! graphs.

use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

pub fn write_cg(g: &ColoredGraph) -> String {
    let mut out = format!("cg 1\nn {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    for v in 0..g.n() {
        for c in g.colors(v) {
            out.push_str(&format!("k {} {}\n", v + 1, c));
        }
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let (i, line) = self.inner.next()?;
        self.last = i + 1;
        Some((i + 1, line.split(' ').collect()))
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let line = self.last + 1;
        self.next()
            .ok_or_else(|| Error::parse(line, format!("missing {what}")))
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    // reject signs, leading zeros and empty tokens so that writing is the
    // exact inverse of reading
    let canonical = !tok.is_empty()
        && tok.bytes().all(|b| b.is_ascii_digit())
        && (tok == "0" || !tok.starts_with('0'));
    if !canonical {
        return Err(Error::parse(line, format!("bad number `{tok}`")));
    }
    tok.parse()
        .map_err(|_| Error::parse(line, format!("number out of range `{tok}`")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v: usize = number(line, tok)?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn header(lines: &mut Lines, magic: &str) -> Result<usize> {
    let (ln, toks) = lines.expect("header")?;
    if toks != [magic, "1"] {
        return Err(Error::parse(ln, format!("expected `{magic} 1`")));
    }
    let (ln, toks) = lines.expect("vertex count")?;
    match toks.as_slice() {
        ["n", count] => number(ln, count),
        _ => Err(Error::parse(ln, "expected `n <N>`")),
    }
}

/// Reads `e` lines until the first line of another kind, which is returned.
fn edges<'a>(
    lines: &mut Lines<'a>,
    g: &mut ColoredGraph,
) -> Result<Option<(usize, Vec<&'a str>)>> {
    let mut prev: Option<(usize, usize)> = None;
    while let Some((ln, toks)) = lines.next() {
        if toks.first() != Some(&"e") {
            return Ok(Some((ln, toks)));
        }
        let [_, a, b] = toks[..] else {
            return Err(Error::parse(ln, "expected `e <u> <v>`"));
        };
        let (u, v) = (vertex(ln, a, g.n())?, vertex(ln, b, g.n())?);
        if u == v {
            return Err(Error::parse(ln, "loop"));
        }
        if u > v {
            return Err(Error::parse(ln, "edge endpoints must be increasing"));
        }
        match prev {
            Some(p) if p == (u, v) => return Err(Error::parse(ln, "duplicate edge")),
            Some(p) if p > (u, v) => return Err(Error::parse(ln, "edges out of order")),
            _ => {}
        }
        prev = Some((u, v));
        g.add_edge(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    Ok(None)
}

pub fn parse_cg(text: &str) -> Result<ColoredGraph> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines, "cg")?;
    let mut g = ColoredGraph::new(n);
    let mut pending = edges(&mut lines, &mut g)?;
    let mut prev: Option<(usize, u64)> = None;
    while let Some((ln, toks)) = pending {
        let ["k", a, c] = toks[..] else {
            return Err(Error::parse(ln, "expected `k <v> <c>`"));
        };
        let (v, c) = (vertex(ln, a, n)?, number::<u64>(ln, c)?);
        match prev {
            Some(p) if p == (v, c) => return Err(Error::parse(ln, "duplicate color")),
            Some(p) if p > (v, c) => return Err(Error::parse(ln, "colors out of order")),
            _ => {}
        }
        prev = Some((v, c));
        g.add_color(v, c);
        pending = lines.next();
    }
    Ok(g)
}

fn graph6_size(n: usize) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258047 {
        let mut out = vec![126];
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        out
    } else {
        let mut out = vec![126, 126];
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        out
    }
}

/// graph6 string without a trailing newline. Colors are dropped.
pub fn write_graph6(g: &ColoredGraph) -> String {
    let mut bytes = graph6_size(g.n());
    let mut bits = Vec::with_capacity(g.n() * g.n().saturating_sub(1) / 2);
    for j in 1..g.n() {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                b |= 1 << (5 - k);
            }
        }
        bytes.push(b + 63);
    }
    String::from_utf8(bytes).expect("printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<ColoredGraph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(1, format!("byte {b} outside the graph6 range")));
    }
    let sextet = |b: u8| (b - 63) as usize;
    let fold = |bs: &[u8]| bs.iter().fold(0usize, |acc, &b| (acc << 6) | sextet(b));
    let (n, body) = match bytes {
        [] => return Err(Error::parse(1, "empty graph6 string")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (fold(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => (fold(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(Error::parse(1, "truncated graph6 size")),
        [b, rest @ ..] => (sextet(*b), rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(Error::parse(
            1,
            format!("expected {} data bytes for n = {n}, got {}", pairs.div_ceil(6), body.len()),
        ));
    }
    let bit = |k: usize| (sextet(body[k / 6]) >> (5 - k % 6)) & 1 == 1;
    if (pairs..body.len() * 6).any(bit) {
        return Err(Error::parse(1, "nonzero padding bits"));
    }
    let mut g = ColoredGraph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn write_rs(r: &RotationSystem) -> String {
    let g = r.graph();
    let mut out = format!("rs 1\nn {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    for v in 0..g.n() {
        out.push_str(&format!("r {}:", v + 1));
        for u in r.cyclic_order(v) {
            out.push_str(&format!(" {}", u + 1));
        }
        out.push('\n');
    }
    out
}

pub fn parse_rs(text: &str) -> Result<RotationSystem> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines, "rs")?;
    let mut g = ColoredGraph::new(n);
    let mut pending = edges(&mut lines, &mut g)?;
    let mut orders = Vec::with_capacity(n);
    for v in 0..n {
        let Some((ln, toks)) = pending else {
            return Err(Error::parse(lines.last + 1, format!("missing rotation of vertex {}", v + 1)));
        };
        if toks.len() < 2 || toks[0] != "r" || toks[1] != format!("{}:", v + 1) {
            return Err(Error::parse(ln, format!("expected `r {}: ...`", v + 1)));
        }
        let order = toks[2..]
            .iter()
            .map(|t| vertex(ln, t, n))
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != g.neighbors(v) {
            return Err(Error::parse(ln, "rotation must list each neighbor once"));
        }
        if order.first() != sorted.first() {
            return Err(Error::parse(ln, "rotation must start at the smallest neighbor"));
        }
        orders.push(order);
        pending = lines.next();
    }
    if let Some((ln, _)) = pending {
        return Err(Error::parse(ln, "trailing line"));
    }
    RotationSystem::from_cyclic_orders(&g, &orders)
}

/// Parses `text` as cg when it starts with the cg header, graph6 otherwise.
pub fn parse_any(text: &str) -> Result<ColoredGraph> {
    if text.starts_with("cg ") {
        parse_cg(text)
    } else {
        parse_graph6(text)
    }
}

//! Text formats for graphs, embeddings, systems, states and cycles, and
//! the JSON orbit certificate.
//!
//! ```text
//! graph 4
//! e 0 1
//! e 1 2
//! label 0 a
//! rot 1 0 2
//! ```
//!
//! Lines starting with `#` and blank lines are skipped. Serialization is
//! canonical: edges sorted, then labels, then rotations, all by vertex.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::legal::{move_span, verify_with, MoveSystem, OrbitReport, Verdict, VerifyOptions};
use crate::planar::EmbeddedGraph;

pub const CERTIFICATE_VERSION: u32 = 1;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines as (1-based number, first word, the rest).
fn lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            return None;
        }
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        Some((i + 1, head, rest.trim()))
    })
}

fn numbers(line: usize, rest: &str) -> Result<Vec<usize>> {
    rest.split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(line, format!("expected a vertex number, got {t:?}"))))
        .collect()
}

fn vertices(line: usize, rest: &str, n: usize) -> Result<Vec<usize>> {
    let vs = numbers(line, rest)?;
    if let Some(v) = vs.iter().find(|&&v| v >= n) {
        return Err(parse_err(line, format!("vertex {v} out of range for n = {n}")));
    }
    Ok(vs)
}

fn header(text: &str, word: &str) -> Result<(usize, usize)> {
    match lines(text).next() {
        Some((l, h, rest)) if h == word => {
            let n = rest
                .parse()
                .map_err(|_| parse_err(l, format!("expected `{word} <n>`, got {rest:?}")))?;
            Ok((l, n))
        }
        Some((l, h, _)) => Err(parse_err(l, format!("expected `{word} <n>`, got {h:?}"))),
        None => Err(parse_err(1, format!("empty input, expected `{word} <n>`"))),
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    if let Some(labels) = g.labels() {
        for (v, l) in labels.iter().enumerate() {
            writeln!(s, "label {v} {l}").unwrap();
        }
    }
    s
}

/// Reads the graph format. `rot` lines are accepted and ignored, so an
/// embedding file is also a graph file.
///
/// ```
/// use legalsys::{io, Graph};
/// let g = io::parse_graph("graph 3\n# path\ne 0 1\ne 1 2\n").unwrap();
/// assert_eq!(g, Graph::path(3));
/// assert_eq!(io::write_graph(&g), "graph 3\ne 0 1\ne 1 2\n");
/// assert!(io::parse_graph("graph 3\ne 0 5\n").is_err());
/// ```
pub fn parse_graph(text: &str) -> Result<Graph> {
    let (_, n) = header(text, "graph")?;
    let mut g = Graph::new(n);
    let mut labels: Vec<Option<String>> = vec![None; n];
    for (l, head, rest) in lines(text).skip(1) {
        match head {
            "e" => {
                let vs = vertices(l, rest, n)?;
                let [u, v] = vs[..] else {
                    return Err(parse_err(l, "an edge line needs two vertices"));
                };
                if u == v {
                    return Err(parse_err(l, format!("loop at {u}")));
                }
                if g.has_edge(u, v) {
                    return Err(parse_err(l, format!("duplicate edge {u} {v}")));
                }
                g.add_edge(u, v)?;
            }
            "label" => {
                let (v, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let v = vertices(l, v, n)?[0];
                let text = text.trim();
                if text.is_empty() {
                    return Err(parse_err(l, "empty label"));
                }
                if labels[v].replace(text.to_string()).is_some() {
                    return Err(parse_err(l, format!("vertex {v} labelled twice")));
                }
            }
            "rot" => {}
            "graph" => return Err(parse_err(l, "second `graph` header")),
            other => return Err(parse_err(l, format!("unknown directive {other:?}"))),
        }
    }
    if labels.iter().any(Option::is_some) {
        let labels: Vec<String> = labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.unwrap_or_else(|| v.to_string()))
            .collect();
        g = g.with_labels(labels);
    }
    Ok(g)
}

pub fn write_embedded(e: &EmbeddedGraph) -> String {
    let mut s = write_graph(e.graph());
    for (v, r) in e.rotation().iter().enumerate() {
        s.push_str("rot ");
        s.push_str(&join(std::iter::once(v).chain(r.iter().copied())));
        s.push('\n');
    }
    s
}

pub fn parse_embedded(text: &str) -> Result<EmbeddedGraph> {
    let g = parse_graph(text)?;
    let n = g.n();
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut last = 1;
    for (l, head, rest) in lines(text) {
        last = l;
        if head != "rot" {
            continue;
        }
        let vs = vertices(l, rest, n)?;
        let Some((&v, around)) = vs.split_first() else {
            return Err(parse_err(l, "empty rotation line"));
        };
        if rotation[v].replace(around.to_vec()).is_some() {
            return Err(parse_err(l, format!("two rotations at {v}")));
        }
    }
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| parse_err(last, format!("no rotation given at vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    EmbeddedGraph::new(g, rotation)
}

fn join(it: impl IntoIterator<Item = usize>) -> String {
    it.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Move system and optional start state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub system: MoveSystem,
    pub state: Option<VertexSet>,
}

pub fn write_system(m: &MoveSystem, state: Option<&VertexSet>) -> String {
    let mut s = format!("system {}\n", m.n());
    for (v, mv) in m.moves().iter().enumerate() {
        writeln!(s, "m {v} {}", join(mv.iter())).unwrap();
    }
    if let Some(st) = state {
        writeln!(s, "state {}", join(st.iter())).unwrap();
    }
    s
}

/// Reads the system format; every vertex needs exactly one `m` line that lists it.
///
/// ```
/// use legalsys::io;
/// let f = io::parse_system("system 2\nm 0 0\nm 1 1\nstate 0\n").unwrap();
/// assert_eq!(f.state.unwrap().to_vec(), vec![0]);
/// let err = io::parse_system("system 2\nm 0 1\nm 1 1\n").unwrap_err();
/// assert_eq!(err.to_string(), "line 2: the move at 0 must contain 0");
/// ```
pub fn parse_system(text: &str) -> Result<SystemFile> {
    let (first, n) = header(text, "system")?;
    let mut moves: Vec<Option<VertexSet>> = vec![None; n];
    let mut state = None;
    for (l, head, rest) in lines(text).skip(1) {
        match head {
            "m" => {
                let vs = vertices(l, rest, n)?;
                let Some((&v, members)) = vs.split_first() else {
                    return Err(parse_err(l, "empty move line"));
                };
                if !members.contains(&v) {
                    return Err(parse_err(l, format!("the move at {v} must contain {v}")));
                }
                if moves[v].replace(VertexSet::from_iter(n, members.iter().copied())).is_some() {
                    return Err(parse_err(l, format!("two moves at {v}")));
                }
            }
            "state" => {
                if state.is_some() {
                    return Err(parse_err(l, "second state line"));
                }
                state = Some(VertexSet::from_iter(n, vertices(l, rest, n)?));
            }
            "system" => return Err(parse_err(l, "second `system` header")),
            other => return Err(parse_err(l, format!("unknown directive {other:?}"))),
        }
    }
    let moves = moves
        .into_iter()
        .enumerate()
        .map(|(v, m)| m.ok_or_else(|| parse_err(first, format!("no move given at vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SystemFile {
        system: MoveSystem::new(moves)?,
        state,
    })
}

pub fn write_state(s: &VertexSet) -> String {
    format!("state {}\n", join(s.iter()))
}

/// A lone `state` line, as emitted by [`write_state`], or a system file's state.
pub fn parse_state(text: &str, n: usize) -> Result<VertexSet> {
    let mut found = None;
    for (l, head, rest) in lines(text) {
        match head {
            "state" if found.is_none() => found = Some(VertexSet::from_iter(n, vertices(l, rest, n)?)),
            "state" => return Err(parse_err(l, "second state line")),
            "system" | "m" => {}
            other => return Err(parse_err(l, format!("unknown directive {other:?}"))),
        }
    }
    found.ok_or_else(|| parse_err(1, "no state line"))
}

pub fn write_cycle(c: &[usize]) -> String {
    format!("cycle {}\n", join(c.iter().copied()))
}

pub fn parse_cycle(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut it = lines(text);
    match (it.next(), it.next()) {
        (Some((l, "cycle", rest)), None) => vertices(l, rest, n),
        (Some((l, _, _)), None) => Err(parse_err(l, "expected `cycle v1 v2 …`")),
        (_, Some((l, _, _))) => Err(parse_err(l, "a cycle file has a single line")),
        (None, None) => Err(parse_err(1, "empty input")),
    }
}

/// Hex SHA-256 of the canonical graph text.
pub fn graph_digest(g: &Graph) -> String {
    Sha256::digest(write_graph(g).as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertWitness {
    pub index: u64,
    pub state: Vec<usize>,
    /// Coefficients over the reduced basis of the move group.
    pub coefficients: Vec<u8>,
    /// Vertices whose moves reach the state from the start.
    pub moves: Vec<usize>,
}

/// Outcome of one orbit verification, replayable from the graph and system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `sha256:` and the hex digest of the canonical graph text.
    pub graph: String,
    /// Move at each vertex.
    pub system: Vec<Vec<usize>>,
    pub state: Vec<usize>,
    pub rank: u32,
    pub orbit_size: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<CertWitness>,
    pub version: u32,
}

impl Certificate {
    pub fn new(g: &Graph, m: &MoveSystem, s: &VertexSet, report: &OrbitReport) -> Self {
        Certificate {
            graph: format!("sha256:{}", graph_digest(g)),
            system: m.moves().iter().map(VertexSet::to_vec).collect(),
            state: s.to_vec(),
            rank: report.rank,
            orbit_size: report.orbit_size,
            verdict: report.verdict,
            witness: report.witness.as_ref().map(|w| CertWitness {
                index: w.index,
                state: w.state.to_vec(),
                coefficients: w.coefficients.clone(),
                moves: w.moves.to_vec(),
            }),
            version: CERTIFICATE_VERSION,
        }
    }

    /// Pretty JSON with a trailing newline; byte-stable.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
    }

    /// Whether the fields that carry the verdict agree.
    pub fn same_verdict(&self, other: &Certificate) -> bool {
        (self.rank, self.orbit_size, self.verdict, &self.witness)
            == (other.rank, other.orbit_size, other.verdict, &other.witness)
    }

    /// Checks the certificate against `g`: digest, the witness replayed from
    /// its coefficients, then a fresh walk of the orbit.
    pub fn replay(&self, g: &Graph) -> Result<bool> {
        if self.graph != format!("sha256:{}", graph_digest(g)) {
            return Ok(false);
        }
        let n = g.n();
        let moves = self.system.iter().map(|m| VertexSet::from_iter(n, m.iter().copied())).collect();
        let m = MoveSystem::new(moves)?;
        let s = VertexSet::from_iter(n, self.state.iter().copied());
        if let Some(w) = &self.witness {
            let basis = move_span(&m);
            if w.coefficients.len() != basis.rank() || w.coefficients.len() > 64 {
                return Ok(false);
            }
            let c = w.coefficients.iter().enumerate().fold(0u64, |c, (j, &b)| c | (b as u64 & 1) << j);
            let reached = basis.combine(c).xor(&s);
            if reached != VertexSet::from_iter(n, w.state.iter().copied()) || crate::graph::is_legal_state(g, &reached) {
                return Ok(false);
            }
        }
        let report = verify_with(g, &m, &s, &VerifyOptions::default())?;
        Ok(self.same_verdict(&Certificate::new(g, &m, &s, &report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::legal::verify_legal_orbit;

    #[test]
    fn labels_survive_a_round_trip() {
        let b = families::wagner();
        let text = write_graph(&b.graph);
        let g = parse_graph(&text).unwrap();
        assert_eq!(g, b.graph);
        assert_eq!(write_graph(&g), text);
    }

    #[test]
    fn embedding_round_trip() {
        let b = families::hypercube(3).unwrap();
        let e = b.embedding.unwrap();
        let text = write_embedded(&e);
        let back = parse_embedded(&text).unwrap();
        assert_eq!(back.rotation(), e.rotation());
        assert_eq!(write_embedded(&back), text);
        assert_eq!(parse_graph(&text).unwrap(), b.graph);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "graph 3\n\n# c\ne 0 1\ne 1 x\n";
        assert!(matches!(parse_graph(bad), Err(Error::Parse { line: 5, .. })));
        assert!(matches!(parse_graph("graph 2\ne 0 1\ne 1 0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_system("system 2\nm 0 0\nfoo\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_system("system 2\nm 0 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_embedded("graph 2\ne 0 1\nrot 0 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn state_and_cycle_lines() {
        let s = VertexSet::from_iter(5, [1, 3]);
        assert_eq!(parse_state(&write_state(&s), 5).unwrap(), s);
        assert_eq!(parse_cycle(&write_cycle(&[0, 2, 1]), 3).unwrap(), vec![0, 2, 1]);
        assert!(parse_cycle("cycle 0 1\ncycle 1 0\n", 2).is_err());
    }

    #[test]
    fn certificate_replays_and_detects_tampering() {
        let b = families::example_2_3();
        let (m, _) = b.witness.clone().unwrap();
        let s = VertexSet::from_iter(4, [0, 1, 3]);
        let report = verify_legal_orbit(&b.graph, &m, &s).unwrap();
        let cert = Certificate::new(&b.graph, &m, &s, &report);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert!(back.replay(&b.graph).unwrap());
        let mut forged = cert.clone();
        forged.verdict = Verdict::Legal;
        forged.witness = None;
        assert!(!forged.replay(&b.graph).unwrap());
        let mut moved = cert;
        if let Some(w) = moved.witness.as_mut() {
            w.coefficients[0] ^= 1;
        }
        assert!(!moved.replay(&b.graph).unwrap());
    }
}

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::graph::{perfect_antimatching, Graph};
use crate::legal::{verify_legal_orbit, MoveSystem, LAWFUL_THRESHOLD};
use crate::planar::tbws_check;

/// Random transversals drawn by every spot check.
pub const SPOT_CHECKS: usize = 500;

/// Splits tried by the intermediate pipeline, the fixed one included.
pub const MAX_SPLITS: usize = 5;

/// Exhaustive transversal checks in the high-density pipeline stop at this many pairs.
pub const EXHAUSTIVE_PAIRS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure {
    TooSmall,
    NoAntimatching { side: char },
    AuxiliaryDisconnected,
    ClosureIncomplete,
    OddLeftoverUnattached { vertex: usize },
    CompleteGraph,
    TransversalDisconnected { transversal: Vec<usize> },
    LeftoverUnattached { vertex: usize, transversal: Vec<usize> },
    NotBipartite,
    SideDisconnected { condition: String, witness: Vec<usize> },
}

impl Failure {
    /// Short tag used when tallying failures.
    pub fn reason(&self) -> String {
        match self {
            Failure::TooSmall => "too few vertices".into(),
            Failure::NoAntimatching { side } => format!("no antimatching in {side}"),
            Failure::AuxiliaryDisconnected => "auxiliary disconnected".into(),
            Failure::ClosureIncomplete => "closure incomplete".into(),
            Failure::OddLeftoverUnattached { .. } => "odd leftover unattached".into(),
            Failure::CompleteGraph => "complete graph".into(),
            Failure::TransversalDisconnected { .. } => "transversal disconnected".into(),
            Failure::LeftoverUnattached { .. } => "unmatched vertex unattached".into(),
            Failure::NotBipartite => "sides are not a bipartition".into(),
            Failure::SideDisconnected { condition, .. } => format!("{condition} fails"),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.reason())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// Proven: by a certificate, or by walking every state.
    Verified,
    /// Only random transversals were checked.
    Probabilistic,
}

/// One closure step: pair `pair` joins because each of its two vertices is
/// adjacent to both vertices of the already-closed pair `support[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureStep {
    pub pair: usize,
    pub support: [usize; 2],
}

/// Proof that every transversal of `pairs` is connected, plus the
/// attachment of the odd vertex out.
///
/// Whatever a transversal picks from a joining pair is adjacent to whatever
/// it picks from the supporting pairs, so the picks of closed pairs stay in
/// one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub pairs: Vec<(usize, usize)>,
    pub root: usize,
    pub steps: Vec<ClosureStep>,
    /// Vertex left out for odd n and a pair both of whose vertices it sees.
    pub leftover: Option<(usize, usize)>,
}

impl ClosureCertificate {
    fn check(&self, g: &Graph) -> bool {
        let n = g.n();
        let mut seen = vec![false; n];
        let mut mark = |v: usize| v < n && !std::mem::replace(&mut seen[v], true);
        for &(a, b) in &self.pairs {
            if !mark(a) || !mark(b) || g.has_edge(a, b) {
                return false;
            }
        }
        if let Some((x, _)) = self.leftover {
            if !mark(x) {
                return false;
            }
        }
        if seen.iter().any(|s| !s) || self.root >= self.pairs.len() {
            return false;
        }
        let sees_both = |x: usize, p: usize| {
            let (a, b) = self.pairs[p];
            g.has_edge(x, a) && g.has_edge(x, b)
        };
        let mut closed = vec![false; self.pairs.len()];
        closed[self.root] = true;
        for st in &self.steps {
            if st.pair >= closed.len() || closed[st.pair] {
                return false;
            }
            let (a, b) = self.pairs[st.pair];
            for (x, s) in [a, b].into_iter().zip(st.support) {
                if s >= closed.len() || !closed[s] || !sees_both(x, s) {
                    return false;
                }
            }
            closed[st.pair] = true;
        }
        if closed.iter().any(|c| !c) {
            return false;
        }
        match self.leftover {
            Some((x, p)) => p < self.pairs.len() && sees_both(x, p),
            None => true,
        }
    }

    fn system_and_state(&self, n: usize) -> (MoveSystem, VertexSet) {
        let mut classes: Vec<VertexSet> = self.pairs.iter().map(|&(a, b)| VertexSet::from_iter(n, [a, b])).collect();
        if let Some((x, _)) = self.leftover {
            classes.push(VertexSet::from_iter(n, [x]));
        }
        let state = VertexSet::from_iter(n, self.pairs.iter().map(|p| p.0));
        (MoveSystem::colored(n, &classes).expect("pairs partition the vertices"), state)
    }
}

/// Which case of the high-density construction applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// The complement is a single edge.
    One,
    /// A maximal matching of the complement.
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Closure(ClosureCertificate),
    /// Pairs from a matching of the complement, singletons elsewhere.
    Transversals {
        case: Case,
        matching: Vec<(usize, usize)>,
        unmatched: Vec<usize>,
    },
    /// Halves of the two sides of a bipartite graph.
    Sides {
        a1: Vec<usize>,
        a2: Vec<usize>,
        b1: Vec<usize>,
        b2: Vec<usize>,
    },
}

impl Certificate {
    /// The system and start state the certificate speaks about.
    pub fn system_and_state(&self, n: usize) -> (MoveSystem, VertexSet) {
        match self {
            Certificate::Closure(c) => c.system_and_state(n),
            Certificate::Transversals { matching, .. } => matching_system(n, matching),
            Certificate::Sides { a1, a2, b1, .. } => {
                let a = VertexSet::from_iter(n, a1.iter().chain(a2).copied());
                let system = MoveSystem::colored(n, &[a.clone(), a.complement()]).expect("two sides");
                (system, VertexSet::from_iter(n, a1.iter().chain(b1).copied()))
            }
        }
    }

    /// Re-derives the verdict from the certificate alone.
    pub fn recheck(&self, g: &Graph) -> Result<Verification, Failure> {
        let n = g.n();
        match self {
            Certificate::Closure(c) => {
                if c.check(g) {
                    Ok(Verification::Verified)
                } else {
                    Err(Failure::ClosureIncomplete)
                }
            }
            Certificate::Transversals { matching, unmatched, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                check_transversals(g, matching, unmatched, &mut rng)
            }
            Certificate::Sides { a1, a2, b1, b2 } => {
                let set = |xs: &[usize]| VertexSet::from_iter(n, xs.iter().copied());
                let v = tbws_check(g, &set(a1), &set(a2), &set(b1), &set(b2)).map_err(|_| Failure::NotBipartite)?;
                match v.verdict.conditions.iter().find(|c| !c.pass) {
                    None => Ok(Verification::Verified),
                    Some(c) => Err(Failure::SideDisconnected {
                        condition: c.name.clone(),
                        witness: c.witness.clone().unwrap_or_default(),
                    }),
                }
            }
        }
    }
}

fn matching_system(n: usize, matching: &[(usize, usize)]) -> (MoveSystem, VertexSet) {
    let mut classes: Vec<VertexSet> = matching.iter().map(|&(a, b)| VertexSet::from_iter(n, [a, b])).collect();
    let covered = classes.iter().fold(VertexSet::empty(n), |acc, c| acc.or(c));
    classes.extend(covered.complement().iter().map(|v| VertexSet::from_iter(n, [v])));
    let state = VertexSet::from_iter(n, matching.iter().map(|p| p.0));
    (MoveSystem::colored(n, &classes).expect("matching plus singletons"), state)
}

#[derive(Clone, Debug)]
pub struct IntermediateSuccess {
    pub system: MoveSystem,
    pub state: VertexSet,
    pub certificate: ClosureCertificate,
    /// Splits tried, 1 when the fixed split worked.
    pub attempts: usize,
    /// Whether the auxiliary bipartite graphs on (A, M_B) and (B, M_A) were connected.
    pub auxiliary_connected: (bool, bool),
    /// Whole orbit walked (small antimatchings only).
    pub exhaustive: bool,
}

fn random_transversal<R: Rng + ?Sized>(n: usize, pairs: &[(usize, usize)], rng: &mut R) -> VertexSet {
    VertexSet::from_iter(n, pairs.iter().map(|&(a, b)| if rng.random_bool(0.5) { a } else { b }))
}

/// Pair closure from some root; `None` when no root closes everything.
fn close_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Option<(usize, Vec<ClosureStep>)> {
    let sees_both = |x: usize, p: usize| g.has_edge(x, pairs[p].0) && g.has_edge(x, pairs[p].1);
    for root in 0..pairs.len() {
        let mut closed = vec![false; pairs.len()];
        closed[root] = true;
        let mut order = vec![root];
        let mut steps = Vec::new();
        let mut grew = true;
        while grew {
            grew = false;
            for q in 0..pairs.len() {
                if closed[q] {
                    continue;
                }
                let find = |x: usize| order.iter().copied().find(|&p| sees_both(x, p));
                if let (Some(s0), Some(s1)) = (find(pairs[q].0), find(pairs[q].1)) {
                    steps.push(ClosureStep { pair: q, support: [s0, s1] });
                    closed[q] = true;
                    order.push(q);
                    grew = true;
                }
            }
        }
        if order.len() == pairs.len() {
            return Some((root, steps));
        }
    }
    None
}

/// Connectivity of the bipartite graph (side, pairs) where `u` meets a pair
/// when it sees both of its vertices.
fn auxiliary_connected(g: &Graph, side: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut aux = Graph::new(side.len() + pairs.len());
    for (i, &u) in side.iter().enumerate() {
        for (j, &(a, b)) in pairs.iter().enumerate() {
            if g.has_edge(u, a) && g.has_edge(u, b) {
                aux.add_edge(i, side.len() + j).expect("in range");
            }
        }
    }
    aux.is_connected()
}

fn antimatching_on(g: &Graph, part: &[usize], side: char) -> Result<Vec<(usize, usize)>, Failure> {
    let s = VertexSet::from_iter(g.n(), part.iter().copied());
    let (h, map) = g.induced_subgraph(&s);
    let am = perfect_antimatching(&h).map_err(|_| Failure::NoAntimatching { side })?;
    Ok(am.into_iter().map(|(a, b)| (map[a].min(map[b]), map[a].max(map[b]))).collect())
}

fn intermediate_split(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    leftover: Option<usize>,
) -> Result<(ClosureCertificate, (bool, bool)), Failure> {
    let ma = antimatching_on(g, a, 'A')?;
    let mb = antimatching_on(g, b, 'B')?;
    let aux = (auxiliary_connected(g, a, &mb), auxiliary_connected(g, b, &ma));
    let mut pairs = ma;
    pairs.extend(mb);
    let Some((root, steps)) = close_pairs(g, &pairs) else {
        return Err(if aux.0 && aux.1 {
            Failure::ClosureIncomplete
        } else {
            Failure::AuxiliaryDisconnected
        });
    };
    let leftover = match leftover {
        None => None,
        Some(x) => {
            let p = (0..pairs.len())
                .find(|&p| g.has_edge(x, pairs[p].0) && g.has_edge(x, pairs[p].1))
                .ok_or(Failure::OddLeftoverUnattached { vertex: x })?;
            Some((x, p))
        }
    };
    Ok((ClosureCertificate { pairs, root, steps, leftover }, aux))
}

/// Antimatching system from two even halves of the vertex set.
///
/// Builds perfect antimatchings M_A, M_B inside the halves and certifies
/// that every transversal of M_A ∪ M_B is connected by a pair closure. For
/// odd n the last vertex is set aside and must see both vertices of some
/// pair; it then moves on its own. The fixed split (first half rounded up
/// to even) is tried first, then random splits, [`MAX_SPLITS`] in all.
pub fn intermediate_pipeline<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<IntermediateSuccess, Failure> {
    let n = g.n();
    let (core, leftover) = if n % 2 == 1 { (n - 1, Some(n - 1)) } else { (n, None) };
    if core < 4 {
        return Err(Failure::TooSmall);
    }
    let half = core.div_ceil(2);
    let a_len = half + half % 2;
    let mut order: Vec<usize> = (0..core).collect();
    let mut last = Failure::TooSmall;
    for attempt in 1..=MAX_SPLITS {
        if attempt > 1 {
            order.shuffle(rng);
        }
        let (a, b) = order.split_at(a_len);
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        match intermediate_split(g, &a, &b, leftover) {
            Ok((certificate, aux)) => {
                let (system, state) = certificate.system_and_state(n);
                let rank = certificate.pairs.len() + leftover.is_some() as usize;
                let exhaustive = rank <= LAWFUL_THRESHOLD;
                if exhaustive {
                    let report = verify_legal_orbit(g, &system, &state).expect("widths agree");
                    assert!(report.is_legal(), "closure certificate contradicted by the orbit walk");
                }
                for _ in 0..SPOT_CHECKS {
                    let mut t = random_transversal(n, &certificate.pairs, rng);
                    if let Some((x, _)) = certificate.leftover {
                        if rng.random_bool(0.5) {
                            t.insert(x);
                        }
                    }
                    assert!(crate::graph::is_legal_state(g, &t), "closure certificate contradicted by {t}");
                }
                return Ok(IntermediateSuccess {
                    system,
                    state,
                    certificate,
                    attempts: attempt,
                    auxiliary_connected: aux,
                    exhaustive,
                });
            }
            Err(f) => last = f,
        }
    }
    Err(last)
}

#[derive(Clone, Debug)]
pub struct HighSuccess {
    pub case: Case,
    pub system: MoveSystem,
    pub state: VertexSet,
    pub matching: Vec<(usize, usize)>,
    pub unmatched: Vec<usize>,
    pub verification: Verification,
}

/// Checks that each transversal `T` of the matching is connected and that
/// every unmatched vertex has a neighbour in `T`: exhaustively up to
/// [`EXHAUSTIVE_PAIRS`] pairs, on [`SPOT_CHECKS`] random transversals beyond.
fn check_transversals<R: Rng + ?Sized>(
    g: &Graph,
    matching: &[(usize, usize)],
    unmatched: &[usize],
    rng: &mut R,
) -> Result<Verification, Failure> {
    let n = g.n();
    let k = matching.len();
    let check = |t: &VertexSet| -> Result<(), Failure> {
        if !crate::graph::induced_connected(g, t).unwrap_or(false) {
            return Err(Failure::TransversalDisconnected { transversal: t.to_vec() });
        }
        if let Some(&d) = unmatched.iter().find(|&&d| !g.neighbors(d).intersects(t)) {
            return Err(Failure::LeftoverUnattached {
                vertex: d,
                transversal: t.to_vec(),
            });
        }
        Ok(())
    };
    if k == 0 {
        return Err(Failure::CompleteGraph);
    }
    if k <= EXHAUSTIVE_PAIRS {
        for bits in 0..1u64 << k {
            let t = VertexSet::from_iter(
                n,
                matching.iter().enumerate().map(|(i, &(a, b))| if bits >> i & 1 == 0 { a } else { b }),
            );
            check(&t)?;
        }
        Ok(Verification::Verified)
    } else {
        for _ in 0..SPOT_CHECKS {
            check(&random_transversal(n, matching, rng))?;
        }
        Ok(Verification::Probabilistic)
    }
}

/// Systems for nearly complete graphs, read off the complement H.
///
/// When H is a single edge vw the moves are {v, w} and singletons, start
/// {v}. Otherwise a maximal matching of H is grown greedily in ascending
/// edge order; its edges are the pair moves, every other vertex moves alone,
/// and the start holds one vertex per pair.
pub fn high_density_pipeline<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<HighSuccess, Failure> {
    let n = g.n();
    let h = g.complement_graph();
    let edges = h.edges();
    if edges.is_empty() {
        return Err(Failure::CompleteGraph);
    }
    let case = if edges.len() == 1 { Case::One } else { Case::Two };
    let mut used = vec![false; n];
    let mut matching = Vec::new();
    for (u, v) in edges {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            matching.push((u, v));
        }
    }
    let unmatched: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
    let verification = check_transversals(g, &matching, &unmatched, rng)?;
    let (system, state) = matching_system(n, &matching);
    Ok(HighSuccess {
        case,
        system,
        state,
        matching,
        unmatched,
        verification,
    })
}

#[derive(Clone, Debug)]
pub struct BipartiteSuccess {
    pub system: MoveSystem,
    pub state: VertexSet,
    /// A₁, A₂, B₁, B₂.
    pub sides: [Vec<usize>; 4],
}

/// The side system {A, B} with each side halved in index order (the first
/// half takes the odd vertex out) and the two-sided criterion checked on
/// all four unions.
pub fn bipartite_pipeline(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<BipartiteSuccess, Failure> {
    let n = g.n();
    if a.width() != n || b.width() != n || a.intersects(b) || !a.or(b).is_full() {
        return Err(Failure::NotBipartite);
    }
    if a.len() < 2 || b.len() < 2 {
        return Err(Failure::TooSmall);
    }
    let halve = |s: &VertexSet| {
        let v = s.to_vec();
        let (x, y) = v.split_at(v.len().div_ceil(2));
        (x.to_vec(), y.to_vec())
    };
    let (a1, a2) = halve(a);
    let (b1, b2) = halve(b);
    let cert = Certificate::Sides { a1, a2, b1, b2 };
    cert.recheck(g)?;
    let (system, state) = cert.system_and_state(n);
    let Certificate::Sides { a1, a2, b1, b2 } = cert else { unreachable!() };
    Ok(BipartiteSuccess {
        system,
        state,
        sides: [a1, a2, b1, b2],
    })
}

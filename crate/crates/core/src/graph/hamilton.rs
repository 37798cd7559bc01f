use super::Graph;
use crate::bits::VertexSet;
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Result of an exhaustive search that ran to completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonOutcome {
    /// A cycle through every vertex, starting at vertex 0; `None` is a proof of absence.
    pub cycle: Option<Vec<usize>>,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// Backtracking search that extends a path from vertex 0.
#[derive(Clone, Copy, Debug)]
pub struct HamiltonSearch {
    pub budget: u64,
}

impl Default for HamiltonSearch {
    fn default() -> Self {
        HamiltonSearch {
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Hamiltonian cycle or certified absence, with the default node budget.
///
/// ```
/// use legalsys::graph::{find_hamiltonian_cycle, Graph};
/// assert_eq!(find_hamiltonian_cycle(&Graph::cycle(5)).unwrap(), Some(vec![0, 1, 2, 3, 4]));
/// assert_eq!(find_hamiltonian_cycle(&Graph::complete_bipartite(2, 3)).unwrap(), None);
/// ```
pub fn find_hamiltonian_cycle(g: &Graph) -> Result<Option<Vec<usize>>> {
    HamiltonSearch::default().run(g).map(|o| o.cycle)
}

pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

struct Run<'a> {
    g: &'a Graph,
    start: usize,
    path: Vec<usize>,
    free: VertexSet,
    nodes: u64,
    budget: u64,
}

impl HamiltonSearch {
    pub fn run(&self, g: &Graph) -> Result<HamiltonOutcome> {
        let n = g.n();
        if n < 3 {
            return Ok(HamiltonOutcome {
                cycle: None,
                nodes: 0,
            });
        }
        let mut free = g.vertices();
        free.remove(0);
        let mut run = Run {
            g,
            start: 0,
            path: vec![0],
            free,
            nodes: 0,
            budget: self.budget,
        };
        let found = run.extend(0)?;
        Ok(HamiltonOutcome {
            cycle: found.then(|| run.path.clone()),
            nodes: run.nodes,
        })
    }
}

impl Run<'_> {
    fn extend(&mut self, end: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Timeout {
                budget: self.budget,
            });
        }
        let g = self.g;
        if self.free.is_empty() {
            return Ok(g.has_edge(end, self.start));
        }
        let at_root = end == self.start;

        let mut open = self.free.clone();
        open.insert(end);
        open.insert(self.start);

        let mut forced = None;
        for u in self.free.iter() {
            let avail = g
                .row(u)
                .iter()
                .zip(open.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if avail < 2 {
                return Ok(false);
            }
            if !at_root && avail == 2 && g.has_edge(u, end) {
                if forced.is_some() {
                    return Ok(false);
                }
                forced = Some(u);
            }
        }
        if !at_root && !g.neighbors(self.start).intersects(&self.free) {
            return Ok(false);
        }
        let extra = (!at_root).then_some((end, self.start));
        if !biconnected(g, &open, extra) {
            return Ok(false);
        }

        let cands: Vec<usize> = match forced {
            Some(u) => vec![u],
            None => g.neighbors(end).and(&self.free).to_vec(),
        };
        for c in cands {
            self.path.push(c);
            self.free.remove(c);
            if self.extend(c)? {
                return Ok(true);
            }
            self.free.insert(c);
            self.path.pop();
        }
        Ok(false)
    }
}

/// Whether `G[w]`, plus the optional extra edge, is 2-connected.
/// Sets of one or two vertices count as 2-connected when connected.
fn biconnected(g: &Graph, w: &VertexSet, extra: Option<(usize, usize)>) -> bool {
    let verts = w.to_vec();
    let k = verts.len();
    let mut disc = vec![u32::MAX; g.n()];
    let mut low = vec![0u32; g.n()];
    let mut timer = 0u32;
    let root = verts[0];

    let nbrs = |v: usize| -> Vec<usize> {
        let mut out: Vec<usize> = g.neighbors(v).and(w).to_vec();
        if let Some((a, b)) = extra {
            if v == a && !out.contains(&b) {
                out.push(b);
            } else if v == b && !out.contains(&a) {
                out.push(a);
            }
        }
        out
    };

    // Iterative lowlink DFS.
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(root, usize::MAX, nbrs(root))];
    disc[root] = 0;
    low[root] = 0;
    timer += 1;
    let mut root_children = 0;
    let mut cut = false;
    while let Some((v, p, pending)) = stack.last_mut() {
        let (v, p) = (*v, *p);
        if let Some(u) = pending.pop() {
            if disc[u] == u32::MAX {
                disc[u] = timer;
                low[u] = timer;
                timer += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((u, v, nbrs(u)));
            } else if u != p {
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            if p != usize::MAX {
                low[p] = low[p].min(low[v]);
                if p != root && low[v] >= disc[p] {
                    cut = true;
                    break;
                }
            }
        }
    }
    if cut || timer as usize != k {
        return false;
    }
    k <= 2 || root_children < 2
}

/// Reference search over all orderings of the vertices other than 0.
pub fn hamiltonian_cycle_naive(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut found = None;
    permute(&mut rest, 0, &mut |p| {
        let mut cyc = vec![0];
        cyc.extend_from_slice(p);
        if is_hamiltonian_cycle(g, &cyc) {
            found = Some(cyc);
            true
        } else {
            false
        }
    });
    found
}

fn permute(a: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == a.len() {
        return visit(a);
    }
    for i in k..a.len() {
        a.swap(k, i);
        if permute(a, k + 1, visit) {
            return true;
        }
        a.swap(k, i);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_graph_is_its_own_cycle() {
        for n in 3..12 {
            let c = find_hamiltonian_cycle(&Graph::cycle(n)).unwrap().unwrap();
            assert_eq!(c, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn petersen_has_none() {
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let g = Graph::from_edges(10, edges).unwrap();
        assert_eq!(find_hamiltonian_cycle(&g).unwrap(), None);
    }

    #[test]
    fn budget_exhaustion_is_not_absence() {
        let g = Graph::complete_bipartite(6, 7);
        let r = HamiltonSearch { budget: 3 }.run(&g);
        assert_eq!(r, Err(Error::Timeout { budget: 3 }));
    }

    #[test]
    fn tiny_graphs_have_no_cycle() {
        assert_eq!(find_hamiltonian_cycle(&Graph::new(0)).unwrap(), None);
        assert_eq!(find_hamiltonian_cycle(&Graph::path(2)).unwrap(), None);
    }

    #[test]
    fn biconnectivity_helper() {
        let g = Graph::path(4);
        assert!(!biconnected(&g, &g.vertices(), None));
        assert!(biconnected(&g, &g.vertices(), Some((0, 3))));
    }
}

use num_rational::Ratio;

use super::Graph;
use crate::bits::VertexSet;

/// Counts of i-cliques (cliques on i+1 vertices) for i = −1, 0, 1, ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCensus {
    /// `by_size[j]` is the number of cliques with `j` vertices.
    by_size: Vec<u64>,
}

impl CliqueCensus {
    /// |K_i|; zero past the computed range.
    pub fn get(&self, i: isize) -> u64 {
        assert!(i >= -1);
        self.by_size.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Largest i with K_i computed.
    pub fn i_max(&self) -> isize {
        self.by_size.len() as isize - 2
    }

    pub fn by_size(&self) -> &[u64] {
        &self.by_size
    }
}

/// Census of cliques up to dimension `i_max` (at most `i_max + 1` vertices).
pub fn clique_census(g: &Graph, i_max: usize) -> CliqueCensus {
    let max_size = i_max + 1;
    let mut by_size = vec![0u64; max_size + 1];
    by_size[0] = 1;
    let mut cand = VertexSet::empty(g.n());
    for v in 0..g.n() {
        // neighbours above v
        cand.words_mut().iter_mut().for_each(|w| *w = 0);
        for u in g.neighbor_iter(v).filter(|&u| u > v) {
            cand.insert(u);
        }
        extend(g, &cand, 1, max_size, &mut by_size);
    }
    CliqueCensus { by_size }
}

fn extend(g: &Graph, cand: &VertexSet, size: usize, max_size: usize, by_size: &mut [u64]) {
    by_size[size] += 1;
    if size == max_size {
        return;
    }
    for u in cand.iter() {
        let mut next = cand.and(&g.neighbors(u));
        for x in 0..=u {
            next.remove(x);
        }
        extend(g, &next, size + 1, max_size, by_size);
    }
}

/// All cliques with at most `max_size` vertices, including the empty one.
pub fn cliques(g: &Graph, max_size: usize) -> Vec<VertexSet> {
    fn rec(g: &Graph, cur: &mut Vec<usize>, cand: Vec<usize>, max: usize, out: &mut Vec<VertexSet>) {
        out.push(VertexSet::from_iter(g.n(), cur.iter().copied()));
        if cur.len() == max {
            return;
        }
        for (i, &u) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(u, w))
                .collect();
            cur.push(u);
            rec(g, cur, next, max, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, &mut Vec::new(), (0..g.n()).collect(), max_size, &mut out);
    out
}

/// Truncation level for [`curvature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Cliques with at most this many vertices.
    Finite(usize),
    Infinite,
}

/// κₙ(Γ): the sum of (−1/2)^{i+1} |K_i| over cliques with at most n
/// vertices, exactly. κ₂ = 1 − |V|/2 + |E|/4.
///
/// ```
/// use legalsys::graph::{curvature, Graph, Order};
/// use num_rational::Ratio;
/// let k4 = Graph::complete(4);
/// // 1 − 4/2 + 6/4 − 4/8 + 1/16
/// assert_eq!(curvature(&k4, Order::Infinite), Ratio::new(1, 16));
/// assert_eq!(curvature(&k4, Order::Finite(2)), Ratio::new(1, 2));
/// ```
pub fn curvature(g: &Graph, n: Order) -> Ratio<i128> {
    let census = match n {
        Order::Finite(k) => clique_census(g, k.max(1) - 1),
        Order::Infinite => clique_census(g, g.n()),
    };
    let keep = match n {
        Order::Finite(k) => k + 1,
        Order::Infinite => usize::MAX,
    };
    let mut total = Ratio::from_integer(0i128);
    let mut weight = Ratio::from_integer(1i128);
    let used = census.by_size().iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    for &c in &census.by_size()[..used.min(keep)] {
        total += weight * Ratio::from_integer(c as i128);
        weight *= Ratio::new(-1, 2);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples_oracle(g: &Graph) -> u64 {
        let n = g.n();
        let mut c = 0;
        for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(b, d) && g.has_edge(a, d) {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn triangle_census() {
        let c = clique_census(&Graph::complete(3), 5);
        assert_eq!([c.get(-1), c.get(0), c.get(1), c.get(2), c.get(3)], [1, 3, 3, 1, 0]);
    }

    #[test]
    fn complete_graph_census_is_binomial() {
        let c = clique_census(&Graph::complete(7), 10);
        assert_eq!(&c.by_size()[..9], &[1, 7, 21, 35, 35, 21, 7, 1, 0]);
    }

    #[test]
    fn triangles_match_triple_scan() {
        for n in 4..9 {
            let mut g = Graph::complete(n);
            for u in 0..n {
                g.remove_edge(u, (u * 3 + 1) % n);
            }
            assert_eq!(clique_census(&g, 2).get(2), triples_oracle(&g));
        }
    }

    #[test]
    fn kappa_two_closed_form() {
        let g = Graph::cycle(9);
        assert_eq!(
            curvature(&g, Order::Finite(2)),
            Ratio::new(4 - 2 * 9 + 9, 4)
        );
    }

    #[test]
    fn clique_list_sizes() {
        let g = Graph::complete(4);
        let all = cliques(&g, 4);
        assert_eq!(all.len(), 16);
        assert_eq!(cliques(&g, 2).len(), 1 + 4 + 6);
    }
}

//! Small 2-connected cubic plane graphs.
//!
//! Graphs are grown from K4 by joining the midpoints of two edges of one
//! face, and by splicing two graphs along a removed edge each.

use std::collections::HashSet;

use rand::Rng;

use super::{trace_faces, EmbeddedGraph};
use crate::error::Result;
use crate::graph::Graph;

/// K4 drawn as a triangle around a centre vertex 3.
pub fn k4() -> EmbeddedGraph {
    EmbeddedGraph::from_straight_line(Graph::complete(4), &[(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)])
        .expect("straight-line K4")
}

/// Canonical code of a plane graph up to orientation-preserving or
/// reversing homeomorphism, for connected graphs.
pub fn canonical_code(e: &EmbeddedGraph) -> Vec<usize> {
    let n = e.n();
    let sep = usize::MAX;
    let mut best: Option<Vec<usize>> = None;
    for mirror in [false, true] {
        let rot: Vec<Vec<usize>> = if mirror {
            e.rotation().iter().map(|r| r.iter().rev().copied().collect()).collect()
        } else {
            e.rotation().to_vec()
        };
        for s in 0..n {
            for &t in &rot[s] {
                let mut num = vec![usize::MAX; n];
                num[s] = 0;
                let mut next = 1;
                let mut queue = vec![(s, t)];
                let mut code = Vec::with_capacity(2 * e.graph().edge_count() + n);
                let mut head = 0;
                while head < queue.len() {
                    let (v, first) = queue[head];
                    head += 1;
                    let r = &rot[v];
                    let k = r.iter().position(|&x| x == first).unwrap_or(0);
                    for i in 0..r.len() {
                        let w = r[(k + i) % r.len()];
                        if num[w] == usize::MAX {
                            num[w] = next;
                            next += 1;
                            queue.push((w, v));
                        }
                        code.push(num[w]);
                    }
                    code.push(sep);
                    if let Some(b) = &best {
                        if code.as_slice() > &b[..code.len().min(b.len())] {
                            break;
                        }
                    }
                }
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// Subdivides the edges after positions `i` and `j` of face `f` and joins
/// the two new vertices across the face.
pub fn insert_edge(e: &EmbeddedGraph, f: usize, i: usize, j: usize) -> Result<EmbeddedGraph> {
    let faces = trace_faces(e)?;
    let cyc = &faces.cycles[f];
    let k = cyc.len();
    let (xi, yi) = (cyc[i], cyc[(i + 1) % k]);
    let (xj, yj) = (cyc[j], cyc[(j + 1) % k]);
    let n = e.n();
    let (p, q) = (n, n + 1);
    let mut g = Graph::new(n + 2);
    for (a, b) in e.graph().edges() {
        if (a, b) != (xi.min(yi), xi.max(yi)) && (a, b) != (xj.min(yj), xj.max(yj)) {
            g.add_edge(a, b)?;
        }
    }
    for (a, b) in [(xi, p), (p, yi), (xj, q), (q, yj), (p, q)] {
        g.add_edge(a, b)?;
    }
    let mut rot = e.rotation().to_vec();
    let swap = |r: &mut Vec<usize>, old: usize, new: usize| {
        for x in r.iter_mut() {
            if *x == old {
                *x = new;
            }
        }
    };
    swap(&mut rot[xi], yi, p);
    swap(&mut rot[yi], xi, p);
    swap(&mut rot[xj], yj, q);
    swap(&mut rot[yj], xj, q);
    rot.push(vec![xi, q, yi]);
    rot.push(vec![xj, p, yj]);
    let out = EmbeddedGraph::new(g, rot)?;
    trace_faces(&out)?;
    Ok(out)
}

/// Removes edge `(a1, b1)` of `e1` and `(a2, b2)` of `e2` and adds
/// `a1 – a2`, `b1 – b2`. Returns `None` when neither orientation of `e2`
/// fits into the face.
pub fn splice(e1: &EmbeddedGraph, (a1, b1): (usize, usize), e2: &EmbeddedGraph, (a2, b2): (usize, usize)) -> Option<EmbeddedGraph> {
    let n1 = e1.n();
    let n = n1 + e2.n();
    for second in [e2.clone(), e2.mirrored()] {
        let mut g = Graph::new(n);
        for (a, b) in e1.graph().edges() {
            if (a, b) != (a1.min(b1), a1.max(b1)) {
                g.add_edge(a, b).ok()?;
            }
        }
        for (a, b) in second.graph().edges() {
            if (a, b) != (a2.min(b2), a2.max(b2)) {
                g.add_edge(n1 + a, n1 + b).ok()?;
            }
        }
        g.add_edge(a1, n1 + a2).ok()?;
        g.add_edge(b1, n1 + b2).ok()?;
        let mut rot: Vec<Vec<usize>> = e1.rotation().to_vec();
        rot.extend(second.rotation().iter().map(|r| r.iter().map(|&x| x + n1).collect::<Vec<_>>()));
        let fix = |r: &mut Vec<usize>, old: usize, new: usize| {
            for x in r.iter_mut() {
                if *x == old {
                    *x = new;
                }
            }
        };
        fix(&mut rot[a1], b1, n1 + a2);
        fix(&mut rot[b1], a1, n1 + b2);
        fix(&mut rot[n1 + a2], n1 + b2, a1);
        fix(&mut rot[n1 + b2], n1 + a2, b1);
        let cand = EmbeddedGraph::new(g, rot).ok()?;
        if trace_faces(&cand).is_ok() {
            return Some(cand);
        }
    }
    None
}

/// Every plane graph with at most `max_n` vertices reachable by the two
/// operations, one per canonical code, in order of size.
pub fn enumerate(max_n: usize) -> Vec<EmbeddedGraph> {
    let mut by_n: Vec<Vec<EmbeddedGraph>> = vec![Vec::new(); max_n + 1];
    let mut seen = HashSet::new();
    if max_n < 4 {
        return Vec::new();
    }
    let base = k4();
    seen.insert(canonical_code(&base));
    by_n[4].push(base);
    let mut n = 6;
    while n <= max_n {
        let mut found = Vec::new();
        for e in &by_n[n - 2] {
            let faces = trace_faces(e).expect("stored graphs are plane");
            for (f, cyc) in faces.cycles.iter().enumerate() {
                for i in 0..cyc.len() {
                    for j in i + 1..cyc.len() {
                        if let Ok(h) = insert_edge(e, f, i, j) {
                            found.push(h);
                        }
                    }
                }
            }
        }
        for n1 in (4..=n - 4).step_by(2) {
            let n2 = n - n1;
            if n2 < n1 {
                break;
            }
            for e1 in &by_n[n1] {
                for e2 in &by_n[n2] {
                    for d1 in e1.graph().edges() {
                        for d2 in e2.graph().edges() {
                            for d2 in [d2, (d2.1, d2.0)] {
                                if let Some(h) = splice(e1, d1, e2, d2) {
                                    found.push(h);
                                }
                            }
                        }
                    }
                }
            }
        }
        for h in found {
            if seen.insert(canonical_code(&h)) {
                by_n[n].push(h);
            }
        }
        n += 2;
    }
    by_n.into_iter().flatten().collect()
}

/// A random 3-connected cubic plane graph on `n` vertices (`n` even, at least 4).
pub fn random_cubic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> EmbeddedGraph {
    assert!(n >= 4 && n.is_multiple_of(2), "cubic graphs have an even order of at least 4");
    let mut e = k4();
    while e.n() < n {
        let faces = trace_faces(&e).expect("plane");
        let f = rng.random_range(0..faces.len());
        let k = faces.cycles[f].len();
        let i = rng.random_range(0..k);
        let mut j = rng.random_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        e = insert_edge(&e, f, i.min(j), i.max(j)).expect("insertion keeps the graph plane");
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn code_ignores_labelling() {
        let e = k4();
        let perm = [2, 0, 3, 1];
        let g = e.graph().permuted(&perm);
        let moved = e.transported(&g, &perm).unwrap();
        assert_eq!(canonical_code(&e), canonical_code(&moved));
    }

    #[test]
    fn small_counts() {
        let all = enumerate(8);
        let count = |n: usize| all.iter().filter(|e| e.n() == n).count();
        assert_eq!(count(4), 1);
        // the prism only
        assert_eq!(count(6), 1);
        // cube, the other polyhedral graph, and two spliced K4 pairs
        assert!(count(8) >= 3);
        for e in &all {
            assert!(e.graph().degrees().iter().all(|&d| d == 3));
            assert!(e.graph().is_two_connected());
        }
    }

    #[test]
    fn random_graphs_are_cubic_and_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4, 10, 20] {
            let e = random_cubic(n, &mut rng);
            assert_eq!(e.n(), n);
            assert!(trace_faces(&e).is_ok());
            assert!(e.graph().is_three_connected());
        }
    }
}

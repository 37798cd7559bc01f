use super::polytopes::cube_start;
use super::FamilyBundle;
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{girth, Graph};
use crate::legal::MoveSystem;

/// Shift pairs `(a_j, b_j)` for directions `1..d` of the d-cube. An edge of
/// direction `j` at `x` (coordinate `j` of `x` zero) shifts by `a_j` when the
/// other coordinates of `x` have even sum and by `b_j` otherwise, so parallel
/// edges across a square differ by `a_j − b_j`. Pairs are chosen with
/// `a, b < n/2`, `|a − b| ≥ 3` and distinct differences mod n.
pub fn default_offsets(d: usize, n: usize) -> Result<Vec<(usize, usize)>> {
    let half = n.div_ceil(2);
    let mut out: Vec<(usize, usize)> = Vec::new();
    let mut used: Vec<usize> = Vec::new();
    'dirs: for _ in 1..d {
        for a in 0..half {
            for b in 0..half {
                if a.abs_diff(b) < 3 {
                    continue;
                }
                let diff = (a + n - b) % n;
                let near_zero = [diff, (diff + 1) % n, (diff + n - 1) % n].contains(&0);
                if !near_zero && !used.contains(&diff) {
                    used.push(diff);
                    out.push((a, b));
                    continue 'dirs;
                }
            }
        }
        return Err(Error::invalid(format!(
            "no shifts below {n}/2 keep girth 6 over the {d}-cube; try a larger n"
        )));
    }
    Ok(out)
}

/// Blown-up d-cube without the girth assertion. Vertex `(x, i)` has id
/// `x·n + i`; direction 0 carries the path u₁ − v₁ − u₂ − … − u_n − v_n.
pub fn blowup_graph(d: usize, n: usize, offsets: &[(usize, usize)]) -> Result<Graph> {
    if d < 2 || n < 2 {
        return Err(Error::invalid("blowup needs d ≥ 2 and n ≥ 2"));
    }
    if d > 16 {
        return Err(Error::Refused {
            what: format!("blowup of the {d}-cube"),
            limit: 16,
        });
    }
    if offsets.len() != d - 1 {
        return Err(Error::invalid(format!("expected {} shift pairs, got {}", d - 1, offsets.len())));
    }
    for (j, &(a, b)) in offsets.iter().enumerate() {
        if 2 * a >= n || 2 * b >= n {
            return Err(Error::invalid(format!("direction {}: shifts must be below n/2", j + 1)));
        }
        if a.abs_diff(b) < 3 {
            return Err(Error::invalid(format!(
                "direction {}: parallel edges of a square differ by {} < 3",
                j + 1,
                a.abs_diff(b)
            )));
        }
    }
    let cube = 1usize << d;
    let id = |x: usize, i: usize| x * n + i;
    let mut g = Graph::new(cube * n);
    for x in (0..cube).filter(|x| x & 1 == 0) {
        for i in 0..n {
            g.add_edge(id(x, i), id(x | 1, i))?;
            if i + 1 < n {
                g.add_edge(id(x | 1, i), id(x, i + 1))?;
            }
        }
    }
    for j in 1..d {
        let (a, b) = offsets[j - 1];
        for x in (0..cube).filter(|x| x >> j & 1 == 0) {
            let k = if (x & !(1 << j)).count_ones() % 2 == 0 { a } else { b };
            for i in 0..n {
                g.add_edge(id(x, i), id(x | 1 << j, (i + k) % n))?;
            }
        }
    }
    let labels = (0..cube * n).map(|v| {
        let x = v / n;
        let bits: String = (0..d).map(|j| if x >> j & 1 == 1 { '1' } else { '0' }).collect();
        format!("{bits}.{}", v % n + 1)
    });
    Ok(g.with_labels(labels))
}

/// Blown-up d-cube with girth at least 6 and the preimage of the cube's
/// bipartition system.
pub fn blowup_cube(d: usize, n: usize, offsets: Option<&[(usize, usize)]>) -> Result<FamilyBundle> {
    let offsets = match offsets {
        Some(o) => o.to_vec(),
        None => default_offsets(d, n)?,
    };
    let g = blowup_graph(d, n, &offsets)?;
    match girth(&g) {
        Some(l) if l < 6 => return Err(Error::invalid(format!("shifts leave a cycle of length {l}"))),
        _ => {}
    }
    let total = g.n();
    let even = VertexSet::from_iter(total, (0..total).filter(|v| (v / n).count_ones().is_multiple_of(2)));
    let system = MoveSystem::colored(total, &[even.clone(), even.complement()])?;
    let start = VertexSet::from_iter(total, cube_start(d).into_iter().flat_map(|x| x * n..(x + 1) * n));
    Ok(FamilyBundle::new(
        format!("blowup-{d}-{n}"),
        g,
        "n-fold blowup of the d-cube with a path over one direction and shifted matchings elsewhere",
    )
    .with_witness(system, start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{curvature, Order};
    use crate::legal::verify_legal_orbit;
    use num_rational::Ratio;

    #[test]
    fn three_cube_seven_layers() {
        let b = blowup_cube(3, 7, None).unwrap();
        b.validate().unwrap();
        assert_eq!(b.graph.n(), 56);
        assert_eq!(b.graph.edge_count(), 8 * 7 + 4 * 13);
        assert!(girth(&b.graph).unwrap() >= 6);
        assert_eq!(curvature(&b.graph, Order::Finite(2)), Ratio::from_integer(0));
        let (m, s) = b.witness.unwrap();
        assert!(verify_legal_orbit(&b.graph, &m, &s).unwrap().is_legal());
    }

    #[test]
    fn four_cube_curvature_is_positive() {
        // shifts that respect the square rule at n = 7 cannot avoid 4-cycles
        assert!(default_offsets(4, 7).is_err());
        let g = blowup_graph(4, 7, &[(3, 0), (0, 3), (3, 0)]).unwrap();
        assert!(curvature(&g, Order::Finite(2)) > Ratio::from_integer(0));
        assert!(blowup_cube(4, 7, Some(&[(3, 0), (0, 3), (3, 0)])).is_err());
        let b = blowup_cube(4, 9, None).unwrap();
        assert!(girth(&b.graph).unwrap() >= 6);
        assert!(curvature(&b.graph, Order::Finite(2)) > Ratio::from_integer(0));
    }

    #[test]
    fn close_shifts_are_rejected() {
        assert!(blowup_cube(3, 7, Some(&[(2, 0), (0, 3)])).is_err());
        assert!(blowup_cube(3, 7, Some(&[(4, 0), (0, 3)])).is_err());
    }
}

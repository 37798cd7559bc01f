use super::MoveSystem;
use crate::bits::VertexSet;

/// Reduced row-echelon basis of the move group over GF(2).
///
/// Every row has a distinct pivot (its least vertex) and no other row
/// contains that pivot. Rows are sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Basis {
    /// Width of the vertex sets.
    pub n: usize,
    pub rows: Vec<VertexSet>,
    pub pivots: Vec<usize>,
    /// For each row, the vertices whose moves sum to it.
    pub provenance: Vec<VertexSet>,
}

impl GF2Basis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Sum of the rows selected by the low `rank` bits of `coeffs`.
    pub fn combine(&self, coeffs: u64) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for (j, r) in self.rows.iter().enumerate() {
            if coeffs >> j & 1 == 1 {
                out.xor_with(r);
            }
        }
        out
    }

    /// Vertices whose moves sum to the selected combination.
    pub fn combine_provenance(&self, coeffs: u64) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for (j, r) in self.provenance.iter().enumerate() {
            if coeffs >> j & 1 == 1 {
                out.xor_with(r);
            }
        }
        out
    }

    /// Reduces `x` against the basis; zero iff `x` lies in the span.
    pub fn reduce(&self, x: &VertexSet) -> VertexSet {
        let mut r = x.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.contains(p) {
                r.xor_with(row);
            }
        }
        r
    }

    pub fn contains(&self, x: &VertexSet) -> bool {
        self.reduce(x).is_empty()
    }
}

/// Row-reduces the distinct moves, pivoting on least vertices.
///
/// ```
/// use legalsys::{legal::{move_span, MoveSystem}, VertexSet};
/// let m = MoveSystem::from_coloring(&[0, 1, 0, 1, 2]);
/// assert_eq!(move_span(&m).rank(), 3);
/// ```
pub fn move_span(m: &MoveSystem) -> GF2Basis {
    let n = m.n();
    let mut rows: Vec<VertexSet> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prov: Vec<VertexSet> = Vec::new();
    for (v, mv) in m.distinct() {
        let mut x = mv.clone();
        let mut px = VertexSet::from_iter(n, [v]);
        for i in 0..rows.len() {
            if x.contains(pivots[i]) {
                x.xor_with(&rows[i]);
                px.xor_with(&prov[i]);
            }
        }
        let Some(p) = x.first() else { continue };
        for i in 0..rows.len() {
            if rows[i].contains(p) {
                rows[i].xor_with(&x);
                let pi = prov[i].xor(&px);
                prov[i] = pi;
            }
        }
        rows.push(x);
        pivots.push(p);
        prov.push(px);
    }
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by_key(|&i| pivots[i]);
    GF2Basis {
        n,
        rows: idx.iter().map(|&i| rows[i].clone()).collect(),
        pivots: idx.iter().map(|&i| pivots[i]).collect(),
        provenance: idx.iter().map(|&i| prov[i].clone()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(n: usize, xs: &[&[usize]]) -> Vec<VertexSet> {
        xs.iter().map(|s| VertexSet::from_iter(n, s.iter().copied())).collect()
    }

    #[test]
    fn all_moves_equal_gives_rank_one() {
        let m = MoveSystem::new(sets(3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]])).unwrap();
        assert_eq!(move_span(&m).rank(), 1);
    }

    #[test]
    fn dependency_is_detected() {
        // {0,1} + {1,2} = {0,2}
        let m = MoveSystem::new(sets(3, &[&[0, 1], &[1, 2], &[0, 2]])).unwrap();
        let b = move_span(&m);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.pivots, vec![0, 1]);
    }

    #[test]
    fn provenance_reproduces_rows() {
        let m = MoveSystem::new(sets(4, &[&[0, 2], &[1, 2, 3], &[0, 1, 2], &[3]])).unwrap();
        let b = move_span(&m);
        for (row, p) in b.rows.iter().zip(&b.provenance) {
            let mut sum = VertexSet::empty(4);
            for v in p.iter() {
                sum.xor_with(m.move_at(v));
            }
            assert_eq!(&sum, row);
        }
        for (i, r) in b.rows.iter().enumerate() {
            for (j, &p) in b.pivots.iter().enumerate() {
                assert_eq!(r.contains(p), i == j);
            }
        }
    }
}

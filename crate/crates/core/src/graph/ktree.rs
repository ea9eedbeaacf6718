use super::{Graph, Vertex};
use crate::error::Error;

/// A validated k-tree construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTreeOrder {
    pub k: usize,
    /// `order[i]` is the vertex added at step `i`.
    pub order: Vec<Vertex>,
    /// `position[v]` is the index of `v` in `order`.
    pub position: Vec<usize>,
    /// Earlier neighbors of each vertex, sorted by position.
    pub back: Vec<Vec<Vertex>>,
}

impl KTreeOrder {
    /// Back-neighbors of the vertex at position `i`.
    pub fn back_of(&self, i: usize) -> &[Vertex] {
        &self.back[self.order[i]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTreeViolation {
    /// Position in the order (the order length for a missing vertex).
    pub index: usize,
    pub reason: String,
}

impl From<KTreeViolation> for Error {
    fn from(v: KTreeViolation) -> Self {
        Error::InvalidOrder { index: v.index, reason: v.reason }
    }
}

/// Checks that `order` builds `g` as a k-tree: the first `k` vertices form a
/// clique and every later vertex has exactly `k` earlier neighbors, which
/// form a clique.
pub fn validate_ktree_order(g: &Graph, k: usize, order: &[Vertex]) -> Result<KTreeOrder, KTreeViolation> {
    let n = g.n();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(KTreeViolation { index: i, reason: format!("vertex {v} outside 0..{n}") });
        }
        if position[v] != usize::MAX {
            return Err(KTreeViolation { index: i, reason: format!("vertex {v} repeated") });
        }
        position[v] = i;
    }
    if order.len() != n {
        let missing = position.iter().position(|&p| p == usize::MAX).unwrap();
        return Err(KTreeViolation { index: order.len(), reason: format!("vertex {missing} missing from order") });
    }
    let mut back = vec![Vec::new(); n];
    for (i, &v) in order.iter().enumerate() {
        let mut b: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| position[u] < i).collect();
        b.sort_by_key(|&u| position[u]);
        let expect = i.min(k);
        if b.len() != expect {
            return Err(KTreeViolation {
                index: i,
                reason: format!("vertex {v} has {} back-neighbors, expected {expect}", b.len()),
            });
        }
        for (x, &a) in b.iter().enumerate() {
            if let Some(&c) = b[x + 1..].iter().find(|&&c| !g.has_edge(a, c)) {
                return Err(KTreeViolation {
                    index: i,
                    reason: format!("back-neighbors {a} and {c} of vertex {v} are not adjacent"),
                });
            }
        }
        back[v] = b;
    }
    Ok(KTreeOrder { k, order: order.to_vec(), position, back })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> Graph {
        let e = [
            (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5),
            (2, 6), (4, 6), (5, 6), (4, 7), (5, 7), (6, 7), (4, 8), (5, 8), (6, 8),
        ];
        Graph::new(8, e.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap()
    }

    #[test]
    fn fig3_identity_order_is_a_3_tree() {
        let ord: Vec<_> = (0..8).collect();
        let t = validate_ktree_order(&fig3(), 3, &ord).unwrap();
        assert_eq!(t.back[4], vec![1, 2, 3]);
    }

    #[test]
    fn swapping_4_and_5_fails_at_5() {
        let ord = vec![0, 1, 2, 4, 3, 5, 6, 7];
        let err = validate_ktree_order(&fig3(), 3, &ord).unwrap_err();
        assert_eq!(err.index, 3);
    }

    #[test]
    fn single_edge_is_a_1_tree() {
        assert!(validate_ktree_order(&Graph::path(2), 1, &[0, 1]).is_ok());
        assert!(validate_ktree_order(&Graph::empty(3), 0, &[2, 0, 1]).is_ok());
        assert!(validate_ktree_order(&Graph::path(2), 0, &[0, 1]).is_err());
    }

    #[test]
    fn incomplete_order_reports_missing_vertex() {
        let err = validate_ktree_order(&Graph::path(3), 1, &[0, 1]).unwrap_err();
        assert_eq!(err.index, 2);
    }
}

// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{CentralityError, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Degree {
    pub in_degree: usize,
    pub out_degree: usize,
    /// Distinct neighbors as a fraction of the `n - 1` possible ones.
    pub normalized: f64,
}

fn degree_of(g: &Graph, j: usize) -> Degree {
    let n = g.n();
    let out_degree = g.neighbors(j).len();
    let in_degree = g.predecessors(j).len();
    let distinct = if g.is_directed() {
        let mut all: Vec<usize> = g
            .neighbors(j)
            .iter()
            .chain(g.predecessors(j))
            .map(|&(v, _)| v)
            .collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    } else {
        out_degree
    };
    let normalized = if n > 1 {
        distinct as f64 / (n - 1) as f64
    } else {
        0.0
    };
    Degree {
        in_degree,
        out_degree,
        normalized,
    }
}

pub fn degree_centrality(g: &Graph, j: usize) -> Result<Degree, CentralityError> {
    if j >= g.n() {
        return Err(CentralityError::UnknownNode { node: j, n: g.n() });
    }
    Ok(degree_of(g, j))
}

pub fn degree_all(g: &Graph) -> Vec<Degree> {
    (0..g.n()).map(|j| degree_of(g, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_and_complete() {
        let star = Graph::unweighted(5, (1..5).map(|l| (0, l)));
        assert_eq!(degree_centrality(&star, 0).unwrap().normalized, 1.0);
        assert_eq!(degree_centrality(&star, 3).unwrap().normalized, 0.25);

        let k4 = Graph::unweighted(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(degree_all(&k4).iter().all(|d| d.normalized == 1.0 && d.in_degree == 3));
    }

    #[test]
    fn single_arc() {
        let g = Graph::directed(2, [(0, 1, 1.0)]);
        let a = degree_centrality(&g, 0).unwrap();
        let b = degree_centrality(&g, 1).unwrap();
        assert_eq!((a.out_degree, a.in_degree), (1, 0));
        assert_eq!((b.out_degree, b.in_degree), (0, 1));
        assert_eq!(a.normalized, 1.0);
    }

    #[test]
    fn degenerate_sizes() {
        let one = Graph::unweighted(1, []);
        assert_eq!(degree_centrality(&one, 0).unwrap().normalized, 0.0);
        assert_eq!(
            degree_centrality(&one, 1),
            Err(CentralityError::UnknownNode { node: 1, n: 1 })
        );
    }
}

//! Cross-checks against a from-scratch model of P(n,k) built only from its
//! edge list.

use std::collections::BTreeSet;

use mixdom::{solve_exact, solve_exhaustive, verify, ElementSet, Graph, SolveBudget};
use proptest::prelude::*;

/// Elements in canonical id order: outer vertices, inner vertices, outer
/// edges, spokes, inner edges. Edges are endpoint pairs of vertex ids.
struct Model {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Model {
    fn new(n: usize, k: usize) -> Model {
        let mut edges = Vec::new();
        edges.extend((0..n).map(|i| (i, (i + 1) % n)));
        edges.extend((0..n).map(|i| (i, n + i)));
        edges.extend((0..n).map(|i| (n + i, n + (i + k) % n)));
        Model { n, edges }
    }

    fn universe(&self) -> usize {
        2 * self.n + self.edges.len()
    }

    fn endpoints(&self, id: usize) -> Option<(usize, usize)> {
        id.checked_sub(2 * self.n).map(|e| self.edges[e])
    }

    /// Vertex-vertex adjacency, vertex-edge incidence, edge-edge shared endpoint.
    fn dominates(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        match (self.endpoints(a), self.endpoints(b)) {
            (None, None) => self
                .edges
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b)),
            (None, Some((x, y))) => a == x || a == y,
            (Some((x, y)), None) => b == x || b == y,
            (Some((x, y)), Some((p, q))) => x == p || x == q || y == p || y == q,
        }
    }

    fn covered(&self, set: &[usize]) -> bool {
        (0..self.universe()).all(|x| set.iter().any(|&s| self.dominates(s, x)))
    }

    fn min_size(&self) -> usize {
        let u = self.universe();
        for size in 0..=u {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                if self.covered(&idx) {
                    return size;
                }
                let mut i = size;
                while i > 0 && idx[i - 1] == u - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        u
    }
}

fn small_specs(max_universe: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=max_universe / 5 {
        for k in 1..n.div_ceil(2) {
            if 2 * k < n {
                out.push((n, k));
            }
        }
    }
    out
}

#[test]
fn neighborhoods_match_model() {
    for (n, k) in small_specs(60) {
        let g = Graph::new(n, k).unwrap();
        let m = Model::new(n, k);
        for a in 0..5 * n {
            let want: BTreeSet<usize> = (0..5 * n).filter(|&b| m.dominates(a, b)).collect();
            let got: BTreeSet<usize> = g.neighborhood_ids(a).iter().copied().collect();
            assert_eq!(got, want, "P({n},{k}) id {a}");
        }
    }
}

#[test]
fn optima_match_model_brute_force() {
    for (n, k) in small_specs(35) {
        let g = Graph::new(n, k).unwrap();
        let want = Model::new(n, k).min_size();
        let exact = solve_exact(&g, SolveBudget::default());
        assert!(exact.proved);
        assert_eq!(exact.optimum, want, "P({n},{k})");
        assert_eq!(solve_exhaustive(&g, want).unwrap().optimum, want);
    }
}

proptest! {
    #[test]
    fn verify_agrees_with_model(
        (n, k, ids) in (3usize..20)
            .prop_flat_map(|n| (Just(n), 1..n.div_ceil(2)))
            .prop_filter("strict k", |(n, k)| 2 * k < *n)
            .prop_flat_map(|(n, k)| (Just(n), Just(k), proptest::collection::btree_set(0..5 * n, 0..(2 * n))))
    ) {
        let g = Graph::new(n, k).unwrap();
        let m = Model::new(n, k);
        let ids: Vec<usize> = ids.into_iter().collect();
        let set = ElementSet::from_ids(5 * n, ids.iter().copied());
        let report = verify(&g, &set);
        prop_assert_eq!(report.is_dominating, m.covered(&ids));
        for x in 0..5 * n {
            let hits = ids.iter().filter(|&&s| m.dominates(s, x)).count() as i64;
            prop_assert_eq!(report.rd_per_element[x], hits - 1);
        }
    }
}

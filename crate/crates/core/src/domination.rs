//! Mixed domination checks and redomination bookkeeping.

use num_rational::Ratio;

use crate::graph::Graph;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationReport {
    pub is_dominating: bool,
    pub uncovered: ElementSet,
    /// `|N_m[ξ] ∩ S| - 1` for every id; `-1` marks an uncovered element.
    pub rd_per_element: Vec<i64>,
    pub rd_total: i64,
    pub size: usize,
}

pub fn verify(graph: &Graph, set: &ElementSet) -> DominationReport {
    let universe = graph.universe();
    let mut uncovered = ElementSet::new(universe);
    let mut rd_per_element = Vec::with_capacity(universe);
    for id in 0..universe {
        let hits = graph
            .neighborhood_ids(id)
            .iter()
            .filter(|&&x| set.contains(x))
            .count() as i64;
        if hits == 0 {
            uncovered.insert(id);
        }
        rd_per_element.push(hits - 1);
    }
    DominationReport {
        is_dominating: uncovered.is_empty(),
        rd_total: rd_per_element.iter().sum(),
        uncovered,
        rd_per_element,
        size: set.len(),
    }
}

pub fn is_dominating(graph: &Graph, set: &ElementSet) -> bool {
    (0..graph.universe()).all(|id| graph.neighborhood_ids(id).iter().any(|&x| set.contains(x)))
}

/// `rd_S(X)`, the summed redomination of the members of `region`.
pub fn redomination(graph: &Graph, set: &ElementSet, region: &ElementSet) -> i64 {
    region
        .iter()
        .map(|id| {
            graph
                .neighborhood_ids(id)
                .iter()
                .filter(|&&x| set.contains(x))
                .count() as i64
                - 1
        })
        .sum()
}

/// Smallest integer strictly above `5n/7`.
pub fn naive_lower_bound(n: usize) -> usize {
    5 * n / 7 + 1
}

/// `(5n + rd)/7`, the set size implied by a total redomination.
pub fn gamma_from_rd(n: usize, rd_total: i64) -> Ratio<i64> {
    Ratio::new(5 * n as i64 + rd_total, 7)
}

/// Extends `partial` to a dominating set, each step adding the element that
/// covers the most still-uncovered elements (lowest id on ties).
pub fn greedy_complete(graph: &Graph, partial: &ElementSet) -> ElementSet {
    let universe = graph.universe();
    let mut set = partial.clone();
    let mut covered = ElementSet::new(universe);
    for id in set.iter() {
        for &x in graph.neighborhood_ids(id) {
            covered.insert(x);
        }
    }
    // gain[c] = number of uncovered elements in N_m[c]
    let mut gain: Vec<usize> = (0..universe)
        .map(|c| {
            graph
                .neighborhood_ids(c)
                .iter()
                .filter(|&&x| !covered.contains(x))
                .count()
        })
        .collect();
    while covered.len() < universe {
        let (best, _) =
            gain.iter().enumerate().fold(
                (usize::MAX, 0),
                |acc, (c, &g)| if g > acc.1 { (c, g) } else { acc },
            );
        set.insert(best);
        for &x in graph.neighborhood_ids(best) {
            if covered.insert(x) {
                // neighbourhoods are symmetric: whoever covers x lost one unit of gain
                for &c in graph.neighborhood_ids(x) {
                    gain[c] -= 1;
                }
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Element::*;
    use proptest::prelude::*;

    fn fig_p8_1(g: &Graph) -> ElementSet {
        g.set_of([
            InnerVertex(0),
            OuterEdge(1),
            InnerEdge(2),
            OuterVertex(4),
            InnerEdge(5),
            OuterEdge(6),
        ])
        .unwrap()
    }

    // counts from the dominator side: how many chosen elements list x in
    // their own neighbourhood
    fn pairwise_overlap(g: &Graph, s: &ElementSet) -> i64 {
        let chosen = s.to_vec();
        let mut total = 0;
        for x in 0..g.universe() {
            let c = chosen
                .iter()
                .filter(|&&d| g.neighborhood_ids(d).contains(&x))
                .count() as i64;
            total += c - 1;
        }
        total
    }

    #[test]
    fn p8_1_block_set_dominates() {
        let g = Graph::new(8, 1).unwrap();
        let s = fig_p8_1(&g);
        let r = verify(&g, &s);
        assert!(r.is_dominating);
        assert_eq!(r.size, 6);
        assert_eq!(r.rd_total, 2);
        assert_eq!(pairwise_overlap(&g, &s), 2);
        assert_eq!(redomination(&g, &s, &ElementSet::full(40)), 2);
    }

    #[test]
    fn empty_set_covers_nothing() {
        let g = Graph::new(7, 2).unwrap();
        let r = verify(&g, &g.empty_set());
        assert!(!r.is_dominating);
        assert_eq!(r.uncovered.len(), 35);
        assert_eq!(r.rd_total, -35);
        assert!(r.rd_per_element.iter().all(|&x| x == -1));
    }

    #[test]
    fn redomination_edge_cases() {
        let g = Graph::new(8, 1).unwrap();
        let s = fig_p8_1(&g);
        assert_eq!(redomination(&g, &s, &g.empty_set()), 0);
        // v0 is dominated only by u0
        let x = g.set_of([OuterVertex(0)]).unwrap();
        assert_eq!(redomination(&g, &s, &x), 0);
    }

    #[test]
    fn lower_bound() {
        assert_eq!(naive_lower_bound(7), 6);
        assert_eq!(naive_lower_bound(5), 4);
        assert_eq!(naive_lower_bound(14), 11);
    }

    #[test]
    fn gamma_from_redomination() {
        assert_eq!(gamma_from_rd(8, 2), Ratio::from_integer(6));
        assert_eq!(gamma_from_rd(7, 7), Ratio::from_integer(6));
        assert_eq!(gamma_from_rd(7, 0), Ratio::from_integer(5));
        assert!(!gamma_from_rd(8, 0).is_integer());
    }

    #[test]
    fn greedy_fixed_point_and_single_step() {
        let g = Graph::new(8, 1).unwrap();
        let s = fig_p8_1(&g);
        assert_eq!(greedy_complete(&g, &s), s);

        let g5 = Graph::new(5, 1).unwrap();
        let full = greedy_complete(&g5, &g5.empty_set());
        assert!(is_dominating(&g5, &full));
        assert!(full.len() >= 4);

        // without u0 the gap is closed again by one element
        let mut partial = s.clone();
        partial.remove(g.id(InnerVertex(0)).unwrap());
        let uncovered = verify(&g, &partial).uncovered;
        assert!(!uncovered.is_empty());
        let repaired = greedy_complete(&g, &partial);
        assert!(is_dominating(&g, &repaired));
        assert_eq!(repaired.len(), partial.len() + 1);
    }

    fn graph_and_set() -> impl Strategy<Value = (usize, usize, Vec<bool>)> {
        (5usize..40)
            .prop_flat_map(|n| (Just(n), 1..n.div_ceil(2)))
            .prop_flat_map(|(n, k)| {
                (
                    Just(n),
                    Just(k),
                    proptest::collection::vec(proptest::bool::weighted(0.1), 5 * n),
                )
            })
    }

    proptest! {
        #[test]
        fn rd_identity_on_greedy_sets((n, k, bits) in graph_and_set()) {
            let g = Graph::new(n, k).unwrap();
            let seed = ElementSet::from_ids(5 * n, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
            let s = greedy_complete(&g, &seed);
            prop_assert!(seed.is_subset(&s));
            let r = verify(&g, &s);
            prop_assert!(r.is_dominating);
            prop_assert_eq!(r.rd_total, 7 * s.len() as i64 - 5 * n as i64);
            prop_assert_eq!(r.rd_total, pairwise_overlap(&g, &s));
            prop_assert_eq!(gamma_from_rd(n, r.rd_total), Ratio::from_integer(s.len() as i64));
        }

        #[test]
        fn verify_is_monotone((n, k, bits) in graph_and_set(), extra in proptest::collection::vec(0usize..1000, 0..10)) {
            let g = Graph::new(n, k).unwrap();
            let seed = ElementSet::from_ids(5 * n, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
            let s = greedy_complete(&g, &seed);
            let mut bigger = s.clone();
            for e in extra {
                bigger.insert(e % (5 * n));
            }
            prop_assert!(verify(&g, &bigger).is_dominating);
        }

        #[test]
        fn uncovered_iff_minus_one((n, k, bits) in graph_and_set()) {
            let g = Graph::new(n, k).unwrap();
            let s = ElementSet::from_ids(5 * n, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
            let r = verify(&g, &s);
            prop_assert_eq!(r.is_dominating, r.uncovered.is_empty());
            prop_assert_eq!(r.is_dominating, is_dominating(&g, &s));
            for id in 0..5 * n {
                prop_assert_eq!(r.rd_per_element[id] == -1, r.uncovered.contains(id));
                prop_assert!(r.rd_per_element[id] >= -1);
            }
        }
    }
}

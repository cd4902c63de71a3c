//! Quotient-graph minimum-degree ordering.
//!
//! Nodes are eliminated smallest-external-degree first on the quotient graph
//! whose elements start as the given cliques; eliminating a node merges its
//! elements into one (element absorption). Degrees are exact, the candidate
//! heap is lazy, and ties break on the smaller node id, so the order is
//! deterministic.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Elimination order for `n` nodes coupled through `cliques` (each clique is
/// a set of nodes that are mutually adjacent, e.g. the faces of one mesh
/// cell). Returns `perm` with `perm[k]` = node eliminated at step `k`.
pub fn min_degree_cliques(n: usize, cliques: &[Vec<usize>]) -> Vec<usize> {
    let mut element_nodes: Vec<Vec<usize>> = Vec::with_capacity(cliques.len());
    let mut node_elements: Vec<Vec<usize>> = vec![Vec::new(); n];
    for clique in cliques {
        let mut c = clique.clone();
        c.sort_unstable();
        c.dedup();
        let eid = element_nodes.len();
        for &v in &c {
            assert!(v < n, "clique node out of range");
            node_elements[v].push(eid);
        }
        element_nodes.push(c);
    }
    let mut element_alive = vec![true; element_nodes.len()];
    let mut node_alive = vec![true; n];
    let mut stamp = vec![usize::MAX; n];

    // Exact external degree of `v`: union of live nodes over its live
    // elements, minus itself. `scratch` collects the union.
    let degree = |v: usize,
                  tick: usize,
                  node_elements: &[Vec<usize>],
                  element_nodes: &[Vec<usize>],
                  element_alive: &[bool],
                  node_alive: &[bool],
                  stamp: &mut [usize],
                  scratch: &mut Vec<usize>|
     -> usize {
        scratch.clear();
        stamp[v] = tick;
        for &e in &node_elements[v] {
            if !element_alive[e] {
                continue;
            }
            for &u in &element_nodes[e] {
                if node_alive[u] && stamp[u] != tick {
                    stamp[u] = tick;
                    scratch.push(u);
                }
            }
        }
        scratch.len()
    };

    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::with_capacity(n);
    let mut scratch = Vec::new();
    let mut tick = 0usize;
    for v in 0..n {
        tick += 1;
        let d = degree(
            v,
            tick,
            &node_elements,
            &element_nodes,
            &element_alive,
            &node_alive,
            &mut stamp,
            &mut scratch,
        );
        heap.push(Reverse((d, v)));
    }

    let mut perm = Vec::with_capacity(n);
    while let Some(Reverse((d, v))) = heap.pop() {
        if !node_alive[v] {
            continue;
        }
        tick += 1;
        let cur = degree(
            v,
            tick,
            &node_elements,
            &element_nodes,
            &element_alive,
            &node_alive,
            &mut stamp,
            &mut scratch,
        );
        if cur != d {
            // Stale entry: reinsert with the fresh degree.
            heap.push(Reverse((cur, v)));
            continue;
        }
        // Eliminate: absorb v's elements into one new element over the
        // union (scratch still holds it).
        perm.push(v);
        node_alive[v] = false;
        for &e in &node_elements[v] {
            element_alive[e] = false;
        }
        node_elements[v].clear();
        if !scratch.is_empty() {
            let mut merged = std::mem::take(&mut scratch);
            merged.sort_unstable();
            let eid = element_nodes.len();
            for &u in &merged {
                node_elements[u].retain(|&e| element_alive[e]);
                node_elements[u].push(eid);
            }
            element_nodes.push(merged);
            element_alive.push(true);
            scratch = Vec::new();
        }
    }
    assert_eq!(perm.len(), n, "every node must be eliminated exactly once");
    perm
}

/// Identity ordering.
pub fn natural_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

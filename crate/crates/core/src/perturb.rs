//! Edge subdivision, vertex identification and edge transfer, each returning
//! the new graph together with the vertex correspondence.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbResult {
    pub result: Graph,
    /// `old_to_new[x]` is the index of original vertex `x` in `result`. For
    /// [`identify`] this is the map for the first graph.
    pub old_to_new: Vec<usize>,
    /// Map for the second graph of [`identify`]; `None` otherwise.
    pub second_to_new: Option<Vec<usize>>,
    /// Vertices with no preimage (the inserted `w` of a subdivision).
    pub new_vertices: Vec<usize>,
    /// Index of the glued vertex for [`identify`].
    pub merged_vertex: Option<usize>,
    /// Set when an edge transfer leaves the graph disconnected.
    pub disconnected: bool,
}

impl PerturbResult {
    fn plain(result: Graph, old_to_new: Vec<usize>, new_vertices: Vec<usize>) -> Self {
        let disconnected = !result.is_connected();
        PerturbResult {
            result,
            old_to_new,
            second_to_new: None,
            new_vertices,
            merged_vertex: None,
            disconnected,
        }
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
    }
    Ok(())
}

/// Replaces edge `uv` by the path `u − w − v`, where `w` gets index `n`.
pub fn subdivide_edge(g: &Graph, u: usize, v: usize) -> Result<PerturbResult> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    let n = g.order();
    if n + 1 > MAX_ORDER {
        return Err(Error::OrderOutOfRange(n + 1));
    }
    let mut adj = g.adjacency().to_vec();
    adj[u] &= !(1 << v);
    adj[v] &= !(1 << u);
    adj[u] |= 1 << n;
    adj[v] |= 1 << n;
    adj.push((1 << u) | (1 << v));
    Ok(PerturbResult::plain(Graph::from_adjacency(adj), (0..n).collect(), vec![n]))
}

/// Subdivides each listed edge once, in order; new vertices are appended.
pub fn subdivision_graph(g: &Graph, edges: &[(usize, usize)]) -> Result<PerturbResult> {
    let n = g.order();
    let mut current = g.clone();
    let mut new_vertices = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let step = subdivide_edge(&current, u, v)?;
        new_vertices.extend(step.new_vertices);
        current = step.result;
    }
    Ok(PerturbResult::plain(current, (0..n).collect(), new_vertices))
}

/// Glues `g2` onto `g1` by identifying `v ∈ g2` with `u ∈ g1`. Vertices of
/// `g1` keep their indices; the rest of `g2` follows in order at `m..`.
pub fn identify(g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<PerturbResult> {
    check_vertex(g1, u)?;
    check_vertex(g2, v)?;
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g1.order();
    let total = m + g2.order() - 1;
    if total > MAX_ORDER {
        return Err(Error::OrderOutOfRange(total));
    }
    let second: Vec<usize> = (0..g2.order())
        .map(|x| match x.cmp(&v) {
            std::cmp::Ordering::Less => m + x,
            std::cmp::Ordering::Equal => u,
            std::cmp::Ordering::Greater => m + x - 1,
        })
        .collect();
    let mut adj = g1.adjacency().to_vec();
    adj.resize(total, 0);
    for (a, b) in g2.edges() {
        let (a, b) = (second[a], second[b]);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    Ok(PerturbResult {
        result: Graph::from_adjacency(adj),
        old_to_new: (0..m).collect(),
        second_to_new: Some(second),
        new_vertices: Vec::new(),
        merged_vertex: Some(u),
        disconnected: false,
    })
}

/// Checks the edge-transfer preconditions and returns the target bitmask.
pub(crate) fn transfer_mask(g: &Graph, u: usize, v: usize, targets: &[usize]) -> Result<u64> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    let bad = |msg: String| Err(Error::InvalidTransfer(msg));
    if u == v {
        return bad("u and v coincide".into());
    }
    if targets.is_empty() {
        return bad("no target vertices".into());
    }
    let mut mask = 0u64;
    for &t in targets {
        check_vertex(g, t)?;
        if t == u {
            return bad(format!("target {t} is u itself"));
        }
        if !g.has_edge(v, t) {
            return bad(format!("target {t} is not a neighbour of v = {v}"));
        }
        if g.has_edge(u, t) {
            return bad(format!("target {t} is already a neighbour of u = {u}"));
        }
        if mask >> t & 1 == 1 {
            return bad(format!("target {t} listed twice"));
        }
        mask |= 1 << t;
    }
    Ok(mask)
}

/// Moves the edges `v t` (for `t ∈ targets`) over to `u t`.
pub fn transfer_edges(g: &Graph, u: usize, v: usize, targets: &[usize]) -> Result<PerturbResult> {
    let moved = transfer_mask(g, u, v, targets)?;
    let mut adj = g.adjacency().to_vec();
    adj[v] &= !moved;
    adj[u] |= moved;
    for t in bits(moved) {
        adj[t] &= !(1 << v);
        adj[t] |= 1 << u;
    }
    Ok(PerturbResult::plain(Graph::from_adjacency(adj), (0..g.order()).collect(), Vec::new()))
}

/// Candidate transfer targets `N(v) ∖ N(u) ∖ {u}` as a bitmask.
pub fn transfer_candidates(g: &Graph, u: usize, v: usize) -> u64 {
    g.neighbor_mask(v) & !g.neighbor_mask(u) & !(1 << u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, pair_count, path, star};

    fn degree_sorted(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees().to_vec();
        d.sort_unstable();
        d
    }

    #[test]
    fn subdivide_examples() {
        let r = subdivide_edge(&complete(2).unwrap(), 0, 1).unwrap();
        // w = 2 sits in the middle: 0 - 2 - 1
        assert_eq!(r.result, Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap());
        assert_eq!(r.new_vertices, vec![2]);

        let c5 = subdivide_edge(&cycle(4).unwrap(), 1, 2).unwrap().result;
        assert_eq!(c5.order(), 5);
        assert!(c5.is_connected() && c5.degrees().iter().all(|&d| d == 2));

        let p4 = subdivide_edge(&path(3).unwrap(), 0, 1).unwrap().result;
        assert!(p4.is_tree() && degree_sorted(&p4) == vec![1, 1, 2, 2]);

        assert_eq!(subdivide_edge(&path(3).unwrap(), 0, 2), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn subdivision_graph_examples() {
        let c4 = cycle(4).unwrap();
        let c8 = subdivision_graph(&c4, &c4.edges()).unwrap();
        assert_eq!(c8.result.order(), 8);
        assert!(c8.result.is_connected() && c8.result.degrees().iter().all(|&d| d == 2));
        assert_eq!(c8.new_vertices, vec![4, 5, 6, 7]);

        assert_eq!(subdivision_graph(&c4, &[]).unwrap().result, c4);

        let k3 = subdivision_graph(&complete(3).unwrap(), &[(0, 1)]).unwrap().result;
        assert_eq!(k3.order(), 4);
        assert!(k3.is_connected() && k3.degrees().iter().all(|&d| d == 2));

        assert_eq!(subdivision_graph(&c4, &[(0, 2)]), Err(Error::NotAnEdge(0, 2)));
        // a second listing of the same edge no longer names an edge
        assert_eq!(subdivision_graph(&c4, &[(0, 1), (0, 1)]), Err(Error::NotAnEdge(0, 1)));
    }

    #[test]
    fn identify_examples() {
        let r = identify(&complete(2).unwrap(), 0, &complete(2).unwrap(), 0).unwrap();
        assert_eq!(degree_sorted(&r.result), vec![1, 1, 2]);
        assert!(r.result.is_tree());

        let r = identify(&cycle(4).unwrap(), 3, &cycle(3).unwrap(), 0).unwrap();
        assert_eq!(r.result.order(), 6);
        assert_eq!(degree_sorted(&r.result), vec![2, 2, 2, 2, 2, 4]);
        assert_eq!(r.result.degree(3), 4);
        assert_eq!(r.merged_vertex, Some(3));
        assert_eq!(r.second_to_new, Some(vec![3, 4, 5]));

        let s5 = identify(&star(3).unwrap(), 0, &star(3).unwrap(), 0).unwrap().result;
        assert_eq!(s5, star(5).unwrap());

        let single = identify(&cycle(5).unwrap(), 2, &Graph::empty(1).unwrap(), 0).unwrap();
        assert_eq!(single.result, cycle(5).unwrap());

        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(identify(&split, 0, &complete(2).unwrap(), 0), Err(Error::Disconnected));
    }

    #[test]
    fn transfer_examples() {
        let r = transfer_edges(&path(4).unwrap(), 1, 2, &[3]).unwrap();
        assert_eq!(r.result, Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap());
        assert_eq!(r.result.degree(1), 3);

        let r = transfer_edges(&star(4).unwrap(), 1, 0, &[2, 3]).unwrap();
        assert_eq!(r.result, Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap());

        let c4 = cycle(4).unwrap();
        assert_eq!(transfer_candidates(&c4, 0, 2), 0);
        assert!(matches!(transfer_edges(&c4, 0, 2, &[1]), Err(Error::InvalidTransfer(_))));
        assert!(matches!(transfer_edges(&c4, 0, 2, &[3]), Err(Error::InvalidTransfer(_))));
        assert!(matches!(transfer_edges(&c4, 0, 1, &[0]), Err(Error::InvalidTransfer(_))));
        assert!(matches!(transfer_edges(&c4, 0, 0, &[1]), Err(Error::InvalidTransfer(_))));
        assert!(matches!(transfer_edges(&c4, 0, 1, &[]), Err(Error::InvalidTransfer(_))));
        assert!(matches!(transfer_edges(&c4, 2, 1, &[0, 0]), Err(Error::InvalidTransfer(_))));
        assert!(matches!(transfer_edges(&c4, 2, 1, &[3]), Err(Error::InvalidTransfer(_))));

        // s = d(v) with u, v non-adjacent isolates v
        let r = transfer_edges(&path(3).unwrap(), 0, 2, &[1]);
        assert!(r.is_err()); // 1 is already adjacent to 0
        let p4 = path(4).unwrap();
        let r = transfer_edges(&p4, 0, 3, &[2]).unwrap();
        assert!(r.disconnected && r.result.degree(3) == 0);
    }

    fn all_graphs(max_n: usize) -> impl Iterator<Item = Graph> {
        (1..=max_n).flat_map(|n| (0..1u64 << pair_count(n)).map(move |m| Graph::from_mask(n, m).unwrap()))
    }

    #[test]
    fn subdivision_preserves_everything_else() {
        for g in all_graphs(6) {
            for (u, v) in g.edges() {
                let r = subdivide_edge(&g, u, v).unwrap();
                let h = &r.result;
                let w = g.order();
                assert_eq!((h.order(), h.size()), (g.order() + 1, g.size() + 1));
                assert_eq!(h.volume(), g.volume() + 2);
                assert!(!h.has_edge(u, v) && h.has_edge(u, w) && h.has_edge(w, v));
                for (a, b) in g.edges() {
                    if (a, b) != (u, v) {
                        assert!(h.has_edge(r.old_to_new[a], r.old_to_new[b]));
                    }
                }
                for x in 0..g.order() {
                    assert_eq!(h.degree(x), g.degree(x));
                }
            }
        }
    }

    #[test]
    fn transfer_shifts_degrees() {
        for g in all_graphs(6) {
            let n = g.order();
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    let cand: Vec<usize> = bits(transfer_candidates(&g, u, v)).collect();
                    let mut subsets: Vec<Vec<usize>> = cand.iter().map(|&t| vec![t]).collect();
                    for (i, &a) in cand.iter().enumerate() {
                        for &b in &cand[i + 1..] {
                            subsets.push(vec![a, b]);
                        }
                    }
                    for t in subsets {
                        let s = t.len();
                        let h = transfer_edges(&g, u, v, &t).unwrap().result;
                        assert_eq!(h.volume(), g.volume());
                        assert_eq!(h.size(), g.size());
                        assert_eq!(h.degree(u), g.degree(u) + s);
                        assert_eq!(h.degree(v), g.degree(v) - s);
                    }
                }
            }
        }
    }

    #[test]
    fn identify_volume_additive() {
        let catalog: Vec<Graph> = (2..=5)
            .flat_map(|k| {
                let mut v = vec![path(k).unwrap(), complete(k).unwrap(), star(k).unwrap()];
                if k >= 3 {
                    v.push(cycle(k).unwrap());
                }
                v
            })
            .collect();
        for a in &catalog {
            for b in &catalog {
                for u in 0..a.order() {
                    for v in 0..b.order() {
                        let r = identify(a, u, b, v).unwrap();
                        assert_eq!(r.result.volume(), a.volume() + b.volume());
                        assert_eq!(r.result.degree(u), a.degree(u) + b.degree(v));
                        assert!(r.result.is_connected());
                    }
                }
            }
        }
    }

    #[test]
    fn subdivision_order_independent() {
        // Relabel by composing the append maps: the new vertex for edge e is
        // n + (position of e in the list), so compare after mapping each
        // inserted vertex back to the edge it splits.
        for g in all_graphs(5) {
            let edges = g.edges();
            let forward = subdivision_graph(&g, &edges).unwrap().result;
            let reversed: Vec<_> = edges.iter().rev().copied().collect();
            let backward = subdivision_graph(&g, &reversed).unwrap().result;
            let n = g.order();
            let m = edges.len();
            let relabel = |x: usize| if x < n { x } else { n + (m - 1 - (x - n)) };
            let mapped: Vec<(usize, usize)> =
                backward.edges().iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
            assert_eq!(Graph::from_edges(n + m, &mapped).unwrap(), forward);
        }
    }
}

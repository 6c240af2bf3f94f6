//! Checker outputs against spectra recomputed from scratch.

mod common;

use nlap::graph::star;
use nlap::perturb::{identify, subdivide_edge, subdivision_graph, transfer_candidates, transfer_edges};
use nlap::search::{catalog, connected_masks};
use nlap::theorems::{Checker, Verdict};
use nlap::Graph;

use common::{lambda2, rho};

const TOL: f64 = 1e-8;

fn agree(v: &Verdict, lhs: f64, rhs: f64) {
    assert!(
        (v.lhs - lhs).abs() <= TOL && (v.rhs - rhs).abs() <= TOL,
        "{} {} {:?}: checker ({}, {}) vs oracle ({lhs}, {rhs})",
        v.theorem,
        v.graph6,
        v.params,
        v.lhs,
        v.rhs
    );
}

fn connected(n: usize) -> impl Iterator<Item = Graph> {
    connected_masks(n).unwrap().map(move |m| Graph::from_mask(n, m).unwrap())
}

#[test]
fn single_graph_checkers() {
    let c = Checker::default();
    for n in 2..=6 {
        for g in connected(n) {
            if !g.is_complete() {
                agree(&c.check_lemma_2_4(&g).unwrap(), lambda2(&g), 1.0);
            }
        }
    }
    for n in 3..=12 {
        agree(&c.check_cor_2_3(n).unwrap(), lambda2(&star(n).unwrap()), 1.0);
    }
}

#[test]
fn subdivision_checkers() {
    let c = Checker::default();
    for n in 2..=6 {
        for g in connected(n) {
            let (l2, r) = (lambda2(&g), rho(&g));
            let edges = g.edges();
            for &(u, v) in &edges {
                let after = subdivide_edge(&g, u, v).unwrap().result;
                agree(&c.check_thm_3_1(&g, u, v).unwrap(), l2, lambda2(&after));
                agree(&c.check_thm_4_1(&g, u, v).unwrap(), r, rho(&after));
            }
            // Pairs of edges and the full edge set; single edges are covered above.
            let mut subsets: Vec<Vec<(usize, usize)>> = Vec::new();
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    subsets.push(vec![edges[i], edges[j]]);
                }
            }
            subsets.push(edges.clone());
            for s in subsets {
                let after = subdivision_graph(&g, &s).unwrap().result;
                agree(&c.check_cor_3_2(&g, &s).unwrap(), l2, lambda2(&after));
            }
        }
    }
}

#[test]
fn identification_checkers() {
    let c = Checker::default();
    let graphs: Vec<Graph> = catalog(5).into_iter().map(|(_, g)| g).collect();
    for g1 in graphs.iter().filter(|g| g.order() >= 2) {
        for g2 in &graphs {
            for u in 0..g1.order() {
                for v in 0..g2.order() {
                    let glued = identify(g1, u, g2, v).unwrap().result;
                    let (l1, lg) = (lambda2(g1), lambda2(&glued));
                    agree(&c.check_thm_3_3(g1, u, g2, v).unwrap(), l1, lg);
                    agree(&c.check_thm_4_2(g1, u, g2, v).unwrap(), rho(g1), rho(&glued));
                    let bound = if g2.order() >= 2 { l1.min(lambda2(g2)) } else { l1 };
                    agree(&c.check_cor_3_4(g1, u, g2, v).unwrap(), lg, bound);
                }
            }
        }
    }
}

#[test]
fn subtree_checker() {
    let c = Checker::default();
    for n in 2..=6 {
        for t in connected(n).filter(Graph::is_tree) {
            let whole = lambda2(&t);
            for set in 1u64..(1 << n) - 1 {
                let vs: Vec<usize> = (0..n).filter(|&x| set >> x & 1 == 1).collect();
                let (sub, _) = t.induced_subgraph(&vs).unwrap();
                if vs.len() < 2 || !sub.is_connected() {
                    continue;
                }
                agree(&c.check_cor_3_5(&t, &vs).unwrap(), whole, lambda2(&sub));
            }
        }
    }
}

#[test]
fn transfer_checkers() {
    let c = Checker::default();
    for n in 3..=6 {
        for g in connected(n) {
            let (l2, r) = (lambda2(&g), rho(&g));
            for u in 0..n {
                for v in (0..n).filter(|&v| v != u) {
                    let cand: Vec<usize> = (0..n).filter(|&x| transfer_candidates(&g, u, v) >> x & 1 == 1).collect();
                    let mut target_sets: Vec<Vec<usize>> = cand.iter().map(|&x| vec![x]).collect();
                    for i in 0..cand.len() {
                        for j in i + 1..cand.len() {
                            target_sets.push(vec![cand[i], cand[j]]);
                        }
                    }
                    for ts in target_sets {
                        let after = transfer_edges(&g, u, v, &ts).unwrap().result;
                        agree(&c.check_thm_3_6(&g, u, v, &ts).unwrap(), l2, lambda2(&after));
                        agree(&c.check_thm_4_3(&g, u, v, &ts).unwrap(), r, rho(&after));
                    }
                }
            }
        }
    }
}

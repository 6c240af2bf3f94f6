use proptest::prelude::*;

use nlap::graph::pair_count;
use nlap::search::{scan_theorem, ScanConfig};
use nlap::theorems::{check, replay_proof, Instance, TheoremId, Tolerances, Verdict};
use nlap::Graph;

fn connected_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), 0..1u64 << pair_count(n)))
        .prop_map(|(n, m)| Graph::from_mask(n, m).unwrap())
        .prop_filter("connected", Graph::is_connected)
}

fn edge_instance() -> impl Strategy<Value = Instance> {
    connected_graph(2, 7).prop_flat_map(|g| {
        let edges = g.edges();
        (0..edges.len()).prop_map(move |i| Instance::Edge { g: g.clone(), u: edges[i].0, v: edges[i].1 })
    })
}

#[test]
fn stored_witnesses_reproduce_their_bucket() {
    let tol = Tolerances::default();
    let cfg = ScanConfig::new(5).unwrap();
    for t in TheoremId::ALL {
        let report = scan_theorem(t, &cfg).unwrap();
        for w in report.witnesses() {
            let line = w.to_json_line();
            let back: nlap::search::Witness = serde_json::from_str(&line).unwrap();
            let v = back.reverify(&tol).unwrap();
            assert_eq!(v.precondition, w.precondition, "{line}");
            assert_eq!(v.direction(tol.strict_gap), w.direction, "{line}");
            assert_eq!(v.pass, w.pass, "{line}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn volume_is_twice_the_edge_count(n in 1usize..=10, seed in any::<u64>()) {
        let g = Graph::from_mask(n, seed & ((1u64 << pair_count(n)) - 1)).unwrap();
        prop_assert_eq!(g.volume(), 2 * g.edges().len());
    }

    #[test]
    fn verdicts_round_trip_through_json(inst in edge_instance()) {
        for t in [TheoremId::T3_1, TheoremId::T4_1] {
            let v = check(t, &inst).unwrap();
            prop_assert_eq!(Verdict::from_json_line(&v.to_json_line()).unwrap(), v.clone());
            let back = Instance::from_params(t.instance_kind(), &v.graph6, &v.params).unwrap();
            prop_assert_eq!(&back, &inst);
        }
    }

    #[test]
    fn shift_raises_the_degree_form(inst in edge_instance()) {
        let trace = replay_proof(TheoremId::T3_1, &inst, Some(0)).unwrap();
        prop_assert!(trace.all_hold);
        if trace.case.as_deref() == Some("f(u)f(v) > 0") {
            let s = trace.step("pᵀD′p ≥ fᵀDf").unwrap();
            let Instance::Edge { g, .. } = &inst else { unreachable!() };
            let vol = g.volume() as f64;
            let c = trace.step("c = −2f(u)/(Vol(G)+2)").unwrap().lhs;
            // c = −2f(u)/(Vol+2), so the excess 2f(u)²Vol/(2+Vol) is c²Vol(Vol+2)/2.
            let excess = c * c * vol * (vol + 2.0) / 2.0;
            prop_assert!(excess > 0.0);
            prop_assert!((s.lhs - s.rhs - excess).abs() <= 1e-9 * s.scale());
        }
    }
}

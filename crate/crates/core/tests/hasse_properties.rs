use proptest::prelude::*;

use hasse_pareto::hasse::{EdgeState, HasseDiagram, VertexId};
use hasse_pareto::instances::{random_dag, random_signature};
use hasse_pareto::{build_diagram, Signature};

/// Random order on up to 8 variables, possibly with one cycle.
fn order() -> impl Strategy<Value = (Signature, Vec<(usize, usize)>)> {
    (1usize..=8, 0.0f64..0.7, any::<u64>(), any::<bool>()).prop_map(|(n, density, seed, cycle)| {
        let mut constraints = random_dag(n, density, seed);
        if cycle && n >= 2 {
            let (a, b) = (
                1 + (seed % n as u64) as usize,
                1 + (seed / 7 % n as u64) as usize,
            );
            constraints.push((a, b));
            constraints.push((b, a));
        }
        (random_signature(n, 0.5, seed ^ 1).unwrap(), constraints)
    })
}

/// Brute-force transitive closure over `0..=n+1`, bounds included.
fn closure(n: usize, constraints: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let size = n + 2;
    let mut reach = vec![vec![false; size]; size];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in constraints {
        reach[i][j] = true;
    }
    reach[n + 1].fill(true);
    for row in reach.iter_mut() {
        row[0] = true;
    }
    for k in 0..size {
        for i in 0..size {
            for j in 0..size {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach
}

fn owner(d: &HasseDiagram) -> Vec<VertexId> {
    let mut out = vec![VertexId(0); d.n() + 2];
    for v in d.vertices() {
        for &i in v.indices() {
            out[i] = v.id();
        }
    }
    out
}

fn check_reduced(d: &HasseDiagram) {
    for (u, v, _) in d.edges() {
        for (w, _) in d.successors(u) {
            assert!(
                w == v || !d.reaches(w, v),
                "edge {u}->{v} is implied through {w}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduction_keeps_reachability((sig, constraints) in order()) {
        let n = sig.n();
        let d = build_diagram(sig, &constraints).unwrap();
        d.validate().unwrap();
        check_reduced(&d);
        let reach = closure(n, &constraints);
        let own = owner(&d);
        for i in 0..n + 2 {
            for j in 0..n + 2 {
                prop_assert_eq!(d.reaches(own[i], own[j]), reach[i][j], "pair {} {}", i, j);
            }
        }
        // indices share an aggregate exactly when they lie on a common cycle
        for i in 0..n + 2 {
            for j in 0..n + 2 {
                prop_assert_eq!(own[i] == own[j], reach[i][j] && reach[j][i]);
            }
        }
    }

    #[test]
    fn contraction_matches_rebuilt_diagram((sig, constraints) in order(), pick in any::<usize>()) {
        let d = build_diagram(sig.clone(), &constraints).unwrap();
        let upper = sig.upper_index();
        let inner: Vec<(VertexId, VertexId)> = d
            .edges()
            .filter(|&(u, v, _)| u.0 != upper && u.0 != 0 && v.0 != upper && v.0 != 0)
            .map(|(u, v, _)| (u, v))
            .collect();
        prop_assume!(!inner.is_empty());
        let (u, v) = inner[pick % inner.len()];
        let c = d.contract_edge(u, v).unwrap();
        c.validate().unwrap();
        prop_assert_eq!(c.vertex_count() + 1, d.vertex_count());
        prop_assert_eq!(&c, &c.transitive_reduction());
        check_reduced(&c);

        // the same partition built from scratch, with the two aggregates tied
        let mut tied = constraints.clone();
        tied.push((u.0, v.0));
        tied.push((v.0, u.0));
        let rebuilt = build_diagram(sig, &tied).unwrap();
        prop_assert_eq!(c.canonical_key(), rebuilt.canonical_key());

        let merged = c.vertex(VertexId(u.0.min(v.0))).unwrap();
        let mut expected: Vec<usize> = d.vertex(u).unwrap().indices().to_vec();
        expected.extend(d.vertex(v).unwrap().indices());
        expected.sort_unstable();
        prop_assert_eq!(merged.indices(), expected.as_slice());
    }

    #[test]
    fn frozen_edges_survive_contraction((sig, constraints) in order(), a in any::<usize>(), b in any::<usize>()) {
        let mut d = build_diagram(sig, &constraints).unwrap();
        let edges: Vec<(VertexId, VertexId)> = d.edges().map(|(u, v, _)| (u, v)).collect();
        let (fu, fv) = edges[a % edges.len()];
        d.freeze(fu, fv).unwrap();
        let (cu, cv) = edges[b % edges.len()];
        prop_assume!((cu, cv) != (fu, fv));
        let c = d.contract_edge(cu, cv).unwrap();
        prop_assert_eq!(c.edges().filter(|e| e.2 == EdgeState::Frozen).count(), 1);
        // the frozen edge still joins the aggregates holding its endpoints
        let own = owner(&c);
        prop_assert_eq!(c.edge_state(own[fu.0], own[fv.0]), Some(EdgeState::Frozen));
    }
}

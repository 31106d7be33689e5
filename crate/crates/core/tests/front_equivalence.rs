use std::collections::BTreeMap;

use hasse_pareto::decomposition::solve_by_decomposition;
use hasse_pareto::instances::{make_grid, random_corpus};
use hasse_pareto::oracle::{face_points, is_pareto_point, lattice_pareto, verify_front};
use hasse_pareto::solver::{dedupe_and_prune, Aggregate, Binding, ParamId};
use hasse_pareto::{solve_basic, solve_improved, Instance, ParetoFace, Signature};

fn check(instance: &Instance) {
    let d = instance.diagram().unwrap();
    let improved = solve_improved(&d).unwrap();
    let report = verify_front(instance, &improved.faces, 10).unwrap();
    assert!(report.passed(), "improved {}: {report}", instance.to_json());
    let basic = solve_basic(&d).unwrap();
    let report = verify_front(instance, &basic.faces, 10).unwrap();
    assert!(report.passed(), "basic {}: {report}", instance.to_json());
    assert_eq!(
        dedupe_and_prune(&basic.faces),
        improved.faces,
        "{}",
        instance.to_json()
    );
    assert_eq!(
        dedupe_and_prune(&improved.faces),
        improved.faces,
        "{}",
        instance.to_json()
    );
}

#[test]
fn random_corpus_matches_oracle() {
    for instance in random_corpus(300, 6, 11) {
        check(&instance);
    }
}

#[test]
fn every_signature_on_small_grids() {
    for (rows, cols) in [(1, 1), (1, 2), (2, 2), (1, 4), (2, 3)] {
        let n = rows * cols;
        for mask in 0..1u64 << n {
            let sig = Signature::from_mask(n, mask).unwrap();
            check(&Instance::new(&sig, &make_grid(rows, cols)));
        }
    }
}

#[test]
fn decomposition_expands_to_direct_faces() {
    for instance in random_corpus(500, 12, 23) {
        let d = instance.diagram().unwrap();
        let direct = dedupe_and_prune(&solve_improved(&d).unwrap().faces);
        let product = solve_by_decomposition(&d).unwrap();
        assert_eq!(product.expand().unwrap(), direct, "{}", instance.to_json());
    }
}

#[test]
fn decomposition_matches_oracle() {
    for instance in random_corpus(150, 6, 31) {
        let faces = solve_by_decomposition(&instance.diagram().unwrap())
            .unwrap()
            .expand()
            .unwrap();
        let report = verify_front(&instance, &faces, 10).unwrap();
        assert!(report.passed(), "{}: {report}", instance.to_json());
    }
}

#[test]
fn basic_and_improved_agree_up_to_twelve_variables() {
    for instance in random_corpus(500, 12, 47) {
        let d = instance.diagram().unwrap();
        let improved = solve_improved(&d).unwrap();
        let basic = solve_basic(&d).unwrap();
        assert_eq!(
            dedupe_and_prune(&basic.faces),
            improved.faces,
            "{}",
            instance.to_json()
        );
        assert_eq!(
            dedupe_and_prune(&improved.faces),
            improved.faces,
            "{}",
            instance.to_json()
        );
    }
}

/// Splitting a trade-off aggregate into two mixed parts, ordered as the
/// original constraints dictate, must add points that are not optimal.
#[test]
fn trade_off_aggregates_cannot_be_split() {
    for instance in random_corpus(120, 6, 5) {
        let sig = instance.signature().unwrap();
        let faces = solve_improved(&instance.diagram().unwrap()).unwrap().faces;
        let pareto = lattice_pareto(&instance, 4).unwrap();
        for face in &faces {
            for (pos, agg) in face.aggregates().iter().enumerate() {
                if !matches!(agg.binding, Binding::Free(_)) || agg.indices.len() < 2 {
                    continue;
                }
                let m = agg.indices.len();
                for mask in 1..(1u32 << m) - 1 {
                    let (mut left, mut right) = (Vec::new(), Vec::new());
                    for (i, &x) in agg.indices.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            left.push(x);
                        } else {
                            right.push(x);
                        }
                    }
                    let mixed = |part: &[usize]| {
                        part.iter().any(|&i| sig.is_ascending(i))
                            && part.iter().any(|&i| sig.is_descending(i))
                    };
                    if !mixed(&left) || !mixed(&right) {
                        continue;
                    }
                    let split = split_face(face, pos, &left, &right, &instance);
                    let Some(split) = split else { continue };
                    let points = face_points(&split, 4);
                    let feasible: Vec<_> = points
                        .into_iter()
                        .filter(|p| {
                            instance
                                .constraint_pairs()
                                .iter()
                                .all(|&(i, j)| p.numerators()[i - 1] >= p.numerators()[j - 1])
                        })
                        .collect();
                    assert!(
                        feasible.iter().any(|p| !pareto.contains(p)),
                        "{} face {pos} splits into {left:?} {right:?}",
                        instance.to_json()
                    );
                }
            }
        }
    }
}

/// The face with aggregate `pos` replaced by two free parts. Parameter
/// constraints come from the original constraints between aggregates;
/// `None` when the parts are tied both ways.
fn split_face(
    face: &ParetoFace,
    pos: usize,
    left: &[usize],
    right: &[usize],
    instance: &Instance,
) -> Option<ParetoFace> {
    let fresh = face.dimension() + 1;
    let mut aggregates: Vec<Aggregate> = face.aggregates().to_vec();
    let Binding::Free(p) = aggregates[pos].binding else {
        unreachable!()
    };
    aggregates[pos] = Aggregate {
        indices: left.to_vec(),
        binding: Binding::Free(p),
    };
    aggregates.push(Aggregate {
        indices: right.to_vec(),
        binding: Binding::Free(ParamId(fresh)),
    });
    let param_of: BTreeMap<usize, Option<ParamId>> = aggregates
        .iter()
        .flat_map(|a| {
            let param = match a.binding {
                Binding::Free(q) => Some(q),
                _ => None,
            };
            a.indices.iter().map(move |&i| (i, param))
        })
        .collect();
    let mut constraints = face.param_constraints().to_vec();
    for (i, j) in instance.constraint_pairs() {
        if let (Some(a), Some(b)) = (param_of[&i], param_of[&j]) {
            if a != b && (a == p || a == ParamId(fresh) || b == p || b == ParamId(fresh)) {
                constraints.push((a, b));
            }
        }
    }
    if constraints.contains(&(p, ParamId(fresh))) && constraints.contains(&(ParamId(fresh), p)) {
        return None;
    }
    ParetoFace::new(aggregates, constraints).ok()
}

#[test]
fn face_points_of_larger_instances_are_optimal() {
    for instance in random_corpus(60, 12, 71) {
        for face in solve_improved(&instance.diagram().unwrap()).unwrap().faces {
            for point in face_points(&face, 2) {
                assert!(
                    is_pareto_point(&instance, &point).unwrap(),
                    "{}: {point}",
                    instance.to_json()
                );
            }
        }
    }
}

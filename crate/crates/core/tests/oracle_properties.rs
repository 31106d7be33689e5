use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hasse_pareto::instances::{make_chain, random_dag, random_signature};
use hasse_pareto::oracle::{
    dominates, grid_enumerate, is_pareto_point, lattice_pareto, pareto_filter, strictly_dominates,
    Point,
};
use hasse_pareto::{Instance, Signature};

fn points(n: usize, k: u32, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Point::new((0..n).map(|_| rng.gen_range(0..=k)).collect(), k).unwrap())
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn dominance_is_a_partial_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for round in 0..10_000u64 {
        let n = rng.gen_range(1..=4);
        let sig = random_signature(n, 0.5, round).unwrap();
        // few values so that comparable triples are common
        let trio = points(n, 2, 3, round);
        let (x, y, z) = (&trio[0], &trio[1], &trio[2]);
        assert!(dominates(x, x, &sig).unwrap());
        if dominates(x, y, &sig).unwrap() && dominates(y, x, &sig).unwrap() {
            assert_eq!(x, y);
        }
        if dominates(x, y, &sig).unwrap() && dominates(y, z, &sig).unwrap() {
            assert!(dominates(x, z, &sig).unwrap());
        }
        assert_eq!(
            strictly_dominates(x, y, &sig).unwrap(),
            dominates(x, y, &sig).unwrap() && x != y
        );
    }
}

fn sorted(mut v: Vec<Point>) -> Vec<Point> {
    v.sort();
    v.dedup();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pareto_of_union_within_union_of_paretos(n in 1usize..=4, a in 1usize..12, b in 1usize..12, seed in any::<u64>()) {
        let sig = random_signature(n, 0.5, seed).unwrap();
        let left = points(n, 3, a, seed);
        let right = points(n, 3, b, seed ^ 0xff);
        let union: Vec<Point> = left.iter().chain(&right).cloned().collect();
        let mut parts = pareto_filter(&left, &sig).unwrap();
        parts.extend(pareto_filter(&right, &sig).unwrap());
        for p in pareto_filter(&union, &sig).unwrap() {
            prop_assert!(parts.contains(&p));
        }
    }

    #[test]
    fn pareto_unchanged_by_restriction_keeping_it(n in 1usize..=4, a in 1usize..15, keep in any::<u64>(), seed in any::<u64>()) {
        let sig = random_signature(n, 0.5, seed).unwrap();
        let all = points(n, 3, a, seed);
        let front = pareto_filter(&all, &sig).unwrap();
        // any subset containing the front has the same front
        let restricted: Vec<Point> = all
            .iter()
            .enumerate()
            .filter(|(i, p)| front.contains(p) || keep >> (i % 64) & 1 == 1)
            .map(|(_, p)| p.clone())
            .collect();
        prop_assert_eq!(sorted(pareto_filter(&restricted, &sig).unwrap()), sorted(front));
    }

    #[test]
    fn enumeration_matches_filtered_cube(n in 1usize..=4, k in 1u32..=4, density in 0.0f64..0.8, seed in any::<u64>()) {
        let constraints = random_dag(n, density, seed);
        let instance = Instance::new(&Signature::new(n, []).unwrap(), &constraints);
        let mut expected = Vec::new();
        let total = (k as usize + 1).pow(n as u32);
        for code in 0..total {
            let mut rest = code;
            let coords: Vec<u32> = (0..n).map(|_| { let c = (rest % (k as usize + 1)) as u32; rest /= k as usize + 1; c }).collect();
            if constraints.iter().all(|&(i, j)| coords[i - 1] >= coords[j - 1]) {
                expected.push(Point::new(coords, k).unwrap());
            }
        }
        prop_assert_eq!(sorted(grid_enumerate(&instance, k).unwrap()), sorted(expected));
    }

    #[test]
    fn unit_steps_agree_with_pairwise_filter(n in 1usize..=5, k in 1u32..=3, density in 0.0f64..0.8, seed in any::<u64>()) {
        let sig = random_signature(n, 0.5, seed).unwrap();
        let instance = Instance::new(&sig, &random_dag(n, density, seed));
        let all = grid_enumerate(&instance, k).unwrap();
        let pairwise = sorted(pareto_filter(&all, &sig).unwrap());
        prop_assert_eq!(sorted(lattice_pareto(&instance, k).unwrap()), pairwise.clone());
        for p in &all {
            prop_assert_eq!(is_pareto_point(&instance, p).unwrap(), pairwise.contains(p));
        }
    }
}

#[test]
fn chain_counts_are_binomial() {
    for n in 1..=5usize {
        for k in 1..=6u32 {
            let instance = Instance::new(&Signature::new(n, []).unwrap(), &make_chain(n));
            let count = grid_enumerate(&instance, k).unwrap().len() as u64;
            assert_eq!(
                count,
                binomial(u64::from(k) + n as u64, n as u64),
                "n={n} k={k}"
            );
        }
    }
}

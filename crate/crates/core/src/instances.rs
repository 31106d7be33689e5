//! Instance generators: chains, grids, random orders and bundled examples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hasse::Signature;
use crate::instance::Instance;

/// Total order `x_1 >= x_2 >= ... >= x_n`.
pub fn make_chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i, i + 1)).collect()
}

/// Product order on a `rows x cols` grid, variables numbered row-major.
/// Each cell dominates the cell below it and the cell to its right.
pub fn make_grid(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let id = |r: usize, c: usize| r * cols + c + 1;
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                out.push((id(r, c), id(r + 1, c)));
            }
            if c + 1 < cols {
                out.push((id(r, c), id(r, c + 1)));
            }
        }
    }
    out
}

/// Each index is maximized independently with probability `p`.
pub fn random_signature(n: usize, p: f64, seed: u64) -> Result<Signature> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ascending: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(p)).collect();
    Signature::new(n, ascending)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Chain {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    Explicit {
        n: usize,
        constraints: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum SignatureSource {
    Explicit(Vec<usize>),
    Random { p: f64, seed: u64 },
}

/// Recipe for one instance of an experiment family.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub signature: SignatureSource,
}

impl InstanceSpec {
    pub fn n(&self) -> usize {
        match &self.family {
            Family::Chain { n } | Family::Explicit { n, .. } => *n,
            Family::Grid { rows, cols } => rows * cols,
        }
    }

    pub fn build(&self) -> Result<Instance> {
        let n = self.n();
        if n == 0 {
            return Err(Error::EmptyProblem);
        }
        let constraints = match &self.family {
            Family::Chain { n } => make_chain(*n),
            Family::Grid { rows, cols } => make_grid(*rows, *cols),
            Family::Explicit { constraints, .. } => constraints.clone(),
        };
        let signature = match &self.signature {
            SignatureSource::Explicit(asc) => Signature::new(n, asc.iter().copied())?,
            SignatureSource::Random { p, seed } => random_signature(n, *p, *seed)?,
        };
        let instance = Instance::new(&signature, &constraints);
        instance.validate()?;
        Ok(instance)
    }
}

/// `k + 1` trade-off pairs linked by `k` ascending variables, each lying
/// below two neighbouring pairs. Every link chooses one of its two pairs
/// independently, so the front has `2^k` faces.
///
/// Pair `i` is `{2i + 1, 2i + 2}` (maximized, minimized; equal through a
/// cycle) and link `i` is `2(k + 1) + i`.
pub fn chained_trade_offs(k: usize) -> Instance {
    let pair = |i: usize| (2 * i + 1, 2 * i + 2);
    let n = 3 * k + 2;
    let mut constraints = Vec::new();
    let mut ascending = Vec::new();
    for i in 0..=k {
        let (a, b) = pair(i);
        constraints.push((a, b));
        constraints.push((b, a));
        ascending.push(a);
    }
    for i in 1..=k {
        let link = 2 * (k + 1) + i;
        constraints.push((pair(i - 1).0, link));
        constraints.push((pair(i).0, link));
        ascending.push(link);
    }
    let signature = Signature::new(n, ascending).expect("indices in range");
    Instance::new(&signature, &constraints)
}

const FIG4_JSON: &str = include_str!("../data/fig4.json");

/// The 5x5 signal grid with three stress patches (maximized cells).
pub fn fig4_instance() -> Instance {
    Instance::from_json(FIG4_JSON).expect("bundled instance is valid")
}

/// Random acyclic constraint set: a hidden random total order, with each
/// compatible pair constrained with probability `density`.
pub fn random_dag(n: usize, density: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                out.push((order[a], order[b]));
            }
        }
    }
    out
}

/// Random series-parallel order on `1..=n`.
pub fn random_series_parallel(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(&mut rng);
    let mut out = Vec::new();
    sp_compose(&labels, &mut rng, &mut out);
    out
}

/// Returns (maximal, minimal) elements of the composed order.
fn sp_compose(
    labels: &[usize],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(usize, usize)>,
) -> (Vec<usize>, Vec<usize>) {
    if labels.len() == 1 {
        return (labels.to_vec(), labels.to_vec());
    }
    let split = rng.gen_range(1..labels.len());
    let (top_max, top_min) = sp_compose(&labels[..split], rng, out);
    let (bottom_max, bottom_min) = sp_compose(&labels[split..], rng, out);
    if rng.gen_bool(0.5) {
        for &a in &top_min {
            for &b in &bottom_max {
                out.push((a, b));
            }
        }
        (top_max, bottom_min)
    } else {
        let mut maxima = top_max;
        maxima.extend(bottom_max);
        let mut minima = top_min;
        minima.extend(bottom_min);
        (maxima, minima)
    }
}

/// Seeded corpus of small random instances with `1 <= n <= max_n`.
///
/// Mixes sparse and dense random DAGs, grids, chains and, occasionally,
/// constraint sets with cycles.
pub fn random_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let sub_seed: u64 = rng.gen();
            let constraints = match rng.gen_range(0..10) {
                0 => make_chain(n),
                1 => {
                    let cols = rng.gen_range(1..=n);
                    let rows = n / cols;
                    let mut c = make_grid(rows, cols);
                    // leftover cells hang below the last row
                    for extra in rows * cols + 1..=n {
                        c.push((extra - cols.min(extra - 1), extra));
                    }
                    c
                }
                2 => {
                    let mut c = random_dag(n, 0.3, sub_seed);
                    if n >= 2 {
                        let a = rng.gen_range(1..=n);
                        let b = rng.gen_range(1..=n);
                        c.push((a, b));
                        c.push((b, a));
                    }
                    c
                }
                3 => random_series_parallel(n, sub_seed),
                k => random_dag(n, 0.1 * k as f64 - 0.25, sub_seed),
            };
            let p = rng.gen_range(0.2..0.8);
            let sig = random_signature(n, p, sub_seed ^ 0x9e37_79b9).expect("p in range");
            Instance::new(&sig, &constraints)
        })
        .collect()
}

//! Brute-force reference: dominance, Pareto filtering and exhaustive
//! enumeration of the feasible set on a rational lattice.
//!
//! Points of an instance are evaluated on `{0, 1/k, ..., 1}^n`. The order
//! constraints with integer bounds describe an integral polytope, so the
//! lattice points of every face are exactly the faces' points at
//! denominator `k`, and Pareto optimality within the lattice can be decided
//! by unit steps (see [`lattice_pareto`]).

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::hasse::Signature;
use crate::instance::Instance;
use crate::solver::{Binding, ParetoFace};

/// Refuse enumerations with more feasible lattice points than this.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Default lattice resolution.
pub const DEFAULT_STEPS: u32 = 10;

/// Point of `[0, 1]^n` with rational coordinates `coords[i] / denom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<u32>,
    denom: u32,
}

impl Point {
    pub fn new(coords: Vec<u32>, denom: u32) -> Result<Point> {
        if denom == 0 {
            return Err(Error::Precondition("zero denominator".into()));
        }
        if let Some(&c) = coords.iter().find(|&&c| c > denom) {
            return Err(Error::Precondition(format!(
                "coordinate {c}/{denom} outside [0, 1]"
            )));
        }
        Ok(Point { coords, denom })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Numerators, variable `i` at position `i - 1`.
    pub fn numerators(&self) -> &[u32] {
        &self.coords
    }

    pub fn denominator(&self) -> u32 {
        self.denom
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|&c| f64::from(c) / f64::from(self.denom))
            .collect()
    }

    fn cmp_coord(&self, i: usize, other: &Point) -> std::cmp::Ordering {
        (u64::from(self.coords[i]) * u64::from(other.denom))
            .cmp(&(u64::from(other.coords[i]) * u64::from(self.denom)))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match c {
                0 => f.write_str("0")?,
                c if c == self.denom => f.write_str("1")?,
                c => write!(f, "{c}/{}", self.denom)?,
            }
        }
        f.write_str(")")
    }
}

/// Weak dominance `x >= y`: at least as large on maximized coordinates and
/// at least as small on minimized ones.
pub fn dominates(x: &Point, y: &Point, signature: &Signature) -> Result<bool> {
    if x.len() != signature.n() || y.len() != signature.n() {
        return Err(Error::InvalidSignature {
            n: signature.n(),
            detail: format!("points of length {} and {}", x.len(), y.len()),
        });
    }
    Ok((0..x.len()).all(|i| {
        let ord = x.cmp_coord(i, y);
        if signature.is_ascending(i + 1) {
            ord.is_ge()
        } else {
            ord.is_le()
        }
    }))
}

/// Weak dominance by a different point.
pub fn strictly_dominates(x: &Point, y: &Point, signature: &Signature) -> Result<bool> {
    let same = (0..x.len().min(y.len())).all(|i| x.cmp_coord(i, y).is_eq());
    Ok(dominates(x, y, signature)? && !same)
}

/// Points not strictly dominated by any other point of the set, by pairwise
/// comparison. Duplicates are kept once.
pub fn pareto_filter(points: &[Point], signature: &Signature) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (i, x) in points.iter().enumerate() {
        let mut keep = true;
        for (j, y) in points.iter().enumerate() {
            if strictly_dominates(y, x, signature)? || (j < i && y == x) {
                keep = false;
                break;
            }
        }
        if keep {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Constraint data for lattice enumeration, zero-based.
struct Order {
    n: usize,
    direct: Vec<(usize, usize)>,
    /// `above[j]` lists every `i != j` with `x_i >= x_j` implied.
    above: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
}

impl Order {
    fn new(instance: &Instance) -> Result<Order> {
        instance.validate()?;
        let n = instance.n;
        let direct: Vec<(usize, usize)> = instance
            .constraint_pairs()
            .into_iter()
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| (i - 1, j - 1))
            .collect();
        let mut reach = vec![vec![false; n]; n];
        for &(i, j) in &direct {
            reach[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let via = reach[k].clone();
                    for (r, v) in reach[i].iter_mut().zip(via) {
                        *r |= v;
                    }
                }
            }
        }
        let mut above = vec![Vec::new(); n];
        let mut below = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && reach[i][j] {
                    above[j].push(i);
                    below[i].push(j);
                }
            }
        }
        Ok(Order {
            n,
            direct,
            above,
            below,
        })
    }

    fn feasible(&self, x: &[u32]) -> bool {
        self.direct.iter().all(|&(i, j)| x[i] >= x[j])
    }
}

/// All lattice points `{0, 1/k, ..., 1}^n` satisfying every constraint,
/// in lexicographic order, refusing more than [`DEFAULT_BUDGET`] points.
pub fn grid_enumerate(instance: &Instance, steps: u32) -> Result<Vec<Point>> {
    grid_enumerate_with_budget(instance, steps, DEFAULT_BUDGET)
}

pub fn grid_enumerate_with_budget(
    instance: &Instance,
    steps: u32,
    budget: usize,
) -> Result<Vec<Point>> {
    if steps == 0 {
        return Err(Error::Precondition(
            "lattice needs at least one step".into(),
        ));
    }
    let order = Order::new(instance)?;
    let mut out = Vec::new();
    let mut current = vec![0u32; order.n];
    enumerate_rec(&order, steps, 0, &mut current, &mut out, budget)?;
    Ok(out)
}

fn enumerate_rec(
    order: &Order,
    k: u32,
    i: usize,
    current: &mut [u32],
    out: &mut Vec<Point>,
    budget: usize,
) -> Result<()> {
    if i == order.n {
        if out.len() == budget {
            return Err(Error::BudgetExceeded { budget });
        }
        out.push(Point {
            coords: current.to_vec(),
            denom: k,
        });
        return Ok(());
    }
    // bounds implied by already assigned variables
    let lo = order.below[i]
        .iter()
        .filter(|&&j| j < i)
        .map(|&j| current[j])
        .max()
        .unwrap_or(0);
    let hi = order.above[i]
        .iter()
        .filter(|&&j| j < i)
        .map(|&j| current[j])
        .min()
        .unwrap_or(k);
    for v in lo..=hi {
        current[i] = v;
        enumerate_rec(order, k, i + 1, current, out, budget)?;
    }
    Ok(())
}

/// Whether a feasible lattice point is Pareto optimal among the feasible
/// lattice points.
///
/// A feasible `y` strictly dominating `x` exists iff moving some nonempty
/// set of coordinates one step in their improving direction stays feasible.
/// Moving a coordinate forces moves of the coordinates tied to it, so it is
/// enough to close each single move under these implications.
fn improvable(order: &Order, signature: &Signature, x: &[u32], k: u32) -> bool {
    let n = order.n;
    let up = |i: usize| signature.is_ascending(i + 1);
    let mut moved = vec![false; n];
    let mut stack = Vec::new();
    'start: for start in 0..n {
        moved.iter_mut().for_each(|m| *m = false);
        stack.clear();
        stack.push(start);
        moved[start] = true;
        while let Some(i) = stack.pop() {
            let can_move = if up(i) { x[i] < k } else { x[i] > 0 };
            if !can_move {
                continue 'start;
            }
            for &(a, b) in &order.direct {
                // x_a >= x_b must survive the move
                let forced = if up(i) && b == i && x[a] == x[b] {
                    Some(a)
                } else if !up(i) && a == i && x[a] == x[b] {
                    Some(b)
                } else {
                    None
                };
                if let Some(j) = forced {
                    if up(j) != up(i) {
                        continue 'start;
                    }
                    if !moved[j] {
                        moved[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        // one step apart: a moving down while b moves up is infeasible
        let clash = order
            .direct
            .iter()
            .any(|&(a, b)| moved[a] && moved[b] && !up(a) && up(b) && x[a] == x[b] + 1);
        if !clash {
            return true;
        }
    }
    false
}

/// Whether a lattice point is feasible and not dominated by any feasible
/// point. Needs no enumeration, so it works for any `n`.
pub fn is_pareto_point(instance: &Instance, point: &Point) -> Result<bool> {
    if point.len() != instance.n {
        return Err(Error::Precondition(format!(
            "point of length {} for {} variables",
            point.len(),
            instance.n
        )));
    }
    let order = Order::new(instance)?;
    let signature = instance.signature()?;
    Ok(
        order.feasible(&point.coords)
            && !improvable(&order, &signature, &point.coords, point.denom),
    )
}

/// Pareto-optimal points among the feasible lattice points.
pub fn lattice_pareto(instance: &Instance, steps: u32) -> Result<Vec<Point>> {
    let order = Order::new(instance)?;
    let signature = instance.signature()?;
    Ok(grid_enumerate(instance, steps)?
        .into_iter()
        .filter(|p| !improvable(&order, &signature, &p.coords, steps))
        .collect())
}

/// Whether a lattice point lies on a face.
pub fn face_contains(face: &ParetoFace, point: &Point) -> bool {
    let k = point.denom;
    let mut params = std::collections::BTreeMap::new();
    for agg in face.aggregates() {
        let Some(&first) = agg.indices.first().and_then(|&i| point.coords.get(i - 1)) else {
            return false;
        };
        if agg
            .indices
            .iter()
            .any(|&i| point.coords.get(i - 1) != Some(&first))
        {
            return false;
        }
        match agg.binding {
            Binding::FixedZero if first != 0 => return false,
            Binding::FixedOne if first != k => return false,
            Binding::Free(p) => {
                params.insert(p, first);
            }
            _ => {}
        }
    }
    face.n() == point.len()
        && face
            .param_constraints()
            .iter()
            .all(|(a, b)| params[a] >= params[b])
}

/// Lattice points of a face, over all parameter assignments in
/// `{0, ..., k}` satisfying the parameter constraints.
pub fn face_points(face: &ParetoFace, steps: u32) -> Vec<Point> {
    let params: Vec<_> = face.free_aggregates().map(|(p, _)| p).collect();
    let mut out = Vec::new();
    let mut values = vec![0u32; params.len()];
    let mut coords = vec![0u32; face.n()];
    for agg in face.aggregates() {
        let v = match agg.binding {
            Binding::FixedOne => steps,
            _ => 0,
        };
        for &i in &agg.indices {
            coords[i - 1] = v;
        }
    }
    face_points_rec(face, &params, 0, &mut values, &mut coords, steps, &mut out);
    out
}

fn face_points_rec(
    face: &ParetoFace,
    params: &[crate::solver::ParamId],
    i: usize,
    values: &mut [u32],
    coords: &mut [u32],
    k: u32,
    out: &mut Vec<Point>,
) {
    if i == params.len() {
        let ok = face.param_constraints().iter().all(|&(a, b)| {
            let pos = |p| {
                params
                    .iter()
                    .position(|&q| q == p)
                    .expect("known parameter")
            };
            values[pos(a)] >= values[pos(b)]
        });
        if ok {
            for agg in face.aggregates() {
                if let Binding::Free(p) = agg.binding {
                    let v = values[params
                        .iter()
                        .position(|&q| q == p)
                        .expect("known parameter")];
                    for &j in &agg.indices {
                        coords[j - 1] = v;
                    }
                }
            }
            out.push(Point {
                coords: coords.to_vec(),
                denom: k,
            });
        }
        return;
    }
    for v in 0..=k {
        values[i] = v;
        face_points_rec(face, params, i + 1, values, coords, k, out);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// A Pareto-optimal lattice point on no face.
    Uncovered,
    /// A face point violating a constraint.
    Infeasible,
    /// A feasible face point that is dominated.
    Dominated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: FailureKind,
    pub point: Point,
    /// Position of the offending face in the checked list.
    pub face: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub steps: u32,
    pub feasible_points: usize,
    pub pareto_points: usize,
    pub faces: usize,
    pub face_points_checked: usize,
    pub failure: Option<Witness>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "PASS k={} feasible={} pareto={} faces={} face_points={}",
                self.steps,
                self.feasible_points,
                self.pareto_points,
                self.faces,
                self.face_points_checked
            ),
            Some(w) => {
                let what = match w.kind {
                    FailureKind::Uncovered => "pareto point on no face",
                    FailureKind::Infeasible => "face point is infeasible",
                    FailureKind::Dominated => "face point is dominated",
                };
                write!(f, "FAIL k={} {what}: {}", self.steps, w.point)?;
                if let Some(i) = w.face {
                    write!(f, " (face {i})")?;
                }
                Ok(())
            }
        }
    }
}

/// Checks that the faces describe exactly the lattice Pareto set: each
/// Pareto point lies on a face and each lattice point of each face is
/// feasible and Pareto optimal.
pub fn verify_front(
    instance: &Instance,
    faces: &[ParetoFace],
    steps: u32,
) -> Result<VerificationReport> {
    verify_front_with_budget(instance, faces, steps, DEFAULT_BUDGET)
}

pub fn verify_front_with_budget(
    instance: &Instance,
    faces: &[ParetoFace],
    steps: u32,
    budget: usize,
) -> Result<VerificationReport> {
    if let Some(widest) = faces.iter().map(|f| f.aggregates().len()).max() {
        if widest > steps as usize {
            return Err(Error::Precondition(format!(
                "{steps} steps cannot separate a face with {widest} aggregates"
            )));
        }
    }
    let order = Order::new(instance)?;
    let signature = instance.signature()?;
    let feasible = grid_enumerate_with_budget(instance, steps, budget)?;
    let pareto: HashSet<Point> = feasible
        .iter()
        .filter(|p| !improvable(&order, &signature, &p.coords, steps))
        .cloned()
        .collect();
    let mut report = VerificationReport {
        steps,
        feasible_points: feasible.len(),
        pareto_points: pareto.len(),
        faces: faces.len(),
        face_points_checked: 0,
        failure: None,
    };
    let mut sorted: Vec<&Point> = pareto.iter().collect();
    sorted.sort();
    if let Some(p) = sorted
        .into_iter()
        .find(|p| !faces.iter().any(|f| face_contains(f, p)))
    {
        report.failure = Some(Witness {
            kind: FailureKind::Uncovered,
            point: p.clone(),
            face: None,
        });
        return Ok(report);
    }
    for (i, face) in faces.iter().enumerate() {
        if face.n() != instance.n {
            return Err(Error::Precondition(format!(
                "face {i} covers {} variables, instance has {}",
                face.n(),
                instance.n
            )));
        }
        for point in face_points(face, steps) {
            report.face_points_checked += 1;
            if pareto.contains(&point) {
                continue;
            }
            let kind = if order.feasible(&point.coords) {
                FailureKind::Dominated
            } else {
                FailureKind::Infeasible
            };
            report.failure = Some(Witness {
                kind,
                point,
                face: Some(i),
            });
            return Ok(report);
        }
    }
    Ok(report)
}

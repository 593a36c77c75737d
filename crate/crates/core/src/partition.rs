//! Monochromatic subcube machinery: enumeration of all monochromatic
//! subcubes, partition validation, the exact minimal-partition solver
//! (branch and bound), decision-tree upper bounds, and the
//! tree-inducibility test.

use crate::cube::BooleanFunction;
use crate::error::{Error, Result};
use serde_json::json;
use std::fmt::Write as _;

/// Hard cap for monochromatic-subcube enumeration (3^14 candidates).
pub const ENUMERATION_MAX_N: u32 = 14;

/// Default dimension limit for the exact solver.
pub const DEFAULT_SOLVER_MAX_N: u32 = 8;

/// Default node budget for the exact solver.
pub const DEFAULT_SOLVER_BUDGET: u64 = 5_000_000;

/// Dimension limit for decision-tree construction.
pub const DECISION_TREE_MAX_N: u32 = 20;

/// A combinatorial subcube: coordinates in `mask` are fixed to the bits in
/// `values`, the rest are free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subcube {
    n: u32,
    mask: u64,
    values: u64,
}

impl Subcube {
    pub fn new(n: u32, mask: u64, values: u64) -> Result<Self> {
        let full = (1u64 << n) - 1;
        if mask & !full != 0 || values & !mask != 0 {
            return Err(Error::InvalidFamily(format!(
                "subcube mask={mask:b} values={values:b} malformed for n={n}"
            )));
        }
        Ok(Subcube { n, mask, values })
    }

    pub fn full_cube(n: u32) -> Self {
        Subcube { n, mask: 0, values: 0 }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn values(&self) -> u64 {
        self.values
    }

    /// Number of fixed coordinates.
    pub fn codimension(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn cardinality(&self) -> u64 {
        1u64 << (self.n - self.codimension())
    }

    #[inline]
    pub fn contains(&self, idx: u64) -> bool {
        idx & self.mask == self.values
    }

    /// Visit every point of the subcube, ascending by index.
    pub fn for_each_point(&self, mut visit: impl FnMut(u64)) {
        let full = (1u64 << self.n) - 1;
        let free = full & !self.mask;
        // Standard submask walk over the free coordinates.
        let mut sub = 0u64;
        loop {
            visit(self.values | sub);
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
    }

    pub fn points(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        self.for_each_point(|p| out.push(p));
        out
    }

    pub fn disjoint(&self, other: &Subcube) -> bool {
        let common = self.mask & other.mask;
        (self.values ^ other.values) & common != 0
    }

    /// Indicator of the subcube as a Boolean function.
    pub fn indicator(&self) -> BooleanFunction {
        let mut table = crate::bits::DenseBits::zeros(1u64 << self.n);
        self.for_each_point(|p| table.set(p, true));
        BooleanFunction::from_table(table, self.n).expect("dimension already validated")
    }
}

/// Coordinate-1-first binary rendering (most significant coordinate last,
/// per the idx convention).
pub fn coord_bits(word: u64, n: u32) -> String {
    (0..n).map(|i| if (word >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// A list of labeled subcubes intended to partition the cube, each part
/// monochromatic for the reference function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcubePartition {
    n: u32,
    parts: Vec<(Subcube, bool)>,
}

impl SubcubePartition {
    pub fn new(n: u32, parts: Vec<(Subcube, bool)>) -> Self {
        SubcubePartition { n, parts }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[(Subcube, bool)] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn label1_count(&self) -> usize {
        self.parts.iter().filter(|(_, label)| *label).count()
    }

    /// One part per line: "mask=<binary> values=<binary> label=<0|1>".
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (cube, label) in &self.parts {
            let _ = writeln!(
                out,
                "mask={} values={} label={}",
                coord_bits(cube.mask(), self.n),
                coord_bits(cube.values(), self.n),
                *label as u8
            );
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .parts
            .iter()
            .map(|(cube, label)| {
                json!({
                    "mask": coord_bits(cube.mask(), self.n),
                    "values": coord_bits(cube.values(), self.n),
                    "label": *label as u8,
                })
            })
            .collect::<Vec<_>>())
    }
}

/// Why a candidate partition is not a valid monochromatic partition of f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    DimensionMismatch { partition_n: u32, function_n: u32 },
    MalformedPart { index: usize },
    Overlap { first: usize, second: usize, point: u64 },
    NotMonochromatic { index: usize, point: u64 },
    Uncovered { point: u64 },
}

impl std::fmt::Display for PartitionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartitionViolation::DimensionMismatch { partition_n, function_n } => {
                write!(f, "partition is over n={partition_n} but function has n={function_n}")
            }
            PartitionViolation::MalformedPart { index } => {
                write!(f, "part {index} is malformed")
            }
            PartitionViolation::Overlap { first, second, point } => {
                write!(f, "parts {first} and {second} share point {point}")
            }
            PartitionViolation::NotMonochromatic { index, point } => {
                write!(f, "part {index} is not monochromatic: f disagrees at point {point}")
            }
            PartitionViolation::Uncovered { point } => {
                write!(f, "point {point} is not covered by any part")
            }
        }
    }
}

/// Check disjointness, exact cover, and monochromaticity. Violations are
/// the return value, not errors.
pub fn validate_partition(
    p: &SubcubePartition,
    f: &BooleanFunction,
) -> std::result::Result<(), PartitionViolation> {
    if p.n() != f.n() {
        return Err(PartitionViolation::DimensionMismatch {
            partition_n: p.n(),
            function_n: f.n(),
        });
    }
    let size = f.size();
    // owner[x] = 1 + index of the part covering x.
    let mut owner = vec![0usize; size as usize];
    for (index, (cube, label)) in p.parts().iter().enumerate() {
        if cube.n() != p.n() || cube.values() & !cube.mask() != 0 {
            return Err(PartitionViolation::MalformedPart { index });
        }
        let mut violation = None;
        cube.for_each_point(|x| {
            if violation.is_some() {
                return;
            }
            if owner[x as usize] != 0 {
                violation = Some(PartitionViolation::Overlap {
                    first: owner[x as usize] - 1,
                    second: index,
                    point: x,
                });
            } else if f.eval(x) != *label {
                violation = Some(PartitionViolation::NotMonochromatic { index, point: x });
            } else {
                owner[x as usize] = index + 1;
            }
        });
        if let Some(v) = violation {
            return Err(v);
        }
    }
    if let Some(x) = owner.iter().position(|&o| o == 0) {
        return Err(PartitionViolation::Uncovered { point: x as u64 });
    }
    Ok(())
}

/// All subcubes on which f is constant, with their labels, ordered by
/// (codimension, mask, values). Dynamic program over the 3^n subcubes: a
/// subcube is monochromatic iff both halves along its lowest free
/// coordinate are, with equal labels.
pub fn enumerate_monochromatic_subcubes(f: &BooleanFunction) -> Result<Vec<(Subcube, bool)>> {
    let n = f.n();
    if n > ENUMERATION_MAX_N {
        return Err(Error::DimensionTooLarge {
            op: "monochromatic subcube enumeration",
            n,
            limit: ENUMERATION_MAX_N,
        });
    }
    let size = 1usize << n;
    const MIXED: u8 = 2;
    // labels[mask][rank of values within mask]
    let mut labels: Vec<Vec<u8>> = Vec::with_capacity(size);
    for mask in 0..size {
        labels.push(vec![0; 1 << (mask as u64).count_ones()]);
    }
    let full = size - 1;
    for mask in (0..size).rev() {
        let mask_u = mask as u64;
        let free = (full & !mask) as u64;
        if free == 0 {
            // Codimension n: single points.
            for (rank, slot) in labels[mask].iter_mut().enumerate() {
                *slot = f.eval(expand_rank(rank as u64, mask_u)) as u8;
            }
            continue;
        }
        let low = free & free.wrapping_neg();
        let child_mask = (mask_u | low) as usize;
        for rank in 0..labels[mask].len() {
            let values = expand_rank(rank as u64, mask_u);
            let a = labels[child_mask][compress_rank(values, child_mask as u64) as usize];
            let b = labels[child_mask][compress_rank(values | low, child_mask as u64) as usize];
            labels[mask][rank] = if a == b { a } else { MIXED };
        }
    }
    let mut masks: Vec<u64> = (0..=full as u64).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let mut out = Vec::new();
    for mask in masks {
        for rank in 0..labels[mask as usize].len() as u64 {
            let label = labels[mask as usize][rank as usize];
            if label != MIXED {
                out.push((
                    Subcube {
                        n,
                        mask,
                        values: expand_rank(rank, mask),
                    },
                    label == 1,
                ));
            }
        }
    }
    Ok(out)
}

/// Pack the bits of `values` at the set positions of `mask` into a dense
/// rank, lowest mask bit first.
fn compress_rank(values: u64, mask: u64) -> u64 {
    let mut rank = 0u64;
    let mut out_bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if values & low != 0 {
            rank |= 1 << out_bit;
        }
        out_bit += 1;
        m &= m - 1;
    }
    rank
}

/// Inverse of `compress_rank`.
fn expand_rank(rank: u64, mask: u64) -> u64 {
    let mut values = 0u64;
    let mut in_bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if (rank >> in_bit) & 1 == 1 {
            values |= low;
        }
        in_bit += 1;
        m &= m - 1;
    }
    values
}

/// Result of the exact minimal-partition search.
#[derive(Debug, Clone)]
pub struct PartitionSearch {
    pub size: usize,
    pub witness: SubcubePartition,
    /// False when the node budget ran out; `size` is then an upper bound.
    pub optimal: bool,
    pub nodes_expanded: u64,
}

struct Solver<'a> {
    cands: &'a [(Subcube, bool)],
    /// Candidate indices containing each point, cardinality descending.
    point_cands: Vec<Vec<u32>>,
    covered: Vec<u64>,
    uncovered: [u64; 2],
    max_card: [u64; 2],
    budget: u64,
    nodes: u64,
    exhausted: bool,
    current: Vec<u32>,
    best: Vec<u32>,
    best_size: usize,
}

impl Solver<'_> {
    fn point_covered(&self, x: u64) -> bool {
        (self.covered[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    fn cube_disjoint_from_covered(&self, cube: &Subcube) -> bool {
        let mut ok = true;
        cube.for_each_point(|x| {
            if ok && self.point_covered(x) {
                ok = false;
            }
        });
        ok
    }

    fn set_cover(&mut self, cube: &Subcube, label: bool, on: bool) {
        let delta = cube.cardinality();
        cube.for_each_point(|x| {
            self.covered[(x >> 6) as usize] ^= 1 << (x & 63);
        });
        if on {
            self.uncovered[label as usize] -= delta;
        } else {
            self.uncovered[label as usize] += delta;
        }
    }

    fn lower_bound(&self) -> usize {
        let mut lb = 0usize;
        for label in 0..2 {
            let unc = self.uncovered[label];
            if unc > 0 {
                lb += unc.div_ceil(self.max_card[label]) as usize;
            }
        }
        lb
    }

    fn search(&mut self, n: u32) {
        if self.uncovered[0] + self.uncovered[1] == 0 {
            if self.current.len() < self.best_size {
                self.best_size = self.current.len();
                self.best = self.current.clone();
            }
            return;
        }
        if self.exhausted || self.current.len() + self.lower_bound() >= self.best_size {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        // Branch on the lowest-index uncovered point.
        let size = 1u64 << n;
        let mut point = u64::MAX;
        for x in 0..size {
            if !self.point_covered(x) {
                point = x;
                break;
            }
        }
        debug_assert!(point != u64::MAX);
        let cand_indices = std::mem::take(&mut self.point_cands[point as usize]);
        for &ci in &cand_indices {
            let (cube, label) = self.cands[ci as usize];
            if !self.cube_disjoint_from_covered(&cube) {
                continue;
            }
            self.set_cover(&cube, label, true);
            self.current.push(ci);
            self.search(n);
            self.current.pop();
            self.set_cover(&cube, label, false);
            if self.exhausted {
                break;
            }
        }
        self.point_cands[point as usize] = cand_indices;
    }
}

/// Exact minimum monochromatic subcube partition by branch and bound.
/// Branches on the lowest uncovered point; candidates ordered by
/// cardinality descending; pruned by static per-label covering bounds.
pub fn min_partition_exact(f: &BooleanFunction, budget: u64) -> Result<PartitionSearch> {
    min_partition_exact_limit(f, budget, DEFAULT_SOLVER_MAX_N)
}

/// As `min_partition_exact` with an explicit dimension limit (at most 14).
pub fn min_partition_exact_limit(
    f: &BooleanFunction,
    budget: u64,
    n_limit: u32,
) -> Result<PartitionSearch> {
    let n = f.n();
    if n > n_limit.min(ENUMERATION_MAX_N) {
        return Err(Error::DimensionTooLarge {
            op: "exact partition solver",
            n,
            limit: n_limit.min(ENUMERATION_MAX_N),
        });
    }
    let cands = enumerate_monochromatic_subcubes(f)?;
    let size = f.size();

    // Seed the incumbent with the decision-tree partition; the solver only
    // has to beat it.
    let (_, dt_partition) = decision_tree_partition(f)?;

    let mut point_cands: Vec<Vec<u32>> = vec![Vec::new(); size as usize];
    let mut max_card = [0u64; 2];
    for (ci, (cube, label)) in cands.iter().enumerate() {
        max_card[*label as usize] = max_card[*label as usize].max(cube.cardinality());
        cube.for_each_point(|x| point_cands[x as usize].push(ci as u32));
    }
    // Enumeration order is codimension ascending, so indices are already
    // cardinality descending.
    let ones = f.support_size();
    let mut solver = Solver {
        cands: &cands,
        point_cands,
        covered: vec![0u64; size.div_ceil(64) as usize],
        uncovered: [size - ones, ones],
        max_card: [max_card[0].max(1), max_card[1].max(1)],
        budget,
        nodes: 0,
        exhausted: false,
        current: Vec::new(),
        best: Vec::new(),
        best_size: dt_partition.len(),
    };
    solver.search(n);

    let (witness, optimal) = if solver.best.is_empty() {
        // The decision-tree incumbent was never beaten.
        (dt_partition, !solver.exhausted)
    } else {
        let parts: Vec<(Subcube, bool)> =
            solver.best.iter().map(|&ci| cands[ci as usize]).collect();
        (SubcubePartition::new(n, parts), !solver.exhausted)
    };
    Ok(PartitionSearch {
        size: witness.len(),
        witness,
        optimal,
        nodes_expanded: solver.nodes,
    })
}

/// Enumerate every minimal partition (all exact covers of size `h`,
/// assumed minimal). Canonical generation: each step covers the lowest
/// uncovered point, so each partition appears exactly once.
pub fn enumerate_minimum_partitions(
    f: &BooleanFunction,
    h: usize,
    budget: u64,
) -> Result<Vec<SubcubePartition>> {
    let n = f.n();
    if n > DEFAULT_SOLVER_MAX_N {
        return Err(Error::DimensionTooLarge {
            op: "minimal partition enumeration",
            n,
            limit: DEFAULT_SOLVER_MAX_N,
        });
    }
    let cands = enumerate_monochromatic_subcubes(f)?;
    let size = f.size();
    let mut point_cands: Vec<Vec<u32>> = vec![Vec::new(); size as usize];
    for (ci, (cube, _)) in cands.iter().enumerate() {
        cube.for_each_point(|x| point_cands[x as usize].push(ci as u32));
    }
    let mut covered = vec![false; size as usize];
    let mut current: Vec<u32> = Vec::new();
    let mut found: Vec<SubcubePartition> = Vec::new();
    let mut nodes = 0u64;

    fn rec(
        cands: &[(Subcube, bool)],
        point_cands: &[Vec<u32>],
        covered: &mut Vec<bool>,
        current: &mut Vec<u32>,
        found: &mut Vec<SubcubePartition>,
        h: usize,
        n: u32,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded {
                op: "minimal partition enumeration",
                detail: format!("{budget} nodes"),
            });
        }
        let point = covered.iter().position(|&c| !c);
        let Some(point) = point else {
            if current.len() == h {
                let parts = current.iter().map(|&ci| cands[ci as usize]).collect();
                found.push(SubcubePartition::new(n, parts));
            }
            return Ok(());
        };
        if current.len() >= h {
            return Ok(());
        }
        for &ci in &point_cands[point] {
            let (cube, _) = &cands[ci as usize];
            let mut disjoint = true;
            cube.for_each_point(|x| {
                if covered[x as usize] {
                    disjoint = false;
                }
            });
            if !disjoint {
                continue;
            }
            cube.for_each_point(|x| covered[x as usize] = true);
            current.push(ci);
            rec(cands, point_cands, covered, current, found, h, n, nodes, budget)?;
            current.pop();
            cube.for_each_point(|x| covered[x as usize] = false);
        }
        Ok(())
    }

    rec(
        &cands,
        &point_cands,
        &mut covered,
        &mut current,
        &mut found,
        h,
        n,
        &mut nodes,
        budget,
    )?;
    Ok(found)
}

/// A decision tree over the cube's coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    Split {
        coordinate: u32,
        zero: Box<DecisionTree>,
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Split { zero, one, .. } => zero.leaf_count() + one.leaf_count(),
        }
    }

    pub fn eval(&self, x: u64) -> bool {
        match self {
            DecisionTree::Leaf(label) => *label,
            DecisionTree::Split { coordinate, zero, one } => {
                if (x >> (coordinate - 1)) & 1 == 1 {
                    one.eval(x)
                } else {
                    zero.eval(x)
                }
            }
        }
    }
}

/// Greedy decision tree: split on the coordinate of maximum influence in
/// the current restriction (ties to the lowest index). The leaf-induced
/// partition upper-bounds the minimal partition size.
pub fn decision_tree_partition(
    f: &BooleanFunction,
) -> Result<(DecisionTree, SubcubePartition)> {
    let n = f.n();
    if n > DECISION_TREE_MAX_N {
        return Err(Error::DimensionTooLarge {
            op: "decision tree construction",
            n,
            limit: DECISION_TREE_MAX_N,
        });
    }
    let mut parts = Vec::new();
    let tree = build_tree(f, Subcube::full_cube(n), &mut parts);
    Ok((tree, SubcubePartition::new(n, parts)))
}

fn build_tree(
    f: &BooleanFunction,
    region: Subcube,
    parts: &mut Vec<(Subcube, bool)>,
) -> DecisionTree {
    let mut first = None;
    let mut constant = true;
    region.for_each_point(|x| {
        let v = f.eval(x);
        match first {
            None => first = Some(v),
            Some(fv) if fv != v => constant = false,
            _ => {}
        }
    });
    let first = first.expect("region is nonempty");
    if constant {
        parts.push((region, first));
        return DecisionTree::Leaf(first);
    }
    // Pick the free coordinate with the largest boundary inside the region.
    let mut best: Option<(u64, u32)> = None;
    for i in 1..=f.n() {
        let bit = 1u64 << (i - 1);
        if region.mask() & bit != 0 {
            continue;
        }
        let half = Subcube::new(f.n(), region.mask() | bit, region.values())
            .expect("restriction of a valid subcube");
        let mut boundary = 0u64;
        half.for_each_point(|x| {
            if f.eval(x) != f.eval(x | bit) {
                boundary += 1;
            }
        });
        if best.map(|(b, _)| boundary > b).unwrap_or(true) {
            best = Some((boundary, i));
        }
    }
    let (_, coordinate) = best.expect("non-constant region has a free coordinate");
    let bit = 1u64 << (coordinate - 1);
    let zero_region = Subcube::new(f.n(), region.mask() | bit, region.values()).unwrap();
    let one_region = Subcube::new(f.n(), region.mask() | bit, region.values() | bit).unwrap();
    let zero = build_tree(f, zero_region, parts);
    let one = build_tree(f, one_region, parts);
    DecisionTree::Split {
        coordinate,
        zero: Box::new(zero),
        one: Box::new(one),
    }
}

/// True iff the partition is induced by some decision tree: a region's
/// parts are tree-inducible iff there is a single part, or some coordinate
/// free in the region is fixed in every part and both halves along it are
/// recursively tree-inducible.
pub fn is_tree_inducible(p: &SubcubePartition) -> bool {
    let parts: Vec<&Subcube> = p.parts().iter().map(|(c, _)| c).collect();
    inducible(&parts, 0, p.n())
}

fn inducible(parts: &[&Subcube], region_mask: u64, n: u32) -> bool {
    if parts.len() <= 1 {
        return true;
    }
    for i in 0..n {
        let bit = 1u64 << i;
        if region_mask & bit != 0 {
            continue;
        }
        if parts.iter().all(|c| c.mask() & bit != 0) {
            let zero: Vec<&Subcube> = parts
                .iter()
                .copied()
                .filter(|c| c.values() & bit == 0)
                .collect();
            let one: Vec<&Subcube> = parts
                .iter()
                .copied()
                .filter(|c| c.values() & bit != 0)
                .collect();
            if inducible(&zero, region_mask | bit, n) && inducible(&one, region_mask | bit, n) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{Family, FamilySpec};

    fn gen(family: Family, n: u32) -> BooleanFunction {
        FamilySpec::new(family, n).generate().unwrap()
    }

    #[test]
    fn subcube_basics() {
        let c = Subcube::new(3, 0b101, 0b100).unwrap();
        assert_eq!(c.codimension(), 2);
        assert_eq!(c.cardinality(), 2);
        assert_eq!(c.points(), vec![0b100, 0b110]);
        assert!(c.contains(0b110));
        assert!(!c.contains(0b111));
        assert!(Subcube::new(3, 0b001, 0b010).is_err());
    }

    #[test]
    fn subcube_disjointness() {
        let a = Subcube::new(2, 0b01, 0b00).unwrap();
        let b = Subcube::new(2, 0b01, 0b01).unwrap();
        let c = Subcube::new(2, 0b10, 0b00).unwrap();
        assert!(a.disjoint(&b));
        assert!(!a.disjoint(&c));
    }

    #[test]
    fn enumerate_constant1_n1() {
        let list = enumerate_monochromatic_subcubes(&gen(Family::Constant1, 1)).unwrap();
        assert_eq!(list.len(), 3);
        assert!(list.iter().all(|(_, label)| *label));
        // Full cube first (codimension 0), then the two points.
        assert_eq!(list[0].0, Subcube::full_cube(1));
    }

    #[test]
    fn enumerate_xor_only_singletons() {
        let list = enumerate_monochromatic_subcubes(&gen(Family::Parity, 2)).unwrap();
        assert_eq!(list.len(), 4);
        assert!(list.iter().all(|(c, _)| c.codimension() == 2));
    }

    #[test]
    fn enumerate_dictator_halves() {
        let list = enumerate_monochromatic_subcubes(&gen(Family::Dictator { i: 1 }, 2)).unwrap();
        let zero_half = Subcube::new(2, 0b01, 0b00).unwrap();
        let one_half = Subcube::new(2, 0b01, 0b01).unwrap();
        assert!(list.contains(&(zero_half, false)));
        assert!(list.contains(&(one_half, true)));
    }

    #[test]
    fn enumerate_agrees_with_direct_scan() {
        // Independent route: test all 3^n subcubes directly.
        for fam in [Family::Maj4, Family::InnerProduct, Family::Tribes { width: 2 }] {
            let f = gen(fam, 4);
            let fast = enumerate_monochromatic_subcubes(&f).unwrap();
            let mut slow = Vec::new();
            for mask in 0..16u64 {
                for values in 0..16u64 {
                    if values & !mask != 0 {
                        continue;
                    }
                    let cube = Subcube::new(4, mask, values).unwrap();
                    let pts = cube.points();
                    let label = f.eval(pts[0]);
                    if pts.iter().all(|&x| f.eval(x) == label) {
                        slow.push((cube, label));
                    }
                }
            }
            slow.sort_by_key(|(c, _)| (c.codimension(), c.mask(), c.values()));
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn validate_examples() {
        let dict = gen(Family::Dictator { i: 1 }, 3);
        let good = SubcubePartition::new(
            3,
            vec![
                (Subcube::new(3, 0b001, 0b000).unwrap(), false),
                (Subcube::new(3, 0b001, 0b001).unwrap(), true),
            ],
        );
        assert!(validate_partition(&good, &dict).is_ok());

        let xor = gen(Family::Parity, 2);
        let whole = SubcubePartition::new(2, vec![(Subcube::full_cube(2), true)]);
        assert_eq!(
            validate_partition(&whole, &xor),
            Err(PartitionViolation::NotMonochromatic { index: 0, point: 0 })
        );

        let overlapping = SubcubePartition::new(
            3,
            vec![
                (Subcube::new(3, 0b001, 0b000).unwrap(), false),
                (Subcube::new(3, 0b010, 0b000).unwrap(), false),
            ],
        );
        assert!(matches!(
            validate_partition(&overlapping, &gen(Family::Constant0, 3)),
            Err(PartitionViolation::Overlap { .. })
        ));

        let partial = SubcubePartition::new(
            3,
            vec![(Subcube::new(3, 0b001, 0b000).unwrap(), false)],
        );
        assert_eq!(
            validate_partition(&partial, &dict),
            Err(PartitionViolation::Uncovered { point: 1 })
        );
    }

    #[test]
    fn solver_ground_truths() {
        for n in 2..=5 {
            let f = gen(Family::Dictator { i: 1 }, n);
            let res = min_partition_exact(&f, DEFAULT_SOLVER_BUDGET).unwrap();
            assert_eq!(res.size, 2, "dictator n={n}");
            assert!(res.optimal);
            assert!(validate_partition(&res.witness, &f).is_ok());
        }
        let parity3 = gen(Family::Parity, 3);
        let res = min_partition_exact(&parity3, DEFAULT_SOLVER_BUDGET).unwrap();
        assert_eq!(res.size, 8);
        let and3 = gen(Family::And, 3);
        let res = min_partition_exact(&and3, DEFAULT_SOLVER_BUDGET).unwrap();
        assert_eq!(res.size, 4);
        assert!(validate_partition(&res.witness, &and3).is_ok());
        let c0 = gen(Family::Constant0, 4);
        assert_eq!(min_partition_exact(&c0, DEFAULT_SOLVER_BUDGET).unwrap().size, 1);
    }

    #[test]
    fn solver_is_deterministic() {
        let f = gen(Family::Maj4, 4);
        let a = min_partition_exact(&f, DEFAULT_SOLVER_BUDGET).unwrap();
        let b = min_partition_exact(&f, DEFAULT_SOLVER_BUDGET).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_expanded, b.nodes_expanded);
    }

    #[test]
    fn decision_tree_examples() {
        let (tree, p) = decision_tree_partition(&gen(Family::Constant0, 4)).unwrap();
        assert_eq!(tree.leaf_count(), 1);
        assert_eq!(p.len(), 1);

        let dict = gen(Family::Dictator { i: 1 }, 4);
        let (tree, p) = decision_tree_partition(&dict).unwrap();
        assert_eq!(tree.leaf_count(), 2);
        assert_eq!(p.len(), 2);
        assert!(validate_partition(&p, &dict).is_ok());

        let parity = gen(Family::Parity, 3);
        let (tree, p) = decision_tree_partition(&parity).unwrap();
        assert_eq!(p.len(), 8);
        for x in 0..8 {
            assert_eq!(tree.eval(x), parity.eval(x));
        }
    }

    #[test]
    fn tree_inducibility_examples() {
        let dict = gen(Family::Dictator { i: 1 }, 3);
        let (_, p) = decision_tree_partition(&dict).unwrap();
        assert!(is_tree_inducible(&p));

        // All-singleton parity partition: any full tree induces it.
        let parity = gen(Family::Parity, 3);
        let singles = SubcubePartition::new(
            3,
            (0..8u64)
                .map(|x| (Subcube::new(3, 0b111, x).unwrap(), parity.eval(x)))
                .collect(),
        );
        assert!(is_tree_inducible(&singles));

        // Pinwheel partition of the 3-cube: no coordinate is fixed in all
        // parts, so no tree induces it.
        let pinwheel = SubcubePartition::new(
            3,
            vec![
                (Subcube::new(3, 0b011, 0b001).unwrap(), false),
                (Subcube::new(3, 0b110, 0b010).unwrap(), false),
                (Subcube::new(3, 0b101, 0b100).unwrap(), false),
                (Subcube::new(3, 0b111, 0b000).unwrap(), false),
                (Subcube::new(3, 0b111, 0b111).unwrap(), false),
            ],
        );
        assert!(validate_partition(&pinwheel, &gen(Family::Constant0, 3)).is_ok());
        assert!(!is_tree_inducible(&pinwheel));
    }

    #[test]
    fn partition_serialization() {
        let p = SubcubePartition::new(
            3,
            vec![
                (Subcube::new(3, 0b001, 0b001).unwrap(), true),
                (Subcube::new(3, 0b001, 0b000).unwrap(), false),
            ],
        );
        // Coordinate 1 is printed first.
        assert_eq!(p.to_text(), "mask=100 values=100 label=1\nmask=100 values=000 label=0\n");
        let j = p.to_json();
        assert_eq!(j[0]["mask"], "100");
        assert_eq!(j[0]["label"], 1);
    }

    #[test]
    fn enumerate_minimum_partitions_dictator() {
        let f = gen(Family::Dictator { i: 1 }, 2);
        let all = enumerate_minimum_partitions(&f, 2, 1 << 20).unwrap();
        assert_eq!(all.len(), 1);
        assert!(validate_partition(&all[0], &f).is_ok());
        assert!(is_tree_inducible(&all[0]));
    }
}

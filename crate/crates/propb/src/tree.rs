//! Binary-tree decomposition of shift sequences. The `t` rows of a matrix
//! (t a power of two) sit at the leaves of a complete binary tree; every
//! inner node carries a label in `[s]` describing the relative cyclic shift
//! between the two neighboring rows its subtrees join (the rightmost row of
//! the left subtree and the leftmost row of the right subtree).
//!
//! A labeling therefore determines a shift sequence up to one global cyclic
//! shift; `labeling_to_shifts` fixes row 1 to the identity shift to make the
//! correspondence a function. Subtree goodness uses the same red-column
//! floors as plain shift sequences, with the exponent equal to the number of
//! descendant leaves.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::One;

use crate::rectangle::{build_hitting_set, HitSetOverrides, HittingSet, Rectangle};
use crate::shift_matrix::{
    eps_good_min_count, validate_row_len, ColSet, MatrixColoring, ShiftSequence,
};
use crate::{Caps, Error, Result};

/// Geometry of the decomposition tree: `t` leaves, `h = log2 t` inner
/// levels, `d_j = t / 2^j` nodes on level `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftTree {
    t: u32,
    s: u32,
    h: u32,
}

impl ShiftTree {
    pub fn new(t: u32, s: u32) -> Result<ShiftTree> {
        if t == 0 || !t.is_power_of_two() {
            return Err(Error::param(format!("t must be a power of two, got {t}")));
        }
        validate_row_len(s)?;
        Ok(ShiftTree {
            t,
            s,
            h: t.trailing_zeros(),
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Number of inner levels.
    pub fn h(&self) -> u32 {
        self.h
    }

    /// Nodes on inner level `j` (1-based).
    pub fn level_size(&self, j: u32) -> u32 {
        self.t >> j
    }
}

/// Labels for the inner nodes, level-contiguous from the bottom: level 1
/// first, each level left-to-right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeLabeling {
    tree: ShiftTree,
    levels: Vec<Vec<u32>>,
}

impl TreeLabeling {
    pub fn new(tree: ShiftTree, levels: Vec<Vec<u32>>) -> Result<TreeLabeling> {
        if levels.len() > tree.h() as usize {
            return Err(Error::param(format!(
                "{} label levels but the tree has {}",
                levels.len(),
                tree.h()
            )));
        }
        for (idx, level) in levels.iter().enumerate() {
            let j = idx as u32 + 1;
            if level.len() != tree.level_size(j) as usize {
                return Err(Error::param(format!(
                    "level {j} has {} labels, expected {}",
                    level.len(),
                    tree.level_size(j)
                )));
            }
            for &x in level {
                if x < 1 || x > tree.s() {
                    return Err(Error::param(format!(
                        "label {x} outside 1..={}",
                        tree.s()
                    )));
                }
            }
        }
        Ok(TreeLabeling { tree, levels })
    }

    pub fn tree(&self) -> ShiftTree {
        self.tree
    }

    /// Highest level with labels assigned.
    pub fn defined_up_to(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn is_complete(&self) -> bool {
        self.defined_up_to() == self.tree.h()
    }

    pub fn label(&self, level: u32, pos: u32) -> u32 {
        self.levels[(level - 1) as usize][pos as usize]
    }

    /// Extends by one more level of labels.
    pub fn extended(&self, labels: Vec<u32>) -> Result<TreeLabeling> {
        let mut levels = self.levels.clone();
        levels.push(labels);
        TreeLabeling::new(self.tree, levels)
    }

    /// Fixture format: `p tree <t> <s>`, then one line of labels per level.
    pub fn to_text(&self) -> String {
        let mut out = format!("p tree {} {}\n", self.tree.t(), self.tree.s());
        for level in &self.levels {
            let toks: Vec<String> = level.iter().map(|x| x.to_string()).collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<TreeLabeling> {
        let mut tree: Option<ShiftTree> = None;
        let mut levels: Vec<Vec<u32>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 4 || toks[1] != "tree" {
                    return Err(Error::parse(lineno, "expected `p tree <t> <s>`"));
                }
                let t = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad t"))?;
                let s = toks[3]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad s"))?;
                tree = Some(ShiftTree::new(t, s).map_err(|e| Error::parse(lineno, e.to_string()))?);
                continue;
            }
            if tree.is_none() {
                return Err(Error::parse(lineno, "labels before header"));
            }
            let labels: Vec<u32> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| Error::parse(lineno, format!("bad label {tok:?}")))
                })
                .collect::<Result<_>>()?;
            levels.push(labels);
        }
        let tree = tree.ok_or_else(|| Error::parse(1, "missing header"))?;
        TreeLabeling::new(tree, levels)
    }
}

fn check_matrix(tree: ShiftTree, mc: &MatrixColoring) -> Result<()> {
    if mc.t() != tree.t() as usize || mc.s() != tree.s() {
        return Err(Error::contract(format!(
            "matrix is {}x{}, tree expects {}x{}",
            mc.t(),
            mc.s(),
            tree.t(),
            tree.s()
        )));
    }
    Ok(())
}

/// Per-node summary while folding the tree bottom-up: the subtree's red
/// column set (in the subtree's own normalization, first row unshifted) and
/// the accumulated shift of its last row.
type NodeState = (ColSet, u32);

fn combine(a: NodeState, b: NodeState, label: u32, s: u32) -> NodeState {
    let (red_a, last_a) = a;
    let (red_b, last_b) = b;
    // the right block is shifted by the left block's last-row shift plus the
    // label joining the two neighboring rows
    let block = (last_a + label) % s;
    let shift_1based = if block == 0 { s } else { block };
    let red = red_a.intersect(
        red_b
            .shifted(shift_1based, s)
            .expect("block shift stays in [1,s]"),
    );
    (red, (block + last_b) % s)
}

/// States of every node at level `up_to`, folding labels from the leaves.
fn level_states(mc: &MatrixColoring, tau: &TreeLabeling, up_to: u32) -> Vec<NodeState> {
    let s = mc.s();
    let mut states: Vec<NodeState> = (0..mc.t()).map(|i| (mc.row_red(i), 0)).collect();
    for j in 1..=up_to {
        states = states
            .chunks(2)
            .enumerate()
            .map(|(pos, pair)| combine(pair[0], pair[1], tau.label(j, pos as u32), s))
            .collect();
    }
    states
}

/// The shift sequence compatible with a complete labeling, normalized so
/// row 1 gets the identity shift `s`. Consecutive rows differ by the label
/// of their lowest common ancestor.
pub fn labeling_to_shifts(tau: &TreeLabeling) -> Result<ShiftSequence> {
    if !tau.is_complete() {
        return Err(Error::contract(
            "labeling must be complete to induce a shift sequence",
        ));
    }
    let tree = tau.tree();
    let (t, s) = (tree.t(), tree.s());
    let mut shifts = Vec::with_capacity(t as usize);
    shifts.push(s);
    for boundary in 1..t {
        // the pair (row boundary, row boundary+1) joins at this level
        let level = boundary.trailing_zeros() + 1;
        let pos = boundary >> level;
        let label = tau.label(level, pos);
        let prev = *shifts.last().unwrap();
        shifts.push((prev + label - 1) % s + 1);
    }
    ShiftSequence::new(shifts, s)
}

/// Red-column set of the subtree rooted at (level, pos), under the labels of
/// `tau`. This is the tree-recursive route; it must agree with shifting the
/// rows by `labeling_to_shifts` and intersecting.
pub fn subtree_red_columns(
    mc: &MatrixColoring,
    tau: &TreeLabeling,
    level: u32,
    pos: u32,
) -> Result<ColSet> {
    check_matrix(tau.tree(), mc)?;
    if level > tau.defined_up_to() {
        return Err(Error::contract(format!(
            "labels defined through level {}, need {level}",
            tau.defined_up_to()
        )));
    }
    let states = level_states(mc, tau, level);
    states
        .get(pos as usize)
        .map(|(red, _)| *red)
        .ok_or_else(|| Error::contract(format!("no node {pos} at level {level}")))
}

/// Whether every subtree rooted at level `1..=j` meets its red-column floor
/// `s ((1-eps)/2)^(leaves)`. Level 0 is vacuously good.
pub fn is_eps_good_labeling(
    mc: &MatrixColoring,
    tau: &TreeLabeling,
    eps: Rational64,
    up_to_level: u32,
) -> Result<bool> {
    check_matrix(tau.tree(), mc)?;
    if up_to_level > tau.tree().h() {
        return Err(Error::contract(format!(
            "level {up_to_level} beyond tree height {}",
            tau.tree().h()
        )));
    }
    if up_to_level > tau.defined_up_to() {
        return Err(Error::contract(format!(
            "labels defined through level {}, need {up_to_level}",
            tau.defined_up_to()
        )));
    }
    let s = mc.s();
    let mut states: Vec<NodeState> = (0..mc.t()).map(|i| (mc.row_red(i), 0)).collect();
    for j in 1..=up_to_level {
        states = states
            .chunks(2)
            .enumerate()
            .map(|(pos, pair)| combine(pair[0], pair[1], tau.label(j, pos as u32), s))
            .collect();
        let min = eps_good_min_count(s, eps, 1usize << j)?;
        if states.iter().any(|(red, _)| red.len() < min) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Volume floor of the level-j extension rectangle:
/// `( eps ((1-eps)/2)^(2^(j-1)) )^(d_j)`.
pub fn level_volume_floor(j: u32, eps: Rational64, t: u32) -> Result<BigRational> {
    let tree = ShiftTree::new(t, 1)?;
    if j < 1 || j > tree.h() {
        return Err(Error::param(format!(
            "level {j} outside 1..={}",
            tree.h()
        )));
    }
    if eps <= Rational64::new(0, 1) || eps >= Rational64::one() {
        return Err(Error::param("epsilon must be in (0,1)"));
    }
    let eps_big = BigRational::new(BigInt::from(*eps.numer()), BigInt::from(*eps.denom()));
    let half_loss = (BigRational::one() - &eps_big) / BigRational::from_integer(BigInt::from(2));
    let mut inner = eps_big;
    for _ in 0..(1u64 << (j - 1)) {
        inner *= &half_loss;
    }
    let mut out = BigRational::one();
    for _ in 0..tree.level_size(j) {
        out *= &inner;
    }
    Ok(out)
}

/// The admissible level-j labels, one factor per node of the level. The
/// factors are independent because distinct level-j subtrees touch disjoint
/// rows, so the set of eps-good level-j extensions is exactly their product.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelRectangle {
    pub level: u32,
    pub factors: Vec<BTreeSet<u32>>,
    pub volume_floor: BigRational,
}

impl LevelRectangle {
    pub fn to_rectangle(&self, s: u32) -> Result<Rectangle> {
        Rectangle::new(s, self.factors.clone())
    }
}

/// Factors of the eps-good level-`j` extension rectangle of `tau`, which
/// must be eps-good up to level `j - 1`.
pub fn eps_good_extension_rectangle(
    mc: &MatrixColoring,
    tau: &TreeLabeling,
    eps: Rational64,
    j: u32,
) -> Result<LevelRectangle> {
    check_matrix(tau.tree(), mc)?;
    let tree = tau.tree();
    if j < 1 || j > tree.h() {
        return Err(Error::param(format!("level {j} outside 1..={}", tree.h())));
    }
    if tau.defined_up_to() < j - 1 {
        return Err(Error::contract(format!(
            "labels defined through level {}, need {}",
            tau.defined_up_to(),
            j - 1
        )));
    }
    if !is_eps_good_labeling(mc, tau, eps, j - 1)? {
        return Err(Error::contract(format!(
            "labeling is not eps-good up to level {}",
            j - 1
        )));
    }
    let s = mc.s();
    let states = level_states(mc, tau, j - 1);
    let min = eps_good_min_count(s, eps, 1usize << j)?;
    let mut factors = Vec::with_capacity(tree.level_size(j) as usize);
    for pos in 0..tree.level_size(j) {
        let a = states[(2 * pos) as usize];
        let b = states[(2 * pos + 1) as usize];
        let factor: BTreeSet<u32> = (1..=s)
            .filter(|&x| combine(a, b, x, s).0.len() >= min)
            .collect();
        factors.push(factor);
    }
    Ok(LevelRectangle {
        level: j,
        factors,
        volume_floor: level_volume_floor(j, eps, tree.t())?,
    })
}

/// One hitting set per level: `HS_j` hits every rectangle in `[s]^(d_j)` of
/// volume at least `nu_j`, so by the rectangle structure above it hits the
/// eps-good level-j extension set of every qualifying labeling.
pub fn build_level_hitting_sets(
    t: u32,
    s: u32,
    eps: Rational64,
    overrides: &HitSetOverrides,
    caps: &Caps,
) -> Result<Vec<HittingSet>> {
    let tree = ShiftTree::new(t, s)?;
    let mut out = Vec::with_capacity(tree.h() as usize);
    for j in 1..=tree.h() {
        let nu = level_volume_floor(j, eps, t)?;
        out.push(build_hitting_set(s, tree.level_size(j), &nu, overrides, caps)?);
    }
    Ok(out)
}

/// Cartesian product of the per-level hitting sets, assembled into complete
/// labelings. Iteration order is lexicographic with level 1 most
/// significant and points in their stored (sorted) order.
pub fn product_hitting_set(
    tree: ShiftTree,
    level_sets: &[HittingSet],
) -> Result<Vec<TreeLabeling>> {
    if level_sets.len() != tree.h() as usize {
        return Err(Error::contract(format!(
            "{} level sets for a tree of height {}",
            level_sets.len(),
            tree.h()
        )));
    }
    for (idx, hs) in level_sets.iter().enumerate() {
        let j = idx as u32 + 1;
        if hs.m != tree.s() || hs.d != tree.level_size(j) {
            return Err(Error::contract(format!(
                "level {j} hitting set is over [{}]^{}, expected [{}]^{}",
                hs.m,
                hs.d,
                tree.s(),
                tree.level_size(j)
            )));
        }
    }
    use itertools::Itertools;
    let mut out = Vec::new();
    if level_sets.iter().any(|hs| hs.points.is_empty()) && tree.h() > 0 {
        return Ok(out);
    }
    let combos = level_sets
        .iter()
        .map(|hs| hs.points.iter())
        .multi_cartesian_product();
    if tree.h() == 0 {
        out.push(TreeLabeling::new(tree, vec![])?);
        return Ok(out);
    }
    for combo in combos {
        let levels: Vec<Vec<u32>> = combo.into_iter().cloned().collect();
        out.push(TreeLabeling::new(tree, levels)?);
    }
    Ok(out)
}

//! Shift-matrix machinery: column subsets of `[s]` with cyclic shifts,
//! matrix colorings, dominating-color predicates, good/eps-good shift
//! sequences, and the exhaustive counting primitive behind the shift-overlap
//! lower bound.
//!
//! All interfaces are 1-based: columns and shift amounts live in `[1, s]`,
//! and a shift by `s` is the identity. Threshold comparisons are exact
//! rational arithmetic throughout; no floating point is involved in any
//! accept/reject decision.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::color::Color;
use crate::{Error, Result};

/// Largest supported row length. Column sets are 128-bit masks.
pub const MAX_ROW_LEN: u32 = 128;

/// A subset of the column index set `[s]`, stored as a bitmask
/// (bit `i` set means column `i+1` is in the set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColSet {
    mask: u128,
}

fn all_ones(s: u32) -> u128 {
    if s >= 128 {
        u128::MAX
    } else {
        (1u128 << s) - 1
    }
}

pub(crate) fn validate_row_len(s: u32) -> Result<()> {
    if s == 0 || s > MAX_ROW_LEN {
        return Err(Error::param(format!(
            "row length s must be in 1..={MAX_ROW_LEN}, got {s}"
        )));
    }
    Ok(())
}

impl ColSet {
    pub fn empty() -> ColSet {
        ColSet { mask: 0 }
    }

    pub fn full(s: u32) -> ColSet {
        ColSet { mask: all_ones(s) }
    }

    pub fn from_cols<I: IntoIterator<Item = u32>>(cols: I, s: u32) -> Result<ColSet> {
        validate_row_len(s)?;
        let mut mask = 0u128;
        for c in cols {
            if c < 1 || c > s {
                return Err(Error::param(format!("column {c} outside 1..={s}")));
            }
            mask |= 1u128 << (c - 1);
        }
        Ok(ColSet { mask })
    }

    pub fn contains(&self, col: u32) -> bool {
        col >= 1 && col <= 128 && self.mask >> (col - 1) & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn cols(&self) -> Vec<u32> {
        (1..=128).filter(|&c| self.contains(c)).collect()
    }

    pub fn intersect(&self, other: ColSet) -> ColSet {
        ColSet {
            mask: self.mask & other.mask,
        }
    }

    pub fn complement(&self, s: u32) -> ColSet {
        ColSet {
            mask: !self.mask & all_ones(s),
        }
    }

    /// Cyclic shift within `[s]`: column `a` moves to `((a-1+x) mod s) + 1`.
    /// The shift amount must lie in `[1, s]`; shifting by `s` is the identity.
    pub fn shifted(&self, x: u32, s: u32) -> Result<ColSet> {
        validate_row_len(s)?;
        if x < 1 || x > s {
            return Err(Error::contract(format!("shift {x} outside [1, {s}]")));
        }
        debug_assert_eq!(self.mask & !all_ones(s), 0);
        let r = x % s;
        if r == 0 {
            return Ok(*self);
        }
        let m = all_ones(s);
        let mask = ((self.mask << r) | (self.mask >> (s - r))) & m;
        Ok(ColSet { mask })
    }
}

/// Cyclic shift of a column set; the operation the whole construction is
/// built on. `A + x = {((a-1+x) mod s) + 1 : a in A}`.
pub fn cyclic_shift_set(a: ColSet, x: u32, s: u32) -> Result<ColSet> {
    a.shifted(x, s)
}

/// Geometry of a selected submatrix: `t` rows of length `s`, cut from a
/// ground matrix with `2t - 1` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixShape {
    pub t: u32,
    pub s: u32,
}

impl MatrixShape {
    pub fn new(t: u32, s: u32) -> Result<MatrixShape> {
        if t == 0 {
            return Err(Error::param("t must be positive"));
        }
        validate_row_len(s)?;
        Ok(MatrixShape { t, s })
    }

    /// Rows of the ground matrix the submatrix is selected from.
    pub fn total_rows(&self) -> u32 {
        2 * self.t - 1
    }
}

/// A two-coloring of a `t x s` matrix, stored as one red-column set per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixColoring {
    s: u32,
    red_rows: Vec<ColSet>,
}

impl MatrixColoring {
    pub fn new(s: u32, rows: Vec<Vec<Color>>) -> Result<MatrixColoring> {
        validate_row_len(s)?;
        let mut red_rows = Vec::with_capacity(rows.len());
        for row in &rows {
            if row.len() != s as usize {
                return Err(Error::param(format!(
                    "row has {} cells, expected {s}",
                    row.len()
                )));
            }
            let cols = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == Color::Red)
                .map(|(i, _)| i as u32 + 1);
            red_rows.push(ColSet::from_cols(cols, s)?);
        }
        Ok(MatrixColoring { s, red_rows })
    }

    pub fn from_red_sets(s: u32, red_rows: Vec<ColSet>) -> Result<MatrixColoring> {
        validate_row_len(s)?;
        Ok(MatrixColoring { s, red_rows })
    }

    /// Parses the fixture format: one line of `R`/`B` characters per row.
    pub fn parse(text: &str) -> Result<MatrixColoring> {
        let mut rows = Vec::new();
        let mut s = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<Color> = line
                .chars()
                .map(Color::from_char)
                .collect::<Result<_>>()
                .map_err(|e| Error::parse(idx + 1, e.to_string()))?;
            match s {
                None => s = Some(row.len() as u32),
                Some(w) if w != row.len() as u32 => {
                    return Err(Error::parse(idx + 1, "rows have unequal lengths"));
                }
                _ => {}
            }
            rows.push(row);
        }
        let s = s.ok_or_else(|| Error::parse(1, "empty matrix"))?;
        MatrixColoring::new(s, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.t() {
            for c in self.row_colors(i) {
                out.push(c.as_char());
            }
            out.push('\n');
        }
        out
    }

    pub fn t(&self) -> usize {
        self.red_rows.len()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Red-column set of row `i` (0-based).
    pub fn row_red(&self, i: usize) -> ColSet {
        self.red_rows[i]
    }

    pub fn row_colors(&self, i: usize) -> Vec<Color> {
        (1..=self.s)
            .map(|c| {
                if self.red_rows[i].contains(c) {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
            .collect()
    }

    pub fn cell(&self, row: usize, col: u32) -> Color {
        if self.red_rows[row].contains(col) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// The same matrix with every cell's color flipped.
    pub fn flipped(&self) -> MatrixColoring {
        MatrixColoring {
            s: self.s,
            red_rows: self.red_rows.iter().map(|r| r.complement(self.s)).collect(),
        }
    }
}

/// A sequence of per-row cyclic shifts, entries in `[1, s]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftSequence {
    shifts: Vec<u32>,
}

impl ShiftSequence {
    pub fn new(shifts: Vec<u32>, s: u32) -> Result<ShiftSequence> {
        validate_row_len(s)?;
        for &x in &shifts {
            if x < 1 || x > s {
                return Err(Error::param(format!("shift {x} outside 1..={s}")));
            }
        }
        Ok(ShiftSequence { shifts })
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }
}

/// Colors occupying at least half of the row; both colors can qualify.
pub fn dominating_colors(row: &[Color]) -> Vec<Color> {
    let s = row.len() as u32;
    let red = row.iter().filter(|&&c| c == Color::Red).count() as u32;
    let blue = s - red;
    let mut out = Vec::new();
    if 2 * red >= s {
        out.push(Color::Red);
    }
    if 2 * blue >= s {
        out.push(Color::Blue);
    }
    out
}

/// Returns the color dominating every row, if one exists; Red is preferred
/// when both colors qualify.
pub fn is_consistently_dominated(mc: &MatrixColoring) -> Option<Color> {
    let s = mc.s();
    let red_everywhere = (0..mc.t()).all(|i| 2 * mc.row_red(i).len() >= s);
    if red_everywhere {
        return Some(Color::Red);
    }
    let blue_everywhere = (0..mc.t()).all(|i| 2 * (s - mc.row_red(i).len()) >= s);
    if blue_everywhere {
        return Some(Color::Blue);
    }
    None
}

/// Red-column set of the matrix trimmed to its first `prefix_len` rows and
/// shifted row-by-row according to `sigma`.
pub fn red_columns(mc: &MatrixColoring, sigma: &ShiftSequence, prefix_len: usize) -> Result<ColSet> {
    if prefix_len > mc.t() {
        return Err(Error::contract(format!(
            "prefix {prefix_len} longer than the {} rows",
            mc.t()
        )));
    }
    if sigma.len() < prefix_len {
        return Err(Error::contract(format!(
            "shift sequence has {} entries, prefix needs {prefix_len}",
            sigma.len()
        )));
    }
    let mut acc = ColSet::full(mc.s());
    for j in 0..prefix_len {
        acc = acc.intersect(mc.row_red(j).shifted(sigma.shifts()[j], mc.s())?);
    }
    Ok(acc)
}

/// Number of all-red columns in the shifted prefix.
pub fn count_red_columns(
    mc: &MatrixColoring,
    sigma: &ShiftSequence,
    prefix_len: usize,
) -> Result<u32> {
    Ok(red_columns(mc, sigma, prefix_len)?.len())
}

fn check_eps(eps: Rational64) -> Result<()> {
    if eps <= Rational64::zero() || eps >= Rational64::one() {
        return Err(Error::param(format!("epsilon must be in (0,1), got {eps}")));
    }
    Ok(())
}

/// Exact threshold `s * ((1 - eps)/2)^i` as a rational.
pub fn eps_good_threshold(s: u32, eps: Rational64, i: usize) -> Result<BigRational> {
    check_eps(eps)?;
    let one = BigRational::one();
    let base = (&one - big_ratio(eps)) / BigRational::from_integer(BigInt::from(2));
    let mut pow = BigRational::one();
    for _ in 0..i {
        pow *= &base;
    }
    Ok(BigRational::from_integer(BigInt::from(s)) * pow)
}

/// Smallest integer count satisfying the eps-good threshold at prefix `i`.
pub fn eps_good_min_count(s: u32, eps: Rational64, i: usize) -> Result<u32> {
    let thr = eps_good_threshold(s, eps, i)?;
    let ceil = thr.ceil().to_integer();
    Ok(ceil.to_u32().expect("threshold is within 0..=s"))
}

fn big_ratio(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Whether the length-`i` prefix of `sigma` meets its red-column floor
/// `s * ((1-eps)/2)^i`. Compared exactly; the boundary counts as good.
pub fn is_eps_good(
    mc: &MatrixColoring,
    sigma: &ShiftSequence,
    eps: Rational64,
    prefix_len: usize,
) -> Result<bool> {
    let count = count_red_columns(mc, sigma, prefix_len)?;
    Ok(count >= eps_good_min_count(mc.s(), eps, prefix_len)?)
}

/// Enumerates every length-`j` shift sequence whose *every* prefix meets its
/// eps-good floor. Pruning by prefix is sound because extending a sequence
/// only intersects the red-column set further.
pub fn enumerate_eps_good_sequences(
    mc: &MatrixColoring,
    eps: Rational64,
    j: usize,
    cap: u128,
) -> Result<Vec<ShiftSequence>> {
    if j > mc.t() {
        return Err(Error::contract(format!(
            "sequence length {j} exceeds the {} rows",
            mc.t()
        )));
    }
    let s = mc.s();
    let work = (s as u128)
        .checked_pow(j as u32)
        .ok_or_else(|| Error::CapExceeded {
            what: "eps-good sequence enumeration",
            requested: u128::MAX,
            cap,
        })?;
    if work > cap {
        return Err(Error::CapExceeded {
            what: "eps-good sequence enumeration",
            requested: work,
            cap,
        });
    }
    let min_counts: Vec<u32> = (1..=j)
        .map(|i| eps_good_min_count(s, eps, i))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let mut prefix: Vec<u32> = Vec::with_capacity(j);
    fn descend(
        mc: &MatrixColoring,
        min_counts: &[u32],
        j: usize,
        acc: ColSet,
        prefix: &mut Vec<u32>,
        out: &mut Vec<ShiftSequence>,
    ) {
        let level = prefix.len();
        if level == j {
            out.push(ShiftSequence {
                shifts: prefix.clone(),
            });
            return;
        }
        let s = mc.s();
        for x in 1..=s {
            let next = acc.intersect(
                mc.row_red(level)
                    .shifted(x, s)
                    .expect("x ranges over [1,s]"),
            );
            if next.len() >= min_counts[level] {
                prefix.push(x);
                descend(mc, min_counts, j, next, prefix, out);
                prefix.pop();
            }
        }
    }
    descend(mc, &min_counts, j, ColSet::full(s), &mut prefix, &mut out);
    Ok(out)
}

/// Result of the shift-overlap count: how many cyclic shifts `x` keep the
/// overlap `|(A+x) ∩ B|` above `(1-eps) * alpha * |A|`, against the
/// guaranteed lower bound `eps * alpha * s / (1 - (1-eps) * alpha)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Report {
    pub count: u32,
    pub bound: Rational64,
    pub holds: bool,
}

pub fn prop1_count(a: ColSet, b: ColSet, s: u32, eps: Rational64) -> Result<Prop1Report> {
    validate_row_len(s)?;
    check_eps(eps)?;
    let alpha = Rational64::new(b.len() as i64, s as i64);
    let one = Rational64::one();
    // overlap floor: (1 - eps) * alpha * |A|
    let floor = (one - eps) * alpha * Rational64::from_integer(a.len() as i64);
    let mut count = 0u32;
    for x in 1..=s {
        let overlap = a.shifted(x, s)?.intersect(b).len();
        if Rational64::from_integer(overlap as i64) >= floor {
            count += 1;
        }
    }
    let denom = one - (one - eps) * alpha;
    debug_assert!(denom.is_positive());
    let bound = eps * alpha * Rational64::from_integer(s as i64) / denom;
    let holds = Rational64::from_integer(count as i64) >= bound;
    Ok(Prop1Report {
        count,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cs(cols: &[u32], s: u32) -> ColSet {
        ColSet::from_cols(cols.iter().copied(), s).unwrap()
    }

    #[test]
    fn shift_examples() {
        // full-period shift is the identity
        assert_eq!(cs(&[1, 2], 4).shifted(4, 4).unwrap(), cs(&[1, 2], 4));
        // formula case
        assert_eq!(cs(&[1, 2], 4).shifted(1, 4).unwrap(), cs(&[2, 3], 4));
        // wrap-around
        assert_eq!(cs(&[4], 4).shifted(1, 4).unwrap(), cs(&[1], 4));
        // out-of-range shift amounts violate the contract
        assert!(cs(&[1], 4).shifted(0, 4).is_err());
        assert!(cs(&[1], 4).shifted(5, 4).is_err());
    }

    #[test]
    fn dominating_examples() {
        use Color::*;
        assert_eq!(dominating_colors(&[Red, Red, Blue, Blue]), vec![Red, Blue]);
        assert_eq!(dominating_colors(&[Red, Red, Red, Blue]), vec![Red]);
        assert_eq!(dominating_colors(&[Blue, Blue, Blue]), vec![Blue]);
    }

    #[test]
    fn consistent_domination_examples() {
        let both = MatrixColoring::parse("RRBB\nRRBB").unwrap();
        assert_eq!(is_consistently_dominated(&both), Some(Color::Red));
        let split = MatrixColoring::parse("RRRB\nBBBR").unwrap();
        assert_eq!(is_consistently_dominated(&split), None);
        let red = MatrixColoring::parse("RRRR\nRRRR").unwrap();
        assert_eq!(is_consistently_dominated(&red), Some(Color::Red));
        let blue = MatrixColoring::parse("BBBR\nBBBB").unwrap();
        assert_eq!(is_consistently_dominated(&blue), Some(Color::Blue));
    }

    #[test]
    fn red_column_count_examples() {
        let all_red = MatrixColoring::parse("RRRR\nRRRR").unwrap();
        let sigma = ShiftSequence::new(vec![2, 3], 4).unwrap();
        assert_eq!(count_red_columns(&all_red, &sigma, 2).unwrap(), 4);

        let single = MatrixColoring::parse("RBRB").unwrap();
        let id = ShiftSequence::new(vec![4], 4).unwrap();
        assert_eq!(count_red_columns(&single, &id, 1).unwrap(), 2);

        // {1,2} ∩ ({1,2}+2) = {1,2} ∩ {3,4} = ∅
        let two = MatrixColoring::parse("RRBB\nRRBB").unwrap();
        let sigma = ShiftSequence::new(vec![4, 2], 4).unwrap();
        assert_eq!(count_red_columns(&two, &sigma, 2).unwrap(), 0);
    }

    #[test]
    fn eps_good_examples() {
        let eps = Rational64::new(1, 2);
        let all_red = MatrixColoring::parse("RRRRRRRR\nRRRRRRRR").unwrap();
        let sigma = ShiftSequence::new(vec![5, 7], 8).unwrap();
        assert!(is_eps_good(&all_red, &sigma, eps, 2).unwrap());

        // boundary: count 1 vs threshold 4 * (1/4)^1 = 1 is good
        let row = MatrixColoring::parse("RBBB").unwrap();
        let id = ShiftSequence::new(vec![4], 4).unwrap();
        assert_eq!(count_red_columns(&row, &id, 1).unwrap(), 1);
        assert!(is_eps_good(&row, &id, eps, 1).unwrap());

        // zero red columns can never be good
        let mc = MatrixColoring::parse("RRRRBBBB\nBBBBRRRR").unwrap();
        let sigma = ShiftSequence::new(vec![8, 8], 8).unwrap();
        assert_eq!(count_red_columns(&mc, &sigma, 2).unwrap(), 0);
        assert!(!is_eps_good(&mc, &sigma, eps, 2).unwrap());
    }

    #[test]
    fn enumerate_all_red_gives_everything() {
        let mc = MatrixColoring::parse("RRRR\nRRRR").unwrap();
        let eps = Rational64::new(1, 2);
        let seqs = enumerate_eps_good_sequences(&mc, eps, 2, 1 << 20).unwrap();
        assert_eq!(seqs.len(), 16);
    }

    #[test]
    fn enumerate_single_row_example() {
        let mc = MatrixColoring::parse("RRBB").unwrap();
        let eps = Rational64::new(1, 2);
        // 2 red under every shift, threshold 4*(1/4) = 1
        let seqs = enumerate_eps_good_sequences(&mc, eps, 1, 1 << 20).unwrap();
        assert_eq!(seqs.len(), 4);
    }

    #[test]
    fn enumerate_respects_cap() {
        let mc = MatrixColoring::parse("RRRRRRRR\nRRRRRRRR").unwrap();
        let err = enumerate_eps_good_sequences(&mc, Rational64::new(1, 2), 2, 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn enumeration_is_prefix_closed() {
        let mc = MatrixColoring::parse("RRBBRB\nRBRBRB\nRRRBBB").unwrap();
        let eps = Rational64::new(1, 3);
        let j2 = enumerate_eps_good_sequences(&mc, eps, 2, 1 << 20).unwrap();
        let j3 = enumerate_eps_good_sequences(&mc, eps, 3, 1 << 20).unwrap();
        for seq in &j3 {
            let prefix = ShiftSequence::new(seq.shifts()[..2].to_vec(), 6).unwrap();
            assert!(j2.contains(&prefix));
        }
    }

    #[test]
    fn prop1_worked_example() {
        let eps = Rational64::new(1, 2);
        let r = prop1_count(cs(&[1, 2], 4), cs(&[1, 2], 4), 4, eps).unwrap();
        assert_eq!(r.count, 3); // x in {1, 3, 4}
        assert_eq!(r.bound, Rational64::new(4, 3));
        assert!(r.holds);
    }

    #[test]
    fn prop1_tight_at_full_b() {
        for s in 1..=8u32 {
            for eps in [Rational64::new(1, 4), Rational64::new(2, 3)] {
                let r = prop1_count(cs(&[1], s), ColSet::full(s), s, eps).unwrap();
                assert_eq!(r.count, s);
                assert_eq!(r.bound, Rational64::from_integer(s as i64));
                assert!(r.holds);
            }
        }
    }

    #[test]
    fn prop1_half_b_specialization() {
        // when |B| >= s/2 the bound is at least (2 eps / (1 + eps)) * s/2
        let s = 8u32;
        for eps in [Rational64::new(1, 4), Rational64::new(1, 2)] {
            let one = Rational64::one();
            let special =
                Rational64::new(2, 1) * eps / (one + eps) * Rational64::new(s as i64, 2) / 2;
            for bmask in 0u32..1 << s {
                let b = ColSet::from_cols((1..=s).filter(|&c| bmask >> (c - 1) & 1 == 1), s)
                    .unwrap();
                if 2 * b.len() < s {
                    continue;
                }
                let r = prop1_count(cs(&[1, 5], s), b, s, eps).unwrap();
                assert!(r.bound >= special);
            }
        }
    }

    #[test]
    fn prop1_empty_sets_are_harmless() {
        let eps = Rational64::new(1, 2);
        let r = prop1_count(ColSet::empty(), cs(&[1], 4), 4, eps).unwrap();
        assert!(r.holds);
        let r = prop1_count(cs(&[1], 4), ColSet::empty(), 4, eps).unwrap();
        assert_eq!(r.bound, Rational64::zero());
        assert!(r.holds);
    }

    #[test]
    fn matrix_fixture_round_trip() {
        let text = "RRBB\nRBRB\n";
        let mc = MatrixColoring::parse(text).unwrap();
        assert_eq!(mc.to_text(), text);
        assert_eq!(mc.cell(0, 1), Color::Red);
        assert_eq!(mc.cell(1, 2), Color::Blue);
        assert_eq!(mc.flipped().cell(0, 1), Color::Blue);
    }

    proptest! {
        #[test]
        fn shift_is_a_bijection_and_period_s_is_identity(
            mask in 0u32..1 << 8, x in 1u32..=8
        ) {
            let s = 8;
            let a = ColSet::from_cols((1..=s).filter(|&c| mask >> (c - 1) & 1 == 1), s).unwrap();
            let shifted = a.shifted(x, s).unwrap();
            prop_assert_eq!(shifted.len(), a.len());
            // shifting by the complement returns the original set
            let back = shifted.shifted(s - x, s);
            let back = if x == s { Ok(shifted) } else { back };
            prop_assert_eq!(back.unwrap(), a);
            prop_assert_eq!(a.shifted(s, s).unwrap(), a);
        }
    }

    proptest! {
        #[test]
        fn red_count_invariant_under_global_shift(
            rows in proptest::collection::vec(0u32..1 << 6, 1..=3),
            sigma in proptest::collection::vec(1u32..=6, 3),
            c in 1u32..=6,
        ) {
            let s = 6;
            let red: Vec<ColSet> = rows
                .iter()
                .map(|m| ColSet::from_cols((1..=s).filter(|&x| m >> (x - 1) & 1 == 1), s).unwrap())
                .collect();
            let t = red.len();
            let mc = MatrixColoring::from_red_sets(s, red).unwrap();
            let sig = ShiftSequence::new(sigma[..t].to_vec(), s).unwrap();
            let shifted: Vec<u32> = sig
                .shifts()
                .iter()
                .map(|&x| (x + c - 1) % s + 1)
                .collect();
            let sig2 = ShiftSequence::new(shifted, s).unwrap();
            prop_assert_eq!(
                count_red_columns(&mc, &sig, t).unwrap(),
                count_red_columns(&mc, &sig2, t).unwrap()
            );
        }
    }
}

//! End-to-end hypergraph builders and the exhaustive verifier of their
//! defining guarantee.
//!
//! Both builders place `(2t-1) * s` vertices in a ground matrix (vertex id
//! `(row-1)*s + col`), take every t-row submatrix, and for every shift
//! sequence in their shift source and every index set `I` of `k/t` columns
//! emit the edge consisting of the chosen columns of the shifted submatrix.
//! The original builder uses all of `[s]^t` as shifts; the derandomized one
//! uses only the shift sequences induced by a product of per-level hitting
//! sets over the decomposition tree.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binomial;
use crate::hypergraph::Hypergraph;
use crate::rectangle::HitSetOverrides;
use crate::shift_matrix::{validate_row_len, ColSet, ShiftSequence};
use crate::tree::{build_level_hitting_sets, labeling_to_shifts, product_hitting_set, ShiftTree};
use crate::{Caps, Error, Result};

#[derive(Debug, Clone)]
pub struct GebauerParams {
    pub k: u32,
    pub t: u32,
    /// Row length override; the default is `(k/t) * 2^t`.
    pub s_override: Option<u32>,
}

impl GebauerParams {
    pub fn new(k: u32, t: u32, s_override: Option<u32>) -> Result<GebauerParams> {
        validate_kt(k, t)?;
        let p = GebauerParams { k, t, s_override };
        p.resolved_s()?;
        Ok(p)
    }

    pub fn resolved_s(&self) -> Result<u32> {
        let kt = self.k / self.t;
        let s = match self.s_override {
            Some(s) => s,
            None => {
                let pow = 1u64
                    .checked_shl(self.t)
                    .ok_or_else(|| Error::param("2^t overflows"))?;
                u32::try_from(kt as u64 * pow)
                    .map_err(|_| Error::param("default s = (k/t) 2^t overflows"))?
            }
        };
        validate_row_len(s)?;
        if s < kt {
            return Err(Error::param(format!(
                "row length {s} is too short to pick k/t = {kt} columns"
            )));
        }
        Ok(s)
    }
}

#[derive(Debug, Clone)]
pub struct ImprovedParams {
    pub k: u32,
    /// Must be a power of two (decomposition-tree requirement) dividing k.
    pub t: u32,
    /// Defaults to 1/t.
    pub eps: Option<Rational64>,
    /// Row length override; the default is `ceil(e * (k/t) * 2^t)`.
    pub s_override: Option<u32>,
    pub hitting_overrides: HitSetOverrides,
}

impl ImprovedParams {
    pub fn new(
        k: u32,
        t: u32,
        eps: Option<Rational64>,
        s_override: Option<u32>,
        hitting_overrides: HitSetOverrides,
    ) -> Result<ImprovedParams> {
        validate_kt(k, t)?;
        if !t.is_power_of_two() {
            return Err(Error::param(format!(
                "t must be a power of two for the tree decomposition, got {t}"
            )));
        }
        let p = ImprovedParams {
            k,
            t,
            eps,
            s_override,
            hitting_overrides,
        };
        p.resolved_s()?;
        let eps = p.resolved_eps();
        if eps <= Rational64::new(0, 1) || eps >= Rational64::new(1, 1) {
            return Err(Error::param("epsilon must be in (0,1)"));
        }
        Ok(p)
    }

    pub fn resolved_eps(&self) -> Rational64 {
        self.eps.unwrap_or(Rational64::new(1, self.t as i64))
    }

    pub fn resolved_s(&self) -> Result<u32> {
        let kt = self.k / self.t;
        let s = match self.s_override {
            Some(s) => s,
            None => {
                let raw = std::f64::consts::E * kt as f64 * 2f64.powi(self.t as i32);
                if !(raw >= 1.0) || raw > u32::MAX as f64 {
                    return Err(Error::param("default s = ceil(e (k/t) 2^t) overflows"));
                }
                raw.ceil() as u32
            }
        };
        validate_row_len(s)?;
        if s < kt {
            return Err(Error::param(format!(
                "row length {s} is too short to pick k/t = {kt} columns"
            )));
        }
        Ok(s)
    }
}

fn validate_kt(k: u32, t: u32) -> Result<()> {
    if k == 0 || t == 0 {
        return Err(Error::param("k and t must be positive"));
    }
    if k % t != 0 {
        return Err(Error::param(format!("t = {t} must divide k = {k}")));
    }
    Ok(())
}

/// All t-subsets of the `2t-1` ground rows, lexicographic.
pub fn row_subsets(t: u32) -> Vec<Vec<u32>> {
    (1..=2 * t - 1).combinations(t as usize).collect()
}

/// Where the shift sequences of a build came from.
#[derive(Debug, Clone)]
pub enum ShiftSource {
    /// Every sequence in `[s]^t`.
    AllSequences,
    /// The sequences induced by the product hitting set, with multiplicity.
    Labelings(Vec<ShiftSequence>),
}

impl ShiftSource {
    fn count(&self, s: u32, t: u32) -> u128 {
        match self {
            ShiftSource::AllSequences => (s as u128).pow(t),
            ShiftSource::Labelings(v) => v.len() as u128,
        }
    }

    /// Calls `f` on every shift sequence, in deterministic order.
    fn for_each(&self, s: u32, t: u32, mut f: impl FnMut(&[u32])) {
        match self {
            ShiftSource::AllSequences => {
                let t = t as usize;
                let mut sigma = vec![1u32; t];
                loop {
                    f(&sigma);
                    let mut i = t;
                    loop {
                        if i == 0 {
                            return;
                        }
                        i -= 1;
                        if sigma[i] < s {
                            sigma[i] += 1;
                            for x in sigma[i + 1..].iter_mut() {
                                *x = 1;
                            }
                            break;
                        }
                        if i == 0 {
                            return;
                        }
                    }
                }
            }
            ShiftSource::Labelings(v) => {
                for seq in v {
                    f(seq.shifts());
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    Gebauer,
    Improved,
}

/// First generator of an edge, kept for re-checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGenerator {
    pub rows: Vec<u32>,
    pub sigma: Vec<u32>,
    pub index_set: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct SubmatrixCount {
    pub rows: Vec<u32>,
    pub raw: u128,
    pub distinct: u64,
}

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub kind: ConstructionKind,
    pub hypergraph: Hypergraph,
    pub k: u32,
    pub t: u32,
    pub s: u32,
    pub eps: Option<Rational64>,
    /// Exact number of (row subset, sigma, I) choices enumerated.
    pub raw_choice_count: u128,
    pub distinct_edges: u64,
    pub per_submatrix: Vec<SubmatrixCount>,
    pub shift_source: ShiftSource,
    /// Product hitting set size, for the derandomized build.
    pub hitting_set_size: Option<u64>,
    pub generators: BTreeMap<Vec<u32>, EdgeGenerator>,
}

impl ConstructionReport {
    pub fn n_vertices(&self) -> u32 {
        (2 * self.t - 1) * self.s
    }

    /// Human-readable side-car report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = match self.kind {
            ConstructionKind::Gebauer => "gebauer",
            ConstructionKind::Improved => "improved",
        };
        out.push_str(&format!("construction = {kind}\n"));
        out.push_str(&format!("k = {}\n", self.k));
        out.push_str(&format!("t = {}\n", self.t));
        out.push_str(&format!("s = {}\n", self.s));
        if let Some(eps) = self.eps {
            out.push_str(&format!("eps = {}/{}\n", eps.numer(), eps.denom()));
        }
        out.push_str(&format!("vertices = {}\n", self.n_vertices()));
        out.push_str(&format!("raw_choice_count = {}\n", self.raw_choice_count));
        out.push_str(&format!("distinct_edges = {}\n", self.distinct_edges));
        if let Some(hs) = self.hitting_set_size {
            out.push_str(&format!("hitting_set_size = {hs}\n"));
        }
        for sub in &self.per_submatrix {
            let rows: Vec<String> = sub.rows.iter().map(|r| r.to_string()).collect();
            out.push_str(&format!(
                "submatrix rows={} raw={} distinct={}\n",
                rows.join(","),
                sub.raw,
                sub.distinct
            ));
        }
        out
    }
}

fn assemble(
    kind: ConstructionKind,
    k: u32,
    t: u32,
    s: u32,
    eps: Option<Rational64>,
    shift_source: ShiftSource,
    hitting_set_size: Option<u64>,
    caps: &Caps,
) -> Result<ConstructionReport> {
    let kt = k / t;
    let subsets = row_subsets(t);
    let sigma_count = shift_source.count(s, t);
    let index_count = binomial(s as u64, kt as u64);
    let raw_expected = (subsets.len() as u128)
        .saturating_mul(sigma_count)
        .saturating_mul(index_count);
    if raw_expected > caps.build_raw {
        return Err(Error::CapExceeded {
            what: "construction raw choice count",
            requested: raw_expected,
            cap: caps.build_raw,
        });
    }
    let index_sets: Vec<Vec<u32>> = (1..=s).combinations(kt as usize).collect();
    debug_assert_eq!(index_sets.len() as u128, index_count);

    let n_vertices = (2 * t - 1) * s;
    let mut edges: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut generators: BTreeMap<Vec<u32>, EdgeGenerator> = BTreeMap::new();
    let mut per_submatrix = Vec::with_capacity(subsets.len());
    let mut raw_total: u128 = 0;
    let mut edge = Vec::with_capacity(k as usize);
    for rows in &subsets {
        let mut raw_here: u128 = 0;
        let mut distinct_here: u64 = 0;
        shift_source.for_each(s, t, |sigma| {
            for index_set in &index_sets {
                raw_here += 1;
                edge.clear();
                for (i, &row) in rows.iter().enumerate() {
                    let shift = sigma[i] % s;
                    for &c in index_set {
                        // shifted column c holds the original column c - sigma_i
                        let col = (c - 1 + s - shift) % s + 1;
                        edge.push((row - 1) * s + col);
                    }
                }
                edge.sort_unstable();
                if edges.insert(edge.clone()) {
                    distinct_here += 1;
                    generators.insert(
                        edge.clone(),
                        EdgeGenerator {
                            rows: rows.clone(),
                            sigma: sigma.to_vec(),
                            index_set: index_set.clone(),
                        },
                    );
                }
            }
        });
        raw_total += raw_here;
        per_submatrix.push(SubmatrixCount {
            rows: rows.clone(),
            raw: raw_here,
            distinct: distinct_here,
        });
    }
    debug_assert_eq!(raw_total, raw_expected);
    let distinct_edges = edges.len() as u64;
    let hypergraph = Hypergraph::new(n_vertices, k, edges)?;
    Ok(ConstructionReport {
        kind,
        hypergraph,
        k,
        t,
        s,
        eps,
        raw_choice_count: raw_total,
        distinct_edges,
        per_submatrix,
        shift_source,
        hitting_set_size,
        generators,
    })
}

/// The original construction: all shift sequences in `[s]^t`.
pub fn build_gebauer(params: &GebauerParams, caps: &Caps) -> Result<ConstructionReport> {
    let s = params.resolved_s()?;
    assemble(
        ConstructionKind::Gebauer,
        params.k,
        params.t,
        s,
        None,
        ShiftSource::AllSequences,
        None,
        caps,
    )
}

/// The derandomized construction: shift sequences induced by the product of
/// per-level hitting sets.
pub fn build_improved(params: &ImprovedParams, caps: &Caps) -> Result<ConstructionReport> {
    let s = params.resolved_s()?;
    let eps = params.resolved_eps();
    let tree = ShiftTree::new(params.t, s)?;
    let level_sets = build_level_hitting_sets(params.t, s, eps, &params.hitting_overrides, caps)?;
    let labelings = product_hitting_set(tree, &level_sets)?;
    let sigmas: Vec<ShiftSequence> = labelings
        .iter()
        .map(labeling_to_shifts)
        .collect::<Result<_>>()?;
    let hs_size = sigmas.len() as u64;
    assemble(
        ConstructionKind::Improved,
        params.k,
        params.t,
        s,
        Some(eps),
        ShiftSource::Labelings(sigmas),
        Some(hs_size),
        caps,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every coloring of the whole ground matrix must hit a monochromatic
    /// edge somewhere in the union hypergraph. One cell is fixed Red; the
    /// other half of the space is covered by the global color flip.
    AllColorings,
    /// For every t-row submatrix, every coloring in which Red dominates all
    /// rows must produce a monochromatic edge inside that submatrix's own
    /// hypergraph. Blue-dominated colorings are their flips, and
    /// monochromatic-ness is flip-invariant.
    ConsistentlyDominatedOnly,
    /// Random ground colorings only; explicitly non-exhaustive.
    SampledColorings { samples: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    /// Row subset the failure was found in (whole-matrix modes use all rows).
    pub rows: Vec<u32>,
    /// Matrix coloring, one line of R/B per listed row.
    pub matrix_text: String,
}

#[derive(Debug, Clone)]
pub struct GuaranteeReport {
    pub mode: VerifyMode,
    pub exhaustive: bool,
    pub colorings_checked: u128,
    pub counterexamples: Vec<Counterexample>,
}

impl GuaranteeReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mode = match self.mode {
            VerifyMode::AllColorings => "all-colorings".into(),
            VerifyMode::ConsistentlyDominatedOnly => "consistently-dominated".into(),
            VerifyMode::SampledColorings { samples, seed } => {
                format!("sampled (samples={samples}, seed={seed}, NOT exhaustive)")
            }
        };
        out.push_str(&format!("mode = {mode}\n"));
        out.push_str(&format!("exhaustive = {}\n", self.exhaustive));
        out.push_str(&format!("colorings_checked = {}\n", self.colorings_checked));
        out.push_str(&format!(
            "counterexamples = {}\n",
            self.counterexamples.len()
        ));
        for ce in &self.counterexamples {
            let rows: Vec<String> = ce.rows.iter().map(|r| r.to_string()).collect();
            out.push_str(&format!("counterexample rows={}\n", rows.join(",")));
            for line in ce.matrix_text.lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        out
    }
}

/// Bit-table of "this submatrix coloring yields a monochromatic edge" over
/// all 2^(t*s) colorings of a t-row submatrix, for a fixed shift source.
/// Bit layout of a coloring: bit `i*s + (c-1)` set means cell (row i+1,
/// column c) is Red. The table is row-subset independent.
struct MonoTable {
    bits: Vec<u64>,
    t: u32,
    s: u32,
}

impl MonoTable {
    fn build(t: u32, s: u32, kt: u32, source: &ShiftSource) -> MonoTable {
        let cells = (t * s) as usize;
        let total: usize = 1 << cells;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let row_mask: u128 = if s >= 128 { u128::MAX } else { (1 << s) - 1 };
        for submask in 0..total {
            let red_rows: Vec<ColSet> = (0..t)
                .map(|i| {
                    let bitslice = (submask as u128 >> (i * s)) & row_mask;
                    ColSet::from_cols((1..=s).filter(|&c| bitslice >> (c - 1) & 1 == 1), s)
                        .expect("columns in range")
                })
                .collect();
            let mut mono = false;
            source.for_each(s, t, |sigma| {
                if mono {
                    return;
                }
                let mut red = ColSet::full(s);
                let mut blue = ColSet::full(s);
                for (i, row) in red_rows.iter().enumerate() {
                    let shifted = row.shifted(sigma[i], s).expect("sigma in range");
                    red = red.intersect(shifted);
                    blue = blue.intersect(row.complement(s).shifted(sigma[i], s).unwrap());
                }
                if red.len() >= kt || blue.len() >= kt {
                    mono = true;
                }
            });
            if mono {
                bits[submask / 64] |= 1 << (submask % 64);
            }
        }
        MonoTable { bits, t, s }
    }

    fn is_mono(&self, submask: u64) -> bool {
        self.bits[(submask / 64) as usize] >> (submask % 64) & 1 == 1
    }

    fn matrix_text(&self, submask: u64) -> String {
        let mut out = String::new();
        for i in 0..self.t {
            for c in 0..self.s {
                let red = submask >> (i * self.s + c) & 1 == 1;
                out.push(if red { 'R' } else { 'B' });
            }
            out.push('\n');
        }
        out
    }
}

/// Checks the construction's defining guarantee against the recorded shift
/// source. Counterexample colorings are reported verbatim, never masked.
pub fn verify_construction_guarantee(
    report: &ConstructionReport,
    mode: VerifyMode,
    caps: &Caps,
) -> Result<GuaranteeReport> {
    let (t, s) = (report.t, report.s);
    let kt = report.k / t;
    let cells_per_sub = (t * s) as u64;
    if cells_per_sub > 24 {
        return Err(Error::CapExceeded {
            what: "guarantee verification submatrix cells",
            requested: cells_per_sub as u128,
            cap: 24,
        });
    }
    let table = MonoTable::build(t, s, kt, &report.shift_source);
    let subsets = row_subsets(t);
    let ground_cells = (2 * t - 1) as u64 * s as u64;

    let extract = |ground: u64, rows: &[u32]| -> u64 {
        let row_mask = (1u64 << s) - 1;
        let mut sub = 0u64;
        for (i, &r) in rows.iter().enumerate() {
            sub |= ((ground >> ((r - 1) * s)) & row_mask) << (i as u32 * s);
        }
        sub
    };

    let ground_matrix_text = |ground: u64| -> String {
        let rows: Vec<u32> = (1..=2 * t - 1).collect();
        let sub_all = MonoTable {
            bits: vec![],
            t: 2 * t - 1,
            s,
        };
        let mut mask = 0u64;
        for (i, &r) in rows.iter().enumerate() {
            let row_mask = (1u64 << s) - 1;
            mask |= ((ground >> ((r - 1) * s)) & row_mask) << (i as u32 * s);
        }
        sub_all.matrix_text(mask)
    };

    match mode {
        VerifyMode::AllColorings => {
            let space: u128 = 1u128 << ground_cells;
            if space > caps.guarantee_colorings {
                return Err(Error::CapExceeded {
                    what: "all-colorings verification",
                    requested: space,
                    cap: caps.guarantee_colorings,
                });
            }
            let mut counterexamples = Vec::new();
            // fix cell (1,1) Red: bit 0 set; flip symmetry covers the rest
            let half: u64 = 1 << (ground_cells - 1);
            for rest in 0..half {
                let ground = (rest << 1) | 1;
                let covered = subsets
                    .iter()
                    .any(|rows| table.is_mono(extract(ground, rows)));
                if !covered && counterexamples.len() < 5 {
                    counterexamples.push(Counterexample {
                        rows: (1..=2 * t - 1).collect(),
                        matrix_text: ground_matrix_text(ground),
                    });
                }
            }
            Ok(GuaranteeReport {
                mode,
                exhaustive: true,
                colorings_checked: half as u128,
                counterexamples,
            })
        }
        VerifyMode::ConsistentlyDominatedOnly => {
            let space: u128 = 1u128 << cells_per_sub;
            if space > caps.guarantee_colorings {
                return Err(Error::CapExceeded {
                    what: "consistently-dominated verification",
                    requested: space,
                    cap: caps.guarantee_colorings,
                });
            }
            let mut counterexamples = Vec::new();
            let mut checked: u128 = 0;
            let row_mask = (1u64 << s) - 1;
            // the table is row-subset independent, so scan once and report
            // against every subset
            for submask in 0..(1u64 << cells_per_sub) {
                let red_dominates_all = (0..t).all(|i| {
                    let row = (submask >> (i * s)) & row_mask;
                    2 * row.count_ones() >= s
                });
                if !red_dominates_all {
                    continue;
                }
                checked += 1;
                if !table.is_mono(submask) && counterexamples.len() < 5 {
                    for rows in &subsets {
                        counterexamples.push(Counterexample {
                            rows: rows.clone(),
                            matrix_text: table.matrix_text(submask),
                        });
                        break;
                    }
                }
            }
            // every subset sees the same coloring space
            checked *= subsets.len() as u128;
            Ok(GuaranteeReport {
                mode,
                exhaustive: true,
                colorings_checked: checked,
                counterexamples,
            })
        }
        VerifyMode::SampledColorings { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut counterexamples = Vec::new();
            for _ in 0..samples {
                let ground: u64 = rng.gen::<u64>() & ((1u64 << ground_cells) - 1);
                let covered = subsets
                    .iter()
                    .any(|rows| table.is_mono(extract(ground, rows)));
                if !covered && counterexamples.len() < 5 {
                    counterexamples.push(Counterexample {
                        rows: (1..=2 * t - 1).collect(),
                        matrix_text: ground_matrix_text(ground),
                    });
                }
            }
            Ok(GuaranteeReport {
                mode,
                exhaustive: false,
                colorings_checked: samples as u128,
                counterexamples,
            })
        }
    }
}

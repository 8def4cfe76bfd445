//! Deterministic constructions of k-uniform hypergraphs that cannot be
//! properly two-colored, together with the machinery needed to verify them
//! at desk scale: exact coloring solvers, shift-matrix goodness predicates,
//! Margulis-type expanders, expander-walk hitting sets for combinatorial
//! rectangles, the binary-tree decomposition of shift sequences, and exact
//! edge-count analysis of the resulting constructions.
//!
//! Everything that feeds a decision is computed in exact integer or rational
//! arithmetic; floating point appears only in the log-domain bound analysis,
//! where it is documented per function.

pub mod bounds;
pub mod color;
pub mod construction;
pub mod error;
pub mod expander;
pub mod hypergraph;
pub mod rectangle;
pub mod shift_matrix;
pub mod tree;

pub use color::Color;
pub use error::{Error, Result};

/// Resource caps for the exhaustive / enumerative operations.
///
/// Every cap can be overridden through an environment variable, so scripted
/// runs can raise (or lower) limits without code changes:
///
/// * `PROPB_SOLVE_CAP`      - max vertex count for exhaustive coloring search
/// * `PROPB_ENUM_CAP`       - max enumeration work for sequence/walk listing
/// * `PROPB_BUILD_CAP`      - max raw choice count for hypergraph builders
/// * `PROPB_EXPANSION_CAP`  - max vertex count for exhaustive expansion scan
/// * `PROPB_GUARANTEE_CAP`  - max coloring count for guarantee verification
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Vertex cap for the exhaustive two-coloring solver.
    pub solve_exhaustive_vertices: u32,
    /// Work cap for sequence enumeration and walk enumeration.
    pub enumeration: u128,
    /// Cap on the raw (pre-deduplication) choice count of a build.
    pub build_raw: u128,
    /// Vertex cap for the exhaustive vertex-expansion scan.
    pub expansion_vertices: u32,
    /// Cap on the number of colorings a guarantee verification may visit.
    pub guarantee_colorings: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            solve_exhaustive_vertices: 26,
            enumeration: 10_000_000,
            build_raw: 100_000_000,
            expansion_vertices: 20,
            guarantee_colorings: 1 << 24,
        }
    }
}

/// Exact binomial coefficient in u128 (saturating only on true overflow,
/// which the desk-scale caps rule out).
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

impl Caps {
    /// Default caps with any `PROPB_*` environment overrides applied.
    pub fn from_env() -> Self {
        fn read<T: std::str::FromStr>(var: &str, default: T) -> T {
            match std::env::var(var) {
                Ok(v) => v.parse().unwrap_or(default),
                Err(_) => default,
            }
        }
        let d = Caps::default();
        Caps {
            solve_exhaustive_vertices: read("PROPB_SOLVE_CAP", d.solve_exhaustive_vertices),
            enumeration: read("PROPB_ENUM_CAP", d.enumeration),
            build_raw: read("PROPB_BUILD_CAP", d.build_raw),
            expansion_vertices: read("PROPB_EXPANSION_CAP", d.expansion_vertices),
            guarantee_colorings: read("PROPB_GUARANTEE_CAP", d.guarantee_colorings),
        }
    }
}

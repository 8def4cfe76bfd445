//! Bounded-degree expander graphs on a torus of side `n` (the classic
//! degree-8 construction), exact vertex-expansion measurement, and walk /
//! walk-subsequence enumeration.
//!
//! Vertices are `0..m`. For torus graphs `m = n^2` and vertex `(x, y)` has
//! id `x * n + y`.

use std::collections::BTreeSet;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct ExpanderGraph {
    m: u32,
    side: Option<u32>,
    /// One entry per generating-map application; may repeat vertices.
    raw_adjacency: Vec<Vec<u32>>,
    /// Deduplicated, sorted neighbor lists (self-loops kept).
    neighbors: Vec<Vec<u32>>,
    delta: u32,
}

/// Forward images of `(x, y)` under the four torus maps
/// `(x+y, y), (x+y+1, y), (x, y+x), (x, y+x+1)` (arithmetic mod n).
pub fn margulis_forward_images(n: u32, x: u32, y: u32) -> [(u32, u32); 4] {
    let n64 = n as u64;
    let m = |v: u64| (v % n64) as u32;
    let (x64, y64) = (x as u64, y as u64);
    [
        (m(x64 + y64), y),
        (m(x64 + y64 + 1), y),
        (x, m(y64 + x64)),
        (x, m(y64 + x64 + 1)),
    ]
}

fn margulis_inverse_images(n: u32, x: u32, y: u32) -> [(u32, u32); 4] {
    let n64 = n as i64;
    let m = |v: i64| v.rem_euclid(n64) as u32;
    let (xi, yi) = (x as i64, y as i64);
    [
        (m(xi - yi), y),
        (m(xi - yi - 1), y),
        (x, m(yi - xi)),
        (x, m(yi - xi - 1)),
    ]
}

impl ExpanderGraph {
    /// Builds the degree-<=8 torus expander on `n * n` vertices: every vertex
    /// is connected through the four maps above and their inverses.
    pub fn build_margulis(n: u32) -> Result<ExpanderGraph> {
        if n < 2 {
            return Err(Error::param("torus side n must be at least 2"));
        }
        let m = n
            .checked_mul(n)
            .ok_or_else(|| Error::param("n^2 overflows"))?;
        let id = |(x, y): (u32, u32)| x * n + y;
        let mut raw = Vec::with_capacity(m as usize);
        for x in 0..n {
            for y in 0..n {
                let mut out: Vec<u32> = margulis_forward_images(n, x, y)
                    .into_iter()
                    .map(id)
                    .collect();
                out.extend(margulis_inverse_images(n, x, y).into_iter().map(id));
                raw.push(out);
            }
        }
        let mut g = ExpanderGraph::from_raw(raw)?;
        g.side = Some(n);
        Ok(g)
    }

    /// Builds a graph from explicit adjacency lists; the relation must be
    /// symmetric. Self-loops are allowed.
    pub fn from_adjacency(adjacency: Vec<Vec<u32>>) -> Result<ExpanderGraph> {
        ExpanderGraph::from_raw(adjacency)
    }

    fn from_raw(raw_adjacency: Vec<Vec<u32>>) -> Result<ExpanderGraph> {
        let m = raw_adjacency.len() as u32;
        if m == 0 {
            return Err(Error::param("graph needs at least one vertex"));
        }
        let mut neighbors: Vec<Vec<u32>> = Vec::with_capacity(m as usize);
        for (v, out) in raw_adjacency.iter().enumerate() {
            for &u in out {
                if u >= m {
                    return Err(Error::param(format!(
                        "vertex {v} lists neighbor {u} outside 0..{m}"
                    )));
                }
            }
            let mut dedup: Vec<u32> = out.clone();
            dedup.sort_unstable();
            dedup.dedup();
            neighbors.push(dedup);
        }
        for v in 0..m {
            for &u in &neighbors[v as usize] {
                if u != v && neighbors[u as usize].binary_search(&v).is_err() {
                    return Err(Error::param(format!(
                        "adjacency is not symmetric: {v} -> {u} but not {u} -> {v}"
                    )));
                }
            }
        }
        let delta = neighbors.iter().map(|l| l.len() as u32).max().unwrap_or(0);
        Ok(ExpanderGraph {
            m,
            side: None,
            raw_adjacency,
            neighbors,
            delta,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Torus side for graphs built by `build_margulis`.
    pub fn side(&self) -> Option<u32> {
        self.side
    }

    /// Max degree over deduplicated neighbor lists (self-loops count once).
    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn raw_adjacency(&self, v: u32) -> &[u32] {
        &self.raw_adjacency[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[v as usize]
    }

    /// Adjacency dump for debugging fixtures: `v: n1 n2 ...` per line.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.m {
            let ns: Vec<String> = self.neighbors(v).iter().map(|u| u.to_string()).collect();
            out.push_str(&format!("{v}: {}\n", ns.join(" ")));
        }
        out
    }

    /// Per-step move options for walks: neighbors plus an implicit stay-put
    /// self-loop, so a walk of length r always has (degree+1)-ish options.
    fn walk_options(&self) -> Vec<Vec<u32>> {
        (0..self.m)
            .map(|v| {
                let mut opts = self.neighbors(v).to_vec();
                if opts.binary_search(&v).is_err() {
                    opts.push(v);
                    opts.sort_unstable();
                }
                opts
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionMode {
    /// Checks every nonempty proper subset. Normative.
    Exhaustive,
    /// Minimum over randomly sampled subsets only; this can only
    /// *overestimate* the true expansion, and the report says so.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionMethod {
    Exhaustive,
    /// Upper bound: only sampled subsets were checked.
    Sampled { samples: u64, seed: u64 },
}

/// Measured vertex expansion: the minimum over subsets `A` of
/// `(|{v in V-A with a neighbor in A}| / |V-A|) * (m / |A|)`, i.e. the
/// largest alpha for which every checked subset satisfies the expansion
/// condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub alpha_measured: Rational64,
    pub witness_set: Vec<u32>,
    pub method: ExpansionMethod,
}

pub fn measure_expansion(
    g: &ExpanderGraph,
    mode: ExpansionMode,
    exhaustive_cap: u32,
) -> Result<ExpansionReport> {
    let m = g.m();
    if m < 2 {
        return Err(Error::param("expansion needs at least two vertices"));
    }
    if m > 63 {
        return Err(Error::param("expansion scan supports at most 63 vertices"));
    }
    let nbr_mask: Vec<u64> = (0..m)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &u| acc | 1 << u))
        .collect();
    let full: u64 = if m == 63 { !0 >> 1 } else { (1 << m) - 1 };

    let evaluate = |mask: u64| -> Rational64 {
        let a_size = mask.count_ones() as i64;
        let rest = (m as i64) - a_size;
        let mut boundary = 0i64;
        for v in 0..m {
            if mask >> v & 1 == 0 && nbr_mask[v as usize] & mask != 0 {
                boundary += 1;
            }
        }
        Rational64::new(boundary * m as i64, rest * a_size)
    };

    let mut best: Option<(Rational64, u64)> = None;
    let mut consider = |mask: u64| {
        let val = evaluate(mask);
        if best.map_or(true, |(b, _)| val < b) {
            best = Some((val, mask));
        }
    };

    match mode {
        ExpansionMode::Exhaustive => {
            if m > exhaustive_cap {
                return Err(Error::CapExceeded {
                    what: "exhaustive expansion scan (vertices)",
                    requested: m as u128,
                    cap: exhaustive_cap as u128,
                });
            }
            for mask in 1..full {
                consider(mask);
            }
        }
        ExpansionMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let mask = rng.gen_range(1..full);
                consider(mask);
            }
        }
    }
    let (alpha, mask) = best.expect("at least one subset considered");
    let witness = (0..m).filter(|&v| mask >> v & 1 == 1).collect();
    Ok(ExpansionReport {
        alpha_measured: alpha,
        witness_set: witness,
        method: match mode {
            ExpansionMode::Exhaustive => ExpansionMethod::Exhaustive,
            ExpansionMode::Sampled { samples, seed } => ExpansionMethod::Sampled { samples, seed },
        },
    })
}

fn walk_work(g: &ExpanderGraph, r: u32) -> u128 {
    (g.delta() as u128 + 1)
        .checked_pow(r)
        .and_then(|p| p.checked_mul(g.m() as u128))
        .unwrap_or(u128::MAX)
}

/// All walks of length `r` (as vertex sequences of length `r+1`), with the
/// implicit stay-put option at every vertex. Lexicographic order.
pub fn enumerate_walks(g: &ExpanderGraph, r: u32, cap: u128) -> Result<Vec<Vec<u32>>> {
    let work = walk_work(g, r);
    if work > cap {
        return Err(Error::CapExceeded {
            what: "walk enumeration",
            requested: work,
            cap,
        });
    }
    let options = g.walk_options();
    let mut walks = Vec::new();
    let mut path = Vec::with_capacity(r as usize + 1);
    fn descend(options: &[Vec<u32>], r: usize, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if path.len() == r + 1 {
            out.push(path.clone());
            return;
        }
        let v = *path.last().unwrap();
        for &u in &options[v as usize] {
            path.push(u);
            descend(options, r, path, out);
            path.pop();
        }
    }
    for start in 0..g.m() {
        path.push(start);
        descend(&options, r as usize, &mut path, &mut walks);
        path.pop();
    }
    Ok(walks)
}

use crate::binomial;

/// The set of length-`d` subsequences (not necessarily consecutive) of
/// length-`r` walks, deduplicated.
pub fn walk_subsequences(
    g: &ExpanderGraph,
    r: u32,
    d: u32,
    cap: u128,
) -> Result<BTreeSet<Vec<u32>>> {
    if d == 0 {
        return Err(Error::param("subsequence length d must be positive"));
    }
    if d > r + 1 {
        return Ok(BTreeSet::new());
    }
    let combos = binomial(r as u64 + 1, d as u64);
    let work = walk_work(g, r).saturating_mul(combos);
    if work > cap {
        return Err(Error::CapExceeded {
            what: "walk subsequence enumeration",
            requested: work,
            cap,
        });
    }
    // index tuples are shared by every walk; generate them once
    use itertools::Itertools;
    let index_sets: Vec<Vec<usize>> = (0..=r as usize).combinations(d as usize).collect();
    debug_assert_eq!(index_sets.len() as u128, combos);
    let walks = enumerate_walks(g, r, cap)?;
    let mut out = BTreeSet::new();
    for walk in &walks {
        for idx in &index_sets {
            out.insert(idx.iter().map(|&i| walk[i]).collect::<Vec<u32>>());
        }
    }
    Ok(out)
}

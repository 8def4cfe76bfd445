//! Canonical k-uniform hypergraphs, exact two-colorability decision
//! procedures, and the text/CNF interchange formats.
//!
//! Vertices are the integers `1..=n`. Edges are kept in canonical form:
//! strictly increasing vertex lists, deduplicated, sorted lexicographically.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::color::Color;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n_vertices: u32,
    k: u32,
    edges: Vec<Vec<u32>>,
}

/// A total assignment of colors to the vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Coloring {
        Coloring { colors }
    }

    /// Bit `v-1` of `mask` set means vertex `v` is Blue.
    pub fn from_mask(n: u32, mask: u64) -> Coloring {
        let colors = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Color::Blue
                } else {
                    Color::Red
                }
            })
            .collect();
        Coloring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color of vertex `v` (1-based).
    pub fn color(&self, v: u32) -> Color {
        self.colors[(v - 1) as usize]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn parse(text: &str) -> Result<Coloring> {
        text.trim()
            .chars()
            .map(Color::from_char)
            .collect::<Result<Vec<_>>>()
            .map(Coloring::new)
    }
}

impl std::fmt::Display for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.colors {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// Scan every coloring (up to the global color flip). Needs `n` below the
    /// exhaustive cap.
    Exhaustive,
    /// Depth-first search with not-all-equal propagation: an edge with all
    /// but one vertex in a single color forces the last vertex to the other
    /// color. Vertex 1 is fixed Red (global color flip symmetry).
    Backtracking,
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Worker threads for the exhaustive scan. The outcome is independent of
    /// this value; the witness may differ unless `canonical_witness` is set.
    pub workers: usize,
    /// Force a single-worker lexicographic-first scan so the witness is the
    /// smallest coloring (with vertex 1 Red) in mask order.
    pub canonical_witness: bool,
    /// Vertex cap for Exhaustive mode.
    pub exhaustive_cap: u32,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            workers: 1,
            canonical_witness: false,
            exhaustive_cap: crate::Caps::default().solve_exhaustive_vertices,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Colorable(Coloring),
    NotColorable,
}

#[derive(Debug, Clone)]
pub struct SolveStats {
    /// Colorings examined (Exhaustive) or assignments tried (Backtracking).
    /// Deterministic for Backtracking and for single-worker Exhaustive runs.
    pub nodes: u64,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub outcome: SolveOutcome,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_colorable(&self) -> bool {
        matches!(self.outcome, SolveOutcome::Colorable(_))
    }
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary edge lists. Each edge must contain
    /// exactly `k` distinct vertices in `1..=n`; edges are canonicalized
    /// (sorted) and deduplicated.
    pub fn new<I>(n_vertices: u32, k: u32, edges: I) -> Result<Hypergraph>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        if n_vertices == 0 {
            return Err(Error::param("hypergraph needs at least one vertex"));
        }
        if k == 0 {
            return Err(Error::param("edge size k must be positive"));
        }
        let mut set = BTreeSet::new();
        for mut edge in edges {
            if edge.len() != k as usize {
                return Err(Error::param(format!(
                    "edge {edge:?} has {} vertices, expected {k}",
                    edge.len()
                )));
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::param(format!("edge {edge:?} repeats a vertex")));
            }
            if edge[0] < 1 || *edge.last().unwrap() > n_vertices {
                return Err(Error::param(format!(
                    "edge {edge:?} leaves the vertex range 1..={n_vertices}"
                )));
            }
            set.insert(edge);
        }
        Ok(Hypergraph {
            n_vertices,
            k,
            edges: set.into_iter().collect(),
        })
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff no edge is monochromatic under `c`.
    pub fn is_proper(&self, c: &Coloring) -> Result<bool> {
        if c.len() != self.n_vertices as usize {
            return Err(Error::contract(format!(
                "coloring covers {} vertices, hypergraph has {}",
                c.len(),
                self.n_vertices
            )));
        }
        Ok(!self.edges.iter().any(|e| {
            let first = c.color(e[0]);
            e.iter().all(|&v| c.color(v) == first)
        }))
    }

    /// Decides two-colorability. Exhaustive and Backtracking agree on the
    /// outcome; witnesses may differ.
    pub fn solve(&self, mode: SolveMode, cfg: &SolveConfig) -> Result<SolveResult> {
        let start = Instant::now();
        let (outcome, nodes) = match mode {
            SolveMode::Exhaustive => self.solve_exhaustive(cfg)?,
            SolveMode::Backtracking => self.solve_backtracking()?,
        };
        Ok(SolveResult {
            outcome,
            stats: SolveStats {
                nodes,
                wall: start.elapsed(),
            },
        })
    }

    fn edge_masks(&self) -> Vec<u64> {
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
            .collect()
    }

    fn solve_exhaustive(&self, cfg: &SolveConfig) -> Result<(SolveOutcome, u64)> {
        let n = self.n_vertices;
        if n > cfg.exhaustive_cap {
            return Err(Error::CapExceeded {
                what: "exhaustive coloring search (vertices)",
                requested: n as u128,
                cap: cfg.exhaustive_cap as u128,
            });
        }
        if n > 63 {
            return Err(Error::param(
                "exhaustive solver is mask-based and supports at most 63 vertices",
            ));
        }
        let masks = self.edge_masks();
        // Vertex 1 is fixed Red: if a proper coloring exists, its flip or
        // itself has vertex 1 Red, so scanning half the space is complete.
        let span: u64 = 1u64 << (n - 1);
        let workers = cfg.workers.max(1);

        let proper = |mask: u64| -> bool {
            !masks
                .iter()
                .any(|&em| (mask & em) == 0 || (mask & em) == em)
        };

        if workers == 1 || cfg.canonical_witness {
            let mut nodes = 0u64;
            for rest in 0..span {
                let mask = rest << 1;
                nodes += 1;
                if proper(mask) {
                    return Ok((SolveOutcome::Colorable(Coloring::from_mask(n, mask)), nodes));
                }
            }
            return Ok((SolveOutcome::NotColorable, nodes));
        }

        let found = AtomicBool::new(false);
        let witness = AtomicU64::new(u64::MAX);
        let nodes_total = AtomicU64::new(0);
        let chunk = span.div_ceil(workers as u64);
        std::thread::scope(|scope| {
            for w in 0..workers as u64 {
                let (masks, found, witness, nodes_total) =
                    (&masks, &found, &witness, &nodes_total);
                scope.spawn(move || {
                    let lo = w * chunk;
                    let hi = span.min(lo + chunk);
                    let mut nodes = 0u64;
                    for rest in lo..hi {
                        if nodes % 4096 == 0 && found.load(Ordering::Relaxed) {
                            break;
                        }
                        nodes += 1;
                        let mask = rest << 1;
                        if !masks
                            .iter()
                            .any(|&em| (mask & em) == 0 || (mask & em) == em)
                        {
                            witness.fetch_min(mask, Ordering::Relaxed);
                            found.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                    nodes_total.fetch_add(nodes, Ordering::Relaxed);
                });
            }
        });
        let nodes = nodes_total.load(Ordering::Relaxed);
        if found.load(Ordering::Relaxed) {
            let mask = witness.load(Ordering::Relaxed);
            Ok((SolveOutcome::Colorable(Coloring::from_mask(n, mask)), nodes))
        } else {
            Ok((SolveOutcome::NotColorable, nodes))
        }
    }

    fn solve_backtracking(&self) -> Result<(SolveOutcome, u64)> {
        let n = self.n_vertices as usize;
        let k = self.k;
        let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (ei, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                incidence[(v - 1) as usize].push(ei as u32);
            }
        }
        // Branch on the vertex in the most edges, ties by lowest id.
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(incidence[v as usize].len()), v));

        let mut st = Backtracker {
            k,
            color: vec![None; n],
            edge_red: vec![0; self.edges.len()],
            edge_blue: vec![0; self.edges.len()],
            edge_open: self.edges.iter().map(|e| e.len() as u32).collect(),
            edge_xor: self
                .edges
                .iter()
                .map(|e| e.iter().fold(0u32, |x, &v| x ^ (v - 1)))
                .collect(),
            incidence,
            trail: Vec::with_capacity(n),
            nodes: 0,
        };

        // Fix vertex 1 Red; complete by color-flip symmetry.
        let root_ok = st.assign_and_propagate(0, Color::Red);
        let solved = root_ok && st.search(&order);
        if solved {
            let colors = st
                .color
                .iter()
                .map(|c| c.expect("search left a vertex unassigned"))
                .collect();
            Ok((SolveOutcome::Colorable(Coloring::new(colors)), st.nodes))
        } else {
            Ok((SolveOutcome::NotColorable, st.nodes))
        }
    }

    /// DIMACS CNF whose satisfiability is equivalent to two-colorability:
    /// variable v true = vertex v Red; each edge contributes the clause
    /// "some vertex Blue" and the clause "some vertex Red".
    pub fn to_nae_cnf(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "p cnf {} {}\n",
            self.n_vertices,
            2 * self.edges.len()
        ));
        for edge in &self.edges {
            let pos: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
            let neg: Vec<String> = edge.iter().map(|v| format!("-{v}")).collect();
            out.push_str(&pos.join(" "));
            out.push_str(" 0\n");
            out.push_str(&neg.join(" "));
            out.push_str(" 0\n");
        }
        out
    }

    /// Renders the hypergraph text format, optionally preceded by comment
    /// lines (each emitted as `c <text>`).
    pub fn to_text_with_comments(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str(&format!("c {c}\n"));
        }
        out.push_str(&format!(
            "p hyp {} {} {}\n",
            self.n_vertices,
            self.edges.len(),
            self.k
        ));
        for edge in &self.edges {
            let ids: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_text_with_comments(&[])
    }

    /// Parses the hypergraph text format. In strict mode (`normalize =
    /// false`) every edge line must be strictly increasing and duplicate
    /// edges are rejected; with `normalize` set, ids are sorted per line and
    /// duplicate edges collapse.
    pub fn parse(text: &str, normalize: bool) -> Result<Hypergraph> {
        let mut header: Option<(u32, u64, u32)> = None;
        let mut edges: Vec<Vec<u32>> = Vec::new();
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(lineno, "second header line"));
                }
                header = Some(parse_header(line, lineno)?);
                continue;
            }
            let (n, m, k) = header.ok_or_else(|| {
                Error::parse(lineno, "edge line before `p hyp <n> <m> <k>` header")
            })?;
            if edges.len() as u64 == m {
                return Err(Error::parse(
                    lineno,
                    format!("more edge lines than the {m} declared in the header"),
                ));
            }
            let mut edge = Vec::with_capacity(k as usize);
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad vertex id {tok:?}")))?;
                if v < 1 || v > n {
                    return Err(Error::parse(
                        lineno,
                        format!("vertex id {v} outside 1..={n}"),
                    ));
                }
                edge.push(v);
            }
            if edge.len() != k as usize {
                return Err(Error::parse(
                    lineno,
                    format!("edge has {} vertices, expected {k}", edge.len()),
                ));
            }
            if normalize {
                edge.sort_unstable();
            }
            if edge.windows(2).any(|w| w[0] >= w[1]) {
                let msg = if normalize {
                    "edge repeats a vertex"
                } else {
                    "vertex ids not strictly increasing (use normalize to sort)"
                };
                return Err(Error::parse(lineno, msg));
            }
            if !seen.insert(edge.clone()) {
                if !normalize {
                    return Err(Error::parse(lineno, "duplicate edge"));
                }
                continue;
            }
            edges.push(edge);
        }
        let (n, m, k) = header.ok_or_else(|| Error::parse(1, "missing header line"))?;
        if !normalize && edges.len() as u64 != m {
            return Err(Error::parse(
                text.lines().count(),
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Hypergraph::new(n, k, edges)
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<(u32, u64, u32)> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "p" || toks[1] != "hyp" {
        return Err(Error::parse(
            lineno,
            format!("malformed header {line:?}, expected `p hyp <n> <m> <k>`"),
        ));
    }
    let n = toks[2]
        .parse()
        .map_err(|_| Error::parse(lineno, "bad vertex count in header"))?;
    let m = toks[3]
        .parse()
        .map_err(|_| Error::parse(lineno, "bad edge count in header"))?;
    let k = toks[4]
        .parse()
        .map_err(|_| Error::parse(lineno, "bad edge size in header"))?;
    Ok((n, m, k))
}

struct Backtracker {
    k: u32,
    color: Vec<Option<Color>>,
    edge_red: Vec<u32>,
    edge_blue: Vec<u32>,
    edge_open: Vec<u32>,
    edge_xor: Vec<u32>,
    incidence: Vec<Vec<u32>>,
    trail: Vec<u32>,
    nodes: u64,
}

impl Backtracker {
    /// Assigns `v` (0-based) and runs not-all-equal propagation to a fixed
    /// point. Returns false on conflict. Counter updates for an assigned
    /// vertex always run to completion so `undo_to` can roll back cleanly.
    fn assign_and_propagate(&mut self, v: u32, c: Color) -> bool {
        let mut queue = vec![(v, c)];
        while let Some((v, c)) = queue.pop() {
            match self.color[v as usize] {
                Some(existing) if existing == c => continue,
                Some(_) => return false,
                None => {}
            }
            self.color[v as usize] = Some(c);
            self.trail.push(v);
            let mut conflict = false;
            for i in 0..self.incidence[v as usize].len() {
                let e = self.incidence[v as usize][i] as usize;
                self.edge_open[e] -= 1;
                self.edge_xor[e] ^= v;
                match c {
                    Color::Red => self.edge_red[e] += 1,
                    Color::Blue => self.edge_blue[e] += 1,
                }
                if self.edge_red[e] == self.k || self.edge_blue[e] == self.k {
                    conflict = true;
                } else if self.edge_open[e] == 1 {
                    let last = self.edge_xor[e];
                    if self.edge_red[e] == self.k - 1 {
                        queue.push((last, Color::Blue));
                    } else if self.edge_blue[e] == self.k - 1 {
                        queue.push((last, Color::Red));
                    }
                }
            }
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let c = self.color[v as usize].take().unwrap();
            for i in 0..self.incidence[v as usize].len() {
                let e = self.incidence[v as usize][i] as usize;
                self.edge_open[e] += 1;
                self.edge_xor[e] ^= v;
                match c {
                    Color::Red => self.edge_red[e] -= 1,
                    Color::Blue => self.edge_blue[e] -= 1,
                }
            }
        }
    }

    fn search(&mut self, order: &[u32]) -> bool {
        let branch = order
            .iter()
            .copied()
            .find(|&v| self.color[v as usize].is_none());
        let Some(v) = branch else {
            return true; // everything assigned without conflict
        };
        for c in [Color::Red, Color::Blue] {
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign_and_propagate(v, c) && self.search(order) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// The Fano plane as a 3-graph: 7 points, 7 lines. The smallest 3-graph
/// without a proper two-coloring; used as a fixture throughout the tests.
pub fn fano_plane() -> Hypergraph {
    Hypergraph::new(
        7,
        3,
        vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ],
    )
    .expect("fano plane is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, 2, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    /// Independent brute force used as the oracle for solver tests: iterates
    /// every coloring and checks edges directly from the definition.
    fn brute_force_colorable(h: &Hypergraph) -> Option<Coloring> {
        assert!(h.n_vertices() <= 24);
        for mask in 0u64..1 << h.n_vertices() {
            let c = Coloring::from_mask(h.n_vertices(), mask);
            let mono = h.edges().iter().any(|e| {
                e.iter().all(|&v| c.color(v) == Color::Red)
                    || e.iter().all(|&v| c.color(v) == Color::Blue)
            });
            if !mono {
                return Some(c);
            }
        }
        None
    }

    #[test]
    fn proper_rejects_monochromatic_edge() {
        let h = triangle();
        let c = Coloring::parse("RRB").unwrap();
        // edge {1,2} is RR
        assert!(!h.is_proper(&c).unwrap());
    }

    #[test]
    fn all_red_improper_when_edges_exist() {
        let h = triangle();
        let c = Coloring::new(vec![Color::Red; 3]);
        assert!(!h.is_proper(&c).unwrap());
        let empty = Hypergraph::new(3, 2, Vec::<Vec<u32>>::new()).unwrap();
        assert!(empty.is_proper(&c).unwrap());
    }

    #[test]
    fn fano_coloring_by_direct_scan() {
        let h = fano_plane();
        let c = Coloring::parse("RRRBBBB").unwrap();
        // Oracle: direct edge scan from the definition.
        let mut mono = false;
        for e in h.edges() {
            let cs: Vec<Color> = e.iter().map(|&v| c.color(v)).collect();
            if cs.iter().all(|&x| x == cs[0]) {
                mono = true;
            }
        }
        assert_eq!(h.is_proper(&c).unwrap(), !mono);
        // RRR on line {1,2,3} makes it improper.
        assert!(!h.is_proper(&c).unwrap());
    }

    #[test]
    fn coloring_not_total_is_contract_violation() {
        let h = triangle();
        let c = Coloring::parse("RR").unwrap();
        assert!(matches!(h.is_proper(&c), Err(Error::Contract(_))));
    }

    #[test]
    fn triangle_not_colorable_both_modes() {
        let h = triangle();
        assert!(brute_force_colorable(&h).is_none());
        for mode in [SolveMode::Exhaustive, SolveMode::Backtracking] {
            let r = h.solve(mode, &SolveConfig::default()).unwrap();
            assert_eq!(r.outcome, SolveOutcome::NotColorable);
        }
    }

    #[test]
    fn fano_not_colorable_and_minus_any_edge_colorable() {
        let h = fano_plane();
        assert!(brute_force_colorable(&h).is_none());
        for mode in [SolveMode::Exhaustive, SolveMode::Backtracking] {
            let r = h.solve(mode, &SolveConfig::default()).unwrap();
            assert_eq!(r.outcome, SolveOutcome::NotColorable);
        }
        for drop in 0..7 {
            let edges: Vec<Vec<u32>> = h
                .edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, e)| e.clone())
                .collect();
            let sub = Hypergraph::new(7, 3, edges).unwrap();
            assert!(brute_force_colorable(&sub).is_some());
            for mode in [SolveMode::Exhaustive, SolveMode::Backtracking] {
                let r = sub.solve(mode, &SolveConfig::default()).unwrap();
                match r.outcome {
                    SolveOutcome::Colorable(w) => assert!(sub.is_proper(&w).unwrap()),
                    SolveOutcome::NotColorable => panic!("fano minus edge {drop} must color"),
                }
            }
        }
    }

    #[test]
    fn exhaustive_cap_error() {
        let h = Hypergraph::new(30, 2, vec![vec![1, 2]]).unwrap();
        let err = h
            .solve(SolveMode::Exhaustive, &SolveConfig::default())
            .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn worker_count_does_not_change_outcome() {
        let h = fano_plane();
        for workers in [1, 2, 4] {
            let cfg = SolveConfig {
                workers,
                ..SolveConfig::default()
            };
            let r = h.solve(SolveMode::Exhaustive, &cfg).unwrap();
            assert_eq!(r.outcome, SolveOutcome::NotColorable);
        }
        let mut edges = fano_plane().edges().to_vec();
        edges.pop();
        let sub = Hypergraph::new(7, 3, edges).unwrap();
        for workers in [1, 2, 4] {
            let cfg = SolveConfig {
                workers,
                ..SolveConfig::default()
            };
            let r = sub.solve(SolveMode::Exhaustive, &cfg).unwrap();
            assert!(r.is_colorable());
        }
    }

    #[test]
    fn canonical_witness_is_lexicographic_first() {
        let mut edges = fano_plane().edges().to_vec();
        edges.pop();
        let sub = Hypergraph::new(7, 3, edges).unwrap();
        let cfg = SolveConfig {
            canonical_witness: true,
            ..SolveConfig::default()
        };
        let r = sub.solve(SolveMode::Exhaustive, &cfg).unwrap();
        let SolveOutcome::Colorable(w) = r.outcome else {
            panic!("expected colorable")
        };
        // Oracle: first proper mask with vertex 1 Red in ascending order.
        let first = (0..1u64 << 7)
            .filter(|m| m & 1 == 0)
            .map(|m| Coloring::from_mask(7, m))
            .find(|c| sub.is_proper(c).unwrap())
            .unwrap();
        assert_eq!(w, first);
    }

    #[test]
    fn nae_cnf_shapes() {
        let h = triangle();
        let cnf = h.to_nae_cnf();
        assert!(cnf.starts_with("p cnf 3 6\n"));
        assert_eq!(cnf.lines().count(), 7);
        let empty = Hypergraph::new(5, 3, Vec::<Vec<u32>>::new()).unwrap();
        assert_eq!(empty.to_nae_cnf(), "p cnf 5 0\n");
        let fano = fano_plane().to_nae_cnf();
        assert!(fano.starts_with("p cnf 7 14\n"));
    }

    #[test]
    fn header_example_parses() {
        assert_eq!(parse_header("p hyp 24 5376 4", 1).unwrap(), (24, 5376, 4));
        assert!(parse_header("p hyp 24 5376", 1).is_err());
        assert!(parse_header("p graph 1 2 3", 1).is_err());
    }

    #[test]
    fn parse_rejects_unsorted_unless_normalized() {
        let text = "p hyp 3 1 3\n3 1 2\n";
        let err = Hypergraph::parse(text, false).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let h = Hypergraph::parse(text, true).unwrap();
        assert_eq!(h.edges(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_id = "c comment\np hyp 3 1 2\n1 9\n";
        match Hypergraph::parse(bad_id, false).unwrap_err() {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains('9'));
            }
            other => panic!("unexpected {other:?}"),
        }
        let wrong_size = "p hyp 4 1 3\n1 2\n";
        match Hypergraph::parse(wrong_size, false).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let dup = "p hyp 4 2 2\n1 2\n1 2\n";
        assert!(Hypergraph::parse(dup, false).is_err());
    }

    proptest! {
        #[test]
        fn read_write_round_trip(n in 3u32..10, seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(2..=3u32).min(n);
            let mut edges = Vec::new();
            for _ in 0..rng.gen_range(0..8) {
                let mut e: Vec<u32> = Vec::new();
                while e.len() < k as usize {
                    let v = rng.gen_range(1..=n);
                    if !e.contains(&v) {
                        e.push(v);
                    }
                }
                edges.push(e);
            }
            let h = Hypergraph::new(n, k, edges).unwrap();
            let text = h.to_text();
            let back = Hypergraph::parse(&text, false).unwrap();
            prop_assert_eq!(&h, &back);
            prop_assert_eq!(back.to_text(), text);
        }
    }

    proptest! {
        #[test]
        fn solver_modes_agree_on_random_instances(seed in 0u64..60) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(4..=12u32);
            let k = rng.gen_range(2..=3u32);
            let m = rng.gen_range(1..=2 * n);
            let mut edges = Vec::new();
            for _ in 0..m {
                let mut e: Vec<u32> = Vec::new();
                while e.len() < k as usize {
                    let v = rng.gen_range(1..=n);
                    if !e.contains(&v) {
                        e.push(v);
                    }
                }
                edges.push(e);
            }
            let h = Hypergraph::new(n, k, edges).unwrap();
            let a = h.solve(SolveMode::Exhaustive, &SolveConfig::default()).unwrap();
            let b = h.solve(SolveMode::Backtracking, &SolveConfig::default()).unwrap();
            prop_assert_eq!(a.is_colorable(), b.is_colorable());
            if let SolveOutcome::Colorable(w) = a.outcome {
                prop_assert!(h.is_proper(&w).unwrap());
            }
            if let SolveOutcome::Colorable(w) = b.outcome {
                prop_assert!(h.is_proper(&w).unwrap());
            }
        }
    }
}

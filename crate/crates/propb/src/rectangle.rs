//! Combinatorial rectangles in `[m]^d`, exact volumes, the walk-length
//! formula for hitting rectangles of a given volume, and hitting-set
//! generation from expander-walk subsequences.
//!
//! The deterministic generator pads `m` to the next perfect square `m'`
//! (at most `2m`), builds the degree-8 torus expander on `m'` vertices,
//! enumerates length-`d` subsequences of length-`r` walks, maps vertices to
//! `[m']` row-major, and finally drops points with a coordinate above `m`.
//! Any rectangle over `[m]` that the unfiltered set hits is still hit after
//! filtering, because its points never leave `[m]^d`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{log2_big_rational, union_bound_sample_count};
use crate::expander::{measure_expansion, walk_subsequences, ExpanderGraph, ExpansionMode};
use crate::{Caps, Error, Result};

/// A product set `R_1 x ... x R_d` inside `[m]^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    m: u32,
    factors: Vec<BTreeSet<u32>>,
}

impl Rectangle {
    pub fn new(m: u32, factors: Vec<BTreeSet<u32>>) -> Result<Rectangle> {
        if m == 0 {
            return Err(Error::param("alphabet size m must be positive"));
        }
        if factors.is_empty() {
            return Err(Error::param("rectangle needs at least one factor"));
        }
        for (i, f) in factors.iter().enumerate() {
            if let Some(&x) = f.iter().find(|&&x| x < 1 || x > m) {
                return Err(Error::param(format!(
                    "factor {i} contains {x}, outside 1..={m}"
                )));
            }
        }
        Ok(Rectangle { m, factors })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[BTreeSet<u32>] {
        &self.factors
    }

    /// `|R| / m^d` as an exact rational.
    pub fn volume(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for f in &self.factors {
            num *= BigInt::from(f.len());
            den *= BigInt::from(self.m);
        }
        BigRational::new(num, den)
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        point.len() == self.factors.len()
            && point
                .iter()
                .zip(&self.factors)
                .all(|(x, f)| f.contains(x))
    }
}

/// Smallest perfect square `m'` with `m <= m' <= 2m`.
pub fn pad_to_square(m: u32) -> u32 {
    let mut root = (m as f64).sqrt() as u32;
    while root * root < m {
        root += 1;
    }
    while root > 1 && (root - 1) * (root - 1) >= m {
        root -= 1;
    }
    debug_assert!(root * root >= m && (root * root) as u64 <= 2 * m as u64);
    root * root
}

/// Result of the walk-length formula `r = ceil(1 + (4/a)(d + log2(2^d / V)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkLength {
    pub r: u64,
    /// Alpha actually used; alphas at or above 1/2 are clamped to just below
    /// 1/2, since the walk lemma assumes `0 < alpha < 1/2`.
    pub alpha_used: f64,
    pub clamped: bool,
}

pub fn required_walk_length(d: u32, volume_floor: &BigRational, alpha: f64) -> Result<WalkLength> {
    if d == 0 {
        return Err(Error::param("dimension d must be positive"));
    }
    if !volume_floor.is_positive() || volume_floor > &BigRational::one() {
        return Err(Error::param("volume floor must lie in (0, 1]"));
    }
    if !(alpha > 0.0) {
        return Err(Error::param("alpha must be positive"));
    }
    let just_below_half = f64::from_bits(0.5f64.to_bits() - 1);
    let (alpha_used, clamped) = if alpha >= 0.5 {
        (just_below_half, true)
    } else {
        (alpha, false)
    };
    // log2(2^d / V) = d + log2(1/V)
    let log_term = d as f64 + log2_big_rational(&(BigRational::one() / volume_floor));
    let raw = 1.0 + (4.0 / alpha_used) * (d as f64 + log_term);
    let r = raw.ceil();
    if !(r >= 1.0) || r > u64::MAX as f64 {
        return Err(Error::param(format!("walk length {raw} out of range")));
    }
    Ok(WalkLength {
        r: r as u64,
        alpha_used,
        clamped,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HittingSetSpec {
    pub m: u32,
    pub d: u32,
    pub volume_floor: BigRational,
    /// Expansion used for the walk-length formula; absent when `r` was
    /// overridden directly.
    pub alpha: Option<Rational64>,
    pub m_padded: u32,
    pub r: u64,
    /// Point count before out-of-range coordinates were dropped.
    pub pre_filter_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HittingSet {
    pub m: u32,
    pub d: u32,
    /// Sorted, deduplicated points of `[m]^d`.
    pub points: Vec<Vec<u32>>,
    pub spec: Option<HittingSetSpec>,
}

impl HittingSet {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// True iff some stored point lies in every factor of `rect`.
    pub fn hits(&self, rect: &Rectangle) -> Result<bool> {
        if rect.m() != self.m || rect.d() != self.d as usize {
            return Err(Error::contract(format!(
                "rectangle is over [{}]^{}, hitting set over [{}]^{}",
                rect.m(),
                rect.d(),
                self.m,
                self.d
            )));
        }
        let membership: Vec<Vec<bool>> = rect
            .factors()
            .iter()
            .map(|f| {
                let mut row = vec![false; self.m as usize + 1];
                for &x in f {
                    row[x as usize] = true;
                }
                row
            })
            .collect();
        Ok(self.points.iter().any(|p| {
            p.iter()
                .zip(&membership)
                .all(|(&x, row)| row[x as usize])
        }))
    }

    /// Text format: `p hitset <m> <d> <size>`, then one point per line.
    pub fn to_text_with_comments(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str(&format!("c {c}\n"));
        }
        out.push_str(&format!("p hitset {} {} {}\n", self.m, self.d, self.size()));
        for p in &self.points {
            let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            out.push_str(&coords.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_text_with_comments(&[])
    }

    pub fn parse(text: &str) -> Result<HittingSet> {
        let mut header: Option<(u32, u32, usize)> = None;
        let mut points: Vec<Vec<u32>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 5 || toks[1] != "hitset" {
                    return Err(Error::parse(lineno, "expected `p hitset <m> <d> <size>`"));
                }
                let m = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad m"))?;
                let d = toks[3]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad d"))?;
                let size = toks[4]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad size"))?;
                header = Some((m, d, size));
                continue;
            }
            let (m, d, _) =
                header.ok_or_else(|| Error::parse(lineno, "point before header"))?;
            let mut p = Vec::with_capacity(d as usize);
            for tok in line.split_whitespace() {
                let x: u32 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad coordinate {tok:?}")))?;
                if x < 1 || x > m {
                    return Err(Error::parse(
                        lineno,
                        format!("coordinate {x} outside 1..={m}"),
                    ));
                }
                p.push(x);
            }
            if p.len() != d as usize {
                return Err(Error::parse(
                    lineno,
                    format!("point has {} coordinates, expected {d}", p.len()),
                ));
            }
            points.push(p);
        }
        let (m, d, size) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
        if points.len() != size {
            return Err(Error::parse(
                text.lines().count(),
                format!("header declares {size} points, found {}", points.len()),
            ));
        }
        points.sort();
        points.dedup();
        Ok(HittingSet {
            m,
            d,
            points,
            spec: None,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct HitSetOverrides {
    pub alpha_override: Option<Rational64>,
    pub r_override: Option<u64>,
}

/// Generates a hitting set for every combinatorial rectangle in `[m]^d` of
/// volume at least `volume_floor`.
///
/// The guarantee-grade walk length coming out of the formula is enormous for
/// realistic alphas, so desk-scale runs pass `r_override`; the hitting
/// property is then checked empirically by the callers rather than carried
/// by the lemma.
pub fn build_hitting_set(
    m: u32,
    d: u32,
    volume_floor: &BigRational,
    overrides: &HitSetOverrides,
    caps: &Caps,
) -> Result<HittingSet> {
    if m < 2 {
        return Err(Error::param("alphabet size m must be at least 2"));
    }
    if d == 0 {
        return Err(Error::param("dimension d must be positive"));
    }
    if !volume_floor.is_positive() || volume_floor > &BigRational::one() {
        return Err(Error::param("volume floor must lie in (0, 1]"));
    }
    let m_padded = pad_to_square(m);
    let n = (m_padded as f64).sqrt().round() as u32;
    let graph = ExpanderGraph::build_margulis(n)?;

    let alpha: Option<Rational64> = match overrides.alpha_override {
        Some(a) => Some(a),
        None if overrides.r_override.is_some() => None,
        None => {
            if m_padded <= caps.expansion_vertices {
                let report =
                    measure_expansion(&graph, ExpansionMode::Exhaustive, caps.expansion_vertices)?;
                Some(report.alpha_measured)
            } else {
                return Err(Error::param(format!(
                    "padded size {m_padded} exceeds the exhaustive expansion cap; \
                     pass an alpha override or an r override"
                )));
            }
        }
    };
    let r = match overrides.r_override {
        Some(r) => r,
        None => {
            let a = alpha.expect("alpha resolved when r is not overridden");
            let af = *a.numer() as f64 / *a.denom() as f64;
            required_walk_length(d, volume_floor, af)?.r
        }
    };
    let r32 = u32::try_from(r).map_err(|_| Error::CapExceeded {
        what: "walk length",
        requested: r as u128,
        cap: u32::MAX as u128,
    })?;

    let tuples = walk_subsequences(&graph, r32, d, caps.enumeration)?;
    let pre_filter_size = tuples.len();
    // vertex v of the torus graph is the symbol v+1 of [m']
    let points: Vec<Vec<u32>> = tuples
        .into_iter()
        .map(|t| t.into_iter().map(|v| v + 1).collect::<Vec<u32>>())
        .filter(|p: &Vec<u32>| p.iter().all(|&x| x <= m))
        .collect();
    Ok(HittingSet {
        m,
        d,
        points,
        spec: Some(HittingSetSpec {
            m,
            d,
            volume_floor: volume_floor.clone(),
            alpha,
            m_padded,
            r,
            pre_filter_size,
        }),
    })
}

/// A randomized hitting set: enough i.i.d. uniform samples of `[m]^d` that
/// the expected number of missed volume-`p` targets among `num_targets`
/// candidates drops below one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomHittingSet {
    pub points: Vec<Vec<u32>>,
    pub samples_drawn: u64,
}

pub fn random_hitting_set(
    m: u32,
    d: u32,
    num_targets: u128,
    success_prob_floor: Rational64,
    seed: u64,
) -> Result<RandomHittingSet> {
    if m == 0 || d == 0 {
        return Err(Error::param("m and d must be positive"));
    }
    let samples = union_bound_sample_count(num_targets, success_prob_floor)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    for _ in 0..samples {
        let p: Vec<u32> = (0..d).map(|_| rng.gen_range(1..=m)).collect();
        set.insert(p);
    }
    Ok(RandomHittingSet {
        points: set.into_iter().collect(),
        samples_drawn: samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::Rng;

    fn rect(m: u32, factors: &[&[u32]]) -> Rectangle {
        Rectangle::new(
            m,
            factors
                .iter()
                .map(|f| f.iter().copied().collect())
                .collect(),
        )
        .unwrap()
    }

    fn full_rect(m: u32, d: usize) -> Rectangle {
        Rectangle::new(m, vec![(1..=m).collect(); d]).unwrap()
    }

    #[test]
    fn volume_examples() {
        assert_eq!(full_rect(5, 3).volume(), BigRational::one());
        let empty = rect(4, &[&[1, 2], &[]]);
        assert_eq!(empty.volume(), BigRational::zero());
        let r = rect(4, &[&[1, 2], &[1, 2, 3]]);
        assert_eq!(
            r.volume(),
            BigRational::new(BigInt::from(3), BigInt::from(8))
        );
    }

    #[test]
    fn padding_property_full_range() {
        for m in 2u32..=1_000_000 {
            let p = pad_to_square(m);
            let root = (p as f64).sqrt().round() as u64;
            assert_eq!(root * root, p as u64, "m={m}");
            assert!(p >= m && p as u64 <= 2 * m as u64, "m={m} m'={p}");
        }
    }

    #[test]
    fn walk_length_examples() {
        // torus-expander constant, d=2, V=1/4
        let alpha = (2.0 - 3.0f64.sqrt()) / 4.0;
        let v = BigRational::new(BigInt::from(1), BigInt::from(4));
        let wl = required_walk_length(2, &v, alpha).unwrap();
        assert_eq!(wl.r, 360);
        assert!(!wl.clamped);

        let wl = required_walk_length(1, &BigRational::one(), 0.25).unwrap();
        assert_eq!(wl.r, 33);

        // clamping kicks in at alpha >= 1/2
        let wl = required_walk_length(1, &BigRational::one(), 0.75).unwrap();
        assert!(wl.clamped);
        assert!(wl.alpha_used < 0.5);
    }

    #[test]
    fn walk_length_monotonicity() {
        let alpha = 0.25;
        let vols: Vec<BigRational> = (1..=8)
            .map(|i| BigRational::new(BigInt::from(1), BigInt::from(1u64 << i)))
            .collect();
        for d in 1..=4u32 {
            let mut prev = None;
            for v in vols.iter().rev() {
                // volume increasing => r nonincreasing
                let r = required_walk_length(d, v, alpha).unwrap().r;
                if let Some(p) = prev {
                    assert!(r <= p);
                }
                prev = Some(r);
            }
            let big = required_walk_length(d + 1, &vols[0], alpha).unwrap().r;
            let small = required_walk_length(d, &vols[0], alpha).unwrap().r;
            assert!(big >= small);
        }
    }

    #[test]
    fn singleton_floor_forces_full_alphabet() {
        // d=1 and V=1/m: every singleton must be hit, so the set is all of [m]
        let caps = Caps::default();
        for m in [5u32, 9, 12] {
            let v = BigRational::new(BigInt::from(1), BigInt::from(m));
            let hs = build_hitting_set(
                m,
                1,
                &v,
                &HitSetOverrides {
                    r_override: Some(2),
                    ..Default::default()
                },
                &caps,
            )
            .unwrap();
            let expect: Vec<Vec<u32>> = (1..=m).map(|x| vec![x]).collect();
            assert_eq!(hs.points, expect);
            for x in 1..=m {
                assert!(hs.hits(&rect(m, &[&[x]])).unwrap());
            }
        }
    }

    #[test]
    fn hitting_random_rectangles_m9() {
        let caps = Caps::default();
        let v = BigRational::new(BigInt::from(1), BigInt::from(2));
        let hs = build_hitting_set(
            9,
            2,
            &v,
            &HitSetOverrides {
                r_override: Some(3),
                ..Default::default()
            },
            &caps,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 200 {
            let factors: Vec<BTreeSet<u32>> = (0..2)
                .map(|_| {
                    let size = rng.gen_range(1..=9u32);
                    let mut f = BTreeSet::new();
                    while f.len() < size as usize {
                        f.insert(rng.gen_range(1..=9u32));
                    }
                    f
                })
                .collect();
            let r = Rectangle::new(9, factors).unwrap();
            if r.volume() < v {
                continue;
            }
            tested += 1;
            assert!(hs.hits(&r).unwrap(), "missed {:?}", r);
        }
    }

    #[test]
    fn filtering_keeps_points_in_range() {
        let caps = Caps::default();
        let v = BigRational::new(BigInt::from(1), BigInt::from(2));
        // m = 10 pads to 16
        let hs = build_hitting_set(
            10,
            2,
            &v,
            &HitSetOverrides {
                r_override: Some(4),
                ..Default::default()
            },
            &caps,
        )
        .unwrap();
        let spec = hs.spec.as_ref().unwrap();
        assert_eq!(spec.m_padded, 16);
        assert!(hs.points.iter().all(|p| p.iter().all(|&x| x <= 10)));
        assert!(spec.pre_filter_size >= hs.size());
        // shape bound: pre-filter size <= m' * (2 (delta+1))^r
        let g = ExpanderGraph::build_margulis(4).unwrap();
        let bound = (16u128) * (2 * (g.delta() as u128 + 1)).pow(spec.r as u32);
        assert!((spec.pre_filter_size as u128) <= bound);
    }

    #[test]
    fn hits_edge_cases() {
        let hs = HittingSet {
            m: 4,
            d: 2,
            points: vec![vec![1, 1]],
            spec: None,
        };
        assert!(hs.hits(&full_rect(4, 2)).unwrap());
        assert!(!hs.hits(&rect(4, &[&[1], &[2]])).unwrap());
        assert!(!hs.hits(&rect(4, &[&[], &[1, 2]])).unwrap());
        assert!(hs.hits(&full_rect(5, 2)).is_err());
        assert!(hs.hits(&full_rect(4, 3)).is_err());
        let empty = HittingSet {
            m: 4,
            d: 2,
            points: vec![],
            spec: None,
        };
        assert!(!empty.hits(&full_rect(4, 2)).unwrap());
    }

    #[test]
    fn random_hitting_set_worked_example() {
        // 2^(s t) targets with s=8, t=2 and p = 1/9 needs 100 samples
        let r = random_hitting_set(8, 2, 1 << 16, Rational64::new(1, 9), 3).unwrap();
        assert_eq!(r.samples_drawn, 100);
        // degenerate clamp
        let r = random_hitting_set(4, 1, 1, Rational64::one(), 0).unwrap();
        assert_eq!(r.samples_drawn, 1);
        // determinism
        let a = random_hitting_set(6, 3, 1000, Rational64::new(1, 4), 11).unwrap();
        let b = random_hitting_set(6, 3, 1000, Rational64::new(1, 4), 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hitset_file_round_trip() {
        let caps = Caps::default();
        let v = BigRational::new(BigInt::from(1), BigInt::from(2));
        let hs = build_hitting_set(
            9,
            2,
            &v,
            &HitSetOverrides {
                r_override: Some(2),
                ..Default::default()
            },
            &caps,
        )
        .unwrap();
        let text = hs.to_text();
        assert!(text.starts_with(&format!("p hitset 9 2 {}\n", hs.size())));
        let back = HittingSet::parse(&text).unwrap();
        assert_eq!(back.points, hs.points);
        // comments are preserved as comments
        let with = hs.to_text_with_comments(&["cfg: test".into()]);
        assert!(with.starts_with("c cfg: test\n"));
        assert_eq!(HittingSet::parse(&with).unwrap().points, hs.points);
    }

    proptest! {
        #[test]
        fn volume_is_multiplicative_and_bounded(
            sizes in proptest::collection::vec(0u32..=6, 1..=4)
        ) {
            let m = 6u32;
            let factors: Vec<BTreeSet<u32>> = sizes
                .iter()
                .map(|&k| (1..=k).collect())
                .collect();
            let r = Rectangle::new(m, factors).unwrap();
            let vol = r.volume();
            prop_assert!(vol >= BigRational::zero() && vol <= BigRational::one());
            let product = sizes.iter().map(|&k| {
                BigRational::new(BigInt::from(k), BigInt::from(m))
            }).fold(BigRational::one(), |a, b| a * b);
            prop_assert_eq!(vol, product);
        }
    }
}

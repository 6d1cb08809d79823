//! Builders for the masking quorum constructions.
//!
//! Every construction is available as a [`QuorumSystemHandle`], which carries
//! closed-form [`SystemParams`], a live predicate, a sampler for the
//! load-optimal access strategy, and materialization to an explicit system
//! when the quorum count is small.
//!
//! Element numbering is canonical across the crate:
//! - grid element `(i, j)` (row `i`, column `j`, 0-based) is `i * side + j`;
//! - recursive threshold leaves are numbered left to right;
//! - in a composition, copy `i` of the inner system occupies
//!   `[i * n_inner, (i + 1) * n_inner)`.

mod fpp;

pub use fpp::{fpp_lines, is_prime, projective_points};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, ceil_sqrt, combinations, saturating_pow};
use crate::composition::{compose_explicit_with_cap, compose_params};
use crate::error::{Error, Result};
use crate::model::{ElementSet, ExplicitQuorumSystem, LivePredicate, Rng, SystemParams};
use crate::paths;

/// Description of a construction, with the canonical JSON encoding
/// `{"MGrid":{"side":32,"b":15}}`, `{"Composed":{"outer":..,"inner":..}}`, etc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum ConstructionSpec {
    MGrid {
        side: u64,
        b: u64,
    },
    Threshold {
        k: u64,
        ell: u64,
    },
    RT {
        k: u64,
        ell: u64,
        h: u64,
    },
    FPP {
        q: u64,
    },
    BoostFPP {
        q: u64,
        b: u64,
    },
    MPath {
        side: u64,
        b: u64,
    },
    Composed {
        outer: Box<ConstructionSpec>,
        inner: Box<ConstructionSpec>,
    },
}

#[derive(Debug, Clone)]
enum Kind {
    Grid {
        side: usize,
        lines: usize,
    },
    Threshold {
        k: usize,
        ell: usize,
    },
    Recursive {
        k: usize,
        ell: usize,
        h: u32,
    },
    Plane {
        lines: ExplicitQuorumSystem,
    },
    Paths {
        side: usize,
        r: usize,
    },
    Composed {
        outer: Box<QuorumSystemHandle>,
        inner: Box<QuorumSystemHandle>,
    },
}

/// A built construction.
#[derive(Debug, Clone)]
pub struct QuorumSystemHandle {
    spec: ConstructionSpec,
    params: SystemParams,
    n: usize,
    kind: Kind,
}

/// Largest universe a handle will be built for.
const MAX_UNIVERSE: u64 = 1 << 26;

fn universe_size(n: u64) -> Result<usize> {
    if n > MAX_UNIVERSE {
        return Err(Error::size(
            "universe size",
            n as u128,
            MAX_UNIVERSE as u128,
        ));
    }
    Ok(n as usize)
}

fn checked_pow(base: u64, exp: u64, what: &str) -> Result<u64> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::param(format!("{what} overflows: {base}^{exp}")))
}

fn check_threshold(k: u64, ell: u64) -> Result<()> {
    if !(k > ell && 2 * ell > k) {
        return Err(Error::param(format!(
            "threshold needs k > ell > k/2, got k={k}, ell={ell}"
        )));
    }
    Ok(())
}

/// Exact minimum intersection of two "g rows plus g columns" quorums on a
/// `side x side` grid. Disjoint row and column choices give `2 g^2`; when
/// `2g > side` they must overlap in `e = 2g - side` rows and columns, which
/// brings it to `2 g^2 - e^2`.
fn grid_min_intersection(side: u64, g: u64) -> u64 {
    let overlap = (2 * g).saturating_sub(side);
    2 * g * g - overlap * overlap
}

pub fn build(spec: &ConstructionSpec) -> Result<QuorumSystemHandle> {
    match *spec {
        ConstructionSpec::MGrid { side, b } => {
            if side < 2 {
                return Err(Error::param(format!("MGrid needs side >= 2, got {side}")));
            }
            if 2 * b + 1 > side {
                return Err(Error::param(format!(
                    "MGrid needs b <= (side-1)/2, got side={side}, b={b}"
                )));
            }
            let g = ceil_sqrt(b + 1);
            let n = side * side;
            let c = 2 * g * side - g * g;
            let params = SystemParams::derive(
                n,
                c,
                grid_min_intersection(side, g),
                side - g + 1,
                c as f64 / n as f64,
            );
            Ok(QuorumSystemHandle {
                spec: spec.clone(),
                params,
                n: universe_size(n)?,
                kind: Kind::Grid {
                    side: side as usize,
                    lines: g as usize,
                },
            })
        }
        ConstructionSpec::Threshold { k, ell } => {
            check_threshold(k, ell)?;
            Ok(threshold_unchecked(k, ell)?)
        }
        ConstructionSpec::RT { k, ell, h } => {
            check_threshold(k, ell)?;
            if h == 0 {
                return Err(Error::param("RT needs depth h >= 1"));
            }
            let n = checked_pow(k, h, "RT universe")?;
            let c = ell.pow(h as u32);
            let i_min = (2 * ell - k).pow(h as u32);
            let a_min = (k - ell + 1).pow(h as u32);
            let load = (ell as f64 / k as f64).powi(h as i32);
            Ok(QuorumSystemHandle {
                spec: spec.clone(),
                params: SystemParams::derive(n, c, i_min, a_min, load),
                n: universe_size(n)?,
                kind: Kind::Recursive {
                    k: k as usize,
                    ell: ell as usize,
                    h: h as u32,
                },
            })
        }
        ConstructionSpec::FPP { q } => {
            fpp::check_order(q)?;
            let n = q * q + q + 1;
            let params = SystemParams::derive(n, q + 1, 1, q + 1, (q + 1) as f64 / n as f64);
            Ok(QuorumSystemHandle {
                spec: spec.clone(),
                params,
                n: universe_size(n)?,
                kind: Kind::Plane {
                    lines: fpp_lines(q)?,
                },
            })
        }
        ConstructionSpec::BoostFPP { q, b } => {
            let outer = build(&ConstructionSpec::FPP { q })?;
            let inner = threshold_unchecked(4 * b + 1, 3 * b + 1)?;
            compose_handles(spec.clone(), outer, inner)
        }
        ConstructionSpec::MPath { side, b } => {
            if side < 2 {
                return Err(Error::param(format!("MPath needs side >= 2, got {side}")));
            }
            let r = ceil_sqrt(2 * b + 1);
            if r > side {
                return Err(Error::param(format!(
                    "MPath needs ceil(sqrt(2b+1)) <= side, got r={r}, side={side}"
                )));
            }
            if side - r + 1 < b + 1 {
                return Err(Error::param(format!(
                    "MPath needs side - r + 1 >= b + 1 (transversals larger than b), got side={side}, b={b}, r={r}"
                )));
            }
            let n = side * side;
            let c = 2 * r * side - r * r;
            let params = SystemParams::derive(n, c, r * r, side - r + 1, c as f64 / n as f64);
            Ok(QuorumSystemHandle {
                spec: spec.clone(),
                params,
                n: universe_size(n)?,
                kind: Kind::Paths {
                    side: side as usize,
                    r: r as usize,
                },
            })
        }
        ConstructionSpec::Composed {
            ref outer,
            ref inner,
        } => {
            let outer = build(outer)?;
            let inner = build(inner)?;
            compose_handles(spec.clone(), outer, inner)
        }
    }
}

/// `ell`-of-`k` without the `k > ell > k/2` check; used for the 1-of-1 block
/// of a boosted plane with `b = 0`.
fn threshold_unchecked(k: u64, ell: u64) -> Result<QuorumSystemHandle> {
    if ell == 0 || ell > k || 2 * ell <= k {
        return Err(Error::param(format!(
            "threshold needs k >= ell > k/2, got k={k}, ell={ell}"
        )));
    }
    Ok(QuorumSystemHandle {
        spec: ConstructionSpec::Threshold { k, ell },
        params: SystemParams::derive(k, ell, 2 * ell - k, k - ell + 1, ell as f64 / k as f64),
        n: universe_size(k)?,
        kind: Kind::Threshold {
            k: k as usize,
            ell: ell as usize,
        },
    })
}

/// Composition of two handles; liveness is evaluated recursively.
pub fn compose_handles(
    spec: ConstructionSpec,
    outer: QuorumSystemHandle,
    inner: QuorumSystemHandle,
) -> Result<QuorumSystemHandle> {
    let params = compose_params(&outer.params, &inner.params);
    let n = universe_size(params.n)?;
    Ok(QuorumSystemHandle {
        spec,
        params,
        n,
        kind: Kind::Composed {
            outer: Box::new(outer),
            inner: Box::new(inner),
        },
    })
}

impl QuorumSystemHandle {
    pub fn spec(&self) -> &ConstructionSpec {
        &self.spec
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// False for M-Path, whose materialization covers only straight-path quorums.
    pub fn materializes_all_quorums(&self) -> bool {
        match &self.kind {
            Kind::Paths { .. } => false,
            Kind::Composed { outer, inner } => {
                outer.materializes_all_quorums() && inner.materializes_all_quorums()
            }
            _ => true,
        }
    }

    /// Whether `alive` contains a complete quorum.
    pub fn live(&self, alive: &ElementSet) -> Result<bool> {
        if alive.universe_size() != self.n {
            return Err(Error::param(format!(
                "alive set is over a universe of size {}, system has {}",
                alive.universe_size(),
                self.n
            )));
        }
        Ok(self.live_unchecked(alive))
    }

    fn live_unchecked(&self, alive: &ElementSet) -> bool {
        match &self.kind {
            Kind::Grid { side, lines } => grid_live(*side, *lines, alive),
            Kind::Threshold { ell, .. } => alive.len() >= *ell,
            Kind::Recursive { k, ell, .. } => {
                let mut level: Vec<bool> = (0..self.n).map(|e| alive.contains(e)).collect();
                while level.len() > 1 {
                    level = level
                        .chunks(*k)
                        .map(|group| group.iter().filter(|&&x| x).count() >= *ell)
                        .collect();
                }
                level[0]
            }
            Kind::Plane { lines } => lines.has_live_quorum(alive),
            Kind::Paths { side, r } => paths::mpath_live_unchecked(*side, *r, alive),
            Kind::Composed { outer, inner } => {
                let block = inner.n;
                let mut bits = ElementSet::empty(outer.n);
                for i in 0..outer.n {
                    if inner.live_unchecked(&alive.slice(i * block, block)) {
                        bits.insert(i);
                    }
                }
                outer.live_unchecked(&bits)
            }
        }
    }

    /// Draws a quorum from the construction's load-optimal strategy.
    pub fn sample_quorum(&self, rng: &mut Rng) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        self.sample_into(rng, &mut out, 0);
        out
    }

    fn sample_into(&self, rng: &mut Rng, out: &mut ElementSet, offset: usize) {
        match &self.kind {
            Kind::Grid { side, lines } | Kind::Paths { side, r: lines } => {
                let rows = rng.subset(*side, *lines);
                let cols = rng.subset(*side, *lines);
                for &i in &rows {
                    for j in 0..*side {
                        out.insert(offset + i * side + j);
                    }
                }
                for &j in &cols {
                    for i in 0..*side {
                        out.insert(offset + i * side + j);
                    }
                }
            }
            Kind::Threshold { k, ell } => {
                for e in rng.subset(*k, *ell) {
                    out.insert(offset + e);
                }
            }
            Kind::Recursive { k, ell, h } => sample_recursive(rng, *k, *ell, *h, offset, out),
            Kind::Plane { lines } => {
                let line = &lines.quorums()[rng.below(lines.len())];
                for e in line.iter() {
                    out.insert(offset + e);
                }
            }
            Kind::Composed { outer, inner } => {
                let chosen = outer.sample_quorum(rng);
                for i in chosen.iter() {
                    inner.sample_into(rng, out, offset + i * inner.n);
                }
            }
        }
    }

    /// Number of quorums `materialize` would produce, saturating.
    pub fn quorum_count(&self) -> u128 {
        match &self.kind {
            Kind::Grid { side, lines } | Kind::Paths { side, r: lines } => {
                binomial(*side as u64, *lines as u64).saturating_pow(2)
            }
            Kind::Threshold { k, ell } => binomial(*k as u64, *ell as u64),
            Kind::Recursive { k, ell, h } => {
                let block = binomial(*k as u64, *ell as u64);
                let mut count = block;
                for _ in 1..*h {
                    count = block.saturating_mul(saturating_pow(count, *ell as u64));
                }
                count
            }
            Kind::Plane { lines } => lines.len() as u128,
            // every construction here has quorums of uniform size c
            Kind::Composed { outer, inner } => outer
                .quorum_count()
                .saturating_mul(saturating_pow(inner.quorum_count(), outer.params.c)),
        }
    }

    /// All quorums as an explicit system (straight-path quorums only for M-Path).
    pub fn materialize(&self, max_quorums: u128) -> Result<ExplicitQuorumSystem> {
        let count = self.quorum_count();
        if count > max_quorums {
            return Err(Error::size("quorum count", count, max_quorums));
        }
        match &self.kind {
            Kind::Grid { side, lines } | Kind::Paths { side, r: lines } => {
                let choices = combinations(*side, *lines);
                let mut quorums = Vec::with_capacity(choices.len() * choices.len());
                for rows in &choices {
                    for cols in &choices {
                        let mut q = ElementSet::empty(self.n);
                        for &i in rows {
                            for j in 0..*side {
                                q.insert(i * side + j);
                            }
                        }
                        for &j in cols {
                            for i in 0..*side {
                                q.insert(i * side + j);
                            }
                        }
                        quorums.push(q);
                    }
                }
                ExplicitQuorumSystem::new(self.n, quorums)
            }
            Kind::Threshold { k, ell } => {
                let quorums = combinations(*k, *ell)
                    .into_iter()
                    .map(|c| ElementSet::from_elements(*k, c))
                    .collect::<Result<Vec<_>>>()?;
                ExplicitQuorumSystem::new(*k, quorums)
            }
            Kind::Recursive { k, ell, h } => {
                let block =
                    threshold_unchecked(*k as u64, *ell as u64)?.materialize(max_quorums)?;
                let mut system = block.clone();
                for _ in 1..*h {
                    system = compose_explicit_with_cap(&block, &system, max_quorums)?;
                }
                Ok(system)
            }
            Kind::Plane { lines } => Ok(lines.clone()),
            Kind::Composed { outer, inner } => compose_explicit_with_cap(
                &outer.materialize(max_quorums)?,
                &inner.materialize(max_quorums)?,
                max_quorums,
            ),
        }
    }
}

fn sample_recursive(
    rng: &mut Rng,
    k: usize,
    ell: usize,
    h: u32,
    offset: usize,
    out: &mut ElementSet,
) {
    if h == 0 {
        out.insert(offset);
        return;
    }
    let child = k.pow(h - 1);
    for c in rng.subset(k, ell) {
        sample_recursive(rng, k, ell, h - 1, offset + c * child, out);
    }
}

fn grid_live(side: usize, g: usize, alive: &ElementSet) -> bool {
    let full_rows = (0..side)
        .filter(|&i| (0..side).all(|j| alive.contains(i * side + j)))
        .count();
    if full_rows < g {
        return false;
    }
    let full_cols = (0..side)
        .filter(|&j| (0..side).all(|i| alive.contains(i * side + j)))
        .count();
    full_cols >= g
}

impl LivePredicate for QuorumSystemHandle {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn is_live(&self, alive: &ElementSet) -> bool {
        self.live_unchecked(alive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::combinatorial_params;
    use crate::model::validate_explicit;

    fn mgrid(side: u64, b: u64) -> QuorumSystemHandle {
        build(&ConstructionSpec::MGrid { side, b }).unwrap()
    }

    #[test]
    fn mgrid_seven_by_seven() {
        let h = mgrid(7, 3);
        let p = h.params();
        assert_eq!((p.n, p.c, p.a_min, p.f), (49, 24, 6, 5));
        assert_eq!(p.b, 3);
        let mut rng = Rng::new(5);
        for _ in 0..200 {
            let q = h.sample_quorum(&mut rng);
            assert_eq!(q.len(), 24);
            let full_rows = (0..7)
                .filter(|&i| (0..7).all(|j| q.contains(i * 7 + j)))
                .count();
            let full_cols = (0..7)
                .filter(|&j| (0..7).all(|i| q.contains(i * 7 + j)))
                .count();
            assert_eq!((full_rows, full_cols), (2, 2));
        }
    }

    #[test]
    fn rt_depth_five() {
        let h = build(&ConstructionSpec::RT { k: 4, ell: 3, h: 5 }).unwrap();
        let p = h.params();
        assert_eq!(
            (p.n, p.c, p.i_min, p.a_min, p.b, p.f),
            (1024, 243, 32, 32, 15, 31)
        );
    }

    #[test]
    fn mpath_thirty_two() {
        let h = build(&ConstructionSpec::MPath { side: 32, b: 7 }).unwrap();
        let p = h.params();
        assert_eq!((p.a_min, p.i_min, p.b, p.f), (29, 16, 7, 28));
        assert!(p.i_min >= 15);
    }

    #[test]
    fn boost_matches_explicit_composition_spec() {
        let boost = build(&ConstructionSpec::BoostFPP { q: 3, b: 19 }).unwrap();
        let composed = build(&ConstructionSpec::Composed {
            outer: Box::new(ConstructionSpec::FPP { q: 3 }),
            inner: Box::new(ConstructionSpec::Threshold { k: 77, ell: 58 }),
        })
        .unwrap();
        assert_eq!(boost.params(), composed.params());
        let p = boost.params();
        assert_eq!(
            (p.n, p.c, p.i_min, p.a_min, p.b, p.f),
            (1001, 232, 39, 80, 19, 79)
        );
    }

    #[test]
    fn invalid_specs_rejected() {
        let bad = [
            ConstructionSpec::MGrid { side: 1, b: 0 },
            ConstructionSpec::MGrid { side: 7, b: 4 },
            ConstructionSpec::Threshold { k: 4, ell: 2 },
            ConstructionSpec::Threshold { k: 4, ell: 4 },
            ConstructionSpec::RT { k: 4, ell: 3, h: 0 },
            ConstructionSpec::MPath { side: 3, b: 5 },
            ConstructionSpec::MPath { side: 4, b: 3 },
        ];
        for spec in bad {
            assert!(matches!(build(&spec), Err(Error::Parameter(_))), "{spec:?}");
        }
        assert_eq!(
            build(&ConstructionSpec::FPP { q: 4 }).unwrap_err(),
            Error::UnsupportedOrder(4)
        );
        assert_eq!(
            build(&ConstructionSpec::BoostFPP { q: 9, b: 1 }).unwrap_err(),
            Error::UnsupportedOrder(9)
        );
    }

    #[test]
    fn full_universe_is_live() {
        let specs = [
            ConstructionSpec::MGrid { side: 5, b: 2 },
            ConstructionSpec::Threshold { k: 4, ell: 3 },
            ConstructionSpec::RT { k: 3, ell: 2, h: 3 },
            ConstructionSpec::FPP { q: 3 },
            ConstructionSpec::BoostFPP { q: 2, b: 1 },
            ConstructionSpec::MPath { side: 6, b: 2 },
        ];
        for spec in specs {
            let h = build(&spec).unwrap();
            assert!(h.live(&ElementSet::full(h.n())).unwrap(), "{spec:?}");
            assert!(!h.live(&ElementSet::empty(h.n())).unwrap(), "{spec:?}");
        }
    }

    #[test]
    fn threshold_below_quorum_size_is_dead() {
        let h = build(&ConstructionSpec::Threshold { k: 4, ell: 3 }).unwrap();
        let alive = ElementSet::from_elements(4, [0, 2]).unwrap();
        assert!(!h.live(&alive).unwrap());
        assert!(h.live(&ElementSet::empty(3)).is_err());
    }

    #[test]
    fn mgrid_one_row_one_column() {
        let h = mgrid(3, 0);
        // row 1 and column 2
        let alive = ElementSet::from_elements(9, [3, 4, 5, 2, 8]).unwrap();
        assert!(h.live(&alive).unwrap());
        let explicit = h.materialize(1000).unwrap();
        assert!(explicit.has_live_quorum(&alive));
        let mut row_only = alive.clone();
        row_only.remove(8);
        assert!(!h.live(&row_only).unwrap());
    }

    #[test]
    fn materialization_counts() {
        let t = build(&ConstructionSpec::Threshold { k: 4, ell: 3 }).unwrap();
        let sys = t.materialize(100).unwrap();
        assert_eq!(sys.len(), 4);
        assert!(sys.quorums().iter().all(|q| q.len() == 3));

        let g = mgrid(4, 1);
        assert_eq!(g.quorum_count(), 36);
        assert_eq!(g.materialize(100).unwrap().len(), 36);

        let f = build(&ConstructionSpec::FPP { q: 2 }).unwrap();
        let fano = f.materialize(100).unwrap();
        assert_eq!(fano, fpp_lines(2).unwrap());

        let rt = build(&ConstructionSpec::RT { k: 3, ell: 2, h: 3 }).unwrap();
        assert_eq!(rt.quorum_count(), 3 * 9 * 9 * 9);
        assert_eq!(rt.materialize(10_000).unwrap().len(), 2187);

        match g.materialize(35) {
            Err(Error::Size { actual, .. }) => assert_eq!(actual, 36),
            other => panic!("expected size error, got {other:?}"),
        }
    }

    #[test]
    fn analytic_params_match_brute_force() {
        let specs = [
            ConstructionSpec::MGrid { side: 2, b: 0 },
            ConstructionSpec::MGrid { side: 3, b: 0 },
            ConstructionSpec::MGrid { side: 4, b: 1 },
            ConstructionSpec::MGrid { side: 5, b: 2 },
            ConstructionSpec::MGrid { side: 5, b: 1 },
            ConstructionSpec::Threshold { k: 3, ell: 2 },
            ConstructionSpec::Threshold { k: 7, ell: 5 },
            ConstructionSpec::Threshold { k: 10, ell: 8 },
            ConstructionSpec::RT { k: 3, ell: 2, h: 2 },
            ConstructionSpec::RT { k: 4, ell: 3, h: 2 },
            ConstructionSpec::RT { k: 3, ell: 2, h: 3 },
            ConstructionSpec::FPP { q: 2 },
            ConstructionSpec::FPP { q: 3 },
            ConstructionSpec::BoostFPP { q: 2, b: 1 },
        ];
        for spec in specs {
            let h = build(&spec).unwrap();
            let sys = h.materialize(100_000).unwrap();
            assert!(validate_explicit(&sys).is_ok(), "{spec:?}");
            let brute = combinatorial_params(&sys).unwrap();
            let p = h.params();
            assert_eq!(
                (brute.c, brute.i_min, brute.a_min),
                (p.c, p.i_min, p.a_min),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn mpath_straight_subsystem_params() {
        for (side, b) in [(3u64, 0u64), (4, 1), (5, 0), (5, 1), (5, 2)] {
            let h = build(&ConstructionSpec::MPath { side, b }).unwrap();
            let sys = h.materialize(100_000).unwrap();
            let brute = combinatorial_params(&sys).unwrap();
            let r = ceil_sqrt(2 * b + 1);
            assert_eq!(brute.c, 2 * r * side - r * r);
            assert!(brute.i_min > 2 * b);
            assert_eq!(brute.a_min, side - r + 1);
        }
    }

    #[test]
    fn samples_are_live() {
        let specs = [
            ConstructionSpec::MGrid { side: 6, b: 2 },
            ConstructionSpec::RT { k: 4, ell: 3, h: 3 },
            ConstructionSpec::BoostFPP { q: 3, b: 2 },
            ConstructionSpec::MPath { side: 7, b: 3 },
            ConstructionSpec::Composed {
                outer: Box::new(ConstructionSpec::Threshold { k: 5, ell: 4 }),
                inner: Box::new(ConstructionSpec::FPP { q: 2 }),
            },
        ];
        for spec in specs {
            let h = build(&spec).unwrap();
            for t in 0..100 {
                let q = h.sample_quorum(&mut Rng::for_trial(1, t));
                assert_eq!(q.len() as u64, h.params().c, "{spec:?}");
                assert!(h.live(&q).unwrap(), "{spec:?}");
            }
        }
    }

    #[test]
    fn spec_json_encoding() {
        let spec: ConstructionSpec = serde_json::from_str(
            r#"{"Composed":{"outer":{"FPP":{"q":3}},"inner":{"Threshold":{"k":77,"ell":58}}}}"#,
        )
        .unwrap();
        assert_eq!(
            spec,
            ConstructionSpec::Composed {
                outer: Box::new(ConstructionSpec::FPP { q: 3 }),
                inner: Box::new(ConstructionSpec::Threshold { k: 77, ell: 58 }),
            }
        );
        assert_eq!(
            serde_json::to_string(&ConstructionSpec::MGrid { side: 32, b: 15 }).unwrap(),
            r#"{"MGrid":{"side":32,"b":15}}"#
        );
    }
}

//! Oracle-grade analysis of explicit quorum systems: combinatorial
//! parameters, masking checks, fairness and exact load.

mod hitting_set;
mod lp;

pub use hitting_set::minimum_transversal;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    masking_level_from, AccessStrategy, ElementSet, ExplicitQuorumSystem, SystemParams,
};

/// Limits under which the exact transversal search is attempted.
pub const TRANSVERSAL_MAX_N: usize = 30;
pub const TRANSVERSAL_MAX_QUORUMS: usize = 10_000;
/// Limits for the load LP.
pub const LP_MAX_QUORUMS: usize = 10_000;
pub const LP_MAX_N: usize = 1_000;
/// Largest universe on which resilience is checked by enumerating subsets.
pub const DEFINITIONAL_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CombinatorialParams {
    pub c: u64,
    pub i_min: u64,
    pub a_min: u64,
}

pub fn smallest_quorum(sys: &ExplicitQuorumSystem) -> u64 {
    sys.quorums().iter().map(|q| q.len()).min().unwrap_or(0) as u64
}

/// Smallest intersection over distinct pairs; a single-quorum system reports its quorum size.
pub fn min_intersection(sys: &ExplicitQuorumSystem) -> u64 {
    let qs = sys.quorums();
    if qs.len() == 1 {
        return qs[0].len() as u64;
    }
    let mut best = usize::MAX;
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            best = best.min(qs[i].intersection_len(&qs[j]));
            if best == 0 {
                return 0;
            }
        }
    }
    best as u64
}

/// An exact minimum transversal.
pub fn min_transversal(sys: &ExplicitQuorumSystem) -> Result<ElementSet> {
    if sys.n() > TRANSVERSAL_MAX_N && sys.len() > TRANSVERSAL_MAX_QUORUMS {
        return Err(Error::size(
            "quorum count for exact transversal search",
            sys.len() as u128,
            TRANSVERSAL_MAX_QUORUMS as u128,
        ));
    }
    Ok(minimum_transversal(sys.n(), sys.quorums()))
}

pub fn combinatorial_params(sys: &ExplicitQuorumSystem) -> Result<CombinatorialParams> {
    Ok(CombinatorialParams {
        c: smallest_quorum(sys),
        i_min: min_intersection(sys),
        a_min: min_transversal(sys)?.len() as u64,
    })
}

/// Largest `b` guaranteed by the transversal and intersection conditions;
/// negative when the system masks nothing.
pub fn masking_level(sys: &ExplicitQuorumSystem) -> Result<i64> {
    let p = combinatorial_params(sys)?;
    Ok(masking_level_from(p.i_min, p.a_min))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MaskingCheckMethod {
    /// Resilience checked over every subset of at most `b` elements.
    Definitional,
    /// Resilience inferred from `a_min >= b + 1` (n too large to enumerate).
    TransversalBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MaskingWitness {
    SmallIntersection {
        first: usize,
        second: usize,
        size: usize,
    },
    /// At most `b` crashes that hit every quorum.
    BlockingSet(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskingCheck {
    pub holds: bool,
    pub method: MaskingCheckMethod,
    pub witness: Option<MaskingWitness>,
}

/// Smallest set of crashes that hits every quorum, by enumerating subsets in
/// order of size. Only for `n <= DEFINITIONAL_MAX_N`.
pub fn smallest_blocking_set(sys: &ExplicitQuorumSystem) -> Result<ElementSet> {
    let n = sys.n();
    if n > DEFINITIONAL_MAX_N {
        return Err(Error::size(
            "universe for subset enumeration",
            n as u128,
            DEFINITIONAL_MAX_N as u128,
        ));
    }
    let mut best: Option<u64> = None;
    for mask in 0u64..1 << n {
        if best.is_some_and(|b| b.count_ones() <= mask.count_ones()) {
            continue;
        }
        let crashed = ElementSet::from_mask(n, mask);
        if sys.quorums().iter().all(|q| !q.is_disjoint(&crashed)) {
            best = Some(mask);
        }
    }
    Ok(ElementSet::from_mask(
        n,
        best.expect("the full universe blocks every quorum"),
    ))
}

/// Resilience: the largest `k` such that every `k` crashes leave some quorum
/// alive, found by subset enumeration.
pub fn resilience_exhaustive(sys: &ExplicitQuorumSystem) -> Result<u64> {
    Ok(smallest_blocking_set(sys)?.len() as u64 - 1)
}

/// Checks `b`-masking directly: every pairwise intersection has at least
/// `2b+1` elements and no `b` crashes disable the system.
pub fn check_masking(sys: &ExplicitQuorumSystem, b: u64) -> Result<MaskingCheck> {
    let need = (2 * b + 1) as usize;
    let qs = sys.quorums();
    let mut small = None;
    'outer: for i in 0..qs.len() {
        if qs[i].len() < need {
            small = Some((i, i, qs[i].len()));
            break;
        }
        for j in i + 1..qs.len() {
            let size = qs[i].intersection_len(&qs[j]);
            if size < need {
                small = Some((i, j, size));
                break 'outer;
            }
        }
    }

    let (method, blocking) = if sys.n() <= DEFINITIONAL_MAX_N {
        let smallest = smallest_blocking_set(sys)?;
        let blocking = (smallest.len() as u64 <= b).then(|| smallest.to_vec());
        (MaskingCheckMethod::Definitional, blocking)
    } else {
        let t = min_transversal(sys)?;
        let blocking = (t.len() as u64 <= b).then(|| t.to_vec());
        (MaskingCheckMethod::TransversalBound, blocking)
    };

    let witness = match (small, blocking) {
        (Some((first, second, size)), _) => Some(MaskingWitness::SmallIntersection {
            first,
            second,
            size,
        }),
        (None, Some(set)) => Some(MaskingWitness::BlockingSet(set)),
        (None, None) => None,
    };
    Ok(MaskingCheck {
        holds: witness.is_none(),
        method,
        witness,
    })
}

/// `Some((s, d))` when every quorum has size `s` and every element lies in `d` quorums.
pub fn is_fair(sys: &ExplicitQuorumSystem) -> Option<(usize, usize)> {
    let s = sys.quorums()[0].len();
    if sys.quorums().iter().any(|q| q.len() != s) {
        return None;
    }
    let mut degree = vec![0usize; sys.n()];
    for q in sys.quorums() {
        for u in q.iter() {
            degree[u] += 1;
        }
    }
    let d = degree[0];
    degree.iter().all(|&x| x == d).then_some((s, d))
}

/// Per-element loads induced by `w`, and their maximum.
pub fn induced_load(sys: &ExplicitQuorumSystem, w: &AccessStrategy) -> Result<(Vec<f64>, f64)> {
    if w.weights().len() != sys.len() {
        return Err(Error::param(format!(
            "strategy has {} weights for {} quorums",
            w.weights().len(),
            sys.len()
        )));
    }
    let mut loads = vec![0.0; sys.n()];
    for (q, &weight) in sys.quorums().iter().zip(w.weights()) {
        for u in q.iter() {
            loads[u] += weight;
        }
    }
    let max = loads.iter().copied().fold(0.0, f64::max);
    Ok((loads, max))
}

/// Optimal load by linear programming, with a strategy achieving it.
pub fn load_lp(sys: &ExplicitQuorumSystem) -> Result<(f64, AccessStrategy)> {
    if sys.is_empty() {
        return Err(Error::param("load of an empty system"));
    }
    if sys.len() > LP_MAX_QUORUMS {
        return Err(Error::size(
            "quorum count for load LP",
            sys.len() as u128,
            LP_MAX_QUORUMS as u128,
        ));
    }
    if sys.n() > LP_MAX_N {
        return Err(Error::size(
            "universe for load LP",
            sys.n() as u128,
            LP_MAX_N as u128,
        ));
    }
    let raw = lp::solve_load_lp(sys)?;
    let clamped: Vec<f64> = raw.iter().map(|w| w.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    let strategy = AccessStrategy::new(clamped.iter().map(|w| w / total).collect())?;
    let (_, load) = induced_load(sys, &strategy)?;
    Ok((load, strategy))
}

/// `c / n` for a fair system.
pub fn load_fair(sys: &ExplicitQuorumSystem) -> Result<f64> {
    match is_fair(sys) {
        Some((s, _)) => Ok(s as f64 / sys.n() as f64),
        None => Err(Error::Applicability(
            "c/n is the load only for fair systems".into(),
        )),
    }
}

/// `c / n` from parameters; the caller vouches for fairness.
pub fn load_fair_params(params: &SystemParams) -> f64 {
    params.c as f64 / params.n as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoadLowerBounds {
    /// `max((2b+1)/c, c/n)`
    pub general: f64,
    /// `sqrt((2b+1)/n)`
    pub sqrt_form: f64,
}

/// Load lower bounds for any `b`-masking system with `n` elements and smallest quorum `c`.
pub fn load_lower_bounds(n: u64, b: u64, c: u64) -> Result<LoadLowerBounds> {
    if c == 0 || c > n {
        return Err(Error::param(format!("need n >= c >= 1, got n={n}, c={c}")));
    }
    let span = (2 * b + 1) as f64;
    Ok(LoadLowerBounds {
        general: (span / c as f64).max(c as f64 / n as f64),
        sqrt_form: (span / n as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, fpp_lines, ConstructionSpec};

    fn materialized(spec: ConstructionSpec) -> ExplicitQuorumSystem {
        build(&spec).unwrap().materialize(100_000).unwrap()
    }

    #[test]
    fn params_of_small_systems() {
        let t43 = materialized(ConstructionSpec::Threshold { k: 4, ell: 3 });
        assert_eq!(
            combinatorial_params(&t43).unwrap(),
            CombinatorialParams {
                c: 3,
                i_min: 2,
                a_min: 2
            }
        );
        let fano = fpp_lines(2).unwrap();
        assert_eq!(
            combinatorial_params(&fano).unwrap(),
            CombinatorialParams {
                c: 3,
                i_min: 1,
                a_min: 3
            }
        );
        let grid = materialized(ConstructionSpec::MGrid { side: 2, b: 0 });
        let p = combinatorial_params(&grid).unwrap();
        assert_eq!((p.c, p.a_min), (3, 2));
        // every pair of "row plus column" quorums on a 2x2 grid shares two cells
        assert_eq!(p.i_min, 2);
        let single = ExplicitQuorumSystem::from_lists(3, &[&[0, 2]]).unwrap();
        assert_eq!(min_intersection(&single), 2);
    }

    #[test]
    fn masking_levels() {
        assert_eq!(masking_level(&fpp_lines(2).unwrap()).unwrap(), 0);
        assert_eq!(
            masking_level(&materialized(ConstructionSpec::RT { k: 4, ell: 3, h: 2 })).unwrap(),
            1
        );
        assert_eq!(
            masking_level(&materialized(ConstructionSpec::Threshold { k: 5, ell: 4 })).unwrap(),
            1
        );
    }

    #[test]
    fn definitional_masking_checks() {
        let t43 = materialized(ConstructionSpec::Threshold { k: 4, ell: 3 });
        let zero = check_masking(&t43, 0).unwrap();
        assert!(zero.holds);
        assert_eq!(zero.method, MaskingCheckMethod::Definitional);
        let one = check_masking(&t43, 1).unwrap();
        assert!(!one.holds);
        assert!(matches!(
            one.witness,
            Some(MaskingWitness::SmallIntersection { size: 2, .. })
        ));

        let grid = materialized(ConstructionSpec::MGrid { side: 4, b: 1 });
        assert!(check_masking(&grid, 1).unwrap().holds);

        let fano = check_masking(&fpp_lines(2).unwrap(), 1).unwrap();
        assert!(!fano.holds);
        assert!(matches!(
            fano.witness,
            Some(MaskingWitness::SmallIntersection { size: 1, .. })
        ));
    }

    #[test]
    fn blocking_set_witness() {
        // intersections are large, but element 0 alone blocks everything
        let sys = ExplicitQuorumSystem::from_lists(
            6,
            &[
                &[0, 1, 2, 3, 4],
                &[0, 1, 2, 3, 5],
                &[0, 1, 2, 4, 5],
                &[0, 1, 3, 4, 5],
            ],
        )
        .unwrap();
        let check = check_masking(&sys, 1).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness, Some(MaskingWitness::BlockingSet(vec![0])));
        assert_eq!(resilience_exhaustive(&sys).unwrap(), 0);
    }

    #[test]
    fn fairness() {
        assert_eq!(is_fair(&fpp_lines(2).unwrap()), Some((3, 3)));
        assert_eq!(
            is_fair(&materialized(ConstructionSpec::Threshold { k: 4, ell: 3 })),
            Some((3, 3))
        );
        let path = ExplicitQuorumSystem::from_lists(3, &[&[0, 1], &[1, 2]]).unwrap();
        assert_eq!(is_fair(&path), None);
        assert!(matches!(load_fair(&path), Err(Error::Applicability(_))));
        assert!((load_fair(&fpp_lines(2).unwrap()).unwrap() - 3.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn lp_loads() {
        let (fano, w) = load_lp(&fpp_lines(2).unwrap()).unwrap();
        assert!((fano - 3.0 / 7.0).abs() <= 1e-9);
        assert_eq!(w.weights().len(), 7);

        let single = ExplicitQuorumSystem::from_lists(1, &[&[0]]).unwrap();
        assert!((load_lp(&single).unwrap().0 - 1.0).abs() <= 1e-9);

        let t32 = materialized(ConstructionSpec::Threshold { k: 3, ell: 2 });
        assert!((load_lp(&t32).unwrap().0 - 2.0 / 3.0).abs() <= 1e-9);

        // a star-like system: element 1 is in every quorum
        let star = ExplicitQuorumSystem::from_lists(3, &[&[0, 1], &[1, 2]]).unwrap();
        assert!((load_lp(&star).unwrap().0 - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn lp_strategy_witnesses_value() {
        let sys = materialized(ConstructionSpec::MGrid { side: 4, b: 1 });
        let (load, w) = load_lp(&sys).unwrap();
        let (_, induced) = induced_load(&sys, &w).unwrap();
        assert!((load - induced).abs() <= 1e-9);
        assert!((load - 12.0 / 16.0).abs() <= 1e-6);
    }

    #[test]
    fn induced_loads() {
        let fano = fpp_lines(2).unwrap();
        let (loads, max) = induced_load(&fano, &AccessStrategy::uniform(7).unwrap()).unwrap();
        assert!(loads.iter().all(|l| (l - 3.0 / 7.0).abs() < 1e-12));
        assert!((max - 3.0 / 7.0).abs() < 1e-12);

        let (loads, max) = induced_load(&fano, &AccessStrategy::point_mass(7, 2).unwrap()).unwrap();
        for (u, l) in loads.iter().enumerate() {
            assert_eq!(
                *l,
                if fano.quorums()[2].contains(u) {
                    1.0
                } else {
                    0.0
                }
            );
        }
        assert_eq!(max, 1.0);

        let t32 = materialized(ConstructionSpec::Threshold { k: 3, ell: 2 });
        let (loads, _) = induced_load(&t32, &AccessStrategy::uniform(3).unwrap()).unwrap();
        assert!(loads.iter().all(|l| (l - 2.0 / 3.0).abs() < 1e-12));

        assert!(induced_load(&fano, &AccessStrategy::uniform(3).unwrap()).is_err());
    }

    #[test]
    fn lower_bounds() {
        let lb = load_lower_bounds(1024, 15, 243).unwrap();
        assert!((lb.general - 243.0 / 1024.0).abs() < 1e-15);
        assert!((lb.general - 0.2373).abs() < 1e-4);
        assert!((lb.sqrt_form - (31.0f64 / 1024.0).sqrt()).abs() < 1e-15);

        let lb = load_lower_bounds(49, 0, 7).unwrap();
        assert!((lb.general - 1.0 / 7.0).abs() < 1e-15);
        assert!((lb.sqrt_form - 1.0 / 7.0).abs() < 1e-15);

        // c = sqrt((2b+1) n): n = 75, b = 1 gives c = 15
        let lb = load_lower_bounds(75, 1, 15).unwrap();
        assert!((lb.general - lb.sqrt_form).abs() < 1e-15);

        assert!(load_lower_bounds(5, 0, 6).is_err());
        assert!(load_lower_bounds(5, 0, 0).is_err());
    }
}

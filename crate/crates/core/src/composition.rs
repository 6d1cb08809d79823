//! Composition of an outer system over copies of an inner system.

use crate::combinatorics::saturating_pow;
use crate::error::{Error, Result};
use crate::model::{ElementSet, ExplicitQuorumSystem, SystemParams};

/// Default cap on the number of quorums `compose_explicit` will generate.
pub const DEFAULT_COMPOSE_CAP: u128 = 1_000_000;

/// Number of quorums in `outer ∘ inner` before deduplication:
/// the sum over outer quorums `S` of `|inner|^|S|`.
pub fn composed_quorum_count(outer: &ExplicitQuorumSystem, inner: &ExplicitQuorumSystem) -> u128 {
    outer
        .quorums()
        .iter()
        .map(|s| saturating_pow(inner.len() as u128, s.len() as u64))
        .fold(0u128, |acc, x| acc.saturating_add(x))
}

pub fn compose_explicit(
    outer: &ExplicitQuorumSystem,
    inner: &ExplicitQuorumSystem,
) -> Result<ExplicitQuorumSystem> {
    compose_explicit_with_cap(outer, inner, DEFAULT_COMPOSE_CAP)
}

/// Replaces every element `i` of each outer quorum by a quorum of the `i`-th
/// copy of `inner`, in all possible ways. Copy `i` occupies the block
/// `[i * n_inner, (i + 1) * n_inner)`.
pub fn compose_explicit_with_cap(
    outer: &ExplicitQuorumSystem,
    inner: &ExplicitQuorumSystem,
    cap: u128,
) -> Result<ExplicitQuorumSystem> {
    let count = composed_quorum_count(outer, inner);
    if count > cap {
        return Err(Error::size("composed quorum count", count, cap));
    }
    let block = inner.n();
    let n = outer
        .n()
        .checked_mul(block)
        .ok_or_else(|| Error::param("composed universe overflows"))?;
    let shifted: Vec<Vec<ElementSet>> = (0..outer.n())
        .map(|i| {
            inner
                .quorums()
                .iter()
                .map(|r| r.embed(n, i * block))
                .collect()
        })
        .collect();

    let mut quorums = Vec::with_capacity(count as usize);
    for s in outer.quorums() {
        let members = s.to_vec();
        let mut choice = vec![0usize; members.len()];
        loop {
            let mut q = ElementSet::empty(n);
            for (slot, &i) in members.iter().enumerate() {
                q.union_with(&shifted[i][choice[slot]]);
            }
            quorums.push(q);
            // odometer over the inner-quorum choice for each member
            let mut slot = 0;
            while slot < choice.len() {
                choice[slot] += 1;
                if choice[slot] < inner.len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
            if slot == choice.len() {
                break;
            }
        }
    }
    ExplicitQuorumSystem::new_dedup(n, quorums)
}

/// Parameter algebra of composition: sizes, intersections, transversals and
/// load all multiply; `b` and `f` are re-derived.
pub fn compose_params(outer: &SystemParams, inner: &SystemParams) -> SystemParams {
    SystemParams::derive(
        outer.n * inner.n,
        outer.c * inner.c,
        outer.i_min * inner.i_min,
        outer.a_min * inner.a_min,
        outer.load * inner.load,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{combinatorial_params, is_fair};
    use crate::constructions::{build, fpp_lines, ConstructionSpec};
    use crate::model::validate_explicit;

    fn threshold(k: u64, ell: u64) -> ExplicitQuorumSystem {
        build(&ConstructionSpec::Threshold { k, ell })
            .unwrap()
            .materialize(1_000)
            .unwrap()
    }

    #[test]
    fn majority_over_majority() {
        let t = threshold(3, 2);
        let composed = compose_explicit(&t, &t).unwrap();
        assert_eq!(composed.n(), 9);
        assert_eq!(composed.len(), 27);
        assert!(validate_explicit(&composed).is_ok());
        assert_eq!(combinatorial_params(&composed).unwrap().c, 4);
    }

    #[test]
    fn fano_over_majority() {
        let composed = compose_explicit(&fpp_lines(2).unwrap(), &threshold(3, 2)).unwrap();
        assert_eq!(composed.n(), 21);
        assert_eq!(composed.len(), 189);
        let p = combinatorial_params(&composed).unwrap();
        assert_eq!((p.c, p.i_min, p.a_min), (6, 1, 6));
        assert!(is_fair(&composed).is_some());
    }

    #[test]
    fn single_element_inner_is_identity() {
        let fano = fpp_lines(2).unwrap();
        let unit = ExplicitQuorumSystem::from_lists(1, &[&[0]]).unwrap();
        assert_eq!(compose_explicit(&fano, &unit).unwrap(), fano);
        assert_eq!(compose_explicit(&unit, &fano).unwrap(), fano);
    }

    #[test]
    fn cap_reports_exact_count() {
        let t = threshold(4, 3);
        match compose_explicit_with_cap(&t, &t, 100) {
            Err(Error::Size { actual, .. }) => assert_eq!(actual, 4 * 64),
            other => panic!("expected size error, got {other:?}"),
        }
    }

    #[test]
    fn params_algebra() {
        let t43 = *build(&ConstructionSpec::Threshold { k: 4, ell: 3 })
            .unwrap()
            .params();
        let squared = compose_params(&t43, &t43);
        let rt = *build(&ConstructionSpec::RT { k: 4, ell: 3, h: 2 })
            .unwrap()
            .params();
        assert_eq!(
            (
                squared.n,
                squared.c,
                squared.i_min,
                squared.a_min,
                squared.b,
                squared.f
            ),
            (16, 9, 4, 4, 1, 3)
        );
        assert_eq!(
            (
                squared.n,
                squared.c,
                squared.i_min,
                squared.a_min,
                squared.b
            ),
            (rt.n, rt.c, rt.i_min, rt.a_min, rt.b)
        );
        assert!((squared.load - rt.load).abs() < 1e-15);

        let plane = *build(&ConstructionSpec::FPP { q: 3 }).unwrap().params();
        let block = *build(&ConstructionSpec::Threshold { k: 77, ell: 58 })
            .unwrap()
            .params();
        let boost = compose_params(&plane, &block);
        assert_eq!(
            (boost.n, boost.c, boost.i_min, boost.a_min, boost.f),
            (1001, 232, 39, 80, 79)
        );

        assert_eq!(compose_params(&plane, &SystemParams::unit()), plane);
        assert_eq!(compose_params(&SystemParams::unit(), &plane), plane);
    }
}

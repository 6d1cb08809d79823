//! Universe, element sets, explicit quorum systems, access strategies and
//! the counter-based random stream shared by the rest of the crate.

use std::convert::Infallible;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for floating-point probability comparisons.
pub const TOLERANCE: f64 = 1e-9;

/// A universe of `n` servers, identified as `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Universe {
    n: usize,
}

impl Universe {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("universe must contain at least one element"));
        }
        Ok(Universe { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// A subset of a fixed universe, stored as a bitmap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut set = ElementSet {
            n,
            words: vec![u64::MAX; word_count(n)],
        };
        set.trim();
        set
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = ElementSet::empty(n);
        for e in elements {
            if e >= n {
                return Err(Error::param(format!(
                    "element {e} is outside the universe of size {n}"
                )));
            }
            set.insert(e);
        }
        Ok(set)
    }

    /// Builds a set over a universe of at most 64 elements from the low bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64, got {n}");
        let mut set = ElementSet::empty(n);
        if n > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    /// Overwrites the contents with the low bits of `mask` (n <= 64).
    pub fn set_mask(&mut self, mask: u64) {
        debug_assert!(self.n <= 64);
        if self.n > 0 {
            self.words[0] = mask;
            self.trim();
        }
    }

    /// Low 64 bits of the bitmap.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.n && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(
            e < self.n,
            "element {e} outside universe of size {}",
            self.n
        );
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        if e < self.n {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    fn check_same(&self, other: &ElementSet) {
        assert_eq!(self.n, other.n, "element sets over different universes");
    }

    fn zip_with(&self, other: &ElementSet, f: impl Fn(u64, u64) -> u64) -> ElementSet {
        self.check_same(other);
        ElementSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> ElementSet {
        let mut out = ElementSet {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.check_same(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.check_same(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.check_same(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `len` elements starting at `start`, renumbered from zero.
    pub fn slice(&self, start: usize, len: usize) -> ElementSet {
        assert!(start + len <= self.n);
        let mut out = ElementSet::empty(len);
        for i in 0..len {
            if self.contains(start + i) {
                out.insert(i);
            }
        }
        out
    }

    /// Places `self` into a universe of size `n` at offset `start`.
    pub fn embed(&self, n: usize, start: usize) -> ElementSet {
        assert!(start + self.n <= n);
        let mut out = ElementSet::empty(n);
        for e in self.iter() {
            out.insert(start + e);
        }
        out
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet(n={}, ", self.n)?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}

/// A list of quorums over a universe; the representation used by every
/// brute-force oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitQuorumSystem {
    universe: Universe,
    quorums: Vec<ElementSet>,
}

impl ExplicitQuorumSystem {
    /// Rejects empty quorums, universe mismatches and duplicate quorums.
    /// Pairwise intersection is reported by [`validate_explicit`], not enforced here.
    pub fn new(n: usize, quorums: Vec<ElementSet>) -> Result<Self> {
        let universe = Universe::new(n)?;
        if quorums.is_empty() {
            return Err(Error::param("a quorum system needs at least one quorum"));
        }
        for (i, q) in quorums.iter().enumerate() {
            if q.universe_size() != n {
                return Err(Error::param(format!(
                    "quorum {i} is over a universe of size {}, expected {n}",
                    q.universe_size()
                )));
            }
            if q.is_empty() {
                return Err(Error::param(format!("quorum {i} is empty")));
            }
        }
        if let Some((i, j)) = first_duplicate(&quorums) {
            return Err(Error::param(format!("quorums {i} and {j} are identical")));
        }
        Ok(ExplicitQuorumSystem { universe, quorums })
    }

    pub fn from_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        let quorums = lists
            .iter()
            .map(|l| ElementSet::from_elements(n, l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, quorums)
    }

    /// Builds a system after dropping repeated quorums (first occurrence kept).
    pub fn new_dedup(n: usize, quorums: Vec<ElementSet>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(quorums.len());
        let quorums = quorums
            .into_iter()
            .filter(|q| seen.insert(q.clone()))
            .collect();
        Self::new(n, quorums)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.n
    }

    pub fn quorums(&self) -> &[ElementSet] {
        &self.quorums
    }

    pub fn len(&self) -> usize {
        self.quorums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quorums.is_empty()
    }

    /// True iff some quorum is entirely contained in `alive`.
    pub fn has_live_quorum(&self, alive: &ElementSet) -> bool {
        self.quorums.iter().any(|q| q.is_subset(alive))
    }
}

fn first_duplicate(quorums: &[ElementSet]) -> Option<(usize, usize)> {
    let mut seen = std::collections::HashMap::with_capacity(quorums.len());
    for (j, q) in quorums.iter().enumerate() {
        if let Some(&i) = seen.get(q) {
            return Some((i, j));
        }
        seen.insert(q, j);
    }
    None
}

/// A problem found by [`validate_explicit`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    Disjoint { first: usize, second: usize },
    Duplicate { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that quorums are distinct and pairwise intersecting.
pub fn validate_explicit(sys: &ExplicitQuorumSystem) -> ValidationReport {
    let qs = sys.quorums();
    let mut violations = Vec::new();
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            if qs[i] == qs[j] {
                violations.push(Violation::Duplicate {
                    first: i,
                    second: j,
                });
            } else if qs[i].is_disjoint(&qs[j]) {
                violations.push(Violation::Disjoint {
                    first: i,
                    second: j,
                });
            }
        }
    }
    ValidationReport { violations }
}

/// A probability distribution over the quorums of an explicit system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccessStrategy {
    weights: Vec<f64>,
}

impl AccessStrategy {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::param("strategy needs at least one weight"));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::param(format!("invalid strategy weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::param(format!(
                "strategy weights sum to {total}, expected 1"
            )));
        }
        Ok(AccessStrategy { weights })
    }

    pub fn uniform(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::param("strategy needs at least one weight"));
        }
        Ok(AccessStrategy {
            weights: vec![1.0 / count as f64; count],
        })
    }

    /// All mass on quorum `index`.
    pub fn point_mass(count: usize, index: usize) -> Result<Self> {
        if index >= count {
            return Err(Error::param(format!(
                "quorum index {index} out of range for {count} quorums"
            )));
        }
        let mut weights = vec![0.0; count];
        weights[index] = 1.0;
        Ok(AccessStrategy { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Combinatorial measures of a quorum system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub n: u64,
    /// Size of the smallest quorum.
    pub c: u64,
    /// Size of the smallest pairwise intersection.
    pub i_min: u64,
    /// Size of the smallest transversal.
    pub a_min: u64,
    /// Masking level; negative when the system masks no failures at all.
    pub b: i64,
    /// Resilience, `a_min - 1`.
    pub f: u64,
    pub load: f64,
}

impl SystemParams {
    /// Fills in `b` and `f` from the other measures.
    pub fn derive(n: u64, c: u64, i_min: u64, a_min: u64, load: f64) -> Self {
        SystemParams {
            n,
            c,
            i_min,
            a_min,
            b: masking_level_from(i_min, a_min),
            f: a_min.saturating_sub(1),
            load,
        }
    }

    /// The one-element system, neutral for composition.
    pub fn unit() -> Self {
        SystemParams::derive(1, 1, 1, 1, 1.0)
    }
}

/// `min(a_min - 1, floor((i_min - 1) / 2))`.
pub fn masking_level_from(i_min: u64, a_min: u64) -> i64 {
    let by_transversal = a_min as i64 - 1;
    let by_intersection = (i_min as i64 - 1).div_euclid(2);
    by_transversal.min(by_intersection)
}

/// Counter-based random stream: the draws for trial `t` depend only on `(seed, t)`.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    trial: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(trial);
        Rng { seed, trial, inner }
    }

    pub fn new(seed: u64) -> Self {
        Self::for_trial(seed, 0)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trial(&self) -> u64 {
        self.trial
    }

    /// Uniform draw from `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.random()
    }

    /// Uniformly random `amount`-subset of `0..length`, in increasing order.
    pub fn subset(&mut self, length: usize, amount: usize) -> Vec<usize> {
        let mut v = rand::seq::index::sample(&mut self.inner, length, amount).into_vec();
        v.sort_unstable();
        v
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.inner.random_range(0..bound)
    }
}

impl rand::TryRng for Rng {
    type Error = Infallible;

    fn try_next_u32(&mut self) -> std::result::Result<u32, Infallible> {
        self.inner.try_next_u32()
    }

    fn try_next_u64(&mut self) -> std::result::Result<u64, Infallible> {
        self.inner.try_next_u64()
    }

    fn try_fill_bytes(&mut self, dst: &mut [u8]) -> std::result::Result<(), Infallible> {
        self.inner.try_fill_bytes(dst)
    }
}

pub(crate) fn check_probability(p: f64, name: &str) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(format!("{name} = {p} is not a probability")))
    }
}

/// Each of the `n` elements crashes independently with probability `p`.
pub fn sample_crash_set(n: usize, p: f64, rng: &mut Rng) -> Result<ElementSet> {
    check_probability(p, "p")?;
    let mut set = ElementSet::empty(n);
    fill_crash_set(&mut set, p, rng);
    Ok(set)
}

pub(crate) fn fill_crash_set(set: &mut ElementSet, p: f64, rng: &mut Rng) {
    for w in set.words.iter_mut() {
        *w = 0;
    }
    for e in 0..set.n {
        if rng.unit() < p {
            set.words[e / 64] |= 1 << (e % 64);
        }
    }
}

/// Anything that can decide whether an alive-set still contains a full quorum.
pub trait LivePredicate: Sync {
    fn universe_size(&self) -> usize;
    fn is_live(&self, alive: &ElementSet) -> bool;
}

impl LivePredicate for ExplicitQuorumSystem {
    fn universe_size(&self) -> usize {
        self.n()
    }

    fn is_live(&self, alive: &ElementSet) -> bool {
        self.has_live_quorum(alive)
    }
}

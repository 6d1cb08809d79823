//! Exact minimum hitting set (smallest transversal) by branch and bound.
//!
//! Branching picks the unhit quorum with the fewest allowed elements and
//! tries each of its elements in turn, forbidding the ones already tried so
//! no subset is explored twice. A greedy cover gives the first upper bound
//! and a greedy packing of pairwise-disjoint unhit quorums the lower bound.

use crate::model::ElementSet;

type Bits = Vec<u64>;

fn bits_of(set: &ElementSet, words: usize) -> Bits {
    let mut b = vec![0u64; words];
    for e in set.iter() {
        b[e / 64] |= 1 << (e % 64);
    }
    b
}

fn meets(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn allowed_count(q: &[u64], forbidden: &[u64]) -> u32 {
    q.iter()
        .zip(forbidden)
        .map(|(x, f)| (x & !f).count_ones())
        .sum()
}

struct Search<'a> {
    quorums: &'a [Bits],
    words: usize,
    best_size: usize,
    best: Bits,
}

impl Search<'_> {
    fn unhit<'b>(&'b self, chosen: &'b [u64]) -> impl Iterator<Item = &'b Bits> + 'b {
        self.quorums.iter().filter(move |q| !meets(q, chosen))
    }

    fn packing_bound(&self, chosen: &[u64], forbidden: &[u64]) -> Option<usize> {
        let mut used = vec![0u64; self.words];
        let mut bound = 0;
        for q in self.unhit(chosen) {
            let allowed: Bits = q.iter().zip(forbidden).map(|(x, f)| x & !f).collect();
            if allowed.iter().all(|&w| w == 0) {
                return None;
            }
            if !meets(&allowed, &used) {
                for (u, a) in used.iter_mut().zip(&allowed) {
                    *u |= a;
                }
                bound += 1;
            }
        }
        Some(bound)
    }

    fn run(&mut self, chosen: &mut Bits, forbidden: &mut Bits, depth: usize) {
        let Some(bound) = self.packing_bound(chosen, forbidden) else {
            return;
        };
        if bound == 0 {
            if depth < self.best_size {
                self.best_size = depth;
                self.best = chosen.clone();
            }
            return;
        }
        if depth + bound >= self.best_size {
            return;
        }
        let pivot = self
            .unhit(chosen)
            .min_by_key(|q| allowed_count(q, forbidden))
            .cloned()
            .expect("bound > 0 implies an unhit quorum");
        let mut candidates: Vec<usize> = (0..self.words * 64)
            .filter(|&e| {
                pivot[e / 64] >> (e % 64) & 1 == 1 && forbidden[e / 64] >> (e % 64) & 1 == 0
            })
            .collect();
        // most frequent among unhit quorums first
        let degree = |e: usize| {
            self.unhit(chosen)
                .filter(|q| q[e / 64] >> (e % 64) & 1 == 1)
                .count()
        };
        let mut keyed: Vec<(usize, usize)> = candidates.iter().map(|&e| (degree(e), e)).collect();
        keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        candidates = keyed.into_iter().map(|(_, e)| e).collect();

        let saved = forbidden.clone();
        for e in candidates {
            chosen[e / 64] |= 1 << (e % 64);
            self.run(chosen, forbidden, depth + 1);
            chosen[e / 64] &= !(1 << (e % 64));
            forbidden[e / 64] |= 1 << (e % 64);
        }
        *forbidden = saved;
    }
}

fn greedy_cover(quorums: &[Bits], words: usize, n: usize) -> Bits {
    let mut chosen = vec![0u64; words];
    loop {
        let open: Vec<&Bits> = quorums.iter().filter(|q| !meets(q, &chosen)).collect();
        if open.is_empty() {
            return chosen;
        }
        let best = (0..n)
            .max_by_key(|&e| {
                let hits = open
                    .iter()
                    .filter(|q| q[e / 64] >> (e % 64) & 1 == 1)
                    .count();
                (hits, std::cmp::Reverse(e))
            })
            .expect("non-empty universe");
        chosen[best / 64] |= 1 << (best % 64);
    }
}

/// A smallest set meeting every quorum.
pub fn minimum_transversal(n: usize, quorums: &[ElementSet]) -> ElementSet {
    let words = n.div_ceil(64);
    let bits: Vec<Bits> = quorums.iter().map(|q| bits_of(q, words)).collect();
    let greedy = greedy_cover(&bits, words, n);
    let greedy_size = greedy.iter().map(|w| w.count_ones() as usize).sum();
    let mut search = Search {
        quorums: &bits,
        words,
        best_size: greedy_size,
        best: greedy,
    };
    let mut chosen = vec![0u64; words];
    let mut forbidden = vec![0u64; words];
    search.run(&mut chosen, &mut forbidden, 0);
    let elements = (0..n).filter(|&e| search.best[e / 64] >> (e % 64) & 1 == 1);
    ElementSet::from_elements(n, elements).expect("elements lie in the universe")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Rng;

    fn brute_force(n: usize, quorums: &[ElementSet]) -> usize {
        (0u64..1 << n)
            .filter(|&m| {
                let t = ElementSet::from_mask(n, m);
                quorums.iter().all(|q| !q.is_disjoint(&t))
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn matches_exhaustive_search_on_random_families() {
        for t in 0..200 {
            let mut rng = Rng::for_trial(99, t);
            let n = 3 + rng.below(10);
            let count = 1 + rng.below(12);
            let quorums: Vec<ElementSet> = (0..count)
                .map(|_| {
                    let size = 1 + rng.below(n);
                    ElementSet::from_elements(n, rng.subset(n, size)).unwrap()
                })
                .collect();
            let found = minimum_transversal(n, &quorums);
            assert!(quorums.iter().all(|q| !q.is_disjoint(&found)));
            assert_eq!(found.len(), brute_force(n, &quorums), "trial {t}");
        }
    }
}

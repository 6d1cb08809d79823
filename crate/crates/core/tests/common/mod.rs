//! Independent oracles used by the integration tests.

#![allow(dead_code)]

use maskquorum::paths::{Orientation, TriGrid};
use maskquorum::ElementSet;

/// Every simple path through alive vertices from the source side to the
/// first sink-side vertex it meets, as a vertex bitmask.
pub fn crossing_paths(grid: &TriGrid, alive: &ElementSet, o: Orientation) -> Vec<u64> {
    fn extend(
        grid: &TriGrid,
        alive: &ElementSet,
        o: Orientation,
        v: usize,
        mask: u64,
        out: &mut Vec<u64>,
    ) {
        if grid.is_sink(v, o) {
            out.push(mask);
            return;
        }
        for w in grid.neighbors(v) {
            if alive.contains(w) && mask >> w & 1 == 0 {
                extend(grid, alive, o, w, mask | 1 << w, out);
            }
        }
    }
    let mut out = Vec::new();
    for s in grid.source_side(o) {
        if alive.contains(s) {
            extend(grid, alive, o, s, 1 << s, &mut out);
        }
    }
    out
}

/// Largest number of pairwise vertex-disjoint crossing paths, by exhaustive
/// search over the explicit path list.
pub fn path_packing(grid: &TriGrid, alive: &ElementSet, o: Orientation) -> usize {
    fn best(paths: &[u64], start: usize, used: u64) -> usize {
        let mut top = 0;
        for (i, &p) in paths.iter().enumerate().skip(start) {
            if p & used == 0 {
                top = top.max(1 + best(paths, i + 1, used | p));
            }
        }
        top
    }
    let mut paths = crossing_paths(grid, alive, o);
    // only minimal paths matter: any path containing another can be swapped for it
    paths.sort_by_key(|p| p.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for p in paths {
        if !minimal.iter().any(|&m| m & !p == 0) {
            minimal.push(p);
        }
    }
    best(&minimal, 0, 0)
}

/// Brute-force liveness by explicit search: does the alive set contain
/// `r` disjoint left-right and `r` disjoint top-bottom paths?
pub fn mpath_live_oracle(side: usize, r: usize, alive: &ElementSet) -> bool {
    let grid = TriGrid::new(side).unwrap();
    path_packing(&grid, alive, Orientation::LR) >= r
        && path_packing(&grid, alive, Orientation::TB) >= r
}

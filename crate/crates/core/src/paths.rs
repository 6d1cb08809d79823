//! Triangulated grid and vertex-disjoint open path counting.
//!
//! Vertex `(i, j)` (row `i`, column `j`, 0-based) is element `i * side + j`.
//! It is adjacent to `(i, j±1)`, `(i±1, j)`, `(i-1, j+1)` and `(i+1, j-1)`.
//! Left-right paths run from column 0 to column `side - 1`; top-bottom paths
//! from row 0 to row `side - 1`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    LR,
    TB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriGrid {
    side: usize,
}

const OFFSETS: [(isize, isize); 6] = [(0, 1), (0, -1), (1, 0), (-1, 0), (-1, 1), (1, -1)];

impl TriGrid {
    pub fn new(side: usize) -> Result<Self> {
        if side == 0 {
            return Err(Error::param("grid side must be positive"));
        }
        Ok(TriGrid { side })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn vertex_count(&self) -> usize {
        self.side * self.side
    }

    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.side + col
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (i, j) = ((v / self.side) as isize, (v % self.side) as isize);
        let s = self.side as isize;
        OFFSETS.iter().filter_map(move |&(di, dj)| {
            let (a, b) = (i + di, j + dj);
            (a >= 0 && a < s && b >= 0 && b < s).then(|| (a * s + b) as usize)
        })
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).any(|w| w == v)
    }

    /// Vertices on the side where paths of orientation `o` start.
    pub fn source_side(&self, o: Orientation) -> Vec<usize> {
        (0..self.side)
            .map(|t| match o {
                Orientation::LR => self.index(t, 0),
                Orientation::TB => self.index(0, t),
            })
            .collect()
    }

    pub fn is_sink(&self, v: usize, o: Orientation) -> bool {
        match o {
            Orientation::LR => v % self.side == self.side - 1,
            Orientation::TB => v / self.side == self.side - 1,
        }
    }

    pub fn is_source(&self, v: usize, o: Orientation) -> bool {
        match o {
            Orientation::LR => v.is_multiple_of(self.side),
            Orientation::TB => v / self.side == 0,
        }
    }
}

fn check_universe(grid: &TriGrid, alive: &ElementSet) -> Result<()> {
    if alive.universe_size() != grid.vertex_count() {
        return Err(Error::param(format!(
            "alive set is over {} elements, grid has {}",
            alive.universe_size(),
            grid.vertex_count()
        )));
    }
    Ok(())
}

/// Maximum number of pairwise vertex-disjoint open paths across the grid in
/// orientation `o`.
pub fn max_disjoint_paths(grid: &TriGrid, alive: &ElementSet, o: Orientation) -> Result<usize> {
    check_universe(grid, alive)?;
    Ok(disjoint_paths_up_to(grid, alive, o, usize::MAX))
}

/// True iff at least `r` disjoint open paths exist in both orientations.
pub fn mpath_live(side: usize, r: usize, alive: &ElementSet) -> Result<bool> {
    if r == 0 || r > side {
        return Err(Error::param(format!(
            "need 1 <= r <= side, got r={r}, side={side}"
        )));
    }
    check_universe(&TriGrid::new(side)?, alive)?;
    Ok(mpath_live_unchecked(side, r, alive))
}

pub(crate) fn mpath_live_unchecked(side: usize, r: usize, alive: &ElementSet) -> bool {
    let grid = TriGrid { side };
    if r == 1 {
        return has_open_path(&grid, alive, Orientation::LR)
            && has_open_path(&grid, alive, Orientation::TB);
    }
    disjoint_paths_up_to(&grid, alive, Orientation::LR, r) >= r
        && disjoint_paths_up_to(&grid, alive, Orientation::TB, r) >= r
}

/// Whether a single open path crosses the grid.
pub fn has_open_path(grid: &TriGrid, alive: &ElementSet, o: Orientation) -> bool {
    if grid.side <= 8 {
        bitboard_crossing(grid.side, alive.mask(), o)
    } else {
        bfs_crossing(grid, alive, o)
    }
}

fn bfs_crossing(grid: &TriGrid, alive: &ElementSet, o: Orientation) -> bool {
    let mut seen = vec![false; grid.vertex_count()];
    let mut queue: VecDeque<usize> = grid
        .source_side(o)
        .into_iter()
        .filter(|&v| alive.contains(v))
        .collect();
    for &v in &queue {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        if grid.is_sink(v, o) {
            return true;
        }
        for w in grid.neighbors(v) {
            if !seen[w] && alive.contains(w) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Flood fill on a 64-bit board; valid for `side <= 8`.
fn bitboard_crossing(side: usize, alive: u64, o: Orientation) -> bool {
    let n = side * side;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let alive = alive & full;
    let mut first_col = 0u64;
    let mut first_row = 0u64;
    for t in 0..side {
        first_col |= 1 << (t * side);
        first_row |= 1 << t;
    }
    let last_col = first_col << (side - 1);
    let last_row = first_row << ((side - 1) * side);
    let (source, sink) = match o {
        Orientation::LR => (first_col, last_col),
        Orientation::TB => (first_row, last_row),
    };
    let not_first_col = full & !first_col;
    let not_last_col = full & !last_col;
    let mut reach = alive & source;
    loop {
        if reach & sink != 0 {
            return true;
        }
        let right = (reach & not_last_col) << 1;
        let left = (reach & not_first_col) >> 1;
        let down = reach << side;
        let up = reach >> side;
        let up_right = (reach & not_last_col) >> (side - 1);
        let down_left = (reach & not_first_col) << (side - 1);
        let next = (reach | right | left | down | up | up_right | down_left) & alive;
        if next == reach {
            return false;
        }
        reach = next;
    }
}

/// Unit-capacity residual network with node splitting.
struct FlowNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
    next: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: vec![NONE; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        for (a, b, c) in [(u, v, 1), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// Pushes one unit along a BFS-shortest augmenting path.
    fn augment(&mut self, source: usize, sink: usize, via: &mut [usize]) -> bool {
        via.fill(NONE);
        let mut queue = VecDeque::new();
        queue.push_back(source);
        via[source] = NONE - 1;
        while let Some(u) = queue.pop_front() {
            let mut e = self.head[u];
            while e != NONE {
                let v = self.to[e];
                if self.cap[e] > 0 && via[v] == NONE {
                    via[v] = e;
                    if v == sink {
                        let mut x = sink;
                        while x != source {
                            let edge = via[x];
                            self.cap[edge] -= 1;
                            self.cap[edge ^ 1] += 1;
                            x = self.to[edge ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(v);
                }
                e = self.next[e];
            }
        }
        false
    }
}

/// Max flow from the source side to the sink side, stopping once `limit` is reached.
fn disjoint_paths_up_to(grid: &TriGrid, alive: &ElementSet, o: Orientation, limit: usize) -> usize {
    let n = grid.vertex_count();
    // vertex v: in-node 2v, out-node 2v+1; virtual source 2n, sink 2n+1
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2);
    for v in alive.iter() {
        net.add_edge(2 * v, 2 * v + 1);
        if grid.is_source(v, o) {
            net.add_edge(source, 2 * v);
        }
        if grid.is_sink(v, o) {
            net.add_edge(2 * v + 1, sink);
        }
        for w in grid.neighbors(v) {
            if alive.contains(w) {
                net.add_edge(2 * v + 1, 2 * w);
            }
        }
    }
    let mut via = vec![NONE; 2 * n + 2];
    let mut flow = 0;
    while flow < limit && net.augment(source, sink, &mut via) {
        flow += 1;
    }
    flow
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_set(side: usize, cells: &[(usize, usize)]) -> ElementSet {
        ElementSet::from_elements(side * side, cells.iter().map(|&(i, j)| i * side + j)).unwrap()
    }

    #[test]
    fn adjacency_rules() {
        let g = TriGrid::new(4).unwrap();
        // corners: (0,0) has right, down; (0,3) adds down-left
        assert_eq!(g.neighbors(g.index(0, 0)).count(), 2);
        assert_eq!(g.neighbors(g.index(0, 3)).count(), 3);
        assert_eq!(g.neighbors(g.index(3, 0)).count(), 3);
        assert_eq!(g.neighbors(g.index(1, 1)).count(), 6);
        assert!(g.is_adjacent(g.index(1, 1), g.index(0, 2)));
        assert!(!g.is_adjacent(g.index(1, 1), g.index(0, 0)));
        for u in 0..16 {
            for v in g.neighbors(u) {
                assert!(g.is_adjacent(v, u));
            }
        }
    }

    #[test]
    fn full_three_by_three() {
        let g = TriGrid::new(3).unwrap();
        let full = ElementSet::full(9);
        assert_eq!(max_disjoint_paths(&g, &full, Orientation::LR).unwrap(), 3);
        assert_eq!(max_disjoint_paths(&g, &full, Orientation::TB).unwrap(), 3);
    }

    #[test]
    fn dead_middle_column_blocks_everything() {
        let g = TriGrid::new(3).unwrap();
        let alive = grid_set(3, &[(0, 0), (1, 0), (2, 0), (0, 2), (1, 2), (2, 2)]);
        assert_eq!(max_disjoint_paths(&g, &alive, Orientation::LR).unwrap(), 0);
        assert!(!has_open_path(&g, &alive, Orientation::LR));
    }

    #[test]
    fn dead_center_leaves_two() {
        let g = TriGrid::new(3).unwrap();
        let mut alive = ElementSet::full(9);
        alive.remove(4);
        assert_eq!(max_disjoint_paths(&g, &alive, Orientation::LR).unwrap(), 2);
        assert_eq!(max_disjoint_paths(&g, &alive, Orientation::TB).unwrap(), 2);
    }

    #[test]
    fn mpath_live_examples() {
        let side = 5;
        let mut cells = Vec::new();
        for t in 0..side {
            cells.extend([(0, t), (2, t), (t, 0), (t, 2)]);
        }
        assert!(mpath_live(side, 2, &grid_set(side, &cells)).unwrap());

        let mut cross = Vec::new();
        for t in 0..side {
            cross.extend([(0, t), (t, 0)]);
        }
        assert!(!mpath_live(side, 2, &grid_set(side, &cross)).unwrap());
        assert!(mpath_live(side, 1, &grid_set(side, &cross)).unwrap());

        for r in 1..=side {
            assert!(mpath_live(side, r, &ElementSet::full(25)).unwrap());
        }
        assert!(mpath_live(side, 0, &ElementSet::full(25)).is_err());
        assert!(mpath_live(side, 6, &ElementSet::full(25)).is_err());
        assert!(mpath_live(side, 1, &ElementSet::full(24)).is_err());
    }

    #[test]
    fn bitboard_agrees_with_bfs() {
        use crate::model::Rng;
        for side in 1..=8 {
            let g = TriGrid::new(side).unwrap();
            for t in 0..300 {
                let mut rng = Rng::for_trial(side as u64, t);
                let alive = crate::model::sample_crash_set(side * side, 0.45, &mut rng).unwrap();
                for o in [Orientation::LR, Orientation::TB] {
                    assert_eq!(
                        bitboard_crossing(side, alive.mask(), o),
                        bfs_crossing(&g, &alive, o)
                    );
                    assert_eq!(
                        bfs_crossing(&g, &alive, o),
                        disjoint_paths_up_to(&g, &alive, o, 1) == 1
                    );
                }
            }
        }
    }
}

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};

use crate::error::{Error, Result};
use crate::model::ExplicitQuorumSystem;

/// Solves `min t` subject to `sum_Q w(Q) = 1`, `w >= 0` and
/// `sum_{Q containing u} w(Q) <= t` for every element `u`.
/// Returns the raw (unnormalized) weights.
pub(super) fn solve_load_lp(sys: &ExplicitQuorumSystem) -> Result<Vec<f64>> {
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let t = problem.add_var(1.0, (0.0, f64::INFINITY));
    let weights: Vec<_> = (0..sys.len())
        .map(|_| problem.add_var(0.0, (0.0, f64::INFINITY)))
        .collect();
    problem.add_constraint(
        weights.iter().map(|&w| (w, 1.0)).collect::<Vec<_>>(),
        ComparisonOp::Eq,
        1.0,
    );
    let mut rows: Vec<LinearExpr> = (0..sys.n())
        .map(|_| {
            let mut e = LinearExpr::empty();
            e.add(t, -1.0);
            e
        })
        .collect();
    for (q, &w) in sys.quorums().iter().zip(&weights) {
        for u in q.iter() {
            rows[u].add(w, 1.0);
        }
    }
    for row in rows {
        problem.add_constraint(row, ComparisonOp::Le, 0.0);
    }
    let solution = problem
        .solve()
        .map_err(|e| Error::Numerical(format!("load LP failed: {e}")))?;
    Ok(weights.iter().map(|&w| solution[w]).collect())
}

//! Finite projective planes over the integers modulo a prime.

use crate::error::{Error, Result};
use crate::model::{ElementSet, ExplicitQuorumSystem};

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_order(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(q))
    }
}

/// Projective points of order `q`: nonzero triples whose first nonzero
/// coordinate is 1, in lexicographic order. Index in this list is the
/// element number.
pub fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut points = Vec::with_capacity((q * q + q + 1) as usize);
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let first = [x, y, z].into_iter().find(|&c| c != 0);
                if first == Some(1) {
                    points.push([x, y, z]);
                }
            }
        }
    }
    points
}

/// The `q^2+q+1` lines of the projective plane of prime order `q`. Line `i`
/// has coefficient vector `projective_points(q)[i]` and contains every point
/// orthogonal to it modulo `q`.
pub fn fpp_lines(q: u64) -> Result<ExplicitQuorumSystem> {
    check_order(q)?;
    let points = projective_points(q);
    let n = points.len();
    let lines = points
        .iter()
        .map(|a| {
            let on_line = points.iter().enumerate().filter_map(|(idx, p)| {
                let dot = (a[0] * p[0] + a[1] * p[1] + a[2] * p[2]) % q;
                (dot == 0).then_some(idx)
            });
            ElementSet::from_elements(n, on_line)
        })
        .collect::<Result<Vec<_>>>()?;
    ExplicitQuorumSystem::new(n, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_plane(q: u64) {
        let plane = fpp_lines(q).unwrap();
        let n = (q * q + q + 1) as usize;
        assert_eq!(plane.n(), n);
        assert_eq!(plane.len(), n);
        for line in plane.quorums() {
            assert_eq!(line.len() as u64, q + 1);
        }
        let qs = plane.quorums();
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(qs[i].intersection_len(&qs[j]), 1, "lines {i},{j}");
            }
        }
        for point in 0..n {
            let degree = qs.iter().filter(|l| l.contains(point)).count() as u64;
            assert_eq!(degree, q + 1);
        }
    }

    #[test]
    fn fano_plane() {
        check_plane(2);
    }

    #[test]
    fn order_three_and_five() {
        check_plane(3);
        check_plane(5);
        assert_eq!(fpp_lines(3).unwrap().n(), 13);
    }

    #[test]
    fn composite_orders_rejected() {
        assert_eq!(fpp_lines(4).unwrap_err(), Error::UnsupportedOrder(4));
        assert_eq!(fpp_lines(1).unwrap_err(), Error::UnsupportedOrder(1));
        assert_eq!(fpp_lines(6).unwrap_err(), Error::UnsupportedOrder(6));
    }
}

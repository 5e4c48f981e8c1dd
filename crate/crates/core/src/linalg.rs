//! Dense exact linear algebra over `Q` for the handful of tiny systems the
//! catalog needs (Gram inverses, Weyl vectors, root coordinates).

use num_traits::{One, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

/// Row-reduce `[a | b]` and return one solution of `a·x = b` with free
/// variables set to zero, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..=cols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &[Vec<Q>]) -> Option<Matrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Q> = (0..n)
            .map(|i| if i == j { Q::one() } else { Q::zero() })
            .collect();
        let x = solve(a, &e)?;
        cols.push(x);
    }
    // A singular matrix can still yield a particular solution for some
    // right-hand sides, so confirm the product is the identity.
    let inv: Matrix = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i]).collect())
        .collect();
    let ok = (0..n).all(|i| {
        (0..n).all(|j| {
            let s: Q = (0..n).map(|k| a[i][k] * inv[k][j]).sum();
            s == if i == j { Q::one() } else { Q::zero() }
        })
    });
    ok.then_some(inv)
}

pub fn mat_vec(a: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| *p * *q).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn inverse_of_cartan_a2() {
        let a = vec![vec![qi(2), qi(-1)], vec![qi(-1), qi(2)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]);
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert!(inverse(&a).is_none());
    }

    #[test]
    fn underdetermined_system_gets_a_solution() {
        let a = vec![vec![qi(1), qi(1), qi(0)]];
        let x = solve(&a, &[qi(3)]).unwrap();
        assert_eq!(x[0] + x[1], qi(3));
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        assert!(solve(&a, &[qi(1), qi(3)]).is_none());
    }
}

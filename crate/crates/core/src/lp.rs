//! Exact feasibility of `A x = b, x ≥ 0` by the two-phase simplex method
//! (phase one only), with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::geom::Q;

/// Whether some `x ≥ 0` satisfies `a x = b`.
pub(crate) fn feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    // tableau rows: [A | I | b] with b >= 0
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Q::one() } else { Q::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // objective: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(col) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut pivot: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][col];
                let better = match &pivot {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = pivot else {
            // unbounded cannot happen for a phase-one objective bounded below by 0
            break;
        };
        let p = t[r][col].clone();
        for v in t[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        basis[r] = col;
    }
    t[m][width - 1].is_zero()
}

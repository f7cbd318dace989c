// SPDX-License-Identifier: Apache-2.0

//! Linear assignment by the Hungarian method with row potentials,
//! O(n^3) on an n x n matrix.
//!
//! Rows are inserted in index order and, among columns of equal reduced
//! slack, the lowest index is taken, so the result is a deterministic
//! function of the matrix.

use alloc::vec;
use alloc::vec::Vec;

/// Minimum-cost perfect assignment on a square matrix given row-major.
/// Returns `(assignment, cost)` with `assignment[row] = column`.
pub fn min_cost_assignment(cost: &[i64], n: usize) -> (Vec<usize>, i64) {
    assert_eq!(cost.len(), n * n, "cost matrix must be n x n");
    if n == 0 {
        return (Vec::new(), 0);
    }
    let c = |i: usize, j: usize| cost[(i - 1) * n + (j - 1)];
    // 1-based; column 0 is the virtual source.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = c(i0, j) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    let total = assignment.iter().enumerate().map(|(i, &j)| cost[i * n + j]).sum();
    (assignment, total)
}

/// Maximum-weight perfect assignment; returns `(assignment, weight)`.
pub fn max_weight_assignment(weight: &[i64], n: usize) -> (Vec<usize>, i64) {
    let neg: Vec<i64> = weight.iter().map(|w| -w).collect();
    let (assignment, cost) = min_cost_assignment(&neg, n);
    (assignment, -cost)
}

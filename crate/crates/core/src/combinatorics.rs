// SPDX-License-Identifier: Apache-2.0

//! Small enumeration helpers shared by the brute-force paths.

use alloc::vec::Vec;

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Rearranges `xs` into the next permutation in lexicographic order.
/// Returns `false` (leaving `xs` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order, identity first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// Lehmer rank of a permutation of `0..n`, in `0..n!`.
pub fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    let mut used = 0u64;
    for (i, &v) in p.iter().enumerate() {
        let smaller_unused = (0..v).filter(|&u| used & (1 << u) == 0).count();
        rank = rank * (n - i) + smaller_unused;
        used |= 1 << v;
    }
    rank
}

pub fn perm_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = Vec::with_capacity(n);
    for base in 1..=n {
        digits.push(rank % base);
        rank /= base;
    }
    digits.reverse();
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All `k`-subsets of `0..n` as sorted index vectors, lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Inverse of a permutation of `0..n`.
pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = alloc::vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

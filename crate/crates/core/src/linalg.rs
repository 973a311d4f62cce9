// SPDX-License-Identifier: Apache-2.0

//! Gaussian elimination over a finite field: rank, determinant, kernel.

use crate::ff::FiniteField;

/// Row-reduces `m` in place and returns the pivot columns.
fn reduce<F: FiniteField + ?Sized>(f: &F, m: &mut [Vec<u32>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let t = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FiniteField + ?Sized>(f: &F, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    reduce(f, &mut m).len()
}

/// Determinant of a square matrix by elimination with row swaps.
pub fn det<F: FiniteField + ?Sized>(f: &F, a: &[Vec<u32>]) -> u32 {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut m = a.to_vec();
    let mut acc = 1u32;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            acc = f.neg(acc);
        }
        let pivot = m[c][c];
        acc = f.mul(acc, pivot);
        let inv = f.inv(pivot);
        for i in c + 1..n {
            if m[i][c] == 0 {
                continue;
            }
            let factor = f.mul(m[i][c], inv);
            for j in c..n {
                let t = f.mul(factor, m[c][j]);
                m[i][j] = f.sub(m[i][j], t);
            }
        }
    }
    acc
}

/// A basis of the right kernel `{x : A x = 0}`.
pub fn kernel<F: FiniteField + ?Sized>(f: &F, a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = reduce(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[row][fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;

    fn brute_det(f: &Fq, a: &[Vec<u32>]) -> u32 {
        // Leibniz expansion over all permutations.
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0;
        loop {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let mut term = (0..n).fold(1, |acc, i| f.mul(acc, a[i][perm[i]]));
            if inversions % 2 == 1 {
                term = f.neg(term);
            }
            total = f.add(total, term);
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    #[test]
    fn det_matches_leibniz_on_all_2x2_and_sampled_4x4() {
        let f = Fq::with_order(5).unwrap();
        for v in 0..625u32 {
            let m = vec![vec![v % 5, v / 5 % 5], vec![v / 25 % 5, v / 125]];
            assert_eq!(det(&f, &m), brute_det(&f, &m));
        }
        let f4 = Fq::with_order(4).unwrap();
        for s in 0..500u32 {
            let m: Vec<Vec<u32>> = (0..4)
                .map(|i| (0..4).map(|j| (s.wrapping_mul(2654435761).rotate_left(i * 4 + j) >> 7) % 4).collect())
                .collect();
            assert_eq!(det(&f4, &m), brute_det(&f4, &m));
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Fq::with_order(3).unwrap();
        let a = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2]];
        assert_eq!(rank(&f, &a), 1);
        let k = kernel(&f, &a);
        assert_eq!(k.len(), 3);
        for v in &k {
            for row in &a {
                let s = row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }
}

//! Dense exact linear algebra over ℚ(i).

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exact::{GaussRational, HSeries};

pub type Matrix = Vec<Vec<GaussRational>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().unwrap();
        if !inv.is_one() {
            for x in m[row].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[row].clone();
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    let mut a = m.clone();
    rref(&mut a, ncols).len()
}

/// Basis of {x : m x = 0}.
pub fn nullspace(m: &Matrix, ncols: usize) -> Vec<Vec<GaussRational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = alloc::vec![GaussRational::zero(); ncols];
            v[f] = GaussRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// A particular solution of m x = b with free variables set to zero.
pub fn solve(m: &Matrix, ncols: usize, b: &[GaussRational]) -> Option<Vec<GaussRational>> {
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = alloc::vec![GaussRational::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][ncols].clone();
    }
    Some(x)
}

/// Matrix over ℚ(i)[[ħ]]/ħ^order, one row per equation.
pub type SeriesMatrix = Vec<Vec<HSeries>>;

/// The ℚ(i) system for x = Σ_k x_k ħ^k: block row k reads Σ_{j≤k} A_{k−j} x_j.
fn lifted(m: &SeriesMatrix, ncols: usize, order: usize) -> Matrix {
    let mut big = Vec::with_capacity(m.len() * order);
    for k in 0..order {
        for row in m {
            let mut r = alloc::vec![GaussRational::zero(); ncols * order];
            for j in 0..=k {
                for (c, a) in row.iter().enumerate() {
                    r[j * ncols + c] = a.coeff(k - j);
                }
            }
            big.push(r);
        }
    }
    big
}

fn unlift(v: &[GaussRational], ncols: usize, order: usize) -> Vec<HSeries> {
    (0..ncols).map(|c| HSeries::from_coeffs((0..order).map(|k| v[k * ncols + c].clone()).collect(), order)).collect()
}

/// A solution of m x = b modulo ħ^order, with free coordinates set to zero.
pub fn solve_series(m: &SeriesMatrix, ncols: usize, b: &[HSeries], order: usize) -> Option<Vec<HSeries>> {
    let big = lifted(m, ncols, order);
    let rhs: Vec<GaussRational> = (0..order).flat_map(|k| b.iter().map(move |x| x.coeff(k))).collect();
    solve(&big, ncols * order, &rhs).map(|v| unlift(&v, ncols, order))
}

/// Solutions of m x = 0 modulo ħ^order whose constant terms are independent: one lift for
/// each element of a basis of the liftable part of ker m(0).
pub fn series_kernel(m: &SeriesMatrix, ncols: usize, order: usize) -> Vec<Vec<HSeries>> {
    if order == 0 {
        return Vec::new();
    }
    let big = lifted(m, ncols, order);
    let ns = nullspace(&big, ncols * order);
    let mut chosen: Vec<Vec<GaussRational>> = Vec::new();
    let mut heads: Matrix = Vec::new();
    for v in ns {
        let head: Vec<GaussRational> = v[..ncols].to_vec();
        if head.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut trial = heads.clone();
        trial.push(head.clone());
        if rank(&trial, ncols) > heads.len() {
            heads.push(head);
            chosen.push(v);
        }
    }
    chosen.iter().map(|v| unlift(v, ncols, order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRational {
        GaussRational::int(n)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = alloc::vec![alloc::vec![g(1), g(2), g(3)], alloc::vec![g(2), g(4), g(6)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &m {
                let s = row.iter().zip(&v).fold(GaussRational::zero(), |acc, (a, b)| acc + a * b);
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = alloc::vec![alloc::vec![g(1), g(1)], alloc::vec![g(1), g(-1)]];
        let x = solve(&m, 2, &[g(3), g(1)]).unwrap();
        assert_eq!(x, alloc::vec![g(2), g(1)]);
        let m2 = alloc::vec![alloc::vec![g(1), g(1)], alloc::vec![g(2), g(2)]];
        assert!(solve(&m2, 2, &[g(1), g(3)]).is_none());
    }

    #[test]
    fn complex_pivot() {
        let i = GaussRational::i();
        let m = alloc::vec![alloc::vec![i.clone(), g(1)]];
        let x = solve(&m, 2, &[g(1)]).unwrap();
        assert_eq!(&i * &x[0] + x[1].clone(), g(1));
    }

    #[test]
    fn series_solve_and_kernel() {
        let h = |c: &[i64]| HSeries::from_coeffs(c.iter().map(|x| g(*x)).collect(), 3);
        // (1 + ħ) x = 2 − ħ²  ⇒  x = 2 − 2ħ + ħ²
        let m = alloc::vec![alloc::vec![h(&[1, 1])]];
        assert_eq!(solve_series(&m, 1, &[h(&[2, 0, -1])], 3).unwrap(), alloc::vec![h(&[2, -2, 1])]);
        // ħ x = 1 has no solution
        assert!(solve_series(&alloc::vec![alloc::vec![h(&[0, 1])]], 1, &[h(&[1])], 3).is_none());
        // x − (1 + ħ) y = 0: kernel spanned by (1 + ħ, 1)
        let m = alloc::vec![alloc::vec![h(&[1]), h(&[-1, -1])]];
        let k = series_kernel(&m, 2, 3);
        assert_eq!(k.len(), 1);
        let r = &k[0][0] - &(&h(&[1, 1]) * &k[0][1]);
        assert!(r.is_zero());
        // ħ y = 0 with x free: x survives, y only as a multiple of ħ²
        let m = alloc::vec![alloc::vec![h(&[0]), h(&[0, 1])]];
        let k = series_kernel(&m, 2, 3);
        assert_eq!(k.len(), 1);
        assert!(k[0][1].coeff(0).is_zero());
    }
}

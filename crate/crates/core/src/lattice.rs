//! Smith and Hermite normal forms over `Z`.
//!
//! Matrices are dense `Vec<Vec<Int>>` in row-major order. Every entry update
//! is overflow-checked.

use crate::arith::{self, Int};
use crate::error::Result;

pub type Matrix = Vec<Vec<Int>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| Int::from(i == j)).collect())
        .collect()
}

/// `row_dst += c * row_src`.
fn axpy(dst: &mut [Int], c: Int, src: &[Int]) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d = arith::add(*d, arith::mul(c, *s)?)?;
    }
    Ok(())
}

pub fn mat_vec(m: &Matrix, v: &[Int]) -> Result<Vec<Int>> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .try_fold(0, |acc, (a, b)| arith::add(acc, arith::mul(*a, *b)?))
        })
        .collect()
}

/// Smith form of a `k × m` relation matrix (relations are columns), with the
/// left transform and its inverse.
///
/// `u · a · v = diag(diagonal)` for some unimodular `v`; `diagonal` has length
/// `k`, entries beyond the rank are zero, and nonzero entries form a
/// divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<Int>,
    pub u: Matrix,
    pub u_inv: Matrix,
}

pub fn smith_form(rows: usize, a: &Matrix) -> Result<SmithForm> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut a: Matrix = if a.is_empty() { vec![Vec::new(); rows] } else { a.clone() };
    let mut u = identity(rows);
    let mut u_inv = identity(rows);

    // Row operations are mirrored on `u` (rows) and `u_inv` (columns).
    let swap_rows = |a: &mut Matrix, u: &mut Matrix, u_inv: &mut Matrix, i: usize, j: usize| {
        a.swap(i, j);
        u.swap(i, j);
        for row in u_inv.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i += c * row_t
    let add_row = |a: &mut Matrix,
                   u: &mut Matrix,
                   u_inv: &mut Matrix,
                   i: usize,
                   t: usize,
                   c: Int|
     -> Result<()> {
        let src = a[t].clone();
        axpy(&mut a[i], c, &src)?;
        let src = u[t].clone();
        axpy(&mut u[i], c, &src)?;
        for row in u_inv.iter_mut() {
            row[t] = arith::sub(row[t], arith::mul(c, row[i])?)?;
        }
        Ok(())
    };
    let add_col = |a: &mut Matrix, j: usize, t: usize, c: Int| -> Result<()> {
        for row in a.iter_mut() {
            row[j] = arith::add(row[j], arith::mul(c, row[t])?)?;
        }
        Ok(())
    };

    let mut diagonal = vec![0; rows];
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    add_row(&mut a, &mut u, &mut u_inv, i, t, -q)?;
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    add_col(&mut a, j, t, -q)?;
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    swap_rows(&mut a, &mut u, &mut u_inv, t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            // pivot must divide the whole trailing block
            let p = a[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => add_row(&mut a, &mut u, &mut u_inv, t, i, 1)?,
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t];
            }
        }
        diagonal[t] = a[t][t];
    }
    Ok(SmithForm { diagonal, u, u_inv })
}

/// Row-style Hermite normal form of the lattice spanned by `rows` plus
/// `moduli[c] · e_c` for every `c` with `moduli[c] > 0`.
///
/// Output rows are nonzero, upper triangular with strictly increasing pivot
/// columns, positive pivots, and entries above each pivot reduced into
/// `[0, pivot)`. The result is unique for the lattice.
pub fn hnf(rows: &[Vec<Int>], ncols: usize, moduli: &[Int]) -> Result<Matrix> {
    let mut work: Matrix = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(c, x)| match moduli.get(c) {
                    Some(&m) if m > 0 => x.rem_euclid(m),
                    _ => *x,
                })
                .collect()
        })
        .collect();
    for (c, &m) in moduli.iter().enumerate() {
        if m > 0 {
            let mut r = vec![0; ncols];
            r[c] = m;
            work.push(r);
        }
    }

    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..ncols {
        loop {
            let best = (pr..work.len())
                .filter(|&i| work[i][c] != 0)
                .min_by_key(|&i| work[i][c].abs());
            let Some(bi) = best else { break };
            work.swap(pr, bi);
            let mut done = true;
            for j in pr + 1..work.len() {
                if work[j][c] != 0 {
                    let q = work[j][c] / work[pr][c];
                    let src = work[pr].clone();
                    axpy(&mut work[j], -q, &src)?;
                    if work[j][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if work[pr][c] < 0 {
                    for x in work[pr].iter_mut() {
                        *x = -*x;
                    }
                }
                pivots.push(c);
                pr += 1;
                break;
            }
        }
    }
    work.truncate(pr);

    for i in 0..pr {
        let c = pivots[i];
        let p = work[i][c];
        for j in 0..i {
            let q = work[j][c].div_euclid(p);
            if q != 0 {
                let src = work[i].clone();
                axpy(&mut work[j], -q, &src)?;
            }
        }
    }
    Ok(work)
}

/// Pivot column of each HNF row.
pub fn pivot_columns(h: &Matrix) -> Vec<usize> {
    h.iter()
        .map(|r| r.iter().position(|x| *x != 0).expect("hnf rows are nonzero"))
        .collect()
}

/// Membership of `v` in the lattice with HNF basis `h`.
pub fn lattice_contains(h: &Matrix, v: &[Int]) -> Result<bool> {
    let mut v = v.to_vec();
    for row in h {
        let c = row.iter().position(|x| *x != 0).expect("hnf rows are nonzero");
        if v[..c].iter().any(|x| *x != 0) {
            return Ok(false);
        }
        if v[c] % row[c] != 0 {
            return Ok(false);
        }
        let q = v[c] / row[c];
        axpy(&mut v, -q, row)?;
    }
    Ok(v.iter().all(|x| *x == 0))
}

/// HNF of the intersection of two lattices given by bases.
pub fn intersect(a: &Matrix, b: &Matrix, ncols: usize, moduli: &[Int]) -> Result<Matrix> {
    let mut rows = Vec::with_capacity(a.len() + b.len());
    for r in a {
        let mut x = r.clone();
        x.extend_from_slice(r);
        rows.push(x);
    }
    for r in b {
        let mut x = r.clone();
        x.extend(std::iter::repeat_n(0, ncols));
        rows.push(x);
    }
    let mut doubled = moduli.to_vec();
    doubled.resize(ncols, 0);
    let tail = doubled.clone();
    doubled.extend(tail);
    let h = hnf(&rows, 2 * ncols, &doubled)?;
    let inner: Matrix = h
        .into_iter()
        .filter(|r| r[..ncols].iter().all(|x| *x == 0))
        .map(|r| r[ncols..].to_vec())
        .collect();
    hnf(&inner, ncols, moduli)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
        let n = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn smith_of_diag_2_3() {
        let a = vec![vec![2, 0], vec![0, 3]];
        let s = smith_form(2, &a).unwrap();
        assert_eq!(s.diagonal, vec![1, 6]);
        assert_eq!(mat_mul(&s.u, &s.u_inv), identity(2));
    }

    #[test]
    fn smith_no_relations() {
        let s = smith_form(3, &vec![vec![]; 3]).unwrap();
        assert_eq!(s.diagonal, vec![0, 0, 0]);
    }

    #[test]
    fn smith_rectangular() {
        // Z^2 / <(4, 6), (6, 9)>: columns are relations
        let a = vec![vec![4, 6], vec![6, 9]];
        let s = smith_form(2, &a).unwrap();
        assert_eq!(s.diagonal, vec![1, 0]);
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_form(3, &a).unwrap();
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        assert_eq!(mat_mul(&s.u, &s.u_inv), identity(3));
    }

    #[test]
    fn hnf_basic() {
        let h = hnf(&[vec![2, 4], vec![3, 5]], 2, &[]).unwrap();
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
        assert!(lattice_contains(&h, &[5, 9]).unwrap());
        assert!(!lattice_contains(&h, &[1, 0]).unwrap());
    }

    #[test]
    fn hnf_with_moduli() {
        let h = hnf(&[vec![2]], 1, &[6]).unwrap();
        assert_eq!(h, vec![vec![2]]);
        let h = hnf(&[vec![2], vec![3]], 1, &[6]).unwrap();
        assert_eq!(h, vec![vec![1]]);
    }

    #[test]
    fn intersection() {
        // 2Z ∩ 3Z = 6Z
        let h = intersect(&vec![vec![2]], &vec![vec![3]], 1, &[]).unwrap();
        assert_eq!(h, vec![vec![6]]);
        let h = intersect(&vec![vec![2]], &vec![vec![3]], 1, &[12]).unwrap();
        assert_eq!(h, vec![vec![6]]);
    }
}

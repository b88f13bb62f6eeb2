//! Exact linear algebra: row reduction over a field and integer Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::Field;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<K: Field>(m: &mut Vec<Vec<K>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        // sparsest usable pivot keeps fill-in down
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(r) {
            if !row[c].is_zero() {
                let w = row.iter().filter(|x| !x.is_zero()).count();
                if best.is_none_or(|(_, bw)| w < bw) {
                    best = Some((i, w));
                }
            }
        }
        let Some((p, _)) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let piv = m[r].clone();
        let nz: Vec<usize> = (0..ncols).filter(|&j| !piv[j].is_zero()).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] = row[j].sub(&f.mul(&piv[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r.max(pivots.len()));
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

pub fn rank<K: Field>(m: &[Vec<K>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

/// Basis of the right kernel `{v : m·v = 0}`.
pub fn kernel<K: Field>(m: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut v = vec![K::zero(); ncols];
        v[f] = K::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = a[i][f].neg();
        }
        out.push(v);
    }
    out
}

/// Solves `m·x = b`. Free variables are set to zero.
pub fn solve<K: Field>(m: &[Vec<K>], b: &[K], ncols: usize) -> Option<Vec<K>> {
    let mut a: Vec<Vec<K>> = m
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
    let mut x = vec![K::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = a[i][ncols].clone();
    }
    Some(x)
}

/// Row Hermite normal form of an integer matrix; returns the nonzero rows.
///
/// Rows are in echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r >= a.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below r becomes the pivot
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pr = a[r].clone();
                for j in 0..ncols {
                    let t = &q * &pr[j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = a[r].clone();
            for i in 0..r {
                let q = a[i][c].div_floor(&pr[c]);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let t = &q * &pr[j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Integer gcd of a slice (nonnegative).
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Integer solution `x` of `x·H = v` for an HNF basis `H`, if one exists.
pub fn hnf_coords(h: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut x = Vec::with_capacity(h.len());
    for row in h {
        let c = row.iter().position(|e| !e.is_zero())?;
        let (q, rem) = rest[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return None;
        }
        for j in 0..rest.len() {
            let t = &q * &row[j];
            rest[j] -= t;
        }
        x.push(q);
    }
    if rest.iter().all(|e| e.is_zero()) {
        Some(x)
    } else {
        None
    }
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, Rat};

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rat = (0..3).map(|j| &m[0][j] * &v[j]).sum();
            assert_eq!(s, int(0));
        }
    }

    #[test]
    fn solve_inconsistent() {
        let m = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(solve(&m, &[int(1), int(2)], 2).is_none());
        assert_eq!(solve(&m, &[int(3), int(3)], 2).unwrap(), vec![int(3), int(0)]);
    }

    #[test]
    fn hnf_small() {
        let h = hnf(&[bi(&[2, 0]), bi(&[1, 0])]);
        assert_eq!(h, vec![bi(&[1, 0])]);
        let h = hnf(&[bi(&[1, 0]), bi(&[0, 1]), bi(&[1, 1])]);
        assert_eq!(h, vec![bi(&[1, 0]), bi(&[0, 1])]);
        let h = hnf(&[bi(&[4, 6]), bi(&[6, 9])]);
        assert_eq!(h, vec![bi(&[2, 3])]);
        assert_eq!(hnf_coords(&h, &bi(&[6, 9])), Some(bi(&[3])));
        assert_eq!(hnf_coords(&h, &bi(&[1, 1])), None);
    }
}

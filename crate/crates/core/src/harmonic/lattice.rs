//! Hermite and Smith normal forms over `Z`, and saturation of sublattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn to_z(m: &[Vec<i64>]) -> ZMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn row_sub(m: &mut ZMatrix, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= k * y;
    }
}

/// Row-style Hermite normal form of the row span: nonzero rows only, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(rows: &[Vec<BigInt>]) -> ZMatrix {
    let mut m: ZMatrix = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        while let Some(p) = (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].abs()) {
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][col].is_zero() {
                    let k = m[i][col].div_floor(&m[r][col]);
                    row_sub(&mut m, i, r, &k);
                    done &= m[i][col].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let k = m[i][col].div_floor(&m[r][col]);
            row_sub(&mut m, i, r, &k);
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Smith form data of `A`: the nonzero invariant factors and `V^{-1}` for some
/// unimodular `U, V` with `U A V` diagonal.
pub struct Smith {
    pub invariants: Vec<BigInt>,
    pub v_inv: ZMatrix,
}

pub fn smith(a: &[Vec<BigInt>]) -> Smith {
    let mut m: ZMatrix = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut v_inv: ZMatrix =
        (0..cols).map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut invariants = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { invariants, v_inv };
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            v_inv.swap(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let k = m[i][t].div_floor(&m[t][t]);
                row_sub(&mut m, i, t, &k);
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let k = m[t][j].div_floor(&m[t][t]);
                if !k.is_zero() {
                    for row in m.iter_mut() {
                        let x = &row[t] * &k;
                        row[j] -= x;
                    }
                    // column op col_j -= k col_t  <=>  row_t(V^{-1}) += k row_j(V^{-1})
                    let add: Vec<BigInt> = v_inv[j].iter().map(|x| x * &k).collect();
                    for (x, y) in v_inv[t].iter_mut().zip(add) {
                        *x += y;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let (lo, hi) = m.split_at_mut(i);
                    for (x, y) in lo[t].iter_mut().zip(hi[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        invariants.push(m[t][t].abs());
    }
    Smith { invariants, v_inv }
}

/// `(L tensor Q) cap Z^n` for the row span `L`, in Hermite form.
pub fn saturate(rows: &[Vec<BigInt>]) -> ZMatrix {
    let s = smith(rows);
    hnf(&s.v_inv[..s.invariants.len()])
}

/// Coordinates of `v` in the Hermite basis `h`, or `None` if `v` is not in its span.
pub fn coordinates_in(h: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut v = v.to_vec();
    let mut out = Vec::with_capacity(h.len());
    for row in h {
        let p = row.iter().position(|x| !x.is_zero())?;
        let (k, r) = v[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &k * y;
        }
        out.push(k);
    }
    v.iter().all(|x| x.is_zero()).then_some(out)
}

/// Index of the sublattice spanned by `sub` in the lattice with Hermite basis `h`;
/// `None` if the index is infinite. Panics if `sub` is not contained in `h`.
pub fn index_in(h: &[Vec<BigInt>], sub: &[Vec<BigInt>]) -> Option<BigInt> {
    let coords: ZMatrix = sub.iter().map(|v| coordinates_in(h, v).expect("sublattice")).collect();
    let s = smith(&coords);
    (s.invariants.len() == h.len()).then(|| s.invariants.iter().product())
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> ZMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter().map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect()).collect()
}

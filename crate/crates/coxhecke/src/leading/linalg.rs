//! Dense exact linear algebra over the cyclotomic field.

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::{Cyc, Laurent, Rat};

pub type DenseMat = Vec<Vec<Cyc>>;

/// Row-reduces in place; returns pivot columns. Rows become a reduced echelon basis.
pub fn rref(m: &mut DenseMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of {z : m·z = 0}.
pub fn nullspace(m: &DenseMat, cols: usize) -> Vec<Vec<Cyc>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![Cyc::zero(); cols];
            z[f] = Cyc::one();
            for (row, &p) in pivots.iter().enumerate() {
                z[p] = -&a[row][f];
            }
            z
        })
        .collect()
}

/// Coefficients c_0..c_n of det(xI − m) = Σ c_k x^k, via Hessenberg reduction.
pub fn charpoly(m: &DenseMat) -> Vec<Cyc> {
    let n = m.len();
    let mut h = m.clone();
    for k in 1..n.saturating_sub(1) {
        let Some(p) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else { continue };
        if p != k {
            h.swap(p, k);
            for row in h.iter_mut() {
                row.swap(p, k);
            }
        }
        let inv = h[k][k - 1].inverse().expect("nonzero");
        for i in k + 1..n {
            if h[i][k - 1].is_zero() {
                continue;
            }
            let f = &h[i][k - 1] * &inv;
            for j in 0..n {
                if !h[k][j].is_zero() {
                    let t = &f * &h[k][j];
                    h[i][j] = &h[i][j] - &t;
                }
            }
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let t = &f * &row[i];
                    row[k] = &row[k] + &t;
                }
            }
        }
    }
    // p_k(x) = characteristic polynomial of the leading k×k block
    let mut polys: Vec<Vec<Cyc>> = vec![vec![Cyc::one()]];
    for k in 0..n {
        // p_{k+1} = (x − h_kk) p_k − Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j−1}) p_i
        let mut next = vec![Cyc::zero(); k + 2];
        for (e, c) in polys[k].iter().enumerate() {
            next[e + 1] = &next[e + 1] + c;
            let t = c * &h[k][k];
            next[e] = &next[e] - &t;
        }
        let mut prod = Cyc::one();
        for i in (0..k).rev() {
            prod = &prod * &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let f = &h[i][k] * &prod;
            if f.is_zero() {
                continue;
            }
            for (e, c) in polys[i].iter().enumerate() {
                let t = &f * c;
                next[e] = &next[e] - &t;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n+1 polynomials")
}

pub fn eval_poly(p: &[Cyc], x: &Cyc) -> Cyc {
    let mut acc = Cyc::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Exact inverse of a square rational matrix, or None if singular.
pub fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::int(1) } else { Rat::int(0) }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a rational matrix.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: DenseMat = m.iter().map(|r| r.iter().map(|q| Cyc::rational(q.clone())).collect()).collect();
    rref(&mut a).len()
}

fn evaluate(x: &Laurent, point: i64) -> Cyc {
    let mut acc = Cyc::zero();
    for (e, c) in x.terms() {
        let p = num_bigint::BigInt::from(point);
        let pow = num_traits::pow(p, e.unsigned_abs() as usize);
        let q = if *e >= 0 { Rat::from_big(pow.into()) } else { Rat::from_big(num_rational::BigRational::new(1.into(), pow)) };
        acc = &acc + &(c * &Cyc::rational(q));
    }
    acc
}

/// Reduced echelon solve of a numeric system [a | b]: None if inconsistent, otherwise
/// the columns whose value does not depend on any free column.
fn solve_numeric(mut m: DenseMat, cols: usize) -> Option<Vec<Option<Cyc>>> {
    let pivots = rref(&mut m);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = vec![None; cols];
    for (row, &p) in pivots.iter().enumerate() {
        if free.iter().all(|&f| m[row][f].is_zero()) {
            out[p] = Some(m[row][cols].clone());
        }
    }
    Some(out)
}

/// Solves a·u = b for Laurent polynomials u whose exponents lie in [−bound, bound], by exact
/// evaluation at integer points of ε and interpolation. Returns None if the system is
/// inconsistent; otherwise the entries of u that the system determines.
pub fn solve_laurent(a: &[Vec<Laurent>], b: &[Laurent], bound: i32) -> Option<Vec<Option<Laurent>>> {
    let cols = a.first().map_or(0, |r| r.len());
    let npoints = 2 * bound as usize + 1;
    let numeric = |point: i64, rows: &[usize]| -> DenseMat {
        rows.iter()
            .map(|&i| {
                let mut v: Vec<Cyc> = a[i].iter().map(|x| evaluate(x, point)).collect();
                v.push(evaluate(&b[i], point));
                v
            })
            .collect()
    };
    // rows independent at the first point, right-hand side included so inconsistencies survive
    let all: Vec<usize> = (0..a.len()).collect();
    let mut keep = Vec::new();
    let mut basis: Vec<(usize, Vec<Cyc>)> = Vec::new();
    for (i, mut v) in numeric(2, &all).into_iter().enumerate() {
        for (p, r) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            if p == cols {
                return None;
            }
            let inv = v[p].inverse().expect("nonzero");
            basis.push((p, v.iter().map(|x| x * &inv).collect()));
            keep.push(i);
        }
    }
    let mut samples: Vec<(i64, Vec<Option<Cyc>>)> = Vec::new();
    let mut point = 2;
    let reference = solve_numeric(numeric(2, &keep), cols)?;
    let pattern: Vec<bool> = reference.iter().map(|v| v.is_some()).collect();
    samples.push((2, reference));
    while samples.len() < npoints {
        point += 1;
        let sol = solve_numeric(numeric(point, &keep), cols)?;
        // points where the rank drops are skipped
        if sol.iter().map(|v| v.is_some()).collect::<Vec<_>>() == pattern {
            samples.push((point, sol));
        }
        if point > 4 * npoints as i64 + 8 {
            return None;
        }
    }
    Some(
        (0..cols)
            .map(|c| {
                if !pattern[c] {
                    return None;
                }
                let pts: Vec<(i64, Cyc)> = samples.iter().map(|(x, sol)| (*x, sol[c].clone().expect("pattern"))).collect();
                Some(interpolate(&pts, bound))
            })
            .collect(),
    )
}

/// The Laurent polynomial ε^{−bound}·P(ε) with P of degree < pts.len() through the points
/// (x, ε^{−bound}·P(x)).
fn interpolate(pts: &[(i64, Cyc)], bound: i32) -> Laurent {
    // Newton divided differences on y·x^bound
    let xs: Vec<Cyc> = pts.iter().map(|(x, _)| Cyc::int(*x)).collect();
    let mut coef: Vec<Cyc> = pts
        .iter()
        .map(|(x, y)| y * &Cyc::rational(Rat::from_big(num_traits::pow(num_bigint::BigInt::from(*x), bound as usize).into())))
        .collect();
    let n = pts.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = (&xs[i] - &xs[i - j]).inverse().expect("distinct points");
            coef[i] = &num * &den;
        }
    }
    // expand Σ coef_j Π_{i<j}(x − x_i)
    let mut poly: Vec<Cyc> = vec![Cyc::zero(); n];
    for j in (0..n).rev() {
        // poly = poly·(x − x_j) + coef_j
        let mut next = vec![Cyc::zero(); n];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = &next[k + 1] + c;
            }
            next[k] = &next[k] - &(c * &xs[j]);
        }
        next[0] = &next[0] + &coef[j];
        poly = next;
    }
    Laurent::from_terms(poly.into_iter().enumerate().map(|(k, c)| (k as i32 - bound, c)).collect())
}

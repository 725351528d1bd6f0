//! Column-sparse matrices over Laurent polynomials.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::ring::Laurent;

/// `m[y]` lists the nonzero entries (x, m_{x,y}) of column y.
pub type SparseMat = Vec<Vec<(u32, Laurent)>>;

pub fn identity(n: usize) -> SparseMat {
    (0..n).map(|i| vec![(i as u32, Laurent::one())]).collect()
}

/// Merges repeated rows, drops zeros and sorts each column.
pub fn normalize(a: &SparseMat) -> SparseMat {
    a.iter()
        .map(|col| {
            let mut m: BTreeMap<u32, Laurent> = BTreeMap::new();
            for (x, v) in col {
                let e = m.entry(*x).or_default();
                *e = &*e + v;
            }
            m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect()
}

pub fn mat_mul(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out: SparseMat = vec![Vec::new(); b.len()];
    let mut acc: BTreeMap<u32, Laurent> = BTreeMap::new();
    for (y, col) in b.iter().enumerate() {
        acc.clear();
        for (k, bv) in col {
            for (x, av) in &a[*k as usize] {
                let e = acc.entry(*x).or_default();
                *e = &*e + &(av * bv);
            }
        }
        out[y] = acc.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
    }
    out
}

/// ca·a + cb·b
pub fn lin_comb(a: &SparseMat, ca: &Laurent, b: &SparseMat, cb: &Laurent) -> SparseMat {
    let joined: SparseMat = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| {
            x.iter()
                .map(|(i, v)| (*i, v * ca))
                .chain(y.iter().map(|(i, v)| (*i, v * cb)))
                .collect()
        })
        .collect();
    normalize(&joined)
}

/// a·v for a dense vector v.
pub fn apply(a: &SparseMat, v: &[Laurent]) -> Vec<Laurent> {
    let mut out = vec![Laurent::zero(); v.len()];
    for (k, vk) in v.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        for (x, av) in &a[k] {
            let e = &mut out[*x as usize];
            *e = &*e + &(av * vk);
        }
    }
    out
}

/// trace(a_{w_1}⋯a_{w_k}) without forming the product.
pub fn trace_of_word(gens: &[SparseMat], word: &[usize], dim: usize) -> Laurent {
    let mut tr = Laurent::zero();
    for y in 0..dim {
        let mut v = vec![Laurent::zero(); dim];
        v[y] = Laurent::one();
        for &s in word.iter().rev() {
            v = apply(&gens[s], &v);
        }
        tr = &tr + &v[y];
    }
    tr
}

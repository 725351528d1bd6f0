//! Ordinary character tables: Murnaghan–Nakayama for type A, explicit models for
//! rank 2, class-multiplication eigenvectors for everything else, and tensor
//! products over irreducible components.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{Component, TypeLetter};
use crate::coxgroup::{CoxeterGroup, ElemId, ElementTable};
use crate::ring::{Cyc, Rat, WeightFunction};
use crate::sparse::trace_of_word;
use num_traits::Float;

use super::classes::ClassInfo;
use super::hecke::dihedral_models;
use super::linalg::{charpoly, eval_poly, nullspace, rref, DenseMat};
use super::LeadingError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryTable {
    pub order: usize,
    /// Sizes of the classes of the owning group, in `ClassInfo` order.
    pub class_sizes: Vec<usize>,
    pub labels: Vec<String>,
    /// Smallest degree in which the character occurs in the symmetric algebra.
    pub b_values: Vec<u32>,
    /// values[E][C]
    pub values: Vec<Vec<Cyc>>,
    pub identity_class: usize,
}

impl OrdinaryTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self, e: usize) -> i64 {
        self.values[e][self.identity_class].as_integer().expect("integer degree")
    }

    /// (1/|W|) Σ_C |C| a(C) conj(b(C))
    pub fn inner_product(&self, a: &[Cyc], b: &[Cyc]) -> Cyc {
        let mut acc = Cyc::zero();
        for ((x, y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            acc = &acc + &(&(x * &y.conj()) * &Cyc::int(size as i64));
        }
        acc.scale(&Rat::new(1, self.order as i64))
    }

    /// Multiplicities of the irreducibles in a character; None if not a nonnegative integer combination.
    pub fn decompose(&self, chi: &[Cyc]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.len());
        for row in &self.values {
            let m = self.inner_product(chi, row).as_integer()?;
            if m < 0 {
                return None;
            }
            out.push(m);
        }
        Some(out)
    }

    pub fn check_orthogonality(&self) -> bool {
        for (i, a) in self.values.iter().enumerate() {
            for (j, b) in self.values.iter().enumerate() {
                let expected = if i == j { Cyc::one() } else { Cyc::zero() };
                if self.inner_product(a, b) != expected {
                    return false;
                }
            }
        }
        true
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

struct Character {
    values: Vec<Cyc>,
    b: u32,
    label: String,
}

/// The character table of a finite Coxeter group, columns indexed as in `info`.
pub fn ordinary_table(group: &CoxeterGroup, info: &ClassInfo) -> Result<OrdinaryTable, LeadingError> {
    let table = group.elements()?;
    let identity = table.from_word(&[]);
    let identity_class = info.class_of(identity);
    let comps = &group.typedec().components;
    let mut chars: Vec<Character> = vec![Character {
        values: vec![Cyc::one(); info.len()],
        b: 0,
        label: String::new(),
    }];
    for comp in comps {
        let sub = component_group(group, comp)?;
        let sub_table = sub.elements()?;
        let sub_info = ClassInfo::new(&sub)?;
        let irr = irreducible_table(&sub, &sub_info, comp)?;
        // class of the component part of each class representative
        let proj: Vec<usize> = (0..info.len())
            .map(|c| sub_info.class_of(project(table, sub_table, comp, info.rep(c))))
            .collect();
        let mut next = Vec::with_capacity(chars.len() * irr.len());
        for a in &chars {
            for b in &irr {
                let values = a.values.iter().zip(&proj).map(|(x, &pc)| x * &b.values[pc]).collect();
                let label = if a.label.is_empty() { b.label.clone() } else { format!("{}⊗{}", a.label, b.label) };
                next.push(Character { values, b: a.b + b.b, label });
            }
        }
        chars = next;
    }
    if comps.is_empty() {
        chars[0].label = "1".to_string();
    }
    Ok(OrdinaryTable {
        order: table.size(),
        class_sizes: info.sizes(),
        labels: chars.iter().map(|c| c.label.clone()).collect(),
        b_values: chars.iter().map(|c| c.b).collect(),
        values: chars.into_iter().map(|c| c.values).collect(),
        identity_class,
    })
}

pub(crate) fn component_group(group: &CoxeterGroup, comp: &Component) -> Result<CoxeterGroup, LeadingError> {
    Ok(CoxeterGroup::new(group.cartan().submatrix(&comp.indices))?)
}

/// The component of w in the subgroup generated by `comp`, as an element of its own table.
pub(crate) fn project(table: &ElementTable, sub: &ElementTable, comp: &Component, w: ElemId) -> ElemId {
    let word: Vec<usize> = table
        .word(w)
        .into_iter()
        .filter_map(|s| comp.indices.iter().position(|&t| t == s))
        .collect();
    sub.from_word(&word)
}

fn irreducible_table(group: &CoxeterGroup, info: &ClassInfo, comp: &Component) -> Result<Vec<Character>, LeadingError> {
    let table = group.elements()?;
    let mut values: Vec<Vec<Cyc>> = match comp.kind {
        TypeLetter::A => type_a_values(table, info, comp.rank()),
        _ if comp.rank() == 2 => {
            let m = group.bond(0, 1);
            let flat = WeightFunction::equal(2);
            dihedral_models(m, &flat)
                .into_iter()
                .map(|model| {
                    (0..info.len())
                        .map(|c| trace_of_word(&model.gens, &table.word(info.rep(c)), model.dim).at_one())
                        .collect()
                })
                .collect()
        }
        _ => burnside(table, info, comp.kind == TypeLetter::H)?,
    };
    let bs = b_values(group, info, &values)?;
    let mut chars: Vec<Character> = values
        .drain(..)
        .zip(bs)
        .map(|(values, b)| Character { values, b, label: String::new() })
        .collect();
    label_characters(group, info, comp, &mut chars);
    Ok(chars)
}

// ---------------------------------------------------------------- type A

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// χ^λ(μ) by removing rim hooks from a beta-set.
fn murnaghan_nakayama(beta: &mut Vec<usize>, cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else { return 1 };
    let mut total = 0;
    for i in 0..beta.len() {
        let b = beta[i];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        beta[i] = b - r;
        total += sign * murnaghan_nakayama(beta, rest);
        beta[i] = b;
    }
    total
}

fn cycle_type(word: &[usize], points: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..points).collect();
    for &s in word {
        perm.swap(s, s + 1);
    }
    let mut seen = vec![false; points];
    let mut out = Vec::new();
    for start in 0..points {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn type_a_values(table: &ElementTable, info: &ClassInfo, rank: usize) -> Vec<Vec<Cyc>> {
    let n = rank + 1;
    let types: Vec<Vec<usize>> = (0..info.len()).map(|c| cycle_type(&table.word(info.rep(c)), n)).collect();
    partitions(n)
        .into_iter()
        .map(|lambda| {
            let len = lambda.len();
            let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
            types.iter().map(|mu| Cyc::int(murnaghan_nakayama(&mut beta.clone(), mu))).collect()
        })
        .collect()
}

fn partition_label(values: &[Cyc], table: &ElementTable, info: &ClassInfo, rank: usize) -> String {
    let n = rank + 1;
    let types: Vec<Vec<usize>> = (0..info.len()).map(|c| cycle_type(&table.word(info.rep(c)), n)).collect();
    for lambda in partitions(n) {
        let len = lambda.len();
        let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
        if types.iter().zip(values).all(|(mu, v)| Cyc::int(murnaghan_nakayama(&mut beta.clone(), mu)) == *v) {
            let parts: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
            return format!("[{}]", parts.join(","));
        }
    }
    unreachable!("every type A character is indexed by a partition")
}

// ---------------------------------------------------------------- class multiplication

/// Simultaneous eigenvectors of the class-sum multiplication matrices.
fn burnside(table: &ElementTable, info: &ClassInfo, golden: bool) -> Result<Vec<Vec<Cyc>>, LeadingError> {
    let r = info.len();
    let order = table.size();
    // structure[i][j][k] = #{x ∈ C_i : x⁻¹z_k ∈ C_j}
    let mut structure = vec![vec![vec![0i64; r]; r]; r];
    for k in 0..r {
        let z = info.rep(k);
        for x in 0..order as ElemId {
            let y = table.mul(table.inverse(x), z);
            structure[info.class_of(x)][info.class_of(y)][k] += 1;
        }
    }
    let identity_class = info.class_of(table.from_word(&[]));
    let mut by_size: Vec<usize> = (0..r).filter(|&c| c != identity_class).collect();
    by_size.sort_by_key(|&c| (info.size(c), c));

    let full: DenseMat = (0..r).map(|i| (0..r).map(|j| if i == j { Cyc::one() } else { Cyc::zero() }).collect()).collect();
    let mut spaces = vec![full];
    for &i in &by_size {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            match split_space(&space, &structure[i], info.size(i) as i64, golden) {
                Some(parts) => next.extend(parts),
                None => next.push(space),
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(LeadingError::CharacterTable("class sums do not separate the characters".into()));
    }

    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        let scale = v[identity_class].inverse().expect("central character is 1 on the identity");
        let v: Vec<Cyc> = v.iter().map(|x| x * &scale).collect();
        let mut norm = Cyc::zero();
        for (j, x) in v.iter().enumerate() {
            norm = &norm + &(x * x).scale(&Rat::new(1, info.size(j) as i64));
        }
        let square = (&Cyc::int(order as i64) * &norm.inverse().expect("nonzero norm"))
            .as_integer()
            .ok_or_else(|| LeadingError::CharacterTable("degree squared is not an integer".into()))?;
        let dim = integer_sqrt(square)
            .ok_or_else(|| LeadingError::CharacterTable("degree squared is not a square".into()))?;
        rows.push(
            v.iter()
                .enumerate()
                .map(|(j, x)| x.scale(&Rat::new(dim, info.size(j) as i64)))
                .collect(),
        );
    }
    Ok(rows)
}

fn integer_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = Float::sqrt(n as f64) as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Splits an invariant subspace into eigenspaces of one class-sum matrix, or
/// returns None if not every eigenvalue was found among the candidates.
fn split_space(space: &DenseMat, mat: &[Vec<i64>], bound: i64, golden: bool) -> Option<Vec<DenseMat>> {
    let d = space.len();
    let r = mat.len();
    let pivots: Vec<usize> = space.iter().map(|row| row.iter().position(|x| !x.is_zero()).expect("basis row")).collect();
    let images: Vec<Vec<Cyc>> = space
        .iter()
        .map(|u| {
            (0..r)
                .map(|j| {
                    let mut acc = Cyc::zero();
                    for (k, uk) in u.iter().enumerate() {
                        if mat[j][k] != 0 && !uk.is_zero() {
                            acc = &acc + &uk.scale(&Rat::int(mat[j][k]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // restricted[a][b]: coordinate of M·u_b along u_a
    let restricted: DenseMat = (0..d).map(|a| (0..d).map(|b| images[b][pivots[a]].clone()).collect()).collect();
    let poly = charpoly(&restricted);
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in eigenvalue_candidates(&poly, bound, golden) {
        let shifted: DenseMat = restricted
            .iter()
            .enumerate()
            .map(|(a, row)| row.iter().enumerate().map(|(b, x)| if a == b { x - &lambda } else { x.clone() }).collect())
            .collect();
        let kernel = nullspace(&shifted, d);
        if kernel.is_empty() {
            continue;
        }
        let mut basis: DenseMat = kernel
            .iter()
            .map(|z| {
                (0..r)
                    .map(|j| {
                        let mut acc = Cyc::zero();
                        for (b, zb) in z.iter().enumerate() {
                            if !zb.is_zero() && !space[b][j].is_zero() {
                                acc = &acc + &(zb * &space[b][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        rref(&mut basis);
        found += basis.len();
        parts.push(basis);
        if found == d {
            return Some(parts);
        }
    }
    None
}

/// Algebraic-integer roots of `poly` of absolute value at most `bound`: integers,
/// plus a + bφ with φ = (1+√5)/2 when `golden` is set. Exact check after an f64 filter.
fn eigenvalue_candidates(poly: &[Cyc], bound: i64, golden: bool) -> Vec<Cyc> {
    let approx: Vec<f64> = poly.iter().map(|c| c.to_f64()).collect();
    let is_root = |x: f64| {
        let mut v = 0.0;
        let mut scale = 0.0;
        for c in approx.iter().rev() {
            v = v * x + c;
            scale = scale * Float::abs(x) + Float::abs(*c);
        }
        Float::abs(v) <= 1e-7 * (scale + 1.0)
    };
    let mut out = Vec::new();
    let phi = Cyc::golden();
    let phi_f = (1.0 + Float::sqrt(5.0)) / 2.0;
    let phi_bar = (1.0 - Float::sqrt(5.0)) / 2.0;
    let b_max = if golden { (2.0 * bound as f64 / Float::sqrt(5.0)) as i64 + 1 } else { 0 };
    for b in -b_max..=b_max {
        for a in -2 * bound - b_max..=2 * bound + b_max {
            let x = a as f64 + b as f64 * phi_f;
            let y = a as f64 + b as f64 * phi_bar;
            if Float::abs(x) > bound as f64 + 0.5 || Float::abs(y) > bound as f64 + 0.5 || !is_root(x) {
                continue;
            }
            let lambda = &Cyc::int(a) + &phi.scale(&Rat::int(b));
            if eval_poly(poly, &lambda).is_zero() {
                out.push(lambda);
            }
        }
    }
    out
}

// ---------------------------------------------------------------- b-values

/// Smallest degree in which each character occurs in the symmetric algebra of the
/// reflection representation, by Molien's formula.
fn b_values(group: &CoxeterGroup, info: &ClassInfo, values: &[Vec<Cyc>]) -> Result<Vec<u32>, LeadingError> {
    let table = group.elements()?;
    let top = group.num_positive_roots().unwrap_or(0);
    let series: Vec<Vec<Cyc>> = (0..info.len())
        .map(|c| {
            let m = group.word_to_mat(&table.word(info.rep(c)))?;
            // det(1 − tM) = Σ_k c_{n−k} t^k
            let p = charpoly(&m);
            let n = p.len() - 1;
            let det: Vec<Cyc> = (0..=n).map(|k| p[n - k].clone()).collect();
            let mut inv = vec![Cyc::zero(); top + 1];
            inv[0] = Cyc::one();
            for d in 1..=top {
                let mut acc = Cyc::zero();
                for k in 1..=d.min(n) {
                    acc = &acc - &(&det[k] * &inv[d - k]);
                }
                inv[d] = acc;
            }
            Ok(inv)
        })
        .collect::<Result<_, crate::coxgroup::CoxeterError>>()?;
    values
        .iter()
        .map(|chi| {
            (0..=top)
                .find(|&d| {
                    let mut acc = Cyc::zero();
                    for c in 0..info.len() {
                        acc = &acc + &(&(&chi[c].conj() * &series[c][d]) * &Cyc::int(info.size(c) as i64));
                    }
                    !acc.is_zero()
                })
                .map(|d| d as u32)
                .ok_or_else(|| LeadingError::CharacterTable("character missing from the coinvariants".into()))
        })
        .collect()
}

// ---------------------------------------------------------------- labels

const NAMED: &str = include_str!("labels.txt");

fn tie_key(chi: &Character, table: &ElementTable, info: &ClassInfo, rank: usize) -> Vec<f64> {
    let first = info.class_of(table.from_word(&[0]));
    let last = info.class_of(table.from_word(&[rank - 1]));
    let mut key = vec![(&chi.values[first] - &chi.values[last]).to_f64()];
    key.extend(chi.values.iter().map(|v| v.to_f64()));
    key
}

fn label_characters(group: &CoxeterGroup, info: &ClassInfo, comp: &Component, chars: &mut Vec<Character>) {
    let table = group.elements().expect("enumerated");
    let rank = comp.rank();
    let identity_class = info.class_of(table.from_word(&[]));
    let dim = |c: &Character| c.values[identity_class].as_integer().expect("integer degree");
    // (b, dim), then the tie key in decreasing order
    let mut keyed: Vec<(u32, i64, Vec<f64>, Character)> = chars
        .drain(..)
        .map(|c| (c.b, dim(&c), tie_key(&c, table, info, rank), c))
        .collect();
    keyed.sort_by(|x, y| {
        (x.0, x.1).cmp(&(y.0, y.1)).then_with(|| y.2.partial_cmp(&x.2).unwrap_or(core::cmp::Ordering::Equal))
    });
    let type_name = comp.type_name();
    let named: Vec<(&str, i64, u32, &str)> = NAMED
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            Some((f[0], f[1].parse().ok()?, f[2].parse().ok()?, f[3]))
        })
        .filter(|(t, ..)| *t == type_name)
        .collect();
    let m = if rank == 2 { group.bond(0, 1) } else { 0 };
    let mut i = 0;
    while i < keyed.len() {
        let (b, d) = (keyed[i].0, keyed[i].1);
        let end = (i..keyed.len()).find(|&j| (keyed[j].0, keyed[j].1) != (b, d)).unwrap_or(keyed.len());
        let file: Vec<&str> = named.iter().filter(|n| n.1 == d && n.2 == b).map(|n| n.3).collect();
        for (k, j) in (i..end).enumerate() {
            let label = if comp.kind == TypeLetter::A {
                partition_label(&keyed[j].3.values, table, info, rank)
            } else if rank == 2 {
                dihedral_label(&keyed[j].3.values, table, info, m)
            } else if file.len() == end - i {
                file[k].to_string()
            } else if end - i == 1 {
                format!("φ{},{}", d, b)
            } else {
                format!("φ{},{}{}", d, b, "'".repeat(k + 1))
            };
            keyed[j].3.label = label;
        }
        i = end;
    }
    if comp.kind == TypeLetter::H && rank == 3 {
        name_h3(&mut keyed, table, info);
    }
    chars.extend(keyed.into_iter().map(|k| k.3));
}

fn dihedral_label(values: &[Cyc], table: &ElementTable, info: &ClassInfo, m: u32) -> String {
    let s0 = &values[info.class_of(table.from_word(&[0]))];
    let s1 = &values[info.class_of(table.from_word(&[1]))];
    let dim = values[info.class_of(table.from_word(&[]))].as_integer().expect("degree");
    if dim == 1 {
        return match (s0.as_integer(), s1.as_integer()) {
            (Some(1), Some(1)) => "1_W".into(),
            (Some(-1), Some(-1)) => "sgn".into(),
            (Some(1), _) => "sgn1".into(),
            _ => "sgn2".into(),
        };
    }
    let rot = &values[info.class_of(table.from_word(&[0, 1]))];
    let j = (1..m as i64).find(|&j| Cyc::two_cos(m, j) == *rot).expect("rotation value");
    format!("σ{}", j)
}

/// Structural names: 1_r trivial, 3_s the reflection representation and 3bar_s its
/// Galois conjugate, unprimed 4_r/5_r of smaller b, primes for sign twists.
fn name_h3(keyed: &mut [(u32, i64, Vec<f64>, Character)], table: &ElementTable, info: &ClassInfo) {
    let sign: Vec<Cyc> = (0..info.len())
        .map(|c| Cyc::int(if table.length(info.rep(c)) % 2 == 0 { 1 } else { -1 }))
        .collect();
    let twist = |v: &[Cyc]| -> Vec<Cyc> { v.iter().zip(&sign).map(|(x, s)| x * s).collect() };
    let find = |keyed: &[(u32, i64, Vec<f64>, Character)], v: &[Cyc]| keyed.iter().position(|k| k.3.values == v).expect("closed");
    let base: Vec<(usize, &str)> = {
        let mut out = Vec::new();
        let reflection = keyed.iter().position(|k| k.1 == 3 && k.0 == 1).expect("reflection character");
        out.push((reflection, "3_s"));
        let conj: Vec<Cyc> = keyed[reflection].3.values.iter().map(|x| x.galois(3)).collect();
        out.push((find(keyed, &conj), "3bar_s"));
        for (d, name) in [(1, "1_r"), (4, "4_r"), (5, "5_r")] {
            let i = keyed.iter().enumerate().filter(|(_, k)| k.1 == d).min_by_key(|(_, k)| k.0).expect("degree").0;
            out.push((i, name));
        }
        out
    };
    for (i, name) in base {
        let t = find(keyed, &twist(&keyed[i].3.values));
        keyed[i].3.label = name.to_string();
        keyed[t].3.label = match name.split_once('_') {
            Some((head, tail)) => format!("{}_{}'", head, tail),
            None => unreachable!(),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_of(name: &str) -> (CoxeterGroup, ClassInfo, OrdinaryTable) {
        let g = CoxeterGroup::from_name(name).unwrap();
        let info = ClassInfo::new(&g).unwrap();
        let t = ordinary_table(&g, &info).unwrap();
        (g, info, t)
    }

    #[test]
    fn partitions_and_mn() {
        assert_eq!(partitions(4).len(), 5);
        // χ^{[2,1]} on a 3-cycle is −1
        assert_eq!(murnaghan_nakayama(&mut vec![3, 1], &[3]), -1);
        assert_eq!(murnaghan_nakayama(&mut vec![3, 1], &[1, 1, 1]), 2);
    }

    #[test]
    fn small_tables() {
        let (_, _, a1) = table_of("A1");
        assert_eq!(a1.len(), 2);
        assert!(a1.check_orthogonality());
        let (g, info, a2) = table_of("A2");
        assert!(a2.check_orthogonality());
        let t = g.elements().unwrap();
        let refl = info.class_of(t.from_word(&[0]));
        let rot = info.class_of(t.from_word(&[0, 1]));
        let e = a2.index_of("[2,1]").unwrap();
        assert_eq!((a2.dim(e), a2.values[e][refl].clone(), a2.values[e][rot].clone()), (2, Cyc::zero(), Cyc::int(-1)));
        assert_eq!(a2.b_values[e], 1);
        assert_eq!(a2.b_values[a2.index_of("[1,1,1]").unwrap()], 3);
    }

    #[test]
    fn dihedral_and_burnside_agree_on_b2() {
        let (g, info, t) = table_of("B2");
        assert!(t.check_orthogonality());
        let burn = burnside(g.elements().unwrap(), &info, false).unwrap();
        for row in &burn {
            assert!(t.values.contains(row));
        }
    }

    #[test]
    fn i2_5() {
        let (g, info, t) = table_of("I2(5)");
        assert_eq!(t.labels.len(), 4);
        let tab = g.elements().unwrap();
        let rot = info.class_of(tab.from_word(&[0, 1]));
        let s = t.index_of("σ1").unwrap();
        assert_eq!(t.values[s][rot], Cyc::two_cos(5, 1));
        assert!(t.check_orthogonality());
    }

    #[test]
    fn h3_and_f4_tables() {
        let (_, _, h3) = table_of("H3");
        assert_eq!(h3.len(), 10);
        assert!(h3.check_orthogonality());
        for l in ["1_r", "1_r'", "3_s", "3bar_s", "3_s'", "3bar_s'", "4_r", "4_r'", "5_r", "5_r'"] {
            assert!(h3.index_of(l).is_some(), "{l}: {:?}", h3.labels);
        }
        let (_, _, f4) = table_of("F4");
        assert_eq!(f4.len(), 25);
        assert!(f4.check_orthogonality());
        assert!(f4.index_of("16").is_some(), "{:?}", f4.labels);
    }

    #[test]
    fn reducible() {
        let (_, _, t) = table_of("A1xA2");
        assert_eq!(t.len(), 6);
        assert!(t.check_orthogonality());
    }
}

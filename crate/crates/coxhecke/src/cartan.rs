//! Cartan and Coxeter matrices, the standard finite types, and type recognition.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ring::{Cyc, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("unknown finite type {kind}{rank}")]
    UnknownType { kind: char, rank: usize },
    #[error("Cartan matrix is not square")]
    NotSquare,
    #[error("diagonal entry ({0},{0}) is not 2")]
    BadDiagonal(usize),
    #[error("entry ({0},{1}) is positive")]
    PositiveEntry(usize, usize),
    #[error("entries ({0},{1}) and ({1},{0}) are not both zero or both nonzero")]
    ZeroPattern(usize, usize),
    #[error("product c_st*c_ts at ({0},{1}) is not 4cos^2(pi/m)")]
    NotCoxeterProduct(usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Bond orders m_st, with 0 standing for ∞ and 1 on the diagonal.
pub type CoxeterMatrix = Vec<Vec<u32>>;

#[derive(Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<Cyc>>,
}

impl CartanMatrix {
    /// Wraps a matrix after checking (C1) and (C2).
    pub fn new(entries: Vec<Vec<Cyc>>) -> Result<CartanMatrix, CartanError> {
        let c = CartanMatrix { entries };
        c.coxeter_matrix()?;
        Ok(c)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<CartanMatrix, CartanError> {
        CartanMatrix::new(rows.iter().map(|r| r.iter().map(|&x| Cyc::int(x)).collect()).collect())
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, s: usize, t: usize) -> &Cyc {
        &self.entries[s][t]
    }

    pub fn rows(&self) -> &[Vec<Cyc>] {
        &self.entries
    }

    pub fn submatrix(&self, idx: &[usize]) -> CartanMatrix {
        CartanMatrix { entries: idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect()).collect() }
    }

    /// Recovers m_st from c_st·c_ts = 4cos²(π/m_st).
    pub fn coxeter_matrix(&self) -> Result<CoxeterMatrix, CartanError> {
        let n = self.entries.len();
        if self.entries.iter().any(|r| r.len() != n) {
            return Err(CartanError::NotSquare);
        }
        let mut m = vec![vec![1u32; n]; n];
        for s in 0..n {
            if self.entries[s][s] != Cyc::int(2) {
                return Err(CartanError::BadDiagonal(s));
            }
            for t in 0..n {
                if s == t {
                    continue;
                }
                let (a, b) = (&self.entries[s][t], &self.entries[t][s]);
                if a.sign()? > 0 {
                    return Err(CartanError::PositiveEntry(s, t));
                }
                if a.is_zero() != b.is_zero() {
                    return Err(CartanError::ZeroPattern(s, t));
                }
                m[s][t] = bond_from_product(&(a * b)).ok_or(CartanError::NotCoxeterProduct(s, t))?;
            }
        }
        Ok(m)
    }
}

const MAX_BOND: u32 = 600;

/// m with p = 4cos²(π/m) = 2 + 2cos(2π/m), 0 for m = ∞.
fn bond_from_product(p: &Cyc) -> Option<u32> {
    if p.is_zero() {
        return Some(2);
    }
    if *p == Cyc::int(4) {
        return Some(0);
    }
    if let Some(q) = p.as_rational() {
        return match q.to_i64() {
            Some(1) => Some(3),
            Some(2) => Some(4),
            Some(3) => Some(6),
            _ => None,
        };
    }
    let target = p - &Cyc::int(2);
    (5..=MAX_BOND).find(|&m| m != 6 && Cyc::two_cos(m, 1) == target)
}

impl fmt::Debug for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// Letter of a finite irreducible type, or `U` for anything unrecognised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    U,
}

impl TypeLetter {
    pub fn from_char(c: char) -> Option<TypeLetter> {
        Some(match c.to_ascii_uppercase() {
            'A' => TypeLetter::A,
            'B' => TypeLetter::B,
            'C' => TypeLetter::C,
            'D' => TypeLetter::D,
            'E' => TypeLetter::E,
            'F' => TypeLetter::F,
            'G' => TypeLetter::G,
            'H' => TypeLetter::H,
            'I' => TypeLetter::I,
            'U' => TypeLetter::U,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::C => 'C',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
            TypeLetter::H => 'H',
            TypeLetter::I => 'I',
            TypeLetter::U => 'U',
        }
    }
}

const RECOGNITION_ORDER: [TypeLetter; 9] = [
    TypeLetter::A,
    TypeLetter::B,
    TypeLetter::C,
    TypeLetter::D,
    TypeLetter::E,
    TypeLetter::F,
    TypeLetter::G,
    TypeLetter::H,
    TypeLetter::I,
];

fn zero_matrix(n: usize) -> Vec<Vec<Cyc>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Cyc::int(2) } else { Cyc::zero() }).collect()).collect()
}

fn link(m: &mut [Vec<Cyc>], s: usize, t: usize) {
    m[s][t] = Cyc::int(-1);
    m[t][s] = Cyc::int(-1);
}

/// The standard Cartan matrix of an irreducible finite type, numbered as in
/// the usual table of Coxeter graphs (D: 0,1 on 2; E: 1 on 3; F4: 0-1=2-3).
pub fn cartanmat(kind: TypeLetter, rank: usize, bond: Option<u32>) -> Result<CartanMatrix, CartanError> {
    let unknown = CartanError::UnknownType { kind: kind.as_char(), rank };
    let mut m = zero_matrix(rank);
    match kind {
        TypeLetter::A if rank >= 1 => {
            for i in 1..rank {
                link(&mut m, i - 1, i);
            }
        }
        TypeLetter::B | TypeLetter::C if rank >= 2 => {
            for i in 1..rank {
                link(&mut m, i - 1, i);
            }
            if kind == TypeLetter::B {
                m[0][1] = Cyc::int(-2);
            } else {
                m[1][0] = Cyc::int(-2);
            }
        }
        TypeLetter::D if rank >= 4 => {
            link(&mut m, 0, 2);
            link(&mut m, 1, 2);
            for i in 3..rank {
                link(&mut m, i - 1, i);
            }
        }
        TypeLetter::E if (6..=8).contains(&rank) => {
            link(&mut m, 0, 2);
            link(&mut m, 1, 3);
            for i in 3..rank {
                link(&mut m, i - 1, i);
            }
        }
        TypeLetter::F if rank == 4 => {
            link(&mut m, 0, 1);
            link(&mut m, 1, 2);
            link(&mut m, 2, 3);
            m[2][1] = Cyc::int(-2);
        }
        TypeLetter::G if rank == 2 => {
            m[0][1] = Cyc::int(-1);
            m[1][0] = Cyc::int(-3);
        }
        TypeLetter::H if rank == 3 || rank == 4 => {
            for i in 1..rank {
                link(&mut m, i - 1, i);
            }
            let a = -&Cyc::golden();
            m[0][1] = a.clone();
            m[1][0] = a;
        }
        TypeLetter::I if rank == 2 => {
            let bm = bond.filter(|&b| b >= 3).ok_or(unknown)?;
            if bm % 2 == 1 {
                let c = -&Cyc::two_cos_pi_over(bm);
                m[0][1] = c.clone();
                m[1][0] = c;
            } else {
                m[0][1] = Cyc::int(-1);
                m[1][0] = -&Cyc::two_cos_pi_over(bm).pow(2);
            }
        }
        _ => return Err(unknown),
    }
    Ok(CartanMatrix { entries: m })
}

/// Reflection degrees of an irreducible finite type.
pub fn type_degrees(kind: TypeLetter, rank: usize, bond: Option<u32>) -> Option<Vec<u32>> {
    let r = rank as u32;
    Some(match kind {
        TypeLetter::A => (2..=r + 1).collect(),
        TypeLetter::B | TypeLetter::C => (1..=r).map(|i| 2 * i).collect(),
        TypeLetter::D => {
            let mut d: Vec<u32> = (1..r).map(|i| 2 * i).collect();
            d.push(r);
            d.sort_unstable();
            d
        }
        TypeLetter::E => match rank {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            _ => return None,
        },
        TypeLetter::F => vec![2, 6, 8, 12],
        TypeLetter::G => vec![2, 6],
        TypeLetter::H => match rank {
            3 => vec![2, 6, 10],
            4 => vec![2, 12, 20, 30],
            _ => return None,
        },
        TypeLetter::I => vec![2, bond?],
        TypeLetter::U => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub kind: TypeLetter,
    /// Generator indices in the order matching the standard matrix.
    pub indices: Vec<usize>,
    /// Bond for type I.
    pub bond: Option<u32>,
}

impl Component {
    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn type_name(&self) -> String {
        match (self.kind, self.bond) {
            (TypeLetter::I, Some(m)) => format!("I2({})", m),
            (k, _) => format!("{}{}", k.as_char(), self.rank()),
        }
    }

    pub fn degrees(&self) -> Option<Vec<u32>> {
        type_degrees(self.kind, self.rank(), self.bond)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeDecomposition {
    pub components: Vec<Component>,
}

impl TypeDecomposition {
    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.kind != TypeLetter::U)
    }

    /// Sorted multiset of reflection degrees, or None if a component is not finite.
    pub fn degrees(&self) -> Option<Vec<u32>> {
        let mut d = Vec::new();
        for c in &self.components {
            d.extend(c.degrees()?);
        }
        d.sort_unstable();
        Some(d)
    }

    pub fn order(&self) -> Option<u128> {
        Some(self.degrees()?.iter().map(|&d| d as u128).product())
    }

    pub fn num_positive_roots(&self) -> Option<usize> {
        Some(self.degrees()?.iter().map(|&d| d as usize - 1).sum())
    }

    /// Human-readable name such as `H3xG2`.
    pub fn name(&self) -> String {
        if self.components.is_empty() {
            return String::from("A0");
        }
        self.components.iter().map(|c| c.type_name()).collect::<Vec<_>>().join("x")
    }
}

fn connected_components(cox: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let n = cox.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let s = comp[i];
            for t in 0..n {
                if !seen[t] && cox[s][t] != 2 {
                    seen[t] = true;
                    comp.push(t);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Lexicographically smallest ordering of `verts` under which `same(i,j,p_i,p_j)` holds for all pairs.
fn find_ordering(verts: &[usize], same: &dyn Fn(usize, usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    fn go(
        verts: &[usize],
        same: &dyn Fn(usize, usize, usize, usize) -> bool,
        chosen: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = chosen.len();
        if k == verts.len() {
            return true;
        }
        for (vi, &v) in verts.iter().enumerate() {
            if used[vi] {
                continue;
            }
            let ok = same(k, k, v, v) && (0..k).all(|i| same(i, k, chosen[i], v) && same(k, i, v, chosen[i]));
            if ok {
                used[vi] = true;
                chosen.push(v);
                if go(verts, same, chosen, used) {
                    return true;
                }
                chosen.pop();
                used[vi] = false;
            }
        }
        false
    }
    let mut chosen = Vec::new();
    let mut used = vec![false; verts.len()];
    if go(verts, same, &mut chosen, &mut used) {
        Some(chosen)
    } else {
        None
    }
}

fn candidate_types(rank: usize, cox: &CoxeterMatrix, verts: &[usize]) -> Vec<(TypeLetter, Option<u32>)> {
    let mut out = Vec::new();
    for &k in RECOGNITION_ORDER.iter() {
        if k == TypeLetter::I {
            if rank == 2 {
                let m = cox[verts[0]][verts[1]];
                if m >= 3 {
                    out.push((k, Some(m)));
                }
            }
        } else {
            out.push((k, None));
        }
    }
    out
}

/// Splits into connected components and matches each against the standard types.
///
/// An exact match of Cartan entries is preferred; otherwise the Coxeter graph
/// alone decides and the component keeps the type with the graph's ordering.
pub fn recognize(c: &CartanMatrix) -> TypeDecomposition {
    let Ok(cox) = c.coxeter_matrix() else {
        return TypeDecomposition {
            components: vec![Component { kind: TypeLetter::U, indices: (0..c.rank()).collect(), bond: None }],
        };
    };
    let mut components = Vec::new();
    for verts in connected_components(&cox) {
        let rank = verts.len();
        let cands = candidate_types(rank, &cox, &verts);
        let mut found: Option<Component> = None;
        // exact Cartan match first, then Coxeter graph match
        for exact in [true, false] {
            for &(k, bond) in &cands {
                if k == TypeLetter::I && bond.is_some_and(|m| [3, 4, 6].contains(&m)) {
                    continue;
                }
                let Ok(std) = cartanmat(k, rank, bond) else { continue };
                let Ok(std_cox) = std.coxeter_matrix() else { continue };
                let ord = if exact {
                    find_ordering(&verts, &|i, j, a, b| c.entries[a][b] == std.entries[i][j])
                } else {
                    find_ordering(&verts, &|i, j, a, b| cox[a][b] == std_cox[i][j])
                };
                if let Some(indices) = ord {
                    found = Some(Component { kind: k, indices, bond: if k == TypeLetter::I { bond } else { None } });
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        components.push(found.unwrap_or(Component { kind: TypeLetter::U, indices: verts, bond: None }));
    }
    TypeDecomposition { components }
}

/// Identifying string, e.g. `F4c0c1c2c3`.
pub fn cartanname(c: &CartanMatrix, t: &TypeDecomposition) -> String {
    let mut s = String::new();
    for comp in &t.components {
        s.push_str(&comp.type_name());
        for &i in &comp.indices {
            s.push_str(&format!("c{}", i));
        }
        if comp.kind == TypeLetter::U {
            s.push('[');
            let sub = c.submatrix(&comp.indices);
            let rows: Vec<String> = sub
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| format!("{}", x)).collect::<Vec<_>>().join(","))
                .collect();
            s.push_str(&rows.join(";"));
            s.push(']');
        }
    }
    s
}

/// Block-diagonal Cartan matrix of a product of standard types.
pub fn product_cartan(parts: &[(TypeLetter, usize, Option<u32>)]) -> Result<CartanMatrix, CartanError> {
    let n: usize = parts.iter().map(|p| p.1).sum();
    let mut m = zero_matrix(n);
    let mut off = 0;
    for &(k, r, b) in parts {
        let c = cartanmat(k, r, b)?;
        for i in 0..r {
            for j in 0..r {
                m[off + i][off + j] = c.entries[i][j].clone();
            }
        }
        off += r;
    }
    Ok(CartanMatrix { entries: m })
}

/// Parses names such as `F4`, `I2(5)`, `H3xG2`, `A1xA1`.
pub fn parse_type_name(name: &str) -> Option<Vec<(TypeLetter, usize, Option<u32>)>> {
    let mut out = Vec::new();
    for part in name.split(['x', '*']) {
        let part = part.trim();
        let mut chars = part.chars();
        let kind = TypeLetter::from_char(chars.next()?)?;
        let rest: &str = chars.as_str();
        if kind == TypeLetter::I {
            let (r, b) = match rest.split_once('(') {
                Some((r, b)) => (r, b.trim_end_matches(')')),
                None => ("2", rest),
            };
            let r: usize = if r.is_empty() { 2 } else { r.parse().ok()? };
            if r != 2 {
                return None;
            }
            out.push((kind, 2, Some(b.parse().ok()?)));
        } else {
            out.push((kind, rest.parse().ok()?, None));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> CartanMatrix {
        CartanMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn standard_matrices() {
        assert_eq!(cartanmat(TypeLetter::B, 3, None).unwrap(), ints(&[&[2, -2, 0], &[-1, 2, -1], &[0, -1, 2]]));
        assert_eq!(cartanmat(TypeLetter::C, 3, None).unwrap(), ints(&[&[2, -1, 0], &[-2, 2, -1], &[0, -1, 2]]));
        assert_eq!(cartanmat(TypeLetter::A, 1, None).unwrap(), ints(&[&[2]]));
        assert!(cartanmat(TypeLetter::E, 5, None).is_err());
        assert!(cartanmat(TypeLetter::I, 2, None).is_err());
    }

    #[test]
    fn coxeter_matrices() {
        let aff = ints(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(aff.coxeter_matrix().unwrap(), vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]);
        let g2 = cartanmat(TypeLetter::G, 2, None).unwrap();
        assert_eq!(g2.coxeter_matrix().unwrap(), vec![vec![1, 6], vec![6, 1]]);
        let inf = ints(&[&[2, -2], &[-2, 2]]);
        assert_eq!(inf.coxeter_matrix().unwrap()[0][1], 0);
        let h4 = cartanmat(TypeLetter::H, 4, None).unwrap();
        assert_eq!(h4.coxeter_matrix().unwrap()[0][1], 5);
        for m in [5, 7, 8, 9, 10, 12] {
            let i = cartanmat(TypeLetter::I, 2, Some(m)).unwrap();
            assert_eq!(i.coxeter_matrix().unwrap()[0][1], m);
        }
        assert!(CartanMatrix::from_ints(&[&[2, 1], &[1, 2]]).is_err());
        assert!(CartanMatrix::from_ints(&[&[2, -5], &[-1, 2]]).is_err());
    }

    #[test]
    fn recognise_mixed_example() {
        let a = -&Cyc::golden();
        let z = Cyc::zero;
        let i = Cyc::int;
        let m = vec![
            vec![i(2), z(), i(-1), a.clone(), z()],
            vec![z(), i(2), z(), z(), i(-1)],
            vec![i(-1), z(), i(2), z(), z()],
            vec![a, z(), z(), i(2), z()],
            vec![z(), i(-3), z(), z(), i(2)],
        ];
        let c = CartanMatrix::new(m).unwrap();
        let t = recognize(&c);
        assert_eq!(t.components.len(), 2);
        assert_eq!((t.components[0].kind, t.components[0].indices.clone()), (TypeLetter::H, vec![3, 0, 2]));
        assert_eq!((t.components[1].kind, t.components[1].indices.clone()), (TypeLetter::G, vec![1, 4]));
        assert_eq!(t.degrees().unwrap(), vec![2, 2, 6, 6, 10]);
        assert_eq!(t.order().unwrap(), 1440);
        assert_eq!(t.name(), "H3xG2");
    }

    #[test]
    fn recognise_affine_and_standard() {
        let aff = ints(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let t = recognize(&aff);
        assert_eq!(t.components, vec![Component { kind: TypeLetter::U, indices: vec![0, 1, 2], bond: None }]);
        assert!(t.degrees().is_none());
        let f4 = cartanmat(TypeLetter::F, 4, None).unwrap();
        let t = recognize(&f4);
        assert_eq!(t.components[0].kind, TypeLetter::F);
        assert_eq!(t.components[0].indices, vec![0, 1, 2, 3]);
        assert_eq!(cartanname(&f4, &t), "F4c0c1c2c3");
    }

    #[test]
    fn recognise_every_standard_type() {
        let mut cases: Vec<(TypeLetter, usize, Option<u32>)> = Vec::new();
        for r in 1..=8 {
            cases.push((TypeLetter::A, r, None));
        }
        for r in 2..=8 {
            cases.push((TypeLetter::B, r, None));
            cases.push((TypeLetter::C, r, None));
        }
        for r in 4..=8 {
            cases.push((TypeLetter::D, r, None));
        }
        for r in 6..=8 {
            cases.push((TypeLetter::E, r, None));
        }
        cases.push((TypeLetter::F, 4, None));
        cases.push((TypeLetter::G, 2, None));
        cases.push((TypeLetter::H, 3, None));
        cases.push((TypeLetter::H, 4, None));
        for m in [5, 7, 8, 10, 12] {
            cases.push((TypeLetter::I, 2, Some(m)));
        }
        for (k, r, b) in cases {
            let c = cartanmat(k, r, b).unwrap();
            let t = recognize(&c);
            assert_eq!(t.components.len(), 1, "{:?}{}", k, r);
            let comp = &t.components[0];
            // C2 is B2 with the generators swapped
            if k == TypeLetter::C && r == 2 {
                assert_eq!((comp.kind, comp.indices.clone()), (TypeLetter::B, vec![1, 0]));
                continue;
            }
            assert_eq!(comp.kind, k, "{:?}{}", k, r);
            assert_eq!(comp.indices, (0..r).collect::<Vec<_>>(), "{:?}{}", k, r);
            assert_eq!(comp.bond, b);
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(parse_type_name("F4").unwrap(), vec![(TypeLetter::F, 4, None)]);
        assert_eq!(parse_type_name("I2(5)").unwrap(), vec![(TypeLetter::I, 2, Some(5))]);
        assert_eq!(parse_type_name("H3xG2").unwrap(), vec![(TypeLetter::H, 3, None), (TypeLetter::G, 2, None)]);
    }
}

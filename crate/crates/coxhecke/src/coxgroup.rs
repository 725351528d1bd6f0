//! Coxeter groups built from Cartan matrices: roots, elements, subgroups, classes.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;
use num_integer::Integer;
use once_cell::race::OnceBox;
use smallvec::SmallVec;

use crate::cartan::{cartanname, recognize, CartanError, CartanMatrix, CoxeterMatrix, TypeDecomposition};
use crate::ring::{Cyc, Rat, RingError};

/// Default cap on |W| for operations that list every element.
pub const DEFAULT_ENUMERATION_CAP: u128 = 300_000;
/// Default cap on |W| for operations that never list elements.
pub const DEFAULT_ORDER_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("the group is infinite")]
    Infinite,
    #[error("group order {order} exceeds the cap {cap}")]
    TooLarge { order: u128, cap: u128 },
    #[error("matrix is not the image of a group element")]
    NotInGroup,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("root index {0} out of range")]
    BadRoot(usize),
    #[error("element is not a distinguished coset representative")]
    NotCosetRep,
}

/// Square matrix over the scalars; rows are images of simple roots.
pub type Matrix = Vec<Vec<Cyc>>;

/// Identifier of an element in the enumerated group (shortlex order, identity = 0).
pub type ElemId = u32;

/// Bitmask of generators.
pub type GenSet = u32;

pub fn genset(gens: &[usize]) -> GenSet {
    gens.iter().fold(0, |m, &s| m | (1 << s))
}

pub fn genset_members(mask: GenSet) -> Vec<usize> {
    (0..32).filter(|s| mask & (1 << s) != 0).collect()
}

struct RootSystem {
    /// 2N coordinate vectors, positive roots first.
    roots: Vec<Vec<Cyc>>,
    n_pos: usize,
    /// permgens[s][i] = index of α_i.s
    permgens: Vec<Vec<u32>>,
    /// For a positive root: (simple index s, word w) with α_s.w = root.
    origin: Vec<(usize, Vec<usize>)>,
}

pub struct CoxeterGroup {
    cartan: CartanMatrix,
    coxeter: CoxeterMatrix,
    typedec: TypeDecomposition,
    name: String,
    matgens: Vec<Matrix>,
    conductor: u32,
    roots: Option<RootSystem>,
    order: Option<u128>,
    table: OnceBox<ElementTable>,
    enumeration_cap: u128,
}

impl core::fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CoxeterGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

fn root_key(v: &[Cyc], n: u32) -> Vec<Rat> {
    v.iter().flat_map(|c| c.lift_coords(n)).collect()
}

/// Sign of the first nonzero coordinate (roots are all ≥ 0 or all ≤ 0).
fn vector_sign(v: &[Cyc]) -> i8 {
    for c in v {
        let s = c.sign().expect("root coordinates are real");
        if s != 0 {
            return s;
        }
    }
    0
}

fn cmp_real(a: &Cyc, b: &Cyc) -> Ordering {
    match (a - b).sign().expect("real") {
        1 => Ordering::Greater,
        -1 => Ordering::Less,
        _ => Ordering::Equal,
    }
}

impl CoxeterGroup {
    /// Builds the group; roots and the order are computed only if it is finite.
    pub fn new(cartan: CartanMatrix) -> Result<CoxeterGroup, CoxeterError> {
        let coxeter = cartan.coxeter_matrix()?;
        let typedec = recognize(&cartan);
        let name = cartanname(&cartan, &typedec);
        let n = cartan.rank();
        let matgens: Vec<Matrix> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        let mut row = vec![Cyc::zero(); n];
                        row[t] = Cyc::one();
                        row[s] = &row[s] - cartan.get(s, t);
                        row
                    })
                    .collect()
            })
            .collect();
        let conductor = cartan
            .rows()
            .iter()
            .flatten()
            .fold(1u32, |acc, c| if c.conductor() == 1 { acc } else { acc.lcm(&c.conductor()) });
        let mut g = CoxeterGroup {
            cartan,
            coxeter,
            order: typedec.order(),
            typedec,
            name,
            matgens,
            conductor,
            roots: None,
            table: OnceBox::new(),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        };
        if g.order.is_some() {
            g.roots = Some(g.enumerate_roots());
        }
        Ok(g)
    }

    pub fn from_type(kind: crate::cartan::TypeLetter, rank: usize, bond: Option<u32>) -> Result<CoxeterGroup, CoxeterError> {
        CoxeterGroup::new(crate::cartan::cartanmat(kind, rank, bond)?)
    }

    /// Parses names such as `F4`, `I2(8)`, `H3xG2`.
    pub fn from_name(name: &str) -> Result<CoxeterGroup, CoxeterError> {
        let parts = crate::cartan::parse_type_name(name)
            .ok_or(CartanError::UnknownType { kind: name.chars().next().unwrap_or('?'), rank: 0 })?;
        CoxeterGroup::new(crate::cartan::product_cartan(&parts)?)
    }

    pub fn with_enumeration_cap(mut self, cap: u128) -> CoxeterGroup {
        self.enumeration_cap = cap;
        self
    }

    fn enumerate_roots(&self) -> RootSystem {
        let n = self.rank();
        let cond = self.conductor;
        let mut roots: Vec<Vec<Cyc>> = Vec::new();
        let mut origin: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut index: HashMap<Vec<Rat>, usize> = HashMap::new();
        for s in 0..n {
            let mut v = vec![Cyc::zero(); n];
            v[s] = Cyc::one();
            index.insert(root_key(&v, cond), roots.len());
            roots.push(v);
            origin.push((s, Vec::new()));
        }
        let mut i = 0;
        while i < roots.len() {
            for s in 0..n {
                if i == s {
                    continue;
                }
                let img = self.act_on_root(&roots[i], s);
                let key = root_key(&img, cond);
                if !index.contains_key(&key) {
                    index.insert(key, roots.len());
                    let mut w = origin[i].1.clone();
                    w.push(s);
                    origin.push((origin[i].0, w));
                    roots.push(img);
                }
            }
            i += 1;
        }
        // order by height, then coordinates in decreasing lexicographic order
        let height = |v: &Vec<Cyc>| v.iter().fold(Cyc::zero(), |a, c| &a + c);
        let mut perm: Vec<usize> = (0..roots.len()).collect();
        let heights: Vec<Cyc> = roots.iter().map(height).collect();
        perm.sort_by(|&a, &b| {
            cmp_real(&heights[a], &heights[b]).then_with(|| {
                for (x, y) in roots[a].iter().zip(roots[b].iter()) {
                    match cmp_real(x, y) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            })
        });
        let n_pos = roots.len();
        let mut sorted: Vec<Vec<Cyc>> = perm.iter().map(|&i| roots[i].clone()).collect();
        let origin: Vec<(usize, Vec<usize>)> = perm.iter().map(|&i| origin[i].clone()).collect();
        for i in 0..n_pos {
            let neg: Vec<Cyc> = sorted[i].iter().map(|c| -c).collect();
            sorted.push(neg);
        }
        let mut full_index: HashMap<Vec<Rat>, u32> = HashMap::new();
        for (i, r) in sorted.iter().enumerate() {
            full_index.insert(root_key(r, cond), i as u32);
        }
        let permgens = (0..n)
            .map(|s| sorted.iter().map(|r| full_index[&root_key(&self.act_on_root(r, s), cond)]).collect())
            .collect();
        RootSystem { roots: sorted, n_pos, permgens, origin }
    }

    /// Coordinates of v.s: only the s-coordinate changes.
    fn act_on_root(&self, v: &[Cyc], s: usize) -> Vec<Cyc> {
        let mut out = v.to_vec();
        let mut acc = v[s].clone();
        for (t, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc - &(c * self.cartan.get(s, t));
            }
        }
        out[s] = acc;
        out
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.coxeter
    }

    pub fn bond(&self, s: usize, t: usize) -> u32 {
        self.coxeter[s][t]
    }

    pub fn typedec(&self) -> &TypeDecomposition {
        &self.typedec
    }

    pub fn cartanname(&self) -> &str {
        &self.name
    }

    pub fn matgens(&self) -> &[Matrix] {
        &self.matgens
    }

    pub fn is_finite(&self) -> bool {
        self.order.is_some()
    }

    pub fn order(&self) -> Option<u128> {
        self.order
    }

    pub fn degrees(&self) -> Option<Vec<u32>> {
        self.typedec.degrees()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    fn root_system(&self) -> Result<&RootSystem, CoxeterError> {
        self.roots.as_ref().ok_or(CoxeterError::Infinite)
    }

    /// Number of positive roots N.
    pub fn num_positive_roots(&self) -> Option<usize> {
        self.roots.as_ref().map(|r| r.n_pos)
    }

    pub fn roots(&self) -> Result<&[Vec<Cyc>], CoxeterError> {
        Ok(&self.root_system()?.roots)
    }

    pub fn permgens(&self) -> Result<&[Vec<u32>], CoxeterError> {
        Ok(&self.root_system()?.permgens)
    }

    // ---- matrices and words (any group) ----

    pub fn identity_matrix(&self) -> Matrix {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| if i == j { Cyc::one() } else { Cyc::zero() }).collect()).collect()
    }

    fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Cyc::zero(), |acc, k| {
                            if a[i][k].is_zero() || b[k][j].is_zero() {
                                acc
                            } else {
                                &acc + &(&a[i][k] * &b[k][j])
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Product of generator matrices; row i holds α_i.w.
    pub fn word_to_mat(&self, word: &[usize]) -> Result<Matrix, CoxeterError> {
        let mut m = self.identity_matrix();
        for &s in word {
            if s >= self.rank() {
                return Err(CoxeterError::BadGenerator(s));
            }
            m = Self::mat_mul(&m, &self.matgens[s]);
        }
        Ok(m)
    }

    /// Lexicographically smallest reduced word, by peeling off least left descents.
    pub fn mat_to_word(&self, m: &Matrix) -> Result<Vec<usize>, CoxeterError> {
        let mut m = m.clone();
        let mut word = Vec::new();
        let id = self.identity_matrix();
        for _ in 0..1_000_000 {
            match (0..self.rank()).find(|&s| vector_sign(&m[s]) < 0) {
                Some(s) => {
                    word.push(s);
                    m = Self::mat_mul(&self.matgens[s], &m);
                }
                None => {
                    return if m == id { Ok(word) } else { Err(CoxeterError::NotInGroup) };
                }
            }
        }
        Err(CoxeterError::NotInGroup)
    }

    /// (left descents, right descents) of the element with matrix m.
    pub fn descent_sets_mat(&self, m: &Matrix) -> Result<(Vec<usize>, Vec<usize>), CoxeterError> {
        let left: Vec<usize> = (0..self.rank()).filter(|&s| vector_sign(&m[s]) < 0).collect();
        let mut word = self.mat_to_word(m)?;
        word.reverse();
        let inv = self.word_to_mat(&word)?;
        let right = (0..self.rank()).filter(|&s| vector_sign(&inv[s]) < 0).collect();
        Ok((left, right))
    }

    /// Index permutation of roots for a word: perm[i] = index of α_i.w.
    pub fn word_to_perm(&self, word: &[usize]) -> Result<Vec<u32>, CoxeterError> {
        let rs = self.root_system()?;
        let mut p: Vec<u32> = (0..rs.roots.len() as u32).collect();
        for &s in word {
            if s >= self.rank() {
                return Err(CoxeterError::BadGenerator(s));
            }
            for x in p.iter_mut() {
                *x = rs.permgens[s][*x as usize];
            }
        }
        Ok(p)
    }

    /// Length as the number of positive roots sent to negative ones.
    pub fn perm_length(&self, perm: &[u32]) -> Result<usize, CoxeterError> {
        let n = self.root_system()?.n_pos;
        Ok(perm[..n].iter().filter(|&&i| i as usize >= n).count())
    }

    /// Word of a root permutation, via least left descents.
    pub fn perm_to_word(&self, perm: &[u32]) -> Result<Vec<usize>, CoxeterError> {
        let rs = self.root_system()?;
        let n = rs.n_pos as u32;
        let mut p = perm.to_vec();
        let mut word = Vec::new();
        // α_s.(sw) = (α_s.s).w = -(α_s.w)
        loop {
            let Some(s) = (0..self.rank()).find(|&s| p[s] >= n) else { break };
            word.push(s);
            // perm of s·w: α_i.(sw) = (α_i.s).w
            p = (0..p.len()).map(|i| p[rs.permgens[s][i] as usize]).collect();
        }
        if p.iter().enumerate().any(|(i, &x)| i as u32 != x) {
            return Err(CoxeterError::NotInGroup);
        }
        Ok(word)
    }

    /// Permutation of the reflection in the positive root with the given index.
    pub fn reflection_perm(&self, root: usize) -> Result<Vec<u32>, CoxeterError> {
        let rs = self.root_system()?;
        if root >= rs.roots.len() {
            return Err(CoxeterError::BadRoot(root));
        }
        let pos = root % rs.n_pos;
        let (s, w) = &rs.origin[pos];
        // α_s.w = β gives s_β = w⁻¹ s w
        let mut word: Vec<usize> = w.iter().rev().copied().collect();
        word.push(*s);
        word.extend_from_slice(w);
        self.word_to_perm(&word)
    }

    // ---- enumerated elements ----

    /// The element table, built on first use.
    pub fn elements(&self) -> Result<&ElementTable, CoxeterError> {
        let order = self.order.ok_or(CoxeterError::Infinite)?;
        if order > self.enumeration_cap {
            return Err(CoxeterError::TooLarge { order, cap: self.enumeration_cap });
        }
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = ElementTable::build(self)?;
        let _ = self.table.set(Box::new(t));
        Ok(self.table.get().expect("just set"))
    }

    pub fn longest_element(&self) -> Result<ElemId, CoxeterError> {
        let t = self.elements()?;
        Ok((t.size() - 1) as ElemId)
    }

    /// Reduced word of w0 without enumerating the group.
    pub fn longest_word(&self) -> Result<Vec<usize>, CoxeterError> {
        let rs = self.root_system()?;
        let n = rs.n_pos as u32;
        let mut word = Vec::new();
        let mut p = self.word_to_perm(&[])?;
        // s·w is longer while α_s.w is positive
        while let Some(s) = (0..self.rank()).find(|&s| p[s] < n) {
            word.push(s);
            p = (0..p.len()).map(|i| p[rs.permgens[s][i] as usize]).collect();
        }
        word.reverse();
        Ok(word)
    }

    /// Left and right descent sets of an enumerated element.
    pub fn descent_sets(&self, w: ElemId) -> Result<(Vec<usize>, Vec<usize>), CoxeterError> {
        let t = self.elements()?;
        Ok((genset_members(t.left_descents(w)), genset_members(t.right_descents(w))))
    }

    /// Bruhat order via the standard descent recursion.
    pub fn bruhat_leq(&self, y: ElemId, w: ElemId) -> Result<bool, CoxeterError> {
        let t = self.elements()?;
        Ok(t.bruhat_leq(y, w))
    }

    /// Distinguished left coset representatives X of W' = <J>: no right descent in J.
    pub fn coset_reps(&self, j: &[usize]) -> Result<Vec<ElemId>, CoxeterError> {
        let t = self.elements()?;
        let mask = genset(j);
        Ok((0..t.size() as ElemId).filter(|&x| t.right_descents(x) & mask == 0).collect())
    }

    pub fn deodhar_case(&self, j: &[usize], x: ElemId, s: usize) -> Result<DeodharCase, CoxeterError> {
        let t = self.elements()?;
        let mask = genset(j);
        if t.right_descents(x) & mask != 0 {
            return Err(CoxeterError::NotCosetRep);
        }
        Ok(t.deodhar_case(mask, x, s))
    }

    /// Conjugacy classes, each with its least (length, word) representative.
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>, CoxeterError> {
        let t = self.elements()?;
        let n = t.size();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for w in 0..n {
            if class_of[w] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![w as ElemId];
            class_of[w] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for s in 0..t.rank() {
                    let y = t.lmul(s, t.rmul(x, s));
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            // ids follow shortlex order, so the first member is the representative
            classes.push(ConjugacyClass { representative: members[0], members });
        }
        Ok(classes)
    }

    /// Elements with w² = 1, identity included.
    pub fn involutions(&self) -> Result<Vec<ElemId>, CoxeterError> {
        let t = self.elements()?;
        Ok((0..t.size() as ElemId).filter(|&w| t.inverse(w) == w).collect())
    }

    /// The reflection subgroup generated by reflections in the given roots.
    pub fn reflection_subgroup(&self, root_indices: &[usize]) -> Result<(CoxeterGroup, Fusion), CoxeterError> {
        let rs = self.root_system()?;
        let total = rs.roots.len();
        for &r in root_indices {
            if r >= total {
                return Err(CoxeterError::BadRoot(r));
            }
        }
        let gens: Vec<Vec<u32>> = root_indices.iter().map(|&r| self.reflection_perm(r)).collect::<Result<_, _>>()?;
        // orbit of the given roots under the generated group
        let mut inside = vec![false; total];
        let mut queue: Vec<usize> = Vec::new();
        for &r in root_indices {
            for x in [r, (r + rs.n_pos) % total] {
                if !inside[x] {
                    inside[x] = true;
                    queue.push(x);
                }
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let r = queue[i];
            for g in &gens {
                let y = g[r] as usize;
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        let pos: Vec<usize> = (0..rs.n_pos).filter(|&r| inside[r]).collect();
        let refl: HashMap<usize, Vec<u32>> =
            pos.iter().map(|&r| Ok((r, self.reflection_perm(r)?))).collect::<Result<_, CoxeterError>>()?;
        let simple: Vec<usize> = pos
            .iter()
            .copied()
            .filter(|&b| pos.iter().all(|&g| g == b || (refl[&b][g] as usize) < rs.n_pos))
            .collect();
        let k = simple.len();
        let mut entries = vec![vec![Cyc::zero(); k]; k];
        for (a, &bi) in simple.iter().enumerate() {
            for (b, &bj) in simple.iter().enumerate() {
                // s_{β_i}(β_j) = β_j - c_ij β_i
                let img = &rs.roots[refl[&bi][bj] as usize];
                let diff: Vec<Cyc> = rs.roots[bj].iter().zip(img.iter()).map(|(x, y)| x - y).collect();
                let piv = rs.roots[bi].iter().position(|c| !c.is_zero()).expect("nonzero root");
                entries[a][b] = diff[piv].div(&rs.roots[bi][piv])?;
            }
        }
        let sub = CoxeterGroup::new(CartanMatrix::new(entries)?)?;
        let parabolic = simple.iter().all(|&r| r < self.rank());
        Ok((sub, Fusion { parent_name: self.name.clone(), sub_j: simple, parabolic }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fusion {
    pub parent_name: String,
    /// Parent root indices of the subgroup's simple reflections.
    pub sub_j: Vec<usize>,
    pub parabolic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: ElemId,
    pub members: Vec<ElemId>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The three mutually exclusive cases for s acting on x ∈ X.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeodharCase {
    /// sx < x, sx ∈ X.
    Down,
    /// sx > x, sx ∈ X.
    Up,
    /// sx = xt with t ∈ J.
    Cross(usize),
}

/// Multiplication tables and descent data for every element of a finite group.
pub struct ElementTable {
    rank: usize,
    rmul: Vec<ElemId>,
    lmul: Vec<ElemId>,
    length: Vec<u16>,
    inverse: Vec<ElemId>,
    ldesc: Vec<GenSet>,
    rdesc: Vec<GenSet>,
    parent: Vec<ElemId>,
    last: Vec<u8>,
}

impl ElementTable {
    fn build(g: &CoxeterGroup) -> Result<ElementTable, CoxeterError> {
        let rs = g.root_system()?;
        let n = g.rank();
        let order = g.order.ok_or(CoxeterError::Infinite)? as usize;
        type Key = SmallVec<[u16; 8]>;
        let mut index: HashMap<Key, ElemId> = HashMap::with_capacity(order);
        let mut keys: Vec<Key> = Vec::with_capacity(order);
        let mut rmul = vec![ElemId::MAX; order * n];
        let mut length = Vec::with_capacity(order);
        let mut parent = Vec::with_capacity(order);
        let mut last = Vec::with_capacity(order);
        let id_key: Key = (0..n as u16).collect();
        index.insert(id_key.clone(), 0);
        keys.push(id_key);
        length.push(0u16);
        parent.push(0);
        last.push(u8::MAX);
        let mut i = 0;
        while i < keys.len() {
            for s in 0..n {
                let k: Key = keys[i].iter().map(|&r| rs.permgens[s][r as usize] as u16).collect();
                let id = match index.get(&k) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len() as ElemId;
                        index.insert(k.clone(), id);
                        keys.push(k);
                        length.push(length[i] + 1);
                        parent.push(i as ElemId);
                        last.push(s as u8);
                        id
                    }
                };
                rmul[i * n + s] = id;
            }
            i += 1;
        }
        let size = keys.len();
        drop(index);
        let mut inverse = vec![0 as ElemId; size];
        for w in 1..size {
            // word of w reversed, applied by right multiplication
            let mut x: ElemId = 0;
            let mut y = w as ElemId;
            while y != 0 {
                x = rmul[x as usize * n + last[y as usize] as usize];
                y = parent[y as usize];
            }
            inverse[w] = x;
        }
        let mut lmul = vec![0 as ElemId; size * n];
        for w in 0..size {
            for s in 0..n {
                lmul[w * n + s] = inverse[rmul[inverse[w] as usize * n + s] as usize];
            }
        }
        let mut ldesc = vec![0; size];
        let mut rdesc = vec![0; size];
        for w in 0..size {
            for s in 0..n {
                if length[rmul[w * n + s] as usize] < length[w] {
                    rdesc[w] |= 1 << s;
                }
                if length[lmul[w * n + s] as usize] < length[w] {
                    ldesc[w] |= 1 << s;
                }
            }
        }
        Ok(ElementTable { rank: n, rmul, lmul, length, inverse, ldesc, rdesc, parent, last })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.length.len()
    }

    /// w·s
    #[inline]
    pub fn rmul(&self, w: ElemId, s: usize) -> ElemId {
        self.rmul[w as usize * self.rank + s]
    }

    /// s·w
    #[inline]
    pub fn lmul(&self, s: usize, w: ElemId) -> ElemId {
        self.lmul[w as usize * self.rank + s]
    }

    #[inline]
    pub fn length(&self, w: ElemId) -> usize {
        self.length[w as usize] as usize
    }

    #[inline]
    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inverse[w as usize]
    }

    #[inline]
    pub fn left_descents(&self, w: ElemId) -> GenSet {
        self.ldesc[w as usize]
    }

    #[inline]
    pub fn right_descents(&self, w: ElemId) -> GenSet {
        self.rdesc[w as usize]
    }

    #[inline]
    pub fn has_left_descent(&self, w: ElemId, s: usize) -> bool {
        self.ldesc[w as usize] & (1 << s) != 0
    }

    /// Lexicographically smallest reduced word.
    pub fn word(&self, w: ElemId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length(w));
        let mut y = w;
        while y != 0 {
            out.push(self.last[y as usize] as usize);
            y = self.parent[y as usize];
        }
        out.reverse();
        out
    }

    pub fn from_word(&self, word: &[usize]) -> ElemId {
        word.iter().fold(0, |w, &s| self.rmul(w, s))
    }

    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        self.word(y).iter().fold(x, |w, &s| self.rmul(w, s))
    }

    pub fn longest(&self) -> ElemId {
        (self.size() - 1) as ElemId
    }

    pub fn bruhat_leq(&self, mut y: ElemId, mut w: ElemId) -> bool {
        loop {
            if y == w {
                return true;
            }
            if self.length(y) >= self.length(w) {
                return false;
            }
            if y == 0 {
                return true;
            }
            let s = self.ldesc[w as usize].trailing_zeros() as usize;
            w = self.lmul(s, w);
            if self.has_left_descent(y, s) {
                y = self.lmul(s, y);
            }
        }
    }

    pub fn deodhar_case(&self, jmask: GenSet, x: ElemId, s: usize) -> DeodharCase {
        let sx = self.lmul(s, x);
        if self.length(sx) < self.length(x) {
            return DeodharCase::Down;
        }
        if self.right_descents(sx) & jmask == 0 {
            return DeodharCase::Up;
        }
        let t = (0..self.rank).find(|&t| self.rmul(x, t) == sx).expect("sx = xt for some t in J");
        DeodharCase::Cross(t)
    }

    /// Whether every letter of w lies in the mask.
    pub fn in_parabolic(&self, w: ElemId, mask: GenSet) -> bool {
        let mut y = w;
        while y != 0 {
            if mask & (1 << self.last[y as usize]) == 0 {
                return false;
            }
            y = self.parent[y as usize];
        }
        true
    }

    /// w = x·u with x having no right descent in J and u ∈ W_J.
    pub fn parabolic_split(&self, w: ElemId, jmask: GenSet) -> (ElemId, ElemId) {
        let mut x = w;
        let mut u_word = Vec::new();
        loop {
            let d = self.rdesc[x as usize] & jmask;
            if d == 0 {
                break;
            }
            let t = d.trailing_zeros() as usize;
            x = self.rmul(x, t);
            u_word.push(t);
        }
        u_word.reverse();
        (x, self.from_word(&u_word))
    }
}

//! Kazhdan–Lusztig polynomials P*_{y,w} and M-elements for arbitrary weights.
//!
//! The engine works relative to a standard parabolic W' = <J> inside an
//! ambient parabolic W_K: it computes p*_{xu,yv} for x, y in the distinguished
//! coset representatives X and u, v in a fixed subset of W' (a left cell, a
//! union of cells, or all of W'). With J empty this is the ordinary recursion.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::coxgroup::{genset_members, CoxeterError, CoxeterGroup, DeodharCase, ElemId, ElementTable, GenSet};
use crate::ring::{Laurent, WeightFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KlError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("element {0} is not in the computed block")]
    NotInBlock(ElemId),
    #[error("M^s_(y,w) needs sy<y<w<sw and L(s)>0 (s={s}, y={y}, w={w})")]
    MPrecondition { s: usize, y: ElemId, w: ElemId },
    #[error("weight function has rank {got}, group has rank {expected}")]
    WeightRank { expected: usize, got: usize },
    #[error("certification failed: {0}")]
    Certification(&'static str),
}

/// Known M^t_{u,w} of the parabolic subgroup, keyed by (t, u).
#[derive(Debug, Clone, Default)]
pub struct SubgroupM {
    map: HashMap<(u8, ElemId), Vec<(ElemId, Laurent)>>,
}

impl SubgroupM {
    pub fn new() -> SubgroupM {
        SubgroupM::default()
    }

    pub fn insert(&mut self, t: usize, u: ElemId, w: ElemId, m: Laurent) {
        if !m.is_zero() {
            self.map.entry((t as u8, u)).or_default().push((w, m));
        }
    }

    /// All (w, M^t_{u,w}) with u<w<tw.
    pub fn row(&self, t: usize, u: ElemId) -> &[(ElemId, Laurent)] {
        self.map.get(&(t as u8, u)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn get(&self, t: usize, u: ElemId, w: ElemId) -> Option<&Laurent> {
        self.row(t, u).iter().find(|(x, _)| *x == w).map(|(_, m)| m)
    }

    pub fn len(&self) -> usize {
        self.map.values().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// The unique bar-invariant M with M − f ∈ A_{<0}.
pub fn symmetrize(f: &Laurent) -> Laurent {
    let (_, c0, pos) = f.split();
    let mut m = &pos + &pos.bar();
    if !c0.is_zero() {
        m = &m + &Laurent::constant(c0);
    }
    m
}

/// Elements of the standard parabolic subgroup generated by `mask`, in id order.
pub fn parabolic_elements(table: &ElementTable, mask: GenSet) -> Vec<ElemId> {
    let gens = genset_members(mask);
    let mut seen: HashMap<ElemId, ()> = HashMap::new();
    let mut out = vec![0 as ElemId];
    seen.insert(0, ());
    let mut i = 0;
    while i < out.len() {
        let w = out[i];
        for &s in &gens {
            let v = table.rmul(w, s);
            if seen.insert(v, ()).is_none() {
                out.push(v);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// L(w) for an element of the table.
pub fn weighted_length(table: &ElementTable, weights: &WeightFunction, w: ElemId) -> i32 {
    weights.of_word(&table.word(w))
}

/// Relative KL polynomials and M-elements on the block X·U.
pub struct RelativeKl<'a> {
    table: &'a ElementTable,
    weights: WeightFunction,
    kmask: GenSet,
    jmask: GenSet,
    xs: Vec<ElemId>,
    us: Vec<ElemId>,
    elems: Vec<ElemId>,
    index: HashMap<ElemId, u32>,
    x_index: HashMap<ElemId, u32>,
    u_index: HashMap<ElemId, u32>,
    /// pstar[column][row]
    pstar: Vec<Vec<Laurent>>,
    /// per column: (s, [(row, M^s_{row,column})])
    mvals: Vec<Vec<(u8, Vec<(u32, Laurent)>)>>,
}

impl<'a> RelativeKl<'a> {
    /// Runs the recursion on X·U where X are the representatives of W_J in W_K.
    ///
    /// `us` must be a union of left cells of W_J (or all of W_J) and `sub`
    /// must hold M^t_{u,w} for all u, w in `us` lying in a common left cell.
    pub fn compute(
        table: &'a ElementTable,
        weights: &WeightFunction,
        kmask: GenSet,
        jmask: GenSet,
        us: &[ElemId],
        sub: &SubgroupM,
    ) -> Result<RelativeKl<'a>, KlError> {
        if weights.rank() != table.rank() {
            return Err(KlError::WeightRank { expected: table.rank(), got: weights.rank() });
        }
        let xs: Vec<ElemId> = parabolic_elements(table, kmask)
            .into_iter()
            .filter(|&x| table.right_descents(x) & jmask == 0)
            .collect();
        let mut us = us.to_vec();
        us.sort_unstable();
        let nx = xs.len();
        let nu = us.len();
        let x_index: HashMap<ElemId, u32> = xs.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let u_index: HashMap<ElemId, u32> = us.iter().enumerate().map(|(i, &u)| (u, i as u32)).collect();
        let mut elems = Vec::with_capacity(nx * nu);
        for &x in &xs {
            for &u in &us {
                elems.push(table.mul(x, u));
            }
        }
        let index: HashMap<ElemId, u32> = elems.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let mut engine = RelativeKl {
            table,
            weights: weights.clone(),
            kmask,
            jmask,
            xs,
            us,
            elems,
            index,
            x_index,
            u_index,
            pstar: Vec::new(),
            mvals: Vec::new(),
        };
        engine.run(sub)?;
        Ok(engine)
    }

    fn run(&mut self, sub: &SubgroupM) -> Result<(), KlError> {
        let t = self.table;
        let nx = self.xs.len();
        let nu = self.us.len();
        let nb = nx * nu;
        // strict Bruhat predecessors inside X, longest first
        let below: Vec<Vec<u32>> = (0..nx)
            .map(|yi| {
                let y = self.xs[yi];
                let mut v: Vec<u32> = (0..nx as u32)
                    .filter(|&xi| xi as usize != yi && t.bruhat_leq(self.xs[xi as usize], y))
                    .collect();
                v.sort_by_key(|&xi| core::cmp::Reverse(t.length(self.xs[xi as usize])));
                v
            })
            .collect();
        let mut order: Vec<u32> = (0..nb as u32).collect();
        order.sort_by_key(|&b| (t.length(self.elems[b as usize]), b));
        // Deodhar cases of (s, x), computed once
        let cases: Vec<Vec<DeodharCase>> = self
            .xs
            .iter()
            .map(|&x| (0..t.rank()).map(|s| t.deodhar_case(self.jmask, x, s)).collect())
            .collect();
        let tu_index = |tt: usize, ui: usize| -> Option<usize> {
            self.u_index.get(&t.lmul(tt, self.us[ui])).map(|&i| i as usize)
        };
        let mut columns: Vec<Vec<Laurent>> = vec![Vec::new(); nb];
        let mut mcols: Vec<Vec<(u8, Vec<(u32, Laurent)>)>> = vec![Vec::new(); nb];
        for &c in &order {
            let c = c as usize;
            let (yi, vi) = (c / nu, c % nu);
            let y = self.xs[yi];
            let mut col = vec![Laurent::zero(); nb];
            col[c] = Laurent::one();
            if y != 0 {
                let s = t.left_descents(y).trailing_zeros() as usize;
                let ls = self.weights.get(s);
                let syi = self.x_index[&t.lmul(s, y)] as usize;
                let cp = syi * nu + vi;
                let prev = &columns[cp];
                let mlist: &[(u32, Laurent)] = mcols[cp]
                    .iter()
                    .find(|(g, _)| *g as usize == s)
                    .map(|(_, l)| l.as_slice())
                    .unwrap_or(&[]);
                for &xi in &below[yi] {
                    let xi = xi as usize;
                    let x = self.xs[xi];
                    let case = cases[xi][s];
                    for ui in 0..nu {
                        let row = xi * nu + ui;
                        let val = if ls == 0 {
                            match case {
                                DeodharCase::Down | DeodharCase::Up => {
                                    let sxi = self.x_index[&t.lmul(s, x)] as usize;
                                    prev[sxi * nu + ui].clone()
                                }
                                DeodharCase::Cross(tt) => match tu_index(tt, ui) {
                                    Some(tui) => prev[xi * nu + tui].clone(),
                                    None => Laurent::zero(),
                                },
                            }
                        } else {
                            let ptilde = |row: usize| {
                                let mut acc = Laurent::zero();
                                for (zrow, m) in mlist {
                                    let p = &columns[*zrow as usize][row];
                                    if !p.is_zero() {
                                        acc = &acc + &(p * m);
                                    }
                                }
                                acc
                            };
                            match case {
                                DeodharCase::Down => {
                                    let sxi = self.x_index[&t.lmul(s, x)] as usize;
                                    let mut v = prev[sxi * nu + ui].clone();
                                    v = &v + &prev[row].shift(ls);
                                    &v - &ptilde(row)
                                }
                                DeodharCase::Up => {
                                    let sxi = self.x_index[&t.lmul(s, x)] as usize;
                                    col[sxi * nu + ui].shift(-ls)
                                }
                                DeodharCase::Cross(tt) => {
                                    let u = self.us[ui];
                                    if t.length(t.lmul(tt, u)) > t.length(u) {
                                        Laurent::zero()
                                    } else {
                                        let p = &prev[row];
                                        let mut v = &p.shift(ls) + &p.shift(-ls);
                                        v = &v - &ptilde(row);
                                        if let Some(tui) = tu_index(tt, ui) {
                                            v = &v + &prev[xi * nu + tui];
                                        }
                                        for (w, m) in sub.row(tt, u) {
                                            if let Some(&wi) = self.u_index.get(w) {
                                                let q = &prev[xi * nu + wi as usize];
                                                if !q.is_zero() {
                                                    v = &v + &(m * q);
                                                }
                                            }
                                        }
                                        v
                                    }
                                }
                            }
                        };
                        col[row] = val;
                    }
                }
            }
            columns[c] = col;
            mcols[c] = self.m_column(c, &below[yi], &cases, &columns, sub);
        }
        self.pstar = columns;
        self.mvals = mcols;
        Ok(())
    }

    /// M^s_{row,c} for every s with s·c > c and L(s) > 0.
    fn m_column(
        &self,
        c: usize,
        below: &[u32],
        cases: &[Vec<DeodharCase>],
        columns: &[Vec<Laurent>],
        sub: &SubgroupM,
    ) -> Vec<(u8, Vec<(u32, Laurent)>)> {
        let t = self.table;
        let nu = self.us.len();
        let (yi, vi) = (c / nu, c % nu);
        let w = self.elems[c];
        let col = &columns[c];
        let mut out = Vec::new();
        for s in genset_members(self.kmask) {
            let ls = self.weights.get(s);
            if ls == 0 || t.has_left_descent(w, s) {
                continue;
            }
            let mut list: Vec<(u32, Laurent)> = Vec::new();
            for xi in core::iter::once(yi as u32).chain(below.iter().copied()) {
                let xi = xi as usize;
                for ui in 0..nu {
                    let row = xi * nu + ui;
                    let u = self.us[ui];
                    let (down, tt) = match cases[xi][s] {
                        DeodharCase::Down => (true, None),
                        DeodharCase::Cross(tt) if t.length(t.lmul(tt, u)) < t.length(u) => (true, Some(tt)),
                        _ => (false, None),
                    };
                    if !down {
                        continue;
                    }
                    let m = if xi == yi {
                        match tt {
                            Some(tt) => sub.get(tt, u, self.us[vi]).cloned().unwrap_or_default(),
                            None => Laurent::zero(),
                        }
                    } else {
                        let mut f = col[row].shift(ls);
                        for (zrow, mz) in &list {
                            let p = &columns[*zrow as usize][row];
                            if !p.is_zero() {
                                f = &f - &(p * mz);
                            }
                        }
                        if let Some(tt) = tt {
                            for (w2, m2) in sub.row(tt, u) {
                                if let Some(&wi) = self.u_index.get(w2) {
                                    let q = &col[xi * nu + wi as usize];
                                    if !q.is_zero() {
                                        f = &f + &(m2 * q);
                                    }
                                }
                            }
                        }
                        symmetrize(&f)
                    };
                    if !m.is_zero() {
                        list.push((row as u32, m));
                    }
                }
            }
            if !list.is_empty() {
                out.push((s as u8, list));
            }
        }
        out
    }

    pub fn table(&self) -> &ElementTable {
        self.table
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn coset_reps(&self) -> &[ElemId] {
        &self.xs
    }

    pub fn subset(&self) -> &[ElemId] {
        &self.us
    }

    pub fn jmask(&self) -> GenSet {
        self.jmask
    }

    pub fn kmask(&self) -> GenSet {
        self.kmask
    }

    /// Block elements x·u, in (x, u) order.
    pub fn elements(&self) -> &[ElemId] {
        &self.elems
    }

    pub fn contains(&self, w: ElemId) -> bool {
        self.index.contains_key(&w)
    }

    fn block_index(&self, x: ElemId, u: ElemId) -> Result<usize, KlError> {
        let xi = *self.x_index.get(&x).ok_or(KlError::NotInBlock(x))? as usize;
        let ui = *self.u_index.get(&u).ok_or(KlError::NotInBlock(u))? as usize;
        Ok(xi * self.us.len() + ui)
    }

    fn elem_index(&self, w: ElemId) -> Result<usize, KlError> {
        self.index.get(&w).map(|&i| i as usize).ok_or(KlError::NotInBlock(w))
    }

    /// p*_{xu,yv}
    pub fn rel_pstar(&self, x: ElemId, u: ElemId, y: ElemId, v: ElemId) -> Result<&Laurent, KlError> {
        let row = self.block_index(x, u)?;
        let col = self.block_index(y, v)?;
        Ok(&self.pstar[col][row])
    }

    /// p*_{a,b} for block elements a, b.
    pub fn pstar_of(&self, a: ElemId, b: ElemId) -> Result<&Laurent, KlError> {
        let row = self.elem_index(a)?;
        let col = self.elem_index(b)?;
        Ok(&self.pstar[col][row])
    }

    /// M^s_{a,b} for block elements a, b with sa<a<b<sb.
    pub fn m_of(&self, s: usize, a: ElemId, b: ElemId) -> Result<Laurent, KlError> {
        let t = self.table;
        if self.weights.get(s) == 0 || !t.has_left_descent(a, s) || t.has_left_descent(b, s) {
            return Err(KlError::MPrecondition { s, y: a, w: b });
        }
        let row = self.elem_index(a)? as u32;
        let col = self.elem_index(b)?;
        Ok(self.mvals[col]
            .iter()
            .find(|(g, _)| *g as usize == s)
            .and_then(|(_, l)| l.iter().find(|(r, _)| *r == row))
            .map(|(_, m)| m.clone())
            .unwrap_or_default())
    }

    /// M^s_{xu,yv}
    pub fn rel_m(&self, s: usize, x: ElemId, u: ElemId, y: ElemId, v: ElemId) -> Result<Laurent, KlError> {
        let a = self.elems[self.block_index(x, u)?];
        let b = self.elems[self.block_index(y, v)?];
        self.m_of(s, a, b)
    }

    /// Every nonzero M^s_{a,b} in the block as (s, a, b, M).
    pub fn m_entries(&self) -> impl Iterator<Item = (usize, ElemId, ElemId, &Laurent)> + '_ {
        self.mvals.iter().enumerate().flat_map(move |(c, per_s)| {
            per_s.iter().flat_map(move |(s, list)| {
                list.iter().map(move |(r, m)| (*s as usize, self.elems[*r as usize], self.elems[c], m))
            })
        })
    }

    /// Column of p*_{·, b} as (element, value), nonzero entries only.
    pub fn column(&self, b: ElemId) -> Result<Vec<(ElemId, Laurent)>, KlError> {
        let col = self.elem_index(b)?;
        Ok(self.pstar[col]
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(r, p)| (self.elems[r], p.clone()))
            .collect())
    }

    /// Checks degree bounds on every computed value.
    ///
    /// p* lies in A_{<0} off the diagonal and ε^{L(b)−L(a)}p*_{a,b} in A_{≥0};
    /// each M is bar-invariant with ε^{L(s)}M in A_{>0}.
    pub fn certify(&self) -> Result<(), KlError> {
        let lw: Vec<i32> = self.elems.iter().map(|&e| weighted_length(self.table, &self.weights, e)).collect();
        for (c, col) in self.pstar.iter().enumerate() {
            for (r, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if r == c {
                    if !p.is_one() {
                        return Err(KlError::Certification("diagonal p* is not 1"));
                    }
                    continue;
                }
                if !p.all_negative() {
                    return Err(KlError::Certification("p* not in A_<0"));
                }
                if !p.shift(lw[c] - lw[r]).all_nonnegative() {
                    return Err(KlError::Certification("renormalized p not in A_>=0"));
                }
            }
        }
        for (s, _, _, m) in self.m_entries() {
            if !m.is_bar_invariant() {
                return Err(KlError::Certification("M not bar-invariant"));
            }
            if m.shift(self.weights.get(s)).min_exp().is_some_and(|e| e <= 0) {
                return Err(KlError::Certification("eps^L M not in A_>0"));
            }
        }
        Ok(())
    }
}

/// Ordinary KL data of a finite group (or of one of its standard parabolics).
pub struct KlTable<'a> {
    engine: RelativeKl<'a>,
}

impl<'a> KlTable<'a> {
    pub fn new(group: &'a CoxeterGroup, weights: &WeightFunction) -> Result<KlTable<'a>, KlError> {
        let table = group.elements()?;
        KlTable::for_parabolic(table, weights, (1 << table.rank()) - 1)
    }

    /// KL data of the parabolic subgroup generated by `kmask`, inside the ambient table.
    pub fn for_parabolic(table: &'a ElementTable, weights: &WeightFunction, kmask: GenSet) -> Result<KlTable<'a>, KlError> {
        let engine = RelativeKl::compute(table, weights, kmask, 0, &[0], &SubgroupM::new())?;
        Ok(KlTable { engine })
    }

    pub fn table(&self) -> &ElementTable {
        self.engine.table
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.engine.weights
    }

    pub fn elements(&self) -> &[ElemId] {
        self.engine.coset_reps()
    }

    /// P*_{y,w}
    pub fn kl_pstar(&self, y: ElemId, w: ElemId) -> Result<&Laurent, KlError> {
        self.engine.rel_pstar(y, 0, w, 0)
    }

    /// M^s_{y,w}; requires sy<y<w<sw and L(s)>0.
    pub fn kl_m(&self, s: usize, y: ElemId, w: ElemId) -> Result<Laurent, KlError> {
        let t = self.engine.table;
        if t.length(y) >= t.length(w) {
            return Err(KlError::MPrecondition { s, y, w });
        }
        self.engine.m_of(s, y, w)
    }

    /// C'_w = Σ_y P*_{y,w} T̃_y, nonzero terms only.
    pub fn cprime_expand(&self, w: ElemId) -> Result<Vec<(ElemId, Laurent)>, KlError> {
        self.engine.column(w)
    }

    pub fn m_entries(&self) -> impl Iterator<Item = (usize, ElemId, ElemId, &Laurent)> + '_ {
        self.engine.m_entries()
    }

    /// All M^t_{u,w} as a subgroup table for relative computations.
    pub fn to_subgroup_m(&self) -> SubgroupM {
        let mut sub = SubgroupM::new();
        for (s, a, b, m) in self.m_entries() {
            sub.insert(s, a, b, m.clone());
        }
        sub
    }

    pub fn certify(&self) -> Result<(), KlError> {
        self.engine.certify()
    }

    pub fn relative(&self) -> &RelativeKl<'a> {
        &self.engine
    }
}

/// Ordinary P*_{xu,yv} from relative data over the whole of W' and the KL data of W'.
pub fn assemble_pstar(
    rel: &RelativeKl<'_>,
    sub: &KlTable<'_>,
    x: ElemId,
    u: ElemId,
    y: ElemId,
    v: ElemId,
) -> Result<Laurent, KlError> {
    if x == y {
        return Ok(sub.kl_pstar(u, v)?.clone());
    }
    let mut acc = rel.rel_pstar(x, u, y, v)?.clone();
    let t = rel.table;
    for &w in rel.subset() {
        if w == u || !t.bruhat_leq(u, w) {
            continue;
        }
        let p = sub.kl_pstar(u, w)?;
        if p.is_zero() {
            continue;
        }
        let q = rel.rel_pstar(x, w, y, v)?;
        if !q.is_zero() {
            acc = &acc + &(p * q);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxgroup::CoxeterGroup;

    fn group(name: &str) -> CoxeterGroup {
        CoxeterGroup::from_name(name).unwrap()
    }

    #[test]
    fn a2_longest_and_generators() {
        let w = group("A2");
        let kl = KlTable::new(&w, &WeightFunction::equal(2)).unwrap();
        let t = w.elements().unwrap();
        let w0 = t.longest();
        assert_eq!(kl.kl_pstar(0, w0).unwrap(), &Laurent::eps(-3));
        assert_eq!(kl.kl_pstar(w0, w0).unwrap(), &Laurent::one());
        let s0 = t.from_word(&[0]);
        let s1 = t.from_word(&[1]);
        assert!(kl.kl_pstar(s0, s1).unwrap().is_zero());
        assert_eq!(kl.cprime_expand(s0).unwrap(), vec![(0, Laurent::eps(-1)), (s0, Laurent::one())]);
        assert_eq!(kl.cprime_expand(0).unwrap(), vec![(0, Laurent::one())]);
        kl.certify().unwrap();
    }

    #[test]
    fn unequal_m_values_from_covering_pairs() {
        // B2 with L(s0)=2, L(s1)=1: y=s1... take y with ty=w
        let w = group("B2");
        let t = w.elements().unwrap();
        for (a, b) in [(2i64, 1i64), (1, 2), (3, 1)] {
            let l = WeightFunction::validate(w.coxeter_matrix(), &[a, b]).unwrap();
            let kl = KlTable::new(&w, &l).unwrap();
            kl.certify().unwrap();
            for y in 0..t.size() as ElemId {
                for tt in 0..2 {
                    let wy = t.lmul(tt, y);
                    if t.length(wy) < t.length(y) {
                        continue;
                    }
                    for s in 0..2 {
                        if s == tt || !t.has_left_descent(y, s) || t.has_left_descent(wy, s) {
                            continue;
                        }
                        let (ls, lt) = (l.get(s), l.get(tt));
                        let m = kl.kl_m(s, y, wy).unwrap();
                        let expect = if ls < lt {
                            Laurent::zero()
                        } else if ls == lt {
                            Laurent::one()
                        } else {
                            &Laurent::eps(ls - lt) + &Laurent::eps(lt - ls)
                        };
                        assert_eq!(m, expect, "weights {:?} s={} y={:?}", (a, b), s, t.word(y));
                    }
                }
            }
        }
    }

    #[test]
    fn equal_parameter_m_is_minus_one_coefficient() {
        for name in ["A3", "B3", "H3"] {
            let w = group(name);
            let t = w.elements().unwrap();
            let kl = KlTable::new(&w, &WeightFunction::equal(w.rank())).unwrap();
            kl.certify().unwrap();
            for (s, y, x, m) in kl.m_entries() {
                assert!(t.has_left_descent(y, s) && !t.has_left_descent(x, s));
                assert_eq!(m, &Laurent::constant(kl.kl_pstar(y, x).unwrap().coeff(-1)));
            }
            // and every ε^{-1} coefficient with sy<y<w<sw appears
            let mut count = 0;
            for x in 0..t.size() as ElemId {
                for y in 0..t.size() as ElemId {
                    let c = kl.kl_pstar(y, x).unwrap().coeff(-1);
                    if c.is_zero() || y == x {
                        continue;
                    }
                    for s in 0..t.rank() {
                        if t.has_left_descent(y, s) && !t.has_left_descent(x, s) {
                            assert_eq!(kl.kl_m(s, y, x).unwrap(), Laurent::constant(c.clone()));
                            count += 1;
                        }
                    }
                }
            }
            assert!(count > 0);
        }
    }

    #[test]
    fn positivity_equal_parameters() {
        let w = group("H3");
        let t = w.elements().unwrap();
        let kl = KlTable::new(&w, &WeightFunction::equal(3)).unwrap();
        for x in 0..t.size() as ElemId {
            for (y, p) in kl.cprime_expand(x).unwrap() {
                let shifted = p.shift(t.length(x) as i32 - t.length(y) as i32);
                for (_, c) in shifted.terms() {
                    assert!(c.sign().unwrap() > 0);
                }
            }
        }
    }

    #[test]
    fn zero_weight_generator() {
        // B2 with L(s0)=0: C'_{s0} = T̃_{s0}
        let w = group("B2");
        let t = w.elements().unwrap();
        let l = WeightFunction::validate(w.coxeter_matrix(), &[0, 1]).unwrap();
        let kl = KlTable::new(&w, &l).unwrap();
        let s0 = t.from_word(&[0]);
        assert_eq!(kl.cprime_expand(s0).unwrap(), vec![(s0, Laurent::one())]);
        kl.certify().unwrap();
    }
}

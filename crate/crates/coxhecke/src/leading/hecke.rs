//! Character tables of Iwahori–Hecke algebras in the T̃ normalization
//! (T_w = ε^{L(w)}T̃_w): values trace(T̃_{w_C}, E_ε) on class representatives.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{Component, TypeLetter};
use crate::coxgroup::{genset, CoxeterGroup, ElemId, ElementTable, GenSet};
use crate::relcells::{left_cells, wgraph_trace, CellOptions, LeftCell};
use crate::ring::{Cyc, Laurent, Rat, WeightFunction};
use crate::sparse::{trace_of_word, SparseMat};

use super::classes::{ClassInfo, ClassPolynomials};
use super::linalg::solve_laurent;
use super::ordinary::{component_group, ordinary_table, project, OrdinaryTable};
use super::LeadingError;

/// An explicit matrix representation of the generators T̃_s.
#[derive(Debug, Clone)]
pub struct HeckeModel {
    pub label: String,
    pub dim: usize,
    pub gens: Vec<SparseMat>,
}

fn scalar(v: Laurent) -> SparseMat {
    vec![vec![(0, v)]]
}

/// The irreducible representations of a dihedral Hecke algebra with generators 0, 1.
pub fn dihedral_models(m: u32, weights: &WeightFunction) -> Vec<HeckeModel> {
    let (l0, l1) = (weights.get(0), weights.get(1));
    let plus = |l: i32| Laurent::eps(l);
    let minus = |l: i32| -Laurent::eps(-l);
    let mut out = vec![
        HeckeModel { label: "1_W".into(), dim: 1, gens: vec![scalar(plus(l0)), scalar(plus(l1))] },
        HeckeModel { label: "sgn".into(), dim: 1, gens: vec![scalar(minus(l0)), scalar(minus(l1))] },
    ];
    if m % 2 == 0 {
        out.push(HeckeModel { label: "sgn1".into(), dim: 1, gens: vec![scalar(plus(l0)), scalar(minus(l1))] });
        out.push(HeckeModel { label: "sgn2".into(), dim: 1, gens: vec![scalar(minus(l0)), scalar(plus(l1))] });
    }
    for j in 1..=((m as i64 - 1) / 2) {
        // trace(T̃_0 T̃_1) = ζ^j + ζ^{-j}
        let mu = &(&Laurent::constant(Cyc::two_cos(m, j)) + &Laurent::eps(l0 - l1)) + &Laurent::eps(l1 - l0);
        let t0 = vec![vec![(0, minus(l0))], vec![(0, Laurent::one()), (1, plus(l0))]];
        let t1 = vec![vec![(0, plus(l1)), (1, mu)], vec![(1, minus(l1))]];
        out.push(HeckeModel { label: format!("σ{}", j), dim: 2, gens: vec![t0, t1] });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeTable {
    pub weights: WeightFunction,
    /// Minimal-length class representatives as reduced words, in `ClassInfo` order.
    pub class_words: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    /// values[E][C] = trace(T̃_{w_C}, E_ε)
    pub values: Vec<Vec<Laurent>>,
}

impl HeckeTable {
    pub fn specialize(&self) -> Vec<Vec<Cyc>> {
        self.values.iter().map(|row| row.iter().map(|v| v.at_one()).collect()).collect()
    }

    /// trace(T̃_w, E_ε) for all E.
    pub fn traces(&self, polys: &ClassPolynomials, w: ElemId) -> Vec<Laurent> {
        self.values.iter().map(|row| polys.trace(w, row)).collect()
    }
}

/// Hecke character table of W. `cells` must be the left cells of (W, L) with W-graphs.
pub fn hecke_table(
    group: &CoxeterGroup,
    weights: &WeightFunction,
    info: &ClassInfo,
    ordinary: &OrdinaryTable,
    cells: &[LeftCell],
) -> Result<HeckeTable, LeadingError> {
    let table = group.elements()?;
    let comps = &group.typedec().components;
    let class_words: Vec<Vec<usize>> = (0..info.len()).map(|c| table.word(info.rep(c))).collect();
    let shell = |values: Vec<Vec<Laurent>>| HeckeTable {
        weights: weights.clone(),
        class_words: class_words.clone(),
        class_sizes: info.sizes(),
        labels: ordinary.labels.clone(),
        dims: (0..ordinary.len()).map(|e| ordinary.dim(e) as usize).collect(),
        values,
    };
    if comps.len() > 1 {
        return Ok(shell(product_values(group, weights, info, ordinary)?));
    }
    if comps.len() == 1 && comps[0].rank() == 2 && comps[0].kind != TypeLetter::A {
        return Ok(shell(dihedral_values(group, weights, info, ordinary, &comps[0])?));
    }
    Ok(shell(solve_table(group, weights, info, ordinary, cells)?))
}

/// Values on non-cuspidal classes come from restriction to a maximal parabolic subalgebra.
/// On cuspidal classes the cell modules fix every character up to the kernel of their
/// multiplicity matrix; the remaining freedom is removed by orthogonality against the
/// characters the cells already determine.
fn solve_table(
    group: &CoxeterGroup,
    weights: &WeightFunction,
    info: &ClassInfo,
    ordinary: &OrdinaryTable,
    cells: &[LeftCell],
) -> Result<Vec<Vec<Laurent>>, LeadingError> {
    let table = group.elements()?;
    let rank = group.rank();
    let n = ordinary.len();
    let k = info.len();
    if rank == 0 {
        return Ok(vec![vec![Laurent::one()]]);
    }
    let words: Vec<Vec<usize>> = (0..k).map(|c| table.word(info.rep(c))).collect();
    let mut values = vec![vec![Laurent::zero(); k]; n];
    let mut cuspidal = Vec::new();
    let mut by_missing: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for (c, w) in words.iter().enumerate() {
        match (0..rank).find(|s| !w.contains(s)) {
            Some(s) => by_missing[s].push(c),
            None => cuspidal.push(c),
        }
    }
    let w0 = table.longest();
    let central = info.size(info.class_of(w0)) == 1;
    if central {
        let c0 = info.class_of(w0);
        cuspidal.retain(|&c| c != c0);
        central_values(table, weights, info, ordinary, c0, &mut values)?;
    }
    let mut parabolics: Vec<Option<Parabolic>> = (0..rank).map(|_| None).collect();
    for (s, classes) in by_missing.iter().enumerate() {
        if !classes.is_empty() {
            let p = Parabolic::new(group, weights, info, ordinary, drop_one(rank, s))?;
            p.restricted_values(table, info, classes, &mut values)?;
            parabolics[s] = Some(p);
        }
    }

    let cell_rows: Vec<(Vec<Laurent>, Vec<i64>)> = cells
        .iter()
        .map(|cell| {
            let traces: Vec<Laurent> = words.iter().map(|w| wgraph_trace(&cell.wgraph, weights, w)).collect();
            let chi: Vec<Cyc> = traces.iter().map(|t| t.at_one()).collect();
            let mult = ordinary
                .decompose(&chi)
                .ok_or_else(|| LeadingError::CharacterTable("cell module does not specialize to a character".into()))?;
            Ok((traces, mult))
        })
        .collect::<Result<_, LeadingError>>()?;

    if !cuspidal.is_empty() {
        let mut rows = cell_rows.clone();
        let mut system = CellSystem::reduce(&rows, &cuspidal, n)?;
        for s in 0..rank {
            if system.free.is_empty() {
                break;
            }
            if parabolics[s].is_none() {
                parabolics[s] = Some(Parabolic::new(group, weights, info, ordinary, drop_one(rank, s))?);
            }
            let p = parabolics[s].as_ref().expect("built above");
            rows.extend(p.induced_rows(table, weights, info, &cuspidal)?);
            system = CellSystem::reduce(&rows, &cuspidal, n)?;
        }
        for (e, row) in system.particular.iter().enumerate() {
            for (i, &c) in cuspidal.iter().enumerate() {
                values[e][c] = row[i].clone();
            }
        }
        if !system.free.is_empty() {
            let polys = ClassPolynomials::compute(table, weights, info);
            let gram = class_gram(table, &polys, k);
            let symmetries = TableSymmetry::all(ordinary, table, info);
            // |exponent| ≤ L(w_C) for every trace on a class representative
            let bound = cuspidal.iter().map(|&c| crate::klbase::weighted_length(table, weights, info.rep(c))).max().unwrap_or(0);
            let t = system.orthogonality_solve(&values, &gram, &cuspidal, &symmetries, bound)?;
            for e in 0..n {
                for (fi, &f) in system.free.iter().enumerate() {
                    let kfe = system.kernel_entry(f, e);
                    if kfe.is_zero() {
                        continue;
                    }
                    for (i, &c) in cuspidal.iter().enumerate() {
                        let add = t[fi][i].scale_rat(&kfe);
                        values[e][c] = &values[e][c] + &add;
                    }
                }
            }
            verify_orthogonality(&values, &gram, &ordinary.labels)?;
        }
    }

    verify_symmetries(&values, table, info, ordinary)?;
    for (traces, mult) in &cell_rows {
        for c in 0..k {
            let mut acc = Laurent::zero();
            for (e, &m) in mult.iter().enumerate() {
                if m != 0 {
                    acc = &acc + &values[e][c].scale_rat(&Rat::int(m));
                }
            }
            if acc != traces[c] {
                return Err(LeadingError::CharacterTable("cell module traces disagree with the solved table".into()));
            }
        }
    }
    for (e, row) in values.iter().enumerate() {
        let spec: Vec<Cyc> = row.iter().map(|v| v.at_one()).collect();
        if spec != ordinary.values[e] {
            return Err(LeadingError::CharacterTable(format!("{} does not specialize correctly", ordinary.labels[e])));
        }
    }
    Ok(values)
}

fn drop_one(rank: usize, s: usize) -> Vec<usize> {
    (0..rank).filter(|&t| t != s).collect()
}

/// A maximal parabolic subalgebra with its Hecke table and the restriction multiplicities.
struct Parabolic {
    j: Vec<usize>,
    sub: CoxeterGroup,
    hecke: HeckeTable,
    polys: ClassPolynomials,
    /// restriction[E][E′] = ⟨Res E, E′⟩, equal to the multiplicity of E in Ind E′
    restriction: Vec<Vec<i64>>,
}

impl Parabolic {
    fn new(
        group: &CoxeterGroup,
        weights: &WeightFunction,
        info: &ClassInfo,
        ordinary: &OrdinaryTable,
        j: Vec<usize>,
    ) -> Result<Parabolic, LeadingError> {
        let table = group.elements()?;
        let sub = CoxeterGroup::new(group.cartan().submatrix(&j))?;
        let local = weights.restrict(&j);
        let (sub_info, sub_ord, hecke) = hecke_table_of(&sub, &local)?;
        let sub_table = sub.elements()?;
        let polys = ClassPolynomials::compute(sub_table, &local, &sub_info);
        let fusion: Vec<usize> = (0..sub_info.len())
            .map(|c| {
                let word: Vec<usize> = sub_table.word(sub_info.rep(c)).into_iter().map(|t| j[t]).collect();
                info.class_of(table.from_word(&word))
            })
            .collect();
        let order = Cyc::rational(Rat::new(1, sub_table.size() as i64));
        let restriction = (0..ordinary.len())
            .map(|e| {
                (0..sub_ord.len())
                    .map(|f| {
                        let mut acc = Cyc::zero();
                        for (c, &fc) in fusion.iter().enumerate() {
                            let term = &(&Cyc::int(sub_info.size(c) as i64) * &ordinary.values[e][fc]) * &sub_ord.values[f][c];
                            acc = &acc + &term;
                        }
                        (&acc * &order)
                            .as_integer()
                            .ok_or_else(|| LeadingError::CharacterTable("non-integral restriction multiplicity".into()))
                    })
                    .collect::<Result<Vec<i64>, LeadingError>>()
            })
            .collect::<Result<_, _>>()?;
        drop(sub_ord);
        Ok(Parabolic { j, sub, hecke, polys, restriction })
    }

    fn to_sub(&self, table: &ElementTable, w: ElemId) -> Result<ElemId, LeadingError> {
        let word: Vec<usize> =
            table.word(w).into_iter().map(|s| self.j.iter().position(|&t| t == s).expect("generator in J")).collect();
        Ok(self.sub.elements()?.from_word(&word))
    }

    /// Fills `values[E][C]` for classes whose representatives lie in the subgroup.
    fn restricted_values(
        &self,
        table: &ElementTable,
        info: &ClassInfo,
        classes: &[usize],
        values: &mut [Vec<Laurent>],
    ) -> Result<(), LeadingError> {
        for &c in classes {
            let x = self.to_sub(table, info.rep(c))?;
            let sub_traces = self.hecke.traces(&self.polys, x);
            for (e, mult) in self.restriction.iter().enumerate() {
                let mut acc = Laurent::zero();
                for (f, &m) in mult.iter().enumerate() {
                    if m != 0 {
                        acc = &acc + &sub_traces[f].scale_rat(&Rat::int(m));
                    }
                }
                values[e][c] = acc;
            }
        }
        Ok(())
    }

    /// Traces of every induced module Ind E′ on the given classes (zero elsewhere),
    /// with their multiplicity vectors.
    fn induced_rows(
        &self,
        table: &ElementTable,
        weights: &WeightFunction,
        info: &ClassInfo,
        classes: &[usize],
    ) -> Result<Vec<(Vec<Laurent>, Vec<i64>)>, LeadingError> {
        let sub_table = self.sub.elements()?;
        let jmask: GenSet = genset(&self.j);
        let coset_reps: Vec<ElemId> = (0..table.size() as ElemId).filter(|&x| table.right_descents(x) & jmask == 0).collect();
        let nsub = self.hecke.values.len();
        let mut traces = vec![vec![Laurent::zero(); info.len()]; nsub];
        for &c in classes {
            let word = table.word(info.rep(c));
            // Σ_x (x-diagonal block of T̃_w), expressed in the T̃ basis of the subalgebra
            let mut block: Vec<Laurent> = vec![Laurent::zero(); sub_table.size()];
            for &x in &coset_reps {
                let v = left_multiply(table, weights, &word, x);
                for (y, coeff) in v.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (xr, u) = table.parabolic_split(y as ElemId, jmask);
                    if xr == x {
                        let su = self.to_sub(table, u)? as usize;
                        block[su] = &block[su] + coeff;
                    }
                }
            }
            for (f, row) in self.hecke.values.iter().enumerate() {
                let mut acc = Laurent::zero();
                for (u, coeff) in block.iter().enumerate() {
                    if !coeff.is_zero() {
                        acc = &acc + &(coeff * &self.polys.trace(u as ElemId, row));
                    }
                }
                traces[f][c] = acc;
            }
        }
        Ok(traces
            .into_iter()
            .enumerate()
            .map(|(f, tr)| (tr, self.restriction.iter().map(|row| row[f]).collect()))
            .collect())
    }
}

/// T̃_{s_1}⋯T̃_{s_k}·T̃_x in the T̃ basis, as a dense vector.
fn left_multiply(table: &ElementTable, weights: &WeightFunction, word: &[usize], x: ElemId) -> Vec<Laurent> {
    let n = table.size();
    let mut v = vec![Laurent::zero(); n];
    v[x as usize] = Laurent::one();
    let mut support = vec![x];
    for &s in word.iter().rev() {
        let l = weights.get(s);
        let q = &Laurent::eps(l) - &Laurent::eps(-l);
        let mut next = vec![Laurent::zero(); n];
        let mut next_support = Vec::new();
        for &y in &support {
            let c = &v[y as usize];
            if c.is_zero() {
                continue;
            }
            let sy = table.lmul(s, y);
            let mut add = |z: ElemId, val: Laurent, next: &mut Vec<Laurent>| {
                if next[z as usize].is_zero() {
                    next_support.push(z);
                }
                next[z as usize] = &next[z as usize] + &val;
            };
            add(sy, c.clone(), &mut next);
            if table.length(sy) < table.length(y) && !q.is_zero() {
                add(y, c * &q, &mut next);
            }
        }
        next_support.sort_unstable();
        next_support.dedup();
        v = next;
        support = next_support;
    }
    v
}

/// G[C][C′] = Σ_w f̃_{w,C} f̃_{w⁻¹,C′}, so that Σ_w trace(T̃_w,E) trace(T̃_{w⁻¹},F) = hᴱ·G·hꟳ.
fn class_gram(table: &ElementTable, polys: &ClassPolynomials, k: usize) -> Vec<Vec<Laurent>> {
    let mut gram = vec![vec![Laurent::zero(); k]; k];
    for w in 0..table.size() as ElemId {
        let inv = polys.get(table.inverse(w));
        for (c, a) in polys.get(w) {
            for (d, b) in inv {
                let t = a * b;
                let slot = &mut gram[*c as usize][*d as usize];
                *slot = &*slot + &t;
            }
        }
    }
    gram
}

/// For central w₀, T̃_{w₀} acts on E by the scalar ±ε^{Σ_t L(t)χ_E(t)/dim E}, the sum over
/// reflections t, with the sign of w₀ on E.
fn central_values(
    table: &ElementTable,
    weights: &WeightFunction,
    info: &ClassInfo,
    ordinary: &OrdinaryTable,
    c0: usize,
    values: &mut [Vec<Laurent>],
) -> Result<(), LeadingError> {
    let mut reflection_classes: Vec<(usize, i64)> = Vec::new();
    for s in 0..table.rank() {
        let c = info.class_of(table.from_word(&[s]));
        if !reflection_classes.iter().any(|(d, _)| *d == c) {
            reflection_classes.push((c, weights.get(s) as i64));
        }
    }
    for (e, row) in values.iter_mut().enumerate() {
        let dim = ordinary.dim(e) as i64;
        let mut total = Cyc::zero();
        for &(c, l) in &reflection_classes {
            total = &total + &(&Cyc::int(info.size(c) as i64 * l) * &ordinary.values[e][c]);
        }
        let exponent = (&total * &Cyc::rational(Rat::new(1, dim)))
            .as_integer()
            .ok_or_else(|| LeadingError::CharacterTable("non-integral central exponent".into()))?;
        row[c0] = Laurent::monomial(exponent as i32, ordinary.values[e][c0].clone());
    }
    Ok(())
}

/// Checks every table symmetry and, for groups with cuspidal classes, orthogonality.
fn verify_symmetries(values: &[Vec<Laurent>], table: &ElementTable, info: &ClassInfo, ordinary: &OrdinaryTable) -> Result<(), LeadingError> {
    for sym in TableSymmetry::all(ordinary, table, info) {
        for (e, row) in values.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if values[sym.image[e]][c] != sym.apply(v).scale_rat(&Rat::int(sym.signs[c])) {
                    return Err(LeadingError::CharacterTable(format!("{} breaks a table symmetry", ordinary.labels[e])));
                }
            }
        }
    }
    Ok(())
}

fn verify_orthogonality(values: &[Vec<Laurent>], gram: &[Vec<Laurent>], labels: &[String]) -> Result<(), LeadingError> {
    let k = gram.len();
    let gv: Vec<Vec<Laurent>> = values
        .iter()
        .map(|h| (0..k).map(|c| (0..k).fold(Laurent::zero(), |acc, d| &acc + &(&gram[c][d] * &h[d]))).collect())
        .collect();
    for e in 0..values.len() {
        for f in e + 1..values.len() {
            let s = (0..k).fold(Laurent::zero(), |acc, c| &acc + &(&values[e][c] * &gv[f][c]));
            if !s.is_zero() {
                return Err(LeadingError::CharacterTable(format!("{} and {} are not orthogonal", labels[e], labels[f])));
            }
        }
    }
    Ok(())
}

/// A semilinear symmetry of the Hecke table: h_{τE}(C) = sign(C)·τ(h_E(C)), where τ applies
/// a Galois automorphism of the coefficients and optionally ε ↦ ε⁻¹. The bar part pairs E
/// with E ⊗ sgn and carries the sign (−1)^{l(w_C)}.
struct TableSymmetry {
    bar: bool,
    galois: i64,
    image: Vec<usize>,
    signs: Vec<i64>,
}

impl TableSymmetry {
    fn apply(&self, v: &Laurent) -> Laurent {
        let g = if self.galois == 1 { v.clone() } else { v.galois(self.galois) };
        if self.bar {
            g.bar()
        } else {
            g
        }
    }

    /// All symmetries visible on the ordinary table, the identity last.
    fn all(ordinary: &OrdinaryTable, table: &ElementTable, info: &ClassInfo) -> Vec<TableSymmetry> {
        let n = ordinary.len();
        let parity: Vec<i64> = (0..info.len()).map(|c| if table.length(info.rep(c)) % 2 == 0 { 1 } else { -1 }).collect();
        let conductor = ordinary.values.iter().flatten().fold(1u32, |acc, v| num_integer::Integer::lcm(&acc, &v.conductor()));
        let find = |row: Vec<Cyc>| ordinary.values.iter().position(|r| *r == row);
        let mut galois_images: Vec<(i64, Vec<usize>)> = Vec::new();
        for g in 1..conductor.max(2) as i64 {
            if num_integer::Integer::gcd(&g, &(conductor as i64)) != 1 {
                continue;
            }
            let image: Option<Vec<usize>> = (0..n).map(|e| find(ordinary.values[e].iter().map(|v| v.galois(g)).collect())).collect();
            if let Some(image) = image {
                if !galois_images.iter().any(|(_, im)| *im == image) {
                    galois_images.push((g, image));
                }
            }
        }
        let twist: Option<Vec<usize>> = (0..n)
            .map(|e| find(ordinary.values[e].iter().zip(&parity).map(|(v, &p)| v * &Cyc::int(p)).collect()))
            .collect();
        let mut out = Vec::new();
        for (g, image) in &galois_images {
            if let Some(twist) = &twist {
                out.push(TableSymmetry { bar: true, galois: *g, image: image.iter().map(|&e| twist[e]).collect(), signs: parity.clone() });
            }
            if *g != 1 {
                out.push(TableSymmetry { bar: false, galois: *g, image: image.clone(), signs: vec![1; info.len()] });
            }
        }
        out.push(TableSymmetry { bar: false, galois: 1, image: (0..n).collect(), signs: vec![1; info.len()] });
        out
    }
}

/// The cell-module equations Σ_E m(𝔠,E)·h_E(C) = trace(T̃_C, [𝔠]) on cuspidal classes,
/// in reduced echelon form.
struct CellSystem {
    /// pivot E per row, its coefficients on the free columns
    pivots: Vec<(usize, Vec<(usize, Rat)>)>,
    free: Vec<usize>,
    /// particular solution with all free columns zero, per E and cuspidal class
    particular: Vec<Vec<Laurent>>,
}

impl CellSystem {
    fn reduce(rows: &[(Vec<Laurent>, Vec<i64>)], cuspidal: &[usize], n: usize) -> Result<CellSystem, LeadingError> {
        let mut m: Vec<Vec<Rat>> = rows.iter().map(|(_, mult)| mult.iter().map(|&x| Rat::int(x)).collect()).collect();
        let mut rhs: Vec<Vec<Laurent>> = rows.iter().map(|(tr, _)| cuspidal.iter().map(|&c| tr[c].clone()).collect()).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            rhs.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            rhs[r] = rhs[r].iter().map(|v| v.scale_rat(&inv)).collect();
            for i in 0..m.len() {
                if i == r || m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].clone();
                for col in 0..n {
                    let t = &f * &m[r][col];
                    m[i][col] = &m[i][col] - &t;
                }
                for col in 0..cuspidal.len() {
                    let t = rhs[r][col].scale_rat(&f);
                    rhs[i][col] = &rhs[i][col] - &t;
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        if rhs[r..].iter().any(|row| row.iter().any(|v| !v.is_zero())) {
            return Err(LeadingError::CharacterTable("cell modules are inconsistent".into()));
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut particular = vec![vec![Laurent::zero(); cuspidal.len()]; n];
        let pivots = pivot_cols
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                particular[e] = rhs[i].clone();
                let coeffs = free.iter().filter(|&&f| !m[i][f].is_zero()).map(|&f| (f, m[i][f].clone())).collect();
                (e, coeffs)
            })
            .collect();
        Ok(CellSystem { pivots, free, particular })
    }

    /// Component of E in the kernel vector attached to the free column f.
    fn kernel_entry(&self, f: usize, e: usize) -> Rat {
        if e == f {
            return Rat::int(1);
        }
        self.pivots
            .iter()
            .find(|(p, _)| *p == e)
            .and_then(|(_, coeffs)| coeffs.iter().find(|(g, _)| *g == f))
            .map_or(Rat::int(0), |(_, q)| -q)
    }

    fn resolved(&self, e: usize) -> bool {
        !self.free.contains(&e) && self.pivots.iter().any(|(p, coeffs)| *p == e && coeffs.is_empty())
    }

    /// Solves for the kernel coordinates t_f(C) on cuspidal classes. `values` holds the
    /// particular solution. Every pair E ≠ E′ with at least one unresolved member gives
    /// hᴱ·G·hᴱ′ = 0, with the products t_f·G·t_g as extra unknowns. Each table symmetry τ
    /// contributes a copy of these equations in the unknowns τ(t), linked to t through
    /// h_{τE} = ±τ(h_E).
    fn orthogonality_solve(
        &self,
        values: &[Vec<Laurent>],
        gram: &[Vec<Laurent>],
        cuspidal: &[usize],
        symmetries: &[TableSymmetry],
        bound: i32,
    ) -> Result<Vec<Vec<Laurent>>, LeadingError> {
        let n = values.len();
        let k = gram.len();
        let nc = cuspidal.len();
        let nf = self.free.len();
        let pairs: Vec<(usize, usize)> = (0..nf).flat_map(|f| (f..nf).map(move |g| (f, g))).collect();
        let (np, nt) = (pairs.len(), nf * nc);
        let kernel: Vec<Vec<Rat>> = (0..n).map(|e| self.free.iter().map(|&f| self.kernel_entry(f, e)).collect()).collect();
        let gv: Vec<Vec<Laurent>> = values
            .iter()
            .map(|h| {
                (0..k)
                    .map(|c| {
                        let mut acc = Laurent::zero();
                        for (d, v) in h.iter().enumerate() {
                            if !v.is_zero() && !gram[c][d].is_zero() {
                                acc = &acc + &(&gram[c][d] * v);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let resolved: Vec<bool> = (0..n).map(|e| self.resolved(e)).collect();
        // equations in the local layout [Q pairs | t]
        let mut base: Vec<(Vec<Laurent>, Laurent)> = Vec::new();
        for e in 0..n {
            for e2 in e + 1..n {
                if resolved[e] && resolved[e2] {
                    continue;
                }
                let mut row = vec![Laurent::zero(); np + nt];
                for fi in 0..nf {
                    let (k1, k2) = (&kernel[e][fi], &kernel[e2][fi]);
                    for (i, &c) in cuspidal.iter().enumerate() {
                        let slot = &mut row[np + fi * nc + i];
                        if !k2.is_zero() {
                            *slot = &*slot + &gv[e][c].scale_rat(k2);
                        }
                        if !k1.is_zero() {
                            *slot = &*slot + &gv[e2][c].scale_rat(k1);
                        }
                    }
                }
                for (p, &(f, g)) in pairs.iter().enumerate() {
                    let mut q = &kernel[e][f] * &kernel[e2][g];
                    if f != g {
                        q = &q + &(&kernel[e][g] * &kernel[e2][f]);
                    }
                    row[p] = Laurent::constant(Cyc::rational(q));
                }
                let mut rhs = Laurent::zero();
                for (c, v) in values[e].iter().enumerate() {
                    if !v.is_zero() {
                        rhs = &rhs - &(v * &gv[e2][c]);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) || !rhs.is_zero() {
                    base.push((row, rhs));
                }
            }
        }
        // global layout: all Q blocks, then t blocks; the identity symmetry comes last
        let ns = symmetries.len();
        let width = ns * (np + nt);
        let q_col = |si: usize, p: usize| si * np + p;
        let t_col = |si: usize, fi: usize, i: usize| ns * np + si * nt + fi * nc + i;
        let mut a: Vec<Vec<Laurent>> = Vec::new();
        let mut b: Vec<Laurent> = Vec::new();
        for (si, sym) in symmetries.iter().enumerate() {
            for (row, rhs) in &base {
                let mut out = vec![Laurent::zero(); width];
                for p in 0..np {
                    out[q_col(si, p)] = sym.apply(&row[p]);
                }
                for fi in 0..nf {
                    for i in 0..nc {
                        out[t_col(si, fi, i)] = sym.apply(&row[np + fi * nc + i]);
                    }
                }
                a.push(out);
                b.push(sym.apply(rhs));
            }
        }
        let id = ns - 1;
        for (si, sym) in symmetries.iter().enumerate().take(id) {
            for e in 0..n {
                let te = sym.image[e];
                for (i, &c) in cuspidal.iter().enumerate() {
                    let sign = Rat::int(sym.signs[c]);
                    // h0_{τE} + Σ k_{f,τE} t_f = ±(τ(h0_E) + Σ k_{f,E} τ(t_f))
                    let mut out = vec![Laurent::zero(); width];
                    for fi in 0..nf {
                        if !kernel[te][fi].is_zero() {
                            out[t_col(id, fi, i)] = Laurent::constant(Cyc::rational(kernel[te][fi].clone()));
                        }
                        if !kernel[e][fi].is_zero() {
                            let v = -&(&kernel[e][fi] * &sign);
                            out[t_col(si, fi, i)] = Laurent::constant(Cyc::rational(v));
                        }
                    }
                    let rhs = &sym.apply(&values[e][c]).scale_rat(&sign) - &values[te][c];
                    if out.iter().any(|x| !x.is_zero()) || !rhs.is_zero() {
                        a.push(out);
                        b.push(rhs);
                    }
                }
            }
        }
        let u = solve_laurent(&a, &b, bound).ok_or_else(|| LeadingError::CharacterTable("orthogonality equations are inconsistent".into()))?;
        let ident = &u[t_col(id, 0, 0)..];
        let determined = ident.iter().filter(|v| v.is_some()).count();
        if determined < nt {
            return Err(LeadingError::RankDeficient { rank: determined, needed: nt });
        }
        let t: Vec<Vec<Laurent>> =
            ident.chunks(nc).map(|c| c.iter().map(|v| v.clone().expect("determined")).collect()).collect();
        Ok(t)
    }
}

fn dihedral_values(
    group: &CoxeterGroup,
    weights: &WeightFunction,
    info: &ClassInfo,
    ordinary: &OrdinaryTable,
    comp: &Component,
) -> Result<Vec<Vec<Laurent>>, LeadingError> {
    let table = group.elements()?;
    // generators in the component's standard order
    let local = weights.restrict(&comp.indices);
    let models = dihedral_models(group.bond(comp.indices[0], comp.indices[1]), &local);
    let words: Vec<Vec<usize>> = (0..info.len())
        .map(|c| {
            table.word(info.rep(c)).into_iter().map(|s| comp.indices.iter().position(|&t| t == s).expect("generator")).collect()
        })
        .collect();
    let mut values = vec![Vec::new(); ordinary.len()];
    for model in &models {
        let row: Vec<Laurent> = words.iter().map(|w| trace_of_word(&model.gens, w, model.dim)).collect();
        let spec: Vec<Cyc> = row.iter().map(|v| v.at_one()).collect();
        let e = ordinary
            .values
            .iter()
            .position(|r| *r == spec)
            .ok_or_else(|| LeadingError::CharacterTable(format!("dihedral model {} has no ordinary match", model.label)))?;
        values[e] = row;
    }
    if values.iter().any(|v| v.is_empty()) {
        return Err(LeadingError::CharacterTable("dihedral models do not cover the table".into()));
    }
    Ok(values)
}

/// Cells of (W, L) with default options.
fn cells_of(group: &CoxeterGroup, weights: &WeightFunction) -> Result<Vec<LeftCell>, LeadingError> {
    Ok(left_cells(group, weights, &CellOptions::default())?)
}

/// Full Hecke table of a group, computing its cells on the way.
pub fn hecke_table_of(group: &CoxeterGroup, weights: &WeightFunction) -> Result<(ClassInfo, OrdinaryTable, HeckeTable), LeadingError> {
    let info = ClassInfo::new(group)?;
    let ordinary = ordinary_table(group, &info)?;
    let comps = &group.typedec().components;
    let needs_cells = comps.len() == 1 && !(comps[0].rank() == 2 && comps[0].kind != TypeLetter::A);
    let cells = if needs_cells { cells_of(group, weights)? } else { Vec::new() };
    let hecke = hecke_table(group, weights, &info, &ordinary, &cells)?;
    Ok((info, ordinary, hecke))
}

/// Tensor products over the irreducible components.
fn product_values(
    group: &CoxeterGroup,
    weights: &WeightFunction,
    info: &ClassInfo,
    ordinary: &OrdinaryTable,
) -> Result<Vec<Vec<Laurent>>, LeadingError> {
    let table = group.elements()?;
    let mut rows: Vec<(Vec<Laurent>, Vec<Cyc>)> = vec![(vec![Laurent::one(); info.len()], vec![Cyc::one(); info.len()])];
    for comp in &group.typedec().components {
        let sub = component_group(group, comp)?;
        let sub_table = sub.elements()?;
        let local = weights.restrict(&comp.indices);
        let (sub_info, sub_ord, sub_hecke) = hecke_table_of(&sub, &local)?;
        let polys = ClassPolynomials::compute(sub_table, &local, &sub_info);
        let parts: Vec<ElemId> = (0..info.len()).map(|c| project(table, sub_table, comp, info.rep(c))).collect();
        let mut next = Vec::new();
        for (acc, acc_spec) in &rows {
            for (e, hrow) in sub_hecke.values.iter().enumerate() {
                let vals: Vec<Laurent> = parts.iter().zip(acc).map(|(&u, a)| a * &polys.trace(u, hrow)).collect();
                let spec: Vec<Cyc> = parts
                    .iter()
                    .zip(acc_spec)
                    .map(|(&u, a)| a * &sub_ord.values[e][sub_info.class_of(u)])
                    .collect();
                next.push((vals, spec));
            }
        }
        rows = next;
    }
    let mut values = vec![Vec::new(); ordinary.len()];
    for (vals, spec) in rows {
        let e = ordinary.values.iter().position(|r| *r == spec).expect("product character in the table");
        values[e] = vals;
    }
    Ok(values)
}

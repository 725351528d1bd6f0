//! Left cells and W-graphs by induction along a chain of parabolic subgroups.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{Graph, NodeIndex};

use crate::cartan::{recognize, CoxeterMatrix};
use crate::coxgroup::{genset, genset_members, CoxeterError, CoxeterGroup, ElemId, ElementTable, GenSet};
use crate::klbase::{KlError, KlTable, RelativeKl, SubgroupM};
use crate::ring::{Laurent, WeightFunction};
use crate::sparse::{identity, lin_comb, mat_mul, normalize, SparseMat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error("star operations need equal parameters")]
    UnequalParameters,
    #[error("a left cell meets D_R({0},{1}) without being contained in it")]
    StarSplit(usize, usize),
    #[error("parabolic chain is not a strictly increasing sequence from the empty set to S")]
    BadChain,
    #[error("longest-element pairing produced an inconsistent block")]
    PairingMismatch,
}

/// One edge of a W-graph: the coefficient m^s_{x,y} (x, y are vertex indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WEdge {
    pub s: usize,
    pub x: u32,
    pub y: u32,
    pub m: Laurent,
}

/// W-graph data on a set of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGraph {
    pub elements: Vec<ElemId>,
    /// I(x) for each vertex
    pub idesc: Vec<GenSet>,
    pub edges: Vec<WEdge>,
    /// For each generator of weight zero, the bijection x ↦ s.x on vertex indices.
    pub zero_maps: Vec<(usize, Vec<u32>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftCell {
    /// Sorted element ids.
    pub elements: Vec<ElemId>,
    pub wgraph: WGraph,
}

impl LeftCell {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: ElemId) -> bool {
        self.elements.binary_search(&w).is_ok()
    }
}

/// Canonical W-graph of a set of elements from their M-values.
///
/// `m_entries` yields (s, x, y, M^s_{x,y}) for sx<x<y<sy; entries outside the set are ignored.
pub fn build_wgraph<'m>(
    table: &ElementTable,
    weights: &WeightFunction,
    kmask: GenSet,
    elements: &[ElemId],
    m_entries: impl Iterator<Item = (usize, ElemId, ElemId, &'m Laurent)>,
) -> WGraph {
    let mut elements = elements.to_vec();
    elements.sort_unstable();
    let idx: HashMap<ElemId, u32> = elements.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
    let idesc: Vec<GenSet> = elements.iter().map(|&e| table.left_descents(e) & kmask).collect();
    let mut edges = Vec::new();
    for (i, &x) in elements.iter().enumerate() {
        for s in genset_members(idesc[i]) {
            if weights.get(s) == 0 {
                continue;
            }
            if let Some(&j) = idx.get(&table.lmul(s, x)) {
                edges.push(WEdge { s, x: i as u32, y: j, m: Laurent::one() });
            }
        }
    }
    for (s, x, y, m) in m_entries {
        if let (Some(&i), Some(&j)) = (idx.get(&x), idx.get(&y)) {
            let sign = (table.length(x) + table.length(y)) % 2 == 0;
            edges.push(WEdge { s, x: i, y: j, m: if sign { -m.clone() } else { m.clone() } });
        }
    }
    edges.sort_by_key(|e| (e.s, e.y, e.x));
    let zero_maps = genset_members(kmask)
        .into_iter()
        .filter(|&s| weights.get(s) == 0)
        .map(|s| (s, elements.iter().map(|&x| idx[&table.lmul(s, x)]).collect()))
        .collect();
    WGraph { elements, idesc, edges, zero_maps }
}

/// M^t_{u,w} for u<w recovered from W-graph coefficients.
pub fn wgraph_to_subgroup_m(table: &ElementTable, g: &WGraph, sub: &mut SubgroupM) {
    for e in &g.edges {
        let (u, w) = (g.elements[e.x as usize], g.elements[e.y as usize]);
        if table.length(u) < table.length(w) && table.bruhat_leq(u, w) {
            let sign = (table.length(u) + table.length(w)) % 2 == 0;
            sub.insert(e.s, u, w, if sign { -e.m.clone() } else { e.m.clone() });
        }
    }
}

fn rho(g: &WGraph, weights: &WeightFunction, s: usize) -> SparseMat {
    let n = g.elements.len();
    let ls = weights.get(s);
    let mut cols: SparseMat = vec![Vec::new(); n];
    if ls == 0 {
        let map = &g.zero_maps.iter().find(|(t, _)| *t == s).expect("zero-weight map").1;
        for y in 0..n {
            cols[y].push((map[y], Laurent::one()));
        }
        return cols;
    }
    for y in 0..n {
        if g.idesc[y] & (1 << s) != 0 {
            cols[y].push((y as u32, Laurent::eps(-ls).scale(&crate::ring::Cyc::int(-1))));
        } else {
            cols[y].push((y as u32, Laurent::eps(ls)));
        }
    }
    for e in &g.edges {
        if e.s == s {
            cols[e.y as usize].push((e.x, e.m.clone()));
        }
    }
    cols
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("W-graph relation fails: {0}")]
pub struct WGraphViolation(pub String);

/// Checks that T̃_s ↦ ρ_s satisfies the quadratic and braid relations exactly.
pub fn wgraph_verify(g: &WGraph, weights: &WeightFunction, coxeter: &CoxeterMatrix) -> Result<(), WGraphViolation> {
    let n = g.elements.len();
    let gens: Vec<usize> = (0..coxeter.len()).collect();
    for e in &g.edges {
        if g.idesc[e.x as usize] & (1 << e.s) == 0 || g.idesc[e.y as usize] & (1 << e.s) != 0 {
            return Err(WGraphViolation(format!("edge for s={} violates the descent condition", e.s)));
        }
        if !e.m.is_bar_invariant() || e.m.shift(weights.get(e.s)).min_exp().is_some_and(|x| x <= 0) {
            return Err(WGraphViolation(format!("m^{}_{{{},{}}} has the wrong degrees", e.s, e.x, e.y)));
        }
    }
    let rhos: Vec<SparseMat> = gens.iter().map(|&s| normalize(&rho(g, weights, s))).collect();
    let id = identity(n);
    for (i, &s) in gens.iter().enumerate() {
        let sq = mat_mul(&rhos[i], &rhos[i]);
        let ls = weights.get(s);
        let expect = if ls == 0 {
            id.clone()
        } else {
            let q = &Laurent::eps(ls) - &Laurent::eps(-ls);
            lin_comb(&rhos[i], &q, &id, &Laurent::one())
        };
        if sq != expect {
            return Err(WGraphViolation(format!("quadratic relation for s={}", s)));
        }
    }
    for (i, &s) in gens.iter().enumerate() {
        for (j, &t) in gens.iter().enumerate() {
            if j <= i {
                continue;
            }
            let m = coxeter[s][t];
            if m == 0 {
                continue;
            }
            let mut a = id.clone();
            let mut b = id.clone();
            for k in 0..m {
                let (ra, rb) = if k % 2 == 0 { (&rhos[i], &rhos[j]) } else { (&rhos[j], &rhos[i]) };
                a = mat_mul(ra, &a);
                b = mat_mul(rb, &b);
            }
            if a != b {
                return Err(WGraphViolation(format!("braid relation for ({},{})", s, t)));
            }
        }
    }
    Ok(())
}

/// Trace of ρ_w = ρ_{s_1}⋯ρ_{s_k} on a W-graph module.
pub fn wgraph_trace(g: &WGraph, weights: &WeightFunction, word: &[usize]) -> Laurent {
    let n = g.elements.len();
    let mut acc = identity(n);
    for &s in word.iter().rev() {
        acc = mat_mul(&normalize(&rho(g, weights, s)), &acc);
    }
    let mut tr = Laurent::zero();
    for (y, col) in acc.iter().enumerate() {
        for (x, v) in col {
            if *x as usize == y {
                tr = &tr + v;
            }
        }
    }
    tr
}

/// Representation matrices ρ_s of a W-graph, column-sparse.
pub fn wgraph_matrices(g: &WGraph, weights: &WeightFunction, rank: usize) -> Vec<Vec<Vec<(u32, Laurent)>>> {
    (0..rank).map(|s| normalize(&rho(g, weights, s))).collect()
}

/// Decompose one block X·𝔠′ into left cells.
fn cells_of_block(rel: &RelativeKl<'_>, weights: &WeightFunction, kmask: GenSet) -> Vec<LeftCell> {
    let t = rel.table();
    let elems = rel.elements();
    let idx: HashMap<ElemId, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut graph: Graph<(), ()> = Graph::with_capacity(elems.len(), elems.len() * 4);
    let nodes: Vec<NodeIndex> = (0..elems.len()).map(|_| graph.add_node(())).collect();
    // y → z means z ←_L y
    for (i, &y) in elems.iter().enumerate() {
        for s in genset_members(kmask) {
            let z = t.lmul(s, y);
            if weights.get(s) == 0 || t.length(z) > t.length(y) {
                if let Some(&j) = idx.get(&z) {
                    graph.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
    }
    for (_, z, y, _) in rel.m_entries() {
        graph.add_edge(nodes[idx[&y]], nodes[idx[&z]], ());
    }
    let mut cells: Vec<Vec<ElemId>> = tarjan_scc(&graph)
        .into_iter()
        .map(|comp| {
            let mut v: Vec<ElemId> = comp.into_iter().map(|n| elems[n.index()]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    cells.sort();
    let cell_of: HashMap<ElemId, usize> =
        cells.iter().enumerate().flat_map(|(c, v)| v.iter().map(move |&e| (e, c))).collect();
    let mut per_cell: Vec<Vec<(usize, ElemId, ElemId, Laurent)>> = vec![Vec::new(); cells.len()];
    for (s, x, y, m) in rel.m_entries() {
        let c = cell_of[&x];
        if cell_of[&y] == c {
            per_cell[c].push((s, x, y, m.clone()));
        }
    }
    cells
        .into_iter()
        .zip(per_cell)
        .map(|(elements, ms)| {
            let wgraph = build_wgraph(t, weights, kmask, &elements, ms.iter().map(|(s, x, y, m)| (*s, *x, *y, m)));
            LeftCell { elements, wgraph }
        })
        .collect()
}

/// A unit of work: induce one left cell of W_J up to W_K.
pub struct BlockJob<'a> {
    pub table: &'a ElementTable,
    pub weights: &'a WeightFunction,
    pub kmask: GenSet,
    pub jmask: GenSet,
    pub cell: &'a LeftCell,
}

impl BlockJob<'_> {
    pub fn run(&self) -> Result<Vec<LeftCell>, CellError> {
        let mut sub = SubgroupM::new();
        wgraph_to_subgroup_m(self.table, &self.cell.wgraph, &mut sub);
        let rel = RelativeKl::compute(self.table, self.weights, self.kmask, self.jmask, &self.cell.elements, &sub)?;
        Ok(cells_of_block(&rel, self.weights, self.kmask))
    }
}

/// Runs a batch of jobs; the default runs them in order.
pub trait BlockRunner {
    fn run_all(&self, jobs: &[BlockJob<'_>]) -> Vec<Result<Vec<LeftCell>, CellError>>;
}

pub struct SequentialRunner;

impl BlockRunner for SequentialRunner {
    fn run_all(&self, jobs: &[BlockJob<'_>]) -> Vec<Result<Vec<LeftCell>, CellError>> {
        jobs.iter().map(|j| j.run()).collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct CellOptions {
    /// Explicit chain ∅ = J_0 ⊂ J_1 ⊂ … ⊂ J_n = S; default from [`default_chain`].
    pub chain: Option<Vec<GenSet>>,
    /// Induce one cell per star orbit and transport the rest (equal parameters only).
    pub star_induction: bool,
    /// Induce one cell per pair related by the longest element (equal parameters only).
    pub longest_pairing: bool,
}

fn parabolic_order(group: &CoxeterGroup, gens: &[usize]) -> u128 {
    if gens.is_empty() {
        return 1;
    }
    recognize(&group.cartan().submatrix(gens)).order().unwrap_or(u128::MAX)
}

fn type_name_of(group: &CoxeterGroup, gens: &[usize]) -> String {
    if gens.is_empty() {
        return String::new();
    }
    recognize(&group.cartan().submatrix(gens)).name()
}

/// Parabolic chain that drops, at each step, the generator leaving the largest subgroup.
///
/// Ties go to the largest index; an E7 component is reduced to D6.
pub fn default_chain(group: &CoxeterGroup) -> Vec<GenSet> {
    let mut current: Vec<usize> = (0..group.rank()).collect();
    let mut chain = vec![genset(&current)];
    while !current.is_empty() {
        let name = type_name_of(group, &current);
        let mut best: Option<(u128, usize)> = None;
        for (pos, &s) in current.iter().enumerate() {
            let rest: Vec<usize> = current.iter().copied().filter(|&t| t != s).collect();
            let order = parabolic_order(group, &rest);
            if name == "E7" && type_name_of(group, &rest) == "D6" {
                best = Some((u128::MAX, pos));
                break;
            }
            if best.is_none_or(|(o, _)| order >= o) {
                best = Some((order, pos));
            }
        }
        current.remove(best.expect("nonempty").1);
        chain.push(genset(&current));
    }
    chain.reverse();
    chain
}

/// The right star operation w ↦ w* for (s, t) with m_st = 3, if w ∈ D_R(s,t).
pub fn star_image(table: &ElementTable, s: usize, t: usize, w: ElemId) -> Option<ElemId> {
    let in_dr = |x: ElemId| {
        let d = table.right_descents(x);
        ((d >> s) & 1) != ((d >> t) & 1)
    };
    if !in_dr(w) {
        return None;
    }
    let ws = table.rmul(w, s);
    if in_dr(ws) {
        Some(ws)
    } else {
        Some(table.rmul(w, t))
    }
}

fn star_pairs(coxeter: &CoxeterMatrix, mask: GenSet) -> Vec<(usize, usize)> {
    let gens = genset_members(mask);
    let mut out = Vec::new();
    for &s in &gens {
        for &t in &gens {
            if s < t && coxeter[s][t] == 3 {
                out.push((s, t));
            }
        }
    }
    out
}

/// Image of a cell under a star operation, or None when it misses D_R(s,t).
fn star_cell(table: &ElementTable, s: usize, t: usize, cell: &[ElemId]) -> Result<Option<Vec<ElemId>>, CellError> {
    let imgs: Vec<Option<ElemId>> = cell.iter().map(|&w| star_image(table, s, t, w)).collect();
    if imgs.iter().all(|i| i.is_none()) {
        return Ok(None);
    }
    if imgs.iter().any(|i| i.is_none()) {
        return Err(CellError::StarSplit(s, t));
    }
    Ok(Some(imgs.into_iter().map(|i| i.unwrap()).collect()))
}

/// For each cell, (parent cell, (s,t)) in a BFS forest of star orbits; roots map to None.
fn star_forest(
    table: &ElementTable,
    coxeter: &CoxeterMatrix,
    mask: GenSet,
    cells: &[LeftCell],
) -> Result<Vec<Option<(usize, (usize, usize))>>, CellError> {
    let cell_of: HashMap<ElemId, usize> =
        cells.iter().enumerate().flat_map(|(c, cl)| cl.elements.iter().map(move |&e| (e, c))).collect();
    let pairs = star_pairs(coxeter, mask);
    let mut parent: Vec<Option<Option<(usize, (usize, usize))>>> = vec![None; cells.len()];
    for root in 0..cells.len() {
        if parent[root].is_some() {
            continue;
        }
        parent[root] = Some(None);
        let mut queue = vec![root];
        let mut i = 0;
        while i < queue.len() {
            let c = queue[i];
            for &(s, t) in &pairs {
                if let Some(img) = star_cell(table, s, t, &cells[c].elements)? {
                    let d = cell_of[&img[0]];
                    if parent[d].is_none() {
                        parent[d] = Some(Some((c, (s, t))));
                        queue.push(d);
                    }
                }
            }
            i += 1;
        }
    }
    Ok(parent.into_iter().map(|p| p.unwrap()).collect())
}

/// ≈-classes: orbits of left cells under star operations. Returns a class id per cell.
pub fn star_classes(
    table: &ElementTable,
    coxeter: &CoxeterMatrix,
    weights: &WeightFunction,
    cells: &[LeftCell],
) -> Result<Vec<usize>, CellError> {
    if !weights.is_equal_parameter() {
        return Err(CellError::UnequalParameters);
    }
    let forest = star_forest(table, coxeter, (1 << table.rank()) - 1, cells)?;
    let mut class = vec![usize::MAX; cells.len()];
    let mut next = 0;
    for c in 0..cells.len() {
        let mut r = c;
        while let Some((p, _)) = forest[r] {
            r = p;
        }
        if class[r] == usize::MAX {
            class[r] = next;
            next += 1;
        }
        class[c] = class[r];
    }
    Ok(class)
}

/// Apply a chain of star operations to a cell, moving its W-graph along the bijection.
fn transport_cell(table: &ElementTable, ops: &[(usize, usize)], cell: &LeftCell) -> Result<LeftCell, CellError> {
    let mut elems = cell.wgraph.elements.clone();
    for &(s, t) in ops {
        elems = star_cell(table, s, t, &elems)?.ok_or(CellError::StarSplit(s, t))?;
    }
    // vertex i of the old graph goes to elems[i]; re-sort
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| elems[i]);
    let mut new_pos = vec![0u32; elems.len()];
    for (p, &i) in order.iter().enumerate() {
        new_pos[i] = p as u32;
    }
    let g = &cell.wgraph;
    let elements: Vec<ElemId> = order.iter().map(|&i| elems[i]).collect();
    let idesc = order.iter().map(|&i| g.idesc[i]).collect();
    let mut edges: Vec<WEdge> = g
        .edges
        .iter()
        .map(|e| WEdge { s: e.s, x: new_pos[e.x as usize], y: new_pos[e.y as usize], m: e.m.clone() })
        .collect();
    edges.sort_by_key(|e| (e.s, e.y, e.x));
    let zero_maps = g
        .zero_maps
        .iter()
        .map(|(s, map)| {
            let mut m = vec![0u32; map.len()];
            for (i, &j) in map.iter().enumerate() {
                m[new_pos[i] as usize] = new_pos[j as usize];
            }
            (*s, m)
        })
        .collect();
    Ok(LeftCell { elements: elements.clone(), wgraph: WGraph { elements, idesc, edges, zero_maps } })
}

fn ops_to_root(forest: &[Option<(usize, (usize, usize))>], c: usize) -> (usize, Vec<(usize, usize)>) {
    let mut ops = Vec::new();
    let mut r = c;
    while let Some((p, op)) = forest[r] {
        ops.push(op);
        r = p;
    }
    ops.reverse();
    (r, ops)
}

/// Left cells of W with W-graphs, by induction along a parabolic chain.
pub fn left_cells(group: &CoxeterGroup, weights: &WeightFunction, opts: &CellOptions) -> Result<Vec<LeftCell>, CellError> {
    left_cells_with(group, weights, opts, &SequentialRunner)
}

pub fn left_cells_with(
    group: &CoxeterGroup,
    weights: &WeightFunction,
    opts: &CellOptions,
    runner: &dyn BlockRunner,
) -> Result<Vec<LeftCell>, CellError> {
    let table = group.elements()?;
    let chain = opts.chain.clone().unwrap_or_else(|| default_chain(group));
    let full: GenSet = (1 << group.rank()) - 1;
    if chain.first() != Some(&0)
        || chain.last() != Some(&full)
        || chain.windows(2).any(|w| w[0] & !w[1] != 0 || w[0] == w[1])
    {
        return Err(CellError::BadChain);
    }
    let star = opts.star_induction && weights.is_equal_parameter();
    let pairing = opts.longest_pairing && weights.is_equal_parameter();
    let mut cells = vec![LeftCell {
        elements: vec![0],
        wgraph: WGraph { elements: vec![0], idesc: vec![0], edges: Vec::new(), zero_maps: Vec::new() },
    }];
    for win in chain.windows(2) {
        let (jmask, kmask) = (win[0], win[1]);
        let forest = if star {
            star_forest(table, group.coxeter_matrix(), jmask, &cells)?
        } else {
            vec![None; cells.len()]
        };
        let roots: Vec<usize> = (0..cells.len()).filter(|&c| forest[c].is_none()).collect();
        let (induce, partner) = if pairing { longest_partners(table, jmask, &cells, &roots) } else { (roots.clone(), Vec::new()) };
        let jobs: Vec<BlockJob<'_>> = induce
            .iter()
            .map(|&c| BlockJob { table, weights, kmask, jmask, cell: &cells[c] })
            .collect();
        let results = runner.run_all(&jobs);
        let mut induced: HashMap<usize, Vec<LeftCell>> = HashMap::new();
        for (&c, r) in induce.iter().zip(results) {
            induced.insert(c, r?);
        }
        for &(c, d) in &partner {
            let mapped = pair_block(table, weights, kmask, jmask, &cells[d], &induced[&c])?;
            induced.insert(d, mapped);
        }
        let mut next = Vec::new();
        for c in 0..cells.len() {
            let (root, ops) = ops_to_root(&forest, c);
            let base = &induced[&root];
            if ops.is_empty() {
                next.extend(base.iter().cloned());
            } else {
                for cell in base {
                    next.push(transport_cell(table, &ops, cell)?);
                }
            }
        }
        next.sort_by(|a, b| a.elements.cmp(&b.elements));
        cells = next;
    }
    Ok(cells)
}

/// Splits roots into cells to induce and (induced, partner) pairs w0'·𝔠 related by the longest element of W_J.
fn longest_partners(
    table: &ElementTable,
    jmask: GenSet,
    cells: &[LeftCell],
    roots: &[usize],
) -> (Vec<usize>, Vec<(usize, usize)>) {
    let w0j = longest_of(table, jmask);
    let cell_of: HashMap<ElemId, usize> =
        cells.iter().enumerate().flat_map(|(c, cl)| cl.elements.iter().map(move |&e| (e, c))).collect();
    let mut is_root = vec![false; cells.len()];
    for &r in roots {
        is_root[r] = true;
    }
    let mut done = vec![false; cells.len()];
    let mut induce = Vec::new();
    let mut pairs = Vec::new();
    for &c in roots {
        if done[c] {
            continue;
        }
        done[c] = true;
        induce.push(c);
        let d = cell_of[&table.mul(w0j, cells[c].elements[0])];
        if d != c && is_root[d] && !done[d] {
            done[d] = true;
            pairs.push((c, d));
        }
    }
    (induce, pairs)
}

fn longest_of(table: &ElementTable, mask: GenSet) -> ElemId {
    let mut w: ElemId = 0;
    loop {
        let up = genset_members(mask).into_iter().find(|&s| !table.has_left_descent(w, s));
        match up {
            Some(s) => w = table.lmul(s, w),
            None => return w,
        }
    }
}

/// Cells of X·𝔠″ from those of X·𝔠′ when w0·X𝔠′ = X𝔠″ (w0 the longest element of W_K).
///
/// The map w ↦ w0·w sends left cells to left cells and reverses the W-graph:
/// I(w0 x) is the complement of I(x) and μ(w0 y, w0 x) = μ(x, y). The block
/// for 𝔠″ is checked to be exactly w0 times the block for 𝔠′.
fn pair_block(
    table: &ElementTable,
    weights: &WeightFunction,
    kmask: GenSet,
    jmask: GenSet,
    target: &LeftCell,
    source: &[LeftCell],
) -> Result<Vec<LeftCell>, CellError> {
    let w0 = longest_of(table, kmask);
    let xs: Vec<ElemId> = crate::klbase::parabolic_elements(table, kmask)
        .into_iter()
        .filter(|&x| table.right_descents(x) & jmask == 0)
        .collect();
    let mut block: Vec<ElemId> =
        xs.iter().flat_map(|&x| target.elements.iter().map(move |&u| table.mul(x, u))).collect();
    block.sort_unstable();
    let mut image: Vec<ElemId> = source.iter().flat_map(|c| c.elements.iter().map(|&w| table.mul(w0, w))).collect();
    image.sort_unstable();
    if image != block {
        return Err(CellError::PairingMismatch);
    }
    let mut out = Vec::new();
    for cell in source {
        let elements: Vec<ElemId> = cell.elements.iter().map(|&w| table.mul(w0, w)).collect();
        let g = &cell.wgraph;
        let mut entries: Vec<(usize, ElemId, ElemId, Laurent)> = Vec::new();
        for e in &g.edges {
            let (x, y) = (g.elements[e.x as usize], g.elements[e.y as usize]);
            if table.length(x) < table.length(y) && table.bruhat_leq(x, y) {
                let sign = (table.length(x) + table.length(y)) % 2 == 0;
                let mu = if sign { -e.m.clone() } else { e.m.clone() };
                let (a, b) = (table.mul(w0, y), table.mul(w0, x));
                for s in genset_members(kmask) {
                    if table.has_left_descent(a, s) && !table.has_left_descent(b, s) {
                        entries.push((s, a, b, mu.clone()));
                    }
                }
            }
        }
        entries.sort_by(|p, q| (p.0, p.1, p.2).cmp(&(q.0, q.1, q.2)));
        entries.dedup_by(|p, q| (p.0, p.1, p.2) == (q.0, q.1, q.2));
        let wgraph = build_wgraph(table, weights, kmask, &elements, entries.iter().map(|(s, x, y, m)| (*s, *x, *y, m)));
        out.push(LeftCell { elements: wgraph.elements.clone(), wgraph });
    }
    Ok(out)
}

/// Per-cell distinguished element data from P*_{1,w}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distinguished {
    /// The element minimizing Δ, if the minimum is strict.
    pub element: Option<ElemId>,
    /// (w, Δ(w), n_w) for every w in the cell with P*_{1,w} ≠ 0, sorted by Δ.
    pub candidates: Vec<(ElemId, i32, crate::ring::Cyc)>,
}

/// Δ(w) and n_w from ε^{Δ(w)}P*_{1,w} ≡ n_w mod A_{<0}.
pub fn delta_and_n(p: &Laurent) -> Option<(i32, crate::ring::Cyc)> {
    let top = p.max_exp()?;
    Some((-top, p.coeff(top)))
}

pub fn distinguished(cells: &[LeftCell], p1: impl Fn(ElemId) -> Laurent) -> Vec<Distinguished> {
    cells
        .iter()
        .map(|c| {
            let mut cand: Vec<(ElemId, i32, crate::ring::Cyc)> = c
                .elements
                .iter()
                .filter_map(|&w| delta_and_n(&p1(w)).map(|(d, n)| (w, d, n)))
                .collect();
            cand.sort_by_key(|(w, d, _)| (*d, *w));
            let element = match cand.as_slice() {
                [(w, _, _)] => Some(*w),
                [(w, d0, _), (_, d1, _), ..] if d0 < d1 => Some(*w),
                _ => None,
            };
            Distinguished { element, candidates: cand }
        })
        .collect()
}

/// P*_{1,w} for all w, via the ordinary recursion.
pub fn pstar_from_identity(group: &CoxeterGroup, weights: &WeightFunction) -> Result<Vec<Laurent>, CellError> {
    let kl = KlTable::new(group, weights)?;
    let n = group.elements()?.size();
    (0..n as ElemId).map(|w| Ok(kl.kl_pstar(0, w)?.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells_of(name: &str, weights: Option<&[i64]>, opts: &CellOptions) -> (CoxeterGroup, WeightFunction, Vec<LeftCell>) {
        let g = CoxeterGroup::from_name(name).unwrap();
        let l = match weights {
            Some(w) => WeightFunction::validate(g.coxeter_matrix(), w).unwrap(),
            None => WeightFunction::equal(g.rank()),
        };
        let cells = left_cells(&g, &l, opts).unwrap();
        (g, l, cells)
    }

    fn partition_ok(g: &CoxeterGroup, cells: &[LeftCell]) {
        let mut all: Vec<ElemId> = cells.iter().flat_map(|c| c.elements.iter().copied()).collect();
        all.sort_unstable();
        let n = g.elements().unwrap().size();
        assert_eq!(all, (0..n as ElemId).collect::<Vec<_>>());
    }

    #[test]
    fn a1_two_cells() {
        let (g, _, cells) = cells_of("A1", None, &CellOptions::default());
        partition_ok(&g, &cells);
        assert_eq!(cells.len(), 2);
    }

    #[test]
    fn dihedral_and_h3_counts() {
        let (g, l, cells) = cells_of("I2(5)", None, &CellOptions::default());
        partition_ok(&g, &cells);
        assert_eq!(cells.len(), 4);
        let t = g.elements().unwrap();
        assert_eq!(star_classes(t, g.coxeter_matrix(), &l, &cells).unwrap().iter().max().unwrap() + 1, 4);
        let (g, l, cells) = cells_of("H3", None, &CellOptions::default());
        partition_ok(&g, &cells);
        assert_eq!(cells.len(), 22);
        let mut sizes: Vec<usize> = cells.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        assert_eq!(sizes, vec![1, 5, 6, 8]);
        let t = g.elements().unwrap();
        assert_eq!(star_classes(t, g.coxeter_matrix(), &l, &cells).unwrap().iter().max().unwrap() + 1, 15);
        for c in &cells {
            wgraph_verify(&c.wgraph, &l, g.coxeter_matrix()).unwrap();
        }
    }

    #[test]
    fn chain_defaults() {
        let f4 = CoxeterGroup::from_name("F4").unwrap();
        assert_eq!(default_chain(&f4)[3], genset(&[0, 1, 2]));
        let h3 = CoxeterGroup::from_name("H3").unwrap();
        assert_eq!(default_chain(&h3)[2], genset(&[0, 1]));
    }

    #[test]
    fn unequal_b2_cells_verify() {
        for w in [[2i64, 1], [1, 2], [0, 1], [1, 0]] {
            let (g, l, cells) = cells_of("B2", Some(&w), &CellOptions::default());
            partition_ok(&g, &cells);
            for c in &cells {
                wgraph_verify(&c.wgraph, &l, g.coxeter_matrix()).unwrap();
            }
        }
    }
}

//! Leading coefficients of character values, the cell tables built from them,
//! and the conjecture checks.

pub mod classes;
pub mod hecke;
pub mod linalg;
pub mod ordinary;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coxgroup::{CoxeterError, CoxeterGroup, ElemId, ElementTable};
use crate::relcells::{wgraph_trace, CellError, LeftCell};
use crate::ring::{Cyc, Laurent, Rat, WeightFunction};

pub use classes::{ClassInfo, ClassPolynomials};
pub use hecke::{dihedral_models, hecke_table, hecke_table_of, HeckeModel, HeckeTable};
pub use ordinary::{ordinary_table, OrdinaryTable};

#[derive(Debug, thiserror::Error)]
pub enum LeadingError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error("character table: {0}")]
    CharacterTable(String),
    #[error("module traces determine only {rank} of {needed} irreducible Hecke characters; supply a table file")]
    RankDeficient { rank: usize, needed: usize },
    #[error("cell {cell} contains {count} elements of D̃")]
    NoUniqueDistinguished { cell: usize, count: usize },
}

/// Leading coefficients c_{w,E} and the invariants derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingData {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub a: Vec<u32>,
    pub f: Vec<Cyc>,
    /// Nonzero (E, c_{w,E}) for each element w.
    pub coeffs: Vec<Vec<(u32, Cyc)>>,
    /// ñ_w = Σ_E c_{w,E}/f_E
    pub n: Vec<Cyc>,
    /// {w : ñ_w ≠ 0}, increasing.
    pub d_tilde: Vec<ElemId>,
}

impl LeadingData {
    pub fn compute(
        table: &ElementTable,
        polys: &ClassPolynomials,
        hecke: &HeckeTable,
    ) -> LeadingData {
        let size = table.size();
        let irr = hecke.values.len();
        let traces: Vec<Vec<Laurent>> = (0..size as ElemId).map(|w| hecke.traces(polys, w)).collect();
        let mut a = vec![0u32; irr];
        for row in &traces {
            for (e, t) in row.iter().enumerate() {
                if let Some(low) = t.min_exp() {
                    a[e] = a[e].max((-low).max(0) as u32);
                }
            }
        }
        let coeffs: Vec<Vec<(u32, Cyc)>> = traces
            .iter()
            .enumerate()
            .map(|(w, row)| {
                let sign = if table.length(w as ElemId) % 2 == 0 { 1 } else { -1 };
                row.iter()
                    .enumerate()
                    .filter_map(|(e, t)| {
                        let c = t.coeff(-(a[e] as i32));
                        (!c.is_zero()).then(|| (e as u32, if sign == 1 { c } else { -c }))
                    })
                    .collect()
            })
            .collect();
        let mut f = vec![Cyc::zero(); irr];
        for row in &coeffs {
            for (e, c) in row {
                f[*e as usize] = &f[*e as usize] + &(c * c);
            }
        }
        for (e, fe) in f.iter_mut().enumerate() {
            *fe = fe.scale(&Rat::new(1, hecke.dims[e] as i64));
        }
        let f_inv: Vec<Cyc> = f.iter().map(|x| x.inverse().expect("every character has a nonzero leading coefficient")).collect();
        let n: Vec<Cyc> = coeffs
            .iter()
            .map(|row| {
                let mut acc = Cyc::zero();
                for (e, c) in row {
                    acc = &acc + &(c * &f_inv[*e as usize]);
                }
                acc
            })
            .collect();
        let d_tilde = (0..size as ElemId).filter(|&w| !n[w as usize].is_zero()).collect();
        LeadingData {
            labels: hecke.labels.clone(),
            dims: hecke.dims.clone(),
            a,
            f,
            coeffs,
            n,
            d_tilde,
        }
    }

    pub fn c(&self, w: ElemId, e: usize) -> Cyc {
        self.coeffs[w as usize]
            .iter()
            .find(|(x, _)| *x as usize == e)
            .map_or_else(Cyc::zero, |(_, c)| c.clone())
    }
}

/// 𝔛(W|𝔠): renormalized leading coefficients on 𝔠∩𝔠⁻¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellTable {
    pub cell: usize,
    pub distinguished: ElemId,
    pub n_d: Cyc,
    /// Irreducible indices: the non-negative row first, then by (a_E, dim E, label).
    pub rows: Vec<usize>,
    /// 𝔠∩𝔠⁻¹ with the distinguished element first, then increasing.
    pub columns: Vec<ElemId>,
    /// entries[row][column] = c*_{w,E}
    pub entries: Vec<Vec<Cyc>>,
}

pub fn cell_leading_table(
    data: &LeadingData,
    table: &ElementTable,
    cells: &[LeftCell],
    index: usize,
) -> Result<CellTable, LeadingError> {
    let cell = &cells[index];
    let ds: Vec<ElemId> = cell.elements.iter().copied().filter(|&w| !data.n[w as usize].is_zero()).collect();
    let [d] = ds.as_slice() else {
        return Err(LeadingError::NoUniqueDistinguished { cell: index, count: ds.len() });
    };
    let d = *d;
    let n_d = data.n[d as usize].clone();
    let mut columns: Vec<ElemId> = cell.elements.iter().copied().filter(|&w| w != d && cell.contains(table.inverse(w))).collect();
    columns.sort_unstable();
    columns.insert(0, d);
    let rows: Vec<usize> = (0..data.labels.len())
        .filter(|&e| cell.elements.iter().any(|&w| !data.c(w, e).is_zero()))
        .collect();
    let mut tagged: Vec<(usize, Vec<Cyc>)> = rows
        .into_iter()
        .map(|e| {
            let row = columns
                .iter()
                .map(|&w| {
                    let c = &data.c(w, e) * &n_d;
                    if (table.length(w) + table.length(d)) % 2 == 0 { c } else { -c }
                })
                .collect();
            (e, row)
        })
        .collect();
    // the non-negative row first, then by a-value, dimension and label
    tagged.sort_by_key(|(e, row)| {
        let negative = row.iter().any(|x| x.sign().unwrap_or(-1) < 0);
        (negative, data.a[*e], data.dims[*e], data.labels[*e].clone())
    });
    let (rows, entries) = tagged.into_iter().unzip();
    Ok(CellTable { cell: index, distinguished: d, n_d, rows, columns, entries })
}

/// m(𝔠, E) for every cell, from the ε→1 decomposition of the cell modules.
pub fn cell_multiplicities(
    cells: &[LeftCell],
    weights: &WeightFunction,
    hecke: &HeckeTable,
    ordinary: &OrdinaryTable,
) -> Result<Vec<Vec<i64>>, LeadingError> {
    cells
        .iter()
        .map(|cell| {
            let chi: Vec<Cyc> = hecke.class_words.iter().map(|w| wgraph_trace(&cell.wgraph, weights, w).at_one()).collect();
            ordinary
                .decompose(&chi)
                .ok_or_else(|| LeadingError::CharacterTable("cell module does not specialize to a character".into()))
        })
        .collect()
}

/// Everything the leading-coefficient pipeline produces for one (W, L).
#[derive(Debug, Clone)]
pub struct LeadingAnalysis {
    pub classes: ClassInfo,
    pub ordinary: OrdinaryTable,
    pub hecke: HeckeTable,
    pub data: LeadingData,
    pub cells: Vec<LeftCell>,
    /// multiplicities[cell][E]
    pub multiplicities: Vec<Vec<i64>>,
    /// One entry per cell; Err where the cell has no unique element of D̃.
    pub tables: Vec<Result<CellTable, String>>,
}

/// Runs the full pipeline on precomputed left cells (with W-graphs).
pub fn analyze(group: &CoxeterGroup, weights: &WeightFunction, cells: Vec<LeftCell>) -> Result<LeadingAnalysis, LeadingError> {
    analyze_with(group, weights, cells, None)
}

/// As [`analyze`], but with a Hecke character table supplied by the caller (rows in
/// [`OrdinaryTable`] order, columns in [`ClassInfo`] order) in place of the solve.
pub fn analyze_with(
    group: &CoxeterGroup,
    weights: &WeightFunction,
    cells: Vec<LeftCell>,
    hecke: Option<HeckeTable>,
) -> Result<LeadingAnalysis, LeadingError> {
    let table = group.elements()?;
    let classes = ClassInfo::new(group)?;
    let ordinary = ordinary_table(group, &classes)?;
    let hecke = match hecke {
        Some(h) => {
            if h.values.len() != ordinary.len() || h.values.iter().any(|r| r.len() != classes.len()) {
                return Err(LeadingError::CharacterTable(String::from("supplied table has the wrong shape")));
            }
            if h.specialize() != ordinary.values {
                return Err(LeadingError::CharacterTable(String::from("supplied table does not specialize to the group's character table")));
            }
            h
        }
        None => hecke_table(group, weights, &classes, &ordinary, &cells)?,
    };
    let polys = ClassPolynomials::compute(table, weights, &classes);
    let data = LeadingData::compute(table, &polys, &hecke);
    let multiplicities = cell_multiplicities(&cells, weights, &hecke, &ordinary)?;
    let tables = (0..cells.len())
        .map(|i| cell_leading_table(&data, table, &cells, i).map_err(|e| format!("{e}")))
        .collect();
    Ok(LeadingAnalysis { classes, ordinary, hecke, data, cells, multiplicities, tables })
}

/// Outcome of one named check; `violations` is empty iff it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn word_of(table: &ElementTable, w: ElemId) -> String {
    let letters: Vec<String> = table.word(w).iter().map(|s| format!("{s}")).collect();
    format!("[{}]", letters.join(","))
}

/// Every cell has a unique element d of D̃, with d² = 1 and ñ_d = ±1.
pub fn check_conj42(an: &LeadingAnalysis, table: &ElementTable) -> CheckReport {
    let mut violations = Vec::new();
    for (i, cell) in an.cells.iter().enumerate() {
        let ds: Vec<ElemId> = cell.elements.iter().copied().filter(|&w| !an.data.n[w as usize].is_zero()).collect();
        if ds.len() != 1 {
            violations.push(format!("cell {i} contains {} elements of D̃", ds.len()));
        }
        for d in ds {
            if table.inverse(d) != d {
                violations.push(format!("{} is not an involution", word_of(table, d)));
            }
            let n = &an.data.n[d as usize];
            if *n != Cyc::one() && *n != Cyc::int(-1) {
                violations.push(format!("ñ at {} is {n}", word_of(table, d)));
            }
        }
    }
    CheckReport { name: "conj42", violations }
}

/// Cell-restricted orthogonality, the support condition, and c*_d = m(𝔠, E).
pub fn check_cell_orthogonality(an: &LeadingAnalysis, table: &ElementTable) -> CheckReport {
    let mut violations = Vec::new();
    let data = &an.data;
    let irr = data.labels.len();
    for (i, cell) in an.cells.iter().enumerate() {
        for &w in &cell.elements {
            if !data.coeffs[w as usize].is_empty() && !cell.contains(table.inverse(w)) {
                violations.push(format!("c at {} is nonzero but its inverse leaves cell {i}", word_of(table, w)));
            }
        }
        for e in 0..irr {
            for e2 in e..irr {
                let mut acc = Cyc::zero();
                for &w in &cell.elements {
                    acc = &acc + &(&data.c(w, e) * &data.c(w, e2));
                }
                let expected = if e == e2 { data.f[e].scale(&Rat::int(an.multiplicities[i][e])) } else { Cyc::zero() };
                if acc != expected {
                    violations.push(format!("cell {i}: Σ c·c for ({}, {}) is {acc}, expected {expected}", data.labels[e], data.labels[e2]));
                }
            }
        }
        if let Ok(t) = &an.tables[i] {
            for (r, &e) in t.rows.iter().enumerate() {
                if t.entries[r][0] != Cyc::int(an.multiplicities[i][e]) {
                    violations.push(format!("cell {i}: c* at d for {} is not the multiplicity", data.labels[e]));
                }
            }
        }
    }
    CheckReport { name: "cell-orthogonality", violations }
}

/// Σ_w c_{w,E}c_{w,E′} = δ f_E dim E and c_{w,E} = c_{w⁻¹,E}.
pub fn check_orthogonality(an: &LeadingAnalysis, table: &ElementTable) -> CheckReport {
    let mut violations = Vec::new();
    let data = &an.data;
    let irr = data.labels.len();
    let mut gram = vec![vec![Cyc::zero(); irr]; irr];
    for row in &data.coeffs {
        for (e, c) in row {
            for (e2, c2) in row {
                let (e, e2) = (*e as usize, *e2 as usize);
                gram[e][e2] = &gram[e][e2] + &(c * c2);
            }
        }
    }
    for e in 0..irr {
        for e2 in 0..irr {
            let expected = if e == e2 { data.f[e].scale(&Rat::int(data.dims[e] as i64)) } else { Cyc::zero() };
            if gram[e][e2] != expected {
                violations.push(format!("Σ c·c for ({}, {}) is {}", data.labels[e], data.labels[e2], gram[e][e2]));
            }
        }
    }
    for w in 0..table.size() as ElemId {
        if data.coeffs[w as usize] != data.coeffs[table.inverse(w) as usize] {
            violations.push(format!("c differs at {} and its inverse", word_of(table, w)));
        }
    }
    CheckReport { name: "orthogonality", violations }
}

/// Σ_𝔠 m(𝔠, E) = dim E.
pub fn check_regular(an: &LeadingAnalysis) -> CheckReport {
    let mut violations = Vec::new();
    for e in 0..an.data.labels.len() {
        let total: i64 = an.multiplicities.iter().map(|m| m[e]).sum();
        if total != an.data.dims[e] as i64 {
            violations.push(format!("{}: cells contain it {total} times, dim is {}", an.data.labels[e], an.data.dims[e]));
        }
    }
    CheckReport { name: "regular", violations }
}

/// S_L(W) := {E : c*_{w,E} ≥ 0 on every table}, by irreducible index.
pub fn special_set(an: &LeadingAnalysis) -> Vec<usize> {
    let mut ok = vec![true; an.data.labels.len()];
    for t in an.tables.iter().flatten() {
        for (r, &e) in t.rows.iter().enumerate() {
            if t.entries[r].iter().any(|x| x.sign().unwrap_or(-1) < 0) {
                ok[e] = false;
            }
        }
    }
    (0..ok.len()).filter(|&e| ok[e]).collect()
}

/// One S_L member per cell with multiplicity 1 and a strictly positive row; and
/// Σ_{S_L} dim E equals the number of left cells.
pub fn check_cspec(an: &LeadingAnalysis) -> (CheckReport, Vec<usize>) {
    let mut violations = Vec::new();
    let special = special_set(an);
    for (i, t) in an.tables.iter().enumerate() {
        let Ok(t) = t else {
            violations.push(format!("cell {i} has no table"));
            continue;
        };
        let members: Vec<usize> = (0..t.rows.len()).filter(|&r| special.contains(&t.rows[r])).collect();
        if members.len() != 1 {
            violations.push(format!("cell {i} meets S_L in {} irreducibles", members.len()));
            continue;
        }
        let r = members[0];
        let e = t.rows[r];
        if an.multiplicities[i][e] != 1 {
            violations.push(format!("cell {i}: {} has multiplicity {}", an.data.labels[e], an.multiplicities[i][e]));
        }
        if t.entries[r].iter().any(|x| x.sign().unwrap_or(0) <= 0) {
            violations.push(format!("cell {i}: row of {} is not strictly positive", an.data.labels[e]));
        }
    }
    let total: usize = special.iter().map(|&e| an.data.dims[e]).sum();
    if total != an.cells.len() {
        violations.push(format!("Σ dim over S_L is {total}, but there are {} left cells", an.cells.len()));
    }
    (CheckReport { name: "cspec", violations }, special)
}

/// D̃ agrees with the distinguished elements found from P*_{1,w}, with n_w = ñ_w = 1.
pub fn check_distinguished(an: &LeadingAnalysis, table: &ElementTable, pstar_one: &[Laurent]) -> CheckReport {
    let mut violations = Vec::new();
    let found = crate::relcells::distinguished(&an.cells, |w| pstar_one[w as usize].clone());
    let mut from_p: Vec<ElemId> = Vec::new();
    for (i, d) in found.iter().enumerate() {
        match d.element {
            Some(w) => {
                from_p.push(w);
                let n = &d.candidates[0].2;
                if !n.is_one() || !an.data.n[w as usize].is_one() {
                    violations.push(format!("cell {i}: n = {n}, ñ = {} at {}", an.data.n[w as usize], word_of(table, w)));
                }
            }
            None => violations.push(format!("cell {i}: Δ has no strict minimum")),
        }
    }
    from_p.sort_unstable();
    if from_p != an.data.d_tilde {
        violations.push(String::from("the distinguished elements differ from D̃"));
    }
    CheckReport { name: "distinguished", violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcells::{left_cells, CellOptions};

    fn run(name: &str, weights: &[i64]) -> (CoxeterGroup, LeadingAnalysis) {
        let g = CoxeterGroup::from_name(name).unwrap();
        let l = WeightFunction::validate(g.coxeter_matrix(), weights).unwrap();
        let cells = left_cells(&g, &l, &CellOptions::default()).unwrap();
        let an = analyze(&g, &l, cells).unwrap();
        (g, an)
    }

    #[test]
    fn a1_singletons() {
        let (g, an) = run("A1", &[1]);
        let t = g.elements().unwrap();
        assert_eq!(an.cells.len(), 2);
        for table in &an.tables {
            assert_eq!(table.as_ref().unwrap().entries, vec![vec![Cyc::one()]]);
        }
        assert!(check_conj42(&an, t).passed());
    }

    #[test]
    fn i2_5_equal() {
        let (g, an) = run("I2(5)", &[1, 1]);
        let t = g.elements().unwrap();
        let words: Vec<Vec<usize>> = an.data.d_tilde.iter().map(|&w| t.word(w)).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![0, 1, 0, 1, 0]]);
        for r in [check_conj42(&an, t), check_orthogonality(&an, t), check_cell_orthogonality(&an, t), check_regular(&an)] {
            assert!(r.passed(), "{r:?}");
        }
        let alpha = Cyc::golden();
        let expected = vec![vec![Cyc::one(), alpha.clone()], vec![Cyc::one(), &Cyc::one() - &alpha]];
        let big: Vec<&CellTable> = an.tables.iter().flatten().filter(|t| t.columns.len() == 2).collect();
        assert_eq!(big.len(), 2);
        for tb in big {
            assert_eq!(tb.entries, expected);
        }
    }

    fn labelled<'a>(an: &'a LeadingAnalysis, t: &CellTable) -> (Vec<&'a str>, Vec<Vec<Cyc>>) {
        (t.rows.iter().map(|&e| an.data.labels[e].as_str()).collect(), t.entries.clone())
    }

    #[test]
    fn h3_tables() {
        let (g, an) = run("H3", &[1, 1, 1]);
        let t = g.elements().unwrap();
        let mut sizes: Vec<usize> = an.cells.iter().map(|c| c.elements.len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        assert_eq!(sizes, vec![1, 5, 6, 8]);
        for r in [check_conj42(&an, t), check_orthogonality(&an, t), check_cell_orthogonality(&an, t), check_regular(&an), check_cspec(&an).0] {
            assert!(r.passed(), "{r:?}");
        }
        let alpha = Cyc::golden();
        let golden = vec![vec![Cyc::one(), alpha.clone()], vec![Cyc::one(), &Cyc::one() - &alpha]];
        let sign = vec![vec![Cyc::one(), Cyc::one()], vec![Cyc::one(), Cyc::int(-1)]];
        for tb in an.tables.iter().flatten().filter(|tb| tb.rows.len() > 1) {
            let (rows, entries) = labelled(&an, tb);
            assert_eq!(rows.len(), 2);
            if rows[0].starts_with('4') {
                assert_eq!(entries, sign);
            } else {
                assert_eq!(entries, golden, "{rows:?}");
            }
        }
    }

    #[test]
    fn i2_8_unequal() {
        let (g, an) = run("I2(8)", &[2, 1]);
        let t = g.elements().unwrap();
        let words: Vec<Vec<usize>> = an.data.d_tilde.iter().map(|&w| t.word(w)).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![1, 0, 1], vec![0, 1, 0, 1, 0, 1, 0], vec![0, 1, 0, 1, 0, 1, 0, 1]]);
        let a_of = |label: &str| an.data.a[an.data.labels.iter().position(|l| l == label).unwrap()];
        let a: Vec<u32> = ["1_W", "sgn1", "sgn2", "sgn", "σ1", "σ2", "σ3"].iter().map(|l| a_of(l)).collect();
        assert_eq!(a, vec![0, 1, 5, 12, 2, 2, 2]);
        let (report, special) = check_cspec(&an);
        assert!(report.passed(), "{report:?}");
        let special: Vec<&str> = special.iter().map(|&e| an.data.labels[e].as_str()).collect();
        assert_eq!(special, vec!["1_W", "σ1", "sgn1", "sgn2", "sgn"]);
        let root2 = Cyc::sqrt_int(2);
        let big: Vec<&CellTable> = an.tables.iter().flatten().filter(|tb| tb.rows.len() == 3).collect();
        assert_eq!(big.len(), 2);
        for tb in big {
            let (rows, entries) = labelled(&an, tb);
            assert_eq!(rows, vec!["σ1", "σ2", "σ3"]);
            let o = Cyc::one;
            assert_eq!(entries, vec![vec![o(), root2.clone(), o()], vec![o(), Cyc::zero(), -o()], vec![o(), -&root2, o()]]);
        }
    }

    #[test]
    fn distinguished_equal_parameters() {
        for name in ["A2", "B3", "H3", "D4"] {
            let g = CoxeterGroup::from_name(name).unwrap();
            let l = WeightFunction::equal(g.rank());
            let cells = left_cells(&g, &l, &CellOptions::default()).unwrap();
            let an = analyze(&g, &l, cells).unwrap();
            let t = g.elements().unwrap();
            let p1 = crate::relcells::pstar_from_identity(&g, &l).unwrap();
            let r = check_distinguished(&an, t, &p1);
            assert!(r.passed(), "{name}: {r:?}");
            assert!(check_cspec(&an).0.passed(), "{name}");
        }
    }
}

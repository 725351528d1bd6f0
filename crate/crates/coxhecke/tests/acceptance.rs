//! One PASS/FAIL line per acceptance criterion. Exact equality throughout.
//!
//! Stretch items are reported but never fail the run; the H4 leading table only runs
//! with COXHECKE_STRETCH=1.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use coxhecke::coxgroup::{genset, CoxeterGroup};
use coxhecke::leading::{
    analyze, check_cell_orthogonality, check_conj42, check_cspec, check_distinguished, check_orthogonality, check_regular,
    CellTable, LeadingAnalysis,
};
use coxhecke::relcells::{left_cells, pstar_from_identity, star_classes, wgraph_verify, CellOptions, LeftCell};
use coxhecke::ring::{Cyc, Laurent, WeightFunction};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| String::from("panicked"));
        Err(msg)
    })
}

fn group(name: &str) -> CoxeterGroup {
    CoxeterGroup::from_name(name).unwrap()
}

fn weights_of(g: &CoxeterGroup, w: &[i64]) -> WeightFunction {
    WeightFunction::validate(g.coxeter_matrix(), w).unwrap()
}

fn star() -> CellOptions {
    CellOptions { star_induction: true, ..Default::default() }
}

fn counts(name: &str) -> (usize, usize, Vec<LeftCell>) {
    let g = group(name);
    let l = WeightFunction::equal(g.rank());
    let cells = left_cells(&g, &l, &star()).unwrap();
    let classes = star_classes(g.elements().unwrap(), g.coxeter_matrix(), &l, &cells).unwrap().into_iter().max().unwrap() + 1;
    (cells.len(), classes, cells)
}

/// A computed (W, L) with its leading-coefficient analysis.
struct Run {
    label: String,
    group: CoxeterGroup,
    weights: WeightFunction,
    an: LeadingAnalysis,
    elapsed: Duration,
}

impl Run {
    fn new(name: &str, weights: &[i64]) -> Run {
        let t0 = Instant::now();
        let group = group(name);
        let l = weights_of(&group, weights);
        let cells = left_cells(&group, &l, &CellOptions::default()).unwrap();
        let an = analyze(&group, &l, cells).unwrap();
        Run { label: format!("{name}{weights:?}"), group, weights: l, an, elapsed: t0.elapsed() }
    }

    fn index(&self, label: &str) -> usize {
        self.an.data.labels.iter().position(|l| l == label).unwrap_or_else(|| panic!("{}: no irreducible {label}", self.label))
    }

    fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&e| self.an.data.labels[e].clone()).collect()
    }

    fn tables(&self) -> Vec<&CellTable> {
        self.an.tables.iter().flatten().collect()
    }

    fn words(&self, ids: &[u32]) -> Vec<Vec<usize>> {
        let t = self.group.elements().unwrap();
        ids.iter().map(|&w| t.word(w)).collect()
    }

    fn special(&self) -> Vec<String> {
        let mut s = self.labels(&check_cspec(&self.an).1);
        s.sort();
        s
    }
}

fn sorted(list: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = list.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn int_table(rows: &[&[i64]]) -> Vec<Vec<Cyc>> {
    rows.iter().map(|r| r.iter().map(|&x| Cyc::int(x)).collect()).collect()
}

fn table_counts() -> Outcome {
    let t0 = Instant::now();
    let mut seen = Vec::new();
    for (name, cells, classes) in [("I2(5)", 4, 4), ("H3", 22, 15), ("D4", 36, 12), ("F4", 72, 29), ("D5", 126, 16)] {
        let (n, k, _) = counts(name);
        ensure(n == cells && k == classes, || format!("{name}: {n}/{k}, expected {cells}/{classes}"))?;
        seen.push(format!("{name} {n}/{k}"));
    }
    let elapsed = t0.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} in {:.1}s", seen.join(", "), elapsed.as_secs_f64()))
}

fn table_counts_stretch() -> Outcome {
    let t0 = Instant::now();
    let mut seen = Vec::new();
    for (name, cells, classes) in [("D6", 578, 34), ("E6", 652, 21), ("H4", 206, 90)] {
        let (n, k, found) = counts(name);
        ensure(n == cells && k == classes, || format!("{name}: {n}/{k}, expected {cells}/{classes}"))?;
        if name == "H4" {
            let mut sizes: Vec<usize> = found.iter().map(LeftCell::len).collect();
            sizes.sort_unstable();
            sizes.dedup();
            ensure(sizes == [1, 8, 18, 25, 32, 36, 326, 392, 436], || format!("H4 cell sizes {sizes:?}"))?;
        }
        seen.push(format!("{name} {n}/{k}"));
    }
    Ok(format!("{} and H4 cell sizes, in {:.1}s", seen.join(", "), t0.elapsed().as_secs_f64()))
}

fn h3_tables(h3: &Run) -> Outcome {
    let mut sizes: Vec<usize> = h3.an.cells.iter().map(LeftCell::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    ensure(sizes == [1, 5, 6, 8], || format!("cell sizes {sizes:?}"))?;
    let alpha = Cyc::golden();
    let golden = vec![vec![Cyc::one(), alpha.clone()], vec![Cyc::one(), &Cyc::one() - &alpha]];
    let sign = int_table(&[&[1, 1], &[1, -1]]);
    let mut kinds = [0; 2];
    for t in h3.tables().into_iter().filter(|t| t.rows.len() > 1) {
        if t.entries == sign {
            kinds[0] += 1;
        } else if t.entries == golden {
            kinds[1] += 1;
        } else {
            return Err(format!("table {:?} for {:?}", t.entries, h3.labels(&t.rows)));
        }
    }
    ensure(kinds[0] > 0 && kinds[1] > 0, || format!("table kinds {kinds:?}"))?;
    Ok(format!("sizes {{1,5,6,8}}; {} sign and {} golden 2x2 tables", kinds[0], kinds[1]))
}

fn dihedral(i25: &Run, i28: &Run) -> Outcome {
    let d5 = i25.words(&i25.an.data.d_tilde);
    ensure(d5 == [vec![], vec![0], vec![1], vec![0, 1, 0, 1, 0]], || format!("I2(5) D̃ = {d5:?}"))?;
    let alpha = Cyc::golden();
    let golden = vec![vec![Cyc::one(), alpha.clone()], vec![Cyc::one(), &Cyc::one() - &alpha]];
    let big: Vec<&CellTable> = i25.tables().into_iter().filter(|t| t.rows.len() == 2).collect();
    ensure(big.len() == 2 && big.iter().all(|t| t.entries == golden), || String::from("I2(5) golden tables"))?;

    // numbering: 1_k starts with the heavier generator s_0, 2_k with s_1
    let d8 = i28.words(&i28.an.data.d_tilde);
    let expect: Vec<Vec<usize>> =
        vec![vec![], vec![0], vec![1], vec![1, 0, 1], vec![0, 1, 0, 1, 0, 1, 0], vec![0, 1, 0, 1, 0, 1, 0, 1]];
    ensure(d8 == expect, || format!("I2(8) D̃ = {d8:?}"))?;
    let a: Vec<u32> = ["1_W", "sgn1", "sgn2", "sgn", "σ1", "σ2", "σ3"].iter().map(|l| i28.an.data.a[i28.index(l)]).collect();
    // a_sgn = (m/2)(a+b) = 12 for m = 8, b = 2, a = 1
    ensure(a == [0, 1, 5, 12, 2, 2, 2], || format!("I2(8) a-invariants {a:?}"))?;
    let root2 = Cyc::sqrt_int(2);
    let o = Cyc::one;
    let want = vec![vec![o(), root2.clone(), o()], vec![o(), Cyc::zero(), -o()], vec![o(), -&root2, o()]];
    let big: Vec<&CellTable> = i28.tables().into_iter().filter(|t| t.rows.len() == 3).collect();
    ensure(big.len() == 2 && big.iter().all(|t| t.entries == want), || String::from("I2(8) √2 tables"))?;
    let n = &i28.an.data.n[i28.group.elements().unwrap().from_word(&[0, 1, 0, 1, 0, 1, 0]) as usize];
    ensure(*n == Cyc::int(-1), || format!("ñ at 1_7 is {n}"))?;
    Ok(format!(
        "I2(5) D̃ and golden table; I2(8) D̃, a = {a:?}, √2 table, ñ(1_7) = -1 ({:.1}s)",
        (i25.elapsed + i28.elapsed).as_secs_f64()
    ))
}

const F4_EQUAL: &[&str] = &["1_1", "1_4", "9_1", "9_4", "12", "4_2", "4_5", "8_1", "8_2", "8_3", "8_4"];
const F4_DOUBLE: &[&str] =
    &["1_1", "1_3", "1_4", "2_2", "2_3", "2_4", "4_1", "9_1", "9_2", "9_3", "12", "4_2", "4_3", "4_4", "4_5", "8_1", "8_2", "8_4"];
const F4_GENERIC: &[&str] = &[
    "1_1", "1_2", "1_3", "1_4", "2_1", "2_2", "2_3", "2_4", "4_1", "9_1", "9_2", "9_3", "9_4", "12", "4_2", "4_3", "4_4", "4_5",
    "8_1", "8_2", "8_3", "8_4",
];

/// `shapes`: every cell has at most three constituents, with the stated tables (unequal parameters only).
fn f4_regime(run: &Run, expected: &[&str], shapes: bool) -> Result<(), String> {
    let (report, _) = check_cspec(&run.an);
    ensure(report.passed(), || format!("{}: {:?}", run.label, report.violations))?;
    let special = run.special();
    ensure(special == sorted(expected), || format!("{}: S_L = {special:?}", run.label))?;
    ensure(run.elapsed < Duration::from_secs(1800), || format!("{}: took {:?}", run.label, run.elapsed))?;
    if !shapes {
        return Ok(());
    }
    let s12 = run.index("12");
    let s16 = run.index("16");
    let sixes = [run.index("6_1"), run.index("6_2")];
    for t in run.tables() {
        match t.rows.len() {
            1 => {}
            2 => {
                ensure(t.entries == int_table(&[&[1, 1], &[1, -1]]), || format!("{}: 2x2 table {:?}", run.label, t.entries))?;
                ensure(check_cspec(&run.an).1.contains(&t.rows[0]), || format!("{}: E_1 not in S_L", run.label))?;
            }
            3 => {
                ensure(t.entries == int_table(&[&[1, 2, 1], &[1, -1, 1], &[1, 0, -1]]), || {
                    format!("{}: 3x3 table {:?}", run.label, t.entries)
                })?;
                ensure(t.rows[0] == s12 && sixes.contains(&t.rows[1]) && t.rows[2] == s16, || {
                    format!("{}: 3x3 rows {:?}", run.label, run.labels(&t.rows))
                })?;
            }
            k => return Err(format!("{}: a cell table with {k} rows", run.label)),
        }
    }
    Ok(())
}

fn f4(runs: &[Run; 4]) -> Outcome {
    let [equal, double, generic, wide] = runs;
    f4_regime(equal, F4_EQUAL, false)?;
    f4_regime(double, F4_DOUBLE, true)?;
    f4_regime(generic, F4_GENERIC, true)?;
    f4_regime(wide, F4_GENERIC, true)?;

    let t = double.group.elements().unwrap();
    let d = t.from_word(&[1, 0, 2, 1, 0, 2, 1, 2]);
    let w = t.from_word(&[1, 2, 1, 0, 2, 1, 2, 3, 2, 1, 0, 2, 1, 2]);
    let cell = double.tables().into_iter().find(|c| c.distinguished == d).ok_or("no cell with d = s1s0s2s1s0s2s1s2")?;
    ensure(cell.n_d == Cyc::int(-1), || format!("ñ_d = {}", cell.n_d))?;
    let mut cols = cell.columns.clone();
    cols.sort_unstable();
    let mut want = vec![d, w];
    want.sort_unstable();
    ensure(cols == want, || String::from("C ∩ C⁻¹ is not {d, w}"))?;
    ensure(double.labels(&cell.rows) == ["4_1", "16"], || format!("rows {:?}", double.labels(&cell.rows)))?;
    ensure(cell.entries == int_table(&[&[1, 1], &[1, -1]]), || format!("table {:?}", cell.entries))?;

    // b = 2a: three cells whose modules are 1_3+8_3, 2_1+9_1, 9_1+8_3
    for pair in [["1_3", "8_3"], ["2_1", "9_1"], ["9_1", "8_3"]] {
        let idx = [double.index(pair[0]), double.index(pair[1])];
        let found = double.an.multiplicities.iter().any(|m| {
            m.iter().enumerate().all(|(e, &k)| k == i64::from(idx.contains(&e)))
        });
        ensure(found, || format!("no cell with module {} + {}", pair[0], pair[1]))?;
    }
    let times: Vec<String> = runs.iter().map(|r| format!("{:.0}s", r.elapsed.as_secs_f64())).collect();
    Ok(format!("S_L lists for (1,1) (1,2) (2,3) (1,3), the ñ_d = -1 cell, 2x2 and 3x3 tables; {}", times.join("/")))
}

fn e6_involutions() -> Outcome {
    let t0 = Instant::now();
    let n = group("E6").involutions().unwrap().len();
    let elapsed = t0.elapsed();
    ensure(n == 892 && elapsed < Duration::from_secs(120), || format!("{n} involutions in {elapsed:?}"))?;
    Ok(format!("892 in {:.1}s", elapsed.as_secs_f64()))
}

fn oracle_suite() -> Outcome {
    let mut names: Vec<String> = ["A2", "B2", "G2", "A3"].iter().map(|s| s.to_string()).collect();
    names.extend((3..=8).map(|m| format!("I2({m})")));
    for name in &names {
        support::oracle::check_group(name);
    }
    Ok(format!("{} groups", names.len()))
}

fn assemble_suite() -> Outcome {
    support::assemble::check("I2(5)", &[1, 1], &[0], None);
    for w in [[1, 1, 1], [2, 1, 1], [1, 2, 2], [3, 1, 1]] {
        support::assemble::check("B3", &w, &[0, 1], None);
    }
    support::assemble::check("F4", &[1, 1, 2, 2], &[0, 1, 2], Some(1000));
    Ok(String::from("I2(5)←A1, B3←B2 on all pairs, F4(1,2)←B3 on 1000 pairs"))
}

fn wgraph_suite(runs: &[&Run]) -> Outcome {
    let mut graphs = 0;
    let mut mutations = 0;
    for r in runs {
        let cox = r.group.coxeter_matrix();
        for c in &r.an.cells {
            wgraph_verify(&c.wgraph, &r.weights, cox).map_err(|e| format!("{}: {e:?}", r.label))?;
            graphs += 1;
            for i in 0..c.wgraph.edges.len() {
                let mut bad = c.wgraph.clone();
                bad.edges[i].m = &bad.edges[i].m + &Laurent::one();
                ensure(wgraph_verify(&bad, &r.weights, cox).is_err(), || format!("{}: mutation of edge {i} unnoticed", r.label))?;
                mutations += 1;
            }
        }
    }
    Ok(format!("{graphs} W-graphs verified, {mutations} single-edge mutations rejected"))
}

fn leading_suite(runs: &[&Run]) -> Outcome {
    for r in runs {
        let t = r.group.elements().unwrap();
        for report in [
            check_orthogonality(&r.an, t),
            check_regular(&r.an),
            check_cspec(&r.an).0,
            check_conj42(&r.an, t),
            check_cell_orthogonality(&r.an, t),
        ] {
            ensure(report.passed(), || format!("{} {}: {:?}", r.label, report.name, report.violations))?;
        }
    }
    Ok(format!("orthogonality, regular, countcell, conj42 on {} (W,L)", runs.len()))
}

fn distinguished_suite(runs: &[&Run]) -> Outcome {
    let mut done = Vec::new();
    for r in runs.iter().filter(|r| r.weights.is_equal_parameter()) {
        let p1 = pstar_from_identity(&r.group, &r.weights).unwrap();
        let report = check_distinguished(&r.an, r.group.elements().unwrap(), &p1);
        ensure(report.passed(), || format!("{}: {:?}", r.label, report.violations))?;
        done.push(r.label.clone());
    }
    Ok(format!("𝒟 = D̃ with n = ñ = 1 on {}", done.join(" ")))
}

fn partitions(cells: &[LeftCell]) -> Vec<Vec<u32>> {
    let mut p: Vec<Vec<u32>> = cells.iter().map(|c| c.elements.clone()).collect();
    p.sort();
    p
}

fn chain_suite() -> Outcome {
    let chains: [(&str, Vec<u32>); 2] = [
        ("H3", vec![0, genset(&[2]), genset(&[1, 2]), genset(&[0, 1, 2])]),
        ("D4", vec![0, genset(&[0]), genset(&[0, 1]), genset(&[0, 1, 2]), genset(&[0, 1, 2, 3])]),
    ];
    for (name, chain) in chains {
        let g = group(name);
        let l = WeightFunction::equal(g.rank());
        let plain = partitions(&left_cells(&g, &l, &CellOptions::default()).unwrap());
        let starred = partitions(&left_cells(&g, &l, &star()).unwrap());
        let other = partitions(&left_cells(&g, &l, &CellOptions { chain: Some(chain), ..Default::default() }).unwrap());
        ensure(plain == starred && plain == other, || format!("{name}: partitions differ"))?;
    }
    Ok(String::from("H3 and D4 agree across chains and star induction"))
}

fn h4_table() -> Outcome {
    if std::env::var_os("COXHECKE_STRETCH").is_none() {
        return Ok(String::from("skipped; set COXHECKE_STRETCH=1 to run"));
    }
    let h4 = Run::new("H4", &[1, 1, 1, 1]);
    let cell = h4.tables().into_iter().find(|t| h4.an.cells[t.cell].len() == 326).ok_or("no 326-element cell table")?;
    // the special row of this cell is the 24-dimensional member of S_L
    let special = check_cspec(&h4.an).1;
    let rows: Vec<usize> = (0..cell.rows.len()).filter(|&r| special.contains(&cell.rows[r])).collect();
    ensure(rows.len() == 1 && h4.an.data.dims[cell.rows[rows[0]]] == 24, || format!("special rows {rows:?}"))?;
    ensure(cell.entries[rows[0]].iter().all(|x| x.sign() == Ok(1)), || String::from("special row not strictly positive"))?;
    Ok(format!("special 24-dimensional row strictly positive ({:.0}s)", h4.elapsed.as_secs_f64()))
}

struct Line {
    id: &'static str,
    title: &'static str,
    gating: bool,
    outcome: Outcome,
}

fn main() {
    let mut lines = Vec::new();
    let mut push = |id, title, gating, f: &mut dyn FnMut() -> Outcome| {
        let outcome = guarded(f);
        let status = match (&outcome, gating) {
            (Ok(_), _) => "PASS",
            (Err(_), true) => "FAIL",
            (Err(_), false) => "MISS",
        };
        let detail = match &outcome {
            Ok(s) | Err(s) => s.clone(),
        };
        println!("{status} {id:<4} {title}: {detail}");
        lines.push(Line { id, title, gating, outcome });
    };

    push("1", "left-cell and ≈-class counts", true, &mut table_counts);
    push("1s", "stretch cell counts (D6, E6, H4)", false, &mut table_counts_stretch);

    let h3 = Run::new("H3", &[1, 1, 1]);
    push("2", "H3 cell sizes and 2x2 tables", true, &mut || h3_tables(&h3));

    let i25 = Run::new("I2(5)", &[1, 1]);
    let i28 = Run::new("I2(8)", &[2, 1]);
    push("3", "I2(5) and I2(8) with (b,a)=(2,1)", true, &mut || dihedral(&i25, &i28));

    let f4runs = [
        Run::new("F4", &[1, 1, 1, 1]),
        Run::new("F4", &[1, 1, 2, 2]),
        Run::new("F4", &[2, 2, 3, 3]),
        Run::new("F4", &[1, 1, 3, 3]),
    ];
    push("4", "F4 weight regimes", true, &mut || f4(&f4runs));

    push("5", "E6 involution count", true, &mut e6_involutions);
    push("5s", "E8 involution count via classes", false, &mut || {
        Err(String::from("not attempted: class enumeration here needs the elements, and |E8| is above the cap"))
    });

    let extra = [Run::new("A3", &[1, 1, 1]), Run::new("B3", &[2, 1, 1]), Run::new("D4", &[1, 1, 1, 1]), Run::new("G2", &[3, 1])];
    let all: Vec<&Run> = [&h3, &i25, &i28].into_iter().chain(&f4runs).chain(&extra).collect();
    push("6a", "P* against the bar-invariance oracle", true, &mut oracle_suite);
    push("6b", "relative P* reassembly", true, &mut assemble_suite);
    push("6c", "W-graph relations and mutations", true, &mut || wgraph_suite(&all));
    push("6d", "orthogonality, regular module, countcell, conj42", true, &mut || leading_suite(&all));
    push("6e", "distinguished elements, equal parameters", true, &mut || distinguished_suite(&all));
    push("6f", "partition independent of chain and star induction", true, &mut chain_suite);

    push("7", "H4 326-cell table (stretch)", false, &mut h4_table);

    let failed: Vec<&Line> = lines.iter().filter(|l| l.gating && l.outcome.is_err()).collect();
    let missed = lines.iter().filter(|l| !l.gating && l.outcome.is_err()).count();
    println!("{} gating criteria failed, {missed} stretch items missed", failed.len());
    for l in &failed {
        println!("  failed: {} {}", l.id, l.title);
    }
    if !failed.is_empty() {
        std::process::exit(1);
    }
}

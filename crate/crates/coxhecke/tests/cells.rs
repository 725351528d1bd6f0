use std::time::Instant;

use coxhecke::coxgroup::{genset, CoxeterGroup};
use coxhecke::relcells::{left_cells, star_classes, wgraph_verify, CellOptions, LeftCell};
use coxhecke::ring::WeightFunction;

fn run(name: &str, opts: &CellOptions) -> (CoxeterGroup, Vec<LeftCell>) {
    let g = CoxeterGroup::from_name(name).unwrap();
    let l = WeightFunction::equal(g.rank());
    let t0 = Instant::now();
    let cells = left_cells(&g, &l, opts).unwrap();
    eprintln!("{name}: {} cells in {:?}", cells.len(), t0.elapsed());
    (g, cells)
}

fn classes(g: &CoxeterGroup, cells: &[LeftCell]) -> usize {
    let l = WeightFunction::equal(g.rank());
    star_classes(g.elements().unwrap(), g.coxeter_matrix(), &l, cells).unwrap().into_iter().max().unwrap() + 1
}

fn partitions(cells: &[LeftCell]) -> Vec<Vec<u32>> {
    let mut p: Vec<Vec<u32>> = cells.iter().map(|c| c.elements.clone()).collect();
    p.sort();
    p
}

#[test]
fn d4_counts_and_options_agree() {
    let (g, plain) = run("D4", &CellOptions::default());
    assert_eq!(plain.len(), 36);
    assert_eq!(classes(&g, &plain), 12);
    let (_, star) = run("D4", &CellOptions { star_induction: true, ..Default::default() });
    assert_eq!(partitions(&plain), partitions(&star));
    assert_eq!(plain, star);
    let chain = vec![0, genset(&[0]), genset(&[0, 1]), genset(&[0, 1, 2]), genset(&[0, 1, 2, 3])];
    let (_, other) = run("D4", &CellOptions { chain: Some(chain), ..Default::default() });
    assert_eq!(partitions(&plain), partitions(&other));
    let l = WeightFunction::equal(4);
    for c in &plain {
        wgraph_verify(&c.wgraph, &l, g.coxeter_matrix()).unwrap();
    }
}

#[test]
fn h3_options_agree() {
    let (_, plain) = run("H3", &CellOptions::default());
    let (_, star) = run("H3", &CellOptions { star_induction: true, ..Default::default() });
    assert_eq!(plain, star);
    let chain = vec![0, genset(&[2]), genset(&[1, 2]), genset(&[0, 1, 2])];
    let (_, other) = run("H3", &CellOptions { chain: Some(chain), ..Default::default() });
    assert_eq!(partitions(&plain), partitions(&other));
}

#[test]
fn f4_and_d5_counts() {
    let (g, cells) = run("F4", &CellOptions { star_induction: true, ..Default::default() });
    assert_eq!(cells.len(), 72);
    assert_eq!(classes(&g, &cells), 29);
    let (g, cells) = run("D5", &CellOptions { star_induction: true, ..Default::default() });
    assert_eq!(cells.len(), 126);
    assert_eq!(classes(&g, &cells), 16);
}

#[test]
fn larger_groups() {
    for (name, n, k) in [("D6", 578, 34), ("E6", 652, 21), ("H4", 206, 90)] {
        let (g, cells) = run(name, &CellOptions { star_induction: true, ..Default::default() });
        assert_eq!(cells.len(), n, "{name}");
        assert_eq!(classes(&g, &cells), k, "{name}");
    }
}

#[test]
fn wgraph_mutation_breaks_relations() {
    use coxhecke::ring::Laurent;
    for (name, w) in [("H3", vec![1i64, 1, 1]), ("B3", vec![2, 1, 1]), ("I2(8)", vec![2, 1]), ("F4", vec![1, 1, 2, 2])] {
        let g = CoxeterGroup::from_name(name).unwrap();
        let l = WeightFunction::validate(g.coxeter_matrix(), &w).unwrap();
        let cells = left_cells(&g, &l, &CellOptions::default()).unwrap();
        let mut mutated = 0;
        for c in &cells {
            wgraph_verify(&c.wgraph, &l, g.coxeter_matrix()).unwrap();
            for i in 0..c.wgraph.edges.len() {
                let mut bad = c.wgraph.clone();
                bad.edges[i].m = &bad.edges[i].m + &Laurent::one();
                assert!(wgraph_verify(&bad, &l, g.coxeter_matrix()).is_err(), "{name}: edge {i} mutation went unnoticed");
                mutated += 1;
            }
        }
        assert!(mutated > 0, "{name}");
    }
}

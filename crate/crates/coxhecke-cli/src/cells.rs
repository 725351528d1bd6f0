use std::path::{Path, PathBuf};

use coxhecke::coxgroup::{genset, genset_members, CoxeterGroup, ElemId, ElementTable};
use coxhecke::relcells::{left_cells_with, star_classes, BlockJob, BlockRunner, CellError, CellOptions, LeftCell, WEdge, WGraph};
use coxhecke::ring::WeightFunction;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::codec::{laurent_from_json, laurent_to_json, word_from_json, word_to_json};
use crate::error::CliError;
use crate::job::{read_json, JobArgs, Switch};

/// Runs induction blocks on the rayon pool; results come back in job order.
struct ParallelRunner;

impl BlockRunner for ParallelRunner {
    fn run_all(&self, jobs: &[BlockJob<'_>]) -> Vec<Result<Vec<LeftCell>, CellError>> {
        jobs.par_iter().map(|j| j.run()).collect()
    }
}

pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Input(String::from("--threads must be positive")));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Compute(e.to_string()))
}

fn weights_to_json(weights: &WeightFunction) -> Value {
    json!(weights.as_slice())
}

pub fn cells_to_json(group: &CoxeterGroup, weights: &WeightFunction, cells: &[LeftCell], wgraphs: bool) -> Result<Value, CliError> {
    let table = group.elements()?;
    let classes = if weights.is_equal_parameter() {
        Some(star_classes(table, group.coxeter_matrix(), weights, cells)?)
    } else {
        None
    };
    let cells: Vec<Value> = cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let mut obj = Map::new();
            let words: Vec<Value> = cell.wgraph.elements.iter().map(|&w| word_to_json(&table.word(w))).collect();
            obj.insert(String::from("elements"), Value::Array(words));
            if let Some(c) = &classes {
                obj.insert(String::from("starClass"), json!(c[i]));
            }
            if wgraphs {
                let g = &cell.wgraph;
                obj.insert(String::from("I"), g.idesc.iter().map(|&m| json!(genset_members(m))).collect());
                let edges: Vec<Value> =
                    g.edges.iter().map(|e| json!({"s": e.s, "x": e.x, "y": e.y, "m": laurent_to_json(&e.m)})).collect();
                obj.insert(String::from("edges"), Value::Array(edges));
                let maps: Map<String, Value> = g.zero_maps.iter().map(|(s, p)| (s.to_string(), json!(p))).collect();
                obj.insert(String::from("zeroWeightMaps"), Value::Object(maps));
            }
            Value::Object(obj)
        })
        .collect();
    Ok(json!({
        "group": group.cartanname(),
        "weights": weights_to_json(weights),
        "cells": cells,
    }))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::Input(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, CliError> {
    field(v, key)?.as_array().ok_or_else(|| CliError::Input(format!("field {key:?} is not an array")))
}

fn index(v: &Value) -> Result<u32, CliError> {
    v.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| CliError::Input(format!("bad index {v}")))
}

fn cell_from_json(table: &ElementTable, v: &Value) -> Result<LeftCell, CliError> {
    let elements: Vec<ElemId> =
        array(v, "elements")?.iter().map(|w| Ok(table.from_word(&word_from_json(w)?))).collect::<Result<_, CliError>>()?;
    if elements.windows(2).any(|p| p[0] >= p[1]) {
        return Err(CliError::Input(String::from("cell elements are not in increasing order")));
    }
    let idesc = array(v, "I")?.iter().map(|s| Ok(genset(&word_from_json(s)?))).collect::<Result<_, CliError>>()?;
    let edges = array(v, "edges")?
        .iter()
        .map(|e| {
            Ok(WEdge {
                s: index(field(e, "s")?)? as usize,
                x: index(field(e, "x")?)?,
                y: index(field(e, "y")?)?,
                m: laurent_from_json(field(e, "m")?)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let maps = field(v, "zeroWeightMaps")?.as_object().ok_or_else(|| CliError::Input(String::from("bad zeroWeightMaps")))?;
    let mut zero_maps = Vec::new();
    for (s, perm) in maps {
        let s: usize = s.parse().map_err(|_| CliError::Input(format!("bad generator {s:?}")))?;
        let perm = perm.as_array().ok_or_else(|| CliError::Input(String::from("bad zero-weight map")))?;
        zero_maps.push((s, perm.iter().map(index).collect::<Result<_, _>>()?));
    }
    zero_maps.sort_by_key(|(s, _)| *s);
    let wgraph = WGraph { elements: elements.clone(), idesc, edges, zero_maps };
    Ok(LeftCell { elements, wgraph })
}

/// Reads a partition written by [`cells_to_json`] with W-graphs.
pub fn cells_from_json(group: &CoxeterGroup, weights: &WeightFunction, v: &Value) -> Result<Vec<LeftCell>, CliError> {
    if field(v, "group")?.as_str() != Some(group.cartanname()) || *field(v, "weights")? != weights_to_json(weights) {
        return Err(CliError::Input(String::from("partition belongs to a different group or weight function")));
    }
    let table = group.elements()?;
    array(v, "cells")?.iter().map(|c| cell_from_json(table, c)).collect()
}

fn cache_path(dir: &Path, group: &CoxeterGroup, weights: &WeightFunction) -> PathBuf {
    let name: String = group.cartanname().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let w: Vec<String> = weights.as_slice().iter().map(|x| x.to_string()).collect();
    dir.join(format!("{name}__{}.json", w.join("-")))
}

/// Left cells with W-graphs, read from the cache when present and written to it otherwise.
pub fn compute_cells(args: &JobArgs, group: &CoxeterGroup, weights: &WeightFunction) -> Result<Vec<LeftCell>, CliError> {
    let cached = args.cache_dir.as_ref().map(|d| cache_path(d, group, weights));
    if let Some(path) = cached.as_ref().filter(|p| p.exists()) {
        return cells_from_json(group, weights, &read_json(path)?);
    }
    let opts = CellOptions {
        chain: None,
        star_induction: args.star_induction == Switch::On,
        longest_pairing: args.longest_pairing == Switch::On,
    };
    let pool = thread_pool(args.threads)?;
    let cells = pool.install(|| left_cells_with(group, weights, &opts, &ParallelRunner))?;
    if let Some(path) = cached {
        let dir = path.parent().unwrap_or(Path::new("."));
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let text = serde_json::to_string(&cells_to_json(group, weights, &cells, true)?)?;
        // write then rename, so a concurrent reader never sees a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
        std::fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(cells)
}

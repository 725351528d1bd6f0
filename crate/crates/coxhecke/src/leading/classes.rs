//! Conjugacy classes and class polynomials.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::coxgroup::{ConjugacyClass, CoxeterError, CoxeterGroup, ElemId, ElementTable};
use crate::ring::{Laurent, WeightFunction};

/// Classes of an enumerated group with a class lookup per element.
#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<u32>,
}

impl ClassInfo {
    pub fn new(group: &CoxeterGroup) -> Result<ClassInfo, CoxeterError> {
        let classes = group.conjugacy_classes()?;
        let mut class_of = vec![0u32; group.elements()?.size()];
        for (c, cl) in classes.iter().enumerate() {
            for &w in &cl.members {
                class_of[w as usize] = c as u32;
            }
        }
        Ok(ClassInfo { classes, class_of })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn rep(&self, c: usize) -> ElemId {
        self.classes[c].representative
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].size()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size()).collect()
    }

    pub fn class_of(&self, w: ElemId) -> usize {
        self.class_of[w as usize] as usize
    }
}

/// trace(T̃_w, E) = Σ_C f̃_{w,C}·trace(T̃_{w_C}, E) for every element w.
#[derive(Debug, Clone)]
pub struct ClassPolynomials {
    coeffs: Vec<Vec<(u32, Laurent)>>,
}

fn add_into(acc: &mut Vec<(u32, Laurent)>, other: &[(u32, Laurent)], scale: &Laurent) {
    for (c, v) in other {
        let term = v * scale;
        match acc.iter_mut().find(|(d, _)| d == c) {
            Some((_, e)) => *e = &*e + &term,
            None => acc.push((*c, term)),
        }
    }
    acc.retain(|(_, v)| !v.is_zero());
    acc.sort_by_key(|(c, _)| *c);
}

impl ClassPolynomials {
    /// Length-reducing conjugation: a cyclic-shift class either contains some x with
    /// l(sxs) = l(x) − 2, giving f̃_x = f̃_{sxs} + (ε^{L(s)} − ε^{−L(s)}) f̃_{xs},
    /// or consists of elements of minimal length in their class.
    pub fn compute(table: &ElementTable, weights: &WeightFunction, info: &ClassInfo) -> ClassPolynomials {
        let n = table.size();
        let mut coeffs: Vec<Option<Vec<(u32, Laurent)>>> = vec![None; n];
        for w in 0..n as ElemId {
            if coeffs[w as usize].is_some() {
                continue;
            }
            let len = table.length(w);
            let mut shift_class = vec![w];
            let mut queue = VecDeque::from([w]);
            let mut reduction: Option<(ElemId, usize)> = None;
            let mut seen = hashbrown::HashSet::new();
            seen.insert(w);
            while let Some(x) = queue.pop_front() {
                for s in 0..table.rank() {
                    let y = table.lmul(s, table.rmul(x, s));
                    let ly = table.length(y);
                    if ly < len && reduction.is_none() {
                        reduction = Some((x, s));
                    } else if ly == len && seen.insert(y) {
                        shift_class.push(y);
                        queue.push_back(y);
                    }
                }
            }
            let f = match reduction {
                Some((x, s)) => {
                    let y = table.lmul(s, table.rmul(x, s));
                    let xs = table.rmul(x, s);
                    let ls = weights.get(s);
                    let q = &Laurent::eps(ls) - &Laurent::eps(-ls);
                    let mut acc = coeffs[y as usize].clone().expect("shorter element done");
                    add_into(&mut acc, coeffs[xs as usize].as_ref().expect("shorter element done"), &q);
                    acc
                }
                None => vec![(info.class_of(w) as u32, Laurent::one())],
            };
            for x in shift_class {
                coeffs[x as usize] = Some(f.clone());
            }
        }
        ClassPolynomials { coeffs: coeffs.into_iter().map(|c| c.expect("all elements visited")).collect() }
    }

    /// The f̃_{w,C} in the T̃ normalization.
    pub fn get(&self, w: ElemId) -> &[(u32, Laurent)] {
        &self.coeffs[w as usize]
    }

    /// f_{w,C} with T_w = ε^{L(w)}T̃_w, so that trace(T_w) = Σ_C f_{w,C}·trace(T_{w_C}).
    pub fn normalized(
        &self,
        table: &ElementTable,
        weights: &WeightFunction,
        info: &ClassInfo,
        w: ElemId,
    ) -> Vec<(u32, Laurent)> {
        let lw = weighted(table, weights, w);
        self.get(w)
            .iter()
            .map(|(c, f)| (*c, f.shift(lw - weighted(table, weights, info.rep(*c as usize)))))
            .collect()
    }

    /// trace(T̃_w) from values on class representatives.
    pub fn trace(&self, w: ElemId, values: &[Laurent]) -> Laurent {
        let mut acc = Laurent::zero();
        for (c, f) in self.get(w) {
            acc = &acc + &(f * &values[*c as usize]);
        }
        acc
    }
}

fn weighted(table: &ElementTable, weights: &WeightFunction, w: ElemId) -> i32 {
    crate::klbase::weighted_length(table, weights, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcells::{left_cells, wgraph_trace, CellOptions};

    #[test]
    fn trace_identity_on_cell_modules() {
        for (name, w) in [("A3", vec![1i64, 1, 1]), ("B3", vec![2, 1, 1]), ("H3", vec![1, 1, 1]), ("G2", vec![3, 1])] {
            let g = CoxeterGroup::from_name(name).unwrap();
            let l = WeightFunction::validate(g.coxeter_matrix(), &w).unwrap();
            let t = g.elements().unwrap();
            let info = ClassInfo::new(&g).unwrap();
            let polys = ClassPolynomials::compute(t, &l, &info);
            for cell in left_cells(&g, &l, &CellOptions::default()).unwrap() {
                let on_reps: Vec<Laurent> = (0..info.len()).map(|c| wgraph_trace(&cell.wgraph, &l, &t.word(info.rep(c)))).collect();
                for x in 0..t.size() as ElemId {
                    assert_eq!(polys.trace(x, &on_reps), wgraph_trace(&cell.wgraph, &l, &t.word(x)), "{name}");
                }
            }
        }
    }
}

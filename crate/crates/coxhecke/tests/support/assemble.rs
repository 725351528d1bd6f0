//! Relative polynomials over a parabolic subgroup reassemble the ordinary ones.

use coxhecke::coxgroup::{genset, CoxeterGroup, ElemId};
use coxhecke::klbase::{assemble_pstar, parabolic_elements, KlTable, RelativeKl};
use coxhecke::ring::WeightFunction;
use rand::{Rng, SeedableRng};

pub fn check(name: &str, weights: &[i64], jgens: &[usize], samples: Option<usize>) {
    let g = CoxeterGroup::from_name(name).unwrap();
    let l = WeightFunction::validate(g.coxeter_matrix(), weights).unwrap();
    let t = g.elements().unwrap();
    let full = KlTable::new(&g, &l).unwrap();
    let jmask = genset(jgens);
    let kmask = (1 << g.rank()) - 1;
    let sub = KlTable::for_parabolic(t, &l, jmask).unwrap();
    let us = parabolic_elements(t, jmask);
    let rel = RelativeKl::compute(t, &l, kmask, jmask, &us, &sub.to_subgroup_m()).unwrap();
    rel.certify().unwrap();
    let n = t.size() as ElemId;
    let mut pairs: Vec<(ElemId, ElemId)> = Vec::new();
    match samples {
        None => {
            for a in 0..n {
                for b in 0..n {
                    pairs.push((a, b));
                }
            }
        }
        Some(k) => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
            while pairs.len() < k {
                let b = rng.random_range(0..n);
                let a = rng.random_range(0..n);
                // bias toward comparable pairs so most samples are nontrivial
                if t.bruhat_leq(a, b) || rng.random_bool(0.1) {
                    pairs.push((a, b));
                }
            }
        }
    }
    for (a, b) in pairs {
        let (x, u) = t.parabolic_split(a, jmask);
        let (y, v) = t.parabolic_split(b, jmask);
        let got = assemble_pstar(&rel, &sub, x, u, y, v).unwrap();
        assert_eq!(&got, full.kl_pstar(a, b).unwrap(), "{name} {weights:?}: P*({a},{b})");
    }
}


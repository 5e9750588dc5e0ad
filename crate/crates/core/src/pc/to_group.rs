use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Elem, NormalWord, PcPresentation};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, MulOracle};

/// Mixed-radix indexing of normal words: `g_1` is the most significant
/// digit, so the identity is index 0.
#[derive(Clone, Debug)]
pub struct PcGroupMap {
    orders: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
}

impl PcGroupMap {
    pub fn new(p: &PcPresentation) -> Result<Self> {
        let n = p.len();
        let mut strides = vec![1usize; n];
        let mut acc: usize = 1;
        for i in (0..n).rev() {
            strides[i] = acc;
            acc = acc
                .checked_mul(p.orders()[i] as usize)
                .ok_or_else(|| Error::Invalid("group order overflows the index type".into()))?;
        }
        Ok(PcGroupMap {
            orders: p.orders().to_vec(),
            strides,
            order: acc,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self, w: &[u32]) -> usize {
        w.iter()
            .zip(&self.strides)
            .map(|(&e, &s)| e as usize * s)
            .sum()
    }

    pub fn unrank(&self, mut x: usize) -> NormalWord {
        let mut exps = vec![0u32; self.orders.len()];
        for i in 0..exps.len() {
            exps[i] = (x / self.strides[i]) as u32;
            x %= self.strides[i];
        }
        NormalWord(exps)
    }
}

struct PcOracle {
    pres: Arc<PcPresentation>,
    map: PcGroupMap,
}

impl MulOracle for PcOracle {
    fn mul(&self, a: usize, b: usize) -> usize {
        let x = self.map.unrank(a);
        let y = self.map.unrank(b);
        let z = self
            .pres
            .multiply(&x, &y)
            .expect("consistent presentation collects");
        self.map.rank(&z.0)
    }
}

/// Realizes a consistent presentation as a [`FiniteGroup`]. Tabulated when
/// the order is at most `cayley_cap`, otherwise multiplication collects on
/// demand. Generator names become element labels.
pub fn pc_to_group(pres: &PcPresentation, cayley_cap: usize) -> Result<(FiniteGroup, PcGroupMap)> {
    let report = pres.consistency_check()?;
    if !report.is_consistent() {
        return Err(Error::Inconsistent(report.failures.len()));
    }
    let map = PcGroupMap::new(pres)?;
    let order = map.order();
    let n = pres.len();
    let pres_arc = Arc::new(pres.clone());
    let group = if order <= cayley_cap {
        if order > u32::MAX as usize {
            return Err(Error::CapExceeded {
                what: "Cayley table",
                size: order,
                cap: u32::MAX as usize,
            });
        }
        // right multiplication by each generator, then the full table by
        // peeling the last letter of b: a*b = (a*b') * g_k
        let mut right = vec![0u32; order * n.max(1)];
        for x in 0..order {
            let w = map.unrank(x);
            for k in 0..n {
                let mut e = Elem::from_normal(&w, pres, false);
                pres.mul_gen(&mut e, k, 1)?;
                right[x * n + k] = map.rank(&e.exps) as u32;
            }
        }
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            table[a * order] = a as u32;
        }
        for b in 1..order {
            let w = map.unrank(b);
            let k = (0..n).rev().find(|&i| w.0[i] != 0).expect("nonidentity");
            let prev = b - map.strides[k];
            for a in 0..order {
                let ab = table[a * order + prev] as usize;
                table[a * order + b] = right[ab * n + k];
            }
        }
        FiniteGroup::from_table(order, table)?
    } else {
        let oracle = PcOracle {
            pres: pres_arc.clone(),
            map: map.clone(),
        };
        FiniteGroup::from_oracle(order, Arc::new(oracle), cayley_cap)?
    };
    let labels: BTreeMap<String, usize> = (0..n)
        .map(|i| (pres.names()[i].clone(), map.rank(&pres.generator(i).0)))
        .collect();
    Ok((group.with_labels(labels).with_presentation(pres_arc), map))
}

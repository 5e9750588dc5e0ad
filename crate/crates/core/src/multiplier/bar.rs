//! Second homology from the normalized bar resolution.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::zlinalg::{AbelianStructure, Cokernel, DenseMatrix};

/// `H_2(G; Z)` with an explicit cycle basis. Chains live on the pairs
/// `(g, h)` of non-identity elements, `(g, h) -> (g-1)(n-1) + (h-1)`.
#[derive(Clone, Debug)]
pub struct H2Result {
    pub structure: AbelianStructure,
    /// one 2-cycle per invariant factor
    pub cycle_basis: Vec<Vec<BigInt>>,
    order: usize,
    coker: Arc<Cokernel>,
}

fn pair_index(n: usize, g: usize, h: usize) -> usize {
    (g - 1) * (n - 1) + (h - 1)
}

impl H2Result {
    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn chain_len(&self) -> usize {
        let m = self.order.saturating_sub(1);
        m * m
    }

    /// Invariant-factor coordinates of a 2-cycle.
    pub fn coords(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let t = self.structure.torsion().len();
        let c = self.coker.coords(cycle);
        assert!(c[t..].iter().all(|x| x.is_zero()), "chain is not a cycle");
        c[..t].to_vec()
    }
}

/// `d_2(g,h) = [h] - [gh] + [g]` over the non-identity elements.
pub fn boundary_in(g: &FiniteGroup, chain: &[BigInt]) -> Vec<BigInt> {
    let n = g.order();
    let mut out = vec![BigInt::zero(); n - 1];
    for a in 1..n {
        for b in 1..n {
            let c = &chain[pair_index(n, a, b)];
            if c.is_zero() {
                continue;
            }
            out[b - 1] += c;
            let ab = g.mul(a, b);
            if ab != 0 {
                out[ab - 1] -= c;
            }
            out[a - 1] += c;
        }
    }
    out
}

/// `H_2(G)` as the torsion of `C_2 / im d_3`; the quotient by the cycles is
/// free of rank `|G| - 1`, which is checked.
pub fn h2_bar(g: &FiniteGroup, cap: usize) -> Result<H2Result> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "bar resolution",
            size: n,
            cap,
        });
    }
    if n == 1 {
        return Ok(H2Result {
            structure: AbelianStructure::trivial(),
            cycle_basis: Vec::new(),
            order: 1,
            coker: Arc::new(Cokernel::new(0, Vec::new())),
        });
    }
    let one = BigInt::one();
    let neg = -BigInt::one();
    let mut rows = Vec::with_capacity((n - 1).pow(3));
    for a in 1..n {
        for b in 1..n {
            let ab = g.mul(a, b);
            for c in 1..n {
                let bc = g.mul(b, c);
                let mut r = Vec::with_capacity(4);
                r.push((pair_index(n, b, c), one.clone()));
                if ab != 0 {
                    r.push((pair_index(n, ab, c), neg.clone()));
                }
                if bc != 0 {
                    r.push((pair_index(n, a, bc), one.clone()));
                }
                r.push((pair_index(n, a, b), neg.clone()));
                rows.push(r);
            }
        }
    }
    let coker = Cokernel::new((n - 1) * (n - 1), rows);
    let full = coker.structure();
    if full.free_rank() != n - 1 {
        return Err(Error::RankMismatch {
            expected: n - 1,
            found: full.free_rank(),
        });
    }
    let structure = full.torsion_part();
    let cycle_basis = (0..structure.torsion().len())
        .map(|i| coker.generator(i))
        .collect();
    Ok(H2Result {
        structure,
        cycle_basis,
        order: n,
        coker: Arc::new(coker),
    })
}

/// Matrix of `H_2(f)`: column `j` holds the image of the `j`-th basis cycle
/// of `src` in the coordinates of `dst`.
pub fn induced_h2(f: &GroupHom, src: &H2Result, dst: &H2Result) -> Result<DenseMatrix> {
    let (n, m) = (f.domain().order(), f.codomain().order());
    if src.order != n || dst.order != m {
        return Err(Error::DimensionMismatch(
            "homology data does not match the homomorphism".into(),
        ));
    }
    let t = dst.structure.torsion().len();
    let s = src.cycle_basis.len();
    let mut out: DenseMatrix = vec![vec![BigInt::zero(); s]; t];
    for (j, cyc) in src.cycle_basis.iter().enumerate() {
        let mut image = vec![BigInt::zero(); dst.chain_len()];
        for a in 1..n {
            for b in 1..n {
                let c = &cyc[pair_index(n, a, b)];
                if c.is_zero() {
                    continue;
                }
                let (fa, fb) = (f.apply(a), f.apply(b));
                if fa != 0 && fb != 0 {
                    image[pair_index(m, fa, fb)] += c;
                }
            }
        }
        let coords = dst.coords(&image);
        for i in 0..t {
            out[i][j] = coords[i].clone();
        }
    }
    Ok(out)
}

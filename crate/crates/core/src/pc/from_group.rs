use super::{PcPresentation, Word};
use crate::error::{Error, Result};
use crate::group::{lower_central_series, smallest_prime_factor, FiniteGroup, Subgroup};

/// A pc presentation of a nilpotent group refining its lower central
/// series, with prime relative orders. Returns the presentation and the
/// group elements chosen as `g_1, ..., g_n`.
pub fn pc_presentation_of(g: &FiniteGroup) -> Result<(PcPresentation, Vec<usize>)> {
    let series = lower_central_series(g);
    if !series.last().map(|s| s.is_trivial()).unwrap_or(true) {
        return Err(Error::NotNilpotent);
    }
    let mut chosen: Vec<(usize, i64)> = Vec::new();
    let mut s = Subgroup::trivial(g);
    for level in series.iter().rev().skip(1) {
        while s.order() < level.order() {
            let y = level
                .members()
                .iter()
                .copied()
                .find(|&y| !s.contains(y))
                .expect("proper subgroup");
            // order of y modulo s
            let mut m = 1;
            let mut z = y;
            while !s.contains(z) {
                z = g.mul(z, y);
                m += 1;
            }
            let q = smallest_prime_factor(m as u64);
            let x = g.pow(y, (m as u64 / q) as i64);
            s.adjoin(x);
            chosen.push((x, q as i64));
        }
    }
    chosen.reverse();
    let n = chosen.len();
    let elems: Vec<usize> = chosen.iter().map(|c| c.0).collect();
    let orders: Vec<i64> = chosen.iter().map(|c| c.1).collect();
    // tails[i] = <g_i, ..., g_n>
    let mut tails = vec![Subgroup::trivial(g); n + 1];
    for i in (0..n).rev() {
        let mut t = tails[i + 1].clone();
        t.adjoin(elems[i]);
        tails[i] = t;
    }
    let sift = |mut y: usize, from: usize| -> Word {
        let mut w = Vec::new();
        for i in from..n {
            let gi_inv = g.inv(elems[i]);
            let mut e = 0;
            while !tails[i + 1].contains(y) {
                y = g.mul(gi_inv, y);
                e += 1;
            }
            if e > 0 {
                w.push((i, e));
            }
        }
        debug_assert_eq!(y, 0);
        w
    };
    let mut powers = Vec::new();
    let mut comms = Vec::new();
    for i in 0..n {
        powers.push((i, sift(g.pow(elems[i], orders[i]), i + 1)));
        for j in i + 1..n {
            comms.push(((j, i), sift(g.comm(elems[j], elems[i]), i + 1)));
        }
    }
    let names = (1..=n).map(|i| format!("g{i}")).collect();
    let pres = PcPresentation::new(names, orders, &powers, &comms)?;
    Ok((pres, elems))
}

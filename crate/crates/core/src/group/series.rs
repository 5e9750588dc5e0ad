//! Commutator series of pairs, relative centers, agemo subgroups and the
//! power-structure predicates.

use super::{is_power_of, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// `[A,B] = <[a,b] : a in A, b in B>`.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let g = a.parent();
    let mut out = Subgroup::trivial(g);
    if a.is_trivial() || b.is_trivial() {
        return out;
    }
    for &x in a.members() {
        let xi = g.inv(x);
        for &y in b.members() {
            // [x,y] = x^-1 y^-1 x y
            let c = g.mul(g.mul(xi, g.inv(y)), g.mul(x, y));
            if !out.contains(c) {
                out.adjoin(c);
            }
        }
    }
    out
}

/// `[N,G], [N,G,G], ...` down to the trivial subgroup. Stops early (without
/// reaching `1`) if the series stabilizes, which happens only for
/// non-nilpotent pairs.
pub fn pair_lower_central_series(n: &Subgroup) -> Result<Vec<Subgroup>> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let whole = n.parent().whole();
    let mut series = Vec::new();
    let mut cur = n.clone();
    while !cur.is_trivial() {
        let next = commutator_subgroup(&cur, &whole);
        if next == cur {
            break;
        }
        series.push(next.clone());
        cur = next;
    }
    Ok(series)
}

/// Class of the pair `(G,N)`: least `k` with `[N, _k G] = 1`. Trivial `N`
/// has class 0 and a nontrivial central `N` class 1. `None` when the pair is
/// not nilpotent.
pub fn pair_class(n: &Subgroup) -> Result<Option<usize>> {
    if n.is_trivial() {
        return Ok(Some(0));
    }
    let series = pair_lower_central_series(n)?;
    match series.last() {
        None => Ok(Some(1)),
        Some(last) if last.is_trivial() => Ok(Some(series.len())),
        Some(_) => Ok(None),
    }
}

/// Lower central series `G = gamma_1 > gamma_2 > ...`, ending at the first
/// repeated term.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = g.whole();
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(last, &whole);
        if &next == last {
            return series;
        }
        series.push(next);
    }
}

/// Nilpotency class of `G`, `None` if not nilpotent.
pub fn group_class(g: &FiniteGroup) -> Option<usize> {
    pair_class(&g.whole()).expect("G is normal in itself")
}

/// Least common multiple of element orders of `h`.
pub fn exponent(h: &Subgroup) -> u64 {
    h.exponent()
}

fn check_p_subgroup(h: &Subgroup, p: u64) -> Result<()> {
    let g = h.parent();
    for &x in h.members() {
        let o = g.element_order(x);
        if !is_power_of(o, p) {
            return Err(Error::NotPGroup { p, order: o });
        }
    }
    Ok(())
}

/// `agemo_i(H) = <h^(p^i) : h in H>`, generated by the powers of every
/// element.
pub fn agemo(h: &Subgroup, i: u32, p: u64) -> Result<Subgroup> {
    check_p_subgroup(h, p)?;
    let g = h.parent();
    let q = p.pow(i) as i64;
    let mut out = Subgroup::trivial(g);
    for &x in h.members() {
        let y = g.pow(x, q);
        if !out.contains(y) {
            out.adjoin(y);
        }
    }
    Ok(out)
}

/// `Z_1(M,G) <= Z_2(M,G) <= ... <= Z_n(M,G)` with
/// `Z_k(M,G) = { m in M : [m, g_1, ..., g_k] = 1 for all g_i in G }`, the
/// action being conjugation.
pub fn relative_center_series(m: &Subgroup, acting: &Subgroup, n: usize) -> Vec<Subgroup> {
    let g = m.parent();
    // when `acting` normalizes M every [m,g] stays in M and the level sets
    // can be taken inside M; otherwise they live in the whole parent
    let domain: Vec<usize> = if m.is_normalized_by(acting, g) {
        m.members().to_vec()
    } else {
        (0..g.order()).collect()
    };
    let mut level = g.trivial_subgroup();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let members: Vec<usize> = domain
            .iter()
            .copied()
            .filter(|&x| {
                acting
                    .members()
                    .iter()
                    .all(|&y| level.contains(g.comm(x, y)))
            })
            .collect();
        let next = Subgroup::try_from_set(g, members.clone())
            .unwrap_or_else(|| Subgroup::generated(g, &members));
        out.push(next.intersection(m));
        level = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerFlags {
    pub powerfully_embedded: bool,
    pub powerful: bool,
}

fn power_level(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// `[N,G] <= agemo_1(N)` (`agemo_2` for `p = 2`) and the same test for
/// `N = G`.
pub fn powerful_embedding_check(n: &Subgroup, p: u64) -> Result<PowerFlags> {
    let g = n.parent();
    let whole = g.whole();
    check_p_subgroup(&whole, p)?;
    let level = power_level(p);
    let embedded = commutator_subgroup(n, &whole).is_subset_of(&agemo(n, level, p)?);
    let powerful = commutator_subgroup(&whole, &whole).is_subset_of(&agemo(&whole, level, p)?);
    Ok(PowerFlags {
        powerfully_embedded: embedded,
        powerful,
    })
}

//! Products, quotients, complements and Sylow decompositions.

use std::collections::HashSet;

use super::{is_power_of, prime_factors, series, FiniteGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};

/// Direct product with index `(a, b) -> a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (x1, x2) = (x / nb, x % nb);
        for y in 0..n {
            let (y1, y2) = (y / nb, y % nb);
            table[x * n + y] = (a.mul(x1, y1) * nb + b.mul(x2, y2)) as u32;
        }
    }
    FiniteGroup::from_table(n, table).expect("product of groups is a group")
}

/// Coset group `G/N` (cosets indexed in order of their least element) and
/// the projection.
pub fn quotient_group(n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let g = n.parent();
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset[g.mul(x, m)] = id;
        }
    }
    let q = reps.len();
    let mut table = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = coset[g.mul(a, b)] as u32;
        }
    }
    let quotient = FiniteGroup::from_table(q, table)?;
    let proj = GroupHom::new_unchecked(g, &quotient, coset)?;
    Ok((quotient, proj))
}

/// A left action of `K` on `N` by automorphisms: `maps[k][n] = phi_k(n)`.
#[derive(Clone, Debug)]
pub struct Action {
    maps: Vec<Vec<usize>>,
}

impl Action {
    pub fn new(maps: Vec<Vec<usize>>) -> Self {
        Action { maps }
    }

    pub fn trivial(n: &FiniteGroup, k: &FiniteGroup) -> Self {
        Action {
            maps: vec![(0..n.order()).collect(); k.order()],
        }
    }

    /// Extends automorphisms given on generators of `K` to all of `K` using
    /// `phi_{kg} = phi_k ∘ phi_g`. Fails with `NotAction` if two words for the
    /// same element disagree.
    pub fn from_generators(
        n: &FiniteGroup,
        k: &FiniteGroup,
        gens: &[(usize, Vec<usize>)],
    ) -> Result<Self> {
        for (_, phi) in gens {
            check_automorphism(n, phi)?;
        }
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; k.order()];
        maps[0] = Some((0..n.order()).collect());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let phi_x = maps[x].clone().unwrap();
            for (g, phi_g) in gens {
                let y = k.mul(x, *g);
                let composed: Vec<usize> = (0..n.order()).map(|m| phi_x[phi_g[m]]).collect();
                match &maps[y] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::NotAction(format!(
                            "automorphism of K-element {y} is not well defined"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        maps[y] = Some(composed);
                        queue.push(y);
                    }
                }
            }
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    Error::NotAction(format!("K-element {i} not reached from generators"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Action { maps })
    }

    pub fn apply(&self, k: usize, n: usize) -> usize {
        self.maps[k][n]
    }
}

fn check_automorphism(n: &FiniteGroup, phi: &[usize]) -> Result<()> {
    if phi.len() != n.order() {
        return Err(Error::NotAutomorphism(format!(
            "map has {} entries for |N| = {}",
            phi.len(),
            n.order()
        )));
    }
    let mut seen = vec![false; n.order()];
    for &y in phi {
        if y >= n.order() || seen[y] {
            return Err(Error::NotAutomorphism("map is not a bijection".into()));
        }
        seen[y] = true;
    }
    for a in 0..n.order() {
        for b in 0..n.order() {
            if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                return Err(Error::NotAutomorphism(format!("fails on ({a}, {b})")));
            }
        }
    }
    Ok(())
}

/// `N ⋊ K` with `(n1,k1)(n2,k2) = (n1 * phi_{k1}(n2), k1 k2)`, so that
/// `k n k^{-1} = phi_k(n)` inside the product, i.e. `phi_k(n) = n^{k^{-1}}` in
/// right-conjugation notation. Element `(n, k)` has index `n + |N| * k`.
///
/// Returns the product and the embedded copies of `N` (normal) and `K`.
pub fn semidirect_product(
    n: &FiniteGroup,
    k: &FiniteGroup,
    action: &Action,
) -> Result<(FiniteGroup, Subgroup, Subgroup)> {
    let (nn, nk) = (n.order(), k.order());
    if action.maps.len() != nk {
        return Err(Error::NotAction(format!(
            "{} automorphisms for |K| = {nk}",
            action.maps.len()
        )));
    }
    for phi in &action.maps {
        check_automorphism(n, phi)?;
    }
    let exhaustive = nk * nk * nn <= 10_000_000;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..nk).flat_map(|a| (0..nk).map(move |b| (a, b))).collect()
    } else {
        let gens = k.generators().to_vec();
        let mut v: Vec<(usize, usize)> = (0..nk)
            .flat_map(|a| gens.iter().map(move |&b| (a, b)))
            .collect();
        v.extend((0..nk.min(64)).map(|a| (a, (a * 7 + 3) % nk)));
        v
    };
    for (a, b) in pairs {
        let ab = k.mul(a, b);
        if (0..nn).any(|m| action.maps[ab][m] != action.maps[a][action.maps[b][m]]) {
            return Err(Error::NotAction(format!(
                "phi_{{{a}*{b}}} != phi_{a} ∘ phi_{b}"
            )));
        }
    }
    let total = nn * nk;
    let mut table = vec![0u32; total * total];
    for x in 0..total {
        let (n1, k1) = (x % nn, x / nn);
        for y in 0..total {
            let (n2, k2) = (y % nn, y / nn);
            let nprod = n.mul(n1, action.maps[k1][n2]);
            table[x * total + y] = (nprod + nn * k.mul(k1, k2)) as u32;
        }
    }
    let g = FiniteGroup::from_table(total, table)?;
    let n_sub = Subgroup::from_members(&g, (0..nn).collect());
    let k_sub = Subgroup::from_members(&g, (0..nk).map(|i| i * nn).collect());
    Ok((g, n_sub, k_sub))
}

/// Searches for `K` with `NK = G` and `N ∩ K = 1`. Backtracks over one
/// representative of each uncovered coset of `N`.
pub fn find_complement(n: &Subgroup, cap: usize) -> Result<Option<Subgroup>> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let g = n.parent();
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "complement search",
            size: g.order(),
            cap,
        });
    }
    let target = g.order() / n.order();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    Ok(search_complement(
        Subgroup::trivial(g),
        n,
        target,
        &mut visited,
    ))
}

fn search_complement(
    k: Subgroup,
    n: &Subgroup,
    target: usize,
    visited: &mut HashSet<Vec<usize>>,
) -> Option<Subgroup> {
    if k.order() == target {
        return Some(k);
    }
    let g = n.parent();
    let covered = k.join(n);
    let first = (0..g.order()).find(|&x| !covered.contains(x))?;
    for &m in n.members() {
        let x = g.mul(first, m);
        let mut candidate = k.clone();
        candidate.adjoin(x);
        if !target.is_multiple_of(candidate.order()) || !candidate.intersection(n).is_trivial() {
            continue;
        }
        if !visited.insert(candidate.members().to_vec()) {
            continue;
        }
        if let Some(found) = search_complement(candidate, n, target, visited) {
            return Some(found);
        }
    }
    None
}

/// Sylow subgroups of a nilpotent group, one per prime divisor in increasing
/// order, after checking that their product is direct.
pub fn sylow_decomposition(g: &FiniteGroup) -> Result<Vec<(u64, Subgroup)>> {
    if series::group_class(g).is_none() {
        return Err(Error::NotNilpotent);
    }
    let mut out = Vec::new();
    for p in prime_factors(g.order() as u64) {
        let members: Vec<usize> = (0..g.order())
            .filter(|&x| is_power_of(g.element_order(x), p))
            .collect();
        let s = Subgroup::try_from_set(g, members).ok_or(Error::NotNilpotent)?;
        if !s.is_normal() {
            return Err(Error::NotNilpotent);
        }
        out.push((p, s));
    }
    let product: usize = out.iter().map(|(_, s)| s.order()).product();
    if product != g.order() {
        return Err(Error::NotNilpotent);
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if !out[i].1.intersection(&out[j].1).is_trivial() {
                return Err(Error::NotNilpotent);
            }
        }
    }
    Ok(out)
}

use std::fmt;

use super::FiniteGroup;

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list plus a
/// membership bitset.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<u64>,
    generators: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.mask == other.mask
    }
}

impl Eq for Subgroup {}

fn empty_mask(n: usize) -> Vec<u64> {
    vec![0u64; n.div_ceil(64)]
}

impl Subgroup {
    pub fn trivial(parent: &FiniteGroup) -> Self {
        let mut mask = empty_mask(parent.order());
        mask[0] |= 1;
        Subgroup {
            parent: parent.clone(),
            members: vec![0],
            mask,
            generators: Vec::new(),
        }
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        let n = parent.order();
        let mut mask = empty_mask(n);
        for x in 0..n {
            mask[x / 64] |= 1 << (x % 64);
        }
        Subgroup {
            parent: parent.clone(),
            members: (0..n).collect(),
            mask,
            generators: parent.generators().to_vec(),
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(parent: &FiniteGroup, gens: &[usize]) -> Self {
        let mut s = Subgroup::trivial(parent);
        for &g in gens {
            s.adjoin(g);
        }
        s
    }

    /// Wraps a member set that is already known to be a subgroup. Generators
    /// are recomputed.
    pub fn from_members(parent: &FiniteGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = empty_mask(parent.order());
        for &x in &members {
            mask[x / 64] |= 1 << (x % 64);
        }
        let mut s = Subgroup {
            parent: parent.clone(),
            members,
            mask,
            generators: Vec::new(),
        };
        s.generators = s.small_generating_set();
        s
    }

    /// Checks closure of an arbitrary set; returns the subgroup if it is one.
    pub fn try_from_set(parent: &FiniteGroup, members: Vec<usize>) -> Option<Self> {
        let s = Self::from_members(parent, members);
        let closed = s.members.iter().all(|&a| {
            s.contains(parent.inv(a)) && s.members.iter().all(|&b| s.contains(parent.mul(a, b)))
        });
        (closed && s.contains(0)).then_some(s)
    }

    fn small_generating_set(&self) -> Vec<usize> {
        let mut acc = Subgroup::trivial(&self.parent);
        // prefer elements of large order so few generators are needed
        let mut by_order: Vec<(usize, usize)> = self
            .members
            .iter()
            .map(|&x| (self.parent.element_order(x), x))
            .collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, x) in by_order {
            if acc.order() == self.order() {
                break;
            }
            acc.adjoin(x);
        }
        acc.generators
    }

    /// Replaces `self` by `<self, x>`.
    pub fn adjoin(&mut self, x: usize) {
        if self.contains(x) {
            return;
        }
        let g = self.parent.clone();
        self.generators.push(x);
        let mut queue: Vec<usize> = self.members.clone();
        let mut added = Vec::new();
        let mut head = 0;
        // existing members are closed under the old generators, so only
        // products involving x can be new; new elements need every generator
        let old_len = queue.len();
        while head < queue.len() {
            let y = queue[head];
            let is_new = head >= old_len;
            for (k, &s) in self.generators.iter().enumerate() {
                let last = k + 1 == self.generators.len();
                if !is_new && !last {
                    continue;
                }
                let z = g.mul(y, s);
                if !self.contains(z) {
                    self.mask[z / 64] |= 1 << (z % 64);
                    queue.push(z);
                    added.push(z);
                }
            }
            head += 1;
        }
        self.members.extend(added);
        self.members.sort_unstable();
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }

    /// Normal in the parent group, checked on generators of both.
    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        self.is_normalized_by_elements(g.generators(), g)
    }

    /// `h^k` stays in `self` for all generators `h` of `self`, `k` of `by`.
    pub fn is_normalized_by(&self, by: &Subgroup, g: &FiniteGroup) -> bool {
        self.is_normalized_by_elements(by.generators(), g)
    }

    fn is_normalized_by_elements(&self, by: &[usize], g: &FiniteGroup) -> bool {
        let hs: Vec<usize> = if self.generators.is_empty() {
            self.members.clone()
        } else {
            self.generators.clone()
        };
        by.iter()
            .all(|&k| hs.iter().all(|&h| self.contains(g.conj(h, k))))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_members(&self.parent, members)
    }

    /// Subgroup generated by the union.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut s = self.clone();
        for &x in other.generators() {
            s.adjoin(x);
        }
        s
    }

    /// Smallest normal subgroup of the parent containing `self`.
    pub fn normal_closure(&self) -> Subgroup {
        let g = &self.parent;
        let mut s = self.clone();
        loop {
            let mut grew = false;
            let hs: Vec<usize> = s.generators.clone();
            for &h in &hs {
                for &k in g.generators() {
                    let c = g.conj(h, k);
                    if !s.contains(c) {
                        s.adjoin(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return s;
            }
        }
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.members.iter().fold(1u64, |acc, &x| {
            acc.lcm(&(self.parent.element_order(x) as u64))
        })
    }

    /// Re-indexes the subgroup as a standalone tabulated group. Returns the
    /// group and the embedding (new index -> parent index); new index 0 is the
    /// identity.
    pub fn to_group(&self) -> (FiniteGroup, Vec<usize>) {
        let embed = self.members.clone();
        let n = embed.len();
        let mut pos = vec![usize::MAX; self.parent.order()];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i;
        }
        let mut table = vec![0u32; n * n];
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                table[i * n + j] = pos[self.parent.mul(a, b)] as u32;
            }
        }
        let group = FiniteGroup::from_table(n, table).expect("subgroup table is a group");
        (group, embed)
    }

    /// Maps a subgroup through an index map into another group.
    pub fn image_in(&self, target: &FiniteGroup, map: &[usize]) -> Subgroup {
        let gens: Vec<usize> = self.generators.iter().map(|&x| map[x]).collect();
        Subgroup::generated(target, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{closure_from_generators, Permutation};

    fn d4() -> (FiniteGroup, usize, usize) {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]);
        let s = Permutation::from_cycles(4, &[&[1, 3]]);
        let (g, elems) = closure_from_generators(
            &[r.clone(), s.clone()],
            Permutation::identity(4),
            |a, b| a.compose(b),
            100,
        )
        .unwrap();
        let ri = elems.iter().position(|e| *e == r).unwrap();
        let si = elems.iter().position(|e| *e == s).unwrap();
        (g, ri, si)
    }

    #[test]
    fn rotation_subgroup_of_d4() {
        let (g, r, s) = d4();
        let h = g.subgroup(&[r]);
        assert_eq!(h.order(), 4);
        assert!(h.is_normal());
        let k = g.subgroup(&[s]);
        assert_eq!(k.order(), 2);
        assert!(!k.is_normal());
        assert!(h.intersection(&k).is_trivial());
        assert!(h.join(&k).is_whole());
    }

    #[test]
    fn trivial_generated() {
        let (g, _, _) = d4();
        assert!(g.subgroup(&[0]).is_trivial());
        assert!(g.subgroup(&[]).is_trivial());
    }

    #[test]
    fn lagrange_on_all_cyclic_subgroups() {
        let (g, _, _) = d4();
        for x in 0..g.order() {
            let h = g.subgroup(&[x]);
            assert_eq!(g.order() % h.order(), 0);
            assert_eq!(h.order(), g.element_order(x));
        }
    }

    #[test]
    fn normal_closure_of_reflection() {
        let (g, _, s) = d4();
        let nc = g.subgroup(&[s]).normal_closure();
        assert_eq!(nc.order(), 4);
        assert!(nc.is_normal());
    }

    #[test]
    fn to_group_roundtrip() {
        let (g, r, _) = d4();
        let h = g.subgroup(&[r]);
        let (hg, embed) = h.to_group();
        assert_eq!(hg.order(), 4);
        assert_eq!(embed[0], 0);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(embed[hg.mul(a, b)], g.mul(embed[a], embed[b]));
            }
        }
    }

    #[test]
    fn try_from_set_detects_non_subgroups() {
        let (g, r, s) = d4();
        assert!(Subgroup::try_from_set(&g, vec![0, r]).is_none());
        assert!(Subgroup::try_from_set(&g, vec![0, s]).is_some());
    }
}

//! Concrete finite groups.
//!
//! Elements are dense indices `0..order` with `0` the identity. Multiplication
//! is either a stored Cayley table or, above the table cap, a call into the
//! backing representation (collection for pc groups).

mod construct;
mod hom;
mod perm;
mod series;
mod subgroup;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::pc::PcPresentation;

pub use construct::{
    direct_product, find_complement, quotient_group, semidirect_product, sylow_decomposition,
    Action,
};
pub use hom::GroupHom;
pub use perm::Permutation;
pub use series::{
    agemo, commutator_subgroup, exponent, group_class, lower_central_series, pair_class,
    pair_lower_central_series, powerful_embedding_check, relative_center_series, PowerFlags,
};
pub use subgroup::Subgroup;

/// Multiplication for groups too large to tabulate.
pub trait MulOracle: Send + Sync {
    fn mul(&self, a: usize, b: usize) -> usize;
}

enum Mult {
    Table(Vec<u32>),
    Oracle(Arc<dyn MulOracle>),
}

struct GroupData {
    order: usize,
    mult: Mult,
    inv: Vec<u32>,
    labels: BTreeMap<String, usize>,
    presentation: Option<Arc<PcPresentation>>,
    gens_cache: OnceLock<Vec<usize>>,
}

/// A finite group on dense element indices. Cloning is cheap and clones
/// compare equal by identity.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("tabulated", &self.is_tabulated())
            .field("labels", &self.0.labels)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table. Row and column 0 must be
    /// the identity; inverses are located by scanning rows.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::NonGroup(format!(
                "table of length {} for order {order}",
                table.len()
            )));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::NonGroup(format!(
                    "index 0 is not an identity for {x}"
                )));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            match row.iter().position(|&v| v == 0) {
                Some(y) => inv[x] = y as u32,
                None => return Err(Error::NonGroup(format!("no inverse for element {x}"))),
            }
        }
        Ok(FiniteGroup(Arc::new(GroupData {
            order,
            mult: Mult::Table(table),
            inv,
            labels: BTreeMap::new(),
            presentation: None,
            gens_cache: OnceLock::new(),
        })))
    }

    /// Builds a group from a multiplication oracle. When `order <= cayley_cap`
    /// the oracle is tabulated once; otherwise every product calls it.
    pub fn from_oracle(
        order: usize,
        oracle: Arc<dyn MulOracle>,
        cayley_cap: usize,
    ) -> Result<Self> {
        if order <= cayley_cap {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = oracle.mul(a, b) as u32;
                }
            }
            return Self::from_table(order, table);
        }
        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let mut prev = 0usize;
            let mut cur = x;
            let mut steps = 0usize;
            while cur != 0 {
                prev = cur;
                cur = oracle.mul(cur, x);
                steps += 1;
                if steps > order {
                    return Err(Error::NonGroup(format!("element {x} has no finite order")));
                }
            }
            // x^k = 1 with prev = x^(k-1)
            *slot = if x == 0 { 0 } else { prev as u32 };
        }
        Ok(FiniteGroup(Arc::new(GroupData {
            order,
            mult: Mult::Oracle(oracle),
            inv,
            labels: BTreeMap::new(),
            presentation: None,
            gens_cache: OnceLock::new(),
        })))
    }

    pub fn with_labels(self, labels: BTreeMap<String, usize>) -> Self {
        let data = Arc::try_unwrap(self.0).unwrap_or_else(|arc| arc.as_ref().clone_data());
        FiniteGroup(Arc::new(GroupData { labels, ..data }))
    }

    pub fn with_presentation(self, presentation: Arc<PcPresentation>) -> Self {
        let data = Arc::try_unwrap(self.0).unwrap_or_else(|arc| arc.as_ref().clone_data());
        FiniteGroup(Arc::new(GroupData {
            presentation: Some(presentation),
            ..data
        }))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.0.mult, Mult::Table(_))
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.0.labels
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.0.labels.get(name).copied()
    }

    /// The pc presentation this group was built from, if any.
    pub fn presentation(&self) -> Option<&Arc<PcPresentation>> {
        self.0.presentation.as_ref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.mult {
            Mult::Table(t) => t[a * self.0.order + b] as usize,
            Mult::Oracle(o) => o.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `a^b = b^{-1} a b`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a,b] = a^{-1} b^{-1} a b = a^{-1} a^b`.
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Left-normed commutator `[x_1, x_2, ..., x_r]`.
    pub fn comm_n(&self, xs: &[usize]) -> usize {
        let mut it = xs.iter();
        let mut acc = *it.next().unwrap_or(&0);
        for &x in it {
            acc = self.comm(acc, x);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != 0 {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1u64, |acc, x| acc.lcm(&(self.element_order(x) as u64)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (a..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Returns the prime `p` if the order is a power of `p` (and `> 1`).
    pub fn prime(&self) -> Option<u64> {
        prime_power_base(self.order() as u64)
    }

    /// Exhaustive associativity check when `order^3 <= budget`, otherwise on
    /// `budget` pseudo-random triples.
    pub fn check_associativity(&self, budget: usize) -> bool {
        let n = self.order();
        if n.saturating_mul(n).saturating_mul(n) <= budget {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n as u64) as usize
        };
        (0..budget).all(|_| {
            let (a, b, c) = (next(), next(), next());
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        })
    }

    /// A small generating set, computed once.
    pub fn generators(&self) -> &[usize] {
        self.0.gens_cache.get_or_init(|| {
            Subgroup::from_members(self, (0..self.order()).collect())
                .generators()
                .to_vec()
        })
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(self)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial(self)
    }

    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        Subgroup::generated(self, gens)
    }

    /// Center `Z(G)`.
    pub fn center(&self) -> Subgroup {
        let n = self.order();
        let members: Vec<usize> = (0..n)
            .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect();
        Subgroup::from_members(self, members)
    }
}

impl GroupData {
    fn clone_data(&self) -> GroupData {
        GroupData {
            order: self.order,
            mult: match &self.mult {
                Mult::Table(t) => Mult::Table(t.clone()),
                Mult::Oracle(o) => Mult::Oracle(o.clone()),
            },
            inv: self.inv.clone(),
            labels: self.labels.clone(),
            presentation: self.presentation.clone(),
            gens_cache: self.gens_cache.clone(),
        }
    }
}

/// Generated group of `gens` under `mul`, with dense indices in BFS order
/// (index 0 is `identity`). Returns the group and the element list.
pub fn closure_from_generators<E, F>(
    gens: &[E],
    identity: E,
    mul: F,
    cap: usize,
) -> Result<(FiniteGroup, Vec<E>)>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    if gens.is_empty() {
        return Err(Error::Invalid("empty generator list".into()));
    }
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<E, usize> = HashMap::new();
    index.insert(identity, 0);
    // parent[x] = (y, g) with x = y * gens[g]
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut by_gen: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        for (gi, g) in gens.iter().enumerate() {
            let y = mul(&x, g);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= cap {
                        return Err(Error::CapExceeded {
                            what: "generated group",
                            size: i + 1,
                            cap,
                        });
                    }
                    index.insert(y.clone(), i);
                    elements.push(y);
                    parent.push((head, gi));
                    i
                }
            };
            by_gen[gi].push(idx as u32);
        }
        head += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        table[a * n] = a as u32;
    }
    for b in 1..n {
        let (pb, gi) = parent[b];
        for a in 0..n {
            let left = table[a * n + pb] as usize;
            table[a * n + b] = by_gen[gi][left];
        }
    }
    let group = FiniteGroup::from_table(n, table)?;
    Ok((group, elements))
}

/// Cyclic group `Z_n` on residues, index = residue.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    FiniteGroup::from_table(n, table).expect("cyclic table is a group")
}

/// Direct sum of cyclic groups with mixed-radix indexing (first factor most
/// significant).
pub fn abelian_group(orders: &[usize]) -> FiniteGroup {
    if orders.is_empty() {
        return cyclic_group(1);
    }
    let mut g = cyclic_group(orders[0]);
    for &d in &orders[1..] {
        g = direct_product(&g, &cyclic_group(d));
    }
    g
}

pub(crate) fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        out.push(p);
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    out
}

pub(crate) fn is_power_of(n: usize, p: u64) -> bool {
    let mut n = n as u64;
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

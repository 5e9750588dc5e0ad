//! Randomized and exhaustive checks of commutator identities, power
//! structure lemmas, collection laws and Smith normal forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::corpus::builtin_corpus;
use crate::group::{
    agemo, closure_from_generators, commutator_subgroup, group_class, lower_central_series,
    powerful_embedding_check, FiniteGroup, Permutation, Subgroup,
};
use crate::groupfile::load_group;
use crate::zlinalg::{determinant, identity, mat_mul, snf_dense, DenseMatrix};
use crate::Caps;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    /// first failing instance
    pub example: Option<String>,
    /// counted for information only, not a pass/fail property
    pub informational: bool,
}

impl PropertyOutcome {
    fn new(name: &str) -> Self {
        PropertyOutcome {
            name: name.to_string(),
            checked: 0,
            failures: 0,
            example: None,
            informational: false,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.informational || (self.failures == 0 && self.checked > 0)
    }
}

/// A test group with a list of normal subgroups.
pub struct PropGroup {
    pub name: String,
    pub group: FiniteGroup,
    pub p: Option<u64>,
    pub normals: Vec<Subgroup>,
}

fn push_unique(v: &mut Vec<Subgroup>, s: Subgroup) {
    if !v.contains(&s) {
        v.push(s);
    }
}

fn symmetric4() -> FiniteGroup {
    let a = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]);
    let b = Permutation::from_cycles(4, &[&[0, 1]]);
    closure_from_generators(&[a, b], Permutation::identity(4), |x, y| x.compose(y), 100)
        .expect("S4")
        .0
}

/// Corpus groups of order at most `max_order`, each with its declared
/// normal subgroups, lower central terms, center and first agemo; `S4`
/// is added for the identities that hold in every group.
pub fn property_groups(max_order: usize) -> Vec<PropGroup> {
    let caps = Caps::default();
    let corpus = builtin_corpus();
    let mut out: Vec<PropGroup> = Vec::new();
    for e in &corpus {
        if e.known_counterexample || e.nominal_order() > max_order as u128 {
            continue;
        }
        if out.iter().any(|g| g.name == e.recipe.name) {
            continue;
        }
        let Ok(l) = load_group(&e.recipe, &caps) else {
            continue;
        };
        let g = l.group.clone();
        let mut normals = Vec::new();
        for s in l.subgroups.values() {
            if s.is_normal() {
                push_unique(&mut normals, s.clone());
            }
        }
        for s in lower_central_series(&g) {
            push_unique(&mut normals, s);
        }
        push_unique(&mut normals, g.center());
        if let Some(p) = g.prime() {
            if let Ok(a) = agemo(&g.whole(), 1, p) {
                push_unique(&mut normals, a);
            }
        }
        out.push(PropGroup {
            name: e.recipe.name.clone(),
            p: g.prime(),
            group: g,
            normals,
        });
    }
    let s4 = symmetric4();
    let mut normals = vec![s4.whole()];
    for s in lower_central_series(&s4) {
        push_unique(&mut normals, s);
    }
    let v4: Vec<usize> = (0..s4.order())
        .filter(|&x| s4.element_order(x) <= 2)
        .collect();
    // the Klein four subgroup: identity and the three double transpositions
    let v4: Vec<usize> = v4
        .into_iter()
        .filter(|&x| commutator_subgroup(&s4.whole(), &s4.whole()).contains(x))
        .collect();
    push_unique(&mut normals, s4.subgroup(&v4));
    out.push(PropGroup {
        name: "S4".into(),
        group: s4,
        p: None,
        normals,
    });
    out
}

fn pick(rng: &mut ChaCha8Rng, s: &Subgroup) -> usize {
    s.members()[rng.gen_range(0..s.order())]
}

/// `[M, G, ..., G]` with `c` copies of `G`.
fn comm_series(m: &Subgroup, c: usize) -> Subgroup {
    let whole = m.parent().whole();
    let mut cur = m.clone();
    for _ in 0..c {
        cur = commutator_subgroup(&cur, &whole);
    }
    cur
}

/// The commutator identities for a normal subgroup `M` acted on by
/// conjugation, on `instances` random draws.
pub fn commutator_identities(
    groups: &[PropGroup],
    instances: usize,
    seed: u64,
) -> Vec<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = [
        "commutator identity (i) [mn,g] = [m,g]^n [n,g]",
        "commutator identity (ii) [m,gh] = [m,h] [m,g]^h",
        "commutator identity (iii) [m^-1,g]^-1 = [m,g]^(m^-1)",
        "commutator identity (iv) [m,g^-1]^-1 = [m,g]^(g^-1)",
        "commutator identity (v) Hall-Witt, corrected sign",
        "commutator identity (vi) [m^k,g] mod [M,G,G,G]",
    ];
    let mut out: Vec<PropertyOutcome> = names.iter().map(|n| PropertyOutcome::new(n)).collect();
    let mut literal = PropertyOutcome::new("commutator identity (v) as printed");
    literal.informational = true;

    let slots: Vec<(usize, usize, Subgroup)> = groups
        .iter()
        .enumerate()
        .flat_map(|(gi, pg)| {
            pg.normals
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_trivial())
                .map(move |(mi, m)| (gi, mi, comm_series(m, 3)))
        })
        .collect();
    if slots.is_empty() {
        return out;
    }
    for t in 0..instances {
        let (gi, mi, l3) = &slots[t % slots.len()];
        let pg = &groups[*gi];
        let g = &pg.group;
        let mm = &pg.normals[*mi];
        let whole = g.whole();
        let (m, n) = (pick(&mut rng, mm), pick(&mut rng, mm));
        let (x, h) = (pick(&mut rng, &whole), pick(&mut rng, &whole));
        let k: i64 = rng.gen_range(-12..=12);
        let c = |a, b| g.comm(a, b);
        let mul = |a, b| g.mul(a, b);
        let inv = |a| g.inv(a);
        let conj = |a, b| g.conj(a, b);
        let desc = || format!("{}: m={m} n={n} g={x} h={h} k={k}", pg.name);

        out[0].record(c(mul(m, n), x) == mul(conj(c(m, x), n), c(n, x)), desc);
        out[1].record(c(m, mul(x, h)) == mul(c(m, h), conj(c(m, x), h)), desc);
        out[2].record(inv(c(inv(m), x)) == conj(c(m, x), inv(m)), desc);
        out[3].record(inv(c(m, inv(x))) == conj(c(m, x), inv(x)), desc);

        let first = conj(g.comm_n(&[m, inv(x), h]), x);
        let middle = conj(c(m, c(x, inv(h))), h);
        let last = conj(c(inv(c(inv(m), h)), x), m);
        out[4].record(mul(mul(first, inv(middle)), last) == 0, desc);
        literal.record(mul(mul(first, middle), last) == 0, desc);

        let lhs = c(g.pow(m, k), x);
        let base = c(m, x);
        let rhs = mul(g.pow(base, k), g.pow(c(base, m), k * (k - 1) / 2));
        out[5].record(l3.contains(mul(inv(lhs), rhs)), desc);
    }
    out.push(literal);
    out
}

/// `[x^n, g] = [x,g]^n c` with `c` in the derived subgroup of `<x, [x,g]>`.
pub fn power_commutator(groups: &[PropGroup], instances: usize, seed: u64) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome::new("power commutator [x^n,g] = [x,g]^n c");
    for t in 0..instances {
        let pg = &groups[t % groups.len()];
        let g = &pg.group;
        let whole = g.whole();
        let (x, y) = (pick(&mut rng, &whole), pick(&mut rng, &whole));
        let n: i64 = rng.gen_range(0..=2 * g.exponent() as i64);
        let cxg = g.comm(x, y);
        let c = g.mul(g.inv(g.pow(cxg, n)), g.comm(g.pow(x, n), y));
        let h = g.subgroup(&[x, cxg]);
        let d = commutator_subgroup(&h, &h);
        out.record(d.contains(c), || format!("{}: x={x} g={y} n={n}", pg.name));
    }
    out
}

fn power_level(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

fn is_pe(n: &Subgroup, p: u64) -> bool {
    powerful_embedding_check(n, p).is_ok_and(|f| f.powerfully_embedded)
}

/// Power-structure facts on the powerful groups of the list.
pub fn powerful_structure(groups: &[PropGroup]) -> Vec<PropertyOutcome> {
    let mut nested = PropertyOutcome::new("powerful: agemo_i(agemo_j(G)) = agemo_(i+j)(G)");
    let mut powers = PropertyOutcome::new("powerful: agemo_i(G) is the set of p^i-th powers");
    let mut gens = PropertyOutcome::new("powerful: agemo_i(G) generated by generator powers");
    let mut embedded =
        PropertyOutcome::new("powerful: gamma_i, agemo_i, Frattini powerfully embedded");
    for pg in groups {
        let (g, Some(p)) = (&pg.group, pg.p) else {
            continue;
        };
        let whole = g.whole();
        if !powerful_embedding_check(&whole, p).is_ok_and(|f| f.powerful) {
            continue;
        }
        let gen_sets: Vec<Vec<usize>> = {
            let mut v = vec![g.generators().to_vec()];
            let labelled: Vec<usize> = g.labels().values().copied().collect();
            if !labelled.is_empty() {
                v.push(labelled);
            }
            v
        };
        for i in 0..=3u32 {
            let ai = agemo(&whole, i, p).expect("p-group");
            for j in 0..=2u32 {
                let aj = agemo(&whole, j, p).expect("p-group");
                let lhs = agemo(&aj, i, p).expect("p-group");
                let rhs = agemo(&whole, i + j, p).expect("p-group");
                nested.record(lhs == rhs, || format!("{} i={i} j={j}", pg.name));
            }
            let q = p.pow(i) as i64;
            let mut set: Vec<usize> = (0..g.order()).map(|x| g.pow(x, q)).collect();
            set.sort_unstable();
            set.dedup();
            powers.record(set == ai.members(), || format!("{} i={i}", pg.name));
            for gs in &gen_sets {
                let pw: Vec<usize> = gs.iter().map(|&a| g.pow(a, q)).collect();
                gens.record(g.subgroup(&pw) == ai, || format!("{} i={i}", pg.name));
            }
            embedded.record(is_pe(&ai, p), || format!("{} agemo_{i}", pg.name));
        }
        for (c, term) in lower_central_series(g).into_iter().enumerate() {
            embedded.record(is_pe(&term, p), || format!("{} gamma_{}", pg.name, c + 2));
        }
        let frattini =
            commutator_subgroup(&whole, &whole).join(&agemo(&whole, 1, p).expect("p-group"));
        embedded.record(is_pe(&frattini, p), || format!("{} Frattini", pg.name));
    }
    vec![nested, powers, gens, embedded]
}

/// Agemo subgroups of powerfully embedded subgroups stay powerfully
/// embedded.
pub fn agemo_embedding(groups: &[PropGroup]) -> PropertyOutcome {
    let mut out =
        PropertyOutcome::new("agemo of a powerfully embedded subgroup is powerfully embedded");
    for pg in groups {
        let Some(p) = pg.p else { continue };
        for n in &pg.normals {
            if !is_pe(n, p) {
                continue;
            }
            for i in 1..=3 {
                let a = agemo(n, i, p).expect("p-group");
                out.record(is_pe(&a, p), || {
                    format!("{} |N|={} i={i}", pg.name, n.order())
                });
            }
        }
    }
    out
}

/// `M <= K[M,G]` forces `M <= K`, and the agemo commutator inclusions, for
/// normal subgroups under conjugation.
pub fn embedding_inclusions(groups: &[PropGroup]) -> Vec<PropertyOutcome> {
    let mut l35 = PropertyOutcome::new("M <= K[M,G] implies M <= K");
    let mut l36 = PropertyOutcome::new(
        "[agemo(M),G] inside agemo([M,G]) [M,G,G,G] (p=2: with agemo_1([M,G,G]))",
    );
    for pg in groups {
        let Some(p) = pg.p else { continue };
        let g = &pg.group;
        let whole = g.whole();
        for m in &pg.normals {
            let mg = commutator_subgroup(m, &whole);
            for k in &pg.normals {
                let hyp = m.is_subset_of(&k.join(&mg));
                if hyp {
                    l35.record(m.is_subset_of(k), || {
                        format!("{} |M|={} |K|={}", pg.name, m.order(), k.order())
                    });
                }
            }
            let mg2 = commutator_subgroup(&mg, &whole);
            let mg3 = commutator_subgroup(&mg2, &whole);
            let level = power_level(p);
            let lhs = commutator_subgroup(&agemo(m, level, p).expect("p-group"), &whole);
            let mut rhs = agemo(&mg, level, p).expect("p-group").join(&mg3);
            if p == 2 {
                rhs = rhs.join(&agemo(&mg2, 1, p).expect("p-group"));
            }
            l36.record(lhs.is_subset_of(&rhs), || {
                format!("{} |M|={}", pg.name, m.order())
            });
        }
    }
    vec![l35, l36]
}

/// `(xy)^a = x^a y^a [y,x]^(a(a-1)/2)` in class 2 and
/// `[x^a, y] = [x,y]^a [x,y,x]^(a(a-1)/2)` in class 3, over all pairs.
pub fn collection_laws(groups: &[PropGroup]) -> Vec<PropertyOutcome> {
    let mut two = PropertyOutcome::new("class-2 power law (xy)^a = x^a y^a [y,x]^C(a,2)");
    let mut three = PropertyOutcome::new("class-3 commutator law [x^a,y] = [x,y]^a [x,y,x]^C(a,2)");
    for pg in groups {
        let g = &pg.group;
        let class = group_class(g);
        if class != Some(2) && class != Some(3) {
            continue;
        }
        let e = g.exponent() as i64;
        for x in 0..g.order() {
            for y in 0..g.order() {
                for a in 0..=e {
                    let c2 = a * (a - 1) / 2;
                    if class == Some(2) {
                        // brute force: multiply xy out a times
                        let mut lhs = 0;
                        for _ in 0..a {
                            lhs = g.mul(lhs, g.mul(x, y));
                        }
                        let rhs = g.mul(g.mul(g.pow(x, a), g.pow(y, a)), g.pow(g.comm(y, x), c2));
                        two.record(lhs == rhs, || format!("{} x={x} y={y} a={a}", pg.name));
                    } else {
                        let mut xa = 0;
                        for _ in 0..a {
                            xa = g.mul(xa, x);
                        }
                        // [x^a, y] = x^-a y^-1 x^a y
                        let lhs = g.mul(g.mul(g.inv(xa), g.inv(y)), g.mul(xa, y));
                        let cxy = g.comm(x, y);
                        let rhs = g.mul(g.pow(cxy, a), g.pow(g.comm(cxy, x), c2));
                        three.record(lhs == rhs, || format!("{} x={x} y={y} a={a}", pg.name));
                    }
                }
            }
        }
    }
    vec![two, three]
}

fn is_unimodular(m: &DenseMatrix) -> bool {
    determinant(m).abs().is_one()
}

/// Random sparse integer matrices: `U A V = D`, unimodular transforms,
/// `V V^-1 = I` and a divisibility chain.
pub fn snf_suite(count: usize, seed: u64) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome::new("Smith normal form on random sparse matrices");
    for t in 0..count {
        let rows = rng.gen_range(1..=9);
        let cols = rng.gen_range(1..=9);
        let density = rng.gen_range(0.1..0.5);
        let a: DenseMatrix = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            BigInt::from(rng.gen_range(-20i64..=20))
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let s = snf_dense(&a, rows, cols, true);
        let (u, v, vi) = (
            s.u.as_ref().unwrap(),
            s.v.as_ref().unwrap(),
            s.v_inv.as_ref().unwrap(),
        );
        let uav = mat_mul(&mat_mul(u, &a, rows, cols), v, cols, cols);
        let diag_ok = (0..rows).all(|i| {
            (0..cols).all(|j| {
                let d = if i == j {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                uav[i][j] == d
            })
        });
        let chain_ok = s.diag[..s.rank].iter().all(|d| d.is_positive())
            && s.diag[s.rank..].iter().all(|d| d.is_zero())
            && s.diag[..s.rank]
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero());
        let inv_ok = mat_mul(v, vi, cols, cols) == identity(cols);
        let ok = diag_ok && chain_ok && inv_ok && is_unimodular(u) && is_unimodular(v);
        out.record(ok, || format!("matrix {t} ({rows}x{cols})"));
    }
    out
}

/// Every suite with the default sizes.
pub fn run_all(seed: u64, identity_instances: usize) -> Vec<PropertyOutcome> {
    let groups = property_groups(32);
    let mut out = commutator_identities(&groups, identity_instances, seed);
    out.push(power_commutator(&groups, 2000, seed ^ 0x5eed));
    out.extend(powerful_structure(&groups));
    out.push(agemo_embedding(&groups));
    out.extend(embedding_inclusions(&groups));
    out.extend(collection_laws(&groups));
    out.push(snf_suite(100, seed ^ 0x5f));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Vec<PropGroup> {
        property_groups(16)
    }

    #[test]
    fn identities_hold() {
        let groups = small();
        assert!(groups.iter().any(|g| g.name == "S4"));
        for o in commutator_identities(&groups, 2000, 1) {
            assert!(o.passed(), "{o:?}");
        }
    }

    #[test]
    fn printed_hall_witt_fails_somewhere() {
        let groups = small();
        let out = commutator_identities(&groups, 3000, 2);
        let literal = out.iter().find(|o| o.informational).unwrap();
        assert!(literal.failures > 0);
    }

    #[test]
    fn power_structure() {
        let groups = small();
        for o in powerful_structure(&groups) {
            assert!(o.checked > 0 && o.failures == 0, "{o:?}");
        }
        let o = agemo_embedding(&groups);
        assert!(o.checked > 0 && o.failures == 0, "{o:?}");
        for o in embedding_inclusions(&groups) {
            assert!(o.checked > 0 && o.failures == 0, "{o:?}");
        }
    }

    #[test]
    fn laws_and_snf() {
        let groups = small();
        for o in collection_laws(&groups) {
            assert!(o.checked > 0 && o.failures == 0, "{o:?}");
        }
        assert!(power_commutator(&groups, 300, 3).passed());
        let s = snf_suite(30, 4);
        assert!(s.passed(), "{s:?}");
    }

    #[test]
    fn detects_a_false_identity() {
        // (xy)^2 = x^2 y^2 fails in a non-abelian group
        let groups = small();
        let d4 = groups.iter().find(|g| g.name == "D4").unwrap();
        let g = &d4.group;
        let sq = |x| g.mul(x, x);
        let bad =
            (0..g.order()).any(|a| (0..g.order()).any(|b| sq(g.mul(a, b)) != g.mul(sq(a), sq(b))));
        assert!(bad);
    }
}

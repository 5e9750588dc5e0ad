//! Built-in corpus of split pairs and the harness that checks it.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::report::{analyze_pair, PairReport};
use crate::error::{Error, Result};
use crate::group::{sylow_decomposition, Subgroup};
use crate::groupfile::{load_group, GroupFile, LoadedGroup, PcSection};
use crate::multiplier::{h2_bar, pair_multiplier, H2Result};
use crate::zlinalg::AbelianStructure;
use crate::Caps;

pub const REPORT_VERSION: &str = "1";

/// One pair of the corpus: a group recipe and the labels of `N` and `K`
/// inside it. Entries of the same group share the recipe.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub recipe: Arc<GroupFile>,
    pub n: String,
    pub k: Option<String>,
    pub known_counterexample: bool,
}

impl CorpusEntry {
    /// Upper bound on `|G|` read off the recipe, without building it.
    pub fn nominal_order(&self) -> u128 {
        match &self.recipe.pc {
            Some(pc) => pc.orders.iter().map(|&o| o.max(1) as u128).product(),
            None => u128::MAX,
        }
    }
}

/// Builder for pc recipes.
pub struct Recipe {
    file: GroupFile,
    pairs: Vec<(String, Option<String>)>,
    known_counterexample: bool,
}

impl Recipe {
    pub fn pc(
        name: &str,
        gens: &[(&str, i64)],
        powers: &[(&str, &str)],
        comms: &[(&str, &str, &str)],
    ) -> Self {
        let pc = PcSection {
            generators: gens.iter().map(|g| g.0.to_string()).collect(),
            orders: gens.iter().map(|g| g.1).collect(),
            powers: powers
                .iter()
                .map(|(g, w)| (g.to_string(), w.to_string()))
                .collect(),
            commutators: comms
                .iter()
                .map(|(u, v, w)| (format!("{u},{v}"), w.to_string()))
                .collect(),
        };
        let mut subgroups = BTreeMap::new();
        subgroups.insert("G".to_string(), pc.generators.clone());
        Recipe {
            file: GroupFile {
                name: name.to_string(),
                pc: Some(pc),
                perm: None,
                subgroups,
                complements: BTreeMap::new(),
            },
            pairs: vec![("G".to_string(), None)],
            known_counterexample: false,
        }
    }

    /// `Z_{d_1} x ... x Z_{d_r}` on generators `a1, ..., ar`, with the
    /// splittings `<a1> x <rest>` both ways.
    pub fn abelian(orders: &[i64]) -> Self {
        let names: Vec<String> = (1..=orders.len()).map(|i| format!("a{i}")).collect();
        let gens: Vec<(&str, i64)> = names
            .iter()
            .map(|s| s.as_str())
            .zip(orders.iter().copied())
            .collect();
        let title = orders
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join("x");
        let mut r = Recipe::pc(&title, &gens, &[], &[]);
        if orders.len() > 1 {
            let rest: Vec<&str> = names[1..].iter().map(|s| s.as_str()).collect();
            r = r
                .split("A1", &["a1"], "B", &rest)
                .split("B", &rest, "A1", &["a1"]);
        }
        r
    }

    /// Adds the pair `(G, N)` with declared complement `K`.
    pub fn split(mut self, n_label: &str, n: &[&str], k_label: &str, k: &[&str]) -> Self {
        let owned = |ws: &[&str]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        self.file.subgroups.insert(n_label.to_string(), owned(n));
        self.file.complements.insert(k_label.to_string(), owned(k));
        self.pairs
            .push((n_label.to_string(), Some(k_label.to_string())));
        self
    }

    /// Adds a pair without a declared complement.
    pub fn pair(mut self, n_label: &str, n: &[&str]) -> Self {
        self.file.subgroups.insert(
            n_label.to_string(),
            n.iter().map(|w| w.to_string()).collect(),
        );
        self.pairs.push((n_label.to_string(), None));
        self
    }

    /// Drops the default `N = G` pair.
    pub fn proper_only(mut self) -> Self {
        self.pairs.retain(|(n, _)| n != "G");
        self
    }

    pub fn counterexample(mut self) -> Self {
        self.known_counterexample = true;
        self
    }

    pub fn file(&self) -> &GroupFile {
        &self.file
    }

    pub fn entries(self) -> Vec<CorpusEntry> {
        let recipe = Arc::new(self.file);
        self.pairs
            .into_iter()
            .map(|(n, k)| CorpusEntry {
                name: format!("{} / {}", recipe.name, n),
                recipe: recipe.clone(),
                n,
                k,
                known_counterexample: self.known_counterexample,
            })
            .collect()
    }
}

/// The presentation of the exponent counterexample of order `2^11`, with
/// power relations `g^o = 1`.
pub fn counterexample_recipe() -> Recipe {
    Recipe::pc(
        "G2048",
        &[
            ("b", 2),
            ("a", 4),
            ("x1", 2),
            ("x2", 4),
            ("x3", 4),
            ("x4", 4),
            ("x5", 2),
        ],
        &[],
        &[
            ("x2", "x1", "x2^2"),
            ("x3", "x1", "x3^2"),
            ("x4", "x1", "x4^2"),
            ("x1", "a", "x3"),
            ("x2", "a", "x2^2 x3^2 x4^3"),
            ("x3", "a", "x5"),
            ("x4", "a", "x2^2"),
            ("x5", "a", "x3^2"),
            ("x1", "b", "x2"),
            ("x2", "b", "x2^2 x4^3 x5"),
            ("x3", "b", "x4"),
            ("x4", "b", "x3^2 x4^2"),
            ("x5", "b", "x2^2 x3^2 x4^2"),
            ("a", "b", "x1"),
        ],
    )
    .proper_only()
    .split("N", &["a", "x1", "x2", "x3", "x4", "x5"], "K", &["b"])
    .counterexample()
}

fn d4() -> Recipe {
    Recipe::pc(
        "D4",
        &[("s", 2), ("r", 2), ("z", 2)],
        &[("r", "z")],
        &[("r", "s", "z")],
    )
    .split("R", &["r"], "S", &["s"])
    .split("V", &["s", "z"], "RS", &["r s"])
    .pair("Z", &["z"])
}

fn q8() -> Recipe {
    Recipe::pc(
        "Q8",
        &[("a", 2), ("b", 2), ("z", 2)],
        &[("a", "z"), ("b", "z")],
        &[("b", "a", "z")],
    )
}

/// Dihedral, semidihedral and generalized quaternion groups of order 16
/// and the modular group `M16`, all on `s, r, r2 = r^2, r4 = r^4`.
fn order16_metacyclic() -> Vec<Recipe> {
    let g = [("s", 2), ("r", 2), ("r2", 2), ("r4", 2)];
    let pw = [("r", "r2"), ("r2", "r4")];
    vec![
        Recipe::pc("D8", &g, &pw, &[("r", "s", "r2 r4"), ("r2", "s", "r4")])
            .split("R", &["r"], "S", &["s"])
            .split("D", &["r2", "s"], "RS", &["r s"]),
        Recipe::pc("SD16", &g, &pw, &[("r", "s", "r2"), ("r2", "s", "r4")]).split(
            "R",
            &["r"],
            "S",
            &["s"],
        ),
        Recipe::pc(
            "Q16",
            &g,
            &[("s", "r4"), ("r", "r2"), ("r2", "r4")],
            &[("r", "s", "r2 r4"), ("r2", "s", "r4")],
        ),
        Recipe::pc("M16", &g, &pw, &[("r", "s", "r4")]).split("R", &["r"], "S", &["s"]),
    ]
}

fn z4_by_z4() -> Recipe {
    Recipe::pc(
        "Z4:Z4",
        &[("y", 2), ("y2", 2), ("x", 2), ("x2", 2)],
        &[("y", "y2"), ("x", "x2")],
        &[("x", "y", "x2")],
    )
    .split("X", &["x"], "Y", &["y"])
}

fn d4_x_z2() -> Recipe {
    Recipe::pc(
        "D4xZ2",
        &[("s", 2), ("r", 2), ("z", 2), ("c", 2)],
        &[("r", "z")],
        &[("r", "s", "z")],
    )
    .split("RC", &["r", "c"], "S", &["s"])
    .split("D", &["s", "r"], "C", &["c"])
    .split("C", &["c"], "D", &["s", "r"])
}

fn q8_x_z2() -> Recipe {
    Recipe::pc(
        "Q8xZ2",
        &[("a", 2), ("b", 2), ("z", 2), ("c", 2)],
        &[("a", "z"), ("b", "z")],
        &[("b", "a", "z")],
    )
    .split("Q", &["a", "b"], "C", &["c"])
    .split("C", &["c"], "Q", &["a", "b"])
}

fn extraspecial32() -> Vec<Recipe> {
    let g = [("a1", 2), ("b1", 2), ("a2", 2), ("b2", 2), ("z", 2)];
    let c = [("b1", "a1", "z"), ("b2", "a2", "z")];
    vec![
        Recipe::pc("2^(1+4)+", &g, &[], &c).split("M", &["a1", "a2", "b2"], "B1", &["b1"]),
        Recipe::pc("2^(1+4)-", &g, &[("a1", "z"), ("b1", "z")], &c).split(
            "M",
            &["a1", "b1", "a2"],
            "B2",
            &["b2"],
        ),
    ]
}

fn heisenberg(p: i64) -> Recipe {
    let name = format!("H{}", p * p * p);
    Recipe::pc(
        &name,
        &[("a", p), ("b", p), ("c", p)],
        &[],
        &[("b", "a", "c")],
    )
    .split("BC", &["b", "c"], "A", &["a"])
}

fn z9_by_z3() -> Recipe {
    Recipe::pc(
        "Z9:Z3",
        &[("y", 3), ("x", 3), ("x3", 3)],
        &[("x", "x3")],
        &[("x", "y", "x3")],
    )
    .split("X", &["x"], "Y", &["y"])
}

fn h27_x_z3() -> Recipe {
    Recipe::pc(
        "H27xZ3",
        &[("a", 3), ("b", 3), ("c", 3), ("t", 3)],
        &[],
        &[("b", "a", "c")],
    )
    .split("H", &["a", "b"], "T", &["t"])
    .split("BCT", &["b", "c", "t"], "A", &["a"])
}

/// All abelian groups of order dividing 32 or 27, plus a few of order
/// `5^a` and `7^a`.
fn abelian_recipes() -> Vec<Recipe> {
    let shapes: &[&[i64]] = &[
        &[2],
        &[4],
        &[2, 2],
        &[8],
        &[4, 2],
        &[2, 2, 2],
        &[16],
        &[8, 2],
        &[4, 4],
        &[4, 2, 2],
        &[2, 2, 2, 2],
        &[32],
        &[16, 2],
        &[8, 4],
        &[8, 2, 2],
        &[4, 4, 2],
        &[4, 2, 2, 2],
        &[2, 2, 2, 2, 2],
        &[3],
        &[9],
        &[3, 3],
        &[27],
        &[9, 3],
        &[3, 3, 3],
        &[5],
        &[5, 5],
        &[25],
        &[7, 7],
    ];
    shapes.iter().map(|s| Recipe::abelian(s)).collect()
}

/// The built-in p-group corpus, G2048 last.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let mut recipes = abelian_recipes();
    recipes.push(d4());
    recipes.push(q8());
    recipes.extend(order16_metacyclic());
    recipes.push(z4_by_z4());
    recipes.push(d4_x_z2());
    recipes.push(q8_x_z2());
    recipes.extend(extraspecial32());
    recipes.push(heisenberg(3));
    recipes.push(z9_by_z3());
    recipes.push(h27_x_z3());
    recipes.push(heisenberg(5));
    recipes.push(counterexample_recipe());
    recipes.into_iter().flat_map(Recipe::entries).collect()
}

/// Nilpotent groups that are not of prime-power order, each with a split
/// normal subgroup.
pub fn sylow_corpus() -> Vec<CorpusEntry> {
    let q8z3 = Recipe::pc(
        "Q8xZ3",
        &[("a", 2), ("b", 2), ("z", 2), ("t", 3)],
        &[("a", "z"), ("b", "z")],
        &[("b", "a", "z")],
    )
    .proper_only()
    .split("Q", &["a", "b"], "T", &["t"]);
    let d4z3 = Recipe::pc(
        "D4xZ3",
        &[("s", 2), ("r", 2), ("z", 2), ("t", 3)],
        &[("r", "z")],
        &[("r", "s", "z")],
    )
    .proper_only()
    .split("RT", &["r", "t"], "S", &["s"]);
    let z6z2 = Recipe::abelian(&[6, 2]).proper_only();
    [q8z3, d4z3, z6z2]
        .into_iter()
        .flat_map(Recipe::entries)
        .collect()
}

/// A corpus group built once, with its second homology when the bar
/// backend applies.
pub struct BuiltGroup {
    pub loaded: LoadedGroup,
    pub h2: Option<H2Result>,
}

impl BuiltGroup {
    pub fn build(recipe: &GroupFile, caps: &Caps) -> Result<Self> {
        let loaded = load_group(recipe, caps)?;
        let h2 = if loaded.group.order() <= caps.bar {
            Some(h2_bar(&loaded.group, caps.bar)?)
        } else {
            None
        };
        Ok(BuiltGroup { loaded, h2 })
    }

    fn subgroup(&self, label: &str) -> Result<&Subgroup> {
        self.loaded
            .lookup(label)
            .ok_or_else(|| Error::Invalid(format!("unknown subgroup label '{label}'")))
    }

    /// `N` and its declared complement for an entry.
    pub fn pair(&self, e: &CorpusEntry) -> Result<(&Subgroup, Option<&Subgroup>)> {
        let n = self.subgroup(&e.n)?;
        let k = match &e.k {
            Some(l) => Some(self.subgroup(l)?),
            None => None,
        };
        Ok((n, k))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryFailure {
    pub name: String,
    pub error: String,
    pub known_counterexample: bool,
}

/// `M(G,N)` against the direct sum of `M(S, S ∩ N)` over the Sylow
/// subgroups `S`.
#[derive(Clone, Debug, Serialize)]
pub struct SylowCheck {
    pub group_name: String,
    pub multiplier: AbelianStructure,
    pub sylow_product: AbelianStructure,
    pub factors: Vec<(u64, AbelianStructure)>,
    pub matches: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub violations: usize,
    pub untested: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub version: &'static str,
    pub entries: Vec<PairReport>,
    pub sylow_checks: Vec<SylowCheck>,
    pub failures: Vec<EntryFailure>,
    pub summary: Summary,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0
    }
}

/// `M(G,N)` and its Sylow factorization for a nilpotent split pair.
pub fn sylow_check(
    name: &str,
    n: &Subgroup,
    k: Option<&Subgroup>,
    caps: &Caps,
) -> Result<SylowCheck> {
    let g = n.parent();
    let whole = pair_multiplier(n, k, caps)?.structure;
    let mut product = AbelianStructure::trivial();
    let mut factors = Vec::new();
    for (p, s) in sylow_decomposition(g)? {
        let (sg, embed) = s.to_group();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        let inside: Vec<usize> = n
            .intersection(&s)
            .members()
            .iter()
            .map(|&x| local[x])
            .collect();
        let sn = Subgroup::from_members(&sg, inside);
        let m = pair_multiplier(&sn, None, caps)?.structure;
        product = product.direct_sum(&m);
        factors.push((p, m));
    }
    Ok(SylowCheck {
        group_name: name.to_string(),
        matches: product == whole,
        multiplier: whole,
        sylow_product: product,
        factors,
    })
}

/// Groups entries by their shared recipe, preserving first-appearance
/// order.
fn group_entries(entries: &[CorpusEntry]) -> Vec<Vec<&CorpusEntry>> {
    let mut out: Vec<Vec<&CorpusEntry>> = Vec::new();
    for e in entries {
        match out
            .iter_mut()
            .find(|g| Arc::ptr_eq(&g[0].recipe, &e.recipe))
        {
            Some(g) => g.push(e),
            None => out.push(vec![e]),
        }
    }
    out
}

enum Outcome {
    Report(PairReport),
    Failure(EntryFailure),
}

fn run_group(group: &[&CorpusEntry], caps: &Caps) -> Vec<Outcome> {
    let fail = |e: &CorpusEntry, err: &Error| {
        Outcome::Failure(EntryFailure {
            name: e.name.clone(),
            error: err.to_string(),
            known_counterexample: e.known_counterexample,
        })
    };
    let built = match BuiltGroup::build(&group[0].recipe, caps) {
        Ok(b) => b,
        Err(err) => return group.iter().map(|e| fail(e, &err)).collect(),
    };
    group
        .iter()
        .map(|e| {
            let res = built
                .pair(e)
                .and_then(|(n, k)| analyze_pair(&e.name, n, k, None, caps, built.h2.as_ref()));
            match res {
                Ok(mut r) => {
                    r.known_counterexample = e.known_counterexample;
                    Outcome::Report(r)
                }
                Err(err) => fail(e, &err),
            }
        })
        .collect()
}

/// Verifies every entry with `nominal order <= max_order`. Groups are
/// processed in parallel; the report keeps corpus order.
pub fn run_corpus(
    entries: &[CorpusEntry],
    sylow: &[CorpusEntry],
    caps: &Caps,
    max_order: Option<u128>,
) -> CorpusReport {
    let keep = |e: &&CorpusEntry| max_order.is_none_or(|m| e.nominal_order() <= m);
    let selected: Vec<CorpusEntry> = entries.iter().filter(keep).cloned().collect();
    let groups = group_entries(&selected);
    let outcomes: Vec<Vec<Outcome>> = groups.par_iter().map(|g| run_group(g, caps)).collect();

    let sylow_sel: Vec<&CorpusEntry> = sylow.iter().filter(keep).collect();
    let sylow_results: Vec<std::result::Result<SylowCheck, EntryFailure>> = sylow_sel
        .par_iter()
        .map(|e| {
            let run = || -> Result<SylowCheck> {
                let built = BuiltGroup {
                    loaded: load_group(&e.recipe, caps)?,
                    h2: None,
                };
                let (n, k) = built.pair(e)?;
                sylow_check(&e.name, n, k, caps)
            };
            run().map_err(|err| EntryFailure {
                name: e.name.clone(),
                error: err.to_string(),
                known_counterexample: false,
            })
        })
        .collect();

    let mut report = CorpusReport {
        version: REPORT_VERSION,
        entries: Vec::new(),
        sylow_checks: Vec::new(),
        failures: Vec::new(),
        summary: Summary::default(),
    };
    for o in outcomes.into_iter().flatten() {
        match o {
            Outcome::Report(r) => report.entries.push(r),
            Outcome::Failure(f) => report.failures.push(f),
        }
    }
    for r in sylow_results {
        match r {
            Ok(c) => report.sylow_checks.push(c),
            Err(f) => report.failures.push(f),
        }
    }
    let s = &mut report.summary;
    s.checked =
        report.entries.iter().filter(|r| !r.is_untested()).count() + report.sylow_checks.len();
    s.violations = report
        .entries
        .iter()
        .map(PairReport::violations)
        .sum::<usize>()
        + report.sylow_checks.iter().filter(|c| !c.matches).count();
    s.untested = report.entries.iter().filter(|r| r.is_untested()).count() + report.failures.len();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_build_with_expected_orders() {
        let caps = Caps::default();
        let expect: &[(&str, usize)] = &[
            ("D4", 8),
            ("Q8", 8),
            ("D8", 16),
            ("SD16", 16),
            ("Q16", 16),
            ("M16", 16),
            ("Z4:Z4", 16),
            ("2^(1+4)+", 32),
            ("H27", 27),
            ("Z9:Z3", 27),
            ("H125", 125),
        ];
        let corpus = builtin_corpus();
        for (name, order) in expect {
            let e = corpus.iter().find(|e| e.recipe.name == *name).unwrap();
            let g = load_group(&e.recipe, &caps).unwrap();
            assert_eq!(g.group.order(), *order, "{name}");
        }
    }

    #[test]
    fn declared_complements_complement() {
        let caps = Caps::default();
        let corpus = builtin_corpus();
        for group in group_entries(&corpus) {
            if group[0].known_counterexample {
                continue;
            }
            let g = load_group(&group[0].recipe, &caps).unwrap();
            for e in group {
                let n = g.lookup(&e.n).unwrap();
                assert!(n.is_normal(), "{}", e.name);
                if let Some(k) = &e.k {
                    let k = g.lookup(k).unwrap();
                    assert!(n.intersection(k).is_trivial(), "{}", e.name);
                    assert_eq!(n.order() * k.order(), g.group.order(), "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn element_orders_match_names() {
        let caps = Caps::default();
        let corpus = builtin_corpus();
        let find = |n: &str| {
            load_group(
                &corpus.iter().find(|e| e.recipe.name == n).unwrap().recipe,
                &caps,
            )
            .unwrap()
        };
        // Q16 has a unique involution, D8 has nine, SD16 five
        for (name, invols) in [
            ("Q16", 1),
            ("D8", 9),
            ("SD16", 5),
            ("M16", 3),
            ("Q8", 1),
            ("D4", 5),
        ] {
            let g = find(name).group;
            let count = (1..g.order()).filter(|&x| g.element_order(x) == 2).count();
            assert_eq!(count, invols, "{name}");
        }
        assert_eq!(find("Z9:Z3").group.exponent(), 9);
        assert_eq!(find("H27").group.exponent(), 3);
        assert_eq!(find("2^(1+4)-").group.center().order(), 2);
    }

    #[test]
    fn small_run_is_clean_and_deterministic() {
        let caps = Caps::default();
        let corpus: Vec<CorpusEntry> = builtin_corpus()
            .into_iter()
            .filter(|e| e.nominal_order() <= 8)
            .collect();
        let a = run_corpus(&corpus, &[], &caps, None);
        let b = run_corpus(&corpus, &[], &caps, None);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.summary.violations, 0);
        // D4 / Z is not split
        assert_eq!(a.summary.untested, 1);
        assert!(a
            .entries
            .iter()
            .all(|r| r.p == 2 || r.p == 3 || r.p == 5 || r.p == 7));
    }

    #[test]
    fn sylow_product_for_q8_z3() {
        let caps = Caps::default();
        let s = sylow_corpus();
        let e = &s[0];
        let g = load_group(&e.recipe, &caps).unwrap();
        let n = g.lookup(&e.n).unwrap();
        let k = e.k.as_ref().and_then(|k| g.lookup(k));
        let c = sylow_check(&e.name, n, k, &caps).unwrap();
        assert!(c.matches);
        assert!(c.multiplier.is_trivial());
    }

    #[test]
    fn counterexample_entry_is_flagged() {
        let corpus = builtin_corpus();
        let e = corpus.last().unwrap();
        assert!(e.known_counterexample);
        assert_eq!(e.nominal_order(), 2048);
    }
}

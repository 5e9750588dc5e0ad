//! Reproduction of the exponent counterexample of order `2^11`.

use num_bigint::BigInt;
use serde::Serialize;

use super::bounds::divides;
use super::corpus::{counterexample_recipe, Recipe};
use crate::error::Result;
use crate::group::{group_class, Subgroup};
use crate::groupfile::{load_group, GroupFile, PcSection};
use crate::multiplier::{pair_multiplier, tails_module};
use crate::zlinalg::AbelianStructure;
use crate::Caps;

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupFacts {
    pub order: usize,
    pub exponent: u64,
    pub class: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub nominal_order: u128,
    pub overlaps_checked: usize,
    pub failing_overlaps: Vec<String>,
    pub group: Option<SubgroupFacts>,
    /// `N` as a subgroup of `G`, or from its own sub-presentation when `G`
    /// could not be built
    pub normal_subgroup: Option<SubgroupFacts>,
    pub index: Option<usize>,
    pub complement_ok: Option<bool>,
    pub tails: Option<AbelianStructure>,
    pub pair_multiplier: Option<AbelianStructure>,
    #[serde(serialize_with = "ser_opt")]
    pub exp_m: Option<BigInt>,
    pub error: Option<String>,
}

fn ser_opt<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// One asserted fact and whether it was reproduced.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: &'static str,
    pub found: String,
    pub holds: bool,
}

fn facts(h: &Subgroup) -> SubgroupFacts {
    let (g, _) = h.to_group();
    SubgroupFacts {
        order: h.order(),
        exponent: h.exponent(),
        class: group_class(&g),
    }
}

/// The recipe restricted to the generators of `N`, relations among them
/// only.
fn sub_recipe(f: &GroupFile, gens: &[String]) -> Option<GroupFile> {
    let pc = f.pc.as_ref()?;
    let keep = |g: &str| gens.iter().any(|x| x == g);
    let idx: Vec<usize> = (0..pc.generators.len())
        .filter(|&i| keep(&pc.generators[i]))
        .collect();
    let sub = PcSection {
        generators: idx.iter().map(|&i| pc.generators[i].clone()).collect(),
        orders: idx.iter().map(|&i| pc.orders[i]).collect(),
        powers: pc
            .powers
            .iter()
            .filter(|(g, _)| keep(g))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect(),
        commutators: pc
            .commutators
            .iter()
            .filter(|(k, _)| k.split(',').all(|g| keep(g.trim())))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect(),
    };
    Some(GroupFile {
        name: format!("{} (N)", f.name),
        pc: Some(sub),
        perm: None,
        subgroups: Default::default(),
        complements: Default::default(),
    })
}

/// Runs the full pipeline on a recipe with a pair labelled `N`, `K`.
pub fn analyze_example(recipe: &Recipe, caps: &Caps) -> Result<Counterexample> {
    let f = recipe.file();
    let pres = f.pc.as_ref().expect("pc recipe").presentation()?;
    let report = pres.consistency_check()?;
    let mut out = Counterexample {
        nominal_order: pres.nominal_order(),
        overlaps_checked: report.checked,
        failing_overlaps: report.failures.iter().map(|o| o.overlap.clone()).collect(),
        group: None,
        normal_subgroup: None,
        index: None,
        complement_ok: None,
        tails: None,
        pair_multiplier: None,
        exp_m: None,
        error: None,
    };
    let n_gens = f.subgroups.get("N").cloned().unwrap_or_default();
    if !report.is_consistent() {
        if let Some(sub) = sub_recipe(f, &n_gens) {
            if let Ok(l) = load_group(&sub, caps) {
                out.normal_subgroup = Some(facts(&l.group.whole()));
            }
        }
        out.error = Some(format!(
            "presentation is inconsistent ({} failing overlaps)",
            report.failures.len()
        ));
        return Ok(out);
    }
    let l = load_group(f, caps)?;
    let g = &l.group;
    out.group = Some(facts(&g.whole()));
    let n = l.lookup("N").cloned();
    let k = l.lookup("K").cloned();
    if let Some(n) = &n {
        out.normal_subgroup = Some(facts(n));
        out.index = Some(g.order() / n.order());
        if let Some(k) = &k {
            out.complement_ok = Some(
                n.is_normal()
                    && n.intersection(k).is_trivial()
                    && n.order() * k.order() == g.order(),
            );
        }
    }
    match tails_module(&pres) {
        Ok(t) => out.tails = Some(t),
        Err(e) => out.error = Some(e.to_string()),
    }
    if let Some(n) = &n {
        match pair_multiplier(n, k.as_ref(), caps) {
            Ok(m) => {
                out.exp_m = Some(m.exponent.clone());
                out.pair_multiplier = Some(m.structure);
            }
            Err(e) => out.error = Some(e.to_string()),
        }
    }
    Ok(out)
}

/// The printed presentation, analysed.
pub fn counterexample_2048(caps: &Caps) -> Result<Counterexample> {
    analyze_example(&counterexample_recipe(), caps)
}

impl Counterexample {
    /// The published facts against what was computed.
    pub fn claims(&self) -> Vec<Claim> {
        fn show<T: std::fmt::Display>(x: &Option<T>) -> String {
            x.as_ref().map_or("n/a".to_string(), |v| v.to_string())
        }
        let g = self.group.as_ref();
        let n = self.normal_subgroup.as_ref();
        let exp_n = n.map(|n| n.exponent);
        let torsion = self.tails.as_ref().map(|t| t.torsion_part());
        let mut out = vec![
            Claim {
                claim: "presentation is consistent",
                found: format!(
                    "{} of {} overlaps fail",
                    self.failing_overlaps.len(),
                    self.overlaps_checked
                ),
                holds: self.failing_overlaps.is_empty(),
            },
            Claim {
                claim: "|G| = 2048",
                found: show(&g.map(|g| g.order)),
                holds: g.is_some_and(|g| g.order == 2048),
            },
            Claim {
                claim: "class(G) = 6",
                found: show(&g.and_then(|g| g.class)),
                holds: g.is_some_and(|g| g.class == Some(6)),
            },
            Claim {
                claim: "exp(G) = 4",
                found: show(&g.map(|g| g.exponent)),
                holds: g.is_some_and(|g| g.exponent == 4),
            },
            Claim {
                claim: "[G:N] = 2",
                found: show(&self.index),
                holds: self.index == Some(2),
            },
            Claim {
                claim: "exp(N) = 4",
                found: show(&exp_n),
                holds: exp_n == Some(4),
            },
            Claim {
                claim: "K = <b> complements N",
                found: show(&self.complement_ok),
                holds: self.complement_ok == Some(true),
            },
            Claim {
                claim: "tails module has free rank 7",
                found: show(&self.tails.as_ref().map(|t| t.free_rank())),
                holds: self.tails.as_ref().is_some_and(|t| t.free_rank() == 7),
            },
            Claim {
                claim: "M(G) = Z2 x Z4 x Z8",
                found: show(&torsion),
                holds: torsion.is_some_and(|t| t.torsion_u64() == [2, 4, 8]),
            },
        ];
        let exp_m = self.exp_m.clone();
        out.push(Claim {
            claim: "exp M(G,N) = 8 does not divide exp(N) = 4",
            found: match (&exp_m, exp_n) {
                (Some(m), Some(e)) => format!("exp M(G,N) = {m}, exp(N) = {e}"),
                _ => "n/a".into(),
            },
            holds: match (&exp_m, exp_n) {
                (Some(m), Some(4)) => *m == BigInt::from(8) && !divides(m, &BigInt::from(4)),
                _ => false,
            },
        });
        out
    }

    pub fn reproduced(&self) -> bool {
        self.claims().iter().all(|c| c.holds)
    }
}

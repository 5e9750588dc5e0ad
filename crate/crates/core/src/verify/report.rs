use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::bounds::{bound_formulas, divides, floor_log, BoundSet};
use crate::error::{Error, Result};
use crate::group::{find_complement, group_class, pair_class, powerful_embedding_check, Subgroup};
use crate::multiplier::{pair_multiplier_using, Backend, H2Result};
use crate::zlinalg::AbelianStructure;
use crate::Caps;

/// Outcome of one theorem check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// hypothesis not met
    NotApplicable,
    /// multiplier unavailable
    Untested,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Holds => s.serialize_bool(true),
            Verdict::Fails => s.serialize_bool(false),
            Verdict::NotApplicable => s.serialize_none(),
            Verdict::Untested => s.serialize_str("untested"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierField {
    Known(AbelianStructure),
    Unavailable,
}

impl Serialize for MultiplierField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MultiplierField::Known(a) => a.serialize(s),
            MultiplierField::Unavailable => s.serialize_str("unavailable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub powerfully_embedded: bool,
    pub class_le_p_minus_1: bool,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub thm27_holds: Verdict,
    pub cor28_applicable: bool,
    pub cor28_holds: Verdict,
    pub thm311_applicable: bool,
    pub thm311_holds: Verdict,
    #[serde(rename = "divides_order_N")]
    pub divides_order_n: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub group_name: String,
    #[serde(rename = "order_G")]
    pub order_g: usize,
    #[serde(rename = "order_N")]
    pub order_n: usize,
    pub p: u64,
    pub e: u32,
    pub pair_class: usize,
    pub m: u32,
    #[serde(rename = "exp_N")]
    pub exp_n: u64,
    pub multiplier: MultiplierField,
    pub backend: Option<Backend>,
    #[serde(rename = "exp_M", serialize_with = "ser_opt")]
    pub exp_m: Option<BigInt>,
    pub bounds: BoundSet,
    pub flags: Flags,
    pub verdicts: Verdicts,
    /// expected failure of `exp M(G,N) | exp N`
    pub known_counterexample: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn ser_opt<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

impl PairReport {
    fn theorem_verdicts(&self) -> [Verdict; 4] {
        let v = &self.verdicts;
        [
            v.thm27_holds,
            v.cor28_holds,
            v.thm311_holds,
            v.divides_order_n,
        ]
    }

    pub fn violations(&self) -> usize {
        self.theorem_verdicts()
            .iter()
            .filter(|v| **v == Verdict::Fails)
            .count()
    }

    pub fn is_untested(&self) -> bool {
        self.multiplier == MultiplierField::Unavailable
    }

    /// `exp M(G,N) | exp N`, when known.
    pub fn exp_divides_exp_n(&self) -> Option<bool> {
        self.exp_m
            .as_ref()
            .map(|x| divides(x, &BigInt::from(self.exp_n)))
    }
}

/// Computes every field of the report for the pair `(G,N)`, `G = N.parent()`.
/// `k` is a complement, searched for when absent; `hg` a cached `H_2(G)`.
pub fn analyze_pair(
    name: &str,
    n: &Subgroup,
    k: Option<&Subgroup>,
    p: Option<u64>,
    caps: &Caps,
    hg: Option<&H2Result>,
) -> Result<PairReport> {
    let g = n.parent();
    let p = match (p, g.prime()) {
        (Some(q), Some(r)) if q == r => q,
        (None, Some(r)) => r,
        (_, None) if g.order() == 1 => p.unwrap_or(2),
        (q, r) => {
            return Err(Error::Invalid(format!(
                "{name} is not a {}-group (order {}, prime {r:?})",
                q.map_or("p".to_string(), |q| q.to_string()),
                g.order()
            )))
        }
    };
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let exp_n = n.exponent();
    let e = floor_log(p, exp_n);
    let kc = pair_class(n)?.ok_or(Error::NotNilpotent)?;
    let c = group_class(g).map(|c| c as u64);
    let bounds = bound_formulas(p, e as u64, kc as u64, c);
    let pe = powerful_embedding_check(n, p)?.powerfully_embedded;

    let found;
    let complement = match k {
        Some(k) => Some(k),
        None if n.is_whole() => None,
        None => match find_complement(n, caps.complement) {
            Ok(Some(x)) => {
                found = x;
                Some(&found)
            }
            _ => None,
        },
    };
    let split = n.is_whole() || complement.is_some();
    let (mult, note) = if !split {
        (Err(()), Some("no complement found".to_string()))
    } else {
        match pair_multiplier_using(n, complement, caps, hg) {
            Ok(m) => (Ok(m), None),
            Err(err) => (Err(()), Some(err.to_string())),
        }
    };

    let cor28_applicable = (kc as u64) < p;
    let order_n = BigInt::from(n.order());
    let exp_n_big = BigInt::from(exp_n);
    let (multiplier, backend, exp_m, verdicts) = match mult {
        Ok(pm) => {
            let x = pm.exponent.clone();
            let cond = |applies: bool| {
                if applies {
                    Verdict::from_bool(divides(&x, &exp_n_big))
                } else {
                    Verdict::NotApplicable
                }
            };
            let v = Verdicts {
                thm27_holds: Verdict::from_bool(divides(&x, &bounds.thm27)),
                cor28_applicable,
                cor28_holds: cond(cor28_applicable),
                thm311_applicable: pe,
                thm311_holds: cond(pe),
                divides_order_n: Verdict::from_bool(divides(&x, &order_n)),
            };
            (
                MultiplierField::Known(pm.structure),
                Some(pm.backend),
                Some(pm.exponent),
                v,
            )
        }
        Err(()) => {
            let side = |applies: bool| {
                if applies {
                    Verdict::Untested
                } else {
                    Verdict::NotApplicable
                }
            };
            let v = Verdicts {
                thm27_holds: Verdict::Untested,
                cor28_applicable,
                cor28_holds: side(cor28_applicable),
                thm311_applicable: pe,
                thm311_holds: side(pe),
                divides_order_n: Verdict::Untested,
            };
            (MultiplierField::Unavailable, None, None, v)
        }
    };
    Ok(PairReport {
        group_name: name.to_string(),
        order_g: g.order(),
        order_n: n.order(),
        p,
        e,
        pair_class: kc,
        m: bounds.m,
        exp_n,
        multiplier,
        backend,
        exp_m,
        bounds,
        flags: Flags {
            powerfully_embedded: pe,
            class_le_p_minus_1: cor28_applicable,
            split,
        },
        verdicts,
        known_counterexample: false,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_group, closure_from_generators, Permutation};

    fn d4() -> (crate::group::FiniteGroup, usize, usize) {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]);
        let s = Permutation::from_cycles(4, &[&[1, 3]]);
        let (g, e) = closure_from_generators(
            &[r.clone(), s.clone()],
            Permutation::identity(4),
            |a, b| a.compose(b),
            100,
        )
        .unwrap();
        let ri = e.iter().position(|x| *x == r).unwrap();
        let si = e.iter().position(|x| *x == s).unwrap();
        (g, ri, si)
    }

    #[test]
    fn d4_rotation() {
        let (g, r, s) = d4();
        let n = g.subgroup(&[r]);
        let k = g.subgroup(&[s]);
        let rep = analyze_pair("D4", &n, Some(&k), None, &Caps::default(), None).unwrap();
        assert_eq!((rep.p, rep.e, rep.pair_class, rep.m), (2, 2, 2, 1));
        assert_eq!(rep.exp_m, Some(BigInt::from(2)));
        assert_eq!(rep.bounds.thm27, BigInt::from(8));
        assert_eq!(rep.verdicts.thm27_holds, Verdict::Holds);
        assert!(!rep.verdicts.cor28_applicable);
        assert_eq!(rep.verdicts.cor28_holds, Verdict::NotApplicable);
        assert_eq!(rep.violations(), 0);
    }

    #[test]
    fn unavailable_is_untested() {
        let (g, r, _) = d4();
        let z = g.subgroup(&[g.pow(r, 2)]);
        let rep = analyze_pair("D4", &z, None, None, &Caps::default(), None).unwrap();
        assert!(!rep.flags.split);
        assert!(rep.is_untested());
        assert_eq!(rep.verdicts.thm27_holds, Verdict::Untested);
        // central of order 2 is powerfully embedded only if [Z,G] = 1 <= agemo_2(Z)
        assert!(rep.flags.powerfully_embedded);
        assert_eq!(rep.verdicts.thm311_holds, Verdict::Untested);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["multiplier"], "unavailable");
        assert_eq!(json["verdicts"]["thm27_holds"], "untested");
    }

    #[test]
    fn abelian_whole_group() {
        let g = abelian_group(&[3, 3]);
        let rep = analyze_pair("Z3xZ3", &g.whole(), None, Some(3), &Caps::default(), None).unwrap();
        assert_eq!(rep.pair_class, 1);
        assert!(rep.verdicts.cor28_applicable);
        assert_eq!(rep.verdicts.cor28_holds, Verdict::Holds);
        assert_eq!(rep.exp_m, Some(BigInt::from(3)));
        let json = serde_json::to_value(&rep).unwrap();
        for key in [
            "order_G",
            "order_N",
            "exp_N",
            "exp_M",
            "pair_class",
            "bounds",
            "flags",
            "verdicts",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["verdicts"]["cor28_holds"], true);
    }

    #[test]
    fn wrong_prime_rejected() {
        let g = abelian_group(&[3]);
        assert!(analyze_pair("Z3", &g.whole(), None, Some(2), &Caps::default(), None).is_err());
    }
}

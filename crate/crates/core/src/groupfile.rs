//! JSON group files and the word-string mini-language.
//!
//! ```text
//! word := term (" " term)*
//! term := name ("^" int)?
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{closure_from_generators, FiniteGroup, Permutation, Subgroup};
use crate::pc::{pc_to_group, PcPresentation, Word};
use crate::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pc: Option<PcSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<PermSection>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complements: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcSection {
    pub generators: Vec<String>,
    pub orders: Vec<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub powers: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub commutators: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermSection {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    /// Generator names; `g1, g2, ...` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl PermSection {
    pub fn generator_names(&self) -> Vec<String> {
        match &self.names {
            Some(n) => n.clone(),
            None => (1..=self.generators.len())
                .map(|i| format!("g{i}"))
                .collect(),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Parses a word-string over `names`. `context` names the relation for
/// error messages; columns are 1-based.
pub fn parse_word(s: &str, names: &[String], context: &str) -> Result<Word> {
    let err = |col: usize, message: String| Error::Syntax {
        location: format!("{context}, column {col}"),
        message,
    };
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let col = |k: usize| -> usize {
        if k < chars.len() {
            s[..chars[k].0].chars().count() + 1
        } else {
            s.chars().count() + 1
        }
    };
    while k < chars.len() && chars[k].1 == ' ' {
        k += 1;
    }
    while k < chars.len() {
        let start = k;
        while k < chars.len() && is_name_char(chars[k].1) {
            k += 1;
        }
        if start == k {
            return Err(err(
                col(k),
                format!("expected a generator name, found '{}'", chars[k].1),
            ));
        }
        let name: String = chars[start..k].iter().map(|c| c.1).collect();
        let g = names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| err(col(start), format!("unknown generator '{name}'")))?;
        let mut e: i64 = 1;
        if k < chars.len() && chars[k].1 == '^' {
            k += 1;
            let ns = k;
            if k < chars.len() && chars[k].1 == '-' {
                k += 1;
            }
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[ns..k].iter().map(|c| c.1).collect();
            e = digits.parse().map_err(|_| {
                err(
                    col(ns),
                    format!("expected an integer exponent after '^' in '{name}^'"),
                )
            })?;
        }
        out.push((g, e));
        if k < chars.len() {
            if chars[k].1 != ' ' {
                return Err(err(
                    col(k),
                    format!("expected ' ' between terms, found '{}'", chars[k].1),
                ));
            }
            while k < chars.len() && chars[k].1 == ' ' {
                k += 1;
            }
        }
    }
    Ok(out)
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Syntax {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: GroupFile = serde_json::from_str(text).map_err(json_error)?;
        match (&f.pc, &f.perm) {
            (Some(_), None) | (None, Some(_)) => Ok(f),
            _ => Err(Error::Syntax {
                location: "top level".into(),
                message: "exactly one of \"pc\" and \"perm\" must be present".into(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group file serializes")
    }

    pub fn generator_names(&self) -> Vec<String> {
        match (&self.pc, &self.perm) {
            (Some(pc), _) => pc.generators.clone(),
            (None, Some(perm)) => perm.generator_names(),
            _ => Vec::new(),
        }
    }
}

impl PcSection {
    pub fn presentation(&self) -> Result<PcPresentation> {
        let names = &self.generators;
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(is_name_char) {
                return Err(Error::Syntax {
                    location: format!("pc.generators[{i}]"),
                    message: format!("invalid generator name '{n}'"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::Syntax {
                    location: format!("pc.generators[{i}]"),
                    message: format!("duplicate generator name '{n}'"),
                });
            }
        }
        let index = |n: &str, loc: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::Syntax {
                    location: loc.to_string(),
                    message: format!("unknown generator '{n}'"),
                })
        };
        let mut powers = Vec::new();
        for (g, w) in &self.powers {
            let loc = format!("pc.powers[\"{g}\"]");
            let i = index(g, &loc)?;
            powers.push((i, parse_word(w, names, &loc)?));
        }
        let mut comms = Vec::new();
        for (key, w) in &self.commutators {
            let loc = format!("pc.commutators[\"{key}\"]");
            let (u, v) = key.split_once(',').ok_or_else(|| Error::Syntax {
                location: loc.clone(),
                message: "commutator key must have the form \"u,v\"".into(),
            })?;
            let j = index(u.trim(), &loc)?;
            let i = index(v.trim(), &loc)?;
            comms.push(((j, i), parse_word(w, names, &loc)?));
        }
        PcPresentation::new(names.clone(), self.orders.clone(), &powers, &comms)
    }
}

/// Parses a group file and returns its pc presentation.
pub fn parse_pc_file(text: &str) -> Result<PcPresentation> {
    let f = GroupFile::parse(text)?;
    match &f.pc {
        Some(pc) => pc.presentation(),
        None => Err(Error::Invalid("group file has no pc presentation".into())),
    }
}

/// A group file realized as a group with its named subgroups.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub name: String,
    pub group: FiniteGroup,
    pub presentation: Option<Arc<PcPresentation>>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub complements: BTreeMap<String, Subgroup>,
}

impl LoadedGroup {
    /// Looks a label up among subgroups, then complements.
    pub fn lookup(&self, label: &str) -> Option<&Subgroup> {
        self.subgroups
            .get(label)
            .or_else(|| self.complements.get(label))
    }
}

/// Builds the group of a file. Subgroup entries are word-strings over the
/// generator names (plain names are the common case).
pub fn load_group(f: &GroupFile, caps: &Caps) -> Result<LoadedGroup> {
    let names = f.generator_names();
    let (group, gen_elems, presentation) = match (&f.pc, &f.perm) {
        (Some(pc), None) => {
            let pres = pc.presentation()?;
            let (g, _) = pc_to_group(&pres, caps.cayley)?;
            let elems = names.iter().map(|n| g.labels()[n]).collect::<Vec<_>>();
            let arc = g.presentation().cloned();
            (g, elems, arc)
        }
        (None, Some(perm)) => {
            if names.len() != perm.generators.len() {
                return Err(Error::Syntax {
                    location: "perm.names".into(),
                    message: format!(
                        "{} names for {} generators",
                        names.len(),
                        perm.generators.len()
                    ),
                });
            }
            let mut gens = Vec::new();
            for (i, img) in perm.generators.iter().enumerate() {
                let p = Permutation::from_images(img)
                    .filter(|p| p.degree() == perm.degree)
                    .ok_or_else(|| Error::Syntax {
                        location: format!("perm.generators[{i}]"),
                        message: format!("not a permutation of 0..{}", perm.degree),
                    })?;
                gens.push(p);
            }
            let id = Permutation::identity(perm.degree);
            let (g, elems) = closure_from_generators(&gens, id, |a, b| a.compose(b), caps.cayley)?;
            let index: std::collections::HashMap<&Permutation, usize> =
                elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let gen_elems: Vec<usize> = gens.iter().map(|p| index[p]).collect();
            let labels = names
                .iter()
                .cloned()
                .zip(gen_elems.iter().copied())
                .collect();
            (g.with_labels(labels), gen_elems, None)
        }
        _ => unreachable!("checked at parse time"),
    };
    let eval = |w: &Word| -> usize {
        w.iter()
            .fold(0, |acc, &(g, e)| group.mul(acc, group.pow(gen_elems[g], e)))
    };
    let build = |section: &str,
                 map: &BTreeMap<String, Vec<String>>|
     -> Result<BTreeMap<String, Subgroup>> {
        let mut out = BTreeMap::new();
        for (label, words) in map {
            let mut gens = Vec::new();
            for (i, w) in words.iter().enumerate() {
                let loc = format!("{section}[\"{label}\"][{i}]");
                gens.push(eval(&parse_word(w, &names, &loc)?));
            }
            out.insert(label.clone(), group.subgroup(&gens));
        }
        Ok(out)
    };
    let subgroups = build("subgroups", &f.subgroups)?;
    let complements = build("complements", &f.complements)?;
    Ok(LoadedGroup {
        name: f.name.clone(),
        group: group.clone(),
        presentation,
        subgroups,
        complements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        ["a", "b", "x1"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("", &names(), "t").unwrap(), vec![]);
        assert_eq!(
            parse_word("a b^2 x1^-3", &names(), "t").unwrap(),
            vec![(0, 1), (1, 2), (2, -3)]
        );
        assert_eq!(
            parse_word("  a  b ", &names(), "t").unwrap(),
            vec![(0, 1), (1, 1)]
        );
    }

    #[test]
    fn word_errors_have_columns() {
        let e = parse_word("a c", &names(), "rel").unwrap_err();
        assert_eq!(
            e,
            Error::Syntax {
                location: "rel, column 3".into(),
                message: "unknown generator 'c'".into()
            }
        );
        let e = parse_word("a^", &names(), "rel").unwrap_err();
        assert!(matches!(e, Error::Syntax { ref location, .. } if location == "rel, column 3"));
        let e = parse_word("a*b", &names(), "rel").unwrap_err();
        assert!(matches!(e, Error::Syntax { ref location, .. } if location == "rel, column 2"));
    }

    const Q8: &str = r#"{
        "name": "Q8",
        "pc": {
            "generators": ["i", "j", "z"],
            "orders": [2, 2, 2],
            "powers": {"i": "z", "j": "z"},
            "commutators": {"j,i": "z"}
        },
        "subgroups": {"N": ["j", "z"]},
        "complements": {}
    }"#;

    #[test]
    fn load_pc_file() {
        let f = GroupFile::parse(Q8).unwrap();
        let lg = load_group(&f, &Caps::default()).unwrap();
        assert_eq!(lg.group.order(), 8);
        assert_eq!(lg.lookup("N").unwrap().order(), 4);
        assert!(lg.presentation.is_some());
    }

    #[test]
    fn load_perm_file() {
        let text = r#"{"name": "D4", "perm": {"degree": 4, "generators": [[1,2,3,0],[0,3,2,1]], "names": ["r", "s"]},
                       "subgroups": {"R": ["r"]}, "complements": {"K": ["s"]}}"#;
        let lg = load_group(&GroupFile::parse(text).unwrap(), &Caps::default()).unwrap();
        assert_eq!(lg.group.order(), 8);
        assert_eq!(lg.lookup("R").unwrap().order(), 4);
        assert_eq!(lg.lookup("K").unwrap().order(), 2);
    }

    #[test]
    fn both_sections_rejected() {
        let text = r#"{"name": "x", "pc": {"generators": [], "orders": []}, "perm": {"degree": 1, "generators": []}}"#;
        assert!(matches!(GroupFile::parse(text), Err(Error::Syntax { .. })));
        assert!(matches!(
            GroupFile::parse(r#"{"name": "x"}"#),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn json_errors_cite_positions() {
        let e = GroupFile::parse("{\n  \"name\": }").unwrap_err();
        assert!(matches!(e, Error::Syntax { ref location, .. } if location.starts_with("line 2")));
    }

    #[test]
    fn commutator_key_order_enforced() {
        let text = r#"{"name": "x", "pc": {"generators": ["a", "b"], "orders": [2, 2], "commutators": {"a,b": ""}}}"#;
        assert!(matches!(
            parse_pc_file(text),
            Err(Error::IndexDiscipline { .. })
        ));
    }

    fn arb_word(names: Vec<String>) -> impl Strategy<Value = String> {
        prop::collection::vec((0..names.len(), prop::option::of(-9i64..10)), 0..5).prop_map(
            move |terms| {
                terms
                    .into_iter()
                    .map(|(g, e)| match e {
                        Some(e) => format!("{}^{}", names[g], e),
                        None => names[g].clone(),
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            },
        )
    }

    fn arb_file() -> impl Strategy<Value = GroupFile> {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        (
            prop::collection::vec(2i64..6, 3),
            prop::collection::btree_map(
                prop::sample::select(names.clone()),
                arb_word(names.clone()),
                0..3,
            ),
            prop::collection::btree_map(
                prop::sample::select(vec!["b,a".to_string(), "c,a".into(), "c,b".into()]),
                arb_word(names.clone()),
                0..3,
            ),
            prop::collection::btree_map(
                "[A-Z]",
                prop::collection::vec(arb_word(names.clone()), 0..3),
                0..3,
            ),
        )
            .prop_map(move |(orders, powers, commutators, subgroups)| GroupFile {
                name: "g".into(),
                pc: Some(PcSection {
                    generators: names.clone(),
                    orders,
                    powers,
                    commutators,
                }),
                perm: None,
                subgroups,
                complements: BTreeMap::new(),
            })
    }

    proptest! {
        #[test]
        fn roundtrip(f in arb_file()) {
            let text = f.to_json();
            let g = GroupFile::parse(&text).unwrap();
            prop_assert_eq!(&f, &g);
            prop_assert_eq!(text, g.to_json());
        }

        #[test]
        fn word_roundtrip(w in arb_word(vec!["a".into(), "b".into()])) {
            let names = vec!["a".to_string(), "b".to_string()];
            let parsed = parse_word(&w, &names, "t").unwrap();
            prop_assert_eq!(parsed.len(), if w.is_empty() { 0 } else { w.split(' ').count() });
        }
    }
}

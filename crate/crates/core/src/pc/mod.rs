//! Polycyclic presentations.
//!
//! A presentation on generators `g_1 < ... < g_n` carries, for every `i`, a
//! relative order `o_i >= 2` and a power relation `g_i^{o_i} = w_i`, and for
//! every `j > i` a commutator relation `[g_j, g_i] = w_ij`, where all right
//! hand sides are normal words in `g_{i+1}, ..., g_n`. Relative orders may
//! be composite.
//!
//! Commutators follow `[x,y] = x^{-1} y^{-1} x y`, so `g_j^{g_i} = g_j w_ij`.

mod collect;
mod consistency;
mod from_group;
mod to_group;

use std::fmt;

use crate::error::{Error, Result};

pub use collect::{Elem, DEFAULT_STEP_CAP};
pub use consistency::{ConsistencyReport, OverlapFailure};
pub use from_group::pc_presentation_of;
pub use to_group::{pc_to_group, PcGroupMap};

/// A word as a sequence of `(generator, exponent)` terms. Exponents may be
/// negative.
pub type Word = Vec<(usize, i64)>;

/// Exponent vector `(e_1, ..., e_n)` with `0 <= e_i < o_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalWord(pub Vec<u32>);

impl NormalWord {
    pub fn identity(n: usize) -> Self {
        NormalWord(vec![0; n])
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Nonzero terms in generator order.
    pub fn terms(&self) -> Word {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e as i64))
            .collect()
    }
}

impl fmt::Debug for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalWord{:?}", self.0)
    }
}

/// A polycyclic presentation with normalized right hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    names: Vec<String>,
    orders: Vec<u32>,
    power_rhs: Vec<NormalWord>,
    /// `comm_rhs[j][i]` for `i < j`.
    comm_rhs: Vec<Vec<NormalWord>>,
    /// letters of `g_j^{g_i} = g_j w_ij`, indexed `[j][i]`
    conj: Vec<Vec<Vec<(usize, u32)>>>,
    power_letters: Vec<Vec<(usize, u32)>>,
}

impl PcPresentation {
    /// Builds a presentation from raw relation words. Every right hand side
    /// for subject `i` may only use generators `> i`; words are brought to
    /// normal form by collection, processing subjects from the last
    /// generator upward. Unlisted relations are trivial.
    pub fn new(
        names: Vec<String>,
        orders: Vec<i64>,
        powers: &[(usize, Word)],
        comms: &[((usize, usize), Word)],
    ) -> Result<Self> {
        let n = names.len();
        if orders.len() != n {
            return Err(Error::Invalid(format!(
                "{} orders for {n} generators",
                orders.len()
            )));
        }
        for (name, &o) in names.iter().zip(&orders) {
            if o < 2 || o > u32::MAX as i64 {
                return Err(Error::BadOrder {
                    generator: name.clone(),
                    order: o,
                });
            }
        }
        let label = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        let mut power_words: Vec<Word> = vec![Vec::new(); n];
        for (i, w) in powers {
            if *i >= n {
                return Err(Error::Invalid(format!(
                    "power relation for unknown generator {i}"
                )));
            }
            check_rhs(w, *i, &format!("{}^{}", label(*i), orders[*i]), &label)?;
            power_words[*i] = w.clone();
        }
        let mut comm_words: Vec<Vec<Word>> = (0..n).map(|j| vec![Vec::new(); j]).collect();
        for ((j, i), w) in comms {
            let rel = format!("[{},{}]", label(*j), label(*i));
            if *j >= n || *i >= n {
                return Err(Error::Invalid(format!(
                    "relation {rel} uses unknown generators"
                )));
            }
            if j <= i {
                return Err(Error::IndexDiscipline {
                    relation: rel,
                    message: format!(
                        "{} must come after {} in the generator order",
                        label(*j),
                        label(*i)
                    ),
                });
            }
            check_rhs(w, *i, &rel, &label)?;
            comm_words[*j][*i] = w.clone();
        }

        let mut pres = PcPresentation {
            names,
            orders: orders.iter().map(|&o| o as u32).collect(),
            power_rhs: vec![NormalWord::identity(n); n],
            comm_rhs: (0..n).map(|j| vec![NormalWord::identity(n); j]).collect(),
            conj: (0..n)
                .map(|j| (0..j).map(|_| vec![(j, 1)]).collect())
                .collect(),
            power_letters: vec![Vec::new(); n],
        };
        for i in (0..n).rev() {
            let w = pres.collect(&power_words[i])?;
            pres.set_power(i, w);
            for j in i + 1..n {
                let w = pres.collect(&comm_words[j][i])?;
                pres.set_comm(j, i, w);
            }
        }
        Ok(pres)
    }

    fn set_power(&mut self, i: usize, w: NormalWord) {
        self.power_letters[i] = letters(&w);
        self.power_rhs[i] = w;
    }

    fn set_comm(&mut self, j: usize, i: usize, w: NormalWord) {
        let mut conj = vec![(j, 1)];
        conj.extend(letters(&w));
        self.conj[j][i] = conj;
        self.comm_rhs[j][i] = w;
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn power_rhs(&self, i: usize) -> &NormalWord {
        &self.power_rhs[i]
    }

    /// Right hand side of `[g_j, g_i]`, `j > i`.
    pub fn comm_rhs(&self, j: usize, i: usize) -> &NormalWord {
        &self.comm_rhs[j][i]
    }

    /// `prod o_i` as a `u128`.
    pub fn nominal_order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// Number of relations `n + n(n-1)/2`.
    pub fn relation_count(&self) -> usize {
        let n = self.len();
        n + n * n.saturating_sub(1) / 2
    }

    /// Index of the power relation of `g_i` among all relations.
    pub fn power_relation(&self, i: usize) -> usize {
        i
    }

    /// Index of the commutator relation `[g_j, g_i]`, `j > i`.
    pub fn comm_relation(&self, j: usize, i: usize) -> usize {
        self.len() + j * (j - 1) / 2 + i
    }

    /// Human-readable relation label.
    pub fn relation_label(&self, r: usize) -> String {
        let n = self.len();
        if r < n {
            return format!("{}^{}", self.names[r], self.orders[r]);
        }
        let mut idx = r - n;
        let mut j = 1;
        while idx >= j {
            idx -= j;
            j += 1;
        }
        format!("[{},{}]", self.names[j], self.names[idx])
    }

    /// Renders a normal word as a word-string (`""` for the identity).
    pub fn format_word(&self, w: &NormalWord) -> String {
        w.terms()
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Direct product: generators of `self` followed by those of `other`
    /// (renamed with `suffix` on clashes).
    pub fn direct_product(&self, other: &PcPresentation, suffix: &str) -> Result<PcPresentation> {
        let n = self.len();
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push_str(suffix);
            }
            names.push(candidate);
        }
        let mut orders: Vec<i64> = self.orders.iter().map(|&o| o as i64).collect();
        orders.extend(other.orders.iter().map(|&o| o as i64));
        let shift = |w: &NormalWord, by: usize| -> Word {
            w.terms().into_iter().map(|(g, e)| (g + by, e)).collect()
        };
        let mut powers = Vec::new();
        let mut comms = Vec::new();
        for (i, w) in self.power_rhs.iter().enumerate() {
            powers.push((i, shift(w, 0)));
        }
        for (i, w) in other.power_rhs.iter().enumerate() {
            powers.push((i + n, shift(w, n)));
        }
        for j in 0..self.len() {
            for i in 0..j {
                comms.push(((j, i), shift(&self.comm_rhs[j][i], 0)));
            }
        }
        for j in 0..other.len() {
            for i in 0..j {
                comms.push(((j + n, i + n), shift(&other.comm_rhs[j][i], n)));
            }
        }
        PcPresentation::new(names, orders, &powers, &comms)
    }
}

fn letters(w: &NormalWord) -> Vec<(usize, u32)> {
    w.0.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| (i, e))
        .collect()
}

fn check_rhs(
    w: &Word,
    subject: usize,
    relation: &str,
    label: &dyn Fn(usize) -> String,
) -> Result<()> {
    for &(g, _) in w {
        if g <= subject {
            return Err(Error::IndexDiscipline {
                relation: relation.to_string(),
                message: format!(
                    "right hand side uses {}, but only generators after {} are allowed",
                    label(g),
                    label(subject)
                ),
            });
        }
    }
    Ok(())
}

/// Builds a presentation from names and string relations, for tests and
/// built-in data. Relation words use the word-string grammar.
pub fn presentation_from_strings(
    names: &[&str],
    orders: &[i64],
    powers: &[(&str, &str)],
    comms: &[(&str, &str, &str)],
) -> Result<PcPresentation> {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let lookup = |s: &str| {
        names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| Error::Invalid(format!("unknown generator {s}")))
    };
    let mut pw = Vec::new();
    for (g, w) in powers {
        pw.push((lookup(g)?, crate::groupfile::parse_word(w, &names, g)?));
    }
    let mut cm = Vec::new();
    for (u, v, w) in comms {
        cm.push((
            (lookup(u)?, lookup(v)?),
            crate::groupfile::parse_word(w, &names, &format!("{u},{v}"))?,
        ));
    }
    PcPresentation::new(names, orders.to_vec(), &pw, &cm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_order_is_rejected() {
        let err = PcPresentation::new(vec!["a".into()], vec![1], &[], &[]).unwrap_err();
        assert!(matches!(err, Error::BadOrder { .. }));
    }

    #[test]
    fn wrong_commutator_order_is_index_discipline() {
        let err = presentation_from_strings(&["g1", "g2"], &[2, 2], &[], &[("g1", "g2", "")])
            .unwrap_err();
        assert!(matches!(err, Error::IndexDiscipline { .. }));
    }

    #[test]
    fn early_generator_in_rhs_is_index_discipline() {
        let err = presentation_from_strings(&["g1", "g2", "g3"], &[2, 2, 2], &[("g2", "g1")], &[])
            .unwrap_err();
        assert!(matches!(err, Error::IndexDiscipline { .. }));
        let err =
            presentation_from_strings(&["g1", "g2", "g3"], &[2, 2, 2], &[], &[("g3", "g2", "g2")])
                .unwrap_err();
        assert!(matches!(err, Error::IndexDiscipline { .. }));
    }

    #[test]
    fn rhs_words_are_normalized() {
        // Z8 as g1 (order 2), g2 (order 2), g3 (order 2) with g1^2 = g2, g2^2 = g3
        let p = presentation_from_strings(
            &["g1", "g2", "g3"],
            &[2, 2, 2],
            &[("g1", "g2"), ("g2", "g3")],
            &[],
        )
        .unwrap();
        assert_eq!(p.power_rhs(0).0, vec![0, 1, 0]);
        // negative exponents in relation words are inverted properly
        let q = presentation_from_strings(
            &["a", "b"],
            &[2, 4],
            &[("a", "b^-2")],
            &[("b", "a", "b^-2")],
        )
        .unwrap();
        assert_eq!(q.power_rhs(0).0, vec![0, 2]);
        assert_eq!(q.comm_rhs(1, 0).0, vec![0, 2]);
    }

    #[test]
    fn relation_labels() {
        let p = presentation_from_strings(&["a", "b", "c"], &[2, 2, 2], &[], &[]).unwrap();
        assert_eq!(p.relation_count(), 6);
        assert_eq!(p.relation_label(0), "a^2");
        assert_eq!(p.relation_label(p.comm_relation(1, 0)), "[b,a]");
        assert_eq!(p.relation_label(p.comm_relation(2, 0)), "[c,a]");
        assert_eq!(p.relation_label(p.comm_relation(2, 1)), "[c,b]");
    }
}

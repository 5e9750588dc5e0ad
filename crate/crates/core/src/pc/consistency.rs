//! Overlap checks for confluence of the collection rules.

use super::{Elem, NormalWord, PcPresentation};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapFailure {
    pub overlap: String,
    pub left: NormalWord,
    pub right: NormalWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub failures: Vec<OverlapFailure>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One overlap test; both sides evaluate the same word in two ways.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Overlap {
    /// `g_k (g_j g_i)` against `(g_k g_j) g_i`, `k > j > i`
    Triple(usize, usize, usize),
    /// `(g_j^{o_j}) g_i` against `g_j^{o_j-1} (g_j g_i)`, `j > i`
    PowerLeft(usize, usize),
    /// `(g_j g_i) g_i^{o_i-1}` against `g_j (g_i^{o_i})`, `j > i`
    PowerRight(usize, usize),
    /// `g_i^{o_i} g_i` against `g_i (g_i^{o_i})`
    Power(usize),
}

impl PcPresentation {
    pub(crate) fn overlaps(&self) -> Vec<Overlap> {
        let n = self.len();
        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    out.push(Overlap::Triple(k, j, i));
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                out.push(Overlap::PowerLeft(j, i));
                out.push(Overlap::PowerRight(j, i));
            }
        }
        for i in 0..n {
            out.push(Overlap::Power(i));
        }
        out
    }

    pub(crate) fn overlap_label(&self, o: Overlap) -> String {
        let nm = |i: usize| &self.names()[i];
        match o {
            Overlap::Triple(k, j, i) => format!("{} {} {}", nm(k), nm(j), nm(i)),
            Overlap::PowerLeft(j, i) => format!("{}^{} {}", nm(j), self.orders()[j], nm(i)),
            Overlap::PowerRight(j, i) => format!("{} {}^{}", nm(j), nm(i), self.orders()[i]),
            Overlap::Power(i) => format!("{}^{}", nm(i), self.orders()[i] + 1),
        }
    }

    /// Evaluates both sides of an overlap.
    pub(crate) fn evaluate_overlap(&self, o: Overlap, tailed: bool) -> Result<(Elem, Elem)> {
        let id = || Elem::identity(self, tailed);
        let gen_pow = |i: usize, c: u32| -> Result<Elem> {
            let mut e = id();
            self.mul_gen(&mut e, i, c)?;
            Ok(e)
        };
        let word = |terms: &[(usize, u32)]| -> Result<Elem> {
            let mut e = id();
            for &(g, c) in terms {
                self.mul_gen(&mut e, g, c)?;
            }
            Ok(e)
        };
        let ord = |i: usize| self.orders()[i];
        Ok(match o {
            Overlap::Triple(k, j, i) => {
                let left = word(&[(k, 1), (j, 1), (i, 1)])?;
                let inner = word(&[(j, 1), (i, 1)])?;
                let mut right = gen_pow(k, 1)?;
                self.mul_elem(&mut right, &inner)?;
                (left, right)
            }
            Overlap::PowerLeft(j, i) => {
                let left = word(&[(j, ord(j)), (i, 1)])?;
                let inner = word(&[(j, 1), (i, 1)])?;
                let mut right = gen_pow(j, ord(j) - 1)?;
                self.mul_elem(&mut right, &inner)?;
                (left, right)
            }
            Overlap::PowerRight(j, i) => {
                let left = word(&[(j, 1), (i, 1), (i, ord(i) - 1)])?;
                let inner = gen_pow(i, ord(i))?;
                let mut right = gen_pow(j, 1)?;
                self.mul_elem(&mut right, &inner)?;
                (left, right)
            }
            Overlap::Power(i) => {
                let left = word(&[(i, ord(i)), (i, 1)])?;
                let inner = gen_pow(i, ord(i))?;
                let mut right = gen_pow(i, 1)?;
                self.mul_elem(&mut right, &inner)?;
                (left, right)
            }
        })
    }

    /// Runs every overlap test and records the disagreeing ones.
    pub fn consistency_check(&self) -> Result<ConsistencyReport> {
        let mut report = ConsistencyReport::default();
        for o in self.overlaps() {
            let (l, r) = self.evaluate_overlap(o, false)?;
            report.checked += 1;
            if l.exps != r.exps {
                report.failures.push(OverlapFailure {
                    overlap: self.overlap_label(o),
                    left: l.normal(),
                    right: r.normal(),
                });
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::super::presentation_from_strings;

    #[test]
    fn heisenberg_is_consistent() {
        let p =
            presentation_from_strings(&["g1", "g2", "g3"], &[3, 3, 3], &[], &[("g2", "g1", "g3")])
                .unwrap();
        let r = p.consistency_check().unwrap();
        assert!(r.is_consistent());
        // 1 triple, 3 pairs * 2, 3 powers
        assert_eq!(r.checked, 10);
    }

    #[test]
    fn collapsing_presentation_is_detected() {
        // g1^2 = g2^2 = 1 with [g2, g1] = g2 forces g2 = 1
        let p =
            presentation_from_strings(&["g1", "g2"], &[2, 2], &[], &[("g2", "g1", "g2")]).unwrap();
        let r = p.consistency_check().unwrap();
        assert!(!r.is_consistent());
    }

    #[test]
    fn quaternion_is_consistent() {
        let p = presentation_from_strings(
            &["a", "b", "z"],
            &[2, 2, 2],
            &[("a", "z"), ("b", "z")],
            &[("b", "a", "z")],
        )
        .unwrap();
        assert!(p.consistency_check().unwrap().is_consistent());
    }

    #[test]
    fn noncentral_power_is_inconsistent() {
        // a^2 = b but b does not commute with a
        let p = presentation_from_strings(
            &["a", "b", "c"],
            &[2, 2, 2],
            &[("a", "b")],
            &[("b", "a", "c")],
        )
        .unwrap();
        assert!(!p.consistency_check().unwrap().is_consistent());
    }
}

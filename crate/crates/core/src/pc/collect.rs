//! Collection to the left.

use super::{NormalWord, PcPresentation};
use crate::error::{Error, Result};

pub const DEFAULT_STEP_CAP: usize = 10_000_000;

/// An element of the presented group, optionally extended by one central
/// free-abelian tail per relation. `tails` is empty for plain elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    pub exps: Vec<u32>,
    pub tails: Vec<i64>,
}

impl Elem {
    pub fn identity(p: &PcPresentation, tailed: bool) -> Self {
        Elem {
            exps: vec![0; p.len()],
            tails: if tailed {
                vec![0; p.relation_count()]
            } else {
                Vec::new()
            },
        }
    }

    pub fn from_normal(w: &NormalWord, p: &PcPresentation, tailed: bool) -> Self {
        let mut e = Elem::identity(p, tailed);
        e.exps.clone_from(&w.0);
        e
    }

    pub fn normal(&self) -> NormalWord {
        NormalWord(self.exps.clone())
    }

    fn tail(&mut self, rel: usize, k: i64) {
        if !self.tails.is_empty() {
            self.tails[rel] += k;
        }
    }
}

struct Collector<'a> {
    p: &'a PcPresentation,
    stack: Vec<(usize, u32)>,
    steps: usize,
    cap: usize,
}

impl<'a> Collector<'a> {
    fn push_letters(&mut self, letters: &[(usize, u32)], times: u32) {
        for _ in 0..times {
            for &l in letters.iter().rev() {
                self.stack.push(l);
            }
        }
    }

    fn run(&mut self, x: &mut Elem) -> Result<()> {
        let p = self.p;
        let n = p.len();
        while let Some((i, c)) = self.stack.pop() {
            if c == 0 {
                continue;
            }
            self.steps += 1;
            if self.steps > self.cap {
                return Err(Error::NonTermination(self.cap));
            }
            let o = p.orders[i];
            // first position after i where the exponent is nonzero and the
            // generator does not commute with g_i on the nose
            let mut first_moving = n;
            for j in i + 1..n {
                let e = x.exps[j];
                if e == 0 {
                    continue;
                }
                if p.conj[j][i].len() > 1 {
                    first_moving = j;
                    break;
                }
            }
            let suffix_nonzero = (i + 1..n).any(|j| x.exps[j] != 0);
            if first_moving == n {
                // g_i^c passes every later letter unchanged
                if suffix_nonzero && !x.tails.is_empty() {
                    for j in i + 1..n {
                        let e = x.exps[j];
                        if e != 0 {
                            x.tail(p.comm_relation(j, i), e as i64 * c as i64);
                        }
                    }
                }
                let total = x.exps[i] as u64 + c as u64;
                let wraps = (total / o as u64) as u32;
                x.exps[i] = (total % o as u64) as u32;
                if wraps > 0 {
                    x.tail(p.power_relation(i), wraps as i64);
                    let mut suffix = Vec::new();
                    for j in i + 1..n {
                        if x.exps[j] != 0 {
                            suffix.push((j, x.exps[j]));
                            x.exps[j] = 0;
                        }
                    }
                    // x = prefix * g_i^r * w_i^wraps * suffix
                    for &(j, e) in suffix.iter().rev() {
                        self.stack.push((j, e));
                    }
                    self.push_letters(&p.power_letters[i], wraps);
                }
                continue;
            }
            // move a single g_i past the suffix
            if c > 1 {
                self.stack.push((i, c - 1));
            }
            // positions before first_moving stay where they are
            let mut moved = Vec::new();
            for j in i + 1..n {
                let e = x.exps[j];
                if e == 0 {
                    continue;
                }
                x.tail(p.comm_relation(j, i), e as i64);
                if j >= first_moving {
                    moved.push((j, e));
                    x.exps[j] = 0;
                }
            }
            for &(j, e) in moved.iter().rev() {
                self.push_letters(&p.conj[j][i], e);
            }
            x.exps[i] += 1;
            if x.exps[i] == o {
                x.exps[i] = 0;
                x.tail(p.power_relation(i), 1);
                // the kept suffix sits between g_i^o and the moved letters,
                // and commutes with g_i; w_i must come after it
                let mut kept = Vec::new();
                for j in i + 1..n {
                    if x.exps[j] != 0 {
                        kept.push((j, x.exps[j]));
                        x.exps[j] = 0;
                    }
                }
                for &(j, e) in kept.iter().rev() {
                    self.stack.push((j, e));
                }
                self.push_letters(&p.power_letters[i], 1);
            }
        }
        Ok(())
    }
}

impl PcPresentation {
    fn collector(&self) -> Collector<'_> {
        Collector {
            p: self,
            stack: Vec::new(),
            steps: 0,
            cap: DEFAULT_STEP_CAP,
        }
    }

    /// `x <- x * g_i^c`, `c >= 0`.
    pub fn mul_gen(&self, x: &mut Elem, i: usize, c: u32) -> Result<()> {
        let mut col = self.collector();
        col.stack.push((i, c));
        col.run(x)
    }

    /// `x <- x * y`.
    pub fn mul_elem(&self, x: &mut Elem, y: &Elem) -> Result<()> {
        let mut col = self.collector();
        for (i, &e) in y.exps.iter().enumerate().rev() {
            if e != 0 {
                col.stack.push((i, e));
            }
        }
        col.run(x)?;
        if !x.tails.is_empty() && !y.tails.is_empty() {
            for (a, b) in x.tails.iter_mut().zip(&y.tails) {
                *a += b;
            }
        }
        Ok(())
    }

    /// Inverse, computed by cancelling exponents from the left with positive
    /// multiplications only.
    pub fn inverse_elem(&self, u: &Elem) -> Result<Elem> {
        let tailed = !u.tails.is_empty();
        let mut x = u.clone();
        let mut r = Elem::identity(self, tailed);
        for i in 0..self.len() {
            let e = x.exps[i];
            if e != 0 {
                let a = self.orders[i] - e;
                self.mul_gen(&mut x, i, a)?;
                r.exps[i] = a;
            }
        }
        debug_assert!(x.exps.iter().all(|&e| e == 0));
        // u * r = t^{tails(x)}, so u^{-1} = r * t^{-tails(x)}
        for (a, b) in r.tails.iter_mut().zip(&x.tails) {
            *a = -b;
        }
        Ok(r)
    }

    /// Collects an arbitrary word.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<NormalWord> {
        Ok(self.collect_elem(word, false)?.normal())
    }

    pub fn collect_elem(&self, word: &[(usize, i64)], tailed: bool) -> Result<Elem> {
        let mut x = Elem::identity(self, tailed);
        for &(g, e) in word {
            if g >= self.len() {
                return Err(Error::Invalid(format!("generator index {g} out of range")));
            }
            if e >= 0 {
                self.mul_gen(&mut x, g, e as u32)?;
            } else {
                let mut power = Elem::identity(self, tailed);
                let k = e.unsigned_abs();
                self.mul_gen(
                    &mut power,
                    g,
                    u32::try_from(k).map_err(|_| Error::Invalid("exponent too large".into()))?,
                )?;
                let inv = self.inverse_elem(&power)?;
                self.mul_elem(&mut x, &inv)?;
            }
        }
        Ok(x)
    }

    pub fn multiply(&self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord> {
        let mut x = Elem::from_normal(a, self, false);
        self.mul_elem(&mut x, &Elem::from_normal(b, self, false))?;
        Ok(x.normal())
    }

    pub fn inverse(&self, a: &NormalWord) -> Result<NormalWord> {
        Ok(self
            .inverse_elem(&Elem::from_normal(a, self, false))?
            .normal())
    }

    /// Normal word of the generator `g_i`.
    pub fn generator(&self, i: usize) -> NormalWord {
        let mut w = NormalWord::identity(self.len());
        w.0[i] = 1;
        w
    }
}

#[cfg(test)]
mod tests {
    use super::super::presentation_from_strings;
    use super::*;

    fn heisenberg3() -> PcPresentation {
        presentation_from_strings(&["g1", "g2", "g3"], &[3, 3, 3], &[], &[("g2", "g1", "g3")])
            .unwrap()
    }

    #[test]
    fn cyclic_four_via_power_relation() {
        let p = presentation_from_strings(&["a", "b"], &[2, 2], &[("a", "b")], &[]).unwrap();
        let a = p.generator(0);
        let a2 = p.multiply(&a, &a).unwrap();
        assert_eq!(a2.0, vec![0, 1]);
        let a4 = p.multiply(&a2, &a2).unwrap();
        assert!(a4.is_identity());
        assert_eq!(p.inverse(&a).unwrap().0, vec![1, 1]);
    }

    #[test]
    fn heisenberg_swap() {
        let p = heisenberg3();
        // g2 g1 = g1 g2 [g2, g1] = g1 g2 g3
        let w = p.collect(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(w.0, vec![1, 1, 1]);
        // g2^2 g1^2 = g1^2 g2^2 g3^4
        let w = p.collect(&[(1, 2), (0, 2)]).unwrap();
        assert_eq!(w.0, vec![2, 2, 1]);
    }

    #[test]
    fn negative_exponents() {
        let p = heisenberg3();
        let w = p.collect(&[(0, 1), (1, 1), (0, -1), (1, -1)]).unwrap();
        // [g1^{-1}, g2^{-1}] = g1 g2 g1^-1 g2^-1
        let direct = {
            let a = p.generator(0);
            let b = p.generator(1);
            let ai = p.inverse(&a).unwrap();
            let bi = p.inverse(&b).unwrap();
            let ab = p.multiply(&a, &b).unwrap();
            let abai = p.multiply(&ab, &ai).unwrap();
            p.multiply(&abai, &bi).unwrap()
        };
        assert_eq!(w, direct);
        assert_eq!(w.0, vec![0, 0, 2]);
    }

    #[test]
    fn identity_collects_to_itself() {
        let p = heisenberg3();
        assert!(p.collect(&[]).unwrap().is_identity());
        assert!(p.collect(&[(2, 3)]).unwrap().is_identity());
    }

    #[test]
    fn tails_track_relations() {
        let p = heisenberg3();
        let x = p.collect_elem(&[(1, 1), (0, 1)], true).unwrap();
        assert_eq!(x.exps, vec![1, 1, 1]);
        // one application of [g2, g1]
        let mut expected = vec![0i64; p.relation_count()];
        expected[p.comm_relation(1, 0)] = 1;
        assert_eq!(x.tails, expected);
    }

    #[test]
    fn tailed_inverse() {
        let p = heisenberg3();
        let x = p.collect_elem(&[(1, 2), (0, 1), (2, 1)], true).unwrap();
        let xi = p.inverse_elem(&x).unwrap();
        let mut y = x.clone();
        p.mul_elem(&mut y, &xi).unwrap();
        assert!(y.exps.iter().all(|&e| e == 0));
        assert!(y.tails.iter().all(|&t| t == 0), "{:?}", y.tails);
    }
}

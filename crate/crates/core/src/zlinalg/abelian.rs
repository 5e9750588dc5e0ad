use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::cokernel::Cokernel;
use super::snf::{left_kernel, DenseMatrix};
use super::SparseIntMatrix;
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z_{d_1} x ... x Z_{d_t} x Z^r` with
/// `1 < d_1 | d_2 | ... | d_t`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianStructure {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl fmt::Debug for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianStructure({self})")
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl Serialize for AbelianStructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianStructure", 2)?;
        let t: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        st.serialize_field("torsion", &t)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.end()
    }
}

impl AbelianStructure {
    /// Takes invariant factors that already form a divisibility chain.
    /// Factors equal to 1 are dropped.
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        let torsion: Vec<BigInt> = torsion.into_iter().filter(|d| !d.is_one()).collect();
        debug_assert!(torsion.iter().all(|d| d.is_positive()));
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        AbelianStructure { torsion, free_rank }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// Structure of `Z_{c_1} x ... x Z_{c_k}` for arbitrary cyclic orders
    /// (0 meaning infinite cyclic).
    pub fn from_cyclic_orders<T: Into<BigInt> + Clone>(orders: &[T]) -> Self {
        let rels: Vec<Vec<(usize, BigInt)>> = orders
            .iter()
            .enumerate()
            .map(|(i, o)| vec![(i, o.clone().into())])
            .collect();
        Cokernel::new(orders.len(), rels).structure().clone()
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| d.to_u64().expect("invariant fits in u64"))
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Largest invariant factor, 1 for the trivial group. Only meaningful
    /// for the torsion part.
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn torsion_part(&self) -> Self {
        AbelianStructure {
            torsion: self.torsion.clone(),
            free_rank: 0,
        }
    }

    /// Prime-power cyclic factors, sorted.
    pub fn elementary_divisors(&self) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for d in &self.torsion {
            let mut d = d
                .to_u64()
                .ok_or_else(|| Error::Invalid(format!("invariant {d} too large to factor")))?;
            let mut p = 2;
            while d > 1 {
                if p * p > d {
                    out.push(d);
                    break;
                }
                let mut q = 1;
                while d % p == 0 {
                    d /= p;
                    q *= p;
                }
                if q > 1 {
                    out.push(q);
                }
                p += 1;
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    fn from_elementary(divs: &[u64], free_rank: usize) -> Self {
        let mut s = Self::from_cyclic_orders(divs);
        s.free_rank = free_rank;
        s
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigInt> = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let mut s = Self::from_cyclic_orders(&orders);
        s.free_rank = self.free_rank + other.free_rank;
        s
    }

    /// `X` with `self = X (+) other`, by cancelling elementary divisors
    /// (valid for finite groups). `None` if `other` is not a summand.
    pub fn cancel(&self, other: &Self) -> Result<Option<Self>> {
        if other.free_rank > self.free_rank {
            return Ok(None);
        }
        let mut mine: BTreeMap<u64, usize> = BTreeMap::new();
        for d in self.elementary_divisors()? {
            *mine.entry(d).or_default() += 1;
        }
        for d in other.elementary_divisors()? {
            match mine.get_mut(&d) {
                Some(c) if *c > 0 => *c -= 1,
                _ => return Ok(None),
            }
        }
        let rest: Vec<u64> = mine
            .into_iter()
            .flat_map(|(d, c)| std::iter::repeat_n(d, c))
            .collect();
        Ok(Some(Self::from_elementary(
            &rest,
            self.free_rank - other.free_rank,
        )))
    }
}

/// `Z^gens / rowspace(rels)`.
pub fn abelian_from_relations(gens: usize, rels: &SparseIntMatrix) -> Result<AbelianStructure> {
    if rels.cols() != gens {
        return Err(Error::DimensionMismatch(format!(
            "relation matrix has {} columns for {gens} generators",
            rels.cols()
        )));
    }
    Ok(Cokernel::new(gens, rels.row_lists()).structure().clone())
}

fn moduli(a: &AbelianStructure) -> Vec<BigInt> {
    let mut m = a.torsion().to_vec();
    m.extend(std::iter::repeat_n(BigInt::zero(), a.free_rank()));
    m
}

/// Structure of the subgroup of `A = Z_{m_1} x ...` (moduli `m`, 0 for
/// free coordinates) generated by the given elements in coordinates.
pub fn subgroup_structure(m: &[BigInt], gens: &[Vec<BigInt>]) -> Result<AbelianStructure> {
    let s = m.len();
    for g in gens {
        if g.len() != s {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in a group of rank {s}",
                g.len()
            )));
        }
    }
    let k = gens.len();
    if k == 0 {
        return Ok(AbelianStructure::trivial());
    }
    // w with w P in rowspace diag(m): left kernel of [P; diag(m)], first k
    let mut stacked: DenseMatrix = gens.to_vec();
    for (i, mi) in m.iter().enumerate() {
        let mut r = vec![BigInt::zero(); s];
        r[i] = mi.clone();
        stacked.push(r);
    }
    let lk = left_kernel(&stacked, k + s, s);
    let rels: Vec<Vec<(usize, BigInt)>> = lk
        .into_iter()
        .map(|w| {
            w.into_iter()
                .take(k)
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .collect();
    Ok(Cokernel::new(k, rels).structure().clone())
}

/// Kernel of the homomorphism `dom -> cod` whose matrix has one column per
/// generator of `dom` (torsion generators first, then free) holding the
/// image in the coordinates of `cod`.
pub fn abelian_hom_kernel(
    dom: &AbelianStructure,
    cod: &AbelianStructure,
    matrix: &[Vec<BigInt>],
) -> Result<AbelianStructure> {
    let dm = moduli(dom);
    let cm = moduli(cod);
    let (s, t) = (dm.len(), cm.len());
    if matrix.len() != t || matrix.iter().any(|r| r.len() != s) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {t}x{s} matrix for a map from {dom} to {cod}"
        )));
    }
    // well defined: d_j * (column j) vanishes in cod
    for j in 0..s {
        for i in 0..t {
            let v = &dm[j] * &matrix[i][j];
            let ok = if cm[i].is_zero() {
                v.is_zero()
            } else {
                v.is_multiple_of(&cm[i])
            };
            if !ok {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} does not respect the order of generator {j}"
                )));
            }
        }
    }
    if s == 0 {
        return Ok(AbelianStructure::trivial());
    }
    // L = { x : Phi x in diag(c) Z^t } = projection of the right kernel of
    // [Phi | diag(c)], i.e. the left kernel of its transpose
    let mut bt: DenseMatrix = (0..s)
        .map(|j| (0..t).map(|i| matrix[i][j].clone()).collect())
        .collect();
    for (i, ci) in cm.iter().enumerate() {
        let mut r = vec![BigInt::zero(); t];
        r[i] = ci.clone();
        bt.push(r);
    }
    let lk = left_kernel(&bt, s + t, t);
    let lgen: Vec<Vec<BigInt>> = lk
        .into_iter()
        .map(|z| z.into_iter().take(s).collect::<Vec<_>>())
        .filter(|x: &Vec<BigInt>| x.iter().any(|v| !v.is_zero()))
        .collect();
    subgroup_structure(&dm, &lgen)
}

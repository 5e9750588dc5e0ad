//! Cokernels `Z^n / rowspace(R)` with coordinates.
//!
//! Large sparse relation sets are first thinned by eliminating unit pivots
//! (each elimination is recorded as a substitution `e_c = sum b_j e_j`);
//! the surviving relations are brought to echelon form and finished with a
//! dense Smith normal form.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::{snf_dense, DenseMatrix};
use super::AbelianStructure;

type Row = Vec<(usize, BigInt)>;

/// Substitution `e_col = sum coeff * e_j` valid in the quotient.
#[derive(Clone, Debug)]
struct Substitution {
    col: usize,
    rest: Row,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    n: usize,
    subs: Vec<Substitution>,
    /// surviving original columns, in order
    survivors: Vec<usize>,
    survivor_pos: Vec<Option<usize>>,
    diag: Vec<BigInt>,
    /// transform of the dense block and its inverse
    v: DenseMatrix,
    v_inv: DenseMatrix,
    structure: AbelianStructure,
    /// dense-block coordinates that carry torsion `> 1` or are free
    active: Vec<usize>,
}

fn is_unit(x: &BigInt) -> bool {
    x.is_one() || (-x).is_one()
}

/// `a += k * b` on sorted sparse rows.
fn axpy(a: &Row, k: &BigInt, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, k * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + k * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(mut r: Row) -> Row {
    r.sort_by_key(|e| e.0);
    let mut out: Row = Vec::with_capacity(r.len());
    for (c, v) in r {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Incremental echelon basis over the integers.
struct Echelon {
    width: usize,
    basis: Vec<Option<Vec<BigInt>>>,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Echelon {
            width,
            basis: vec![None; width],
        }
    }

    fn insert(&mut self, mut row: Vec<BigInt>) {
        for c in 0..self.width {
            if row[c].is_zero() {
                continue;
            }
            match self.basis[c].take() {
                None => {
                    if row[c].is_negative() {
                        for x in &mut row {
                            *x = -&*x;
                        }
                    }
                    self.basis[c] = Some(row);
                    return;
                }
                Some(b) => {
                    if row[c].is_multiple_of(&b[c]) {
                        let q = &row[c] / &b[c];
                        for (x, y) in row.iter_mut().zip(&b) {
                            *x -= &q * y;
                        }
                        self.basis[c] = Some(b);
                    } else {
                        let e = b[c].extended_gcd(&row[c]);
                        let (x, y, g) = (e.x, e.y, e.gcd);
                        let rb = &row[c] / &g;
                        let bb = &b[c] / &g;
                        let new_b: Vec<BigInt> =
                            b.iter().zip(&row).map(|(p, q)| &x * p + &y * q).collect();
                        let new_row: Vec<BigInt> =
                            b.iter().zip(&row).map(|(p, q)| &rb * p - &bb * q).collect();
                        debug_assert!(new_row[c].is_zero());
                        self.basis[c] = Some(new_b);
                        row = new_row;
                    }
                }
            }
        }
    }

    fn rows(self) -> Vec<Vec<BigInt>> {
        self.basis.into_iter().flatten().collect()
    }
}

impl Cokernel {
    /// Cokernel of the relation rows (sparse `(col, value)` lists) on `n`
    /// generators. Rows may contain repeated columns.
    pub fn new(n: usize, relations: Vec<Row>) -> Self {
        let mut rows: Vec<Option<Row>> = Vec::new();
        let mut seen: HashSet<Row> = HashSet::new();
        for r in relations {
            let r = normalize(r);
            if r.is_empty() {
                continue;
            }
            let key = if r[0].1.is_negative() {
                r.iter().map(|(c, v)| (*c, -v)).collect()
            } else {
                r.clone()
            };
            if seen.insert(key) {
                rows.push(Some(r));
            }
        }
        drop(seen);

        let total: usize = rows.iter().flatten().map(|r| r.len()).sum();
        let dense_enough =
            n > 0 && !rows.is_empty() && total as f64 > 0.2 * (n as f64) * (rows.len() as f64);
        let mut subs = Vec::new();
        let mut eliminated = vec![false; n];
        if n >= 64 && !dense_enough {
            subs = eliminate_units(n, &mut rows, &mut eliminated);
        }

        let survivors: Vec<usize> = (0..n).filter(|&c| !eliminated[c]).collect();
        let mut survivor_pos = vec![None; n];
        for (i, &c) in survivors.iter().enumerate() {
            survivor_pos[c] = Some(i);
        }
        let s = survivors.len();
        let mut ech = Echelon::new(s);
        for r in rows.into_iter().flatten() {
            let mut d = vec![BigInt::zero(); s];
            for (c, v) in r {
                d[survivor_pos[c].expect("eliminated columns were removed")] = v;
            }
            ech.insert(d);
        }
        let block = ech.rows();
        let snf = snf_dense(&block, block.len(), s, true);
        let mut diag: Vec<BigInt> = vec![BigInt::zero(); s];
        for (i, d) in snf.invariants().iter().enumerate() {
            diag[i] = d.clone();
        }
        let torsion: Vec<BigInt> = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        let free_rank = s - snf.rank;
        let active = (0..s).filter(|&i| !diag[i].is_one()).collect();
        Cokernel {
            n,
            subs,
            survivors,
            survivor_pos,
            diag,
            v: snf.v.expect("requested"),
            v_inv: snf.v_inv.expect("requested"),
            structure: AbelianStructure::new(torsion, free_rank),
            active,
        }
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    /// Number of coordinates returned by [`Cokernel::coords`]: torsion
    /// coordinates first, then free ones.
    pub fn coord_len(&self) -> usize {
        self.active.len()
    }

    /// Moduli of the coordinates (0 for free coordinates).
    pub fn moduli(&self) -> Vec<BigInt> {
        self.active.iter().map(|&i| self.diag[i].clone()).collect()
    }

    /// Coordinates of the class of `x` (a vector over the `n` generators),
    /// torsion coordinates reduced into `[0, d)`.
    pub fn coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.n);
        let mut x: Vec<BigInt> = x.to_vec();
        for s in &self.subs {
            if x[s.col].is_zero() {
                continue;
            }
            let k = std::mem::take(&mut x[s.col]);
            for (c, b) in &s.rest {
                x[*c] += &k * b;
            }
        }
        let y: Vec<BigInt> = self.survivors.iter().map(|&c| x[c].clone()).collect();
        self.active
            .iter()
            .map(|&i| {
                let mut t = BigInt::zero();
                for (k, yk) in y.iter().enumerate() {
                    if !yk.is_zero() {
                        t += yk * &self.v[k][i];
                    }
                }
                let d = &self.diag[i];
                if d.is_zero() {
                    t
                } else {
                    t.mod_floor(d)
                }
            })
            .collect()
    }

    /// A vector over the generators whose class has coordinate vector `e_i`.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let row = &self.v_inv[self.active[i]];
        let mut x = vec![BigInt::zero(); self.n];
        for (k, v) in row.iter().enumerate() {
            x[self.survivors[k]] = v.clone();
        }
        x
    }

    pub fn survivor_count(&self) -> usize {
        self.survivor_pos.iter().filter(|p| p.is_some()).count()
    }
}

/// Eliminates unit pivots, shortest rows first. Returns substitutions in
/// elimination order; `rows` keeps only the untouched remainder.
fn eliminate_units(
    n: usize,
    rows: &mut Vec<Option<Row>>,
    eliminated: &mut [bool],
) -> Vec<Substitution> {
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ri, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().unwrap() {
            col_rows[*c].push(ri);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
    for (ri, r) in rows.iter().enumerate() {
        let r = r.as_ref().unwrap();
        if r.iter().any(|e| is_unit(&e.1)) {
            heap.push(Reverse((r.len(), ri)));
        }
    }
    let mut subs = Vec::new();
    while let Some(Reverse((len, ri))) = heap.pop() {
        let Some(row) = rows[ri].as_ref() else {
            continue;
        };
        if row.len() != len {
            continue;
        }
        // unit entry whose column meets the fewest rows
        let mut best: Option<(usize, usize)> = None;
        for (k, (c, v)) in row.iter().enumerate() {
            if !is_unit(v) {
                continue;
            }
            let cnt = col_rows[*c].len();
            if best.map(|(_, bc)| cnt < bc).unwrap_or(true) {
                best = Some((k, cnt));
            }
        }
        let Some((k, _)) = best else { continue };
        let row = rows[ri].take().unwrap();
        let (pc, pu) = row[k].clone();
        // u e_c + rest = 0  =>  e_c = -u * rest
        let rest: Row = row
            .iter()
            .filter(|e| e.0 != pc)
            .map(|(c, v)| (*c, -(&pu * v)))
            .collect();
        let users = std::mem::take(&mut col_rows[pc]);
        let mut touched = HashSet::new();
        for oi in users {
            if oi == ri || !touched.insert(oi) {
                continue;
            }
            let Some(other) = rows[oi].as_ref() else {
                continue;
            };
            let Ok(pos) = other.binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let coeff = other[pos].1.clone();
            // other - coeff*u*row removes column pc
            let k = -(&coeff * &pu);
            let new = axpy(other, &k, &row);
            for (c, _) in &new {
                if other.binary_search_by_key(c, |e| e.0).is_err() {
                    col_rows[*c].push(oi);
                }
            }
            if new.is_empty() {
                rows[oi] = None;
            } else {
                if new.iter().any(|e| is_unit(&e.1)) {
                    heap.push(Reverse((new.len(), oi)));
                }
                rows[oi] = Some(new);
            }
        }
        eliminated[pc] = true;
        subs.push(Substitution { col: pc, rest });
        // stale entries for rows that no longer use a column are skipped by
        // the binary search above
        let _ = len;
    }
    subs
}

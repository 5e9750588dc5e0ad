//! Dense Smith normal form over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseIntMatrix;

pub type DenseMatrix = Vec<Vec<BigInt>>;

/// `U A V = D`. `diag` has `min(rows, cols)` entries, nonzero ones first,
/// forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<DenseMatrix>,
    pub v: Option<DenseMatrix>,
    /// Inverse of `v`, kept when `v` is.
    pub v_inv: Option<DenseMatrix>,
}

impl Snf {
    /// Nonzero invariants.
    pub fn invariants(&self) -> &[BigInt] {
        &self.diag[..self.rank]
    }
}

pub fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix, inner: usize, cols: usize) -> DenseMatrix {
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for k in 0..inner {
                if row[k].is_zero() {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    if !b[k][j].is_zero() {
                        *o += &row[k] * &b[k][j];
                    }
                }
            }
            out
        })
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(m: &DenseMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

struct Work {
    m: DenseMatrix,
    rows: usize,
    cols: usize,
    u: Option<DenseMatrix>,
    v: Option<DenseMatrix>,
    v_inv: Option<DenseMatrix>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.m {
            r.swap(a, b);
        }
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                r.swap(a, b);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(a, b);
        }
    }

    /// row_dst += q * row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        fn apply(m: &mut DenseMatrix, dst: usize, src: usize, q: &BigInt) {
            let (s, d) = if src < dst {
                let (lo, hi) = m.split_at_mut(dst);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = m.split_at_mut(src);
                (&hi[0], &mut lo[dst])
            };
            for (x, y) in d.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
        apply(&mut self.m, dst, src, q);
        if let Some(u) = &mut self.u {
            apply(u, dst, src, q);
        }
    }

    /// col_dst += q * col_src
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in &mut self.m {
            if !r[src].is_zero() {
                let t = q * &r[src];
                r[dst] += t;
            }
        }
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                if !r[src].is_zero() {
                    let t = q * &r[src];
                    r[dst] += t;
                }
            }
        }
        // V' = V (I + q E_{src,dst}), so V'^{-1} = (I - q E_{src,dst}) V^{-1}
        if let Some(vi) = &mut self.v_inv {
            let (s, d) = if src < dst {
                let (lo, hi) = vi.split_at_mut(dst);
                (&mut lo[src], &hi[0])
            } else {
                let (lo, hi) = vi.split_at_mut(src);
                (&mut hi[0], &lo[dst])
            };
            for (x, y) in s.iter_mut().zip(d.iter()) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.m[r] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[r] {
                *x = -&*x;
            }
        }
    }

    /// Nonzero entry of least absolute value in the trailing block; ties
    /// go to the lowest row, then the lowest column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.m[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.m[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
                if x.is_one() || (-x).is_one() {
                    return best;
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.m[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.m[i][t].is_zero() {
                        continue;
                    }
                    let q = self.m[i][t].div_floor(&p);
                    self.add_row(i, t, &-q);
                    if !self.m[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.m[t][j].is_zero() {
                        continue;
                    }
                    let q = self.m[t][j].div_floor(&p);
                    self.add_col(j, t, &-q);
                    if !self.m[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder appeared in the pivot row or column
                    let (bi, bj) = self.pivot_in_cross(t);
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                // divisibility of the trailing block
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.m[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        self.add_row(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if self.m[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    /// Least nonzero entry in row t / column t.
    fn pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut bv: Option<BigInt> = None;
        let mut consider = |i: usize, j: usize, x: &BigInt| {
            if x.is_zero() {
                return;
            }
            let a = x.abs();
            if bv.as_ref().map(|b| a < *b).unwrap_or(true) {
                bv = Some(a);
                best = (i, j);
            }
        };
        for i in t..self.rows {
            consider(i, t, &self.m[i][t]);
        }
        for j in t + 1..self.cols {
            consider(t, j, &self.m[t][j]);
        }
        best
    }
}

/// Smith normal form of a dense `rows x cols` matrix; `transforms` requests
/// `U`, `V` and `V^{-1}`. When transforms are computed, `U A V = D` is
/// verified before returning.
pub fn snf_dense(a: &DenseMatrix, rows: usize, cols: usize, transforms: bool) -> Snf {
    snf_dense_with(a, rows, cols, transforms, transforms)
}

pub fn snf_dense_with(
    a: &DenseMatrix,
    rows: usize,
    cols: usize,
    want_u: bool,
    want_v: bool,
) -> Snf {
    let mut w = Work {
        m: a.clone(),
        rows,
        cols,
        u: want_u.then(|| identity(rows)),
        v: want_v.then(|| identity(cols)),
        v_inv: want_v.then(|| identity(cols)),
    };
    let rank = w.run();
    let n = rows.min(cols);
    let diag: Vec<BigInt> = (0..n).map(|i| w.m[i][i].clone()).collect();
    if let (Some(u), Some(v)) = (&w.u, &w.v) {
        let uav = mat_mul(&mat_mul(u, a, rows, cols), v, cols, cols);
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j {
                    diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*x, expect, "U A V differs from D at ({i},{j})");
            }
        }
    }
    Snf {
        diag,
        rank,
        u: w.u,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Smith normal form of a sparse matrix.
pub fn smith_normal_form(a: &SparseIntMatrix, transforms: bool) -> Snf {
    snf_dense(&a.to_dense(), a.rows(), a.cols(), transforms)
}

/// Rows `w` with `w B = 0`, as a basis of the left kernel.
pub fn left_kernel(b: &DenseMatrix, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let s = snf_dense_with(b, rows, cols, true, false);
    let u = s.u.expect("requested");
    u.into_iter().skip(s.rank).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[Vec<i64>]) -> DenseMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn invariants(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
        let s = snf_dense(&big(rows), rows.len(), cols, true);
        s.invariants()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn diag_2_3() {
        assert_eq!(invariants(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
    }

    #[test]
    fn upper_triangular() {
        assert_eq!(invariants(&[vec![2, 4], vec![0, 4]], 2), vec![2, 4]);
    }

    #[test]
    fn zero_matrix() {
        let s = snf_dense(&big(&[vec![0, 0, 0], vec![0, 0, 0]]), 2, 3, true);
        assert_eq!(s.rank, 0);
        assert!(s.invariants().is_empty());
    }

    #[test]
    fn empty_shapes() {
        let s = snf_dense(&Vec::new(), 0, 3, true);
        assert_eq!(s.rank, 0);
        let s = snf_dense(&vec![vec![]; 2], 2, 0, true);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(
            determinant(&big(&[vec![2, 1], vec![1, 1]])),
            BigInt::from(1)
        );
        assert_eq!(
            determinant(&big(&[vec![0, 1], vec![1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&big(&[vec![1, 2], vec![2, 4]])),
            BigInt::from(0)
        );
    }

    #[test]
    fn v_inverse_is_inverse() {
        let a = big(&[vec![4, 6, 2], vec![6, 9, 12], vec![2, 0, 8]]);
        let s = snf_dense(&a, 3, 3, true);
        let p = mat_mul(s.v.as_ref().unwrap(), s.v_inv.as_ref().unwrap(), 3, 3);
        assert_eq!(p, identity(3));
    }

    #[test]
    fn left_kernel_annihilates() {
        let b = big(&[vec![1, 2], vec![2, 4], vec![3, 5]]);
        let k = left_kernel(&b, 3, 2);
        assert_eq!(k.len(), 1);
        let prod = mat_mul(&k, &b, 3, 2);
        assert!(prod[0].iter().all(|x| x.is_zero()));
    }

    /// Invariants from gcds of k x k minors.
    fn minor_oracle(a: &[Vec<i64>]) -> Vec<i64> {
        use itertools_free::combinations;
        let rows = a.len();
        let cols = a[0].len();
        let mut out = Vec::new();
        let mut prev = 1i64;
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for rs in combinations(rows, k) {
                for cs in combinations(cols, k) {
                    let m: DenseMatrix = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| BigInt::from(a[i][j])).collect())
                        .collect();
                    g = g.gcd(&determinant(&m));
                }
            }
            if g.is_zero() {
                break;
            }
            let g = i64::try_from(&g).unwrap();
            out.push(g / prev);
            prev = g;
        }
        out
    }

    mod itertools_free {
        pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(
                start: usize,
                n: usize,
                k: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut out);
            out
        }
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..13, c), r))
    }

    proptest! {
        #[test]
        fn transforms_are_unimodular(a in arb_matrix()) {
            let r = a.len();
            let c = a[0].len();
            let s = snf_dense(&big(&a), r, c, true);
            prop_assert_eq!(determinant(s.u.as_ref().unwrap()).abs(), BigInt::one());
            prop_assert_eq!(determinant(s.v.as_ref().unwrap()).abs(), BigInt::one());
            for w in s.invariants().windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert_eq!(s.rank, s.diag.iter().filter(|x| !x.is_zero()).count());
        }

        #[test]
        fn matches_minor_gcds(a in arb_matrix()) {
            let c = a[0].len();
            prop_assert_eq!(invariants(&a, c), minor_oracle(&a));
        }

        #[test]
        fn transpose_invariance(a in arb_matrix()) {
            let r = a.len();
            let c = a[0].len();
            let t: Vec<Vec<i64>> = (0..c).map(|j| (0..r).map(|i| a[i][j]).collect()).collect();
            prop_assert_eq!(invariants(&a, c), invariants(&t, r));
        }
    }
}

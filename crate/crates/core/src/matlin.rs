//! Dense matrices over a [`Field`], exact echelon forms, maximal minors and
//! r-subset indexing.

use std::fmt;

use crate::galois::{Elem, ExtField, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::echelonize`].
#[derive(Clone, Debug)]
pub struct EchelonResult {
    pub rank: usize,
    pub rref: Matrix,
    pub pivots: Vec<usize>,
    /// Right-kernel basis: one vector per free column.
    pub kernel: Vec<Vec<Elem>>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    /// The same integer codes read in another field (F_q into F_{q^m}).
    pub fn embed(&self, f: &Field) -> Matrix {
        Matrix::from_vec(f, self.rows, self.cols, self.data.clone())
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a != 0 {
                    let neg = f.neg(a);
                    let (src, dst) = (other.row(l).to_vec(), out.row_mut(i));
                    f.sub_scaled(dst, &src, neg);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a != 0 {
                f.sub_scaled(&mut out, self.row(i), f.neg(a));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place reduced row echelon form, pivoting only in columns `< limit`.
    /// Returns the pivot columns.
    pub fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        if self.field.order() == 2 {
            return self.rref_gf2(limit);
        }
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(cols) {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for x in self.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            let pivot_row = self.row(r)[c..].to_vec();
            for i in 0..rows {
                if i != r {
                    let factor = self.get(i, c);
                    if factor != 0 {
                        f.sub_scaled(&mut self.row_mut(i)[c..], &pivot_row, factor);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn rref_gf2(&mut self, limit: usize) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let words = cols.div_ceil(64);
        let mut bits = vec![0u64; rows * words];
        for i in 0..rows {
            for j in 0..cols {
                if self.get(i, j) != 0 {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(cols) {
            if r == rows {
                break;
            }
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (r..rows).find(|&i| bits[i * words + w] & b != 0) else { continue };
            if p != r {
                for x in 0..words {
                    bits.swap(p * words + x, r * words + x);
                }
            }
            let pivot_row = bits[r * words..(r + 1) * words].to_vec();
            for i in 0..rows {
                if i != r && bits[i * words + w] & b != 0 {
                    for x in w..words {
                        bits[i * words + x] ^= pivot_row[x];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        for i in 0..rows {
            for j in 0..cols {
                self.data[i * cols + j] = ((bits[i * words + j / 64] >> (j % 64)) & 1) as Elem;
            }
        }
        pivots
    }

    /// Generic-path RREF; the F_2 packed path must agree with it.
    #[doc(hidden)]
    pub fn rref_generic(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| m.get(i, c) != 0) else { continue };
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
            let inv = f.inv(m.get(r, c));
            for x in m.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m.row(r).to_vec();
            for i in (0..rows).filter(|&i| i != r) {
                let factor = m.get(i, c);
                f.sub_scaled(m.row_mut(i), &pivot_row, factor);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn echelonize(&self) -> EchelonResult {
        let mut rref = self.clone();
        let pivots = rref.rref_in_place(self.cols);
        let kernel = kernel_from_rref(&rref, &pivots);
        EchelonResult { rank: pivots.len(), rref, pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place(self.cols).len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(&self.field, n));
        let pivots = aug.rref_in_place(n);
        (pivots.len() == n).then(|| aug.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn determinant(&self) -> Elem {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else { return 0 };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            let pivot_row = m.row(c).to_vec();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                f.sub_scaled(m.row_mut(i), &pivot_row, factor);
            }
        }
        det
    }

    /// Some solution z of z·A = b, if one exists.
    pub fn solve_left(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        self.transpose().solve_right(b)
    }

    /// Some solution z of A·z = b, if one exists.
    pub fn solve_right(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let col = Matrix::from_vec(&self.field, self.rows, 1, b.to_vec());
        let mut aug = self.hstack(&col);
        let pivots = aug.rref_in_place(self.cols);
        let r = pivots.len();
        if (r..self.rows).any(|i| aug.get(i, self.cols) != 0) {
            return None;
        }
        let mut z = vec![0; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            z[p] = aug.get(i, self.cols);
        }
        Some(z)
    }
}

fn kernel_from_rref(rref: &Matrix, pivots: &[usize]) -> Vec<Vec<Elem>> {
    let f = rref.field();
    let mut is_pivot = vec![false; rref.cols()];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..rref.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; rref.cols()];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(rref.get(i, free));
            }
            v
        })
        .collect()
}

/// Binomial coefficient as u64 (saturating); zero when k > n.
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Ranking of r-subsets of {0,…,n−1}. Subsets are sorted tuples compared at
/// their first differing position; a larger index means a larger c_T.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetIndex {
    pub n: usize,
    pub r: usize,
}

impl SubsetIndex {
    pub fn new(n: usize, r: usize) -> SubsetIndex {
        SubsetIndex { n, r }
    }

    pub fn count(&self) -> usize {
        binom(self.n, self.r) as usize
    }

    /// Index of a strictly increasing subset; `None` when malformed.
    pub fn rank(&self, t: &[usize]) -> Option<usize> {
        if t.len() != self.r || t.windows(2).any(|w| w[0] >= w[1]) || t.last().is_some_and(|&x| x >= self.n) {
            return None;
        }
        let tail: u64 = t.iter().enumerate().map(|(i, &ti)| binom(self.n - 1 - ti, self.r - i)).sum();
        Some((binom(self.n, self.r) - 1 - tail) as usize)
    }

    pub fn unrank(&self, idx: usize) -> Option<Vec<usize>> {
        let total = self.count();
        if idx >= total {
            return None;
        }
        let mut rest = (total - 1 - idx) as u64;
        let mut out = Vec::with_capacity(self.r);
        let mut start = 0;
        for i in 0..self.r {
            let need = self.r - i;
            // largest complement index first: smallest t with C(n−1−t, need) ≤ rest
            let t = (start..self.n).find(|&t| binom(self.n - 1 - t, need) <= rest).unwrap();
            rest -= binom(self.n - 1 - t, need);
            out.push(t);
            start = t + 1;
        }
        Some(out)
    }

    /// All subsets in increasing index order.
    pub fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.count());
        let mut cur: Vec<usize> = (0..self.r).collect();
        if self.r > self.n {
            return out;
        }
        loop {
            out.push(cur.clone());
            let Some(i) = (0..self.r).rev().find(|&i| cur[i] < self.n - self.r + i) else { break };
            cur[i] += 1;
            for j in i + 1..self.r {
                cur[j] = cur[j - 1] + 1;
            }
        }
        out
    }
}

/// All r×r minors det(M_{*,T}) of an r×n matrix, in [`SubsetIndex`] order.
pub fn maximal_minors(m: &Matrix) -> Vec<Elem> {
    let (r, n) = (m.rows(), m.cols());
    assert!(r <= n, "more rows than columns");
    if r <= 6 {
        minors_laplace(m)
    } else {
        SubsetIndex::new(n, r).all().iter().map(|t| m.select_cols(t).determinant()).collect()
    }
}

/// Expansion along the last row with memoized minors of the leading rows.
fn minors_laplace(m: &Matrix) -> Vec<Elem> {
    let f = m.field();
    let (r, n) = (m.rows(), m.cols());
    if r == 0 {
        return vec![1];
    }
    let mut prev: Vec<Elem> = m.row(0).to_vec();
    for i in 1..r {
        let lower = SubsetIndex::new(n, i);
        let upper = SubsetIndex::new(n, i + 1);
        prev = upper
            .all()
            .iter()
            .map(|s| {
                let mut acc = 0;
                let mut rest: Vec<usize> = s[1..].to_vec();
                for j in 0..=i {
                    if j > 0 {
                        rest[j - 1] = s[j - 1];
                    }
                    let v = f.mul(m.get(i, s[j]), prev[lower.rank(&rest).unwrap()]);
                    acc = if (i + j) % 2 == 0 { f.add(acc, v) } else { f.sub(acc, v) };
                }
                acc
            })
            .collect();
    }
    prev
}

/// Mat(x): m×n matrix over F_q whose column j holds the coordinates of x_j.
pub fn mat_of(ext: &ExtField, x: &[Elem]) -> Matrix {
    let m = ext.m();
    let mut out = Matrix::zeros(ext.base(), m, x.len());
    for (j, &xj) in x.iter().enumerate() {
        for (i, c) in ext.field().coords(xj).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

pub fn vec_of(ext: &ExtField, mat: &Matrix) -> Vec<Elem> {
    (0..mat.cols()).map(|j| ext.field().from_coords(&mat.col(j))).collect()
}

/// Rank weight |x|_rk = rank(Mat(x)).
pub fn rank_weight(ext: &ExtField, x: &[Elem]) -> usize {
    mat_of(ext, x).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_ext_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Field {
        Field::gf(2).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let e = Matrix::identity(&f2(), 3).echelonize();
        assert_eq!(e.rank, 3);
        assert!(e.kernel.is_empty());
        let z = Matrix::zeros(&f2(), 2, 4).echelonize();
        assert_eq!(z.rank, 0);
        assert_eq!(z.kernel.len(), 4);
    }

    #[test]
    fn small_gf2_kernel() {
        let m = Matrix::from_rows(&f2(), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3);
        let e = m.echelonize();
        assert_eq!(e.rank, 2);
        assert_eq!(e.kernel, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn packed_path_matches_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let (r, c) = (rng.gen_range(1..20), rng.gen_range(1..150));
            let data = (0..r * c).map(|_| rng.gen_range(0..2)).collect();
            let m = Matrix::from_vec(&f2(), r, c, data);
            let e = m.echelonize();
            let (g, p) = m.rref_generic();
            assert_eq!(e.rref, g);
            assert_eq!(e.pivots, p);
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = Field::gf(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let data = (0..5 * 9).map(|_| f.random(&mut rng)).collect();
        let m = Matrix::from_vec(&f, 5, 9, data);
        let e = m.echelonize();
        assert_eq!(e.kernel.len(), 9 - e.rank);
        for v in &e.kernel {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subset_order() {
        let s = SubsetIndex::new(3, 2);
        assert_eq!(s.all(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(s.rank(&[1, 2]) > s.rank(&[0, 2]));
        assert!(s.rank(&[0, 2]) > s.rank(&[0, 1]));
        let s = SubsetIndex::new(6, 3);
        for (i, t) in s.all().iter().enumerate() {
            assert_eq!(s.rank(t), Some(i));
            assert_eq!(s.unrank(i).as_ref(), Some(t));
        }
        assert_eq!(SubsetIndex::new(4, 4).all(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(s.rank(&[2, 1, 0]), None);
    }

    #[test]
    fn minors_of_identity_block() {
        let f = f2();
        let mut m = Matrix::zeros(&f, 2, 4);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        assert_eq!(maximal_minors(&m), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn laplace_matches_gaussian() {
        let f = Field::gf(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for r in 1..=4 {
            let data = (0..r * 7).map(|_| f.random(&mut rng)).collect();
            let m = Matrix::from_vec(&f, r, 7, data);
            let direct: Vec<_> = SubsetIndex::new(7, r).all().iter().map(|t| m.select_cols(t).determinant()).collect();
            assert_eq!(maximal_minors(&m), direct);
        }
    }

    #[test]
    fn mat_of_round_trip() {
        let e = make_ext_field(2, 3).unwrap();
        let x = vec![1, 5, 6, 3, 0];
        assert_eq!(vec_of(&e, &mat_of(&e, &x)), x);
        assert_eq!(rank_weight(&e, &[0, 0]), 0);
        assert_eq!(rank_weight(&e, &[1, 1, 0]), 1);
    }
}

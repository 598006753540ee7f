//! RD and MinRank instances: sampling, systematic forms, shortening,
//! puncturing and the RD → MinRank map. Every transformation keeps enough
//! bookkeeping to carry a planted witness across and to lift solutions back.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::galois::{make_ext_field, Elem, ExtField, Field, GaloisError};
use crate::matlin::{mat_of, rank_weight, Matrix, SubsetIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error("matrix is not of full rank")]
    NotFullRank,
    #[error("received word lies in the code")]
    YInCode,
}

/// Planted RD solution: y = x·G + e with e = (s_1..s_r)·C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdWitness {
    pub x: Vec<Elem>,
    pub support: Vec<Elem>,
    /// r×n over F_q.
    pub c: Matrix,
    pub e: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct RdInstance {
    pub ext: ExtField,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// k×n generator over F_{q^m}.
    pub g: Matrix,
    pub y: Vec<Elem>,
    pub witness: Option<RdWitness>,
}

impl RdInstance {
    pub fn m(&self) -> usize {
        self.ext.m()
    }

    /// Checks y − e ∈ C and |e|_rk ≤ bound.
    pub fn is_solution(&self, e: &[Elem], bound: usize) -> bool {
        let f = self.ext.field();
        let c: Vec<Elem> = self.y.iter().zip(e).map(|(&a, &b)| f.sub(a, b)).collect();
        rank_weight(&self.ext, e) <= bound && self.g.solve_left(&c).is_some()
    }
}

pub(crate) fn random_matrix<R: Rng>(f: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_vec(f, rows, cols, (0..rows * cols).map(|_| f.random(rng)).collect())
}

pub(crate) fn random_full_rank<R: Rng>(f: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(f, rows, cols, rng);
        if m.rank() == rows.min(cols) {
            return m;
        }
    }
}

/// Samples a planted RD instance with an error of rank weight exactly r.
pub fn gen_rd(q: u64, m: usize, n: usize, k: usize, r: usize, seed: u64) -> Result<RdInstance, InstanceError> {
    if k == 0 || k >= n {
        return Err(InstanceError::BadParams(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    if r > m.min(n) {
        return Err(InstanceError::BadParams(format!("r={r} exceeds min(m, n)")));
    }
    let ext = make_ext_field(q, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = ext.field().clone();
    let g = random_full_rank(&f, k, n, &mut rng);
    let x: Vec<Elem> = (0..k).map(|_| f.random(&mut rng)).collect();
    let support = loop {
        let s: Vec<Elem> = (0..r).map(|_| f.random(&mut rng)).collect();
        if rank_weight(&ext, &s) == r {
            break s;
        }
    };
    let c = random_full_rank(ext.base(), r, n, &mut rng);
    let e = Matrix::from_vec(&f, 1, r, support.clone()).mul(&c).row(0).to_vec();
    let cw = g.left_mul_vec(&x);
    let y = cw.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
    Ok(RdInstance { ext, n, k, r, g, y, witness: Some(RdWitness { x, support, c, e }) })
}

/// Every w-dimensional subspace of F_q^n, as its w×n reduced echelon basis.
pub fn base_subspaces(f: &Field, n: usize, w: usize) -> Vec<Matrix> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    for pivots in SubsetIndex::new(n, w).all() {
        // free slots: (row i, column j) with j > pivot_i and j not a pivot
        let free: Vec<(usize, usize)> = (0..w)
            .flat_map(|i| ((pivots[i] + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let total = q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = Matrix::zeros(f, w, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for &(i, j) in &free {
                m.set(i, j, (code % q) as Elem);
                code /= q;
            }
            out.push(m);
        }
    }
    out
}

/// Number of rank-weight-r decodings of y, counted by exhaustive search over
/// row spaces; `None` when some row space admits a whole family of them or
/// a decoding of smaller weight exists.
pub fn count_decodings(rd: &RdInstance) -> Option<usize> {
    let f = rd.ext.field();
    let in_code = rd.g.solve_left(&rd.y).is_some();
    if rd.r == 0 || in_code {
        return (rd.r == 0 && in_code).then_some(1);
    }
    for w in 1..rd.r {
        if base_subspaces(rd.ext.base(), rd.n, w).iter().any(|v| rd.g.vstack(&v.embed(f)).solve_left(&rd.y).is_some()) {
            return None;
        }
    }
    let mut count = 0;
    for v in base_subspaces(rd.ext.base(), rd.n, rd.r) {
        let a = rd.g.vstack(&v.embed(f));
        if a.solve_left(&rd.y).is_some() {
            if a.rank() < rd.k + rd.r {
                return None;
            }
            count += 1;
        }
    }
    Some(count)
}

/// Like `gen_rd`, but resamples until the planted error is the only decoding
/// of weight ≤ r. Exhaustive, so only for desk-scale parameters.
pub fn gen_rd_unique(q: u64, m: usize, n: usize, k: usize, r: usize, seed: u64) -> Result<RdInstance, InstanceError> {
    for attempt in 0u64.. {
        let rd = gen_rd(q, m, n, k, r, seed ^ attempt.rotate_right(16))?;
        if count_decodings(&rd) == Some(1) {
            return Ok(rd);
        }
    }
    unreachable!()
}

/// RD instance in the systematic shape G = (I_k | *), y = (0_k, 1, *), together
/// with H_y = (* | I_{n−k−1}) spanning (C + ⟨y⟩)^⊥ and h = (*, 1, 0) ∈ C^⊥.
#[derive(Clone, Debug)]
pub struct CanonicalRd {
    pub inst: RdInstance,
    pub hy: Matrix,
    pub h: Vec<Elem>,
    /// Canonical position i holds original position `perm[i]`.
    pub perm: Vec<usize>,
    /// Codeword subtracted from y, in original coordinates.
    pub offset: Vec<Elem>,
    /// y_canonical = scale · (y − offset), permuted.
    pub scale: Elem,
}

impl CanonicalRd {
    /// Maps an error of the canonical instance back to original coordinates.
    pub fn lift_error(&self, e: &[Elem]) -> Vec<Elem> {
        let f = self.inst.ext.field();
        let inv = f.inv(self.scale);
        let mut out = vec![0; e.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = f.mul(inv, e[i]);
        }
        out
    }

    /// Stacked parity-check matrix H = (H_y ; h) of the code.
    pub fn full_parity_check(&self) -> Matrix {
        let f = self.inst.ext.field();
        self.hy.vstack(&Matrix::from_vec(f, 1, self.inst.n, self.h.clone()))
    }
}

pub fn canonicalize(rd: &RdInstance) -> Result<CanonicalRd, InstanceError> {
    canonicalize_in_order(rd, &(0..rd.n).collect::<Vec<_>>())
}

/// Canonical form after a seeded shuffle of the columns scanned for pivots.
pub fn canonicalize_shuffled(rd: &RdInstance, seed: u64) -> Result<CanonicalRd, InstanceError> {
    use rand::seq::SliceRandom;
    let mut order: Vec<usize> = (0..rd.n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    canonicalize_in_order(rd, &order)
}

fn canonicalize_in_order(rd: &RdInstance, order: &[usize]) -> Result<CanonicalRd, InstanceError> {
    let f = rd.ext.field().clone();
    let (n, k) = (rd.n, rd.k);
    let mut rr = rd.g.select_cols(order);
    let pivots = rr.rref_in_place(n);
    if pivots.len() < k {
        return Err(InstanceError::NotFullRank);
    }
    let mut y: Vec<Elem> = order.iter().map(|&i| rd.y[i]).collect();
    let mut offset_o = vec![0; n];
    for (j, &p) in pivots.iter().enumerate() {
        let c = y[p];
        f.sub_scaled(&mut y, rr.row(j), c);
        f.sub_scaled(&mut offset_o, rr.row(j), f.neg(c));
    }
    let t = (0..n).find(|&i| !pivots.contains(&i) && y[i] != 0).ok_or(InstanceError::YInCode)?;
    let scale = f.inv(y[t]);
    let mut newpos = pivots.clone();
    newpos.push(t);
    newpos.extend((0..n).filter(|i| !pivots.contains(i) && *i != t));
    let perm: Vec<usize> = newpos.iter().map(|&i| order[i]).collect();
    let g = rr.select_cols(&newpos);
    let yc: Vec<Elem> = newpos.iter().map(|&i| f.mul(scale, y[i])).collect();
    let mut offset = vec![0; n];
    for (i, &o) in order.iter().enumerate() {
        offset[o] = offset_o[i];
    }

    // generator (I_{k+1} | A') of C + <y>
    let mut gy = g.vstack(&Matrix::from_vec(&f, 1, n, yc.clone()));
    for j in 0..k {
        let c = gy.get(j, k);
        let yrow = yc.clone();
        f.sub_scaled(gy.row_mut(j), &yrow, c);
    }
    let mut hy = Matrix::zeros(&f, n - k - 1, n);
    for i in 0..n - k - 1 {
        for j in 0..=k {
            hy.set(i, j, f.neg(gy.get(j, k + 1 + i)));
        }
        hy.set(i, k + 1 + i, 1);
    }
    let mut h = vec![0; n];
    for (j, hj) in h.iter_mut().enumerate().take(k) {
        *hj = f.neg(g.get(j, k));
    }
    h[k] = 1;

    let witness = rd.witness.as_ref().map(|w| {
        let e: Vec<Elem> = perm.iter().map(|&p| f.mul(scale, w.e[p])).collect();
        let x = (0..k).map(|i| f.sub(yc[i], e[i])).collect();
        let support = w.support.iter().map(|&s| f.mul(scale, s)).collect();
        RdWitness { x, support, c: w.c.select_cols(&perm), e }
    });
    let inst = RdInstance { ext: rd.ext.clone(), n, k, r: rd.r, g, y: yc, witness };
    Ok(CanonicalRd { inst, hy, h, perm, offset, scale })
}

/// D·G = (G′ 0 ; B I_a) with columns ordered (J̌ ascending, then J as given).
#[derive(Clone, Debug)]
pub struct ShortenBlocks {
    pub g_prime: Matrix,
    pub b: Matrix,
    pub d: Matrix,
}

#[derive(Clone, Debug)]
pub struct ShortenResult {
    pub dim: usize,
    /// Generator of sh_J(C) on the positions `complement`.
    pub generator: Matrix,
    pub complement: Vec<usize>,
    /// Present only when dim = k − |J|.
    pub blocks: Option<ShortenBlocks>,
}

/// Shortens the code generated by `g` on the position set `j`.
pub fn shorten(g: &Matrix, j: &[usize]) -> ShortenResult {
    let f = g.field();
    let (k, n, a) = (g.rows(), g.cols(), j.len());
    let complement: Vec<usize> = (0..n).filter(|i| !j.contains(i)).collect();
    let mut cols = j.to_vec();
    cols.extend(&complement);
    let mut aug = g.select_cols(&cols).hstack(&Matrix::identity(f, k));
    let rho = aug.rref_in_place(a).len();
    let short_rows: Vec<usize> = (rho..k).collect();
    let comp_cols: Vec<usize> = (a..n).collect();
    let generator = aug.select_rows(&short_rows).select_cols(&comp_cols);
    let blocks = (rho == a).then(|| {
        let head: Vec<usize> = (0..a).collect();
        let mut order = short_rows.clone();
        order.extend(&head);
        ShortenBlocks {
            g_prime: generator.clone(),
            b: aug.select_rows(&head).select_cols(&comp_cols),
            d: aug.select_rows(&order).select_cols(&(n..n + k).collect::<Vec<_>>()),
        }
    });
    ShortenResult { dim: k - rho, generator, complement, blocks }
}

/// Drops the last p positions.
pub fn puncture_rd(rd: &RdInstance, p: usize) -> Result<RdInstance, InstanceError> {
    if p >= rd.n - rd.k {
        return Err(InstanceError::BadParams(format!("puncturing {p} of n−k = {}", rd.n - rd.k)));
    }
    let keep: Vec<usize> = (0..rd.n - p).collect();
    let g = rd.g.select_cols(&keep);
    if g.rank() < rd.k {
        return Err(InstanceError::NotFullRank);
    }
    let witness = rd.witness.as_ref().and_then(|w| {
        let e = w.e[..rd.n - p].to_vec();
        (rank_weight(&rd.ext, &e) == rd.r).then(|| RdWitness {
            x: w.x.clone(),
            support: w.support.clone(),
            c: w.c.select_cols(&keep),
            e,
        })
    });
    Ok(RdInstance { n: rd.n - p, g, y: rd.y[..rd.n - p].to_vec(), witness, ..rd.clone() })
}

#[derive(Clone, Debug)]
pub struct MinRankInstance {
    pub field: Field,
    pub m: usize,
    pub n: usize,
    pub big_k: usize,
    pub r: usize,
    /// M_0, M_1, …, M_K, each m×n.
    pub matrices: Vec<Matrix>,
    pub witness: Option<Vec<Elem>>,
}

impl MinRankInstance {
    /// E = M_0 + Σ x_i M_i.
    pub fn eval(&self, x: &[Elem]) -> Matrix {
        assert_eq!(x.len(), self.big_k);
        x.iter().zip(&self.matrices[1..]).fold(self.matrices[0].clone(), |acc, (&xi, mi)| acc.add(&mi.scale(xi)))
    }

    pub fn is_solution(&self, x: &[Elem]) -> bool {
        x.len() == self.big_k && self.eval(x).rank() <= self.r
    }

    /// K×mn matrix whose row i is φ(M_i).
    pub fn gen_matrix(&self) -> Matrix {
        let rows: Vec<Vec<Elem>> = self.matrices[1..].iter().map(phi).collect();
        Matrix::from_rows(&self.field, &rows, self.m * self.n)
    }
}

/// Column-major flattening: entry (i, j) goes to index j·m + i.
pub fn phi(a: &Matrix) -> Vec<Elem> {
    (0..a.cols()).flat_map(|j| a.col(j)).collect()
}

pub fn phi_inv(f: &Field, v: &[Elem], m: usize, n: usize) -> Matrix {
    assert_eq!(v.len(), m * n);
    let mut out = Matrix::zeros(f, m, n);
    for j in 0..n {
        for i in 0..m {
            out.set(i, j, v[j * m + i]);
        }
    }
    out
}

/// M_0 = Mat(y), M_{ℓ,j} = Mat(β_ℓ G_j) at index j·m + ℓ; the planted x is sent
/// to the coordinates of −x.
pub fn rd_to_minrank(rd: &RdInstance) -> MinRankInstance {
    let (ext, f, m) = (&rd.ext, rd.ext.field(), rd.m());
    let mut matrices = vec![mat_of(ext, &rd.y)];
    for j in 0..rd.k {
        for &beta in ext.basis() {
            let row: Vec<Elem> = rd.g.row(j).iter().map(|&g| f.mul(beta, g)).collect();
            matrices.push(mat_of(ext, &row));
        }
    }
    let witness = rd.witness.as_ref().map(|w| w.x.iter().flat_map(|&xj| f.coords(f.neg(xj))).collect());
    MinRankInstance { field: ext.base().clone(), m, n: rd.n, big_k: rd.k * m, r: rd.r, matrices, witness }
}

pub fn gen_minrank(q: u64, m: usize, n: usize, big_k: usize, r: usize, seed: u64) -> Result<MinRankInstance, InstanceError> {
    if big_k == 0 {
        return Err(InstanceError::BadParams("K must be at least 1".into()));
    }
    if r > m.min(n) {
        return Err(InstanceError::BadParams(format!("r={r} exceeds min(m, n)")));
    }
    let f = Field::gf(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats: Vec<Matrix> = (0..big_k).map(|_| random_matrix(&f, m, n, &mut rng)).collect();
    let x: Vec<Elem> = (0..big_k).map(|_| f.random(&mut rng)).collect();
    let e = random_full_rank(&f, m, r, &mut rng).mul(&random_full_rank(&f, r, n, &mut rng));
    let m0 = x.iter().zip(&mats).fold(e, |acc, (&xi, mi)| acc.add(&mi.scale(f.neg(xi))));
    let mut matrices = vec![m0];
    matrices.extend(mats);
    Ok(MinRankInstance { field: f, m, n, big_k, r, matrices, witness: Some(x) })
}

/// MinRank instance whose generator matrix L is in reduced echelon form with
/// pivot positions S, and φ(M_0) vanishing on S. New variables are
/// x_new = x·D⁻¹ + u, so that φ(E)_S = x_new.
#[derive(Clone, Debug)]
pub struct MinRankSystematic {
    pub inst: MinRankInstance,
    pub l: Matrix,
    pub positions: Vec<usize>,
    pub d: Matrix,
    pub u: Vec<Elem>,
}

impl MinRankSystematic {
    /// Original variables from systematic ones: x = (x_new − u)·D.
    pub fn lift(&self, x_new: &[Elem]) -> Vec<Elem> {
        let f = &self.inst.field;
        let diff: Vec<Elem> = x_new.iter().zip(&self.u).map(|(&a, &b)| f.sub(a, b)).collect();
        self.d.left_mul_vec(&diff)
    }
}

pub fn minrank_systematic(inst: &MinRankInstance) -> Result<MinRankSystematic, InstanceError> {
    let f = &inst.field;
    let (kk, mn) = (inst.big_k, inst.m * inst.n);
    let mut aug = inst.gen_matrix().hstack(&Matrix::identity(f, kk));
    let positions = aug.rref_in_place(mn);
    if positions.len() < kk {
        return Err(InstanceError::NotFullRank);
    }
    let l = aug.select_cols(&(0..mn).collect::<Vec<_>>());
    let d = aug.select_cols(&(mn..mn + kk).collect::<Vec<_>>());
    let mut m0 = phi(&inst.matrices[0]);
    let u: Vec<Elem> = positions.iter().map(|&s| m0[s]).collect();
    for (i, &ui) in u.iter().enumerate() {
        f.sub_scaled(&mut m0, l.row(i), ui);
    }
    let mut matrices = vec![phi_inv(f, &m0, inst.m, inst.n)];
    matrices.extend((0..kk).map(|i| phi_inv(f, l.row(i), inst.m, inst.n)));
    let witness = inst.witness.as_ref().map(|x| {
        let dinv = d.inverse().expect("transform is invertible");
        dinv.left_mul_vec(x).iter().zip(&u).map(|(&a, &b)| f.add(a, b)).collect()
    });
    let out = MinRankInstance { matrices, witness, ..inst.clone() };
    Ok(MinRankSystematic { inst: out, l, positions, d, u })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_rd_weight() {
        let rd = gen_rd(2, 7, 8, 4, 2, 1).unwrap();
        let w = rd.witness.as_ref().unwrap();
        assert_eq!(rank_weight(&rd.ext, &w.e), 2);
        assert_eq!(rank_weight(&rd.ext, &w.support), 2);
        assert!(rd.is_solution(&w.e, 2));
        assert!(gen_rd(2, 7, 8, 8, 2, 1).is_err());
    }

    #[test]
    fn canonical_shape() {
        for seed in 0..5 {
            let rd = gen_rd(2, 5, 8, 3, 2, seed).unwrap();
            let can = canonicalize(&rd).unwrap();
            let (c, f) = (&can.inst, rd.ext.field());
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(c.g.get(i, j), (i == j) as u32);
                }
            }
            assert_eq!(&c.y[..4], &[0, 0, 0, 1]);
            assert!(c.g.mul(&can.hy.transpose()).is_zero());
            assert!(can.hy.mul_vec(&c.y).iter().all(|&v| v == 0));
            let yh = c.y.iter().zip(&can.h).fold(0, |a, (&u, &v)| f.add(a, f.mul(u, v)));
            assert_eq!(yh, 1);
            assert!(c.g.mul_vec(&can.h).iter().all(|&v| v == 0));
            let w = c.witness.as_ref().unwrap();
            assert_eq!(rank_weight(&rd.ext, &w.e), 2);
            assert!(c.is_solution(&w.e, 2));
            assert_eq!(can.lift_error(&w.e), rd.witness.as_ref().unwrap().e);
        }
    }

    #[test]
    fn canonical_rejects_codeword() {
        let mut rd = gen_rd(2, 5, 6, 3, 1, 2).unwrap();
        rd.y = rd.g.row(0).to_vec();
        assert_eq!(canonicalize(&rd).unwrap_err(), InstanceError::YInCode);
    }

    #[test]
    fn shorten_block_shape() {
        let rd = gen_rd(2, 3, 10, 4, 1, 7).unwrap();
        let s = shorten(&rd.g, &[8, 9]);
        assert_eq!(s.dim, 2);
        let b = s.blocks.as_ref().unwrap();
        let mut cols = s.complement.clone();
        cols.extend([8, 9]);
        let dg = b.d.mul(&rd.g.select_cols(&cols));
        let right = dg.select_cols(&[8, 9]);
        assert!(right.select_rows(&[0, 1]).is_zero());
        assert_eq!(right.select_rows(&[2, 3]), Matrix::identity(rd.ext.field(), 2));
        assert_eq!(dg.select_rows(&[2, 3]).select_cols(&(0..8).collect::<Vec<_>>()), b.b);
        assert_eq!(shorten(&rd.g, &[]).generator.rank(), 4);
        assert_eq!(shorten(&rd.g, &(0..10).collect::<Vec<_>>()).dim, 0);
    }

    #[test]
    fn puncture_keeps_witness() {
        let rd = gen_rd(2, 7, 12, 5, 2, 3).unwrap();
        assert_eq!(puncture_rd(&rd, 0).unwrap().n, 12);
        let p = puncture_rd(&rd, 2).unwrap();
        assert_eq!(p.n, 10);
        if let Some(w) = &p.witness {
            assert!(p.is_solution(&w.e, 2));
        }
        assert!(puncture_rd(&rd, 7).is_err());
    }

    #[test]
    fn minrank_from_rd() {
        let rd = gen_rd(2, 7, 8, 4, 2, 1).unwrap();
        let mr = rd_to_minrank(&rd);
        assert_eq!(mr.big_k, 28);
        assert_eq!((mr.matrices[1].rows(), mr.matrices[1].cols()), (7, 8));
        let x = mr.witness.clone().unwrap();
        let e = mr.eval(&x);
        let w = rd.witness.as_ref().unwrap();
        let s = mat_of(&rd.ext, &w.support);
        assert_eq!(e, s.mul(&w.c));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn minrank_systematic_transport() {
        let mr = gen_minrank(2, 4, 5, 6, 2, 9).unwrap();
        assert_eq!(mr.eval(mr.witness.as_ref().unwrap()).rank(), 2);
        let l = mr.gen_matrix();
        for i in 0..6 {
            assert_eq!(l.row(i), phi(&mr.matrices[i + 1]).as_slice());
        }
        let sys = minrank_systematic(&mr).unwrap();
        let xn = sys.inst.witness.clone().unwrap();
        let e_new = sys.inst.eval(&xn);
        assert_eq!(e_new, mr.eval(mr.witness.as_ref().unwrap()));
        let pe = phi(&e_new);
        assert_eq!(sys.positions.iter().map(|&s| pe[s]).collect::<Vec<_>>(), xn);
        assert_eq!(&sys.lift(&xn), mr.witness.as_ref().unwrap());
        assert!(gen_minrank(2, 4, 5, 0, 2, 1).is_err());
    }

    #[test]
    fn subspace_enumeration_matches_gaussian_binomial() {
        let f = Field::gf(2).unwrap();
        // [8 choose 2]_2 = (2^8 − 1)(2^7 − 1) / ((2^2 − 1)(2 − 1))
        assert_eq!(base_subspaces(&f, 8, 2).len(), 255 * 127 / 3);
        let f3 = Field::gf(3).unwrap();
        // [4 choose 2]_3 = (3^4 − 1)(3^3 − 1) / ((3^2 − 1)(3 − 1))
        assert_eq!(base_subspaces(&f3, 4, 2).len(), 80 * 26 / 16);
    }

    #[test]
    fn unique_generator_yields_single_decoding() {
        for seed in 0..3 {
            let rd = gen_rd_unique(2, 7, 8, 4, 2, seed).unwrap();
            assert_eq!(count_decodings(&rd), Some(1));
            let w = rd.witness.as_ref().unwrap();
            assert!(rd.is_solution(&w.e, 2));
        }
    }
}

//! Hybrid reduction: right-multiply by an invertible P over F_q, bet that the
//! last a positions (RD) or columns (MinRank) of the solution vanish, and
//! solve the shortened instance of size n − a.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::galois::{Elem, Field};
use crate::instances::{phi, phi_inv, random_matrix, shorten, MinRankInstance, RdInstance, RdWitness};
use crate::matlin::{rank_weight, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HybridError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("shortened code has dimension {dim}, expected {expected}")]
    Infeasible { dim: usize, expected: usize },
    #[error("no guess led to a verified solution ({guesses} tried, {infeasible} infeasible)")]
    Exhausted { guesses: usize, infeasible: usize },
}

/// An invertible n×n matrix over F_q together with its inverse.
#[derive(Clone, Debug)]
pub struct ColumnTransform {
    pub p: Matrix,
    pub p_inv: Matrix,
}

impl ColumnTransform {
    pub fn identity(f: &Field, n: usize) -> ColumnTransform {
        ColumnTransform { p: Matrix::identity(f, n), p_inv: Matrix::identity(f, n) }
    }

    /// Apply P after `self`.
    pub fn then(&self, other: &ColumnTransform) -> ColumnTransform {
        ColumnTransform { p: self.p.mul(&other.p), p_inv: other.p_inv.mul(&self.p_inv) }
    }
}

/// Guess A ∈ F_q^{r×a} and the induced P_A: identity except that column
/// n − a + j receives −A_{*,j} on the first r rows.
#[derive(Clone, Debug)]
pub struct GuessMatrix {
    pub a: Matrix,
    pub transform: ColumnTransform,
}

pub fn guess_transform(f: &Field, n: usize, a: &Matrix) -> Matrix {
    let (r, w) = (a.rows(), a.cols());
    assert!(r + w <= n, "guess does not fit");
    let mut p = Matrix::identity(f, n);
    for i in 0..r {
        for j in 0..w {
            p.set(i, n - w + j, f.neg(a.get(i, j)));
        }
    }
    p
}

/// All q^{ar} guesses, ordered by the integer whose base-q digits are the
/// entries of A read row by row, least significant first.
pub fn enumerate_guesses(f: &Field, n: usize, r: usize, a: usize) -> impl Iterator<Item = GuessMatrix> + '_ {
    let q = f.order() as u64;
    let total = q.checked_pow((a * r) as u32).expect("guess space too large");
    (0..total).map(move |mut code| {
        let mut am = Matrix::zeros(f, r, a);
        for i in 0..r {
            for j in 0..a {
                am.set(i, j, (code % q) as Elem);
                code /= q;
            }
        }
        let neg = Matrix::from_vec(f, r, a, am.data().iter().map(|&v| f.neg(v)).collect());
        let transform = ColumnTransform { p: guess_transform(f, n, &am), p_inv: guess_transform(f, n, &neg) };
        GuessMatrix { a: am, transform }
    })
}

/// Uniform invertible n×n matrix over F_q.
pub fn random_invertible(f: &Field, n: usize, seed: u64) -> ColumnTransform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let p = random_matrix(f, n, n, &mut rng);
        if let Some(p_inv) = p.inverse() {
            return ColumnTransform { p, p_inv };
        }
    }
}

fn times_base(f: &Field, v: &[Elem], p: &Matrix) -> Vec<Elem> {
    p.embed(f).left_mul_vec(v)
}

/// The instance (G·P, y·P); the planted error becomes e·P.
pub fn transform_rd(rd: &RdInstance, t: &ColumnTransform) -> RdInstance {
    let f = rd.ext.field();
    let pe = t.p.embed(f);
    let witness = rd.witness.as_ref().map(|w| RdWitness {
        x: w.x.clone(),
        support: w.support.clone(),
        c: w.c.mul(&t.p),
        e: pe.left_mul_vec(&w.e),
    });
    RdInstance { g: rd.g.mul(&pe), y: pe.left_mul_vec(&rd.y), witness, ..rd.clone() }
}

/// The instance (M_0·P, …, M_K·P); solutions x are unchanged.
pub fn transform_minrank(inst: &MinRankInstance, t: &ColumnTransform) -> MinRankInstance {
    MinRankInstance { matrices: inst.matrices.iter().map(|m| m.mul(&t.p)).collect(), ..inst.clone() }
}

pub fn rerandomize_rd(rd: &RdInstance, seed: u64) -> (RdInstance, ColumnTransform) {
    let t = random_invertible(rd.ext.base(), rd.n, seed);
    (transform_rd(rd, &t), t)
}

pub fn rerandomize_minrank(inst: &MinRankInstance, seed: u64) -> (MinRankInstance, ColumnTransform) {
    let t = random_invertible(&inst.field, inst.n, seed);
    (transform_minrank(inst, &t), t)
}

/// First r positions of the planted error are F_q-independent.
pub fn assumption_holds_rd(rd: &RdInstance) -> Option<bool> {
    rd.witness.as_ref().map(|w| rank_weight(&rd.ext, &w.e[..rd.r]) == rd.r)
}

/// First r columns of the planted E are independent.
pub fn assumption_holds_minrank(inst: &MinRankInstance) -> Option<bool> {
    inst.witness.as_ref().map(|x| {
        let cols: Vec<usize> = (0..inst.r).collect();
        inst.eval(x).select_cols(&cols).rank() == inst.r
    })
}

/// RD instance of parameters (m, n − a, k − a, r) from the shortened code.
#[derive(Clone, Debug)]
pub struct ReducedRd {
    pub inst: RdInstance,
    pub transform: ColumnTransform,
    pub a: usize,
}

impl ReducedRd {
    /// Error of the instance this was reduced from: (e′, 0_a)·P⁻¹.
    pub fn lift(&self, e_small: &[Elem]) -> Vec<Elem> {
        let f = self.inst.ext.field();
        let mut e = e_small.to_vec();
        e.resize(e_small.len() + self.a, 0);
        times_base(f, &e, &self.transform.p_inv)
    }
}

/// Transforms by P, shortens at the last a positions and sets
/// y′ = y″_J̌ − y″_J·B with y″ = y·P.
pub fn reduce_rd(rd: &RdInstance, t: &ColumnTransform, a: usize) -> Result<ReducedRd, HybridError> {
    if a > rd.k {
        return Err(HybridError::BadParams(format!("a={a} exceeds k={}", rd.k)));
    }
    let f = rd.ext.field();
    let moved = transform_rd(rd, t);
    let n2 = rd.n - a;
    let j: Vec<usize> = (n2..rd.n).collect();
    let sh = shorten(&moved.g, &j);
    let Some(blocks) = sh.blocks else {
        return Err(HybridError::Infeasible { dim: sh.dim, expected: rd.k - a });
    };
    let yj = &moved.y[n2..];
    let shift = blocks.b.left_mul_vec(yj);
    let y: Vec<Elem> = moved.y[..n2].iter().zip(&shift).map(|(&u, &v)| f.sub(u, v)).collect();
    let witness = moved.witness.as_ref().filter(|w| w.e[n2..].iter().all(|&v| v == 0)).map(|w| {
        let dinv = blocks.d.inverse().expect("D is invertible");
        let keep: Vec<usize> = (0..n2).collect();
        RdWitness {
            x: dinv.left_mul_vec(&w.x)[..rd.k - a].to_vec(),
            support: w.support.clone(),
            c: w.c.select_cols(&keep),
            e: w.e[..n2].to_vec(),
        }
    });
    let inst = RdInstance { n: n2, k: rd.k - a, g: blocks.g_prime, y, witness, ..rd.clone() };
    Ok(ReducedRd { inst, transform: t.clone(), a })
}

/// MinRank instance of parameters (m, n − a, K − am, r).
#[derive(Clone, Debug)]
pub struct ReducedMinRank {
    pub inst: MinRankInstance,
    /// D with D·L = (L′ 0 ; B I_{am}).
    pub d: Matrix,
    /// x″ = −φ(M_0)_I.
    pub tail: Vec<Elem>,
}

impl ReducedMinRank {
    /// x = (x′, x″)·D, a solution of the original instance.
    pub fn lift(&self, x_small: &[Elem]) -> Vec<Elem> {
        let mut z = x_small.to_vec();
        z.extend(&self.tail);
        self.d.left_mul_vec(&z)
    }
}

pub fn reduce_minrank(inst: &MinRankInstance, t: &ColumnTransform, a: usize) -> Result<ReducedMinRank, HybridError> {
    let (m, n, kk) = (inst.m, inst.n, inst.big_k);
    if a * m > kk {
        return Err(HybridError::BadParams(format!("a·m = {} exceeds K = {kk}", a * m)));
    }
    let f = &inst.field;
    let moved = transform_minrank(inst, t);
    // column-major flattening puts the columns J = last a at the tail
    let cut = (n - a) * m;
    let positions: Vec<usize> = (cut..n * m).collect();
    let sh = shorten(&moved.gen_matrix(), &positions);
    let Some(blocks) = sh.blocks else {
        return Err(HybridError::Infeasible { dim: sh.dim, expected: kk - a * m });
    };
    let m0 = phi(&moved.matrices[0]);
    let shift = blocks.b.left_mul_vec(&m0[cut..]);
    let m0_small: Vec<Elem> = m0[..cut].iter().zip(&shift).map(|(&u, &v)| f.sub(u, v)).collect();
    let mut matrices = vec![phi_inv(f, &m0_small, m, n - a)];
    matrices.extend((0..blocks.g_prime.rows()).map(|i| phi_inv(f, blocks.g_prime.row(i), m, n - a)));
    let tail: Vec<Elem> = m0[cut..].iter().map(|&v| f.neg(v)).collect();
    let witness = moved.witness.as_ref().filter(|x| phi(&moved.eval(x))[cut..].iter().all(|&v| v == 0)).map(|x| {
        let dinv = blocks.d.inverse().expect("D is invertible");
        dinv.left_mul_vec(x)[..kk - a * m].to_vec()
    });
    let small = MinRankInstance { n: n - a, big_k: kk - a * m, matrices, witness, ..inst.clone() };
    Ok(ReducedMinRank { inst: small, d: blocks.d, tail })
}

/// Outcome of `feasibility_probe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    /// r + a ≤ k: the systematic-set criterion applies.
    pub systematic_case: bool,
    /// Whether {1..r} ∪ J extends to an information set (r + a ≤ k only).
    pub systematic_set: Option<bool>,
    /// Guesses A with G_J − G_{[r]}·A rank-defective, by exhaustive search.
    pub bad_guesses: Option<usize>,
    /// Exponent e of the bound q^e on the probability of a bad dual word.
    pub bound_exponent: i64,
}

impl Feasibility {
    pub fn all_feasible(&self) -> Option<bool> {
        match (self.systematic_set, self.bad_guesses) {
            (Some(true), _) => Some(true),
            (_, Some(bad)) => Some(bad == 0),
            _ => None,
        }
    }
}

/// Most guesses the exhaustive part of `feasibility_probe` will enumerate.
pub const PROBE_LIMIT: u64 = 1 << 16;

pub fn feasibility_probe(rd: &RdInstance, a: usize) -> Feasibility {
    let (n, k, r, m) = (rd.n, rd.k, rd.r, rd.m());
    let f = rd.ext.field();
    let j: Vec<usize> = (n - a..n).collect();
    let head: Vec<usize> = (0..r).collect();
    let systematic_case = r + a <= k;
    let systematic_set = systematic_case.then(|| {
        let mut cols = head.clone();
        cols.extend(&j);
        rd.g.select_cols(&cols).rank() == r + a
    });
    let q = rd.ext.q() as u64;
    let bad_guesses = q.checked_pow((a * r) as u32).filter(|&t| t <= PROBE_LIMIT).map(|_| {
        let (gj, gr) = (rd.g.select_cols(&j), rd.g.select_cols(&head));
        enumerate_guesses(rd.ext.base(), n, r, a)
            .filter(|g| gj.add(&gr.mul(&g.a.embed(f)).scale(f.neg(1))).rank() < a)
            .count()
    });
    let bound_exponent = ((m + r) * a) as i64 - (m * k) as i64;
    Feasibility { systematic_case, systematic_set, bad_guesses, bound_exponent }
}

/// Result of a hybrid run.
#[derive(Clone, Debug, Default)]
pub struct HybridReport {
    /// Error (RD) or variable vector (MinRank) on the original instance.
    pub solution: Vec<Elem>,
    /// Guesses (or probabilistic trials) consumed, the successful one included.
    pub guesses: usize,
    pub infeasible: usize,
    pub rerandomizations: usize,
}

/// Deterministic loop over the q^{ar} guesses; every lifted candidate is
/// verified on `rd` before it is returned.
pub fn hybrid_solve_rd<S>(rd: &RdInstance, a: usize, mut inner: S) -> Result<HybridReport, HybridError>
where
    S: FnMut(&RdInstance) -> Option<Vec<Elem>>,
{
    let (mut guesses, mut infeasible) = (0, 0);
    for g in enumerate_guesses(rd.ext.base(), rd.n, rd.r, a) {
        guesses += 1;
        let red = match reduce_rd(rd, &g.transform, a) {
            Ok(red) => red,
            Err(HybridError::Infeasible { .. }) => {
                infeasible += 1;
                continue;
            }
            Err(err) => return Err(err),
        };
        if let Some(e_small) = inner(&red.inst) {
            let e = red.lift(&e_small);
            if rd.is_solution(&e, rd.r) {
                return Ok(HybridReport { solution: e, guesses, infeasible, rerandomizations: 0 });
            }
        }
    }
    Err(HybridError::Exhausted { guesses, infeasible })
}

/// Runs `hybrid_solve_rd` on the instance and then on up to `rounds` random
/// right-multiplications of it, for when the first r error positions are
/// dependent.
pub fn hybrid_driver_rd<S>(rd: &RdInstance, a: usize, rounds: usize, seed: u64, mut inner: S) -> Result<HybridReport, HybridError>
where
    S: FnMut(&RdInstance) -> Option<Vec<Elem>>,
{
    let f = rd.ext.field();
    let (mut guesses, mut infeasible) = (0, 0);
    for round in 0..=rounds {
        let t = match round {
            0 => ColumnTransform::identity(rd.ext.base(), rd.n),
            _ => random_invertible(rd.ext.base(), rd.n, seed.wrapping_add(round as u64)),
        };
        let moved = transform_rd(rd, &t);
        match hybrid_solve_rd(&moved, a, &mut inner) {
            Ok(mut rep) => {
                rep.solution = times_base(f, &rep.solution, &t.p_inv);
                rep.rerandomizations = round;
                return Ok(rep);
            }
            Err(HybridError::Exhausted { guesses: g, infeasible: i }) => {
                guesses += g;
                infeasible += i;
            }
            Err(err) => return Err(err),
        }
    }
    Err(HybridError::Exhausted { guesses, infeasible })
}

/// Fresh random P per trial, betting that e·P vanishes on the last a
/// positions; succeeds with probability about q^{−ar} per trial.
pub fn hybrid_probabilistic_rd<S>(rd: &RdInstance, a: usize, max_trials: usize, seed: u64, mut inner: S) -> Result<HybridReport, HybridError>
where
    S: FnMut(&RdInstance) -> Option<Vec<Elem>>,
{
    let mut infeasible = 0;
    for trial in 1..=max_trials {
        let t = random_invertible(rd.ext.base(), rd.n, seed.wrapping_mul(0x9e37_79b9).wrapping_add(trial as u64));
        let red = match reduce_rd(rd, &t, a) {
            Ok(red) => red,
            Err(HybridError::Infeasible { .. }) => {
                infeasible += 1;
                continue;
            }
            Err(err) => return Err(err),
        };
        if let Some(e_small) = inner(&red.inst) {
            let e = red.lift(&e_small);
            if rd.is_solution(&e, rd.r) {
                return Ok(HybridReport { solution: e, guesses: trial, infeasible, rerandomizations: trial });
            }
        }
    }
    Err(HybridError::Exhausted { guesses: max_trials, infeasible })
}

/// MinRank counterpart of `hybrid_solve_rd`; returns x for the original instance.
pub fn hybrid_solve_minrank<S>(inst: &MinRankInstance, a: usize, mut inner: S) -> Result<HybridReport, HybridError>
where
    S: FnMut(&MinRankInstance) -> Option<Vec<Elem>>,
{
    let (mut guesses, mut infeasible) = (0, 0);
    for g in enumerate_guesses(&inst.field, inst.n, inst.r, a) {
        guesses += 1;
        let red = match reduce_minrank(inst, &g.transform, a) {
            Ok(red) => red,
            Err(HybridError::Infeasible { .. }) => {
                infeasible += 1;
                continue;
            }
            Err(err) => return Err(err),
        };
        if let Some(x_small) = inner(&red.inst) {
            let x = red.lift(&x_small);
            if inst.is_solution(&x) {
                return Ok(HybridReport { solution: x, guesses, infeasible, rerandomizations: 0 });
            }
        }
    }
    Err(HybridError::Exhausted { guesses, infeasible })
}

/// MinRank counterpart of `hybrid_driver_rd`. Solutions x need no lifting
/// through P since E·P keeps the same coefficients.
pub fn hybrid_driver_minrank<S>(inst: &MinRankInstance, a: usize, rounds: usize, seed: u64, mut inner: S) -> Result<HybridReport, HybridError>
where
    S: FnMut(&MinRankInstance) -> Option<Vec<Elem>>,
{
    let (mut guesses, mut infeasible) = (0, 0);
    for round in 0..=rounds {
        let moved = match round {
            0 => inst.clone(),
            _ => rerandomize_minrank(inst, seed.wrapping_add(round as u64)).0,
        };
        match hybrid_solve_minrank(&moved, a, &mut inner) {
            Ok(mut rep) => {
                rep.rerandomizations = round;
                return Ok(rep);
            }
            Err(HybridError::Exhausted { guesses: g, infeasible: i }) => {
                guesses += g;
                infeasible += i;
            }
            Err(err) => return Err(err),
        }
    }
    Err(HybridError::Exhausted { guesses, infeasible })
}

pub fn hybrid_probabilistic_minrank<S>(inst: &MinRankInstance, a: usize, max_trials: usize, seed: u64, mut inner: S) -> Result<HybridReport, HybridError>
where
    S: FnMut(&MinRankInstance) -> Option<Vec<Elem>>,
{
    let mut infeasible = 0;
    for trial in 1..=max_trials {
        let t = random_invertible(&inst.field, inst.n, seed.wrapping_mul(0x9e37_79b9).wrapping_add(trial as u64));
        let red = match reduce_minrank(inst, &t, a) {
            Ok(red) => red,
            Err(HybridError::Infeasible { .. }) => {
                infeasible += 1;
                continue;
            }
            Err(err) => return Err(err),
        };
        if let Some(x_small) = inner(&red.inst) {
            let x = red.lift(&x_small);
            if inst.is_solution(&x) {
                return Ok(HybridReport { solution: x, guesses: trial, infeasible, rerandomizations: trial });
            }
        }
    }
    Err(HybridError::Exhausted { guesses: max_trials, infeasible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_minrank, gen_rd};
    use crate::solver::{decode_rd, solve_minrank_exhaustive, DecodeConfig};

    fn decode(rd: &RdInstance) -> Option<Vec<Elem>> {
        decode_rd(rd, &DecodeConfig::default()).ok().map(|s| s.e)
    }

    #[test]
    fn guesses_are_distinct_and_unimodular() {
        let f = Field::gf(2).unwrap();
        let gs: Vec<GuessMatrix> = enumerate_guesses(&f, 6, 2, 1).collect();
        assert_eq!(gs.len(), 4);
        for g in &gs {
            assert_eq!(g.transform.p.determinant(), 1);
            assert_eq!(g.transform.p.mul(&g.transform.p_inv), Matrix::identity(&f, 6));
        }
        let single: Vec<GuessMatrix> = enumerate_guesses(&f, 6, 2, 0).collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].transform.p, Matrix::identity(&f, 6));
    }

    #[test]
    fn reduce_rd_identity_and_planted_lift() {
        let rd = gen_rd(2, 7, 12, 5, 2, 4).unwrap();
        let id = ColumnTransform::identity(rd.ext.base(), rd.n);
        let same = reduce_rd(&rd, &id, 0).unwrap();
        assert_eq!(same.inst.y, rd.y);
        // choose the guess that zeroes the last position of e
        let w = rd.witness.as_ref().unwrap();
        let hit = enumerate_guesses(rd.ext.base(), rd.n, 2, 1)
            .find(|g| transform_rd(&rd, &g.transform).witness.unwrap().e[rd.n - 1] == 0);
        if assumption_holds_rd(&rd).unwrap() {
            let g = hit.expect("some guess zeroes the last position");
            let red = reduce_rd(&rd, &g.transform, 1).unwrap();
            let ws = red.inst.witness.as_ref().unwrap();
            assert_eq!(rank_weight(&rd.ext, &ws.e), 2);
            assert!(red.inst.is_solution(&ws.e, 2));
            assert_eq!(red.lift(&ws.e), w.e);
        }
    }

    #[test]
    fn hybrid_rd_end_to_end() {
        let rd = gen_rd(2, 7, 12, 5, 2, 9).unwrap();
        let rep = hybrid_driver_rd(&rd, 1, 8, 1, decode).unwrap();
        assert_eq!(rep.solution, rd.witness.as_ref().unwrap().e);
        assert!(rep.guesses <= 4);
    }

    #[test]
    fn hybrid_minrank_end_to_end() {
        let inst = gen_minrank(2, 6, 8, 14, 2, 5).unwrap();
        let rep = hybrid_driver_minrank(&inst, 1, 8, 1, solve_minrank_exhaustive).unwrap();
        assert!(inst.is_solution(&rep.solution));
        let small = reduce_minrank(&inst, &ColumnTransform::identity(&inst.field, inst.n), 0).unwrap();
        assert_eq!(small.inst.big_k, 14);
    }

    #[test]
    fn feasibility_cases() {
        let rd = gen_rd(2, 7, 12, 5, 2, 2).unwrap();
        let fz = feasibility_probe(&rd, 1);
        assert!(fz.systematic_case);
        assert_eq!(fz.systematic_set, Some(true));
        assert_eq!(fz.bad_guesses, Some(0));
        assert_eq!(feasibility_probe(&gen_rd(2, 7, 8, 4, 2, 1).unwrap(), 1).bound_exponent, 9 - 28);
    }
}

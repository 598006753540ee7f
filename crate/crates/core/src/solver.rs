//! Linearization solving and end-to-end RD decoding.

use serde::Serialize;
use thiserror::Error;

use crate::galois::{Elem, ExtField, Field};
use crate::instances::{canonicalize, canonicalize_shuffled, CanonicalRd, MinRankInstance, RdInstance};
use crate::matlin::{maximal_minors, Matrix, SubsetIndex};
use crate::modelings::{
    build_mm_fq, build_mm_fqm, build_sm_fqm, build_sm_minrank, macaulay, macaulay_upto, reduce_sm_plus, CtLinearSystem,
    MacaulayMatrix, ModelingError, Monomial, SmPlus, DEFAULT_ENTRY_BUDGET,
};

/// Normalized one-dimensional kernel of a Macaulay matrix.
#[derive(Clone, Debug)]
pub struct MonomialAssignment {
    pub values: Vec<Elem>,
    pub pivot: usize,
    pub columns: Vec<Monomial>,
}

impl MonomialAssignment {
    pub fn value(&self, mono: &Monomial) -> Option<Elem> {
        self.columns.iter().position(|c| c == mono).map(|i| self.values[i])
    }
}

#[derive(Clone, Debug)]
pub enum LinearOutcome {
    Unique(MonomialAssignment),
    Indeterminate(usize),
    Inconsistent,
}

pub fn solve_linearized(mac: &MacaulayMatrix) -> LinearOutcome {
    let e = mac.matrix.echelonize();
    match e.kernel.len() {
        0 => LinearOutcome::Inconsistent,
        1 => {
            let f = mac.matrix.field();
            let v = &e.kernel[0];
            // columns are in decreasing order, so the first hit is the largest
            let Some(pivot) = (0..v.len()).find(|&i| mac.columns[i].x_degree() == 0 && v[i] != 0) else {
                return LinearOutcome::Indeterminate(1);
            };
            let inv = f.inv(v[pivot]);
            let values = v.iter().map(|&a| f.mul(a, inv)).collect();
            LinearOutcome::Unique(MonomialAssignment { values, pivot, columns: mac.columns.clone() })
        }
        d => LinearOutcome::Indeterminate(d),
    }
}

/// Most projective candidates `descend_kernel` will return.
pub const DESCENT_CANDIDATES: usize = 64;

/// Kernel vectors of `mac` whose degree-(0,1) coordinates all lie in F_q,
/// one per projective point, each normalized like `solve_linearized`.
///
/// Over small q the SM+ matrix can have kernel dimension above 1 while the
/// planted point is still the only F_q-rational one; this recovers it by an
/// F_q-linear solve on the coefficients of a kernel combination.
pub fn descend_kernel(mac: &MacaulayMatrix, ext: &ExtField) -> Vec<MonomialAssignment> {
    let f = ext.field();
    let m = ext.m();
    let pure: Vec<usize> = (0..mac.columns.len()).filter(|&i| mac.columns[i].x_degree() == 0).collect();
    let kernel = pure_independent(f, mac.matrix.echelonize().kernel, &pure);
    let d = kernel.len();
    if d == 0 {
        return Vec::new();
    }
    // unknown λ_{i,t} ∈ F_q at i·m + t, with λ_i = Σ_t λ_{i,t} β_t
    let mut rows = Vec::with_capacity(pure.len() * (m - 1));
    for &p in &pure {
        let coords: Vec<Vec<Elem>> = (0..d)
            .flat_map(|i| ext.basis().iter().map(move |&b| (i, b)))
            .map(|(i, b)| ext.coords(f.mul(b, kernel[i][p])))
            .collect();
        for s in 1..m {
            rows.push(coords.iter().map(|c| c[s]).collect::<Vec<_>>());
        }
    }
    let sys = Matrix::from_rows(ext.base(), &rows, d * m);
    let base_kernel = sys.echelonize().kernel;
    let q = ext.q() as usize;
    let dim = base_kernel.len();
    if dim == 0 || q.checked_pow(dim as u32).is_none_or(|n| n > DESCENT_CANDIDATES * q) {
        return Vec::new();
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for code in 1..q.pow(dim as u32) {
        let mut u = vec![0; d * m];
        let mut rest = code;
        for bv in &base_kernel {
            let digit = (rest % q) as Elem;
            rest /= q;
            for (a, &b) in u.iter_mut().zip(bv) {
                *a = ext.base().add(*a, ext.base().mul(digit, b));
            }
        }
        let mut v = vec![0; mac.columns.len()];
        for i in 0..d {
            let lambda = (0..m).fold(0, |acc, t| f.add(acc, f.mul(u[i * m + t], ext.basis()[t])));
            for (a, &b) in v.iter_mut().zip(&kernel[i]) {
                *a = f.add(*a, f.mul(lambda, b));
            }
        }
        let Some(pivot) = pure.iter().copied().find(|&i| v[i] != 0) else { continue };
        let inv = f.inv(v[pivot]);
        let values: Vec<Elem> = v.iter().map(|&a| f.mul(a, inv)).collect();
        if seen.insert(values.clone()) {
            out.push(MonomialAssignment { values, pivot, columns: mac.columns.clone() });
        }
    }
    out
}

/// Row-reduces kernel vectors on the `pure` coordinates and drops those left
/// vanishing there: they change no c_T and would only inflate the search.
fn pure_independent(f: &Field, mut vecs: Vec<Vec<Elem>>, pure: &[usize]) -> Vec<Vec<Elem>> {
    let mut done = 0;
    for &p in pure {
        let Some(i) = (done..vecs.len()).find(|&i| vecs[i][p] != 0) else { continue };
        vecs.swap(done, i);
        let inv = f.inv(vecs[done][p]);
        let pivot: Vec<Elem> = vecs[done].iter().map(|&a| f.mul(a, inv)).collect();
        for (j, v) in vecs.iter_mut().enumerate() {
            if j != done && v[p] != 0 {
                let c = v[p];
                f.sub_scaled(v, &pivot, c);
            }
        }
        vecs[done] = pivot;
        done += 1;
    }
    vecs.truncate(done);
    vecs
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum MmOutcome {
    #[error("MaxMinors system is underdetermined (rank {0})")]
    Underdetermined(usize),
    #[error("MaxMinors system has full rank: no solution at this weight")]
    NoSolution,
}

/// Unique projective kernel of MM-F_q, scaled so its largest nonzero c_T is 1.
pub fn solve_mm_linear(mmfq: &CtLinearSystem) -> Result<Vec<Elem>, MmOutcome> {
    let e = mmfq.coeffs.echelonize();
    let nc = mmfq.coeffs.cols();
    if e.rank == nc {
        return Err(MmOutcome::NoSolution);
    }
    if e.rank + 1 < nc {
        return Err(MmOutcome::Underdetermined(e.rank));
    }
    let f = mmfq.coeffs.field();
    let v = &e.kernel[0];
    let top = (0..nc).rev().find(|&i| v[i] != 0).expect("kernel vector is nonzero");
    let inv = f.inv(v[top]);
    Ok(v.iter().map(|&a| f.mul(a, inv)).collect())
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("a recovered minor is not in the base field")]
    NotInBase,
    #[error("a needed monomial column is absent")]
    MissingColumn,
}

/// Reads (c_T over F_q, x over F_{q^m}) from a normalized kernel of the SM+
/// Macaulay matrix.
pub fn extract_solution(assign: &MonomialAssignment, plus: &SmPlus, ext: &ExtField) -> Result<(Vec<Elem>, Vec<Elem>), ExtractError> {
    let sys = &plus.system;
    let t0 = assign.columns[assign.pivot].c;
    let zero = vec![0u8; sys.nx];
    let mut c = vec![0; sys.c_index.count()];
    for &t in &sys.active {
        let v = assign.value(&Monomial { x: zero.clone(), c: t }).ok_or(ExtractError::MissingColumn)?;
        if !ext.field().is_in_base(v) {
            return Err(ExtractError::NotInBase);
        }
        c[t] = v;
    }
    plus.reduction.back_substitute(ext.field(), &mut c);
    let x = (0..sys.nx)
        .map(|i| {
            let mut xe = zero.clone();
            xe[i] = 1;
            assign.value(&Monomial { x: xe, c: t0 }).ok_or(ExtractError::MissingColumn)
        })
        .collect::<Result<_, _>>()?;
    Ok((c, x))
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum PlueckerError {
    #[error("all coordinates are zero")]
    Zero,
    #[error("coordinates violate the Plücker relations")]
    NotDecomposable,
}

/// An r×n matrix whose maximal minors are proportional to `coords`.
pub fn reconstruct_c(f: &Field, n: usize, r: usize, coords: &[Elem]) -> Result<Matrix, PlueckerError> {
    let index = SubsetIndex::new(n, r);
    assert_eq!(coords.len(), index.count());
    let t0i = coords.iter().position(|&v| v != 0).ok_or(PlueckerError::Zero)?;
    let t0 = index.unrank(t0i).unwrap();
    let inv = f.inv(coords[t0i]);
    let mut c = Matrix::zeros(f, r, n);
    for (i, &ti) in t0.iter().enumerate() {
        for j in 0..n {
            if j == ti {
                c.set(i, j, 1);
                continue;
            }
            if t0.contains(&j) {
                continue;
            }
            // replace t_i by j, then sort: the sign is that of the moved column
            let mut t = t0.clone();
            t[i] = j;
            let shift = t0.iter().enumerate().filter(|&(l, &tl)| (l < i && tl > j) || (l > i && tl < j)).count();
            t.sort_unstable();
            let v = f.mul(coords[index.rank(&t).unwrap()], inv);
            c.set(i, j, if shift % 2 == 0 { v } else { f.neg(v) });
        }
    }
    let check = maximal_minors(&c);
    if check.iter().zip(coords).any(|(&a, &b)| a != f.mul(b, inv)) {
        return Err(PlueckerError::NotDecomposable);
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Modeling {
    #[default]
    Auto,
    Mm,
    Smplus,
}

#[derive(Clone, Debug)]
pub struct DecodeConfig {
    pub modeling: Modeling,
    pub b_max: usize,
    /// Extra canonicalizations with shuffled pivot search.
    pub retries: usize,
    pub budget: usize,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig { modeling: Modeling::Auto, b_max: 4, retries: 3, budget: DEFAULT_ENTRY_BUDGET }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Transcript {
    pub modeling: String,
    pub weight: usize,
    pub b: Option<usize>,
    pub a: usize,
    pub guesses: usize,
    pub infeasible_guesses: usize,
    pub attempts: usize,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct RdSolution {
    pub c: Vec<Elem>,
    pub e: Vec<Elem>,
    /// y = x·G + e.
    pub x: Vec<Elem>,
    pub support: Vec<Elem>,
    pub support_matrix: Matrix,
    pub transcript: Transcript,
}

#[derive(Debug, Error)]
#[error("no solution found: {}", .0.notes.join("; "))]
pub struct Unsolved(pub Transcript);

enum Attempt {
    Solved(Box<RdSolution>),
    NoSolutionAtWeight,
    GiveUp,
}

/// Tries every weight up to r, smallest first, with the MM/SM+ split per weight.
pub fn decode_rd(rd: &RdInstance, cfg: &DecodeConfig) -> Result<RdSolution, Unsolved> {
    let mut tr = Transcript::default();
    if rd.g.solve_left(&rd.y).is_some() {
        tr.modeling = "trivial".into();
        tr.notes.push("y is a codeword".into());
        return Ok(RdSolution {
            c: rd.y.clone(),
            e: vec![0; rd.n],
            x: rd.g.solve_left(&rd.y).unwrap(),
            support: Vec::new(),
            support_matrix: Matrix::zeros(rd.ext.base(), 0, rd.n),
            transcript: tr,
        });
    }
    for w in 1..=rd.r.min(rd.n - rd.k - 1) {
        let inst = RdInstance { r: w, witness: None, ..rd.clone() };
        for attempt in 0..=cfg.retries {
            tr.attempts += 1;
            let can = match attempt {
                0 => canonicalize(&inst),
                s => canonicalize_shuffled(&inst, s as u64),
            };
            let can = match can {
                Ok(c) => c,
                Err(err) => {
                    tr.notes.push(format!("weight {w}: {err}"));
                    continue;
                }
            };
            match attempt_weight(&can, cfg, &mut tr) {
                Attempt::Solved(sol) => {
                    let mut sol = complete_solution(rd, *sol);
                    if !rd.is_solution(&sol.e, w) {
                        tr.notes.push(format!("weight {w}: lifted candidate failed verification"));
                        continue;
                    }
                    sol.transcript.weight = w;
                    return Ok(sol);
                }
                Attempt::NoSolutionAtWeight => break,
                Attempt::GiveUp => continue,
            }
        }
    }
    Err(Unsolved(tr))
}

fn attempt_weight(can: &CanonicalRd, cfg: &DecodeConfig, tr: &mut Transcript) -> Attempt {
    let inst = &can.inst;
    let w = inst.r;
    let mmfq = build_mm_fq(&inst.ext, &build_mm_fqm(can));
    match solve_mm_linear(&mmfq) {
        Err(MmOutcome::NoSolution) => {
            tr.notes.push(format!("weight {w}: MaxMinors has full rank"));
            return Attempt::NoSolutionAtWeight;
        }
        Ok(c) => {
            if cfg.modeling == Modeling::Smplus {
                tr.notes.push(format!("weight {w}: MaxMinors overdetermined, solved linearly"));
            }
            tr.modeling = "mm".into();
            tr.b = None;
            return finish(can, &c, tr);
        }
        Err(MmOutcome::Underdetermined(rank)) => {
            if cfg.modeling == Modeling::Mm {
                tr.notes.push(format!("weight {w}: MaxMinors underdetermined (rank {rank})"));
                return Attempt::NoSolutionAtWeight;
            }
        }
    }
    let (sm, part) = build_sm_fqm(can);
    let plus = match reduce_sm_plus(&sm, &part, &mmfq) {
        Ok(p) => p,
        Err(err) => {
            tr.notes.push(format!("weight {w}: {err}"));
            return Attempt::GiveUp;
        }
    };
    for b in 1..=cfg.b_max {
        let mac = match macaulay_upto(&plus.system, b, cfg.budget) {
            Ok(m) => m,
            Err(ModelingError::BudgetExceeded { rows, cols }) => {
                tr.notes.push(format!("weight {w}, b={b}: {rows}x{cols} over budget"));
                return Attempt::GiveUp;
            }
            Err(err) => {
                tr.notes.push(err.to_string());
                return Attempt::GiveUp;
            }
        };
        match solve_linearized(&mac) {
            LinearOutcome::Inconsistent => {
                tr.notes.push(format!("weight {w}, b={b}: trivial kernel"));
                return Attempt::NoSolutionAtWeight;
            }
            LinearOutcome::Indeterminate(d) => {
                tr.notes.push(format!("weight {w}, b={b}: kernel dimension {d}"));
                for assign in descend_kernel(&mac, &inst.ext) {
                    let Ok((c, _)) = extract_solution(&assign, &plus, &inst.ext) else { continue };
                    let mut scratch = tr.clone();
                    scratch.modeling = "smplus".into();
                    scratch.b = Some(b);
                    scratch.notes.push(format!("weight {w}, b={b}: F_q-rational kernel point"));
                    if let Attempt::Solved(sol) = finish(can, &c, &mut scratch) {
                        *tr = scratch;
                        return Attempt::Solved(sol);
                    }
                }
            }
            LinearOutcome::Unique(assign) => match extract_solution(&assign, &plus, &inst.ext) {
                Ok((c, _)) => {
                    tr.modeling = "smplus".into();
                    tr.b = Some(b);
                    return finish(can, &c, tr);
                }
                Err(err) => tr.notes.push(format!("weight {w}, b={b}: {err}")),
            },
        }
    }
    Attempt::GiveUp
}

/// From Plücker coordinates: rebuild C′, solve y + xG = s·C′, verify and lift.
fn finish(can: &CanonicalRd, c: &[Elem], tr: &mut Transcript) -> Attempt {
    let inst = &can.inst;
    let (f, w) = (inst.ext.field(), inst.r);
    let cmat = match reconstruct_c(inst.ext.base(), inst.n, w, c) {
        Ok(m) => m,
        Err(err) => {
            tr.notes.push(format!("weight {w}: {err}"));
            return Attempt::GiveUp;
        }
    };
    // z·A = −y with z = (x, s), A = (G ; −C′)
    let neg_c = Matrix::from_vec(f, w, inst.n, cmat.data().iter().map(|&v| f.neg(v)).collect());
    let a = inst.g.vstack(&neg_c);
    let rhs: Vec<Elem> = inst.y.iter().map(|&v| f.neg(v)).collect();
    let Some(z) = a.solve_left(&rhs) else {
        tr.notes.push(format!("weight {w}: support does not fit y"));
        return Attempt::GiveUp;
    };
    let s = z[inst.k..].to_vec();
    let e_can = Matrix::from_vec(f, 1, w, s.clone()).mul(&cmat).row(0).to_vec();
    if !inst.is_solution(&e_can, w) {
        tr.notes.push(format!("weight {w}: candidate failed verification"));
        return Attempt::GiveUp;
    }
    let e = can.lift_error(&e_can);
    let inv = f.inv(can.scale);
    let support: Vec<Elem> = s.iter().map(|&v| f.mul(v, inv)).collect();
    let mut support_matrix = Matrix::zeros(inst.ext.base(), w, inst.n);
    for (i, &p) in can.perm.iter().enumerate() {
        for row in 0..w {
            support_matrix.set(row, p, cmat.get(row, i));
        }
    }
    Attempt::Solved(Box::new(RdSolution {
        c: Vec::new(),
        e,
        x: Vec::new(),
        support,
        support_matrix,
        transcript: tr.clone(),
    }))
}

/// Fills c and x from e on the original instance.
fn complete_solution(rd: &RdInstance, mut sol: RdSolution) -> RdSolution {
    let f = rd.ext.field();
    sol.c = rd.y.iter().zip(&sol.e).map(|(&a, &b)| f.sub(a, b)).collect();
    sol.x = rd.g.solve_left(&sol.c).unwrap_or_default();
    sol
}

/// MinRank by Support-Minors linearization at b = 1 over F_q.
pub fn solve_minrank_sm(inst: &MinRankInstance, budget: usize) -> Option<Vec<Elem>> {
    let sys = build_sm_minrank(inst);
    let mac = macaulay(&sys, 1, budget).ok()?;
    let LinearOutcome::Unique(assign) = solve_linearized(&mac) else { return None };
    let t0 = assign.columns[assign.pivot].c;
    let x: Option<Vec<Elem>> = (0..inst.big_k)
        .map(|v| {
            let mut xe = vec![0u8; inst.big_k];
            xe[v] = 1;
            assign.value(&Monomial { x: xe, c: t0 })
        })
        .collect();
    x.filter(|x| inst.is_solution(x))
}

/// Exhaustive MinRank search over F_q^K; only for tiny instances.
pub fn solve_minrank_exhaustive(inst: &MinRankInstance) -> Option<Vec<Elem>> {
    let q = inst.field.order() as u64;
    let total = q.checked_pow(inst.big_k as u32)?;
    (0..total).find_map(|mut code| {
        let x: Vec<Elem> = (0..inst.big_k)
            .map(|_| {
                let d = (code % q) as Elem;
                code /= q;
                d
            })
            .collect();
        inst.is_solution(&x).then_some(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_minrank, gen_rd};

    #[test]
    fn reconstruct_identity_and_round_trip() {
        let f = Field::gf(2).unwrap();
        let idx = SubsetIndex::new(5, 2);
        let mut coords = vec![0; idx.count()];
        coords[idx.rank(&[1, 3]).unwrap()] = 1;
        let c = reconstruct_c(&f, 5, 2, &coords).unwrap();
        assert_eq!(c.to_rows(), vec![vec![0, 1, 0, 0, 0], vec![0, 0, 0, 1, 0]]);

        let f = Field::gf(5).unwrap();
        let m = Matrix::from_rows(&f, &[vec![1, 2, 3, 4, 0, 1], vec![0, 1, 4, 2, 2, 3], vec![3, 3, 1, 0, 1, 2]], 6);
        let back = reconstruct_c(&f, 6, 3, &maximal_minors(&m)).unwrap();
        assert_eq!(m.vstack(&back).rank(), 3);
    }

    #[test]
    fn reconstruct_rejects_non_pluecker() {
        // c12 c34 + c13 c24 + c14 c23 = 1 over F_2
        let f = Field::gf(2).unwrap();
        let coords = vec![1, 0, 0, 0, 0, 1];
        assert_eq!(reconstruct_c(&f, 4, 2, &coords).unwrap_err(), PlueckerError::NotDecomposable);
        assert_eq!(reconstruct_c(&f, 4, 2, &[0; 6]).unwrap_err(), PlueckerError::Zero);
    }

    #[test]
    fn decode_mm_path() {
        let rd = gen_rd(2, 7, 10, 3, 2, 11).unwrap();
        let sol = decode_rd(&rd, &DecodeConfig::default()).unwrap();
        assert_eq!(sol.transcript.modeling, "mm");
        assert_eq!(sol.e, rd.witness.as_ref().unwrap().e);
    }

    #[test]
    fn decode_smplus_path() {
        let rd = gen_rd(2, 7, 8, 4, 2, 12).unwrap();
        let sol = decode_rd(&rd, &DecodeConfig::default()).unwrap();
        assert_eq!(sol.transcript.modeling, "smplus");
        assert_eq!(sol.transcript.b, Some(1));
        assert_eq!(sol.e, rd.witness.as_ref().unwrap().e);
        let f = rd.ext.field();
        let e2 = Matrix::from_vec(f, 1, 2, sol.support.clone()).mul(&sol.support_matrix).row(0).to_vec();
        assert_eq!(e2, sol.e);
    }

    #[test]
    fn decode_codeword() {
        let mut rd = gen_rd(2, 5, 6, 3, 1, 1).unwrap();
        rd.y = rd.g.row(1).to_vec();
        let sol = decode_rd(&rd, &DecodeConfig::default()).unwrap();
        assert!(sol.e.iter().all(|&v| v == 0));
    }

    #[test]
    fn minrank_solvers_agree() {
        let mr = gen_minrank(2, 5, 6, 5, 2, 3).unwrap();
        let a = solve_minrank_sm(&mr, DEFAULT_ENTRY_BUDGET).unwrap();
        assert!(mr.is_solution(&a));
        assert_eq!(Some(a), solve_minrank_exhaustive(&mr));
    }
}

//! One function per verified property; each builds a seeded instance and
//! compares what it measures against the closed-form expectation.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use crate::estimator::{nb_fqm, nsyz};
use crate::galois::{Elem, Field};
use crate::hybrid::{hybrid_driver_minrank, hybrid_driver_rd, hybrid_probabilistic_minrank, hybrid_probabilistic_rd};
use crate::instances::{canonicalize, gen_minrank, gen_rd, gen_rd_unique, rd_to_minrank, CanonicalRd, MinRankInstance, RdInstance};
use crate::matlin::{binom, Matrix, SubsetIndex};
use crate::modelings::{
    basis_bb, build_mm_fq, build_mm_fqm, build_sm_fq, build_sm_fqm, build_sm_minrank, macaulay, mm_polys, reduce_sm_plus,
    BilinearPoly, MacaulayMatrix, MmReduction, Term, DEFAULT_ENTRY_BUDGET,
};
use crate::solver::{decode_rd, solve_minrank_exhaustive, solve_minrank_sm, DecodeConfig, Modeling};

use super::{LabError, LabParams, TrialOutcome};

/// Rerandomization rounds the deterministic hybrid driver may use.
pub const HYBRID_ROUNDS: usize = 8;

fn outcome(seed: u64, pass: bool, measured: &[(&str, i64)], expected: &[(&str, i64)]) -> TrialOutcome {
    let map = |kv: &[(&str, i64)]| kv.iter().map(|&(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>();
    TrialOutcome { seed, pass, measured: map(measured), expected: map(expected), note: None }
}

fn count(x: num_bigint::BigInt) -> i64 {
    x.to_i64().expect("count fits in i64")
}

pub(super) fn instance(p: &LabParams, seed: u64) -> Result<RdInstance, LabError> {
    Ok(if p.unique { gen_rd_unique(p.q, p.m, p.n, p.k, p.r, seed)? } else { gen_rd(p.q, p.m, p.n, p.k, p.r, seed)? })
}

fn canonical(p: &LabParams, seed: u64) -> Result<CanonicalRd, LabError> {
    Ok(canonicalize(&instance(p, seed)?)?)
}

fn minor(m: &Matrix, rows: &[usize], cols: &[usize]) -> Elem {
    m.select_rows(rows).select_cols(cols).determinant()
}

fn shifted(set: &[usize], by: usize) -> Vec<usize> {
    set.iter().map(|&v| v + by).collect()
}

fn sign(f: &Field, odd: bool) -> Elem {
    if odd {
        f.neg(1)
    } else {
        1
    }
}

/// Rank of polynomials read as coefficient vectors over their joint terms.
fn stacked_rank(f: &Field, polys: &[BilinearPoly]) -> usize {
    let mut cols: HashMap<Term, usize> = HashMap::new();
    for p in polys {
        for &t in p.terms.keys() {
            let next = cols.len();
            cols.entry(t).or_insert(next);
        }
    }
    let mut m = Matrix::zeros(f, polys.len(), cols.len());
    for (i, p) in polys.iter().enumerate() {
        for (t, &v) in &p.terms {
            m.set(i, cols[t], v);
        }
    }
    m.rank()
}

fn top_degree_rank(mac: &MacaulayMatrix) -> usize {
    let top: Vec<usize> = (0..mac.columns.len()).filter(|&i| mac.columns[i].x_degree() == mac.b).collect();
    mac.matrix.select_cols(&top).rank()
}

/// Q_{T+k+1} + Σ_{Q_I ∈ Q≥1} |H_y|_{T,I} Q_I vanishes for every T.
pub fn q0_span(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (n, k, r) = (p.n, p.k, p.r);
    let f = can.inst.ext.field();
    let (sm, part) = build_sm_fqm(&can);
    let idx = SubsetIndex::new(n, r + 1);
    let q_ge1: Vec<usize> = part.q1.iter().chain(&part.q_ge2).copied().collect();
    let (mut total, mut bad) = (0, 0);
    for t in SubsetIndex::new(n - k - 1, r + 1).all() {
        total += 1;
        let mut residual = sm.polys[idx.rank(&shifted(&t, k + 1)).unwrap()].clone();
        for &pi in &q_ge1 {
            residual.add_scaled(f, &sm.polys[pi], minor(&can.hy, &t, &sm.labels[pi].set));
        }
        bad += !residual.is_zero() as i64;
    }
    Ok(outcome(seed, bad == 0, &[("identities", total), ("nonzero_residuals", bad)], &[("nonzero_residuals", 0)]))
}

/// P_J against Q_1 ∪ Q≥2 (full Cauchy–Binet form, with the displayed
/// Q≥2-only form recorded alongside) and x_j P_J against its Q_I expansion.
pub fn q1_correspondence(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (n, k, r) = (p.n, p.k, p.r);
    let f = can.inst.ext.field();
    let (sm, part) = build_sm_fqm(&can);
    let pj = mm_polys(&build_mm_fqm(&can));
    let h = can.full_parity_check();
    let idx = SubsetIndex::new(n, r + 1);
    let q_of = |set: &[usize]| &sm.polys[idx.rank(set).unwrap()];
    let sign_r = sign(f, r % 2 == 1);
    let (mut identities, mut full_bad, mut displayed_bad, mut xj_bad) = (0, 0, 0, 0);
    for (ji, j) in SubsetIndex::new(n - k - 1, r).all().iter().enumerate() {
        let tail = shifted(j, k + 1);
        let mut rows = j.clone();
        rows.push(n - k - 1);

        let mut full = BilinearPoly::default();
        full.add_scaled(f, &pj[ji], f.neg(sign_r));
        for (pi, q) in sm.polys.iter().enumerate() {
            full.add_scaled(f, q, minor(&h, &rows, &sm.labels[pi].set));
        }
        full_bad += !full.is_zero() as i64;

        let mut head = vec![k];
        head.extend(&tail);
        let mut displayed = q_of(&head).clone();
        displayed.add_scaled(f, &pj[ji], f.neg(1));
        for &pi in &part.q_ge2 {
            displayed.add_scaled(f, &sm.polys[pi], f.mul(sign_r, minor(&h, &rows, &sm.labels[pi].set)));
        }
        displayed_bad += !displayed.is_zero() as i64;
        identities += 1;

        for x in 0..k {
            let mut head = vec![x];
            head.extend(&tail);
            let mut residual = q_of(&head).clone();
            residual.add_scaled(f, &pj[ji].times_x(x), f.neg(1));
            for &pi in &part.q_ge2 {
                let set = &sm.labels[pi].set;
                if let Some(u) = set.iter().position(|&v| v == x) {
                    let mut rest = set.clone();
                    rest.remove(u);
                    residual.add_scaled(f, &sm.polys[pi], f.mul(sign(f, u % 2 == 1), minor(&can.hy, j, &rest)));
                }
            }
            xj_bad += !residual.is_zero() as i64;
            identities += 1;
        }
    }
    Ok(outcome(
        seed,
        full_bad == 0 && xj_bad == 0,
        &[
            ("identities", identities),
            ("pj_residuals", full_bad),
            ("xj_pj_residuals", xj_bad),
            ("pj_displayed_form_residuals", displayed_bad),
        ],
        &[("pj_residuals", 0), ("xj_pj_residuals", 0)],
    ))
}

/// Leading terms of P_J and Q_I, the c_{J+k+1} exclusivity, and the rank of
/// P ∪ x·P ∪ Q≥2.
pub fn lt_independence(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (n, k, r) = (p.n, p.k, p.r);
    let f = can.inst.ext.field();
    let (sm, part) = build_sm_fqm(&can);
    let pj = mm_polys(&build_mm_fqm(&can));
    let c_idx = SubsetIndex::new(n, r);
    let mut lt_bad = 0;
    let js = SubsetIndex::new(n - k - 1, r).all();
    for (ji, j) in js.iter().enumerate() {
        let own = c_idx.rank(&shifted(j, k + 1)).unwrap();
        lt_bad += (pj[ji].leading_term() != Some((None, own))) as i64;
        let elsewhere = pj.iter().enumerate().any(|(o, q)| o != ji && q.terms.contains_key(&(None, own)))
            || part.q_ge2.iter().any(|&pi| sm.polys[pi].terms.keys().any(|t| t.1 == own));
        lt_bad += elsewhere as i64;
    }
    for &pi in &part.q_ge2 {
        let set = &sm.labels[pi].set;
        lt_bad += (sm.polys[pi].leading_term() != Some((Some(set[0]), c_idx.rank(&set[1..]).unwrap()))) as i64;
    }
    let mut stack: Vec<BilinearPoly> = pj.clone();
    for x in 0..k {
        stack.extend(pj.iter().map(|q| q.times_x(x)));
    }
    stack.extend(part.q_ge2.iter().map(|&pi| sm.polys[pi].clone()));
    let rank = stacked_rank(f, &stack) as i64;
    let expected = ((k + 1) * js.len() + part.q_ge2.len()) as i64;
    Ok(outcome(
        seed,
        lt_bad == 0 && rank == expected,
        &[("leading_term_mismatches", lt_bad), ("rank", rank)],
        &[("leading_term_mismatches", 0), ("rank", expected)],
    ))
}

/// Q≥2 Macaulay rank at exact degree b against N_b, on the bi-degree (b,1)
/// columns; the rank with affine columns is reported too.
pub fn nb_rank(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (sm, part) = build_sm_fqm(&can);
    let mac = macaulay(&sm.subsystem(&part.q_ge2), p.b, DEFAULT_ENTRY_BUDGET)?;
    let top = top_degree_rank(&mac) as i64;
    let affine = mac.matrix.rank() as i64;
    let nb = count(nb_fqm(p.n, p.k, p.r, p.b));
    Ok(outcome(
        seed,
        top == nb,
        &[("rank_top_degree", top), ("rank_with_affine_columns", affine), ("rows", mac.matrix.rows() as i64)],
        &[("rank_top_degree", nb)],
    ))
}

/// The rows of B_b are independent and there are N_b of them.
pub fn bb_independence(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (sm, part) = build_sm_fqm(&can);
    let mac = macaulay(&sm.subsystem(&part.q_ge2), p.b, DEFAULT_ENTRY_BUDGET)?;
    let local: HashMap<usize, usize> = part.q_ge2.iter().enumerate().map(|(i, &pi)| (pi, i)).collect();
    let rows: Vec<usize> = basis_bb(&sm, &part, p.b)
        .iter()
        .map(|(mult, pi)| mac.row_of(mult, local[pi]).expect("B_b row present"))
        .collect();
    let size = rows.len() as i64;
    let rank = mac.matrix.select_rows(&rows).rank() as i64;
    let nb = count(nb_fqm(p.n, p.k, p.r, p.b));
    Ok(outcome(seed, size == nb && rank == nb, &[("size", size), ("rank", rank)], &[("size", nb), ("rank", nb)]))
}

/// Unfolding SM-F_{q^m} equals building SM-F_q from the MinRank form directly.
pub fn unfold_sm(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (sm, _) = build_sm_fqm(&can);
    let unfolded = build_sm_fq(&can.inst.ext, &sm);
    let direct = build_sm_minrank(&rd_to_minrank(&can.inst));
    let same_shape = unfolded.len() == direct.len() && unfolded.labels == direct.labels;
    let mismatches = if same_shape {
        unfolded.polys.iter().zip(&direct.polys).filter(|(a, b)| a != b).count() as i64
    } else {
        unfolded.len().max(direct.len()) as i64
    };
    let expected_len = (p.m as u64 * binom(p.n, p.r + 1)) as i64;
    Ok(outcome(
        seed,
        mismatches == 0 && unfolded.len() as i64 == expected_len,
        &[("polynomials", unfolded.len() as i64), ("mismatches", mismatches)],
        &[("polynomials", expected_len), ("mismatches", 0)],
    ))
}

/// Rank of MM-F_q against min(m·C(n−k−1, r), C(n, r) − 1).
pub fn mm_rank(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let mmfq = build_mm_fq(&can.inst.ext, &build_mm_fqm(&can));
    let rank = mmfq.coeffs.rank() as i64;
    let expected = ((p.m as u64 * binom(p.n - p.k - 1, p.r)).min(binom(p.n, p.r) - 1)) as i64;
    Ok(outcome(seed, rank == expected, &[("rank", rank)], &[("rank", expected)]))
}

/// SM-F_{q^m}+ Macaulay rank at exact degree b against
/// min(N_b − N_b^syz, columns − 1).
pub fn syzygy_count(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (sm, part) = build_sm_fqm(&can);
    let mmfq = build_mm_fq(&can.inst.ext, &build_mm_fqm(&can));
    let plus = reduce_sm_plus(&sm, &part, &mmfq)?;
    let mac = macaulay(&plus.system, p.b, DEFAULT_ENTRY_BUDGET)?;
    let rank = mac.matrix.rank() as i64;
    let cols = mac.matrix.cols() as i64;
    let predicted = count(nb_fqm(p.n, p.k, p.r, p.b) - nsyz(p.m, p.n, p.k, p.r, p.b));
    let expected = predicted.min(cols - 1);
    Ok(outcome(
        seed,
        rank == expected,
        &[("rank", rank), ("columns", cols), ("rows", mac.matrix.rows() as i64)],
        &[("rank", expected), ("n_b_minus_syzygies", predicted)],
    ))
}

/// Σ_I tr(β_i*·|H_y|_{T,I}) Q̃_I vanishes for every T and i, where Q̃_I is the
/// normal form modulo MM-F_q. The restricted sum (I avoiding position k+1)
/// is recorded alongside.
pub fn qtilde_relation(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let can = canonical(p, seed)?;
    let (n, k, r) = (p.n, p.k, p.r);
    let ext = &can.inst.ext;
    let f = ext.field();
    let (sm, _) = build_sm_fqm(&can);
    let red = MmReduction::new(&build_mm_fq(ext, &build_mm_fqm(&can)));
    let tilde: Vec<BilinearPoly> = sm.polys.iter().map(|q| red.normal_form(f, q)).collect();
    let idx = SubsetIndex::new(n, r + 1);
    let (mut total, mut bad, mut restricted_bad) = (0, 0, 0);
    for t in SubsetIndex::new(n - k - 1, r + 1).all() {
        let target = idx.rank(&shifted(&t, k + 1)).unwrap();
        let minors: Vec<Elem> = sm.labels.iter().map(|l| minor(&can.hy, &t, &l.set)).collect();
        for &d in ext.dual() {
            let mut full = BilinearPoly::default();
            let mut restricted = BilinearPoly::default();
            for (pi, q) in tilde.iter().enumerate() {
                let coeff = ext.trace(f.mul(d, minors[pi]));
                full.add_scaled(f, q, coeff);
                if pi == target || !sm.labels[pi].set.contains(&k) {
                    restricted.add_scaled(f, q, coeff);
                }
            }
            total += 1;
            bad += !full.is_zero() as i64;
            restricted_bad += !restricted.is_zero() as i64;
        }
    }
    Ok(outcome(
        seed,
        bad == 0,
        &[("relations", total), ("nonzero_residuals", bad), ("restricted_sum_residuals", restricted_bad)],
        &[("nonzero_residuals", 0)],
    ))
}

fn modeling_of(name: &str) -> Result<Modeling, LabError> {
    match name {
        "auto" => Ok(Modeling::Auto),
        "mm" => Ok(Modeling::Mm),
        "smplus" => Ok(Modeling::Smplus),
        other => Err(LabError::BadParams(format!("unknown modeling {other}"))),
    }
}

/// decode_rd with b ≤ params.b recovers the planted error through the
/// requested modeling.
pub fn decode(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let rd = instance(p, seed)?;
    let cfg = DecodeConfig { modeling: modeling_of(&p.modeling)?, b_max: p.b, ..DecodeConfig::default() };
    let planted = &rd.witness.as_ref().unwrap().e;
    Ok(match decode_rd(&rd, &cfg) {
        Ok(sol) => {
            let path_ok = p.modeling == "auto" || sol.transcript.modeling == p.modeling;
            let mut o = outcome(
                seed,
                sol.e == *planted && path_ok,
                &[("planted", (sol.e == *planted) as i64), ("b", sol.transcript.b.unwrap_or(0) as i64)],
                &[("planted", 1)],
            );
            o.note = Some(format!("path {}", sol.transcript.modeling));
            o
        }
        Err(err) => {
            let mut o = outcome(seed, false, &[("planted", 0)], &[("planted", 1)]);
            o.note = Some(err.to_string());
            o
        }
    })
}

fn rd_inner(rd: &RdInstance) -> Option<Vec<Elem>> {
    decode_rd(rd, &DecodeConfig::default()).ok().map(|s| s.e)
}

fn minrank_inner(inst: &MinRankInstance) -> Option<Vec<Elem>> {
    solve_minrank_sm(inst, 1 << 26).or_else(|| solve_minrank_exhaustive(inst))
}

/// Guess budget for the probabilistic drivers.
pub fn probabilistic_cap(guesses: usize) -> usize {
    64 * guesses
}

fn guess_space(q: u64, a: usize, r: usize) -> usize {
    q.pow((a * r) as u32) as usize
}

/// Deterministic RD hybrid: planted error within q^{ar} guesses; the
/// probabilistic driver's trial count is recorded for the median.
pub fn hybrid_rd(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let rd = gen_rd(p.q, p.m, p.n, p.k, p.r, seed)?;
    let planted = rd.witness.as_ref().unwrap().e.clone();
    let space = guess_space(p.q, p.a, p.r);
    let (det_ok, guesses, rerand) = match hybrid_driver_rd(&rd, p.a, HYBRID_ROUNDS, seed, rd_inner) {
        Ok(rep) => (rep.solution == planted && rep.guesses <= space, rep.guesses as i64, rep.rerandomizations as i64),
        Err(_) => (false, -1, -1),
    };
    let cap = probabilistic_cap(space);
    let trials = match hybrid_probabilistic_rd(&rd, p.a, cap, seed, rd_inner) {
        Ok(rep) if rep.solution == planted => rep.guesses as i64,
        _ => cap as i64 + 1,
    };
    Ok(outcome(
        seed,
        det_ok,
        &[("guesses", guesses), ("rerandomizations", rerand), ("probabilistic_trials", trials)],
        &[("max_guesses", space as i64)],
    ))
}

/// MinRank counterpart of `hybrid_rd`, with `k` read as K.
pub fn hybrid_minrank(p: &LabParams, seed: u64) -> Result<TrialOutcome, LabError> {
    let inst = gen_minrank(p.q, p.m, p.n, p.k, p.r, seed)?;
    let planted = inst.witness.clone().unwrap();
    let space = guess_space(p.q, p.a, p.r);
    let (det_ok, guesses, rerand) = match hybrid_driver_minrank(&inst, p.a, HYBRID_ROUNDS, seed, minrank_inner) {
        Ok(rep) => (rep.solution == planted && rep.guesses <= space, rep.guesses as i64, rep.rerandomizations as i64),
        Err(_) => (false, -1, -1),
    };
    let cap = probabilistic_cap(space);
    let trials = match hybrid_probabilistic_minrank(&inst, p.a, cap, seed, minrank_inner) {
        Ok(rep) if rep.solution == planted => rep.guesses as i64,
        _ => cap as i64 + 1,
    };
    Ok(outcome(
        seed,
        det_ok,
        &[("guesses", guesses), ("rerandomizations", rerand), ("probabilistic_trials", trials)],
        &[("max_guesses", space as i64)],
    ))
}

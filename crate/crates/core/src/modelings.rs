//! MaxMinors and Support-Minors systems, the Q-partition, the SM+ reduction
//! and bi-degree (b,1) Macaulay matrices.
//!
//! Monomial order: graded, then by the c_T variable (larger subset index is
//! larger), then lexicographic on x-exponents with x_1 largest. Restricted to
//! bilinear monomials this agrees with grevlex for x_1 > … > x_k > c_T.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::galois::{Elem, ExtField, Field};
use crate::instances::{CanonicalRd, MinRankInstance};
use crate::matlin::{maximal_minors, Matrix, SubsetIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelingError {
    #[error("MaxMinors system is overdetermined (rank {rank} of {unknowns} unknowns); solve it linearly")]
    MmSolvable { rank: usize, unknowns: usize },
    #[error("Macaulay matrix of {rows}x{cols} exceeds the entry budget")]
    BudgetExceeded { rows: usize, cols: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtTag {
    MmFqm,
    MmFq,
}

/// Linear equations in the c_T variables; column t is the c_T with subset index t.
#[derive(Clone, Debug)]
pub struct CtLinearSystem {
    pub tag: CtTag,
    pub coeffs: Matrix,
    pub index: SubsetIndex,
}

/// A bilinear term: linear variable (None for the affine part) times c_T.
pub type Term = (Option<usize>, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BilinearPoly {
    pub terms: BTreeMap<Term, Elem>,
}

impl BilinearPoly {
    pub fn add_term(&mut self, f: &Field, t: Term, c: Elem) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(t).or_insert(0);
        *v = f.add(*v, c);
        if *v == 0 {
            self.terms.remove(&t);
        }
    }

    /// self += c · other
    pub fn add_scaled(&mut self, f: &Field, other: &BilinearPoly, c: Elem) {
        for (&t, &v) in &other.terms {
            self.add_term(f, t, f.mul(c, v));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, f: &Field, x: &[Elem], c: &[Elem]) -> Elem {
        self.terms.iter().fold(0, |acc, (&(xi, ci), &v)| {
            let t = f.mul(v, c[ci]);
            f.add(acc, xi.map_or(t, |i| f.mul(t, x[i])))
        })
    }

    /// Largest term under the module's monomial order.
    pub fn leading_term(&self) -> Option<Term> {
        self.terms.keys().copied().max_by(|a, b| term_cmp(*a, *b))
    }

    /// Multiplies an affine-only polynomial by x_j.
    pub fn times_x(&self, j: usize) -> BilinearPoly {
        assert!(self.terms.keys().all(|t| t.0.is_none()), "not linear in c only");
        BilinearPoly { terms: self.terms.iter().map(|(&(_, c), &v)| ((Some(j), c), v)).collect() }
    }
}

fn term_cmp(a: Term, b: Term) -> Ordering {
    let deg = |t: Term| t.0.is_some() as u8;
    deg(a)
        .cmp(&deg(b))
        .then(a.1.cmp(&b.1))
        .then_with(|| b.0.cmp(&a.0))
}

/// Which polynomial a row of a system came from: the subset I and, for
/// unfolded systems, the trace component i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyLabel {
    pub component: Option<usize>,
    pub set: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct BilinearSystem {
    pub field: Field,
    pub nx: usize,
    pub c_index: SubsetIndex,
    /// c_T indices that may occur, ascending.
    pub active: Vec<usize>,
    pub polys: Vec<BilinearPoly>,
    pub labels: Vec<PolyLabel>,
}

impl BilinearSystem {
    pub fn len(&self) -> usize {
        self.polys.len()
    }
    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn subsystem(&self, idx: &[usize]) -> BilinearSystem {
        BilinearSystem {
            polys: idx.iter().map(|&i| self.polys[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            ..self.clone()
        }
    }

    pub fn vanishes_at(&self, x: &[Elem], c: &[Elem]) -> bool {
        self.polys.iter().all(|p| p.eval(&self.field, x, c) == 0)
    }
}

/// Q_0, Q_1, Q_{≥2} by #(I ∩ [0, k]); entries are polynomial indices.
#[derive(Clone, Debug, Default)]
pub struct QPartition {
    pub q0: Vec<usize>,
    pub q1: Vec<usize>,
    pub q_ge2: Vec<usize>,
}

/// P_J = Σ_T |H_y|_{J,T} c_T for every r-subset J of [0, n−k−2].
pub fn build_mm_fqm(can: &CanonicalRd) -> CtLinearSystem {
    let (n, k, r) = (can.inst.n, can.inst.k, can.inst.r);
    let rows: Vec<Vec<Elem>> = SubsetIndex::new(n - k - 1, r)
        .all()
        .iter()
        .map(|j| maximal_minors(&can.hy.select_rows(j)))
        .collect();
    let index = SubsetIndex::new(n, r);
    CtLinearSystem { tag: CtTag::MmFqm, coeffs: Matrix::from_rows(can.inst.ext.field(), &rows, index.count()), index }
}

/// Unfolds MM-F_{q^m}: row J·m + i holds tr(β_i* ·) of row J.
pub fn build_mm_fq(ext: &ExtField, mm: &CtLinearSystem) -> CtLinearSystem {
    let f = ext.field();
    let cols = mm.coeffs.cols();
    let mut rows = Vec::with_capacity(mm.coeffs.rows() * ext.m());
    for j in 0..mm.coeffs.rows() {
        for &d in ext.dual() {
            rows.push(mm.coeffs.row(j).iter().map(|&a| ext.trace(f.mul(d, a))).collect());
        }
    }
    CtLinearSystem { tag: CtTag::MmFq, coeffs: Matrix::from_rows(ext.base(), &rows, cols), index: mm.index }
}

/// The P_J as polynomials in the c_T only.
pub fn mm_polys(mm: &CtLinearSystem) -> Vec<BilinearPoly> {
    let f = mm.coeffs.field();
    (0..mm.coeffs.rows())
        .map(|j| {
            let mut p = BilinearPoly::default();
            for (t, &v) in mm.coeffs.row(j).iter().enumerate() {
                p.add_term(f, (None, t), v);
            }
            p
        })
        .collect()
}

/// Laplace expansion of |(row ; C)|_{*,I} along the first row, where
/// `entry(i)` gives the row entry at column i as a list of terms.
fn support_minor<F>(f: &Field, c_index: &SubsetIndex, set: &[usize], entry: F) -> BilinearPoly
where
    F: Fn(usize) -> Vec<(Option<usize>, Elem)>,
{
    let mut p = BilinearPoly::default();
    for u in 0..set.len() {
        let mut rest = set.to_vec();
        let iu = rest.remove(u);
        let ci = c_index.rank(&rest).unwrap();
        for (xv, coeff) in entry(iu) {
            let c = if u % 2 == 0 { coeff } else { f.neg(coeff) };
            p.add_term(f, (xv, ci), c);
        }
    }
    p
}

/// Q_I = |(xG + y ; C)|_{*,I} for all (r+1)-subsets I, with its partition.
pub fn build_sm_fqm(can: &CanonicalRd) -> (BilinearSystem, QPartition) {
    let inst = &can.inst;
    let (n, k, r) = (inst.n, inst.k, inst.r);
    let f = inst.ext.field().clone();
    let c_index = SubsetIndex::new(n, r);
    let mut polys = Vec::new();
    let mut labels = Vec::new();
    let mut part = QPartition::default();
    for (idx, set) in SubsetIndex::new(n, r + 1).all().into_iter().enumerate() {
        polys.push(support_minor(&f, &c_index, &set, |i| {
            let mut v: Vec<_> = (0..k).map(|j| (Some(j), inst.g.get(j, i))).collect();
            v.push((None, inst.y[i]));
            v
        }));
        match set.iter().filter(|&&i| i <= k).count() {
            0 => part.q0.push(idx),
            1 => part.q1.push(idx),
            _ => part.q_ge2.push(idx),
        }
        labels.push(PolyLabel { component: None, set });
    }
    let sys = BilinearSystem { field: f, nx: k, c_index, active: (0..c_index.count()).collect(), polys, labels };
    (sys, part)
}

/// Unfolds SM-F_{q^m} after x_j = Σ_i β_i x_{i,j}; variable x_{i,j} has index
/// j·m + i. Polynomial order: source polynomial major, component minor.
pub fn build_sm_fq(ext: &ExtField, sm: &BilinearSystem) -> BilinearSystem {
    let (f, m) = (ext.field(), ext.m());
    let mut polys = Vec::with_capacity(sm.len() * m);
    let mut labels = Vec::with_capacity(sm.len() * m);
    for (p, label) in sm.polys.iter().zip(&sm.labels) {
        for (ip, &d) in ext.dual().iter().enumerate() {
            let mut u = BilinearPoly::default();
            for (&(xv, c), &a) in &p.terms {
                let da = f.mul(d, a);
                match xv {
                    None => u.add_term(ext.base(), (None, c), ext.trace(da)),
                    Some(j) => {
                        for (i, &beta) in ext.basis().iter().enumerate() {
                            u.add_term(ext.base(), (Some(j * m + i), c), ext.trace(f.mul(da, beta)));
                        }
                    }
                }
            }
            polys.push(u);
            labels.push(PolyLabel { component: Some(ip), set: label.set.clone() });
        }
    }
    BilinearSystem { field: ext.base().clone(), nx: sm.nx * m, polys, labels, ..sm.clone() }
}

/// Support-Minors directly from a MinRank instance: Q_{i,I} = |(r_i ; C)|_{*,I}
/// with r_i the i-th row of M_0 + Σ x_v M_v.
pub fn build_sm_minrank(inst: &MinRankInstance) -> BilinearSystem {
    let f = &inst.field;
    let c_index = SubsetIndex::new(inst.n, inst.r);
    let mut polys = Vec::new();
    let mut labels = Vec::new();
    for set in SubsetIndex::new(inst.n, inst.r + 1).all() {
        for i in 0..inst.m {
            polys.push(support_minor(f, &c_index, &set, |col| {
                let mut v: Vec<_> = inst.matrices[1..].iter().enumerate().map(|(xv, mv)| (Some(xv), mv.get(i, col))).collect();
                v.push((None, inst.matrices[0].get(i, col)));
                v
            }));
            labels.push(PolyLabel { component: Some(i), set: set.clone() });
        }
    }
    BilinearSystem { field: f.clone(), nx: inst.big_k, c_index, active: (0..c_index.count()).collect(), polys, labels }
}

/// Echelonized MM-F_q with pivots on the largest c_T: pivot c_p equals
/// Σ coeff·c_t over the free c_t.
#[derive(Clone, Debug)]
pub struct MmReduction {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub substitutions: Vec<Vec<(usize, Elem)>>,
    pub free: Vec<usize>,
}

impl MmReduction {
    pub fn new(mmfq: &CtLinearSystem) -> MmReduction {
        let f = mmfq.coeffs.field();
        let nc = mmfq.coeffs.cols();
        let desc: Vec<usize> = (0..nc).rev().collect();
        let e = mmfq.coeffs.select_cols(&desc).echelonize();
        let pivots: Vec<usize> = e.pivots.iter().map(|&p| desc[p]).collect();
        let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
        let substitutions = (0..e.rank)
            .map(|i| {
                free.iter()
                    .filter_map(|&t| {
                        let v = e.rref.get(i, nc - 1 - t);
                        (v != 0).then(|| (t, f.neg(v)))
                    })
                    .collect()
            })
            .collect();
        MmReduction { rank: e.rank, pivots, substitutions, free }
    }

    /// Normal form of a polynomial over F_{q^m} (F_q embeds by code).
    pub fn normal_form(&self, f: &Field, p: &BilinearPoly) -> BilinearPoly {
        let pos: HashMap<usize, usize> = self.pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = BilinearPoly::default();
        for (&(xv, c), &v) in &p.terms {
            match pos.get(&c) {
                None => out.add_term(f, (xv, c), v),
                Some(&i) => {
                    for &(t, s) in &self.substitutions[i] {
                        out.add_term(f, (xv, t), f.mul(v, s));
                    }
                }
            }
        }
        out
    }

    /// Completes free c_T values with the eliminated ones.
    pub fn back_substitute(&self, f: &Field, values: &mut [Elem]) {
        for (i, &p) in self.pivots.iter().enumerate().rev() {
            values[p] = self.substitutions[i].iter().fold(0, |acc, &(t, s)| f.add(acc, f.mul(s, values[t])));
        }
    }
}

#[derive(Clone, Debug)]
pub struct SmPlus {
    pub system: BilinearSystem,
    pub reduction: MmReduction,
}

/// SM-F_{q^m}+: the Q_{≥2} polynomials reduced modulo MM-F_q.
pub fn reduce_sm_plus(sm: &BilinearSystem, part: &QPartition, mmfq: &CtLinearSystem) -> Result<SmPlus, ModelingError> {
    let reduction = MmReduction::new(mmfq);
    let unknowns = mmfq.coeffs.cols();
    if reduction.rank + 1 >= unknowns {
        return Err(ModelingError::MmSolvable { rank: reduction.rank, unknowns });
    }
    let mut system = sm.subsystem(&part.q_ge2);
    for p in system.polys.iter_mut() {
        *p = reduction.normal_form(&sm.field, p);
    }
    system.active = reduction.free.clone();
    Ok(SmPlus { system, reduction })
}

/// Monomial x^α · c_T.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: Vec<u8>,
    pub c: usize,
}

impl Monomial {
    pub fn x_degree(&self) -> usize {
        self.x.iter().map(|&e| e as usize).sum()
    }
    fn key(&self) -> (usize, usize, &[u8]) {
        (self.x_degree(), self.c, &self.x)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponent vectors of total degree d in nvars variables.
pub fn x_monomials(nvars: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, var: usize, left: usize) {
        if var + 1 == cur.len() {
            cur[var] = left as u8;
            out.push(cur.clone());
            cur[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e as u8;
            rec(out, cur, var + 1, left - e);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut vec![0; nvars], 0, d);
    out
}

#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    pub b: usize,
    pub matrix: Matrix,
    /// (multiplier exponents, source polynomial index) per row.
    pub row_labels: Vec<(Vec<u8>, usize)>,
    /// Columns in decreasing monomial order.
    pub columns: Vec<Monomial>,
}

impl MacaulayMatrix {
    pub fn row_of(&self, mult: &[u8], poly: usize) -> Option<usize> {
        self.row_labels.iter().position(|(m, p)| m == mult && *p == poly)
    }
}

/// Default cap on rows × columns of a Macaulay matrix.
pub const DEFAULT_ENTRY_BUDGET: usize = 200_000_000;

/// Rows x^α·f for |α| = b − 1.
pub fn macaulay(sys: &BilinearSystem, b: usize, budget: usize) -> Result<MacaulayMatrix, ModelingError> {
    assert!(b >= 1, "b must be at least 1");
    build_macaulay(sys, b, x_monomials(sys.nx, b - 1), b - 1, budget)
}

/// Rows x^α·f for every |α| ≤ b − 1.
pub fn macaulay_upto(sys: &BilinearSystem, b: usize, budget: usize) -> Result<MacaulayMatrix, ModelingError> {
    assert!(b >= 1, "b must be at least 1");
    let mults = (0..b).flat_map(|d| x_monomials(sys.nx, d)).collect();
    build_macaulay(sys, b, mults, 0, budget)
}

/// Columns are every x^β·c_T with T active and min_mult ≤ |β| ≤ b, including
/// monomials no row mentions: those are unknowns the kernel must be able to hold.
fn build_macaulay(sys: &BilinearSystem, b: usize, mults: Vec<Vec<u8>>, min_mult: usize, budget: usize) -> Result<MacaulayMatrix, ModelingError> {
    let f = &sys.field;
    let rows_est = mults.len() * sys.len();
    if rows_est > budget {
        return Err(ModelingError::BudgetExceeded { rows: rows_est, cols: 0 });
    }
    let mut row_terms: Vec<Vec<(Monomial, Elem)>> = Vec::with_capacity(mults.len() * sys.len());
    let mut row_labels = Vec::with_capacity(mults.len() * sys.len());
    for mult in &mults {
        for (pi, p) in sys.polys.iter().enumerate() {
            let terms: Vec<(Monomial, Elem)> = p
                .terms
                .iter()
                .map(|(&(xv, c), &v)| {
                    let mut x = mult.clone();
                    if let Some(i) = xv {
                        x[i] += 1;
                    }
                    (Monomial { x, c }, v)
                })
                .collect();
            row_terms.push(terms);
            row_labels.push((mult.clone(), pi));
        }
    }
    let mut columns: Vec<Monomial> = (min_mult..=b)
        .flat_map(|d| x_monomials(sys.nx, d))
        .flat_map(|x| sys.active.iter().map(move |&c| Monomial { x: x.clone(), c }))
        .collect();
    columns.sort_by(|a, b| b.cmp(a));
    let (rows, cols) = (row_terms.len(), columns.len());
    if rows.saturating_mul(cols) > budget {
        return Err(ModelingError::BudgetExceeded { rows, cols });
    }
    let col_of: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = Matrix::zeros(f, rows, cols);
    for (i, terms) in row_terms.iter().enumerate() {
        for (mono, v) in terms {
            matrix.set(i, col_of[mono], *v);
        }
    }
    Ok(MacaulayMatrix { b, matrix, row_labels, columns })
}

/// The pairs (multiplier, Q_I) of B_b: I ∈ Q_{≥2} with smallest element i_1 and
/// multipliers of degree b − 1 supported on x_{i_1}, …, x_{k}.
pub fn basis_bb(sys: &BilinearSystem, part: &QPartition, b: usize) -> Vec<(Vec<u8>, usize)> {
    let k = sys.nx;
    let mut out = Vec::new();
    for &pi in &part.q_ge2 {
        let i1 = sys.labels[pi].set[0];
        for tail in x_monomials(k - i1, b - 1) {
            let mut mult = vec![0u8; i1];
            mult.extend(tail);
            out.push((mult, pi));
        }
    }
    out.sort_by_key(|(m, p)| (Reverse(m.clone()), *p));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{canonicalize, gen_rd, rd_to_minrank};
    use crate::matlin::binom;

    fn planted_c(can: &CanonicalRd) -> Vec<Elem> {
        maximal_minors(&can.inst.witness.as_ref().unwrap().c)
    }

    #[test]
    fn mm_counts_and_planted_zero() {
        let rd = gen_rd(2, 7, 8, 4, 2, 1).unwrap();
        let can = canonicalize(&rd).unwrap();
        let mm = build_mm_fqm(&can);
        assert_eq!(mm.coeffs.rows(), 3);
        let c = planted_c(&can);
        assert!(mm.coeffs.mul_vec(&c).iter().all(|&v| v == 0));
        let idx = SubsetIndex::new(8, 2);
        for (ji, j) in SubsetIndex::new(3, 2).all().iter().enumerate() {
            let shifted: Vec<usize> = j.iter().map(|&t| t + 5).collect();
            let lt = idx.rank(&shifted).unwrap();
            assert_eq!(mm.coeffs.get(ji, lt), 1);
            assert!((lt + 1..28).all(|t| mm.coeffs.get(ji, t) == 0));
        }
        let mmfq = build_mm_fq(&rd.ext, &mm);
        assert_eq!(mmfq.coeffs.rows(), 21);
        assert!(mmfq.coeffs.mul_vec(&c).iter().all(|&v| v == 0));
    }

    #[test]
    fn sm_counts_and_leading_terms() {
        let rd = gen_rd(2, 7, 8, 4, 2, 2).unwrap();
        let can = canonicalize(&rd).unwrap();
        let (sm, part) = build_sm_fqm(&can);
        assert_eq!(sm.len(), 56);
        assert_eq!(part.q_ge2.len(), 40);
        assert_eq!(part.q0.len(), 1);
        assert_eq!(part.q1.len(), 15);
        let w = can.inst.witness.as_ref().unwrap();
        let xs: Vec<Elem> = w.x.iter().map(|&v| rd.ext.field().neg(v)).collect();
        assert!(sm.vanishes_at(&xs, &planted_c(&can)));
        let idx = SubsetIndex::new(8, 2);
        for &pi in &part.q_ge2 {
            let set = &sm.labels[pi].set;
            let lt = sm.polys[pi].leading_term().unwrap();
            assert_eq!(lt, (Some(set[0]), idx.rank(&set[1..]).unwrap()));
            for j in SubsetIndex::new(3, 2).all() {
                let c = idx.rank(&j.iter().map(|&t| t + 5).collect::<Vec<_>>()).unwrap();
                assert!(sm.polys[pi].terms.keys().all(|t| t.1 != c));
            }
        }
    }

    #[test]
    fn unfolded_matches_minrank_construction() {
        let rd = gen_rd(2, 3, 5, 2, 1, 4).unwrap();
        let can = canonicalize(&rd).unwrap();
        let (sm, _) = build_sm_fqm(&can);
        let unfolded = build_sm_fq(&rd.ext, &sm);
        let direct = build_sm_minrank(&rd_to_minrank(&can.inst));
        assert_eq!(unfolded.len(), 3 * 10);
        assert_eq!(unfolded.polys, direct.polys);
        assert_eq!(unfolded.labels, direct.labels);
    }

    #[test]
    fn sm_plus_counts() {
        let rd = gen_rd(2, 7, 8, 4, 2, 3).unwrap();
        let can = canonicalize(&rd).unwrap();
        let (sm, part) = build_sm_fqm(&can);
        let mmfq = build_mm_fq(&rd.ext, &build_mm_fqm(&can));
        let plus = reduce_sm_plus(&sm, &part, &mmfq).unwrap();
        assert_eq!(plus.system.active.len(), 7);
        assert_eq!(plus.system.len(), 40);
        let w = can.inst.witness.as_ref().unwrap();
        let xs: Vec<Elem> = w.x.iter().map(|&v| rd.ext.field().neg(v)).collect();
        assert!(plus.system.vanishes_at(&xs, &planted_c(&can)));
        for p in &plus.system.polys {
            assert!(p.terms.keys().all(|t| plus.system.active.contains(&t.1)));
        }

        let rd = gen_rd(2, 7, 10, 3, 2, 3).unwrap();
        let can = canonicalize(&rd).unwrap();
        let (sm, part) = build_sm_fqm(&can);
        let mmfq = build_mm_fq(&rd.ext, &build_mm_fqm(&can));
        assert!(matches!(reduce_sm_plus(&sm, &part, &mmfq), Err(ModelingError::MmSolvable { .. })));
    }

    #[test]
    fn macaulay_shape() {
        let rd = gen_rd(2, 7, 8, 4, 2, 5).unwrap();
        let can = canonicalize(&rd).unwrap();
        let (sm, part) = build_sm_fqm(&can);
        let q2 = sm.subsystem(&part.q_ge2);
        let m1 = macaulay(&q2, 1, DEFAULT_ENTRY_BUDGET).unwrap();
        assert_eq!(m1.matrix.rows(), 40);
        assert_eq!(m1.matrix.rank(), 40);
        let m2 = macaulay(&q2, 2, DEFAULT_ENTRY_BUDGET).unwrap();
        assert_eq!(m2.matrix.rows() as u64, binom(4, 1) * 40);
        assert!(m2.columns.windows(2).all(|w| w[0] > w[1]));
        assert!(macaulay(&q2, 2, 10).is_err());
    }

    #[test]
    fn bb_count_small() {
        let rd = gen_rd(2, 3, 5, 2, 1, 6).unwrap();
        let can = canonicalize(&rd).unwrap();
        let (sm, part) = build_sm_fqm(&can);
        assert_eq!(basis_bb(&sm, &part, 1).len(), 3);
        assert_eq!(basis_bb(&sm, &part, 2).len(), 5);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(x_monomials(3, 2).len(), 6);
        assert_eq!(x_monomials(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(x_monomials(2, 1), vec![vec![1, 0], vec![0, 1]]);
    }
}

//! Bit-complexity formulas and their minimization over (a, b, p).
//!
//! Counts are exact big integers; logarithms are taken only when a cost is
//! assembled.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use rayon::prelude::*;
use std::borrow::Cow;
use std::sync::OnceLock;

const PASCAL_ROWS: usize = 400;

fn pascal() -> &'static Vec<Vec<BigUint>> {
    static TABLE: OnceLock<Vec<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(PASCAL_ROWS);
        for n in 0..PASCAL_ROWS {
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

/// Exact binomial coefficient; zero when k > n.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    if (n as usize) < PASCAL_ROWS {
        return pascal()[n as usize][k as usize].clone();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn binom_ref(n: i64, k: i64) -> Cow<'static, BigUint> {
    if (0..PASCAL_ROWS as i64).contains(&n) && (0..=n).contains(&k) {
        Cow::Borrowed(&pascal()[n as usize][k as usize])
    } else {
        Cow::Owned(binomial(n, k))
    }
}

fn bi(n: i64, k: i64) -> BigInt {
    BigInt::from(binom_ref(n, k).into_owned())
}

pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    ((x >> shift).to_u64().unwrap() as f64).log2() + shift as f64
}

/// N_b over F_{q^m}: dimension of the Q_{≥2} span at bi-degree (b, 1).
pub fn nb_fqm(n: usize, k: usize, r: usize, b: usize) -> BigInt {
    let (n, k, r, b) = (n as i64, k as i64, r as i64, b as i64);
    let sum: BigUint = (1..=k).map(|i| binom_ref(n - i, r).as_ref() * binom_ref(k + b - 1 - i, b - 1).as_ref()).sum();
    BigInt::from(sum) - bi(n - k - 1, r) * bi(k + b - 1, b)
}

/// M_b over F_{q^m}: monomials of bi-degree (b, 1) in Q_{≥2}.
pub fn mb_fqm(n: usize, k: usize, r: usize, b: usize) -> BigInt {
    let (n, k, r, b) = (n as i64, k as i64, r as i64, b as i64);
    bi(k + b - 1, b) * (bi(n, r) - bi(n - k - 1, r))
}

/// Conjectured number of syzygies brought by the MM-F_q reduction.
pub fn nsyz(m: usize, n: usize, k: usize, r: usize, b: usize) -> BigInt {
    let (m, n, k, r, b) = (m as i64, n as i64, k as i64, r as i64, b as i64);
    let sum: BigInt = (1..=b)
        .map(|i| {
            let t = bi(k + b - i - 1, b - i) * bi(n - k - 1, r + i);
            if i % 2 == 1 {
                t
            } else {
                -t
            }
        })
        .sum();
    sum * (m - 1)
}

pub fn nb_fq(m: usize, n: usize, k: usize, r: usize, b: usize) -> BigInt {
    nb_fqm(n, k, r, b) - nsyz(m, n, k, r, b)
}

/// M_b for SM-F_{q^m}+; non-positive when MM-F_q alone is overdetermined.
pub fn mb_fq(m: usize, n: usize, k: usize, r: usize, b: usize) -> BigInt {
    let (m, n, k, r, b) = (m as i64, n as i64, k as i64, r as i64, b as i64);
    bi(k + b - 1, b) * (bi(n, r) - bi(n - k - 1, r) * m)
}

/// Whether MM-F_q alone determines the c_T: m·C(n−k−1, r) ≥ C(n, r) − 1.
pub fn mm_overdetermined(m: usize, n: usize, k: usize, r: usize) -> bool {
    let eqs = binomial(n as i64 - k as i64 - 1, r as i64) * m;
    eqs + 1u32 >= binomial(n as i64, r as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Rd,
    MinRank,
}

/// (q, m, n, k, r) for RD; for MinRank `k` holds K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AttackParams {
    pub kind: ProblemKind,
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl AttackParams {
    pub fn rd(q: u64, m: usize, n: usize, k: usize, r: usize) -> AttackParams {
        AttackParams { kind: ProblemKind::Rd, q, m, n, k, r }
    }

    pub fn minrank(q: u64, m: usize, n: usize, big_k: usize, r: usize) -> AttackParams {
        AttackParams { kind: ProblemKind::MinRank, q, m, n, k: big_k, r }
    }

    /// Parameters after betting that a positions/columns vanish.
    pub fn shortened(&self, a: usize) -> Option<AttackParams> {
        let drop = match self.kind {
            ProblemKind::Rd => a,
            ProblemKind::MinRank => a * self.m,
        };
        (self.k > drop && self.n > a + self.r).then(|| AttackParams { n: self.n - a, k: self.k - drop, ..*self })
    }

    fn log2_q(&self) -> f64 {
        (self.q as f64).log2()
    }
}

/// Cost conventions: linear-algebra exponent and bit-operation constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Conventions {
    pub omega: f64,
    /// Constant in front of Strassen-like linear algebra.
    pub strassen: f64,
    /// Binary operations per multiplication in F_16.
    pub gf16_mul: f64,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { omega: 2.0, strassen: 7.0, gf16_mul: 23.0 }
    }
}

impl Conventions {
    /// log2 of the constant factor applied to linear-algebra costs over F_q.
    pub fn linear_algebra_constant(&self, q: u64) -> f64 {
        self.strassen.log2() + if q == 16 { self.gf16_mul.log2() } else { 0.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostEstimate {
    pub attack: String,
    pub bits: f64,
    pub b: Option<usize>,
    pub a: usize,
    pub p: usize,
    pub n_cols: Option<usize>,
    pub solvable: bool,
}

impl CostEstimate {
    fn unsolvable(attack: &str) -> CostEstimate {
        CostEstimate { attack: attack.into(), bits: f64::INFINITY, b: None, a: 0, p: 0, n_cols: None, solvable: false }
    }

    /// Bits rounded up, as tables report them.
    pub fn reported(&self) -> Option<u64> {
        self.solvable.then(|| (self.bits - 1e-9).ceil() as u64)
    }
}

/// Cost of an algorithm on the plain (unguessed) problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlainCost {
    pub bits: f64,
    pub b: Option<usize>,
    pub p: usize,
    pub n_cols: Option<usize>,
}

/// A plain-cost function that `hybrid_minimize` can wrap.
pub trait CostModel {
    fn name(&self) -> &str;
    fn plain(&self, params: &AttackParams, conv: &Conventions) -> Option<PlainCost>;
}

/// min over a ≥ 0 of a·r·log2 q + T_plain(shortened by a).
pub fn hybrid_minimize(model: &dyn CostModel, params: &AttackParams, conv: &Conventions) -> CostEstimate {
    let mut best = CostEstimate::unsolvable(model.name());
    for a in 0..params.n {
        let Some(small) = params.shortened(a) else { break };
        let guess = (a * params.r) as f64 * params.log2_q();
        if guess >= best.bits {
            break;
        }
        if let Some(pc) = model.plain(&small, conv) {
            let bits = guess + pc.bits;
            if bits < best.bits {
                best = CostEstimate { attack: model.name().into(), bits, b: pc.b, a, p: pc.p, n_cols: pc.n_cols, solvable: true };
            }
        }
    }
    best
}

/// SM-F_{q^m}+ linearized at the smallest solvable b, with optional puncturing.
#[derive(Clone, Copy, Debug)]
pub struct SmPlusModel {
    pub b_max: usize,
    pub puncture: bool,
}

impl Default for SmPlusModel {
    fn default() -> Self {
        SmPlusModel { b_max: 10, puncture: true }
    }
}

impl SmPlusModel {
    /// Cost at fixed (b, p), or None when not solvable there.
    pub fn at(&self, params: &AttackParams, conv: &Conventions, b: usize, p: usize) -> Option<f64> {
        let (m, k, r) = (params.m, params.k, params.r);
        let n = params.n.checked_sub(p)?;
        if n < k + r + 2 || mm_overdetermined(m, n, k, r) {
            return None;
        }
        let nb = nb_fq(m, n, k, r, b);
        let mb = mb_fq(m, n, k, r, b);
        if nb < mb.clone() - 1 || !mb.is_positive() {
            return None;
        }
        let nb = nb.to_biguint()?;
        let mb = mb.to_biguint()?;
        let bits = 2.0 * (m as f64).log2() + log2_big(&nb) + (conv.omega - 1.0) * log2_big(&mb);
        Some(bits + conv.linear_algebra_constant(params.q))
    }
}

impl CostModel for SmPlusModel {
    fn name(&self) -> &str {
        "sm-fqm+"
    }

    fn plain(&self, params: &AttackParams, conv: &Conventions) -> Option<PlainCost> {
        let p_max = if self.puncture { params.n.saturating_sub(params.k + params.r + 2) } else { 0 };
        (0..=p_max)
            .into_par_iter()
            .filter_map(|p| {
                // the smallest solvable b is the cheapest at fixed p
                (1..=self.b_max)
                    .find_map(|b| self.at(params, conv, b, p).map(|bits| PlainCost { bits, b: Some(b), p, n_cols: None }))
            })
            .min_by(|x, y| x.bits.total_cmp(&y.bits).then(x.p.cmp(&y.p)))
    }
}

/// SM+ estimate for RD, hybrid over a and minimized over (b, p).
pub fn smplus_cost(params: &AttackParams, conv: &Conventions) -> CostEstimate {
    hybrid_minimize(&SmPlusModel::default(), params, conv)
}

/// MaxMinors with a fixed columns of C and p punctured positions, when
/// overdetermined: m·C(n−p−k−1, r) ≥ C(n−p−a, r) − 1. Costs q^{ar}·C(n−p−a, r)^ω.
pub fn mm_cost_at(params: &AttackParams, conv: &Conventions, a: usize, p: usize) -> Option<f64> {
    let (m, n, k, r) = (params.m as i64, params.n as i64, params.k as i64, params.r as i64);
    let (a, p) = (a as i64, p as i64);
    let eqs = binomial(n - p - k - 1, r) * m as u64;
    let unknowns = binomial(n - p - a, r);
    if eqs.is_zero() || unknowns.is_zero() || eqs + 1u32 < unknowns {
        return None;
    }
    Some((a * r) as f64 * params.log2_q() + conv.omega * log2_big(&unknowns) + conv.linear_algebra_constant(params.q))
}

/// `mm_cost_at` minimized over (a, p).
pub fn mm_cost(params: &AttackParams, conv: &Conventions) -> CostEstimate {
    let mut best = CostEstimate::unsolvable("mm-fq");
    for p in 0..params.n.saturating_sub(params.k + params.r) {
        // past the first overdetermined a only guessing cost grows
        let found = (0..=params.n - p - params.r).find_map(|a| mm_cost_at(params, conv, a, p).map(|bits| (a, bits)));
        if let Some((a, bits)) = found {
            if bits < best.bits {
                best = CostEstimate { attack: "mm-fq".into(), bits, b: None, a, p, n_cols: None, solvable: true };
            }
        }
    }
    best
}

/// Best combinatorial attack: (n−k)^ω m^ω q^{r⌈(k+1)m/n⌉ − m}.
pub fn comb_cost(params: &AttackParams, conv: &Conventions) -> CostEstimate {
    let (m, n, k, r) = (params.m, params.n, params.k, params.r);
    let exponent = (r * ((k + 1) * m).div_ceil(n)) as f64 - m as f64;
    let bits = conv.omega * (((n - k) * m) as f64).log2() + exponent * params.log2_q();
    CostEstimate { attack: "comb".into(), bits, b: None, a: 0, p: 0, n_cols: None, solvable: true }
}

/// Kernel attack on MinRank: a = ⌈K/n⌉ guessed kernel vectors, q^{ar}·K^ω.
pub fn kernel_cost(params: &AttackParams, conv: &Conventions) -> CostEstimate {
    let a = params.k.div_ceil(params.n);
    let bits = (a * params.r) as f64 * params.log2_q()
        + conv.omega * (params.k as f64).log2()
        + conv.linear_algebra_constant(params.q);
    CostEstimate { attack: "kernel".into(), bits, b: None, a, p: 0, n_cols: None, solvable: true }
}

/// Support-Minors on generic MinRank (prior-work count, valid for b < q),
/// restricted to n_cols ≤ n columns. With K′ = K + 1 linear variables:
///
/// N_b = Σ_{i=1}^{b} (−1)^{i+1} C(n_cols, r+i) C(m+i−1, i) C(K′+b−i−1, b−i)
/// M_b = C(n_cols, r) C(K′+b−1, b)
///
/// solvable when N_b ≥ M_b − 1, cost N_b·M_b^{ω−1}.
#[derive(Clone, Copy, Debug)]
pub struct ExternalSmModel {
    pub b_max: usize,
}

impl Default for ExternalSmModel {
    fn default() -> Self {
        ExternalSmModel { b_max: 10 }
    }
}

impl ExternalSmModel {
    pub fn counts(params: &AttackParams, b: usize, n_cols: usize) -> (BigInt, BigInt) {
        let (m, kk, r, b, nc) = (params.m as i64, params.k as i64 + 1, params.r as i64, b as i64, n_cols as i64);
        let nb: BigInt = (1..=b)
            .map(|i| {
                let t = bi(nc, r + i) * bi(m + i - 1, i) * bi(kk + b - i - 1, b - i);
                if i % 2 == 1 {
                    t
                } else {
                    -t
                }
            })
            .sum();
        (nb, bi(nc, r) * bi(kk + b - 1, b))
    }
}

impl CostModel for ExternalSmModel {
    fn name(&self) -> &str {
        "sm-generic"
    }

    fn plain(&self, params: &AttackParams, conv: &Conventions) -> Option<PlainCost> {
        let b_top = self.b_max.min(params.r + 1).min(params.q as usize - 1);
        let mut best: Option<PlainCost> = None;
        for b in 1..=b_top {
            for nc in params.r + 1..=params.n {
                let (nb, mb) = Self::counts(params, b, nc);
                if nb < mb.clone() - 1 || !nb.is_positive() {
                    continue;
                }
                let bits = log2_big(&nb.to_biguint()?)
                    + (conv.omega - 1.0) * log2_big(&mb.to_biguint()?)
                    + conv.linear_algebra_constant(params.q);
                if best.is_none_or(|c| bits < c.bits) {
                    best = Some(PlainCost { bits, b: Some(b), p: 0, n_cols: Some(nc) });
                }
            }
        }
        best
    }
}

/// The RD instance behind a key attack on an LRPC-based scheme.
pub fn key_attack_params(q: u64, k: usize, m: usize, d: usize) -> AttackParams {
    let drop = k / d;
    AttackParams::rd(q, m, 2 * k - drop, k - drop, d)
}

pub fn message_attack_params(q: u64, k: usize, m: usize, r: usize) -> AttackParams {
    AttackParams::rd(q, m, 2 * k, k, r)
}

/// A named parameter set of an LRPC-based scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchemePreset {
    pub name: &'static str,
    pub q: u64,
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub d: usize,
}

pub const SCHEME_PRESETS: [SchemePreset; 6] = [
    SchemePreset { name: "new2rollo-i-128", q: 2, k: 83, m: 73, r: 7, d: 8 },
    SchemePreset { name: "new2rollo-i-192", q: 2, k: 97, m: 89, r: 8, d: 8 },
    SchemePreset { name: "new2rollo-i-256", q: 2, k: 113, m: 103, r: 9, d: 9 },
    SchemePreset { name: "rollo-i-128-spe", q: 2, k: 83, m: 67, r: 7, d: 8 },
    SchemePreset { name: "rollo-i-192-spe", q: 2, k: 97, m: 79, r: 8, d: 8 },
    SchemePreset { name: "rollo-i-256-spe", q: 2, k: 113, m: 97, r: 9, d: 9 },
];

/// MinRank parameter sets of a signature scheme, (q, m, n, K, r).
pub const MINRANK_PRESETS: [(&str, AttackParams); 3] = [
    ("minrank-128", AttackParams { kind: ProblemKind::MinRank, q: 16, m: 16, n: 16, k: 142, r: 4 }),
    ("minrank-192", AttackParams { kind: ProblemKind::MinRank, q: 16, m: 19, n: 19, k: 167, r: 6 }),
    ("minrank-256", AttackParams { kind: ProblemKind::MinRank, q: 16, m: 22, n: 22, k: 254, r: 6 }),
];

pub fn scheme_preset(name: &str) -> Option<SchemePreset> {
    SCHEME_PRESETS.iter().copied().find(|p| p.name == name)
}

pub fn minrank_preset(name: &str) -> Option<AttackParams> {
    MINRANK_PRESETS.iter().find(|(n, _)| *n == name).map(|(_, p)| *p)
}

/// One attack's best cost over the message and key-attack instances.
#[derive(Clone, Debug, Serialize)]
pub struct AttackRow {
    pub estimate: CostEstimate,
    /// Reached on the key-attack instance.
    pub key_attack: bool,
    pub params: AttackParams,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Attack {
    Mm,
    Smplus,
    Comb,
}

impl Attack {
    pub const ALL: [Attack; 3] = [Attack::Mm, Attack::Smplus, Attack::Comb];

    pub fn estimate(self, params: &AttackParams, conv: &Conventions) -> CostEstimate {
        match self {
            Attack::Mm => mm_cost(params, conv),
            Attack::Smplus => smplus_cost(params, conv),
            Attack::Comb => comb_cost(params, conv),
        }
    }
}

/// Each attack on both RD instances derived from a scheme, keeping the cheaper.
pub fn best_attack(preset: &SchemePreset, attacks: &[Attack], conv: &Conventions) -> Vec<AttackRow> {
    let message = message_attack_params(preset.q, preset.k, preset.m, preset.r);
    let key = key_attack_params(preset.q, preset.k, preset.m, preset.d);
    attacks
        .iter()
        .map(|att| {
            let on_msg = att.estimate(&message, conv);
            let on_key = att.estimate(&key, conv);
            if on_key.bits < on_msg.bits {
                AttackRow { estimate: on_key, key_attack: true, params: key }
            } else {
                AttackRow { estimate: on_msg, key_attack: false, params: message }
            }
        })
        .collect()
}

/// Kernel and hybrid generic-SM costs for a MinRank parameter set.
pub fn minrank_attacks(params: &AttackParams, conv: &Conventions) -> Vec<CostEstimate> {
    vec![kernel_cost(params, conv), hybrid_minimize(&ExternalSmModel::default(), params, conv)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(nb_fqm(5, 2, 1, 1), BigInt::from(3));
        assert_eq!(mb_fqm(5, 2, 1, 1), BigInt::from(6));
        assert_eq!(nb_fqm(5, 2, 1, 2), BigInt::from(5));
        assert_eq!(mb_fqm(5, 2, 1, 2), BigInt::from(9));
        assert_eq!(nb_fqm(8, 4, 2, 1), BigInt::from(40));
        assert_eq!(mb_fqm(8, 4, 2, 1), BigInt::from(100));
        assert_eq!(nsyz(7, 8, 4, 2, 1), BigInt::from(6));
        assert_eq!(nsyz(7, 8, 4, 2, 2), BigInt::from(24));
        assert_eq!(nb_fq(7, 8, 4, 2, 1), BigInt::from(34));
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(52, 5), BigUint::from(2_598_960u32));
        assert!((log2_big(&(BigUint::one() << 200u32)) - 200.0).abs() < 1e-9);
    }

    #[test]
    fn overdetermined_split() {
        assert!(mm_overdetermined(7, 10, 3, 2));
        assert!(!mm_overdetermined(7, 8, 4, 2));
    }

    #[test]
    fn key_params() {
        assert_eq!(key_attack_params(2, 97, 89, 8), AttackParams::rd(2, 89, 182, 85, 8));
        assert_eq!(key_attack_params(2, 10, 20, 10).n, 19);
    }

    #[test]
    fn comb_exponent() {
        let conv = Conventions { omega: 0.0, ..Conventions::default() };
        // 2·⌈35/8⌉ − 7 = 3
        assert!((comb_cost(&AttackParams::rd(2, 7, 8, 4, 2), &conv).bits - 3.0).abs() < 1e-12);
    }

    #[test]
    fn mm_small_cases() {
        let conv = Conventions::default();
        let params = AttackParams::rd(2, 7, 10, 3, 2);
        let plain = mm_cost_at(&params, &conv, 0, 0).unwrap();
        assert!((plain - (2.0 * 45f64.log2() + 7f64.log2())).abs() < 1e-9);
        assert!(mm_cost(&params, &conv).bits <= plain);
        assert!(!mm_cost(&AttackParams::rd(2, 7, 8, 6, 2), &conv).solvable);
    }

    #[test]
    fn smplus_tiny_case() {
        let conv = Conventions::default();
        let p = AttackParams::rd(2, 7, 8, 4, 2);
        let model = SmPlusModel { b_max: 10, puncture: false };
        assert!(model.at(&p, &conv, 1, 0).is_some());
        let plain = model.plain(&p, &conv).unwrap();
        assert_eq!(plain.b, Some(1));
        // N = 40 − 6, M = C(4,1)·(C(8,2) − 7·C(3,2)) = 28
        let expect = 2.0 * 7f64.log2() + 34f64.log2() + 28f64.log2() + 7f64.log2();
        assert!((plain.bits - expect).abs() < 1e-9);
    }

    #[test]
    fn fqm_system_underdetermined() {
        for n in 4..14 {
            for k in 1..n - 1 {
                for r in 1..n - k {
                    for b in 1..4 {
                        let (nb, mb) = (nb_fqm(n, k, r, b), mb_fqm(n, k, r, b));
                        // k = r = 1 is the one degenerate shape, with N = M − 1
                        if (k, r) == (1, 1) {
                            assert_eq!(nb, mb - 1);
                        } else {
                            assert!(nb < mb - 1, "{n} {k} {r} {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hybrid_never_worse_than_plain() {
        let conv = Conventions::default();
        let p = AttackParams::rd(2, 31, 33, 15, 5);
        let model = SmPlusModel::default();
        let h = hybrid_minimize(&model, &p, &conv);
        if let Some(plain) = model.plain(&p, &conv) {
            assert!(h.bits <= plain.bits);
        }
    }
}

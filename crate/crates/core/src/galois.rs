//! Finite fields F_q (q = p^s) and their extensions F_{q^m}.
//!
//! Elements are integer codes: the coefficient vector over the immediate base
//! field, packed base-|base| little-endian. Since F_q is itself packed over
//! F_p, every code is also a base-p packing of the absolute coordinates, which
//! makes addition digitwise (XOR in characteristic 2).
//!
//! Fields of order up to 2^16 use exp/log tables; larger ones (up to 2^31)
//! fall back to schoolbook polynomial arithmetic over the base.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::matlin::Matrix;

/// Integer code of a field element.
pub type Elem = u32;

const TABLE_LIMIT: u64 = 1 << 16;
const ORDER_LIMIT: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported encoding")]
    TooLarge(u128),
    #[error("modulus is not monic and irreducible of the requested degree")]
    BadModulus,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("variable {0} is not declared F_q-valued")]
    NotBaseValued(usize),
}

struct Tables {
    exp: Vec<Elem>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    order: u32,
    base: Option<Field>,
    degree: usize,
    modulus: Vec<Elem>,
    tables: Option<Tables>,
}

/// A finite field handle. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.base {
            None => write!(f, "GF({})", self.0.p),
            Some(b) => write!(f, "GF({})/{:?} mod {:?}", self.0.order, b, self.0.modulus),
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.order == other.0.order
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}
impl Eq for Field {}

/// Returns `Some((p, s))` when `q = p^s` with p prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut s) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    (rest == 1 && p <= u32::MAX as u64).then_some((p as u32, s))
}

fn is_prime(p: u64) -> bool {
    prime_power(p).is_some_and(|(_, s)| s == 1)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field, GaloisError> {
        if !is_prime(p as u64) {
            return Err(GaloisError::NotPrimePower(p as u64));
        }
        if p as u64 > ORDER_LIMIT {
            return Err(GaloisError::TooLarge(p as u128));
        }
        let mut inner = Inner { p, order: p, base: None, degree: 1, modulus: Vec::new(), tables: None };
        if (p as u64) <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&Field(Arc::new(Inner { tables: None, ..clone_inner(&inner) }))));
        }
        Ok(Field(Arc::new(inner)))
    }

    /// F_q for a prime power q, as F_p or as the lowest irreducible extension of F_p.
    pub fn gf(q: u64) -> Result<Field, GaloisError> {
        let (p, s) = prime_power(q).ok_or(GaloisError::NotPrimePower(q))?;
        let fp = Field::prime(p)?;
        if s == 1 {
            Ok(fp)
        } else {
            Field::extension(&fp, s as usize)
        }
    }

    /// Degree-`degree` extension of `base` using the lowest-lexicographic monic
    /// irreducible modulus (lower coefficients compared by their packed code).
    pub fn extension(base: &Field, degree: usize) -> Result<Field, GaloisError> {
        if degree == 0 {
            return Err(GaloisError::ZeroDegree);
        }
        let bq = base.order() as u128;
        let total = bq.pow(degree as u32);
        if total > ORDER_LIMIT as u128 {
            return Err(GaloisError::TooLarge(total));
        }
        for code in 0..total as u64 {
            let mut modulus = digits(code, base.order(), degree);
            modulus.push(1);
            if poly::is_irreducible(base, &modulus) {
                return Field::with_modulus_unchecked(base, modulus);
            }
        }
        Err(GaloisError::BadModulus)
    }

    /// Extension of `base` by an explicit monic modulus (low-to-high coefficients).
    pub fn extension_with_modulus(base: &Field, modulus: &[Elem]) -> Result<Field, GaloisError> {
        if modulus.len() < 2
            || *modulus.last().unwrap() != 1
            || modulus.iter().any(|&c| c >= base.order())
            || !poly::is_irreducible(base, modulus)
        {
            return Err(GaloisError::BadModulus);
        }
        let total = (base.order() as u128).pow(modulus.len() as u32 - 1);
        if total > ORDER_LIMIT as u128 {
            return Err(GaloisError::TooLarge(total));
        }
        Field::with_modulus_unchecked(base, modulus.to_vec())
    }

    fn with_modulus_unchecked(base: &Field, modulus: Vec<Elem>) -> Result<Field, GaloisError> {
        let degree = modulus.len() - 1;
        let order = base.order().pow(degree as u32);
        let mut inner = Inner { p: base.characteristic(), order, base: Some(base.clone()), degree, modulus, tables: None };
        if (order as u64) <= TABLE_LIMIT {
            let bare = Field(Arc::new(clone_inner(&inner)));
            inner.tables = Some(build_tables(&bare));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }
    pub fn order(&self) -> u32 {
        self.0.order
    }
    /// Degree over the immediate base (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.0.degree
    }
    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }
    /// Order of the immediate base; for a prime field this is the field itself.
    pub fn base_order(&self) -> u32 {
        self.0.base.as_ref().map_or(self.0.order, |b| b.order())
    }
    /// Monic modulus over the base, low-to-high; empty for prime fields.
    pub fn modulus(&self) -> &[Elem] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            a ^ b
        } else if self.0.order == p {
            ((a as u64 + b as u64) % p as u64) as Elem
        } else {
            let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place = place.wrapping_mul(p);
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            a
        } else if self.0.order == p {
            (p - a % p) % p
        } else {
            let (mut a, mut out, mut place) = (a, 0u32, 1u32);
            while a > 0 {
                out += ((p - a % p) % p) * place;
                a /= p;
                place = place.wrapping_mul(p);
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        match &self.0.tables {
            Some(t) => {
                let n = self.0.order - 1;
                t.exp[((n - t.log[a as usize]) % n) as usize]
            }
            None => self.pow(a, self.0.order as u128 - 2),
        }
    }

    /// dst ← dst − c·src, elementwise.
    pub fn sub_scaled(&self, dst: &mut [Elem], src: &[Elem], c: Elem) {
        if c == 0 {
            return;
        }
        let nc = self.neg(c);
        match (&self.0.tables, self.0.p) {
            (Some(t), 2) => {
                let lc = t.log[nc as usize];
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        *d ^= t.exp[(lc + t.log[s as usize]) as usize];
                    }
                }
            }
            (Some(t), _) => {
                let lc = t.log[nc as usize];
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        *d = self.add(*d, t.exp[(lc + t.log[s as usize]) as usize]);
                    }
                }
            }
            _ => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, self.mul(nc, s));
                }
            }
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut e: u128) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// ℓ-th relative Frobenius iterate x^{Q^ℓ}, Q the base order.
    pub fn frobenius(&self, x: Elem, l: usize) -> Elem {
        if self.0.base.is_none() {
            return x;
        }
        let q = self.base_order() as u128;
        (0..l % self.0.degree).fold(x, |acc, _| self.pow(acc, q))
    }

    /// Relative trace to the immediate base; the result is a base code.
    pub fn trace(&self, x: Elem) -> Elem {
        if self.0.base.is_none() {
            return x;
        }
        let q = self.base_order() as u128;
        let (mut acc, mut cur) = (x, x);
        for _ in 1..self.0.degree {
            cur = self.pow(cur, q);
            acc = self.add(acc, cur);
        }
        debug_assert!(acc < self.base_order());
        acc
    }

    /// Coordinates over the base in the polynomial basis.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        digits(x as u64, self.base_order(), self.0.degree)
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        let q = self.base_order();
        c.iter().rev().fold(0u32, |acc, &d| acc * q + d)
    }

    pub fn is_in_base(&self, x: Elem) -> bool {
        x < self.base_order()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.0.order)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(1..self.0.order)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let Some(base) = &self.0.base else {
            return ((a as u64 * b as u64) % self.0.p as u64) as Elem;
        };
        let (ca, cb) = (self.coords(a), self.coords(b));
        let prod = poly::mul(base, &ca, &cb);
        let r = poly::rem(base, &prod, &self.0.modulus);
        let mut out = vec![0; self.0.degree];
        out[..r.len()].copy_from_slice(&r);
        self.from_coords(&out)
    }
}

fn clone_inner(i: &Inner) -> Inner {
    Inner { p: i.p, order: i.order, base: i.base.clone(), degree: i.degree, modulus: i.modulus.clone(), tables: None }
}

fn build_tables(f: &Field) -> Tables {
    let n = f.order() as u64 - 1;
    let mut log = vec![0u32; f.order() as usize];
    let mut exp = vec![0 as Elem; 2 * n.max(1) as usize];
    if n == 1 {
        exp[0] = 1;
        exp[1] = 1;
        return Tables { exp, log };
    }
    let factors = prime_factors(n);
    let g = (2..f.order())
        .find(|&g| factors.iter().all(|&l| f.mul_pow_slow(g, (n / l) as u128) != 1))
        .expect("multiplicative group is cyclic");
    let mut cur: Elem = 1;
    for i in 0..n as usize {
        exp[i] = cur;
        exp[i + n as usize] = cur;
        log[cur as usize] = i as u32;
        cur = f.mul_slow(cur, g);
    }
    Tables { exp, log }
}

impl Field {
    fn mul_pow_slow(&self, a: Elem, mut e: u128) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

fn digits(mut code: u64, q: u32, len: usize) -> Vec<Elem> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (code % q as u64) as Elem;
        code /= q as u64;
    }
    out
}

/// Dense univariate polynomials over a field, low-to-high coefficients.
mod poly {
    use super::{Elem, Field};

    pub fn trim(mut a: Vec<Elem>) -> Vec<Elem> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    pub fn rem(f: &Field, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
        let m = trim(m.to_vec());
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = f.inv(m[dm]);
        while a.len() > dm {
            let shift = a.len() - 1 - dm;
            let c = f.mul(*a.last().unwrap(), lead_inv);
            for (i, &mi) in m.iter().enumerate() {
                a[shift + i] = f.sub(a[shift + i], f.mul(c, mi));
            }
            a = trim(a);
        }
        a
    }

    fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        a
    }

    fn powmod(f: &Field, a: &[Elem], mut e: u128, m: &[Elem]) -> Vec<Elem> {
        let mut base = rem(f, a, m);
        let mut acc = vec![1];
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(f, &mul(f, &acc, &base), m);
            }
            base = rem(f, &mul(f, &base, &base), m);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or test: m is irreducible iff gcd(x^{q^i} − x, m) = 1 for i ≤ deg/2.
    pub fn is_irreducible(f: &Field, m: &[Elem]) -> bool {
        let m = trim(m.to_vec());
        let d = m.len().saturating_sub(1);
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let q = f.order() as u128;
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..d / 2 {
            h = powmod(f, &h, q, &m);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = f.sub(diff[1], 1);
            let g = gcd(f, &m, &trim(diff));
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// The tower F_q ⊂ F_{q^m} with polynomial basis β = (1, z, …, z^{m−1}) and its
/// trace-dual basis β*.
#[derive(Clone, Debug)]
pub struct ExtField {
    base: Field,
    field: Field,
    basis: Vec<Elem>,
    dual: Vec<Elem>,
}

/// Builds F_{q^m} over F_q with lowest-lexicographic moduli at each level.
pub fn make_ext_field(q: u64, m: usize) -> Result<ExtField, GaloisError> {
    let base = Field::gf(q)?;
    let field = Field::extension(&base, m)?;
    Ok(ExtField::new(base, field))
}

impl ExtField {
    /// Wraps an extension `field` of `base`, computing the dual basis.
    pub fn new(base: Field, field: Field) -> ExtField {
        assert!(field.base() == Some(&base), "field must extend base");
        let m = field.degree();
        let basis: Vec<Elem> = (0..m)
            .map(|i| {
                let mut c = vec![0; m];
                c[i] = 1;
                field.from_coords(&c)
            })
            .collect();
        let dual = dual_basis(&base, &field, &basis);
        ExtField { base, field, basis, dual }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.base.order()
    }
    pub fn m(&self) -> usize {
        self.field.degree()
    }
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }
    pub fn dual(&self) -> &[Elem] {
        &self.dual
    }
    pub fn trace(&self, x: Elem) -> Elem {
        self.field.trace(x)
    }
    pub fn frobenius(&self, x: Elem, l: usize) -> Elem {
        self.field.frobenius(x, l)
    }
    /// Coordinates of x in β, recovered through the trace pairing tr(β_i* x).
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        self.dual.iter().map(|&d| self.trace(self.field.mul(d, x))).collect()
    }
}

/// Solves the trace Gram system so that tr(β_i β_j*) = δ_ij.
pub fn dual_basis(base: &Field, field: &Field, basis: &[Elem]) -> Vec<Elem> {
    let m = basis.len();
    let mut gram = Matrix::zeros(base, m, m);
    for i in 0..m {
        for j in 0..m {
            gram.set(i, j, field.trace(field.mul(basis[i], basis[j])));
        }
    }
    let inv = gram.inverse().expect("trace form is nondegenerate on a basis");
    (0..m)
        .map(|j| {
            (0..m).fold(0, |acc, l| field.add(acc, field.mul(inv.get(l, j), basis[l])))
        })
        .collect()
}

/// Sparse multivariate polynomial: exponent vector to coefficient code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Elem>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, f: &Field, exps: Vec<u32>, coeff: Elem) {
        debug_assert_eq!(exps.len(), self.nvars);
        let e = self.terms.entry(exps).or_insert(0);
        *e = f.add(*e, coeff);
        if *e == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn eval(&self, f: &Field, point: &[Elem]) -> Elem {
        self.terms.iter().fold(0, |acc, (exps, &c)| {
            let t = exps
                .iter()
                .zip(point)
                .fold(c, |t, (&e, &v)| f.mul(t, f.pow(v, e as u128)));
            f.add(acc, t)
        })
    }
}

/// Unfolds polynomials over F_{q^m} in F_q-valued variables: each f yields the
/// m polynomials tr(β_i* f) (coefficientwise), reduced modulo x^q − x.
///
/// `base_valued[v]` declares whether variable v takes values in F_q.
pub fn unfold_system(ext: &ExtField, polys: &[Poly], base_valued: &[bool]) -> Result<Vec<Poly>, GaloisError> {
    let q = ext.q();
    let f = ext.field();
    let mut out = Vec::with_capacity(polys.len() * ext.m());
    for poly in polys {
        for (v, _) in base_valued.iter().enumerate().filter(|(_, b)| !**b) {
            if poly.terms.keys().any(|e| e[v] > 0) {
                return Err(GaloisError::NotBaseValued(v));
            }
        }
        for &d in ext.dual() {
            let mut u = Poly::zero(poly.nvars);
            for (exps, &c) in &poly.terms {
                let reduced = exps.iter().map(|&e| if e == 0 { 0 } else { (e - 1) % (q - 1) + 1 }).collect();
                u.add_term(ext.base(), reduced, ext.trace(f.mul(d, c)));
            }
            out.push(u);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(make_ext_field(6, 2).is_err());
    }

    #[test]
    fn small_moduli() {
        let f4 = make_ext_field(2, 2).unwrap();
        assert_eq!(f4.field().modulus(), &[1, 1, 1]);
        let f8 = make_ext_field(2, 3).unwrap();
        assert_eq!(f8.field().modulus(), &[1, 1, 0, 1]);
        let f2 = make_ext_field(2, 1).unwrap();
        assert_eq!(f2.basis(), &[1]);
        assert_eq!(f2.dual(), &[1]);
    }

    #[test]
    fn f4_trace_and_dual() {
        let e = make_ext_field(2, 2).unwrap();
        let (f, alpha) = (e.field(), 2);
        assert_eq!(e.trace(0), 0);
        assert_eq!(e.trace(1), 0);
        assert_eq!(e.trace(alpha), 1);
        let alpha2 = f.mul(alpha, alpha);
        assert_eq!(e.dual(), &[alpha2, 1]);
    }

    #[test]
    fn dual_pairing_f8_and_f16_over_f4() {
        for (q, m) in [(2, 3), (4, 2), (3, 3), (16, 2)] {
            let e = make_ext_field(q, m).unwrap();
            for i in 0..m {
                for j in 0..m {
                    let t = e.trace(e.field().mul(e.basis()[i], e.dual()[j]));
                    assert_eq!(t, (i == j) as u32);
                }
            }
            for x in 0..e.field().order() {
                assert_eq!(e.coords(x), e.field().coords(x));
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = Field::gf(27).unwrap();
        for a in 0..27 {
            for b in 0..27 {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let e = make_ext_field(2, 20).unwrap();
        let f = e.field();
        let x = 0x5_4321;
        assert_eq!(f.mul(x, f.inv(x)), 1);
        assert_eq!(f.frobenius(x, 20), x);
        assert!(e.trace(x) < 2);
    }

    #[test]
    fn unfold_footnote_example() {
        // f = β1 z1 + β2 z2 over F_{q^2} unfolds to {z1, z2}
        let e = make_ext_field(3, 2).unwrap();
        let mut p = Poly::zero(2);
        p.add_term(e.field(), vec![1, 0], e.basis()[0]);
        p.add_term(e.field(), vec![0, 1], e.basis()[1]);
        let u = unfold_system(&e, &[p], &[true, true]).unwrap();
        let mut z1 = Poly::zero(2);
        z1.add_term(e.base(), vec![1, 0], 1);
        let mut z2 = Poly::zero(2);
        z2.add_term(e.base(), vec![0, 1], 1);
        assert_eq!(u, vec![z1, z2]);
    }

    #[test]
    fn unfold_rejects_extension_variables() {
        let e = make_ext_field(2, 2).unwrap();
        let mut p = Poly::zero(1);
        p.add_term(e.field(), vec![1], 1);
        assert_eq!(unfold_system(&e, &[p], &[false]), Err(GaloisError::NotBaseValued(0)));
    }

    #[test]
    fn unfold_reduces_exponents() {
        let e = make_ext_field(2, 3).unwrap();
        let mut p = Poly::zero(1);
        p.add_term(e.field(), vec![3], 1);
        let u = unfold_system(&e, &[p], &[true]).unwrap();
        assert!(u.iter().all(|v| v.terms.keys().all(|k| k[0] <= 1)));
    }
}

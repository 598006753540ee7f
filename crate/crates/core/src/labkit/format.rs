//! Instance files: JSON documents holding field moduli and element codes.
//!
//! ```json
//! {
//!   "kind": "rd",
//!   "q_char": 2, "q_deg": 1, "q_modulus": [],
//!   "m": 7, "ext_modulus": [1, 1, 0, 0, 0, 0, 0, 1],
//!   "n": 8, "k_or_K": 4, "r": 2,
//!   "matrices": [[[...], ...], [[...]]],
//!   "witness": { "x": [...], "e": [...] }
//! }
//! ```
//!
//! RD files carry two matrices, G (k×n over F_{q^m}) and y (1×n). MinRank
//! files carry M_0, …, M_K (m×n over F_q) and no `ext_modulus`. Moduli are
//! monic, low-to-high; `q_modulus` is empty for prime q.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{Elem, ExtField, Field, GaloisError};
use crate::instances::{MinRankInstance, RdInstance, RdWitness};
use crate::matlin::{mat_of, Matrix};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad field description: {0}")]
    Field(#[from] GaloisError),
    #[error("inconsistent instance: {0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Rd,
    Minrank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub x: Vec<Elem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: InstanceKind,
    pub q_char: u32,
    pub q_deg: usize,
    pub q_modulus: Vec<Elem>,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ext_modulus: Vec<Elem>,
    pub n: usize,
    #[serde(rename = "k_or_K")]
    pub k_or_big_k: usize,
    pub r: usize,
    pub matrices: Vec<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Rd(RdInstance),
    MinRank(MinRankInstance),
}

fn prime_of(f: &Field) -> u32 {
    f.characteristic()
}

fn base_modulus(f: &Field) -> Vec<Elem> {
    if f.base().is_some() {
        f.modulus().to_vec()
    } else {
        Vec::new()
    }
}

fn base_degree(f: &Field) -> usize {
    if f.base().is_some() {
        f.degree()
    } else {
        1
    }
}

impl InstanceFile {
    pub fn from_rd(rd: &RdInstance) -> InstanceFile {
        let base = rd.ext.base();
        InstanceFile {
            kind: InstanceKind::Rd,
            q_char: prime_of(base),
            q_deg: base_degree(base),
            q_modulus: base_modulus(base),
            m: rd.m(),
            ext_modulus: rd.ext.field().modulus().to_vec(),
            n: rd.n,
            k_or_big_k: rd.k,
            r: rd.r,
            matrices: vec![rd.g.to_rows(), vec![rd.y.clone()]],
            witness: rd.witness.as_ref().map(|w| WitnessFile { x: w.x.clone(), e: Some(w.e.clone()) }),
        }
    }

    pub fn from_minrank(inst: &MinRankInstance) -> InstanceFile {
        InstanceFile {
            kind: InstanceKind::Minrank,
            q_char: prime_of(&inst.field),
            q_deg: base_degree(&inst.field),
            q_modulus: base_modulus(&inst.field),
            m: inst.m,
            ext_modulus: Vec::new(),
            n: inst.n,
            k_or_big_k: inst.big_k,
            r: inst.r,
            matrices: inst.matrices.iter().map(Matrix::to_rows).collect(),
            witness: inst.witness.as_ref().map(|x| WitnessFile { x: x.clone(), e: None }),
        }
    }

    pub fn from_instance(inst: &Instance) -> InstanceFile {
        match inst {
            Instance::Rd(rd) => InstanceFile::from_rd(rd),
            Instance::MinRank(mr) => InstanceFile::from_minrank(mr),
        }
    }

    pub fn parse(text: &str) -> Result<InstanceFile, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance files always serialize")
    }

    fn base_field(&self) -> Result<Field, FormatError> {
        let fp = Field::prime(self.q_char)?;
        match (self.q_deg, self.q_modulus.is_empty()) {
            (1, true) => Ok(fp),
            (d, false) if self.q_modulus.len() == d + 1 => Ok(Field::extension_with_modulus(&fp, &self.q_modulus)?),
            _ => Err(FormatError::Shape(format!("q_modulus of length {} for q_deg {}", self.q_modulus.len(), self.q_deg))),
        }
    }

    pub fn into_instance(&self) -> Result<Instance, FormatError> {
        let base = self.base_field()?;
        match self.kind {
            InstanceKind::Rd => self.rd(base).map(Instance::Rd),
            InstanceKind::Minrank => self.minrank(base).map(Instance::MinRank),
        }
    }

    fn matrix(&self, f: &Field, idx: usize, rows: usize) -> Result<Matrix, FormatError> {
        let data = &self.matrices[idx];
        if data.len() != rows || data.iter().any(|row| row.len() != self.n) {
            return Err(FormatError::Shape(format!("matrix {idx} is not {rows}×{}", self.n)));
        }
        if data.iter().flatten().any(|&v| v >= f.order()) {
            return Err(FormatError::Shape(format!("matrix {idx} holds a code outside the field")));
        }
        Ok(Matrix::from_rows(f, data, self.n))
    }

    fn check_codes(f: &Field, v: &[Elem], len: usize, what: &str) -> Result<(), FormatError> {
        if v.len() != len || v.iter().any(|&c| c >= f.order()) {
            return Err(FormatError::Shape(format!("{what} must hold {len} field codes")));
        }
        Ok(())
    }

    fn rd(&self, base: Field) -> Result<RdInstance, FormatError> {
        if self.ext_modulus.len() != self.m + 1 {
            return Err(FormatError::Shape(format!("ext_modulus needs {} coefficients", self.m + 1)));
        }
        if self.matrices.len() != 2 {
            return Err(FormatError::Shape("RD files carry exactly G and y".into()));
        }
        let (n, k, r) = (self.n, self.k_or_big_k, self.r);
        if k == 0 || k >= n || r == 0 || r > self.m.min(n) {
            return Err(FormatError::Shape(format!("bad (n, k, r) = ({n}, {k}, {r})")));
        }
        let field = Field::extension_with_modulus(&base, &self.ext_modulus)?;
        let ext = ExtField::new(base, field);
        let f = ext.field().clone();
        let g = self.matrix(&f, 0, k)?;
        let y = self.matrix(&f, 1, 1)?.row(0).to_vec();
        let witness = match &self.witness {
            None => None,
            Some(w) => {
                Self::check_codes(&f, &w.x, k, "witness x")?;
                let e = w.e.clone().ok_or_else(|| FormatError::Shape("RD witness needs e".into()))?;
                Self::check_codes(&f, &e, n, "witness e")?;
                Some(split_error(&ext, w.x.clone(), e)?)
            }
        };
        Ok(RdInstance { ext, n, k, r, g, y, witness })
    }

    fn minrank(&self, field: Field) -> Result<MinRankInstance, FormatError> {
        let big_k = self.k_or_big_k;
        if self.matrices.len() != big_k + 1 {
            return Err(FormatError::Shape(format!("MinRank files carry K + 1 = {} matrices", big_k + 1)));
        }
        let matrices = (0..=big_k).map(|i| self.matrix(&field, i, self.m)).collect::<Result<Vec<_>, _>>()?;
        let witness = match &self.witness {
            None => None,
            Some(w) => {
                Self::check_codes(&field, &w.x, big_k, "witness x")?;
                Some(w.x.clone())
            }
        };
        Ok(MinRankInstance { field, m: self.m, n: self.n, big_k, r: self.r, matrices, witness })
    }
}

/// Writes e = s·C with C the reduced echelon basis of the F_q row space of e.
fn split_error(ext: &ExtField, x: Vec<Elem>, e: Vec<Elem>) -> Result<RdWitness, FormatError> {
    let ech = mat_of(ext, &e).echelonize();
    let c = ech.rref.select_rows(&(0..ech.rank).collect::<Vec<_>>());
    let support: Vec<Elem> = ech.pivots.iter().map(|&p| e[p]).collect();
    Ok(RdWitness { x, support, c, e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_minrank, gen_rd};

    #[test]
    fn rd_round_trip() {
        let rd = gen_rd(4, 5, 8, 3, 2, 9).unwrap();
        let file = InstanceFile::from_rd(&rd);
        let text = file.to_json();
        let back = match InstanceFile::parse(&text).unwrap().into_instance().unwrap() {
            Instance::Rd(rd) => rd,
            _ => panic!("kind changed"),
        };
        assert_eq!(back.g, rd.g);
        assert_eq!(back.y, rd.y);
        assert_eq!(back.ext.field().modulus(), rd.ext.field().modulus());
        let w = back.witness.unwrap();
        assert_eq!(w.e, rd.witness.as_ref().unwrap().e);
        let s = Matrix::from_vec(back.ext.field(), 1, w.support.len(), w.support.clone());
        assert_eq!(s.mul(&w.c.embed(back.ext.field())).row(0), &w.e[..]);
    }

    #[test]
    fn minrank_round_trip() {
        let inst = gen_minrank(2, 6, 8, 14, 2, 3).unwrap();
        let text = InstanceFile::from_minrank(&inst).to_json();
        match InstanceFile::parse(&text).unwrap().into_instance().unwrap() {
            Instance::MinRank(back) => {
                assert_eq!(back.matrices, inst.matrices);
                assert!(back.is_solution(back.witness.as_ref().unwrap()));
            }
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn rejects_unknown_and_bad_fields() {
        let rd = gen_rd(2, 7, 8, 4, 2, 1).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&InstanceFile::from_rd(&rd).to_json()).unwrap();
        v["colour"] = serde_json::json!("blue");
        assert!(InstanceFile::parse(&v.to_string()).is_err());
        let mut file = InstanceFile::from_rd(&rd);
        file.matrices[1][0][0] = 1 << 7;
        assert!(file.into_instance().is_err());
        let mut file = InstanceFile::from_rd(&rd);
        file.ext_modulus = vec![1, 0, 0, 0, 0, 0, 0, 1];
        assert!(file.into_instance().is_err());
    }
}
